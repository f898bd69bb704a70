"""Smoke test for the mwfloat_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

from fractions import Fraction

import mwfloat_py as mw


def exact(x):
    return sum(Fraction(w) for w in x.words())


def main():
    third = mw.MultiWord("1", "qd") / mw.MultiWord("3", "qd")
    assert third.precision == "qd" and len(third.words()) == 4
    err = abs(exact(third) - Fraction(1, 3))
    assert err < Fraction(1, 3) * Fraction(2) ** -208, float(err)

    a = mw.MultiWord(0.1, "dd", "bf")
    b = mw.MultiWord("0.2", "dd", "bf")
    s = a + b
    assert s.variant == "bf"
    assert abs(float(s) - 0.30000000000000004) < 1e-16
    assert -(-s) == s
    assert str(mw.MultiWord("2.5", "td")).startswith("2.5")

    try:
        mw.MultiWord("1", "dd") / mw.MultiWord("0", "dd")
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("expected ZeroDivisionError")
    try:
        mw.MultiWord("1", "dd") + mw.MultiWord("1", "td")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    r = mw.solve_chebyshev(16, precision="td", variant="bf")
    assert r["converged"] and r["residual"] < 1e-42, r["residual"]
    assert len(r["roots"]) == 16
    reals = sorted(float(re) for re, _ in r["roots"])
    assert all(-1 < x < 1 for x in reals)

    d = mw.matmul_digits(32, precision="dd", scheme="strassen", simd=True)
    assert d > 29.0, d

    print("smoke ok:", third, f"chebyshev16 iterations={r['iterations']}", f"digits={d:.2f}")


if __name__ == "__main__":
    main()
