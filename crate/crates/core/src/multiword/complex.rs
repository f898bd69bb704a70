use super::{MultiFloat, Variant};

/// Complex number with multiword real and imaginary parts.
///
/// Generic over any [`MultiFloat`], so the same code evaluates scalar
/// complex values and lane batches of them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMW<T> {
    pub re: T,
    pub im: T,
}

impl<T: MultiFloat> ComplexMW<T> {
    pub fn new(re: T, im: T) -> Self {
        ComplexMW { re, im }
    }

    pub fn from_real(re: T) -> Self {
        ComplexMW { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        ComplexMW::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        ComplexMW::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        ComplexMW::new(T::zero(), T::one())
    }

    pub fn neg(self) -> Self {
        ComplexMW::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(self) -> Self {
        ComplexMW::new(self.re, self.im.neg())
    }

    pub fn add(self, o: Self, v: Variant) -> Self {
        ComplexMW::new(self.re.add(o.re, v), self.im.add(o.im, v))
    }

    pub fn sub(self, o: Self, v: Variant) -> Self {
        ComplexMW::new(self.re.sub(o.re, v), self.im.sub(o.im, v))
    }

    /// Three real multiplications: `ac`, `bd` and `(a+b)(c+d)`.
    pub fn mul(self, o: Self, v: Variant) -> Self {
        let ac = self.re.mul(o.re, v);
        let bd = self.im.mul(o.im, v);
        let s = self.re.add(self.im, v).mul(o.re.add(o.im, v), v);
        ComplexMW::new(ac.sub(bd, v), s.sub(ac, v).sub(bd, v))
    }

    /// Four real multiplications: `(ac - bd) + (ad + bc) i`.
    pub fn mul_4m(self, o: Self, v: Variant) -> Self {
        let re = self.re.mul(o.re, v).sub(self.im.mul(o.im, v), v);
        let im = self.re.mul(o.im, v).add(self.im.mul(o.re, v), v);
        ComplexMW::new(re, im)
    }

    /// Multiplication by a real value.
    pub fn scale(self, x: T, v: Variant) -> Self {
        ComplexMW::new(self.re.mul(x, v), self.im.mul(x, v))
    }

    pub fn norm_sqr(self, v: Variant) -> T {
        self.re.mul(self.re, v).add(self.im.mul(self.im, v), v)
    }

    /// `a conj(b) / |b|^2`. A zero divisor yields non-finite components.
    pub fn div(self, o: Self, v: Variant) -> Self {
        let n = self.mul_4m(o.conj(), v);
        let d = o.norm_sqr(v);
        ComplexMW::new(n.re.div(d, v), n.im.div(d, v))
    }
}
