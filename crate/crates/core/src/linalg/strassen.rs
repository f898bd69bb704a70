//! Strassen's seven-product recursion with odd-size peeling.

use rayon::prelude::*;

use super::kernels::{gemm, Tiling};
use super::{MWMatrix, MatMulPlan};
use crate::batch::Batchable;

/// Recursion levels whose seven products run as parallel tasks.
const PARALLEL_LEVELS: usize = 2;

/// How one level handles a product: below the cutoff a single blocked
/// kernel; otherwise the even part recurses and odd edges are peeled off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Kernel,
    Split {
        even: (usize, usize, usize),
        peel_rows: bool,
        peel_inner: bool,
        peel_cols: bool,
    },
}

pub fn strassen_pad_policy(m: usize, k: usize, n: usize, cutoff: usize) -> Decomposition {
    if m.min(k).min(n) <= cutoff {
        return Decomposition::Kernel;
    }
    Decomposition::Split {
        even: (m & !1, k & !1, n & !1),
        peel_rows: m % 2 == 1,
        peel_inner: k % 2 == 1,
        peel_cols: n % 2 == 1,
    }
}

pub(crate) fn strassen<T: Batchable>(
    a: &MWMatrix<T>,
    b: &MWMatrix<T>,
    plan: &MatMulPlan,
    depth: usize,
) -> MWMatrix<T> {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let v = plan.variant;
    let base = |x: &MWMatrix<T>, y: &MWMatrix<T>| {
        gemm(x, y, v, Tiling::blocked(plan.block), plan.simd_width())
    };
    let (me, ke, ne, peel_rows, peel_inner, peel_cols) =
        match strassen_pad_policy(m, k, n, plan.strassen_cutoff) {
            Decomposition::Kernel => return base(a, b),
            Decomposition::Split {
                even: (me, ke, ne),
                peel_rows,
                peel_inner,
                peel_cols,
            } => (me, ke, ne, peel_rows, peel_inner, peel_cols),
        };

    if peel_rows || peel_inner || peel_cols {
        let mut c = MWMatrix::zeros(m, n);
        let mut ce = strassen(&a.block(0, 0, me, ke), &b.block(0, 0, ke, ne), plan, depth);
        if peel_inner {
            // rank-one update with the last column of A and last row of B
            for i in 0..me {
                let x = a.get(i, k - 1);
                for j in 0..ne {
                    let t = ce.get(i, j).add(x.mul(b.get(k - 1, j), v), v);
                    ce.set(i, j, t);
                }
            }
        }
        c.set_block(0, 0, &ce);
        if peel_rows {
            c.set_block(m - 1, 0, &base(&a.block(m - 1, 0, 1, k), b));
        }
        if peel_cols {
            c.set_block(0, n - 1, &base(&a.block(0, 0, me, k), &b.block(0, n - 1, k, 1)));
        }
        return c;
    }

    let (m2, k2, n2) = (m / 2, k / 2, n / 2);
    let a11 = a.block(0, 0, m2, k2);
    let a12 = a.block(0, k2, m2, k2);
    let a21 = a.block(m2, 0, m2, k2);
    let a22 = a.block(m2, k2, m2, k2);
    let b11 = b.block(0, 0, k2, n2);
    let b12 = b.block(0, n2, k2, n2);
    let b21 = b.block(k2, 0, k2, n2);
    let b22 = b.block(k2, n2, k2, n2);

    let operands = vec![
        (a11.add(&a22, v), b11.add(&b22, v)),
        (a21.add(&a22, v), b11.clone()),
        (a11.clone(), b12.sub(&b22, v)),
        (a22.clone(), b21.sub(&b11, v)),
        (a11.add(&a12, v), b22.clone()),
        (a21.sub(&a11, v), b11.add(&b12, v)),
        (a12.sub(&a22, v), b21.add(&b22, v)),
    ];
    let products: Vec<MWMatrix<T>> = if depth < PARALLEL_LEVELS {
        operands
            .into_par_iter()
            .map(|(x, y)| strassen(&x, &y, plan, depth + 1))
            .collect()
    } else {
        operands
            .into_iter()
            .map(|(x, y)| strassen(&x, &y, plan, depth + 1))
            .collect()
    };
    let [p1, p2, p3, p4, p5, p6, p7]: [MWMatrix<T>; 7] =
        products.try_into().expect("seven products");

    let c11 = p1.add(&p4, v).sub(&p5, v).add(&p7, v);
    let c12 = p3.add(&p5, v);
    let c21 = p2.add(&p4, v);
    let c22 = p1.sub(&p2, v).add(&p3, v).add(&p6, v);

    let mut c = MWMatrix::zeros(m, n);
    c.set_block(0, 0, &c11);
    c.set_block(0, n2, &c12);
    c.set_block(m2, 0, &c21);
    c.set_block(m2, n2, &c22);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy() {
        assert_eq!(strassen_pad_policy(32, 32, 32, 32), Decomposition::Kernel);
        assert_eq!(
            strassen_pad_policy(2049, 2049, 2049, 32),
            Decomposition::Split {
                even: (2048, 2048, 2048),
                peel_rows: true,
                peel_inner: true,
                peel_cols: true
            }
        );
        assert_eq!(
            strassen_pad_policy(64, 64, 64, 32),
            Decomposition::Split {
                even: (64, 64, 64),
                peel_rows: false,
                peel_inner: false,
                peel_cols: false
            }
        );
    }
}
