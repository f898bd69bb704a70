//! Classical product kernels.
//!
//! Every kernel accumulates each entry as `c = c + a[i][l] * b[l][j]` for
//! `l = 0, 1, ...` starting from zero, so naive, blocked, scalar and lane
//! batched results are bitwise identical. Work is split over blocks of
//! output rows; no two tasks touch the same entry.

use rayon::prelude::*;

use super::MWMatrix;
use crate::batch::Batchable;
use crate::multiword::{MultiFloat, Variant};

/// Output rows per parallel task.
pub const ROW_BLOCK: usize = 32;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Tiling {
    pub j_block: usize,
    pub l_block: usize,
}

impl Tiling {
    pub fn naive(k: usize, n: usize) -> Self {
        Tiling {
            j_block: n.max(1),
            l_block: k.max(1),
        }
    }

    pub fn blocked(block: usize) -> Self {
        Tiling {
            j_block: block,
            l_block: block,
        }
    }
}

pub(crate) fn gemm<T: Batchable>(
    a: &MWMatrix<T>,
    b: &MWMatrix<T>,
    v: Variant,
    tiling: Tiling,
    simd_width: Option<usize>,
) -> MWMatrix<T> {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    debug_assert_eq!(k, b.rows());
    let mut c = MWMatrix::zeros(m, n);
    match simd_width {
        None => {
            c.data_mut()
                .par_chunks_mut(ROW_BLOCK * n)
                .enumerate()
                .for_each(|(blk, rows)| {
                    scalar_rows(a.data(), k, b.data(), n, rows, blk * ROW_BLOCK, v, tiling)
                });
        }
        Some(w) => crate::with_width!(w, W => simd_gemm::<T, W>(a, b, &mut c, v, tiling)),
    }
    c
}

#[allow(clippy::too_many_arguments)]
fn scalar_rows<T: MultiFloat>(
    a: &[T],
    k: usize,
    b: &[T],
    n: usize,
    c_rows: &mut [T],
    i0: usize,
    v: Variant,
    t: Tiling,
) {
    let nr = c_rows.len() / n;
    for j0 in (0..n).step_by(t.j_block) {
        let j1 = (j0 + t.j_block).min(n);
        for l0 in (0..k).step_by(t.l_block) {
            let l1 = (l0 + t.l_block).min(k);
            for r in 0..nr {
                let arow = &a[(i0 + r) * k..(i0 + r + 1) * k];
                for j in j0..j1 {
                    let mut acc = c_rows[r * n + j];
                    for l in l0..l1 {
                        acc = acc.add(arow[l].mul(b[l * n + j], v), v);
                    }
                    c_rows[r * n + j] = acc;
                }
            }
        }
    }
}

fn simd_gemm<T: Batchable, const W: usize>(
    a: &MWMatrix<T>,
    b: &MWMatrix<T>,
    c: &mut MWMatrix<T>,
    v: Variant,
    t: Tiling,
) {
    let (k, n) = (a.cols(), b.cols());
    let chunks = n.div_ceil(W);
    // B packed as k rows of lane batches
    let mut packed = Vec::with_capacity(k * chunks);
    for l in 0..k {
        for row_chunk in b.row(l).chunks(W) {
            packed.push(T::gather_batch::<W>(row_chunk));
        }
    }
    // lane chunks per column tile, rounded so tiles align with chunks
    let jc_block = t.j_block.div_ceil(W).max(1);
    c.data_mut()
        .par_chunks_mut(ROW_BLOCK * n)
        .enumerate()
        .for_each(|(blk, rows)| {
            let i0 = blk * ROW_BLOCK;
            let nr = rows.len() / n;
            let mut acc = vec![T::Batch::<W>::zero(); nr * chunks];
            for jc0 in (0..chunks).step_by(jc_block) {
                let jc1 = (jc0 + jc_block).min(chunks);
                for l0 in (0..k).step_by(t.l_block) {
                    let l1 = (l0 + t.l_block).min(k);
                    for r in 0..nr {
                        let arow = &a.data()[(i0 + r) * k..(i0 + r + 1) * k];
                        for jc in jc0..jc1 {
                            let mut s = acc[r * chunks + jc];
                            for l in l0..l1 {
                                let x = T::splat_batch::<W>(arow[l]);
                                s = s.add(x.mul(packed[l * chunks + jc], v), v);
                            }
                            acc[r * chunks + jc] = s;
                        }
                    }
                }
            }
            for r in 0..nr {
                for (jc, out) in rows[r * n..(r + 1) * n].chunks_mut(W).enumerate() {
                    T::scatter_batch::<W>(&acc[r * chunks + jc], out);
                }
            }
        });
}
