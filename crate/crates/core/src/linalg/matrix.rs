use crate::error::MwError;
use crate::multiword::{MultiFloat, Scalar, Variant};

/// Dense row-major matrix of multiword values.
#[derive(Clone, Debug, PartialEq)]
pub struct MWMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: MultiFloat> MWMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MwError> {
        if rows == 0 || cols == 0 {
            return Err(MwError::Shape(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(MwError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(MWMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MWMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MWMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &MWMatrix<T>) {
        for i in 0..src.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + src.cols].copy_from_slice(src.row(i));
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MWMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self, v: Variant) -> Self {
        self.zip_with(other, |a, b| a.add(b, v))
    }

    pub fn sub(&self, other: &Self, v: Variant) -> Self {
        self.zip_with(other, |a, b| a.sub(b, v))
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<(), MwError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MwError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> MWMatrix<T> {
    /// Component-planar copy: one row-major `f64` array per word.
    pub fn to_planar(&self) -> Vec<Vec<f64>> {
        (0..T::WORDS)
            .map(|k| self.data.iter().map(|x| x.words()[k]).collect())
            .collect()
    }

    pub fn from_planar(rows: usize, cols: usize, planes: &[Vec<f64>]) -> Result<Self, MwError> {
        if planes.len() != T::WORDS || planes.iter().any(|p| p.len() != rows * cols) {
            return Err(MwError::Shape("planar data does not match the shape".into()));
        }
        let data = (0..rows * cols)
            .map(|idx| {
                let w: Vec<f64> = planes.iter().map(|p| p[idx]).collect();
                T::from_words(&w)
            })
            .collect();
        Self::new(rows, cols, data)
    }

    pub fn bits_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| {
                a.words()
                    .iter()
                    .zip(b.words())
                    .all(|(x, y)| x.to_bits() == y.to_bits())
            })
    }
}

/// Complex matrix as separate real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CMWMatrix<T> {
    pub re: MWMatrix<T>,
    pub im: MWMatrix<T>,
}

impl<T: MultiFloat> CMWMatrix<T> {
    pub fn new(re: MWMatrix<T>, im: MWMatrix<T>) -> Result<Self, MwError> {
        re.check_same_shape(&im)?;
        Ok(CMWMatrix { re, im })
    }

    pub fn rows(&self) -> usize {
        self.re.rows()
    }

    pub fn cols(&self) -> usize {
        self.re.cols()
    }

    pub fn identity(n: usize) -> Self {
        CMWMatrix {
            re: MWMatrix::identity(n),
            im: MWMatrix::zeros(n, n),
        }
    }
}
