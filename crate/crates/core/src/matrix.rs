//! Dense matrices over a [`Scalar`] type, with the exact linear algebra the
//! group layer needs: determinant, inverse, powers and null spaces.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch {
                expected: rows,
                rows: data.len() / cols.max(1),
                cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize, like: &S) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![like.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &S) -> Self {
        Self::scalar(n, &like.one_like())
    }

    pub fn scalar(n: usize, c: &S) -> Self {
        let mut m = Self::zero(n, n, c);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n, &entries[0]);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(blocks: &[Matrix<S>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let like = &blocks[0].data[0];
        let mut m = Self::zero(n, n, like);
        let mut off = 0;
        for b in blocks {
            m.set_block(off, off, b);
            off += b.rows;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn like(&self) -> &S {
        &self.data[0]
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix<S> {
        let mut data = Vec::with_capacity(h * w);
        for i in r0..r0 + h {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c0 + w]);
        }
        Matrix {
            rows: h,
            cols: w,
            data,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<S>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix<S> {
        self.map(S::neg)
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.like().zero_like();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                data.push(acc);
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols))
            .fold(self.like().zero_like(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Determinant by Gaussian elimination over the fraction field.
    pub fn det(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.like().one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return self.like().zero_like();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let p_inv = p.inv().expect("pivot nonzero");
            for r in col + 1..n {
                let f = a.get(r, col).mul(&p_inv);
                if !f.is_zero() {
                    a.row_axpy(r, col, &f.neg(), col);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::SizeMismatch {
                expected: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, self.like());
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p_inv = a.get(col, col).inv().expect("pivot nonzero");
            a.row_scale(col, &p_inv);
            inv.row_scale(col, &p_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).neg();
                if !f.is_zero() {
                    a.row_axpy(r, col, &f, 0);
                    inv.row_axpy(r, col, &f, 0);
                }
            }
        }
        Ok(inv)
    }

    pub fn pow(&self, mut k: u64) -> Matrix<S> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.like());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// A basis of `{v : self * v = 0}`, one free variable per vector.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.like().zero_like(); self.cols];
                v[fc] = self.like().one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, fc).neg();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(piv, row);
            let p_inv = a.get(row, col).inv().expect("pivot nonzero");
            a.row_scale(row, &p_inv);
            for r in 0..self.rows {
                if r != row {
                    let f = a.get(r, col).neg();
                    if !f.is_zero() {
                        a.row_axpy(r, row, &f, col);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// The first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&S> {
        self.data.iter().find(|x| !x.is_zero())
    }

    pub fn total_cmp(&self, other: &Matrix<S>) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| {
                self.data
                    .iter()
                    .zip(&other.data)
                    .map(|(a, b)| a.total_cmp(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }

    /// Parse `a,b;c,d` with a caller-supplied entry parser.
    pub fn parse_with(s: &str, entry: impl Fn(&str) -> Result<S>) -> Result<Matrix<S>> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| entry(e.trim()))
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn row_scale(&mut self, r: usize, c: &S) {
        for j in 0..self.cols {
            let x = self.get(r, j).mul(c);
            self.set(r, j, x);
        }
    }

    /// `row[dst] += f * row[src]`, starting at column `from`.
    fn row_axpy(&mut self, dst: usize, src: usize, f: &S, from: usize) {
        for j in from..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let x = self.get(dst, j).add(&f.mul(s));
                self.set(dst, j, x);
            }
        }
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{fq_make, FqDescriptor, FqElem};
    use crate::polyring::RatFrac;
    use proptest::prelude::*;

    fn ints(f: &FqDescriptor, n: usize, xs: &[i64]) -> Matrix<FqElem> {
        Matrix::new(n, n, xs.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn det_and_inverse_small() {
        let f = fq_make(5, 1).unwrap();
        let m = ints(&f, 3, &[1, 2, 0, 3, 4, 1, 0, 1, 1]);
        // cofactor expansion by hand: 1*(4-1) - 2*(3-0) + 0 = -3
        assert_eq!(m.det(), f.from_int(-3));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let sing = ints(&f, 2, &[1, 2, 2, 4]);
        assert_eq!(sing.det(), f.zero());
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = fq_make(3, 1).unwrap();
        let m = Matrix::from_rows(vec![vec![f.from_int(1), f.from_int(2), f.from_int(0)]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let col = Matrix::new(3, 1, v.clone()).unwrap();
            assert!(m.mul(&col).entries().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn text_round_trip_over_fractions() {
        let f = fq_make(3, 1).unwrap();
        let s = "1,t / t+1;0,1";
        let m = Matrix::parse_with(s, |e| RatFrac::parse(&f, e)).unwrap();
        assert_eq!(m.to_string(), s);
        assert_eq!(m.det(), RatFrac::constant(&f.one()));
        assert!(Matrix::parse_with("1,2;3", |e| RatFrac::parse(&f, e)).is_err());
    }

    #[test]
    fn power_by_squaring_matches_repeated_product() {
        let f = fq_make(7, 1).unwrap();
        let m = ints(&f, 2, &[1, 1, 1, 0]);
        let mut acc = Matrix::identity(2, &f.one());
        for k in 0..20u64 {
            assert_eq!(m.pow(k), acc);
            acc = acc.mul(&m);
        }
    }

    fn mat3() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..5, 9)
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in mat3(), b in mat3()) {
            let f = fq_make(5, 1).unwrap();
            let (a, b) = (ints(&f, 3, &a), ints(&f, 3, &b));
            prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
            prop_assert_eq!(a.transpose().det(), a.det());
        }

        #[test]
        fn rank_nullity(a in mat3()) {
            let f = fq_make(5, 1).unwrap();
            let a = ints(&f, 3, &a);
            prop_assert_eq!(a.rank() + a.kernel().len(), 3);
        }
    }
}
