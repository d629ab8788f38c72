use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&a| self.field.format(a)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// row_dst += c * row_src
#[inline]
fn axpy(field: &Field, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    if field.p() == 2 && field.e() == 1 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    if field.e() == 1 {
        let p = field.p();
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = (*d + c * s) % p;
        }
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = field.add(*d, field.mul(c, s));
        }
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`], but keeps the column count when `rows` is empty.
    pub fn from_rows_with_cols(field: &Field, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&a| !field.is_valid(a)) {
                return Err(Error::InvalidField(format!(
                    "{bad} is not an element of {field:?}"
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// A single column.
    pub fn column(field: &Field, v: &[u32]) -> Self {
        Matrix {
            field: field.clone(),
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let c = self.data[i * self.cols + k];
                axpy(&self.field, dst, c, other.row(k));
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, 1, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        self.map(|a| self.field.mul(c, a))
    }

    fn map(&self, f: impl Fn(u32) -> u32) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) -> Result<()> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("add_scaled shape".into()));
        }
        axpy(&self.field.clone(), &mut self.data, c, &other.data);
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pow(&self, mut k: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != *field {
                return Err(Error::FieldMismatch);
            }
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        })
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_vector(field: &Field, rows: usize, cols: usize, v: Vec<u32>) -> Result<Matrix> {
        if v.len() != rows * cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data: v,
        })
    }

    /// Unique reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { matrix: m, pivots }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let field = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field
                .inv(self.data[r * cols + c])
                .expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    let idx = r * cols + j;
                    self.data[idx] = field.mul(inv, self.data[idx]);
                }
            }
            let pivot_row = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let x = self.data[i * cols + c];
                if x != 0 {
                    let dst = &mut self.data[i * cols..(i + 1) * cols];
                    axpy(&field, dst, field.neg(x), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical basis of `{v : self * v = 0}`, one row per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Matrix {
        self.kernel_basis_with_free_columns().0
    }

    /// [`Matrix::kernel_basis`] together with the free column of each basis
    /// row (the basis row has a 1 there and 0 at every other free column).
    pub fn kernel_basis_with_free_columns(&self) -> (Matrix, Vec<usize>) {
        let rref = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(&self.field, free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (j, &pc) in rref.pivots.iter().enumerate() {
                let v = rref.matrix.get(j, f);
                if v != 0 {
                    out.set(k, pc, self.field.neg(v));
                }
            }
        }
        (out, free)
    }

    /// A particular solution `X` of `self * X = rhs` with every free variable
    /// set to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let rref = aug.rref();
        if rref.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(&self.field, self.cols, rhs.cols);
        for (j, &pc) in rref.pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, rref.matrix.get(j, self.cols + k));
            }
        }
        Ok(Some(x))
    }

    /// Canonical basis (RREF rows) of the row space.
    pub fn row_space(&self) -> Matrix {
        let rref = self.rref();
        let rank = rref.rank();
        rref.matrix.block(0, 0, rank, self.cols)
    }

    /// Canonical basis (as rows) of the column space.
    pub fn column_space(&self) -> Matrix {
        self.transpose().row_space()
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let id = Matrix::identity(&self.field, self.rows);
        if self.rank() < self.rows {
            return Ok(None);
        }
        self.solve(&id)
    }
}

/// A subspace of `F^n` kept in reduced echelon form, supporting incremental
/// insertion and membership tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Field, n: usize) -> Self {
        Subspace {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(m: &Matrix) -> Self {
        let mut s = Subspace::new(m.field(), m.cols());
        for i in 0..m.rows() {
            s.insert(m.row(i));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let x = w[pc];
            if x != 0 {
                axpy(&self.field, &mut w, self.field.neg(x), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&a| a == 0)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).expect("nonzero");
        for a in w.iter_mut() {
            *a = self.field.mul(inv, *a);
        }
        for row in self.rows.iter_mut() {
            let x = row[pc];
            if x != 0 {
                axpy(&self.field, row, self.field.neg(x), &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// The basis in reduced row echelon form.
    pub fn basis(&self) -> Matrix {
        Matrix::from_rows_with_cols(&self.field, &self.rows, self.n).expect("consistent rows")
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let m = Matrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(r.rank(), 1);

        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(z.rref().matrix, z);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        assert_eq!(Matrix::identity(&f, 3).kernel_basis().rows(), 0);
        let m = Matrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.kernel_basis().to_rows(), vec![vec![1, 1]]);
        let z = Matrix::zeros(&f, 1, 2);
        assert_eq!(z.kernel_basis().to_rows(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = f2();
        let id = Matrix::identity(&f, 2);
        let v = Matrix::column(&f, &[1, 0]);
        assert_eq!(id.solve(&v).unwrap(), Some(v.clone()));
        let m = Matrix::from_rows(&f, &[vec![1, 1]]).unwrap();
        let x = m.solve(&Matrix::column(&f, &[1])).unwrap().unwrap();
        assert_eq!(x.col(0), vec![1, 0]);
        let zero = Matrix::from_rows(&f, &[vec![0]]).unwrap();
        assert_eq!(zero.solve(&Matrix::column(&f, &[1])).unwrap(), None);
        assert!(zero.solve(&Matrix::zeros(&f, 2, 1)).is_err());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = Matrix::identity(&f2(), 2);
        let b = Matrix::identity(&Field::prime(3).unwrap(), 2);
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn subspace_insertion() {
        let f = Field::prime(3).unwrap();
        let mut s = Subspace::new(&f, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1])); // (1,2,0) + (0,1,1)
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 1, 0]));
    }
}
