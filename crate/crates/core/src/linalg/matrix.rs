//! Dense exact matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Divides out the gcd of the entries.
fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// A dense `rows x cols` matrix over a single [`Field`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution of `A x = b`, or `None` if the system is inconsistent.
    pub particular: Option<Vec<Scalar>>,
    /// Basis of the null space of `A`.
    pub kernel: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                debug_assert!(field.contains(&x));
                data.push(x);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|x| !field.contains(x)) {
                return Err(Error::InvalidField(format!("entry {bad} is not in {field}")));
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`, indexing `(i*other.rows + k, j*other.cols + l)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (other.rows, other.cols);
        Matrix::from_fn(self.field, self.rows * r, self.cols * c, |i, j| {
            let a = &self[(i / r, j / c)];
            if a.is_zero() {
                return self.field.zero();
            }
            a * &other[(i % r, j % c)]
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Sub-block with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    /// Reduced row echelon form. Pivots are taken leftmost-first, choosing the
    /// first row with a nonzero entry in the pivot column.
    pub fn rref(&self) -> Echelon {
        match self.field {
            Field::Prime(p) => self.rref_mod(p),
            Field::Rationals => self.rref_rational(),
        }
    }

    fn rref_mod(&self, p: u64) -> Echelon {
        let (rows, cols) = (self.rows, self.cols);
        let p128 = p as u128;
        let mut m: Vec<u64> = self.data.iter().map(|x| x.residue().expect("prime field entry")).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(r * cols + j, piv * cols + j);
            }
            let inv = mod_pow(m[r * cols + c], p - 2, p);
            for j in c..cols {
                m[r * cols + j] = (m[r * cols + j] as u128 * inv as u128 % p128) as u64;
            }
            for i in 0..rows {
                let f = m[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let x = m[r * cols + j];
                    if x != 0 {
                        let sub = (f as u128 * x as u128 % p128) as u64;
                        m[i * cols + j] = (m[i * cols + j] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = m.into_iter().map(|value| Scalar::Mod { value, modulus: p }).collect();
        Echelon {
            reduced: Matrix { field: self.field, rows, cols, data },
            pivots,
        }
    }

    /// Fraction-free elimination on rows scaled to primitive integer vectors;
    /// pivot rows are divided out only at the end. Same result as rational
    /// Gauss-Jordan, since the reduced form is unique.
    fn rref_rational(&self) -> Echelon {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let row = &self.data[i * cols..(i + 1) * cols];
                let den = row
                    .iter()
                    .fold(BigInt::one(), |d, x| d.lcm(x.as_rational().expect("rational entry").denom()));
                let mut v: Vec<BigInt> = row
                    .iter()
                    .map(|x| {
                        let q = x.as_rational().unwrap();
                        q.numer() * (&den / q.denom())
                    })
                    .collect();
                make_primitive(&mut v);
                v
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, piv);
            let pivot_row = m[r].clone();
            let a = &pivot_row[c];
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let g = a.gcd(&row[c]);
                let (sa, sb) = (a / &g, &row[c] / &g);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &sa - &sb * y;
                }
                make_primitive(row);
            }
            pivots.push(c);
            r += 1;
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in m.into_iter().enumerate() {
            let lead = pivots.get(i).map(|&c| row[c].clone());
            for x in row {
                data.push(Scalar::Rat(match &lead {
                    Some(l) => BigRational::new(x, l.clone()),
                    None => BigRational::from_integer(x),
                }));
            }
        }
        Echelon {
            reduced: Matrix { field: self.field, rows, cols, data },
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.rref();
        kernel_from_echelon(&reduced, &pivots, self.cols)
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Vec<Vec<Scalar>> {
        let e = self.rref();
        (0..e.pivots.len()).map(|i| e.reduced.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(e.reduced.block(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Some(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let x = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = x;
                }
            }
        }
        Some(det)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Solves `self * X = B` column by column; `None` if some column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let e = aug.rref();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(Matrix::from_fn(self.field, self.cols, b.cols, |i, j| {
            e.pivots
                .iter()
                .position(|&p| p == i)
                .map_or_else(|| self.field.zero(), |r| e.reduced[(r, self.cols + j)].clone())
        }))
    }

    /// Entries flattened row-major, as a single vector.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: v.to_vec(),
        }
    }
}

fn kernel_from_echelon(reduced: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let field = reduced.field;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[(r, f)];
            }
            v
        })
        .collect()
}

/// Solves `a * x = b` exactly, returning one solution (if any) and a kernel basis.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows,
            b.len()
        )));
    }
    let rhs = Matrix::from_columns(a.field, a.rows, &[b.to_vec()]);
    let e = a.hstack(&rhs).rref();
    let inconsistent = e.pivots.last() == Some(&a.cols);
    let coeff_pivots: Vec<usize> = e.pivots.iter().copied().filter(|&p| p < a.cols).collect();
    let coeff = e.reduced.block(0..e.reduced.rows, 0..a.cols);
    let kernel = kernel_from_echelon(&coeff, &coeff_pivots, a.cols);
    let particular = (!inconsistent).then(|| {
        let mut x = vec![a.field.zero(); a.cols];
        for (r, &p) in coeff_pivots.iter().enumerate() {
            x[p] = e.reduced[(r, a.cols)].clone();
        }
        x
    });
    Ok(LinearSolution { particular, kernel })
}

/// Coordinates with respect to a fixed family of linearly independent vectors.
///
/// Built once from the basis, then `coords` is a matrix-vector product plus a
/// membership check.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    left_inverse: Matrix,
}

impl Coordinates {
    /// `vectors` must be linearly independent and all of length `ambient`.
    pub fn new(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Coordinates> {
        let basis = Matrix::from_columns(field, ambient, vectors);
        let k = vectors.len();
        if basis.rank() != k {
            return Err(Error::DimensionMismatch("coordinate basis is linearly dependent".into()));
        }
        // rref([B^T | I]) = [R | T] with T B^T = R and R[:, pivots] = I, so
        // B[pivots, :] = T^{-T} and c = T^T v[pivots] for v = B c.
        let bt = basis.transpose();
        let e = bt.hstack(&Matrix::identity(field, k)).rref();
        let t = e.reduced.block(0..k, ambient..ambient + k);
        let pivots = &e.pivots[..k];
        let tt = t.transpose();
        let left_inverse = Matrix::from_fn(field, k, ambient, |i, j| match pivots.iter().position(|&p| p == j) {
            Some(r) => tt[(i, r)].clone(),
            None => field.zero(),
        });
        Ok(Coordinates { basis, left_inverse })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.left_inverse.mul_vec(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    /// Coordinates of a vector known to lie in the span (panics otherwise).
    pub fn coords_in_span(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coords(v).expect("vector outside coordinate span")
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

/// The quotient `V / W` of a coordinate space by a subspace, with the
/// canonical complement: cosets are represented by the standard basis vectors
/// at the non-pivot columns of `rref(W)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    field: Field,
    ambient: usize,
    /// Nonzero rows of `rref(W)` with their pivot columns.
    rows: Vec<(usize, Vec<Scalar>)>,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(field: Field, ambient: usize, spanning: Matrix) -> Quotient {
        assert_eq!(spanning.cols(), ambient);
        let e = spanning.rref();
        let rows: Vec<(usize, Vec<Scalar>)> = e
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| (p, e.reduced.row(r).to_vec()))
            .collect();
        let free = (0..ambient).filter(|c| !e.pivots.contains(c)).collect();
        Quotient { field, ambient, rows, free }
    }

    pub fn from_vectors(field: Field, ambient: usize, spanning: &[Vec<Scalar>]) -> Quotient {
        let m = if spanning.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, ambient, spanning.to_vec()).expect("spanning vectors of the wrong length")
        };
        Quotient::new(field, ambient, m)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Dimension of the subspace being divided out.
    pub fn kernel_dim(&self) -> usize {
        self.rows.len()
    }

    /// Ambient indices of the coset representatives.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    /// Canonical basis of the subspace.
    pub fn subspace_basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Reduces `v` modulo the subspace (pivot entries become zero).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        v
    }

    pub fn in_subspace(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Quotient coordinates of `v`.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// The coset representative of quotient coordinates `c`.
    pub fn lift(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.ambient];
        for (&i, x) in self.free.iter().zip(c) {
            v[i] = x.clone();
        }
        v
    }

    /// Matrix of the projection, `dim x ambient`.
    pub fn projection_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.ambient);
        for (k, &f) in self.free.iter().enumerate() {
            m[(k, f)] = self.field.one();
        }
        for (p, row) in &self.rows {
            for (k, &f) in self.free.iter().enumerate() {
                m[(k, *p)] = -&row[f];
            }
        }
        m
    }

    /// Matrix of the section by coset representatives, `ambient x dim`.
    pub fn section_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.ambient, self.dim());
        for (k, &f) in self.free.iter().enumerate() {
            m[(f, k)] = self.field.one();
        }
        m
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix product field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let x = &out[(i, j)] + &(a * b);
                    out[(i, j)] = x;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Adds two vectors of equal length.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// A uniformly drawn invertible matrix over `F_p`; small integer entries over `Q`.
pub fn random_invertible<R: rand::Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, rng));
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_scalar<R: rand::Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn qv(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let s = solve_linear(&Matrix::identity(q(), 2), &qv(&[1, 0])).unwrap();
        assert_eq!(s.particular, Some(qv(&[1, 0])));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_zero_map() {
        let s = solve_linear(&Matrix::zeros(q(), 1, 2), &qv(&[0])).unwrap();
        assert_eq!(s.particular, Some(qv(&[0, 0])));
        assert_eq!(s.kernel.len(), 2);
    }

    #[test]
    fn solve_inconsistent() {
        // Row-reducing [[1,1|1],[2,2|3]] gives the row [0,0|1].
        let a = Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]);
        let s = solve_linear(&a, &qv(&[1, 3])).unwrap();
        assert_eq!(s.particular, None);
        assert_eq!(s.kernel, vec![qv(&[-1, 1])]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(q(), 2);
        assert!(matches!(solve_linear(&a, &qv(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.determinant().unwrap(), q().from_i64(1));
        let s = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::prime(5).unwrap();
        let basis = vec![
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(3)],
        ];
        let c = Coordinates::new(f, 3, &basis).unwrap();
        let v = vec_add(&vec_scale(&basis[0], &f.from_i64(4)), &vec_scale(&basis[1], &f.from_i64(2)));
        assert_eq!(c.coords(&v).unwrap(), vec![f.from_i64(4), f.from_i64(2)]);
        assert!(c.coords(&[f.from_i64(0), f.from_i64(0), f.from_i64(1)]).is_none());
    }

    #[test]
    fn quotient_projection() {
        let f = q();
        let w = vec![qv(&[1, 1, 0]), qv(&[0, 1, 1])];
        let quo = Quotient::from_vectors(f, 3, &w);
        assert_eq!(quo.dim(), 1);
        assert!(quo.project(&qv(&[1, 1, 0])).iter().all(Scalar::is_zero));
        let pm = quo.projection_matrix();
        assert_eq!(pm.mul_vec(&qv(&[2, 5, 7])), quo.project(&qv(&[2, 5, 7])));
        assert!((&pm * &quo.section_matrix()).is_identity());
    }

    #[test]
    fn kron_shape() {
        let a = Matrix::from_i64(q(), &[&[1, 2]]);
        let b = Matrix::from_i64(q(), &[&[0], &[1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, Matrix::from_i64(q(), &[&[0, 0], &[1, 2]]));
    }
}
