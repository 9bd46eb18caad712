//! Exact dense linear algebra over the rationals.
//!
//! Everything in the crate is computed over `BigRational`, so rank, kernel and
//! subspace questions have exact answers. Matrices are small (ambient
//! dimensions in the tens), dense and row-major.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("subspace of dimension {sub} is not contained in subspace of dimension {sup}")]
    NotContained { sub: usize, sup: usize },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, LinalgError> {
    let t = text.trim();
    let bad = || LinalgError::BadRational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Rational], scale: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if scale.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += scale * x;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "from_rows: ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul: inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.rows, v.len(), "vec_mul: dimension mismatch");
        let mut out = zero_vec(self.cols);
        for (i, x) in v.iter().enumerate() {
            add_scaled(&mut out, x, self.row(i));
        }
        out
    }

    /// Row-major flattening, used when matrices are unknowns of a linear system.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(rows, self.cols + other.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            let pivot_row = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let v = &m[(i, c + off)] - &f * pv;
                        m[(i, c + off)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = zero_vec(self.cols);
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self·x = b`, or `None` when `b` is outside the column
    /// space. Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len(), "solve: right-hand side length mismatch");
        let rhs = Matrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect(), 1);
        let Rref {
            reduced, pivots, ..
        } = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse: matrix not square");
        let n = self.rows;
        let Rref {
            reduced, rank, ..
        } = self.hstack(&Matrix::identity(n)).rref();
        if rank < n || (0..n).any(|i| reduced[(i, i)] != Rational::one()) {
            return None;
        }
        let rows = (0..n).map(|i| reduced.row(i)[n..].to_vec()).collect();
        Some(Matrix::from_rows(rows, n))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `ℚ^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Two subspaces are equal iff their data is equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(n))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let Rref {
            reduced,
            pivots,
            rank,
        } = m.rref();
        let rows = (0..rank).map(|i| reduced.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::from_rows(rows, m.cols()),
            pivots,
        }
    }

    pub fn span<I>(n: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        Self::from_matrix(&Matrix::from_rows(vectors.into_iter().collect(), n))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "coordinates: ambient mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            add_scaled(&mut residual, &-c.clone(), self.basis.row(r));
        }
        is_zero_vec(&residual).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // (a, b) with a·U = b·W, read off a·U.
        let stacked = self.basis.transpose().hstack(&other.basis.transpose().scale(&rat(-1)));
        let k = self.dim();
        let vectors = stacked
            .kernel_basis()
            .into_iter()
            .map(|ab| self.basis.vec_mul(&ab[..k]));
        Ok(Subspace::span(self.ambient_dim, vectors))
    }

    /// The coordinate complement: unit vectors on the non-pivot columns.
    pub fn complement(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        Subspace::span(
            self.ambient_dim,
            (0..self.ambient_dim)
                .filter(|&c| !is_pivot[c])
                .map(|c| unit_vec(self.ambient_dim, c)),
        )
    }

    /// Maps each basis vector `v` to `v·m` (row convention).
    pub fn map_rows(&self, m: &Matrix) -> Subspace {
        Subspace::span(m.cols(), self.vectors().iter().map(|v| m.vec_mul(v)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

/// A basis of `sup` that starts with the canonical basis of `sub`; the
/// trailing vectors span a complement of `sub` inside `sup`.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    vectors: Matrix,
    sub_dim: usize,
}

impl AdaptedBasis {
    /// Greedily completes the rref basis of `sub` with rref rows of `sup`.
    pub fn new(sub: &Subspace, sup: &Subspace) -> Result<Self, LinalgError> {
        sub.check(sup)?;
        let mut rows = sub.vectors();
        let mut current = sub.clone();
        for v in sup.vectors() {
            if !current.contains_vector(&v) {
                current = Subspace::span(sup.ambient_dim(), current.vectors().into_iter().chain([v.clone()]));
                rows.push(v);
            }
        }
        if current != *sup {
            return Err(LinalgError::NotContained {
                sub: sub.dim(),
                sup: sup.dim(),
            });
        }
        Ok(AdaptedBasis {
            vectors: Matrix::from_rows(rows, sup.ambient_dim()),
            sub_dim: sub.dim(),
        })
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.vectors.rows() - self.sub_dim
    }

    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    /// The trailing (complement) vectors.
    pub fn complement_vector(&self, i: usize) -> &[Rational] {
        self.vectors.row(self.sub_dim + i)
    }

    /// Full coordinates of `v` in the adapted basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.vectors.transpose().solve(v)
    }

    /// Coordinates of the image of `v` in `sup / sub`.
    pub fn quotient_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.coordinates(v).map(|c| c[self.sub_dim..].to_vec())
    }
}

/// Smallest monic polynomial `p` with `p(m) = 0`, coefficients in ascending
/// degree order.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Rational> {
    assert!(m.is_square());
    let n = m.rows();
    let mut powers: Vec<Matrix> = vec![Matrix::identity(n)];
    loop {
        let next = powers.last().unwrap().mul(m);
        // Columns are the flattened powers I, m, ..., m^{k-1}.
        let k = powers.len();
        let mut system = Matrix::zeros(n * n, k);
        for (j, p) in powers.iter().enumerate() {
            for (i, x) in p.as_slice().iter().enumerate() {
                system[(i, j)] = x.clone();
            }
        }
        if let Some(c) = system.solve(next.as_slice()) {
            let mut poly: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            poly.push(Rational::one());
            return poly;
        }
        powers.push(next);
    }
}

/// All rational roots of a polynomial (ascending coefficients), without
/// multiplicity, in increasing order.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = poly.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() > 1 {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i64, -1] {
                    let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                    if !roots.contains(&cand) && eval_poly(&coeffs, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
