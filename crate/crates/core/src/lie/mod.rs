//! Lie algebras presented by structure constants.
//!
//! A [`LieAlgebra`] is a validated [`StructureConstants`] table together with
//! a dense copy of all basis brackets. Vectors are coordinate vectors in the
//! algebra's basis; `ad x` is a matrix acting on column vectors.

mod ideals;

pub use ideals::ModuleAction;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{
    add_scaled, dot, is_zero_vec, unit_vec, zero_vec, LinalgError, Matrix, Rational, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("malformed bracket table: {0}")]
    MalformedTable(String),
    #[error("expected vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("splitting into simple ideals needs an irrational eigenvalue")]
    NonSplit,
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error("change of basis matrix is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sparse bracket table: `[e_i, e_j] = Σ c_k e_k`, stored for `i < j` only.
/// `(i, j, [(k, c)])`: `[e_i, e_j] = Σ c e_k`.
pub type TableEntry = (usize, usize, Vec<(usize, Rational)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub table: Vec<TableEntry>,
}

impl StructureConstants {
    pub fn new(basis_names: Vec<String>) -> Self {
        StructureConstants {
            dim: basis_names.len(),
            basis_names,
            table: Vec::new(),
        }
    }

    /// Basis named `e0, e1, ...`.
    pub fn with_dim(dim: usize) -> Self {
        Self::new((0..dim).map(|i| format!("e{i}")).collect())
    }

    /// Records `[e_i, e_j] = Σ coeffs`, flipping the sign when `i > j`.
    /// Zero coefficients are dropped; an all-zero result records nothing.
    pub fn set(&mut self, i: usize, j: usize, coeffs: Vec<(usize, Rational)>) {
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let mut entry: Vec<(usize, Rational)> = coeffs
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, if sign { -c } else { c }))
            .collect();
        entry.sort_by_key(|(k, _)| *k);
        self.table.retain(|(x, y, _)| (*x, *y) != (a, b));
        if !entry.is_empty() {
            self.table.push((a, b, entry));
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, coeffs: &[(usize, i64)]) {
        self.set(
            i,
            j,
            coeffs.iter().map(|&(k, c)| (k, crate::linalg::rat(c))).collect(),
        );
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    sc: StructureConstants,
    // dense [e_i, e_j] at i * dim + j
    brackets: Vec<Vec<Rational>>,
}

impl LieAlgebra {
    /// Validates the table (indices, duplicates, Jacobi) and builds the algebra.
    pub fn validate(sc: StructureConstants) -> Result<LieAlgebra, LieError> {
        let alg = LieAlgebra::build(sc)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn build(mut sc: StructureConstants) -> Result<LieAlgebra, LieError> {
        let n = sc.dim;
        if sc.basis_names.len() != n {
            return Err(LieError::MalformedTable(format!(
                "{} basis names for dimension {n}",
                sc.basis_names.len()
            )));
        }
        let mut brackets = vec![zero_vec(n); n * n];
        let mut seen = std::collections::HashSet::new();
        for (i, j, coeffs) in &sc.table {
            for &idx in [i, j].into_iter().chain(coeffs.iter().map(|(k, _)| k)) {
                if idx >= n {
                    return Err(LieError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if i >= j {
                return Err(LieError::MalformedTable(format!(
                    "entry ({i}, {j}) must have i < j"
                )));
            }
            if !seen.insert((*i, *j)) {
                return Err(LieError::MalformedTable(format!("duplicate entry ({i}, {j})")));
            }
            let mut v = zero_vec(n);
            for (k, c) in coeffs {
                if c.is_zero() {
                    return Err(LieError::MalformedTable(format!(
                        "zero coefficient in entry ({i}, {j})"
                    )));
                }
                if !v[*k].is_zero() {
                    return Err(LieError::MalformedTable(format!(
                        "repeated basis index {k} in entry ({i}, {j})"
                    )));
                }
                v[*k] = c.clone();
            }
            brackets[j * n + i] = v.iter().map(|x| -x).collect();
            brackets[i * n + j] = v;
        }
        sc.table.sort_by_key(|(i, j, _)| (*i, *j));
        for (_, _, coeffs) in &mut sc.table {
            coeffs.sort_by_key(|(k, _)| *k);
        }
        Ok(LieAlgebra { sc, brackets })
    }

    /// Builds an algebra from a dense bracket function on basis indices. Only
    /// `i < j` is queried.
    pub fn from_fn<F>(basis_names: Vec<String>, f: F) -> Result<LieAlgebra, LieError>
    where
        F: FnMut(usize, usize) -> Vec<Rational>,
    {
        let alg = LieAlgebra::table_from_fn(basis_names, f)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn table_from_fn<F>(basis_names: Vec<String>, mut f: F) -> Result<LieAlgebra, LieError>
    where
        F: FnMut(usize, usize) -> Vec<Rational>,
    {
        let n = basis_names.len();
        let mut sc = StructureConstants::new(basis_names);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if v.len() != n {
                    return Err(LieError::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                sc.set(i, j, v.into_iter().enumerate().collect());
            }
        }
        LieAlgebra::build(sc)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut r = self.br(self.basis_bracket(i, j), &unit_vec(n, k));
                    let t2 = self.br(self.basis_bracket(j, k), &unit_vec(n, i));
                    let t3 = self.br(self.basis_bracket(k, i), &unit_vec(n, j));
                    add_scaled(&mut r, &Rational::from_integer(1.into()), &t2);
                    add_scaled(&mut r, &Rational::from_integer(1.into()), &t3);
                    if !is_zero_vec(&r) {
                        return Err(LieError::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.sc.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.sc.basis_names
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.table.is_empty()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        Ok(self.br(x, y))
    }

    /// Bracket without length checks.
    pub(crate) fn br(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                add_scaled(&mut out, &(xi * yj), self.basis_bracket(i, j));
            }
        }
        out
    }

    /// Matrix of `ad x`: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.br(x, &unit_vec(n, j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Killing form `κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // Σ_{k,l} c_{ik}^l c_{jl}^k
                let mut acc = Rational::zero();
                for k in 0..n {
                    let ik = self.basis_bracket(i, k);
                    for (l, c) in ik.iter().enumerate() {
                        if !c.is_zero() {
                            let d = &self.basis_bracket(j, l)[k];
                            if !d.is_zero() {
                                acc += c * d;
                            }
                        }
                    }
                }
                out[(j, i)] = acc.clone();
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.killing_form().mul_vec(y))
    }

    fn check_ambient(&self, v: &Subspace) -> Result<(), LieError> {
        if v.ambient_dim() != self.dim() {
            return Err(LinalgError::AmbientMismatch {
                left: self.dim(),
                right: v.ambient_dim(),
            }
            .into());
        }
        Ok(())
    }

    /// Span of `[u, w]` over basis vectors `u ∈ a`, `w ∈ b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        self.check_ambient(a)?;
        self.check_ambient(b)?;
        let (av, bv) = (a.vectors(), b.vectors());
        let mut out = Vec::new();
        for (p, u) in av.iter().enumerate() {
            for (q, w) in bv.iter().enumerate() {
                // [a, a] is antisymmetric, skip the mirrored half
                if a == b && q <= p {
                    continue;
                }
                let c = self.br(u, w);
                if !is_zero_vec(&c) {
                    out.push(c);
                }
            }
        }
        Ok(Subspace::span(self.dim(), out))
    }

    pub fn is_subalgebra(&self, v: &Subspace) -> Result<bool, LieError> {
        Ok(v.contains(&self.bracket_span(v, v)?)?)
    }

    pub fn is_ideal(&self, v: &Subspace) -> Result<bool, LieError> {
        let all = Subspace::full(self.dim());
        Ok(v.contains(&self.bracket_span(&all, v)?)?)
    }

    /// `[V, V]` for a subalgebra `V`.
    pub fn derived_subalgebra(&self, v: &Subspace) -> Result<Subspace, LieError> {
        let d = self.bracket_span(v, v)?;
        if !v.contains(&d)? {
            return Err(LieError::NotASubalgebra);
        }
        Ok(d)
    }

    /// `V ⊇ [V,V] ⊇ [[V,V],[V,V]] ⊇ ...` up to the point where it stabilizes.
    pub fn derived_series(&self, v: &Subspace) -> Result<Vec<Subspace>, LieError> {
        let mut series = vec![v.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_subalgebra(last)?;
            if next == *last {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self, v: &Subspace) -> Result<bool, LieError> {
        Ok(self.derived_series(v)?.last().unwrap().is_zero())
    }

    /// The algebra spanned by the basis of `v`, in the coordinates of that basis.
    pub fn restrict(&self, v: &Subspace) -> Result<LieAlgebra, LieError> {
        self.check_ambient(v)?;
        let vecs = v.vectors();
        let names = (0..v.dim()).map(|i| format!("b{i}")).collect();
        let mut closed = true;
        let alg = LieAlgebra::from_fn(names, |i, j| {
            let c = self.br(&vecs[i], &vecs[j]);
            v.coordinates(&c).unwrap_or_else(|| {
                closed = false;
                zero_vec(vecs.len())
            })
        });
        if !closed {
            return Err(LieError::NotASubalgebra);
        }
        alg
    }

    /// The same algebra in the basis given by the rows of `p` (row `a` is the
    /// new basis vector `e'_a` in old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                got: p.rows(),
            });
        }
        let inv = p.inverse().ok_or(LieError::NotInvertible)?;
        let rows = p.row_vecs();
        // an isomorphic copy satisfies Jacobi already
        LieAlgebra::table_from_fn(self.basis_names().to_vec(), |a, b| {
            inv.vec_mul(&self.br(&rows[a], &rows[b]))
        })
    }

    /// Direct sum `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut names = self.basis_names().to_vec();
        for name in other.basis_names() {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let mut sc = StructureConstants::new(names);
        for (i, j, c) in &self.sc.table {
            sc.table.push((*i, *j, c.clone()));
        }
        for (i, j, c) in &other.sc.table {
            sc.table
                .push((i + n, j + n, c.iter().map(|(k, x)| (k + n, x.clone())).collect()));
        }
        debug_assert_eq!(sc.dim, n + m);
        LieAlgebra::validate(sc).expect("direct sum of valid algebras is valid")
    }
}
