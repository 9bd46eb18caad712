use num_traits::Zero;

use super::{LieAlgebra, LieError};
use crate::linalg::{
    minimal_polynomial, rational_roots, unit_vec, AdaptedBasis, Matrix, Rational, Subspace,
};

/// Representation matrices of a subalgebra acting on a quotient space, one per
/// basis vector of the subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    pub rep_dim: usize,
    pub matrices: Vec<Matrix>,
}

impl ModuleAction {
    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }
}

impl LieAlgebra {
    /// Solvable radical, computed as the Killing-orthogonal complement of
    /// `[L, L]` (Cartan's criterion in characteristic zero).
    pub fn radical(&self) -> Subspace {
        let n = self.dim();
        let full = Subspace::full(n);
        let derived = self.bracket_span(&full, &full).expect("ambient matches");
        if derived.is_zero() {
            return full;
        }
        let constraints = derived.basis().mul(&self.killing_form());
        Subspace::span(n, constraints.kernel_basis())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    /// Joint kernel of all `ad e_i`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Matrix::zeros(0, n);
        for i in 0..n {
            stacked = stacked.vstack(&self.ad(&unit_vec(n, i)));
        }
        Subspace::span(n, stacked.kernel_basis())
    }

    /// Basis of the centroid: linear maps commuting with every `ad x`.
    pub fn centroid(&self) -> Vec<Matrix> {
        let n = self.dim();
        let mut system = Matrix::zeros(0, n * n);
        for g in 0..n {
            let a = self.ad(&unit_vec(n, g));
            if a.is_zero() {
                continue;
            }
            // (T·A − A·T)_{rc} in the unknowns t_{pq} at column p * n + q
            let mut block = Matrix::zeros(n * n, n * n);
            for r in 0..n {
                for c in 0..n {
                    let row = r * n + c;
                    for k in 0..n {
                        if !a[(k, c)].is_zero() {
                            block[(row, r * n + k)] += &a[(k, c)];
                        }
                        if !a[(r, k)].is_zero() {
                            block[(row, k * n + c)] -= &a[(r, k)];
                        }
                    }
                }
            }
            let reduced = system.vstack(&block).rref();
            let rows = (0..reduced.rank).map(|i| reduced.reduced.row(i).to_vec()).collect();
            system = Matrix::from_rows(rows, n * n);
        }
        system
            .kernel_basis()
            .into_iter()
            .map(|t| Matrix::from_rows(t.chunks(n).map(<[Rational]>::to_vec).collect(), n))
            .collect()
    }

    /// Splits a semisimple algebra into simple ideals, ordered by their first
    /// pivot column. Works by simultaneous rational eigenspaces of the centroid;
    /// an irrational eigenvalue means a splitting we refuse to perform.
    pub fn simple_ideal_decomposition(&self) -> Result<Vec<Subspace>, LieError> {
        let n = self.dim();
        if !self.is_semisimple() {
            return Err(LieError::NotSemisimple);
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut blocks = vec![Subspace::full(n)];
        for t in self.centroid() {
            let roots = rational_roots(&minimal_polynomial(&t));
            let eigenspaces: Vec<Subspace> = roots
                .iter()
                .map(|lambda| {
                    let shifted = t.sub(&Matrix::identity(n).scale(lambda));
                    Subspace::span(n, shifted.kernel_basis())
                })
                .collect();
            if eigenspaces.iter().map(Subspace::dim).sum::<usize>() != n {
                return Err(LieError::NonSplit);
            }
            let mut refined = Vec::new();
            for b in &blocks {
                for e in &eigenspaces {
                    let piece = b.intersect(e)?;
                    if !piece.is_zero() {
                        refined.push(piece);
                    }
                }
            }
            blocks = refined;
        }
        blocks.sort_by_key(|b| b.pivots().to_vec());
        Ok(blocks)
    }

    /// Action of `levi` on `radical / [radical, radical]`, in the quotient basis
    /// obtained by completing the rref basis of `[R, R]` to one of `R`.
    pub fn quotient_module_action(
        &self,
        levi: &Subspace,
        radical: &Subspace,
    ) -> Result<ModuleAction, LieError> {
        if !levi.intersect(radical)?.is_zero() || !levi.sum(radical)?.is_full() {
            return Err(LieError::NotComplementary);
        }
        let square = self.derived_subalgebra(radical)?;
        let adapted = AdaptedBasis::new(&square, radical)?;
        let q = adapted.quotient_dim();
        let matrices = levi
            .vectors()
            .iter()
            .map(|s| {
                let mut m = Matrix::zeros(q, q);
                for j in 0..q {
                    let image = self.br(s, adapted.complement_vector(j));
                    let coords = adapted
                        .quotient_coordinates(&image)
                        .ok_or(LieError::NotComplementary)?;
                    for (i, c) in coords.into_iter().enumerate() {
                        m[(i, j)] = c;
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        Ok(ModuleAction {
            rep_dim: q,
            matrices,
        })
    }

    /// Killing-orthogonal complement of `v` inside `within`, using `form`.
    pub(crate) fn orthogonal_in(
        form: &Matrix,
        v: &Subspace,
        within: &Subspace,
    ) -> Result<Subspace, LieError> {
        if v.is_zero() {
            return Ok(within.clone());
        }
        // x = a·W with (a·W)·K·vᵀ = 0 for each basis vector of v
        let w = within.basis();
        let constraints = v.basis().mul(form).mul(&w.transpose());
        let vecs = constraints.kernel_basis().into_iter().map(|a| w.vec_mul(&a));
        Ok(Subspace::span(within.ambient_dim(), vecs))
    }
}
