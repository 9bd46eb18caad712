//! Named families of Lie algebras: `sl(n)`, abelian and small solvable
//! algebras, semidirect products with highest-weight modules, direct sums.
//!
//! Recipes have a textual form used by the CLI, e.g.
//! `direct_sum(sl(3), semidirect(sl(2), (1)))` or `semidirect(sl(2), (0)+(0))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError, StructureConstants};
use crate::linalg::{rat, unit_vec, zero_vec, Matrix, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("bad recipe: {0}")]
    BadRecipe(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn bad(msg: impl Into<String>) -> ConstructError {
    ConstructError::BadRecipe(msg.into())
}

/// A completely reducible module given as a list of highest weights; each
/// weight concatenates the fundamental-weight coordinates of every `sl` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec(pub Vec<Vec<i64>>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Sl(usize),
    /// The cross-product algebra over ℚ: a non-split form of `sl(2)`.
    So3,
    Abelian(usize),
    Heisenberg,
    TwoDimNonabelian,
    /// `S ⋉ V` with `V` abelian.
    Semidirect(Box<Recipe>, ModuleSpec),
    /// `S ⋉ (V ⊕ ⟨z⟩)` with `[v, w] = ω(v, w) z` for an invariant symplectic `ω`.
    HeisenbergSemidirect(Box<Recipe>, ModuleSpec),
    DirectSum(Box<Recipe>, Box<Recipe>),
    /// `(S ⊕ ⟨t⟩) ⋉ V` where `t` acts as the identity on `V`.
    ScaleAction(Box<Recipe>, ModuleSpec),
}

pub fn sl(n: usize) -> Result<LieAlgebra, ConstructError> {
    Ok(SlRealization::new(&[n])?.algebra()?)
}

pub fn so3() -> LieAlgebra {
    let mut sc = StructureConstants::new(vec!["x".into(), "y".into(), "z".into()]);
    sc.set_i64(0, 1, &[(2, 1)]);
    sc.set_i64(1, 2, &[(0, 1)]);
    sc.set_i64(2, 0, &[(1, 1)]);
    LieAlgebra::validate(sc).expect("so3 table is valid")
}

/// `sl₂(ℚ(√d))` as a 6-dimensional algebra over ℚ, basis `(e, h, f, √d·e,
/// √d·h, √d·f)`. Semisimple but not a direct sum of split simple ideals
/// when `d` is not a square.
pub fn sl2_quadratic(d: i64) -> LieAlgebra {
    let base = sl(2).expect("sl(2) exists");
    let names = ["e", "h", "f", "re", "rh", "rf"].iter().map(|s| s.to_string()).collect();
    LieAlgebra::from_fn(names, |i, j| {
        let (si, sj) = (i / 3, j / 3);
        let c = base.basis_bracket(i % 3, j % 3);
        let (offset, factor) = match si + sj {
            0 => (0, 1),
            1 => (3, 1),
            _ => (0, d),
        };
        let mut out = zero_vec(6);
        for (k, x) in c.iter().enumerate() {
            out[k + offset] = x * rat(factor);
        }
        out
    })
    .expect("restriction of scalars of sl(2) is a Lie algebra")
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::validate(StructureConstants::with_dim(n)).expect("empty table is valid")
}

pub fn heisenberg() -> LieAlgebra {
    let mut sc = StructureConstants::new(vec!["x".into(), "y".into(), "z".into()]);
    sc.set_i64(0, 1, &[(2, 1)]);
    LieAlgebra::validate(sc).expect("heisenberg table is valid")
}

pub fn twodim_nonabelian() -> LieAlgebra {
    let mut sc = StructureConstants::new(vec!["x".into(), "y".into()]);
    sc.set_i64(0, 1, &[(1, 1)]);
    LieAlgebra::validate(sc).expect("[x,y]=y is valid")
}

pub fn build_named(recipe: &Recipe) -> Result<LieAlgebra, ConstructError> {
    match recipe {
        Recipe::Sl(n) => sl(*n),
        Recipe::So3 => Ok(so3()),
        Recipe::Abelian(n) => Ok(abelian(*n)),
        Recipe::Heisenberg => Ok(heisenberg()),
        Recipe::TwoDimNonabelian => Ok(twodim_nonabelian()),
        Recipe::DirectSum(a, b) => Ok(build_named(a)?.direct_sum(&build_named(b)?)),
        Recipe::Semidirect(s, m) => {
            let real = SlRealization::from_recipe(s)?;
            let module = real.module(m)?;
            extend_by_module(&real.algebra()?, &module, Extension::Abelian)
        }
        Recipe::HeisenbergSemidirect(s, m) => {
            let real = SlRealization::from_recipe(s)?;
            let module = real.module(m)?;
            extend_by_module(&real.algebra()?, &module, Extension::Heisenberg)
        }
        Recipe::ScaleAction(s, m) => {
            let real = SlRealization::from_recipe(s)?;
            let module = real.module(m)?;
            extend_by_module(&real.algebra()?, &module, Extension::Scaled)
        }
    }
}

enum Extension {
    Abelian,
    Heisenberg,
    Scaled,
}

/// Appends a module (and possibly a central or scaling element) to `base`.
fn extend_by_module(
    base: &LieAlgebra,
    action: &[Matrix],
    kind: Extension,
) -> Result<LieAlgebra, ConstructError> {
    let s = base.dim();
    let d = action.first().map_or(0, Matrix::rows);
    let mut names = base.basis_names().to_vec();
    if let Extension::Scaled = kind {
        names.push("t".into());
    }
    let v0 = names.len();
    names.extend((1..=d).map(|i| format!("v{i}")));
    let form = match kind {
        Extension::Heisenberg => {
            names.push("z".into());
            Some(invariant_symplectic_form(action, d)?)
        }
        _ => None,
    };
    let n = names.len();
    let mut sc = StructureConstants::new(names);
    for (i, j, c) in &base.structure_constants().table {
        sc.table.push((*i, *j, c.clone()));
    }
    for (a, rho) in action.iter().enumerate() {
        for j in 0..d {
            let coeffs = (0..d).map(|i| (v0 + i, rho[(i, j)].clone())).collect();
            sc.set(a, v0 + j, coeffs);
        }
    }
    if let Extension::Scaled = kind {
        for j in 0..d {
            sc.set(s, v0 + j, vec![(v0 + j, Rational::one())]);
        }
    }
    if let Some(omega) = form {
        for i in 0..d {
            for j in i + 1..d {
                sc.set(v0 + i, v0 + j, vec![(n - 1, omega[(i, j)].clone())]);
            }
        }
    }
    Ok(LieAlgebra::validate(sc)?)
}

/// A nondegenerate alternating form with `ρ(x)ᵀΩ + Ωρ(x) = 0` for all `x`.
fn invariant_symplectic_form(action: &[Matrix], d: usize) -> Result<Matrix, ConstructError> {
    // unknowns ω_{ij}, i < j
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let entry = |i: usize, j: usize| -> Option<(usize, i64)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some((index[&(i, j)], 1)),
            std::cmp::Ordering::Greater => Some((index[&(j, i)], -1)),
            std::cmp::Ordering::Equal => None,
        }
    };
    let mut rows = Vec::new();
    for rho in action {
        for a in 0..d {
            for b in 0..d {
                // Σ_k ρ_{ka} ω_{kb} + ω_{ak} ρ_{kb}
                let mut row = zero_vec(pairs.len());
                for k in 0..d {
                    if let Some((idx, sign)) = entry(k, b) {
                        row[idx] += &rho[(k, a)] * rat(sign);
                    }
                    if let Some((idx, sign)) = entry(a, k) {
                        row[idx] += &rho[(k, b)] * rat(sign);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows, pairs.len());
    let kernel = system.kernel_basis();
    let to_matrix = |w: &[Rational]| {
        let mut m = Matrix::zeros(d, d);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            m[(i, j)] = w[k].clone();
            m[(j, i)] = -w[k].clone();
        }
        m
    };
    let mut candidates: Vec<Matrix> = kernel.iter().map(|w| to_matrix(w)).collect();
    if !kernel.is_empty() {
        let mut total = zero_vec(pairs.len());
        for (i, w) in kernel.iter().enumerate() {
            crate::linalg::add_scaled(&mut total, &rat(i as i64 + 1), w);
        }
        candidates.push(to_matrix(&total));
    }
    candidates
        .into_iter()
        .find(|m| d > 0 && m.rank() == d)
        .ok_or_else(|| bad("module carries no invariant symplectic form"))
}

/// A direct sum of `sl(n_f)` realized by trace-zero matrices, factor by factor.
#[derive(Debug, Clone)]
struct SlRealization {
    sizes: Vec<usize>,
    // (factor, matrix) per basis element
    basis: Vec<(usize, Matrix)>,
    names: Vec<String>,
}

impl SlRealization {
    fn new(sizes: &[usize]) -> Result<Self, ConstructError> {
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for (f, &n) in sizes.iter().enumerate() {
            if n < 2 {
                return Err(bad(format!("sl({n}) needs n >= 2")));
            }
            for (name, m) in sl_basis(n) {
                basis.push((f, m));
                let mut candidate = name;
                while names.contains(&candidate) {
                    candidate.push('\'');
                }
                names.push(candidate);
            }
        }
        Ok(SlRealization {
            sizes: sizes.to_vec(),
            basis,
            names,
        })
    }

    fn from_recipe(recipe: &Recipe) -> Result<Self, ConstructError> {
        fn collect(r: &Recipe, out: &mut Vec<usize>) -> Result<(), ConstructError> {
            match r {
                Recipe::Sl(n) => {
                    out.push(*n);
                    Ok(())
                }
                Recipe::DirectSum(a, b) => {
                    collect(a, out)?;
                    collect(b, out)
                }
                other => Err(bad(format!(
                    "the acting algebra must be built from sl(n) summands, got {other}"
                ))),
            }
        }
        let mut sizes = Vec::new();
        collect(recipe, &mut sizes)?;
        Self::new(&sizes)
    }

    fn rank(&self) -> usize {
        self.sizes.iter().map(|n| n - 1).sum()
    }

    fn algebra(&self) -> Result<LieAlgebra, LieError> {
        let offsets = self.factor_offsets();
        LieAlgebra::from_fn(self.names.clone(), |i, j| {
            let (fi, mi) = &self.basis[i];
            let (fj, mj) = &self.basis[j];
            let mut out = zero_vec(self.basis.len());
            if fi == fj {
                let c = sl_coordinates(&mi.commutator(mj));
                for (k, x) in c.into_iter().enumerate() {
                    out[offsets[*fi] + k] = x;
                }
            }
            out
        })
    }

    fn factor_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::new();
        let mut acc = 0;
        for n in &self.sizes {
            offsets.push(acc);
            acc += n * n - 1;
        }
        offsets
    }

    /// Action matrices (one per basis element) on the given module.
    fn module(&self, spec: &ModuleSpec) -> Result<Vec<Matrix>, ConstructError> {
        if spec.0.is_empty() {
            return Err(bad("empty module"));
        }
        let mut blocks: Vec<Vec<Matrix>> = Vec::new();
        for hw in &spec.0 {
            if hw.len() != self.rank() {
                return Err(bad(format!(
                    "highest weight {hw:?} needs {} coordinates",
                    self.rank()
                )));
            }
            if hw.iter().any(|&c| c < 0) {
                return Err(bad(format!("highest weight {hw:?} is not dominant")));
            }
            blocks.push(self.irreducible(hw));
        }
        Ok((0..self.basis.len())
            .map(|a| block_diagonal(blocks.iter().map(|b| &b[a])))
            .collect())
    }

    fn irreducible(&self, hw: &[i64]) -> Vec<Matrix> {
        let mut offset = 0;
        let factor_reps: Vec<Vec<Matrix>> = self
            .sizes
            .iter()
            .map(|&n| {
                let w = &hw[offset..offset + n - 1];
                offset += n - 1;
                sl_irreducible(n, w)
            })
            .collect();
        let dims: Vec<usize> = factor_reps.iter().map(|r| r[0].rows()).collect();
        let offsets = self.factor_offsets();
        self.basis
            .iter()
            .enumerate()
            .map(|(a, (f, _))| {
                let local = &factor_reps[*f][a - offsets[*f]];
                // identity on every other tensor slot
                dims.iter().enumerate().fold(Matrix::identity(1), |acc, (g, &dg)| {
                    let slot = if g == *f { local.clone() } else { Matrix::identity(dg) };
                    kronecker(&acc, &slot)
                })
            })
            .collect()
    }
}

/// Basis of `sl(n)`: upper `E_ij`, then `H_k = E_kk − E_{k+1,k+1}`, then lower.
fn sl_basis(n: usize) -> Vec<(String, Matrix)> {
    let unit = |i: usize, j: usize| {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    };
    if n == 2 {
        let mut h = unit(0, 0);
        h[(1, 1)] = rat(-1);
        return vec![("e".into(), unit(0, 1)), ("h".into(), h), ("f".into(), unit(1, 0))];
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((format!("E{}_{}", i + 1, j + 1), unit(i, j)));
        }
    }
    for k in 0..n - 1 {
        let mut h = unit(k, k);
        h[(k + 1, k + 1)] = rat(-1);
        out.push((format!("H{}", k + 1), h));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push((format!("E{}_{}", j + 1, i + 1), unit(j, i)));
        }
    }
    out
}

/// Coordinates of a trace-zero matrix in [`sl_basis`].
fn sl_coordinates(m: &Matrix) -> Vec<Rational> {
    let n = m.rows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(i, j)].clone());
        }
    }
    let mut acc = Rational::zero();
    for k in 0..n - 1 {
        acc += &m[(k, k)];
        out.push(acc.clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(j, i)].clone());
        }
    }
    if n == 2 {
        // e, h, f order matches the generic layout for n = 2
        debug_assert_eq!(out.len(), 3);
    }
    out
}

pub(crate) fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    if !b[(k, l)].is_zero() {
                        out[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                    }
                }
            }
        }
    }
    out
}

fn block_diagonal<'a>(blocks: impl Iterator<Item = &'a Matrix> + Clone) -> Matrix {
    let total: usize = blocks.clone().map(Matrix::rows).sum();
    let mut out = Matrix::zeros(total, total);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    out
}

/// Action of `sl(n)` (basis order of [`sl_basis`]) on a module whose basis is
/// indexed by sorted index tuples.
struct TupleModule {
    tuples: Vec<Vec<usize>>,
    matrices: Vec<Matrix>,
}

/// `∧^k` of the natural module.
fn exterior_power(n: usize, k: usize, natural: &[Matrix]) -> TupleModule {
    let tuples = combinations(n, k);
    let index: BTreeMap<Vec<usize>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let matrices = natural
        .iter()
        .map(|x| {
            let mut m = Matrix::zeros(tuples.len(), tuples.len());
            for (col, t) in tuples.iter().enumerate() {
                for p in 0..k {
                    for r in 0..n {
                        let c = &x[(r, t[p])];
                        if c.is_zero() || (r != t[p] && t.contains(&r)) {
                            continue;
                        }
                        let mut u = t.clone();
                        u[p] = r;
                        let sign = sort_with_sign(&mut u);
                        m[(index[&u], col)] += c * rat(sign);
                    }
                }
            }
            m
        })
        .collect();
    TupleModule { tuples, matrices }
}

/// `Sym^m` of a module with the given action matrices.
fn symmetric_power(base: &[Matrix], dim: usize, m: usize) -> TupleModule {
    let tuples = multisets(dim, m);
    let index: BTreeMap<Vec<usize>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let matrices = base
        .iter()
        .map(|x| {
            let mut out = Matrix::zeros(tuples.len(), tuples.len());
            for (col, t) in tuples.iter().enumerate() {
                for p in 0..m {
                    for r in 0..dim {
                        let c = &x[(r, t[p])];
                        if c.is_zero() {
                            continue;
                        }
                        let mut u = t.clone();
                        u[p] = r;
                        u.sort_unstable();
                        out[(index[&u], col)] += c;
                    }
                }
            }
            out
        })
        .collect();
    TupleModule { tuples, matrices }
}

/// Irreducible `sl(n)`-module of highest weight `hw`, cut out of
/// `⊗_k Sym^{hw_k}(∧^k ℚ^n)` as the submodule generated by the highest
/// weight vector. Basis vectors are the rref basis of that submodule.
fn sl_irreducible(n: usize, hw: &[i64]) -> Vec<Matrix> {
    let natural: Vec<Matrix> = sl_basis(n).into_iter().map(|(_, m)| m).collect();
    let mut acc: Vec<Matrix> = vec![Matrix::zeros(1, 1); natural.len()];
    let mut acc_dim = 1;
    for (k, &mult) in hw.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let ext = exterior_power(n, k + 1, &natural);
        let sym = symmetric_power(&ext.matrices, ext.tuples.len(), mult as usize);
        let d = sym.tuples.len();
        acc = acc
            .iter()
            .zip(&sym.matrices)
            .map(|(a, b)| kronecker(a, &Matrix::identity(d)).add(&kronecker(&Matrix::identity(acc_dim), b)))
            .collect();
        acc_dim *= d;
    }
    if acc_dim == 1 {
        return acc;
    }
    // lowering operators E_{k+1,k} sit at the tail of the basis
    let lowering: Vec<usize> = {
        let names = sl_basis(n);
        (0..n - 1)
            .map(|k| {
                names
                    .iter()
                    .position(|(_, m)| !m[(k + 1, k)].is_zero() && m[(k, k)].is_zero())
                    .expect("simple lowering operator present")
            })
            .collect()
    };
    // generated submodule, grouped by weight (depth vector)
    let mut spaces: BTreeMap<Vec<usize>, Subspace> = BTreeMap::new();
    let start = unit_vec(acc_dim, 0);
    let mut queue = vec![(vec![0usize; n - 1], start.clone())];
    spaces.insert(vec![0; n - 1], Subspace::span(acc_dim, vec![start]));
    while let Some((depth, vec)) = queue.pop() {
        for (k, &op) in lowering.iter().enumerate() {
            let image = acc[op].mul_vec(&vec);
            if crate::linalg::is_zero_vec(&image) {
                continue;
            }
            let mut d = depth.clone();
            d[k] += 1;
            let space = spaces.entry(d.clone()).or_insert_with(|| Subspace::zero(acc_dim));
            if !space.contains_vector(&image) {
                *space = Subspace::span(acc_dim, space.vectors().into_iter().chain([image.clone()]));
                queue.push((d, image));
            }
        }
    }
    let all = Subspace::span(acc_dim, spaces.values().flat_map(Subspace::vectors));
    let basis = all.vectors();
    let pivots = all.pivots().to_vec();
    acc.iter()
        .map(|x| {
            let mut m = Matrix::zeros(basis.len(), basis.len());
            for (j, b) in basis.iter().enumerate() {
                let image = x.mul_vec(b);
                for (i, &p) in pivots.iter().enumerate() {
                    m[(i, j)] = image[p].clone();
                }
            }
            m
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts in place and returns the permutation sign.
fn sort_with_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|w| {
                let c: Vec<String> = w.iter().map(i64::to_string).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Sl(n) => write!(f, "sl({n})"),
            Recipe::So3 => write!(f, "so3"),
            Recipe::Abelian(n) => write!(f, "abelian({n})"),
            Recipe::Heisenberg => write!(f, "heisenberg"),
            Recipe::TwoDimNonabelian => write!(f, "twodim_nonabelian"),
            Recipe::Semidirect(s, m) => write!(f, "semidirect({s}, {m})"),
            Recipe::HeisenbergSemidirect(s, m) => write!(f, "heisenberg_semidirect({s}, {m})"),
            Recipe::DirectSum(a, b) => write!(f, "direct_sum({a}, {b})"),
            Recipe::ScaleAction(s, m) => write!(f, "scale_action({s}, {m})"),
        }
    }
}

impl FromStr for Recipe {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let r = p.recipe()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(bad(format!("trailing input at offset {} in {s:?}", p.pos)));
        }
        Ok(r)
    }
}

impl FromStr for ModuleSpec {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let m = p.module()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(bad(format!("trailing input in module {s:?}")));
        }
        Ok(m)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ConstructError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(bad(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<i64, ConstructError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(format!("expected integer at offset {start}")))
    }

    fn size_arg(&mut self) -> Result<usize, ConstructError> {
        self.expect(b'(')?;
        let n = self.integer()?;
        self.expect(b')')?;
        usize::try_from(n).map_err(|_| bad(format!("negative size {n}")))
    }

    fn module(&mut self) -> Result<ModuleSpec, ConstructError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"hw") {
            self.pos += 2;
        }
        let mut weights = Vec::new();
        loop {
            self.expect(b'(')?;
            let mut w = vec![self.integer()?];
            while self.eat(b',') || self.eat(b';') {
                w.push(self.integer()?);
            }
            self.expect(b')')?;
            weights.push(w);
            if !self.eat(b'+') {
                break;
            }
        }
        Ok(ModuleSpec(weights))
    }

    fn recipe(&mut self) -> Result<Recipe, ConstructError> {
        let name = self.ident();
        let r = match name.as_str() {
            "sl" => Recipe::Sl(self.size_arg()?),
            "abelian" => Recipe::Abelian(self.size_arg()?),
            "so3" => Recipe::So3,
            "heisenberg" => Recipe::Heisenberg,
            "twodim_nonabelian" => Recipe::TwoDimNonabelian,
            "direct_sum" => {
                self.expect(b'(')?;
                let a = self.recipe()?;
                self.expect(b',')?;
                let b = self.recipe()?;
                self.expect(b')')?;
                Recipe::DirectSum(Box::new(a), Box::new(b))
            }
            "semidirect" | "heisenberg_semidirect" | "scale_action" => {
                self.expect(b'(')?;
                let s = Box::new(self.recipe()?);
                self.expect(b',')?;
                let m = self.module()?;
                self.expect(b')')?;
                match name.as_str() {
                    "semidirect" => Recipe::Semidirect(s, m),
                    "heisenberg_semidirect" => Recipe::HeisenbergSemidirect(s, m),
                    _ => Recipe::ScaleAction(s, m),
                }
            }
            "" => return Err(bad(format!("expected recipe name at offset {}", self.pos))),
            other => return Err(bad(format!("unknown recipe {other:?}"))),
        };
        Ok(r)
    }
}
