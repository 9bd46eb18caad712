//! Finite-dimensional representations of split semisimple Lie algebras given
//! by Cartan type.
//!
//! Weights live in fundamental-weight coordinates, concatenated over the
//! simple factors. The Cartan matrix follows `A[i][j] = 2(αᵢ,αⱼ)/(αⱼ,αⱼ)`, so
//! row `i` is the simple root `αᵢ` in fundamental coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("weight {0} is not dominant")]
    NonDominant(Weight),
    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WrongLength {
        weight: Weight,
        expected: usize,
        got: usize,
    },
    #[error("invalid Cartan type {0:?}")]
    InvalidType(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub kind: SimpleType,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(kind: SimpleType, rank: usize) -> Result<Self, RepError> {
        let ok = match kind {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 4,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        };
        if ok {
            Ok(SimpleFactor { kind, rank })
        } else {
            Err(RepError::InvalidType(format!("{kind:?}{rank}")))
        }
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.kind {
            SimpleType::A | SimpleType::B | SimpleType::C | SimpleType::F | SimpleType::G => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            SimpleType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            SimpleType::E => {
                // Bourbaki labels: 1-3-4-5-…-n with 2 hanging off 4
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
        }
        match self.kind {
            SimpleType::B => a[n - 2][n - 1] = -2,
            SimpleType::C => a[n - 1][n - 2] = -2,
            SimpleType::F => a[1][2] = -2,
            SimpleType::G => a[1][0] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = RepError;

    /// Accepts `1`, `1,0`, `(1,0)`, `(1;0)`, `hw (2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix("hw").unwrap_or(t).trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        t.split([',', ';', ' '])
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i64>().map_err(|_| RepError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|v| {
                if v.is_empty() {
                    Err(RepError::Parse(s.to_string()))
                } else {
                    Ok(Weight(v))
                }
            })
    }
}

/// An irreducible module, named by its dominant highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrLabel {
    pub highest_weight: Weight,
}

impl IrrLabel {
    pub fn new(coords: Vec<i64>) -> Result<Self, RepError> {
        let w = Weight(coords);
        if w.is_dominant() {
            Ok(IrrLabel { highest_weight: w })
        } else {
            Err(RepError::NonDominant(w))
        }
    }

    pub fn trivial(rank: usize) -> Self {
        IrrLabel {
            highest_weight: Weight::zero(rank),
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.highest_weight.0
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.highest_weight.fmt(f)
    }
}

impl FromStr for IrrLabel {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IrrLabel::new(s.parse::<Weight>()?.0)
    }
}

/// A completely reducible module: irreducible constituents with multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModuleDesc {
    components: BTreeMap<IrrLabel, u64>,
}

impl ModuleDesc {
    pub fn new() -> Self {
        ModuleDesc::default()
    }

    pub fn irreducible(label: IrrLabel) -> Self {
        let mut m = ModuleDesc::new();
        m.add(label, 1);
        m
    }

    pub fn add(&mut self, label: IrrLabel, mult: u64) {
        if mult > 0 {
            *self.components.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &IrrLabel) -> u64 {
        self.components.get(label).copied().unwrap_or(0)
    }

    /// Constituents in increasing lexicographic order of highest weight.
    pub fn iter(&self) -> impl Iterator<Item = (&IrrLabel, u64)> {
        self.components.iter().map(|(l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &IrrLabel> {
        self.components.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of distinct isotypes.
    pub fn distinct(&self) -> usize {
        self.components.len()
    }

    /// Number of irreducible constituents counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.components.values().sum()
    }

    pub fn union(&self, other: &ModuleDesc) -> ModuleDesc {
        let mut out = self.clone();
        for (l, m) in other.iter() {
            out.add(l.clone(), m);
        }
        out
    }
}

impl FromIterator<(IrrLabel, u64)> for ModuleDesc {
    fn from_iter<T: IntoIterator<Item = (IrrLabel, u64)>>(iter: T) -> Self {
        let mut m = ModuleDesc::new();
        for (l, k) in iter {
            m.add(l, k);
        }
        m
    }
}

impl fmt::Display for ModuleDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(l, m)| if m == 1 { l.to_string() } else { format!("{m}*{l}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for ModuleDesc {
    type Err = RepError;

    /// `(1)`, `(0)+(0)`, `hw (1,0) + (0,1)`, `2*(1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix("hw").unwrap_or(t);
        let mut out = ModuleDesc::new();
        for part in t.split('+') {
            let part = part.trim();
            let (mult, label) = match part.split_once('*') {
                Some((m, l)) => (
                    m.trim().parse::<u64>().map_err(|_| RepError::Parse(s.to_string()))?,
                    l,
                ),
                None => (1, part),
            };
            if mult == 0 {
                return Err(RepError::Parse(s.to_string()));
            }
            out.add(label.parse()?, mult);
        }
        Ok(out)
    }
}

/// Weight multiset: weight to multiplicity.
pub type WeightSystem = BTreeMap<Weight, u64>;

/// Semisimple Cartan type as an ordered list of simple factors.
#[derive(Clone)]
pub struct CartanDatum {
    factors: Vec<SimpleFactor>,
    cartan: Vec<Vec<i64>>,
    // (αᵢ, αᵢ) / 2, integral and minimal per factor
    sym: Vec<i64>,
    // positive roots in simple-root coordinates
    positive_roots: Vec<Vec<i64>>,
    cache: Arc<Mutex<HashMap<Weight, Arc<WeightSystem>>>>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for CartanDatum {}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanDatum({self})")
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(SimpleFactor::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for CartanDatum {
    type Err = RepError;

    /// `A1`, `B2`, `A1+A1`, `A2xG2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(['+', 'x'])
            .map(|p| {
                let p = p.trim();
                let invalid = || RepError::InvalidType(s.to_string());
                let mut chars = p.chars();
                let kind = match chars.next().ok_or_else(invalid)?.to_ascii_uppercase() {
                    'A' => SimpleType::A,
                    'B' => SimpleType::B,
                    'C' => SimpleType::C,
                    'D' => SimpleType::D,
                    'E' => SimpleType::E,
                    'F' => SimpleType::F,
                    'G' => SimpleType::G,
                    _ => return Err(invalid()),
                };
                let rank = chars.as_str().parse::<usize>().map_err(|_| invalid())?;
                SimpleFactor::new(kind, rank)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CartanDatum::new(factors))
    }
}

impl CartanDatum {
    pub fn new(factors: Vec<SimpleFactor>) -> Self {
        let rank: usize = factors.iter().map(|f| f.rank).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut sym = vec![0i64; rank];
        let mut off = 0;
        for f in &factors {
            let a = f.cartan_matrix();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[off + i][off + j] = a[i][j];
                }
            }
            for (i, d) in symmetrizer(&a).into_iter().enumerate() {
                sym[off + i] = d;
            }
            off += f.rank;
        }
        let positive_roots = positive_roots(&cartan);
        CartanDatum {
            factors,
            cartan,
            sym,
            positive_roots,
            cache: Arc::default(),
        }
    }

    pub fn simple(kind: SimpleType, rank: usize) -> Result<Self, RepError> {
        Ok(CartanDatum::new(vec![SimpleFactor::new(kind, rank)?]))
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn check(&self, w: &Weight) -> Result<(), RepError> {
        if w.0.len() != self.rank() {
            return Err(RepError::WrongLength {
                weight: w.clone(),
                expected: self.rank(),
                got: w.0.len(),
            });
        }
        if !w.is_dominant() {
            return Err(RepError::NonDominant(w.clone()));
        }
        Ok(())
    }

    /// `(λ, α)` for `λ` in fundamental and `α` in simple-root coordinates.
    fn pair(&self, lambda: &[i64], alpha: &[i64]) -> i64 {
        alpha
            .iter()
            .enumerate()
            .map(|(j, c)| c * lambda[j] * self.sym[j])
            .sum()
    }

    /// Simple root `αᵢ` in fundamental coordinates.
    fn simple_root(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i];
        Weight(
            w.0.iter()
                .zip(self.simple_root(i))
                .map(|(x, a)| x - k * a)
                .collect(),
        )
    }

    pub fn weyl_dim(&self, w: &IrrLabel) -> Result<u64, RepError> {
        self.check(&w.highest_weight)?;
        let shifted: Vec<i64> = w.coords().iter().map(|c| c + 1).collect();
        let rho = vec![1; self.rank()];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for alpha in &self.positive_roots {
            num *= self.pair(&shifted, alpha);
            den *= self.pair(&rho, alpha);
        }
        Ok((num / den).to_u64().expect("dimension fits in u64"))
    }

    pub fn module_dim(&self, m: &ModuleDesc) -> Result<u64, RepError> {
        m.iter()
            .map(|(l, k)| Ok(k * self.weyl_dim(l)?))
            .sum::<Result<u64, RepError>>()
    }

    /// Full weight system of the irreducible module, by Freudenthal's formula.
    pub fn weight_multiplicities(&self, w: &IrrLabel) -> Result<Arc<WeightSystem>, RepError> {
        self.check(&w.highest_weight)?;
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&w.highest_weight) {
            return Ok(Arc::clone(hit));
        }
        let system = Arc::new(self.freudenthal(w.coords()));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(w.highest_weight.clone())
            .or_insert_with(|| Arc::clone(&system));
        Ok(system)
    }

    fn freudenthal(&self, lambda: &[i64]) -> WeightSystem {
        let r = self.rank();
        // weights are indexed by their depth below λ in simple-root coordinates
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        let at = |depth: &[i64]| -> Vec<i64> {
            let mut mu = lambda.to_vec();
            for (i, &n) in depth.iter().enumerate() {
                for (x, a) in mu.iter_mut().zip(&self.cartan[i]) {
                    *x -= n * a;
                }
            }
            mu
        };
        let top = vec![0i64; r];
        mult.insert(top.clone(), 1);
        let mut level = vec![top];
        while !level.is_empty() {
            let mut candidates: Vec<Vec<i64>> = level
                .iter()
                .flat_map(|d| {
                    (0..r).map(move |i| {
                        let mut e = d.clone();
                        e[i] += 1;
                        e
                    })
                })
                .collect();
            candidates.sort();
            candidates.dedup();
            let mut next = Vec::new();
            for depth in candidates {
                let mu = at(&depth);
                // (λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = Σ nᵢ dᵢ (λᵢ + μᵢ + 2)
                let denom: i64 = (0..r)
                    .map(|i| depth[i] * self.sym[i] * (lambda[i] + mu[i] + 2))
                    .sum();
                if denom == 0 {
                    continue;
                }
                let mut num: i64 = 0;
                for alpha in &self.positive_roots {
                    let mut higher = depth.clone();
                    loop {
                        for (h, a) in higher.iter_mut().zip(alpha) {
                            *h -= a;
                        }
                        if higher.iter().any(|&h| h < 0) {
                            break;
                        }
                        if let Some(&m) = mult.get(&higher) {
                            let nu = at(&higher);
                            num += m as i64 * self.pair(&nu, alpha);
                        }
                    }
                }
                let num = 2 * num;
                assert_eq!(num % denom, 0, "Freudenthal quotient must be integral");
                let m = num / denom;
                if m > 0 {
                    mult.insert(depth.clone(), m as u64);
                    next.push(depth);
                }
            }
            level = next;
        }
        mult.into_iter().map(|(d, m)| (Weight(at(&d)), m)).collect()
    }

    /// Moves `w + ρ` into the dominant chamber. Returns the resulting highest
    /// weight and the sign of the Weyl element, or `None` on a wall.
    fn dominate(&self, w: &Weight) -> Option<(IrrLabel, i64)> {
        let mut v = Weight(w.0.iter().map(|x| x + 1).collect());
        let mut sign = 1;
        while let Some(i) = v.0.iter().position(|&x| x < 0) {
            v = self.reflect(i, &v);
            sign = -sign;
        }
        if v.0.contains(&0) {
            return None;
        }
        Some((
            IrrLabel {
                highest_weight: Weight(v.0.iter().map(|x| x - 1).collect()),
            },
            sign,
        ))
    }

    /// Klimyk: Σ over weights ν of `small` of sign·[dominant(ν + μ + ρ) − ρ].
    fn klimyk(
        &self,
        weights: &WeightSystem,
        shift: &Weight,
        acc: &mut BTreeMap<IrrLabel, i64>,
    ) {
        for (nu, &m) in weights {
            if let Some((label, sign)) = self.dominate(&nu.add(shift)) {
                *acc.entry(label).or_insert(0) += sign * m as i64;
            }
        }
    }

    pub fn tensor_decompose(&self, a: &IrrLabel, b: &IrrLabel) -> Result<ModuleDesc, RepError> {
        self.check(&a.highest_weight)?;
        self.check(&b.highest_weight)?;
        let (small, big) = if self.weyl_dim(a)? <= self.weyl_dim(b)? {
            (a, b)
        } else {
            (b, a)
        };
        let mut acc = BTreeMap::new();
        self.klimyk(&*self.weight_multiplicities(small)?, &big.highest_weight, &mut acc);
        Ok(into_module(acc))
    }

    pub fn tensor_modules(&self, a: &ModuleDesc, b: &ModuleDesc) -> Result<ModuleDesc, RepError> {
        let mut out = ModuleDesc::new();
        for (x, m) in a.iter() {
            for (y, k) in b.iter() {
                for (z, c) in self.tensor_decompose(x, y)?.iter() {
                    out.add(z.clone(), m * k * c);
                }
            }
        }
        Ok(out)
    }

    /// Decomposes a Weyl-invariant character into irreducibles.
    pub fn decompose_character(&self, chi: &BTreeMap<Weight, i64>) -> BTreeMap<IrrLabel, i64> {
        let mut acc = BTreeMap::new();
        for (nu, &m) in chi {
            if let Some((label, sign)) = self.dominate(nu) {
                *acc.entry(label).or_insert(0) += sign * m;
            }
        }
        acc.retain(|_, m| *m != 0);
        acc
    }

    /// `(∧²I, S²I)`, from `χ∧² = (χ² − ψ²χ)/2` and `χS² = (χ² + ψ²χ)/2` where
    /// `ψ²` doubles every weight.
    pub fn alt_sym_square(&self, i: &ModuleDesc) -> Result<(ModuleDesc, ModuleDesc), RepError> {
        let square = self.tensor_modules(i, i)?;
        let mut adams: BTreeMap<Weight, i64> = BTreeMap::new();
        for (label, k) in i.iter() {
            for (w, &m) in self.weight_multiplicities(label)?.iter() {
                let doubled = Weight(w.0.iter().map(|x| 2 * x).collect());
                *adams.entry(doubled).or_insert(0) += (k * m) as i64;
            }
        }
        let psi = self.decompose_character(&adams);
        let mut alt = BTreeMap::new();
        let mut sym = BTreeMap::new();
        let labels: std::collections::BTreeSet<&IrrLabel> =
            square.labels().chain(psi.keys()).collect();
        for label in labels {
            let t = square.multiplicity(label) as i64;
            let p = psi.get(label).copied().unwrap_or(0);
            assert!((t - p) % 2 == 0, "tensor square and Adams term differ in parity");
            alt.insert(label.clone(), (t - p) / 2);
            sym.insert(label.clone(), (t + p) / 2);
        }
        Ok((into_module(alt), into_module(sym)))
    }
}

fn into_module(acc: BTreeMap<IrrLabel, i64>) -> ModuleDesc {
    acc.into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(l, m)| {
            assert!(m > 0, "negative multiplicity {m} for {l}");
            (l, m as u64)
        })
        .collect()
}

/// Positive integers `d` with `A[i][j]·d[j]` symmetric, scaled to be coprime.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    use num_integer::Integer;
    use num_rational::Ratio;
    let n = a.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                // A[i][j] d_j = A[j][i] d_i
                d[j] = Some(d[i].unwrap() * Ratio::new(a[j][i], a[i][j]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let l = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / g).collect()
}

/// Positive roots by α-string closure, in simple-root coordinates.
fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // p = how far β − kαᵢ stays a root
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                // ⟨β, αᵢ^∨⟩ = Σ_j β_j A[j][i]
                let pairing: i64 = (0..r).map(|j| beta[j] * a[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(s: &str) -> CartanDatum {
        s.parse().unwrap()
    }

    fn irr(c: &[i64]) -> IrrLabel {
        IrrLabel::new(c.to_vec()).unwrap()
    }

    fn module(pairs: &[(&[i64], u64)]) -> ModuleDesc {
        pairs.iter().map(|(c, m)| (irr(c), *m)).collect()
    }

    #[test]
    fn parses_types() {
        assert_eq!(datum("A1+A1").rank(), 2);
        assert_eq!(datum("b2").to_string(), "B2");
        for bad in ["A0", "B1", "D3", "E9", "F3", "G3", "X2", ""] {
            assert!(bad.parse::<CartanDatum>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(datum("B2").cartan_matrix(), [vec![2, -2], vec![-1, 2]]);
        assert_eq!(datum("C2").cartan_matrix(), [vec![2, -1], vec![-2, 2]]);
        assert_eq!(datum("G2").cartan_matrix(), [vec![2, -1], vec![-3, 2]]);
        for t in ["A3", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "A2+B3"] {
            let d = datum(t);
            let a = d.cartan_matrix();
            for i in 0..d.rank() {
                assert_eq!(a[i][i], 2);
                for j in 0..d.rank() {
                    if i != j {
                        assert!(a[i][j] <= 0);
                        assert_eq!(a[i][j] == 0, a[j][i] == 0);
                        assert_eq!(a[i][j] * d.sym[j], a[j][i] * d.sym[i], "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A3", 6),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1+A1", 2),
        ] {
            assert_eq!(datum(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = datum("A1");
        for n in 0..10 {
            assert_eq!(a1.weyl_dim(&irr(&[n])).unwrap(), n as u64 + 1);
        }
        assert_eq!(datum("A2").weyl_dim(&irr(&[1, 0])).unwrap(), 3);
        assert_eq!(datum("A2").weyl_dim(&irr(&[1, 1])).unwrap(), 8);
        assert_eq!(datum("B2").weyl_dim(&irr(&[0, 1])).unwrap(), 4);
        assert_eq!(datum("B2").weyl_dim(&irr(&[1, 0])).unwrap(), 5);
        assert_eq!(datum("G2").weyl_dim(&irr(&[1, 0])).unwrap(), 7);
        assert_eq!(datum("G2").weyl_dim(&irr(&[0, 1])).unwrap(), 14);
        assert_eq!(datum("F4").weyl_dim(&irr(&[0, 0, 0, 1])).unwrap(), 26);
        assert_eq!(datum("E6").weyl_dim(&irr(&[1, 0, 0, 0, 0, 0])).unwrap(), 27);
        assert_eq!(datum("E7").weyl_dim(&irr(&[0, 0, 0, 0, 0, 0, 1])).unwrap(), 56);
        assert_eq!(datum("E8").weyl_dim(&irr(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert_eq!(datum("A1+A2").weyl_dim(&irr(&[1, 1, 0])).unwrap(), 6);
        assert!(matches!(
            a1.weyl_dim(&IrrLabel { highest_weight: Weight(vec![-1]) }),
            Err(RepError::NonDominant(_))
        ));
        assert!(matches!(
            a1.weyl_dim(&irr(&[1, 0])),
            Err(RepError::WrongLength { .. })
        ));
    }

    #[test]
    fn weight_systems() {
        let a1 = datum("A1");
        let ws = a1.weight_multiplicities(&irr(&[2])).unwrap();
        let expected: WeightSystem = [(Weight(vec![2]), 1), (Weight(vec![0]), 1), (Weight(vec![-2]), 1)]
            .into_iter()
            .collect();
        assert_eq!(*ws, expected);
        let a2 = datum("A2");
        let ws = a2.weight_multiplicities(&irr(&[1, 1])).unwrap();
        assert_eq!(ws[&Weight(vec![0, 0])], 2);
        assert_eq!(ws.values().sum::<u64>(), 8);
        let zero = a2.weight_multiplicities(&IrrLabel::trivial(2)).unwrap();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn freudenthal_totals_match_weyl() {
        for (t, w) in [
            ("G2", vec![1, 0]),
            ("G2", vec![0, 1]),
            ("G2", vec![1, 1]),
            ("B3", vec![1, 0, 1]),
            ("C3", vec![0, 1, 0]),
            ("D4", vec![0, 1, 0, 0]),
            ("F4", vec![0, 0, 0, 1]),
            ("F4", vec![1, 0, 0, 0]),
            ("E6", vec![1, 0, 0, 0, 0, 0]),
            ("E8", vec![0, 0, 0, 0, 0, 0, 0, 1]),
        ] {
            let d = datum(t);
            let l = irr(&w);
            let total: u64 = d.weight_multiplicities(&l).unwrap().values().sum();
            assert_eq!(total, d.weyl_dim(&l).unwrap(), "{t} {w:?}");
        }
        // adjoint: zero weight has multiplicity = rank
        let e8 = datum("E8");
        let ws = e8.weight_multiplicities(&irr(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(ws[&Weight::zero(8)], 8);
    }

    #[test]
    fn tensor_examples() {
        let a1 = datum("A1");
        assert_eq!(
            a1.tensor_decompose(&irr(&[1]), &irr(&[1])).unwrap(),
            module(&[(&[2], 1), (&[0], 1)])
        );
        for n in 1..12 {
            assert_eq!(
                a1.tensor_decompose(&irr(&[1]), &irr(&[n])).unwrap(),
                module(&[(&[n + 1], 1), (&[n - 1], 1)])
            );
        }
        assert_eq!(
            a1.tensor_decompose(&irr(&[2]), &irr(&[4])).unwrap(),
            module(&[(&[6], 1), (&[4], 1), (&[2], 1)])
        );
        let a2 = datum("A2");
        assert_eq!(
            a2.tensor_decompose(&irr(&[1, 0]), &irr(&[0, 1])).unwrap(),
            module(&[(&[1, 1], 1), (&[0, 0], 1)])
        );
        assert_eq!(
            a2.tensor_decompose(&irr(&[1, 1]), &irr(&[1, 1])).unwrap(),
            module(&[
                (&[2, 2], 1),
                (&[3, 0], 1),
                (&[0, 3], 1),
                (&[1, 1], 2),
                (&[0, 0], 1)
            ])
        );
        assert_eq!(
            a2.tensor_decompose(&irr(&[2, 1]), &IrrLabel::trivial(2)).unwrap(),
            module(&[(&[2, 1], 1)])
        );
    }

    #[test]
    fn alt_sym_examples() {
        let a1 = datum("A1");
        let (alt, sym) = a1.alt_sym_square(&module(&[(&[1], 1)])).unwrap();
        assert_eq!(alt, module(&[(&[0], 1)]));
        assert_eq!(sym, module(&[(&[2], 1)]));
        let (alt, sym) = a1.alt_sym_square(&module(&[(&[2], 1)])).unwrap();
        assert_eq!(alt, module(&[(&[2], 1)]));
        assert_eq!(sym, module(&[(&[4], 1), (&[0], 1)]));
        let (alt, sym) = a1.alt_sym_square(&module(&[(&[0], 1)])).unwrap();
        assert!(alt.is_empty());
        assert_eq!(sym, module(&[(&[0], 1)]));
        let (alt, sym) = a1.alt_sym_square(&module(&[(&[0], 2)])).unwrap();
        assert_eq!(alt, module(&[(&[0], 1)]));
        assert_eq!(sym, module(&[(&[0], 3)]));
    }

    #[test]
    fn module_desc_text() {
        let m: ModuleDesc = "hw (1) + (0) + 2*(3)".parse().unwrap();
        assert_eq!(m.length(), 4);
        assert_eq!(m.to_string(), "(0) + (1) + 2*(3)");
        assert!("(1)+(-1)".parse::<ModuleDesc>().is_err());
        assert_eq!("1,0".parse::<Weight>().unwrap(), Weight(vec![1, 0]));
        assert_eq!("(1;0)".parse::<Weight>().unwrap(), Weight(vec![1, 0]));
    }

    #[test]
    fn concurrent_lookups_agree() {
        let d = datum("B2");
        let label = irr(&[2, 3]);
        let results: Vec<WeightSystem> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|_| s.spawn(|| (*d.weight_multiplicities(&label).unwrap()).clone()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    fn dominant(rank: usize, max: i64) -> impl Strategy<Value = IrrLabel> {
        proptest::collection::vec(0..=max, rank).prop_map(|c| IrrLabel::new(c).unwrap())
    }

    fn typed_pair() -> impl Strategy<Value = (String, IrrLabel, IrrLabel)> {
        prop_oneof![Just("A1"), Just("A2"), Just("B2"), Just("G2"), Just("A1+A1")].prop_flat_map(
            |t| {
                let r = datum(t).rank();
                let max = if t == "G2" { 3 } else { 6 };
                (Just(t.to_string()), dominant(r, max), dominant(r, max))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tensor_dimension_bookkeeping((t, a, b) in typed_pair()) {
            let d = datum(&t);
            let prod = d.tensor_decompose(&a, &b).unwrap();
            prop_assert_eq!(d.module_dim(&prod).unwrap(), d.weyl_dim(&a).unwrap() * d.weyl_dim(&b).unwrap());
        }

        #[test]
        fn tensor_commutes((t, a, b) in typed_pair()) {
            let d = datum(&t);
            prop_assert_eq!(d.tensor_decompose(&a, &b).unwrap(), d.tensor_decompose(&b, &a).unwrap());
        }

        #[test]
        fn weight_system_is_weyl_invariant((t, a, _b) in typed_pair()) {
            let d = datum(&t);
            let ws = d.weight_multiplicities(&a).unwrap();
            for i in 0..d.rank() {
                for (w, m) in ws.iter() {
                    prop_assert_eq!(ws.get(&d.reflect(i, w)), Some(m));
                }
            }
        }

        #[test]
        fn alt_sym_reconstruct((t, a, b) in typed_pair()) {
            let d = datum(&t);
            let small = |l: &IrrLabel| IrrLabel::new(l.coords().iter().map(|c| c % 3).collect()).unwrap();
            let i = ModuleDesc::irreducible(small(&a)).union(&ModuleDesc::irreducible(small(&b)));
            let (alt, sym) = d.alt_sym_square(&i).unwrap();
            prop_assert_eq!(alt.union(&sym), d.tensor_modules(&i, &i).unwrap());
            let n = d.module_dim(&i).unwrap();
            prop_assert_eq!(d.module_dim(&alt).unwrap(), n * (n - 1) / 2);
            prop_assert_eq!(d.module_dim(&sym).unwrap(), n * (n + 1) / 2);
        }
    }
}
