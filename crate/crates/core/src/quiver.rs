//! Finite windows of the quiver `K_I` and the wildness detectors that read
//! off tensor-product arithmetic.
//!
//! Vertices are irreducible modules `M` of the semisimple part; there are as
//! many arrows `M → N` as copies of `N` in `I ⊗ M`. Relations of degree two at
//! `M_i` land in the constituents of `(∧²I) ⊗ M_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::rep_theory::{CartanDatum, IrrLabel, ModuleDesc, RepError, Weight};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuiverWindow {
    pub vertices: Vec<IrrLabel>,
    /// `(source, target) → multiplicity`
    pub arrows: BTreeMap<(usize, usize), u64>,
    /// `target → [(source, relation count)]`
    pub relations: BTreeMap<usize, Vec<(usize, u64)>>,
    /// Vertices whose outgoing arrows may leave the window.
    pub boundary: BTreeSet<usize>,
}

impl QuiverWindow {
    pub fn index_of(&self, label: &IrrLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Relations starting at `source`, as `(target, count)`.
    pub fn relations_from(&self, source: usize) -> Vec<(usize, u64)> {
        self.relations
            .iter()
            .flat_map(|(&t, list)| {
                list.iter()
                    .filter(move |(s, _)| *s == source)
                    .map(move |&(_, c)| (t, c))
            })
            .collect()
    }
}

/// Breadth-first window of `K_I` around `seeds`, `depth` layers deep.
pub fn build_quiver(
    d: &CartanDatum,
    i: &ModuleDesc,
    seeds: &[IrrLabel],
    depth: usize,
) -> Result<QuiverWindow, RepError> {
    for label in i.labels().chain(seeds) {
        d.check(&label.highest_weight)?;
    }
    let mut tensors: HashMap<IrrLabel, ModuleDesc> = HashMap::new();
    let mut tensor = |m: &IrrLabel| -> Result<ModuleDesc, RepError> {
        if let Some(t) = tensors.get(m) {
            return Ok(t.clone());
        }
        let t = d.tensor_modules(i, &ModuleDesc::irreducible(m.clone()))?;
        tensors.insert(m.clone(), t.clone());
        Ok(t)
    };

    let mut q = QuiverWindow::default();
    let mut index: HashMap<IrrLabel, usize> = HashMap::new();
    let mut layer: Vec<IrrLabel> = seeds.to_vec();
    layer.sort();
    layer.dedup();
    for v in &layer {
        index.insert(v.clone(), q.vertices.len());
        q.vertices.push(v.clone());
    }
    for _ in 0..depth {
        let mut fresh = BTreeSet::new();
        for m in &layer {
            for (n, _) in tensor(m)?.iter() {
                if !index.contains_key(n) {
                    fresh.insert(n.clone());
                }
            }
        }
        layer = fresh.into_iter().collect();
        for v in &layer {
            index.insert(v.clone(), q.vertices.len());
            q.vertices.push(v.clone());
        }
    }
    for v in &layer {
        q.boundary.insert(index[v]);
    }

    let (alt, _) = d.alt_sym_square(i)?;
    let interior: Vec<usize> = (0..q.vertices.len())
        .filter(|k| !q.boundary.contains(k))
        .collect();
    for &src in &interior {
        let m = q.vertices[src].clone();
        let rel = d.tensor_modules(&alt, &ModuleDesc::irreducible(m))?;
        for (target, count) in rel.iter() {
            let t = match index.get(target) {
                Some(&t) => t,
                None => {
                    // two steps out from the last interior layer
                    let t = q.vertices.len();
                    index.insert(target.clone(), t);
                    q.vertices.push(target.clone());
                    q.boundary.insert(t);
                    t
                }
            };
            q.relations.entry(t).or_default().push((src, count));
        }
    }
    for src in 0..q.vertices.len() {
        let m = q.vertices[src].clone();
        for (n, mult) in tensor(&m)?.iter() {
            if let Some(&t) = index.get(n) {
                q.arrows.insert((src, t), mult);
            } else {
                debug_assert!(q.boundary.contains(&src));
            }
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessRule {
    FiveComponents,
    MultiplicityThree,
    TwoPlusOne,
    LargeModule,
    BigRadicalDim,
    DecomposableTwoDim,
}

impl WitnessRule {
    pub fn id(self) -> &'static str {
        match self {
            WitnessRule::FiveComponents => "five_components",
            WitnessRule::MultiplicityThree => "multiplicity_three",
            WitnessRule::TwoPlusOne => "two_plus_one",
            WitnessRule::LargeModule => "large_module",
            WitnessRule::BigRadicalDim => "big_radical_dim",
            WitnessRule::DecomposableTwoDim => "decomposable_two_dim",
        }
    }
}

impl fmt::Display for WitnessRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildWitness {
    pub rule: WitnessRule,
    pub at_vertex: IrrLabel,
    pub detail: String,
    /// For [`WitnessRule::LargeModule`]: the shared constituent and the
    /// partner vertex `N ≠ M` whose `I ⊗ N` also contains it.
    pub partner: Option<(IrrLabel, IrrLabel)>,
}

impl WildWitness {
    /// Recomputes the arithmetic behind the cited rule.
    pub fn verify(&self, d: &CartanDatum, i: &ModuleDesc) -> Result<bool, RepError> {
        let dim = d.module_dim(i)?;
        let t = || d.tensor_modules(i, &ModuleDesc::irreducible(self.at_vertex.clone()));
        Ok(match self.rule {
            WitnessRule::BigRadicalDim => dim >= 3,
            WitnessRule::DecomposableTwoDim => dim == 2 && i.length() == 2,
            WitnessRule::FiveComponents => t()?.distinct() >= 5,
            WitnessRule::MultiplicityThree => t()?.iter().any(|(_, m)| m >= 3),
            WitnessRule::TwoPlusOne => {
                let t = t()?;
                t.iter().any(|(_, m)| m == 2) && t.distinct() >= 2
            }
            WitnessRule::LargeModule => match &self.partner {
                Some((shared, n)) => {
                    let t = t()?;
                    let other = d.tensor_modules(i, &ModuleDesc::irreducible(n.clone()))?;
                    t.length() >= 3
                        && *n != self.at_vertex
                        && t.multiplicity(shared) > 0
                        && other.multiplicity(shared) > 0
                }
                None => false,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectorConfig {
    /// Report `dim I ≥ 3` immediately. Turning this off exposes the
    /// vertex-level rules on large modules.
    pub big_radical_dim: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            big_radical_dim: true,
        }
    }
}

pub const DEFAULT_WINDOW: i64 = 8;

pub fn detect_wild(
    d: &CartanDatum,
    i: &ModuleDesc,
    window: i64,
) -> Result<Option<WildWitness>, RepError> {
    detect_wild_with(d, i, window, DetectorConfig::default())
}

/// Scans dominant `M` with every coordinate at most `window`, shell by shell
/// (largest coordinate first, then lexicographically), so a witness found
/// for some window is found again for every larger one.
pub fn detect_wild_with(
    d: &CartanDatum,
    i: &ModuleDesc,
    window: i64,
    config: DetectorConfig,
) -> Result<Option<WildWitness>, RepError> {
    for label in i.labels() {
        d.check(&label.highest_weight)?;
    }
    let dim = d.module_dim(i)?;
    let trivial = IrrLabel::trivial(d.rank());
    if config.big_radical_dim && dim >= 3 {
        return Ok(Some(WildWitness {
            rule: WitnessRule::BigRadicalDim,
            at_vertex: trivial,
            detail: format!("dim I = {dim} ≥ 3"),
            partner: None,
        }));
    }
    if dim == 2 && i.length() == 2 {
        return Ok(Some(WildWitness {
            rule: WitnessRule::DecomposableTwoDim,
            at_vertex: trivial,
            detail: format!("I = {i} splits into two one-dimensional summands"),
            partner: None,
        }));
    }
    let weights_of_i: BTreeSet<Weight> = i
        .labels()
        .map(|l| d.weight_multiplicities(l).map(|ws| ws.keys().cloned().collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    for shell in 0..=window.max(0) {
        for m in shell_weights(d.rank(), shell) {
            let t = d.tensor_modules(i, &ModuleDesc::irreducible(m.clone()))?;
            if let Some(w) = sb_pattern(&m, &t) {
                return Ok(Some(w));
            }
            if t.length() < 3 {
                continue;
            }
            for (shared, _) in t.iter() {
                if let Some(n) = partner(d, i, &weights_of_i, &m, shared)? {
                    return Ok(Some(WildWitness {
                        rule: WitnessRule::LargeModule,
                        at_vertex: m.clone(),
                        detail: format!(
                            "I⊗{m} = {t}; {shared} also occurs in I⊗{n}"
                        ),
                        partner: Some((shared.clone(), n)),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn sb_pattern(m: &IrrLabel, t: &ModuleDesc) -> Option<WildWitness> {
    let witness = |rule| WildWitness {
        rule,
        at_vertex: m.clone(),
        detail: format!("I⊗{m} = {t}"),
        partner: None,
    };
    if t.distinct() >= 5 {
        return Some(witness(WitnessRule::FiveComponents));
    }
    if t.iter().any(|(_, k)| k >= 3) {
        return Some(witness(WitnessRule::MultiplicityThree));
    }
    if t.iter().any(|(_, k)| k == 2) && t.distinct() >= 2 {
        return Some(witness(WitnessRule::TwoPlusOne));
    }
    None
}

/// Smallest `N ≠ M` with `shared ⊂ I ⊗ N`. Any such `N` has highest weight
/// `shared − ν` for a weight `ν` of `I`.
fn partner(
    d: &CartanDatum,
    i: &ModuleDesc,
    weights_of_i: &BTreeSet<Weight>,
    m: &IrrLabel,
    shared: &IrrLabel,
) -> Result<Option<IrrLabel>, RepError> {
    let candidates: BTreeSet<IrrLabel> = weights_of_i
        .iter()
        .filter_map(|nu| {
            let c: Vec<i64> = shared.coords().iter().zip(&nu.0).map(|(a, b)| a - b).collect();
            IrrLabel::new(c).ok()
        })
        .filter(|n| n != m)
        .collect();
    for n in candidates {
        if d.tensor_modules(i, &ModuleDesc::irreducible(n.clone()))?.multiplicity(shared) > 0 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Dominant weights whose largest coordinate is exactly `shell`, in
/// lexicographic order.
fn shell_weights(rank: usize, shell: i64) -> Vec<IrrLabel> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        if cur.iter().copied().max().unwrap_or(0) == shell {
            out.push(IrrLabel::new(cur.clone()).expect("nonnegative"));
        }
        // odometer over [0, shell]^rank, last coordinate fastest
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < shell {
                cur[k] += 1;
                for c in &mut cur[k + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// Graphviz rendering with stable ordering.
pub fn emit_dot(q: &QuiverWindow) -> String {
    let mut out = String::from("digraph K_I {\n");
    for (k, v) in q.vertices.iter().enumerate() {
        let mut attrs = vec![format!("label=\"{v}\"")];
        if let Some(list) = q.relations.get(&k) {
            let parts: Vec<String> = list
                .iter()
                .map(|&(s, c)| format!("{}:{c}", q.vertices[s]))
                .collect();
            attrs.push(format!("xlabel=\"rel {}\"", parts.join(" ")));
        }
        if q.boundary.contains(&k) {
            attrs.push("style=dashed".into());
        }
        let _ = writeln!(out, "  n{k} [{}];", attrs.join(", "));
    }
    for (&(s, t), m) in &q.arrows {
        let _ = writeln!(out, "  n{s} -> n{t} [label=\"{m}\"];");
    }
    out.push_str("}\n");
    out
}
