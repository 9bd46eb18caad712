use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lie_tame::classifier::{classify, decide_acting_part, Verdict, WildRule};
use lie_tame::construct::{build_named, so3, Recipe};
use lie_tame::levi::levi_subalgebra;
use lie_tame::lie::LieAlgebra;
use lie_tame::linalg::{ratio, Matrix};
use lie_tame::quiver::{build_quiver, detect_wild, detect_wild_with, emit_dot, DetectorConfig, WitnessRule};
use lie_tame::rep_theory::{CartanDatum, IrrLabel, ModuleDesc};

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn named(text: &str) -> LieAlgebra {
    build_named(&text.parse::<Recipe>().expect("recipe parses")).expect("recipe builds")
}

fn tame(class: u8) -> Verdict {
    Verdict::Tame { class }
}

fn corpus() -> Vec<(&'static str, Result<u8, WildRule>)> {
    vec![
        ("sl(2)", Ok(1)),
        ("sl(3)", Ok(1)),
        ("direct_sum(sl(2), sl(2))", Ok(1)),
        ("abelian(1)", Ok(2)),
        ("direct_sum(sl(2), abelian(1))", Ok(3)),
        ("direct_sum(sl(3), abelian(1))", Ok(3)),
        ("semidirect(sl(2), (1))", Ok(4)),
        ("direct_sum(sl(3), semidirect(sl(2), (1)))", Ok(5)),
        ("twodim_nonabelian", Err(WildRule::Solvable)),
        ("abelian(2)", Err(WildRule::Solvable)),
        ("heisenberg", Err(WildRule::Solvable)),
        ("semidirect(sl(2), (2))", Err(WildRule::BigRadicalDim)),
        ("semidirect(sl(2), (0)+(0))", Err(WildRule::DecomposableTwoDim)),
        ("scale_action(sl(2), (1))", Err(WildRule::OneDimensionalQuotient)),
        ("heisenberg_semidirect(sl(2), (1))", Err(WildRule::NonabelianRadical)),
    ]
}

fn matches(v: &Verdict, expected: &Result<u8, WildRule>) -> bool {
    match (v, expected) {
        (Verdict::Tame { class }, Ok(c)) => class == c,
        (Verdict::Wild { rule, controlled, .. }, Err(r)) => rule == r && *controlled,
        _ => false,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let corpus = corpus();
    for (text, expected) in &corpus {
        let v = classify(&named(text));
        if !matches(&v, expected) {
            bad.push(format!("{text}: got {v}, expected {expected:?}"));
        }
    }
    let elapsed = start.elapsed();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("corpus took {elapsed:?}"));
    }
    Ok(format!("{} algebras in {elapsed:.2?}", corpus.len()))
}

fn random_invertible(rng: &mut StdRng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<_>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.6) {
                            ratio(0, 1)
                        } else {
                            ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
                        }
                    })
                    .collect()
            })
            .collect();
        let p = Matrix::from_rows(rows, n);
        if p.rank() == n {
            return p;
        }
    }
}

fn base_changed(rng: &mut StdRng) -> Vec<(String, LieAlgebra, Result<u8, WildRule>)> {
    let mut out = Vec::new();
    for (text, expected) in corpus() {
        let l = named(text);
        for k in 0..20 {
            let p = random_invertible(rng, l.dim());
            out.push((format!("{text} #{k}"), l.change_basis(&p).unwrap(), expected));
        }
    }
    out
}

fn criterion_2(variants: &[(String, LieAlgebra, Result<u8, WildRule>)]) -> Outcome {
    let bad: Vec<String> = variants
        .iter()
        .filter_map(|(name, l, expected)| {
            let v = classify(l);
            (!matches(&v, expected)).then(|| format!("{name}: {v}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} base-changed algebras", variants.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn levi_ok(l: &LieAlgebra) -> Result<(), String> {
    let s = levi_subalgebra(l);
    let r = l.radical();
    if !s.intersect(&r).map_err(|e| e.to_string())?.is_zero() {
        return Err("S ∩ R ≠ 0".into());
    }
    if !s.sum(&r).map_err(|e| e.to_string())?.is_full() {
        return Err("S + R ≠ L".into());
    }
    if !l.is_subalgebra(&s).map_err(|e| e.to_string())? {
        return Err("S not closed under the bracket".into());
    }
    let k = l.restrict(&s).map_err(|e| e.to_string())?.killing_form();
    if k.rank() != s.dim() {
        return Err("Killing form of S degenerate".into());
    }
    Ok(())
}

fn criterion_3(variants: &[(String, LieAlgebra, Result<u8, WildRule>)]) -> Outcome {
    let originals: Vec<(String, LieAlgebra)> = corpus()
        .into_iter()
        .map(|(t, _)| (t.to_string(), named(t)))
        .collect();
    let mut count = 0;
    let mut bad = Vec::new();
    let all = originals
        .iter()
        .map(|(n, l)| (n, l))
        .chain(variants.iter().map(|(n, l, _)| (n, l)));
    for (name, l) in all {
        count += 1;
        if let Err(e) = levi_ok(l) {
            bad.push(format!("{name}: {e}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} algebras"))
    } else {
        Err(bad.join("; "))
    }
}

/// Weight multiset of an irreducible module, computed without any
/// weight-multiplicity machinery: strings for A1, Gelfand–Tsetlin patterns
/// for A2.
fn oracle_character(label: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let mut chi = BTreeMap::new();
    match label {
        [n] => {
            for k in 0..=*n {
                *chi.entry(vec![n - 2 * k]).or_insert(0) += 1;
            }
        }
        [a, b] => {
            let (m1, m2, m3) = (a + b, *b, 0);
            for x1 in m2..=m1 {
                for x2 in m3..=m2 {
                    for y in x2..=x1 {
                        let w = [y, x1 + x2 - y, m1 + m2 + m3 - x1 - x2];
                        *chi.entry(vec![w[0] - w[1], w[1] - w[2]]).or_insert(0) += 1;
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    chi
}

fn oracle_tensor(a: &[i64], b: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let (ca, cb) = (oracle_character(a), oracle_character(b));
    let mut chi: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (u, m) in &ca {
        for (v, n) in &cb {
            let w: Vec<i64> = u.iter().zip(v).map(|(x, y)| x + y).collect();
            *chi.entry(w).or_insert(0) += m * n;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        chi.retain(|_, m| *m != 0);
        let top = chi
            .iter()
            .filter(|(w, _)| w.iter().all(|&x| x >= 0))
            .max_by_key(|(w, _)| w.iter().sum::<i64>())
            .map(|(w, m)| (w.clone(), *m));
        let Some((w, m)) = top else { break };
        assert!(m > 0, "peeling went negative at {w:?}");
        for (u, k) in oracle_character(&w) {
            *chi.entry(u).or_insert(0) -= m * k;
        }
        *out.entry(w).or_insert(0) += m;
    }
    assert!(chi.is_empty(), "character left over: {chi:?}");
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut run = |d: &CartanDatum, labels: &[Vec<i64>]| {
        for a in labels {
            for b in labels {
                let got = d
                    .tensor_decompose(&IrrLabel::new(a.clone()).unwrap(), &IrrLabel::new(b.clone()).unwrap())
                    .unwrap();
                let got: BTreeMap<Vec<i64>, i64> = got
                    .iter()
                    .map(|(l, m)| (l.coords().to_vec(), m as i64))
                    .collect();
                checked += 1;
                if got != oracle_tensor(a, b) {
                    bad.push(format!("{d}: {a:?} ⊗ {b:?}"));
                }
            }
        }
    };
    let a1: Vec<Vec<i64>> = (0..=20).map(|n| vec![n]).collect();
    run(&"A1".parse().unwrap(), &a1);
    let a2: Vec<Vec<i64>> = (0..=3).flat_map(|a| (0..=3).map(move |b| vec![a, b])).collect();
    run(&"A2".parse().unwrap(), &a2);
    let elapsed = start.elapsed();
    if !bad.is_empty() {
        return Err(format!("{} mismatches: {}", bad.len(), bad.join("; ")));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("{checked} products took {elapsed:?}"));
    }
    Ok(format!("{checked} products in {elapsed:.2?}"))
}

const GOLDEN: &str = include_str!("golden/chain_a1_depth10.dot");

fn criterion_5() -> Outcome {
    let d: CartanDatum = "A1".parse().unwrap();
    let i: ModuleDesc = "(1)".parse().unwrap();
    let q = build_quiver(&d, &i, &[IrrLabel::trivial(1)], 10).map_err(|e| e.to_string())?;
    let expected: Vec<IrrLabel> = (0..=10).map(|n| IrrLabel::new(vec![n]).unwrap()).collect();
    if q.vertices != expected {
        return Err(format!("vertices {:?}", q.vertices));
    }
    let mut arrows = BTreeMap::new();
    for n in 0..10 {
        arrows.insert((n, n + 1), 1);
        arrows.insert((n + 1, n), 1);
    }
    if q.arrows != arrows {
        return Err(format!("arrows {:?}", q.arrows));
    }
    if q.boundary.iter().copied().collect::<Vec<_>>() != vec![10] {
        return Err(format!("boundary {:?}", q.boundary));
    }
    for v in 0..=10 {
        let rel = q.relations.get(&v).cloned().unwrap_or_default();
        let want = if v < 10 { vec![(v, 1)] } else { vec![] };
        if rel != want {
            return Err(format!("relations at ({v}): {rel:?}"));
        }
    }
    let dot = emit_dot(&q);
    if dot != emit_dot(&build_quiver(&d, &i, &[IrrLabel::trivial(1)], 10).unwrap()) {
        return Err("DOT differs between runs".into());
    }
    if dot != GOLDEN {
        return Err("DOT differs from golden file".into());
    }
    Ok("11 vertices, 20 arrows, 10 relations, golden DOT matches".into())
}

fn criterion_6() -> Outcome {
    let a1: CartanDatum = "A1".parse().unwrap();
    let a2: CartanDatum = "A2".parse().unwrap();
    let mut checked = 0;
    let mut modules: Vec<(CartanDatum, ModuleDesc)> = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let text = format!("({a})+({b})+({c})");
                modules.push((a1.clone(), text.parse().unwrap()));
            }
        }
        modules.push((a1.clone(), format!("({})", a + 2).parse().unwrap()));
    }
    for w in ["(1,0)", "(0,1)", "(1,1)", "(0,0)+(0,0)+(0,0)", "(1,0)+(0,0)"] {
        modules.push((a2.clone(), w.parse().unwrap()));
    }
    for (d, m) in &modules {
        let dim = d.module_dim(m).unwrap();
        if dim < 3 {
            continue;
        }
        checked += 1;
        match detect_wild(d, m, 8).map_err(|e| e.to_string())? {
            Some(w) if w.rule == WitnessRule::BigRadicalDim => {}
            other => return Err(format!("{d} {m}: {other:?}")),
        }
    }
    let zero_zero: ModuleDesc = "(0)+(0)".parse().unwrap();
    match detect_wild(&a1, &zero_zero, 8).map_err(|e| e.to_string())? {
        Some(w) if w.rule == WitnessRule::DecomposableTwoDim => {}
        other => return Err(format!("(0)+(0): {other:?}")),
    }
    let natural: ModuleDesc = "(1)".parse().unwrap();
    if let Some(w) = detect_wild(&a1, &natural, 8).map_err(|e| e.to_string())? {
        return Err(format!("(1) fired {w:?}"));
    }
    let adjoint: ModuleDesc = "(2)".parse().unwrap();
    let config = DetectorConfig {
        big_radical_dim: false,
    };
    match detect_wild_with(&a1, &adjoint, 8, config).map_err(|e| e.to_string())? {
        Some(w) if w.rule == WitnessRule::LargeModule && w.verify(&a1, &adjoint).unwrap() => {}
        other => return Err(format!("(2) without dimension rule: {other:?}")),
    }
    Ok(format!("{checked} modules of dim ≥ 3, (0)+(0), (1) silent, (2) large module"))
}

fn random_label(rng: &mut StdRng, d: &CartanDatum, max: i64) -> IrrLabel {
    IrrLabel::new((0..d.rank()).map(|_| rng.gen_range(0..=max)).collect()).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let data: Vec<(CartanDatum, i64)> = ["A1", "A2", "A1+A1", "B2"]
        .iter()
        .zip([8, 3, 3, 2])
        .map(|(t, m)| (t.parse().unwrap(), m))
        .collect();
    for k in 0..200 {
        let (d, max) = &data[k % data.len()];
        let (a, b) = (random_label(&mut rng, d, *max), random_label(&mut rng, d, *max));
        let t = d.tensor_decompose(&a, &b).map_err(|e| e.to_string())?;
        let (da, db) = (d.weyl_dim(&a).unwrap(), d.weyl_dim(&b).unwrap());
        if d.module_dim(&t).unwrap() != da * db {
            return Err(format!("{d}: dim {a} ⊗ {b}"));
        }
        let ia = ModuleDesc::irreducible(a.clone());
        let (alt, sym) = d.alt_sym_square(&ia).map_err(|e| e.to_string())?;
        let square = d.tensor_decompose(&a, &a).unwrap();
        if alt.union(&sym) != square
            || d.module_dim(&alt).unwrap() != da * (da - 1) / 2
            || d.module_dim(&sym).unwrap() != da * (da + 1) / 2
        {
            return Err(format!("{d}: alt/sym square of {a}"));
        }
    }
    Ok("200 products".into())
}

fn criterion_8() -> Outcome {
    let s = so3();
    let whole = classify(&s);
    if whole != tame(1) {
        return Err(format!("so3 classified as {whole}"));
    }
    for kernel in [0, 3] {
        let v = decide_acting_part(&s, None, kernel);
        if !matches!(v, Verdict::Unsupported { .. }) {
            return Err(format!("so3 acting on a 2-dim radical gave {v}"));
        }
    }
    Ok("so3 is Tame{1}; acting on a 2-dim radical it is Unsupported".into())
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(2024);
    let variants = base_changed(&mut rng);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 verdict corpus", Box::new(criterion_1)),
        ("2 basis-change invariance", Box::new(|| criterion_2(&variants))),
        ("3 Levi postconditions", Box::new(|| criterion_3(&variants))),
        ("4 tensor oracle", Box::new(criterion_4)),
        ("5 chain quiver", Box::new(criterion_5)),
        ("6 detector soundness", Box::new(criterion_6)),
        ("7 dimension bookkeeping", Box::new(criterion_7)),
        ("8 unsupported honesty", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, criterion) in &criteria {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed();
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
