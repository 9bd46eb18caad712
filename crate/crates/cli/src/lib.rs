//! Command-line front end: classification, radical and Levi computations,
//! tensor products, quiver windows and wildness detection.

pub mod document;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lie_tame::classifier::{classify, explain, Verdict};
use lie_tame::construct::{build_named, Recipe};
use lie_tame::levi::levi_subalgebra;
use lie_tame::lie::LieAlgebra;
use lie_tame::linalg::{Rational, Subspace};
use lie_tame::quiver::{build_quiver, detect_wild_with, emit_dot, DetectorConfig, DEFAULT_WINDOW};
use lie_tame::rep_theory::{CartanDatum, IrrLabel, ModuleDesc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lie-tame", version, about = "Tame/wild representation type of Lie algebras")]
struct Cli {
    /// Emit a single JSON object instead of a text report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide tame (with class) or wild
    Classify(AlgebraSource),
    /// Solvable radical
    Radical(AlgebraSource),
    /// A Levi subalgebra
    Levi(AlgebraSource),
    /// Decompose a tensor product of two irreducibles
    Tensor {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Window of the quiver K_I
    Quiver {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        module: String,
        /// Starting vertex; repeatable. Defaults to the trivial module
        #[arg(long)]
        seed: Vec<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Write Graphviz output here
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for a wildness witness
    DetectWild {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
        /// Skip the dim I ≥ 3 shortcut and look for vertex-level witnesses
        #[arg(long)]
        no_dim_shortcut: bool,
    },
    /// Print the structure constants of an algebra as a JSON document
    Show(AlgebraSource),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AlgebraSource {
    /// JSON algebra document
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named construction, e.g. "semidirect(sl(2), (1))"
    #[arg(long)]
    named: Option<String>,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Report {
    command: &'static str,
    input: Value,
    result: Value,
    rule: Value,
    text: String,
    code: i32,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            if cli.json {
                let envelope = json!({
                    "command": report.command,
                    "input": report.input,
                    "result": report.result,
                    "paper_rule": report.rule,
                });
                let _ = writeln!(out, "{envelope}");
            } else {
                let _ = write!(out, "{}", report.text);
            }
            report.code
        }
        Err(InputError(msg)) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": msg }));
            }
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load(src: &AlgebraSource) -> Result<(Value, String, LieAlgebra), InputError> {
    match (&src.input, &src.named) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let l = document::parse_algebra(&text)?;
            let name = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| v.get("name").and_then(Value::as_str).map(str::to_string))
                .unwrap_or_else(|| path.display().to_string());
            Ok((json!({ "file": path.display().to_string() }), name, l))
        }
        (None, Some(recipe)) => {
            let r: Recipe = recipe.parse()?;
            let l = build_named(&r)?;
            Ok((json!({ "named": r.to_string() }), r.to_string(), l))
        }
        (None, None) => Err(InputError("need --input or --named".into())),
    }
}

/// Wild is an answer, not a failure.
pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Unsupported { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_OK,
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Tame { class } => json!({ "kind": "tame", "class": class }),
        Verdict::Wild {
            rule,
            witness,
            controlled,
        } => json!({
            "kind": "wild",
            "rule": rule.id(),
            "controlled": controlled,
            "witness": witness,
        }),
        Verdict::Unsupported { cause } => json!({ "kind": "unsupported", "cause": cause }),
    }
}

fn vector_text(names: &[String], v: &[Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| **c != Rational::default())
        .map(|(c, n)| {
            if *c == Rational::from_integer(1.into()) {
                n.clone()
            } else {
                format!("{c}*{n}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn subspace_report(names: &[String], s: &Subspace) -> (Value, String) {
    let vectors = s.vectors();
    let rows: Vec<Vec<String>> = vectors
        .iter()
        .map(|v| v.iter().map(Rational::to_string).collect())
        .collect();
    let mut text = format!("dimension {}\n", s.dim());
    for v in &vectors {
        text.push_str(&format!("  {}\n", vector_text(names, v)));
    }
    (
        json!({ "dim": s.dim(), "basis_names": names, "basis": rows }),
        text,
    )
}

fn components_json(m: &ModuleDesc) -> Value {
    let mut comps: Vec<(&IrrLabel, u64)> = m.iter().collect();
    comps.reverse();
    Value::Array(
        comps
            .into_iter()
            .map(|(l, k)| json!({ "highest_weight": l.coords(), "multiplicity": k }))
            .collect(),
    )
}

fn datum_and_module(cartan: &str, module: &str) -> Result<(CartanDatum, ModuleDesc), InputError> {
    let d: CartanDatum = cartan.parse()?;
    let m: ModuleDesc = module.parse()?;
    for l in m.labels() {
        d.check(&l.highest_weight)?;
    }
    Ok((d, m))
}

fn execute(cmd: &Command) -> Result<Report, InputError> {
    match cmd {
        Command::Classify(src) => {
            let (input, name, l) = load(src)?;
            let v = classify(&l);
            let code = verdict_exit_code(&v);
            Ok(Report {
                command: "classify",
                input,
                result: verdict_json(&v),
                rule: json!(v.rule_id()),
                text: format!("{name}: {v}\n{}\n", explain(&v)),
                code,
            })
        }
        Command::Radical(src) => {
            let (input, name, l) = load(src)?;
            let (result, body) = subspace_report(l.basis_names(), &l.radical());
            Ok(Report {
                command: "radical",
                input,
                result,
                rule: json!("killing_orthogonal_of_derived"),
                text: format!("radical of {name}: {body}"),
                code: EXIT_OK,
            })
        }
        Command::Levi(src) => {
            let (input, name, l) = load(src)?;
            let (result, body) = subspace_report(l.basis_names(), &levi_subalgebra(&l));
            Ok(Report {
                command: "levi",
                input,
                result,
                rule: json!("levi_decomposition"),
                text: format!("Levi subalgebra of {name}: {body}"),
                code: EXIT_OK,
            })
        }
        Command::Show(src) => {
            let (input, name, l) = load(src)?;
            let doc = document::algebra_to_document(&name, &l);
            Ok(Report {
                command: "show",
                input,
                result: serde_json::to_value(&doc)?,
                rule: Value::Null,
                text: format!("{}\n", document::emit_algebra(&name, &l)),
                code: EXIT_OK,
            })
        }
        Command::Tensor { cartan, a, b } => {
            let d: CartanDatum = cartan.parse()?;
            let (x, y): (IrrLabel, IrrLabel) = (a.parse()?, b.parse()?);
            let m = d.tensor_decompose(&x, &y)?;
            let mut text = format!("{x} ⊗ {y} =");
            let mut comps: Vec<(&IrrLabel, u64)> = m.iter().collect();
            comps.reverse();
            for (k, (l, mult)) in comps.iter().enumerate() {
                let sep = if k == 0 { " " } else { " + " };
                if *mult == 1 {
                    text.push_str(&format!("{sep}{l}"));
                } else {
                    text.push_str(&format!("{sep}{mult}*{l}"));
                }
            }
            text.push('\n');
            Ok(Report {
                command: "tensor",
                input: json!({ "type": d.to_string(), "a": x.coords(), "b": y.coords() }),
                result: json!({ "components": components_json(&m) }),
                rule: json!("tensor_multiplicity"),
                text,
                code: EXIT_OK,
            })
        }
        Command::Quiver {
            cartan,
            module,
            seed,
            depth,
            dot,
        } => {
            let (d, i) = datum_and_module(cartan, module)?;
            let seeds = if seed.is_empty() {
                vec![IrrLabel::trivial(d.rank())]
            } else {
                seed.iter()
                    .map(|s| s.parse::<IrrLabel>())
                    .collect::<Result<Vec<_>, _>>()?
            };
            let q = build_quiver(&d, &i, &seeds, *depth)?;
            let rendered = emit_dot(&q);
            let text = match dot {
                Some(path) => {
                    std::fs::write(path, &rendered)
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    format!(
                        "{} vertices, {} arrow sets, DOT written to {}\n",
                        q.vertices.len(),
                        q.arrow_count(),
                        path.display()
                    )
                }
                None => rendered,
            };
            let relations: Vec<Value> = q
                .relations
                .iter()
                .flat_map(|(t, list)| {
                    list.iter()
                        .map(move |(s, c)| json!({ "source": s, "target": t, "count": c }))
                })
                .collect();
            Ok(Report {
                command: "quiver",
                input: json!({
                    "type": d.to_string(),
                    "module": i.to_string(),
                    "seeds": seeds.iter().map(IrrLabel::coords).collect::<Vec<_>>(),
                    "depth": depth,
                }),
                result: json!({
                    "vertices": q.vertices.iter().map(IrrLabel::coords).collect::<Vec<_>>(),
                    "arrows": q.arrows.iter().map(|((s, t), m)| json!({ "source": s, "target": t, "multiplicity": m })).collect::<Vec<_>>(),
                    "relations": relations,
                    "boundary": q.boundary,
                }),
                rule: json!("quiver_k_i"),
                text,
                code: EXIT_OK,
            })
        }
        Command::DetectWild {
            cartan,
            module,
            window,
            no_dim_shortcut,
        } => {
            let (d, i) = datum_and_module(cartan, module)?;
            let config = DetectorConfig {
                big_radical_dim: !no_dim_shortcut,
            };
            let found = detect_wild_with(&d, &i, *window, config)?;
            let (result, rule, text) = match &found {
                Some(w) => (
                    json!({
                        "witness": {
                            "rule": w.rule.id(),
                            "at_vertex": w.at_vertex.coords(),
                            "detail": w.detail,
                        }
                    }),
                    json!(w.rule.id()),
                    format!("wild witness [{}] at {}: {}\n", w.rule, w.at_vertex, w.detail),
                ),
                None => (
                    json!({ "witness": null }),
                    Value::Null,
                    format!("no rule fired for dominant weights with coordinates ≤ {window}\n"),
                ),
            };
            Ok(Report {
                command: "detect-wild",
                input: json!({ "type": d.to_string(), "module": i.to_string(), "window": window }),
                result,
                rule,
                text,
                code: EXIT_OK,
            })
        }
    }
}
