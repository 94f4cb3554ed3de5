//! Command dispatch for the `filiform` binary.
//!
//! Every verb produces one JSON object on stdout: the command name, an echo
//! of its inputs, the verb's payload fields, a name-sorted certificate list
//! and the exit code. Exit codes: 0 when every certificate passes, 1 when
//! one fails, 2 on argument, parse or domain errors.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use filiform_core::algebra::{classify_subalgebra, core_ideal, AlgebraElement, SubalgebraBasis};
use filiform_core::loops::{LoopPoint, LoopSpec};
use filiform_core::mult::{self, AnalysisOptions, DEFAULT_PROBE_SEED};
use filiform_core::sample::SampleGrid;
use filiform_core::{Certificate, Rational, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "filiform", version, about = "Exact checks for loops on filiform Lie groups")]
pub struct Cli {
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true, env = "FILIFORM_PRETTY", value_parser = clap::builder::FalseyValueParser::new())]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identity condition and properness of a loop spec.
    Validate { spec: PathBuf },
    /// Loop product a * b.
    Mul {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: LoopPoint,
        #[arg(long, allow_hyphen_values = true)]
        b: LoopPoint,
    },
    /// Left division (a * y = b) or right division (x * a = b).
    Div {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: LoopPoint,
        #[arg(long, allow_hyphen_values = true)]
        b: LoopPoint,
        #[arg(long, value_enum, default_value = "left")]
        side: Side,
    },
    /// Commutativity defect polynomial.
    Comm { spec: PathBuf },
    /// Decide whether Mult(L) equals the group of the left translations.
    MultGroup { spec: PathBuf },
    /// Multiplication group of the loop given by v_1 alone (spec with n = 1).
    Thm3 {
        spec: PathBuf,
        /// Sample grid "u1,u2,...:z1,z2,...".
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<SampleGrid>,
        /// Seed for the stabilization probes.
        #[arg(long, default_value_t = DEFAULT_PROBE_SEED)]
        seed: u64,
    },
    /// Bracket of two elements of f_{n+2}.
    AlgebraBracket {
        #[arg(long)]
        n: usize,
        /// Comma-separated coefficients over e_1, ..., e_{n+2}.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Normal form of the subalgebra spanned by the given vectors.
    ClassifySubalgebra {
        #[arg(long)]
        n: usize,
        #[arg(long = "vec", allow_hyphen_values = true)]
        vecs: Vec<String>,
    },
    /// Largest ideal contained in the span of the given vectors.
    CoreIdeal {
        #[arg(long)]
        n: usize,
        #[arg(long = "vec", allow_hyphen_values = true)]
        vecs: Vec<String>,
    },
    /// Inner mapping algebra checks for parameters a_1, ..., a_n.
    InnCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Mul { .. } => "mul",
            Command::Div { .. } => "div",
            Command::Comm { .. } => "comm",
            Command::MultGroup { .. } => "mult-group",
            Command::Thm3 { .. } => "thm3",
            Command::AlgebraBracket { .. } => "algebra-bracket",
            Command::ClassifySubalgebra { .. } => "classify-subalgebra",
            Command::CoreIdeal { .. } => "core-ideal",
            Command::InnCheck { .. } => "inn-check",
        }
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn certificates(&self) -> &[Value] {
        self.json["certificates"].as_array().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Read and validate a loop spec; the identity condition is enforced here.
pub fn load_spec(path: &Path) -> anyhow::Result<LoopSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let spec: LoopSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        anyhow::anyhow!("{}: at `{at}`: {}", path.display(), e.into_inner())
    })?;
    let report = spec.validate();
    if !report.identity_ok {
        let reasons: Vec<&str> = report.reasons.iter().map(String::as_str).filter(|r| r.contains("(0)")).collect();
        bail!("{}: identity condition violated: {}", path.display(), reasons.join("; "));
    }
    Ok(spec)
}

fn parse_vector(s: &str) -> anyhow::Result<Vec<Rational>> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().with_context(|| format!("bad coefficient in {s:?}")))
        .collect()
}

fn parse_element(n: usize, s: &str) -> anyhow::Result<AlgebraElement> {
    Ok(AlgebraElement::new(n, parse_vector(s)?)?)
}

fn spec_echo(path: &Path, spec: &LoopSpec) -> Value {
    json!({ "spec": path.display().to_string(), "n": spec.n(), "v": spec.v() })
}

fn cert_value(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

/// Payload fields, certificates and input echo of a successful run.
struct Payload {
    input: Value,
    fields: Map<String, Value>,
    certificates: Vec<Certificate>,
}

impl Payload {
    fn new(input: Value) -> Self {
        Payload {
            input,
            fields: Map::new(),
            certificates: Vec::new(),
        }
    }

    fn field(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.fields
            .insert(key.to_string(), serde_json::to_value(value).expect("payload serializes"));
        self
    }

    fn cert(mut self, name: &str, pass: bool, witness: Option<Value>) -> Self {
        self.certificates.push(Certificate::new(name, pass, witness));
        self
    }

    fn report(mut self, report: Report) -> Self {
        self.certificates.extend(report.certificates.iter().cloned());
        self.field("claim", &report.claim)
            .field("mult_dimension", report.mult_dimension)
    }
}

fn execute(cmd: &Command) -> anyhow::Result<Payload> {
    Ok(match cmd {
        Command::Validate { spec } => {
            let loop_spec = load_spec(spec)?;
            let v = loop_spec.validate();
            Payload::new(spec_echo(spec, &loop_spec))
                .field("identity_ok", v.identity_ok)
                .field("proper", v.proper)
                .field("reasons", &v.reasons)
                .cert("identity", v.identity_ok, None)
                .cert("proper", v.proper, (!v.proper).then(|| json!({ "reasons": v.reasons })))
        }
        Command::Mul { spec, a, b } => {
            let s = load_spec(spec)?;
            let product = s.lmul(a, b);
            let via_group = s.coset_action(a, b)?;
            let mut input = spec_echo(spec, &s);
            input["a"] = json!(a);
            input["b"] = json!(b);
            Payload::new(input).field("result", &product).cert(
                "coset_action",
                via_group == product,
                Some(json!({ "group_result": via_group })),
            )
        }
        Command::Div { spec, a, b, side } => {
            let s = load_spec(spec)?;
            let (result, check, side_name) = match side {
                Side::Left => {
                    let y = s.ldiv(a, b);
                    let check = s.lmul(a, &y);
                    (y, check, "left")
                }
                Side::Right => {
                    let x = s.rdiv(b, a);
                    let check = s.lmul(&x, a);
                    (x, check, "right")
                }
            };
            let mut input = spec_echo(spec, &s);
            input["a"] = json!(a);
            input["b"] = json!(b);
            input["side"] = json!(side_name);
            Payload::new(input)
                .field("result", &result)
                .cert("round_trip", check == *b, Some(json!({ "product": check })))
        }
        Command::Comm { spec } => {
            let s = load_spec(spec)?;
            let defect = s.comm_defect();
            let commutative = defect.is_zero();
            let mut p = Payload::new(spec_echo(spec, &s))
                .field("comm_defect", &defect)
                .field("commutative", commutative);
            if let Some(m) = mult::comm_matrix_of(&s) {
                let symmetric = m.is_signed_symmetric();
                p = p.field("signed_symmetric", symmetric).cert(
                    "signed_symmetry_consistency",
                    symmetric == commutative,
                    Some(json!({ "violation": m.signed_symmetry_violation() })),
                );
            }
            p
        }
        Command::MultGroup { spec } => {
            let s = load_spec(spec)?;
            let analysis = mult::companion_analysis(&s);
            Payload::new(spec_echo(spec, &s))
                .field("companions", analysis.solution.as_ref().map(|sol| &sol.s))
                .field("obstruction", analysis.obstruction.as_ref().map(|(j, c)| json!({ "x_power": j, "coefficient": c })))
                .report(mult::mult_group_report(&s))
        }
        Command::Thm3 { spec, grid, seed } => {
            let s = load_spec(spec)?;
            if s.n() != 1 {
                bail!("thm3 expects a spec with n = 1, got n = {}", s.n());
            }
            let opts = AnalysisOptions {
                grid: grid.clone().unwrap_or_default(),
                seed: *seed,
            };
            let v1 = s.v_k(1);
            let transversal = mult::thm3_transversal(v1)?;
            let mut input = spec_echo(spec, &s);
            input["grid"] = json!(opts.grid.to_string());
            input["seed"] = json!(seed);
            Payload::new(input)
                .field("transversal", &transversal)
                .report(mult::thm3_pipeline(v1, &opts)?)
        }
        Command::AlgebraBracket { n, x, y } => {
            let ex = parse_element(*n, x)?;
            let ey = parse_element(*n, y)?;
            let xy = ex.bracket(&ey)?;
            let yx = ey.bracket(&ex)?;
            Payload::new(json!({ "n": n, "x": ex, "y": ey }))
                .field("result", &xy)
                .field("display", xy.to_string())
                .cert("antisymmetry", xy.add(&yx)?.is_zero(), None)
        }
        Command::ClassifySubalgebra { n, vecs } => {
            let elems = vecs.iter().map(|v| parse_element(*n, v)).collect::<anyhow::Result<Vec<_>>>()?;
            let space = SubalgebraBasis::span(*n, &elems)?;
            let class = classify_subalgebra(&space)?;
            Payload::new(json!({ "n": n, "vectors": elems }))
                .field("basis", space.basis())
                .field("dimension", space.dim())
                .field("classification", &class)
                .cert("closed", space.is_closed(), None)
        }
        Command::CoreIdeal { n, vecs } => {
            let elems = vecs.iter().map(|v| parse_element(*n, v)).collect::<anyhow::Result<Vec<_>>>()?;
            let space = SubalgebraBasis::span(*n, &elems)?;
            let core = core_ideal(&space)?;
            Payload::new(json!({ "n": n, "vectors": elems }))
                .field("core", core.basis())
                .field("dimension", core.dim())
                .cert("is_ideal", core.is_ideal() && space.contains_space(&core), None)
        }
        Command::InnCheck { a } => {
            let params = parse_vector(a)?;
            Payload::new(json!({ "a": params }))
                .field("n", params.len())
                .report(mult::inn_report(&params)?)
        }
    })
}

/// Run one parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let verb = cli.command.verb();
    let mut out = Map::new();
    out.insert("command".into(), json!(verb));
    match execute(&cli.command) {
        Ok(payload) => {
            let mut certs = payload.certificates;
            certs.sort_by(|a, b| a.name.cmp(&b.name));
            let exit_code = if certs.iter().all(|c| c.pass) { EXIT_OK } else { EXIT_FAILED };
            out.insert("input".into(), payload.input);
            out.extend(payload.fields);
            out.insert("certificates".into(), Value::Array(certs.iter().map(cert_value).collect()));
            out.insert("exit_code".into(), json!(exit_code));
            Outcome {
                json: Value::Object(out),
                exit_code,
            }
        }
        Err(err) => {
            out.insert("error".into(), json!(format!("{err:#}")));
            out.insert("certificates".into(), json!([]));
            out.insert("exit_code".into(), json!(EXIT_USAGE));
            Outcome {
                json: Value::Object(out),
                exit_code: EXIT_USAGE,
            }
        }
    }
}

/// Short stderr summary for `--pretty`.
pub fn summary(outcome: &Outcome) -> String {
    let j = &outcome.json;
    let mut lines = vec![format!("{} (exit {})", j["command"].as_str().unwrap_or("?"), outcome.exit_code)];
    if let Some(e) = j["error"].as_str() {
        lines.push(format!("  error: {e}"));
    }
    if let Some(c) = j["claim"].as_str() {
        lines.push(format!("  claim: {c}"));
    }
    if let Some(r) = j.get("result") {
        lines.push(format!("  result: {r}"));
    }
    for c in outcome.certificates() {
        let mark = if c["pass"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
        lines.push(format!("  [{mark}] {}", c["name"].as_str().unwrap_or("?")));
    }
    lines.join("\n")
}
