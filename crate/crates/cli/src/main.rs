//! `cbx`: command-line front end for the exact Coulomb-branch engine.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on input errors.

use cbx_core::classical::{abelian_surface_check, poisson_table, surface_sym_check, zastava_rank2_check, ZastavaCase};
use cbx_core::monopole::{hilbert_series, twisted_hilbert_series, FoldedTheory};
use cbx_core::monops::{jordan_ops, quasi_minuscule, quiver_e, quiver_f, root_datum_table, Dilation, OpKind, SymFunc};
use cbx_core::quiverdata::{parse_theory, QuiverTheory, RootDatum};
use cbx_core::ratfield::{MPoly, RatFunc, VarTable};
use cbx_core::shiftalg::{op_poisson_limit, DiffOp};
use cbx_core::yangian::{gklo_image, relation_suite, Generator, Relation, VerificationReport};
use cbx_core::CbxError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cbx", version, about = "Exact difference-operator computations for quantized Coulomb branches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monopole-formula Hilbert series of a theory.
    Hilbert {
        #[command(flatten)]
        theory: TheoryArg,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Twisted monopole formula for a theory with a `fold` entry.
    Twisted {
        #[command(flatten)]
        theory: TheoryArg,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verifies shifted-Yangian relations for the GKLO images.
    GkloCheck {
        #[command(flatten)]
        theory: TheoryArg,
        /// `all` or a comma-separated list of HH, HE, HF, EE, FF, EF, SerreE, SerreF.
        #[arg(long, default_value = "all")]
        relations: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Prints a monopole operator or a GKLO image.
    Op {
        #[command(flatten)]
        theory: TheoryArg,
        /// E, F (quiver operators), jordan-E, jordan-F, quasi-minuscule, or gklo-A/E/F/H.
        #[arg(long)]
        gen: String,
        /// Vertex label.
        #[arg(long)]
        vertex: Option<String>,
        /// Number of shifted variables.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Symmetric function in the shifted variables, in `e_k` notation.
        #[arg(long, default_value = "1")]
        f: String,
        /// Adds the flavor parameter `t` to every matter factor.
        #[arg(long)]
        dilation: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks of the commutative layer.
    ClassicalCheck {
        /// disconnected, connected, same-vertex, surface or poisson.
        #[arg(long)]
        case: String,
        /// Theory file (used by `poisson`).
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Symmetric power (used by `surface`).
        #[arg(long, default_value_t = 1)]
        a: usize,
        /// Flavor count (used by `surface`).
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 12)]
        order: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Commutator (or Poisson bracket) of two operators.
    Bracket {
        #[command(flatten)]
        theory: TheoryArg,
        /// Operator spec `KIND:VERTEX[:N[:F]]`, KIND one of E, F, w, u.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Take `lim (ab − ba)/ħ` at `ħ = 0`.
        #[arg(long)]
        poisson: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct TheoryArg {
    /// Path to a JSON theory document.
    #[arg(long)]
    theory: PathBuf,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, default_value_t = 12)]
    order: i64,
    /// Half-width of the coweight box.
    #[arg(long = "box", default_value_t = 6)]
    box_size: i64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the document to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<CbxError> for Failure {
    fn from(e: CbxError) -> Self {
        let code = match e {
            CbxError::TruncationUnstable { .. } | CbxError::NotInYPrime => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// The document to print and whether every check in it passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

fn load_theory(path: &PathBuf) -> Result<QuiverTheory, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    parse_theory(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn vertex(th: &QuiverTheory, label: Option<&str>) -> Result<usize, Failure> {
    let label = label.ok_or_else(|| input_error("--vertex is required"))?;
    th.vertex_index(label).ok_or_else(|| input_error(format!("unknown vertex '{label}'")))
}

fn parse_relations(spec: &str) -> Result<Vec<Relation>, Failure> {
    if spec == "all" {
        return Ok(Relation::ALL.to_vec());
    }
    spec.split(',').map(|s| s.trim().parse::<Relation>().map_err(Failure::from)).collect()
}

fn report_text(r: &VerificationReport) -> String {
    let status = if r.verified() { "verified" } else { "FAILED" };
    let mut line = r.relation.clone();
    if !r.vertices.is_empty() {
        line.push_str(&format!(" {}", r.vertices.join(",")));
    }
    line.push_str(&format!(" {status} (lhs {} terms, rhs {} terms)", r.lhs_terms, r.rhs_terms));
    if let Some(w) = &r.witness {
        line.push_str(&format!("\n  witness: {w}"));
    }
    line
}

fn op_document(verb: &str, op: &DiffOp, vt: &VarTable) -> Outcome {
    let terms: Vec<Value> = op.terms().map(|(m, c)| json!({"shift": m.render(vt), "coefficient": c.render(vt)})).collect();
    Outcome { json: json!({"verb": verb, "terms": terms}), text: op.render(vt), ok: true }
}

fn parse_operand(th: &QuiverTheory, spec: &str, dilation: Dilation) -> Result<DiffOp, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 2 {
        return Err(input_error(format!("operator spec '{spec}' must be KIND:VERTEX[:N[:F]]")));
    }
    let v = vertex(th, Some(parts[1]))?;
    let n: usize = match parts.get(2) {
        Some(s) => s.parse().map_err(|_| input_error(format!("bad index in '{spec}'")))?,
        None => 1,
    };
    let f = SymFunc::parse(parts.get(3).copied().unwrap_or("1"))?;
    let vt = th.var_table();
    let nv = vt.len();
    let slot = |r: usize| {
        r.checked_sub(1)
            .and_then(|r| vt.gauge_slot(v, r))
            .ok_or_else(|| input_error(format!("no gauge variable {r} at vertex '{}'", parts[1])))
    };
    Ok(match parts[0] {
        "E" => quiver_e(th, v, n, &f, dilation)?,
        "F" => quiver_f(th, v, n, &f, dilation)?,
        "w" => DiffOp::scalar(RatFunc::var(nv, slot(n)?)),
        "u" => DiffOp::shift(nv, slot(n)?, 1),
        k => return Err(input_error(format!("unknown operator kind '{k}'"))),
    })
}

fn run(command: Command) -> Result<(Outcome, OutputArgs), Failure> {
    match command {
        Command::Hilbert { theory, series, output } => {
            let th = load_theory(&theory.theory)?;
            let s = hilbert_series(&th, series.order, series.box_size)?;
            let json = json!({"verb": "hilbert", "order": series.order, "box": series.box_size, "series": s});
            Ok((Outcome { json, text: s.to_string(), ok: true }, output))
        }
        Command::Twisted { theory, series, output } => {
            let th = load_theory(&theory.theory)?;
            let fold = th.fold.clone().ok_or_else(|| input_error("theory has no `fold` entry"))?;
            let folded = FoldedTheory::new(th, &fold)?;
            let s = twisted_hilbert_series(&folded, series.order, series.box_size)?;
            let json = json!({"verb": "twisted", "order": series.order, "box": series.box_size, "series": s});
            Ok((Outcome { json, text: s.to_string(), ok: true }, output))
        }
        Command::GkloCheck { theory, relations, output } => {
            let th = load_theory(&theory.theory)?;
            let rels = parse_relations(&relations)?;
            let reports = relation_suite(&th, &rels)?;
            let ok = reports.iter().all(|r| r.verified());
            let text = reports.iter().map(report_text).collect::<Vec<_>>().join("\n");
            let json = json!({"verb": "gklo-check", "verified": ok, "reports": reports});
            Ok((Outcome { json, text, ok }, output))
        }
        Command::Op { theory, gen, vertex: label, n, f, dilation, output } => {
            let th = load_theory(&theory.theory)?;
            let sym = SymFunc::parse(&f)?;
            let dil = if dilation { Dilation::On } else { Dilation::Off };
            let vt = th.var_table();
            let op = match gen.as_str() {
                "E" => quiver_e(&th, vertex(&th, label.as_deref())?, n, &sym, dil)?,
                "F" => quiver_f(&th, vertex(&th, label.as_deref())?, n, &sym, dil)?,
                "jordan-E" | "jordan-F" => {
                    if th.n_vertices() != 1 {
                        return Err(input_error("jordan operators need a one-vertex theory"));
                    }
                    let kind = if gen == "jordan-E" { OpKind::E } else { OpKind::F };
                    let op = jordan_ops(th.dim[0], th.flavor[0], n, &sym, kind)?;
                    let jt = QuiverTheory::jordan(th.dim[0], th.flavor[0]).var_table();
                    let mut doc = op_document("op", &op, &jt);
                    doc.json["generator"] = json!(gen);
                    return Ok((doc, output));
                }
                "quasi-minuscule" => {
                    let rs = th.root_system.as_ref().ok_or_else(|| input_error("theory has no `root_system` entry"))?;
                    let rd = RootDatum::simple(rs.series, rs.rank)?;
                    let (rvt, coords) = root_datum_table(&rd);
                    let op = quasi_minuscule(&rd, &coords, &MPoly::one(rvt.len()));
                    let mut doc = op_document("op", &op, &rvt);
                    doc.json["generator"] = json!(gen);
                    return Ok((doc, output));
                }
                g if g.starts_with("gklo-") => {
                    let generator: Generator = g["gklo-".len()..].parse()?;
                    gklo_image(&th, generator, vertex(&th, label.as_deref())?, 0)?
                }
                other => return Err(input_error(format!("unknown generator '{other}'"))),
            };
            let mut doc = op_document("op", &op, &vt);
            doc.json["generator"] = json!(gen);
            Ok((doc, output))
        }
        Command::ClassicalCheck { case, theory, a, l, order, output } => {
            let (report, extra) = match case.as_str() {
                "surface" => {
                    let r = if a == 1 && l > 0 { abelian_surface_check(l, order)? } else { surface_sym_check(a, l, order)? };
                    (r, Value::Null)
                }
                "poisson" => {
                    let path = theory.ok_or_else(|| input_error("--theory is required for the poisson table"))?;
                    let table = poisson_table(&load_theory(&path)?)?;
                    let entries = serde_json::to_value(&table.entries).expect("serializable");
                    (table.report, entries)
                }
                other => (zastava_rank2_check(other.parse::<ZastavaCase>()?)?, Value::Null),
            };
            let ok = report.verified();
            let text = report_text(&report);
            let mut json = json!({"verb": "classical-check", "case": case, "report": report});
            if !extra.is_null() {
                json["entries"] = extra;
            }
            Ok((Outcome { json, text, ok }, output))
        }
        Command::Bracket { theory, left, right, poisson, output } => {
            let th = load_theory(&theory.theory)?;
            let vt = th.var_table();
            let a = parse_operand(&th, &left, Dilation::Off)?;
            let b = parse_operand(&th, &right, Dilation::Off)?;
            let op = if poisson { op_poisson_limit(&a, &b)? } else { a.commutator(&b) };
            let mut doc = op_document("bracket", &op, &vt);
            doc.json["left"] = json!(left);
            doc.json["right"] = json!(right);
            doc.json["poisson"] = json!(poisson);
            Ok((doc, output))
        }
    }
}

fn emit(outcome: &Outcome, output: &OutputArgs) -> Result<(), Failure> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
        Format::Text => outcome.text.clone() + "\n",
    };
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(outcome, output)| {
        emit(&outcome, &output)?;
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("cbx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
