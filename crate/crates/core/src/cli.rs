//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closed_forms::{
    closed_form, cor2_det, defining_matrix, thm2_det, FormulaError, FormulaId, ThmParams,
};
use crate::field::{parse_field_expr, FieldElem, Rational};
use crate::hankel::{
    det_via_lemma, det_with, hankel_matrix, jacobi_from_moments, Engine, HankelError,
};
use crate::qcalc::QBase;
use crate::sequences::{MomentSeq, SequenceError};
use crate::triangle::{build_triangle, build_zero_s_triangle, JacobiParams, TSeq, Triangle};
use crate::verify::{run_suite, threads_from_env, SuiteId, SuiteSpec, VerifyError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl From<HankelError> for CliError {
    fn from(e: HankelError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::OutOfRange { .. } => CliError::Usage(e.to_string()),
            SequenceError::PoleInSequence(_) => CliError::Math(e.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::MissingParameter(..) => CliError::Usage(e.to_string()),
            FormulaError::PoleInFormula(_) => CliError::Math(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "hankelkit",
    version,
    about = "Exact Hankel determinants, recurrence triangles and q-analogues"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the recurrence triangle of a sequence, of (s, t), or of T.
    Triangle {
        /// Moment sequence; its (s, t) are recovered from the moments.
        #[arg(long)]
        seq: Option<String>,
        /// Comma-separated s(0), s(1), ...; the last value repeats.
        #[arg(long)]
        s: Option<String>,
        /// Comma-separated t(0), t(1), ...; the last value repeats.
        #[arg(long)]
        t: Option<String>,
        /// Comma-separated T(0), T(1), ... for the zero-s triangle.
        #[arg(long = "T")]
        big_t: Option<String>,
        /// Build the zero-s triangle from --T.
        #[arg(long)]
        zero_s: bool,
        /// Number of rows.
        #[arg(long)]
        rows: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hankel determinant det(c(i+j+m)) of order n.
    Det {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Evaluation route.
        #[arg(long, value_enum, default_value_t = Via::Oracle)]
        via: Via,
        /// Evaluate by both routes and compare.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value = "bareiss")]
        engine: Engine,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a named closed form.
    ClosedForm {
        /// Registry name, or thm2 (needs --a --b --Q) / cor2 (needs --a --b --c).
        formula: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long = "Q")]
        big_q: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Also evaluate the brute-force determinant and compare.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value = "bareiss")]
        engine: Engine,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recover the Jacobi parameters s, t from the moments.
    Jacobi {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "bareiss")]
        engine: Engine,
        /// Record per-case wall times (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Oracle,
    Lemma,
}

/// Rendered output and the process exit code it carries.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn expr(s: &str) -> Result<FieldElem, CliError> {
    parse_field_expr(s).map_err(|e| CliError::Usage(format!("cannot parse '{s}': {e}")))
}

fn rational(s: &str) -> Result<Rational, CliError> {
    expr(s)?
        .as_rational()
        .ok_or_else(|| CliError::Usage(format!("'{s}' is not a rational constant")))
}

fn expr_list(s: &str) -> Result<Vec<FieldElem>, CliError> {
    s.split(',').map(|x| expr(x.trim())).collect()
}

/// Parses the sequence mini-syntax: `catalan`, `central-binomial`,
/// `andrews`, `c:<a>,<b>,<Q>`, `u:<a>,<b>,<c>`, `shift:<m>:<seq>`,
/// `scale:<x>:<seq>`, `explicit:<v0>,<v1>,...`.
pub fn parse_seq(s: &str) -> Result<MomentSeq, CliError> {
    let s = s.trim();
    match s {
        "catalan" => return Ok(MomentSeq::Catalan),
        "central-binomial" => return Ok(MomentSeq::CentralBinomial),
        "andrews" => return Ok(MomentSeq::AndrewsQCatalan),
        _ => {}
    }
    let (head, rest) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("unknown sequence '{s}'")))?;
    let three = |rest: &str| -> Result<[String; 3], CliError> {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b, c] => Ok([a.to_string(), b.to_string(), c.to_string()]),
            _ => Err(CliError::Usage(format!(
                "'{head}:' takes three parameters, got '{rest}'"
            ))),
        }
    };
    match head {
        "c" => {
            let [a, b, q] = three(rest)?;
            Ok(MomentSeq::cseq(expr(&a)?, expr(&b)?, QBase::new(expr(&q)?)))
        }
        "u" => {
            let [a, b, c] = three(rest)?;
            Ok(MomentSeq::useq(rational(&a)?, rational(&b)?, rational(&c)?))
        }
        "shift" | "scale" => {
            let (arg, inner) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("'{head}:' needs '<arg>:<sequence>'")))?;
            let inner = parse_seq(inner)?;
            if head == "shift" {
                let m = arg
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad shift '{arg}'")))?;
                Ok(inner.shifted(m))
            } else {
                Ok(inner.scaled(expr(arg)?))
            }
        }
        "explicit" => Ok(MomentSeq::Explicit(expr_list(rest)?)),
        _ => Err(CliError::Usage(format!("unknown sequence '{s}'"))),
    }
}

/// `values[k]` for `k < len`, repeating the last given value.
fn extend(values: Vec<FieldElem>, len: usize) -> Vec<FieldElem> {
    let last = values.last().cloned().unwrap_or_else(FieldElem::zero);
    (0..len)
        .map(|k| values.get(k).cloned().unwrap_or_else(|| last.clone()))
        .collect()
}

fn elem_json(x: &FieldElem) -> Value {
    let coeffs = |p: crate::field::Polynomial| -> Vec<String> {
        p.coeffs().iter().map(|c| c.to_string()).collect()
    };
    json!({ "num_coeffs": coeffs(x.num()), "den_coeffs": coeffs(x.den()) })
}

fn csv_text(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// A single value, optionally checked against an oracle.
fn value_output(
    command: &str,
    params: Value,
    result: &FieldElem,
    cross: Option<(&str, &FieldElem)>,
    format: Format,
) -> String {
    match format {
        Format::Pretty => match cross {
            None => format!("{result}\n"),
            Some((label, oracle)) => format!(
                "result: {result}\n{label}: {oracle}\nmatches: {}\n",
                result == oracle
            ),
        },
        Format::Json => {
            let cross_check =
                cross.map(|(_, o)| json!({ "oracle": elem_json(o), "matches": result == o }));
            let v = json!({
                "command": command,
                "params": params,
                "result": elem_json(result),
                "cross_check": cross_check,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serialises")
            )
        }
        Format::Csv => {
            let mut header = vec!["result".to_string()];
            let mut row = vec![result.to_string()];
            if let Some((_, o)) = cross {
                header.extend(["oracle".into(), "matches".into()]);
                row.extend([o.to_string(), (result == o).to_string()]);
            }
            csv_text(vec![header, row])
        }
    }
}

fn triangle_output(tri: &Triangle, params: Value, format: Format) -> String {
    match format {
        Format::Pretty => tri
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("\t")
                    + "\n"
            })
            .collect(),
        Format::Json => {
            let rows: Vec<Vec<Value>> = tri
                .rows()
                .iter()
                .map(|r| r.iter().map(elem_json).collect())
                .collect();
            let v = json!({ "command": "triangle", "params": params, "result": { "rows": rows } });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serialises")
            )
        }
        Format::Csv => {
            let mut rows = vec![vec!["n".to_string(), "k".into(), "value".into()]];
            for (n, r) in tri.rows().iter().enumerate() {
                for (k, x) in r.iter().enumerate() {
                    rows.push(vec![n.to_string(), k.to_string(), x.to_string()]);
                }
            }
            csv_text(rows)
        }
    }
}

fn jacobi_output(jp: &JacobiParams, params: Value, format: Format) -> String {
    let list = |xs: &[FieldElem]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    match format {
        Format::Pretty => format!("s = {}\nt = {}\n", list(&jp.s), list(&jp.t)),
        Format::Json => {
            let v = json!({
                "command": "jacobi",
                "params": params,
                "result": {
                    "s": jp.s.iter().map(elem_json).collect::<Vec<_>>(),
                    "t": jp.t.iter().map(elem_json).collect::<Vec<_>>(),
                },
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serialises")
            )
        }
        Format::Csv => {
            let mut rows = vec![vec!["k".to_string(), "s".into(), "t".into()]];
            for k in 0..jp.s.len().max(jp.t.len()) {
                let cell = |v: &[FieldElem]| v.get(k).map(|x| x.to_string()).unwrap_or_default();
                rows.push(vec![k.to_string(), cell(&jp.s), cell(&jp.t)]);
            }
            csv_text(rows)
        }
    }
}

fn cmd_triangle(
    seq: Option<String>,
    s: Option<String>,
    t: Option<String>,
    big_t: Option<String>,
    zero_s: bool,
    rows: usize,
    format: Format,
) -> Result<String, CliError> {
    if rows == 0 {
        return Err(CliError::Usage("--rows must be positive".into()));
    }
    let n_max = rows - 1;
    let params = json!({ "seq": seq, "s": s, "t": t, "T": big_t, "zero_s": zero_s, "rows": rows });
    let tri = if zero_s || big_t.is_some() {
        let big_t = big_t.ok_or_else(|| CliError::Usage("--zero-s needs --T".into()))?;
        build_zero_s_triangle(&TSeq(extend(expr_list(&big_t)?, rows)), n_max)
    } else if let Some(seq) = seq {
        let jp = jacobi_from_moments(&parse_seq(&seq)?, rows)?;
        build_triangle(&jp, n_max)
    } else {
        let (s, t) = match (s, t) {
            (Some(s), Some(t)) => (s, t),
            _ => {
                return Err(CliError::Usage(
                    "give --seq, --s with --t, or --T with --zero-s".into(),
                ))
            }
        };
        let jp = JacobiParams::new(extend(expr_list(&s)?, rows), extend(expr_list(&t)?, rows));
        build_triangle(&jp, n_max)
    };
    Ok(triangle_output(&tri, params, format))
}

/// `det(c(i+j+m))` via the factorisation: the shifted moments are divided
/// by their first term, which scales the determinant by its `n`-th power.
fn det_lemma(seq: &MomentSeq, n: usize, m: usize) -> Result<FieldElem, CliError> {
    let shifted = seq.clone().shifted(m);
    let c0 = shifted.term(0)?;
    let inv = c0
        .inv()
        .map_err(|_| CliError::Math(HankelError::NotNormalized(c0.clone()).to_string()))?;
    let normalized = MomentSeq::Explicit(
        shifted
            .terms_upto(2 * n - 1)?
            .iter()
            .map(|x| x.mul(&inv))
            .collect(),
    );
    let jp = jacobi_from_moments(&normalized, n)?;
    Ok(det_via_lemma(&jp, n).mul(&c0.pow_int(n as i64).expect("c0 is nonzero")))
}

fn cmd_det(
    seq: &str,
    n: usize,
    m: usize,
    via: Via,
    cross: bool,
    engine: Engine,
    format: Format,
) -> Result<String, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let parsed = parse_seq(seq)?;
    let params = json!({ "seq": seq, "n": n, "m": m, "via": format!("{via:?}").to_lowercase(), "engine": engine.name() });
    let oracle =
        || -> Result<FieldElem, CliError> { Ok(det_with(&hankel_matrix(&parsed, n, m)?, engine)) };
    let text = match (via, cross) {
        (Via::Oracle, false) => value_output("det", params, &oracle()?, None, format),
        (Via::Lemma, false) => {
            value_output("det", params, &det_lemma(&parsed, n, m)?, None, format)
        }
        (_, true) => {
            let lemma = det_lemma(&parsed, n, m)?;
            value_output("det", params, &lemma, Some(("oracle", &oracle()?)), format)
        }
    };
    Ok(text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_closed_form(
    formula: &str,
    n: usize,
    m: usize,
    x: Option<String>,
    a: Option<String>,
    b: Option<String>,
    big_q: Option<String>,
    c: Option<String>,
    cross: bool,
    engine: Engine,
    format: Format,
) -> Result<String, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let params =
        json!({ "formula": formula, "n": n, "m": m, "x": x, "a": a, "b": b, "Q": big_q, "c": c });
    let need = |v: &Option<String>, name: &'static str| {
        v.clone().ok_or_else(|| {
            CliError::from(FormulaError::MissingParameter(formula.to_string(), name))
        })
    };
    let (value, oracle) = match formula.to_ascii_lowercase().as_str() {
        "thm2" => {
            let p = ThmParams::new(
                expr(&need(&a, "a")?)?,
                expr(&need(&b, "b")?)?,
                QBase::new(expr(&need(&big_q, "Q")?)?),
            );
            let value = thm2_det(n, m, &p)?;
            let oracle = if cross {
                let seq = MomentSeq::cseq(p.a.clone(), p.b.clone(), p.base.clone());
                Some(det_with(&hankel_matrix(&seq, n, m)?, engine))
            } else {
                None
            };
            (value, oracle)
        }
        "cor2" => {
            let (ra, rb, rc) = (
                rational(&need(&a, "a")?)?,
                rational(&need(&b, "b")?)?,
                rational(&need(&c, "c")?)?,
            );
            let value = FieldElem::from_rational(cor2_det(n, m, &ra, &rb, &rc)?);
            let oracle = if cross {
                let seq = MomentSeq::useq(ra, rb, rc);
                Some(det_with(&hankel_matrix(&seq, n, m)?, engine))
            } else {
                None
            };
            (value, oracle)
        }
        _ => {
            let id: FormulaId = formula.parse().map_err(CliError::Usage)?;
            let xv = x.as_deref().map(rational).transpose()?;
            let value = closed_form(id, n, m, xv.as_ref())?;
            let oracle = if cross {
                Some(det_with(&defining_matrix(id, n, m, xv.as_ref())?, engine))
            } else {
                None
            };
            (value, oracle)
        }
    };
    Ok(value_output(
        "closed-form",
        params,
        &value,
        oracle.as_ref().map(|o| ("oracle", o)),
        format,
    ))
}

fn cmd_jacobi(seq: &str, depth: usize, format: Format) -> Result<String, CliError> {
    if depth == 0 {
        return Err(CliError::Usage("--depth must be positive".into()));
    }
    let jp = jacobi_from_moments(&parse_seq(seq)?, depth)?;
    Ok(jacobi_output(
        &jp,
        json!({ "seq": seq, "depth": depth }),
        format,
    ))
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    engine: Engine,
    timings: bool,
    format: Format,
) -> Result<Output, CliError> {
    let id: SuiteId = suite.parse()?;
    let mut spec = SuiteSpec::new(id, seed)?;
    spec.engine = engine;
    spec.timings = timings;
    spec.threads = threads_from_env();
    let report = run_suite(&spec)?;
    let text = match format {
        Format::Pretty => report.to_pretty(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    Ok(Output {
        text,
        code: if report.ok() { 0 } else { 1 },
    })
}

/// Executes a parsed command line; the text still has to be written.
pub fn execute(cli: Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let ok = |text: String| Output { text, code: 0 };
    Ok(match cli.command {
        Command::Triangle {
            seq,
            s,
            t,
            big_t,
            zero_s,
            rows,
            output,
        } => (
            ok(cmd_triangle(seq, s, t, big_t, zero_s, rows, output.format)?),
            output.out,
        ),
        Command::Det {
            seq,
            n,
            m,
            via,
            cross_check,
            engine,
            output,
        } => (
            ok(cmd_det(
                &seq,
                n,
                m,
                via,
                cross_check,
                engine,
                output.format,
            )?),
            output.out,
        ),
        Command::ClosedForm {
            formula,
            n,
            m,
            x,
            a,
            b,
            big_q,
            c,
            cross_check,
            engine,
            output,
        } => (
            ok(cmd_closed_form(
                &formula,
                n,
                m,
                x,
                a,
                b,
                big_q,
                c,
                cross_check,
                engine,
                output.format,
            )?),
            output.out,
        ),
        Command::Jacobi { seq, depth, output } => {
            (ok(cmd_jacobi(&seq, depth, output.format)?), output.out)
        }
        Command::Verify {
            suite,
            seed,
            engine,
            timings,
            output,
        } => (
            cmd_verify(&suite, seed, engine, timings, output.format)?,
            output.out,
        ),
    })
}

/// Runs the program on `args` and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok((out, None)) => {
            print!("{}", out.text);
            out.code
        }
        Ok((out, Some(path))) => match std::fs::write(&path, &out.text) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
