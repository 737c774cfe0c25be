//! Argument handling and command dispatch for the `kmps` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmps::anick::{certify_strongly_free, parse_relations, quotient_hilbert_oracle};
use kmps::cartan::{
    canonical_cartan, classify, coxeter_of, is_symmetrizable, overall_class, validate, CartanMatrix, CoxeterMatrix,
    EdgeOrder, TypeClass,
};
use kmps::corpus::{self, Graph, Supports, VerifyOptions};
use kmps::exact_poly::{IntPoly, RatFunc, Series};
use kmps::graded_algebra::{
    free_product, lie_dims, presented_hilbert, strongly_free_quotient, strongly_positive_check, tensor_algebra,
    GradedPresentation, HilbertSeries,
};
use kmps::homotopy_ranks::ranks;
use kmps::weyl_series::{bfs_growth, poincare_flag, series_counts, BfsError, DEFAULT_BUDGET};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "kmps", version, about = "Flag-manifold Poincaré series and homotopy ranks of Kac-Moody groups")]
pub struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Output variable; `q` doubles every exponent (t = q^2).
    #[arg(long, global = true, value_enum, default_value_t = Var::T)]
    pub var: Var,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Var {
    T,
    Q,
}

impl Var {
    fn stride(self) -> usize {
        match self {
            Var::T => 1,
            Var::Q => 2,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite, affine or indefinite type of each block.
    Classify(MatrixArg),
    /// Poincaré series of the flag manifold as a reduced rational function.
    FlagSeries {
        #[command(flatten)]
        input: MatrixOrGraph,
        /// Also print the expansion through t^N.
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
    /// Rational homotopy ranks by both routes.
    Ranks {
        #[command(flatten)]
        input: MatrixArg,
        /// Truncation order.
        #[arg(short = 'N', default_value_t = 40)]
        order: usize,
    },
    /// Hilbert series of graded algebras.
    #[command(subcommand)]
    Hilbert(HilbertCmd),
    /// Strong-freeness certificates for relation files.
    #[command(subcommand)]
    Anick(AnickCmd),
    /// Brute-force checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// The shipped table of rank-3 and rank-4 series.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Args, Debug)]
pub struct MatrixArg {
    /// JSON file, or inline JSON: {"cartan": [[..]]}, {"coxeter": {"n", "edges": [[i, j, m]]}}
    /// (1-based, m = 0 for infinity) or {"graph": "3-II", "labels": [..]}.
    #[arg(short = 'm', long = "matrix", value_name = "FILE|JSON")]
    pub matrix: String,
}

#[derive(Args, Debug)]
pub struct MatrixOrGraph {
    #[arg(short = 'm', long = "matrix", value_name = "FILE|JSON", conflicts_with = "graph")]
    pub matrix: Option<String>,
    /// Table graph, e.g. 3-II.
    #[arg(long, requires = "labels")]
    pub graph: Option<String>,
    /// Comma-separated edge labels 1..4 (m = 3, 4, 6, inf).
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<u8>>,
}

#[derive(Subcommand, Debug)]
pub enum HilbertCmd {
    /// Tensor algebra on generators of the given degrees.
    Tensor {
        #[arg(short = 'd', long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(short = 'N', default_value_t = 40)]
        order: usize,
    },
    /// Quotient of a tensor algebra by a strongly free set.
    Quotient {
        #[arg(short = 'd', long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(short = 'e', long, value_delimiter = ',')]
        relations: Vec<usize>,
        #[arg(short = 'N', default_value_t = 40)]
        order: usize,
    },
    /// Free product of two connected graded algebras given by coefficients.
    FreeProduct {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        left: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        right: Vec<i64>,
    },
    /// Graded dimensions of the Lie algebra of a presentation.
    LieDims {
        #[arg(short = 'd', long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(short = 'e', long, value_delimiter = ',')]
        relations: Vec<usize>,
        #[arg(short = 'N', default_value_t = 40)]
        order: usize,
    },
    /// Necessary conditions for a denominator `Q` to be strongly positive.
    Positive {
        /// Ascending coefficients of Q.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        q: Vec<i64>,
        #[arg(short = 'N', default_value_t = 40)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AnickCmd {
    /// Certify a relation file and optionally compare with exact elimination.
    Check {
        #[arg(short = 'f', long)]
        file: PathBuf,
        /// Run the elimination oracle through this degree.
        #[arg(long, value_name = "D")]
        oracle: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Count Weyl group elements by length.
    Bfs {
        #[command(flatten)]
        input: MatrixOrGraph,
        #[arg(short = 'L', long = "max-length", default_value_t = 10)]
        max_length: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Fail unless the counts agree with the flag series.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// Recompute every entry and adjudicate discrepancies.
    Verify {
        #[arg(long)]
        graph: Option<String>,
        /// Write the errata file here.
        #[arg(long, value_name = "PATH")]
        errata: Option<PathBuf>,
        /// Table file; defaults to the shipped one.
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
        #[arg(short = 'L', default_value_t = 10)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// How each block covers its label vectors.
    Coverage {
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
    },
}

/// Collected result of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Bad input; exit 2.
    Input(String),
    /// A check did not pass; exit 1, with output still printed.
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx {
    json: bool,
    var: Var,
    out: String,
    err: String,
}

impl Ctx {
    fn emit(&mut self, value: Value, text: String) {
        if self.json {
            let mut obj = serde_json::Map::new();
            obj.insert("schema".into(), json!(SCHEMA));
            match value {
                Value::Object(m) => obj.extend(m),
                other => {
                    obj.insert("result".into(), other);
                }
            }
            self.out.push_str(&serde_json::to_string(&Value::Object(obj)).expect("json"));
            self.out.push('\n');
        } else {
            self.out.push_str(&text);
            if !text.ends_with('\n') {
                self.out.push('\n');
            }
        }
    }

    fn poly(&self, p: &IntPoly) -> IntPoly {
        spread(p, self.var.stride())
    }

    fn series(&self, s: &Series) -> Series {
        let p = spread(&s.to_poly(), self.var.stride());
        Series::from_poly(&p, s.order() * self.var.stride())
    }

    fn show_poly(&self, p: &IntPoly) -> String {
        match self.var {
            Var::T => p.to_string(),
            Var::Q => kmps::exact_poly::to_q_string(p),
        }
    }

    fn show_ratfunc(&self, r: &RatFunc) -> String {
        format!("({}) / ({})", self.show_poly(r.num()), self.show_poly(r.den()))
    }

    fn show_series(&self, s: &Series) -> String {
        let v = match self.var {
            Var::T => "t",
            Var::Q => "q",
        };
        format!(
            "{} + O({v}^{})",
            self.show_poly(&s.to_poly()),
            (s.order() + 1) * self.var.stride()
        )
    }
}

/// Insert `stride - 1` zeros between coefficients.
fn spread(p: &IntPoly, stride: usize) -> IntPoly {
    if stride == 1 {
        return p.clone();
    }
    let mut c = vec![num_bigint::BigInt::from(0); p.coeffs().len().saturating_sub(1) * stride + 1];
    for (k, v) in p.coeffs().iter().enumerate() {
        c[k * stride] = v.clone();
    }
    IntPoly::new(c)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parse arguments and run one command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut ctx = Ctx { json: cli.json, var: cli.var, out: String::new(), err: String::new() };
    let code = match dispatch(&mut ctx, cli.command) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(ctx.err, "kmps: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "kmps: error: {msg}");
            2
        }
    };
    Output { code, stdout: ctx.out, stderr: ctx.err }
}

/// Size the global pool from `KMPS_THREADS`; later calls are no-ops.
pub fn init_threads() {
    let threads = std::env::var("KMPS_THREADS").ok().and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> CmdResult {
    match cmd {
        Command::Classify(m) => cmd_classify(ctx, &m),
        Command::FlagSeries { input, expand } => cmd_flag_series(ctx, &input, expand),
        Command::Ranks { input, order } => cmd_ranks(ctx, &input, order),
        Command::Hilbert(h) => cmd_hilbert(ctx, h),
        Command::Anick(AnickCmd::Check { file, oracle, budget }) => cmd_anick(ctx, &file, oracle, budget),
        Command::Oracle(OracleCmd::Bfs { input, max_length, budget, check }) => {
            cmd_bfs(ctx, &input, max_length, budget, check)
        }
        Command::Corpus(CorpusCmd::Verify { graph, errata, table, length, budget }) => {
            cmd_verify(ctx, graph.as_deref(), errata.as_deref(), table.as_deref(), length, budget)
        }
        Command::Corpus(CorpusCmd::Coverage { table }) => cmd_coverage(ctx, table.as_deref()),
    }
}

/// A parsed matrix input.
pub enum MatrixInput {
    Cartan(CartanMatrix),
    Coxeter(CoxeterMatrix),
}

impl MatrixInput {
    pub fn coxeter(&self) -> CoxeterMatrix {
        match self {
            MatrixInput::Cartan(c) => coxeter_of(c),
            MatrixInput::Coxeter(x) => x.clone(),
        }
    }

    /// The Cartan matrix itself, or the canonical one for Coxeter data.
    pub fn cartan(&self) -> CartanMatrix {
        match self {
            MatrixInput::Cartan(c) => c.clone(),
            MatrixInput::Coxeter(x) => canonical_cartan(x),
        }
    }
}

/// Read `src` as inline JSON if it looks like an object, else as a path.
pub fn parse_matrix_input(src: &str) -> Result<MatrixInput, String> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| format!("reading {src}: {e}"))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{src}: {e}"))?;
    matrix_from_json(&v)
}

pub fn matrix_from_json(v: &Value) -> Result<MatrixInput, String> {
    if let Some(rows) = v.get("cartan") {
        let grid: Vec<Vec<i64>> =
            serde_json::from_value(rows.clone()).map_err(|e| format!("cartan: {e}"))?;
        return validate(&grid).map(MatrixInput::Cartan).map_err(|e| e.to_string());
    }
    if let Some(c) = v.get("coxeter") {
        let n = c.get("n").and_then(Value::as_u64).ok_or("coxeter: missing `n`")? as usize;
        let raw: Vec<[u32; 3]> = serde_json::from_value(c.get("edges").cloned().unwrap_or(json!([])))
            .map_err(|e| format!("coxeter edges: {e}"))?;
        let mut edges = Vec::with_capacity(raw.len());
        for [i, j, m] in raw {
            if i == 0 || j == 0 {
                return Err(format!("coxeter edge ({i}, {j}): vertices are 1-based"));
            }
            let o = EdgeOrder::from_m(m).map_err(|e| e.to_string())?;
            edges.push((i as usize - 1, j as usize - 1, o));
        }
        return CoxeterMatrix::from_edges(n, &edges).map(MatrixInput::Coxeter).map_err(|e| e.to_string());
    }
    if let Some(g) = v.get("graph") {
        let g: Graph = g.as_str().ok_or("graph must be a string")?.parse().map_err(|e: corpus::CorpusError| e.to_string())?;
        let labels: Vec<u8> = serde_json::from_value(v.get("labels").cloned().ok_or("missing `labels`")?)
            .map_err(|e| format!("labels: {e}"))?;
        return g.coxeter(&labels).map(MatrixInput::Coxeter).map_err(|e| e.to_string());
    }
    Err("expected a `cartan`, `coxeter` or `graph` key".into())
}

fn resolve(input: &MatrixOrGraph) -> Result<MatrixInput, Failure> {
    match (&input.matrix, &input.graph, &input.labels) {
        (Some(m), _, _) => Ok(parse_matrix_input(m).map_err(Failure::Input)?),
        (None, Some(g), Some(labels)) => {
            let g: Graph = g.parse()?;
            Ok(MatrixInput::Coxeter(g.coxeter(labels)?))
        }
        _ => Err(Failure::Input("give -m, or --graph with --labels".into())),
    }
}

fn cmd_classify(ctx: &mut Ctx, m: &MatrixArg) -> CmdResult {
    let input = parse_matrix_input(&m.matrix).map_err(Failure::Input)?;
    let c = input.cartan();
    let parts = classify(&c);
    let class = overall_class(&parts);
    let sym = is_symmetrizable(&c);
    let blocks: Vec<Value> = parts
        .iter()
        .map(|p| {
            let mut b = json!({
                "indices": p.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "type": p.class.label(),
            });
            if let TypeClass::Finite(names) = &p.class {
                b["catalog"] = json!(names);
            }
            b
        })
        .collect();
    let mut text = format!(
        "{}\nsymmetrizable: {}\ncomponents: {}\n",
        class.label(),
        if sym { "yes" } else { "no" },
        parts.len()
    );
    for p in &parts {
        let idx: Vec<String> = p.indices.iter().map(|i| (i + 1).to_string()).collect();
        let name = match &p.class {
            TypeClass::Finite(n) => format!("finite {}", n.join(" x ")),
            other => other.label().to_string(),
        };
        let _ = writeln!(text, "  {{{}}}: {name}", idx.join(","));
    }
    ctx.emit(
        json!({
            "type": class.label(),
            "symmetrizable": u8::from(sym),
            "components": parts.len(),
            "blocks": blocks,
        }),
        text,
    );
    Ok(())
}

/// `s * den == num` through the order of `s`.
fn expansion_consistent(r: &RatFunc, s: &Series) -> bool {
    let lhs = s.mul(&Series::from_poly(r.den(), s.order()));
    lhs == Series::from_poly(r.num(), s.order())
}

fn cmd_flag_series(ctx: &mut Ctx, input: &MatrixOrGraph, expand: Option<usize>) -> CmdResult {
    let x = resolve(input)?.coxeter();
    let p = poincare_flag(&x)?;
    let mut value = json!({ "num": to_value(&ctx.poly(p.num())), "den": to_value(&ctx.poly(p.den())) });
    let mut text = format!("P = {}\n", ctx.show_ratfunc(&p));
    if let Some(n) = expand {
        let s = p.expand(n);
        if !expansion_consistent(&p, &s) {
            return Err(Failure::Check("expansion disagrees with the rational form".into()));
        }
        value["expansion"] = to_value(&ctx.series(&s));
        let _ = writeln!(text, "  = {}", ctx.show_series(&s));
    }
    ctx.emit(value, text);
    Ok(())
}

fn cmd_ranks(ctx: &mut Ctx, input: &MatrixArg, order: usize) -> CmdResult {
    let c = parse_matrix_input(&input.matrix).map_err(Failure::Input)?.cartan();
    let rep = ranks(&c, order)?;
    let mut text = String::new();
    let _ = writeln!(text, "type {} rank {}, epsilon = {}", rep.class, rep.rank, rep.epsilon);
    let _ = writeln!(text, "P = {}", ctx.show_ratfunc(&rep.p));
    let b: Vec<String> = rep.numerator_brackets.iter().map(|d| format!("[{d}]")).collect();
    let _ = writeln!(text, "numerator {}", b.join(""));
    let _ = writeln!(text, "Q = {}", ctx.show_poly(&rep.q));
    for w in &rep.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let _ = writeln!(text, "{:>4} {:>12} {:>12}", "d", "i_d", "j_(d/2)");
    for d in 2..=2 * order {
        let k = d / 2;
        let i = rep.homotopy_rank(d);
        if d % 2 == 0 {
            let _ = writeln!(text, "{d:>4} {i:>12} {:>12}", rep.j.exponent(k));
        } else if i != num_bigint::BigInt::from(0) {
            let _ = writeln!(text, "{d:>4} {i:>12}");
        }
    }
    let mut value = to_value(&rep);
    if ctx.var == Var::Q {
        value["p"] = json!({ "num": to_value(&ctx.poly(rep.p.num())), "den": to_value(&ctx.poly(rep.p.den())) });
        value["q"] = to_value(&ctx.poly(&rep.q));
    }
    let consistent = rep.route_consistent;
    ctx.emit(value, text);
    if !consistent {
        return Err(Failure::Check("the two rank routes disagree".into()));
    }
    Ok(())
}

fn presentation(degrees: &[usize], relations: &[usize]) -> Result<GradedPresentation, Failure> {
    Ok(GradedPresentation::new(degrees.to_vec(), relations.to_vec())?)
}

fn emit_hilbert(ctx: &mut Ctx, h: &HilbertSeries, extra: Value) {
    let mut value = extra;
    value["series"] = to_value(&ctx.series(h.series()));
    let mut text = format!("H = {}\n", ctx.show_series(h.series()));
    if let Some(k) = h.first_negative() {
        value["first_negative"] = json!(k * ctx.var.stride());
        let _ = writeln!(text, "first negative coefficient at degree {}", k * ctx.var.stride());
    } else {
        value["first_negative"] = Value::Null;
    }
    ctx.emit(value, text);
}

fn cmd_hilbert(ctx: &mut Ctx, cmd: HilbertCmd) -> CmdResult {
    match cmd {
        HilbertCmd::Tensor { degrees, order } => {
            let h = tensor_algebra(&degrees, order)?;
            emit_hilbert(ctx, &h, json!({}));
        }
        HilbertCmd::Quotient { degrees, relations, order } => {
            let p = presentation(&degrees, &relations)?;
            let h = presented_hilbert(&p, order);
            let check = strongly_free_quotient(&tensor_algebra(p.gens(), order)?, p.rels());
            if check != h {
                return Err(Failure::Check("quotient formulas disagree".into()));
            }
            emit_hilbert(ctx, &h, json!({ "denominator": to_value(&ctx.poly(&p.denominator())) }));
        }
        HilbertCmd::FreeProduct { left, right } => {
            let order = left.len().min(right.len()).saturating_sub(1);
            let a = HilbertSeries::new(Series::from_i64s(&left, order))?;
            let b = HilbertSeries::new(Series::from_i64s(&right, order))?;
            emit_hilbert(ctx, &free_product(&a, &b), json!({}));
        }
        HilbertCmd::LieDims { degrees, relations, order } => {
            let p = presentation(&degrees, &relations)?;
            let l = lie_dims(&p, order);
            let mut text = String::new();
            for (k, v) in l.j.iter() {
                let _ = writeln!(text, "j_{} = {v}", k * ctx.var.stride());
            }
            if let Some(k) = l.first_negative {
                let _ = writeln!(text, "first negative at degree {}", k * ctx.var.stride());
            }
            let j: serde_json::Map<String, Value> = match to_value(&l.j) {
                Value::Object(m) => m
                    .into_iter()
                    .map(|(k, v)| {
                        let k = k.parse::<usize>().map_or(k, |d| (d * ctx.var.stride()).to_string());
                        (k, v)
                    })
                    .collect(),
                _ => serde_json::Map::new(),
            };
            ctx.emit(
                json!({ "j": j, "first_negative": l.first_negative.map(|k| k * ctx.var.stride()) }),
                text,
            );
        }
        HilbertCmd::Positive { q, order } => {
            let rep = strongly_positive_check(&IntPoly::from_i64s(&q), order)?;
            let text = format!(
                "{:?}\ngenerators {:?}\nrelations {:?}\n",
                rep.verdict,
                rep.presentation.gens(),
                rep.presentation.rels()
            );
            ctx.emit(to_value(&rep), text);
        }
    }
    Ok(())
}

fn cmd_anick(ctx: &mut Ctx, file: &Path, oracle: Option<usize>, budget: usize) -> CmdResult {
    let src = std::fs::read_to_string(file).map_err(|e| format!("reading {}: {e}", file.display()))?;
    let sys = parse_relations(&src)?;
    let cert = certify_strongly_free(&sys.alphabet, &sys.relations)?;
    let mut value = to_value(&cert);
    let words: Vec<String> = cert.high_terms.iter().map(|w| sys.alphabet.show(w)).collect();
    value["high_terms_text"] = json!(words);
    let mut text = format!("{:?}\nhigh terms: {}\n", cert.verdict, words.join(", "));
    if let Some(w) = &cert.witness {
        let _ = writeln!(text, "witness: {w:?}");
    }
    let mut mismatch = false;
    if let Some(d) = oracle {
        let dims = quotient_hilbert_oracle(&sys.alphabet, &sys.relations, d, budget)?;
        let mut rel_degrees = Vec::new();
        for r in &sys.relations {
            rel_degrees.push(r.degree(&sys.alphabet)?);
        }
        let predicted = strongly_free_quotient(&tensor_algebra(&sys.alphabet.letter_degrees(), d)?, &rel_degrees);
        let predicted = series_counts(predicted.series());
        let agrees = predicted.as_deref() == Some(&dims[..]);
        mismatch = cert.verdict == kmps::anick::Certificate::Certified && !agrees;
        value["oracle"] = json!(dims);
        value["oracle_matches_minimal_series"] = json!(agrees);
        let _ = writeln!(text, "oracle dims: {dims:?}");
        let _ = writeln!(text, "matches minimal series: {agrees}");
    }
    ctx.emit(value, text);
    if mismatch {
        return Err(Failure::Check("certified set but elimination disagrees".into()));
    }
    Ok(())
}

fn cmd_bfs(ctx: &mut Ctx, input: &MatrixOrGraph, max_length: usize, budget: usize, check: bool) -> CmdResult {
    let m = resolve(input)?;
    let c = m.cartan();
    let (counts, complete) = match bfs_growth(&c, max_length, budget) {
        Ok(g) => (g.counts, true),
        Err(BfsError::BudgetExceeded { partial, .. }) => (partial.counts, false),
    };
    let mut value = json!({ "counts": counts, "complete": complete });
    let mut text = format!("{counts:?}\n");
    let mut agrees = None;
    if check {
        let p = poincare_flag(&m.coxeter())?;
        let s = series_counts(&p.expand(counts.len() - 1));
        let ok = s.as_deref() == Some(&counts[..]);
        value["agrees_with_flag_series"] = json!(ok);
        let _ = writeln!(text, "agrees with flag series: {ok}");
        agrees = Some(ok);
    }
    ctx.emit(value, text);
    if !complete {
        return Err(Failure::Check(format!("state budget {budget} exceeded")));
    }
    if agrees == Some(false) {
        return Err(Failure::Check("growth counts disagree with the flag series".into()));
    }
    Ok(())
}

fn load_table(table: Option<&Path>) -> Result<Vec<corpus::TableEntry>, Failure> {
    Ok(match table {
        Some(p) => corpus::load(p)?,
        None => corpus::shipped(),
    })
}

fn cmd_verify(
    ctx: &mut Ctx,
    graph: Option<&str>,
    errata: Option<&Path>,
    table: Option<&Path>,
    length: usize,
    budget: usize,
) -> CmdResult {
    let all = load_table(table)?;
    let selected: Vec<corpus::TableEntry> = match graph {
        Some(g) => {
            let g: Graph = g.parse()?;
            all.iter().filter(|e| e.graph == g).cloned().collect()
        }
        None => all.clone(),
    };
    let options = VerifyOptions { bfs_length: length, max_bfs_length: length.max(16), budget };
    let start = Instant::now();
    let report = corpus::verify(&selected, &options)?;
    let _ = writeln!(ctx.err, "verified {} entries in {:.2?}", report.total, start.elapsed());
    if let Some(path) = errata {
        let e = corpus::errata(&report, &all, &options)?;
        let body = serde_json::to_string_pretty(&e).expect("json") + "\n";
        std::fs::write(path, body).map_err(|err| format!("writing {}: {err}", path.display()))?;
    }
    let mut text = format!(
        "{} entries: {} match, {} reciprocal, {} other mismatch, {} unresolved\n",
        report.total, report.matched, report.reciprocal, report.mismatched, report.unresolved
    );
    let mut listed = Vec::new();
    for e in report.discrepancies() {
        let a = e.adjudication().expect("discrepancy");
        let kind = match e.outcome {
            corpus::Outcome::Reciprocal { .. } => "reciprocal",
            _ => "mismatch",
        };
        let supports = match a.supports {
            Supports::Computed => "computed",
            Supports::Printed => "printed",
            Supports::Neither => "neither",
            Supports::Undecided => "undecided",
        };
        let _ = writeln!(
            text,
            "  {} {} {:?}: {kind}, oracle supports {supports} (bfs through {})",
            e.graph,
            e.index,
            e.labels,
            a.bfs.len() - 1
        );
        listed.push(json!({
            "graph": e.graph,
            "index": e.index,
            "kind": kind,
            "supports": a.supports,
        }));
    }
    let ok = report.ok();
    ctx.emit(
        json!({
            "total": report.total,
            "matched": report.matched,
            "reciprocal": report.reciprocal,
            "mismatched": report.mismatched,
            "unresolved": report.unresolved,
            "discrepancies": listed,
        }),
        text,
    );
    if !ok {
        return Err(Failure::Check(format!("{} unresolved mismatches", report.unresolved)));
    }
    Ok(())
}

fn cmd_coverage(ctx: &mut Ctx, table: Option<&Path>) -> CmdResult {
    let entries = load_table(table)?;
    let cov = corpus::coverage(&entries);
    let mut text = format!("{:<6} {:>7} {:>7} {:>7} {:>9}\n", "graph", "entries", "orbits", "of", "multisets");
    for c in &cov {
        let _ = writeln!(
            text,
            "{:<6} {:>7} {:>7} {:>7} {:>9}",
            c.graph.name(),
            c.entries,
            c.distinct_orbits,
            c.orbit_count,
            c.multiset_count
        );
    }
    ctx.emit(json!({ "coverage": to_value(&cov) }), text);
    Ok(())
}
