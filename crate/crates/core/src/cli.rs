//! Problem files, command execution and certificate rendering for the `tc` binary.
//!
//! A problem file is a flat list of `key = value` lines:
//!
//! ```text
//! char = 5
//! ext_degree = 1            # optional
//! cubic = "x^3 + y^3 + z^3"
//! generators = ["x^2", "y^2", "z^2"]
//! candidate = "x*y*z"       # check only
//! e_max = 4                 # optional
//! ```

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::bundle::{cohomology_dims, decompose_bundle, syzygy_bundle};
use crate::closure::{
    frobenius_member, tight_closure_ideal, tight_closure_member, FrobeniusResult, Regime, SummandReport, Verdict,
};
use crate::error::Error;
use crate::field::{make_field, Field};
use crate::polyring::{parse, CubicCurve, IdealData, Polynomial};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_EMAX: u32 = 4;
/// Largest `dim R_{q d_0}` the default Frobenius search will eliminate in.
pub const FROBENIUS_DIM_CAP: u64 = 2500;

/// Frobenius depth used when neither the file nor the command line sets one:
/// `DEFAULT_EMAX`, cut back while `R_{p^e d_0}` exceeds `FROBENIUS_DIM_CAP`.
pub fn default_e_max(p: u64, d0: u32) -> u32 {
    let mut e = 0;
    while e < DEFAULT_EMAX {
        match p.checked_pow(e + 1) {
            Some(q) if 3 * q * d0.max(1) as u64 <= FROBENIUS_DIM_CAP => e += 1,
            _ => break,
        }
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorCode {
    #[serde(rename = "E_SYNTAX")]
    Syntax,
    #[serde(rename = "E_CHAR")]
    Char,
    #[serde(rename = "E_EXT")]
    Ext,
    #[serde(rename = "E_MISSING_FIELD")]
    MissingField,
    #[serde(rename = "E_CUBIC")]
    Cubic,
    #[serde(rename = "E_SINGULAR")]
    Singular,
    #[serde(rename = "E_NOT_PRIMARY")]
    NotPrimary,
    #[serde(rename = "E_POLY")]
    Poly,
    #[serde(rename = "E_GENERATORS")]
    Generators,
    #[serde(rename = "E_CANDIDATE")]
    Candidate,
    #[serde(rename = "E_UNDECIDED")]
    Undecided,
    #[serde(rename = "E_INTERNAL")]
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E_SYNTAX",
            ErrorCode::Char => "E_CHAR",
            ErrorCode::Ext => "E_EXT",
            ErrorCode::MissingField => "E_MISSING_FIELD",
            ErrorCode::Cubic => "E_CUBIC",
            ErrorCode::Singular => "E_SINGULAR",
            ErrorCode::NotPrimary => "E_NOT_PRIMARY",
            ErrorCode::Poly => "E_POLY",
            ErrorCode::Generators => "E_GENERATORS",
            ErrorCode::Candidate => "E_CANDIDATE",
            ErrorCode::Undecided => "E_UNDECIDED",
            ErrorCode::Internal => "E_INTERNAL",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCode::Undecided => 3,
            ErrorCode::Internal => 4,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliError {
    pub code: ErrorCode,
    pub line: Option<usize>,
    pub message: String,
}

impl CliError {
    fn new(code: ErrorCode, line: Option<usize>, message: impl Into<String>) -> CliError {
        CliError { code, line, message: message.into() }
    }

    /// Errors from the library after parsing.
    fn from_lib(e: Error) -> CliError {
        let code = match &e {
            Error::Undecided(_) => ErrorCode::Undecided,
            Error::NotHomogeneous | Error::BadCandidate => ErrorCode::Candidate,
            _ => ErrorCode::Internal,
        };
        CliError::new(code, None, e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(l) => write!(f, "error[{}] line {l}: {}", self.code.as_str(), self.message),
            None => write!(f, "error[{}]: {}", self.code.as_str(), self.message),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    char: Option<Spanned<i64>>,
    ext_degree: Option<Spanned<i64>>,
    cubic: Option<Spanned<String>>,
    generators: Option<Spanned<Vec<String>>>,
    candidate: Option<Spanned<String>>,
    e_max: Option<Spanned<i64>>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Field,
    pub curve: CubicCurve,
    pub ideal: IdealData,
    pub candidate: Option<Polynomial>,
    pub e_max: Option<u32>,
    candidate_line: Option<usize>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let raw: RawProblem = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of(text, s.start));
        CliError::new(ErrorCode::Syntax, line, e.message().trim().to_string())
    })?;
    let line = |s: std::ops::Range<usize>| Some(line_of(text, s.start));
    let missing = |k: &str| CliError::new(ErrorCode::MissingField, None, format!("missing field `{k}`"));

    let ch = raw.char.ok_or_else(|| missing("char"))?;
    let p = u64::try_from(*ch.get_ref())
        .ok()
        .filter(|&p| crate::field::is_prime(p))
        .ok_or_else(|| CliError::new(ErrorCode::Char, line(ch.span()), format!("characteristic {} is not prime", ch.get_ref())))?;
    let (k, k_line) = match &raw.ext_degree {
        None => (1, None),
        Some(s) => (*s.get_ref(), line(s.span())),
    };
    let k = usize::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::new(ErrorCode::Ext, k_line, format!("extension degree {k} must be at least 1")))?;
    let field = make_field(p, k).map_err(|e| match e {
        Error::InvalidCharacteristic(_) => CliError::new(ErrorCode::Char, line(ch.span()), e.to_string()),
        _ => CliError::new(ErrorCode::Ext, k_line, e.to_string()),
    })?;

    let cubic_s = raw.cubic.ok_or_else(|| missing("cubic"))?;
    let cl = line(cubic_s.span());
    let cubic = parse(&field, cubic_s.get_ref()).map_err(|e| CliError::new(ErrorCode::Poly, cl, e.to_string()))?;
    if !cubic.is_homogeneous() || cubic.degree() != Some(3) {
        return Err(CliError::new(ErrorCode::Cubic, cl, "F must be a homogeneous cubic"));
    }
    let curve = CubicCurve::new(&field, cubic).map_err(|e| match e {
        Error::Singular => CliError::new(ErrorCode::Singular, cl, "the cubic curve is singular"),
        other => CliError::new(ErrorCode::Cubic, cl, other.to_string()),
    })?;

    let gens_s = raw.generators.ok_or_else(|| missing("generators"))?;
    let gl = line(gens_s.span());
    let gens = gens_s
        .get_ref()
        .iter()
        .map(|g| parse(&field, g).map_err(|e| CliError::new(ErrorCode::Poly, gl, format!("generator `{g}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = IdealData::new(&curve, gens).map_err(|e| match e {
        Error::NotPrimary => CliError::new(ErrorCode::NotPrimary, gl, "the ideal is not primary to the irrelevant ideal"),
        other => CliError::new(ErrorCode::Generators, gl, other.to_string()),
    })?;

    let (candidate, candidate_line) = match raw.candidate {
        None => (None, None),
        Some(c) => {
            let l = line(c.span());
            let g = parse(&field, c.get_ref()).map_err(|e| CliError::new(ErrorCode::Poly, l, e.to_string()))?;
            if g.is_zero() || !g.is_homogeneous() {
                return Err(CliError::new(ErrorCode::Candidate, l, "candidate must be a nonzero homogeneous polynomial"));
            }
            (Some(g), l)
        }
    };
    let e_max = match raw.e_max {
        None => None,
        Some(s) => Some(
            u32::try_from(*s.get_ref())
                .map_err(|_| CliError::new(ErrorCode::Syntax, line(s.span()), "e_max must be a nonnegative integer"))?,
        ),
    };
    Ok(Problem { field, curve, ideal, candidate, e_max, candidate_line })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check { e_max: Option<u32> },
    Closure,
    Decompose { degree: Option<i64> },
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub field: String,
    pub cubic: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    #[serde(flatten)]
    pub problem: ProblemSummary,
    pub candidate: String,
    pub degree: i64,
    pub verdict: Verdict,
    pub in_ideal: bool,
    pub formula_degree: i64,
    pub splitting_degree: usize,
    pub plus_closure_equal: bool,
    pub summands: Vec<SummandReport>,
    /// Present on supersingular curves.
    pub frobenius: Option<FrobeniusResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDoc {
    pub degree: i64,
    pub regime: Regime,
    pub ring_dim: usize,
    pub ideal_dim: usize,
    pub closure_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDoc {
    #[serde(flatten)]
    pub problem: ProblemSummary,
    pub closure_generators: Vec<String>,
    pub mu_min: String,
    pub mu_max: String,
    pub k: String,
    pub semistable: bool,
    pub full_from: i64,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub rank: i64,
    pub degree: i64,
    pub h0: i64,
    pub h1: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeDoc {
    #[serde(flatten)]
    pub problem: ProblemSummary,
    pub degree: i64,
    pub rank: i64,
    pub bundle_degree: i64,
    pub end_dim: usize,
    pub radical_dim: usize,
    pub splitting_degree: usize,
    pub summands: Vec<SummandDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoDoc {
    #[serde(flatten)]
    pub problem: ProblemSummary,
    pub modulus: String,
    pub smooth: bool,
    pub hasse: String,
    pub supersingular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Document {
    Check(CheckDoc),
    Closure(ClosureDoc),
    Decompose(DecomposeDoc),
    Info(InfoDoc),
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub schema: u32,
    #[serde(flatten)]
    pub document: Document,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ErrorEnvelope {
    pub schema: u32,
    pub error: CliError,
}

impl Document {
    /// 0 success or member, 1 non-member.
    pub fn exit_code(&self) -> i32 {
        match self {
            Document::Check(c) if c.verdict == Verdict::NonMember => 1,
            _ => 0,
        }
    }
}

fn ratio(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn summary(p: &Problem) -> ProblemSummary {
    let f = &p.field;
    ProblemSummary {
        field: if f.k() == 1 { format!("F_{}", f.p()) } else { format!("F_{}^{}", f.p(), f.k()) },
        cubic: p.curve.cubic().display(f),
        generators: p.ideal.gens().iter().map(|g| g.display(f)).collect(),
    }
}

pub fn run(cmd: Command, p: &Problem) -> Result<Document, CliError> {
    let f = &p.field;
    match cmd {
        Command::Check { e_max } => {
            let c = p.candidate.as_ref().ok_or_else(|| {
                CliError::new(ErrorCode::MissingField, None, "`check` needs a `candidate`")
            })?;
            let cert = tight_closure_member(&p.ideal, c).map_err(CliError::from_lib)?;
            let frobenius = if p.curve.supersingular() {
                let e = e_max.or(p.e_max).unwrap_or_else(|| default_e_max(f.p(), c.degree().unwrap()));
                Some(frobenius_member(&p.ideal, c, e).map_err(CliError::from_lib)?)
            } else {
                None
            };
            Ok(Document::Check(CheckDoc {
                problem: summary(p),
                candidate: c.display(f),
                degree: cert.degree,
                verdict: cert.verdict,
                in_ideal: cert.in_ideal,
                formula_degree: cert.formula_degree,
                splitting_degree: cert.splitting_degree,
                plus_closure_equal: cert.plus_closure_equal,
                summands: cert.summands,
                frobenius,
            }))
        }
        Command::Closure => {
            if p.candidate.is_some() {
                return Err(CliError::new(ErrorCode::Candidate, p.candidate_line, "`closure` takes no candidate"));
            }
            let c = tight_closure_ideal(&p.ideal).map_err(CliError::from_lib)?;
            Ok(Document::Closure(ClosureDoc {
                problem: summary(p),
                closure_generators: c.generators.iter().map(|g| g.display(f)).collect(),
                mu_min: ratio(c.slopes.mu_min),
                mu_max: ratio(c.slopes.mu_max),
                k: ratio(c.slopes.k),
                semistable: c.slopes.semistable,
                full_from: c.full_from,
                pieces: c
                    .pieces
                    .iter()
                    .map(|q| PieceDoc {
                        degree: q.degree,
                        regime: q.regime,
                        ring_dim: q.ring_dim,
                        ideal_dim: q.ideal_dim,
                        closure_dim: q.closure.dim(),
                    })
                    .collect(),
            }))
        }
        Command::Decompose { degree } => {
            let m = match (degree, &p.candidate) {
                (Some(m), _) => m,
                (None, Some(c)) => c.degree().unwrap() as i64,
                (None, None) => {
                    return Err(CliError::new(ErrorCode::MissingField, None, "`decompose` needs --degree or a `candidate`"))
                }
            };
            let b = syzygy_bundle(&p.ideal, m).map_err(CliError::from_lib)?;
            let d = decompose_bundle(&b).map_err(CliError::from_lib)?;
            let summands = d
                .summands
                .iter()
                .map(|s| {
                    let (h0, h1) = cohomology_dims(&s.module, 0)?;
                    Ok(SummandDoc { rank: s.rank, degree: s.degree, h0, h1 })
                })
                .collect::<crate::Result<Vec<_>>>()
                .map_err(CliError::from_lib)?;
            Ok(Document::Decompose(DecomposeDoc {
                problem: summary(p),
                degree: m,
                rank: d.bundle.rank(),
                bundle_degree: d.bundle.degree(),
                end_dim: d.end.dim(),
                radical_dim: d.radical.dim(),
                splitting_degree: d.extension_degree(),
                summands,
            }))
        }
        Command::Info => Ok(Document::Info(InfoDoc {
            problem: summary(p),
            modulus: f.modulus_string(),
            smooth: true,
            hasse: f.fmt_elem(p.curve.hasse()),
            supersingular: p.curve.supersingular(),
        })),
    }
}

pub fn render_json(doc: &Document) -> String {
    let env = Envelope { schema: SCHEMA, document: doc.clone() };
    serde_json::to_string_pretty(&env).expect("documents serialize") + "\n"
}

pub fn render_error_json(e: &CliError) -> String {
    let env = ErrorEnvelope { schema: SCHEMA, error: e.clone() };
    serde_json::to_string_pretty(&env).expect("errors serialize") + "\n"
}

fn kv(out: &mut String, k: &str, v: impl std::fmt::Display) {
    let _ = writeln!(out, "{k:<18}{v}");
}

fn problem_text(out: &mut String, p: &ProblemSummary) {
    kv(out, "field", &p.field);
    kv(out, "cubic", &p.cubic);
    kv(out, "ideal", format!("({})", p.generators.join(", ")));
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Member => "member",
        Verdict::NonMember => "non-member",
    }
}

fn regime_str(r: Regime) -> &'static str {
    match r {
        Regime::BelowMin => "below-min",
        Regime::Criterion => "criterion",
        Regime::AboveMax => "above-max",
    }
}

pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Check(c) => {
            problem_text(&mut out, &c.problem);
            kv(&mut out, "candidate", &c.candidate);
            kv(&mut out, "degree", c.degree);
            kv(&mut out, "verdict", verdict_str(c.verdict));
            kv(&mut out, "in_ideal", c.in_ideal);
            kv(&mut out, "formula_degree", c.formula_degree);
            kv(&mut out, "splitting_degree", c.splitting_degree);
            kv(&mut out, "plus_closure", if c.plus_closure_equal { "equal to tight closure" } else { "unknown" });
            if let Some(fr) = c.frobenius {
                let s = match fr {
                    FrobeniusResult::Found { e } => format!("found at e = {e}"),
                    FrobeniusResult::NotFound { e_max } => format!("not found for e <= {e_max}"),
                };
                kv(&mut out, "frobenius", s);
            }
            out.push_str("summands\n");
            out.push_str("    rank  degree  class_vanishes\n");
            for s in &c.summands {
                let _ = writeln!(out, "  {:>6}  {:>6}  {}", s.rank, s.degree, s.class_component_vanishes);
            }
        }
        Document::Closure(c) => {
            problem_text(&mut out, &c.problem);
            kv(&mut out, "closure", format!("({})", c.closure_generators.join(", ")));
            kv(&mut out, "mu_min", &c.mu_min);
            kv(&mut out, "mu_max", &c.mu_max);
            kv(&mut out, "k", &c.k);
            kv(&mut out, "semistable", c.semistable);
            kv(&mut out, "full_from", c.full_from);
            out.push_str("pieces\n");
            let _ = writeln!(out, "  {:>6}  {:<10}  {:>6}  {:>6}  {:>7}", "degree", "regime", "ring", "ideal", "closure");
            for q in &c.pieces {
                let _ = writeln!(
                    out,
                    "  {:>6}  {:<10}  {:>6}  {:>6}  {:>7}",
                    q.degree,
                    regime_str(q.regime),
                    q.ring_dim,
                    q.ideal_dim,
                    q.closure_dim
                );
            }
        }
        Document::Decompose(d) => {
            problem_text(&mut out, &d.problem);
            kv(&mut out, "degree", d.degree);
            kv(&mut out, "rank", d.rank);
            kv(&mut out, "bundle_degree", d.bundle_degree);
            kv(&mut out, "end_dim", d.end_dim);
            kv(&mut out, "radical_dim", d.radical_dim);
            kv(&mut out, "splitting_degree", d.splitting_degree);
            out.push_str("summands\n");
            let _ = writeln!(out, "  {:>6}  {:>6}  {:>4}  {:>4}", "rank", "degree", "h0", "h1");
            for s in &d.summands {
                let _ = writeln!(out, "  {:>6}  {:>6}  {:>4}  {:>4}", s.rank, s.degree, s.h0, s.h1);
            }
        }
        Document::Info(i) => {
            problem_text(&mut out, &i.problem);
            kv(&mut out, "modulus", &i.modulus);
            kv(&mut out, "smooth", i.smooth);
            kv(&mut out, "hasse", &i.hasse);
            kv(&mut out, "supersingular", i.supersingular);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARES: &str = "char = 5\ncubic = \"x^3 + y^3 + z^3\"\ngenerators = [\"x^2\", \"y^2\", \"z^2\"]\ncandidate = \"x*y*z\"\n";

    fn err(text: &str) -> CliError {
        parse_problem(text).unwrap_err()
    }

    #[test]
    fn parses_well_formed_file() {
        let p = parse_problem(SQUARES).unwrap();
        assert_eq!(p.ideal.n(), 3);
        assert!(p.candidate.is_some());
        assert_eq!(p.e_max, None);
    }

    #[test]
    fn error_codes() {
        assert_eq!(err(&SQUARES.replace("char = 5", "char = 4")).code, ErrorCode::Char);
        assert_eq!(err(&SQUARES.replace("char = 5", "char = 4")).line, Some(1));
        assert_eq!(err(&SQUARES.replace("cubic = \"x^3 + y^3 + z^3\"\n", "")).code, ErrorCode::MissingField);
        assert_eq!(err(&SQUARES.replace("char = 5", "char = 5\next_degree = 0")).code, ErrorCode::Ext);
        assert_eq!(err(&SQUARES.replace("x^3 + y^3 + z^3", "x^2*y + z^2*y")).code, ErrorCode::Singular);
        assert_eq!(err(&SQUARES.replace("x^3 + y^3 + z^3", "x^2 + y^2")).code, ErrorCode::Cubic);
        assert_eq!(err(&SQUARES.replace("\"y^2\", \"z^2\"]", "\"x*y\"]")).code, ErrorCode::NotPrimary);
        assert_eq!(err(&SQUARES.replace("[\"x^2\", \"y^2\", \"z^2\"]", "[\"x^2\"]")).code, ErrorCode::Generators);
        assert_eq!(err(&SQUARES.replace("\"z^2\"]", "\"z^2 + \"]")).code, ErrorCode::Poly);
        assert_eq!(err(&SQUARES.replace("x*y*z", "x*y + z")).code, ErrorCode::Candidate);
        let e = err(&SQUARES.replace("char = 5", "char = 5\ncolour = 3"));
        assert_eq!((e.code, e.line), (ErrorCode::Syntax, Some(2)));
        assert_eq!(err("char = = 5").code, ErrorCode::Syntax);
    }

    #[test]
    fn closure_rejects_candidate() {
        let p = parse_problem(SQUARES).unwrap();
        let e = run(Command::Closure, &p).unwrap_err();
        assert_eq!((e.code, e.line), (ErrorCode::Candidate, Some(4)));
    }

    #[test]
    fn json_round_trip() {
        let p = parse_problem(SQUARES).unwrap();
        let doc = run(Command::Check { e_max: Some(1) }, &p).unwrap();
        let text = render_json(&doc);
        let back: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back.schema, 1);
        assert_eq!(back.document, doc);
        assert_eq!(doc.exit_code(), 0);
        assert!(render_text(&doc).contains("verdict           member"));
    }

    #[test]
    fn default_depth() {
        assert_eq!(default_e_max(2, 3), 4);
        assert_eq!(default_e_max(5, 3), 3);
        assert_eq!(default_e_max(7, 3), 2);
        assert_eq!(default_e_max(65521, 1), 0);
    }
}
