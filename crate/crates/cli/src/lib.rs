//! Command implementations behind the `torsion-tower` binary. Every command
//! produces [`ReportJson`] values; the binary only parses arguments, prints
//! and maps errors to exit codes.

use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use torsion_tower_core::classifier::{classify, ClassifyError, ClassifyOptions, GrowthReport, Verdict};
use torsion_tower_core::ec::{Curve, EcError};
use torsion_tower_core::generator::{gen_from_prime, gen_from_t, generate, Family, GenError, Generated};
use torsion_tower_core::poly::{factor_over_q, IntPoly, PolyError};
use torsion_tower_core::torsion::{rational_torsion, TorsionData, TorsionGroup};

pub const SCHEMA_VERSION: u32 = 1;

/// The fixture file shipped with the crate, used when no path is given.
pub const EMBEDDED_FIXTURES: &str = include_str!("../fixtures/curves.jsonl");

pub const FIXTURES_ENV: &str = "TORSION_TOWER_FIXTURES";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read fixtures {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Ec(#[from] EcError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

impl CliError {
    /// 2 for bad input, 1 for failures of the computation itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Classify(ClassifyError::NotPrime(_)) => 2,
            CliError::Classify(_) => 1,
            CliError::Gen(
                GenError::NotSplit(_)
                | GenError::BadExponent { .. }
                | GenError::NeedsParameter(_)
                | GenError::NeedsPrime(_)
                | GenError::UnsupportedOrder(_)
                | GenError::Singular(_)
                | GenError::WrongRationalTorsion(_)
                | GenError::Ec(_),
            ) => 2,
            CliError::Gen(_) => 1,
            _ => 2,
        }
    }
}

/// One row of the fixture file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    pub a_invariants: [i64; 5],
    pub expected_base: TorsionGroup,
    pub expected_tower_p2: Option<TorsionGroup>,
    pub expected_tower_p3: Option<TorsionGroup>,
    pub provenance: String,
}

impl CurveRecord {
    pub fn curve(&self) -> Result<Curve, EcError> {
        Curve::from_ints(self.a_invariants)
    }

    /// `(p, expected tower)` pairs this row makes a claim about.
    pub fn expectations(&self) -> Vec<(u64, TorsionGroup)> {
        let mut out = Vec::new();
        if let Some(g) = self.expected_tower_p2 {
            out.push((2, g));
        }
        if let Some(g) = self.expected_tower_p3 {
            out.push((3, g));
        }
        out
    }
}

/// Where fixture rows come from: a file, or the embedded copy.
#[derive(Clone, Debug, Default)]
pub struct FixtureSource {
    pub path: Option<PathBuf>,
}

impl FixtureSource {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        FixtureSource { path: Some(path.into()) }
    }

    pub fn load(&self) -> Result<Vec<CurveRecord>, CliError> {
        match &self.path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
                parse_fixtures(&text)
            }
            None => parse_fixtures(EMBEDDED_FIXTURES),
        }
    }

    pub fn describe(&self) -> String {
        match &self.path {
            Some(p) => p.display().to_string(),
            None => "embedded".to_string(),
        }
    }
}

/// JSON lines, blank lines ignored. Rejects singular curves and duplicate
/// labels.
pub fn parse_fixtures(text: &str) -> Result<Vec<CurveRecord>, CliError> {
    let mut out: Vec<CurveRecord> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Fixture { line: i + 1, msg };
        let rec: CurveRecord = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        rec.curve().map_err(|e| err(format!("{}: {e}", rec.label)))?;
        if out.iter().any(|r| r.label == rec.label) {
            return Err(err(format!("duplicate label {}", rec.label)));
        }
        out.push(rec);
    }
    Ok(out)
}

/// A curve given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    AInvariants([BigInt; 5]),
    Label(String),
}

impl CurveSpec {
    /// `a1,a2,a3,a4,a6` as integers.
    pub fn parse_a(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(CliError::Usage(format!("--a needs five comma-separated integers, got {s:?}")));
        }
        let mut a: [BigInt; 5] = Default::default();
        for (slot, p) in a.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| CliError::Usage(format!("not an integer: {p:?}")))?;
        }
        Ok(CurveSpec::AInvariants(a))
    }

    fn resolve(&self, fixtures: &FixtureSource) -> Result<(Curve, InputEcho), CliError> {
        match self {
            CurveSpec::AInvariants(a) => {
                let curve = Curve::from_bigints(a)?;
                let echo = InputEcho { a_invariants: Some(a.iter().map(|x| x.to_string()).collect()), ..Default::default() };
                Ok((curve, echo))
            }
            CurveSpec::Label(l) => {
                let rows = fixtures.load()?;
                let rec = rows.iter().find(|r| &r.label == l).ok_or_else(|| CliError::UnknownLabel(l.clone()))?;
                let echo = InputEcho {
                    label: Some(l.clone()),
                    a_invariants: Some(rec.a_invariants.iter().map(|x| x.to_string()).collect()),
                    ..Default::default()
                };
                Ok((rec.curve()?, echo))
            }
        }
    }
}

/// What the command was asked, echoed into its report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_invariants: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: IntPoly,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub content: String,
    pub factors: Vec<FactorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub p: u64,
    pub expected_base: TorsionGroup,
    pub expected_tower: TorsionGroup,
    pub base: TorsionGroup,
    pub tower: TorsionGroup,
    pub verdict: Verdict,
    pub matches: bool,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} p={}: expected {} -> {}, got {} -> {}",
            self.label, self.p, self.expected_base, self.expected_tower, self.base, self.tower
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub rows: Vec<TableRow>,
    pub matched: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportBody {
    Torsion(TorsionData),
    Classify(GrowthReport),
    Generate(Box<Generated>),
    VerifyTables(TableSummary),
    Factor(FactorReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    pub result: ReportBody,
}

impl ReportJson {
    fn new(command: &str, input: InputEcho, result: ReportBody) -> Self {
        ReportJson { schema_version: SCHEMA_VERSION, command: command.to_string(), input, result }
    }

    /// Whether the report counts as success: resolved verdicts, and matching
    /// expectations where there are any.
    pub fn ok(&self) -> bool {
        match &self.result {
            ReportBody::Torsion(_) | ReportBody::Factor(_) => true,
            ReportBody::Classify(r) => r.verdict == Verdict::Resolved,
            ReportBody::Generate(g) => g.matches && g.report.verdict == Verdict::Resolved,
            ReportBody::VerifyTables(s) => s.matched == s.total,
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let r = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        r.expect("reports serialize")
    }
}

pub fn cmd_torsion(spec: &CurveSpec, fixtures: &FixtureSource) -> Result<ReportJson, CliError> {
    let (curve, echo) = spec.resolve(fixtures)?;
    Ok(ReportJson::new("torsion", echo, ReportBody::Torsion(rational_torsion(&curve))))
}

pub fn cmd_classify(spec: &CurveSpec, p: u64, opts: &ClassifyOptions, fixtures: &FixtureSource) -> Result<ReportJson, CliError> {
    let (curve, mut echo) = spec.resolve(fixtures)?;
    echo.p = Some(p);
    echo.sample_size = Some(opts.sample_size);
    let report = classify(&curve, p, opts)?;
    Ok(ReportJson::new("classify", echo, ReportBody::Classify(report)))
}

/// How `generate` picks its curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerateMode {
    Prime(u64),
    Param(String),
    Count(usize),
}

/// Resolves the family argument: an id, with `twist2` taking its order from
/// `n` (or inline as `twist2:N`).
pub fn parse_family(id: &str, n: Option<u64>) -> Result<Family, CliError> {
    let fam = match (id.trim(), n) {
        ("twist2", Some(n)) => Family::TwistBy2 { n },
        ("twist2", None) => return Err(CliError::Usage("family twist2 needs --n".into())),
        (s, n) => {
            let f: Family = s.parse().map_err(|e: torsion_tower_core::generator::ParseFamilyError| CliError::Usage(e.to_string()))?;
            if n.is_some() && !matches!(f, Family::TwistBy2 { .. }) {
                return Err(CliError::Usage(format!("--n only applies to twist2, not {s}")));
            }
            f
        }
    };
    Ok(fam)
}

fn family_arg(f: Family) -> String {
    match f {
        Family::TwistBy2 { n } => format!("twist2:{n}"),
        _ => f.id().to_string(),
    }
}

pub fn cmd_generate(family: Family, mode: &GenerateMode, opts: &ClassifyOptions) -> Result<Vec<ReportJson>, CliError> {
    let mut echo = InputEcho { family: Some(family_arg(family)), sample_size: Some(opts.sample_size), ..Default::default() };
    let generated = match mode {
        GenerateMode::Prime(p) => {
            echo.p = Some(*p);
            vec![Generated::check(gen_from_prime(family, *p)?, opts)?]
        }
        GenerateMode::Param(t) => {
            echo.t = Some(t.clone());
            let tq: BigRational = t.parse().map_err(|_| CliError::Usage(format!("--t must be a rational number, got {t:?}")))?;
            vec![Generated::check(gen_from_t(family, &tq)?, opts)?]
        }
        GenerateMode::Count(c) => {
            echo.count = Some(*c);
            let (out, skipped) = generate(family, *c, opts)?;
            if skipped > 0 {
                eprintln!("generate: skipped {skipped} parameter values");
            }
            if out.len() < *c {
                eprintln!("generate: only {} of {c} curves found", out.len());
            }
            out
        }
    };
    Ok(generated.into_iter().map(|g| ReportJson::new("generate", echo.clone(), ReportBody::Generate(Box::new(g)))).collect())
}

/// Classifies every fixture row at each prime it has an expectation for, in
/// parallel; rows come back in file order.
pub fn cmd_verify_tables(fixtures: &FixtureSource, opts: &ClassifyOptions) -> Result<ReportJson, CliError> {
    let rows = fixtures.load()?;
    let jobs: Vec<(&CurveRecord, u64, TorsionGroup)> =
        rows.iter().flat_map(|r| r.expectations().into_iter().map(move |(p, g)| (r, p, g))).collect();
    let results: Vec<TableRow> = jobs
        .par_iter()
        .map(|&(rec, p, expected_tower)| -> Result<TableRow, CliError> {
            let report = classify(&rec.curve()?, p, opts)?;
            let matches = report.base == rec.expected_base && report.tower == expected_tower && report.verdict == Verdict::Resolved;
            Ok(TableRow {
                label: rec.label.clone(),
                p,
                expected_base: rec.expected_base,
                expected_tower,
                base: report.base,
                tower: report.tower,
                verdict: report.verdict,
                matches,
            })
        })
        .collect::<Result<_, _>>()?;
    let matched = results.iter().filter(|r| r.matches).count();
    let total = results.len();
    let echo = InputEcho { fixtures: Some(fixtures.describe()), sample_size: Some(opts.sample_size), ..Default::default() };
    Ok(ReportJson::new("verify-tables", echo, ReportBody::VerifyTables(TableSummary { rows: results, matched, total })))
}

/// Coefficients constant term first.
pub fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(str::trim)
        .map(|c| c.parse::<BigInt>().map_err(|_| CliError::Usage(format!("not an integer coefficient: {c:?}"))))
        .collect()
}

pub fn cmd_factor(coeffs: &[BigInt]) -> Result<ReportJson, CliError> {
    let f = IntPoly::new(coeffs.to_vec());
    let fac = factor_over_q(&f)?;
    let echo = InputEcho { coeffs: Some(coeffs.iter().map(|c| c.to_string()).collect()), ..Default::default() };
    let body = FactorReport {
        content: fac.content.to_string(),
        factors: fac.factors.into_iter().map(|(factor, multiplicity)| FactorEntry { factor, multiplicity }).collect(),
    };
    Ok(ReportJson::new("factor", echo, ReportBody::Factor(body)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse() {
        let rows = parse_fixtures(EMBEDDED_FIXTURES).unwrap();
        assert_eq!(rows.len(), 19);
        assert_eq!(rows.iter().filter(|r| r.expected_tower_p2.is_some()).count(), 13);
        assert_eq!(rows.iter().filter(|r| r.expected_tower_p3.is_some()).count(), 6);
    }

    #[test]
    fn fixture_errors() {
        assert!(matches!(parse_fixtures("{not json"), Err(CliError::Fixture { line: 1, .. })));
        let singular = r#"{"label":"x","a_invariants":[0,0,0,0,0],"expected_base":"trivial","expected_tower_p2":null,"expected_tower_p3":null,"provenance":""}"#;
        assert!(matches!(parse_fixtures(singular), Err(CliError::Fixture { .. })));
    }

    #[test]
    fn a_invariant_parsing() {
        assert!(CurveSpec::parse_a("0,0,1,0,0").is_ok());
        assert!(CurveSpec::parse_a("0,0,1,0").is_err());
        assert!(CurveSpec::parse_a("0,0,1,0,x").is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(parse_family("twist2", Some(7)).unwrap(), Family::TwistBy2 { n: 7 });
        assert_eq!(parse_family("twist2:5", None).unwrap(), Family::TwistBy2 { n: 5 });
        assert!(parse_family("twist2", None).is_err());
        assert!(parse_family("triv-to-z7", Some(3)).is_err());
        assert!(parse_family("nope", None).is_err());
    }

    #[test]
    fn torsion_report_roundtrips() {
        let spec = CurveSpec::parse_a("0,0,1,0,0").unwrap();
        let r = cmd_torsion(&spec, &FixtureSource::default()).unwrap();
        let s = r.to_json(false);
        let back: ReportJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(false), s);
    }
}
