use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};

use sg_core::fixture::parse_fixture;
use sg_core::gasket::{max_level, EdgeRef};
use sg_core::harmonic::{classify_harmonic_triple, harmonic_edge_triple, HarmonicFn};
use sg_core::oracle::{count_local_extrema_exact, count_local_extrema_scaled, default_level, sample_edge, sample_edge_exact, Restriction, EIGEN_PLATEAU_TOL};
use sg_core::ratio::ExtendedRatio;
use sg_core::restriction::{BoundaryFlag, Theta, MAX_THETA_BITS};
use sg_core::scalar::{format_rational, parse_rational};
use sg_core::spectral::{classify_eigen_edge, exact_edge_ratio, FamilyId, BORDERLINE_TOL, ENDPOINT_TOL, RESIDUAL_TOL};
use sg_core::verify::{reference_scale, run_suite, Suite};
use sg_core::{Error, Result};

use crate::report::{sig17, CaseJson, Meta, OracleReport, RatioJson, Results, RunReport, SampleJson, BranchJson, ThetaJson};

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "function")]
pub struct FunctionArgs {
    /// Harmonic function by its boundary values, e.g. `0,1,0` or `1/2,0,-3`.
    #[arg(long, value_name = "H0,H1,H2", allow_hyphen_values = true)]
    pub harmonic: Option<String>,
    /// Dirichlet family by birth eigenvalue: 2, 5 or 6.
    #[arg(long, value_name = "2|5|6")]
    pub family: Option<String>,
    /// Eigenfunction fixture file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Edge as `cell=<word>;from=<corner>;to=<corner>`.
    #[arg(long)]
    pub edge: String,
    /// Index n of the family member ψ_n.
    #[arg(long, default_value_t = 0)]
    pub n: u64,
    /// Omit timing metadata so repeated runs are byte-identical.
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub common: Common,
    /// Sampling level L (2^L + 1 samples); defaults to the oracle level.
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
    pub format: SampleFormat,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub common: Common,
    /// Bits of θ to compute.
    #[arg(long, default_value_t = MAX_THETA_BITS)]
    pub bits: u32,
    /// Sampling level of the oracle cross-check.
    #[arg(long)]
    pub oracle_level: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// thm1, thm2, thm3, thm4, lemma35 or decimation.
    pub suite: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Omit timing metadata from JSON output.
    #[arg(long)]
    pub no_meta: bool,
}

/// What a command prints, and how it ends.
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

pub enum Status {
    Ok,
    /// Some verification case failed.
    Failed,
    /// Report printed, but the run ends with this error.
    Error(Error),
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: Status::Ok }
    }
}

fn function_of(f: &FunctionArgs, n: u64) -> Result<(Restriction, String)> {
    if let Some(h) = &f.harmonic {
        let parts: Vec<_> = h.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("--harmonic needs three values, got {h:?}")));
        }
        let vals = parts
            .iter()
            .map(|p| parse_rational(p).ok_or_else(|| Error::Parse(format!("invalid rational {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let desc = format!("harmonic {}", vals.iter().map(format_rational).collect::<Vec<_>>().join(","));
        let [a, b, c]: [_; 3] = vals.try_into().unwrap();
        return Ok((Restriction::Harmonic(HarmonicFn::new(a, b, c)), desc));
    }
    if let Some(fam) = &f.family {
        let fam: FamilyId = fam.parse()?;
        return Ok((Restriction::Eigen(fam.psi(n)), format!("{fam} n={n}")));
    }
    let path = f.spec.as_ref().expect("clap requires one function source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok((Restriction::Eigen(parse_fixture(&text)?), format!("spec {}", path.display())))
}

fn inputs(f: &FunctionArgs, common: &Common, desc: &str, edge: &EdgeRef) -> Result<BTreeMap<String, String>> {
    let (p0, p1) = edge.endpoints()?;
    let pt = |v: sg_core::gasket::VertexId| {
        let (x, y) = v.coords();
        format!("({}, {})", sig17(x), sig17(y))
    };
    let mut out = BTreeMap::from([
        ("edge".to_string(), edge.spec_string()),
        ("function".to_string(), desc.to_string()),
        ("p0".to_string(), pt(p0)),
        ("p1".to_string(), pt(p1)),
    ]);
    if f.family.is_some() {
        out.insert("n".into(), common.n.to_string());
    }
    Ok(out)
}

fn check_cli_level(level: usize) -> Result<()> {
    let max = max_level();
    if level > max {
        return Err(Error::LevelTooLarge { requested: level, max });
    }
    Ok(())
}

fn meta(no_meta: bool, start: Instant) -> Option<Meta> {
    (!no_meta).then(|| Meta::new(start.elapsed()))
}

fn to_json(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn restrict(a: &RestrictArgs) -> Result<Outcome> {
    let start = Instant::now();
    let edge: EdgeRef = a.common.edge.parse()?;
    let (f, desc) = function_of(&a.function, a.common.n)?;
    let level = a.level.unwrap_or_else(|| default_level(&f, &edge));
    check_cli_level(level)?;
    let s = sample_edge(&f, &edge, level)?;
    let text = match a.format {
        SampleFormat::Csv => {
            let mut out = String::with_capacity(s.values.len() * 32);
            out.push_str("param,value\n");
            for (k, v) in s.values.iter().enumerate() {
                let _ = writeln!(out, "{},{}", s.param(k), sig17(*v));
            }
            out
        }
        SampleFormat::Json => {
            let mut inputs = inputs(&a.function, &a.common, &desc, &edge)?;
            inputs.insert("level".into(), level.to_string());
            let samples = s.values.iter().enumerate().map(|(k, &value)| SampleJson { param: s.param(k), value }).collect();
            to_json(&RunReport {
                command: "restrict".into(),
                inputs,
                results: Results { samples: Some(samples), ..Default::default() },
                tolerances: BTreeMap::new(),
                oracle: None,
                meta: meta(a.common.no_meta, start),
            })
        }
    };
    match &a.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::NotApplicable(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn ratio_json_exact(r: &ExtendedRatio<num_rational::BigRational>) -> RatioJson {
    match r.value() {
        Some(v) => RatioJson { num: v.numer().to_string(), den: v.denom().to_string() },
        None => RatioJson { num: "1".into(), den: "0".into() },
    }
}

fn ratio_json_f64(r: &ExtendedRatio<f64>) -> RatioJson {
    match r.value() {
        Some(v) => RatioJson { num: sig17(v), den: "1".into() },
        None => RatioJson { num: "1".into(), den: "0".into() },
    }
}

fn ratio_text(r: &RatioJson) -> String {
    match r.den.as_str() {
        "0" => "inf".into(),
        "1" => r.num.clone(),
        d => format!("{}/{d}", r.num),
    }
}

fn theta_json(t: &Theta) -> ThetaJson {
    ThetaJson { value: t.value, exact: t.exact, error: t.error }
}

fn flag(f: Option<BoundaryFlag>) -> Option<String> {
    f.map(|f| f.name().to_string())
}

pub fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let edge: EdgeRef = a.common.edge.parse()?;
    let (f, desc) = function_of(&a.function, a.common.n)?;
    let mut tolerances = BTreeMap::new();
    let mut results = Results::default();
    match &f {
        Restriction::Harmonic(h) => {
            let c = classify_harmonic_triple(&harmonic_edge_triple(h, &edge));
            results.kind = Some(c.kind.name().into());
            results.extremum_count = Some(c.kind.extremum_count());
            results.ratio = harmonic_edge_triple(h, &edge).ratio().ok().map(|r| ratio_json_exact(&r));
            results.alpha = flag(c.alpha);
            results.beta = flag(c.beta);
            results.theta = c.theta.as_ref().map(|t| {
                let mut t = *t;
                if a.bits < MAX_THETA_BITS {
                    t = sg_core::harmonic::locate_extremum_harmonic(&harmonic_edge_triple(h, &edge).ratio().unwrap(), a.bits).unwrap_or(t);
                }
                theta_json(&t)
            });
        }
        Restriction::Eigen(spec) => {
            let an = classify_eigen_edge(spec, &edge, a.bits)?;
            let c = &an.classification;
            results.kind = Some(c.kind.name().into());
            results.extremum_count = Some(an.predicted_count);
            results.ratio = an.ratio.as_ref().map(|r| match exact_edge_ratio(spec, &edge) {
                Ok(Some(q)) => ratio_json_exact(&q),
                _ => ratio_json_f64(r),
            });
            results.alpha = flag(c.alpha);
            results.beta = flag(c.beta);
            results.theta = c.theta.as_ref().map(theta_json);
            results.lambda_next = an.lambda_next.is_finite().then_some(an.lambda_next);
            results.borderline = Some(c.borderline);
            results.branch_count = an.branch_count.as_ref().map(|t| BranchJson {
                branch: t.branch.name().into(),
                n: t.n,
                lambda0: t.lambda0,
                certified: t.certified,
                borderline: t.borderline,
            });
            tolerances.insert("endpoint".into(), ENDPOINT_TOL);
            tolerances.insert("borderline".into(), BORDERLINE_TOL);
            tolerances.insert("residual".into(), RESIDUAL_TOL);
        }
    }
    let level = a.oracle_level.unwrap_or_else(|| default_level(&f, &edge));
    let rep = match &f {
        Restriction::Harmonic(h) => count_local_extrema_exact(&sample_edge_exact(h, &edge, level)?),
        Restriction::Eigen(spec) => {
            tolerances.insert("plateau".into(), EIGEN_PLATEAU_TOL);
            count_local_extrema_scaled(&sample_edge(&f, &edge, level)?, EIGEN_PLATEAU_TOL, reference_scale(spec))
        }
    };
    let oracle = OracleReport {
        level,
        count: rep.count,
        agrees: Some(rep.count) == results.extremum_count,
        positions: rep.positions,
        plateau: rep.plateau,
        tolerance: rep.tolerance,
    };
    let constant = results.kind.as_deref() == Some("Constant");
    let report = RunReport {
        command: "classify".into(),
        inputs: inputs(&a.function, &a.common, &desc, &edge)?,
        results,
        tolerances,
        oracle: Some(oracle),
        meta: meta(a.common.no_meta, start),
    };
    let text = match a.format {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => classify_text(&report),
    };
    if constant {
        return Ok(Outcome { text, status: Status::Error(Error::ConstantOnEdge) });
    }
    Ok(Outcome::ok(text))
}

fn classify_text(r: &RunReport) -> String {
    let mut s = String::new();
    let res = &r.results;
    let _ = writeln!(s, "function: {}", r.inputs["function"]);
    let _ = writeln!(s, "edge: {}", r.inputs["edge"]);
    if let Some(k) = &res.kind {
        let _ = writeln!(s, "kind: {k}");
    }
    if let Some(ratio) = &res.ratio {
        let _ = writeln!(s, "r = {}", ratio_text(ratio));
    }
    if let Some(l) = res.lambda_next {
        let _ = writeln!(s, "lambda_next = {}", sig17(l));
    }
    if let (Some(a), Some(b)) = (&res.alpha, &res.beta) {
        let _ = writeln!(s, "alpha = {a}, beta = {b}");
    }
    if let Some(t) = &res.theta {
        let how = if t.exact { "exact".to_string() } else { format!("+/- {:e}", t.error) };
        let _ = writeln!(s, "theta = {} ({how})", sig17(t.value));
    }
    if let Some(t) = &res.branch_count {
        let _ = writeln!(s, "branch: {} (n = {}, certified: {})", t.branch, t.n, t.certified);
    }
    if let Some(n) = res.extremum_count {
        let _ = writeln!(s, "N = {n}");
    }
    if res.borderline == Some(true) {
        let _ = writeln!(s, "warning: ratio lies in the borderline band of an endpoint");
    }
    if let Some(o) = &r.oracle {
        let verdict = if o.agrees { "agrees" } else { "DISAGREES" };
        let _ = writeln!(s, "oracle: {} extrema at level {} ({verdict})", o.count, o.level);
    }
    s
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let suite: Suite = a.suite.parse()?;
    let rep = run_suite(suite)?;
    let passed = rep.passed();
    let text = match a.format {
        ReportFormat::Json => to_json(&RunReport {
            command: "verify".into(),
            inputs: BTreeMap::from([("suite".to_string(), suite.name().to_string())]),
            results: Results {
                cases: Some(
                    rep.rows
                        .iter()
                        .map(|r| CaseJson {
                            case: r.case.clone(),
                            predicted: r.predicted.clone(),
                            observed: r.observed.clone(),
                            pass: r.pass,
                        })
                        .collect(),
                ),
                passed: Some(passed),
                ..Default::default()
            },
            tolerances: BTreeMap::from([
                ("plateau".to_string(), EIGEN_PLATEAU_TOL),
                ("residual".to_string(), RESIDUAL_TOL),
            ]),
            oracle: None,
            meta: meta(a.no_meta, start),
        }),
        ReportFormat::Text => {
            let w = rep.rows.iter().map(|r| r.case.len()).max().unwrap_or(4).max(4);
            let mut s = format!("{:<w$}  {:<18}  {:<18}  result\n", "case", "predicted", "observed");
            for r in &rep.rows {
                let _ = writeln!(
                    s,
                    "{:<w$}  {:<18}  {:<18}  {}",
                    r.case,
                    r.predicted,
                    r.observed,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            let failed = rep.rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(s, "{suite}: {} of {} cases passed", rep.rows.len() - failed, rep.rows.len());
            s
        }
    };
    Ok(Outcome { text, status: if passed { Status::Ok } else { Status::Failed } })
}
