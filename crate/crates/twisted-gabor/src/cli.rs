//! Batch job runner: a JSON job in, a JSON report out.
//!
//! Every command reads one [`JobConfig`], runs the requested analysis, and
//! produces a [`Report`] whose checks carry residuals next to their gates.
//! Reports are deterministic given the seed; nothing in them depends on
//! wall-clock time or environment. Exit codes: 0 on success, 1 on invalid
//! input, 2 when a verification gate fails.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Parser;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;

use crate::cocycle::Cocycle;
use crate::finite_group::{FiniteAbelianGroup, FiniteGroup, PhaseSpace, PhaseSubgroup};
use crate::gabor::{
    figa_residual_with_size, frame_report, FrameReport, GaborError, GaborSystem, Window,
};
use crate::mackey::{MackeyFunction, MackeyGroup};
use crate::phase::Phase;
use crate::spectral_harness::{compare_spectra, hulanicki_convergence, RepresentationSpec};
use crate::twisted_algebra::TwistedElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyCocycle,
    MackeyDecompose,
    FrameAnalyze,
    FrameDual,
    FrameTight,
    Figa,
    SpectraCompare,
    Hulanicki,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Abelian(Vec<u32>),
    Cayley(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleSpec {
    Trivial,
    Heisenberg,
    Phases(Vec<[i64; 2]>),
}

/// One batch job. Fields beyond `command` are read per command; unused ones
/// are rejected only when their absence makes the job ambiguous.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub windows: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_override: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Command,
    pub seed: u64,
    pub tolerance_scale: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub payload: Value,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "invalid job: {msg}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

struct Checks {
    scale: f64,
    list: Vec<Check>,
}

impl Checks {
    fn new(scale: f64) -> Self {
        Checks {
            scale,
            list: Vec::new(),
        }
    }

    fn gate(&mut self, name: &str, residual: f64, base_gate: f64) {
        let gate = base_gate * self.scale;
        self.list.push(Check {
            name: name.to_string(),
            passed: residual <= gate,
            residual: Some(residual),
            gate: Some(gate),
        });
    }

    fn boolean(&mut self, name: &str, passed: bool) {
        self.list.push(Check {
            name: name.to_string(),
            passed,
            residual: None,
            gate: None,
        });
    }

    fn failed(&mut self, name: &str, residual: f64) {
        self.list.push(Check {
            name: name.to_string(),
            passed: false,
            residual: Some(residual),
            gate: None,
        });
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn complex_list(values: &[Complex64]) -> Value {
    Value::Array(values.iter().map(|&z| pair(z)).collect())
}

fn parse_complex_vector(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn ratio_value(r: Ratio<i64>) -> Value {
    json!([*r.numer(), *r.denom()])
}

struct Job<'a> {
    config: &'a JobConfig,
    seed: u64,
}

impl<'a> Job<'a> {
    fn abelian_group(&self) -> Result<FiniteAbelianGroup, CliError> {
        match &self.config.group {
            Some(GroupSpec::Abelian(factors)) => FiniteAbelianGroup::new(factors)
                .map_err(|e| invalid(format!("group: {e}"))),
            Some(GroupSpec::Cayley(_)) => {
                Err(invalid("this command needs an abelian group spec"))
            }
            None => Err(invalid("missing field: group")),
        }
    }

    fn any_group(&self) -> Result<(Arc<FiniteGroup>, Option<FiniteAbelianGroup>), CliError> {
        match &self.config.group {
            Some(GroupSpec::Abelian(factors)) => {
                let g = FiniteAbelianGroup::new(factors)
                    .map_err(|e| invalid(format!("group: {e}")))?;
                Ok((g.group().clone(), Some(g)))
            }
            Some(GroupSpec::Cayley(table)) => {
                let g = FiniteGroup::from_cayley(table)
                    .map_err(|e| invalid(format!("group: {e}")))?;
                Ok((g, None))
            }
            None => Err(invalid("missing field: group")),
        }
    }

    /// Builds the algebra cocycle. `heisenberg` lifts an abelian base to its
    /// phase space, so the returned group is `G×Ĝ` in that case.
    fn cocycle(&self) -> Result<(Arc<FiniteGroup>, Cocycle), CliError> {
        let spec = self
            .config
            .cocycle
            .as_ref()
            .ok_or_else(|| invalid("missing field: cocycle"))?;
        match spec {
            CocycleSpec::Trivial => {
                let (group, _) = self.any_group()?;
                Ok((group.clone(), Cocycle::trivial(group)))
            }
            CocycleSpec::Heisenberg => {
                let base = self.abelian_group().map_err(|_| {
                    invalid("cocycle 'heisenberg' needs an abelian group spec")
                })?;
                let space = PhaseSpace::new(base);
                let c = Cocycle::heisenberg(&space);
                Ok((c.group().clone(), c))
            }
            CocycleSpec::Phases(entries) => {
                let (group, _) = self.any_group()?;
                let table = entries
                    .iter()
                    .map(|&[p, q]| {
                        if q == 0 {
                            Err(invalid("cocycle phase with zero denominator"))
                        } else {
                            Ok(Phase::new(p, q))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let c = Cocycle::from_phases(group.clone(), table)
                    .and_then(|c| c.verify().map(|_| c))
                    .map_err(|e| invalid(format!("cocycle: {e}")))?;
                Ok((group, c))
            }
        }
    }

    fn lattice(&self, space: &PhaseSpace) -> Result<PhaseSubgroup, CliError> {
        let generators = self
            .config
            .lattice
            .as_ref()
            .ok_or_else(|| invalid("missing field: lattice"))?;
        PhaseSubgroup::closure_from_tuples(space, generators)
            .map_err(|e| invalid(format!("lattice: {e}")))
    }

    fn windows(&self, group: &FiniteAbelianGroup) -> Result<Vec<Window>, CliError> {
        if self.config.windows.is_empty() {
            return Err(invalid("missing field: windows"));
        }
        self.config
            .windows
            .iter()
            .map(|w| {
                Window::new(group.clone(), parse_complex_vector(w))
                    .map_err(|e| invalid(format!("window: {e}")))
            })
            .collect()
    }

    fn element(&self, group: &Arc<FiniteGroup>) -> Result<TwistedElement, CliError> {
        let weight = Ratio::from_integer(1);
        match &self.config.element {
            Some(values) => {
                TwistedElement::new(group.clone(), weight, parse_complex_vector(values))
                    .map_err(|e| invalid(format!("element: {e}")))
            }
            None => {
                let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
                Ok(TwistedElement::random(group.clone(), weight, &mut rng))
            }
        }
    }

    fn iterations(&self) -> usize {
        self.config.iterations.unwrap_or(20)
    }
}

fn verify_cocycle(job: &Job, checks: &mut Checks) -> Result<Value, CliError> {
    let spec = job
        .config
        .cocycle
        .as_ref()
        .ok_or_else(|| invalid("missing field: cocycle"))?;
    if let CocycleSpec::Phases(entries) = spec {
        let (group, _) = job.any_group()?;
        let table = entries
            .iter()
            .map(|&[p, q]| Phase::new(p, q))
            .collect::<Vec<_>>();
        let verified = Cocycle::from_phases(group.clone(), table)
            .and_then(|c| c.verify().map(|_| c));
        match verified {
            Ok(c) => {
                checks.boolean("cocycle-laws", true);
                let identities = c.verify_identities().is_ok();
                checks.boolean("derived-identities", identities);
                Ok(json!({
                    "group_order": group.order(),
                    "phase_order": c.order(),
                    "defect": Value::Null,
                }))
            }
            Err(defect) => {
                checks.boolean("cocycle-laws", false);
                Ok(json!({
                    "group_order": group.order(),
                    "phase_order": Value::Null,
                    "defect": defect.to_string(),
                }))
            }
        }
    } else {
        let (group, c) = job.cocycle()?;
        checks.boolean("cocycle-laws", c.verify().is_ok());
        checks.boolean("derived-identities", c.verify_identities().is_ok());
        Ok(json!({
            "group_order": group.order(),
            "phase_order": c.order(),
            "defect": Value::Null,
        }))
    }
}

fn mackey_decompose(job: &Job, checks: &mut Checks) -> Result<Value, CliError> {
    let (group, c) = job.cocycle()?;
    let mackey = MackeyGroup::new(&c).map_err(|e| invalid(format!("cocycle: {e}")))?;
    let m = mackey.phase_order();
    let rows = job
        .config
        .function
        .as_ref()
        .ok_or_else(|| invalid("missing field: function (m rows of |G| complex values)"))?;
    if rows.len() != m as usize {
        return Err(invalid(format!(
            "function needs {m} rows (the cocycle's phase order), got {}",
            rows.len()
        )));
    }
    let n = group.order();
    for row in rows {
        if row.len() != n {
            return Err(invalid(format!(
                "function rows need {n} entries, got {}",
                row.len()
            )));
        }
    }
    let mut values = vec![Complex64::ZERO; mackey.order()];
    for (t, row) in rows.iter().enumerate() {
        for (x, &[re, im]) in row.iter().enumerate() {
            values[mackey.element(x, t as i64)] = Complex64::new(re, im);
        }
    }
    let f = MackeyFunction::new(mackey.clone(), Ratio::from_integer(1), values)
        .map_err(|e| invalid(format!("function: {e}")))?;

    let grades: Vec<TwistedElement> = (0..m).map(|k| f.fourier_coefficient(k)).collect();
    let rebuilt = MackeyFunction::from_grades(&mackey, &grades)
        .map_err(|e| invalid(format!("grades: {e}")))?;
    let residual: f64 = f
        .values()
        .iter()
        .zip(rebuilt.values())
        .map(|(a, b)| (a - b).norm())
        .sum();
    checks.gate("grade-reconstruction", residual, 1e-12 * (1.0 + f.l1_norm()));

    let grade_rows: Vec<Value> = grades.iter().map(|g| complex_list(g.coeffs())).collect();
    Ok(json!({
        "phase_order": m,
        "group_order": n,
        "grades": grade_rows,
    }))
}

fn frame_payload(report: &FrameReport, lattice: &PhaseSubgroup) -> Value {
    let space = lattice.space();
    let janssen: Vec<Value> = report
        .algebra
        .adjoint()
        .elements()
        .iter()
        .enumerate()
        .map(|(local, &ambient)| {
            json!({
                "point": space.ambient().tuple_of(ambient),
                "value": pair(report.janssen.coeff(local)),
            })
        })
        .collect();
    let windows_json = |atoms: &[Window]| -> Value {
        Value::Array(atoms.iter().map(|w| complex_list(w.values())).collect())
    };
    json!({
        "bounds": {
            "lower": report.bounds.lower,
            "upper": report.bounds.upper,
        },
        "is_frame": report.bounds.is_frame,
        "lattice_size": ratio_value(lattice.size()),
        "adjoint": report
            .algebra
            .adjoint()
            .elements()
            .iter()
            .map(|&z| json!(space.ambient().tuple_of(z)))
            .collect::<Vec<_>>(),
        "janssen": janssen,
        "dual": windows_json(&report.dual_atoms),
        "tight": windows_json(&report.tight_atoms),
        "residuals": report.residuals.iter().collect::<BTreeMap<_, _>>(),
        "s0_norms": report.s0_norms.iter().collect::<BTreeMap<_, _>>(),
    })
}

const FRAME_GATES: [(&str, f64); 6] = [
    ("frame-operator-hermitian", 1e-12),
    ("lattice-commutation", 1e-12),
    ("janssen-vs-frame-operator", 1e-12),
    ("janssen-self-adjoint", 1e-12),
    ("dual-inverse-cross-check", 1e-9),
    ("tight-sqrt-cross-check", 1e-9),
];

fn run_frame(job: &Job, checks: &mut Checks, command: Command) -> Result<Value, CliError> {
    let base = job.abelian_group()?;
    let space = PhaseSpace::new(base.clone());
    let lattice = job.lattice(&space)?;
    let windows = job.windows(&base)?;
    let system =
        GaborSystem::new(windows, lattice.clone()).map_err(|e| invalid(format!("system: {e}")))?;
    let report = match frame_report(&system) {
        Ok(r) => r,
        Err(GaborError::InternalConsistency { check, residual }) => {
            checks.failed(check, residual);
            return Ok(json!({ "error": format!("consistency check '{check}' failed") }));
        }
        Err(GaborError::Algebra(e)) => {
            checks.failed("janssen-inversion", f64::INFINITY);
            return Ok(json!({ "error": e.to_string() }));
        }
        Err(e) => return Err(invalid(e.to_string())),
    };

    let scale = 1.0 + report.bounds.upper.max(0.0);
    for (name, base_gate) in FRAME_GATES {
        if let Some(&residual) = report.residuals.get(name) {
            let normalized = if base_gate <= 1e-12 { base_gate * scale } else { base_gate };
            checks.gate(name, residual, normalized);
        }
    }
    if report.bounds.is_frame {
        checks.gate(
            "dual-reconstruction",
            report.residuals["dual-reconstruction"],
            1e-9,
        );
        checks.gate(
            "tight-frame-operator",
            report.residuals["tight-frame-operator"],
            1e-9,
        );
    }
    match command {
        Command::FrameDual | Command::FrameTight => {
            checks.boolean("is-frame", report.bounds.is_frame);
        }
        _ => {}
    }
    Ok(frame_payload(&report, &lattice))
}

fn run_figa(job: &Job, checks: &mut Checks) -> Result<Value, CliError> {
    let base = job.abelian_group()?;
    let space = PhaseSpace::new(base.clone());
    let lattice = job.lattice(&space)?;
    let windows = job.windows(&base)?;
    if windows.len() != 3 {
        return Err(invalid("figa needs exactly three windows: f, g, h"));
    }
    let s = match job.config.s_override {
        Some([num, den]) => {
            if den == 0 || num == 0 {
                return Err(invalid("s_override must be a nonzero rational [num, den]"));
            }
            Ratio::new(num, den)
        }
        None => lattice.size(),
    };
    let (f, g, h) = (&windows[0], &windows[1], &windows[2]);
    let residual = figa_residual_with_size(f, g, h, &lattice, s)
        .map_err(|e| invalid(e.to_string()))?;
    let norms = f.l2_norm() * g.l2_norm() * h.l2_norm();
    checks.gate("figa-identity", residual, 1e-10 * norms.max(1e-30));
    Ok(json!({
        "residual": residual,
        "window_norm_product": norms,
        "lattice_size": ratio_value(lattice.size()),
        "s_used": ratio_value(s),
    }))
}

fn run_spectra(job: &Job, checks: &mut Checks) -> Result<Value, CliError> {
    let (group, c) = job.cocycle()?;
    let f = job.element(&group)?;
    let weight = f.weight();
    let left = RepresentationSpec::left_regular("left-regular", &c, weight)
        .map_err(|e| invalid(e.to_string()))?;
    let right = RepresentationSpec::right_multiplication("right-multiplication", &c, weight)
        .map_err(|e| invalid(e.to_string()))?;
    let comparison =
        compare_spectra(&f, &c, &[&left, &right]).map_err(|e| invalid(e.to_string()))?;
    for rep in &comparison.representations {
        checks.gate(
            &format!("spectrum-{}", rep.name),
            rep.hausdorff_distance,
            comparison.tolerance,
        );
    }
    Ok(json!({
        "element": complex_list(f.coeffs()),
        "reference_spectrum": complex_list(&comparison.reference),
        "distinct_spectrum": complex_list(&comparison.reference_distinct),
        "representations": comparison
            .representations
            .iter()
            .map(|r| json!({
                "name": r.name,
                "spectrum": complex_list(&r.eigenvalues),
                "hausdorff_distance": r.hausdorff_distance,
            }))
            .collect::<Vec<_>>(),
    }))
}

fn run_hulanicki(job: &Job, checks: &mut Checks) -> Result<Value, CliError> {
    let (group, c) = job.cocycle()?;
    let weight = Ratio::from_integer(1);
    let f = match &job.config.element {
        Some(values) => {
            TwistedElement::new(group.clone(), weight, parse_complex_vector(values))
                .map_err(|e| invalid(format!("element: {e}")))?
        }
        None => {
            let mut rng = ChaCha12Rng::seed_from_u64(job.seed);
            TwistedElement::random_self_adjoint(group.clone(), weight, &c, &mut rng)
                .map_err(|e| invalid(e.to_string()))?
        }
    };
    let rep = RepresentationSpec::left_regular("left-regular", &c, weight)
        .map_err(|e| invalid(e.to_string()))?;
    let report = hulanicki_convergence(&f, &c, &rep, job.iterations())
        .map_err(|e| invalid(e.to_string()))?;
    checks.boolean("monotone", report.monotone);
    checks.gate("hulanicki-gate", report.relative_gap, 1e-6);
    Ok(json!({
        "element": complex_list(f.coeffs()),
        "sequence": report.sequence,
        "operator_norm": report.operator_norm,
        "relative_gap": report.relative_gap,
    }))
}

/// Runs one job and assembles its report. Input problems surface as
/// [`CliError`]; failed verification gates surface as failed checks inside
/// an `Ok` report.
pub fn run(config: &JobConfig) -> Result<Report, CliError> {
    let seed = config.seed.unwrap_or(0);
    let tolerance_scale = config.tolerance_scale.unwrap_or(1.0);
    if !(tolerance_scale.is_finite() && tolerance_scale > 0.0) {
        return Err(invalid("tolerance_scale must be positive and finite"));
    }
    let job = Job { config, seed };
    let mut checks = Checks::new(tolerance_scale);
    let payload = match config.command {
        Command::VerifyCocycle => verify_cocycle(&job, &mut checks)?,
        Command::MackeyDecompose => mackey_decompose(&job, &mut checks)?,
        Command::FrameAnalyze | Command::FrameDual | Command::FrameTight => {
            run_frame(&job, &mut checks, config.command)?
        }
        Command::Figa => run_figa(&job, &mut checks)?,
        Command::SpectraCompare => run_spectra(&job, &mut checks)?,
        Command::Hulanicki => run_hulanicki(&job, &mut checks)?,
    };
    let passed = checks.list.iter().all(|c| c.passed);
    Ok(Report {
        command: config.command,
        seed,
        tolerance_scale,
        passed,
        checks: checks.list,
        payload,
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "twisted-gabor",
    about = "Runs twisted-algebra and Gabor-frame analyses described by a JSON job file"
)]
struct Cli {
    /// Path to the JSON job config.
    #[arg(long)]
    config: PathBuf,
    /// Report destination; overrides the config's `output`, defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config's `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Multiplies every residual gate; overrides the config's value.
    #[arg(long)]
    tolerance_scale: Option<f64>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", cli.config.display());
            return 1;
        }
    };
    let mut config: JobConfig = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return 1;
        }
    };
    if let Some(seed) = cli.seed {
        config.seed = Some(seed);
    }
    if let Some(scale) = cli.tolerance_scale {
        config.tolerance_scale = Some(scale);
    }

    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    let destination = cli.out.or_else(|| config.output.clone());
    match destination {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => println!("{rendered}"),
    }
    if report.passed {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> JobConfig {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn config_accepts_each_group_and_cocycle_form() {
        let c = parse(
            r#"{"command": "verify-cocycle", "group": {"abelian": [2, 3]}, "cocycle": "trivial"}"#,
        );
        assert!(matches!(c.cocycle, Some(CocycleSpec::Trivial)));

        let c = parse(
            r#"{"command": "verify-cocycle", "group": {"cayley": [[0,1],[1,0]]},
                "cocycle": {"phases": [[0,1],[0,1],[0,1],[1,2]]}}"#,
        );
        match c.cocycle {
            Some(CocycleSpec::Phases(p)) => assert_eq!(p.len(), 4),
            other => panic!("unexpected cocycle spec {other:?}"),
        }

        let c = parse(
            r#"{"command": "hulanicki", "group": {"abelian": [4]}, "cocycle": "heisenberg",
                "seed": 3, "iterations": 12}"#,
        );
        assert!(matches!(c.cocycle, Some(CocycleSpec::Heisenberg)));
        assert_eq!(c.iterations, Some(12));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: Result<JobConfig, _> =
            serde_json::from_str(r#"{"command": "figa", "bogus": 1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn verify_cocycle_job_passes_on_the_trivial_cocycle() {
        let config = parse(
            r#"{"command": "verify-cocycle", "group": {"abelian": [3]}, "cocycle": "trivial"}"#,
        );
        let report = run(&config).unwrap();
        assert!(report.passed);
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn verify_cocycle_job_fails_on_a_broken_table() {
        let config = parse(
            r#"{"command": "verify-cocycle", "group": {"abelian": [2]},
                "cocycle": {"phases": [[0,1],[1,2],[0,1],[1,2]]}}"#,
        );
        let report = run(&config).unwrap();
        assert!(!report.passed);
        assert_eq!(report.payload["defect"].as_str().is_some(), true);
    }

    #[test]
    fn frame_analyze_job_matches_the_closed_form() {
        let config = parse(
            r#"{"command": "frame-analyze", "group": {"abelian": [2]},
                "lattice": [[1,0],[0,1]],
                "windows": [[[1.0,0.0],[0.0,0.0]]]}"#,
        );
        let report = run(&config).unwrap();
        assert!(report.passed);
        assert!(report.payload["is_frame"].as_bool().unwrap());
        let lower = report.payload["bounds"]["lower"].as_f64().unwrap();
        let upper = report.payload["bounds"]["upper"].as_f64().unwrap();
        assert!((lower - 2.0).abs() < 1e-10 && (upper - 2.0).abs() < 1e-10);
        let dual = report.payload["dual"][0][0][0].as_f64().unwrap();
        assert!((dual - 0.5).abs() < 1e-12);
    }

    #[test]
    fn figa_job_detects_a_corrupted_size() {
        let base = r#"{"command": "figa", "group": {"abelian": [4]},
            "lattice": [[2,0],[0,2]],
            "windows": [
                [[0.3,0.1],[0.2,-0.4],[0.9,0.0],[-0.5,0.2]],
                [[1.0,0.0],[0.4,0.3],[-0.2,0.1],[0.0,-0.6]],
                [[0.1,0.1],[0.7,-0.2],[0.3,0.3],[-0.4,0.0]]]"#;
        let good = parse(&format!("{base}}}"));
        let report = run(&good).unwrap();
        assert!(report.passed, "checks: {:?}", report.checks);

        let bad = parse(&format!(r#"{base}, "s_override": [2, 1]}}"#));
        let report = run(&bad).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn reports_are_deterministic_for_a_fixed_seed() {
        let config = parse(
            r#"{"command": "spectra-compare", "group": {"abelian": [6]},
                "cocycle": "trivial", "seed": 11}"#,
        );
        let a = serde_json::to_string(&run(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hulanicki_job_rejects_non_self_adjoint_elements() {
        let config = parse(
            r#"{"command": "hulanicki", "group": {"abelian": [2]}, "cocycle": "trivial",
                "element": [[0.0,0.0],[0.0,1.0]]}"#,
        );
        assert!(matches!(run(&config), Err(CliError::Invalid(_))));
    }
}
