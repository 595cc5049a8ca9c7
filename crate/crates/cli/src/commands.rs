//! Command dispatch and output rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};

use formring_core::certify::{alpha_beta_gamma, certify_depth, check_bounds, AlphaBetaGamma, BoundsReport, Comparison, DepthCertificate};
use formring_core::filtration::{validate, FiltrationKind};
use formring_core::hilbert::{check_shift, ej_series, hilbert_coefficients, EJSeries, HilbertCoefficients, ShiftReport};
use formring_core::locallen::is_locally_m_primary;
use formring_core::reduction::{default_n_bound, find_reduction, reduction_with, ReductionData, DEFAULT_ATTEMPTS};
use formring_core::Error as CoreError;

use crate::job::{Format, Job};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Coeffs,
    Reduce,
    Certify,
    Bounds,
    Validate,
}

/// A finished command: its JSON value, a table rendering, and the exit code.
#[derive(Debug)]
pub struct Output {
    pub value: Value,
    pub table: String,
    pub code: i32,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&self.value),
            Format::Table => self.table.clone(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Refused(_) => EXIT_REFUSED,
            Failure::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Refused(msg) => Failure::Refused(msg),
            CoreError::Inconsistent(msg) => Failure::Inconsistent(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn refusal(reason: &str, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({ "refused": true, "reason": reason })),
        Format::Table => format!("refused: {reason}\n"),
    }
}

fn table_len(job: &Job) -> usize {
    match job.filtration.kind() {
        FiltrationKind::Adic(_) => 0,
        FiltrationKind::Table(t) => t.len(),
    }
}

fn validation_depth(job: &Job) -> usize {
    (table_len(job) + 2).max(4)
}

/// Input checks shared by every computing command.
fn precheck(job: &Job) -> Result<(), Failure> {
    let f = &job.filtration;
    if !is_locally_m_primary(&f.module_ideal(1), f.schedule()) {
        return Err(Failure::Input(
            "I_1 M does not have finite length at the origin".into(),
        ));
    }
    if !f.is_adic() {
        let report = validate(f, validation_depth(job));
        if !report.passed() {
            return Err(Failure::Input(format!(
                "not a filtration: descending failures at n = {:?}, multiplicative failures at {:?}",
                report.descending_failures, report.multiplicative_failures
            )));
        }
    }
    Ok(())
}

fn reduction(job: &Job) -> Result<ReductionData, Failure> {
    let f = &job.filtration;
    let bound = default_n_bound(f);
    Ok(match &job.reduction {
        Some(j) => reduction_with(f, j.clone(), bound)?,
        None => find_reduction(f, job.options.seed, bound, DEFAULT_ATTEMPTS)?,
    })
}

fn j_strings(rd: &ReductionData) -> Vec<String> {
    rd.j.gens().iter().map(|g| g.to_string()).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn warnings_table(out: &mut String, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

pub fn execute(cmd: Command, job: &Job) -> Result<Output, Failure> {
    if cmd == Command::Validate {
        return Ok(run_validate(job));
    }
    precheck(job)?;
    match cmd {
        Command::Coeffs => run_coeffs(job),
        Command::Reduce => run_reduce(job),
        Command::Certify => run_certify(job),
        Command::Bounds => run_bounds(job),
        Command::Validate => unreachable!("handled above"),
    }
}

fn run_validate(job: &Job) -> Output {
    let f = &job.filtration;
    let report = validate(f, validation_depth(job));
    let passed = report.passed();
    let warnings = f.warnings();
    let value = json!({
        "descending_failures": report.descending_failures,
        "multiplicative_failures": report.multiplicative_failures,
        "m_primary": report.m_primary,
        "checked_up_to": validation_depth(job),
        "passed": passed,
        "warnings": warnings,
    });
    let mut table = String::new();
    let _ = writeln!(table, "I_1 M m-primary   {}", report.m_primary);
    let _ = writeln!(table, "descending fails  [{}]", join(&report.descending_failures));
    let pairs: Vec<String> = report
        .multiplicative_failures
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    let _ = writeln!(table, "multiplicative    [{}]", pairs.join(", "));
    let _ = writeln!(table, "passed            {passed}");
    warnings_table(&mut table, &warnings);
    Output {
        value,
        table,
        code: if passed { EXIT_OK } else { EXIT_INPUT },
    }
}

fn coeffs_json(e: &HilbertCoefficients) -> Value {
    json!({
        "d": e.d,
        "e": e.e,
        "postulation": e.postulation,
        "per_n": { "hilbert": e.samples },
    })
}

fn run_coeffs(job: &Job) -> Result<Output, Failure> {
    let f = &job.filtration;
    let e = hilbert_coefficients(f, job.options.n_cap)?;
    let warnings = f.warnings();
    let mut value = coeffs_json(&e);
    value["warnings"] = json!(warnings);
    let mut table = String::new();
    let _ = writeln!(table, "d            {}", e.d);
    let _ = writeln!(table, "e            [{}]", join(&e.e));
    let _ = writeln!(table, "postulation  {}", e.postulation);
    let _ = writeln!(table, "{:>4}  {:>8}", "n", "H(n)");
    for (n, h) in e.samples.iter().enumerate() {
        let _ = writeln!(table, "{n:>4}  {h:>8}");
    }
    warnings_table(&mut table, &warnings);
    Ok(Output {
        value,
        table,
        code: EXIT_OK,
    })
}

fn reduction_json(job: &Job, rd: &ReductionData) -> Value {
    json!({
        "j": j_strings(rd),
        "r": rd.r,
        "verified_at": rd.verified_at,
        "seed": job.options.seed,
        "attempts": rd.attempts,
        "supplied": rd.seed.is_none(),
    })
}

fn run_reduce(job: &Job) -> Result<Output, Failure> {
    let rd = reduction(job)?;
    let warnings = job.filtration.warnings();
    let mut value = reduction_json(job, &rd);
    value["warnings"] = json!(warnings);
    let mut table = String::new();
    let _ = writeln!(table, "J            ({})", j_strings(&rd).join(", "));
    let _ = writeln!(table, "r            {}", rd.r);
    let _ = writeln!(table, "verified at  n <= {}", rd.verified_at);
    match rd.seed {
        Some(s) => {
            let _ = writeln!(table, "seed         {s} (attempt {})", rd.attempts);
        }
        None => {
            let _ = writeln!(table, "seed         supplied J");
        }
    }
    warnings_table(&mut table, &warnings);
    Ok(Output {
        value,
        table,
        code: EXIT_OK,
    })
}

/// Everything `certify` computes.
pub struct Certified {
    pub cert: DepthCertificate,
    pub ej: EJSeries,
    pub shift: ShiftReport,
    pub abg: Option<AlphaBetaGamma>,
}

pub fn certify(job: &Job) -> Result<Certified, Failure> {
    let f = &job.filtration;
    let e = hilbert_coefficients(f, job.options.n_cap)?;
    let rd = reduction(job)?;
    let cert = certify_depth(f, &rd, &e)?;
    let ej = ej_series(f, &rd.j, job.options.n_cap)?;
    let shift = check_shift(&e, &ej);
    let abg = if f.dim() == 1 {
        Some(alpha_beta_gamma(f, &rd)?)
    } else {
        None
    };
    Ok(Certified {
        cert,
        ej,
        shift,
        abg,
    })
}

fn certificate_json(job: &Job, cert: &DepthCertificate) -> Value {
    json!({
        "cm_assumed": cert.cm_assumed,
        "d": cert.e.d,
        "e": cert.e.e,
        "j": j_strings(&cert.reduction),
        "postulation": cert.e.postulation,
        "r": cert.reduction.r,
        "s_cm": cert.sums.s_cm,
        "s_hm": cert.sums.s_hm,
        "seed": job.options.seed,
        "verdict": cert.verdict,
        "per_n": {
            "hilbert": cert.e.samples,
            "hm": cert.sums.hm_terms,
            "cm": cert.sums.cm_terms,
        },
    })
}

fn certificate_table(table: &mut String, cert: &DepthCertificate) {
    let _ = writeln!(table, "verdict     {:?}", cert.verdict);
    let _ = writeln!(table, "e           [{}]", join(&cert.e.e));
    let _ = writeln!(table, "J           ({})", j_strings(&cert.reduction).join(", "));
    let _ = writeln!(table, "r           {}", cert.reduction.r);
    let _ = writeln!(table, "S_HM        {}", cert.sums.s_hm);
    let _ = writeln!(table, "S_CM        {}", cert.sums.s_cm);
    let _ = writeln!(table, "cm assumed  {}", cert.cm_assumed);
    let _ = writeln!(table, "{:>4}  {:>6}  {:>6}", "n", "hm", "cm");
    for (i, (h, c)) in cert.sums.hm_terms.iter().zip(&cert.sums.cm_terms).enumerate() {
        let _ = writeln!(table, "{:>4}  {h:>6}  {c:>6}", i + 1);
    }
}

fn run_certify(job: &Job) -> Result<Output, Failure> {
    let c = certify(job)?;
    let warnings = job.filtration.warnings();
    let mut value = certificate_json(job, &c.cert);
    value["ej_series"] = json!({ "values": c.ej.values, "coefficients": c.ej.coefficients });
    value["shift"] = json!({
        "shifted": c.shift.shifted,
        "shift_holds": c.shift.shift_holds,
        "e1_holds": c.shift.e1_holds,
        "ej_nonzero": c.shift.ej_nonzero,
        "positivity_holds": c.shift.positivity_holds,
        "passed": c.shift.passed(),
    });
    let mut table = String::new();
    certificate_table(&mut table, &c.cert);
    let _ = writeln!(table, "E_J values  [{}]", join(&c.ej.values));
    let _ = writeln!(table, "E_J coeffs  [{}]", join(&c.ej.coefficients));
    let _ = writeln!(table, "shift       {}", if c.shift.passed() { "holds" } else { "FAILS" });
    let mut code = if c.shift.passed() { EXIT_OK } else { EXIT_INCONSISTENT };
    if let Some(t) = &c.abg {
        value["alpha_beta_gamma"] = json!({
            "alpha": t.alpha,
            "beta": t.beta,
            "gamma": t.gamma,
            "telescopes": t.telescopes,
        });
        let _ = writeln!(table, "{:>4}  {:>6}  {:>6}  {:>6}", "n", "α", "β", "γ");
        for (i, ((a, b), g)) in t.alpha.iter().zip(&t.beta).zip(&t.gamma).enumerate() {
            let _ = writeln!(table, "{:>4}  {a:>6}  {b:>6}  {g:>6}", i + 1);
        }
        let _ = writeln!(table, "telescopes  {}", t.telescopes);
        if !t.telescopes {
            code = EXIT_INCONSISTENT;
        }
    }
    value["warnings"] = json!(warnings);
    warnings_table(&mut table, &warnings);
    Ok(Output { value, table, code })
}

fn comparison_json(c: &Comparison) -> Value {
    json!({ "i": c.i, "value": c.value, "bound": c.bound, "holds": c.holds })
}

/// A failed comparison that is backed by a theorem under the checked
/// hypotheses; `r <= e_0 - 1` is only such in dimension one.
pub fn bounds_violated(report: &BoundsReport, d: usize) -> bool {
    !report.informational
        && (report.coefficient_bounds.iter().any(|c| !c.holds)
            || !report.e1_bound.holds
            || report.reconstruction.iter().any(|c| !c.holds)
            || (d == 1 && !report.reduction_bound.holds))
}

fn run_bounds(job: &Job) -> Result<Output, Failure> {
    let f = &job.filtration;
    let e = hilbert_coefficients(f, job.options.n_cap)?;
    let rd = reduction(job)?;
    let cert = certify_depth(f, &rd, &e)?;
    let report = check_bounds(f, &cert, job.options.force)?;
    let warnings = f.warnings();
    let mut value = certificate_json(job, &cert);
    value["coefficient_bounds"] = report.coefficient_bounds.iter().map(comparison_json).collect();
    value["e1_bound"] = comparison_json(&report.e1_bound);
    value["reduction_bound"] = comparison_json(&report.reduction_bound);
    value["reconstruction"] = report.reconstruction.iter().map(comparison_json).collect();
    value["informational"] = json!(report.informational);
    value["passed"] = json!(report.passed());
    value["warnings"] = json!(warnings);

    let mut table = String::new();
    if report.informational {
        let _ = writeln!(table, "INFORMATIONAL: hypotheses not met, run was forced");
    }
    certificate_table(&mut table, &cert);
    let _ = writeln!(table, "{:<16}  {:>3}  {:>8}  {:>8}  holds", "check", "i", "value", "bound");
    let mut row = |name: &str, c: &Comparison| {
        let _ = writeln!(table, "{name:<16}  {:>3}  {:>8}  {:>8}  {}", c.i, c.value, c.bound, c.holds);
    };
    for c in &report.coefficient_bounds {
        row("e_i bound", c);
    }
    row("e_1 <= C(e_0,2)", &report.e1_bound);
    row("r <= e_0 - 1", &report.reduction_bound);
    for c in &report.reconstruction {
        row("reconstruction", c);
    }
    warnings_table(&mut table, &warnings);
    let code = if bounds_violated(&report, f.dim()) {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    };
    Ok(Output { value, table, code })
}
