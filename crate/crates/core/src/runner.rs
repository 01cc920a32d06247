//! Batch execution of property suites, the counterexample registry and the
//! grid-refinement study, producing a deterministic report.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::discretize::{convergence_study, derivative_matrix, volterra_matrix, ConvergenceRow};
use crate::error::{Error, Result};
use crate::generators::gen_vector;
use crate::matcore::{inverse, is_invertible, ComplexMatrix, Tolerances, C64};
use crate::seeds::mix;
use crate::theorems::{counterexample_registry, run_property, Counterexample, DimRange, PropertyId, PropertyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Property(PropertyId),
    Counterexamples,
    Discretize,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Property(p) => p.as_str(),
            Suite::Counterexamples => "counterexamples",
            Suite::Discretize => "discretize",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "counterexamples" => Ok(Suite::Counterexamples),
            "discretize" => Ok(Suite::Discretize),
            other => other
                .parse::<PropertyId>()
                .map(Suite::Property)
                .map_err(|_| Error::Malformed(format!("unknown suite {other:?}"))),
        }
    }
}

/// Parses a comma-separated suite list. `all` selects every property, the
/// registry and the discretization study. The result is sorted and
/// deduplicated.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for token in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if token == "all" {
            out.extend(PropertyId::ALL.map(Suite::Property));
            out.push(Suite::Counterexamples);
            out.push(Suite::Discretize);
        } else {
            out.push(token.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Malformed("no suites selected".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub dims: DimRange,
    pub master_seed: u64,
    pub tolerances: Tolerances,
    /// Worker threads; 0 means one per available core.
    pub workers: usize,
    pub discretize_ns: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: parse_suites("all").expect("static suite list"),
            trials: 500,
            dims: DimRange::default(),
            master_seed: 42,
            tolerances: Tolerances::default(),
            workers: 0,
            discretize_ns: vec![50, 100, 200],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Malformed("trials must be at least 1".into()));
        }
        if self.dims.lo == 0 || self.dims.lo > self.dims.hi || self.dims.hi > 64 {
            return Err(Error::Malformed(format!("dims {}..{} outside 1..64", self.dims.lo, self.dims.hi)));
        }
        if self.suites.is_empty() {
            return Err(Error::Malformed("no suites selected".into()));
        }
        self.tolerances.validate()
    }
}

/// Configuration as echoed in the report; excludes the worker count, which
/// does not affect results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub suites: Vec<String>,
    pub trials: usize,
    pub dims: DimRange,
    pub master_seed: u64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretizeReport {
    pub rows: Vec<ConvergenceRow>,
    pub checks: Vec<GridCheck>,
}

impl DiscretizeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: ConfigEcho,
    pub properties: Vec<PropertyReport>,
    pub counterexamples: Option<Vec<Counterexample>>,
    pub discretize: Option<DiscretizeReport>,
    pub verdict: OverallVerdict,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdict == OverallVerdict::Pass
    }

    /// Canonical JSON body; wall time is not part of it.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "seed {}  trials {}  dims {}..{}", c.master_seed, c.trials, c.dims.lo, c.dims.hi);
        for p in &self.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{status}  {:<32} trials={} passes={} vacuous={} failures={}",
                p.property.as_str(),
                p.trials,
                p.passes,
                p.vacuous,
                p.failures.len()
            );
            for w in p.failures.iter().take(3) {
                let _ = writeln!(s, "      witness seed={} dim={}: {}", w.seed, w.dim, w.message);
            }
            if p.vacuous_fraction() > 0.5 {
                let _ = writeln!(s, "      warning: vacuous fraction {:.2} exceeds 0.5", p.vacuous_fraction());
            }
        }
        if let Some(reg) = &self.counterexamples {
            for ce in reg {
                let status = if ce.confirmed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status}  counterexample {:<22} {}", ce.name, ce.description);
                for cl in ce.claims.iter().filter(|cl| cl.expected != cl.observed) {
                    let _ = writeln!(s, "      {}: expected {:?}, observed {:?}", cl.statement, cl.expected, cl.observed);
                }
            }
        }
        if let Some(d) = &self.discretize {
            let _ = writeln!(s, "n, lambda_min_laplacian, lambda_max_volterra_sq, sigma_min_sum");
            for r in &d.rows {
                let _ = writeln!(s, "{}, {:.10}, {:.10}, {:.10}", r.n, r.lambda_min_laplacian, r.lambda_max_volterra_sq, r.sigma_min_sum);
            }
            for ch in &d.checks {
                let status = if ch.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status}  grid {:<30} {}", ch.name, ch.detail);
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "overall: {verdict}  ({:.2} s)", self.wall_time.as_secs_f64());
        s
    }
}

pub fn run(config: &RunConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Malformed(format!("worker pool: {e}")))?;
    let tol = config.tolerances;

    let properties: Vec<PropertyReport> = config
        .suites
        .iter()
        .filter_map(|s| match s {
            Suite::Property(p) => Some(*p),
            _ => None,
        })
        .map(|p| pool.install(|| run_property(p, config.trials, config.dims, config.master_seed, &tol)))
        .collect();

    let counterexamples =
        if config.suites.contains(&Suite::Counterexamples) { Some(counterexample_registry(&tol)?) } else { None };
    let discretize = if config.suites.contains(&Suite::Discretize) {
        Some(discretize_suite(&config.discretize_ns, config.master_seed, &tol)?)
    } else {
        None
    };

    let ok = properties.iter().all(PropertyReport::passed)
        && counterexamples.iter().flatten().all(|c| c.confirmed)
        && discretize.iter().all(DiscretizeReport::passed);
    Ok(SuiteReport {
        config: ConfigEcho {
            suites: config.suites.iter().map(|s| s.name().to_string()).collect(),
            trials: config.trials,
            dims: config.dims,
            master_seed: config.master_seed,
            tolerances: tol,
        },
        properties,
        counterexamples,
        discretize,
        verdict: if ok { OverallVerdict::Pass } else { OverallVerdict::Fail },
        wall_time: start.elapsed(),
    })
}

fn check(checks: &mut Vec<GridCheck>, name: String, passed: bool, detail: String) {
    checks.push(GridCheck { name, passed, detail });
}

/// Convergence table plus the grid identities at every size.
pub fn discretize_suite(ns: &[usize], seed: u64, tol: &Tolerances) -> Result<DiscretizeReport> {
    let rows = convergence_study(ns)?;
    let mut checks = Vec::new();
    let volterra_top = 4.0 / std::f64::consts::PI.powi(2);
    for row in &rows {
        let n = row.n;
        let d = derivative_matrix(n)?.matrix;
        let v = volterra_matrix(n)?.matrix;
        let h = 1.0 / n as f64;

        let residual = (&(&d * &v) - &ComplexMatrix::identity(n)).frobenius_norm();
        check(&mut checks, format!("right_inverse[n={n}]"), residual <= n as f64 * 1e-13, format!("‖DV − I‖_F = {residual:e}"));

        let diag_ok = v.diag().iter().all(|z| *z == C64::new(h, 0.0));
        check(&mut checks, format!("volterra_spectrum[n={n}]"), diag_ok, format!("σ(V) = {{{h}}} from the triangular diagonal"));

        let s = (&(&d * &d.adjoint()) + &(&v.adjoint() * &v)).hermitian_part();
        let verdict = is_invertible(&s, tol)?;
        let mut worst = f64::INFINITY;
        if verdict.is_true() {
            let s_inv = inverse(&s, tol)?.hermitian_part();
            for k in 0..8 {
                let x = gen_vector(n, mix(seed, (n as u64) << 8 | k))?;
                worst = worst.min(x.norm().powi(2) - s_inv.quadratic_form(&x)?);
            }
        }
        check(
            &mut checks,
            format!("product_shadow[n={n}]"),
            verdict.is_true() && worst >= -1e-8,
            format!("|D*|²+|V|² invertible: {verdict:?}; min ‖x‖² − ⟨S⁻¹x,x⟩ = {worst:e}"),
        );

        let lap_exact = 4.0 * (n * n) as f64 * (std::f64::consts::PI * h / 2.0).sin().powi(2);
        let lap_rel = (row.lambda_min_laplacian - lap_exact).abs() / lap_exact;
        check(&mut checks, format!("laplacian_closed_form[n={n}]"), lap_rel <= 2e-3, format!("relative error {lap_rel:e}"));

        if n >= 50 {
            let vol_rel = (row.lambda_max_volterra_sq - volterra_top).abs() / volterra_top;
            check(&mut checks, format!("volterra_top[n={n}]"), vol_rel <= 0.05, format!("relative error {vol_rel:e} vs 4/π²"));
            check(
                &mut checks,
                format!("sum_lower_bound[n={n}]"),
                row.sigma_min_sum >= 9.0,
                format!("σ_min = {}", row.sigma_min_sum),
            );
        }
    }
    let increasing = rows.windows(2).all(|w| w[0].lambda_min_laplacian < w[1].lambda_min_laplacian);
    check(&mut checks, "laplacian_trend".into(), increasing, "λ_min(L_D) increases with n".into());
    Ok(DiscretizeReport { rows, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        let all = parse_suites("all").unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(parse_suites("discretize, check_sqrt_monotone,discretize").unwrap().len(), 2);
        let err = parse_suites("check_sqrt_monotone,bogus").unwrap_err();
        assert!(err.to_string().contains("bogus"));
        assert!(parse_suites("").is_err());
    }

    #[test]
    fn smallest_run() {
        let cfg = RunConfig {
            suites: parse_suites("check_abs_parallelogram").unwrap(),
            trials: 1,
            dims: DimRange::new(2, 2).unwrap(),
            workers: 1,
            ..RunConfig::default()
        };
        let r = run(&cfg).unwrap();
        assert!(r.passed());
        assert_eq!(r.properties[0].trials, 1);
        assert!(r.properties[0].failures.is_empty());
    }

    #[test]
    fn config_validation() {
        let cfg = RunConfig { trials: 0, ..RunConfig::default() };
        assert!(run(&cfg).is_err());
        let cfg = RunConfig { dims: DimRange { lo: 2, hi: 65 }, ..RunConfig::default() };
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn registry_suite() {
        let cfg = RunConfig { suites: vec![Suite::Counterexamples], ..RunConfig::default() };
        let r = run(&cfg).unwrap();
        assert!(r.passed());
        assert!(r.properties.is_empty());
        assert_eq!(r.counterexamples.as_ref().unwrap().len(), 6);
    }
}
