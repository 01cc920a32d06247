use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{gen_matrix, gen_pair, gen_vector, GeneratorKind, Sampler};
use crate::matcore::{invertibility, loewner_leq, ComplexMatrix, ComplexVector, Tolerances, Verdict};
use crate::seeds::mix;

/// Evidence for one failing trial, enough to replay it bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub dim: usize,
    pub inputs: BTreeMap<String, ComplexMatrix>,
    pub margins: BTreeMap<String, f64>,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    Pass,
    Vacuous,
    Fail,
}

/// Everything one trial produced.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub status: TrialStatus,
    pub witness: Witness,
}

/// Mutable state of a running trial: its random stream, the recorded inputs
/// and margins, and the first definite failure.
pub struct Trial<'a> {
    pub seed: u64,
    pub dim: usize,
    pub tol: &'a Tolerances,
    pub rng: Sampler,
    draws: u64,
    inputs: BTreeMap<String, ComplexMatrix>,
    margins: BTreeMap<String, f64>,
    failures: Vec<String>,
    vacuous: Vec<String>,
}

impl<'a> Trial<'a> {
    pub fn new(seed: u64, dim: usize, tol: &'a Tolerances) -> Self {
        Self {
            seed,
            dim,
            tol,
            rng: Sampler::new(mix(seed, 0xA11CE)),
            draws: 0,
            inputs: BTreeMap::new(),
            margins: BTreeMap::new(),
            failures: Vec::new(),
            vacuous: Vec::new(),
        }
    }

    fn next_seed(&mut self) -> u64 {
        self.draws += 1;
        mix(self.seed, self.draws)
    }

    pub fn matrix(&mut self, kind: GeneratorKind, dim: usize, scale: f64) -> Result<ComplexMatrix> {
        let seed = self.next_seed();
        gen_matrix(kind, dim, seed, scale)
    }

    pub fn pair(&mut self, kind: GeneratorKind, dim: usize, scale: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let seed = self.next_seed();
        gen_pair(kind, dim, seed, scale)
    }

    pub fn vector(&mut self, dim: usize) -> Result<ComplexVector> {
        let seed = self.next_seed();
        gen_vector(dim, seed)
    }

    pub fn record(&mut self, name: &str, m: &ComplexMatrix) {
        self.inputs.insert(name.to_string(), m.clone());
    }

    /// Keeps the smallest value seen under `name`.
    pub fn margin(&mut self, name: &str, value: f64) {
        let slot = self.margins.entry(name.to_string()).or_insert(value);
        if value < *slot || value.is_nan() {
            *slot = value;
        }
    }

    /// Keeps the largest value seen under `name`.
    pub fn margin_max(&mut self, name: &str, value: f64) {
        let slot = self.margins.entry(name.to_string()).or_insert(value);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
    }

    pub fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    pub fn expect(&mut self, label: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(format!("{label}: {}", detail()));
        }
    }

    fn mark_vacuous(&mut self, label: &str) {
        self.vacuous.push(label.to_string());
    }

    /// Guards a hypothesis: returns whether the conclusion should be checked.
    /// Anything but a definite `True` makes the trial vacuous.
    pub fn premise(&mut self, label: &str, verdict: Verdict) -> bool {
        if verdict.is_true() {
            true
        } else {
            self.mark_vacuous(label);
            false
        }
    }

    pub fn assume(&mut self, label: &str, holds: bool) -> bool {
        self.premise(label, if holds { Verdict::True } else { Verdict::Indeterminate })
    }

    pub fn premise_invertible(&mut self, label: &str, m: &ComplexMatrix) -> Result<bool> {
        let v = invertibility(m, self.tol)?;
        Ok(self.premise(label, v.verdict))
    }

    /// Records the verdict of a conclusion that must be `expected`.
    pub fn expect_verdict(&mut self, label: &str, got: Verdict, expected: Verdict) {
        if got == expected {
            return;
        }
        if got.is_decided() {
            self.fail(format!("{label}: expected {expected:?}, got {got:?}"));
        } else {
            self.mark_vacuous(label);
        }
    }

    pub fn expect_invertible(&mut self, label: &str, m: &ComplexMatrix) -> Result<Verdict> {
        let v = invertibility(m, self.tol)?;
        self.margin(&format!("{label}.ratio"), v.ratio);
        self.expect_verdict(label, v.verdict, Verdict::True);
        Ok(v.verdict)
    }

    /// Invertibility conclusion backed by a proven lower bound `floor` on the
    /// true ratio `σ_min/σ_max`. A verdict other than `True` counts as a
    /// failure only when `floor` clears the guard band; below it the instance
    /// is beyond the resolution of the decision and the trial is vacuous.
    pub fn expect_invertible_floor(&mut self, label: &str, m: &ComplexMatrix, floor: f64) -> Result<Verdict> {
        let v = invertibility(m, self.tol)?;
        self.margin(&format!("{label}.ratio"), v.ratio);
        if !v.verdict.is_true() {
            if floor > self.tol.guard * self.tol.tol_inv {
                self.fail(format!("{label}: verdict {:?} with ratio {:e} below proven floor {:e}", v.verdict, v.ratio, floor));
            } else {
                self.mark_vacuous(label);
            }
        }
        Ok(v.verdict)
    }

    pub fn expect_singular(&mut self, label: &str, m: &ComplexMatrix) -> Result<()> {
        let v = invertibility(m, self.tol)?;
        self.expect_verdict(label, v.verdict, Verdict::False);
        Ok(())
    }

    /// Conclusion `a ≤ b`; records `λ_min(b − a)/scale` as a margin.
    pub fn expect_loewner(&mut self, label: &str, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
        let c = loewner_leq(&a.hermitian_part(), &b.hermitian_part(), self.tol)?;
        self.margin(label, c.min_eigenvalue / c.scale);
        if c.verdict == Verdict::False {
            self.fail(format!("{label}: λ_min(B − A) = {:e} at scale {:e}", c.min_eigenvalue, c.scale));
        } else if c.verdict == Verdict::Indeterminate {
            self.mark_vacuous(label);
        }
        Ok(())
    }

    pub fn finish(self, fault: Option<String>) -> TrialOutcome {
        let (status, message) = if let Some(f) = fault {
            (TrialStatus::Fail, format!("fault: {f}"))
        } else if !self.failures.is_empty() {
            (TrialStatus::Fail, self.failures.join("; "))
        } else if !self.vacuous.is_empty() {
            (TrialStatus::Vacuous, format!("vacuous: {}", self.vacuous.join(", ")))
        } else {
            (TrialStatus::Pass, String::new())
        };
        TrialOutcome {
            status,
            witness: Witness { seed: self.seed, dim: self.dim, inputs: self.inputs, margins: self.margins, message },
        }
    }
}
