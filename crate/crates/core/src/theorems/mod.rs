//! Registry of executable properties, the trial harness and the
//! counterexample fixtures.

mod checks;
mod counterexamples;
mod property;
mod trial;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, Tolerances};
use crate::seeds::{mix, trial_seed};

pub use counterexamples::{counterexample_registry, Claim, Counterexample};
pub use property::{Description, PropertyId};
pub use trial::{Trial, TrialOutcome, TrialStatus, Witness};

const DIM_TAG: u64 = 0xD1_4E;

/// Inclusive range of matrix dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRange {
    pub lo: usize,
    pub hi: usize,
}

impl DimRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::Malformed(format!("invalid dimension range {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    /// Dimension of the trial with this seed.
    pub fn draw(self, seed: u64) -> usize {
        let span = (self.hi - self.lo + 1) as u64;
        self.lo + (mix(seed, DIM_TAG) % span) as usize
    }
}

impl Default for DimRange {
    fn default() -> Self {
        Self { lo: 2, hi: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginRange {
    pub min: f64,
    pub max: f64,
}

/// Tally of one property over all trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub trials: usize,
    pub passes: usize,
    pub vacuous: usize,
    pub failures: Vec<Witness>,
    /// Range of every recorded margin over the non-failing trials.
    pub margins: BTreeMap<String, MarginRange>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn vacuous_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.vacuous as f64 / self.trials as f64
        }
    }
}

/// Runs one trial. Kernel errors are recorded as failures whose message
/// starts with `fault:`.
pub fn run_trial(id: PropertyId, seed: u64, dim: usize, tol: &Tolerances) -> TrialOutcome {
    let mut t = Trial::new(seed, dim, tol);
    let fault = checks::dispatch(id, &mut t).err().map(|e| e.to_string());
    t.finish(fault)
}

/// Checks a property on fixed inputs. Hypotheses are re-verified on the
/// given matrices; when one fails the outcome is vacuous. Input names follow
/// the property's statement (`A`, `B`, `C`, `D`, `S`, `T`, `H`, `U`, `A1`.., `B1`..).
/// A missing input is a fault.
pub fn check_fixture(id: PropertyId, inputs: &BTreeMap<String, ComplexMatrix>, tol: &Tolerances) -> TrialOutcome {
    let dim = inputs.values().next().map_or(0, ComplexMatrix::dim);
    let mut t = Trial::new(0, dim, tol);
    let fault = checks::dispatch_fixture(id, &mut t, inputs).err().map(|e| e.to_string());
    t.finish(fault)
}

/// Re-executes the trial a witness came from.
pub fn replay(id: PropertyId, witness: &Witness, tol: &Tolerances) -> TrialOutcome {
    run_trial(id, witness.seed, witness.dim, tol)
}

/// Runs `trials` trials of `id` on the current rayon pool. Results are
/// ordered by trial index, so they do not depend on the pool size.
pub fn run_property(id: PropertyId, trials: usize, dims: DimRange, master_seed: u64, tol: &Tolerances) -> PropertyReport {
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let seed = trial_seed(master_seed, id.index(), k);
            run_trial(id, seed, dims.draw(seed), tol)
        })
        .collect();

    let mut report =
        PropertyReport { property: id, trials, passes: 0, vacuous: 0, failures: Vec::new(), margins: BTreeMap::new() };
    for o in outcomes {
        match o.status {
            TrialStatus::Fail => {
                report.failures.push(o.witness);
                continue;
            }
            TrialStatus::Pass => report.passes += 1,
            TrialStatus::Vacuous => report.vacuous += 1,
        }
        for (name, &v) in &o.witness.margins {
            let r = report.margins.entry(name.clone()).or_insert(MarginRange { min: v, max: v });
            r.min = r.min.min(v);
            r.max = r.max.max(v);
        }
    }
    report
}
