use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Identifier of one executable statement in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyId {
    #[serde(rename = "check_sqrt_monotone")]
    SqrtMonotone,
    #[serde(rename = "check_sqrt_subadditive")]
    SqrtSubadditive,
    #[serde(rename = "check_abs_parallelogram")]
    AbsParallelogram,
    #[serde(rename = "check_order_inverse")]
    OrderInverse,
    #[serde(rename = "check_main_theorem")]
    MainTheorem,
    #[serde(rename = "check_corollaries_invertible")]
    CorollariesInvertible,
    #[serde(rename = "check_block_corollary")]
    BlockCorollary,
    #[serde(rename = "check_abs_sum_equivalence")]
    AbsSumEquivalence,
    #[serde(rename = "check_normal_characterization")]
    NormalCharacterization,
    #[serde(rename = "check_spectral_inclusion_sum")]
    SpectralInclusionSum,
    #[serde(rename = "check_spectrum_classics")]
    SpectrumClassics,
    #[serde(rename = "check_subadd_submult_bridge")]
    SubaddSubmultBridge,
    #[serde(rename = "check_product_positive")]
    ProductPositive,
    #[serde(rename = "check_finite_sums")]
    FiniteSums,
}

/// Human-readable traceability row for a property.
pub struct Description {
    pub statements: &'static [&'static str],
    pub hypotheses: &'static str,
    pub semantics: &'static str,
}

impl PropertyId {
    pub const ALL: [PropertyId; 14] = [
        PropertyId::SqrtMonotone,
        PropertyId::SqrtSubadditive,
        PropertyId::AbsParallelogram,
        PropertyId::OrderInverse,
        PropertyId::MainTheorem,
        PropertyId::CorollariesInvertible,
        PropertyId::BlockCorollary,
        PropertyId::AbsSumEquivalence,
        PropertyId::NormalCharacterization,
        PropertyId::SpectralInclusionSum,
        PropertyId::SpectrumClassics,
        PropertyId::SubaddSubmultBridge,
        PropertyId::ProductPositive,
        PropertyId::FiniteSums,
    ];

    /// Stable position used for seed derivation.
    pub fn index(self) -> u64 {
        self as u64
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::SqrtMonotone => "check_sqrt_monotone",
            PropertyId::SqrtSubadditive => "check_sqrt_subadditive",
            PropertyId::AbsParallelogram => "check_abs_parallelogram",
            PropertyId::OrderInverse => "check_order_inverse",
            PropertyId::MainTheorem => "check_main_theorem",
            PropertyId::CorollariesInvertible => "check_corollaries_invertible",
            PropertyId::BlockCorollary => "check_block_corollary",
            PropertyId::AbsSumEquivalence => "check_abs_sum_equivalence",
            PropertyId::NormalCharacterization => "check_normal_characterization",
            PropertyId::SpectralInclusionSum => "check_spectral_inclusion_sum",
            PropertyId::SpectrumClassics => "check_spectrum_classics",
            PropertyId::SubaddSubmultBridge => "check_subadd_submult_bridge",
            PropertyId::ProductPositive => "check_product_positive",
            PropertyId::FiniteSums => "check_finite_sums",
        }
    }

    pub fn description(self) -> Description {
        match self {
            PropertyId::SqrtMonotone => Description {
                statements: &[
                    "0≤A≤B ⟹ √A ≤ √B",
                    "0 ≤ A ≤ I and α ∈ [0,1] ⟹ A^α ≥ A",
                    "AB = BA, A,B ≥ 0 ⟹ (A+B)^{1/n} ≤ A^{1/n} + B^{1/n}",
                    "0≤A≤B ⟹ A^α ≤ B^α for α ∈ {1/3, 1/2, 2/3} (empirical, not a kernel guarantee)",
                ],
                hypotheses: "A psd, B = A + psd; A rescaled to ‖A‖ = 1 for the power claim; positive commuting pair, n ∈ {2,3,4}",
                semantics: "each conclusion is a Loewner comparison; Indeterminate makes the trial vacuous",
            },
            PropertyId::SqrtSubadditive => Description {
                statements: &["AB = BA, A,B ≥ 0 ⟹ √(A+B) ≤ √A + √B"],
                hypotheses: "positive commuting pair",
                semantics: "Loewner comparison of √(A+B) and √A + √B",
            },
            PropertyId::AbsParallelogram => Description {
                statements: &["|A+B|² ≤ 2|A|² + 2|B|² for all A, B"],
                hypotheses: "two independent generic matrices, no structural assumption",
                semantics: "Loewner comparison of (A+B)*(A+B) and 2A*A + 2B*B",
            },
            PropertyId::OrderInverse => Description {
                statements: &[
                    "0 ≤ A ≤ B, A invertible ⟹ B invertible and B⁻¹ ≤ A⁻¹",
                    "A ≥ 0 ⟹ σ(A) ⊂ [0, ∞), since A − λI ≥ −λI > 0 for λ < 0",
                ],
                hypotheses: "A positive definite, B = A + psd; P psd for the spectral claim",
                semantics: "invertibility verdict of B, Loewner comparison of inverses, real nonnegative spectrum of P",
            },
            PropertyId::MainTheorem => Description {
                statements: &[
                    "A+B invertible ⟹ |A|²+|B|² invertible",
                    "A+B invertible ⟹ |A|+|B| and |A|^{2ⁿ}+|B|^{2ⁿ} invertible",
                    "A,B ≥ 0, αA+βB invertible ⟹ A+B invertible",
                ],
                hypotheses: "generic A, B with A+B invertible beyond the guard band; n ∈ {1,2,3}; positive pairs with random nonzero α, β",
                semantics: "premise-guarded implications; records λ_min(|A|²+|B|²) − σ_min(A+B)²/2 relative to ‖A+B‖²",
            },
            PropertyId::CorollariesInvertible => Description {
                statements: &[
                    "A invertible ⟹ |A−B|+|B| invertible for every B",
                    "A invertible ⟹ |Re A|+|Im A| invertible",
                    "A+B invertible, p,q > 0 ⟹ |A|^p+|B|^q invertible",
                ],
                hypotheses: "A = positive definite × unitary or a guarded generic matrix; p, q ∈ {0.5, 1, 1.7, 2, 3.2}",
                semantics: "premise-guarded invertibility verdicts",
            },
            PropertyId::BlockCorollary => Description {
                statements: &[
                    "T = [[A,B],[C,D]] invertible ⟹ |A|+|C| and |B|+|D| invertible",
                    "B = 0, D normal ⟹ σ(D) ⊂ σ(T); C = 0, A normal ⟹ σ(A) ⊂ σ(T)",
                ],
                hypotheses: "generic quadrants with T invertible beyond the guard band; triangular fixtures with normal diagonal blocks",
                semantics: "invertibility verdicts; every eigenvalue λ of the normal block makes T − λI singular; σ(T) = σ(A) ∪ σ(D) for triangular T",
            },
            PropertyId::AbsSumEquivalence => Description {
                statements: &[
                    "AB = BA, A or B normal ⟹ (|A|+|B| invertible ⟺ |A|²+|B|² invertible)",
                    "same hypotheses ⟹ (|A|+|B| invertible ⟺ |A|ⁿ+|B|ⁿ invertible)",
                ],
                hypotheses: "commuting normal pair, with a shared null direction in half of the trials; n ∈ {2,3,5}",
                semantics: "the three invertibility verdicts agree whenever all are decided",
            },
            PropertyId::NormalCharacterization => Description {
                statements: &[
                    "T = A+iB normal ⟹ (T invertible ⟺ |A|+|B| invertible)",
                    "λ = α+iβ ∈ σ(T) ⟺ |A−αI|+|B−βI| is not invertible",
                    "T normal ⟹ |Re T| ≤ |T|, |Im T| ≤ |T|, |T| ≤ |Re T|+|Im T|",
                ],
                hypotheses: "generic normal T; λ drawn from σ(T) or at distance ≥ 10·tol_spec from it",
                semantics: "verdict agreement, membership agreement, Loewner comparisons",
            },
            PropertyId::SpectralInclusionSum => Description {
                statements: &[
                    "S, T normal, ST = TS ⟹ σ(S+T) ⊂ σ(Re S+Re T) + iσ(Im S+Im T)",
                    "T = A+iB normal ⟹ σ(T) ⊂ σ(A) + iσ(B)",
                    "AB = BA ⟹ σ(A+B) ⊂ σ(A)+σ(B) and σ(AB) ⊂ σ(A)σ(B)",
                    "S normal, ST = TS ⟹ S*T = TS*",
                ],
                hypotheses: "commuting normal pair; its real parts as the commuting Hermitian pair",
                semantics: "directed containment at tol_spec; commutator norm at tol_eq",
            },
            PropertyId::SpectrumClassics => Description {
                statements: &[
                    "A self-adjoint ⟹ σ(A) ⊂ ℝ",
                    "U unitary ⟹ σ(U) ⊂ {λ : |λ| = 1}, via ||1−|λ||·I ≤ |U − λI|",
                    "AB = BA, A normal, B normal ⟹ ||A|−|B|| ≤ |A−B|",
                    "T normal with σ(T) ⊂ ℝ ⟹ T self-adjoint",
                    "T normal with σ(T) ⊂ iℝ ⟹ T* = −T",
                ],
                hypotheses: "Hermitian A; unitary U; commuting normal pair (hyponormal equals normal in finite dimension); U diag(real) U* and U diag(imaginary) U*",
                semantics: "spectral location tests, Loewner comparisons, ‖T ∓ T*‖ ≤ tol_eq·‖T‖",
            },
            PropertyId::SubaddSubmultBridge => Description {
                statements: &[
                    "A, B self-adjoint, AB = BA ⟹ σ(e^{A+B}) = σ(e^A e^B)",
                    "A, B positive invertible, AB = BA ⟹ σ(ln(AB)) = σ(ln A + ln B)",
                    "on the same fixtures σ(A+B) ⊂ σ(A)+σ(B) and σ(AB) ⊂ σ(A)σ(B)",
                ],
                hypotheses: "commuting Hermitian pair; commuting positive definite pair",
                semantics: "multiset equality at tol_spec; directed containment",
            },
            PropertyId::ProductPositive => Description {
                statements: &[
                    "AB ≥ 0 and AB invertible ⟹ |A*|²+|B|² is invertible",
                    "AB = I ⟹ |A*|²+|B|² invertible",
                    "AB ≥ 0 invertible ⟹ ⟨(|A*|²+|B|²)⁻¹x,x⟩ ≤ ⟨(AB)⁻¹x,x⟩",
                    "BA ≥ 0 invertible ⟹ ⟨(|A|²+|B*|²)⁻¹x,x⟩ ≤ ⟨(BA)⁻¹x,x⟩",
                ],
                hypotheses: "P positive definite, A invertible, B = A⁻¹P (so AB = P); B = A⁻¹; B = PA⁻¹ for the left form",
                semantics: "invertibility verdict, AB ≤ 2(AA*+B*B), sharpest constant c with AB ≤ c(AA*+B*B), quadratic forms on 8 vectors",
            },
            PropertyId::FiniteSums => Description {
                statements: &[
                    "‖Σ a_k A_k x‖² ≤ Σ|a_k|² ⟨Σ A_k*A_k x, x⟩",
                    "Σ a_k A_k invertible ⟹ Σ|A_k|² invertible",
                    "Σ A_k B_k ≥ 0 invertible ⟹ Σ|A_k*|² + Σ|B_k|² invertible",
                    "Σ A_k A_k* invertible ⟹ Σ|A_k*|² + Σ|A_k|² invertible",
                ],
                hypotheses: "k ∈ {2,3,4} generic matrices, nonzero coefficients; Σ A_k B_k = P built by solving for B_1",
                semantics: "vector inequality on 8 vectors, invertibility verdicts, Σ A_kB_k ≤ ½Σ(|B_k|²+|A_k*|²)",
            },
        }
    }

    /// Multi-line traceability text.
    pub fn explain(self) -> String {
        let d = self.description();
        let mut out = format!("{}\n", self.as_str());
        out.push_str("  statements:\n");
        for s in d.statements {
            out.push_str(&format!("    - {s}\n"));
        }
        out.push_str(&format!("  hypotheses: {}\n", d.hypotheses));
        out.push_str(&format!("  check: {}\n", d.semantics));
        out
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PropertyId::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown property {s:?}")))
    }
}
