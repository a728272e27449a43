//! Explicit constants of the weighted-energy lemmas and the interpolation
//! inequalities, assembled exactly as displayed in their proofs.

use serde::Serialize;

use crate::error::{Error, Result};

fn require(cond: bool, field: &str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(field, reason))
    }
}

/// Interpolation constant `c_δ0 = 2⁴(δ0⁻¹ + 2⁹ s⁴ c_γ⁴)`.
pub fn c_delta(delta0: f64, s: f64, c_gamma: f64) -> f64 {
    16.0 * (1.0 / delta0 + 512.0 * s.powi(4) * c_gamma.powi(4))
}

/// Parameter choices in the first weighted-energy lemma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstLemmaChoices {
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
}

pub fn first_lemma_choices(eps: f64, s: f64, c_gamma: f64) -> FirstLemmaChoices {
    let c2 = c_gamma * c_gamma;
    FirstLemmaChoices {
        delta1: eps / 4.0,
        delta2: eps * eps / (32.0 * c2 * s * s),
        delta3: eps.powi(4) / (8.0 * c2 * c2 * s * s * (16.0 * s * s + eps * eps * (s - 2.0).powi(2))),
    }
}

/// `c1(ε, s) = (c_γ² s² / δ1) · c_δ3 · (1/(2δ2) + c_γ²(s−2)²)`.
pub fn c1(eps: f64, s: f64, c_gamma: f64) -> f64 {
    let d = first_lemma_choices(eps, s, c_gamma);
    let c2 = c_gamma * c_gamma;
    (c2 * s * s / d.delta1) * c_delta(d.delta3, s, c_gamma) * (1.0 / (2.0 * d.delta2) + c2 * (s - 2.0).powi(2))
}

/// Parameter choices in the second weighted-energy lemma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondLemmaChoices {
    pub delta1: f64,
    pub delta2: f64,
}

pub fn second_lemma_choices(eps: f64, s: f64, c_gamma: f64) -> SecondLemmaChoices {
    let c2 = c_gamma * c_gamma;
    SecondLemmaChoices {
        delta1: eps / 16.0,
        delta2: eps * eps / (128.0 * c2 * (s * s + c2 * s * s * (s - 1.0).powi(2))),
    }
}

/// `c2(ε, s) = c1(ε/2, s) + (c_δ2 / δ1)(c_γ² s² + c_γ⁴ s² (s−1)²)`.
pub fn c2(eps: f64, s: f64, c_gamma: f64) -> f64 {
    let d = second_lemma_choices(eps, s, c_gamma);
    let cg2 = c_gamma * c_gamma;
    c1(eps / 2.0, s, c_gamma)
        + c_delta(d.delta2, s, c_gamma) / d.delta1 * (cg2 * s * s + cg2 * cg2 * s * s * (s - 1.0).powi(2))
}

/// `c3 = 2(c1(1/4, s) + c2(1/4, s))`.
pub fn c3(s: f64, c_gamma: f64) -> f64 {
    2.0 * (c1(0.25, s, c_gamma) + c2(0.25, s, c_gamma))
}

/// Induction constant of the iterated interpolation inequality:
/// `ĉ(δ, 1, s) = 1`, `ĉ(δ, k+1, s) = 2 c_{δ/2}(s) ĉ(1/(2c_{δ/2}(s)), k, s−4)`.
pub fn c_hat(delta: f64, k: usize, s: f64, c_gamma: f64) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    let cd = c_delta(delta / 2.0, s, c_gamma);
    2.0 * cd * c_hat(1.0 / (2.0 * cd), k - 1, s - 4.0, c_gamma)
}

/// Constant of the localised energy inequality controlled by `∫|Δu|²γ^{s−4k}`.
pub fn c4(k: usize, s: f64, c_gamma: f64) -> f64 {
    let cg2 = c_gamma * c_gamma;
    if k <= 1 {
        (16.0 * cg2 * s * s) * (64.0 * cg2 * s * s + cg2 * (s - 2.0).powi(2))
            + 4.0 * (cg2 * s * s + cg2 * cg2 * s * s * (s - 1.0).powi(2))
    } else {
        let c3v = c3(s, c_gamma);
        c3v * (c_hat(1.0, k - 1, s - 4.0, c_gamma) + c_hat(1.0 / (2.0 * c3v), k, s, c_gamma))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsInputs {
    pub eps: f64,
    pub s: f64,
    pub n: usize,
    pub c_gamma: f64,
    pub delta0: f64,
    pub k: usize,
}

/// Every constant for one set of inputs, for audit by hand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsTable {
    pub inputs: ConstantsInputs,
    pub first_lemma: FirstLemmaChoices,
    pub second_lemma: SecondLemmaChoices,
    pub c_delta0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c_hat: f64,
}

pub fn assemble_constants(eps: f64, s: f64, n: usize, c_gamma: f64, delta0: f64, k: usize) -> Result<ConstantsTable> {
    require(eps > 0.0 && eps.is_finite(), "eps", "ε > 0 required")?;
    require(delta0 > 0.0 && delta0.is_finite(), "delta0", "δ0 > 0 required")?;
    require(c_gamma >= 1.0 && c_gamma.is_finite(), "c_gamma", "c_γ ≥ 1 required")?;
    require(s > 8.0 && s.is_finite(), "s", "s > 8 required")?;
    require(k >= 1, "k", "k ≥ 1 required")?;
    require(s > 4.0 * k as f64, "s", "s > 4k required")?;
    require(n == 1 || n == 2, "n", "dimension must be 1 or 2")?;
    Ok(ConstantsTable {
        inputs: ConstantsInputs {
            eps,
            s,
            n,
            c_gamma,
            delta0,
            k,
        },
        first_lemma: first_lemma_choices(eps, s, c_gamma),
        second_lemma: second_lemma_choices(eps, s, c_gamma),
        c_delta0: c_delta(delta0, s, c_gamma),
        c1: c1(eps, s, c_gamma),
        c2: c2(eps, s, c_gamma),
        c3: c3(s, c_gamma),
        c4: c4(k, s, c_gamma),
        c_hat: c_hat(delta0, k, s, c_gamma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(c_delta(1.0, 9.0, 1.0), 53_747_728.0);
        assert_eq!(first_lemma_choices(1.0, 9.0, 1.0).delta1, 0.25);
        assert_eq!(second_lemma_choices(1.0, 9.0, 1.0).delta1, 1.0 / 16.0);
        assert_eq!(c_hat(0.3, 1, 12.0, 2.0), 1.0);
    }

    #[test]
    fn preconditions() {
        assert!(assemble_constants(1.0, 8.0, 1, 1.0, 1.0, 1).is_err());
        assert!(assemble_constants(1.0, 12.0, 1, 1.0, 1.0, 3).is_err());
        assert!(assemble_constants(0.0, 12.0, 1, 1.0, 1.0, 1).is_err());
        let t = assemble_constants(1.0, 13.0, 1, 10.3, 0.1, 2).unwrap();
        for v in [t.c_delta0, t.c1, t.c2, t.c3, t.c4, t.c_hat] {
            assert!(v.is_finite() && v > 0.0);
        }
    }
}
