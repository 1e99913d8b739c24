//! Shannon, Rényi and Tsallis differential entropies and the associated
//! entropy powers.
//!
//! Everything is computed in nats; bits are produced at the boundary by the
//! exact factor log₂ e.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grid::GriddedDensity;
use crate::{Error, Result, LOG2_E};

/// Orders closer to 1 than this use the Shannon limit.
pub const SHANNON_WINDOW: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    #[default]
    Nats,
    Bits,
}

impl std::str::FromStr for Base {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nats" => Ok(Base::Nats),
            "bits" => Ok(Base::Bits),
            other => Err(Error::InvalidParameter(format!("unknown base {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyValue {
    pub value: f64,
    pub base: Base,
    pub order: f64,
}

impl EntropyValue {
    fn from_nats(nats: f64, order: f64, base: Base) -> Self {
        EntropyValue {
            value: nats,
            base: Base::Nats,
            order,
        }
        .to_base(base)
    }

    pub fn to_base(self, base: Base) -> Self {
        let value = match (self.base, base) {
            (Base::Nats, Base::Bits) => self.value * LOG2_E,
            (Base::Bits, Base::Nats) => self.value / LOG2_E,
            _ => self.value,
        };
        EntropyValue {
            value,
            base,
            ..self
        }
    }
}

/// Which closed form produced an entropy power. Both give the same number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    NatsExp,
    BitsExp,
}

/// ln ∫ 𝓕^q, with max 𝓕 factored out so large q cannot overflow.
pub fn log_integral_power(d: &GriddedDensity, q: f64) -> Result<f64> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "order {q} must be finite and > 0"
        )));
    }
    let fmax = d.max_value();
    if !(fmax > 0.0) {
        return Err(Error::AllZeroDensity);
    }
    let w = d.spec().trapezoid_weights();
    let s: f64 = d
        .values()
        .iter()
        .zip(&w)
        .filter(|(v, _)| **v > 0.0)
        .map(|(v, w)| w * (v / fmax).powf(q))
        .sum();
    let out = q * fmax.ln() + s.ln();
    if !(s > 0.0) || !out.is_finite() {
        return Err(Error::NonIntegrablePower { q, value: out });
    }
    Ok(out)
}

/// −∫ 𝓕 log 𝓕, with 0 log 0 = 0.
pub fn shannon_entropy(d: &GriddedDensity, base: Base) -> EntropyValue {
    let w = d.spec().trapezoid_weights();
    let h: f64 = d
        .values()
        .iter()
        .zip(&w)
        .filter(|(v, _)| **v > 0.0)
        .map(|(v, w)| -w * v * v.ln())
        .sum();
    EntropyValue::from_nats(h, 1.0, base)
}

/// (1/(1−q)) log ∫ 𝓕^q.
pub fn renyi_entropy(d: &GriddedDensity, q: f64, base: Base) -> Result<EntropyValue> {
    if (q - 1.0).abs() < SHANNON_WINDOW {
        return Ok(EntropyValue {
            order: q,
            ..shannon_entropy(d, base)
        });
    }
    let nats = log_integral_power(d, q)? / (1.0 - q);
    Ok(EntropyValue::from_nats(nats, q, base))
}

/// (∫𝓕^q − ∫𝓕)/(1−q), in nats.
pub fn tsallis_entropy(d: &GriddedDensity, q: f64) -> Result<EntropyValue> {
    if (q - 1.0).abs() < SHANNON_WINDOW {
        return Ok(EntropyValue {
            order: q,
            ..shannon_entropy(d, Base::Nats)
        });
    }
    let iq = log_integral_power(d, q)?.exp();
    if !iq.is_finite() {
        return Err(Error::NonIntegrablePower { q, value: iq });
    }
    Ok(EntropyValue {
        value: (iq - d.integrate()) / (1.0 - q),
        base: Base::Nats,
        order: q,
    })
}

/// p^{−p′/p} with p′ = p/(p−1), continuous through p = 1 where it equals 1/e.
fn order_prefactor(p: f64) -> f64 {
    if (p - 1.0).abs() < SHANNON_WINDOW {
        1.0 / E
    } else {
        p.powf(-1.0 / (p - 1.0))
    }
}

/// N_p = (1/2π) p^{−p′/p} exp((2/D) 𝓘_p).
pub fn renyi_entropy_power(d: &GriddedDensity, p: f64, convention: Convention) -> Result<f64> {
    let dim = d.dim() as f64;
    if (p - 1.0).abs() < SHANNON_WINDOW {
        let h = shannon_entropy(d, Base::Nats).value;
        return Ok((2.0 * h / dim).exp() / (2.0 * PI * E));
    }
    let pref = order_prefactor(p) / (2.0 * PI);
    let n = match convention {
        Convention::NatsExp => pref * (2.0 / dim * renyi_entropy(d, p, Base::Nats)?.value).exp(),
        Convention::BitsExp => pref * 2f64.powf(2.0 / dim * renyi_entropy(d, p, Base::Bits)?.value),
    };
    Ok(n)
}

/// N_q^T = (1/2π) q^{−q′/q} [exp_q(𝓢_q)]^{2/D}.
pub fn tsallis_entropy_power(d: &GriddedDensity, q: f64) -> Result<f64> {
    if (q - 1.0).abs() < SHANNON_WINDOW {
        return renyi_entropy_power(d, 1.0, Convention::NatsExp);
    }
    let s = tsallis_entropy(d, q)?.value;
    let dim = d.dim() as f64;
    let base = 1.0 + (1.0 - q) * s;
    if !(base > 0.0) {
        return Err(Error::QExpDomain(base));
    }
    Ok(order_prefactor(q) / (2.0 * PI) * base.powf(2.0 / (dim * (1.0 - q))))
}

/// Ladder k ↦ N_{1+kΔ}, k = 0..m−1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyPowerCurve {
    pub delta: f64,
    pub base_index: f64,
    pub powers: Vec<(usize, f64)>,
    pub dim: usize,
    pub convention: Convention,
}

impl EntropyPowerCurve {
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn order(&self, k: usize) -> f64 {
        self.base_index + k as f64 * self.delta
    }

    pub fn values(&self) -> Vec<f64> {
        self.powers.iter().map(|&(_, n)| n).collect()
    }

    /// (max − min)/mean of the powers.
    pub fn relative_spread(&self) -> f64 {
        let v = self.values();
        let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        (max - min) / mean
    }
}

pub fn entropy_power_curve(
    d: &GriddedDensity,
    delta: f64,
    m: usize,
    convention: Convention,
) -> Result<EntropyPowerCurve> {
    if !(delta > 0.0 && delta <= 0.2) {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} not in (0, 0.2]"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!("ladder length {m} < 2")));
    }
    let powers = (0..m)
        .into_par_iter()
        .map(|k| renyi_entropy_power(d, 1.0 + k as f64 * delta, convention).map(|n| (k, n)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(&(k, n)) = powers.iter().find(|(_, n)| !(*n > 0.0) || !n.is_finite()) {
        return Err(Error::NonIntegrablePower {
            q: 1.0 + k as f64 * delta,
            value: n,
        });
    }
    Ok(EntropyPowerCurve {
        delta,
        base_index: 1.0,
        powers,
        dim: d.dim(),
        convention,
    })
}

/// ln_q x = (x^{1−q} − 1)/(1 − q).
pub fn ln_q(x: f64, q: f64) -> f64 {
    if (q - 1.0).abs() < SHANNON_WINDOW {
        x.ln()
    } else {
        (x.powf(1.0 - q) - 1.0) / (1.0 - q)
    }
}

/// e_q^x = [1 + (1−q)x]^{1/(1−q)}.
pub fn exp_q(x: f64, q: f64) -> Result<f64> {
    if (q - 1.0).abs() < SHANNON_WINDOW {
        return Ok(x.exp());
    }
    let base = 1.0 + (1.0 - q) * x;
    if base < 0.0 {
        return Err(Error::QExpDomain(base));
    }
    Ok(base.powf(1.0 / (1.0 - q)))
}

/// x ⊕_q y = x + y + (1−q) x y.
pub fn oplus_q(x: f64, y: f64, q: f64) -> f64 {
    x + y + (1.0 - q) * x * y
}
