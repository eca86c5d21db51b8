//! Evaluation of jet expressions at a point.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use thiserror::Error;

use super::expr::ScalarExpr;
use super::jet::JetSymbol;
use super::param::{Param, ParamValues};
use super::Q;

/// Values bound to the jet symbols at a point.
///
/// The dilaton itself enters only through `e^{2f}`, so the bindings carry
/// `exp2f` rather than `f`: with rational `exp2f` every even exponential
/// power evaluates exactly, and the floating path takes square roots for the
/// odd powers.
#[derive(Debug, Clone)]
pub struct JetBindings<T> {
    pub exp2f: T,
    pub jets: BTreeMap<JetSymbol, T>,
}

impl<T> JetBindings<T> {
    pub fn new(exp2f: T) -> Self {
        Self {
            exp2f,
            jets: BTreeMap::new(),
        }
    }

    pub fn set(mut self, index: &[u8], value: T) -> Self {
        self.jets.insert(JetSymbol::new(index), value);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("unbound parameter `{0}`")]
    UnboundParam(Param),
    #[error("unbound jet symbol `{0}`")]
    UnboundJet(JetSymbol),
    #[error("parameter `{0}` is zero but appears with negative exponent")]
    ZeroToNegativePower(Param),
    #[error("e^{{2f}} is zero but appears with negative exponent")]
    ZeroExpValue,
    #[error(
        "odd exponential power e^{{{0}f}} cannot be evaluated exactly; use the floating variant"
    )]
    OddExpPower(i32),
    #[error("e^{{2f}} = {0} is not positive; cannot take the square root")]
    NegativeExpValue(f64),
}

fn q_pow(base: &Q, k: i32) -> Result<Q, ()> {
    if k == 0 {
        return Ok(Q::one());
    }
    if base.is_zero() {
        return if k > 0 { Ok(Q::zero()) } else { Err(()) };
    }
    let mut acc = Q::one();
    for _ in 0..k.unsigned_abs() {
        acc *= base;
    }
    if k < 0 {
        acc = Q::one() / acc;
    }
    Ok(acc)
}

impl ScalarExpr {
    /// Exact evaluation. Requires every parameter and jet symbol to be bound
    /// and every exponential power to be even.
    pub fn eval_rational(
        &self,
        jets: &JetBindings<Q>,
        params: &ParamValues<Q>,
    ) -> Result<Q, EvalError> {
        let mut acc = Q::zero();
        for (key, coeff) in self.terms() {
            let mut v = coeff.clone();
            for (p, k) in key.params.iter() {
                let val = params.get(p).ok_or(EvalError::UnboundParam(p))?;
                v *= q_pow(val, k).map_err(|_| EvalError::ZeroToNegativePower(p))?;
            }
            if key.exp_pow != 0 {
                if key.exp_pow % 2 != 0 {
                    return Err(EvalError::OddExpPower(key.exp_pow));
                }
                v *= q_pow(&jets.exp2f, key.exp_pow / 2).map_err(|_| EvalError::ZeroExpValue)?;
            }
            for j in &key.jets {
                let val = jets
                    .jets
                    .get(j)
                    .ok_or_else(|| EvalError::UnboundJet(j.clone()))?;
                v *= val;
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Floating-point evaluation. Odd exponential powers are handled through
    /// `exp2f^{k/2}`, which requires `exp2f > 0`; rounding is the usual IEEE
    /// double rounding of the term-by-term product and sum.
    pub fn eval_f64(
        &self,
        jets: &JetBindings<f64>,
        params: &ParamValues<f64>,
    ) -> Result<f64, EvalError> {
        self.eval_f64_with_scale(jets, params).map(|(v, _)| v)
    }

    /// Floating-point evaluation returning `(sum, max |term|)`. The second
    /// component is the natural scale for judging how completely the terms
    /// cancel; `|sum| / (1 + max|term|)` is the scale-invariant residual.
    pub fn eval_f64_with_scale(
        &self,
        jets: &JetBindings<f64>,
        params: &ParamValues<f64>,
    ) -> Result<(f64, f64), EvalError> {
        let mut acc = 0.0;
        let mut scale = 0.0f64;
        for (key, coeff) in self.terms() {
            let mut v = q_to_f64(coeff);
            for (p, k) in key.params.iter() {
                let val = *params.get(p).ok_or(EvalError::UnboundParam(p))?;
                if val == 0.0 && k < 0 {
                    return Err(EvalError::ZeroToNegativePower(p));
                }
                v *= val.powi(k);
            }
            if key.exp_pow != 0 {
                if jets.exp2f <= 0.0 && key.exp_pow % 2 != 0 {
                    return Err(EvalError::NegativeExpValue(jets.exp2f));
                }
                if jets.exp2f == 0.0 && key.exp_pow < 0 {
                    return Err(EvalError::ZeroExpValue);
                }
                v *= jets.exp2f.powf(key.exp_pow as f64 / 2.0);
            }
            for j in &key.jets {
                let val = *jets
                    .jets
                    .get(j)
                    .ok_or_else(|| EvalError::UnboundJet(j.clone()))?;
                v *= val;
            }
            acc += v;
            scale = scale.max(v.abs());
        }
        Ok((acc, scale))
    }
}

/// Nearest-double conversion of an exact rational.
pub fn q_to_f64(q: &Q) -> f64 {
    let numer = q.numer();
    let denom = q.denom();
    // Use string round-trip only as a fallback; direct conversion covers the
    // magnitudes appearing in practice.
    let nf = bigint_to_f64(numer);
    let df = bigint_to_f64(denom);
    if df.is_finite() && nf.is_finite() && df != 0.0 {
        nf / df
    } else {
        format!("{q}").parse::<f64>().unwrap_or(f64::NAN)
    }
}

fn bigint_to_f64(n: &num::BigInt) -> f64 {
    use num::ToPrimitive;
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
