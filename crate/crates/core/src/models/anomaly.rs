//! The anomaly-cancellation residual and the Pontrjagin difference formula.

use crate::exterior::FrameAlgebra;
use crate::geometry::{
    curvature, d_torsion, gp_ansatz, levi_civita, pontrjagin, pontrjagin_coefficient, torsion,
    torsion_connection, TorsionSign,
};
use crate::scalar::{Param, ScalarExpr};
use crate::Q;

use super::family::ModelError;
use super::instanton::InstantonSpec;

/// `κ² = ½(2 + 1/s²)` expanded in the parameter ring.
pub fn kappa_squared() -> ScalarExpr {
    &ScalarExpr::one() + &ScalarExpr::param_pow(Param::S, -2).scale_q(&crate::q(1, 2))
}

/// `τ² = ½(2 + 1/d²)` expanded in the parameter ring.
pub fn tau_squared() -> ScalarExpr {
    &ScalarExpr::one() + &ScalarExpr::param_pow(Param::DInst, -2).scale_q(&crate::q(1, 2))
}

/// `t²κ²` expanded.
pub fn t2_kappa2() -> ScalarExpr {
    &ScalarExpr::param_pow(Param::T, 2) * &kappa_squared()
}

/// `a²τ²` expanded.
pub fn a2_tau2() -> ScalarExpr {
    &ScalarExpr::param_pow(Param::AInst, 2) * &tau_squared()
}

/// `|λ|² = l1² + l2² + l3²`.
pub fn lambda_norm_squared() -> ScalarExpr {
    &(&ScalarExpr::param_pow(Param::L1, 2) + &ScalarExpr::param_pow(Param::L2, 2))
        + &ScalarExpr::param_pow(Param::L3, 2)
}

/// How the string-tension parameter enters the residual.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaChoice {
    /// Keep `ap` symbolic.
    Symbolic,
    /// Substitute a rational value.
    Value(Q),
    /// Tie `ap = -alpha²` with `alpha` symbolic.
    NegAlphaSquared,
}

impl AlphaChoice {
    fn expr(&self) -> ScalarExpr {
        match self {
            AlphaChoice::Symbolic => ScalarExpr::param(Param::AlphaPrime),
            AlphaChoice::Value(v) => ScalarExpr::from_q(v.clone()),
            AlphaChoice::NegAlphaSquared => -&ScalarExpr::param_pow(Param::Alpha, 2),
        }
    }
}

/// A frame algebra paired with a gauge instanton and a tension choice.
#[derive(Debug, Clone)]
pub struct AnomalySetup {
    pub alg: FrameAlgebra,
    pub instanton: InstantonSpec,
    pub alpha: AlphaChoice,
}

/// The `e^{1234}` coefficient of
/// `dT̄ − (α'/4)·( ΣΩ∧Ω(∇⁻) − ΣΩ∧Ω(A) )`,
/// everything symbolic in the dilaton jets. Zero exactly when the anomaly
/// cancellation holds for the given data.
pub fn anomaly_residual(setup: &AnomalySetup) -> Result<ScalarExpr, ModelError> {
    let alg = &setup.alg;
    let s = gp_ansatz(alg).map_err(|e| ModelError::InvalidParameter {
        name: "algebra",
        reason: e.to_string(),
    })?;
    let t_bar = torsion(&s, alg);
    let dt = d_torsion(&t_bar, alg).map_err(|e| ModelError::InvalidParameter {
        name: "torsion",
        reason: e.to_string(),
    })?;
    let dt_coeff = dt.coefficient(&[1, 2, 3, 4]);

    let lc = levi_civita(alg);
    let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
    let r_minus = curvature(&minus, alg);
    let p_minus = pontrjagin_coefficient(&pontrjagin(&r_minus)).map_err(|e| {
        ModelError::InvalidParameter {
            name: "p1",
            reason: e.to_string(),
        }
    })?;

    let gauge = setup.instanton.build(alg)?;
    let r_gauge = curvature(&gauge, alg);
    let p_gauge = pontrjagin_coefficient(&pontrjagin(&r_gauge)).map_err(|e| {
        ModelError::InvalidParameter {
            name: "p1",
            reason: e.to_string(),
        }
    })?;

    let alpha = setup.alpha.expr();
    let quarter = alpha.scale_q(&crate::q(1, 4));
    Ok(&dt_coeff - &(&quarter * &(&p_minus - &p_gauge)))
}

/// Engine-derived difference of the two Pontrjagin 4-forms on the symbolic
/// h5 family with the symbolic twin instanton.
#[derive(Debug, Clone)]
pub struct P1Difference {
    /// `ΣΩ∧Ω(∇⁻) − ΣΩ∧Ω(A_{a,d})` as the `e^{1234}` coefficient.
    pub difference: ScalarExpr,
    /// The factor `(t²κ² − a²τ²)·Δe^{-2f}` it is measured against.
    pub factor: ScalarExpr,
    /// `difference = constant · factor` when `Some`; the engine-derived
    /// rational constant of the difference formula.
    pub constant: Option<Q>,
}

/// Computes the difference of Pontrjagin forms between `∇⁻` and the symbolic
/// twin, and factors it as a rational multiple of `(t²κ² − a²τ²)·Δe^{-2f}`.
pub fn p1_difference(alg: &FrameAlgebra) -> Result<P1Difference, ModelError> {
    let s = gp_ansatz(alg).map_err(|e| ModelError::InvalidParameter {
        name: "algebra",
        reason: e.to_string(),
    })?;
    let t_bar = torsion(&s, alg);
    let lc = levi_civita(alg);
    let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
    let r_minus = curvature(&minus, alg);
    let p_minus = pontrjagin_coefficient(&pontrjagin(&r_minus)).map_err(|e| {
        ModelError::InvalidParameter {
            name: "p1",
            reason: e.to_string(),
        }
    })?;

    let twin = a_ad(alg)?;
    let r_twin = curvature(&twin, alg);
    let p_twin =
        pontrjagin_coefficient(&pontrjagin(&r_twin)).map_err(|e| ModelError::InvalidParameter {
            name: "p1",
            reason: e.to_string(),
        })?;

    let difference = &p_minus - &p_twin;
    let factor = &(&t2_kappa2() - &a2_tau2()) * &ScalarExpr::exp_f(-2).laplacian();
    let constant = difference.rational_multiple_of(&factor);
    Ok(P1Difference {
        difference,
        factor,
        constant,
    })
}

fn a_ad(alg: &FrameAlgebra) -> Result<crate::geometry::Connection, ModelError> {
    super::instanton::a_ad_symbolic().build(alg)
}
