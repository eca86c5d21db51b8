//! Dilaton profiles and their jet values at a point.

use num::{Signed, Zero};
use thiserror::Error;

use crate::scalar::{q_to_f64, EvalError, JetBindings, Param, ParamValues, ScalarExpr};
use crate::{q, qi, Q};

use super::weierstrass::{wp_eval, wp_second_derivative, EllipticError, WeierstrassParams};

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("point outside the profile domain: {0}")]
    Domain(String),
    #[error("profile parameter invalid: {0}")]
    Parameter(String),
    #[error("the elliptic profile has no exact-rational jets; use the floating variant")]
    NotRational,
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A dilaton profile `f` on the base, described through `e^{2f}`.
#[derive(Debug, Clone)]
pub enum Profile {
    /// Constant dilaton, `e^{2f} = c > 0`.
    Constant { exp2f: Q },
    /// `e^{2f} = a²τ²(1 − |x|²)` on the unit ball, `τ² = ½(2 + 1/d²)`.
    Quadratic { a: Q, d: Q },
    /// `e^{2f} = 3α′/|x − b|²` away from the center `b`.
    InverseSquare { alpha_prime: Q, center: [Q; 4] },
    /// `e^{2f} = α²℘(x¹)` on the fundamental interval; the profile of the
    /// elliptic first integral.
    Weierstrass {
        params: WeierstrassParams,
        alpha: f64,
    },
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::Constant { .. } => "constant",
            Profile::Quadratic { .. } => "quadratic",
            Profile::InverseSquare { .. } => "inverse-square",
            Profile::Weierstrass { .. } => "weierstrass",
        }
    }
}

/// Jet of a dilaton profile at a point: the value of `e^{2f}` and the first
/// and second derivatives of `f`. The Hessian is stored symmetrically.
#[derive(Debug, Clone)]
pub struct DilatonJet<T> {
    pub point: [T; 4],
    pub exp2f: T,
    pub grad: [T; 4],
    pub hess: [[T; 4]; 4],
    pub profile: &'static str,
}

impl<T: Clone> DilatonJet<T> {
    /// Bindings consumed by the scalar-ring substitution.
    pub fn bindings(&self) -> JetBindings<T> {
        let mut b = JetBindings::new(self.exp2f.clone());
        for i in 0..4u8 {
            b.jets.insert(
                crate::scalar::JetSymbol::new(&[i + 1]),
                self.grad[i as usize].clone(),
            );
        }
        for i in 0..4u8 {
            for j in i..4u8 {
                b.jets.insert(
                    crate::scalar::JetSymbol::new(&[i + 1, j + 1]),
                    self.hess[i as usize][j as usize].clone(),
                );
            }
        }
        b
    }
}

impl Profile {
    /// Exact-rational jets at a rational point. The elliptic profile has no
    /// rational jets and reports [`ProfileError::NotRational`].
    pub fn jet_rational(&self, x: &[Q; 4]) -> Result<DilatonJet<Q>, ProfileError> {
        match self {
            Profile::Constant { exp2f } => {
                if !exp2f.is_positive() {
                    return Err(ProfileError::Parameter(format!(
                        "e^{{2f}} must be positive, got {exp2f}"
                    )));
                }
                Ok(DilatonJet {
                    point: x.clone(),
                    exp2f: exp2f.clone(),
                    grad: std::array::from_fn(|_| Q::zero()),
                    hess: std::array::from_fn(|_| std::array::from_fn(|_| Q::zero())),
                    profile: "constant",
                })
            }
            Profile::Quadratic { a, d } => {
                if a.is_zero() || d.is_zero() {
                    return Err(ProfileError::Parameter("a and d must be nonzero".into()));
                }
                let norm2: Q = x.iter().map(|v| v * v).sum();
                let r = &qi(1) - &norm2;
                if !r.is_positive() {
                    return Err(ProfileError::Domain(format!("|x|² = {norm2} is not < 1")));
                }
                let tau2 = &qi(1) + &(q(1, 2) / (d * d));
                let exp2f = &(&(a * a) * &tau2) * &r;
                let grad = std::array::from_fn(|i| -&x[i] / &r);
                let hess = std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        let mut v = -(q(2, 1) * &x[i] * &x[j] / (&r * &r));
                        if i == j {
                            v -= qi(1) / &r;
                        }
                        v
                    })
                });
                Ok(DilatonJet {
                    point: x.clone(),
                    exp2f,
                    grad,
                    hess,
                    profile: "quadratic",
                })
            }
            Profile::InverseSquare {
                alpha_prime,
                center,
            } => {
                if !alpha_prime.is_positive() {
                    return Err(ProfileError::Parameter(format!(
                        "alpha' must be positive, got {alpha_prime}"
                    )));
                }
                let y: [Q; 4] = std::array::from_fn(|i| &x[i] - &center[i]);
                let rho: Q = y.iter().map(|v| v * v).sum();
                if rho.is_zero() {
                    return Err(ProfileError::Domain("x equals the profile center".into()));
                }
                let exp2f = qi(3) * alpha_prime / &rho;
                let grad = std::array::from_fn(|i| -&y[i] / &rho);
                let hess = std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        let mut v = q(2, 1) * &y[i] * &y[j] / (&rho * &rho);
                        if i == j {
                            v -= qi(1) / &rho;
                        }
                        v
                    })
                });
                Ok(DilatonJet {
                    point: x.clone(),
                    exp2f,
                    grad,
                    hess,
                    profile: "inverse-square",
                })
            }
            Profile::Weierstrass { .. } => Err(ProfileError::NotRational),
        }
    }

    /// Floating-point jets; all profiles support this path.
    pub fn jet_f64(&self, x: &[f64; 4]) -> Result<DilatonJet<f64>, ProfileError> {
        match self {
            Profile::Weierstrass { params, alpha } => {
                if *alpha == 0.0 {
                    return Err(ProfileError::Parameter("alpha must be nonzero".into()));
                }
                let v = wp_eval(x[0], params)?;
                let p = v.p;
                let dp = v.dp;
                let ddp = wp_second_derivative(p, params);
                // f = ½ ln(α²℘): f' = ℘′/(2℘), f″ = (℘″℘ − ℘′²)/(2℘²)
                let f1 = dp / (2.0 * p);
                let f11 = (ddp * p - dp * dp) / (2.0 * p * p);
                let mut grad = [0.0; 4];
                grad[0] = f1;
                let mut hess = [[0.0; 4]; 4];
                hess[0][0] = f11;
                Ok(DilatonJet {
                    point: *x,
                    exp2f: alpha * alpha * p,
                    grad,
                    hess,
                    profile: "weierstrass",
                })
            }
            _ => {
                let xq: [Q; 4] =
                    std::array::from_fn(|i| Q::from_float(x[i]).unwrap_or_else(Q::zero));
                let jet = self.jet_rational(&xq)?;
                Ok(DilatonJet {
                    point: *x,
                    exp2f: q_to_f64(&jet.exp2f),
                    grad: std::array::from_fn(|i| q_to_f64(&jet.grad[i])),
                    hess: std::array::from_fn(|i| {
                        std::array::from_fn(|j| q_to_f64(&jet.hess[i][j]))
                    }),
                    profile: jet.profile,
                })
            }
        }
    }
}

/// The equations a profile can be checked against. Each carries its scalar
/// expression over the jet ring; the residual is the expression evaluated on
/// the profile jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileEquation {
    /// `Δe^{2f} + 8t²κ² = 0` — closure of the torsion 3-form.
    TorsionClosure,
    /// `Δe^{2f} + 8a²τ² = 0` — instanton condition of the twin connection.
    GaugeInstanton,
    /// `Δe^{2f} = 0`.
    HarmonicExp,
    /// `Δe^{-2f} = 8/(3α′)`.
    InverseLaplacian,
    /// The one-variable anomaly ODE under the balanced choice of constants,
    /// `((e^{2f})' + 3α²t²κ²(e^{-2f})' − 2α²f'³)' = 0`.
    AnomalyOde,
    /// The elliptic first integral residual
    /// `u'² − 4u³ + 12(t²κ²/α²)u` with `u = α^{-2}e^{2f}`.
    FirstIntegralCubic,
}

impl ProfileEquation {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileEquation::TorsionClosure => "torsion-closure",
            ProfileEquation::GaugeInstanton => "gauge-instanton",
            ProfileEquation::HarmonicExp => "harmonic-exp",
            ProfileEquation::InverseLaplacian => "inverse-laplacian",
            ProfileEquation::AnomalyOde => "anomaly-ode",
            ProfileEquation::FirstIntegralCubic => "first-integral-cubic",
        }
    }

    /// The defining expression in the jet ring.
    pub fn expr(&self) -> ScalarExpr {
        let exp2f = ScalarExpr::exp_f(2);
        let exp_m2f = ScalarExpr::exp_f(-2);
        match self {
            ProfileEquation::TorsionClosure => {
                &exp2f.laplacian() + &crate::models::t2_kappa2().scale_int(8)
            }
            ProfileEquation::GaugeInstanton => {
                &exp2f.laplacian() + &crate::models::a2_tau2().scale_int(8)
            }
            ProfileEquation::HarmonicExp => exp2f.laplacian(),
            ProfileEquation::InverseLaplacian => {
                &exp_m2f.laplacian()
                    - &ScalarExpr::param_pow(Param::AlphaPrime, -1).scale_q(&q(8, 3))
            }
            ProfileEquation::AnomalyOde => {
                let alpha_sq = ScalarExpr::param_pow(Param::Alpha, 2);
                let f1 = ScalarExpr::jet(&[1]);
                let group = &(&exp2f.partial(1)
                    + &(&(&alpha_sq * &crate::models::t2_kappa2().scale_int(3))
                        * &exp_m2f.partial(1)))
                    - &(&alpha_sq * &f1.pow(3)).scale_int(2);
                group.partial(1)
            }
            ProfileEquation::FirstIntegralCubic => {
                let u = &ScalarExpr::param_pow(Param::Alpha, -2) * &exp2f;
                let du = u.partial(1);
                let linear = &(&crate::models::t2_kappa2().scale_int(12)
                    * &ScalarExpr::param_pow(Param::Alpha, -2))
                    * &u;
                &(&(&du * &du) - &u.pow(3).scale_int(4)) + &linear
            }
        }
    }
}

/// Largest `|residual|` of the equation over exact-rational sample points.
pub fn verify_profile_pde_rational(
    profile: &Profile,
    equation: ProfileEquation,
    points: &[[Q; 4]],
    params: &ParamValues<Q>,
) -> Result<Q, ProfileError> {
    let expr = equation.expr();
    let mut max = Q::zero();
    for x in points {
        let jet = profile.jet_rational(x)?;
        let v = expr.eval_rational(&jet.bindings(), params)?;
        let a = v.abs();
        if a > max {
            max = a;
        }
    }
    Ok(max)
}

/// Largest scale-invariant `|residual|` of the equation over floating sample
/// points; for one-variable profiles the samples are `x¹` values.
///
/// Each sample reports `|Σ terms| / (1 + max|term|)`, the cancellation
/// quality of the evaluated expression: the equations have poles on the
/// sample windows (the elliptic profile grows like `1/z²`), so an absolute
/// residual would not be meaningful across the grid.
pub fn verify_profile_pde_f64(
    profile: &Profile,
    equation: ProfileEquation,
    x1_samples: &[f64],
    params: &ParamValues<f64>,
) -> Result<f64, ProfileError> {
    let expr = equation.expr();
    let samples: Vec<[f64; 4]> = x1_samples.iter().map(|&z| [z, 0.0, 0.0, 0.0]).collect();
    let results = crate::par::map_collect(samples, |x| -> Result<f64, ProfileError> {
        let jet = profile.jet_f64(&x)?;
        let (sum, scale) = expr.eval_f64_with_scale(&jet.bindings(), params)?;
        Ok(sum.abs() / (1.0 + scale))
    });
    let mut max = 0.0f64;
    for r in results {
        max = max.max(r?);
    }
    Ok(max)
}
