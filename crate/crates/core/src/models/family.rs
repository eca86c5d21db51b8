//! The balanced nilmanifold families and their classification.

use num::{Signed, Zero};
use thiserror::Error;

use crate::exterior::{Basis, Form, FormError, FrameAlgebra, FrameError};
use crate::scalar::{Param, ScalarExpr};
use crate::{q, Q};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter `{name}` out of range: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("contraction is defined on the h5 family, got `{0}`")]
    NotH5(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Numeric parameter record for one of the three balanced families.
///
/// `rho` plays the role of the binary modulus and is `0` or `1`. The `Fam2`
/// complex parameter is stored as a rational point `(u1, u2)`; building it
/// requires both `|u|` and `√(s²-|u|²)` to be rational, so test parameters
/// are drawn on rational slices.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// `de⁵ = t(e¹³−e²⁴)`, `de⁶ = t(e¹⁴+e²³)`.
    H5Real { t: Q },
    /// `de⁵ = (t/s)[(ρ+b²)e¹³ − (ρ−b²)e²⁴]`,
    /// `de⁶ = −2t(e¹²−e³⁴) + (t/s)[(ρ−b²)e¹⁴ + (ρ+b²)e²³]`.
    Fam1 { rho: u8, b: Q, s: Q, t: Q },
    /// The two-parameter family with complex modulus `u`, `s² > |u|² > 0`.
    Fam2 {
        rho: u8,
        b: Q,
        t: Q,
        u1: Q,
        u2: Q,
        s: Q,
    },
}

fn require_nonzero(name: &'static str, v: &Q) -> Result<(), ModelError> {
    if v.is_zero() {
        return Err(ModelError::InvalidParameter {
            name,
            reason: "must be nonzero".into(),
        });
    }
    Ok(())
}

fn require_binary(name: &'static str, v: u8) -> Result<(), ModelError> {
    if v > 1 {
        return Err(ModelError::InvalidParameter {
            name,
            reason: format!("must be 0 or 1, got {v}"),
        });
    }
    Ok(())
}

/// Exact rational square root, if one exists.
fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    let root = Q::new(n, d);
    if &(&root * &root) == v {
        Some(root)
    } else {
        None
    }
}

fn two_form(terms: &[(&[u8], ScalarExpr)]) -> Result<Form, FormError> {
    let mut f = Form::zero(2, Basis::Invariant);
    for (idx, c) in terms {
        f = f.add(&Form::monomial(Basis::Invariant, idx, c.clone()))?;
    }
    Ok(f)
}

/// Builds a family instance with numeric rational parameters, validating the
/// stated ranges and the Jacobi identity.
pub fn build_family(spec: &FamilySpec) -> Result<FrameAlgebra, ModelError> {
    let c = |v: &Q| ScalarExpr::from_q(v.clone());
    match spec {
        FamilySpec::H5Real { t } => {
            require_nonzero("t", t)?;
            let d5 = two_form(&[(&[1, 3], c(t)), (&[2, 4], -&c(t))])?;
            let d6 = two_form(&[(&[1, 4], c(t)), (&[2, 3], c(t))])?;
            Ok(FrameAlgebra::new(format!("h5real(t={t})"), d5, d6)?)
        }
        FamilySpec::Fam1 { rho, b, s, t } => {
            require_binary("rho", *rho)?;
            require_nonzero("s", s)?;
            require_nonzero("t", t)?;
            let rho_q = Q::from_integer((*rho).into());
            let ts = t / s;
            let plus = &rho_q + &(b * b); // ρ + b²
            let minus = &rho_q - &(b * b); // ρ − b²
            let d5 = two_form(&[
                (&[1, 3], c(&(&ts * &plus))),
                (&[2, 4], -&c(&(&ts * &minus))),
            ])?;
            let d6 = two_form(&[
                (&[1, 2], c(t).scale_int(-2)),
                (&[3, 4], c(t).scale_int(2)),
                (&[1, 4], c(&(&ts * &minus))),
                (&[2, 3], c(&(&ts * &plus))),
            ])?;
            Ok(FrameAlgebra::new(
                format!("fam1(rho={rho},b={b},s={s},t={t})"),
                d5,
                d6,
            )?)
        }
        FamilySpec::Fam2 {
            rho,
            b,
            t,
            u1,
            u2,
            s,
        } => {
            require_binary("rho", *rho)?;
            require_nonzero("t", t)?;
            require_nonzero("s", s)?;
            let u_sq = &(u1 * u1) + &(u2 * u2);
            if u_sq.is_zero() {
                return Err(ModelError::InvalidParameter {
                    name: "u",
                    reason: "must be nonzero".into(),
                });
            }
            if (s * s) <= u_sq {
                return Err(ModelError::InvalidParameter {
                    name: "u",
                    reason: format!("requires s² > |u|², got |u|² = {u_sq}"),
                });
            }
            let u_abs = rational_sqrt(&u_sq).ok_or(ModelError::InvalidParameter {
                name: "u",
                reason: "|u| must be rational at the chosen point".into(),
            })?;
            let root = rational_sqrt(&(&(s * s) - &u_sq)).ok_or(ModelError::InvalidParameter {
                name: "u",
                reason: "√(s²-|u|²) must be rational at the chosen point".into(),
            })?;
            let y = q(2, 1) * &root / (&u_abs * t);
            let rho_q = Q::from_integer((*rho).into());
            let b2 = b * b;
            let sy = s * &y;
            let plus = &rho_q + &b2;
            let minus = &rho_q - &b2;
            // de⁵ = sY[ 2b²u₁|u|(e¹²−e³⁴) − b²t u₁|u|Y(e¹³+e²⁴) + 2ρs u₁(e¹³−e²⁴)
            //            + 2s u₂((ρ−b²)e¹⁴ + (ρ+b²)e²³) ]
            let a12 = &sy * &(q(2, 1) * &b2 * u1 * &u_abs);
            let a13_sym = &sy * &(-(&b2 * t * u1 * &u_abs * &y));
            let a13_asd = &sy * &(q(2, 1) * &rho_q * s * u1);
            let a14 = &sy * &(q(2, 1) * s * u2 * &minus);
            let a23 = &sy * &(q(2, 1) * s * u2 * &plus);
            let d5 = two_form(&[
                (&[1, 2], c(&a12)),
                (&[3, 4], -&c(&a12)),
                (&[1, 3], c(&(&a13_sym + &a13_asd))),
                (&[2, 4], c(&(&a13_sym - &a13_asd))),
                (&[1, 4], c(&a14)),
                (&[2, 3], c(&a23)),
            ])?;
            // de⁶ = sY[ 2(2s²−b²u₂)|u|(e¹²−e³⁴) + b²t u₂|u|Y(e¹³+e²⁴) − 2ρs u₂(e¹³−e²⁴)
            //            + 2s u₁((ρ−b²)e¹⁴ + (ρ+b²)e²³) ]
            let b12 = &sy * &(q(2, 1) * &(&(q(2, 1) * s * s) - &(&b2 * u2)) * &u_abs);
            let b13_sym = &sy * &(&b2 * t * u2 * &u_abs * &y);
            let b13_asd = &sy * &(-(q(2, 1) * &rho_q * s * u2));
            let b14 = &sy * &(q(2, 1) * s * u1 * &minus);
            let b23 = &sy * &(q(2, 1) * s * u1 * &plus);
            let d6 = two_form(&[
                (&[1, 2], c(&b12)),
                (&[3, 4], -&c(&b12)),
                (&[1, 3], c(&(&b13_sym + &b13_asd))),
                (&[2, 4], c(&(&b13_sym - &b13_asd))),
                (&[1, 4], c(&b14)),
                (&[2, 3], c(&b23)),
            ])?;
            Ok(FrameAlgebra::new(
                format!("fam2(rho={rho},b={b},t={t},u=({u1},{u2}),s={s})"),
                d5,
                d6,
            )?)
        }
    }
}

/// The h5 structure equations with symbolic parameters `t`, `s`:
/// `de⁵ = (t/s)(e¹³+e²⁴)`, `de⁶ = −2t(e¹²−e³⁴) − (t/s)(e¹⁴−e²³)`
/// (the `rho = 0, b = 1` member of the first family).
pub fn h5_symbolic() -> FrameAlgebra {
    let ts = &ScalarExpr::param(Param::T) * &ScalarExpr::param_pow(Param::S, -1);
    let t = ScalarExpr::param(Param::T);
    let d5 = two_form(&[(&[1, 3], ts.clone()), (&[2, 4], ts.clone())]).expect("h5 d5");
    let d6 = two_form(&[
        (&[1, 2], t.scale_int(-2)),
        (&[3, 4], t.scale_int(2)),
        (&[1, 4], -&ts),
        (&[2, 3], ts),
    ])
    .expect("h5 d6");
    FrameAlgebra::new("h5", d5, d6).expect("h5 structure data")
}

/// The h3 structure equations with symbolic parameter `t`:
/// `de⁵ = 0`, `de⁶ = −2t(e¹²−e³⁴)`.
pub fn h3_symbolic() -> FrameAlgebra {
    let t = ScalarExpr::param(Param::T);
    let d5 = Form::zero(2, Basis::Invariant);
    let d6 = two_form(&[(&[1, 2], t.scale_int(-2)), (&[3, 4], t.scale_int(2))]).expect("h3 d6");
    FrameAlgebra::new("h3", d5, d6).expect("h3 structure data")
}

/// Classification record of a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Fibration curvature lies in the anti-self-dual span.
    pub asd: bool,
    /// The standard complex structure is abelian, `[JX,JY] = [X,Y]`.
    pub abelian: bool,
}

/// Computes both classification booleans. They agree on every instance of
/// the three families: the torus bundle has anti-self-dual curvature exactly
/// when the complex structure is abelian.
pub fn classify(alg: &FrameAlgebra) -> Classification {
    Classification {
        asd: alg.is_asd_fibration(),
        abelian: alg.has_abelian_complex_structure(),
    }
}

/// Contraction h₅ → h₃: the two structure constants `c₁ = t/s` and `c₂ = t`
/// are independent in the structure forms, and the contraction sets `c₁ = 0`
/// exactly (no numeric limit is taken).
///
/// The input must have the h5 shape `de⁵ = c₁(e¹³+e²⁴)`,
/// `de⁶ = −2c₂(e¹²−e³⁴) − c₁(e¹⁴−e²³)` with `c₁ ≠ 0`; the output is
/// `de⁵ = 0`, `de⁶ = −2c₂(e¹²−e³⁴)`.
pub fn contract_to_h3(alg: &FrameAlgebra) -> Result<FrameAlgebra, ModelError> {
    let d5 = alg.d_coframe_invariant(5);
    let d6 = alg.d_coframe_invariant(6);
    let c1 = d5.coefficient(&[1, 3]);
    let c2 = d6.coefficient(&[1, 2]).scale_q(&q(-1, 2));
    let expected_d5 = two_form(&[(&[1, 3], c1.clone()), (&[2, 4], c1.clone())])?;
    let expected_d6 = two_form(&[
        (&[1, 2], c2.scale_int(-2)),
        (&[3, 4], c2.scale_int(2)),
        (&[1, 4], -&c1),
        (&[2, 3], c1.clone()),
    ])?;
    if c1.is_zero() || *d5 != expected_d5 || *d6 != expected_d6 {
        return Err(ModelError::NotH5(alg.name().to_string()));
    }
    let d5_new = Form::zero(2, Basis::Invariant);
    let d6_new = two_form(&[(&[1, 2], c2.scale_int(-2)), (&[3, 4], c2.scale_int(2))])?;
    Ok(FrameAlgebra::new(
        format!("h3<-{}", alg.name()),
        d5_new,
        d6_new,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    #[test]
    fn fam1_rho0_b1_is_h5() {
        let alg = build_family(&FamilySpec::Fam1 {
            rho: 0,
            b: qi(1),
            s: qi(3),
            t: qi(2),
        })
        .unwrap();
        let d5 = alg.d_coframe_invariant(5);
        assert_eq!(d5.coefficient(&[1, 3]), ScalarExpr::rational(2, 3));
        assert_eq!(d5.coefficient(&[2, 4]), ScalarExpr::rational(2, 3));
        let d6 = alg.d_coframe_invariant(6);
        assert_eq!(d6.coefficient(&[1, 2]), ScalarExpr::from_int(-4));
        assert_eq!(d6.coefficient(&[3, 4]), ScalarExpr::from_int(4));
        assert_eq!(d6.coefficient(&[1, 4]), ScalarExpr::rational(-2, 3));
        assert_eq!(d6.coefficient(&[2, 3]), ScalarExpr::rational(2, 3));
        assert_eq!(
            classify(&alg),
            Classification {
                asd: true,
                abelian: true
            }
        );
    }

    #[test]
    fn h5real_is_neither_asd_nor_abelian() {
        let alg = build_family(&FamilySpec::H5Real { t: qi(1) }).unwrap();
        assert_eq!(
            classify(&alg),
            Classification {
                asd: false,
                abelian: false
            }
        );
    }

    #[test]
    fn fam1_rho1_is_neither() {
        let alg = build_family(&FamilySpec::Fam1 {
            rho: 1,
            b: q(1, 2),
            s: qi(1),
            t: qi(1),
        })
        .unwrap();
        assert_eq!(
            classify(&alg),
            Classification {
                asd: false,
                abelian: false
            }
        );
    }

    #[test]
    fn fam1_rho0_b0_gives_h3_equations() {
        let alg = build_family(&FamilySpec::Fam1 {
            rho: 0,
            b: qi(0),
            s: qi(1),
            t: qi(1),
        })
        .unwrap();
        assert!(alg.d_coframe_invariant(5).is_zero());
        let d6 = alg.d_coframe_invariant(6);
        assert_eq!(d6.coefficient(&[1, 2]), ScalarExpr::from_int(-2));
        assert_eq!(d6.coefficient(&[3, 4]), ScalarExpr::from_int(2));
        assert!(d6.coefficient(&[1, 4]).is_zero());
    }

    #[test]
    fn fam2_requires_rational_slices() {
        // s=5, u=(9/5, 12/5): |u| = 3, √(s²−|u|²) = 4 — a valid slice
        let ok = build_family(&FamilySpec::Fam2 {
            rho: 0,
            b: qi(1),
            t: qi(1),
            u1: q(9, 5),
            u2: q(12, 5),
            s: qi(5),
        });
        assert!(ok.is_ok());
        let alg = ok.unwrap();
        assert_eq!(
            classify(&alg),
            Classification {
                asd: true,
                abelian: true
            }
        );

        // |u| irrational
        let bad = build_family(&FamilySpec::Fam2 {
            rho: 0,
            b: qi(1),
            t: qi(1),
            u1: qi(1),
            u2: qi(1),
            s: qi(5),
        });
        assert!(matches!(
            bad,
            Err(ModelError::InvalidParameter { name: "u", .. })
        ));

        // |u| ≥ s
        let bad = build_family(&FamilySpec::Fam2 {
            rho: 0,
            b: qi(1),
            t: qi(1),
            u1: qi(3),
            u2: qi(4),
            s: qi(5),
        });
        assert!(matches!(
            bad,
            Err(ModelError::InvalidParameter { name: "u", .. })
        ));
    }

    #[test]
    fn fam2_rho1_breaks_both_classifiers() {
        let alg = build_family(&FamilySpec::Fam2 {
            rho: 1,
            b: qi(1),
            t: qi(2),
            u1: q(9, 5),
            u2: q(12, 5),
            s: qi(5),
        })
        .unwrap();
        assert_eq!(
            classify(&alg),
            Classification {
                asd: false,
                abelian: false
            }
        );
    }

    #[test]
    fn zero_parameters_rejected() {
        assert!(build_family(&FamilySpec::H5Real { t: qi(0) }).is_err());
        assert!(build_family(&FamilySpec::Fam1 {
            rho: 0,
            b: qi(1),
            s: qi(0),
            t: qi(1)
        })
        .is_err());
        assert!(build_family(&FamilySpec::Fam1 {
            rho: 2,
            b: qi(1),
            s: qi(1),
            t: qi(1)
        })
        .is_err());
    }

    #[test]
    fn contraction_kills_the_ratio_constant() {
        let h5 = h5_symbolic();
        let h3 = contract_to_h3(&h5).unwrap();
        assert!(h3.d_coframe_invariant(5).is_zero());
        let d6 = h3.d_coframe_invariant(6);
        assert_eq!(
            d6.coefficient(&[1, 2]),
            ScalarExpr::param(Param::T).scale_int(-2)
        );
        assert!(d6.coefficient(&[1, 4]).is_zero());
        assert!(contract_to_h3(&build_family(&FamilySpec::H5Real { t: qi(1) }).unwrap()).is_err());
    }
}
