//! Exact-arithmetic ring of dilaton jet expressions.
//!
//! A [`ScalarExpr`] is a finite sum of terms `c · p · e^{kf} · f_{I_1}⋯f_{I_m}`
//! with rational `c`, a Laurent monomial `p` in the parameters of
//! [`Param`], an integer exponential power `k`, and jet symbols `f_I` standing
//! for the partial derivatives of the dilaton profile. All arithmetic is
//! exact; the symbolic identity checks of the crate reduce to structural
//! equality of normalized values here.

mod eval;
mod expr;
mod jet;
mod param;
pub mod text;

pub use eval::{q_to_f64, EvalError, JetBindings};
pub use expr::{ScalarExpr, TermKey};
pub use jet::{jet, Direction, JetSymbol};
pub use param::{Param, ParamMonomial, ParamValues, ALL_PARAMS};
pub use text::{parse_scalar, ParseError};

/// Exact rational scalar type used throughout the crate.
pub type Q = num::BigRational;

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// `n` as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use num::Zero;

    use super::*;

    fn e2f() -> ScalarExpr {
        ScalarExpr::exp_f(2)
    }

    #[test]
    fn exponent_addition() {
        // (f1 e^f)(f1 e^{-3f}) = f1^2 e^{-2f}
        let a = &ScalarExpr::jet(&[1]) * &ScalarExpr::exp_f(1);
        let b = &ScalarExpr::jet(&[1]) * &ScalarExpr::exp_f(-3);
        let prod = &a * &b;
        let expected = &(&ScalarExpr::jet(&[1]) * &ScalarExpr::jet(&[1])) * &ScalarExpr::exp_f(-2);
        assert_eq!(prod, expected);
    }

    #[test]
    fn additive_inverse_gives_empty_term_set() {
        let x = parse_scalar("3*t^2*f12*exp(2f) - s").unwrap();
        let sum = &x + &(-&x);
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn kappa_squared_doubles() {
        // (2 + s^-2)/2 * 2 = 2 + s^-2, i.e. 2κ²
        let kappa_sq = parse_scalar("1/2*(2 + s^-2)").unwrap();
        let doubled = kappa_sq.scale_int(2);
        assert_eq!(doubled, parse_scalar("2 + s^-2").unwrap());
    }

    #[test]
    fn partial_of_exponential() {
        // ∂₁ e^{2f} = 2 f₁ e^{2f}
        let d = e2f().partial(1);
        let expected = &ScalarExpr::from_int(2) * &(&ScalarExpr::jet(&[1]) * &e2f());
        assert_eq!(d, expected);
    }

    #[test]
    fn partial_product_rule() {
        // ∂₂ (f₁ e^{-f}) = f₁₂ e^{-f} − f₁ f₂ e^{-f}
        let x = &ScalarExpr::jet(&[1]) * &ScalarExpr::exp_f(-1);
        let d = x.partial(2);
        assert_eq!(d, parse_scalar("f12*exp(-f) - f1*f2*exp(-f)").unwrap());
    }

    #[test]
    fn laplacian_of_exp2f() {
        // Δ e^{2f} = Σ (2 f_ii + 4 f_i²) e^{2f}
        let lap = e2f().laplacian();
        let expected = parse_scalar(
            "(2*f11 + 2*f22 + 2*f33 + 2*f44 + 4*f1^2 + 4*f2^2 + 4*f3^2 + 4*f4^2)*exp(2f)",
        )
        .unwrap();
        assert_eq!(lap, expected);
        assert!(ScalarExpr::one().laplacian().is_zero());
    }

    #[test]
    fn laplacian_of_exp_minus_2f() {
        // Independent oracle: expand Δe^{-2f} by the two defining rules
        // ∂_i e^{kf} = k f_i e^{kf}, ∂_i f_I = f_{I∪i} by hand:
        // ∂_i e^{-2f} = -2 f_i e^{-2f}
        // ∂_i∂_i e^{-2f} = (-2 f_ii + 4 f_i²) e^{-2f}
        let lap = ScalarExpr::exp_f(-2).laplacian();
        let expected = parse_scalar(
            "(4*f1^2 + 4*f2^2 + 4*f3^2 + 4*f4^2 - 2*f11 - 2*f22 - 2*f33 - 2*f44)*exp(-2f)",
        )
        .unwrap();
        assert_eq!(lap, expected);
    }

    #[test]
    fn substitute_simple_jet() {
        // 2 f₁ e^{2f} at f = 0 (e^{2f} = 1), f₁ = 3 gives 6
        let x = parse_scalar("2*f1*exp(2f)").unwrap();
        let jets = JetBindings::new(qi(1)).set(&[1], qi(3));
        let v = x.eval_rational(&jets, &ParamValues::new()).unwrap();
        assert_eq!(v, qi(6));
    }

    #[test]
    fn substitute_reports_unbound_symbols() {
        let x = parse_scalar("t*f2").unwrap();
        let jets = JetBindings::new(qi(1)).set(&[2], qi(1));
        let err = x.eval_rational(&jets, &ParamValues::new()).unwrap_err();
        assert_eq!(err, EvalError::UnboundParam(Param::T));
        let params = ParamValues::new().set(Param::T, qi(1));
        let jets = JetBindings::new(qi(1));
        let err = x.eval_rational(&jets, &params).unwrap_err();
        assert!(matches!(err, EvalError::UnboundJet(_)));
    }

    #[test]
    fn substitute_rejects_odd_exponentials_exactly() {
        let x = ScalarExpr::exp_f(-3);
        let jets = JetBindings::new(qi(4));
        let err = x.eval_rational(&jets, &ParamValues::new()).unwrap_err();
        assert_eq!(err, EvalError::OddExpPower(-3));
        // while the floating path takes the square root
        let jets = JetBindings::new(4.0);
        let v = x.eval_f64(&jets, &ParamValues::new()).unwrap();
        assert!((v - 0.125).abs() < 1e-15);
    }

    #[test]
    fn substitution_is_homomorphic_on_samples() {
        let a = parse_scalar("2*f1*exp(2f) - t*f12").unwrap();
        let b = parse_scalar("s^-1*f2^2 + exp(-2f)").unwrap();
        let jets = JetBindings::new(q(9, 4))
            .set(&[1], q(1, 3))
            .set(&[2], q(-2, 5))
            .set(&[1, 2], q(7, 2));
        let params = ParamValues::new()
            .set(Param::T, q(3, 2))
            .set(Param::S, q(-1, 7));
        let va = a.eval_rational(&jets, &params).unwrap();
        let vb = b.eval_rational(&jets, &params).unwrap();
        let vab = (&a * &b).eval_rational(&jets, &params).unwrap();
        assert_eq!(vab, va * vb);
    }

    #[test]
    fn param_substitution_with_negative_powers() {
        // ap ↦ -alpha², including through ap^{-1}
        let x = parse_scalar("ap^-1*t + ap*s").unwrap();
        let repl = parse_scalar("-alpha^2").unwrap();
        let y = x.substitute_param(Param::AlphaPrime, &repl).unwrap();
        assert_eq!(y, parse_scalar("-alpha^-2*t - alpha^2*s").unwrap());
    }

    #[test]
    fn rational_multiple_detection() {
        let base = parse_scalar("2*f1*exp(2f) - t*f12").unwrap();
        let scaled = base.scale_q(&q(-7, 3));
        assert_eq!(scaled.rational_multiple_of(&base), Some(q(-7, 3)));
        let other = parse_scalar("2*f1*exp(2f) + t*f12").unwrap();
        assert_eq!(other.rational_multiple_of(&base), None);
        assert_eq!(
            ScalarExpr::zero().rational_multiple_of(&base),
            Some(Q::zero())
        );
    }
}
