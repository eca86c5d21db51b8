//! SU(3)-structures, torsion, connections, curvature and Pontrjagin forms.

pub mod connection;
pub mod su3;

pub use connection::{
    curvature, curvature_exchange_residual, instanton_residual, levi_civita, pontrjagin,
    pontrjagin_coefficient, torsion_connection, Connection, ConnectionKind, CurvatureMatrix,
    GeometryError, InstantonResidual, Matrix6, TorsionSign,
};
pub use su3::{
    d_torsion, gp_ansatz, lee_form, strominger_residual, torsion, SU3Error, SU3Structure,
};

#[cfg(test)]
mod tests {
    use crate::exterior::{Basis, Form};
    use crate::models::{h3_symbolic, h5_symbolic};
    use crate::reference;
    use crate::scalar::{parse_scalar, ScalarExpr};

    use super::*;

    #[test]
    fn ansatz_volume_normalizations() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let f3 = s
            .kaehler_form()
            .wedge(s.kaehler_form())
            .unwrap()
            .wedge(s.kaehler_form())
            .unwrap();
        assert_eq!(f3, Form::parse("6*eb123456", Basis::Orthonormal).unwrap());
        let psi_product = s.psi_plus().wedge(s.psi_minus()).unwrap();
        assert_eq!(
            psi_product,
            Form::parse("4*eb123456", Basis::Orthonormal).unwrap()
        );
    }

    #[test]
    fn ansatz_rejects_non_adapted_families() {
        let alg =
            crate::models::build_family(&crate::models::FamilySpec::H5Real { t: crate::qi(1) })
                .unwrap();
        assert!(matches!(gp_ansatz(&alg), Err(SU3Error::NotAdapted(_))));
    }

    #[test]
    fn torsion_reproduces_the_display() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        assert_eq!(t_bar, reference::torsion_display());
    }

    #[test]
    fn torsion_at_zero_dilaton() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t0 = torsion(&s, &alg).at_zero_dilaton();
        let expected = Form::parse(
            "-2*t*eb126 + t*s^-1*eb135 - t*s^-1*eb146 + t*s^-1*eb236 + t*s^-1*eb245 + 2*t*eb346",
            Basis::Orthonormal,
        )
        .unwrap();
        assert_eq!(t0, expected);
    }

    #[test]
    fn contracted_torsion_keeps_only_the_ratio_free_part() {
        let alg = h3_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t0 = torsion(&s, &alg).at_zero_dilaton();
        let expected = Form::parse("-2*t*eb126 + 2*t*eb346", Basis::Orthonormal).unwrap();
        assert_eq!(t0, expected);
    }

    #[test]
    fn d_torsion_reproduces_the_display() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let dt = d_torsion(&t_bar, &alg).unwrap();
        assert_eq!(dt, reference::d_torsion_display());
        // f ≡ 0 value −8t²κ² e^{1234}
        assert_eq!(
            dt.at_zero_dilaton(),
            Form::parse("(-8*t^2 - 4*t^2*s^-2)*e1234", Basis::Invariant).unwrap()
        );
    }

    #[test]
    fn koszul_spot_values() {
        let alg = h5_symbolic();
        let lc = levi_civita(&alg);
        // (ω^ḡ)^1_5(ē₃) = −t/(2s) e^{-2f}
        let w15 = lc.entry(1, 5);
        assert_eq!(
            w15.evaluate_on_frame(&[3]),
            parse_scalar("-1/2*t*s^-1*exp(-2f)").unwrap()
        );
        // the conformal part of (ω^ḡ)^1_2 is e^{-f}(f₂ē¹ − f₁ē²)
        let w12 = lc.entry(1, 2);
        assert_eq!(
            w12.evaluate_on_frame(&[1]),
            parse_scalar("f2*exp(-f)").unwrap()
        );
        assert_eq!(
            w12.evaluate_on_frame(&[2]),
            parse_scalar("-f1*exp(-f)").unwrap()
        );
    }

    #[test]
    fn flat_abelian_algebra_has_flat_levi_civita_at_constant_dilaton() {
        let flat = crate::exterior::FrameAlgebra::new(
            "flat",
            Form::zero(2, Basis::Invariant),
            Form::zero(2, Basis::Invariant),
        )
        .unwrap();
        let lc = levi_civita(&flat);
        for (_, _, entry) in lc.omega().entries() {
            assert!(entry.at_zero_dilaton().is_zero());
        }
    }

    #[test]
    fn minus_connection_reproduces_the_display() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let golden: std::collections::BTreeMap<(u8, u8), Form> =
            reference::connection_minus_display().into_iter().collect();
        for (i, j) in Matrix6::<Form>::upper_pairs() {
            let expected = golden
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Form::zero(1, Basis::Orthonormal));
            assert_eq!(
                *minus.entry(i, j),
                expected,
                "entry ({i},{j}): engine {} vs display {expected}",
                minus.entry(i, j)
            );
        }
    }

    #[test]
    fn plus_minus_difference_is_the_torsion_matrix() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let plus = torsion_connection(&lc, &t_bar, TorsionSign::Plus);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        for (i, j) in Matrix6::<Form>::upper_pairs() {
            let diff = plus.entry(i, j).sub(minus.entry(i, j)).unwrap();
            let mut expected = Form::zero(1, Basis::Orthonormal);
            for k in 1..=6u8 {
                expected = expected
                    .add(&Form::monomial(
                        Basis::Orthonormal,
                        &[k],
                        t_bar.evaluate_on_frame(&[k, j, i]),
                    ))
                    .unwrap();
            }
            assert_eq!(diff, expected);
        }
    }

    #[test]
    fn metricity_of_all_constructed_connections() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        for conn in [
            lc.clone(),
            torsion_connection(&lc, &t_bar, TorsionSign::Plus),
            torsion_connection(&lc, &t_bar, TorsionSign::Minus),
        ] {
            conn.omega().verify_antisymmetry().unwrap();
        }
    }

    #[test]
    fn curvature_reproduces_the_display() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r = curvature(&minus, &alg);
        let golden: std::collections::BTreeMap<(u8, u8), Form> =
            reference::curvature_minus_display().into_iter().collect();
        for (i, j) in Matrix6::<Form>::upper_pairs() {
            let expected = golden
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Form::zero(2, Basis::Orthonormal));
            assert_eq!(
                *r.entry(i, j),
                expected,
                "curvature entry ({i},{j}): engine {} vs display {expected}",
                r.entry(i, j)
            );
        }
        r.matrix().verify_antisymmetry().unwrap();
    }

    #[test]
    fn curvature_of_flat_algebra_vanishes_at_constant_dilaton() {
        let flat = crate::exterior::FrameAlgebra::new(
            "flat",
            Form::zero(2, Basis::Invariant),
            Form::zero(2, Basis::Invariant),
        )
        .unwrap();
        let lc = levi_civita(&flat);
        let r = curvature(&lc, &flat);
        for (_, _, entry) in r.matrix().entries() {
            assert!(entry.at_zero_dilaton().is_zero());
        }
    }

    #[test]
    fn pontrjagin_of_minus_connection_matches_the_bracket() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r = curvature(&minus, &alg);
        let p = pontrjagin_coefficient(&pontrjagin(&r)).unwrap();
        let c = p.rational_multiple_of(&reference::p1_bracket());
        assert_eq!(c, Some(crate::qi(8)), "ΣΩ∧Ω(∇⁻) = c · bracket");
    }

    #[test]
    fn pontrjagin_of_abelian_instanton_matches_the_display() {
        let alg = h5_symbolic();
        let conn = crate::models::a_lambda_symbolic().build(&alg).unwrap();
        let r = curvature(&conn, &alg);
        let p = pontrjagin(&r).to_basis(Basis::Invariant);
        assert_eq!(p, reference::p1_lambda_display());
    }

    #[test]
    fn abelian_instanton_is_an_instanton() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let conn = crate::models::a_lambda_symbolic().build(&alg).unwrap();
        let r = curvature(&conn, &alg);
        let res = instanton_residual(&r, &s);
        assert!(res.is_zero());
    }

    #[test]
    fn minus_connection_residual_is_the_torsion_closure() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r = curvature(&minus, &alg);
        let res = instanton_residual(&r, &s);
        assert!(!res.is_zero());
        // every nonzero residual component is a rational multiple of
        // (Δe^{2f} + 8t²κ²) e^{-4f}
        let target = &(&ScalarExpr::exp_f(2).laplacian()
            + &crate::models::t2_kappa2().scale_int(8))
            * &ScalarExpr::exp_f(-4);
        for (i, j, f) in res.j_invariance.entries() {
            for (idx, c) in f.components() {
                assert!(
                    c.rational_multiple_of(&target).is_some(),
                    "component ({i},{j}) eb{idx} = {c} is not a multiple of the closure"
                );
            }
        }
        for (i, j, c) in res.trace.entries() {
            if !c.is_zero() {
                assert!(
                    c.rational_multiple_of(&target).is_some(),
                    "trace ({i},{j}) = {c}"
                );
            }
        }
    }

    #[test]
    fn plus_connection_instanton_iff_contracted_and_constant() {
        // on h3 with f ≡ 0 the plus connection is an instanton
        let h3 = h3_symbolic();
        let s3 = gp_ansatz(&h3).unwrap();
        let t3 = torsion(&s3, &h3);
        let lc3 = levi_civita(&h3);
        let plus3 = torsion_connection(&lc3, &t3, TorsionSign::Plus);
        let r3 = curvature(&plus3, &h3);
        let res3 = instanton_residual(&r3, &s3);
        let all_zero_at_f0 = res3
            .j_invariance
            .entries()
            .all(|(_, _, f)| f.at_zero_dilaton().is_zero())
            && res3
                .trace
                .entries()
                .all(|(_, _, c)| c.at_zero_dilaton().is_zero());
        assert!(all_zero_at_f0);
        // with symbolic f it is not
        assert!(!res3.is_zero());

        // on h5 even f ≡ 0 fails
        let h5 = h5_symbolic();
        let s5 = gp_ansatz(&h5).unwrap();
        let t5 = torsion(&s5, &h5);
        let lc5 = levi_civita(&h5);
        let plus5 = torsion_connection(&lc5, &t5, TorsionSign::Plus);
        let r5 = curvature(&plus5, &h5);
        let res5 = instanton_residual(&r5, &s5);
        let any_nonzero_at_f0 = res5
            .j_invariance
            .entries()
            .any(|(_, _, f)| !f.at_zero_dilaton().is_zero())
            || res5
                .trace
                .entries()
                .any(|(_, _, c)| !c.at_zero_dilaton().is_zero());
        assert!(any_nonzero_at_f0);
    }

    #[test]
    fn curvature_exchange_identity_holds() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let plus = torsion_connection(&lc, &t_bar, TorsionSign::Plus);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r_plus = curvature(&plus, &alg);
        let r_minus = curvature(&minus, &alg);
        let dt = d_torsion(&t_bar, &alg).unwrap();
        let violations = curvature_exchange_residual(&r_plus, &r_minus, &dt);
        assert!(
            violations.is_empty(),
            "{} violating quadruples, first: {:?}",
            violations.len(),
            violations.first()
        );
    }

    #[test]
    fn strominger_residual_vanishes_and_detects_perturbations() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let res = strominger_residual(&s, &alg).unwrap();
        assert!(res.is_zero(), "residual: {res}");

        // negative control: perturbing F̄ breaks the identity
        let perturbed = su3::test_support::perturb_kaehler(&s);
        let res = strominger_residual(&perturbed, &alg).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn lee_form_is_twice_the_dilaton_gradient() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let theta = lee_form(&s, &alg).unwrap();
        let expected = Form::parse(
            "2*f1*exp(-f)*eb1 + 2*f2*exp(-f)*eb2 + 2*f3*exp(-f)*eb3 + 2*f4*exp(-f)*eb4",
            Basis::Orthonormal,
        )
        .unwrap();
        assert_eq!(theta, expected, "θ = 2Σfᵢeⁱ = 2Σfᵢe^{{-f}}ēⁱ");
        assert!(theta.at_zero_dilaton().is_zero(), "balanced at f ≡ 0");
    }

    #[test]
    fn balanced_conditions_at_constant_dilaton() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let df = alg.d(s.kaehler_form());
        let dff = df.wedge(s.kaehler_form()).unwrap();
        assert!(dff.at_zero_dilaton().is_zero(), "dF̄∧F̄ = 0 at f≡0");
        assert!(alg.d(s.psi_plus()).at_zero_dilaton().is_zero(), "dΨ⁺ = 0");
        assert!(alg.d(s.psi_minus()).at_zero_dilaton().is_zero(), "dΨ⁻ = 0");
    }

    #[test]
    fn curvature_difference_is_gauge_consistent() {
        // Ω⁺ − Ω⁻ = d(TM) + ω^ḡ∧TM + TM∧ω^ḡ for the torsion matrix
        // TM^i_j = Σ_k T̄(ē_k, ē_j, ē_i) ē^k
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let plus = torsion_connection(&lc, &t_bar, TorsionSign::Plus);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r_plus = curvature(&plus, &alg);
        let r_minus = curvature(&minus, &alg);
        let tm = |i: u8, j: u8| -> Form {
            let mut f = Form::zero(1, Basis::Orthonormal);
            for k in 1..=6u8 {
                f = f
                    .add(&Form::monomial(
                        Basis::Orthonormal,
                        &[k],
                        t_bar.evaluate_on_frame(&[k, j, i]),
                    ))
                    .unwrap();
            }
            f
        };
        for (i, j) in Matrix6::<Form>::upper_pairs() {
            let lhs = r_plus.entry(i, j).sub(r_minus.entry(i, j)).unwrap();
            let mut rhs = alg.d(&tm(i, j));
            for k in 1..=6u8 {
                rhs = rhs
                    .add(&lc.entry(i, k).wedge(&tm(k, j)).unwrap())
                    .unwrap()
                    .add(&tm(i, k).wedge(lc.entry(k, j)).unwrap())
                    .unwrap();
            }
            assert_eq!(lhs, rhs, "gauge consistency at ({i},{j})");
        }
    }

    #[test]
    fn interior_products_vanish_separately_at_constant_dilaton() {
        // at f ≡ 0 the bundle is balanced: F̄⌟dF̄ and Ψ⁺⌟dΨ⁺ are each zero
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let df = alg.d(s.kaehler_form());
        let f_term = s.kaehler_form().contract(&df).unwrap();
        assert!(f_term.at_zero_dilaton().is_zero(), "F⌟dF at f≡0: {f_term}");
        let dpsi = alg.d(s.psi_plus());
        let psi_term = s.psi_plus().contract(&dpsi).unwrap();
        assert!(psi_term.at_zero_dilaton().is_zero());
    }

    #[test]
    fn pontrjagin_form_is_closed() {
        let alg = h5_symbolic();
        let s = gp_ansatz(&alg).unwrap();
        let t_bar = torsion(&s, &alg);
        let lc = levi_civita(&alg);
        let minus = torsion_connection(&lc, &t_bar, TorsionSign::Minus);
        let r = curvature(&minus, &alg);
        let p = pontrjagin(&r);
        assert!(alg.d(&p).is_zero());
    }
}
