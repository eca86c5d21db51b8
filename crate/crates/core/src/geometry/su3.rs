//! The SU(3)-structure of the torus-bundle ansatz and its torsion.

use thiserror::Error;

use crate::exterior::{Basis, ComplexStructure, Form, FormError, FrameAlgebra};
use crate::scalar::ScalarExpr;

#[derive(Debug, Error)]
pub enum SU3Error {
    #[error(
        "family `{0}` does not fiber with anti-self-dual curvature over the base \
         (equivalently, its complex structure is not abelian); the ansatz does not apply"
    )]
    NotAdapted(String),
    #[error("constructor identity `{which}` fails: residual {residual}")]
    ConstructorIdentity {
        which: &'static str,
        residual: String,
    },
    #[error("exterior derivative of the torsion has components off e^1234: {components}")]
    TorsionSupport { components: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// An SU(3)-structure `(F̄, Ψ⁺, Ψ⁻)` in the orthonormal coframe, with the
/// standard complex structure. The compatibility identities
/// `F̄∧Ψ± = 0` and `Ψ⁺∧Ψ⁻ = (2/3)F̄³` are verified at construction.
#[derive(Debug, Clone)]
pub struct SU3Structure {
    f_bar: Form,
    psi_plus: Form,
    psi_minus: Form,
    j: ComplexStructure,
}

impl SU3Structure {
    pub fn kaehler_form(&self) -> &Form {
        &self.f_bar
    }

    pub fn psi_plus(&self) -> &Form {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &Form {
        &self.psi_minus
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.j
    }
}

/// Complex product of form pairs `(re, im)`, used to expand the (3,0)-form.
fn complex_wedge(a: (&Form, &Form), b: (&Form, &Form)) -> Result<(Form, Form), FormError> {
    let re = a.0.wedge(b.0)?.sub(&a.1.wedge(b.1)?)?;
    let im = a.0.wedge(b.1)?.add(&a.1.wedge(b.0)?)?;
    Ok((re, im))
}

/// The torus-bundle SU(3)-structure on an adapted algebra:
/// `F̄ = ē^{12}+ē^{34}+ē^{56}` and `Ψ⁺+iΨ⁻ = (ē¹+iē²)∧(ē³+iē⁴)∧(ē⁵+iē⁶)`.
///
/// Fails when the fibration curvature is not anti-self-dual: the torsion and
/// balance identities below hold only for those families.
pub fn gp_ansatz(alg: &FrameAlgebra) -> Result<SU3Structure, SU3Error> {
    if !alg.is_asd_fibration() {
        return Err(SU3Error::NotAdapted(alg.name().to_string()));
    }
    let f_bar = Form::parse("eb12 + eb34 + eb56", Basis::Orthonormal)?;
    let e = |i: u8| Form::basis_elem(Basis::Orthonormal, &[i]);
    let z12 = complex_wedge((&e(1), &e(2)), (&e(3), &e(4)))?;
    let (psi_plus, psi_minus) = complex_wedge((&z12.0, &z12.1), (&e(5), &e(6)))?;

    // compatibility: F̄ ∧ Ψ± = 0
    for (name, psi) in [("F∧Ψ+", &psi_plus), ("F∧Ψ-", &psi_minus)] {
        let w = f_bar.wedge(psi)?;
        if !w.is_zero() {
            return Err(SU3Error::ConstructorIdentity {
                which: match name {
                    "F∧Ψ+" => "F ∧ Ψ⁺ = 0",
                    _ => "F ∧ Ψ⁻ = 0",
                },
                residual: w.to_string(),
            });
        }
    }
    // volume normalization: Ψ⁺ ∧ Ψ⁻ = (2/3) F̄³
    let lhs = psi_plus.wedge(&psi_minus)?;
    let f3 = f_bar.wedge(&f_bar)?.wedge(&f_bar)?;
    let rhs = f3.scale(&ScalarExpr::rational(2, 3));
    let residual = lhs.sub(&rhs)?;
    if !residual.is_zero() {
        return Err(SU3Error::ConstructorIdentity {
            which: "Ψ⁺ ∧ Ψ⁻ = (2/3) F³",
            residual: residual.to_string(),
        });
    }
    Ok(SU3Structure {
        f_bar,
        psi_plus,
        psi_minus,
        j: ComplexStructure,
    })
}

/// The totally skew torsion 3-form `T̄ = J dF̄`, realizing
/// `d^cF(X,Y,Z) = -dF(JX,JY,JZ)` through the index substitution of `J`.
pub fn torsion(s: &SU3Structure, alg: &FrameAlgebra) -> Form {
    alg.d(s.kaehler_form()).apply_j()
}

/// `dT̄`, converted to the invariant coframe. For every in-scope family this
/// is a multiple of `e^{1234}`; any other component is an internal
/// inconsistency and is reported rather than dropped.
pub fn d_torsion(t_bar: &Form, alg: &FrameAlgebra) -> Result<Form, SU3Error> {
    let dt = alg.d(t_bar).to_basis(Basis::Invariant);
    let e1234 = crate::exterior::MultiIndex::new(&[1, 2, 3, 4]);
    let stray: Vec<String> = dt
        .components()
        .filter(|(idx, _)| **idx != e1234)
        .map(|(idx, c)| format!("({c})*e{idx}"))
        .collect();
    if !stray.is_empty() {
        return Err(SU3Error::TorsionSupport {
            components: stray.join(" + "),
        });
    }
    Ok(dt)
}

/// The Lee form `θ = δF̄(J·)` with `δ = -∗d∗`, returned in the orthonormal
/// coframe. For the bundle ansatz it equals `2 df = 2 Σ f_i e^i`.
pub fn lee_form(s: &SU3Structure, alg: &FrameAlgebra) -> Result<Form, SU3Error> {
    let star_f = s.kaehler_form().hodge_star()?;
    let d_star_f = alg.d(&star_f);
    let delta_f = d_star_f.hodge_star()?.neg();
    // θ(X) = (δF)(JX) = -(JδF)(X) on 1-forms
    Ok(delta_f.apply_j().neg())
}

/// The dilatino-equation residual `2 F̄⌟dF̄ + Ψ⁺⌟dΨ⁺` (a 1-form);
/// identically zero exactly when the structure solves the first two
/// supersymmetry equations with the dilaton carried by the conformal factor.
pub fn strominger_residual(s: &SU3Structure, alg: &FrameAlgebra) -> Result<Form, SU3Error> {
    let df = alg.d(s.kaehler_form());
    let term1 = s.kaehler_form().contract(&df)?.scale_int(2);
    let dpsi = alg.d(s.psi_plus());
    let term2 = s.psi_plus().contract(&dpsi)?;
    Ok(term1.add(&term2)?)
}
