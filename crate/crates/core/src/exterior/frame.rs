//! Structure data of the frame coalgebra and the exterior derivative.

use thiserror::Error;

use crate::scalar::ScalarExpr;

use super::form::{Basis, Form, FormError};
use super::multi_index::MultiIndex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("structure form de^{0} must be an invariant 2-form")]
    NotAnInvariantTwoForm(u8),
    #[error(
        "structure form de^{0} has components off the base span (not a T^4-horizontal 2-form)"
    )]
    NotHorizontal(u8),
    #[error("structure form de^{0} has non-constant coefficients")]
    NotConstant(u8),
    #[error("d² ≠ 0: d(de^{index}) = {residual}")]
    JacobiViolation { index: u8, residual: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Structure data `de^k` of a two-step algebra fibred over a four-torus,
/// together with the induced derivative on the conformally rescaled coframe.
///
/// `de^1 = … = de^4 = 0` always; `de^5`, `de^6` are constant horizontal
/// invariant 2-forms. Coefficient functions depend on the base coordinates
/// `x¹..x⁴` only (through jets), so directions 5 and 6 never differentiate
/// coefficients.
#[derive(Debug, Clone)]
pub struct FrameAlgebra {
    name: String,
    d_invariant: [Form; 6],
    d_orthonormal: [Form; 6],
}

impl FrameAlgebra {
    /// Builds the algebra from `de^5` and `de^6`, verifying the structural
    /// invariants and `d∘d = 0` on every coframe element.
    pub fn new(name: impl Into<String>, d5: Form, d6: Form) -> Result<Self, FrameError> {
        let name = name.into();
        for (k, f) in [(5u8, &d5), (6u8, &d6)] {
            if f.basis() != Basis::Invariant || (!f.is_zero() && f.degree() != 2) {
                return Err(FrameError::NotAnInvariantTwoForm(k));
            }
            for (idx, c) in f.components() {
                if idx.contains(5) || idx.contains(6) {
                    return Err(FrameError::NotHorizontal(k));
                }
                let constant = c
                    .terms()
                    .all(|(key, _)| key.exp_pow == 0 && key.jets.is_empty());
                if !constant {
                    return Err(FrameError::NotConstant(k));
                }
            }
        }
        let zero2 = Form::zero(2, Basis::Invariant);
        let d_invariant = [
            zero2.clone(),
            zero2.clone(),
            zero2.clone(),
            zero2,
            normalize_degree(d5, 2),
            normalize_degree(d6, 2),
        ];

        // conformal coframe: dē^k = e^{-f} Σ_j f_j ē^{jk} for k ≤ 4,
        // and the rescaled structure forms for k = 5, 6
        let mut d_orthonormal: Vec<Form> = Vec::with_capacity(6);
        for k in 1..=4u8 {
            let mut f = Form::zero(2, Basis::Orthonormal);
            for j in 1..=4u8 {
                if j == k {
                    continue;
                }
                let coeff = &ScalarExpr::jet(&[j]) * &ScalarExpr::exp_f(-1);
                let piece = Form::monomial(Basis::Orthonormal, &[j, k], coeff);
                f = f.add(&piece)?;
            }
            d_orthonormal.push(f);
        }
        d_orthonormal.push(d_invariant[4].to_basis(Basis::Orthonormal));
        d_orthonormal.push(d_invariant[5].to_basis(Basis::Orthonormal));
        let d_orthonormal: [Form; 6] = d_orthonormal.try_into().expect("six coframe elements");

        let alg = Self {
            name,
            d_invariant,
            d_orthonormal,
        };
        // Jacobi identity: d² = 0 on every coframe element, both bases.
        for k in 1..=6u8 {
            for basis in [Basis::Invariant, Basis::Orthonormal] {
                let e_k = Form::basis_elem(basis, &[k]);
                let dd = alg.d(&alg.d(&e_k));
                if !dd.is_zero() {
                    return Err(FrameError::JacobiViolation {
                        index: k,
                        residual: dd.to_string(),
                    });
                }
            }
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `de^k` in the invariant coframe.
    pub fn d_coframe_invariant(&self, k: u8) -> &Form {
        &self.d_invariant[k as usize - 1]
    }

    /// Whether the fibration curvature forms `de⁵`, `de⁶` lie in the
    /// anti-self-dual span `⟨e^{12}-e^{34}, e^{13}+e^{24}, e^{14}-e^{23}⟩`
    /// of the oriented base.
    pub fn is_asd_fibration(&self) -> bool {
        [5u8, 6].iter().all(|&k| {
            let f = self.d_coframe_invariant(k);
            let sd = [
                &f.coefficient(&[1, 2]) + &f.coefficient(&[3, 4]),
                &f.coefficient(&[1, 3]) - &f.coefficient(&[2, 4]),
                &f.coefficient(&[1, 4]) + &f.coefficient(&[2, 3]),
            ];
            sd.iter().all(|c| c.is_zero())
        })
    }

    /// Whether the standard complex structure is abelian on this algebra,
    /// i.e. `[JX, JY] = [X, Y]`; in structure-form terms, `J de^k = de^k`
    /// for every k.
    pub fn has_abelian_complex_structure(&self) -> bool {
        (1..=6u8).all(|k| {
            let f = self.d_coframe_invariant(k);
            f.apply_j() == *f
        })
    }

    /// `dē^k` in the orthonormal coframe (symbolic dilaton).
    pub fn d_coframe_orthonormal(&self, k: u8) -> &Form {
        &self.d_orthonormal[k as usize - 1]
    }

    /// Exterior derivative in either coframe.
    ///
    /// `d(c·e^I) = Σ_j (∂_j c)·e^j ∧ e^I + c·d(e^I)` with the coefficient
    /// pairing `dc = Σ_j (∂_j c) e^j = Σ_j (∂_j c) e^{-f} ē^j`; the second
    /// sum expands by the Leibniz rule over the stored `de^k`.
    pub fn d(&self, form: &Form) -> Form {
        let basis = form.basis();
        let d_coframe = match basis {
            Basis::Invariant => &self.d_invariant,
            Basis::Orthonormal => &self.d_orthonormal,
        };
        let mut out = Form::zero(form.degree() + 1, basis);
        for (idx, c) in form.components() {
            for j in 1..=4u8 {
                let mut dc = c.partial(j);
                if dc.is_zero() {
                    continue;
                }
                if basis == Basis::Orthonormal {
                    dc = &dc * &ScalarExpr::exp_f(-1);
                }
                if let Some((m, s)) = MultiIndex::new(&[j]).wedge(*idx) {
                    out.add_to(m, dc.scale_int(s as i64));
                }
            }
            for (pos, i) in idx.indices().into_iter().enumerate() {
                let leibniz_sign = if pos % 2 == 0 { 1i64 } else { -1i64 };
                let rest = idx.difference(MultiIndex::new(&[i]));
                for (di, dc) in d_coframe[i as usize - 1].components() {
                    if let Some((m, s)) = di.wedge(rest) {
                        out.add_to(m, (c * dc).scale_int(leibniz_sign * s as i64));
                    }
                }
            }
        }
        out
    }
}

fn normalize_degree(f: Form, degree: u8) -> Form {
    if f.is_zero() {
        Form::zero(degree, f.basis())
    } else {
        f
    }
}
