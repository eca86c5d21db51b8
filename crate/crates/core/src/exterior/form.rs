//! Graded exterior forms over the dilaton-jet ring.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{text, ParseError, ScalarExpr, Q};

use super::multi_index::MultiIndex;

/// Which coframe the coefficients refer to.
///
/// `Invariant` is the left-invariant coframe `e^1..e^6`; `Orthonormal` the
/// conformally rescaled coframe `ē^i = e^f e^i` (`i ≤ 4`), `ē^5 = e^5`,
/// `ē^6 = e^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Invariant,
    Orthonormal,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::Invariant => "e",
            Basis::Orthonormal => "eb",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("basis mismatch: {0:?} vs {1:?}; convert first")]
    BasisMismatch(Basis, Basis),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),
    #[error("operation requires the orthonormal basis")]
    NeedsOrthonormal,
    #[error("contraction requires degree q >= p, got p={0}, q={1}")]
    ContractionDegrees(u8, u8),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A homogeneous exterior form: degree, basis tag, and coefficients indexed
/// by strictly increasing multi-indices. Absent indices are zero; stored
/// coefficients are never the zero expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    degree: u8,
    basis: Basis,
    coeffs: BTreeMap<MultiIndex, ScalarExpr>,
}

impl Form {
    pub fn zero(degree: u8, basis: Basis) -> Self {
        Self {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form from a scalar.
    pub fn scalar(value: ScalarExpr, basis: Basis) -> Self {
        let mut f = Self::zero(0, basis);
        f.add_to(MultiIndex::EMPTY, value);
        f
    }

    /// `coeff · e^{indices}` with the indices in arbitrary order (the sorting
    /// sign is absorbed into the coefficient). Repeated indices give zero.
    pub fn monomial(basis: Basis, indices: &[u8], coeff: ScalarExpr) -> Self {
        let mut f = Self::zero(indices.len() as u8, basis);
        if let Some((idx, sign)) = MultiIndex::from_unordered(indices) {
            f.add_to(idx, coeff.scale_int(sign as i64));
        }
        f
    }

    /// The basis monomial `e^{indices}` with unit coefficient.
    pub fn basis_elem(basis: Basis, indices: &[u8]) -> Self {
        Self::monomial(basis, indices, ScalarExpr::one())
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, indices: &[u8]) -> ScalarExpr {
        let (idx, sign) = match MultiIndex::from_unordered(indices) {
            Some(x) => x,
            None => return ScalarExpr::zero(),
        };
        match self.coeffs.get(&idx) {
            Some(c) => c.scale_int(sign as i64),
            None => ScalarExpr::zero(),
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<MultiIndex> {
        self.coeffs.keys().copied().collect()
    }

    pub(crate) fn add_to(&mut self, idx: MultiIndex, coeff: ScalarExpr) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(idx.degree(), self.degree);
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form, FormError> {
        if self.basis != other.basis {
            return Err(FormError::BasisMismatch(self.basis, other.basis));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(FormError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = if self.is_zero() {
            other.clone()
        } else {
            self.clone()
        };
        if !self.is_zero() {
            for (idx, c) in &other.coeffs {
                out.add_to(*idx, c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &ScalarExpr) -> Form {
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_q(&self, s: &Q) -> Form {
        self.map_coeffs(|c| c.scale_q(s))
    }

    pub fn scale_int(&self, n: i64) -> Form {
        self.map_coeffs(|c| c.scale_int(n))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Form {
        let mut out = Form::zero(self.degree, self.basis);
        for (idx, c) in &self.coeffs {
            out.add_to(*idx, f(c));
        }
        out
    }

    /// Graded-commutative, associative wedge product.
    pub fn wedge(&self, other: &Form) -> Result<Form, FormError> {
        if self.basis != other.basis {
            return Err(FormError::BasisMismatch(self.basis, other.basis));
        }
        let degree = self.degree + other.degree;
        let mut out = Form::zero(degree, self.basis);
        if degree > 6 {
            return Ok(out); // identically zero beyond top degree
        }
        for (ia, ca) in &self.coeffs {
            for (ib, cb) in &other.coeffs {
                if let Some((idx, sign)) = ia.wedge(*ib) {
                    out.add_to(idx, (ca * cb).scale_int(sign as i64));
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the orthonormal coframe, orientation `ē^{123456}`.
    pub fn hodge_star(&self) -> Result<Form, FormError> {
        if self.basis != Basis::Orthonormal {
            return Err(FormError::NeedsOrthonormal);
        }
        let mut out = Form::zero(6 - self.degree, self.basis);
        for (idx, c) in &self.coeffs {
            let comp = idx.complement();
            let (_, sign) = idx.wedge(comp).expect("disjoint complement");
            out.add_to(comp, c.scale_int(sign as i64));
        }
        Ok(out)
    }

    /// Interior multiplication `self ⌟ other` of a p-form into a q-form,
    /// `q ≥ p`, in the orthonormal frame:
    /// `(a⌟b)(X_{p+1..q}) = (1/p!) Σ a(E_{i_1..i_p}) b(E_{i_1..i_p}, X…)`.
    /// On basis monomials this is `ē^I ⌟ ē^J = sign · ē^{J∖I}` for `I ⊆ J`
    /// with the sign of `ē^I ∧ ē^{J∖I} = sign · ē^J`; for `p = q` it returns
    /// the scalar product as a 0-form.
    pub fn contract(&self, other: &Form) -> Result<Form, FormError> {
        if self.basis != Basis::Orthonormal || other.basis != Basis::Orthonormal {
            return Err(FormError::NeedsOrthonormal);
        }
        if self.degree > other.degree {
            return Err(FormError::ContractionDegrees(self.degree, other.degree));
        }
        let mut out = Form::zero(other.degree - self.degree, Basis::Orthonormal);
        for (ia, ca) in &self.coeffs {
            for (ib, cb) in &other.coeffs {
                if ia.is_subset_of(*ib) {
                    let rest = ib.difference(*ia);
                    let (_, sign) = ia.wedge(rest).expect("disjoint by construction");
                    out.add_to(rest, (ca * cb).scale_int(sign as i64));
                }
            }
        }
        Ok(out)
    }

    /// Evaluates the form on a tuple of coframe-dual frame vectors, fully
    /// antisymmetrically: `ē^{12}(ē₂, ē₁) = -1`, repeated arguments give 0.
    pub fn evaluate_on_frame(&self, indices: &[u8]) -> ScalarExpr {
        assert_eq!(
            indices.len(),
            self.degree as usize,
            "tuple length must equal the degree"
        );
        self.coefficient(indices)
    }

    /// The complex structure acting through index substitution,
    /// `J ē¹ = -ē², J ē² = ē¹, …`; on a p-form this realizes
    /// `(Ja)(X₁,…,X_p) = (-1)^p a(JX₁,…,JX_p)`.
    pub fn apply_j(&self) -> Form {
        let mut out = Form::zero(self.degree, self.basis);
        for (idx, c) in &self.coeffs {
            let mut sign = 1i64;
            let mapped: Vec<u8> = idx
                .indices()
                .into_iter()
                .map(|i| {
                    let (j, s) = j_index(i);
                    sign *= s as i64;
                    j
                })
                .collect();
            let (new_idx, perm_sign) =
                MultiIndex::from_unordered(&mapped).expect("J permutes index pairs");
            out.add_to(new_idx, c.scale_int(sign * perm_sign as i64));
        }
        out
    }

    /// Rewrites the coefficients into the other coframe using
    /// `e^i = e^{-f} ē^i` for the base directions (indices 5, 6 are shared).
    pub fn to_basis(&self, target: Basis) -> Form {
        if self.basis == target {
            return self.clone();
        }
        let mut out = Form::zero(self.degree, target);
        for (idx, c) in &self.coeffs {
            let n = idx.base_count() as i32;
            // invariant -> orthonormal: e^I = e^{-n f} ē^I
            let k = match target {
                Basis::Orthonormal => -n,
                Basis::Invariant => n,
            };
            out.add_to(*idx, c * &ScalarExpr::exp_f(k));
        }
        out
    }

    /// Specializes every coefficient to the zero dilaton (jets vanish,
    /// `e^{kf} = 1`); at `f ≡ 0` the two coframes coincide.
    pub fn at_zero_dilaton(&self) -> Form {
        self.map_coeffs(|c| c.at_zero_dilaton())
    }

    /// Largest jet order among the coefficients.
    pub fn max_jet_order(&self) -> usize {
        self.coeffs
            .values()
            .map(|c| c.max_jet_order())
            .max()
            .unwrap_or(0)
    }

    pub fn rename_param(&self, from: crate::scalar::Param, to: crate::scalar::Param) -> Form {
        self.map_coeffs(|c| c.rename_param(from, to))
    }

    /// Parses a form in the documented grammar; bare scalars (no basis
    /// monomial) parse as 0-forms in `default_basis`.
    pub fn parse(input: &str, default_basis: Basis) -> Result<Form, FormError> {
        parse_form(input, default_basis)
    }
}

/// Action of the standard complex structure on a single coframe index:
/// returns `(j, s)` with `J e^i = s e^j`.
pub fn j_index(i: u8) -> (u8, i8) {
    match i {
        1 => (2, -1),
        2 => (1, 1),
        3 => (4, -1),
        4 => (3, 1),
        5 => (6, -1),
        6 => (5, 1),
        _ => panic!("coframe index out of range: {i}"),
    }
}

/// The standard complex structure of the adapted basis,
/// `Je¹ = -e², Je³ = -e⁴, Je⁵ = -e⁶`, acting on forms by index substitution
/// and on frame vectors by the dual action (`Jē_1 = -ē_2`, …).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexStructure;

impl ComplexStructure {
    pub fn apply(&self, form: &Form) -> Form {
        form.apply_j()
    }

    /// Action on a frame vector: `J ē_i = s ē_j`.
    pub fn frame_vector(&self, i: u8) -> (u8, i8) {
        j_index(i)
    }
}

type ParsedPiece = (ScalarExpr, Option<(Basis, MultiIndex, i8)>);

fn parse_form(input: &str, default_basis: Basis) -> Result<Form, FormError> {
    use text::Token;
    let mut p = text::Parser::new(input)?;
    let mut pieces: Vec<ParsedPiece> = Vec::new();
    let mut sign = 1i64;
    if matches!(p.peek(), Some(Token::Minus)) {
        p.next();
        sign = -1;
    }
    loop {
        let (scalarpart, basis_mon) = p.parse_term(false)?;
        let resolved = match basis_mon {
            None => None,
            Some((letters, digits)) => {
                let basis = match letters.as_str() {
                    "e" => Basis::Invariant,
                    "eb" => Basis::Orthonormal,
                    _ => return Err(ParseError::UnknownSymbol(letters).into()),
                };
                let dirs: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
                if dirs.iter().any(|&d| !(1..=6).contains(&d)) {
                    return Err(ParseError::BadBasisIndex(digits).into());
                }
                let (idx, s) =
                    MultiIndex::from_unordered(&dirs).ok_or(ParseError::BadBasisIndex(digits))?;
                Some((basis, idx, s))
            }
        };
        pieces.push((scalarpart.scale_int(sign), resolved));
        match p.next() {
            None => break,
            Some(Token::Plus) => sign = 1,
            Some(Token::Minus) => sign = -1,
            Some(t) => {
                return Err(ParseError::Unexpected {
                    expected: "`+`, `-` or end".into(),
                    found: format!("{t}"),
                }
                .into())
            }
        }
    }
    // Determine basis and degree from the monomials present.
    let mut basis: Option<Basis> = None;
    let mut degree: Option<u8> = None;
    for (_, mon) in &pieces {
        if let Some((b, idx, _)) = mon {
            if *basis.get_or_insert(*b) != *b {
                return Err(ParseError::MixedBasis.into());
            }
            if *degree.get_or_insert(idx.degree()) != idx.degree() {
                return Err(ParseError::MixedDegree.into());
            }
        }
    }
    let basis = basis.unwrap_or(default_basis);
    let degree = degree.unwrap_or(0);
    let mut out = Form::zero(degree, basis);
    for (scalar, mon) in pieces {
        match mon {
            Some((_, idx, s)) => out.add_to(idx, scalar.scale_int(s as i64)),
            None => {
                if degree == 0 {
                    out.add_to(MultiIndex::EMPTY, scalar);
                } else if !scalar.is_zero() {
                    return Err(ParseError::MixedDegree.into());
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.degree == 0 {
            let c = self
                .coeffs
                .get(&MultiIndex::EMPTY)
                .cloned()
                .unwrap_or_default();
            return write!(f, "{c}");
        }
        // lexicographic order on the index tuples
        let mut entries: Vec<(Vec<u8>, &MultiIndex, &ScalarExpr)> = self
            .coeffs
            .iter()
            .map(|(idx, c)| (idx.indices(), idx, c))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut first = true;
        for (_, idx, c) in entries {
            let (neg, rendered) = text::format_coefficient(c);
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}{}", rendered, self.basis.label(), idx)?;
        }
        Ok(())
    }
}
