//! The commutative ring of dilaton jet expressions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::jet::{Direction, JetSymbol};
use super::param::{Param, ParamMonomial};
use super::Q;

/// Everything in a term except the rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TermKey {
    /// Laurent monomial in the parameters.
    pub params: ParamMonomial,
    /// Power `k` of `e^{kf}`.
    pub exp_pow: i32,
    /// Multiset of jet symbols, kept sorted.
    pub jets: Vec<JetSymbol>,
}

impl TermKey {
    fn mul(&self, other: &Self) -> Self {
        let mut jets = Vec::with_capacity(self.jets.len() + other.jets.len());
        jets.extend_from_slice(&self.jets);
        jets.extend_from_slice(&other.jets);
        jets.sort();
        Self {
            params: self.params.mul(&other.params),
            exp_pow: self.exp_pow + other.exp_pow,
            jets,
        }
    }
}

/// Element of the dilaton-jet coefficient ring: a finite sum of terms
/// `c · p(t,s,…) · e^{kf} · f_{I_1} ⋯ f_{I_m}` with exact rational `c`.
///
/// Values are always normalized: no zero coefficients, no repeated keys, and
/// a fixed term order, so structural equality is ring equality. Normalized
/// values are immutable and freely shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<TermKey, Q>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(TermKey::default(), c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_integer(n.into()))
    }

    /// The rational `n/d`.
    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_q(Q::new(n.into(), d.into()))
    }

    pub fn param(p: Param) -> Self {
        Self::param_pow(p, 1)
    }

    pub fn param_pow(p: Param, k: i32) -> Self {
        Self::term(Q::one(), ParamMonomial::var_pow(p, k), 0, Vec::new())
    }

    /// `e^{kf}`.
    pub fn exp_f(k: i32) -> Self {
        Self::term(Q::one(), ParamMonomial::one(), k, Vec::new())
    }

    /// The jet symbol `f_I` as an expression.
    pub fn jet(index: &[Direction]) -> Self {
        Self::term(
            Q::one(),
            ParamMonomial::one(),
            0,
            vec![JetSymbol::new(index)],
        )
    }

    pub fn term(coeff: Q, params: ParamMonomial, exp_pow: i32, mut jets: Vec<JetSymbol>) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            jets.sort();
            terms.insert(
                TermKey {
                    params,
                    exp_pow,
                    jets,
                },
                coeff,
            );
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Q)> {
        self.terms.iter()
    }

    /// The coefficient of the constant-1 key, if the expression is a plain
    /// rational; `None` when any parameter, exponential or jet is present.
    pub fn as_rational(&self) -> Option<Q> {
        if self.terms.is_empty() {
            return Some(Q::zero());
        }
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            if *k == TermKey::default() {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, key: TermKey, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_q(&Q::from_integer(n.into()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in the base direction `i`.
    ///
    /// Parameters are constants, `∂_i e^{kf} = k f_i e^{kf}` and
    /// `∂_i f_I = f_{sort(I∪{i})}`; the Leibniz rule is applied across the
    /// jet multiset of each term.
    pub fn partial(&self, i: Direction) -> Self {
        assert!((1..=4).contains(&i), "direction must lie in 1..=4");
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            // chain rule through the exponential factor
            if key.exp_pow != 0 {
                let mut jets = key.jets.clone();
                jets.push(JetSymbol::new(&[i]));
                jets.sort();
                out.add_term(
                    TermKey {
                        params: key.params.clone(),
                        exp_pow: key.exp_pow,
                        jets,
                    },
                    coeff * Q::from_integer(key.exp_pow.into()),
                );
            }
            // product rule over the jet factors
            for (n, j) in key.jets.iter().enumerate() {
                if n > 0 && key.jets[n - 1] == *j {
                    continue; // identical factor already covered below
                }
                let mult = key.jets.iter().filter(|&x| x == j).count() as i64;
                let mut jets: Vec<JetSymbol> = key
                    .jets
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != n)
                    .map(|(_, x)| x.clone())
                    .collect();
                jets.push(j.derive(i));
                jets.sort();
                out.add_term(
                    TermKey {
                        params: key.params.clone(),
                        exp_pow: key.exp_pow,
                        jets,
                    },
                    coeff * Q::from_integer(mult.into()),
                );
            }
        }
        out
    }

    /// `Σ_{i=1..4} ∂_i ∂_i` — the flat Laplacian on the base.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero();
        for i in 1..=4 {
            out = &out + &self.partial(i).partial(i);
        }
        out
    }

    /// Largest jet order appearing in the expression.
    pub fn max_jet_order(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|k| k.jets.iter())
            .map(|j| j.order())
            .max()
            .unwrap_or(0)
    }

    /// Replaces the parameter `p` by `replacement` everywhere.
    ///
    /// Negative powers of `p` require `replacement` to be a single invertible
    /// term (a nonzero monomial); otherwise this returns `None`.
    pub fn substitute_param(&self, p: Param, replacement: &ScalarExpr) -> Option<Self> {
        let inv = replacement.invert_monomial();
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            let (k, rest) = key.params.split_off(p);
            let base = Self::term(coeff.clone(), rest, key.exp_pow, key.jets.clone());
            let factor = if k >= 0 {
                replacement.pow(k as u32)
            } else {
                inv.as_ref()?.pow((-k) as u32)
            };
            out = &out + &(&base * &factor);
        }
        Some(out)
    }

    /// Renames the parameter `from` into `to` (power-preserving).
    pub fn rename_param(&self, from: Param, to: Param) -> Self {
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            let (k, rest) = key.params.split_off(from);
            let params = rest.mul(&ParamMonomial::var_pow(to, k));
            out.add_term(
                TermKey {
                    params,
                    exp_pow: key.exp_pow,
                    jets: key.jets.clone(),
                },
                coeff.clone(),
            );
        }
        out
    }

    /// The inverse of a single-term expression, when one exists.
    pub fn invert_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (key, coeff) = self.terms.iter().next().unwrap();
        if !key.jets.is_empty() {
            return None; // jets are not invertible symbols
        }
        Some(Self::term(
            Q::one() / coeff,
            key.params.inv(),
            -key.exp_pow,
            Vec::new(),
        ))
    }

    /// Kills every term containing a jet with a direction other than 1;
    /// restriction to profiles depending on `x¹` alone.
    pub fn restrict_to_x1(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| {
                    k.jets
                        .iter()
                        .all(|j| j.directions().iter().all(|&d| d == 1))
                })
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Specializes to the zero dilaton: jets vanish and `e^{kf} = 1`.
    pub fn at_zero_dilaton(&self) -> Self {
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            if !key.jets.is_empty() {
                continue;
            }
            out.add_term(
                TermKey {
                    params: key.params.clone(),
                    exp_pow: 0,
                    jets: Vec::new(),
                },
                coeff.clone(),
            );
        }
        out
    }

    /// Kills every term containing any jet symbol (`f` constant).
    pub fn restrict_to_constant_f(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.jets.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// If `self == c * other` for a rational `c` (with `other` nonzero),
    /// returns `c`.
    pub fn rational_multiple_of(&self, other: &ScalarExpr) -> Option<Q> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Q::zero());
        }
        let (k0, c0) = other.terms.iter().next().unwrap();
        let c = self.terms.get(k0)? / c0;
        if (self - &other.scale_q(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }

    /// Sum of absolute values of the coefficients; a cheap "size" used in
    /// diagnostics.
    pub fn coeff_l1_norm(&self) -> Q {
        let mut acc = Q::zero();
        for c in self.terms.values() {
            acc += c.abs();
        }
        acc
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(kb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::format_scalar(self, f)
    }
}
