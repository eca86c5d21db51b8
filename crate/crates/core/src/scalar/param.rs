//! Structure-constant and coupling parameters, and Laurent monomials in them.

use std::collections::BTreeMap;
use std::fmt;

use super::Q;

/// A named real parameter of the geometry.
///
/// `T` and `S` are the structure constants of the fibration, `AInst` and
/// `DInst` the corresponding parameters of the gauge connection twin,
/// `L1..L3` the components of the abelian instanton, `AlphaPrime` the string
/// tension parameter and `Alpha` its negative square root (`ap = -alpha^2`
/// when the two are tied).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    T,
    S,
    AInst,
    DInst,
    L1,
    L2,
    L3,
    AlphaPrime,
    Alpha,
}

pub const ALL_PARAMS: [Param; 9] = [
    Param::T,
    Param::S,
    Param::AInst,
    Param::DInst,
    Param::L1,
    Param::L2,
    Param::L3,
    Param::AlphaPrime,
    Param::Alpha,
];

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::T => "t",
            Param::S => "s",
            Param::AInst => "a",
            Param::DInst => "d",
            Param::L1 => "l1",
            Param::L2 => "l2",
            Param::L3 => "l3",
            Param::AlphaPrime => "ap",
            Param::Alpha => "alpha",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        ALL_PARAMS.iter().copied().find(|p| p.name() == name)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Product of integer (possibly negative) powers of parameters.
///
/// Zero exponents are never stored, so structural equality is monomial
/// equality and the empty map is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ParamMonomial {
    exps: BTreeMap<Param, i32>,
}

impl ParamMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(p: Param) -> Self {
        Self::var_pow(p, 1)
    }

    pub fn var_pow(p: Param, k: i32) -> Self {
        let mut exps = BTreeMap::new();
        if k != 0 {
            exps.insert(p, k);
        }
        Self { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, p: Param) -> i32 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, i32)> + '_ {
        self.exps.iter().map(|(&p, &k)| (p, k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (&p, &k) in &other.exps {
            let e = exps.entry(p).or_insert(0);
            *e += k;
            if *e == 0 {
                exps.remove(&p);
            }
        }
        Self { exps }
    }

    pub fn inv(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(&p, &k)| (p, -k)).collect(),
        }
    }

    /// Removes `p` from the monomial, returning its exponent.
    pub fn split_off(&self, p: Param) -> (i32, Self) {
        let mut exps = self.exps.clone();
        let k = exps.remove(&p).unwrap_or(0);
        (k, Self { exps })
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (&p, &k) in &self.exps {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Assignment of values to parameters, used when evaluating expressions.
#[derive(Debug, Clone, Default)]
pub struct ParamValues<T> {
    values: BTreeMap<Param, T>,
}

impl<T: Clone> ParamValues<T> {
    pub fn new() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }

    pub fn set(mut self, p: Param, v: T) -> Self {
        self.values.insert(p, v);
        self
    }

    pub fn insert(&mut self, p: Param, v: T) {
        self.values.insert(p, v);
    }

    pub fn get(&self, p: Param) -> Option<&T> {
        self.values.get(&p)
    }
}

impl ParamValues<Q> {
    /// 1 for every parameter; handy starting point in tests.
    pub fn all_ones() -> Self {
        let mut values = BTreeMap::new();
        for p in ALL_PARAMS {
            values.insert(p, Q::from_integer(1.into()));
        }
        Self { values }
    }
}
