//! PBW monomials and vectors of the vacuum module `V(k,0)`.
//!
//! A monomial `a_1(-m_1) ... a_s(-m_s) |0>` is stored in canonical order:
//! depths non-increasing from left to right, equal depths ordered by basis
//! index. Canonical monomials form a basis of `V(k,0)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Signed, Zero};

pub use crate::lie::Charge;
use crate::error::{Error, Result};
use crate::lie::LieData;
use crate::rational::Q;

/// A single creation operator `a(-depth)` with `a` a basis element of `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeFactor {
    pub label: u16,
    pub depth: u16,
}

impl ModeFactor {
    pub fn new(label: usize, depth: u32) -> Self {
        assert!(depth >= 1, "mode factors have depth >= 1");
        ModeFactor { label: label as u16, depth: depth as u16 }
    }
}

impl Ord for ModeFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        other.depth.cmp(&self.depth).then(self.label.cmp(&other.label))
    }
}

impl PartialOrd for ModeFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A canonical PBW monomial; the empty monomial is the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<ModeFactor>);

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Sorts the factors into canonical order.
    pub fn from_factors(mut factors: Vec<ModeFactor>) -> Self {
        factors.sort();
        PbwMonomial(factors)
    }

    pub fn factors(&self) -> &[ModeFactor] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|f| f.depth as u32).sum()
    }

    pub fn charge(&self, lie: &LieData) -> Charge {
        let mut c = Charge::zero(lie.rank());
        for f in &self.0 {
            for (a, b) in c.0.iter_mut().zip(&lie.charge(f.label as usize).0) {
                *a += b;
            }
        }
        c
    }

    /// Leading factor and the remaining monomial.
    pub fn split_first(&self) -> Option<(ModeFactor, PbwMonomial)> {
        self.0.split_first().map(|(f, rest)| (*f, PbwMonomial(rest.to_vec())))
    }

    /// `f` placed in front, assuming it sorts no later than the current head.
    pub(crate) fn prepend(&self, f: ModeFactor) -> PbwMonomial {
        debug_assert!(self.0.first().is_none_or(|h| f <= *h));
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(f);
        v.extend_from_slice(&self.0);
        PbwMonomial(v)
    }

    pub fn display<'a>(&'a self, lie: &'a LieData) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, lie }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a PbwMonomial,
    lie: &'a LieData,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in self.mono.factors() {
            write!(f, "{}(-{}) ", self.lie.basis_name(factor.label as usize), factor.depth)?;
        }
        write!(f, "|0>")
    }
}

/// Common grading of a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous { weight: u32, charge: Charge },
    Inhomogeneous,
    Zero,
}

/// A finite rational combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector(BTreeMap<PbwMonomial, Q>);

impl FockVector {
    pub fn zero() -> Self {
        FockVector(BTreeMap::new())
    }

    pub fn vacuum() -> Self {
        FockVector::from_monomial(PbwMonomial::vacuum())
    }

    pub fn from_monomial(m: PbwMonomial) -> Self {
        let mut map = BTreeMap::new();
        map.insert(m, Q::one());
        FockVector(map)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PbwMonomial, Q)>) -> Self {
        let mut v = FockVector::zero();
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &FockVector, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.0 {
            if s.is_one() {
                self.add_term(m.clone(), c.clone());
            } else {
                self.add_term(m.clone(), c * s);
            }
        }
    }

    pub fn scale(&self, s: &Q) -> FockVector {
        if s.is_zero() {
            return FockVector::zero();
        }
        FockVector(self.0.iter().map(|(m, c)| (m.clone(), c * s)).collect())
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Q {
        self.0.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Leading (smallest) monomial and its coefficient.
    pub fn leading(&self) -> Option<(&PbwMonomial, &Q)> {
        self.0.iter().next()
    }

    pub fn grading(&self, lie: &LieData) -> Grading {
        let mut it = self.0.keys();
        let Some(first) = it.next() else {
            return Grading::Zero;
        };
        let weight = first.weight();
        let charge = first.charge(lie);
        for m in it {
            if m.weight() != weight || m.charge(lie) != charge {
                return Grading::Inhomogeneous;
            }
        }
        Grading::Homogeneous { weight, charge }
    }

    /// Splits the vector into its `(weight, charge)` components.
    pub fn homogeneous_components(&self, lie: &LieData) -> BTreeMap<(u32, Charge), FockVector> {
        let mut out: BTreeMap<(u32, Charge), FockVector> = BTreeMap::new();
        for (m, c) in &self.0 {
            out.entry((m.weight(), m.charge(lie))).or_default().0.insert(m.clone(), c.clone());
        }
        out
    }

    /// Weight of a nonzero homogeneous vector.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.0.keys().map(PbwMonomial::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Whether `self` is `c * other` for some nonzero scalar `c`, returning it.
    pub fn proportionality(&self, other: &FockVector) -> Option<Q> {
        let (m, c) = self.leading()?;
        let d = other.0.get(m)?;
        let ratio = c / d;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    pub fn display<'a>(&'a self, lie: &'a LieData) -> VectorDisplay<'a> {
        VectorDisplay { vec: self, lie }
    }

    /// Parse the text produced by [`FockVector::display`].
    pub fn parse(text: &str, lie: &LieData) -> Result<FockVector> {
        parse_vector(text, lie)
    }
}

impl Add<&FockVector> for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub<&FockVector> for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        self.scale(&-Q::one())
    }
}

impl AddAssign<&FockVector> for FockVector {
    fn add_assign(&mut self, rhs: &FockVector) {
        self.add_scaled(rhs, &Q::one());
    }
}

pub struct VectorDisplay<'a> {
    vec: &'a FockVector,
    lie: &'a LieData,
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vec.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.vec.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "- ")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "{}", m.display(self.lie))?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_monomial_tokens(tokens: &[&str], lie: &LieData) -> Result<PbwMonomial> {
    let mut factors = Vec::new();
    for tok in tokens {
        let (name, mode) = tok
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("expected mode factor, got '{tok}'")))?;
        let mode = mode
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unclosed mode in '{tok}'")))?;
        let n: i64 = mode.parse().map_err(|_| Error::Parse(format!("bad mode in '{tok}'")))?;
        if n >= 0 {
            return Err(Error::Parse(format!("mode factors need negative modes: '{tok}'")));
        }
        let label = lie
            .basis_index_by_name(name)
            .ok_or_else(|| Error::Parse(format!("unknown basis element '{name}'")))?;
        factors.push(ModeFactor::new(label, (-n) as u32));
    }
    let mono = PbwMonomial::from_factors(factors.clone());
    if mono.factors() != factors.as_slice() {
        return Err(Error::Parse("monomial is not in canonical order".to_string()));
    }
    Ok(mono)
}

fn parse_vector(text: &str, lie: &LieData) -> Result<FockVector> {
    let text = text.trim();
    if text == "0" {
        return Ok(FockVector::zero());
    }
    let mut out = FockVector::zero();
    let mut sign = Q::one();
    let mut coeff: Option<Q> = None;
    let mut factors: Vec<&str> = Vec::new();
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = Q::one(),
            "-" => sign = -Q::one(),
            "|0>" => {
                let mono = parse_monomial_tokens(&factors, lie)?;
                let c = coeff.take().unwrap_or_else(Q::one);
                out.add_term(mono, &sign * c);
                factors.clear();
                sign = Q::one();
            }
            t if t.contains('(') => factors.push(t),
            t => coeff = Some(parse_rational(t)?),
        }
    }
    if !factors.is_empty() || coeff.is_some() {
        return Err(Error::Parse("trailing input without |0>".to_string()));
    }
    Ok(out)
}

/// All canonical monomials of weight `weight`, grouped by charge.
pub fn enumerate_weight(lie: &LieData, weight: u32) -> BTreeMap<Charge, Vec<PbwMonomial>> {
    let mut out: BTreeMap<Charge, Vec<PbwMonomial>> = BTreeMap::new();
    let dim = lie.dim();
    let mut stack: Vec<ModeFactor> = Vec::new();
    fn rec(
        lie: &LieData,
        dim: usize,
        remaining: u32,
        stack: &mut Vec<ModeFactor>,
        out: &mut BTreeMap<Charge, Vec<PbwMonomial>>,
    ) {
        if remaining == 0 {
            let m = PbwMonomial(stack.clone());
            out.entry(m.charge(lie)).or_default().push(m);
            return;
        }
        let (max_depth, min_label) = match stack.last() {
            Some(f) => (f.depth as u32, f.label as usize),
            None => (remaining, 0),
        };
        for depth in (1..=max_depth.min(remaining)).rev() {
            let start = if stack.last().is_some_and(|f| f.depth as u32 == depth) { min_label } else { 0 };
            for label in start..dim {
                stack.push(ModeFactor::new(label, depth));
                rec(lie, dim, remaining - depth, stack, out);
                stack.pop();
            }
        }
    }
    rec(lie, dim, weight, &mut stack, &mut out);
    out
}

/// All canonical monomials of the given weight and charge, in monomial order.
pub fn enumerate_basis(lie: &LieData, weight: u32, charge: &Charge) -> Vec<PbwMonomial> {
    let mut v = enumerate_weight(lie, weight).remove(charge).unwrap_or_default();
    v.sort();
    v
}
