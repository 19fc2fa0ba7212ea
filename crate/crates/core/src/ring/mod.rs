//! Exact arithmetic in the symbolic ring `Z[L, s1, s2, ...]`.
//!
//! A [`RingElement`] models the part of the Grothendieck ring of varieties
//! generated by the Lefschetz class `L = [A^1]` and a finite set of named
//! classes (`Pic0`, `X`, `Sym2`, ...). The ring is treated as free: two
//! elements are equal iff their canonical term maps agree, so equality is
//! symbolic rather than geometric.
//!
//! Two evaluation maps are provided. [`RingElement::substitute`] is the ring
//! endomorphism that replaces symbols by other elements, and
//! [`RingElement::count_specialize`] is the point-counting homomorphism to
//! `Z` that sends `L` to the field size `q`.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub use parse::ParseError;

/// Name of the reserved Lefschetz symbol.
pub const LEFSCHETZ: &str = "L";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),
    #[error("symbol {0} has no assigned value")]
    MissingSymbol(String),
    #[error("the Lefschetz symbol L cannot be substituted by the constant {0}")]
    ReservedSymbol(String),
    #[error("assignment maps L to {assigned} but the field size is {q}")]
    LefschetzConflict { assigned: BigInt, q: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("divisor {0} is not a polynomial in L with leading coefficient +-1")]
    InvalidDivisor(String),
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl RingError {
    /// Structured error name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            RingError::InvalidSymbol(_) => "InvalidSymbol",
            RingError::MissingSymbol(_) => "MissingSymbol",
            RingError::ReservedSymbol(_) => "ReservedSymbol",
            RingError::LefschetzConflict { .. } => "LefschetzConflict",
            RingError::NotPrimePower(_) => "NotPrimePower",
            RingError::InvalidDivisor(_) => "InvalidDivisor",
            RingError::NotDivisible { .. } => "NotDivisible",
            RingError::Parse(_) => "ParseError",
        }
    }
}

/// A class symbol. Names are ASCII identifiers; `L` is the Lefschetz class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self, RingError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Symbol(name))
        } else {
            Err(RingError::InvalidSymbol(name))
        }
    }

    pub fn lefschetz() -> Self {
        Symbol(LEFSCHETZ.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_lefschetz(&self) -> bool {
        self.0 == LEFSCHETZ
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Symbol {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::new(s)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A product of symbols with positive exponents, sorted by symbol name.
///
/// Monomials are ordered by total degree first, then lexicographically on
/// the `(name, exponent)` sequence. This is the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(symbol: Symbol) -> Self {
        Monomial(vec![(symbol, 1)])
    }

    pub fn lefschetz_power(k: u32) -> Self {
        if k == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(Symbol::lefschetz(), k)])
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and
    /// dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Symbol, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in factors {
            *map.entry(s).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent_of(&self, name: &str) -> u32 {
        self.0.iter().find(|(s, _)| s.as_str() == name).map_or(0, |&(_, e)| e)
    }

    /// Splits off the power of `L`: returns `(k, m)` with `self = L^k * m`.
    pub fn split_lefschetz(&self) -> (u32, Monomial) {
        let mut k = 0;
        let rest = self
            .0
            .iter()
            .filter(|(s, e)| {
                if s.is_lefschetz() {
                    k = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (k, Monomial(rest))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Symbol to ring-element map used by [`RingElement::substitute`].
pub type Substitution = BTreeMap<Symbol, RingElement>;

/// Symbol to integer map used by [`RingElement::count_specialize`].
pub type CountAssignment = BTreeMap<Symbol, BigInt>;

/// An element of `Z[L, s1, s2, ...]` in canonical form.
///
/// The term map never stores a zero coefficient, so the zero element is the
/// empty map and structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RingElement::from_term(Monomial::one(), c.into())
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        RingElement::lefschetz_power(1)
    }

    /// `L^k`.
    pub fn lefschetz_power(k: u32) -> Self {
        RingElement::from_term(Monomial::lefschetz_power(k), BigInt::one())
    }

    /// The class named `name`; `"L"` yields the Lefschetz class.
    pub fn symbol(name: &str) -> Result<Self, RingError> {
        Ok(RingElement::from_symbol(Symbol::new(name)?))
    }

    pub fn from_symbol(symbol: Symbol) -> Self {
        RingElement::from_term(Monomial::var(symbol), BigInt::one())
    }

    pub fn from_term(monomial: Monomial, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        RingElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut out = RingElement::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// `c_0 + c_1 L + ... + c_k L^k`.
    pub fn lefschetz_polynomial<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        RingElement::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (Monomial::lefschetz_power(k as u32), c.into())),
        )
    }

    fn add_term(&mut self, monomial: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the element has no symbolic part.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    /// Every symbol occurring in the element, including `L`.
    pub fn symbols(&self) -> BTreeSet<&Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s))
            .collect()
    }

    /// Highest power of `L` occurring, or `None` for zero.
    pub fn lefschetz_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent_of(LEFSCHETZ)).max()
    }

    /// Multiplies by `L^k`.
    pub fn shift_lefschetz(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let lk = Monomial::lefschetz_power(k);
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.mul(&lk), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RingElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Groups terms by their power of `L`: `self = sum_k L^k * coeff_k`,
    /// with each `coeff_k` free of `L`.
    pub fn lefschetz_coefficients(&self) -> BTreeMap<u32, RingElement> {
        let mut out: BTreeMap<u32, RingElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, rest) = m.split_lefschetz();
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Applies the ring endomorphism fixing every symbol not listed in
    /// `subst` and sending listed symbols to their values.
    ///
    /// `L` may only be sent to a non-constant element or to `+-1`; the
    /// integer specialization `L -> q` goes through
    /// [`count_specialize`](Self::count_specialize).
    pub fn substitute(&self, subst: &Substitution) -> Result<RingElement, RingError> {
        if let Some(v) = subst.get(&Symbol::lefschetz()) {
            if let Some(c) = v.as_constant() {
                if c.abs() != BigInt::one() {
                    return Err(RingError::ReservedSymbol(c.to_string()));
                }
            }
        }
        let mut powers: BTreeMap<(&Symbol, u32), RingElement> = BTreeMap::new();
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            let mut fixed = Vec::new();
            let mut value = RingElement::constant(c.clone());
            for (s, e) in m.factors() {
                match subst.get(s) {
                    Some(v) => {
                        let p = powers.entry((s, *e)).or_insert_with(|| v.pow(*e));
                        value = &value * &*p;
                    }
                    None => fixed.push((s.clone(), *e)),
                }
            }
            let fixed = RingElement::from_term(Monomial(fixed), BigInt::one());
            out += &value * &fixed;
        }
        Ok(out)
    }

    /// The counting homomorphism: `L -> q`, every other symbol via `assign`.
    pub fn count_specialize(&self, q: u64, assign: &CountAssignment) -> Result<BigInt, RingError> {
        if !is_prime_power(q) {
            return Err(RingError::NotPrimePower(q));
        }
        let q_big = BigInt::from(q);
        if let Some(v) = assign.get(&Symbol::lefschetz()) {
            if *v != q_big {
                return Err(RingError::LefschetzConflict { assigned: v.clone(), q });
            }
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.factors() {
                let base = if s.is_lefschetz() {
                    &q_big
                } else {
                    assign.get(s).ok_or_else(|| RingError::MissingSymbol(s.to_string()))?
                };
                v *= Pow::pow(base, *e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact quotient by a polynomial in `L` alone whose leading coefficient
    /// is `+-1`, treating all other symbols as coefficients.
    ///
    /// Long division eliminates the top `L`-degree part of the remainder at
    /// each step; a nonzero remainder of lower `L`-degree than the divisor
    /// means no exact quotient exists.
    pub fn div_exact_lefschetz(&self, divisor: &RingElement) -> Result<RingElement, RingError> {
        let div_coeffs = divisor.lefschetz_coefficients();
        let (&top, lead) = div_coeffs
            .iter()
            .next_back()
            .ok_or_else(|| RingError::InvalidDivisor(divisor.to_string()))?;
        let lead = match (
            div_coeffs.values().all(|c| c.as_constant().is_some()),
            lead.as_constant(),
        ) {
            (true, Some(c)) if c.abs().is_one() => c,
            _ => return Err(RingError::InvalidDivisor(divisor.to_string())),
        };
        let mut remainder = self.clone();
        let mut quotient = RingElement::zero();
        loop {
            let parts = remainder.lefschetz_coefficients();
            let Some((&k, part)) = parts.iter().next_back() else {
                return Ok(quotient);
            };
            if k < top {
                return Err(RingError::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let step = part.scale(&lead).shift_lefschetz(k - top);
            remainder -= &step * divisor;
            quotient += step;
        }
    }
}

/// `1 + L + ... + L^n`, the class of projective `n`-space.
pub fn projective_space_class(n: u32) -> RingElement {
    geometric_ladder(1, n + 1)
}

/// `1 + L^step + L^(2 step) + ... ` with `len` terms.
pub fn geometric_ladder(step: u32, len: u32) -> RingElement {
    RingElement::from_terms((0..len).map(|i| (Monomial::lefschetz_power(i * step), BigInt::one())))
}

pub(crate) fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = smallest_prime_factor(q);
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElement {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl From<i64> for RingElement {
    fn from(c: i64) -> Self {
        RingElement::constant(c)
    }
}

impl From<BigInt> for RingElement {
    fn from(c: BigInt) -> Self {
        RingElement::constant(c)
    }
}

impl<'a> Add<&'a RingElement> for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &'a RingElement) -> RingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a RingElement> for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &'a RingElement) -> RingElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a RingElement> for &RingElement {
    type Output = RingElement;

    fn mul(self, rhs: &'a RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(mut self) -> RingElement {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl<'a> AddAssign<&'a RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &'a RingElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<RingElement> for RingElement {
    fn add_assign(&mut self, rhs: RingElement) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> SubAssign<&'a RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &'a RingElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: RingElement) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> MulAssign<&'a RingElement> for RingElement {
    fn mul_assign(&mut self, rhs: &'a RingElement) {
        *self = &*self * rhs;
    }
}

impl Sum for RingElement {
    fn sum<I: Iterator<Item = RingElement>>(iter: I) -> Self {
        iter.fold(RingElement::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a RingElement> for RingElement {
    fn sum<I: Iterator<Item = &'a RingElement>>(iter: I) -> Self {
        iter.fold(RingElement::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for RingElement {
    fn product<I: Iterator<Item = RingElement>>(iter: I) -> Self {
        iter.fold(RingElement::one(), |acc, x| &acc * &x)
    }
}
