//! Truncated power series in `t` over [`RingElement`], polynomials in `t`,
//! and rational forms whose denominators are products of `(1 - L^a t^b)`.
//!
//! Series carry an explicit exclusive precision `N`: coefficients
//! `c_0 .. c_{N-1}` are exact and nothing is known beyond. Binary operations
//! truncate to the smaller precision of their operands.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::ring::{CountAssignment, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series precision must be positive")]
    ZeroPrecision,
    #[error("constant term {0} is not a unit (+-1)")]
    NonUnitConstantTerm(String),
    #[error("cleared series is not a polynomial within precision: coefficient {index} is nonzero")]
    NotPolynomialWithinPrecision { index: usize },
    #[error("denominator factor must have positive t-exponent")]
    InvalidFactor,
    #[error("numerator constant term must be 1, found {0}")]
    NumeratorConstantTerm(String),
}

impl SeriesError {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesError::ZeroPrecision => "ZeroPrecision",
            SeriesError::NonUnitConstantTerm(_) => "NonUnitConstantTerm",
            SeriesError::NotPolynomialWithinPrecision { .. } => "NotPolynomialWithinPrecision",
            SeriesError::InvalidFactor => "InvalidFactor",
            SeriesError::NumeratorConstantTerm(_) => "NumeratorConstantTerm",
        }
    }
}

/// `c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RingElement>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<RingElement>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroPrecision);
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Series with the given leading coefficients, zero-padded or truncated
    /// to `precision`.
    pub fn from_coeffs(mut coeffs: Vec<RingElement>, precision: usize) -> Result<Self, SeriesError> {
        if precision == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        coeffs.resize(precision, RingElement::zero());
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(precision: usize) -> Result<Self, SeriesError> {
        TruncatedSeries::from_coeffs(Vec::new(), precision)
    }

    pub fn one(precision: usize) -> Result<Self, SeriesError> {
        TruncatedSeries::from_coeffs(vec![RingElement::one()], precision)
    }

    /// `1 / (1 - c t) = sum c^m t^m`.
    pub fn geometric(ratio: &RingElement, precision: usize) -> Result<Self, SeriesError> {
        let mut coeffs = Vec::with_capacity(precision);
        let mut cur = RingElement::one();
        for _ in 0..precision {
            let next = &cur * ratio;
            coeffs.push(cur);
            cur = next;
        }
        TruncatedSeries::new(coeffs)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &RingElement {
        &self.coeffs[m]
    }

    pub fn into_coeffs(self) -> Vec<RingElement> {
        self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> Result<Self, SeriesError> {
        if precision == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..precision.min(self.coeffs.len())].to_vec(),
        })
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller precision.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(other.precision());
        let mut coeffs = vec![RingElement::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &RingElement) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be `+-1`.
    pub fn inverse(&self) -> Result<TruncatedSeries, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| c.abs().is_one())
            .ok_or_else(|| SeriesError::NonUnitConstantTerm(self.coeffs[0].to_string()))?;
        // c0 is its own inverse
        let c0 = RingElement::constant(c0);
        let n = self.precision();
        let mut inv: Vec<RingElement> = Vec::with_capacity(n);
        inv.push(c0.clone());
        for m in 1..n {
            let mut acc = RingElement::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[m - k];
                }
            }
            inv.push(-(&acc * &c0));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// Multiplies by `(1 - L^a t^b)`; precision is preserved.
    pub fn mul_factor(&self, f: DenominatorFactor) -> TruncatedSeries {
        let b = f.t_exp as usize;
        let mut coeffs = self.coeffs.clone();
        for m in (b..coeffs.len()).rev() {
            let shifted = self.coeffs[m - b].shift_lefschetz(f.l_exp);
            coeffs[m] -= shifted;
        }
        TruncatedSeries { coeffs }
    }

    /// Divides by `(1 - L^a t^b)` via `g_m = f_m + L^a g_{m-b}`.
    pub fn div_factor(&self, f: DenominatorFactor) -> TruncatedSeries {
        let b = f.t_exp as usize;
        let mut coeffs = self.coeffs.clone();
        for m in b..coeffs.len() {
            let prev = coeffs[m - b].shift_lefschetz(f.l_exp);
            coeffs[m] += prev;
        }
        TruncatedSeries { coeffs }
    }

    /// Applies the counting homomorphism to every coefficient.
    pub fn count_specialize(&self, q: u64, assign: &CountAssignment) -> Result<Vec<BigInt>, RingError> {
        self.coeffs.iter().map(|c| c.count_specialize(q, assign)).collect()
    }

    /// Multiplies by every factor and checks that the result is a polynomial
    /// within precision.
    ///
    /// With `N` the precision and `B` the total `t`-degree of `factors`, the
    /// product is accepted iff its coefficients at indices `N-B .. N-1` all
    /// vanish, i.e. `N > deg p + B`. The first nonzero coefficient in that
    /// window is reported otherwise.
    pub fn clear_denominator(&self, factors: &[DenominatorFactor]) -> Result<TPolynomial, SeriesError> {
        let mut product = self.clone();
        for &f in factors {
            product = product.mul_factor(f);
        }
        let n = product.precision();
        let window: usize = factors.iter().map(|f| f.t_exp as usize).sum::<usize>().max(1);
        let start = n.saturating_sub(window);
        if let Some(index) = (start..n).find(|&i| !product.coeffs[i].is_zero()) {
            return Err(SeriesError::NotPolynomialWithinPrecision { index });
        }
        Ok(TPolynomial::new(product.coeffs))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_t_terms(f, &self.coeffs)?;
        write!(f, " + O(t^{})", self.precision())
    }
}

/// Polynomial in `t` with ring-element coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPolynomial {
    coeffs: Vec<RingElement>,
}

impl TPolynomial {
    pub fn new(mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(RingElement::is_zero) {
            coeffs.pop();
        }
        TPolynomial { coeffs }
    }

    pub fn one() -> Self {
        TPolynomial::new(vec![RingElement::one()])
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of `t^m`; zero past the degree.
    pub fn coeff(&self, m: usize) -> RingElement {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_series(&self, precision: usize) -> Result<TruncatedSeries, SeriesError> {
        TruncatedSeries::from_coeffs(self.coeffs.iter().take(precision).cloned().collect(), precision)
    }

    pub fn count_specialize(&self, q: u64, assign: &CountAssignment) -> Result<Vec<BigInt>, RingError> {
        self.coeffs.iter().map(|c| c.count_specialize(q, assign)).collect()
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_t_terms(f, &self.coeffs)
    }
}

/// `c0 + c1*t + (c2a + c2b)*t^2 ...`: multi-term coefficients of positive
/// powers are parenthesized, unit coefficients elided, and a leading minus
/// sign joins with ` - `.
fn write_t_terms(f: &mut fmt::Formatter<'_>, coeffs: &[RingElement]) -> fmt::Result {
    let mut first = true;
    for (m, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = match m {
            0 => String::new(),
            1 => "t".to_owned(),
            _ => format!("t^{m}"),
        };
        let text = c.to_string();
        let term = if m == 0 {
            text
        } else if c.num_terms() > 1 {
            format!("({text})*{power}")
        } else if text == "1" {
            power
        } else if text == "-1" {
            format!("-{power}")
        } else {
            format!("{text}*{power}")
        };
        match (first, term.strip_prefix('-')) {
            (true, _) => f.write_str(&term)?,
            (false, Some(rest)) => write!(f, " - {rest}")?,
            (false, None) => write!(f, " + {term}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// The factor `(1 - L^l_exp t^t_exp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenominatorFactor {
    pub l_exp: u32,
    pub t_exp: u32,
}

impl DenominatorFactor {
    pub fn new(l_exp: u32, t_exp: u32) -> Result<Self, SeriesError> {
        if t_exp == 0 {
            return Err(SeriesError::InvalidFactor);
        }
        Ok(DenominatorFactor { l_exp, t_exp })
    }

    /// As a polynomial in `t`.
    pub fn to_polynomial(self) -> TPolynomial {
        let mut coeffs = vec![RingElement::zero(); self.t_exp as usize + 1];
        coeffs[0] = RingElement::one();
        coeffs[self.t_exp as usize] = -RingElement::lefschetz_power(self.l_exp);
        TPolynomial::new(coeffs)
    }
}

impl fmt::Display for DenominatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.l_exp {
            0 => String::new(),
            1 => "L*".to_owned(),
            a => format!("L^{a}*"),
        };
        match self.t_exp {
            1 => write!(f, "(1 - {l}t)"),
            b => write!(f, "(1 - {l}t^{b})"),
        }
    }
}

/// `numerator(t) / prod (1 - L^a t^b)`, with the denominator kept factored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalForm {
    numerator: TPolynomial,
    denominator: Vec<DenominatorFactor>,
}

impl RationalForm {
    /// The numerator must have constant term `1`, so the form is a unit of
    /// the power-series ring.
    pub fn new(numerator: TPolynomial, denominator: Vec<DenominatorFactor>) -> Result<Self, SeriesError> {
        if !numerator.coeff(0).is_one() {
            return Err(SeriesError::NumeratorConstantTerm(numerator.coeff(0).to_string()));
        }
        if denominator.iter().any(|f| f.t_exp == 0) {
            return Err(SeriesError::InvalidFactor);
        }
        Ok(RationalForm { numerator, denominator })
    }

    pub fn numerator(&self) -> &TPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[DenominatorFactor] {
        &self.denominator
    }

    /// Sum of the `t`-degrees of the denominator factors.
    pub fn denominator_degree(&self) -> usize {
        self.denominator.iter().map(|f| f.t_exp as usize).sum()
    }

    /// Exact expansion to precision `n`, dividing factor by factor.
    pub fn expand(&self, n: usize) -> Result<TruncatedSeries, SeriesError> {
        let mut s = self.numerator.to_series(n)?;
        for &f in &self.denominator {
            s = s.div_factor(f);
        }
        Ok(s)
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [", self.numerator)?;
        for (i, d) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    fn series(cs: &[&str], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(cs.iter().map(|c| el(c)).collect(), n).unwrap()
    }

    fn fac(a: u32, b: u32) -> DenominatorFactor {
        DenominatorFactor::new(a, b).unwrap()
    }

    // Naive Cauchy product over explicit index pairs, independent of
    // TruncatedSeries::mul.
    fn cauchy_oracle(f: &[RingElement], g: &[RingElement], n: usize) -> Vec<RingElement> {
        (0..n)
            .map(|m| {
                (0..=m)
                    .filter(|&i| i < f.len() && m - i < g.len())
                    .map(|i| &f[i] * &g[m - i])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn arithmetic_examples() {
        let prod = series(&["1", "1"], 3).mul(&series(&["1", "-1"], 3));
        assert_eq!(prod.coeffs(), &[el("1"), el("0"), el("-1")]);

        let g = TruncatedSeries::geometric(&RingElement::one(), 3)
            .unwrap()
            .mul(&TruncatedSeries::geometric(&RingElement::lefschetz(), 3).unwrap());
        assert_eq!(g.coeffs(), &[el("1"), el("1+L"), el("1+L+L^2")]);

        let f = series(&["1", "X", "L^2"], 5);
        assert_eq!(f.add(&TruncatedSeries::zero(5).unwrap()), f);
    }

    #[test]
    fn precision_is_min_of_operands() {
        let a = series(&["1", "1"], 3);
        let b = series(&["1"], 5);
        assert_eq!(a.mul(&b).precision(), 3);
        assert_eq!(b.add(&a).precision(), 3);
    }

    #[test]
    fn inverse_examples() {
        let inv = series(&["1", "-1"], 6).inverse().unwrap();
        assert!(inv.coeffs().iter().all(RingElement::is_one));

        let f = series(&["1", "-L"], 10);
        let inv = f.inverse().unwrap();
        for (m, c) in inv.coeffs().iter().enumerate() {
            assert_eq!(*c, RingElement::lefschetz_power(m as u32));
        }
        let check = cauchy_oracle(f.coeffs(), inv.coeffs(), 10);
        assert_eq!(check[0], RingElement::one());
        assert!(check[1..].iter().all(RingElement::is_zero));

        assert!(matches!(
            series(&["2", "1"], 4).inverse(),
            Err(SeriesError::NonUnitConstantTerm(_))
        ));
        assert!(series(&["-1", "X"], 4).inverse().is_ok());
    }

    #[test]
    fn expand_examples() {
        let one = TPolynomial::one();
        let r = RationalForm::new(one.clone(), vec![fac(0, 1)]).unwrap();
        assert!(r.expand(4).unwrap().coeffs().iter().all(RingElement::is_one));

        let r = RationalForm::new(one, vec![fac(0, 1), fac(1, 1)]).unwrap();
        assert_eq!(
            r.expand(4).unwrap().coeffs(),
            &[el("1"), el("1+L"), el("1+L+L^2"), el("1+L+L^2+L^3")]
        );

        // hand recursion c_{m+2} = P_m + L^2 c_m with P_{-1} = X, P_0 = 1 + L
        let num = TPolynomial::new(vec![el("1"), el("X"), el("L")]);
        let r = RationalForm::new(num, vec![fac(0, 2), fac(2, 2)]).unwrap();
        let s = r.expand(4).unwrap();
        assert_eq!(s.coeff(1), &el("X"));
        assert_eq!(s.coeff(2), &el("1+L+L^2"));
        assert_eq!(s.coeff(3), &el("X*(1+L^2)"));
    }

    #[test]
    fn clear_denominator_examples() {
        let r = RationalForm::new(TPolynomial::one(), vec![fac(0, 1), fac(1, 1)]).unwrap();
        let p = r.expand(8).unwrap().clear_denominator(r.denominator()).unwrap();
        assert_eq!(p, TPolynomial::one());
        assert_eq!(p.degree(), Some(0));

        let ones = TruncatedSeries::geometric(&RingElement::one(), 8).unwrap();
        assert_eq!(ones.clear_denominator(&[fac(0, 1)]).unwrap(), TPolynomial::one());
        assert_eq!(
            ones.clear_denominator(&[fac(1, 1)]),
            Err(SeriesError::NotPolynomialWithinPrecision { index: 7 })
        );
    }

    #[test]
    fn clear_reports_first_offending_index() {
        // (1 + t + t^2 + t^3 + t^4) * (1 - t) = 1 - t^5; with N = 7 and a
        // two-wide window the offending coefficient is t^5.
        let f = series(&["1", "1", "1", "1", "1"], 7);
        assert_eq!(
            f.clear_denominator(&[fac(0, 2)]),
            Err(SeriesError::NotPolynomialWithinPrecision { index: 5 })
        );
    }

    #[test]
    fn factor_validation() {
        assert_eq!(DenominatorFactor::new(1, 0), Err(SeriesError::InvalidFactor));
        assert!(matches!(
            RationalForm::new(TPolynomial::new(vec![el("2")]), vec![]),
            Err(SeriesError::NumeratorConstantTerm(_))
        ));
        assert_eq!(TruncatedSeries::zero(0), Err(SeriesError::ZeroPrecision));
    }

    #[test]
    fn display() {
        let r = RationalForm::new(
            TPolynomial::new(vec![el("1"), el("X"), el("L")]),
            vec![fac(0, 2), fac(2, 2)],
        )
        .unwrap();
        assert_eq!(r.to_string(), "[1 + X*t + L*t^2] / [(1 - t^2)*(1 - L^2*t^2)]");
        let p = TPolynomial::new(vec![el("1"), el("Pic0 - 1 - L"), el("-1"), el("0"), el("-3*L")]);
        assert_eq!(p.to_string(), "1 + (-1 - L + Pic0)*t - t^2 - 3*L*t^4");
        assert_eq!(TPolynomial::one().to_string(), "1");
        assert_eq!(TPolynomial::new(vec![]).to_string(), "0");
        let s = TruncatedSeries::new(vec![el("0"), el("1")]).unwrap();
        assert_eq!(s.to_string(), "t + O(t^2)");
    }
}
