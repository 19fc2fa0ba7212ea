//! Weil L-polynomials from point counts, and the check that a symbolic
//! zeta function specializes to the Weil zeta function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use super::OracleError;
use crate::ring::{is_prime_power, CountAssignment};
use crate::series::RationalForm;

/// Field size, genus and `P(t) = p_0 + ... + p_{2g} t^{2g}` with
/// `zeta = P(t) / ((1 - t)(1 - q t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaProfile {
    q: u64,
    genus: u32,
    lpoly: Vec<BigInt>,
}

impl ZetaProfile {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn lpoly(&self) -> &[BigInt] {
        &self.lpoly
    }

    /// `P(1)`, the order of `Pic^0(C)(F_q)`.
    pub fn pic0_order(&self) -> BigInt {
        self.lpoly.iter().sum()
    }

    /// `b_0, ..., b_{n-1}`: the expansion of `P(t) / ((1 - t)(1 - q t))`.
    pub fn divisor_counts(&self, n: usize) -> Vec<BigInt> {
        let q = BigInt::from(self.q);
        let mut s: Vec<BigInt> = (0..n).map(|i| self.lpoly.get(i).cloned().unwrap_or_default()).collect();
        for i in 1..n {
            let prev = s[i - 1].clone();
            s[i] += prev;
        }
        for i in 1..n {
            let prev = &s[i - 1] * &q;
            s[i] += prev;
        }
        s
    }

    /// `N_1, ..., N_len` predicted by the profile.
    pub fn point_counts(&self, len: usize) -> Vec<BigInt> {
        let b = self.divisor_counts(len + 1);
        let mut counts: Vec<BigInt> = Vec::with_capacity(len);
        for n in 1..=len {
            let mut v = BigInt::from(n) * &b[n];
            for m in 1..n {
                v -= &counts[m - 1] * &b[n - m];
            }
            counts.push(v);
        }
        counts
    }
}

/// `(N - q^m - 1)^2 <= 4 g^2 q^m`, in exact integers.
fn within_weil_bound(n: &BigInt, q: u64, m: u32, g: u32) -> bool {
    let qm: BigInt = Pow::pow(BigInt::from(q), m);
    let dev = n - &qm - BigInt::one();
    &dev * &dev <= BigInt::from(4u64 * g as u64 * g as u64) * qm
}

/// Extracts `P(t)` from `N_1, ..., N_{2g}` (more counts are checked against
/// the result).
///
/// Checks, in order: the Weil bound on every count (before the number of
/// counts, so a single bad count is always reported), integrality of
/// `(1 - t)(1 - q t) exp(sum N_m t^m / m)`, the functional equation
/// `p_{2g-i} = q^{g-i} p_i`, and agreement of any surplus counts.
pub fn weil_zeta_from_counts(counts: &[BigInt], q: u64, genus: u32) -> Result<ZetaProfile, OracleError> {
    if !is_prime_power(q) {
        return Err(OracleError::NotPrimePower(q));
    }
    for (i, n) in counts.iter().enumerate() {
        if !within_weil_bound(n, q, i as u32 + 1, genus) {
            return Err(OracleError::WeilBoundViolated { m: i + 1 });
        }
    }
    let two_g = 2 * genus as usize;
    let needed = two_g.max(1);
    if counts.len() < needed {
        return Err(OracleError::InsufficientCounts {
            needed,
            got: counts.len(),
        });
    }

    // zeta coefficients over Q up to t^{2g}
    let mut zeta: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=two_g {
        let sum: BigRational = (1..=n)
            .map(|m| BigRational::from_integer(counts[m - 1].clone()) * &zeta[n - m])
            .sum();
        zeta.push(sum / BigRational::from_integer(n.into()));
    }
    let qr = BigRational::from_integer(q.into());
    let one_plus_q = BigRational::from_integer((q + 1).into());
    let mut lpoly = Vec::with_capacity(two_g + 1);
    for i in 0..=two_g {
        let mut c = zeta[i].clone();
        if i >= 1 {
            c -= &one_plus_q * &zeta[i - 1];
        }
        if i >= 2 {
            c += &qr * &zeta[i - 2];
        }
        if !c.is_integer() {
            return Err(OracleError::NotIntegral { index: i });
        }
        lpoly.push(c.to_integer());
    }

    for i in 0..=genus as usize {
        let expected: BigInt = Pow::pow(BigInt::from(q), genus - i as u32) * &lpoly[i];
        if lpoly[two_g - i] != expected {
            return Err(OracleError::FunctionalEquationViolated { index: two_g - i });
        }
    }

    let profile = ZetaProfile { q, genus, lpoly };
    if counts.len() > two_g {
        let predicted = profile.point_counts(counts.len());
        if let Some(i) = (two_g..counts.len()).find(|&i| predicted[i] != counts[i]) {
            return Err(OracleError::InconsistentCounts { index: i + 1 });
        }
    }
    Ok(profile)
}

/// `P(1)`, the class number.
pub fn pic0_order(profile: &ZetaProfile) -> BigInt {
    profile.pic0_order()
}

/// Outcome of comparing a specialized symbolic zeta function with the
/// Weil zeta function of a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_coefficients: usize,
    pub symbolic: Vec<BigInt>,
    pub oracle: Vec<BigInt>,
    /// Index of the first disagreeing coefficient, if any.
    pub first_mismatch: Option<usize>,
}

impl VerificationReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn verdict(&self) -> &'static str {
        if self.agrees() {
            "agree"
        } else {
            "mismatch"
        }
    }
}

/// Expands `form` to precision `n`, applies the counting specialization
/// (`L -> q`, symbols via `assign`) and compares with the expansion of
/// `P(t) / ((1 - t)(1 - q t))`.
pub fn verify_specialization(
    form: &RationalForm,
    assign: &CountAssignment,
    q: u64,
    profile: &ZetaProfile,
    n: usize,
) -> Result<VerificationReport, OracleError> {
    if q != profile.q {
        return Err(OracleError::FieldMismatch {
            form: q,
            profile: profile.q,
        });
    }
    let symbolic = form.expand(n)?.count_specialize(q, assign)?;
    let oracle = profile.divisor_counts(n);
    let first_mismatch = symbolic.iter().zip(&oracle).position(|(a, b)| a != b);
    Ok(VerificationReport {
        checked_coefficients: n,
        symbolic,
        oracle,
        first_mismatch,
    })
}
