//! Closed points and effective divisors from point counts.
//!
//! With `N_m = #C(F_{q^m})` and `a_d` the number of closed points of degree
//! `d`, `N_m = sum_{d | m} d a_d`. The number `b_n` of effective divisors of
//! degree `n` is the `t^n` coefficient of `prod_d (1 - t^d)^{-a_d}`, which
//! equals `exp(sum N_m t^m / m)`. Both routes are implemented separately.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::OracleError;

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `a_d = (1/d) sum_{e | d} mu(d/e) N_e` for `d = 1..=B`.
pub fn closed_point_counts(counts: &[BigInt]) -> Result<Vec<BigInt>, OracleError> {
    (1..=counts.len() as u64)
        .map(|d| {
            let sum: BigInt = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| mobius(d / e) * &counts[e as usize - 1])
                .sum();
            let (quot, rem) = sum.div_rem(&BigInt::from(d));
            if quot.is_negative() || !rem.is_zero() {
                return Err(OracleError::InconsistentCounts { index: d as usize });
            }
            Ok(quot)
        })
        .collect()
}

/// `b_0, ..., b_len-1` from closed-point counts by multiplying the factors
/// `(1 - t^d)^{-a_d}`. Degrees past `a.len()` are taken to carry no closed
/// points, so `b_n` is exact for a curve only when `n <= a.len()`.
pub fn effective_divisor_series(a: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); len];
    if len == 0 {
        return b;
    }
    b[0] = BigInt::one();
    for (i, count) in a.iter().enumerate() {
        let d = i + 1;
        if count.is_zero() || d >= len {
            continue;
        }
        // (1 - t^d)^{-a}: coefficient of t^{dk} is C(a + k - 1, k)
        let mut factor = vec![BigInt::zero(); len];
        let mut binom = BigInt::one();
        let mut k = 0usize;
        while d * k < len {
            factor[d * k] = binom.clone();
            k += 1;
            binom = binom * (count + BigInt::from(k - 1)) / BigInt::from(k);
        }
        let mut next = vec![BigInt::zero(); len];
        for (x, bx) in b.iter().enumerate() {
            if bx.is_zero() {
                continue;
            }
            for y in (0..len - x).step_by(d) {
                next[x + y] += bx * &factor[y];
            }
        }
        b = next;
    }
    b
}

/// `b_n`, the number of effective divisors of degree `n`.
pub fn effective_divisor_counts(a: &[BigInt], n: usize) -> BigInt {
    effective_divisor_series(a, n + 1).swap_remove(n)
}

/// `b_0, ..., b_B` as the coefficients of `exp(sum N_m t^m / m)`, computed
/// over the rationals through `n b_n = sum_{m=1}^{n} N_m b_{n-m}`.
/// Fails with `NotIntegral` at the first non-integral coefficient.
pub fn divisor_counts_from_point_counts(counts: &[BigInt]) -> Result<Vec<BigInt>, OracleError> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=counts.len() {
        let sum: BigRational = (1..=n)
            .map(|m| BigRational::from_integer(counts[m - 1].clone()) * &b[n - m])
            .sum();
        let bn = sum / BigRational::from_integer(n.into());
        if !bn.is_integer() {
            return Err(OracleError::NotIntegral { index: n });
        }
        b.push(bn);
    }
    Ok(b.into_iter().map(|r| r.to_integer()).collect())
}

/// Point counts of `C` minus one closed point of degree `d`.
pub fn remove_closed_point(counts: &[BigInt], d: usize) -> Result<Vec<BigInt>, OracleError> {
    counts
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let m = i + 1;
            if m % d != 0 {
                return Ok(n.clone());
            }
            let rest = n - BigInt::from(d);
            if rest.is_negative() {
                return Err(OracleError::InconsistentCounts { index: m });
            }
            Ok(rest)
        })
        .collect()
}

/// Converts machine-sized counts.
pub fn to_big(counts: &[u64]) -> Vec<BigInt> {
    counts.iter().map(|&n| BigInt::from(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn closed(xs: &[i64]) -> Result<Vec<BigInt>, OracleError> {
        closed_point_counts(&big(xs))
    }

    #[test]
    fn closed_points_examples() {
        assert_eq!(closed(&[1, 1]).unwrap(), big(&[1, 0]));
        // P^1 over F_3: 3 monic irreducible quadratics
        let irreducible_quadratics = (0..3)
            .flat_map(|b| (0..3).map(move |c| (b, c)))
            .filter(|&(b, c)| (0..3).all(|x| (x * x + b * x + c) % 3 != 0))
            .count() as i64;
        assert_eq!(closed(&[4, 10]).unwrap(), big(&[4, irreducible_quadratics]));
        assert_eq!(closed(&[4, 16]).unwrap(), big(&[4, 6]));
        assert_eq!(closed(&[4, 15]), Err(OracleError::InconsistentCounts { index: 2 }));
        assert_eq!(closed(&[4, 2]), Err(OracleError::InconsistentCounts { index: 2 }));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn divisor_count_examples() {
        for n in 0..8 {
            assert_eq!(effective_divisor_counts(&big(&[1]), n), BigInt::one());
        }
        // C(4 + 1, 2) = 10 pairs of rational points plus 6 degree-2 points
        assert_eq!(effective_divisor_counts(&big(&[4, 6]), 2), BigInt::from(10 + 6));
        assert_eq!(effective_divisor_counts(&big(&[3, 1, 2]), 3), BigInt::from(15));
    }

    #[test]
    fn exp_route_matches_product_route() {
        // P^1 over F_2: N_m = 2^m + 1
        let counts: Vec<BigInt> = (1..=8).map(|m| BigInt::from(2u64.pow(m) + 1)).collect();
        let a = closed_point_counts(&counts).unwrap();
        assert_eq!(&a[..3], &big(&[3, 1, 2])[..]);
        let via_product = effective_divisor_series(&a, 9);
        let via_exp = divisor_counts_from_point_counts(&counts).unwrap();
        assert_eq!(via_product, via_exp);
        assert_eq!(via_exp, big(&[1, 3, 7, 15, 31, 63, 127, 255, 511]));
    }

    #[test]
    fn exp_route_detects_non_integral() {
        assert_eq!(
            divisor_counts_from_point_counts(&big(&[4, 15])),
            Err(OracleError::NotIntegral { index: 2 })
        );
    }

    #[test]
    fn removing_points() {
        assert_eq!(remove_closed_point(&big(&[4, 16, 28]), 1).unwrap(), big(&[3, 15, 27]));
        assert_eq!(
            remove_closed_point(&big(&[4, 16, 28, 64]), 2).unwrap(),
            big(&[4, 14, 28, 62])
        );
        assert!(remove_closed_point(&big(&[0]), 1).is_err());
    }
}
