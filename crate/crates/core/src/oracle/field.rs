//! Small finite fields `F_{p^e}` with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! encoding the residue `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` of a root `a`
//! of the defining modulus. The modulus is the first monic irreducible of
//! degree `e` when its lower coefficients, read as base-`p` digits from low
//! to high, are scanned in increasing integer order. Multiplication goes
//! through discrete log / exponential tables built from a primitive element.

use super::OracleError;

/// Largest base field accepted for curve models.
pub const MAX_BASE_FIELD: u64 = 2048;
/// Largest extension field built for point counting (table size).
pub const MAX_EXTENSION_FIELD: u64 = 1 << 22;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-to-high, length `e + 1`. For `e = 1` this is `x`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// A base field, `p^e <= 2048`.
    pub fn new(p: u32, e: u32) -> Result<Self, OracleError> {
        FiniteField::with_cap(p, e, MAX_BASE_FIELD)
    }

    /// Field of size `p^e` with a caller-chosen size cap, itself capped at
    /// [`MAX_EXTENSION_FIELD`].
    pub fn with_cap(p: u32, e: u32, cap: u64) -> Result<Self, OracleError> {
        if !is_prime(p as u64) {
            return Err(OracleError::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(OracleError::InvalidExtensionDegree(e));
        }
        let cap = cap.min(MAX_EXTENSION_FIELD);
        let q = checked_power(p as u64, e)
            .filter(|&q| q <= cap)
            .ok_or(OracleError::FieldTooLarge { p: p as u64, e, cap })?;
        let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p, e) };
        let mut field = FiniteField {
            p,
            e,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as usize - 1;
        let k = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[k % n]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `1` for nonzero squares, `-1` for non-squares, `0` for zero.
    /// Every element is a square in characteristic 2.
    pub fn quadratic_character(&self, a: u32) -> i32 {
        if a == 0 {
            0
        } else if self.p == 2 || self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Evaluates a polynomial with coefficients in this field (low-to-high).
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Encodings of the images of this field's elements in `target`, an
    /// extension of the same characteristic whose degree is a multiple of
    /// this one's. The generator is sent to a root of this field's modulus.
    pub fn embedding_into(&self, target: &FiniteField) -> Result<Vec<u32>, OracleError> {
        if target.p != self.p || !target.e.is_multiple_of(self.e) {
            return Err(OracleError::InvalidExtensionDegree(target.e));
        }
        if self.e == 1 {
            return Ok((0..self.q).collect());
        }
        let root = target
            .elements()
            .find(|&x| target.eval_poly(&self.modulus, x) == 0)
            .expect("an extension of degree divisible by e contains F_{p^e}");
        Ok(self
            .elements()
            .map(|code| {
                let mut v = code;
                let (mut acc, mut power) = (0, 1);
                while v > 0 {
                    let digit = v % self.p;
                    acc = target.add(acc, target.mul(digit, power));
                    power = target.mul(power, root);
                    v /= self.p;
                }
                acc
            })
            .collect())
    }

    fn build_tables(&mut self) {
        let n = self.q as u64 - 1;
        let factors = distinct_prime_factors(n);
        let generator = (1..self.q)
            .find(|&g| factors.iter().all(|&l| self.slow_pow(g, n / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = self.slow_mul(cur, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, mut v: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push((v % self.p) as u64);
            v /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c as u32)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let prod = poly_mul_mod(&self.digits(a), &self.digits(b), &m, p);
        let mut d = prod;
        d.resize(self.e as usize, 0);
        self.undigits(&d)
    }

    fn slow_pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            k >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && crate::ring::smallest_prime_factor(n) == n
}

fn checked_power(base: u64, e: u32) -> Option<u64> {
    (0..e).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over F_p as low-to-high coefficient vectors.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut k, mut acc) = (a % p, p - 2, 1);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a degree-`e` polynomial is irreducible iff it shares no
/// factor with `x^{p^i} - x` for `1 <= i <= e/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let x = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=e / 2 {
        // power <- power^p mod f
        let mut acc = vec![1];
        let mut base = power.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mul_mod(&acc, &base, f, p);
            }
            base = poly_mul_mod(&base, &base, f, p);
            k >>= 1;
        }
        power = acc;
        let mut diff = power.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let p64 = p as u64;
    let count = p64.pow(e);
    for v in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = v;
        for _ in 0..e {
            f.push(x % p64);
            x /= p64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p64) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.add(6, 3), 2);
        assert_eq!(f.neg(2), 5);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.from_int(-1), 6);
        let squares: Vec<u32> = f.elements().filter(|&a| f.quadratic_character(a) == 1).collect();
        assert_eq!(squares, vec![1, 2, 4]);
    }

    #[test]
    fn moduli_are_lexicographically_smallest() {
        // x^2 + 1 is irreducible over F_3 and is the first monic candidate
        // with nonzero constant term and no root.
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // over F_2: x^2 + x + 1, x^3 + x + 1
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        // over F_5, x^2 + 2 is the first irreducible quadratic (2 is a non-square)
        assert_eq!(FiniteField::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn extension_field_axioms() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = FiniteField::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.pow(a, f.order() as u64), a, "Frobenius fixes F_q");
            }
            // distributivity on a sample
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    for c in f.elements().step_by(7) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            let squares = f.elements().filter(|&a| f.quadratic_character(a) == 1).count();
            if p != 2 {
                assert_eq!(squares as u32, (f.order() - 1) / 2);
            }
        }
    }

    #[test]
    fn embeddings_are_ring_maps() {
        let small = FiniteField::new(2, 2).unwrap();
        let big = FiniteField::with_cap(2, 4, MAX_EXTENSION_FIELD).unwrap();
        let img = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(img[small.mul(a, b) as usize], big.mul(img[a as usize], img[b as usize]));
                assert_eq!(img[small.add(a, b) as usize], big.add(img[a as usize], img[b as usize]));
            }
        }
        let odd = FiniteField::with_cap(2, 3, MAX_EXTENSION_FIELD).unwrap();
        assert!(small.embedding_into(&odd).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), OracleError::NotPrime(4));
        assert!(matches!(FiniteField::new(3, 7), Err(OracleError::FieldTooLarge { .. })));
        assert!(FiniteField::new(2, 11).is_ok());
        assert!(FiniteField::new(2047, 1).is_err());
        assert!(FiniteField::new(2039, 1).is_ok());
    }
}
