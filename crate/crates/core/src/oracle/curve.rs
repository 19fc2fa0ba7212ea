//! Curve models over small finite fields and exhaustive point counting.

use rayon::prelude::*;

use super::field::{FiniteField, MAX_BASE_FIELD, MAX_EXTENSION_FIELD};
use super::OracleError;

/// Default enumeration cap: `q^{2m}` evaluations for plane models and
/// `q^m` for hyperelliptic ones.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Plane,
    Hyperelliptic,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Plane => "plane",
            CurveKind::Hyperelliptic => "hyperelliptic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    /// Homogeneous `F(x, y, z) = sum c x^a y^b z^c`; smoothness is assumed.
    Plane { terms: Vec<(u32, [u32; 3])>, degree: u32 },
    /// `y^2 = f(x)` with squarefree `f` of odd degree, one point at infinity.
    Hyperelliptic { f: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    field: FiniteField,
    shape: Shape,
}

/// Decodes an integer coefficient: reduced mod `p` over a prime field, and
/// read as an element encoding (negative values negated) otherwise.
fn decode(field: &FiniteField, c: i64) -> Result<u32, OracleError> {
    if field.degree() == 1 {
        return Ok(field.from_int(c));
    }
    let mag = c.unsigned_abs();
    if mag >= field.order() as u64 {
        return Err(OracleError::CoefficientOutOfRange(c));
    }
    let v = mag as u32;
    Ok(if c < 0 { field.neg(v) } else { v })
}

fn check_base(field: &FiniteField) -> Result<(), OracleError> {
    if field.order() as u64 > MAX_BASE_FIELD {
        return Err(OracleError::FieldTooLarge {
            p: field.characteristic() as u64,
            e: field.degree(),
            cap: MAX_BASE_FIELD,
        });
    }
    Ok(())
}

impl CurveModel {
    /// Plane projective curve `F(x, y, z) = 0` from `(coefficient, [a, b, c])`
    /// pairs. Repeated exponents are merged and zero terms dropped.
    pub fn plane(field: FiniteField, terms: &[(i64, [u32; 3])]) -> Result<Self, OracleError> {
        check_base(&field)?;
        let mut merged: Vec<(u32, [u32; 3])> = Vec::new();
        for &(c, exps) in terms {
            let c = decode(&field, c)?;
            match merged.iter_mut().find(|(_, e)| *e == exps) {
                Some(slot) => slot.0 = field.add(slot.0, c),
                None => merged.push((c, exps)),
            }
        }
        merged.retain(|&(c, _)| c != 0);
        let first = merged.first().ok_or(OracleError::ZeroPolynomial)?;
        let degree: u32 = first.1.iter().sum();
        if merged.iter().any(|(_, e)| e.iter().sum::<u32>() != degree) {
            return Err(OracleError::NotHomogeneous);
        }
        if degree == 0 {
            return Err(OracleError::ZeroPolynomial);
        }
        Ok(CurveModel {
            field,
            shape: Shape::Plane { terms: merged, degree },
        })
    }

    /// `y^2 = f(x)`, `f` given low-to-high. Requires odd characteristic and
    /// squarefree `f` of odd degree.
    pub fn hyperelliptic(field: FiniteField, f: &[i64]) -> Result<Self, OracleError> {
        check_base(&field)?;
        if field.characteristic() == 2 {
            return Err(OracleError::CharacteristicTwo);
        }
        let mut coeffs = f.iter().map(|&c| decode(&field, c)).collect::<Result<Vec<_>, _>>()?;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(OracleError::ZeroPolynomial);
        }
        let deg = coeffs.len() - 1;
        if deg % 2 == 0 {
            return Err(OracleError::EvenDegree(deg as u32));
        }
        if !is_squarefree(&field, &coeffs) {
            return Err(OracleError::NotSquarefree);
        }
        Ok(CurveModel {
            field,
            shape: Shape::Hyperelliptic { f: coeffs },
        })
    }

    /// Fails with `GenusMismatch` unless the degree formula gives `genus`.
    pub fn with_declared_genus(self, genus: u32) -> Result<Self, OracleError> {
        let computed = self.genus();
        if computed != genus {
            return Err(OracleError::GenusMismatch {
                declared: genus,
                computed,
            });
        }
        Ok(self)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn kind(&self) -> CurveKind {
        match self.shape {
            Shape::Plane { .. } => CurveKind::Plane,
            Shape::Hyperelliptic { .. } => CurveKind::Hyperelliptic,
        }
    }

    /// `(d-1)(d-2)/2` for plane curves of degree `d`; `(deg f - 1)/2` for
    /// hyperelliptic ones.
    pub fn genus(&self) -> u32 {
        match &self.shape {
            Shape::Plane { degree, .. } => (degree - 1) * (degree.saturating_sub(2)) / 2,
            Shape::Hyperelliptic { f } => (f.len() as u32 - 2) / 2,
        }
    }

    /// Whether the projective point `[x : y : z]` (base-field encodings) lies
    /// on the curve. Hyperelliptic points use `z = 0` for the point at infinity.
    pub fn contains(&self, point: [u32; 3]) -> bool {
        let f = &self.field;
        match &self.shape {
            Shape::Plane { terms, .. } => eval_plane(f, terms, point) == 0,
            Shape::Hyperelliptic { f: poly } => {
                let [x, y, z] = point;
                if z == 0 {
                    return x == 0 && y != 0;
                }
                let zi = f.inv(z).expect("z nonzero");
                let (x, y) = (f.mul(x, zi), f.mul(y, zi));
                f.mul(y, y) == f.eval_poly(poly, x)
            }
        }
    }

    /// The `F_q`-rational points in normalized coordinates.
    pub fn rational_points(&self) -> Vec<[u32; 3]> {
        projective_plane(&self.field).filter(|&pt| self.contains(pt)).collect()
    }

    /// Evaluations needed to count `F_{q^m}`-points.
    pub fn enumeration_work(&self, m: u32) -> Option<u64> {
        let size = (self.q() as u128).checked_pow(m)?;
        let work = match self.shape {
            Shape::Plane { .. } => size * size,
            Shape::Hyperelliptic { .. } => size,
        };
        u64::try_from(work).ok()
    }

    fn extension(&self, m: u32, budget: u64) -> Result<(FiniteField, Vec<u32>), OracleError> {
        if m == 0 {
            return Err(OracleError::InvalidExtensionDegree(0));
        }
        let work = self.enumeration_work(m);
        if work.is_none_or(|w| w > budget) {
            return Err(OracleError::BudgetExceeded { m, budget });
        }
        let big = FiniteField::with_cap(
            self.field.characteristic(),
            self.field.degree() * m,
            MAX_EXTENSION_FIELD,
        )?;
        let img = self.field.embedding_into(&big)?;
        Ok((big, img))
    }

    /// `N_m = #C(F_{q^m})` by exhaustive enumeration.
    pub fn count_points(&self, m: u32, budget: u64) -> Result<u64, OracleError> {
        let (big, img) = self.extension(m, budget)?;
        let q = big.order();
        Ok(match &self.shape {
            Shape::Plane { terms, .. } => {
                let terms: Vec<(u32, [u32; 3])> = terms.iter().map(|&(c, e)| (img[c as usize], e)).collect();
                let affine: u64 = count_affine_plane(&big, &terms);
                let at_infinity = (0..q)
                    .map(|x| [x, 1, 0])
                    .chain(std::iter::once([1, 0, 0]))
                    .filter(|&pt| eval_plane(&big, &terms, pt) == 0)
                    .count() as u64;
                affine + at_infinity
            }
            Shape::Hyperelliptic { f } => {
                let f: Vec<u32> = f.iter().map(|&c| img[c as usize]).collect();
                1 + count_affine_hyperelliptic(&big, &f)
            }
        })
    }

    /// Points of the affine chart `z = 1` (plane) or `y^2 = f(x)`
    /// (hyperelliptic) over `F_{q^m}`.
    pub fn count_affine_points(&self, m: u32, budget: u64) -> Result<u64, OracleError> {
        let (big, img) = self.extension(m, budget)?;
        Ok(match &self.shape {
            Shape::Plane { terms, .. } => {
                let terms: Vec<(u32, [u32; 3])> = terms.iter().map(|&(c, e)| (img[c as usize], e)).collect();
                count_affine_plane(&big, &terms)
            }
            Shape::Hyperelliptic { f } => {
                let f: Vec<u32> = f.iter().map(|&c| img[c as usize]).collect();
                count_affine_hyperelliptic(&big, &f)
            }
        })
    }

    /// Points of `C` over `F_{q^m}` other than the rational point `point`,
    /// by enumerating all of `P^2(F_{q^m})`. Costs `q^{2m}` evaluations for
    /// either kind of model.
    pub fn count_points_excluding(&self, m: u32, point: [u32; 3], budget: u64) -> Result<u64, OracleError> {
        let valid = point != [0, 0, 0] && point.iter().all(|&c| c < self.field.order());
        if !valid || !self.contains(point) {
            return Err(OracleError::PointNotOnCurve(point));
        }
        let size = (self.q() as u128).checked_pow(m);
        if size.and_then(|s| u64::try_from(s * s).ok()).is_none_or(|w| w > budget) {
            return Err(OracleError::BudgetExceeded { m, budget });
        }
        let (big, img) = self.extension(m, u64::MAX)?;
        let excluded = normalize(&big, point.map(|c| img[c as usize]));
        let image = CurveModel {
            field: big.clone(),
            shape: match &self.shape {
                Shape::Plane { terms, degree } => Shape::Plane {
                    terms: terms.iter().map(|&(c, e)| (img[c as usize], e)).collect(),
                    degree: *degree,
                },
                Shape::Hyperelliptic { f } => Shape::Hyperelliptic {
                    f: f.iter().map(|&c| img[c as usize]).collect(),
                },
            },
        };
        let q = big.order();
        let affine: u64 = (0..q)
            .into_par_iter()
            .map(|x| {
                (0..q)
                    .filter(|&y| [x, y, 1] != excluded && image.contains([x, y, 1]))
                    .count() as u64
            })
            .sum();
        let at_infinity = (0..q)
            .map(|x| [x, 1, 0])
            .chain(std::iter::once([1, 0, 0]))
            .filter(|&pt| pt != excluded && image.contains(pt))
            .count() as u64;
        Ok(affine + at_infinity)
    }

    /// `N_1, ..., N_len`.
    pub fn point_counts(&self, len: u32, budget: u64) -> Result<Vec<u64>, OracleError> {
        (1..=len).map(|m| self.count_points(m, budget)).collect()
    }
}

/// Scales a projective point to the form `[x, y, 1]`, `[x, 1, 0]` or `[1, 0, 0]`.
fn normalize(field: &FiniteField, [x, y, z]: [u32; 3]) -> [u32; 3] {
    let pivot = if z != 0 {
        z
    } else if y != 0 {
        y
    } else {
        x
    };
    let inv = field.inv(pivot).expect("nonzero point");
    [field.mul(x, inv), field.mul(y, inv), field.mul(z, inv)]
}

fn projective_plane(field: &FiniteField) -> impl Iterator<Item = [u32; 3]> + '_ {
    let q = field.order();
    (0..q)
        .flat_map(move |x| (0..q).map(move |y| [x, y, 1]))
        .chain((0..q).map(|x| [x, 1, 0]))
        .chain(std::iter::once([1, 0, 0]))
}

fn eval_plane(field: &FiniteField, terms: &[(u32, [u32; 3])], [x, y, z]: [u32; 3]) -> u32 {
    terms.iter().fold(0, |acc, &(c, [a, b, e])| {
        let t = field.mul(
            field.mul(c, field.pow(x, a as u64)),
            field.mul(field.pow(y, b as u64), field.pow(z, e as u64)),
        );
        field.add(acc, t)
    })
}

fn count_affine_plane(field: &FiniteField, terms: &[(u32, [u32; 3])]) -> u64 {
    let q = field.order();
    (0..q)
        .into_par_iter()
        .map(|x| (0..q).filter(|&y| eval_plane(field, terms, [x, y, 1]) == 0).count() as u64)
        .sum()
}

fn count_affine_hyperelliptic(field: &FiniteField, f: &[u32]) -> u64 {
    (0..field.order())
        .into_par_iter()
        .map(|x| (1 + field.quadratic_character(field.eval_poly(f, x))) as u64)
        .sum()
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(field: &FiniteField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = field.inv(m[dm]).expect("trimmed divisor");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = field.mul(r[top], lead_inv);
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            r[idx] = field.sub(r[idx], field.mul(c, mj));
        }
        r = poly_trim(r);
    }
    r
}

fn is_squarefree(field: &FiniteField, f: &[u32]) -> bool {
    let derivative: Vec<u32> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
        .collect();
    let derivative = poly_trim(derivative);
    if derivative.is_empty() {
        // f is a p-th power of a polynomial in x^p; only constants are squarefree
        return f.len() <= 1;
    }
    let (mut a, mut b) = (f.to_vec(), derivative);
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}
