//! End-to-end checks of a curve model: enumerate points, extract the Weil
//! zeta function, build the symbolic zeta function from symbols standing for
//! `[Sym^m C]` and `[Pic^0 C]`, and compare under the counting map.

use num_bigint::BigInt;
use num_traits::Zero;

use super::counting::{closed_point_counts, divisor_counts_from_point_counts, effective_divisor_series, to_big};
use super::curve::CurveModel;
use super::weil::{verify_specialization, weil_zeta_from_counts, VerificationReport, ZetaProfile};
use super::OracleError;
use crate::ring::{CountAssignment, RingElement, Symbol};
use crate::zeta::{
    zeta_pointed_curve, zeta_pointless_curve, CurveZeta, PointedCurveData, PointlessCurveData, MAX_CYCLE_DEGREE,
};

/// Symbol standing for `[Sym^m C]`.
pub fn sym_symbol(m: usize) -> Symbol {
    Symbol::new(format!("Sym{m}")).expect("valid identifier")
}

/// Symbol standing for `[Pic^0 C]`.
pub fn pic0_symbol() -> Symbol {
    Symbol::new("Pic0").expect("valid identifier")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelVerification {
    /// `N_1, ..., N_k` obtained by enumeration.
    pub enumerated: Vec<u64>,
    pub profile: ZetaProfile,
    /// Closed-point counts `a_1, a_2, ...`.
    pub closed_points: Vec<BigInt>,
    /// `b_0, ..., b_{N-1}` from the product over closed points.
    pub divisors_by_product: Vec<BigInt>,
    /// `b_0, ..., b_{N-1}` from `exp(sum N_m t^m / m)`.
    pub divisors_by_exp: Vec<BigInt>,
    /// Degree of the rational effective 0-cycle used; `1` for the pointed
    /// construction.
    pub cycle_degree: u32,
    pub zeta: CurveZeta,
    pub assignment: CountAssignment,
    pub report: VerificationReport,
}

impl ModelVerification {
    pub fn routes_agree(&self) -> bool {
        self.divisors_by_product == self.divisors_by_exp
    }

    pub fn agrees(&self) -> bool {
        self.routes_agree() && self.report.agrees()
    }
}

/// Enumerates `N_1, ..., N_k` for every `k` whose work fits the budget,
/// requiring at least `needed` of them.
fn enumerate_counts(model: &CurveModel, needed: usize, limit: usize, budget: u64) -> Result<Vec<u64>, OracleError> {
    let mut counts = Vec::new();
    for m in 1..=limit.max(needed) as u32 {
        let affordable = model.enumeration_work(m).is_some_and(|w| w <= budget);
        if !affordable && counts.len() >= needed {
            break;
        }
        counts.push(model.count_points(m, budget)?);
    }
    Ok(counts)
}

/// Runs the full pipeline with `precision` checked coefficients.
///
/// The curve is treated as pointed when it has a rational point, and
/// otherwise through the least degree `n` of a closed point.
pub fn verify_model(model: &CurveModel, precision: usize, budget: u64) -> Result<ModelVerification, OracleError> {
    let genus = model.genus();
    let q = model.q();
    let needed = (2 * genus as usize).max(1);
    // two surplus counts, when affordable, cross-check the extracted profile
    let enumerated = enumerate_counts(model, needed, precision.saturating_sub(1).min(needed + 2), budget)?;
    let profile = weil_zeta_from_counts(&to_big(&enumerated), q, genus)?;

    // the least closed-point degree is at most 2g + 1 for a curve over a
    // finite field, so this many counts always reveals it
    let probe = profile.point_counts(needed + 2);
    let probe_points = closed_point_counts(&probe)?;
    let cycle_degree = probe_points
        .iter()
        .position(|a| !a.is_zero())
        .map(|i| i as u32 + 1)
        .ok_or(OracleError::InconsistentCounts { index: probe.len() })?;
    if cycle_degree > MAX_CYCLE_DEGREE {
        return Err(crate::zeta::ZetaError::CapExceeded {
            what: "cycle degree",
            value: cycle_degree as usize,
            cap: MAX_CYCLE_DEGREE as usize,
        }
        .into());
    }

    let n = cycle_degree as usize;
    let g = genus as usize;
    let sym_count = if n == 1 {
        (2 * g).saturating_sub(1)
    } else {
        2 * g + 2 * n - 1
    };
    let required = if n == 1 { 2 * g + 3 } else { 2 * g + 4 * n - 1 };
    let len = precision.max(required).max(sym_count);

    let counts = profile.point_counts(len.saturating_sub(1));
    let closed_points = closed_point_counts(&counts)?;
    let divisors_by_product = effective_divisor_series(&closed_points, len);
    let divisors_by_exp = divisor_counts_from_point_counts(&counts)?;

    let mut assignment = CountAssignment::new();
    let sym_classes: Vec<RingElement> = (0..sym_count)
        .map(|m| {
            if m == 0 {
                return RingElement::one();
            }
            let s = sym_symbol(m);
            assignment.insert(s.clone(), divisors_by_product[m].clone());
            RingElement::from_symbol(s)
        })
        .collect();
    let zeta = if n == 1 {
        let pic0 = pic0_symbol();
        let pic0_class = if genus == 0 {
            RingElement::one()
        } else {
            assignment.insert(pic0.clone(), profile.pic0_order());
            RingElement::from_symbol(pic0)
        };
        let data = PointedCurveData::new(genus, sym_classes, pic0_class)?;
        zeta_pointed_curve(&data, len)?
    } else {
        let data = PointlessCurveData::new(genus, cycle_degree, sym_classes)?;
        zeta_pointless_curve(&data, len)?
    };
    let report = verify_specialization(&zeta.form, &assignment, q, &profile, precision)?;
    Ok(ModelVerification {
        enumerated,
        profile,
        closed_points,
        divisors_by_product,
        divisors_by_exp,
        cycle_degree,
        zeta,
        assignment,
        report,
    })
}

/// Comparison of `zeta_{C - x} / (1 - t)` with `zeta_C`, both from
/// enumerated counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScissorReport {
    pub counts: Vec<u64>,
    pub complement_counts: Vec<u64>,
    pub whole: Vec<BigInt>,
    pub glued: Vec<BigInt>,
}

impl ScissorReport {
    pub fn holds(&self) -> bool {
        self.whole == self.glued
    }
}

/// Counts `C` and `C - {point}` separately over `F_{q^m}` for
/// `m = 1..=len` and checks `zeta_{C - x}(t) / (1 - t) = zeta_C(t)` through
/// `t^len`.
pub fn scissor_check(
    model: &CurveModel,
    point: [u32; 3],
    len: usize,
    budget: u64,
) -> Result<ScissorReport, OracleError> {
    let counts = model.point_counts(len as u32, budget)?;
    let complement_counts = (1..=len as u32)
        .map(|m| model.count_points_excluding(m, point, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let whole = divisor_counts_from_point_counts(&to_big(&counts))?;
    let open = divisor_counts_from_point_counts(&to_big(&complement_counts))?;
    let glued = open
        .iter()
        .scan(BigInt::zero(), |acc, b| {
            *acc += b;
            Some(acc.clone())
        })
        .collect();
    Ok(ScissorReport {
        counts,
        complement_counts,
        whole,
        glued,
    })
}
