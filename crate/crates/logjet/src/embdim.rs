//! The embedding-dimension formula for log jets along an arc, absolute
//! and relative, with a direct Zariski-cotangent oracle on explicit
//! component presentations.
//!
//! The formula combines four ingredients at a jet order `m`: the Betti
//! number `d` and Fitting order of the log differentials restricted
//! along the arc, and the two counts of the characteristic monoid at the
//! jet point (group rank and number of irreducibles). The value is
//!
//! ```text
//! d * (m + 1) + ord Fitt^d - rank + irreducibles + kernel - 0
//! ```
//!
//! where `kernel` is zero in the absolute case and the final zero is the
//! (always trivial) contribution of the underlying closed point. With
//! the log-smoothness assertion the value is the embedding dimension of
//! the jet space at the point; without it, an upper bound.

use crate::decomp::stabilize;
use crate::diff::{build_log_differentials, relative_log_differentials, restrict_along_arc};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::jets::ComponentDescriptor;
use crate::monoid::relative_invariants;
use crate::scheme::{JetPoint, LogArc, LogChartScheme};
use num_traits::ToPrimitive;

/// Everything the formula consumed and produced, so a report can be
/// rechecked from its own printed fields:
/// `value = d(m+1) + fitting_order - rank + irreducibles + kernel_rank - point_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbDimReport {
    pub m: usize,
    /// Betti number d_m of the restricted differentials.
    pub d: usize,
    /// Order of the d_m-th Fitting ideal at order m.
    pub fitting_order: usize,
    /// Group rank of the characteristic monoid at the jet point
    /// (relative: corank of the base image).
    pub rank: usize,
    /// Irreducible count of the characteristic monoid at the jet point
    /// (relative: irreducibles missed by the base image).
    pub irreducibles: usize,
    /// Kernel rank of the base group map; zero for absolute reports.
    pub kernel_rank: usize,
    /// Contribution of the underlying point: always zero (closed points).
    pub point_dim: usize,
    pub value: i64,
    /// True when the scheme asserts log smoothness: the value is then an
    /// equality, otherwise an upper bound.
    pub equality: bool,
    pub relative: bool,
    /// Relative reports combine global base data with the jet point's
    /// face; flagged because that identification is an interpretation.
    pub interpretation: bool,
    /// Invariant factor exponents backing d and the Fitting order.
    pub invariant_factors: Vec<usize>,
    /// Stabilized working precision behind the invariant factors.
    pub precision: usize,
    /// Oracle value and agreement flag, when an oracle run was requested.
    pub oracle: Option<(i64, bool)>,
}

impl EmbDimReport {
    /// Recompute the value from the printed fields.
    pub fn recomputed(&self) -> i64 {
        self.d as i64 * (self.m as i64 + 1) + self.fitting_order as i64 - self.rank as i64
            + self.irreducibles as i64
            + self.kernel_rank as i64
            - self.point_dim as i64
    }
}

/// Precision needed to read the order-`m` jet point off an arc: every
/// chart variable's unit part starts at its contact order.
fn jet_read_precision(arc: &LogArc, m: usize) -> usize {
    let mut needed = m + 1;
    if arc.r() >= 1 {
        if let Some(contact) = arc.contact() {
            for c in contact {
                if let Some(c) = c.to_usize() {
                    needed = needed.max(arc.r() as usize * c + m + 1);
                }
            }
        }
    }
    needed
}

/// The jet point of the arc at order `m`, reading through a deeper
/// re-materialization when the arc's own precision is too shallow.
pub fn arc_jet_point(s: &LogChartScheme, arc: &LogArc, m: usize) -> Result<JetPoint> {
    let needed = jet_read_precision(arc, m);
    if arc.precision() >= needed {
        s.jet_point_from_arc(arc, m)
    } else {
        s.jet_point_from_arc(&arc.re_materialized(needed)?, m)
    }
}

struct RestrictionData {
    d: usize,
    fitting_order: usize,
    invariant_factors: Vec<usize>,
    precision: usize,
}

/// Restrict a differential presentation along the arc at stabilized
/// precision and read off the order-`m` invariants.
fn stabilized_invariants(
    s: &LogChartScheme,
    omega: &crate::diff::LogDiffPresentation,
    arc: &LogArc,
    m: usize,
) -> Result<RestrictionData> {
    let start = arc.precision().max(2 * m + 4);
    let (module, inv) = stabilize(start, 8, |p| {
        let a = if p == arc.precision() {
            arc.clone()
        } else {
            arc.re_materialized(p)?
        };
        restrict_along_arc(s, omega, &a)
    })?;
    let d = inv.betti_number(m)?;
    let fitting_order = inv.fitting_order(d, m)?;
    Ok(RestrictionData {
        d,
        fitting_order,
        invariant_factors: inv.exponents,
        precision: module.precision(),
    })
}

/// When a jet point is supplied explicitly, it must sit on the same
/// component as the arc's own jet.
fn check_override(arc: &LogArc, m: usize, p: &JetPoint) -> Result<()> {
    if p.m != m {
        return Err(Error::Validation(format!(
            "supplied jet point has order {}, requested order is {m}",
            p.m
        )));
    }
    if p.r != arc.r() {
        return Err(Error::Validation(format!(
            "supplied jet point has r = {}, arc has r = {}",
            p.r,
            arc.r()
        )));
    }
    match (&p.contact, arc.contact()) {
        (Some(pc), Some(ac)) if pc.as_slice() != ac => Err(Error::Validation(
            "supplied jet point lies on a different component: contact vectors differ".into(),
        )),
        _ => Ok(()),
    }
}

/// Evaluate the formula along `arc` at order `m`. The characteristic
/// monoid is read at the arc's own jet point unless `at_point` supplies
/// a different point of the same component (for instance a degenerate
/// point with vanished unit constants).
pub fn embdim_formula(
    s: &LogChartScheme,
    arc: &LogArc,
    m: usize,
    at_point: Option<&JetPoint>,
) -> Result<EmbDimReport> {
    s.validate_arc(arc)?;
    let omega = build_log_differentials(s);
    let data = stabilized_invariants(s, &omega, arc, m)?;
    let point = match at_point {
        Some(p) => {
            check_override(arc, m, p)?;
            p.clone()
        }
        None => arc_jet_point(s, arc, m)?,
    };
    let (rank, irreducibles) = s.char_monoid_at_jet(&point)?;
    let mut report = EmbDimReport {
        m,
        d: data.d,
        fitting_order: data.fitting_order,
        rank,
        irreducibles,
        kernel_rank: 0,
        point_dim: 0,
        value: 0,
        equality: s.log_smooth(),
        relative: false,
        interpretation: false,
        invariant_factors: data.invariant_factors,
        precision: data.precision,
        oracle: None,
    };
    report.value = report.recomputed();
    Ok(report)
}

/// Evaluate the relative formula over the declared base chart: the
/// differentials gain the base relations, and the monoid counts come
/// from the base map's group-level data (kernel rank, missed
/// irreducibles, corank).
pub fn embdim_relative(
    s: &LogChartScheme,
    arc: &LogArc,
    m: usize,
    at_point: Option<&JetPoint>,
) -> Result<EmbDimReport> {
    let base = s.base().ok_or_else(|| {
        Error::Validation("the relative formula needs a declared base chart".into())
    })?;
    s.validate_arc(arc)?;
    let omega = relative_log_differentials(s)?;
    let data = stabilized_invariants(s, &omega, arc, m)?;
    // The jet point is still validated/read so that a bad arc or an
    // off-component override is refused, even though the relative counts
    // are global.
    match at_point {
        Some(p) => check_override(arc, m, p)?,
        None => {
            arc_jet_point(s, arc, m)?;
        }
    }
    let (kernel_rank, missed, corank) =
        relative_invariants(&base.monoid, s.monoid(), &base.map)?;
    let nontrivial_base = base.monoid.num_gens() > 0 || base.variable.is_some();
    let mut report = EmbDimReport {
        m,
        d: data.d,
        fitting_order: data.fitting_order,
        rank: corank,
        irreducibles: missed,
        kernel_rank,
        point_dim: 0,
        value: 0,
        equality: s.log_smooth(),
        relative: true,
        interpretation: nontrivial_base,
        invariant_factors: data.invariant_factors,
        precision: data.precision,
        oracle: None,
    };
    report.value = report.recomputed();
    Ok(report)
}

/// Zariski-cotangent oracle on an explicit component presentation: the
/// number of ambient variables minus the Jacobian rank at the point. The
/// point must satisfy the component's equations.
pub fn embdim_oracle(pres: &ComponentDescriptor, p: &JetPoint) -> Result<usize> {
    let flat = pres.flatten_point(p)?;
    embdim_oracle_at(pres, &flat)
}

/// The same oracle on an already flattened coordinate vector.
pub fn embdim_oracle_at(pres: &ComponentDescriptor, flat: &[FieldElem]) -> Result<usize> {
    if flat.len() != pres.num_variables() {
        return Err(Error::Validation(format!(
            "point has {} coordinates, component has {} variables",
            flat.len(),
            pres.num_variables()
        )));
    }
    if !pres.contains(flat) {
        return Err(Error::Validation(
            "the point does not satisfy the component's equations".into(),
        ));
    }
    Ok(pres.num_variables() - pres.jacobian_rank(flat))
}

/// The order-`m` jet point of an arc in plain (ordinary) coordinates:
/// per variable, the first `m + 1` series coefficients.
pub fn ordinary_jet_point(arc: &LogArc, m: usize) -> Result<JetPoint> {
    if m + 1 > arc.precision() {
        return Err(Error::Precision(format!(
            "order {m} needs precision at least {}, arc has {}",
            m + 1,
            arc.precision()
        )));
    }
    let coords: Vec<Vec<FieldElem>> = arc
        .series()
        .iter()
        .map(|s| (0..=m).map(|j| s.coeff(j).clone()).collect())
        .collect();
    Ok(JetPoint {
        r: arc.r(),
        m,
        contact: None,
        coords,
    })
}
