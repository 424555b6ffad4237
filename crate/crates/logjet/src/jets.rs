//! Jet and evaluation spaces of log charts, presented by components.
//!
//! A component of the order-`m` space is indexed by a monoid hom `c` (the
//! contact orders of the chart generators) and presented in coordinates
//! that expand every original variable into `m + 1` coefficient
//! coordinates. A chart variable with positive contact order contributes
//! the coefficients of its unit part; everything else contributes plain
//! series coefficients. The defining equations come in two groups: the
//! unit-part identities induced by the monoid relations, taken to full
//! order, and the coefficientwise expansions of the listed equations that
//! the relations do not already account for.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Char, FieldElem};
use crate::linalg::field_matrix_rank;
use crate::poly::Poly;
use crate::scheme::{JetPoint, LogChartScheme};

/// A truncated power series whose coefficients are polynomials: the shape
/// of a coordinate after substituting an undetermined jet.
#[derive(Clone, Debug)]
pub struct PolySeries {
    ch: Char,
    vars: Vec<String>,
    coeffs: Vec<Poly>,
}

impl PolySeries {
    pub fn zero(ch: Char, vars: &[String], precision: usize) -> PolySeries {
        PolySeries {
            ch,
            vars: vars.to_vec(),
            coeffs: vec![Poly::zero(ch, vars); precision],
        }
    }

    pub fn from_coeffs(ch: Char, vars: &[String], coeffs: Vec<Poly>) -> PolySeries {
        assert!(!coeffs.is_empty(), "a series needs precision at least 1");
        PolySeries {
            ch,
            vars: vars.to_vec(),
            coeffs,
        }
    }

    pub fn constant(ch: Char, vars: &[String], precision: usize, c: &FieldElem) -> PolySeries {
        let mut s = PolySeries::zero(ch, vars, precision);
        s.coeffs[0] = Poly::constant(ch, vars, c.clone());
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        assert_eq!(self.precision(), other.precision());
        PolySeries {
            ch: self.ch,
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolySeries) -> PolySeries {
        assert_eq!(self.precision(), other.precision());
        PolySeries {
            ch: self.ch,
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        assert_eq!(self.precision(), other.precision());
        let p = self.precision();
        let mut coeffs = vec![Poly::zero(self.ch, &self.vars); p];
        for i in 0..p {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..p - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        PolySeries {
            ch: self.ch,
            vars: self.vars.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> PolySeries {
        let one = FieldElem::one(self.ch);
        let mut acc = PolySeries::constant(self.ch, &self.vars, self.precision(), &one);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Evaluate a polynomial under a substitution sending each of its
/// variables to a polynomial-coefficient series.
pub fn eval_poly_series(f: &Poly, assignment: &[PolySeries]) -> Result<PolySeries> {
    if assignment.len() != f.vars().len() {
        return Err(Error::Validation(format!(
            "substitution covers {} of {} variables",
            assignment.len(),
            f.vars().len()
        )));
    }
    let (ch, vars, precision) = match assignment.first() {
        Some(s) => (s.ch, s.vars.clone(), s.precision()),
        None => {
            return Err(Error::Validation(
                "substitution into an empty ring is not meaningful here".into(),
            ))
        }
    };
    // Memoized powers of each assigned series.
    let mut powers: Vec<Vec<PolySeries>> = assignment
        .iter()
        .map(|s| vec![PolySeries::constant(ch, &vars, precision, &FieldElem::one(ch)), s.clone()])
        .collect();
    let mut acc = PolySeries::zero(ch, &vars, precision);
    for (m, c) in f.terms() {
        let mut term = PolySeries::constant(ch, &vars, precision, c);
        for (i, &e) in m.0.iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&assignment[i]);
                powers[i].push(next);
            }
            if e > 0 {
                term = term.mul(&powers[i][e as usize]);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// What kind of jet coordinates a component presentation uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentKind {
    /// `r >= 1`, indexed by a contact hom; chart variables contribute
    /// unit-part coefficients.
    LogJet,
    /// `r = 0`; chart variables contribute a constant and unit-part
    /// perturbations `a, w_1, .., w_m`.
    UnitJet,
    /// Plain coefficient coordinates, log structure forgotten.
    Ordinary,
}

/// A closed presentation of one component of a jet or evaluation space.
#[derive(Clone, Debug)]
pub struct ComponentDescriptor {
    pub kind: ComponentKind,
    pub r: u32,
    pub m: usize,
    /// The indexing hom, for `LogJet` components.
    pub contact: Option<Vec<BigInt>>,
    /// Coordinates of the component's ambient affine space, blocked per
    /// original variable: block `i` occupies indices `i*(m+1)..(i+1)*(m+1)`.
    pub variables: Vec<String>,
    pub equations: Vec<Poly>,
    /// For each original variable, its image under the truncation to the
    /// underlying order-0 point, as a polynomial in the component
    /// coordinates.
    pub underlying_map: Vec<(String, Poly)>,
    ch: Char,
}

impl ComponentDescriptor {
    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Start of the coordinate block of original variable `i`.
    pub fn block_start(&self, i: usize) -> usize {
        i * (self.m + 1)
    }

    /// Flatten a jet point into the component's coordinate order.
    pub fn flatten_point(&self, p: &JetPoint) -> Result<Vec<FieldElem>> {
        if p.m != self.m {
            return Err(Error::Validation(format!(
                "jet point has order {}, component has order {}",
                p.m, self.m
            )));
        }
        match self.kind {
            ComponentKind::LogJet => {
                if p.r != self.r {
                    return Err(Error::Validation(format!(
                        "jet point has r = {}, component has r = {}",
                        p.r, self.r
                    )));
                }
                if let (Some(pc), Some(sc)) = (&p.contact, &self.contact) {
                    if pc != sc {
                        return Err(Error::Validation(
                            "jet point lies on a different component: contact vectors differ"
                                .into(),
                        ));
                    }
                }
            }
            ComponentKind::UnitJet => {
                if p.r != 0 {
                    return Err(Error::Validation(
                        "component uses r = 0 coordinates, jet point does not".into(),
                    ));
                }
            }
            ComponentKind::Ordinary => {}
        }
        let expected_blocks = self.variables.len() / (self.m + 1);
        if p.coords.len() != expected_blocks {
            return Err(Error::Validation(format!(
                "jet point covers {} variables, component expects {}",
                p.coords.len(),
                expected_blocks
            )));
        }
        let mut flat = Vec::with_capacity(self.variables.len());
        for block in &p.coords {
            if block.len() != self.m + 1 {
                return Err(Error::Validation(
                    "jet point block length does not match the order".into(),
                ));
            }
            flat.extend(block.iter().cloned());
        }
        Ok(flat)
    }

    /// Values of all defining equations at a flattened point.
    pub fn evaluate(&self, flat: &[FieldElem]) -> Vec<FieldElem> {
        self.equations.iter().map(|f| f.eval(flat)).collect()
    }

    pub fn contains(&self, flat: &[FieldElem]) -> bool {
        self.evaluate(flat).iter().all(|v| v.is_zero())
    }

    /// Rank of the Jacobian of the defining equations at a point.
    pub fn jacobian_rank(&self, flat: &[FieldElem]) -> usize {
        let rows: Vec<Vec<FieldElem>> = self
            .equations
            .iter()
            .map(|f| {
                (0..self.variables.len())
                    .map(|j| f.derivative(j).eval(flat))
                    .collect()
            })
            .collect();
        field_matrix_rank(&rows)
    }
}

fn contact_as_hom(s: &LogChartScheme, contact: &[BigInt]) -> Result<()> {
    let monoid = s.monoid();
    if contact.len() != monoid.num_gens() {
        return Err(Error::Validation(format!(
            "component index has {} entries for {} generators",
            contact.len(),
            monoid.num_gens()
        )));
    }
    for (g, v) in contact.iter().enumerate() {
        if v.is_negative() {
            return Err(Error::Validation(format!(
                "component index is negative on {}",
                monoid.names()[g]
            )));
        }
    }
    for w in monoid.kernel_basis() {
        let pairing: BigInt = contact.iter().zip(w).map(|(a, b)| a * b).sum();
        if !pairing.is_zero() {
            return Err(Error::Validation(
                "component index is not a monoid hom".into(),
            ));
        }
    }
    Ok(())
}

/// Coordinate names for a component presentation, blocked per original
/// variable; errors on collisions.
fn component_variables(
    s: &LogChartScheme,
    kind: ComponentKind,
    m: usize,
) -> Result<Vec<String>> {
    let mut names = Vec::with_capacity(s.variables().len() * (m + 1));
    for (i, v) in s.variables().iter().enumerate() {
        let is_chart = s.generator_of_variable(i).is_some();
        for j in 0..=m {
            let name = match kind {
                ComponentKind::LogJet if is_chart => format!("u_{v}_{j}"),
                ComponentKind::UnitJet if is_chart => {
                    if j == 0 {
                        format!("a_{v}")
                    } else {
                        format!("w_{v}_{j}")
                    }
                }
                _ => format!("{v}_{j}"),
            };
            names.push(name);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut clashes = Vec::new();
    for n in &names {
        if !seen.insert(n.clone()) {
            clashes.push(format!("jet coordinate name {n:?} collides"));
        }
    }
    if clashes.is_empty() {
        Ok(names)
    } else {
        Err(Error::validation(&clashes))
    }
}

/// The substituted coordinate series of each original variable, in the
/// component's coordinates.
fn substitution(
    s: &LogChartScheme,
    kind: ComponentKind,
    contact: Option<&[BigInt]>,
    r: u32,
    m: usize,
    vars: &[String],
) -> Result<Vec<PolySeries>> {
    let ch = s.characteristic();
    let mut subst = Vec::with_capacity(s.variables().len());
    for i in 0..s.variables().len() {
        let block = i * (m + 1);
        let coeffs: Vec<Poly> = match (kind, s.generator_of_variable(i)) {
            (ComponentKind::LogJet, Some(g)) => {
                let c = contact.expect("LogJet components carry a contact hom");
                let shift_big = BigInt::from(r) * &c[g];
                (0..=m)
                    .map(|k| {
                        let k_big = BigInt::from(k);
                        if k_big >= shift_big {
                            let j = (&k_big - &shift_big)
                                .to_usize()
                                .expect("offset fits: bounded by m");
                            Poly::var(ch, vars, block + j)
                        } else {
                            Poly::zero(ch, vars)
                        }
                    })
                    .collect()
            }
            (ComponentKind::UnitJet, Some(_)) => (0..=m)
                .map(|k| {
                    if k == 0 {
                        Poly::var(ch, vars, block)
                    } else {
                        &Poly::var(ch, vars, block) * &Poly::var(ch, vars, block + k)
                    }
                })
                .collect(),
            _ => (0..=m).map(|k| Poly::var(ch, vars, block + k)).collect(),
        };
        subst.push(PolySeries::from_coeffs(ch, vars, coeffs));
    }
    Ok(subst)
}

fn underlying_map(
    s: &LogChartScheme,
    kind: ComponentKind,
    contact: Option<&[BigInt]>,
    r: u32,
    m: usize,
    vars: &[String],
) -> Vec<(String, Poly)> {
    let ch = s.characteristic();
    s.variables()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let block = i * (m + 1);
            let image = match (kind, s.generator_of_variable(i)) {
                (ComponentKind::LogJet, Some(g)) => {
                    let c = contact.expect("LogJet components carry a contact hom");
                    if (BigInt::from(r) * &c[g]).is_zero() {
                        Poly::var(ch, vars, block)
                    } else {
                        Poly::zero(ch, vars)
                    }
                }
                _ => Poly::var(ch, vars, block),
            };
            (v.clone(), image)
        })
        .collect()
}

/// Present one component of the order-`m` log jet space. For `r >= 1`
/// the component is indexed by the contact hom `c`; for `r = 0` pass no
/// contact (there is a single component, in unit-part coordinates).
///
/// The equations are, in order: the unit-part identities of the monoid
/// relations (kernel basis first, then relation vectors carried by
/// matched binomial equations, without repeats), expanded to every order
/// `0..=m`; then, for each listed equation not matched by a relation, the
/// `t`-coefficients `0..=m` of its substituted expansion. Identically
/// zero coefficients are dropped. For `r = 0` every listed equation is
/// expanded; there is no unit-part group.
pub fn log_jet_component_presentation(
    s: &LogChartScheme,
    contact: Option<&[BigInt]>,
    r: u32,
    m: usize,
) -> Result<ComponentDescriptor> {
    let ch = s.characteristic();
    let kind = if r == 0 {
        if contact.is_some() {
            return Err(Error::Validation(
                "r = 0 jet spaces are not indexed by contact homs".into(),
            ));
        }
        ComponentKind::UnitJet
    } else {
        ComponentKind::LogJet
    };
    if kind == ComponentKind::LogJet {
        let c = contact.ok_or_else(|| {
            Error::Validation("an r >= 1 component needs a contact hom".into())
        })?;
        contact_as_hom(s, c)?;
    }

    let vars = component_variables(s, kind, m)?;
    let subst = substitution(s, kind, contact, r, m, &vars)?;
    let mut equations = Vec::new();

    if kind == ComponentKind::LogJet {
        // Unit-part series of each generator's chart variable.
        let units: Vec<PolySeries> = (0..s.monoid().num_gens())
            .map(|g| {
                let block = s.chart()[g] * (m + 1);
                PolySeries::from_coeffs(
                    ch,
                    &vars,
                    (0..=m).map(|j| Poly::var(ch, &vars, block + j)).collect(),
                )
            })
            .collect();

        let mut relations: Vec<Vec<BigInt>> = s.monoid().kernel_basis().to_vec();
        for w in s.matched_binomial_vectors() {
            if !relations.contains(&w) {
                relations.push(w);
            }
        }
        for w in &relations {
            let mut lhs = PolySeries::constant(ch, &vars, m + 1, &FieldElem::one(ch));
            let mut rhs = lhs.clone();
            for (g, e) in w.iter().enumerate() {
                let mag = e.magnitude().to_u32().ok_or_else(|| {
                    Error::Unsupported("relation exponent does not fit in u32".into())
                })?;
                if e.is_positive() {
                    lhs = lhs.mul(&units[g].pow(mag));
                } else if e.is_negative() {
                    rhs = rhs.mul(&units[g].pow(mag));
                }
            }
            let diff = lhs.sub(&rhs);
            for k in 0..=m {
                if !diff.coeff(k).is_zero() {
                    equations.push(diff.coeff(k).clone());
                }
            }
        }

        let matched = s.matched_binomial_equations();
        for (f, is_matched) in s.equations().iter().zip(matched) {
            if is_matched {
                continue;
            }
            let expansion = eval_poly_series(f, &subst)?;
            for k in 0..=m {
                if !expansion.coeff(k).is_zero() {
                    equations.push(expansion.coeff(k).clone());
                }
            }
        }
    } else {
        for f in s.equations() {
            let expansion = eval_poly_series(f, &subst)?;
            for k in 0..=m {
                if !expansion.coeff(k).is_zero() {
                    equations.push(expansion.coeff(k).clone());
                }
            }
        }
    }

    let underlying = underlying_map(s, kind, contact, r, m, &vars);
    Ok(ComponentDescriptor {
        kind,
        r,
        m,
        contact: contact.map(|c| c.to_vec()),
        variables: vars,
        equations,
        underlying_map: underlying,
        ch,
    })
}

/// Present the ordinary (log structure forgotten) order-`m` jet scheme:
/// plain coefficient coordinates, every listed equation expanded to order
/// `m`.
pub fn ordinary_jet_presentation(s: &LogChartScheme, m: usize) -> Result<ComponentDescriptor> {
    let ch = s.characteristic();
    let vars = component_variables(s, ComponentKind::Ordinary, m)?;
    let subst = substitution(s, ComponentKind::Ordinary, None, 1, m, &vars)?;
    let mut equations = Vec::new();
    for f in s.equations() {
        let expansion = eval_poly_series(f, &subst)?;
        for k in 0..=m {
            if !expansion.coeff(k).is_zero() {
                equations.push(expansion.coeff(k).clone());
            }
        }
    }
    let underlying = underlying_map(s, ComponentKind::Ordinary, None, 1, m, &vars);
    Ok(ComponentDescriptor {
        kind: ComponentKind::Ordinary,
        r: 1,
        m,
        contact: None,
        variables: vars,
        equations,
        underlying_map: underlying,
        ch,
    })
}

/// All components of the order-0 evaluation space with index bounded by
/// `bound`, in the enumeration order of the monoid homs.
pub fn eval_space_components(
    s: &LogChartScheme,
    r: u32,
    bound: u64,
) -> Result<Vec<ComponentDescriptor>> {
    if r == 0 {
        return Err(Error::Validation(
            "evaluation spaces are indexed by contact homs, which need r >= 1".into(),
        ));
    }
    s.monoid()
        .enumerate_homs_to_n(bound)
        .into_iter()
        .map(|c| log_jet_component_presentation(s, Some(&c), r, 0))
        .collect()
}

/// Dimension of the fiber of the truncation from order `m + 1` to order
/// `m` on the component indexed by `contact`. On a chart declared log
/// smooth this is the plain count `(#vars - #eqs)` difference; otherwise
/// a jet point of order `m + 1` on the component must be supplied, and
/// Jacobian ranks at the point and its truncation decide it.
pub fn truncation_fiber_dimension(
    s: &LogChartScheme,
    contact: Option<&[BigInt]>,
    r: u32,
    m: usize,
    point: Option<&JetPoint>,
) -> Result<usize> {
    let upper = log_jet_component_presentation(s, contact, r, m + 1)?;
    let lower = log_jet_component_presentation(s, contact, r, m)?;
    if s.log_smooth() {
        let dim_upper = upper.num_variables() as i64 - upper.equations.len() as i64;
        let dim_lower = lower.num_variables() as i64 - lower.equations.len() as i64;
        let fiber = dim_upper - dim_lower;
        if fiber < 0 {
            return Err(Error::Arithmetic(
                "negative fiber dimension from the log smooth count".into(),
            ));
        }
        return Ok(fiber as usize);
    }
    let p = point.ok_or_else(|| {
        Error::Unsupported(
            "chart is not declared log smooth; supply a jet point of order m + 1 \
             on the component"
                .into(),
        )
    })?;
    let flat_upper = upper.flatten_point(p)?;
    if !upper.contains(&flat_upper) {
        return Err(Error::Validation(
            "supplied jet point is not on the component".into(),
        ));
    }
    let truncated = JetPoint {
        r: p.r,
        m,
        contact: p.contact.clone(),
        coords: p.coords.iter().map(|b| b[..=m].to_vec()).collect(),
    };
    let flat_lower = lower.flatten_point(&truncated)?;
    let dim_upper = flat_upper.len() as i64 - upper.jacobian_rank(&flat_upper) as i64;
    let dim_lower = flat_lower.len() as i64 - lower.jacobian_rank(&flat_lower) as i64;
    let fiber = dim_upper - dim_lower;
    if fiber < 0 {
        return Err(Error::Arithmetic(
            "negative fiber dimension at the supplied point".into(),
        ));
    }
    Ok(fiber as usize)
}

/// Dimension of the fiber of the `r = 0` jet space over an ordinary jet
/// of order `m`, supplied as plain coefficient blocks. The base jet must
/// lie over a stratum point: each chart variable either vanishes
/// identically along the base jet (and contributes `m` free unit-part
/// coordinates) or is a unit at its origin (and is determined). The
/// listed equations are verified to vanish along the base jet.
pub fn r0_fiber_dimension(s: &LogChartScheme, base: &JetPoint) -> Result<usize> {
    let m = base.m;
    if base.coords.len() != s.variables().len() {
        return Err(Error::Validation(format!(
            "base jet covers {} of {} variables",
            base.coords.len(),
            s.variables().len()
        )));
    }
    let ch = s.characteristic();
    let mut vanishing = 0usize;
    for (i, block) in base.coords.iter().enumerate() {
        if block.len() != m + 1 {
            return Err(Error::Validation(
                "base jet block length does not match its order".into(),
            ));
        }
        if s.generator_of_variable(i).is_none() {
            continue;
        }
        if block.iter().all(|x| x.is_zero()) {
            vanishing += 1;
        } else if block[0].is_zero() {
            return Err(Error::Validation(format!(
                "base jet is outside every r = 0 stratum: chart variable {} vanishes \
                 at the origin but not identically",
                s.variables()[i]
            )));
        }
    }
    // The determined and vanishing coordinates must actually satisfy the
    // equations: on a stratum they reproduce the base jet exactly.
    let assignment: Vec<crate::series::TruncSeries> = base
        .coords
        .iter()
        .map(|block| crate::series::TruncSeries::from_coeffs(ch, m + 1, block))
        .collect();
    for f in s.equations() {
        let val = f.eval_series(&assignment)?;
        if let Some(k) = val.valuation() {
            return Err(Error::Validation(format!(
                "base jet does not satisfy {f}: first failure at t^{k}"
            )));
        }
    }
    Ok(m * vanishing)
}

/// A monomial morphism between charts: each target variable is sent to a
/// monomial in the source variables, recorded as an exponent matrix with
/// one row per target variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub exponents: Vec<Vec<u64>>,
}

impl MonomialMap {
    /// Shape and chart compatibility against concrete source and target
    /// charts: every target chart variable must pull back to a monomial
    /// in source chart variables only.
    pub fn validate(&self, source: &LogChartScheme, target: &LogChartScheme) -> Result<()> {
        if self.exponents.len() != target.variables().len() {
            return Err(Error::Validation(format!(
                "monomial map lists {} rows for {} target variables",
                self.exponents.len(),
                target.variables().len()
            )));
        }
        for (w, row) in self.exponents.iter().enumerate() {
            if row.len() != source.variables().len() {
                return Err(Error::Validation(format!(
                    "row for target variable {} has {} entries, expected {}",
                    target.variables()[w],
                    row.len(),
                    source.variables().len()
                )));
            }
        }
        for (h, &w) in target.chart().iter().enumerate() {
            for (v, &e) in self.exponents[w].iter().enumerate() {
                if e > 0 && source.generator_of_variable(v).is_none() {
                    return Err(Error::Validation(format!(
                        "target chart variable {} (generator {}) involves the \
                         non-chart source variable {}",
                        target.variables()[w],
                        target.monoid().names()[h],
                        source.variables()[v]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Apply the exponent matrix to a vector (matrix-vector product).
    pub fn apply(&self, c: &[BigInt]) -> Result<Vec<BigInt>> {
        for row in &self.exponents {
            if row.len() != c.len() {
                return Err(Error::Validation(format!(
                    "matrix row length {} does not match vector length {}",
                    row.len(),
                    c.len()
                )));
            }
        }
        Ok(self
            .exponents
            .iter()
            .map(|row| row.iter().zip(c).map(|(&e, x)| BigInt::from(e) * x).sum())
            .collect())
    }

    /// The composite of `self : X -> Y` followed by `next : Y -> Z`, whose
    /// exponent matrix is the product of the two.
    pub fn then(&self, next: &MonomialMap) -> Result<MonomialMap> {
        let mid = self.exponents.len();
        for row in &next.exponents {
            if row.len() != mid {
                return Err(Error::Validation(
                    "monomial maps are not composable: dimensions differ".into(),
                ));
            }
        }
        let cols = self.exponents.first().map(|r| r.len()).unwrap_or(0);
        let exponents = next
            .exponents
            .iter()
            .map(|zrow| {
                (0..cols)
                    .map(|x| (0..mid).map(|y| zrow[y] * self.exponents[y][x]).sum())
                    .collect()
            })
            .collect();
        Ok(MonomialMap { exponents })
    }
}

/// Push a component index forward along a monomial morphism: the image
/// arc's contact order on a target generator is the weighted sum of the
/// source contact orders prescribed by the exponent matrix.
pub fn component_index_pushforward(
    map: &MonomialMap,
    source: &LogChartScheme,
    target: &LogChartScheme,
    c: &[BigInt],
) -> Result<Vec<BigInt>> {
    map.validate(source, target)?;
    contact_as_hom(source, c)?;
    let mut out = Vec::with_capacity(target.monoid().num_gens());
    for &w in target.chart() {
        let mut order = BigInt::zero();
        for (v, &e) in map.exponents[w].iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = source
                .generator_of_variable(v)
                .expect("validated: chart rows involve chart variables only");
            order += BigInt::from(e) * &c[g];
        }
        out.push(order);
    }
    contact_as_hom(target, &out).map_err(|_| {
        Error::Validation(
            "pushed-forward index is not a hom of the target monoid; the map does \
             not respect the log structures"
                .into(),
        )
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::monoid::MonoidPresentation;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn axes() -> LogChartScheme {
        let vars = names(&["u", "v"]);
        let eq = parse_poly("u*v", Char::Zero, &vars).unwrap();
        let q =
            MonoidPresentation::new(names(&["U", "V"]), vec![vec![1, 0], vec![0, 1]]).unwrap();
        LogChartScheme::new(Char::Zero, vars, vec![eq], q, names(&["u", "v"]), false, None)
            .unwrap()
    }

    /// The quadric cone chart x*y = z^2 with generators X, Z, Y.
    fn toric() -> LogChartScheme {
        let vars = names(&["x", "z", "y"]);
        let eq = parse_poly("x*y - z^2", Char::Zero, &vars).unwrap();
        let q = MonoidPresentation::new(
            names(&["X", "Z", "Y"]),
            vec![vec![1, 1], vec![1, 0], vec![1, -1]],
        )
        .unwrap();
        LogChartScheme::new(Char::Zero, vars, vec![eq], q, names(&["x", "z", "y"]), true, None)
            .unwrap()
    }

    fn plane() -> LogChartScheme {
        let vars = names(&["x", "y"]);
        LogChartScheme::new(
            Char::Zero,
            vars,
            Vec::new(),
            MonoidPresentation::new(Vec::new(), Vec::new()).unwrap(),
            Vec::new(),
            true,
            None,
        )
        .unwrap()
    }

    fn cusp() -> LogChartScheme {
        let vars = names(&["x", "y"]);
        let eq = parse_poly("y^2 - x^3", Char::Zero, &vars).unwrap();
        LogChartScheme::new(
            Char::Zero,
            vars,
            vec![eq],
            MonoidPresentation::new(Vec::new(), Vec::new()).unwrap(),
            Vec::new(),
            false,
            None,
        )
        .unwrap()
    }

    #[test]
    fn axes_component_has_one_equation() {
        let s = axes();
        let c = big(&[1, 1]);
        let d = log_jet_component_presentation(&s, Some(&c), 1, 2).unwrap();
        assert_eq!(d.variables.len(), 6);
        assert_eq!(
            d.variables,
            names(&["u_u_0", "u_u_1", "u_u_2", "u_v_0", "u_v_1", "u_v_2"])
        );
        assert_eq!(d.equations.len(), 1);
        assert_eq!(d.equations[0].to_string(), "u_u_0*u_v_0");
        // Both chart variables vanish at the underlying point.
        assert!(d.underlying_map[0].1.is_zero());
        assert!(d.underlying_map[1].1.is_zero());
    }

    #[test]
    fn toric_components_count_equations() {
        let s = toric();
        // The binomial is matched, so only the unit-part identities of the
        // single relation appear: orders 0..=m.
        for m in 0..4usize {
            let c = big(&[2, 1, 0]);
            let d = log_jet_component_presentation(&s, Some(&c), 1, m).unwrap();
            assert_eq!(d.variables.len(), 3 * (m + 1));
            assert_eq!(d.equations.len(), m + 1);
        }
        // Index (2,1,0): x vanishes, z vanishes, y is a unit at t = 0.
        let d = log_jet_component_presentation(&s, Some(&big(&[2, 1, 0])), 1, 1).unwrap();
        assert!(d.underlying_map[0].1.is_zero());
        assert!(d.underlying_map[1].1.is_zero());
        assert_eq!(d.underlying_map[2].1.to_string(), "u_y_0");
        // A non-hom index is rejected.
        assert!(log_jet_component_presentation(&s, Some(&big(&[1, 1, 0])), 1, 1).is_err());
    }

    #[test]
    fn evaluation_space_components_at_order_zero_pull_back_the_equations() {
        let s = axes();
        let comps = eval_space_components(&s, 1, 2).unwrap();
        assert_eq!(comps.len(), 9);
        for d in &comps {
            // At order 0 the component's equations are exactly the listed
            // equations evaluated at the underlying map, zeros dropped.
            let images: Vec<Poly> = d.underlying_map.iter().map(|(_, p)| p.clone()).collect();
            let expected: Vec<String> = s
                .equations()
                .iter()
                .map(|f| f.substitute(&images))
                .filter(|f| !f.is_zero())
                .map(|f| f.to_string())
                .collect();
            let got: Vec<String> = d.equations.iter().map(|f| f.to_string()).collect();
            assert_eq!(got, expected, "component {:?}", d.contact);
        }
    }

    #[test]
    fn ordinary_cusp_jets() {
        let s = cusp();
        let d = ordinary_jet_presentation(&s, 2).unwrap();
        assert_eq!(d.variables, names(&["x_0", "x_1", "x_2", "y_0", "y_1", "y_2"]));
        assert_eq!(d.equations.len(), 3);
        // The jet (x, y) = (0 + 0t + 1t^2, 0) of the cusp parametrization
        // truncation lies on the jet scheme and is a smooth-locus escape:
        // the Jacobian vanishes there.
        let flat: Vec<FieldElem> = [0, 0, 1, 0, 0, 0]
            .iter()
            .map(|&n| FieldElem::from_int(Char::Zero, n))
            .collect();
        assert!(d.contains(&flat));
        assert_eq!(d.jacobian_rank(&flat), 0);
    }

    #[test]
    fn unit_jet_presentation_of_the_axes() {
        let s = axes();
        let d = log_jet_component_presentation(&s, None, 0, 2).unwrap();
        assert_eq!(
            d.variables,
            names(&["a_u", "w_u_1", "w_u_2", "a_v", "w_v_1", "w_v_2"])
        );
        // u*v expands to a_u*a_v * (unit), so every coefficient carries
        // the factor a_u*a_v.
        assert_eq!(d.equations.len(), 3);
        assert_eq!(d.equations[0].to_string(), "a_u*a_v");
        // r = 0 takes no contact vector.
        assert!(log_jet_component_presentation(&s, Some(&big(&[1, 1])), 0, 2).is_err());
    }

    #[test]
    fn truncation_fibers_of_smooth_charts() {
        let s = plane();
        for m in 0..4usize {
            assert_eq!(
                truncation_fiber_dimension(&s, Some(&[]), 1, m, None).unwrap(),
                2
            );
        }
        let t = toric();
        for m in 0..4usize {
            let c = big(&[0, 1, 2]);
            assert_eq!(
                truncation_fiber_dimension(&t, Some(&c), 1, m, None).unwrap(),
                2
            );
        }
    }

    #[test]
    fn truncation_fiber_needs_a_point_when_not_smooth() {
        let s = cusp();
        assert!(truncation_fiber_dimension(&s, Some(&[]), 1, 1, None).is_err());
    }

    #[test]
    fn r0_fibers_over_strata() {
        let s = axes();
        let zero = FieldElem::zero(Char::Zero);
        let one = FieldElem::one(Char::Zero);
        // Base jet on the u-axis: u = 1 + t + t^2, v = 0. One vanishing
        // chart variable, fiber dimension m * 1.
        let base = JetPoint {
            r: 1,
            m: 2,
            contact: None,
            coords: vec![vec![one.clone(), one.clone(), one.clone()], vec![zero.clone(); 3]],
        };
        assert_eq!(r0_fiber_dimension(&s, &base).unwrap(), 2);
        // Base jet at the origin: both vanish, fiber dimension m * 2.
        let origin = JetPoint {
            r: 1,
            m: 2,
            contact: None,
            coords: vec![vec![zero.clone(); 3], vec![zero.clone(); 3]],
        };
        assert_eq!(r0_fiber_dimension(&s, &origin).unwrap(), 4);
        // u vanishes at the origin but not identically: outside every
        // stratum.
        let escaped = JetPoint {
            r: 1,
            m: 2,
            contact: None,
            coords: vec![vec![zero.clone(), one.clone(), zero.clone()], vec![zero.clone(); 3]],
        };
        assert!(r0_fiber_dimension(&s, &escaped).is_err());
        // Both variables are units: violates u*v = 0.
        let off = JetPoint {
            r: 1,
            m: 2,
            contact: None,
            coords: vec![vec![one.clone(), zero.clone(), zero.clone()]; 2],
        };
        assert!(r0_fiber_dimension(&s, &off).is_err());
    }

    #[test]
    fn pushforward_of_component_indices() {
        // Power map on the log line: x -> x^3.
        let line = |name: &str| {
            let vars = names(&[name]);
            LogChartScheme::new(
                Char::Zero,
                vars,
                Vec::new(),
                MonoidPresentation::new(names(&["N"]), vec![vec![1]]).unwrap(),
                names(&[name]),
                true,
                None,
            )
            .unwrap()
        };
        let src = line("x");
        let tgt = line("y");
        let cube = MonomialMap {
            exponents: vec![vec![3]],
        };
        assert_eq!(
            component_index_pushforward(&cube, &src, &tgt, &big(&[2])).unwrap(),
            big(&[6])
        );

        // Blowup chart: x = x' * y', y = y'.
        let plane_chart = |a: &str, b: &str| {
            let vars = names(&[a, b]);
            LogChartScheme::new(
                Char::Zero,
                vars.clone(),
                Vec::new(),
                MonoidPresentation::new(
                    names(&["A", "B"]),
                    vec![vec![1, 0], vec![0, 1]],
                )
                .unwrap(),
                vars,
                true,
                None,
            )
            .unwrap()
        };
        let upstairs = plane_chart("xp", "yp");
        let downstairs = plane_chart("x", "y");
        let blow = MonomialMap {
            exponents: vec![vec![1, 1], vec![0, 1]],
        };
        assert_eq!(
            component_index_pushforward(&blow, &upstairs, &downstairs, &big(&[2, 5])).unwrap(),
            big(&[7, 5])
        );

        // Functoriality: composing the exponent matrices is composing the
        // pushforwards.
        let twist = MonomialMap {
            exponents: vec![vec![1, 0], vec![1, 1]],
        };
        let composite = blow.then(&twist).unwrap();
        let once = component_index_pushforward(&blow, &upstairs, &downstairs, &big(&[2, 5])).unwrap();
        let twice = component_index_pushforward(&twist, &downstairs, &downstairs, &once).unwrap();
        assert_eq!(
            component_index_pushforward(&composite, &upstairs, &downstairs, &big(&[2, 5]))
                .unwrap(),
            twice
        );

        // Involving a non-chart source variable is an error.
        let half_chart = LogChartScheme::new(
            Char::Zero,
            names(&["u", "v"]),
            Vec::new(),
            MonoidPresentation::new(names(&["U"]), vec![vec![1]]).unwrap(),
            names(&["u"]),
            true,
            None,
        )
        .unwrap();
        let bad = MonomialMap {
            exponents: vec![vec![0, 1]],
        };
        let err = component_index_pushforward(&bad, &half_chart, &src, &big(&[1])).unwrap_err();
        assert!(err.to_string().contains("non-chart"), "{err}");
    }

    #[test]
    fn flatten_and_evaluate_jet_points() {
        let s = toric();
        let d = log_jet_component_presentation(&s, Some(&big(&[2, 2, 2])), 1, 1).unwrap();
        // Vertex-degenerate point: all unit constants zero would leave the
        // component... instead take the valid arc point (t^2, t^2, t^2).
        let arc_polys: Vec<Poly> = ["t^2", "t^2", "t^2"]
            .iter()
            .map(|t| crate::expr::parse_t_polynomial(t, Char::Zero).unwrap())
            .collect();
        let arc = crate::scheme::LogArc::new(
            Char::Zero,
            1,
            Some(big(&[2, 2, 2])),
            arc_polys,
            8,
        )
        .unwrap();
        let p = s.jet_point_from_arc(&arc, 1).unwrap();
        let flat = d.flatten_point(&p).unwrap();
        assert!(d.contains(&flat));
        // A point with mismatched contact is refused.
        let d2 = log_jet_component_presentation(&s, Some(&big(&[0, 1, 2])), 1, 1).unwrap();
        assert!(d2.flatten_point(&p).is_err());
    }
}
