//! Affine charts carrying a log structure, and arcs on them.
//!
//! A chart is an affine scheme presented by equations in a polynomial
//! ring, together with a sharp monoid whose generators are sent to
//! distinct coordinate variables. Validation insists that every relation
//! of the monoid is visible in the ideal: the binomial attached to each
//! kernel relation must reduce to zero against the listed equations.
//!
//! Arcs are stored as exact polynomials in `t` alongside a truncation
//! order, so the same arc can be re-materialized at higher precision
//! whenever a downstream computation reports that its truncation was too
//! coarse.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Char, FieldElem};
use crate::monoid::{MonoidMapData, MonoidPresentation};
use crate::poly::{Mono, Poly};
use crate::series::TruncSeries;

/// A declared base chart: the structural morphism of the family.
#[derive(Clone, Debug)]
pub struct BaseChart {
    /// The base monoid `R`.
    pub monoid: MonoidPresentation,
    /// Images of the `R`-generators as exponent vectors over the chart
    /// monoid's generators.
    pub map: MonoidMapData,
    /// The coordinate pulled back from the base line, if the base has
    /// one. Resolved to an index into the chart's variable list. A base
    /// with no generators and no variable is the trivial base.
    pub variable: Option<usize>,
}

/// An affine chart with a log structure.
#[derive(Clone, Debug)]
pub struct LogChartScheme {
    ch: Char,
    variables: Vec<String>,
    equations: Vec<Poly>,
    monoid: MonoidPresentation,
    /// `chart[g]` is the variable index the `g`-th monoid generator maps to.
    chart: Vec<usize>,
    log_smooth: bool,
    base: Option<BaseChart>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl LogChartScheme {
    /// Build and validate a chart. `chart_vars` lists, per monoid
    /// generator, the name of the coordinate variable it maps to; the
    /// names must be distinct. Every monoid relation must cut the listed
    /// ideal: the binomial it induces has to reduce to zero under
    /// division by the listed equations.
    pub fn new(
        ch: Char,
        variables: Vec<String>,
        equations: Vec<Poly>,
        monoid: MonoidPresentation,
        chart_vars: Vec<String>,
        log_smooth: bool,
        base: Option<(MonoidPresentation, MonoidMapData, Option<String>)>,
    ) -> Result<LogChartScheme> {
        let mut problems = Vec::new();

        if variables.is_empty() {
            problems.push("a chart needs at least one coordinate variable".to_string());
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &variables {
            if !is_identifier(v) || v == "t" {
                problems.push(format!("variable name {v:?} is not allowed"));
            }
            if !seen.insert(v.clone()) {
                problems.push(format!("duplicate variable name {v:?}"));
            }
        }
        for (i, f) in equations.iter().enumerate() {
            if f.characteristic() != ch {
                problems.push(format!("equation {i} is over the wrong ground field"));
            }
            if f.vars() != variables.as_slice() {
                problems.push(format!(
                    "equation {i} lives in a different polynomial ring"
                ));
            }
        }
        if chart_vars.len() != monoid.num_gens() {
            problems.push(format!(
                "chart lists {} variables for {} monoid generators",
                chart_vars.len(),
                monoid.num_gens()
            ));
        }
        if !problems.is_empty() {
            return Err(Error::validation(&problems));
        }

        let mut chart = Vec::with_capacity(chart_vars.len());
        let mut used = std::collections::BTreeSet::new();
        for (g, name) in chart_vars.iter().enumerate() {
            match variables.iter().position(|v| v == name) {
                None => problems.push(format!(
                    "chart sends generator {} to unknown variable {name:?}",
                    monoid.names()[g]
                )),
                Some(i) => {
                    if !used.insert(i) {
                        problems.push(format!(
                            "chart variable {name:?} is assigned to more than one generator"
                        ));
                    }
                    chart.push(i);
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::validation(&problems));
        }

        // Every monoid relation must already be cut out by the ideal.
        for w in monoid.kernel_basis() {
            let binom = kernel_binomial(ch, &variables, &chart, w)?;
            if !binom.reduce(&equations).is_zero() {
                problems.push(format!(
                    "monoid relation with exponents {:?} induces the binomial {}, \
                     which does not reduce to zero against the listed equations",
                    w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    binom
                ));
            }
        }

        let base = match base {
            None => None,
            Some((base_monoid, map, base_var)) => {
                if let Err(e) = map.validate(&base_monoid, &monoid) {
                    problems.push(format!("base chart map: {e}"));
                }
                let variable = match base_var {
                    None => None,
                    Some(name) => match variables.iter().position(|v| v == &name) {
                        Some(i) => Some(i),
                        None => {
                            problems.push(format!(
                                "base variable {name:?} is not a coordinate variable"
                            ));
                            None
                        }
                    },
                };
                Some(BaseChart {
                    monoid: base_monoid,
                    map,
                    variable,
                })
            }
        };
        if !problems.is_empty() {
            return Err(Error::validation(&problems));
        }

        Ok(LogChartScheme {
            ch,
            variables,
            equations,
            monoid,
            chart,
            log_smooth,
            base,
        })
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn monoid(&self) -> &MonoidPresentation {
        &self.monoid
    }

    /// Per-generator variable indices.
    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    pub fn log_smooth(&self) -> bool {
        self.log_smooth
    }

    pub fn base(&self) -> Option<&BaseChart> {
        self.base.as_ref()
    }

    pub fn trivial_log(&self) -> bool {
        self.monoid.num_gens() == 0
    }

    /// The generator whose chart variable is `v`, if any.
    pub fn generator_of_variable(&self, v: usize) -> Option<usize> {
        self.chart.iter().position(|&i| i == v)
    }

    /// Indices of the variables not hit by the chart, in variable order.
    pub fn non_chart_variables(&self) -> Vec<usize> {
        (0..self.variables.len())
            .filter(|v| self.generator_of_variable(*v).is_none())
            .collect()
    }

    /// Which listed equations are binomials matching a monoid relation:
    /// two terms with opposite coefficients, supported on chart variables
    /// only, whose exponent difference lies in the relation lattice. Such
    /// equations are exactly the ones the log structure already accounts
    /// for. Returns one flag per equation.
    pub fn matched_binomial_equations(&self) -> Vec<bool> {
        self.equations
            .iter()
            .map(|f| self.match_binomial(f).is_some())
            .collect()
    }

    /// The relation vectors carried by matched binomial equations,
    /// sign-normalized so the first nonzero entry is positive.
    pub fn matched_binomial_vectors(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for f in &self.equations {
            if let Some(w) = self.match_binomial(f) {
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    fn match_binomial(&self, f: &Poly) -> Option<Vec<BigInt>> {
        if f.num_terms() != 2 {
            return None;
        }
        let terms: Vec<(&Mono, &FieldElem)> = f.terms().collect();
        let (m1, c1) = terms[0];
        let (m2, c2) = terms[1];
        if !(c1.clone() + c2.clone()).is_zero() {
            return None;
        }
        // Both monomials must involve chart variables only.
        for v in self.non_chart_variables() {
            if m1.0[v] != 0 || m2.0[v] != 0 {
                return None;
            }
        }
        let mut w: Vec<BigInt> = Vec::with_capacity(self.chart.len());
        for &v in &self.chart {
            w.push(BigInt::from(m1.0[v]) - BigInt::from(m2.0[v]));
        }
        if !self.monoid.in_kernel(&w) {
            return None;
        }
        if let Some(first) = w.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in w.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        Some(w)
    }

    /// Validate an arc against this chart. For `r >= 1` the arc must
    /// declare a contact vector: a monoid hom `c` such that each chart
    /// variable vanishes to the exact order `r * c(g)` (when that order is
    /// visible at the arc's precision; beyond it, the truncation must be
    /// identically zero). Chart variables that are identically zero are
    /// rejected: they have no finite contact order. For `r = 0` no contact
    /// vector is allowed. In all cases the listed equations must vanish
    /// along the arc to the arc's full precision.
    pub fn validate_arc(&self, arc: &LogArc) -> Result<()> {
        let mut problems = Vec::new();
        if arc.characteristic() != self.ch {
            problems.push("arc is over the wrong ground field".to_string());
        }
        if arc.series.len() != self.variables.len() {
            problems.push(format!(
                "arc assigns {} series to {} variables",
                arc.series.len(),
                self.variables.len()
            ));
        }
        if !problems.is_empty() {
            return Err(Error::validation(&problems));
        }

        match (arc.r, &arc.contact) {
            (0, Some(_)) => {
                problems.push("an arc with r = 0 carries no contact vector".to_string())
            }
            (0, None) => {}
            (_, None) => {
                problems.push("an arc with r >= 1 must declare a contact vector".to_string())
            }
            (r, Some(c)) => {
                if c.len() != self.monoid.num_gens() {
                    problems.push(format!(
                        "contact vector has {} entries for {} generators",
                        c.len(),
                        self.monoid.num_gens()
                    ));
                } else {
                    for (g, v) in c.iter().enumerate() {
                        if v.is_negative() {
                            problems.push(format!(
                                "contact value on {} is negative",
                                self.monoid.names()[g]
                            ));
                        }
                    }
                    for w in self.monoid.kernel_basis() {
                        let pairing: BigInt = c.iter().zip(w).map(|(a, b)| a * b).sum();
                        if !pairing.is_zero() {
                            problems.push(format!(
                                "contact vector is not a monoid hom: relation {:?} pairs to {}",
                                w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                                pairing
                            ));
                        }
                    }
                    if problems.is_empty() {
                        self.check_contact_orders(arc, r, c, &mut problems);
                    }
                }
            }
        }

        for f in &self.equations {
            let val = f.eval_series(&arc.series)?;
            if let Some(k) = val.valuation() {
                problems.push(format!(
                    "equation {f} does not vanish along the arc; first failure at t^{k}"
                ));
            }
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::validation(&problems))
        }
    }

    fn check_contact_orders(
        &self,
        arc: &LogArc,
        r: u32,
        contact: &[BigInt],
        problems: &mut Vec<String>,
    ) {
        for (g, &var) in self.chart.iter().enumerate() {
            let name = &self.variables[var];
            // A genuinely zero chart coordinate has no finite contact
            // order. An arc that merely *truncated* to zero is fine as
            // long as the declared order lies beyond its precision.
            if arc.exact[var].is_zero() && !arc.truncated {
                problems.push(format!(
                    "chart variable {name} is identically zero and has no finite contact order"
                ));
                continue;
            }
            let target = BigInt::from(r) * &contact[g];
            let series = &arc.series[var];
            if target < BigInt::from(arc.precision) {
                let want = target.to_usize().expect("order fits after comparison");
                match series.valuation() {
                    Some(got) if got == want => {}
                    Some(got) => problems.push(format!(
                        "chart variable {name} has t-order {got}, but contact declares {want}"
                    )),
                    None => problems.push(format!(
                        "chart variable {name} vanishes to order >= {}, but contact declares {want}",
                        arc.precision
                    )),
                }
            } else if let Some(got) = series.valuation() {
                problems.push(format!(
                    "chart variable {name} has t-order {got}, below the declared contact order {target}"
                ));
            }
        }
    }

    /// Read the order-`m` jet point underlying an arc. For a chart
    /// variable with contact order `r * c(g)`, the jet coordinates are the
    /// unit-part coefficients, i.e. the series coefficients at orders
    /// `r*c(g) .. r*c(g)+m`; the arc must carry enough precision to see
    /// all of them. Other variables contribute their plain coefficients
    /// `0 .. m`.
    pub fn jet_point_from_arc(&self, arc: &LogArc, m: usize) -> Result<JetPoint> {
        self.validate_arc(arc)?;
        if arc.r == 0 {
            return self.r0_jet_point_from_arc(arc, m);
        }
        let mut coords = Vec::with_capacity(self.variables.len());
        for v in 0..self.variables.len() {
            let offset = match (self.generator_of_variable(v), &arc.contact) {
                (Some(g), Some(c)) => {
                    let shift = BigInt::from(arc.r) * &c[g];
                    match shift.to_usize() {
                        Some(s) => s,
                        None => {
                            return Err(Error::Precision(format!(
                                "contact order of {} is out of range",
                                self.variables[v]
                            )))
                        }
                    }
                }
                _ => 0,
            };
            if offset + m + 1 > arc.precision {
                return Err(Error::Precision(format!(
                    "reading the order-{m} jet of {} needs precision {}, arc has {}",
                    self.variables[v],
                    offset + m + 1,
                    arc.precision
                )));
            }
            coords.push(
                (0..=m)
                    .map(|j| arc.series[v].coeff(offset + j).clone())
                    .collect(),
            );
        }
        Ok(JetPoint {
            r: arc.r,
            m,
            contact: arc.contact.clone(),
            coords,
        })
    }

    /// r = 0 jets present each chart variable as `a * (1 + sum w_j t^j)`,
    /// so the jet coordinates of a chart variable are `a` followed by the
    /// `w_j`; that normal form only exists when the constant term is a
    /// unit.
    fn r0_jet_point_from_arc(&self, arc: &LogArc, m: usize) -> Result<JetPoint> {
        if m + 1 > arc.precision {
            return Err(Error::Precision(format!(
                "order-{m} jet needs precision {}, arc has {}",
                m + 1,
                arc.precision
            )));
        }
        let mut coords = Vec::with_capacity(self.variables.len());
        for v in 0..self.variables.len() {
            let series = &arc.series[v];
            if self.generator_of_variable(v).is_some() {
                let a = series.coeff(0).clone();
                if a.is_zero() {
                    return Err(Error::Validation(format!(
                        "chart variable {} vanishes at the origin of the arc; \
                         its r = 0 unit-part coordinates are undefined",
                        self.variables[v]
                    )));
                }
                let mut block = vec![a.clone()];
                for j in 1..=m {
                    block.push(series.coeff(j).div(&a)?);
                }
                coords.push(block);
            } else {
                coords.push((0..=m).map(|j| series.coeff(j).clone()).collect());
            }
        }
        Ok(JetPoint {
            r: 0,
            m,
            contact: None,
            coords,
        })
    }

    /// The face of the monoid selected by a jet point: the set of
    /// generators whose unit-part constant coordinate is nonzero. Errors
    /// if that set is not a face.
    pub fn unit_face(&self, p: &JetPoint) -> Result<Vec<usize>> {
        let face: Vec<usize> = (0..self.monoid.num_gens())
            .filter(|&g| !p.coords[self.chart[g]][0].is_zero())
            .collect();
        if !self.monoid.is_face(&face) {
            return Err(Error::Validation(format!(
                "unit constants select the generator set {{{}}}, which is not a face",
                face.iter()
                    .map(|&g| self.monoid.names()[g].as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        Ok(face)
    }

    /// Invariants of the stalk of the characteristic monoid at a jet
    /// point: the group rank of the face quotient and the number of its
    /// irreducible elements.
    pub fn char_monoid_at_jet(&self, p: &JetPoint) -> Result<(usize, usize)> {
        let face = self.unit_face(p)?;
        let quotient = self.monoid.quotient_by_face(&face)?;
        Ok((quotient.gp_rank(), quotient.irreducible_elements().len()))
    }
}

/// Multivariate binomial induced by a relation vector: positive part
/// minus negative part, in the chart variables.
fn kernel_binomial(
    ch: Char,
    variables: &[String],
    chart: &[usize],
    w: &[BigInt],
) -> Result<Poly> {
    let mut plus = vec![0u32; variables.len()];
    let mut minus = vec![0u32; variables.len()];
    for (g, x) in w.iter().enumerate() {
        let e = x.magnitude().to_u32().ok_or_else(|| {
            Error::Unsupported("relation exponent does not fit in u32".to_string())
        })?;
        if x.is_positive() {
            plus[chart[g]] += e;
        } else if x.is_negative() {
            minus[chart[g]] += e;
        }
    }
    let p = Poly::monomial(ch, variables, plus, FieldElem::one(ch));
    let m = Poly::monomial(ch, variables, minus, FieldElem::one(ch));
    Ok(&p - &m)
}

/// An arc on a chart: exact polynomial coordinates in `t`, materialized
/// as truncated series at a working precision.
#[derive(Clone, Debug)]
pub struct LogArc {
    r: u32,
    precision: usize,
    /// Exact coordinates, one univariate polynomial in `t` per variable.
    exact: Vec<Poly>,
    /// The same coordinates truncated at `precision`.
    series: Vec<TruncSeries>,
    /// Declared contact vector on the monoid generators (`r >= 1` only).
    contact: Option<Vec<BigInt>>,
    /// Set on arcs produced by `truncate`: their exact coordinates are
    /// themselves truncations, so a zero coordinate is not evidence of a
    /// genuinely zero coordinate.
    truncated: bool,
}

impl LogArc {
    pub fn new(
        ch: Char,
        r: u32,
        contact: Option<Vec<BigInt>>,
        exact: Vec<Poly>,
        precision: usize,
    ) -> Result<LogArc> {
        if precision == 0 {
            return Err(Error::Precision("an arc needs precision at least 1".into()));
        }
        let mut series = Vec::with_capacity(exact.len());
        for p in &exact {
            if p.characteristic() != ch {
                return Err(Error::Validation(
                    "arc coordinate over the wrong ground field".into(),
                ));
            }
            if p.vars() != ["t".to_string()] {
                return Err(Error::Validation(
                    "arc coordinates must be univariate polynomials in t".into(),
                ));
            }
            series.push(p.univariate_series(precision)?);
        }
        Ok(LogArc {
            r,
            precision,
            exact,
            series,
            contact,
            truncated: false,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn contact(&self) -> Option<&[BigInt]> {
        self.contact.as_deref()
    }

    pub fn series(&self) -> &[TruncSeries] {
        &self.series
    }

    pub fn exact(&self) -> &[Poly] {
        &self.exact
    }

    pub fn characteristic(&self) -> Char {
        self.exact
            .first()
            .map(|p| p.characteristic())
            .unwrap_or(Char::Zero)
    }

    /// The same arc materialized at a different precision. Sound because
    /// the exact polynomial coordinates are the ground truth.
    pub fn re_materialized(&self, precision: usize) -> Result<LogArc> {
        let mut arc = LogArc::new(
            self.characteristic(),
            self.r,
            self.contact.clone(),
            self.exact.clone(),
            precision,
        )?;
        arc.truncated = self.truncated;
        Ok(arc)
    }

    /// Truncate to order `m`: the result has precision `m + 1` and
    /// genuinely forgets everything above, including in the exact
    /// coordinates. The contact vector is retained.
    pub fn truncate(&self, m: usize) -> Result<LogArc> {
        if m + 1 > self.precision {
            return Err(Error::Precision(format!(
                "truncation to order {m} needs precision {}, arc has {}",
                m + 1,
                self.precision
            )));
        }
        let ch = self.characteristic();
        let tvar = vec!["t".to_string()];
        let truncated: Vec<Poly> = self
            .exact
            .iter()
            .map(|p| {
                let mut q = Poly::zero(ch, &tvar);
                for (mono, c) in p.terms() {
                    if (mono.0[0] as usize) <= m {
                        q = &q + &Poly::monomial(ch, &tvar, mono.0.clone(), c.clone());
                    }
                }
                q
            })
            .collect();
        let mut arc = LogArc::new(ch, self.r, self.contact.clone(), truncated, m + 1)?;
        arc.truncated = true;
        Ok(arc)
    }
}

/// A point of an order-`m` jet or evaluation space, in the coordinates of
/// the matching component presentation: for each original variable, its
/// block of `m + 1` coefficient coordinates (unit-part coefficients for
/// chart variables when `r >= 1`; `a, w_1, .., w_m` when `r = 0`; plain
/// coefficients otherwise).
#[derive(Clone, Debug)]
pub struct JetPoint {
    pub r: u32,
    pub m: usize,
    pub contact: Option<Vec<BigInt>>,
    pub coords: Vec<Vec<FieldElem>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_poly, parse_t_polynomial};

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn trivial_monoid() -> MonoidPresentation {
        MonoidPresentation::new(Vec::new(), Vec::new()).unwrap()
    }

    /// y^2 = x^3 with trivial log structure.
    fn cusp() -> LogChartScheme {
        let vars = names(&["x", "y"]);
        let eq = parse_poly("y^2 - x^3", Char::Zero, &vars).unwrap();
        LogChartScheme::new(
            Char::Zero,
            vars,
            vec![eq],
            trivial_monoid(),
            Vec::new(),
            false,
            None,
        )
        .unwrap()
    }

    /// u*v = t0 with the log structure of the node over a base line.
    fn node_over_base() -> LogChartScheme {
        let vars = names(&["u", "v", "t0"]);
        let eq = parse_poly("u*v - t0", Char::Zero, &vars).unwrap();
        let q = MonoidPresentation::new(
            names(&["U", "V", "T"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let base = MonoidPresentation::new(names(&["S"]), vec![vec![1]]).unwrap();
        let map = MonoidMapData {
            exponents: vec![vec![1, 1, 0]],
        };
        LogChartScheme::new(
            Char::Zero,
            vars,
            vec![eq],
            q,
            names(&["u", "v", "t0"]),
            true,
            Some((base, map, Some("t0".to_string()))),
        )
        .unwrap()
    }

    /// u*v = 0: the coordinate axes with their natural N^2 chart.
    fn axes() -> LogChartScheme {
        let vars = names(&["u", "v"]);
        let eq = parse_poly("u*v", Char::Zero, &vars).unwrap();
        let q =
            MonoidPresentation::new(names(&["U", "V"]), vec![vec![1, 0], vec![0, 1]]).unwrap();
        LogChartScheme::new(Char::Zero, vars, vec![eq], q, names(&["u", "v"]), false, None)
            .unwrap()
    }

    fn arc(ch: Char, r: u32, contact: Option<Vec<i64>>, coords: &[&str], p: usize) -> LogArc {
        let exact: Vec<Poly> = coords
            .iter()
            .map(|s| parse_t_polynomial(s, ch).unwrap())
            .collect();
        LogArc::new(
            ch,
            r,
            contact.map(|c| c.into_iter().map(BigInt::from).collect()),
            exact,
            p,
        )
        .unwrap()
    }

    #[test]
    fn missing_relation_equation_is_rejected() {
        let vars = names(&["u", "v", "t0"]);
        let q = MonoidPresentation::new(
            names(&["U", "V", "T"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let err = LogChartScheme::new(
            Char::Zero,
            vars,
            Vec::new(),
            q,
            names(&["u", "v", "t0"]),
            false,
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("does not reduce to zero"), "{err}");
    }

    #[test]
    fn sign_flipped_relation_equation_is_accepted() {
        let vars = names(&["u", "v", "t0"]);
        let eq = parse_poly("t0 - u*v", Char::Zero, &vars).unwrap();
        let q = MonoidPresentation::new(
            names(&["U", "V", "T"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let s = LogChartScheme::new(
            Char::Zero,
            vars,
            vec![eq],
            q,
            names(&["u", "v", "t0"]),
            true,
            None,
        )
        .unwrap();
        assert_eq!(s.matched_binomial_equations(), vec![true]);
        assert_eq!(
            s.matched_binomial_vectors(),
            vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]]
        );
    }

    #[test]
    fn chart_variables_must_be_distinct() {
        let vars = names(&["u", "v"]);
        let q =
            MonoidPresentation::new(names(&["U", "V"]), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let err = LogChartScheme::new(
            Char::Zero,
            vars,
            vec![parse_poly("u*v", Char::Zero, &names(&["u", "v"])).unwrap()],
            q,
            names(&["u", "u"]),
            false,
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("more than one generator"), "{err}");
    }

    #[test]
    fn cusp_parametrization_validates() {
        let s = cusp();
        let a = arc(Char::Zero, 1, Some(vec![]), &["t^2", "t^3"], 10);
        s.validate_arc(&a).unwrap();
        // y = t^2 is off the curve: y^2 - x^3 = t^4 - t^6.
        let bad = arc(Char::Zero, 1, Some(vec![]), &["t^2", "t^2"], 10);
        let err = s.validate_arc(&bad).unwrap_err();
        assert!(err.to_string().contains("first failure at t^4"), "{err}");
    }

    #[test]
    fn node_arc_contact_is_checked() {
        let s = node_over_base();
        let good = arc(Char::Zero, 1, Some(vec![1, 1, 2]), &["t", "t", "t^2"], 8);
        s.validate_arc(&good).unwrap();

        // Declared contact does not match the t-orders.
        let wrong = arc(Char::Zero, 1, Some(vec![2, 1, 3]), &["t", "t", "t^2"], 8);
        let err = s.validate_arc(&wrong).unwrap_err();
        assert!(err.to_string().contains("not a monoid hom") || err.to_string().contains("t-order"), "{err}");

        // Not a hom at all.
        let nonhom = arc(Char::Zero, 1, Some(vec![1, 2, 2]), &["t", "t^2", "t^3"], 8);
        let err = s.validate_arc(&nonhom).unwrap_err();
        assert!(err.to_string().contains("not a monoid hom"), "{err}");
    }

    #[test]
    fn identically_zero_chart_variable_is_rejected() {
        let s = axes();
        let a = arc(Char::Zero, 1, Some(vec![1, 0]), &["t", "0"], 6);
        let err = s.validate_arc(&a).unwrap_err();
        assert!(err.to_string().contains("identically zero"), "{err}");
    }

    #[test]
    fn truncation_keeps_contact_and_forgets_tails() {
        let s = cusp();
        let a = arc(Char::Zero, 1, Some(vec![]), &["t^2", "t^3"], 10);
        let tr = a.truncate(4).unwrap();
        assert_eq!(tr.precision(), 5);
        assert!(tr.contact().is_some());
        s.validate_arc(&tr).unwrap();
        assert!(a.truncate(10).is_err());

        // Truncating below a contact order leaves an identically zero
        // coordinate, which still validates by the relaxed rule: the
        // declared order lies beyond the truncated precision.
        let n = node_over_base();
        let na = arc(Char::Zero, 1, Some(vec![1, 1, 2]), &["t", "t", "t^2"], 8);
        let shallow = na.truncate(1).unwrap();
        assert_eq!(shallow.precision(), 2);
        n.validate_arc(&shallow).unwrap();
        // Reading a jet point out of it fails: t0's unit part starts at
        // order 2, beyond the truncated precision.
        assert!(n.jet_point_from_arc(&shallow, 0).is_err());
    }

    #[test]
    fn jet_point_reads_unit_parts() {
        let s = node_over_base();
        let a = arc(
            Char::Zero,
            1,
            Some(vec![1, 1, 2]),
            &["t + t^2", "t", "t^2 + t^3"],
            9,
        );
        let p = s.jet_point_from_arc(&a, 2).unwrap();
        let one = FieldElem::one(Char::Zero);
        let zero = FieldElem::zero(Char::Zero);
        assert_eq!(p.coords[0], vec![one.clone(), one.clone(), zero.clone()]);
        assert_eq!(p.coords[1], vec![one.clone(), zero.clone(), zero.clone()]);
        assert_eq!(p.coords[2], vec![one.clone(), one.clone(), zero.clone()]);
        // Precision 3 cannot see u's unit part to order 2 (needs 1+2+1).
        let short = a.re_materialized(3).unwrap();
        assert!(s.jet_point_from_arc(&short, 2).is_err());
    }

    #[test]
    fn char_monoid_at_jet_points() {
        let s = node_over_base();
        let a = arc(Char::Zero, 1, Some(vec![1, 1, 2]), &["t", "t", "t^2"], 8);
        let p = s.jet_point_from_arc(&a, 2).unwrap();
        // All unit constants are nonzero: the face is everything and the
        // stalk is trivial.
        assert_eq!(s.char_monoid_at_jet(&p).unwrap(), (0, 0));

        // Kill the unit constant of u only: {V, T} is not a face.
        let mut degenerate = p.clone();
        degenerate.coords[0][0] = FieldElem::zero(Char::Zero);
        let err = s.char_monoid_at_jet(&degenerate).unwrap_err();
        assert!(err.to_string().contains("not a face"), "{err}");

        // Kill v and t0: the face {U} remains, and the quotient is the
        // image of V and T in a rank-one lattice.
        let mut deeper = p.clone();
        deeper.coords[1][0] = FieldElem::zero(Char::Zero);
        deeper.coords[2][0] = FieldElem::zero(Char::Zero);
        assert_eq!(s.char_monoid_at_jet(&deeper).unwrap(), (1, 1));
    }

    #[test]
    fn base_chart_resolves_and_validates() {
        let s = node_over_base();
        let b = s.base().unwrap();
        assert_eq!(b.variable, Some(2));
        assert_eq!(b.map.exponents, vec![vec![1, 1, 0]]);

        // A base map that breaks shape is rejected.
        let vars = names(&["u", "v", "t0"]);
        let eq = parse_poly("u*v - t0", Char::Zero, &vars).unwrap();
        let q = MonoidPresentation::new(
            names(&["U", "V", "T"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let base = MonoidPresentation::new(names(&["S"]), vec![vec![1]]).unwrap();
        let bad_map = MonoidMapData {
            exponents: vec![vec![1, 1]],
        };
        let err = LogChartScheme::new(
            Char::Zero,
            vars,
            vec![eq],
            q,
            names(&["u", "v", "t0"]),
            true,
            Some((base, bad_map, Some("t0".to_string()))),
        )
        .unwrap_err();
        assert!(err.to_string().contains("base chart map"), "{err}");
    }

    #[test]
    fn r0_jet_point_normal_form() {
        let s = axes();
        // u = 2 + 2t, v = 0 is not allowed (v is identically zero ... but
        // r = 0 arcs have no contact requirement, so it validates).
        let a = arc(Char::Zero, 0, None, &["2 + 2*t", "0"], 5);
        s.validate_arc(&a).unwrap();
        // The unit-part normal form of u is a = 2, w_1 = 1; it fails for
        // v, whose constant term vanishes.
        let err = s.jet_point_from_arc(&a, 1).unwrap_err();
        assert!(err.to_string().contains("unit-part"), "{err}");

        let b = arc(Char::Zero, 0, None, &["2 + 2*t", "0"], 5);
        let sm = LogChartScheme::new(
            Char::Zero,
            names(&["u", "v"]),
            vec![parse_poly("u*v", Char::Zero, &names(&["u", "v"])).unwrap()],
            MonoidPresentation::new(names(&["U"]), vec![vec![1]]).unwrap(),
            names(&["u"]),
            false,
            None,
        )
        .unwrap();
        let p = sm.jet_point_from_arc(&b, 1).unwrap();
        assert_eq!(p.coords[0][0], FieldElem::from_int(Char::Zero, 2));
        assert_eq!(p.coords[0][1], FieldElem::one(Char::Zero));
        assert_eq!(p.coords[1][0], FieldElem::zero(Char::Zero));
    }
}
