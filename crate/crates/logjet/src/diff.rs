//! Log Kähler differentials of a chart-presented scheme, as an explicit
//! presentation over the coordinate ring, and their restriction along an
//! arc to a module over the truncated line (the log Jacobian).
//!
//! The presentation has one generator `dlog_g` per monoid generator and
//! one generator `d<v>` per non-chart variable; since `d(x) = x dlog(x)`
//! for a chart variable `x`, every differential of the coordinate ring
//! is expressible in these. Relations come from the monoid (each lattice
//! relation among the generators forces a constant linear relation on
//! the dlog's) and from the ideal (each listed equation `f` contributes
//! `df`, written in the chart basis).

use crate::decomp::PresentedModule;
use crate::error::{Error, Result};
use crate::field::Char;
use crate::monoid::relative_invariants;
use crate::poly::Poly;
use crate::scheme::{LogArc, LogChartScheme};
use num_traits::ToPrimitive;

/// A presentation of the log differentials: `labels` names the
/// generators, `rows` the relations, with polynomial coefficients in the
/// scheme's coordinate ring. `row_labels` records where each relation
/// came from, for reports.
#[derive(Clone, Debug)]
pub struct LogDiffPresentation {
    ch: Char,
    labels: Vec<String>,
    rows: Vec<Vec<Poly>>,
    row_labels: Vec<String>,
}

impl LogDiffPresentation {
    pub fn characteristic(&self) -> Char {
        self.ch
    }

    /// Generator labels: `dlog_<g>` per monoid generator, then `d<v>`
    /// per non-chart variable.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_generators(&self) -> usize {
        self.labels.len()
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }
}

/// Build the presentation of the log differentials of `s`.
///
/// Columns: one `dlog_g` per monoid generator in declaration order, then
/// one `d<v>` per non-chart variable in variable order. Rows: one
/// constant row per lattice relation among the monoid generators, then
/// one row `df` per listed equation, where a chart variable `x` of
/// generator `g` contributes `x * df/dx` to the `dlog_g` column and a
/// non-chart variable `v` contributes `df/dv` to its `d<v>` column.
/// Entries are reduced modulo the listed equations by direct division.
pub fn build_log_differentials(s: &LogChartScheme) -> LogDiffPresentation {
    let ch = s.characteristic();
    let q = s.monoid();
    let vars: Vec<String> = s.variables().to_vec();
    let non_chart = s.non_chart_variables();

    let mut labels: Vec<String> = Vec::new();
    for g in 0..q.num_gens() {
        labels.push(format!("dlog_{}", q.names()[g]));
    }
    for &v in &non_chart {
        labels.push(format!("d{}", vars[v]));
    }
    let width = labels.len();

    // Column of a chart variable's generator and of a non-chart variable.
    let col_of_gen = |g: usize| g;
    let col_of_non_chart = |v: usize| {
        q.num_gens()
            + non_chart
                .iter()
                .position(|&w| w == v)
                .expect("non-chart variable")
    };

    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut row_labels: Vec<String> = Vec::new();

    for w in q.kernel_basis() {
        let mut row = vec![Poly::zero(ch, &vars); width];
        for (g, c) in w.iter().enumerate() {
            let c = c.to_i64().expect("kernel coefficient fits i64");
            row[col_of_gen(g)] = Poly::int_constant(ch, &vars, c);
        }
        let text: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        rows.push(row);
        row_labels.push(format!("monoid relation ({})", text.join(", ")));
    }

    for f in s.equations() {
        let mut row = vec![Poly::zero(ch, &vars); width];
        for v in 0..vars.len() {
            let df = f.derivative(v);
            if df.is_zero() {
                continue;
            }
            match s.generator_of_variable(v) {
                Some(g) => {
                    let coeff = &Poly::var(ch, &vars, v) * &df;
                    row[col_of_gen(g)] = coeff.reduce(s.equations());
                }
                None => {
                    row[col_of_non_chart(v)] = df.reduce(s.equations());
                }
            }
        }
        rows.push(row);
        row_labels.push(format!("d({f})"));
    }

    LogDiffPresentation {
        ch,
        labels,
        rows,
        row_labels,
    }
}

/// Build the presentation of the log differentials of `s` relative to
/// its declared base chart: the absolute presentation plus, per base
/// generator, the constant row of its image's generator expansion, and,
/// if a base variable is declared, the row expressing its differential.
pub fn relative_log_differentials(s: &LogChartScheme) -> Result<LogDiffPresentation> {
    let base = s.base().ok_or_else(|| {
        Error::Validation("relative differentials need a declared base chart".into())
    })?;
    let ch = s.characteristic();
    let vars: Vec<String> = s.variables().to_vec();
    let q = s.monoid();
    let mut pres = build_log_differentials(s);
    let width = pres.labels.len();

    for (r, image) in base.map.exponents.iter().enumerate() {
        let mut row = vec![Poly::zero(ch, &vars); width];
        for (g, &e) in image.iter().enumerate() {
            row[g] = Poly::int_constant(ch, &vars, e as i64);
        }
        pres.rows.push(row);
        pres.row_labels
            .push(format!("base generator {}", base.monoid.names()[r]));
    }

    if let Some(v) = base.variable {
        let mut row = vec![Poly::zero(ch, &vars); width];
        match s.generator_of_variable(v) {
            Some(g) => {
                row[g] = Poly::var(ch, &vars, v);
            }
            None => {
                let pos = s
                    .non_chart_variables()
                    .iter()
                    .position(|&w| w == v)
                    .expect("non-chart variable");
                row[q.num_gens() + pos] = Poly::int_constant(ch, &vars, 1);
            }
        }
        pres.rows.push(row);
        pres.row_labels
            .push(format!("d({}) from the base", vars[v]));
    }

    Ok(pres)
}

/// Restrict a presentation along an arc: validate the arc on the scheme,
/// substitute its exact coordinate polynomials into every coefficient,
/// and package the result as an arc-mode module over `L[t]/t^P` at the
/// arc's precision.
pub fn restrict_along_arc(
    s: &LogChartScheme,
    omega: &LogDiffPresentation,
    arc: &LogArc,
) -> Result<PresentedModule> {
    s.validate_arc(arc)?;
    let exact: Vec<Vec<Poly>> = omega
        .rows
        .iter()
        .map(|row| row.iter().map(|p| p.substitute(arc.exact())).collect())
        .collect();
    PresentedModule::from_t_polynomials(
        omega.ch,
        arc.precision(),
        omega.num_generators(),
        exact,
    )
}

/// The two cotangent dimensions of the log point of a sharp monoid: the
/// rank of the group completion and the number of irreducible elements.
pub fn logpoint_cotangent_dims(q: &crate::monoid::MonoidPresentation) -> (usize, usize) {
    (q.gp_rank(), q.irreducible_elements().len())
}

/// Relative cotangent counts for a base chart `R -> Q`: kernel rank of
/// the induced group map, the number of irreducibles of `Q` missed by
/// the image, and the relative group rank.
pub fn relative_cotangent_counts(s: &LogChartScheme) -> Result<(usize, usize, usize)> {
    let base = s
        .base()
        .ok_or_else(|| Error::Validation("no base chart declared".into()))?;
    relative_invariants(&base.monoid, s.monoid(), &base.map)
}
