//! Finitely presented modules over the truncated line `L[t]/t^P`, their
//! diagonalization, and the numerical invariants read off it.
//!
//! A presentation is a relation matrix whose rows are relations among a
//! fixed list of generators, with entries in `L[t]/t^P`. Over that local
//! ring every matrix diagonalizes by row and column operations to
//! `diag(t^{e_1}, t^{e_2}, ..)` with nondecreasing pivot exponents; the
//! cokernel is the direct sum of `L[t]/t^{e}` factors plus a free part,
//! one summand per generator. The exponent list records every generator:
//! `0` marks a killed generator, a value `< P` a torsion factor, and `P`
//! itself a generator free at this precision.
//!
//! Presentations come in two flavors. In jet mode the precision *is* the
//! ring: entries are honest elements of `L[t]/t^P` and every question up
//! to order `P - 1` is answered exactly. In arc mode the entries are
//! truncations of exact polynomial data, and a stabilization guard
//! decides whether the truncation was deep enough for the reported
//! exponents to be the true ones.

use crate::error::{Error, Result};
use crate::field::{Char, FieldElem};
use crate::linalg::field_matrix_rank;
use crate::poly::Poly;
use crate::series::TruncSeries;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleMode {
    /// Entries are exact elements of the truncated ring.
    Jet,
    /// Entries are truncations of exact polynomials in `t`.
    Arc,
}

/// A finitely presented module over `L[t]/t^P`: rows are relations,
/// columns are generators.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ch: Char,
    precision: usize,
    generators: usize,
    rows: Vec<Vec<TruncSeries>>,
    mode: ModuleMode,
    /// Arc mode: the exact polynomial each entry truncates.
    exact_rows: Option<Vec<Vec<Poly>>>,
}

impl PresentedModule {
    /// A jet-mode presentation from truncated-series entries.
    pub fn from_series(
        ch: Char,
        precision: usize,
        generators: usize,
        rows: Vec<Vec<TruncSeries>>,
    ) -> Result<PresentedModule> {
        if precision == 0 {
            return Err(Error::Precision(
                "a presentation needs precision at least 1".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != generators {
                return Err(Error::Validation(format!(
                    "relation {i} has {} entries for {generators} generators",
                    row.len()
                )));
            }
            for s in row {
                if s.precision() != precision || s.characteristic() != ch {
                    return Err(Error::Validation(format!(
                        "relation {i} carries an entry at the wrong precision or field"
                    )));
                }
            }
        }
        Ok(PresentedModule {
            ch,
            precision,
            generators,
            rows,
            mode: ModuleMode::Jet,
            exact_rows: None,
        })
    }

    /// An arc-mode presentation: exact polynomial entries, materialized
    /// at the stated precision.
    pub fn from_t_polynomials(
        ch: Char,
        precision: usize,
        generators: usize,
        exact: Vec<Vec<Poly>>,
    ) -> Result<PresentedModule> {
        if precision == 0 {
            return Err(Error::Precision(
                "a presentation needs precision at least 1".into(),
            ));
        }
        let mut rows = Vec::with_capacity(exact.len());
        for (i, row) in exact.iter().enumerate() {
            if row.len() != generators {
                return Err(Error::Validation(format!(
                    "relation {i} has {} entries for {generators} generators",
                    row.len()
                )));
            }
            let mut srow = Vec::with_capacity(row.len());
            for p in row {
                if p.characteristic() != ch {
                    return Err(Error::Validation(format!(
                        "relation {i} carries an entry over the wrong field"
                    )));
                }
                srow.push(p.univariate_series(precision)?);
            }
            rows.push(srow);
        }
        Ok(PresentedModule {
            ch,
            precision,
            generators,
            rows,
            mode: ModuleMode::Arc,
            exact_rows: Some(exact),
        })
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> usize {
        self.rows.len()
    }

    pub fn mode(&self) -> ModuleMode {
        self.mode
    }

    pub fn rows(&self) -> &[Vec<TruncSeries>] {
        &self.rows
    }

    /// Diagonalize by exact row and column operations over `L[t]/t^P`.
    ///
    /// Each step picks a minimal-valuation entry (ties row-major),
    /// normalizes its row by the inverse of the entry's unit part, and
    /// clears its row and column. The clearing multipliers are exact at
    /// this precision: the lift ambiguity of a `t^{P-v}` tail multiplies
    /// entries of valuation at least `v`, landing at or beyond `t^P`.
    /// Pivot valuations are nondecreasing, so the result is the invariant
    /// factor list.
    pub fn diagonalize(&self) -> Result<InvariantFactors> {
        let p = self.precision;
        let mut work = self.rows.clone();
        let nrows = work.len();
        let ncols = self.generators;
        let mut row_done = vec![false; nrows];
        let mut col_done = vec![false; ncols];
        let mut pivots: Vec<usize> = Vec::new();

        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in 0..nrows {
                if row_done[i] {
                    continue;
                }
                for j in 0..ncols {
                    if col_done[j] {
                        continue;
                    }
                    if let Some(v) = work[i][j].valuation() {
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let (pi, pj, v) = match best {
                None => break,
                Some(b) => b,
            };

            // Normalize the pivot row so the pivot becomes exactly t^v.
            let unit = work[pi][pj].shift_right(v)?;
            let inv = lift(&unit.unit_inverse()?, p);
            for j in 0..ncols {
                work[pi][j] = work[pi][j].clone() * inv.clone();
            }

            // Clear the pivot column with exact multipliers.
            for i in 0..nrows {
                if i == pi || row_done[i] {
                    continue;
                }
                if work[i][pj].valuation().is_none() {
                    continue;
                }
                let lambda = lift(&work[i][pj].shift_right(v)?, p);
                for j in 0..ncols {
                    let delta = lambda.clone() * work[pi][j].clone();
                    work[i][j] = work[i][j].clone() - delta;
                }
            }

            // Column operations clear the pivot row; since the pivot
            // column is zero in every other active row, they change
            // nothing else, and the multipliers reconstruct the entries
            // exactly. Materialize the effect directly.
            for j in 0..ncols {
                if j != pj {
                    work[pi][j] = TruncSeries::zero(self.ch, p);
                }
            }

            row_done[pi] = true;
            col_done[pj] = true;
            pivots.push(v);
        }

        let mut exponents = pivots;
        exponents.resize(self.generators.max(exponents.len()), p);
        // One entry per generator: pad with free markers.
        while exponents.len() < self.generators {
            exponents.push(p);
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(InvariantFactors {
            exponents,
            precision: p,
            generators: self.generators,
        })
    }

    /// Decide whether arc-mode truncation was deep enough for the
    /// computed exponents to be the true invariant data.
    ///
    /// Two checks: no relation row may be invisible (identically zero at
    /// this precision) while its exact backing is nonzero; and the
    /// precision must clear the margin `P > sum(finite e) + max(finite
    /// e)`, so that no tail beyond `t^P` can reshuffle the reported
    /// exponents. Jet-mode presentations always pass: there the precision
    /// is the ring itself.
    pub fn stabilization_guard(&self, inv: &InvariantFactors) -> Result<()> {
        if self.mode == ModuleMode::Jet {
            return Ok(());
        }
        let exact = self
            .exact_rows
            .as_ref()
            .expect("arc mode carries exact backing");
        for (i, row) in self.rows.iter().enumerate() {
            let visible = row.iter().any(|s| s.valuation().is_some());
            let backed = exact[i].iter().any(|q| !q.is_zero());
            if !visible && backed {
                return Err(Error::Precision(format!(
                    "relation {i} is invisible at precision {} but is not the zero \
                     relation; recompute at higher precision",
                    self.precision
                )));
            }
        }
        let finite: Vec<usize> = inv
            .exponents
            .iter()
            .copied()
            .filter(|&e| e < inv.precision)
            .collect();
        if let Some(&max) = finite.iter().max() {
            let total: usize = finite.iter().sum();
            if self.precision <= total + max {
                return Err(Error::Precision(format!(
                    "precision {} does not clear the stabilization margin {} + {}",
                    self.precision, total, max
                )));
            }
        }
        Ok(())
    }
}

/// Zero-extend a series to a higher precision. The padded coefficients
/// are only sound when the subsequent arithmetic keeps their influence at
/// or beyond the original ambiguity, which is what the diagonalization
/// multipliers guarantee.
fn lift(s: &TruncSeries, precision: usize) -> TruncSeries {
    let mut coeffs = s.coeffs().to_vec();
    coeffs.resize(precision, FieldElem::zero(s.characteristic()));
    TruncSeries::from_coeffs(s.characteristic(), precision, &coeffs)
}

/// The diagonalized shape of a presented module: one exponent per
/// generator, sorted descending. `precision` marks a generator free at
/// this precision; `0` a killed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub exponents: Vec<usize>,
    pub precision: usize,
    pub generators: usize,
}

impl InvariantFactors {
    fn check_order(&self, m: usize) -> Result<()> {
        if m + 1 > self.precision {
            return Err(Error::Precision(format!(
                "order {m} needs precision at least {}, module has {}",
                m + 1,
                self.precision
            )));
        }
        Ok(())
    }

    /// Number of free summands at this precision.
    pub fn free_rank(&self) -> usize {
        self.exponents
            .iter()
            .filter(|&&e| e == self.precision)
            .count()
    }

    /// The torsion exponents, descending.
    pub fn torsion(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .copied()
            .filter(|&e| e > 0 && e < self.precision)
            .collect()
    }

    /// Minimal generator count of the order-`m` truncation: the number
    /// of summands that survive `t^{m+1}`, free summands included.
    pub fn betti_number(&self, m: usize) -> Result<usize> {
        self.check_order(m)?;
        Ok(self.exponents.iter().filter(|&&e| e >= m + 1).count())
    }

    /// Order of the `i`-th Fitting ideal of the order-`m` truncation,
    /// capped at `m + 1` (the order of a generator of the zero ideal in
    /// `L[t]/t^{m+1}` is by convention `m + 1`). Free summands contribute
    /// the cap. This is the sum of the smallest `G - i` exponents: on the
    /// descending list, the tail from position `i` on.
    pub fn fitting_order(&self, i: usize, m: usize) -> Result<usize> {
        self.check_order(m)?;
        let cap = m + 1;
        let mut total = 0usize;
        for (j, &e) in self.exponents.iter().enumerate() {
            if j < i {
                continue;
            }
            total += if e == self.precision { cap } else { e.min(cap) };
            if total >= cap {
                return Ok(cap);
            }
        }
        Ok(total)
    }

    /// Dimension over `L` of the order-`m` truncation of the cokernel.
    pub fn module_dimension(&self, m: usize) -> Result<usize> {
        self.check_order(m)?;
        Ok(self
            .exponents
            .iter()
            .map(|&e| if e == self.precision { m + 1 } else { e.min(m + 1) })
            .sum())
    }
}

/// Independent Fitting-order check: the minimal valuation among all
/// `(G - i) x (G - i)` minors of the original relation matrix, capped at
/// `m + 1`. Exact minor determinants by Laplace expansion; refuses
/// matrices larger than 6 in either direction.
pub fn fitting_order_oracle(module: &PresentedModule, i: usize, m: usize) -> Result<usize> {
    if m + 1 > module.precision() {
        return Err(Error::Precision(format!(
            "order {m} needs precision at least {}, module has {}",
            m + 1,
            module.precision()
        )));
    }
    let g = module.generators();
    let rows = module.relations();
    if g > 6 || rows > 6 {
        return Err(Error::Unsupported(
            "the minor oracle handles at most 6 generators and 6 relations".into(),
        ));
    }
    let k = g.saturating_sub(i);
    if k == 0 {
        return Ok(0);
    }
    if k > rows {
        return Ok(m + 1);
    }
    let cap = m + 1;
    let mut best = cap;
    let row_sets = subsets_of_size(rows, k);
    let col_sets = subsets_of_size(g, k);
    for rs in &row_sets {
        for cs in &col_sets {
            let d = minor_det(module, rs, cs);
            if let Some(v) = d.valuation() {
                best = best.min(v.min(cap));
            }
        }
    }
    Ok(best)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn minor_det(module: &PresentedModule, rows: &[usize], cols: &[usize]) -> TruncSeries {
    det_rec(module, rows, cols)
}

fn det_rec(module: &PresentedModule, rows: &[usize], cols: &[usize]) -> TruncSeries {
    let ch = module.characteristic();
    let p = module.precision();
    if rows.is_empty() {
        return TruncSeries::monomial(ch, p, FieldElem::one(ch), 0);
    }
    let mut acc = TruncSeries::zero(ch, p);
    let rest_rows = &rows[1..];
    for (pos, &c) in cols.iter().enumerate() {
        let entry = module.rows()[rows[0]][c].clone();
        if entry.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&cc| cc != c)
            .collect();
        let sub = det_rec(module, rest_rows, &rest_cols);
        let signed = if pos % 2 == 0 {
            entry * sub
        } else {
            entry * sub.scale(&FieldElem::from_int(ch, -1))
        };
        acc = acc + signed;
    }
    acc
}

/// Independent dimension check: the order-`m` truncation of the cokernel
/// as a plain `L`-linear quotient, its dimension computed by Gaussian
/// elimination. Generators become `G * (m+1)` basis vectors `g_j t^a`;
/// every relation row contributes its `t^b`-multiples, `b = 0..=m`.
pub fn module_dimension_oracle(module: &PresentedModule, m: usize) -> Result<usize> {
    if m + 1 > module.precision() {
        return Err(Error::Precision(format!(
            "order {m} needs precision at least {}, module has {}",
            m + 1,
            module.precision()
        )));
    }
    let g = module.generators();
    let width = g * (m + 1);
    let mut lin_rows: Vec<Vec<FieldElem>> = Vec::new();
    for row in module.rows() {
        for b in 0..=m {
            let mut lin = vec![FieldElem::zero(module.characteristic()); width];
            for (j, s) in row.iter().enumerate() {
                for a in b..=m {
                    lin[j * (m + 1) + a] = s.coeff(a - b).clone();
                }
            }
            lin_rows.push(lin);
        }
    }
    Ok(width - field_matrix_rank(&lin_rows))
}

/// Recompute a presentation at doubled precision until the stabilization
/// guard passes; the builder receives the precision to materialize at.
pub fn stabilize<F>(
    start_precision: usize,
    max_doublings: u32,
    build: F,
) -> Result<(PresentedModule, InvariantFactors)>
where
    F: Fn(usize) -> Result<PresentedModule>,
{
    let mut precision = start_precision.max(1);
    for _ in 0..=max_doublings {
        let module = build(precision)?;
        let inv = module.diagonalize()?;
        match module.stabilization_guard(&inv) {
            Ok(()) => return Ok((module, inv)),
            Err(_) => precision *= 2,
        }
    }
    Err(Error::Precision(format!(
        "invariant factors did not stabilize after {max_doublings} doublings"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_t_polynomial;

    fn series(src: &str, p: usize) -> TruncSeries {
        crate::expr::parse_series(src, Char::Zero, p).unwrap()
    }

    fn jet_module(p: usize, gens: usize, rows: &[&[&str]]) -> PresentedModule {
        let rows: Vec<Vec<TruncSeries>> = rows
            .iter()
            .map(|r| r.iter().map(|s| series(s, p)).collect())
            .collect();
        PresentedModule::from_series(Char::Zero, p, gens, rows).unwrap()
    }

    fn arc_module(p: usize, gens: usize, rows: &[&[&str]]) -> PresentedModule {
        let rows: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_t_polynomial(s, Char::Zero).unwrap())
                    .collect()
            })
            .collect();
        PresentedModule::from_t_polynomials(Char::Zero, p, gens, rows).unwrap()
    }

    #[test]
    fn diagonal_matrix_reads_off_exponents() {
        let m = jet_module(6, 2, &[&["1", "0"], &["0", "t^2"]]);
        let inv = m.diagonalize().unwrap();
        assert_eq!(inv.exponents, vec![2, 0]);
        assert_eq!(inv.free_rank(), 0);
        assert_eq!(inv.torsion(), vec![2]);
        // d_m counts the summands surviving t^{m+1}.
        assert_eq!(inv.betti_number(0).unwrap(), 1);
        assert_eq!(inv.betti_number(2).unwrap(), 0);
    }

    #[test]
    fn zero_relations_leave_everything_free() {
        let m = jet_module(5, 3, &[&["0", "0", "0"]]);
        let inv = m.diagonalize().unwrap();
        assert_eq!(inv.exponents, vec![5, 5, 5]);
        assert_eq!(inv.free_rank(), 3);
        assert_eq!(inv.module_dimension(3).unwrap(), 12);
    }

    #[test]
    fn unit_entries_cancel_generators() {
        // (1 + t) * g_0 + t^3 * g_1 = 0 kills g_0 against g_1.
        let m = jet_module(8, 2, &[&["1 + t", "t^3"]]);
        let inv = m.diagonalize().unwrap();
        assert_eq!(inv.exponents, vec![8, 0]);
        assert_eq!(inv.free_rank(), 1);
    }

    #[test]
    fn off_diagonal_mixing_is_untangled() {
        // Row-reduce [[t, t], [t, t + t^4]] -> diag(t, t^4); the
        // clearing multiplier is exact even though it owes a lift.
        let m = jet_module(8, 2, &[&["t", "t"], &["t", "t + t^4"]]);
        let inv = m.diagonalize().unwrap();
        assert_eq!(inv.exponents, vec![4, 1]);
        assert_eq!(inv.module_dimension(5).unwrap(), 5);
        assert_eq!(inv.module_dimension(0).unwrap(), 2);
    }

    #[test]
    fn fitting_orders_match_the_minor_oracle() {
        let m = jet_module(9, 3, &[&["t", "0", "t^2"], &["0", "t^3", "t^3"]]);
        let inv = m.diagonalize().unwrap();
        for i in 0..=3usize {
            for order in 0..=7usize {
                assert_eq!(
                    inv.fitting_order(i, order).unwrap(),
                    fitting_order_oracle(&m, i, order).unwrap(),
                    "i = {i}, m = {order}"
                );
            }
        }
    }

    #[test]
    fn dimension_matches_the_gaussian_oracle() {
        let m = jet_module(7, 2, &[&["t + t^2", "t^3"], &["t^2", "t^5"], &["0", "t^6"]]);
        let inv = m.diagonalize().unwrap();
        for order in 0..=6usize {
            assert_eq!(
                inv.module_dimension(order).unwrap(),
                module_dimension_oracle(&m, order).unwrap(),
                "m = {order}"
            );
        }
    }

    #[test]
    fn randomized_invariants_match_oracles() {
        let mut state: u64 = std::env::var("LOGJET_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0x1093_7e2d);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        let p = 8usize;
        for _ in 0..60 {
            let rows = 1 + next() % 3;
            let gens = 1 + next() % 3;
            let mut data: Vec<Vec<TruncSeries>> = Vec::new();
            for _ in 0..rows {
                let mut row = Vec::new();
                for _ in 0..gens {
                    let mut coeffs = Vec::new();
                    for _ in 0..p {
                        let c = next() % 5;
                        coeffs.push(FieldElem::from_int(Char::Zero, c as i64 - 2));
                    }
                    row.push(TruncSeries::from_coeffs(Char::Zero, p, &coeffs));
                }
                data.push(row);
            }
            let m = PresentedModule::from_series(Char::Zero, p, gens, data.clone()).unwrap();
            let inv = m.diagonalize().unwrap();
            for order in 0..=6usize {
                assert_eq!(
                    inv.module_dimension(order).unwrap(),
                    module_dimension_oracle(&m, order).unwrap()
                );
            }
            for i in 0..=gens {
                for order in 0..=6usize {
                    assert_eq!(
                        inv.fitting_order(i, order).unwrap(),
                        fitting_order_oracle(&m, i, order).unwrap()
                    );
                }
            }
            // d_m is non-increasing in m and the Fitting orders are
            // non-decreasing.
            for order in 0..=5usize {
                assert!(inv.betti_number(order).unwrap() >= inv.betti_number(order + 1).unwrap());
                for i in 0..=gens {
                    assert!(
                        inv.fitting_order(i, order).unwrap()
                            <= inv.fitting_order(i, order + 1).unwrap()
                    );
                }
            }
            // Permuting rows and columns changes nothing.
            let mut permuted = data.clone();
            let row_shift = 1.min(permuted.len() - 1);
            permuted.rotate_left(row_shift);
            for row in permuted.iter_mut() {
                row.rotate_left(1.min(gens - 1));
            }
            let m2 = PresentedModule::from_series(Char::Zero, p, gens, permuted).unwrap();
            assert_eq!(m2.diagonalize().unwrap().exponents, inv.exponents);
            // Unimodular row and column operations change nothing either.
            let mut sheared = data.clone();
            if rows >= 2 {
                let c = FieldElem::from_int(Char::Zero, (next() % 7) as i64 - 3);
                let extra = TruncSeries::monomial(Char::Zero, p, c, next() % p);
                for j in 0..gens {
                    let delta = extra.clone() * sheared[1][j].clone();
                    sheared[0][j] = sheared[0][j].clone() + delta;
                }
            }
            if gens >= 2 {
                let c = FieldElem::from_int(Char::Zero, (next() % 7) as i64 - 3);
                let extra = TruncSeries::monomial(Char::Zero, p, c, next() % p);
                for row in sheared.iter_mut() {
                    let delta = extra.clone() * row[0].clone();
                    row[1] = row[1].clone() + delta;
                }
            }
            let m3 = PresentedModule::from_series(Char::Zero, p, gens, sheared).unwrap();
            assert_eq!(m3.diagonalize().unwrap().exponents, inv.exponents);
        }
    }

    #[test]
    fn guard_rejects_invisible_relations() {
        // The relation (t^4, t^3) is invisible at precision 3 though its
        // backing is nonzero: the guard demands more precision, and the
        // doubling driver recovers the true exponents.
        let shallow = arc_module(3, 2, &[&["t^4", "t^3"]]);
        let inv = shallow.diagonalize().unwrap();
        assert_eq!(inv.exponents, vec![3, 3]);
        assert!(shallow.stabilization_guard(&inv).is_err());

        let (stable, inv) = stabilize(3, 8, |p| {
            Ok(arc_module(p, 2, &[&["t^4", "t^3"]]))
        })
        .unwrap();
        assert!(stable.precision() >= 12);
        assert_eq!(inv.free_rank(), 1);
        assert_eq!(inv.torsion(), vec![3]);
        assert_eq!(inv.exponents, vec![stable.precision(), 3]);
    }

    #[test]
    fn guard_accepts_the_genuinely_zero_matrix() {
        let zero = arc_module(3, 2, &[&["0", "0"]]);
        let inv = zero.diagonalize().unwrap();
        assert!(zero.stabilization_guard(&inv).is_ok());
    }

    #[test]
    fn guard_enforces_the_margin() {
        // diag(t^2, t^3) at precision 5: finite sum 5, max 3, needs P > 8.
        let tight = arc_module(5, 2, &[&["t^2", "0"], &["0", "t^3"]]);
        let inv = tight.diagonalize().unwrap();
        assert!(tight.stabilization_guard(&inv).is_err());
        let (deep, inv) = stabilize(5, 4, |p| {
            Ok(arc_module(p, 2, &[&["t^2", "0"], &["0", "t^3"]]))
        })
        .unwrap();
        assert_eq!(deep.precision(), 10);
        assert_eq!(inv.exponents, vec![3, 2]);
    }

    #[test]
    fn jet_mode_never_raises_the_guard() {
        let m = jet_module(3, 2, &[&["0", "0"]]);
        let inv = m.diagonalize().unwrap();
        assert!(m.stabilization_guard(&inv).is_ok());
    }
}
