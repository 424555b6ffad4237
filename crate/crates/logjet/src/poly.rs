//! Sparse multivariate polynomials over the ground field.
//!
//! Terms live in a BTreeMap keyed by exponent vectors under graded
//! lexicographic order, so iteration, equality and textual rendering are
//! all canonical. Every polynomial carries the full ordered variable list
//! of its ambient ring; operations on polynomials from different rings
//! panic rather than guess an embedding.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Char, FieldElem};
use crate::series::TruncSeries;

/// Exponent vector under graded-lex order: compare total degree first,
/// then lexicographically on the exponents in variable order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Exponent-wise quotient; caller guarantees divisibility.
    pub fn quotient(&self, divisor: &Mono) -> Mono {
        debug_assert!(divisor.divides(self));
        Mono(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ch: Char,
    vars: Vec<String>,
    /// Nonzero terms only; normalized on every mutation.
    terms: BTreeMap<Mono, FieldElem>,
}

impl Poly {
    pub fn zero(ch: Char, vars: &[String]) -> Poly {
        Poly {
            ch,
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ch: Char, vars: &[String], c: FieldElem) -> Poly {
        let mut p = Poly::zero(ch, vars);
        p.add_term(Mono(vec![0; p.vars.len()]), c);
        p
    }

    pub fn int_constant(ch: Char, vars: &[String], n: i64) -> Poly {
        Poly::constant(ch, vars, FieldElem::from_int(ch, n))
    }

    /// The i-th variable as a polynomial.
    pub fn var(ch: Char, vars: &[String], i: usize) -> Poly {
        let mut exp = vec![0; vars.len()];
        exp[i] = 1;
        let mut p = Poly::zero(ch, vars);
        p.add_term(Mono(exp), FieldElem::one(ch));
        p
    }

    /// A single monomial c * x^exp.
    pub fn monomial(ch: Char, vars: &[String], exp: Vec<u32>, c: FieldElem) -> Poly {
        assert_eq!(exp.len(), vars.len());
        let mut p = Poly::zero(ch, vars);
        p.add_term(Mono(exp), c);
        p
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        assert_eq!(c.characteristic(), self.ch, "coefficient from wrong field");
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert_eq!(self.ch, other.ch, "polynomials over different ground fields");
        assert_eq!(self.vars, other.vars, "polynomials from different rings");
    }

    pub fn scale(&self, a: &FieldElem) -> Poly {
        let mut out = Poly::zero(self.ch, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * a.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::int_constant(self.ch, &self.vars, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.ch, &self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[i] -= 1;
            out.add_term(Mono(exp), c.clone() * FieldElem::from_int(self.ch, e as i64));
        }
        out
    }

    /// Evaluate at a point of L^n.
    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = FieldElem::zero(self.ch);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * point[i].pow(e);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Evaluate under a ring homomorphism sending each variable to a
    /// truncated series. All assigned series must share one precision;
    /// the result lives at that precision. A missing assignment (length
    /// mismatch) is an error.
    pub fn eval_series(&self, assignment: &[TruncSeries]) -> Result<TruncSeries> {
        if assignment.len() != self.vars.len() {
            return Err(Error::Validation(format!(
                "assignment covers {} of {} variables",
                assignment.len(),
                self.vars.len()
            )));
        }
        let precision = match assignment.first() {
            Some(s) => s.precision(),
            None => 1,
        };
        for s in assignment {
            if s.precision() != precision {
                return Err(Error::Precision(
                    "series assignment mixes precisions".into(),
                ));
            }
        }
        let mut acc = TruncSeries::zero(self.ch, precision);
        for (m, c) in &self.terms {
            let mut term = TruncSeries::monomial(self.ch, precision, c.clone(), 0);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * assignment[i].pow(e);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for every variable (composition).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let target_vars = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        let mut acc = Poly::zero(self.ch, &target_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(self.ch, &target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The terms in descending graded-lex order (canonical rendering order).
    fn terms_desc(&self) -> Vec<(&Mono, &FieldElem)> {
        self.terms.iter().rev().collect()
    }

    /// Largest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// View a univariate polynomial as a truncated series; terms at or
    /// above the precision are truncated away, which is the contract.
    pub fn univariate_series(&self, precision: usize) -> Result<TruncSeries> {
        if self.vars.len() != 1 {
            return Err(Error::Validation(format!(
                "expected a univariate polynomial, got one in {} variables",
                self.vars.len()
            )));
        }
        let mut s = TruncSeries::zero(self.ch, precision);
        for (m, c) in &self.terms {
            let k = m.0[0] as usize;
            if k < precision {
                s = s + TruncSeries::monomial(self.ch, precision, c.clone(), k);
            }
        }
        Ok(s)
    }

    /// Normal form of `self` under multivariate division by `gens`, taken
    /// in their listed order with graded-lex leading terms. The remainder
    /// has no term divisible by any divisor's leading monomial, and
    /// `self - remainder` lies in the ideal generated by `gens`. This is
    /// plain division, not a Groebner normal form: it is only canonical
    /// modulo the ideal when the listed generators happen to form a basis
    /// compatible with the order, which is all the membership checks here
    /// need (the checked element is expected to reduce to zero).
    pub fn reduce(&self, gens: &[Poly]) -> Poly {
        let mut p = self.clone();
        let mut rem = Poly::zero(self.ch, &self.vars);
        while let Some((m, c)) = p.leading_term() {
            let m = m.clone();
            let c = c.clone();
            let mut divided = false;
            for g in gens {
                self.assert_same_ring(g);
                let (lm, lc) = match g.leading_term() {
                    Some(lead) => lead,
                    None => continue,
                };
                if lm.divides(&m) {
                    let ratio = c.div(lc).expect("leading coefficient is nonzero");
                    let q = Poly::monomial(self.ch, &self.vars, m.quotient(lm).0, ratio);
                    p = &p - &(&q * g);
                    divided = true;
                    break;
                }
            }
            if !divided {
                let keep = Poly::monomial(self.ch, &self.vars, m.0.clone(), c);
                rem = &rem + &keep;
                p = &p - &keep;
            }
        }
        rem
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(self.ch, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        let mut out = Poly::zero(self.ch, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exp: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(exp), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        for (m, c) in self.terms_desc() {
            let (neg, mag) = crate::series::display_sign(c);
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
            wrote = true;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> (Char, Vec<String>) {
        (Char::Zero, vec!["x".into(), "y".into()])
    }

    fn x() -> Poly {
        let (ch, v) = ring();
        Poly::var(ch, &v, 0)
    }

    fn y() -> Poly {
        let (ch, v) = ring();
        Poly::var(ch, &v, 1)
    }

    #[test]
    fn graded_lex_rendering_is_canonical() {
        // y^2 - x^3 renders largest degree first.
        let f = &y().pow(2) - &x().pow(3);
        assert_eq!(f.to_string(), "-x^3 + y^2");
        let g = &(&x() * &y()) + &Poly::int_constant(Char::Zero, &ring().1, 1);
        assert_eq!(g.to_string(), "x*y + 1");
    }

    #[test]
    fn cusp_equation_vanishes_on_its_parametrization() {
        // y^2 - x^3 at (x, y) = (t^2, t^3) with P = 10 evaluates to 0.
        let f = &y().pow(2) - &x().pow(3);
        let t2 = TruncSeries::monomial(Char::Zero, 10, FieldElem::from_int(Char::Zero, 1), 2);
        let t3 = TruncSeries::monomial(Char::Zero, 10, FieldElem::from_int(Char::Zero, 1), 3);
        let v = f.eval_series(&[t2, t3]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn eval_series_rejects_missing_assignment() {
        let f = &x() + &y();
        let t = TruncSeries::monomial(Char::Zero, 4, FieldElem::from_int(Char::Zero, 1), 1);
        assert!(f.eval_series(&[t]).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let f = &y().pow(2) - &x().pow(3);
        let fx = f.derivative(0);
        assert_eq!(fx.to_string(), "-3*x^2");
        let p = [
            FieldElem::from_int(Char::Zero, 2),
            FieldElem::from_int(Char::Zero, 3),
        ];
        assert_eq!(f.eval(&p), FieldElem::from_int(Char::Zero, 1)); // 9 - 8
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = &x() - &x();
        assert!(f.is_zero());
        assert_eq!(f.to_string(), "0");
    }

    #[test]
    fn division_normal_form() {
        let ch = Char::Zero;
        let v: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let xv = Poly::var(ch, &v, 0);
        let yv = Poly::var(ch, &v, 1);
        let zv = Poly::var(ch, &v, 2);
        // x*y - z^2: leading term x*y under graded-lex.
        let g = &(&xv * &yv) - &zv.pow(2);
        assert!(g.reduce(&[g.clone()]).is_zero());
        // x^2*y^2 - z^4 = (x*y + z^2) * g is in the ideal.
        let f = &(&xv.pow(2) * &yv.pow(2)) - &zv.pow(4);
        assert!(f.reduce(&[g.clone()]).is_zero());
        // x*y*z reduces to z^3; x + y is untouched.
        let h = &(&xv * &yv) * &zv;
        assert_eq!(h.reduce(&[g.clone()]).to_string(), "z^3");
        let u = &xv + &yv;
        assert_eq!(u.reduce(&[g]).to_string(), "x + y");
    }
}
