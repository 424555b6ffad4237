//! Truncated power series L[t]/t^P with an explicit precision P.
//!
//! A series stores exactly P coefficients c_0..c_{P-1}; everything from t^P
//! on is unknown. All series entering one computation must share the same
//! precision — binary operations assert it. Division by t never happens
//! implicitly: `shift_right` is the only way, it checks the valuation, and
//! it honestly *lowers* the precision of the result.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Char, FieldElem};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    ch: Char,
    coeffs: Vec<FieldElem>,
}

impl TruncSeries {
    /// The zero series at the given precision (must be positive).
    pub fn zero(ch: Char, precision: usize) -> TruncSeries {
        assert!(precision > 0, "precision must be positive");
        TruncSeries {
            ch,
            coeffs: vec![FieldElem::zero(ch); precision],
        }
    }

    /// Build from coefficients c_0.. (padded with zeros up to `precision`).
    pub fn from_coeffs(ch: Char, precision: usize, coeffs: &[FieldElem]) -> TruncSeries {
        assert!(precision > 0, "precision must be positive");
        assert!(coeffs.len() <= precision, "more coefficients than precision");
        let mut s = TruncSeries::zero(ch, precision);
        for (i, c) in coeffs.iter().enumerate() {
            assert_eq!(c.characteristic(), ch, "coefficient from wrong field");
            s.coeffs[i] = c.clone();
        }
        s
    }

    /// The monomial a*t^k (k < precision).
    pub fn monomial(ch: Char, precision: usize, a: FieldElem, k: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(ch, precision);
        assert!(k < precision, "monomial exponent outside precision");
        s.coeffs[k] = a;
        s
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &FieldElem {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Order of vanishing: the least k with c_k != 0, or `None` when every
    /// stored coefficient vanishes (reported as ">= P" by callers).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Truncate to a smaller precision.
    pub fn truncate(&self, precision: usize) -> TruncSeries {
        assert!(precision > 0 && precision <= self.precision());
        TruncSeries {
            ch: self.ch,
            coeffs: self.coeffs[..precision].to_vec(),
        }
    }

    /// Divide by t^k. Requires every nonzero coefficient to sit at index
    /// >= k; the result has precision P - k (the top k coefficients of the
    /// quotient are genuinely unknown).
    pub fn shift_right(&self, k: usize) -> Result<TruncSeries> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.precision() {
            return Err(Error::Precision(format!(
                "cannot divide by t^{k} at precision {}",
                self.precision()
            )));
        }
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::Arithmetic(format!(
                    "division by t^{k} of a series of valuation {v}"
                )));
            }
        }
        Ok(TruncSeries {
            ch: self.ch,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiply by t^k at fixed precision (top coefficients fall away).
    pub fn shift_left(&self, k: usize) -> TruncSeries {
        let p = self.precision();
        let mut coeffs = vec![FieldElem::zero(self.ch); p];
        for i in 0..p.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        TruncSeries { ch: self.ch, coeffs }
    }

    pub fn scale(&self, a: &FieldElem) -> TruncSeries {
        TruncSeries {
            ch: self.ch,
            coeffs: self.coeffs.iter().map(|c| c.clone() * a.clone()).collect(),
        }
    }

    /// Inverse of a unit (nonzero constant term), by the usual recurrence.
    pub fn unit_inverse(&self) -> Result<TruncSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Arithmetic(
                "unit_inverse of a series with zero constant term".into(),
            ));
        }
        let p = self.precision();
        let c0_inv = self.coeffs[0].inv()?;
        let mut inv = vec![FieldElem::zero(self.ch); p];
        inv[0] = c0_inv.clone();
        for n in 1..p {
            // c_0 * inv_n + sum_{k=1..n} c_k * inv_{n-k} = 0
            let mut acc = FieldElem::zero(self.ch);
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * inv[n - k].clone();
            }
            inv[n] = -(acc * c0_inv.clone());
        }
        Ok(TruncSeries { ch: self.ch, coeffs: inv })
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut acc = TruncSeries::monomial(
            self.ch,
            self.precision(),
            FieldElem::one(self.ch),
            0,
        );
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn assert_compatible(&self, other: &TruncSeries) {
        assert_eq!(self.ch, other.ch, "series over different ground fields");
        assert_eq!(
            self.precision(),
            other.precision(),
            "series at different precisions"
        );
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        self.assert_compatible(&rhs);
        let coeffs = self
            .coeffs
            .into_iter()
            .zip(rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncSeries { ch: self.ch, coeffs }
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        self + (-rhs)
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            ch: self.ch,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        self.assert_compatible(&rhs);
        let p = self.precision();
        let mut coeffs = vec![FieldElem::zero(self.ch); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= p {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries { ch: self.ch, coeffs }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = display_sign(c);
            if wrote {
                write!(f, " {} ", if sign { "-" } else { "+" })?;
            } else if sign {
                write!(f, "-")?;
            }
            let coeff_is_one = mag == "1";
            match (k, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}

/// Split a scalar into (is_negative, magnitude string) for display. Prime
/// field elements are never negative (canonical representatives 0..p).
pub(crate) fn display_sign(c: &FieldElem) -> (bool, String) {
    match c {
        FieldElem::Rat(r) => {
            if r < &num_rational::BigRational::from(num_bigint::BigInt::from(0)) {
                (true, FieldElem::Rat(-r.clone()).to_string())
            } else {
                (false, c.to_string())
            }
        }
        FieldElem::Mod { .. } => (false, c.to_string()),
    }
}
