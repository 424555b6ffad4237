//! The JSON input document: ground field, monoid, chart-presented
//! scheme, arc, relation matrix, and task parameters, with polynomial
//! and series entries written in the expression grammar.
//!
//! Unknown keys are rejected so a typo cannot silently change a run.

use crate::decomp::PresentedModule;
use crate::error::{Error, Result};
use crate::expr::{parse_poly, parse_series, parse_t_polynomial};
use crate::field::Char;
use crate::monoid::{MonoidMapData, MonoidPresentation};
use crate::poly::Poly;
use crate::scheme::{LogArc, LogChartScheme};
use num_bigint::BigInt;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: FieldBlock,
    #[serde(default)]
    pub monoid: Option<MonoidBlock>,
    #[serde(default)]
    pub scheme: Option<SchemeBlock>,
    #[serde(default)]
    pub arc: Option<ArcBlock>,
    #[serde(default)]
    pub module: Option<ModuleBlock>,
    #[serde(default)]
    pub task: Option<TaskBlock>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    #[serde(rename = "char")]
    pub characteristic: u32,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct MonoidBlock {
    pub generators: Vec<String>,
    pub images: Vec<Vec<i64>>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct SchemeBlock {
    pub variables: Vec<String>,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub chart: Vec<String>,
    #[serde(default)]
    pub log_smooth: bool,
    #[serde(default)]
    pub base: Option<BaseBlock>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct BaseBlock {
    pub generators: Vec<String>,
    pub images: Vec<Vec<i64>>,
    /// Per base generator, its exponents on the target generators.
    pub map: Vec<Vec<u64>>,
    #[serde(default)]
    pub variable: Option<String>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ArcBlock {
    pub r: u32,
    pub precision: usize,
    /// Coordinate series, keyed by variable name; polynomials in t.
    pub series: BTreeMap<String, String>,
    #[serde(default)]
    pub contact: Option<Vec<i64>>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub precision: usize,
    pub generators: usize,
    pub rows: Vec<Vec<String>>,
    /// "jet" (default) or "arc".
    #[serde(default)]
    pub mode: Option<String>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct TaskBlock {
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub bound: Option<u64>,
    #[serde(default)]
    pub component: Option<Vec<i64>>,
}

impl InputDocument {
    /// Parse a document from JSON text. Syntax errors carry the byte
    /// offset of the failure.
    pub fn parse(src: &str) -> Result<InputDocument> {
        serde_json::from_str(src).map_err(|e| {
            let offset = offset_of(src, e.line(), e.column());
            Error::Parse {
                offset,
                message: e.to_string(),
            }
        })
    }

    pub fn characteristic(&self) -> Result<Char> {
        match self.field.characteristic {
            0 => Ok(Char::Zero),
            p => Char::prime(p),
        }
    }

    /// The declared monoid, or the trivial one when the block is absent.
    pub fn build_monoid(&self) -> Result<MonoidPresentation> {
        match &self.monoid {
            Some(b) => MonoidPresentation::new(b.generators.clone(), b.images.clone()),
            None => MonoidPresentation::new(Vec::new(), Vec::new()),
        }
    }

    pub fn build_scheme(&self) -> Result<LogChartScheme> {
        let ch = self.characteristic()?;
        let block = self
            .scheme
            .as_ref()
            .ok_or_else(|| Error::Validation("the document has no scheme block".into()))?;
        let monoid = self.build_monoid()?;
        let equations: Result<Vec<Poly>> = block
            .equations
            .iter()
            .map(|src| parse_poly(src, ch, &block.variables))
            .collect();
        let base = match &block.base {
            None => None,
            Some(b) => {
                let base_monoid =
                    MonoidPresentation::new(b.generators.clone(), b.images.clone())?;
                let map = MonoidMapData {
                    exponents: b.map.clone(),
                };
                Some((base_monoid, map, b.variable.clone()))
            }
        };
        LogChartScheme::new(
            ch,
            block.variables.clone(),
            equations?,
            monoid,
            block.chart.clone(),
            block.log_smooth,
            base,
        )
    }

    /// The arc, checked to cover exactly the scheme's variables.
    pub fn build_arc(&self, scheme: &LogChartScheme) -> Result<LogArc> {
        let ch = self.characteristic()?;
        let block = self
            .arc
            .as_ref()
            .ok_or_else(|| Error::Validation("the document has no arc block".into()))?;
        let mut exact = Vec::with_capacity(scheme.variables().len());
        for v in scheme.variables() {
            let src = block.series.get(v).ok_or_else(|| {
                Error::Validation(format!("the arc assigns no series to variable {v}"))
            })?;
            exact.push(parse_t_polynomial(src, ch)?);
        }
        for k in block.series.keys() {
            if !scheme.variables().contains(k) {
                return Err(Error::Validation(format!(
                    "the arc assigns a series to unknown variable {k}"
                )));
            }
        }
        let contact = block
            .contact
            .as_ref()
            .map(|c| c.iter().map(|&v| BigInt::from(v)).collect());
        LogArc::new(ch, block.r, contact, exact, block.precision)
    }

    pub fn build_module(&self) -> Result<PresentedModule> {
        let ch = self.characteristic()?;
        let block = self
            .module
            .as_ref()
            .ok_or_else(|| Error::Validation("the document has no module block".into()))?;
        match block.mode.as_deref().unwrap_or("jet") {
            "jet" => {
                let rows: Result<Vec<Vec<_>>> = block
                    .rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|src| parse_series(src, ch, block.precision))
                            .collect()
                    })
                    .collect();
                PresentedModule::from_series(ch, block.precision, block.generators, rows?)
            }
            "arc" => {
                let rows: Result<Vec<Vec<_>>> = block
                    .rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|src| parse_t_polynomial(src, ch))
                            .collect()
                    })
                    .collect();
                PresentedModule::from_t_polynomials(
                    ch,
                    block.precision,
                    block.generators,
                    rows?,
                )
            }
            other => Err(Error::Validation(format!(
                "unknown module mode {other:?}: expected \"jet\" or \"arc\""
            ))),
        }
    }
}

/// Byte offset of a 1-based line/column position.
fn offset_of(src: &str, line: usize, column: usize) -> usize {
    let mut remaining = line.saturating_sub(1);
    let mut offset = 0usize;
    for (i, b) in src.bytes().enumerate() {
        if remaining == 0 {
            return i + column.saturating_sub(1);
        }
        if b == b'\n' {
            remaining -= 1;
            offset = i + 1;
        }
    }
    offset + column.saturating_sub(1)
}
