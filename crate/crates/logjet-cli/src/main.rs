//! Command-line front end: reads a JSON input document describing a field,
//! a monoid, a chart-presented scheme, and optionally an arc, a module, or
//! task parameters, then runs one computation and prints a deterministic
//! report in text or JSON.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 validation or parse error,
//! 3 precision-guard failure.

use clap::{Parser, Subcommand, ValueEnum};
use logjet::decomp::{stabilize, ModuleMode};
use logjet::diff::{build_log_differentials, relative_log_differentials, restrict_along_arc};
use logjet::embdim::{arc_jet_point, embdim_formula, embdim_oracle, embdim_relative, EmbDimReport};
use logjet::input::InputDocument;
use logjet::jets::{
    eval_space_components, log_jet_component_presentation, ordinary_jet_presentation,
    ComponentDescriptor, ComponentKind,
};
use logjet::report::{Node, Report};
use logjet::scheme::{LogArc, LogChartScheme};
use logjet::series::TruncSeries;
use logjet::{Error, Result};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "logjet",
    version,
    about = "Exact log jet and evaluation space computations on chart-presented schemes"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Monoid invariants: rank, irreducibles, kernel, homs, dual Hilbert basis.
    Monoid {
        file: PathBuf,
        /// Bound on generator values in the hom enumeration
        /// (default: the task block's bound, then 2).
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Components of the order-0 evaluation space, indexed by contact homs.
    Evsp {
        file: PathBuf,
        /// Bound on generator values in the component enumeration
        /// (default: the task block's bound, then 2).
        #[arg(long)]
        bound: Option<u64>,
        /// Ramification order of the test disks (default 1).
        #[arg(short)]
        r: Option<u32>,
    },
    /// One jet space component presentation.
    Jets {
        file: PathBuf,
        /// Jet order (default: the task block's m).
        #[arg(short)]
        m: Option<usize>,
        /// Contact hom indexing the component, comma separated
        /// (default: the task block's component).
        #[arg(long, value_delimiter = ',')]
        component: Option<Vec<i64>>,
        /// Ramification order; 0 selects the unit-jet presentation (default 1).
        #[arg(short)]
        r: Option<u32>,
    },
    /// Invariant factors and dimension data of a presented module.
    Module {
        file: PathBuf,
        /// Order at which to read Betti numbers, Fitting orders, and the
        /// dimension (default: the task block's m, then precision - 1).
        #[arg(short)]
        m: Option<usize>,
    },
    /// Log differential presentation, and its restriction along the arc.
    Jacobian {
        file: PathBuf,
        /// Present the differentials relative to the declared base.
        #[arg(long)]
        relative: bool,
    },
    /// Embedding dimension of the jet space along the document's arc.
    Embdim {
        file: PathBuf,
        /// Jet order (default: the task block's m).
        #[arg(short)]
        m: Option<usize>,
        /// Also evaluate the component-presentation oracle and compare;
        /// a mismatch exits with code 1.
        #[arg(long)]
        oracle: bool,
        /// Report relative to the declared base.
        #[arg(long)]
        relative: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Precision(_) => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32> {
    let (report, code) = match &cli.command {
        Command::Monoid { file, bound } => (monoid_report(&load(file)?, *bound)?, 0),
        Command::Evsp { file, bound, r } => (evsp_report(&load(file)?, *bound, *r)?, 0),
        Command::Jets {
            file,
            m,
            component,
            r,
        } => (jets_report(&load(file)?, *m, component.clone(), *r)?, 0),
        Command::Module { file, m } => (module_report(&load(file)?, *m)?, 0),
        Command::Jacobian { file, relative } => (jacobian_report(&load(file)?, *relative)?, 0),
        Command::Embdim {
            file,
            m,
            oracle,
            relative,
        } => embdim_run(&load(file)?, *m, *oracle, *relative)?,
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(code)
}

fn load(path: &Path) -> Result<InputDocument> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&src)
}

fn task_m(doc: &InputDocument) -> Option<usize> {
    doc.task.as_ref().and_then(|t| t.m)
}

fn task_bound(doc: &InputDocument) -> Option<u64> {
    doc.task.as_ref().and_then(|t| t.bound)
}

fn need_m(doc: &InputDocument, flag: Option<usize>) -> Result<usize> {
    flag.or_else(|| task_m(doc)).ok_or_else(|| {
        Error::Validation("no jet order: pass -m or set m in the task block".into())
    })
}

/// A big integer as a report node; values outside i64 fall back to text.
fn big_node(v: &BigInt) -> Node {
    match v.to_string().parse::<i64>() {
        Ok(n) => Node::Int(n),
        Err(_) => Node::str(v.to_string()),
    }
}

fn big_row(vs: &[BigInt]) -> Vec<Node> {
    vs.iter().map(big_node).collect()
}

fn tuple_text(vs: &[BigInt]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn monoid_report(doc: &InputDocument, bound_flag: Option<u64>) -> Result<Report> {
    let q = doc.build_monoid()?;
    let bound = bound_flag.or_else(|| task_bound(doc)).unwrap_or(2);
    let mut rep = Report::new("monoid invariants");
    rep.push("generators", Node::usize(q.num_gens()));
    rep.push("names", Node::list_of_str(q.names().iter().cloned()));
    rep.push(
        "images",
        Node::Rows((0..q.num_gens()).map(|i| big_row(q.gen_image(i))).collect()),
    );
    rep.push("group rank", Node::usize(q.gp_rank()));
    rep.push("irreducibles", Node::usize(q.irreducible_indices().len()));
    rep.push(
        "irreducible names",
        Node::list_of_str(
            q.irreducible_indices()
                .iter()
                .map(|&i| q.names()[i].clone()),
        ),
    );
    rep.push(
        "kernel basis",
        Node::Rows(q.kernel_basis().iter().map(|w| big_row(w)).collect()),
    );
    let homs = q.enumerate_homs_to_n(bound);
    rep.push("hom bound", Node::uint(bound));
    rep.push("homs", Node::usize(homs.len()));
    rep.push(
        "hom list",
        Node::Rows(homs.iter().map(|h| big_row(h)).collect()),
    );
    let basis = q.hilbert_basis_dual();
    rep.push(
        "dual Hilbert basis",
        Node::Rows(basis.iter().map(|h| big_row(h)).collect()),
    );
    Ok(rep)
}

fn component_entries(c: &ComponentDescriptor) -> Vec<(String, Node)> {
    let mut entries = vec![
        ("variables".to_string(), Node::usize(c.variables.len())),
        ("equations".to_string(), Node::usize(c.equations.len())),
        (
            "coordinates".to_string(),
            Node::list_of_str(c.variables.iter().cloned()),
        ),
    ];
    if !c.equations.is_empty() {
        entries.push((
            "equation list".to_string(),
            Node::Rows(
                c.equations
                    .iter()
                    .map(|f| vec![Node::str(f.to_string())])
                    .collect(),
            ),
        ));
    }
    entries.push((
        "underlying map".to_string(),
        Node::Rows(
            c.underlying_map
                .iter()
                .map(|(v, f)| vec![Node::str(v.clone()), Node::str(f.to_string())])
                .collect(),
        ),
    ));
    entries
}

fn evsp_report(doc: &InputDocument, bound_flag: Option<u64>, r_flag: Option<u32>) -> Result<Report> {
    let s = doc.build_scheme()?;
    let bound = bound_flag.or_else(|| task_bound(doc)).unwrap_or(2);
    let r = r_flag.unwrap_or(1);
    let comps = eval_space_components(&s, r, bound)?;
    let mut rep = Report::new("evaluation space components");
    rep.push("r", Node::uint(r as u64));
    rep.push("bound", Node::uint(bound));
    rep.push("components", Node::usize(comps.len()));
    for c in &comps {
        let label = c
            .contact
            .as_deref()
            .map(tuple_text)
            .unwrap_or_else(|| "()".to_string());
        rep.push(format!("component {label}"), Node::Map(component_entries(c)));
    }
    Ok(rep)
}

fn kind_text(kind: ComponentKind) -> &'static str {
    match kind {
        ComponentKind::LogJet => "log jet",
        ComponentKind::UnitJet => "unit jet",
        ComponentKind::Ordinary => "ordinary",
    }
}

fn jets_report(
    doc: &InputDocument,
    m_flag: Option<usize>,
    component_flag: Option<Vec<i64>>,
    r_flag: Option<u32>,
) -> Result<Report> {
    let s = doc.build_scheme()?;
    let m = need_m(doc, m_flag)?;
    let r = r_flag.unwrap_or(1);
    let component =
        component_flag.or_else(|| doc.task.as_ref().and_then(|t| t.component.clone()));
    let pres = if r == 0 {
        if component.is_some() {
            return Err(Error::Validation(
                "r = 0 presentations are not indexed by a contact hom".into(),
            ));
        }
        log_jet_component_presentation(&s, None, 0, m)?
    } else {
        let c: Vec<BigInt> = match component {
            Some(values) => values.into_iter().map(BigInt::from).collect(),
            None if s.monoid().num_gens() == 0 => Vec::new(),
            None => {
                return Err(Error::Validation(
                    "no component index: pass --component or set it in the task block".into(),
                ))
            }
        };
        log_jet_component_presentation(&s, Some(&c), r, m)?
    };
    let mut rep = Report::new("jet component presentation");
    rep.push("kind", Node::str(kind_text(pres.kind)));
    rep.push("r", Node::uint(pres.r as u64));
    rep.push("m", Node::usize(pres.m));
    if let Some(c) = &pres.contact {
        rep.push("component", Node::List(big_row(c)));
    }
    for (key, node) in component_entries(&pres) {
        rep.push(key, node);
    }
    if s.log_smooth() {
        rep.push(
            "expected dimension",
            Node::Int(pres.variables.len() as i64 - pres.equations.len() as i64),
        );
    }
    Ok(rep)
}

fn module_report(doc: &InputDocument, m_flag: Option<usize>) -> Result<Report> {
    let module = doc.build_module()?;
    let inv = module.diagonalize()?;
    module.stabilization_guard(&inv)?;
    let m = m_flag
        .or_else(|| task_m(doc))
        .unwrap_or(module.precision() - 1);
    let mut rep = Report::new("module decomposition");
    rep.push("generators", Node::usize(module.generators()));
    rep.push("relations", Node::usize(module.relations()));
    rep.push("precision", Node::usize(module.precision()));
    rep.push(
        "mode",
        Node::str(match module.mode() {
            ModuleMode::Jet => "jet",
            ModuleMode::Arc => "arc",
        }),
    );
    rep.push(
        "invariant factors",
        Node::list_of_usize(inv.exponents.iter().copied()),
    );
    rep.push("free rank", Node::usize(inv.free_rank()));
    rep.push("torsion exponents", Node::list_of_usize(inv.torsion()));
    rep.push("m", Node::usize(m));
    rep.push("betti number", Node::usize(inv.betti_number(m)?));
    let mut orders = Vec::new();
    for i in 0..=module.generators() {
        orders.push(vec![Node::usize(i), Node::usize(inv.fitting_order(i, m)?)]);
    }
    rep.push("fitting orders", Node::Rows(orders));
    rep.push("module dimension", Node::usize(inv.module_dimension(m)?));
    Ok(rep)
}

fn valuation_node(e: &TruncSeries) -> Node {
    match e.valuation() {
        Some(v) => Node::usize(v),
        None => Node::str(format!(">= {}", e.precision())),
    }
}

fn jacobian_report(doc: &InputDocument, relative: bool) -> Result<Report> {
    let s = doc.build_scheme()?;
    let omega = if relative {
        relative_log_differentials(&s)?
    } else {
        build_log_differentials(&s)
    };
    let title = if relative {
        "relative log differential presentation"
    } else {
        "log differential presentation"
    };
    let mut rep = Report::new(title);
    rep.push("generators", Node::usize(omega.num_generators()));
    rep.push("columns", Node::list_of_str(omega.labels().iter().cloned()));
    rep.push("rows", Node::usize(omega.rows().len()));
    for (i, row) in omega.rows().iter().enumerate() {
        rep.push(
            format!("row {i}"),
            Node::Map(vec![
                ("source".to_string(), Node::str(omega.row_labels()[i].clone())),
                (
                    "entries".to_string(),
                    Node::list_of_str(row.iter().map(|f| f.to_string())),
                ),
            ]),
        );
    }
    if doc.arc.is_some() {
        let arc = doc.build_arc(&s)?;
        let module = restrict_along_arc(&s, &omega, &arc)?;
        rep.push("restriction precision", Node::usize(module.precision()));
        for (i, row) in module.rows().iter().enumerate() {
            rep.push(
                format!("restricted row {i}"),
                Node::Map(vec![
                    (
                        "entries".to_string(),
                        Node::list_of_str(row.iter().map(|e| e.to_string())),
                    ),
                    (
                        "valuations".to_string(),
                        Node::List(row.iter().map(valuation_node).collect()),
                    ),
                ]),
            );
        }
        let (_, inv) = stabilize(arc.precision(), 8, |p| {
            let deeper = if p == arc.precision() {
                arc.clone()
            } else {
                arc.re_materialized(p)?
            };
            restrict_along_arc(&s, &omega, &deeper)
        })?;
        rep.push("stabilized precision", Node::usize(inv.precision));
        rep.push(
            "invariant factors",
            Node::list_of_usize(inv.exponents.iter().copied()),
        );
        rep.push("free rank", Node::usize(inv.free_rank()));
        rep.push("torsion exponents", Node::list_of_usize(inv.torsion()));
    }
    Ok(rep)
}

/// Independent embedding-dimension oracle: flatten the arc's jet point
/// into the matching component presentation and count ambient coordinates
/// minus the Jacobian rank there.
fn presentation_oracle(s: &LogChartScheme, arc: &LogArc, m: usize) -> Result<i64> {
    let pres = if s.monoid().num_gens() == 0 {
        ordinary_jet_presentation(s, m)?
    } else {
        log_jet_component_presentation(s, arc.contact(), arc.r(), m)?
    };
    let point = arc_jet_point(s, arc, m)?;
    Ok(embdim_oracle(&pres, &point)? as i64)
}

fn oracle_exit_code(oracle: Option<(i64, bool)>) -> i32 {
    match oracle {
        Some((_, false)) => 1,
        _ => 0,
    }
}

fn embdim_report(view: &EmbDimReport) -> Report {
    let mut rep = Report::new("embedding dimension");
    rep.push("m", Node::usize(view.m));
    rep.push("relative", Node::Bool(view.relative));
    rep.push("formula value", Node::Int(view.value));
    rep.push("equality", Node::Bool(view.equality));
    rep.push("betti number", Node::usize(view.d));
    rep.push("fitting order", Node::usize(view.fitting_order));
    rep.push("rank", Node::usize(view.rank));
    rep.push("irreducibles", Node::usize(view.irreducibles));
    rep.push("kernel rank", Node::usize(view.kernel_rank));
    rep.push("point dimension", Node::usize(view.point_dim));
    rep.push(
        "invariant factors",
        Node::list_of_usize(view.invariant_factors.iter().copied()),
    );
    rep.push("stabilized precision", Node::usize(view.precision));
    if view.relative {
        rep.push("interpretation", Node::Bool(view.interpretation));
    }
    if let Some((value, agrees)) = view.oracle {
        rep.push("oracle value", Node::Int(value));
        rep.push("oracle agrees", Node::Bool(agrees));
    }
    rep
}

fn embdim_run(
    doc: &InputDocument,
    m_flag: Option<usize>,
    oracle: bool,
    relative: bool,
) -> Result<(Report, i32)> {
    let s = doc.build_scheme()?;
    let arc = doc.build_arc(&s)?;
    let m = need_m(doc, m_flag)?;
    if oracle && relative {
        return Err(Error::Unsupported(
            "the presentation oracle covers absolute reports only".into(),
        ));
    }
    let mut view = if relative {
        embdim_relative(&s, &arc, m, None)?
    } else {
        embdim_formula(&s, &arc, m, None)?
    };
    if oracle {
        let value = presentation_oracle(&s, &arc, m)?;
        view.oracle = Some((value, value == view.value));
    }
    let code = oracle_exit_code(view.oracle);
    Ok((embdim_report(&view), code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_mismatch_maps_to_exit_one() {
        assert_eq!(oracle_exit_code(None), 0);
        assert_eq!(oracle_exit_code(Some((9, true))), 0);
        assert_eq!(oracle_exit_code(Some((8, false))), 1);
    }

    #[test]
    fn big_values_render_as_integers() {
        assert_eq!(big_node(&BigInt::from(-3)), Node::Int(-3));
        let huge: BigInt = BigInt::from(1_u64 << 62) * BigInt::from(1_u64 << 62);
        assert_eq!(huge.to_string().parse::<i64>().ok(), None);
        assert!(matches!(big_node(&huge), Node::Str(_)));
    }
}
