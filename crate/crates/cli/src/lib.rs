//! Command implementations behind the `hyperembed` binary.
//!
//! Every command returns its complete standard output as a string so the
//! binary and the tests share one code path. Failures carry the process
//! exit code: 1 for a mathematical refusal, 2 for bad input.

pub mod corpus;

use std::fmt::Write as _;
use std::path::Path;

use hyperembed::groebner::{Ideal, MonomialOrder, OrderKind};
use hyperembed::invariants::{compare_invariants_bounded, quasi_singular, InvariantVerdict, QuasiSingularReport};
use hyperembed::presentations::{read_certificate, verify_certificate};
use hyperembed::textio::{read_system, render_with_order, RenderStyle, SystemFile};
use hyperembed::{Error, Polynomial, VarSet, ZeroCount};

pub const EXIT_REFUSAL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn refusal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_REFUSAL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Io { .. }
            | Error::UnknownVariable(_)
            | Error::InvalidVarSet(_)
            | Error::RingMismatch
            | Error::ArityMismatch { .. }
            | Error::EmptyList
            | Error::Presentation(_) => Failure::input(e.to_string()),
            _ => Failure::refusal(e.to_string()),
        }
    }
}

pub type CmdResult = Result<String, Failure>;

/// Outcome of a command that prints a report even when it fails.
pub struct Report {
    pub stdout: String,
    pub code: u8,
}

pub fn load_system(path: &Path) -> Result<SystemFile, Failure> {
    read_system(path).map_err(|e| match e {
        Error::Parse { span, message } => Failure::input(format!("{}:{span}: {message}", path.display())),
        other => Failure::from(other),
    })
}

pub fn select(system: &SystemFile, names: Option<&[String]>) -> Result<Vec<Polynomial>, Failure> {
    match names {
        None => Ok(system.polynomials()),
        Some(names) => names
            .iter()
            .map(|n| {
                system
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Failure::input(format!("no polynomial named `{n}`")))
            })
            .collect(),
    }
}

pub fn parse_order(kind: &str, ring: &VarSet, priority: Option<&[String]>) -> Result<MonomialOrder, Failure> {
    let kind: OrderKind = kind.parse().map_err(Failure::input)?;
    match priority {
        None => Ok(MonomialOrder::new(kind, ring)),
        Some(p) => MonomialOrder::with_priority(kind, ring, p).map_err(|e| Failure::input(e.to_string())),
    }
}

/// Reduced basis lines, leading monomials descending.
pub fn basis_lines(basis: &[Polynomial], ord: &MonomialOrder) -> Vec<String> {
    let mut sorted: Vec<&Polynomial> = basis.iter().collect();
    sorted.sort_by(|a, b| {
        let la = ord.leading_monomial(a).expect("basis elements are nonzero");
        let lb = ord.leading_monomial(b).expect("basis elements are nonzero");
        ord.cmp(lb, la)
    });
    sorted
        .into_iter()
        .map(|g| render_with_order(g, RenderStyle::IntegerPrimitive, ord))
        .collect()
}

pub fn cmd_groebner(input: &Path, order: &str, priority: Option<&[String]>, names: Option<&[String]>) -> CmdResult {
    let system = load_system(input)?;
    let ord = parse_order(order, &system.vars, priority)?;
    let gens = select(&system, names)?;
    let ideal = Ideal::new(&system.vars, gens)?;
    let mut out = String::new();
    for line in basis_lines(&ideal.groebner(&ord), &ord) {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

pub fn render_quasi_singular(report: &QuasiSingularReport) -> String {
    let mut out = format!("count: {}\n", report.count);
    match report.multiplicity_dimension {
        Some(d) => {
            let _ = writeln!(out, "multiplicity-dimension: {d}");
        }
        None => out.push_str("multiplicity-dimension: n/a\n"),
    }
    let points = match report.count {
        ZeroCount::Infinite => "n/a".to_string(),
        _ if report.rational_points.is_empty() => "none".to_string(),
        _ => {
            let pts: Vec<String> = report.rational_points.iter().map(ToString::to_string).collect();
            pts.join("; ")
        }
    };
    let _ = write!(out, "rational-points: {points}");
    if !report.points_exhaustive && report.count != ZeroCount::Infinite {
        out.push_str(" (other zeros are irrational)");
    }
    out.push('\n');
    out
}

pub fn cmd_quasi_singular(input: &Path, poly: &str) -> CmdResult {
    let system = load_system(input)?;
    let p = system
        .get(poly)
        .ok_or_else(|| Failure::input(format!("no polynomial named `{poly}`")))?;
    Ok(render_quasi_singular(&quasi_singular(p)?))
}

fn render_witness(perm: &[usize], ring: &VarSet) -> String {
    let parts: Vec<String> = perm
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{} -> {}", ring.name(i), ring.name(j)))
        .collect();
    parts.join(", ")
}

pub fn render_verdict(v: &InvariantVerdict, ring: &VarSet) -> String {
    let ord = MonomialOrder::degrevlex(ring);
    let mut out = String::new();
    match &v.witness_renaming {
        Some(perm) => {
            let _ = writeln!(out, "verdict: indistinguishable at k={}", v.k);
            let _ = writeln!(out, "witness: {}", render_witness(perm, ring));
        }
        None => {
            out.push_str("verdict: distinguishable (not isomorphic)\n");
            out.push_str("witness: none\n");
        }
    }
    for (label, basis) in [("left", &v.left), ("right", &v.right)] {
        let _ = writeln!(out, "{label} basis ({}):", ord.describe(ring));
        for line in basis_lines(basis, &ord) {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

/// `R` defaults to the ideal generated by both lists.
pub fn compare_lists(
    ring: &VarSet,
    left: &[Polynomial],
    right: &[Polynomial],
    modulo: Option<Vec<Polynomial>>,
    k: usize,
    max_arity: usize,
) -> Result<InvariantVerdict, Failure> {
    let gens = modulo.unwrap_or_else(|| {
        let mut all = left.to_vec();
        for r in right {
            if !all.contains(r) {
                all.push(r.clone());
            }
        }
        all
    });
    let r = Ideal::new(ring, gens)?;
    Ok(compare_invariants_bounded(left, right, &r, k, max_arity)?)
}

fn polys_over(system: &SystemFile, ring: &VarSet, path: &Path) -> Result<Vec<Polynomial>, Failure> {
    if !system.vars.same_names(ring) {
        return Err(Failure::input(format!(
            "{}: variables {{{}}} do not match {{{}}}",
            path.display(),
            system.vars,
            ring
        )));
    }
    system
        .polynomials()
        .iter()
        .map(|p| p.to_ring(ring).map_err(Failure::from))
        .collect()
}

pub fn cmd_compare_invariants(
    left: &Path,
    right: &Path,
    modulo: Option<&Path>,
    k: usize,
    max_arity: usize,
) -> CmdResult {
    let lsys = load_system(left)?;
    let ring = lsys.vars.clone();
    let lpolys = lsys.polynomials();
    let rpolys = polys_over(&load_system(right)?, &ring, right)?;
    let mpolys = match modulo {
        Some(m) => Some(polys_over(&load_system(m)?, &ring, m)?),
        None => None,
    };
    let verdict = compare_lists(&ring, &lpolys, &rpolys, mpolys, k, max_arity)?;
    Ok(render_verdict(&verdict, &ring))
}

pub fn cmd_cert_verify(input: &Path) -> Result<Report, Failure> {
    let cert = read_certificate(input).map_err(|e| match e {
        Error::Parse { span, message } => Failure::input(format!("{}:{span}: {message}", input.display())),
        other => Failure::from(other),
    })?;
    let report = verify_certificate(&cert);
    Ok(Report {
        stdout: report.render(),
        code: if report.is_valid() { 0 } else { EXIT_REFUSAL },
    })
}
