//! Regression harness over the worked-example fixtures.
//!
//! Each case is a TOML file in the corpus directory listing expectations
//! against `.ps` systems and `.cert` certificates that live beside it.
//! Every expectation names its provenance and quotes its source.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use hyperembed::groebner::{Ideal, MonomialOrder};
use hyperembed::invariants::{elementary_ideal, quasi_singular};
use hyperembed::presentations::{read_certificate, verify_certificate};
use hyperembed::textio::parse_polynomial;
use hyperembed::{Polynomial, Rational, RationalPoint, ZeroCount};

use crate::{basis_lines, compare_lists, load_system, parse_order, select, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Provenance {
    #[serde(rename = "PAPER")]
    Paper,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "DERIVED")]
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    #[serde(rename_all = "kebab-case")]
    Groebner {
        input: String,
        names: Option<Vec<String>>,
        order: String,
        priority: Option<Vec<String>>,
        basis: Option<Vec<String>>,
        ideal: Option<Vec<String>>,
    },
    #[serde(rename_all = "kebab-case")]
    ElementaryIdeal {
        input: String,
        polys: Vec<String>,
        modulo: Vec<String>,
        k: usize,
        order: String,
        priority: Option<Vec<String>>,
        basis: Option<Vec<String>>,
        ideal: Option<Vec<String>>,
    },
    #[serde(rename_all = "kebab-case")]
    Compare {
        input: String,
        left: Vec<String>,
        right: Vec<String>,
        modulo: Option<Vec<String>>,
        k: usize,
        verdict: String,
    },
    #[serde(rename_all = "kebab-case")]
    QuasiSingular {
        input: String,
        poly: String,
        count: String,
        points: Option<Vec<String>>,
    },
    #[serde(rename_all = "kebab-case")]
    GradientInIdeal {
        input: String,
        poly: String,
        ideal: Vec<String>,
    },
    #[serde(rename_all = "kebab-case")]
    Certificate {
        input: String,
        valid: bool,
        first_failure: Option<usize>,
    },
}

#[derive(Debug, Clone, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub check: Check,
    pub provenance: Provenance,
    pub source: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub title: String,
    #[serde(rename = "expect")]
    pub expectations: Vec<Expectation>,
    #[serde(skip)]
    pub dir: PathBuf,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub label: String,
    pub provenance: Provenance,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub id: String,
    pub checks: Vec<CheckOutcome>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn load_case(path: &Path) -> Result<CorpusCase, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let mut case: CorpusCase = toml::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if case.expectations.is_empty() {
        return Err(Failure::input(format!("{}: case has no expectations", path.display())));
    }
    case.dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(case)
}

/// All cases in `dir`, sorted by id.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusCase>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let mut cases = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Failure::input(e.to_string()))?.path();
        if path.extension().is_some_and(|e| e == "toml") {
            cases.push(load_case(&path)?);
        }
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    for pair in cases.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(Failure::input(format!("duplicate case id `{}`", pair[0].id)));
        }
    }
    Ok(cases)
}

fn parse_point(text: &str, arity: usize) -> Result<RationalPoint, String> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("malformed point `{text}`"))?;
    let coords = inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<Rational>()
                .map_err(|_| format!("malformed coordinate in `{text}`"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != arity {
        return Err(format!("point `{text}` has the wrong number of coordinates"));
    }
    Ok(RationalPoint::new(coords))
}

fn ideal_matches(ideal: &Ideal, expected: &[String], ord: &MonomialOrder) -> Result<bool, Failure> {
    let ring = ideal.ring();
    let polys = expected
        .iter()
        .map(|s| parse_polynomial(s, ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ideal.equals(&Ideal::new(ring, polys)?, ord))
}

/// Compares a computed ideal against an exact line listing and/or an ideal.
fn basis_verdict(
    ideal: &Ideal,
    ord: &MonomialOrder,
    basis: Option<&[String]>,
    expected_ideal: Option<&[String]>,
) -> Result<(bool, String), Failure> {
    let lines = basis_lines(&ideal.groebner(ord), ord);
    let mut ok = true;
    if let Some(b) = basis {
        ok &= lines == b;
    }
    if let Some(i) = expected_ideal {
        ok &= ideal_matches(ideal, i, ord)?;
    }
    Ok((ok, format!("basis {{{}}}", lines.join(", "))))
}

fn run_check(dir: &Path, check: &Check) -> Result<(String, bool, String), Failure> {
    match check {
        Check::Groebner {
            input,
            names,
            order,
            priority,
            basis,
            ideal,
        } => {
            let system = load_system(&dir.join(input))?;
            let ord = parse_order(order, &system.vars, priority.as_deref())?;
            let gens = select(&system, names.as_deref())?;
            let id = Ideal::new(&system.vars, gens)?;
            let label = format!(
                "groebner {} ({})",
                names.as_deref().unwrap_or(&[]).join(","),
                ord.describe(&system.vars)
            );
            let (ok, detail) = basis_verdict(&id, &ord, basis.as_deref(), ideal.as_deref())?;
            Ok((label, ok, detail))
        }
        Check::ElementaryIdeal {
            input,
            polys,
            modulo,
            k,
            order,
            priority,
            basis,
            ideal,
        } => {
            let system = load_system(&dir.join(input))?;
            let ord = parse_order(order, &system.vars, priority.as_deref())?;
            let gens = select(&system, Some(polys))?;
            let r = Ideal::new(&system.vars, select(&system, Some(modulo))?)?;
            let e = elementary_ideal(&system.vars, &gens, *k)?.sum(&r)?;
            let label = format!("E_{k}({}) + R ({})", polys.join(","), ord.describe(&system.vars));
            let (ok, detail) = basis_verdict(&e, &ord, basis.as_deref(), ideal.as_deref())?;
            Ok((label, ok, detail))
        }
        Check::Compare {
            input,
            left,
            right,
            modulo,
            k,
            verdict,
        } => {
            let system = load_system(&dir.join(input))?;
            let l = select(&system, Some(left))?;
            let r = select(&system, Some(right))?;
            let m = match modulo {
                Some(m) => Some(select(&system, Some(m))?),
                None => None,
            };
            let v = compare_lists(&system.vars, &l, &r, m, *k, hyperembed::invariants::DEFAULT_MAX_ARITY)?;
            let got = if v.distinguishes() {
                "distinguishable"
            } else {
                "indistinguishable"
            };
            if verdict != "distinguishable" && verdict != "indistinguishable" {
                return Err(Failure::input(format!("unknown verdict `{verdict}`")));
            }
            let label = format!("compare {} vs {} at k={k}", left.join(","), right.join(","));
            Ok((label, got == verdict, got.to_string()))
        }
        Check::QuasiSingular {
            input,
            poly,
            count,
            points,
        } => {
            let system = load_system(&dir.join(input))?;
            let p = select(&system, Some(std::slice::from_ref(poly)))?.remove(0);
            let expected: ZeroCount = count.parse().map_err(Failure::input)?;
            let report = quasi_singular(&p)?;
            let mut ok = report.count == expected;
            let mut detail = format!("count {}", report.count);
            for text in points.iter().flatten() {
                let pt = parse_point(text, system.vars.arity()).map_err(Failure::input)?;
                let vanishes = report
                    .gradient
                    .iter()
                    .map(|g| g.evaluate(&pt).map(|v| v == Rational::from_integer(0.into())))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .all(|z| z);
                let listed = report.rational_points.contains(&pt);
                ok &= vanishes && listed;
                let _ = write!(
                    detail,
                    "; {pt} {}",
                    if vanishes && listed { "verified" } else { "missing" }
                );
            }
            Ok((format!("quasi-singular {poly}"), ok, detail))
        }
        Check::GradientInIdeal { input, poly, ideal } => {
            let system = load_system(&dir.join(input))?;
            let p = select(&system, Some(std::slice::from_ref(poly)))?.remove(0);
            let gens = ideal
                .iter()
                .map(|s| parse_polynomial(s, &system.vars))
                .collect::<Result<Vec<_>, _>>()?;
            let target = Ideal::new(&system.vars, gens)?;
            let ord = MonomialOrder::degrevlex(&system.vars);
            let gradient: Vec<Polynomial> = p.gradient();
            let mut ok = true;
            for g in &gradient {
                ok &= target.contains(g, &ord)?;
            }
            let detail = if ok {
                "every component is a member; reverse containment unverified".to_string()
            } else {
                "some component is not a member".to_string()
            };
            Ok((format!("grad({poly}) in <{}>", ideal.join(", ")), ok, detail))
        }
        Check::Certificate {
            input,
            valid,
            first_failure,
        } => {
            let cert = read_certificate(dir.join(input))?;
            let report = verify_certificate(&cert);
            let mut ok = report.is_valid() == *valid;
            if let Some(step) = first_failure {
                ok &= report.first_failure() == Some(*step);
            }
            let detail = match report.first_failure() {
                Some(i) => format!("invalid, first failure at step {i}"),
                None if report.is_valid() => "valid".to_string(),
                None => "invalid at the end presentation".to_string(),
            };
            Ok((format!("certificate {input}"), ok, detail))
        }
    }
}

pub fn run_case(case: &CorpusCase) -> CaseOutcome {
    let checks = case
        .expectations
        .iter()
        .map(|e| match run_check(&case.dir, &e.check) {
            Ok((label, passed, detail)) => CheckOutcome {
                label,
                provenance: e.provenance,
                passed,
                detail,
            },
            Err(f) => CheckOutcome {
                label: "error".to_string(),
                provenance: e.provenance,
                passed: false,
                detail: f.message,
            },
        })
        .collect();
    CaseOutcome {
        id: case.id.clone(),
        checks,
    }
}

/// Runs cases in parallel; results come back in input order.
pub fn run_cases(cases: &[CorpusCase]) -> Vec<CaseOutcome> {
    cases.par_iter().map(run_case).collect()
}

pub fn render_outcomes(outcomes: &[CaseOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.id.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    for o in outcomes {
        let passed = o.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "{:<width$}  {}/{}  {}",
            o.id,
            passed,
            o.checks.len(),
            if o.passed() { "PASS" } else { "FAIL" }
        );
        for c in &o.checks {
            let _ = writeln!(
                out,
                "  [{}] {} [{}]: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.label,
                c.provenance,
                c.detail
            );
        }
    }
    let total = outcomes.len();
    let good = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(out, "summary: {good}/{total} cases passed");
    out
}
