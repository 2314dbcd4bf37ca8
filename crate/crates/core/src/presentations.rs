//! Presentations `K[vars]/<relators>` and replayable isomorphism certificates.
//!
//! A certificate is a chain of elementary moves:
//!
//! * `introduce y = p`: adjoin a fresh variable with relator `y - p`;
//! * `cancel y`: drop a relator `c*y - p` (`p` free of `y`) and substitute
//!   `y = p/c` into the remaining relators;
//! * `rename a -> b, ...`: rename variables simultaneously;
//! * `rewrite rels: ...`: replace the relator list by another generating
//!   set of the same ideal.
//!
//! Each move preserves the presented algebra up to isomorphism, so a chain
//! that replays cleanly and lands on the stated end presentation proves the
//! start and end algebras isomorphic.
//!
//! ```text
//! start:
//! vars: x, y, z
//! rels: x - y*z - z^2
//! step introduce u = x^2
//! step cancel x
//! end:
//! vars: y, z, u
//! rels: u - (y*z + z^2)^2
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use num_traits::Zero;

use crate::error::{Error, Result, SourceSpan};
use crate::groebner::{Ideal, MonomialOrder};
use crate::polyring::{is_identifier, Polynomial, VarSet};
use crate::textio::{
    leading_ws, parse_polynomial_at, parse_vars_list, render, render_with_order, strip_comment, RenderStyle,
};

/// `K[vars]/<relators>`; relators are stored as polynomials meaning `r = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    vars: VarSet,
    relators: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(vars: VarSet, relators: Vec<Polynomial>) -> Result<Self> {
        if relators.iter().any(|r| r.ring() != &vars) {
            return Err(Error::RingMismatch);
        }
        Ok(Presentation { vars, relators })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn relators(&self) -> &[Polynomial] {
        &self.relators
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.vars, self.relators.clone()).expect("relators live over vars")
    }

    /// Reduced degrevlex basis of the relator ideal.
    pub fn canonical_basis(&self) -> Vec<Polynomial> {
        self.ideal().groebner(&MonomialOrder::degrevlex(&self.vars)).to_vec()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.vars)?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&render(r, RenderStyle::MonicInternal))?;
        }
        f.write_str(">")
    }
}

fn rejected(msg: impl Into<String>) -> Error {
    Error::Presentation(msg.into())
}

/// Adjoins `var` with relator `var - defining`.
pub fn introduce(p: &Presentation, var: &str, defining: &Polynomial) -> Result<Presentation> {
    if !is_identifier(var) {
        return Err(rejected(format!("`{var}` is not a valid variable name")));
    }
    if p.vars.contains(var) {
        return Err(rejected(format!("variable `{var}` already exists")));
    }
    if defining.ring() != &p.vars {
        return Err(Error::RingMismatch);
    }
    let mut names = p.vars.names().to_vec();
    names.push(var.to_string());
    let vars = VarSet::new(names)?;
    let mut relators = p
        .relators
        .iter()
        .map(|r| r.to_ring(&vars))
        .collect::<Result<Vec<_>>>()?;
    let y = Polynomial::var(&vars, var)?;
    relators.push(&y - &defining.to_ring(&vars)?);
    Presentation::new(vars, relators)
}

/// What `cancel` did, for the audit trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelAudit {
    /// 0-based index of the defining relator that was removed.
    pub defining_relator: usize,
    /// The polynomial substituted for the cancelled variable.
    pub value: Polynomial,
    /// 0-based indices (in the original list) of relators that mentioned the variable.
    pub substituted_into: Vec<usize>,
}

/// Splits `r` as `c*y + rest` with `rest` free of `y`; returns `-rest/c`.
fn solve_linear(r: &Polynomial, y: usize) -> Option<Polynomial> {
    if r.degree_in(y) != 1 {
        return None;
    }
    let ring = r.ring();
    let y_mono = crate::polyring::Monomial::variable(ring.arity(), y);
    let c = r.coefficient(&y_mono);
    if c.is_zero() {
        return None;
    }
    let rest = r - &Polynomial::monomial(ring, y_mono, c.clone());
    if !rest.is_free_of(y) {
        return None;
    }
    Some(rest.scale(&-c.recip()))
}

pub fn cancel(p: &Presentation, var: &str) -> Result<(Presentation, CancelAudit)> {
    let y = p
        .vars
        .index_of(var)
        .ok_or_else(|| rejected(format!("unknown variable `{var}`")))?;
    let (idx, value) = p
        .relators
        .iter()
        .enumerate()
        .find_map(|(i, r)| solve_linear(r, y).map(|v| (i, v)))
        .ok_or_else(|| rejected(format!("no relator of the form c*{var} - p with p free of {var}")))?;
    let names: Vec<String> = p.vars.names().iter().filter(|n| n.as_str() != var).cloned().collect();
    let vars = VarSet::new(names)?;
    let mut map = BTreeMap::new();
    map.insert(var.to_string(), value.clone());
    let mut relators = Vec::with_capacity(p.relators.len() - 1);
    let mut substituted_into = Vec::new();
    for (i, r) in p.relators.iter().enumerate() {
        if i == idx {
            continue;
        }
        let image = if r.is_free_of(y) {
            r.clone()
        } else {
            substituted_into.push(i);
            r.substitute(&map, &p.vars)?
        };
        relators.push(image.to_ring(&vars)?);
    }
    let value_small = value.to_ring(&vars)?;
    Ok((
        Presentation::new(vars, relators)?,
        CancelAudit {
            defining_relator: idx,
            value: value_small,
            substituted_into,
        },
    ))
}

/// Simultaneous renaming; `map` pairs are `(old, new)`.
pub fn rename(p: &Presentation, map: &[(String, String)]) -> Result<Presentation> {
    let mut lookup: BTreeMap<&str, &str> = BTreeMap::new();
    for (old, new) in map {
        if !p.vars.contains(old) {
            return Err(rejected(format!("unknown variable `{old}`")));
        }
        if !is_identifier(new) {
            return Err(rejected(format!("`{new}` is not a valid variable name")));
        }
        if lookup.insert(old, new).is_some() {
            return Err(rejected(format!("variable `{old}` renamed twice")));
        }
    }
    let names: Vec<String> = p
        .vars
        .names()
        .iter()
        .map(|n| lookup.get(n.as_str()).map_or_else(|| n.clone(), |s| s.to_string()))
        .collect();
    let vars =
        VarSet::new(names).map_err(|_| rejected("renaming is not injective or collides with an existing variable"))?;
    let relators = p
        .relators
        .iter()
        .map(|r| Polynomial::from_terms(&vars, r.terms().map(|(m, c)| (m.clone(), c.clone()))))
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(vars, relators)
}

/// Replaces the relators by another generating set of the same ideal.
pub fn rewrite(p: &Presentation, new_relators: Vec<Polynomial>) -> Result<Presentation> {
    let proposed = Presentation::new(p.vars.clone(), new_relators)?;
    let ord = MonomialOrder::degrevlex(&p.vars);
    if p.ideal().equals(&proposed.ideal(), &ord) {
        Ok(proposed)
    } else {
        Err(rejected(format!(
            "relator ideals differ: current basis {}; proposed basis {}",
            render_basis(&p.canonical_basis(), &ord),
            render_basis(&proposed.canonical_basis(), &ord)
        )))
    }
}

fn render_basis(basis: &[Polynomial], ord: &MonomialOrder) -> String {
    let items: Vec<String> = basis
        .iter()
        .map(|g| render_with_order(g, RenderStyle::IntegerPrimitive, ord))
        .collect();
    format!("{{{}}}", items.join(", "))
}

/// Same variable names (in any order) and equal relator ideals.
pub fn presentations_equal(a: &Presentation, b: &Presentation) -> bool {
    if !a.vars.same_names(&b.vars) {
        return false;
    }
    let Ok(moved) = b
        .relators
        .iter()
        .map(|r| r.to_ring(&a.vars))
        .collect::<Result<Vec<_>>>()
    else {
        return false;
    };
    let other = Ideal::new(&a.vars, moved).expect("same ring");
    a.ideal().equals(&other, &MonomialOrder::degrevlex(&a.vars))
}

/// Polynomial text kept verbatim until replay, when its ring is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepExpr {
    pub text: String,
    pub span: SourceSpan,
}

impl StepExpr {
    fn parse(&self, vars: &VarSet) -> Result<Polynomial> {
        parse_polynomial_at(&self.text, vars, self.span)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertStep {
    Introduce { var: String, defining: StepExpr },
    Cancel { var: String },
    Rename { map: Vec<(String, String)> },
    Rewrite { relators: Vec<StepExpr> },
}

impl fmt::Display for CertStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertStep::Introduce { var, defining } => write!(f, "introduce {var} = {}", defining.text.trim()),
            CertStep::Cancel { var } => write!(f, "cancel {var}"),
            CertStep::Rename { map } => {
                let parts: Vec<String> = map.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                write!(f, "rename {}", parts.join(", "))
            }
            CertStep::Rewrite { relators } => write!(f, "rewrite ({} relators)", relators.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub start: Presentation,
    pub steps: Vec<CertStep>,
    pub end: Presentation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    /// 1-based step number.
    pub index: usize,
    pub step: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub steps: Vec<StepOutcome>,
    /// `None` when replay stopped before reaching the end block.
    pub end_matches: Option<bool>,
    pub end_detail: Option<String>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.end_matches == Some(true) && self.steps.iter().all(|s| s.ok)
    }

    /// 1-based index of the first failing step.
    pub fn first_failure(&self) -> Option<usize> {
        self.steps.iter().find(|s| !s.ok).map(|s| s.index)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = write!(
                out,
                "step {}: {} ... {}",
                s.index,
                s.step,
                if s.ok { "OK" } else { "FAIL" }
            );
            if let Some(d) = &s.detail {
                let _ = write!(out, " ({d})");
            }
            out.push('\n');
        }
        match self.end_matches {
            Some(true) => out.push_str("end: OK\n"),
            Some(false) => {
                let _ = writeln!(out, "end: FAIL ({})", self.end_detail.as_deref().unwrap_or("mismatch"));
            }
            None => out.push_str("end: not reached\n"),
        }
        if self.is_valid() {
            out.push_str("verdict: valid\n");
        } else if let Some(i) = self.first_failure() {
            let _ = writeln!(out, "verdict: invalid (first failure at step {i})");
        } else {
            out.push_str("verdict: invalid (end presentation does not match)\n");
        }
        out
    }
}

fn apply_step(current: &Presentation, step: &CertStep) -> Result<(Presentation, Option<String>)> {
    match step {
        CertStep::Introduce { var, defining } => {
            let p = defining.parse(&current.vars)?;
            Ok((introduce(current, var, &p)?, None))
        }
        CertStep::Cancel { var } => {
            let (next, audit) = cancel(current, var)?;
            let mut note = format!(
                "removed relator {}; {var} = {}",
                audit.defining_relator + 1,
                render(&audit.value, RenderStyle::MonicInternal)
            );
            if !audit.substituted_into.is_empty() {
                let idx: Vec<String> = audit.substituted_into.iter().map(|i| (i + 1).to_string()).collect();
                let _ = write!(note, "; substituted into relators {}", idx.join(", "));
            }
            Ok((next, Some(note)))
        }
        CertStep::Rename { map } => Ok((rename(current, map)?, None)),
        CertStep::Rewrite { relators } => {
            let polys = relators
                .iter()
                .map(|e| e.parse(&current.vars))
                .collect::<Result<Vec<_>>>()?;
            Ok((rewrite(current, polys)?, None))
        }
    }
}

/// Replays the certificate from its start presentation.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let mut current = cert.start.clone();
    let mut steps = Vec::with_capacity(cert.steps.len());
    for (i, step) in cert.steps.iter().enumerate() {
        match apply_step(&current, step) {
            Ok((next, note)) => {
                steps.push(StepOutcome {
                    index: i + 1,
                    step: step.to_string(),
                    ok: true,
                    detail: note,
                });
                current = next;
            }
            Err(e) => {
                let msg = match e {
                    Error::Presentation(m) => m,
                    other => other.to_string(),
                };
                steps.push(StepOutcome {
                    index: i + 1,
                    step: step.to_string(),
                    ok: false,
                    detail: Some(msg),
                });
                return VerificationReport {
                    steps,
                    end_matches: None,
                    end_detail: None,
                };
            }
        }
    }
    let matches = presentations_equal(&current, &cert.end);
    let end_detail = (!matches).then(|| {
        if current.vars.same_names(&cert.end.vars) {
            format!("relator ideals differ: reached {current}")
        } else {
            format!(
                "variables differ: reached {{{}}}, expected {{{}}}",
                current.vars, cert.end.vars
            )
        }
    });
    VerificationReport {
        steps,
        end_matches: Some(matches),
        end_detail,
    }
}

#[derive(PartialEq)]
enum Block {
    None,
    Start,
    Steps,
    End,
}

#[derive(Default)]
struct PresentationDraft {
    vars: Option<VarSet>,
    rels: Vec<StepExpr>,
}

impl PresentationDraft {
    fn finish(self, what: &str, line: usize) -> Result<Presentation> {
        let vars = self
            .vars
            .ok_or_else(|| Error::parse(SourceSpan::new(line, 1), format!("`{what}` block has no `vars:` line")))?;
        let rels = self.rels.iter().map(|e| e.parse(&vars)).collect::<Result<Vec<_>>>()?;
        Presentation::new(vars, rels)
    }
}

/// Splits `a; b; c` into expressions with their source columns.
fn split_exprs(body: &str, line: usize, col: usize) -> Vec<StepExpr> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in body.split(';') {
        let lead = leading_ws(piece);
        if !piece.trim().is_empty() {
            out.push(StepExpr {
                text: piece.trim().to_string(),
                span: SourceSpan::new(line, col + offset + lead),
            });
        }
        offset += piece.chars().count() + 1;
    }
    out
}

fn parse_block_line(draft: &mut PresentationDraft, body: &str, line: usize, col: usize) -> Result<()> {
    if let Some(rest) = body.strip_prefix("vars:") {
        if draft.vars.is_some() {
            return Err(Error::parse(SourceSpan::new(line, col), "duplicate `vars:` line"));
        }
        draft.vars = Some(parse_vars_list(rest, SourceSpan::new(line, col + 5))?);
        Ok(())
    } else if let Some(rest) = body.strip_prefix("rels:") {
        if draft.vars.is_none() {
            return Err(Error::parse(SourceSpan::new(line, col), "`rels:` before `vars:`"));
        }
        draft.rels.extend(split_exprs(rest, line, col + 5));
        Ok(())
    } else {
        Err(Error::parse(SourceSpan::new(line, col), "expected `vars:` or `rels:`"))
    }
}

fn parse_step(body: &str, line: usize, col: usize) -> Result<CertStep> {
    let err = |c: usize, m: &str| Error::parse(SourceSpan::new(line, c), m.to_string());
    let rest = body.strip_prefix("step").ok_or_else(|| err(col, "expected `step`"))?;
    let rest_col = col + 4 + leading_ws(rest);
    let rest = rest.trim_start();
    let (kw, args) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let args_col = rest_col + kw.chars().count() + 1 + leading_ws(args);
    let args_trim = args.trim();
    match kw {
        "introduce" => {
            let (var, expr) = args
                .split_once('=')
                .ok_or_else(|| err(args_col, "expected `introduce <var> = <polynomial>`"))?;
            let var = var.trim();
            if !is_identifier(var) {
                return Err(err(args_col, "expected a variable name"));
            }
            let expr_col = rest_col + kw.chars().count() + 1 + args.find('=').unwrap() + 1 + leading_ws(expr);
            Ok(CertStep::Introduce {
                var: var.to_string(),
                defining: StepExpr {
                    text: expr.trim().to_string(),
                    span: SourceSpan::new(line, expr_col),
                },
            })
        }
        "cancel" => {
            if !is_identifier(args_trim) {
                return Err(err(args_col, "expected `cancel <var>`"));
            }
            Ok(CertStep::Cancel {
                var: args_trim.to_string(),
            })
        }
        "rename" => {
            let mut map = Vec::new();
            for pair in args_trim.split(',') {
                let (a, b) = pair
                    .split_once("->")
                    .ok_or_else(|| err(args_col, "expected `rename <old> -> <new>, ...`"))?;
                let (a, b) = (a.trim(), b.trim());
                if !is_identifier(a) || !is_identifier(b) {
                    return Err(err(args_col, "expected variable names around `->`"));
                }
                map.push((a.to_string(), b.to_string()));
            }
            Ok(CertStep::Rename { map })
        }
        "rewrite" => {
            let inner = args
                .trim_start()
                .strip_prefix("rels:")
                .ok_or_else(|| err(args_col, "expected `rewrite rels: <poly>; ...`"))?;
            let inner_col = args_col + 5;
            Ok(CertStep::Rewrite {
                relators: split_exprs(inner, line, inner_col),
            })
        }
        _ => Err(err(
            rest_col,
            "unknown step kind (expected introduce, cancel, rename, or rewrite)",
        )),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut block = Block::None;
    let mut start = PresentationDraft::default();
    let mut end = PresentationDraft::default();
    let mut steps = Vec::new();
    let mut last_line = 1;
    let mut start_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let col = leading_ws(content) + 1;
        let body = content.trim();
        if body == "start:" {
            if block != Block::None {
                return Err(Error::parse(
                    SourceSpan::new(line, col),
                    "`start:` must come first and only once",
                ));
            }
            block = Block::Start;
            start_line = line;
            continue;
        }
        if body == "end:" {
            if block != Block::Start && block != Block::Steps {
                return Err(Error::parse(
                    SourceSpan::new(line, col),
                    "`end:` without a preceding `start:`",
                ));
            }
            block = Block::End;
            continue;
        }
        match block {
            Block::None => return Err(Error::parse(SourceSpan::new(line, col), "expected `start:`")),
            Block::Start if !body.starts_with("step") => parse_block_line(&mut start, body, line, col)?,
            Block::Start | Block::Steps => {
                block = Block::Steps;
                steps.push(parse_step(body, line, col)?);
            }
            Block::End => parse_block_line(&mut end, body, line, col)?,
        }
    }
    if block != Block::End {
        return Err(Error::parse(SourceSpan::new(last_line, 1), "missing `end:` block"));
    }
    Ok(Certificate {
        start: start.finish("start", start_line)?,
        steps,
        end: end.finish("end", last_line)?,
    })
}

pub fn read_certificate(path: impl AsRef<Path>) -> Result<Certificate> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_certificate(&text)
}
