//! Text front end: polynomial expressions, rendering, and `.ps` system files.
//!
//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit: `xy` is one identifier and `2x` is a
//! syntax error.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, SourceSpan};
use crate::groebner::MonomialOrder;
use crate::polyring::{is_identifier, Monomial, Polynomial, Rational, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// Exact coefficients as stored.
    MonicInternal,
    /// Denominators cleared, content removed, positive leading coefficient.
    IntegerPrimitive,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = SourceSpan::new(line, col0 + i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, span });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push(Lexed { tok: Tok::Int(n), span });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                span,
            });
        } else {
            return Err(Error::parse(span, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    ring: &'a VarSet,
    end: SourceSpan,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    fn bump(&mut self) -> Option<&Lexed> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let span = self.span();
            let e = match self.bump().map(|t| &t.tok) {
                Some(Tok::Int(n)) => n.clone(),
                _ => {
                    return Err(Error::parse(
                        span,
                        "malformed exponent: expected a positive integer literal",
                    ))
                }
            };
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e > 0 => e,
                _ => {
                    return Err(Error::parse(
                        span,
                        "malformed exponent: expected a positive integer literal",
                    ))
                }
            };
            if let Some(Tok::Caret) = self.peek() {
                return Err(Error::parse(self.span(), "chained exponents need parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let span = self.span();
        let tok = match self.bump() {
            Some(t) => t.tok.clone(),
            None => return Err(Error::parse(span, "unexpected end of input")),
        };
        match tok {
            Tok::Int(n) => {
                let value = if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let dspan = self.span();
                    let d = match self.bump().map(|t| &t.tok) {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return Err(Error::parse(dspan, "expected an integer denominator")),
                    };
                    if d.is_zero() {
                        return Err(Error::parse(dspan, "zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(Polynomial::constant(self.ring, value))
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var_index(self.ring, i)),
                None => Err(Error::parse(span, format!("unknown identifier `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::parse(span, "unbalanced parentheses: `(` is never closed")),
                }
            }
            Tok::RParen => Err(Error::parse(span, "unbalanced parentheses: unexpected `)`")),
            _ => Err(Error::parse(span, "expected a number, identifier, or `(`")),
        }
    }
}

pub fn parse_polynomial(text: &str, vars: &VarSet) -> Result<Polynomial> {
    parse_polynomial_at(text, vars, SourceSpan::new(1, 1))
}

/// Parses `text` whose first character sits at `origin` in some larger document.
pub fn parse_polynomial_at(text: &str, vars: &VarSet, origin: SourceSpan) -> Result<Polynomial> {
    let toks = lex(text, origin.line, origin.column)?;
    let width = text.chars().count();
    let end = SourceSpan::new(origin.line, origin.column + width.saturating_sub(1));
    if toks.is_empty() {
        return Err(Error::parse(origin, "empty expression"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        ring: vars,
        end,
    };
    let p = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let span = parser.span();
        let msg = match parser.peek() {
            Some(Tok::RParen) => "unbalanced parentheses: unexpected `)`",
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                "expected an operator (multiplication must be written with `*`)"
            }
            _ => "unexpected token",
        };
        return Err(Error::parse(span, msg));
    }
    Ok(p)
}

/// Scales `p` to the integer primitive representative whose leading
/// coefficient under `order` is positive.
pub fn integer_primitive(p: &Polynomial, order: Option<&MonomialOrder>) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        content = content.gcd(&(c.numer() * (&denom_lcm / c.denom())));
    }
    let mut factor = Rational::new(denom_lcm, content);
    let leading = match order {
        Some(ord) => ord.leading_term(p).map(|(_, c)| c.clone()),
        None => p.canonical_leading().map(|(_, c)| c.clone()),
    };
    if leading.is_some_and(|c| c.is_negative()) {
        factor = -factor;
    }
    p.scale(&factor)
}

fn write_monomial(out: &mut String, m: &Monomial, ring: &VarSet) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(ring.name(i));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "{}/{}", c.numer(), c.denom());
    }
}

fn render_terms<'a>(ring: &VarSet, terms: impl Iterator<Item = (&'a Monomial, &'a Rational)>) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if m.is_one() {
            write_rational(&mut out, &abs);
        } else {
            if !abs.is_one() {
                write_rational(&mut out, &abs);
                out.push('*');
            }
            write_monomial(&mut out, m, ring);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders with terms in canonical (degrevlex, declaration priority) order.
pub fn render(p: &Polynomial, style: RenderStyle) -> String {
    match style {
        RenderStyle::MonicInternal => render_terms(p.ring(), p.terms()),
        RenderStyle::IntegerPrimitive => {
            let q = integer_primitive(p, None);
            render_terms(q.ring(), q.terms())
        }
    }
}

/// Renders with terms listed from the largest under `order` down.
pub fn render_with_order(p: &Polynomial, style: RenderStyle, order: &MonomialOrder) -> String {
    let q = match style {
        RenderStyle::MonicInternal => p.clone(),
        RenderStyle::IntegerPrimitive => integer_primitive(p, Some(order)),
    };
    let sorted = order.sorted_terms(&q);
    render_terms(q.ring(), sorted.iter().map(|(m, c)| (m, c)))
}

/// Parsed `.ps` polynomial-system file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub vars: VarSet,
    pub entries: Vec<(String, Polynomial)>,
}

impl SystemFile {
    pub fn new(vars: VarSet) -> Self {
        SystemFile {
            vars,
            entries: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Polynomial> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.entries.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn push(&mut self, name: impl Into<String>, poly: Polynomial) -> Result<()> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(Error::InvalidVarSet(format!("`{name}` is not an identifier")));
        }
        if self.vars.contains(&name) || self.get(&name).is_some() {
            return Err(Error::InvalidVarSet(format!("duplicate name `{name}`")));
        }
        if poly.ring() != &self.vars {
            return Err(Error::RingMismatch);
        }
        self.entries.push((name, poly));
        Ok(())
    }
}

/// Strips a `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub(crate) fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

/// Parses a `vars: a, b, c` header body.
pub(crate) fn parse_vars_list(body: &str, span: SourceSpan) -> Result<VarSet> {
    let names: Vec<&str> = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',').map(str::trim).collect()
    };
    VarSet::new(names.iter().copied()).map_err(|e| match e {
        Error::InvalidVarSet(m) => Error::parse(span, m),
        other => other,
    })
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut system: Option<SystemFile> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let col = leading_ws(content) + 1;
        let body = content.trim_start();
        match system.as_mut() {
            None => {
                let Some(rest) = body.strip_prefix("vars:") else {
                    return Err(Error::parse(SourceSpan::new(lineno, col), "missing `vars:` header"));
                };
                let vars = parse_vars_list(rest, SourceSpan::new(lineno, col + 5))?;
                system = Some(SystemFile::new(vars));
            }
            Some(sys) => {
                let Some(eq) = body.find('=') else {
                    return Err(Error::parse(
                        SourceSpan::new(lineno, col),
                        "expected `name = <polynomial>`",
                    ));
                };
                let name = body[..eq].trim();
                if !is_identifier(name) {
                    return Err(Error::parse(
                        SourceSpan::new(lineno, col),
                        format!("`{name}` is not a valid entry name"),
                    ));
                }
                if sys.vars.contains(name) {
                    return Err(Error::parse(
                        SourceSpan::new(lineno, col),
                        format!("entry name `{name}` clashes with a variable"),
                    ));
                }
                if sys.get(name).is_some() {
                    return Err(Error::parse(
                        SourceSpan::new(lineno, col),
                        format!("duplicate entry name `{name}`"),
                    ));
                }
                let expr = &body[eq + 1..];
                let expr_col = col + body[..eq + 1].chars().count();
                let poly = parse_polynomial_at(expr, &sys.vars, SourceSpan::new(lineno, expr_col))?;
                sys.entries.push((name.to_string(), poly));
            }
        }
    }
    system.ok_or_else(|| Error::parse(SourceSpan::new(1, 1), "missing `vars:` header"))
}

pub fn render_system(system: &SystemFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars: {}", system.vars.names().join(", "));
    for (name, p) in &system.entries {
        let _ = writeln!(out, "{name} = {}", render(p, RenderStyle::MonicInternal));
    }
    out
}

pub fn read_system(path: impl AsRef<Path>) -> Result<SystemFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_system(&text)
}

pub fn write_system(system: &SystemFile, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_system(system)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{MonomialOrder, OrderKind};
    use crate::polyring::rational;

    fn ring(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn parses_tom_dieck_petrie() {
        let r = ring(&["x", "y", "z"]);
        let p = parse_polynomial("x^2*z - y^3*z^2 - 3*y^2*z + 2*x - 3*y - 1", &r).unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(
            render(&p, RenderStyle::MonicInternal),
            "-y^3*z^2 + x^2*z - 3*y^2*z + 2*x - 3*y - 1"
        );
    }

    #[test]
    fn merges_like_terms_and_reads_fractions() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(
            parse_polynomial("2*x + x", &r).unwrap(),
            parse_polynomial("3*x", &r).unwrap()
        );
        let p = parse_polynomial("1/2*y^3*z^2 + 3/2*y^2*z", &r).unwrap();
        let coeffs: Vec<Rational> = p.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs, vec![rational(1, 2), rational(3, 2)]);
    }

    #[test]
    fn syntax_errors_carry_spans() {
        let r = ring(&["x", "y"]);
        let cases = [
            ("x + w", 5),
            ("1/0 + x", 3),
            ("x^0", 3),
            ("x^y", 3),
            ("(x + y", 1),
            ("x + y)", 6),
            ("2x", 2),
            ("x y", 3),
            ("x + ", 4),
            ("x $ y", 3),
        ];
        for (text, col) in cases {
            let err = parse_polynomial(text, &r).unwrap_err();
            let span = err.span().unwrap_or_else(|| panic!("no span for {text:?}"));
            assert_eq!(span, SourceSpan::new(1, col), "{text:?}: {err}");
            assert!(span.column <= text.chars().count());
        }
    }

    #[test]
    fn implicit_multiplication_is_an_unknown_identifier() {
        let r = ring(&["x", "y"]);
        let err = parse_polynomial("xy", &r).unwrap_err();
        assert!(err.to_string().contains("unknown identifier `xy`"));
    }

    #[test]
    fn integer_primitive_rendering() {
        let r = ring(&["x", "y"]);
        let p = parse_polynomial("x^2 - y^2", &r).unwrap();
        assert_eq!(render(&p, RenderStyle::IntegerPrimitive), "x^2 - y^2");

        let q = parse_polynomial("1/9*(36*y^2 + 24*y + 8*x + 27)", &r).unwrap();
        let lex_yx = MonomialOrder::with_priority(OrderKind::Lex, &r, &["y", "x"]).unwrap();
        assert_eq!(
            render_with_order(&q, RenderStyle::IntegerPrimitive, &lex_yx),
            "36*y^2 + 24*y + 8*x + 27"
        );
        assert_eq!(render(&Polynomial::zero(&r), RenderStyle::IntegerPrimitive), "0");
        assert_eq!(render(&Polynomial::zero(&r), RenderStyle::MonicInternal), "0");

        let neg = parse_polynomial("-2/3*x + 4/3", &r).unwrap();
        assert_eq!(render(&neg, RenderStyle::IntegerPrimitive), "x - 2");
    }

    #[test]
    fn system_files() {
        let sys = parse_system("# Example\nvars: x, y\np = x^2 + x*y + y^3  # trailing\n").unwrap();
        assert_eq!(sys.entries.len(), 1);
        assert_eq!(
            sys.get("p").unwrap(),
            &parse_polynomial("x^2 + x*y + y^3", &sys.vars).unwrap()
        );

        let empty = parse_system("vars: x, y\n").unwrap();
        assert!(empty.entries.is_empty());

        let err = parse_system("vars: x, y\np = x + w\n").unwrap_err();
        assert_eq!(err.span(), Some(SourceSpan::new(2, 9)));

        let err = parse_system("vars: x\np = x\np = x^2\n").unwrap_err();
        assert_eq!(err.span().unwrap().line, 3);
        let err = parse_system("p = x\n").unwrap_err();
        assert!(err.to_string().contains("missing `vars:` header"));
        assert!(parse_system("vars: x\nx = x\n").is_err());
        assert!(parse_system("vars: x, x\n").is_err());
    }

    #[test]
    fn system_round_trip_on_file() {
        let text = "vars: x, y, z\np = -y^3*z^2 + x^2*z - 3*y^2*z + 2*x - 3*y - 1\nq = 1/2*x - 3\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(render_system(&sys), text);
        let dir = std::env::temp_dir().join(format!("hyperembed-textio-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sys.ps");
        write_system(&sys, &path).unwrap();
        assert_eq!(read_system(&path).unwrap(), sys);
        assert!(matches!(read_system(dir.join("missing.ps")), Err(Error::Io { .. })));
        std::fs::remove_dir_all(&dir).ok();
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::polyring::proptests::poly_strategy;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn render_parse_round_trip(p in poly_strategy(VarSet::new(["x", "y", "z"]).unwrap(), 4, 6)) {
            let text = render(&p, RenderStyle::MonicInternal);
            prop_assert_eq!(&parse_polynomial(&text, p.ring()).unwrap(), &p);
            // Integer-primitive is a nonzero rescaling.
            let prim = parse_polynomial(&render(&p, RenderStyle::IntegerPrimitive), p.ring()).unwrap();
            prop_assert_eq!(prim.monic(), p.monic());
        }
    }
}
