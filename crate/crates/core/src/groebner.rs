//! Monomial orders, multivariate division and Buchberger's algorithm.
//!
//! Reduced bases are monic and sorted ascending by leading monomial. An
//! [`Ideal`] memoizes its reduced basis per order; the memo is shared by
//! clones and never changes observable results.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
            OrderKind::DegRevLex => "degrevlex",
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "deglex" => Ok(OrderKind::DegLex),
            "degrevlex" | "grevlex" => Ok(OrderKind::DegRevLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

/// Term order: a kind plus a variable priority (indices, highest first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Declaration order as priority.
    pub fn new(kind: OrderKind, ring: &VarSet) -> Self {
        MonomialOrder {
            kind,
            priority: (0..ring.arity()).collect(),
        }
    }

    pub fn lex(ring: &VarSet) -> Self {
        MonomialOrder::new(OrderKind::Lex, ring)
    }

    pub fn deglex(ring: &VarSet) -> Self {
        MonomialOrder::new(OrderKind::DegLex, ring)
    }

    pub fn degrevlex(ring: &VarSet) -> Self {
        MonomialOrder::new(OrderKind::DegRevLex, ring)
    }

    pub fn with_priority<S: AsRef<str>>(kind: OrderKind, ring: &VarSet, names: &[S]) -> Result<Self> {
        let mut priority = Vec::with_capacity(names.len());
        for n in names {
            let i = ring.require(n.as_ref())?;
            if priority.contains(&i) {
                return Err(Error::InvalidVarSet(format!(
                    "variable `{}` repeated in priority",
                    n.as_ref()
                )));
            }
            priority.push(i);
        }
        if priority.len() != ring.arity() {
            return Err(Error::ArityMismatch {
                expected: ring.arity(),
                got: priority.len(),
            });
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn from_indices(kind: OrderKind, priority: Vec<usize>) -> Self {
        MonomialOrder { kind, priority }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.arity() != self.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.arity(),
                    got: m.arity(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let lex = || {
            for &i in &self.priority {
                match a.exponent(i).cmp(&b.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::DegLex => a.degree().cmp(&b.degree()).then_with(lex),
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &i in self.priority.iter().rev() {
                    match a.exponent(i).cmp(&b.exponent(i)) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn leading_term<'a>(&self, p: &'a Polynomial) -> Option<(&'a Monomial, &'a Rational)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }

    pub fn leading_monomial<'a>(&self, p: &'a Polynomial) -> Option<&'a Monomial> {
        self.leading_term(p).map(|(m, _)| m)
    }

    /// Terms from largest to smallest under this order.
    pub fn sorted_terms(&self, p: &Polynomial) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
        v
    }

    pub fn describe(&self, ring: &VarSet) -> String {
        let names: Vec<&str> = self.priority.iter().map(|&i| ring.name(i)).collect();
        format!("{} {}", self.kind.name(), names.join(" > "))
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.name(), self.priority)
    }
}

/// Polynomial as terms sorted ascending under one order; leading term is last.
#[derive(Clone)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Self {
        let mut terms = ord.sorted_terms(p);
        terms.reverse();
        Sorted { terms }
    }

    fn to_poly(&self, ring: &VarSet) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned()).expect("arity preserved")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, Rational) {
        self.terms.last().expect("nonzero")
    }

    fn lm(&self) -> &Monomial {
        &self.lead().0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in &mut self.terms {
                    *a *= &inv;
                }
            }
        }
    }

    /// `self - coef * mono * g`.
    fn sub_mul(&self, coef: &Rational, mono: &Monomial, g: &Sorted, ord: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, c)| (m * mono, -(c * coef))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, c1) = a.next().unwrap().clone();
                        let (_, c2) = b.next().unwrap();
                        let c = c1 + c2;
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `f` by `basis`: repeatedly cancels the highest
/// reducible term using the first divisor in list order.
fn reduce(f: &Sorted, basis: &[Sorted], ord: &MonomialOrder) -> Sorted {
    let mut p = f.clone();
    let mut rem_desc: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last() {
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let (gm, gc) = g.lead();
                let q = gm.quotient_of(m);
                let coef = c / gc;
                p = p.sub_mul(&coef, &q, g, ord);
            }
            None => rem_desc.push(p.terms.pop().unwrap()),
        }
    }
    rem_desc.reverse();
    Sorted { terms: rem_desc }
}

fn spoly(f: &Sorted, g: &Sorted, ord: &MonomialOrder) -> Sorted {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let zero = Sorted { terms: Vec::new() };
    let part = zero.sub_mul(&-fc.recip(), &fm.quotient_of(&l), f, ord);
    part.sub_mul(&gc.recip(), &gm.quotient_of(&l), g, ord)
}

pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Result<Polynomial> {
    let ring = f.ring();
    let mut sorted = Vec::with_capacity(basis.len());
    for g in basis {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        sorted.push(Sorted::from_poly(g, ord));
    }
    Ok(reduce(&Sorted::from_poly(f, ord), &sorted, ord).to_poly(ring))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(spoly(&Sorted::from_poly(f, ord), &Sorted::from_poly(g, ord), ord).to_poly(f.ring()))
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger with the coprime and chain criteria, normal selection strategy.
fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Sorted> {
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = Sorted::from_poly(g, ord);
        s.make_monic();
        if s.lm().is_one() {
            return vec![s];
        }
        basis.push(s);
    }
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: basis[i].lm().lcm(basis[j].lm()),
            });
            pending.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !pending.contains(&key(pair.i, k))
                && !pending.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let mut h = reduce(&spoly(fi, fj, ord), &basis, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            return vec![h];
        }
        let n = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: n,
                lcm: g.lm().lcm(h.lm()),
            });
            pending.insert((i, n));
        }
        basis.push(h);
    }
    basis
}

fn reduce_basis(mut basis: Vec<Sorted>, ord: &MonomialOrder) -> Vec<Sorted> {
    // minimize
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (li, lj) = (basis[i].lm(), basis[j].lm());
            if lj.divides(li) && (li != lj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut it = keep.iter();
    basis.retain(|_| *it.next().unwrap());
    // interreduce tails
    for i in 0..basis.len() {
        let others: Vec<Sorted> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = reduce(&basis[i], &others, ord);
        r.make_monic();
        basis[i] = r;
    }
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    basis
}

fn compute_reduced(ring: &VarSet, gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let basis = reduce_basis(buchberger(gens, ord), ord);
    basis.iter().map(|s| s.to_poly(ring)).collect()
}

/// Ideal of a polynomial ring, given by generators.
#[derive(Clone)]
pub struct Ideal {
    ring: VarSet,
    generators: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>>,
}

impl Ideal {
    pub fn new(ring: &VarSet, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            cache: Arc::default(),
        })
    }

    /// Ideal of a nonempty generator list, taking the ring from the first element.
    pub fn from_generators(generators: Vec<Polynomial>) -> Result<Self> {
        let ring = generators.first().ok_or(Error::EmptyList)?.ring().clone();
        Ideal::new(&ring, generators)
    }

    pub fn zero(ring: &VarSet) -> Self {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &VarSet) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis under `ord`, memoized.
    pub fn groebner(&self, ord: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        assert_eq!(ord.arity(), self.ring.arity(), "order arity does not match ring");
        if let Some(b) = self.cache.lock().unwrap().get(ord) {
            return b.clone();
        }
        let basis = Arc::new(compute_reduced(&self.ring, &self.generators, ord));
        self.cache.lock().unwrap().entry(ord.clone()).or_insert(basis).clone()
    }

    pub fn contains(&self, f: &Polynomial, ord: &MonomialOrder) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        Ok(normal_form(f, &self.groebner(ord), ord)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, ord: &MonomialOrder) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, ord)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, ord: &MonomialOrder) -> bool {
        self.ring == other.ring && self.groebner(ord) == other.groebner(ord)
    }

    pub fn is_unit(&self) -> bool {
        let ord = MonomialOrder::degrevlex(&self.ring);
        self.groebner(&ord).first().is_some_and(Polynomial::is_constant)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Renames variables `x_i -> x_perm[i]` in every generator.
    pub fn permute_variables(&self, perm: &[usize]) -> Ideal {
        let gens = self.generators.iter().map(|g| g.permute_variables(perm)).collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// Elimination ideal `I ∩ K[remaining]` over the remaining variables.
    pub fn eliminate<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal> {
        let mut dropped = Vec::new();
        for d in drop {
            let i = self.ring.require(d.as_ref())?;
            if !dropped.contains(&i) {
                dropped.push(i);
            }
        }
        dropped.sort_unstable();
        if dropped.len() == self.ring.arity() {
            return Err(Error::EliminateAll);
        }
        let kept: Vec<usize> = (0..self.ring.arity()).filter(|i| !dropped.contains(i)).collect();
        let mut priority = dropped.clone();
        priority.extend(&kept);
        let ord = MonomialOrder::from_indices(OrderKind::Lex, priority);
        let small = VarSet::new(kept.iter().map(|&i| self.ring.name(i).to_string()))?;
        let mut gens = Vec::new();
        for g in self.groebner(&ord).iter() {
            if dropped.iter().all(|&i| g.is_free_of(i)) {
                gens.push(g.to_ring(&small)?);
            }
        }
        Ideal::new(&small, gens)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.generators).finish()
    }
}

pub fn compare(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    ord.compare(a, b)
}

pub fn reduced_groebner(ideal: &Ideal, ord: &MonomialOrder) -> Vec<Polynomial> {
    ideal.groebner(ord).as_ref().clone()
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal, ord: &MonomialOrder) -> Result<bool> {
    ideal.contains(f, ord)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal, ord: &MonomialOrder) -> bool {
    a.equals(b, ord)
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.sum(b)
}

pub fn eliminate<S: AsRef<str>>(ideal: &Ideal, drop: &[S]) -> Result<Ideal> {
    ideal.eliminate(drop)
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial], ord: &MonomialOrder) -> bool {
    if basis.iter().any(Polynomial::is_zero) {
        return false;
    }
    let sorted: Vec<Sorted> = basis.iter().map(|g| Sorted::from_poly(g, ord)).collect();
    for j in 0..sorted.len() {
        for i in 0..j {
            if !reduce(&spoly(&sorted[i], &sorted[j], ord), &sorted, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_polynomial;

    fn ring(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    fn polys(src: &[&str], r: &VarSet) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn order_examples() {
        let r2 = ring(&["x", "y"]);
        let lex = MonomialOrder::lex(&r2);
        assert_eq!(lex.cmp(&mono(&[2, 0]), &mono(&[1, 1])), Ordering::Greater);
        let deglex = MonomialOrder::deglex(&r2);
        assert_eq!(deglex.cmp(&mono(&[0, 2]), &mono(&[1, 0])), Ordering::Greater);

        let r3 = ring(&["x", "y", "z"]);
        let (xz, y2) = (mono(&[1, 0, 1]), mono(&[0, 2, 0]));
        assert_eq!(MonomialOrder::deglex(&r3).cmp(&xz, &y2), Ordering::Greater);
        assert_eq!(MonomialOrder::degrevlex(&r3).cmp(&y2, &xz), Ordering::Greater);
        assert_eq!(MonomialOrder::degrevlex(&r3).cmp(&xz, &xz), Ordering::Equal);

        assert!(matches!(
            compare(&mono(&[1]), &mono(&[1, 0]), &lex),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn priority_changes_lex() {
        let r = ring(&["x", "y"]);
        let yx = MonomialOrder::with_priority(OrderKind::Lex, &r, &["y", "x"]).unwrap();
        assert_eq!(yx.cmp(&mono(&[0, 1]), &mono(&[5, 0])), Ordering::Greater);
        assert!(MonomialOrder::with_priority(OrderKind::Lex, &r, &["y"]).is_err());
        assert!(MonomialOrder::with_priority(OrderKind::Lex, &r, &["y", "y"]).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let lex = MonomialOrder::lex(&r);
        let f = parse_polynomial("x^2*y + 1", &r).unwrap();
        assert_eq!(
            normal_form(&f, &polys(&["x^2"], &r), &lex).unwrap(),
            Polynomial::one(&r)
        );
        let p = parse_polynomial("x^2 + x*y + y^3", &r).unwrap();
        assert!(normal_form(&p, &polys(&["x", "y"], &r), &lex).unwrap().is_zero());

        let gens = polys(&["2*x + y", "x + 3*y^2", "x^2 + x*y + y^3"], &r);
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let gb = ideal.groebner(&lex);
        for g in &gens {
            assert!(normal_form(g, &gb, &lex).unwrap().is_zero());
        }
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring(&["x", "y", "z"]);
        let grevlex = MonomialOrder::degrevlex(&r);
        let [a, b] = [polys(&["x^2"], &r), polys(&["x*y"], &r)].map(|v| v[0].clone());
        assert!(s_polynomial(&a, &b, &grevlex).unwrap().is_zero());
        let lex = MonomialOrder::lex(&r);
        let [f, g] = [polys(&["x - y"], &r), polys(&["x - z"], &r)].map(|v| v[0].clone());
        assert_eq!(
            s_polynomial(&f, &g, &lex).unwrap(),
            parse_polynomial("z - y", &r).unwrap()
        );
        assert!(s_polynomial(&f, &f, &lex).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(&r), &lex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn reduced_basis_of_example_triple() {
        let r = ring(&["x", "y"]);
        let ideal = Ideal::new(&r, polys(&["2*x + y", "x + 3*y^2", "x^2 + x*y + y^3"], &r)).unwrap();
        assert_eq!(
            reduced_groebner(&ideal, &MonomialOrder::lex(&r)),
            polys(&["y", "x"], &r)
        );
        assert!(reduced_groebner(&Ideal::zero(&r), &MonomialOrder::lex(&r)).is_empty());
        assert_eq!(
            reduced_groebner(
                &Ideal::new(&r, polys(&["3", "x"], &r)).unwrap(),
                &MonomialOrder::lex(&r)
            ),
            vec![Polynomial::one(&r)]
        );
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y", "z"]);
        let ord = MonomialOrder::degrevlex(&r);
        let locus = Ideal::new(&r, polys(&["x - y", "x*z + 1"], &r)).unwrap();
        assert!(ideal_member(&parse_polynomial("2*x*z + 2", &r).unwrap(), &locus, &ord).unwrap());
        let sq = Ideal::new(&r, polys(&["x^2"], &r)).unwrap();
        assert!(!ideal_member(&parse_polynomial("x", &r).unwrap(), &sq, &ord).unwrap());
        assert!(ideal_member(&Polynomial::zero(&r), &sq, &ord).unwrap());
        assert!(ideal_member(&Polynomial::zero(&r), &Ideal::zero(&r), &ord).unwrap());
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        let ord = MonomialOrder::degrevlex(&r);
        let i = |s: &[&str]| Ideal::new(&r, polys(s, &r)).unwrap();
        assert!(ideal_equal(&i(&["x", "y"]), &i(&["x + y", "x - y"]), &ord));
        assert!(!ideal_equal(&i(&["x"]), &i(&["x^2"]), &ord));
        assert!(!ideal_equal(&i(&["x", "y"]), &i(&["x", "y^2"]), &ord));
    }

    #[test]
    fn sum_and_elimination() {
        let r = ring(&["x", "y", "z"]);
        let ord = MonomialOrder::degrevlex(&r);
        let i = |s: &[&str]| Ideal::new(&r, polys(s, &r)).unwrap();
        assert!(ideal_sum(&i(&["x"]), &i(&["y"])).unwrap().equals(&i(&["x", "y"]), &ord));

        let e = eliminate(&i(&["x - y^2", "x - z"]), &["x"]).unwrap();
        let small = ring(&["y", "z"]);
        let expected = Ideal::new(&small, polys(&["y^2 - z"], &small)).unwrap();
        assert!(e.equals(&expected, &MonomialOrder::degrevlex(&small)));

        let graph = eliminate(&i(&["x - y*z - z^2"]), &["x"]).unwrap();
        assert!(graph.groebner(&MonomialOrder::lex(graph.ring())).is_empty());
        assert_eq!(
            eliminate(&i(&["x"]), &["x", "y", "z"]).unwrap_err(),
            Error::EliminateAll
        );
    }

    #[test]
    fn cache_is_transparent() {
        let r = ring(&["x", "y"]);
        let ideal = Ideal::new(&r, polys(&["x^2 - y", "x*y - 1"], &r)).unwrap();
        let ord = MonomialOrder::lex(&r);
        let first = ideal.groebner(&ord);
        let again = ideal.clone().groebner(&ord);
        assert_eq!(first, again);
        assert_eq!(*first, compute_reduced(&r, ideal.generators(), &ord));
        assert!(is_groebner_basis(&first, &ord));
    }

    #[test]
    fn concurrent_identical_queries_agree() {
        let r = ring(&["x", "y", "z"]);
        let ideal = Ideal::new(&r, polys(&["x*y - z^2", "y*z - x", "x^3 - y"], &r)).unwrap();
        let ord = MonomialOrder::degrevlex(&r);
        let results: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4).map(|_| s.spawn(|| ideal.groebner(&ord))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::polyring::proptests::poly_strategy;
    use proptest::prelude::*;

    fn r() -> VarSet {
        VarSet::new(["x", "y", "z"]).unwrap()
    }

    fn gens() -> impl Strategy<Value = Vec<Polynomial>> {
        prop::collection::vec(poly_strategy(r(), 2, 3), 1..=3)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::lex(&r())),
            Just(MonomialOrder::deglex(&r())),
            Just(MonomialOrder::degrevlex(&r())),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bases_pass_buchberger_criterion(g in gens(), ord in order()) {
            let ideal = Ideal::new(&r(), g).unwrap();
            prop_assert!(is_groebner_basis(&ideal.groebner(&ord), &ord));
        }

        #[test]
        fn membership_is_order_invariant(g in gens(), f in poly_strategy(r(), 2, 3), w in poly_strategy(r(), 1, 2)) {
            let ideal = Ideal::new(&r(), g.clone()).unwrap();
            let candidates = [f.clone(), &f * &g[0], &(&w * &g[0]) + &f];
            for c in candidates {
                let a = ideal.contains(&c, &MonomialOrder::lex(&r())).unwrap();
                let b = ideal.contains(&c, &MonomialOrder::deglex(&r())).unwrap();
                let d = ideal.contains(&c, &MonomialOrder::degrevlex(&r())).unwrap();
                prop_assert_eq!(a, b);
                prop_assert_eq!(a, d);
            }
        }

        #[test]
        fn elimination_is_sound(g in gens()) {
            let ideal = Ideal::new(&r(), g).unwrap();
            let e = ideal.eliminate(&["x"]).unwrap();
            let ord = MonomialOrder::degrevlex(&r());
            for h in e.generators() {
                prop_assert!(ideal.contains(&h.to_ring(&r()).unwrap(), &ord).unwrap());
            }
        }

        #[test]
        fn equality_is_an_equivalence(a in gens(), b in gens()) {
            let ord = MonomialOrder::degrevlex(&r());
            let ia = Ideal::new(&r(), a).unwrap();
            let ib = Ideal::new(&r(), b).unwrap();
            let rebuilt = Ideal::new(&r(), ia.groebner(&ord).to_vec()).unwrap();
            prop_assert!(ia.equals(&ia, &ord));
            prop_assert!(ia.equals(&rebuilt, &ord));
            prop_assert_eq!(ia.equals(&ib, &ord), ib.equals(&ia, &ord));
            prop_assert_eq!(rebuilt.equals(&ib, &ord), ia.equals(&ib, &ord));
        }
    }
}
