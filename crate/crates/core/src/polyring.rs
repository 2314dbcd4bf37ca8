//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a sparse map from dense exponent vectors to nonzero
//! rational coefficients, tied to the [`VarSet`] it lives over. Terms are
//! kept in degrevlex order with declaration priority, so iteration and
//! rendering are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ordered list of distinct variable names.
#[derive(Clone)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidVarSet(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarSet(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarSet { names: Arc::new(names) })
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same names regardless of order.
    pub fn same_names(&self, other: &VarSet) -> bool {
        self.arity() == other.arity() && self.names.iter().all(|n| other.contains(n))
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

impl Hash for VarSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet({})", self.names.join(", "))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

/// Dense exponent vector.
///
/// `Ord` is degrevlex with the first coordinate as the highest variable;
/// this is the canonical storage order of [`Polynomial`] terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub(crate) fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index when this is a pure power `x_i^e`, `e >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            e[perm[i]] = x;
        }
        Monomial(e)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub coordinates: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coordinates: Vec<Rational>) -> Self {
        RationalPoint { coordinates }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalPoint::new(coords.iter().map(|&c| integer(c)).collect())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coordinates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact polynomial over a fixed [`VarSet`]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &VarSet) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &VarSet) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &VarSet, c: Rational) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.arity()), c)
    }

    pub fn monomial(ring: &VarSet, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.arity(), ring.arity());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &VarSet, name: &str) -> Result<Self> {
        let i = ring.require(name)?;
        Ok(Polynomial::var_index(ring, i))
    }

    pub fn var_index(ring: &VarSet, index: usize) -> Self {
        Polynomial::monomial(ring, Monomial::variable(ring.arity(), index), Rational::one())
    }

    /// Builds a canonical polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(ring: &VarSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.arity() != ring.arity() {
                return Err(Error::ArityMismatch {
                    expected: ring.arity(),
                    got: m.arity(),
                });
            }
            accumulate(&mut map, m, c);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: map,
        })
    }

    pub(crate) fn from_map(ring: &VarSet, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    /// Terms from the largest monomial (degrevlex) down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    pub fn is_free_of(&self, index: usize) -> bool {
        self.degree_in(index) == 0
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|&i| !self.is_free_of(i)).collect()
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add_same_ring(other, false),
            ArithOp::Sub => self.add_same_ring(other, true),
            ArithOp::Mul => self.mul_same_ring(other),
        })
    }

    fn add_same_ring(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            accumulate(&mut terms, m.clone(), c);
        }
        Polynomial::from_map(&self.ring, terms)
    }

    fn mul_same_ring(&self, other: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, ma * mb, ca * cb);
            }
        }
        Polynomial::from_map(&self.ring, terms)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial::from_map(&self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t * m, a * c)).collect();
        Polynomial::from_map(&self.ring, terms)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.require(var)?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, index: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            accumulate(&mut terms, Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Polynomial::from_map(&self.ring, terms)
    }

    /// All partial derivatives, in declaration order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.arity()).map(|i| self.derivative_index(i)).collect()
    }

    /// Image under the substitution homomorphism into `target`.
    ///
    /// Variables absent from `map` are sent to the variable with the same
    /// name in `target`, which must exist whenever the variable occurs.
    pub fn substitute(&self, map: &BTreeMap<String, Polynomial>, target: &VarSet) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.ring.arity());
        for (i, name) in self.ring.names().iter().enumerate() {
            let image = match map.get(name) {
                Some(p) => {
                    if p.ring != *target {
                        return Err(Error::RingMismatch);
                    }
                    Some(p.clone())
                }
                None if self.is_free_of(i) => None,
                None => Some(Polynomial::var(target, name)?),
            };
            images.push(image);
        }
        let mut power_cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| match img {
                Some(p) => vec![Polynomial::one(target), p.clone()],
                None => vec![Polynomial::one(target)],
            })
            .collect();
        let mut result = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            result = &result + &term;
        }
        Ok(result)
    }

    /// Re-expresses the polynomial over another ring by variable name.
    pub fn to_ring(&self, target: &VarSet) -> Result<Polynomial> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let mut index_map = vec![usize::MAX; self.ring.arity()];
        for i in self.support() {
            index_map[i] = target.require(self.ring.name(i))?;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.arity()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[index_map[i]] = x;
                }
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Renames variables by the index permutation `x_i -> x_perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect();
        Polynomial::from_map(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &RationalPoint) -> Result<Rational> {
        self.evaluate_slice(&point.coordinates)
    }

    pub fn evaluate_slice(&self, coords: &[Rational]) -> Result<Rational> {
        if coords.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                got: coords.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in coords.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Rebuilds the term map from scratch; the identity on valid values.
    pub fn normalized(&self) -> Polynomial {
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
            .expect("stored monomials have the ring arity")
    }

    /// Largest term in the canonical (degrevlex) order.
    pub fn canonical_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Divides every coefficient so the canonical leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.canonical_leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn has_negative_leading(&self) -> bool {
        self.canonical_leading().is_some_and(|(_, c)| c.is_negative())
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

// Operator impls panic on ring mismatch; use `arith` for the checked form.
impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Add).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Sub).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Mul).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::textio::render(self, crate::textio::RenderStyle::MonicInternal)
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render(self, crate::textio::RenderStyle::MonicInternal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_polynomial;

    fn ring(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    fn p(s: &str, r: &VarSet) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn varset_rejects_duplicates_and_bad_names() {
        assert!(VarSet::new(["x", "x"]).is_err());
        assert!(VarSet::new(["1x"]).is_err());
        assert!(VarSet::new([""]).is_err());
        assert!(VarSet::new(["x_1", "y2"]).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(&["x", "y"]);
        let x = p("x", &r);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&p("x + y", &r) * &p("x - y", &r), p("x^2 - y^2", &r));
        assert_eq!(&p("x*y - 1", &r) * &p("x*y + 1", &r), p("x^2*y^2 - 1", &r));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p("x", &ring(&["x", "y"]));
        let b = p("x", &ring(&["x", "z"]));
        assert_eq!(a.arith(&b, ArithOp::Add), Err(Error::RingMismatch));
    }

    #[test]
    fn derivatives() {
        let r = ring(&["x", "y"]);
        let f = p("x^2 + x*y + y^3", &r);
        assert_eq!(f.partial_derivative("x").unwrap(), p("2*x + y", &r));
        assert_eq!(f.partial_derivative("y").unwrap(), p("x + 3*y^2", &r));
        assert!(p("5", &r).partial_derivative("y").unwrap().is_zero());
        assert_eq!(p("x^3", &r).partial_derivative("x").unwrap(), p("3*x^2", &r));
        assert_eq!(f.partial_derivative("w"), Err(Error::UnknownVariable("w".into())));
    }

    #[test]
    fn gradients() {
        let r = ring(&["x", "y", "z"]);
        let g = p("x + y + z - x*y*z", &r).gradient();
        assert_eq!(g, vec![p("1 - y*z", &r), p("1 - x*z", &r), p("1 - x*y", &r)]);
        let r2 = ring(&["x", "y"]);
        assert_eq!(p("x^2 + y^2 - 1", &r2).gradient(), vec![p("2*x", &r2), p("2*y", &r2)]);
        assert!(p("7", &r).gradient().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn substitution() {
        let r = ring(&["x", "y", "z", "u"]);
        let f = p("x - x*y*z + y + z", &r);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), p("u*z - y - z", &r));
        let got = f.substitute(&map, &r).unwrap();
        let expected = p("(u*z - y - z) - (u*z - y - z)*y*z + y + z", &r);
        assert_eq!(got, expected);
        assert_eq!(f.substitute(&BTreeMap::new(), &r).unwrap(), f);

        let mut zero = BTreeMap::new();
        zero.insert("x".to_string(), Polynomial::zero(&r));
        assert!(p("x^2", &r).substitute(&zero, &r).unwrap().is_zero());

        let mut bad = BTreeMap::new();
        bad.insert("x".to_string(), p("x", &ring(&["x"])));
        assert_eq!(f.substitute(&bad, &r), Err(Error::RingMismatch));
    }

    #[test]
    fn evaluation() {
        let r = ring(&["x", "y"]);
        let f = p("1 - 2*(1 + y)*(1 + x + x*y)", &r);
        let pt = RationalPoint::new(vec![integer(0), rational(-1, 2)]);
        assert!(f.evaluate(&pt).unwrap().is_zero());
        assert_eq!(
            p("x^2 + y^2 - 1", &r)
                .evaluate(&RationalPoint::from_integers(&[0, 0]))
                .unwrap(),
            integer(-1)
        );
        let r3 = ring(&["x", "y", "z"]);
        assert!(p("1 - y*z", &r3)
            .evaluate(&RationalPoint::from_integers(&[1, 1, 1]))
            .unwrap()
            .is_zero());
        assert!(matches!(
            f.evaluate(&RationalPoint::from_integers(&[1])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn canonical_order_is_degrevlex() {
        let r = ring(&["x", "y", "z"]);
        let f = p("x*z + y^2", &r);
        let order: Vec<_> = f.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 2, 0], vec![1, 0, 1]]);
    }
}

#[cfg(test)]
pub(crate) mod proptests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn poly_strategy(ring: VarSet, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        let n = ring.arity();
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, n), -5i64..=5, 1i64..=3),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                &ring,
                ts.into_iter().map(|(e, a, b)| (Monomial::new(e), rational(a, b))),
            )
            .unwrap()
        })
    }

    fn r() -> VarSet {
        VarSet::new(["x", "y", "z"]).unwrap()
    }

    fn point() -> impl Strategy<Value = RationalPoint> {
        prop::collection::vec((-4i64..=4, 1i64..=3), 3)
            .prop_map(|v| RationalPoint::new(v.into_iter().map(|(a, b)| rational(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(r(), 2, 4), b in poly_strategy(r(), 2, 4), c in poly_strategy(r(), 2, 4)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn product_rule(f in poly_strategy(r(), 3, 4), g in poly_strategy(r(), 3, 4), v in 0usize..3) {
            let lhs = (&f * &g).derivative_index(v);
            let rhs = &(&f * &g.derivative_index(v)) + &(&g * &f.derivative_index(v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in poly_strategy(r(), 3, 4), g in poly_strategy(r(), 3, 4), pt in point()) {
            let ef = f.evaluate(&pt).unwrap();
            let eg = g.evaluate(&pt).unwrap();
            prop_assert_eq!((&f + &g).evaluate(&pt).unwrap(), &ef + &eg);
            prop_assert_eq!((&f * &g).evaluate(&pt).unwrap(), ef * eg);
        }

        #[test]
        fn substitute_then_evaluate(f in poly_strategy(r(), 2, 4), images in prop::collection::vec(poly_strategy(r(), 2, 3), 3), pt in point()) {
            let ring = r();
            let map: BTreeMap<String, Polynomial> = ring.names().iter().cloned().zip(images.iter().cloned()).collect();
            let composed = f.substitute(&map, &ring).unwrap();
            let inner: Vec<Rational> = images.iter().map(|g| g.evaluate(&pt).unwrap()).collect();
            prop_assert_eq!(composed.evaluate(&pt).unwrap(), f.evaluate_slice(&inner).unwrap());
        }

        #[test]
        fn normalization_is_idempotent(f in poly_strategy(r(), 3, 6)) {
            prop_assert_eq!(f.normalized(), f);
        }
    }
}
