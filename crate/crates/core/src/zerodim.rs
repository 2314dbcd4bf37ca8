//! Zero-dimensional ideals: standard monomials, minimal polynomials,
//! radicals, and exact counts of distinct complex zeros.
//!
//! Every count here is over an algebraically closed field; an ideal that
//! is proper but not zero-dimensional is reported as [`ZeroCount::Infinite`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{normal_form, Ideal, MonomialOrder};
use crate::polyring::{Monomial, Polynomial, Rational, RationalPoint, VarSet};

/// Number of distinct common zeros in complex affine space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroCount {
    Empty,
    Finite(usize),
    Infinite,
}

impl fmt::Display for ZeroCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroCount::Empty => f.write_str("empty"),
            ZeroCount::Finite(n) => write!(f, "{n}"),
            ZeroCount::Infinite => f.write_str("infinite"),
        }
    }
}

impl std::str::FromStr for ZeroCount {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "empty" => Ok(ZeroCount::Empty),
            "infinite" => Ok(ZeroCount::Infinite),
            n => match n.parse::<usize>() {
                Ok(k) if k > 0 => Ok(ZeroCount::Finite(k)),
                _ => Err(format!("`{s}` is not a zero count")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    pub order: MonomialOrder,
    pub standard_monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.standard_monomials.len()
    }
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ArityMismatch {
                expected: cols,
                got: rows.iter().map(Vec::len).find(|&l| l != cols).unwrap_or(0),
            });
        }
        Ok(MatrixQ {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][c].recip();
            for v in rows[next].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
            pivots.push(c);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        let m = MatrixQ::from_rows(rows).unwrap_or_else(|_| MatrixQ::zeros(self.rows, self.cols));
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Dense univariate polynomial, coefficients from degree 0 upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UniPoly(pub(crate) Vec<Rational>);

impl UniPoly {
    fn trimmed(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        UniPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    fn derivative(&self) -> Self {
        UniPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lc_inv = d.0[dd].recip();
        if rem.len() <= dd {
            return (UniPoly(Vec::new()), UniPoly::trimmed(rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::trimmed(quot), UniPoly::trimmed(rem))
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn from_polynomial(p: &Polynomial) -> Result<(Option<usize>, UniPoly)> {
        let support = p.support();
        if support.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let var = support.first().copied();
        let deg = var.map_or(0, |v| p.degree_in(v)) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            let e = var.map_or(0, |v| m.exponent(v)) as usize;
            coeffs[e] = c.clone();
        }
        Ok((var, UniPoly::trimmed(coeffs)))
    }

    fn to_polynomial(&self, ring: &VarSet, var: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.0.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; ring.arity()];
                e[var] = i as u32;
                (Monomial::new(e), c.clone())
            }),
        )
        .expect("arity matches")
    }
}

fn default_order(ring: &VarSet) -> MonomialOrder {
    MonomialOrder::degrevlex(ring)
}

/// Standard monomials of a zero-dimensional ideal under `ord`.
pub fn quotient_basis(ideal: &Ideal, ord: &MonomialOrder) -> Result<QuotientBasis> {
    let gb = ideal.groebner(ord);
    let n = ideal.ring().arity();
    let lms: Vec<Monomial> = gb
        .iter()
        .map(|g| ord.leading_monomial(g).expect("nonzero").clone())
        .collect();
    if lms.iter().any(Monomial::is_one) {
        return Ok(QuotientBasis {
            order: ord.clone(),
            standard_monomials: Vec::new(),
        });
    }
    let mut bounds = vec![None; n];
    for m in &lms {
        if let Some(i) = m.pure_power_of() {
            let e = m.exponent(i);
            bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = match bounds.into_iter().collect::<Option<Vec<u32>>>() {
        Some(b) => b,
        None => return Err(Error::NotZeroDimensional),
    };
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box 0 <= e_i < bounds[i]
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| ord.cmp(a, b));
                return Ok(QuotientBasis {
                    order: ord.clone(),
                    standard_monomials: out,
                });
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Monic generator of `I ∩ K[v]`, returned as a polynomial in `v` over the ideal's ring.
pub fn minimal_polynomial(ideal: &Ideal, var: &str, ord: &MonomialOrder) -> Result<Polynomial> {
    let ring = ideal.ring();
    let v = ring.require(var)?;
    let qb = quotient_basis(ideal, ord)?;
    if qb.dimension() == 0 {
        return Err(Error::UnitIdeal);
    }
    let gb = ideal.groebner(ord);
    let index: HashMap<&Monomial, usize> = qb.standard_monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = qb.dimension();
    let coords = |p: &Polynomial| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (m, c) in p.terms() {
            out[index[m]] = c.clone();
        }
        out
    };
    let x = Polynomial::var_index(ring, v);

    // Echelon rows: (vector, pivot, combination of powers producing it).
    let mut echelon: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    let mut power = normal_form(&Polynomial::one(ring), &gb, ord)?;
    for d in 0..=dim {
        let mut vec = coords(&power);
        let mut combo = vec![Rational::zero(); d + 1];
        combo[d] = Rational::one();
        for (row, pivot, rcombo) in &echelon {
            if vec[*pivot].is_zero() {
                continue;
            }
            let f = vec[*pivot].clone();
            for (a, b) in vec.iter_mut().zip(row) {
                *a -= &f * b;
            }
            for (a, b) in combo.iter_mut().zip(rcombo) {
                *a -= &f * b;
            }
        }
        match vec.iter().position(|c| !c.is_zero()) {
            None => {
                let m = UniPoly::trimmed(combo).monic();
                return Ok(m.to_polynomial(ring, v));
            }
            Some(pivot) => {
                let inv = vec[pivot].recip();
                for a in vec.iter_mut() {
                    *a *= &inv;
                }
                for a in combo.iter_mut() {
                    *a *= &inv;
                }
                echelon.push((vec, pivot, combo));
            }
        }
        power = normal_form(&(&power * &x), &gb, ord)?;
    }
    unreachable!("dim + 1 vectors in a dim-dimensional space are dependent")
}

/// `m / gcd(m, m')`, monic.
pub fn squarefree_part(m: &Polynomial) -> Result<Polynomial> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (var, u) = UniPoly::from_polynomial(m)?;
    let Some(var) = var else {
        return Ok(Polynomial::one(m.ring()));
    };
    let g = u.gcd(&u.derivative());
    let (q, _) = u.div_rem(&g);
    Ok(q.monic().to_polynomial(m.ring(), var))
}

/// Radical of a zero-dimensional proper ideal (Seidenberg): adjoin the
/// squarefree part of every variable's minimal polynomial.
pub fn radical_zero_dim(ideal: &Ideal, ord: &MonomialOrder) -> Result<Ideal> {
    let qb = quotient_basis(ideal, ord)?;
    if qb.dimension() == 0 {
        return Err(Error::UnitIdeal);
    }
    let ring = ideal.ring();
    let mut extra = Vec::with_capacity(ring.arity());
    for name in ring.names() {
        let m = minimal_polynomial(ideal, name, ord)?;
        extra.push(squarefree_part(&m)?);
    }
    let joined = ideal.with_generators(extra)?;
    Ideal::new(ring, joined.groebner(ord).to_vec())
}

/// Count plus the diagnostic quotient dimension before taking the radical.
#[derive(Debug, Clone)]
pub struct ZeroAnalysis {
    pub count: ZeroCount,
    pub multiplicity_dimension: Option<usize>,
    pub radical: Option<Ideal>,
}

pub fn analyze_zeros(ideal: &Ideal) -> ZeroAnalysis {
    let ord = default_order(ideal.ring());
    match quotient_basis(ideal, &ord) {
        Err(_) => ZeroAnalysis {
            count: ZeroCount::Infinite,
            multiplicity_dimension: None,
            radical: None,
        },
        Ok(qb) if qb.dimension() == 0 => ZeroAnalysis {
            count: ZeroCount::Empty,
            multiplicity_dimension: Some(0),
            radical: None,
        },
        Ok(qb) => {
            let radical = radical_zero_dim(ideal, &ord).expect("zero-dimensional and proper");
            let n = quotient_basis(&radical, &ord)
                .expect("radical stays zero-dimensional")
                .dimension();
            ZeroAnalysis {
                count: ZeroCount::Finite(n),
                multiplicity_dimension: Some(qb.dimension()),
                radical: Some(radical),
            }
        }
    }
}

pub fn count_distinct_zeros(ideal: &Ideal) -> ZeroCount {
    analyze_zeros(ideal).count
}

/// Convenience over a generator list; `ring` fixes the ambient space.
pub fn count_distinct_zeros_of(ring: &VarSet, gens: &[Polynomial]) -> Result<ZeroCount> {
    Ok(count_distinct_zeros(&Ideal::new(ring, gens.to_vec())?))
}

const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational roots of a univariate polynomial; `None` when the coefficients
/// are too large for the divisor search.
pub(crate) fn rational_roots(u: &UniPoly) -> Option<Vec<Rational>> {
    let mut coeffs = u.0.clone();
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if coeffs.len() > 1 {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let poly = UniPoly(coeffs.clone());
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().unwrap())?;
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = Rational::new(p * sign, q.clone());
                    if !roots.contains(&cand) && poly.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

const MAX_CANDIDATE_POINTS: usize = 100_000;

/// Rational common zeros of a zero-dimensional proper ideal.
///
/// The boolean is true when the list is known to contain every zero, which
/// happens when each variable's squarefree minimal polynomial splits into
/// rational linear factors.
pub fn rational_zeros(ideal: &Ideal) -> Result<(Vec<RationalPoint>, bool)> {
    let ord = default_order(ideal.ring());
    let radical = radical_zero_dim(ideal, &ord)?;
    let ring = ideal.ring();
    let mut per_var = Vec::with_capacity(ring.arity());
    let mut exhaustive = true;
    for name in ring.names() {
        let m = minimal_polynomial(&radical, name, &ord)?;
        let (_, u) = UniPoly::from_polynomial(&m)?;
        match rational_roots(&u) {
            Some(roots) => {
                if roots.len() != u.degree() {
                    exhaustive = false;
                }
                per_var.push(roots);
            }
            None => return Ok((Vec::new(), false)),
        }
    }
    let total = per_var.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    if total.is_none_or(|t| t > MAX_CANDIDATE_POINTS) {
        return Ok((Vec::new(), false));
    }
    let mut points = Vec::new();
    let mut idx = vec![0usize; ring.arity()];
    if per_var.iter().any(Vec::is_empty) {
        return Ok((points, exhaustive));
    }
    loop {
        let coords: Vec<Rational> = idx.iter().zip(&per_var).map(|(&i, r)| r[i].clone()).collect();
        let mut zero = true;
        for g in radical.generators() {
            if !g.evaluate_slice(&coords)?.is_zero() {
                zero = false;
                break;
            }
        }
        if zero {
            points.push(RationalPoint::new(coords));
        }
        let mut k = ring.arity();
        loop {
            if k == 0 {
                return Ok((points, exhaustive));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_var[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
