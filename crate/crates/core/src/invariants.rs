//! Jacobian elementary ideals and quasi-singular points.
//!
//! `E_k + R` is an isomorphism invariant up to renaming variables, so a
//! failed comparison under every permutation proves two varieties are not
//! isomorphic. A passing comparison proves nothing. The number of common
//! zeros of the gradient is an invariant of the embedding, not of the
//! variety.

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, MonomialOrder};
use crate::polyring::{Polynomial, RationalPoint, VarSet};
use crate::zerodim::{analyze_zeros, rational_zeros, ZeroCount};

/// Default bound on ring arity for the permutation search (8! = 40320 candidates).
pub const DEFAULT_MAX_ARITY: usize = 8;

/// Matrix of partial derivatives, one row per polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianMatrix {
    ring: VarSet,
    entries: Vec<Vec<Polynomial>>,
}

impl JacobianMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.ring.arity()
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn row(&self, row: usize) -> &[Polynomial] {
        &self.entries[row]
    }
}

pub fn jacobian(polys: &[Polynomial]) -> Result<JacobianMatrix> {
    let ring = polys.first().ok_or(Error::EmptyList)?.ring().clone();
    if polys.iter().any(|p| p.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    Ok(JacobianMatrix {
        entries: polys.iter().map(Polynomial::gradient).collect(),
        ring,
    })
}

/// Exact quotient `a / b`; fails unless `b` divides `a`.
pub fn divide_exact(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ord = MonomialOrder::degrevlex(a.ring());
    let (bm, bc) = ord.leading_term(b).expect("nonzero");
    let (bm, bc) = (bm.clone(), bc.clone());
    let mut rem = a.clone();
    let mut quot = Polynomial::zero(a.ring());
    while let Some((m, c)) = ord.leading_term(&rem) {
        if !bm.divides(m) {
            return Err(Error::InexactDivision);
        }
        let t = bm.quotient_of(m);
        let coef = c / &bc;
        rem = &rem - &b.mul_monomial(&t, &coef);
        quot = &quot + &Polynomial::monomial(a.ring(), t, coef);
    }
    Ok(quot)
}

fn cofactor_det(m: &[Vec<Polynomial>], ring: &VarSet) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &cofactor_det(&sub, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Fraction-free Bareiss elimination; every division is exact.
fn bareiss_det(mut m: Vec<Vec<Polynomial>>, ring: &VarSet) -> Polynomial {
    let n = m.len();
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = divide_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

pub fn determinant(m: &[Vec<Polynomial>], ring: &VarSet) -> Polynomial {
    if m.len() <= 3 {
        cofactor_det(m, ring)
    } else {
        bareiss_det(m.to_vec(), ring)
    }
}

/// All `size`×`size` minors, ordered by (row set, column set) lexicographically.
pub fn minors(jac: &JacobianMatrix, size: usize) -> Result<Vec<Polynomial>> {
    let max = jac.rows().min(jac.cols());
    if size == 0 || size > max {
        return Err(Error::MinorSize { size, max });
    }
    let mut out = Vec::new();
    for rows in (0..jac.rows()).combinations(size) {
        for cols in (0..jac.cols()).combinations(size) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac.get(r, c).clone()).collect())
                .collect();
            out.push(determinant(&sub, &jac.ring));
        }
    }
    Ok(out)
}

/// `E_k`: zero when `n-k > m`, the unit ideal when `n-k <= 0`, otherwise
/// generated by the `(n-k)`-minors of the Jacobian of `polys`.
pub fn elementary_ideal(ring: &VarSet, polys: &[Polynomial], k: usize) -> Result<Ideal> {
    if polys.iter().any(|p| p.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let n = ring.arity();
    let m = polys.len();
    if k >= n {
        return Ok(Ideal::unit(ring));
    }
    let size = n - k;
    if size > m {
        return Ok(Ideal::zero(ring));
    }
    let jac = jacobian(polys)?;
    Ideal::new(ring, minors(&jac, size)?)
}

/// `E_0, ..., E_n` for one generator list.
#[derive(Debug, Clone)]
pub struct ElementaryIdealFamily {
    pub arity: usize,
    pub generator_count: usize,
    pub ideals: Vec<Ideal>,
}

impl ElementaryIdealFamily {
    pub fn new(ring: &VarSet, polys: &[Polynomial]) -> Result<Self> {
        let ideals = (0..=ring.arity())
            .map(|k| elementary_ideal(ring, polys, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementaryIdealFamily {
            arity: ring.arity(),
            generator_count: polys.len(),
            ideals,
        })
    }

    /// `E_k`; indices past the arity are the unit ideal.
    pub fn get(&self, k: usize) -> &Ideal {
        &self.ideals[k.min(self.arity)]
    }
}

/// Outcome of comparing `E_k + R` on two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVerdict {
    pub k: usize,
    /// Some renaming makes the two ideals equal. Consistent with
    /// isomorphism; never a proof of it.
    pub equal: bool,
    /// `x_i -> x_witness[i]`, the first success in lexicographic order.
    pub witness_renaming: Option<Vec<usize>>,
    /// Reduced degrevlex basis of `E_k + R` for the left side (unrenamed).
    pub left: Vec<Polynomial>,
    pub right: Vec<Polynomial>,
}

impl InvariantVerdict {
    /// True when the comparison certifies the varieties are not isomorphic.
    pub fn distinguishes(&self) -> bool {
        !self.equal
    }
}

pub fn compare_invariants(
    left: &[Polynomial],
    right: &[Polynomial],
    modulo: &Ideal,
    k: usize,
) -> Result<InvariantVerdict> {
    compare_invariants_bounded(left, right, modulo, k, DEFAULT_MAX_ARITY)
}

pub fn compare_invariants_bounded(
    left: &[Polynomial],
    right: &[Polynomial],
    modulo: &Ideal,
    k: usize,
    max_arity: usize,
) -> Result<InvariantVerdict> {
    let ring = modulo.ring();
    let n = ring.arity();
    if n > max_arity {
        return Err(Error::ArityGuard {
            arity: n,
            max: max_arity,
        });
    }
    let lhs = elementary_ideal(ring, left, k)?.sum(modulo)?;
    let rhs = elementary_ideal(ring, right, k)?.sum(modulo)?;
    let ord = MonomialOrder::degrevlex(ring);
    let left_basis = lhs.groebner(&ord).to_vec();
    let right_basis = rhs.groebner(&ord).to_vec();
    let mut witness = None;
    for perm in (0..n).permutations(n) {
        let renamed = lhs.permute_variables(&perm);
        if !rhs.contains_ideal(&renamed, &ord)? {
            continue;
        }
        if renamed.equals(&rhs, &ord) {
            witness = Some(perm);
            break;
        }
    }
    Ok(InvariantVerdict {
        k,
        equal: witness.is_some(),
        witness_renaming: witness,
        left: left_basis,
        right: right_basis,
    })
}

/// Zeros of the gradient of a hypersurface polynomial.
#[derive(Debug, Clone)]
pub struct QuasiSingularReport {
    pub count: ZeroCount,
    pub gradient: Vec<Polynomial>,
    pub rational_points: Vec<RationalPoint>,
    /// `rational_points` lists every zero.
    pub points_exhaustive: bool,
    /// Quotient dimension before taking the radical, when finite.
    pub multiplicity_dimension: Option<usize>,
}

pub fn quasi_singular(p: &Polynomial) -> Result<QuasiSingularReport> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let gradient = p.gradient();
    let ideal = Ideal::new(p.ring(), gradient.clone())?;
    let analysis = analyze_zeros(&ideal);
    let (rational_points, points_exhaustive) = match analysis.count {
        ZeroCount::Empty => (Vec::new(), true),
        ZeroCount::Infinite => (Vec::new(), false),
        ZeroCount::Finite(_) => rational_zeros(&ideal)?,
    };
    for pt in &rational_points {
        for g in &gradient {
            debug_assert!(g.evaluate(pt)?.is_zero());
        }
    }
    Ok(QuasiSingularReport {
        count: analysis.count,
        gradient,
        rational_points,
        points_exhaustive,
        multiplicity_dimension: analysis
            .multiplicity_dimension
            .filter(|_| analysis.count != ZeroCount::Infinite),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::polyring::rational;
    use crate::textio::parse_polynomial;

    fn ring(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    fn p(s: &str, r: &VarSet) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn ideal(src: &[&str], r: &VarSet) -> Ideal {
        Ideal::new(r, src.iter().map(|s| p(s, r)).collect()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(&["x", "y"]);
        let j = jacobian(&[p("x^2 + x*y + y^3", &r)]).unwrap();
        assert_eq!((j.rows(), j.cols()), (1, 2));
        assert_eq!(j.row(0), &[p("2*x + y", &r), p("x + 3*y^2", &r)]);

        let r3 = ring(&["x", "y", "z"]);
        let j = jacobian(&[p("x + y*z + z^2", &r3), p("x^2 + y^3", &r3)]).unwrap();
        assert_eq!(j.row(0), &[p("1", &r3), p("z", &r3), p("y + 2*z", &r3)]);
        assert_eq!(j.row(1), &[p("2*x", &r3), p("3*y^2", &r3), p("0", &r3)]);

        assert!(jacobian(&[p("4", &r)]).unwrap().row(0).iter().all(Polynomial::is_zero));
        assert_eq!(jacobian(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn minors_examples() {
        let r = ring(&["x", "y"]);
        let j = jacobian(&[p("x^2 + x*y + y^3", &r)]).unwrap();
        assert_eq!(minors(&j, 1).unwrap(), vec![p("2*x + y", &r), p("x + 3*y^2", &r)]);
        assert!(matches!(minors(&j, 2), Err(Error::MinorSize { .. })));
        assert!(matches!(minors(&j, 0), Err(Error::MinorSize { .. })));

        // rows (1, z, y+2z), (2x, 3y^2, 0) with k = 1
        let r3 = ring(&["x", "y", "z"]);
        let j = jacobian(&[p("x + y*z + z^2", &r3), p("x^2 + y^3", &r3)]).unwrap();
        let got = minors(&j, 2).unwrap();
        assert_eq!(
            got,
            vec![
                p("3*y^2 - 2*x*z", &r3),
                p("-2*x*(y + 2*z)", &r3),
                p("-3*y^2*(y + 2*z)", &r3),
            ]
        );

        let zero_row = jacobian(&[p("x", &r3), p("7", &r3)]).unwrap();
        assert!(minors(&zero_row, 2).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let r = ring(&["x", "y"]);
        let m: Vec<Vec<Polynomial>> = [
            ["x", "1", "y", "0"],
            ["y", "x^2", "1", "x"],
            ["1", "y", "x*y", "2"],
            ["x + y", "0", "3", "y^2"],
        ]
        .iter()
        .map(|row| row.iter().map(|s| p(s, &r)).collect())
        .collect();
        assert_eq!(bareiss_det(m.clone(), &r), cofactor_det(&m, &r));

        let mut singular = m.clone();
        singular[3] = singular[0].clone();
        assert!(determinant(&singular, &r).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            divide_exact(&p("x^2 - y^2", &r), &p("x - y", &r)).unwrap(),
            p("x + y", &r)
        );
        assert_eq!(
            divide_exact(&p("x^2 + 1", &r), &p("x", &r)),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn elementary_ideal_cases() {
        let r = ring(&["x", "y"]);
        let ps = [p("x^2 + x*y + y^3", &r)];
        let ord = MonomialOrder::degrevlex(&r);
        assert!(elementary_ideal(&r, &ps, 0).unwrap().groebner(&ord).is_empty());
        assert!(elementary_ideal(&r, &ps, 1)
            .unwrap()
            .equals(&ideal(&["2*x + y", "x + 3*y^2"], &r), &ord));
        assert!(elementary_ideal(&r, &ps, 2).unwrap().is_unit());
        assert!(elementary_ideal(&r, &ps, 5).unwrap().is_unit());
    }

    #[test]
    fn family_is_an_ascending_chain() {
        let r = ring(&["x", "y", "z"]);
        let ps = [p("x + y*z + z^2", &r), p("x^2 + y^3", &r)];
        let fam = ElementaryIdealFamily::new(&r, &ps).unwrap();
        let ord = MonomialOrder::degrevlex(&r);
        for k in 0..fam.arity {
            assert!(
                fam.get(k + 1).contains_ideal(fam.get(k), &ord).unwrap(),
                "E_{k} not in E_{}",
                k + 1
            );
        }
    }

    #[test]
    fn compare_examples() {
        let r = ring(&["x", "y"]);
        let pp = p("x^2 + x*y + y^3", &r);
        let qq = p("x^2 + y^3", &r);
        let modulo = Ideal::new(&r, vec![pp.clone(), qq.clone()]).unwrap();
        let v = compare_invariants(std::slice::from_ref(&pp), &[qq], &modulo, 1).unwrap();
        assert!(v.distinguishes());
        assert_eq!(v.witness_renaming, None);

        let same = compare_invariants(std::slice::from_ref(&pp), std::slice::from_ref(&pp), &modulo, 1).unwrap();
        assert!(same.equal);
        assert_eq!(same.witness_renaming, Some(vec![0, 1]));

        // p with x, y swapped against a swap-symmetric R
        let swapped = pp.permute_variables(&[1, 0]);
        let sym = Ideal::new(&r, vec![pp.clone(), swapped.clone()]).unwrap();
        let v = compare_invariants(std::slice::from_ref(&pp), &[swapped], &sym, 1).unwrap();
        assert!(v.equal);
        let wit = v.witness_renaming.unwrap();
        let renamed = Ideal::new(&r, v.left.clone()).unwrap().permute_variables(&wit);
        assert!(renamed.equals(&Ideal::new(&r, v.right.clone()).unwrap(), &MonomialOrder::degrevlex(&r)));
    }

    #[test]
    fn arity_guard_refuses() {
        let names: Vec<String> = (0..9).map(|i| format!("x{i}")).collect();
        let r = VarSet::new(names).unwrap();
        let f = [Polynomial::var_index(&r, 0)];
        let err = compare_invariants(&f, &f, &Ideal::zero(&r), 1).unwrap_err();
        assert_eq!(err, Error::ArityGuard { arity: 9, max: 8 });
        assert!(compare_invariants_bounded(&f, &f, &Ideal::zero(&r), 8, 9).is_ok());
    }

    #[test]
    fn quasi_singular_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            quasi_singular(&p("x - x^2 - x^2*y - 1", &r)).unwrap().count,
            ZeroCount::Empty
        );

        let q = quasi_singular(&p("x - (1 + x + x*y)^2", &r)).unwrap();
        assert_eq!(q.count, ZeroCount::Finite(1));
        assert_eq!(
            q.rational_points,
            vec![RationalPoint::new(vec![rational(0, 1), rational(-1, 2)])]
        );
        assert!(q.points_exhaustive);

        let circle = quasi_singular(&p("x^2 + y^2 - 1", &r)).unwrap();
        assert_eq!(circle.count, ZeroCount::Finite(1));
        assert_eq!(circle.rational_points, vec![RationalPoint::from_integers(&[0, 0])]);
        assert_eq!(quasi_singular(&p("x^2*y - 1", &r)).unwrap().count, ZeroCount::Infinite);
        assert_eq!(quasi_singular(&p("3", &r)).unwrap_err(), Error::ConstantPolynomial);

        let r4 = ring(&["a", "b", "c", "d"]);
        let prop = quasi_singular(&p("a + b + c + d - a*b*c*d", &r4)).unwrap();
        assert_eq!(prop.count, ZeroCount::Finite(3));
        // x^3 = 1 has one rational root, so the listing is partial
        assert_eq!(prop.rational_points, vec![RationalPoint::from_integers(&[1, 1, 1, 1])]);
        assert!(!prop.points_exhaustive);
    }

    #[test]
    fn counts_survive_translation() {
        let r = ring(&["x", "y"]);
        let mut shift = BTreeMap::new();
        shift.insert("x".to_string(), p("x + 3", &r));
        shift.insert("y".to_string(), p("y - 1/2", &r));
        for text in [
            "x - y - x^2*y - x^2*y^2",
            "x^2*y - 1",
            "x - x^2 - x^2*y - 1",
            "x^2 + y^2 - 1",
        ] {
            let f = p(text, &r);
            let g = f.substitute(&shift, &r).unwrap();
            assert_eq!(
                quasi_singular(&f).unwrap().count,
                quasi_singular(&g).unwrap().count,
                "{text}"
            );
        }
    }

    #[test]
    fn distinct_count_bounded_by_quotient_dimension() {
        let r = ring(&["x", "y"]);
        for text in [
            "x^3 + y^3 - 3*x*y",
            "x - y - x^2*y - x^2*y^2",
            "x^4 + y^4",
            "x^2*y^2 + x + y",
        ] {
            let report = quasi_singular(&p(text, &r)).unwrap();
            if let (ZeroCount::Finite(n), Some(d)) = (report.count, report.multiplicity_dimension) {
                assert!(n <= d, "{text}: {n} > {d}");
            }
        }
        let cusp = quasi_singular(&p("x^4 + y^4", &r)).unwrap();
        assert_eq!(cusp.count, ZeroCount::Finite(1));
        assert_eq!(cusp.multiplicity_dimension, Some(9));
    }
}
