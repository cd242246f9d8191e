//! Degree-truncated Magnus expansion into the free associative algebra
//! `Z<X_1..X_n> / (degree > d)`, plus ideal closures inside that algebra.
//!
//! Generators expand as `x_i -> 1 + X_i` and inverses as the truncated
//! geometric series. The monomial basis is ordered graded, then
//! lexicographically by variable index; this order is part of the
//! machine-readable output format.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::intlat::{Echelon, IntLattice, Vector};
use crate::num::Int;
use crate::words::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "X{}", v + 1)?;
        }
        Ok(())
    }
}

/// Indexing of all monomials of degree `<= degree` in `nvars` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: usize,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        MonomialBasis { nvars, degree }
    }

    /// Number of monomials of degree `< len`.
    pub fn offset(&self, len: usize) -> usize {
        let mut total = 0usize;
        let mut p = 1usize;
        for _ in 0..len {
            total += p;
            p *= self.nvars;
        }
        total
    }

    pub fn dim(&self) -> usize {
        self.offset(self.degree + 1)
    }

    /// Dimension, or `None` if it would exceed `cap`.
    pub fn checked_dim(nvars: usize, degree: usize, cap: usize) -> Option<usize> {
        let mut total = 0usize;
        let mut p = 1usize;
        for _ in 0..=degree {
            total = total.checked_add(p)?;
            if total > cap {
                return None;
            }
            p = p.checked_mul(nvars)?;
        }
        Some(total)
    }

    pub fn index(&self, m: &Monomial) -> usize {
        let mut v = 0usize;
        for &x in &m.0 {
            v = v * self.nvars + x as usize;
        }
        self.offset(m.degree()) + v
    }

    pub fn monomial(&self, mut idx: usize) -> Monomial {
        let mut len = 0;
        while idx >= self.offset(len + 1) {
            len += 1;
        }
        idx -= self.offset(len);
        let mut v = alloc::vec![0u32; len];
        for k in (0..len).rev() {
            v[k] = (idx % self.nvars) as u32;
            idx /= self.nvars;
        }
        Monomial(v)
    }

    /// Degree of the monomial at `idx`.
    pub fn degree_of(&self, idx: usize) -> usize {
        let mut len = 0;
        while idx >= self.offset(len + 1) {
            len += 1;
        }
        len
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.dim()).map(move |i| self.monomial(i))
    }
}

/// Noncommutative polynomial with all monomials of degree `> degree` discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Int>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        TruncatedSeries { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, degree: usize) -> Self {
        let mut s = Self::zero(nvars, degree);
        s.add_term(Monomial::default(), &Int::ONE);
        s
    }

    pub fn var(i: u32, nvars: usize, degree: usize) -> Self {
        let mut s = Self::zero(nvars, degree);
        s.add_term(Monomial(alloc::vec![i]), &Int::ONE);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> Vec<(&Monomial, &Int)> {
        self.terms.iter().collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        self.terms.get(m).cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: &Int) {
        if m.degree() > self.degree || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(Int::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Magnus expansion of a word.
    pub fn expand(w: &Word, nvars: usize, degree: usize) -> Self {
        let mut s = Self::one(nvars, degree);
        for l in w.letters() {
            s = s.mul_letter(l.gen, l.inv);
        }
        s
    }

    fn mul_letter(&self, gen: u32, inv: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &self.terms {
            let room = self.degree - m.degree();
            let mut mono = m.clone();
            let mut coef = c.clone();
            for _ in 0..room {
                mono.0.push(gen);
                if inv {
                    coef = -coef;
                }
                out.add_term(mono.clone(), &coef);
                if !inv {
                    break;
                }
            }
        }
        out
    }

    pub fn expand_ring(a: &RingElement, nvars: usize, degree: usize) -> Self {
        let mut s = Self::zero(nvars, degree);
        for (w, c) in a.terms() {
            let e = Self::expand(w, nvars, degree);
            for (m, k) in e.terms {
                s.add_term(m, &(&k * c));
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.min(other.degree));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() <= out.degree {
                    out.add_term(a.concat(b), &(ca * cb));
                }
            }
        }
        out
    }

    /// Least total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn to_vector(&self, basis: &MonomialBasis) -> Vector {
        let mut v = alloc::vec![Int::ZERO; basis.dim()];
        for (m, c) in &self.terms {
            if m.degree() <= basis.degree {
                v[basis.index(m)] = c.clone();
            }
        }
        v
    }

    pub fn from_vector(v: &[Int], basis: &MonomialBasis) -> Self {
        let mut s = Self::zero(basis.nvars, basis.degree);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                s.add_term(basis.monomial(i), c);
            }
        }
        s
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.abs();
            if m.is_empty() {
                write!(f, "{}{}", sep, mag)?;
            } else if mag.is_one() {
                write!(f, "{}{}", sep, m)?;
            } else {
                write!(f, "{}{}*{}", sep, mag, m)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Least degree of a nonzero coefficient in the degree-`d_max` expansion, or
/// `None` when every coefficient up to `d_max` vanishes.
pub fn min_degree(a: &RingElement, nvars: usize, d_max: usize) -> Result<Option<usize>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(TruncatedSeries::expand_ring(a, nvars, d_max).min_degree())
}

/// Sparse truncated product of two dense vectors in the same basis.
pub fn vec_mul(a: &[Int], b: &[Int], basis: &MonomialBasis) -> Vector {
    let n = basis.nvars;
    let d = basis.degree;
    let mut out = alloc::vec![Int::ZERO; basis.dim()];
    let nz = |v: &[Int]| -> Vec<(usize, usize, usize)> {
        // (index, degree, base-n value)
        let mut r = Vec::new();
        let mut len = 0;
        let mut next = basis.offset(1);
        for (i, c) in v.iter().enumerate() {
            while i >= next {
                len += 1;
                next = basis.offset(len + 1);
            }
            if !c.is_zero() {
                r.push((i, len, i - basis.offset(len)));
            }
        }
        r
    };
    let na = nz(a);
    let nb = nz(b);
    for &(ia, la, va) in &na {
        for &(ib, lb, vb) in &nb {
            if la + lb > d {
                break;
            }
            let idx = basis.offset(la + lb) + va * n.pow(lb as u32) + vb;
            let t = &a[ia] * &b[ib];
            out[idx] += &t;
        }
    }
    out
}

/// Multiplies by a variable on the left or the right, dropping terms past
/// the truncation degree.
fn shift(v: &[Int], var: u32, left: bool, basis: &MonomialBasis) -> Vector {
    let mut out = alloc::vec![Int::ZERO; basis.dim()];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() || basis.degree_of(i) == basis.degree {
            continue;
        }
        let m = basis.monomial(i);
        let mut letters = Vec::with_capacity(m.0.len() + 1);
        if left {
            letters.push(var);
            letters.extend_from_slice(&m.0);
        } else {
            letters.extend_from_slice(&m.0);
            letters.push(var);
        }
        out[basis.index(&Monomial(letters))] = c.clone();
    }
    out
}

/// Smallest lattice containing `gens` and closed under multiplication by
/// each variable on the requested sides.
fn variable_closure(
    gens: &[Vector],
    basis: &MonomialBasis,
    left: bool,
    right: bool,
    cap: usize,
) -> Result<IntLattice> {
    let mut e = Echelon::new(basis.dim());
    let mut queue: Vec<Vector> = gens.to_vec();
    queue.reverse();
    while let Some(v) = queue.pop() {
        if e.reduce(v.clone()).iter().all(|c| c.is_zero()) {
            continue;
        }
        for i in 0..basis.nvars as u32 {
            for side in [true, false] {
                if (side && left) || (!side && right) {
                    let w = shift(&v, i, side, basis);
                    if w.iter().any(|c| !c.is_zero()) {
                        queue.push(w);
                    }
                }
            }
        }
        e.insert(v);
        if e.rank() > cap {
            return Err(Error::CapExceeded { what: "shadow saturation", cap });
        }
    }
    Ok(IntLattice::from_echelon(&e))
}

/// The two-sided ideal generated by `gens` in the truncated algebra.
pub fn ideal_closure(gens: &[Vector], basis: &MonomialBasis, cap: usize) -> Result<IntLattice> {
    variable_closure(gens, basis, true, true, cap)
}

/// The left ideal generated by `gens`: the span of all `m * g`.
pub fn left_closure(gens: &[Vector], basis: &MonomialBasis, cap: usize) -> Result<IntLattice> {
    variable_closure(gens, basis, true, false, cap)
}

/// Generators `g * j` of the product `I J`, given generators of `I` and a
/// lattice basis of the two-sided ideal `J`. Their left closure is `I J`.
pub fn product_generators(left: &[Vector], right: &IntLattice, basis: &MonomialBasis) -> Vec<Vector> {
    let mut out = Vec::new();
    for g in left {
        for j in right.basis() {
            let p = vec_mul(g, j, basis);
            if p.iter().any(|c| !c.is_zero()) {
                out.push(p);
            }
        }
    }
    out
}

/// The additive span of `gens` closed under conjugation by the expansions of
/// the free generators and their inverses. With `products` set it is also
/// closed under multiplication, giving a non-unital subring.
pub fn conjugation_closure(
    gens: &[Vector],
    basis: &MonomialBasis,
    products: bool,
    cap: usize,
) -> Result<IntLattice> {
    let d = basis.degree;
    let n = basis.nvars;
    let conj: Vec<(Vector, Vector)> = (0..n as u32)
        .flat_map(|i| {
            let x = TruncatedSeries::expand(&Word::gen(i), n, d).to_vector(basis);
            let xi = TruncatedSeries::expand(&Word::gen(i).inverse(), n, d).to_vector(basis);
            [(x.clone(), xi.clone()), (xi, x)]
        })
        .collect();
    let mut e = Echelon::new(basis.dim());
    let mut queue: Vec<Vector> = gens.to_vec();
    loop {
        while let Some(u) = queue.pop() {
            if e.reduce(u.clone()).iter().all(|c| c.is_zero()) {
                continue;
            }
            for (a, ai) in &conj {
                queue.push(vec_mul(&vec_mul(a, &u, basis), ai, basis));
            }
            e.insert(u);
            if e.rank() > cap {
                return Err(Error::CapExceeded { what: "conjugation closure", cap });
            }
        }
        if !products {
            return Ok(IntLattice::from_echelon(&e));
        }
        let current = IntLattice::from_echelon(&e);
        let b = current.basis();
        for u in b {
            for v in b {
                let p = vec_mul(u, v, basis);
                if !e.reduce(p.clone()).iter().all(|c| c.is_zero()) {
                    queue.push(p);
                }
            }
        }
        if queue.is_empty() {
            return Ok(current);
        }
    }
}

/// Ring commutators `a b - b a` over all pairs of basis vectors.
pub fn commutator_generators(span: &IntLattice, basis: &MonomialBasis) -> Vec<Vector> {
    let b = span.basis();
    let lead: Vec<usize> = b
        .iter()
        .map(|v| v.iter().position(|c| !c.is_zero()).map_or(usize::MAX, |i| basis.degree_of(i)))
        .collect();
    let mut out = Vec::new();
    for (i, u) in b.iter().enumerate() {
        for (j, v) in b.iter().enumerate().skip(i + 1) {
            // Products of terms of total degree above the truncation vanish.
            if lead[i].saturating_add(lead[j]) > basis.degree {
                continue;
            }
            let uv = vec_mul(u, v, basis);
            let vu = vec_mul(v, u, basis);
            let c: Vector = uv.iter().zip(&vu).map(|(a, b)| a - b).collect();
            if c.iter().any(|x| !x.is_zero()) {
                out.push(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::commutator;

    fn w(s: &[i32]) -> Word {
        Word::from_signed(s)
    }
    fn mono(v: &[u32]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn expand_examples() {
        let s = TruncatedSeries::expand(&w(&[1]), 1, 3);
        assert_eq!(alloc::format!("{}", s), "1 + X1");
        let s = TruncatedSeries::expand(&w(&[-1]), 1, 2);
        assert_eq!(alloc::format!("{}", s), "1 - X1 + X1*X1");
        let c = commutator(&w(&[1]), &w(&[2]));
        let s = TruncatedSeries::expand(&c, 2, 2);
        assert_eq!(alloc::format!("{}", s), "1 + X1*X2 - X2*X1");
    }

    #[test]
    fn expand_ring_examples() {
        let dx = RingElement::delta(&w(&[1]));
        let dy = RingElement::delta(&w(&[2]));
        assert_eq!(TruncatedSeries::expand_ring(&dx, 2, 2), TruncatedSeries::var(0, 2, 2));
        let p = TruncatedSeries::expand_ring(&(&dx * &dy), 2, 2);
        assert_eq!(alloc::format!("{}", p), "X1*X2");
        let c = RingElement::delta(&commutator(&w(&[1]), &w(&[2])));
        assert_eq!(alloc::format!("{}", TruncatedSeries::expand_ring(&c, 2, 2)), "X1*X2 - X2*X1");
    }

    #[test]
    fn min_degree_examples() {
        let (x, y, z) = (w(&[1]), w(&[2]), w(&[3]));
        assert_eq!(min_degree(&RingElement::delta(&x), 3, 5).unwrap(), Some(1));
        assert_eq!(min_degree(&RingElement::delta(&commutator(&x, &y)), 3, 5).unwrap(), Some(2));
        let c3 = commutator(&commutator(&x, &y), &z);
        assert_eq!(min_degree(&RingElement::delta(&c3), 3, 5).unwrap(), Some(3));
        assert_eq!(min_degree(&RingElement::delta(&c3), 3, 2).unwrap(), None);
        assert_eq!(min_degree(&RingElement::zero(), 3, 2), Err(Error::ZeroElement));
    }

    #[test]
    fn basis_indexing_roundtrip() {
        let b = MonomialBasis::new(3, 4);
        assert_eq!(b.dim(), 1 + 3 + 9 + 27 + 81);
        for i in 0..b.dim() {
            assert_eq!(b.index(&b.monomial(i)), i);
        }
        assert_eq!(b.monomial(0), mono(&[]));
        assert_eq!(b.monomial(1), mono(&[0]));
        assert_eq!(b.monomial(4), mono(&[0, 0]));
        assert_eq!(b.monomial(5), mono(&[0, 1]));
        assert_eq!(MonomialBasis::checked_dim(5, 6, 10_000), None);
    }

    #[test]
    fn vec_mul_agrees_with_series_product() {
        let b = MonomialBasis::new(2, 4);
        let u = TruncatedSeries::expand(&w(&[1, -2, 1]), 2, 4);
        let v = TruncatedSeries::expand(&w(&[2, 2, -1]), 2, 4);
        assert_eq!(vec_mul(&u.to_vector(&b), &v.to_vector(&b), &b), u.mul(&v).to_vector(&b));
    }

    #[test]
    fn augmentation_ideal_shadows() {
        let b = MonomialBasis::new(2, 2);
        let gens: Vec<Vector> = (0..2).map(|i| TruncatedSeries::var(i, 2, 2).to_vector(&b)).collect();
        let f = ideal_closure(&gens, &b, 10_000).unwrap();
        assert_eq!(f.rank(), 6);
        assert_eq!(f.quotient_invariants(&IntLattice::full(7)).unwrap(), alloc::vec![Int::ZERO]);
        let f2 = left_closure(&product_generators(&gens, &f, &b), &b, 10_000).unwrap();
        assert_eq!(f2.rank(), 4);
        for i in 3..7 {
            let mut v = alloc::vec![Int::ZERO; 7];
            v[i] = Int::ONE;
            assert!(f2.member(&v).unwrap());
        }
    }

    #[test]
    fn normal_closure_of_x_in_degree_one() {
        // <x>^F in F(x,y): the degree <= 1 part is span{X}.
        let b = MonomialBasis::new(2, 1);
        let g = TruncatedSeries::expand_ring(&RingElement::delta(&w(&[1])), 2, 1).to_vector(&b);
        let l = ideal_closure(&[g], &b, 100).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis()[0], crate::intlat::vector(&[0, 1, 0]));
    }
}
