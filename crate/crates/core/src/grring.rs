//! Exact arithmetic in the integral group ring of a free group.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::num::Int;
use crate::words::Word;

pub const DEFAULT_TERM_CAP: usize = 100_000;

/// Finite integer combination of reduced words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RingElement {
    terms: BTreeMap<Word, Int>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        Self::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Int::ONE)
    }

    pub fn monomial(w: Word, c: Int) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        RingElement { terms }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(Word::identity(), Int::from(c))
    }

    /// `h - 1`.
    pub fn delta(h: &Word) -> Self {
        let mut e = Self::word(h.clone());
        e.add_term(Word::identity(), &Int::from(-1));
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Int)>>(it: I) -> Self {
        let mut e = RingElement::zero();
        for (w, c) in it {
            e.add_term(w, &c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: &Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Int {
        self.terms.get(w).cloned().unwrap_or(Int::ZERO)
    }

    pub fn augmentation(&self) -> Int {
        self.terms.values().fold(Int::ZERO, |acc, c| &acc + c)
    }

    /// Linear extension of `w -> w^-1`.
    pub fn involution(&self) -> Self {
        RingElement {
            terms: self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (u.mul(w), c.clone())))
    }

    pub fn right_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.mul(u), c.clone())))
    }

    pub fn checked_mul(&self, other: &RingElement, cap: usize) -> Result<RingElement> {
        let mut acc: BTreeMap<Word, Int> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let slot = acc.entry(a.mul(b)).or_insert(Int::ZERO);
                *slot += &(ca * cb);
            }
            if acc.len() > cap {
                return Err(Error::CapExceeded { what: "ring element support", cap });
            }
        }
        acc.retain(|_, c| !c.is_zero());
        if acc.len() > cap {
            return Err(Error::CapExceeded { what: "ring element support", cap });
        }
        Ok(RingElement { terms: acc })
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = RingElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> RingDisplay<'a, S> {
        RingDisplay { e: self, names }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&Int::from(-1))
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs, usize::MAX).expect("uncapped product")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: RingElement) -> RingElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

pub struct RingDisplay<'a, S> {
    e: &'a RingElement,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RingDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.e.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{}", sep)?;
            let ws: String = alloc::format!("{}", w.display(self.names));
            if w.is_identity() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", ws)?;
            } else {
                write!(f, "{}*{}", mag, ws)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [String; 0] = [];
        write!(f, "{}", self.display(&names))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({})", self)
    }
}

/// Sum of `coef * a_k` over a list, for assembling certificates.
pub fn sum<'a, I: IntoIterator<Item = &'a RingElement>>(it: I) -> RingElement {
    let mut acc = RingElement::zero();
    for e in it {
        for (w, c) in e.terms() {
            acc.add_term(w.clone(), c);
        }
    }
    acc
}

pub fn words_of(e: &RingElement) -> Vec<Word> {
    e.terms.keys().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::commutator;

    fn w(s: &[i32]) -> Word {
        Word::from_signed(s)
    }
    fn d(s: &[i32]) -> RingElement {
        RingElement::delta(&w(s))
    }

    #[test]
    fn product_examples() {
        let p = &d(&[1]) * &d(&[2]);
        let expect = RingElement::from_terms([
            (w(&[1, 2]), Int::ONE),
            (w(&[1]), Int::from(-1)),
            (w(&[2]), Int::from(-1)),
            (Word::identity(), Int::ONE),
        ]);
        assert_eq!(p, expect);
        assert!((&d(&[1]) * &RingElement::zero()).is_zero());
        // (1-u)(1-v) - (1-v)(1-u) = uv - vu
        let (u, v) = (w(&[1]), w(&[2]));
        let lhs = &(&(-&d(&[1])) * &(-&d(&[2]))) - &(&(-&d(&[2])) * &(-&d(&[1])));
        let rhs = &RingElement::word(u.mul(&v)) - &RingElement::word(v.mul(&u));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn augmentation_examples() {
        assert!(d(&[1]).augmentation().is_zero());
        let e = &RingElement::monomial(w(&[1]), Int::from(3)) + &RingElement::monomial(w(&[2]), Int::from(2));
        assert_eq!(e.augmentation(), Int::from(5));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(d(&[1]).involution(), d(&[-1]));
        let p = &d(&[1]) * &d(&[2]);
        assert_eq!(p.involution(), &d(&[-2]) * &d(&[-1]));
    }

    #[test]
    fn delta_identities() {
        assert!(RingElement::delta(&Word::identity()).is_zero());
        let (h1, h2) = (w(&[1, 2]), w(&[-2, 1]));
        let lhs = RingElement::delta(&h1.mul(&h2));
        let rhs = &(&RingElement::delta(&h1) + &RingElement::delta(&h2))
            + &(&RingElement::delta(&h1) * &RingElement::delta(&h2));
        assert_eq!(lhs, rhs);
        let h = w(&[1, 2, -1]);
        assert_eq!(
            RingElement::delta(&h.inverse()),
            -&(&RingElement::word(h.inverse()) * &RingElement::delta(&h))
        );
    }

    #[test]
    fn commutator_identity() {
        let (u, v) = (w(&[1, 2]), w(&[2, 2, -1]));
        let c = commutator(&u, &v);
        let du = RingElement::delta(&u);
        let dv = RingElement::delta(&v);
        let rhs = RingElement::word(v.mul(&u).inverse()) * (&(&du * &dv) - &(&dv * &du));
        assert_eq!(RingElement::delta(&c), rhs);
    }

    #[test]
    fn cap_is_enforced() {
        let a = RingElement::from_terms((1..20).map(|i| (w(&[1]).pow(i), Int::ONE)));
        let b = RingElement::from_terms((1..20).map(|i| (w(&[2]).pow(i), Int::ONE)));
        assert!(a.checked_mul(&b, 100).is_err());
        assert_eq!(a.checked_mul(&b, 1000).unwrap().support_len(), 361);
    }

    #[test]
    fn display_form() {
        let names = ["x", "y"];
        let e = &RingElement::monomial(w(&[-1, -2, 1, 2]), Int::from(2)) - &RingElement::one();
        assert_eq!(alloc::format!("{}", e.display(&names)), "-1 + 2*x^-1*y^-1*x*y");
    }
}
