//! Certificates read off the way a word was written.
//!
//! `h - 1` is expanded along the expression tree into terms
//! `c * p * (g_1 - 1) ... (g_k - 1) * q` using
//!
//! * `ab - 1 = (a - 1) b + (b - 1)`
//! * `a^-1 - 1 = -a^-1 (a - 1)`
//! * `[a,b] - 1 = (ba)^-1 ((a - 1)(b - 1) - (b - 1)(a - 1))`
//! * `u^-1 a u - 1 = u^-1 (a - 1) u`
//!
//! Words sitting between two delta factors are pushed left with
//! `(g - 1) m = m (m^-1 g m - 1)`, which keeps every leaf inside the same
//! normal subgroups.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::num::Int;
use crate::words::{Word, WordExpr};

type Key = (Word, Vec<Word>, Word);

#[derive(Clone, Debug, Default)]
pub(crate) struct Terms {
    map: BTreeMap<Key, Int>,
}

impl Terms {
    fn add(&mut self, left: Word, leaves: Vec<Word>, right: Word, c: &Int) {
        if c.is_zero() || leaves.iter().any(|l| l.is_identity()) {
            return;
        }
        let key = (left, leaves, right);
        let e = self.map.entry(key.clone()).or_insert(Int::ZERO);
        *e += c;
        if e.is_zero() {
            self.map.remove(&key);
        }
    }

    fn leaf(w: Word) -> Terms {
        let mut t = Terms::default();
        t.add(Word::identity(), alloc::vec![w], Word::identity(), &Int::ONE);
        t
    }

    fn len(&self) -> usize {
        self.map.len()
    }

    fn map_words(&self, left: &Word, right: &Word, scale: &Int) -> Terms {
        let mut t = Terms::default();
        for ((l, d, r), c) in &self.map {
            t.add(left.mul(l), d.clone(), r.mul(right), &(c * scale));
        }
        t
    }

    fn extend(&mut self, other: &Terms) {
        for ((l, d, r), c) in &other.map {
            self.add(l.clone(), d.clone(), r.clone(), c);
        }
    }

    fn product(&self, other: &Terms, cap: usize) -> Result<Terms> {
        let mut t = Terms::default();
        for ((l1, d1, r1), c1) in &self.map {
            for ((l2, d2, r2), c2) in &other.map {
                let m = r1.mul(l2);
                let mut leaves: Vec<Word> = d1.iter().map(|g| g.conj(&m)).collect();
                leaves.extend(d2.iter().cloned());
                t.add(l1.mul(&m), leaves, r2.clone(), &(c1 * c2));
                if t.len() > cap {
                    return Err(Error::CapExceeded { what: "structural terms", cap });
                }
            }
        }
        Ok(t)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (&Word, &Vec<Word>, &Word, &Int)> {
        self.map.iter().map(|((l, d, r), c)| (l, d, r, c))
    }

    pub(crate) fn term_element(left: &Word, leaves: &[Word], right: &Word, c: &Int) -> RingElement {
        let mut acc = RingElement::monomial(left.clone(), c.clone());
        for g in leaves {
            acc = &acc * &RingElement::delta(g);
        }
        acc.right_mul_word(right)
    }

    #[cfg(test)]
    pub(crate) fn total(&self) -> RingElement {
        let parts: Vec<RingElement> = self.iter().map(|(l, d, r, c)| Self::term_element(l, d, r, c)).collect();
        crate::grring::sum(&parts)
    }
}

/// Terms summing to `eval(e) - 1`.
pub(crate) fn expand_delta(e: &WordExpr, cap: usize) -> Result<Terms> {
    match e {
        WordExpr::Lit(w) => {
            if w.is_identity() {
                Ok(Terms::default())
            } else {
                Ok(Terms::leaf(w.clone()))
            }
        }
        WordExpr::Mul(fs) => {
            // (f_1 ... f_n) - 1 = sum_i (f_i - 1) f_{i+1} ... f_n
            let mut acc = Terms::default();
            let mut tail = Word::identity();
            for f in fs.iter().rev() {
                let t = expand_delta(f, cap)?;
                acc.extend(&t.map_words(&Word::identity(), &tail, &Int::ONE));
                tail = f.eval().mul(&tail);
                if acc.len() > cap {
                    return Err(Error::CapExceeded { what: "structural terms", cap });
                }
            }
            Ok(acc)
        }
        WordExpr::Pow(b, k) => {
            let base = b.eval();
            let t = expand_delta(b, cap)?;
            let mut acc = Terms::default();
            let n = k.unsigned_abs();
            for i in 0..n {
                acc.extend(&t.map_words(&Word::identity(), &base.pow(i as i64), &Int::ONE));
            }
            if *k < 0 {
                // a^-n - 1 = -a^-n (a^n - 1)
                acc = acc.map_words(&base.pow(*k), &Word::identity(), &Int::from(-1));
            }
            Ok(acc)
        }
        WordExpr::Comm(a, b) => {
            let ta = expand_delta(a, cap)?;
            let tb = expand_delta(b, cap)?;
            let lead = b.eval().mul(&a.eval()).inverse();
            let mut acc = ta.product(&tb, cap)?.map_words(&lead, &Word::identity(), &Int::ONE);
            acc.extend(&tb.product(&ta, cap)?.map_words(&lead, &Word::identity(), &Int::from(-1)));
            Ok(acc)
        }
        WordExpr::Conj(a, u) => {
            let uw = u.eval();
            Ok(expand_delta(a, cap)?.map_words(&uw.inverse(), &uw, &Int::ONE))
        }
    }
}
