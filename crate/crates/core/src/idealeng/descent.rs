//! Exact membership in a product of augmentation ideals `h_1 h_2 ... h_m`
//! when every `H_i` has a Schreier transversal.
//!
//! `h = Delta(H) Z[F]` is a free right `Z[F]`-module on `{y - 1}` with `y`
//! running over the Schreier basis of `H`. Writing
//! `v = sum_y (y - 1) u_y + proj(v)`, where `proj` maps each word to its coset
//! representative, `v` lies in `h J` exactly when `proj(v) = 0` and every
//! `u_y` lies in `J`. Recursing over the atoms decides membership and yields
//! an explicit decomposition.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::cert::CertTerm;
use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::subgroup::Transversal;
use crate::words::{Letter, Word};

pub(crate) enum Descent {
    Member(Vec<CertTerm>),
    NonMember { level: usize, path: Vec<Word>, residue: RingElement },
}

/// Splits `u = sum_y (y - 1) u_y + proj(u)`.
pub(crate) fn split(u: &RingElement, t: &Transversal) -> (BTreeMap<Word, RingElement>, RingElement) {
    let mut parts: BTreeMap<Word, RingElement> = BTreeMap::new();
    let mut proj = RingElement::zero();
    for (w, c) in u.terms() {
        let letters = w.letters();
        let mut prev = Word::identity();
        for (pos, &l) in letters.iter().enumerate() {
            let cur = t.rep(&prev.mul_letter(l));
            let x = Letter::new(l.gen, false);
            if l.inv {
                let y = cur.mul_letter(x).mul(&prev.inverse());
                if !y.is_identity() {
                    let tail = prev.mul(&Word::from_letters(letters[pos..].iter().copied()));
                    parts.entry(y).or_default().add_term(tail, &-c);
                }
            } else {
                let y = prev.mul_letter(x).mul(&cur.inverse());
                if !y.is_identity() {
                    let tail = cur.mul(&Word::from_letters(letters[pos + 1..].iter().copied()));
                    parts.entry(y).or_default().add_term(tail, c);
                }
            }
            prev = cur;
        }
        proj.add_term(prev, c);
    }
    parts.retain(|_, e| !e.is_zero());
    (parts, proj)
}

/// Decides `v` in the product of the ideals whose transversals are given.
pub(crate) fn descend(v: &RingElement, ts: &[Transversal], summand: usize, cap: usize) -> Result<Descent> {
    let m = ts.len();
    if m == 0 {
        // The empty product is the whole ring.
        let terms = v
            .terms()
            .map(|(w, c)| CertTerm {
                coef: c.clone(),
                left: Word::identity(),
                factors: Vec::new(),
                right: w.clone(),
                summand,
                slots: Vec::new(),
            })
            .collect();
        return Ok(Descent::Member(terms));
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Word>, RingElement)> = alloc::vec![(Vec::new(), v.clone())];
    let mut work = 0usize;
    while let Some((path, u)) = stack.pop() {
        let level = path.len();
        let t = &ts[level];
        if level + 1 == m {
            let mut proj = RingElement::zero();
            for (w, c) in u.terms() {
                let r = t.rep(w);
                proj.add_term(r.clone(), c);
                let h = w.mul(&r.inverse());
                if !h.is_identity() {
                    let mut factors = path.clone();
                    factors.push(h);
                    out.push(CertTerm {
                        coef: c.clone(),
                        left: Word::identity(),
                        factors,
                        right: r,
                        summand,
                        slots: (0..m).collect(),
                    });
                }
            }
            if !proj.is_zero() {
                return Ok(Descent::NonMember { level, path, residue: proj });
            }
        } else {
            let (parts, proj) = split(&u, t);
            if !proj.is_zero() {
                return Ok(Descent::NonMember { level, path, residue: proj });
            }
            // Reverse insertion keeps the traversal in graded-lex order.
            for (y, uy) in parts.into_iter().rev() {
                work += uy.support_len();
                if work > cap {
                    return Err(Error::CapExceeded { what: "descent terms", cap });
                }
                let mut p = path.clone();
                p.push(y);
                stack.push((p, uy));
            }
        }
        if out.len() > cap {
            return Err(Error::CapExceeded { what: "certificate terms", cap });
        }
    }
    Ok(Descent::Member(out))
}
