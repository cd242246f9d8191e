use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::context::Context;
use super::expr::{Atom, Monomials};
use crate::error::Result;
use crate::grring::RingElement;
use crate::magnus::Monomial;
use crate::num::Int;
use crate::words::Word;

/// `coef * left * (f_1 - 1) ... (f_k - 1) * right`, where the factors listed
/// in `slots` witness the atoms of summand `summand` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub coef: Int,
    pub left: Word,
    pub factors: Vec<Word>,
    pub right: Word,
    pub summand: usize,
    pub slots: Vec<usize>,
}

impl CertTerm {
    pub fn expand(&self) -> RingElement {
        let mut acc = RingElement::monomial(self.left.clone(), self.coef.clone());
        for f in &self.factors {
            acc = &acc * &RingElement::delta(f);
        }
        acc.right_mul_word(&self.right)
    }

    /// Image under `w -> w^-1`.
    pub fn mirror(&self) -> CertTerm {
        let n = self.factors.len();
        let mut slots: Vec<usize> = self.slots.iter().map(|&s| n - 1 - s).collect();
        slots.reverse();
        CertTerm {
            coef: self.coef.clone(),
            left: self.right.inverse(),
            factors: self.factors.iter().rev().map(|f| f.inverse()).collect(),
            right: self.left.inverse(),
            summand: self.summand,
            slots,
        }
    }
}

/// An explicit decomposition of an element as a sum of ideal products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ideal: Monomials,
    pub terms: Vec<CertTerm>,
}

impl Certificate {
    pub fn total(&self) -> RingElement {
        let parts: Vec<RingElement> = self.terms.iter().map(|t| t.expand()).collect();
        crate::grring::sum(&parts)
    }

    /// Re-checks the certificate: the terms add up to `v` exactly, and every
    /// slotted factor lies in the subgroup of its atom.
    pub fn verify(&self, v: &RingElement, ctx: &Context) -> Result<bool> {
        for t in &self.terms {
            let atoms = match self.ideal.get(t.summand) {
                Some(a) => a,
                None => return Ok(false),
            };
            if t.slots.len() != atoms.len() || t.slots.windows(2).any(|w| w[0] >= w[1]) {
                return Ok(false);
            }
            for (slot, atom) in t.slots.iter().zip(atoms) {
                let f = match t.factors.get(*slot) {
                    Some(f) => f,
                    None => return Ok(false),
                };
                if !ctx.atom_contains(atom, f)? {
                    return Ok(false);
                }
            }
        }
        Ok(self.total() == *v)
    }

    /// The certificate for `involution(v)` in the mirrored ideal.
    pub fn mirror(&self) -> Certificate {
        Certificate {
            ideal: self.ideal.iter().map(|m| m.iter().rev().cloned().collect()).collect(),
            terms: self.terms.iter().map(|t| t.mirror()).collect(),
        }
    }

    /// FNV-1a hash of the canonical text, used as a short report digest.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let text = alloc::format!("{}", self);
        for b in text.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", t.coef, t.left)?;
            for w in &t.factors {
                write!(f, "*({}-1)", w)?;
            }
            write!(f, "*{}", t.right)?;
        }
        Ok(())
    }
}

/// Why an element is not in an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The degree-`degree` expansion is outside the shadow lattice;
    /// `residual` is its canonical remainder modulo that lattice.
    Shadow { degree: usize, residual: Vec<(Monomial, Int)> },
    /// Exact obstruction from coset rewriting: after peeling the first
    /// `level` atoms along `path`, the remaining coefficient has nonzero
    /// image `residue` in the group ring of the next quotient.
    Quotient { level: usize, path: Vec<Word>, residue: RingElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub d_max: usize,
    pub radius: usize,
    pub term_cap: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member(Certificate),
    NonMember(Witness),
    Unknown(Bounds),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member(_))
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, Verdict::NonMember(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Member(_) => "member",
            Verdict::NonMember(_) => "non-member",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// Whether every factor of a term sits in the atom it is slotted against.
pub(crate) fn slot_factors(factors: &[Word], atoms: &[Atom], ctx: &Context) -> Result<Option<Vec<usize>>> {
    let mut slots = Vec::with_capacity(atoms.len());
    let mut next = 0;
    for atom in atoms {
        let mut found = None;
        while next < factors.len() {
            let i = next;
            next += 1;
            if ctx.atom_contains(atom, &factors[i])? {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => slots.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(slots))
}
