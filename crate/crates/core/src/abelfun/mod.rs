//! Quadratic functors on finitely generated abelian groups, their first
//! derived functors, and exactness checks for the sequences relating them.
//!
//! Every functor value is computed from a presentation `A = E / I` with
//! `E = Z^n`: the defining relations are written down on a monomial basis of
//! the free cover and the quotient is read off a Smith normal form.

pub mod oracle;
pub mod present;
pub mod quadratic;
mod sequences;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::intlat::{snf, IntLattice, Vector};
use crate::num::Int;

pub use sequences::{
    koszul_antisym, l1_lambda2, l1_sp2, l1_sp2_sequence_check, quadratic_sequences_check, sp3_roundtrip, tor_diagonal_quotient,
    KoszulReport, NodeCheck, L1Sp2SequenceReport, SequenceReport,
};

/// `E / I` with `E = Z^rank` and `I` spanned by `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub rank: usize,
    pub relations: Vec<Vector>,
}

/// A finitely generated abelian group by its invariant factors
/// `d_1 | d_2 | ...`, torsion first, with `0` marking a free summand.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    factors: Vec<Int>,
    presentation: Option<Presentation>,
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for FgAbGroup {}

fn canonical(raw: &[Int]) -> Vec<Int> {
    let tors: Vec<Int> = raw.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
    let free = raw.len() - tors.len();
    let diag: Vec<Vector> = (0..tors.len())
        .map(|i| {
            let mut r = alloc::vec![Int::ZERO; tors.len()];
            r[i] = tors[i].clone();
            r
        })
        .collect();
    let mut out: Vec<Int> = snf(&diag).into_iter().filter(|d| !d.is_one()).collect();
    out.extend(core::iter::repeat(Int::ZERO).take(free));
    out
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { factors: Vec::new(), presentation: None }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::from_invariants(alloc::vec![Int::ZERO; rank])
    }

    pub fn cyclic(n: i64) -> Self {
        FgAbGroup::from_factors(&[n])
    }

    /// Any list of cyclic orders; `0` is `Z`, `1` is dropped.
    pub fn from_factors(raw: &[i64]) -> Self {
        let raw: Vec<Int> = raw.iter().map(|&d| Int::from(d)).collect();
        FgAbGroup::from_invariants(raw)
    }

    pub fn from_invariants(raw: Vec<Int>) -> Self {
        FgAbGroup { factors: canonical(&raw), presentation: None }
    }

    /// `Z^rank` modulo the span of `relations`.
    pub fn from_presentation(rank: usize, relations: Vec<Vector>) -> Result<Self> {
        let lat = IntLattice::new(rank, &relations)?;
        let inv = lat.quotient_invariants(&IntLattice::full(rank))?;
        Ok(FgAbGroup { factors: canonical(&inv), presentation: Some(Presentation { rank, relations }) })
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|d| d.is_zero())
    }

    /// The order, or `None` for an infinite group.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.factors.iter().fold(Int::ONE, |acc, d| &acc * d))
    }

    /// The stored presentation, or the diagonal one built from the factors.
    pub fn presentation(&self) -> Presentation {
        if let Some(p) = &self.presentation {
            return p.clone();
        }
        let n = self.factors.len();
        let relations = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = alloc::vec![Int::ZERO; n];
                r[i] = d.clone();
                r
            })
            .collect();
        Presentation { rank: n, relations }
    }

    /// Direct sum.
    pub fn sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        FgAbGroup::from_invariants(f)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion().iter().map(|d| alloc::format!("Z/{}", d)).collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{}", r)),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Tor(A, B)` from invariant factors: `Z/gcd(a, b)` for each pair of
/// torsion factors.
pub fn tor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut f = Vec::new();
    for x in a.torsion() {
        for y in b.torsion() {
            f.push(x.gcd(&y));
        }
    }
    FgAbGroup::from_invariants(f)
}

/// `A (x) B` from invariant factors.
pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut f = Vec::new();
    for x in a.factors() {
        for y in b.factors() {
            f.push(x.gcd(y));
        }
    }
    FgAbGroup::from_invariants(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FunctorKind {
    Tensor2,
    Sp2,
    Lambda2,
    Gamma2,
    AntiTensor2,
    Tor,
    L1Sp2,
    L1Lambda2,
}

impl FunctorKind {
    pub const ALL: [FunctorKind; 8] = [
        FunctorKind::Tensor2,
        FunctorKind::Sp2,
        FunctorKind::Lambda2,
        FunctorKind::Gamma2,
        FunctorKind::AntiTensor2,
        FunctorKind::Tor,
        FunctorKind::L1Sp2,
        FunctorKind::L1Lambda2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctorKind::Tensor2 => "tensor2",
            FunctorKind::Sp2 => "sp2",
            FunctorKind::Lambda2 => "lambda2",
            FunctorKind::Gamma2 => "gamma2",
            FunctorKind::AntiTensor2 => "antitensor2",
            FunctorKind::Tor => "tor",
            FunctorKind::L1Sp2 => "l1sp2",
            FunctorKind::L1Lambda2 => "l1lambda2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.to_ascii_lowercase();
        FunctorKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == t)
            .ok_or_else(|| Error::Parse { line: 0, col: 0, msg: alloc::format!("unknown functor {}", s) })
    }
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorValue {
    pub kind: FunctorKind,
    pub group: FgAbGroup,
}

pub fn functor_eval(kind: FunctorKind, a: &FgAbGroup) -> Result<FunctorValue> {
    let p = a.presentation();
    let (n, r) = (p.rank, &p.relations);
    let group = match kind {
        FunctorKind::Tensor2 => quadratic::tensor2(n, r)?.group(),
        FunctorKind::Sp2 => quadratic::sp2(n, r)?.group(),
        FunctorKind::Lambda2 => quadratic::lambda2(n, r)?.group(),
        FunctorKind::Gamma2 => quadratic::gamma2(n, r)?.group(),
        FunctorKind::AntiTensor2 => quadratic::anti2(n, r)?.group(),
        FunctorKind::Tor => tor(a, a),
        FunctorKind::L1Sp2 => l1_sp2(n, r)?,
        FunctorKind::L1Lambda2 => l1_lambda2(n, r)?,
    };
    Ok(FunctorValue { kind, group })
}

#[cfg(test)]
mod tests;
