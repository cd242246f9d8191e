//! Ideal expressions over declared normal subgroups and the layered
//! membership engine.
//!
//! `decide` tries, in order: exact coset descent for a single product whose
//! atoms all have transversals; a certificate read off the structure of the
//! word; descent of whatever that leaves over; and finally shadow separation
//! in the truncated Magnus algebra. A `Member` verdict always carries a
//! certificate that re-verifies by ring arithmetic. A `NonMember` verdict
//! carries either a shadow separation or an exact coset obstruction.

mod cert;
mod context;
mod descent;
mod expr;
mod shadow;
mod structural;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

pub use cert::{Bounds, CertTerm, Certificate, Verdict, Witness};
pub use context::Context;
pub use expr::{Atom, IdealExpr, Monomials};
pub use shadow::{ideal_shadow, monomials_shadow, Shadow};

use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::magnus::Monomial;
use crate::num::Int;
use crate::subgroup::{gamma_generators, Transversal};
use crate::words::{ball, commutator, free_generators, Word, WordExpr};
use descent::{descend, Descent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest truncation degree tried for shadow separation.
    pub d_max: usize,
    /// Radius of generator balls used by searches.
    pub radius: usize,
    /// Cap on ring-element supports and certificate sizes.
    pub term_cap: usize,
    /// Cap on the dimension of the truncated algebra.
    pub dim_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { d_max: 6, radius: 4, term_cap: 100_000, dim_cap: 400 }
    }
}

impl Config {
    fn bounds(&self, note: &str) -> Bounds {
        Bounds { d_max: self.d_max, radius: self.radius, term_cap: self.term_cap, note: note.into() }
    }
}

fn transversals(atoms: &[Atom], ctx: &Context) -> Option<Vec<Transversal>> {
    atoms.iter().map(|a| ctx.transversal(a)).collect()
}

/// Shadow separation at the least degree `<= d_max` that separates.
fn shadow_separation(v: &RingElement, ms: &Monomials, ctx: &Context, cfg: &Config) -> Option<Witness> {
    for d in 1..=cfg.d_max {
        let sh = match monomials_shadow(ms, ctx, d, cfg.dim_cap) {
            Ok(sh) => sh,
            Err(_) => return None,
        };
        if !sh.exact {
            return None;
        }
        let vec = sh.vector(v);
        let res = sh.lattice.residual(&vec).ok()?;
        if res.iter().any(|c| !c.is_zero()) {
            let residual = res
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (sh.basis.monomial(i), c.clone()))
                .collect();
            return Some(Witness::Shadow { degree: d, residual });
        }
    }
    None
}

fn member(ms: &Monomials, terms: Vec<CertTerm>) -> Verdict {
    Verdict::Member(Certificate { ideal: ms.clone(), terms })
}

/// Exact descent of `v` against summand `k`, if all its atoms have transversals.
fn descend_summand(v: &RingElement, ms: &Monomials, k: usize, ctx: &Context, cap: usize) -> Option<Result<Descent>> {
    let ts = transversals(&ms[k], ctx)?;
    Some(descend(v, &ts, k, cap))
}

/// Decides `v` in the ideal `e`.
pub fn decide(v: &RingElement, e: &IdealExpr, ctx: &Context, cfg: &Config) -> Result<Verdict> {
    decide_with(v, None, e, ctx, cfg)
}

/// Decides `eval(w) - 1` in `e`, using the written structure of `w`.
pub fn decide_word(w: &WordExpr, e: &IdealExpr, ctx: &Context, cfg: &Config) -> Result<Verdict> {
    let v = RingElement::delta(&w.eval());
    decide_with(&v, Some(w), e, ctx, cfg)
}

fn decide_with(
    v: &RingElement,
    structure: Option<&WordExpr>,
    e: &IdealExpr,
    ctx: &Context,
    cfg: &Config,
) -> Result<Verdict> {
    let ms = e.monomials();
    for m in &ms {
        for a in m {
            if let Atom::Named(n) | Atom::Derived(n) | Atom::Gamma(_, n) = a {
                ctx.subgroup(n)?;
            }
        }
    }
    if v.is_zero() {
        return Ok(member(&ms, Vec::new()));
    }
    let mut notes: Vec<&str> = Vec::new();

    // Layer 0: h - 1 lies in the ideal of any single atom containing h.
    if let Some(w) = structure {
        let h = w.eval();
        for (k, atoms) in ms.iter().enumerate() {
            if let [atom] = atoms.as_slice() {
                if ctx.atom_contains(atom, &h)? {
                    let t = CertTerm {
                        coef: Int::ONE,
                        left: Word::identity(),
                        factors: alloc::vec![h],
                        right: Word::identity(),
                        summand: k,
                        slots: alloc::vec![0],
                    };
                    return Ok(member(&ms, alloc::vec![t]));
                }
            }
        }
    }

    // Layer 1: a single product with transversals is decided exactly.
    if ms.len() == 1 {
        match descend_summand(v, &ms, 0, ctx, cfg.term_cap) {
            Some(Ok(Descent::Member(terms))) => return Ok(member(&ms, terms)),
            Some(Ok(Descent::NonMember { level, path, residue })) => {
                let w = shadow_separation(v, &ms, ctx, cfg)
                    .unwrap_or(Witness::Quotient { level, path, residue });
                return Ok(Verdict::NonMember(w));
            }
            Some(Err(Error::CapExceeded { .. })) => notes.push("descent cap exceeded"),
            Some(Err(err)) => return Err(err),
            None => notes.push("no transversal for some atom"),
        }
    } else {
        // A sum that already contains v in one summand.
        for k in 0..ms.len() {
            if let Some(Ok(Descent::Member(terms))) = descend_summand(v, &ms, k, ctx, cfg.term_cap) {
                return Ok(member(&ms, terms));
            }
        }
    }

    // Layer 2: certificate from the written structure, descending leftovers.
    if let Some(w) = structure {
        match structural_certificate(v, w, &ms, ctx, cfg)? {
            Some(terms) => return Ok(member(&ms, terms)),
            None => notes.push("structural expansion left an undecided remainder"),
        }
    }

    // Layer 3: shadow separation.
    if let Some(wit) = shadow_separation(v, &ms, ctx, cfg) {
        return Ok(Verdict::NonMember(wit));
    }
    notes.push("no shadow separation within the degree and dimension caps");
    Ok(Verdict::Unknown(cfg.bounds(&notes.join("; "))))
}

fn structural_certificate(
    v: &RingElement,
    w: &WordExpr,
    ms: &Monomials,
    ctx: &Context,
    cfg: &Config,
) -> Result<Option<Vec<CertTerm>>> {
    let terms = match structural::expand_delta(w, cfg.term_cap) {
        Ok(t) => t,
        Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    let mut rest: Vec<RingElement> = Vec::new();
    for (left, leaves, right, c) in terms.iter() {
        let mut placed = false;
        for (k, atoms) in ms.iter().enumerate() {
            if let Some(slots) = cert::slot_factors(leaves, atoms, ctx)? {
                out.push(CertTerm {
                    coef: c.clone(),
                    left: left.clone(),
                    factors: leaves.clone(),
                    right: right.clone(),
                    summand: k,
                    slots,
                });
                placed = true;
                break;
            }
        }
        if !placed {
            rest.push(structural::Terms::term_element(left, leaves, right, c));
        }
    }
    let remainder = crate::grring::sum(&rest);
    debug_assert_eq!(
        &remainder + &crate::grring::sum(&out.iter().map(|t| t.expand()).collect::<Vec<_>>()),
        *v
    );
    if remainder.is_zero() {
        return Ok(Some(out));
    }
    // Leftovers: whole remainder first, then term by term.
    for k in 0..ms.len() {
        if let Some(Ok(Descent::Member(terms))) = descend_summand(&remainder, ms, k, ctx, cfg.term_cap) {
            out.extend(terms);
            return Ok(Some(out));
        }
    }
    for r in &rest {
        let mut done = false;
        for k in 0..ms.len() {
            if let Some(Ok(Descent::Member(terms))) = descend_summand(r, ms, k, ctx, cfg.term_cap) {
                out.extend(terms);
                done = true;
                break;
            }
        }
        if !done {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// One row of a probe table.
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub word: Word,
    pub verdict: Verdict,
}

/// Decides `w - 1` in `e` for each word.
pub fn probe_subgroup(words: &[WordExpr], e: &IdealExpr, ctx: &Context, cfg: &Config) -> Result<Vec<ProbeRow>> {
    words
        .iter()
        .map(|w| Ok(ProbeRow { word: w.eval(), verdict: decide_word(w, e, ctx, cfg)? }))
        .collect()
}

/// Outcome of comparing `A meet B` with a right-hand side.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub degree: usize,
    /// Sample spanning products of the right-hand side with their verdicts
    /// in `A` and in `B`.
    pub samples: Vec<(RingElement, Verdict, Verdict)>,
    pub all_certified: bool,
    pub shadow_equal: bool,
    pub lhs_rank: usize,
    pub rhs_rank: usize,
    /// Basis vectors of the left shadow outside the right shadow, reduced.
    pub discrepancy: Vec<Vec<(Monomial, Int)>>,
}

/// Spanning products `(g_1 - 1) ... (g_k - 1)` of each summand, with up to
/// `per_atom` generators per atom.
fn spanning_products(ms: &Monomials, ctx: &Context, per_atom: usize, limit: usize) -> Result<Vec<RingElement>> {
    let mut out = Vec::new();
    for atoms in ms {
        let mut acc: Vec<RingElement> = alloc::vec![RingElement::one()];
        for a in atoms {
            let (gens, _) = ctx.atom_generators(a)?;
            let mut next = Vec::new();
            for p in &acc {
                for g in gens.iter().take(per_atom) {
                    next.push(p * &RingElement::delta(g));
                }
            }
            next.truncate(limit);
            acc = next;
        }
        out.extend(acc.into_iter().filter(|p| !p.is_zero()));
    }
    Ok(out)
}

/// Compares `A meet B` with `rhs`: certifies sample spanning products of
/// `rhs` inside both `A` and `B`, then compares shadows at degree `d`.
/// `hypotheses` lists containments `(sub, sup)` that must hold.
pub fn identity_report(
    a: &IdealExpr,
    b: &IdealExpr,
    rhs: &IdealExpr,
    degree: usize,
    hypotheses: &[(String, String)],
    ctx: &Context,
    cfg: &Config,
) -> Result<IdentityReport> {
    for (sub, sup) in hypotheses {
        if !ctx.spot_check_subset(sub, sup)? {
            return Err(Error::Containment(alloc::format!("{} is not contained in {}", sub, sup)));
        }
    }
    let ms = rhs.monomials();
    let mut samples = Vec::new();
    let mut all = true;
    for p in spanning_products(&ms, ctx, 2, 8)? {
        let va = decide(&p, a, ctx, cfg)?;
        let vb = decide(&p, b, ctx, cfg)?;
        all &= va.is_member() && vb.is_member();
        samples.push((p, va, vb));
    }
    let cap = cfg.dim_cap.max(2000);
    let sa = ideal_shadow(a, ctx, degree, cap)?;
    let sb = ideal_shadow(b, ctx, degree, cap)?;
    let sr = ideal_shadow(rhs, ctx, degree, cap)?;
    let lhs = sa.lattice.meet(&sb.lattice)?;
    let mut discrepancy = Vec::new();
    for v in lhs.basis() {
        let r = sr.lattice.residual(v)?;
        if r.iter().any(|c| !c.is_zero()) && discrepancy.len() < 10 {
            discrepancy.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (sr.basis.monomial(i), c.clone()))
                    .collect(),
            );
        }
    }
    let shadow_equal = lhs == sr.lattice;
    Ok(IdentityReport {
        degree,
        samples,
        all_certified: all,
        shadow_equal,
        lhs_rank: lhs.rank(),
        rhs_rank: sr.lattice.rank(),
        discrepancy,
    })
}

/// Names of the pairwise intersections of `R`, `S`, `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub r: String,
    pub s: String,
    pub t: String,
}

fn meet_name(ctx: &Context, a: &str, b: &str) -> Result<String> {
    ctx.intersection(a, b).ok_or_else(|| {
        Error::Hypothesis(alloc::format!("no declared subgroup for the intersection of {} and {}", a, b))
    })
}

fn commutators_of(xs: &[Word], ys: &[Word], limit: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            let c = commutator(x, y);
            if !c.is_identity() {
                out.insert(c);
            }
        }
    }
    out.into_iter().take(limit).collect()
}

/// Generating words of the three bracketed factors of
/// `[(R meet S)' meet (S meet T)', R meet T] (R meet (S meet T)')' ((R meet S)' meet T)'`.
pub fn i_subgroup_generators(tr: &Triple, ctx: &Context, limit: usize) -> Result<Vec<Word>> {
    let rank = ctx.rank();
    let rad = ctx.conj_radius;
    let rs = meet_name(ctx, &tr.r, &tr.s)?;
    let st = meet_name(ctx, &tr.s, &tr.t)?;
    let rt = meet_name(ctx, &tr.r, &tr.t)?;
    let d_rs = gamma_generators(ctx.subgroup(&rs)?, 2, rank, rad, 20_000)?;
    let d_st = gamma_generators(ctx.subgroup(&st)?, 2, rank, rad, 20_000)?;
    let in_derived = |name: &str, w: &Word| ctx.atom_contains(&Atom::Derived(name.into()), w);

    let mut both = BTreeSet::new();
    for w in &d_rs {
        if in_derived(&st, w)? {
            both.insert(w.clone());
        }
    }
    for w in &d_st {
        if in_derived(&rs, w)? {
            both.insert(w.clone());
        }
    }
    let both: Vec<Word> = both.into_iter().take(limit).collect();
    let b = ball(&free_generators(rank), rad, 20_000)?;
    let rt_gens: Vec<Word> = ctx
        .subgroup(&rt)?
        .generators
        .iter()
        .flat_map(|g| b.iter().map(move |u| g.conj(u)))
        .take(limit)
        .collect();

    let r = ctx.subgroup(&tr.r)?;
    let t = ctx.subgroup(&tr.t)?;
    let y: Vec<Word> = d_st.iter().filter(|w| r.contains(w)).take(limit).cloned().collect();
    let z: Vec<Word> = d_rs.iter().filter(|w| t.contains(w)).take(limit).cloned().collect();

    let mut out = BTreeSet::new();
    out.extend(commutators_of(&both, &rt_gens, limit));
    out.extend(commutators_of(&y, &y, limit));
    out.extend(commutators_of(&z, &z, limit));
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests;
