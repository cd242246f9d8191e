//! Finite quotients `G = F/R`, transversals, the cocycle `W(g,h)` and the
//! membership experiments built on top of them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::idealeng::{decide, decide_word, Atom, Config, Context, IdealExpr, Verdict};
use crate::subgroup::{enumerate_group, word_perm, Perm, Transversal};
use crate::words::{commutator, Letter, Word, WordExpr};

const ORDER_CAP: usize = 5_040;

/// The finite group generated by the generator images, with one
/// representative word per element. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct CosetTable {
    rank: usize,
    degree: usize,
    perms: Vec<Perm>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
    schreier: Vec<Word>,
    reps: Vec<Word>,
}

impl CosetTable {
    /// Breadth-first Schreier transversal.
    pub fn new(degree: usize, perms: Vec<Perm>) -> Result<Self> {
        Self::build(degree, perms, None)
    }

    /// A transversal drawn at random from `seed`: breadth-first with a
    /// shuffled letter order, each representative then multiplied by a
    /// short element of `R`. Representatives are no longer prefix closed.
    pub fn randomized(degree: usize, perms: Vec<Perm>, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut letters: Vec<Letter> = (0..perms.len() as u32)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect();
        letters.shuffle(&mut rng);
        let mut t = Self::build(degree, perms, Some(&letters))?;
        for g in 1..t.order() {
            let len = rng.gen_range(0..=3);
            let u = Word::from_letters((0..len).map(|_| *letters.choose(&mut rng).expect("rank is positive")));
            let rho = u.mul(&t.schreier[t.element_of(&u)].inverse());
            t.reps[g] = t.reps[g].mul(&rho);
        }
        Ok(t)
    }

    fn build(degree: usize, perms: Vec<Perm>, order: Option<&[Letter]>) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::DimensionMismatch { expected: degree, found: p.degree() });
        }
        let reps = enumerate_group(&perms, degree, ORDER_CAP, order)
            .ok_or(Error::CapExceeded { what: "quotient order", cap: ORDER_CAP })?;
        let mut elements = Vec::with_capacity(reps.len());
        let mut words = Vec::with_capacity(reps.len());
        let id = Perm::identity(degree);
        elements.push(id.clone());
        words.push(Word::identity());
        for (p, w) in reps {
            if p != id {
                elements.push(p);
                words.push(w);
            }
        }
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(CosetTable { rank: perms.len(), degree, perms, elements, index, schreier: words.clone(), reps: words })
    }

    /// Replaces the transversal, checking that `reps[g]` lies in coset `g`
    /// and that the identity is represented by the empty word.
    pub fn with_transversal(mut self, reps: Vec<Word>) -> Result<Self> {
        if reps.len() != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), found: reps.len() });
        }
        if !reps[0].is_identity() {
            return Err(Error::InvalidTable("the identity must be represented by the empty word".into()));
        }
        for (g, w) in reps.iter().enumerate() {
            if w.max_gen().map_or(false, |m| m as usize >= self.rank) || self.element_of(w) != g {
                return Err(Error::InvalidTable(alloc::format!("representative {} is not in coset {}", w, g)));
            }
        }
        self.reps = reps;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_of(&self, w: &Word) -> usize {
        self.index[&word_perm(&self.perms, self.degree, w)]
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.index[&self.elements[g].then(&self.elements[h])]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.index[&self.elements[g].inverse()]
    }

    /// The representative `w(g)`.
    pub fn rep(&self, g: usize) -> &Word {
        &self.reps[g]
    }

    pub fn in_kernel(&self, w: &Word) -> bool {
        self.element_of(w) == 0
    }

    /// The prefix-closed transversal used for Reidemeister-Schreier
    /// rewriting, independent of the chosen representatives.
    pub fn schreier_transversal(&self) -> Transversal {
        let reps = self.elements.iter().cloned().zip(self.schreier.iter().cloned()).collect();
        Transversal::Finite { degree: self.degree, perms: self.perms.clone(), reps }
    }
}

/// `W(g,h) = w(gh)^-1 w(g) w(h)` for all pairs.
#[derive(Clone, Debug)]
pub struct CocycleTable {
    table: CosetTable,
    values: Vec<Vec<Word>>,
}

impl CocycleTable {
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn at(&self, g: usize, h: usize) -> &Word {
        &self.values[g][h]
    }
}

pub fn build_cocycle(ct: &CosetTable) -> Result<CocycleTable> {
    let n = ct.order();
    if !ct.rep(0).is_identity() {
        return Err(Error::InvalidTable("the identity must be represented by the empty word".into()));
    }
    let mut values = Vec::with_capacity(n);
    for g in 0..n {
        let mut row = Vec::with_capacity(n);
        for h in 0..n {
            let gh = ct.mul(g, h);
            let w = ct.rep(gh).inverse().mul(ct.rep(g)).mul(ct.rep(h));
            if !ct.in_kernel(&w) || ct.rep(gh).mul(&w) != ct.rep(g).mul(ct.rep(h)) {
                return Err(Error::InvalidTable(alloc::format!("W({},{}) = {} is not in R", g, h, w)));
            }
            row.push(w);
        }
        values.push(row);
    }
    Ok(CocycleTable { table: ct.clone(), values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub triples: usize,
    pub violations: Vec<(usize, usize, usize)>,
}

impl CocycleCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `W(gh,k) W(g,h)^{w(k)} = W(g,hk) W(h,k)` in `F`, for every triple.
pub fn cocycle_identity_check(w: &CocycleTable) -> CocycleCheck {
    let ct = &w.table;
    let n = ct.order();
    let mut violations = Vec::new();
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let lhs = w.at(ct.mul(g, h), k).mul(&w.at(g, h).conj(ct.rep(k)));
                let rhs = w.at(g, ct.mul(h, k)).mul(w.at(h, k));
                if lhs != rhs {
                    violations.push((g, h, k));
                }
            }
        }
    }
    CocycleCheck { triples: n * n * n, violations }
}

/// `(W(g,h)^-1)^{w(gh)^-1} W(h^-1, g^-1)`.
pub fn inverse_symmetry_element(w: &CocycleTable, g: usize, h: usize) -> Word {
    let ct = &w.table;
    let wgh = ct.rep(ct.mul(g, h));
    w.at(g, h).inverse().conj(&wgh.inverse()).mul(w.at(ct.inv(h), ct.inv(g)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSymmetryCheck {
    pub pairs: usize,
    /// Pairs whose element has a nonzero image in `R/[R,R]`.
    pub nonzero: Vec<(usize, usize)>,
    /// Whether the square of every element rewrites to twice its vector.
    pub doubling_consistent: bool,
}

impl InverseSymmetryCheck {
    pub fn holds(&self) -> bool {
        self.nonzero.is_empty() && self.doubling_consistent
    }
}

/// Rewrites each element over a Schreier basis of `R` and tests whether
/// its abelianized vector vanishes, which decides membership in `[R,R]`.
pub fn inverse_symmetry_check(w: &CocycleTable) -> Result<InverseSymmetryCheck> {
    let ct = &w.table;
    let t = ct.schreier_transversal();
    let n = ct.order();
    let mut nonzero = Vec::new();
    let mut doubling_consistent = true;
    for g in 0..n {
        for h in 0..n {
            let e = inverse_symmetry_element(w, g, h);
            if !ct.in_kernel(&e) {
                return Err(Error::InvalidTable(alloc::format!("element for ({},{}) is not in R", g, h)));
            }
            let v = t.abelianized(&e);
            let mut doubled = v.clone();
            doubled.values_mut().for_each(|c| *c *= 2);
            doubling_consistent &= t.abelianized(&e.pow(2)) == doubled;
            if !v.is_empty() {
                nonzero.push((g, h));
            }
        }
    }
    Ok(InverseSymmetryCheck { pairs: n * n, nonzero, doubling_consistent })
}

fn atom_for(ctx: &Context, name: &str) -> Result<Atom> {
    match ctx.subgroup(name) {
        Ok(_) => Ok(Atom::Named(name.into())),
        Err(_) if name == "F" => Ok(Atom::Whole),
        Err(e) => Err(e),
    }
}

fn products(ctx: &Context, names: &[[&str; 3]]) -> Result<IdealExpr> {
    let mut terms = Vec::with_capacity(names.len());
    for m in names {
        let atoms = m.iter().map(|n| atom_for(ctx, n).map(IdealExpr::Atom)).collect::<Result<_>>()?;
        terms.push(IdealExpr::product(atoms));
    }
    Ok(IdealExpr::sum(terms))
}

#[derive(Clone, Debug)]
pub struct SquareSuiteReport {
    pub hypothesis_ideal: IdealExpr,
    pub hypothesis: Verdict,
    pub conclusion_ideal: IdealExpr,
    pub conclusion: Verdict,
    /// For a `Member` conclusion: whether the mirrored certificate verifies
    /// `a^-2 - 1` against the mirrored ideal.
    pub mirror_verified: Option<bool>,
}

impl SquareSuiteReport {
    pub fn hypothesis_established(&self) -> bool {
        self.hypothesis.is_member()
    }
}

/// Tests `a - 1` in `srt + trs`, then `a^2 - 1` in `rrs + srr + trr + rrt`.
/// The name `F` stands for the whole group when no subgroup has that name.
pub fn square_membership_suite(
    ctx: &Context,
    r: &str,
    s: &str,
    t: &str,
    a: &WordExpr,
    cfg: &Config,
) -> Result<SquareSuiteReport> {
    let hypothesis_ideal = products(ctx, &[[s, r, t], [t, r, s]])?;
    let conclusion_ideal = products(ctx, &[[r, r, s], [s, r, r], [t, r, r], [r, r, t]])?;
    let hypothesis = decide_word(a, &hypothesis_ideal, ctx, cfg)?;
    let square = WordExpr::pow(a.clone(), 2);
    let conclusion = decide_word(&square, &conclusion_ideal, ctx, cfg)?;
    let mirror_verified = match &conclusion {
        Verdict::Member(c) => {
            let v = RingElement::delta(&square.eval().inverse());
            Some(c.mirror().verify(&v, ctx)?)
        }
        _ => None,
    };
    Ok(SquareSuiteReport { hypothesis_ideal, hypothesis, conclusion_ideal, conclusion, mirror_verified })
}

/// Builds `prod_i [[r_i^-1, d], [t_i, e]]` after checking `r_i` in `R`,
/// `t_i` in `R` and `S`, `d, e` in `S`, and `prod_i [r_i, t_i] = 1` in `F`.
pub fn commutator_product_word(
    ctx: &Context,
    r: &str,
    s: &str,
    tuples: &[(Word, Word)],
    d: &Word,
    e: &Word,
) -> Result<WordExpr> {
    let (hr, hs) = (ctx.subgroup(r)?, ctx.subgroup(s)?);
    let names = ctx.names();
    let reject = |what: &str, w: &Word| {
        Err(Error::Hypothesis(alloc::format!("{} = {} fails its oracle", what, w.display(names))))
    };
    for (i, (ri, ti)) in tuples.iter().enumerate() {
        if !hr.contains(ri) {
            return reject(&alloc::format!("r{}", i + 1), ri);
        }
        if !hr.contains(ti) || !hs.contains(ti) {
            return reject(&alloc::format!("t{}", i + 1), ti);
        }
    }
    for (what, w) in [("d", d), ("e", e)] {
        if !hs.contains(w) {
            return reject(what, w);
        }
    }
    let rel = tuples.iter().fold(Word::identity(), |acc, (ri, ti)| acc.mul(&commutator(ri, ti)));
    if !rel.is_identity() {
        return Err(Error::Hypothesis(alloc::format!(
            "product of commutators is {}, not 1",
            rel.display(names)
        )));
    }
    let lit = |w: &Word| WordExpr::lit(w.clone());
    let factors: Vec<WordExpr> = tuples
        .iter()
        .map(|(ri, ti)| {
            WordExpr::comm(WordExpr::comm(lit(&ri.inverse()), lit(d)), WordExpr::comm(lit(ti), lit(e)))
        })
        .collect();
    Ok(match factors.len() {
        0 => WordExpr::lit(Word::identity()),
        1 => factors.into_iter().next().expect("one factor"),
        _ => WordExpr::Mul(factors),
    })
}

/// Decides `w - 1` in `rsf`.
pub fn commutator_product_check(ctx: &Context, r: &str, s: &str, w: &WordExpr, cfg: &Config) -> Result<Verdict> {
    let ideal = products(ctx, &[[r, s, "F"]])?;
    decide_word(w, &ideal, ctx, cfg)
}

/// Decides `v` in the ideal spelled by `names`, each triple one product.
pub fn decide_products(v: &RingElement, names: &[[&str; 3]], ctx: &Context, cfg: &Config) -> Result<Verdict> {
    decide(v, &products(ctx, names)?, ctx, cfg)
}

/// Hall-Witt tuples for `a, b, c`: with `r_1 = [a, b^-1]^b`, `t_1 = c^b` and
/// its cyclic shifts, `prod_i [r_i, t_i] = 1` in any group.
pub fn hall_witt_tuples(a: &Word, b: &Word, c: &Word) -> Vec<(Word, Word)> {
    let one = |x: &Word, y: &Word, z: &Word| (commutator(x, &y.inverse()).conj(y), z.conj(y));
    alloc::vec![one(a, b, c), one(b, c, a), one(c, a, b)]
}

#[cfg(test)]
mod tests;
