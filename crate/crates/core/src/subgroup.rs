//! Normal subgroups of a free group, described by a normal generating set plus
//! a quotient oracle that decides membership.
//!
//! Oracles are declared rather than derived: a subgroup is the kernel of a
//! user-supplied homomorphism. Where the homomorphism admits a computable
//! prefix-closed transversal, Reidemeister-Schreier rewriting into the free
//! basis of the subgroup is available.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::words::{ball, commutator, free_generators, Letter, Word};

/// Permutation of `0..n` acting on the right: `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn then(&self, q: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| q.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = alloc::vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            v[p as usize] = i as u32;
        }
        Perm(v)
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// Builds a permutation from cycles of 0-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut v: Vec<u32> = (0..n as u32).collect();
        let mut touched = BTreeSet::new();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a as usize >= n || !touched.insert(a) {
                    return Err(Error::InvalidTable(alloc::format!("bad cycle point {}", a + 1)));
                }
                v[a as usize] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm(v))
    }

    /// Disjoint cycles with 0-based points, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = alloc::vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i as u32);
                i = self.0[i] as usize;
            }
            out.push(c);
        }
        out
    }
}

pub fn word_perm(perms: &[Perm], degree: usize, w: &Word) -> Perm {
    let mut p = Perm::identity(degree);
    for l in w.letters() {
        let g = &perms[l.gen as usize];
        p = if l.inv { p.then(&g.inverse()) } else { p.then(g) };
    }
    p
}

/// Declared homomorphism whose kernel is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient {
    /// `F/H` trivial, i.e. `H = F`.
    Trivial,
    /// Homomorphism into a free group given by generator images.
    FreeHom(Vec<Word>),
    /// Homomorphism into `Z^m` given by generator images.
    FreeAbelian(Vec<Vec<i64>>),
    /// Homomorphism into the symmetric group on `degree` points.
    FinitePerm { degree: usize, perms: Vec<Perm> },
    /// Intersection of kernels.
    Meet(Vec<Quotient>),
    /// `gamma_weight(parent)`; weight 2 is the derived subgroup.
    LowerCentral { parent: Box<SubgroupHandle>, weight: usize },
}

impl Quotient {
    pub fn contains(&self, w: &Word) -> bool {
        match self {
            Quotient::Trivial => true,
            Quotient::FreeHom(images) => free_image(images, w).is_identity(),
            Quotient::FreeAbelian(images) => abelian_image(images, w).iter().all(|&c| c == 0),
            Quotient::FinitePerm { degree, perms } => word_perm(perms, *degree, w).is_identity(),
            Quotient::Meet(parts) => parts.iter().all(|q| q.contains(w)),
            Quotient::LowerCentral { parent, weight } => {
                if !parent.contains(w) {
                    return false;
                }
                let t = parent
                    .transversal()
                    .expect("lower-central oracle built over a parent without transversal");
                let (steps, _) = t.rewrite(w);
                lcs_member(&steps, *weight)
            }
        }
    }
}

fn free_image(images: &[Word], w: &Word) -> Word {
    let mut acc = Word::identity();
    for l in w.letters() {
        let im = &images[l.gen as usize];
        acc = if l.inv { acc.mul(&im.inverse()) } else { acc.mul(im) };
    }
    acc
}

fn abelian_image(images: &[Vec<i64>], w: &Word) -> Vec<i64> {
    let m = images.first().map_or(0, |v| v.len());
    let mut acc = alloc::vec![0i64; m];
    for l in w.letters() {
        for (a, b) in acc.iter_mut().zip(&images[l.gen as usize]) {
            if l.inv {
                *a -= b;
            } else {
                *a += b;
            }
        }
    }
    acc
}

/// Decides membership of a rewritten word in the `weight`-th lower central
/// term of the free group on the Schreier basis, via the Magnus expansion.
pub(crate) fn lcs_member(steps: &[SchreierStep], weight: usize) -> bool {
    let mut index: BTreeMap<&Word, u32> = BTreeMap::new();
    let mut letters = Vec::with_capacity(steps.len());
    for s in steps {
        let n = index.len() as u32;
        let id = *index.entry(&s.basis).or_insert(n);
        letters.push(Letter::new(id, s.inv));
    }
    let w = Word::from_letters(letters);
    if weight <= 1 {
        return true;
    }
    let nvars = index.len().max(1);
    let series = crate::magnus::TruncatedSeries::expand(&w, nvars, weight - 1);
    series.terms().iter().all(|(m, _)| m.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    pub name: String,
    pub generators: Vec<Word>,
    pub quotient: Quotient,
}

/// One letter of a Reidemeister-Schreier rewrite: the letter at `pos`
/// contributes the Schreier basis element `basis` (inverted when `inv`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierStep {
    pub basis: Word,
    pub inv: bool,
    pub pos: usize,
}

impl SubgroupHandle {
    pub fn new(name: &str, generators: Vec<Word>, quotient: Quotient) -> Self {
        SubgroupHandle { name: name.into(), generators, quotient }
    }

    /// The whole group `F` of the given rank.
    pub fn whole(rank: usize) -> Self {
        SubgroupHandle::new("F", free_generators(rank), Quotient::Trivial)
    }

    /// `gamma_weight(parent)`, with the commutator generators enumerated at
    /// `conj_radius`. Fails if the parent has no computable transversal.
    pub fn lower_central(
        parent: &SubgroupHandle,
        weight: usize,
        rank: usize,
        conj_radius: usize,
    ) -> Result<Self> {
        if parent.transversal().is_none() {
            return Err(Error::Hypothesis(alloc::format!(
                "subgroup {} has no computable transversal",
                parent.name
            )));
        }
        let gens = gamma_generators(parent, weight, rank, conj_radius, 20_000)?;
        let name = if weight == 2 {
            alloc::format!("{}'", parent.name)
        } else {
            alloc::format!("gamma{}({})", weight, parent.name)
        };
        Ok(SubgroupHandle {
            name,
            generators: gens,
            quotient: Quotient::LowerCentral { parent: Box::new(parent.clone()), weight },
        })
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.quotient.contains(w)
    }

    pub fn transversal(&self) -> Option<Transversal> {
        Transversal::for_quotient(&self.quotient)
    }

    /// Checks that each normal generator and its conjugates by the radius-2
    /// ball map to the identity.
    pub fn check_soundness(&self, rank: usize) -> Result<()> {
        let b = ball(&free_generators(rank), 2, 100_000)?;
        for g in &self.generators {
            for u in &b {
                if !self.contains(&g.conj(u)) {
                    return Err(Error::Hypothesis(alloc::format!(
                        "generator {} of {} is not killed by its quotient",
                        g,
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Prefix-closed coset representatives for a declared quotient.
#[derive(Clone, Debug)]
pub enum Transversal {
    Whole,
    /// Generator `i` maps to `x_j` (`Some(j)`, with `j` fixed) or to 1.
    Retraction(Vec<Option<u32>>),
    /// `pivots[j]` is a generator with image `e_j`.
    Abelian { images: Vec<Vec<i64>>, pivots: Vec<u32> },
    Finite { degree: usize, perms: Vec<Perm>, reps: BTreeMap<Perm, Word> },
    Product(Vec<Transversal>),
}

const FINITE_ORDER_CAP: usize = 40_320;

impl Transversal {
    pub fn for_quotient(q: &Quotient) -> Option<Transversal> {
        match q {
            Quotient::Trivial => Some(Transversal::Whole),
            Quotient::FreeHom(images) => {
                let mut map = Vec::with_capacity(images.len());
                for im in images {
                    match im.letters() {
                        [] => map.push(None),
                        [l] if !l.inv => map.push(Some(l.gen)),
                        _ => return None,
                    }
                }
                for j in map.iter().flatten() {
                    if map.get(*j as usize) != Some(&Some(*j)) {
                        return None;
                    }
                }
                Some(Transversal::Retraction(map))
            }
            Quotient::FreeAbelian(images) => {
                let m = images.first().map_or(0, |v| v.len());
                let mut pivots = Vec::with_capacity(m);
                for j in 0..m {
                    let p = images.iter().position(|v| {
                        v.iter().enumerate().all(|(k, &c)| c == if k == j { 1 } else { 0 })
                    })?;
                    pivots.push(p as u32);
                }
                Some(Transversal::Abelian { images: images.clone(), pivots })
            }
            Quotient::FinitePerm { degree, perms } => {
                let reps = enumerate_group(perms, *degree, FINITE_ORDER_CAP, None)?;
                Some(Transversal::Finite { degree: *degree, perms: perms.clone(), reps })
            }
            Quotient::Meet(parts) => {
                let ts: Vec<Transversal> =
                    parts.iter().map(Transversal::for_quotient).collect::<Option<_>>()?;
                for (i, t) in ts.iter().enumerate() {
                    let used = t.letters_used();
                    for (j, q) in parts.iter().enumerate() {
                        if i != j && !used.iter().all(|&g| q.contains(&Word::gen(g))) {
                            return None;
                        }
                    }
                }
                Some(Transversal::Product(ts))
            }
            Quotient::LowerCentral { .. } => None,
        }
    }

    fn letters_used(&self) -> BTreeSet<u32> {
        match self {
            Transversal::Whole => BTreeSet::new(),
            Transversal::Retraction(map) => map.iter().flatten().copied().collect(),
            Transversal::Abelian { pivots, .. } => pivots.iter().copied().collect(),
            Transversal::Finite { reps, .. } => {
                reps.values().flat_map(|w| w.letters().iter().map(|l| l.gen)).collect()
            }
            Transversal::Product(ts) => ts.iter().flat_map(|t| t.letters_used()).collect(),
        }
    }

    /// The coset representative of `w`.
    pub fn rep(&self, w: &Word) -> Word {
        match self {
            Transversal::Whole => Word::identity(),
            Transversal::Retraction(map) => Word::from_letters(
                w.letters()
                    .iter()
                    .filter_map(|l| map[l.gen as usize].map(|j| Letter::new(j, l.inv))),
            ),
            Transversal::Abelian { images, pivots } => {
                let v = abelian_image(images, w);
                let mut out = Word::identity();
                for (j, &c) in v.iter().enumerate() {
                    out = out.mul(&Word::gen(pivots[j]).pow(c));
                }
                out
            }
            Transversal::Finite { degree, perms, reps } => {
                reps[&word_perm(perms, *degree, w)].clone()
            }
            Transversal::Product(ts) => {
                let mut out = Word::identity();
                for t in ts {
                    out = out.mul(&t.rep(w));
                }
                out
            }
        }
    }

    /// Rewrites `w` as a product of Schreier basis elements times its
    /// representative: `w = s_1 ... s_k * rep(w)`.
    pub fn rewrite(&self, w: &Word) -> (Vec<SchreierStep>, Word) {
        let mut steps = Vec::new();
        let mut prev = Word::identity();
        for (pos, &l) in w.letters().iter().enumerate() {
            let cur = self.rep(&prev.mul_letter(l));
            let x = Letter::new(l.gen, false);
            let s = if l.inv {
                cur.mul_letter(x).mul(&prev.inverse())
            } else {
                prev.mul_letter(x).mul(&cur.inverse())
            };
            if !s.is_identity() {
                steps.push(SchreierStep { basis: s, inv: l.inv, pos });
            }
            prev = cur;
        }
        (steps, prev)
    }

    /// Abelianized Reidemeister-Schreier vector of a word, keyed by basis element.
    pub fn abelianized(&self, w: &Word) -> BTreeMap<Word, i64> {
        let (steps, _) = self.rewrite(w);
        let mut v: BTreeMap<Word, i64> = BTreeMap::new();
        for s in steps {
            *v.entry(s.basis).or_insert(0) += if s.inv { -1 } else { 1 };
        }
        v.retain(|_, c| *c != 0);
        v
    }
}

/// Breadth-first enumeration of the permutation group generated by `perms`,
/// returning a prefix-closed word for each element. When `order` is given the
/// generator letters are tried in that order instead of the default one.
pub fn enumerate_group(
    perms: &[Perm],
    degree: usize,
    cap: usize,
    order: Option<&[Letter]>,
) -> Option<BTreeMap<Perm, Word>> {
    let default: Vec<Letter> = (0..perms.len() as u32)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let letters = order.unwrap_or(&default);
    let mut reps = BTreeMap::new();
    let id = Perm::identity(degree);
    reps.insert(id.clone(), Word::identity());
    let mut queue = VecDeque::new();
    queue.push_back((id, Word::identity()));
    while let Some((p, w)) = queue.pop_front() {
        for &l in letters {
            let g = &perms[l.gen as usize];
            let q = if l.inv { p.then(&g.inverse()) } else { p.then(g) };
            if !reps.contains_key(&q) {
                let nw = w.mul_letter(l);
                reps.insert(q.clone(), nw.clone());
                if reps.len() > cap {
                    return None;
                }
                queue.push_back((q, nw));
            }
        }
    }
    Some(reps)
}

/// Left-normed commutators of the given weight whose entries are normal
/// generators of `h` conjugated by elements of the radius-`conj_radius` ball.
pub fn gamma_generators(
    h: &SubgroupHandle,
    weight: usize,
    rank: usize,
    conj_radius: usize,
    cap: usize,
) -> Result<Vec<Word>> {
    if h.generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    assert!(weight >= 2, "weight must be at least 2");
    let b = ball(&free_generators(rank), conj_radius, cap)?;
    let entries: BTreeSet<Word> = h
        .generators
        .iter()
        .flat_map(|g| b.iter().map(move |u| g.conj(&u.inverse())))
        .collect();
    let mut layer: BTreeSet<Word> = entries.clone();
    for _ in 1..weight {
        let mut next = BTreeSet::new();
        for c in &layer {
            for e in &entries {
                let k = commutator(c, e);
                if !k.is_identity() {
                    next.insert(k);
                    if next.len() > cap {
                        return Err(Error::CapExceeded { what: "commutator list", cap });
                    }
                }
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().collect())
}
