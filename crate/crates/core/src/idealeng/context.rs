use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::expr::Atom;
use crate::error::{Error, Result};
use crate::subgroup::{gamma_generators, lcs_member, SubgroupHandle, Transversal};
use crate::words::{ball, free_generators, Word};

/// The ambient free group together with its declared normal subgroups.
#[derive(Clone, Debug)]
pub struct Context {
    rank: usize,
    names: Vec<String>,
    subgroups: BTreeMap<String, SubgroupHandle>,
    transversals: BTreeMap<String, Option<Transversal>>,
    meets: BTreeMap<(String, String), String>,
    subsets: BTreeSet<(String, String)>,
    /// Conjugation radius used when enumerating commutator generators.
    pub conj_radius: usize,
}

impl Context {
    pub fn new(rank: usize, names: Vec<String>) -> Result<Self> {
        if names.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: names.len() });
        }
        Ok(Context {
            rank,
            names,
            subgroups: BTreeMap::new(),
            transversals: BTreeMap::new(),
            meets: BTreeMap::new(),
            subsets: BTreeSet::new(),
            conj_radius: 1,
        })
    }

    /// Generators named `x1 .. xn`.
    pub fn with_rank(rank: usize) -> Self {
        let names = (1..=rank).map(|i| alloc::format!("x{}", i)).collect();
        Context::new(rank, names).expect("rank matches name count")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Adds a subgroup after checking that its quotient kills its generators.
    pub fn add_subgroup(&mut self, h: SubgroupHandle) -> Result<()> {
        for g in &h.generators {
            if let Some(m) = g.max_gen() {
                if m as usize >= self.rank {
                    return Err(Error::GeneratorOutOfRange { gen: m, rank: self.rank });
                }
            }
        }
        h.check_soundness(self.rank)?;
        self.transversals.insert(h.name.clone(), h.transversal());
        self.subgroups.insert(h.name.clone(), h);
        Ok(())
    }

    pub fn subgroup(&self, name: &str) -> Result<&SubgroupHandle> {
        self.subgroups.get(name).ok_or_else(|| Error::UnresolvedName(name.into()))
    }

    pub fn subgroup_names(&self) -> impl Iterator<Item = &String> {
        self.subgroups.keys()
    }

    /// Canonical subgroup name for a token: exact match first, then a unique
    /// case-insensitive match.
    pub fn resolve(&self, token: &str) -> Option<String> {
        if self.subgroups.contains_key(token) {
            return Some(token.into());
        }
        let mut hits = self.subgroups.keys().filter(|k| k.eq_ignore_ascii_case(token));
        match (hits.next(), hits.next()) {
            (Some(k), None) => Some(k.clone()),
            _ => None,
        }
    }

    /// Records `sub <= sup` after a spot-check of generator conjugates.
    pub fn declare_subset(&mut self, sub: &str, sup: &str) -> Result<()> {
        if !self.spot_check_subset(sub, sup)? {
            return Err(Error::Containment(alloc::format!("{} is not contained in {}", sub, sup)));
        }
        self.subsets.insert((sub.into(), sup.into()));
        Ok(())
    }

    /// Records that subgroup `name` is the intersection of `a` and `b`,
    /// checked by spot-checks in both directions.
    pub fn declare_meet(&mut self, name: &str, a: &str, b: &str) -> Result<()> {
        if !self.spot_check_subset(name, a)? || !self.spot_check_subset(name, b)? {
            return Err(Error::Containment(alloc::format!("{} is not inside {} and {}", name, a, b)));
        }
        let h = self.subgroup(name)?;
        let (ha, hb) = (self.subgroup(a)?, self.subgroup(b)?);
        let probe = ball(&free_generators(self.rank), 2, 100_000)?;
        for w in &probe {
            if ha.contains(w) && hb.contains(w) && !h.contains(w) {
                return Err(Error::Containment(alloc::format!(
                    "{} misses the common element {} of {} and {}",
                    name,
                    w.display(&self.names),
                    a,
                    b
                )));
            }
        }
        let key = if a <= b { (a.into(), b.into()) } else { (b.into(), a.into()) };
        self.meets.insert(key, name.into());
        Ok(())
    }

    /// Every normal generator of `sub`, conjugated by the radius-2 ball, lies in `sup`.
    pub fn spot_check_subset(&self, sub: &str, sup: &str) -> Result<bool> {
        let hs = self.subgroup(sub)?;
        let ht = self.subgroup(sup)?;
        let b = ball(&free_generators(self.rank), 2, 100_000)?;
        Ok(hs.generators.iter().all(|g| b.iter().all(|u| ht.contains(&g.conj(u)))))
    }

    pub fn is_subset(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.subsets.contains(&(sub.into(), sup.into()))
    }

    /// Name of a declared subgroup equal to `a` meet `b`, if known.
    pub fn intersection(&self, a: &str, b: &str) -> Option<String> {
        if self.is_subset(a, b) {
            return Some(a.into());
        }
        if self.is_subset(b, a) {
            return Some(b.into());
        }
        let key = if a <= b { (a.into(), b.into()) } else { (b.into(), a.into()) };
        self.meets.get(&key).cloned()
    }

    pub fn transversal(&self, atom: &Atom) -> Option<Transversal> {
        match atom {
            Atom::Whole => Some(Transversal::Whole),
            Atom::Named(n) => self.transversals.get(n).cloned().flatten(),
            Atom::Derived(_) | Atom::Gamma(..) => None,
        }
    }

    fn parent_transversal(&self, name: &str) -> Result<&Transversal> {
        self.transversals.get(name).and_then(|t| t.as_ref()).ok_or_else(|| {
            Error::Hypothesis(alloc::format!("subgroup {} has no computable transversal", name))
        })
    }

    /// Membership of a word in the subgroup of an atom.
    pub fn atom_contains(&self, atom: &Atom, w: &Word) -> Result<bool> {
        match atom {
            Atom::Whole => Ok(true),
            Atom::Named(n) => Ok(self.subgroup(n)?.contains(w)),
            Atom::Derived(n) => self.lower_central_contains(n, 2, w),
            Atom::Gamma(k, n) => self.lower_central_contains(n, *k, w),
        }
    }

    fn lower_central_contains(&self, name: &str, weight: usize, w: &Word) -> Result<bool> {
        let h = self.subgroup(name)?;
        if !h.contains(w) {
            return Ok(false);
        }
        let t = self.parent_transversal(name)?;
        Ok(lcs_member(&t.rewrite(w).0, weight))
    }

    /// Normal generators of an atom's subgroup. The flag is false when the
    /// list is only a bounded sample of an infinite normal generating set.
    pub fn atom_generators(&self, atom: &Atom) -> Result<(Vec<Word>, bool)> {
        match atom {
            Atom::Whole => Ok((free_generators(self.rank), true)),
            Atom::Named(n) => Ok((self.subgroup(n)?.generators.clone(), true)),
            Atom::Derived(n) => Ok((
                gamma_generators(self.subgroup(n)?, 2, self.rank, self.conj_radius, 20_000)?,
                false,
            )),
            Atom::Gamma(k, n) => Ok((
                gamma_generators(self.subgroup(n)?, *k, self.rank, self.conj_radius, 20_000)?,
                false,
            )),
        }
    }
}
