//! Finitely presented abelian groups `Z^gens / rel` and maps between them.

use alloc::vec::Vec;

use super::FgAbGroup;
use crate::error::{Error, Result};
use crate::intlat::{apply, image, preimage, IntLattice, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub gens: usize,
    pub rel: IntLattice,
}

impl Module {
    pub fn new(gens: usize, relations: &[Vector]) -> Result<Self> {
        Ok(Module { gens, rel: IntLattice::new(gens, relations)? })
    }

    pub fn free(gens: usize) -> Self {
        Module { gens, rel: IntLattice::zero(gens) }
    }

    pub fn group(&self) -> FgAbGroup {
        let inv = self
            .rel
            .quotient_invariants(&IntLattice::full(self.gens))
            .expect("relations live in the ambient lattice");
        FgAbGroup::from_invariants(inv)
    }
}

/// A homomorphism given on generators: row `i` is the image of generator `i`
/// in the target's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Map {
    pub rows: Vec<Vector>,
}

impl Map {
    pub fn new(rows: Vec<Vector>) -> Self {
        Map { rows }
    }

    pub fn identity(n: usize) -> Self {
        Map::new(IntLattice::full(n).basis().to_vec())
    }

    pub fn apply(&self, x: &[crate::num::Int], dim: usize) -> Vector {
        apply(&self.rows, x, dim)
    }

    /// Whether relations of `src` land in relations of `dst`.
    pub fn well_defined(&self, src: &Module, dst: &Module) -> bool {
        self.rows.len() == src.gens
            && src
                .rel
                .basis()
                .iter()
                .all(|r| dst.rel.member(&self.apply(r, dst.gens)).unwrap_or(false))
    }

    /// Lift of the kernel: `{x : f(x) in rel(dst)}`.
    pub fn kernel_lattice(&self, dst: &Module) -> Result<IntLattice> {
        preimage(&self.rows, &dst.rel)
    }

    /// Image of the whole source, plus the target relations.
    pub fn image_lattice(&self, src_gens: usize, dst: &Module) -> Result<IntLattice> {
        image(&self.rows, &IntLattice::full(src_gens), dst.gens)?.join(&dst.rel)
    }
}

/// Cycles and boundaries at every node of `0 -> M_0 -> ... -> M_k -> 0`,
/// as lattices in each node's generator coordinates.
#[derive(Clone, Debug)]
pub struct ComplexData {
    pub cycles: Vec<IntLattice>,
    pub boundaries: Vec<IntLattice>,
}

impl ComplexData {
    pub fn homology(&self, i: usize) -> Result<FgAbGroup> {
        Ok(FgAbGroup::from_invariants(self.boundaries[i].quotient_invariants(&self.cycles[i])?))
    }
}

pub fn complex(terms: &[Module], maps: &[Map]) -> Result<ComplexData> {
    if maps.len() + 1 != terms.len() {
        return Err(Error::DimensionMismatch { expected: terms.len().saturating_sub(1), found: maps.len() });
    }
    for (i, f) in maps.iter().enumerate() {
        if !f.well_defined(&terms[i], &terms[i + 1]) {
            return Err(Error::Hypothesis(alloc::format!("map {} does not respect relations", i)));
        }
    }
    let mut cycles = Vec::new();
    let mut boundaries = Vec::new();
    for (i, m) in terms.iter().enumerate() {
        let z = match maps.get(i) {
            Some(f) => f.kernel_lattice(&terms[i + 1])?,
            None => IntLattice::full(m.gens),
        };
        let b = if i == 0 { m.rel.clone() } else { maps[i - 1].image_lattice(terms[i - 1].gens, m)? };
        if !z.contains_lattice(&b) {
            return Err(Error::Hypothesis(alloc::format!("composite into node {} is not zero", i)));
        }
        cycles.push(z);
        boundaries.push(b);
    }
    Ok(ComplexData { cycles, boundaries })
}
