use alloc::vec::Vec;

use super::context::Context;
use super::expr::{Atom, IdealExpr, Monomials};
use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::intlat::{IntLattice, Vector};
use crate::magnus::{
    commutator_generators, conjugation_closure, ideal_closure, left_closure, product_generators,
    MonomialBasis, TruncatedSeries,
};
use crate::words::Word;

/// Image of an ideal in the degree-`degree` truncated algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shadow {
    pub degree: usize,
    pub basis: MonomialBasis,
    pub lattice: IntLattice,
    /// False when some atom only contributed a sample of its generators, in
    /// which case the lattice may be smaller than the true image.
    pub exact: bool,
}

impl Shadow {
    pub fn vector(&self, v: &RingElement) -> Vector {
        TruncatedSeries::expand_ring(v, self.basis.nvars, self.degree).to_vector(&self.basis)
    }

    pub fn contains(&self, v: &RingElement) -> Result<bool> {
        self.lattice.member(&self.vector(v))
    }
}

fn delta_vector(w: &Word, basis: &MonomialBasis) -> Vector {
    TruncatedSeries::expand_ring(&RingElement::delta(w), basis.nvars, basis.degree).to_vector(basis)
}

/// Generators of the two-sided ideal of one atom.
fn atom_generators(atom: &Atom, ctx: &Context, basis: &MonomialBasis, cap: usize) -> Result<(Vec<Vector>, bool)> {
    match atom {
        Atom::Derived(n) => {
            // The ideal of H' is generated by ring commutators of the
            // conjugation-closed span of the shadows of h - 1.
            let h = ctx.subgroup(n)?;
            let mut seeds = Vec::new();
            for g in &h.generators {
                seeds.push(delta_vector(g, basis));
                seeds.push(delta_vector(&g.inverse(), basis));
            }
            let span = conjugation_closure(&seeds, basis, false, cap)?;
            Ok((commutator_generators(&span, basis), true))
        }
        _ => {
            let (words, exact) = ctx.atom_generators(atom)?;
            Ok((words.iter().map(|w| delta_vector(w, basis)).collect(), exact))
        }
    }
}

fn product_shadow(atoms: &[Atom], ctx: &Context, basis: &MonomialBasis, cap: usize) -> Result<(IntLattice, bool)> {
    let mut exact = true;
    let mut acc: Option<IntLattice> = None;
    for atom in atoms.iter().rev() {
        let (gens, ex) = atom_generators(atom, ctx, basis, cap)?;
        exact &= ex;
        acc = Some(match acc {
            None => ideal_closure(&gens, basis, cap)?,
            Some(right) => left_closure(&product_generators(&gens, &right, basis), basis, cap)?,
        });
    }
    Ok((acc.unwrap_or_else(|| IntLattice::full(basis.dim())), exact))
}

/// Shadow of a sum of products of atoms.
pub fn monomials_shadow(ms: &Monomials, ctx: &Context, degree: usize, dim_cap: usize) -> Result<Shadow> {
    let n = ctx.rank();
    if MonomialBasis::checked_dim(n, degree, dim_cap).is_none() {
        return Err(Error::CapExceeded { what: "truncated algebra dimension", cap: dim_cap });
    }
    let basis = MonomialBasis::new(n, degree);
    let mut lattice = IntLattice::zero(basis.dim());
    let mut exact = true;
    for m in ms {
        let (l, ex) = product_shadow(m, ctx, &basis, dim_cap)?;
        exact &= ex;
        lattice = lattice.join(&l)?;
    }
    Ok(Shadow { degree, basis, lattice, exact })
}

/// The degree-`degree` shadow of an ideal expression.
pub fn ideal_shadow(e: &IdealExpr, ctx: &Context, degree: usize, dim_cap: usize) -> Result<Shadow> {
    monomials_shadow(&e.monomials(), ctx, degree, dim_cap)
}
