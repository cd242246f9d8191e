//! Line-oriented scenario files.
//!
//! ```text
//! group NAME rank INT names IDENT+
//! subgroup NAME closure WORD ("," WORD)* quotient QUOTSPEC
//! subgroup NAME closure auto quotient gamma INT NAME
//! declare NAME subset NAME
//! declare NAME meet NAME NAME
//! task member WORD in IDEAL [degree INT] [radius INT] [expect member|nonmember]
//! task identity IDEAL meet IDEAL equals IDEAL degree INT [expect equal]
//! task functor KIND GROUP [expect GROUP]
//! task homology GROUP degree INT [expect GROUP]
//! task cocycle QUOTSPEC [expect pass]
//! task suite NAME [expect pass]
//! task square WORD over R S T [expect member|nonmember]
//! task product TUPLES using WORD WORD over R S [expect member|nonmember]
//!
//! QUOTSPEC := trivial
//!           | free_hom { GEN -> WORD, ... }
//!           | free_abelian dim INT { GEN -> (INT ...), ... }
//!           | finite_perm degree INT { GEN -> (a b ...)(c d ...), ... }
//!           | meet NAME NAME+
//!           | gamma INT NAME
//! GROUP    := 0 | TERM (+ TERM)*  with TERM := Z | Z^k | Z/n
//!           | rank INT relations (INT ...)*
//! TUPLES   := none | hall_witt WORD WORD WORD | pairs (WORD WORD)+
//! ```
//!
//! Anything after `#` is a comment. In ideals and in `over` lists the name
//! `F` (or `f`) is the whole group.

mod ast;
mod parse;

pub use ast::*;
pub use parse::parse_syntax;

use fgring_core::idealeng::Context;
use fgring_core::subgroup::{Perm, Quotient, SubgroupHandle};
use fgring_core::words::Word;
use fgring_core::{Error, Result};

/// Parses and validates a scenario: every name resolves, every subgroup's
/// quotient kills its closure words, and every declaration passes its
/// spot checks.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let s = parse_syntax(text)?;
    s.context()?;
    Ok(s)
}

/// Generator images of a finite permutation quotient over the given names.
pub fn perms_of(names: &[String], degree: usize, images: &[(String, Vec<Vec<u32>>)]) -> Result<Vec<Perm>> {
    names
        .iter()
        .map(|n| match images.iter().find(|(g, _)| g == n) {
            Some((_, cs)) => {
                let zero: Vec<Vec<u32>> = cs.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
                Perm::from_cycles(degree, &zero)
            }
            None => Ok(Perm::identity(degree)),
        })
        .collect()
}

impl Scenario {
    fn names(&self) -> &[String] {
        self.group.as_ref().map_or(&[], |g| &g.names)
    }

    fn quotient(&self, q: &QuotSpec, built: &Context) -> Result<Quotient> {
        let names = self.names();
        let find = |g: &String| names.iter().position(|n| n == g).expect("checked by the parser");
        Ok(match q {
            QuotSpec::Trivial => Quotient::Trivial,
            QuotSpec::FreeHom(images) => {
                let mut im: Vec<Word> = (0..names.len() as u32).map(Word::gen).collect();
                for (g, w) in images {
                    im[find(g)] = w.expr.eval();
                }
                Quotient::FreeHom(im)
            }
            QuotSpec::FreeAbelian { dim, images } => {
                let mut im = vec![vec![0i64; *dim]; names.len()];
                for (g, v) in images {
                    im[find(g)] = v.clone();
                }
                Quotient::FreeAbelian(im)
            }
            QuotSpec::FinitePerm { degree, images } => {
                Quotient::FinitePerm { degree: *degree, perms: perms_of(names, *degree, images)? }
            }
            QuotSpec::Meet(parts) => Quotient::Meet(
                parts.iter().map(|p| Ok(built.subgroup(p)?.quotient.clone())).collect::<Result<_>>()?,
            ),
            QuotSpec::Gamma { weight, parent } => {
                let h = SubgroupHandle::lower_central(built.subgroup(parent)?, *weight, names.len(), built.conj_radius)?;
                h.quotient
            }
        })
    }

    /// The membership context described by the declarations. Fails if any
    /// declared containment or intersection does not pass its spot check.
    pub fn context(&self) -> Result<Context> {
        let Some(g) = &self.group else {
            if !self.subgroups.is_empty() || !self.declarations.is_empty() {
                return Err(Error::Hypothesis("subgroups need a group declaration".into()));
            }
            return Ok(Context::with_rank(0));
        };
        let mut ctx = Context::new(g.rank, g.names.clone())?;
        for s in &self.subgroups {
            let quotient = self.quotient(&s.quotient, &ctx)?;
            let generators = match (&s.closure, &s.quotient) {
                (Closure::Words(ws), _) => ws.iter().map(|w| w.expr.eval()).collect(),
                (Closure::Auto, QuotSpec::Gamma { weight, parent }) => {
                    SubgroupHandle::lower_central(ctx.subgroup(parent)?, *weight, g.rank, ctx.conj_radius)?.generators
                }
                (Closure::Auto, _) => return Err(Error::Hypothesis("closure auto needs a gamma quotient".into())),
            };
            ctx.add_subgroup(SubgroupHandle::new(&s.name, generators, quotient))?;
        }
        for d in &self.declarations {
            match d {
                Declaration::Subset { sub, sup } => ctx.declare_subset(sub, sup)?,
                Declaration::Meet { name, a, b } => ctx.declare_meet(name, a, b)?,
            }
        }
        Ok(ctx)
    }

    /// This scenario's declarations with `line` as its only task.
    pub fn with_task(&self, line: &str) -> Result<Scenario> {
        let mut base = self.clone();
        base.tasks.clear();
        let text = format!("{}{}\n", base, line);
        parse_syntax(&text)
    }
}
