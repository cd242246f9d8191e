use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A generating ideal: `h = Delta(H) Z[F]` for some normal subgroup `H`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Named(String),
    /// The augmentation ideal `f` of the whole group.
    Whole,
    /// The ideal of the derived subgroup of a named subgroup.
    Derived(String),
    /// The ideal of the `k`-th lower central term of a named subgroup.
    Gamma(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Atom(Atom),
    Product(Vec<IdealExpr>),
    Sum(Vec<IdealExpr>),
    Power(Box<IdealExpr>, u32),
}

/// An ideal flattened to a sum of products of atoms.
pub type Monomials = Vec<Vec<Atom>>;

impl IdealExpr {
    pub fn atom(a: Atom) -> Self {
        IdealExpr::Atom(a)
    }

    pub fn named(n: &str) -> Self {
        IdealExpr::Atom(Atom::Named(n.into()))
    }

    pub fn product(parts: Vec<IdealExpr>) -> Self {
        IdealExpr::Product(parts)
    }

    pub fn sum(parts: Vec<IdealExpr>) -> Self {
        IdealExpr::Sum(parts)
    }

    /// Distributes products over sums.
    pub fn monomials(&self) -> Monomials {
        match self {
            IdealExpr::Atom(a) => alloc::vec![alloc::vec![a.clone()]],
            IdealExpr::Sum(parts) => parts.iter().flat_map(|p| p.monomials()).collect(),
            IdealExpr::Product(parts) => {
                let mut acc: Monomials = alloc::vec![Vec::new()];
                for p in parts {
                    let m = p.monomials();
                    let mut next = Vec::new();
                    for a in &acc {
                        for b in &m {
                            let mut c = a.clone();
                            c.extend(b.iter().cloned());
                            next.push(c);
                        }
                    }
                    acc = next;
                }
                acc
            }
            IdealExpr::Power(b, k) => {
                let parts = (0..*k).map(|_| (**b).clone()).collect();
                IdealExpr::Product(parts).monomials()
            }
        }
    }

    /// The image under the anti-automorphism `w -> w^-1`: every product is
    /// read backwards.
    pub fn mirror(&self) -> IdealExpr {
        match self {
            IdealExpr::Atom(a) => IdealExpr::Atom(a.clone()),
            IdealExpr::Sum(parts) => IdealExpr::Sum(parts.iter().map(|p| p.mirror()).collect()),
            IdealExpr::Product(parts) => {
                IdealExpr::Product(parts.iter().rev().map(|p| p.mirror()).collect())
            }
            IdealExpr::Power(b, k) => IdealExpr::Power(Box::new(b.mirror()), *k),
        }
    }

    pub fn from_monomials(ms: &Monomials) -> IdealExpr {
        let terms: Vec<IdealExpr> = ms
            .iter()
            .map(|m| IdealExpr::Product(m.iter().cloned().map(IdealExpr::Atom).collect()))
            .collect();
        IdealExpr::Sum(terms)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Named(n) => write!(f, "{}", n),
            Atom::Whole => write!(f, "f"),
            Atom::Derived(n) => write!(f, "{}'", n),
            Atom::Gamma(k, n) => write!(f, "gamma{}({})", k, n),
        }
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Atom(a) => write!(f, "{}", a),
            IdealExpr::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    match p {
                        IdealExpr::Sum(_) => write!(f, "({})", p)?,
                        _ => write!(f, "{}", p)?,
                    }
                }
                Ok(())
            }
            IdealExpr::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", p)?;
                }
                Ok(())
            }
            IdealExpr::Power(b, k) => match **b {
                IdealExpr::Atom(_) => write!(f, "{}^{}", b, k),
                _ => write!(f, "({})^{}", b, k),
            },
        }
    }
}
