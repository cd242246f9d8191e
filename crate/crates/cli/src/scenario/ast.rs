use std::fmt;

use fgring_core::abelfun::{FgAbGroup, FunctorKind};
use fgring_core::idealeng::IdealExpr;
use fgring_core::intlat::vector;
use fgring_core::words::WordExpr;
use fgring_core::Result;

/// A word as written in the file, with its parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordText {
    pub text: String,
    pub expr: WordExpr,
}

impl fmt::Display for WordText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecl {
    pub name: String,
    pub rank: usize,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Words(Vec<WordText>),
    /// Generators computed from the quotient (lower central terms only).
    Auto,
}

/// How a subgroup is presented as a kernel. Generators left out of an
/// image list map to themselves, to zero, or to the identity permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotSpec {
    Trivial,
    FreeHom(Vec<(String, WordText)>),
    FreeAbelian { dim: usize, images: Vec<(String, Vec<i64>)> },
    /// Points are numbered from 1.
    FinitePerm { degree: usize, images: Vec<(String, Vec<Vec<u32>>)> },
    Meet(Vec<String>),
    Gamma { weight: usize, parent: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDecl {
    pub name: String,
    pub closure: Closure,
    pub quotient: QuotSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Subset { sub: String, sup: String },
    Meet { name: String, a: String, b: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTerm {
    Cyclic(i64),
    Free(usize),
}

/// A finitely generated abelian group, by invariant factors or by a
/// relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Terms(Vec<GroupTerm>),
    Relations { rank: usize, rows: Vec<Vec<i64>> },
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<FgAbGroup> {
        match self {
            GroupSpec::Terms(ts) => {
                let mut raw = Vec::new();
                for t in ts {
                    match *t {
                        GroupTerm::Cyclic(n) => raw.push(n),
                        GroupTerm::Free(k) => raw.extend(std::iter::repeat(0).take(k)),
                    }
                }
                Ok(FgAbGroup::from_factors(&raw))
            }
            GroupSpec::Relations { rank, rows } => {
                FgAbGroup::from_presentation(*rank, rows.iter().map(|r| vector(r)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tuples {
    None,
    HallWitt(WordText, WordText, WordText),
    Pairs(Vec<(WordText, WordText)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Member { word: WordText, ideal: IdealExpr, degree: Option<usize>, radius: Option<usize> },
    Identity { a: IdealExpr, b: IdealExpr, rhs: IdealExpr, degree: usize },
    Functor { kind: FunctorKind, group: GroupSpec },
    Homology { group: GroupSpec, degree: usize },
    Cocycle { quotient: QuotSpec },
    Suite { name: String },
    Square { word: WordText, r: String, s: String, t: String },
    Product { tuples: Tuples, d: WordText, e: WordText, r: String, s: String },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Member { .. } => "member",
            Task::Identity { .. } => "identity",
            Task::Functor { .. } => "functor",
            Task::Homology { .. } => "homology",
            Task::Cocycle { .. } => "cocycle",
            Task::Suite { .. } => "suite",
            Task::Square { .. } => "square",
            Task::Product { .. } => "product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Member,
    NonMember,
    Pass,
    Equal,
    Group(GroupSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub task: Task,
    pub expect: Option<Expect>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    pub group: Option<GroupDecl>,
    pub subgroups: Vec<SubgroupDecl>,
    pub declarations: Vec<Declaration>,
    pub tasks: Vec<TaskDecl>,
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn ints<T: fmt::Display>(xs: &[T]) -> String {
    format!("({})", join(xs, " "))
}

impl fmt::Display for QuotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotSpec::Trivial => f.write_str("trivial"),
            QuotSpec::FreeHom(images) => {
                let es: Vec<String> = images.iter().map(|(g, w)| format!("{} -> {}", g, w)).collect();
                write!(f, "free_hom {{ {} }}", es.join(", "))
            }
            QuotSpec::FreeAbelian { dim, images } => {
                let es: Vec<String> = images.iter().map(|(g, v)| format!("{} -> {}", g, ints(v))).collect();
                write!(f, "free_abelian dim {} {{ {} }}", dim, es.join(", "))
            }
            QuotSpec::FinitePerm { degree, images } => {
                let es: Vec<String> = images
                    .iter()
                    .map(|(g, cs)| {
                        let body: String = if cs.is_empty() { "()".into() } else { cs.iter().map(|c| ints(c)).collect() };
                        format!("{} -> {}", g, body)
                    })
                    .collect();
                write!(f, "finite_perm degree {} {{ {} }}", degree, es.join(", "))
            }
            QuotSpec::Meet(names) => write!(f, "meet {}", names.join(" ")),
            QuotSpec::Gamma { weight, parent } => write!(f, "gamma {} {}", weight, parent),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Terms(ts) if ts.is_empty() => f.write_str("0"),
            GroupSpec::Terms(ts) => {
                let parts: Vec<String> = ts
                    .iter()
                    .map(|t| match *t {
                        GroupTerm::Cyclic(n) => format!("Z/{}", n),
                        GroupTerm::Free(1) => "Z".into(),
                        GroupTerm::Free(k) => format!("Z^{}", k),
                    })
                    .collect();
                f.write_str(&parts.join(" + "))
            }
            GroupSpec::Relations { rank, rows } => {
                write!(f, "rank {} relations", rank)?;
                for r in rows {
                    write!(f, " {}", ints(r))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Member => f.write_str("member"),
            Expect::NonMember => f.write_str("nonmember"),
            Expect::Pass => f.write_str("pass"),
            Expect::Equal => f.write_str("equal"),
            Expect::Group(g) => write!(f, "{}", g),
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Member { word, ideal, degree, radius } => {
                write!(f, "member {} in {}", word, ideal)?;
                if let Some(d) = degree {
                    write!(f, " degree {}", d)?;
                }
                if let Some(r) = radius {
                    write!(f, " radius {}", r)?;
                }
                Ok(())
            }
            Task::Identity { a, b, rhs, degree } => {
                write!(f, "identity {} meet {} equals {} degree {}", a, b, rhs, degree)
            }
            Task::Functor { kind, group } => write!(f, "functor {} {}", kind, group),
            Task::Homology { group, degree } => write!(f, "homology {} degree {}", group, degree),
            Task::Cocycle { quotient } => write!(f, "cocycle {}", quotient),
            Task::Suite { name } => write!(f, "suite {}", name),
            Task::Square { word, r, s, t } => write!(f, "square {} over {} {} {}", word, r, s, t),
            Task::Product { tuples, d, e, r, s } => {
                f.write_str("product ")?;
                match tuples {
                    Tuples::None => f.write_str("none")?,
                    Tuples::HallWitt(a, b, c) => write!(f, "hall_witt {} {} {}", a, b, c)?,
                    Tuples::Pairs(ps) => {
                        f.write_str("pairs")?;
                        for (r, t) in ps {
                            write!(f, " {} {}", r, t)?;
                        }
                    }
                }
                write!(f, " using {} {} over {} {}", d, e, r, s)
            }
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = &self.group {
            writeln!(f, "group {} rank {} names {}", g.name, g.rank, g.names.join(" "))?;
        }
        for s in &self.subgroups {
            let closure = match &s.closure {
                Closure::Auto => "auto".to_string(),
                Closure::Words(ws) => join(ws, ", "),
            };
            writeln!(f, "subgroup {} closure {} quotient {}", s.name, closure, s.quotient)?;
        }
        for d in &self.declarations {
            match d {
                Declaration::Subset { sub, sup } => writeln!(f, "declare {} subset {}", sub, sup)?,
                Declaration::Meet { name, a, b } => writeln!(f, "declare {} meet {} {}", name, a, b)?,
            }
        }
        for t in &self.tasks {
            write!(f, "task {}", t.task)?;
            if let Some(e) = &t.expect {
                write!(f, " expect {}", e)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
