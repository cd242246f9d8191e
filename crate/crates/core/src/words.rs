//! Reduced words in a free group.
//!
//! Letters carry unit exponents. Words are kept freely reduced at all times and
//! ordered graded-lexicographically (length first, then letters with
//! `x_i < x_i^-1 < x_{i+1}`), which is the tie-breaking order used everywhere
//! determinism matters.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u32, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn key(self) -> (u32, bool) {
        (self.gen, self.inv)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: u32) -> Self {
        Word(alloc::vec![Letter::new(i, false)])
    }

    pub fn letter(l: Letter) -> Self {
        Word(alloc::vec![l])
    }

    /// Freely reduces an arbitrary letter sequence, checking generator indices
    /// against the ambient rank.
    pub fn reduce(raw: &[Letter], rank: usize) -> Result<Self> {
        for l in raw {
            if l.gen as usize >= rank {
                return Err(Error::GeneratorOutOfRange { gen: l.gen, rank });
            }
        }
        Ok(Self::from_letters(raw.iter().copied()))
    }

    /// Reduction without a rank check.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Signed exponent encoding: `+k` is `x_{k-1}`, `-k` its inverse.
    pub fn from_signed(raw: &[i32]) -> Self {
        Self::from_letters(raw.iter().map(|&s| {
            assert!(s != 0, "zero is not a letter");
            Letter::new(s.unsigned_abs() - 1, s < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let a = &self.0;
        let b = &other.0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut v = Vec::with_capacity(a.len() + b.len() - 2 * k);
        v.extend_from_slice(&a[..a.len() - k]);
        v.extend_from_slice(&b[k..]);
        Word(v)
    }

    pub fn mul_letter(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        if v.last() == Some(&l.inverse()) {
            v.pop();
        } else {
            v.push(l);
        }
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `b^-1 a b`.
    pub fn conj(&self, b: &Word) -> Word {
        b.inverse().mul(self).mul(b)
    }

    /// Exponent sum of each generator, for abelianized bookkeeping.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; rank];
        for l in &self.0 {
            v[l.gen as usize] += if l.inv { -1 } else { 1 };
        }
        v
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

/// `[a,b] = a^-1 b^-1 a b`.
pub fn commutator(a: &Word, b: &Word) -> Word {
    a.inverse().mul(&b.inverse()).mul(a).mul(b)
}

/// Left-normed commutator `[w1, w2, ..., wk] = [[w1, w2], ..., wk]`.
pub fn left_normed(ws: &[Word]) -> Word {
    let mut it = ws.iter();
    let mut acc = match it.next() {
        Some(w) => w.clone(),
        None => return Word::identity(),
    };
    for w in it {
        acc = commutator(&acc, w);
    }
    acc
}

/// All distinct reduced products of at most `radius` factors drawn from
/// `generators` and their inverses, sorted in graded-lex order.
pub fn ball(generators: &[Word], radius: usize, cap: usize) -> Result<Vec<Word>> {
    let mut steps: BTreeSet<Word> = BTreeSet::new();
    for g in generators {
        steps.insert(g.clone());
        steps.insert(g.inverse());
    }
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::identity());
    let mut frontier = alloc::vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &steps {
                let p = w.mul(s);
                if seen.insert(p.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "ball size", cap });
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Free generators `x_0..x_{rank-1}` as words.
pub fn free_generators(rank: usize) -> Vec<Word> {
    (0..rank as u32).map(Word::gen).collect()
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let ls = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let g = ls[i].gen as usize;
            match self.names.get(g) {
                Some(n) => write!(f, "{}", n.as_ref())?,
                None => write!(f, "x{}", g + 1)?,
            }
            let e = (j - i) as i64 * if ls[i].inv { -1 } else { 1 };
            if e != 1 {
                write!(f, "^{}", e)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [String; 0] = [];
        write!(f, "{}", self.display(&names))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

/// A word together with the way it was written down. The membership engine
/// expands `h - 1` along this structure, so commutators and conjugates typed
/// by the user become certificate shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Lit(Word),
    Mul(Vec<WordExpr>),
    Pow(Box<WordExpr>, i64),
    Comm(Box<WordExpr>, Box<WordExpr>),
    /// `u^-1 * inner * u`.
    Conj(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn lit(w: Word) -> Self {
        WordExpr::Lit(w)
    }

    pub fn comm(a: WordExpr, b: WordExpr) -> Self {
        WordExpr::Comm(Box::new(a), Box::new(b))
    }

    pub fn conj(inner: WordExpr, by: WordExpr) -> Self {
        WordExpr::Conj(Box::new(inner), Box::new(by))
    }

    pub fn pow(base: WordExpr, e: i64) -> Self {
        WordExpr::Pow(Box::new(base), e)
    }

    pub fn eval(&self) -> Word {
        match self {
            WordExpr::Lit(w) => w.clone(),
            WordExpr::Mul(fs) => fs.iter().fold(Word::identity(), |acc, f| acc.mul(&f.eval())),
            WordExpr::Pow(b, e) => b.eval().pow(*e),
            WordExpr::Comm(a, b) => commutator(&a.eval(), &b.eval()),
            WordExpr::Conj(a, u) => a.eval().conj(&u.eval()),
        }
    }

    /// Rewrites products of the shape `u^-1 * X * u` into explicit conjugates
    /// and flattens nested products.
    pub fn normalize(self) -> WordExpr {
        match self {
            WordExpr::Mul(fs) => {
                let mut flat = Vec::new();
                for f in fs {
                    match f.normalize() {
                        WordExpr::Mul(inner) => flat.extend(inner),
                        WordExpr::Lit(w) if w.is_identity() => {}
                        other => flat.push(other),
                    }
                }
                if flat.len() >= 3 {
                    let first = flat[0].eval();
                    let last = flat[flat.len() - 1].eval();
                    if !last.is_identity() && first == last.inverse() {
                        let by = flat.pop().unwrap();
                        flat.remove(0);
                        let inner = if flat.len() == 1 { flat.pop().unwrap() } else { WordExpr::Mul(flat) };
                        return WordExpr::conj(inner, by);
                    }
                }
                match flat.len() {
                    0 => WordExpr::Lit(Word::identity()),
                    1 => flat.pop().unwrap(),
                    _ => WordExpr::Mul(flat),
                }
            }
            WordExpr::Pow(b, e) => WordExpr::pow(b.normalize(), e),
            WordExpr::Comm(a, b) => WordExpr::comm(a.normalize(), b.normalize()),
            WordExpr::Conj(a, u) => WordExpr::conj(a.normalize(), u.normalize()),
            lit => lit,
        }
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordExprDisplay<'a, S> {
        WordExprDisplay { e: self, names }
    }
}

pub struct WordExprDisplay<'a, S> {
    e: &'a WordExpr,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordExprDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.names;
        match self.e {
            WordExpr::Lit(w) if w.len() <= 1 => write!(f, "{}", w.display(n)),
            WordExpr::Lit(w) => write!(f, "({})", w.display(n)),
            WordExpr::Mul(fs) => {
                write!(f, "(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", x.display(n))?;
                }
                write!(f, ")")
            }
            WordExpr::Pow(b, e) => write!(f, "{}^{}", b.display(n), e),
            WordExpr::Comm(a, b) => write!(f, "[{},{}]", a.display(n), b.display(n)),
            WordExpr::Conj(a, u) => {
                write!(f, "({}^-1*{}*{})", u.display(n), a.display(n), u.display(n))
            }
        }
    }
}
