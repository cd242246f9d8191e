//! Text syntax for words, ring elements and ideal expressions.
//!
//! ```text
//! word  := factor ("*" factor)*
//! factor:= base ("^" INT)*
//! base  := NAME | "1" | "[" word "," word "]" | "(" word ")"
//! ring  := ["-"] rterm (("+" | "-") rterm)*
//! rterm := INT "*" word | INT | word
//! ideal := iterm ("+" iterm)*
//! iterm := iatom+
//! iatom := (NAME | NAME "'" | "gamma" INT "(" NAME ")" | "(" ideal ")") ("^" INT)*
//! ```
//!
//! Ideal names are resolved through a caller-supplied lookup; an identifier
//! that does not resolve is split into single letters, so `rfr` reads as
//! `r f r`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grring::RingElement;
use crate::idealeng::{Atom, IdealExpr};
use crate::num::Int;
use crate::words::{Letter, Word, WordExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Lexer {
    fn new(text: &str, line: usize) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| Error::Parse {
                    line,
                    col: start + 1,
                    msg: "integer literal too large".into(),
                })?;
                toks.push((Tok::Int(v), start + 1));
            } else if "*^[](),+-'".contains(c) {
                toks.push((Tok::Sym(c), i + 1));
                i += 1;
            } else {
                return Err(Error::Parse { line, col: i + 1, msg: alloc::format!("unexpected character '{}'", c) });
            }
        }
        Ok(Lexer { toks, pos: 0, line, end_col: chars.len() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&alloc::format!("expected '{}'", c))
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.next() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => {
                self.pos -= 1;
                self.err("expected an integer exponent")
            }
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parser for words over a fixed list of generator names.
pub struct WordParser<'a, S: AsRef<str>> {
    names: &'a [S],
}

impl<'a, S: AsRef<str>> WordParser<'a, S> {
    pub fn new(names: &'a [S]) -> Self {
        WordParser { names }
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Ok(self.word_expr(text)?.eval())
    }

    pub fn word_expr(&self, text: &str) -> Result<WordExpr> {
        self.word_expr_at(text, 1)
    }

    pub fn word_expr_at(&self, text: &str, line: usize) -> Result<WordExpr> {
        let mut lx = Lexer::new(text, line)?;
        let e = self.p_word(&mut lx)?;
        lx.done()?;
        Ok(e.normalize())
    }

    pub fn ring(&self, text: &str) -> Result<RingElement> {
        self.ring_at(text, 1)
    }

    pub fn ring_at(&self, text: &str, line: usize) -> Result<RingElement> {
        let mut lx = Lexer::new(text, line)?;
        let mut acc = RingElement::zero();
        let mut sign = if lx.eat('-') { -1 } else { 1 };
        loop {
            let (c, w) = self.p_rterm(&mut lx)?;
            acc.add_term(w, &Int::from(c * sign));
            if lx.eat('+') {
                sign = 1;
            } else if lx.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        lx.done()?;
        Ok(acc)
    }

    fn p_rterm(&self, lx: &mut Lexer) -> Result<(i64, Word)> {
        if let Some(Tok::Int(v)) = lx.peek().cloned() {
            let next = lx.peek_at(1).cloned();
            if next == Some(Tok::Sym('*')) {
                lx.pos += 2;
                return Ok((v, self.p_word(lx)?.eval()));
            }
            if next != Some(Tok::Sym('^')) {
                lx.pos += 1;
                return Ok((v, Word::identity()));
            }
        }
        Ok((1, self.p_word(lx)?.eval()))
    }

    fn p_word(&self, lx: &mut Lexer) -> Result<WordExpr> {
        let mut fs = alloc::vec![self.p_factor(lx)?];
        while lx.eat('*') {
            fs.push(self.p_factor(lx)?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { WordExpr::Mul(fs) })
    }

    fn p_factor(&self, lx: &mut Lexer) -> Result<WordExpr> {
        let mut b = self.p_base(lx)?;
        while lx.eat('^') {
            let e = lx.signed_int()?;
            b = match b {
                WordExpr::Lit(w) if w.len() == 1 => WordExpr::Lit(w.pow(e)),
                other => WordExpr::pow(other, e),
            };
        }
        Ok(b)
    }

    fn p_base(&self, lx: &mut Lexer) -> Result<WordExpr> {
        match lx.peek().cloned() {
            Some(Tok::Ident(n)) => {
                let g = match self.names.iter().position(|s| s.as_ref() == n) {
                    Some(g) => g,
                    None => return Err(Error::UnresolvedName(n)),
                };
                lx.pos += 1;
                Ok(WordExpr::Lit(Word::letter(Letter::new(g as u32, false))))
            }
            Some(Tok::Int(1)) => {
                lx.pos += 1;
                Ok(WordExpr::Lit(Word::identity()))
            }
            Some(Tok::Sym('[')) => {
                lx.pos += 1;
                let a = self.p_word(lx)?;
                lx.expect(',')?;
                let b = self.p_word(lx)?;
                lx.expect(']')?;
                Ok(WordExpr::comm(a, b))
            }
            Some(Tok::Sym('(')) => {
                lx.pos += 1;
                let a = self.p_word(lx)?;
                lx.expect(')')?;
                Ok(a)
            }
            _ => lx.err("expected a word"),
        }
    }
}

/// Parses an ideal expression. `resolve` maps a token to a canonical
/// subgroup name, or `None` if it names nothing.
pub fn ideal<F: Fn(&str) -> Option<String>>(text: &str, resolve: F) -> Result<IdealExpr> {
    ideal_at(text, 1, &resolve)
}

pub fn ideal_at<F: Fn(&str) -> Option<String>>(text: &str, line: usize, resolve: &F) -> Result<IdealExpr> {
    let mut lx = Lexer::new(text, line)?;
    let e = p_ideal(&mut lx, resolve)?;
    lx.done()?;
    Ok(e)
}

fn p_ideal<F: Fn(&str) -> Option<String>>(lx: &mut Lexer, resolve: &F) -> Result<IdealExpr> {
    let mut terms = alloc::vec![p_iterm(lx, resolve)?];
    while lx.eat('+') {
        terms.push(p_iterm(lx, resolve)?);
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { IdealExpr::Sum(terms) })
}

fn starts_atom(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
}

fn p_iterm<F: Fn(&str) -> Option<String>>(lx: &mut Lexer, resolve: &F) -> Result<IdealExpr> {
    if !starts_atom(lx.peek()) {
        return lx.err("expected an ideal atom");
    }
    let mut parts = Vec::new();
    while starts_atom(lx.peek()) {
        parts.extend(p_iatoms(lx, resolve)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { IdealExpr::Product(parts) })
}

fn whole_name(n: &str) -> bool {
    n == "f" || n == "F"
}

fn resolve_atom<F: Fn(&str) -> Option<String>>(n: &str, resolve: &F) -> Option<Atom> {
    if let Some(c) = resolve(n) {
        return Some(Atom::Named(c));
    }
    if whole_name(n) {
        return Some(Atom::Whole);
    }
    None
}

/// One syntactic atom, which may expand to several when an identifier is
/// split into letters.
fn p_iatoms<F: Fn(&str) -> Option<String>>(lx: &mut Lexer, resolve: &F) -> Result<Vec<IdealExpr>> {
    let col = lx.col();
    let mut atoms: Vec<IdealExpr> = match lx.next() {
        Some(Tok::Sym('(')) => {
            let e = p_ideal(lx, resolve)?;
            lx.expect(')')?;
            alloc::vec![e]
        }
        Some(Tok::Ident(n)) => {
            let gamma = n.strip_prefix("gamma").and_then(|k| k.parse::<usize>().ok());
            if let (Some(k), Some(Tok::Sym('('))) = (gamma, lx.peek()) {
                lx.pos += 1;
                let inner = match lx.next() {
                    Some(Tok::Ident(m)) => m,
                    _ => {
                        lx.pos -= 1;
                        return lx.err("expected a subgroup name");
                    }
                };
                lx.expect(')')?;
                let canon = resolve(&inner).ok_or(Error::UnresolvedName(inner))?;
                if k < 1 {
                    return Err(Error::Parse { line: lx.line, col, msg: "gamma index must be positive".into() });
                }
                alloc::vec![IdealExpr::Atom(match k {
                    1 => Atom::Named(canon),
                    2 => Atom::Derived(canon),
                    _ => Atom::Gamma(k, canon),
                })]
            } else if let Some(a) = resolve_atom(&n, resolve) {
                alloc::vec![IdealExpr::Atom(a)]
            } else {
                let mut v = Vec::new();
                for ch in n.chars() {
                    let s = ch.to_string();
                    match resolve_atom(&s, resolve) {
                        Some(a) => v.push(IdealExpr::Atom(a)),
                        None => return Err(Error::UnresolvedName(n)),
                    }
                }
                v
            }
        }
        _ => {
            lx.pos -= 1;
            return lx.err("expected an ideal atom");
        }
    };
    if lx.eat('\'') {
        match atoms.pop() {
            Some(IdealExpr::Atom(Atom::Named(c))) => atoms.push(IdealExpr::Atom(Atom::Derived(c))),
            _ => return Err(Error::Parse { line: lx.line, col, msg: "derived marker needs a subgroup name".into() }),
        }
    }
    while lx.eat('^') {
        let k = lx.signed_int()?;
        if k < 1 {
            return lx.err("ideal powers must be positive");
        }
        let last = atoms.pop().expect("nonempty atom list");
        atoms.push(IdealExpr::Power(Box::new(last), k as u32));
    }
    Ok(atoms)
}
