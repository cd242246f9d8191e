use fgring_core::abelfun::FunctorKind;
use fgring_core::idealeng::IdealExpr;
use fgring_core::parse::{ideal_at, WordParser};
use fgring_core::{Error, Result};

use super::ast::*;

const KEYWORDS: &[&str] = &[
    "group", "rank", "names", "subgroup", "closure", "quotient", "declare", "subset", "meet", "task", "in",
    "degree", "radius", "expect", "equals", "over", "using", "auto", "f", "F",
];

/// One source line split on whitespace, keeping byte offsets.
struct Line<'a> {
    no: usize,
    text: &'a str,
    toks: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(no: usize, text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    toks.push((s, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            toks.push((s, &text[s..]));
        }
        Line { no, text, toks }
    }

    fn col(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.text.len() + 1, |t| t.0 + 1)
    }

    fn err<T>(&self, i: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.no, col: self.col(i), msg: msg.into() })
    }

    fn tok(&self, i: usize) -> Option<&'a str> {
        self.toks.get(i).map(|t| t.1)
    }

    fn want(&self, i: usize, kw: &str) -> Result<()> {
        match self.tok(i) {
            Some(t) if t == kw => Ok(()),
            _ => self.err(i, format!("expected `{}`", kw)),
        }
    }

    fn ident(&self, i: usize, what: &str) -> Result<&'a str> {
        match self.tok(i) {
            Some(t) if is_ident(t) => Ok(t),
            _ => self.err(i, format!("expected {}", what)),
        }
    }

    fn int<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T> {
        match self.tok(i).and_then(|t| t.parse().ok()) {
            Some(v) => Ok(v),
            None => self.err(i, format!("expected {}", what)),
        }
    }

    /// Text from token `from` to the end of token `to - 1`, with the
    /// column of its first character.
    fn span(&self, from: usize, to: usize) -> Result<(&'a str, usize)> {
        if from >= to || to > self.toks.len() {
            return self.err(from, "missing operand");
        }
        let (s, _) = self.toks[from];
        let (e, t) = self.toks[to - 1];
        Ok((&self.text[s..e + t.len()], s + 1))
    }

    fn find(&self, from: usize, kw: &str) -> Option<usize> {
        (from..self.toks.len()).find(|&i| self.toks[i].1 == kw)
    }
}

fn is_ident(t: &str) -> bool {
    let mut cs = t.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Moves the column of a parse error raised on a substring starting at `col`.
fn shift(e: Error, col: usize) -> Error {
    match e {
        Error::Parse { line, col: c, msg } => Error::Parse { line, col: c + col - 1, msg },
        other => other,
    }
}

/// Splits at top-level commas, tracking `()`, `[]` and `{}`; returns each
/// piece trimmed with its column.
fn split_commas(text: &str, col: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut push = |s: usize, e: usize| {
        let piece = &text[s..e];
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim().to_string(), col + s + lead));
    };
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i);
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, text.len());
    out
}

struct Parser {
    scenario: Scenario,
}

impl Parser {
    fn names(&self) -> &[String] {
        self.scenario.group.as_ref().map_or(&[], |g| &g.names)
    }

    fn need_group(&self, l: &Line, i: usize) -> Result<()> {
        if self.scenario.group.is_none() {
            return l.err(i, "no group declared yet");
        }
        Ok(())
    }

    fn resolve(&self, token: &str) -> Option<String> {
        let subs = &self.scenario.subgroups;
        if let Some(s) = subs.iter().find(|s| s.name == token) {
            return Some(s.name.clone());
        }
        let mut hits = subs.iter().filter(|s| s.name.eq_ignore_ascii_case(token));
        match (hits.next(), hits.next()) {
            (Some(s), None) => Some(s.name.clone()),
            _ => None,
        }
    }

    fn subgroup_name(&self, l: &Line, i: usize) -> Result<String> {
        let n = l.ident(i, "a subgroup name")?;
        if n == "F" && self.resolve(n).is_none() {
            return Ok(n.into());
        }
        match self.resolve(n) {
            Some(c) if c == n => Ok(c),
            _ => Err(Error::UnresolvedName(n.into())),
        }
    }

    fn word(&self, text: &str, line: usize, col: usize) -> Result<WordText> {
        let p = WordParser::new(self.names());
        let expr = p.word_expr_at(text, line).map_err(|e| shift(e, col))?;
        Ok(WordText { text: text.split_whitespace().collect::<Vec<_>>().join(" "), expr })
    }

    fn word_span(&self, l: &Line, from: usize, to: usize) -> Result<WordText> {
        let (t, c) = l.span(from, to)?;
        self.word(t, l.no, c)
    }

    fn ideal(&self, l: &Line, from: usize, to: usize) -> Result<IdealExpr> {
        let (t, c) = l.span(from, to)?;
        let resolve = |s: &str| self.resolve(s);
        ideal_at(t, l.no, &resolve).map_err(|e| shift(e, c))
    }

    fn line(&mut self, l: &Line) -> Result<()> {
        match l.tok(0) {
            Some("group") => self.group(l),
            Some("subgroup") => self.subgroup(l),
            Some("declare") => self.declare(l),
            Some("task") => self.task(l),
            _ => l.err(0, "expected `group`, `subgroup`, `declare` or `task`"),
        }
    }

    fn group(&mut self, l: &Line) -> Result<()> {
        if self.scenario.group.is_some() {
            return l.err(0, "group already declared");
        }
        let name = l.ident(1, "a group name")?.to_string();
        l.want(2, "rank")?;
        let rank: usize = l.int(3, "a rank")?;
        l.want(4, "names")?;
        let mut names = Vec::new();
        for i in 5..l.toks.len() {
            let n = l.ident(i, "a generator name")?;
            if KEYWORDS.contains(&n) || names.iter().any(|m| m == n) {
                return l.err(i, format!("generator name `{}` is reserved or repeated", n));
            }
            names.push(n.to_string());
        }
        if names.len() != rank {
            return l.err(3, format!("rank {} but {} names", rank, names.len()));
        }
        self.scenario.group = Some(GroupDecl { name, rank, names });
        Ok(())
    }

    fn subgroup(&mut self, l: &Line) -> Result<()> {
        self.need_group(l, 0)?;
        let name = l.ident(1, "a subgroup name")?.to_string();
        if KEYWORDS.contains(&name.as_str()) || self.scenario.subgroups.iter().any(|s| s.name == name) {
            return l.err(1, format!("subgroup name `{}` is reserved or repeated", name));
        }
        if self.names().contains(&name) {
            return l.err(1, format!("`{}` is already a generator name", name));
        }
        l.want(2, "closure")?;
        let q = match l.find(3, "quotient") {
            Some(q) => q,
            None => return l.err(l.toks.len(), "expected `quotient`"),
        };
        let closure = if q == 4 && l.tok(3) == Some("auto") {
            Closure::Auto
        } else {
            let (t, c) = l.span(3, q)?;
            let ws = split_commas(t, c)
                .into_iter()
                .map(|(s, c)| self.word(&s, l.no, c))
                .collect::<Result<Vec<_>>>()?;
            Closure::Words(ws)
        };
        let quotient = self.quotient(l, q + 1)?;
        let gamma = matches!(quotient, QuotSpec::Gamma { .. });
        if gamma != (closure == Closure::Auto) {
            return l.err(3, "`closure auto` goes with a `gamma` quotient and only with it");
        }
        self.scenario.subgroups.push(SubgroupDecl { name, closure, quotient });
        Ok(())
    }

    fn gen_index(&self, l: &Line, name: &str, col: usize) -> Result<()> {
        if self.names().iter().any(|n| n == name) {
            Ok(())
        } else {
            Err(Error::Parse { line: l.no, col, msg: format!("unknown generator `{}`", name) })
        }
    }

    /// Entries `NAME -> VALUE` inside the braces starting at token `from`.
    fn image_entries(&self, l: &Line, from: usize) -> Result<Vec<(String, String, usize)>> {
        let (t, c) = l.span(from, l.toks.len())?;
        let body = match (t.find('{'), t.rfind('}')) {
            (Some(0), Some(e)) if e == t.len() - 1 => &t[1..e],
            _ => return Err(Error::Parse { line: l.no, col: c, msg: "expected `{ ... }`".into() }),
        };
        let mut out: Vec<(String, String, usize)> = Vec::new();
        for (piece, pc) in split_commas(body, c + 1) {
            if piece.is_empty() {
                continue;
            }
            let Some(arrow) = piece.find("->") else {
                return Err(Error::Parse { line: l.no, col: pc, msg: "expected `NAME -> VALUE`".into() });
            };
            let g = piece[..arrow].trim().to_string();
            self.gen_index(l, &g, pc)?;
            if out.iter().any(|(h, _, _)| *h == g) {
                return Err(Error::Parse { line: l.no, col: pc, msg: format!("`{}` mapped twice", g) });
            }
            let value = piece[arrow + 2..].trim().to_string();
            let vcol = pc + arrow + 2 + (piece[arrow + 2..].len() - piece[arrow + 2..].trim_start().len());
            out.push((g, value, vcol));
        }
        Ok(out)
    }

    fn quotient(&self, l: &Line, i: usize) -> Result<QuotSpec> {
        let bad = |col: usize, msg: &str| Error::Parse { line: l.no, col, msg: msg.into() };
        match l.tok(i) {
            Some("trivial") if l.toks.len() == i + 1 => Ok(QuotSpec::Trivial),
            Some("free_hom") => {
                let es = self.image_entries(l, i + 1)?;
                let images =
                    es.into_iter().map(|(g, v, c)| Ok((g, self.word(&v, l.no, c)?))).collect::<Result<_>>()?;
                Ok(QuotSpec::FreeHom(images))
            }
            Some("free_abelian") => {
                l.want(i + 1, "dim")?;
                let dim: usize = l.int(i + 2, "a dimension")?;
                let mut images = Vec::new();
                for (g, v, c) in self.image_entries(l, i + 3)? {
                    let inner = v
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| bad(c, "expected `(a b ...)`"))?;
                    let xs: Vec<i64> = inner
                        .split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse().map_err(|_| bad(c, "expected integers")))
                        .collect::<Result<_>>()?;
                    if xs.len() != dim {
                        return Err(bad(c, &format!("expected {} coordinates", dim)));
                    }
                    images.push((g, xs));
                }
                Ok(QuotSpec::FreeAbelian { dim, images })
            }
            Some("finite_perm") => {
                l.want(i + 1, "degree")?;
                let degree: usize = l.int(i + 2, "a degree")?;
                let mut images = Vec::new();
                for (g, v, c) in self.image_entries(l, i + 3)? {
                    images.push((g, parse_cycles(&v, degree).map_err(|m| bad(c, &m))?));
                }
                Ok(QuotSpec::FinitePerm { degree, images })
            }
            Some("meet") => {
                let mut names = Vec::new();
                for j in i + 1..l.toks.len() {
                    names.push(self.subgroup_name(l, j)?);
                }
                if names.len() < 2 {
                    return l.err(i + 1, "`meet` needs at least two subgroups");
                }
                Ok(QuotSpec::Meet(names))
            }
            Some("gamma") => {
                let weight: usize = l.int(i + 1, "a weight")?;
                if weight < 2 {
                    return l.err(i + 1, "weight must be at least 2");
                }
                let parent = self.subgroup_name(l, i + 2)?;
                if l.toks.len() != i + 3 {
                    return l.err(i + 3, "unexpected trailing input");
                }
                Ok(QuotSpec::Gamma { weight, parent })
            }
            _ => l.err(i, "expected a quotient: trivial, free_hom, free_abelian, finite_perm, meet or gamma"),
        }
    }

    fn declare(&mut self, l: &Line) -> Result<()> {
        self.need_group(l, 0)?;
        let a = self.subgroup_name(l, 1)?;
        let d = match l.tok(2) {
            Some("subset") if l.toks.len() == 4 => Declaration::Subset { sub: a, sup: self.subgroup_name(l, 3)? },
            Some("meet") if l.toks.len() == 5 => {
                Declaration::Meet { name: a, a: self.subgroup_name(l, 3)?, b: self.subgroup_name(l, 4)? }
            }
            _ => return l.err(2, "expected `NAME subset NAME` or `NAME meet NAME NAME`"),
        };
        self.scenario.declarations.push(d);
        Ok(())
    }

    fn task(&mut self, l: &Line) -> Result<()> {
        let kind = l.tok(1).unwrap_or("");
        let (end, expect) = match l.find(2, "expect") {
            Some(x) => (x, Some(parse_expect(l, x + 1)?)),
            None => (l.toks.len(), None),
        };
        let task = match kind {
            "member" => {
                self.need_group(l, 1)?;
                let mut end = end;
                let (mut degree, mut radius) = (None, None);
                while end >= 2 {
                    match l.tok(end - 2) {
                        Some("degree") if degree.is_none() => degree = Some(l.int(end - 1, "a degree")?),
                        Some("radius") if radius.is_none() => radius = Some(l.int(end - 1, "a radius")?),
                        _ => break,
                    }
                    end -= 2;
                }
                let i = l.find(2, "in").filter(|&i| i < end).map_or_else(|| l.err(end, "expected `in`"), Ok)?;
                Task::Member { word: self.word_span(l, 2, i)?, ideal: self.ideal(l, i + 1, end)?, degree, radius }
            }
            "identity" => {
                self.need_group(l, 1)?;
                let m = l.find(2, "meet").map_or_else(|| l.err(end, "expected `meet`"), Ok)?;
                let q = l.find(m, "equals").map_or_else(|| l.err(end, "expected `equals`"), Ok)?;
                let d = l.find(q, "degree").filter(|&d| d + 2 == end);
                let d = d.map_or_else(|| l.err(end, "expected `degree INT` at the end"), Ok)?;
                Task::Identity {
                    a: self.ideal(l, 2, m)?,
                    b: self.ideal(l, m + 1, q)?,
                    rhs: self.ideal(l, q + 1, d)?,
                    degree: l.int(d + 1, "a degree")?,
                }
            }
            "functor" => {
                let k = l.tok(2).unwrap_or("");
                let kind = FunctorKind::parse(k).or_else(|_| l.err(2, format!("unknown functor `{}`", k)))?;
                Task::Functor { kind, group: parse_group(l, 3, end)? }
            }
            "homology" => {
                let d = l.find(2, "degree").filter(|&d| d + 2 == end);
                let d = d.map_or_else(|| l.err(end, "expected `degree INT` at the end"), Ok)?;
                Task::Homology { group: parse_group(l, 2, d)?, degree: l.int(d + 1, "a degree")? }
            }
            "cocycle" => {
                self.need_group(l, 1)?;
                let head = Line { no: l.no, text: l.text, toks: l.toks[..end].to_vec() };
                let quotient = self.quotient(&head, 2)?;
                if !matches!(quotient, QuotSpec::FinitePerm { .. }) {
                    return l.err(2, "cocycle tasks need a finite_perm quotient");
                }
                Task::Cocycle { quotient }
            }
            "suite" => {
                if end != 3 {
                    return l.err(3, "expected `suite NAME`");
                }
                Task::Suite { name: l.ident(2, "a suite name")?.into() }
            }
            "square" => {
                self.need_group(l, 1)?;
                let o = l.find(2, "over").filter(|&o| o + 4 == end);
                let o = o.map_or_else(|| l.err(end, "expected `over R S T` at the end"), Ok)?;
                Task::Square {
                    word: self.word_span(l, 2, o)?,
                    r: self.subgroup_name(l, o + 1)?,
                    s: self.subgroup_name(l, o + 2)?,
                    t: self.subgroup_name(l, o + 3)?,
                }
            }
            "product" => {
                self.need_group(l, 1)?;
                let u = l.find(2, "using").map_or_else(|| l.err(end, "expected `using`"), Ok)?;
                if u + 6 != end || l.tok(u + 3) != Some("over") {
                    return l.err(u, "expected `using D E over R S` at the end");
                }
                let w = |i: usize| self.word_span(l, i, i + 1);
                let tuples = match l.tok(2) {
                    Some("none") if u == 3 => Tuples::None,
                    Some("hall_witt") if u == 6 => Tuples::HallWitt(w(3)?, w(4)?, w(5)?),
                    Some("pairs") if u > 3 && (u - 3) % 2 == 0 => {
                        Tuples::Pairs((3..u).step_by(2).map(|i| Ok((w(i)?, w(i + 1)?))).collect::<Result<_>>()?)
                    }
                    _ => return l.err(2, "expected `none`, `hall_witt A B C` or `pairs R T ...`"),
                };
                Task::Product {
                    tuples,
                    d: w(u + 1)?,
                    e: w(u + 2)?,
                    r: self.subgroup_name(l, u + 4)?,
                    s: self.subgroup_name(l, u + 5)?,
                }
            }
            _ => return l.err(1, "unknown task kind"),
        };
        check_expect(l, &task, expect.as_ref())?;
        self.scenario.tasks.push(TaskDecl { task, expect });
        Ok(())
    }
}

fn check_expect(l: &Line, task: &Task, e: Option<&Expect>) -> Result<()> {
    let ok = match (task, e) {
        (_, None) => true,
        (Task::Member { .. } | Task::Square { .. } | Task::Product { .. }, Some(Expect::Member | Expect::NonMember)) => {
            true
        }
        (Task::Functor { .. } | Task::Homology { .. }, Some(Expect::Group(_))) => true,
        (Task::Cocycle { .. } | Task::Suite { .. }, Some(Expect::Pass)) => true,
        (Task::Identity { .. }, Some(Expect::Equal)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let at = l.find(2, "expect").unwrap_or(0) + 1;
        l.err(at, format!("this expectation does not apply to a {} task", task.kind()))
    }
}

fn parse_expect(l: &Line, i: usize) -> Result<Expect> {
    match l.tok(i) {
        Some("member") if l.toks.len() == i + 1 => Ok(Expect::Member),
        Some("nonmember") if l.toks.len() == i + 1 => Ok(Expect::NonMember),
        Some("pass") if l.toks.len() == i + 1 => Ok(Expect::Pass),
        Some("equal") if l.toks.len() == i + 1 => Ok(Expect::Equal),
        Some(_) => Ok(Expect::Group(parse_group(l, i, l.toks.len())?)),
        None => l.err(i, "expected a value after `expect`"),
    }
}

fn parse_group(l: &Line, from: usize, to: usize) -> Result<GroupSpec> {
    let (text, col) = l.span(from, to)?;
    let bad = |msg: &str| Error::Parse { line: l.no, col, msg: msg.into() };
    if l.tok(from) == Some("rank") {
        let rank: usize = l.int(from + 1, "a rank")?;
        let (off, tok) = l.toks[from + 1];
        let rest = text[off + tok.len() - (col - 1)..].trim_start();
        let rest = match rest.strip_prefix("relations") {
            Some(r) => r,
            None if rest.is_empty() => "",
            None => return Err(bad("expected `relations`")),
        };
        let mut rows = Vec::new();
        let mut s = rest.trim();
        while !s.is_empty() {
            let close = s.find(')').filter(|_| s.starts_with('(')).ok_or_else(|| bad("expected `(a b ...)`"))?;
            let row: Vec<i64> = s[1..close]
                .split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| bad("expected integers")))
                .collect::<Result<_>>()?;
            if row.len() != rank {
                return Err(bad(&format!("relation rows need {} entries", rank)));
            }
            rows.push(row);
            s = s[close + 1..].trim_start();
        }
        return Ok(GroupSpec::Relations { rank, rows });
    }
    if text.trim() == "0" {
        return Ok(GroupSpec::Terms(Vec::new()));
    }
    let mut terms = Vec::new();
    for part in text.split('+') {
        let p: String = part.split_whitespace().collect();
        let t = if p == "Z" {
            GroupTerm::Free(1)
        } else if let Some(k) = p.strip_prefix("Z^") {
            GroupTerm::Free(k.parse().map_err(|_| bad("expected Z^k"))?)
        } else if let Some(n) = p.strip_prefix("Z/") {
            let n: i64 = n.parse().map_err(|_| bad("expected Z/n"))?;
            if n < 1 {
                return Err(bad("cyclic orders must be positive"));
            }
            GroupTerm::Cyclic(n)
        } else {
            return Err(bad("expected a sum of Z, Z^k and Z/n terms"));
        };
        terms.push(t);
    }
    Ok(GroupSpec::Terms(terms))
}

/// Cycle notation with points `1..=degree`; `()` is the identity.
fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Vec<Vec<u32>>, String> {
    let mut out = Vec::new();
    let mut s = text.trim();
    while !s.is_empty() {
        if !s.starts_with('(') {
            return Err("expected a cycle `(a b ...)`".into());
        }
        let close = s.find(')').ok_or("unclosed cycle")?;
        let pts: Vec<u32> = s[1..close]
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u32>().map_err(|_| format!("bad point `{}`", x)))
            .collect::<std::result::Result<_, _>>()?;
        if let Some(p) = pts.iter().find(|&&p| p == 0 || p as usize > degree) {
            return Err(format!("point {} outside 1..={}", p, degree));
        }
        if !pts.is_empty() {
            out.push(pts);
        }
        s = s[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses scenario text. Comments start with `#`; blank lines are ignored.
pub fn parse_syntax(text: &str) -> Result<Scenario> {
    let mut p = Parser { scenario: Scenario::default() };
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let l = Line::new(i + 1, body);
        if l.toks.is_empty() {
            continue;
        }
        p.line(&l)?;
    }
    Ok(p.scenario)
}
