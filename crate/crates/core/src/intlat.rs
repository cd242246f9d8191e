//! Exact integer linear algebra: Hermite and Smith normal forms, lattice
//! membership, sums, intersections and quotient invariants.
//!
//! Lattices are row lattices in `Z^n`. The ambient dimension is always stored
//! explicitly so the zero lattice is unambiguous.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::num::Int;

pub type Vector = Vec<Int>;

pub fn vector(v: &[i64]) -> Vector {
    v.iter().map(|&c| Int::from(c)).collect()
}

pub fn matrix(rows: &[&[i64]]) -> Vec<Vector> {
    rows.iter().map(|r| vector(r)).collect()
}

fn first_nonzero(v: &[Int], from: usize) -> Option<usize> {
    (from..v.len()).find(|&i| !v[i].is_zero())
}

/// `a := a - q*b`, starting at column `from`.
fn axpy(a: &mut [Int], q: &Int, b: &[Int], from: usize) {
    for i in from..a.len() {
        if !b[i].is_zero() {
            let t = q * &b[i];
            a[i] -= &t;
        }
    }
}

/// Incremental row echelon form keyed by pivot column. Row operations are
/// unimodular, so the row lattice is preserved exactly.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns the remainder, which is
    /// zero iff `v` lies in the row lattice.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        let mut c = 0;
        while let Some(col) = first_nonzero(&v, c) {
            match self.rows.get(&col) {
                Some(row) if row[col].divides(&v[col]) => {
                    let q = v[col].div_exact(&row[col]);
                    axpy(&mut v, &q, row, col);
                    c = col + 1;
                }
                _ => return v,
            }
        }
        v
    }

    /// Inserts `v`; returns true if the lattice grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut c = 0;
        while let Some(col) = first_nonzero(&v, c) {
            let row = match self.rows.get_mut(&col) {
                None => {
                    if v[col].is_negative() {
                        for e in v.iter_mut() {
                            *e = -core::mem::take(e);
                        }
                    }
                    self.rows.insert(col, v);
                    return true;
                }
                Some(r) => r,
            };
            if row[col].divides(&v[col]) {
                let q = v[col].div_exact(&row[col]);
                axpy(&mut v, &q, row, col);
            } else {
                // Unimodular 2x2 step replacing the pivot by gcd(row[col], v[col]).
                let (g, s, t) = row[col].ext_gcd(&v[col]);
                let a = row[col].div_exact(&g);
                let b = v[col].div_exact(&g);
                let mut new_row: Vector = Vec::with_capacity(self.dim);
                let mut rest: Vector = Vec::with_capacity(self.dim);
                for i in 0..self.dim {
                    new_row.push(&(&s * &row[i]) + &(&t * &v[i]));
                    rest.push(&(&a * &v[i]) - &(&b * &row[i]));
                }
                *row = new_row;
                v = rest;
            }
            c = col + 1;
        }
        false
    }

    /// Canonical Hermite normal form: positive pivots, entries above each
    /// pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> Vec<Vector> {
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: Vec<Vector> = self.rows.values().cloned().collect();
        // Left to right: reducing against pivot k only touches columns at or
        // after its pivot column, so earlier reductions stay intact.
        for k in 0..rows.len() {
            let c = cols[k];
            let (upper, lower) = rows.split_at_mut(k);
            let piv = &lower[0];
            for r in upper.iter_mut() {
                if !r[c].is_zero() {
                    let q = r[c].div_floor(&piv[c]);
                    if !q.is_zero() {
                        axpy(r, &q, piv, c);
                    }
                }
            }
        }
        rows
    }
}

/// Row-style Hermite normal form with zero rows dropped.
pub fn hnf(m: &[Vector]) -> Vec<Vector> {
    let dim = m.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(dim);
    for r in m {
        e.insert(r.clone());
    }
    e.hnf()
}

/// Invariant factors `d_1 | d_2 | ...` of the nonzero part of the Smith form.
pub fn snf(m: &[Vector]) -> Vec<Int> {
    let mut a: Vec<Vector> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Minimal nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = match best {
            None => break,
            Some(p) => p,
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    axpy(&mut rest[0], &q, &top[t], t);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for r in a.iter_mut().skip(t) {
                        let v = &q * &r[t];
                        r[j] -= &v;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // Divisibility: fold a row with a non-divisible entry into row t.
                let mut bad = None;
                'scan: for i in t + 1..nrows {
                    for j in t + 1..ncols {
                        if !a[t][t].divides(&a[i][j]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        let (top, rest) = a.split_at_mut(i);
                        for j in t..ncols {
                            top[t][j] += &rest[0][j];
                        }
                    }
                }
            }
            // Move the smallest entry of row/column t into the pivot position.
            let mut best = (t, t);
            for i in t..nrows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    normalize_chain(diag)
}

/// Turns a list of nonzero diagonal entries into a divisibility chain.
fn normalize_chain(mut d: Vec<Int>) -> Vec<Int> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Smith invariant factors of a sparse matrix given as rows of
/// `(column, value)` pairs. Unit pivots are eliminated sparsely first; the
/// remaining block is handed to the dense algorithm.
pub fn snf_sparse(rows: Vec<Vec<(usize, Int)>>, ncols: usize) -> Vec<Int> {
    let mut rows: Vec<BTreeMap<usize, Int>> = rows
        .into_iter()
        .map(|r| {
            let mut m = BTreeMap::new();
            for (c, v) in r {
                if !v.is_zero() {
                    let e = m.entry(c).or_insert(Int::ZERO);
                    *e += &v;
                }
            }
            m.retain(|_, v: &mut Int| !v.is_zero());
            m
        })
        .filter(|m| !m.is_empty())
        .collect();
    let mut col_rows: Vec<alloc::collections::BTreeSet<usize>> =
        alloc::vec![alloc::collections::BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut alive = alloc::vec![true; rows.len()];
    let mut ones = 0usize;
    loop {
        // Unit pivot minimizing the Markowitz cost.
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (&c, v) in r {
                if v.abs().is_one() {
                    let cost = (r.len() - 1) * (col_rows[c].len() - 1);
                    if best.map_or(true, |b| cost < b.2) {
                        best = Some((i, c, cost));
                    }
                }
            }
        }
        let (pi, pc, _) = match best {
            None => break,
            Some(b) => b,
        };
        let prow = core::mem::take(&mut rows[pi]);
        alive[pi] = false;
        for &c in prow.keys() {
            col_rows[c].remove(&pi);
        }
        let pv = prow[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for i in others {
            let q = &rows[i][&pc] * &pv; // pv = +-1, so q = a / pv
            for (&c, v) in &prow {
                let t = &q * v;
                let e = rows[i].entry(c).or_insert(Int::ZERO);
                let was_zero = e.is_zero();
                *e -= &t;
                if e.is_zero() {
                    rows[i].remove(&c);
                    col_rows[c].remove(&i);
                } else if was_zero {
                    col_rows[c].insert(i);
                }
            }
        }
        ones += 1;
    }
    let mut used: Vec<usize> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if alive[i] {
            used.extend(r.keys().copied());
        }
    }
    used.sort_unstable();
    used.dedup();
    let colmap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let dense: Vec<Vector> = rows
        .iter()
        .enumerate()
        .filter(|(i, r)| alive[*i] && !r.is_empty())
        .map(|(_, r)| {
            let mut v = alloc::vec![Int::ZERO; used.len()];
            for (c, x) in r {
                v[colmap[c]] = x.clone();
            }
            v
        })
        .collect();
    // Shrink by HNF first so the dense pass sees a square-ish matrix.
    let reduced = hnf(&dense);
    let mut out = alloc::vec![Int::ONE; ones];
    out.extend(snf(&reduced));
    normalize_chain(out)
}

/// A row lattice in `Z^dim`, stored by its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<Vector>,
}

impl IntLattice {
    pub fn zero(dim: usize) -> Self {
        IntLattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = alloc::vec![Int::ZERO; dim];
                v[i] = Int::ONE;
                v
            })
            .collect();
        IntLattice { dim, basis }
    }

    pub fn new(dim: usize, gens: &[Vector]) -> Result<Self> {
        let mut e = Echelon::new(dim);
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
            e.insert(g.clone());
        }
        Ok(Self::from_echelon(&e))
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        IntLattice { dim: e.dim, basis: e.hnf() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn echelon(&self) -> Echelon {
        let mut rows = BTreeMap::new();
        for b in &self.basis {
            let c = first_nonzero(b, 0).expect("zero row in HNF");
            rows.insert(c, b.clone());
        }
        Echelon { dim: self.dim, rows }
    }

    pub fn member(&self, v: &[Int]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(|c| c.is_zero()))
    }

    /// Remainder of `v` after reduction against the basis; zero iff member.
    pub fn residual(&self, v: &[Int]) -> Result<Vector> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self.echelon().reduce(v.to_vec()))
    }

    /// Coordinates of `v` in the HNF basis, if `v` is a member.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vector> {
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let c = first_nonzero(b, 0).expect("zero row in HNF");
            if !b[c].divides(&v[c]) {
                return None;
            }
            let q = v[c].div_exact(&b[c]);
            axpy(&mut v, &q, b, c);
            coords.push(q);
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.member(b).unwrap_or(false))
    }

    pub fn join(&self, other: &IntLattice) -> Result<IntLattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut e = self.echelon();
        for b in &other.basis {
            e.insert(b.clone());
        }
        Ok(Self::from_echelon(&e))
    }

    pub fn meet(&self, other: &IntLattice) -> Result<IntLattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut e = Echelon::new(2 * n);
        for b in &self.basis {
            let mut v = b.clone();
            v.extend(b.iter().cloned());
            e.insert(v);
        }
        for b in &other.basis {
            let mut v = b.clone();
            v.extend(core::iter::repeat(Int::ZERO).take(n));
            e.insert(v);
        }
        let gens: Vec<Vector> = e
            .rows
            .range(n..)
            .map(|(_, r)| r[n..].to_vec())
            .collect();
        IntLattice::new(n, &gens)
    }

    /// Invariant factors of `sup / self`: nontrivial torsion coefficients in
    /// increasing divisibility order, then one `0` per free summand.
    pub fn quotient_invariants(&self, sup: &IntLattice) -> Result<Vec<Int>> {
        if self.dim != sup.dim {
            return Err(Error::DimensionMismatch { expected: sup.dim, found: self.dim });
        }
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            match sup.coordinates(b) {
                Some(c) => coords.push(c),
                None => return Err(Error::Containment("sublattice not contained".into())),
            }
        }
        let d = snf(&coords);
        let mut out: Vec<Int> = d.into_iter().filter(|x| !x.is_one()).collect();
        for _ in self.rank()..sup.rank() {
            out.push(Int::ZERO);
        }
        Ok(out)
    }

    /// Image under the projection onto the first `k` coordinates.
    pub fn project(&self, k: usize) -> IntLattice {
        let gens: Vec<Vector> = self.basis.iter().map(|b| b[..k].to_vec()).collect();
        IntLattice::new(k, &gens).expect("consistent dimension")
    }
}

/// Integer relations `y` with `sum_i y_i rows_i = 0`, as a lattice in
/// `Z^rows.len()`.
pub fn left_kernel(rows: &[Vector], ncols: usize) -> Result<IntLattice> {
    let m = rows.len();
    let mut e = Echelon::new(ncols + m);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::DimensionMismatch { expected: ncols, found: r.len() });
        }
        let mut v = r.clone();
        v.extend((0..m).map(|j| if i == j { Int::ONE } else { Int::ZERO }));
        e.insert(v);
    }
    // Rows pivoting past the matrix part have a zero matrix part.
    let gens: Vec<Vector> = e.rows.range(ncols..).map(|(_, r)| r[ncols..].to_vec()).collect();
    IntLattice::new(m, &gens)
}

/// `{x : x * map in target}` where row `i` of `map` is the image of `e_i`.
pub fn preimage(map: &[Vector], target: &IntLattice) -> Result<IntLattice> {
    let mut rows = map.to_vec();
    rows.extend(target.basis().iter().cloned());
    let k = left_kernel(&rows, target.dim())?;
    Ok(k.project(map.len()))
}

/// The lattice spanned by the images of the basis of `src` under `map`.
pub fn image(map: &[Vector], src: &IntLattice, dim: usize) -> Result<IntLattice> {
    let gens: Vec<Vector> = src.basis().iter().map(|x| apply(map, x, dim)).collect();
    IntLattice::new(dim, &gens)
}

/// `x * map`, with row `i` of `map` the image of `e_i`.
pub fn apply(map: &[Vector], x: &[Int], dim: usize) -> Vector {
    let mut out = alloc::vec![Int::ZERO; dim];
    for (c, row) in x.iter().zip(map) {
        if !c.is_zero() {
            axpy_all(&mut out, c, row);
        }
    }
    out
}

fn axpy_all(a: &mut [Int], q: &Int, b: &[Int]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(q * y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        vector(v)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&matrix(&[&[2, 0], &[0, 3]])), matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(hnf(&matrix(&[&[0, 1], &[1, 0]])), matrix(&[&[1, 0], &[0, 1]]));
        assert_eq!(hnf(&matrix(&[&[2, 4], &[4, 8]])), matrix(&[&[2, 4]]));
        assert_eq!(hnf(&matrix(&[&[3, 5], &[0, 2]])), matrix(&[&[3, 1], &[0, 2]]));
        // Reducing against the middle pivot must not undo the last column.
        assert_eq!(
            hnf(&matrix(&[&[1, 2, 6], &[0, 1, 3], &[0, 0, 4]])),
            matrix(&[&[1, 0, 0], &[0, 1, 3], &[0, 0, 4]])
        );
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf(&matrix(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(snf(&matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), ints(&[1, 1, 1]));
        assert_eq!(snf(&matrix(&[&[6]])), ints(&[6]));
        assert_eq!(snf(&matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), ints(&[2, 6, 12]));
    }

    #[test]
    fn sparse_snf_matches_dense() {
        let m = matrix(&[&[2, 4, 4, 1], &[-6, 6, 12, 0], &[10, -4, -16, 1], &[1, 1, 1, 1]]);
        let sparse: Vec<Vec<(usize, Int)>> = m
            .iter()
            .map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        assert_eq!(snf_sparse(sparse, 4), snf(&m));
    }

    #[test]
    fn membership_examples() {
        let l = IntLattice::new(2, &matrix(&[&[2, 0], &[0, 3]])).unwrap();
        assert!(l.member(&ints(&[2, 0])).unwrap());
        let l2 = IntLattice::new(2, &matrix(&[&[2, 0]])).unwrap();
        assert!(!l2.member(&ints(&[1, 0])).unwrap());
        let l3 = IntLattice::new(2, &matrix(&[&[1, 1]])).unwrap();
        assert!(l3.member(&ints(&[3, 3])).unwrap());
        assert!(matches!(l3.member(&ints(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn meet_join_quotient_examples() {
        let a = IntLattice::new(2, &matrix(&[&[2, 0], &[0, 1]])).unwrap();
        let b = IntLattice::new(2, &matrix(&[&[1, 0], &[0, 2]])).unwrap();
        let m = a.meet(&b).unwrap();
        assert_eq!(m, IntLattice::new(2, &matrix(&[&[2, 0], &[0, 2]])).unwrap());
        assert_eq!(a.join(&a).unwrap(), a);
        let two = IntLattice::new(2, &matrix(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(two.quotient_invariants(&IntLattice::full(2)).unwrap(), ints(&[2, 2]));
        assert!(IntLattice::full(2).quotient_invariants(&two).is_err());
        let line = IntLattice::new(2, &matrix(&[&[0, 3]])).unwrap();
        assert_eq!(line.quotient_invariants(&IntLattice::full(2)).unwrap(), ints(&[3, 0]));
    }

    #[test]
    fn zero_lattice_keeps_dimension() {
        let z = IntLattice::zero(3);
        assert_eq!(z.dim(), 3);
        assert!(z.member(&ints(&[0, 0, 0])).unwrap());
        assert!(!z.member(&ints(&[0, 1, 0])).unwrap());
        assert_eq!(z.meet(&IntLattice::full(3)).unwrap(), z);
    }
}
