//! Presentations of quadratic functors from a presentation `E / I` with
//! `E = Z^n`. Tensor coordinates use `e_i (x) e_j -> i * n + j`; divided
//! square coordinates put `gamma(e_i)` first, then `[e_i, e_j]` for `i < j`.

use alloc::vec::Vec;

use super::present::{Map, Module};
use crate::error::Result;
use crate::intlat::Vector;
use crate::num::Int;

fn zeros(n: usize) -> Vector {
    alloc::vec![Int::ZERO; n]
}

fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Int::ONE;
    v
}

pub(crate) fn tensor(x: &[Int], y: &[Int]) -> Vector {
    let n = x.len();
    let mut v = zeros(n * n);
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                v[i * n + j] = a * b;
            }
        }
    }
    v
}

/// Relations `r (x) e_j` and `e_j (x) r` of `A (x) A` for `A = Z^n / I`.
fn tensor_relations(n: usize, rels: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for r in rels {
        for j in 0..n {
            let e = basis_vec(n, j);
            out.push(tensor(r, &e));
            out.push(tensor(&e, r));
        }
    }
    out
}

fn twisted(n: usize, sign: i64, with_diagonal_squares: bool) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = zeros(n * n);
            v[i * n + j] += &Int::ONE;
            v[j * n + i] += &Int::from(sign);
            if v.iter().any(|c| !c.is_zero()) {
                out.push(v);
            }
        }
        if with_diagonal_squares {
            out.push(basis_vec(n * n, i * n + i));
        }
    }
    out
}

pub fn tensor2(n: usize, rels: &[Vector]) -> Result<Module> {
    Module::new(n * n, &tensor_relations(n, rels))
}

pub fn sp2(n: usize, rels: &[Vector]) -> Result<Module> {
    let mut r = tensor_relations(n, rels);
    r.extend(twisted(n, -1, false));
    Module::new(n * n, &r)
}

pub fn lambda2(n: usize, rels: &[Vector]) -> Result<Module> {
    let mut r = tensor_relations(n, rels);
    r.extend(twisted(n, 1, true));
    Module::new(n * n, &r)
}

pub fn anti2(n: usize, rels: &[Vector]) -> Result<Module> {
    let mut r = tensor_relations(n, rels);
    r.extend(twisted(n, 1, false));
    Module::new(n * n, &r)
}

/// `A (x) Z/2`.
pub fn mod2(n: usize, rels: &[Vector]) -> Result<Module> {
    let mut r = rels.to_vec();
    r.extend((0..n).map(|i| {
        let mut v = zeros(n);
        v[i] = Int::from(2);
        v
    }));
    Module::new(n, &r)
}

pub(crate) fn gamma_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

fn bracket_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // Pairs (a, b) with a < b before (i, j).
    n + i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Coordinates of `gamma(x)` in the divided square of `Z^n`.
pub(crate) fn gamma_of(x: &[Int]) -> Vector {
    let n = x.len();
    let mut v = zeros(gamma_dim(n));
    for i in 0..n {
        v[i] = &x[i] * &x[i];
        for j in i + 1..n {
            v[bracket_index(n, i, j)] = &x[i] * &x[j];
        }
    }
    v
}

/// Coordinates of `[x, y] = gamma(x + y) - gamma(x) - gamma(y)`.
pub(crate) fn bracket_of(x: &[Int], y: &[Int]) -> Vector {
    let n = x.len();
    let mut v = zeros(gamma_dim(n));
    for i in 0..n {
        v[i] = &Int::from(2) * &(&x[i] * &y[i]);
        for j in i + 1..n {
            v[bracket_index(n, i, j)] = &(&x[i] * &y[j]) + &(&x[j] * &y[i]);
        }
    }
    v
}

/// The divided square: `Gamma^2(E)` modulo `gamma(r)` and `[r, e_j]` for
/// relation generators `r`.
pub fn gamma2(n: usize, rels: &[Vector]) -> Result<Module> {
    let mut r = Vec::new();
    for rel in rels {
        r.push(gamma_of(rel));
        for j in 0..n {
            r.push(bracket_of(rel, &basis_vec(n, j)));
        }
    }
    Module::new(gamma_dim(n), &r)
}

/// `a -> a (x) a` from `A (x) Z/2` to the antisymmetric square.
pub fn diagonal_into_anti2(n: usize) -> Map {
    Map::new((0..n).map(|i| basis_vec(n * n, i * n + i)).collect())
}

/// `ab -> [a, b]` from the symmetric to the divided square.
pub fn sp2_into_gamma2(n: usize) -> Map {
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rows.push(bracket_of(&basis_vec(n, i), &basis_vec(n, j)));
        }
    }
    Map::new(rows)
}

/// `gamma(a) -> a (x) 1`.
pub fn gamma2_onto_mod2(n: usize) -> Map {
    let rows = (0..gamma_dim(n)).map(|k| if k < n { basis_vec(n, k) } else { zeros(n) }).collect();
    Map::new(rows)
}
