//! Integral homology of finitely generated abelian groups.
//!
//! `homology` assembles the answer from cyclic pieces with the Künneth
//! formula; `bar_oracle` computes it independently from the normalized bar
//! complex of a small finite group.

use alloc::vec::Vec;

use crate::abelfun::oracle::ElementTable;
use crate::abelfun::{tensor, tor, FgAbGroup};
use crate::error::{Error, Result};
use crate::intlat::snf_sparse;
use crate::num::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub group: FgAbGroup,
    pub degree: usize,
    pub value: FgAbGroup,
}

/// `H_0 .. H_k` of a cyclic group of order `m` (`m = 0` for `Z`).
fn cyclic_homology(m: &Int, k: usize) -> Vec<FgAbGroup> {
    (0..=k)
        .map(|n| match n {
            0 => FgAbGroup::free(1),
            _ if m.is_zero() => {
                if n == 1 {
                    FgAbGroup::free(1)
                } else {
                    FgAbGroup::trivial()
                }
            }
            _ if n % 2 == 1 => FgAbGroup::from_invariants(alloc::vec![m.clone()]),
            _ => FgAbGroup::trivial(),
        })
        .collect()
}

/// Künneth: `H_n(A + B) = sum H_i(A) (x) H_j(B) + sum_{i+j=n-1} Tor(H_i(A), H_j(B))`.
fn kunneth(a: &[FgAbGroup], b: &[FgAbGroup]) -> Vec<FgAbGroup> {
    let k = a.len() - 1;
    (0..=k)
        .map(|n| {
            let mut acc = FgAbGroup::trivial();
            for i in 0..=n {
                acc = acc.sum(&tensor(&a[i], &b[n - i]));
            }
            for i in 0..n {
                acc = acc.sum(&tor(&a[i], &b[n - 1 - i]));
            }
            acc
        })
        .collect()
}

/// `H_0(A) .. H_k(A)`.
pub fn homology_upto(a: &FgAbGroup, k: usize) -> Vec<FgAbGroup> {
    let mut acc = cyclic_homology(&Int::ONE, k);
    for m in a.factors() {
        acc = kunneth(&acc, &cyclic_homology(m, k));
    }
    acc
}

pub fn homology(a: &FgAbGroup, k: usize) -> HomologyResult {
    let value = homology_upto(a, k).pop().expect("degree range is nonempty");
    HomologyResult { group: a.clone(), degree: k, value }
}

/// Largest normalized bar complex the oracle will build.
pub const BAR_CAP: usize = 50_000;

/// Boundary of the normalized bar complex in degree `k`, one sparse row per
/// `k`-cell `[g_1 | ... | g_k]` with all `g_i` nontrivial.
fn bar_boundary(t: &ElementTable, k: usize) -> Vec<Vec<(usize, Int)>> {
    let base = t.size() - 1;
    let cells = base.pow(k as u32);
    let index = |tuple: &[usize]| -> Option<usize> {
        let mut x = 0;
        for &g in tuple {
            if g == 0 {
                return None;
            }
            x = x * base + (g - 1);
        }
        Some(x)
    };
    let mut rows = Vec::with_capacity(cells);
    let mut tuple = alloc::vec![0usize; k];
    for c in 0..cells {
        let mut x = c;
        for slot in tuple.iter_mut().rev() {
            *slot = x % base + 1;
            x /= base;
        }
        let mut row: Vec<(usize, Int)> = Vec::new();
        let mut push = |face: Option<usize>, sign: i64| {
            if let Some(f) = face {
                row.push((f, Int::from(sign)));
            }
        };
        push(index(&tuple[1..]), 1);
        for i in 0..k - 1 {
            let mut face: Vec<usize> = tuple[..i].to_vec();
            face.push(t.add(tuple[i], tuple[i + 1]));
            face.extend_from_slice(&tuple[i + 2..]);
            push(index(&face), if i % 2 == 0 { -1 } else { 1 });
        }
        push(index(&tuple[..k - 1]), if k % 2 == 0 { 1 } else { -1 });
        rows.push(row);
    }
    rows
}

/// `H_0 .. H_k` of `Z/d_1 + ... + Z/d_r` from the normalized bar complex.
pub fn bar_oracle_upto(orders: &[usize], k: usize) -> Result<Vec<FgAbGroup>> {
    let t = ElementTable::new(orders)?;
    let base = t.size() - 1;
    let cells = |n: usize| base.checked_pow(n as u32).filter(|&c| c <= BAR_CAP);
    if cells(k + 1).is_none() {
        return Err(Error::CapExceeded { what: "bar complex cells", cap: BAR_CAP });
    }
    let mut out = alloc::vec![FgAbGroup::free(1)];
    if base == 0 {
        out.extend((1..=k).map(|_| FgAbGroup::trivial()));
        return Ok(out);
    }
    // Smith forms of the boundaries out of degrees 1 ..= k + 1; the one out
    // of degree 1 is zero.
    let mut snfs: Vec<Vec<Int>> = alloc::vec![Vec::new()];
    for n in 2..=k + 1 {
        snfs.push(snf_sparse(bar_boundary(&t, n), base.pow(n as u32 - 1)));
    }
    for n in 1..=k {
        let ck = base.pow(n as u32);
        let (out_rank, incoming) = (snfs[n - 1].len(), &snfs[n]);
        let mut inv: Vec<Int> = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
        inv.extend(core::iter::repeat(Int::ZERO).take(ck - out_rank - incoming.len()));
        out.push(FgAbGroup::from_invariants(inv));
    }
    Ok(out)
}

/// `H_k` of `Z/d_1 + ... + Z/d_r` from the normalized bar complex.
pub fn bar_oracle(orders: &[usize], k: usize) -> Result<FgAbGroup> {
    Ok(bar_oracle_upto(orders, k)?.pop().expect("degree range is nonempty"))
}

/// `H_3(Z^a) (x) lambda2(Z^b)`.
pub fn h3_tensor_lambda2(a_rank: usize, b_rank: usize) -> FgAbGroup {
    let h3 = homology(&FgAbGroup::free(a_rank), 3).value;
    let l2 = FgAbGroup::free(b_rank * b_rank.saturating_sub(1) / 2);
    tensor(&h3, &l2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn free_abelian_homology_is_exterior() {
        for n in 0..=5 {
            let hs = homology_upto(&FgAbGroup::free(n), 5);
            for (k, h) in hs.iter().enumerate() {
                assert_eq!(*h, FgAbGroup::free(binomial(n, k)), "H_{}(Z^{})", k, n);
            }
        }
        assert_eq!(homology(&FgAbGroup::free(3), 3).value, FgAbGroup::free(1));
        assert!(homology(&FgAbGroup::free(3), 4).value.is_trivial());
    }

    #[test]
    fn finite_examples() {
        assert_eq!(homology(&FgAbGroup::cyclic(2), 3).value, FgAbGroup::cyclic(2));
        assert!(homology(&FgAbGroup::trivial(), 2).value.is_trivial());
        let v4 = FgAbGroup::from_factors(&[2, 2]);
        assert_eq!(homology(&v4, 2).value, FgAbGroup::cyclic(2));
        assert_eq!(homology(&v4, 3).value, FgAbGroup::from_factors(&[2, 2, 2]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar_oracle(&[2], 1).unwrap(), FgAbGroup::cyclic(2));
        assert!(bar_oracle(&[2], 2).unwrap().is_trivial());
        assert_eq!(bar_oracle(&[2, 2], 2).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(bar_oracle(&[3], 3).unwrap(), FgAbGroup::cyclic(3));
        assert!(bar_oracle(&[8], 6).is_err());
    }

    #[test]
    fn kunneth_matches_bar_complex_on_small_groups() {
        for orders in [&[2usize][..], &[3], &[4], &[2, 2], &[5], &[6]] {
            let raw: Vec<i64> = orders.iter().map(|&d| d as i64).collect();
            let a = FgAbGroup::from_factors(&raw);
            assert_eq!(homology_upto(&a, 3), bar_oracle_upto(orders, 3).unwrap(), "{:?}", orders);
        }
    }

    #[test]
    fn h3_tensor_lambda2_values() {
        assert_eq!(h3_tensor_lambda2(3, 2), FgAbGroup::free(1));
        assert!(h3_tensor_lambda2(2, 2).is_trivial());
        assert_eq!(h3_tensor_lambda2(3, 3), FgAbGroup::free(3));
    }
}

