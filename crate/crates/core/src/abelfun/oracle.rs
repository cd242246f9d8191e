//! Quadratic functors of a finite abelian group computed directly from its
//! element table: one symbol per element (or pair of elements) and one
//! relation per instance of the defining identities. Independent of the
//! presentation-based code and used to cross-check it.

use alloc::vec::Vec;

use super::{FgAbGroup, FunctorKind};
use crate::error::{Error, Result};
use crate::intlat::snf_sparse;
use crate::num::Int;

/// `Z/d_1 + ... + Z/d_k` with elements numbered in mixed radix.
#[derive(Clone, Debug)]
pub struct ElementTable {
    orders: Vec<usize>,
    size: usize,
}

impl ElementTable {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.iter().any(|&d| d == 0) {
            return Err(Error::InvalidTable("element tables need finite cyclic factors".into()));
        }
        let size = orders.iter().product();
        Ok(ElementTable { orders: orders.to_vec(), size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        self.orders
            .iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect()
    }

    fn number(&self, digits: &[usize]) -> usize {
        let mut x = 0;
        for (d, &o) in digits.iter().zip(&self.orders).rev() {
            x = x * o + d;
        }
        x
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let s: Vec<usize> =
            self.digits(x).iter().zip(self.digits(y)).zip(&self.orders).map(|((a, b), o)| (a + b) % o).collect();
        self.number(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        let s: Vec<usize> = self.digits(x).iter().zip(&self.orders).map(|(a, o)| (o - a) % o).collect();
        self.number(&s)
    }
}

type Row = Vec<(usize, Int)>;

fn row(terms: &[(usize, i64)]) -> Row {
    terms.iter().map(|&(c, v)| (c, Int::from(v))).collect()
}

fn quotient(rows: Vec<Row>, ncols: usize) -> FgAbGroup {
    let d = snf_sparse(rows, ncols);
    let mut inv: Vec<Int> = d.iter().filter(|x| !x.is_one()).cloned().collect();
    inv.extend(core::iter::repeat(Int::ZERO).take(ncols - d.len()));
    FgAbGroup::from_invariants(inv)
}

/// The functor value computed from the element table of `Z/d_1 + ... + Z/d_k`.
pub fn brute_force(kind: FunctorKind, orders: &[usize]) -> Result<FgAbGroup> {
    let t = ElementTable::new(orders)?;
    let n = t.size();
    let mut rows = Vec::new();
    match kind {
        FunctorKind::Gamma2 => {
            for x in 0..n {
                rows.push(row(&[(x, 1), (t.neg(x), -1)]));
                for y in 0..n {
                    let xy = t.add(x, y);
                    for z in 0..n {
                        let (xz, yz) = (t.add(x, z), t.add(y, z));
                        rows.push(row(&[
                            (t.add(xy, z), 1),
                            (xy, -1),
                            (xz, -1),
                            (yz, -1),
                            (x, 1),
                            (y, 1),
                            (z, 1),
                        ]));
                    }
                }
            }
            Ok(quotient(rows, n))
        }
        FunctorKind::Tensor2 | FunctorKind::Sp2 | FunctorKind::Lambda2 | FunctorKind::AntiTensor2 => {
            let p = |x: usize, y: usize| x * n + y;
            for x in 0..n {
                for y in 0..n {
                    let xy = t.add(x, y);
                    for z in 0..n {
                        rows.push(row(&[(p(xy, z), 1), (p(x, z), -1), (p(y, z), -1)]));
                        rows.push(row(&[(p(z, xy), 1), (p(z, x), -1), (p(z, y), -1)]));
                    }
                    match kind {
                        FunctorKind::Sp2 => rows.push(row(&[(p(x, y), 1), (p(y, x), -1)])),
                        FunctorKind::AntiTensor2 => rows.push(row(&[(p(x, y), 1), (p(y, x), 1)])),
                        _ => {}
                    }
                }
                if kind == FunctorKind::Lambda2 {
                    rows.push(row(&[(p(x, x), 1)]));
                }
            }
            Ok(quotient(rows, n * n))
        }
        _ => Err(Error::Hypothesis(alloc::format!("no element-table oracle for {}", kind))),
    }
}
