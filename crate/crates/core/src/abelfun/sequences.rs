use alloc::string::String;
use alloc::vec::Vec;

use super::present::{complex, Map, Module};
use super::quadratic::{self, gamma_dim, tensor};
use super::{tor, FgAbGroup};
use crate::error::{Error, Result};
use crate::intlat::{IntLattice, Vector};
use crate::num::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeCheck {
    pub at: String,
    pub homology: FgAbGroup,
}

/// Exactness of `0 -> M_0 -> ... -> M_k -> 0` node by node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub name: String,
    pub terms: Vec<(String, FgAbGroup)>,
    pub nodes: Vec<NodeCheck>,
    pub exact: bool,
}

fn sequence(name: &str, labels: &[&str], terms: &[Module], maps: &[Map]) -> Result<SequenceReport> {
    let data = complex(terms, maps)?;
    let mut nodes = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        nodes.push(NodeCheck { at: (*l).into(), homology: data.homology(i)? });
    }
    let exact = nodes.iter().all(|n| n.homology.is_trivial());
    Ok(SequenceReport {
        name: name.into(),
        terms: labels.iter().zip(terms).map(|(l, m)| ((*l).into(), m.group())).collect(),
        nodes,
        exact,
    })
}

/// `0 -> A (x) Z/2 -> antitensor2(A) -> lambda2(A) -> 0` and
/// `0 -> sp2(A) -> gamma2(A) -> A (x) Z/2 -> 0`.
pub fn quadratic_sequences_check(a: &FgAbGroup) -> Result<(SequenceReport, SequenceReport)> {
    let p = a.presentation();
    let (n, r) = (p.rank, &p.relations);
    let m2 = quadratic::mod2(n, r)?;
    let anti = sequence(
        "A(x)Z/2 -> antitensor2 -> lambda2",
        &["A(x)Z/2", "antitensor2(A)", "lambda2(A)"],
        &[m2.clone(), quadratic::anti2(n, r)?, quadratic::lambda2(n, r)?],
        &[quadratic::diagonal_into_anti2(n), Map::identity(n * n)],
    )?;
    let gam = sequence(
        "sp2 -> gamma2 -> A(x)Z/2",
        &["sp2(A)", "gamma2(A)", "A(x)Z/2"],
        &[quadratic::sp2(n, r)?, quadratic::gamma2(n, r)?, m2],
        &[quadratic::sp2_into_gamma2(n), quadratic::gamma2_onto_mod2(n)],
    )?;
    Ok((anti, gam))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn wedge(x: &[Int], y: &[Int]) -> Vector {
    let n = x.len();
    let mut v = alloc::vec![Int::ZERO; n * (n.saturating_sub(1)) / 2];
    for i in 0..n {
        for j in i + 1..n {
            v[pair_index(n, i, j)] = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
        }
    }
    v
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = alloc::vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

fn check_rank(n: usize, rels: &[Vector]) -> Result<()> {
    match rels.iter().find(|r| r.len() != n) {
        Some(r) => Err(Error::Containment(alloc::format!(
            "relation of length {} is not an element of Z^{}",
            r.len(),
            n
        ))),
        None => Ok(()),
    }
}

/// Terms and maps of `lambda2(E)/lambda2(I) -> E (x) A -> sp2(A)`.
fn l1_sp2_sequence_data(n: usize, rels: &[Vector]) -> Result<(Vec<Module>, Vec<Map>)> {
    check_rank(n, rels)?;
    let mut wedge_rels = Vec::new();
    for (a, x) in rels.iter().enumerate() {
        for y in &rels[a + 1..] {
            wedge_rels.push(wedge(x, y));
        }
    }
    let lam = Module::new(n * n.saturating_sub(1) / 2, &wedge_rels)?;
    let mut ea_rels = Vec::new();
    for r in rels {
        for i in 0..n {
            ea_rels.push(tensor(&unit(n, i), r));
        }
    }
    let ea = Module::new(n * n, &ea_rels)?;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (unit(n, i), unit(n, j));
            rows.push(tensor(&ei, &ej).iter().zip(tensor(&ej, &ei)).map(|(a, b)| a - &b).collect());
        }
    }
    Ok((alloc::vec![lam, ea, quadratic::sp2(n, rels)?], alloc::vec![Map::new(rows), Map::identity(n * n)]))
}

/// First derived functor of the symmetric square, as the kernel on the left
/// of the four-term sequence.
pub fn l1_sp2(n: usize, rels: &[Vector]) -> Result<FgAbGroup> {
    let (terms, maps) = l1_sp2_sequence_data(n, rels)?;
    complex(&terms, &maps)?.homology(0)
}

/// `Tor(A, A)` modulo the subgroup generated by diagonal classes, with the
/// diagonal of `e_i + e_j` contributing `tau_ij + tau_ji`.
pub fn tor_diagonal_quotient(a: &FgAbGroup) -> Result<FgAbGroup> {
    let t = a.torsion();
    let k = t.len();
    let idx = |i: usize, j: usize| i * k + j;
    let mut rels = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let mut v = alloc::vec![Int::ZERO; k * k];
            v[idx(i, j)] = t[i].gcd(&t[j]);
            rels.push(v);
        }
        rels.push(unit(k * k, idx(i, i)));
        for j in i + 1..k {
            let mut v = unit(k * k, idx(i, j));
            v[idx(j, i)] = Int::ONE;
            rels.push(v);
        }
    }
    Ok(Module::new(k * k, &rels)?.group())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Sp2SequenceReport {
    pub sequence: SequenceReport,
    pub l1_sp2: FgAbGroup,
    pub tor_diagonal: FgAbGroup,
    /// Exact at every node past the first; the first node's kernel is `l1_sp2`.
    pub exact: bool,
    pub cross_check: bool,
}

/// `0 -> L1 sp2(A) -> lambda2(E)/lambda2(I) -> E (x) A -> sp2(A) -> 0`.
pub fn l1_sp2_sequence_check(n: usize, rels: &[Vector]) -> Result<L1Sp2SequenceReport> {
    let (terms, maps) = l1_sp2_sequence_data(n, rels)?;
    let seq = sequence(
        "lambda2(E)/lambda2(I) -> E(x)A -> sp2(A)",
        &["lambda2(E)/lambda2(I)", "E(x)A", "sp2(A)"],
        &terms,
        &maps,
    )?;
    let l1 = seq.nodes[0].homology.clone();
    let a = FgAbGroup::from_presentation(n, rels.to_vec())?;
    let td = tor_diagonal_quotient(&a)?;
    let exact = seq.nodes[1..].iter().all(|c| c.homology.is_trivial());
    Ok(L1Sp2SequenceReport { cross_check: td == l1, sequence: seq, l1_sp2: l1, tor_diagonal: td, exact })
}

/// Index pairs of the divided or symmetric square of `Z^m`, in the
/// coordinate order of `quadratic::gamma_of`.
fn square_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..m).map(|a| (a, a)).collect();
    for a in 0..m {
        for b in a + 1..m {
            out.push((a, b));
        }
    }
    out
}

/// A basis `f_1 .. f_m` of `I` and the coordinates of `f_a (x) f_b` in `I (x) E`,
/// whose basis is `f_a (x) e_j -> a * n + j`.
struct Koszul {
    n: usize,
    basis: Vec<Vector>,
}

impl Koszul {
    fn new(n: usize, rels: &[Vector]) -> Result<Self> {
        check_rank(n, rels)?;
        Ok(Koszul { n, basis: IntLattice::new(n, rels)?.basis().to_vec() })
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// `f_a (x) iota(f_b)`.
    fn fe(&self, a: usize, b: usize) -> Vector {
        let n = self.n;
        let mut v = alloc::vec![Int::ZERO; self.m() * n];
        for j in 0..n {
            v[a * n + j] = self.basis[b][j].clone();
        }
        v
    }

    fn sym(&self, a: usize, b: usize) -> Vector {
        self.fe(a, b).iter().zip(self.fe(b, a)).map(|(x, y)| x + &y).collect()
    }

    /// `Gamma^2(I) -> I (x) E`: `gamma(f) -> f (x) f`, `[f, g] -> f (x) g + g (x) f`.
    fn from_gamma(&self) -> Map {
        Map::new(square_pairs(self.m()).into_iter().map(|(a, b)| if a == b { self.fe(a, a) } else { self.sym(a, b) }).collect())
    }

    /// `sp2(I) -> I (x) E`: `fg -> f (x) g + g (x) f`.
    fn from_sp2(&self) -> Map {
        Map::new(square_pairs(self.m()).into_iter().map(|(a, b)| self.sym(a, b)).collect())
    }

    /// `I (x) E -> lambda2(E)`.
    fn to_lambda(&self) -> Map {
        let n = self.n;
        let mut rows = Vec::new();
        for f in &self.basis {
            for j in 0..n {
                rows.push(wedge(f, &unit(n, j)));
            }
        }
        Map::new(rows)
    }

    /// `I (x) E -> antitensor2(E)`.
    fn to_anti(&self) -> Map {
        let n = self.n;
        let mut rows = Vec::new();
        for f in &self.basis {
            for j in 0..n {
                rows.push(tensor(f, &unit(n, j)));
            }
        }
        Map::new(rows)
    }

    fn lambda_terms(&self) -> Result<Vec<Module>> {
        let n = self.n;
        Ok(alloc::vec![
            Module::free(gamma_dim(self.m())),
            Module::free(self.m() * n),
            Module::free(n * n.saturating_sub(1) / 2)
        ])
    }

    fn anti_terms(&self) -> Result<Vec<Module>> {
        let n = self.n;
        Ok(alloc::vec![
            Module::free(gamma_dim(self.m())),
            Module::free(self.m() * n),
            quadratic::anti2(n, &[])?
        ])
    }
}

/// First derived functor of the exterior square: the middle homology of
/// `Gamma^2(I) -> I (x) E -> lambda2(E)`.
pub fn l1_lambda2(n: usize, rels: &[Vector]) -> Result<FgAbGroup> {
    let k = Koszul::new(n, rels)?;
    complex(&k.lambda_terms()?, &[k.from_gamma(), k.to_lambda()])?.homology(1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
    /// Homology at `sp2(I)`; zero since that map is injective.
    pub h2: FgAbGroup,
    pub antitensor_of_quotient: FgAbGroup,
    pub tor_a_z2: FgAbGroup,
    pub l1_lambda2: FgAbGroup,
    /// Kernel of the comparison map `H_1 -> L1 lambda2(A)`.
    pub comparison_kernel: FgAbGroup,
    pub comparison_surjective: bool,
    pub h0_matches: bool,
    pub kernel_matches: bool,
    pub orders_match: bool,
}

/// Homology of `sp2(I) -> I (x) E -> antitensor2(E)`, with its comparison to
/// the exterior Koszul complex.
pub fn koszul_antisym(n: usize, rels: &[Vector]) -> Result<KoszulReport> {
    let k = Koszul::new(n, rels)?;
    let anti = complex(&k.anti_terms()?, &[k.from_sp2(), k.to_anti()])?;
    let lam = complex(&k.lambda_terms()?, &[k.from_gamma(), k.to_lambda()])?;
    let a = FgAbGroup::from_presentation(n, rels.to_vec())?;
    let h0 = anti.homology(2)?;
    let h1 = anti.homology(1)?;
    let h2 = anti.homology(0)?;
    let l1 = lam.homology(1)?;
    let (z1, b1) = (&anti.cycles[1], &anti.boundaries[1]);
    let (zl, bl) = (&lam.cycles[1], &lam.boundaries[1]);
    let comparison_surjective = z1.join(bl)? == *zl;
    let kernel = FgAbGroup::from_invariants(b1.quotient_invariants(&z1.meet(bl)?)?);
    let tor2 = tor(&a, &FgAbGroup::cyclic(2));
    let anti_a = quadratic::anti2(n, rels)?.group();
    let orders_match = match (h1.order(), tor2.order(), l1.order()) {
        (Some(x), Some(y), Some(z)) => x == &y * &z,
        _ => h1.free_rank() == l1.free_rank(),
    };
    Ok(KoszulReport {
        h0_matches: h0 == anti_a,
        kernel_matches: kernel == tor2,
        h0,
        h1,
        h2,
        antitensor_of_quotient: anti_a,
        tor_a_z2: tor2,
        l1_lambda2: l1,
        comparison_kernel: kernel,
        comparison_surjective,
        orders_match,
    })
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// The scalar by which `sp3(E) -> sp2(E) (x) E -> sp3(E)` acts, where the
/// first map is `xyz -> xy (x) z + xz (x) y + yz (x) x`.
pub fn sp3_roundtrip(e: &FgAbGroup) -> Result<Int> {
    if !e.is_free() {
        return Err(Error::NonFree);
    }
    let n = e.free_rank();
    if n == 0 || n > 4 {
        return Err(Error::Hypothesis(alloc::format!("rank {} outside 1..=4", n)));
    }
    let s3 = multisets(n, 3);
    let s2 = multisets(n, 2);
    let mid: Vec<(usize, usize)> = (0..s2.len()).flat_map(|p| (0..n).map(move |i| (p, i))).collect();
    let pos3 = |m: &[usize]| s3.iter().position(|x| x == m).expect("sorted multiset");
    let pos_mid = |pair: &[usize], i: usize| {
        let p = s2.iter().position(|x| x == pair).expect("sorted multiset");
        p * n + i
    };
    // Comultiplication, one row per cubic monomial.
    let comult: Vec<Vector> = s3
        .iter()
        .map(|m| {
            let mut v = alloc::vec![Int::ZERO; mid.len()];
            for drop in 0..3 {
                let mut pair = m.clone();
                let z = pair.remove(drop);
                v[pos_mid(&pair, z)] += &Int::ONE;
            }
            v
        })
        .collect();
    // Multiplication, one row per basis element of sp2 (x) E.
    let mult: Vec<Vector> = mid
        .iter()
        .map(|&(p, i)| {
            let mut m = s2[p].clone();
            m.push(i);
            m.sort_unstable();
            unit(s3.len(), pos3(&m))
        })
        .collect();
    let mut scalar: Option<Int> = None;
    for (row, c) in comult.iter().enumerate() {
        let image = crate::intlat::apply(&mult, c, s3.len());
        for (col, x) in image.iter().enumerate() {
            if col != row && !x.is_zero() {
                return Err(Error::Hypothesis("composite is not diagonal".into()));
            }
        }
        match &scalar {
            None => scalar = Some(image[row].clone()),
            Some(s) if *s != image[row] => {
                return Err(Error::Hypothesis("composite is not a scalar".into()));
            }
            _ => {}
        }
    }
    Ok(scalar.expect("nonempty basis"))
}
