use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::*;
use crate::subgroup::{Quotient, SubgroupHandle};
use crate::words::free_generators;

fn perm(n: usize, cycles: &[&[u32]]) -> Perm {
    let cs: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(n, &cs).unwrap()
}

fn z2() -> CosetTable {
    CosetTable::new(2, alloc::vec![perm(2, &[&[0, 1]])]).unwrap()
}

fn klein() -> CosetTable {
    CosetTable::new(4, alloc::vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap()
}

fn s3_perms() -> Vec<Perm> {
    alloc::vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]
}

fn x(i: u32) -> Word {
    Word::gen(i)
}

#[test]
fn cyclic_of_order_two() {
    let ct = z2();
    assert_eq!(ct.order(), 2);
    assert_eq!(ct.rep(1), &x(0));
    let w = build_cocycle(&ct).unwrap();
    assert_eq!(w.at(1, 1), &x(0).pow(2));
    for g in 0..2 {
        assert!(w.at(0, g).is_identity() && w.at(g, 0).is_identity());
    }
    let c = cocycle_identity_check(&w);
    assert_eq!(c.triples, 8);
    assert!(c.holds());
    assert!(inverse_symmetry_element(&w, 1, 1).is_identity());
    assert!(inverse_symmetry_check(&w).unwrap().holds());
}

/// Fox derivatives of `w` pushed into the group ring of the quotient. For
/// `w` in `R` they all vanish exactly when `w` lies in `[R,R]`.
fn fox_in_quotient(ct: &CosetTable, w: &Word) -> Vec<BTreeMap<usize, i64>> {
    let mut out = alloc::vec![BTreeMap::new(); ct.rank()];
    let mut prefix = Word::identity();
    for &l in w.letters() {
        let next = prefix.mul_letter(l);
        let (at, sign) = if l.inv { (ct.element_of(&next), -1) } else { (ct.element_of(&prefix), 1) };
        *out[l.gen as usize].entry(at).or_insert(0) += sign;
        prefix = next;
    }
    for d in &mut out {
        d.retain(|_, c| *c != 0);
    }
    out
}

fn in_derived(ct: &CosetTable, w: &Word) -> bool {
    ct.in_kernel(w) && fox_in_quotient(ct, w).iter().all(|d| d.is_empty())
}

#[test]
fn cocycle_identity_on_klein_and_symmetric_group() {
    let w = build_cocycle(&klein()).unwrap();
    let c = cocycle_identity_check(&w);
    assert_eq!(c.triples, 64);
    assert!(c.holds());

    let ct = CosetTable::new(3, s3_perms()).unwrap();
    assert_eq!(ct.order(), 6);
    let w = build_cocycle(&ct).unwrap();
    for g in 0..6 {
        for h in 0..6 {
            assert!(ct.in_kernel(w.at(g, h)));
        }
    }
    assert_eq!(cocycle_identity_check(&w).triples, 216);
    assert!(cocycle_identity_check(&w).holds());
}

#[test]
fn inverse_symmetry_fails_beyond_order_two() {
    let ct = klein();
    let w = build_cocycle(&ct).unwrap();
    let (g, h) = (ct.element_of(&x(0)), ct.element_of(&x(1)));
    // W(x,y) is trivial, so the element is W(y,x) = [y,x].
    assert!(w.at(g, h).is_identity());
    let e = inverse_symmetry_element(&w, g, h);
    assert_eq!(e, commutator(&x(1), &x(0)));
    assert!(!in_derived(&ct, &e));
    let l = inverse_symmetry_check(&w).unwrap();
    assert!(l.doubling_consistent);
    assert!(l.nonzero.contains(&(g, h)));
    assert!(!l.holds());

    let s3 = CosetTable::new(3, s3_perms()).unwrap();
    let w = build_cocycle(&s3).unwrap();
    let l = inverse_symmetry_check(&w).unwrap();
    assert_eq!(l.pairs, 36);
    for g in 0..6 {
        for h in 0..6 {
            let zero = !l.nonzero.contains(&(g, h));
            assert_eq!(zero, in_derived(&s3, &inverse_symmetry_element(&w, g, h)), "({},{})", g, h);
        }
    }
    assert!(!l.nonzero.is_empty());
}

#[test]
fn bad_transversals_are_rejected() {
    let ct = z2();
    assert!(ct.clone().with_transversal(alloc::vec![x(0).pow(2), x(0)]).is_err());
    assert!(ct.clone().with_transversal(alloc::vec![Word::identity(), x(0).pow(2)]).is_err());
    let ok = ct.with_transversal(alloc::vec![Word::identity(), x(0).inverse()]).unwrap();
    let w = build_cocycle(&ok).unwrap();
    assert_eq!(w.at(1, 1), &x(0).pow(-2));
    assert!(cocycle_identity_check(&w).holds());
}

fn killing(name: &str, rank: usize, killed: &[u32]) -> SubgroupHandle {
    let images = (0..rank as u32).map(|i| if killed.contains(&i) { Word::identity() } else { x(i) }).collect();
    SubgroupHandle::new(name, killed.iter().map(|&i| x(i)).collect(), Quotient::FreeHom(images))
}

#[test]
fn square_suite_on_derived_commutator() {
    let mut ctx = Context::with_rank(2);
    ctx.add_subgroup(killing("R", 2, &[0])).unwrap();
    let cfg = Config::default();
    let r1 = WordExpr::lit(x(0));
    let r2 = WordExpr::conj(WordExpr::lit(x(0)), WordExpr::lit(x(1)));
    let a = WordExpr::comm(WordExpr::comm(r1, r2), WordExpr::lit(x(1)));
    let rep = square_membership_suite(&ctx, "R", "F", "F", &a, &cfg).unwrap();
    assert!(rep.hypothesis_established(), "{:?}", rep.hypothesis);
    assert!(rep.conclusion.is_member(), "{:?}", rep.conclusion);
    assert_eq!(rep.mirror_verified, Some(true));

    let rep = square_membership_suite(&ctx, "R", "F", "F", &WordExpr::lit(Word::identity()), &cfg).unwrap();
    assert!(rep.hypothesis.is_member() && rep.conclusion.is_member());

    let rep = square_membership_suite(&ctx, "R", "F", "F", &WordExpr::lit(x(1)), &cfg).unwrap();
    assert!(!rep.hypothesis_established());
}

fn example_context() -> Context {
    let mut ctx = Context::with_rank(5);
    ctx.add_subgroup(killing("R", 5, &[0, 1, 2])).unwrap();
    let images = (0..5).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
    let gens = alloc::vec![
        commutator(&x(0), &x(1)),
        commutator(&x(1), &x(2)),
        commutator(&x(0), &x(2)),
        x(3),
        x(4)
    ];
    ctx.add_subgroup(SubgroupHandle::new("S", gens, Quotient::FreeAbelian(images))).unwrap();
    ctx
}

#[test]
fn commutator_products() {
    let ctx = example_context();
    let cfg = Config::default();
    let w = commutator_product_word(&ctx, "R", "S", &[], &x(3), &x(4)).unwrap();
    assert!(w.eval().is_identity());
    assert!(commutator_product_check(&ctx, "R", "S", &w, &cfg).unwrap().is_member());

    let r = commutator(&x(0), &x(1));
    let w = commutator_product_word(&ctx, "R", "S", &[(r.clone(), r.clone())], &x(3), &x(4)).unwrap();
    let v = commutator_product_check(&ctx, "R", "S", &w, &cfg).unwrap();
    assert!(v.is_member(), "{:?}", v);

    assert!(commutator_product_word(&ctx, "R", "S", &[(x(0), r.clone())], &x(3), &x(4)).is_err());
    assert!(commutator_product_word(&ctx, "R", "S", &[(r.clone(), x(0))], &x(3), &x(4)).is_err());
    assert!(commutator_product_word(&ctx, "R", "S", &[(r, x(3))], &x(3), &x(4)).is_err());
}

#[test]
fn hall_witt_tuples_multiply_to_one() {
    let gens = free_generators(3);
    for (a, b, c) in [(&gens[0], &gens[1], &gens[2]), (&gens[2], &gens[0], &gens[0])] {
        let t = hall_witt_tuples(a, b, c);
        let p = t.iter().fold(Word::identity(), |acc, (r, s)| acc.mul(&commutator(r, s)));
        assert!(p.is_identity());
    }
    let ctx = example_context();
    let (a, b, c) = (commutator(&x(0), &x(1)), commutator(&x(1), &x(2)), commutator(&x(0), &x(2)));
    let t = hall_witt_tuples(&a, &b, &c);
    let w = commutator_product_word(&ctx, "R", "S", &t, &x(3), &x(4)).unwrap();
    let v = commutator_product_check(&ctx, "R", "S", &w, &Config::default()).unwrap();
    assert!(!v.is_non_member(), "{:?}", v.label());
}


#[test]
fn randomized_transversals_agree() {
    for seed in 0..5 {
        let ct = CosetTable::randomized(3, s3_perms(), seed).unwrap();
        assert!(ct.rep(0).is_identity());
        for g in 0..ct.order() {
            assert_eq!(ct.element_of(ct.rep(g)), g);
        }
        let w = build_cocycle(&ct).unwrap();
        assert!(cocycle_identity_check(&w).holds());
        let l = inverse_symmetry_check(&w).unwrap();
        assert!(l.doubling_consistent && !l.holds());
        for &(g, h) in &l.nonzero {
            assert!(!in_derived(&ct, &inverse_symmetry_element(&w, g, h)));
        }
    }
    let a = CosetTable::randomized(3, s3_perms(), 7).unwrap();
    let b = CosetTable::randomized(3, s3_perms(), 7).unwrap();
    assert!((0..6).all(|g| a.rep(g) == b.rep(g)));
}
