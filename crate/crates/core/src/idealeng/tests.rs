use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::intlat::IntLattice;
use crate::magnus::{MonomialBasis, TruncatedSeries};
use crate::parse;
use crate::subgroup::{Quotient, SubgroupHandle};
use crate::words::{ball, free_generators, Word, WordExpr};

fn w(s: &[i32]) -> Word {
    Word::from_signed(s)
}

fn lit(s: &[i32]) -> WordExpr {
    WordExpr::lit(w(s))
}

/// Normal closure of the listed generators, as the kernel of the retraction
/// killing them.
fn killing(name: &str, rank: usize, killed: &[u32]) -> SubgroupHandle {
    let images = (0..rank as u32)
        .map(|i| if killed.contains(&i) { Word::identity() } else { Word::gen(i) })
        .collect();
    let gens = killed.iter().map(|&i| Word::gen(i)).collect();
    SubgroupHandle::new(name, gens, Quotient::FreeHom(images))
}

fn ctx2() -> Context {
    let mut ctx = Context::with_rank(2);
    ctx.add_subgroup(killing("R", 2, &[0])).unwrap();
    ctx.add_subgroup(killing("S", 2, &[1])).unwrap();
    ctx
}

fn ideal(text: &str, ctx: &Context) -> IdealExpr {
    parse::ideal(text, |t| ctx.resolve(t)).unwrap()
}

#[test]
fn commutator_in_intersection_lies_in_rs() {
    let ctx = ctx2();
    let e = ideal("rs", &ctx);
    // Both [x1, x2] and [x1, x2^2] lie in R meet S.
    let u = WordExpr::comm(lit(&[1]), lit(&[2]));
    let c = WordExpr::comm(u, WordExpr::comm(lit(&[1]), lit(&[2, 2])));
    let v = RingElement::delta(&c.eval());
    let verdict = decide(&v, &e, &ctx, &Config::default()).unwrap();
    match verdict {
        Verdict::Member(cert) => {
            assert!(cert.verify(&v, &ctx).unwrap());
            assert!(cert.mirror().verify(&v.involution(), &ctx).unwrap());
        }
        other => panic!("expected member, got {:?}", other),
    }
}

#[test]
fn generator_is_not_in_square_of_augmentation() {
    let ctx = ctx2();
    let v = RingElement::delta(&w(&[1]));
    let verdict = decide(&v, &ideal("f^2", &ctx), &ctx, &Config::default()).unwrap();
    match verdict {
        Verdict::NonMember(Witness::Shadow { degree, residual }) => {
            assert_eq!(degree, 1);
            assert!(!residual.is_empty());
        }
        other => panic!("expected shadow separation, got {:?}", other),
    }
}

#[test]
fn nested_commutator_lies_in_rfr() {
    let mut ctx = Context::with_rank(3);
    ctx.add_subgroup(killing("R", 3, &[0])).unwrap();
    let r1 = lit(&[1]);
    let r2 = WordExpr::conj(lit(&[1]), lit(&[2]));
    let r3 = WordExpr::conj(lit(&[-1]), lit(&[3, 2]));
    let c = WordExpr::comm(WordExpr::comm(r1, r2), r3);
    let e = ideal("rfr", &ctx);
    let v = RingElement::delta(&c.eval());
    let verdict = decide_word(&c, &e, &ctx, &Config::default()).unwrap();
    let cert = match verdict {
        Verdict::Member(c) => c,
        other => panic!("expected member, got {:?}", other),
    };
    assert!(cert.verify(&v, &ctx).unwrap());
    // x1 - 1 is in r but not in r r.
    let x = RingElement::delta(&w(&[1]));
    assert!(decide(&x, &ideal("rr", &ctx), &ctx, &Config::default()).unwrap().is_non_member());
}

#[test]
fn exact_descent_rejects_with_quotient_residue() {
    let ctx = ctx2();
    // x1 x2 - 1 is in f but not in r: its image in Z[F/R] is x2 - 1.
    let v = RingElement::delta(&w(&[1, 2]));
    let cfg = Config { d_max: 0, ..Config::default() };
    match decide(&v, &ideal("r", &ctx), &ctx, &cfg).unwrap() {
        Verdict::NonMember(Witness::Quotient { level, residue, .. }) => {
            assert_eq!(level, 0);
            assert_eq!(residue, RingElement::delta(&w(&[2])));
        }
        other => panic!("expected a quotient witness, got {:?}", other),
    }
}

#[test]
fn sums_use_per_summand_descent() {
    let ctx = ctx2();
    let e = ideal("rr + s", &ctx);
    let v = RingElement::delta(&w(&[1, 2, -1]));
    assert!(decide(&v, &e, &ctx, &Config::default()).unwrap().is_member());
    let x = RingElement::delta(&w(&[1]));
    assert!(decide(&x, &e, &ctx, &Config::default()).unwrap().is_non_member());
}

#[test]
fn structural_certificate_for_derived_atom() {
    let mut ctx = Context::with_rank(2);
    ctx.add_subgroup(SubgroupHandle::whole(2)).unwrap();
    // F' has no transversal, so only the word itself can certify this.
    let c = WordExpr::comm(lit(&[1]), lit(&[2]));
    let e = parse::ideal("F'", |t| ctx.resolve(t)).unwrap();
    let verdict = decide_word(&c, &e, &ctx, &Config::default()).unwrap();
    let cert = match verdict {
        Verdict::Member(c) => c,
        other => panic!("expected member, got {:?}", other),
    };
    assert!(cert.verify(&RingElement::delta(&c.eval()), &ctx).unwrap());
}

#[test]
fn unknown_names_are_errors() {
    let ctx = ctx2();
    let e = IdealExpr::named("T");
    let v = RingElement::delta(&w(&[1]));
    assert!(decide(&v, &e, &ctx, &Config::default()).is_err());
}

/// Span of the degree-`d` expansions of `m (r - 1) m'` over a ball.
fn brute_force_shadow(h: &SubgroupHandle, rank: usize, d: usize) -> IntLattice {
    let basis = MonomialBasis::new(rank, d);
    let words = ball(&free_generators(rank), 2, 10_000).unwrap();
    let members: Vec<Word> = ball(&free_generators(rank), 3, 10_000)
        .unwrap()
        .into_iter()
        .filter(|u| h.contains(u) && !u.is_identity())
        .collect();
    let mut gens = Vec::new();
    for r in &members {
        for m in &words {
            for m2 in &words {
                let e = RingElement::delta(r).left_mul_word(m).right_mul_word(m2);
                gens.push(TruncatedSeries::expand_ring(&e, rank, d).to_vector(&basis));
            }
        }
    }
    IntLattice::new(basis.dim(), &gens).unwrap()
}

#[test]
fn single_atom_shadow_matches_brute_force() {
    let ctx = ctx2();
    for d in 1..=2 {
        let sh = ideal_shadow(&IdealExpr::named("R"), &ctx, d, 1000).unwrap();
        assert!(sh.exact);
        let brute = brute_force_shadow(ctx.subgroup("R").unwrap(), 2, d);
        assert_eq!(sh.lattice, brute, "degree {}", d);
    }
}

#[test]
fn shadows_are_sound_and_monotone() {
    let ctx = ctx2();
    let rs = ideal_shadow(&ideal("rs", &ctx), &ctx, 3, 1000).unwrap();
    let r = ideal_shadow(&ideal("r", &ctx), &ctx, 3, 1000).unwrap();
    let f = ideal_shadow(&ideal("f", &ctx), &ctx, 3, 1000).unwrap();
    assert!(r.lattice.contains_lattice(&rs.lattice));
    assert!(f.lattice.contains_lattice(&r.lattice));
    let rs_members = [(w(&[1]), w(&[2])), (w(&[-2, 1, 2]), w(&[1, 2, -1])), (w(&[1, 1]), w(&[2, 1, 2, -1]))];
    for (a, b) in &rs_members {
        let v = (&RingElement::delta(a) * &RingElement::delta(b)).left_mul_word(&w(&[2, -1]));
        assert!(rs.contains(&v).unwrap());
    }
    // (x1 - 1)(x2 - 1) is in r s.
    let v = &RingElement::delta(&w(&[1])) * &RingElement::delta(&w(&[2]));
    assert!(rs.contains(&v).unwrap());
    assert!(!rs.contains(&RingElement::delta(&w(&[1]))).unwrap());
}

#[test]
fn identity_report_on_disjoint_generators() {
    let ctx = ctx2();
    // r meet s = rs + sr for complementary retractions.
    let rep = identity_report(
        &ideal("r", &ctx),
        &ideal("s", &ctx),
        &ideal("rs + sr", &ctx),
        2,
        &[],
        &ctx,
        &Config::default(),
    )
    .unwrap();
    assert!(rep.all_certified);
    assert!(rep.shadow_equal);
    assert!(rep.discrepancy.is_empty());
}

#[test]
fn identity_report_checks_hypotheses() {
    let ctx = ctx2();
    let r = ideal("r", &ctx);
    let hyp = vec![(String::from("R"), String::from("S"))];
    assert!(matches!(
        identity_report(&r, &r, &r, 1, &hyp, &ctx, &Config::default()),
        Err(Error::Containment(_))
    ));
}

#[test]
fn i_subgroup_needs_declared_meets() {
    let mut ctx = Context::with_rank(3);
    ctx.add_subgroup(killing("R", 3, &[0])).unwrap();
    ctx.add_subgroup(killing("S", 3, &[1])).unwrap();
    ctx.add_subgroup(killing("T", 3, &[2])).unwrap();
    let tr = Triple { r: "R".into(), s: "S".into(), t: "T".into() };
    assert!(i_subgroup_generators(&tr, &ctx, 50).is_err());
}

#[test]
fn i_subgroup_generators_for_nested_triple() {
    let mut ctx = Context::with_rank(2);
    ctx.add_subgroup(killing("R", 2, &[0])).unwrap();
    ctx.add_subgroup(SubgroupHandle::whole(2)).unwrap();
    ctx.declare_subset("R", "F").unwrap();
    let tr = Triple { r: "R".into(), s: "F".into(), t: "R".into() };
    let gens = i_subgroup_generators(&tr, &ctx, 20).unwrap();
    assert!(!gens.is_empty());
    let r = ctx.subgroup("R").unwrap();
    assert!(gens.iter().all(|g| r.contains(g)));
}

#[test]
fn derived_atom_shadow_separates() {
    let mut ctx = Context::with_rank(2);
    ctx.add_subgroup(SubgroupHandle::whole(2)).unwrap();
    let e = parse::ideal("F'", |t| ctx.resolve(t)).unwrap();
    let cfg = Config::default();
    // The ideal of F' sits inside f^2, so x1 - 1 separates at degree 1.
    let x = RingElement::delta(&w(&[1]));
    match decide(&x, &e, &ctx, &cfg).unwrap() {
        Verdict::NonMember(Witness::Shadow { degree, .. }) => assert_eq!(degree, 1),
        other => panic!("expected shadow separation, got {:?}", other),
    }
    // (x1 - 1)(x2 - 1) is in f^2 but its degree-2 part X1*X2 is not a
    // commutator, so it is not in the ideal of F'.
    let y = &x * &RingElement::delta(&w(&[2]));
    match decide(&y, &e, &ctx, &cfg).unwrap() {
        Verdict::NonMember(Witness::Shadow { degree, .. }) => assert_eq!(degree, 2),
        other => panic!("expected shadow separation, got {:?}", other),
    }
    // x1 x2 x1^-1 x2^-1 - 1 is a member but has no transversal route: the
    // engine must not claim non-membership.
    let c = RingElement::delta(&w(&[1, 2, -1, -2]));
    assert!(!decide(&c, &e, &ctx, &cfg).unwrap().is_non_member());
}

