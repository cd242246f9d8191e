use fgring_core::grring::{sum, RingElement};
use fgring_core::idealeng::{ideal_shadow, Atom, Context, IdealExpr};
use fgring_core::intlat::{snf, vector, IntLattice, Vector};
use fgring_core::magnus::{MonomialBasis, TruncatedSeries};
use fgring_core::num::Int;
use fgring_core::subgroup::{Quotient, SubgroupHandle};
use fgring_core::words::{Letter, Word};
use proptest::prelude::*;

fn rows(dim: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim), 0..=max_rows)
}

fn lattice(dim: usize, rs: &[Vec<i64>]) -> IntLattice {
    IntLattice::new(dim, &rs.iter().map(|r| vector(r)).collect::<Vec<_>>()).unwrap()
}

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|c| c.to_string().parse().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn meet_and_join_are_lattice_operations(dim in 1usize..=6, a in rows(6, 4), b in rows(6, 4)) {
        let trim = |rs: &[Vec<i64>]| rs.iter().map(|r| r[..dim].to_vec()).collect::<Vec<_>>();
        let (x, y) = (lattice(dim, &trim(&a)), lattice(dim, &trim(&b)));
        let (m, j) = (x.meet(&y).unwrap(), x.join(&y).unwrap());
        prop_assert_eq!(&m, &y.meet(&x).unwrap());
        prop_assert_eq!(&j, &y.join(&x).unwrap());
        prop_assert_eq!(x.join(&m).unwrap(), x.clone());
        prop_assert_eq!(x.meet(&j).unwrap(), x.clone());
        prop_assert!(j.contains_lattice(&x) && x.contains_lattice(&m));
    }

    #[test]
    fn membership_agrees_with_small_coefficient_search(
        gens in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=3),
        coeffs in proptest::collection::vec(-3i64..=3, 3),
        target in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let l = lattice(3, &gens);
        // A small combination is always a member.
        let mut v = vec![0i64; 3];
        for (g, c) in gens.iter().zip(&coeffs) {
            for k in 0..3 { v[k] += c * g[k]; }
        }
        prop_assert!(l.member(&vector(&v)).unwrap());
        // A target reachable by brute force is a member; a member has
        // coordinates that rebuild it.
        let n = gens.len() as u32;
        let found = (0..7i64.pow(n)).any(|mut code| {
            let mut w = vec![0i64; 3];
            for g in &gens {
                let c = code % 7 - 3;
                code /= 7;
                for k in 0..3 { w[k] += c * g[k]; }
            }
            w == target
        });
        let member = l.member(&vector(&target)).unwrap();
        if found { prop_assert!(member); }
        if member {
            let xs = l.coordinates(&vector(&target)).unwrap();
            let mut w = vec![Int::ZERO; 3];
            for (x, b) in xs.iter().zip(l.basis()) {
                for k in 0..3 { w[k] = &w[k] + &(x * &b[k]); }
            }
            prop_assert_eq!(w, vector(&target));
        }
    }

    #[test]
    fn smith_form_is_invariant(
        m in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 3),
        ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 0..8),
    ) {
        let mat: Vec<Vector> = m.iter().map(|r| vector(r)).collect();
        let base = snf(&mat);
        let mut t = m.clone();
        for (i, j, c, on_rows) in ops {
            if i == j { continue; }
            if on_rows {
                // add c * row j to row i, then swap them
                for k in 0..3 { t[i][k] += c * t[j][k]; }
                t.swap(i, j);
            } else {
                for r in t.iter_mut() { r[i] += c * r[j]; r.swap(i, j); }
            }
        }
        let tm: Vec<Vector> = t.iter().map(|r| vector(r)).collect();
        prop_assert_eq!(snf(&tm), base);
    }

    #[test]
    fn magnus_expansion_is_multiplicative(u in word(3, 12), v in word(3, 12)) {
        let e = |w: &Word| TruncatedSeries::expand(w, 3, 5);
        prop_assert_eq!(e(&u.mul(&v)), e(&u).mul(&e(&v)));
        prop_assert_eq!(e(&u).mul(&e(&u.inverse())), TruncatedSeries::one(3, 5));
    }

    #[test]
    fn shadows_contain_explicit_ideal_elements(
        parts in proptest::collection::vec((word(2, 3), word(2, 3), word(2, 3), -3i64..=3, any::<bool>()), 1..4),
    ) {
        // R is the normal closure of x1 in F(x1, x2); each part is
        // c * (r1 - 1)(u - 1)(r2 - 1) with r1, r2 conjugates of x1^{+-1}.
        let ctx = context();
        let x1 = Word::gen(0);
        let terms: Vec<RingElement> = parts.iter().map(|(a, u, b, c, inv)| {
            let r1 = if *inv { x1.inverse() } else { x1.clone() }.conj(a);
            let r2 = x1.conj(b);
            (&(&RingElement::delta(&r1) * &RingElement::delta(u)) * &RingElement::delta(&r2)).scale(&Int::from(*c))
        }).collect();
        let v = sum(&terms);
        for d in 1..=4 {
            let s = ideal_shadow(&rfr(), &ctx, d, 10_000).unwrap();
            prop_assert!(s.contains(&v).unwrap());
        }
    }
}

fn context() -> Context {
    let mut ctx = Context::with_rank(2);
    let q = Quotient::FreeHom(vec![Word::identity(), Word::gen(1)]);
    ctx.add_subgroup(SubgroupHandle::new("R", vec![Word::gen(0)], q)).unwrap();
    ctx
}

fn rfr() -> IdealExpr {
    IdealExpr::product(vec![IdealExpr::named("R"), IdealExpr::atom(Atom::Whole), IdealExpr::named("R")])
}

#[test]
fn shadows_are_monotone_in_degree() {
    let ctx = context();
    let exprs = [
        IdealExpr::named("R"),
        IdealExpr::product(vec![IdealExpr::named("R"), IdealExpr::atom(Atom::Whole)]),
        IdealExpr::product(vec![IdealExpr::atom(Atom::Whole), IdealExpr::named("R")]),
        rfr(),
        IdealExpr::sum(vec![rfr(), IdealExpr::product(vec![IdealExpr::named("R"), IdealExpr::named("R")])]),
    ];
    for e in &exprs {
        for d in 2..=5 {
            let hi = ideal_shadow(e, &ctx, d, 10_000).unwrap();
            let lo = ideal_shadow(e, &ctx, d - 1, 10_000).unwrap();
            let k = MonomialBasis::new(2, d).offset(d);
            assert_eq!(hi.lattice.project(k), lo.lattice, "{:?} at degree {}", e, d);
        }
    }
}

#[test]
fn snf_of_a_known_matrix() {
    let m: Vec<Vector> = [[2i64, 4, 4], [-6, 6, 12], [10, -4, -16]].iter().map(|r| vector(r)).collect();
    assert_eq!(to_i64(&snf(&m)), vec![2, 6, 12]);
}
