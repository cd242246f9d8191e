//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits nonzero if a criterion fails in a way not recorded in
//! `KNOWN_FAILURES`, or if a known failure stops matching its recorded
//! counterexample.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fgring::corpus;
use fgring::runner::{render_machine, run, Report, RunOptions, Status};
use fgring::scenario::parse_scenario;
use fgring_core::abelfun::{
    functor_eval, koszul_antisym, l1_sp2_sequence_check, quadratic_sequences_check, sp3_roundtrip, FgAbGroup, FunctorKind,
};
use fgring_core::abelhom::{bar_oracle_upto, h3_tensor_lambda2, homology_upto};
use fgring_core::intlat::vector;
use fgring_core::magnus::TruncatedSeries;
use fgring_core::quotlab::{build_cocycle, cocycle_identity_check, inverse_symmetry_check, CosetTable};
use fgring_core::subgroup::Perm;
use fgring_core::words::{left_normed, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail, each with the check that pins down exactly
/// how it fails.
const KNOWN_FAILURES: &[usize] = &[9];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a known failure: the failure matches its documented shape.
    documented: bool,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), documented: false }
}

fn suite(name: &str) -> Report {
    let text = corpus::bundled(name).expect("bundled scenario");
    let sc = parse_scenario(text).expect("bundled scenario parses");
    run(&sc, name, RunOptions { jobs: 4, ..RunOptions::default() }).expect("bundled scenario runs")
}

fn random_word(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))))
}

fn magnus_homomorphism() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..1000 {
        let (lu, lv) = (rng.gen_range(0..12), rng.gen_range(0..12));
        let u = random_word(&mut rng, 3, lu);
        let v = random_word(&mut rng, 3, lv);
        let lhs = TruncatedSeries::expand(&u.mul(&v), 3, 5);
        let rhs = TruncatedSeries::expand(&u, 3, 5).mul(&TruncatedSeries::expand(&v, 3, 5));
        bad += usize::from(lhs != rhs);
    }
    let t = start.elapsed();
    ok(bad == 0 && t < Duration::from_secs(10), format!("1000 pairs, {} mismatches, {:.2} s", bad, t.as_secs_f64()))
}

/// Left-normed basic commutators `[x_a, x_b, x_c, ...]` with `a > b <= c <= ...`.
fn left_normed_basic(rank: u32, weight: usize) -> Vec<Word> {
    fn tails(rank: u32, from: u32, len: usize) -> Vec<Vec<u32>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        (from..rank)
            .flat_map(|i| tails(rank, i, len - 1).into_iter().map(move |mut t| {
                t.insert(0, i);
                t
            }))
            .collect()
    }
    let mut out = Vec::new();
    for a in 0..rank {
        for b in 0..a {
            for t in tails(rank, b, weight - 2) {
                let mut idx = vec![a, b];
                idx.extend(t);
                out.push(left_normed(&idx.iter().map(|&i| Word::gen(i)).collect::<Vec<_>>()));
            }
        }
    }
    out
}

fn filtration() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 1..=4usize {
        let ws: Vec<Word> = if k == 1 { (0..3).map(Word::gen).collect() } else { left_normed_basic(3, k) };
        for w in ws {
            let s = TruncatedSeries::expand(&w, 3, 6).sub(&TruncatedSeries::one(3, 6));
            checked += 1;
            if s.min_degree() != Some(k) {
                bad.push(k);
            }
        }
    }
    ok(bad.is_empty(), format!("{} commutators of weight <= 4, {} with the wrong degree", checked, bad.len()))
}

fn member_tasks(r: &Report) -> (usize, usize, usize, usize) {
    let ms: Vec<_> = r.tasks.iter().filter(|t| t.subject.ends_with("expect member")).collect();
    let member = ms.iter().filter(|t| t.field("verdict") == Some("member")).count();
    let verified = ms.iter().filter(|t| t.field("verified") != Some("false")).count();
    let non = ms.iter().filter(|t| t.field("verdict") == Some("non-member")).count();
    (ms.len(), member, verified, non)
}

fn gamma3_inclusion() -> Outcome {
    let r = suite("gamma3");
    let (n, m, v, non) = member_tasks(&r);
    ok(n >= 20 && m == n && v == n && non == 0, format!("{} generators, {} member, {} verified, {} non-member", n, m, v, non))
}

fn derived_inclusion() -> Outcome {
    // Random commutators of conjugates of [x1,x2]^(+-1), which lie in R meet S.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let names = ["x1", "x2", "x3", "x4"];
    let conj = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..3);
        let u: String = (0..len)
            .map(|_| format!("{}^{}", names[rng.gen_range(0..4)], if rng.gen_bool(0.5) { "1" } else { "-1" }))
            .collect::<Vec<_>>()
            .join("*");
        let c = if rng.gen_bool(0.5) { "[x1,x2]" } else { "[x2,x1]" };
        if u.is_empty() {
            c.to_string()
        } else {
            format!("({})^-1*{}*({})", u, c, u)
        }
    };
    let mut text = String::from(
        "group F rank 4 names x1 x2 x3 x4\n\
         subgroup R closure x1 quotient free_hom { x1 -> 1 }\n\
         subgroup S closure x2 quotient free_hom { x2 -> 1 }\n\
         subgroup RS closure [x1,x2] quotient meet R S\n\
         declare RS meet R S\n",
    );
    for _ in 0..50 {
        let (u, v) = (conj(&mut rng), conj(&mut rng));
        writeln!(text, "task member [{},{}] in R S expect member", u, v).unwrap();
    }
    text.push_str("task member x4 in R S degree 2 expect nonmember\n");
    let sc = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => return ok(false, format!("scenario rejected: {}", e)),
    };
    let r = run(&sc, "derived-random", RunOptions { jobs: 4, ..RunOptions::default() }).expect("runs");
    let (n, m, v, _) = member_tasks(&r);
    let x4 = r.tasks.last().map(|t| t.field("verdict") == Some("non-member")).unwrap_or(false);
    ok(
        n == 50 && m == 50 && v == 50 && x4,
        format!("{} of {} commutators member ({} verified); x4 non-member at degree 2: {}", m, n, v, x4),
    )
}

fn commutator_products() -> Outcome {
    let r = suite("products");
    let ps: Vec<_> = r.tasks.iter().filter(|t| t.kind == "product").collect();
    let hw = ps.iter().any(|t| t.subject.contains("hall_witt"));
    let non = ps.iter().filter(|t| t.field("verdict") == Some("non-member")).count();
    let exact = ps.iter().filter(|t| t.field("verdict") == Some("member")).count();
    let rejected = ps.iter().filter(|t| t.field("rejected").is_some()).count();
    ok(
        ps.len() >= 5 && hw && non == 0 && exact >= 1 && rejected == 0,
        format!("{} inputs (Hall-Witt: {}), {} non-member, {} exact member at radius 4", ps.len(), hw, non, exact),
    )
}

fn example_rank() -> Outcome {
    let g = h3_tensor_lambda2(3, 2);
    ok(g == FgAbGroup::free(1), format!("H_3(Z^3) (x) lambda2(Z^2) = {}", g))
}

fn koszul() -> Outcome {
    let mut groups: Vec<(usize, Vec<Vec<i64>>)> = (1..=12).map(|n| (1, vec![vec![n]])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let rows = rng.gen_range(0..=n + 1);
        groups.push((n, (0..rows).map(|_| (0..n).map(|_| rng.gen_range(-6..=6)).collect()).collect()));
    }
    let mut bad = Vec::new();
    for (n, rows) in &groups {
        let rels: Vec<_> = rows.iter().map(|r| vector(r)).collect();
        let a = FgAbGroup::from_presentation(*n, rels.clone()).expect("valid presentation");
        let k = koszul_antisym(*n, &rels).expect("koszul");
        let l1 = functor_eval(FunctorKind::L1Lambda2, &a).expect("l1").group;
        let (s9, s10) = quadratic_sequences_check(&a).expect("sequences");
        let s11 = l1_sp2_sequence_check(*n, &rels).expect("sequence");
        let good = k.h0_matches && k.orders_match && k.l1_lambda2 == l1 && s9.exact && s10.exact && s11.exact;
        if !good {
            bad.push(a.to_string());
        }
    }
    ok(bad.is_empty(), format!("{} groups, failures: {:?}", groups.len(), bad))
}

fn sp3() -> Outcome {
    let ms: Vec<String> = (1..=3)
        .map(|n| sp3_roundtrip(&FgAbGroup::free(n)).map_or_else(|e| e.to_string(), |m| m.to_string()))
        .collect();
    ok(ms.iter().all(|m| m == "3"), format!("multipliers for ranks 1..3: {}", ms.join(", ")))
}

fn cocycle_lab() -> Outcome {
    let cases: [(&str, usize, Vec<Vec<Vec<u32>>>); 3] = [
        ("Z/2", 2, vec![vec![vec![0, 1]]]),
        ("Z/2 x Z/2", 4, vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]]),
        ("S3", 3, vec![vec![vec![0, 1]], vec![vec![0, 1, 2]]]),
    ];
    // Pairs where the inverse-symmetry element is not in [R, R], for every
    // transversal tried.
    let documented = [0usize, 6, 20];
    let mut identity_holds = true;
    let mut stable = true;
    let mut counts = Vec::new();
    for (_, degree, cycles) in &cases {
        let perms: Vec<Perm> = cycles.iter().map(|c| Perm::from_cycles(*degree, c).expect("perm")).collect();
        let mut seen = Vec::new();
        let tables = std::iter::once(CosetTable::new(*degree, perms.clone()))
            .chain((0..5).map(|s| CosetTable::randomized(*degree, perms.clone(), s)));
        for t in tables {
            let w = build_cocycle(&t.expect("table")).expect("cocycle");
            identity_holds &= cocycle_identity_check(&w).holds();
            seen.push(inverse_symmetry_check(&w).expect("check").nonzero.len());
        }
        stable &= seen.iter().all(|&c| c == seen[0]);
        counts.push(seen[0]);
    }
    let symmetric = counts.iter().all(|&c| c == 0);
    let pairs = counts.iter().zip([4, 16, 36]).map(|(c, p)| format!("{} of {}", c, p)).collect::<Vec<_>>();
    let detail = format!(
        "cocycle identity {}; inverse-symmetry element outside [R,R] on {} pairs (Z/2, Z/2 x Z/2, S3); \
         unchanged under 5 random transversals: {}",
        if identity_holds { "holds" } else { "FAILS" },
        pairs.join(", "),
        stable
    );
    Outcome { pass: identity_holds && stable && symmetric, detail, documented: identity_holds && stable && counts == documented }
}

fn square_suite() -> Outcome {
    let r = suite("square");
    let plain: Vec<_> = r.tasks.iter().filter(|t| t.subject.contains("over R F F")).collect();
    let established = plain
        .iter()
        .filter(|t| t.field("hypothesis") == Some("established") && t.field("verdict") == Some("member"))
        .count();
    let mirrored: Vec<_> = r.tasks.iter().filter(|t| !t.subject.contains("over R F F")).collect();
    let mirror_ok = mirrored.iter().filter(|t| t.field("mirror_verified") == Some("true")).count();
    ok(
        plain.len() >= 5 && established == plain.len() && !mirrored.is_empty() && mirror_ok == mirrored.len(),
        format!(
            "{}/{} elements with both memberships, {}/{} mirrored certificates verified",
            established,
            plain.len(),
            mirror_ok,
            mirrored.len()
        ),
    )
}

fn inclusion() -> Outcome {
    let r = suite("inclusions");
    let count = |ideal: &str| {
        r.tasks
            .iter()
            .filter(|t| t.subject.contains(ideal) && t.status == Status::Pass && t.field("verified") == Some("true"))
            .count()
    };
    let (a, b) = (count("in R S f R"), count("in R f S R"));
    ok(a >= 10 && b >= 10 && !r.failed(), format!("{} generators member in r s f r, {} in r f s r", a, b))
}

fn homology_agreement() -> Outcome {
    let groups: [&[usize]; 11] = [&[1], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2]];
    let results: Vec<(String, bool)> = std::thread::scope(|s| {
        let hs: Vec<_> = groups
            .iter()
            .map(|orders| {
                s.spawn(move || {
                    let raw: Vec<i64> = orders.iter().map(|&d| d as i64).collect();
                    let g = FgAbGroup::from_factors(&raw);
                    let bar = bar_oracle_upto(orders, 4);
                    let agree = bar.map_or(false, |b| b == homology_upto(&g, 4));
                    (g.to_string(), agree)
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("oracle thread")).collect()
    });
    let bad: Vec<_> = results.iter().filter(|(_, a)| !a).map(|(g, _)| g.clone()).collect();
    ok(bad.is_empty(), format!("{} groups of order <= 8, degrees 0..4; disagreements: {:?}", results.len(), bad))
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let mut outputs = Vec::new();
    for (jobs, seed) in [(1, 0), (4, 0), (1, 99), (4, 99)] {
        let reports: Vec<Report> = corpus::expand("full")
            .expect("bundled")
            .into_iter()
            .map(|(n, s)| run(&s, n, RunOptions { jobs, seed, ..RunOptions::default() }).expect("runs"))
            .collect();
        outputs.push(render_machine(&reports, false));
    }
    let t = start.elapsed() / 4;
    let same = outputs.iter().all(|o| *o == outputs[0]);
    let tasks = outputs[0].lines().count();
    ok(
        same && t < Duration::from_secs(300),
        format!("{} tasks, identical across jobs 1/4 and two seeds: {}, {:.2} s per run", tasks, same, t.as_secs_f64()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("Magnus expansion is multiplicative", magnus_homomorphism),
        ("filtration degree of basic commutators", filtration),
        ("gamma_3(R) inside D(F, r f r)", gamma3_inclusion),
        ("commutators of R meet S inside D(F, r s)", derived_inclusion),
        ("commutator products over R and S", commutator_products),
        ("H_3(Z^3) (x) lambda2(Z^2) is Z", example_rank),
        ("Koszul complexes and quadratic sequences", koszul),
        ("sp3 round trip is multiplication by 3", sp3),
        ("cocycle lab", cocycle_lab),
        ("square-of-commutator memberships", square_suite),
        ("inclusion in r s f r and r f s r", inclusion),
        ("Kunneth assembly against the bar complex", homology_agreement),
        ("determinism of the full suite", determinism),
    ];
    let mut unexpected = false;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let o = f();
        let known = KNOWN_FAILURES.contains(&n);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) if o.documented => "FAIL (known)",
            (false, _) => "FAIL",
        };
        println!("criterion {:>2}: {:<13} {} -- {}", n, tag, name, o.detail);
        unexpected |= if known { o.pass || !o.documented } else { !o.pass };
    }
    if unexpected {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    } else {
        println!("acceptance: all criteria as recorded");
        ExitCode::SUCCESS
    }
}
