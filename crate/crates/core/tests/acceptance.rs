//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Time limits are pinned below; all
//! comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use knotob::algebra::Rational;
use knotob::milnor::{self, magnus, FreeWord, LongitudeSystem};
use knotob::obstruction::{self, triple, Triple};
use knotob::quotient::witness_element;
use knotob::report::{self, PsiState, VerdictStatus};
use knotob::seifert::{self, BlockForm, SeifertMatrix};

type Outcome = Result<String, String>;

fn z(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_derivative_set() -> Outcome {
    let p = triple(3, 5, 17);
    let data = obstruction::obstruction_data(&p).map_err(|e| e.to_string())?;
    let b = obstruction::derivative_set_bounds(&p).map_err(|e| e.to_string())?;
    ensure(data.n == z(127), || format!("n = {}", data.n))?;
    ensure(data.m == z(1), || format!("m = {}", data.m))?;
    ensure(b.lower == z(127) && b.upper == z(127), || {
        format!("bounds {}Z ⊆ S ⊆ {}Z", b.lower, b.upper)
    })?;
    ensure(b.exact, || "exact flag not set".into())?;
    Ok("n = 127, m = 1, S = 127Z exactly".into())
}

fn family_table() -> Outcome {
    let t = obstruction::family_table(1);
    let r = &t.rows;
    ensure(r[0].ratio == z(127) && r[0].matches_closed_form, || "row 1".into())?;
    ensure(r[1].ratio == z(13) && r[1].matches_closed_form, || "row 2".into())?;
    ensure(r[3].ratio == z(-11) && r[3].matches_closed_form, || "row 4".into())?;
    ensure(
        r[2].n == z(44) && r[2].m == z(4) && r[2].ratio == z(11),
        || format!("row 3 computed as {}/{}", r[2].n, r[2].m),
    )?;
    ensure(
        t.discrepancies.len() == 1 && t.discrepancies[0].row == 3 && t.discrepancies[0].closed_form == z(15),
        || format!("discrepancies {:?}", t.discrepancies),
    )?;
    for e in 1..=4 {
        let t = obstruction::family_table(e);
        ensure(t.admissible, || format!("e = {e} not admissible"))?;
        ensure(t.rows.iter().all(|r| r.ratio.abs() > BigInt::one()), || format!("e = {e}"))?;
    }
    Ok("127, 13, -11 match; row 3 = 11 flagged against 15; e = 1..4 admissible".into())
}

fn metaboliser_enumeration() -> Outcome {
    let p: Vec<BigInt> = [3, 5, 17].map(BigInt::from).to_vec();
    let ex1 = BlockForm::with_zero_a(p.clone());
    let a2 = knotob::algebra::matrix::int_matrix(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let ex2 = BlockForm::new(a2, p).map_err(|e| e.to_string())?;
    for (name, bf) in [("example 1", ex1), ("example 2", ex2)] {
        let s = bf.to_seifert().map_err(|e| e.to_string())?;
        let en = seifert::enumerate_metabolisers(&s).map_err(|e| e.to_string())?;
        ensure(en.metabolisers.len() == 8, || format!("{name}: {} metabolisers", en.metabolisers.len()))?;
        for h in &en.metabolisers {
            let ok = seifert::verify_metaboliser(&s, h).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{name}: {:?} fails verification", h.label_string()))?;
        }
        let pairs = seifert::complementary_pairs(&s, &en.metabolisers);
        ensure(pairs.len() == 4, || format!("{name}: {} complementary pairs", pairs.len()))?;
    }
    Ok("8 verified metabolisers and 4 complementary pairs for both examples".into())
}

fn oracle_equivalence() -> Outcome {
    let vals: Vec<i64> = (-10..=-2).chain(2..=10).collect();
    let mut cases = 0;
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                let p = triple(a, b, c);
                let n = obstruction::n_value(&p);
                if n.is_zero() {
                    continue;
                }
                let m = obstruction::m_value(&n, &p).map_err(|e| e.to_string())?;
                let closed = (&n / &m).abs();
                let d_part = obstruction::d_supported_part(&n, &p);
                let k = obstruction::intersection_oracle(&p, &obstruction::default_search_bound(&p))
                    .map_err(|e| format!("{p:?}: {e}"))?;
                ensure(k == closed && d_part == m, || {
                    format!("p = ({a}, {b}, {c}): oracle {k}, n/m {closed}, m {m}, D-part {d_part}")
                })?;
                cases += 1;
            }
        }
    }
    ensure(cases >= 300, || format!("only {cases} cases"))?;
    Ok(format!("{cases} triples, oracle = |n/m| and m = D-supported part"))
}

fn random_admissible(rng: &mut StdRng) -> Triple {
    loop {
        let mut pick = || loop {
            let v = rng.gen_range(-10i64..=10);
            if v != 0 && v != 1 {
                return v;
            }
        };
        let p = triple(pick(), pick(), pick());
        if !obstruction::n_value(&p).is_zero() {
            return p;
        }
    }
}

fn witness_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for _ in 0..50 {
        let p = random_admissible(&mut rng);
        let n = obstruction::n_value(&p);
        let m = obstruction::m_value(&n, &p).map_err(|e| e.to_string())?;
        let w = witness_element(&p).map_err(|e| format!("{p:?}: {e}"))?;
        let expected = -Rational::new(n, m);
        ensure(w.t_minus_id().value() == &expected, || format!("{p:?}"))?;
    }
    Ok("(t - 1)w = -n/m on 50 random triples".into())
}

fn insertion_verdicts() -> Outcome {
    let p = triple(3, 5, 17);
    let all = report::delta_j_patterns();
    let r = report::analyze(&report::preset_example1(&p, &all).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let v = &r.verdicts;
    for (name, x) in [
        ("(0.5,1)", &v.f_05_1),
        ("homotopy ribbon", &v.homotopy_ribbon),
        ("doubly (1)", &v.doubly_one_solvable),
        ("doubly slice", &v.doubly_slice),
        ("(0)-solvable derivative", &v.no_zero_solvable_derivative),
    ] {
        ensure(x.obstructed(), || format!("eight insertions: {name} not obstructed"))?;
    }

    let seven: Vec<_> = all.into_iter().filter(|s| s.to_string() != "δδδ").collect();
    let r = report::analyze(&report::preset_example1(&p, &seven).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let v = &r.verdicts;
    ensure(v.doubly_one_solvable.obstructed() && v.f_1_1.obstructed(), || {
        "seven insertions: doubly (1) not obstructed".into()
    })?;
    ensure(v.f_05_1.status == VerdictStatus::NotAsserted, || {
        format!("seven insertions: (0.5,1) is {:?}", v.f_05_1.status)
    })?;
    let vanishing: Vec<_> = r
        .metabolisers
        .iter()
        .filter(|m| m.psi.state == PsiState::Vanishes)
        .collect();
    ensure(vanishing.len() == 1, || format!("{} vanishing ψ", vanishing.len()))?;
    Ok("all five flags for eight insertions; seven insertions give one vanishing ψ, doubly (1) only".into())
}

fn random_word(rng: &mut StdRng, m: usize, lens: std::ops::Range<usize>) -> FreeWord {
    let len = rng.gen_range(lens);
    FreeWord(
        (0..len)
            .map(|_| (rng.gen_range(1..=m), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    )
}

// Random element of the commutator subgroup of F_3.
fn random_commutator_word(rng: &mut StdRng) -> FreeWord {
    let mut w = FreeWord::empty();
    for _ in 0..rng.gen_range(1..4) {
        let u = random_word(rng, 3, 1..4);
        let v = random_word(rng, 3, 1..4);
        w = w.concat(&FreeWord::commutator(&u, &v));
    }
    w
}

fn milnor_suite() -> Outcome {
    let mu = |ls: &LongitudeSystem| milnor::mu_triple(ls, 1, 2, 3).map_err(|e| e.to_string());
    ensure(mu(&LongitudeSystem::borromean())? == z(1), || "Borromean".into())?;
    ensure(mu(&LongitudeSystem::unlink(3))? == z(0), || "unlink".into())?;
    let x = FreeWord::generator;
    let sq = LongitudeSystem::new(
        3,
        vec![FreeWord::empty(), FreeWord::empty(), FreeWord::commutator(&x(1), &x(2)).pow(2)],
    )
    .map_err(|e| e.to_string())?;
    ensure(mu(&sq)? == z(2), || "squared commutator".into())?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..100 {
        let u = random_word(&mut rng, 4, 0..12);
        let v = random_word(&mut rng, 4, 0..12);
        let lhs = magnus(&u.concat(&v), 4).map_err(|e| e.to_string())?;
        let rhs = &magnus(&u, 4).map_err(|e| e.to_string())? * &magnus(&v, 4).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("multiplicativity fails for {u} · {v}"))?;
    }
    for _ in 0..100 {
        let ls = LongitudeSystem::new(
            3,
            vec![
                random_commutator_word(&mut rng),
                random_commutator_word(&mut rng),
                random_commutator_word(&mut rng),
            ],
        )
        .map_err(|e| e.to_string())?;
        let before = mu(&ls)?;
        let g = random_word(&mut rng, 3, 1..4);
        let mut conj = ls.clone();
        conj.longitudes[2] = ls.longitudes[2].conjugate_by(&g);
        ensure(mu(&conj)? == before, || format!("conjugation by {g} changes μ̄"))?;
    }
    Ok("Borromean 1, unlink 0, squared commutator 2; 100 multiplicativity and 100 conjugation cases".into())
}

fn block_instances() -> Vec<(String, SeifertMatrix)> {
    let mut out = Vec::new();
    let diag2 = knotob::algebra::matrix::int_matrix(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let mut params: Vec<Triple> = vec![triple(3, 5, 17), triple(2, 3, 7), triple(-2, 4, 9)];
    for e in 1..=3 {
        params.push(obstruction::family_parameters(e));
    }
    for p in params {
        let pv = p.to_vec();
        let label = format!("({}, {}, {})", p[0], p[1], p[2]);
        out.push((
            format!("A = 0, p = {label}"),
            BlockForm::with_zero_a(pv.clone()).to_seifert().expect("valid"),
        ));
        out.push((
            format!("A = diag(1,-1,1), p = {label}"),
            BlockForm::new(diag2.clone(), pv).expect("3x3").to_seifert().expect("valid"),
        ));
    }
    out
}

fn algebraic_invariants() -> Outcome {
    let mut checked = 0;
    for (name, s) in block_instances() {
        let d = seifert::alexander_poly(&s);
        ensure(d.min_exp() == Some(0) && d.max_exp() == Some(6), || {
            format!("{name}: Δ = {d} does not have degree 6")
        })?;
        let at_one: BigInt = (0..=6).map(|k| d.coeff(k)).sum();
        ensure(at_one.abs().is_one(), || format!("{name}: Δ(1) = {at_one}"))?;
        ensure((0..=6).all(|k| d.coeff(k) == d.coeff(6 - k)), || {
            format!("{name}: Δ = {d} not palindromic")
        })?;
        let iso = seifert::isometry(&s).map_err(|e| e.to_string())?;
        let en = seifert::enumerate_metabolisers(&s).map_err(|e| format!("{name}: {e}"))?;
        for h in &en.metabolisers {
            ensure(seifert::isometry_preserves(&iso, &h.basis), || {
                format!("{name}: isometry moves {:?}", h.label_string())
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} block forms: degree 6, Δ(1) = ±1, palindromic, spans preserved"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("1 exact derivative set at (3,5,17)", Duration::from_secs(1), exact_derivative_set),
        ("2 family table", Duration::from_secs(1), family_table),
        ("3 metaboliser enumeration", Duration::from_secs(1), metaboliser_enumeration),
        ("4 oracle equivalence", Duration::from_secs(30), oracle_equivalence),
        ("5 witness identity", Duration::from_secs(5), witness_identity),
        ("6 insertion-preset verdicts", Duration::from_secs(30), insertion_verdicts),
        ("7 Milnor suite", Duration::from_secs(5), milnor_suite),
        ("8 algebraic invariants", Duration::from_secs(30), algebraic_invariants),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS  criterion {name}: {detail} [{elapsed:.2?} ≤ {limit:?}]"),
            Ok(detail) => {
                failures += 1;
                format!("FAIL  criterion {name}: {detail} but took {elapsed:.2?} > {limit:?}")
            }
            Err(why) => {
                failures += 1;
                format!("FAIL  criterion {name}: {why} [{elapsed:.2?}]")
            }
        };
        println!("{line}");
    }
    if failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria fail");
        ExitCode::FAILURE
    }
}
