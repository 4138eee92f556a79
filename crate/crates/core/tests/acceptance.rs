//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the target exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qverify::ct::{
    constant_term, ct_h, jtp_check, omega_collapse_check, verify_au_reduction,
    verify_f_decomposition, verify_h_connection, z_coefficient, ZQSeries,
};
use qverify::dsl::{eval_expr, mutate, parse_catalog, verify, Status};
use qverify::hypergeom::{
    a_generalization_sides, bivariate_check_a_generalization, float_1f0_check, max_a_degree,
    s_m_closed_form_check, s_m_eval, s_m_recurrence_check, specialize_a, SumConfig,
};
use qverify::identities::{
    asy_rr_product, asy_rr_sum, au_conjecture_product, au_conjecture_sum, h_calculation_check,
    h_calculation_product, long_series_checks, phi_dissection_check, phi_dissection_parts,
    psi_dissection_check, psi_dissection_parts,
};
use qverify::rings::{Eisenstein, LaurentPoly, PolyA, PolyZ, Rational, Ring};
use qverify::series::{eta_quotient, pochhammer, subst_omega, Length};
use qverify::{QSeries, BUNDLED_CATALOG};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn within(start: Instant, limit: u64, what: &str) {
    let took = start.elapsed();
    assert!(
        took < Duration::from_secs(limit),
        "{what} took {took:?}, limit {limit} s"
    );
}

fn criterion_1() {
    let t = Instant::now();
    let sum = au_conjecture_sum().eval(300, SumConfig::default()).unwrap();
    let prod = au_conjecture_product().expand(300).unwrap();
    assert_eq!(sum.compare_through(&prod, 300).unwrap(), None);
    within(t, 60, "double sum at order 300");
    let oracle = common::partitions(|p| p % 6 == 2 || p % 6 == 3, 300);
    assert_eq!(common::ints(&prod, 300), oracle);
    let low = au_conjecture_sum().eval(7, SumConfig::default()).unwrap();
    assert_eq!(common::ints(&low, 7), vec![1, 0, 1, 1, 1, 1, 2]);
}

fn criterion_2() {
    let t = Instant::now();
    let sum = asy_rr_sum().eval(600, SumConfig::default()).unwrap();
    let prod = asy_rr_product().expand(600).unwrap();
    assert_eq!(sum.compare_through(&prod, 600).unwrap(), None);
    within(t, 60, "single sum at order 600");
    let oracle = common::product(
        &[(4, 6, None, 1), (12, 18, None, 1), (5, 6, None, -1), (9, 18, None, -1)],
        600,
    );
    assert_eq!(common::ints(&sum, 600), oracle);
}

fn criterion_3() {
    let t = Instant::now();
    assert!(bivariate_check_a_generalization(120, 240).unwrap().passed());
    within(t, 120, "bivariate check at order 120");
    let (lhs, rhs) = a_generalization_sides(120).unwrap();
    assert_eq!(lhs.compare_through(&rhs, 120).unwrap(), None);
    assert!(max_a_degree(&lhs) <= 240);
    for m in 0..=6 {
        let s = specialize_a(&lhs, 2 * m).unwrap();
        assert_eq!(s.compare_through(&s_m_eval(m, 120).unwrap(), 120).unwrap(), None, "M={m}");
    }
    let a2_minus_a = PolyA::from_terms([(2, Rational::one()), (1, Rational::from(-1))]);
    assert_eq!(lhs.coeff(1).unwrap(), a2_minus_a);
    assert_eq!(rhs.coeff(1).unwrap(), a2_minus_a);
}

fn criterion_4() {
    assert_eq!(common::ints(&s_m_eval(1, 200).unwrap(), 200), common::product(&[], 200));
    let s2 = common::product(
        &[(5, 5, Some(1), 1), (7, 7, Some(1), 1), (3, 3, Some(1), -1), (9, 9, Some(1), -1)],
        200,
    );
    assert_eq!(common::ints(&s_m_eval(2, 200).unwrap(), 200), s2);
    for m in 1..=12 {
        assert!(s_m_recurrence_check(m, 200).unwrap().passed(), "recurrence M={m}");
        assert!(s_m_closed_form_check(m, 200).unwrap().passed(), "closed form M={m}");
        let oracle = common::product(
            &[(1, 2, Some(2 * m), 1), (1, 2, Some(m), -1), (3, 6, Some(m), -1)],
            200,
        );
        assert_eq!(common::ints(&s_m_eval(m, 200).unwrap(), 200), oracle, "M={m}");
    }
}

fn criterion_5() {
    assert!(verify_h_connection(120).unwrap().passed());
    assert!(omega_collapse_check(60).unwrap().passed());
    assert!(verify_f_decomposition(60).unwrap().passed());
    let oracle = common::product(&[(3, 3, None, -1), (6, 18, None, -1), (9, 18, None, -1)], 120);
    assert_eq!(common::ints(&ct_h(120).unwrap(), 120), oracle);
}

fn criterion_6() {
    assert!(phi_dissection_check(400).unwrap().passed());
    assert!(psi_dissection_check(400).unwrap().passed());
    let [a, b] = phi_dissection_parts(400).unwrap();
    assert_eq!(common::ints(&a.add(&b), 400), common::phi_minus_q(400));
    let [c, d] = psi_dissection_parts(400).unwrap();
    assert_eq!(common::ints(&c.add(&d), 400), common::psi(400));
    let chain = long_series_checks(300).unwrap();
    assert_eq!(chain.len(), 5);
    for (i, step) in chain.iter().enumerate() {
        assert!(step.passed(), "chain step {}: {:?}", i + 1, step.mismatch);
    }
    assert!(h_calculation_check(300).unwrap().passed());
    let oracle = common::product(&[(3, 3, None, -1), (6, 18, None, -1), (9, 18, None, -1)], 300);
    assert_eq!(common::ints(&h_calculation_product().expand(300).unwrap(), 300), oracle);
}

fn criterion_7() {
    assert!(jtp_check(200).unwrap().passed());
    let red = verify_au_reduction(150).unwrap();
    assert!(red.integral.passed(), "{:?}", red.integral);
    assert!(red.rescaled.passed(), "{:?}", red.rescaled);
    assert!(red.assembled.passed(), "{:?}", red.assembled);
}

fn criterion_8() {
    let t = Instant::now();
    let catalog = parse_catalog(BUNDLED_CATALOG).unwrap();
    let classical: Vec<_> = catalog.iter().filter(|e| e.tags.iter().any(|t| t == "classical")).collect();
    let expected = [
        "RR1", "RR2", "Gollnitz-1", "Gollnitz-2", "Lebesgue", "CSS-bivariate", "CSS-1", "CSS-2",
        "Gordon-Andrews-k2-i1", "Gordon-Andrews-k2-i2", "Gordon-Andrews-k3-i1",
        "Gordon-Andrews-k3-i2", "Gordon-Andrews-k3-i3", "Gordon-Andrews-k4-i1",
        "Gordon-Andrews-k4-i2", "Gordon-Andrews-k4-i3", "Gordon-Andrews-k4-i4", "KR-I5",
        "Andrews-Uncu-double-sum",
    ];
    let names: Vec<&str> = classical.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, expected);
    for e in &classical {
        let r = verify(e, Some(200));
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    for e in &catalog {
        let r = verify(e, None);
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    within(t, 300, "full catalog");
    let side = |name: &str, lhs: bool| {
        let e = catalog.iter().find(|e| e.name == name).unwrap();
        eval_expr::<Rational>(if lhs { &e.lhs } else { &e.rhs }, 200).unwrap()
    };
    for (ga, rr) in [("Gordon-Andrews-k2-i1", "RR2"), ("Gordon-Andrews-k2-i2", "RR1")] {
        assert_eq!(side(ga, true), side(rr, true), "{ga}");
        assert_eq!(side(ga, false), side(rr, false), "{ga}");
    }
    assert_eq!(
        common::ints(&side("RR1", true), 200),
        common::partitions(|p| p % 5 == 1 || p % 5 == 4, 200)
    );
    let rr1 = eta_quotient::<Rational>(&[(1, 5, -1), (4, 5, -1)], 10).unwrap();
    assert_eq!(common::ints(&rr1, 10), vec![1, 1, 1, 1, 2, 2, 3, 3, 4, 5]);
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let r = Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=24));
    if rng.gen_bool(0.1) {
        r.mul(&Rational::new(i64::MAX - rng.gen_range(0..1000), 3))
    } else {
        r
    }
}

fn eisenstein(rng: &mut ChaCha8Rng) -> Eisenstein {
    Eisenstein::new(rational(rng), rational(rng))
}

fn laurent<V: qverify::rings::VarName>(rng: &mut ChaCha8Rng) -> LaurentPoly<Rational, V> {
    let n = rng.gen_range(0..4);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(-3..=3), rational(rng))))
}

fn ring_axioms<R: Ring>(rng: &mut ChaCha8Rng, gen: fn(&mut ChaCha8Rng) -> R, cases: usize) {
    for _ in 0..cases {
        let (x, y, z) = (gen(rng), gen(rng), gen(rng));
        assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        assert_eq!(x.add(&y), y.add(&x));
        assert_eq!(x.add(&R::zero()), x);
        assert!(x.add(&x.neg()).is_zero());
        assert_eq!(x.sub(&y), x.add(&y.neg()));
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        assert_eq!(x.mul(&y), y.mul(&x));
        assert_eq!(x.mul(&R::one()), x);
        assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        assert_eq!(x.pow(3).unwrap(), x.mul(&x).mul(&x));
        if x.is_unit() {
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }
}

fn random_series(rng: &mut ChaCha8Rng, order: i64) -> QSeries<Rational> {
    let start = rng.gen_range(-3..=3);
    let mut terms = Vec::new();
    for e in start..order {
        if rng.gen_bool(0.6) {
            terms.push((e, Rational::from(rng.gen_range(-5..=5))));
        }
    }
    QSeries::from_terms(terms, order)
}

fn random_z_series(rng: &mut ChaCha8Rng, order: i64) -> ZQSeries<Rational> {
    let mut terms = Vec::new();
    for e in 0..order {
        if rng.gen_bool(0.5) {
            terms.push((e, laurent(rng)));
        }
    }
    QSeries::from_terms(terms, order)
}

fn criterion_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    ring_axioms::<Rational>(&mut rng, rational, 10_000);
    ring_axioms::<Eisenstein>(&mut rng, eisenstein, 10_000);
    ring_axioms::<PolyA>(&mut rng, laurent, 10_000);
    ring_axioms::<PolyZ<Rational>>(&mut rng, laurent, 10_000);

    // (c q^j; q^m)_{n+1} = (c q^j; q^m)_n (1 − c q^{j+nm}), and negative lengths
    for _ in 0..40 {
        let c = if rng.gen_bool(0.3) { Rational::one() } else { rational(&mut rng) };
        let (j, m) = (rng.gen_range(-3..=5), rng.gen_range(1..=4));
        let order = 60;
        // factors 1 − c q^e with e ≥ −3 lower the product's order by at most 6
        let wide = order + 8;
        for n in 0..30 {
            let p = pochhammer(c.clone(), j, m, Length::Finite(n), wide).unwrap();
            let next = pochhammer(c.clone(), j, m, Length::Finite(n + 1), order).unwrap();
            let factor = QSeries::from_terms([(0, Rational::one()), (j + n * m, c.neg())], wide);
            assert_eq!(p.mul(&factor).compare_through(&next, order).unwrap(), None, "c={c} j={j} m={m} n={n}");
        }
        if !c.is_one() {
            for n in 1..10 {
                let neg = pochhammer(c.clone(), j, m, Length::Finite(-n), order).unwrap();
                let pos = pochhammer(c.clone(), j - n * m, m, Length::Finite(n), wide).unwrap();
                // 1/pos is exact below keep − 2v, and keep is the least that reaches `order`
                let v = pos.valuation().unwrap();
                let inv = pos.truncate((order + 2 * v).max(v + 1)).unwrap().inv().unwrap();
                assert_eq!(inv.compare_through(&neg, order).unwrap(), None);
            }
        }
    }

    // f(q) + f(ωq) + f(ω²q) = 3·huff(f, 3)
    for _ in 0..100 {
        let f = random_series(&mut rng, 100);
        let lhs = subst_omega(&f, 0).add(&subst_omega(&f, 1)).add(&subst_omega(&f, 2));
        let rhs = subst_omega(&f.huff(3).scale(&Rational::from(3)), 0);
        assert_eq!(lhs.compare_through(&rhs, 100).unwrap(), None);
    }

    // dissection parts reassemble the series and sit in their classes
    for _ in 0..100 {
        let f = random_series(&mut rng, 80);
        let m = rng.gen_range(1..=7);
        let parts = f.dissect(m);
        let total = parts.iter().fold(QSeries::zero(80), |acc, p| acc.add(p));
        assert_eq!(total, f);
        for (r, p) in parts.iter().enumerate() {
            assert!(p.iter_nonzero().all(|(e, _)| e.rem_euclid(m) == r as i64));
        }
    }

    // constant term is linear and reads off the z^0 coefficient
    for _ in 0..100 {
        let (f, g) = (random_z_series(&mut rng, 40), random_z_series(&mut rng, 40));
        let (a, b) = (rational(&mut rng), rational(&mut rng));
        let za = PolyZ::<Rational>::constant(a.clone());
        let zb = PolyZ::<Rational>::constant(b.clone());
        let lhs = constant_term(&f.scale(&za).add(&g.scale(&zb)));
        let rhs = constant_term(&f).scale(&a).add(&constant_term(&g).scale(&b));
        assert_eq!(lhs, rhs);
        let k = rng.gen_range(-3..=3);
        let shifted = f.scale(&PolyZ::<Rational>::var_pow(k));
        assert_eq!(constant_term(&shifted), z_coefficient(&f, -k));
    }

    // eta quotients with negative exponents count coloured partitions
    for _ in 0..20 {
        let mut factors = Vec::new();
        let mut parts = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let m = rng.gen_range(1..=6);
            let j = rng.gen_range(1..=m);
            let p = -rng.gen_range(1..=2);
            factors.push((j, m, p));
            for _ in 0..-p {
                parts.extend((0..).map(|k| j + k * m).take_while(|&s| s < 60));
            }
        }
        let f = eta_quotient::<Rational>(&factors, 60).unwrap();
        assert_eq!(common::ints(&f, 60), common::partitions_from(parts, 60), "{factors:?}");
    }
}

fn criterion_10() {
    let catalog = parse_catalog(BUNDLED_CATALOG).unwrap();
    assert!(!catalog.is_empty());
    for e in &catalog {
        let m = mutate(e).unwrap_or_else(|| panic!("{} has no mutation", e.name));
        let r = verify(&m, None);
        assert_eq!(r.status, Status::Fail, "{r:?}");
        assert!(r.first_diff_exp.is_some(), "{r:?}");
    }
}

fn criterion_11() {
    assert!(float_1f0_check(200, 1e-12));
    assert!(float_1f0_check(1, 0.3));
}

fn main() {
    let criteria: [(&str, fn()); 11] = [
        ("double sum equals 1/(q^2,q^3;q^6)_inf through q^300", criterion_1),
        ("asymmetric single sum equals its product through q^600", criterion_2),
        ("a-generalization exact over Q[a,1/a] through q^120", criterion_3),
        ("S_M recurrence and closed forms, M = 1..12, order 200", criterion_4),
        ("constant-term connection, omega collapse, F decomposition", criterion_5),
        ("3-dissections, prefactor chain, huffed product", criterion_6),
        ("triple product and double-sum reduction steps", criterion_7),
        ("classical catalog entries at order 200", criterion_8),
        ("property suites", criterion_9),
        ("negative controls fail", criterion_10),
        ("float limit check", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (what, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        println!(
            "criterion {:>2}: {}  {what} ({:.2?})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            t.elapsed()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
