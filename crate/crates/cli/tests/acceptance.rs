//! Acceptance suite: one test per criterion, each printing a pass line with
//! its timing (visible with `--nocapture`). Expected values are exact; time
//! limits are asserted.

use std::time::{Duration, Instant};

use blowup_cli::corpus::{generate, CorpusParams, Instance};
use blowup_core::adjoint::{adjoint, verify_lipman_chain};
use blowup_core::bs;
use blowup_core::hilbert::{multiplicity_volume, normal_hilbert_profile};
use blowup_core::newton::integral_closure;
use blowup_core::verifiers::{dichotomy_report, e2_identity, verify_itoh_chain, Branch};
use blowup_core::{ExponentVector, MonomialIdeal};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::minimalize(3, gens.iter().map(|g| ExponentVector::from_ints(g))).unwrap()
}

fn pure_powers(a: u64, b: u64, c: u64) -> MonomialIdeal {
    ideal(&[&[a, 0, 0], &[0, b, 0], &[0, 0, c]])
}

fn ebar_i64(i: &MonomialIdeal) -> [i64; 4] {
    normal_hilbert_profile(i)
        .unwrap()
        .ebar
        .iter()
        .map(|e| num::ToPrimitive::to_i64(e).unwrap())
        .collect::<Vec<_>>()
        .try_into()
        .unwrap()
}

fn corpus() -> Vec<Instance> {
    generate(CorpusParams {
        seed: 1,
        count: 20,
        max_exp: 4,
    })
}

fn finish(criterion: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion}: PASS ({elapsed:.2?} < {limit:.0?})"
    );
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its time budget: {elapsed:.2?} >= {limit:.0?}"
    );
}

#[test]
fn criterion_1_trivial_coefficients_of_the_maximal_ideal() {
    let started = Instant::now();
    assert_eq!(ebar_i64(&MonomialIdeal::maximal(3)), [1, 0, 0, 0]);
    finish("1 (ebar of (x,y,z))", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_pure_squares_coefficients_and_cross_checks() {
    let started = Instant::now();
    let sq = pure_powers(2, 2, 2);
    assert_eq!(ebar_i64(&sq), [8, 4, 0, 0]);
    assert_eq!(multiplicity_volume(&sq).unwrap(), BigInt::from(8));
    // e2 = length(closure(I^2) / q * closure(I)) = 0, by direct lattice count
    let closure1 = integral_closure(&sq, 1).unwrap();
    let closure2 = integral_closure(&sq, 2).unwrap();
    let quotient = closure2.quotient_length(&sq.multiply(&closure1)).unwrap();
    assert_eq!(quotient, BigInt::zero());
    let report = e2_identity(&sq, &sq).unwrap();
    assert!(report.k.is_zero() && report.consistent);
    finish("2 (ebar of (x^2,y^2,z^2))", started, Duration::from_secs(5));
}

#[test]
fn criterion_3_leading_coefficient_is_abc_on_the_grid() {
    let started = Instant::now();
    for a in 2..=4u64 {
        for b in 2..=4u64 {
            for c in 2..=4u64 {
                let q = pure_powers(a, b, c);
                let fitted = normal_hilbert_profile(&q).unwrap().ebar[0].clone();
                assert_eq!(fitted, BigInt::from(a * b * c), "ideal ({a},{b},{c})");
                assert_eq!(
                    multiplicity_volume(&q).unwrap(),
                    fitted,
                    "volume oracle for ({a},{b},{c})"
                );
            }
        }
    }
    finish("3 (e0 = abc, 27 instances)", started, Duration::from_secs(60));
}

#[test]
fn criterion_4_chain_condition_on_the_corpus() {
    let started = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    for inst in &corpus {
        let report = verify_itoh_chain(&inst.ideal, &inst.reduction, 6).unwrap();
        assert!(
            report.pass(),
            "chain failed on instance {}: {:?}",
            inst.index,
            report.failures().collect::<Vec<_>>()
        );
        assert!(report.forms_agree, "forms disagree on instance {}", inst.index);
        assert!(report.form_a.iter().all(|s| s.pass));
        assert!(report.form_b.iter().all(|s| s.pass));
    }
    finish("4 (closure chain, 20 instances)", started, Duration::from_secs(120));
}

#[test]
fn criterion_5_adjoint_chain_on_the_corpus_and_closed_form() {
    let started = Instant::now();
    for inst in &corpus() {
        let report = verify_lipman_chain(&inst.ideal, 6).unwrap();
        assert!(report.pass, "adjoint chain failed on instance {}", inst.index);
    }
    let m = MonomialIdeal::maximal(3);
    assert!(adjoint(&m, 1).unwrap().is_unit());
    for n in 2..=8u64 {
        assert_eq!(adjoint(&m, n).unwrap(), m.pow(n - 2), "n = {n}");
    }
    finish("5 (adjoint chain + closed form)", started, Duration::from_secs(120));
}

#[test]
fn criterion_6_kernel_length_vanishes_corpus_wide() {
    let started = Instant::now();
    for inst in &corpus() {
        let report = dichotomy_report(&inst.ideal, &inst.reduction, 6).unwrap();
        assert!(report.k.is_zero(), "instance {}: k = {}", inst.index, report.k);
        assert_eq!(report.branch, Branch::CohenMacaulay);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        // the identity and the chain are computed independently; they must
        // agree instance by instance
        let identity = e2_identity(&inst.ideal, &inst.reduction).unwrap();
        assert!(identity.consistent && identity.chain_pass);
    }
    finish("6 (k = 0 instance-by-instance)", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_decomposition_round_trip_10k() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10_000 {
        let r = rng.random_range(1..=6usize);
        let coeffs: Vec<BigRational> = (0..r)
            .map(|_| {
                BigRational::new(
                    rng.random_range(0..=100i64).into(),
                    rng.random_range(1..=100i64).into(),
                )
            })
            .collect();
        let parts: Vec<(bs::ZeroSequence, BigRational)> = coeffs
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                (
                    bs::ZeroSequence::new(vec![(idx as i64) + 2, 0]).unwrap(),
                    a.clone(),
                )
            })
            .collect();
        let table = bs::synthesize(&parts, -1, (r as i64) + 1).unwrap();
        let solved = bs::decompose_h1(&table.h1_positive_row()).unwrap();
        let mut expected = coeffs.clone();
        while expected.last().is_some_and(Zero::is_zero) {
            expected.pop();
        }
        assert_eq!(solved.coeffs, expected);
        assert_eq!(bs::ker_psi2(&table).unwrap(), solved.kernel_dimension());
    }
    finish("7 (10k decomposition round-trips)", started, Duration::from_secs(60));
}

#[test]
fn criterion_8_exhaustive_dichotomy_scan() {
    let started = Instant::now();
    let report = bs::dichotomy_scan(10, 5);
    assert!(report.pass(), "violations: {:?}", report.violations);
    assert_eq!(report.total, 11u64.pow(5));
    // frozen counts from an independent enumeration
    assert_eq!(report.in_cone, 1152);
    assert_eq!(report.kernel_zero, 1);
    assert_eq!(report.kernel_two, 1);
    assert_eq!(report.kernel_at_least_three, 1150);

    // the unique kernel-2 point is h1 = (1, 1, 0, ..): cone-feasible but not
    // sheaf-realizable
    let one = BigRational::one();
    let two_table = bs::synthesize(
        &[(bs::ZeroSequence::new(vec![3, 0]).unwrap(), BigRational::new(1.into(), 2.into()))],
        -1,
        6,
    )
    .unwrap();
    assert_eq!(two_table.value(1, 1), Some(&one));
    assert_eq!(two_table.value(1, 2), Some(&one));
    assert_eq!(
        bs::dichotomy_classify(&two_table).unwrap(),
        bs::KernelClass::TwoExcluded
    );
    assert!(bs::vanish_after_two(&two_table).pass);
    finish("8 (exhaustive kernel scan)", started, Duration::from_secs(120));
}

#[test]
fn criterion_9_supernatural_values_and_polynomial_zeros() {
    let started = Instant::now();
    let gamma = bs::supernatural_table(
        &bs::ZeroSequence::new(vec![2, 0]).unwrap(),
        -4,
        6,
    )
    .unwrap();
    let q = |n: i64| BigRational::from_integer(n.into());
    assert_eq!(gamma.value(1, 1), Some(&q(1)));
    assert_eq!(gamma.value(0, 3), Some(&q(3)));
    assert_eq!(gamma.value(2, -1), Some(&q(3)));

    // 20 zero sequences: the alternating column sum is the polynomial
    // prod (m - z_i) on the whole window, so its zeros are exactly z
    let sampled: Vec<Vec<i64>> = vec![
        vec![0], vec![1], vec![-1], vec![3], vec![-4],
        vec![2, 0], vec![3, 0], vec![6, 0], vec![1, 0], vec![4, 2],
        vec![5, -1], vec![0, -3], vec![2, -2], vec![7, 3], vec![-1, -5],
        vec![8, 0], vec![4, -4], vec![3, 1], vec![6, 5], vec![2, -1],
    ];
    assert_eq!(sampled.len(), 20);
    for zeros in sampled {
        let z = bs::ZeroSequence::new(zeros.clone()).unwrap();
        let table = bs::supernatural_table(&z, -9, 11).unwrap();
        for m in -9..=11i64 {
            let mut product = BigRational::one();
            for zi in z.zeros() {
                product *= q(m - zi);
            }
            assert_eq!(table.euler(m), Some(product), "{z} at column {m}");
        }
        for zi in z.zeros() {
            assert_eq!(table.euler(*zi), Some(BigRational::zero()));
        }
    }
    finish("9 (supernatural tables)", started, Duration::from_secs(10));
}
