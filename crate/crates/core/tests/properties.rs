//! Property tests for the algebraic invariants the operations promise.

use blowup_core::adjoint::adjoint;
use blowup_core::bs;
use blowup_core::hilbert::{multiplicity_volume, normal_hilbert_profile};
use blowup_core::newton::{integral_closure, is_reduction, NewtonPolyhedron};
use blowup_core::{ExponentVector, MonomialIdeal};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use proptest::prelude::*;

fn vector() -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0u64..=6, 3).prop_map(|v| ExponentVector::from_ints(&v))
}

fn gen_set() -> impl Strategy<Value = Vec<ExponentVector>> {
    prop::collection::vec(vector(), 0..6)
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    gen_set().prop_map(|gens| MonomialIdeal::minimalize(3, gens).unwrap())
}

/// Pure powers on every axis plus a few extra generators.
fn m_primary_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (
        [1u64..=5, 1u64..=5, 1u64..=5],
        prop::collection::vec(vector(), 0..4),
    )
        .prop_map(|(powers, extras)| {
            let mut gens: Vec<ExponentVector> = powers
                .iter()
                .enumerate()
                .map(|(axis, &e)| ExponentVector::pure_power(3, axis, BigInt::from(e)))
                .collect();
            gens.extend(extras.into_iter().filter(|v| !v.is_origin()));
            MonomialIdeal::minimalize(3, gens).unwrap()
        })
}

/// A pure-power reduction together with a larger ideal with the same Newton
/// polyhedron: extra generators are drawn from the lattice points of the
/// polyhedron itself.
fn reduction_pair() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (
        [2u64..=4, 2u64..=4, 2u64..=4],
        prop::collection::vec(any::<prop::sample::Index>(), 0..4),
    )
        .prop_map(|(powers, picks)| {
            let q = MonomialIdeal::minimalize(
                3,
                powers
                    .iter()
                    .enumerate()
                    .map(|(axis, &e)| ExponentVector::pure_power(3, axis, BigInt::from(e))),
            )
            .unwrap();
            let np = NewtonPolyhedron::of(&q).unwrap();
            let one = BigRational::one();
            let mut candidates = Vec::new();
            for a in 0..=powers[0] {
                for b in 0..=powers[1] {
                    for c in 0..=powers[2] {
                        let v = ExponentVector::from_ints(&[a, b, c]);
                        if np.member(&v, &one) && !q.contains(&v) {
                            candidates.push(v);
                        }
                    }
                }
            }
            let mut gens = q.generators().to_vec();
            for pick in picks {
                if !candidates.is_empty() {
                    gens.push(pick.get(&candidates).clone());
                }
            }
            let i = MonomialIdeal::minimalize(3, gens).unwrap();
            (q, i)
        })
}

fn rationals(max_len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((0i64..=100, 1i64..=100), 1..=max_len).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .collect()
    })
}

proptest! {
    #[test]
    fn minimalize_is_idempotent(gens in gen_set()) {
        let once = MonomialIdeal::minimalize(3, gens).unwrap();
        let twice = MonomialIdeal::minimalize(3, once.generators().to_vec()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn minimalize_preserves_membership(gens in gen_set(), point in vector()) {
        let raw = gens.iter().any(|g| g.divides(&point));
        let ideal = MonomialIdeal::minimalize(3, gens).unwrap();
        prop_assert_eq!(ideal.contains(&point), raw);
    }

    #[test]
    fn multiply_commutes(a in small_ideal(), b in small_ideal()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
    }

    #[test]
    fn multiply_associates(a in small_ideal(), b in small_ideal(), c in small_ideal()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn unit_is_neutral_and_zero_absorbs(a in small_ideal()) {
        prop_assert_eq!(a.multiply(&MonomialIdeal::unit(3)), a.clone());
        prop_assert!(a.multiply(&MonomialIdeal::zero(3)).is_zero());
    }

    #[test]
    fn product_colength_dominates_factors(a in m_primary_ideal(), b in m_primary_ideal()) {
        let ca = a.colength().unwrap();
        let cb = b.colength().unwrap();
        let cab = a.multiply(&b).colength().unwrap();
        prop_assert!(cab >= ca.max(cb));
    }

    #[test]
    fn quotient_length_is_colength_difference(a in m_primary_ideal(), b in m_primary_ideal()) {
        let product = a.multiply(&b); // contained in a
        let q = a.quotient_length(&product).unwrap();
        prop_assert_eq!(q + a.colength().unwrap(), product.colength().unwrap());
    }

    #[test]
    fn power_membership_descends(a in m_primary_ideal(), point in vector(), n in 1u64..=4) {
        // generators all lie in the maximal ideal, so powers shrink
        let big = a.pow(n);
        let small = a.pow(n - 1);
        if big.contains(&point) {
            prop_assert!(small.contains(&point));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_grows(i in m_primary_ideal()) {
        let closed = integral_closure(&i, 1).unwrap();
        prop_assert!(closed.contains_ideal(&i));
        prop_assert_eq!(integral_closure(&closed, 1).unwrap(), closed);
    }

    #[test]
    fn closure_filtration_is_multiplicative(i in m_primary_ideal(), m in 1u64..=3, n in 1u64..=3) {
        let a = integral_closure(&i, m).unwrap();
        let b = integral_closure(&i, n).unwrap();
        let c = integral_closure(&i, m + n).unwrap();
        prop_assert!(c.contains_ideal(&a.multiply(&b)));
    }

    #[test]
    fn closure_contains_power(i in m_primary_ideal(), n in 1u64..=4) {
        prop_assert!(integral_closure(&i, n).unwrap().contains_ideal(&i.pow(n)));
    }

    #[test]
    fn reductions_share_all_closures((q, i) in reduction_pair()) {
        prop_assert!(is_reduction(&q, &i).unwrap());
        for n in 1..=3u64 {
            prop_assert_eq!(
                integral_closure(&q, n).unwrap(),
                integral_closure(&i, n).unwrap()
            );
        }
    }

    #[test]
    fn adjoint_chain_inclusions(i in m_primary_ideal(), n in 1u64..=4) {
        let current = adjoint(&i, n).unwrap();
        prop_assert!(current.contains_ideal(&adjoint(&i, n + 1).unwrap()));
        let previous = if n == 1 {
            MonomialIdeal::unit(3)
        } else {
            adjoint(&i, n - 1).unwrap()
        };
        prop_assert!(current.contains_ideal(&i.multiply(&previous)));
    }

    #[test]
    fn adjoint_depends_only_on_the_polyhedron((q, i) in reduction_pair()) {
        for n in 1..=3u64 {
            prop_assert_eq!(adjoint(&q, n).unwrap(), adjoint(&i, n).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fitted_leading_coefficient_is_the_normalized_volume(i in m_primary_ideal()) {
        let profile = normal_hilbert_profile(&i).unwrap();
        prop_assert_eq!(&profile.ebar[0], &multiplicity_volume(&i).unwrap());
        // monomial blow-ups have rational singularities: constant term zero
        prop_assert!(profile.ebar[3].is_zero());
        // and the fit reproduces the samples from the postulation index on
        prop_assert!(profile.postulation <= profile.samples.len() as u32);
    }

    #[test]
    fn ebar_is_invariant_under_closure_and_reduction((q, i) in reduction_pair()) {
        let base = normal_hilbert_profile(&q).unwrap().ebar;
        prop_assert_eq!(&base, &normal_hilbert_profile(&i).unwrap().ebar);
        let closed = integral_closure(&q, 1).unwrap();
        prop_assert_eq!(&base, &normal_hilbert_profile(&closed).unwrap().ebar);
    }
}

proptest! {
    #[test]
    fn h1_decomposition_round_trips(coeffs in rationals(6)) {
        let r = coeffs.len();
        let h1: Vec<BigRational> = (1..=r)
            .map(|m| {
                coeffs
                    .iter()
                    .enumerate()
                    .skip(m - 1)
                    .map(|(idx, a)| {
                        let i = idx + 1;
                        a * BigRational::from_integer((m * (i + 1 - m)).into())
                    })
                    .sum()
            })
            .collect();
        let solved = bs::decompose_h1(&h1).unwrap();
        // trailing zero coefficients are trimmed together with the row
        let mut expected = coeffs.clone();
        while expected.last().is_some_and(Zero::is_zero) {
            expected.pop();
        }
        prop_assert_eq!(&solved.coeffs, &expected);

        let kernel = solved.kernel_dimension();
        let h1_1 = h1.first().cloned().unwrap_or_else(BigRational::zero);
        let h1_2 = h1.get(1).cloned().unwrap_or_else(BigRational::zero);
        prop_assert_eq!(kernel.clone(), BigRational::from_integer(3.into()) * h1_1 - h1_2);
        prop_assert!(!kernel.is_negative());
    }

    #[test]
    fn supernatural_tables_have_single_nonzero_rows(z1 in -6i64..=8, gap in 0i64..=6) {
        let zeros = if gap == 0 { vec![z1] } else { vec![z1, z1 - gap] };
        let z = bs::ZeroSequence::new(zeros).unwrap();
        let table = bs::supernatural_table(&z, -8, 10).unwrap();
        for m in -8..=10 {
            let nonzero = (0..3)
                .filter(|&j| !table.value(j, m).unwrap().is_zero())
                .count();
            prop_assert!(nonzero <= 1);
            let mut product = BigRational::one();
            for zi in z.zeros() {
                product *= BigRational::from_integer((m - zi).into());
            }
            prop_assert_eq!(table.euler(m).unwrap(), product);
        }
    }
}
