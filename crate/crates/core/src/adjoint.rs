//! Adjoint ideals of powers of monomial ideals via the Newton-polyhedron
//! interior rule, and the chain verifier for the recursion
//! `adjoint(I^n) = I * adjoint(I^{n-1})`.
//!
//! For a monomial ideal the adjoint of `I^n` coincides with the multiplier
//! ideal, computed by Howald's criterion: `x^v` belongs exactly when
//! `v + (1,1,1)` lies in the topological interior of `n * NP(I)` (Howald,
//! Multiplier ideals of monomial ideals, Trans. Amer. Math. Soc. 353 (2001)).
//! This is an external theorem, used here as the computation rule; see also
//! Lipman's definition of the adjoint (Math. Res. Lett. 1 (1994), 739-755).
//! The `+(1,1,1)` shift makes strictness across the coordinate planes
//! automatic, so only the stored facets need strict inequalities.
//!
//! The recursion is a theorem for `n >= 3` whenever the normalized blow-up is
//! pseudo-rational, which holds for every monomial ideal by toric rationality;
//! the verifier checks it anyway, so any failure indicates a bug rather than
//! a counterexample.

use serde_json::json;

use crate::error::Result;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::{LatticeRule, NewtonPolyhedron};

/// Minimal generators of the adjoint of `I^n`: exponents `v >= 0` with
/// `v + (1,1,1)` interior to `n * NP(I)`.
pub fn adjoint(ideal: &MonomialIdeal, n: u64) -> Result<MonomialIdeal> {
    NewtonPolyhedron::of(ideal)?.staircase_ideal(n, LatticeRule::Interior)
}

/// One step of the chain check.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub n: u64,
    pub pass: bool,
    /// On failure, a monomial in the symmetric difference of the two sides.
    pub witness: Option<ExponentVector>,
}

/// Result of checking `adjoint(I^n) = I * adjoint(I^{n-1})` for
/// `n = 3 ..= n_max`.
#[derive(Debug, Clone)]
pub struct LipmanChainReport {
    pub range: (u64, u64),
    pub steps: Vec<ChainStep>,
    pub pass: bool,
}

impl LipmanChainReport {
    pub fn failures(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| !s.pass)
    }

    /// Report fragment `{"lipman": {"range": [lo, hi], "pass": .., "failures": [..]}}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lipman": {
                "range": [self.range.0, self.range.1],
                "pass": self.pass,
                "failures": self
                    .failures()
                    .map(|s| {
                        json!({
                            "n": s.n,
                            "witness": s.witness.as_ref().map(|w| w.to_string()),
                        })
                    })
                    .collect::<Vec<_>>(),
            }
        })
    }
}

/// Verifies the adjoint recursion for every `n` in `3 ..= n_max`.
pub fn verify_lipman_chain(ideal: &MonomialIdeal, n_max: u64) -> Result<LipmanChainReport> {
    assert!(n_max >= 3, "chain check starts at n = 3");
    let np = NewtonPolyhedron::of(ideal)?;
    let mut steps = Vec::new();
    let mut previous = np.staircase_ideal(2, LatticeRule::Interior)?;
    for n in 3..=n_max {
        let direct = np.staircase_ideal(n, LatticeRule::Interior)?;
        let recursed = ideal.multiply(&previous);
        let pass = direct == recursed;
        let witness = if pass {
            None
        } else {
            symmetric_difference_witness(&direct, &recursed)
        };
        steps.push(ChainStep { n, pass, witness });
        previous = direct;
    }
    let pass = steps.iter().all(|s| s.pass);
    Ok(LipmanChainReport {
        range: (3, n_max),
        steps,
        pass,
    })
}

fn symmetric_difference_witness(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
) -> Option<ExponentVector> {
    a.generators()
        .iter()
        .find(|g| !b.contains(g))
        .or_else(|| b.generators().iter().find(|g| !a.contains(g)))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(
            3,
            gens.iter().map(|g| ExponentVector::from_ints(g)),
        )
        .unwrap()
    }

    #[test]
    fn adjoint_of_maximal_ideal_closed_form() {
        let m = MonomialIdeal::maximal(3);
        // sum (v_i + 1) > n cuts out m^{n-2}, the unit ideal for n <= 2
        assert!(adjoint(&m, 1).unwrap().is_unit());
        assert!(adjoint(&m, 2).unwrap().is_unit());
        assert_eq!(adjoint(&m, 3).unwrap(), m);
        for n in 2..=8u64 {
            assert_eq!(adjoint(&m, n).unwrap(), m.pow(n - 2), "n = {n}");
        }
    }

    #[test]
    fn adjoint_examples_from_staircase_hulls() {
        let i = ideal(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 1]]);
        assert_eq!(adjoint(&i, 1).unwrap(), MonomialIdeal::maximal(3));
        assert_eq!(adjoint(&i, 2).unwrap(), MonomialIdeal::maximal(3).pow(4));
        let j = ideal(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 0]]);
        let expected = ideal(&[
            &[0, 0, 3],
            &[0, 1, 2],
            &[0, 2, 1],
            &[0, 3, 0],
            &[1, 0, 2],
            &[1, 1, 0],
            &[2, 0, 1],
            &[3, 0, 0],
        ]);
        assert_eq!(adjoint(&j, 2).unwrap(), expected);
    }

    #[test]
    fn adjoint_agrees_with_interior_membership() {
        let i = ideal(&[&[3, 0, 0], &[0, 2, 0], &[0, 0, 4], &[1, 1, 1]]);
        let np = NewtonPolyhedron::of(&i).unwrap();
        let n = 3u64;
        let adj = adjoint(&i, n).unwrap();
        let t = num::rational::BigRational::from_integer(n.into());
        for a in 0..=9u64 {
            for b in 0..=6u64 {
                for c in 0..=12u64 {
                    let v = ExponentVector::from_ints(&[a, b, c]);
                    let shifted = ExponentVector::from_ints(&[a + 1, b + 1, c + 1]);
                    assert_eq!(
                        adj.contains(&v),
                        np.interior_member(&shifted, &t),
                        "point ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn chain_passes_on_sample_ideals() {
        for gens in [
            vec![&[1u64, 0, 0][..], &[0, 1, 0], &[0, 0, 1]],
            vec![&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]],
            vec![&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 1]],
            vec![&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 0]],
        ] {
            let i = ideal(&gens);
            let report = verify_lipman_chain(&i, 6).unwrap();
            assert!(report.pass, "chain failed for {i}");
            assert_eq!(report.steps.len(), 4);
        }
    }

    #[test]
    fn one_sided_inclusion_holds_below_three() {
        // I * adjoint(I^{n-1}) ⊆ adjoint(I^n) holds for every n >= 1
        let i = ideal(&[&[4, 0, 0], &[0, 2, 0], &[0, 0, 3], &[2, 1, 0]]);
        let mut previous = MonomialIdeal::unit(3);
        for n in 1..=6u64 {
            let direct = adjoint(&i, n).unwrap();
            assert!(
                direct.contains_ideal(&i.multiply(&previous)),
                "inclusion failed at n = {n}"
            );
            // and the adjoints shrink as the power grows
            assert!(direct.contains_ideal(&adjoint(&i, n + 1).unwrap()));
            previous = direct;
        }
    }

    #[test]
    fn report_fragment_shape() {
        let m = MonomialIdeal::maximal(3);
        let v = verify_lipman_chain(&m, 4).unwrap().to_json();
        assert_eq!(v["lipman"]["range"], serde_json::json!([3, 4]));
        assert_eq!(v["lipman"]["pass"], serde_json::json!(true));
    }
}
