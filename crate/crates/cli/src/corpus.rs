//! Deterministic instance corpus: pure-power reductions plus extra
//! generators sampled from the lattice points of the reduction's Newton
//! polyhedron, so every instance satisfies the reduction property by
//! construction.

use blowup_core::newton::NewtonPolyhedron;
use blowup_core::{ExponentVector, MonomialIdeal};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    /// Largest pure-power exponent; must be at least 2.
    pub max_exp: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 20,
            max_exp: 4,
        }
    }
}

/// One `(ideal, reduction)` pair, serialized with the seed that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub seed: u64,
    pub index: usize,
    pub ideal: MonomialIdeal,
    pub reduction: MonomialIdeal,
}

impl Instance {
    pub fn file_name(&self) -> String {
        format!("instance_{:03}.json", self.index)
    }
}

/// Generates `count` instances. The same parameters always produce the same
/// corpus.
pub fn generate(params: CorpusParams) -> Vec<Instance> {
    assert!(params.max_exp >= 2, "max_exp must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.count)
        .map(|index| one_instance(&mut rng, params.seed, index, params.max_exp))
        .collect()
}

fn one_instance(rng: &mut ChaCha8Rng, seed: u64, index: usize, max_exp: u64) -> Instance {
    let powers = [
        rng.random_range(2..=max_exp),
        rng.random_range(2..=max_exp),
        rng.random_range(2..=max_exp),
    ];
    let reduction = MonomialIdeal::minimalize(
        3,
        powers
            .iter()
            .enumerate()
            .map(|(axis, &e)| ExponentVector::pure_power(3, axis, BigInt::from(e))),
    )
    .expect("pure powers are valid generators");

    // lattice points of NP(q) inside the box that generate something new
    let np = NewtonPolyhedron::of(&reduction).expect("pure powers are m-primary");
    let one = BigRational::one();
    let mut candidates = Vec::new();
    for a in 0..=powers[0] {
        for b in 0..=powers[1] {
            for c in 0..=powers[2] {
                let v = ExponentVector::from_ints(&[a, b, c]);
                if np.member(&v, &one) && !reduction.contains(&v) {
                    candidates.push(v);
                }
            }
        }
    }

    let extras = rng.random_range(0..=4usize);
    let mut gens = reduction.generators().to_vec();
    for _ in 0..extras {
        if candidates.is_empty() {
            break;
        }
        gens.push(candidates[rng.random_range(0..candidates.len())].clone());
    }
    let ideal = MonomialIdeal::minimalize(3, gens).expect("generated vectors share dimension");
    Instance {
        seed,
        index,
        ideal,
        reduction,
    }
}
