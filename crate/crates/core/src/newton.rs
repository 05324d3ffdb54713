//! Newton polyhedron of an m-primary monomial ideal and everything derived
//! from it: integral closures of powers, interior membership, and reduction
//! testing.
//!
//! The polyhedron is `conv(generators) + R^d_{>=0}`, stored as the
//! irredundant list of non-coordinate facet inequalities. For an m-primary
//! ideal every facet normal is strictly positive, every facet contains three
//! affinely independent generator points, and the lattice points of the
//! `n`-fold dilation are exactly the exponents of the integral closure of the
//! `n`-th power.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};

/// Supporting inequality `<normal, v> >= rhs` with primitive nonnegative
/// normal and positive right-hand side. Coordinate hyperplanes `v_i >= 0`
/// are implicit and never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    normal: Vec<BigInt>,
    rhs: BigInt,
}

impl Facet {
    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    fn dot(&self, v: &ExponentVector) -> BigInt {
        self.normal
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl std::fmt::Display for Facet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coeffs: Vec<String> = self.normal.iter().map(|c| c.to_string()).collect();
        write!(f, "<({}), v> >= {}", coeffs.join(", "), self.rhs)
    }
}

/// Facet-inequality description of `conv(generators) + R^3_{>=0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    facets: Vec<Facet>,
    pure_powers: Vec<BigInt>,
}

/// Which lattice points of the dilated polyhedron a staircase walk collects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LatticeRule {
    /// Points of `n * NP` itself (integral closure of the n-th power).
    Closure,
    /// Points `v` with `v + (1,..,1)` in the topological interior of
    /// `n * NP + orthant` (adjoint rule).
    Interior,
}

impl NewtonPolyhedron {
    /// Builds the irredundant facet list of the Newton polyhedron.
    ///
    /// Candidate planes run through all triples drawn from the generator
    /// points and the three recession rays; a candidate survives when its
    /// primitive normal is nonnegative, its right-hand side positive, and
    /// every generator lies on or above it. That keeps exactly the facets:
    /// each facet of an m-primary polyhedron is spanned by generator points
    /// alone, so some triple produces its plane, and any surviving plane
    /// supports the polyhedron along a two-dimensional face.
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        let dim = ideal.dim();
        if dim != 3 {
            return Err(Error::UnsupportedDimension { found: dim });
        }
        let pure_powers = ideal.pure_powers()?;
        let gens = ideal.generators();

        #[derive(Clone, Copy)]
        enum Elem<'a> {
            Point(&'a ExponentVector),
            Ray(usize),
        }

        let elems: Vec<Elem> = gens
            .iter()
            .map(Elem::Point)
            .chain((0..3).map(Elem::Ray))
            .collect();

        let mut found: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                for k in (j + 1)..elems.len() {
                    let candidate = match (elems[i], elems[j], elems[k]) {
                        (Elem::Point(p), Elem::Point(q), Elem::Point(r)) => {
                            Some((cross(&sub(q, p), &sub(r, p)), p))
                        }
                        (Elem::Point(p), Elem::Point(q), Elem::Ray(r)) => {
                            Some((cross(&sub(q, p), &unit(r)), p))
                        }
                        (Elem::Point(p), Elem::Ray(r1), Elem::Ray(r2)) => {
                            Some((cross(&unit(r1), &unit(r2)), p))
                        }
                        _ => None,
                    };
                    let Some((mut normal, base)) = candidate else {
                        continue;
                    };
                    let has_pos = normal.iter().any(|c| c.is_positive());
                    let has_neg = normal.iter().any(|c| c.is_negative());
                    if has_pos && has_neg || (!has_pos && !has_neg) {
                        continue;
                    }
                    if has_neg {
                        for c in &mut normal {
                            *c = -std::mem::take(c);
                        }
                    }
                    let g = normal
                        .iter()
                        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
                    for c in &mut normal {
                        *c = &*c / &g;
                    }
                    let rhs: BigInt = normal
                        .iter()
                        .zip(base.coords())
                        .map(|(a, b)| a * b)
                        .sum();
                    if !rhs.is_positive() {
                        continue;
                    }
                    let supports = gens.iter().all(|g| {
                        normal
                            .iter()
                            .zip(g.coords())
                            .map(|(a, b)| a * b)
                            .sum::<BigInt>()
                            >= rhs
                    });
                    if supports {
                        found.insert((normal, rhs));
                    }
                }
            }
        }

        let facets: Vec<Facet> = found
            .into_iter()
            .map(|(normal, rhs)| Facet { normal, rhs })
            .collect();
        debug_assert!(!facets.is_empty());
        Ok(Self {
            dim,
            facets,
            pure_powers,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Pure-power exponent of the source ideal per axis.
    pub fn pure_powers(&self) -> &[BigInt] {
        &self.pure_powers
    }

    /// True iff `v` lies in the `t`-fold dilation: `<a_F, v> >= t * b_F` for
    /// every facet, by exact rational comparison. `t` must be positive.
    pub fn member(&self, v: &ExponentVector, t: &BigRational) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        debug_assert!(t.is_positive());
        self.facets
            .iter()
            .all(|f| f.dot(v) * t.denom() >= t.numer() * &f.rhs)
    }

    /// Strict membership on every stored facet. Coordinate-plane strictness
    /// is not required here; the adjoint rule supplies it through the
    /// `+(1,..,1)` shift.
    pub fn interior_member(&self, v: &ExponentVector, t: &BigRational) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        debug_assert!(t.is_positive());
        self.facets
            .iter()
            .all(|f| f.dot(v) * t.denom() > t.numer() * &f.rhs)
    }

    /// Minimal generators of the monomial ideal of lattice points selected by
    /// `rule` at dilation `n`, via a staircase walk over the bounding box
    /// `[0, n*A_1] x [0, n*A_2]`.
    ///
    /// For each column prefix the least admissible height is the max of the
    /// per-facet ceilings; a lattice point is a minimal generator exactly
    /// where that height strictly drops in both directions.
    pub(crate) fn staircase_ideal(&self, n: u64, rule: LatticeRule) -> Result<MonomialIdeal> {
        assert!(n >= 1, "dilation factor must be positive");
        let n_big = BigInt::from(n);
        let b1 = checked_bound(&(&self.pure_powers[0] * &n_big))?;
        let b2 = checked_bound(&(&self.pure_powers[1] * &n_big))?;

        struct Walk {
            a1: BigInt,
            a2: BigInt,
            a3: BigInt,
            row_start: BigInt, // numerator at (v1, 0), updated per row
            num: BigInt,       // numerator at the current cell
        }
        let mut walks: Vec<Walk> = self
            .facets
            .iter()
            .map(|f| {
                let offset = match rule {
                    LatticeRule::Closure => BigInt::zero(),
                    // v3+1 > (n*b - a1*(v1+1) - a2*(v2+1)) / a3 rearranged
                    LatticeRule::Interior => {
                        BigInt::one() - &f.normal[0] - &f.normal[1] - &f.normal[2]
                    }
                };
                Walk {
                    a1: f.normal[0].clone(),
                    a2: f.normal[1].clone(),
                    a3: f.normal[2].clone(),
                    row_start: &f.rhs * &n_big + offset,
                    num: BigInt::zero(),
                }
            })
            .collect();

        let zero = BigInt::zero();
        let mut gens: Vec<ExponentVector> = Vec::new();
        let mut prev: Vec<Option<BigInt>> = vec![None; b2 + 1];
        for v1 in 0..=b1 {
            for w in &mut walks {
                w.num = w.row_start.clone();
            }
            let mut left: Option<BigInt> = None;
            for (v2, up) in prev.iter_mut().enumerate() {
                let mut z = BigInt::zero();
                for w in &mut walks {
                    if w.num.is_positive() {
                        let h = w.num.div_ceil(&w.a3);
                        if h > z {
                            z = h;
                        }
                    }
                    w.num -= &w.a2;
                }
                debug_assert!(z >= zero);
                let drops_up = up.as_ref().map_or(v1 == 0, |p| *p > z);
                let drops_left = left.as_ref().is_none_or(|l| *l > z);
                if drops_up && drops_left {
                    let coords = vec![BigInt::from(v1), BigInt::from(v2), z.clone()];
                    gens.push(ExponentVector::new(coords).expect("nonnegative by construction"));
                }
                left = Some(z.clone());
                *up = Some(z);
            }
            for w in &mut walks {
                w.row_start -= &w.a1;
            }
        }
        Ok(MonomialIdeal::from_antichain(self.dim, gens))
    }

    /// Minimal generators of the integral closure of the `n`-th power.
    pub fn closure_ideal(&self, n: u64) -> Result<MonomialIdeal> {
        self.staircase_ideal(n, LatticeRule::Closure)
    }
}

/// Minimal generators of the integral closure of `I^n`: the lattice points of
/// `n * NP(I)`. The result contains `I^n`.
pub fn integral_closure(ideal: &MonomialIdeal, n: u64) -> Result<MonomialIdeal> {
    NewtonPolyhedron::of(ideal)?.closure_ideal(n)
}

/// True iff `q` is a reduction of `ideal`: the two Newton polyhedra coincide,
/// equivalently the ideals have equal integral closures.
///
/// Requires `q ⊆ ideal`, both m-primary. Since `q ⊆ ideal` forces
/// `NP(q) ⊆ NP(ideal)`, equality amounts to every generator of `ideal` lying
/// in `NP(q)`.
pub fn is_reduction(q: &MonomialIdeal, ideal: &MonomialIdeal) -> Result<bool> {
    Ok(non_member_witness(q, ideal)?.is_none())
}

/// Returns a generator of `ideal` outside `NP(q)` when `q` is not a
/// reduction of `ideal`, after validating the preconditions.
pub(crate) fn non_member_witness(
    q: &MonomialIdeal,
    ideal: &MonomialIdeal,
) -> Result<Option<ExponentVector>> {
    if q.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.dim(),
            found: q.dim(),
        });
    }
    for g in q.generators() {
        if !ideal.contains(g) {
            return Err(Error::NotContained {
                witness: g.to_string(),
            });
        }
    }
    let np_q = NewtonPolyhedron::of(q)?;
    let one = BigRational::one();
    Ok(ideal
        .generators()
        .iter()
        .find(|g| !np_q.member(g, &one))
        .cloned())
}

/// Validates the reduction precondition shared by the chain verifiers.
pub(crate) fn ensure_reduction(q: &MonomialIdeal, ideal: &MonomialIdeal) -> Result<()> {
    match non_member_witness(q, ideal)? {
        None => Ok(()),
        Some(g) => Err(Error::NotReduction {
            witness: g.to_string(),
        }),
    }
}

fn checked_bound(b: &BigInt) -> Result<usize> {
    b.to_usize().ok_or_else(|| {
        Error::EnumerationTooLarge(format!("staircase bound {b} does not fit in usize"))
    })
}

fn sub(a: &ExponentVector, b: &ExponentVector) -> Vec<BigInt> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x - y)
        .collect()
}

fn unit(axis: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); 3];
    v[axis] = BigInt::one();
    v
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}
