//! Exact arithmetic of monomial ideals: generators, products, powers,
//! membership, and lattice-point colength computations.
//!
//! A monomial `x^v` is identified with its exponent vector `v`; a monomial
//! ideal with the antichain of its minimal generators under componentwise
//! divisibility. Exponents are arbitrary-precision integers, so no overflow
//! policy is needed anywhere; the enumerative operations (`colength`) are
//! meant for desk-scale exponents and reject boxes that could never be
//! enumerated.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Point of the nonnegative integer lattice, one coordinate per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    coords: Vec<BigInt>,
}

impl ExponentVector {
    /// Builds a vector, rejecting negative coordinates.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        for (axis, c) in coords.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeExponent { axis });
            }
        }
        Ok(Self { coords })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(coords: &[u64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![BigInt::zero(); dim],
        }
    }

    /// The monomial `x_axis^e`.
    pub fn pure_power(dim: usize, axis: usize, e: BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[axis] = e;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> &BigInt {
        &self.coords[axis]
    }

    /// Total degree: the sum of the coordinates.
    pub fn degree(&self) -> BigInt {
        self.coords.iter().sum()
    }

    /// Componentwise `<=`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Product of the underlying monomials: componentwise sum.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(axis)` when the vector is supported on a single axis with a
    /// positive coordinate there.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let mut found = None;
        for (axis, c) in self.coords.iter().enumerate() {
            if c.is_positive() {
                if found.is_some() {
                    return None;
                }
                found = Some(axis);
            }
        }
        found
    }
}

/// Canonical order: total degree first, then lexicographic on coordinates.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Monomial ideal in `dim` variables, held in canonical form: the antichain
/// of minimal generators, sorted by (degree, lex).
///
/// The zero ideal has no generators; the unit ideal is generated by the
/// origin. Both are representable so that the algebraic identities stay
/// total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding non-minimal
    /// generators. Membership semantics are unchanged by minimalization.
    pub fn minimalize(
        dim: usize,
        gens: impl IntoIterator<Item = ExponentVector>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension);
        }
        let gens: Vec<_> = gens.into_iter().collect();
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
        }
        Ok(Self {
            dim,
            generators: antichain(gens),
        })
    }

    /// Internal constructor for generator sets already known to form an
    /// antichain (e.g. staircase walks). Sorts into canonical order.
    pub(crate) fn from_antichain(dim: usize, mut gens: Vec<ExponentVector>) -> Self {
        gens.sort_unstable();
        debug_assert!(is_antichain(&gens), "generators are not an antichain");
        Self { dim, generators: gens }
    }

    /// The zero ideal (no generators).
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
        }
    }

    /// The unit ideal, generated by the origin.
    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            generators: vec![ExponentVector::origin(dim)],
        }
    }

    /// The maximal ideal `(x_1, ..., x_dim)`.
    pub fn maximal(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|axis| ExponentVector::pure_power(dim, axis, BigInt::from(1)))
            .collect();
        Self::from_antichain(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_origin()
    }

    /// True iff some generator divides `x^v`.
    pub fn contains(&self, v: &ExponentVector) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        self.generators.iter().any(|g| g.divides(v))
    }

    /// True iff `other` is contained in `self` as an ideal.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Product ideal: minimalized pairwise sums of generators.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let products: Vec<_> = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.multiply(h)))
            .collect();
        Self {
            dim: self.dim,
            generators: antichain(products),
        }
    }

    /// n-th power; `n = 0` gives the unit ideal.
    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::unit(self.dim);
        for _ in 0..n {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Minimal pure-power exponent per axis. Errors with `NotMPrimary` when
    /// some axis has no pure-power generator (the colength is then infinite).
    pub fn pure_powers(&self) -> Result<Vec<BigInt>> {
        let mut out: Vec<Option<BigInt>> = vec![None; self.dim];
        for g in &self.generators {
            if let Some(axis) = g.pure_power_axis() {
                let e = g.coord(axis);
                match &out[axis] {
                    Some(cur) if cur <= e => {}
                    _ => out[axis] = Some(e.clone()),
                }
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(axis, o)| o.ok_or(Error::NotMPrimary { axis }))
            .collect()
    }

    /// True iff every axis carries a pure-power generator.
    pub fn is_m_primary(&self) -> bool {
        self.pure_powers().is_ok()
    }

    /// Number of standard monomials: lattice points `v >= 0` outside the
    /// ideal. Enumeration is bounded by the box of pure-power exponents;
    /// points outside that box always lie in the ideal.
    pub fn colength(&self) -> Result<BigInt> {
        let bounds = self.pure_powers()?;
        let ubounds = to_box(&bounds)?;
        let ugens = small_generators(&self.generators, &ubounds);
        Ok(count_outside(&ubounds, ugens))
    }

    /// Length of `self / smaller` for `smaller ⊆ self`, both m-primary:
    /// `colength(smaller) - colength(self)`.
    pub fn quotient_length(&self, smaller: &Self) -> Result<BigInt> {
        assert_eq!(self.dim, smaller.dim, "dimension mismatch");
        for g in smaller.generators() {
            if !self.contains(g) {
                return Err(Error::NotContained {
                    witness: g.to_string(),
                });
            }
        }
        Ok(smaller.colength()? - self.colength()?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Antichain of componentwise-minimal elements, in canonical order.
///
/// A divisor has total degree `<=` the multiple, with equality only for equal
/// vectors, so after sorting by (degree, lex) and deduplicating it suffices to
/// scan the strictly-smaller-degree prefix.
fn antichain(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_unstable();
    gens.dedup();
    let degrees: Vec<BigInt> = gens.iter().map(ExponentVector::degree).collect();
    let mut keep: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    let mut keep_degrees: Vec<BigInt> = Vec::with_capacity(gens.len());
    'outer: for (g, deg) in gens.into_iter().zip(degrees) {
        for (h, hdeg) in keep.iter().zip(&keep_degrees) {
            if *hdeg >= deg {
                break;
            }
            if h.divides(&g) {
                continue 'outer;
            }
        }
        keep.push(g);
        keep_degrees.push(deg);
    }
    keep
}

fn is_antichain(gens: &[ExponentVector]) -> bool {
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if i != j && h.divides(g) {
                return false;
            }
        }
    }
    true
}

/// Converts box bounds to `usize`, rejecting boxes that could never be
/// enumerated in memory.
pub(crate) fn to_box(bounds: &[BigInt]) -> Result<Vec<usize>> {
    bounds
        .iter()
        .map(|b| {
            num::ToPrimitive::to_usize(b).ok_or_else(|| {
                Error::EnumerationTooLarge(format!("box bound {b} does not fit in usize"))
            })
        })
        .collect()
}

/// Generators as machine integers. Minimal generators of an m-primary ideal
/// satisfy `g_i <= A_i`, so the conversion cannot fail once the box fits.
fn small_generators(gens: &[ExponentVector], bounds: &[usize]) -> Vec<Vec<usize>> {
    gens.iter()
        .map(|g| {
            g.coords()
                .iter()
                .zip(bounds)
                .map(|(c, &b)| {
                    let v = num::ToPrimitive::to_usize(c)
                        .expect("minimal generator exceeds the pure-power box");
                    debug_assert!(v <= b);
                    v
                })
                .collect()
        })
        .collect()
}

/// Counts lattice points in the half-open box `[0, bounds_i)` dominated by no
/// generator. The 3- and 2-dimensional cases run a dominance sweep; higher
/// dimensions slice along the first axis.
fn count_outside(bounds: &[usize], gens: Vec<Vec<usize>>) -> BigInt {
    match bounds.len() {
        0 => unreachable!("dimension is validated at construction"),
        1 => {
            let m = gens.iter().map(|g| g[0]).min().unwrap_or(bounds[0]);
            BigInt::from(m.min(bounds[0]))
        }
        2 => {
            let (b1, b2) = (bounds[0], bounds[1]);
            // cell[v1] = least completion height among generators with first coord v1
            let mut cell = vec![usize::MAX; b1];
            for g in &gens {
                if g[0] < b1 {
                    cell[g[0]] = cell[g[0]].min(g[1]);
                }
            }
            let mut total = 0u128;
            let mut z = b2;
            for c in cell {
                z = z.min(c);
                total += z as u128;
            }
            BigInt::from(total)
        }
        3 => {
            let (b1, b2, b3) = (bounds[0], bounds[1], bounds[2]);
            let mut rows: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b1];
            for g in &gens {
                if g[0] < b1 && g[1] < b2 {
                    rows[g[0]].push((g[1], g[2]));
                }
            }
            for row in &mut rows {
                row.sort_unstable();
            }
            let mut total = BigInt::zero();
            let mut prev: Vec<usize> = vec![b3; b2];
            for row in &rows {
                let mut ptr = 0;
                let mut left = b3;
                let mut row_sum = 0u128;
                for (v2, p) in prev.iter_mut().enumerate() {
                    let mut z = (*p).min(left);
                    while ptr < row.len() && row[ptr].0 == v2 {
                        z = z.min(row[ptr].1);
                        ptr += 1;
                    }
                    *p = z;
                    left = z;
                    row_sum += z as u128;
                }
                total += BigInt::from(row_sum);
            }
            total
        }
        _ => {
            // slice along the first axis; the active set grows monotonically
            let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); bounds[0]];
            for g in gens {
                if g[0] < bounds[0] {
                    by_first[g[0]].push(g[1..].to_vec());
                } else {
                    // dominates no point of the box along this axis
                }
            }
            let mut active: Vec<Vec<usize>> = Vec::new();
            let mut total = BigInt::zero();
            for slot in by_first {
                active.extend(slot);
                total += count_outside(&bounds[1..], active.clone());
            }
            total
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawIdeal {
    dim: usize,
    generators: Vec<Vec<u64>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|c| {
                        num::ToPrimitive::to_u64(c)
                            .ok_or_else(|| S::Error::custom("exponent does not fit in u64"))
                    })
                    .collect::<std::result::Result<Vec<u64>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RawIdeal {
            dim: self.dim,
            generators,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawIdeal::deserialize(deserializer)?;
        let gens = raw
            .generators
            .iter()
            .map(|g| ExponentVector::from_ints(g))
            .collect::<Vec<_>>();
        MonomialIdeal::minimalize(raw.dim, gens).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(coords: &[u64]) -> ExponentVector {
        ExponentVector::from_ints(coords)
    }

    fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(3, gens.iter().map(|g| ev(g))).unwrap()
    }

    #[test]
    fn minimalize_drops_divisible_generators() {
        let j = ideal(&[&[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(j, MonomialIdeal::maximal(3));
    }

    #[test]
    fn minimalize_of_empty_set_is_zero_ideal() {
        let j = MonomialIdeal::minimalize(3, Vec::new()).unwrap();
        assert!(j.is_zero());
        assert!(!j.contains(&ev(&[5, 5, 5])));
    }

    #[test]
    fn minimalize_keeps_antichains() {
        let gens = [&[2u64, 0, 0][..], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]];
        let j = ideal(&gens);
        assert_eq!(j.generators().len(), 4);
    }

    #[test]
    fn minimalize_is_idempotent() {
        let j = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]);
        let again =
            MonomialIdeal::minimalize(3, j.generators().to_vec()).unwrap();
        assert_eq!(j, again);
    }

    #[test]
    fn membership_examples() {
        let m = MonomialIdeal::maximal(3);
        assert!(!m.contains(&ev(&[0, 0, 0])));
        assert!(m.contains(&ev(&[1, 3, 0])));
        let sq = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert!(!sq.contains(&ev(&[1, 1, 1])));
    }

    #[test]
    fn multiply_maximal_squared() {
        let m = MonomialIdeal::maximal(3);
        let m2 = m.multiply(&m);
        assert_eq!(m2.generators().len(), 6);
        for g in m2.generators() {
            assert_eq!(g.degree(), BigInt::from(2));
        }
    }

    #[test]
    fn unit_ideal_is_neutral() {
        let j = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]);
        assert_eq!(j.multiply(&MonomialIdeal::unit(3)), j);
    }

    #[test]
    fn zero_ideal_annihilates() {
        let j = ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(j.multiply(&MonomialIdeal::zero(3)).is_zero());
    }

    #[test]
    fn multiply_squares_by_maximal() {
        let sq = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let m = MonomialIdeal::maximal(3);
        let expected = ideal(&[
            &[3, 0, 0],
            &[2, 1, 0],
            &[2, 0, 1],
            &[0, 3, 0],
            &[1, 2, 0],
            &[0, 2, 1],
            &[0, 0, 3],
            &[1, 0, 2],
            &[0, 1, 2],
        ]);
        assert_eq!(sq.multiply(&m), expected);
        // brute-force oracle: pairwise sums, then drop dominated elements
        let mut sums = Vec::new();
        for g in sq.generators() {
            for h in m.generators() {
                sums.push(g.multiply(h));
            }
        }
        let naive: Vec<_> = sums
            .iter()
            .filter(|g| !sums.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        let naive = MonomialIdeal::minimalize(3, naive).unwrap();
        assert_eq!(naive, expected);
    }

    #[test]
    fn pow_zero_is_unit() {
        let j = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert!(j.pow(0).is_unit());
        assert_eq!(j.pow(1), j);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(MonomialIdeal::maximal(3).colength().unwrap(), BigInt::from(1));
        let m2 = MonomialIdeal::maximal(3).pow(2);
        assert_eq!(m2.colength().unwrap(), BigInt::from(4));
        let sq = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(sq.colength().unwrap(), BigInt::from(8));
    }

    #[test]
    fn colength_agrees_with_brute_enumeration() {
        let j = ideal(&[&[3, 0, 0], &[0, 2, 0], &[0, 0, 4], &[1, 1, 1], &[2, 0, 2]]);
        let mut count = 0;
        for a in 0..3u64 {
            for b in 0..2u64 {
                for c in 0..4u64 {
                    if !j.contains(&ev(&[a, b, c])) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(j.colength().unwrap(), BigInt::from(count));
    }

    #[test]
    fn colength_needs_m_primary() {
        let j = ideal(&[&[1, 0, 0], &[0, 1, 0]]);
        match j.colength() {
            Err(Error::NotMPrimary { axis: 2 }) => {}
            other => panic!("expected NotMPrimary on axis 2, got {other:?}"),
        }
        assert!(MonomialIdeal::zero(3).colength().is_err());
    }

    #[test]
    fn quotient_length_examples() {
        let m = MonomialIdeal::maximal(3);
        let m2 = m.pow(2);
        assert_eq!(m.quotient_length(&m).unwrap(), BigInt::zero());
        assert_eq!(m.quotient_length(&m2).unwrap(), BigInt::from(3));
        // every degree-4 monomial in 3 variables has some exponent >= 2
        let sq = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let m4 = m.pow(4);
        let k = sq.multiply(&m2);
        assert_eq!(m4.quotient_length(&k).unwrap(), BigInt::zero());
    }

    #[test]
    fn quotient_length_rejects_non_containment() {
        let m2 = MonomialIdeal::maximal(3).pow(2);
        let m = MonomialIdeal::maximal(3);
        assert!(matches!(
            m2.quotient_length(&m),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = MonomialIdeal::minimalize(3, vec![ev(&[1, 0])]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_minimalizes_on_load() {
        let text = r#"{"dim": 3, "generators": [[2,0,0],[0,2,0],[0,0,2],[2,1,0]]}"#;
        let j: MonomialIdeal = serde_json::from_str(text).unwrap();
        assert_eq!(j.generators().len(), 3);
        let back = serde_json::to_string(&j).unwrap();
        let j2: MonomialIdeal = serde_json::from_str(&back).unwrap();
        assert_eq!(j, j2);
    }

    #[test]
    fn negative_exponents_rejected_on_load() {
        let text = r#"{"dim": 3, "generators": [[-1,0,0]]}"#;
        assert!(serde_json::from_str::<MonomialIdeal>(text).is_err());
    }

    #[test]
    fn colength_in_two_and_four_variables() {
        let j2 = MonomialIdeal::minimalize(2, vec![ev(&[3, 0]), ev(&[0, 2]), ev(&[1, 1])]).unwrap();
        // staircase: columns of heights 2,1,1 -> 4
        assert_eq!(j2.colength().unwrap(), BigInt::from(4));
        let j4 = MonomialIdeal::minimalize(
            4,
            vec![
                ev(&[2, 0, 0, 0]),
                ev(&[0, 2, 0, 0]),
                ev(&[0, 0, 2, 0]),
                ev(&[0, 0, 0, 2]),
            ],
        )
        .unwrap();
        assert_eq!(j4.colength().unwrap(), BigInt::from(16));
    }
}
