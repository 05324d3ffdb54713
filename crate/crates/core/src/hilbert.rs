//! Normal Hilbert function sampling and exact extraction of the normal
//! Hilbert coefficients in the binomial basis, for three variables.
//!
//! `L(n) = colength of the integral closure of I^{n+1}` agrees for large `n`
//! with the cubic
//!
//! ```text
//! e0*C(n+3,3) - e1*C(n+2,2) + e2*C(n+1,1) - e3
//! ```
//!
//! and the coefficients are read off by exact integer finite differences
//! once the fourth differences are observed to vanish on a sufficiently long
//! tail. Stability is detected, never assumed: too few stable trailing
//! samples is an error, and the caller extends the sample range.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::newton::NewtonPolyhedron;

/// Default sampling range; postulation numbers of desk-scale monomial ideals
/// are small, but the fit still demands a detected stable tail.
pub const DEFAULT_N_MAX: u32 = 12;

/// Hard cap for automatic sample-range extension.
pub const N_MAX_CAP: u32 = 40;

/// How many trailing vanishing fourth differences certify the cubic tail.
pub const STABILITY_MARGIN: u32 = 4;

/// Sampled normal Hilbert function together with its fitted coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalHilbertProfile {
    /// Pairs `(n, colength of closure(I^{n+1}))`, contiguous from `n = 0`.
    pub samples: Vec<(u32, BigInt)>,
    /// Least index from which the cubic fit reproduces the samples exactly.
    pub postulation: u32,
    /// Coefficients `(e0, e1, e2, e3)` in the alternating binomial basis.
    pub ebar: [BigInt; 4],
}

impl NormalHilbertProfile {
    /// Report fragment `{"ebar": [...], "postulation": k, "samples": [[n, L], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ebar": self.ebar.iter().map(crate::report::int_json).collect::<Vec<_>>(),
            "postulation": self.postulation,
            "samples": self
                .samples
                .iter()
                .map(|(n, l)| serde_json::json!([n, crate::report::int_json(l)]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Samples `L(n) = colength(closure(I^{n+1}))` for `n = 0..=n_max`.
pub fn sample_normal_hilbert(
    ideal: &MonomialIdeal,
    n_max: u32,
) -> Result<Vec<(u32, BigInt)>> {
    let np = NewtonPolyhedron::of(ideal)?;
    sample_range(&np, 0, n_max)
}

fn sample_range(np: &NewtonPolyhedron, from: u32, to: u32) -> Result<Vec<(u32, BigInt)>> {
    (from..=to)
        .map(|n| Ok((n, np.closure_ideal(u64::from(n) + 1)?.colength()?)))
        .collect()
}

/// Extracts the normal Hilbert coefficients from contiguous samples by exact
/// finite differences.
///
/// The postulation index is the least `n0` whose fourth differences vanish
/// from `n0` on; at least [`STABILITY_MARGIN`] trailing differences must
/// witness this, otherwise `InsufficientSamples` asks the caller for a wider
/// range. Coefficients are peeled off highest-order first, so a
/// non-polynomial tail fails loudly instead of rounding.
pub fn fit_ebar(samples: &[(u32, BigInt)]) -> Result<NormalHilbertProfile> {
    let values = validate_samples(samples)?;
    let n_max = (values.len() - 1) as u32;

    let d1 = diffs(&values);
    let d2 = diffs(&d1);
    let d3 = diffs(&d2);
    let d4 = diffs(&d3);
    if d4.is_empty() {
        return Err(Error::InsufficientSamples {
            n_max,
            needed: STABILITY_MARGIN,
        });
    }
    let mut n0 = d4.len();
    for i in (0..d4.len()).rev() {
        if d4[i].is_zero() {
            n0 = i;
        } else {
            break;
        }
    }
    if d4.len() - n0 < STABILITY_MARGIN as usize {
        return Err(Error::InsufficientSamples {
            n_max,
            needed: STABILITY_MARGIN,
        });
    }

    let e0 = d3[n0].clone();
    let m1: Vec<BigInt> = values
        .iter()
        .enumerate()
        .map(|(n, l)| &e0 * binom3(n as u32) - l)
        .collect();
    let e1 = diffs(&diffs(&m1))[n0].clone();
    let m2: Vec<BigInt> = m1
        .iter()
        .enumerate()
        .map(|(n, v)| &e1 * binom2(n as u32) - v)
        .collect();
    let e2 = diffs(&m2)[n0].clone();
    let e3 = &e2 * BigInt::from(n0 as u32 + 1) - &m2[n0];

    if !e0.is_positive() {
        return Err(Error::InvalidSamples(format!(
            "fitted leading coefficient {e0} is not positive"
        )));
    }
    // the fit must reproduce every sample from the postulation index on
    for (n, l) in values.iter().enumerate().skip(n0) {
        let n = n as u32;
        let fitted =
            &e0 * binom3(n) - &e1 * binom2(n) + &e2 * BigInt::from(n + 1) - &e3;
        if fitted != *l {
            return Err(Error::InvariantViolation(format!(
                "fitted polynomial misses sample at n = {n}: {fitted} != {l}"
            )));
        }
    }

    Ok(NormalHilbertProfile {
        samples: samples.to_vec(),
        postulation: n0 as u32,
        ebar: [e0, e1, e2, e3],
    })
}

/// Samples and fits with automatic range extension up to [`N_MAX_CAP`].
pub fn normal_hilbert_profile(ideal: &MonomialIdeal) -> Result<NormalHilbertProfile> {
    profile_with_range(ideal, DEFAULT_N_MAX, N_MAX_CAP)
}

/// Samples `0..=n_max`, extending in steps while the stability margin is not
/// met, up to `cap`.
pub fn profile_with_range(
    ideal: &MonomialIdeal,
    n_max: u32,
    cap: u32,
) -> Result<NormalHilbertProfile> {
    let np = NewtonPolyhedron::of(ideal)?;
    let mut n_max = n_max;
    let mut samples = sample_range(&np, 0, n_max)?;
    loop {
        match fit_ebar(&samples) {
            Err(Error::InsufficientSamples { .. }) if n_max < cap => {
                let next = (n_max + STABILITY_MARGIN + 3).min(cap);
                samples.extend(sample_range(&np, n_max + 1, next)?);
                n_max = next;
            }
            other => return other,
        }
    }
}

/// Normalized multiplicity `3! * vol(R^3_{>=0} \ NP(I))`, computed by exact
/// rational polytope volume, independent of the Hilbert-function route. The
/// result must equal the fitted leading coefficient.
///
/// The complement region is contained in the pure-power box, so its volume is
/// `A1*A2*A3 - vol(NP ∩ box)`; the intersection is a convex polytope whose
/// volume comes from vertex enumeration over facet-plane triples and a fan
/// triangulation of each face.
pub fn multiplicity_volume(ideal: &MonomialIdeal) -> Result<BigInt> {
    let np = NewtonPolyhedron::of(ideal)?;
    let bounds = np.pure_powers();

    // outward halfspaces <n, v> <= rhs for NP ∩ box
    let mut planes: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for f in np.facets() {
        planes.push((
            f.normal().iter().map(|c| -c).collect(),
            -f.rhs().clone(),
        ));
    }
    for axis in 0..3 {
        let mut pos = vec![BigInt::zero(); 3];
        pos[axis] = BigInt::one();
        planes.push((pos.clone(), bounds[axis].clone()));
        let neg = pos.iter().map(|c| -c).collect();
        planes.push((neg, BigInt::zero()));
    }

    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            for k in (j + 1)..planes.len() {
                let Some(v) = solve3(&planes[i], &planes[j], &planes[k]) else {
                    continue;
                };
                let feasible = planes.iter().all(|(n, rhs)| {
                    plane_eval(n, &v) <= BigRational::from_integer(rhs.clone())
                });
                if feasible && !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
    }

    let mut six_vol = BigRational::zero();
    for (n, rhs) in &planes {
        let rhs_q = BigRational::from_integer(rhs.clone());
        let face: Vec<&Vec<BigRational>> = vertices
            .iter()
            .filter(|v| plane_eval(n, v) == rhs_q)
            .collect();
        if face.len() < 3 {
            continue;
        }
        let drop_axis = (0..3)
            .max_by_key(|&i| num::abs(n[i].clone()))
            .expect("three axes");
        let keep: Vec<usize> = (0..3).filter(|&i| i != drop_axis).collect();
        let mut projected: Vec<(BigRational, BigRational, &Vec<BigRational>)> = face
            .iter()
            .map(|v| (v[keep[0]].clone(), v[keep[1]].clone(), *v))
            .collect();
        projected.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let polygon = hull_2d(&projected);
        if polygon.len() < 3 {
            continue;
        }
        // orient the fan outward, then add signed tetra volumes to the origin
        let p0 = polygon[0];
        let mut orient = BigRational::zero();
        for t in 1..polygon.len() - 1 {
            let u: Vec<BigRational> = (0..3).map(|c| &polygon[t][c] - &p0[c]).collect();
            let w: Vec<BigRational> =
                (0..3).map(|c| &polygon[t + 1][c] - &p0[c]).collect();
            let cr = [
                &u[1] * &w[2] - &u[2] * &w[1],
                &u[2] * &w[0] - &u[0] * &w[2],
                &u[0] * &w[1] - &u[1] * &w[0],
            ];
            let d: BigRational = (0..3)
                .map(|c| &cr[c] * BigRational::from_integer(n[c].clone()))
                .sum();
            if !d.is_zero() {
                orient = if d.is_positive() {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                break;
            }
        }
        if orient.is_zero() {
            continue;
        }
        for t in 1..polygon.len() - 1 {
            six_vol += &orient * triple_product(p0, polygon[t], polygon[t + 1]);
        }
    }

    let box_vol = BigRational::from_integer(&bounds[0] * &bounds[1] * &bounds[2]);
    let six_complement = BigRational::from_integer(BigInt::from(6)) * box_vol - six_vol;
    if !six_complement.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "normalized volume {six_complement} is not an integer"
        )));
    }
    if six_complement.is_negative() {
        return Err(Error::InvariantViolation(
            "normalized volume is negative".into(),
        ));
    }
    Ok(six_complement.to_integer())
}

fn validate_samples(samples: &[(u32, BigInt)]) -> Result<Vec<BigInt>> {
    if samples.is_empty() {
        return Err(Error::InvalidSamples("no samples given".into()));
    }
    let mut values = Vec::with_capacity(samples.len());
    for (i, (n, l)) in samples.iter().enumerate() {
        if *n != i as u32 {
            return Err(Error::InvalidSamples(format!(
                "samples must cover a contiguous range from 0; index {i} holds n = {n}"
            )));
        }
        if let Some(prev) = values.last() {
            if l < prev {
                return Err(Error::InvalidSamples(format!(
                    "lengths must be nondecreasing; L({n}) = {l} drops below {prev}"
                )));
            }
        }
        values.push(l.clone());
    }
    Ok(values)
}

fn diffs(xs: &[BigInt]) -> Vec<BigInt> {
    xs.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// `C(n+3, 3)` as a big integer.
fn binom3(n: u32) -> BigInt {
    let n = BigInt::from(n);
    (&n + 1) * (&n + 2) * (&n + 3) / BigInt::from(6)
}

/// `C(n+2, 2)`.
fn binom2(n: u32) -> BigInt {
    let n = BigInt::from(n);
    (&n + 1) * (&n + 2) / BigInt::from(2)
}

fn plane_eval(n: &[BigInt], v: &[BigRational]) -> BigRational {
    (0..3)
        .map(|i| BigRational::from_integer(n[i].clone()) * &v[i])
        .sum()
}

/// Cramer solution of the 3x3 system `<n_i, v> = rhs_i`; `None` when the
/// planes are not in general position.
fn solve3(
    p1: &(Vec<BigInt>, BigInt),
    p2: &(Vec<BigInt>, BigInt),
    p3: &(Vec<BigInt>, BigInt),
) -> Option<Vec<BigRational>> {
    let m = [&p1.0, &p2.0, &p3.0];
    let r = [&p1.1, &p2.1, &p3.1];
    let det = det3(m[0], m[1], m[2]);
    if det.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let cols: Vec<Vec<BigInt>> = (0..3)
            .map(|row| {
                let mut v = m[row].clone();
                v[i] = r[row].clone();
                v
            })
            .collect();
        let di = det3(&cols[0], &cols[1], &cols[2]);
        out.push(BigRational::new(di, det.clone()));
    }
    Some(out)
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn triple_product(a: &[BigRational], b: &[BigRational], c: &[BigRational]) -> BigRational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Monotone-chain convex hull; input sorted by projected coordinates, output
/// the boundary polygon without collinear points.
fn hull_2d<'a>(
    pts: &[(BigRational, BigRational, &'a Vec<BigRational>)],
) -> Vec<&'a Vec<BigRational>> {
    if pts.len() < 3 {
        return pts.iter().map(|p| p.2).collect();
    }
    let cross = |o: &(BigRational, BigRational, &Vec<BigRational>),
                 a: &(BigRational, BigRational, &Vec<BigRational>),
                 b: &(BigRational, BigRational, &Vec<BigRational>)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<&(BigRational, BigRational, &Vec<BigRational>)> = Vec::new();
    for p in pts {
        while lower.len() >= 2
            && !cross(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&(BigRational, BigRational, &Vec<BigRational>)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|p| p.2).collect()
}
