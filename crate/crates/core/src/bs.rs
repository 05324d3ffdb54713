//! Cohomology-table calculus on the projective plane: supernatural tables,
//! exact chain decomposition of the positive-twist h^1 data, and the
//! kernel-dimension dichotomy.
//!
//! Everything here is exact rational arithmetic on finite windows; no
//! floating point. Tables model coherent sheaves whose table vanishes at
//! `h^0(m), m <= -1`, `h^1(0)` and `h^2(m), m >= 0`; for those only the zero
//! sequences `(i+1, 0)` contribute to positive twists of `h^1` (line-supported
//! sequences with first zero in `{0, -1}` are invisible there and are
//! deliberately not modelled). The h^1 row on twists `1..=r` determines
//! unique coefficients `a_1..a_r` by back-substitution of
//!
//! ```text
//! h1(m) = sum_{i=m}^{r} m*(i+1-m) * a_i
//! ```
//!
//! and the table lies in the decomposition cone exactly when all `a_i >= 0`.
//! In the cone, `dim ker psi_2 = 3*h1(1) - h1(2) = sum (i+2)*a_i`; integer
//! in-cone tables never have kernel dimension 1, and dimension 2 forces
//! `h1(1) = h1(2) = 1` — a table that is cone-feasible but not realizable by
//! a sheaf. `TwoExcluded` encodes that classification rule (the supporting
//! free-resolution argument is not re-proved here).

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};

/// Strictly decreasing sequence of one or two integers: the zeros of the
/// Hilbert polynomial of a supernatural sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroSequence(Vec<i64>);

impl ZeroSequence {
    pub fn new(zeros: Vec<i64>) -> Result<Self> {
        let ok = match zeros.as_slice() {
            [_] => true,
            [a, b] => a > b,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidZeroSequence {
                got: join(&zeros),
            });
        }
        Ok(Self(zeros))
    }

    pub fn zeros(&self) -> &[i64] {
        &self.0
    }
}

impl std::fmt::Display for ZeroSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", join(&self.0))
    }
}

fn join(zs: &[i64]) -> String {
    zs.iter()
        .map(|z| z.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Window of nonnegative rational values `h^j(m)`, `j` in `{0, 1, 2}`,
/// `m` in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    lo: i64,
    hi: i64,
    rows: [Vec<BigRational>; 3],
}

impl CohomologyTable {
    pub fn zero(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let width = (hi - lo + 1) as usize;
        Ok(Self {
            lo,
            hi,
            rows: std::array::from_fn(|_| vec![BigRational::zero(); width]),
        })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Value at `(j, m)`, or `None` when `m` is outside the window.
    pub fn value(&self, j: usize, m: i64) -> Option<&BigRational> {
        if m < self.lo || m > self.hi {
            return None;
        }
        Some(&self.rows[j][(m - self.lo) as usize])
    }

    fn add_at(&mut self, j: usize, m: i64, v: BigRational) {
        let idx = (m - self.lo) as usize;
        self.rows[j][idx] += v;
    }

    /// None when admissible; otherwise a human-readable reason. Admissible
    /// means `h^0(m) = 0` for `m <= -1`, `h^1(0) = 0`, and `h^2(m) = 0` for
    /// `m >= 0`, checked on the window. Values are nonnegative by
    /// construction.
    pub fn admissibility_violation(&self) -> Option<String> {
        for m in self.lo..=self.hi {
            if m <= -1 && !self.value(0, m).unwrap().is_zero() {
                return Some(format!("h0({m}) must vanish"));
            }
            if m == 0 && !self.value(1, m).unwrap().is_zero() {
                return Some("h1(0) must vanish".into());
            }
            if m >= 0 && !self.value(2, m).unwrap().is_zero() {
                return Some(format!("h2({m}) must vanish"));
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    /// The h^1 row on twists `1..=hi`, with trailing zeros trimmed.
    pub fn h1_positive_row(&self) -> Vec<BigRational> {
        let mut row: Vec<BigRational> = (1..=self.hi)
            .filter(|m| *m >= self.lo)
            .map(|m| self.value(1, m).unwrap().clone())
            .collect();
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        row
    }

    /// Euler characteristic `h0(m) - h1(m) + h2(m)` of one column.
    pub fn euler(&self, m: i64) -> Option<BigRational> {
        Some(
            self.value(0, m)?.clone() - self.value(1, m)? + self.value(2, m)?,
        )
    }

    /// `{"window": [lo, hi], "h": {"0": [..], "1": [..], "2": [..]}}` with
    /// rationals as normalized strings.
    pub fn to_json(&self) -> serde_json::Value {
        let row = |j: usize| {
            self.rows[j]
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
        };
        json!({
            "window": [self.lo, self.hi],
            "h": {"0": row(0), "1": row(1), "2": row(2)},
        })
    }
}

/// The supernatural table for a zero sequence: exactly one nonzero row per
/// column, with value `prod_i |m - z_i|` in the region between consecutive
/// zeros (`z_0 = +inf`, trailing zeros `-inf`), and zero at the zeros
/// themselves.
pub fn supernatural_table(z: &ZeroSequence, lo: i64, hi: i64) -> Result<CohomologyTable> {
    let mut table = CohomologyTable::zero(lo, hi)?;
    for m in lo..=hi {
        if let Some((j, v)) = supernatural_entry(z.zeros(), m) {
            table.add_at(j, m, BigRational::from_integer(v));
        }
    }
    Ok(table)
}

/// `(row, value)` of the unique nonzero entry in column `m`, if any.
fn supernatural_entry(zeros: &[i64], m: i64) -> Option<(usize, BigInt)> {
    if zeros.contains(&m) {
        return None;
    }
    let j = zeros.iter().filter(|z| **z > m).count();
    let v = zeros
        .iter()
        .map(|z| BigInt::from((m - z).abs()))
        .product();
    Some((j, v))
}

/// Exact nonnegative rational combination of supernatural tables on a
/// window. Zero sequences must be pairwise distinct.
pub fn synthesize(
    parts: &[(ZeroSequence, BigRational)],
    lo: i64,
    hi: i64,
) -> Result<CohomologyTable> {
    let mut seen: BTreeSet<&ZeroSequence> = BTreeSet::new();
    for (z, a) in parts {
        if a.is_negative() {
            return Err(Error::NegativeCoefficient {
                zeros: z.to_string(),
                value: a.to_string(),
            });
        }
        if !seen.insert(z) {
            return Err(Error::DuplicateZeroSequence {
                zeros: z.to_string(),
            });
        }
    }
    let mut table = CohomologyTable::zero(lo, hi)?;
    for (z, a) in parts {
        if a.is_zero() {
            continue;
        }
        for m in lo..=hi {
            if let Some((j, v)) = supernatural_entry(z.zeros(), m) {
                table.add_at(j, m, a * BigRational::from_integer(v));
            }
        }
    }
    Ok(table)
}

/// Coefficients of a positive-twist h^1 row over the supernatural tables
/// with zero sequences `(i+1, 0)`, `i = 1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Decomposition {
    /// `a_1..a_r`, the unique exact solution of the triangular system.
    pub coeffs: Vec<BigRational>,
    /// True iff every coefficient is nonnegative.
    pub in_cone: bool,
}

impl H1Decomposition {
    pub fn r(&self) -> usize {
        self.coeffs.len()
    }

    /// Re-synthesized `h1(m) = sum_{i=m}^r m*(i+1-m)*a_i`.
    pub fn h1_value(&self, m: usize) -> BigRational {
        if m == 0 {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for (idx, a) in self.coeffs.iter().enumerate().skip(m - 1) {
            let i = idx + 1;
            let factor = BigInt::from(m) * BigInt::from(i + 1 - m);
            acc += a * BigRational::from_integer(factor);
        }
        acc
    }

    /// `sum i * a_i`, the value `h1(1)`.
    pub fn h1_at_one(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(idx, a)| a * BigRational::from_integer(BigInt::from(idx + 1)))
            .sum()
    }

    /// `sum (i+2) * a_i`, the kernel dimension of the multiplication map on
    /// the second twist.
    pub fn kernel_dimension(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(idx, a)| a * BigRational::from_integer(BigInt::from(idx + 3)))
            .sum()
    }
}

/// Solves the triangular system for `a_1..a_r` by back-substitution, then
/// reports whether the data lies in the cone. Trailing zeros of the input
/// are trimmed first; negative input values are rejected.
pub fn solve_h1(h1: &[BigRational]) -> Result<H1Decomposition> {
    let mut h1: Vec<BigRational> = h1.to_vec();
    for (i, v) in h1.iter().enumerate() {
        if v.is_negative() {
            return Err(Error::NotAdmissible(format!(
                "h1({}) = {v} is negative",
                i + 1
            )));
        }
    }
    while h1.last().is_some_and(Zero::is_zero) {
        h1.pop();
    }
    let r = h1.len();
    let mut coeffs = vec![BigRational::zero(); r];
    for m in (1..=r).rev() {
        // h1(m) = m*a_m + sum_{i>m} m*(i+1-m)*a_i
        let mut tail = BigRational::zero();
        for i in (m + 1)..=r {
            let factor = BigInt::from(m) * BigInt::from(i + 1 - m);
            tail += &coeffs[i - 1] * BigRational::from_integer(factor);
        }
        coeffs[m - 1] =
            (&h1[m - 1] - tail) / BigRational::from_integer(BigInt::from(m));
    }
    let in_cone = coeffs.iter().all(|a| !a.is_negative());
    Ok(H1Decomposition { coeffs, in_cone })
}

/// Like [`solve_h1`] but errors with `NotInCone` when some coefficient is
/// negative, signalling h^1 data that cannot come from an admissible sheaf's
/// positive-twist decomposition.
pub fn decompose_h1(h1: &[BigRational]) -> Result<H1Decomposition> {
    let solved = solve_h1(h1)?;
    if let Some((idx, a)) = solved
        .coeffs
        .iter()
        .enumerate()
        .find(|(_, a)| a.is_negative())
    {
        return Err(Error::NotInCone {
            index: idx + 1,
            value: a.to_string(),
        });
    }
    Ok(solved)
}

/// `dim ker psi_2 = 3*h1(1) - h1(2)` for an admissible table whose window
/// contains twists 1 and 2. Cross-checkable against
/// [`H1Decomposition::kernel_dimension`].
pub fn ker_psi2(table: &CohomologyTable) -> Result<BigRational> {
    ensure_admissible(table)?;
    let h1_1 = required_value(table, 1, 1)?;
    let h1_2 = required_value(table, 1, 2)?;
    let k = BigRational::from_integer(3.into()) * h1_1 - h1_2;
    if k.is_negative() {
        return Err(Error::NegativeKernel);
    }
    Ok(k)
}

/// `h1(1)` of an admissible table.
pub fn h1_at_1(table: &CohomologyTable) -> Result<BigRational> {
    ensure_admissible(table)?;
    required_value(table, 1, 1)
}

/// Trichotomy for the kernel dimension of an integer in-cone table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelClass {
    /// `ker psi_2 = 0`; equivalently `h1(1) = 0`.
    Zero,
    /// `ker psi_2 >= 3`.
    AtLeastThree,
    /// `ker psi_2 = 2`, forcing `h1(1) = h1(2) = 1`: cone-feasible but not
    /// realizable by a coherent sheaf.
    TwoExcluded,
}

impl KernelClass {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelClass::Zero => "zero",
            KernelClass::AtLeastThree => "at_least_three",
            KernelClass::TwoExcluded => "two_excluded",
        }
    }
}

/// Classifies an admissible table with integer h^1 values whose
/// decomposition lies in the cone. Kernel dimension 1 is impossible there
/// and raises an invariant violation.
pub fn dichotomy_classify(table: &CohomologyTable) -> Result<KernelClass> {
    ensure_admissible(table)?;
    let row = table.h1_positive_row();
    for (i, v) in row.iter().enumerate() {
        if !v.is_integer() {
            return Err(Error::NonIntegerValue {
                column: (i + 1) as i64,
                value: v.to_string(),
            });
        }
    }
    let decomposition = decompose_h1(&row)?;
    let ker = ker_psi2(table)?;
    if ker != decomposition.kernel_dimension() {
        return Err(Error::InvariantViolation(format!(
            "kernel dimension mismatch: {} vs {}",
            ker,
            decomposition.kernel_dimension()
        )));
    }
    let ker = ker.to_integer();
    if ker.is_zero() {
        Ok(KernelClass::Zero)
    } else if ker >= BigInt::from(3) {
        Ok(KernelClass::AtLeastThree)
    } else if ker == BigInt::from(2) {
        let one = BigRational::one();
        if table.value(1, 1) != Some(&one) || table.value(1, 2) != Some(&one) {
            return Err(Error::InvariantViolation(
                "kernel dimension 2 without h1(1) = h1(2) = 1".into(),
            ));
        }
        Ok(KernelClass::TwoExcluded)
    } else {
        Err(Error::InvariantViolation(
            "kernel dimension 1 on an in-cone integer table".into(),
        ))
    }
}

/// Pass/fail of a columnwise property, with the first offending column on
/// failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyCheck {
    pub pass: bool,
    pub witness: Option<i64>,
}

impl PropertyCheck {
    fn pass() -> Self {
        Self {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: i64) -> Self {
        Self {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Once h^1 vanishes at a positive twist it stays zero: checks
/// `h1(m) = 0 => h1(m+1) = 0` for `m >= 1` within the window.
pub fn persistence_check(table: &CohomologyTable) -> PropertyCheck {
    let (lo, hi) = table.window();
    for m in lo.max(1)..hi {
        let here = table.value(1, m).unwrap();
        let next = table.value(1, m + 1).unwrap();
        if here.is_zero() && !next.is_zero() {
            return PropertyCheck::fail(m + 1);
        }
    }
    PropertyCheck::pass()
}

/// When `h1(1) = h1(2) = 1`, h^1 must vanish from twist 3 on; vacuously true
/// otherwise.
pub fn vanish_after_two(table: &CohomologyTable) -> PropertyCheck {
    let one = BigRational::one();
    if table.value(1, 1) != Some(&one) || table.value(1, 2) != Some(&one) {
        return PropertyCheck::pass();
    }
    let (lo, hi) = table.window();
    for m in lo.max(3)..=hi {
        if !table.value(1, m).unwrap().is_zero() {
            return PropertyCheck::fail(m);
        }
    }
    PropertyCheck::pass()
}

/// Exhaustive scan over integer h^1 vectors with entries `<= h1_max` and
/// length `r_max`.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub h1_max: u64,
    pub r_max: usize,
    pub total: u64,
    pub in_cone: u64,
    pub kernel_zero: u64,
    pub kernel_two: u64,
    pub kernel_at_least_three: u64,
    pub violations: Vec<String>,
}

impl ScanReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "h1_max": self.h1_max,
            "r_max": self.r_max,
            "total": self.total,
            "in_cone": self.in_cone,
            "kernel_zero": self.kernel_zero,
            "kernel_two": self.kernel_two,
            "kernel_at_least_three": self.kernel_at_least_three,
            "pass": self.pass(),
            "violations": self.violations,
        })
    }
}

/// Scans every integer h^1 vector in `[0, h1_max]^{r_max}` and asserts, for
/// the in-cone ones: the kernel dimension is never 1; dimension 2 occurs
/// only with `h1(1) = h1(2) = 1`; and `h1(1) = h1(2) = 1` forces
/// `h1(m) = 0` for `m >= 3`.
pub fn dichotomy_scan(h1_max: u64, r_max: usize) -> ScanReport {
    assert!(r_max >= 1, "scan needs at least one twist");
    let mut report = ScanReport {
        h1_max,
        r_max,
        total: 0,
        in_cone: 0,
        kernel_zero: 0,
        kernel_two: 0,
        kernel_at_least_three: 0,
        violations: Vec::new(),
    };
    let mut vector = vec![0u64; r_max];
    loop {
        report.total += 1;
        scan_one(&mut report, &vector);
        // odometer
        let mut pos = 0;
        loop {
            if pos == r_max {
                return report;
            }
            if vector[pos] < h1_max {
                vector[pos] += 1;
                break;
            }
            vector[pos] = 0;
            pos += 1;
        }
    }
}

fn scan_one(report: &mut ScanReport, vector: &[u64]) {
    let h1: Vec<BigRational> = vector
        .iter()
        .map(|&v| BigRational::from_integer(v.into()))
        .collect();
    let solved = solve_h1(&h1).expect("nonnegative integers");
    if !solved.in_cone {
        return;
    }
    report.in_cone += 1;
    let ker = solved.kernel_dimension();
    let direct = BigRational::from_integer(3.into()) * &h1[0]
        - h1.get(1).cloned().unwrap_or_else(BigRational::zero);
    if ker != direct {
        report
            .violations
            .push(format!("kernel formulas disagree on {vector:?}"));
        return;
    }
    debug_assert!(ker.is_integer());
    let ker = ker.to_integer();
    if ker.is_zero() {
        report.kernel_zero += 1;
    } else if ker == BigInt::from(2) {
        report.kernel_two += 1;
        if vector[0] != 1 || vector.get(1) != Some(&1) {
            report
                .violations
                .push(format!("kernel 2 without h1 prefix (1, 1) on {vector:?}"));
        }
    } else if ker >= BigInt::from(3) {
        report.kernel_at_least_three += 1;
    } else {
        report
            .violations
            .push(format!("kernel dimension {ker} on in-cone vector {vector:?}"));
    }
    if vector[0] == 1 && vector.get(1) == Some(&1) && vector[2..].iter().any(|&v| v > 0) {
        report.violations.push(format!(
            "in-cone vector {vector:?} has h1(1) = h1(2) = 1 but h1 alive at twist >= 3"
        ));
    }
}

fn ensure_admissible(table: &CohomologyTable) -> Result<()> {
    match table.admissibility_violation() {
        None => Ok(()),
        Some(reason) => Err(Error::NotAdmissible(reason)),
    }
}

fn required_value(table: &CohomologyTable, j: usize, m: i64) -> Result<BigRational> {
    let (lo, hi) = table.window();
    table
        .value(j, m)
        .cloned()
        .ok_or(Error::WindowMissingColumn { lo, hi, column: m })
}
