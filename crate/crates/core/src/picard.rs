//! The Picard lattice of the plane blown up at `n` very general points.
//!
//! A class `dH - m1 E1 - ... - mn En` is stored as its degree `d` and the
//! multiplicity vector `(m1, ..., mn)`. The basis is orthogonal with
//! `H.H = 1` and `Ei.Ei = -1`, so the pairing of two classes is
//! `d d' - sum mi mi'`. Shorter multiplicity vectors are read as if padded
//! with zeros: an unused general point changes no numerical invariant.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("degree {0} is negative; not an interpolation system")]
    NegativeDegree(i64),
    #[error("multiplicity m{index} = {value} is negative; not an interpolation system")]
    NegativeMultiplicity { index: usize, value: i64 },
}

/// A divisor class `dH - sum mi Ei`.
///
/// Equality, hashing and ordering all treat trailing zero multiplicities as
/// absent, so `(1; 1,1)` and `(1; 1,1,0)` are the same class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorClass {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        Self { degree, mults }
    }

    /// The exceptional class `Ei` (1-based) in an ambient of `n` points.
    /// The vector is padded to `max(n, index)`.
    pub fn exceptional(index: usize, n: usize) -> Self {
        assert!(index >= 1, "exceptional classes are 1-based");
        let mut mults = vec![0; n.max(index)];
        mults[index - 1] = -1;
        Self { degree: 0, mults }
    }

    /// The hyperplane class `H`.
    pub fn hyperplane(n: usize) -> Self {
        Self {
            degree: 1,
            mults: vec![0; n],
        }
    }

    /// Number of stored multiplicities (the ambient `n` this value was built for).
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Multiplicity at the 1-based index `i`, zero beyond the stored length.
    pub fn mult(&self, i: usize) -> i64 {
        assert!(i >= 1, "multiplicities are 1-based");
        self.mults.get(i - 1).copied().unwrap_or(0)
    }

    /// Length ignoring trailing zeros.
    pub fn support_len(&self) -> usize {
        self.mults
            .iter()
            .rposition(|&m| m != 0)
            .map_or(0, |p| p + 1)
    }

    fn trimmed(&self) -> &[i64] {
        &self.mults[..self.support_len()]
    }

    /// Copy padded with zeros to at least `n` multiplicities.
    pub fn padded(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.pad_to(n);
        out
    }

    pub fn pad_to(&mut self, n: usize) {
        if self.mults.len() < n {
            self.mults.resize(n, 0);
        }
    }

    pub fn has_negative_mult(&self) -> bool {
        self.mults.iter().any(|&m| m < 0)
    }

    /// 1-based index of the first negative multiplicity.
    pub fn first_negative(&self) -> Option<usize> {
        self.mults.iter().position(|&m| m < 0).map(|p| p + 1)
    }

    /// If this class is some `Ei`, returns `i`.
    pub fn exceptional_index(&self) -> Option<usize> {
        if self.degree != 0 {
            return None;
        }
        let mut found = None;
        for (p, &m) in self.mults.iter().enumerate() {
            match m {
                0 => {}
                -1 if found.is_none() => found = Some(p + 1),
                _ => return None,
            }
        }
        found
    }

    pub fn sum_mults(&self) -> i64 {
        self.mults.iter().sum()
    }

    pub fn sum_sq_mults(&self) -> i64 {
        self.mults.iter().map(|m| m * m).sum()
    }

    /// Self-intersection `C.C`.
    pub fn self_intersection(&self) -> i64 {
        self.degree * self.degree - self.sum_sq_mults()
    }

    /// `C.(-K) = 3d - sum mi`.
    pub fn anticanonical_degree(&self) -> i64 {
        3 * self.degree - self.sum_mults()
    }

    /// Arithmetic genus `(2 + C.(C + K)) / 2`.
    ///
    /// Always an integer: `C.(C + K) = d(d - 3) - sum mi(mi - 1)` and both
    /// `d(d - 3)` and every `mi(mi - 1)` are even.
    pub fn arithmetic_genus(&self) -> i64 {
        let c_cplusk = self.self_intersection() - self.anticanonical_degree();
        debug_assert_eq!(c_cplusk.rem_euclid(2), 0);
        (2 + c_cplusk) / 2
    }

    /// The un-clamped count `(d+2)(d+1)/2 - sum (mi+1)mi/2`.
    pub fn expected_dimension_expr(&self) -> i64 {
        let d = self.degree;
        (d + 2) * (d + 1) / 2 - self.mults.iter().map(|m| (m + 1) * m / 2).sum::<i64>()
    }

    /// Dimension of the space of degree-`d` forms with the prescribed
    /// vanishing orders, as predicted by the naive parameter count. This is
    /// the vector-space (affine) count, not the projective dimension.
    pub fn expected_dimension(&self) -> Result<u64, PicardError> {
        if self.degree < 0 {
            return Err(PicardError::NegativeDegree(self.degree));
        }
        if let Some(i) = self.first_negative() {
            return Err(PicardError::NegativeMultiplicity {
                index: i,
                value: self.mult(i),
            });
        }
        Ok(self.expected_dimension_expr().max(0) as u64)
    }

    pub fn condition_set(&self) -> ConditionSet {
        ConditionSet {
            a: self.self_intersection() == -1,
            b: self.arithmetic_genus() == 0,
            c: self.anticanonical_degree() == 1,
            d: self.expected_dimension_expr() == 1,
        }
    }

    /// Multiplicities sorted in non-increasing order.
    pub fn sorted_canonical_form(&self) -> Self {
        let mut mults = self.mults.clone();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            degree: self.degree,
            mults,
        }
    }

    pub fn is_sorted_canonical(&self) -> bool {
        self.mults.windows(2).all(|w| w[0] >= w[1])
    }

    /// Renders the class as `dH - m1 E1 - ...`, e.g. `H - E1 - E2`.
    pub fn divisor_notation(&self) -> String {
        let mut out = String::new();
        let mut term = |coeff: i64, sym: &str| {
            if coeff == 0 {
                return;
            }
            let mag = coeff.unsigned_abs();
            if out.is_empty() {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if coeff < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(sym);
        };
        term(self.degree, "H");
        for (p, &m) in self.mults.iter().enumerate() {
            term(-m, &format!("E{}", p + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// The pairing `d d' - sum mi mi'`, zero-padding the shorter vector.
pub fn intersect(c: &DivisorClass, other: &DivisorClass) -> i64 {
    c.degree * other.degree
        - c.mults
            .iter()
            .zip(other.mults.iter())
            .map(|(a, b)| a * b)
            .sum::<i64>()
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.trimmed() == other.trimmed()
    }
}

impl Eq for DivisorClass {}

impl Hash for DivisorClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.trimmed().hash(state);
    }
}

impl Ord for DivisorClass {
    /// Degree first, then multiplicities lexicographically (zero-padded).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let len = self.mults.len().max(other.mults.len());
            (1..=len)
                .map(|i| self.mult(i).cmp(&other.mult(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn zip_padded(a: &DivisorClass, b: &DivisorClass, f: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    let len = a.len().max(b.len());
    (1..=len).map(|i| f(a.mult(i), b.mult(i))).collect()
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        DivisorClass::new(
            self.degree + rhs.degree,
            zip_padded(self, rhs, |x, y| x + y),
        )
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        DivisorClass::new(
            self.degree - rhs.degree,
            zip_padded(self, rhs, |x, y| x - y),
        )
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.degree, self.mults.iter().map(|m| -m).collect())
    }
}

impl fmt::Display for DivisorClass {
    /// Literal form `d; m1,m2,...` with runs of three or more equal
    /// multiplicities written as `v^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.degree)?;
        if self.mults.is_empty() {
            return Ok(());
        }
        f.write_str(" ")?;
        let mut first = true;
        let mut i = 0;
        while i < self.mults.len() {
            let v = self.mults[i];
            let run = self.mults[i..].iter().take_while(|&&m| m == v).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run >= 3 {
                write!(f, "{v}^{run}")?;
            } else {
                let parts: Vec<String> = std::iter::repeat_n(v.to_string(), run).collect();
                f.write_str(&parts.join(","))?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The blowup of the plane at `n` very general points. Points carry no
/// coordinates; generality is an assumption, not data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceContext {
    pub n: usize,
}

impl SurfaceContext {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// `K = -3H + E1 + ... + En`, i.e. degree -3 and every multiplicity -1.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-3, vec![-1; self.n])
    }

    pub fn exceptional(&self, index: usize) -> DivisorClass {
        DivisorClass::exceptional(index, self.n)
    }
}

/// The four numerical conditions on a class:
/// (a) `C.C = -1`, (b) arithmetic genus 0, (c) `C.(-K) = 1`,
/// (d) un-clamped expected dimension 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionSet {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl ConditionSet {
    pub fn count(&self) -> usize {
        [self.a, self.b, self.c, self.d]
            .iter()
            .filter(|&&x| x)
            .count()
    }

    pub fn all(&self) -> bool {
        self.count() == 4
    }
}
