//! Deciding whether a class is a (-1)-curve class, two ways.
//!
//! * [`is_minus_one_descent`] runs Cremona descent and reads the outcome.
//! * [`is_minus_one_inductive`] applies the numerical criterion directly:
//!   `C.C = -1`, genus 0, nonnegative multiplicities, and `C.C' >= 0` for
//!   every (-1)-class `C'` of smaller positive degree, taken from a
//!   precomputed [`EnumerationTable`].
//!
//! Points are very general, so the set of (-1)-classes is closed under
//! permuting the points. Tables therefore store one sorted representative
//! per orbit, and pairings against a whole orbit reduce to a single sorted
//! pairing (rearrangement inequality).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cremona::{descend, DescentError, DescentOutcome, ReductionTrace};
use crate::picard::{intersect, DivisorClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("table covers {table_n} points up to degree {table_max_degree}; need {need_n} points up to degree {need_degree}")]
    InsufficientTable {
        table_n: usize,
        table_max_degree: i64,
        need_n: usize,
        need_degree: i64,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("table class {class} at degree {degree} failed verification: {reason}")]
    BadTableEntry {
        class: DivisorClass,
        degree: i64,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Descent,
    Inductive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `C.C = -1`
    A,
    /// arithmetic genus 0
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Descent ended at an exceptional class.
    ExceptionalTerminal { trace: ReductionTrace },
    /// A (-1)-class (of lower degree, or some `Ei`) meeting the class negatively.
    ObstructingCurve { witness: DivisorClass, product: i64 },
    /// `C.C = -1` or genus 0 fails.
    ConditionFailure {
        failed: Vec<Condition>,
        self_intersection: i64,
        genus: i64,
    },
    /// Every (-1)-class of degree `1..degree` meets the class nonnegatively.
    /// `min_product` is the smallest pairing seen (absent when no class of
    /// lower positive degree exists).
    CriterionSatisfied {
        degrees_checked: i64,
        shapes_checked: usize,
        min_product: Option<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub class: DivisorClass,
    pub is_minus_one: bool,
    pub method: Method,
    pub certificate: Certificate,
}

fn condition_failure(c: &DivisorClass) -> Option<Certificate> {
    let self_intersection = c.self_intersection();
    let genus = c.arithmetic_genus();
    let mut failed = Vec::new();
    if self_intersection != -1 {
        failed.push(Condition::A);
    }
    if genus != 0 {
        failed.push(Condition::B);
    }
    (!failed.is_empty()).then_some(Certificate::ConditionFailure {
        failed,
        self_intersection,
        genus,
    })
}

/// Classifies `c` by Cremona descent. Classification outcomes are verdicts;
/// an error means an internal invariant broke.
pub fn is_minus_one_descent(c: &DivisorClass) -> Result<Verdict, ClassifyError> {
    if let Some(certificate) = condition_failure(c) {
        return Ok(Verdict {
            class: c.clone(),
            is_minus_one: false,
            method: Method::Descent,
            certificate,
        });
    }
    let trace = descend(c).map_err(|e| match e {
        DescentError::Conditions { .. } => ClassifyError::Invariant(e.to_string()),
        DescentError::Invariant(msg) => ClassifyError::Invariant(msg),
    })?;
    let (is_minus_one, certificate) = match &trace.outcome {
        DescentOutcome::ReachedExceptional { .. } => {
            (true, Certificate::ExceptionalTerminal { trace })
        }
        DescentOutcome::NegativeMultiplicity { .. } => {
            let witness = trace
                .witness()
                .ok_or_else(|| ClassifyError::Invariant("missing witness".into()))?;
            let product = intersect(&witness, c);
            if product >= 0 {
                return Err(ClassifyError::Invariant(format!(
                    "transported witness {witness} meets {c} in {product} >= 0"
                )));
            }
            (false, Certificate::ObstructingCurve { witness, product })
        }
        DescentOutcome::HypothesisFailure { reason } => {
            return Err(ClassifyError::Invariant(format!(
                "descent stalled at {}: {reason}",
                trace.terminal
            )))
        }
    };
    Ok(Verdict {
        class: c.clone(),
        is_minus_one,
        method: Method::Descent,
        certificate,
    })
}

/// `d d' - sum a_i b_i` with both multiplicity vectors in non-increasing
/// order. This is the minimum of the pairing over all permutations of
/// either argument.
pub fn min_intersection_sorted(a: &DivisorClass, b: &DivisorClass) -> i64 {
    debug_assert!(a.is_sorted_canonical() && b.is_sorted_canonical());
    let len = a.len().max(b.len());
    // zero-padding a sorted vector breaks the order when it has negative
    // entries, so pad before sorting
    let pa = a.padded(len).sorted_canonical_form();
    let pb = b.padded(len).sorted_canonical_form();
    intersect(&pa, &pb)
}

/// Permutes the multiplicities of `shape` so that its pairing with `target`
/// is minimal: the k-th largest entry of `shape` goes to the position of the
/// k-th largest entry of `target` (lowest index first on ties).
pub fn align_to(shape: &DivisorClass, target: &DivisorClass) -> DivisorClass {
    let len = shape.len().max(target.len());
    let sorted = shape.padded(len).sorted_canonical_form();
    let t = target.padded(len);
    let mut positions: Vec<usize> = (0..len).collect();
    positions.sort_by(|&x, &y| t.mults[y].cmp(&t.mults[x]));
    let mut mults = vec![0; len];
    for (k, &p) in positions.iter().enumerate() {
        mults[p] = sorted.mults[k];
    }
    DivisorClass::new(shape.degree, mults)
}

/// Every class of degree `d >= 1` on `n` points whose non-increasing,
/// nonnegative multiplicities satisfy `sum m = 3d - 1` and `sum m^2 = d^2 + 1`
/// (self-intersection -1 and anticanonical degree 1, which together are
/// equivalent to self-intersection -1 and genus 0). Results are sorted
/// canonical forms of length exactly `n`.
pub fn enumerate_conditions_ab(n: usize, d: i64) -> BTreeSet<DivisorClass> {
    assert!(d >= 1, "degree must be positive");
    let mut out = BTreeSet::new();
    let mut prefix = Vec::with_capacity(n);
    sum_constrained(n, 3 * d - 1, d * d + 1, d, &mut prefix, &mut |m| {
        let mut mults = m.to_vec();
        mults.resize(n, 0);
        out.insert(DivisorClass::new(d, mults));
    });
    out
}

/// Visits every non-increasing sequence of positive integers, each at most
/// `cap`, of length at most `slots`, with the given sum and sum of squares.
pub fn sum_constrained(
    slots: usize,
    sum: i64,
    sum_sq: i64,
    cap: i64,
    prefix: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]),
) {
    if sum == 0 && sum_sq == 0 {
        visit(prefix);
        return;
    }
    let k = slots as i64;
    // m^2 >= m for integers, each entry <= cap, and Cauchy-Schwarz
    if slots == 0
        || sum <= 0
        || sum_sq < sum
        || sum > k * cap
        || sum_sq > cap * sum
        || sum * sum > k * sum_sq
    {
        return;
    }
    let top = cap.min(sum_sq.isqrt()).min(sum);
    for m in (1..=top).rev() {
        // remaining entries are at most m, so m carries at least its share
        if m * k < sum {
            break;
        }
        prefix.push(m);
        sum_constrained(slots - 1, sum - m, sum_sq - m * m, m, prefix, visit);
        prefix.pop();
    }
}

/// Number of distinct permutations of the multiplicities.
pub fn orbit_size(c: &DivisorClass) -> u128 {
    let mut counts: BTreeMap<i64, u128> = BTreeMap::new();
    for &m in &c.mults {
        *counts.entry(m).or_default() += 1;
    }
    let mut total = 0u128;
    let mut size = 1u128;
    for &k in counts.values() {
        for j in 1..=k {
            total += 1;
            size = size * total / j;
        }
    }
    size
}

/// All distinct permutations of the multiplicities, in lexicographic order.
pub fn orbit(c: &DivisorClass) -> Orbit {
    let mut mults = c.mults.clone();
    mults.sort_unstable();
    Orbit {
        degree: c.degree,
        next: Some(mults),
    }
}

pub struct Orbit {
    degree: i64,
    next: Option<Vec<i64>>,
}

impl Iterator for Orbit {
    type Item = DivisorClass;

    fn next(&mut self) -> Option<DivisorClass> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(DivisorClass::new(self.degree, current))
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sorted representatives of every (-1)-class on `n` points of degree at
/// most `max_degree`, bucketed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationTable {
    pub n: usize,
    pub max_degree: i64,
    pub classes_by_degree: BTreeMap<i64, BTreeSet<DivisorClass>>,
}

impl EnumerationTable {
    fn base(n: usize) -> Self {
        let mut classes_by_degree = BTreeMap::new();
        let bucket: BTreeSet<DivisorClass> = (n >= 1)
            .then(|| DivisorClass::exceptional(n, n))
            .into_iter()
            .collect();
        classes_by_degree.insert(0, bucket);
        Self {
            n,
            max_degree: 0,
            classes_by_degree,
        }
    }

    /// Builds a table from stored buckets, without certifying them.
    /// Use [`EnumerationTable::verify`] to re-certify.
    pub fn from_parts(
        n: usize,
        max_degree: i64,
        classes: impl IntoIterator<Item = DivisorClass>,
    ) -> Self {
        let mut classes_by_degree: BTreeMap<i64, BTreeSet<DivisorClass>> =
            (0..=max_degree).map(|d| (d, BTreeSet::new())).collect();
        for c in classes {
            classes_by_degree
                .entry(c.degree)
                .or_default()
                .insert(c.padded(n));
        }
        Self {
            n,
            max_degree,
            classes_by_degree,
        }
    }

    /// Adds the buckets for degrees `max_degree + 1 ..= new_max`, filtering
    /// candidates by descent.
    pub fn extend_to(&mut self, new_max: i64) -> Result<(), ClassifyError> {
        for d in (self.max_degree + 1).max(1)..=new_max {
            let mut bucket = BTreeSet::new();
            for c in enumerate_conditions_ab(self.n, d) {
                if is_minus_one_descent(&c)?.is_minus_one {
                    bucket.insert(c);
                }
            }
            self.classes_by_degree.insert(d, bucket);
        }
        self.max_degree = self.max_degree.max(new_max);
        Ok(())
    }

    /// Same contents as [`enumerate_minus_one`], but each degree is filtered
    /// by the inductive criterion against the buckets already built.
    pub fn build_inductive(n: usize, max_degree: i64) -> Result<Self, ClassifyError> {
        let mut table = Self::base(n);
        for d in 1..=max_degree {
            let mut bucket = BTreeSet::new();
            for c in enumerate_conditions_ab(n, d) {
                if is_minus_one_inductive(&c, &table)?.is_minus_one {
                    bucket.insert(c);
                }
            }
            table.classes_by_degree.insert(d, bucket);
            table.max_degree = d;
        }
        Ok(table)
    }

    pub fn bucket(&self, degree: i64) -> impl Iterator<Item = &DivisorClass> {
        self.classes_by_degree.get(&degree).into_iter().flatten()
    }

    /// All stored representatives, by degree then lexicographically.
    pub fn shapes(&self) -> impl Iterator<Item = &DivisorClass> {
        self.classes_by_degree.values().flatten()
    }

    pub fn shape_count(&self) -> usize {
        self.classes_by_degree.values().map(BTreeSet::len).sum()
    }

    pub fn expanded_count_at(&self, degree: i64) -> u128 {
        self.bucket(degree).map(orbit_size).sum()
    }

    pub fn expanded_count(&self) -> u128 {
        self.shapes().map(orbit_size).sum()
    }

    /// Highest degree with a nonempty bucket.
    pub fn top_degree(&self) -> Option<i64> {
        self.classes_by_degree
            .iter()
            .rev()
            .find(|(_, b)| !b.is_empty())
            .map(|(&d, _)| d)
    }

    pub fn contains(&self, c: &DivisorClass) -> bool {
        let s = c.padded(self.n).sorted_canonical_form();
        self.classes_by_degree
            .get(&c.degree)
            .is_some_and(|b| b.contains(&s))
    }

    /// Re-certifies every stored class: sorted canonical form of length `n`,
    /// stored in its own degree bucket within range, and a (-1)-class by
    /// descent. Also checks that the degree-0 bucket is exactly the
    /// exceptional shape.
    pub fn verify(&self) -> Result<(), ClassifyError> {
        let bad = |class: &DivisorClass, degree: i64, reason: &str| ClassifyError::BadTableEntry {
            class: class.clone(),
            degree,
            reason: reason.into(),
        };
        for (&degree, bucket) in &self.classes_by_degree {
            for c in bucket {
                if c.degree != degree {
                    return Err(bad(c, degree, "stored in the wrong degree bucket"));
                }
                if !(0..=self.max_degree).contains(&degree) {
                    return Err(bad(c, degree, "degree outside table range"));
                }
                if c.len() != self.n || !c.is_sorted_canonical() {
                    return Err(bad(c, degree, "not a sorted canonical form on n points"));
                }
                if !is_minus_one_descent(c)?.is_minus_one {
                    return Err(bad(c, degree, "not a (-1)-class"));
                }
            }
        }
        let zero: Vec<_> = self.bucket(0).collect();
        let expected = Self::base(self.n);
        if zero != expected.bucket(0).collect::<Vec<_>>() {
            return Err(ClassifyError::Invariant(
                "degree-0 bucket is not the exceptional shape".into(),
            ));
        }
        Ok(())
    }
}

/// All (-1)-classes on `n` points of degree at most `max_degree`, certified
/// by descent.
pub fn enumerate_minus_one(n: usize, max_degree: i64) -> Result<EnumerationTable, ClassifyError> {
    let mut table = EnumerationTable::base(n);
    table.extend_to(max_degree)?;
    Ok(table)
}

/// Classifies `c` by the inductive criterion against `table`.
///
/// The table must cover every point `c` uses and every degree below
/// `c.degree`. A failure names the (-1)-class with the most negative
/// pairing, arranged to achieve it against `c` as given.
pub fn is_minus_one_inductive(
    c: &DivisorClass,
    table: &EnumerationTable,
) -> Result<Verdict, ClassifyError> {
    let verdict = |is_minus_one, certificate| Verdict {
        class: c.clone(),
        is_minus_one,
        method: Method::Inductive,
        certificate,
    };
    if let Some(certificate) = condition_failure(c) {
        return Ok(verdict(false, certificate));
    }
    if c.degree == 0 {
        // conditions (a) and (b) at degree 0 leave exactly one entry -1
        return match c.exceptional_index() {
            Some(_) => {
                let trace = descend(c).map_err(|e| ClassifyError::Invariant(e.to_string()))?;
                Ok(verdict(true, Certificate::ExceptionalTerminal { trace }))
            }
            None => Err(ClassifyError::Invariant(format!(
                "degree-0 class {c} with C.C = -1 and genus 0 is not exceptional"
            ))),
        };
    }
    if let Some(i) = c.first_negative() {
        let witness = DivisorClass::exceptional(i, c.len());
        let product = intersect(&witness, c);
        return Ok(verdict(
            false,
            Certificate::ObstructingCurve { witness, product },
        ));
    }
    if table.n < c.support_len() || table.max_degree < c.degree - 1 {
        return Err(ClassifyError::InsufficientTable {
            table_n: table.n,
            table_max_degree: table.max_degree,
            need_n: c.support_len(),
            need_degree: c.degree - 1,
        });
    }
    let sorted = c.padded(table.n).sorted_canonical_form();
    let mut best: Option<(i64, &DivisorClass)> = None;
    let mut shapes_checked = 0;
    for d in 1..c.degree {
        for shape in table.bucket(d) {
            shapes_checked += 1;
            let p = min_intersection_sorted(&sorted, shape);
            if best.is_none_or(|(bp, _)| p < bp) {
                best = Some((p, shape));
            }
        }
    }
    match best {
        Some((product, shape)) if product < 0 => {
            let witness = align_to(shape, &c.padded(table.n.max(c.len())));
            debug_assert_eq!(intersect(&witness, c), product);
            Ok(verdict(
                false,
                Certificate::ObstructingCurve { witness, product },
            ))
        }
        _ => Ok(verdict(
            true,
            Certificate::CriterionSatisfied {
                degrees_checked: c.degree - 1,
                shapes_checked,
                min_product: best.map(|(p, _)| p),
            },
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn cls(d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(d, m.to_vec())
    }

    fn two_triples() -> DivisorClass {
        cls(5, &[3, 3, 1, 1, 1, 1, 1, 1, 1, 1])
    }

    /// Minimum pairing over every permutation of `b`'s multiplicities.
    fn brute_min(a: &DivisorClass, b: &DivisorClass) -> i64 {
        let len = a.len().max(b.len());
        let (a, b) = (a.padded(len), b.padded(len));
        b.mults
            .iter()
            .copied()
            .permutations(len)
            .map(|p| intersect(&a, &DivisorClass::new(b.degree, p)))
            .min()
            .unwrap()
    }

    #[test]
    fn descent_verdict_examples() {
        let v = is_minus_one_descent(&cls(1, &[1, 1])).unwrap();
        assert!(v.is_minus_one);

        let v = is_minus_one_descent(&two_triples()).unwrap();
        assert!(!v.is_minus_one);
        assert_eq!(
            v.certificate,
            Certificate::ObstructingCurve {
                witness: cls(1, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
                product: -1
            }
        );

        let v = is_minus_one_descent(&cls(3, &[2, 1, 1, 1, 1, 1, 1])).unwrap();
        assert!(v.is_minus_one);
        let Certificate::ExceptionalTerminal { trace } = &v.certificate else {
            panic!("expected a trace");
        };
        assert_eq!(trace.steps[0].after, cls(2, &[1, 0, 0, 1, 1, 1, 1]));
    }

    #[test]
    fn descent_verdict_condition_failure() {
        let v = is_minus_one_descent(&cls(4, &[2, 2, 1, 1, 1, 1, 1, 1, 1, 1])).unwrap();
        assert!(!v.is_minus_one);
        assert_eq!(
            v.certificate,
            Certificate::ConditionFailure {
                failed: vec![Condition::A, Condition::B],
                self_intersection: 0,
                genus: 1
            }
        );
    }

    #[test]
    fn inductive_examples() {
        let table = enumerate_minus_one(10, 4).unwrap();
        let v = is_minus_one_inductive(&two_triples(), &table).unwrap();
        assert!(!v.is_minus_one);
        assert_eq!(
            v.certificate,
            Certificate::ObstructingCurve {
                witness: cls(1, &[1, 1]),
                product: -1
            }
        );

        let v = is_minus_one_inductive(&cls(4, &[2, 2, 1, 1, 1, 1, 1, 1, 1, 1]), &table).unwrap();
        assert!(matches!(
            v.certificate,
            Certificate::ConditionFailure { ref failed, self_intersection: 0, .. } if failed[0] == Condition::A
        ));

        let c = cls(6, &[3, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!((c.self_intersection(), c.arithmetic_genus()), (-1, 0));
        let t8 = enumerate_minus_one(8, 5).unwrap();
        assert!(is_minus_one_inductive(&c, &t8).unwrap().is_minus_one);
        assert!(is_minus_one_descent(&c).unwrap().is_minus_one);
    }

    #[test]
    fn inductive_needs_coverage() {
        let table = enumerate_minus_one(8, 3).unwrap();
        assert!(matches!(
            is_minus_one_inductive(&two_triples(), &table),
            Err(ClassifyError::InsufficientTable { .. })
        ));
        let c = cls(6, &[3, 2, 2, 2, 2, 2, 2, 2]);
        assert!(matches!(
            is_minus_one_inductive(&c, &table),
            Err(ClassifyError::InsufficientTable { need_degree: 5, .. })
        ));
    }

    #[test]
    fn inductive_handles_exceptional_and_negative() {
        let table = enumerate_minus_one(3, 0).unwrap();
        let v = is_minus_one_inductive(&DivisorClass::exceptional(2, 3), &table).unwrap();
        assert!(v.is_minus_one);
        // (a) and (b) hold at positive degree but m3 < 0: E3 obstructs
        let c = cls(3, &[1, 1, -1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!((c.self_intersection(), c.arithmetic_genus()), (-1, 0));
        let v = is_minus_one_inductive(&c, &enumerate_minus_one(10, 2).unwrap()).unwrap();
        assert!(!v.is_minus_one);
        let Certificate::ObstructingCurve { witness, product } = v.certificate else {
            panic!()
        };
        assert_eq!(witness, DivisorClass::exceptional(3, 10));
        assert_eq!(product, -1);
    }

    #[test]
    fn conditions_ab_examples() {
        assert_eq!(
            enumerate_conditions_ab(2, 1)
                .into_iter()
                .collect::<Vec<_>>(),
            vec![cls(1, &[1, 1])]
        );
        assert_eq!(
            enumerate_conditions_ab(5, 2)
                .into_iter()
                .collect::<Vec<_>>(),
            vec![cls(2, &[1, 1, 1, 1, 1])]
        );
        assert!(enumerate_conditions_ab(1, 1).is_empty());
        assert!(enumerate_conditions_ab(0, 3).is_empty());
    }

    /// Every sequence in `[0, d]^n` (sorted) meeting both sums.
    fn brute_conditions_ab(n: usize, d: i64) -> BTreeSet<DivisorClass> {
        (0..n)
            .map(|_| 0..=d)
            .multi_cartesian_product()
            .filter(|m| m.windows(2).all(|w| w[0] >= w[1]))
            .map(|m| DivisorClass::new(d, m))
            .filter(|c| c.self_intersection() == -1 && c.arithmetic_genus() == 0)
            .collect()
    }

    #[test]
    fn conditions_ab_matches_brute_force() {
        for n in 0..=7 {
            for d in 1..=5 {
                assert_eq!(
                    enumerate_conditions_ab(n, d),
                    brute_conditions_ab(n, d),
                    "n={n} d={d}"
                );
            }
        }
        // nine points, degree three: (3; 2,1^6) is the only shape
        assert_eq!(
            brute_conditions_ab(9, 3).into_iter().collect::<Vec<_>>(),
            vec![cls(3, &[2, 1, 1, 1, 1, 1, 1, 0, 0])]
        );
        assert_eq!(enumerate_conditions_ab(9, 3), brute_conditions_ab(9, 3));
    }

    #[test]
    fn min_sorted_examples() {
        let a = two_triples();
        let b = cls(1, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(min_intersection_sorted(&a, &b), -1);
        assert_eq!(min_intersection_sorted(&a, &a), a.self_intersection());
        let c = cls(3, &[2, 1, 1, 1, 1, 1, 1]);
        let l = cls(1, &[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(min_intersection_sorted(&c, &l), 0);
        assert_eq!(brute_min(&c, &l), 0);
        assert_eq!(
            brute_min(&cls(1, &[1, 1, 0, 0]), &cls(5, &[3, 3, 1, 1])),
            -1
        );
    }

    #[test]
    fn min_sorted_with_negative_entries() {
        let e = DivisorClass::exceptional(4, 4);
        let s = cls(1, &[1, 1]);
        assert_eq!(
            min_intersection_sorted(&s, &e.sorted_canonical_form()),
            brute_min(&s, &e)
        );
    }

    #[test]
    fn align_achieves_minimum() {
        let target = cls(5, &[1, 3, 1, 1, 3, 1, 1, 1, 1, 1]);
        let w = align_to(&cls(1, &[1, 1]), &target);
        assert_eq!(w, cls(1, &[0, 1, 0, 0, 1]));
        assert_eq!(intersect(&w, &target), -1);
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_size(&cls(1, &[1, 1, 0, 0, 0, 0])), 15);
        assert_eq!(orbit_size(&DivisorClass::exceptional(8, 8)), 8);
        assert_eq!(orbit_size(&cls(0, &[])), 1);
        let c = cls(4, &[2, 2, 2, 1, 1, 1, 1, 1]);
        let members: Vec<_> = orbit(&c).collect();
        assert_eq!(members.len() as u128, orbit_size(&c));
        assert_eq!(members.iter().collect::<BTreeSet<_>>().len(), members.len());
        assert!(members.iter().all(|m| m.sorted_canonical_form() == c));
    }

    #[test]
    fn small_tables() {
        let t2 = enumerate_minus_one(2, 5).unwrap();
        assert_eq!(t2.expanded_count(), 3);
        assert_eq!(t2.shape_count(), 2);
        let t6 = enumerate_minus_one(6, 2).unwrap();
        assert_eq!(t6.expanded_count(), 27);
        assert_eq!(
            (0..=2).map(|d| t6.expanded_count_at(d)).collect::<Vec<_>>(),
            vec![6, 15, 6]
        );
        assert_eq!(enumerate_minus_one(0, 3).unwrap().expanded_count(), 0);
        assert_eq!(enumerate_minus_one(1, 3).unwrap().expanded_count(), 1);
        t6.verify().unwrap();
        assert!(t6.contains(&cls(1, &[0, 1, 0, 0, 1])));
    }

    #[test]
    fn inductive_table_matches_descent_table() {
        for n in 0..=8 {
            assert_eq!(
                EnumerationTable::build_inductive(n, 6).unwrap(),
                enumerate_minus_one(n, 6).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn verify_rejects_bad_entries() {
        let mut t = enumerate_minus_one(10, 5).unwrap();
        t.classes_by_degree
            .get_mut(&5)
            .unwrap()
            .insert(two_triples());
        assert!(matches!(
            t.verify(),
            Err(ClassifyError::BadTableEntry { .. })
        ));
        let t = EnumerationTable::from_parts(4, 1, [cls(1, &[1, 0, 1, 0])]);
        assert!(t.verify().is_err());
    }

    #[test]
    fn extend_reuses_lower_buckets() {
        let mut t = enumerate_minus_one(7, 1).unwrap();
        t.extend_to(4).unwrap();
        assert_eq!(t, enumerate_minus_one(7, 4).unwrap());
        assert_eq!(t.expanded_count(), 56);
        assert_eq!(t.top_degree(), Some(3));
    }
}
