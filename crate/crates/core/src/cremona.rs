//! Numerical Cremona transformations and the descent they drive.
//!
//! The `(i, j, k)` transformation keeps the basis of the Picard lattice fixed
//! and acts on a class by
//!
//! ```text
//! d'  = 2d - mi - mj - mk
//! mi' = d - mj - mk,   mj' = d - mi - mk,   mk' = d - mi - mj
//! ```
//!
//! leaving every other multiplicity alone. It is a linear involution that
//! preserves the intersection pairing and fixes the canonical class.
//!
//! Descent repeatedly applies the transformation at the three largest
//! multiplicities. When those sum past the degree, the degree strictly drops,
//! so the loop halts either at an exceptional class or at a class with a
//! negative multiplicity at nonnegative degree.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::picard::{intersect, DivisorClass, SurfaceContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CremonaError {
    #[error("triple indices must be 1-based and strictly increasing, got ({0}, {1}, {2})")]
    BadTriple(usize, usize, usize),
    #[error("triple {triple} exceeds the {n} points of the surface")]
    OutOfRange { triple: TripleIndex, n: usize },
    #[error("class has {len} multiplicities but the surface has {n} points")]
    ClassTooLong { len: usize, n: usize },
}

/// Three strictly increasing 1-based point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct TripleIndex([usize; 3]);

impl TripleIndex {
    pub fn new(i1: usize, i2: usize, i3: usize) -> Result<Self, CremonaError> {
        if i1 == 0 || i1 >= i2 || i2 >= i3 {
            return Err(CremonaError::BadTriple(i1, i2, i3));
        }
        Ok(Self([i1, i2, i3]))
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }

    pub fn max_index(&self) -> usize {
        self.0[2]
    }
}

impl TryFrom<[usize; 3]> for TripleIndex {
    type Error = CremonaError;
    fn try_from(v: [usize; 3]) -> Result<Self, Self::Error> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<TripleIndex> for [usize; 3] {
    fn from(t: TripleIndex) -> Self {
        t.0
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// Applies the Cremona transformation at `t`, zero-padding `c` so that every
/// index of `t` is in range.
pub fn apply_cremona(c: &DivisorClass, t: TripleIndex) -> DivisorClass {
    let [i1, i2, i3] = t.0;
    let mut out = c.padded(i3);
    let (d, a, b, e) = (c.degree, c.mult(i1), c.mult(i2), c.mult(i3));
    out.degree = 2 * d - a - b - e;
    out.mults[i1 - 1] = d - b - e;
    out.mults[i2 - 1] = d - a - e;
    out.mults[i3 - 1] = d - a - b;
    out
}

impl SurfaceContext {
    /// Bounds-checked Cremona transformation on a surface with `self.n` points.
    pub fn apply_cremona(
        &self,
        c: &DivisorClass,
        t: TripleIndex,
    ) -> Result<DivisorClass, CremonaError> {
        if t.max_index() > self.n {
            return Err(CremonaError::OutOfRange {
                triple: t,
                n: self.n,
            });
        }
        if c.len() > self.n {
            return Err(CremonaError::ClassTooLong {
                len: c.len(),
                n: self.n,
            });
        }
        Ok(apply_cremona(&c.padded(self.n), t))
    }
}

/// Why a class falls outside the hypotheses under which a degree-lowering
/// triple is guaranteed.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisFailure {
    #[error("degree {degree} is not positive")]
    NonPositiveDegree { degree: i64 },
    #[error("multiplicity m{index} = {value} is negative")]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("arithmetic genus is {genus}, not 0")]
    GenusNotZero { genus: i64 },
    #[error("self-intersection {self_intersection} is outside [-2, 1]")]
    SelfIntersectionOutOfRange { self_intersection: i64 },
    #[error("degree 1 requires negative self-intersection, got {self_intersection}")]
    DegreeOneNotNegative { self_intersection: i64 },
    #[error("three largest multiplicities sum to {sum}, not above the degree {degree}")]
    NoExceedingTriple { sum: i64, degree: i64 },
}

/// Indices of the three largest multiplicities, smallest index first among
/// ties. The class is padded to at least three entries.
pub fn three_largest(c: &DivisorClass) -> TripleIndex {
    let padded = c.padded(3);
    let mut order: Vec<usize> = (1..=padded.len()).collect();
    // stable sort keeps lower indices ahead on ties
    order.sort_by_key(|&x| std::cmp::Reverse(padded.mult(x)));
    let mut top = [order[0], order[1], order[2]];
    top.sort_unstable();
    TripleIndex(top)
}

/// A triple whose multiplicities sum past the degree, for a class of positive
/// degree, nonnegative multiplicities, genus 0 and self-intersection in
/// `[-2, 1]` (negative when the degree is 1).
pub fn noether_triple(c: &DivisorClass) -> Result<TripleIndex, HypothesisFailure> {
    if c.degree <= 0 {
        return Err(HypothesisFailure::NonPositiveDegree { degree: c.degree });
    }
    if let Some(i) = c.first_negative() {
        return Err(HypothesisFailure::NegativeMultiplicity {
            index: i,
            value: c.mult(i),
        });
    }
    let genus = c.arithmetic_genus();
    if genus != 0 {
        return Err(HypothesisFailure::GenusNotZero { genus });
    }
    let self_intersection = c.self_intersection();
    if !(-2..=1).contains(&self_intersection) {
        return Err(HypothesisFailure::SelfIntersectionOutOfRange { self_intersection });
    }
    if c.degree == 1 && self_intersection >= 0 {
        return Err(HypothesisFailure::DegreeOneNotNegative { self_intersection });
    }
    let t = three_largest(c);
    let sum: i64 = t.0.iter().map(|&i| c.mult(i)).sum();
    if sum <= c.degree {
        return Err(HypothesisFailure::NoExceedingTriple {
            sum,
            degree: c.degree,
        });
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub before: DivisorClass,
    pub triple: TripleIndex,
    pub after: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescentOutcome {
    /// The terminal class is `E_index`.
    ReachedExceptional {
        index: usize,
    },
    /// `m_index` of the terminal class went negative after `step` steps.
    NegativeMultiplicity {
        index: usize,
        step: usize,
    },
    HypothesisFailure {
        reason: HypothesisFailure,
    },
}

/// Ordered record of a descent. Replaying the steps from the first
/// `before` reproduces `terminal` and `outcome`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: DivisorClass,
    pub steps: Vec<ReductionStep>,
    pub terminal: DivisorClass,
    pub outcome: DescentOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(
        "class does not satisfy C.C = -1 and genus 0 (C.C = {self_intersection}, genus {genus})"
    )]
    Conditions { self_intersection: i64, genus: i64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: recorded class does not continue from the previous one")]
    Discontinuous { step: usize },
    #[error("step {step}: recorded image differs from the Cremona transform")]
    WrongImage { step: usize },
    #[error("step {step}: degree did not strictly decrease")]
    DegreeNotDecreasing { step: usize },
    #[error("terminal class differs from the last step")]
    WrongTerminal,
    #[error("recorded outcome {recorded:?} disagrees with the terminal class")]
    WrongOutcome { recorded: DescentOutcome },
}

impl ReductionTrace {
    pub fn is_exceptional(&self) -> bool {
        matches!(self.outcome, DescentOutcome::ReachedExceptional { .. })
    }

    pub fn degrees(&self) -> Vec<i64> {
        std::iter::once(self.start.degree)
            .chain(self.steps.iter().map(|s| s.after.degree))
            .collect()
    }

    /// For a negative-multiplicity outcome at `Ei`, the class obtained by
    /// carrying `Ei` back through every recorded step. It pairs with the
    /// start class to `m_i < 0` of the terminal class.
    pub fn witness(&self) -> Option<DivisorClass> {
        let DescentOutcome::NegativeMultiplicity { index, .. } = self.outcome else {
            return None;
        };
        let n = self.terminal.len();
        let mut w = DivisorClass::exceptional(index, n);
        for step in self.steps.iter().rev() {
            w = apply_cremona(&w, step.triple);
        }
        Some(w)
    }

    /// Re-derives every step from its triple and checks the outcome against
    /// the terminal class.
    pub fn replay(&self) -> Result<(), ReplayError> {
        let mut current = &self.start;
        for (k, step) in self.steps.iter().enumerate() {
            if &step.before != current {
                return Err(ReplayError::Discontinuous { step: k + 1 });
            }
            if apply_cremona(&step.before, step.triple) != step.after {
                return Err(ReplayError::WrongImage { step: k + 1 });
            }
            if step.after.degree >= step.before.degree {
                return Err(ReplayError::DegreeNotDecreasing { step: k + 1 });
            }
            current = &step.after;
        }
        if current != &self.terminal {
            return Err(ReplayError::WrongTerminal);
        }
        let ok = match &self.outcome {
            DescentOutcome::ReachedExceptional { index } => {
                self.terminal.exceptional_index() == Some(*index)
            }
            DescentOutcome::NegativeMultiplicity { index, step } => {
                *step == self.steps.len()
                    && self.terminal.degree != 0
                    && self.terminal.first_negative() == Some(*index)
            }
            DescentOutcome::HypothesisFailure { reason } => {
                noether_triple(&self.terminal).err().as_ref() == Some(reason)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ReplayError::WrongOutcome {
                recorded: self.outcome.clone(),
            })
        }
    }
}

/// Runs Cremona descent on a class with `C.C = -1` and arithmetic genus 0.
///
/// The class is padded to at least three multiplicities. Each iteration:
/// degree 0 must be some `Ei` (success); any negative multiplicity halts
/// with that index; otherwise the three largest multiplicities drive one
/// Cremona step. The degree strictly drops, so at most `d` steps run.
pub fn descend(c: &DivisorClass) -> Result<ReductionTrace, DescentError> {
    let self_intersection = c.self_intersection();
    let genus = c.arithmetic_genus();
    if self_intersection != -1 || genus != 0 {
        return Err(DescentError::Conditions {
            self_intersection,
            genus,
        });
    }
    let start = c.padded(3);
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut current = start.clone();
    let outcome = loop {
        if current.degree == 0 {
            match current.exceptional_index() {
                Some(index) => break DescentOutcome::ReachedExceptional { index },
                None => {
                    return Err(DescentError::Invariant(format!(
                        "degree-0 class {current} with C.C = -1 and genus 0 is not exceptional"
                    )))
                }
            }
        }
        if let Some(index) = current.first_negative() {
            break DescentOutcome::NegativeMultiplicity {
                index,
                step: steps.len(),
            };
        }
        if current.degree < 0 {
            return Err(DescentError::Invariant(format!(
                "reached negative degree with nonnegative multiplicities at {current}"
            )));
        }
        let triple = match noether_triple(&current) {
            Ok(t) => t,
            Err(reason) => break DescentOutcome::HypothesisFailure { reason },
        };
        let next = apply_cremona(&current, triple);
        steps.push(ReductionStep {
            before: current,
            triple,
            after: next.clone(),
        });
        current = next;
    };
    Ok(ReductionTrace {
        start,
        steps,
        terminal: current,
        outcome,
    })
}

/// Pairing of the start class with its transported witness, if any.
pub fn witness_product(trace: &ReductionTrace) -> Option<i64> {
    trace.witness().map(|w| intersect(&w, &trace.start))
}
