//! Plane curves of degree `d` with assigned multiplicities at general points.
//!
//! The naive parameter count predicts the dimension of such a system. It can
//! be exceeded when some (-1)-curve `C` meets the system `L` in `C.L <= -2`:
//! then `C` splits off the base locus at least twice. This module reports the
//! prediction together with every such obstruction up to a degree bound. It
//! never claims an actual dimension.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{
    align_to, enumerate_minus_one, min_intersection_sorted, ClassifyError, EnumerationTable,
};
use crate::picard::{intersect, DivisorClass, PicardError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error(transparent)]
    Invalid(#[from] PicardError),
    #[error("degree bound {0} is negative")]
    NegativeBound(i64),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Degree `d >= 0` and multiplicities `mi >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DivisorClass", into = "DivisorClass")]
pub struct LinearSystem(DivisorClass);

impl LinearSystem {
    pub fn new(class: DivisorClass) -> Result<Self, PicardError> {
        class.expected_dimension()?;
        Ok(Self(class))
    }

    pub fn class(&self) -> &DivisorClass {
        &self.0
    }
}

impl TryFrom<DivisorClass> for LinearSystem {
    type Error = PicardError;
    fn try_from(c: DivisorClass) -> Result<Self, Self::Error> {
        Self::new(c)
    }
}

impl From<LinearSystem> for DivisorClass {
    fn from(l: LinearSystem) -> Self {
        l.0
    }
}

pub fn expected_dim(l: &LinearSystem) -> u64 {
    l.0.expected_dimension()
        .expect("linear systems have nonnegative entries")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub class: DivisorClass,
    pub product: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub system: DivisorClass,
    pub expdim: u64,
    pub obstructions: Vec<Obstruction>,
    pub conjecturally_special: bool,
    pub search_degree_bound: i64,
}

/// Scans (-1)-classes of degree at most `degree_bound` (default: the degree
/// of `l`) for pairings `<= -2` with `l`.
pub fn analyze_system(
    l: &LinearSystem,
    degree_bound: Option<i64>,
) -> Result<ObstructionReport, InterpolationError> {
    let bound = degree_bound.unwrap_or(l.0.degree);
    if bound < 0 {
        return Err(InterpolationError::NegativeBound(bound));
    }
    let table = enumerate_minus_one(l.0.len(), bound)?;
    analyze_with_table(l, degree_bound, &table)
}

/// As [`analyze_system`], reusing `table` when it covers the system's points
/// and the bound, and rebuilding it otherwise.
pub fn analyze_with_table(
    l: &LinearSystem,
    degree_bound: Option<i64>,
    table: &EnumerationTable,
) -> Result<ObstructionReport, InterpolationError> {
    let bound = degree_bound.unwrap_or(l.0.degree);
    if bound < 0 {
        return Err(InterpolationError::NegativeBound(bound));
    }
    let rebuilt;
    let table = if table.n < l.0.len() || table.max_degree < bound {
        let mut t = if table.n < l.0.len() {
            enumerate_minus_one(l.0.len(), 0)?
        } else {
            table.clone()
        };
        t.extend_to(bound)?;
        rebuilt = t;
        &rebuilt
    } else {
        table
    };
    let system = l.0.padded(table.n);
    let sorted = system.sorted_canonical_form();
    let mut obstructions: Vec<Obstruction> = (0..=bound)
        .flat_map(|d| table.bucket(d))
        .filter(|shape| min_intersection_sorted(&sorted, shape) <= -2)
        .map(|shape| {
            let class = align_to(shape, &system);
            let product = intersect(&class, &system);
            Obstruction { class, product }
        })
        .collect();
    obstructions.sort_by(|a, b| a.class.cmp(&b.class));
    Ok(ObstructionReport {
        system: l.0.clone(),
        expdim: expected_dim(l),
        conjecturally_special: !obstructions.is_empty(),
        obstructions,
        search_degree_bound: bound,
    })
}
