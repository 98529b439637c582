//! Column-wise similarity between event-chain matrices.
//!
//! Cells are compared positionally per relation kind; each pair/column
//! cell contributes a compound difference
//! `d = sqrt(L1 + L2 + L3) / sqrt(3)` with `L` indicator mismatches, and
//! similarity is `(1 - mean(d)) * 100`. A shorter matrix is padded by
//! repeating its last column.

use crate::encoder::ESecMatrix;
use crate::error::{EsecError, Result};
use crate::relations::RelationTriple;
use crate::scalar::Scalar;

/// Outcome of one matrix comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityResult<T = f64> {
    /// Percentage in `[0, 100]`.
    pub similarity: T,
    /// Compound per-cell differences, `dissimilarity[pair][column]`.
    pub dissimilarity: Vec<Vec<T>>,
    /// Whether length padding was applied.
    pub padded: bool,
}

fn cell_difference<T: Scalar>(a: &RelationTriple, b: &RelationTriple) -> T {
    let mut mismatches = 0u8;
    if a.tnr != b.tnr {
        mismatches += 1;
    }
    if a.ssr != b.ssr {
        mismatches += 1;
    }
    if a.dsr != b.dsr {
        mismatches += 1;
    }
    (T::from_u8(mismatches).unwrap() / T::from_f64_c(3.0)).sqrt()
}

fn compare_padded<T: Scalar>(
    a: &ESecMatrix,
    b: &ESecMatrix,
    columns: usize,
) -> SimilarityResult<T> {
    let clamp = |m: &ESecMatrix, j: usize| m.columns[j.min(m.columns.len() - 1)];
    let mut dissimilarity = vec![vec![T::zero(); columns]; 10];
    let mut total = T::zero();
    for j in 0..columns {
        let ca = clamp(a, j);
        let cb = clamp(b, j);
        for (pair, row) in dissimilarity.iter_mut().enumerate() {
            let d = cell_difference::<T>(&ca[pair], &cb[pair]);
            row[j] = d;
            total += d;
        }
    }
    let mean = total / T::from_usize(columns * 10).unwrap();
    SimilarityResult {
        similarity: (T::one() - mean) * T::from_f64_c(100.0),
        dissimilarity,
        padded: a.columns.len() != b.columns.len(),
    }
}

/// Whole-matrix similarity; the shorter matrix is padded by last-column
/// repetition up to the longer one's length.
pub fn compare<T: Scalar>(a: &ESecMatrix, b: &ESecMatrix) -> Result<SimilarityResult<T>> {
    if a.columns.is_empty() || b.columns.is_empty() {
        return Err(EsecError::EmptyMatrix);
    }
    Ok(compare_padded(a, b, a.columns.len().max(b.columns.len())))
}

/// Prefix comparison for online prediction: the first `upto` columns of
/// `partial` against the first `min(upto, |full|)` columns of `full`,
/// padding the shorter side within that horizon. Columns of `full`
/// beyond the horizon are ignored rather than penalized.
pub fn compare_prefix<T: Scalar>(
    partial: &ESecMatrix,
    full: &ESecMatrix,
    upto: usize,
) -> Result<SimilarityResult<T>> {
    if partial.columns.is_empty() || full.columns.is_empty() {
        return Err(EsecError::EmptyMatrix);
    }
    if upto == 0 || upto > partial.columns.len() {
        return Err(EsecError::PrefixOutOfRange {
            upto,
            len: partial.columns.len(),
        });
    }
    let head = |m: &ESecMatrix, n: usize| ESecMatrix {
        label: m.label.clone(),
        columns: m.columns[..n.min(m.columns.len())].to_vec(),
        column_frames: m.column_frames[..n.min(m.columns.len())].to_vec(),
    };
    Ok(compare_padded(&head(partial, upto), &head(full, upto), upto))
}
