//! Per-column likelihoods, self-information and earliest-disambiguation
//! analysis over a canonical reference set (one matrix per class).
//!
//! At each column index the codes of all classes are pooled; a class's
//! likelihood is the share of classes carrying its code. Classes whose
//! matrix has already ended contribute a shared "ended" pseudo-code, so
//! ending early is itself informative.

use crate::encoder::{CueSet, ESecMatrix};
use crate::error::{EsecError, Result};
use crate::scalar::Scalar;

/// Pseudo-code pooled for classes whose matrix has fewer columns than
/// the current index.
pub const ENDED_CODE: &str = "<ended>";

/// Information profile of one class under one cue subset.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoProfile<T = f64> {
    pub class: String,
    pub cues: CueSet,
    /// Likelihood per column index (over the common column range).
    pub per_column_likelihood: Vec<T>,
    /// Shannon self-information in bits, `-log2(p)` cell-wise.
    pub per_column_bits: Vec<T>,
    /// Running sum of bits.
    pub cumulative_bits: Vec<T>,
}

impl<T: Scalar> InfoProfile<T> {
    fn from_likelihoods(class: String, cues: CueSet, likelihoods: Vec<T>) -> Self {
        let bits: Vec<T> = likelihoods.iter().map(|p| -p.log2()).collect();
        let mut cumulative = Vec::with_capacity(bits.len());
        let mut run = T::zero();
        for b in &bits {
            run += *b;
            cumulative.push(run);
        }
        Self {
            class,
            cues,
            per_column_likelihood: likelihoods,
            per_column_bits: bits,
            cumulative_bits: cumulative,
        }
    }
}

/// A canonical reference set: exactly one matrix per action class.
#[derive(Debug, Clone)]
pub struct ReferenceSet {
    matrices: Vec<ESecMatrix>,
}

impl ReferenceSet {
    pub fn new(matrices: Vec<ESecMatrix>) -> Result<Self> {
        if matrices.len() < 2 {
            return Err(EsecError::Info("need at least two classes".into()));
        }
        for m in &matrices {
            if m.columns.is_empty() {
                return Err(EsecError::EmptyMatrix);
            }
        }
        let mut labels: Vec<&str> = matrices.iter().map(|m| m.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != matrices.len() {
            return Err(EsecError::Info("duplicate class labels".into()));
        }
        let mut matrices = matrices;
        matrices.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(Self { matrices })
    }

    pub fn class_labels(&self) -> Vec<String> {
        self.matrices.iter().map(|m| m.label.clone()).collect()
    }

    pub fn matrices(&self) -> &[ESecMatrix] {
        &self.matrices
    }

    pub fn max_columns(&self) -> usize {
        self.matrices
            .iter()
            .map(|m| m.columns.len())
            .max()
            .unwrap_or(0)
    }

    fn code_at(&self, class: usize, column: usize, cues: CueSet) -> String {
        let m = &self.matrices[class];
        if column < m.columns.len() {
            m.column_code(column, cues).expect("column in range")
        } else {
            format!("{}:{ENDED_CODE}", cues.tag())
        }
    }
}

/// Likelihood and information profiles for every class under one cue
/// subset, pooled column-by-column over the reference set.
pub fn likelihood_table<T: Scalar>(
    reference: &ReferenceSet,
    cues: CueSet,
) -> Result<Vec<InfoProfile<T>>> {
    if cues.is_empty() {
        return Err(EsecError::Info("empty cue subset".into()));
    }
    let n_classes = reference.matrices.len();
    let max_cols = reference.max_columns();
    let class_count = T::from_usize(n_classes).unwrap();

    let mut likelihoods: Vec<Vec<T>> = vec![Vec::with_capacity(max_cols); n_classes];
    for column in 0..max_cols {
        let codes: Vec<String> = (0..n_classes)
            .map(|k| reference.code_at(k, column, cues))
            .collect();
        for k in 0..n_classes {
            let count = codes.iter().filter(|c| **c == codes[k]).count();
            likelihoods[k].push(T::from_usize(count).unwrap() / class_count);
        }
    }

    Ok(reference
        .class_labels()
        .into_iter()
        .zip(likelihoods)
        .map(|(class, l)| InfoProfile::from_likelihoods(class, cues, l))
        .collect())
}

/// Adds per-column bits across cue subsets of the same class and column
/// range; cumulative information is recomputed from the sum.
pub fn combine_cues<T: Scalar>(profiles: &[&InfoProfile<T>]) -> Result<InfoProfile<T>> {
    let first = profiles
        .first()
        .ok_or_else(|| EsecError::Info("no profiles to combine".into()))?;
    let len = first.per_column_bits.len();
    let mut cues = CueSet { tnr: false, ssr: false, dsr: false };
    for p in profiles {
        if p.class != first.class {
            return Err(EsecError::Info("profiles belong to different classes".into()));
        }
        if p.per_column_bits.len() != len {
            return Err(EsecError::Info("profiles cover different column ranges".into()));
        }
        cues.tnr |= p.cues.tnr;
        cues.ssr |= p.cues.ssr;
        cues.dsr |= p.cues.dsr;
    }
    let mut bits = vec![T::zero(); len];
    for p in profiles {
        for (b, pb) in bits.iter_mut().zip(&p.per_column_bits) {
            *b += *pb;
        }
    }
    let mut cumulative = Vec::with_capacity(len);
    let mut run = T::zero();
    for b in &bits {
        run += *b;
        cumulative.push(run);
    }
    // Likelihoods multiply when information adds.
    let likelihood = bits.iter().map(|b| T::from_f64_c(2.0).powf(-*b)).collect();
    Ok(InfoProfile {
        class: first.class.clone(),
        cues,
        per_column_likelihood: likelihood,
        per_column_bits: bits,
        cumulative_bits: cumulative,
    })
}

/// Earliest column (1-based) at which each class's code is unique among
/// the class set under the cue subset, with the elapsed column fraction.
/// `None` for classes that never disambiguate.
pub fn earliest_disambiguation<T: Scalar>(
    reference: &ReferenceSet,
    cues: CueSet,
) -> Result<Vec<(String, Option<(usize, T)>)>> {
    let profiles = likelihood_table::<T>(reference, cues)?;
    let n_classes = T::from_usize(reference.matrices.len()).unwrap();
    let unique_p = T::one() / n_classes;
    Ok(profiles
        .into_iter()
        .zip(reference.matrices())
        .map(|(profile, matrix)| {
            let total = matrix.columns.len();
            let hit = profile
                .per_column_likelihood
                .iter()
                .take(total)
                .position(|p| (*p - unique_p).abs() < T::from_f64_c(1e-9));
            let result = hit.map(|c| {
                let column = c + 1;
                let fraction = T::from_usize(column).unwrap() / T::from_usize(total).unwrap();
                (column, fraction)
            });
            (profile.class, result)
        })
        .collect())
}
