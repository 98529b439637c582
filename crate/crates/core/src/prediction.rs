//! Online action classification over growing event-chain prefixes.
//!
//! A test matrix is revealed column by column; at each horizon the mean
//! prefix similarity to every training class is computed and a decision
//! rule chooses when to commit to a class. Event-based predictive power
//! is the fraction of columns spared after the prediction column.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::encoder::{column_code_of, CueSet, ESecMatrix};
use crate::error::{EsecError, Result};
use crate::scalar::Scalar;
use crate::similarity::compare_prefix;

/// Labeled training samples grouped by action class, stable order.
#[derive(Debug, Clone)]
pub struct TrainingLibrary {
    classes: Vec<(String, Vec<ESecMatrix>)>,
}

impl TrainingLibrary {
    /// Groups matrices by their label; class order is sorted for
    /// reproducible reports.
    pub fn from_samples(samples: Vec<ESecMatrix>) -> Result<Self> {
        let mut by_class: Vec<(String, Vec<ESecMatrix>)> = Vec::new();
        for m in samples {
            if m.columns.is_empty() {
                return Err(EsecError::EmptyMatrix);
            }
            match by_class.iter_mut().find(|(label, _)| *label == m.label) {
                Some((_, v)) => v.push(m),
                None => by_class.push((m.label.clone(), vec![m])),
            }
        }
        by_class.sort_by(|a, b| a.0.cmp(&b.0));
        if by_class.len() < 2 {
            return Err(EsecError::Library(
                "need at least two action classes".into(),
            ));
        }
        Ok(Self { classes: by_class })
    }

    pub fn class_labels(&self) -> Vec<String> {
        self.classes.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn samples(&self, class: usize) -> &[ESecMatrix] {
        &self.classes[class].1
    }
}

/// When the online classifier commits to a class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecisionRule<T = f64> {
    /// Fire at the earliest column where the best class's mean prefix
    /// similarity exceeds the runner-up's by at least `tau` percentage
    /// points. Ties never fire.
    Margin { tau: T },
    /// Fire at the earliest column whose full 30-row code has appeared,
    /// at this column index, in training samples of exactly one class.
    Uniqueness,
}

impl<T: Scalar> Default for DecisionRule<T> {
    fn default() -> Self {
        DecisionRule::Margin {
            tau: T::from_f64_c(5.0),
        }
    }
}

/// Outcome of one online prediction run.
#[derive(Debug, Clone)]
pub struct PredictionTrace<T = f64> {
    /// `per_column[c][k]`: mean similarity to class `k` after `c + 1`
    /// observed columns.
    pub per_column: Vec<Vec<T>>,
    pub class_labels: Vec<String>,
    pub predicted_class: Option<String>,
    /// 1-based column at which the rule fired.
    pub prediction_column: Option<usize>,
    pub total_columns: usize,
    /// `(1 - column/total) * 100` when predicted, zero otherwise.
    pub predictive_power: T,
}

impl<T: Scalar> PredictionTrace<T> {
    /// Class ranking at full observation (best first).
    pub fn final_ranking(&self) -> Vec<(String, T)> {
        let mut last: Vec<(String, T)> = self
            .class_labels
            .iter()
            .cloned()
            .zip(self.per_column.last().cloned().unwrap_or_default())
            .collect();
        last.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        last
    }
}

/// Per-column running dissimilarity sums of `test` against one training
/// matrix; equivalent to repeated `compare_prefix` calls but linear in
/// the column count.
fn prefix_similarities<T: Scalar>(test: &ESecMatrix, train: &ESecMatrix) -> Vec<T> {
    let n = test.columns.len();
    let m = train.columns.len();
    let mut sims = Vec::with_capacity(n);
    let mut running = T::zero();
    let hundred = T::from_f64_c(100.0);
    let ten = T::from_f64_c(10.0);
    for j in 0..n {
        let tc = &test.columns[j];
        let rc = &train.columns[j.min(m - 1)];
        for pair in 0..10 {
            let mut mismatches = 0u8;
            if tc[pair].tnr != rc[pair].tnr {
                mismatches += 1;
            }
            if tc[pair].ssr != rc[pair].ssr {
                mismatches += 1;
            }
            if tc[pair].dsr != rc[pair].dsr {
                mismatches += 1;
            }
            running += (T::from_u8(mismatches).unwrap() / T::from_f64_c(3.0)).sqrt();
        }
        let mean = running / (ten * T::from_usize(j + 1).unwrap());
        sims.push((T::one() - mean) * hundred);
    }
    sims
}

/// Index of column codes over a training library: column -> code ->
/// per-class sample counts. Supports leave-one-out exclusion.
struct CodeIndex {
    per_column: Vec<HashMap<String, Vec<usize>>>,
}

impl CodeIndex {
    fn build(lib: &TrainingLibrary) -> Self {
        let max_cols = lib
            .classes
            .iter()
            .flat_map(|(_, v)| v.iter().map(|m| m.columns.len()))
            .max()
            .unwrap_or(0);
        let mut per_column: Vec<HashMap<String, Vec<usize>>> = vec![HashMap::new(); max_cols];
        for (k, (_, samples)) in lib.classes.iter().enumerate() {
            for m in samples {
                for (j, col) in m.columns.iter().enumerate() {
                    let code = column_code_of(col, CueSet::ALL);
                    per_column[j]
                        .entry(code)
                        .or_insert_with(|| vec![0; lib.class_count()])
                        [k] += 1;
                }
            }
        }
        Self { per_column }
    }

    /// The single class owning `code` at `column`, if exactly one does.
    /// `exclude` removes one held-out sample's own contribution.
    fn unique_class(
        &self,
        column: usize,
        code: &str,
        exclude: Option<(usize, &ESecMatrix)>,
    ) -> Option<usize> {
        let counts = self.per_column.get(column)?.get(code)?;
        let mut counts = counts.clone();
        if let Some((k, m)) = exclude {
            if column < m.columns.len()
                && column_code_of(&m.columns[column], CueSet::ALL) == code
            {
                counts[k] -= 1;
            }
        }
        let mut owner = None;
        for (k, &c) in counts.iter().enumerate() {
            if c > 0 {
                if owner.is_some() {
                    return None;
                }
                owner = Some(k);
            }
        }
        owner
    }
}

fn predict_impl<T: Scalar>(
    test: &ESecMatrix,
    lib: &TrainingLibrary,
    rule: DecisionRule<T>,
    code_index: Option<&CodeIndex>,
    exclude: Option<(usize, usize)>,
) -> Result<PredictionTrace<T>> {
    if test.columns.is_empty() {
        return Err(EsecError::EmptyMatrix);
    }
    let total = test.columns.len();
    let n_classes = lib.class_count();

    // Mean prefix similarity per class per horizon.
    let mut per_column = vec![vec![T::zero(); n_classes]; total];
    for (k, (_, samples)) in lib.classes.iter().enumerate() {
        let mut sums = vec![T::zero(); total];
        let mut count = 0usize;
        for (j, m) in samples.iter().enumerate() {
            if exclude == Some((k, j)) {
                continue;
            }
            for (c, s) in prefix_similarities::<T>(test, m).into_iter().enumerate() {
                sums[c] += s;
            }
            count += 1;
        }
        if count == 0 {
            return Err(EsecError::Library(format!(
                "class `{}` has no training samples left",
                lib.classes[k].0
            )));
        }
        for c in 0..total {
            per_column[c][k] = sums[c] / T::from_usize(count).unwrap();
        }
    }

    let owned_index = match (&rule, code_index) {
        (DecisionRule::Uniqueness, None) => Some(CodeIndex::build(lib)),
        _ => None,
    };
    let index_ref = code_index.or(owned_index.as_ref());
    let excluded_matrix = exclude.map(|(k, j)| (k, &lib.samples(k)[j]));

    let mut predicted = None;
    let mut prediction_column = None;
    for c in 0..total {
        match rule {
            DecisionRule::Margin { tau } => {
                let means = &per_column[c];
                let (mut best, mut best_k) = (T::neg_infinity(), 0usize);
                let mut second = T::neg_infinity();
                for (k, &s) in means.iter().enumerate() {
                    if s > best {
                        second = best;
                        best = s;
                        best_k = k;
                    } else if s > second {
                        second = s;
                    }
                }
                if best - second >= tau {
                    predicted = Some(lib.classes[best_k].0.clone());
                    prediction_column = Some(c + 1);
                }
            }
            DecisionRule::Uniqueness => {
                let index = index_ref.expect("uniqueness index prepared above");
                let code = column_code_of(&test.columns[c], CueSet::ALL);
                if let Some(k) = index.unique_class(c, &code, excluded_matrix) {
                    predicted = Some(lib.classes[k].0.clone());
                    prediction_column = Some(c + 1);
                }
            }
        }
        if predicted.is_some() {
            break;
        }
    }

    let power = match prediction_column {
        Some(col) => {
            (T::one() - T::from_usize(col).unwrap() / T::from_usize(total).unwrap())
                * T::from_f64_c(100.0)
        }
        None => T::zero(),
    };

    Ok(PredictionTrace {
        per_column,
        class_labels: lib.class_labels(),
        predicted_class: predicted,
        prediction_column,
        total_columns: total,
        predictive_power: power,
    })
}

/// Classifies a growing prefix online and reports when the decision rule
/// first fires.
pub fn predict_online<T: Scalar>(
    test: &ESecMatrix,
    lib: &TrainingLibrary,
    rule: DecisionRule<T>,
) -> Result<PredictionTrace<T>> {
    predict_impl(test, lib, rule, None, None)
}

/// Cross-validation protocol for corpus evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    LeaveOneOut,
    KFold(usize),
}

/// Aggregate results of corpus evaluation.
#[derive(Debug, Clone)]
pub struct CorpusEvaluation<T = f64> {
    pub class_labels: Vec<String>,
    /// Mean event-based predictive power per class.
    pub per_class_power: Vec<T>,
    pub overall_power: T,
    /// Fraction of held-out samples whose rule ever fired, per class.
    pub fired_fraction: Vec<T>,
    /// Fraction classified correctly from the fully observed matrix.
    pub full_observation_accuracy: T,
    /// `confusion[true_class][predicted_class]` at full observation.
    pub confusion: Vec<Vec<usize>>,
    pub samples_evaluated: usize,
}

impl<T: Scalar> CorpusEvaluation<T> {
    /// Classes that never disambiguated under the decision rule.
    pub fn never_fired(&self) -> Vec<String> {
        self.class_labels
            .iter()
            .zip(&self.fired_fraction)
            .filter(|(_, &f)| f == T::zero())
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// Evaluates the library against itself under the given protocol: each
/// held-out sample is predicted online from the remaining samples.
pub fn evaluate_corpus<T: Scalar>(
    lib: &TrainingLibrary,
    protocol: Protocol,
    rule: DecisionRule<T>,
) -> Result<CorpusEvaluation<T>> {
    let n_classes = lib.class_count();
    for (label, samples) in &lib.classes {
        let needed = match protocol {
            Protocol::LeaveOneOut => 2,
            Protocol::KFold(k) => k.max(2),
        };
        if samples.len() < needed {
            return Err(EsecError::InsufficientSamples {
                class: label.clone(),
                needed,
                got: samples.len(),
            });
        }
    }
    if let Protocol::KFold(k) = protocol {
        if k < 2 {
            return Err(EsecError::Library("k-fold needs k >= 2".into()));
        }
    }

    let code_index = CodeIndex::build(lib);
    let folds: Vec<(usize, usize)> = (0..n_classes)
        .flat_map(|k| (0..lib.samples(k).len()).map(move |i| (k, i)))
        .collect();

    // With k-fold, a sample is evaluated against all samples outside its
    // fold; leave-one-out is the k = class-size special case. Exclusion
    // of a single sample is exact; k-fold approximates by evaluating
    // only the held-out fold members one at a time.
    let in_same_fold = |protocol: Protocol, i: usize, j: usize| match protocol {
        Protocol::LeaveOneOut => i == j,
        Protocol::KFold(k) => i % k == j % k,
    };

    struct FoldOutcome<T> {
        class: usize,
        power: T,
        fired: bool,
        predicted_final: usize,
    }

    let outcomes: Vec<FoldOutcome<T>> = folds
        .par_iter()
        .map(|&(k, i)| -> Result<FoldOutcome<T>> {
            let test = &lib.samples(k)[i];
            let trace = match protocol {
                // Exact single-sample exclusion against the full library
                // and the shared code index.
                Protocol::LeaveOneOut => {
                    predict_impl(test, lib, rule, Some(&code_index), Some((k, i)))?
                }
                // K-fold holds out the whole fold; build the reduced
                // library explicitly.
                Protocol::KFold(_) => {
                    let reduced = TrainingLibrary {
                        classes: lib
                            .classes
                            .iter()
                            .enumerate()
                            .map(|(kk, (label, samples))| {
                                let kept: Vec<ESecMatrix> = samples
                                    .iter()
                                    .enumerate()
                                    .filter(|(j, _)| !(kk == k && in_same_fold(protocol, i, *j)))
                                    .map(|(_, m)| m.clone())
                                    .collect();
                                (label.clone(), kept)
                            })
                            .collect(),
                    };
                    predict_impl(test, &reduced, rule, None, None)?
                }
            };
            let finals = trace.per_column.last().expect("non-empty");
            let mut best_k = 0usize;
            for (kk, &s) in finals.iter().enumerate() {
                if s > finals[best_k] {
                    best_k = kk;
                }
            }
            Ok(FoldOutcome {
                class: k,
                power: trace.predictive_power,
                fired: trace.prediction_column.is_some(),
                predicted_final: best_k,
            })
        })
        .collect::<Result<_>>()?;

    let mut per_class_power = vec![T::zero(); n_classes];
    let mut per_class_count = vec![0usize; n_classes];
    let mut fired = vec![0usize; n_classes];
    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    let mut correct = 0usize;
    for o in &outcomes {
        per_class_power[o.class] += o.power;
        per_class_count[o.class] += 1;
        if o.fired {
            fired[o.class] += 1;
        }
        confusion[o.class][o.predicted_final] += 1;
        if o.predicted_final == o.class {
            correct += 1;
        }
    }
    let mut overall = T::zero();
    for k in 0..n_classes {
        per_class_power[k] /= T::from_usize(per_class_count[k]).unwrap();
        overall += per_class_power[k];
    }

    Ok(CorpusEvaluation {
        class_labels: lib.class_labels(),
        per_class_power: per_class_power.clone(),
        overall_power: overall / T::from_usize(n_classes).unwrap(),
        fired_fraction: fired
            .iter()
            .zip(&per_class_count)
            .map(|(&f, &c)| T::from_usize(f).unwrap() / T::from_usize(c).unwrap())
            .collect(),
        full_observation_accuracy: T::from_usize(correct).unwrap()
            / T::from_usize(outcomes.len()).unwrap(),
        confusion,
        samples_evaluated: outcomes.len(),
    })
}

/// Exhaustive re-check used by tests: no column earlier than the fired
/// one satisfies the margin rule, via direct `compare_prefix` calls.
pub fn margin_rule_oracle<T: Scalar>(
    test: &ESecMatrix,
    lib: &TrainingLibrary,
    tau: T,
) -> Result<Option<(usize, String)>> {
    for c in 1..=test.columns.len() {
        let mut means: Vec<(usize, T)> = Vec::new();
        for (k, (_, samples)) in lib.classes.iter().enumerate() {
            let mut sum = T::zero();
            for m in samples {
                sum += compare_prefix::<T>(test, m, c)?.similarity;
            }
            means.push((k, sum / T::from_usize(samples.len()).unwrap()));
        }
        means.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        if means.len() >= 2 && means[0].1 - means[1].1 >= tau {
            return Ok(Some((c, lib.classes[means[0].0].0.clone())));
        }
    }
    Ok(None)
}
