//! Ingest of externally recorded human responses.
//!
//! Responses reference encoded scenarios by id; each row carries the
//! column at which a participant committed to a class. Responses beyond
//! the scenario's column count are timeouts and are excluded but counted.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};

use crate::error::{EsecError, Result};
use crate::scalar::Scalar;

/// What the evaluator needs to know about each encoded scenario.
#[derive(Debug, Clone)]
pub struct ResponseCorpusMeta {
    /// scenario id -> (true class, total columns)
    pub scenarios: HashMap<String, (String, usize)>,
}

impl ResponseCorpusMeta {
    pub fn new() -> Self {
        Self {
            scenarios: HashMap::new(),
        }
    }

    pub fn insert(&mut self, id: impl Into<String>, class: impl Into<String>, columns: usize) {
        self.scenarios.insert(id.into(), (class.into(), columns));
    }
}

impl Default for ResponseCorpusMeta {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HumanClassRow<T = f64> {
    pub class: String,
    /// Mean event-based predictive power over included trials.
    pub mean_power: T,
    /// Fraction of included trials with a wrong chosen class.
    pub error_rate: T,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct HumanEvaluation<T = f64> {
    pub per_class: Vec<HumanClassRow<T>>,
    pub included_trials: usize,
    /// Rows dropped because the response column exceeded the video length.
    pub excluded_timeouts: usize,
}

impl<T: Scalar> HumanEvaluation<T> {
    pub fn overall_power(&self) -> T {
        if self.per_class.is_empty() {
            return T::zero();
        }
        let sum = self
            .per_class
            .iter()
            .fold(T::zero(), |acc, r| acc + r.mean_power);
        sum / T::from_usize(self.per_class.len()).unwrap()
    }
}

/// Parses a `responses` file and computes per-class human predictive
/// power via the same column-ratio formula the machine uses.
///
/// Format: header `responses`, then rows
/// `scenario_id, participant_id, response_column, chosen_class`.
pub fn ingest_human_responses<T: Scalar, R: Read>(
    input: R,
    meta: &ResponseCorpusMeta,
) -> Result<HumanEvaluation<T>> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| EsecError::Responses("empty file".into()))?;
    if header?.trim() != "responses" {
        return Err(EsecError::Responses("missing `responses` header".into()));
    }

    struct Acc<T> {
        power_sum: T,
        errors: usize,
        trials: usize,
    }
    let mut per_class: HashMap<String, Acc<T>> = HashMap::new();
    let mut timeouts = 0usize;
    let mut included = 0usize;

    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(EsecError::Responses(format!(
                "line {lineno}: expected 4 comma-separated fields"
            )));
        }
        let scenario_id = fields[0];
        let (true_class, total) = meta.scenarios.get(scenario_id).ok_or_else(|| {
            EsecError::Responses(format!("line {lineno}: unknown scenario `{scenario_id}`"))
        })?;
        let response_column: usize = fields[2].parse().map_err(|_| {
            EsecError::Responses(format!("line {lineno}: bad response column `{}`", fields[2]))
        })?;
        if response_column == 0 {
            return Err(EsecError::Responses(format!(
                "line {lineno}: response column is 1-based"
            )));
        }
        if response_column > *total {
            timeouts += 1;
            continue;
        }
        let chosen = fields[3];
        let power = (T::one()
            - T::from_usize(response_column).unwrap() / T::from_usize(*total).unwrap())
            * T::from_f64_c(100.0);
        let acc = per_class.entry(true_class.clone()).or_insert(Acc {
            power_sum: T::zero(),
            errors: 0,
            trials: 0,
        });
        acc.power_sum += power;
        acc.trials += 1;
        if chosen != true_class {
            acc.errors += 1;
        }
        included += 1;
    }

    let mut rows: Vec<HumanClassRow<T>> = per_class
        .into_iter()
        .map(|(class, acc)| HumanClassRow {
            class,
            mean_power: acc.power_sum / T::from_usize(acc.trials).unwrap(),
            error_rate: T::from_usize(acc.errors).unwrap() / T::from_usize(acc.trials).unwrap(),
            trials: acc.trials,
        })
        .collect();
    rows.sort_by(|a, b| a.class.cmp(&b.class));

    Ok(HumanEvaluation {
        per_class: rows,
        included_trials: included,
        excluded_timeouts: timeouts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> ResponseCorpusMeta {
        let mut m = ResponseCorpusMeta::new();
        m.insert("cut_000", "cut", 13);
        m.insert("push_000", "push", 8);
        m
    }

    #[test]
    fn response_at_final_column_has_small_power() {
        let text = "responses\ncut_000, p1, 13, cut\n";
        let h: HumanEvaluation = ingest_human_responses(text.as_bytes(), &meta()).unwrap();
        assert_eq!(h.per_class.len(), 1);
        assert!(h.per_class[0].mean_power.abs() < 1e-12);
        let text = "responses\ncut_000, p1, 12, cut\n";
        let h: HumanEvaluation = ingest_human_responses(text.as_bytes(), &meta()).unwrap();
        assert!(h.per_class[0].mean_power > 0.0);
    }

    #[test]
    fn timeout_rows_are_excluded_and_counted() {
        let text = "responses\ncut_000, p1, 14, cut\ncut_000, p2, 5, cut\n";
        let h: HumanEvaluation = ingest_human_responses(text.as_bytes(), &meta()).unwrap();
        assert_eq!(h.excluded_timeouts, 1);
        assert_eq!(h.included_trials, 1);
        let expected = (1.0 - 5.0 / 13.0) * 100.0;
        assert!((h.per_class[0].mean_power - expected).abs() < 1e-9);
    }

    #[test]
    fn unknown_scenario_rejected() {
        let text = "responses\nmystery, p1, 3, cut\n";
        assert!(ingest_human_responses::<f64, _>(text.as_bytes(), &meta()).is_err());
    }

    #[test]
    fn wrong_choice_counts_toward_error_rate() {
        let text = "responses\npush_000, p1, 4, push\npush_000, p2, 4, lay\n";
        let h: HumanEvaluation = ingest_human_responses(text.as_bytes(), &meta()).unwrap();
        assert!((h.per_class[0].error_rate - 0.5).abs() < 1e-12);
    }
}
