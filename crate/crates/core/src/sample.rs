use serde::Serialize;

use crate::error::{Error, Result};

/// Ground-truth origin of a p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Signal,
    Noise,
}

/// A set of p-values together with their ascending order.
///
/// `order()[r]` is the original (0-based) index of the p-value with 0-based
/// rank `r`. Ties keep their input order.
#[derive(Debug, Clone)]
pub struct PValueSample {
    values: Vec<f64>,
    sorted: Vec<f64>,
    order: Vec<usize>,
    labels: Option<Vec<Label>>,
}

impl PValueSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Input(format!(
                "p-value {v} at index {i} is outside [0, 1]"
            )));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        // stable, so equal p-values stay in input order
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let sorted = order.iter().map(|&i| values[i]).collect();
        Ok(Self {
            values,
            sorted,
            order,
            labels: None,
        })
    }

    pub fn with_labels(values: Vec<f64>, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::Input(format!(
                "{} labels for {} p-values",
                labels.len(),
                values.len()
            )));
        }
        let mut sample = Self::new(values)?;
        sample.labels = Some(labels);
        Ok(sample)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// P-values in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// P-values in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Rank (0-based) to original index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    /// Labels arranged by ascending p-value.
    pub fn sorted_labels(&self) -> Result<Vec<Label>> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::Input("sample carries no signal/noise labels".into()))?;
        Ok(self.order.iter().map(|&i| labels[i]).collect())
    }

    pub fn signal_count(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|l| l.iter().filter(|&&x| x == Label::Signal).count())
    }
}
