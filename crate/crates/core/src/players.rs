//! Ordered player sets.

use std::collections::HashSet;

use crate::coalition::Coalition;
use crate::error::{GameError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    labels: Vec<String>,
}

impl PlayerSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.contains(',') || label.chars().any(char::is_whitespace) {
                return Err(GameError::InvalidLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(GameError::DuplicateLabel(label.clone()));
            }
        }
        Ok(PlayerSet { labels })
    }

    /// Players labelled `"1"` through `"n"`.
    pub fn numbered(n: usize) -> Self {
        PlayerSet {
            labels: (1..=n).map(|k| k.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> &str {
        &self.labels[position]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| GameError::UnknownPlayer(label.to_string()))
    }

    pub fn grand(&self) -> Coalition {
        Coalition::full(self.len())
    }

    pub fn coalition<S: AsRef<str>>(&self, labels: &[S]) -> Result<Coalition> {
        labels.iter().try_fold(Coalition::EMPTY, |acc, label| {
            let label = label.as_ref();
            self.position(label)
                .map(|k| acc.with(k))
                .ok_or_else(|| GameError::UnknownPlayerInCoalition(label.to_string()))
        })
    }

    /// Parses a comma-joined label list; the empty string is the empty coalition.
    pub fn parse_coalition(&self, key: &str) -> Result<Coalition> {
        let key = key.trim().trim_start_matches('{').trim_end_matches('}');
        if key.trim().is_empty() {
            return Ok(Coalition::EMPTY);
        }
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        self.coalition(&parts)
    }

    /// Comma-joined labels of the members in player order.
    pub fn format_coalition(&self, s: Coalition) -> String {
        s.members()
            .map(|k| self.labels[k].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn restrict(&self, t: Coalition) -> PlayerSet {
        PlayerSet {
            labels: t.members().map(|k| self.labels[k].clone()).collect(),
        }
    }

    pub(crate) fn from_labels_unchecked(labels: Vec<String>) -> Self {
        PlayerSet { labels }
    }
}
