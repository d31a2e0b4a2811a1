use std::collections::HashSet;

use crate::error::{Error, Result};

/// One optical mode: a label, its optical (angular) frequency and the Fock
/// cutoff used when the mode is represented in a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub label: String,
    pub frequency: f64,
    pub cutoff: usize,
}

/// Ordered set of modes.
///
/// The Fock basis built on a registry is the row-major multi-index order over
/// the modes, first mode slowest: `|n_1, ..., n_M>` sits at
/// `sum_k n_k * stride_k` with `stride_M = 1` and
/// `stride_k = stride_{k+1} * (cutoff_{k+1} + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeRegistry {
    modes: Vec<Mode>,
    strides: Vec<usize>,
    dim: usize,
}

impl ModeRegistry {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidRegistry("registry has no modes".into()));
        }
        let mut seen = HashSet::new();
        for m in &modes {
            if !seen.insert(m.label.as_str()) {
                return Err(Error::InvalidRegistry(format!(
                    "duplicate label `{}`",
                    m.label
                )));
            }
            if m.cutoff < 1 {
                return Err(Error::InvalidRegistry(format!(
                    "cutoff of `{}` must be at least 1",
                    m.label
                )));
            }
            if !m.frequency.is_finite() || m.frequency <= 0.0 {
                return Err(Error::InvalidRegistry(format!(
                    "frequency of `{}` must be positive, got {}",
                    m.label, m.frequency
                )));
            }
        }
        let mut strides = vec![1usize; modes.len()];
        let mut dim = 1usize;
        for k in (0..modes.len()).rev() {
            strides[k] = dim;
            dim = dim
                .checked_mul(modes[k].cutoff + 1)
                .ok_or_else(|| Error::InvalidRegistry("Hilbert dimension overflows".into()))?;
        }
        Ok(Self {
            modes,
            strides,
            dim,
        })
    }

    /// Convenience constructor from `(label, frequency, cutoff)` triples.
    pub fn from_triples<S: Into<String>>(
        triples: impl IntoIterator<Item = (S, f64, usize)>,
    ) -> Result<Self> {
        Self::new(
            triples
                .into_iter()
                .map(|(label, frequency, cutoff)| Mode {
                    label: label.into(),
                    frequency,
                    cutoff,
                })
                .collect(),
        )
    }

    /// Same modes with every cutoff replaced.
    pub fn with_cutoffs(&self, cutoffs: &[usize]) -> Result<Self> {
        if cutoffs.len() != self.modes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.modes.len(),
                actual: cutoffs.len(),
            });
        }
        Self::new(
            self.modes
                .iter()
                .zip(cutoffs)
                .map(|(m, &c)| Mode {
                    cutoff: c,
                    ..m.clone()
                })
                .collect(),
        )
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Total Hilbert dimension, `prod (cutoff + 1)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn local_dim(&self, mode: usize) -> usize {
        self.modes[mode].cutoff + 1
    }

    pub fn cutoffs(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.cutoff).collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.modes.iter().map(|m| m.label.as_str())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.modes
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| Error::UnknownMode(label.to_string()))
    }

    pub fn mode(&self, label: &str) -> Result<&Mode> {
        Ok(&self.modes[self.index_of(label)?])
    }

    /// Occupation of `mode` in the basis state at `index`.
    #[inline]
    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.strides[mode]) % (self.modes[mode].cutoff + 1)
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.modes.len())
            .map(|k| self.occupation(index, k))
            .collect()
    }

    pub fn index_of_occupations(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.modes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.modes.len(),
                actual: occupations.len(),
            });
        }
        let mut index = 0;
        for (k, (&n, m)) in occupations.iter().zip(&self.modes).enumerate() {
            if n > m.cutoff {
                return Err(Error::OccupationExceedsCutoff {
                    mode: m.label.clone(),
                    occupation: n,
                    cutoff: m.cutoff,
                });
            }
            index += n * self.strides[k];
        }
        Ok(index)
    }

    /// Registry made of the listed modes, in the order given.
    pub fn subset(&self, modes: &[usize]) -> Result<Self> {
        Self::new(modes.iter().map(|&k| self.modes[k].clone()).collect())
    }

    /// Registry of `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(self.modes.iter().chain(&other.modes).cloned().collect())
    }

    /// Global basis offsets of every local multi-index over `modes` (listed
    /// order, first slowest) and the base indices of all configurations of
    /// the remaining modes. `base + offset` enumerates the whole basis.
    pub(crate) fn split(&self, modes: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut offsets = vec![0usize];
        for &k in modes {
            let d = self.local_dim(k);
            offsets = offsets
                .iter()
                .flat_map(|&o| (0..d).map(move |n| o + n * self.strides[k]))
                .collect();
        }
        let mut bases = vec![0usize];
        for k in 0..self.modes.len() {
            if modes.contains(&k) {
                continue;
            }
            let d = self.local_dim(k);
            let s = self.strides[k];
            bases = bases
                .iter()
                .flat_map(|&b| (0..d).map(move |n| b + n * s))
                .collect();
        }
        (offsets, bases)
    }

    pub(crate) fn check_distinct(&self, modes: &[usize]) -> Result<()> {
        for (i, a) in modes.iter().enumerate() {
            if modes[..i].contains(a) {
                return Err(Error::InvalidDevice(format!(
                    "mode `{}` listed twice",
                    self.modes[*a].label
                )));
            }
        }
        Ok(())
    }
}
