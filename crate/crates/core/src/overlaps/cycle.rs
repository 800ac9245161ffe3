use std::fmt;

use crate::error::{Error, Result};

/// Index tuple `(i_1, j_1, ..., i_q, j_q)` with `i_{q+1} = i_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OverlapCycle {
    indices: Vec<usize>,
}

impl OverlapCycle {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() || !indices.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "an overlap cycle needs 2q >= 2 indices, got {}",
                indices.len()
            )));
        }
        Ok(Self { indices })
    }

    /// The diagonal cycle `(i, i)`.
    pub fn diagonal(i: usize) -> Self {
        Self { indices: vec![i, i] }
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Self { indices: vec![i, j] }
    }

    pub fn q(&self) -> usize {
        self.indices.len() / 2
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `(i_l, j_l, i_{l+1})` for `l = 0..q`.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let q = self.q();
        (0..q).map(move |l| {
            (
                self.indices[2 * l],
                self.indices[2 * l + 1],
                self.indices[(2 * l + 2) % (2 * q)],
            )
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.q() == 1 && self.indices[0] == self.indices[1]
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        match self.indices.iter().find(|&&k| k >= n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, dim: n }),
            None => Ok(()),
        }
    }

    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        Self {
            indices: self.indices.iter().map(|&k| map(k)).collect(),
        }
    }
}

impl fmt::Display for OverlapCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("-"))
    }
}
