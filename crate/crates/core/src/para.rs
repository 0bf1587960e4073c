//! Paracyclic morphisms as finite windows of periodic monotone maps Z -> Z.
//!
//! A morphism `f: n -> m` is a nondecreasing map of the integers with
//! `f(j + n + 1) = f(j) + m + 1`, so it is determined by the window
//! `f(0), ..., f(n)`. The duplicial subcategory is cut out by `f(0) >= 0`,
//! the simplicial one additionally by `f(n) <= m`. The cyclic dual
//! `f°(i) = max { j | -f(-j) <= i }` is a contravariant involution that
//! preserves the duplicial subcategory but not the simplicial one.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParaError {
    #[error("expected {expected} window values for source rank {rank}, got {got}")]
    WrongValueCount {
        rank: usize,
        expected: usize,
        got: usize,
    },
    #[error("window values must be nondecreasing: values[{index}] = {value} < values[{}] = {previous}", index - 1)]
    NotMonotone {
        index: usize,
        value: i64,
        previous: i64,
    },
    #[error("window exceeds one period: values[{rank}] = {last} > values[0] + m + 1 = {bound}")]
    PeriodExceeded { rank: usize, last: i64, bound: i64 },
    #[error("cannot compose: inner target rank {inner_target} != outer source rank {outer_source}")]
    RankMismatch {
        inner_target: usize,
        outer_source: usize,
    },
    #[error("generator index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("malformed morphism literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// Classification of a morphism within the nested subcategories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcategoryTag {
    /// `f(0) >= 0` and `f(n) <= m`.
    Delta,
    /// `f(0) >= 0` only.
    K,
    /// No constraint beyond monotonicity and periodicity.
    ParaCyclic,
}

impl fmt::Display for SubcategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubcategoryTag::Delta => write!(f, "delta"),
            SubcategoryTag::K => write!(f, "k"),
            SubcategoryTag::ParaCyclic => write!(f, "paracyclic"),
        }
    }
}

/// A paracyclic morphism `n -> m`, stored as the window `f(0..=n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParaMorphism {
    source_rank: usize,
    target_rank: usize,
    values: Vec<i64>,
}

impl ParaMorphism {
    /// Validates monotonicity and the one-period bound
    /// `values[n] <= values[0] + m + 1` forced by periodicity.
    pub fn new(
        source_rank: usize,
        target_rank: usize,
        values: Vec<i64>,
    ) -> Result<Self, ParaError> {
        if values.len() != source_rank + 1 {
            return Err(ParaError::WrongValueCount {
                rank: source_rank,
                expected: source_rank + 1,
                got: values.len(),
            });
        }
        for i in 1..values.len() {
            if values[i] < values[i - 1] {
                return Err(ParaError::NotMonotone {
                    index: i,
                    value: values[i],
                    previous: values[i - 1],
                });
            }
        }
        let bound = values[0] + target_rank as i64 + 1;
        if values[source_rank] > bound {
            return Err(ParaError::PeriodExceeded {
                rank: source_rank,
                last: values[source_rank],
                bound,
            });
        }
        Ok(ParaMorphism {
            source_rank,
            target_rank,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        ParaMorphism {
            source_rank: n,
            target_rank: n,
            values: (0..=n as i64).collect(),
        }
    }

    /// The monotone injection `(n-1) -> n` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, ParaError> {
        if n == 0 || i > n {
            return Err(ParaError::IndexOutOfRange { index: i, max: n });
        }
        let values = (0..=n as i64).filter(|&v| v != i as i64).collect();
        Ok(ParaMorphism {
            source_rank: n - 1,
            target_rank: n,
            values,
        })
    }

    /// The monotone surjection `(n+1) -> n` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, ParaError> {
        if i > n {
            return Err(ParaError::IndexOutOfRange { index: i, max: n });
        }
        let mut values = Vec::with_capacity(n + 2);
        for v in 0..=n as i64 {
            values.push(v);
            if v == i as i64 {
                values.push(v);
            }
        }
        Ok(ParaMorphism {
            source_rank: n + 1,
            target_rank: n,
            values,
        })
    }

    /// The cyclic operator `n -> n`, `j -> j + 1`.
    pub fn cycle(n: usize) -> Self {
        ParaMorphism {
            source_rank: n,
            target_rank: n,
            values: (1..=n as i64 + 1).collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `f(j)` for any integer `j`, by periodic extension of the window.
    pub fn eval(&self, j: i64) -> i64 {
        let n1 = self.source_rank as i64 + 1;
        let m1 = self.target_rank as i64 + 1;
        let q = j.div_euclid(n1);
        let r = j.rem_euclid(n1);
        self.values[r as usize] + q * m1
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &ParaMorphism) -> Result<ParaMorphism, ParaError> {
        if inner.target_rank != self.source_rank {
            return Err(ParaError::RankMismatch {
                inner_target: inner.target_rank,
                outer_source: self.source_rank,
            });
        }
        let values = inner.values.iter().map(|&v| self.eval(v)).collect();
        Ok(ParaMorphism {
            source_rank: inner.source_rank,
            target_rank: self.target_rank,
            values,
        })
    }

    /// The cyclic dual `f°: m -> n`, `f°(i) = max { j | -f(-j) <= i }`.
    ///
    /// `j -> -f(-j)` is nondecreasing and gains `m + 1` per `n + 1` steps,
    /// so the maxima for ascending `i` are found by one monotone scan that
    /// starts in the period below the first answer.
    pub fn cyclic_dual(&self) -> ParaMorphism {
        let n1 = self.source_rank as i64 + 1;
        let m1 = self.target_rank as i64 + 1;
        let g = |j: i64| -self.eval(-j);
        // g(k0 * n1) = g(0) + k0 * (m+1) <= 0, below every answer
        let mut j = (-g(0)).div_euclid(m1) * n1;
        let mut values = Vec::with_capacity(self.target_rank + 1);
        for i in 0..=self.target_rank as i64 {
            while g(j + 1) <= i {
                j += 1;
            }
            values.push(j);
        }
        ParaMorphism {
            source_rank: self.target_rank,
            target_rank: self.source_rank,
            values,
        }
    }

    /// `f(0) >= 0`: membership in the duplicial subcategory.
    pub fn in_k(&self) -> bool {
        self.values[0] >= 0
    }

    /// `f(0) >= 0` and `f(n) <= m`: membership in the simplicial subcategory.
    pub fn in_delta(&self) -> bool {
        self.in_k() && self.values[self.source_rank] <= self.target_rank as i64
    }

    pub fn classify(&self) -> SubcategoryTag {
        if self.in_delta() {
            SubcategoryTag::Delta
        } else if self.in_k() {
            SubcategoryTag::K
        } else {
            SubcategoryTag::ParaCyclic
        }
    }

    /// Representative of the class of `f` modulo postcomposition with full
    /// turns of the target: shifted by a multiple of `m + 1` so that
    /// `0 <= f(0) <= m`. Idempotent.
    pub fn lambda_canonical(&self) -> ParaMorphism {
        let m1 = self.target_rank as i64 + 1;
        let shift = self.values[0].div_euclid(m1) * m1;
        if shift == 0 {
            return self.clone();
        }
        ParaMorphism {
            source_rank: self.source_rank,
            target_rank: self.target_rank,
            values: self.values.iter().map(|v| v - shift).collect(),
        }
    }

    /// Parses the literal form `n m : v0 v1 ... vn`.
    pub fn parse(literal: &str) -> Result<Self, ParaError> {
        let bad = |reason: &str| ParaError::BadLiteral {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = literal.splitn(2, ':');
        let head = parts.next().unwrap_or("");
        let tail = parts.next().ok_or_else(|| bad("missing ':'"))?;
        let ranks: Vec<&str> = head.split_whitespace().collect();
        if ranks.len() != 2 {
            return Err(bad("expected two ranks before ':'"));
        }
        let n: usize = ranks[0].parse().map_err(|_| bad("source rank not a natural"))?;
        let m: usize = ranks[1].parse().map_err(|_| bad("target rank not a natural"))?;
        let values = tail
            .split_whitespace()
            .map(|tok| tok.parse::<i64>().map_err(|_| bad("value not an integer")))
            .collect::<Result<Vec<_>, _>>()?;
        ParaMorphism::new(n, m, values)
    }
}

impl fmt::Display for ParaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} :", self.source_rank, self.target_rank)?;
        for v in &self.values {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// All morphisms `n -> m` whose window start lies in the fundamental domain
/// `0 <= f(0) <= m` shifted by up to `window` full periods each way, i.e.
/// `f(0) in [-window*(m+1), window*(m+1) + m]`. Deterministic order:
/// ascending `f(0)`, then lexicographic window.
pub fn enumerate(n: usize, m: usize, window: usize) -> Vec<ParaMorphism> {
    let m1 = m as i64 + 1;
    let lo = -(window as i64) * m1;
    let hi = window as i64 * m1 + m as i64;
    let mut out = Vec::new();
    for v0 in lo..=hi {
        let mut values = vec![v0; n + 1];
        loop {
            out.push(ParaMorphism {
                source_rank: n,
                target_rank: m,
                values: values.clone(),
            });
            // next nondecreasing window with values[i] <= v0 + m + 1
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                if values[i] < v0 + m1 {
                    values[i] += 1;
                    for j in i + 1..=n {
                        values[j] = values[i];
                    }
                    break;
                }
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
    out
}
