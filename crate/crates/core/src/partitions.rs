//! Integer partitions: enumeration, counting, and the Morse data of the
//! torus fixed points of `Hilb^n(C^2)`.
//!
//! A fixed point is described by the weight spaces `V(k, l)` of `V`, each of
//! dimension 0 or 1. The partition attached to it lists the column sums
//! `Σ_l dim V(k, l)` for `k = 1, 2, ...`; [`Partition::parts`] uses exactly
//! this convention, so part `k` is the height of column `k` of the diagram
//! returned by [`young_cells`]. Reading the diagram by rows instead gives the
//! conjugate partition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive, got {0:?}")]
    NonPositivePart(Vec<i64>),
    #[error("malformed partition {0:?}")]
    Malformed(String),
}

/// A non-increasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into non-increasing order; zero or negative parts are
    /// rejected.
    pub fn new(parts: impl IntoIterator<Item = i64>) -> Result<Self, PartitionError> {
        let raw: Vec<i64> = parts.into_iter().collect();
        if raw.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
            return Err(PartitionError::NonPositivePart(raw));
        }
        let mut parts: Vec<u32> = raw.into_iter().map(|p| p as u32).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// The transpose partition (rows and columns of the diagram swapped).
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|h| self.parts.iter().filter(|&&p| p >= h).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses comma-separated parts, e.g. `2,1`. The empty string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Malformed(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, e.g.
/// `(3), (2,1), (1,1,1)`. `n = 0` yields the single empty partition.
pub fn enumerate(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of every `m <= n_max`, ordered by `m` and then reverse
/// lexicographically.
pub fn enumerate_up_to(n_max: u32) -> Vec<Partition> {
    (0..=n_max).flat_map(enumerate).collect()
}

/// Number of partitions of `n` into exactly `k` parts.
pub fn count_with_parts(n: u32, k: u32) -> u64 {
    let (n, k) = (n as usize, k as usize);
    if k > n {
        return 0;
    }
    // table[m][j] = partitions of m into exactly j parts
    let mut table = vec![vec![0u64; k + 1]; n + 1];
    table[0][0] = 1;
    for m in 1..=n {
        for j in 1..=k.min(m) {
            table[m][j] = table[m - 1][j - 1] + table[m - j][j];
        }
    }
    table[n][k]
}

/// Number of partitions of `n`.
pub fn count(n: u32) -> u64 {
    (0..=n).map(|k| count_with_parts(n, k)).sum()
}

/// Index of the torus Morse function at the fixed point labelled by `p`:
/// `2n - 2 * (number of parts)`.
pub fn morse_index(p: &Partition) -> u32 {
    2 * p.n() - 2 * p.len() as u32
}

/// Even Betti numbers of `Hilb^n(C^2)`: entry `i` is
/// `b_{2i} = #{partitions of n into n - i parts}` for `i = 0..n-1`. Odd
/// Betti numbers vanish.
pub fn betti_c2(n: u32) -> Vec<u64> {
    (0..n).map(|i| count_with_parts(n, n - i)).collect()
}

/// Poincaré polynomial `Σ_i b_{2i} t^{2i}` of `Hilb^n(C^2)`.
///
/// For `n = 0` this is the constant 1 (a point).
pub fn poincare_c2(n: u32) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut coeffs = vec![BigInt::from(0); 2 * n as usize - 1];
    for (i, b) in betti_c2(n).into_iter().enumerate() {
        coeffs[2 * i] = BigInt::from(b);
    }
    Poly::from_coeffs(coeffs)
}

/// A cell `(k, l)` of the weight diagram: `V(k, l)` is one-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub k: u32,
    pub l: u32,
}

/// The cells of the weight diagram for `p`: column `k` (from 1) has height
/// `p.parts()[k - 1]` and holds `(k, 0), (k, 1), ...`. Ordered column by
/// column.
pub fn young_cells(p: &Partition) -> Vec<Cell> {
    p.parts()
        .iter()
        .enumerate()
        .flat_map(|(col, &height)| {
            (0..height).map(move |l| Cell {
                k: col as u32 + 1,
                l,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4).len(), 5);
    }

    #[test]
    fn enumerate_is_reverse_lex_and_valid() {
        for n in 0..=12 {
            let ps = enumerate(n);
            for w in ps.windows(2) {
                assert!(w[0].parts() > w[1].parts());
            }
            for p in &ps {
                assert_eq!(p.n(), n);
                assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
                assert!(p.parts().iter().all(|&x| x >= 1));
            }
        }
    }

    #[test]
    fn count_with_parts_examples() {
        assert_eq!(count_with_parts(3, 2), 1);
        assert_eq!(count_with_parts(6, 3), 3);
        for n in 0..10 {
            assert_eq!(count_with_parts(n, n), 1);
        }
        assert_eq!(count_with_parts(2, 3), 0);
        assert_eq!(count_with_parts(0, 0), 1);
        assert_eq!(count_with_parts(5, 0), 0);
    }

    #[test]
    fn counts_sum_to_enumeration() {
        for n in 0..=30 {
            let total: u64 = (0..=n).map(|k| count_with_parts(n, k)).sum();
            assert_eq!(total, enumerate(n).len() as u64, "n = {n}");
        }
    }

    #[test]
    fn morse_indices() {
        assert_eq!(morse_index(&part(&[1, 1, 1])), 0);
        assert_eq!(morse_index(&part(&[3])), 4);
        assert_eq!(morse_index(&part(&[2, 1])), 2);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_c2(3), vec![1, 1, 1]);
        assert_eq!(betti_c2(1), vec![1]);
        assert_eq!(betti_c2(4), vec![1, 1, 2, 1]);
    }

    #[test]
    fn morse_indices_realize_betti_numbers() {
        for n in 1..=10 {
            let mut hist = vec![0u64; n as usize];
            for p in enumerate(n) {
                let idx = morse_index(&p);
                assert_eq!(idx % 2, 0);
                hist[(idx / 2) as usize] += 1;
            }
            assert_eq!(hist, betti_c2(n));
        }
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_c2(2), Poly::from_i64s(&[1, 0, 1]));
        assert_eq!(poincare_c2(1), Poly::one());
        assert_eq!(poincare_c2(5).total(), BigInt::from(7));
    }

    #[test]
    fn cells() {
        let c = |k, l| Cell { k, l };
        assert_eq!(young_cells(&part(&[2, 1])), vec![c(1, 0), c(1, 1), c(2, 0)]);
        assert_eq!(young_cells(&part(&[1])), vec![c(1, 0)]);
        assert_eq!(young_cells(&part(&[1, 1, 1])), vec![c(1, 0), c(2, 0), c(3, 0)]);
        assert!(young_cells(&Partition::empty()).is_empty());
    }

    #[test]
    fn cells_form_a_diagram() {
        for p in enumerate_up_to(8) {
            let cells = young_cells(&p);
            assert_eq!(cells.len() as u32, p.n());
            // column sums are the parts, hence non-increasing in k
            let mut heights = vec![0u32; p.len()];
            for c in &cells {
                heights[c.k as usize - 1] += 1;
            }
            assert_eq!(heights, p.parts());
            // the number of cells on the row l = 0 is the number of parts
            assert_eq!(cells.iter().filter(|c| c.l == 0).count(), p.len());
        }
    }

    #[test]
    fn parsing_and_conjugate() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("1,2".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[3, 1]).to_string(), "(3,1)");
    }
}
