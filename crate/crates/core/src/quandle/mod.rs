//! Finite quandles as validated operation tables.
//!
//! A [`FiniteQuandle`] of order `n` stores the table `x_i * x_j` row-major,
//! together with the table of left inverses `x ∗̄ y` (the unique `z` with
//! `z * y = x`). Values are immutable once validated.

use std::fmt;

use thiserror::Error;

mod io;
mod iso;
mod props;

pub use io::{parse_matrix_text, quandle_from_json, quandle_to_json, write_matrix_text, QuandleJson};
pub(crate) use iso::IsoSearch;
pub use iso::{are_isomorphic, canonical_table, fingerprint, Fingerprint, CANONICAL_MAX_ORDER};
pub use props::PropertyReport;

/// Axiom violations and shape errors reported by [`validate_table`].
///
/// All indices carried by the variants are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("quandle table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is outside 1..={n}")]
    OutOfRange { row: usize, col: usize, value: i64, n: usize },
    #[error("Q1 violated: {i} * {i} != {i}")]
    Q1Violation { i: usize },
    #[error("Q2 violated: column {column} takes the value {value} twice")]
    Q2Violation { column: usize, value: usize },
    #[error("Q3 violated: ({i} * {j}) * {k} != ({i} * {k}) * ({j} * {k})")]
    Q3Violation { i: usize, j: usize, k: usize },
}

impl QuandleError {
    /// The axiom label (`Q1`, `Q2`, `Q3`) for axiom violations.
    pub fn axiom(&self) -> Option<&'static str> {
        match self {
            QuandleError::Q1Violation { .. } => Some("Q1"),
            QuandleError::Q2Violation { .. } => Some("Q2"),
            QuandleError::Q3Violation { .. } => Some("Q3"),
            _ => None,
        }
    }
}

/// A finite quandle given by its operation table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<u32>,
    left_inv: Vec<u32>,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle")
            .field("n", &self.n)
            .field("table", &self.to_one_based())
            .finish()
    }
}

/// Validates a 1-based operation table and builds the quandle.
///
/// Checks, in order: shape, entry range, Q1, Q2, Q3. The first failure is
/// returned with its witness.
pub fn validate_table(rows: &[Vec<i64>]) -> Result<FiniteQuandle, QuandleError> {
    let n = rows.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::NotSquare { row: i + 1, len: row.len(), expected: n });
        }
        for (j, &v) in row.iter().enumerate() {
            if v < 1 || v > n as i64 {
                return Err(QuandleError::OutOfRange { row: i + 1, col: j + 1, value: v, n });
            }
            table.push((v - 1) as u32);
        }
    }
    FiniteQuandle::from_table(n, table)
}

impl FiniteQuandle {
    /// Builds a quandle from a 0-based row-major table, checking Q1–Q3.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        assert_eq!(table.len(), n * n, "table must have n*n entries");
        if let Some(pos) = table.iter().position(|&v| v as usize >= n) {
            return Err(QuandleError::OutOfRange {
                row: pos / n + 1,
                col: pos % n + 1,
                value: table[pos] as i64 + 1,
                n,
            });
        }
        for i in 0..n {
            if table[i * n + i] as usize != i {
                return Err(QuandleError::Q1Violation { i: i + 1 });
            }
        }
        let mut left_inv = vec![u32::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if left_inv[x * n + j] != u32::MAX {
                    return Err(QuandleError::Q2Violation { column: j + 1, value: x + 1 });
                }
                left_inv[x * n + j] = i as u32;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j] as usize;
                for k in 0..n {
                    let lhs = table[ij * n + k];
                    let ik = table[i * n + k] as usize;
                    let jk = table[j * n + k] as usize;
                    if lhs != table[ik * n + jk] {
                        return Err(QuandleError::Q3Violation { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(FiniteQuandle { n, table, left_inv })
    }

    /// Builds a quandle from a closure `op(i, j)` on 0-based indices.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(op(i, j) as u32);
            }
        }
        Self::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `i * j` on 0-based indices.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j] as usize
    }

    /// `x ∗̄ y`: the unique `z` with `z * y = x`.
    #[inline]
    pub fn left_inverse(&self, x: usize, y: usize) -> usize {
        self.left_inv[x * self.n + y] as usize
    }

    /// The raw 0-based row-major table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.table[i * self.n..(i + 1) * self.n]
    }

    /// The right translation `S_j : x ↦ x * j` as a 0-based image array.
    pub fn right_translation(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.table[i * self.n + j]).collect()
    }

    /// The table as 1-based rows, matching the printed matrix convention.
    pub fn to_one_based(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.n).map(|r| r.iter().map(|&v| v + 1).collect()).collect()
    }

    /// Relabels elements by the bijection `g` (0-based), returning the table
    /// `T'` with `T'[g(x)][g(y)] = g(T[x][y])`.
    pub fn relabel(&self, g: &[u32]) -> FiniteQuandle {
        let n = self.n;
        let mut table = vec![0u32; n * n];
        let mut left_inv = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let gx = g[x] as usize;
                let gy = g[y] as usize;
                table[gx * n + gy] = g[self.op(x, y)];
                left_inv[gx * n + gy] = g[self.left_inverse(x, y)];
            }
        }
        FiniteQuandle { n, table, left_inv }
    }

    /// Checks whether the 0-based map `g` (any function, not necessarily a
    /// bijection) into `target` is a quandle homomorphism.
    pub fn is_homomorphism_to(&self, target: &FiniteQuandle, g: &[u32]) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| g[self.op(x, y)] as usize == target.op(g[x] as usize, g[y] as usize))
        })
    }
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.n.to_string()).len();
        for row in self.table.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|&v| format!("{:>width$}", v + 1)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The dihedral quandle `R_n`: `ℤ/n` with `a * b = 2b − a`, element `k`
/// labelled `k + 1`.
pub fn dihedral(n: usize) -> FiniteQuandle {
    assert!(n >= 1, "dihedral quandle needs n >= 1");
    FiniteQuandle::from_fn(n, |a, b| (2 * b + n - a) % n).expect("dihedral tables are quandles")
}

/// The Takasaki quandle of `ℤ/m1 × … × ℤ/mk` with `a * b = 2b − a`.
///
/// Elements are indexed in mixed radix with the first modulus most
/// significant.
pub fn takasaki(moduli: &[usize]) -> FiniteQuandle {
    assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
    let n: usize = moduli.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0; moduli.len()];
        for (d, &m) in digits.iter_mut().zip(moduli).rev() {
            *d = x % m;
            x /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d);
    FiniteQuandle::from_fn(n, |a, b| {
        let da = decode(a);
        let db = decode(b);
        let dc: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(moduli)
            .map(|((&x, &y), &m)| (2 * y + m - x % m) % m)
            .collect();
        encode(&dc)
    })
    .expect("Takasaki tables are quandles")
}

/// The trivial quandle of order `n`: `x * y = x`.
pub fn trivial(n: usize) -> FiniteQuandle {
    assert!(n >= 1, "trivial quandle needs n >= 1");
    FiniteQuandle::from_fn(n, |a, _| a).expect("trivial tables are quandles")
}

/// The disjoint union `Q1 ⊔ Q2`: each block keeps its own operation and
/// elements of different blocks act trivially on each other.
pub fn disjoint_union(q1: &FiniteQuandle, q2: &FiniteQuandle) -> FiniteQuandle {
    disjoint_union_all(&[q1, q2])
}

/// Disjoint union of any number of quandles, blocks in the given order.
pub fn disjoint_union_all(parts: &[&FiniteQuandle]) -> FiniteQuandle {
    let n: usize = parts.iter().map(|q| q.order()).sum();
    let mut block = Vec::with_capacity(n);
    let mut offset = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for (b, q) in parts.iter().enumerate() {
        offset.push(acc);
        block.extend(std::iter::repeat_n(b, q.order()));
        acc += q.order();
    }
    FiniteQuandle::from_fn(n, |x, y| {
        let (bx, by) = (block[x], block[y]);
        if bx == by {
            let o = offset[bx];
            parts[bx].op(x - o, y - o) + o
        } else {
            x
        }
    })
    .expect("disjoint unions of quandles are quandles")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<i64>> {
        r.iter().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn abelian_four_element_validates() {
        let q = validate_table(&rows(&[&[1, 3, 4, 2], &[4, 2, 1, 3], &[2, 4, 3, 1], &[3, 1, 2, 4]])).unwrap();
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn rigid3_quandle_validates() {
        validate_table(&rows(&[&[1, 3, 1], &[2, 2, 2], &[3, 1, 3]])).unwrap();
    }

    #[test]
    fn broken_diagonal_is_q1() {
        let err = validate_table(&rows(&[&[2, 1], &[1, 2]])).unwrap_err();
        assert_eq!(err, QuandleError::Q1Violation { i: 1 });
        assert_eq!(err.axiom(), Some("Q1"));
    }

    #[test]
    fn q2_and_q3_witnesses() {
        let err = validate_table(&rows(&[&[1, 1], &[1, 2]])).unwrap_err();
        assert_eq!(err, QuandleError::Q2Violation { column: 1, value: 1 });
        // Columns are permutations and the diagonal is fixed, but right
        // distributivity fails.
        let err = validate_table(&rows(&[&[1, 3, 2], &[2, 2, 1], &[3, 1, 3]])).unwrap_err();
        assert_eq!(err.axiom(), Some("Q3"));
    }

    #[test]
    fn shape_and_range_errors() {
        assert_eq!(validate_table(&[]).unwrap_err(), QuandleError::Empty);
        assert!(matches!(
            validate_table(&rows(&[&[1, 2], &[2]])).unwrap_err(),
            QuandleError::NotSquare { row: 2, .. }
        ));
        assert!(matches!(
            validate_table(&rows(&[&[1, 3], &[1, 2]])).unwrap_err(),
            QuandleError::OutOfRange { row: 1, col: 2, value: 3, .. }
        ));
    }

    #[test]
    fn constructors() {
        assert_eq!(dihedral(3).to_one_based(), vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]);
        assert_eq!(trivial(2).to_one_based(), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(takasaki(&[7]), dihedral(7));
        assert_eq!(takasaki(&[3, 3]).order(), 9);
    }

    #[test]
    fn left_inverse_examples() {
        let d3 = dihedral(3);
        assert_eq!(d3.left_inverse(0, 1), 2);
        for x in 0..3 {
            assert_eq!(d3.left_inverse(x, x), x);
        }
        // scan of column 1 in R_5: 5 * 1 = 2
        assert_eq!(dihedral(5).left_inverse(1, 0), 4);
    }

    #[test]
    fn disjoint_union_sizes() {
        assert_eq!(disjoint_union(&trivial(1), &trivial(1)), trivial(2));
        let u = disjoint_union(&dihedral(3), &dihedral(5));
        assert_eq!(u.order(), 8);
        assert_eq!(u.op(0, 4), 0);
        assert_eq!(u.op(4, 3), 3 + dihedral(5).op(1, 0));
    }
}
