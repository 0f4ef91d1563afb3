use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `[λ_1, ..., λ_k]` of `n`, drawn as left-justified rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    /// Parts must be positive and nonincreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("a Young diagram needs at least one row".into()));
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a nonincreasing list of positive parts")));
        }
        Ok(YoungDiagram { parts })
    }

    /// Sorts and drops zero parts; `None` when nothing remains.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Option<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        (!parts.is_empty()).then_some(YoungDiagram { parts })
    }

    pub fn row(n: usize) -> Self {
        YoungDiagram { parts: vec![n] }
    }

    pub fn column(n: usize) -> Self {
        YoungDiagram { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `h([λ])`, the number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// The number of cells `n`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let parts = (0..self.parts[0]).map(|j| self.parts.iter().take_while(|&&p| p > j).count()).collect();
        YoungDiagram { parts }
    }

    /// Hook length of the cell in row `i`, column `j` (both 0-based).
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().take_while(|&&p| p > j).count();
        arm + leg + 1
    }

    /// `f^[λ]`: the number of standard tableaux, by the hook length formula.
    pub fn standard_tableaux_count(&self) -> u128 {
        let n = self.size() as u128;
        let mut numer: Vec<u128> = (1..=n).collect();
        // divide out hook lengths one at a time to keep intermediates small
        let mut result: u128 = 1;
        let mut hooks: Vec<u128> = Vec::with_capacity(self.size());
        for (i, &len) in self.parts.iter().enumerate() {
            hooks.extend((0..len).map(|j| self.hook_length(i, j) as u128));
        }
        for h in hooks {
            let mut h = h;
            for x in numer.iter_mut() {
                let g = gcd(*x, h);
                *x /= g;
                h /= g;
                if h == 1 {
                    break;
                }
            }
            debug_assert_eq!(h, 1, "hook product must divide n!");
        }
        for x in numer {
            result *= x;
        }
        result
    }

    /// Cells `(row, col)` that can be removed leaving a valid diagram.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        (0..self.rows())
            .filter(|&i| i + 1 == self.rows() || self.parts[i + 1] < self.parts[i])
            .map(|i| (i, self.parts[i] - 1))
            .collect()
    }

    fn remove_cell(&self, row: usize) -> Option<YoungDiagram> {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        YoungDiagram::from_unsorted(parts)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(parts)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Vec<usize> {
        d.parts
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n` with at most `max_rows` parts, in descending
/// lexicographic order.
pub fn partitions(n: usize, max_rows: usize) -> Vec<YoungDiagram> {
    fn extend(remaining: usize, max_part: usize, rows_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram { parts: prefix.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            extend(remaining - part, part, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(n, n, max_rows, &mut Vec::new(), &mut out);
    }
    out
}

/// A filling of a Young diagram with `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungTableau {
    diagram: YoungDiagram,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// The row lengths must form a diagram and the entries must be a
    /// permutation of `1..=n`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let diagram = YoungDiagram::new(rows.iter().map(Vec::len).collect())?;
        let n = diagram.size();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!("filling is not a permutation of 1..={n}")));
            }
        }
        Ok(YoungTableau { diagram, rows })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries strictly increase along every row and every column.
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below));
        rows_ok && cols_ok
    }
}

/// Every standard tableau of shape `d`, built by placing the largest entry in
/// each removable corner.
pub fn standard_tableaux(d: &YoungDiagram) -> Vec<YoungTableau> {
    fn fill(d: &YoungDiagram) -> Vec<Vec<Vec<usize>>> {
        let n = d.size();
        if n == 1 {
            return vec![vec![vec![1]]];
        }
        let mut out = Vec::new();
        for (row, _) in d.corners() {
            let smaller = d.remove_cell(row).expect("n > 1 leaves a cell");
            for mut rows in fill(&smaller) {
                if row == rows.len() {
                    rows.push(Vec::new());
                }
                rows[row].push(n);
                out.push(rows);
            }
        }
        out
    }
    fill(d)
        .into_iter()
        .map(|rows| YoungTableau { diagram: d.clone(), rows })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn d(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(3, 3), vec![d(&[3]), d(&[2, 1]), d(&[1, 1, 1])]);
        assert_eq!(partitions(4, 4).len(), 5);
        assert_eq!(partitions(3, 2), vec![d(&[3]), d(&[2, 1])]);
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn hook_length_examples() {
        assert_eq!(YoungDiagram::row(6).standard_tableaux_count(), 1);
        assert_eq!(YoungDiagram::column(6).standard_tableaux_count(), 1);
        assert_eq!(d(&[2, 1]).standard_tableaux_count(), 2);
        assert_eq!(d(&[3, 2]).standard_tableaux_count(), 5);
        assert_eq!(d(&[4, 3, 2, 1]).standard_tableaux_count(), 768);
    }

    /// Oracle: every permutation of `1..=n` poured into the shape row by row,
    /// keeping the standard ones.
    fn brute_force_standard_count(d: &YoungDiagram) -> usize {
        let n = d.size();
        (1..=n)
            .permutations(n)
            .filter(|perm| {
                let mut it = perm.iter().copied();
                let rows: Vec<Vec<usize>> = d.parts().iter().map(|&len| it.by_ref().take(len).collect()).collect();
                YoungTableau::new(rows).unwrap().is_standard()
            })
            .count()
    }

    #[test]
    fn hook_formula_matches_brute_force_up_to_six() {
        for n in 1..=6 {
            for diagram in partitions(n, n) {
                let expected = brute_force_standard_count(&diagram);
                assert_eq!(diagram.standard_tableaux_count() as usize, expected, "{diagram}");
                let generated = standard_tableaux(&diagram);
                assert_eq!(generated.len(), expected, "{diagram}");
                assert!(generated.iter().all(YoungTableau::is_standard));
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 1..=8usize {
            let total: u128 = partitions(n, n).iter().map(|p| p.standard_tableaux_count().pow(2)).sum();
            assert_eq!(total, (1..=n as u128).product());
        }
    }

    #[test]
    fn tableau_validation() {
        assert!(YoungTableau::new(vec![vec![1, 2], vec![3]]).unwrap().is_standard());
        assert!(YoungTableau::new(vec![vec![1, 3], vec![2]]).unwrap().is_standard());
        assert!(!YoungTableau::new(vec![vec![2, 1], vec![3]]).unwrap().is_standard());
        assert!(!YoungTableau::new(vec![vec![1, 2], vec![0]]).is_ok());
        assert!(YoungTableau::new(vec![vec![1], vec![2, 3]]).is_err());
    }

    #[test]
    fn conjugate_and_validation() {
        assert_eq!(d(&[3, 1]).conjugate(), d(&[2, 1, 1]));
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(d(&[2, 1]).to_string(), "[2,1]");
    }
}
