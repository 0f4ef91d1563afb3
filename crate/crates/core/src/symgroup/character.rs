use std::collections::HashMap;

use crate::error::{Error, Result};

use super::diagram::{partitions, YoungDiagram};

/// `χ^[λ]` on the conjugacy class with the given cycle type, by the
/// Murnaghan–Nakayama rule.
pub fn character(shape: &YoungDiagram, cycle_type: &YoungDiagram) -> Result<i64> {
    if shape.size() != cycle_type.size() {
        return Err(Error::InvalidArgument(format!(
            "{shape} and {cycle_type} partition different integers"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rule(shape.parts(), cycle_type.parts(), &mut memo))
}

/// Character table of `S_n` restricted to shapes with at most `max_rows`
/// rows. Rows follow [`partitions`]`(n, max_rows)`, columns follow
/// [`partitions`]`(n, n)`.
pub fn character_table(n: usize, max_rows: usize) -> Vec<(YoungDiagram, Vec<i64>)> {
    let classes = partitions(n, n);
    let mut memo = HashMap::new();
    partitions(n, max_rows)
        .into_iter()
        .map(|shape| {
            let row = classes.iter().map(|c| mn_rule(shape.parts(), c.parts(), &mut memo)).collect();
            (shape, row)
        })
        .collect()
}

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

// Strips are removed for the largest cycle first; the beta-set
// β_i = λ_i + (k - 1 - i) turns "remove an r-rim hook" into "move one bead
// from β to β - r", with sign (-1)^(beads jumped over).
fn mn_rule(shape: &[usize], cycles: &[usize], memo: &mut Memo) -> i64 {
    if cycles.is_empty() {
        return i64::from(shape.is_empty());
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = cycles[0];
    let rest = &cycles[1..];
    let k = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (k - 1 - i)).collect();

    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (k - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_rule(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}
