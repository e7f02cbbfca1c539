//! Exhaustive enumeration by backtracking. Nothing here uses generating
//! functions; the counts are compared against closed forms and array entries.

use crate::error::{Error, Result};

fn cap(what: &str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::OutOfRange(format!("{what}: n = {n} exceeds the enumeration cap {max}")));
    }
    Ok(())
}

pub const DYCK_CAP: usize = 14;
pub const MOTZKIN_CAP: usize = 16;
pub const LATTICE_CAP: usize = 10;
pub const COMPOSITION_CAP: usize = 24;
pub const DERANGEMENT_CAP: usize = 10;
pub const PERMUTATION_CAP: usize = 9;
pub const DESCENT_CAP: usize = 8;

/// Visits every Dyck path of semilength `n` as a word of up (`true`) and
/// down (`false`) steps.
fn each_dyck_path(n: usize, visit: &mut impl FnMut(&[bool])) {
    fn go(n: usize, ups: usize, downs: usize, path: &mut Vec<bool>, visit: &mut impl FnMut(&[bool])) {
        if downs == n {
            visit(path);
            return;
        }
        if ups < n {
            path.push(true);
            go(n, ups + 1, downs, path, visit);
            path.pop();
        }
        if downs < ups {
            path.push(false);
            go(n, ups, downs + 1, path, visit);
            path.pop();
        }
    }
    go(n, 0, 0, &mut Vec::with_capacity(2 * n), visit);
}

pub fn dyck_paths(n: usize) -> Result<u64> {
    cap("dyck_paths", n, DYCK_CAP)?;
    let mut count = 0;
    each_dyck_path(n, &mut |_| count += 1);
    Ok(count)
}

/// Dyck paths of semilength `n` with at least one prime factor (a piece
/// between consecutive returns to the axis) other than `UD` and `UUDD`.
pub fn dyck_paths_with_large_prime(n: usize) -> Result<u64> {
    cap("dyck_paths_with_large_prime", n, DYCK_CAP)?;
    let mut count = 0;
    each_dyck_path(n, &mut |path| {
        let mut height = 0i32;
        let mut start = 0;
        let mut large = false;
        for (i, &up) in path.iter().enumerate() {
            height += if up { 1 } else { -1 };
            if height == 0 {
                let prime = &path[start..=i];
                if prime != [true, false] && prime != [true, true, false, false] {
                    large = true;
                }
                start = i + 1;
            }
        }
        if large {
            count += 1;
        }
    });
    Ok(count)
}

/// Motzkin paths of length `n`. With `allow_flat_at_0 == false`, level steps
/// on the axis are forbidden.
pub fn motzkin_paths(n: usize, allow_flat_at_0: bool) -> Result<u64> {
    cap("motzkin_paths", n, MOTZKIN_CAP)?;
    fn go(remaining: usize, height: usize, flat0: bool) -> u64 {
        if height > remaining {
            return 0;
        }
        if remaining == 0 {
            return 1;
        }
        let mut total = go(remaining - 1, height + 1, flat0);
        if height > 0 {
            total += go(remaining - 1, height - 1, flat0);
        }
        if height > 0 || flat0 {
            total += go(remaining - 1, height, flat0);
        }
        total
    }
    Ok(go(n, 0, allow_flat_at_0))
}

/// Lattice paths from `(0,0)` to `(n,n)` using steps `(1,0)`, `(0,1)`, and
/// `(1,1)` only from a point on the diagonal, with exactly `k` diagonal steps.
pub fn lattice_paths_diag(n: usize, k: usize) -> Result<u64> {
    cap("lattice_paths_diag", n, LATTICE_CAP)?;
    fn go(x: usize, y: usize, diag: usize, n: usize, k: usize) -> u64 {
        if diag > k {
            return 0;
        }
        if x == n && y == n {
            return u64::from(diag == k);
        }
        let mut total = 0;
        if x < n {
            total += go(x + 1, y, diag, n, k);
        }
        if y < n {
            total += go(x, y + 1, diag, n, k);
        }
        if x == y && x < n {
            total += go(x + 1, y + 1, diag + 1, n, k);
        }
        total
    }
    Ok(go(0, 0, 0, n, k))
}

/// Compositions of `n` into `k` parts, each part 1 or 2, where every part 2
/// comes in `c` colours.
pub fn compositions_colored(n: usize, k: usize, c: u64) -> Result<u64> {
    cap("compositions_colored", n, COMPOSITION_CAP)?;
    fn go(rest: usize, parts: usize, c: u64) -> u64 {
        if parts == 0 {
            return u64::from(rest == 0);
        }
        let mut total = 0;
        if rest >= 1 {
            total += go(rest - 1, parts - 1, c);
        }
        if rest >= 2 {
            total += c * go(rest - 2, parts - 1, c);
        }
        total
    }
    Ok(go(n, k, c))
}

/// Visits every weak composition of `total` into `parts` parts.
pub fn each_weak_composition(total: usize, parts: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, parts: usize, acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if parts == 1 {
            acc.push(rest);
            visit(acc);
            acc.pop();
            return;
        }
        for first in 0..=rest {
            acc.push(first);
            go(rest - first, parts - 1, acc, visit);
            acc.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            visit(&[]);
        }
        return;
    }
    go(total, parts, &mut Vec::with_capacity(parts), visit);
}

/// A pattern such as `[3, 2, 4, 1]`, given in one-line notation.
pub type Pattern = [u8];

/// Whether `word` has an occurrence of `pattern` that uses its last letter.
fn occurs_ending_at_last(word: &[usize], pattern: &Pattern) -> bool {
    let m = pattern.len();
    let n = word.len();
    if m == 0 || m > n {
        return m == 0;
    }
    let mut chosen = Vec::with_capacity(m);
    fn pick(word: &[usize], pattern: &Pattern, from: usize, chosen: &mut Vec<usize>) -> bool {
        let m = pattern.len();
        if chosen.len() == m - 1 {
            chosen.push(word[word.len() - 1]);
            let hit =
                (0..m).all(|i| (i + 1..m).all(|j| (chosen[i] < chosen[j]) == (pattern[i] < pattern[j])));
            chosen.pop();
            return hit;
        }
        let need = m - 1 - chosen.len();
        for p in from..word.len() - need {
            chosen.push(word[p]);
            if pick(word, pattern, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    pick(word, pattern, 0, &mut chosen)
}

/// Counts permutations of `0..n` avoiding all `patterns`, optionally only
/// derangements. Prefixes that already contain a pattern are pruned.
fn count_avoiding(n: usize, patterns: &[&Pattern], derangement: bool) -> u64 {
    fn go(
        n: usize,
        patterns: &[&Pattern],
        derangement: bool,
        word: &mut Vec<usize>,
        used: &mut [bool],
    ) -> u64 {
        if word.len() == n {
            return 1;
        }
        let pos = word.len();
        let mut total = 0;
        for v in 0..n {
            if used[v] || (derangement && v == pos) {
                continue;
            }
            word.push(v);
            if !patterns.iter().any(|p| occurs_ending_at_last(word, p)) {
                used[v] = true;
                total += go(n, patterns, derangement, word, used);
                used[v] = false;
            }
            word.pop();
        }
        total
    }
    go(n, patterns, derangement, &mut Vec::with_capacity(n), &mut vec![false; n])
}

pub fn derangements_avoiding(n: usize, patterns: &[&Pattern]) -> Result<u64> {
    cap("derangements_avoiding", n, DERANGEMENT_CAP)?;
    Ok(count_avoiding(n, patterns, true))
}

pub fn permutations_avoiding(n: usize, patterns: &[&Pattern]) -> Result<u64> {
    cap("permutations_avoiding", n, PERMUTATION_CAP)?;
    Ok(count_avoiding(n, patterns, false))
}

/// Number of permutations of `n` letters with exactly `d` descents, for
/// `d = 0..n` (a single entry `[1]` when `n == 0`).
pub fn descent_counts(n: usize) -> Result<Vec<u64>> {
    cap("descent_counts", n, DESCENT_CAP)?;
    fn go(n: usize, word: &mut Vec<usize>, used: &mut [bool], des: usize, out: &mut [u64]) {
        if word.len() == n {
            out[des] += 1;
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let step = word.last().map_or(0, |&last| usize::from(last > v));
            used[v] = true;
            word.push(v);
            go(n, word, used, des + step, out);
            word.pop();
            used[v] = false;
        }
    }
    let mut out = vec![0; n.max(1)];
    go(n, &mut Vec::with_capacity(n), &mut vec![false; n], 0, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(dyck_paths(4).unwrap(), 14);
        assert_eq!(dyck_paths(0).unwrap(), 1);
        assert_eq!(motzkin_paths(4, false).unwrap(), 3);
        assert_eq!(motzkin_paths(4, true).unwrap(), 9);
        assert_eq!(lattice_paths_diag(2, 0).unwrap(), 6);
        let row5: Vec<u64> = (0..=5).map(|k| lattice_paths_diag(5, k).unwrap()).collect();
        assert_eq!(row5, vec![252, 256, 140, 48, 10, 1]);
        assert_eq!(compositions_colored(4, 3, 2).unwrap(), 6);
        assert_eq!(descent_counts(4).unwrap(), vec![1, 11, 11, 1]);
        assert_eq!(descent_counts(0).unwrap(), vec![1]);
    }

    #[test]
    fn pattern_counts() {
        let pats: [&Pattern; 3] = [&[3, 2, 4, 1], &[3, 4, 2, 1], &[4, 3, 2, 1]];
        assert_eq!(permutations_avoiding(5, &pats).unwrap(), 79);
        assert_eq!(permutations_avoiding(4, &[&[1, 2, 3]]).unwrap(), 14);
        let jac: Vec<u64> =
            (2..=7).map(|n| derangements_avoiding(n, &[&[2, 3, 1], &[1, 3, 2]]).unwrap()).collect();
        assert_eq!(jac, vec![1, 1, 3, 5, 11, 21]);
    }

    #[test]
    fn weak_compositions() {
        let mut seen = Vec::new();
        each_weak_composition(2, 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let mut count = 0;
        each_weak_composition(0, 0, &mut |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(dyck_paths(DYCK_CAP + 1).is_err());
        assert!(permutations_avoiding(PERMUTATION_CAP + 1, &[]).is_err());
    }
}
