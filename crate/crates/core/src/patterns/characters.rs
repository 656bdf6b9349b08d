//! Irreducible characters of the symmetric group by the Murnaghan-Nakayama rule.

use super::partition::Partition;

/// `χ^λ(ρ)` where `ρ` is the cycle type of the argument.
pub fn character(lambda: &Partition, rho: &[usize]) -> i64 {
    let l = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut rho: Vec<usize> = rho.iter().copied().filter(|&r| r > 0).collect();
    rho.sort_unstable_by(|a, b| b.cmp(a));
    mn(beta, &rho)
}

/// Removing a rim hook of length `r` moves one bead of the beta-set down by `r`;
/// the sign counts the beads jumped over.
fn mn(beta: Vec<usize>, rho: &[usize]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else { return 1 };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.clone();
        next[i] = b - r;
        let v = mn(next, rest);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    total
}

/// Cycle type of a permutation given as an image array.
pub fn cycle_type(sigma: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for s in 0..sigma.len() {
        if !seen[s] {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = sigma[x];
                len += 1;
            }
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let tri = Partition(vec![3]);
        let hook = Partition(vec![2, 1]);
        let sign = Partition(vec![1, 1, 1]);
        assert_eq!(character(&hook, &[1, 1, 1]), 2);
        assert_eq!(character(&hook, &[2, 1]), 0);
        assert_eq!(character(&hook, &[3]), -1);
        assert_eq!(character(&sign, &[2, 1]), -1);
        assert_eq!(character(&tri, &[3]), 1);
    }

    #[test]
    fn dimensions_square_sum() {
        let n = 6;
        let total: i64 = Partition::all(n).iter().map(|l| character(l, &vec![1; n]).pow(2)).sum();
        assert_eq!(total, 720);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(cycle_type(&[1, 0, 3, 4, 2]), vec![3, 2]);
    }
}
