//! Multiset enumeration for sums over compositions with symmetric summands.
//!
//! A sum over ordered tuples `(i_1, ..., i_k)` whose summand only depends on
//! the multiset `{i_1, ..., i_k}` is evaluated by visiting each multiset once
//! and weighting it with its number of orderings, `k! / prod(mult!)`.

/// Every non-increasing `k`-tuple `i_1 >= ... >= i_k >= min_index` with
/// `sum size(i_j) = target`. `size` must be strictly increasing.
pub fn multisets(k: usize, target: u64, min_index: u64, size: impl Fn(u64) -> u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if k == 0 {
        if target == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let min_size = size(min_index);
    let mut max_index = min_index;
    while size(max_index + 1) <= target {
        max_index += 1;
    }
    let mut buf = Vec::with_capacity(k);
    rec(k, target, min_index, max_index, min_size, &size, &mut buf, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    slots: usize,
    rest: u64,
    min_index: u64,
    max_index: u64,
    min_size: u64,
    size: &impl Fn(u64) -> u64,
    buf: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(buf.clone());
        }
        return;
    }
    let slots_u = slots as u64;
    if rest < min_size * slots_u {
        return;
    }
    for i in (min_index..=max_index).rev() {
        let s = size(i);
        if s > rest {
            continue;
        }
        // Remaining parts are at most s each.
        if s * slots_u < rest {
            break;
        }
        if rest - s < min_size * (slots_u - 1) {
            continue;
        }
        buf.push(i);
        rec(slots - 1, rest - s, min_index, i, min_size, size, buf, out);
        buf.pop();
    }
}

/// Multiplicities of the distinct values of a sorted multiset.
pub fn multiplicities(ms: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut prev = None;
    for &x in ms {
        if prev == Some(x) {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
            prev = Some(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Ordered tuples by brute force, for comparison.
    fn ordered(k: usize, target: u64, min: u64, max: u64, size: &dyn Fn(u64) -> u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (min..=max).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out.retain(|t| t.iter().map(|&i| size(i)).sum::<u64>() == target);
        out
    }

    #[test]
    fn powers_of_three_example() {
        let size = |i: u64| 3u64.pow(i as u32);
        let found: Vec<(usize, Vec<Vec<u64>>)> = (1..=8)
            .map(|k| (k, multisets(k, 8 + k as u64, 1, size)))
            .filter(|(_, m)| !m.is_empty())
            .collect();
        assert_eq!(found, vec![(1, vec![vec![2]]), (4, vec![vec![1, 1, 1, 1]])]);
    }

    #[test]
    fn weighted_counts_match_ordered_enumeration() {
        let size = |i: u64| i;
        for k in 1..=4usize {
            for target in 0..=9u64 {
                for min in 0..=2u64 {
                    let brute = ordered(k, target, min, target.max(min), &size).len() as u64;
                    let weighted: u64 = multisets(k, target, min, size)
                        .iter()
                        .map(|m| {
                            let mults = multiplicities(m);
                            let fact = |n: u64| (1..=n).product::<u64>();
                            fact(k as u64) / mults.iter().map(|&c| fact(c)).product::<u64>()
                        })
                        .sum();
                    assert_eq!(weighted, brute, "k={k} target={target} min={min}");
                }
            }
        }
    }

    #[test]
    fn multiplicity_runs() {
        assert_eq!(multiplicities(&[3, 3, 1, 1, 1, 0]), vec![2, 3, 1]);
        assert!(multiplicities(&[]).is_empty());
    }
}
