//! Small counting helpers shared by the enumerators.

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of points of PG(k-1, q).
pub fn projective_count(q: u64, k: u32) -> Option<u64> {
    let qk = checked_pow(q, k)?;
    Some((qk - 1) / (q - 1))
}

/// Lexicographic walk over the `k`-subsets of `0..n`.
///
/// ```
/// use concat_blocking_core::combin::Combinations;
/// let mut c = Combinations::new(4, 2);
/// let mut seen = Vec::new();
/// while let Some(s) = c.next_subset() {
///     seen.push(s.to_vec());
/// }
/// assert_eq!(seen.len(), 6);
/// assert_eq!(seen[0], vec![0, 1]);
/// assert_eq!(seen[5], vec![2, 3]);
/// ```
pub struct Combinations {
    n: usize,
    idx: alloc::vec::Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(13, 9), 715);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(40, 12), 5_586_853_480);
    }

    #[test]
    fn combination_count_matches_binomial() {
        for n in 0..9 {
            for k in 0..=n {
                let mut c = Combinations::new(n, k);
                let mut count = 0u128;
                while c.next_subset().is_some() {
                    count += 1;
                }
                assert_eq!(count, binomial(n as u64, k as u64), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn projective_counts() {
        assert_eq!(projective_count(2, 3), Some(7));
        assert_eq!(projective_count(4, 3), Some(21));
        assert_eq!(projective_count(4, 5), Some(341));
    }
}
