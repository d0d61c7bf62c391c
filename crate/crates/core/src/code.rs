//! Linear codes given by a full-rank generator matrix.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::{guard, Error, Result};
use crate::geometry::normalized;
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::ENUMERATION_LIMIT;

/// Largest syndrome space the coset search will walk.
pub const COSET_LIMIT: u64 = 1 << 28;

/// Number of codewords of each weight, indexed by weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `A_i`, zero past the length.
    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Minimum positive weight `d`, `None` for the zero code.
    pub fn min_weight(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|i| i + 1)
    }

    /// Maximum weight `w`.
    pub fn max_weight(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// `(weight, count)` for every weight that occurs.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegeneracyFlags {
    pub projective: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    gen: Matrix,
    weights: Option<WeightDistribution>,
    mds: bool,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gen == other.gen
    }
}

impl LinearCode {
    /// Validates entries and rank.
    pub fn new(field: Arc<Field>, gen: Matrix) -> Result<Self> {
        if gen.rows() == 0 {
            return Err(Error::BadDimensions("a code needs at least one generator row"));
        }
        if gen.rows() > gen.cols() {
            return Err(Error::BadDimensions("more generator rows than columns"));
        }
        if let Some(&bad) = gen.as_slice().iter().find(|&&v| !field.contains(v as u64)) {
            return Err(Error::ValueOutOfRange { value: bad as u64, order: field.order() });
        }
        let rank = gen.rank(&field);
        if rank < gen.rows() {
            return Err(Error::RankDeficient { rank, rows: gen.rows() });
        }
        Ok(LinearCode { field, gen, weights: None, mds: false })
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u32>]) -> Result<Self> {
        LinearCode::new(field.clone(), Matrix::from_rows(rows))
    }

    /// Marks the code as MDS; only constructors that guarantee it call this.
    pub(crate) fn assume_mds(mut self) -> Self {
        self.mds = true;
        self
    }

    /// True when the constructor guarantees `d = n - k + 1`.
    pub fn is_known_mds(&self) -> bool {
        self.mds
    }

    /// Enumerates the weight distribution once and keeps it.
    pub fn with_cached_weights(mut self) -> Result<Self> {
        if self.weights.is_none() {
            self.weights = Some(self.compute_weights()?);
        }
        Ok(self)
    }

    pub fn cached_weights(&self) -> Option<&WeightDistribution> {
        self.weights.as_ref()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Alphabet size.
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.q() as u128).saturating_pow(self.k() as u32)
    }

    /// Message with integer encoding `index` (base-q digits, least significant first).
    pub fn message(&self, mut index: u64) -> Vec<u32> {
        let q = self.q();
        (0..self.k())
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect()
    }

    pub fn message_index(&self, msg: &[u32]) -> u64 {
        msg.iter().rev().fold(0u64, |acc, &d| acc * self.q() + d as u64)
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        self.gen.vec_mul(&self.field, msg)
    }

    pub(crate) fn enumeration_guard(&self, limit: u64) -> Result<u64> {
        let size = self.size();
        guard("codeword enumeration", size, limit as u128)?;
        Ok(size as u64)
    }

    /// Visits every codeword in increasing message order.
    ///
    /// The closure receives the message index and the codeword; returning
    /// `ControlFlow::Break` stops the walk.
    pub fn for_each_codeword<F>(&self, mut visit: F) -> Result<()>
    where
        F: FnMut(u64, &[u32]) -> ControlFlow<()>,
    {
        let count = self.enumeration_guard(ENUMERATION_LIMIT)?;
        let f = &*self.field;
        let q = self.q() as usize;
        let (k, n) = (self.k(), self.n());
        // delta[(j*q + a)*n ..] = (succ(a) - a) * row_j, where succ wraps q-1 -> 0
        let mut delta = vec![0u32; k * q * n];
        for j in 0..k {
            for a in 0..q {
                let step = f.sub(((a + 1) % q) as u32, a as u32);
                let base = (j * q + a) * n;
                for (i, &g) in self.gen.row(j).iter().enumerate() {
                    delta[base + i] = f.mul(step, g);
                }
            }
        }
        let mut digits = vec![0usize; k];
        let mut cw = vec![0u32; n];
        for idx in 0..count {
            if visit(idx, &cw).is_break() {
                return Ok(());
            }
            for j in 0..k {
                let a = digits[j];
                let d = &delta[(j * q + a) * n..(j * q + a + 1) * n];
                for (c, &x) in cw.iter_mut().zip(d) {
                    *c = f.add(*c, x);
                }
                digits[j] = (a + 1) % q;
                if digits[j] != 0 {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Exact weight distribution by enumerating all `q^k` codewords.
    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        match &self.weights {
            Some(w) => Ok(w.clone()),
            None => self.compute_weights(),
        }
    }

    fn compute_weights(&self) -> Result<WeightDistribution> {
        let count = self.enumeration_guard(ENUMERATION_LIMIT)?;
        let n = self.n();
        let mut counts = vec![0u64; n + 1];
        if self.q() == 2 {
            // Gray-code walk over packed rows.
            let words = n.div_ceil(64);
            let rows: Vec<Vec<u64>> = (0..self.k()).map(|j| pack_bits(self.gen.row(j), words)).collect();
            let mut cw = vec![0u64; words];
            counts[0] += 1;
            for i in 1..count {
                let row = &rows[i.trailing_zeros() as usize];
                for (c, r) in cw.iter_mut().zip(row) {
                    *c ^= r;
                }
                counts[cw.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
            }
        } else {
            self.for_each_codeword(|_, cw| {
                counts[cw.iter().filter(|&&x| x != 0).count()] += 1;
                ControlFlow::Continue(())
            })?;
        }
        Ok(WeightDistribution { counts })
    }

    pub fn min_distance(&self) -> Result<usize> {
        Ok(self.weight_distribution()?.min_weight().unwrap_or(0))
    }

    pub fn max_weight(&self) -> Result<usize> {
        Ok(self.weight_distribution()?.max_weight())
    }

    pub fn degeneracy_flags(&self) -> DegeneracyFlags {
        let cols: Vec<Vec<u32>> = (0..self.n()).map(|j| self.gen.column(j)).collect();
        let nondegenerate = cols.iter().all(|c| c.iter().any(|&x| x != 0));
        let mut normal: Vec<Vec<u32>> = cols
            .iter()
            .map(|c| normalized(&self.field, c).unwrap_or_else(|| c.clone()))
            .collect();
        normal.sort_unstable();
        let projective = normal.windows(2).all(|w| w[0] != w[1]);
        DegeneracyFlags { projective, nondegenerate }
    }

    /// A generator matrix of the Euclidean dual.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.k() == self.n() {
            return Err(Error::BadParams("the dual of the full space is the zero code"));
        }
        LinearCode::new(self.field.clone(), self.gen.nullspace(&self.field))
    }

    /// Largest coset-leader weight, found by a breadth-first walk over syndromes.
    pub fn covering_radius(&self) -> Result<usize> {
        if self.k() == self.n() {
            return Ok(0);
        }
        let f = &*self.field;
        let q = self.q();
        let h = self.gen.nullspace(f);
        let r = h.rows();
        let space = (q as u128).saturating_pow(r as u32);
        guard("syndrome space", space, COSET_LIMIT as u128)?;
        let space = space as usize;
        let columns: Vec<u64> = (0..self.n())
            .flat_map(|j| {
                let col = h.column(j);
                f.elements()
                    .skip(1)
                    .map(move |a| encode_vec(q, col.iter().map(|&x| f.mul(a, x))))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut dist = vec![u8::MAX; space];
        dist[0] = 0;
        let mut frontier = vec![0u64];
        let mut radius = 0usize;
        let mut seen = 1usize;
        while !frontier.is_empty() && seen < space {
            let mut next = Vec::new();
            for &s in &frontier {
                for &c in &columns {
                    let t = add_encoded(f, q, r, s, c);
                    if dist[t as usize] == u8::MAX {
                        dist[t as usize] = (radius + 1) as u8;
                        next.push(t);
                        seen += 1;
                    }
                }
            }
            radius += 1;
            frontier = next;
        }
        Ok(radius)
    }
}

pub(crate) fn pack_bits(row: &[u32], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, &b) in row.iter().enumerate() {
        if b != 0 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub(crate) fn encode_vec(q: u64, v: impl DoubleEndedIterator<Item = u32>) -> u64 {
    v.rev().fold(0u64, |acc, d| acc * q + d as u64)
}

fn add_encoded(f: &Field, q: u64, len: usize, a: u64, b: u64) -> u64 {
    if q == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..len {
        out += f.add((a % q) as u32, (b % q) as u32) as u64 * place;
        a /= q;
        b /= q;
        place *= q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    fn gf(p: u64, m: u32) -> Arc<Field> {
        Arc::new(Field::gf(p, m).unwrap())
    }

    /// Brute-force covering radius: max over all vectors of the distance to the code.
    fn covering_radius_oracle(c: &LinearCode) -> usize {
        let mut words = Vec::new();
        c.for_each_codeword(|_, cw| {
            words.push(cw.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        let q = c.q();
        let n = c.n();
        let mut worst = 0;
        for idx in 0..q.pow(n as u32) {
            let mut x = idx;
            let v: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (x % q) as u32;
                    x /= q;
                    d
                })
                .collect();
            let best = words
                .iter()
                .map(|w| w.iter().zip(&v).filter(|(a, b)| a != b).count())
                .min()
                .unwrap();
            worst = worst.max(best);
        }
        worst
    }

    #[test]
    fn simplex_22_distribution() {
        let f = gf(2, 1);
        let c = LinearCode::from_rows(&f, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let wd = c.weight_distribution().unwrap();
        assert_eq!(wd.counts(), &[1, 0, 3, 0]);
        assert_eq!(wd.min_weight(), Some(2));
        assert_eq!(wd.max_weight(), 2);
    }

    #[test]
    fn generic_and_binary_paths_agree() {
        let f = gf(2, 1);
        let c = LinearCode::from_rows(
            &f,
            &[vec![1, 0, 0, 1, 1, 0, 1], vec![0, 1, 0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1, 1, 1]],
        )
        .unwrap();
        let mut counts = vec![0u64; 8];
        c.for_each_codeword(|_, cw| {
            counts[cw.iter().filter(|&&x| x != 0).count()] += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(c.weight_distribution().unwrap().counts(), counts.as_slice());
    }

    #[test]
    fn codewords_follow_message_order() {
        let f = gf(3, 2);
        let c = LinearCode::from_rows(&f, &[vec![1, 2, 5], vec![0, 3, 8]]).unwrap();
        c.for_each_codeword(|idx, cw| {
            assert_eq!(cw, c.encode(&c.message(idx)).as_slice());
            ControlFlow::Continue(())
        })
        .unwrap();
    }

    #[test]
    fn rank_checks() {
        let f = gf(2, 1);
        let err = LinearCode::from_rows(&f, &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1, rows: 2 });
        assert!(matches!(
            LinearCode::from_rows(&f, &[vec![2, 0]]),
            Err(Error::ValueOutOfRange { value: 2, order: 2 })
        ));
        assert!(LinearCode::from_rows(&f, &[vec![1], vec![1]]).is_err());
    }

    #[test]
    fn degeneracy() {
        let f = gf(2, 1);
        let c = LinearCode::from_rows(&f, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c.degeneracy_flags(), DegeneracyFlags { projective: false, nondegenerate: true });
        let c = LinearCode::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(c.degeneracy_flags(), DegeneracyFlags { projective: true, nondegenerate: false });
        let f3 = gf(3, 1);
        let c = LinearCode::from_rows(&f3, &[vec![1, 2], vec![1, 2]]);
        assert!(c.is_err());
        let c = LinearCode::from_rows(&f3, &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        assert!(!c.degeneracy_flags().projective);
    }

    #[test]
    fn dual_of_simplex_is_repetition() {
        let f = gf(2, 1);
        let c = LinearCode::from_rows(&f, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.generator().row(0), &[1, 1, 1]);
        let dd = d.dual().unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        c.for_each_codeword(|_, w| {
            a.push(w.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        dd.for_each_codeword(|_, w| {
            b.push(w.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn covering_radius_examples() {
        let f = gf(2, 1);
        let rep = LinearCode::from_rows(&f, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(covering_radius_oracle(&rep), 1);
        assert_eq!(rep.covering_radius().unwrap(), 1);
        let full = LinearCode::from_rows(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(full.covering_radius().unwrap(), 0);
        let simplex = LinearCode::from_rows(
            &f,
            &[vec![1, 0, 1, 0, 1, 0, 1], vec![0, 1, 1, 0, 0, 1, 1], vec![0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        assert_eq!(covering_radius_oracle(&simplex), 3);
        assert_eq!(simplex.covering_radius().unwrap(), 3);
    }

    #[test]
    fn covering_radius_matches_oracle_ternary() {
        let f = gf(3, 1);
        let c = LinearCode::from_rows(&f, &[vec![1, 0, 1, 2, 1], vec![0, 1, 1, 1, 2]]).unwrap();
        assert_eq!(c.covering_radius().unwrap(), covering_radius_oracle(&c));
        let f4 = gf(2, 2);
        let c = LinearCode::from_rows(&f4, &[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(c.covering_radius().unwrap(), covering_radius_oracle(&c));
    }

    #[test]
    fn enumeration_guard() {
        let f = gf(2, 1);
        let rows: Vec<Vec<u32>> = (0..33)
            .map(|i| (0..33).map(|j| (i == j) as u32).collect())
            .collect();
        let c = LinearCode::from_rows(&f, &rows).unwrap();
        assert!(matches!(c.weight_distribution(), Err(Error::TooLarge { .. })));
    }
}
