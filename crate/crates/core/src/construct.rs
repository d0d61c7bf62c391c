//! Code constructors: simplex, (doubly extended) Reed-Solomon, the stored
//! fixtures, and an exhaustive search for the shortest minimal codes.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::code::LinearCode;
use crate::combin::projective_count;
use crate::error::{guard, Error, Result};
use crate::geometry::{enumerate_points, POINT_LIMIT};
use crate::gf::Field;
use crate::linalg::{rank_gf2, rank_of, Matrix};

const TERNARY_9_3_5: &str = include_str!("../data/ternary_9_3_5.gmat");
const BINARY_15_6_6: &str = include_str!("../data/binary_15_6_6.gmat");

/// Simplex code: one column per point of PG(k-1, q), in encoding order.
pub fn simplex(field: &Arc<Field>, k: usize) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::BadParams("simplex dimension must be at least 1"));
    }
    let cols: Vec<Vec<u32>> = enumerate_points(field, k)?.into_iter().map(|p| p.coords().to_vec()).collect();
    LinearCode::new(field.clone(), Matrix::from_columns(k, &cols))
}

/// Reed-Solomon code of length `n` and dimension `k` over the given field.
///
/// Evaluation points are 0, ω⁰, ω¹, … and, when `n = q + 1`, the point at
/// infinity, whose column picks the coefficient of `x^(k-1)`.
pub fn grs(field: &Arc<Field>, n: usize, k: usize) -> Result<LinearCode> {
    let q = field.order();
    if n as u64 > q + 1 {
        return Err(Error::LengthTooLong { n, max: q + 1 });
    }
    if k == 0 || k > n {
        return Err(Error::BadParams("need 1 <= K <= N"));
    }
    let f = &**field;
    let finite = n.min(q as usize);
    let mut cols = Vec::with_capacity(n);
    for i in 0..finite {
        let x = if i == 0 { 0 } else { f.exp(i as u64 - 1) };
        let mut col = Vec::with_capacity(k);
        let mut pow = 1;
        for _ in 0..k {
            col.push(pow);
            pow = f.mul(pow, x);
        }
        cols.push(col);
    }
    if n > finite {
        let mut inf = vec![0; k];
        inf[k - 1] = 1;
        cols.push(inf);
    }
    Ok(LinearCode::new(field.clone(), Matrix::from_columns(k, &cols))?.assume_mds())
}

/// The Reed-Solomon code of length `qK - q + 1` over GF(q^k), whose
/// distance-to-length ratio exceeds `(q-1)/q`.
pub fn mds_outer(field: &Arc<Field>, q: u64, k_outer: usize) -> Result<LinearCode> {
    let order = field.order();
    let mut k = 0u32;
    let mut x = 1u64;
    while x < order {
        x = x.checked_mul(q).ok_or(Error::Overflow)?;
        k += 1;
    }
    if q < 2 || x != order {
        return Err(Error::FieldMismatch("field order is not a power of the base order"));
    }
    if k_outer == 0 || k_outer as u64 > q.pow(k - 1) + 1 {
        return Err(Error::BadParams("need 1 <= K <= q^(k-1) + 1"));
    }
    let n = q as usize * k_outer - q as usize + 1;
    grs(field, n, k_outer)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    /// The [9,3,5] ternary code of shortest minimal length in dimension 3.
    Ternary935,
    /// The [15,6,6] binary concatenation of [5,3,3]₄ with [3,2,2]₂.
    Binary1566,
    /// The [4,2,3] code with rows (1,1,1,0) and (0,ω^i,ω^j,1) over GF(q^k).
    FourPointOuter { i: u64, j: u64 },
}

/// Stored fixture codes. `field` is required for the parametrised outer
/// code and ignored otherwise.
pub fn fixture(name: FixtureName, field: Option<&Arc<Field>>) -> Result<LinearCode> {
    match name {
        FixtureName::Ternary935 => parse_stored(TERNARY_9_3_5),
        FixtureName::Binary1566 => parse_stored(BINARY_15_6_6),
        FixtureName::FourPointOuter { i, j } => {
            let field = field.ok_or(Error::BadParams("the outer fixture needs a field"))?;
            if !(0 < i && i < j && j < field.order()) {
                return Err(Error::BadParams("need 0 < i < j < field order"));
            }
            let (wi, wj) = (field.exp(i), field.exp(j));
            LinearCode::from_rows(field, &[vec![1, 1, 1, 0], vec![0, wi, wj, 1]])
        }
    }
}

fn parse_stored(text: &str) -> Result<LinearCode> {
    let mut nums = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse::<u64>().expect("stored fixture is well formed"));
    let mut next = || nums.next().expect("stored fixture is complete");
    let (p, m, n, k) = (next(), next() as u32, next() as usize, next() as usize);
    let field = Arc::new(Field::gf(p, m)?);
    let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| next() as u32).collect()).collect();
    LinearCode::from_rows(&field, &rows)
}

/// Largest number of candidate point sets the search visits by default.
pub const SEARCH_LIMIT: u128 = 1 << 26;

/// Smallest `n <= n_max` admitting a projective minimal `[n, k]_q` code,
/// with a witness.
///
/// Every minimal code spans, so up to equivalence its point set contains
/// the `k` unit points; the search fixes them and enumerates the remaining
/// points as sorted subsets of PG(k-1, q). Lengths start at the lower bound
/// `(q+1)(k-1)`. The witness is the first success in lexicographic order.
/// Without `allow_large` only `q ∈ {2,3}`, `k <= 4` is accepted.
pub fn search_shortest_minimal(field: &Arc<Field>, k: usize, n_max: usize, allow_large: bool) -> Result<(usize, LinearCode)> {
    let q = field.order();
    if k < 2 {
        return Err(Error::BadParams("search needs k >= 2"));
    }
    if !allow_large && !(matches!(q, 2 | 3) && k <= 4) {
        return Err(Error::BadParams("search is limited to q in {2,3}, k <= 4 without an override"));
    }
    let count = projective_count(q, k as u32).unwrap_or(u64::MAX);
    guard("projective space", count as u128, POINT_LIMIT as u128)?;
    let start = ((q as usize + 1) * (k - 1)).max(k);
    if !allow_large {
        let free = count as usize - k;
        let total: u128 = (start..=n_max.min(count as usize)).map(|n| crate::combin::binomial(free as u64, (n - k) as u64)).sum();
        guard("search candidates", total, SEARCH_LIMIT)?;
    }
    let mut s = Search::new(field, k)?;
    for n in start..=n_max.min(count as usize) {
        if let Some(chosen) = s.run(n) {
            let cols: Vec<Vec<u32>> = chosen.iter().map(|&i| s.points[i].clone()).collect();
            return Ok((n, LinearCode::new(field.clone(), Matrix::from_columns(k, &cols))?));
        }
    }
    Err(Error::NotFound)
}

struct Search<'a> {
    field: &'a Field,
    k: usize,
    points: Vec<Vec<u32>>,
    packed: Option<Vec<u64>>,
    /// Hyperplanes through each point.
    through: Vec<Vec<usize>>,
    /// `remaining[h][i]`: free points with index >= i on hyperplane h.
    remaining: Vec<Vec<usize>>,
    free: Vec<usize>,
    forced: Vec<usize>,
    hyperplanes: usize,
}

impl<'a> Search<'a> {
    fn new(field: &'a Field, k: usize) -> Result<Self> {
        let pts = enumerate_points(field, k)?;
        let points: Vec<Vec<u32>> = pts.iter().map(|p| p.coords().to_vec()).collect();
        let h = points.len();
        let f = field;
        let mut through = vec![Vec::new(); points.len()];
        let mut on = vec![vec![false; points.len()]; h];
        for (hi, u) in points.iter().enumerate() {
            for (pi, p) in points.iter().enumerate() {
                let dot = u.iter().zip(p).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                if dot == 0 {
                    through[pi].push(hi);
                    on[hi][pi] = true;
                }
            }
        }
        let forced: Vec<usize> = (0..k)
            .map(|i| points.iter().position(|p| p.iter().enumerate().all(|(j, &x)| x == (i == j) as u32)).expect("unit point"))
            .collect();
        let free: Vec<usize> = (0..points.len()).filter(|i| !forced.contains(i)).collect();
        let remaining = on
            .iter()
            .map(|row| {
                let mut suffix = vec![0; free.len() + 1];
                for t in (0..free.len()).rev() {
                    suffix[t] = suffix[t + 1] + row[free[t]] as usize;
                }
                suffix
            })
            .collect();
        let packed = (f.order() == 2).then(|| points.iter().map(|p| p.iter().enumerate().fold(0u64, |a, (i, &c)| a | ((c as u64) << i))).collect());
        Ok(Search { field, k, points, packed, through, remaining, free, forced, hyperplanes: h })
    }

    fn run(&mut self, n: usize) -> Option<Vec<usize>> {
        let mut counts = vec![0usize; self.hyperplanes];
        for &p in &self.forced {
            for &h in &self.through[p] {
                counts[h] += 1;
            }
        }
        let mut chosen = self.forced.clone();
        if self.dfs(n, 0, &mut chosen, &mut counts) {
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }

    fn dfs(&self, n: usize, next: usize, chosen: &mut Vec<usize>, counts: &mut [usize]) -> bool {
        let slots = n - chosen.len();
        let need = self.k - 1;
        for (h, &c) in counts.iter().enumerate() {
            if c + slots.min(self.remaining[h][next]) < need {
                return false;
            }
        }
        if slots == 0 {
            return self.spans_every_hyperplane(chosen);
        }
        for t in next..=self.free.len() - slots {
            let p = self.free[t];
            chosen.push(p);
            for &h in &self.through[p] {
                counts[h] += 1;
            }
            let found = self.dfs(n, t + 1, chosen, counts);
            if found {
                return true;
            }
            for &h in &self.through[p] {
                counts[h] -= 1;
            }
            chosen.pop();
        }
        false
    }

    fn spans_every_hyperplane(&self, chosen: &[usize]) -> bool {
        let mut sections: Vec<Vec<usize>> = vec![Vec::new(); self.hyperplanes];
        for &p in chosen {
            for &h in &self.through[p] {
                sections[h].push(p);
            }
        }
        sections.iter().all(|sec| {
            let rank = match &self.packed {
                Some(packed) => rank_gf2(sec.iter().map(|&i| packed[i])),
                None => {
                    let refs: Vec<&[u32]> = sec.iter().map(|&i| self.points[i].as_slice()).collect();
                    rank_of(self.field, &refs)
                }
            };
            rank == self.k - 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Arc<Field> {
        Arc::new(Field::gf(p, m).unwrap())
    }

    #[test]
    fn simplex_params() {
        let c = simplex(&gf(2, 1), 2).unwrap();
        assert_eq!((c.n(), c.k(), c.min_distance().unwrap()), (3, 2, 2));
        assert_eq!(c.generator().column(0), vec![1, 0]);
        assert_eq!(c.generator().column(1), vec![0, 1]);
        assert_eq!(c.generator().column(2), vec![1, 1]);
        let c = simplex(&gf(2, 1), 3).unwrap();
        assert_eq!((c.n(), c.min_distance().unwrap(), c.max_weight().unwrap()), (7, 4, 4));
        let c = simplex(&gf(3, 1), 2).unwrap();
        assert_eq!((c.n(), c.min_distance().unwrap()), (4, 3));
    }

    #[test]
    fn grs_params() {
        let c = grs(&gf(2, 2), 5, 3).unwrap();
        assert_eq!((c.n(), c.k(), c.min_distance().unwrap()), (5, 3, 3));
        let c = grs(&gf(3, 2), 4, 2).unwrap();
        assert_eq!(c.min_distance().unwrap(), 3);
        let c = grs(&gf(2, 2), 3, 3).unwrap();
        assert_eq!(c.min_distance().unwrap(), 1);
        assert_eq!(grs(&gf(2, 2), 6, 2).unwrap_err(), Error::LengthTooLong { n: 6, max: 5 });
    }

    #[test]
    fn mds_outer_lengths() {
        let c = mds_outer(&gf(2, 2), 2, 3).unwrap();
        assert_eq!((c.n(), c.min_distance().unwrap()), (5, 3));
        let c = mds_outer(&gf(3, 2), 3, 3).unwrap();
        assert_eq!((c.n(), c.min_distance().unwrap()), (7, 5));
        let c = mds_outer(&gf(2, 2), 2, 2).unwrap();
        assert_eq!((c.n(), c.min_distance().unwrap()), (3, 2));
        assert!(mds_outer(&gf(2, 2), 2, 4).is_err());
        assert!(mds_outer(&gf(2, 2), 3, 2).is_err());
    }

    #[test]
    fn fixtures() {
        let t = fixture(FixtureName::Ternary935, None).unwrap();
        assert_eq!((t.q(), t.n(), t.k(), t.min_distance().unwrap()), (3, 9, 3, 5));
        assert_eq!(t.generator().row(1), &[0, 1, 0, 0, 0, 1, 2, 1, 2]);
        let b = fixture(FixtureName::Binary1566, None).unwrap();
        assert_eq!((b.q(), b.n(), b.k(), b.min_distance().unwrap()), (2, 15, 6, 6));
        let a = fixture(FixtureName::FourPointOuter { i: 1, j: 2 }, Some(&gf(2, 2))).unwrap();
        assert_eq!((a.n(), a.k(), a.min_distance().unwrap()), (4, 2, 3));
        assert!(fixture(FixtureName::FourPointOuter { i: 2, j: 2 }, Some(&gf(2, 2))).is_err());
        assert!(fixture(FixtureName::FourPointOuter { i: 1, j: 2 }, None).is_err());
    }

    #[test]
    fn search_small() {
        let (n, c) = search_shortest_minimal(&gf(2, 1), 2, 4, false).unwrap();
        assert_eq!((n, c.n()), (3, 3));
        let (n, _) = search_shortest_minimal(&gf(2, 1), 3, 8, false).unwrap();
        assert_eq!(n, 6);
        assert_eq!(search_shortest_minimal(&gf(2, 1), 3, 5, false).unwrap_err(), Error::NotFound);
        assert!(search_shortest_minimal(&gf(5, 1), 2, 6, false).is_err());
    }
}
