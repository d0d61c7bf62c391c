//! Projective spaces PG(k-1, q), projective systems and the hyperplane-side
//! checks: strong blocking, fold level and saturation.
//!
//! Points are normalized so the first nonzero coordinate is 1 and are ordered
//! by their integer encoding (coordinates as base-q digits, coordinate 0
//! least significant). Hyperplanes are enumerated through their normalized
//! normal vectors in the same order, so every "first failing hyperplane" is
//! reproducible.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::code::LinearCode;
use crate::combin::{projective_count, Combinations};
use crate::error::{guard, Error, Result};
use crate::gf::{Extension, Field};
use crate::linalg::{rank_gf2, rank_of, Matrix};
use crate::minimal::{Certificate, Method, Verdict, Witness};

/// Largest number of points (or hyperplanes) an ambient space may have.
pub const POINT_LIMIT: u64 = 1 << 24;

/// Ambient-space limit for the saturation search.
pub const SATURATION_POINT_LIMIT: u64 = 1 << 16;

/// Largest point set the saturation search accepts.
pub const SATURATION_SET_LIMIT: usize = 64;

/// Scales `v` so its first nonzero entry is 1; `None` for the zero vector.
pub fn normalized(f: &Field, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<u32>,
}

impl ProjectivePoint {
    /// Normalizes a nonzero vector; `None` for the zero vector.
    pub fn new(f: &Field, v: &[u32]) -> Option<Self> {
        normalized(f, v).map(|coords| ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn encoding(&self, q: u64) -> u64 {
        self.coords.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        // coordinate 0 is the least significant digit
        self.coords
            .len()
            .cmp(&other.coords.len())
            .then_with(|| self.coords.iter().rev().cmp(other.coords.iter().rev()))
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All points of PG(k-1, q) in increasing encoding order.
pub fn enumerate_points(f: &Field, k: usize) -> Result<Vec<ProjectivePoint>> {
    let count = projective_count(f.order(), k as u32).unwrap_or(u64::MAX);
    guard("projective space", count as u128, POINT_LIMIT as u128)?;
    let q = f.order();
    let total = q.pow(k as u32);
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; k];
    for _ in 1..total {
        // odometer increment
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
        if digits.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(ProjectivePoint { coords: digits.clone() });
        }
    }
    Ok(out)
}

/// A multiset of points of PG(k-1, q).
#[derive(Clone, Debug)]
pub struct ProjectiveSystem {
    field: Arc<Field>,
    dim: usize,
    points: Vec<ProjectivePoint>,
    rank: usize,
}

impl ProjectiveSystem {
    pub fn new(field: Arc<Field>, dim: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimensions("ambient dimension must be positive"));
        }
        for p in &points {
            if p.coords.len() != dim {
                return Err(Error::BadDimensions("point has the wrong number of coordinates"));
            }
            if let Some(&bad) = p.coords.iter().find(|&&x| !field.contains(x as u64)) {
                return Err(Error::ValueOutOfRange { value: bad as u64, order: field.order() });
            }
            if normalized(&field, &p.coords).as_deref() != Some(p.coords.as_slice()) {
                return Err(Error::BadParams("point is not normalized"));
            }
        }
        let refs: Vec<&[u32]> = points.iter().map(|p| p.coords.as_slice()).collect();
        let rank = rank_of(&field, &refs);
        Ok(ProjectiveSystem { field, dim, points, rank })
    }

    /// Normalizes raw vectors; a zero vector is reported by index.
    pub fn from_vectors(field: Arc<Field>, dim: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let points = vectors
            .iter()
            .enumerate()
            .map(|(j, v)| {
                if v.len() != dim {
                    return Err(Error::BadDimensions("vector has the wrong number of coordinates"));
                }
                if let Some(&bad) = v.iter().find(|&&x| !field.contains(x as u64)) {
                    return Err(Error::ValueOutOfRange { value: bad as u64, order: field.order() });
                }
                ProjectivePoint::new(&field, v).ok_or(Error::DegenerateColumn(j))
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectiveSystem::new(field, dim, points)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `k`, for PG(k-1, q).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_spanning(&self) -> bool {
        self.rank == self.dim
    }

    pub fn has_multiplicity(&self) -> bool {
        self.support().len() < self.points.len()
    }

    /// Distinct points, sorted.
    pub fn support(&self) -> Vec<ProjectivePoint> {
        let mut s = self.points.clone();
        s.sort();
        s.dedup();
        s
    }

    /// The code whose generator columns are the points, in order.
    pub fn to_code(&self) -> Result<LinearCode> {
        let cols: Vec<Vec<u32>> = self.points.iter().map(|p| p.coords.clone()).collect();
        LinearCode::new(self.field.clone(), Matrix::from_columns(self.dim, &cols))
    }

    fn ensure_spanning(&self) -> Result<()> {
        if self.is_spanning() {
            Ok(())
        } else {
            Err(Error::NotSpanning { rank: self.rank, dim: self.dim })
        }
    }

    fn hyperplane_guard(&self) -> Result<Vec<ProjectivePoint>> {
        enumerate_points(&self.field, self.dim)
    }
}

/// Normalized columns of a nondegenerate code.
pub fn system_from_code(c: &LinearCode) -> Result<ProjectiveSystem> {
    let cols: Vec<Vec<u32>> = (0..c.n()).map(|j| c.generator().column(j)).collect();
    ProjectiveSystem::from_vectors(c.field().clone(), c.k(), &cols)
}

/// Evaluates hyperplanes against a point list.
struct Incidence<'a> {
    field: &'a Field,
    points: &'a [ProjectivePoint],
    packed: Option<Vec<u64>>,
}

impl<'a> Incidence<'a> {
    fn new(field: &'a Field, points: &'a [ProjectivePoint], dim: usize) -> Self {
        let packed = (field.order() == 2 && dim <= 64).then(|| points.iter().map(|p| pack(&p.coords)).collect());
        Incidence { field, points, packed }
    }

    /// Indices of the points on the hyperplane with normal `u`.
    fn on(&self, u: &ProjectivePoint, out: &mut Vec<usize>) {
        out.clear();
        match &self.packed {
            Some(packed) => {
                let mask = pack(&u.coords);
                out.extend(packed.iter().enumerate().filter(|(_, &p)| (p & mask).count_ones() % 2 == 0).map(|(i, _)| i));
            }
            None => {
                let f = self.field;
                for (i, p) in self.points.iter().enumerate() {
                    let dot = u.coords.iter().zip(&p.coords).fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                    if dot == 0 {
                        out.push(i);
                    }
                }
            }
        }
    }

    fn rank(&self, idx: &[usize]) -> usize {
        match &self.packed {
            Some(packed) => rank_gf2(idx.iter().map(|&i| packed[i])),
            None => {
                let refs: Vec<&[u32]> = idx.iter().map(|&i| self.points[i].coords.as_slice()).collect();
                rank_of(self.field, &refs)
            }
        }
    }
}

fn pack(coords: &[u32]) -> u64 {
    coords.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64 & 1) << i))
}

/// Extreme hyperplane intersection sizes (counted with multiplicity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperplaneProfile {
    pub n: usize,
    /// Fewest points on a hyperplane.
    pub min: usize,
    /// Most points on a hyperplane.
    pub max: usize,
    pub q: u64,
}

impl HyperplaneProfile {
    /// `(n - max) / (n - min) > (q - 1) / q`.
    pub fn ab_holds(&self) -> bool {
        let (n, q) = (self.n as u128, self.q as u128);
        let num = n - self.max as u128;
        let den = n - self.min as u128;
        den > 0 && num * q > den * (q - 1)
    }

    pub fn verdict(&self) -> Verdict {
        if self.ab_holds() {
            Verdict::CertifiedMinimal
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn certificate(&self) -> Certificate {
        Certificate { verdict: self.verdict(), method: Method::GeometricAB, witness: None }
    }
}

pub fn hyperplane_profile(s: &ProjectiveSystem) -> Result<HyperplaneProfile> {
    let normals = s.hyperplane_guard()?;
    let inc = Incidence::new(&s.field, &s.points, s.dim);
    let mut on = Vec::new();
    let (mut min, mut max) = (usize::MAX, 0);
    for u in &normals {
        inc.on(u, &mut on);
        min = min.min(on.len());
        max = max.max(on.len());
    }
    Ok(HyperplaneProfile { n: s.len(), min, max, q: s.field.order() })
}

/// Every hyperplane section spans the hyperplane.
///
/// A failure carries the first hyperplane (in normal-vector order) whose
/// section has rank below `k - 1`.
pub fn is_strong_blocking(s: &ProjectiveSystem) -> Result<Certificate> {
    s.ensure_spanning()?;
    let normals = s.hyperplane_guard()?;
    let support = s.support();
    let inc = Incidence::new(&s.field, &support, s.dim);
    let target = s.dim - 1;
    let mut on = Vec::new();
    for u in &normals {
        inc.on(u, &mut on);
        let rank = inc.rank(&on);
        if rank < target {
            return Ok(Certificate {
                verdict: Verdict::NotMinimal,
                method: Method::HyperplaneRank,
                witness: Some(Witness::Hyperplane { normal: u.coords.clone(), rank }),
            });
        }
    }
    Ok(Certificate { verdict: Verdict::Minimal, method: Method::HyperplaneRank, witness: None })
}

/// Largest `t` such that every hyperplane meets the system in `t` points.
pub fn fold_blocking_level(s: &ProjectiveSystem) -> Result<usize> {
    Ok(hyperplane_profile(s)?.min)
}

/// Exact saturation radius ρ: the largest, over points outside the set, of
/// the fewest set points spanning a subspace through it, minus one.
///
/// When the set is the whole space there are no outside points and ρ = 0.
pub fn saturation_radius(s: &ProjectiveSystem) -> Result<usize> {
    s.ensure_spanning()?;
    let f = &*s.field;
    let q = f.order();
    let k = s.dim;
    let ambient = projective_count(q, k as u32).unwrap_or(u64::MAX);
    guard("saturation ambient space", ambient as u128, SATURATION_POINT_LIMIT as u128)?;
    let support = s.support();
    guard("saturation point set", support.len() as u128, SATURATION_SET_LIMIT as u128)?;
    let space = q.pow(k as u32) as usize;
    let mut covered = vec![false; space];
    let mut count = 0u64;
    for p in &support {
        covered[p.encoding(q) as usize] = true;
        count += 1;
    }
    if count == ambient {
        return Ok(0);
    }
    let nonzero: Vec<u32> = f.elements().skip(1).collect();
    for t in 2..=k {
        let mut combos = Combinations::new(support.len(), t);
        let mut coeff = vec![0usize; t - 1];
        while let Some(subset) = combos.next_subset() {
            // every point of the span with all t coefficients nonzero, lead coefficient 1
            coeff.iter_mut().for_each(|c| *c = 0);
            loop {
                let mut v = support[subset[0]].coords.clone();
                for (c, &pi) in coeff.iter().zip(&subset[1..]) {
                    let a = nonzero[*c];
                    for (x, &y) in v.iter_mut().zip(&support[pi].coords) {
                        *x = f.add(*x, f.mul(a, y));
                    }
                }
                if let Some(p) = ProjectivePoint::new(f, &v) {
                    let e = p.encoding(q) as usize;
                    if !covered[e] {
                        covered[e] = true;
                        count += 1;
                    }
                }
                let mut i = 0;
                while i < coeff.len() {
                    coeff[i] += 1;
                    if coeff[i] < nonzero.len() {
                        break;
                    }
                    coeff[i] = 0;
                    i += 1;
                }
                if i == coeff.len() {
                    break;
                }
            }
            if count == ambient {
                return Ok(t - 1);
            }
        }
    }
    unreachable!("a spanning set covers the space with k points")
}

/// Reinterprets a system over GF(q) as a system over GF(q^e).
pub fn subgeometry_embed(s: &ProjectiveSystem, e: u32) -> Result<ProjectiveSystem> {
    if e == 0 {
        return Err(Error::BadParams("extension degree must be at least 1"));
    }
    let base = &*s.field;
    let ext = Arc::new(Field::gf(base.p(), base.m() * e)?);
    let tower = Extension::new(base, &ext)?;
    let points = s
        .points
        .iter()
        .map(|p| ProjectivePoint { coords: p.coords.iter().map(|&c| tower.embed(c)).collect() })
        .collect();
    ProjectiveSystem::new(ext.clone(), s.dim, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Arc<Field> {
        Arc::new(Field::gf(p, m).unwrap())
    }

    fn fano(f: &Arc<Field>) -> ProjectiveSystem {
        ProjectiveSystem::new(f.clone(), 3, enumerate_points(f, 3).unwrap()).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_points(&gf(2, 1), 2).unwrap().len(), 3);
        assert_eq!(enumerate_points(&gf(2, 1), 3).unwrap().len(), 7);
        assert_eq!(enumerate_points(&gf(2, 2), 3).unwrap().len(), 21);
        assert_eq!(enumerate_points(&gf(3, 1), 3).unwrap().len(), 13);
    }

    #[test]
    fn points_are_sorted_and_normalized() {
        let f = gf(3, 1);
        let pts = enumerate_points(&f, 3).unwrap();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.windows(2).all(|w| w[0].encoding(3) < w[1].encoding(3)));
        for p in &pts {
            assert_eq!(normalized(&f, p.coords()).unwrap(), p.coords());
        }
        assert_eq!(pts[0].coords(), &[1, 0, 0]);
    }

    #[test]
    fn whole_plane_is_strong_blocking() {
        let f = gf(2, 1);
        let s = fano(&f);
        assert_eq!(is_strong_blocking(&s).unwrap().verdict, Verdict::Minimal);
        let prof = hyperplane_profile(&s).unwrap();
        assert_eq!((prof.min, prof.max), (3, 3));
        assert!(prof.ab_holds());
        assert_eq!(fold_blocking_level(&s).unwrap(), 3);
    }

    #[test]
    fn collinear_points() {
        let f = gf(2, 1);
        let line = ProjectiveSystem::from_vectors(f.clone(), 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
        assert!(matches!(is_strong_blocking(&line), Err(Error::NotSpanning { rank: 2, dim: 3 })));
        assert_eq!(fold_blocking_level(&line).unwrap(), 1);
        // add a point off the line: the line itself still fails
        let s = ProjectiveSystem::from_vectors(
            f,
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let cert = is_strong_blocking(&s).unwrap();
        assert_eq!(cert.verdict, Verdict::NotMinimal);
        match cert.witness {
            Some(Witness::Hyperplane { rank, .. }) => assert!(rank < 2),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn multiplicity_flag() {
        let f = gf(2, 1);
        let s = ProjectiveSystem::from_vectors(f, 2, &[vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert!(s.has_multiplicity());
        assert_eq!(s.support().len(), 2);
    }

    #[test]
    fn degenerate_column() {
        let f = gf(2, 1);
        let c = LinearCode::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(system_from_code(&c).unwrap_err(), Error::DegenerateColumn(2));
    }

    #[test]
    fn saturation_trivial_cases() {
        let f = gf(2, 1);
        let line = ProjectiveSystem::new(f.clone(), 2, enumerate_points(&f, 2).unwrap()).unwrap();
        assert_eq!(saturation_radius(&line).unwrap(), 0);
        assert_eq!(saturation_radius(&fano(&f)).unwrap(), 0);
    }

    #[test]
    fn embedded_fano_is_one_saturating() {
        let f = gf(2, 1);
        let emb = subgeometry_embed(&fano(&f), 2).unwrap();
        assert_eq!(emb.field().order(), 4);
        assert_eq!(emb.len(), 7);
        // oracle: every point of PG(2,4) is on a line through two of the 7 points
        let pts = enumerate_points(emb.field(), 3).unwrap();
        let ff = emb.field().clone();
        for q in &pts {
            let on_some_secant = emb.points().iter().any(|a| {
                emb.points().iter().any(|b| {
                    a != b && rank_of(&ff, &[a.coords(), b.coords(), q.coords()]) == 2
                })
            });
            assert!(on_some_secant);
        }
        assert_eq!(saturation_radius(&emb).unwrap(), 1);
    }

    #[test]
    fn saturation_guard() {
        let f = gf(2, 1);
        let pts: Vec<Vec<u32>> = (0..6).map(|i| (0..6).map(|j| (i == j) as u32).collect()).collect();
        let s = ProjectiveSystem::from_vectors(f, 6, &pts).unwrap();
        let big = subgeometry_embed(&s, 5).unwrap();
        assert!(matches!(saturation_radius(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn composite_base_embedding_keeps_normalization() {
        let f = gf(2, 2);
        let s = ProjectiveSystem::new(f.clone(), 2, enumerate_points(&f, 2).unwrap()).unwrap();
        let emb = subgeometry_embed(&s, 2).unwrap();
        assert_eq!(emb.field().order(), 16);
        assert_eq!(emb.support().len(), 5);
    }
}
