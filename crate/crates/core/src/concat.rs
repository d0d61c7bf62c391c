//! Concatenation of an outer code over GF(q^k) with an inner `[n, k]_q` code.
//!
//! The outer symbol `β` is replaced by `φ(β) · G_inner`, where `φ` gives the
//! coordinates of `β` over GF(q). Row-wise this is the block matrix whose
//! `(i, j)` block is `A(α_ij) · G_inner`, with `A` the matrix representation
//! of GF(q^k) over GF(q).

use alloc::vec::Vec;
use core::fmt;

use crate::code::{LinearCode, WeightDistribution};
use crate::combin::projective_count;
use crate::error::{Error, Result};
use crate::gf::Extension;
use crate::linalg::Matrix;
use crate::minimal::{is_minimal_code, outer_ab, Certificate, Method, Verdict};

#[derive(Clone, Debug)]
pub struct ConcatSpec {
    outer: LinearCode,
    inner: LinearCode,
}

impl ConcatSpec {
    /// The outer field must be the degree-`inner.k()` extension of the inner field.
    pub fn new(outer: LinearCode, inner: LinearCode) -> Result<Self> {
        let tower = Extension::new(inner.field(), outer.field())?;
        if tower.degree() as usize != inner.k() {
            return Err(Error::FieldMismatch("outer field degree over the inner field differs from the inner dimension"));
        }
        Ok(ConcatSpec { outer, inner })
    }

    pub fn outer(&self) -> &LinearCode {
        &self.outer
    }

    pub fn inner(&self) -> &LinearCode {
        &self.inner
    }

    /// `(N n, K k)`.
    pub fn params(&self) -> (usize, usize) {
        (self.outer.n() * self.inner.n(), self.outer.k() * self.inner.k())
    }
}

pub fn concatenate(spec: &ConcatSpec) -> Result<LinearCode> {
    let (outer, inner) = (&spec.outer, &spec.inner);
    let base = &**inner.field();
    let tower = Extension::new(base, outer.field())?;
    let (big_k, big_n) = (outer.k(), outer.n());
    let (k, n) = (inner.k(), inner.n());
    let mut gen = Matrix::zeros(big_k * k, big_n * n);
    for i in 0..big_k {
        for j in 0..big_n {
            let block = tower.matrix_rep(outer.generator().get(i, j)).mul(base, inner.generator());
            for r in 0..k {
                let row = gen.row_mut(i * k + r);
                row[j * n..(j + 1) * n].copy_from_slice(block.row(r));
            }
        }
    }
    LinearCode::new(inner.field().clone(), gen)
}

/// Whether the code's columns are exactly the points of PG(k-1, q).
pub fn is_simplex(code: &LinearCode) -> bool {
    projective_count(code.q(), code.k() as u32) == Some(code.n() as u64) && code.degeneracy_flags().projective && code.degeneracy_flags().nondegenerate
}

/// Certifies minimality of the concatenation from a minimal inner code and
/// an outer code with `D / W > (q-1)/q`.
///
/// The inner code is accepted without search when it is a simplex code.
/// Anything short of both premises is `Inconclusive`.
pub fn certify_minimal_concat(spec: &ConcatSpec) -> Result<Certificate> {
    let inner_ok = is_simplex(&spec.inner) || is_minimal_code(&spec.inner)?.verdict == Verdict::Minimal;
    let outer = outer_ab(&spec.outer, spec.inner.q())?;
    let verdict = if inner_ok && outer.verdict == Verdict::CertifiedMinimal {
        Verdict::CertifiedMinimal
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate { verdict, method: Method::OuterAB, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    AtLeast(usize),
}

impl Distance {
    pub fn value(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Exact distance when the concatenated code has at most `limit` codewords,
/// otherwise the product bound `D · d`.
pub fn concat_distance(spec: &ConcatSpec, code: &LinearCode, limit: u128) -> Result<Distance> {
    if code.size() <= limit {
        return Ok(Distance::Exact(code.min_distance()?));
    }
    let outer_d = match spec.outer.min_distance() {
        Ok(d) => d,
        Err(Error::TooLarge { .. }) if spec.outer.is_known_mds() => spec.outer.n() - spec.outer.k() + 1,
        Err(e) => return Err(e),
    };
    let inner_d = spec.inner.min_distance()?;
    Ok(Distance::AtLeast(outer_d * inner_d))
}

/// Weight distribution of a concatenation with the `[(q^k-1)/(q-1), k]`
/// simplex code, predicted from the outer distribution: weight `i` of the
/// outer code becomes weight `q^(k-1) i`.
pub fn simplex_concat_distribution(outer: &WeightDistribution, q: u64, k: usize) -> Option<WeightDistribution> {
    let scale = usize::try_from(q.checked_pow(k as u32 - 1)?).ok()?;
    let inner_n = projective_count(q, k as u32)? as usize;
    let len = outer.counts().len().checked_sub(1)? * inner_n;
    let mut counts = alloc::vec![0u64; len + 1];
    for (i, a) in outer.nonzero() {
        counts[i * scale] = a;
    }
    Some(WeightDistribution::from_counts(counts))
}

/// The codeword `π(c)` for an outer codeword `c`: symbol-wise `φ(c_j) · G_inner`.
pub fn embed_codeword(spec: &ConcatSpec, outer_word: &[u32]) -> Result<Vec<u32>> {
    let base = &**spec.inner.field();
    let tower = Extension::new(base, spec.outer.field())?;
    Ok(outer_word.iter().flat_map(|&b| spec.inner.encode(&tower.coords(b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{grs, simplex};
    use crate::gf::Field;
    use alloc::sync::Arc;

    fn gf(p: u64, m: u32) -> Arc<Field> {
        Arc::new(Field::gf(p, m).unwrap())
    }

    #[test]
    fn small_concatenations() {
        let spec = ConcatSpec::new(grs(&gf(2, 2), 3, 2).unwrap(), simplex(&gf(2, 1), 2).unwrap()).unwrap();
        let c = concatenate(&spec).unwrap();
        assert_eq!((c.n(), c.k(), c.min_distance().unwrap()), (9, 4, 4));
        assert_eq!(certify_minimal_concat(&spec).unwrap().verdict, Verdict::CertifiedMinimal);
        assert_eq!(concat_distance(&spec, &c, 1 << 16).unwrap(), Distance::Exact(4));
        assert_eq!(concat_distance(&spec, &c, 1).unwrap(), Distance::AtLeast(4));
    }

    #[test]
    fn rows_are_embedded_codewords() {
        let outer = grs(&gf(3, 2), 4, 2).unwrap();
        let spec = ConcatSpec::new(outer.clone(), simplex(&gf(3, 1), 2).unwrap()).unwrap();
        let c = concatenate(&spec).unwrap();
        let f = outer.field();
        // row i*k + t is π(ω^t · row_i of the outer generator)
        for i in 0..outer.k() {
            for t in 0..2 {
                let scaled: Vec<u32> = outer.generator().row(i).iter().map(|&a| f.mul(f.exp(t as u64), a)).collect();
                assert_eq!(c.generator().row(i * 2 + t), embed_codeword(&spec, &scaled).unwrap().as_slice());
            }
        }
    }

    #[test]
    fn field_mismatch() {
        let outer = grs(&gf(2, 3), 3, 2).unwrap();
        let inner = simplex(&gf(2, 1), 2).unwrap();
        assert!(matches!(ConcatSpec::new(outer, inner), Err(Error::FieldMismatch(_))));
        let outer = grs(&gf(3, 2), 3, 2).unwrap();
        let inner = simplex(&gf(2, 1), 2).unwrap();
        assert!(matches!(ConcatSpec::new(outer, inner), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn simplex_detection() {
        assert!(is_simplex(&simplex(&gf(3, 1), 2).unwrap()));
        assert!(!is_simplex(&grs(&gf(2, 2), 3, 2).unwrap()));
    }
}
