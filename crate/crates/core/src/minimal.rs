//! Minimality of codewords and codes, by brute force and by the weight-ratio
//! sufficient conditions.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::code::{pack_bits, LinearCode};
use crate::error::{Error, Result};
use crate::{ENUMERATION_LIMIT, PAIRWISE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Decided by exhaustive search.
    Minimal,
    NotMinimal,
    /// A sufficient condition holds.
    CertifiedMinimal,
    /// A sufficient condition fails; says nothing either way.
    Inconclusive,
}

impl Verdict {
    pub fn is_minimal(self) -> bool {
        matches!(self, Verdict::Minimal | Verdict::CertifiedMinimal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Minimal => "minimal",
            Verdict::NotMinimal => "not-minimal",
            Verdict::CertifiedMinimal => "certified-minimal",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    ABCondition,
    OuterAB,
    SimplexConstantWeight,
    HyperplaneRank,
    GeometricAB,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute-force",
            Method::ABCondition => "ab-condition",
            Method::OuterAB => "outer-ab",
            Method::SimplexConstantWeight => "simplex-constant-weight",
            Method::HyperplaneRank => "hyperplane-rank",
            Method::GeometricAB => "geometric-ab",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `sub_codeword` has support inside that of `codeword` without being a
    /// multiple of it.
    Codewords { message: Vec<u32>, codeword: Vec<u32>, sub_message: Vec<u32>, sub_codeword: Vec<u32> },
    /// A hyperplane whose section spans only a subspace of rank `rank`.
    Hyperplane { normal: Vec<u32>, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Certificate {
    fn plain(verdict: Verdict, method: Method) -> Self {
        Certificate { verdict, method, witness: None }
    }
}

/// `d / w > (q - 1) / q`, in integers.
pub fn ratio_exceeds(d: u64, w: u64, q: u64) -> bool {
    w > 0 && (d as u128) * (q as u128) > (w as u128) * (q as u128 - 1)
}

fn support_within(sub: &[u32], sup: &[u32]) -> bool {
    sub.iter().zip(sup).all(|(&a, &b)| a == 0 || b != 0)
}

fn proportional(code: &LinearCode, a: &[u32], b: &[u32]) -> bool {
    let f = code.field();
    let Some(i) = b.iter().position(|&x| x != 0) else {
        return false;
    };
    if a[i] == 0 {
        return false;
    }
    let lambda = f.div(a[i], b[i]).expect("nonzero");
    a.iter().zip(b).all(|(&x, &y)| x == f.mul(lambda, y))
}

/// A codeword whose support sits inside that of `msg`'s codeword without
/// being a multiple of it; the first one in message order.
pub fn minimal_codeword_witness(code: &LinearCode, msg: &[u32]) -> Result<Option<Witness>> {
    if msg.len() != code.k() {
        return Err(Error::BadDimensions("message length differs from the dimension"));
    }
    let c = code.encode(msg);
    if c.iter().all(|&x| x == 0) {
        return Err(Error::ZeroCodeword);
    }
    code.enumeration_guard(ENUMERATION_LIMIT)?;
    let mut found = None;
    code.for_each_codeword(|idx, cw| {
        if idx != 0 && support_within(cw, &c) && !proportional(code, cw, &c) {
            found = Some(Witness::Codewords {
                message: msg.to_vec(),
                codeword: c.clone(),
                sub_message: code.message(idx),
                sub_codeword: cw.to_vec(),
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(found)
}

pub fn is_minimal_codeword(code: &LinearCode, msg: &[u32]) -> Result<bool> {
    Ok(minimal_codeword_witness(code, msg)?.is_none())
}

/// Exhaustive minimality check over one codeword per projective class.
///
/// A failure carries the first non-minimal codeword in message order,
/// paired with the first offending codeword in message order.
pub fn is_minimal_code(code: &LinearCode) -> Result<Certificate> {
    code.enumeration_guard(PAIRWISE_LIMIT)?;
    let q = code.q();
    let n = code.n();
    let words = n.div_ceil(64);
    // projective representatives: lowest nonzero message digit equal to 1
    let mut reps: Vec<(u64, Vec<u64>, u32)> = Vec::new();
    code.for_each_codeword(|idx, cw| {
        if idx != 0 {
            let mut i = idx;
            while i % q == 0 {
                i /= q;
            }
            if i % q == 1 {
                let bits = pack_bits(cw, words);
                let w = bits.iter().map(|x| x.count_ones()).sum();
                reps.push((idx, bits, w));
            }
        }
        ControlFlow::Continue(())
    })?;
    let mut by_weight: Vec<usize> = (0..reps.len()).collect();
    by_weight.sort_by_key(|&i| (reps[i].2, reps[i].0));
    let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    for (ci, (idx, bits, w)) in reps.iter().enumerate() {
        let mut first: Option<u64> = None;
        for &j in &by_weight {
            let (jdx, jbits, jw) = &reps[j];
            if jw > w {
                break;
            }
            // distinct representatives are never proportional
            if j != ci && subset(jbits, bits) && first.is_none_or(|f| *jdx < f) {
                first = Some(*jdx);
            }
        }
        if let Some(sub) = first {
            let message = code.message(*idx);
            let sub_message = code.message(sub);
            return Ok(Certificate {
                verdict: Verdict::NotMinimal,
                method: Method::BruteForce,
                witness: Some(Witness::Codewords {
                    codeword: code.encode(&message),
                    sub_codeword: code.encode(&sub_message),
                    message,
                    sub_message,
                }),
            });
        }
    }
    Ok(Certificate::plain(Verdict::Minimal, Method::BruteForce))
}

/// The weight-ratio test `d / w > (q - 1) / q` over the code's own alphabet.
pub fn ab_condition(code: &LinearCode) -> Result<Certificate> {
    let wd = code.weight_distribution()?;
    let d = wd.min_weight().unwrap_or(0) as u64;
    let w = wd.max_weight() as u64;
    let verdict = if ratio_exceeds(d, w, code.q()) { Verdict::CertifiedMinimal } else { Verdict::Inconclusive };
    Ok(Certificate::plain(verdict, Method::ABCondition))
}

/// The weight-ratio test against a subfield order `q`, as a condition on an
/// outer code over GF(q^k) for concatenation.
///
/// When enumeration is out of reach and the code is known to be MDS, `D` is
/// `N - K + 1` and `W` is bounded by `N`.
pub fn outer_ab(code: &LinearCode, q: u64) -> Result<Certificate> {
    if !is_power_of(code.q(), q) {
        return Err(Error::FieldMismatch("outer field order is not a power of the base order"));
    }
    let verdict = match code.weight_distribution() {
        Ok(wd) => ratio_exceeds(wd.min_weight().unwrap_or(0) as u64, wd.max_weight() as u64, q),
        Err(Error::TooLarge { .. }) if code.is_known_mds() => {
            let n = code.n() as u64;
            ratio_exceeds(n - code.k() as u64 + 1, n, q)
        }
        Err(e) => return Err(e),
    };
    let verdict = if verdict { Verdict::CertifiedMinimal } else { Verdict::Inconclusive };
    Ok(Certificate::plain(verdict, Method::OuterAB))
}

fn is_power_of(big: u64, base: u64) -> bool {
    if base < 2 {
        return false;
    }
    let mut x = base;
    while x < big {
        match x.checked_mul(base) {
            Some(y) => x = y,
            None => return false,
        }
    }
    x == big
}
