//! Closed-form size bounds and parameter formulas.
//!
//! Integer formulas use exact (checked) integer arithmetic; real-valued ones
//! use `f64`, compared with a tolerance of [`TOLERANCE`].

use alloc::vec::Vec;

use crate::combin::{binomial, checked_pow};
use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;

/// Lower bound `(q+1)(k-1)` on the size of a strong blocking set in PG(k-1, q).
pub fn sbs_lower_bound(k: u64, q: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::BadDim(k as usize));
    }
    (q + 1).checked_mul(k - 1).ok_or(Error::Overflow)
}

/// Upper bound on the smallest strong blocking set in PG(k-1, q).
///
/// Binary: `⌊(2k-1) / log₂(4/3)⌋`. Otherwise
/// `(q+1) ⌈2(k-1) / (1 + 1/((q+1)² ln q))⌉`.
pub fn sbs_upper_bound(k: u64, q: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::BadDim(k as usize));
    }
    if q == 2 {
        let v = (2 * k - 1) as f64 / libm::log2(4.0 / 3.0);
        return Ok(libm::floor(v) as u64);
    }
    let qf = q as f64;
    let factor = 2.0 / (1.0 + 1.0 / ((qf + 1.0) * (qf + 1.0) * libm::log(qf)));
    let c = libm::ceil(factor * (k - 1) as f64) as u64;
    (q + 1).checked_mul(c).ok_or(Error::Overflow)
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`, with `0 log 0 = 0`.
pub fn q_entropy(q: u64, x: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::DomainError("entropy base must be at least 2"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError("entropy argument must lie in [0, 1]"));
    }
    let ln_q = libm::log(q as f64);
    let xlogx = |t: f64| if t == 0.0 { 0.0 } else { t * libm::log(t) };
    Ok((x * libm::log((q - 1) as f64) - xlogx(x) - xlogx(1.0 - x)) / ln_q)
}

/// Rate `1 - H_q(δ)` guaranteed by the Gilbert-Varshamov bound.
pub fn gv_rate(q: u64, delta: f64) -> Result<f64> {
    Ok(1.0 - q_entropy(q, delta)?)
}

/// Strong blocking set size `k q^(1+2ε) (q+1) / (1-ε)` obtained from a
/// Gilbert-Varshamov outer code over GF(q²) and the simplex inner code.
pub fn gv_sbs_size(q: u64, epsilon: f64, k: u64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::DomainError("epsilon must lie in (0, 1)"));
    }
    let qf = q as f64;
    Ok(k as f64 * libm::pow(qf, 1.0 + 2.0 * epsilon) * (qf + 1.0) / (1.0 - epsilon))
}

/// Parameters of the concatenated codes built from the Garcia-Stichtenoth
/// tower over GF(q₀^(2h)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerParams {
    pub q0: u64,
    pub h: u32,
    pub n: u32,
    /// Outer length `q^(n+1) - q^n - 1`, `q = q₀^h`.
    pub big_n: u128,
    /// Genus of the n-th function field.
    pub lambda: u128,
    /// `⌊(N-1)/q₀⌋`.
    pub m: u128,
    /// Outer dimension `m - λ + 1`.
    pub k: u128,
    /// Outer distance bound `N - m`.
    pub outer_distance: u128,
    pub concat_len: u128,
    pub concat_dim: u128,
    /// `q₀^(2h-1) N (1 - 1/q₀) = q₀^(2h-2) N (q₀-1)`.
    pub concat_dist_lb: u128,
    /// `4m - 4λ + 4`, defined for `h = 2`.
    pub big_k: Option<u128>,
}

impl TowerParams {
    /// Length, dimension and distance bound when the outer code is
    /// concatenated with an arbitrary `[n, k, d]` inner code.
    pub fn with_inner(&self, n: u128, k: u128, d: u128) -> Result<(u128, u128, u128)> {
        let ov = Error::Overflow;
        Ok((
            self.big_n.checked_mul(n).ok_or(ov.clone())?,
            self.k.checked_mul(k).ok_or(ov.clone())?,
            self.outer_distance.checked_mul(d).ok_or(ov)?,
        ))
    }

    /// The size bound for `h = 2`, in its exact and simplified forms.
    pub fn particular_size_bounds(&self) -> Option<(f64, f64)> {
        let big_k = self.big_k? as f64;
        let q = self.q0 as f64;
        let exact = q * (libm::pow(q, 4.0) - 1.0) * (q + 1.0) / (4.0 * (q * q - q + 1.0)) * big_k;
        let simple = q * (q * q * q + 2.0 * q * q + q - 1.0) / 4.0 * big_k;
        Some((exact, simple))
    }
}

pub fn tower_params(q0: u64, h: u32, n: u32) -> Result<TowerParams> {
    if h < 2 {
        return Err(Error::BadParams("the tower construction needs h >= 2"));
    }
    if q0 < 2 || n < 1 {
        return Err(Error::BadParams("need q0 >= 2 and n >= 1"));
    }
    let pw = |e: u32| -> Result<u128> { (q0 as u128).checked_pow(e).ok_or(Error::Overflow) };
    let mul = |a: u128, b: u128| a.checked_mul(b).ok_or(Error::Overflow);
    let big_n = pw(h * (n + 1))? - pw(h * n)? - 1;
    let lambda = if n % 2 == 0 {
        let t = pw(n * h / 2)? - 1;
        mul(t, t)?
    } else {
        mul(pw((n + 1) * h / 2)? - 1, pw((n - 1) * h / 2)? - 1)?
    };
    let m = (big_n - 1) / q0 as u128;
    if m + 1 < lambda {
        return Err(Error::BadParams("genus exceeds the divisor degree"));
    }
    let k = m - lambda + 1;
    let inner_len = (pw(2 * h)? - 1) / (q0 as u128 - 1);
    Ok(TowerParams {
        q0,
        h,
        n,
        big_n,
        lambda,
        m,
        k,
        outer_distance: big_n - m,
        concat_len: mul(big_n, inner_len)?,
        concat_dim: mul(2 * h as u128, k)?,
        concat_dist_lb: mul(mul(pw(2 * h - 2)?, big_n)?, q0 as u128 - 1)?,
        big_k: (h == 2).then(|| 4 * m - 4 * lambda + 4),
    })
}

/// `(N, D) = (qK - q + 1, (q-1)(K-1) + 1)`.
pub fn mds_outer_params(q: u64, k: u64) -> Result<(u64, u64)> {
    if q < 2 || k < 1 {
        return Err(Error::BadParams("need q >= 2 and K >= 1"));
    }
    let n = q.checked_mul(k).ok_or(Error::Overflow)? - q + 1;
    Ok((n, (q - 1) * (k - 1) + 1))
}

/// Parameters of the RT4 two-weight code over GF(q₀).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rt4Params {
    pub n: u64,
    pub dim: u32,
    pub d: u64,
    pub w: u64,
    /// `d / w = q₀² / (q₀² + 1)`, as `(numerator, denominator)`.
    pub ratio: (u64, u64),
}

pub fn rt4_params(q0: u64) -> Result<Rt4Params> {
    if q0 < 2 {
        return Err(Error::BadParams("need q0 >= 2"));
    }
    let p = |e: u32| checked_pow(q0, e).ok_or(Error::Overflow);
    let n = (p(5)? - 1) / (q0 - 1) * (p(2)? + 1);
    Ok(Rt4Params { n, dim: 10, d: p(6)?, w: p(6)? + p(4)?, ratio: (p(2)?, p(2)? + 1) })
}

/// Supremum of admissible `ε`: `1 - 1/(q₀^h - 1) - (1/D̃)(1 - 1/q₀)` with
/// `D̃ = d/w` of the inner code.
pub fn epsilon_limit(q0: u64, h: u32, d: u64, w: u64) -> Result<f64> {
    if w == 0 || d == 0 {
        return Err(Error::DomainError("inner weights must be positive"));
    }
    let qh = libm::pow(q0 as f64, h as f64);
    let inv_ratio = w as f64 / d as f64;
    Ok(1.0 - 1.0 / (qh - 1.0) - inv_ratio * (1.0 - 1.0 / q0 as f64))
}

/// `(K_{h,n}, size bound)` for an inner `[ñ, 2h, d]` code with maximum weight
/// `w` and a chosen `ε` below [`epsilon_limit`].
pub fn general_size_bound(q0: u64, h: u32, n: u32, inner_n: u64, d: u64, w: u64, epsilon: f64) -> Result<(u128, f64)> {
    let limit = epsilon_limit(q0, h, d, w)?;
    if !(epsilon > 0.0 && epsilon < limit) {
        return Err(Error::DomainError("epsilon outside the admissible interval"));
    }
    let t = tower_params(q0, h, n)?;
    let factor = 1.0 - (w as f64 / d as f64) * (1.0 - 1.0 / q0 as f64);
    let big_k = libm::floor(t.big_n as f64 * factor - 1.0);
    if big_k < 1.0 {
        return Err(Error::DomainError("dimension bound is not positive"));
    }
    let big_k = big_k as u128;
    Ok((big_k, inner_n as f64 / (2.0 * h as f64 * epsilon) * big_k as f64))
}

/// Bounds on the smallest ρ-saturating set in PG(k-1, q^(ρ+1)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaturatingBounds {
    /// `(ρ+1)/e · q^(k-1-ρ)`.
    pub lower: f64,
    /// `ρ(ρ+1) (q^(k-1-ρ)/2 + (q^(k-1-ρ) - 1)/(q-1))`.
    pub upper: f64,
    /// `q C(k-1, 2) + (k-1)(k-2)`, the `ρ = k-2` form.
    pub special: u128,
}

pub fn saturating_bounds(k: u64, q: u64, rho: u64) -> Result<SaturatingBounds> {
    if q < 2 || rho < 1 || k < 3 || rho > k - 2 {
        return Err(Error::BadParams("need q >= 2 and 1 <= rho <= k - 2"));
    }
    let qf = q as f64;
    let t = libm::pow(qf, (k - 1 - rho) as f64);
    let r = rho as f64;
    let lower = (r + 1.0) / core::f64::consts::E * t;
    let upper = r * (r + 1.0) * (t / 2.0 + (t - 1.0) / (qf - 1.0));
    let special = (q as u128)
        .checked_mul(binomial(k - 1, 2))
        .and_then(|a| a.checked_add((k as u128 - 1) * (k as u128 - 2)))
        .ok_or(Error::Overflow)?;
    Ok(SaturatingBounds { lower, upper, special })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Int(u128),
    Real(f64),
}

/// Named results of a bound computation, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundsReport {
    pub context: Vec<(&'static str, u64)>,
    pub values: Vec<(&'static str, Value)>,
}

impl BoundsReport {
    pub fn get(&self, name: &str) -> Option<Value> {
        self.values.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

pub fn sbs_report(k: u64, q: u64) -> Result<BoundsReport> {
    Ok(BoundsReport {
        context: alloc::vec![("k", k), ("q", q)],
        values: alloc::vec![
            ("lower", Value::Int(sbs_lower_bound(k, q)? as u128)),
            ("upper", Value::Int(sbs_upper_bound(k, q)? as u128)),
        ],
    })
}

pub fn tower_report(q0: u64, h: u32, n: u32) -> Result<BoundsReport> {
    let t = tower_params(q0, h, n)?;
    let mut values = alloc::vec![
        ("N", Value::Int(t.big_n)),
        ("lambda", Value::Int(t.lambda)),
        ("m", Value::Int(t.m)),
        ("k", Value::Int(t.k)),
        ("outer_distance", Value::Int(t.outer_distance)),
        ("concat_len", Value::Int(t.concat_len)),
        ("concat_dim", Value::Int(t.concat_dim)),
        ("concat_dist_lb", Value::Int(t.concat_dist_lb)),
    ];
    if let Some(big_k) = t.big_k {
        values.push(("K", Value::Int(big_k)));
    }
    if let Some((exact, simple)) = t.particular_size_bounds() {
        values.push(("sbs_size_bound", Value::Real(exact)));
        values.push(("sbs_size_bound_simplified", Value::Real(simple)));
    }
    Ok(BoundsReport { context: alloc::vec![("q0", q0), ("h", h as u64), ("n", n as u64)], values })
}

pub fn saturating_report(k: u64, q: u64, rho: u64) -> Result<BoundsReport> {
    let b = saturating_bounds(k, q, rho)?;
    Ok(BoundsReport {
        context: alloc::vec![("k", k), ("q", q), ("rho", rho)],
        values: alloc::vec![
            ("lower", Value::Real(b.lower)),
            ("upper", Value::Real(b.upper)),
            ("rho_eq_k_minus_2_upper", Value::Int(b.special)),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_ranges() {
        assert_eq!(sbs_upper_bound(9, 2).unwrap(), 40);
        assert_eq!(sbs_upper_bound(12, 2).unwrap(), 55);
        assert_eq!(sbs_upper_bound(6, 3).unwrap(), 40);
        assert_eq!(sbs_upper_bound(8, 2).unwrap(), 36);
        assert_eq!(sbs_lower_bound(6, 2).unwrap(), 15);
        assert_eq!(sbs_lower_bound(4, 3).unwrap(), 12);
        assert_eq!(sbs_lower_bound(2, 7).unwrap(), 8);
        assert_eq!(sbs_lower_bound(1, 2), Err(Error::BadDim(1)));
        assert_eq!(sbs_upper_bound(1, 3), Err(Error::BadDim(1)));
    }

    #[test]
    fn entropy_values() {
        assert!((q_entropy(2, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(q_entropy(3, 0.0).unwrap(), 0.0);
        assert_eq!(gv_rate(3, 0.0).unwrap(), 1.0);
        // maximum at 1 - 1/q
        assert!((q_entropy(4, 0.75).unwrap() - 1.0).abs() < 1e-12);
        assert!(q_entropy(2, 1.5).is_err());
        assert!(q_entropy(2, -0.1).is_err());
    }

    #[test]
    fn tower_example() {
        let t = tower_params(2, 3, 2).unwrap();
        assert_eq!((t.big_n, t.lambda, t.m, t.k), (447, 49, 223, 175));
        assert_eq!(t.outer_distance, 224);
        assert_eq!(t.with_inner(7, 3, 4).unwrap(), (3129, 525, 896));
        assert_eq!(t.big_k, None);
        let t = tower_params(2, 2, 1).unwrap();
        assert_eq!(t.lambda, 0);
        assert_eq!(t.big_n, 11);
        assert_eq!(t.big_k, Some(4 * 5 + 4));
        assert!(tower_params(2, 1, 2).is_err());
    }

    #[test]
    fn mds_and_rt4() {
        assert_eq!(mds_outer_params(2, 3).unwrap(), (5, 3));
        assert_eq!(mds_outer_params(3, 4).unwrap(), (10, 7));
        let r = rt4_params(2).unwrap();
        assert_eq!((r.n, r.dim, r.d, r.w, r.ratio), (155, 10, 64, 80, (4, 5)));
    }

    #[test]
    fn saturating_examples() {
        assert_eq!(saturating_bounds(4, 2, 2).unwrap().special, 12);
        let b = saturating_bounds(3, 2, 1).unwrap();
        assert!((b.lower - 4.0 / core::f64::consts::E).abs() < 1e-12);
        assert!(saturating_bounds(3, 2, 2).is_err());
        assert!(saturating_bounds(3, 2, 0).is_err());
    }

    #[test]
    fn epsilon_interval() {
        // the simplex inner code has d = w, so the limit is 1/q0 - 1/(q0^h - 1)
        let lim = epsilon_limit(2, 3, 4, 4).unwrap();
        assert!((lim - (0.5 - 1.0 / 7.0)).abs() < TOLERANCE);
        assert!(general_size_bound(2, 3, 2, 63, 32, 32, lim + 0.01).is_err());
        let (k, size) = general_size_bound(2, 3, 2, 63, 32, 32, 0.2).unwrap();
        assert_eq!(k, 222);
        assert!((size - 63.0 / 1.2 * 222.0).abs() < 1e-6);
    }
}
