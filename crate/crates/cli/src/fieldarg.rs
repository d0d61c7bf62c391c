//! Parsing of field arguments: `p^m` or a plain prime power `q`.

use concat_blocking_core::gf::{is_prime, prime_factors};

/// `(p, m)` from `"p^m"` or `"q"`.
pub fn parse_field(s: &str) -> Result<(u64, u32), String> {
    let s = s.trim();
    if let Some((p, m)) = s.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| format!("bad characteristic in {s:?}"))?;
        let m: u32 = m.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if m == 0 {
            return Err("exponent must be at least 1".into());
        }
        return Ok((p, m));
    }
    let q: u64 = s.parse().map_err(|_| format!("expected p^m or a prime power, found {s:?}"))?;
    prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))
}

/// `(p, m)` with `p^m = q`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut m = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    Some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_field("2^3"), Ok((2, 3)));
        assert_eq!(parse_field("9"), Ok((3, 2)));
        assert_eq!(parse_field("7"), Ok((7, 1)));
        assert!(parse_field("6").is_err());
        assert!(parse_field("4^2").is_err());
        assert!(parse_field("2^0").is_err());
        assert!(parse_field("x").is_err());
        assert!(parse_field("1").is_err());
    }
}
