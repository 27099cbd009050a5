//! Hirzebruch–Jung continued fractions `n/q = c_1 - 1/(c_2 - 1/(... - 1/c_k))`.

use num_integer::Integer;

use crate::error::{bad, Result};

/// The Hirzebruch–Jung string resolving `1/n(1, q)`.
pub fn hj_expand(n: u64, q: u64) -> Result<Vec<u32>> {
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    if n == 1 {
        return if q == 1 {
            Ok(Vec::new())
        } else {
            Err(bad(format!("n = 1 requires q = 1, got q = {q}")))
        };
    }
    if q == 0 || q >= n {
        return Err(bad(format!("q = {q} is outside [1, {n})")));
    }
    if n.gcd(&q) != 1 {
        return Err(bad(format!("gcd({n}, {q}) = {} != 1", n.gcd(&q))));
    }
    let (mut num, mut den) = (n, q);
    let mut chain = Vec::new();
    loop {
        let c = num.div_ceil(den);
        chain.push(u32::try_from(c).map_err(|_| bad(format!("entry {c} overflows u32")))?);
        let rem = c * den - num;
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
    }
    Ok(chain)
}

/// Inverse of [`hj_expand`]: evaluates the continued fraction from the tail.
pub fn hj_contract(chain: &[u32]) -> Result<(u64, u64)> {
    if let Some(c) = chain.iter().find(|&&c| c < 2) {
        return Err(bad(format!("Hirzebruch–Jung entries must be >= 2, got {c}")));
    }
    chain.iter().rev().try_fold((1u64, 0u64), |(num, den), &c| {
        let next = u64::from(c)
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or_else(|| bad("continued fraction overflows u64"))?;
        Ok((next, num))
    })
    .map(|(n, q)| if chain.is_empty() { (1, 1) } else { (n, q) })
}

/// `q'` with `q q' ≡ 1 (mod n)`; reversing the chain of `(n, q)` gives the
/// chain of `(n, q')`.
pub fn inverse_mod(n: u64, q: u64) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    let ext = (q as i128).extended_gcd(&(n as i128));
    if ext.gcd != 1 {
        return Err(bad(format!("{q} is not invertible modulo {n}")));
    }
    Ok(ext.x.rem_euclid(n as i128) as u64)
}
