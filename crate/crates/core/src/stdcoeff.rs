//! Standard coefficients `{1/2, 2/3, 3/4, ..., 1}` and the coefficient
//! arithmetic behind pluricanonical vanishing with `⌊mΔ⌋`.

use serde::Serialize;

use crate::error::{bad, Result};
use crate::rat::floor_scale;
use crate::Rat;

/// `c = 1` or `c = (k-1)/k` for an integer `k >= 2`.
pub fn is_standard(c: &Rat) -> bool {
    if c.is_one() {
        return true;
    }
    // (k-1)/k is already in lowest terms
    c.is_positive() && c.numer() + 1u32 == *c.denom()
}

fn validate(c: &Rat, m: u64) -> Result<()> {
    if m < 2 {
        return Err(bad(format!("m = {m} but the hypothesis is stated for m >= 2")));
    }
    if !c.in_half_open_unit() {
        return Err(bad(format!("coefficient {c} is outside (0, 1]")));
    }
    Ok(())
}

/// `c` is standard or lies in `[1 - 1/m, 1]`.
pub fn vanishing_hypothesis(c: &Rat, m: u64) -> Result<bool> {
    validate(c, m)?;
    let threshold = Rat::one() - Rat::new(1, m as i64);
    Ok(is_standard(c) || *c >= threshold)
}

/// `0 <= ⌊mc⌋ - (m-1)c <= c`, i.e. the rounded-down part of `mΔ` beyond
/// `(m-1)Δ` is a boundary between 0 and `Δ`.
pub fn bracket_bound_holds(c: &Rat, m: u64) -> bool {
    let excess = Rat::from(floor_scale(m, c)) - c.scale(m.saturating_sub(1));
    !excess.is_negative() && excess <= *c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffCheck {
    pub c: Rat,
    pub m: u64,
    pub standard: bool,
    pub hypothesis_ok: bool,
    pub bracket_ok: bool,
}

pub fn coeff_check(c: &Rat, m: u64) -> Result<CoeffCheck> {
    Ok(CoeffCheck {
        c: c.clone(),
        m,
        standard: is_standard(c),
        hypothesis_ok: vanishing_hypothesis(c, m)?,
        bracket_ok: bracket_bound_holds(c, m),
    })
}

/// Extracting only the first curve over a plt chain point of order `n`
/// whose side branch has coefficient `1 - d`: the curve has discrepancy
/// `-1 + d/n` and enters the new boundary with coefficient `1 - d/n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PltModification {
    pub discrepancy: Rat,
    pub assigned_coeff: Rat,
}

pub fn plt_modification(n: u64, d: &Rat) -> Result<PltModification> {
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    if !d.in_half_open_unit() {
        return Err(bad(format!("d = {d} is outside (0, 1]")));
    }
    let gamma = d / Rat::integer(n as i64);
    Ok(PltModification {
        discrepancy: &gamma - Rat::one(),
        assigned_coeff: Rat::one() - gamma,
    })
}
