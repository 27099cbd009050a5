//! Degree bookkeeping for Poincaré residue maps
//! `res^m: ω_S^[m](mD + ⌊mΔ⌋)|_D → ω_D^m(⌊m·Diff_D Δ⌋)` at the origin of `D`.
//!
//! Only exponents of the marked point are tracked; signs never affect
//! surjectivity and are dropped.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{bad, Error, Result};
use crate::germs::{check_slc_glue, CyclicQuotientGerm};
use crate::rat::{ceil_scale, floor_scale};
use crate::Rat;

/// One row of the residue table of a plt chain germ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub m: u64,
    /// `⌈mγ⌉`, the `z`-exponent of the restricted invariant generator.
    pub source_exponent: i64,
    /// `⌊m(1 - γ)⌋`, the twist of the target at the origin.
    pub target_exponent: i64,
    pub surjective: bool,
    /// Target twist minus image twist.
    pub deficit: u64,
}

fn to_i64(x: num_bigint::BigInt) -> i64 {
    x.to_i64().expect("exponent bounded by m fits in i64")
}

fn require_m(m: u64) -> Result<()> {
    if m == 0 {
        Err(bad("m must be >= 1"))
    } else {
        Ok(())
    }
}

/// Residue map of a plt chain germ in degree `m`. The invariant generator
/// `x^{n⌈mc/n⌉}` restricts to `z^{⌈mγ⌉}(dz/z)^m` on the conductor, so its
/// image has twist `m - ⌈mγ⌉` against a target twist of `⌊m(1-γ)⌋`.
pub fn single_branch_report(m: u64, germ: &CyclicQuotientGerm) -> Result<ResidueReport> {
    require_m(m)?;
    if !germ.conductor().is_one() {
        return Err(Error::NotApplicable(format!(
            "conductor coefficient is {}, expected 1",
            germ.conductor()
        )));
    }
    let gamma = germ.gamma();
    let source = to_i64(ceil_scale(m, &gamma));
    let target = to_i64(floor_scale(m, &germ.different_coeff()?));
    let image = m as i64 - source;
    let deficit = (target - image).max(0) as u64;
    Ok(ResidueReport {
        m,
        source_exponent: source,
        target_exponent: target,
        surjective: image == target,
        deficit,
    })
}

fn validate_coeffs(coeffs: &[Rat]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(bad("at least one boundary coefficient is required"));
    }
    if let Some(c) = coeffs.iter().find(|c| !c.in_open_unit()) {
        return Err(bad(format!("coefficient {c} is outside (0, 1)")));
    }
    Ok(())
}

/// `⌊m Σ c_i⌋ - Σ ⌊m c_i⌋` for lines `C_i` through a smooth point; the
/// residue map onto the transversal line is surjective iff this is 0.
pub fn multibranch_deficit(m: u64, coeffs: &[Rat]) -> Result<u64> {
    require_m(m)?;
    validate_coeffs(coeffs)?;
    let total: Rat = coeffs.iter().sum();
    let separate: num_bigint::BigInt = coeffs.iter().map(|c| floor_scale(m, c)).sum();
    let deficit = floor_scale(m, &total) - separate;
    Ok(deficit.to_u64().expect("floor is superadditive"))
}

/// Smallest `m >= 1` with a positive multibranch deficit. The search stops
/// at the denominator of `Σ c_i`: either that `m` already fails, or the
/// inverse of the numerator modulo it does.
pub fn find_failure_m(coeffs: &[Rat]) -> Result<Option<u64>> {
    validate_coeffs(coeffs)?;
    if coeffs.len() < 2 {
        return Err(bad("a failure needs at least two boundary branches"));
    }
    let total: Rat = coeffs.iter().sum();
    let bound = failure_search_bound(&total)?;
    for m in 1..=bound {
        if multibranch_deficit(m, coeffs)? > 0 {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Denominator of the total coefficient, the cap of [`find_failure_m`].
pub fn failure_search_bound(total: &Rat) -> Result<u64> {
    total
        .denom_u64()
        .ok_or_else(|| bad(format!("denominator of {total} overflows u64")))
}

/// Twist at the origin of the image of `res^m` in the dihedral case with
/// `Δ = 0`: `m` for even `m`, `m - 1` for odd `m`.
pub fn dihedral_image_twist(m: u64) -> Result<u64> {
    require_m(m)?;
    Ok(m - m % 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DihedralResidue {
    pub m: u64,
    pub image_twist: u64,
    /// `⌊m · 1⌋ = m`, since the different is `[s]`.
    pub target_twist: u64,
    pub surjective: bool,
}

pub fn dihedral_residue(m: u64) -> Result<DihedralResidue> {
    let image_twist = dihedral_image_twist(m)?;
    Ok(DihedralResidue {
        m,
        image_twist,
        target_twist: m,
        surjective: image_twist == m,
    })
}

/// Coefficient of `[s]` in `(mK_S + mD + ⌊m(1-c)⌋C)|_D` on the `1/n(1,1)`
/// model, using `K_S + D|_D = K_D + (1 - 1/n)[s]` and `C|_D = (1/n)[s]`:
/// `m(1 - 1/n) + ⌊m(1-c)⌋/n`. Only `m = 2` with `c < 1/2` is the classical
/// computation; other values extend it and should be reported as such.
pub fn glued_restriction_coeff(m: u64, n: u64, c: &Rat) -> Result<Rat> {
    require_m(m)?;
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    if !c.in_open_unit() {
        return Err(bad(format!("c = {c} is outside (0, 1)")));
    }
    let n_rat = Rat::integer(n as i64);
    let m_rat = Rat::integer(m as i64);
    let rounded = Rat::from(floor_scale(m, &(Rat::one() - c)));
    Ok(m_rat * (Rat::one() - n_rat.recip()) + rounded / n_rat)
}

/// True when the restriction coefficient is one of the classical values
/// rather than an extension of them.
pub fn restriction_is_classical(m: u64, c: &Rat) -> bool {
    m == 2 && *c < Rat::half()
}

/// Whether `mK_S + ⌊mΔ⌋` restricts to the same divisor from both sides of
/// the glued conductor, for two `γ`-matched `1/n(1,1)` germs.
pub fn glued_mcartier(m: u64, g1: &CyclicQuotientGerm, g2: &CyclicQuotientGerm) -> Result<bool> {
    for g in [g1, g2] {
        if g.q() != 1 {
            return Err(Error::NotApplicable(format!(
                "glued restriction needs 1/n(1,1) models, got q = {}",
                g.q()
            )));
        }
    }
    if !check_slc_glue(g1, g2)? {
        return Err(Error::GlueMismatch {
            left: g1.different_coeff()?,
            right: g2.different_coeff()?,
        });
    }
    let left = glued_restriction_coeff(m, g1.n(), &g1.c())?;
    let right = glued_restriction_coeff(m, g2.n(), &g2.c())?;
    Ok(left == right)
}

/// Restriction twists of `ω_S` on the three components `S_1, T, S_2` of two
/// dihedral germs glued to the coordinate plane `T` along its axes:
/// `ω_S|_{S_i} ≅ ω_{S_i}(B_i)` but `ω_S|_T ≅ ω_T(C_1 + C_2)(-[s])`.
pub const DIHEDRAL_CHAIN_GLUE_TWISTS: [(&str, i64); 3] = [("S_1", 0), ("T", -1), ("S_2", 0)];
