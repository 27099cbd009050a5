//! Non-normal slc germs glued from one or two cyclic quotient components.

use serde::Serialize;

use crate::error::{bad, Error, Result};
use crate::germs::{classify_lc_germ, CyclicQuotientGerm, GermTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trichotomy {
    /// The point is an lc center and `2(K_S + Δ)` is Cartier.
    LcCenterCase,
    /// Not an lc center; two plt components glued along their conductors.
    TwoComponentPlt,
    /// Not an lc center; one plt component glued to itself by an involution.
    OneComponentPlt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassGroup {
    /// `δ(C_1, C_2) = (C_1·D_1) - (C_2·D_2)` maps onto a rank-one group
    /// with torsion kernel.
    RankOne,
    Torsion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonNormalGerm {
    pub components: Vec<CyclicQuotientGerm>,
    pub trichotomy: Trichotomy,
    /// Not labelled in the lc-center case.
    pub class_group: Option<ClassGroup>,
    /// Reported only in the lc-center case, where it is 2.
    pub cartier_index: Option<u64>,
    pub tags: Vec<GermTag>,
    pub flags: Vec<String>,
}

/// `(S, Δ)` glued from two plt germs is slc iff the differents on the
/// conductors agree, i.e. `c_1/n_1 = c_2/n_2`.
pub fn check_slc_glue(g1: &CyclicQuotientGerm, g2: &CyclicQuotientGerm) -> Result<bool> {
    Ok(g1.different_coeff()? == g2.different_coeff()?)
}

pub fn classify_nonnormal(components: &[CyclicQuotientGerm], glue_ok: bool) -> Result<NonNormalGerm> {
    if components.is_empty() || components.len() > 2 {
        return Err(bad(format!(
            "a non-normal germ has 1 or 2 components here, got {}",
            components.len()
        )));
    }
    for g in components {
        if !g.conductor().is_one() {
            return Err(Error::NotApplicable(format!(
                "component conductor coefficient is {}, expected 1",
                g.conductor()
            )));
        }
    }
    if !glue_ok {
        return Err(Error::NoGluingMap);
    }
    if let [g1, g2] = components {
        let (left, right) = (g1.different_coeff()?, g2.different_coeff()?);
        if left != right {
            return Err(Error::GlueMismatch { left, right });
        }
    }
    let tags = components
        .iter()
        .map(|g| classify_lc_germ(&g.resolution_graph()?).map(|c| c.tag))
        .collect::<Result<Vec<_>>>()?;
    let mut flags = Vec::new();

    if tags.iter().any(|t| t.is_lc_center_shape()) {
        return Ok(NonNormalGerm {
            components: components.to_vec(),
            trichotomy: Trichotomy::LcCenterCase,
            class_group: None,
            cartier_index: Some(2),
            tags,
            flags,
        });
    }

    match components {
        [g1, g2] => {
            if g1.q() != g2.q() {
                flags.push("q-mismatch".to_string());
            }
            Ok(NonNormalGerm {
                components: components.to_vec(),
                trichotomy: Trichotomy::TwoComponentPlt,
                class_group: Some(ClassGroup::RankOne),
                cartier_index: None,
                tags,
                flags,
            })
        }
        _ => Ok(NonNormalGerm {
            components: components.to_vec(),
            trichotomy: Trichotomy::OneComponentPlt,
            class_group: Some(ClassGroup::Torsion),
            cartier_index: None,
            tags,
            flags,
        }),
    }
}
