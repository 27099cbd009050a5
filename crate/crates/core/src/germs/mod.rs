//! Surface germs: cyclic quotient models, the taxonomy of lc germs with a
//! coefficient-one boundary branch, differents, and non-normal gluing.

mod hj;
mod nonnormal;
mod taxonomy;

pub use hj::{hj_contract, hj_expand, inverse_mod};
pub use nonnormal::{check_slc_glue, classify_nonnormal, ClassGroup, NonNormalGerm, Trichotomy};
pub use taxonomy::{classify_lc_germ, germ_from_plt_chain, GermClass, GermTag, ShapeViolation};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dualgraph::{Attach, ResolutionGraph};
use crate::error::{bad, Error, Result};
use crate::Rat;

/// The quotient `(A², conductor·(y=0) + side·(x=0)) / (1/n)(1, q)`.
///
/// `side = 1 - c` in the usual parametrisation. `side = 1` is accepted and
/// models the cyclic lc-center case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGerm", into = "RawGerm")]
pub struct CyclicQuotientGerm {
    n: u64,
    q: u64,
    conductor: Rat,
    side: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    n: u64,
    q: u64,
    conductor: Rat,
    side: Rat,
}

impl TryFrom<RawGerm> for CyclicQuotientGerm {
    type Error = Error;
    fn try_from(raw: RawGerm) -> Result<Self> {
        CyclicQuotientGerm::new(raw.n, raw.q, raw.conductor, raw.side)
    }
}

impl From<CyclicQuotientGerm> for RawGerm {
    fn from(g: CyclicQuotientGerm) -> Self {
        RawGerm {
            n: g.n,
            q: g.q,
            conductor: g.conductor,
            side: g.side,
        }
    }
}

impl CyclicQuotientGerm {
    pub fn new(n: u64, q: u64, conductor: Rat, side: Rat) -> Result<Self> {
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        if q == 0 || q > n {
            return Err(bad(format!("q = {q} is outside [1, {n}]")));
        }
        if n.gcd(&q) != 1 {
            return Err(bad(format!("gcd(n, q) = gcd({n}, {q}) = {} != 1", n.gcd(&q))));
        }
        if !conductor.in_half_open_unit() {
            return Err(bad(format!("conductor coefficient {conductor} is outside (0, 1]")));
        }
        if side.is_negative() || side > Rat::one() {
            return Err(bad(format!("side coefficient {side} is outside [0, 1]")));
        }
        Ok(CyclicQuotientGerm {
            n,
            q,
            conductor,
            side,
        })
    }

    /// Germ with conductor coefficient 1.
    pub fn plt(n: u64, q: u64, side: Rat) -> Result<Self> {
        Self::new(n, q, Rat::one(), side)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn conductor(&self) -> &Rat {
        &self.conductor
    }

    pub fn side(&self) -> &Rat {
        &self.side
    }

    /// `c = 1 - side`.
    pub fn c(&self) -> Rat {
        Rat::one() - &self.side
    }

    /// `γ = c / n`.
    pub fn gamma(&self) -> Rat {
        self.c() / Rat::integer(self.n as i64)
    }

    fn require_conductor(&self) -> Result<()> {
        if self.conductor.is_one() {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!(
                "conductor coefficient is {}, expected 1",
                self.conductor
            )))
        }
    }

    pub fn resolution_graph(&self) -> Result<ResolutionGraph> {
        let chain = hj_expand(self.n, self.q)?;
        let (first, last) = if chain.is_empty() {
            (Attach::SmoothPoint, Attach::SmoothPoint)
        } else {
            (Attach::Vertex(0), Attach::Vertex(chain.len() - 1))
        };
        let mut g = ResolutionGraph::chain(&chain)?.with_branch(first, self.conductor.clone())?;
        if !self.side.is_zero() {
            g = g.with_branch(last, self.side.clone())?;
        }
        Ok(g)
    }

    /// Coefficient of the origin in the different on the conductor:
    /// `1 - 1/n + (1 - c)/n = 1 - c/n`.
    pub fn different_coeff(&self) -> Result<Rat> {
        self.require_conductor()?;
        Ok(Rat::one() - self.gamma())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(CyclicQuotientGerm::plt(4, 2, r("0")).is_err());
        assert!(CyclicQuotientGerm::plt(3, 4, r("0")).is_err());
        assert!(CyclicQuotientGerm::plt(3, 0, r("0")).is_err());
        assert!(CyclicQuotientGerm::plt(3, 1, r("-1/2")).is_err());
        assert!(CyclicQuotientGerm::plt(3, 1, r("3/2")).is_err());
        assert!(CyclicQuotientGerm::new(3, 1, r("0"), r("0")).is_err());
        assert!(CyclicQuotientGerm::plt(1, 1, r("1")).is_ok());
    }

    #[test]
    fn resolution_graph_examples() {
        let g = CyclicQuotientGerm::plt(1, 1, r("1/2")).unwrap().resolution_graph().unwrap();
        assert!(g.is_empty());
        assert_eq!(g.branches_at(Attach::SmoothPoint).count(), 2);

        let g = CyclicQuotientGerm::plt(5, 2, r("1/2")).unwrap().resolution_graph().unwrap();
        assert_eq!(g.selfints(), &[3, 2]);
        let at0: Vec<_> = g.branches_at(Attach::Vertex(0)).map(|b| b.coeff.clone()).collect();
        let at1: Vec<_> = g.branches_at(Attach::Vertex(1)).map(|b| b.coeff.clone()).collect();
        assert_eq!(at0, vec![r("1")]);
        assert_eq!(at1, vec![r("1/2")]);

        let g = CyclicQuotientGerm::plt(2, 1, r("0")).unwrap().resolution_graph().unwrap();
        assert_eq!(g.selfints(), &[2]);
        assert_eq!(g.branches().len(), 1);
        assert!(g.branches()[0].coeff.is_one());
    }

    #[test]
    fn different_examples() {
        let d = |n, side: &str| CyclicQuotientGerm::plt(n, 1, r(side)).unwrap().different_coeff().unwrap();
        assert_eq!(d(1, "0"), r("0"));
        assert_eq!(d(3, "0"), r("2/3"));
        assert_eq!(d(2, "1/2"), r("3/4"));
    }

    #[test]
    fn different_needs_unit_conductor() {
        let g = CyclicQuotientGerm::new(3, 1, r("1/2"), r("0")).unwrap();
        assert!(matches!(g.different_coeff(), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn different_is_solved_coefficient_next_to_conductor() {
        // (K + D + Σ b E)·D' = deg K_D + b_1, so the different is b at the
        // curve carrying the conductor branch.
        for n in 2..30u64 {
            for q in (1..n).filter(|q| n.gcd(q) == 1) {
                for side in ["0", "1/2", "2/3", "5/7"] {
                    let germ = CyclicQuotientGerm::plt(n, q, r(side)).unwrap();
                    let b = germ.resolution_graph().unwrap().boundary_coefficients().unwrap();
                    assert_eq!(b.coeff(0), &germ.different_coeff().unwrap(), "n={n} q={q} side={side}");
                }
            }
        }
    }

    #[test]
    fn serde_roundtrip_and_validation() {
        let g: CyclicQuotientGerm =
            serde_json::from_str(r#"{"n":5,"q":2,"conductor":"1","side":"1/2"}"#).unwrap();
        assert_eq!(g, CyclicQuotientGerm::plt(5, 2, r("1/2")).unwrap());
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"n":5,"q":2,"conductor":"1","side":"1/2"}"#
        );
        assert!(serde_json::from_str::<CyclicQuotientGerm>(r#"{"n":4,"q":2,"conductor":"1","side":"0"}"#).is_err());
    }
}
