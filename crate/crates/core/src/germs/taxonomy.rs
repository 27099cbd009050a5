//! Pattern matching of extended dual graphs against the five shapes of lc
//! germs `(s ∈ S, Θ)` with `s` on a coefficient-one branch:
//!
//! ```text
//! plt chain        • - c_1 - ... - c_n - ⊛          (⊛ optional)
//! cyclic           • - c_1 - ... - c_n - •
//! dihedral         • - c_1 - ... - c_n <  two prongs, each a (-2)-curve
//!                                          or a ⊛ branch of coefficient 1/2
//! ```
//!
//! In the dihedral shapes `c_n = 1` is allowed unless both prongs are curves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dualgraph::{Attach, LogCanonicalClass, ResolutionGraph, VertexId};
use crate::error::{Error, Result};
use crate::germs::{hj_contract, CyclicQuotientGerm};
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GermTag {
    #[serde(rename = "PLT_CHAIN")]
    PltChain,
    #[serde(rename = "CYCLIC_NONPLT")]
    CyclicNonplt,
    /// Both prongs are (-2)-curves.
    #[serde(rename = "DIHEDRAL_31")]
    Dihedral31,
    /// One (-2)-curve prong and one half-coefficient branch.
    #[serde(rename = "DIHEDRAL_32")]
    Dihedral32,
    /// Both prongs are half-coefficient branches.
    #[serde(rename = "DIHEDRAL_33")]
    Dihedral33,
    #[serde(rename = "UNCLASSIFIED")]
    Unclassified,
}

impl GermTag {
    /// Descriptive name of the matched shape, used in reports.
    pub fn case_label(self) -> &'static str {
        match self {
            GermTag::PltChain => "plt_chain",
            GermTag::CyclicNonplt => "cyclic_lc_center",
            GermTag::Dihedral31 => "dihedral_two_curves",
            GermTag::Dihedral32 => "dihedral_curve_and_branch",
            GermTag::Dihedral33 => "dihedral_two_branches",
            GermTag::Unclassified => "unclassified",
        }
    }

    pub fn is_lc_center_shape(self) -> bool {
        matches!(
            self,
            GermTag::CyclicNonplt | GermTag::Dihedral31 | GermTag::Dihedral32 | GermTag::Dihedral33
        )
    }
}

/// The diagram constraint an unclassified graph breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    TooManyUnitBranches(usize),
    SmoothPointBranches(Vec<Rat>),
    HighDegree { vertex: VertexId, degree: usize },
    SeveralForks(Vec<VertexId>),
    UnitBranchNotAtEnd,
    SelfIntersectionOne { vertex: VertexId },
    Prong { vertex_or_branch: String, reason: String },
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeViolation::TooManyUnitBranches(k) => {
                write!(f, "{k} coefficient-one branches; at most 2 fit a chain and 1 a fork")
            }
            ShapeViolation::SmoothPointBranches(cs) => {
                let list: Vec<String> = cs.iter().map(Rat::to_string).collect();
                write!(f, "branch coefficients [{}] at a smooth point match no shape", list.join(", "))
            }
            ShapeViolation::HighDegree { vertex, degree } => {
                write!(f, "vertex {vertex} meets {degree} curves or branches; at most 3 allowed")
            }
            ShapeViolation::SeveralForks(vs) => write!(f, "more than one fork vertex: {vs:?}"),
            ShapeViolation::UnitBranchNotAtEnd => {
                write!(f, "the coefficient-one branch is not at the end of the chain")
            }
            ShapeViolation::SelfIntersectionOne { vertex } => {
                write!(f, "vertex {vertex} is a (-1)-curve in a position that requires c >= 2")
            }
            ShapeViolation::Prong {
                vertex_or_branch,
                reason,
            } => write!(f, "fork prong {vertex_or_branch}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermClass {
    pub tag: GermTag,
    /// `γ = c/n`, present for plt chains.
    pub gamma: Option<Rat>,
    pub cartier_index: u64,
    #[serde(serialize_with = "serialize_violation")]
    pub violation: Option<ShapeViolation>,
}

fn serialize_violation<S: serde::Serializer>(
    v: &Option<ShapeViolation>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

enum Shape {
    PltChain { chain: Vec<VertexId>, side: Rat },
    Other(GermTag),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Vertex(VertexId),
    Branch(usize),
}

struct Extended<'a> {
    g: &'a ResolutionGraph,
    adj: Vec<Vec<Node>>,
}

impl<'a> Extended<'a> {
    fn new(g: &'a ResolutionGraph) -> Self {
        let mut adj: Vec<Vec<Node>> = (0..g.num_vertices())
            .map(|v| g.neighbors(v).into_iter().map(Node::Vertex).collect())
            .collect();
        for (i, br) in g.branches().iter().enumerate() {
            if let Attach::Vertex(v) = br.attach {
                adj[v].push(Node::Branch(i));
            }
        }
        Extended { g, adj }
    }

    fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    fn is_unit(&self, node: Node) -> bool {
        matches!(node, Node::Branch(i) if self.g.branches()[i].coeff.is_one())
    }

    /// Walks away from `from` through `start` until a leaf.
    fn arm(&self, from: VertexId, start: Node) -> Vec<Node> {
        let mut arm = vec![start];
        let (mut prev, mut cur) = (from, start);
        while let Node::Vertex(v) = cur {
            let next = self.adj[v].iter().copied().find(|&n| n != Node::Vertex(prev));
            match next {
                Some(n) => {
                    arm.push(n);
                    prev = v;
                    cur = n;
                }
                None => break,
            }
        }
        arm
    }
}

fn require_c_at_least_two(g: &ResolutionGraph, vertices: &[VertexId]) -> Result<(), ShapeViolation> {
    match vertices.iter().find(|&&v| g.selfint(v) < 2) {
        Some(&vertex) => Err(ShapeViolation::SelfIntersectionOne { vertex }),
        None => Ok(()),
    }
}

fn match_smooth_point(g: &ResolutionGraph) -> Result<Shape, ShapeViolation> {
    let mut cs: Vec<Rat> = g.branches().iter().map(|b| b.coeff.clone()).collect();
    cs.sort();
    cs.reverse();
    let one = Rat::one();
    let half = Rat::half();
    match cs.as_slice() {
        [a] if *a == one => Ok(Shape::PltChain { chain: vec![], side: Rat::zero() }),
        [a, b] if *a == one && *b < one => Ok(Shape::PltChain { chain: vec![], side: b.clone() }),
        [a, b] if *a == one && *b == one => Ok(Shape::Other(GermTag::CyclicNonplt)),
        [a, b, c] if *a == one && *b == half && *c == half => Ok(Shape::Other(GermTag::Dihedral33)),
        _ => Err(ShapeViolation::SmoothPointBranches(cs)),
    }
}

fn match_shape(g: &ResolutionGraph) -> Result<Shape, ShapeViolation> {
    if g.is_empty() {
        return match_smooth_point(g);
    }
    let units = g.branches().iter().filter(|b| b.coeff.is_one()).count();
    if units > 2 {
        return Err(ShapeViolation::TooManyUnitBranches(units));
    }
    let ext = Extended::new(g);
    let n = g.num_vertices();
    if let Some(v) = (0..n).find(|&v| ext.degree(v) > 3) {
        return Err(ShapeViolation::HighDegree { vertex: v, degree: ext.degree(v) });
    }
    let forks: Vec<VertexId> = (0..n).filter(|&v| ext.degree(v) == 3).collect();
    match forks.as_slice() {
        [] => match_chain(g, &ext, units),
        [f] => match_fork(g, &ext, *f, units),
        _ => Err(ShapeViolation::SeveralForks(forks)),
    }
}

fn match_chain(g: &ResolutionGraph, ext: &Extended, units: usize) -> Result<Shape, ShapeViolation> {
    // Without an extended fork the graph itself is a path; order it from
    // one end.
    let start = (0..g.num_vertices())
        .find(|&v| g.neighbors(v).len() <= 1)
        .expect("a finite tree has a leaf");
    let mut chain = vec![start];
    while let Some(next) = g
        .neighbors(*chain.last().unwrap())
        .into_iter()
        .find(|w| chain.len() < 2 || chain[chain.len() - 2] != *w)
    {
        chain.push(next);
    }
    require_c_at_least_two(g, &chain)?;
    if units == 2 {
        return Ok(Shape::Other(GermTag::CyclicNonplt));
    }
    let unit_at = |v: VertexId| ext.adj[v].iter().any(|&node| ext.is_unit(node));
    if !unit_at(chain[0]) {
        chain.reverse();
    }
    if !unit_at(chain[0]) {
        return Err(ShapeViolation::UnitBranchNotAtEnd);
    }
    let last = *chain.last().unwrap();
    let side = g
        .branches_at(Attach::Vertex(last))
        .find(|b| !b.coeff.is_one())
        .map(|b| b.coeff.clone())
        .unwrap_or_else(Rat::zero);
    Ok(Shape::PltChain { chain, side })
}

fn match_fork(
    g: &ResolutionGraph,
    ext: &Extended,
    fork: VertexId,
    units: usize,
) -> Result<Shape, ShapeViolation> {
    if units != 1 {
        return Err(ShapeViolation::TooManyUnitBranches(units));
    }
    let arms: Vec<Vec<Node>> = ext.adj[fork].iter().map(|&n| ext.arm(fork, n)).collect();
    let tail = arms
        .iter()
        .position(|arm| ext.is_unit(*arm.last().unwrap()))
        .ok_or(ShapeViolation::UnitBranchNotAtEnd)?;
    let tail_vertices: Vec<VertexId> = arms[tail]
        .iter()
        .filter_map(|n| match n {
            Node::Vertex(v) => Some(*v),
            Node::Branch(_) => None,
        })
        .collect();
    require_c_at_least_two(g, &tail_vertices)?;

    let half = Rat::half();
    let mut curve_prongs = 0;
    for arm in arms.iter().enumerate().filter(|(i, _)| *i != tail).map(|(_, a)| a) {
        match arm.as_slice() {
            [Node::Vertex(w)] if g.selfint(*w) == 2 => curve_prongs += 1,
            [Node::Vertex(w)] => {
                return Err(ShapeViolation::Prong {
                    vertex_or_branch: format!("vertex {w}"),
                    reason: format!("c = {} but a prong curve must have c = 2", g.selfint(*w)),
                })
            }
            [Node::Branch(i)] if g.branches()[*i].coeff == half => {}
            [Node::Branch(i)] => {
                return Err(ShapeViolation::Prong {
                    vertex_or_branch: format!("branch {i}"),
                    reason: format!(
                        "coefficient {} but a prong branch must have coefficient 1/2",
                        g.branches()[*i].coeff
                    ),
                })
            }
            longer => {
                let head = match longer[0] {
                    Node::Vertex(v) => format!("vertex {v}"),
                    Node::Branch(i) => format!("branch {i}"),
                };
                return Err(ShapeViolation::Prong {
                    vertex_or_branch: head,
                    reason: format!("arm of length {} but prongs are single nodes", longer.len()),
                });
            }
        }
    }
    let tag = match curve_prongs {
        2 => {
            require_c_at_least_two(g, &[fork])?;
            GermTag::Dihedral31
        }
        1 => GermTag::Dihedral32,
        _ => GermTag::Dihedral33,
    };
    Ok(Shape::Other(tag))
}

/// Returns the Cartier index of an admissible pair.
fn check_preconditions(g: &ResolutionGraph) -> Result<u64> {
    let (class, index) = g.class_and_cartier_index()?;
    if !matches!(class, LogCanonicalClass::Plt | LogCanonicalClass::LcCenter) {
        return Err(Error::NotApplicable(format!(
            "germ classification needs a plt or lc-center pair, got {class:?}"
        )));
    }
    if !g.branches().iter().any(|b| b.coeff.is_one()) {
        return Err(Error::NotApplicable(
            "germ classification needs a coefficient-one branch through the point".into(),
        ));
    }
    Ok(index.expect("plt and lc-center pairs have an index"))
}

fn plt_germ(g: &ResolutionGraph, chain: &[VertexId], side: Rat) -> Result<CyclicQuotientGerm> {
    let labels: Vec<u32> = chain.iter().map(|&v| g.selfint(v)).collect();
    let (n, q) = hj_contract(&labels)?;
    CyclicQuotientGerm::plt(n, q, side)
}

/// Matches `g` against the five shapes. The Cartier index is always the
/// one computed from the solved dual graph.
pub fn classify_lc_germ(g: &ResolutionGraph) -> Result<GermClass> {
    let cartier_index = check_preconditions(g)?;
    let class = match match_shape(g) {
        Ok(Shape::PltChain { chain, side }) => {
            let germ = plt_germ(g, &chain, side)?;
            GermClass {
                tag: GermTag::PltChain,
                gamma: Some(Rat::one() - germ.different_coeff()?),
                cartier_index,
                violation: None,
            }
        }
        Ok(Shape::Other(tag)) => GermClass {
            tag,
            gamma: None,
            cartier_index,
            violation: None,
        },
        Err(v) => GermClass {
            tag: GermTag::Unclassified,
            gamma: None,
            cartier_index,
            violation: Some(v),
        },
    };
    Ok(class)
}

/// Recovers the cyclic quotient model of a graph of plt-chain shape, with
/// the conductor at the first curve of the chain.
pub fn germ_from_plt_chain(g: &ResolutionGraph) -> Result<CyclicQuotientGerm> {
    check_preconditions(g)?;
    match match_shape(g) {
        Ok(Shape::PltChain { chain, side }) => plt_germ(g, &chain, side),
        Ok(Shape::Other(tag)) => Err(Error::NotApplicable(format!(
            "graph has shape {tag:?}, not a plt chain"
        ))),
        Err(v) => Err(Error::NotApplicable(v.to_string())),
    }
}
