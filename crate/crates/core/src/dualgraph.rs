//! Extended dual graphs of minimal embedded resolutions.
//!
//! A [`ResolutionGraph`] is a tree of smooth rational exceptional curves,
//! each labelled by the positive integer `c` where the curve has
//! self-intersection `-c`, together with the boundary branches that meet
//! the exceptional locus. Solving the zero-intersection system gives the
//! pullback coefficients `b_j` of `K + Θ` (the discrepancy of `E_j` is
//! `-b_j`), from which the log canonical class and the Cartier index are
//! read off.

use std::collections::VecDeque;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::TreeElimination;
use crate::rat::denominator_lcm;
use crate::Rat;

pub type VertexId = usize;

/// Where a boundary branch meets the exceptional locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attach {
    /// The graph is empty and the branch passes through a smooth point.
    SmoothPoint,
    Vertex(VertexId),
}

/// A local branch of the boundary. Coefficient 1 is the `•` marking, a
/// coefficient in `[1/2, 1)` the `⊛` marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryBranch {
    pub attach: Attach,
    pub coeff: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    selfints: Vec<u32>,
    edges: Vec<(VertexId, VertexId)>,
    branches: Vec<BoundaryBranch>,
}

/// A `Q`-divisor supported on the exceptional curves, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDivisor {
    coeffs: Vec<Rat>,
}

impl GraphDivisor {
    pub fn coeff(&self, v: VertexId) -> &Rat {
        &self.coeffs[v]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.coeffs.iter().max()
    }

    /// Discrepancies `a(E_j) = -b_j`.
    pub fn discrepancies(&self) -> Vec<Rat> {
        self.coeffs.iter().map(|b| -b).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LogCanonicalClass {
    Klt,
    Plt,
    LcCenter,
    NotLc,
}

impl ResolutionGraph {
    /// Validates and builds a graph. `selfints[i]` is the `c` of vertex `i`.
    pub fn new(
        selfints: Vec<u32>,
        edges: Vec<(VertexId, VertexId)>,
        branches: Vec<BoundaryBranch>,
    ) -> Result<Self> {
        let n = selfints.len();
        if let Some(v) = selfints.iter().position(|&c| c == 0) {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} has self-intersection label 0; labels must be >= 1"
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) refers to a missing vertex"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if adjacency[a].contains(&b) {
                return Err(Error::InvalidGraph(format!("repeated edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        if n > 0 {
            if edges.len() != n - 1 {
                return Err(Error::InvalidGraph(format!(
                    "{n} vertices need {} edges to form a tree, got {}",
                    n - 1,
                    edges.len()
                )));
            }
            if bfs_order(&adjacency, 0).len() != n {
                return Err(Error::InvalidGraph("edge set is not connected".into()));
            }
        }
        for br in &branches {
            match br.attach {
                Attach::SmoothPoint if n > 0 => {
                    return Err(Error::InvalidGraph(
                        "branches attach to the smooth point only when the graph is empty".into(),
                    ))
                }
                Attach::Vertex(_) if n == 0 => {
                    return Err(Error::InvalidGraph(
                        "branch attached to a vertex of an empty graph".into(),
                    ))
                }
                Attach::Vertex(v) if v >= n => {
                    return Err(Error::InvalidGraph(format!(
                        "branch attached to missing vertex {v}"
                    )))
                }
                _ => {}
            }
            if !br.coeff.in_half_open_unit() {
                return Err(Error::InvalidGraph(format!(
                    "branch coefficient {} is outside (0, 1]",
                    br.coeff
                )));
            }
        }
        Ok(ResolutionGraph {
            selfints,
            edges,
            branches,
        })
    }

    /// A chain `c_1 - c_2 - ... - c_k` without branches.
    pub fn chain(selfints: &[u32]) -> Result<Self> {
        let edges = (1..selfints.len()).map(|i| (i - 1, i)).collect();
        Self::new(selfints.to_vec(), edges, Vec::new())
    }

    /// Adds a new vertex joined to `attach_to`; returns the graph and the new id.
    pub fn with_vertex(mut self, attach_to: VertexId, selfint: u32) -> Result<(Self, VertexId)> {
        let id = self.selfints.len();
        self.selfints.push(selfint);
        self.edges.push((attach_to, id));
        let g = Self::new(self.selfints, self.edges, self.branches)?;
        Ok((g, id))
    }

    pub fn with_branch(mut self, attach: Attach, coeff: Rat) -> Result<Self> {
        self.branches.push(BoundaryBranch { attach, coeff });
        Self::new(self.selfints, self.edges, self.branches)
    }

    pub fn num_vertices(&self) -> usize {
        self.selfints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selfints.is_empty()
    }

    pub fn selfint(&self, v: VertexId) -> u32 {
        self.selfints[v]
    }

    pub fn selfints(&self) -> &[u32] {
        &self.selfints
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn branches(&self) -> &[BoundaryBranch] {
        &self.branches
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn branches_at(&self, attach: Attach) -> impl Iterator<Item = &BoundaryBranch> {
        self.branches.iter().filter(move |b| b.attach == attach)
    }

    /// `M[i][i] = -c_i`, `M[i][j] = 1` on edges, 0 elsewhere.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut m = vec![vec![0i64; n]; n];
        for (i, &c) in self.selfints.iter().enumerate() {
            m[i][i] = -i64::from(c);
        }
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    fn elimination(&self) -> Option<TreeElimination> {
        let diag: Vec<i64> = self.selfints.iter().map(|&c| i64::from(c)).collect();
        TreeElimination::new(&diag, &self.edges)
    }

    pub fn is_contractible(&self) -> bool {
        self.elimination().is_some()
    }

    /// Solves `(K + Σ b_i E_i + Θ') · E_j = 0` for every exceptional curve,
    /// using `K · E_j = c_j - 2`.
    pub fn boundary_coefficients(&self) -> Result<GraphDivisor> {
        let elimination = self.elimination().ok_or(Error::NotContractible)?;
        // c_j b_j - Σ_{i~j} b_i = (c_j - 2) + Σ_{branches at j} coeff
        let rhs: Vec<Rat> = (0..self.num_vertices())
            .map(|j| {
                let boundary: Rat = self
                    .branches_at(Attach::Vertex(j))
                    .map(|b| &b.coeff)
                    .sum();
                Rat::integer(i64::from(self.selfints[j]) - 2) + boundary
            })
            .collect();
        Ok(GraphDivisor { coeffs: elimination.solve(&rhs) })
    }

    /// Pullback coefficient of the exceptional curve of the point blow-up,
    /// used when the graph is empty: `Σ coeff - 1`.
    fn smooth_point_coefficient(&self) -> Rat {
        self.branches.iter().map(|b| &b.coeff).sum::<Rat>() - Rat::one()
    }

    pub fn log_canonical_class(&self) -> Result<LogCanonicalClass> {
        let b = self.boundary_coefficients()?;
        Ok(self.class_of_solution(&b).0)
    }

    /// Class and the largest pullback coefficient for an already solved system.
    fn class_of_solution(&self, b: &GraphDivisor) -> (LogCanonicalClass, Rat) {
        let top = if self.is_empty() {
            self.smooth_point_coefficient()
        } else {
            b.max().cloned().unwrap_or_else(Rat::zero)
        };
        let one = Rat::one();
        let class = if top > one {
            LogCanonicalClass::NotLc
        } else if top == one {
            LogCanonicalClass::LcCenter
        } else if self.branches.iter().any(|br| br.coeff.is_one()) {
            LogCanonicalClass::Plt
        } else {
            LogCanonicalClass::Klt
        };
        (class, top)
    }

    /// Least `m >= 1` making `m (K + Θ)` Cartier: the lcm of the
    /// denominators of the solved coefficients and the branch coefficients.
    pub fn cartier_index(&self) -> Result<u64> {
        let (class, index) = self.class_and_cartier_index()?;
        index.ok_or_else(|| match class {
            LogCanonicalClass::NotLc => Error::NotLogCanonical(self.worst_coefficient()),
            _ => unreachable!("the index is only missing for non-lc pairs"),
        })
    }

    fn worst_coefficient(&self) -> Rat {
        let b = self.boundary_coefficients().expect("solved before");
        self.class_of_solution(&b).1
    }

    /// The class and, for log canonical pairs, the Cartier index, from a
    /// single solve.
    pub fn class_and_cartier_index(&self) -> Result<(LogCanonicalClass, Option<u64>)> {
        let b = self.boundary_coefficients()?;
        let (class, _) = self.class_of_solution(&b);
        if class == LogCanonicalClass::NotLc {
            return Ok((class, None));
        }
        let lcm = denominator_lcm(
            b.coeffs()
                .iter()
                .chain(self.branches.iter().map(|br| &br.coeff)),
        );
        lcm.to_u64()
            .filter(|m| !m.is_zero())
            .ok_or_else(|| Error::BadParameters(format!("Cartier index {lcm} overflows u64")))
            .map(|m| (class, Some(m)))
    }
}

pub(crate) fn bfs_order(adjacency: &[Vec<VertexId>], start: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; adjacency.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn chain_with(selfints: &[u32], branches: &[(usize, &str)]) -> ResolutionGraph {
        branches.iter().fold(ResolutionGraph::chain(selfints).unwrap(), |g, &(v, c)| {
            g.with_branch(Attach::Vertex(v), r(c)).unwrap()
        })
    }

    fn dihedral_31() -> ResolutionGraph {
        let g = chain_with(&[2], &[(0, "1")]);
        let (g, _) = g.with_vertex(0, 2).unwrap();
        let (g, _) = g.with_vertex(0, 2).unwrap();
        g
    }

    #[test]
    fn intersection_matrix_examples() {
        assert_eq!(ResolutionGraph::chain(&[3]).unwrap().intersection_matrix(), vec![vec![-3]]);
        assert_eq!(
            ResolutionGraph::chain(&[2, 2]).unwrap().intersection_matrix(),
            vec![vec![-2, 1], vec![1, -2]]
        );
        let (fork, _) = ResolutionGraph::chain(&[2, 3]).unwrap().with_vertex(1, 2).unwrap();
        assert_eq!(
            fork.intersection_matrix(),
            vec![vec![-2, 1, 0], vec![1, -3, 1], vec![0, 1, -2]]
        );
    }

    #[test]
    fn contractibility_examples() {
        assert!(ResolutionGraph::chain(&[2, 2, 2]).unwrap().is_contractible());
        assert!(ResolutionGraph::chain(&[1]).unwrap().is_contractible());
        let (g, _) = ResolutionGraph::chain(&[2]).unwrap().with_vertex(0, 1).unwrap();
        let (g, _) = g.with_vertex(0, 1).unwrap();
        assert!(!g.is_contractible());
        assert!(ResolutionGraph::chain(&[]).unwrap().is_contractible());
    }

    #[test]
    fn boundary_coefficient_examples() {
        let single = chain_with(&[2], &[(0, "1"), (0, "1/2")]);
        assert_eq!(single.boundary_coefficients().unwrap().coeffs(), &[r("3/4")]);
        assert_eq!(single.boundary_coefficients().unwrap().discrepancies(), vec![r("-3/4")]);

        let cyclic = chain_with(&[2, 2, 2], &[(0, "1"), (2, "1")]);
        assert_eq!(cyclic.boundary_coefficients().unwrap().coeffs(), &[r("1"), r("1"), r("1")]);

        assert_eq!(
            dihedral_31().boundary_coefficients().unwrap().coeffs(),
            &[r("1"), r("1/2"), r("1/2")]
        );
    }

    #[test]
    fn non_contractible_is_rejected_before_solving() {
        let (g, _) = ResolutionGraph::chain(&[1]).unwrap().with_vertex(0, 1).unwrap();
        assert_eq!(g.boundary_coefficients(), Err(Error::NotContractible));
    }

    #[test]
    fn log_canonical_examples() {
        use LogCanonicalClass::*;
        assert_eq!(chain_with(&[3], &[(0, "1"), (0, "1/2")]).log_canonical_class().unwrap(), Plt);
        assert_eq!(chain_with(&[2, 2, 2], &[(0, "1"), (2, "1")]).log_canonical_class().unwrap(), LcCenter);
        assert_eq!(
            chain_with(&[2], &[(0, "1"), (0, "1"), (0, "1")]).log_canonical_class().unwrap(),
            NotLc
        );
        assert_eq!(chain_with(&[3], &[(0, "1/2")]).log_canonical_class().unwrap(), Klt);
    }

    #[test]
    fn smooth_point_classes() {
        use LogCanonicalClass::*;
        let at = |cs: &[&str]| {
            cs.iter().fold(ResolutionGraph::chain(&[]).unwrap(), |g, c| {
                g.with_branch(Attach::SmoothPoint, r(c)).unwrap()
            })
        };
        assert_eq!(at(&[]).log_canonical_class().unwrap(), Klt);
        assert_eq!(at(&["1"]).log_canonical_class().unwrap(), Plt);
        assert_eq!(at(&["1", "1/2"]).log_canonical_class().unwrap(), Plt);
        assert_eq!(at(&["1", "1"]).log_canonical_class().unwrap(), LcCenter);
        assert_eq!(at(&["1", "1/2", "1/2"]).log_canonical_class().unwrap(), LcCenter);
        assert_eq!(at(&["1", "1", "1/2"]).log_canonical_class().unwrap(), NotLc);
        assert_eq!(at(&["1", "1/2", "1/2"]).cartier_index().unwrap(), 2);
    }

    #[test]
    fn cartier_index_examples() {
        assert_eq!(chain_with(&[2, 2], &[(0, "1"), (1, "1")]).cartier_index().unwrap(), 1);
        assert_eq!(dihedral_31().cartier_index().unwrap(), 2);
        assert_eq!(chain_with(&[3], &[(0, "1"), (0, "1/2")]).cartier_index().unwrap(), 6);
    }

    #[test]
    fn cartier_index_refuses_non_lc() {
        let g = chain_with(&[2], &[(0, "1"), (0, "1"), (0, "1")]);
        assert_eq!(g.cartier_index(), Err(Error::NotLogCanonical(r("3/2"))));
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(matches!(ResolutionGraph::new(vec![2, 2, 2], vec![(0, 1), (1, 2), (0, 2)], vec![]), Err(Error::InvalidGraph(_))));
        assert!(matches!(ResolutionGraph::new(vec![2, 2, 2, 2], vec![(0, 1), (2, 3)], vec![]), Err(Error::InvalidGraph(_))));
        assert!(matches!(ResolutionGraph::new(vec![2, 0], vec![(0, 1)], vec![]), Err(Error::InvalidGraph(_))));
        assert!(matches!(ResolutionGraph::new(vec![2], vec![(0, 0)], vec![]), Err(Error::InvalidGraph(_))));
        let g = ResolutionGraph::chain(&[2]).unwrap();
        assert!(g.clone().with_branch(Attach::Vertex(0), r("0")).is_err());
        assert!(g.clone().with_branch(Attach::Vertex(0), r("3/2")).is_err());
        assert!(g.clone().with_branch(Attach::Vertex(4), r("1")).is_err());
        assert!(g.with_branch(Attach::SmoothPoint, r("1")).is_err());
    }
}
