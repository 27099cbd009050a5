#![allow(dead_code)]

//! Independent oracles and corpus strategies shared by the integration tests.
//! Nothing here calls the solver or elimination code it is used to check.

use proptest::prelude::*;
use slcgerm_core::{Attach, Rat, ResolutionGraph};

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

/// Determinant by Laplace expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

pub fn to_i128(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect()
}

/// `(A^{-1})_{ij} = (-1)^{i+j} det(A without row j, column i) / det(A)`.
pub fn inverse_entry(m: &[Vec<i128>], i: usize, j: usize) -> Rat {
    let n = m.len();
    let minor: Vec<Vec<i128>> = (0..n)
        .filter(|&row| row != j)
        .map(|row| (0..n).filter(|&col| col != i).map(|col| m[row][col]).collect())
        .collect();
    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
    let num = sign * det(&minor);
    let den = det(m);
    Rat::new(num as i64, den as i64)
}

/// Negative definiteness straight from Sylvester's criterion with Laplace
/// determinants of every leading block.
pub fn negative_definite_oracle(m: &[Vec<i64>]) -> bool {
    let m = to_i128(m);
    (1..=m.len()).all(|k| {
        let block: Vec<Vec<i128>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = det(&block);
        if k % 2 == 1 {
            d < 0
        } else {
            d > 0
        }
    })
}

/// `(c_j - 2) + Σ_{i~j} b_i - c_j b_j + Σ_{branches at j} coeff` for every
/// vertex; all zero iff `b` solves the zero-intersection system.
pub fn residuals(g: &ResolutionGraph, b: &[Rat]) -> Vec<Rat> {
    (0..g.num_vertices())
        .map(|j| {
            let c = g.selfint(j) as i64;
            let adj: Rat = g.neighbors(j).iter().map(|&i| b[i].clone()).sum();
            let br: Rat = g.branches_at(Attach::Vertex(j)).map(|x| x.coeff.clone()).sum();
            Rat::integer(c - 2) + adj - Rat::integer(c) * b[j].clone() + br
        })
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rationals in `(0, 1]` with denominator at most `max_den`.
pub fn coeff_strategy(max_den: i64) -> impl Strategy<Value = Rat> {
    (1..=max_den).prop_flat_map(|d| (1..=d).prop_map(move |n| Rat::new(n, d)))
}

/// Chains and single-fork trees with at most six vertices, labels up to 6,
/// and up to three branches of denominator at most 6.
pub fn graph_strategy() -> impl Strategy<Value = ResolutionGraph> {
    let chain = prop::collection::vec(1u32..=6, 1..=6);
    chain
        .prop_flat_map(|chain| {
            let k = chain.len();
            let fork = if k < 6 {
                prop::option::of((0..k, 1u32..=6)).boxed()
            } else {
                Just(None).boxed()
            };
            let total = k + 1;
            let branches = prop::collection::vec((0..total, coeff_strategy(6)), 0..=3);
            (Just(chain), fork, branches)
        })
        .prop_map(|(chain, fork, branches)| {
            let mut g = ResolutionGraph::chain(&chain).unwrap();
            if let Some((at, c)) = fork {
                g = g.with_vertex(at, c).unwrap().0;
            }
            let n = g.num_vertices();
            for (v, coeff) in branches {
                g = g.with_branch(Attach::Vertex(v % n), coeff).unwrap();
            }
            g
        })
}
