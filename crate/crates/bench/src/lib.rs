//! Input corpora shared by the benchmarks.

use slcgerm_core::{Attach, Rat, ResolutionGraph};

/// Every label sequence of length `1..=max_len` with entries in `2..=max_c`.
pub fn label_sequences(max_len: usize, max_c: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                (2..=max_c).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Plt chains: a coefficient-one branch on the first curve and a
/// half-coefficient branch on the last.
pub fn plt_chains(max_len: usize, max_c: u32) -> Vec<ResolutionGraph> {
    label_sequences(max_len, max_c)
        .into_iter()
        .map(|labels| {
            let last = labels.len() - 1;
            ResolutionGraph::chain(&labels)
                .and_then(|g| g.with_branch(Attach::Vertex(0), Rat::one()))
                .and_then(|g| g.with_branch(Attach::Vertex(last), Rat::half()))
                .expect("labels >= 2 give valid chains")
        })
        .collect()
}

/// Coprime pairs `(n, q)` with `1 <= q < n <= max_n`.
pub fn coprime_pairs(max_n: u64) -> Vec<(u64, u64)> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (2..=max_n)
        .flat_map(|n| (1..n).filter(move |&q| gcd(n, q) == 1).map(move |q| (n, q)))
        .collect()
}

/// Nondecreasing `r`-tuples of rationals in `(0, 1)` with denominator at
/// most `max_den`.
pub fn coeff_tuples(r: usize, max_den: i64) -> Vec<Vec<Rat>> {
    let mut values: Vec<Rat> = (2..=max_den)
        .flat_map(|d| (1..d).map(move |k| Rat::new(k, d)))
        .collect();
    values.sort();
    values.dedup();
    let mut tuples: Vec<Vec<usize>> = (0..values.len()).map(|i| vec![i]).collect();
    for _ in 1..r {
        tuples = tuples
            .iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                (last..values.len()).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|t| t.into_iter().map(|i| values[i].clone()).collect())
        .collect()
}
