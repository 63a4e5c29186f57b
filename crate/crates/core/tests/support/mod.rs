#![allow(dead_code)]

use spinejac_core::{Component, DualGraph};

/// Connected multigraphs on exactly `n` vertices with at most `max_edges`
/// edges, one per isomorphism class, rational components named `v1..vn`.
pub fn multigraphs(n: usize, max_edges: usize, loops: bool) -> Vec<DualGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| loops || a != b)
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    for m in 0..=max_edges {
        multisets(&pairs, m, 0, &mut chosen, &mut |edges| {
            if !connected(n, edges) {
                return;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                        .collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            if seen.insert(canon.clone()) {
                out.push(DualGraph::rational(n, &canon).unwrap());
            }
        });
    }
    out
}

/// All graphs with 1..=max_n vertices.
pub fn corpus(max_n: usize, max_edges: usize) -> Vec<DualGraph> {
    (1..=max_n).flat_map(|n| multigraphs(n, max_edges, true)).collect()
}

fn multisets(
    pairs: &[(usize, usize)],
    m: usize,
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]),
) {
    if m == 0 {
        f(chosen);
        return;
    }
    for i in from..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, m - 1, i, chosen, f);
        chosen.pop();
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Edges whose removal disconnects the graph, by deletion.
pub fn bridges_by_deletion(g: &DualGraph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&e| {
            let rest: Vec<_> = g.edges().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
            !connected(g.n(), &rest)
        })
        .collect()
}

/// All set partitions of `0..n`, each as a list of blocks (vertex lists).
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for v in 0..n {
        let mut next = Vec::new();
        for p in out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(v);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![v]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`).
pub fn relabel(g: &DualGraph, perm: &[usize]) -> DualGraph {
    let mut comps = vec![Component::new("", 0); g.n()];
    for v in 0..g.n() {
        comps[perm[v]] = g.components()[v].clone();
    }
    let edges = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    DualGraph::new(comps, edges, perm[g.basepoint()]).unwrap()
}
