//! Brute-force oracles and the graph corpus, independent of the library's
//! algorithms. Only the data types are shared.

#![allow(dead_code)]

use std::collections::BTreeSet;

use spinejac_core::{Component, DualGraph, EdgeSet, Rational, SheafClass, Stability, Subcurve};

/// Connected multigraphs on `n` vertices with at most `max_edges` edges
/// (loops allowed), one per isomorphism class.
pub fn multigraphs(n: usize, max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((chosen, from)) = stack.pop() {
        let edges: Vec<(usize, usize)> = chosen.iter().map(|&i| pairs[i]).collect();
        if connected(n, &edges) {
            let canon = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> =
                        edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
        if chosen.len() < max_edges {
            for i in from..pairs.len() {
                let mut next = chosen.clone();
                next.push(i);
                stack.push((next, i));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Every connected multigraph with 1..=4 vertices and at most 5 edges.
pub fn corpus() -> Vec<(usize, Vec<(usize, usize)>)> {
    (1..=4).flat_map(|n| multigraphs(n, 5).into_iter().map(move |e| (n, e))).collect()
}

pub fn build(n: usize, edges: &[(usize, usize)], genera: &[u32], basepoint: usize) -> DualGraph {
    let comps = (0..n).map(|i| Component::new(format!("v{}", i + 1), genera[i])).collect();
    DualGraph::new(comps, edges.to_vec(), basepoint).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut p = p.clone();
                    p.insert(i, k);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    connected_within(n, edges, &(0..n).collect::<Vec<_>>())
}

/// Whether `verts` is connected using only edges with both ends in it.
pub fn connected_within(n: usize, edges: &[(usize, usize)], verts: &[usize]) -> bool {
    let Some(&start) = verts.first() else { return false };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            if !verts.contains(&a) || !verts.contains(&b) {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    verts.iter().all(|&v| seen[v])
}

pub fn bridges(g: &DualGraph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&e| {
            let rest: Vec<(usize, usize)> =
                g.edges().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
            !connected(g.n(), &rest)
        })
        .collect()
}

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
            let mut q = p;
            q.push(vec![v]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Partitions into connected blocks whose outgoing edges are all bridges.
pub fn spine_partitions(g: &DualGraph) -> BTreeSet<Vec<Vec<usize>>> {
    let br = bridges(g);
    set_partitions(g.n())
        .into_iter()
        .filter(|blocks| {
            blocks.iter().all(|b| connected_within(g.n(), g.edges(), b))
                && g.edges().iter().enumerate().all(|(e, (a, b))| {
                    blocks.iter().any(|blk| blk.contains(a) && blk.contains(b)) || br.contains(&e)
                })
        })
        .map(|mut blocks| {
            blocks.sort();
            blocks
        })
        .collect()
}

pub fn members(y: Subcurve) -> Vec<usize> {
    y.iter().collect()
}

/// `χ` of `(S, d)` restricted to `y`.
pub fn chi(g: &DualGraph, s: EdgeSet, d: &[i64], y: &[usize]) -> i64 {
    let verts: i64 = y.iter().map(|&v| d[v] + 1 - i64::from(g.genus(v))).sum();
    let lost = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(a, b))| y.contains(&a) && y.contains(&b) && !s.contains(e))
        .count() as i64;
    verts - lost
}

/// Whether the edges inside `w` that are not in `s` connect `w`.
pub fn simple_on(g: &DualGraph, s: EdgeSet, w: &[usize]) -> bool {
    let usable: Vec<(usize, usize)> =
        g.edges().iter().enumerate().filter(|&(e, _)| !s.contains(e)).map(|(_, &p)| p).collect();
    connected_within(g.n(), &usable, w)
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// Stability of `(S, d)` on the subcurve `w` with thresholds `b`, checking
/// every proper nonempty `Y ⊊ w` in exact arithmetic.
pub fn classify_on(g: &DualGraph, w: &[usize], s: EdgeSet, d: &[i64], b: &[Rational]) -> Stability {
    let b_on = |y: &[usize]| y.iter().map(|&v| b[v]).sum::<Rational>();
    if Rational::from(chi(g, s, d, w)) != b_on(w) {
        return Stability::Unstable;
    }
    let (mut tight, mut tight_p) = (false, false);
    for y in subsets(w) {
        if y.is_empty() || y.len() == w.len() {
            continue;
        }
        let lhs = Rational::from(chi(g, s, d, &y));
        let rhs = b_on(&y);
        if lhs < rhs {
            return Stability::Unstable;
        }
        if lhs == rhs {
            tight = true;
            tight_p |= y.contains(&g.basepoint());
        }
    }
    match (tight, tight_p) {
        (false, _) => Stability::Stable,
        (true, false) => Stability::PQuasistable,
        (true, true) => Stability::Semistable,
    }
}

pub fn classify(g: &DualGraph, s: EdgeSet, d: &[i64], b: &[Rational]) -> Stability {
    classify_on(g, &(0..g.n()).collect::<Vec<_>>(), s, d, b)
}

/// Every semistable `(S, d)` on `w` (S inside `w`), with `d` scanned over the
/// singleton-and-total box inflated by `slack` in every direction. Degrees
/// off `w` are zero. Returned with their stability, sorted.
pub fn enumerate_on(
    g: &DualGraph,
    w: &[usize],
    b: &[Rational],
    slack: i64,
) -> Vec<(SheafClass, Stability)> {
    let b_w: Rational = w.iter().map(|&v| b[v]).sum();
    if !b_w.is_integer() {
        return Vec::new();
    }
    let inside: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, (a, c))| w.contains(a) && w.contains(c))
        .map(|(e, _)| e)
        .collect();
    let mut out = Vec::new();
    for s_list in subsets(&inside) {
        let s: EdgeSet = s_list.iter().copied().collect();
        let free = inside.iter().filter(|e| !s.contains(**e)).count() as i64;
        let genus_part: i64 = w.iter().map(|&v| 1 - i64::from(g.genus(v))).sum();
        let total = b_w.to_integer() - genus_part + free;
        let lo: Vec<i64> = w
            .iter()
            .map(|&v| {
                let loops =
                    inside.iter().filter(|&&e| !s.contains(e) && g.edges()[e] == (v, v)).count() as i64;
                b[v].ceil().to_integer() - (1 - i64::from(g.genus(v))) + loops
            })
            .collect();
        let lo_sum: i64 = lo.iter().sum();
        let ranges: Vec<(i64, i64)> = lo.iter().map(|&l| (l - slack, total - (lo_sum - l) + slack)).collect();
        let mut d = vec![0i64; g.n()];
        scan(&ranges, 0, total, &mut d, w, &mut |d| {
            let st = classify_on(g, w, s, d, b);
            if st.is_semistable() {
                out.push((SheafClass::new(s, d.to_vec()), st));
            }
        });
    }
    out.sort();
    out
}

/// Visits the box points with `Σ d = total`; the last coordinate is
/// solved for rather than scanned.
fn scan(
    ranges: &[(i64, i64)],
    i: usize,
    left: i64,
    d: &mut [i64],
    w: &[usize],
    visit: &mut impl FnMut(&[i64]),
) {
    if i + 1 == w.len() {
        if (ranges[i].0..=ranges[i].1).contains(&left) {
            d[w[i]] = left;
            visit(d);
        }
        return;
    }
    for x in ranges[i].0..=ranges[i].1 {
        d[w[i]] = x;
        scan(ranges, i + 1, left - x, d, w, visit);
    }
}

pub fn enumerate(g: &DualGraph, b: &[Rational], slack: i64) -> Vec<(SheafClass, Stability)> {
    enumerate_on(g, &(0..g.n()).collect::<Vec<_>>(), b, slack)
}

/// Glues sheaves on the blocks of a spine partition taken in `order`: each
/// component gains one per node joining its block to a later block.
pub fn glue(g: &DualGraph, blocks: &[Vec<usize>], pieces: &[SheafClass], order: &[usize]) -> SheafClass {
    let mut degrees = vec![0i64; g.n()];
    let mut s = EdgeSet::EMPTY;
    for (blk, p) in blocks.iter().zip(pieces) {
        for &v in blk {
            degrees[v] = p.degrees[v];
        }
        s = s.union(p.non_inv);
    }
    let rank_of = |v: usize| order.iter().position(|&k| blocks[k].contains(&v)).unwrap();
    for &(a, b) in g.edges() {
        let (ra, rb) = (rank_of(a), rank_of(b));
        if ra < rb {
            degrees[a] += 1;
        } else if rb < ra {
            degrees[b] += 1;
        }
    }
    SheafClass::new(s, degrees)
}

/// Whether `b_Y` is an integer for `y` and every connected component of its
/// complement.
pub fn integer_at(g: &DualGraph, b: &[Rational], y: &[usize]) -> bool {
    let integral = |z: &[usize]| z.iter().map(|&v| b[v]).sum::<Rational>().is_integer();
    if !integral(y) {
        return false;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|v| !y.contains(v)).collect();
    let mut assigned = vec![false; g.n()];
    for &start in &rest {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &(a, c) in g.edges() {
                for (x, z) in [(a, c), (c, a)] {
                    if x == v && rest.contains(&z) && !assigned[z] {
                        assigned[z] = true;
                        comp.push(z);
                    }
                }
            }
        }
        if !integral(&comp) {
            return false;
        }
    }
    true
}

/// Proper nonempty vertex subsets, connected ones only if asked.
pub fn proper_subsets(g: &DualGraph, connected_only: bool) -> Vec<Vec<usize>> {
    subsets(&(0..g.n()).collect::<Vec<_>>())
        .into_iter()
        .filter(|y| !y.is_empty() && y.len() < g.n())
        .filter(|y| !connected_only || connected_within(g.n(), g.edges(), y))
        .collect()
}

/// Connected, and every edge leaving it is a bridge.
pub fn is_spine(g: &DualGraph, y: &[usize]) -> bool {
    let br = bridges(g);
    connected_within(g.n(), g.edges(), y)
        && g.edges()
            .iter()
            .enumerate()
            .all(|(e, (a, b))| y.contains(a) == y.contains(b) || br.contains(&e))
}
