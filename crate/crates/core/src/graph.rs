//! Dual graphs of nodal curves and the combinatorics of separating nodes,
//! tails and spines.
//!
//! Vertices are the irreducible components (carrying the geometric genus of
//! their normalization) and edges are the nodes. Loops are self-nodes of a
//! component and parallel edges are allowed. Edge ids are positions in the
//! edge list and stay fixed for the lifetime of the graph.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::sets::{EdgeSet, Subcurve};

pub const MAX_COMPONENTS: usize = 64;
pub const MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a curve needs at least one component")]
    NoComponents,
    #[error("{0} components exceed the supported maximum of 64")]
    TooManyComponents(usize),
    #[error("{0} nodes exceed the supported maximum of 64")]
    TooManyNodes(usize),
    #[error("duplicate component id `{0}`")]
    DuplicateComponent(String),
    #[error("node {edge} references unknown component index {vertex}")]
    UnknownComponent { edge: usize, vertex: usize },
    #[error("basepoint index {0} is not a component")]
    BadBasepoint(usize),
    #[error("the dual graph is not connected")]
    Disconnected,
    #[error("vertex set contains indices outside the graph")]
    VertexOutOfRange,
    #[error("empty subcurve")]
    EmptySubcurve,
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("node {0} is not a separating node")]
    NotSeparating(usize),
}

/// An irreducible component of the curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub name: String,
    pub genus: u32,
}

impl Component {
    pub fn new(name: impl Into<String>, genus: u32) -> Self {
        Self { name: name.into(), genus }
    }
}

/// The dual graph of a connected nodal curve with a marked component carrying
/// the nonsingular point `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualGraph {
    components: Vec<Component>,
    edges: Vec<(usize, usize)>,
    basepoint: usize,
}

/// A partition of the components into spines whose pairwise crossings are
/// separating nodes. Parts are sorted by their smallest component index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpineDecomposition {
    parts: Vec<Subcurve>,
}

impl SpineDecomposition {
    /// The one-part decomposition `(X)`.
    pub fn trivial(g: &DualGraph) -> Self {
        Self { parts: vec![g.all()] }
    }

    /// Builds a decomposition from arbitrary parts, checking every invariant.
    pub fn new(g: &DualGraph, mut parts: Vec<Subcurve>) -> Option<Self> {
        parts.sort_by_key(|p| p.first());
        let mut seen = Subcurve::EMPTY;
        for p in &parts {
            if p.is_empty() || !p.is_disjoint(seen) || !g.is_spine(*p) {
                return None;
            }
            seen = seen.union(*p);
        }
        if seen != g.all() {
            return None;
        }
        let bridges = g.separating_nodes();
        let crossing_ok = g.edge_ids().all(|e| {
            let (a, b) = g.endpoints(e);
            let pa = parts.iter().position(|p| p.contains(a));
            let pb = parts.iter().position(|p| p.contains(b));
            pa == pb || bridges.contains(e)
        });
        crossing_ok.then_some(Self { parts })
    }

    pub fn parts(&self) -> &[Subcurve] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part containing component `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

impl DualGraph {
    pub fn new(
        components: Vec<Component>,
        edges: Vec<(usize, usize)>,
        basepoint: usize,
    ) -> Result<Self, GraphError> {
        let n = components.len();
        if n == 0 {
            return Err(GraphError::NoComponents);
        }
        if n > MAX_COMPONENTS {
            return Err(GraphError::TooManyComponents(n));
        }
        if edges.len() > MAX_NODES {
            return Err(GraphError::TooManyNodes(edges.len()));
        }
        for (i, c) in components.iter().enumerate() {
            if components[..i].iter().any(|d| d.name == c.name) {
                return Err(GraphError::DuplicateComponent(c.name.clone()));
            }
        }
        for (edge, &(a, b)) in edges.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::UnknownComponent { edge, vertex });
                }
            }
        }
        if basepoint >= n {
            return Err(GraphError::BadBasepoint(basepoint));
        }
        let g = Self { components, edges, basepoint };
        if g.connected_components(g.all())?.len() != 1 {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Curve with rational components named `v1, .., vn`, basepoint on `v1`.
    pub fn rational(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let comps = (1..=n).map(|i| Component::new(alloc::format!("v{i}"), 0)).collect();
        Self::new(comps, edges.to_vec(), 0)
    }

    /// The same curve with `P` moved onto component `v`.
    pub fn with_basepoint(&self, v: usize) -> Result<Self, GraphError> {
        if v >= self.n() {
            return Err(GraphError::BadBasepoint(v));
        }
        Ok(Self { basepoint: v, ..self.clone() })
    }

    /// The same curve with new geometric genera.
    pub fn with_genera(&self, genera: &[u32]) -> Self {
        let components = self
            .components
            .iter()
            .zip(genera)
            .map(|(c, &genus)| Component { name: c.name.clone(), genus })
            .collect();
        Self { components, ..self.clone() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.components.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_ids(&self) -> core::ops::Range<usize> {
        0..self.edges.len()
    }

    #[inline]
    pub fn genus(&self, v: usize) -> u32 {
        self.components[v].genus
    }

    pub fn name(&self, v: usize) -> &str {
        &self.components[v].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    #[inline]
    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    #[inline]
    pub fn all(&self) -> Subcurve {
        Subcurve::full(self.n())
    }

    #[inline]
    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    /// Edges with both endpoints in `y` (loops included).
    pub fn internal_edges(&self, y: Subcurve) -> EdgeSet {
        self.edge_ids()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                y.contains(a) && y.contains(b)
            })
            .collect()
    }

    /// Edges with exactly one endpoint in `y`.
    pub fn crossing_edges(&self, y: Subcurve) -> EdgeSet {
        self.edge_ids()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                y.contains(a) != y.contains(b)
            })
            .collect()
    }

    /// Edges joining `y` to `z` (assumed disjoint).
    pub fn edges_between(&self, y: Subcurve, z: Subcurve) -> EdgeSet {
        self.edge_ids()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                (y.contains(a) && z.contains(b)) || (y.contains(b) && z.contains(a))
            })
            .collect()
    }

    /// Number of edges incident to `v` whose other endpoint lies in `z`
    /// (`v` itself outside `z`).
    pub fn degree_towards(&self, v: usize, z: Subcurve, among: EdgeSet) -> usize {
        among
            .iter()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                (a == v && z.contains(b)) || (b == v && z.contains(a))
            })
            .count()
    }

    fn check_vertices(&self, w: Subcurve) -> Result<(), GraphError> {
        if w.is_empty() {
            return Err(GraphError::EmptySubcurve);
        }
        if !w.is_subset(self.all()) {
            return Err(GraphError::VertexOutOfRange);
        }
        Ok(())
    }

    /// Connected components of `w` using only the edges in `usable` with both
    /// endpoints in `w`. Components are sorted by smallest vertex.
    pub fn components_using(&self, w: Subcurve, usable: EdgeSet) -> Vec<Subcurve> {
        let mut out = Vec::new();
        let mut left = w;
        while let Some(start) = left.first() {
            let mut comp = Subcurve::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = Subcurve::EMPTY;
                for e in usable.iter() {
                    let (a, b) = self.edges[e];
                    if !(w.contains(a) && w.contains(b)) {
                        continue;
                    }
                    if frontier.contains(a) && !comp.contains(b) {
                        next.insert(b);
                    }
                    if frontier.contains(b) && !comp.contains(a) {
                        next.insert(a);
                    }
                }
                comp = comp.union(next);
                frontier = next;
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Partition of `w` into maximal pieces connected by edges inside `w`.
    pub fn connected_components(&self, w: Subcurve) -> Result<Vec<Subcurve>, GraphError> {
        self.check_vertices(w)?;
        Ok(self.components_using(w, self.all_edges()))
    }

    pub fn is_connected_set(&self, w: Subcurve) -> bool {
        !w.is_empty() && self.components_using(w, self.all_edges()).len() == 1
    }

    /// The separating nodes, i.e. the bridges of the dual graph. Loops are
    /// never bridges.
    pub fn separating_nodes(&self) -> EdgeSet {
        // Tarjan low-link; parallel edges are handled by skipping the tree
        // edge id rather than the parent vertex.
        let n = self.n();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a != b {
                adj[a].push((b, e));
                adj[b].push((a, e));
            }
        }
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = EdgeSet::EMPTY;
        let mut clock = 0;
        // (vertex, edge used to enter, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (v, via, i) = *top;
                if let Some(&(w, e)) = adj[v].get(i) {
                    top.2 += 1;
                    if e == via {
                        continue;
                    }
                    if order[w] == usize::MAX {
                        order[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > order[parent] {
                            bridges.insert(via);
                        }
                    }
                }
            }
        }
        bridges
    }

    /// The two tails attached to the separating node `e`; the first contains
    /// the first listed endpoint of `e`.
    pub fn tails_of(&self, e: usize) -> Result<(Subcurve, Subcurve), GraphError> {
        if e >= self.edge_count() {
            return Err(GraphError::UnknownNode(e));
        }
        if !self.separating_nodes().contains(e) {
            return Err(GraphError::NotSeparating(e));
        }
        let mut usable = self.all_edges();
        usable.remove(e);
        let (a, _) = self.edges[e];
        let first = self
            .components_using(self.all(), usable)
            .into_iter()
            .find(|c| c.contains(a))
            .expect("every vertex lies in a component");
        Ok((first, self.all().difference(first)))
    }

    /// A connected subcurve meeting its complement only in separating nodes.
    /// The whole curve counts as a spine of itself.
    pub fn is_spine(&self, w: Subcurve) -> bool {
        if w.is_empty() || !w.is_subset(self.all()) || !self.is_connected_set(w) {
            return false;
        }
        self.crossing_edges(w).is_subset(self.separating_nodes())
    }

    /// Every spine decomposition, one per subset of the separating nodes,
    /// in the order of the subsets' bit patterns (the empty cut first).
    pub fn spine_decompositions(&self) -> Vec<SpineDecomposition> {
        let bridges = self.separating_nodes();
        let all = self.all_edges();
        core::iter::once(EdgeSet::EMPTY)
            .chain(bridges.subsets())
            .map(|cut| SpineDecomposition {
                parts: self.components_using(self.all(), all.difference(cut)),
            })
            .collect()
    }

    /// Every spine of the curve (whole curve included), by bit pattern.
    pub fn spines(&self) -> Vec<Subcurve> {
        self.all().subsets().filter(|&w| self.is_spine(w)).collect()
    }
}
