//! Numerical classes of torsion-free rank-1 sheaves on a nodal curve.
//!
//! A class `(S, d)` stands for the pushforward of a line bundle of multidegree
//! `d` from the partial normalization of the curve at the nodes in `S`. Only
//! these data are tracked; gluing parameters at the nodes are forgotten.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{DualGraph, SpineDecomposition};
use crate::sets::{EdgeSet, Subcurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("multidegree has {got} entries but the curve has {expected} components")]
    DegreeLength { expected: usize, got: usize },
    #[error("non-invertibility set references a node outside the curve")]
    UnknownNode,
    #[error("sheaf is not simple")]
    NotSimple,
    #[error("piece {0} is not supported on the matching part of the decomposition")]
    PieceMismatch(usize),
    #[error("expected {expected} pieces, got {got}")]
    PieceCount { expected: usize, got: usize },
    #[error("ordering is not a permutation of the parts")]
    NotPermutation,
    #[error("piece is not invertible at a node leaving its support")]
    PieceNotInternal,
}

/// `(S, d)`: the nodes where the sheaf fails to be invertible and the
/// multidegree on the corresponding partial normalization.
///
/// Classes order by `S` (as sorted edge lists), then lexicographically by `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheafClass {
    pub non_inv: EdgeSet,
    pub degrees: Vec<i64>,
}

/// A sheaf living on a subcurve. Degrees are indexed by the ambient
/// components and are zero off the support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheafPiece {
    pub support: Subcurve,
    pub sheaf: SheafClass,
}

/// `χ` of the sheaf `(S, d)` restricted to `y` modulo torsion.
#[inline]
pub fn chi_on(g: &DualGraph, non_inv: EdgeSet, degrees: &[i64], y: Subcurve) -> i64 {
    let mut chi: i64 = y.iter().map(|v| degrees[v] + 1 - i64::from(g.genus(v))).sum();
    chi -= g.internal_edges(y).difference(non_inv).len() as i64;
    chi
}

impl SheafClass {
    pub fn new(non_inv: EdgeSet, degrees: Vec<i64>) -> Self {
        Self { non_inv, degrees }
    }

    /// An invertible sheaf of the given multidegree.
    pub fn invertible(degrees: Vec<i64>) -> Self {
        Self { non_inv: EdgeSet::EMPTY, degrees }
    }

    pub fn validate(&self, g: &DualGraph) -> Result<(), SheafError> {
        if self.degrees.len() != g.n() {
            return Err(SheafError::DegreeLength { expected: g.n(), got: self.degrees.len() });
        }
        if !self.non_inv.is_subset(g.all_edges()) {
            return Err(SheafError::UnknownNode);
        }
        Ok(())
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `χ(I) = Σ d_v + Σ (1 - g_v) - #(E \ S)`.
    pub fn euler_char(&self, g: &DualGraph) -> i64 {
        chi_on(g, self.non_inv, &self.degrees, g.all())
    }

    /// `χ(I_Y)` for the restriction modulo torsion to `y`.
    pub fn restricted_euler(&self, g: &DualGraph, y: Subcurve) -> i64 {
        chi_on(g, self.non_inv, &self.degrees, y)
    }

    /// Simple iff the curve stays connected after normalizing the nodes in
    /// `S`; otherwise the sheaf splits as a direct sum.
    pub fn is_simple(&self, g: &DualGraph) -> bool {
        g.components_using(g.all(), g.all_edges().difference(self.non_inv)).len() == 1
    }

    /// `I_Y` as a piece on `y`.
    pub fn restrict(&self, g: &DualGraph, y: Subcurve) -> SheafPiece {
        SheafPiece::from_ambient(g, y, self.non_inv, &self.degrees)
    }
}

impl SheafPiece {
    /// The piece on `support` induced by ambient data: nodes outside the
    /// support are dropped and degrees off the support are zeroed.
    pub fn from_ambient(g: &DualGraph, support: Subcurve, non_inv: EdgeSet, degrees: &[i64]) -> Self {
        let mut d = vec![0; g.n()];
        for v in support.iter() {
            d[v] = degrees[v];
        }
        Self {
            support,
            sheaf: SheafClass { non_inv: non_inv.intersection(g.internal_edges(support)), degrees: d },
        }
    }

    pub fn euler_char(&self, g: &DualGraph) -> i64 {
        chi_on(g, self.sheaf.non_inv, &self.sheaf.degrees, self.support)
    }

    pub fn restricted_euler(&self, g: &DualGraph, y: Subcurve) -> i64 {
        chi_on(g, self.sheaf.non_inv, &self.sheaf.degrees, y.intersection(self.support))
    }

    /// Simple as a sheaf on its own support.
    pub fn is_simple(&self, g: &DualGraph) -> bool {
        let usable = g.internal_edges(self.support).difference(self.sheaf.non_inv);
        g.components_using(self.support, usable).len() == 1
    }
}

/// Restricts a simple sheaf to the parts of a spine decomposition.
///
/// The χ of the pieces add up to `χ(I) + q - 1`.
pub fn restrict_to_decomposition(
    g: &DualGraph,
    sheaf: &SheafClass,
    dec: &SpineDecomposition,
) -> Result<Vec<SheafPiece>, SheafError> {
    sheaf.validate(g)?;
    if !sheaf.is_simple(g) {
        return Err(SheafError::NotSimple);
    }
    Ok(dec.parts().iter().map(|&z| sheaf.restrict(g, z)).collect())
}

fn check_permutation(order: &[usize], q: usize) -> Result<(), SheafError> {
    let mut seen = vec![false; q];
    if order.len() != q {
        return Err(SheafError::NotPermutation);
    }
    for &i in order {
        if i >= q || core::mem::replace(&mut seen[i], true) {
            return Err(SheafError::NotPermutation);
        }
    }
    Ok(())
}

/// The degree twist applied by gluing along `order`: a component of part
/// `order[i]` gains one for each node it shares with a part `order[j]`,
/// `j > i`.
pub fn gluing_twist(
    g: &DualGraph,
    dec: &SpineDecomposition,
    order: &[usize],
) -> Result<Vec<i64>, SheafError> {
    let parts = dec.parts();
    check_permutation(order, parts.len())?;
    let mut twist = vec![0; g.n()];
    let mut later = Subcurve::EMPTY;
    for &k in order.iter().rev() {
        let z = parts[k];
        for e in g.edges_between(z, later).iter() {
            let (a, b) = g.endpoints(e);
            twist[if z.contains(a) { a } else { b }] += 1;
        }
        later = later.union(z);
    }
    Ok(twist)
}

/// Glues pieces on the parts of a spine decomposition into the simple sheaf
/// whose restriction to part `order[i]` is that piece twisted up by the nodes
/// shared with the parts listed after it. `χ` of the result is the sum of
/// the pieces' `χ`.
pub fn glue_pieces(
    g: &DualGraph,
    dec: &SpineDecomposition,
    pieces: &[SheafPiece],
    order: &[usize],
) -> Result<SheafClass, SheafError> {
    if pieces.len() != dec.len() {
        return Err(SheafError::PieceCount { expected: dec.len(), got: pieces.len() });
    }
    for (i, (p, &z)) in pieces.iter().zip(dec.parts()).enumerate() {
        if p.support != z {
            return Err(SheafError::PieceMismatch(i));
        }
        p.sheaf.validate(g)?;
        if !p.sheaf.non_inv.is_subset(g.internal_edges(z)) {
            return Err(SheafError::PieceNotInternal);
        }
    }
    let twist = gluing_twist(g, dec, order)?;
    let mut non_inv = EdgeSet::EMPTY;
    let mut degrees = twist;
    for p in pieces {
        non_inv = non_inv.union(p.sheaf.non_inv);
        for v in p.support.iter() {
            degrees[v] += p.sheaf.degrees[v];
        }
    }
    Ok(SheafClass { non_inv, degrees })
}

/// Every possible non-invertibility set inside `support`, optionally only
/// those leaving the support connected (the simple sheaves). Sorted.
pub fn noninv_sets_on(g: &DualGraph, support: Subcurve, simple_only: bool) -> Vec<EdgeSet> {
    let internal = g.internal_edges(support);
    let mut out: Vec<EdgeSet> = core::iter::once(EdgeSet::EMPTY)
        .chain(internal.subsets())
        .filter(|&s| {
            !simple_only || g.components_using(support, internal.difference(s)).len() == 1
        })
        .collect();
    out.sort();
    out
}

/// [`noninv_sets_on`] for the whole curve.
pub fn all_noninv_sets(g: &DualGraph, simple_only: bool) -> Vec<EdgeSet> {
    noninv_sets_on(g, g.all(), simple_only)
}
