//! Polarizations and the semistable / stable / `P`-quasistable conditions.
//!
//! A polarization is reduced to its per-component thresholds
//! `b_v = a_v χ = -μ(E|_{X_v})`. A sheaf `I` on a subcurve `W` is semistable
//! when `χ(I) = b_W` and `χ(I_Y) ≥ b_Y` for every proper subcurve `Y ⊊ W`,
//! stable when all those inequalities are strict, and `P`-quasistable when
//! they are strict for every `Y` containing the basepoint. All comparisons
//! are exact: thresholds are kept as integers over a common denominator.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::DualGraph;
use crate::sets::{EdgeSet, Subcurve};
use crate::sheaf::{noninv_sets_on, SheafClass, SheafPiece};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("weights sum to {0} ≠ 1")]
    WeightSum(Rational),
    #[error("expected {expected} per-component values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("total degree {degree} is not divisible by rank {rank}; the slope must be an integer")]
    NonIntegralSlope { degree: i64, rank: u32 },
    #[error("slope is zero, so the weights cannot be recovered from the bundle")]
    ZeroSlope,
    #[error("subcurve is empty")]
    EmptySubcurve,
    #[error("subcurve is not connected")]
    NotConnected,
    #[error("subcurve is not proper")]
    NotProper,
}

/// `(χ, 𝔞)`: rational weights summing to one together with the Euler
/// characteristic of the sheaves under consideration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polarization {
    chi: i64,
    weights: Vec<Rational>,
}

impl Polarization {
    pub fn new(chi: i64, weights: Vec<Rational>) -> Result<Self, StabilityError> {
        let sum: Rational = weights.iter().copied().sum();
        if !sum.is_one() {
            return Err(StabilityError::WeightSum(sum));
        }
        Ok(Self { chi, weights })
    }

    /// Equal weights `1/n`.
    pub fn uniform(n: usize, chi: i64) -> Self {
        let w = Rational::new(1, n as i64);
        Self { chi, weights: vec![w; n] }
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `a_Y`.
    pub fn weight_of(&self, y: Subcurve) -> Rational {
        y.iter().map(|v| self.weights[v]).sum()
    }

    /// `μ(E|_Y) = -a_Y χ`.
    pub fn slope_of(&self, y: Subcurve) -> Rational {
        -self.weight_of(y) * self.chi
    }

    pub fn thresholds(&self) -> Thresholds {
        let values: Vec<Rational> = self.weights.iter().map(|a| a * self.chi).collect();
        Thresholds::new(&values)
    }
}

/// A vector bundle `E` seen through its rank and per-component degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolarization {
    rank: u32,
    degrees: Vec<i64>,
}

impl IntegerPolarization {
    /// Requires an integral slope `μ(E) = deg E / r`.
    pub fn new(rank: u32, degrees: Vec<i64>) -> Result<Self, StabilityError> {
        if rank == 0 {
            return Err(StabilityError::ZeroRank);
        }
        let degree: i64 = degrees.iter().sum();
        if degree % i64::from(rank) != 0 {
            return Err(StabilityError::NonIntegralSlope { degree, rank });
        }
        Ok(Self { rank, degrees })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn slope(&self) -> i64 {
        self.degrees.iter().sum::<i64>() / i64::from(self.rank)
    }

    /// `b_v = -deg(E|_{X_v}) / r`.
    pub fn thresholds(&self) -> Thresholds {
        let r = i64::from(self.rank);
        let values: Vec<Rational> = self.degrees.iter().map(|&d| Rational::new(-d, r)).collect();
        Thresholds::new(&values)
    }
}

/// Per-component thresholds `b_v`, stored as integers over one denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Thresholds {
    scaled: Vec<i64>,
    denom: i64,
}

impl Thresholds {
    pub fn new(values: &[Rational]) -> Self {
        let denom = values.iter().fold(1i64, |acc, b| acc.lcm(b.denom()));
        let scaled = values.iter().map(|b| b.numer() * (denom / b.denom())).collect();
        Self { scaled, denom }
    }

    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }

    pub fn check(&self, g: &DualGraph) -> Result<(), StabilityError> {
        if self.scaled.len() != g.n() {
            return Err(StabilityError::Length { expected: g.n(), got: self.scaled.len() });
        }
        Ok(())
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn value(&self, v: usize) -> Rational {
        Rational::new(self.scaled[v], self.denom)
    }

    /// `b_Y · denom`.
    #[inline]
    pub fn scaled_on(&self, y: Subcurve) -> i64 {
        y.iter().map(|v| self.scaled[v]).sum()
    }

    /// `b_Y = a_Y χ = -μ(E|_Y)`.
    pub fn on(&self, y: Subcurve) -> Rational {
        Rational::new(self.scaled_on(y), self.denom)
    }

    pub fn is_integral_on(&self, y: Subcurve) -> bool {
        self.scaled_on(y) % self.denom == 0
    }

    /// The required Euler characteristic `χ = Σ b_v`, if it is an integer.
    pub fn chi(&self) -> Option<i64> {
        let total: i64 = self.scaled.iter().sum();
        (total % self.denom == 0).then(|| total / self.denom)
    }

    /// Weights `a_v = b_v / χ`, defined when `χ ≠ 0`.
    pub fn polarization(&self) -> Option<Polarization> {
        let chi = self.chi().filter(|c| !c.is_zero())?;
        let weights = self.scaled.iter().map(|&s| Rational::new(s, self.denom * chi)).collect();
        Some(Polarization { chi, weights })
    }
}

impl From<&Polarization> for Thresholds {
    fn from(p: &Polarization) -> Self {
        p.thresholds()
    }
}

impl From<&IntegerPolarization> for Thresholds {
    fn from(e: &IntegerPolarization) -> Self {
        e.thresholds()
    }
}

/// Where a sheaf sits in `unstable < semistable < P-quasistable < stable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stability {
    Unstable,
    /// Semistable but not `P`-quasistable.
    Semistable,
    /// `P`-quasistable but not stable.
    PQuasistable,
    Stable,
}

impl Stability {
    pub fn is_semistable(self) -> bool {
        self >= Stability::Semistable
    }

    pub fn is_p_quasistable(self) -> bool {
        self >= Stability::PQuasistable
    }

    pub fn is_stable(self) -> bool {
        self == Stability::Stable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Semistable,
    Stable,
    Quasistable,
}

impl Mode {
    pub fn admits(self, s: Stability) -> bool {
        match self {
            Mode::Semistable => s.is_semistable(),
            Mode::Stable => s.is_stable(),
            Mode::Quasistable => s.is_p_quasistable(),
        }
    }
}

/// Which proper subcurves the predicates inspect. Disconnected subcurves
/// never decide anything, since both sides of every inequality add up over
/// connected components; `ConnectedOnly` skips them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScanMode {
    #[default]
    All,
    ConnectedOnly,
}

/// Precomputed per-subcurve constants for a fixed support, node set `S`
/// and polarization. Subsets are indexed by local bit masks.
struct SubsetTable {
    verts: Vec<usize>,
    /// `Σ_{v∈Y} (1-g_v) - #(internal edges of Y not in S)`, scaled by denom.
    base: Vec<i64>,
    /// `b_Y · denom`
    thr: Vec<i64>,
    skip: Vec<bool>,
    p_bit: u64,
    denom: i64,
    sums: Vec<i64>,
}

impl SubsetTable {
    fn new(
        g: &DualGraph,
        support: Subcurve,
        non_inv: EdgeSet,
        t: &Thresholds,
        basepoint: Option<usize>,
        scan: ScanMode,
    ) -> Self {
        let verts: Vec<usize> = support.iter().collect();
        let k = verts.len();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let internal = g.internal_edges(support);
        let to_local = |e: usize| {
            let (a, b) = g.endpoints(e);
            (1u64 << local[a]) | (1u64 << local[b])
        };
        let usable: Vec<u64> = internal.difference(non_inv).iter().map(to_local).collect();
        let all_local: Vec<u64> = internal.iter().map(to_local).collect();
        let size = 1usize << k;
        let denom = t.denom();
        let mut base = vec![0i64; size];
        let mut thr = vec![0i64; size];
        let mut skip = vec![false; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let v = verts[low];
            base[mask] = base[rest] + 1 - i64::from(g.genus(v));
            thr[mask] = thr[rest] + t.scaled[v];
        }
        for mask in 1..size {
            let m = mask as u64;
            let lost = usable.iter().filter(|&&em| em & m == em).count() as i64;
            base[mask] = (base[mask] - lost) * denom;
            if scan == ScanMode::ConnectedOnly {
                skip[mask] = !local_connected(m, &all_local);
            }
        }
        let p_bit = match basepoint {
            Some(p) if support.contains(p) => 1u64 << local[p],
            _ => 0,
        };
        Self { verts, base, thr, skip, p_bit, denom, sums: vec![0; size] }
    }

    fn full(&self) -> usize {
        (1usize << self.verts.len()) - 1
    }

    /// Classifies local degrees `d` (one per support vertex).
    fn classify(&mut self, d: &[i64]) -> Stability {
        let full = self.full();
        for mask in 1..=full {
            let low = mask.trailing_zeros() as usize;
            self.sums[mask] = self.sums[mask & (mask - 1)] + d[low];
        }
        if self.sums[full] * self.denom + self.base[full] != self.thr[full] {
            return Stability::Unstable;
        }
        let mut tight = false;
        let mut tight_at_p = false;
        for mask in 1..full {
            if self.skip[mask] {
                continue;
            }
            let slack = self.sums[mask] * self.denom + self.base[mask] - self.thr[mask];
            if slack < 0 {
                return Stability::Unstable;
            }
            if slack == 0 {
                tight = true;
                if mask as u64 & self.p_bit != 0 {
                    tight_at_p = true;
                }
            }
        }
        match (tight, tight_at_p) {
            (false, _) => Stability::Stable,
            (true, false) => Stability::PQuasistable,
            (true, true) => Stability::Semistable,
        }
    }
}

fn local_connected(mask: u64, edges: &[u64]) -> bool {
    let mut comp = mask & mask.wrapping_neg();
    loop {
        let mut grown = comp;
        for &em in edges {
            if em & mask == em && em & comp != 0 {
                grown |= em;
            }
        }
        if grown == comp {
            return comp == mask;
        }
        comp = grown;
    }
}

fn local_degrees(support: Subcurve, degrees: &[i64]) -> Vec<i64> {
    support.iter().map(|v| degrees[v]).collect()
}

/// Stability of the sheaf `(S, d)` on `support`, with `P`-strictness
/// demanded only when the basepoint lies in the support.
pub fn classify_on(
    g: &DualGraph,
    support: Subcurve,
    non_inv: EdgeSet,
    degrees: &[i64],
    t: &Thresholds,
    scan: ScanMode,
) -> Stability {
    if support.is_empty() {
        return Stability::Unstable;
    }
    let mut table = SubsetTable::new(g, support, non_inv, t, Some(g.basepoint()), scan);
    table.classify(&local_degrees(support, degrees))
}

pub fn classify(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> Stability {
    classify_on(g, g.all(), sheaf.non_inv, &sheaf.degrees, t, ScanMode::All)
}

/// Stability of a piece with respect to the restricted polarization.
pub fn classify_piece(g: &DualGraph, piece: &SheafPiece, t: &Thresholds) -> Stability {
    classify_on(g, piece.support, piece.sheaf.non_inv, &piece.sheaf.degrees, t, ScanMode::All)
}

pub fn is_semistable(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> bool {
    classify(g, sheaf, t).is_semistable()
}

pub fn is_stable(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> bool {
    classify(g, sheaf, t).is_stable()
}

pub fn is_p_quasistable(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> bool {
    classify(g, sheaf, t).is_p_quasistable()
}

/// Search box for multidegrees on `support` with node set `S`.
///
/// Each component's lower bound comes from the singleton inequality
/// `χ(I_{v}) ≥ b_v`, each upper bound from the total `χ = b_W` minus the
/// other lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBox {
    pub support: Subcurve,
    /// Required `Σ_{v∈W} d_v`.
    pub total: i64,
    /// `(low, high)` per ambient component; `(0, 0)` off the support.
    pub bounds: Vec<(i64, i64)>,
}

impl DegreeBox {
    pub fn is_empty(&self) -> bool {
        self.bounds.iter().any(|(lo, hi)| lo > hi)
    }
}

/// `None` when `b_W` is not an integer, so nothing can satisfy the total.
pub fn degree_box(
    g: &DualGraph,
    support: Subcurve,
    t: &Thresholds,
    non_inv: EdgeSet,
) -> Option<DegreeBox> {
    let scaled = t.scaled_on(support);
    if scaled % t.denom() != 0 {
        return None;
    }
    let chi = scaled / t.denom();
    let internal = g.internal_edges(support);
    let genus_part: i64 = support.iter().map(|v| 1 - i64::from(g.genus(v))).sum();
    let total = chi - genus_part + internal.difference(non_inv).len() as i64;
    let mut bounds = vec![(0i64, 0i64); g.n()];
    for v in support.iter() {
        let b = Rational::new(t.scaled[v], t.denom());
        let loops = g.internal_edges(Subcurve::singleton(v)).difference(non_inv).len() as i64;
        bounds[v].0 = b.ceil().to_integer() - (1 - i64::from(g.genus(v))) + loops;
    }
    let low_sum: i64 = support.iter().map(|v| bounds[v].0).sum();
    for v in support.iter() {
        bounds[v].1 = total - (low_sum - bounds[v].0);
    }
    Some(DegreeBox { support, total, bounds })
}

/// What to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Query {
    pub mode: Mode,
    pub simple_only: bool,
    pub scan: ScanMode,
}

impl Query {
    pub fn new(mode: Mode, simple_only: bool) -> Self {
        Self { mode, simple_only, scan: ScanMode::All }
    }
}

/// Enumeration prepared for one support and query, reusable across
/// polarizations.
///
/// For a node set `S`, write `x(Y) = Σ_{v∈Y} d_v`; the condition on `Y` reads
/// `x(Y) ≥ b_Y - base_S(Y)` (strictly, where the mode demands it), with
/// `base_S(Y) = Σ_{v∈Y}(1-g_v) - #(edges inside Y not in S)`. The degree box
/// is scanned coordinate by coordinate: once `d` is fixed on a prefix of the
/// components, each subcurve `Y` inside the prefix bounds the next coordinate
/// from below through `Y` and from above through `W - Y`. A multidegree that
/// reaches the last coordinate has passed every inequality.
#[derive(Debug, Clone)]
pub struct Enumerator {
    support: Subcurve,
    verts: Vec<usize>,
    n: usize,
    mode: Mode,
    skip: Vec<bool>,
    p_bit: usize,
    sets: Vec<(EdgeSet, Vec<i64>)>,
}

impl Enumerator {
    pub fn new(g: &DualGraph, support: Subcurve, query: Query) -> Self {
        let sets = noninv_sets_on(g, support, query.simple_only);
        Self::with_sets(g, support, query.mode, query.scan, sets)
    }

    /// Restricted to the given node sets, which must lie inside `support`.
    pub fn with_sets(
        g: &DualGraph,
        support: Subcurve,
        mode: Mode,
        scan: ScanMode,
        sets: Vec<EdgeSet>,
    ) -> Self {
        let verts: Vec<usize> = support.iter().collect();
        let k = verts.len();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let internal = g.internal_edges(support);
        let to_local = |e: usize| {
            let (a, b) = g.endpoints(e);
            (1usize << local[a]) | (1usize << local[b])
        };
        let size = 1usize << k;
        let mut genus_part = vec![0i64; size];
        for mask in 1..size {
            genus_part[mask] =
                genus_part[mask & (mask - 1)] + 1 - i64::from(g.genus(verts[mask.trailing_zeros() as usize]));
        }
        let all_local: Vec<u64> = internal.iter().map(|e| to_local(e) as u64).collect();
        let skip = (0..size)
            .map(|m| scan == ScanMode::ConnectedOnly && m != 0 && !local_connected(m as u64, &all_local))
            .collect();
        let sets = sets
            .into_iter()
            .map(|s| {
                let usable: Vec<usize> = internal.difference(s).iter().map(to_local).collect();
                let base = (0..size)
                    .map(|m| genus_part[m] - usable.iter().filter(|&&em| em & m == em).count() as i64)
                    .collect();
                (s, base)
            })
            .collect();
        let p_bit = if support.contains(g.basepoint()) { 1 << local[g.basepoint()] } else { 0 };
        Self { support, verts, n: g.n(), mode, skip, p_bit, sets }
    }

    /// Admitted sheaves, sorted by `(S, d)` when the node sets were sorted.
    pub fn run(&self, t: &Thresholds) -> Vec<SheafClass> {
        let mut out = Vec::new();
        self.run_into(t, &mut out);
        out
    }

    pub fn run_into(&self, t: &Thresholds, out: &mut Vec<SheafClass>) {
        let k = self.verts.len();
        if k == 0 {
            return;
        }
        let full = (1usize << k) - 1;
        let denom = t.denom();
        // least admissible x(Y) + base(Y), independent of S
        let mut thr = vec![0i64; full + 1];
        let mut need = vec![0i64; full + 1];
        for mask in 1..=full {
            let low = mask.trailing_zeros() as usize;
            thr[mask] = thr[mask & (mask - 1)] + t.scaled[self.verts[low]];
            let strict = match self.mode {
                Mode::Semistable => 0,
                Mode::Stable => 1,
                Mode::Quasistable => i64::from(mask & self.p_bit != 0),
            };
            need[mask] = Integer::div_ceil(&(thr[mask] + strict), &denom);
        }
        if thr[full] % denom != 0 {
            return;
        }
        let chi = thr[full] / denom;
        let mut walk = BoxWalk {
            lower: vec![0; full + 1],
            total: 0,
            d: vec![0; k],
            sums: vec![0; full + 1],
            rest: vec![(0, 0); k + 1],
        };
        for (s, base) in &self.sets {
            for mask in 1..full {
                walk.lower[mask] = if self.skip[mask] { UNBOUNDED } else { need[mask] - base[mask] };
            }
            walk.total = chi - base[full];
            if k == 1 {
                walk.d[0] = walk.total;
                self.emit(*s, &walk.d, out);
                continue;
            }
            // box from the singleton inequalities and their complements
            let mut empty = false;
            for i in (0..k).rev() {
                let bit = 1usize << i;
                let lo = walk.lower[bit];
                let hi = walk.total - walk.lower[full ^ bit];
                empty |= lo > hi;
                walk.rest[i] = (walk.rest[i + 1].0 + lo, walk.rest[i + 1].1 + hi);
            }
            if empty {
                continue;
            }
            walk.descend(0, &mut |d| self.emit(*s, d, out));
        }
    }

    fn emit(&self, s: EdgeSet, d: &[i64], out: &mut Vec<SheafClass>) {
        let mut degrees = vec![0; self.n];
        for (&v, &x) in self.verts.iter().zip(d) {
            degrees[v] = x;
        }
        out.push(SheafClass { non_inv: s, degrees });
    }

    pub fn support(&self) -> Subcurve {
        self.support
    }
}

/// Lower bound standing for "no constraint"; small enough that sums of 64
/// of them cannot overflow.
const UNBOUNDED: i64 = -(1 << 52);

/// Depth-first walk over a degree box with subcurve pruning.
struct BoxWalk {
    /// Least admissible `x(Y)` per local mask.
    lower: Vec<i64>,
    total: i64,
    d: Vec<i64>,
    /// `x(Y)` for masks inside the fixed prefix.
    sums: Vec<i64>,
    /// Box bounds summed over coordinates `i..`.
    rest: Vec<(i64, i64)>,
}

impl BoxWalk {
    fn descend(&mut self, i: usize, visit: &mut impl FnMut(&[i64])) {
        let k = self.d.len();
        let full = (1usize << k) - 1;
        let bit = 1usize << i;
        let fixed = self.sums[bit - 1];
        let (rest_lo, rest_hi) = self.rest[i + 1];
        let (own_lo, own_hi) = (self.rest[i].0 - rest_lo, self.rest[i].1 - rest_hi);
        let mut lo = own_lo.max(self.total - fixed - rest_hi);
        let mut hi = own_hi.min(self.total - fixed - rest_lo);
        for m in 0..bit {
            let y = m | bit;
            if y != full {
                lo = lo.max(self.lower[y] - self.sums[m]);
                hi = hi.min(self.total - self.lower[full ^ y] - self.sums[m]);
            }
        }
        for x in lo..=hi {
            self.d[i] = x;
            for m in 0..bit {
                self.sums[m | bit] = self.sums[m] + x;
            }
            if i + 1 == k {
                visit(&self.d);
            } else {
                self.descend(i + 1, visit);
            }
        }
    }
}

/// Every sheaf on `support` with node set exactly `non_inv` admitted by
/// `mode`, sorted by multidegree.
pub fn enumerate_with_noninv(
    g: &DualGraph,
    support: Subcurve,
    t: &Thresholds,
    mode: Mode,
    scan: ScanMode,
    non_inv: EdgeSet,
) -> Vec<SheafClass> {
    Enumerator::with_sets(g, support, mode, scan, vec![non_inv]).run(t)
}

/// All sheaves on `support` matching `query`, sorted by `(S, d)`.
pub fn enumerate_on(
    g: &DualGraph,
    support: Subcurve,
    t: &Thresholds,
    query: Query,
) -> Vec<SheafClass> {
    Enumerator::new(g, support, query).run(t)
}

/// Every sheaf class on the curve admitted by `mode`, duplicate-free and
/// sorted by `(S, d)`.
pub fn enumerate_sheaves(
    g: &DualGraph,
    t: &Thresholds,
    mode: Mode,
    simple_only: bool,
) -> Vec<SheafClass> {
    enumerate_on(g, g.all(), t, Query::new(mode, simple_only))
}

/// Pieces on `support` matching `query`.
pub fn enumerate_pieces(
    g: &DualGraph,
    support: Subcurve,
    t: &Thresholds,
    query: Query,
) -> Vec<SheafPiece> {
    enumerate_on(g, support, t, query)
        .into_iter()
        .map(|sheaf| SheafPiece { support, sheaf })
        .collect()
}

/// Recovers `(χ, 𝔞)` from a bundle: `χ = -μ(E)`, `a_v = deg(E|_{X_v}) / (r μ(E))`.
pub fn polarization_from_bundle(e: &IntegerPolarization) -> Result<Polarization, StabilityError> {
    let mu = e.slope();
    if mu == 0 {
        return Err(StabilityError::ZeroSlope);
    }
    let scale = i64::from(e.rank) * mu;
    let weights = e.degrees.iter().map(|&d| Rational::new(d, scale)).collect();
    Ok(Polarization { chi: -mu, weights })
}

/// The bundle `F` of rank `r n` with `deg F|_{X_P} = n deg E|_{X_P} - (n - 1)`
/// and `deg F|_{X_i} = n deg E|_{X_i} + 1` elsewhere. `P`-quasistability
/// for `E` coincides with stability and with semistability for `F`.
pub fn quasistable_to_stable_polarization(
    e: &IntegerPolarization,
    g: &DualGraph,
) -> Result<IntegerPolarization, StabilityError> {
    let n = g.n();
    if e.degrees.len() != n {
        return Err(StabilityError::Length { expected: n, got: e.degrees.len() });
    }
    let nn = n as i64;
    let degrees = e
        .degrees
        .iter()
        .enumerate()
        .map(|(v, &d)| if v == g.basepoint() { nn * d - (nn - 1) } else { nn * d + 1 })
        .collect();
    Ok(IntegerPolarization { rank: e.rank * n as u32, degrees })
}

/// Whether `μ(E|_Y)` and `μ(E|_Z)` are integers for `Z` every connected
/// component of the complement of the connected proper subcurve `y`.
pub fn is_integer_at(g: &DualGraph, t: &Thresholds, y: Subcurve) -> Result<bool, StabilityError> {
    if y.is_empty() {
        return Err(StabilityError::EmptySubcurve);
    }
    if y == g.all() || !y.is_subset(g.all()) {
        return Err(StabilityError::NotProper);
    }
    if !g.is_connected_set(y) {
        return Err(StabilityError::NotConnected);
    }
    Ok(integer_at_unchecked(g, t, y))
}

fn integer_at_unchecked(g: &DualGraph, t: &Thresholds, y: Subcurve) -> bool {
    t.is_integral_on(y)
        && g.components_using(g.all().difference(y), g.all_edges())
            .into_iter()
            .all(|z| t.is_integral_on(z))
}

fn connected_proper(g: &DualGraph) -> impl Iterator<Item = Subcurve> + '_ {
    g.all().subsets().filter(move |&y| y != g.all() && g.is_connected_set(y))
}

/// Hypotheses under which semistable = stable, respectively
/// `P`-quasistable = stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prop35Flags {
    /// The polarization is integer at no connected proper subcurve.
    pub not_integer_anywhere: bool,
    /// Every connected proper subcurve where it is integer contains `P`.
    pub integer_only_at_p_subcurves: bool,
}

pub fn check_prop35_hypotheses(g: &DualGraph, t: &Thresholds) -> Prop35Flags {
    let p = g.basepoint();
    let mut flags = Prop35Flags { not_integer_anywhere: true, integer_only_at_p_subcurves: true };
    for y in connected_proper(g) {
        if integer_at_unchecked(g, t, y) {
            flags.not_integer_anywhere = false;
            if !y.contains(p) {
                flags.integer_only_at_p_subcurves = false;
            }
        }
    }
    flags
}

/// Outcome of checking that every proper subcurve `Y` with `a_Y χ ∈ Z` is a
/// spine or contains `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TheoremHypothesis {
    /// Holds over all proper subcurves, disconnected ones included.
    pub holds: bool,
    /// Holds when only connected subcurves are considered.
    pub holds_for_connected: bool,
    /// First violating subcurve (by bit pattern).
    pub witness: Option<Subcurve>,
    /// First violating connected subcurve.
    pub connected_witness: Option<Subcurve>,
}

impl TheoremHypothesis {
    /// True when the verdict depends on whether disconnected subcurves count.
    pub fn depends_on_reading(&self) -> bool {
        self.holds != self.holds_for_connected
    }
}

pub fn check_theorem_hypothesis(g: &DualGraph, t: &Thresholds) -> TheoremHypothesis {
    let p = g.basepoint();
    let mut witness = None;
    let mut connected_witness = None;
    for y in g.all().subsets() {
        if y == g.all() || y.contains(p) || !t.is_integral_on(y) || g.is_spine(y) {
            continue;
        }
        witness.get_or_insert(y);
        if connected_witness.is_none() && g.is_connected_set(y) {
            connected_witness = Some(y);
        }
    }
    TheoremHypothesis {
        holds: witness.is_none(),
        holds_for_connected: connected_witness.is_none(),
        witness,
        connected_witness,
    }
}
