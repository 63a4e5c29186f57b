//! Jordan–Hölder filtrations, `Gr(I)`, S-equivalence, and the
//! `P`-quasistable representative of an S-equivalence class.
//!
//! A filtration `0 = I_0 ⊂ I_1 ⊂ .. ⊂ I_q = I` with quotients supported on
//! `Z_1, .., Z_q` is determined by the ordered partition: `I_j` is the kernel
//! of `I → I_{X - Y_j}` where `Y_j = Z_1 ∪ .. ∪ Z_j`. Numerically, the
//! quotient on `Z_j` is `I` restricted to `Z_j` with one degree removed for
//! every invertible node joining `Z_j` to a later part.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::DualGraph;
use crate::sets::{EdgeSet, Subcurve};
use crate::sheaf::{SheafClass, SheafPiece};
use crate::stability::{
    check_theorem_hypothesis, classify, classify_piece, enumerate_sheaves, Mode, Stability,
    Thresholds,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JhError {
    #[error("sheaf is not semistable")]
    NotSemistable,
    #[error("no Jordan–Hölder filtration found for a semistable sheaf")]
    NoFiltration,
    #[error("class parts do not partition the curve")]
    NotPartition,
    #[error("subcurve {0:?} of the class is not a spine")]
    NotSpine(Subcurve),
    #[error("hypothesis fails at subcurve {0:?}")]
    HypothesisFails(Subcurve),
}

/// Stable quotients in filtration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JhFiltration {
    pub steps: Vec<SheafPiece>,
}

impl JhFiltration {
    /// `Y_1 ⊂ Y_2 ⊂ .. ⊂ Y_q = X`.
    pub fn partial_unions(&self) -> Vec<Subcurve> {
        self.steps
            .iter()
            .scan(Subcurve::EMPTY, |acc, p| {
                *acc = acc.union(p.support);
                Some(*acc)
            })
            .collect()
    }

    /// `(𝔖(I), Gr(I))` with parts sorted by smallest component.
    pub fn graded(&self) -> SEquivClass {
        SEquivClass::new(self.steps.clone())
    }
}

/// `(𝔖(I), Gr(I))`: the supports of the Jordan–Hölder quotients together
/// with the quotients, sorted by smallest component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SEquivClass {
    parts: Vec<SheafPiece>,
}

impl SEquivClass {
    pub fn new(mut parts: Vec<SheafPiece>) -> Self {
        parts.sort_by(|a, b| a.support.first().cmp(&b.support.first()).then_with(|| a.cmp(b)));
        Self { parts }
    }

    pub fn parts(&self) -> &[SheafPiece] {
        &self.parts
    }

    pub fn supports(&self) -> impl Iterator<Item = Subcurve> + '_ {
        self.parts.iter().map(|p| p.support)
    }

    /// `Gr(I)` as a single (split) sheaf class on the whole curve.
    pub fn graded_sheaf(&self, g: &DualGraph) -> SheafClass {
        let mut degrees = vec![0; g.n()];
        let mut non_inv = g.all_edges();
        for p in &self.parts {
            for v in p.support.iter() {
                degrees[v] = p.sheaf.degrees[v];
            }
            let internal = g.internal_edges(p.support);
            non_inv = non_inv.difference(internal.difference(p.sheaf.non_inv));
        }
        SheafClass { non_inv, degrees }
    }
}

/// The subsheaf of `(S, d)` on `w` supported on `z ⊆ w`, as a piece on `z`:
/// the restriction to `z` twisted down at invertible nodes towards `w - z`.
fn kernel_piece(g: &DualGraph, w: Subcurve, non_inv: EdgeSet, degrees: &[i64], z: Subcurve) -> SheafPiece {
    let mut piece = SheafPiece::from_ambient(g, z, non_inv, degrees);
    let rest = w.difference(z);
    let invertible = g.edges_between(z, rest).difference(non_inv);
    for e in invertible.iter() {
        let (a, b) = g.endpoints(e);
        piece.sheaf.degrees[if z.contains(a) { a } else { b }] -= 1;
    }
    piece
}

struct Search<'a> {
    g: &'a DualGraph,
    t: &'a Thresholds,
    first_only: bool,
    found: Vec<JhFiltration>,
}

impl Search<'_> {
    /// `w`: support still to be filtered; `(non_inv, degrees)`: the current
    /// quotient on `w`.
    fn run(&mut self, w: Subcurve, non_inv: EdgeSet, degrees: &[i64], prefix: &mut Vec<SheafPiece>) {
        // the whole remainder first, so stable sheaves get q = 1
        let candidates = core::iter::once(w).chain(w.subsets().filter(|&z| z != w));
        for z in candidates {
            if self.first_only && !self.found.is_empty() {
                return;
            }
            if !self.g.is_connected_set(z) {
                continue;
            }
            let sub = kernel_piece(self.g, w, non_inv, degrees, z);
            if classify_piece(self.g, &sub, self.t) != Stability::Stable {
                continue;
            }
            prefix.push(sub);
            let rest = w.difference(z);
            if rest.is_empty() {
                self.found.push(JhFiltration { steps: prefix.clone() });
            } else {
                let q = SheafPiece::from_ambient(self.g, rest, non_inv, degrees);
                self.run(rest, q.sheaf.non_inv, &q.sheaf.degrees, prefix);
            }
            prefix.pop();
        }
    }
}

fn search(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds, first_only: bool) -> Result<Vec<JhFiltration>, JhError> {
    if !classify(g, sheaf, t).is_semistable() {
        return Err(JhError::NotSemistable);
    }
    let mut s = Search { g, t, first_only, found: Vec::new() };
    s.run(g.all(), sheaf.non_inv, &sheaf.degrees, &mut Vec::new());
    if s.found.is_empty() {
        return Err(JhError::NoFiltration);
    }
    Ok(s.found)
}

/// A Jordan–Hölder filtration, found by exhaustive search over ordered
/// partitions into connected parts (`q = 1` tried first).
pub fn find_jh_filtration(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> Result<JhFiltration, JhError> {
    search(g, sheaf, t, true).map(|mut v| v.swap_remove(0))
}

/// Every Jordan–Hölder filtration of a semistable sheaf.
pub fn all_jh_filtrations(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> Result<Vec<JhFiltration>, JhError> {
    search(g, sheaf, t, false)
}

pub fn gr_class(g: &DualGraph, sheaf: &SheafClass, t: &Thresholds) -> Result<SEquivClass, JhError> {
    find_jh_filtration(g, sheaf, t).map(|f| f.graded())
}

pub fn s_equivalent(
    g: &DualGraph,
    a: &SheafClass,
    b: &SheafClass,
    t: &Thresholds,
) -> Result<bool, JhError> {
    Ok(gr_class(g, a, t)? == gr_class(g, b, t)?)
}

/// Nodes of `z` leading to components of the complement that miss `P`.
pub fn nodes_away_from_basepoint(g: &DualGraph, z: Subcurve) -> EdgeSet {
    let rest = g.all().difference(z);
    if rest.is_empty() {
        return EdgeSet::EMPTY;
    }
    let far: Subcurve = g
        .components_using(rest, g.all_edges())
        .into_iter()
        .filter(|c| !c.contains(g.basepoint()))
        .fold(Subcurve::EMPTY, Subcurve::union);
    g.edges_between(z, far)
}

/// The `P`-quasistable sheaf of an S-equivalence class whose supports are
/// spines: invertible at every node between parts, and on each part `Z` the
/// graded piece twisted up by the nodes of `Z` facing away from `P`.
pub fn quasistable_representative(g: &DualGraph, class: &SEquivClass) -> Result<SheafClass, JhError> {
    let mut covered = Subcurve::EMPTY;
    for z in class.supports() {
        if z.is_empty() || !z.is_disjoint(covered) {
            return Err(JhError::NotPartition);
        }
        covered = covered.union(z);
    }
    if covered != g.all() {
        return Err(JhError::NotPartition);
    }
    if let Some(z) = class.supports().find(|&z| !g.is_spine(z)) {
        return Err(JhError::NotSpine(z));
    }
    let mut non_inv = EdgeSet::EMPTY;
    let mut degrees = vec![0; g.n()];
    for p in class.parts() {
        non_inv = non_inv.union(p.sheaf.non_inv.intersection(g.internal_edges(p.support)));
        for v in p.support.iter() {
            degrees[v] += p.sheaf.degrees[v];
        }
        for e in nodes_away_from_basepoint(g, p.support).iter() {
            let (a, b) = g.endpoints(e);
            degrees[if p.support.contains(a) { a } else { b }] += 1;
        }
    }
    Ok(SheafClass { non_inv, degrees })
}

/// One S-equivalence class of semistable sheaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub class: SEquivClass,
    /// Every semistable sheaf (simple or not) in the class, sorted.
    pub members: Vec<SheafClass>,
    /// The `P`-quasistable members.
    pub quasistable: Vec<SheafClass>,
    /// The representative formula's output, or why it does not apply.
    pub representative: Result<SheafClass, JhError>,
}

/// All semistable sheaves grouped by S-equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    pub rows: Vec<ClassRow>,
    pub semistable_count: usize,
    pub quasistable_count: usize,
}

pub fn tabulate_classes(g: &DualGraph, t: &Thresholds) -> Result<ClassTable, JhError> {
    let semistable = enumerate_sheaves(g, t, Mode::Semistable, false);
    let mut groups: BTreeMap<SEquivClass, Vec<SheafClass>> = BTreeMap::new();
    for i in &semistable {
        groups.entry(gr_class(g, i, t)?).or_default().push(i.clone());
    }
    let mut quasistable_count = 0;
    let rows = groups
        .into_iter()
        .map(|(class, members)| {
            let quasistable: Vec<SheafClass> = members
                .iter()
                .filter(|i| classify(g, i, t).is_p_quasistable())
                .cloned()
                .collect();
            quasistable_count += quasistable.len();
            let representative = quasistable_representative(g, &class);
            ClassRow { class, members, quasistable, representative }
        })
        .collect();
    Ok(ClassTable { rows, semistable_count: semistable.len(), quasistable_count })
}

/// A way in which the quasistable sheaves fail to match S-equivalence classes
/// one to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionFailure {
    /// A class with zero or several quasistable members.
    QuasistableCount { row: usize, count: usize },
    /// The representative formula disagrees with the quasistable member.
    RepresentativeMismatch { row: usize, expected: SheafClass, found: SheafClass },
    /// The representative formula does not apply to the class.
    RepresentativeUnsupported { row: usize, reason: JhError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub table: ClassTable,
    pub failures: Vec<BijectionFailure>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.table.rows.len()
    }
}

/// Checks a class table for the one-to-one correspondence between
/// quasistable sheaves and S-equivalence classes.
pub fn bijection_failures(table: &ClassTable) -> Vec<BijectionFailure> {
    let mut failures = Vec::new();
    for (row, r) in table.rows.iter().enumerate() {
        if r.quasistable.len() != 1 {
            failures.push(BijectionFailure::QuasistableCount { row, count: r.quasistable.len() });
        }
        match &r.representative {
            Ok(rep) => {
                if let [only] = r.quasistable.as_slice() {
                    if only != rep {
                        failures.push(BijectionFailure::RepresentativeMismatch {
                            row,
                            expected: only.clone(),
                            found: rep.clone(),
                        });
                    }
                }
            }
            Err(e) => failures.push(BijectionFailure::RepresentativeUnsupported { row, reason: e.clone() }),
        }
    }
    failures
}

/// Enumerates every semistable sheaf, groups by S-equivalence and checks that
/// each class holds exactly one `P`-quasistable sheaf, equal to the
/// representative formula. Requires that every proper subcurve `Y` with
/// `a_Y χ ∈ Z` be a spine or contain `P`.
pub fn verify_theorem_bijection(g: &DualGraph, t: &Thresholds) -> Result<BijectionReport, JhError> {
    let hyp = check_theorem_hypothesis(g, t);
    if let Some(w) = hyp.witness {
        return Err(JhError::HypothesisFails(w));
    }
    let table = tabulate_classes(g, t)?;
    let failures = bijection_failures(&table);
    Ok(BijectionReport { table, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::Polarization;

    fn sc(v: &[usize]) -> Subcurve {
        v.iter().copied().collect()
    }

    fn piece(g: &DualGraph, z: &[usize], degrees: &[i64]) -> SheafPiece {
        SheafPiece::from_ambient(g, sc(z), EdgeSet::EMPTY, degrees)
    }

    fn edge2() -> DualGraph {
        DualGraph::rational(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn filtration_examples() {
        let g = edge2();
        let t = Polarization::uniform(2, 0).thresholds();
        let f = find_jh_filtration(&g, &SheafClass::invertible(vec![0, -1]), &t).unwrap();
        assert_eq!(f.steps, [piece(&g, &[0], &[-1, 0]), piece(&g, &[1], &[0, -1])]);
        assert_eq!(f.partial_unions(), [sc(&[0]), sc(&[0, 1])]);
        let f = find_jh_filtration(&g, &SheafClass::invertible(vec![-1, 0]), &t).unwrap();
        assert_eq!(f.steps, [piece(&g, &[1], &[0, -1]), piece(&g, &[0], &[-1, 0])]);

        let cyc = DualGraph::rational(2, &[(0, 1), (0, 1)]).unwrap();
        let t1 = Polarization::uniform(2, 1).thresholds();
        let i = SheafClass::invertible(vec![1, 0]);
        let f = find_jh_filtration(&cyc, &i, &t1).unwrap();
        assert_eq!(f.steps, [SheafPiece { support: cyc.all(), sheaf: i }]);

        let bad = SheafClass::invertible(vec![3, -4]);
        assert_eq!(find_jh_filtration(&g, &bad, &t), Err(JhError::NotSemistable));
    }

    #[test]
    fn gr_class_examples() {
        let g = edge2();
        let t = Polarization::uniform(2, 0).thresholds();
        let expected = SEquivClass::new(vec![piece(&g, &[1], &[0, -1]), piece(&g, &[0], &[-1, 0])]);
        let sheaves = [
            SheafClass::invertible(vec![0, -1]),
            SheafClass::invertible(vec![-1, 0]),
            SheafClass::new(EdgeSet::singleton(0), vec![-1, -1]),
        ];
        for i in &sheaves {
            assert_eq!(gr_class(&g, i, &t).unwrap(), expected);
            for f in all_jh_filtrations(&g, i, &t).unwrap() {
                assert_eq!(f.graded(), expected);
            }
            assert_eq!(s_equivalent(&g, i, &sheaves[2], &t), Ok(true));
        }
        assert_eq!(expected.graded_sheaf(&g), sheaves[2]);

        let cyc = DualGraph::rational(2, &[(0, 1), (0, 1)]).unwrap();
        let t1 = Polarization::uniform(2, 1).thresholds();
        let a = SheafClass::invertible(vec![1, 0]);
        let b = SheafClass::invertible(vec![0, 1]);
        assert_eq!(
            gr_class(&cyc, &a, &t1).unwrap().parts(),
            [SheafPiece { support: cyc.all(), sheaf: a.clone() }]
        );
        assert_eq!(s_equivalent(&cyc, &a, &a, &t1), Ok(true));
        assert_eq!(s_equivalent(&cyc, &a, &b, &t1), Ok(false));
    }

    #[test]
    fn representative_examples() {
        let g = edge2();
        let class = SEquivClass::new(vec![piece(&g, &[0], &[-1, 0]), piece(&g, &[1], &[0, -1])]);
        assert_eq!(quasistable_representative(&g, &class), Ok(SheafClass::invertible(vec![0, -1])));

        let cyc = DualGraph::rational(2, &[(0, 1), (0, 1)]).unwrap();
        let i = SheafClass::new(EdgeSet::singleton(1), vec![0, 0]);
        let single = SEquivClass::new(vec![SheafPiece { support: cyc.all(), sheaf: i.clone() }]);
        assert_eq!(quasistable_representative(&cyc, &single), Ok(i));

        let split = SEquivClass::new(vec![piece(&cyc, &[0], &[-1, 0]), piece(&cyc, &[1], &[0, -1])]);
        assert_eq!(quasistable_representative(&cyc, &split), Err(JhError::NotSpine(sc(&[0]))));

        // P in the middle of a path: both outer nodes face away from P
        let p3 = DualGraph::rational(3, &[(0, 1), (1, 2)]).unwrap().with_basepoint(1).unwrap();
        let class = SEquivClass::new(vec![
            piece(&p3, &[0], &[-1, 0, 0]),
            piece(&p3, &[1], &[0, -1, 0]),
            piece(&p3, &[2], &[0, 0, -1]),
        ]);
        let rep = quasistable_representative(&p3, &class).unwrap();
        assert_eq!(rep, SheafClass::invertible(vec![-1, 1, -1]));
        let t = Polarization::uniform(3, 0).thresholds();
        assert!(classify(&p3, &rep, &t).is_p_quasistable());
        assert_eq!(gr_class(&p3, &rep, &t).unwrap(), class);
    }

    #[test]
    fn bijection_examples() {
        let g = edge2();
        let t = Polarization::uniform(2, 0).thresholds();
        let rep = verify_theorem_bijection(&g, &t).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.class_count(), rep.table.semistable_count, rep.table.quasistable_count), (1, 3, 1));

        let cyc = DualGraph::rational(2, &[(0, 1), (0, 1)]).unwrap();
        let t1 = Polarization::uniform(2, 1).thresholds();
        let rep = verify_theorem_bijection(&cyc, &t1).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.class_count(), rep.table.quasistable_count), (4, 4));

        let t0 = Polarization::uniform(2, 0).thresholds();
        assert_eq!(verify_theorem_bijection(&cyc, &t0), Err(JhError::HypothesisFails(sc(&[1]))));

        let one = DualGraph::rational(1, &[(0, 0)]).unwrap();
        for chi in -2..=2 {
            let t = Polarization::uniform(1, chi).thresholds();
            let rep = verify_theorem_bijection(&one, &t).unwrap();
            assert!(rep.holds());
            // invertible of degree chi, plus the one non-invertible at the loop
            assert_eq!(rep.class_count(), 2);
        }
    }
}
