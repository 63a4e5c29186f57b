//! Structural properties checked on a single input by `verify`.
//!
//! Each check reports whether it held and, if not, a short description of
//! the first counterexample. A failed check is a finding, not an error.

use std::collections::BTreeSet;

use spinejac_core::{
    check_prop35_hypotheses, check_theorem_hypothesis, classify, enumerate_on, enumerate_sheaves,
    glue_pieces, gr_class, quasistable_to_stable_polarization, restrict_to_decomposition,
    tabulate_classes, verify_theorem_bijection, DualGraph, IntegerPolarization, Mode, Query,
    ScanMode, SheafClass, SheafPiece, SpineDecomposition, Thresholds,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// `None` when the check does not apply to this input.
    pub holds: Option<bool>,
    pub detail: String,
}

impl Check {
    fn verdict(name: &'static str, failure: Option<String>) -> Self {
        match failure {
            None => Self { name, holds: Some(true), detail: String::new() },
            Some(detail) => Self { name, holds: Some(false), detail },
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Self { name, holds: None, detail: why.to_owned() }
    }
}

fn set(v: Vec<SheafClass>) -> BTreeSet<SheafClass> {
    v.into_iter().collect()
}

/// Every check that applies to `(g, t)`, plus the transform check when a
/// bundle is given.
pub fn run_all(g: &DualGraph, t: &Thresholds, bundle: Option<&IntegerPolarization>) -> Vec<Check> {
    let mut out = vec![
        monotonicity(g, t),
        connected_scan(g, t),
        prop35(g, t),
        spine_count(g),
        restriction_chi(g, t),
        decomposition_gluing(g, t),
        graded_chi(g, t),
        theorem_bijection(g, t),
    ];
    out.push(match bundle {
        Some(e) => transform_equivalence(g, e),
        None => Check::skipped("transform-equivalence", "needs a bundle polarization"),
    });
    out
}

/// stable ⊆ `P`-quasistable ⊆ semistable.
pub fn monotonicity(g: &DualGraph, t: &Thresholds) -> Check {
    let ss = set(enumerate_sheaves(g, t, Mode::Semistable, false));
    let qs = set(enumerate_sheaves(g, t, Mode::Quasistable, false));
    let st = set(enumerate_sheaves(g, t, Mode::Stable, false));
    let failure = st
        .difference(&qs)
        .next()
        .map(|i| format!("stable but not quasistable: {i:?}"))
        .or_else(|| qs.difference(&ss).next().map(|i| format!("quasistable but not semistable: {i:?}")));
    Check::verdict("monotonicity", failure)
}

/// Scanning only connected subcurves gives the same enumerations.
pub fn connected_scan(g: &DualGraph, t: &Thresholds) -> Check {
    let failure = [Mode::Semistable, Mode::Quasistable, Mode::Stable].into_iter().find_map(|mode| {
        let all = enumerate_on(g, g.all(), t, Query { mode, simple_only: false, scan: ScanMode::All });
        let conn =
            enumerate_on(g, g.all(), t, Query { mode, simple_only: false, scan: ScanMode::ConnectedOnly });
        (all != conn).then(|| format!("{mode:?}: {} vs {} sheaves", all.len(), conn.len()))
    });
    Check::verdict("connected-scan", failure)
}

/// Integrality hypotheses force the enumerations to coincide.
pub fn prop35(g: &DualGraph, t: &Thresholds) -> Check {
    let flags = check_prop35_hypotheses(g, t);
    if !flags.not_integer_anywhere && !flags.integer_only_at_p_subcurves {
        return Check::skipped("integrality", "polarization is integer at a subcurve missing P");
    }
    let st = enumerate_sheaves(g, t, Mode::Stable, false);
    let mut failure = None;
    if flags.not_integer_anywhere && enumerate_sheaves(g, t, Mode::Semistable, false) != st {
        failure = Some("not integer anywhere, yet semistable ≠ stable".to_owned());
    }
    if flags.integer_only_at_p_subcurves && enumerate_sheaves(g, t, Mode::Quasistable, false) != st {
        failure = Some("integer only at subcurves through P, yet quasistable ≠ stable".to_owned());
    }
    Check::verdict("integrality", failure)
}

/// One spine decomposition per set of separating nodes.
pub fn spine_count(g: &DualGraph) -> Check {
    let got = g.spine_decompositions().len();
    let bridges = g.separating_nodes().len();
    let expected = 1usize.checked_shl(bridges as u32).unwrap_or(0);
    Check::verdict(
        "spine-count",
        (got != expected).then(|| format!("{got} decompositions, {bridges} separating nodes")),
    )
}

/// Restricting a simple semistable sheaf to `q` parts adds `q - 1` to `χ`.
pub fn restriction_chi(g: &DualGraph, t: &Thresholds) -> Check {
    let sheaves = enumerate_sheaves(g, t, Mode::Semistable, true);
    let decs = g.spine_decompositions();
    let failure = sheaves.iter().find_map(|i| {
        let chi = i.euler_char(g);
        decs.iter().find_map(|dec| {
            let pieces = restrict_to_decomposition(g, i, dec).ok()?;
            let sum: i64 = pieces.iter().map(|p| p.euler_char(g)).sum();
            (sum != chi + dec.len() as i64 - 1)
                .then(|| format!("{i:?} on {:?}: Σχ = {sum}, χ = {chi}", dec.parts()))
        })
    });
    Check::verdict("restriction-chi", failure)
}

fn permutations(q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..q {
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

fn cartesian(lists: &[Vec<SheafPiece>]) -> Vec<Vec<SheafPiece>> {
    let mut out = vec![vec![]];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<SheafPiece>| {
                list.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Simple semistable sheaves glued from semistable pieces in every order.
pub fn glued_semistable(
    g: &DualGraph,
    t: &Thresholds,
    dec: &SpineDecomposition,
) -> Option<BTreeSet<SheafClass>> {
    let query = Query::new(Mode::Semistable, true);
    let lists: Vec<Vec<SheafPiece>> = dec
        .parts()
        .iter()
        .map(|&z| spinejac_core::enumerate_pieces(g, z, t, query))
        .collect();
    let mut out = BTreeSet::new();
    for combo in cartesian(&lists) {
        for order in permutations(dec.len()) {
            out.insert(glue_pieces(g, dec, &combo, &order).ok()?);
        }
    }
    Some(out)
}

/// For decompositions whose parts all have integral thresholds, simple
/// semistable sheaves are exactly the gluings of semistable pieces, and no
/// sheaf is stable once there are two or more parts.
pub fn decomposition_gluing(g: &DualGraph, t: &Thresholds) -> Check {
    let decs: Vec<SpineDecomposition> = g
        .spine_decompositions()
        .into_iter()
        .filter(|d| d.parts().iter().all(|&z| t.is_integral_on(z)))
        .collect();
    if decs.is_empty() {
        return Check::skipped("decomposition-gluing", "no decomposition with integral parts");
    }
    let simple = set(enumerate_sheaves(g, t, Mode::Semistable, true));
    let stable_empty = enumerate_sheaves(g, t, Mode::Stable, false).is_empty();
    let failure = decs.iter().find_map(|dec| {
        let glued = glued_semistable(g, t, dec)?;
        if glued != simple {
            return Some(format!(
                "{:?}: {} glued vs {} simple semistable",
                dec.parts(),
                glued.len(),
                simple.len()
            ));
        }
        (dec.len() >= 2 && !stable_empty).then(|| format!("{:?}: stable sheaves exist", dec.parts()))
    });
    Check::verdict("decomposition-gluing", failure)
}

/// The graded sheaf of a Jordan–Hölder filtration has the same `χ`.
pub fn graded_chi(g: &DualGraph, t: &Thresholds) -> Check {
    let failure = enumerate_sheaves(g, t, Mode::Semistable, false).into_iter().find_map(|i| {
        match gr_class(g, &i, t) {
            Err(e) => Some(format!("{i:?}: {e}")),
            Ok(c) => {
                let chi: i64 = c.parts().iter().map(|p| p.euler_char(g)).sum();
                (chi != i.euler_char(g)).then(|| format!("{i:?}: χ(Gr) = {chi}"))
            }
        }
    });
    Check::verdict("graded-chi", failure)
}

/// Under the spine hypothesis each S-equivalence class holds exactly one
/// quasistable sheaf, given by the representative formula.
pub fn theorem_bijection(g: &DualGraph, t: &Thresholds) -> Check {
    let hyp = check_theorem_hypothesis(g, t);
    if !hyp.holds {
        let counterexample = tabulate_classes(g, t)
            .ok()
            .and_then(|table| table.rows.iter().find(|r| r.quasistable.len() != 1).map(|r| r.quasistable.len()));
        let why = match counterexample {
            Some(c) => format!("hypothesis fails; a class has {c} quasistable members"),
            None => "hypothesis fails; every class still has one quasistable member".to_owned(),
        };
        return Check::skipped("class-bijection", &why);
    }
    let failure = match verify_theorem_bijection(g, t) {
        Ok(report) => report.failures.first().map(|f| format!("{f:?}")),
        Err(e) => Some(e.to_string()),
    };
    Check::verdict("class-bijection", failure)
}

/// Quasistable for `E` = stable for the transformed `F` = semistable for `F`.
pub fn transform_equivalence(g: &DualGraph, e: &IntegerPolarization) -> Check {
    let f = match quasistable_to_stable_polarization(e, g) {
        Ok(f) => f,
        Err(err) => return Check::verdict("transform-equivalence", Some(err.to_string())),
    };
    let qe = enumerate_sheaves(g, &e.thresholds(), Mode::Quasistable, false);
    let sf = enumerate_sheaves(g, &f.thresholds(), Mode::Stable, false);
    let ssf = enumerate_sheaves(g, &f.thresholds(), Mode::Semistable, false);
    let failure = if qe != sf {
        Some(format!("{} quasistable for E, {} stable for F", qe.len(), sf.len()))
    } else if sf != ssf {
        Some(format!("{} stable, {} semistable for F", sf.len(), ssf.len()))
    } else {
        qe.iter()
            .find(|i| !classify(g, i, &f.thresholds()).is_stable())
            .map(|i| format!("{i:?} not stable for F"))
    };
    Check::verdict("transform-equivalence", failure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spinejac_core::{Polarization, Rational};

    #[test]
    fn all_checks_hold_on_small_curves() {
        let curves = [
            DualGraph::rational(2, &[(0, 1)]).unwrap(),
            DualGraph::rational(2, &[(0, 1), (0, 1)]).unwrap(),
            DualGraph::rational(3, &[(0, 1), (1, 2), (2, 2)]).unwrap(),
        ];
        for g in &curves {
            for chi in -1..=2 {
                let t = Polarization::uniform(g.n(), chi).thresholds();
                let e = IntegerPolarization::new(1, vec![-chi; 1].into_iter().chain(vec![0; g.n() - 1]).collect())
                    .unwrap();
                for c in run_all(g, &t, Some(&e)) {
                    assert_ne!(c.holds, Some(false), "{g:?} χ={chi}: {c:?}");
                }
            }
        }
        let t = Thresholds::new(&[Rational::new(1, 2), Rational::new(1, 2)]);
        assert_eq!(theorem_bijection(&curves[1], &Polarization::uniform(2, 0).thresholds()).holds, None);
        assert_eq!(prop35(&curves[0], &t).holds, Some(true));
    }

    #[test]
    fn gluing_reproduces_the_two_component_sheaves() {
        let g = DualGraph::rational(2, &[(0, 1)]).unwrap();
        let t = Polarization::uniform(2, 0).thresholds();
        let dec = g.spine_decompositions().pop().unwrap();
        assert_eq!(dec.len(), 2);
        let glued = glued_semistable(&g, &t, &dec).unwrap();
        let expected: BTreeSet<_> =
            [SheafClass::invertible(vec![0, -1]), SheafClass::invertible(vec![-1, 0])].into_iter().collect();
        assert_eq!(glued, expected);
        assert_eq!(decomposition_gluing(&g, &t).holds, Some(true));
    }
}
