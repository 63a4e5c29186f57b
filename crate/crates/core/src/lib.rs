//! Combinatorics of compactified Jacobians of nodal curves.
//!
//! A nodal curve is given by its dual graph ([`DualGraph`]); torsion-free
//! rank-1 sheaves are tracked through their numerical classes
//! ([`SheafClass`]): the nodes where they fail to be invertible and the
//! multidegree on the corresponding partial normalization. On top of that the
//! crate decides and enumerates semistable, stable and `P`-quasistable
//! sheaves for a polarization, computes spine decompositions, Jordan–Hölder
//! data and S-equivalence classes, and checks the one-to-one correspondence
//! between `P`-quasistable sheaves and S-equivalence classes when every
//! integral subcurve is a spine or contains `P`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod graph;
pub mod jh;
pub mod sets;
pub mod sheaf;
pub mod stability;

pub use graph::{Component, DualGraph, GraphError, SpineDecomposition};
pub use jh::{
    all_jh_filtrations, bijection_failures, find_jh_filtration, gr_class,
    nodes_away_from_basepoint, quasistable_representative, s_equivalent, tabulate_classes, verify_theorem_bijection, BijectionFailure, BijectionReport, ClassRow,
    ClassTable, JhError, JhFiltration, SEquivClass,
};
pub use sets::{EdgeSet, Subcurve};
pub use sheaf::{
    all_noninv_sets, chi_on, glue_pieces, gluing_twist, noninv_sets_on, restrict_to_decomposition,
    SheafClass, SheafError, SheafPiece,
};
pub use stability::{
    check_prop35_hypotheses, check_theorem_hypothesis, classify, classify_on, classify_piece,
    degree_box, enumerate_on, enumerate_pieces, enumerate_sheaves, enumerate_with_noninv, Enumerator,
    is_integer_at, is_p_quasistable, is_semistable, is_stable, polarization_from_bundle,
    quasistable_to_stable_polarization, DegreeBox, IntegerPolarization, Mode, Polarization, Prop35Flags,
    Query, Rational, ScanMode, Stability, StabilityError, TheoremHypothesis, Thresholds,
};
