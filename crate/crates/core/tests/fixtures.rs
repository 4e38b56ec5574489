//! Cross-module fixture tests: the committed complex document is the
//! bit-exact export of the constructed quotient, and it survives a
//! round trip back into the invariants pipeline.

use vhlf_core::invariants::surface_invariants;
use vhlf_core::quaternion::standard_config;
use vhlf_core::square_complex::{build_sab, export_json, import_json, is_complete_bipartite, link_of};
use vhlf_core::vh_core::VHData;

const Q3_FIXTURE: &str = include_str!("fixtures/q3_tau2_complex.json");

#[test]
fn committed_fixture_is_the_exported_complex() {
    let data = VHData::build(standard_config(3, 2).unwrap()).unwrap();
    let cx = build_sab(&data).unwrap();
    assert_eq!(export_json(&cx), Q3_FIXTURE);
}

#[test]
fn committed_fixture_reimports_into_the_pipeline() {
    let cx = import_json(Q3_FIXTURE).unwrap();
    assert_eq!(cx.n_unoriented_edges(), 4);
    assert_eq!(cx.n_squares(), 4);
    assert!(is_complete_bipartite(&link_of(&cx)));
    let inv = surface_invariants(&cx, 3).unwrap();
    assert!(inv.fake_quadric);
}
