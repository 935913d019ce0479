use cbx_core::quiverdata::*;
use cbx_core::CbxError;

const A2_DOC: &str = r#"{
  "vertices": ["1", "2"],
  "arrows": [["1", "2"]],
  "dim": {"1": 2, "2": 1},
  "flavor": {"1": 1}
}"#;

#[test]
fn parses_a_type_a_document() {
    let th = parse_theory(A2_DOC).unwrap();
    assert_eq!(th, QuiverTheory::type_a(&[2, 1], &[1, 0]));
    assert_eq!(th.cartan(), vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(th.doubled_neighbors(0), vec![1]);
    assert_eq!(th.total_flavor(), 1);
    assert!(!th.has_loops());
}

#[test]
fn schema_errors_name_the_field() {
    let unknown = A2_DOC.replace("\"flavor\"", "\"flavour\"");
    match parse_theory(&unknown) {
        Err(CbxError::Schema { location: Some(l), .. }) => assert_eq!(l, "flavour"),
        other => panic!("unexpected {other:?}"),
    }
    let bad_vertex = A2_DOC.replace("[\"1\", \"2\"]]", "[\"1\", \"9\"]]");
    assert!(matches!(parse_theory(&bad_vertex), Err(CbxError::Schema { .. })));
    assert!(matches!(parse_theory("[1, 2]"), Err(CbxError::Schema { .. })));
    assert!(matches!(parse_theory("{"), Err(CbxError::Schema { .. })));
}

#[test]
fn jordan_quiver_has_a_loop() {
    let th = QuiverTheory::jordan(3, 2);
    assert!(th.has_loops());
    assert_eq!(th.dim, vec![3]);
    assert_eq!(th.cartan(), vec![vec![0]]);
}

#[test]
fn weyl_group_orders() {
    for (series, rank, order, positive) in [('A', 2, 6, 3), ('A', 3, 24, 6), ('B', 2, 8, 4), ('G', 2, 12, 6), ('D', 4, 192, 12)] {
        let rd = RootDatum::simple(series, rank).unwrap();
        assert_eq!(rd.weyl_order(), order, "{series}{rank}");
        assert_eq!(rd.positive_roots().len(), positive, "{series}{rank}");
    }
}

#[test]
fn fundamental_coweights_and_minuscules() {
    let rd = RootDatum::simple('A', 3).unwrap();
    for i in 0..3 {
        assert!(rd.is_minuscule(&rd.fundamental_coweight(i)));
    }
    let g2 = RootDatum::simple('G', 2).unwrap();
    assert!(!g2.is_minuscule(&g2.fundamental_coweight(0)));
    assert!(!g2.is_minuscule(&g2.fundamental_coweight(1)));
}

#[test]
fn abelian_monopole_dimension() {
    let th = QuiverTheory::type_a(&[1], &[3]);
    for m in -3..=3 {
        let lambda = Coweight(vec![vec![m]]);
        assert_eq!(twice_delta(&th, &lambda), 3 * m.abs());
    }
}

#[test]
fn coweight_helpers() {
    let th = QuiverTheory::type_a(&[3, 1], &[0, 2]);
    let w = Coweight::fundamental(&th, 0, 2);
    assert_eq!(w.0, vec![vec![1, 1, 0], vec![0]]);
    assert!(w.is_dominant());
    assert!(!w.neg().is_dominant());
    assert_eq!(w.neg().dominant().0, vec![vec![0, -1, -1], vec![0]]);
    assert!(w.matches(&th));
    assert!(!Coweight(vec![vec![1]]).matches(&th));
}
