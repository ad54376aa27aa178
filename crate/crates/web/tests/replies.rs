use locating_web::{chi, chi_report, construct, construct_report, verify_report, Reply};

#[test]
fn construct_then_verify() {
    let Reply::Constructed {
        matrix,
        colors,
        case,
        ..
    } = construct_report("kmpn", 3, 4)
    else {
        panic!("construction failed");
    };
    assert_eq!((colors, case.as_str()), (4, "kmpn-A1"));
    let text: String = matrix
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    assert_eq!(
        verify_report("K3xP4", &text),
        Reply::Locating {
            graph: "K3xP4".into(),
            colors: 4
        }
    );
}

#[test]
fn verify_reports_clash_cells() {
    match verify_report("K2xK2", "1 2\n2 1\n") {
        Reply::NotLocating { cells, .. } => assert_eq!(cells, [(1, 1), (2, 2)]),
        other => panic!("{other:?}"),
    }
    match verify_report("P2xP2", "1 1\n2 3\n") {
        Reply::NotLocating { reason, .. } => assert!(reason.contains("adjacent")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn chi_of_k3_square() {
    match chi_report("K3xK3") {
        Reply::Chi { value, matrix, .. } => {
            assert_eq!(value, 5);
            assert_eq!(matrix.len(), 3);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn errors_are_replies() {
    assert!(matches!(
        construct_report("kmkn", 5, 19),
        Reply::Error { .. }
    ));
    assert!(matches!(chi_report("Q4"), Reply::Error { .. }));
    assert!(matches!(verify_report("P3", "1 2"), Reply::Error { .. }));
}

#[test]
fn json_shape() {
    let json: serde_json::Value = serde_json::from_str(&construct("grid", 2, 2)).unwrap();
    assert_eq!(json["status"], "constructed");
    assert_eq!(json["matrix"], serde_json::json!([[3, 4], [2, 1]]));
    let json: serde_json::Value = serde_json::from_str(&chi("P4")).unwrap();
    assert_eq!(json["value"], 3);
}
