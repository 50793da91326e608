use super::*;
use crate::poset::{OrderKind, Value};

const VIDEO: &str = include_str!("../../tests/fixtures/video.qrml");

fn model() -> ElaboratedModel {
    load(VIDEO).unwrap()
}

fn rows(i: &crate::qrm::QrmInterface) -> Vec<Vec<Value>> {
    i.set()
        .sorted()
        .into_iter()
        .map(|c| c.into_values())
        .collect()
}

#[test]
fn parses_video_type_definitions() {
    let m = parse(VIDEO).unwrap();
    let names: Vec<_> = m.types.iter().map(|t| t.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "Bw",
            "FrameRate",
            "Computation",
            "Video",
            "Scaling",
            "Scalers"
        ]
    );
    assert_eq!(m.types[3].keyword, TypeKeyword::Channel);
    assert!(matches!(m.types[3].order, OrderClause::OrderedBy(_)));
    assert_eq!(m.types[5].order, OrderClause::Default);
    assert_eq!(m.components.len(), 5);
}

#[test]
fn empty_source() {
    assert_eq!(parse("").unwrap(), Model::default());
    assert_eq!(parse("  // nothing\n").unwrap(), Model::default());
}

#[test]
fn contains_or_has_two_alternatives() {
    let m = parse("component C { contains HWscaler or SWscaler }").unwrap();
    let alts = &m.components[0].contains[0].alternatives;
    assert_eq!(alts.len(), 2);
    assert_eq!(alts[0].name, "HWscaler");
    assert_eq!(alts[1].component, "SWscaler");
}

#[test]
fn syntax_error_reports_position_and_expected() {
    let err = parse("budget Bw int").unwrap_err();
    match err {
        QrmlError::Syntax {
            pos,
            expected,
            found,
        } => {
            assert_eq!((pos.line, pos.col), (1, 11));
            assert_eq!(expected, ["`:`"]);
            assert_eq!(found, "`int`");
        }
        other => panic!("{other:?}"),
    }
    let err = parse("component C {\n  provides x: int { x = }\n}").unwrap_err();
    assert!(matches!(err, QrmlError::Syntax { pos, .. } if pos.line == 2));
}

#[test]
fn video_order_is_equality() {
    let m = model();
    let video = &m.type_info("Video").unwrap().poset;
    assert!(matches!(video.order, OrderKind::Custom(_)));
    let a = Value::ints([1920, 1080, 60]);
    let b = Value::ints([1920, 1080, 30]);
    assert!(video.order.le(&a, &a).unwrap());
    assert!(!video.order.le(&a, &b).unwrap());
    assert!(!video.order.le(&b, &a).unwrap());
    assert!(video.order.le(&Value::Bot, &a).unwrap());
}

#[test]
fn scaling_order_uses_part_orders() {
    let m = model();
    let s = &m.type_info("Scaling").unwrap().poset;
    assert!(s
        .order
        .le(&Value::ints([145, 15]), &Value::ints([171, 15]))
        .unwrap());
    assert!(!s
        .order
        .le(&Value::ints([145, 16]), &Value::ints([171, 15]))
        .unwrap());
}

#[test]
fn scalers_default_is_element_wise() {
    let m = model();
    let s = &m.type_info("Scalers").unwrap().poset;
    assert_eq!(
        s.order,
        OrderKind::element_wise([OrderKind::NumLe, OrderKind::NumLe, OrderKind::NumLe])
    );
}

#[test]
fn element_wise_clause() {
    let m = load("typedef P : (a: int, b: int) element-wise").unwrap();
    let p = &m.type_info("P").unwrap().poset;
    assert_eq!(
        p.order,
        OrderKind::element_wise([OrderKind::NumLe, OrderKind::NumLe])
    );
}

#[test]
fn fiber_and_hw_scaler() {
    let m = model();
    assert_eq!(
        rows(&m.evaluate("Fiber").unwrap()),
        [vec![
            Value::Void,
            Value::Void,
            Value::Void,
            Value::Int(10000),
            Value::Void,
            Value::Void
        ]]
    );
    assert_eq!(
        rows(&m.evaluate("HWscaler").unwrap()),
        [vec![
            Value::Void,
            Value::Void,
            Value::Void,
            Value::ints([4, 300, 32]),
            Value::Void,
            Value::Void
        ]]
    );
}

#[test]
fn execution_platform_aggregation() {
    let m = model();
    let e = m.evaluate("ExecutionPlatform").unwrap();
    assert_eq!(
        rows(&e),
        [vec![
            Value::Void,
            Value::Void,
            Value::Void,
            Value::ints([10000, 4, 300, 32]),
            Value::Void,
            Value::Void
        ]]
    );
    let provided = &e.space().dim(3).poset;
    assert_eq!(
        provided.order,
        OrderKind::element_wise(vec![OrderKind::NumLe; 4])
    );
}

#[test]
fn hw_or_sw_alternatives() {
    let m = model();
    let hs = m.evaluate("HWorSWscaler").unwrap();
    let v = |x| {
        vec![
            Value::Void,
            Value::Void,
            Value::Void,
            x,
            Value::Void,
            Value::Void,
        ]
    };
    assert_eq!(
        rows(&hs),
        [
            v(Value::ints([4, 300, 32])),
            v(Value::tuple([Value::Top, Value::Int(100), Value::Top]))
        ]
    );
}

#[test]
fn evaluation_is_memoized() {
    let m = model();
    let a = m.evaluate("HWorSWscaler").unwrap();
    let b = m.evaluate("HWorSWscaler").unwrap();
    assert_eq!(a, b);
}

#[test]
fn atomic_enumerates_finite_sets_and_filters() {
    let m = load(
        "component A {
            provides x: int { x in {1, 2, 3} }
            quality q: int { q in {10, 20} }
            constraint x + q >= 22
        }",
    )
    .unwrap();
    let a = m.evaluate("A").unwrap();
    // (2,20) and (3,20) survive the constraint; a larger provided budget dominates
    assert_eq!(a.len(), 1);
    assert_eq!(a.iter().next().unwrap().get(3), &Value::Int(3));
}

#[test]
fn unpinned_port_is_unbounded() {
    let m = load("component A { provides x: int { x >= 3 } }").unwrap();
    assert!(matches!(
        m.evaluate("A"),
        Err(QrmlError::UnboundedDomain { component, port }) if component == "A" && port == "x"
    ));
}

#[test]
fn unresolved_type() {
    assert!(matches!(
        load("component A { provides x: Nope }"),
        Err(QrmlError::UnresolvedType { name, .. }) if name == "Nope"
    ));
    assert!(matches!(
        load("typedef A : B\ntypedef B : A"),
        Err(QrmlError::UnresolvedType { .. })
    ));
}

#[test]
fn duplicates() {
    assert!(matches!(
        load("budget A : int\nbudget A : int"),
        Err(QrmlError::DuplicateName { .. })
    ));
    assert!(matches!(
        load("typedef P : (a: int, a: int)"),
        Err(QrmlError::DuplicateName { .. })
    ));
    assert!(matches!(
        load("component C { provides x: int\n quality x: int }"),
        Err(QrmlError::DuplicateName { .. })
    ));
    assert!(matches!(
        load("component C { }\ncomponent C { }"),
        Err(QrmlError::DuplicateName { .. })
    ));
}

#[test]
fn ill_formed_orders() {
    for src in [
        "typedef T : int ordered by (a, b) => a <= 3",
        "typedef T : int ordered by (a, b) => a + b",
        "typedef T : int ordered by (a, a) => a <= a",
        "typedef T : (x: int) ordered by ((a, b), c) => a <= c",
        "typedef T : int ordered by (a, b) => a <= z",
        "typedef T : int element-wise",
    ] {
        assert!(
            matches!(load(src), Err(QrmlError::IllFormedOrder { .. })),
            "{src}"
        );
    }
}

#[test]
fn unknown_and_cyclic_components() {
    assert!(
        matches!(load("component A { contains b: B }"), Err(QrmlError::UnknownComponent(n)) if n == "B")
    );
    let m = load("component A { contains b: B }\ncomponent B { contains a: A }").unwrap();
    assert!(matches!(m.evaluate("A"), Err(QrmlError::Cycle(c)) if c == ["A", "B", "A"]));
    assert!(matches!(
        m.evaluate("Z"),
        Err(QrmlError::UnknownComponent(_))
    ));
}

#[test]
fn unknown_name_in_constraint() {
    let m = load("component A { provides x: int { x = 1 } constraint y = 1 }").unwrap();
    assert!(matches!(m.evaluate("A"), Err(QrmlError::UnknownName(n)) if n == "y"));
}

#[test]
fn part_access() {
    let m = load(
        "budget Scalers : (streams: int, comp: int, segs: int)
         component S { provides sc: Scalers { sc in {(4, 300, 32), (2, 100, 16)} } constraint sc.comp >= 200 }",
    )
    .unwrap();
    assert_eq!(
        rows(&m.evaluate("S").unwrap())[0][3],
        Value::ints([4, 300, 32])
    );
}

#[test]
fn mixed_choice_and_aggregation_is_unsupported() {
    let m = load(
        "component A { provides x: int { x = 1 } }
         component B { provides x: int { x = 2 } }
         component C { contains a: A or b: B\n contains c: A\n provides x: int from c.x }",
    )
    .unwrap();
    assert!(matches!(m.evaluate("C"), Err(QrmlError::Unsupported(_))));
}

#[test]
fn expression_parser() {
    let e = parse_expr("a.b + 1 <= c and d in {1, (2, 3)}").unwrap();
    assert_eq!(e.conjuncts().len(), 2);
    assert_eq!(e.to_string(), "a.b + 1 <= c and d in {1, (2, 3)}");
    assert!(parse_expr("a <= b <= c").is_err());
    assert!(parse_expr("").is_err());
    assert_eq!(parse_expr("(1,)").unwrap(), Expr::Tuple(vec![Expr::Int(1)]));
    assert_eq!(parse_expr("(1)").unwrap(), Expr::Int(1));
    assert_eq!(parse_expr("1 - 2 - 3").unwrap().to_string(), "1 - 2 - 3");
    assert_eq!(
        parse_expr("1 - (2 - 3)").unwrap().to_string(),
        "1 - (2 - 3)"
    );
}

#[test]
fn pretty_print_round_trips_video_model() {
    let m = parse(VIDEO).unwrap();
    let printed = m.to_string();
    assert_eq!(parse(&printed).unwrap(), m);
}
