use super::*;
use crate::poset::{OrderKind, Value};

const B: Value = Value::Void;

fn eq3() -> OrderKind {
    OrderKind::element_wise(vec![OrderKind::EqOnly; 3])
}

fn video_in() -> Poset {
    Poset::named("Video", eq3().dual())
}

fn video_out() -> Poset {
    Poset::named("Video", eq3())
}

fn video(h: i64, v: i64, r: i64) -> Value {
    Value::ints([h, v, r])
}

const FHD60: (i64, i64, i64) = (1920, 1080, 60);
const HDP60: (i64, i64, i64) = (1600, 900, 60);
const HD60: (i64, i64, i64) = (1280, 720, 60);
const HD30: (i64, i64, i64) = (1280, 720, 30);

fn vid(t: (i64, i64, i64)) -> Value {
    video(t.0, t.1, t.2)
}

fn scalers_provided() -> Poset {
    Poset::named(
        "Scalers",
        OrderKind::element_wise(vec![OrderKind::NumLe; 3]),
    )
}

fn bw_provided() -> Poset {
    Poset::named("Bw", OrderKind::NumLe)
}

fn void6() -> [Poset; 6] {
    std::array::from_fn(|_| Poset::void())
}

fn row(values: [Value; 6]) -> Configuration {
    Configuration(values.to_vec())
}

fn rows(i: &QrmInterface) -> Vec<Configuration> {
    i.set().sorted()
}

fn fiber() -> QrmInterface {
    QrmInterface::only(Part::Provided, bw_provided(), [Value::Int(10)]).unwrap()
}

fn hw_scaler() -> QrmInterface {
    QrmInterface::only(
        Part::Provided,
        scalers_provided(),
        [Value::ints([4, 300, 32])],
    )
    .unwrap()
}

fn transport() -> QrmInterface {
    let mut posets = void6();
    posets[0] = video_in();
    posets[1] = video_out();
    posets[2] = Poset::named("ConnBw", OrderKind::NumGe);
    posets[5] = Poset::named("Video", OrderKind::EqOnly);
    let t = |v: (i64, i64, i64), bw| {
        [
            vid(v),
            vid(v),
            Value::Int(bw),
            B,
            B,
            Value::Enum(format!("{}@{}", v.1, v.2)),
        ]
    };
    QrmInterface::from_rows(posets, [t(HD60, 2), t(FHD60, 4)]).unwrap()
}

fn scaler() -> QrmInterface {
    let mut posets = void6();
    posets[0] = video_in();
    posets[1] = video_out();
    posets[2] = Poset::named(
        "Scaling",
        OrderKind::element_wise([OrderKind::NumGe, OrderKind::NumGe]),
    );
    posets[4] = Poset::named("FrameRate", OrderKind::NumLe);
    posets[5] = Poset::named("Resolution", OrderKind::EqOnly);
    let s = |i, o: (i64, i64, i64), comp, segs, res: &str| {
        [
            vid(i),
            vid(o),
            Value::ints([comp, segs]),
            B,
            Value::Int(o.2),
            Value::Enum(res.into()),
        ]
    };
    QrmInterface::from_rows(
        posets,
        [
            s(FHD60, HDP60, 201, 15, "HD+"),
            s(FHD60, HD30, 145, 15, "HD"),
            s(HDP60, HD60, 135, 13, "HD"),
        ],
    )
    .unwrap()
}

#[test]
fn hw_or_sw_scaler_alternatives() {
    let sw = QrmInterface::only(
        Part::Provided,
        Poset::named("Compute", OrderKind::NumLe),
        [Value::Int(100)],
    )
    .unwrap();
    let widen = CustomDerivation::new("widen", scalers_provided(), |_, c| {
        Ok(Value::tuple([Value::Top, c.get(3).clone(), Value::Top]))
    });
    let copy_but_provided = |d: Derivation| {
        Normalization::parts([
            Derivation::Copy(0),
            Derivation::Copy(1),
            Derivation::Copy(2),
            d,
            Derivation::Copy(4),
            Derivation::Copy(5),
        ])
    };
    let spec = AlternativesSpec::new(vec![
        Branch::new(hw_scaler(), Normalization::identity()),
        Branch::new(sw, copy_but_provided(Derivation::Custom(widen))),
    ]);
    let result = apply_alternatives(&spec).unwrap();
    let expected = vec![
        row([B, B, B, Value::ints([4, 300, 32]), B, B]),
        row([
            B,
            B,
            B,
            Value::tuple([Value::Top, Value::Int(100), Value::Top]),
            B,
            B,
        ]),
    ];
    assert_eq!(rows(&result), expected);
}

#[test]
fn alternatives_reject_mismatched_targets() {
    let sw = QrmInterface::only(
        Part::Provided,
        Poset::named("Compute", OrderKind::NumLe),
        [Value::Int(100)],
    )
    .unwrap();
    let spec = AlternativesSpec::new(vec![
        Branch::new(hw_scaler(), Normalization::identity()),
        Branch::new(sw, Normalization::identity()),
    ]);
    assert!(matches!(
        apply_alternatives(&spec),
        Err(QrmError::NormalizationShape(_))
    ));
}

#[test]
fn alternatives_minimize_the_union() {
    let small = QrmInterface::only(
        Part::Provided,
        scalers_provided(),
        [Value::ints([2, 100, 16])],
    )
    .unwrap();
    let spec = AlternativesSpec::new(vec![
        Branch::new(hw_scaler(), Normalization::identity()),
        Branch::new(small, Normalization::identity()),
    ]);
    let result = apply_alternatives(&spec).unwrap();
    assert_eq!(
        rows(&result),
        vec![row([B, B, B, Value::ints([4, 300, 32]), B, B])]
    );
}

#[test]
fn derivation_and_constraint_forms_of_alternatives_agree() {
    let sw = QrmInterface::only(
        Part::Provided,
        Poset::named("Compute", OrderKind::NumLe),
        [Value::Int(100), Value::Int(80)],
    )
    .unwrap();
    let widen = |c: &Configuration| Value::tuple([Value::Top, c.get(3).clone(), Value::Top]);
    let steps = Normalization::parts([
        Derivation::Void,
        Derivation::Void,
        Derivation::Void,
        Derivation::Custom(CustomDerivation::new(
            "widen",
            scalers_provided(),
            move |_, c| Ok(widen(c)),
        )),
        Derivation::Void,
        Derivation::Void,
    ]);
    let by_derivation = apply_alternatives(&AlternativesSpec::new(vec![
        Branch::new(hw_scaler(), Normalization::identity()),
        Branch::new(sw.clone(), steps),
    ]))
    .unwrap();

    let candidates = QrmInterface::only(
        Part::Provided,
        scalers_provided(),
        (0..=120)
            .step_by(20)
            .map(|y| Value::tuple([Value::Top, Value::Int(y), Value::Top])),
    )
    .unwrap();
    let joint = FiniteJoint::new(candidates, "widened", move |_, c| Ok(c.get(9) == &widen(c)));
    let by_constraint = apply_alternatives(&AlternativesSpec::new(vec![
        Branch::new(hw_scaler(), Normalization::identity()),
        Branch::new(sw, Normalization::joint(joint)),
    ]))
    .unwrap();
    assert_eq!(by_derivation, by_constraint);
    assert_eq!(by_derivation.len(), 2);
}

#[test]
fn free_aggregation_of_fiber_and_scaler() {
    let e = free_aggregate(&fiber(), &hw_scaler()).unwrap();
    assert_eq!(
        rows(&e),
        vec![row([
            B,
            B,
            B,
            Value::tuple([Value::Int(10), Value::ints([4, 300, 32])]),
            B,
            B
        ])]
    );
    let p = e.poset(Part::Provided);
    assert_eq!(p.component(0).unwrap().domain, Domain::named("Bw"));
}

#[test]
fn free_aggregation_by_explicit_pattern() {
    let spec = AggregationSpec::new(
        vec![fiber(), hw_scaler()],
        Normalization::parts([
            Derivation::Void,
            Derivation::Void,
            Derivation::Void,
            Derivation::Group(vec![3, 9]),
            Derivation::Void,
            Derivation::Void,
        ]),
    );
    let e = apply_aggregation(&spec).unwrap();
    assert_eq!(e, free_aggregate(&fiber(), &hw_scaler()).unwrap());
}

fn horizontal_example_constraints() -> Vec<Constraint> {
    vec![
        Constraint::subset(5, [Value::Enum("1080@60".into())]),
        Constraint::subset(11, [Value::Enum("HD".into())]),
    ]
}

fn expected_horizontal() -> Vec<Configuration> {
    vec![row([
        vid(FHD60),
        vid(HD30),
        Value::tuple([Value::Int(4), Value::ints([145, 15])]),
        B,
        Value::Int(30),
        B,
    ])]
}

#[test]
fn horizontal_aggregation_of_transport_and_scaler() {
    let opts = TemplateOptions {
        pre_constraints: horizontal_example_constraints(),
        parameters: ParamPolicy::Void,
        ..TemplateOptions::default()
    };
    let app = horizontal_aggregate_with(&transport(), &scaler(), &opts).unwrap();
    assert_eq!(rows(&app), expected_horizontal());
}

#[test]
fn horizontal_aggregation_by_explicit_pattern() {
    let mut spec = AggregationSpec::new(
        vec![transport(), scaler()],
        Normalization::parts([
            Derivation::Copy(0),
            Derivation::Copy(7),
            Derivation::Group(vec![2, 8]),
            Derivation::Void,
            Derivation::Copy(10),
            Derivation::Void,
        ]),
    );
    spec.pre.push(Constraint::producer_consumer(1, 6));
    spec.pre.extend(horizontal_example_constraints());
    let app = apply_aggregation(&spec).unwrap();
    assert_eq!(rows(&app), expected_horizontal());
}

#[test]
fn producer_consumer_removes_mismatched_io() {
    let product = pareto::free_product(transport().set(), scaler().set());
    assert_eq!(product.len(), 6);
    let matched = Constraint::producer_consumer(1, 6).apply(&product).unwrap();
    // (HD@60 → any) never matches; FHD@60 feeds the two FHD-input scaler rows.
    assert_eq!(matched.len(), 2);
    assert!(matched
        .iter()
        .all(|c| c.get(1) == &vid(FHD60) && c.get(6) == &vid(FHD60)));
}

#[test]
fn horizontal_requires_dual_io_orders() {
    let mut posets = void6();
    posets[0] = Poset::named("Video", OrderKind::NumLe);
    let bad = QrmInterface::from_rows(posets, [[Value::Int(1080), B, B, B, B, B]]).unwrap();
    assert!(matches!(
        horizontal_aggregate(&transport(), &bad),
        Err(QrmError::OrderMismatch(_))
    ));
}

#[test]
fn vertical_aggregation_of_fiber_and_connection() {
    let mut posets = void6();
    posets[2] = Poset::named("Bw", OrderKind::NumGe);
    posets[3] = Poset::named("ConnBw", OrderKind::NumLe);
    let conn =
        QrmInterface::from_rows(posets, [[B, B, Value::Int(4), Value::Int(4), B, B]]).unwrap();
    let agg = vertical_aggregate(&fiber(), &conn).unwrap();
    assert_eq!(rows(&agg), vec![row([B, B, B, Value::ints([4, 6]), B, B])]);

    let complete = TemplateOptions {
        consumption: Consumption::Complete,
        ..TemplateOptions::default()
    };
    let agg = vertical_aggregate_with(&fiber(), &conn, &complete).unwrap();
    assert_eq!(rows(&agg), vec![row([B, B, B, Value::Int(4), B, B])]);
}

#[test]
fn vertical_aggregation_drops_unaffordable_configurations() {
    let mut posets = void6();
    posets[2] = Poset::named("Bw", OrderKind::NumGe);
    let hungry = QrmInterface::from_rows(
        posets,
        [
            [B, B, Value::Int(12), B, B, B],
            [B, B, Value::Int(7), B, B, B],
        ],
    )
    .unwrap();
    let agg = vertical_aggregate(&fiber(), &hungry).unwrap();
    assert_eq!(rows(&agg), vec![row([B, B, B, Value::Int(3), B, B])]);
}

#[test]
fn voided_and_tagged_interfaces() {
    let s = scaler()
        .voided(&[Part::Input, Part::Output, Part::Required, Part::Parameters])
        .unwrap();
    assert_eq!(rows(&s), vec![row([B, B, B, B, Value::Int(60), B])]);
    let t = scaler().tagged("0", &[Part::Quality]).unwrap();
    assert_ne!(t.poset(Part::Quality), scaler().poset(Part::Quality));
    let both = free_aggregate(&s, &s.tagged("1", &[Part::Quality]).unwrap()).unwrap();
    assert_eq!(
        rows(&both),
        vec![row([B, B, B, B, Value::ints([60, 60]), B])]
    );
    let summed = free_aggregate(&s, &s).unwrap();
    assert_eq!(rows(&summed), vec![row([B, B, B, B, Value::Int(120), B])]);
}

#[test]
fn interfaces_must_be_six_dimensional() {
    let set = ConfigurationSet::empty(ConfigurationSpace::of_posets([Poset::void()]).unwrap());
    assert_eq!(QrmInterface::new(set), Err(QrmError::NotSixDimensional(1)));
}
