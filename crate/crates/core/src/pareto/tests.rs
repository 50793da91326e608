use super::*;
use crate::poset::{OrderKind, Poset};

fn nat_space(n: usize) -> ConfigurationSpace {
    ConfigurationSpace::of_posets((0..n).map(|_| Poset::anonymous(OrderKind::NumLe))).unwrap()
}

fn nat_set(n: usize, rows: &[&[i64]]) -> ConfigurationSet {
    ConfigurationSet::from_rows(
        nat_space(n),
        rows.iter()
            .map(|r| r.iter().map(|&x| Value::Int(x)).collect()),
    )
    .unwrap()
}

fn video(h: i64, v: i64, r: i64) -> Value {
    Value::ints([h, v, r])
}

fn scaler_space() -> ConfigurationSpace {
    let eq3 = OrderKind::element_wise(vec![OrderKind::EqOnly; 3]);
    ConfigurationSpace::new(vec![
        PosetDescriptor::new("input", Poset::named("Video", eq3.clone())),
        PosetDescriptor::new("output", Poset::named("Video", eq3)),
        PosetDescriptor::new(
            "required",
            Poset::named(
                "Scaling",
                OrderKind::element_wise([OrderKind::NumGe, OrderKind::NumGe]),
            ),
        ),
        PosetDescriptor::new("provided", Poset::void()),
        PosetDescriptor::new("quality", Poset::named("FrameRate", OrderKind::NumLe)),
        PosetDescriptor::new(
            "parameters",
            Poset::named(
                "Resolution",
                OrderKind::element_wise([OrderKind::EqOnly, OrderKind::EqOnly]),
            ),
        ),
    ])
    .unwrap()
}

fn scaler(out: (i64, i64, i64), comp: i64, segs: i64) -> Configuration {
    Configuration(vec![
        video(1920, 1080, 60),
        video(out.0, out.1, out.2),
        Value::ints([comp, segs]),
        Value::Void,
        Value::Int(out.2),
        Value::ints([out.0, out.1]),
    ])
}

fn five_scalers() -> (Vec<Configuration>, ConfigurationSet) {
    let s = vec![
        scaler((1600, 900, 60), 201, 15),
        scaler((1600, 900, 30), 160, 15),
        scaler((1280, 720, 60), 171, 15),
        scaler((1600, 900, 60), 201, 30),
        scaler((1600, 900, 30), 160, 30),
    ];
    let set = ConfigurationSet::from_configs(scaler_space(), s.clone()).unwrap();
    (s, set)
}

#[test]
fn larger_buffer_algorithm_is_dominated() {
    let (s, _) = five_scalers();
    let sp = scaler_space();
    assert!(dominates(&sp, &s[3], &s[0]).unwrap());
    assert!(dominates(&sp, &s[4], &s[1]).unwrap());
    assert!(!dominates(&sp, &s[0], &s[3]).unwrap());
    assert!(!dominates(&sp, &s[0], &s[2]).unwrap());
    assert!(!dominates(&sp, &s[2], &s[0]).unwrap());
    assert!(!dominates(&sp, &s[0], &s[1]).unwrap());
    assert!(dominates(&sp, &s[2], &s[2]).unwrap());
}

#[test]
fn minimize_keeps_the_antichain() {
    let (s, set) = five_scalers();
    let min = minimize(&set).unwrap();
    assert_eq!(min.configs(), vec![&s[0], &s[1], &s[2]]);
    assert!(is_pareto_minimal(&min).unwrap());
    assert!(!is_pareto_minimal(&set).unwrap());
    assert!(equivalent(&set, &min).unwrap());
}

#[test]
fn minimize_basics() {
    assert!(minimize(&nat_set(1, &[])).unwrap().is_empty());
    assert_eq!(
        minimize(&nat_set(1, &[&[1], &[2]])).unwrap(),
        nat_set(1, &[&[2]])
    );
    assert!(!is_pareto_minimal(&nat_set(1, &[&[1], &[2]])).unwrap());
    assert!(is_pareto_minimal(&nat_set(1, &[])).unwrap());
}

#[test]
fn simple_cull_order_is_stable() {
    let set = nat_set(2, &[&[1, 5], &[5, 1], &[0, 0], &[3, 3], &[6, 0]]);
    let min = minimize(&set).unwrap();
    let rows: Vec<Vec<i64>> = min
        .iter()
        .map(|c| c.0.iter().map(|v| v.as_int().unwrap()).collect())
        .collect();
    assert_eq!(rows, vec![vec![1, 5], vec![5, 1], vec![3, 3], vec![6, 0]]);
    let late_winner = minimize(&nat_set(1, &[&[1], &[3], &[2]])).unwrap();
    assert_eq!(late_winner, nat_set(1, &[&[3]]));
}

#[test]
fn set_dominance() {
    let (s, _) = five_scalers();
    let sp = scaler_space();
    let a = ConfigurationSet::from_configs(sp.clone(), [s[3].clone(), s[4].clone()]).unwrap();
    let b = ConfigurationSet::from_configs(sp, [s[0].clone(), s[1].clone()]).unwrap();
    assert!(set_dominates(&a, &b).unwrap());
    assert!(!set_dominates(&b, &a).unwrap());
    assert!(set_dominates(&a, &a).unwrap());
    assert!(!set_dominates(&nat_set(2, &[&[1, 2]]), &nat_set(2, &[&[2, 1]])).unwrap());
    assert!(!equivalent(&nat_set(1, &[&[1]]), &nat_set(1, &[&[2]])).unwrap());
    assert!(set_dominates(&nat_set(1, &[]), &nat_set(1, &[])).unwrap());
}

#[test]
fn set_dominance_rejects_other_spaces() {
    let r = set_dominates(&nat_set(1, &[&[1]]), &nat_set(2, &[&[1, 1]]));
    assert!(matches!(r, Err(ParetoError::SpaceMismatch(_))));
}

#[test]
fn product_sizes() {
    let a = nat_set(1, &[&[1], &[2]]);
    let b = nat_set(1, &[&[3], &[4], &[5]]);
    let p = free_product(&a, &b);
    assert_eq!(p.len(), 6);
    assert_eq!(p.space().arity(), 2);
    assert_eq!(p.space().dim(1).name, "q1_2");
    assert!(free_product(&nat_set(1, &[]), &b).is_empty());
    let void = ConfigurationSet::from_rows(
        ConfigurationSpace::of_posets([Poset::void()]).unwrap(),
        [vec![Value::Void]],
    )
    .unwrap();
    let pv = free_product(&a, &void);
    assert_eq!(pv.len(), 2);
    assert!(pv.iter().all(|c| c.get(1) == &Value::Void));
}

#[test]
fn constraints() {
    let set = nat_set(2, &[&[1, 2], &[2, 1], &[3, 3]]);
    assert_eq!(
        apply_constraint(&set, |_| Ok::<_, ParetoError>(true)).unwrap(),
        set
    );
    assert!(apply_constraint(&set, |_| Ok::<_, ParetoError>(false))
        .unwrap()
        .is_empty());
    let upper = |c: &Configuration| Ok(c.get(0).as_int().unwrap() >= 2);
    assert!(check_constraint_safety(upper, &set).unwrap());
    let below = |c: &Configuration| Ok(c.get(0).as_int().unwrap() < 3);
    let (lo, hi) = find_safety_violation(below, &set).unwrap().unwrap();
    assert!(dominates(set.space(), &lo, &hi).unwrap());
    assert_eq!(hi.0[0], Value::Int(3));
}

#[test]
fn derivation_appends_a_dimension() {
    let set = nat_set(1, &[&[1], &[5]]);
    let target = PosetDescriptor::new("two", Poset::anonymous(OrderKind::NumLe));
    let d = derive(
        &set,
        |_| Ok::<_, ParetoError>(Value::Int(2)),
        target.clone(),
    )
    .unwrap();
    assert_eq!(
        d,
        nat_set(2, &[&[1, 2], &[5, 2]])
            .with_space(d.space().clone())
            .unwrap()
    );
    assert_eq!(d.space().dim(1).name, "two");
    assert!(
        find_derivation_violation(&set, |_| Ok(Value::Int(2)), &target)
            .unwrap()
            .is_none()
    );
    let neg = |c: &Configuration| Ok(Value::Int(-c.get(0).as_int().unwrap()));
    assert!(find_derivation_violation(&set, neg, &target)
        .unwrap()
        .is_some());
    let bad = derive(&set, |_| Ok(Value::Enum("x".into())), target);
    assert!(matches!(bad, Err(ParetoError::Dimension { .. })));
}

#[test]
fn abstraction() {
    let set = nat_set(2, &[&[1, 2], &[2, 1]]);
    let a = abstract_dim(&set, 0).unwrap();
    assert_eq!(
        a.iter().map(|c| c.0[0].clone()).collect::<Vec<_>>(),
        vec![Value::Int(2), Value::Int(1)]
    );
    assert!(!is_pareto_minimal(&a).unwrap());
    assert!(matches!(
        abstract_dim(&nat_set(1, &[&[1]]), 0),
        Err(ParetoError::EmptySpace)
    ));
    assert_eq!(
        abstract_dim(&nat_set(2, &[&[1, 2], &[1, 3]]), 1)
            .unwrap()
            .len(),
        1
    );
    assert!(matches!(
        abstract_dim(&set, 2),
        Err(ParetoError::IndexOutOfRange { .. })
    ));
}

#[test]
fn permutation() {
    let set = nat_set(2, &[&[1, 2]]);
    assert_eq!(permute(&set, &[0, 1]).unwrap(), set);
    let swapped = permute(&set, &[1, 0]).unwrap();
    assert_eq!(
        swapped.iter().next().unwrap().0,
        vec![Value::Int(2), Value::Int(1)]
    );
    assert!(matches!(
        permute(&set, &[0, 0]),
        Err(ParetoError::NotABijection(_))
    ));
    assert!(matches!(
        permute(&set, &[0]),
        Err(ParetoError::NotABijection(_))
    ));
}

#[test]
fn union_of_alternatives() {
    let u = alternatives(&[nat_set(1, &[&[1]]), nat_set(1, &[&[2]])]).unwrap();
    assert_eq!(u, nat_set(1, &[&[1], &[2]]));
    assert_eq!(
        alternatives(&[nat_set(1, &[&[1]]), nat_set(1, &[])]).unwrap(),
        nat_set(1, &[&[1]])
    );
    assert!(alternatives(&[nat_set(1, &[&[1]]), nat_set(2, &[])]).is_err());
}

#[test]
fn insertion_validates_and_dedups() {
    let mut set = nat_set(1, &[]);
    assert!(set.insert(Configuration(vec![Value::Int(1)])).unwrap());
    assert!(!set.insert(Configuration(vec![Value::Int(1)])).unwrap());
    assert!(matches!(
        set.insert(Configuration(vec![])),
        Err(ParetoError::ArityMismatch { .. })
    ));
    assert!(matches!(
        set.insert(Configuration(vec![Value::Void])),
        Err(ParetoError::Dimension { .. })
    ));
    assert_eq!(
        ConfigurationSpace::new(vec![]).unwrap_err(),
        ParetoError::EmptySpace
    );
    let dup = ConfigurationSpace::new(vec![
        PosetDescriptor::new("a", Poset::void()),
        PosetDescriptor::new("a", Poset::void()),
    ]);
    assert_eq!(dup.unwrap_err(), ParetoError::DuplicateName("a".into()));
}
