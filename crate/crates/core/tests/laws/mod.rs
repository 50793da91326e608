//! Laws of the configuration-set operations as reusable checks, shared by the
//! property suite and the acceptance target.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qrm_core::pareto::{self, ConfigurationSet, ParetoError};
use qrm_core::poset::{OrderKind, Poset, PosetDescriptor, Value};

use crate::common::*;

/// `A` and a refinement `A'` with `A ⪯ A'`.
pub fn refined_pair(
    max_len: usize,
) -> impl Strategy<Value = (Vec<OrderKind>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    ordered_set(order(), 1..=3, max_len).prop_flat_map(move |(os, rows)| {
        let n = os.len();
        let len = rows.len();
        (
            Just(os),
            Just(rows),
            proptest::collection::vec(proptest::collection::vec(0i64..3, n), len),
            proptest::collection::vec(proptest::collection::vec(0i64..6, n), 0..4),
        )
            .prop_map(|(os, rows, deltas, extra)| {
                let mut better: Vec<Vec<i64>> = rows
                    .iter()
                    .zip(&deltas)
                    .map(|(r, d)| improve(&os, r, d))
                    .collect();
                better.extend(extra);
                (os, rows, better)
            })
    })
}

/// Monotone integer cost: reward larger `≤` values, smaller `≥` values.
fn score(orders: &[OrderKind], c: &[i64]) -> i64 {
    orders
        .iter()
        .zip(c)
        .map(|(o, x)| match o {
            OrderKind::NumLe => *x,
            OrderKind::NumGe => -x,
            _ => 0,
        })
        .sum()
}

fn derive_score(set: &ConfigurationSet, orders: &[OrderKind]) -> ConfigurationSet {
    let os = orders.to_vec();
    pareto::derive(
        set,
        move |c| Ok::<_, ParetoError>(Value::Int(score(&os, &ints(c)))),
        PosetDescriptor::new("score", Poset::anonymous(OrderKind::NumLe)),
    )
    .unwrap()
}

/// Keeps configurations whose first dimension is at least as good as `t`; upward closed.
fn constrain_first(set: &ConfigurationSet, orders: &[OrderKind], t: i64) -> ConfigurationSet {
    let o = orders[0].clone();
    pareto::apply_constraint(set, move |c| Ok::<_, ParetoError>(leq(&o, t, ints(c)[0]))).unwrap()
}

#[derive(Clone, Debug)]
pub enum Stage {
    Product(Vec<Vec<i64>>),
    Constrain(i64),
    Derive,
    Abstract(usize),
    Minimize,
}

pub fn stage(orders_len: usize) -> impl Strategy<Value = Stage> {
    prop_oneof![
        proptest::collection::vec(proptest::collection::vec(0i64..6, 1), 1..4)
            .prop_map(Stage::Product),
        (0i64..6).prop_map(Stage::Constrain),
        Just(Stage::Derive),
        (0..orders_len + 2).prop_map(Stage::Abstract),
        Just(Stage::Minimize),
    ]
}

fn run_stage(s: &Stage, set: &ConfigurationSet, orders: &mut Vec<OrderKind>) -> ConfigurationSet {
    match s {
        Stage::Product(rows) => {
            let b = set_of(&[OrderKind::NumLe], rows);
            orders.push(OrderKind::NumLe);
            pareto::free_product(set, &b)
        }
        Stage::Constrain(t) => constrain_first(set, orders, *t),
        Stage::Derive => {
            let out = derive_score(set, orders);
            orders.push(OrderKind::NumLe);
            out
        }
        Stage::Abstract(k) if orders.len() > 1 => {
            let k = k % orders.len();
            orders.remove(k);
            pareto::abstract_dim(set, k).unwrap()
        }
        Stage::Abstract(_) => set.clone(),
        Stage::Minimize => pareto::minimize(set).unwrap(),
    }
}

pub type Rows = Vec<Vec<i64>>;
pub type Refined = (Vec<OrderKind>, Rows, Rows);

pub fn minimize_matches_brute_force(
    os: &[OrderKind],
    rows: &[Vec<i64>],
) -> Result<(), TestCaseError> {
    let set = set_of(os, rows);
    let min = pareto::minimize(&set).unwrap();
    prop_assert_eq!(sorted_rows(&min), oracle_minimal(os, rows));
    prop_assert!(pareto::is_pareto_minimal(&min).unwrap());
    prop_assert!(pareto::equivalent(&min, &set).unwrap());
    prop_assert_eq!(pareto::minimize(&min).unwrap(), min);
    Ok(())
}

pub fn product_preserves_dominance(
    (os, a, a2): &Refined,
    b: &[Vec<i64>],
) -> Result<(), TestCaseError> {
    let (sa, sa2) = (set_of(os, a), set_of(os, a2));
    prop_assert!(oracle_set_dominates(&sa, &sa2, os));
    let bo = [OrderKind::NumLe, OrderKind::NumGe];
    let sb = set_of(&bo, b);
    let mut po = os.clone();
    po.extend(bo);
    prop_assert!(oracle_set_dominates(
        &pareto::free_product(&sa, &sb),
        &pareto::free_product(&sa2, &sb),
        &po
    ));
    Ok(())
}

pub fn safe_constraint_preserves_dominance(
    (os, a, a2): &Refined,
    t: i64,
) -> Result<(), TestCaseError> {
    let (sa, sa2) = (set_of(os, a), set_of(os, a2));
    prop_assert!(oracle_set_dominates(
        &constrain_first(&sa, os, t),
        &constrain_first(&sa2, os, t),
        os
    ));
    Ok(())
}

pub fn derivation_preserves_dominance((os, a, a2): &Refined) -> Result<(), TestCaseError> {
    let (sa, sa2) = (set_of(os, a), set_of(os, a2));
    let mut eo = os.clone();
    eo.push(OrderKind::NumLe);
    prop_assert!(oracle_set_dominates(
        &derive_score(&sa, os),
        &derive_score(&sa2, os),
        &eo
    ));
    Ok(())
}

pub fn abstraction_preserves_dominance(
    (os, a, a2): &Refined,
    k: usize,
) -> Result<(), TestCaseError> {
    if os.len() < 2 {
        return Ok(());
    }
    let k = k % os.len();
    let (sa, sa2) = (set_of(os, a), set_of(os, a2));
    let mut ro = os.clone();
    ro.remove(k);
    prop_assert!(oracle_set_dominates(
        &pareto::abstract_dim(&sa, k).unwrap(),
        &pareto::abstract_dim(&sa2, k).unwrap(),
        &ro
    ));
    Ok(())
}

pub fn permutation_preserves_dominance(
    (os, a, a2): &Refined,
    rot: usize,
) -> Result<(), TestCaseError> {
    let n = os.len();
    let pi: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
    let po: Vec<OrderKind> = pi.iter().map(|&i| os[i].clone()).collect();
    let (sa, sa2) = (set_of(os, a), set_of(os, a2));
    prop_assert!(oracle_set_dominates(
        &pareto::permute(&sa, &pi).unwrap(),
        &pareto::permute(&sa2, &pi).unwrap(),
        &po
    ));
    Ok(())
}

pub fn alternatives_preserve_dominance(
    (os, a, a2): &Refined,
    extra: &[i64],
) -> Result<(), TestCaseError> {
    let b: Vec<Vec<i64>> = extra.iter().map(|x| vec![*x; os.len()]).collect();
    let (sa, sa2, sb) = (set_of(os, a), set_of(os, a2), set_of(os, &b));
    let u = pareto::alternatives(&[sa, sb.clone()]).unwrap();
    let u2 = pareto::alternatives(&[sa2, sb]).unwrap();
    prop_assert!(oracle_set_dominates(&u, &u2, os));
    Ok(())
}

pub fn minimality_preservation(
    os: &[OrderKind],
    rows: &[Vec<i64>],
    b: &[Vec<i64>],
    t: i64,
    rot: usize,
) -> Result<(), TestCaseError> {
    let a = pareto::minimize(&set_of(os, rows)).unwrap();
    let bo = [OrderKind::NumGe];
    let sb = pareto::minimize(&set_of(&bo, b)).unwrap();
    let mut po = os.to_vec();
    po.extend(bo);
    prop_assert!(oracle_is_minimal(&pareto::free_product(&a, &sb), &po));
    prop_assert!(oracle_is_minimal(&constrain_first(&a, os, t), os));
    let mut eo = os.to_vec();
    eo.push(OrderKind::NumLe);
    prop_assert!(oracle_is_minimal(&derive_score(&a, os), &eo));
    let n = os.len();
    let pi: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
    let pmo: Vec<OrderKind> = pi.iter().map(|&i| os[i].clone()).collect();
    prop_assert!(oracle_is_minimal(&pareto::permute(&a, &pi).unwrap(), &pmo));
    Ok(())
}

/// Abstraction and alternatives may return non-minimal sets from minimal inputs.
pub fn minimality_counterexamples() -> bool {
    let a = set_of(
        &[OrderKind::NumLe, OrderKind::NumLe],
        &[vec![1, 2], vec![2, 1]],
    );
    let abs = pareto::abstract_dim(&a, 1).unwrap();
    let broken_abstraction =
        pareto::is_pareto_minimal(&a).unwrap() && !pareto::is_pareto_minimal(&abs).unwrap();
    let x = set_of(&[OrderKind::NumLe], &[vec![1]]);
    let y = set_of(&[OrderKind::NumLe], &[vec![2]]);
    let u = pareto::alternatives(&[x, y]).unwrap();
    broken_abstraction && !pareto::is_pareto_minimal(&u).unwrap()
}

/// Two refined inputs through a product, then one or two further stages.
pub fn refinement_through_pipelines(
    (os, a, a2): &Refined,
    c: &[i64],
    c2: &[i64],
    stages: &[Stage],
) -> Result<(), TestCaseError> {
    let c_rows: Vec<Vec<i64>> = c.iter().map(|x| vec![*x]).collect();
    let c2_rows: Vec<Vec<i64>> = c
        .iter()
        .zip(c2.iter().cycle())
        .map(|(x, d)| vec![x + d])
        .collect();
    let co = [OrderKind::NumLe];
    let mut orders = os.clone();
    orders.extend(co.clone());
    let mut lo = pareto::free_product(&set_of(os, a), &set_of(&co, &c_rows));
    let mut hi = pareto::free_product(&set_of(os, a2), &set_of(&co, &c2_rows));
    prop_assert!(oracle_set_dominates(&lo, &hi, &orders));
    for s in stages {
        let mut o2 = orders.clone();
        lo = run_stage(s, &lo, &mut o2);
        hi = run_stage(s, &hi, &mut orders);
        prop_assert!(oracle_set_dominates(&lo, &hi, &orders), "after {:?}", s);
    }
    Ok(())
}

pub fn derivation_is_a_constraint(
    os: &[OrderKind],
    rows: &[Vec<i64>],
) -> Result<(), TestCaseError> {
    let set = set_of(os, rows);
    let derived = derive_score(&set, os);
    // C × S ∩ {c · s | s = f(c)} over a finite S covering the image
    let targets: Vec<Vec<i64>> = (-20..=20).map(|x| vec![x]).collect();
    let s = set_of(&[OrderKind::NumLe], &targets);
    let os2 = os.to_vec();
    let constrained = pareto::apply_constraint(&pareto::free_product(&set, &s), move |c| {
        let v = ints(c);
        let (last, prefix) = v.split_last().unwrap();
        Ok::<_, ParetoError>(*last == score(&os2, prefix))
    })
    .unwrap();
    prop_assert_eq!(sorted_rows(&constrained), sorted_rows(&derived));
    Ok(())
}
