#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use qrm_core::pareto::{Configuration, ConfigurationSet, ConfigurationSpace};
use qrm_core::poset::{OrderKind, Poset, Value};

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x51ce_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn order() -> impl Strategy<Value = OrderKind> + Clone {
    prop_oneof![
        Just(OrderKind::NumLe),
        Just(OrderKind::NumGe),
        Just(OrderKind::EqOnly)
    ]
}

pub fn numeric_order() -> impl Strategy<Value = OrderKind> + Clone {
    prop_oneof![Just(OrderKind::NumLe), Just(OrderKind::NumGe)]
}

pub fn space(orders: &[OrderKind]) -> ConfigurationSpace {
    ConfigurationSpace::of_posets(orders.iter().cloned().map(Poset::anonymous)).unwrap()
}

pub fn set_of(orders: &[OrderKind], rows: &[Vec<i64>]) -> ConfigurationSet {
    let rows = rows
        .iter()
        .map(|r| r.iter().copied().map(Value::Int).collect());
    ConfigurationSet::from_rows(space(orders), rows).unwrap()
}

/// Orders plus a set of up to `max_len` integer rows over them.
pub fn ordered_set(
    orders: impl Strategy<Value = OrderKind> + Clone,
    dims: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> impl Strategy<Value = (Vec<OrderKind>, Vec<Vec<i64>>)> {
    proptest::collection::vec(orders, dims).prop_flat_map(move |os| {
        let n = os.len();
        (
            Just(os),
            proptest::collection::vec(proptest::collection::vec(0i64..6, n), 0..=max_len),
        )
    })
}

pub fn ints(c: &Configuration) -> Vec<i64> {
    c.values()
        .iter()
        .map(|v| v.as_int().expect("integer configuration"))
        .collect()
}

// Independent dominance oracle over integer configurations.

pub fn leq(o: &OrderKind, a: i64, b: i64) -> bool {
    match o {
        OrderKind::NumLe => a <= b,
        OrderKind::NumGe => a >= b,
        OrderKind::EqOnly => a == b,
        other => panic!("oracle does not handle {other}"),
    }
}

pub fn dominated_by(orders: &[OrderKind], a: &[i64], b: &[i64]) -> bool {
    orders
        .iter()
        .zip(a.iter().zip(b))
        .all(|(o, (x, y))| leq(o, *x, *y))
}

pub fn oracle_minimal(orders: &[OrderKind], rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut uniq: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        if !uniq.contains(r) {
            uniq.push(r.clone());
        }
    }
    let mut out: Vec<Vec<i64>> = uniq
        .iter()
        .filter(|c| !uniq.iter().any(|d| d != *c && dominated_by(orders, c, d)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn oracle_is_minimal(set: &ConfigurationSet, orders: &[OrderKind]) -> bool {
    let rows: Vec<Vec<i64>> = set.iter().map(ints).collect();
    rows.iter()
        .all(|c| !rows.iter().any(|d| d != c && dominated_by(orders, c, d)))
}

/// `a ⪯ b` on sets, computed from the oracle.
pub fn oracle_set_dominates(
    a: &ConfigurationSet,
    b: &ConfigurationSet,
    orders: &[OrderKind],
) -> bool {
    a.iter()
        .all(|c| b.iter().any(|d| dominated_by(orders, &ints(c), &ints(d))))
}

pub fn sorted_rows(set: &ConfigurationSet) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = set.iter().map(ints).collect();
    rows.sort();
    rows
}

/// A configuration at least as good as `row` in every dimension.
pub fn improve(orders: &[OrderKind], row: &[i64], deltas: &[i64]) -> Vec<i64> {
    orders
        .iter()
        .zip(row.iter().zip(deltas.iter().cycle()))
        .map(|(o, (x, d))| match o {
            OrderKind::NumLe => x + d,
            OrderKind::NumGe => x - d,
            _ => *x,
        })
        .collect()
}
