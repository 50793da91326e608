use std::fmt;

/// A point of some partially-ordered set.
///
/// `Top` and `Bot` are the adjoined greatest and least elements of integer and
/// discrete domains. `Void` is the single inhabitant of the void poset.
/// The derived `Ord` is a canonical total order used for sorting output; it has
/// nothing to do with the poset order, which lives in [`OrderKind`](super::OrderKind).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Bot,
    Top,
    Void,
    Enum(String),
    Tuple(Vec<Value>),
}

impl Value {
    pub fn tuple<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::Tuple(items.into_iter().collect())
    }

    pub fn ints<I: IntoIterator<Item = i64>>(items: I) -> Value {
        Value::Tuple(items.into_iter().map(Value::Int).collect())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Value]> {
        match self {
            Value::Tuple(items) => Some(items),
            _ => None,
        }
    }

    pub fn is_extreme(&self) -> bool {
        matches!(self, Value::Top | Value::Bot)
    }

    /// Leaves of a nested tuple in depth-first order.
    pub fn leaves(&self) -> Vec<&Value> {
        let mut out = Vec::new();
        fn walk<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
            match v {
                Value::Tuple(items) => items.iter().for_each(|i| walk(i, out)),
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bot => f.write_str("bot"),
            Value::Top => f.write_str("top"),
            Value::Void => f.write_str("⊥"),
            Value::Enum(s) => f.write_str(s),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Integers extended with `Bot` (−∞) and `Top` (+∞).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub(crate) fn of(v: &Value) -> Option<ExtInt> {
        match v {
            Value::Int(i) => Some(ExtInt::Fin(*i)),
            Value::Bot => Some(ExtInt::NegInf),
            Value::Top => Some(ExtInt::PosInf),
            _ => None,
        }
    }

    pub(crate) fn into_value(self) -> Value {
        match self {
            ExtInt::NegInf => Value::Bot,
            ExtInt::Fin(i) => Value::Int(i),
            ExtInt::PosInf => Value::Top,
        }
    }
}
