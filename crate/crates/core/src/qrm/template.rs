use super::pattern::{apply_aggregation, AggregationSpec, Normalization};
use super::{Constraint, Derivation, Part, QrmError, QrmInterface, Step};

/// What happens to the producer's remainder in `⇒` and `⇑`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Consumption {
    /// Producer minus consumer is added to the aggregate.
    #[default]
    Leftover,
    /// The producer is consumed completely; the remainder is voided.
    Complete,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParamPolicy {
    /// Parameters are combined by poset addition.
    #[default]
    Add,
    /// Parameters are hidden in the aggregate.
    Void,
}

#[derive(Clone, Debug, Default)]
pub struct TemplateOptions {
    /// Constraints on the 12-dimensional product (0-based), after the implicit matching constraint.
    pub pre_constraints: Vec<Constraint>,
    /// Constraints on the 18-dimensional derived space (0-based), before projection.
    pub post_constraints: Vec<Constraint>,
    pub parameters: ParamPolicy,
    pub consumption: Consumption,
}

fn add(i: usize) -> Step {
    Step::Derive(Derivation::PosetAdd(i, i + 6))
}

fn params(opts: &TemplateOptions) -> Step {
    match opts.parameters {
        ParamPolicy::Add => add(5),
        ParamPolicy::Void => Step::Derive(Derivation::Void),
    }
}

fn check_dual(
    a: &QrmInterface,
    producer: Part,
    b: &QrmInterface,
    consumer: Part,
) -> Result<(), QrmError> {
    let (p, c) = (a.poset(producer), b.poset(consumer));
    if p.domain != c.domain || c.order != p.order.dual() {
        return Err(QrmError::OrderMismatch(format!(
            "{producer} poset {p} of the producer is not the dual of {consumer} poset {c} of the consumer"
        )));
    }
    Ok(())
}

/// Producer-minus-consumer remainder, or void when nothing meaningful remains.
fn remainder(
    a: &QrmInterface,
    producer: Part,
    consumer: Part,
    opts: &TemplateOptions,
) -> Derivation {
    let p = a.poset(producer);
    if opts.consumption == Consumption::Complete || p.is_void() || p.order.is_discrete() {
        Derivation::Void
    } else {
        Derivation::PosetSub(producer.index(), consumer.index() + 6)
    }
}

fn aggregate(
    a: &QrmInterface,
    b: &QrmInterface,
    implicit: Option<Constraint>,
    steps: Vec<Step>,
    opts: &TemplateOptions,
) -> Result<QrmInterface, QrmError> {
    let mut spec = AggregationSpec::new(vec![a.clone(), b.clone()], Normalization::Steps(steps));
    spec.pre.extend(implicit);
    spec.pre.extend(opts.pre_constraints.iter().cloned());
    spec.post = opts.post_constraints.clone();
    apply_aggregation(&spec)
}

/// `A ∥ B`: every part is combined by poset addition.
pub fn free_aggregate(a: &QrmInterface, b: &QrmInterface) -> Result<QrmInterface, QrmError> {
    free_aggregate_with(a, b, &TemplateOptions::default())
}

pub fn free_aggregate_with(
    a: &QrmInterface,
    b: &QrmInterface,
    opts: &TemplateOptions,
) -> Result<QrmInterface, QrmError> {
    let mut steps: Vec<Step> = (0..5).map(add).collect();
    steps.push(params(opts));
    aggregate(a, b, None, steps, opts)
}

/// `A ⇒ B`: the output of `A` feeds the input of `B`.
pub fn horizontal_aggregate(a: &QrmInterface, b: &QrmInterface) -> Result<QrmInterface, QrmError> {
    horizontal_aggregate_with(a, b, &TemplateOptions::default())
}

pub fn horizontal_aggregate_with(
    a: &QrmInterface,
    b: &QrmInterface,
    opts: &TemplateOptions,
) -> Result<QrmInterface, QrmError> {
    check_dual(a, Part::Output, b, Part::Input)?;
    let steps = vec![
        Step::Derive(Derivation::Copy(0)),
        Step::Derive(remainder(a, Part::Output, Part::Input, opts)),
        Step::Derive(Derivation::PosetAdd(7, 13)),
        Step::Abstract(13),
        add(2),
        add(3),
        add(4),
        params(opts),
    ];
    aggregate(a, b, Some(Constraint::producer_consumer(1, 6)), steps, opts)
}

/// `A ⇑ B`: the provided budget of `A` covers the required budget of `B`.
pub fn vertical_aggregate(a: &QrmInterface, b: &QrmInterface) -> Result<QrmInterface, QrmError> {
    vertical_aggregate_with(a, b, &TemplateOptions::default())
}

pub fn vertical_aggregate_with(
    a: &QrmInterface,
    b: &QrmInterface,
    opts: &TemplateOptions,
) -> Result<QrmInterface, QrmError> {
    check_dual(a, Part::Provided, b, Part::Required)?;
    let steps = vec![
        add(0),
        add(1),
        Step::Derive(Derivation::Copy(2)),
        Step::Derive(remainder(a, Part::Provided, Part::Required, opts)),
        Step::Derive(Derivation::PosetAdd(9, 15)),
        Step::Abstract(15),
        add(4),
        params(opts),
    ];
    aggregate(a, b, Some(Constraint::producer_consumer(3, 8)), steps, opts)
}
