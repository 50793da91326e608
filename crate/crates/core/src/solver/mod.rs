//! The video-processing QRM: bind per-stream applications onto execution
//! platforms for every mapping and keep the Pareto frontier of stream rates.

mod mapping;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::pareto::{self, Configuration, ConfigurationSet, ConfigurationSpace, ParetoError};
use crate::poset::{Domain, OrderKind, Poset, PosetDescriptor, Value};
use crate::qrm::{free_aggregate, vertical_aggregate, Part, QrmError, QrmInterface};
use crate::video::{self, StreamRequest, VideoError};

pub use mapping::{count_mappings, enumerate_mappings, type_classes, Mapping, Symmetry};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("no mapping admits a feasible configuration")]
    InfeasibleScenario,
    #[error("empty frontier")]
    EmptyFrontier,
    #[error("unexpected quality structure: {0}")]
    QualityShape(String),
    #[error(transparent)]
    Video(#[from] VideoError),
    #[error(transparent)]
    Qrm(#[from] QrmError),
    #[error(transparent)]
    Pareto(#[from] ParetoError),
}

type CostFn = dyn Fn(&[i64]) -> i64 + Send + Sync;

/// A monotone cost over the per-stream rates; larger is better.
#[derive(Clone)]
pub enum CostSpec {
    /// The minimum output rate over all streams.
    MaxMinRate,
    /// The minimum of `weight_i · rate_i`.
    WeightedMin(Vec<i64>),
    Custom {
        name: String,
        f: Arc<CostFn>,
    },
}

impl CostSpec {
    pub fn custom<F>(name: impl Into<String>, f: F) -> CostSpec
    where
        F: Fn(&[i64]) -> i64 + Send + Sync + 'static,
    {
        CostSpec::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, rates: &[i64]) -> i64 {
        match self {
            CostSpec::MaxMinRate => rates.iter().copied().min().unwrap_or(0),
            CostSpec::WeightedMin(w) => rates
                .iter()
                .zip(w)
                .map(|(r, w)| r.saturating_mul(*w))
                .min()
                .unwrap_or(0),
            CostSpec::Custom { f, .. } => f(rates),
        }
    }

    /// Whether the cost can tell same-type streams apart.
    pub fn distinguishes_streams(&self) -> bool {
        !matches!(self, CostSpec::MaxMinRate)
    }
}

impl fmt::Debug for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostSpec::MaxMinRate => f.write_str("MaxMinRate"),
            CostSpec::WeightedMin(w) => f.debug_tuple("WeightedMin").field(w).finish(),
            CostSpec::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// Budgets of one execution platform: a fiber and a hardware scaler.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlatformBudget {
    pub fiber_gbps: i64,
    /// `(streams, comp, segs)`.
    pub scaler: (i64, i64, i64),
}

impl Default for PlatformBudget {
    fn default() -> Self {
        PlatformBudget {
            fiber_gbps: video::FIBER_GBPS,
            scaler: video::HW_SCALER_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub platforms: usize,
    pub streams: Vec<StreamRequest>,
    pub cost: CostSpec,
    pub symmetry: Symmetry,
    pub budget: PlatformBudget,
}

impl Scenario {
    pub fn new(platforms: usize, streams: Vec<StreamRequest>) -> Scenario {
        Scenario {
            platforms,
            streams,
            cost: CostSpec::MaxMinRate,
            symmetry: Symmetry::default(),
            budget: PlatformBudget::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if self.platforms == 0 {
            return Err(SolverError::InvalidScenario(
                "at least one platform is required".into(),
            ));
        }
        if self.streams.is_empty() {
            return Err(SolverError::InvalidScenario(
                "at least one stream is required".into(),
            ));
        }
        if let CostSpec::WeightedMin(w) = &self.cost {
            if w.len() != self.streams.len() {
                return Err(SolverError::InvalidScenario(format!(
                    "{} weights for {} streams",
                    w.len(),
                    self.streams.len()
                )));
            }
            if w.iter().any(|&x| x < 0) {
                return Err(SolverError::InvalidScenario(
                    "weights must be non-negative".into(),
                ));
            }
        }
        let (slots, comp, segs) = self.budget.scaler;
        if self.budget.fiber_gbps < 0 || slots < 0 || comp < 0 || segs < 0 {
            return Err(SolverError::InvalidScenario(
                "platform budgets must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Streams per platform admitted by the scaler's stream slots.
    pub fn cap(&self) -> usize {
        usize::try_from(self.budget.scaler.0).unwrap_or(0)
    }

    /// The symmetry actually used: stream symmetry is dropped when the cost tells streams apart.
    pub fn effective_symmetry(&self) -> Symmetry {
        Symmetry {
            platform: self.symmetry.platform,
            stream: self.symmetry.stream && !self.cost.distinguishes_streams(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverStats {
    /// Mappings without any symmetry reduction.
    pub mappings_enumerated: u128,
    pub mappings_after_symmetry: usize,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    /// Pareto-minimal per-stream output rates.
    pub frontier: ConfigurationSet,
    pub chosen: Configuration,
    pub chosen_mapping: Mapping,
    pub stats: SolverStats,
}

/// The space `N^n` of per-stream output rates.
pub fn rates_space(n: usize) -> ConfigurationSpace {
    let dims = (0..n)
        .map(|i| PosetDescriptor::new(format!("rate{}", i + 1), video::posets::frame_rate()))
        .collect();
    ConfigurationSpace::new(dims).expect("distinct rate names")
}

/// Platform and per-stream interfaces of a scenario.
#[derive(Clone, Debug)]
pub struct VideoModel {
    pub platform: QrmInterface,
    /// `va_i`: stream `i`'s application bound to its VEPs, with per-stream parts tagged by `i`.
    pub streams: Vec<QrmInterface>,
}

const TAGGED_PARTS: [Part; 4] = [Part::Input, Part::Output, Part::Quality, Part::Parameters];

impl VideoModel {
    pub fn new(scenario: &Scenario) -> Result<VideoModel, SolverError> {
        let (s, c, m) = scenario.budget.scaler;
        let platform = free_aggregate(
            &video::fiber_with(scenario.budget.fiber_gbps),
            &video::hw_scaler_with(s, c, m),
        )?;
        let mut by_type: HashMap<StreamRequest, QrmInterface> = HashMap::new();
        let mut streams = Vec::with_capacity(scenario.streams.len());
        for (i, req) in scenario.streams.iter().enumerate() {
            let va = match by_type.get(req) {
                Some(va) => va.clone(),
                None => {
                    let va = video::app_with_vep(&video::application(*req)?)?;
                    by_type.insert(*req, va.clone());
                    va
                }
            };
            streams.push(va.tagged(&i.to_string(), &TAGGED_PARTS)?);
        }
        Ok(VideoModel { platform, streams })
    }

    /// `ex ⇑ va_{s_1} ⇑ … ⇑ va_{s_m}` for the listed streams.
    pub fn bind(&self, streams: &[usize]) -> Result<QrmInterface, SolverError> {
        let mut ex = self.platform.clone();
        for &i in streams {
            ex = vertical_aggregate(&ex, &self.streams[i])?;
            if ex.is_empty() {
                break;
            }
        }
        Ok(ex)
    }

    /// The bound platform reduced to its quality part.
    pub fn platform_quality(&self, streams: &[usize]) -> Result<QrmInterface, SolverError> {
        let ex = self.bind(streams)?;
        Ok(ex.voided(&[
            Part::Input,
            Part::Output,
            Part::Required,
            Part::Provided,
            Part::Parameters,
        ])?)
    }

    /// Per-stream rates of one mapping, computed by aggregating the full platform interfaces.
    pub fn mapping_rates_literal(
        &self,
        m: &Mapping,
        k: usize,
    ) -> Result<ConfigurationSet, SolverError> {
        let mut all: Option<QrmInterface> = None;
        for list in m.platform_lists(k) {
            let ex = self.bind(&list)?;
            if ex.is_empty() {
                return Ok(ConfigurationSet::empty(rates_space(self.streams.len())));
            }
            all = Some(match all {
                None => ex,
                Some(acc) => free_aggregate(&acc, &ex)?,
            });
        }
        let all = all.ok_or_else(|| SolverError::InvalidScenario("no platforms".into()))?;
        rates_by_stream(&all, self.streams.len())
    }

    /// Per-stream rates of one mapping from per-platform quality interfaces.
    pub fn mapping_rates(
        &self,
        m: &Mapping,
        k: usize,
        qualities: &HashMap<Vec<usize>, QrmInterface>,
    ) -> Result<ConfigurationSet, SolverError> {
        let mut all: Option<QrmInterface> = None;
        for list in m.platform_lists(k) {
            let q = match qualities.get(&list) {
                Some(q) => q.clone(),
                None => self.platform_quality(&list)?,
            };
            if q.is_empty() {
                return Ok(ConfigurationSet::empty(rates_space(self.streams.len())));
            }
            all = Some(match all {
                None => q,
                Some(acc) => free_aggregate(&acc, &q)?,
            });
        }
        let all = all.ok_or_else(|| SolverError::InvalidScenario("no platforms".into()))?;
        rates_by_stream(&all, self.streams.len())
    }
}

/// Paths to the tagged frame-rate leaves of a (nested) quality poset.
fn rate_leaves(
    p: &Poset,
    path: &mut Vec<usize>,
    out: &mut Vec<(usize, Vec<usize>)>,
) -> Result<(), SolverError> {
    match (&p.domain, &p.order) {
        (Domain::Void, _) => Ok(()),
        (Domain::Product(parts), OrderKind::ElementWise(orders)) if parts.len() == orders.len() => {
            for i in 0..parts.len() {
                path.push(i);
                rate_leaves(&p.component(i).map_err(QrmError::from)?, path, out)?;
                path.pop();
            }
            Ok(())
        }
        (Domain::Named(name), OrderKind::NumLe) => {
            let tag = name
                .split_once('#')
                .and_then(|(_, t)| t.parse::<usize>().ok())
                .ok_or_else(|| SolverError::QualityShape(format!("untagged quality {name}")))?;
            out.push((tag, path.clone()));
            Ok(())
        }
        _ => Err(SolverError::QualityShape(p.to_string())),
    }
}

fn value_at<'a>(v: &'a Value, path: &[usize]) -> Option<&'a Value> {
    path.iter()
        .try_fold(v, |v, &i| v.as_tuple().and_then(|t| t.get(i)))
}

/// Abstracts all but the quality, splits it into per-stream rates and orders them by stream.
pub fn rates_by_stream(i: &QrmInterface, n: usize) -> Result<ConfigurationSet, SolverError> {
    let space = rates_space(n);
    let mut leaves = Vec::new();
    rate_leaves(i.poset(Part::Quality), &mut Vec::new(), &mut leaves)?;
    let mut order: Vec<Option<Vec<usize>>> = vec![None; n];
    for (tag, path) in leaves {
        match order.get_mut(tag) {
            Some(slot @ None) => *slot = Some(path),
            _ => {
                return Err(SolverError::QualityShape(format!(
                    "stream {tag} is missing or repeated"
                )))
            }
        }
    }
    let paths: Vec<Vec<usize>> = order
        .into_iter()
        .enumerate()
        .map(|(t, p)| {
            p.ok_or_else(|| SolverError::QualityShape(format!("no quality for stream {t}")))
        })
        .collect::<Result<_, _>>()?;
    let mut out = ConfigurationSet::empty(space);
    for c in i.iter() {
        let q = c.get(Part::Quality.index());
        let rates = paths
            .iter()
            .map(|p| {
                value_at(q, p)
                    .cloned()
                    .ok_or_else(|| SolverError::QualityShape(format!("{q}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(Configuration(rates))?;
    }
    Ok(pareto::minimize(&out)?)
}

fn rates_of(c: &Configuration) -> Vec<i64> {
    c.values()
        .iter()
        .map(|v| v.as_int().unwrap_or(i64::MIN))
        .collect()
}

/// Picks a configuration of maximal cost; ties go to the lexicographically
/// greatest rate tuple.
pub fn select_optimum(
    frontier: &ConfigurationSet,
    cost: &CostSpec,
) -> Result<Configuration, SolverError> {
    frontier
        .iter()
        .map(|c| {
            let r = rates_of(c);
            (cost.eval(&r), r, c)
        })
        .max_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
        .map(|(_, _, c)| c.clone())
        .ok_or(SolverError::EmptyFrontier)
}

/// Folds per-mapping rate sets into the frontier, keeping the lowest mapping behind each configuration.
fn merge(
    n: usize,
    parts: Vec<(Mapping, ConfigurationSet)>,
) -> Result<(ConfigurationSet, HashMap<Configuration, Mapping>), SolverError> {
    let mut frontier = ConfigurationSet::empty(rates_space(n));
    let mut origin: HashMap<Configuration, Mapping> = HashMap::new();
    for (m, s) in parts {
        for c in s.iter() {
            origin.entry(c.clone()).or_insert_with(|| m.clone());
        }
        frontier = pareto::minimize(&pareto::alternatives(&[frontier, s])?)?;
    }
    origin.retain(|c, _| frontier.contains(c));
    Ok((frontier, origin))
}

pub fn solve(scenario: &Scenario) -> Result<SolverResult, SolverError> {
    let start = Instant::now();
    scenario.validate()?;
    let n = scenario.streams.len();
    let k = scenario.platforms;
    let sym = scenario.effective_symmetry();
    let classes = type_classes(&scenario.streams);
    let mappings = enumerate_mappings(&classes, k, scenario.cap(), sym);
    log::info!("{} mappings after symmetry reduction", mappings.len());

    let model = VideoModel::new(scenario)?;
    let lists: BTreeSet<Vec<usize>> = mappings.iter().flat_map(|m| m.platform_lists(k)).collect();
    let qualities: HashMap<Vec<usize>, QrmInterface> = lists
        .into_par_iter()
        .map(|l| model.platform_quality(&l).map(|q| (l, q)))
        .collect::<Result<_, _>>()?;
    log::debug!("{} distinct platform bindings", qualities.len());

    let parts: Vec<(Mapping, ConfigurationSet)> = mappings
        .par_iter()
        .map(|m| {
            model
                .mapping_rates(m, k, &qualities)
                .map(|s| (m.clone(), s))
        })
        .collect::<Result<_, _>>()?;
    let (frontier, origin) = merge(n, parts)?;
    if frontier.is_empty() {
        return Err(SolverError::InfeasibleScenario);
    }
    let chosen = select_optimum(&frontier, &scenario.cost)?;
    let chosen_mapping = origin
        .get(&chosen)
        .cloned()
        .ok_or(SolverError::EmptyFrontier)?;
    Ok(SolverResult {
        frontier,
        chosen,
        chosen_mapping,
        stats: SolverStats {
            mappings_enumerated: count_mappings(n, k, scenario.cap()),
            mappings_after_symmetry: mappings.len(),
            wall_time: start.elapsed(),
        },
    })
}
