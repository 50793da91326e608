//! The video-processing case study: stream formats, component interfaces
//! and the scaler configuration rules.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pareto::Configuration;
use crate::poset::{OrderKind, Poset, Value};
use crate::qrm::{
    free_aggregate, horizontal_aggregate_with, vertical_aggregate_with, Constraint, Consumption,
    Part, QrmError, QrmInterface, TemplateOptions,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum VideoError {
    #[error("unknown resolution {0:?}")]
    UnknownResolution(String),
    #[error("unsupported frame rate {0}")]
    UnsupportedRate(i64),
    #[error("output resolution {output} is not smaller than input resolution {input}")]
    NotSmaller {
        input: Resolution,
        output: Resolution,
    },
    #[error("output rate {output} does not divide input rate {input}")]
    RateNotDivisor { input: i64, output: i64 },
    #[error("malformed {what}: {value}")]
    Malformed { what: &'static str, value: Value },
    #[error(transparent)]
    Qrm(#[from] QrmError),
}

/// Supported resolutions, largest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Resolution {
    Fhd,
    HdPlus,
    Hd,
    Qhd,
    Nhd,
}

impl Resolution {
    pub const ALL: [Resolution; 5] = [
        Resolution::Fhd,
        Resolution::HdPlus,
        Resolution::Hd,
        Resolution::Qhd,
        Resolution::Nhd,
    ];

    pub fn dims(self) -> (i64, i64) {
        match self {
            Resolution::Fhd => (1920, 1080),
            Resolution::HdPlus => (1600, 900),
            Resolution::Hd => (1280, 720),
            Resolution::Qhd => (960, 540),
            Resolution::Nhd => (640, 360),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Resolution::Fhd => "FHD",
            Resolution::HdPlus => "HD+",
            Resolution::Hd => "HD",
            Resolution::Qhd => "qHD",
            Resolution::Nhd => "nHD",
        }
    }

    pub fn pixels(self) -> i64 {
        let (h, v) = self.dims();
        h * v
    }

    pub fn from_dims(h: i64, v: i64) -> Option<Resolution> {
        Resolution::ALL.into_iter().find(|r| r.dims() == (h, v))
    }

    /// The `(h, v)` pair used as scaler parameter.
    pub fn value(self) -> Value {
        let (h, v) = self.dims();
        Value::ints([h, v])
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Resolution {
    type Err = VideoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Resolution::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| VideoError::UnknownResolution(s.to_string()))
    }
}

pub const RATES: [i64; 8] = [90, 60, 30, 20, 15, 10, 6, 5];

/// Stream slots of one hardware scaler.
pub const HW_STREAM_SLOTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VideoFormat {
    pub res: Resolution,
    pub rate: i64,
}

impl VideoFormat {
    pub fn new(res: Resolution, rate: i64) -> Result<VideoFormat, VideoError> {
        if !RATES.contains(&rate) {
            return Err(VideoError::UnsupportedRate(rate));
        }
        Ok(VideoFormat { res, rate })
    }

    /// Every supported format, largest resolution and rate first.
    pub fn all() -> impl Iterator<Item = VideoFormat> {
        Resolution::ALL
            .into_iter()
            .flat_map(|res| RATES.into_iter().map(move |rate| VideoFormat { res, rate }))
    }

    pub fn value(self) -> Value {
        let (h, v) = self.res.dims();
        Value::ints([h, v, self.rate])
    }

    pub fn from_value(value: &Value) -> Result<VideoFormat, VideoError> {
        let malformed = || VideoError::Malformed {
            what: "video format",
            value: value.clone(),
        };
        let ints: Vec<i64> = value
            .as_tuple()
            .ok_or_else(malformed)?
            .iter()
            .map(|x| x.as_int().ok_or_else(malformed))
            .collect::<Result<_, _>>()?;
        match ints.as_slice() {
            [h, v, r] => VideoFormat::new(Resolution::from_dims(*h, *v).ok_or_else(malformed)?, *r),
            _ => Err(malformed()),
        }
    }

    pub fn pixel_rate(self) -> i64 {
        self.res.pixels() * self.rate
    }
}

impl fmt::Display for VideoFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.res, self.rate)
    }
}

impl FromStr for VideoFormat {
    type Err = VideoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (res, rate) = s
            .split_once('@')
            .ok_or_else(|| VideoError::UnknownResolution(s.to_string()))?;
        let rate = rate
            .parse()
            .map_err(|_| VideoError::UnknownResolution(s.to_string()))?;
        VideoFormat::new(res.parse()?, rate)
    }
}

/// One stream to be processed: its input format and the requested output resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StreamRequest {
    pub input: VideoFormat,
    pub output_res: Resolution,
}

impl StreamRequest {
    pub fn new(input: VideoFormat, output_res: Resolution) -> Result<StreamRequest, VideoError> {
        if output_res <= input.res {
            return Err(VideoError::NotSmaller {
                input: input.res,
                output: output_res,
            });
        }
        Ok(StreamRequest { input, output_res })
    }
}

impl fmt::Display for StreamRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.input, self.output_res)
    }
}

fn check_scaling(input: VideoFormat, output: VideoFormat) -> Result<(), VideoError> {
    if output.res <= input.res {
        return Err(VideoError::NotSmaller {
            input: input.res,
            output: output.res,
        });
    }
    if input.rate % output.rate != 0 {
        return Err(VideoError::RateNotDivisor {
            input: input.rate,
            output: output.rate,
        });
    }
    Ok(())
}

/// Computational budget in binary Mpixels/s: input plus output pixel rate, rounded half up.
pub fn scaler_comp(input: VideoFormat, output: VideoFormat) -> Result<i64, VideoError> {
    check_scaling(input, output)?;
    const MEGA: i64 = 1 << 20;
    Ok((input.pixel_rate() + output.pixel_rate() + MEGA / 2) / MEGA)
}

/// Line-buffer segments of 128 pixels needed for the input.
pub fn scaler_segs(input: VideoFormat) -> i64 {
    let (h, _) = input.res.dims();
    (h + 127) / 128
}

/// Connection bandwidth in Gb/s at four bytes per pixel, rounded up.
pub fn transport_bandwidth(v: VideoFormat) -> i64 {
    let bits = v.pixel_rate() * 32;
    (bits + 999_999_999) / 1_000_000_000
}

pub mod posets {
    //! The posets of the case study. Consumer-side posets are the duals of
    //! the producer-side ones.

    use super::*;

    fn ge(n: usize) -> OrderKind {
        OrderKind::element_wise(vec![OrderKind::NumGe; n])
    }

    fn le(n: usize) -> OrderKind {
        OrderKind::element_wise(vec![OrderKind::NumLe; n])
    }

    /// `(h, v, rate)` triples, discretely ordered; used for both input and output.
    pub fn video() -> Poset {
        Poset::named("Video", OrderKind::element_wise(vec![OrderKind::EqOnly; 3]))
    }

    pub fn resolution() -> Poset {
        Poset::named(
            "Resolution",
            OrderKind::element_wise(vec![OrderKind::EqOnly; 2]),
        )
    }

    pub fn frame_rate() -> Poset {
        Poset::named("FrameRate", OrderKind::NumLe)
    }

    pub fn bandwidth_provided() -> Poset {
        Poset::named("Bw", OrderKind::NumLe)
    }

    pub fn bandwidth_required() -> Poset {
        bandwidth_provided().dual()
    }

    pub fn connection_provided() -> Poset {
        Poset::named("ConnBw", OrderKind::NumLe)
    }

    pub fn connection_required() -> Poset {
        connection_provided().dual()
    }

    /// `(comp, segs)` as required by a scaler.
    pub fn scaling_required() -> Poset {
        Poset::named("Scaling", ge(2))
    }

    pub fn scaling_provided() -> Poset {
        Poset::named("Scaling", le(2))
    }

    /// `(streams, comp, segs)` as provided by a hardware scaler.
    pub fn scalers_provided() -> Poset {
        Poset::named("Scalers", le(3))
    }

    pub fn scalers_required() -> Poset {
        Poset::named("Scalers", ge(3))
    }

    pub fn compute_provided() -> Poset {
        Poset::named("Compute", OrderKind::NumLe)
    }
}

fn void6() -> [Poset; 6] {
    std::array::from_fn(|_| Poset::void())
}

fn ok<T>(r: Result<T, QrmError>) -> T {
    r.expect("case-study interfaces are well-typed")
}

/// Passes every supported format through, requiring its connection bandwidth.
pub fn transport() -> QrmInterface {
    let mut p = void6();
    p[0] = posets::video();
    p[1] = posets::video();
    p[2] = posets::connection_required();
    p[5] = posets::video();
    let rows = VideoFormat::all().map(|v| {
        [
            v.value(),
            v.value(),
            Value::Int(transport_bandwidth(v)),
            Value::Void,
            Value::Void,
            v.value(),
        ]
    });
    ok(QrmInterface::from_rows(p, rows))
}

/// One scaler configuration per valid (input, output) pair.
pub fn scaler_rows() -> Vec<[Value; 6]> {
    let mut rows = Vec::new();
    for input in VideoFormat::all() {
        for output in VideoFormat::all() {
            if let Ok(comp) = scaler_comp(input, output) {
                rows.push([
                    input.value(),
                    output.value(),
                    Value::ints([comp, scaler_segs(input)]),
                    Value::Void,
                    Value::Int(output.rate),
                    output.res.value(),
                ]);
            }
        }
    }
    rows
}

pub fn scaler() -> QrmInterface {
    let mut p = void6();
    p[0] = posets::video();
    p[1] = posets::video();
    p[2] = posets::scaling_required();
    p[4] = posets::frame_rate();
    p[5] = posets::resolution();
    ok(QrmInterface::from_rows(p, scaler_rows()))
}

pub const FIBER_GBPS: i64 = 10;
pub const HW_SCALER_BUDGET: (i64, i64, i64) = (4, 300, 32);
pub const SW_SCALER_COMPUTE: i64 = 100;

pub fn fiber() -> QrmInterface {
    fiber_with(FIBER_GBPS)
}

pub fn fiber_with(gbps: i64) -> QrmInterface {
    ok(QrmInterface::only(
        Part::Provided,
        posets::bandwidth_provided(),
        [Value::Int(gbps)],
    ))
}

pub fn hw_scaler() -> QrmInterface {
    let (s, c, m) = HW_SCALER_BUDGET;
    hw_scaler_with(s, c, m)
}

pub fn hw_scaler_with(streams: i64, comp: i64, segs: i64) -> QrmInterface {
    ok(QrmInterface::only(
        Part::Provided,
        posets::scalers_provided(),
        [Value::ints([streams, comp, segs])],
    ))
}

pub fn sw_scaler() -> QrmInterface {
    ok(QrmInterface::only(
        Part::Provided,
        posets::compute_provided(),
        [Value::Int(SW_SCALER_COMPUTE)],
    ))
}

/// `fiber ∥ hw_scaler`.
pub fn execution_platform() -> QrmInterface {
    ok(free_aggregate(&fiber(), &hw_scaler()))
}

/// Requires `b` Gb/s of fiber bandwidth and provides `b` Gb/s of connection bandwidth.
pub fn connection(b: i64) -> QrmInterface {
    let mut p = void6();
    p[2] = posets::bandwidth_required();
    p[3] = posets::connection_provided();
    let v = Value::Void;
    ok(QrmInterface::from_rows(
        p,
        [[
            v.clone(),
            v.clone(),
            Value::Int(b),
            Value::Int(b),
            v.clone(),
            v,
        ]],
    ))
}

/// Requires one stream slot plus `(comp, segs)` of a hardware scaler and provides `(comp, segs)`.
pub fn virtual_scaler(comp: i64, segs: i64) -> QrmInterface {
    let mut p = void6();
    p[2] = posets::scalers_required();
    p[3] = posets::scaling_provided();
    let v = Value::Void;
    ok(QrmInterface::from_rows(
        p,
        [[
            v.clone(),
            v.clone(),
            Value::ints([1, comp, segs]),
            Value::ints([comp, segs]),
            v.clone(),
            v,
        ]],
    ))
}

/// Splits an application's required budget `(b, (comp, segs))`.
pub fn app_requirements(c: &Configuration) -> Result<(i64, i64, i64), VideoError> {
    let req = c.get(Part::Required.index());
    let malformed = || VideoError::Malformed {
        what: "application budget",
        value: req.clone(),
    };
    let (b, s) = match req.as_tuple() {
        Some([b, s]) => (b, s),
        _ => return Err(malformed()),
    };
    match (b.as_int(), s.as_tuple()) {
        (Some(b), Some([comp, segs])) => Ok((
            b,
            comp.as_int().ok_or_else(malformed)?,
            segs.as_int().ok_or_else(malformed)?,
        )),
        _ => Err(malformed()),
    }
}

/// The virtual execution platform `connection ∥ virtual_scaler` matching one application configuration.
pub fn vep_for(c: &Configuration) -> Result<QrmInterface, VideoError> {
    let (b, comp, segs) = app_requirements(c)?;
    Ok(free_aggregate(&connection(b), &virtual_scaler(comp, segs))?)
}

/// `(transport ⇒ scaler)` restricted to the stream's input format and output resolution.
pub fn application(stream: StreamRequest) -> Result<QrmInterface, VideoError> {
    let opts = TemplateOptions {
        pre_constraints: vec![
            Constraint::subset(5, [stream.input.value()]),
            Constraint::subset(11, [stream.output_res.value()]),
        ],
        ..TemplateOptions::default()
    };
    Ok(horizontal_aggregate_with(&transport(), &scaler(), &opts)?)
}

/// Each application configuration bound to its own VEP; the VEP's provided budget is used up.
pub fn app_with_vep(app: &QrmInterface) -> Result<QrmInterface, VideoError> {
    let opts = TemplateOptions {
        consumption: Consumption::Complete,
        ..TemplateOptions::default()
    };
    let mut out: Option<QrmInterface> = None;
    for c in app.iter() {
        let single = app.filter(|x| Ok(x == c))?;
        let va = vertical_aggregate_with(&vep_for(c)?, &single, &opts)?;
        out = Some(match out {
            None => va,
            Some(acc) => {
                let union = crate::pareto::alternatives(&[acc.into_set(), va.into_set()])
                    .map_err(QrmError::from)?;
                QrmInterface::new(union)?
            }
        });
    }
    match out {
        Some(va) => Ok(va.minimized()?),
        None => Ok(app.clone()),
    }
}
