//! Differential campaigns: float turning sums against the exact predicate.
//!
//! Triples are drawn from a ChaCha8 stream keyed by `(seed, mode)` and
//! positioned by sample index (`set_stream(index)`), so any single sample can
//! be regenerated without replaying the campaign, and sharding over index
//! ranges does not change the result.
//!
//! A case is *fragile* when one of its oriented angles sits on `0` or `pi`
//! (decided exactly) or its float value is within [`FRAGILE_BAND`] of `0`,
//! `pi` or `2*pi`. On such inputs float arithmetic cannot be expected to
//! reproduce the exact answer, so fragile disagreements are listed and counted
//! but do not fail a campaign.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::angle::{oriented_angle, turning_sum};
use crate::exact::{alternative_of, classify_pairs, ExactError, RationalVec2, TripleAlternative};
use crate::rational::{self, Rational};
use crate::triangle::equal_cross_check;

/// Distance from `0`, `pi` or `2*pi` under which a float oriented angle is
/// treated as on the boundary.
pub const FRAGILE_BAND: f64 = 1e-9;

/// Perturbation sizes used by [`SampleMode::NearCollinear`], as powers of ten.
pub const NEAR_COLLINEAR_EXPONENTS: [u32; 3] = [12, 9, 6];

/// Largest power of ten applied by [`SampleMode::ExtremeMagnitude`].
pub const EXTREME_EXPONENT: i32 = 150;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),
    #[error("sample {index}: {source}")]
    Exact { index: u64, source: ExactError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SampleMode {
    /// Independent uniform rational vectors.
    UniformRational,
    /// At least one pair exactly parallel or antiparallel.
    BoundaryExact,
    /// A collinear triple with one or two vectors tilted by 1e-12, 1e-9 or 1e-6.
    NearCollinear,
    /// Uniform vectors each scaled by an independent power of ten.
    ExtremeMagnitude,
    /// `a + b + c = 0`: the side vectors of a possibly degenerate triangle.
    ClosedTriple,
}

impl SampleMode {
    pub const ALL: [SampleMode; 5] = [
        SampleMode::UniformRational,
        SampleMode::BoundaryExact,
        SampleMode::NearCollinear,
        SampleMode::ExtremeMagnitude,
        SampleMode::ClosedTriple,
    ];

    fn salt(self) -> u64 {
        match self {
            SampleMode::UniformRational => 0x5eed_0001,
            SampleMode::BoundaryExact => 0x5eed_0002,
            SampleMode::NearCollinear => 0x5eed_0003,
            SampleMode::ExtremeMagnitude => 0x5eed_0004,
            SampleMode::ClosedTriple => 0x5eed_0005,
        }
    }
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for SampleMode {
    type Err = String;

    /// Accepts `UniformRational`, `uniform-rational`, `uniform_rational`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        SampleMode::ALL
            .into_iter()
            .find(|m| m.to_string().to_lowercase() == key)
            .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count: u64,
    pub seed: u64,
    pub mode: SampleMode,
    /// Numerators are drawn from `[-numerator_bound, numerator_bound]`.
    pub numerator_bound: u64,
    /// Denominators are drawn from `[1, denominator_bound]`.
    pub denominator_bound: u64,
}

impl SampleSpec {
    pub const DEFAULT_NUMERATOR_BOUND: u64 = 1_000_000;
    pub const DEFAULT_DENOMINATOR_BOUND: u64 = 1_000;

    pub fn new(mode: SampleMode, count: u64, seed: u64) -> Self {
        SampleSpec {
            count,
            seed,
            mode,
            numerator_bound: Self::DEFAULT_NUMERATOR_BOUND,
            denominator_bound: Self::DEFAULT_DENOMINATOR_BOUND,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.count == 0 {
            return Err(HarnessError::InvalidSpec("count must be at least 1".into()));
        }
        for (name, bound) in [
            ("numerator bound", self.numerator_bound),
            ("denominator bound", self.denominator_bound),
        ] {
            if bound == 0 || bound > i64::MAX as u64 {
                return Err(HarnessError::InvalidSpec(format!(
                    "{name} must be in [1, {}]",
                    i64::MAX
                )));
            }
        }
        Ok(())
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ self.mode.salt());
        rng.set_stream(index);
        rng
    }
}

struct Sampler<'a> {
    spec: &'a SampleSpec,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    fn rational(&mut self) -> Rational {
        let nb = self.spec.numerator_bound as i64;
        let n = self.rng.gen_range(-nb..=nb);
        let d = self.rng.gen_range(1..=self.spec.denominator_bound as i64);
        rational::ratio(n, d)
    }

    fn nonzero_rational(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    fn vector(&mut self) -> RationalVec2 {
        loop {
            let v = RationalVec2::new(self.rational(), self.rational());
            if !v.is_zero() {
                return v;
            }
        }
    }

    fn power_of_ten(&mut self, max: i32) -> Rational {
        let e: i32 = self.rng.gen_range(-max..=max);
        let p: BigInt = Pow::pow(BigInt::from(10u32), e.unsigned_abs());
        if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::from(1), p)
        }
    }

    fn triple(&mut self) -> [RationalVec2; 3] {
        match self.spec.mode {
            SampleMode::UniformRational => [self.vector(), self.vector(), self.vector()],
            SampleMode::BoundaryExact => {
                let a = self.vector();
                match self.rng.gen_range(0..4u8) {
                    0 => {
                        let b = a.scale(&self.nonzero_rational());
                        [a, b, self.vector()]
                    }
                    1 => {
                        let b = self.vector();
                        let c = b.scale(&self.nonzero_rational());
                        [a, b, c]
                    }
                    2 => {
                        let b = self.vector();
                        let c = a.scale(&self.nonzero_rational());
                        [a, b, c]
                    }
                    _ => {
                        let b = a.scale(&self.nonzero_rational());
                        let c = a.scale(&self.nonzero_rational());
                        [a, b, c]
                    }
                }
            }
            SampleMode::NearCollinear => {
                let d = self.vector();
                let mut out = [
                    d.scale(&self.nonzero_rational()),
                    d.scale(&self.nonzero_rational()),
                    d.scale(&self.nonzero_rational()),
                ];
                let tilted = self.rng.gen_range(1..=2usize);
                let first = self.rng.gen_range(0..3usize);
                for k in 0..tilted {
                    let exp = NEAR_COLLINEAR_EXPONENTS[self.rng.gen_range(0..3usize)];
                    let mut eps =
                        BigRational::new(BigInt::from(1), Pow::pow(BigInt::from(10u32), exp));
                    if self.rng.gen_bool(0.5) {
                        eps = -eps;
                    }
                    let j = (first + k) % 3;
                    // v + eps * rot90(v) turns v by atan(eps) and keeps it nonzero
                    let tilt = out[j].perp().scale(&eps);
                    out[j] = out[j].add(&tilt);
                }
                out
            }
            SampleMode::ExtremeMagnitude => {
                let mut out = [self.vector(), self.vector(), self.vector()];
                for v in out.iter_mut() {
                    *v = v.scale(&self.power_of_ten(EXTREME_EXPONENT));
                }
                out
            }
            SampleMode::ClosedTriple => loop {
                let a = self.vector();
                let b = self.vector();
                let c = a.add(&b).neg();
                if !c.is_zero() {
                    break [a, b, c];
                }
            },
        }
    }
}

/// The `index`-th triple of a campaign. Deterministic in `(seed, mode,
/// bounds, index)`; every vector is nonzero.
pub fn generate_triple(spec: &SampleSpec, index: u64) -> [RationalVec2; 3] {
    debug_assert!(index < spec.count);
    Sampler {
        spec,
        rng: spec.rng(index),
    }
    .triple()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub vectors: [RationalVec2; 3],
    /// `None` when a coordinate does not survive conversion to `f64`.
    pub float_sum: Option<f64>,
    pub exact: TripleAlternative,
    pub fragile: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Comparison {
    Agreement {
        exact: TripleAlternative,
        fragile: bool,
    },
    Disagreement(Box<Disagreement>),
}

impl Comparison {
    pub fn exact(&self) -> TripleAlternative {
        match self {
            Comparison::Agreement { exact, .. } => *exact,
            Comparison::Disagreement(d) => d.exact,
        }
    }

    pub fn fragile(&self) -> bool {
        match self {
            Comparison::Agreement { fragile, .. } => *fragile,
            Comparison::Disagreement(d) => d.fragile,
        }
    }
}

fn near_boundary(theta: f64) -> bool {
    theta < FRAGILE_BAND || (theta - PI).abs() < FRAGILE_BAND || TAU - theta < FRAGILE_BAND
}

/// Compare the exact predicate with `|turning_sum - 2*pi| <= tol` in `f64`.
pub fn compare_case(
    a: &RationalVec2,
    b: &RationalVec2,
    c: &RationalVec2,
    tol: f64,
) -> Result<Comparison, ExactError> {
    let classes = classify_pairs(a, b, c)?;
    let exact = alternative_of(&classes)?;
    let (fa, fb, fc) = (a.to_float(), b.to_float(), c.to_float());

    let float_sum = turning_sum(&fa, &fb, &fc).ok().map(|s| s.0);
    let float_boundary = [(&fa, &fb), (&fb, &fc), (&fc, &fa)]
        .iter()
        .any(|(u, v)| oriented_angle(u, v).map_or(true, |t| near_boundary(t.0)));
    let fragile = classes.iter().any(|k| k.is_boundary()) || float_boundary;

    let predicted = exact != TripleAlternative::Neither;
    let agrees = match float_sum {
        Some(s) => predicted == ((s - TAU).abs() <= tol),
        None => false,
    };
    Ok(if agrees {
        Comparison::Agreement { exact, fragile }
    } else {
        Comparison::Disagreement(Box::new(Disagreement {
            vectors: [a.clone(), b.clone(), c.clone()],
            float_sum,
            exact,
            fragile,
        }))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisagreementRecord {
    pub index: u64,
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: [RationalVec2; 3],
    pub float_sum: Option<f64>,
    pub exact: TripleAlternative,
    pub fragile: bool,
}

fn serialize_vectors<S: Serializer>(v: &[RationalVec2; 3], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<[String; 2]> = v.iter().map(RationalVec2::to_strings).collect();
    strings.serialize(s)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AlternativeTally {
    #[serde(rename = "AlternativeI")]
    pub alternative_i: u64,
    #[serde(rename = "AlternativeII")]
    pub alternative_ii: u64,
    #[serde(rename = "Neither")]
    pub neither: u64,
}

impl AlternativeTally {
    fn add(&mut self, alt: TripleAlternative) {
        match alt {
            TripleAlternative::AlternativeI => self.alternative_i += 1,
            TripleAlternative::AlternativeII => self.alternative_ii += 1,
            TripleAlternative::Neither => self.neither += 1,
        }
    }

    fn merge(&mut self, other: &AlternativeTally) {
        self.alternative_i += other.alternative_i;
        self.alternative_ii += other.alternative_ii;
        self.neither += other.neither;
    }
}

/// Outcome of a campaign.
///
/// Every sample lands in exactly one bucket: `agreements` (fragile or not),
/// `fragile_excluded` (fragile disagreements, listed in `fragile_cases`), or
/// `disagreements` (non-fragile, which fail the campaign).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub mode: SampleMode,
    pub seed: u64,
    pub tol: f64,
    pub total: u64,
    pub agreements: u64,
    pub fragile_excluded: u64,
    pub disagreements: Vec<DisagreementRecord>,
    pub fragile_cases: Vec<DisagreementRecord>,
    pub alternatives: AlternativeTally,
    /// Closed triples that failed the equal-cross identity or fell outside
    /// both alternatives. Always zero outside [`SampleMode::ClosedTriple`].
    pub closure_violations: u64,
    pub elapsed_ms: u64,
}

impl HarnessReport {
    fn empty(spec: &SampleSpec, tol: f64) -> Self {
        HarnessReport {
            mode: spec.mode,
            seed: spec.seed,
            tol,
            total: 0,
            agreements: 0,
            fragile_excluded: 0,
            disagreements: Vec::new(),
            fragile_cases: Vec::new(),
            alternatives: AlternativeTally::default(),
            closure_violations: 0,
            elapsed_ms: 0,
        }
    }

    fn merge(mut self, other: HarnessReport) -> Self {
        self.total += other.total;
        self.agreements += other.agreements;
        self.fragile_excluded += other.fragile_excluded;
        self.disagreements.extend(other.disagreements);
        self.fragile_cases.extend(other.fragile_cases);
        self.alternatives.merge(&other.alternatives);
        self.closure_violations += other.closure_violations;
        self
    }

    pub fn accounting_holds(&self) -> bool {
        self.total == self.agreements + self.fragile_excluded + self.disagreements.len() as u64
            && self.fragile_excluded == self.fragile_cases.len() as u64
    }

    /// No non-fragile disagreements and no closure violations.
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.closure_violations == 0
    }

    /// The same report with `elapsed_ms` cleared, for byte comparisons.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn run_range(
    spec: &SampleSpec,
    tol: f64,
    start: u64,
    end: u64,
) -> Result<HarnessReport, HarnessError> {
    let mut report = HarnessReport::empty(spec, tol);
    for index in start..end {
        let [a, b, c] = generate_triple(spec, index);
        let outcome = compare_case(&a, &b, &c, tol)
            .map_err(|source| HarnessError::Exact { index, source })?;
        report.total += 1;
        report.alternatives.add(outcome.exact());
        if spec.mode == SampleMode::ClosedTriple {
            let closed_ok = equal_cross_check(&a, &b, &c).unwrap_or(false);
            if !closed_ok || outcome.exact() == TripleAlternative::Neither {
                report.closure_violations += 1;
            }
        }
        match outcome {
            Comparison::Agreement { .. } => report.agreements += 1,
            Comparison::Disagreement(d) => {
                let d = *d;
                let record = DisagreementRecord {
                    index,
                    vectors: d.vectors,
                    float_sum: d.float_sum,
                    exact: d.exact,
                    fragile: d.fragile,
                };
                if d.fragile {
                    report.fragile_excluded += 1;
                    report.fragile_cases.push(record);
                } else {
                    report.disagreements.push(record);
                }
            }
        }
    }
    Ok(report)
}

/// Run a whole campaign, sharded over index ranges on the rayon pool.
/// Deterministic in `(spec, tol)` apart from `elapsed_ms`.
pub fn run_campaign(spec: &SampleSpec, tol: f64) -> Result<HarnessReport, HarnessError> {
    spec.validate()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(HarnessError::InvalidSpec(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    let started = Instant::now();
    let shards: Vec<(u64, u64)> = (0..spec.count.div_ceil(CHUNK))
        .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(spec.count)))
        .collect();
    let parts: Vec<HarnessReport> = shards
        .into_par_iter()
        .map(|(start, end)| run_range(spec, tol, start, end))
        .collect::<Result<_, _>>()?;
    let mut report = parts
        .into_iter()
        .fold(HarnessReport::empty(spec, tol), HarnessReport::merge);
    report.disagreements.sort_by_key(|d| d.index);
    report.fragile_cases.sort_by_key(|d| d.index);
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
