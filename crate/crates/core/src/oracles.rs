//! Numeric checks of the constants, lemmas and inequalities behind the
//! `Y_5` spanner bound `ρ = 2 + √3`.
//!
//! Nothing here re-derives the symbolic argument. Each statement is checked
//! by evaluating both sides directly: closed forms for the constants, random
//! instances for the two lemmas and the induction goal, and a grid sweep for
//! the `||wz||` bound. Randomized campaigns split their samples into fixed
//! chunks, each drawing from its own ChaCha stream, so results do not depend
//! on the thread count.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{angle_magnitude, ConeSystem, Point2};

/// Slack for the lemma and goal inequalities.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;
/// Slack for equality cases that compose several closed forms.
pub const EQUALITY_TOLERANCE: f64 = 1e-6;
/// Slack for the constant identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

const CHUNK: u64 = 1 << 14;

/// `λ(θ) = 1 / (1 − 2 sin(θ/2))`.
pub fn lambda_for(theta: f64) -> f64 {
    1.0 / (1.0 - 2.0 * (0.5 * theta).sin())
}

/// The constants of the `Y_5` argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpannerConstants {
    /// `2 + √3`
    pub rho: f64,
    /// `arccos(√3 − 1)`
    pub theta_bar: f64,
    /// `2 cos θ̄ − 1 = 2√3 − 3`, the bound on `||wz||`
    pub prop1_bound: f64,
    /// `2ρ² / (ρ² − 1)`
    pub c1: f64,
    /// `1 / sin(3π/5)`
    pub c2: f64,
}

impl SpannerConstants {
    pub fn new() -> Self {
        let sqrt3 = 3f64.sqrt();
        let rho = 2.0 + sqrt3;
        let theta_bar = (sqrt3 - 1.0).acos();
        Self {
            rho,
            theta_bar,
            prop1_bound: 2.0 * theta_bar.cos() - 1.0,
            c1: 2.0 * rho * rho / (rho * rho - 1.0),
            c2: 1.0 / (3.0 * PI / 5.0).sin(),
        }
    }
}

impl Default for SpannerConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// One named numeric check inside a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Identity: `|lhs − rhs|`. Inequality `lhs < rhs`: `rhs − lhs`.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Non-gating checks are reported but never count as violations.
    pub gating: bool,
}

impl Check {
    fn identity(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let value = (lhs - rhs).abs();
        Self {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            gating: true,
        }
    }

    fn less(name: &str, lhs: f64, rhs: f64) -> Self {
        let value = rhs - lhs;
        Self {
            name: name.into(),
            value,
            tolerance: 0.0,
            passed: value > 0.0,
            gating: true,
        }
    }

    fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

/// Outcome of one oracle run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    pub max_residual: f64,
    pub violations: u64,
    pub argmax_config: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
}

impl OracleReport {
    fn named(name: &str) -> Self {
        Self {
            name: name.into(),
            samples: None,
            resolution: None,
            max_residual: 0.0,
            violations: 0,
            argmax_config: BTreeMap::new(),
            checks: Vec::new(),
            counters: BTreeMap::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Evaluate every constant identity and bounding inequality.
pub fn verify_constants() -> OracleReport {
    let k = SpannerConstants::new();
    let sqrt3 = 3f64.sqrt();
    let (ct, st) = (k.theta_bar.cos(), k.theta_bar.sin());
    let three_pi_10 = 3.0 * PI / 10.0;
    let three_pi_5 = 3.0 * PI / 5.0;
    let tol = IDENTITY_TOLERANCE;

    let checks = vec![
        Check::identity("rho = 2 + sqrt(3)", k.rho, 2.0 + sqrt3, tol),
        Check::identity("rho = 1/(1 - cos theta_bar)", k.rho, 1.0 / (1.0 - ct), tol),
        Check::identity(
            "rho = 1/(1 - 2 sin(theta_bar/2))",
            k.rho,
            lambda_for(k.theta_bar),
            tol,
        ),
        Check::identity("cos theta_bar = 1 - 1/rho", ct, 1.0 - 1.0 / k.rho, tol),
        Check::identity(
            "2 cos theta_bar - 1 = 2 sqrt(3) - 3",
            k.prop1_bound,
            2.0 * sqrt3 - 3.0,
            tol,
        ),
        Check::identity(
            "1 + 1 + rho (2 cos theta_bar - 1) = rho",
            2.0 + k.rho * k.prop1_bound,
            k.rho,
            tol,
        ),
        Check::identity("theta_bar rounds to 0.75", k.theta_bar, 0.75, 5e-3),
        Check::less("pi/5 < theta_bar", PI / 5.0, k.theta_bar),
        Check::less("theta_bar < pi/3", k.theta_bar, PI / 3.0),
        Check::less("2.1 < c1", 2.1, k.c1),
        Check::less("c2 < 1.1", k.c2, 1.1),
        Check::less(
            "1 - sin theta_bar < 2 cos theta_bar - 1",
            1.0 - st,
            k.prop1_bound,
        ),
        Check::less(
            "0 < -c2 sin(3pi/10) + c1 cos(3pi/5 - theta_bar)",
            0.0,
            -k.c2 * three_pi_10.sin() + k.c1 * (three_pi_5 - k.theta_bar).cos(),
        ),
        Check::less(
            "0 < -c2 sin(3pi/5 - theta_bar) + c1 cos(3pi/10)",
            0.0,
            -k.c2 * (three_pi_5 - k.theta_bar).sin() + k.c1 * three_pi_10.cos(),
        ),
        // the same two bounds with c1, c2 rounded to 2.1 and 1.1
        Check::less(
            "0 < -1.1 sin(3pi/10) + 2.1 cos(3pi/5 - theta_bar)",
            0.0,
            -1.1 * three_pi_10.sin() + 2.1 * (three_pi_5 - k.theta_bar).cos(),
        )
        .informational(),
        Check::less(
            "0 < -1.1 sin(3pi/5 - theta_bar) + 2.1 cos(3pi/10)",
            0.0,
            -1.1 * (three_pi_5 - k.theta_bar).sin() + 2.1 * three_pi_10.cos(),
        )
        .informational(),
    ];

    let mut report = OracleReport::named("constants");
    report.max_residual = checks
        .iter()
        .filter(|c| c.gating && c.tolerance == IDENTITY_TOLERANCE)
        .map(|c| c.value)
        .fold(0.0, f64::max);
    report.violations = checks.iter().filter(|c| c.gating && !c.passed).count() as u64;
    for (name, v) in [
        ("rho", k.rho),
        ("theta_bar", k.theta_bar),
        ("prop1_bound", k.prop1_bound),
        ("c1", k.c1),
        ("c2", k.c2),
    ] {
        report.metrics.insert(name.into(), v);
    }
    report.checks = checks;
    report
}

/// Both sides of an inequality `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`; positive values are excess.
    pub residual: f64,
}

impl InequalityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            holds: lhs <= rhs + INEQUALITY_TOLERANCE,
            lhs,
            rhs,
            residual: lhs - rhs,
        }
    }
}

/// Points `a, b, c` with `||ac|| ≤ ||ab||` and `|∠bac| = θ ∈ (0, π/3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Instance {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub theta: f64,
    pub lambda: f64,
}

impl Lemma1Instance {
    pub fn new(a: Point2, b: Point2, c: Point2, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI / 3.0) {
            return Err(Error::Precondition(format!(
                "lemma 1 needs theta in (0, pi/3), got {theta}"
            )));
        }
        if a == b || a == c || b == c {
            return Err(Error::Precondition("lemma 1 needs distinct points".into()));
        }
        let (ab, ac) = (a.distance(&b), a.distance(&c));
        if ac > ab * (1.0 + 1e-12) {
            return Err(Error::Precondition(format!(
                "lemma 1 needs ||ac|| <= ||ab||, got {ac} > {ab}"
            )));
        }
        let angle = angle_magnitude(b, a, c)?;
        if (angle - theta).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "theta {theta} disagrees with the angle bac = {angle}"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            theta,
            lambda: lambda_for(theta),
        })
    }

    pub fn from_points(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        let theta = angle_magnitude(b, a, c)?;
        Self::new(a, b, c, theta)
    }
}

/// `||ac|| + λ||bc|| ≤ λ||ab||`.
pub fn check_lemma1(inst: &Lemma1Instance) -> InequalityCheck {
    let Lemma1Instance {
        a, b, c, lambda, ..
    } = *inst;
    InequalityCheck::new(
        a.distance(&c) + lambda * b.distance(&c),
        lambda * a.distance(&b),
    )
}

/// `|t(θ) − λ(θ)|` between the radical form
/// `t = (1 + √(2 − 2cos θ)) / (2 cos θ − 1)` and the sine form of `λ`.
pub fn check_lemma1_identity(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI / 3.0) {
        return Err(Error::Precondition(format!(
            "identity needs theta in (0, pi/3), got {theta}"
        )));
    }
    let c = theta.cos();
    let t = (1.0 + (2.0 - 2.0 * c).sqrt()) / (2.0 * c - 1.0);
    Ok((t - lambda_for(theta)).abs())
}

/// Grid sweep of [`check_lemma1_identity`] over `points` values of θ in
/// `[0.001, π/3 − 0.001]`.
pub fn sweep_lemma1_identity(points: usize) -> OracleReport {
    let (lo, hi) = (0.001, PI / 3.0 - 0.001);
    let steps = points.max(2) - 1;
    let mut report = OracleReport::named("lemma1-identity");
    report.resolution = Some(points.max(2));
    let mut worst = (0.0, lo);
    for i in 0..=steps {
        let theta = lo + (hi - lo) * i as f64 / steps as f64;
        let r = check_lemma1_identity(theta).expect("grid stays inside (0, pi/3)");
        if r > worst.0 {
            worst = (r, theta);
        }
        if r > INEQUALITY_TOLERANCE {
            report.violations += 1;
        }
    }
    report.max_residual = worst.0;
    report.argmax_config.insert("theta".into(), worst.1);
    report
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Run `per_sample` on `samples` draws, chunked across threads. Results come
/// back in sample order.
fn campaign<T, F>(samples: u64, seed: u64, per_sample: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = chunk_rng(seed, c);
            let start = c * CHUNK;
            let end = (start + CHUNK).min(samples);
            (start..end)
                .map(|i| per_sample(&mut rng, i))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Random Lemma 1 instances: `||ab|| ∈ [0.5, 2]`, θ in
/// `(0.01, π/3 − 0.01)`, `||ac|| / ||ab|| ∈ (0, 1]`, random frame.
/// Equality holds at `||ac|| = ||ab||`.
pub fn fuzz_lemma1(samples: u64, seed: u64) -> OracleReport {
    let results = campaign(samples, seed, |rng, i| {
        let ab = rng.random_range(0.5..2.0);
        let theta = rng.random_range(0.01..PI / 3.0 - 0.01);
        // ||ac|| = ||ab|| is the tight case; pin a tenth of the samples there
        let ratio = if rng.random_bool(0.1) {
            1.0
        } else {
            1.0 - rng.random::<f64>()
        };
        let frame = rng.random_range(0.0..TAU);
        let side = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let a = Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let b = a.polar_offset(ab, frame);
        let c = a.polar_offset(ratio * ab, frame + side * theta);
        let inst = Lemma1Instance::new(a, b, c, theta).expect("sampled inside the preconditions");
        (i, theta, ratio, check_lemma1(&inst))
    });
    let mut report = OracleReport::named("lemma1");
    report.samples = Some(samples);
    report.max_residual = f64::NEG_INFINITY;
    for (i, theta, ratio, chk) in results {
        if !chk.holds {
            report.violations += 1;
        }
        if chk.residual > report.max_residual {
            report.max_residual = chk.residual;
            report.argmax_config = BTreeMap::from([
                ("sample".into(), i as f64),
                ("theta".into(), theta),
                ("ac_over_ab".into(), ratio),
            ]);
        }
    }
    report
}

/// Points `a, b, c` and `d ∈ ac` with `cos θ > 1/λ`, `||bc|| < ||ab||` and
/// `||ac||/||ab|| = (2λ² cos θ − 2λ)/(λ² − 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma2Instance {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub theta: f64,
    pub lambda: f64,
    pub d: Point2,
    /// Position of `d` on `ac`: `d = a + s (c − a)`.
    pub s: f64,
}

/// `(2λ² cos θ − 2λ) / (λ² − 1)`.
pub fn lemma2_ratio(theta: f64, lambda: f64) -> f64 {
    (2.0 * lambda * lambda * theta.cos() - 2.0 * lambda) / (lambda * lambda - 1.0)
}

impl Lemma2Instance {
    /// Canonical frame: `a` at the origin, `b` on the +x axis at `ab_len`,
    /// `c` at angle θ above it, `d = a + s (c − a)`.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn canonical(ab_len: f64, theta: f64, lambda: f64, s: f64) -> Result<Self> {
        Self::check_params(theta, lambda)?;
        if !(ab_len > 0.0 && ab_len.is_finite()) {
            return Err(Error::Precondition(format!(
                "||ab|| must be positive, got {ab_len}"
            )));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Precondition(format!(
                "s must lie in [0, 1], got {s}"
            )));
        }
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(ab_len, 0.0);
        let c = a.polar_offset(ab_len * lemma2_ratio(theta, lambda), theta);
        let inst = Self {
            a,
            b,
            c,
            theta,
            lambda,
            d: a.lerp(&c, s),
            s,
        };
        if !(b.distance(&c) < ab_len) {
            return Err(Error::Precondition("lemma 2 needs ||bc|| < ||ab||".into()));
        }
        Ok(inst)
    }

    /// Instance from explicit points; θ is measured from them.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(a: Point2, b: Point2, c: Point2, lambda: f64, d: Point2) -> Result<Self> {
        let theta = angle_magnitude(b, a, c)?;
        Self::check_params(theta, lambda)?;
        let ab = a.distance(&b);
        let ac = a.distance(&c);
        if !(b.distance(&c) < ab) {
            return Err(Error::Precondition("lemma 2 needs ||bc|| < ||ab||".into()));
        }
        let expected = lemma2_ratio(theta, lambda);
        if (ac / ab - expected).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "||ac||/||ab|| = {} but the lemma fixes it at {expected}",
                ac / ab
            )));
        }
        let (ex, ey) = (c.x - a.x, c.y - a.y);
        let (dx, dy) = (d.x - a.x, d.y - a.y);
        let s = (dx * ex + dy * ey) / (ex * ex + ey * ey);
        let off_line = (dx * ey - dy * ex).abs() / ac;
        if !(-1e-12..=1.0 + 1e-12).contains(&s) || off_line > 1e-9 * ab.max(1.0) {
            return Err(Error::Precondition("d must lie on the segment ac".into()));
        }
        Ok(Self {
            a,
            b,
            c,
            theta,
            lambda,
            d,
            s: s.clamp(0.0, 1.0),
        })
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn check_params(theta: f64, lambda: f64) -> Result<()> {
        if !(lambda > 1.0 && lambda.is_finite()) {
            return Err(Error::Precondition(format!(
                "lemma 2 needs lambda > 1, got {lambda}"
            )));
        }
        if !(theta.cos() > 1.0 / lambda) {
            return Err(Error::Precondition(format!(
                "lemma 2 needs cos theta > 1/lambda (theta = {theta}, lambda = {lambda})"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma2Check {
    /// `||ad|| + λ||bd|| ≤ λ||ab||`
    pub inequality: InequalityCheck,
    /// `| ||ac|| + λ||bc|| − λ||ab|| |`, zero in exact arithmetic.
    pub endpoint_residual: f64,
}

impl Lemma2Check {
    pub fn holds(&self) -> bool {
        self.inequality.holds && self.endpoint_residual <= EQUALITY_TOLERANCE
    }
}

pub fn check_lemma2(inst: &Lemma2Instance) -> Lemma2Check {
    let Lemma2Instance {
        a, b, c, lambda, d, ..
    } = *inst;
    let rhs = lambda * a.distance(&b);
    Lemma2Check {
        inequality: InequalityCheck::new(a.distance(&d) + lambda * b.distance(&d), rhs),
        endpoint_residual: (a.distance(&c) + lambda * b.distance(&c) - rhs).abs(),
    }
}

/// Random Lemma 2 instances: `λ ∈ (1.05, 6)`, θ uniform with `cos θ > 1/λ`,
/// `s ∈ [0, 1]`, `||ab|| ∈ [0.5, 2]`.
pub fn fuzz_lemma2(samples: u64, seed: u64) -> OracleReport {
    let results = campaign(samples, seed, |rng, i| {
        let lambda: f64 = rng.random_range(1.05..6.0);
        let theta_max = (1.0 / lambda).acos();
        let theta = loop {
            let t: f64 = rng.random_range(0.0..theta_max);
            if t.cos() > 1.0 / lambda {
                break t;
            }
        };
        let s = rng.random_range(0.0..=1.0);
        let ab = rng.random_range(0.5..2.0);
        let inst = Lemma2Instance::canonical(ab, theta, lambda, s)
            .expect("sampled inside the preconditions");
        (i, lambda, theta, s, check_lemma2(&inst))
    });
    let mut report = OracleReport::named("lemma2");
    report.samples = Some(samples);
    report.max_residual = f64::NEG_INFINITY;
    let mut endpoint_violations = 0u64;
    let mut max_endpoint = 0.0f64;
    for (i, lambda, theta, s, chk) in results {
        if !chk.inequality.holds {
            report.violations += 1;
        }
        if chk.endpoint_residual > EQUALITY_TOLERANCE {
            endpoint_violations += 1;
            report.violations += 1;
        }
        max_endpoint = max_endpoint.max(chk.endpoint_residual);
        if chk.inequality.residual > report.max_residual {
            report.max_residual = chk.inequality.residual;
            report.argmax_config = BTreeMap::from([
                ("sample".into(), i as f64),
                ("lambda".into(), lambda),
                ("theta".into(), theta),
                ("s".into(), s),
            ]);
        }
    }
    report
        .counters
        .insert("endpoint_violations".into(), endpoint_violations);
    report
        .metrics
        .insert("max_endpoint_residual".into(), max_endpoint);
    report
}

/// The fan `F_i^p(q)`: points of cone `i` at `apex` within `radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fan {
    pub apex: Point2,
    pub cone: usize,
    pub radius: f64,
    pub cones: ConeSystem,
}

impl Fan {
    pub fn new(apex: Point2, cone: usize, radius: f64, cones: ConeSystem) -> Result<Self> {
        if !(1..=cones.k()).contains(&cone) {
            return Err(Error::Precondition(format!(
                "cone {cone} outside 1..={}",
                cones.k()
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Precondition(format!(
                "fan radius must be positive, got {radius}"
            )));
        }
        Ok(Self {
            apex,
            cone,
            radius,
            cones,
        })
    }

    /// The fan of the cone of `apex` holding `through`, with radius
    /// `||apex through||`.
    pub fn through(apex: Point2, through: Point2, cones: ConeSystem) -> Result<Self> {
        let cone = cones.cone_index(apex, through)?;
        Self::new(apex, cone, apex.distance(&through), cones)
    }

    pub fn contains(&self, p: Point2) -> bool {
        fan_contains(self, p)
    }

    /// Uniform point of the fan (area measure).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Point2 {
        let r = self.radius * rng.random::<f64>().sqrt();
        let angle = self.cones.start_ray(self.cone) + rng.random::<f64>() * self.cones.cone_angle();
        self.apex.polar_offset(r, angle)
    }
}

/// Membership in a fan. The apex itself counts as inside.
pub fn fan_contains(f: &Fan, p: Point2) -> bool {
    if p == f.apex {
        return true;
    }
    f.apex.distance(&p) <= f.radius && f.cones.cone_index(f.apex, p).ok() == Some(f.cone)
}

/// One configuration of the induction step, normalised to `||uv|| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InductionScenario {
    pub u: Point2,
    pub v: Point2,
    pub w: Point2,
    pub z: Point2,
    /// `|∠vuw|`
    pub alpha: f64,
    /// `|∠zvu|`
    pub beta: f64,
    /// `||uw|| + ρ||vw||`
    pub g1: f64,
    /// `||vz|| + ρ||uz||`
    pub g2: f64,
    /// `||uw|| + ||vz|| + ρ||zw||`
    pub g3: f64,
}

impl InductionScenario {
    pub fn new(u: Point2, v: Point2, w: Point2, z: Point2, rho: f64) -> Self {
        let alpha = angle_magnitude(v, u, w).unwrap_or(0.0);
        let beta = angle_magnitude(z, v, u).unwrap_or(0.0);
        Self {
            u,
            v,
            w,
            z,
            alpha,
            beta,
            g1: u.distance(&w) + rho * v.distance(&w),
            g2: v.distance(&z) + rho * u.distance(&z),
            g3: u.distance(&w) + v.distance(&z) + rho * z.distance(&w),
        }
    }

    pub fn min_g(&self) -> f64 {
        self.g1.min(self.g2).min(self.g3)
    }
}

/// Result of the induction-goal campaign.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InductionReport {
    pub samples: u64,
    /// Samples with `min(g1, g2, g3) > ρ + tol`.
    pub violations: u64,
    /// Samples with `α ≤ θ̄` (resp. `β ≤ θ̄`) where `g1` (resp. `g2`) alone
    /// exceeds `ρ`.
    pub angle_branch_samples: u64,
    pub angle_branch_violations: u64,
    /// Samples with `g1 > ρ` and `g2 > ρ`.
    pub closure_samples: u64,
    /// Closure samples with `||wz|| > 2√3 − 3 + tol`.
    pub closure_violations: u64,
    /// Largest `min(g1, g2, g3) − ρ`.
    pub max_excess: f64,
    pub worst: Option<InductionScenario>,
    /// Largest `||wz||` over closure samples.
    pub max_closure_wz: f64,
}

impl InductionReport {
    pub fn to_report(&self) -> OracleReport {
        let mut r = OracleReport::named("induction");
        r.samples = Some(self.samples);
        r.max_residual = self.max_excess;
        r.violations = self.violations + self.angle_branch_violations + self.closure_violations;
        if let Some(w) = &self.worst {
            r.argmax_config = BTreeMap::from([
                ("v_x".into(), w.v.x),
                ("v_y".into(), w.v.y),
                ("w_x".into(), w.w.x),
                ("w_y".into(), w.w.y),
                ("z_x".into(), w.z.x),
                ("z_y".into(), w.z.y),
                ("alpha".into(), w.alpha),
                ("beta".into(), w.beta),
            ]);
        }
        r.counters = BTreeMap::from([
            ("goal_violations".into(), self.violations),
            ("angle_branch_samples".into(), self.angle_branch_samples),
            (
                "angle_branch_violations".into(),
                self.angle_branch_violations,
            ),
            ("closure_samples".into(), self.closure_samples),
            ("closure_violations".into(), self.closure_violations),
        ]);
        r.metrics
            .insert("max_closure_wz".into(), self.max_closure_wz);
        r
    }
}

/// Sample `u = (0,0)`, `v` on the unit circle in cone 1 of `u` on or below
/// its bisector, `w` uniform in `F_1^u(v)` and `z` uniform in `F_3^v(u)`, and
/// check `min(g1, g2, g3) ≤ ρ||uv||` on each sample.
pub fn verify_induction_goal(seed: u64, n_samples: u64) -> InductionReport {
    let k = SpannerConstants::new();
    let cones = ConeSystem::new(5).expect("k = 5");
    let u = Point2::new(0.0, 0.0);
    let results = campaign(n_samples, seed, |rng, i| {
        let v = u.polar_offset(1.0, rng.random_range(0.0..=PI / 5.0));
        let fan_w = Fan::new(u, 1, 1.0, cones).expect("valid fan");
        let fan_z = Fan::new(v, 3, 1.0, cones).expect("valid fan");
        let w = fan_w.sample(rng);
        let z = fan_z.sample(rng);
        (i, InductionScenario::new(u, v, w, z, k.rho))
    });

    let tol = INEQUALITY_TOLERANCE;
    let mut rep = InductionReport {
        samples: n_samples,
        violations: 0,
        angle_branch_samples: 0,
        angle_branch_violations: 0,
        closure_samples: 0,
        closure_violations: 0,
        max_excess: f64::NEG_INFINITY,
        worst: None,
        max_closure_wz: 0.0,
    };
    for (_, s) in results {
        let excess = s.min_g() - k.rho;
        if excess > tol {
            rep.violations += 1;
        }
        if excess > rep.max_excess {
            rep.max_excess = excess;
            rep.worst = Some(s);
        }
        for (angle, g) in [(s.alpha, s.g1), (s.beta, s.g2)] {
            if angle <= k.theta_bar {
                rep.angle_branch_samples += 1;
                if g > k.rho + tol {
                    rep.angle_branch_violations += 1;
                }
            }
        }
        if s.g1 > k.rho && s.g2 > k.rho {
            rep.closure_samples += 1;
            let wz = s.w.distance(&s.z);
            rep.max_closure_wz = rep.max_closure_wz.max(wz);
            if wz > k.prop1_bound + tol {
                rep.closure_violations += 1;
            }
        }
    }
    rep
}

/// Start of the admissible segment on a ray at angle `angle` from `u`:
/// `(2ρ² cos α − 2ρ)/(ρ² − 1)`, clamped at 0.
pub fn segment_start_len(angle: f64, rho: f64) -> f64 {
    lemma2_ratio(angle, rho).max(0.0)
}

/// Which pair of segment endpoints realises `||wz||`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndpointPair {
    /// `w' z'`
    NearNear,
    /// `w' z''`
    NearFar,
    /// `w'' z'`
    FarNear,
    /// `w'' z''`
    FarFar,
}

impl EndpointPair {
    pub fn label(&self) -> &'static str {
        match self {
            EndpointPair::NearNear => "w'z'",
            EndpointPair::NearFar => "w'z''",
            EndpointPair::FarNear => "w''z'",
            EndpointPair::FarFar => "w''z''",
        }
    }
}

/// The segments `w'w''` on ray `uw` and `z'z''` on ray `vz` for given angles,
/// with `u = (0,0)`, `v = (1,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prop1Scenario {
    pub alpha: f64,
    pub beta: f64,
    pub w_prime_len: f64,
    pub w_dprime_len: f64,
    pub z_prime_len: f64,
    pub z_dprime_len: f64,
    pub w_prime: Point2,
    pub w_dprime: Point2,
    pub z_prime: Point2,
    pub z_dprime: Point2,
    /// `||ut|| = sin β / sin(α + β)`
    pub ut_len: f64,
    /// `||vt|| = sin α / sin(α + β)`
    pub vt_len: f64,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
}

impl Prop1Scenario {
    pub fn new(alpha: f64, beta: f64) -> Self {
        let rho = SpannerConstants::new().rho;
        let u = Point2::new(0.0, 0.0);
        let v = Point2::new(1.0, 0.0);
        let w_prime_len = segment_start_len(alpha, rho);
        let z_prime_len = segment_start_len(beta, rho);
        let z_dir = PI - beta;
        let sum = (alpha + beta).sin();
        let ut_len = beta.sin() / sum;
        let vt_len = alpha.sin() / sum;
        Self {
            alpha,
            beta,
            w_prime_len,
            w_dprime_len: 1.0,
            z_prime_len,
            z_dprime_len: 1.0,
            w_prime: u.polar_offset(w_prime_len, alpha),
            w_dprime: u.polar_offset(1.0, alpha),
            z_prime: v.polar_offset(z_prime_len, z_dir),
            z_dprime: v.polar_offset(1.0, z_dir),
            ut_len,
            vt_len,
            x1: ut_len - w_prime_len,
            x2: 1.0 - ut_len,
            y1: vt_len - z_prime_len,
            y2: 1.0 - vt_len,
        }
    }

    pub fn endpoint_distances(&self) -> [(EndpointPair, f64); 4] {
        [
            (EndpointPair::NearNear, self.w_prime.distance(&self.z_prime)),
            (EndpointPair::NearFar, self.w_prime.distance(&self.z_dprime)),
            (EndpointPair::FarNear, self.w_dprime.distance(&self.z_prime)),
            (EndpointPair::FarFar, self.w_dprime.distance(&self.z_dprime)),
        ]
    }

    /// `max(||w'z'||, ||w'z''||, ||w''z'||, ||w''z''||)`, which bounds `||wz||`
    /// for every `w ∈ w'w''`, `z ∈ z'z''`.
    pub fn max_wz(&self) -> (EndpointPair, f64) {
        self.endpoint_distances().into_iter().fold(
            (EndpointPair::NearNear, f64::NEG_INFINITY),
            |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            },
        )
    }
}

/// Result of the `||wz||` grid sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop1Sweep {
    pub resolution: usize,
    pub cells: u64,
    pub max_wz: f64,
    pub bound: f64,
    pub argmax_alpha: f64,
    pub argmax_beta: f64,
    pub argmax_cell: (usize, usize),
    pub argmax_endpoints: EndpointPair,
    pub violations: u64,
}

impl Prop1Sweep {
    pub fn to_report(&self) -> OracleReport {
        let mut r = OracleReport::named("prop1");
        r.resolution = Some(self.resolution);
        r.max_residual = self.max_wz - self.bound;
        r.violations = self.violations;
        r.argmax_config = BTreeMap::from([
            ("alpha".into(), self.argmax_alpha),
            ("beta".into(), self.argmax_beta),
            ("alpha_cell".into(), self.argmax_cell.0 as f64),
            ("beta_cell".into(), self.argmax_cell.1 as f64),
        ]);
        r.counters.insert("cells".into(), self.cells);
        r.metrics.insert("max_wz".into(), self.max_wz);
        r.metrics.insert("bound".into(), self.bound);
        r
    }
}

/// Grid `(α, β) ∈ [θ̄, 3π/5 − θ̄]²` restricted to `α + β ≤ 3π/5`, with
/// `resolution` steps per axis. Each cell records the four-endpoint maximum
/// of `||wz||`.
pub fn sweep_prop1(resolution: usize) -> Prop1Sweep {
    let k = SpannerConstants::new();
    let res = resolution.max(2);
    let lo = k.theta_bar;
    let hi = 3.0 * PI / 5.0 - k.theta_bar;
    let limit = 3.0 * PI / 5.0;
    let step = (hi - lo) / res as f64;
    let at = |i: usize| if i == res { hi } else { lo + step * i as f64 };

    type Cell = (f64, usize, usize, EndpointPair);
    let better = |a: Cell, b: Cell| -> Cell {
        if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
            b
        } else {
            a
        }
    };
    let rows: Vec<(Option<Cell>, u64, u64)> = (0..=res)
        .into_par_iter()
        .map(|i| {
            let alpha = at(i);
            let mut best: Option<Cell> = None;
            let (mut cells, mut bad) = (0u64, 0u64);
            for j in 0..=res {
                let beta = at(j);
                if alpha + beta > limit + 1e-12 {
                    break;
                }
                let (pair, wz) = Prop1Scenario::new(alpha, beta).max_wz();
                cells += 1;
                if wz > k.prop1_bound + INEQUALITY_TOLERANCE {
                    bad += 1;
                }
                let cell = (wz, i, j, pair);
                best = Some(best.map_or(cell, |b| better(b, cell)));
            }
            (best, cells, bad)
        })
        .collect();

    let mut best: Option<Cell> = None;
    let (mut cells, mut violations) = (0, 0);
    for (b, c, v) in rows {
        cells += c;
        violations += v;
        if let Some(b) = b {
            best = Some(best.map_or(b, |cur| better(cur, b)));
        }
    }
    let (max_wz, i, j, pair) = best.expect("grid has at least one cell");
    Prop1Sweep {
        resolution: res,
        cells,
        max_wz,
        bound: k.prop1_bound,
        argmax_alpha: at(i),
        argmax_beta: at(j),
        argmax_cell: (i, j),
        argmax_endpoints: pair,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_closed_forms() {
        let k = SpannerConstants::new();
        assert!((k.rho - 3.732050808).abs() < 1e-9);
        assert!((k.prop1_bound - 0.464101615).abs() < 1e-9);
        assert!((k.c1 - 2.1547).abs() < 1e-4);
        assert!((k.c2 - 1.05146).abs() < 1e-5);
        assert!((k.theta_bar - 0.749_468_865_417_480_3).abs() < 1e-15);
    }

    #[test]
    fn constants_report_passes_and_flags_rounded_bound() {
        let r = verify_constants();
        assert!(r.passed(), "{r:#?}");
        assert!(r.max_residual <= IDENTITY_TOLERANCE);
        let rounded = r
            .checks
            .iter()
            .find(|c| c.name.starts_with("0 < -1.1 sin(3pi/10)"))
            .unwrap();
        // the rounded constants are too coarse for this bound
        assert!(!rounded.passed && !rounded.gating);
        assert!((rounded.value + 0.004367).abs() < 1e-5);
    }

    #[test]
    fn lemma1_worked_example() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(1.0, 0.0);
        let c = a.polar_offset(0.8, 0.5);
        let inst = Lemma1Instance::new(a, b, c, 0.5).unwrap();
        let chk = check_lemma1(&inst);
        assert!(chk.holds);
        assert!((chk.lhs - 1.7613).abs() < 1e-3, "{}", chk.lhs);
        assert!((inst.lambda - 1.9794).abs() < 1e-3);
    }

    #[test]
    fn lemma1_c_near_b() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 0.0);
        let c = a.polar_offset(2.0, 1e-6);
        let chk = check_lemma1(&Lemma1Instance::from_points(a, b, c).unwrap());
        assert!(chk.holds);
        assert!((chk.lhs - 2.0).abs() < 1e-5);
    }

    #[test]
    fn lemma1_preconditions() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(1.0, 0.0);
        assert!(Lemma1Instance::from_points(a, b, a.polar_offset(1.5, 0.2)).is_err());
        assert!(Lemma1Instance::from_points(a, b, a.polar_offset(0.5, 1.2)).is_err());
        assert!(Lemma1Instance::new(a, b, a.polar_offset(0.5, 0.2), 0.3).is_err());
    }

    #[test]
    fn lemma1_identity_examples() {
        assert!(check_lemma1_identity(PI / 6.0).unwrap() <= 1e-10);
        let c = 1e-8f64.cos();
        let t = (1.0 + (2.0 - 2.0 * c).sqrt()) / (2.0 * c - 1.0);
        assert!((t - 1.0).abs() < 1e-6 && (lambda_for(1e-8) - 1.0).abs() < 1e-6);
        assert!(check_lemma1_identity(0.0).is_err());
        assert!(check_lemma1_identity(PI / 3.0).is_err());
    }

    #[test]
    fn lemma2_worked_example() {
        let rho = SpannerConstants::new().rho;
        let inst = Lemma2Instance::canonical(1.0, 0.6, rho, 1.0).unwrap();
        assert!((inst.a.distance(&inst.c) - 1.2011).abs() < 1e-4);
        let chk = check_lemma2(&inst);
        assert!(chk.holds());
        assert!(chk.endpoint_residual < 1e-6);
    }

    #[test]
    fn lemma2_d_at_a_is_equality() {
        let inst = Lemma2Instance::canonical(1.5, 0.3, 2.5, 0.0).unwrap();
        let chk = check_lemma2(&inst);
        assert_eq!(chk.inequality.lhs, chk.inequality.rhs);
    }

    #[test]
    fn lemma2_from_points_roundtrip() {
        let c = Lemma2Instance::canonical(1.0, 0.4, 3.0, 0.5).unwrap();
        let p = Lemma2Instance::new(c.a, c.b, c.c, c.lambda, c.d).unwrap();
        assert!((p.theta - 0.4).abs() < 1e-12);
        assert!((p.s - 0.5).abs() < 1e-12);
        let off = Point2::new(c.d.x, c.d.y + 0.1);
        assert!(Lemma2Instance::new(c.a, c.b, c.c, c.lambda, off).is_err());
    }

    #[test]
    fn lemma2_preconditions() {
        assert!(Lemma2Instance::canonical(1.0, 1.4, 2.0, 0.5).is_err());
        assert!(Lemma2Instance::canonical(1.0, 0.2, 1.0, 0.5).is_err());
        assert!(Lemma2Instance::canonical(1.0, 0.2, 2.0, 1.5).is_err());
    }

    #[test]
    fn fan_membership() {
        let cones = ConeSystem::new(5).unwrap();
        let o = Point2::new(0.0, 0.0);
        let fan = Fan::new(o, 1, 1.0, cones).unwrap();
        assert!(fan.contains(Point2::new(0.5, 0.1)));
        assert!(!fan.contains(o.polar_offset(1.0001, 0.3)));
        assert!(!fan.contains(Point2::new(-0.5, 0.1)));
        assert!(fan.contains(o));
        assert!(Fan::new(o, 6, 1.0, cones).is_err());
        assert!(Fan::new(o, 1, 0.0, cones).is_err());
    }

    #[test]
    fn fan_of_v_contains_u() {
        let cones = ConeSystem::new(5).unwrap();
        let u = Point2::new(0.0, 0.0);
        let v = Point2::new(252.0, 82.0);
        let fan = Fan::through(v, u, cones).unwrap();
        assert_eq!(fan.cone, 3);
        assert!(fan_contains(&fan, u));
    }

    #[test]
    fn fan_samples_stay_inside() {
        let cones = ConeSystem::new(5).unwrap();
        let fan = Fan::new(Point2::new(1.0, 0.0), 3, 1.0, cones).unwrap();
        let mut rng = chunk_rng(7, 0);
        for _ in 0..10_000 {
            let p = fan.sample(&mut rng);
            assert!(fan.contains(p), "{p:?}");
        }
    }

    #[test]
    fn induction_trivial_configuration() {
        let rho = SpannerConstants::new().rho;
        let u = Point2::new(0.0, 0.0);
        let v = u.polar_offset(1.0, 0.3);
        let s = InductionScenario::new(u, v, v, u, rho);
        assert!((s.g1 - 1.0).abs() < 1e-15);
        assert!(s.min_g() <= rho);
    }

    #[test]
    fn extremal_prop1_configuration() {
        let k = SpannerConstants::new();
        let s = Prop1Scenario::new(k.theta_bar, k.theta_bar);
        let d = s.w_dprime.distance(&s.z_dprime);
        assert!((d - k.prop1_bound).abs() < 1e-9);
        // at β = θ̄ the lemma 2 point lands on the arc: ||vz'|| = 1
        assert!((s.z_prime_len - 1.0).abs() < 1e-12);
        let (pair, m) = s.max_wz();
        assert_eq!(pair, EndpointPair::FarFar);
        assert!((m - k.prop1_bound).abs() < 1e-9);
    }

    #[test]
    fn prop1_boundary_cell() {
        let k = SpannerConstants::new();
        let alpha = 3.0 * PI / 5.0 - k.theta_bar;
        let s = Prop1Scenario::new(alpha, k.theta_bar + 1e-9);
        assert!(s.max_wz().1 <= k.prop1_bound + INEQUALITY_TOLERANCE);
        // outside the admissible region (α + β > 3π/5) the bound does not hold
        let outside = Prop1Scenario::new(2.0 * PI / 5.0, k.theta_bar + 1e-9);
        assert!(outside.max_wz().1 > k.prop1_bound);
    }

    #[test]
    fn prop1_t_lengths_follow_law_of_sines() {
        let s = Prop1Scenario::new(0.9, 0.8);
        let t = Point2::new(0.0, 0.0).polar_offset(s.ut_len, 0.9);
        let from_v = Point2::new(1.0, 0.0).polar_offset(s.vt_len, PI - 0.8);
        assert!(t.distance(&from_v) < 1e-12);
        // triangle bounds through t
        assert!(s.w_prime.distance(&s.z_prime) <= s.x1.abs() + s.y1.abs() + 1e-12);
        assert!(s.w_dprime.distance(&s.z_dprime) <= s.x2.abs() + s.y2.abs() + 1e-12);
    }

    #[test]
    fn small_sweep_is_bounded() {
        let s = sweep_prop1(40);
        assert_eq!(s.violations, 0);
        assert_eq!(s.argmax_cell, (0, 0));
        assert!(s.max_wz <= s.bound + INEQUALITY_TOLERANCE);
    }

    #[test]
    fn campaigns_are_reproducible() {
        let a = fuzz_lemma1(3000, 9);
        let b = fuzz_lemma1(3000, 9);
        assert_eq!(a, b);
        let c = verify_induction_goal(5, 5000);
        let d = verify_induction_goal(5, 5000);
        assert_eq!(c, d);
    }

    #[test]
    fn small_campaigns_pass() {
        assert!(fuzz_lemma1(20_000, 1).passed());
        assert!(fuzz_lemma2(20_000, 2).passed());
        let ind = verify_induction_goal(3, 20_000);
        assert_eq!(ind.violations, 0);
        assert_eq!(ind.angle_branch_violations, 0);
        assert_eq!(ind.closure_violations, 0);
        assert!(ind.angle_branch_samples > 0 && ind.closure_samples > 0);
    }
}
