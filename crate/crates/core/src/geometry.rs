//! Planar primitives: points, distances, oriented angles, the cone system and
//! the distance order on point pairs.
//!
//! All angles are radians. Direction angles come from `atan2` and are reduced
//! into `[0, 2π)`; cone boundaries are never snapped, so a direction that is
//! within rounding of a boundary may land on either side of it.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the input set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Point at `radius` from `self` in direction `angle`.
    pub fn polar_offset(self, radius: f64, angle: f64) -> Self {
        Self::new(self.x + radius * angle.cos(), self.y + radius * angle.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Direction of `other - self` in `[0, 2π)`.
    pub fn direction_to(&self, other: &Point2) -> Result<f64> {
        let (dx, dy) = (other.x - self.x, other.y - self.y);
        if dx == 0.0 && dy == 0.0 {
            return Err(Error::DegenerateDirection(
                (self.x, self.y),
                (other.x, other.y),
            ));
        }
        Ok(normalize_angle(dy.atan2(dx)))
    }

    /// Linear interpolation: `t = 0` gives `self`, `t = 1` gives `other`.
    pub fn lerp(&self, other: &Point2, t: f64) -> Point2 {
        Point2::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

/// Euclidean distance `||ab||`.
pub fn distance(a: Point2, b: Point2) -> f64 {
    a.distance(&b)
}

/// Reduce an angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `k` equal cones of angle `2π/k` around every point, numbered 1..=k
/// counterclockwise. Cone `i` covers the half-open direction interval
/// `[offset + (i-1)·2π/k, offset + i·2π/k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSystem {
    k: usize,
    offset: f64,
}

impl ConeSystem {
    /// Cones with the start-ray of cone 1 pointing along +x.
    pub fn new(k: usize) -> Result<Self> {
        Self::with_offset(k, 0.0)
    }

    pub fn with_offset(k: usize, offset: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidConeCount(k));
        }
        if !offset.is_finite() {
            return Err(Error::Precondition(format!(
                "cone rotation offset must be finite, got {offset}"
            )));
        }
        Ok(Self { k, offset })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn cone_angle(&self) -> f64 {
        TAU / self.k as f64
    }

    /// Cone (1-based) holding the absolute direction `angle`.
    pub fn cone_of_direction(&self, angle: f64) -> usize {
        let rel = normalize_angle(angle - self.offset);
        let idx = (rel / self.cone_angle()).floor() as usize;
        idx.min(self.k - 1) + 1
    }

    /// Cone of `apex` that contains `target`.
    pub fn cone_index(&self, apex: Point2, target: Point2) -> Result<usize> {
        Ok(self.cone_of_direction(apex.direction_to(&target)?))
    }

    /// Absolute direction of the start-ray of cone `i` (1-based).
    pub fn start_ray(&self, i: usize) -> f64 {
        self.offset + (i as f64 - 1.0) * self.cone_angle()
    }

    pub fn end_ray(&self, i: usize) -> f64 {
        self.start_ray(i) + self.cone_angle()
    }

    pub fn bisector(&self, i: usize) -> f64 {
        self.start_ray(i) + 0.5 * self.cone_angle()
    }

    /// Angular distance from `angle` to the closest cone boundary.
    pub fn boundary_clearance(&self, angle: f64) -> f64 {
        let w = self.cone_angle();
        let rel = normalize_angle(angle - self.offset) % w;
        rel.min(w - rel)
    }
}

/// Cone index of `target` around `apex`, in `1..=k`.
pub fn cone_index(apex: Point2, target: Point2, cones: &ConeSystem) -> Result<usize> {
    cones.cone_index(apex, target)
}

/// Counterclockwise angle from ray `y→x` to ray `y→z`, in `[0, 2π)`.
pub fn angle_ccw(x: Point2, y: Point2, z: Point2) -> Result<f64> {
    let from = y.direction_to(&x)?;
    let to = y.direction_to(&z)?;
    Ok(normalize_angle(to - from))
}

/// Unsigned magnitude `|∠xyz|` in `[0, π]`.
pub fn angle_magnitude(x: Point2, y: Point2, z: Point2) -> Result<f64> {
    let theta = angle_ccw(x, y, z)?;
    Ok(theta.min(TAU - theta).min(PI))
}

/// Rotate every point about `center` by `angle`.
pub fn rotate(points: &[Point2], center: Point2, angle: f64) -> Vec<Point2> {
    let (s, c) = angle.sin_cos();
    points
        .iter()
        .map(|p| {
            let (dx, dy) = (p.x - center.x, p.y - center.y);
            Point2::new(center.x + c * dx - s * dy, center.y + s * dx + c * dy)
        })
        .collect()
}

/// Reflect every point across the line through `axis_point` with direction
/// `axis_angle`.
pub fn mirror(points: &[Point2], axis_point: Point2, axis_angle: f64) -> Vec<Point2> {
    let (s, c) = (2.0 * axis_angle).sin_cos();
    points
        .iter()
        .map(|p| {
            let (dx, dy) = (p.x - axis_point.x, p.y - axis_point.y);
            Point2::new(
                axis_point.x + c * dx + s * dy,
                axis_point.y + s * dx - c * dy,
            )
        })
        .collect()
}

/// Sort key of an unordered pair under the distance order: length first,
/// then the sorted index pair.
#[derive(Clone, Copy, Debug)]
pub struct PairKey {
    pub length: f64,
    pub lo: usize,
    pub hi: usize,
}

impl PairKey {
    pub fn new(length: f64, a: usize, b: usize) -> Self {
        Self {
            length,
            lo: a.min(b),
            hi: a.max(b),
        }
    }
}

impl PartialEq for PairKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PairKey {}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .total_cmp(&other.length)
            .then(self.lo.cmp(&other.lo))
            .then(self.hi.cmp(&other.hi))
    }
}

/// The total order `≺` on unordered pairs of an indexed point set: shorter
/// pairs first, equal lengths broken by the lexicographic order of the sorted
/// index pair.
#[derive(Clone, Copy, Debug, Default)]
pub struct PairOrdering;

impl PairOrdering {
    pub fn key(points: &[Point2], a: usize, b: usize) -> PairKey {
        PairKey::new(points[a].distance(&points[b]), a, b)
    }

    pub fn compare(points: &[Point2], p: (usize, usize), q: (usize, usize)) -> Ordering {
        Self::key(points, p.0, p.1).cmp(&Self::key(points, q.0, q.1))
    }

    /// All unordered pairs `i < j`, sorted by `≺`.
    pub fn sorted_pairs(points: &[Point2]) -> Vec<(usize, usize)> {
        let n = points.len();
        let mut keys: Vec<PairKey> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Self::key(points, i, j))
            .collect();
        keys.sort();
        keys.into_iter().map(|k| (k.lo, k.hi)).collect()
    }
}
