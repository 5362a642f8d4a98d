//! Fixed and generated point sets: the 34-point `Y_5` lower-bound
//! configuration, the converging-corridor family on which `YY_5` has
//! unbounded stretch, and random sets for property testing.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{build_yao_yao, validate, PointSet};
use crate::stretch::shortest_paths_from;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AppendixTable,
    #[serde(rename = "fig7-seed")]
    Fig7Seed,
    Generated,
}

/// A point set with a name, labels and a record of where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedPointSet {
    pub name: String,
    pub point_set: PointSet,
    pub provenance: Provenance,
    pub metadata: BTreeMap<String, Value>,
}

const LOWER_BOUND_Y5: [(i32, i32); 34] = [
    (0, 0),
    (252, 82),
    (130, 230),
    (12, 193),
    (30, 302),
    (293, 269),
    (321, 229),
    (-143, 130),
    (-143, 80),
    (193, 384),
    (158, 367),
    (-135, 272),
    (-91, 287),
    (-153, -55),
    (371, 75),
    (410, 115),
    (334, 276),
    (341, 264),
    (-179, 97),
    (-180, 112),
    (-91, -75),
    (316, 36),
    (352, 229),
    (303, 297),
    (-167, 63),
    (-167, 147),
    (-26, -75),
    (371, 213),
    (51, 310),
    (-176, 37),
    (344, 274),
    (-189, 105),
    (99, 320),
    (-15, 284),
];

/// 34 integer points on which `Y_5` has stretch just above 2.87, realised by
/// the pair `u = (0,0)`, `v = (252,82)`.
pub fn lower_bound_y5() -> NamedPointSet {
    let points = LOWER_BOUND_Y5
        .iter()
        .map(|&(x, y)| Point2::new(x as f64, y as f64))
        .collect();
    let labels = ["u", "v", "z", "w"]
        .iter()
        .enumerate()
        .map(|(i, l)| (i, l.to_string()))
        .collect();
    NamedPointSet {
        name: "lower-bound-y5".into(),
        point_set: PointSet::with_labels(points, labels).expect("table is valid"),
        provenance: Provenance::AppendixTable,
        metadata: BTreeMap::from([("k".into(), json!(5)), ("variant".into(), json!("yao"))]),
    }
}

/// First corridor: `a = (0,0)`, `b = (1.3, 3.5)`, rays tilted ±1°.
pub const SEED_A: Point2 = Point2::new(0.0, 0.0);
pub const SEED_B: Point2 = Point2::new(1.3, 3.5);
pub const SEED_TILT_DEG: f64 = 1.0;
pub const SEED_SPACING: f64 = 2.6;
pub const POINTS_PER_ROW: usize = 5;
/// Each level halves the tilt of the one before.
pub const TILT_DECAY: f64 = 0.5;

/// Two rows of points converging to the right. The bottom row starts at `a`
/// and climbs, the top row starts at `b` and descends; `YY_5` keeps the rows
/// apart except at the far end, so the `a`–`b` path walks the whole corridor.
///
/// Level 1 is five points per row at spacing 2.6 on rays tilted ±1°, the
/// fifth landing at distance 13 (`a0`, `b0`). Each further level continues
/// from the previous end points with the tilt halved.
///
/// The result is checked before it is returned: `YY_5` must be connected and
/// the shortest `a`–`b` path must visit every point. A surviving edge between
/// the rows other than the final junction is reported as an error.
pub fn yy5_unbounded_family(levels: usize) -> Result<NamedPointSet> {
    if levels == 0 {
        return Err(Error::Precondition("levels must be at least 1".into()));
    }
    let mut bottom = Vec::with_capacity(levels * POINTS_PER_ROW);
    let mut top = Vec::with_capacity(levels * POINTS_PER_ROW);
    let mut bottom_labels = Vec::new();
    let mut top_labels = Vec::new();
    let (mut a, mut b) = (SEED_A, SEED_B);
    for level in 0..levels {
        let tilt = SEED_TILT_DEG.to_radians() * TILT_DECAY.powi(level as i32);
        for i in 1..=POINTS_PER_ROW {
            let d = SEED_SPACING * i as f64;
            bottom.push(a.polar_offset(d, tilt));
            top.push(b.polar_offset(d, -tilt));
            let (la, lb) = if level == 0 {
                let i = i % POINTS_PER_ROW;
                (format!("a{i}"), format!("b{i}"))
            } else {
                (format!("a{}_{i}", level + 1), format!("b{}_{i}", level + 1))
            };
            bottom_labels.push(la);
            top_labels.push(lb);
        }
        a = *bottom.last().unwrap();
        b = *top.last().unwrap();
    }

    let mut points = vec![SEED_A, SEED_B];
    let mut labels = BTreeMap::from([(0, "a".to_string()), (1, "b".to_string())]);
    for (p, l) in bottom.into_iter().zip(bottom_labels) {
        labels.insert(points.len(), l);
        points.push(p);
    }
    for (p, l) in top.into_iter().zip(top_labels) {
        labels.insert(points.len(), l);
        points.push(p);
    }
    let point_set = PointSet::with_labels(points, labels)?;
    check_corridor(&point_set, levels)?;

    Ok(NamedPointSet {
        name: format!("yy5-unbounded-L{levels}"),
        point_set,
        provenance: Provenance::Fig7Seed,
        metadata: BTreeMap::from([
            ("levels".into(), json!(levels)),
            ("k".into(), json!(5)),
            ("variant".into(), json!("yaoyao")),
            ("extension".into(), json!("translate-with-decaying-tilt")),
            ("tilt_deg".into(), json!(SEED_TILT_DEG)),
            ("tilt_decay".into(), json!(TILT_DECAY)),
            ("spacing".into(), json!(SEED_SPACING)),
            ("points_per_row".into(), json!(POINTS_PER_ROW)),
        ]),
    })
}

/// Bottom row is `a` plus indices `2..2+m`, top row is `b` plus the rest.
fn check_corridor(ps: &PointSet, levels: usize) -> Result<()> {
    let g = build_yao_yao(ps, 5, 0.0)?;
    if let Some(v) = validate(&g).first() {
        return Err(Error::SelfValidation(format!("YY_5 graph invalid: {v}")));
    }
    let m = levels * POINTS_PER_ROW;
    let row = |i: usize| {
        if i == 0 || (2..2 + m).contains(&i) {
            0
        } else {
            1
        }
    };
    let (a_end, b_end) = (1 + m, 1 + 2 * m);
    for (i, j) in g.undirected_edge_set() {
        if row(i) != row(j) && (i.min(j), i.max(j)) != (a_end, b_end) {
            return Err(Error::SelfValidation(format!(
                "shortcut edge {}-{} survives pruning",
                ps.display_name(i),
                ps.display_name(j)
            )));
        }
    }
    let sp = shortest_paths_from(&g, 0)?;
    let path = sp
        .path_to(1)
        .ok_or_else(|| Error::SelfValidation("YY_5 graph does not connect a and b".into()))?;
    if sp.distances.iter().any(|d| !d.is_finite()) {
        return Err(Error::SelfValidation("YY_5 graph is disconnected".into()));
    }
    if path.len() != ps.len() {
        return Err(Error::SelfValidation(format!(
            "a-b path visits {} of {} points",
            path.len(),
            ps.len()
        )));
    }
    Ok(())
}

/// Random point-set families for property tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    /// Uniform in the unit square.
    Uniform,
    /// Gaussian blobs (σ = 0.03) around `⌈n/20⌉` uniform centres.
    Clustered,
    /// Uniform angles on the unit circle.
    Circle,
    /// Unit lattice with each point jittered by up to ±0.25 per axis.
    JitteredLattice,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Uniform,
        Distribution::Clustered,
        Distribution::Circle,
        Distribution::JitteredLattice,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
            Distribution::Circle => "circle",
            Distribution::JitteredLattice => "jittered-lattice",
        }
    }
}

impl std::str::FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown distribution `{s}`")))
    }
}

/// `n` distinct points drawn from `distribution`, reproducible from `seed`.
pub fn random_point_set(n: usize, distribution: Distribution, seed: u64) -> NamedPointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (n as f64).sqrt().ceil().max(1.0) as usize;
    let centres: Vec<Point2> = (0..n.div_ceil(20).max(1))
        .map(|_| Point2::new(rng.random(), rng.random()))
        .collect();
    let blob = Normal::new(0.0, 0.03).expect("valid sigma");

    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n);
    let mut slot = 0usize;
    while points.len() < n {
        let p = match distribution {
            Distribution::Uniform => Point2::new(rng.random(), rng.random()),
            Distribution::Clustered => {
                let c = centres[rng.random_range(0..centres.len())];
                Point2::new(c.x + blob.sample(&mut rng), c.y + blob.sample(&mut rng))
            }
            Distribution::Circle => {
                Point2::new(0.0, 0.0).polar_offset(1.0, rng.random_range(0.0..TAU))
            }
            Distribution::JitteredLattice => {
                let (gx, gy) = (slot % side, slot / side);
                slot += 1;
                Point2::new(
                    gx as f64 + rng.random_range(-0.25..0.25),
                    gy as f64 + rng.random_range(-0.25..0.25),
                )
            }
        };
        if seen.insert((p.x.to_bits(), p.y.to_bits())) {
            points.push(p);
        }
    }
    NamedPointSet {
        name: format!("{}-n{n}-s{seed}", distribution.name()),
        point_set: PointSet::new(points).expect("points are finite and distinct"),
        provenance: Provenance::Generated,
        metadata: BTreeMap::from([
            ("distribution".into(), json!(distribution.name())),
            ("n".into(), json!(n)),
            ("seed".into(), json!(seed)),
        ]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_yao;
    use crate::stretch::stretch_factor;

    #[test]
    fn lower_bound_set_layout() {
        let s = lower_bound_y5();
        let ps = &s.point_set;
        assert_eq!(ps.len(), 34);
        assert_eq!(ps.point(0), Point2::new(0.0, 0.0));
        assert_eq!(ps.point(1), Point2::new(252.0, 82.0));
        assert_eq!(ps.point(33), Point2::new(-15.0, 284.0));
        assert_eq!(ps.label(0), Some("u"));
        assert_eq!(ps.label(3), Some("w"));
        assert_eq!(ps.label(4), None);
        assert_eq!(lower_bound_y5(), s);
    }

    #[test]
    fn lower_bound_stretch() {
        let s = lower_bound_y5();
        let r = stretch_factor(&build_yao(&s.point_set, 5, 0.0).unwrap()).unwrap();
        assert_eq!(r.max_ratio, 2.8766265012969177);
        assert_eq!(r.witness_pair, Some((0, 1)));
    }

    #[test]
    fn family_level_one_layout() {
        let s = yy5_unbounded_family(1).unwrap();
        let ps = &s.point_set;
        assert_eq!(ps.len(), 12);
        let a0 = ps.point(ps.index_of("a0").unwrap());
        let b0 = ps.point(ps.index_of("b0").unwrap());
        assert!(a0.distance(&SEED_A.polar_offset(13.0, 1f64.to_radians())) < 1e-12);
        assert!(b0.distance(&SEED_B.polar_offset(13.0, -1f64.to_radians())) < 1e-12);
        assert!((ps.point(0).distance(&ps.point(1)) - 3.734).abs() < 1e-3);
        assert_eq!(ps.index_of("a1"), Some(2));
        assert_eq!(ps.index_of("b4"), Some(10));
    }

    #[test]
    fn family_level_one_stretch() {
        let s = yy5_unbounded_family(1).unwrap();
        let r = stretch_factor(&build_yao_yao(&s.point_set, 5, 0.0).unwrap()).unwrap();
        assert_eq!(r.max_ratio, 7.850811569839633);
        assert_eq!(r.witness_pair, Some((0, 1)));
    }

    #[test]
    fn family_deeper_labels() {
        let s = yy5_unbounded_family(2).unwrap();
        assert_eq!(s.point_set.len(), 22);
        assert_eq!(s.point_set.label(7), Some("a2_1"));
        assert_eq!(s.point_set.label(21), Some("b2_5"));
        assert!(yy5_unbounded_family(0).is_err());
    }

    #[test]
    fn random_sets_are_reproducible_and_sized() {
        for d in Distribution::ALL {
            let a = random_point_set(57, d, 11);
            assert_eq!(a.point_set.len(), 57);
            assert_eq!(a, random_point_set(57, d, 11));
            assert_ne!(a.point_set, random_point_set(57, d, 12).point_set);
        }
        assert_eq!(
            "circle".parse::<Distribution>().unwrap(),
            Distribution::Circle
        );
        assert!("ring".parse::<Distribution>().is_err());
    }
}
