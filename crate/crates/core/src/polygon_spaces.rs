//! Polygon spaces: paths of `n` steps of prescribed lengths in `R^3` that
//! return to the origin.
//!
//! Each step ranges over a sphere of radius `a_i` (a coadjoint orbit of
//! `SU(2)`), the endpoint of the path is the moment map of the diagonal
//! rotation action, and closed polygons form its zero fiber.

use nalgebra::{UnitQuaternion, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HornError, Result};
use crate::hermitian_core::{derive_seed, rng_from_seed};

/// Closure threshold on `|sum of edges|`.
pub const TAU_CLOSE: f64 = 1e-9;

/// Descent sweeps per restart used by [`sample_polygons`].
pub const DEFAULT_SWEEPS: usize = 10_000;

const DESCENT_RESTARTS: u64 = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EdgeLengths(Vec<f64>);

impl EdgeLengths {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(HornError::domain("lengths", "need at least one edge"));
        }
        if let Some(i) = a.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(HornError::domain(
                "lengths",
                format!("edge {} has non-positive or non-finite length {}", i + 1, a[i]),
            ));
        }
        Ok(EdgeLengths(a))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<f64>> for EdgeLengths {
    type Error = HornError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        EdgeLengths::new(v)
    }
}

impl From<EdgeLengths> for Vec<f64> {
    fn from(a: EdgeLengths) -> Self {
        a.0
    }
}

/// A polygonal path, one vector per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonConfig {
    pub edges: Vec<[f64; 3]>,
}

impl PolygonConfig {
    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| Vector3::from(*e).norm()).collect()
    }

    /// Largest `| |e_i| - a_i |`.
    pub fn length_defect(&self, a: &EdgeLengths) -> f64 {
        self.lengths()
            .iter()
            .zip(a.values())
            .map(|(l, a)| (l - a).abs())
            .fold(0.0, f64::max)
    }

    pub fn closure_residual(&self) -> f64 {
        Vector3::from(polygon_endpoint(self)).norm()
    }

    /// The same path after one rotation applied to every step.
    pub fn rotated(&self, rotation: &UnitQuaternion<f64>) -> PolygonConfig {
        PolygonConfig {
            edges: self
                .edges
                .iter()
                .map(|e| (rotation * Vector3::from(*e)).into())
                .collect(),
        }
    }

    /// Vertices `0, e_1, e_1 + e_2, ...`, for plotting.
    pub fn vertices(&self) -> Vec<[f64; 3]> {
        let mut p = Vector3::zeros();
        let mut out = vec![p.into()];
        for e in &self.edges {
            p += Vector3::from(*e);
            out.push(p.into());
        }
        out
    }
}

/// Is there a closed polygon with these edge lengths? True iff no edge is
/// longer than the sum of the others.
pub fn polygon_nonempty(a: &EdgeLengths) -> bool {
    let total = a.total();
    a.values().iter().all(|&ai| ai <= total - ai)
}

pub fn polygon_endpoint(p: &PolygonConfig) -> [f64; 3] {
    p.edges
        .iter()
        .fold(Vector3::zeros(), |acc, e| acc + Vector3::from(*e))
        .into()
}

fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion<f64> {
    let q = nalgebra::Quaternion::new(
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    );
    UnitQuaternion::from_quaternion(q)
}

/// Coordinate descent on `|endpoint|^2`: each edge in turn is re-aimed at
/// minus the sum of the others, which is its exact minimizer.
fn descend(a: &[f64], edges: &mut [Vector3<f64>], sweeps: usize, rng: &mut impl Rng) -> f64 {
    let mut total: Vector3<f64> = edges.iter().sum();
    for _ in 0..sweeps {
        if total.norm() < 0.1 * TAU_CLOSE {
            break;
        }
        for (i, e) in edges.iter_mut().enumerate() {
            let rest = total - *e;
            let n = rest.norm();
            let dir = if n > 0.0 { -rest / n } else { random_direction(rng) };
            *e = dir * a[i];
            total = rest + *e;
        }
        // Recompute to keep rounding from accumulating.
        total = edges.iter().sum();
    }
    total.norm()
}

/// Closed polygon built from a triangle: the edges are split into three
/// consecutive groups whose lengths form the sides, and every edge in a group
/// points along its side. Exact whenever no edge exceeds half the perimeter.
fn triangle_polygon(a: &[f64]) -> Vec<Vector3<f64>> {
    let total: f64 = a.iter().sum();
    let half = 0.5 * total;
    let mut group = vec![0usize; a.len()];
    let mut sides = [0.0f64; 3];
    let mut g = 0;
    for (i, &ai) in a.iter().enumerate() {
        if g < 2 && sides[g] > 0.0 && sides[g] + ai > half {
            g += 1;
        }
        group[i] = g;
        sides[g] += ai;
    }
    let [s0, s1, s2] = sides;
    let x = (s0 * s0 + s2 * s2 - s1 * s1) / (2.0 * s0);
    let y = (s2 * s2 - x * x).max(0.0).sqrt();
    let p1 = Vector3::new(s0, 0.0, 0.0);
    let p2 = Vector3::new(x, y, 0.0);
    let dirs = [
        Vector3::x(),
        unit_or_zero(p2 - p1),
        unit_or_zero(-p2),
    ];
    a.iter()
        .zip(&group)
        .map(|(&ai, &g)| dirs[g] * ai)
        .collect()
}

fn unit_or_zero(v: Vector3<f64>) -> Vector3<f64> {
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        v
    }
}

/// Searches for a closed polygon with edge lengths `a`.
///
/// Runs coordinate descent from seeded random starts (up to `max_iter`
/// sweeps each). If that does not close the path, falls back to the
/// triangle construction, randomly rotated, which also covers the flat
/// polygons at the boundary of the feasible region where descent converges
/// slowly. A configuration is returned only if its closure residual is
/// below [`TAU_CLOSE`]; edge lengths are exact up to rounding.
pub fn close_polygon(a: &EdgeLengths, seed: u64, max_iter: usize) -> Option<PolygonConfig> {
    let lengths = a.values();
    let mut rng = rng_from_seed(seed);
    for restart in 0..DESCENT_RESTARTS {
        let mut start_rng = rng_from_seed(derive_seed(seed, restart));
        let mut edges: Vec<Vector3<f64>> = lengths
            .iter()
            .map(|&ai| random_direction(&mut start_rng) * ai)
            .collect();
        if descend(lengths, &mut edges, max_iter, &mut start_rng) < TAU_CLOSE {
            return Some(to_config(&edges));
        }
    }
    let rotation = random_rotation(&mut rng);
    let config = to_config(&triangle_polygon(lengths)).rotated(&rotation);
    (config.closure_residual() < TAU_CLOSE).then_some(config)
}

fn to_config(edges: &[Vector3<f64>]) -> PolygonConfig {
    PolygonConfig {
        edges: edges.iter().map(|e| (*e).into()).collect(),
    }
}

/// `count` closed polygons; sample `i` uses seed `derive_seed(seed, i)`.
/// Empty when the lengths admit no closed polygon.
pub fn sample_polygons(a: &EdgeLengths, count: usize, seed: u64) -> Vec<PolygonConfig> {
    if !polygon_nonempty(a) {
        return Vec::new();
    }
    (0..count as u64)
        .into_par_iter()
        .filter_map(|i| close_polygon(a, derive_seed(seed, i), DEFAULT_SWEEPS))
        .collect()
}
