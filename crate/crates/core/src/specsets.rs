//! Finite spectra as multisets of complex points.

use serde::{Deserialize, Serialize};

use crate::matcore::{C64, I};

/// Multiset of complex points. Duplicates are kept; arithmetic never deduplicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSet {
    #[serde(with = "point_pairs")]
    points: Vec<C64>,
    /// Dimension of the matrix the points were read from, if any.
    #[serde(skip)]
    source_dim: Option<usize>,
}

mod point_pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::matcore::C64;

    pub fn serialize<S: Serializer>(points: &[C64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = points.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

/// Result of a directed containment test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment {
    pub contained: bool,
    /// Point of the subset farthest from the superset, with its distance.
    pub worst_point: C64,
    pub worst_distance: f64,
}

impl SpectrumSet {
    pub fn new(points: Vec<C64>) -> Self {
        Self { points, source_dim: None }
    }

    pub fn from_real(points: &[f64]) -> Self {
        Self::new(points.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_matrix_points(points: Vec<C64>) -> Self {
        let dim = points.len();
        Self { points, source_dim: Some(dim) }
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn source_dim(&self) -> Option<usize> {
        self.source_dim
    }

    fn pairwise(&self, other: &Self, op: impl Fn(C64, C64) -> C64) -> Self {
        let points = self
            .points
            .iter()
            .flat_map(|&a| other.points.iter().map(move |&b| (a, b)))
            .map(|(a, b)| op(a, b))
            .collect();
        Self::new(points)
    }

    /// `{λ + μ}` over all pairs.
    pub fn set_sum(&self, other: &Self) -> Self {
        self.pairwise(other, |a, b| a + b)
    }

    /// `{λ·μ}` over all pairs.
    pub fn set_prod(&self, other: &Self) -> Self {
        self.pairwise(other, |a, b| a * b)
    }

    pub fn rotate_i(&self) -> Self {
        self.map(|z| z * I)
    }

    pub fn translate(&self, mu: C64) -> Self {
        self.map(|z| z + mu)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self { points: self.points.iter().map(|&z| f(z)).collect(), source_dim: self.source_dim }
    }

    /// Concatenation of two multisets.
    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.points.iter().chain(&other.points).copied().collect())
    }

    fn distance_to(&self, z: C64) -> f64 {
        self.points.iter().map(|&p| (p - z).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Directed Hausdorff test: is every point of `self` within `eps` of `superset`?
    pub fn contained_in(&self, superset: &Self, eps: f64) -> Containment {
        let mut worst = Containment { contained: true, worst_point: C64::new(0.0, 0.0), worst_distance: 0.0 };
        for &z in &self.points {
            let d = superset.distance_to(z);
            if d > worst.worst_distance || (d.is_infinite() && worst.worst_distance.is_finite()) {
                worst.worst_point = z;
                worst.worst_distance = d;
            }
        }
        worst.contained = worst.worst_distance <= eps;
        worst
    }

    pub fn within_real_axis(&self, eps: f64) -> bool {
        self.points.iter().all(|z| z.im.abs() <= eps)
    }

    pub fn within_unit_circle(&self, eps: f64) -> bool {
        self.points.iter().all(|z| (z.norm() - 1.0).abs() <= eps)
    }

    /// Multiset equality up to `eps`: equal sizes and a greedy nearest-point
    /// matching in which every pair is within `eps`.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        for &z in &self.points {
            let best = other
                .points
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, &p)| (k, (p - z).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((k, d)) if d <= eps => used[k] = true,
                _ => return false,
            }
        }
        true
    }

    /// Points sorted by real then imaginary part with near-duplicates (within
    /// `eps`) collapsed. For display only.
    pub fn dedup_sorted(&self, eps: f64) -> Vec<C64> {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut out: Vec<C64> = Vec::with_capacity(pts.len());
        for z in pts {
            if out.iter().all(|p| (p - z).norm() > eps) {
                out.push(z);
            }
        }
        out
    }
}
