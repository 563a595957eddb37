use serde::{Deserialize, Serialize};

use crate::ratio::Ratio;

/// Downward-closed set of admissible constant pairs, stored as its maximal
/// corners: `β` strictly increasing, second constant strictly decreasing.
///
/// A pair is admissible when some corner dominates it in both coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub corners: Vec<(Ratio, Ratio)>,
}

impl Frontier {
    /// Every pair is admissible.
    pub fn unbounded() -> Self {
        Self {
            corners: vec![(Ratio::INFINITY, Ratio::INFINITY)],
        }
    }

    /// The down-closure of a set of points.
    pub fn from_points(mut points: Vec<(Ratio, Ratio)>) -> Self {
        // β descending, then second descending; keep points that raise the second
        points.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let mut corners: Vec<(Ratio, Ratio)> = Vec::new();
        for p in points {
            if corners.last().is_none_or(|c| p.1 > c.1) {
                corners.push(p);
            }
        }
        corners.reverse();
        Self { corners }
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Largest second constant admissible together with `beta`.
    pub fn second_at(&self, beta: Ratio) -> Option<Ratio> {
        self.corners
            .iter()
            .filter(|c| c.0 >= beta)
            .map(|c| c.1)
            .max()
    }

    pub fn admits(&self, beta: Ratio, second: Ratio) -> bool {
        self.second_at(beta).is_some_and(|s| s >= second)
    }

    pub fn intersect(&self, other: &Frontier) -> Frontier {
        let mut points = Vec::new();
        for &(beta, _) in self.corners.iter().chain(&other.corners) {
            if let (Some(a), Some(b)) = (self.second_at(beta), other.second_at(beta)) {
                points.push((beta, a.min(b)));
            }
        }
        Frontier::from_points(points)
    }

    /// Largest admissible `β`.
    pub fn max_beta(&self) -> Option<Ratio> {
        self.corners.last().map(|c| c.0)
    }

    /// Corner with the largest `β` among those whose second constant is at
    /// least `second`, else the corner with the largest second constant.
    pub fn summary(&self, second: Ratio) -> Option<(Ratio, Ratio)> {
        self.corners
            .iter()
            .rev()
            .find(|c| c.1 >= second)
            .or(self.corners.first())
            .copied()
    }
}
