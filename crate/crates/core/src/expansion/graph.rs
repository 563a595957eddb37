//! Graphs with boundary and their functional-inequality constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::par::{self, chunk_for};
use crate::ratio::Ratio;

/// Vertices `0..interior` are interior, the next `boundary` ones are boundary.
/// Edges between two boundary vertices are not allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphWithBoundary {
    pub interior: usize,
    pub boundary: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphWithBoundary {
    pub fn new(interior: usize, boundary: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let total = interior + boundary;
        for &(a, b) in &edges {
            if a >= total || b >= total || a == b {
                return Err(Error::Validation(format!(
                    "bad edge ({a}, {b}) on {total} vertices"
                )));
            }
            if a >= interior && b >= interior {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) joins two boundary vertices"
                )));
            }
        }
        Ok(Self {
            interior,
            boundary,
            edges,
        })
    }

    /// Star with a center and one branch per entry of `boundary_ends`; every
    /// branch holds `(l−1)/2` further vertices and ends at a boundary vertex
    /// when its flag is set. Two branches give a path of `l` vertices.
    pub fn repetition(l: usize, boundary_ends: &[bool]) -> Result<Self> {
        crate::subdivide::check_l(l)?;
        let arm = (l - 1) / 2;
        let interior = 1 + arm * boundary_ends.len();
        let mut edges = Vec::new();
        let mut next_boundary = interior;
        for (b, &closed) in boundary_ends.iter().enumerate() {
            let mut prev = 0;
            for k in 0..arm {
                let v = 1 + b * arm + k;
                edges.push((prev, v));
                prev = v;
            }
            if closed {
                edges.push((prev, next_boundary));
                next_boundary += 1;
            }
        }
        Self::new(interior, next_boundary - interior, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.interior + self.boundary
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v >= self.interior
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edge-cut size of a 0/1 assignment given as a bit mask.
    pub fn cut(&self, g: u64) -> u64 {
        self.edges
            .iter()
            .filter(|&&(a, b)| (g >> a & 1) != (g >> b & 1))
            .count() as u64
    }
}

/// Best constants in the two inequalities, over all Boolean assignments `g`
/// on interior and boundary vertices, with sums over ordered pairs:
///
/// * `Σ_E |g(x)−g(y)| ≥ (C/|V|) Σ_{x,y∈V} |g(x)−g(y)|`
/// * `Σ_E |g(x)−g(y)| ≥ (C∂/|V∂|) Σ_{x∈V∂, y∈V} |g(x)−g(y)|`
///
/// A constant is infinite when its right-hand side never becomes positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalConstants {
    pub c: Ratio,
    pub c_boundary: Ratio,
}

#[derive(Clone, Copy)]
struct Best {
    cut: u64,
    den: u64,
}

impl Best {
    const NONE: Best = Best { cut: 1, den: 0 };

    fn offer(&mut self, cut: u64, den: u64) {
        // cut/den < self.cut/self.den
        if den > 0 && cut * self.den < self.cut * den {
            *self = Best { cut, den };
        }
    }

    fn min(mut self, other: Best) -> Best {
        self.offer(other.cut, other.den);
        self
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

pub fn functional_constants(
    graph: &GraphWithBoundary,
    limits: &Limits,
) -> Result<FunctionalConstants> {
    let total = graph.vertex_count();
    Limits::check(
        "functional inequality vertices",
        total,
        limits.functional_vertices,
    )?;
    let nv = graph.interior as u64;
    let adj = graph.adjacency();
    let interior_mask = if graph.interior == 64 {
        u64::MAX
    } else {
        (1u64 << graph.interior) - 1
    };
    let count = 1u64 << total;

    let (bulk, edge) = par::map_reduce(
        limits.exec,
        0..count,
        chunk_for(count),
        || (Best::NONE, Best::NONE),
        |range| {
            let mut g = gray(range.start);
            let mut cut = graph.cut(g);
            let mut a = u64::from((g & interior_mask).count_ones());
            let mut b1 = u64::from((g & !interior_mask).count_ones());
            let mut best = (Best::NONE, Best::NONE);
            for i in range.clone() {
                if i != range.start {
                    let u = (i.trailing_zeros()) as usize;
                    let was = g >> u & 1;
                    for &w in &adj[u] {
                        if g >> w & 1 == was {
                            cut += 1;
                        } else {
                            cut -= 1;
                        }
                    }
                    g ^= 1 << u;
                    let delta = if was == 1 { u64::MAX } else { 1 };
                    if u < graph.interior {
                        a = a.wrapping_add(delta);
                    } else {
                        b1 = b1.wrapping_add(delta);
                    }
                }
                best.0.offer(cut, 2 * a * (nv - a));
                let b0 = graph.boundary as u64 - b1;
                best.1.offer(cut, b1 * (nv - a) + b0 * a);
            }
            best
        },
        |x, y| (x.0.min(y.0), x.1.min(y.1)),
    );
    let scale = |best: Best, size: usize| {
        if best.den == 0 {
            Ratio::INFINITY
        } else {
            Ratio::new(best.cut * size as u64, best.den)
        }
    };
    Ok(FunctionalConstants {
        c: scale(bulk, graph.interior),
        c_boundary: scale(edge, graph.boundary),
    })
}
