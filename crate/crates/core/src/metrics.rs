//! Polarization quantifiers over a graph with vertex states.
//!
//! Three ingredients: the opinion balance `R = 1 - 2|n_minus - 0.5|`
//! (maximal for an even split, zero for homogeneous states), the
//! assortativity `r` of vertex states over edges (positive when like
//! connects to like), and their product `phi = R * r`, which is high only
//! when opinions are both balanced and spatially segregated.

use crate::dynamics::StateVector;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn category(state: i8) -> usize {
    (state + 1) as usize
}

/// Fractions of directed edge-end pairs joining each pair of states.
///
/// `entry(x, y)` is the fraction of ordered adjacent pairs `(i, j)` with
/// `s[i] = x` and `s[j] = y`; entries sum to 1 and the matrix is symmetric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingMatrix {
    entries: [[f64; 3]; 3],
}

impl MixingMatrix {
    /// Entry for the ordered state pair `(x, y)`; both in {-1, 0, +1}.
    pub fn entry(&self, x: i8, y: i8) -> f64 {
        assert!(matches!(x, -1..=1) && matches!(y, -1..=1));
        self.entries[category(x)][category(y)]
    }

    /// Row sums `a_x`, indexed by category (-1, 0, +1).
    pub fn category_totals(&self) -> [f64; 3] {
        let mut totals = [0.0; 3];
        for (x, row) in self.entries.iter().enumerate() {
            totals[x] = row.iter().sum();
        }
        totals
    }

    pub fn trace(&self) -> f64 {
        (0..3).map(|x| self.entries[x][x]).sum()
    }

    pub fn as_array(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }
}

/// Fraction of vertices in state -1, over all vertices including neutrals.
pub fn fraction_negative(states: &StateVector) -> f64 {
    assert!(!states.is_empty());
    states.count_of(-1) as f64 / states.len() as f64
}

/// Opinion balance `R = 1 - 2|n_minus - 0.5|`, in [0, 1].
pub fn balance(states: &StateVector) -> f64 {
    1.0 - 2.0 * (fraction_negative(states) - 0.5).abs()
}

/// State mixing matrix over the graph's edges.
pub fn mixing_matrix(g: &Graph, states: &StateVector) -> Result<MixingMatrix> {
    assert_eq!(states.len(), g.vertex_count());
    if g.edge_count() == 0 {
        return Err(Error::DegenerateGraph);
    }
    let mut counts = [[0u64; 3]; 3];
    let s = states.as_slice();
    for v in 0..g.vertex_count() {
        let x = category(s[v]);
        for &u in g.neighbors(v as u32) {
            counts[x][category(s[u as usize])] += 1;
        }
    }
    let total = (2 * g.edge_count()) as f64;
    let mut entries = [[0.0; 3]; 3];
    for x in 0..3 {
        for y in 0..3 {
            entries[x][y] = counts[x][y] as f64 / total;
        }
    }
    Ok(MixingMatrix { entries })
}

fn assortativity_from(mix: &MixingMatrix) -> f64 {
    let totals = mix.category_totals();
    let sum_squares: f64 = totals.iter().map(|a| a * a).sum();
    let denominator = 1.0 - sum_squares;
    if denominator == 0.0 {
        // All edge ends share one state; defined as zero.
        return 0.0;
    }
    (mix.trace() - sum_squares) / denominator
}

/// State assortativity `r` over edges, in [-1, 1]; zero by definition when
/// every edge end shares one state.
pub fn assortativity(g: &Graph, states: &StateVector) -> Result<f64> {
    Ok(assortativity_from(&mixing_matrix(g, states)?))
}

/// The bundled polarization readout for one network state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationSummary {
    pub n_minus: f64,
    pub n_plus: f64,
    pub n_zero: f64,
    /// Opinion balance `R`.
    pub balance: f64,
    /// State assortativity `r`.
    pub assortativity: f64,
    /// Correlated polarization `phi = R * r`.
    pub phi: f64,
}

/// Computes `n_minus`, `R`, `r` and `phi = R * r` for one snapshot.
pub fn correlated_polarization(g: &Graph, states: &StateVector) -> Result<PolarizationSummary> {
    let n = states.len() as f64;
    let n_minus = fraction_negative(states);
    let n_plus = states.count_of(1) as f64 / n;
    let n_zero = states.count_of(0) as f64 / n;
    let balance = balance(states);
    let assortativity = assortativity(g, states)?;
    Ok(PolarizationSummary {
        n_minus,
        n_plus,
        n_zero,
        balance,
        assortativity,
        phi: balance * assortativity,
    })
}
