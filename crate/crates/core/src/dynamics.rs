//! Synchronous majority-rule state evolution with zealots, equilibrium and
//! two-cycle detection, and flip accounting.
//!
//! Each vertex holds a state in {-1, 0, +1}. One update step sets
//! `s'[v] = sgn(s[v] + sum of neighbor states)`, with `sgn(0) = 0`, all
//! vertices updating simultaneously from the same input state. A zealot
//! keeps any nonzero state forever but may still leave the neutral state.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex opinions, each entry in {-1, 0, +1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    values: Vec<i8>,
}

impl StateVector {
    /// Validates that every entry is -1, 0 or +1.
    pub fn from_values(values: Vec<i8>) -> Result<StateVector> {
        if let Some(bad) = values.iter().find(|v| !matches!(v, -1..=1)) {
            return Err(Error::invalid(
                "states",
                format!("entry {bad} is not one of -1, 0, +1"),
            ));
        }
        Ok(StateVector { values })
    }

    pub fn uniform(n: usize, value: i8) -> StateVector {
        assert!(matches!(value, -1..=1));
        StateVector {
            values: vec![value; n],
        }
    }

    pub(crate) fn from_values_unchecked(values: Vec<i8>) -> StateVector {
        debug_assert!(values.iter().all(|v| matches!(v, -1..=1)));
        StateVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> i8 {
        self.values[v]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }

    /// Number of entries equal to `value`.
    pub fn count_of(&self, value: i8) -> usize {
        self.values.iter().filter(|&&s| s == value).count()
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = i8;

    fn index(&self, idx: usize) -> &i8 {
        &self.values[idx]
    }
}

/// Marks the vertices whose nonzero state is frozen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZealotMask {
    flags: Vec<bool>,
}

impl ZealotMask {
    pub fn from_flags(flags: Vec<bool>) -> ZealotMask {
        ZealotMask { flags }
    }

    pub fn none(n: usize) -> ZealotMask {
        ZealotMask {
            flags: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn is_zealot(&self, v: usize) -> bool {
        self.flags[v]
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&z| z).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.flags
    }
}

/// Result of iterating the dynamics on one initial condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub final_states: StateVector,
    /// A fixed point was reached.
    pub converged: bool,
    /// A two-cycle was detected instead of a fixed point.
    pub period_two: bool,
    /// Number of synchronous updates executed, including the one that
    /// detected the fixed point or cycle.
    pub steps: usize,
    /// Total state changes over all executed updates.
    pub total_flips: u64,
}

fn sgn(x: i64) -> i8 {
    match x {
        x if x > 0 => 1,
        x if x < 0 => -1,
        _ => 0,
    }
}

fn field_at(g: &Graph, states: &[i8], v: u32) -> i64 {
    let mut field = states[v as usize] as i64;
    for &u in g.neighbors(v) {
        field += states[u as usize] as i64;
    }
    field
}

/// The update argument for vertex `v`: own state plus the neighbor sum.
pub fn local_field(g: &Graph, states: &StateVector, v: u32) -> i64 {
    assert!((v as usize) < g.vertex_count());
    field_at(g, states.as_slice(), v)
}

fn step_into(g: &Graph, src: &[i8], zealots: &ZealotMask, dst: &mut [i8]) -> u64 {
    let mut flips = 0u64;
    for v in 0..g.vertex_count() {
        let old = src[v];
        let new = if zealots.is_zealot(v) && old != 0 {
            old
        } else {
            sgn(field_at(g, src, v as u32))
        };
        dst[v] = new;
        flips += u64::from(new != old);
    }
    flips
}

/// One synchronous update. Returns the next state and the flip count.
pub fn step(g: &Graph, states: &StateVector, zealots: &ZealotMask) -> (StateVector, u64) {
    assert_eq!(states.len(), g.vertex_count());
    assert_eq!(zealots.len(), g.vertex_count());
    let mut next = vec![0i8; states.len()];
    let flips = step_into(g, states.as_slice(), zealots, &mut next);
    (StateVector::from_values_unchecked(next), flips)
}

/// Iterates the dynamics until a fixed point, a two-cycle, or the step cap.
///
/// On a two-cycle the returned state is the phase entered first (the state
/// one step before the detecting update). Flips of every executed update
/// are accumulated, including those of the update that detected the cycle.
pub fn run_to_equilibrium(
    g: &Graph,
    initial: &StateVector,
    zealots: &ZealotMask,
    max_steps: usize,
) -> RunOutcome {
    assert!(max_steps >= 1, "max_steps must be at least 1");
    assert_eq!(initial.len(), g.vertex_count());
    assert_eq!(zealots.len(), g.vertex_count());

    let n = g.vertex_count();
    let mut prev: Vec<i8> = vec![0; n]; // state two updates back, valid once executed >= 2
    let mut cur: Vec<i8> = initial.as_slice().to_vec();
    let mut next: Vec<i8> = vec![0; n];
    let mut total_flips = 0u64;

    for executed in 1..=max_steps {
        let flips = step_into(g, &cur, zealots, &mut next);
        total_flips += flips;
        if next == cur {
            return RunOutcome {
                final_states: StateVector::from_values_unchecked(next),
                converged: true,
                period_two: false,
                steps: executed,
                total_flips,
            };
        }
        if executed >= 2 && next == prev {
            return RunOutcome {
                final_states: StateVector::from_values_unchecked(cur),
                converged: false,
                period_two: true,
                steps: executed,
                total_flips,
            };
        }
        let recycled = std::mem::replace(&mut prev, std::mem::take(&mut cur));
        cur = std::mem::replace(&mut next, recycled);
    }

    RunOutcome {
        final_states: StateVector::from_values_unchecked(cur),
        converged: false,
        period_two: false,
        steps: max_steps,
        total_flips,
    }
}
