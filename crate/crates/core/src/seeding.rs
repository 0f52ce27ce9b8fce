//! Initial conditions and zealot assignment.
//!
//! Two initial-condition families: random (every vertex starts at +1 or -1,
//! a fair coin each) and seed (all neutral except one +1/-1 pair). Zealots
//! are assigned either uniformly (independent Bernoulli per vertex) or by
//! degree (the highest-degree vertices, exact count).

use rand::Rng;

use crate::dynamics::{StateVector, ZealotMask};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Every vertex independently +1 or -1 with probability 1/2; no neutrals.
pub fn random_initial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    assert!(n >= 1);
    let values = (0..n)
        .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
        .collect();
    StateVector::from_values_unchecked(values)
}

/// All vertices neutral except a uniformly chosen ordered pair of distinct
/// vertices holding +1 and -1.
pub fn seed_initial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::invalid(
            "n",
            format!("seed initial conditions need at least 2 vertices, got {n}"),
        ));
    }
    let plus = rng.random_range(0..n);
    let mut minus = rng.random_range(0..n - 1);
    if minus >= plus {
        minus += 1;
    }
    seed_initial_with_pair(n, plus, minus)
}

/// Seed initial condition with an explicit (+1, -1) vertex pair.
pub fn seed_initial_with_pair(n: usize, plus: usize, minus: usize) -> Result<StateVector> {
    if plus >= n || minus >= n {
        return Err(Error::invalid(
            "seed_pair",
            format!("pair ({plus}, {minus}) out of range for {n} vertices"),
        ));
    }
    if plus == minus {
        return Err(Error::invalid(
            "seed_pair",
            "seed vertices must be distinct".to_string(),
        ));
    }
    let mut values = vec![0i8; n];
    values[plus] = 1;
    values[minus] = -1;
    Ok(StateVector::from_values_unchecked(values))
}

fn check_fraction(p_z: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p_z) || !p_z.is_finite() {
        return Err(Error::invalid(
            "p_z",
            format!("must lie in [0, 1], got {p_z}"),
        ));
    }
    Ok(())
}

/// Each vertex independently a zealot with probability `p_z`.
pub fn uniform_zealots<R: Rng + ?Sized>(n: usize, p_z: f64, rng: &mut R) -> Result<ZealotMask> {
    check_fraction(p_z)?;
    let flags = (0..n).map(|_| rng.random_bool(p_z)).collect();
    Ok(ZealotMask::from_flags(flags))
}

/// Exactly `round(p_z * n)` zealots: the highest-degree vertices, with ties
/// at the threshold degree broken uniformly at random.
pub fn degree_zealots<R: Rng + ?Sized>(g: &Graph, p_z: f64, rng: &mut R) -> Result<ZealotMask> {
    check_fraction(p_z)?;
    let n = g.vertex_count();
    let k = ((p_z * n as f64).round() as usize).min(n);
    let mut flags = vec![false; n];
    if k == 0 {
        return Ok(ZealotMask::from_flags(flags));
    }

    let degrees = g.degrees();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        degrees[b as usize]
            .cmp(&degrees[a as usize])
            .then(a.cmp(&b))
    });
    let threshold = degrees[order[k - 1] as usize];

    let mut tied: Vec<u32> = Vec::new();
    let mut above = 0usize;
    for &v in &order {
        let d = degrees[v as usize];
        if d > threshold {
            flags[v as usize] = true;
            above += 1;
        } else if d == threshold {
            tied.push(v);
        }
    }

    // Choose the remaining k - above zealots uniformly among the tied group.
    let need = k - above;
    for i in 0..need {
        let j = rng.random_range(i..tied.len());
        tied.swap(i, j);
        flags[tied[i] as usize] = true;
    }
    Ok(ZealotMask::from_flags(flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn random_initial_has_no_neutrals() {
        let s = random_initial(1000, &mut rng(1));
        assert_eq!(s.count_of(0), 0);
        assert_eq!(s.count_of(1) + s.count_of(-1), 1000);
    }

    #[test]
    fn random_initial_is_balanced() {
        let n = 10_000;
        let s = random_initial(n, &mut rng(2));
        let frac_minus = s.count_of(-1) as f64 / n as f64;
        let sigma = 0.5 / (n as f64).sqrt();
        assert!(
            (frac_minus - 0.5).abs() <= 5.0 * sigma,
            "minus fraction {frac_minus} outside 5 sigma of 0.5"
        );
    }

    #[test]
    fn random_initial_is_deterministic_per_seed() {
        assert_eq!(
            random_initial(100, &mut rng(3)).as_slice(),
            random_initial(100, &mut rng(3)).as_slice()
        );
    }

    #[test]
    fn seed_initial_places_one_opposite_pair() {
        for seed in 0..20 {
            let s = seed_initial(5, &mut rng(seed)).unwrap();
            assert_eq!(s.count_of(1), 1);
            assert_eq!(s.count_of(-1), 1);
            assert_eq!(s.count_of(0), 3);
            let sum: i32 = s.as_slice().iter().map(|&v| v as i32).sum();
            assert_eq!(sum, 0);
        }
    }

    #[test]
    fn seed_initial_two_vertices() {
        let s = seed_initial(2, &mut rng(5)).unwrap();
        assert!(s.as_slice() == [1, -1] || s.as_slice() == [-1, 1]);
    }

    #[test]
    fn seed_initial_rejects_tiny_graphs() {
        assert!(seed_initial(1, &mut rng(1)).is_err());
        assert!(seed_initial(0, &mut rng(1)).is_err());
    }

    #[test]
    fn seed_initial_reaches_every_ordered_pair() {
        let mut seen = HashSet::new();
        for seed in 0..200 {
            let s = seed_initial(3, &mut rng(seed)).unwrap();
            let plus = s.as_slice().iter().position(|&v| v == 1).unwrap();
            let minus = s.as_slice().iter().position(|&v| v == -1).unwrap();
            seen.insert((plus, minus));
        }
        assert_eq!(seen.len(), 6, "all ordered distinct pairs occur");
    }

    #[test]
    fn explicit_pair_is_honored() {
        let s = seed_initial_with_pair(5, 0, 3).unwrap();
        assert_eq!(s.as_slice(), &[1, 0, 0, -1, 0]);
        assert!(seed_initial_with_pair(5, 2, 2).is_err());
        assert!(seed_initial_with_pair(5, 5, 1).is_err());
    }

    #[test]
    fn uniform_zealots_extremes() {
        let none = uniform_zealots(50, 0.0, &mut rng(7)).unwrap();
        assert_eq!(none.count(), 0);
        let all = uniform_zealots(50, 1.0, &mut rng(7)).unwrap();
        assert_eq!(all.count(), 50);
    }

    #[test]
    fn uniform_zealots_rejects_bad_fractions() {
        assert!(uniform_zealots(10, -0.1, &mut rng(1)).is_err());
        assert!(uniform_zealots(10, 1.5, &mut rng(1)).is_err());
        assert!(uniform_zealots(10, f64::NAN, &mut rng(1)).is_err());
    }

    #[test]
    fn uniform_zealots_count_tracks_probability() {
        let n = 10_000;
        let mask = uniform_zealots(n, 0.3, &mut rng(11)).unwrap();
        let sigma = (n as f64 * 0.3 * 0.7).sqrt();
        let count = mask.count() as f64;
        assert!(
            (count - 3000.0).abs() <= 5.0 * sigma,
            "zealot count {count} outside 5 sigma of 3000"
        );
    }

    #[test]
    fn degree_zealots_pick_the_hub() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let mask = degree_zealots(&star, 0.2, &mut rng(13)).unwrap();
        assert_eq!(mask.count(), 1);
        assert!(mask.is_zealot(0), "k = 1 selects the degree-4 hub");
    }

    #[test]
    fn degree_zealots_full_fraction_covers_everyone() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let mask = degree_zealots(&star, 1.0, &mut rng(13)).unwrap();
        assert_eq!(mask.count(), 5);
    }

    #[test]
    fn degree_zealots_regular_graph_is_a_random_subset() {
        // 10-cycle: every degree is 2, so all selection happens at the tie.
        let edges: Vec<(u32, u32)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
        let cycle = Graph::from_edges(10, &edges);
        let mut subsets = HashSet::new();
        for seed in 0..30 {
            let mask = degree_zealots(&cycle, 0.5, &mut rng(seed)).unwrap();
            assert_eq!(mask.count(), 5);
            subsets.insert(mask.as_slice().to_vec());
        }
        assert!(subsets.len() > 1, "tied selection varies with the rng");
    }

    #[test]
    fn degree_zealots_threshold_invariant() {
        let mut r = rng(17);
        let seq = crate::graph::fix_parity(
            crate::graph::sample_powerlaw_degrees(200, 2.5, 2, &mut r).unwrap(),
            &mut r,
        );
        let g = crate::graph::configuration_model(&seq, &mut r).unwrap();
        let mask = degree_zealots(&g, 0.3, &mut r).unwrap();
        let min_zealot = (0..g.vertex_count())
            .filter(|&v| mask.is_zealot(v))
            .map(|v| g.degree(v as u32))
            .min()
            .unwrap();
        let max_other = (0..g.vertex_count())
            .filter(|&v| !mask.is_zealot(v))
            .map(|v| g.degree(v as u32))
            .max()
            .unwrap();
        assert!(
            min_zealot >= max_other,
            "every zealot must out-degree (or tie) every non-zealot"
        );
    }

    #[test]
    fn degree_zealot_count_rounds_half_up() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        // 0.5 * 5 = 2.5 rounds to 3.
        let mask = degree_zealots(&star, 0.5, &mut rng(19)).unwrap();
        assert_eq!(mask.count(), 3);
    }
}
