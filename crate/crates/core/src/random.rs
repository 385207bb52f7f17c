//! Random acyclic QBAGs for property tests and counterexample search.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{build_qbag, Qbag};

#[derive(Clone, Debug, PartialEq)]
pub struct RandomGraphConfig {
    /// Probability that a forward pair of the hidden order is connected.
    pub edge_prob: f64,
    /// Initial strengths are multiples of this step in [0, 1].
    pub strength_grid: f64,
    /// Only support edges.
    pub support_only: bool,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        RandomGraphConfig { edge_prob: 0.35, strength_grid: 0.05, support_only: false }
    }
}

/// Argument names: a, b, ..., z, then a26, a27, ...
pub fn argument_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

/// Draws a graph over `n` arguments: a random hidden order, each forward pair
/// an edge with `edge_prob`, attack or support by a fair coin, τ on the grid.
pub fn random_qbag<R: Rng + ?Sized>(rng: &mut R, n: usize, cfg: &RandomGraphConfig) -> Qbag {
    let names: Vec<String> = (0..n).map(argument_name).collect();
    let steps = (1.0 / cfg.strength_grid).round().max(1.0) as u32;
    let args: Vec<(String, f64)> = names
        .iter()
        .map(|x| {
            let k = rng.gen_range(0..=steps);
            (x.clone(), (f64::from(k) / f64::from(steps)).min(1.0))
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let (mut attacks, mut supports) = (Vec::new(), Vec::new());
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(cfg.edge_prob) {
                let edge = (names[order[i]].clone(), names[order[j]].clone());
                if cfg.support_only || rng.gen_bool(0.5) {
                    supports.push(edge);
                } else {
                    attacks.push(edge);
                }
            }
        }
    }
    build_qbag(&args, &attacks, &supports).expect("forward edges over a hidden order are acyclic")
}
