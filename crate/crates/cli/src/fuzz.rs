//! Seeded random search for principle violations.
//!
//! Trial `t` draws from ChaCha8 seeded with `seed_from_u64(seed)` on stream `t`,
//! so every trial is reproducible on its own and independent of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qbag::{check, random_qbag, CheckConfig, Method, PrincipleId, PrincipleReport, Qbag, QbagError, RandomGraphConfig, Semantics};

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_args: usize,
    pub edge_prob: f64,
    pub strength_grid: f64,
    pub support_only: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { seed: 0, trials: 1000, max_args: 7, edge_prob: 0.35, strength_grid: 0.05, support_only: false }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be positive".into());
        }
        if self.max_args < 2 {
            return Err("max-args must be at least 2".into());
        }
        if !(self.edge_prob > 0.0 && self.edge_prob < 1.0) {
            return Err("edge-prob must lie strictly between 0 and 1".into());
        }
        if !(self.strength_grid > 0.0 && self.strength_grid <= 1.0) {
            return Err("strength-grid must lie in (0, 1]".into());
        }
        Ok(())
    }

    fn graph_config(&self) -> RandomGraphConfig {
        RandomGraphConfig { edge_prob: self.edge_prob, strength_grid: self.strength_grid, support_only: self.support_only }
    }

    /// The graph of trial `t`, between 2 and `max_args` arguments.
    pub fn trial_graph(&self, t: u64) -> Qbag {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t);
        let n = rng.gen_range(2..=self.max_args);
        random_qbag(&mut rng, n, &self.graph_config())
    }
}

#[derive(Clone, Debug)]
pub struct FuzzWitness {
    pub trial: u64,
    pub graph: Qbag,
    pub report: PrincipleReport,
}

/// Checks every topic of every trial graph; returns the violation with the lowest trial index.
///
/// Topics are tried in argument-name order, so the reported topic is deterministic too.
pub fn search(
    cfg: &FuzzConfig,
    principle: PrincipleId,
    sem: &Semantics,
    method: Method,
    check_cfg: &CheckConfig,
) -> Result<Option<FuzzWitness>, (u64, QbagError)> {
    let found = (0..cfg.trials).into_par_iter().find_map_first(|t| {
        let g = cfg.trial_graph(t);
        for topic in g.names() {
            match check(principle, &g, sem, method, topic, check_cfg) {
                Ok(report) if report.is_violation() => return Some(Ok(FuzzWitness { trial: t, graph: g.clone(), report })),
                Ok(_) => {}
                Err(e) => return Some(Err((t, e))),
            }
        }
        None
    });
    found.transpose()
}
