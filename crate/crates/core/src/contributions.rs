//! Contribution functions: removal, intrinsic removal, Shapley (exact and sampled) and gradient.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QbagError, Result};
use crate::graph::Qbag;
use crate::semantics::{gradient_idx, propagate_view, Semantics, View};

/// Default largest graph (in arguments) for exact Shapley enumeration.
pub const DEFAULT_EXACT_CAP: usize = 20;
/// Hard ceiling on the exact cap; the memo table holds 2^(cap-1) values.
pub const MAX_EXACT_CAP: usize = 28;

/// The exact Shapley cap, honouring `QBAG_EXACT_CAP` when set to a valid number.
pub fn exact_cap() -> usize {
    std::env::var("QBAG_EXACT_CAP")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|c| c.clamp(1, MAX_EXACT_CAP))
        .unwrap_or(DEFAULT_EXACT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Removal,
    IntrinsicRemoval,
    ShapleyExact,
    ShapleySampled { permutations: u64, seed: u64 },
    Gradient,
}

impl Method {
    /// The four methods of the principle tables, in table order.
    pub const ALL: [Method; 4] = [Method::Removal, Method::IntrinsicRemoval, Method::ShapleyExact, Method::Gradient];

    /// Parses `removal`, `intrinsic-removal`, `shapley`, `shapley-sampled` or `gradient`.
    pub fn parse(name: &str, permutations: u64, seed: u64) -> Result<Method> {
        match name.to_ascii_lowercase().as_str() {
            "removal" | "r" => Ok(Method::Removal),
            "intrinsic-removal" | "intrinsic" | "ri" => Ok(Method::IntrinsicRemoval),
            "shapley" | "shapley-exact" | "s" => Ok(Method::ShapleyExact),
            "shapley-sampled" => {
                if permutations == 0 {
                    return Err(QbagError::InvalidParameter("permutations must be at least 1".into()));
                }
                Ok(Method::ShapleySampled { permutations, seed })
            }
            "gradient" | "g" => Ok(Method::Gradient),
            _ => Err(QbagError::InvalidParameter(format!(
                "unknown method `{name}` (expected removal, intrinsic-removal, shapley, shapley-sampled or gradient)"
            ))),
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            Method::Removal => "removal",
            Method::IntrinsicRemoval => "intrinsic-removal",
            Method::ShapleyExact => "shapley",
            Method::ShapleySampled { .. } => "shapley-sampled",
            Method::Gradient => "gradient",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// A contribution, or ⊥ where the method leaves it undefined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ContributionValue {
    Value(f64),
    Undefined,
}

impl ContributionValue {
    pub fn value(self) -> Option<f64> {
        match self {
            ContributionValue::Value(v) => Some(v),
            ContributionValue::Undefined => None,
        }
    }

    pub fn is_undefined(self) -> bool {
        self == ContributionValue::Undefined
    }
}

impl fmt::Display for ContributionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContributionValue::Value(v) => write!(f, "{v:.6}"),
            ContributionValue::Undefined => f.write_str("undef"),
        }
    }
}

/// Topic-restricted evaluation: σ(a) for variants of `g`, computing only a's ancestors.
struct TopicEval<'g> {
    g: &'g Qbag,
    sem: &'g Semantics,
    a: usize,
    nodes: Vec<usize>,
}

impl<'g> TopicEval<'g> {
    fn new(g: &'g Qbag, sem: &'g Semantics, a: usize) -> Self {
        let anc = g.ancestors(a);
        let nodes = g.order().iter().copied().filter(|&v| v == a || anc.contains(v)).collect();
        TopicEval { g, sem, a, nodes }
    }

    fn sigma<K: Fn(usize) -> bool>(&self, keep: K, detached: Option<usize>) -> Result<f64> {
        let view = View { keep, detached, tau: self.g.taus() };
        Ok(propagate_view(self.g, self.sem, &view, &self.nodes)?[self.a])
    }

    fn full(&self) -> Result<f64> {
        self.sigma(|_| true, None)
    }

    fn without(&self, x: usize) -> Result<f64> {
        self.sigma(|v| v != x, None)
    }

    fn detached(&self, x: usize) -> Result<f64> {
        self.sigma(|_| true, Some(x))
    }
}

/// Coalition values for one topic, memoized by the removed-player bitmask.
struct ShapleyGame<'g> {
    eval: TopicEval<'g>,
    players: Vec<usize>,
    memo: Vec<f64>,
}

impl<'g> ShapleyGame<'g> {
    fn new(g: &'g Qbag, sem: &'g Semantics, a: usize) -> Self {
        let players: Vec<usize> = (0..g.len()).filter(|&v| v != a).collect();
        let size = if players.len() < 32 { 1usize << players.len() } else { 0 };
        ShapleyGame { eval: TopicEval::new(g, sem, a), players, memo: vec![f64::NAN; size] }
    }

    /// σ(a) on the graph with the players in `removed` deleted.
    fn value(&mut self, removed: u64) -> Result<f64> {
        let slot = removed as usize;
        if slot < self.memo.len() && !self.memo[slot].is_nan() {
            return Ok(self.memo[slot]);
        }
        let mut gone = vec![false; self.eval.g.len()];
        for (bit, &p) in self.players.iter().enumerate() {
            gone[p] = removed >> bit & 1 == 1;
        }
        let v = self.eval.sigma(|u| !gone[u], None)?;
        if slot < self.memo.len() {
            self.memo[slot] = v;
        }
        Ok(v)
    }

    /// Exact Shapley value of player number `pi`; sums by ascending subset rank.
    fn exact(&mut self, pi: usize) -> Result<f64> {
        let n = self.players.len();
        // weight(r) = 1 / (n * C(n-1, r)) with running binomials.
        let mut weights = Vec::with_capacity(n);
        let mut binom = 1.0f64;
        for r in 0..n {
            weights.push(1.0 / (n as f64 * binom));
            binom = binom * (n - 1 - r) as f64 / (r + 1) as f64;
        }
        let others: Vec<usize> = (0..n).filter(|&b| b != pi).collect();
        let xbit = 1u64 << pi;
        let mut total = 0.0;
        for subset in 0u64..(1u64 << others.len()) {
            let mut removed = 0u64;
            for (j, &b) in others.iter().enumerate() {
                if subset >> j & 1 == 1 {
                    removed |= 1 << b;
                }
            }
            let w = weights[subset.count_ones() as usize];
            total += w * (self.value(removed)? - self.value(removed | xbit)?);
        }
        Ok(total)
    }

    fn sampled(&mut self, pi: usize, permutations: u64, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..self.players.len()).collect();
        let mut total = 0.0;
        for _ in 0..permutations {
            perm.shuffle(&mut rng);
            let mut removed = 0u64;
            for &b in &perm {
                if b == pi {
                    break;
                }
                removed |= 1 << b;
            }
            total += self.value(removed)? - self.value(removed | (1 << pi))?;
        }
        Ok(total / permutations as f64)
    }
}

fn check_exact_size(g: &Qbag) -> Result<()> {
    let cap = exact_cap();
    if g.len() > cap {
        return Err(QbagError::TooLarge { n: g.len(), cap });
    }
    Ok(())
}

fn check_sampled_size(g: &Qbag) -> Result<()> {
    if g.len() > 64 {
        return Err(QbagError::InvalidParameter(format!(
            "sampled Shapley supports at most 64 arguments, got {}",
            g.len()
        )));
    }
    Ok(())
}

/// Contributions of every argument to topic `a` (indexed by argument position).
pub fn contributions_to(g: &Qbag, sem: &Semantics, method: Method, a: usize) -> Result<Vec<ContributionValue>> {
    use ContributionValue::{Undefined, Value};
    let n = g.len();
    match method {
        Method::Removal => {
            let eval = TopicEval::new(g, sem, a);
            let base = eval.full()?;
            (0..n).map(|x| Ok(if x == a { Undefined } else { Value(base - eval.without(x)?) })).collect()
        }
        Method::IntrinsicRemoval => {
            let eval = TopicEval::new(g, sem, a);
            (0..n)
                .map(|x| Ok(if x == a { Undefined } else { Value(eval.detached(x)? - eval.without(x)?) }))
                .collect()
        }
        Method::ShapleyExact => {
            check_exact_size(g)?;
            let mut game = ShapleyGame::new(g, sem, a);
            (0..n)
                .map(|x| {
                    if x == a {
                        return Ok(Undefined);
                    }
                    let pi = game.players.iter().position(|&p| p == x).unwrap();
                    Ok(Value(game.exact(pi)?))
                })
                .collect()
        }
        Method::ShapleySampled { permutations, seed } => {
            check_sampled_size(g)?;
            let mut game = ShapleyGame::new(g, sem, a);
            (0..n)
                .map(|x| {
                    if x == a {
                        return Ok(Undefined);
                    }
                    let pi = game.players.iter().position(|&p| p == x).unwrap();
                    Ok(Value(game.sampled(pi, permutations, seed)?))
                })
                .collect()
        }
        Method::Gradient => Ok(gradient_idx(g, sem, a)?.into_iter().map(Value).collect()),
    }
}

/// Contribution of `x` to topic `a` by argument index.
pub fn contribution_idx(g: &Qbag, sem: &Semantics, method: Method, a: usize, x: usize) -> Result<ContributionValue> {
    use ContributionValue::{Undefined, Value};
    if x == a && method != Method::Gradient {
        return Ok(Undefined);
    }
    match method {
        Method::Removal => {
            let eval = TopicEval::new(g, sem, a);
            Ok(Value(eval.full()? - eval.without(x)?))
        }
        Method::IntrinsicRemoval => {
            let eval = TopicEval::new(g, sem, a);
            Ok(Value(eval.detached(x)? - eval.without(x)?))
        }
        Method::ShapleyExact => {
            check_exact_size(g)?;
            let mut game = ShapleyGame::new(g, sem, a);
            let pi = game.players.iter().position(|&p| p == x).unwrap();
            Ok(Value(game.exact(pi)?))
        }
        Method::ShapleySampled { permutations, seed } => {
            check_sampled_size(g)?;
            let mut game = ShapleyGame::new(g, sem, a);
            let pi = game.players.iter().position(|&p| p == x).unwrap();
            Ok(Value(game.sampled(pi, permutations, seed)?))
        }
        Method::Gradient => Ok(Value(gradient_idx(g, sem, a)?[x])),
    }
}

pub fn contribution(g: &Qbag, sem: &Semantics, method: Method, a: &str, x: &str) -> Result<ContributionValue> {
    contribution_idx(g, sem, method, g.index_of(a)?, g.index_of(x)?)
}

/// σ_g(a) − σ_{g without x}(a).
pub fn contrib_removal(g: &Qbag, sem: &Semantics, a: &str, x: &str) -> Result<ContributionValue> {
    contribution(g, sem, Method::Removal, a, x)
}

/// σ_{g without edges into x}(a) − σ_{g without x}(a).
pub fn contrib_intrinsic_removal(g: &Qbag, sem: &Semantics, a: &str, x: &str) -> Result<ContributionValue> {
    contribution(g, sem, Method::IntrinsicRemoval, a, x)
}

pub fn contrib_shapley_exact(g: &Qbag, sem: &Semantics, a: &str, x: &str) -> Result<ContributionValue> {
    contribution(g, sem, Method::ShapleyExact, a, x)
}

pub fn contrib_shapley_sampled(
    g: &Qbag,
    sem: &Semantics,
    a: &str,
    x: &str,
    permutations: u64,
    seed: u64,
) -> Result<ContributionValue> {
    if permutations == 0 {
        return Err(QbagError::InvalidParameter("permutations must be at least 1".into()));
    }
    contribution(g, sem, Method::ShapleySampled { permutations, seed }, a, x)
}

pub fn contrib_gradient(g: &Qbag, sem: &Semantics, a: &str, x: &str) -> Result<ContributionValue> {
    contribution(g, sem, Method::Gradient, a, x)
}

/// Contributor × topic matrix; rows and columns follow the argument list.
#[derive(Clone, Debug, PartialEq)]
pub struct ContributionTable {
    pub method: Method,
    pub semantics: Semantics,
    pub arguments: Vec<String>,
    /// `cells[contributor][topic]`.
    pub cells: Vec<Vec<ContributionValue>>,
}

impl ContributionTable {
    pub fn get(&self, contributor: &str, topic: &str) -> Option<ContributionValue> {
        let r = self.arguments.iter().position(|n| n == contributor)?;
        let c = self.arguments.iter().position(|n| n == topic)?;
        Some(self.cells[r][c])
    }
}

pub fn contribution_table(g: &Qbag, sem: &Semantics, method: Method) -> Result<ContributionTable> {
    let n = g.len();
    let mut cells = vec![vec![ContributionValue::Undefined; n]; n];
    for a in 0..n {
        for (x, v) in contributions_to(g, sem, method, a)?.into_iter().enumerate() {
            cells[x][a] = v;
        }
    }
    Ok(ContributionTable { method, semantics: sem.clone(), arguments: g.names().to_vec(), cells })
}
