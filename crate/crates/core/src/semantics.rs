//! Modular gradual semantics: aggregation, influence, forward propagation and exact gradients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QbagError, Result};
use crate::graph::Qbag;

/// Slack allowed on the linear influence domain before raising `DomainError`.
pub const LINEAR_DOMAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Aggregation {
    Sum,
    Product,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Influence {
    Linear { k: f64 },
    EulerBased,
    PMax { p: u32, k: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Semantics {
    pub aggregation: Aggregation,
    pub influence: Influence,
    pub name: Option<String>,
}

/// Preset names accepted by [`Semantics::preset`].
pub const PRESETS: [&str; 5] = ["qe", "dfquad", "sd-dfquad", "eb", "ebt"];

impl Semantics {
    pub fn custom(aggregation: Aggregation, influence: Influence) -> Result<Semantics> {
        match influence {
            Influence::Linear { k } | Influence::PMax { k, .. } if !(k > 0.0 && k.is_finite()) => {
                return Err(QbagError::InvalidParameter(format!("k must be positive, got {k}")))
            }
            Influence::PMax { p: 0, .. } => {
                return Err(QbagError::InvalidParameter("p must be at least 1".into()))
            }
            _ => {}
        }
        Ok(Semantics { aggregation, influence, name: None })
    }

    fn named(aggregation: Aggregation, influence: Influence, name: &str) -> Semantics {
        Semantics { aggregation, influence, name: Some(name.to_string()) }
    }

    pub fn qe() -> Semantics {
        Self::named(Aggregation::Sum, Influence::PMax { p: 2, k: 1.0 }, "qe")
    }

    pub fn dfquad() -> Semantics {
        Self::named(Aggregation::Product, Influence::Linear { k: 1.0 }, "dfquad")
    }

    pub fn sd_dfquad() -> Semantics {
        Self::named(Aggregation::Product, Influence::PMax { p: 1, k: 1.0 }, "sd-dfquad")
    }

    pub fn eb() -> Semantics {
        Self::named(Aggregation::Sum, Influence::EulerBased, "eb")
    }

    pub fn ebt() -> Semantics {
        Self::named(Aggregation::Top, Influence::EulerBased, "ebt")
    }

    /// Looks up a preset by name, ignoring case.
    pub fn preset(name: &str) -> Result<Semantics> {
        match name.to_ascii_lowercase().as_str() {
            "qe" => Ok(Self::qe()),
            "dfquad" => Ok(Self::dfquad()),
            "sd-dfquad" => Ok(Self::sd_dfquad()),
            "eb" => Ok(Self::eb()),
            "ebt" => Ok(Self::ebt()),
            _ => Err(QbagError::InvalidParameter(format!(
                "unknown semantics `{name}` (expected one of {})",
                PRESETS.join(", ")
            ))),
        }
    }

    pub fn presets() -> Vec<Semantics> {
        PRESETS.iter().map(|p| Self::preset(p).unwrap()).collect()
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        let agg = match self.aggregation {
            Aggregation::Sum => "sum",
            Aggregation::Product => "product",
            Aggregation::Top => "top",
        };
        match self.influence {
            Influence::Linear { k } => write!(f, "{agg}+linear({k})"),
            Influence::EulerBased => write!(f, "{agg}+euler"),
            Influence::PMax { p, k } => write!(f, "{agg}+pmax({p},{k})"),
        }
    }
}

fn top(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, &v| if v > m { v } else { m })
}

/// Combines attacker and supporter strengths into one signal.
pub fn aggregate(kind: Aggregation, att: &[f64], supp: &[f64]) -> f64 {
    match kind {
        Aggregation::Sum => supp.iter().sum::<f64>() - att.iter().sum::<f64>(),
        Aggregation::Product => {
            att.iter().map(|s| 1.0 - s).product::<f64>() - supp.iter().map(|s| 1.0 - s).product::<f64>()
        }
        Aggregation::Top => top(supp) - top(att),
    }
}

fn h(p: u32, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        let xp = x.powi(p as i32);
        xp / (1.0 + xp)
    }
}

/// Derivative of `h`; at 0 this is the right-hand derivative.
fn h_prime(p: u32, x: f64) -> f64 {
    if x < 0.0 {
        0.0
    } else if x == 0.0 {
        if p == 1 {
            1.0
        } else {
            0.0
        }
    } else {
        let xp = x.powi(p as i32);
        p as f64 * x.powi(p as i32 - 1) / ((1.0 + xp) * (1.0 + xp))
    }
}

/// Maps an initial strength `w` and an aggregate `s` to a final strength.
pub fn influence(kind: Influence, w: f64, s: f64) -> Result<f64> {
    Ok(match kind {
        Influence::Linear { k } => {
            if s.abs() > k + LINEAR_DOMAIN_SLACK {
                return Err(QbagError::DomainError { s, k });
            }
            w - (w / k) * (-s).max(0.0) + ((1.0 - w) / k) * s.max(0.0)
        }
        Influence::EulerBased => 1.0 - (1.0 - w * w) / (1.0 + w * s.exp()),
        Influence::PMax { p, k } => w - w * h(p, -s / k) + (1.0 - w) * h(p, s / k),
    })
}

/// Partial derivatives (d/dw, d/ds) of the influence function, using the
/// positive branch at s = 0.
pub fn influence_partials(kind: Influence, w: f64, s: f64) -> (f64, f64) {
    match kind {
        Influence::Linear { k } => {
            let dw = 1.0 - (-s).max(0.0) / k - s.max(0.0) / k;
            let ds = if s < 0.0 { w / k } else { (1.0 - w) / k };
            (dw, ds)
        }
        Influence::EulerBased => {
            let e = s.exp();
            let den = (1.0 + w * e) * (1.0 + w * e);
            let dw = (2.0 * w * (1.0 + w * e) + (1.0 - w * w) * e) / den;
            let ds = (1.0 - w * w) * w * e / den;
            (dw, ds)
        }
        Influence::PMax { p, k } => {
            let dw = 1.0 - h(p, -s / k) - h(p, s / k);
            let ds = if s < 0.0 {
                w / k * h_prime(p, -s / k)
            } else {
                (1.0 - w) / k * h_prime(p, s / k)
            };
            (dw, ds)
        }
    }
}

/// Final strengths of every argument, with the topological order used.
#[derive(Clone, Debug, PartialEq)]
pub struct StrengthAssignment {
    names: Vec<String>,
    sigma: Vec<f64>,
    order: Vec<usize>,
}

impl StrengthAssignment {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.names.iter().position(|n| n == id).map(|i| self.sigma[i])
    }

    /// Strength by argument index.
    pub fn value(&self, i: usize) -> f64 {
        self.sigma[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// (id, σ) pairs in topological order.
    pub fn in_order(&self) -> Vec<(&str, f64)> {
        self.order.iter().map(|&i| (self.names[i].as_str(), self.sigma[i])).collect()
    }
}

/// A variant of a graph evaluated without building it: arguments outside
/// `keep` are absent, `detached` loses its incoming edges, and `tau` replaces
/// the initial strengths.
pub(crate) struct View<'a, K: Fn(usize) -> bool> {
    pub keep: K,
    pub detached: Option<usize>,
    pub tau: &'a [f64],
}

/// Forward propagation over `nodes` (a topologically ordered subset closed
/// under kept ancestors). Entries outside `nodes` are left as NaN.
pub(crate) fn propagate_view<K: Fn(usize) -> bool>(
    g: &Qbag,
    sem: &Semantics,
    view: &View<'_, K>,
    nodes: &[usize],
) -> Result<Vec<f64>> {
    let mut sigma = vec![f64::NAN; g.len()];
    let mut att = Vec::new();
    let mut supp = Vec::new();
    for &v in nodes {
        if !(view.keep)(v) {
            continue;
        }
        att.clear();
        supp.clear();
        if view.detached != Some(v) {
            att.extend(g.attackers(v).iter().filter(|&&u| (view.keep)(u)).map(|&u| sigma[u]));
            supp.extend(g.supporters(v).iter().filter(|&&u| (view.keep)(u)).map(|&u| sigma[u]));
        }
        let w = view.tau[v];
        sigma[v] = if att.is_empty() && supp.is_empty() {
            w
        } else {
            influence(sem.influence, w, aggregate(sem.aggregation, &att, &supp))?
        };
    }
    Ok(sigma)
}

/// The topic and its ancestors, in topological order.
pub(crate) fn topic_nodes(g: &Qbag, a: usize) -> Vec<usize> {
    let anc = g.ancestors(a);
    g.order().iter().copied().filter(|&v| v == a || anc.contains(v)).collect()
}

/// σ(a) after replacing τ(x) by `eps`, computing only a's ancestors.
pub(crate) fn topic_strength_with(g: &Qbag, sem: &Semantics, nodes: &[usize], a: usize, x: usize, eps: f64) -> Result<f64> {
    let mut tau = g.taus().to_vec();
    tau[x] = eps;
    let view = View { keep: |_| true, detached: None, tau: &tau };
    Ok(propagate_view(g, sem, &view, nodes)?[a])
}

/// Computes final strengths by forward propagation in topological order.
pub fn evaluate(g: &Qbag, sem: &Semantics) -> Result<StrengthAssignment> {
    let view = View { keep: |_| true, detached: None, tau: g.taus() };
    let sigma = propagate_view(g, sem, &view, g.order())?;
    Ok(StrengthAssignment { names: g.names().to_vec(), sigma, order: g.order().to_vec() })
}

/// Partial derivatives of σ(topic) with respect to every initial strength.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientVector {
    pub topic: String,
    names: Vec<String>,
    partials: Vec<f64>,
}

impl GradientVector {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.names.iter().position(|n| n == id).map(|i| self.partials[i])
    }

    pub fn value(&self, i: usize) -> f64 {
        self.partials[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.partials
    }
}

/// Local derivative of an aggregate with respect to each parent strength,
/// written into `d_att` and `d_supp`.
fn aggregate_partials(
    kind: Aggregation,
    att: &[(usize, f64)],
    supp: &[(usize, f64)],
    d_att: &mut Vec<f64>,
    d_supp: &mut Vec<f64>,
) {
    d_att.clear();
    d_supp.clear();
    match kind {
        Aggregation::Sum => {
            d_att.resize(att.len(), -1.0);
            d_supp.resize(supp.len(), 1.0);
        }
        Aggregation::Product => {
            let others = |list: &[(usize, f64)], skip: usize| {
                list.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &(_, s))| 1.0 - s)
                    .product::<f64>()
            };
            d_att.extend((0..att.len()).map(|j| -others(att, j)));
            d_supp.extend((0..supp.len()).map(|j| others(supp, j)));
        }
        Aggregation::Top => {
            // A unique positive maximum passes derivative 1; a maximum shared by
            // several parents passes nothing, since no single parent can lower
            // it. At the 0 floor every parent at 0 passes 1, the right
            // derivative, as strengths cannot go below 0.
            let top = |list: &[(usize, f64)], d: &mut Vec<f64>, sign: f64| {
                let m = list.iter().fold(0.0, |m: f64, &(_, s)| m.max(s));
                let hits = list.iter().filter(|&&(_, s)| s == m).count();
                for (j, &(_, s)) in list.iter().enumerate() {
                    if s == m && (m == 0.0 || hits == 1) {
                        d[j] = sign;
                    }
                }
            };
            d_att.resize(att.len(), 0.0);
            d_supp.resize(supp.len(), 0.0);
            top(att, d_att, -1.0);
            top(supp, d_supp, 1.0);
        }
    }
}

/// Exact gradient of σ(topic) by reverse accumulation along the topological order.
pub fn gradient_of_topic(g: &Qbag, sem: &Semantics, topic: &str) -> Result<GradientVector> {
    let a = g.index_of(topic)?;
    let partials = gradient_idx(g, sem, a)?;
    Ok(GradientVector { topic: topic.to_string(), names: g.names().to_vec(), partials })
}

pub(crate) fn gradient_idx(g: &Qbag, sem: &Semantics, a: usize) -> Result<Vec<f64>> {
    let sigma = evaluate(g, sem)?;
    let n = g.len();
    let mut adjoint = vec![0.0; n];
    let mut partials = vec![0.0; n];
    adjoint[a] = 1.0;
    let (mut att, mut supp, mut d_att, mut d_supp) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &v in g.order().iter().rev() {
        let adj = adjoint[v];
        if adj == 0.0 {
            continue;
        }
        att.clear();
        supp.clear();
        att.extend(g.attackers(v).iter().map(|&u| (u, sigma.value(u))));
        supp.extend(g.supporters(v).iter().map(|&u| (u, sigma.value(u))));
        if att.is_empty() && supp.is_empty() {
            partials[v] += adj;
            continue;
        }
        let strengths = |l: &[(usize, f64)]| l.iter().map(|&(_, s)| s).collect::<Vec<_>>();
        let s = aggregate(sem.aggregation, &strengths(&att), &strengths(&supp));
        let (dw, ds) = influence_partials(sem.influence, g.tau(v), s);
        partials[v] += adj * dw;
        aggregate_partials(sem.aggregation, &att, &supp, &mut d_att, &mut d_supp);
        for (&(u, _), d) in att.iter().zip(&d_att) {
            adjoint[u] += adj * ds * d;
        }
        for (&(u, _), d) in supp.iter().zip(&d_supp) {
            adjoint[u] += adj * ds * d;
        }
    }
    Ok(partials)
}

/// Arguments evaluated within `tol` of a point where the local update is not
/// differentiable: an aggregate at 0 under a linear or p = 1 influence whose
/// one-sided slopes differ, or a tie for a Top maximum (the 0 floor counts).
pub fn kink_arguments(g: &Qbag, sem: &Semantics, tol: f64) -> Result<Vec<usize>> {
    let sigma = evaluate(g, sem)?;
    let mut out = Vec::new();
    for v in 0..g.len() {
        let att: Vec<f64> = g.attackers(v).iter().map(|&u| sigma.value(u)).collect();
        let supp: Vec<f64> = g.supporters(v).iter().map(|&u| sigma.value(u)).collect();
        if att.is_empty() && supp.is_empty() {
            continue;
        }
        let w = g.tau(v);
        let influence_kink = match sem.influence {
            Influence::Linear { .. } | Influence::PMax { p: 1, .. } => {
                aggregate(sem.aggregation, &att, &supp).abs() <= tol && (2.0 * w - 1.0).abs() > tol
            }
            _ => false,
        };
        let tie = |list: &[f64]| {
            if list.is_empty() {
                return false;
            }
            let m = top(list);
            let near = list.iter().filter(|&&s| (m - s).abs() <= tol).count() + usize::from(m <= tol);
            near >= 2
        };
        let top_kink = sem.aggregation == Aggregation::Top && (tie(&att) || tie(&supp));
        if influence_kink || top_kink {
            out.push(v);
        }
    }
    Ok(out)
}
