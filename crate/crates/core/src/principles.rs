//! Instance-level checks of contribution-function principles.
//!
//! A checker either finds a violation on the given graph and topic, with a
//! witness, or reports that none was found. It never certifies that a
//! principle holds in general.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contributions::{contributions_to, ContributionValue, Method};
use crate::error::{QbagError, Result};
use crate::graph::Qbag;
use crate::semantics::{evaluate, kink_arguments, topic_nodes, topic_strength_with, Semantics};

/// Error ratio above which quantitative local faithfulness needs a shrinking sequence.
pub const QLF_RATIO_TOL: f64 = 1e-3;
/// Per-step factor by which error ratios must shrink to count as tending to 0.
pub const QLF_SHRINK_FACTOR: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrincipleId {
    ContributionExistence,
    QuantContributionExistence,
    Directionality,
    StrongFaithfulness,
    LocalFaithfulness,
    QuantLocalFaithfulness,
    Counterfactuality,
    QuantCounterfactuality,
    Proximity,
}

impl PrincipleId {
    pub const ALL: [PrincipleId; 9] = [
        PrincipleId::ContributionExistence,
        PrincipleId::QuantContributionExistence,
        PrincipleId::Directionality,
        PrincipleId::StrongFaithfulness,
        PrincipleId::LocalFaithfulness,
        PrincipleId::QuantLocalFaithfulness,
        PrincipleId::Counterfactuality,
        PrincipleId::QuantCounterfactuality,
        PrincipleId::Proximity,
    ];

    pub fn slug(&self) -> &'static str {
        match self {
            PrincipleId::ContributionExistence => "contribution-existence",
            PrincipleId::QuantContributionExistence => "quantitative-contribution-existence",
            PrincipleId::Directionality => "directionality",
            PrincipleId::StrongFaithfulness => "strong-faithfulness",
            PrincipleId::LocalFaithfulness => "local-faithfulness",
            PrincipleId::QuantLocalFaithfulness => "quantitative-local-faithfulness",
            PrincipleId::Counterfactuality => "counterfactuality",
            PrincipleId::QuantCounterfactuality => "quantitative-counterfactuality",
            PrincipleId::Proximity => "proximity",
        }
    }

    pub fn parse(name: &str) -> Result<PrincipleId> {
        let lower = name.to_ascii_lowercase();
        PrincipleId::ALL
            .into_iter()
            .find(|p| p.slug() == lower)
            .ok_or_else(|| {
                let known: Vec<_> = PrincipleId::ALL.iter().map(|p| p.slug()).collect();
                QbagError::InvalidParameter(format!("unknown principle `{name}` (expected one of {})", known.join(", ")))
            })
    }
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SatisfiedOnInstance,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Contributions with magnitude at most this are zero.
    pub zero_tol: f64,
    /// Strengths closer than this are equal.
    pub eq_tol: f64,
    /// Probe distances for local faithfulness, strictly decreasing.
    pub eps_schedule: Vec<f64>,
    /// Sweep resolution for strong faithfulness.
    pub grid_points: usize,
    /// Distance to a non-differentiable point treated as being at it (gradient checks).
    pub kink_tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            zero_tol: 1e-9,
            eq_tol: 1e-9,
            eps_schedule: vec![1e-2, 1e-3, 1e-4, 1e-5],
            grid_points: 101,
            kink_tol: 1e-9,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.zero_tol > 0.0 && self.eq_tol > 0.0 && self.kink_tol > 0.0;
        let schedule_ok = !self.eps_schedule.is_empty()
            && self.eps_schedule.iter().all(|&e| e > 0.0 && e <= 1.0)
            && self.eps_schedule.windows(2).all(|w| w[0] > w[1]);
        if !positive || !schedule_ok || self.grid_points < 2 {
            return Err(QbagError::InvalidParameter(
                "tolerances must be positive, eps_schedule strictly decreasing in (0, 1], grid_points >= 2".into(),
            ));
        }
        Ok(())
    }
}

/// Numbers backing a verdict.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub contributor: Option<String>,
    /// Second argument involved (the strictly closer one for proximity).
    pub other: Option<String>,
    pub quantities: Vec<(String, f64)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipleReport {
    pub principle: PrincipleId,
    pub verdict: Verdict,
    pub semantics: String,
    pub method: String,
    pub topic: String,
    pub witness: Option<Witness>,
    /// Contributors left out, with the reason.
    pub skipped: Vec<(String, String)>,
    pub note: Option<String>,
    pub config: CheckConfig,
}

impl PrincipleReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violation
    }
}

impl fmt::Display for PrincipleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::SatisfiedOnInstance => "satisfied on this instance",
            Verdict::Violation => "VIOLATION",
        };
        writeln!(
            f,
            "{}: {} (semantics {}, method {}, topic {})",
            self.principle, verdict, self.semantics, self.method, self.topic
        )?;
        if let Some(w) = &self.witness {
            if let Some(x) = &w.contributor {
                writeln!(f, "  contributor: {x}")?;
            }
            if let Some(y) = &w.other {
                writeln!(f, "  closer argument: {y}")?;
            }
            for (k, v) in &w.quantities {
                writeln!(f, "  {k} = {v:.10e}")?;
            }
            if !w.detail.is_empty() {
                writeln!(f, "  {}", w.detail)?;
            }
        }
        for (x, why) in &self.skipped {
            writeln!(f, "  skipped {x}: {why}")?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "  note: {n}")?;
        }
        write!(
            f,
            "  tolerances: zero_tol={:e} eq_tol={:e} eps_schedule={:?} grid_points={}",
            self.config.zero_tol, self.config.eq_tol, self.config.eps_schedule, self.config.grid_points
        )
    }
}

/// Anything that can score every argument's contribution to a topic.
pub trait ContributionSource {
    fn column(&self, g: &Qbag, sem: &Semantics, a: usize) -> Result<Vec<ContributionValue>>;
    fn label(&self) -> String;
    /// Gradient-style sources are only held to faithfulness at differentiable points.
    fn needs_differentiability(&self) -> bool {
        false
    }
}

impl ContributionSource for Method {
    fn column(&self, g: &Qbag, sem: &Semantics, a: usize) -> Result<Vec<ContributionValue>> {
        contributions_to(g, sem, *self, a)
    }

    fn label(&self) -> String {
        self.slug().to_string()
    }

    fn needs_differentiability(&self) -> bool {
        *self == Method::Gradient
    }
}

fn sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

struct Ctx<'a> {
    g: &'a Qbag,
    sem: &'a Semantics,
    a: usize,
    cfg: &'a CheckConfig,
    column: Vec<ContributionValue>,
    nodes: Vec<usize>,
    sigma_a: f64,
}

impl Ctx<'_> {
    fn c(&self, x: usize) -> f64 {
        // Off-diagonal contributions are always defined.
        self.column[x].value().unwrap_or(f64::NAN)
    }

    fn contributors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.len()).filter(move |&x| x != self.a)
    }

    fn sigma_at(&self, x: usize, eps: f64) -> Result<f64> {
        topic_strength_with(self.g, self.sem, &self.nodes, self.a, x, eps)
    }

    fn name(&self, x: usize) -> String {
        self.g.name(x).to_string()
    }
}

/// Runs one principle check with an arbitrary contribution source.
pub fn check_with(
    principle: PrincipleId,
    g: &Qbag,
    sem: &Semantics,
    source: &dyn ContributionSource,
    topic: &str,
    cfg: &CheckConfig,
) -> Result<PrincipleReport> {
    cfg.validate()?;
    let a = g.index_of(topic)?;
    let ctx = Ctx {
        g,
        sem,
        a,
        cfg,
        column: source.column(g, sem, a)?,
        nodes: topic_nodes(g, a),
        sigma_a: evaluate(g, sem)?.value(a),
    };
    let mut report = PrincipleReport {
        principle,
        verdict: Verdict::SatisfiedOnInstance,
        semantics: sem.to_string(),
        method: source.label(),
        topic: topic.to_string(),
        witness: None,
        skipped: Vec::new(),
        note: None,
        config: cfg.clone(),
    };
    let witness = match principle {
        PrincipleId::ContributionExistence => contribution_existence(&ctx),
        PrincipleId::QuantContributionExistence => quant_contribution_existence(&ctx),
        PrincipleId::Directionality => directionality(&ctx),
        PrincipleId::Counterfactuality => counterfactuality(&ctx, false)?,
        PrincipleId::QuantCounterfactuality => counterfactuality(&ctx, true)?,
        PrincipleId::LocalFaithfulness | PrincipleId::QuantLocalFaithfulness => {
            report.note = Some("numeric probe at the schedule's resolution; absence of a witness is not a proof".into());
            let skip = kink_skips(&ctx, source)?;
            report.skipped = skip
                .iter()
                .map(|&x| (ctx.name(x), "influence passes a non-differentiable point".to_string()))
                .collect();
            if principle == PrincipleId::LocalFaithfulness {
                local_faithfulness(&ctx, &skip)?
            } else {
                quant_local_faithfulness(&ctx, &skip)?
            }
        }
        PrincipleId::StrongFaithfulness => {
            report.note = Some("numeric sweep over a uniform grid; absence of a witness is not a proof".into());
            strong_faithfulness(&ctx)?
        }
        PrincipleId::Proximity => proximity(&ctx),
    };
    if let Some(w) = witness {
        report.verdict = Verdict::Violation;
        report.witness = Some(w);
    }
    Ok(report)
}

/// Runs one principle check for a built-in contribution method.
pub fn check(
    principle: PrincipleId,
    g: &Qbag,
    sem: &Semantics,
    method: Method,
    topic: &str,
    cfg: &CheckConfig,
) -> Result<PrincipleReport> {
    check_with(principle, g, sem, &method, topic, cfg)
}

macro_rules! checker {
    ($(#[$doc:meta])* $name:ident, $id:ident) => {
        $(#[$doc])*
        pub fn $name(g: &Qbag, sem: &Semantics, method: Method, topic: &str, cfg: &CheckConfig) -> Result<PrincipleReport> {
            check(PrincipleId::$id, g, sem, method, topic, cfg)
        }
    };
}

checker!(
    /// Some other argument must contribute when σ(a) differs from τ(a).
    check_contribution_existence, ContributionExistence);
checker!(
    /// Contributions must sum to σ(a) − τ(a).
    check_quant_contribution_existence, QuantContributionExistence);
checker!(
    /// Arguments without a path to the topic contribute nothing.
    check_directionality, Directionality);
checker!(check_strong_faithfulness, StrongFaithfulness);
checker!(check_local_faithfulness, LocalFaithfulness);
checker!(check_quant_local_faithfulness, QuantLocalFaithfulness);
checker!(check_counterfactuality, Counterfactuality);
checker!(check_quant_counterfactuality, QuantCounterfactuality);
checker!(check_proximity, Proximity);

fn contribution_existence(ctx: &Ctx) -> Option<Witness> {
    let delta = ctx.sigma_a - ctx.g.tau(ctx.a);
    if delta.abs() <= ctx.cfg.eq_tol || ctx.contributors().any(|x| ctx.c(x).abs() > ctx.cfg.zero_tol) {
        return None;
    }
    let mut quantities = vec![("sigma_minus_tau".to_string(), delta)];
    quantities.extend(ctx.contributors().map(|x| (format!("ctrb({})", ctx.name(x)), ctx.c(x))));
    Some(Witness {
        quantities,
        detail: "strength changed but no other argument has a nonzero contribution".into(),
        ..Default::default()
    })
}

fn quant_contribution_existence(ctx: &Ctx) -> Option<Witness> {
    let delta = ctx.sigma_a - ctx.g.tau(ctx.a);
    let sum: f64 = ctx.contributors().map(|x| ctx.c(x)).sum();
    ((sum - delta).abs() > ctx.cfg.eq_tol).then(|| Witness {
        quantities: vec![("sum_of_contributions".into(), sum), ("sigma_minus_tau".into(), delta)],
        detail: "contributions do not add up to the change in strength".into(),
        ..Default::default()
    })
}

fn directionality(ctx: &Ctx) -> Option<Witness> {
    ctx.contributors()
        .find(|&x| !ctx.g.reaches_idx(x, ctx.a) && ctx.c(x).abs() > ctx.cfg.zero_tol)
        .map(|x| Witness {
            contributor: Some(ctx.name(x)),
            quantities: vec![("contribution".into(), ctx.c(x))],
            detail: "no path to the topic, yet a nonzero contribution".into(),
            ..Default::default()
        })
}

fn counterfactuality(ctx: &Ctx, quantitative: bool) -> Result<Option<Witness>> {
    let removal = contributions_to(ctx.g, ctx.sem, Method::Removal, ctx.a)?;
    for x in ctx.contributors() {
        let (c, d) = (ctx.c(x), removal[x].value().unwrap_or(f64::NAN));
        let bad = if quantitative {
            (c - d).abs() > ctx.cfg.eq_tol
        } else {
            sign(c, ctx.cfg.zero_tol) != sign(d, ctx.cfg.eq_tol)
        };
        if bad {
            return Ok(Some(Witness {
                contributor: Some(ctx.name(x)),
                quantities: vec![("contribution".into(), c), ("removal_delta".into(), d)],
                detail: if quantitative {
                    "contribution differs from the effect of removing the contributor".into()
                } else {
                    "contribution sign differs from the sign of the removal effect".into()
                },
                ..Default::default()
            }));
        }
    }
    Ok(None)
}

/// Contributors whose influence on the topic crosses a non-differentiable point.
fn kink_skips(ctx: &Ctx, source: &dyn ContributionSource) -> Result<Vec<usize>> {
    if !source.needs_differentiability() {
        return Ok(Vec::new());
    }
    let kinks = kink_arguments(ctx.g, ctx.sem, ctx.cfg.kink_tol)?;
    let (g, a) = (ctx.g, ctx.a);
    Ok(ctx
        .contributors()
        .filter(|&x| kinks.iter().any(|&k| g.reaches_idx(x, k) && (k == a || g.reaches_idx(k, a))))
        .collect())
}

fn local_faithfulness(ctx: &Ctx, skip: &[usize]) -> Result<Option<Witness>> {
    for x in ctx.contributors().filter(|x| !skip.contains(x)) {
        let c = ctx.c(x);
        let s = sign(c, ctx.cfg.zero_tol);
        if s == 0 {
            continue;
        }
        let tau = ctx.g.tau(x);
        let mut probes = Vec::new();
        let mut held = false;
        for &delta in &ctx.cfg.eps_schedule {
            let mut ok = true;
            for eps in [(tau - delta).max(0.0), (tau + delta).min(1.0)] {
                if eps == tau {
                    continue;
                }
                let diff = ctx.sigma_at(x, eps)? - ctx.sigma_a;
                let (t, xn) = (ctx.name(ctx.a), ctx.name(x));
                let probe = if eps == 0.0 || eps == 1.0 {
                    format!("tau({xn})={eps}")
                } else {
                    format!("tau({xn}){}{delta:e}", if eps > tau { '+' } else { '-' })
                };
                probes.push((format!("sigma({t})[{probe}] - sigma({t})"), diff));
                // Moving τ(x) by (eps − tau) must move σ(a) in direction s.
                let expected = if eps > tau { s } else { -s };
                if sign(diff, 0.0) != expected {
                    ok = false;
                }
            }
            if ok {
                held = true;
                break;
            }
        }
        if !held {
            let mut quantities = vec![("contribution".to_string(), c)];
            quantities.extend(probes);
            return Ok(Some(Witness {
                contributor: Some(ctx.name(x)),
                quantities,
                detail: "no probed neighbourhood moves the topic in the contribution's direction".into(),
                ..Default::default()
            }));
        }
    }
    Ok(None)
}

/// |e(ε)/ε| for each feasible signed perturbation, per direction (+ then −).
fn error_ratio_runs(ctx: &Ctx, x: usize) -> Result<Vec<Vec<(f64, f64)>>> {
    let c = ctx.c(x);
    let tau = ctx.g.tau(x);
    let mut runs = Vec::new();
    for dir in [1.0, -1.0] {
        let mut run = Vec::new();
        for &e in &ctx.cfg.eps_schedule {
            let eps = dir * e;
            let target = tau + eps;
            if !(0.0..=1.0).contains(&target) {
                continue;
            }
            let err = ctx.sigma_at(x, target)? - (ctx.sigma_a + eps * c);
            run.push((eps, (err / eps).abs()));
        }
        if !run.is_empty() {
            runs.push(run);
        }
    }
    Ok(runs)
}

fn ratios_vanish(run: &[(f64, f64)]) -> bool {
    let last = run.last().map(|r| r.1).unwrap_or(0.0);
    last <= QLF_RATIO_TOL || run.windows(2).all(|w| w[1].1 <= QLF_SHRINK_FACTOR * w[0].1)
}

fn quant_local_faithfulness(ctx: &Ctx, skip: &[usize]) -> Result<Option<Witness>> {
    for x in ctx.contributors().filter(|x| !skip.contains(x)) {
        for run in error_ratio_runs(ctx, x)? {
            if !ratios_vanish(&run) {
                let mut quantities = vec![("contribution".to_string(), ctx.c(x))];
                quantities.extend(run.iter().map(|&(eps, r)| (format!("|e(eps)/eps| at eps={eps:e}"), r)));
                return Ok(Some(Witness {
                    contributor: Some(ctx.name(x)),
                    quantities,
                    detail: "error ratio does not tend to 0".into(),
                    ..Default::default()
                }));
            }
        }
    }
    Ok(None)
}

fn strong_faithfulness(ctx: &Ctx) -> Result<Option<Witness>> {
    let steps = ctx.cfg.grid_points - 1;
    for x in ctx.contributors() {
        let c = ctx.c(x);
        let s = sign(c, ctx.cfg.zero_tol);
        let tau = ctx.g.tau(x);
        for i in 0..=steps {
            let eps = i as f64 / steps as f64;
            if eps == tau {
                continue;
            }
            let diff = ctx.sigma_at(x, eps)? - ctx.sigma_a;
            let ok = if s == 0 {
                diff.abs() <= ctx.cfg.eq_tol
            } else {
                sign(diff, 0.0) == if eps > tau { s } else { -s }
            };
            if !ok {
                return Ok(Some(Witness {
                    contributor: Some(ctx.name(x)),
                    quantities: vec![
                        ("contribution".into(), c),
                        ("epsilon".into(), eps),
                        (format!("sigma({t})[tau({xn})=epsilon] - sigma({t})", t = ctx.name(ctx.a), xn = ctx.name(x)), diff),
                    ],
                    detail: "the effect of changing the contributor's initial strength disagrees with the contribution"
                        .into(),
                    ..Default::default()
                }));
            }
        }
    }
    Ok(None)
}

fn proximity(ctx: &Ctx) -> Option<Witness> {
    for y in ctx.contributors() {
        for x in ctx.contributors() {
            if x == y || !ctx.g.strictly_closer_idx(y, x, ctx.a) {
                continue;
            }
            let (cy, cx) = (ctx.c(y), ctx.c(x));
            if cy.abs() + ctx.cfg.eq_tol < cx.abs() {
                return Some(Witness {
                    contributor: Some(ctx.name(x)),
                    other: Some(ctx.name(y)),
                    quantities: vec![("closer_contribution".into(), cy), ("farther_contribution".into(), cx)],
                    detail: format!("{} is strictly closer but contributes less in magnitude", ctx.name(y)),
                });
            }
        }
    }
    None
}

/// Error ratios |e(ε)/ε| of x's contribution to `topic`, per perturbation direction.
pub fn error_ratios(
    g: &Qbag,
    sem: &Semantics,
    method: Method,
    topic: &str,
    x: &str,
    cfg: &CheckConfig,
) -> Result<Vec<Vec<(f64, f64)>>> {
    let a = g.index_of(topic)?;
    let xi = g.index_of(x)?;
    let ctx = Ctx {
        g,
        sem,
        a,
        cfg,
        column: contributions_to(g, sem, method, a)?,
        nodes: topic_nodes(g, a),
        sigma_a: evaluate(g, sem)?.value(a),
    };
    error_ratio_runs(&ctx, xi)
}

/// σ(topic) as τ(x) sweeps a uniform grid on [0, 1].
pub fn sweep(g: &Qbag, sem: &Semantics, x: &str, topic: &str, points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(QbagError::InvalidParameter("a sweep needs at least 2 points".into()));
    }
    let (xi, a) = (g.index_of(x)?, g.index_of(topic)?);
    let nodes = topic_nodes(g, a);
    (0..points)
        .map(|i| {
            let eps = i as f64 / (points - 1) as f64;
            Ok((eps, topic_strength_with(g, sem, &nodes, a, xi, eps)?))
        })
        .collect()
}

/// Whether σ(a) is monotone in τ(x) on a uniform grid (up to the default eq_tol).
pub fn is_monotonic_effect_numeric(g: &Qbag, sem: &Semantics, x: &str, a: &str, grid_points: usize) -> Result<bool> {
    let tol = CheckConfig::default().eq_tol;
    let values: Vec<f64> = sweep(g, sem, x, a, grid_points)?.into_iter().map(|p| p.1).collect();
    let up = values.windows(2).all(|w| w[1] >= w[0] - tol);
    let down = values.windows(2).all(|w| w[1] <= w[0] + tol);
    Ok(up || down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_qbag;

    fn ceneg() -> Qbag {
        build_qbag(&[("a", 0.5), ("b", 1.0), ("c", 1.0)], &[("b", "a"), ("c", "a")], &[]).unwrap()
    }

    fn intro(e: f64) -> Qbag {
        build_qbag(
            &[("a", 0.5), ("b", 0.0), ("c", 0.0), ("d", 0.0), ("e", e)],
            &[("c", "a"), ("d", "a")],
            &[("b", "a"), ("e", "b"), ("e", "c"), ("e", "d")],
        )
        .unwrap()
    }

    struct Ones;
    impl ContributionSource for Ones {
        fn column(&self, g: &Qbag, _: &Semantics, _: usize) -> Result<Vec<ContributionValue>> {
            Ok(vec![ContributionValue::Value(1.0); g.len()])
        }
        fn label(&self) -> String {
            "ones".into()
        }
    }

    #[test]
    fn existence() {
        let cfg = CheckConfig::default();
        let g = ceneg();
        assert!(check_contribution_existence(&g, &Semantics::dfquad(), Method::Removal, "a", &cfg)
            .unwrap()
            .is_violation());
        assert!(!check_contribution_existence(&g, &Semantics::qe(), Method::Removal, "a", &cfg)
            .unwrap()
            .is_violation());
        let r = check_quant_contribution_existence(&g, &Semantics::qe(), Method::Removal, "a", &cfg).unwrap();
        assert!(r.is_violation());
        let w = r.witness.unwrap();
        assert!((w.quantities[0].1 + 0.3).abs() < 1e-12 && (w.quantities[1].1 + 0.4).abs() < 1e-12);
    }

    #[test]
    fn directionality_sensitivity() {
        let g = build_qbag(&[("a", 0.5), ("b", 0.5), ("c", 0.5)], &[("b", "a")], &[("c", "b")]).unwrap();
        let r = check_with(PrincipleId::Directionality, &g, &Semantics::dfquad(), &Ones, "c", &CheckConfig::default())
            .unwrap();
        assert!(r.is_violation());
        for m in Method::ALL {
            for t in ["a", "b", "c"] {
                assert!(!check_directionality(&g, &Semantics::dfquad(), m, t, &CheckConfig::default())
                    .unwrap()
                    .is_violation());
            }
        }
    }

    #[test]
    fn gradient_counterfactuality_on_intro() {
        let r = check_counterfactuality(&intro(0.5), &Semantics::dfquad(), Method::Gradient, "a", &CheckConfig::default())
            .unwrap();
        assert!(r.is_violation());
    }

    #[test]
    fn monotonic_effect() {
        assert!(!is_monotonic_effect_numeric(&intro(0.5), &Semantics::dfquad(), "e", "a", 101).unwrap());
        let g = build_qbag(&[("x", 0.5), ("a", 0.5)], &[], &[("x", "a")]).unwrap();
        assert!(is_monotonic_effect_numeric(&g, &Semantics::dfquad(), "x", "a", 101).unwrap());
        let g = build_qbag::<_, &str>(&[("x", 0.5), ("a", 0.5)], &[], &[]).unwrap();
        assert!(is_monotonic_effect_numeric(&g, &Semantics::dfquad(), "x", "a", 101).unwrap());
    }

    #[test]
    fn strong_faithfulness_intro() {
        for m in Method::ALL {
            let r = check_strong_faithfulness(&intro(0.2), &Semantics::dfquad(), m, "a", &CheckConfig::default())
                .unwrap();
            assert!(r.is_violation(), "{m}");
        }
        let g = build_qbag::<_, &str>(&[("x", 0.5), ("a", 0.5)], &[], &[]).unwrap();
        assert!(!check_strong_faithfulness(&g, &Semantics::qe(), Method::Gradient, "a", &CheckConfig::default())
            .unwrap()
            .is_violation());
    }

    #[test]
    fn parse_names() {
        for p in PrincipleId::ALL {
            assert_eq!(PrincipleId::parse(p.slug()).unwrap(), p);
        }
        assert!(PrincipleId::parse("nope").is_err());
        let bad = CheckConfig { eps_schedule: vec![1e-3, 1e-2], ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
