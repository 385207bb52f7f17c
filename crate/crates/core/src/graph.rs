//! The QBAG data model and graph surgery.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use crate::error::{QbagError, Result};

/// A subset of a graph's arguments, addressed by argument-list position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArgSet {
    words: Vec<u64>,
    len: usize,
}

impl ArgSet {
    pub fn empty(len: usize) -> Self {
        ArgSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Number of positions this set ranges over (the owning graph's size).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} outside a set over {} arguments", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ArgSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= *o;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// Checks the token rules for argument ids.
pub fn valid_argument_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || c == ',')
}

/// An immutable, validated, acyclic quantitative bipolar argumentation graph.
///
/// Arguments keep their insertion order; every index used by this crate is a
/// position in that list.
#[derive(Clone, Debug, PartialEq)]
pub struct Qbag {
    names: Vec<String>,
    tau: Vec<f64>,
    attacks: Vec<(usize, usize)>,
    supports: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    supporters: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    position: Vec<usize>,
    descendants: Vec<ArgSet>,
}

/// Validates and builds a QBAG from named arguments and edge lists.
pub fn build_qbag<A, E>(args: &[(A, f64)], attacks: &[(E, E)], supports: &[(E, E)]) -> Result<Qbag>
where
    A: AsRef<str>,
    E: AsRef<str>,
{
    let mut index = HashMap::new();
    let mut names = Vec::with_capacity(args.len());
    let mut tau = Vec::with_capacity(args.len());
    for (id, t) in args {
        let id = id.as_ref();
        if !valid_argument_id(id) {
            return Err(QbagError::InvalidArgumentId(id.to_string()));
        }
        if index.insert(id.to_string(), names.len()).is_some() {
            return Err(QbagError::DuplicateArgument(id.to_string()));
        }
        if !(0.0..=1.0).contains(t) {
            return Err(QbagError::StrengthOutOfRange { id: id.to_string(), value: *t });
        }
        names.push(id.to_string());
        tau.push(*t);
    }
    let resolve = |edges: &[(E, E)]| -> Result<BTreeSet<(usize, usize)>> {
        edges
            .iter()
            .map(|(s, d)| {
                let (s, d) = (s.as_ref(), d.as_ref());
                match (index.get(s), index.get(d)) {
                    (Some(&i), Some(&j)) => Ok((i, j)),
                    _ => Err(QbagError::UnknownEndpoint(s.to_string(), d.to_string())),
                }
            })
            .collect()
    };
    let att = resolve(attacks)?;
    let sup = resolve(supports)?;
    if let Some(&(s, d)) = att.intersection(&sup).next() {
        return Err(QbagError::OverlappingRelation(names[s].clone(), names[d].clone()));
    }
    Qbag::from_parts(names, tau, att.into_iter().collect(), sup.into_iter().collect())
}

impl Qbag {
    /// Builds the derived indices; edges must already be sorted, deduplicated and in range.
    fn from_parts(
        names: Vec<String>,
        tau: Vec<f64>,
        attacks: Vec<(usize, usize)>,
        supports: Vec<(usize, usize)>,
    ) -> Result<Qbag> {
        let n = names.len();
        let mut attackers = vec![Vec::new(); n];
        let mut supporters = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(s, d) in &attacks {
            attackers[d].push(s);
            children[s].push(d);
        }
        for &(s, d) in &supports {
            supporters[d].push(s);
            children[s].push(d);
        }
        for list in attackers.iter_mut().chain(supporters.iter_mut()).chain(children.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }

        let mut indegree: Vec<usize> = (0..n).map(|v| attackers[v].len() + supporters[v].len()).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &c in &children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(Reverse(c));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).filter(|&v| indegree[v] > 0).map(|v| names[v].clone()).collect();
            return Err(QbagError::CyclicGraph(stuck));
        }
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let mut descendants = vec![ArgSet::empty(n); n];
        for &v in order.iter().rev() {
            let mut d = ArgSet::empty(n);
            for &c in &children[v] {
                d.insert(c);
                d.union_with(&descendants[c]);
            }
            descendants[v] = d;
        }
        Ok(Qbag { names, tau, attacks, supports, attackers, supporters, children, order, position, descendants })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == id)
            .ok_or_else(|| QbagError::UnknownArgument(id.to_string()))
    }

    pub fn tau(&self, i: usize) -> f64 {
        self.tau[i]
    }

    pub fn taus(&self) -> &[f64] {
        &self.tau
    }

    pub fn initial_strength(&self, id: &str) -> Result<f64> {
        Ok(self.tau[self.index_of(id)?])
    }

    /// Attack edges as (source, target) indices, sorted.
    pub fn attack_edges(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    /// Support edges as (source, target) indices, sorted.
    pub fn support_edges(&self) -> &[(usize, usize)] {
        &self.supports
    }

    pub fn attack_pairs(&self) -> Vec<(&str, &str)> {
        self.attacks.iter().map(|&(s, d)| (self.name(s), self.name(d))).collect()
    }

    pub fn support_pairs(&self) -> Vec<(&str, &str)> {
        self.supports.iter().map(|&(s, d)| (self.name(s), self.name(d))).collect()
    }

    /// Direct attackers of `v`, ascending by index.
    pub fn attackers(&self, v: usize) -> &[usize] {
        &self.attackers[v]
    }

    /// Direct supporters of `v`, ascending by index.
    pub fn supporters(&self, v: usize) -> &[usize] {
        &self.supporters[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn all(&self) -> ArgSet {
        ArgSet::full(self.len())
    }

    /// Induced subgraph on `keep`; arguments keep their relative order.
    pub fn restrict(&self, keep: &ArgSet) -> Result<Qbag> {
        if keep.universe() != self.len() {
            return Err(QbagError::UnknownArgument(format!(
                "set over {} arguments used with a graph of {}",
                keep.universe(),
                self.len()
            )));
        }
        let mut remap = vec![usize::MAX; self.len()];
        let mut names = Vec::new();
        let mut tau = Vec::new();
        for i in keep.iter() {
            remap[i] = names.len();
            names.push(self.names[i].clone());
            tau.push(self.tau[i]);
        }
        let filter = |edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
            let mut out: Vec<_> = edges
                .iter()
                .filter(|&&(s, d)| keep.contains(s) && keep.contains(d))
                .map(|&(s, d)| (remap[s], remap[d]))
                .collect();
            out.sort_unstable();
            out
        };
        Qbag::from_parts(names, tau, filter(&self.attacks), filter(&self.supports))
    }

    /// Induced subgraph on the named arguments.
    pub fn restrict_to(&self, keep: &[&str]) -> Result<Qbag> {
        let mut set = ArgSet::empty(self.len());
        for id in keep {
            set.insert(self.index_of(id)?);
        }
        self.restrict(&set)
    }

    /// The graph without argument `x` (and its edges).
    pub fn without(&self, x: &str) -> Result<Qbag> {
        let i = self.index_of(x)?;
        self.restrict(&self.all().without(i))
    }

    /// Drops every attack and support edge ending in `x`.
    pub fn remove_incoming(&self, x: &str) -> Result<Qbag> {
        let i = self.index_of(x)?;
        let keep = |edges: &[(usize, usize)]| edges.iter().copied().filter(|&(_, d)| d != i).collect();
        Qbag::from_parts(self.names.clone(), self.tau.clone(), keep(&self.attacks), keep(&self.supports))
    }

    /// Copy of the graph with τ(x) replaced by `eps`.
    pub fn with_initial_strength(&self, x: &str, eps: f64) -> Result<Qbag> {
        let i = self.index_of(x)?;
        if !(0.0..=1.0).contains(&eps) {
            return Err(QbagError::StrengthOutOfRange { id: x.to_string(), value: eps });
        }
        let mut g = self.clone();
        g.tau[i] = eps;
        Ok(g)
    }

    /// Topological order, ties broken by argument-list position.
    pub fn topological_order(&self) -> Vec<&str> {
        self.order.iter().map(|&i| self.name(i)).collect()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of argument `v` in the topological order.
    pub fn topo_position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// True iff a directed path of length at least one leads from `x` to `a`.
    pub fn reaches_idx(&self, x: usize, a: usize) -> bool {
        self.descendants[x].contains(a)
    }

    pub fn reaches(&self, x: &str, a: &str) -> Result<bool> {
        Ok(self.reaches_idx(self.index_of(x)?, self.index_of(a)?))
    }

    /// Arguments with a path to `a`, excluding `a`.
    pub fn ancestors(&self, a: usize) -> ArgSet {
        ArgSet::from_indices(self.len(), (0..self.len()).filter(|&v| self.reaches_idx(v, a)))
    }

    pub fn descendants(&self, x: usize) -> &ArgSet {
        &self.descendants[x]
    }

    /// True iff `y` lies on every directed path from `x` to `a` (and one exists).
    pub fn strictly_closer_idx(&self, y: usize, x: usize, a: usize) -> bool {
        if !self.reaches_idx(x, a) {
            return false;
        }
        // Search from x with y deleted.
        let mut seen = ArgSet::empty(self.len());
        let mut stack = vec![x];
        seen.insert(x);
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                if c == y || seen.contains(c) {
                    continue;
                }
                if c == a {
                    return false;
                }
                seen.insert(c);
                stack.push(c);
            }
        }
        true
    }

    pub fn strictly_closer(&self, y: &str, x: &str, a: &str) -> Result<bool> {
        let (yi, xi, ai) = (self.index_of(y)?, self.index_of(x)?, self.index_of(a)?);
        if yi == xi || yi == ai || xi == ai {
            return Err(QbagError::NotDistinct(vec![y.to_string(), x.to_string(), a.to_string()]));
        }
        Ok(self.strictly_closer_idx(yi, xi, ai))
    }

    /// True iff no path from `b` to `c` uses an attack edge; vacuously true without paths.
    pub fn all_paths_pure_support_idx(&self, b: usize, c: usize) -> bool {
        let from_b = |u: usize| u == b || self.reaches_idx(b, u);
        let to_c = |v: usize| v == c || self.reaches_idx(v, c);
        !self.attacks.iter().any(|&(u, v)| from_b(u) && to_c(v))
    }

    pub fn all_paths_pure_support(&self, b: &str, c: &str) -> Result<bool> {
        Ok(self.all_paths_pure_support_idx(self.index_of(b)?, self.index_of(c)?))
    }

    /// Structural equality that ignores argument order.
    pub fn same_structure(&self, other: &Qbag) -> bool {
        let named = |g: &Qbag| {
            let args: BTreeSet<(String, u64)> =
                g.names.iter().zip(&g.tau).map(|(n, t)| (n.clone(), t.to_bits())).collect();
            let att: BTreeSet<(&str, &str)> = g.attack_pairs().into_iter().collect();
            let sup: BTreeSet<(&str, &str)> = g.support_pairs().into_iter().collect();
            (args, att.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>(),
             sup.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>())
        };
        named(self) == named(other)
    }
}
