//! Exact homomorphism search.
//!
//! Backtracking with maintained arc consistency: unary constraints filter
//! candidate domains up front; binary constraints propagate through
//! bit-matrices (lazy binary relations are memoized under a size cap);
//! materialized ternary relations get support-based GAC; higher arities are
//! forward-checked; other lazy relations are checked once their scope is
//! fully assigned. Every complete assignment is re-verified against every
//! constraint before it is reported, so weak propagation can never produce a
//! false witness.
//!
//! The default variable order is static (smallest index first) with values
//! tried in ascending order, which makes the returned witness the
//! lexicographically least homomorphism. [`exhaustive_find_homomorphism`]
//! enumerates all |T|^|R| maps directly and is kept free of the search
//! machinery so the two can serve as each other's oracles.

use crate::error::{Error, Result};
use crate::structure::{BitMatrix, Homomorphism, Relation, RelationalStructure, Tuple};
use std::sync::Arc;

/// Default node budget when `CSPLIFT_MAX_NODES` is unset.
pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarOrdering {
    /// Smallest variable index first (the documented witness order).
    Static,
    /// Fewest remaining values first, ties by index. Used by the indicator
    /// searches where thousands of table cells are mostly unconstrained.
    MinRemaining,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub node_limit: u64,
    pub ordering: VarOrdering,
}

impl Default for SearchOptions {
    fn default() -> Self {
        let node_limit = std::env::var("CSPLIFT_MAX_NODES")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_NODE_LIMIT);
        SearchOptions { node_limit, ordering: VarOrdering::Static }
    }
}

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
    len: u32,
}

impl BitSet {
    fn from_values(universe: usize, values: &[u32]) -> BitSet {
        let mut words = vec![0u64; universe.div_ceil(64)];
        let mut len = 0;
        for &v in values {
            let w = &mut words[v as usize / 64];
            let bit = 1u64 << (v % 64);
            if *w & bit == 0 {
                *w |= bit;
                len += 1;
            }
        }
        BitSet { words, len }
    }

    fn contains(&self, v: u32) -> bool {
        self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    fn remove(&mut self, v: u32) {
        let w = &mut self.words[v as usize / 64];
        let bit = 1u64 << (v % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
        }
    }

    fn assign(&mut self, v: u32) {
        for w in &mut self.words {
            *w = 0;
        }
        self.words[v as usize / 64] = 1 << (v % 64);
        self.len = 1;
    }

    fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i * 64 + w.trailing_zeros() as usize) as u32);
            }
        }
        None
    }

    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some((i * 64) as u32 + b)
                }
            })
        })
    }

    fn intersects(&self, row: &[u64]) -> bool {
        self.words.iter().zip(row).any(|(a, b)| a & b != 0)
    }
}

enum Prop<'a> {
    /// Binary constraint through a bit-matrix (x at row position, y at column).
    Binary { x: usize, y: usize, m: Arc<BitMatrix> },
    /// Support-scan GAC over a materialized tuple list (arity 3).
    Tuples { scope: Vec<usize>, tuples: &'a [Tuple] },
    /// Forward checking for materialized arity >= 4.
    Big { scope: Vec<usize>, tuples: &'a [Tuple] },
    /// Lazy relation checked once the scope is fully assigned.
    Complete { scope: Vec<usize>, rel: &'a Relation },
}

impl Prop<'_> {
    fn vars(&self) -> Vec<usize> {
        match self {
            Prop::Binary { x, y, .. } => vec![*x, *y],
            Prop::Tuples { scope, .. } | Prop::Big { scope, .. } | Prop::Complete { scope, .. } => {
                scope.clone()
            }
        }
    }
}

/// A finite constraint problem handed to the engine: per-variable candidate
/// values plus (scope, relation) constraints over one value universe.
pub struct Problem<'a> {
    pub universe: usize,
    pub domains: Vec<Vec<u32>>,
    pub constraints: Vec<(Vec<usize>, &'a Relation)>,
}

pub struct Engine<'a> {
    universe: usize,
    domains: Vec<BitSet>,
    props: Vec<Prop<'a>>,
    watch: Vec<Vec<usize>>,
    checks: Vec<(Vec<usize>, &'a Relation)>,
    options: SearchOptions,
    nodes: u64,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &Problem<'a>, options: SearchOptions) -> Result<Engine<'a>> {
        let nvars = problem.domains.len();
        let mut domains: Vec<BitSet> =
            problem.domains.iter().map(|d| BitSet::from_values(problem.universe, d)).collect();
        let mut props = Vec::new();
        let mut checks = Vec::new();
        for (scope, rel) in &problem.constraints {
            if scope.len() != rel.arity {
                return Err(Error::Precondition(format!(
                    "scope of length {} on relation {} of arity {}",
                    scope.len(),
                    rel.name,
                    rel.arity
                )));
            }
            checks.push((scope.clone(), *rel));
            match rel.arity {
                1 => {
                    // unary constraints are exact domain filters
                    let d = &mut domains[scope[0]];
                    let vals: Vec<u32> = d.iter().filter(|&v| rel.contains(&[v])).collect();
                    *d = BitSet::from_values(problem.universe, &vals);
                }
                2 => {
                    if let Some(m) = rel.matrix(problem.universe) {
                        props.push(Prop::Binary { x: scope[0], y: scope[1], m });
                    } else {
                        props.push(Prop::Complete { scope: scope.clone(), rel });
                    }
                }
                3 if !rel.is_lazy() => {
                    props.push(Prop::Tuples { scope: scope.clone(), tuples: rel.tuples()? });
                }
                _ if !rel.is_lazy() => {
                    props.push(Prop::Big { scope: scope.clone(), tuples: rel.tuples()? });
                }
                _ => props.push(Prop::Complete { scope: scope.clone(), rel }),
            }
        }
        let mut watch = vec![Vec::new(); nvars];
        for (ci, p) in props.iter().enumerate() {
            for v in p.vars() {
                if !watch[v].contains(&ci) {
                    watch[v].push(ci);
                }
            }
        }
        Ok(Engine { universe: problem.universe, domains, props, watch, checks, options, nodes: 0 })
    }

    fn all_singleton(&self, scope: &[usize]) -> bool {
        scope.iter().all(|&v| self.domains[v].len == 1)
    }

    fn scope_values(&self, scope: &[usize]) -> Tuple {
        scope.iter().map(|&v| self.domains[v].first().unwrap()).collect()
    }

    /// Revise one propagator; returns changed variables, or None on wipeout.
    fn revise(&mut self, ci: usize) -> Option<Vec<usize>> {
        let mut changed = Vec::new();
        match &self.props[ci] {
            Prop::Binary { x, y, m } => {
                let (x, y, m) = (*x, *y, m.clone());
                if x == y {
                    let bad: Vec<u32> =
                        self.domains[x].iter().filter(|&a| !m.get(a as usize, a as usize)).collect();
                    if !bad.is_empty() {
                        for a in bad {
                            self.domains[x].remove(a);
                        }
                        changed.push(x);
                    }
                } else {
                    let bad: Vec<u32> = self.domains[x]
                        .iter()
                        .filter(|&a| !self.domains[y].intersects(m.row(a as usize)))
                        .collect();
                    if !bad.is_empty() {
                        for a in bad {
                            self.domains[x].remove(a);
                        }
                        changed.push(x);
                    }
                    let bad: Vec<u32> = self.domains[y]
                        .iter()
                        .filter(|&b| !self.domains[x].intersects(m.col(b as usize)))
                        .collect();
                    if !bad.is_empty() {
                        for b in bad {
                            self.domains[y].remove(b);
                        }
                        changed.push(y);
                    }
                }
                for &v in &changed {
                    if self.domains[v].len == 0 {
                        return None;
                    }
                }
            }
            Prop::Tuples { scope, tuples } => {
                let scope = scope.clone();
                let tuples = *tuples;
                let mut supported: Vec<BitSet> = scope
                    .iter()
                    .map(|_| BitSet::from_values(self.universe, &[]))
                    .collect();
                'tup: for t in tuples {
                    for (p, &v) in scope.iter().enumerate() {
                        if !self.domains[v].contains(t[p]) {
                            continue 'tup;
                        }
                    }
                    for (p, _) in scope.iter().enumerate() {
                        if !supported[p].contains(t[p]) {
                            supported[p].words[t[p] as usize / 64] |= 1 << (t[p] % 64);
                            supported[p].len += 1;
                        }
                    }
                }
                for (p, &v) in scope.iter().enumerate() {
                    let bad: Vec<u32> =
                        self.domains[v].iter().filter(|&a| !supported[p].contains(a)).collect();
                    if !bad.is_empty() {
                        for a in bad {
                            self.domains[v].remove(a);
                        }
                        changed.push(v);
                        if self.domains[v].len == 0 {
                            return None;
                        }
                    }
                }
            }
            Prop::Big { scope, tuples } => {
                let scope = scope.clone();
                let tuples = *tuples;
                let unassigned: Vec<usize> =
                    scope.iter().copied().filter(|&v| self.domains[v].len > 1).collect();
                let distinct: std::collections::BTreeSet<usize> = unassigned.iter().copied().collect();
                if distinct.len() > 1 {
                    return Some(changed);
                }
                if distinct.is_empty() {
                    let vals = self.scope_values(&scope);
                    if tuples.binary_search_by(|t| t.as_slice().cmp(&vals)).is_err() {
                        return None;
                    }
                    return Some(changed);
                }
                let free = *distinct.iter().next().unwrap();
                let mut allowed = BitSet::from_values(self.universe, &[]);
                'scan: for t in tuples {
                    let mut cand: Option<u32> = None;
                    for (p, &v) in scope.iter().enumerate() {
                        if v == free {
                            match cand {
                                None => cand = Some(t[p]),
                                Some(c) if c == t[p] => {}
                                _ => continue 'scan,
                            }
                            if !self.domains[v].contains(t[p]) {
                                continue 'scan;
                            }
                        } else if self.domains[v].first() != Some(t[p]) {
                            continue 'scan;
                        }
                    }
                    if let Some(c) = cand {
                        if !allowed.contains(c) {
                            allowed.words[c as usize / 64] |= 1 << (c % 64);
                            allowed.len += 1;
                        }
                    }
                }
                let bad: Vec<u32> =
                    self.domains[free].iter().filter(|&a| !allowed.contains(a)).collect();
                if !bad.is_empty() {
                    for a in bad {
                        self.domains[free].remove(a);
                    }
                    changed.push(free);
                    if self.domains[free].len == 0 {
                        return None;
                    }
                }
            }
            Prop::Complete { scope, rel } => {
                let scope = scope.clone();
                let rel = *rel;
                if self.all_singleton(&scope) && !rel.contains(&self.scope_values(&scope)) {
                    return None;
                }
            }
        }
        Some(changed)
    }

    /// AC-3 loop from the given seed constraints; false on wipeout.
    fn propagate(&mut self, seed: Vec<usize>) -> bool {
        let mut queue: std::collections::VecDeque<usize> = seed.into();
        let mut queued = vec![false; self.props.len()];
        for &c in &queue {
            queued[c] = true;
        }
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            match self.revise(ci) {
                None => return false,
                Some(changed) => {
                    for v in changed {
                        for &cj in &self.watch[v] {
                            if !queued[cj] {
                                queued[cj] = true;
                                queue.push_back(cj);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn pick_var(&self) -> Option<usize> {
        match self.options.ordering {
            VarOrdering::Static => (0..self.domains.len()).find(|&v| self.domains[v].len > 1),
            VarOrdering::MinRemaining => (0..self.domains.len())
                .filter(|&v| self.domains[v].len > 1)
                .min_by_key(|&v| (self.domains[v].len, v)),
        }
    }

    /// Exact verification of a complete assignment against every constraint.
    fn verify(&self, assignment: &[u32]) -> bool {
        self.checks.iter().all(|(scope, rel)| {
            let t: Tuple = scope.iter().map(|&v| assignment[v]).collect();
            rel.contains(&t)
        })
    }

    /// Values of `var` with identical current-domain-masked rows in every
    /// constraint watching it behave identically in the whole subtree, so
    /// only the least of each class needs branching. Applies only when all
    /// watchers are binary bit-matrix constraints; keeping class minima
    /// preserves the lexicographically least witness.
    fn interchangeable_reps(&self, var: usize, values: Vec<u32>) -> Vec<u32> {
        if values.len() < 32 {
            return values;
        }
        let mut matrices: Vec<(bool, bool, Arc<BitMatrix>, usize)> = Vec::new();
        for &ci in &self.watch[var] {
            match &self.props[ci] {
                Prop::Binary { x, y, m } => {
                    matrices.push((*x == var, *y == var, m.clone(), if *x == var { *y } else { *x }));
                }
                _ => return values,
            }
        }
        let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
        let mut reps = Vec::new();
        let mut signature = Vec::new();
        for a in values {
            signature.clear();
            for (at_row, at_col, m, other) in &matrices {
                if *at_row && *at_col {
                    signature.push(m.get(a as usize, a as usize) as u64);
                    continue;
                }
                let side = if *at_row { m.row(a as usize) } else { m.col(a as usize) };
                let mask = &self.domains[*other].words;
                signature.extend(side.iter().zip(mask).map(|(w, d)| w & d));
            }
            if seen.insert(signature.clone()) {
                reps.push(a);
            }
        }
        reps
    }

    fn dfs(&mut self, out: &mut Vec<Vec<u32>>, limit: usize) -> Result<bool> {
        let var = match self.pick_var() {
            Some(v) => v,
            None => {
                if self.domains.iter().any(|d| d.len == 0) {
                    return Ok(false);
                }
                let assignment: Vec<u32> = self.domains.iter().map(|d| d.first().unwrap()).collect();
                if self.verify(&assignment) {
                    out.push(assignment);
                    return Ok(out.len() >= limit);
                }
                return Ok(false);
            }
        };
        let values: Vec<u32> = self.domains[var].iter().collect();
        // merging prunes distinct solutions, so only single-witness searches use it
        let values =
            if limit == 1 { self.interchangeable_reps(var, values) } else { values };
        for a in values {
            self.nodes += 1;
            if self.nodes > self.options.node_limit {
                return Err(Error::NodeBudget { limit: self.options.node_limit });
            }
            let saved = self.domains.clone();
            self.domains[var].assign(a);
            if self.propagate(self.watch[var].clone()) && self.dfs(out, limit)? {
                return Ok(true);
            }
            self.domains = saved;
        }
        Ok(false)
    }

    pub fn solve(mut self) -> Result<Option<Vec<u32>>> {
        if self.domains.iter().any(|d| d.len == 0) {
            return Ok(None);
        }
        if !self.propagate((0..self.props.len()).collect()) {
            return Ok(None);
        }
        let mut out = Vec::new();
        self.dfs(&mut out, 1)?;
        Ok(out.pop())
    }

    /// All solutions in lexicographic order, up to `limit`.
    pub fn solve_all(mut self, limit: usize) -> Result<Vec<Vec<u32>>> {
        if self.domains.iter().any(|d| d.len == 0) {
            return Ok(Vec::new());
        }
        if !self.propagate((0..self.props.len()).collect()) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        self.dfs(&mut out, limit)?;
        Ok(out)
    }
}

fn hom_problem<'a>(
    r: &'a RelationalStructure,
    t: &'a RelationalStructure,
    domains: Option<Vec<Vec<u32>>>,
) -> Result<Problem<'a>> {
    r.check_signature(t)?;
    let full: Vec<u32> = (0..t.domain_size as u32).collect();
    let domains = domains.unwrap_or_else(|| vec![full; r.domain_size]);
    let mut constraints = Vec::new();
    for (ri, rel) in r.relations.iter().enumerate() {
        for tuple in rel.tuples()? {
            let scope: Vec<usize> = tuple.iter().map(|&v| v as usize).collect();
            constraints.push((scope, &t.relations[ri]));
        }
    }
    constraints.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.name.cmp(&b.1.name)));
    constraints.dedup_by(|a, b| a.0 == b.0 && std::ptr::eq(a.1, b.1));
    Ok(Problem { universe: t.domain_size, domains, constraints })
}

/// Search for a homomorphism R -> T. Returns the lexicographically least
/// witness under the fixed ordering, or None (exact; no false negatives).
pub fn find_homomorphism(
    r: &RelationalStructure,
    t: &RelationalStructure,
) -> Result<Option<Homomorphism>> {
    find_homomorphism_opts(r, t, &SearchOptions::default())
}

pub fn find_homomorphism_opts(
    r: &RelationalStructure,
    t: &RelationalStructure,
    options: &SearchOptions,
) -> Result<Option<Homomorphism>> {
    let problem = hom_problem(r, t, None)?;
    let engine = Engine::new(&problem, options.clone())?;
    Ok(engine.solve()?.map(Homomorphism::new))
}

/// Homomorphism search with per-variable candidate restrictions.
pub fn find_homomorphism_with_domains(
    r: &RelationalStructure,
    t: &RelationalStructure,
    domains: Vec<Vec<u32>>,
    options: &SearchOptions,
) -> Result<Option<Homomorphism>> {
    let problem = hom_problem(r, t, Some(domains))?;
    let engine = Engine::new(&problem, options.clone())?;
    Ok(engine.solve()?.map(Homomorphism::new))
}

/// All homomorphisms R -> T in lexicographic order, up to `limit`.
pub fn find_all_homomorphisms(
    r: &RelationalStructure,
    t: &RelationalStructure,
    limit: usize,
) -> Result<Vec<Homomorphism>> {
    let problem = hom_problem(r, t, None)?;
    let engine = Engine::new(&problem, SearchOptions::default())?;
    Ok(engine.solve_all(limit)?.into_iter().map(Homomorphism::new).collect())
}

/// Cap on |T|^|R| for the exhaustive reference oracle.
pub const EXHAUSTIVE_CAP: u64 = 10_000_000;

fn exhaustive_scan(
    r: &RelationalStructure,
    t: &RelationalStructure,
    mut on_hom: impl FnMut(&[u32]) -> bool,
) -> Result<()> {
    r.check_signature(t)?;
    let n = r.domain_size;
    let d = t.domain_size as u64;
    if n > 0 {
        let total = d.checked_pow(n as u32).filter(|&x| x <= EXHAUSTIVE_CAP);
        if total.is_none() {
            return Err(Error::Capacity(format!("{d}^{n} maps exceed the exhaustive cap")));
        }
        if d == 0 {
            return Ok(());
        }
    }
    let mut map = vec![0u32; n];
    loop {
        let hom = Homomorphism::new(map.clone());
        let ok = r.relations.iter().enumerate().all(|(ri, rel)| {
            rel.tuples().map(|ts| ts.iter().all(|tu| t.relations[ri].contains(&hom.apply(tu)))).unwrap_or(false)
        });
        if ok && !on_hom(&map) {
            return Ok(());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            map[i] += 1;
            if (map[i] as u64) < d {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Independent brute-force oracle: enumerate every map in lexicographic order
/// and return the first homomorphism. Shares no code with the search engine.
pub fn exhaustive_find_homomorphism(
    r: &RelationalStructure,
    t: &RelationalStructure,
) -> Result<Option<Homomorphism>> {
    let mut found = None;
    exhaustive_scan(r, t, |map| {
        found = Some(Homomorphism::new(map.to_vec()));
        false
    })?;
    Ok(found)
}

pub fn count_homomorphisms_exhaustive(
    r: &RelationalStructure,
    t: &RelationalStructure,
) -> Result<u64> {
    let mut count = 0;
    exhaustive_scan(r, t, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// R1 is upper than R2 when some homomorphism R1 -> R2 exists.
pub fn upper_than(r1: &RelationalStructure, r2: &RelationalStructure) -> Result<bool> {
    Ok(find_homomorphism(r1, r2)?.is_some())
}

/// Homomorphic equivalence: upper in both directions.
pub fn hom_equivalent(r1: &RelationalStructure, r2: &RelationalStructure) -> Result<bool> {
    Ok(upper_than(r1, r2)? && upper_than(r2, r1)?)
}

/// Membership in Up(L): R maps into some member of L.
pub fn up_membership(r: &RelationalStructure, l: &[RelationalStructure]) -> Result<bool> {
    for s in l {
        if upper_than(r, s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::structure::Relation;
    use crate::templates;

    #[test]
    fn c3_maps_to_k3_not_k2() {
        let c3 = templates::cycle(3);
        assert!(find_homomorphism(&c3, &templates::clique(3)).unwrap().is_some());
        assert!(find_homomorphism(&c3, &templates::k2()).unwrap().is_none());
        assert!(exhaustive_find_homomorphism(&c3, &templates::k2()).unwrap().is_none());
    }

    #[test]
    fn btw_identity_found() {
        // the lexicographically least self-map happens to be the identity:
        // the singleton unary relations pin both elements
        let btw = templates::btw_template();
        let h = find_homomorphism(&btw, &btw).unwrap().unwrap();
        assert_eq!(h.map, vec![0, 1]);
    }

    #[test]
    fn preorder_facts() {
        let c4 = templates::cycle(4);
        let k2 = templates::k2();
        assert!(upper_than(&c4, &k2).unwrap());
        assert!(!upper_than(&templates::cycle(3), &k2).unwrap());
        assert!(hom_equivalent(&k2, &c4).unwrap());
    }

    #[test]
    fn up_membership_cases() {
        let k2 = templates::k2();
        assert!(up_membership(&k2, std::slice::from_ref(&k2)).unwrap());
        assert!(!up_membership(&templates::cycle(3), std::slice::from_ref(&k2)).unwrap());
        assert!(!up_membership(&k2, &[]).unwrap());
    }

    // growing the family never flips membership from true to false
    #[test]
    fn up_membership_is_monotone() {
        let mut rng = SplitMix64::new(61);
        let family: Vec<RelationalStructure> = (0..4)
            .map(|_| {
                let d = 40 + rng.below(40);
                random_structure(&mut rng, 3, &[2], d)
            })
            .collect();
        for _ in 0..20 {
            let d = 30 + rng.below(40);
            let r = random_structure(&mut rng, 3, &[2], d);
            let mut prev = false;
            for k in 0..=family.len() {
                let now = up_membership(&r, &family[..k]).unwrap();
                assert!(!prev || now, "membership flipped when the family grew");
                prev = now;
            }
        }
    }

    fn random_structure(rng: &mut SplitMix64, max_v: usize, sig: &[usize], density: u64) -> RelationalStructure {
        let n = 1 + rng.usize_below(max_v);
        let rels = sig
            .iter()
            .enumerate()
            .map(|(i, &ar)| {
                let mut tuples = Vec::new();
                let mut t = vec![0u32; ar];
                loop {
                    if rng.chance(density, 100) {
                        tuples.push(t.clone());
                    }
                    let mut p = ar;
                    loop {
                        if p == 0 {
                            return Relation::materialized(format!("r{i}"), ar, tuples);
                        }
                        p -= 1;
                        t[p] += 1;
                        if (t[p] as usize) < n {
                            break;
                        }
                        t[p] = 0;
                    }
                }
            })
            .collect();
        RelationalStructure::new("rand", n, rels)
    }

    // Engine verdict must match the exhaustive oracle on random pairs.
    #[test]
    fn oracle_agreement_random() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..120 {
            let r = random_structure(&mut rng, 4, &[1, 2, 3], 25);
            let t = random_structure(&mut rng, 4, &[1, 2, 3], 55);
            let fast = find_homomorphism(&r, &t).unwrap();
            let slow = exhaustive_find_homomorphism(&r, &t).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "verdict mismatch");
            if let (Some(a), Some(b)) = (&fast, &slow) {
                assert_eq!(a.map, b.map, "witness is not the lexicographic least");
                assert!(crate::structure::is_homomorphism(&r, &t, a).unwrap());
            }
        }
    }

    // Transitivity and reflexivity of the preorder on a small corpus.
    #[test]
    fn preorder_reflexive_transitive() {
        let corpus = vec![
            templates::k2(),
            templates::cycle(4),
            templates::cycle(6),
            templates::clique(3),
            templates::cycle(3),
        ];
        for x in &corpus {
            assert!(upper_than(x, x).unwrap());
        }
        for x in &corpus {
            for y in &corpus {
                for z in &corpus {
                    if upper_than(x, y).unwrap() && upper_than(y, z).unwrap() {
                        assert!(upper_than(x, z).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn node_budget_is_enforced() {
        let r = templates::cycle(9);
        let t = templates::cycle(3);
        let opts = SearchOptions { node_limit: 1, ordering: VarOrdering::Static };
        assert!(matches!(find_homomorphism_opts(&r, &t, &opts), Err(Error::NodeBudget { .. })));
    }

    #[test]
    fn lazy_target_search() {
        // same-parity relation as a lazy target; C4 maps, C3 does not
        let lazy = RelationalStructure::new(
            "parity",
            4,
            vec![Relation::lazy("same", 2, Arc::new(|t: &[u32]| t[0] % 2 != t[1] % 2))],
        );
        assert!(find_homomorphism(&templates::cycle(4), &lazy).unwrap().is_some());
        assert!(find_homomorphism(&templates::cycle(3), &lazy).unwrap().is_none());
    }
}
