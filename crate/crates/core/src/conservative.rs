//! Conservative valued templates: symmetric tournament pairs, MJN triples,
//! the crisp structure Γ′_c over all (M, STP, MJN) elements, and the
//! bipartite worked example.

use crate::error::{Error, Result};
use crate::op::{arg_tuples, FiniteOperation};
use crate::rational::CostValue;
use crate::solver::find_homomorphism;
use crate::structure::{MembershipFn, Relation, RelationalStructure, Tuple};
use crate::valued::{is_multimorphism, CostFunction, FractionalOperation};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// One element of D′_c: a pair set M, a conservative commutative-on-M binary
/// pair, and a permutation-valued triple that is majority/majority/minority
/// on the complement of M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservativeElement {
    pub m_pairs: Vec<(u32, u32)>,
    pub join: FiniteOperation,
    pub meet: FiniteOperation,
    pub mj1: FiniteOperation,
    pub mj2: FiniteOperation,
    pub mn3: FiniteOperation,
}

pub fn all_unordered_pairs(domain_size: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..domain_size as u32 {
        for b in a + 1..domain_size as u32 {
            out.push((a, b));
        }
    }
    out
}

/// Report-style validation of all four clause families.
pub fn validate_stp_mjn(e: &ConservativeElement) -> Vec<String> {
    let d = e.join.domain_size;
    let mut report = Vec::new();
    for t in arg_tuples(d, 2) {
        let (x, y) = (t[0], t[1]);
        let (j, m) = (e.join.apply(&t), e.meet.apply(&t));
        let mut got = [j, m];
        let mut want = [x, y];
        got.sort();
        want.sort();
        if got != want {
            report.push(format!("conservativity fails at ({x},{y})"));
        }
    }
    for &(a, b) in &e.m_pairs {
        if e.join.apply(&[a, b]) != e.join.apply(&[b, a]) {
            report.push(format!("join not commutative on {{{a},{b}}}"));
        }
        if e.meet.apply(&[a, b]) != e.meet.apply(&[b, a]) {
            report.push(format!("meet not commutative on {{{a},{b}}}"));
        }
    }
    let m_bar: Vec<(u32, u32)> = all_unordered_pairs(d)
        .into_iter()
        .filter(|p| !e.m_pairs.contains(p))
        .collect();
    for t in arg_tuples(d, 3) {
        let outs = [e.mj1.apply(&t), e.mj2.apply(&t), e.mn3.apply(&t)];
        let mut got = outs.to_vec();
        let mut want = t.clone();
        got.sort();
        want.sort();
        if got != want {
            report.push(format!("triple is not a permutation of {t:?}"));
            continue;
        }
        let mut values: Vec<u32> = t.clone();
        values.sort();
        values.dedup();
        if values.len() == 2 {
            let pair = (values[0], values[1]);
            if m_bar.contains(&pair) {
                let majority = if t.iter().filter(|&&v| v == values[0]).count() == 2 {
                    values[0]
                } else {
                    values[1]
                };
                let minority = values[0] + values[1] - majority;
                if outs[0] != majority || outs[1] != majority || outs[2] != minority {
                    report.push(format!("majority/minority behavior fails at {t:?}"));
                }
            }
        }
    }
    report
}

/// All conservative (join, meet) pairs commutative on M, in lexicographic
/// join-table order.
pub fn enumerate_stp_pairs(
    domain_size: usize,
    m_pairs: &[(u32, u32)],
) -> Vec<(FiniteOperation, FiniteOperation)> {
    let d = domain_size;
    let cells: Vec<Tuple> = arg_tuples(d, 2).collect();
    let free: Vec<usize> =
        (0..cells.len()).filter(|&i| cells[i][0] != cells[i][1]).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u32; free.len()];
    loop {
        let mut join = vec![0u32; cells.len()];
        let mut meet = vec![0u32; cells.len()];
        for (i, c) in cells.iter().enumerate() {
            if c[0] == c[1] {
                join[i] = c[0];
                meet[i] = c[0];
            }
        }
        for (fi, &ci) in free.iter().enumerate() {
            let (x, y) = (cells[ci][0], cells[ci][1]);
            let pick = if choice[fi] == 0 { x.min(y) } else { x.max(y) };
            join[ci] = pick;
            meet[ci] = x + y - pick;
        }
        let j = FiniteOperation::new("join", d, 2, join).unwrap();
        let me = FiniteOperation::new("meet", d, 2, meet).unwrap();
        let commutative = m_pairs.iter().all(|&(a, b)| {
            j.apply(&[a, b]) == j.apply(&[b, a]) && me.apply(&[a, b]) == me.apply(&[b, a])
        });
        if commutative {
            out.push((j, me));
        }
        let mut i = free.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.0.table.cmp(&b.0.table));
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < 2 {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Per-argument-triple options for an MJN on the complement of M.
fn mjn_options(domain_size: usize, m_bar: &[(u32, u32)]) -> Vec<Vec<[u32; 3]>> {
    arg_tuples(domain_size, 3)
        .map(|t| {
            let mut values: Vec<u32> = t.clone();
            values.sort();
            values.dedup();
            let mut opts: Vec<[u32; 3]> = Vec::new();
            let mut perm = [0usize; 3];
            let mut used = [false; 3];
            fn gen(
                t: &[u32],
                depth: usize,
                perm: &mut [usize; 3],
                used: &mut [bool; 3],
                opts: &mut Vec<[u32; 3]>,
            ) {
                if depth == 3 {
                    let cand = [t[perm[0]], t[perm[1]], t[perm[2]]];
                    if !opts.contains(&cand) {
                        opts.push(cand);
                    }
                    return;
                }
                for i in 0..3 {
                    if !used[i] {
                        used[i] = true;
                        perm[depth] = i;
                        gen(t, depth + 1, perm, used, opts);
                        used[i] = false;
                    }
                }
            }
            gen(&t, 0, &mut perm, &mut used, &mut opts);
            opts.sort();
            if values.len() == 2 {
                let pair = (values[0], values[1]);
                if m_bar.contains(&pair) {
                    let majority = if t.iter().filter(|&&v| v == values[0]).count() == 2 {
                        values[0]
                    } else {
                        values[1]
                    };
                    let minority = values[0] + values[1] - majority;
                    opts.retain(|o| o[0] == majority && o[1] == majority && o[2] == minority);
                }
            }
            opts
        })
        .collect()
}

/// Cap on enumerated MJN triples per (domain, M) choice.
pub const MJN_CAP: u64 = 10_000_000;

/// All MJN triples on the complement of M, lexicographic in the per-triple
/// choice vector.
pub fn enumerate_mjn_triples(
    domain_size: usize,
    m_pairs: &[(u32, u32)],
) -> Result<Vec<(FiniteOperation, FiniteOperation, FiniteOperation)>> {
    let m_bar: Vec<(u32, u32)> = all_unordered_pairs(domain_size)
        .into_iter()
        .filter(|p| !m_pairs.contains(p))
        .collect();
    let options = mjn_options(domain_size, &m_bar);
    let mut count: u64 = 1;
    for o in &options {
        count = count
            .checked_mul(o.len() as u64)
            .filter(|&c| c <= MJN_CAP)
            .ok_or_else(|| Error::Capacity(format!("more than {MJN_CAP} MJN triples")))?;
    }
    let cells = options.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut choice = vec![0usize; cells];
    loop {
        let mut t1 = vec![0u32; cells];
        let mut t2 = vec![0u32; cells];
        let mut t3 = vec![0u32; cells];
        for i in 0..cells {
            let o = options[i][choice[i]];
            t1[i] = o[0];
            t2[i] = o[1];
            t3[i] = o[2];
        }
        out.push((
            FiniteOperation::new("mj1", domain_size, 3, t1)?,
            FiniteOperation::new("mj2", domain_size, 3, t2)?,
            FiniteOperation::new("mn3", domain_size, 3, t3)?,
        ));
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Exhaustive elements for one M, in (STP, MJN) lexicographic order.
pub fn enumerate_conservative_elements(
    domain_size: usize,
    m_pairs: &[(u32, u32)],
) -> Result<Vec<ConservativeElement>> {
    if domain_size > 3 {
        return Err(Error::Capacity("conservative enumeration is limited to |D| <= 3".into()));
    }
    let stps = enumerate_stp_pairs(domain_size, m_pairs);
    let mjns = enumerate_mjn_triples(domain_size, m_pairs)?;
    let mut out = Vec::with_capacity(stps.len() * mjns.len());
    for (join, meet) in &stps {
        for (mj1, mj2, mn3) in &mjns {
            out.push(ConservativeElement {
                m_pairs: m_pairs.to_vec(),
                join: join.clone(),
                meet: meet.clone(),
                mj1: mj1.clone(),
                mj2: mj2.clone(),
                mn3: mn3.clone(),
            });
        }
    }
    Ok(out)
}

/// The full D′_c: union over every M ⊆ unordered pairs, M in ascending
/// bitmask order.
pub fn enumerate_all_conservative_elements(domain_size: usize) -> Result<Vec<ConservativeElement>> {
    let pairs = all_unordered_pairs(domain_size);
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let m: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.extend(enumerate_conservative_elements(domain_size, &m)?);
    }
    Ok(out)
}

/// Search for an element whose STP (as ½⊔ + ½⊓) and MJN (⅓ each) are
/// multimorphisms of every cost function of the template. STP feasibility is
/// checked before the MJN loop, so hopeless branches are skipped.
pub fn find_kz_multimorphisms(template: &[CostFunction]) -> Result<Option<ConservativeElement>> {
    let d = template.first().map(|f| f.domain_size).unwrap_or(0);
    if d > 3 {
        return Err(Error::Capacity("multimorphism search is limited to |D| <= 3".into()));
    }
    let pairs = all_unordered_pairs(d);
    for mask in 0u32..1 << pairs.len() {
        let m: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        for (join, meet) in enumerate_stp_pairs(d, &m) {
            let omega = FractionalOperation::half_half(join.clone(), meet.clone())?;
            if !template.iter().map(|f| is_multimorphism(&omega, f)).collect::<Result<Vec<_>>>()?.iter().all(|&b| b) {
                continue;
            }
            for (mj1, mj2, mn3) in enumerate_mjn_triples(d, &m)? {
                let omega3 =
                    FractionalOperation::third_each(mj1.clone(), mj2.clone(), mn3.clone())?;
                let ok = template
                    .iter()
                    .map(|f| is_multimorphism(&omega3, f))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .all(|&b| b);
                if ok {
                    return Ok(Some(ConservativeElement {
                        m_pairs: m.clone(),
                        join,
                        meet,
                        mj1,
                        mj2,
                        mn3,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Componentwise membership of a p-tuple of elements in f′: the ⊔/⊓
/// inequality over all x, y in D^p and the MJN inequality over all x, y, z,
/// with the infinity-admissible order (inf <= inf holds).
pub fn gamma_prime_c_membership(
    f: &CostFunction,
    elements: &[&ConservativeElement],
) -> Result<bool> {
    let p = f.arity;
    if elements.len() != p {
        return Err(Error::Precondition(format!(
            "{} elements for a cost function of arity {p}",
            elements.len()
        )));
    }
    let d = f.domain_size;
    // dense table of f for speed
    let table: Vec<CostValue> = arg_tuples(d, p).map(|t| f.evaluate(&t)).collect();
    let idx = |t: &[u32]| -> usize { t.iter().fold(0usize, |acc, &v| acc * d + v as usize) };
    let tuples: Vec<Tuple> = arg_tuples(d, p).collect();
    for x in &tuples {
        for y in &tuples {
            let mut join_img = Vec::with_capacity(p);
            let mut meet_img = Vec::with_capacity(p);
            for j in 0..p {
                join_img.push(elements[j].join.apply(&[x[j], y[j]]));
                meet_img.push(elements[j].meet.apply(&[x[j], y[j]]));
            }
            let lhs = table[idx(&join_img)].checked_add(&table[idx(&meet_img)])?;
            let rhs = table[idx(x)].checked_add(&table[idx(y)])?;
            if !lhs.le(&rhs) {
                return Ok(false);
            }
        }
    }
    for x in &tuples {
        for y in &tuples {
            for z in &tuples {
                let mut i1 = Vec::with_capacity(p);
                let mut i2 = Vec::with_capacity(p);
                let mut i3 = Vec::with_capacity(p);
                for j in 0..p {
                    let args = [x[j], y[j], z[j]];
                    i1.push(elements[j].mj1.apply(&args));
                    i2.push(elements[j].mj2.apply(&args));
                    i3.push(elements[j].mn3.apply(&args));
                }
                let lhs = table[idx(&i1)]
                    .checked_add(&table[idx(&i2)])?
                    .checked_add(&table[idx(&i3)])?;
                let rhs =
                    table[idx(x)].checked_add(&table[idx(y)])?.checked_add(&table[idx(z)])?;
                if !lhs.le(&rhs) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Γ′_c: elements materialized, relations lazy with per-tuple memoization.
#[derive(Debug, Clone)]
pub struct GammaPrimeC {
    pub elements: Arc<Vec<ConservativeElement>>,
    pub structure: RelationalStructure,
}

pub fn build_gamma_prime_c(template: &[CostFunction]) -> Result<GammaPrimeC> {
    let d = template.first().map(|f| f.domain_size).unwrap_or(0);
    let elements = Arc::new(enumerate_all_conservative_elements(d)?);
    let relations = template
        .iter()
        .map(|f| {
            let f_owned = f.clone();
            let elements = Arc::clone(&elements);
            let memo: Arc<Mutex<HashMap<Tuple, bool>>> = Arc::new(Mutex::new(HashMap::new()));
            let membership: MembershipFn = Arc::new(move |t: &[u32]| {
                if let Some(&v) = memo.lock().unwrap().get(t) {
                    return v;
                }
                let picks: Vec<&ConservativeElement> =
                    t.iter().map(|&i| &elements[i as usize]).collect();
                let v = gamma_prime_c_membership(&f_owned, &picks).unwrap_or(false);
                memo.lock().unwrap().insert(t.to_vec(), v);
                v
            });
            Relation::lazy(format!("{}'", f.name), f.arity, membership)
        })
        .collect();
    let structure = RelationalStructure::new("gamma'_c", elements.len(), relations);
    Ok(GammaPrimeC { elements, structure })
}

/// Direct 2-colorability of the symmetric closure of a binary relation.
pub fn is_bipartite(n: usize, edges: &[Tuple]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        let (a, b) = (e[0] as usize, e[1] as usize);
        if a == b {
            return false;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Two-way homomorphic equivalence of Γ′_c with ({0,1}, !=, full, ...).
/// The forward direction is a two-variable search into the lazy structure.
/// The reverse direction maps the whole element set onto two values: its
/// unary constraints are vacuous (the target's unary relations are full), so
/// it holds exactly when the memoized compatibility matrix is 2-colorable,
/// which is checked directly.
pub fn neq_equivalence_check(gpc: &GammaPrimeC) -> Result<bool> {
    let unaries = gpc.structure.relations.len().saturating_sub(1);
    let neq = crate::templates::neq_with_full_unaries(unaries);
    neq.check_signature(&gpc.structure)?;
    let forward = find_homomorphism(&neq, &gpc.structure)?.is_some();
    let matrix = gpc.structure.relations[0]
        .matrix(gpc.structure.domain_size)
        .ok_or_else(|| Error::Capacity("compatibility matrix exceeds the memoization cap".into()))?;
    let backward = matrix_two_colorable(&matrix);
    Ok(forward && backward)
}

fn matrix_two_colorable(m: &crate::structure::BitMatrix) -> bool {
    let n = m.n;
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if !(m.get(v, w) || m.get(w, v)) {
                    continue;
                }
                if w == v {
                    return false;
                }
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy)]
pub struct BipartiteOutcome {
    pub hom_into_gamma_prime_c: bool,
    pub bipartite: bool,
    pub agree: bool,
}

/// Run the lazy homomorphism search into Γ′_c and the direct bipartiteness
/// test side by side.
pub fn bipartite_example_check(
    r: &RelationalStructure,
    gpc: &GammaPrimeC,
) -> Result<BipartiteOutcome> {
    r.check_signature(&gpc.structure)?;
    let hom = find_homomorphism(r, &gpc.structure)?.is_some();
    let bipartite = is_bipartite(r.domain_size, r.relations[0].tuples()?);
    Ok(BipartiteOutcome { hom_into_gamma_prime_c: hom, bipartite, agree: hom == bipartite })
}

/// Wrap a graph in the independent-set template signature: the edge relation
/// plus as many empty unary slots as the template carries.
pub fn wrap_graph_in_is_signature(
    name: impl Into<String>,
    n: usize,
    edges: Vec<Tuple>,
    unary_slots: usize,
) -> RelationalStructure {
    let mut sym = edges.clone();
    for e in &edges {
        sym.push(vec![e[1], e[0]]);
    }
    let mut rels = vec![Relation::materialized("edge", 2, sym)];
    for i in 0..unary_slots {
        rels.push(Relation::materialized(format!("u{i}"), 1, vec![]));
    }
    RelationalStructure::new(name, n, rels)
}
