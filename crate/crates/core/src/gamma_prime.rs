//! The structure Γ′ over Siggers pairs: a tuple of pairs belongs to ρ′ when
//! the unary components jointly preserve ρ and the 4-ary components jointly
//! preserve ρ, each applied coordinatewise. R maps into Γ′ exactly when the
//! lifted language Γ_R admits a Siggers pair; both directions are built here
//! as executable constructions.

use crate::error::{Error, Result};
use crate::lift::{decode_pair, encode_pair, lift_language};
use crate::op::FiniteOperation;
use crate::siggers::{enumerate_siggers_pairs, find_siggers_pair_admitted, is_siggers_pair};
use crate::solver::{Engine, Problem, SearchOptions, VarOrdering};
use crate::structure::{
    is_homomorphism, Homomorphism, MembershipFn, Relation, RelationalStructure, Tuple,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

pub type SiggersPair = (FiniteOperation, FiniteOperation);

type PairIndex = HashMap<(Vec<u32>, Vec<u32>), u32>;

/// Membership in ρ′: clause (a) runs the unary components over every tuple
/// of ρ; clause (b) runs the 4-ary components over every quadruple of tuples.
pub fn gamma_prime_membership(rel: &Relation, pairs: &[&SiggersPair]) -> Result<bool> {
    if pairs.len() != rel.arity {
        return Err(Error::Precondition(format!(
            "{} pairs for a relation of arity {}",
            pairs.len(),
            rel.arity
        )));
    }
    let tuples = rel.tuples()?;
    let m = rel.arity;
    for t in tuples {
        let image: Tuple = (0..m).map(|j| pairs[j].0.apply(&[t[j]])).collect();
        if !rel.contains(&image) {
            return Ok(false);
        }
    }
    let k = tuples.len();
    if k == 0 {
        return Ok(true);
    }
    let mut sel = [0usize; 4];
    loop {
        let mut image = Vec::with_capacity(m);
        for (j, pair) in pairs.iter().enumerate() {
            let args = [
                tuples[sel[0]][j],
                tuples[sel[1]][j],
                tuples[sel[2]][j],
                tuples[sel[3]][j],
            ];
            image.push(pair.1.apply(&args));
        }
        if !rel.contains(&image) {
            return Ok(false);
        }
        let mut i = 4;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < k {
                break;
            }
            sel[i] = 0;
        }
    }
}

/// Γ′ with a materialized pair domain (|D| <= 2) and lazy relations that
/// memoize membership per (relation, pair tuple).
#[derive(Debug, Clone)]
pub struct SiggersStructure {
    pub base: RelationalStructure,
    pub pairs: Arc<Vec<SiggersPair>>,
    pub structure: RelationalStructure,
    index: Arc<PairIndex>,
}

impl SiggersStructure {
    pub fn pair_index(&self, g: &FiniteOperation, s: &FiniteOperation) -> Option<u32> {
        self.index.get(&(g.table.clone(), s.table.clone())).copied()
    }
}

pub fn build_gamma_prime(gamma: &RelationalStructure) -> Result<SiggersStructure> {
    build_gamma_prime_with(gamma, enumerate_siggers_pairs(gamma.domain_size)?)
}

/// Symbolic handle for |D| >= 3: the domain lists only the pairs the caller
/// registers (each validated); relations stay the same lazy membership, so a
/// homomorphism into the listed sub-domain is a homomorphism into Γ′.
pub fn build_gamma_prime_symbolic(
    gamma: &RelationalStructure,
    pairs: Vec<SiggersPair>,
) -> Result<SiggersStructure> {
    for (g, s) in &pairs {
        if !is_siggers_pair(g, s) {
            return Err(Error::Precondition(format!(
                "({}, {}) is not a Siggers pair",
                g.name, s.name
            )));
        }
    }
    build_gamma_prime_with(gamma, pairs)
}

fn build_gamma_prime_with(
    gamma: &RelationalStructure,
    pairs: Vec<SiggersPair>,
) -> Result<SiggersStructure> {
    for rel in &gamma.relations {
        rel.tuples()?;
    }
    let pairs = Arc::new(pairs);
    let mut index = PairIndex::new();
    for (i, (g, s)) in pairs.iter().enumerate() {
        index.insert((g.table.clone(), s.table.clone()), i as u32);
    }
    let relations = gamma
        .relations
        .iter()
        .map(|rel| {
            let rel_owned = rel.clone();
            let pairs = Arc::clone(&pairs);
            let memo: Arc<Mutex<HashMap<Tuple, bool>>> = Arc::new(Mutex::new(HashMap::new()));
            let membership: MembershipFn = Arc::new(move |t: &[u32]| {
                if let Some(&v) = memo.lock().unwrap().get(t) {
                    return v;
                }
                let selected: Vec<&SiggersPair> =
                    t.iter().map(|&i| &pairs[i as usize]).collect();
                let v = gamma_prime_membership(&rel_owned, &selected).unwrap_or(false);
                memo.lock().unwrap().insert(t.to_vec(), v);
                v
            });
            Relation::lazy(format!("{}'", rel.name), rel.arity, membership)
        })
        .collect();
    let structure =
        RelationalStructure::new(format!("{}'", gamma.name), pairs.len(), relations);
    Ok(SiggersStructure { base: gamma.clone(), pairs, structure, index: Arc::new(index) })
}

/// a -> (const_a, const_a): the embedding realizing Γ ≻ Γ′. The result is
/// checked against the lazy relations before being returned.
pub fn constant_pair_embedding(gp: &SiggersStructure) -> Result<Homomorphism> {
    let d = gp.base.domain_size;
    let mut map = Vec::with_capacity(d);
    for a in 0..d as u32 {
        let g = FiniteOperation::constant(d, 1, a);
        let s = FiniteOperation::constant(d, 4, a);
        let idx = gp.pair_index(&g, &s).ok_or_else(|| {
            Error::Precondition(format!("constant pair ({a},{a}) missing from the domain"))
        })?;
        map.push(idx);
    }
    let h = Homomorphism::new(map);
    if !is_homomorphism(&gp.base, &gp.structure, &h)? {
        return Err(Error::TheoremViolation(
            "constant-pair embedding failed the homomorphism check".into(),
        ));
    }
    Ok(h)
}

fn check_pair_preserves(
    pair: (&FiniteOperation, &FiniteOperation),
    structure: &RelationalStructure,
) -> Result<()> {
    for rel in &structure.relations {
        if !crate::op::preserves_relation(pair.0, rel)? {
            return Err(Error::Precondition(format!(
                "unary component does not preserve {}",
                rel.name
            )));
        }
        if !crate::op::preserves_relation(pair.1, rel)? {
            return Err(Error::Precondition(format!(
                "4-ary component does not preserve {}",
                rel.name
            )));
        }
    }
    Ok(())
}

/// Lemma direction one: a Siggers pair preserving Γ_R restricts blockwise to
/// a homomorphism R -> Γ′, v -> (g|_{D_v}, s|_{D_v}) read over D.
pub fn hom_from_siggers_pair(
    r: &RelationalStructure,
    gp: &SiggersStructure,
    g: &FiniteOperation,
    s: &FiniteOperation,
) -> Result<Homomorphism> {
    let gamma = &gp.base;
    let d = gamma.domain_size;
    let lifted = lift_language(gamma, r)?;
    let gamma_r = lifted.crisp()?;
    if !is_siggers_pair(g, s) {
        return Err(Error::Precondition("(g, s) is not a Siggers pair on the lifted domain".into()));
    }
    check_pair_preserves((g, s), gamma_r)?;
    let mut map = Vec::with_capacity(r.domain_size);
    for v in 0..r.domain_size as u32 {
        let g_table: Vec<u32> =
            (0..d as u32).map(|a| decode_pair(g.apply(&[encode_pair(v, a, d)]), d).1).collect();
        let s_table: Vec<u32> = crate::op::arg_tuples(d, 4)
            .map(|q| {
                let args: Vec<u32> = q.iter().map(|&a| encode_pair(v, a, d)).collect();
                decode_pair(s.apply(&args), d).1
            })
            .collect();
        let gv = FiniteOperation::new("g", d, 1, g_table)?;
        let sv = FiniteOperation::new("s", d, 4, s_table)?;
        let idx = gp
            .pair_index(&gv, &sv)
            .ok_or_else(|| Error::Precondition(format!("restriction at block {v} is not a Siggers pair")))?;
        map.push(idx);
    }
    let h = Homomorphism::new(map);
    if !is_homomorphism(r, &gp.structure, &h)? {
        return Err(Error::TheoremViolation(
            "blockwise restriction failed the homomorphism check into the pair structure".into(),
        ));
    }
    Ok(h)
}

/// Lemma direction two: a homomorphism o: R -> Γ′ reassembles into a Siggers
/// pair on the lifted domain V x D. Blockwise the pair copies o(v);
/// cross-block cells of the 4-ary table take the least element of the unary
/// image, which keeps the identities and closure on mixed blocks.
pub fn siggers_pair_from_hom(
    r: &RelationalStructure,
    gp: &SiggersStructure,
    o: &Homomorphism,
) -> Result<SiggersPair> {
    let gamma = &gp.base;
    let d = gamma.domain_size;
    let lifted_domain = r.domain_size * d;
    if o.map.len() != r.domain_size {
        return Err(Error::Precondition("homomorphism is not total on R".into()));
    }
    let block_pairs: Vec<&SiggersPair> =
        o.map.iter().map(|&i| &gp.pairs[i as usize]).collect();

    let mut g_table = vec![0u32; lifted_domain];
    for v in 0..r.domain_size as u32 {
        for a in 0..d as u32 {
            let x = encode_pair(v, a, d);
            g_table[x as usize] = encode_pair(v, block_pairs[v as usize].0.apply(&[a]), d);
        }
    }
    let g = FiniteOperation::new("g_o", lifted_domain, 1, g_table)?;
    let fill = *g.image().first().expect("unary image is nonempty");

    let mut s_table = vec![0u32; lifted_domain.pow(4)];
    for (idx, q) in crate::op::arg_tuples(lifted_domain, 4).enumerate() {
        let blocks: Vec<u32> = q.iter().map(|&x| decode_pair(x, d).0).collect();
        s_table[idx] = if blocks.iter().all(|&b| b == blocks[0]) {
            let v = blocks[0];
            let args: Vec<u32> = q.iter().map(|&x| decode_pair(x, d).1).collect();
            encode_pair(v, block_pairs[v as usize].1.apply(&args), d)
        } else {
            fill
        };
    }
    let s = FiniteOperation::new("s_o", lifted_domain, 4, s_table)?;

    if !is_siggers_pair(&g, &s) {
        return Err(Error::TheoremViolation(
            "reassembled pair is not a Siggers pair on the lifted domain".into(),
        ));
    }
    let lifted = lift_language(gamma, r)?;
    check_pair_preserves((&g, &s), lifted.crisp()?)
        .map_err(|e| Error::TheoremViolation(format!("reassembled pair: {e}")))?;
    Ok((g, s))
}

/// Exhaustive search for a homomorphism R -> Γ′ through the product shape of
/// the domain: clause (a) touches only unary components and clause (b) only
/// 4-ary ones, so the search enumerates per-vertex unary tables first
/// (filtered by clause (a), deduplicated by image vector) and then solves for
/// the 4-ary tables cell by cell — Siggers validity merges and pins cells per
/// vertex, and every quadruple of tuples of a constrained relation becomes
/// one small constraint. Per-element backtracking over the 66048-pair domain
/// could not certify negatives; this search exhausts in milliseconds.
pub fn find_hom_into_gamma_prime(
    r: &RelationalStructure,
    gp: &SiggersStructure,
) -> Result<Option<Homomorphism>> {
    let gamma = &gp.base;
    r.check_signature(gamma)?;
    let d = gamma.domain_size;
    let nv = r.domain_size;
    if nv == 0 {
        return Ok(Some(Homomorphism::new(Vec::new())));
    }

    // (relation index, variable tuple) constraints of R
    let mut constraints_r: Vec<(usize, &Tuple)> = Vec::new();
    for (ri, rel) in r.relations.iter().enumerate() {
        for t in rel.tuples()? {
            constraints_r.push((ri, t));
        }
    }

    // all unary tables, in lexicographic order
    let unary_tables: Vec<FiniteOperation> = (0..d.pow(d as u32))
        .map(|i| {
            let mut t = vec![0u32; d];
            crate::op::decode(i, d, &mut t);
            FiniteOperation::new("g", d, 1, t).unwrap()
        })
        .collect();

    let clause_a_ok = |assignment: &[usize]| -> bool {
        constraints_r.iter().all(|(ri, t)| {
            let rel = &gamma.relations[*ri];
            rel.tuples().is_ok_and(|tuples| {
                tuples.iter().all(|x| {
                    let image: Tuple = (0..rel.arity)
                        .map(|j| unary_tables[assignment[t[j] as usize]].apply(&[x[j]]))
                        .collect();
                    rel.contains(&image)
                })
            })
        })
    };

    let mut seen_image_vectors: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut assignment = vec![0usize; nv];
    loop {
        if clause_a_ok(&assignment) {
            let images: Vec<Vec<u32>> =
                assignment.iter().map(|&gi| unary_tables[gi].image()).collect();
            if seen_image_vectors.insert(images.clone()) {
                if let Some(s_tables) = solve_s_side(gamma, &constraints_r, nv, &images)? {
                    let mut map = Vec::with_capacity(nv);
                    for v in 0..nv {
                        let sv = FiniteOperation::new("s", d, 4, s_tables[v].clone())?;
                        let idx = gp.pair_index(&unary_tables[assignment[v]], &sv).ok_or_else(|| {
                            Error::TheoremViolation("search produced an invalid pair".into())
                        })?;
                        map.push(idx);
                    }
                    let h = Homomorphism::new(map);
                    if !is_homomorphism(r, &gp.structure, &h)? {
                        return Err(Error::TheoremViolation(
                            "factored search produced a non-homomorphism".into(),
                        ));
                    }
                    return Ok(Some(h));
                }
            }
        }
        let mut i = nv;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < unary_tables.len() {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Solve for per-vertex 4-ary tables given the image of each vertex's unary
/// component. Returns one full table per vertex on success.
fn solve_s_side(
    gamma: &RelationalStructure,
    constraints_r: &[(usize, &Tuple)],
    nv: usize,
    images: &[Vec<u32>],
) -> Result<Option<Vec<Vec<u32>>>> {
    let d = gamma.domain_size;
    let cells = d.pow(4);
    let cell_index =
        |q: &[u32]| -> usize { q.iter().fold(0usize, |acc, &v| acc * d + v as usize) };

    // per-vertex identity merging on the image
    let mut parent: Vec<usize> = (0..nv * cells).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (v, image) in images.iter().enumerate() {
        for &x in image {
            for &y in image {
                for &z in image {
                    let a = v * cells + cell_index(&[x, y, x, z]);
                    let b = v * cells + cell_index(&[y, x, z, y]);
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        let (lo, hi) = (ra.min(rb), ra.max(rb));
                        parent[hi] = lo;
                    }
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; nv * cells];
    let mut class_count = 0usize;
    for c in 0..nv * cells {
        let root = find(&mut parent, c);
        if class_of[root] == usize::MAX {
            class_of[root] = class_count;
            class_count += 1;
        }
        class_of[c] = class_of[root];
    }

    // domains: closure on image^4, idempotence pins the image diagonal
    let full: Vec<u32> = (0..d as u32).collect();
    let mut domains: Vec<Vec<u32>> = vec![full; class_count];
    for (v, image) in images.iter().enumerate() {
        for (ci, q) in crate::op::arg_tuples(d, 4).enumerate() {
            if q.iter().all(|x| image.contains(x)) {
                domains[class_of[v * cells + ci]].retain(|x| image.contains(x));
            }
        }
        for &x in image {
            domains[class_of[v * cells + cell_index(&[x, x, x, x])]].retain(|&y| y == x);
        }
    }

    // clause (b): every quadruple of tuples of a constrained relation
    let mut scopes: BTreeMap<(usize, Vec<usize>), ()> = BTreeMap::new();
    for (ri, t) in constraints_r {
        let rel = &gamma.relations[*ri];
        let tuples = rel.tuples()?;
        if tuples.is_empty() {
            continue;
        }
        let m = rel.arity;
        let k = tuples.len();
        let mut sel = [0usize; 4];
        loop {
            let scope: Vec<usize> = (0..m)
                .map(|j| {
                    let v = t[j] as usize;
                    let q = [
                        tuples[sel[0]][j],
                        tuples[sel[1]][j],
                        tuples[sel[2]][j],
                        tuples[sel[3]][j],
                    ];
                    class_of[v * cells + cell_index(&q)]
                })
                .collect();
            scopes.insert((*ri, scope), ());
            let mut i = 4;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                sel[i] += 1;
                if sel[i] < k {
                    break;
                }
                sel[i] = 0;
            }
            if sel.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    let constraints: Vec<(Vec<usize>, &Relation)> = scopes
        .keys()
        .map(|(ri, scope)| (scope.clone(), &gamma.relations[*ri]))
        .collect();

    let problem = Problem { universe: d, domains, constraints };
    let options = SearchOptions { ordering: VarOrdering::MinRemaining, ..SearchOptions::default() };
    let engine = Engine::new(&problem, options)?;
    match engine.solve()? {
        None => Ok(None),
        Some(solution) => {
            let tables: Vec<Vec<u32>> = (0..nv)
                .map(|v| (0..cells).map(|c| solution[class_of[v * cells + c]]).collect())
                .collect();
            Ok(Some(tables))
        }
    }
}

/// Cap on |D′|^arity for quantifying over a lazy relation's tuples.
pub const DOUBLE_PRIME_CAP: u64 = 1_000_000;

/// Membership in the twice-iterated construction: a tuple of Siggers pairs
/// over D′ belongs to ρ′′ under the same two clauses, now quantified over
/// the tuples of the lazy ρ′. Never materialized; the tuple space must fit
/// under [`DOUBLE_PRIME_CAP`], which in practice limits this to tiny base
/// domains.
pub fn gamma_double_prime_membership(
    gp: &SiggersStructure,
    rel_index: usize,
    pairs: &[&SiggersPair],
) -> Result<bool> {
    let rel = &gp.structure.relations[rel_index];
    let m = rel.arity;
    if pairs.len() != m {
        return Err(Error::Precondition(format!("{} pairs for arity {m}", pairs.len())));
    }
    let n = gp.structure.domain_size as u64;
    if n.checked_pow(m as u32).is_none_or(|c| c > DOUBLE_PRIME_CAP) {
        return Err(Error::Capacity(format!(
            "enumerating the lazy relation needs {n}^{m} membership checks"
        )));
    }
    let mut tuples: Vec<Tuple> = Vec::new();
    let mut t = vec![0u32; m];
    loop {
        if rel.contains(&t) {
            tuples.push(t.clone());
        }
        let mut i = m;
        let mut done = false;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as u64) < n {
                break;
            }
            t[i] = 0;
        }
        if done {
            break;
        }
    }
    let enumerated = Relation::materialized(format!("{}''", rel.name), m, tuples);
    gamma_prime_membership(&enumerated, pairs)
}

/// Outcome of running both sides of the pair-versus-homomorphism check.
#[derive(Debug, Clone)]
pub struct HomtoGOutcome {
    pub agree: bool,
    pub indicator_pair: Option<SiggersPair>,
    pub gamma_prime_hom: Option<Homomorphism>,
}

/// Run the indicator search on Γ_R and the factored search into Γ′
/// independently and compare verdicts.
pub fn check_homtog(r: &RelationalStructure, gp: &SiggersStructure) -> Result<HomtoGOutcome> {
    let lifted = lift_language(&gp.base, r)?;
    let indicator_pair = find_siggers_pair_admitted(lifted.crisp()?)?;
    let gamma_prime_hom = find_hom_into_gamma_prime(r, gp)?;
    Ok(HomtoGOutcome {
        agree: indicator_pair.is_some() == gamma_prime_hom.is_some(),
        indicator_pair,
        gamma_prime_hom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::templates;

    fn btw_gp() -> SiggersStructure {
        build_gamma_prime(&templates::btw_template()).unwrap()
    }

    #[test]
    fn pair_structures_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<SiggersStructure>();
    }

    #[test]
    fn membership_constant_pairs_on_btw() {
        let gamma = templates::btw_template();
        let c0 = (FiniteOperation::constant(2, 1, 0), FiniteOperation::constant(2, 4, 0));
        let pairs = vec![&c0, &c0, &c0];
        // (0,0,0) is in btw, so the all-constant-0 triple passes both clauses
        assert!(gamma_prime_membership(&gamma.relations[2], &pairs).unwrap());
    }

    #[test]
    fn membership_fails_when_g_breaks_rho() {
        // unary relation {0}: a pair whose g moves 0 violates clause (a)
        let gamma = templates::btw_template();
        let neg = FiniteOperation::new("n", 2, 1, vec![1, 0]).unwrap();
        let s = FiniteOperation::new("s", 2, 4, vec![0; 16]).unwrap();
        let pair = (neg, s);
        assert!(!gamma_prime_membership(&gamma.relations[0], &[&pair]).unwrap());
    }

    // independent double-loop re-implementation of the two clauses
    fn membership_oracle(rel: &Relation, pairs: &[&SiggersPair]) -> bool {
        let tuples = rel.tuples().unwrap();
        for t in tuples {
            let mut img = Vec::new();
            for (j, p) in pairs.iter().enumerate() {
                img.push(p.0.table[t[j] as usize]);
            }
            if !tuples.contains(&img) {
                return false;
            }
        }
        for a in tuples {
            for b in tuples {
                for c in tuples {
                    for e in tuples {
                        let mut img = Vec::new();
                        for (j, p) in pairs.iter().enumerate() {
                            img.push(p.1.apply(&[a[j], b[j], c[j], e[j]]));
                        }
                        if !tuples.contains(&img) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn membership_agrees_with_double_loop_oracle() {
        let gp = btw_gp();
        let btw_rel = &gp.base.relations[2];
        let mut rng = SplitMix64::new(7);
        for _ in 0..40 {
            let picks: Vec<&SiggersPair> =
                (0..3).map(|_| &gp.pairs[rng.usize_below(gp.pairs.len())]).collect();
            assert_eq!(
                gamma_prime_membership(btw_rel, &picks).unwrap(),
                membership_oracle(btw_rel, &picks)
            );
        }
    }

    #[test]
    fn gamma_prime_domain_size_matches_census() {
        let gp = btw_gp();
        assert_eq!(gp.structure.domain_size, 66048);
    }

    // permuting the coordinates of rho and the pair tuple together leaves
    // membership unchanged
    #[test]
    fn membership_is_permutation_invariant() {
        let gp = btw_gp();
        let btw_rel = &gp.base.relations[2];
        let permutations: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut rng = SplitMix64::new(29);
        for _ in 0..15 {
            let picks: Vec<&SiggersPair> =
                (0..3).map(|_| &gp.pairs[rng.usize_below(gp.pairs.len())]).collect();
            let base = gamma_prime_membership(btw_rel, &picks).unwrap();
            for pi in &permutations {
                let permuted_tuples: Vec<Tuple> = btw_rel
                    .tuples()
                    .unwrap()
                    .iter()
                    .map(|t| pi.iter().map(|&p| t[p]).collect())
                    .collect();
                let permuted_rel = Relation::materialized("btw_pi", 3, permuted_tuples);
                let permuted_picks: Vec<&SiggersPair> = pi.iter().map(|&p| picks[p]).collect();
                assert_eq!(
                    gamma_prime_membership(&permuted_rel, &permuted_picks).unwrap(),
                    base
                );
            }
        }
    }

    #[test]
    fn constant_embedding_on_templates() {
        for gamma in [templates::k2(), templates::btw_template(), templates::leq_template()] {
            let gp = build_gamma_prime(&gamma).unwrap();
            let h = constant_pair_embedding(&gp).unwrap();
            assert!(is_homomorphism(&gamma, &gp.structure, &h).unwrap());
        }
    }

    #[test]
    fn constant_embedding_on_empty_relations() {
        let gamma = RelationalStructure::new(
            "e",
            2,
            vec![Relation::materialized("r", 2, vec![])],
        );
        let gp = build_gamma_prime(&gamma).unwrap();
        constant_pair_embedding(&gp).unwrap();
    }

    #[test]
    fn homtog_on_single_tuple_structure() {
        let gp = btw_gp();
        let r = RelationalStructure::new(
            "r",
            3,
            vec![
                Relation::materialized("z", 1, vec![]),
                Relation::materialized("o", 1, vec![]),
                Relation::materialized("t", 3, vec![vec![0, 1, 2]]),
            ],
        );
        let out = check_homtog(&r, &gp).unwrap();
        assert!(out.agree);
    }

    #[test]
    fn hom_from_pair_rejects_block_breakers() {
        // a constant pair on the lifted domain moves elements across blocks,
        // so it fails the preservation precondition with a named relation
        let gp = btw_gp();
        let r = RelationalStructure::new(
            "r",
            2,
            vec![
                Relation::materialized("z", 1, vec![vec![0]]),
                Relation::materialized("o", 1, vec![]),
                Relation::materialized("t", 3, vec![]),
            ],
        );
        let g = FiniteOperation::constant(4, 1, 0);
        let s = FiniteOperation::constant(4, 4, 0);
        match hom_from_siggers_pair(&r, &gp, &g, &s) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("Dom@1")),
            other => panic!("expected a precondition error, got {other:?}"),
        }
    }

    #[test]
    fn homtog_with_conflicting_unaries_agrees() {
        let gp = btw_gp();
        let r = RelationalStructure::new(
            "r",
            2,
            vec![
                Relation::materialized("z", 1, vec![vec![0]]),
                Relation::materialized("o", 1, vec![vec![0]]),
                Relation::materialized("t", 3, vec![vec![0, 1, 0]]),
            ],
        );
        let out = check_homtog(&r, &gp).unwrap();
        assert!(out.agree);
    }

    #[test]
    fn homtog_on_empty_structure() {
        let gp = btw_gp();
        let r = RelationalStructure::new(
            "r",
            1,
            vec![
                Relation::materialized("z", 1, vec![]),
                Relation::materialized("o", 1, vec![]),
                Relation::materialized("t", 3, vec![]),
            ],
        );
        let out = check_homtog(&r, &gp).unwrap();
        assert!(out.agree);
        assert!(out.indicator_pair.is_some());
        assert!(out.gamma_prime_hom.is_some());
    }

    #[test]
    fn double_prime_membership_on_singleton_domain() {
        // over a one-element base domain everything collapses: the single
        // constant pair over D' satisfies both clauses
        let gamma = RelationalStructure::new(
            "one",
            1,
            vec![Relation::materialized("r", 2, vec![vec![0, 0]])],
        );
        let gp = build_gamma_prime(&gamma).unwrap();
        assert_eq!(gp.structure.domain_size, 1);
        let pair = (FiniteOperation::constant(1, 1, 0), FiniteOperation::constant(1, 4, 0));
        assert!(gamma_double_prime_membership(&gp, 0, &[&pair, &pair]).unwrap());
    }

    #[test]
    fn double_prime_is_capacity_guarded() {
        // the capacity check trips before any pair is evaluated, so the
        // placeholder pairs never need tables over the 66048-element domain
        let gp = btw_gp();
        let pair = (FiniteOperation::constant(1, 1, 0), FiniteOperation::constant(1, 4, 0));
        assert!(matches!(
            gamma_double_prime_membership(&gp, 2, &[&pair, &pair, &pair]),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn round_trip_pair_hom_pair() {
        let gp = btw_gp();
        let mut rng = SplitMix64::new(23);
        let mut done = 0;
        while done < 8 {
            let r = crate::gen::random_structure(&mut rng, 3, &[1, 1, 3], 18);
            if let Some(o) = find_hom_into_gamma_prime(&r, &gp).unwrap() {
                let (g, s) = siggers_pair_from_hom(&r, &gp, &o).unwrap();
                let h = hom_from_siggers_pair(&r, &gp, &g, &s).unwrap();
                assert_eq!(h.map, o.map, "blockwise restriction should reproduce o");
                done += 1;
            }
        }
    }
}
