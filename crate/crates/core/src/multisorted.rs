//! Multi-sorted CSP: each variable carries its own domain through a sort
//! function, and relations declare a sort signature.

use crate::error::{Error, Result};
use crate::lift::{decode_pair, LiftedLanguage, Slot};
use crate::op::FiniteOperation;
use crate::solver::{Engine, Problem, SearchOptions};
use crate::structure::{Homomorphism, Relation, RelationalStructure, Tuple};

/// A relation together with its sort signature.
#[derive(Debug, Clone)]
pub struct MultiSortedRelation {
    pub name: String,
    pub signature: Vec<u32>,
    pub tuples: Vec<Tuple>,
}

impl MultiSortedRelation {
    pub fn arity(&self) -> usize {
        self.signature.len()
    }
}

/// An MCSP instance: variables, a sort per variable, and constraints whose
/// relation signatures match the sorts of their scopes.
#[derive(Debug, Clone)]
pub struct MultiSortedInstance {
    pub num_vars: usize,
    pub delta: Vec<u32>,
    pub constraints: Vec<(Vec<usize>, MultiSortedRelation)>,
}

impl MultiSortedInstance {
    pub fn validate(&self, sort_domains: &[usize]) -> Result<()> {
        if self.delta.len() != self.num_vars {
            return Err(Error::Precondition("delta is not total".into()));
        }
        for &s in &self.delta {
            if s as usize >= sort_domains.len() {
                return Err(Error::Precondition(format!("sort {s} has no domain")));
            }
        }
        for (scope, rel) in &self.constraints {
            if scope.len() != rel.arity() {
                return Err(Error::Precondition(format!(
                    "scope length {} for relation {} of arity {}",
                    scope.len(),
                    rel.name,
                    rel.arity()
                )));
            }
            for (j, &v) in scope.iter().enumerate() {
                if self.delta[v] != rel.signature[j] {
                    return Err(Error::Precondition(format!(
                        "variable {v} has sort {} but relation {} expects {} at position {j}",
                        self.delta[v], rel.name, rel.signature[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact backtracking respecting phi(v) in D_{delta(v)}; same deterministic
/// ordering as the single-sorted solver.
pub fn solve_multisorted(
    instance: &MultiSortedInstance,
    sort_domains: &[usize],
) -> Result<Option<Vec<u32>>> {
    instance.validate(sort_domains)?;
    let universe = sort_domains.iter().copied().max().unwrap_or(0).max(1);
    let domains: Vec<Vec<u32>> = instance
        .delta
        .iter()
        .map(|&s| (0..sort_domains[s as usize] as u32).collect())
        .collect();
    let relations: Vec<Relation> = instance
        .constraints
        .iter()
        .map(|(_, rel)| Relation::materialized(rel.name.clone(), rel.arity(), rel.tuples.clone()))
        .collect();
    let constraints: Vec<(Vec<usize>, &Relation)> = instance
        .constraints
        .iter()
        .zip(&relations)
        .map(|((scope, _), rel)| (scope.clone(), rel))
        .collect();
    let problem = Problem { universe, domains, constraints };
    let engine = Engine::new(&problem, SearchOptions::default())?;
    engine.solve()
}

/// Polymorphism of a multi-sorted relation: a per-sort interpretation of one
/// n-ary symbol, applied coordinatewise through the signature.
pub fn multisorted_polymorphism_check(
    interpretations: &dyn Fn(u32) -> FiniteOperation,
    rel: &MultiSortedRelation,
) -> Result<bool> {
    if rel.tuples.is_empty() {
        return Ok(true);
    }
    let ops: Vec<FiniteOperation> = rel.signature.iter().map(|&s| interpretations(s)).collect();
    let n = ops.first().map(|o| o.arity).unwrap_or(1);
    if ops.iter().any(|o| o.arity != n) {
        return Err(Error::Precondition("interpretations disagree on arity".into()));
    }
    let m = rel.arity();
    let mut sel = vec![0usize; n];
    loop {
        let mut image = Vec::with_capacity(m);
        for j in 0..m {
            let args: Vec<u32> = sel.iter().map(|&s| rel.tuples[s][j]).collect();
            image.push(ops[j].apply(&args));
        }
        if !rel.tuples.contains(&image) {
            return Ok(false);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < rel.tuples.len() {
                break;
            }
            sel[i] = 0;
        }
    }
}

/// Reading an instance of CSP(Γ_R) as a multi-sorted CSP.
#[derive(Debug, Clone)]
pub enum MultiSortedView {
    /// Some variable is forced into two distinct blocks; the solution set is
    /// empty.
    Conflict { variable: usize, sorts: (u32, u32) },
    Ok {
        delta: Vec<u32>,
        instance: MultiSortedInstance,
        /// I_p: the instance projected back to the base signature.
        projected: RelationalStructure,
    },
}

/// Preprocess an instance over the (crisp) lifted language: assign each
/// instance variable its block, or report the conflicting variable. On
/// success also returns I_p, which maps homomorphically into R via delta.
pub fn interpret_as_multisorted(
    instance: &RelationalStructure,
    lifted: &LiftedLanguage,
) -> Result<MultiSortedView> {
    let gamma_r = lifted.crisp()?;
    instance.check_signature(gamma_r)?;
    let d = lifted.base_domain;
    let mut delta: Vec<Option<u32>> = vec![None; instance.domain_size];
    let mut assign = |w: usize, sort: u32| -> Option<(usize, (u32, u32))> {
        match delta[w] {
            None => {
                delta[w] = Some(sort);
                None
            }
            Some(prev) if prev == sort => None,
            Some(prev) => Some((w, (prev, sort))),
        }
    };
    for (si, slot) in lifted.slots.iter().enumerate() {
        for t in instance.relations[si].tuples()? {
            match slot {
                Slot::Lifted { anchor, .. } => {
                    for (j, &w) in t.iter().enumerate() {
                        if let Some((variable, sorts)) = assign(w as usize, anchor[j]) {
                            return Ok(MultiSortedView::Conflict { variable, sorts });
                        }
                    }
                }
                Slot::Block { var } => {
                    for &w in t {
                        if let Some((variable, sorts)) = assign(w as usize, *var) {
                            return Ok(MultiSortedView::Conflict { variable, sorts });
                        }
                    }
                }
            }
        }
    }
    // unconstrained variables may take any single block; use block 0
    let delta: Vec<u32> = delta.into_iter().map(|s| s.unwrap_or(0)).collect();

    // constraints over base-domain values: tuples of f_i^v read back through d(v,.)
    let mut constraints = Vec::new();
    let mut projected: Vec<Vec<Tuple>> = vec![Vec::new(); lifted.base_signature.len()];
    for (si, slot) in lifted.slots.iter().enumerate() {
        let Slot::Lifted { base_index, anchor } = slot else { continue };
        let lifted_tuples = gamma_r.relations[si].tuples()?;
        let base_tuples: Vec<Tuple> = lifted_tuples
            .iter()
            .map(|t| t.iter().map(|&x| decode_pair(x, d).1).collect())
            .collect();
        for t in instance.relations[si].tuples()? {
            let scope: Vec<usize> = t.iter().map(|&w| w as usize).collect();
            constraints.push((
                scope,
                MultiSortedRelation {
                    name: slot.format_name(),
                    signature: anchor.clone(),
                    tuples: base_tuples.clone(),
                },
            ));
            projected[*base_index].push(t.clone());
        }
    }
    for (si, slot) in lifted.slots.iter().enumerate() {
        let Slot::Block { var } = slot else { continue };
        for t in instance.relations[si].tuples()? {
            constraints.push((
                vec![t[0] as usize],
                MultiSortedRelation {
                    name: slot.format_name(),
                    signature: vec![*var],
                    tuples: (0..d as u32).map(|a| vec![a]).collect(),
                },
            ));
        }
    }
    let ms = MultiSortedInstance { num_vars: instance.domain_size, delta: delta.clone(), constraints };
    let projected = RelationalStructure::new(
        format!("{}_p", instance.name),
        instance.domain_size,
        lifted
            .base_signature
            .iter()
            .enumerate()
            .map(|(bi, &ar)| Relation::materialized(format!("rho_{bi}"), ar, projected[bi].clone()))
            .collect(),
    );
    Ok(MultiSortedView::Ok { delta, instance: ms, projected })
}

/// The certified homomorphism I_p -> R promised by the preprocessing.
pub fn projected_homomorphism(delta: &[u32]) -> Homomorphism {
    Homomorphism::new(delta.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{canonical_instance, lift_language};
    use crate::rng::SplitMix64;
    use crate::solver::find_homomorphism;
    use crate::structure::is_homomorphism;
    use crate::templates;

    #[test]
    fn forced_singleton() {
        let rel = MultiSortedRelation { name: "u".into(), signature: vec![0], tuples: vec![vec![1]] };
        let inst = MultiSortedInstance { num_vars: 1, delta: vec![0], constraints: vec![(vec![0], rel)] };
        assert_eq!(solve_multisorted(&inst, &[2]).unwrap(), Some(vec![1]));
    }

    #[test]
    fn empty_cross_sort_relation() {
        let rel = MultiSortedRelation { name: "e".into(), signature: vec![0, 1], tuples: vec![] };
        let inst = MultiSortedInstance {
            num_vars: 2,
            delta: vec![0, 1],
            constraints: vec![(vec![0, 1], rel)],
        };
        assert_eq!(solve_multisorted(&inst, &[2, 3]).unwrap(), None);
    }

    #[test]
    fn identity_interpretation_is_polymorphism() {
        let rel = MultiSortedRelation {
            name: "r".into(),
            signature: vec![0, 1],
            tuples: vec![vec![0, 1], vec![1, 0]],
        };
        let id = |_: u32| FiniteOperation::projection(2, 1, 0);
        assert!(multisorted_polymorphism_check(&id, &rel).unwrap());
    }

    #[test]
    fn coordinate_escaping_interpretation_fails() {
        // constants on both sorts push the image to (0,0), outside the relation
        let rel = MultiSortedRelation {
            name: "r".into(),
            signature: vec![0, 1],
            tuples: vec![vec![0, 1], vec![1, 0]],
        };
        let consts = |_: u32| FiniteOperation::constant(2, 1, 0);
        assert!(!multisorted_polymorphism_check(&consts, &rel).unwrap());
    }

    #[test]
    fn canonical_instances_are_conflict_free_and_roundtrip() {
        let mut rng = SplitMix64::new(5);
        let gamma = templates::btw_template();
        for _ in 0..20 {
            let r = crate::gen::random_structure(&mut rng, 4, &gamma.signature(), 20);
            let lifted = lift_language(&gamma, &r).unwrap();
            let canon = canonical_instance(&r, &lifted);
            match interpret_as_multisorted(&canon, &lifted).unwrap() {
                MultiSortedView::Conflict { .. } => panic!("canonical instance conflicted"),
                MultiSortedView::Ok { delta, instance, projected } => {
                    // delta is a homomorphism I_p -> R
                    let h = projected_homomorphism(&delta);
                    assert!(is_homomorphism(&projected, &r, &h).unwrap());
                    // solving matches the direct search
                    let sorts = vec![lifted.base_domain; lifted.num_vars];
                    let solved = solve_multisorted(&instance, &sorts).unwrap();
                    let direct = find_homomorphism(&r, &gamma).unwrap();
                    assert_eq!(solved.is_some(), direct.is_some());
                }
            }
        }
    }

    #[test]
    fn shared_variable_conflict() {
        let r = RelationalStructure::new(
            "r",
            2,
            vec![Relation::materialized("e", 2, vec![vec![0, 1], vec![1, 0]])],
        );
        let lifted = lift_language(&templates::k2(), &r).unwrap();
        // one instance variable used in slot f^(0,1) position 0 and slot
        // f^(1,0) position 0 forces blocks 0 and 1 at once
        let inst = RelationalStructure::new(
            "i",
            1,
            vec![
                Relation::materialized("c0", 2, vec![vec![0, 0]]),
                Relation::materialized("c1", 2, vec![vec![0, 0]]),
                Relation::materialized("b0", 1, vec![]),
                Relation::materialized("b1", 1, vec![]),
            ],
        );
        match interpret_as_multisorted(&inst, &lifted).unwrap() {
            MultiSortedView::Conflict { variable, .. } => assert_eq!(variable, 0),
            _ => panic!("expected a conflict"),
        }
    }

    // agreement with the single-sorted solver when every sort is the same
    #[test]
    fn agreement_with_single_sorted() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..20 {
            let r = crate::gen::random_structure(&mut rng, 4, &[2], 30);
            let t = crate::gen::random_structure(&mut rng, 3, &[2], 50);
            let mut constraints = Vec::new();
            for tu in r.relations[0].tuples().unwrap() {
                constraints.push((
                    tu.iter().map(|&v| v as usize).collect::<Vec<_>>(),
                    MultiSortedRelation {
                        name: "e".into(),
                        signature: vec![0, 0],
                        tuples: t.relations[0].tuples().unwrap().to_vec(),
                    },
                ));
            }
            let inst = MultiSortedInstance {
                num_vars: r.domain_size,
                delta: vec![0; r.domain_size],
                constraints,
            };
            let ms = solve_multisorted(&inst, &[t.domain_size]).unwrap();
            let direct = find_homomorphism(&r, &t).unwrap();
            assert_eq!(ms.is_some(), direct.is_some());
        }
    }
}
