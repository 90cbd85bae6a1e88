//! Seeded random inputs for the audits. Everything routes through splitmix64
//! so a seed reproduces a case exactly.

use crate::op::FiniteOperation;
use crate::rng::SplitMix64;
use crate::structure::{Relation, RelationalStructure, Tuple};

/// Random structure in the given signature: 1..=max_vars variables, each
/// candidate tuple kept with probability `density`/100.
pub fn random_structure(
    rng: &mut SplitMix64,
    max_vars: usize,
    signature: &[usize],
    density: u64,
) -> RelationalStructure {
    let n = 1 + rng.usize_below(max_vars);
    random_structure_with_vars(rng, n, signature, density)
}

pub fn random_structure_with_vars(
    rng: &mut SplitMix64,
    n: usize,
    signature: &[usize],
    density: u64,
) -> RelationalStructure {
    let relations = signature
        .iter()
        .enumerate()
        .map(|(i, &ar)| {
            let mut tuples: Vec<Tuple> = Vec::new();
            let total = (n as u64).pow(ar as u32);
            for idx in 0..total {
                if rng.chance(density, 100) {
                    let mut t = vec![0u32; ar];
                    crate::op::decode(idx as usize, n, &mut t);
                    tuples.push(t);
                }
            }
            Relation::materialized(format!("r{i}"), ar, tuples)
        })
        .collect();
    RelationalStructure::new("rand", n, relations)
}

/// Uniformly random operation table.
pub fn random_operation(
    rng: &mut SplitMix64,
    name: impl Into<String>,
    domain_size: usize,
    arity: usize,
) -> FiniteOperation {
    let table: Vec<u32> = (0..domain_size.pow(arity as u32))
        .map(|_| rng.below(domain_size as u64) as u32)
        .collect();
    FiniteOperation::new(name, domain_size, arity, table).unwrap()
}

/// Rejection-sample an operation preserving every relation of `gamma`.
/// Returns None after `attempts` failures.
pub fn random_polymorphism(
    rng: &mut SplitMix64,
    gamma: &RelationalStructure,
    arity: usize,
    attempts: usize,
) -> Option<FiniteOperation> {
    for _ in 0..attempts {
        let op = random_operation(rng, "f", gamma.domain_size, arity);
        let ok = gamma
            .relations
            .iter()
            .all(|rel| crate::op::preserves_relation(&op, rel).unwrap_or(false));
        if ok {
            return Some(op);
        }
    }
    None
}
