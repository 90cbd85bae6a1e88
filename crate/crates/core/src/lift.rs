//! The lifted language: given a template over D and an input structure over
//! V, a language over V x D in which every base tuple is pinned to its
//! variable block. Encoding: (v, a) <-> v*|D| + a, fixed and part of the
//! file-format contract.

use crate::error::{Error, Result};
use crate::rational::CostValue;
use crate::structure::{Relation, RelationalStructure, Tuple};
use crate::valued::CostFunction;

pub fn encode_pair(v: u32, a: u32, base_domain: usize) -> u32 {
    v * base_domain as u32 + a
}

pub fn decode_pair(x: u32, base_domain: usize) -> (u32, u32) {
    (x / base_domain as u32, x % base_domain as u32)
}

/// One relation slot of a lifted language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    /// f_i^v: base relation index i pinned to the variable tuple v.
    Lifted { base_index: usize, anchor: Tuple },
    /// The unary block relation D_v.
    Block { var: u32 },
}

impl Slot {
    pub fn format_name(&self) -> String {
        match self {
            Slot::Lifted { base_index, anchor } => {
                let vs: Vec<String> = anchor.iter().map(|v| v.to_string()).collect();
                format!("f_{}@{}", base_index, vs.join(","))
            }
            Slot::Block { var } => format!("Dom@{var}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum LiftedPayload {
    Crisp(RelationalStructure),
    Valued(Vec<CostFunction>),
}

#[derive(Debug, Clone)]
pub struct LiftedLanguage {
    pub base_domain: usize,
    pub base_signature: Vec<usize>,
    pub num_vars: usize,
    pub slots: Vec<Slot>,
    pub payload: LiftedPayload,
}

impl LiftedLanguage {
    pub fn domain_size(&self) -> usize {
        self.num_vars * self.base_domain
    }

    pub fn crisp(&self) -> Result<&RelationalStructure> {
        match &self.payload {
            LiftedPayload::Crisp(s) => Ok(s),
            LiftedPayload::Valued(_) => Err(Error::Unsupported("lifted language is valued".into())),
        }
    }

    pub fn costs(&self) -> Result<&[CostFunction]> {
        match &self.payload {
            LiftedPayload::Valued(fs) => Ok(fs),
            LiftedPayload::Crisp(_) => Err(Error::Unsupported("lifted language is crisp".into())),
        }
    }
}

fn slot_list(base_arities: &[usize], r: &RelationalStructure) -> Result<Vec<Slot>> {
    if r.signature() != base_arities {
        return Err(Error::SignatureMismatch {
            expected: base_arities.to_vec(),
            found: r.signature(),
        });
    }
    let mut slots = Vec::new();
    for (i, rel) in r.relations.iter().enumerate() {
        for anchor in rel.tuples()? {
            slots.push(Slot::Lifted { base_index: i, anchor: anchor.clone() });
        }
    }
    for v in 0..r.domain_size as u32 {
        slots.push(Slot::Block { var: v });
    }
    Ok(slots)
}

/// Crisp lift: f_i^v = { d(v, y) : y in rho_i } plus the block relations.
pub fn lift_language(gamma: &RelationalStructure, r: &RelationalStructure) -> Result<LiftedLanguage> {
    let slots = slot_list(&gamma.signature(), r)?;
    let d = gamma.domain_size;
    let mut relations = Vec::with_capacity(slots.len());
    for slot in &slots {
        match slot {
            Slot::Lifted { base_index, anchor } => {
                let base = gamma.relations[*base_index].tuples()?;
                let tuples: Vec<Tuple> = base
                    .iter()
                    .map(|y| {
                        y.iter().zip(anchor).map(|(&a, &v)| encode_pair(v, a, d)).collect()
                    })
                    .collect();
                relations.push(Relation::materialized(
                    slot.format_name(),
                    gamma.relations[*base_index].arity,
                    tuples,
                ));
            }
            Slot::Block { var } => {
                let tuples: Vec<Tuple> =
                    (0..d as u32).map(|a| vec![encode_pair(*var, a, d)]).collect();
                relations.push(Relation::materialized(slot.format_name(), 1, tuples));
            }
        }
    }
    let structure = RelationalStructure::new(
        format!("{}_{}", gamma.name, r.name),
        r.domain_size * d,
        relations,
    );
    Ok(LiftedLanguage {
        base_domain: d,
        base_signature: gamma.signature(),
        num_vars: r.domain_size,
        slots,
        payload: LiftedPayload::Crisp(structure),
    })
}

/// Valued lift: f_i^v(x) = f_i(y) when x = d(v, y), infinity off-block;
/// blocks become 0/infinity unary costs.
pub fn lift_language_valued(template: &[CostFunction], r: &RelationalStructure) -> Result<LiftedLanguage> {
    let arities: Vec<usize> = template.iter().map(|f| f.arity).collect();
    let slots = slot_list(&arities, r)?;
    let d = template.first().map(|f| f.domain_size).unwrap_or(0);
    let lifted_domain = r.domain_size * d;
    let mut costs = Vec::with_capacity(slots.len());
    for slot in &slots {
        match slot {
            Slot::Lifted { base_index, anchor } => {
                let f = &template[*base_index];
                let entries: Vec<(Tuple, CostValue)> = f
                    .entries()
                    .map(|(y, &c)| {
                        let x: Tuple =
                            y.iter().zip(anchor).map(|(&a, &v)| encode_pair(v, a, d)).collect();
                        (x, c)
                    })
                    .collect();
                costs.push(CostFunction::from_entries(slot.format_name(), lifted_domain, f.arity, entries));
            }
            Slot::Block { var } => {
                let entries: Vec<(Tuple, CostValue)> = (0..d as u32)
                    .map(|a| (vec![encode_pair(*var, a, d)], CostValue::zero()))
                    .collect();
                costs.push(CostFunction::from_entries(slot.format_name(), lifted_domain, 1, entries));
            }
        }
    }
    Ok(LiftedLanguage {
        base_domain: d,
        base_signature: arities,
        num_vars: r.domain_size,
        slots,
        payload: LiftedPayload::Valued(costs),
    })
}

/// The canonical instance of CSP(Γ_R): a structure over the variable set V
/// whose slot relations are singletons, so that homomorphisms into Γ_R
/// correspond one-to-one with homomorphisms R -> Γ.
pub fn canonical_instance(r: &RelationalStructure, lifted: &LiftedLanguage) -> RelationalStructure {
    let mut relations = Vec::with_capacity(lifted.slots.len());
    for slot in &lifted.slots {
        match slot {
            Slot::Lifted { anchor, .. } => {
                relations.push(Relation::materialized(
                    format!("pin_{}", slot.format_name()),
                    anchor.len(),
                    vec![anchor.clone()],
                ));
            }
            Slot::Block { var } => {
                relations.push(Relation::materialized(
                    format!("pin_{}", slot.format_name()),
                    1,
                    vec![vec![*var]],
                ));
            }
        }
    }
    RelationalStructure::new(format!("{}'", r.name), r.domain_size, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{count_homomorphisms_exhaustive, find_homomorphism};
    use crate::structure::is_homomorphism;
    use crate::templates;

    fn single_edge() -> RelationalStructure {
        RelationalStructure::new(
            "edge",
            2,
            vec![Relation::materialized("e", 2, vec![vec![0, 1]])],
        )
    }

    #[test]
    fn k2_lift_over_single_edge() {
        let lifted = lift_language(&templates::k2(), &single_edge()).unwrap();
        assert_eq!(lifted.domain_size(), 4);
        let s = lifted.crisp().unwrap();
        // f^(0,1) = {((0,0),(1,1)), ((0,1),(1,0))} under the v*2+a encoding
        assert_eq!(s.relations[0].tuples().unwrap(), &[vec![0, 3], vec![1, 2]]);
        // two block relations
        assert_eq!(s.relations.len(), 3);
    }

    #[test]
    fn btw_lift_tuple_counts() {
        let r = RelationalStructure::new(
            "r",
            3,
            vec![
                Relation::materialized("z", 1, vec![]),
                Relation::materialized("o", 1, vec![]),
                Relation::materialized("t", 3, vec![vec![0, 1, 2]]),
            ],
        );
        let lifted = lift_language(&templates::btw_template(), &r).unwrap();
        let s = lifted.crisp().unwrap();
        // one ternary slot with |btw| = 6 tuples, then three block relations
        assert_eq!(s.relations.len(), 4);
        assert_eq!(s.relations[0].tuples().unwrap().len(), 6);
        // block invariant: every entry of f^v lies in its declared block
        if let Slot::Lifted { anchor, .. } = &lifted.slots[0] {
            for t in s.relations[0].tuples().unwrap() {
                for (j, &x) in t.iter().enumerate() {
                    assert_eq!(decode_pair(x, 2).0, anchor[j]);
                }
            }
        } else {
            panic!("first slot should be lifted");
        }
    }

    #[test]
    fn valued_lift_is_infinite_off_block() {
        let template = templates::independent_set_template();
        let mut rels = vec![Relation::materialized("e", 2, vec![vec![0, 1]])];
        for i in 0..4 {
            rels.push(Relation::materialized(format!("u{i}"), 1, vec![]));
        }
        let r = RelationalStructure::new("edge", 2, rels);
        let lifted = lift_language_valued(&template, &r).unwrap();
        let costs = lifted.costs().unwrap();
        let f = &costs[0];
        // on-block tuple d((0,1),(1,1)) keeps the base value (infinity)
        assert_eq!(f.evaluate(&[1, 3]), CostValue::Infinity);
        // on-block finite value survives
        assert_eq!(f.evaluate(&[0, 3]), CostValue::zero());
        // off-block tuples are infinite, exhaustively
        for x in 0..4u32 {
            for y in 0..4u32 {
                let on_block = decode_pair(x, 2).0 == 0 && decode_pair(y, 2).0 == 1;
                if !on_block {
                    assert_eq!(f.evaluate(&[x, y]), CostValue::Infinity);
                }
            }
        }
    }

    #[test]
    fn canonical_instance_correspondence_counts() {
        let c4 = templates::cycle(4);
        let k2 = templates::k2();
        let lifted = lift_language(&k2, &c4).unwrap();
        let canon = canonical_instance(&c4, &lifted);
        let direct = count_homomorphisms_exhaustive(&c4, &k2).unwrap();
        let through = count_homomorphisms_exhaustive(&canon, lifted.crisp().unwrap()).unwrap();
        assert_eq!(direct, through);
        assert!(direct > 0);
    }

    #[test]
    fn canonical_instance_of_empty_relations() {
        let r = RelationalStructure::new(
            "r",
            2,
            vec![Relation::materialized("e", 2, vec![])],
        );
        let k2 = templates::k2();
        let lifted = lift_language(&k2, &r).unwrap();
        let canon = canonical_instance(&r, &lifted);
        // no tuple slots, only block pins; any block-respecting map works
        let h = find_homomorphism(&canon, lifted.crisp().unwrap()).unwrap().unwrap();
        assert!(is_homomorphism(&canon, lifted.crisp().unwrap(), &h).unwrap());
    }
}
