//! Algebras over a fixed signature and domain, finite sets of them, and the
//! structure Γ^𝔅 whose relations hold when the member algebras' operations
//! are componentwise polymorphisms.

use crate::clone::{TractabilityOracle, TractabilityVerdict};
use crate::error::{Error, Result};
use crate::op::{componentwise_preserves, FiniteOperation};
use crate::structure::{is_homomorphism, Homomorphism, Relation, RelationalStructure, Tuple};

/// A list of operation symbols with prescribed arities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSignature {
    pub arities: Vec<usize>,
}

impl AlgebraSignature {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::Precondition("a signature needs at least one symbol".into()));
        }
        Ok(AlgebraSignature { arities })
    }

    /// The single-binary-symbol signature used throughout the examples.
    pub fn single_binary() -> Self {
        AlgebraSignature { arities: vec![2] }
    }
}

/// One operation table per signature symbol, all over one domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub domain_size: usize,
    pub ops: Vec<FiniteOperation>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, signature: &AlgebraSignature, ops: Vec<FiniteOperation>) -> Result<Self> {
        if ops.len() != signature.arities.len() {
            return Err(Error::Precondition("operation count must match the signature".into()));
        }
        let domain_size = ops.first().map(|o| o.domain_size).unwrap_or(0);
        for (op, &ar) in ops.iter().zip(&signature.arities) {
            if op.arity != ar || op.domain_size != domain_size {
                return Err(Error::Precondition(format!(
                    "operation {} does not fit the signature",
                    op.name
                )));
            }
        }
        Ok(Algebra { name: name.into(), domain_size, ops })
    }

    /// Algebras are identified extensionally by their operation tables.
    pub fn fingerprint(&self) -> Vec<Vec<u32>> {
        self.ops.iter().map(|o| o.table.clone()).collect()
    }
}

/// The constant algebra a^σ: every operation is constantly a.
pub fn constant_algebra(a: u32, signature: &AlgebraSignature, domain_size: usize) -> Algebra {
    let ops = signature
        .arities
        .iter()
        .map(|&ar| FiniteOperation::constant(domain_size, ar, a))
        .collect();
    Algebra { name: format!("const{a}"), domain_size, ops }
}

/// A finite ordered set of algebras over one signature and domain, with no
/// duplicate fingerprints. Order is identity: Γ^𝔅's domain indexes into it.
#[derive(Debug, Clone)]
pub struct AlgebraSet {
    pub signature: AlgebraSignature,
    pub domain_size: usize,
    pub members: Vec<Algebra>,
}

impl AlgebraSet {
    pub fn new(signature: AlgebraSignature, domain_size: usize, members: Vec<Algebra>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for m in &members {
            if m.domain_size != domain_size || m.ops.len() != signature.arities.len() {
                return Err(Error::Precondition(format!("algebra {} does not fit the set", m.name)));
            }
            for (op, &ar) in m.ops.iter().zip(&signature.arities) {
                if op.arity != ar {
                    return Err(Error::Precondition(format!("algebra {} breaks the signature", m.name)));
                }
            }
            if !seen.insert(m.fingerprint()) {
                return Err(Error::Precondition(format!("duplicate algebra fingerprint ({})", m.name)));
            }
        }
        Ok(AlgebraSet { signature, domain_size, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, a: &Algebra) -> Option<u32> {
        let fp = a.fingerprint();
        self.members.iter().position(|m| m.fingerprint() == fp).map(|i| i as u32)
    }

    /// Every algebra over the domain with this signature, in lexicographic
    /// table order. Capacity-guarded.
    pub fn full(signature: AlgebraSignature, domain_size: usize) -> Result<Self> {
        let mut count: u64 = 1;
        for &ar in &signature.arities {
            let tables = (domain_size as u64).checked_pow(domain_size.pow(ar as u32) as u32);
            count = tables.and_then(|t| count.checked_mul(t)).ok_or_else(|| {
                Error::Capacity("full algebra set does not fit".into())
            })?;
        }
        if count > 65536 {
            return Err(Error::Capacity(format!("full algebra set has {count} members")));
        }
        let mut members = Vec::new();
        let mut tables: Vec<Vec<u32>> = signature
            .arities
            .iter()
            .map(|&ar| vec![0u32; domain_size.pow(ar as u32)])
            .collect();
        loop {
            let ops: Vec<FiniteOperation> = tables
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    FiniteOperation::new(format!("o{i}"), domain_size, signature.arities[i], t.clone())
                        .unwrap()
                })
                .collect();
            members.push(Algebra {
                name: format!("a{}", members.len()),
                domain_size,
                ops,
            });
            // odometer over all tables of all symbols
            let mut sym = signature.arities.len();
            'outer: loop {
                if sym == 0 {
                    return AlgebraSet::new(signature, domain_size, members);
                }
                sym -= 1;
                let table = &mut tables[sym];
                let mut pos = table.len();
                loop {
                    if pos == 0 {
                        for v in table.iter_mut() {
                            *v = 0;
                        }
                        break;
                    }
                    pos -= 1;
                    table[pos] += 1;
                    if (table[pos] as usize) < domain_size {
                        break 'outer;
                    }
                    table[pos] = 0;
                }
            }
        }
    }
}

/// 𝔅 is extending when it contains every constant algebra a^σ.
pub fn is_extending(set: &AlgebraSet) -> bool {
    (0..set.domain_size as u32).all(|a| {
        set.index_of(&constant_algebra(a, &set.signature, set.domain_size)).is_some()
    })
}

/// Membership in ρ^𝔅: for every symbol, the member operations are a
/// componentwise polymorphism of ρ.
pub fn rho_b_membership(rel: &Relation, algebras: &[&Algebra]) -> Result<bool> {
    if algebras.len() != rel.arity {
        return Err(Error::Precondition(format!(
            "{} algebras for a relation of arity {}",
            algebras.len(),
            rel.arity
        )));
    }
    let symbols = algebras.first().map(|a| a.ops.len()).unwrap_or(0);
    for i in 0..symbols {
        let ops: Vec<&FiniteOperation> = algebras.iter().map(|a| &a.ops[i]).collect();
        if !componentwise_preserves(&ops, rel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cap on |𝔅|^arity for materializing a relation of Γ^𝔅.
pub const GAMMA_B_CAP: u64 = 2_000_000;

/// Γ^𝔅 over the member indices of 𝔅. Relations are materialized when they
/// fit, lazy otherwise.
pub fn build_gamma_b(gamma: &RelationalStructure, set: &AlgebraSet) -> Result<RelationalStructure> {
    let n = set.len();
    let relations = gamma
        .relations
        .iter()
        .map(|rel| -> Result<Relation> {
            let m = rel.arity;
            let count = (n as u64).checked_pow(m as u32);
            if count.is_some_and(|c| c <= GAMMA_B_CAP) {
                let mut tuples: Vec<Tuple> = Vec::new();
                let mut t = vec![0u32; m];
                if n > 0 {
                    loop {
                        let picks: Vec<&Algebra> =
                            t.iter().map(|&i| &set.members[i as usize]).collect();
                        if rho_b_membership(rel, &picks)? {
                            tuples.push(t.clone());
                        }
                        let mut i = m;
                        loop {
                            if i == 0 {
                                return Ok(Relation::materialized(
                                    format!("{}^B", rel.name),
                                    m,
                                    tuples,
                                ));
                            }
                            i -= 1;
                            t[i] += 1;
                            if (t[i] as usize) < n {
                                break;
                            }
                            t[i] = 0;
                        }
                    }
                }
                Ok(Relation::materialized(format!("{}^B", rel.name), m, tuples))
            } else {
                let rel_owned = rel.clone();
                let set_owned = set.clone();
                Ok(Relation::lazy(
                    format!("{}^B", rel.name),
                    m,
                    std::sync::Arc::new(move |t: &[u32]| {
                        let picks: Vec<&Algebra> =
                            t.iter().map(|&i| &set_owned.members[i as usize]).collect();
                        rho_b_membership(&rel_owned, &picks).unwrap_or(false)
                    }),
                ))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationalStructure::new(format!("{}^B", gamma.name), n, relations))
}

/// a -> a^σ: the embedding Γ -> Γ^𝔅 available whenever 𝔅 is extending.
pub fn extending_embedding(
    gamma: &RelationalStructure,
    set: &AlgebraSet,
    gamma_b: &RelationalStructure,
) -> Result<Homomorphism> {
    if !is_extending(set) {
        return Err(Error::Precondition("the algebra set is not extending".into()));
    }
    let map: Vec<u32> = (0..gamma.domain_size as u32)
        .map(|a| {
            set.index_of(&constant_algebra(a, &set.signature, set.domain_size))
                .expect("extending set contains every constant")
        })
        .collect();
    let h = Homomorphism::new(map);
    if !is_homomorphism(gamma, gamma_b, &h)? {
        return Err(Error::TheoremViolation(
            "extending embedding failed the homomorphism check".into(),
        ));
    }
    Ok(h)
}

/// Verdict on a set of algebras, with per-member evidence. `Tractable`
/// requires every member to pass the oracle; anything else is `Unknown`,
/// never a claim of hardness.
#[derive(Debug, Clone)]
pub struct SetVerdict {
    pub verdict: TractabilityVerdict,
    pub oracle: String,
    pub per_member: Vec<(String, TractabilityVerdict)>,
}

pub fn is_tractable_set(set: &AlgebraSet, oracle: &dyn TractabilityOracle) -> SetVerdict {
    let per_member: Vec<(String, TractabilityVerdict)> = set
        .members
        .iter()
        .map(|a| (a.name.clone(), oracle.judge(&a.ops)))
        .collect();
    let verdict = if per_member.iter().all(|(_, v)| *v == TractabilityVerdict::Tractable) {
        TractabilityVerdict::Tractable
    } else {
        TractabilityVerdict::Unknown
    };
    SetVerdict { verdict, oracle: oracle.name().to_string(), per_member }
}

/// Cap on |D|^|𝔅| for the cartesian product algebra.
pub const PRODUCT_CAP: u64 = 10_000;

/// The cartesian product of the members: domain D^|𝔅|, componentwise ops.
pub fn product_algebra(set: &AlgebraSet) -> Result<Algebra> {
    let k = set.len();
    let d = set.domain_size;
    let size = (d as u64).checked_pow(k as u32).filter(|&s| s <= PRODUCT_CAP);
    let size = size.ok_or_else(|| {
        Error::Capacity(format!("product domain {d}^{k} exceeds {PRODUCT_CAP}"))
    })? as usize;
    let decode_elem = |x: usize| -> Vec<u32> {
        let mut t = vec![0u32; k];
        crate::op::decode(x, d, &mut t);
        t
    };
    let encode_elem =
        |t: &[u32]| -> u32 { t.iter().fold(0usize, |acc, &v| acc * d + v as usize) as u32 };
    let ops = set
        .signature
        .arities
        .iter()
        .enumerate()
        .map(|(i, &ar)| {
            let table: Vec<u32> = crate::op::arg_tuples(size, ar)
                .map(|args| {
                    let decoded: Vec<Vec<u32>> =
                        args.iter().map(|&x| decode_elem(x as usize)).collect();
                    let out: Vec<u32> = (0..k)
                        .map(|j| {
                            let member_args: Vec<u32> = decoded.iter().map(|t| t[j]).collect();
                            set.members[j].ops[i].apply(&member_args)
                        })
                        .collect();
                    encode_elem(&out)
                })
                .collect();
            FiniteOperation::new(format!("o{i}"), size, ar, table).unwrap()
        })
        .collect();
    Ok(Algebra { name: "product".into(), domain_size: size, ops })
}

/// The realization of the worked example: every binary Boolean algebra whose
/// operation passes the built-in tractability oracle. Extending (both
/// constants pass) and tractable by construction.
pub fn comoblom_boolean_set() -> Result<AlgebraSet> {
    let signature = AlgebraSignature::single_binary();
    let oracle = crate::clone::BooleanOracle;
    let mut members = Vec::new();
    for bits in 0..16u32 {
        let table: Vec<u32> = (0..4).map(|i| bits >> (3 - i) & 1).collect();
        let op = FiniteOperation::new(format!("b{bits}"), 2, 2, table).unwrap();
        if oracle.judge(std::slice::from_ref(&op)) == TractabilityVerdict::Tractable {
            members.push(Algebra { name: format!("a{bits}"), domain_size: 2, ops: vec![op] });
        }
    }
    AlgebraSet::new(signature, 2, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clone::{BooleanOracle, TractabilityVerdict};
    use crate::op::{bool_min, FiniteOperation};
    use crate::rng::SplitMix64;
    use crate::templates;

    fn sig() -> AlgebraSignature {
        AlgebraSignature::single_binary()
    }

    fn pair_of_constants() -> AlgebraSet {
        AlgebraSet::new(
            sig(),
            2,
            vec![constant_algebra(0, &sig(), 2), constant_algebra(1, &sig(), 2)],
        )
        .unwrap()
    }

    #[test]
    fn constant_algebra_tables() {
        let a = constant_algebra(0, &sig(), 2);
        assert_eq!(a.ops[0].table, vec![0, 0, 0, 0]);
    }

    #[test]
    fn extending_checks() {
        assert!(is_extending(&pair_of_constants()));
        let only_zero =
            AlgebraSet::new(sig(), 2, vec![constant_algebra(0, &sig(), 2)]).unwrap();
        assert!(!is_extending(&only_zero));
    }

    #[test]
    fn rho_b_constant_members() {
        // constants with (a,a) in rho componentwise preserve it
        let rel = Relation::materialized("r", 2, vec![vec![0, 0], vec![1, 1]]);
        let c0 = constant_algebra(0, &sig(), 2);
        assert!(rho_b_membership(&rel, &[&c0, &c0]).unwrap());
        // an algebra whose op breaks rho fails (reduces to preserves_relation)
        let nand = Algebra::new("n", &sig(), vec![crate::op::bool_nand()]).unwrap();
        let eq = Relation::materialized("eq", 2, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(
            rho_b_membership(&eq, &[&nand, &nand]).unwrap(),
            crate::op::preserves_relation(&nand.ops[0], &eq).unwrap()
        );
    }

    // independent double-loop oracle for rho_b_membership on a ternary rel
    #[test]
    fn rho_b_agrees_with_double_loop() {
        let btw = templates::btw_template().relations[2].clone();
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let mut rng = SplitMix64::new(41);
        for _ in 0..30 {
            let picks: Vec<&Algebra> =
                (0..3).map(|_| &full.members[rng.usize_below(full.len())]).collect();
            let fast = rho_b_membership(&btw, &picks).unwrap();
            // oracle: quantify over all pairs of btw tuples directly
            let tuples = btw.tuples().unwrap();
            let mut slow = true;
            'outer: for x in tuples {
                for y in tuples {
                    let img: Vec<u32> = (0..3)
                        .map(|j| picks[j].ops[0].apply(&[x[j], y[j]]))
                        .collect();
                    if !tuples.contains(&img) {
                        slow = false;
                        break 'outer;
                    }
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn gamma_b_of_k2_with_constants() {
        let k2 = templates::k2();
        let gb = build_gamma_b(&k2, &pair_of_constants()).unwrap();
        assert_eq!(gb.relations[0].tuples().unwrap(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn gamma_b_full_and_empty_relations() {
        let set = pair_of_constants();
        let full_rel = RelationalStructure::new(
            "f",
            2,
            vec![Relation::materialized("full", 2, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]])],
        );
        let gb = build_gamma_b(&full_rel, &set).unwrap();
        assert_eq!(gb.relations[0].tuples().unwrap().len(), 4);
        let empty_rel = RelationalStructure::new(
            "e",
            2,
            vec![Relation::materialized("empty", 2, vec![])],
        );
        let gb = build_gamma_b(&empty_rel, &set).unwrap();
        assert_eq!(gb.relations[0].tuples().unwrap().len(), 4);
    }

    #[test]
    fn extending_embeddings_hold() {
        for gamma in [templates::k2(), templates::btw_template()] {
            let set = comoblom_boolean_set().unwrap();
            let gb = build_gamma_b(&gamma, &set).unwrap();
            let h = extending_embedding(&gamma, &set, &gb).unwrap();
            assert!(is_homomorphism(&gamma, &gb, &h).unwrap());
        }
    }

    #[test]
    fn missing_constant_is_an_error() {
        let set = AlgebraSet::new(sig(), 2, vec![constant_algebra(0, &sig(), 2)]).unwrap();
        let k2 = templates::k2();
        let gb = build_gamma_b(&k2, &set).unwrap();
        assert!(matches!(
            extending_embedding(&k2, &set, &gb),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn comoblom_set_shape() {
        let set = comoblom_boolean_set().unwrap();
        assert_eq!(set.len(), 12);
        assert!(is_extending(&set));
        let verdict = is_tractable_set(&set, &BooleanOracle);
        assert_eq!(verdict.verdict, TractabilityVerdict::Tractable);
    }

    #[test]
    fn projection_member_makes_set_unknown() {
        let proj = Algebra::new("p1", &sig(), vec![FiniteOperation::projection(2, 2, 0)]).unwrap();
        let set = AlgebraSet::new(sig(), 2, vec![proj]).unwrap();
        let verdict = is_tractable_set(&set, &BooleanOracle);
        assert_eq!(verdict.verdict, TractabilityVerdict::Unknown);
    }

    #[test]
    fn product_of_constants_is_constant() {
        let set = pair_of_constants();
        let p = product_algebra(&set).unwrap();
        assert_eq!(p.domain_size, 4);
        // componentwise (0,1) everywhere: encoded as 0*2+1 = 1
        assert!(p.ops[0].table.iter().all(|&v| v == 1));
    }

    #[test]
    fn min_algebra_is_tractable() {
        let a = Algebra::new("min", &sig(), vec![bool_min()]).unwrap();
        assert_eq!(BooleanOracle.judge(&a.ops), TractabilityVerdict::Tractable);
    }
}
