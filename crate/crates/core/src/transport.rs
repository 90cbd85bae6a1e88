//! Outside and inside polymorphisms of Γ^𝔅, the transport of term
//! identities from operations on D to operations on algebras, and the
//! audited theorems connecting them.

use crate::algebra::{build_gamma_b, Algebra, AlgebraSet};
use crate::error::{Error, Result};
use crate::lift::{lift_language, Slot};
use crate::multisorted::{multisorted_polymorphism_check, MultiSortedRelation};
use crate::op::{arg_tuples, preserves_relation, FiniteOperation, OperationSystem};
use crate::siggers::is_siggers_pair;
use crate::structure::RelationalStructure;

/// f applied outside: the algebra whose i-th operation is the pointwise
/// f-combination of the inputs' i-th operations.
pub fn outside_apply(f: &FiniteOperation, algebras: &[&Algebra]) -> Result<Algebra> {
    if algebras.len() != f.arity {
        return Err(Error::Precondition(format!(
            "outside application of {}-ary f to {} algebras",
            f.arity,
            algebras.len()
        )));
    }
    let first = algebras
        .first()
        .ok_or_else(|| Error::Precondition("outside application needs at least one algebra".into()))?;
    let d = first.domain_size;
    let ops = (0..first.ops.len())
        .map(|i| {
            let ar = first.ops[i].arity;
            let table: Vec<u32> = arg_tuples(d, ar)
                .map(|args| {
                    let outs: Vec<u32> = algebras.iter().map(|a| a.ops[i].apply(&args)).collect();
                    f.apply(&outs)
                })
                .collect();
            FiniteOperation::new(format!("o{i}"), d, ar, table)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Algebra { name: format!("{}^A", f.name), domain_size: d, ops })
}

/// f^𝔄 preserves the unary predicate 𝔅: every tuple over 𝔅 maps back in.
pub fn outside_preserves(f: &FiniteOperation, set: &AlgebraSet) -> Result<bool> {
    let n = f.arity;
    let k = set.len();
    if k == 0 {
        return Ok(true);
    }
    let mut sel = vec![0usize; n];
    loop {
        let picks: Vec<&Algebra> = sel.iter().map(|&i| &set.members[i]).collect();
        let out = outside_apply(f, &picks)?;
        if set.index_of(&out).is_none() {
            return Ok(false);
        }
        let mut i = n;
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

/// The inside unary map a_f̄: precompose each operation's arguments with the
/// system's slot operations.
pub fn inside_apply(system: &OperationSystem, algebra: &Algebra) -> Result<Algebra> {
    if system.per_symbol.len() != algebra.ops.len() {
        return Err(Error::Precondition("system does not match the signature".into()));
    }
    let d = algebra.domain_size;
    let ops = algebra
        .ops
        .iter()
        .zip(&system.per_symbol)
        .enumerate()
        .map(|(i, (op, slots))| {
            if slots.len() != op.arity {
                return Err(Error::Precondition(format!(
                    "symbol {i} has arity {} but the system provides {} slots",
                    op.arity,
                    slots.len()
                )));
            }
            let table: Vec<u32> = arg_tuples(d, op.arity)
                .map(|args| {
                    let inner: Vec<u32> = slots.iter().map(|fj| fj.apply(&args)).collect();
                    op.apply(&inner)
                })
                .collect();
            FiniteOperation::new(format!("o{i}"), d, op.arity, table)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Algebra { name: format!("a_f({})", algebra.name), domain_size: d, ops })
}

pub fn inside_preserves(system: &OperationSystem, set: &AlgebraSet) -> Result<bool> {
    for a in &set.members {
        if set.index_of(&inside_apply(system, a)?).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operation induced on 𝔅's index set by the outside application of f.
/// Requires f^𝔄 to preserve 𝔅.
pub fn outside_operation_on_set(f: &FiniteOperation, set: &AlgebraSet) -> Result<FiniteOperation> {
    let k = set.len();
    let table: Vec<u32> = arg_tuples(k, f.arity)
        .map(|args| -> Result<u32> {
            let picks: Vec<&Algebra> = args.iter().map(|&i| &set.members[i as usize]).collect();
            let out = outside_apply(f, &picks)?;
            set.index_of(&out).ok_or_else(|| {
                Error::Precondition(format!("f^A leaves the set on input {args:?}"))
            })
        })
        .collect::<Result<_>>()?;
    FiniteOperation::new(format!("{}^A", f.name), k, f.arity, table)
}

pub fn inside_operation_on_set(system: &OperationSystem, set: &AlgebraSet) -> Result<FiniteOperation> {
    let k = set.len();
    let table: Vec<u32> = (0..k)
        .map(|i| -> Result<u32> {
            let out = inside_apply(system, &set.members[i])?;
            set.index_of(&out).ok_or_else(|| {
                Error::Precondition(format!("a_f leaves the set on member {i}"))
            })
        })
        .collect::<Result<_>>()?;
    FiniteOperation::new("a_f", k, 1, table)
}

/// Which lifted-polymorphism theorem to verify.
pub enum LiftedKind<'a> {
    Outside(&'a FiniteOperation),
    Inside(&'a OperationSystem),
}

/// Check that the induced operation on 𝔅 preserves every relation of Γ^𝔅.
/// Preconditions (membership in Pol(Γ) and preservation of 𝔅) are checked,
/// not assumed; when they hold, a false return is a theorem violation.
pub fn verify_lifted_polymorphism(
    kind: LiftedKind<'_>,
    gamma: &RelationalStructure,
    set: &AlgebraSet,
) -> Result<bool> {
    let induced = match kind {
        LiftedKind::Outside(f) => {
            for rel in &gamma.relations {
                if !preserves_relation(f, rel)? {
                    return Err(Error::Precondition(format!(
                        "skipped: f does not preserve {}",
                        rel.name
                    )));
                }
            }
            if !outside_preserves(f, set)? {
                return Err(Error::Precondition("skipped: f^A does not preserve the set".into()));
            }
            outside_operation_on_set(f, set)?
        }
        LiftedKind::Inside(system) => {
            for slots in &system.per_symbol {
                for fj in slots {
                    for rel in &gamma.relations {
                        if !preserves_relation(fj, rel)? {
                            return Err(Error::Precondition(format!(
                                "skipped: a slot operation does not preserve {}",
                                rel.name
                            )));
                        }
                    }
                }
            }
            if !inside_preserves(system, set)? {
                return Err(Error::Precondition("skipped: a_f does not preserve the set".into()));
            }
            inside_operation_on_set(system, set)?
        }
    };
    let gamma_b = build_gamma_b(gamma, set)?;
    for rel in &gamma_b.relations {
        if !preserves_relation(&induced, rel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The five transports of term structure from D to 𝔄.
pub enum TransportCase<'a> {
    /// g(x_1..x_{n-1}) = f(x_1..x_{n-1}, x_{n-1})
    Identification { f: &'a FiniteOperation, g: &'a FiniteOperation },
    /// f(x_1..x_n) = g(x_1..x_{n-1})
    Fictitious { f: &'a FiniteOperation, g: &'a FiniteOperation },
    /// g(x_1..x_n) = f(x_{pi(1)}..x_{pi(n)})
    Permutation { f: &'a FiniteOperation, g: &'a FiniteOperation, pi: &'a [usize] },
    /// p_i^𝔄 is again the i-th projection
    Projection { arity: usize, index: usize },
    /// g = f(g_1, ..., g_n) pointwise
    Superposition {
        f: &'a FiniteOperation,
        g: &'a FiniteOperation,
        inner: &'a [FiniteOperation],
    },
}

fn check_base_identity(case: &TransportCase<'_>, d: usize) -> Result<()> {
    let ok = match case {
        TransportCase::Identification { f, g } => {
            g.arity + 1 == f.arity
                && arg_tuples(d, g.arity).all(|args| {
                    let mut ext = args.clone();
                    ext.push(*args.last().unwrap());
                    g.apply(&args) == f.apply(&ext)
                })
        }
        TransportCase::Fictitious { f, g } => {
            g.arity + 1 == f.arity
                && arg_tuples(d, f.arity).all(|args| f.apply(&args) == g.apply(&args[..g.arity]))
        }
        TransportCase::Permutation { f, g, pi } => {
            f.arity == g.arity
                && pi.len() == f.arity
                && arg_tuples(d, f.arity).all(|args| {
                    let permuted: Vec<u32> = pi.iter().map(|&p| args[p]).collect();
                    g.apply(&args) == f.apply(&permuted)
                })
        }
        TransportCase::Projection { arity, index } => index < arity,
        TransportCase::Superposition { f, g, inner } => {
            inner.len() == f.arity
                && inner.iter().all(|gi| gi.arity == g.arity)
                && arg_tuples(d, g.arity).all(|args| {
                    let mids: Vec<u32> = inner.iter().map(|gi| gi.apply(&args)).collect();
                    g.apply(&args) == f.apply(&mids)
                })
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition("the base identity does not hold on D".into()))
    }
}

/// Verify a transported identity over every tuple of algebras from the full
/// set 𝔄. A false under a checked base identity is a theorem violation.
pub fn term_transport_check(case: &TransportCase<'_>, all: &AlgebraSet) -> Result<bool> {
    check_base_identity(case, all.domain_size)?;
    let k = all.len();
    let tuples_of = |n: usize| arg_tuples(k, n);
    let pick = |args: &[u32]| -> Vec<&Algebra> {
        args.iter().map(|&i| &all.members[i as usize]).collect()
    };
    match case {
        TransportCase::Identification { f, g } => {
            for args in tuples_of(g.arity) {
                let mut ext = args.clone();
                ext.push(*args.last().unwrap());
                let lhs = outside_apply(g, &pick(&args))?;
                let rhs = outside_apply(f, &pick(&ext))?;
                if lhs.fingerprint() != rhs.fingerprint() {
                    return Ok(false);
                }
            }
        }
        TransportCase::Fictitious { f, g } => {
            for args in tuples_of(f.arity) {
                let lhs = outside_apply(f, &pick(&args))?;
                let rhs = outside_apply(g, &pick(&args[..g.arity]))?;
                if lhs.fingerprint() != rhs.fingerprint() {
                    return Ok(false);
                }
            }
        }
        TransportCase::Permutation { f, g, pi } => {
            for args in tuples_of(f.arity) {
                let permuted: Vec<u32> = pi.iter().map(|&p| args[p]).collect();
                let lhs = outside_apply(g, &pick(&args))?;
                let rhs = outside_apply(f, &pick(&permuted))?;
                if lhs.fingerprint() != rhs.fingerprint() {
                    return Ok(false);
                }
            }
        }
        TransportCase::Projection { arity, index } => {
            let p = FiniteOperation::projection(all.domain_size, *arity, *index);
            for args in tuples_of(*arity) {
                let lhs = outside_apply(&p, &pick(&args))?;
                if lhs.fingerprint() != all.members[args[*index] as usize].fingerprint() {
                    return Ok(false);
                }
            }
        }
        TransportCase::Superposition { f, g, inner } => {
            for args in tuples_of(g.arity) {
                let picks = pick(&args);
                let lhs = outside_apply(g, &picks)?;
                let mids = inner
                    .iter()
                    .map(|gi| outside_apply(gi, &picks))
                    .collect::<Result<Vec<_>>>()?;
                let mid_refs: Vec<&Algebra> = mids.iter().collect();
                let rhs = outside_apply(f, &mid_refs)?;
                if lhs.fingerprint() != rhs.fingerprint() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Result of transporting a Siggers pair to 𝔅.
#[derive(Debug, Clone)]
pub enum SiggersTransport {
    Witness { g: FiniteOperation, s: FiniteOperation },
    /// A failed precondition or a failed confirmation, with the reason.
    /// Image closure of s^𝔄 is not a term identity, so a failed pair check
    /// under valid preconditions is reported here rather than as a theorem
    /// violation.
    Absent(String),
}

/// Transport an admitted Siggers pair (g, s) of Γ to operations on 𝔅 and
/// confirm the pair property and preservation of Γ^𝔅 in full.
pub fn siggers_transport(
    gamma: &RelationalStructure,
    pair: (&FiniteOperation, &FiniteOperation),
    set: &AlgebraSet,
) -> Result<SiggersTransport> {
    let (g, s) = pair;
    if !is_siggers_pair(g, s) {
        return Err(Error::Precondition("(g, s) is not a Siggers pair".into()));
    }
    for rel in &gamma.relations {
        if !preserves_relation(g, rel)? || !preserves_relation(s, rel)? {
            return Err(Error::Precondition(format!("(g, s) is not admitted: {}", rel.name)));
        }
    }
    if !outside_preserves(g, set)? {
        return Ok(SiggersTransport::Absent("g^A does not preserve the set".into()));
    }
    if !outside_preserves(s, set)? {
        return Ok(SiggersTransport::Absent("s^A does not preserve the set".into()));
    }
    let g_on_b = outside_operation_on_set(g, set)?;
    let s_on_b = outside_operation_on_set(s, set)?;
    if !is_siggers_pair(&g_on_b, &s_on_b) {
        return Ok(SiggersTransport::Absent(
            "transported pair fails the Siggers conditions on the image".into(),
        ));
    }
    let gamma_b = build_gamma_b(gamma, set)?;
    for rel in &gamma_b.relations {
        if !preserves_relation(&g_on_b, rel)? || !preserves_relation(&s_on_b, rel)? {
            return Ok(SiggersTransport::Absent(format!(
                "transported pair does not preserve {}",
                rel.name
            )));
        }
    }
    Ok(SiggersTransport::Witness { g: g_on_b, s: s_on_b })
}

/// The Γ_{Γ^𝔅} ⊆ MInv(𝔅^c) check: every lifted relation, read as a
/// multi-sorted relation over per-algebra copies of D, is preserved by every
/// symbol's multi-sorted operation {o^{A}_h}.
pub fn lifted_in_minv_check(gamma: &RelationalStructure, set: &AlgebraSet) -> Result<bool> {
    let gamma_b = build_gamma_b(gamma, set)?;
    let lifted = lift_language(gamma, &gamma_b)?;
    let symbols = set.signature.arities.len();
    for slot in &lifted.slots {
        let (signature, tuples, name) = match slot {
            Slot::Lifted { base_index, anchor } => (
                anchor.clone(),
                gamma.relations[*base_index].tuples()?.to_vec(),
                slot.format_name(),
            ),
            Slot::Block { var } => (
                vec![*var],
                (0..gamma.domain_size as u32).map(|a| vec![a]).collect(),
                slot.format_name(),
            ),
        };
        let rel = MultiSortedRelation { name, signature, tuples };
        for h in 0..symbols {
            let interp = |sort: u32| set.members[sort as usize].ops[h].clone();
            if !multisorted_polymorphism_check(&interp, &rel)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Observed term identities among outside/inside polymorphisms on small
/// cases: pairs of distinct composed tables that happen to coincide. This is
/// exploratory output with no correctness claim.
pub fn observed_identity_report(set: &AlgebraSet, max_arity: usize) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    let d = set.domain_size;
    let mut named: Vec<(String, FiniteOperation)> = Vec::new();
    for ar in 1..=max_arity.min(2) {
        for table_idx in 0..(d as u64).pow(d.pow(ar as u32) as u32) {
            let mut table = vec![0u32; d.pow(ar as u32)];
            crate::op::decode(table_idx as usize, d, &mut table);
            let f = FiniteOperation::new(format!("f{ar}_{table_idx}"), d, ar, table).unwrap();
            if outside_preserves(&f, set)? {
                named.push((format!("outside {}", f.name), outside_operation_on_set(&f, set)?));
            }
        }
    }
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            if named[i].1.arity == named[j].1.arity && named[i].1.table == named[j].1.table {
                notes.push(format!("{} = {}", named[i].0, named[j].0));
            }
        }
    }
    Ok(notes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{comoblom_boolean_set, constant_algebra, AlgebraSignature};
    use crate::op::{bool_min, bool_nand};
    use crate::templates;

    fn sig() -> AlgebraSignature {
        AlgebraSignature::single_binary()
    }

    #[test]
    fn outside_projection_returns_input() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let p2 = FiniteOperation::projection(2, 2, 1);
        for i in 0..4 {
            for j in 0..4 {
                let out =
                    outside_apply(&p2, &[&full.members[i], &full.members[j]]).unwrap();
                assert_eq!(out.fingerprint(), full.members[j].fingerprint());
            }
        }
    }

    #[test]
    fn outside_idempotent_on_equal_inputs() {
        let a = Algebra::new("m", &sig(), vec![bool_min()]).unwrap();
        let out = outside_apply(&bool_min(), &[&a, &a]).unwrap();
        assert_eq!(out.fingerprint(), a.fingerprint());
    }

    // identity-defined sets are preserved by every outside application
    #[test]
    fn commutative_set_preserved_by_any_f() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let commutative: Vec<Algebra> = full
            .members
            .iter()
            .filter(|a| a.ops[0].apply(&[0, 1]) == a.ops[0].apply(&[1, 0]))
            .cloned()
            .collect();
        let set = AlgebraSet::new(sig(), 2, commutative).unwrap();
        for f in [bool_min(), bool_nand(), FiniteOperation::new("x", 2, 1, vec![1, 0]).unwrap()] {
            assert!(outside_preserves(&f, &set).unwrap(), "{}", f.name);
        }
    }

    #[test]
    fn inside_projection_system_is_identity() {
        let system = OperationSystem::new(vec![vec![
            FiniteOperation::projection(2, 2, 0),
            FiniteOperation::projection(2, 2, 1),
        ]])
        .unwrap();
        let full = AlgebraSet::full(sig(), 2).unwrap();
        for a in &full.members {
            let out = inside_apply(&system, a).unwrap();
            assert_eq!(out.fingerprint(), a.fingerprint());
        }
    }

    #[test]
    fn inside_swap_system_permutes_arguments() {
        let system = OperationSystem::new(vec![vec![
            FiniteOperation::projection(2, 2, 1),
            FiniteOperation::projection(2, 2, 0),
        ]])
        .unwrap();
        let a = Algebra::new("leq", &sig(), vec![FiniteOperation::new("b", 2, 2, vec![0, 1, 0, 0]).unwrap()])
            .unwrap();
        let out = inside_apply(&system, &a).unwrap();
        // b'(x, y) = b(y, x)
        assert_eq!(out.ops[0].table, vec![0, 0, 1, 0]);
    }

    // independently coded evaluator for the inside rule
    #[test]
    fn inside_matches_pointwise_oracle() {
        let mut rng = crate::rng::SplitMix64::new(77);
        for _ in 0..30 {
            let f1 = crate::gen::random_operation(&mut rng, "f1", 2, 2);
            let f2 = crate::gen::random_operation(&mut rng, "f2", 2, 2);
            let a_op = crate::gen::random_operation(&mut rng, "b", 2, 2);
            let a = Algebra::new("a", &sig(), vec![a_op.clone()]).unwrap();
            let system = OperationSystem::new(vec![vec![f1.clone(), f2.clone()]]).unwrap();
            let out = inside_apply(&system, &a).unwrap();
            for x in 0..2u32 {
                for y in 0..2u32 {
                    let expect = a_op.apply(&[f1.apply(&[x, y]), f2.apply(&[x, y])]);
                    assert_eq!(out.ops[0].apply(&[x, y]), expect);
                }
            }
        }
    }

    fn commutative_set() -> AlgebraSet {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let members: Vec<Algebra> = full
            .members
            .iter()
            .filter(|a| a.ops[0].apply(&[0, 1]) == a.ops[0].apply(&[1, 0]))
            .cloned()
            .collect();
        AlgebraSet::new(sig(), 2, members).unwrap()
    }

    #[test]
    fn outside_apply_is_deterministic() {
        let set = commutative_set();
        let f = bool_min();
        let a = outside_operation_on_set(&f, &set).unwrap();
        let b = outside_operation_on_set(&f, &set).unwrap();
        assert_eq!(a.table, b.table);
    }

    // min is a polymorphism of the order template, and the commutative set
    // is identity-defined, so the outside lift must preserve Γ^𝔅 in full
    #[test]
    fn verify_outside_min_on_leq() {
        let gamma = templates::leq_template();
        let set = commutative_set();
        assert!(verify_lifted_polymorphism(LiftedKind::Outside(&bool_min()), &gamma, &set).unwrap());
    }

    // pointwise min of two tractable tables can be a projection, so the
    // worked-example set is not closed and the precondition must trip
    #[test]
    fn min_is_not_closed_on_the_comoblom_set() {
        let set = comoblom_boolean_set().unwrap();
        assert!(!outside_preserves(&bool_min(), &set).unwrap());
        let gamma = templates::leq_template();
        assert!(matches!(
            verify_lifted_polymorphism(LiftedKind::Outside(&bool_min()), &gamma, &set),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_outside_projection_trivially() {
        let gamma = templates::k2();
        let set = comoblom_boolean_set().unwrap();
        let p = FiniteOperation::projection(2, 2, 0);
        assert!(verify_lifted_polymorphism(LiftedKind::Outside(&p), &gamma, &set).unwrap());
    }

    #[test]
    fn transport_identity_permutation_is_trivial() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let f = bool_nand();
        let case = TransportCase::Permutation { f: &f, g: &f, pi: &[0, 1] };
        assert!(term_transport_check(&case, &full).unwrap());
    }

    #[test]
    fn transport_projection_case() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        for index in 0..2 {
            let case = TransportCase::Projection { arity: 2, index };
            assert!(term_transport_check(&case, &full).unwrap());
        }
    }

    #[test]
    fn transport_superposition_of_projections() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let f = FiniteOperation::projection(2, 2, 0);
        let inner = vec![FiniteOperation::projection(2, 2, 0), FiniteOperation::projection(2, 2, 1)];
        let case = TransportCase::Superposition { f: &f, g: &inner[0].clone(), inner: &inner };
        assert!(term_transport_check(&case, &full).unwrap());
    }

    #[test]
    fn base_identity_is_checked() {
        let full = AlgebraSet::full(sig(), 2).unwrap();
        let f = bool_nand();
        let g = bool_min();
        let case = TransportCase::Permutation { f: &f, g: &g, pi: &[0, 1] };
        assert!(matches!(term_transport_check(&case, &full), Err(Error::Precondition(_))));
    }

    #[test]
    fn constant_pair_transports() {
        let gamma = RelationalStructure::new(
            "t",
            2,
            vec![crate::structure::Relation::materialized(
                "r",
                2,
                vec![vec![0, 0], vec![0, 1]],
            )],
        );
        let set = comoblom_boolean_set().unwrap();
        let g = FiniteOperation::constant(2, 1, 0);
        let s = FiniteOperation::constant(2, 4, 0);
        match siggers_transport(&gamma, (&g, &s), &set).unwrap() {
            SiggersTransport::Witness { g: gb, s: sb } => {
                assert!(is_siggers_pair(&gb, &sb));
            }
            SiggersTransport::Absent(reason) => panic!("expected a witness: {reason}"),
        }
    }

    // any pair admitted by the order template transports over an
    // identity-defined set, which every outside application preserves
    #[test]
    fn admitted_pair_transports_over_identity_defined_set() {
        let gamma = templates::leq_template();
        let (g, s) = crate::siggers::find_siggers_pair_admitted(&gamma).unwrap().unwrap();
        let set = commutative_set();
        match siggers_transport(&gamma, (&g, &s), &set).unwrap() {
            SiggersTransport::Witness { g: gb, s: sb } => {
                assert!(is_siggers_pair(&gb, &sb));
                let gamma_b = build_gamma_b(&gamma, &set).unwrap();
                for rel in &gamma_b.relations {
                    assert!(preserves_relation(&gb, rel).unwrap());
                    assert!(preserves_relation(&sb, rel).unwrap());
                }
            }
            SiggersTransport::Absent(reason) => panic!("expected a witness: {reason}"),
        }
    }

    #[test]
    fn unclosed_set_reports_absent() {
        let set = AlgebraSet::new(
            sig(),
            2,
            vec![constant_algebra(1, &sig(), 2)],
        )
        .unwrap();
        // constant-0 pair is admitted by a 0-friendly template but 0^σ is missing
        let gamma = RelationalStructure::new(
            "t",
            2,
            vec![crate::structure::Relation::materialized("r", 1, vec![vec![0], vec![1]])],
        );
        let g = FiniteOperation::constant(2, 1, 0);
        let s = FiniteOperation::constant(2, 4, 0);
        match siggers_transport(&gamma, (&g, &s), &set).unwrap() {
            SiggersTransport::Absent(_) => {}
            _ => panic!("expected absent"),
        }
    }

    #[test]
    fn minv_check_on_k2_with_constants() {
        let set = AlgebraSet::new(
            sig(),
            2,
            vec![constant_algebra(0, &sig(), 2), constant_algebra(1, &sig(), 2)],
        )
        .unwrap();
        assert!(lifted_in_minv_check(&templates::k2(), &set).unwrap());
    }

    #[test]
    fn minv_check_on_full_relation() {
        let gamma = RelationalStructure::new(
            "full",
            2,
            vec![crate::structure::Relation::materialized(
                "f",
                2,
                vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            )],
        );
        let set = comoblom_boolean_set().unwrap();
        assert!(lifted_in_minv_check(&gamma, &set).unwrap());
    }
}
