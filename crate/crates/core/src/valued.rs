//! Cost functions, VCSP instances, and multimorphisms.

use crate::error::{Error, Result};
use crate::op::FiniteOperation;
use crate::rational::{CostValue, Rational};
use crate::structure::RelationalStructure;
use std::collections::BTreeMap;

/// A cost function D^arity -> Q∪{inf} stored sparsely: unlisted tuples are
/// infinite. `dom f` is always derived from the table, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFunction {
    pub name: String,
    pub domain_size: usize,
    pub arity: usize,
    table: BTreeMap<Vec<u32>, CostValue>,
}

impl CostFunction {
    pub fn from_entries(
        name: impl Into<String>,
        domain_size: usize,
        arity: usize,
        entries: Vec<(Vec<u32>, CostValue)>,
    ) -> CostFunction {
        let mut table = BTreeMap::new();
        for (t, v) in entries {
            debug_assert_eq!(t.len(), arity);
            table.insert(t, v);
        }
        CostFunction { name: name.into(), domain_size, arity, table }
    }

    pub fn evaluate(&self, t: &[u32]) -> CostValue {
        self.table.get(t).copied().unwrap_or(CostValue::Infinity)
    }

    /// Finite-valued tuples, in lexicographic order.
    pub fn dom(&self) -> Vec<Vec<u32>> {
        self.table
            .iter()
            .filter(|(_, v)| v.is_finite())
            .map(|(t, _)| t.clone())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &CostValue)> {
        self.table.iter()
    }

    /// Crisp view: the relation of finite-cost tuples.
    pub fn as_relation(&self) -> crate::structure::Relation {
        crate::structure::Relation::materialized(self.name.clone(), self.arity, self.dom())
    }
}

/// One constraint application: scope, cost function index, positive weight.
#[derive(Debug, Clone)]
pub struct VcspConstraint {
    pub scope: Vec<usize>,
    pub function: usize,
    pub weight: Rational,
}

/// A weighted sum of cost-function applications over a variable set.
#[derive(Debug, Clone)]
pub struct VcspInstance {
    pub num_vars: usize,
    pub domain_size: usize,
    pub functions: Vec<CostFunction>,
    pub constraints: Vec<VcspConstraint>,
}

impl VcspInstance {
    pub fn validate(&self) -> Result<()> {
        for c in &self.constraints {
            if c.weight <= Rational::zero() {
                return Err(Error::Precondition("constraint weights must be positive".into()));
            }
            let f = self
                .functions
                .get(c.function)
                .ok_or_else(|| Error::Precondition("constraint names a missing function".into()))?;
            if c.scope.len() != f.arity {
                return Err(Error::Precondition(format!(
                    "scope length {} does not match arity of {}",
                    c.scope.len(),
                    f.name
                )));
            }
        }
        Ok(())
    }
}

/// Exact weighted sum with infinity absorption.
pub fn evaluate_instance(instance: &VcspInstance, assignment: &[u32]) -> Result<CostValue> {
    if assignment.len() != instance.num_vars {
        return Err(Error::Precondition("assignment is not total".into()));
    }
    let mut total = CostValue::zero();
    for c in &instance.constraints {
        let t: Vec<u32> = c.scope.iter().map(|&v| assignment[v]).collect();
        let cost = instance.functions[c.function].evaluate(&t);
        total = total.checked_add(&cost.checked_mul_rational(&c.weight)?)?;
    }
    Ok(total)
}

/// Cap on |D|^|V| for the exact minimizer.
pub const BRUTE_CAP: u64 = 10_000_000;

/// Exhaustive minimization; returns the lexicographically least minimizer.
pub fn brute_solve_vcsp(instance: &VcspInstance) -> Result<(Vec<u32>, CostValue)> {
    instance.validate()?;
    let n = instance.num_vars;
    let d = instance.domain_size as u64;
    if n > 0 {
        let total = d.checked_pow(n as u32).filter(|&x| x <= BRUTE_CAP);
        if total.is_none() {
            return Err(Error::Capacity(format!("{d}^{n} assignments exceed the brute cap")));
        }
        if d == 0 {
            return Err(Error::Precondition("empty domain with variables present".into()));
        }
    }
    let mut assignment = vec![0u32; n];
    let mut best = assignment.clone();
    let mut best_cost = evaluate_instance(instance, &assignment)?;
    loop {
        let mut i = n;
        loop {
            if i == 0 {
                return Ok((best, best_cost));
            }
            i -= 1;
            assignment[i] += 1;
            if (assignment[i] as u64) < d {
                break;
            }
            assignment[i] = 0;
        }
        if assignment.iter().all(|&v| v == 0) {
            return Ok((best, best_cost));
        }
        let cost = evaluate_instance(instance, &assignment)?;
        if cost.lt(&best_cost) {
            best = assignment.clone();
            best_cost = cost;
        }
    }
}

/// The instance determined by a relational structure over a valued template:
/// one constraint per tuple of each relation, with the given uniform weight.
pub fn hybrid_instance_from(
    r: &RelationalStructure,
    template: &[CostFunction],
    weight: Rational,
) -> Result<VcspInstance> {
    let sig: Vec<usize> = template.iter().map(|f| f.arity).collect();
    if r.signature() != sig {
        return Err(Error::SignatureMismatch { expected: sig, found: r.signature() });
    }
    let domain_size = template.first().map(|f| f.domain_size).unwrap_or(0);
    let mut constraints = Vec::new();
    for (fi, rel) in r.relations.iter().enumerate() {
        for t in rel.tuples()? {
            constraints.push(VcspConstraint {
                scope: t.iter().map(|&v| v as usize).collect(),
                function: fi,
                weight,
            });
        }
    }
    Ok(VcspInstance { num_vars: r.domain_size, domain_size, functions: template.to_vec(), constraints })
}

/// A fractional operation: operations with positive rational probabilities.
#[derive(Debug, Clone)]
pub struct FractionalOperation {
    pub parts: Vec<(FiniteOperation, Rational)>,
}

impl FractionalOperation {
    pub fn new(parts: Vec<(FiniteOperation, Rational)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition("empty fractional operation".into()));
        }
        let m = parts[0].0.arity;
        if parts.iter().any(|(g, _)| g.arity != m) {
            return Err(Error::Precondition("support operations disagree on arity".into()));
        }
        let mut sum = Rational::zero();
        for (_, w) in &parts {
            if *w <= Rational::zero() {
                return Err(Error::Precondition("probabilities must be positive".into()));
            }
            sum = sum.checked_add(w)?;
        }
        if sum != Rational::integer(1) {
            return Err(Error::Precondition(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(FractionalOperation { parts })
    }

    pub fn arity(&self) -> usize {
        self.parts[0].0.arity
    }

    pub fn half_half(a: FiniteOperation, b: FiniteOperation) -> Result<Self> {
        let h = Rational::new(1, 2)?;
        FractionalOperation::new(vec![(a, h), (b, h)])
    }

    pub fn third_each(a: FiniteOperation, b: FiniteOperation, c: FiniteOperation) -> Result<Self> {
        let t = Rational::new(1, 3)?;
        FractionalOperation::new(vec![(a, t), (b, t), (c, t)])
    }
}

/// Multimorphism check, evaluated in exact rationals with the 1/m factor
/// cleared: for every choice of m tuples from dom f,
/// m * sum_g w(g) f(g(x^1..x^m)) <= f(x^1) + ... + f(x^m).
/// An infinite left side fails (the right side is finite on dom f).
pub fn is_multimorphism(omega: &FractionalOperation, f: &CostFunction) -> Result<bool> {
    let m = omega.arity();
    let dom = f.dom();
    if dom.is_empty() {
        return Ok(true);
    }
    let m_rat = Rational::integer(m as i64);
    let mut sel = vec![0usize; m];
    loop {
        let mut rhs = CostValue::zero();
        for &s in &sel {
            rhs = rhs.checked_add(&f.evaluate(&dom[s]))?;
        }
        let mut lhs = CostValue::zero();
        for (g, w) in &omega.parts {
            let mut image = Vec::with_capacity(f.arity);
            for j in 0..f.arity {
                let args: Vec<u32> = sel.iter().map(|&s| dom[s][j]).collect();
                image.push(g.apply(&args));
            }
            lhs = lhs.checked_add(&f.evaluate(&image).checked_mul_rational(w)?)?;
        }
        let lhs = lhs.checked_mul_rational(&m_rat)?;
        if !lhs.le(&rhs) {
            return Ok(false);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < dom.len() {
                break;
            }
            sel[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::{bool_max, bool_min};
    use crate::structure::Relation;
    use crate::templates;

    fn edge_structure() -> RelationalStructure {
        // one edge plus empty unary slots, in the independent-set signature
        RelationalStructure::new(
            "edge",
            2,
            vec![
                Relation::materialized("e", 2, vec![vec![0, 1]]),
                Relation::materialized("u0", 1, vec![]),
                Relation::materialized("u1", 1, vec![]),
                Relation::materialized("u2", 1, vec![]),
                Relation::materialized("u3", 1, vec![]),
            ],
        )
    }

    #[test]
    fn empty_instance_costs_zero() {
        let inst = VcspInstance {
            num_vars: 3,
            domain_size: 2,
            functions: vec![],
            constraints: vec![],
        };
        assert_eq!(evaluate_instance(&inst, &[0, 1, 0]).unwrap(), CostValue::zero());
    }

    #[test]
    fn independent_set_edge_is_infinite_on_11() {
        let inst = hybrid_instance_from(
            &edge_structure(),
            &templates::independent_set_template(),
            Rational::integer(1),
        )
        .unwrap();
        assert_eq!(evaluate_instance(&inst, &[1, 1]).unwrap(), CostValue::Infinity);
        assert!(evaluate_instance(&inst, &[1, 0]).unwrap().is_finite());
    }

    #[test]
    fn weighted_unary_arithmetic() {
        let f = CostFunction::from_entries(
            "u",
            2,
            1,
            vec![(vec![0], CostValue::Finite(templates::rational(3, 2))), (vec![1], CostValue::zero())],
        );
        let inst = VcspInstance {
            num_vars: 1,
            domain_size: 2,
            functions: vec![f],
            constraints: vec![VcspConstraint { scope: vec![0], function: 0, weight: Rational::integer(2) }],
        };
        assert_eq!(evaluate_instance(&inst, &[0]).unwrap(), CostValue::integer(3));
    }

    #[test]
    fn brute_solver_agrees_with_evaluator() {
        let inst = hybrid_instance_from(
            &edge_structure(),
            &templates::cut_template(),
            Rational::integer(1),
        )
        .unwrap();
        let (best, cost) = brute_solve_vcsp(&inst).unwrap();
        assert_eq!(evaluate_instance(&inst, &best).unwrap(), cost);
        // no enumerated assignment beats it
        for a in 0..2u32 {
            for b in 0..2u32 {
                assert!(cost.le(&evaluate_instance(&inst, &[a, b]).unwrap()));
            }
        }
    }

    #[test]
    fn identity_is_multimorphism_of_everything() {
        let id = FiniteOperation::projection(2, 1, 0);
        let omega = FractionalOperation::new(vec![(id, Rational::integer(1))]).unwrap();
        for f in templates::independent_set_template() {
            assert!(is_multimorphism(&omega, &f).unwrap());
        }
    }

    #[test]
    fn min_max_on_cut_yes_on_independent_set_no() {
        let omega = FractionalOperation::half_half(bool_min(), bool_max()).unwrap();
        let cut = &templates::cut_template()[0];
        assert!(is_multimorphism(&omega, cut).unwrap());
        // the max-image of (0,1),(1,0) is (1,1) with infinite cost, so the
        // independent-set edge function rejects the pair
        let edge = &templates::independent_set_template()[0];
        assert!(!is_multimorphism(&omega, edge).unwrap());
    }

    #[test]
    fn probability_sum_must_be_one() {
        let r = FractionalOperation::new(vec![(bool_min(), templates::rational(1, 3))]);
        assert!(r.is_err());
    }
}
