//! Total finite operations D^n -> D stored as flat tables in lexicographic
//! argument order (row-major, first argument most significant).

use crate::error::{Error, Result};
use crate::structure::Relation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteOperation {
    pub name: String,
    pub domain_size: usize,
    pub arity: usize,
    pub table: Vec<u32>,
}

impl FiniteOperation {
    pub fn new(name: impl Into<String>, domain_size: usize, arity: usize, table: Vec<u32>) -> Result<Self> {
        let expect = domain_size.checked_pow(arity as u32).ok_or_else(|| {
            Error::Capacity(format!("{domain_size}^{arity} table does not fit"))
        })?;
        if table.len() != expect {
            return Err(Error::Precondition(format!(
                "table length {} but {domain_size}^{arity} = {expect} required",
                table.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v as usize >= domain_size) {
            return Err(Error::Precondition(format!("table value {v} out of range")));
        }
        Ok(FiniteOperation { name: name.into(), domain_size, arity, table })
    }

    pub fn index(&self, args: &[u32]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let mut idx = 0usize;
        for &a in args {
            idx = idx * self.domain_size + a as usize;
        }
        idx
    }

    pub fn apply(&self, args: &[u32]) -> u32 {
        self.table[self.index(args)]
    }

    /// The i-th projection of the given arity (0-based).
    pub fn projection(domain_size: usize, arity: usize, i: usize) -> FiniteOperation {
        let mut table = vec![0u32; domain_size.pow(arity as u32)];
        let mut args = vec![0u32; arity];
        for (idx, slot) in table.iter_mut().enumerate() {
            decode(idx, domain_size, &mut args);
            *slot = args[i];
        }
        FiniteOperation {
            name: format!("p{}_{arity}", i + 1),
            domain_size,
            arity,
            table,
        }
    }

    pub fn constant(domain_size: usize, arity: usize, value: u32) -> FiniteOperation {
        FiniteOperation {
            name: format!("const{value}_{arity}"),
            domain_size,
            arity,
            table: vec![value; domain_size.pow(arity as u32)],
        }
    }

    pub fn image(&self) -> Vec<u32> {
        let mut img: Vec<u32> = self.table.clone();
        img.sort();
        img.dedup();
        img
    }

    /// Composition self(g_1(x..), ..., g_k(x..)) of same-arity inner ops.
    pub fn compose(&self, inner: &[&FiniteOperation]) -> Result<FiniteOperation> {
        if inner.len() != self.arity {
            return Err(Error::Precondition("composition arity mismatch".into()));
        }
        let m = inner.first().map(|g| g.arity).unwrap_or(0);
        for g in inner {
            if g.arity != m || g.domain_size != self.domain_size {
                return Err(Error::Precondition("inner operations disagree".into()));
            }
        }
        let mut table = vec![0u32; self.domain_size.pow(m as u32)];
        let mut args = vec![0u32; m];
        for (idx, slot) in table.iter_mut().enumerate() {
            decode(idx, self.domain_size, &mut args);
            let mid: Vec<u32> = inner.iter().map(|g| g.apply(&args)).collect();
            *slot = self.apply(&mid);
        }
        FiniteOperation::new(format!("{}∘", self.name), self.domain_size, m, table)
    }
}

pub fn decode(mut idx: usize, base: usize, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % base) as u32;
        idx /= base;
    }
}

/// Iterate all argument tuples of the given arity in lexicographic order.
pub fn arg_tuples(domain_size: usize, arity: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = domain_size.pow(arity as u32);
    (0..total).map(move |idx| {
        let mut t = vec![0u32; arity];
        decode(idx, domain_size, &mut t);
        t
    })
}

/// Polymorphism check: op applied componentwise to every selection of
/// `arity(op)` tuples of the relation lands back in the relation.
pub fn preserves_relation(op: &FiniteOperation, rel: &Relation) -> Result<bool> {
    let tuples = rel.tuples().map_err(|_| {
        Error::Unsupported(format!("relation {} is lazy; preservation needs its tuples", rel.name))
    })?;
    let m = rel.arity;
    let n = op.arity;
    if tuples.is_empty() {
        return Ok(true);
    }
    let mut sel = vec![0usize; n];
    loop {
        let mut image = Vec::with_capacity(m);
        for j in 0..m {
            let args: Vec<u32> = sel.iter().map(|&s| tuples[s][j]).collect();
            image.push(op.apply(&args));
        }
        if !rel.contains(&image) {
            return Ok(false);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < tuples.len() {
                break;
            }
            sel[i] = 0;
        }
    }
}

/// Componentwise polymorphism: ops[j] is applied in coordinate j. All ops
/// share one arity n; every choice of n relation tuples must map back in.
pub fn componentwise_preserves(ops: &[&FiniteOperation], rel: &Relation) -> Result<bool> {
    if ops.len() != rel.arity {
        return Err(Error::Precondition(format!(
            "{} operations for a relation of arity {}",
            ops.len(),
            rel.arity
        )));
    }
    let n = ops.first().map(|o| o.arity).unwrap_or(0);
    if ops.iter().any(|o| o.arity != n) {
        return Err(Error::Precondition("componentwise operations disagree on arity".into()));
    }
    let tuples = rel.tuples().map_err(|_| {
        Error::Unsupported(format!("relation {} is lazy; preservation needs its tuples", rel.name))
    })?;
    if tuples.is_empty() {
        return Ok(true);
    }
    let m = rel.arity;
    let mut sel = vec![0usize; n];
    loop {
        let mut image = Vec::with_capacity(m);
        for (j, op) in ops.iter().enumerate() {
            let args: Vec<u32> = sel.iter().map(|&s| tuples[s][j]).collect();
            image.push(op.apply(&args));
        }
        if !rel.contains(&image) {
            return Ok(false);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < tuples.len() {
                break;
            }
            sel[i] = 0;
        }
    }
}

/// A system of operations {f^i_j}: for signature symbol i of arity n_i there
/// are n_i operations, each n_i-ary.
#[derive(Debug, Clone)]
pub struct OperationSystem {
    pub per_symbol: Vec<Vec<FiniteOperation>>,
}

impl OperationSystem {
    pub fn new(per_symbol: Vec<Vec<FiniteOperation>>) -> Result<Self> {
        for ops in &per_symbol {
            let n = ops.len();
            if ops.iter().any(|o| o.arity != n) {
                return Err(Error::Precondition(
                    "system slot count must equal the symbol arity".into(),
                ));
            }
        }
        Ok(OperationSystem { per_symbol })
    }
}

pub fn bool_min() -> FiniteOperation {
    FiniteOperation::new("min", 2, 2, vec![0, 0, 0, 1]).unwrap()
}

pub fn bool_max() -> FiniteOperation {
    FiniteOperation::new("max", 2, 2, vec![0, 1, 1, 1]).unwrap()
}

pub fn bool_majority() -> FiniteOperation {
    let table = arg_tuples(2, 3).map(|t| if t.iter().sum::<u32>() >= 2 { 1 } else { 0 }).collect();
    FiniteOperation::new("majority", 2, 3, table).unwrap()
}

pub fn bool_minority() -> FiniteOperation {
    let table = arg_tuples(2, 3).map(|t| t.iter().sum::<u32>() % 2).collect();
    FiniteOperation::new("minority", 2, 3, table).unwrap()
}

pub fn bool_nand() -> FiniteOperation {
    FiniteOperation::new("nand", 2, 2, vec![1, 1, 1, 0]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates;

    fn leq_rel() -> Relation {
        templates::leq_template().relations[0].clone()
    }

    #[test]
    fn min_preserves_leq() {
        assert!(preserves_relation(&bool_min(), &leq_rel()).unwrap());
    }

    #[test]
    fn negation_breaks_leq() {
        let neg = FiniteOperation::new("neg", 2, 1, vec![1, 0]).unwrap();
        assert!(!preserves_relation(&neg, &leq_rel()).unwrap());
    }

    #[test]
    fn projections_preserve_everything() {
        let rel = Relation::materialized("r", 2, vec![vec![0, 1], vec![1, 0]]);
        for i in 0..3 {
            let p = FiniteOperation::projection(2, 3, i);
            assert!(preserves_relation(&p, &rel).unwrap());
            assert!(preserves_relation(&p, &leq_rel()).unwrap());
        }
    }

    #[test]
    fn componentwise_identity_and_min() {
        let id = FiniteOperation::projection(2, 1, 0);
        let rel = leq_rel();
        assert!(componentwise_preserves(&[&id, &id], &rel).unwrap());
        let min = bool_min();
        assert!(componentwise_preserves(&[&min, &min], &rel).unwrap());
    }

    #[test]
    fn componentwise_min_max_on_equality_fails() {
        let eq = Relation::materialized("eq", 2, vec![vec![0, 0], vec![1, 1]]);
        let (min, max) = (bool_min(), bool_max());
        assert!(!componentwise_preserves(&[&min, &max], &eq).unwrap());
    }

    // With all coordinates equal, componentwise preservation is exactly the
    // plain polymorphism check.
    #[test]
    fn componentwise_reduces_to_preserves() {
        let rel = leq_rel();
        for op in [bool_min(), bool_max(), bool_nand()] {
            assert_eq!(
                componentwise_preserves(&[&op, &op], &rel).unwrap(),
                preserves_relation(&op, &rel).unwrap()
            );
        }
    }

    #[test]
    fn table_shape_is_validated() {
        assert!(FiniteOperation::new("bad", 2, 2, vec![0, 1]).is_err());
        assert!(FiniteOperation::new("bad", 2, 1, vec![0, 2]).is_err());
    }
}
