//! Term operations generated by a set of operations, and the Boolean
//! tractability oracle built on the six Schaefer witnesses.

use crate::error::{Error, Result};
use crate::op::{bool_majority, bool_max, bool_min, bool_minority, FiniteOperation};
use std::collections::BTreeSet;

/// All term operations of arity <= max_arity generated by `ops`: for each
/// target arity, the fixpoint of the projections under composition with each
/// generator, with generator arguments drawn from the current set. Tables are
/// returned in canonical (arity, table) order.
pub fn clone_closure_upto(ops: &[FiniteOperation], max_arity: usize) -> Result<Vec<FiniteOperation>> {
    if !(1..=3).contains(&max_arity) {
        return Err(Error::Precondition("max_arity must be 1..=3".into()));
    }
    let domain = match ops.first() {
        Some(op) => op.domain_size,
        None => 2,
    };
    if ops.iter().any(|o| o.domain_size != domain) {
        return Err(Error::Precondition("generators live on different domains".into()));
    }
    let mut out = Vec::new();
    for arity in 1..=max_arity {
        let mut current: BTreeSet<Vec<u32>> =
            (0..arity).map(|i| FiniteOperation::projection(domain, arity, i).table).collect();
        loop {
            let snapshot: Vec<Vec<u32>> = current.iter().cloned().collect();
            let before = current.len();
            for g in ops {
                let mut sel = vec![0usize; g.arity];
                if snapshot.is_empty() {
                    break;
                }
                loop {
                    let inner: Vec<FiniteOperation> = sel
                        .iter()
                        .map(|&s| {
                            FiniteOperation::new("t", domain, arity, snapshot[s].clone()).unwrap()
                        })
                        .collect();
                    let refs: Vec<&FiniteOperation> = inner.iter().collect();
                    current.insert(g.compose(&refs)?.table);
                    let mut i = g.arity;
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        sel[i] += 1;
                        if sel[i] < snapshot.len() {
                            break;
                        }
                        sel[i] = 0;
                    }
                    if sel.iter().all(|&s| s == 0) {
                        break;
                    }
                }
            }
            if current.len() == before {
                break;
            }
        }
        for table in current {
            out.push(FiniteOperation::new(format!("t{arity}_{}", out.len()), domain, arity, table)?);
        }
    }
    Ok(out)
}

/// The six Schaefer witnesses over {0,1}.
pub fn schaefer_witnesses() -> Vec<FiniteOperation> {
    vec![
        FiniteOperation::constant(2, 1, 0),
        FiniteOperation::constant(2, 1, 1),
        bool_min(),
        bool_max(),
        bool_majority(),
        bool_minority(),
    ]
}

/// Sound and complete tractability test for Boolean invariant languages:
/// the clone generated by `ops` (up to arity 3) must contain a constant,
/// min, max, majority, or minority.
pub fn boolean_algebra_tractable(ops: &[FiniteOperation]) -> Result<bool> {
    if ops.iter().any(|o| o.domain_size != 2) {
        return Err(Error::Unsupported(
            "the built-in tractability oracle only covers the Boolean domain".into(),
        ));
    }
    let closure = clone_closure_upto(ops, 3)?;
    let witnesses = schaefer_witnesses();
    Ok(closure.iter().any(|t| {
        witnesses.iter().any(|w| w.arity == t.arity && w.table == t.table)
    }))
}

/// Verdict of a tractability oracle. `Unknown` is the only negative answer:
/// the built-in test is sufficient, never necessary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TractabilityVerdict {
    Tractable,
    Unknown,
}

/// Pluggable per-algebra tractability oracle.
pub trait TractabilityOracle {
    fn name(&self) -> &str;
    /// Judge the algebra given by its basic operations.
    fn judge(&self, ops: &[FiniteOperation]) -> TractabilityVerdict;
}

/// Built-in oracle: Schaefer witnesses through the clone closure. Nullary
/// symbols are excluded from generation and force `Unknown`; non-Boolean
/// domains are `Unknown`.
pub struct BooleanOracle;

impl TractabilityOracle for BooleanOracle {
    fn name(&self) -> &str {
        "boolean-schaefer"
    }

    fn judge(&self, ops: &[FiniteOperation]) -> TractabilityVerdict {
        if ops.iter().any(|o| o.arity == 0) {
            return TractabilityVerdict::Unknown;
        }
        match boolean_algebra_tractable(ops) {
            Ok(true) => TractabilityVerdict::Tractable,
            _ => TractabilityVerdict::Unknown,
        }
    }
}

/// Escape hatch: the caller asserts every algebra tractable.
pub struct UserAssertedOracle;

impl TractabilityOracle for UserAssertedOracle {
    fn name(&self) -> &str {
        "user-asserted"
    }

    fn judge(&self, _ops: &[FiniteOperation]) -> TractabilityVerdict {
        TractabilityVerdict::Tractable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::bool_nand;

    #[test]
    fn empty_generators_give_projections() {
        let c = clone_closure_upto(&[], 3).unwrap();
        let counts: Vec<usize> =
            (1..=3).map(|a| c.iter().filter(|o| o.arity == a).count()).collect();
        assert_eq!(counts, vec![1, 2, 3]);
    }

    #[test]
    fn min_closure_has_three_binary_ops() {
        let c = clone_closure_upto(&[bool_min()], 2).unwrap();
        let binary: Vec<_> = c.iter().filter(|o| o.arity == 2).collect();
        assert_eq!(binary.len(), 3);
        assert!(binary.iter().any(|o| o.table == bool_min().table));
    }

    #[test]
    fn nand_generates_every_ternary_operation() {
        let c = clone_closure_upto(&[bool_nand()], 3).unwrap();
        assert_eq!(c.iter().filter(|o| o.arity == 1).count(), 4);
        assert_eq!(c.iter().filter(|o| o.arity == 2).count(), 16);
        assert_eq!(c.iter().filter(|o| o.arity == 3).count(), 256);
    }

    #[test]
    fn closure_is_monotone_and_idempotent() {
        let small = clone_closure_upto(&[bool_min()], 3).unwrap();
        let big = clone_closure_upto(&[bool_min(), bool_max()], 3).unwrap();
        for op in &small {
            assert!(big.iter().any(|o| o.arity == op.arity && o.table == op.table));
        }
        let again = clone_closure_upto(&big, 3).unwrap();
        assert_eq!(again.len(), big.len());
    }

    #[test]
    fn oracle_examples() {
        assert!(boolean_algebra_tractable(&[bool_min()]).unwrap());
        assert!(!boolean_algebra_tractable(&[]).unwrap());
        assert!(boolean_algebra_tractable(&[bool_nand()]).unwrap());
    }

    // Frozen from an independent enumeration: of the 16 binary Boolean
    // operations, exactly the four essentially-unary non-constant ones
    // (both projections and both negated projections) fail the oracle.
    #[test]
    fn binary_op_census() {
        let mut tractable = 0;
        for bits in 0..16u32 {
            let table: Vec<u32> = (0..4).map(|i| bits >> (3 - i) & 1).collect();
            let op = FiniteOperation::new("b", 2, 2, table).unwrap();
            if boolean_algebra_tractable(std::slice::from_ref(&op)).unwrap() {
                tractable += 1;
            }
        }
        assert_eq!(tractable, 12);
    }

    #[test]
    fn nullary_symbols_force_unknown() {
        let nullary = FiniteOperation::new("c", 2, 0, vec![1]).unwrap();
        assert_eq!(BooleanOracle.judge(&[nullary]), TractabilityVerdict::Unknown);
    }
}
