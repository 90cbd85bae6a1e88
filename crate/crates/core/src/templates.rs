//! The fixed templates the worked examples run on.

use crate::rational::{CostValue, Rational};
use crate::structure::{Relation, RelationalStructure};
use crate::valued::CostFunction;

/// Single undirected edge: domain {0,1}, both orientations.
pub fn k2() -> RelationalStructure {
    RelationalStructure::new("K2", 2, vec![Relation::materialized("edge", 2, vec![vec![0, 1], vec![1, 0]])])
}

/// Complete loopless graph on n vertices.
pub fn clique(n: usize) -> RelationalStructure {
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if a != b {
                edges.push(vec![a, b]);
            }
        }
    }
    RelationalStructure::new(format!("K{n}"), n, vec![Relation::materialized("edge", 2, edges)])
}

/// Undirected cycle on n vertices (both orientations of each edge).
pub fn cycle(n: usize) -> RelationalStructure {
    let mut edges = Vec::new();
    for v in 0..n as u32 {
        let w = (v + 1) % n as u32;
        edges.push(vec![v, w]);
        edges.push(vec![w, v]);
    }
    RelationalStructure::new(format!("C{n}"), n, vec![Relation::materialized("edge", 2, edges)])
}

/// btw = {0,1}^3 minus {(0,1,0), (1,0,1)}.
pub fn btw_tuples() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..2u32 {
        for b in 0..2u32 {
            for c in 0..2u32 {
                if (a, b, c) != (0, 1, 0) && (a, b, c) != (1, 0, 1) {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// Binary betweenness template ({0,1}, {0}, {1}, btw).
pub fn btw_template() -> RelationalStructure {
    RelationalStructure::new(
        "btw",
        2,
        vec![
            Relation::materialized("zero", 1, vec![vec![0]]),
            Relation::materialized("one", 1, vec![vec![1]]),
            Relation::materialized("btw", 3, btw_tuples()),
        ],
    )
}

/// The value used for the extra element of the relaxed betweenness template.
pub const ALPHA: u32 = 2;

/// Relaxed template ({0,1,alpha}, {0,alpha}, {1,alpha}, btw_alpha).
pub fn btw_alpha_template() -> RelationalStructure {
    let a = ALPHA;
    let mut t = btw_tuples();
    t.extend([
        vec![1, 1, a],
        vec![a, 1, 1],
        vec![0, 0, a],
        vec![a, 0, 0],
        vec![0, a, 1],
        vec![1, a, 0],
    ]);
    RelationalStructure::new(
        "btw_alpha",
        3,
        vec![
            Relation::materialized("zero", 1, vec![vec![0], vec![a]]),
            Relation::materialized("one", 1, vec![vec![1], vec![a]]),
            Relation::materialized("btw", 3, t),
        ],
    )
}

/// Order template ({0,1}, <=, {0}, {1}).
pub fn leq_template() -> RelationalStructure {
    RelationalStructure::new(
        "leq",
        2,
        vec![
            Relation::materialized("leq", 2, vec![vec![0, 0], vec![0, 1], vec![1, 1]]),
            Relation::materialized("zero", 1, vec![vec![0]]),
            Relation::materialized("one", 1, vec![vec![1]]),
        ],
    )
}

/// All four unary {0,1}-valued cost functions over {0,1}, in a fixed order.
pub fn un_cost_functions() -> Vec<CostFunction> {
    let vals = [(0i64, 0i64), (0, 1), (1, 0), (1, 1)];
    vals.iter()
        .enumerate()
        .map(|(i, &(v0, v1))| {
            CostFunction::from_entries(
                format!("u{i}"),
                2,
                1,
                vec![(vec![0], CostValue::integer(v0)), (vec![1], CostValue::integer(v1))],
            )
        })
        .collect()
}

/// Independent-set template: binary cost 0 except f(1,1) = inf, plus all
/// unary {0,1}-valued cost functions. Conservative by construction.
pub fn independent_set_template() -> Vec<CostFunction> {
    let mut fs = vec![CostFunction::from_entries(
        "edge",
        2,
        2,
        vec![
            (vec![0, 0], CostValue::zero()),
            (vec![0, 1], CostValue::zero()),
            (vec![1, 0], CostValue::zero()),
            (vec![1, 1], CostValue::Infinity),
        ],
    )];
    fs.extend(un_cost_functions());
    fs
}

/// Cut template: binary cost x != y (submodular), plus the unary family.
pub fn cut_template() -> Vec<CostFunction> {
    let mut fs = vec![CostFunction::from_entries(
        "cut",
        2,
        2,
        vec![
            (vec![0, 0], CostValue::zero()),
            (vec![0, 1], CostValue::integer(1)),
            (vec![1, 0], CostValue::integer(1)),
            (vec![1, 1], CostValue::zero()),
        ],
    )];
    fs.extend(un_cost_functions());
    fs
}

/// Crisp betweenness as a valued language (0/inf costs) plus the unary family.
pub fn btw_valued_template() -> Vec<CostFunction> {
    let mut entries = Vec::new();
    for t in btw_tuples() {
        entries.push((t, CostValue::zero()));
    }
    let mut fs = vec![CostFunction::from_entries("btw", 2, 3, entries)];
    fs.extend(un_cost_functions());
    fs
}

/// The structure ({0,1}, !=, full, full, ...) with `unaries` full unary slots,
/// matching the independent-set signature.
pub fn neq_with_full_unaries(unaries: usize) -> RelationalStructure {
    let mut rels = vec![Relation::materialized("ne", 2, vec![vec![0, 1], vec![1, 0]])];
    for i in 0..unaries {
        rels.push(Relation::materialized(format!("full{i}"), 1, vec![vec![0], vec![1]]));
    }
    RelationalStructure::new("neq_full", 2, rels)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("static rational")
}
