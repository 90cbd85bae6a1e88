//! Siggers pairs: the 4-ary identity s(x,y,x,z) = s(y,x,z,y) with
//! idempotence and closure on the image of a unary companion, the full
//! census at |D| <= 2, and the indicator-CSP search for admitted pairs.

use crate::error::{Error, Result};
use crate::op::{arg_tuples, FiniteOperation};
use crate::solver::{find_all_homomorphisms, Engine, Problem, SearchOptions, VarOrdering};
use crate::structure::RelationalStructure;
use std::collections::BTreeSet;

/// s must be a Siggers operation on g(D): closed on the image, satisfying
/// s(x,y,x,z) = s(y,x,z,y) and s(x,x,x,x) = x there.
pub fn is_siggers_pair(g: &FiniteOperation, s: &FiniteOperation) -> bool {
    debug_assert_eq!(g.arity, 1);
    debug_assert_eq!(s.arity, 4);
    debug_assert_eq!(g.domain_size, s.domain_size);
    let image = g.image();
    for q in quadruples(&image) {
        if !image.contains(&s.apply(&q)) {
            return false;
        }
    }
    for x in &image {
        for y in &image {
            for z in &image {
                if s.apply(&[*x, *y, *x, *z]) != s.apply(&[*y, *x, *z, *y]) {
                    return false;
                }
            }
        }
    }
    image.iter().all(|&x| s.apply(&[x, x, x, x]) == x)
}

fn quadruples(values: &[u32]) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for &a in values {
        for &b in values {
            for &c in values {
                for &d in values {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Full census of Siggers pairs for |D| <= 2, in lexicographic
/// (g-table, s-table) order.
pub fn enumerate_siggers_pairs(domain_size: usize) -> Result<Vec<(FiniteOperation, FiniteOperation)>> {
    if domain_size == 0 || domain_size > 2 {
        return Err(Error::Capacity(format!(
            "full Siggers-pair enumeration is limited to |D| <= 2 (got {domain_size}); \
             use find_siggers_pair_admitted for larger domains"
        )));
    }
    let g_tables = domain_size.pow(domain_size as u32);
    let s_tables = (domain_size as u64).pow(domain_size.pow(4) as u32);
    let mut out = Vec::new();
    for gi in 0..g_tables {
        let mut g_table = vec![0u32; domain_size];
        crate::op::decode(gi, domain_size, &mut g_table);
        let g = FiniteOperation::new("g", domain_size, 1, g_table)?;
        for si in 0..s_tables {
            let mut s_table = vec![0u32; domain_size.pow(4)];
            crate::op::decode(si as usize, domain_size, &mut s_table);
            let s = FiniteOperation::new("s", domain_size, 4, s_table)?;
            if is_siggers_pair(&g, &s) {
                out.push((g.clone(), s));
            }
        }
    }
    Ok(out)
}

/// Search for a Siggers pair admitted by Γ (both components polymorphisms).
///
/// Unary polymorphisms are exactly the homomorphisms Γ -> Γ; they are
/// enumerated in lexicographic order and deduplicated by image. For each
/// image S, a 4-ary companion is sought through an indicator problem whose
/// variables are the |D|^4 table cells: the Siggers identities merge cells
/// on S, idempotence pins the diagonal of S, closure restricts cells over
/// S^4, and each 4-selection of tuples from a relation constrains the cells
/// of its columns through that relation. The first witness in this order is
/// returned.
pub fn find_siggers_pair_admitted(
    gamma: &RelationalStructure,
) -> Result<Option<(FiniteOperation, FiniteOperation)>> {
    let unary = find_all_homomorphisms(gamma, gamma, usize::MAX)?;
    let mut seen_images: BTreeSet<Vec<u32>> = BTreeSet::new();
    for h in unary {
        let g = FiniteOperation::new("g", gamma.domain_size, 1, h.map.clone())?;
        let image = g.image();
        if !seen_images.insert(image.clone()) {
            continue;
        }
        if let Some(s) = indicator_search(gamma, &image)? {
            debug_assert!(is_siggers_pair(&g, &s));
            return Ok(Some((g, s)));
        }
    }
    Ok(None)
}

/// Indicator search for a 4-ary s that preserves every relation of Γ and is
/// a Siggers operation on `image`.
fn indicator_search(gamma: &RelationalStructure, image: &[u32]) -> Result<Option<FiniteOperation>> {
    let d = gamma.domain_size;
    let cells = d.pow(4);
    let cell_index = |q: &[u32]| -> usize {
        q.iter().fold(0usize, |acc, &v| acc * d + v as usize)
    };

    // identity merging on the image
    let mut parent: Vec<usize> = (0..cells).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &x in image {
        for &y in image {
            for &z in image {
                let a = cell_index(&[x, y, x, z]);
                let b = cell_index(&[y, x, z, y]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    let (lo, hi) = (ra.min(rb), ra.max(rb));
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; cells];
    let mut classes = Vec::new();
    for c in 0..cells {
        let root = find(&mut parent, c);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(root);
        }
        class_of[c] = class_of[root];
    }

    // per-class domains: closure on S^4, idempotence pins the S diagonal
    let full: Vec<u32> = (0..d as u32).collect();
    let mut domains: Vec<Vec<u32>> = vec![full; classes.len()];
    let in_image = |v: u32| image.contains(&v);
    for (ci, q) in arg_tuples(d, 4).enumerate() {
        if q.iter().all(|&v| in_image(v)) {
            let cls = class_of[ci];
            domains[cls].retain(|v| in_image(*v));
        }
    }
    for &x in image {
        let cls = class_of[cell_index(&[x, x, x, x])];
        domains[cls].retain(|&v| v == x);
    }

    // polymorphism constraints: one per distinct column-class scope
    let mut constraints: Vec<(Vec<usize>, &crate::structure::Relation)> = Vec::new();
    let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for (ri, rel) in gamma.relations.iter().enumerate() {
        let tuples = rel.tuples()?;
        if tuples.is_empty() {
            continue;
        }
        let m = rel.arity;
        let mut sel = [0usize; 4];
        loop {
            let scope: Vec<usize> = (0..m)
                .map(|j| {
                    let q = [tuples[sel[0]][j], tuples[sel[1]][j], tuples[sel[2]][j], tuples[sel[3]][j]];
                    class_of[cell_index(&q)]
                })
                .collect();
            if seen.insert((ri, scope.clone())) {
                constraints.push((scope, rel));
            }
            let mut i = 4;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                sel[i] += 1;
                if sel[i] < tuples.len() {
                    break;
                }
                sel[i] = 0;
            }
            if sel.iter().all(|&s| s == 0) {
                break;
            }
        }
    }

    let problem = Problem { universe: d, domains, constraints };
    let options = SearchOptions { ordering: VarOrdering::MinRemaining, ..SearchOptions::default() };
    let engine = Engine::new(&problem, options)?;
    match engine.solve()? {
        None => Ok(None),
        Some(solution) => {
            let table: Vec<u32> = (0..cells).map(|c| solution[class_of[c]]).collect();
            Ok(Some(FiniteOperation::new("s", d, 4, table)?))
        }
    }
}
