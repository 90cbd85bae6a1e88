//! Finite relational structures over dense integer domains.
//!
//! Domain elements are `0..domain_size`. Relations are either materialized
//! tuple sets (kept sorted, no duplicates) or lazy membership predicates over
//! the structure's domain; the big lifted structures only ever exist lazily.

use crate::error::{Error, Result};
use std::sync::{Arc, OnceLock};

pub type Tuple = Vec<u32>;
pub type MembershipFn = Arc<dyn Fn(&[u32]) -> bool + Send + Sync>;

/// Bit-matrix view of a binary relation, with its transpose.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    pub n: usize,
    words: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> BitMatrix {
        let words = n.div_ceil(64);
        BitMatrix { n, words, rows: vec![0; n * words], cols: vec![0; n * words] }
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.cols[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn col(&self, j: usize) -> &[u64] {
        &self.cols[j * self.words..(j + 1) * self.words]
    }
}

/// Cap on `n*n` for memoizing a lazy binary relation into a bit-matrix.
pub const LAZY_MATRIX_CAP: usize = 4096 * 4096;

#[derive(Clone)]
pub enum RelationData {
    Materialized(Vec<Tuple>),
    Lazy {
        membership: MembershipFn,
        /// Built on first solver use when arity = 2 and the domain is small.
        matrix: Arc<OnceLock<Option<Arc<BitMatrix>>>>,
    },
}

#[derive(Clone)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    pub data: RelationData,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.data {
            RelationData::Materialized(t) => {
                write!(f, "Relation({} ar={} |{}|)", self.name, self.arity, t.len())
            }
            RelationData::Lazy { .. } => write!(f, "Relation({} ar={} lazy)", self.name, self.arity),
        }
    }
}

impl Relation {
    /// Materialized relation; tuples are sorted and deduplicated.
    pub fn materialized(name: impl Into<String>, arity: usize, mut tuples: Vec<Tuple>) -> Relation {
        tuples.sort();
        tuples.dedup();
        Relation { name: name.into(), arity, data: RelationData::Materialized(tuples) }
    }

    pub fn lazy(name: impl Into<String>, arity: usize, membership: MembershipFn) -> Relation {
        Relation {
            name: name.into(),
            arity,
            data: RelationData::Lazy { membership, matrix: Arc::new(OnceLock::new()) },
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.data, RelationData::Lazy { .. })
    }

    /// Tuple list of a materialized relation.
    pub fn tuples(&self) -> Result<&[Tuple]> {
        match &self.data {
            RelationData::Materialized(t) => Ok(t),
            RelationData::Lazy { .. } => Err(Error::Unsupported(format!(
                "relation {} is lazy and cannot be enumerated",
                self.name
            ))),
        }
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        debug_assert_eq!(t.len(), self.arity);
        match &self.data {
            RelationData::Materialized(tuples) => {
                tuples.binary_search_by(|probe| probe.as_slice().cmp(t)).is_ok()
            }
            RelationData::Lazy { membership, .. } => membership(t),
        }
    }

    /// Bit-matrix of a binary relation over `0..domain`, memoizing lazy
    /// relations once when the domain fits under [`LAZY_MATRIX_CAP`].
    pub fn matrix(&self, domain: usize) -> Option<Arc<BitMatrix>> {
        if self.arity != 2 {
            return None;
        }
        match &self.data {
            RelationData::Materialized(tuples) => {
                let mut m = BitMatrix::new(domain);
                for t in tuples {
                    m.set(t[0] as usize, t[1] as usize);
                }
                Some(Arc::new(m))
            }
            RelationData::Lazy { membership, matrix } => matrix
                .get_or_init(|| {
                    if domain * domain > LAZY_MATRIX_CAP {
                        return None;
                    }
                    let mut m = BitMatrix::new(domain);
                    for a in 0..domain as u32 {
                        for b in 0..domain as u32 {
                            if membership(&[a, b]) {
                                m.set(a as usize, b as usize);
                            }
                        }
                    }
                    Some(Arc::new(m))
                })
                .clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RelationalStructure {
    pub name: String,
    pub domain_size: usize,
    pub relations: Vec<Relation>,
}

impl RelationalStructure {
    pub fn new(name: impl Into<String>, domain_size: usize, relations: Vec<Relation>) -> Self {
        RelationalStructure { name: name.into(), domain_size, relations }
    }

    /// The arity sequence; two structures are comparable iff these are equal.
    pub fn signature(&self) -> Vec<usize> {
        self.relations.iter().map(|r| r.arity).collect()
    }

    pub fn check_signature(&self, other: &RelationalStructure) -> Result<()> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch {
                expected: self.signature(),
                found: other.signature(),
            });
        }
        Ok(())
    }
}

/// One problem found by [`validate_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub tuple_index: usize,
    pub message: String,
}

/// Report-style validation: every out-of-range entry and arity mismatch,
/// with the relation name and tuple index. Lazy relations are not scanned.
pub fn validate_structure(s: &RelationalStructure) -> Vec<Violation> {
    let mut out = Vec::new();
    for rel in &s.relations {
        if let RelationData::Materialized(tuples) = &rel.data {
            for (ti, t) in tuples.iter().enumerate() {
                if t.len() != rel.arity {
                    out.push(Violation {
                        relation: rel.name.clone(),
                        tuple_index: ti,
                        message: format!("tuple has length {}, arity is {}", t.len(), rel.arity),
                    });
                }
                for &e in t {
                    if e as usize >= s.domain_size {
                        out.push(Violation {
                            relation: rel.name.clone(),
                            tuple_index: ti,
                            message: format!("entry {e} out of range for domain {}", s.domain_size),
                        });
                    }
                }
            }
        }
    }
    out
}

/// A total map between the domains of two signature-compatible structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<u32>,
}

impl Homomorphism {
    pub fn new(map: Vec<u32>) -> Self {
        Homomorphism { map }
    }

    pub fn apply(&self, t: &[u32]) -> Tuple {
        t.iter().map(|&x| self.map[x as usize]).collect()
    }
}

/// True iff `h` maps every tuple of every relation of `source` into the
/// corresponding relation of `target`.
pub fn is_homomorphism(
    source: &RelationalStructure,
    target: &RelationalStructure,
    h: &Homomorphism,
) -> Result<bool> {
    source.check_signature(target)?;
    if h.map.len() != source.domain_size {
        return Err(Error::Precondition("map is not total on the source domain".into()));
    }
    for (ri, rel) in source.relations.iter().enumerate() {
        for t in rel.tuples()? {
            if !target.relations[ri].contains(&h.apply(t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Default cap on a constructed structure's domain size.
pub const DOMAIN_CAP: usize = 1_000_000;

fn encode(tuple: &[u32], base: usize) -> u32 {
    let mut v = 0usize;
    for &x in tuple {
        v = v * base + x as usize;
    }
    v as u32
}

/// The n-th power structure: domain = n-tuples over the base domain in
/// lexicographic rank order; a relation holds iff every coordinate slice
/// holds in the base.
pub fn power_structure(t: &RelationalStructure, n: usize) -> Result<RelationalStructure> {
    if n == 0 {
        return Err(Error::Precondition("power requires n >= 1".into()));
    }
    let size = t.domain_size.checked_pow(n as u32).filter(|&s| s <= DOMAIN_CAP);
    let size = size.ok_or_else(|| {
        Error::Capacity(format!("{}^{n} exceeds the domain cap {DOMAIN_CAP}", t.domain_size))
    })?;
    let mut relations = Vec::with_capacity(t.relations.len());
    for rel in &t.relations {
        let base_tuples = rel.tuples()?;
        let m = rel.arity;
        let mut out: Vec<Tuple> = Vec::new();
        // Iterate over all n-selections of base tuples; each yields one
        // power tuple whose l-th entry encodes the l-th column.
        let mut idx = vec![0usize; n];
        if !base_tuples.is_empty() {
            loop {
                let mut ptuple = Vec::with_capacity(m);
                for l in 0..m {
                    let coord: Vec<u32> = (0..n).map(|j| base_tuples[idx[j]][l]).collect();
                    ptuple.push(encode(&coord, t.domain_size));
                }
                out.push(ptuple);
                // odometer over selections
                let mut j = n;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < base_tuples.len() {
                        break;
                    }
                    idx[j] = 0;
                }
                if idx.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        relations.push(Relation::materialized(rel.name.clone(), m, out));
    }
    Ok(RelationalStructure::new(format!("{}^{n}", t.name), size, relations))
}

/// Disjoint union with offset re-indexing; relations are unioned per index.
pub fn disjoint_union(parts: &[RelationalStructure]) -> Result<RelationalStructure> {
    if parts.is_empty() {
        return Ok(RelationalStructure::new("empty", 0, Vec::new()));
    }
    for p in &parts[1..] {
        parts[0].check_signature(p)?;
    }
    let mut relations: Vec<Vec<Tuple>> = vec![Vec::new(); parts[0].relations.len()];
    let mut offset = 0u32;
    for p in parts {
        for (ri, rel) in p.relations.iter().enumerate() {
            for t in rel.tuples()? {
                relations[ri].push(t.iter().map(|&x| x + offset).collect());
            }
        }
        offset += p.domain_size as u32;
    }
    let rels = relations
        .into_iter()
        .enumerate()
        .map(|(ri, tuples)| {
            Relation::materialized(parts[0].relations[ri].name.clone(), parts[0].relations[ri].arity, tuples)
        })
        .collect();
    Ok(RelationalStructure::new("union", offset as usize, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates;

    #[test]
    fn validate_well_formed_k2() {
        assert!(validate_structure(&templates::k2()).is_empty());
    }

    #[test]
    fn validate_reports_range_and_arity() {
        let s = RelationalStructure::new(
            "bad",
            2,
            vec![Relation::materialized("e", 2, vec![vec![0, 2]]),
                 Relation::materialized("t", 3, vec![vec![0, 1]])],
        );
        let report = validate_structure(&s);
        assert_eq!(report.len(), 2);
        assert!(report[0].message.contains("entry 2 out of range"));
        assert!(report[1].message.contains("length 2"));
    }

    #[test]
    fn identity_is_homomorphism_on_k2() {
        let k2 = templates::k2();
        let h = Homomorphism::new(vec![0, 1]);
        assert!(is_homomorphism(&k2, &k2, &h).unwrap());
        let collapse = Homomorphism::new(vec![0, 0]);
        assert!(!is_homomorphism(&k2, &k2, &collapse).unwrap());
    }

    #[test]
    fn c3_embeds_into_k3() {
        let c3 = templates::cycle(3);
        let k3 = templates::clique(3);
        let h = Homomorphism::new(vec![0, 1, 2]);
        assert!(is_homomorphism(&c3, &k3, &h).unwrap());
    }

    #[test]
    fn power_of_k2() {
        let k2 = templates::k2();
        let p1 = power_structure(&k2, 1).unwrap();
        assert_eq!(p1.domain_size, 2);
        assert_eq!(p1.relations[0].tuples().unwrap().len(), 2);
        let p2 = power_structure(&k2, 2).unwrap();
        assert_eq!(p2.domain_size, 4);
        assert_eq!(p2.relations[0].tuples().unwrap().len(), 4);
    }

    #[test]
    fn power_of_empty_relation() {
        let s = RelationalStructure::new("s", 2, vec![Relation::materialized("e", 2, vec![])]);
        let p = power_structure(&s, 3).unwrap();
        assert!(p.relations[0].tuples().unwrap().is_empty());
    }

    #[test]
    fn union_shapes() {
        let k2 = templates::k2();
        let u1 = disjoint_union(std::slice::from_ref(&k2)).unwrap();
        assert_eq!(u1.domain_size, 2);
        let u2 = disjoint_union(&[k2.clone(), k2.clone()]).unwrap();
        assert_eq!(u2.domain_size, 4);
        assert_eq!(u2.relations[0].tuples().unwrap().len(), 4);
        let u0 = disjoint_union(&[]).unwrap();
        assert_eq!(u0.domain_size, 0);
    }

    // structures are shared across concurrent searches; keep them Send+Sync
    #[test]
    fn structures_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<RelationalStructure>();
        assert_send_sync::<Relation>();
        assert_send_sync::<Homomorphism>();
    }

    #[test]
    fn lazy_matrix_memoizes() {
        let rel = Relation::lazy("ne", 2, Arc::new(|t: &[u32]| t[0] != t[1]));
        let m = rel.matrix(3).unwrap();
        assert!(m.get(0, 1) && !m.get(1, 1));
        let m2 = rel.matrix(3).unwrap();
        assert!(Arc::ptr_eq(&m, &m2));
    }
}
