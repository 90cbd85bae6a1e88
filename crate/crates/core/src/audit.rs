//! The seeded verification suite: every constructive claim the workbench
//! implements is checked against an independent route — brute-force
//! enumeration, a second implementation, or a theorem's guaranteed outcome.
//! Each audit reports its case count and any violations with enough detail
//! to reproduce from the seed.

use crate::algebra::{
    build_gamma_b, comoblom_boolean_set, constant_algebra, extending_embedding, Algebra,
    AlgebraSet, AlgebraSignature,
};
use crate::betweenness::betweenness_example;
use crate::clone::{boolean_algebra_tractable, BooleanOracle};
use crate::conservative::{
    build_gamma_prime_c, bipartite_example_check, wrap_graph_in_is_signature, GammaPrimeC,
};
use crate::error::{Error, Result};
use crate::gamma_prime::{
    build_gamma_prime, build_gamma_prime_symbolic, check_homtog, constant_pair_embedding,
};
use crate::gen;
use crate::op::{bool_min, bool_nand, preserves_relation, FiniteOperation, OperationSystem};
use crate::pipeline::reduction_pipeline;
use crate::rng::SplitMix64;
use crate::siggers::{enumerate_siggers_pairs, find_siggers_pair_admitted};
use crate::solver::{exhaustive_find_homomorphism, find_homomorphism};
use crate::structure::{RelationalStructure, Tuple};
use crate::templates;
use crate::transport::{
    lifted_in_minv_check, outside_apply, term_transport_check, verify_lifted_polymorphism,
    LiftedKind, TransportCase,
};

/// One audit's outcome. `violations` is empty on success.
#[derive(Debug, Clone)]
pub struct AuditOutcome {
    pub name: String,
    pub cases: u32,
    pub violations: Vec<String>,
    pub detail: String,
}

impl AuditOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Solver verdicts against exhaustive enumeration on seeded random pairs.
pub fn audit_hom_oracle(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    let mut positive = 0u32;
    for case in 0..cases {
        let r = gen::random_structure(&mut rng, 4, &[1, 2, 3], 20 + (case as u64 % 40));
        let t = gen::random_structure(&mut rng, 4, &[1, 2, 3], 35 + (case as u64 % 50));
        let fast = find_homomorphism(&r, &t)?;
        let slow = exhaustive_find_homomorphism(&r, &t)?;
        if fast.is_some() != slow.is_some() {
            violations.push(format!("case {case}: solver {:?} vs oracle {:?}", fast.is_some(), slow.is_some()));
            continue;
        }
        if let (Some(a), Some(b)) = (&fast, &slow) {
            positive += 1;
            if a.map != b.map {
                violations.push(format!("case {case}: witness is not the lexicographic least"));
            }
        }
    }
    Ok(AuditOutcome {
        name: "homomorphism-oracle-agreement".into(),
        cases,
        violations,
        detail: format!("{positive} satisfiable"),
    })
}

/// Both sides of the pair-versus-homomorphism equivalence on random inputs
/// against the betweenness template.
pub fn audit_pair_hom_equivalence(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let gp = build_gamma_prime(&templates::btw_template())?;
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    let mut positive = 0u32;
    for case in 0..cases {
        let r = gen::random_structure(&mut rng, 4, &[1, 1, 3], 8 + (case as u64 % 22));
        let out = check_homtog(&r, &gp)?;
        if !out.agree {
            violations.push(format!(
                "case {case}: indicator {:?} vs lazy search {:?}",
                out.indicator_pair.is_some(),
                out.gamma_prime_hom.is_some()
            ));
        } else if out.indicator_pair.is_some() {
            positive += 1;
        }
    }
    Ok(AuditOutcome {
        name: "siggers-pair-vs-hom-equivalence".into(),
        cases,
        violations,
        detail: format!("{positive} positive verdicts"),
    })
}

fn template_corpus() -> Vec<RelationalStructure> {
    vec![
        templates::k2(),
        templates::clique(3),
        templates::clique(4),
        templates::cycle(4),
        templates::cycle(5),
        templates::cycle(6),
        templates::btw_template(),
        templates::btw_alpha_template(),
        templates::leq_template(),
        RelationalStructure::new(
            "le_plain",
            2,
            vec![crate::structure::Relation::materialized(
                "leq",
                2,
                vec![vec![0, 0], vec![0, 1], vec![1, 1]],
            )],
        ),
        RelationalStructure::new(
            "full2",
            2,
            vec![crate::structure::Relation::materialized(
                "full",
                2,
                vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            )],
        ),
        RelationalStructure::new(
            "point",
            1,
            vec![crate::structure::Relation::materialized("u", 1, vec![vec![0]])],
        ),
    ]
}

/// Both embedding constructions pass the homomorphism check on the corpus.
pub fn audit_embeddings() -> Result<AuditOutcome> {
    let mut violations = Vec::new();
    let corpus = template_corpus();
    let cases = corpus.len() as u32;
    for gamma in &corpus {
        // constant-pair embedding into Γ′ (symbolic domain beyond |D| = 2)
        let gp = if gamma.domain_size <= 2 {
            build_gamma_prime(gamma)
        } else {
            let pairs = (0..gamma.domain_size as u32)
                .map(|a| {
                    (
                        FiniteOperation::constant(gamma.domain_size, 1, a),
                        FiniteOperation::constant(gamma.domain_size, 4, a),
                    )
                })
                .collect();
            build_gamma_prime_symbolic(gamma, pairs)
        }?;
        if let Err(e) = constant_pair_embedding(&gp) {
            violations.push(format!("{}: constant-pair embedding: {e}", gamma.name));
        }
        // extending embedding into Γ^𝔅 with the constants-only set
        let sig = AlgebraSignature::single_binary();
        let consts: Vec<Algebra> = (0..gamma.domain_size as u32)
            .map(|a| constant_algebra(a, &sig, gamma.domain_size))
            .collect();
        let set = AlgebraSet::new(sig, gamma.domain_size, consts)?;
        let gb = build_gamma_b(gamma, &set)?;
        if let Err(e) = extending_embedding(gamma, &set, &gb) {
            violations.push(format!("{}: extending embedding: {e}", gamma.name));
        }
        // and with the worked-example set on Boolean templates
        if gamma.domain_size == 2 {
            let set = comoblom_boolean_set()?;
            let gb = build_gamma_b(gamma, &set)?;
            if let Err(e) = extending_embedding(gamma, &set, &gb) {
                violations.push(format!("{}: worked-example embedding: {e}", gamma.name));
            }
        }
    }
    Ok(AuditOutcome {
        name: "embedding-theorems".into(),
        cases,
        violations,
        detail: format!("{} templates", corpus.len()),
    })
}

/// An independently coded Siggers-pair filter, kept deliberately different
/// from the library predicate: raw index arithmetic over packed tables.
fn independent_pair_filter_count_d2() -> (u64, u64) {
    let mut total = 0u64;
    let mut const_g = 0u64;
    for g_bits in 0..4u32 {
        let g = [g_bits >> 1 & 1, g_bits & 1];
        let img: Vec<u32> = if g[0] == g[1] { vec![g[0]] } else { vec![0, 1] };
        for s_bits in 0..1u32 << 16 {
            let s = |a: u32, b: u32, c: u32, d: u32| s_bits >> (15 - (a * 8 + b * 4 + c * 2 + d)) & 1;
            let mut ok = true;
            'check: for &x in &img {
                for &y in &img {
                    for &z in &img {
                        for &t in &img {
                            if !img.contains(&s(x, y, z, t)) {
                                ok = false;
                                break 'check;
                            }
                        }
                        if s(x, y, x, z) != s(y, x, z, y) {
                            ok = false;
                            break 'check;
                        }
                    }
                }
                if s(x, x, x, x) != x {
                    ok = false;
                    break 'check;
                }
            }
            if ok {
                total += 1;
                if g[0] == g[1] {
                    const_g += 1;
                }
            }
        }
    }
    (total, const_g)
}

/// The |D| = 2 census against the independent filter and the frozen counts.
pub fn audit_siggers_census() -> Result<AuditOutcome> {
    let mut violations = Vec::new();
    let pairs = enumerate_siggers_pairs(2)?;
    let (total, const_g) = independent_pair_filter_count_d2();
    if pairs.len() as u64 != total {
        violations.push(format!("enumeration {} vs independent filter {total}", pairs.len()));
    }
    let const_count =
        pairs.iter().filter(|(g, _)| g.table[0] == g.table[1]).count() as u64;
    if const_count != const_g {
        violations.push(format!("constant-g subcount {const_count} vs filter {const_g}"));
    }
    if const_g != 2 * (1 << 15) {
        violations.push(format!("constant-g subcount {const_g} differs from 2*2^15"));
    }
    Ok(AuditOutcome {
        name: "siggers-census".into(),
        cases: (4 * (1u32 << 16)),
        violations,
        detail: format!("total {total}, constant-g {const_g}"),
    })
}

/// The five transport identities on seeded random operations.
pub fn audit_transport(seed: u64, cases_per_kind: u32) -> Result<AuditOutcome> {
    let all = AlgebraSet::full(AlgebraSignature::single_binary(), 2)?;
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    let run = |name: &str, case: &TransportCase<'_>, violations: &mut Vec<String>| {
        match term_transport_check(case, &all) {
            Ok(true) => {}
            Ok(false) => violations.push(format!("{name}: transported identity failed")),
            Err(e) => violations.push(format!("{name}: {e}")),
        }
    };
    for i in 0..cases_per_kind {
        let n = 2 + rng.usize_below(2);
        // identification: g(x..) = f(x.., x_last)
        let f = gen::random_operation(&mut rng, "f", 2, n);
        let g_table: Vec<u32> = crate::op::arg_tuples(2, n - 1)
            .map(|args| {
                let mut ext = args.clone();
                ext.push(*args.last().unwrap());
                f.apply(&ext)
            })
            .collect();
        let g = FiniteOperation::new("g", 2, n - 1, g_table)?;
        run(&format!("identification[{i}]"), &TransportCase::Identification { f: &f, g: &g }, &mut violations);

        // fictitious: f(x.., y) = g(x..)
        let g2 = gen::random_operation(&mut rng, "g", 2, n - 1);
        let f2_table: Vec<u32> =
            crate::op::arg_tuples(2, n).map(|args| g2.apply(&args[..n - 1])).collect();
        let f2 = FiniteOperation::new("f", 2, n, f2_table)?;
        run(&format!("fictitious[{i}]"), &TransportCase::Fictitious { f: &f2, g: &g2 }, &mut violations);

        // permutation
        let f3 = gen::random_operation(&mut rng, "f", 2, n);
        let mut pi: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            pi.swap(k, rng.usize_below(k + 1));
        }
        let g3_table: Vec<u32> = crate::op::arg_tuples(2, n)
            .map(|args| {
                let permuted: Vec<u32> = pi.iter().map(|&p| args[p]).collect();
                f3.apply(&permuted)
            })
            .collect();
        let g3 = FiniteOperation::new("g", 2, n, g3_table)?;
        run(&format!("permutation[{i}]"), &TransportCase::Permutation { f: &f3, g: &g3, pi: &pi }, &mut violations);

        // projection
        let arity = 1 + rng.usize_below(3);
        let index = rng.usize_below(arity);
        run(&format!("projection[{i}]"), &TransportCase::Projection { arity, index }, &mut violations);

        // superposition: g = f(g_1, ..., g_n) with m = 2
        let f4 = gen::random_operation(&mut rng, "f", 2, n);
        let inner: Vec<FiniteOperation> =
            (0..n).map(|k| gen::random_operation(&mut rng, format!("g{k}"), 2, 2)).collect();
        let g4_table: Vec<u32> = crate::op::arg_tuples(2, 2)
            .map(|args| {
                let mids: Vec<u32> = inner.iter().map(|gi| gi.apply(&args)).collect();
                f4.apply(&mids)
            })
            .collect();
        let g4 = FiniteOperation::new("g", 2, 2, g4_table)?;
        run(
            &format!("superposition[{i}]"),
            &TransportCase::Superposition { f: &f4, g: &g4, inner: &inner },
            &mut violations,
        );
    }
    Ok(AuditOutcome {
        name: "term-transport".into(),
        cases: cases_per_kind * 5,
        violations,
        detail: format!("{cases_per_kind} per kind"),
    })
}

fn random_boolean_template(rng: &mut SplitMix64) -> RelationalStructure {
    let kind = rng.usize_below(3);
    let sig: &[usize] = match kind {
        0 => &[2],
        1 => &[1, 2],
        _ => &[2, 2],
    };
    let density = 40 + rng.below(40);
    gen::random_structure_with_vars(rng, 2, sig, density)
}

fn random_admitted_operation(
    rng: &mut SplitMix64,
    gamma: &RelationalStructure,
    arity: usize,
) -> FiniteOperation {
    gen::random_polymorphism(rng, gamma, arity, 400)
        .unwrap_or_else(|| FiniteOperation::projection(gamma.domain_size, arity, 0))
}

/// Close a seed set of algebras under outside application of f.
fn close_under_outside(
    f: &FiniteOperation,
    seeds: Vec<Algebra>,
    sig: &AlgebraSignature,
) -> Result<AlgebraSet> {
    let mut members: Vec<Algebra> = Vec::new();
    let mut fingerprints = std::collections::BTreeSet::new();
    for s in seeds {
        if fingerprints.insert(s.fingerprint()) {
            members.push(s);
        }
    }
    loop {
        let mut added = false;
        let count = members.len();
        let mut sel = vec![0usize; f.arity];
        'outer: loop {
            let picks: Vec<&Algebra> = sel.iter().map(|&i| &members[i]).collect();
            let out = outside_apply(f, &picks)?;
            if fingerprints.insert(out.fingerprint()) {
                members.push(Algebra { name: format!("c{}", members.len()), ..out });
                added = true;
            }
            let mut i = f.arity;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                sel[i] += 1;
                if sel[i] < count {
                    break;
                }
                sel[i] = 0;
            }
        }
        if !added {
            break;
        }
    }
    AlgebraSet::new(sig.clone(), 2, members)
}

/// Outside and inside lifted-polymorphism theorems on precondition-passing
/// seeded cases.
pub fn audit_lifted_polymorphisms(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let sig = AlgebraSignature::single_binary();
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        // outside
        let gamma = random_boolean_template(&mut rng);
        let f_arity = 1 + rng.usize_below(2);
        let f = random_admitted_operation(&mut rng, &gamma, f_arity);
        let seeds = vec![
            constant_algebra(0, &sig, 2),
            constant_algebra(1, &sig, 2),
            Algebra::new("r", &sig, vec![gen::random_operation(&mut rng, "b", 2, 2)])?,
        ];
        let set = close_under_outside(&f, seeds, &sig)?;
        match verify_lifted_polymorphism(LiftedKind::Outside(&f), &gamma, &set) {
            Ok(true) => {}
            Ok(false) => violations.push(format!("outside[{case}]: induced operation broke a lifted relation")),
            Err(Error::Precondition(_)) => {} // generation missed; not a violation
            Err(e) => violations.push(format!("outside[{case}]: {e}")),
        }

        // inside: close a seed orbit under the unary map
        let gamma = random_boolean_template(&mut rng);
        let f1 = random_admitted_operation(&mut rng, &gamma, 2);
        let f2 = random_admitted_operation(&mut rng, &gamma, 2);
        let system = OperationSystem::new(vec![vec![f1, f2]])?;
        let mut members = vec![Algebra::new(
            "seed",
            &sig,
            vec![gen::random_operation(&mut rng, "b", 2, 2)],
        )?];
        let mut fingerprints: std::collections::BTreeSet<_> =
            members.iter().map(|a| a.fingerprint()).collect();
        loop {
            let last = members.last().unwrap();
            let next = crate::transport::inside_apply(&system, last)?;
            if fingerprints.insert(next.fingerprint()) {
                members.push(Algebra { name: format!("c{}", members.len()), ..next });
            } else {
                break;
            }
        }
        let set = AlgebraSet::new(sig.clone(), 2, members)?;
        match verify_lifted_polymorphism(LiftedKind::Inside(&system), &gamma, &set) {
            Ok(true) => {}
            Ok(false) => violations.push(format!("inside[{case}]: induced operation broke a lifted relation")),
            Err(Error::Precondition(_)) => {}
            Err(e) => violations.push(format!("inside[{case}]: {e}")),
        }
    }
    Ok(AuditOutcome {
        name: "lifted-polymorphisms".into(),
        cases: cases * 2,
        violations,
        detail: format!("{cases} outside + {cases} inside"),
    })
}

/// The lifted language of Γ^𝔅 sits inside the multi-sorted invariants.
pub fn audit_minv(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let sig = AlgebraSignature::single_binary();
    let full = AlgebraSet::full(sig.clone(), 2)?;
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let gamma = random_boolean_template(&mut rng);
        let size = 1 + rng.usize_below(5);
        let mut members = Vec::new();
        let mut fps = std::collections::BTreeSet::new();
        while members.len() < size {
            let pick = full.members[rng.usize_below(full.len())].clone();
            if fps.insert(pick.fingerprint()) {
                members.push(Algebra { name: format!("m{}", members.len()), ..pick });
            }
        }
        let set = AlgebraSet::new(sig.clone(), 2, members)?;
        if !lifted_in_minv_check(&gamma, &set)? {
            violations.push(format!("case {case}: a lifted relation escaped the invariants"));
        }
    }
    Ok(AuditOutcome { name: "lifted-in-minv".into(), cases, violations, detail: String::new() })
}

/// End-to-end reduction pipeline against the direct search.
pub fn audit_reduction_pipeline(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let gamma = templates::btw_template();
    let set = comoblom_boolean_set()?;
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    let mut members = 0u32;
    for case in 0..cases {
        let r = gen::random_structure(&mut rng, 4, &gamma.signature(), 10 + (case as u64 % 30));
        match reduction_pipeline(&gamma, &set, &r, &BooleanOracle) {
            Ok(out) => {
                if out.member != out.direct {
                    violations.push(format!("case {case}: pipeline {} vs direct {}", out.member, out.direct));
                }
                if out.member {
                    members += 1;
                }
            }
            Err(e) => violations.push(format!("case {case}: {e}")),
        }
    }
    Ok(AuditOutcome {
        name: "reduction-pipeline".into(),
        cases,
        violations,
        detail: format!("{members} members"),
    })
}

/// The betweenness four-case algorithm against brute force.
pub fn audit_betweenness(seed: u64, cases: u32) -> Result<AuditOutcome> {
    let alpha_t = templates::btw_alpha_template();
    let btw_t = templates::btw_template();
    let mut rng = SplitMix64::new(seed);
    let mut violations = Vec::new();
    let mut done = 0u32;
    let mut solvable = 0u32;
    while done < cases {
        // dense unary relations so that overlapping-membership rejections
        // and structurally unsatisfiable inputs both occur in the mix
        let density = 8 + rng.below(18);
        let mut r = gen::random_structure(&mut rng, 4, &[1, 1, 3], density);
        for ri in 0..2 {
            let tuples: Vec<Tuple> = (0..r.domain_size as u32)
                .filter(|_| rng.chance(35, 100))
                .map(|v| vec![v])
                .collect();
            r.relations[ri] = crate::structure::Relation::materialized(
                format!("r{ri}"),
                1,
                tuples,
            );
        }
        let Some(g) = find_homomorphism(&r, &alpha_t)? else { continue };
        done += 1;
        match betweenness_example(&r, &g) {
            Ok(alg) => {
                let brute = exhaustive_find_homomorphism(&r, &btw_t)?;
                if alg.is_some() != brute.is_some() {
                    violations.push(format!(
                        "case {done}: algorithm {:?} vs brute force {:?}",
                        alg.is_some(),
                        brute.is_some()
                    ));
                }
                if alg.is_some() {
                    solvable += 1;
                }
            }
            Err(e) => violations.push(format!("case {done}: {e}")),
        }
    }
    Ok(AuditOutcome {
        name: "betweenness-example".into(),
        cases,
        violations,
        detail: format!("{solvable} solvable"),
    })
}

/// Every connected graph on up to `max_vertices` vertices: the lazy search
/// into Γ′_c must succeed exactly on the bipartite ones.
pub fn audit_bipartite(gpc: &GammaPrimeC, max_vertices: usize) -> Result<AuditOutcome> {
    let mut violations = Vec::new();
    let mut cases = 0u32;
    let mut bipartite_count = 0u32;
    for n in 1..=max_vertices {
        let vertex_pairs: Vec<(u32, u32)> = {
            let mut out = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    out.push((a, b));
                }
            }
            out
        };
        for mask in 0u64..1 << vertex_pairs.len() {
            let edges: Vec<Tuple> = vertex_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(a, b))| vec![a, b])
                .collect();
            if !is_connected(n, &edges) {
                continue;
            }
            cases += 1;
            let r = wrap_graph_in_is_signature(format!("g{n}_{mask}"), n, edges, 4);
            let out = bipartite_example_check(&r, gpc)?;
            if !out.agree {
                violations.push(format!(
                    "{}: hom {} vs bipartite {}",
                    r.name, out.hom_into_gamma_prime_c, out.bipartite
                ));
            }
            if out.bipartite {
                bipartite_count += 1;
            }
        }
    }
    Ok(AuditOutcome {
        name: "bipartite-example".into(),
        cases,
        violations,
        detail: format!("{bipartite_count} bipartite"),
    })
}

fn is_connected(n: usize, edges: &[Tuple]) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// The 3-clique admits no Siggers pair: the indicator search must exhaust.
pub fn audit_k3_no_pair() -> Result<AuditOutcome> {
    let found = find_siggers_pair_admitted(&templates::clique(3))?;
    let violations = if found.is_some() {
        vec!["the 3-clique indicator search produced a pair".into()]
    } else {
        Vec::new()
    };
    Ok(AuditOutcome {
        name: "k3-admits-no-pair".into(),
        cases: 1,
        violations,
        detail: "exhaustive indicator search over 81 cells".into(),
    })
}

/// Boolean oracle fixed points plus the Γ′_c equivalence with the
/// two-element inequality structure.
pub fn audit_oracle_and_equivalence(gpc: &GammaPrimeC) -> Result<AuditOutcome> {
    let mut violations = Vec::new();
    if !boolean_algebra_tractable(&[bool_min()])? {
        violations.push("{min} should be tractable".into());
    }
    if boolean_algebra_tractable(&[])? {
        violations.push("projections alone should not be tractable".into());
    }
    if !boolean_algebra_tractable(&[bool_nand()])? {
        violations.push("{nand} should be tractable".into());
    }
    match crate::conservative::neq_equivalence_check(gpc) {
        Ok(true) => {}
        Ok(false) => violations.push("gamma'_c is not equivalent to the inequality structure".into()),
        Err(e) => violations.push(format!("equivalence check failed: {e}")),
    }
    Ok(AuditOutcome {
        name: "oracle-and-equivalence".into(),
        cases: 4,
        violations,
        detail: String::new(),
    })
}

/// The randomized audits behind `csplift audit`.
pub fn run_randomized_audits(seed: u64, cases: u32) -> Result<Vec<AuditOutcome>> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::new(seed);
    out.push(audit_hom_oracle(rng.next_u64(), cases)?);
    out.push(audit_pair_hom_equivalence(rng.next_u64(), cases.min(20))?);
    out.push(audit_transport(rng.next_u64(), cases)?);
    out.push(audit_lifted_polymorphisms(rng.next_u64(), cases)?);
    out.push(audit_minv(rng.next_u64(), cases.min(10))?);
    out.push(audit_reduction_pipeline(rng.next_u64(), cases.min(30))?);
    out.push(audit_betweenness(rng.next_u64(), cases.min(50))?);
    Ok(out)
}

/// The fixture checks behind `csplift examples`.
pub fn run_example_fixtures() -> Result<Vec<AuditOutcome>> {
    let mut out = Vec::new();
    out.push(audit_betweenness(0, 50)?);
    let gpc = build_gamma_prime_c(&templates::independent_set_template())?;
    out.push(audit_bipartite(&gpc, 4)?);
    out.push(audit_oracle_and_equivalence(&gpc)?);
    Ok(out)
}

/// Quick sanity that a found pair really is admitted; used by tests.
pub fn pair_is_admitted(
    gamma: &RelationalStructure,
    pair: &(FiniteOperation, FiniteOperation),
) -> Result<bool> {
    for rel in &gamma.relations {
        if !preserves_relation(&pair.0, rel)? || !preserves_relation(&pair.1, rel)? {
            return Ok(false);
        }
    }
    Ok(crate::siggers::is_siggers_pair(&pair.0, &pair.1))
}
