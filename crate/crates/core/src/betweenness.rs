//! The binary-betweenness worked example: inputs that come with a coloring
//! into the relaxed template can be solved by a four-case rewriting rule.

use crate::error::{Error, Result};
use crate::structure::{is_homomorphism, Homomorphism, RelationalStructure};
use crate::templates::{btw_alpha_template, btw_template, ALPHA};

/// Given R = (V, Ω0, Ω1, Ω) and a valid coloring g: R -> Γ_α, decide whether
/// R maps into the betweenness template and produce a witness.
///
/// If Ω0 and Ω1 intersect there is no homomorphism. Otherwise the witness is
/// h(x) = g(x) when g(x) is not α; 0 when x ∈ Ω0; 1 when x ∈ Ω1; 0 otherwise.
/// The constructed map is validated before being returned; a validation
/// failure is surfaced as a theorem violation, never hidden.
pub fn betweenness_example(
    r: &RelationalStructure,
    g: &Homomorphism,
) -> Result<Option<Homomorphism>> {
    let alpha_t = btw_alpha_template();
    let btw_t = btw_template();
    r.check_signature(&btw_t)?;
    if !is_homomorphism(r, &alpha_t, g)? {
        return Err(Error::Precondition("g is not a homomorphism into the relaxed template".into()));
    }
    let omega0: Vec<u32> = r.relations[0].tuples()?.iter().map(|t| t[0]).collect();
    let omega1: Vec<u32> = r.relations[1].tuples()?.iter().map(|t| t[0]).collect();
    if omega0.iter().any(|v| omega1.contains(v)) {
        return Ok(None);
    }
    let map: Vec<u32> = (0..r.domain_size as u32)
        .map(|x| {
            let gx = g.map[x as usize];
            if gx != ALPHA {
                gx
            } else if omega0.contains(&x) {
                0
            } else if omega1.contains(&x) {
                1
            } else {
                0
            }
        })
        .collect();
    let h = Homomorphism::new(map);
    if !is_homomorphism(r, &btw_t, &h)? {
        return Err(Error::TheoremViolation(format!(
            "four-case construction produced a non-homomorphism: g = {:?}, h = {:?}",
            g.map, h.map
        )));
    }
    Ok(Some(h))
}
