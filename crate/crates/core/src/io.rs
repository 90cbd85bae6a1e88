//! Line-oriented text formats for structures, operations, algebras, cost
//! functions, and homomorphism maps. `#` starts a comment anywhere on a
//! line; blank lines are ignored; parse(serialize(x)) = x.

use crate::algebra::{Algebra, AlgebraSignature};
use crate::error::{Error, Result};
use crate::lift::{LiftedLanguage, LiftedPayload};
use crate::op::FiniteOperation;
use crate::rational::{CostValue, Rational};
use crate::structure::{Homomorphism, Relation, RelationalStructure, Tuple};
use crate::valued::CostFunction;

struct Lines<'a> {
    file: String,
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, file: &str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let stripped = raw.split('#').next().unwrap_or("").trim();
                if stripped.is_empty() {
                    None
                } else {
                    Some((i + 1, stripped.split_whitespace().collect()))
                }
            })
            .collect();
        Lines { file: file.to_string(), items, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse { file: self.file.clone(), line, message: message.into() }
    }

    fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.next() {
            Some((line, tokens)) if tokens[0] == keyword => Ok((line, tokens)),
            Some((line, tokens)) => Err(self.err(line, format!("expected `{keyword}`, found `{}`", tokens[0]))),
            None => Err(self.err(0, format!("expected `{keyword}`, found end of file"))),
        }
    }
}

fn parse_num<T: std::str::FromStr>(lines: &Lines<'_>, line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| lines.err(line, format!("expected {what}, found `{token}`")))
}

// ---- structures ----

pub fn parse_structures(text: &str, file: &str) -> Result<Vec<RelationalStructure>> {
    let mut lines = Lines::new(text, file);
    let mut out = Vec::new();
    while lines.peek().is_some() {
        out.push(parse_structure_block(&mut lines)?);
    }
    Ok(out)
}

fn parse_structure_block(lines: &mut Lines<'_>) -> Result<RelationalStructure> {
    let (line, tokens) = lines.expect("structure")?;
    if tokens.len() != 2 {
        return Err(lines.err(line, "expected `structure <name>`"));
    }
    let name = tokens[1].to_string();
    let (dline, dtokens) = lines.expect("domain")?;
    if dtokens.len() != 2 {
        return Err(lines.err(dline, "expected `domain <n>`"));
    }
    let domain_size: usize = parse_num(lines, dline, dtokens[1], "a domain size")?;
    let mut relations = Vec::new();
    loop {
        match lines.next() {
            Some((_, tokens)) if tokens[0] == "end" => break,
            Some((rline, tokens)) if tokens[0] == "relation" => {
                if tokens.len() != 3 {
                    return Err(lines.err(rline, "expected `relation <name> <arity>`"));
                }
                let rel_name = tokens[1].to_string();
                let arity: usize = parse_num(lines, rline, tokens[2], "an arity")?;
                if arity == 0 {
                    return Err(lines.err(rline, "relation arity must be positive"));
                }
                let mut tuples: Vec<Tuple> = Vec::new();
                while let Some((tline, tokens)) = lines.peek().cloned() {
                    if tokens[0] == "relation" || tokens[0] == "end" {
                        break;
                    }
                    lines.next();
                    if tokens.len() != arity {
                        return Err(lines.err(
                            tline,
                            format!("tuple has {} entries, arity is {arity}", tokens.len()),
                        ));
                    }
                    let mut t = Vec::with_capacity(arity);
                    for tok in &tokens {
                        let v: u32 = parse_num(lines, tline, tok, "a domain element")?;
                        if v as usize >= domain_size {
                            return Err(lines.err(tline, format!("entry {v} out of range for domain {domain_size}")));
                        }
                        t.push(v);
                    }
                    tuples.push(t);
                }
                relations.push(Relation::materialized(rel_name, arity, tuples));
            }
            Some((oline, tokens)) => {
                return Err(lines.err(oline, format!("expected `relation` or `end`, found `{}`", tokens[0])))
            }
            None => return Err(lines.err(line, "structure block is not closed by `end`")),
        }
    }
    Ok(RelationalStructure::new(name, domain_size, relations))
}

pub fn serialize_structure(s: &RelationalStructure) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("structure {}\n", s.name));
    out.push_str(&format!("domain {}\n", s.domain_size));
    for rel in &s.relations {
        out.push_str(&format!("relation {} {}\n", rel.name, rel.arity));
        for t in rel.tuples()? {
            let row: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out.push_str("end\n");
    Ok(out)
}

/// Lifted languages serialize as structures; the encoding convention is
/// recorded as a header comment.
pub fn serialize_lifted(l: &LiftedLanguage) -> Result<String> {
    let mut out = String::from("# encoding d(v,a)=v*|D|+a\n");
    match &l.payload {
        LiftedPayload::Crisp(s) => out.push_str(&serialize_structure(s)?),
        LiftedPayload::Valued(costs) => {
            for f in costs {
                out.push_str(&serialize_cost(f));
            }
        }
    }
    Ok(out)
}

// ---- operations ----

pub fn parse_operations(text: &str, file: &str) -> Result<Vec<FiniteOperation>> {
    let mut lines = Lines::new(text, file);
    let mut out = Vec::new();
    while lines.peek().is_some() {
        let (line, tokens) = lines.expect("operation")?;
        if tokens.len() != 4 {
            return Err(lines.err(line, "expected `operation <name> <domain_size> <arity>`"));
        }
        let name = tokens[1].to_string();
        let domain_size: usize = parse_num(&lines, line, tokens[2], "a domain size")?;
        let arity: usize = parse_num(&lines, line, tokens[3], "an arity")?;
        let table = parse_operation_rows(&mut lines, line, domain_size, arity)?;
        lines.expect("end")?;
        out.push(FiniteOperation::new(name, domain_size, arity, table)?);
    }
    Ok(out)
}

fn parse_operation_rows(
    lines: &mut Lines<'_>,
    header_line: usize,
    domain_size: usize,
    arity: usize,
) -> Result<Vec<u32>> {
    let expected = domain_size.pow(arity as u32);
    let mut table: Vec<Option<u32>> = vec![None; expected];
    let mut filled = 0usize;
    while filled < expected {
        let Some((rline, tokens)) = lines.peek().cloned() else {
            break;
        };
        if tokens[0] == "end" || tokens[0] == "op" {
            break;
        }
        lines.next();
        if tokens.len() != arity + 1 {
            return Err(lines.err(rline, format!("expected {arity} arguments and a value")));
        }
        let mut idx = 0usize;
        for tok in &tokens[..arity] {
            let v: u32 = parse_num(lines, rline, tok, "a domain element")?;
            if v as usize >= domain_size {
                return Err(lines.err(rline, format!("argument {v} out of range")));
            }
            idx = idx * domain_size + v as usize;
        }
        let value: u32 = parse_num(lines, rline, tokens[arity], "a value")?;
        if value as usize >= domain_size {
            return Err(lines.err(rline, format!("value {value} out of range")));
        }
        if table[idx].is_some() {
            return Err(lines.err(rline, "duplicate row"));
        }
        table[idx] = Some(value);
        filled += 1;
    }
    if filled < expected {
        let missing = table.iter().position(|v| v.is_none()).unwrap();
        let mut args = vec![0u32; arity];
        crate::op::decode(missing, domain_size, &mut args);
        return Err(lines.err(header_line, format!("missing row for arguments {args:?}")));
    }
    Ok(table.into_iter().map(|v| v.unwrap()).collect())
}

pub fn serialize_operation(op: &FiniteOperation) -> String {
    let mut out = format!("operation {} {} {}\n", op.name, op.domain_size, op.arity);
    for (i, args) in crate::op::arg_tuples(op.domain_size, op.arity).enumerate() {
        for a in &args {
            out.push_str(&format!("{a} "));
        }
        out.push_str(&format!("{}\n", op.table[i]));
    }
    out.push_str("end\n");
    out
}

// ---- algebras ----

/// Parse concatenated algebra blocks; all must share one signature.
pub fn parse_algebras(text: &str, file: &str) -> Result<(AlgebraSignature, Vec<Algebra>)> {
    let mut lines = Lines::new(text, file);
    let mut algebras: Vec<Algebra> = Vec::new();
    let mut signature: Option<AlgebraSignature> = None;
    while lines.peek().is_some() {
        let (line, tokens) = lines.expect("algebra")?;
        if tokens.len() != 2 {
            return Err(lines.err(line, "expected `algebra <name>`"));
        }
        let name = tokens[1].to_string();
        let (sline, stokens) = lines.expect("signature")?;
        let arities: Vec<usize> = stokens[1..]
            .iter()
            .map(|t| parse_num(&lines, sline, t, "an arity"))
            .collect::<Result<_>>()?;
        let sig = AlgebraSignature::new(arities).map_err(|e| lines.err(sline, e.to_string()))?;
        if let Some(prev) = &signature {
            if *prev != sig {
                return Err(lines.err(sline, "algebra blocks disagree on the signature"));
            }
        }
        let (dline, dtokens) = lines.expect("domain")?;
        if dtokens.len() != 2 {
            return Err(lines.err(dline, "expected `domain <n>`"));
        }
        let domain_size: usize = parse_num(&lines, dline, dtokens[1], "a domain size")?;
        let mut ops: Vec<Option<FiniteOperation>> = vec![None; sig.arities.len()];
        loop {
            match lines.next() {
                Some((_, tokens)) if tokens[0] == "end" => break,
                Some((oline, tokens)) if tokens[0] == "op" => {
                    if tokens.len() != 2 {
                        return Err(lines.err(oline, "expected `op <i>` (1-based symbol index)"));
                    }
                    let i: usize = parse_num(&lines, oline, tokens[1], "a symbol index")?;
                    if i == 0 || i > sig.arities.len() {
                        return Err(lines.err(oline, format!("symbol index {i} out of range 1..={}", sig.arities.len())));
                    }
                    let table = parse_operation_rows(&mut lines, oline, domain_size, sig.arities[i - 1])?;
                    if ops[i - 1].is_some() {
                        return Err(lines.err(oline, format!("duplicate `op {i}` block")));
                    }
                    ops[i - 1] = Some(FiniteOperation::new(
                        format!("o{i}"),
                        domain_size,
                        sig.arities[i - 1],
                        table,
                    )?);
                }
                Some((oline, tokens)) => {
                    return Err(lines.err(oline, format!("expected `op` or `end`, found `{}`", tokens[0])))
                }
                None => return Err(lines.err(line, "algebra block is not closed by `end`")),
            }
        }
        let ops: Vec<FiniteOperation> = ops
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| lines.err(line, format!("missing `op {}` block", i + 1))))
            .collect::<Result<_>>()?;
        algebras.push(Algebra::new(name, &sig, ops).map_err(|e| lines.err(line, e.to_string()))?);
        signature = Some(sig);
    }
    let signature = signature.ok_or_else(|| lines.err(0, "no algebra blocks found"))?;
    Ok((signature, algebras))
}

pub fn serialize_algebra(a: &Algebra) -> String {
    let mut out = format!("algebra {}\n", a.name);
    let arities: Vec<String> = a.ops.iter().map(|o| o.arity.to_string()).collect();
    out.push_str(&format!("signature {}\n", arities.join(" ")));
    out.push_str(&format!("domain {}\n", a.domain_size));
    for (i, op) in a.ops.iter().enumerate() {
        out.push_str(&format!("op {}\n", i + 1));
        for (row, args) in crate::op::arg_tuples(op.domain_size, op.arity).enumerate() {
            for x in &args {
                out.push_str(&format!("{x} "));
            }
            out.push_str(&format!("{}\n", op.table[row]));
        }
    }
    out.push_str("end\n");
    out
}

// ---- cost functions ----

pub fn parse_costs(text: &str, file: &str) -> Result<Vec<CostFunction>> {
    let mut lines = Lines::new(text, file);
    let mut out = Vec::new();
    while lines.peek().is_some() {
        let (line, tokens) = lines.expect("cost")?;
        if tokens.len() != 4 {
            return Err(lines.err(line, "expected `cost <name> <domain_size> <arity>`"));
        }
        let name = tokens[1].to_string();
        let domain_size: usize = parse_num(&lines, line, tokens[2], "a domain size")?;
        let arity: usize = parse_num(&lines, line, tokens[3], "an arity")?;
        let mut entries: Vec<(Tuple, CostValue)> = Vec::new();
        loop {
            match lines.next() {
                Some((_, tokens)) if tokens[0] == "end" => break,
                Some((rline, tokens)) => {
                    if tokens.len() != arity + 1 {
                        return Err(lines.err(rline, format!("expected {arity} arguments and a cost")));
                    }
                    let mut t = Vec::with_capacity(arity);
                    for tok in &tokens[..arity] {
                        let v: u32 = parse_num(&lines, rline, tok, "a domain element")?;
                        if v as usize >= domain_size {
                            return Err(lines.err(rline, format!("argument {v} out of range")));
                        }
                        t.push(v);
                    }
                    let cost = parse_cost_value(&lines, rline, tokens[arity])?;
                    if entries.iter().any(|(e, _)| e == &t) {
                        return Err(lines.err(rline, "duplicate cost row"));
                    }
                    entries.push((t, cost));
                }
                None => return Err(lines.err(line, "cost block is not closed by `end`")),
            }
        }
        out.push(CostFunction::from_entries(name, domain_size, arity, entries));
    }
    Ok(out)
}

fn parse_cost_value(lines: &Lines<'_>, line: usize, token: &str) -> Result<CostValue> {
    if token == "inf" {
        return Ok(CostValue::Infinity);
    }
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (
            parse_num::<i64>(lines, line, n, "a numerator")?,
            parse_num::<i64>(lines, line, d, "a denominator")?,
        ),
        None => (parse_num::<i64>(lines, line, token, "a cost value")?, 1),
    };
    Ok(CostValue::Finite(
        Rational::new(num, den).map_err(|e| lines.err(line, e.to_string()))?,
    ))
}

pub fn serialize_cost(f: &CostFunction) -> String {
    let mut out = format!("cost {} {} {}\n", f.name, f.domain_size, f.arity);
    for (t, v) in f.entries() {
        for x in t {
            out.push_str(&format!("{x} "));
        }
        match v {
            CostValue::Infinity => out.push_str("inf\n"),
            CostValue::Finite(r) if r.denominator() == 1 => {
                out.push_str(&format!("{}\n", r.numerator()))
            }
            CostValue::Finite(r) => out.push_str(&format!("{}/{}\n", r.numerator(), r.denominator())),
        }
    }
    out.push_str("end\n");
    out
}

// ---- homomorphism maps ----

pub fn parse_hom_map(text: &str, file: &str) -> Result<Homomorphism> {
    let mut lines = Lines::new(text, file);
    let mut entries: Vec<(u32, u32)> = Vec::new();
    while let Some((line, tokens)) = lines.next() {
        if tokens[0] != "map" || tokens.len() != 3 {
            return Err(lines.err(line, "expected `map <src> <dst-index>`"));
        }
        let src: u32 = parse_num(&lines, line, tokens[1], "a source element")?;
        let dst: u32 = parse_num(&lines, line, tokens[2], "a target index")?;
        entries.push((src, dst));
    }
    entries.sort();
    for (i, (src, _)) in entries.iter().enumerate() {
        if *src != i as u32 {
            return Err(Error::Parse {
                file: file.to_string(),
                line: 0,
                message: format!("map is not total: missing source {i}"),
            });
        }
    }
    Ok(Homomorphism::new(entries.into_iter().map(|(_, d)| d).collect()))
}

pub fn serialize_hom_map(h: &Homomorphism) -> String {
    let mut out = String::new();
    for (src, dst) in h.map.iter().enumerate() {
        out.push_str(&format!("map {src} {dst}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates;

    #[test]
    fn k2_fixture_parses() {
        let text = "structure K2\ndomain 2\nrelation edge 2\n0 1\n1 0\nend\n";
        let parsed = parse_structures(text, "k2.txt").unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].domain_size, 2);
        assert_eq!(parsed[0].relations[0].tuples().unwrap().len(), 2);
    }

    #[test]
    fn structure_round_trip() {
        for s in [templates::k2(), templates::btw_template(), templates::leq_template()] {
            let text = serialize_structure(&s).unwrap();
            let back = parse_structures(&text, "t").unwrap().remove(0);
            assert_eq!(back.name, s.name);
            assert_eq!(back.domain_size, s.domain_size);
            for (a, b) in back.relations.iter().zip(&s.relations) {
                assert_eq!(a.tuples().unwrap(), b.tuples().unwrap());
            }
        }
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# a fixture\nstructure s\n\ndomain 2\nrelation r 1 # unary\n0\nend\n";
        let parsed = parse_structures(text, "t").unwrap();
        assert_eq!(parsed[0].relations[0].tuples().unwrap(), &[vec![0]]);
    }

    #[test]
    fn out_of_range_entry_is_reported_with_line() {
        let text = "structure s\ndomain 2\nrelation r 1\n2\nend\n";
        match parse_structures(text, "bad.txt") {
            Err(Error::Parse { file, line, message }) => {
                assert_eq!(file, "bad.txt");
                assert_eq!(line, 4);
                assert!(message.contains("out of range"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn operation_round_trip_and_missing_row() {
        let op = crate::op::bool_majority();
        let text = serialize_operation(&op);
        let back = parse_operations(&text, "t").unwrap().remove(0);
        assert_eq!(back.table, op.table);

        let truncated = "operation f 2 1\n0 1\nend\n";
        match parse_operations(truncated, "t") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("missing row for arguments [1]")),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn algebra_round_trip() {
        let sig = crate::algebra::AlgebraSignature::new(vec![2, 1]).unwrap();
        let a = Algebra::new(
            "a",
            &sig,
            vec![crate::op::bool_min(), FiniteOperation::new("n", 2, 1, vec![1, 0]).unwrap()],
        )
        .unwrap();
        let text = serialize_algebra(&a);
        let (psig, algebras) = parse_algebras(&text, "t").unwrap();
        assert_eq!(psig, sig);
        assert_eq!(algebras[0].fingerprint(), a.fingerprint());
    }

    #[test]
    fn cost_round_trip_with_inf() {
        let fs = templates::independent_set_template();
        let text: String = fs.iter().map(serialize_cost).collect();
        let back = parse_costs(&text, "t").unwrap();
        assert_eq!(back.len(), fs.len());
        assert_eq!(back[0].evaluate(&[1, 1]), CostValue::Infinity);
        assert_eq!(back[0].evaluate(&[0, 1]), CostValue::zero());
        // fractional value round-trips exactly
        let frac = CostFunction::from_entries(
            "w",
            2,
            1,
            vec![(vec![0], CostValue::Finite(templates::rational(3, 2)))],
        );
        let back = parse_costs(&serialize_cost(&frac), "t").unwrap().remove(0);
        assert_eq!(back.evaluate(&[0]), CostValue::Finite(templates::rational(3, 2)));
        assert_eq!(back.evaluate(&[1]), CostValue::Infinity);
    }

    #[test]
    fn hom_map_round_trip() {
        let h = Homomorphism::new(vec![2, 0, 1]);
        let text = serialize_hom_map(&h);
        assert_eq!(parse_hom_map(&text, "t").unwrap(), h);
    }

    #[test]
    fn lifted_serialization_has_slot_names() {
        let lifted = crate::lift::lift_language(
            &templates::k2(),
            &RelationalStructure::new(
                "e",
                2,
                vec![Relation::materialized("r", 2, vec![vec![0, 1]])],
            ),
        )
        .unwrap();
        let text = serialize_lifted(&lifted).unwrap();
        assert!(text.contains("# encoding d(v,a)=v*|D|+a"));
        assert!(text.contains("relation f_0@0,1 2"));
        assert!(text.contains("relation Dom@0 1"));
        // and it parses back as a structure
        let back = parse_structures(&text, "t").unwrap();
        assert_eq!(back[0].domain_size, 4);
    }
}
