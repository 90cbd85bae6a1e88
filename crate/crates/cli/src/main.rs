//! csplift: a workbench for homomorphism problems over fixed templates,
//! lifted constraint languages, and their algebraic reductions.

mod report;

use clap::{Parser, Subcommand};
use csplift_core::algebra::{build_gamma_b, is_extending, is_tractable_set, AlgebraSet};
use csplift_core::audit;
use csplift_core::clone::BooleanOracle;
use csplift_core::conservative::{
    bipartite_example_check, build_gamma_prime_c, find_kz_multimorphisms,
};
use csplift_core::error::Error;
use csplift_core::gamma_prime::{build_gamma_prime, constant_pair_embedding};
use csplift_core::io as fio;
use csplift_core::lift::{lift_language, lift_language_valued};
use csplift_core::pipeline::reduction_pipeline;
use csplift_core::rng::SplitMix64;
use csplift_core::solver::{find_homomorphism, SearchOptions};
use csplift_core::structure::RelationalStructure;
use csplift_core::transport::observed_identity_report;
use csplift_core::valued::CostFunction;
use report::{Format, Report, ResultRecord};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "csplift", version, about = "Finite-model CSP workbench: solve, lift, reduce, audit")]
struct Cli {
    /// Seed for every randomized step; echoed in reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a homomorphism from an input structure into a template.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        template: PathBuf,
    },
    /// Build the lifted language of a template over an input structure.
    Lift {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Write the lifted language here instead of summarizing.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the Siggers-pair structure of a Boolean template and sample it.
    GammaPrime {
        #[arg(long)]
        template: PathBuf,
        /// Random membership samples per relation.
        #[arg(long, default_value_t = 200)]
        samples: u32,
        /// Write the constant-pair embedding as `map` lines.
        #[arg(long)]
        emit_embedding: Option<PathBuf>,
    },
    /// Build the algebra-indexed structure of a template over an algebra set.
    GammaB {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        algebras: PathBuf,
        /// Also report observed identities among outside applications.
        #[arg(long)]
        identities: bool,
    },
    /// Run the reduction pipeline and write its certificate trail.
    Reduce {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        algebras: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificates: PathBuf,
    },
    /// Conservative valued template tools.
    Conservative {
        #[arg(long)]
        template: PathBuf,
        /// Search for a symmetric-tournament/MJN multimorphism certificate.
        #[arg(long)]
        find_multimorphisms: bool,
        /// Build the crisp multimorphism structure and report its size.
        #[arg(long)]
        gamma_prime_c: bool,
        /// Check an input graph against it and against direct bipartiteness.
        #[arg(long)]
        check_bipartite: Option<PathBuf>,
    },
    /// Run the randomized theorem audits.
    Audit {
        /// Cases per audit.
        #[arg(long, default_value_t = 100)]
        cases: u32,
    },
    /// Run the worked-example fixtures end to end.
    Examples,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(violations) => std::process::exit(if violations { 1 } else { 0 }),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })
}

fn read_structure(path: &Path) -> Result<RelationalStructure, Error> {
    let text = read(path)?;
    let mut all = fio::parse_structures(&text, &path.display().to_string())?;
    if all.len() != 1 {
        return Err(Error::Parse {
            file: path.display().to_string(),
            line: 0,
            message: format!("expected exactly one structure block, found {}", all.len()),
        });
    }
    Ok(all.remove(0))
}

fn read_costs(path: &Path) -> Result<Vec<CostFunction>, Error> {
    let text = read(path)?;
    fio::parse_costs(&text, &path.display().to_string())
}

/// Crisp or valued template, detected by the first keyword.
enum Template {
    Crisp(RelationalStructure),
    Valued(Vec<CostFunction>),
}

fn read_template(path: &Path) -> Result<Template, Error> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("cost") {
        Ok(Template::Valued(fio::parse_costs(&text, &path.display().to_string())?))
    } else {
        let mut all = fio::parse_structures(&text, &path.display().to_string())?;
        if all.len() != 1 {
            return Err(Error::Parse {
                file: path.display().to_string(),
                line: 0,
                message: "expected exactly one structure block".into(),
            });
        }
        Ok(Template::Crisp(all.remove(0)))
    }
}

fn read_algebras(path: &Path, domain: usize) -> Result<AlgebraSet, Error> {
    let text = read(path)?;
    let (signature, algebras) = fio::parse_algebras(&text, &path.display().to_string())?;
    AlgebraSet::new(signature, domain, algebras)
}

fn write_file(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<bool, Error> {
    let node_limit = SearchOptions::default().node_limit;
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Solve { input, template } => {
            let mut report = Report::new(
                "solve",
                seed,
                vec![input.display().to_string(), template.display().to_string()],
                node_limit,
            );
            let r = read_structure(input)?;
            let t = read_structure(template)?;
            let start = Instant::now();
            let hom = find_homomorphism(&r, &t)?;
            let mut rec = ResultRecord::named("homomorphism");
            rec.verdict = Some(hom.is_some());
            rec.witness = hom.map(|h| h.map);
            rec.millis = Some(start.elapsed().as_millis());
            report.push(rec);
            report
        }
        Command::Lift { template, input, output } => {
            let mut report = Report::new(
                "lift",
                seed,
                vec![template.display().to_string(), input.display().to_string()],
                node_limit,
            );
            let r = read_structure(input)?;
            let lifted = match read_template(template)? {
                Template::Crisp(gamma) => lift_language(&gamma, &r)?,
                Template::Valued(costs) => lift_language_valued(&costs, &r)?,
            };
            let text = fio::serialize_lifted(&lifted)?;
            let mut rec = ResultRecord::named("lifted-language");
            rec.count = Some(lifted.slots.len() as u64);
            rec.text = Some(format!("domain {}", lifted.domain_size()));
            report.push(rec);
            match output {
                Some(path) => write_file(path, &text)?,
                None => {
                    let mut rec = ResultRecord::named("serialized");
                    rec.text = Some(text);
                    report.push(rec);
                }
            }
            report
        }
        Command::GammaPrime { template, samples, emit_embedding } => {
            let mut report = Report::new(
                "gamma-prime",
                seed,
                vec![template.display().to_string()],
                node_limit,
            );
            let gamma = read_structure(template)?;
            let gp = build_gamma_prime(&gamma)?;
            let mut rec = ResultRecord::named("domain");
            rec.count = Some(gp.structure.domain_size as u64);
            report.push(rec);
            let mut rng = SplitMix64::new(seed);
            for rel in &gp.structure.relations {
                let mut hits = 0u64;
                for _ in 0..*samples {
                    let t: Vec<u32> = (0..rel.arity)
                        .map(|_| rng.below(gp.structure.domain_size as u64) as u32)
                        .collect();
                    if rel.contains(&t) {
                        hits += 1;
                    }
                }
                let mut rec = ResultRecord::named(format!("sampled-membership {}", rel.name));
                rec.count = Some(hits);
                rec.text = Some(format!("of {samples} samples"));
                report.push(rec);
            }
            if let Some(path) = emit_embedding {
                let h = constant_pair_embedding(&gp)?;
                write_file(path, &fio::serialize_hom_map(&h))?;
                let mut rec = ResultRecord::named("embedding");
                rec.verdict = Some(true);
                rec.text = Some(format!("written to {}", path.display()));
                report.push(rec);
            }
            report
        }
        Command::GammaB { template, algebras, identities } => {
            let mut report = Report::new(
                "gamma-b",
                seed,
                vec![template.display().to_string(), algebras.display().to_string()],
                node_limit,
            );
            let gamma = read_structure(template)?;
            let set = read_algebras(algebras, gamma.domain_size)?;
            let gb = build_gamma_b(&gamma, &set)?;
            let mut rec = ResultRecord::named("domain");
            rec.count = Some(gb.domain_size as u64);
            report.push(rec);
            for rel in &gb.relations {
                let mut rec = ResultRecord::named(format!("relation {}", rel.name));
                if let Ok(tuples) = rel.tuples() {
                    rec.count = Some(tuples.len() as u64);
                } else {
                    rec.text = Some("lazy".into());
                }
                report.push(rec);
            }
            let mut rec = ResultRecord::named("extending");
            rec.verdict = Some(is_extending(&set));
            report.push(rec);
            let verdict = is_tractable_set(&set, &BooleanOracle);
            let mut rec = ResultRecord::named("tractability");
            rec.text = Some(format!("{:?} via {}", verdict.verdict, verdict.oracle));
            report.push(rec);
            if *identities {
                for line in observed_identity_report(&set, 2)? {
                    let mut rec = ResultRecord::named("observed-identity");
                    rec.text = Some(line);
                    report.push(rec);
                }
            }
            report
        }
        Command::Reduce { template, algebras, input, certificates } => {
            let mut report = Report::new(
                "reduce",
                seed,
                vec![
                    template.display().to_string(),
                    algebras.display().to_string(),
                    input.display().to_string(),
                ],
                node_limit,
            );
            let gamma = read_structure(template)?;
            let set = read_algebras(algebras, gamma.domain_size)?;
            let r = read_structure(input)?;
            let start = Instant::now();
            let out = reduction_pipeline(&gamma, &set, &r, &BooleanOracle)?;
            let mut cert = String::new();
            cert.push_str(&format!("# reduction certificates for {}\n", r.name));
            cert.push_str(&format!("verdict {}\n", if out.member { "member" } else { "not-member" }));
            cert.push_str(&format!("tractability {:?}\n", out.tractability.verdict));
            if let Some(h) = &out.step1 {
                cert.push_str("step1\n");
                cert.push_str(&fio::serialize_hom_map(h));
            }
            if let Some(instance) = &out.instance {
                cert.push_str(&format!("instance constraints {}\n", instance.constraints.len()));
            }
            if let Some(a) = &out.assignment {
                cert.push_str("assignment\n");
                for (v, x) in a.iter().enumerate() {
                    cert.push_str(&format!("map {v} {x}\n"));
                }
            }
            write_file(certificates, &cert)?;
            let mut rec = ResultRecord::named("verdict");
            rec.verdict = Some(out.member);
            rec.millis = Some(start.elapsed().as_millis());
            report.push(rec);
            let mut rec = ResultRecord::named("direct-cross-check");
            rec.verdict = Some(out.direct == out.member);
            report.push(rec);
            report
        }
        Command::Conservative { template, find_multimorphisms, gamma_prime_c, check_bipartite } => {
            let mut report = Report::new(
                "conservative",
                seed,
                vec![template.display().to_string()],
                node_limit,
            );
            let costs = read_costs(template)?;
            if *find_multimorphisms {
                let witness = find_kz_multimorphisms(&costs)?;
                let mut rec = ResultRecord::named("stp-mjn-certificate");
                rec.verdict = Some(witness.is_some());
                if let Some(w) = witness {
                    rec.text = Some(format!(
                        "M={:?} join={:?} meet={:?}",
                        w.m_pairs, w.join.table, w.meet.table
                    ));
                }
                report.push(rec);
            }
            if *gamma_prime_c || check_bipartite.is_some() {
                let gpc = build_gamma_prime_c(&costs)?;
                if *gamma_prime_c {
                    let mut rec = ResultRecord::named("gamma-prime-c-domain");
                    rec.count = Some(gpc.structure.domain_size as u64);
                    report.push(rec);
                }
                if let Some(path) = check_bipartite {
                    let r = read_structure(path)?;
                    let out = bipartite_example_check(&r, &gpc)?;
                    let mut rec = ResultRecord::named("hom-into-gamma-prime-c");
                    rec.verdict = Some(out.hom_into_gamma_prime_c);
                    report.push(rec);
                    let mut rec = ResultRecord::named("bipartite");
                    rec.verdict = Some(out.bipartite);
                    report.push(rec);
                    let mut rec = ResultRecord::named("agreement");
                    rec.verdict = Some(out.agree);
                    report.push(rec);
                    if !out.agree {
                        report.violation("bipartite-example", format!("disagreement on {}", r.name));
                    }
                }
            }
            report
        }
        Command::Audit { cases } => {
            let mut report = Report::new("audit", seed, Vec::new(), node_limit);
            let start = Instant::now();
            let outcomes = audit::run_randomized_audits(seed, *cases)?;
            for outcome in &outcomes {
                let mut rec = ResultRecord::named(outcome.name.clone());
                rec.verdict = Some(outcome.passed());
                rec.count = Some(outcome.cases as u64);
                if !outcome.detail.is_empty() {
                    rec.text = Some(outcome.detail.clone());
                }
                report.push(rec);
                for v in &outcome.violations {
                    report.violation(outcome.name.clone(), v.clone());
                }
            }
            let mut rec = ResultRecord::named("total");
            rec.count = Some(outcomes.len() as u64);
            rec.millis = Some(start.elapsed().as_millis());
            report.push(rec);
            report
        }
        Command::Examples => {
            let mut report = Report::new("examples", seed, Vec::new(), node_limit);
            for outcome in audit::run_example_fixtures()? {
                let mut rec = ResultRecord::named(outcome.name.clone());
                rec.verdict = Some(outcome.passed());
                rec.count = Some(outcome.cases as u64);
                if !outcome.detail.is_empty() {
                    rec.text = Some(outcome.detail.clone());
                }
                report.push(rec);
                for v in &outcome.violations {
                    report.violation(outcome.name.clone(), v.clone());
                }
            }
            report
        }
    };
    print!("{}", report.emit(cli.format));
    Ok(!report.violations.is_empty())
}
