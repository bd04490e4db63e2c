use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permbase::documents::{CertificateDocument, GroupFile, ProductSpecDocument, TreeDocument};
use permbase::{catalog, oracles, partitions, product, Coloring, PermGroup, StructureTree};

#[derive(Parser)]
#[command(
    name = "permbase",
    version,
    about = "2-partition certificates and product-action bases"
)]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure tree of a transitive group.
    Tree { group: String },
    /// Build and verify a 2-partition certificate.
    Synth {
        group: String,
        /// Also check the certificate by enumerating the group.
        #[arg(long)]
        verify_exhaustive: bool,
        /// Write the certificate document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate against a group.
    Verify { group: String, certificate: PathBuf },
    /// Find a distinguishing partition.
    Distinguish {
        group: String,
        #[arg(long, default_value_t = 4)]
        max_parts: usize,
    },
    /// Build a base of a wreath product in product action.
    Base {
        spec: PathBuf,
        /// Also check the base on the explicit action.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Base size against the counting lower bound, one row per group.
    Report {
        #[arg(required = true)]
        groups: Vec<String>,
    },
    /// Demonstration constructions.
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Subcommand)]
enum Demo {
    /// Base of T^2 wr P through the diagonal action.
    Twisted {
        #[arg(long)]
        t: String,
        #[arg(long)]
        p: String,
    },
}

/// Input problems exit with 2, failed verification with 1.
enum Failure {
    Input(anyhow::Error),
    Verification(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_group(arg: &str) -> anyhow::Result<(String, PermGroup)> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let g = catalog::parse(name)?;
        return Ok((name.to_string(), g));
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading group file {arg}"))?;
    let file = GroupFile::from_json(&text)?;
    let g = file.to_group()?;
    Ok((file.name.unwrap_or_else(|| arg.to_string()), g))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Outcome {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Tree { group } => {
            let (name, g) = load_group(group)?;
            let tree = StructureTree::build(&g)?;
            let doc = TreeDocument::new(&tree)?;
            if structured {
                println!("{}", doc.to_json());
            } else {
                println!("{name}: degree {}, depth {}", doc.degree, doc.arities.len());
                println!("arities {:?}", doc.arities);
                println!("sizes {:?}", doc.sizes);
                for l in &doc.large_levels {
                    println!(
                        "large level {}: m = {}, a = {}, t = {}, classes {:?}",
                        l.level, l.m, l.a, l.t, l.classes
                    );
                }
            }
            Ok(())
        }
        Command::Synth {
            group,
            verify_exhaustive,
            out,
        } => {
            let (name, g) = load_group(group)?;
            let mut cert = partitions::synthesize(&g, cli.seed)?;
            cert.name = Some(name.clone());
            let exhaustive = if *verify_exhaustive {
                let cs: Vec<Coloring> = cert.partitions.iter().map(|p| p.to_coloring()).collect();
                match oracles::stabilizer_is_trivial_by_enumeration(
                    &g,
                    &cs,
                    oracles::ENUMERATION_LIMIT,
                ) {
                    Ok(v) => Some(v),
                    Err(permbase::Error::LimitExceeded(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let doc = CertificateDocument::new(&cert, &g);
            if let Some(path) = out {
                fs::write(path, doc.to_json() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if structured {
                println!("{}", doc.to_json());
            } else {
                println!(
                    "{name}: {} partitions, verified {}, bound ratio {:.4}, seed {}",
                    cert.count(),
                    cert.verified,
                    cert.bound_ratio(),
                    cert.seed
                );
                if *verify_exhaustive {
                    match exhaustive {
                        Some(v) => println!("exhaustive check: {v}"),
                        None => println!("exhaustive check skipped: group too large"),
                    }
                }
                if out.is_none() {
                    for (p, tag) in cert.partitions.iter().zip(&cert.provenance) {
                        let pts: Vec<usize> = p.part0().iter().map(|x| x + 1).collect();
                        println!("  {tag}: {pts:?}");
                    }
                }
            }
            if !cert.verified || exhaustive == Some(false) {
                return Err(Failure::Verification(
                    "joint stabilizer is not trivial".into(),
                ));
            }
            Ok(())
        }
        Command::Verify { group, certificate } => {
            let (_, g) = load_group(group)?;
            let text = fs::read_to_string(certificate)
                .with_context(|| format!("reading certificate {}", certificate.display()))?;
            let cert = CertificateDocument::from_json(&text)?.to_certificate()?;
            if cert.degree != g.degree() {
                return Err(anyhow!(
                    "certificate has degree {}, group has {}",
                    cert.degree,
                    g.degree()
                )
                .into());
            }
            let order_ok = cert.order == g.order();
            let trivial = cert.check(&g)?;
            if structured {
                print_json(
                    &json!({"trivial": trivial, "order_matches": order_ok, "count": cert.count()}),
                );
            } else {
                println!("joint stabilizer trivial: {trivial}");
                println!("recorded order matches: {order_ok}");
            }
            if !trivial {
                return Err(Failure::Verification(
                    "joint stabilizer is not trivial".into(),
                ));
            }
            if !order_ok {
                return Err(Failure::Verification("recorded group order differs".into()));
            }
            Ok(())
        }
        Command::Distinguish { group, max_parts } => {
            let (name, g) = load_group(group)?;
            let found = partitions::distinguishing_partition(&g, *max_parts, cli.seed)?;
            let number = if g.degree() <= partitions::EXACT_DEGREE_LIMIT {
                Some(partitions::distinguishing_number(&g)?)
            } else {
                None
            };
            let parts = found.as_ref().map(|c| {
                c.parts()
                    .into_iter()
                    .map(|p| p.into_iter().map(|x| x + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            });
            if structured {
                print_json(
                    &json!({"name": name, "max_parts": max_parts, "partition": parts,
                                   "distinguishing_number": number, "seed": cli.seed}),
                );
            } else {
                match &parts {
                    Some(p) => println!("{name}: distinguishing partition {p:?}"),
                    None => println!("{name}: none with at most {max_parts} parts"),
                }
                if let Some(d) = number {
                    println!("distinguishing number {d}");
                }
            }
            Ok(())
        }
        Command::Base { spec, bruteforce } => {
            let text = fs::read_to_string(spec)
                .with_context(|| format!("reading spec {}", spec.display()))?;
            let doc = ProductSpecDocument::from_json(&text)?;
            let spec = doc.to_spec()?;
            spec.check_twist_compatibility()?;
            let h_base = match doc.h_base()? {
                Some(b) => b,
                None => oracles::minimal_base(spec.h(), oracles::BASE_SEARCH_BUDGET)?,
            };
            let cert = partitions::synthesize(spec.p(), cli.seed)?;
            let points = if spec.twist().is_some() {
                product::base_twisted(&spec, &h_base, &cert)?
            } else {
                product::base_almost_simple(&spec, &h_base, &cert)?
            };
            let composed = product::verify_base_composed(&spec, &points, &h_base, &cert);
            let explicit = if *bruteforce {
                Some(product::verify_base_bruteforce(&spec, &points)?)
            } else {
                None
            };
            let rows: Vec<Vec<usize>> = points
                .iter()
                .map(|x| x.coords().iter().map(|c| c + 1).collect())
                .collect();
            if structured {
                print_json(
                    &json!({"points": rows, "size": rows.len(), "composed": composed,
                                   "bruteforce": explicit, "seed": cli.seed}),
                );
            } else {
                println!("base of size {}", rows.len());
                for r in &rows {
                    println!("  {r:?}");
                }
                println!("composed verification: {composed}");
                if let Some(v) = explicit {
                    println!("explicit verification: {v}");
                }
            }
            if !composed || explicit == Some(false) {
                return Err(Failure::Verification("points are not a base".into()));
            }
            Ok(())
        }
        Command::Report { groups } => {
            let mut rows = Vec::new();
            for arg in groups {
                let (name, g) = load_group(arg)?;
                rows.push((
                    name,
                    oracles::base_size_report(&g, oracles::BASE_SEARCH_BUDGET)?,
                ));
            }
            if structured {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(name, r)| {
                        json!({"name": name, "n": r.degree, "order": r.order.to_string(),
                               "log2_order": r.log2_order, "b": r.base_size,
                               "lower": r.lower_bound, "ratio": r.ratio})
                    })
                    .collect();
                print_json(&v);
            } else {
                println!("name\tn\tlog2|G|\tb\tlower\tratio");
                for (name, r) in &rows {
                    println!(
                        "{name}\t{}\t{:.4}\t{}\t{:.4}\t{:.4}",
                        r.degree, r.log2_order, r.base_size, r.lower_bound, r.ratio
                    );
                }
            }
            Ok(())
        }
        Command::Demo(Demo::Twisted { t, p }) => {
            let (_, tg) = load_group(t)?;
            let (_, pg) = load_group(p)?;
            let c = catalog::measured_constant(cli.seed)?;
            let r = product::twisted_wreath_demo(&tg, &pg, c, cli.seed)?;
            if structured {
                print_json(
                    &json!({"k": r.k, "t_order": r.t_order, "p_order": r.p_order.to_string(),
                                   "h_base": r.h_base.iter().map(|x| x + 1).collect::<Vec<_>>(),
                                   "partitions": r.certificate.count(), "base_size": r.base.len(),
                                   "verified": r.verified, "log2_order": r.log2_g, "constant": r.constant,
                                   "bound": r.bound, "bound_true_degree": r.bound_true_degree}),
                );
            } else {
                println!(
                    "|T| = {}, k = {}, |P| = {}, H-base size {}, {} partitions",
                    r.t_order,
                    r.k,
                    r.p_order,
                    r.h_base.len(),
                    r.certificate.count()
                );
                println!(
                    "base size {}, composed verification {}",
                    r.base.len(),
                    r.verified
                );
                println!(
                    "bound 2c log|G| / log|T|^(2k) = {:.4} (c = {:.4}); with degree |T|^k: {:.4}",
                    r.bound, r.constant, r.bound_true_degree
                );
            }
            if !r.verified {
                return Err(Failure::Verification("composed verification failed".into()));
            }
            Ok(())
        }
    }
}
