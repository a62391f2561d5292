//! `pqham`: construct, inspect and certify vertex-transitive graphs of order `pq`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pqham::format::{
    aligned, certificate_text, csv, edge_csv, edge_list, graph_dot, quotient_dot, quotient_text,
    suborbit_rows, table_csv, table_text,
};
use pqham::spec::parse_spec;
use pqham::{resolve_budget, survey};
use pqham_core::dihedral::{DihedralModel, SuborbitName};
use pqham_core::engine::{
    instance, prove_instance, survey_descriptors, table_space, FamilyDescriptor, Instance, Options,
};
use pqham_core::field::PrimeField;
use pqham_core::omega::OmegaModel;
use pqham_core::perm::CosetSpace;
use pqham_core::quotient::{quotient, symbol, SemiregularAut};
use pqham_core::residue::{exceptional_table, quartic_exceptions, quartic_xi_witnesses};

#[derive(Parser)]
#[command(
    name = "pqham",
    version,
    about = "Hamilton cycles in vertex-transitive graphs of order pq"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Metacirculant,
    Fermat,
    Dihedral,
    Omega,
    #[value(name = "a7-triples")]
    A7Triples,
    #[value(name = "psl2-61-a5")]
    Psl261A5,
    #[value(name = "psl2-13-a4")]
    Psl213A4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Csv,
    Cert,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Prime for the dihedral family.
    #[arg(long)]
    p: Option<u64>,
    /// Prime for the omega family.
    #[arg(long)]
    q: Option<u64>,
    /// Dihedral suborbit union: S0+S1+, S0-S1-, S<xi>, S<xi>+ or S<xi>-.
    #[arg(long)]
    suborbit: Option<String>,
    /// Omega suborbit parameter.
    #[arg(long)]
    lambda: Option<u64>,
    /// Suborbit indices for the coset families, comma-separated.
    #[arg(long, value_delimiter = ',')]
    union: Vec<usize>,
    /// Spec file for metacirculant and Fermat graphs.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Admit the degree-1891 action.
    #[arg(long)]
    slow: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the graph as an edge list, DOT or CSV.
    Construct {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the suborbits of a coset family.
    Suborbits {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Frucht symbol and quotient multigraph relative to a semiregular automorphism.
    Quotient {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Which candidate automorphism to use.
        #[arg(long, default_value_t = 0)]
        rho: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify a Hamilton cycle.
    Hamilton {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Node expansions per search call.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "cert")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify every implemented instance up to an order bound.
    Survey {
        #[arg(long, default_value_t = 255)]
        max_order: usize,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        slow: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Include per-instance runtimes.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exceptional prime sequences with their bounds.
    Tables {
        #[arg(long, default_value_t = 131)]
        qm_cap: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Quartic exception sets with their witnesses.
    Quartic {
        /// Primes to examine; defaults to the filtered primes of the table.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 131)]
        qm_cap: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Exit 2 for invalid input, 1 when a proof fails.
enum Fail {
    Usage(String),
    Proof(String),
}

type Out = Result<String, Fail>;

fn usage(msg: impl ToString) -> Fail {
    Fail::Usage(msg.to_string())
}

fn formats(f: Format, allowed: &[Format]) -> Result<(), Fail> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|a| a.to_possible_value().unwrap().get_name().to_string())
            .collect();
        Err(usage(format!(
            "this subcommand supports --format {}",
            names.join("|")
        )))
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, fam: &str) -> Result<T, Fail> {
    v.ok_or_else(|| usage(format!("--family {fam} needs --{flag}")))
}

fn gate(fam: &FamilyArgs) -> Result<(), Fail> {
    if fam.family == Family::Psl261A5 && !fam.slow {
        return Err(usage("--family psl2-61-a5 needs --slow"));
    }
    Ok(())
}

fn read_spec(path: &Path) -> Result<FamilyDescriptor, Fail> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn descriptor(fam: &FamilyArgs) -> Result<FamilyDescriptor, Fail> {
    gate(fam)?;
    let union = || {
        if fam.union.is_empty() {
            Err(usage("coset families need --union"))
        } else {
            Ok(fam.union.clone())
        }
    };
    Ok(match fam.family {
        Family::Metacirculant | Family::Fermat => {
            let path = fam
                .spec
                .as_deref()
                .ok_or_else(|| usage("metacirculant and fermat graphs need --spec"))?;
            let d = read_spec(path)?;
            let want = if fam.family == Family::Fermat {
                "fermat"
            } else {
                "metacirculant"
            };
            if d.family() != want {
                return Err(usage(format!("spec file describes a {} graph", d.family())));
            }
            d
        }
        Family::Dihedral => {
            let p = need(fam.p, "p", "dihedral")?;
            let text = fam
                .suborbit
                .as_deref()
                .ok_or_else(|| usage("--family dihedral needs --suborbit"))?;
            let name = SuborbitName::parse(text, p).map_err(usage)?;
            FamilyDescriptor::DihedralCase { p, name }
        }
        Family::Omega => FamilyDescriptor::OmegaCase {
            q: need(fam.q, "q", "omega")?,
            lambda: need(fam.lambda, "lambda", "omega")?,
        },
        Family::A7Triples => FamilyDescriptor::TableRow3 { union: union()? },
        Family::Psl261A5 => FamilyDescriptor::TableRow4 { union: union()? },
        Family::Psl213A4 => FamilyDescriptor::TableRow7 { union: union()? },
    })
}

fn build(fam: &FamilyArgs) -> Result<(FamilyDescriptor, Instance), Fail> {
    let d = descriptor(fam)?;
    let inst = instance(&d).map_err(usage)?;
    Ok((d, inst))
}

fn construct(fam: &FamilyArgs, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Dot, Format::Csv])?;
    let (d, inst) = build(fam)?;
    Ok(match format {
        Format::Dot => graph_dot(&inst.graph, &d.to_string()),
        Format::Csv => edge_csv(&inst.graph),
        _ => edge_list(&inst.graph),
    })
}

fn coset_space(fam: &FamilyArgs) -> Result<(CosetSpace, Vec<String>), Fail> {
    gate(fam)?;
    let dash = |n: usize| vec![String::from("-"); n];
    match fam.family {
        Family::Dihedral => {
            let m = DihedralModel::new(need(fam.p, "p", "dihedral")?).map_err(usage)?;
            let names = m
                .names
                .iter()
                .map(|n| n.map_or(String::from("trivial"), |n| n.to_string()))
                .collect();
            Ok((m.space, names))
        }
        Family::Omega => {
            let m = OmegaModel::new(need(fam.q, "q", "omega")?).map_err(usage)?;
            let names = m
                .lambdas
                .iter()
                .map(|l| l.map_or(String::from("trivial"), |l| format!("lambda={l}")))
                .collect();
            Ok((m.space, names))
        }
        Family::A7Triples | Family::Psl261A5 | Family::Psl213A4 => {
            let row = match fam.family {
                Family::A7Triples => 3,
                Family::Psl261A5 => 4,
                _ => 7,
            };
            let sp = table_space(row).map_err(usage)?.space;
            let n = sp.suborbits.len();
            Ok((sp, dash(n)))
        }
        Family::Metacirculant | Family::Fermat => Err(usage("suborbits needs a coset family")),
    }
}

fn suborbits(fam: &FamilyArgs, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Csv])?;
    let (sp, names) = coset_space(fam)?;
    let rows = suborbit_rows(&sp, &names);
    let header = ["index", "length", "paired", "self_paired", "name"];
    Ok(match format {
        Format::Csv => csv(header, &rows),
        _ => format!("degree {}\n{}", sp.degree(), aligned(header, &rows)),
    })
}

fn quotient_cmd(fam: &FamilyArgs, rho: usize, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Dot])?;
    let (d, inst) = build(fam)?;
    let perm = inst
        .rhos
        .get(rho)
        .ok_or_else(|| usage(format!("only {} candidate automorphisms", inst.rhos.len())))?;
    let rho = SemiregularAut::new(&inst.graph, perm.clone()).map_err(usage)?;
    let sym = symbol(&inst.graph, &rho, None).map_err(usage)?;
    let quo = quotient(&inst.graph, &rho);
    Ok(match format {
        Format::Dot => quotient_dot(&sym, &quo, &d.to_string()),
        _ => quotient_text(&sym, &quo),
    })
}

fn hamilton(fam: &FamilyArgs, budget: Option<u64>, format: Format) -> Out {
    formats(format, &[Format::Cert, Format::Text])?;
    let budget = resolve_budget(budget).map_err(usage)?;
    let (d, inst) = build(fam)?;
    let cert = prove_instance(&d, &inst, &Options { budget })
        .map_err(|e| Fail::Proof(format!("{d}: {e}")))?;
    if !pqham_core::engine::verify(&inst.graph, &cert) {
        return Err(Fail::Proof(format!("{d}: certificate failed verification")));
    }
    Ok(certificate_text(&d, &cert))
}

struct SurveyArgs {
    max_order: usize,
    jobs: usize,
    slow: bool,
    budget: Option<u64>,
    timings: bool,
    format: Format,
}

/// The report, and whether every instance was settled.
fn survey_cmd(a: SurveyArgs) -> Result<(String, bool), Fail> {
    formats(a.format, &[Format::Text, Format::Csv])?;
    let budget = resolve_budget(a.budget).map_err(usage)?;
    let descs = survey_descriptors(a.max_order, a.slow).map_err(usage)?;
    let rows = survey::run(&descs, &Options { budget }, a.jobs).map_err(usage)?;
    let text = match a.format {
        Format::Csv => survey::report_csv(&rows, a.timings),
        _ => survey::report_text(&rows, a.timings),
    };
    Ok((text, rows.iter().all(survey::SurveyRow::settled)))
}

fn tables(qm_cap: u64, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Csv])?;
    let records = exceptional_table(qm_cap);
    Ok(match format {
        Format::Csv => table_csv(&records),
        _ => table_text(&records),
    })
}

fn set_text(xs: &[u64]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn quartic(primes: &[u64], qm_cap: u64, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Csv])?;
    let primes: Vec<u64> = if primes.is_empty() {
        let all: BTreeSet<u64> = exceptional_table(qm_cap)
            .into_iter()
            .flat_map(|r| r.quasi_primes)
            .collect();
        all.into_iter().collect()
    } else {
        primes.to_vec()
    };
    let mut rows = Vec::new();
    for p in primes {
        let f = PrimeField::new(p).map_err(usage)?;
        let ks = quartic_exceptions(&f);
        let mut witnesses = Vec::new();
        for &k in &ks {
            let plus = quartic_xi_witnesses(&f, k, 1);
            let minus = quartic_xi_witnesses(&f, k, -1);
            if !plus.is_empty() || !minus.is_empty() {
                witnesses.push(format!(
                    "k={k}:xi={}:xibar={}",
                    set_text(&plus),
                    set_text(&minus)
                ));
            }
        }
        rows.push([p.to_string(), set_text(&ks), witnesses.join(" ")]);
    }
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("p,exceptions,witnesses\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    r[0],
                    r[1].replace(',', " "),
                    r[2].replace(',', " ")
                );
            }
            out
        }
        _ => aligned(["p", "exceptions", "witnesses"], &rows),
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Fail> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Fail::Proof(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Construct {
            fam,
            format,
            output,
        } => emit(&construct(&fam, format)?, output.as_deref()),
        Command::Suborbits { fam, format } => emit(&suborbits(&fam, format)?, None),
        Command::Quotient { fam, rho, format } => emit(&quotient_cmd(&fam, rho, format)?, None),
        Command::Hamilton {
            fam,
            budget,
            format,
            output,
        } => emit(&hamilton(&fam, budget, format)?, output.as_deref()),
        Command::Survey {
            max_order,
            jobs,
            slow,
            budget,
            timings,
            format,
        } => {
            let (text, settled) = survey_cmd(SurveyArgs {
                max_order,
                jobs,
                slow,
                budget,
                timings,
                format,
            })?;
            emit(&text, None)?;
            if !settled {
                return Err(Fail::Proof(String::from("some instances were not settled")));
            }
            Ok(())
        }
        Command::Tables { qm_cap, format } => emit(&tables(qm_cap, format)?, None),
        Command::Quartic {
            primes,
            qm_cap,
            format,
        } => emit(&quartic(&primes, qm_cap, format)?, None),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Proof(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
