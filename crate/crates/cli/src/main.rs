//! `cak`: products, brackets, locality tables, reduction and the
//! verification suites from the command line.

use std::fmt::Display;
use std::process::ExitCode;

use cak_core::cend::{brace, bracket, locality, nproduct};
use cak_core::free::{composition_intersection, reduce, s2_rules, GeneratorOrder, RewriteRule, RuleSet};
use cak_core::grassmann::subset_label;
use cak_core::syntax::{parse_element, parse_polynomial, parse_rules, parse_symbol, parse_word, print_polynomial};
use cak_core::verify::{self, Report};
use cak_core::wk::{k_locality_table, locality_table, LocalityTable};
use cak_core::{CendElement, Embedding, EmbeddingKind, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cak", version, about = "Exact computations in conformal superalgebras of the k[D] (x) A_n[v] model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    Phi1,
    Phi2,
}

impl From<Map> for EmbeddingKind {
    fn from(m: Map) -> Self {
        match m {
            Map::Phi1 => EmbeddingKind::Phi1,
            Map::Phi2 => EmbeddingKind::Phi2,
        }
    }
}

#[derive(Args)]
struct Binary {
    /// Rank n of A_n
    #[arg(long, visible_alias = "n", default_value_t = 0)]
    rank: usize,
    /// Product index
    #[arg(short = 'n', default_value_t = 0)]
    index: u32,
    x: String,
    y: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    W,
    K,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteKind {
    W,
    K,
    Vir,
    Axioms,
    Closure,
}

#[derive(Args)]
struct RuleArgs {
    /// Rank n of W_n
    #[arg(long, visible_alias = "rank", default_value_t = 1)]
    n: usize,
    /// Rule file, one relation per line; defaults to the built-in N_2 rules
    #[arg(long)]
    rules: Option<std::path::PathBuf>,
    /// Generator order, smallest first, e.g. "del1,xi1,v"
    #[arg(long)]
    order: Option<String>,
    /// Locality bound N of the free algebra
    #[arg(long, default_value_t = 2)]
    bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// x o_n y
    Nprod(Binary),
    /// {x o_n y}
    Brace(Binary),
    /// [x _n y]
    Bracket(Binary),
    /// Locality of two elements, or the generator table of an embedding
    Locality {
        #[arg(long, visible_alias = "n", default_value_t = 0)]
        rank: usize,
        #[arg(long, value_enum)]
        map: Option<Map>,
        elements: Vec<String>,
    },
    /// Locality table over the W_n generators or the K_n generators g_I
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, visible_alias = "rank", default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "phi1")]
        map: Map,
    },
    /// Reduce a conformal polynomial modulo a rule set
    Reduce {
        #[command(flatten)]
        rules: RuleArgs,
        polynomial: String,
    },
    /// Rank of a list of elements, with a dependency when not independent
    Indep {
        #[arg(long, visible_alias = "n", default_value_t = 0)]
        rank: usize,
        elements: Vec<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: SuiteKind,
        #[arg(long, visible_alias = "rank", default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "phi2")]
        map: Map,
        #[arg(long, default_value_t = 2)]
        tmax: u32,
        #[arg(long, default_value_t = 4)]
        len: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Intersection composition of two relations over a word
    Compose {
        #[command(flatten)]
        rules: RuleArgs,
        f: String,
        g: String,
        word: String,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn element(text: &str, rank: usize) -> std::result::Result<CendElement, Failure> {
    parse_element(text, rank).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

fn binary(b: &Binary, op: fn(&CendElement, u32, &CendElement) -> cak_core::Result<CendElement>) -> Outcome {
    let x = element(&b.x, b.rank)?;
    let y = element(&b.y, b.rank)?;
    println!("{}", op(&x, b.index, &y)?);
    Ok(())
}

fn print_table<K: Ord + Clone>(table: &LocalityTable<K>, label: impl Fn(&K) -> String) {
    let labels: Vec<String> = table.labels.iter().map(&label).collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(1);
    print!("{:width$}", "");
    for l in &labels {
        print!(" {l:>width$}");
    }
    println!();
    for (a, la) in table.labels.iter().zip(&labels) {
        print!("{la:width$}");
        for b in &table.labels {
            let v = table.get(a, b).map_or("-".to_string(), |v| v.to_string());
            print!(" {v:>width$}");
        }
        println!();
    }
}

fn order(args: &RuleArgs) -> std::result::Result<GeneratorOrder, Failure> {
    let Some(text) = &args.order else {
        return Ok(GeneratorOrder::s2(args.n));
    };
    let mut list = Vec::new();
    for name in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let g = parse_symbol(name).ok_or_else(|| Failure::Usage(format!("unknown generator {name:?} in --order")))?;
        g.check_rank(args.n)?;
        list.push(g);
    }
    Ok(GeneratorOrder::from_list(list))
}

fn rule_set(args: &RuleArgs) -> std::result::Result<RuleSet, Failure> {
    let Some(path) = &args.rules else {
        if args.order.is_some() || args.bound != 2 {
            let built = s2_rules(args.n)?;
            let polys: Vec<_> = built.rules.into_iter().map(|r| r.polynomial).collect();
            return Ok(RuleSet::from_polynomials(&polys, order(args)?, args.bound)?);
        }
        return Ok(s2_rules(args.n)?);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let polys = parse_rules(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(RuleSet::from_polynomials(&polys, order(args)?, args.bound)?)
}

fn print_report(r: &Report, json: bool) -> Outcome {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("reports serialize"));
    } else {
        let map = r.map.as_deref().map_or(String::new(), |m| format!(" map={m}"));
        println!("suite {} n={}{map}", r.suite, r.n);
        for c in &r.checks {
            let tag = match c.status {
                verify::Status::Pass => "PASS",
                verify::Status::Fail => "FAIL",
                verify::Status::Skip => "SKIP",
            };
            println!("{tag} {}: {}", c.name, c.detail);
        }
        println!("{}", if r.passed { "passed" } else { "failed" });
    }
    if r.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn show<T: Display>(label: &str, x: T) {
    println!("{label}: {x}");
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Nprod(b) => binary(&b, nproduct),
        Command::Brace(b) => binary(&b, brace),
        Command::Bracket(b) => binary(&b, bracket),
        Command::Locality { rank, map, elements } => match (map, elements.len()) {
            (Some(map), 0) => {
                let table = locality_table(Embedding::new(map.into(), rank))?;
                print_table(&table, |g| g.to_string());
                Ok(())
            }
            (None, 2) => {
                let x = element(&elements[0], rank)?;
                let y = element(&elements[1], rank)?;
                println!("{}", locality(&x, &y)?);
                Ok(())
            }
            _ => Err(Failure::Usage("give either --map for a table or two elements".into())),
        },
        Command::Table { kind, n, map } => {
            let e = Embedding::new(map.into(), n);
            match kind {
                TableKind::W => print_table(&locality_table(e)?, |g| g.to_string()),
                TableKind::K => {
                    if n == 0 {
                        return Err(Failure::Usage("K_n needs n >= 1".into()));
                    }
                    print_table(&k_locality_table(e)?, |s| format!("g{}", subset_label(*s)))
                }
            }
            Ok(())
        }
        Command::Reduce { rules, polynomial } => {
            let set = rule_set(&rules)?;
            let p = parse_polynomial(&polynomial)?;
            for w in p.terms().keys() {
                w.check_bound(set.bound)?;
            }
            println!("{}", print_polynomial(&reduce(&p, &set)?));
            Ok(())
        }
        Command::Indep { rank, elements } => {
            let xs: Vec<CendElement> = elements.iter().map(|t| element(t, rank)).collect::<std::result::Result<_, _>>()?;
            let ind = verify::independence(&xs)?;
            show("rank", format!("{}/{}", ind.rank, xs.len()));
            if let Some(w) = ind.witness {
                let parts: Vec<String> = w.iter().map(cak_core::scalar::render).collect();
                show("dependency", parts.join(" "));
            }
            Ok(())
        }
        Command::Verify {
            suite,
            n,
            map,
            tmax,
            len,
            samples,
            seed,
            json,
        } => {
            let report = match suite {
                SuiteKind::W => verify::verify_w_suite(n, map.into(), tmax, len),
                SuiteKind::K => verify::verify_k_suite(n),
                SuiteKind::Vir => verify::virasoro_suite(tmax, len.saturating_sub(1) as u32),
                SuiteKind::Axioms => verify::axiom_suite(samples, samples.div_ceil(4), seed),
                SuiteKind::Closure => verify::closure_check(n, map.into(), &s2_rules(n)?, samples, seed),
            };
            print_report(&report, json)
        }
        Command::Compose { rules, f, g, word } => {
            let set = rule_set(&rules)?;
            let f = RewriteRule::new(&parse_polynomial(&f)?, &set.order)?;
            let g = RewriteRule::new(&parse_polynomial(&g)?, &set.order)?;
            let w = parse_word(&word)?;
            let c = composition_intersection(&f, &g, &w, &set)?;
            show("composition", print_polynomial(&c));
            show("reduced", print_polynomial(&reduce(&c, &set)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
