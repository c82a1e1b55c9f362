//! Command-line surface over the core library: ordinal arithmetic, the
//! collapsed term order, tree embeddability, quasi-order combinators, the
//! finite Ramsey constructions, and the property-suite runner.
//!
//! Exit codes: 0 success, 1 domain error or failed suite, 2 parse error,
//! 3 exhausted work budget.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};

use wqo_core::cnf::{omega_tower, OrdinalCnf};
use wqo_core::qo::{good_pair, kb_linearize, longest_bad, BadSeqTree, FiniteQO, FoldMode};
use wqo_core::ramsey::{
    colour_bad_product_seq, homogeneous_subset, pigeonhole_extract, pigeonhole_order,
};
use wqo_core::theta::{compare_g, parse_gterm, render, validate, BaseOrder};
use wqo_core::tree::{embeds, enumerate_trees, parse_tree, Whistle};
use wqo_core::wop::{approx_index, gamma_plus, gamma_times};
use wqo_core::{suites, Error};

#[derive(Parser)]
#[command(
    name = "wqo",
    version,
    about = "Ordinal notations, Kruskal tree embeddability, and well-quasi-order tooling"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cantor normal form arithmetic on ordinals below epsilon_0
    #[command(subcommand)]
    Ord(OrdOp),
    /// The relativized collapsed term order over a finite base order
    #[command(subcommand)]
    G(GOp),
    /// Labelled trees, branching degree, and embeddability
    #[command(subcommand)]
    Tree(TreeOp),
    /// Finite quasi-orders: combinators, bad sequences, linearization
    #[command(subcommand)]
    Qo(QoOp),
    /// Colourings, homogeneous sets, and pigeonhole constructions
    #[command(subcommand)]
    Ramsey(RamseyOp),
    /// Ordinal function evaluators
    #[command(subcommand)]
    Wop(WopOp),
    /// Property suites with machine-readable reports
    #[command(subcommand)]
    Suite(SuiteOp),
}

#[derive(Subcommand)]
enum OrdOp {
    /// Compare two ordinals
    Cmp { a: String, b: String },
    /// Ordinal sum a + b
    Add { a: String, b: String },
    /// Ordinal product a * b
    Mul { a: String, b: String },
    /// Natural (Hessenberg) sum
    Nsum { a: String, b: String },
    /// Natural (Hessenberg) product
    Nprod { a: String, b: String },
    /// Finite power a^n
    Pow { a: String, n: u32 },
    /// The omega tower of height n
    Tower { n: u32 },
}

#[derive(Subcommand)]
enum GOp {
    /// Compare two well-formed terms
    Cmp {
        a: String,
        b: String,
        /// Base order carrier, ascending, comma-separated
        #[arg(long)]
        base: String,
    },
    /// Check the formation rules, reporting the first violation
    Wf {
        term: String,
        #[arg(long)]
        base: String,
    },
    /// List all well-formed terms up to a size bound, ascending
    Enum {
        #[arg(long)]
        base: String,
        #[arg(long)]
        max_size: usize,
        /// Cap on generated terms
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand)]
enum TreeOp {
    /// Branching degree
    Deg { tree: String },
    /// Does the first tree embed into the second?
    Embed {
        t: String,
        s: String,
        /// Label quasi-order (JSON file)
        #[arg(long)]
        qo: PathBuf,
    },
    /// List trees up to a node bound
    Enum {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long)]
        max_nodes: usize,
        /// Branching degree bound (unbounded when omitted)
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Feed trees in order and report the first good pair
    Whistle {
        trees: Vec<String>,
        #[arg(long)]
        qo: PathBuf,
    },
}

#[derive(Subcommand)]
enum QoOp {
    /// Componentwise product of two quasi-orders
    Product { a: PathBuf, b: PathBuf },
    /// Ordered sum (left part below right part)
    Sum { a: PathBuf, b: PathBuf },
    /// Disjoint union (cross pairs incomparable)
    Dunion { a: PathBuf, b: PathBuf },
    /// n copies under the plus, times, or dunion relation
    Nfold {
        q: PathBuf,
        n: usize,
        #[arg(long)]
        mode: String,
    },
    /// Least good pair of a sequence of carrier elements
    Goodpair {
        q: PathBuf,
        /// Whitespace-separated element names
        seq: String,
    },
    /// Longest bad sequence with a witness
    Badmax {
        q: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Kleene-Brouwer linearization of the bad-sequence tree
    Kb {
        q: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand)]
enum RamseyOp {
    /// Colour a bad product sequence by first failing component
    Colour {
        q: PathBuf,
        /// Components per tuple
        #[arg(long)]
        n: usize,
        /// Tuples like "a,b;b,a" (components by comma, tuples by semicolon)
        #[arg(long)]
        seq: String,
    },
    /// Search a homogeneous index subset of the given size
    Homog {
        q: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        size: usize,
    },
    /// Most frequent colour with its positions
    Pigeon {
        /// Comma-separated colours (may be empty)
        seq: String,
        #[arg(long)]
        bound: usize,
    },
    /// Strict total order and bad witness sequence from a bounded prefix
    Order {
        /// Comma-separated values below the bound (may be empty)
        prefix: String,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum WopOp {
    /// a * omega
    Gplus { a: String },
    /// a ^ omega
    Gtimes { a: String },
    /// Least n with b < a^n (requires a >= 2 and b < a^omega)
    Approx { b: String, a: String },
}

#[derive(Subcommand)]
enum SuiteOp {
    /// Run one suite or all of them, reporting JSON on stdout
    Run {
        #[arg(long)]
        suite: Option<String>,
        /// Work-unit budget per suite
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() {
    // Die quietly when stdout is a closed pipe (e.g. `wqo g enum | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) => 2,
                Error::Domain(_) => 1,
                Error::Budget(_) => 3,
            };
            std::process::exit(code);
        }
    }
}

fn ord(s: &str) -> Result<OrdinalCnf, Error> {
    OrdinalCnf::from_str(s)
}

fn base_order(spec: &str) -> Result<BaseOrder, Error> {
    BaseOrder::new(spec.split(',').map(str::to_string).collect())
}

fn load_qo(path: &Path) -> Result<FiniteQO, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    FiniteQO::from_json(&text)
}

fn elements<'a>(q: &FiniteQO, names: impl Iterator<Item = &'a str>) -> Result<Vec<usize>, Error> {
    names
        .map(|name| {
            q.index_of(name)
                .ok_or_else(|| Error::domain(format!("unknown element {name:?}")))
        })
        .collect()
}

fn int_list(spec: &str) -> Result<Vec<usize>, Error> {
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(format!("bad integer {tok:?}: {e}")))
        })
        .collect()
}

fn tuples(q: &FiniteQO, spec: &str) -> Result<Vec<Vec<usize>>, Error> {
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    spec.split(';').map(|t| elements(q, t.split(','))).collect()
}

fn seq_names(q: &FiniteQO, seq: &[usize]) -> String {
    seq.iter().map(|&e| q.name(e)).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Ord(op) => {
            match op {
                OrdOp::Cmp { a, b } => println!("{:?}", ord(&a)?.cmp(&ord(&b)?)),
                OrdOp::Add { a, b } => println!("{}", ord(&a)?.add(&ord(&b)?)),
                OrdOp::Mul { a, b } => println!("{}", ord(&a)?.mul(&ord(&b)?)),
                OrdOp::Nsum { a, b } => println!("{}", ord(&a)?.nat_sum(&ord(&b)?)),
                OrdOp::Nprod { a, b } => println!("{}", ord(&a)?.nat_prod(&ord(&b)?)),
                OrdOp::Pow { a, n } => println!("{}", ord(&a)?.pow_n(n)),
                OrdOp::Tower { n } => println!("{}", omega_tower(n)?),
            }
            Ok(0)
        }
        Cmd::G(op) => match op {
            GOp::Cmp { a, b, base } => {
                let x = base_order(&base)?;
                let ta = parse_gterm(&a, &x)?;
                let tb = parse_gterm(&b, &x)?;
                println!("{:?}", compare_g(&ta, &tb, &x)?);
                Ok(0)
            }
            GOp::Wf { term, base } => {
                let x = base_order(&base)?;
                let t = parse_gterm(&term, &x)?;
                match validate(&t, &x) {
                    Ok(()) => println!("true"),
                    Err(v) => {
                        println!("false");
                        eprintln!("{v}");
                    }
                }
                Ok(0)
            }
            GOp::Enum {
                base,
                max_size,
                budget,
            } => {
                let x = base_order(&base)?;
                for t in wqo_core::theta::enumerate_terms(&x, max_size, budget)? {
                    println!("{}", render(&t, &x));
                }
                Ok(0)
            }
        },
        Cmd::Tree(op) => match op {
            TreeOp::Deg { tree } => {
                println!("{}", parse_tree(&tree)?.degree());
                Ok(0)
            }
            TreeOp::Embed { t, s, qo } => {
                let q = load_qo(&qo)?;
                let verdict = embeds(&parse_tree(&t)?, &parse_tree(&s)?, &q)?;
                println!("{verdict}");
                Ok(0)
            }
            TreeOp::Enum {
                qo,
                max_nodes,
                max_degree,
                budget,
            } => {
                let q = load_qo(&qo)?;
                for t in enumerate_trees(&q, max_nodes, max_degree, budget)? {
                    println!("{t}");
                }
                Ok(0)
            }
            TreeOp::Whistle { trees, qo } => {
                let q = load_qo(&qo)?;
                let mut w = Whistle::new(&q);
                let mut last = None;
                for spec in &trees {
                    last = w.feed(parse_tree(spec)?)?;
                }
                match last {
                    Some((i, j)) => println!("({i},{j})"),
                    None => println!("none"),
                }
                Ok(0)
            }
        },
        Cmd::Qo(op) => match op {
            QoOp::Product { a, b } => {
                println!("{}", load_qo(&a)?.product(&load_qo(&b)?).to_json());
                Ok(0)
            }
            QoOp::Sum { a, b } => {
                println!("{}", load_qo(&a)?.sum(&load_qo(&b)?).to_json());
                Ok(0)
            }
            QoOp::Dunion { a, b } => {
                println!("{}", load_qo(&a)?.disjoint_union(&load_qo(&b)?).to_json());
                Ok(0)
            }
            QoOp::Nfold { q, n, mode } => {
                let mode = FoldMode::from_str(&mode)?;
                println!("{}", load_qo(&q)?.n_fold(n, mode)?.to_json());
                Ok(0)
            }
            QoOp::Goodpair { q, seq } => {
                let q = load_qo(&q)?;
                let seq = elements(&q, seq.split_whitespace())?;
                match good_pair(&seq, &q)? {
                    Some((i, j)) => println!("({i},{j})"),
                    None => println!("none"),
                }
                Ok(0)
            }
            QoOp::Badmax { q, budget } => {
                let q = load_qo(&q)?;
                let (len, witness) = longest_bad(&q, budget)?;
                println!("{len}: {}", seq_names(&q, &witness));
                Ok(0)
            }
            QoOp::Kb { q, budget } => {
                let q = load_qo(&q)?;
                let tree = BadSeqTree::build(&q, budget)?;
                for id in kb_linearize(&tree) {
                    println!("[{}]", seq_names(&q, tree.node(id)));
                }
                Ok(0)
            }
        },
        Cmd::Ramsey(op) => match op {
            RamseyOp::Colour { q, n, seq } => {
                let q = load_qo(&q)?;
                let colouring = colour_bad_product_seq(&tuples(&q, &seq)?, &q, n)?;
                for (i, j, k) in colouring.triples() {
                    println!("({i},{j}):{k}");
                }
                Ok(0)
            }
            RamseyOp::Homog { q, n, seq, size } => {
                let q = load_qo(&q)?;
                let colouring = colour_bad_product_seq(&tuples(&q, &seq)?, &q, n)?;
                match homogeneous_subset(&colouring, size)? {
                    Some(h) => println!(
                        "{}",
                        h.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                    ),
                    None => println!("none"),
                }
                Ok(0)
            }
            RamseyOp::Pigeon { seq, bound } => {
                let (colour, positions) = pigeonhole_extract(&int_list(&seq)?, bound)?;
                println!(
                    "{colour}: {}",
                    positions
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                Ok(0)
            }
            RamseyOp::Order { prefix, bound } => {
                let order = pigeonhole_order(&int_list(&prefix)?, bound)?;
                println!(
                    "alpha: {}",
                    order
                        .sorted_positions()
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!(
                    "seq: {}",
                    order
                        .witness()
                        .iter()
                        .map(|(k, i)| format!("({k},{i})"))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                Ok(0)
            }
        },
        Cmd::Wop(op) => {
            match op {
                WopOp::Gplus { a } => println!("{}", gamma_plus(&ord(&a)?)),
                WopOp::Gtimes { a } => println!("{}", gamma_times(&ord(&a)?)),
                WopOp::Approx { b, a } => println!("{}", approx_index(&ord(&b)?, &ord(&a)?)?),
            }
            Ok(0)
        }
        Cmd::Suite(SuiteOp::Run { suite, budget }) => {
            let budget = budget.unwrap_or(suites::DEFAULT_BUDGET);
            let start = Instant::now();
            let reports = match &suite {
                Some(name) => vec![suites::run_suite(name, budget)?],
                None => suites::run_all(budget)?,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            );
            let failed: u64 = reports.iter().map(|r| r.violations.len() as u64).sum();
            eprintln!(
                "{} suite(s), {} violation(s), wall time {:?}",
                reports.len(),
                failed,
                start.elapsed()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}
