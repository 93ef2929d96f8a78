//! `cocoa-kit`: generate, combine and analyse automata and chains stored in
//! the text format of the library.
//!
//! Exit status: 0 when a check holds, 1 when it fails, 2 on bad usage or
//! unreadable input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cocoa_kit::analysis::{
    closed_subsccs, dpw_equiv, parity_to_streett, residual_classes, streett_nonempty,
};
use cocoa_kit::boolops::{dcw_conjunction, dcw_disjunction, dpw_complement, ncw_determinize};
use cocoa_kit::cocoa::{
    check_chain, cocoa_conjunction_gamma, cocoa_demorgan_complement, cocoa_demorgan_disjunction,
    cocoa_eval, cocoa_to_dpw, natural_color_probe, ChainFailure, Cocoa,
};
use cocoa_kit::families::{ck, comp_family, gen, lhat, lk, Family, FamilySpec};
use cocoa_kit::format::{parse, print, Document};
use cocoa_kit::word::{all_lassos, random_lassos};
use cocoa_kit::{accepts_lasso_cobuchi, run_deterministic, Automaton, LassoWord, Letter};

#[derive(Parser)]
#[command(
    name = "cocoa-kit",
    version,
    about = "Chains of co-Büchi automata and parity automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated family to a file (or stdout).
    Gen {
        family: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a chain or automaton on a lasso word `u ; v`.
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// Chain or automaton name; defaults to the first chain, else the
        /// only automaton.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        lasso: String,
    },
    /// Build a new automaton or chain.
    Op {
        op: OpKind,
        /// Operands as `FILE` or `FILE:NAME`.
        #[arg(long = "input", required = true, num_args = 1..)]
        inputs: Vec<String>,
        #[arg(long, default_value = "result")]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide a property; the exit status reports the verdict.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Size tables for the conciseness families.
    Table {
        #[command(subcommand)]
        table: Table,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    /// Intersection of deterministic co-Büchi automata.
    Conj,
    /// Union of deterministic co-Büchi automata.
    Disj,
    /// Breakpoint determinization of a co-Büchi automaton.
    Determinize,
    /// Complement of a deterministic parity automaton.
    Complement,
    /// Parity automaton of a chain.
    ToDpw,
    /// Conjunction of two chains of equal length.
    CocoaConj,
    /// Disjunction of two chains of equal length.
    CocoaDisj,
    /// Complement of a chain.
    CocoaComplement,
}

#[derive(Subcommand)]
enum Check {
    /// Language equivalence of two deterministic parity automata.
    Equiv { a: String, b: String },
    /// Emptiness of a deterministic parity automaton.
    Empty { a: String },
    /// Strict inclusion between consecutive chain elements.
    Chain { c: String },
    /// Print the number of residual classes.
    Residuals { a: String },
    /// Closed sub-SCCs over a letter subset.
    Subscc {
        a: String,
        /// Comma-separated letter names.
        #[arg(long, value_delimiter = ',', required = true)]
        letters: Vec<String>,
    },
    /// Certified lower bound on the natural color of a word.
    NaturalColor {
        #[arg(long)]
        input: String,
        #[arg(long)]
        lasso: String,
        #[arg(long, default_value_t = 2)]
        max_inject_len: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
    /// Compare chain evaluation with its parity automaton on sample words.
    /// Sampling is seeded from COCOA_KIT_SEED (default 0).
    Agree {
        c: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum Table {
    /// Chain size, parity automaton size and residual count per k.
    Conciseness(TableArgs),
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    family: TableFamily,
    #[arg(long)]
    kmax: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    #[value(name = "Ck", alias = "ck")]
    Ck,
    #[value(name = "Lk", alias = "lk")]
    Lk,
    Conj,
    Comp,
}

/// Verdict of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Gen { family, k, output } => {
            let family: Family = family.parse()?;
            let doc = gen(FamilySpec::new(family, k)?)?;
            emit(output.as_deref(), &print(&doc))?;
            Ok(Verdict::Pass)
        }
        Command::Eval { input, name, lasso } => {
            let doc = load(&input)?;
            let target = match name {
                Some(n) => lookup(&doc, &n)?,
                None => default_object(&doc)?,
            };
            let alphabet = target.alphabet().clone();
            let w = LassoWord::parse(&alphabet, &lasso)?;
            match target {
                Object::Chain(c) => {
                    let v = cocoa_eval(&c, &w)?;
                    println!("level {} member {}", v.level, v.member);
                }
                Object::Automaton(a) if a.is_deterministic() => {
                    let r = run_deterministic(&a, &w)?;
                    println!("color {} accepted {}", r.dominating_color, r.accepted);
                }
                Object::Automaton(a) => {
                    println!("accepted {}", accepts_lasso_cobuchi(&a, &w)?);
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Op {
            op,
            inputs,
            name,
            output,
        } => {
            let operands = inputs
                .iter()
                .map(|s| resolve(s))
                .collect::<Result<Vec<_>>>()?;
            let mut doc = Document::new();
            match op {
                OpKind::Conj | OpKind::Disj => {
                    let autos = operands
                        .iter()
                        .map(Object::automaton)
                        .collect::<Result<Vec<_>>>()?;
                    let result = match op {
                        OpKind::Conj => dcw_conjunction(&autos)?,
                        _ => dcw_disjunction(&autos)?,
                    };
                    doc.add_automaton(name, result);
                }
                OpKind::Determinize => {
                    doc.add_automaton(name, ncw_determinize(single(&operands)?.automaton()?)?);
                }
                OpKind::Complement => {
                    doc.add_automaton(name, dpw_complement(single(&operands)?.automaton()?)?);
                }
                OpKind::ToDpw => {
                    doc.add_automaton(name, cocoa_to_dpw(single(&operands)?.chain()?)?);
                }
                OpKind::CocoaComplement => {
                    doc.add_cocoa(
                        &name,
                        &cocoa_demorgan_complement(single(&operands)?.chain()?)?,
                    );
                }
                OpKind::CocoaConj | OpKind::CocoaDisj => {
                    let [a, b] = &operands[..] else {
                        bail!("expected two chains, got {} operands", operands.len());
                    };
                    let (a, b) = (a.chain()?, b.chain()?);
                    let result = match op {
                        OpKind::CocoaConj => cocoa_conjunction_gamma(a, b)?,
                        _ => cocoa_demorgan_disjunction(a, b)?,
                    };
                    doc.add_cocoa(&name, &result);
                }
            }
            emit(output.as_deref(), &print(&doc))?;
            Ok(Verdict::Pass)
        }
        Command::Check { check } => run_check(check),
        Command::Table {
            table: Table::Conciseness(args),
        } => {
            let tsv = conciseness(args.family, args.kmax)?;
            emit(args.output.as_deref(), &tsv)?;
            Ok(Verdict::Pass)
        }
    }
}

fn run_check(check: Check) -> Result<Verdict> {
    match check {
        Check::Equiv { a, b } => {
            let (a, b) = (resolve(&a)?, resolve(&b)?);
            let (a, b) = (a.automaton()?, b.automaton()?);
            let v = dpw_equiv(a, b)?;
            match v.counterexample {
                None => {
                    println!("equivalent");
                    Ok(Verdict::Pass)
                }
                Some(w) => {
                    println!("different on {}", w.display(a.alphabet()));
                    Ok(Verdict::Fail)
                }
            }
        }
        Check::Empty { a } => {
            let a = resolve(&a)?;
            let a = a.automaton()?;
            match streett_nonempty(a, &parity_to_streett(a)?)? {
                None => {
                    println!("empty");
                    Ok(Verdict::Pass)
                }
                Some(w) => {
                    println!("accepts {}", w.display(a.alphabet()));
                    Ok(Verdict::Fail)
                }
            }
        }
        Check::Chain { c } => {
            let c = resolve(&c)?;
            let c = c.chain()?;
            let report = check_chain(c)?;
            for f in &report.failures {
                match f {
                    ChainFailure::NotIncluded { index, witness } => println!(
                        "element {} accepts {} but element {index} does not",
                        index + 1,
                        witness.display(c.alphabet())
                    ),
                    ChainFailure::NotStrict { index } => {
                        println!("elements {index} and {} are equivalent", index + 1)
                    }
                }
            }
            if report.is_ok() {
                println!("strictly decreasing chain of {} elements", c.len());
                Ok(Verdict::Pass)
            } else {
                Ok(Verdict::Fail)
            }
        }
        Check::Residuals { a } => {
            let a = resolve(&a)?;
            println!("{}", residual_classes(a.automaton()?)?.len());
            Ok(Verdict::Pass)
        }
        Check::Subscc { a, letters } => {
            let a = resolve(&a)?;
            let a = a.automaton()?;
            let letters: Vec<Letter> = letters
                .iter()
                .map(|l| a.alphabet().letter(l.trim()))
                .collect::<cocoa_kit::Result<_>>()?;
            let sccs = closed_subsccs(a, &letters)?;
            for s in &sccs {
                let names: Vec<&str> = s.states.iter().map(|&q| a.state_name(q)).collect();
                println!("{}", names.join(" "));
            }
            println!("{} closed sub-SCCs", sccs.len());
            Ok(Verdict::Pass)
        }
        Check::NaturalColor {
            input,
            lasso,
            max_inject_len,
            max_depth,
        } => {
            let target = resolve(&input)?;
            let reference = match &target {
                Object::Chain(c) => cocoa_to_dpw(c)?,
                Object::Automaton(a) => a.clone(),
            };
            let w = LassoWord::parse(reference.alphabet(), &lasso)?;
            let v = natural_color_probe(&reference, &w, max_inject_len, max_depth)?;
            let names = |ls: &[Letter]| -> String {
                ls.iter()
                    .map(|&l| reference.alphabet().name(l))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            for s in &v.toggle_chain {
                println!(
                    "inject {} at {} -> {}",
                    names(&s.injected),
                    s.position,
                    s.word.display(reference.alphabet())
                );
            }
            println!("lower bound {}", v.certified_lower_bound);
            Ok(Verdict::Pass)
        }
        Check::Agree { c, samples } => {
            let c = resolve(&c)?;
            let c = c.chain()?;
            let seed = match std::env::var("COCOA_KIT_SEED") {
                Ok(s) => s.parse().context("COCOA_KIT_SEED must be an integer")?,
                Err(_) => 0,
            };
            let d = cocoa_to_dpw(c)?;
            let mut words = random_lassos(c.alphabet(), samples, 4, 5, seed);
            if c.alphabet().len() <= 4 {
                words.extend(all_lassos(c.alphabet(), 2, 3));
            }
            for w in &words {
                let v = cocoa_eval(c, w)?;
                let r = run_deterministic(&d, w)?;
                if v.member != r.accepted || v.level != r.dominating_color as usize {
                    println!(
                        "disagree on {}: level {} vs color {}",
                        w.display(c.alphabet()),
                        v.level,
                        r.dominating_color
                    );
                    return Ok(Verdict::Fail);
                }
            }
            println!("agree on {} words (seed {seed})", words.len());
            Ok(Verdict::Pass)
        }
    }
}

enum Object {
    Automaton(Automaton),
    Chain(Cocoa),
}

impl Object {
    fn alphabet(&self) -> &cocoa_kit::Alphabet {
        match self {
            Object::Automaton(a) => a.alphabet(),
            Object::Chain(c) => c.alphabet(),
        }
    }

    fn automaton(&self) -> Result<&Automaton> {
        match self {
            Object::Automaton(a) => Ok(a),
            Object::Chain(_) => bail!("expected an automaton, got a chain"),
        }
    }

    fn chain(&self) -> Result<&Cocoa> {
        match self {
            Object::Chain(c) => Ok(c),
            Object::Automaton(_) => bail!("expected a chain, got an automaton"),
        }
    }
}

fn single(operands: &[Object]) -> Result<&Object> {
    match operands {
        [one] => Ok(one),
        _ => bail!("expected one operand, got {}", operands.len()),
    }
}

fn load(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn lookup(doc: &Document, name: &str) -> Result<Object> {
    if let Some(c) = doc.cocoa(name) {
        return Ok(Object::Chain(c?));
    }
    doc.automaton(name)
        .map(|a| Object::Automaton(a.clone()))
        .ok_or_else(|| anyhow!("no chain or automaton named `{name}`"))
}

fn default_object(doc: &Document) -> Result<Object> {
    if let Some((name, _)) = doc.chains.first() {
        return lookup(doc, name);
    }
    match &doc.automata[..] {
        [(_, a)] => Ok(Object::Automaton(a.clone())),
        [] => bail!("the file declares nothing"),
        _ => bail!("the file declares several automata; name one with FILE:NAME"),
    }
}

/// `FILE` or `FILE:NAME`.
fn resolve(spec: &str) -> Result<Object> {
    if Path::new(spec).exists() {
        return default_object(&load(Path::new(spec))?);
    }
    match spec.rsplit_once(':') {
        Some((file, name)) => lookup(&load(Path::new(file))?, name),
        None => default_object(&load(Path::new(spec))?),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Row {
    k: usize,
    cocoa_states: usize,
    dpw_states: usize,
    residual_count: usize,
    elapsed_ms: u128,
}

/// For `conj` the residual count is taken on element k of the conjunction
/// of `lk(k)` and `lhat(k)`; the other families count residuals of the
/// parity automaton.
fn table_row(family: TableFamily, k: usize) -> Result<Row> {
    let start = Instant::now();
    let (chain, residuals_of) = match family {
        TableFamily::Ck => (ck(k)?, None),
        TableFamily::Lk => (lk(k)?, None),
        TableFamily::Comp => (comp_family(k)?, None),
        TableFamily::Conj => {
            let c = cocoa_conjunction_gamma(&lk(k)?, &lhat(k)?)?;
            let middle = c.element(k).clone();
            (c, Some(middle))
        }
    };
    let dpw = cocoa_to_dpw(&chain)?;
    let residual_count = residual_classes(residuals_of.as_ref().unwrap_or(&dpw))?.len();
    Ok(Row {
        k,
        cocoa_states: chain.num_states(),
        dpw_states: dpw.num_states(),
        residual_count,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn conciseness(family: TableFamily, kmax: usize) -> Result<String> {
    if kmax == 0 {
        bail!("--kmax must be at least 1");
    }
    let rows: Vec<Result<Row>> = thread::scope(|s| {
        let handles: Vec<_> = (1..=kmax)
            .map(|k| s.spawn(move || table_row(family, k)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(anyhow!("table worker panicked")))
            })
            .collect()
    });
    let mut out = String::from("k\tcocoa_states\tdpw_states\tresidual_count\telapsed_ms\n");
    for row in rows {
        let r = row?;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.k, r.cocoa_states, r.dpw_states, r.residual_count, r.elapsed_ms
        ));
    }
    Ok(out)
}
