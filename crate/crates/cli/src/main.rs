use std::io::Read;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};
use stratset::io::{parse_document, run_command, Command, Library};

/// Batch interface to finitely presented stratified simplicial sets.
///
/// Objects are document names or inline descriptions such as `simplex:p,q`,
/// `horn:p,p,q:0`, `lstr:circle`, `nerve:P`; maps may also be written
/// `inclusion:A->B`, `terminal:A`, `counit:A` or `identity:A`.
#[derive(Parser)]
#[command(name = "stratset", version)]
struct Cli {
    /// JSON document to load; `-` reads standard input.
    #[arg(long, global = true)]
    doc: Option<PathBuf>,
    /// Poset for inline flags (default: the chain of the flag's ids).
    #[arg(long, global = true)]
    poset: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    Posetify {
        #[arg(long)]
        sset: String,
    },
    Refine {
        #[arg(long)]
        strat: String,
    },
    IsRefined {
        #[arg(long)]
        strat: String,
    },
    RefinedPoset {
        #[arg(long)]
        strat: String,
    },
    Link {
        #[arg(long)]
        flag: String,
        #[arg(long)]
        of: String,
    },
    Hol {
        #[arg(long)]
        flag: String,
        #[arg(long)]
        of: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    ExtHol {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        of: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    Join {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        i0: String,
        #[arg(long)]
        i1: String,
    },
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    Pushout {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Sd {
        #[arg(long)]
        sset: String,
    },
    Ex {
        #[arg(long)]
        sset: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    Exp {
        #[arg(long)]
        target: String,
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    Pathspace {
        #[arg(long)]
        strat: String,
        /// Generators spanning the subcomplex, comma separated.
        #[arg(long, value_delimiter = ',')]
        subcomplex: Vec<String>,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    Spine {
        #[arg(long)]
        flag: String,
    },
    ClassifyHorn {
        #[arg(long)]
        flag: String,
        #[arg(long)]
        k: usize,
    },
    ProbeFibrant {
        #[arg(long)]
        strat: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// `admissible` or `admissible_and_inner`.
        #[arg(long, default_value = "admissible")]
        class: String,
    },
    ProbeRlp {
        #[arg(long)]
        map: String,
        /// Generator sets, comma separated.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    ProbeDiagEquiv {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        flaglen: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    CheckCofibration {
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "D")]
        structure: String,
    },
    CheckAcyclicFibration {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    PushoutProduct {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    ProbeLayered {
        #[arg(long)]
        sset: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    Homology {
        #[arg(long)]
        sset: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        char: u64,
    },
    Pi0 {
        #[arg(long)]
        sset: String,
    },
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Posetify { sset } => Command::Posetify { sset },
            Cmd::Refine { strat } => Command::Refine { strat },
            Cmd::IsRefined { strat } => Command::IsRefined { strat },
            Cmd::RefinedPoset { strat } => Command::RefinedPoset { strat },
            Cmd::Link { flag, of } => Command::Link { of, flag },
            Cmd::Hol { flag, of, levels } => Command::Hol { of, flag, levels },
            Cmd::ExtHol { n, of, levels } => Command::ExtHol { of, n, levels },
            Cmd::Join { left, right, i0, i1 } => Command::Join { left, right, i0, i1 },
            Cmd::Product { left, right } => Command::Product { left, right },
            Cmd::Pushout { f, g } => Command::Pushout { f, g },
            Cmd::Sd { sset } => Command::Sd { sset },
            Cmd::Ex { sset, levels } => Command::Ex { sset, levels },
            Cmd::Exp { target, source, levels } => Command::Exp { target, source, levels },
            Cmd::Pathspace { strat, subcomplex, levels } => Command::Pathspace { strat, subcomplex, levels },
            Cmd::Spine { flag } => Command::Spine { flag },
            Cmd::ClassifyHorn { flag, k } => Command::ClassifyHorn { flag, k },
            Cmd::ProbeFibrant { strat, dim, class } => Command::ProbeFibrant { strat, dim, class },
            Cmd::ProbeRlp { map, generators, dim } => Command::ProbeRlp { map, generators, dim },
            Cmd::ProbeDiagEquiv { map, depth, flaglen, levels } => Command::ProbeDiagEquiv { map, depth, flaglen, levels },
            Cmd::CheckCofibration { map, structure } => Command::CheckCofibration { map, structure },
            Cmd::CheckAcyclicFibration { map, dim } => Command::CheckAcyclicFibration { map, dim },
            Cmd::PushoutProduct { left, right } => Command::PushoutProduct { left, right },
            Cmd::ProbeLayered { sset, dim } => Command::ProbeLayered { sset, dim },
            Cmd::Homology { sset, max_degree, char } => Command::Homology { sset, max_degree, char },
            Cmd::Pi0 { sset } => Command::Pi0 { sset },
        }
    }
}

fn load(path: Option<&PathBuf>) -> anyhow::Result<Library> {
    let text = match path {
        None => "{}".to_string(),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
    };
    Ok(parse_document(&text)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let lib = load(cli.doc.as_ref())?;
    let report = run_command(&cli.command.into(), &lib, cli.poset)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
}
