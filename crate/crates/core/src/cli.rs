//! Command-line front end. Exit codes: 0 success, 1 negative answer or
//! failed check, 2 malformed input or usage error. Diagnostics go to
//! stderr; only requested artifacts go to stdout.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};

use crate::blocks::decompose;
use crate::error::Error;
use crate::family::{
    check_minimality, check_proposition, enumerate_family, family_level, BlockCensus, FamilyMember,
};
use crate::graph::Graph;
use crate::io::{
    parse_graph, parse_representation, render_ascii, write_graph, write_representation,
    CertificateFile,
};
use crate::oracle::{brute_force_b0vpg, ORACLE_CAP};
use crate::recognize::{decide, recognize_with, Recognition, RecognizeOptions, Verdict};
use crate::verify::{verify_with_lemmas, MismatchKind};

#[derive(Debug, Parser)]
#[command(
    name = "b0vpg",
    version,
    about = "Certifying B0-VPG recognition for block graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recognize a graph; emit a representation or a certificate.
    Recognize {
        input: PathBuf,
        /// Write the JSON artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print an ASCII drawing on accept.
        #[arg(long)]
        ascii: bool,
        /// Shuffle BFS neighbor order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// BFS start block (0-based index into each component's blocks).
        #[arg(long)]
        start_block: Option<usize>,
    },
    /// Check a representation against a graph.
    Verify { graph: PathBuf, rep: PathBuf },
    /// Write members of the forbidden family as graph files.
    #[command(group(ArgGroup::new("bound").required(true).args(["k", "max_vertices"])))]
    Family {
        /// Members built with exactly this many procedure applications.
        #[arg(long)]
        k: Option<usize>,
        /// All members with at most this many vertices.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Check structural properties and minimality; print a count table.
        #[arg(long)]
        check: bool,
    },
    /// Exhaustive search for a representation of a small graph.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    /// Exit 1.
    Negative,
    /// Exit 2.
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Recognize {
            input,
            out,
            ascii,
            seed,
            start_block,
        } => cmd_recognize(
            &input,
            out.as_deref(),
            ascii,
            seed,
            start_block,
            stdout,
            stderr,
        ),
        Command::Verify { graph, rep } => cmd_verify(&graph, &rep, stderr),
        Command::Family {
            k,
            max_vertices,
            out,
            check,
        } => cmd_family(k, max_vertices, &out, check, stdout, stderr),
        Command::Oracle { input, out } => cmd_oracle(&input, out.as_deref(), stdout, stderr),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Negative) => 1,
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)?,
        None => writeln!(stdout, "{text}")?,
    }
    Ok(())
}

fn cmd_recognize(
    input: &Path,
    out: Option<&Path>,
    ascii: bool,
    seed: Option<u64>,
    start_block: Option<usize>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let g = read_graph(input)?;
    let opts = RecognizeOptions { start_block, seed };
    let outcome = recognize_with(&g, &opts)?;
    match &outcome {
        Recognition::Accept(rep) => {
            emit(out, &write_representation(rep), stdout)?;
            if ascii {
                write!(stdout, "{}", render_ascii(rep))?;
            }
            writeln!(stderr, "accept: {} vertices", g.n())?;
            Ok(())
        }
        Recognition::Reject(cert) => {
            emit(
                out,
                &CertificateFile::from_recognition(&outcome).to_json(),
                stdout,
            )?;
            writeln!(
                stderr,
                "reject: induced family member with k = {} on {} vertices",
                cert.k,
                cert.vertices.len()
            )?;
            Err(Failure::Negative)
        }
        Recognition::NotBlockGraph(w) => {
            emit(
                out,
                &CertificateFile::from_recognition(&outcome).to_json(),
                stdout,
            )?;
            writeln!(
                stderr,
                "not a block graph: block {} contains nonadjacent {} and {}",
                w.block,
                w.pair.0 + 1,
                w.pair.1 + 1
            )?;
            Err(Failure::Negative)
        }
    }
}

fn cmd_verify(graph: &Path, rep: &Path, stderr: &mut dyn Write) -> CmdResult {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(rep)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", rep.display())))?;
    let rep = parse_representation(&text)
        .and_then(|f| f.to_representation(g.n()))
        .map_err(|e| Failure::Malformed(format!("{}: {e}", rep.display())))?;
    let report = verify_with_lemmas(&g, &rep)?;
    for m in &report.mismatches {
        let what = match m.kind {
            MismatchKind::Disjoint => "adjacent but paths are disjoint",
            MismatchKind::Intersecting => "nonadjacent but paths intersect",
        };
        writeln!(stderr, "mismatch {} {}: {what}", m.u + 1, m.v + 1)?;
    }
    for f in &report.lemma_failures {
        let ids: Vec<String> = f.clique.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(
            stderr,
            "lemma {:?} fails on {{{}}}: {}",
            f.lemma,
            ids.join(","),
            f.detail
        )?;
    }
    if report.ok() {
        writeln!(stderr, "ok")?;
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn member_file_name(m: &FamilyMember, index: usize) -> String {
    format!("f{}_{index}.graph", m.graph.n())
}

fn cmd_family(
    k: Option<usize>,
    max_vertices: Option<usize>,
    out: &Path,
    check: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let members = match (k, max_vertices) {
        (Some(k), _) => family_level(k),
        (None, Some(max)) => enumerate_family(max),
        (None, None) => unreachable!("clap requires one bound"),
    };
    fs::create_dir_all(out)?;
    let mut index = 0;
    let mut last_n = 0;
    for m in &members {
        if m.graph.n() != last_n {
            last_n = m.graph.n();
            index = 0;
        }
        let comment = format!("family member, k = {}", m.k);
        let path = out.join(member_file_name(m, index));
        fs::write(&path, write_graph(&m.graph, Some(&comment)))?;
        writeln!(stderr, "wrote {}", path.display())?;
        index += 1;
    }
    if !check {
        return Ok(());
    }
    writeln!(
        stdout,
        "k\tvertices\tblocks\tcutpoints\tproperties\tminimal"
    )?;
    let mut all_ok = true;
    let accepted =
        |h: &Graph| decide(h, &RecognizeOptions::default()).is_ok_and(|v| v == Verdict::Accept);
    for m in &members {
        let minimal = check_minimality(&m.graph, accepted);
        let (census, props) = if m.k == 0 {
            let d = decompose(&m.graph)?;
            (BlockCensus::of(&d), "n/a".to_string())
        } else {
            let report = check_proposition(&m.graph, m.k)?;
            for f in &report.failures {
                writeln!(
                    stderr,
                    "k = {}: property {} fails: {}",
                    m.k, f.item, f.detail
                )?;
            }
            all_ok &= report.ok();
            let verdict = if report.ok() { "ok" } else { "FAIL" };
            (report.census, verdict.to_string())
        };
        all_ok &= minimal;
        writeln!(
            stdout,
            "{}\t{}\t{}\t{}\t{}\t{}",
            m.k,
            census.vertices,
            census.blocks,
            census.cutpoints,
            props,
            if minimal { "yes" } else { "NO" }
        )?;
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_oracle(
    input: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let g = read_graph(input)?;
    if g.n() > ORACLE_CAP {
        return Err(Failure::Malformed(format!(
            "{} vertices exceed the oracle cap of {ORACLE_CAP}; use `b0vpg recognize` for block graphs",
            g.n()
        )));
    }
    match brute_force_b0vpg(&g)? {
        Some(rep) => {
            emit(out, &write_representation(&rep), stdout)?;
            writeln!(stderr, "representation found")?;
            Ok(())
        }
        None => {
            writeln!(stderr, "search exhausted: no representation exists")?;
            Err(Failure::Negative)
        }
    }
}

/// Convenience wrapper for `main`.
pub fn main_with_std() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
