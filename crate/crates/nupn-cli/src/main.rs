//! Command-line front end: parse net files, run the decision procedures,
//! and print deterministic reports.
//!
//! Exit codes: 0 for a positive verdict or plain success, 1 for a negative
//! verdict (not-coverable, non-terminating, unbounded, not-reachable,
//! failed replay, validation violations), 2 for usage or parse errors, and
//! 3 when a search exhausted its resource budget or does not apply.

use clap::{Parser, Subcommand};
use nupn::text::{
    parse, parse_witness, render, render_analysis_report, render_cover_report, render_marking,
    render_measure_report, render_witness, NetDocument, ResolvedNet,
};
use nupn::{
    bounded, canonicalize, coverable, measure, reachable_alpha, restricted_coverable, terminates,
    CoverVerdict, Limits, Marking, Verdict,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "nupn", version, about = "Analyze nets whose tokens are pure names")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural well-formedness of a net file.
    Validate { net: PathBuf },
    /// Print the renaming-invariant canonical form of the initial marking.
    Canon { net: PathBuf },
    /// Run a random firing sequence and print each step.
    Simulate {
        net: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether the target marking is coverable from the initial one.
    Cover {
        net: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        limit_nodes: Option<usize>,
        #[arg(long)]
        limit_basis: Option<usize>,
    },
    /// Coverability without renaming the names shared with the target.
    CoverRestricted {
        net: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        limit_nodes: Option<usize>,
        #[arg(long)]
        limit_basis: Option<usize>,
    },
    /// Decide termination.
    Terminates {
        net: PathBuf,
        #[arg(long)]
        limit_nodes: Option<usize>,
    },
    /// Decide boundedness.
    Bounded {
        net: PathBuf,
        #[arg(long)]
        limit_nodes: Option<usize>,
    },
    /// Decide reachability up to renaming (bounded nets only).
    Reach {
        net: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        limit_nodes: Option<usize>,
    },
    /// Explore and report the largest observed width and depth.
    Measure {
        net: PathBuf,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Print the analyzed net (embedding or reduction image) as a nu file.
    Translate { net: PathBuf },
    /// Replay a witness file against the net and print the final marking.
    Replay { net: PathBuf, witness: PathBuf },
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    ExitCode::from(run(cli.cmd))
}

fn read_file(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn load(path: &Path) -> Result<NetDocument, u8> {
    let text = read_file(path)?;
    parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

/// Loads and resolves a document, refusing structurally ill-formed nets.
fn load_resolved(path: &Path) -> Result<(NetDocument, ResolvedNet), u8> {
    let doc = load(path)?;
    let resolved = doc.resolve();
    let violations = resolved.net.validate();
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("error: {}: {v}", path.display());
        }
        return Err(EXIT_USAGE);
    }
    Ok((doc, resolved))
}

fn load_target(doc: &NetDocument, path: &Path) -> Result<Marking, u8> {
    let target = load(path)?;
    doc.resolve_target(&target).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn limits(nodes: Option<usize>, basis: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = nodes {
        l.max_nodes = n;
    }
    if let Some(b) = basis {
        l.max_basis = b;
    }
    l
}

fn cover_exit(verdict: CoverVerdict) -> u8 {
    match verdict {
        CoverVerdict::Coverable => EXIT_OK,
        CoverVerdict::NotCoverable => EXIT_NEGATIVE,
        CoverVerdict::ResourceExhausted => EXIT_EXHAUSTED,
    }
}

fn analysis_exit(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Terminating | Verdict::Bounded | Verdict::Reachable => EXIT_OK,
        Verdict::NonTerminating | Verdict::Unbounded | Verdict::NotReachable => EXIT_NEGATIVE,
        Verdict::NotApplicable | Verdict::ResourceExhausted => EXIT_EXHAUSTED,
    }
}

/// Multiplicative congruential step; good enough to pick firings.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Rng {
        Rng(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 16
    }

    fn pick(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

fn run(cmd: Cmd) -> u8 {
    match cmd {
        Cmd::Validate { net } => {
            let doc = match load(&net) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let resolved = doc.resolve();
            let violations = resolved.net.validate();
            if violations.is_empty() {
                println!("ok: net is well-formed");
                println!(
                    "normal: {}",
                    if resolved.net.is_normal() { "yes" } else { "no" }
                );
                EXIT_OK
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                EXIT_NEGATIVE
            }
        }
        Cmd::Canon { net } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let canon = canonicalize(&resolved.initial);
            println!("{}", canon.render(resolved.net.place_names()));
            EXIT_OK
        }
        Cmd::Simulate { net, steps, seed } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let mut rng = Rng::new(seed);
            let mut marking = resolved.initial.clone();
            println!("initial: {}", render_marking(&resolved.net, &marking));
            for _ in 0..steps {
                let firings = resolved.net.enabled_firings(&marking);
                if firings.is_empty() {
                    println!("(deadlock)");
                    break;
                }
                let (t, mode) = &firings[rng.pick(firings.len())];
                print!("{}", render_witness(&resolved, std::slice::from_ref(&(*t, mode.clone()))));
                marking = resolved
                    .net
                    .fire(&marking, *t, mode)
                    .expect("enumerated firing is enabled");
                println!("-> {}", render_marking(&resolved.net, &marking));
            }
            EXIT_OK
        }
        Cmd::Cover {
            net,
            target,
            limit_nodes,
            limit_basis,
        } => {
            let (doc, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let mf = match load_target(&doc, &target) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let r = coverable(&resolved.net, &resolved.initial, &mf, &limits(limit_nodes, limit_basis));
            print!("{}", render_cover_report(&resolved, &r));
            cover_exit(r.verdict)
        }
        Cmd::CoverRestricted {
            net,
            target,
            limit_nodes,
            limit_basis,
        } => {
            let (doc, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let mf = match load_target(&doc, &target) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let r = restricted_coverable(
                &resolved.net,
                &resolved.initial,
                &mf,
                &limits(limit_nodes, limit_basis),
            );
            print!("{}", render_cover_report(&resolved, &r));
            cover_exit(r.verdict)
        }
        Cmd::Terminates { net, limit_nodes } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let r = terminates(&resolved.net, &resolved.initial, &limits(limit_nodes, None));
            print!("{}", render_analysis_report(&resolved, &r));
            analysis_exit(r.verdict)
        }
        Cmd::Bounded { net, limit_nodes } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let r = bounded(&resolved.net, &resolved.initial, &limits(limit_nodes, None));
            print!("{}", render_analysis_report(&resolved, &r));
            analysis_exit(r.verdict)
        }
        Cmd::Reach {
            net,
            target,
            limit_nodes,
        } => {
            let (doc, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let mf = match load_target(&doc, &target) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let r = reachable_alpha(&resolved.net, &resolved.initial, &mf, &limits(limit_nodes, None));
            print!("{}", render_analysis_report(&resolved, &r));
            analysis_exit(r.verdict)
        }
        Cmd::Measure { net, steps } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let m = measure(&resolved.net, &resolved.initial, steps);
            print!("{}", render_measure_report(&m));
            EXIT_OK
        }
        Cmd::Translate { net } => {
            let doc = match load(&net) {
                Ok(d) => d,
                Err(code) => return code,
            };
            print!("{}", render(&doc.translate()));
            EXIT_OK
        }
        Cmd::Replay { net, witness } => {
            let (_, resolved) = match load_resolved(&net) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let text = match read_file(&witness) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let steps = match parse_witness(&resolved, &text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}: {e}", witness.display());
                    return EXIT_USAGE;
                }
            };
            let mut marking = resolved.initial.clone();
            for (i, (t, mode)) in steps.iter().enumerate() {
                match resolved.net.fire(&marking, *t, mode) {
                    Ok(next) => marking = next,
                    Err(e) => {
                        println!("replay failed at step {}: {e}", i + 1);
                        return EXIT_NEGATIVE;
                    }
                }
            }
            println!("ok: replayed {} firings", steps.len());
            println!("final: {}", render_marking(&resolved.net, &marking));
            EXIT_OK
        }
    }
}
