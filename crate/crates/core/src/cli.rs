//! Command-line front end. [`run`] never touches the process streams, so it
//! can be driven from tests.
//!
//! Exit codes: 0 success, 1 counterexample found, 2 usage error, 3 invalid
//! input, 4 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    charge, classify_word, find_fork, free_pair_check, verify_fork_lemma, WordClass,
};
use crate::cayley::{export_dot, minimal_loops, Ball, Label, DEFAULT_VERTEX_CAP};
use crate::engine::{GroupParam, NormalForm};
use crate::error::Error;
use crate::sierpinski::{
    canonical_subset, enumerate_cut_candidates, example1_literal_subset, example1_subset,
    tree_subset, verify_translation_identity_on, Status, VerificationReport, WSubset,
};
use crate::words::{Alphabet, Word};

pub const CAP_ENV: &str = "WSLAB_VERTEX_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "wslab",
    version,
    about = "Normal forms, Cayley balls and weak Sierpinski subsets of <g,h | (h^-1 g)^k>"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Group parameter: an integer k >= 2, or "inf" for the free group
    #[arg(long)]
    k: String,
}

#[derive(Args)]
struct SubsetArgs {
    /// Canonical cut subset E_ell
    #[arg(long, conflicts_with = "example1")]
    ell: Option<u32>,
    /// Elements ending in a positive power of g
    #[arg(long)]
    example1: bool,
    /// With --example1: accept any nonzero final power of g
    #[arg(long, requires = "example1")]
    literal: bool,
    /// Right-translate the subset by this element
    #[arg(long)]
    translate: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word
    Nf {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Product of two elements
    Mul {
        #[command(flatten)]
        group: GroupArg,
        left: String,
        right: String,
    },
    /// Inverse of an element
    Inv {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Order of an element
    Order {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Summary of the ball of given radius in the Cayley graph
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
    },
    /// Ball as a DOT digraph
    Dot {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        /// Fill the vertices of this subset
        #[command(flatten)]
        subset: SubsetArgs,
        /// Write to a file instead of standard output
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Membership of an element in a subset
    WsMember {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        subset: SubsetArgs,
        /// Decide by path search instead of the closed-form rule
        #[arg(long)]
        bfs: bool,
        element: String,
    },
    /// Check gE = E \ {a} and hE = E \ {b} on a ball
    WsVerify {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long)]
        radius: u32,
    },
    /// The k cut candidates around the edge (g^-1, 1)
    WsList {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Write a subset as E_ell translated by u
    WsNormalize {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        subset: SubsetArgs,
    },
    /// Girth and shortest cycles of a ball
    Loops {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
    },
    /// Classify a cyclically reduced {g,h} word
    Classify { word: String },
    /// Check that every bad word up to the given length has a fork
    ForkLemma {
        #[arg(long)]
        max_len: usize,
    },
    /// f(gamma) = |E \ gamma E| - |gamma E \ E|
    Charge {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        subset: SubsetArgs,
        gamma: String,
    },
    /// Check that x = g, y = h^-1 g h satisfy no relation up to a length
    FreeCheck {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        max_len: usize,
    },
    /// Verify the positive-power set and show the failure of the literal one
    Example1Check {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
    },
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

struct Output {
    counterexample: bool,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            counterexample: false,
            text,
            json,
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(out) => {
            let mut stdout = if json {
                serde_json::to_string_pretty(&out.json).expect("json values serialize")
            } else {
                out.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: u8::from(out.counterexample),
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Input(e)) => Outcome {
            code: if matches!(e, Error::ResourceLimit { .. }) {
                4
            } else {
                3
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn vertex_cap() -> Result<usize, Error> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidParam(format!("{CAP_ENV} must be a vertex count, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_VERTEX_CAP),
    }
}

fn ball(p: GroupParam, radius: u32) -> Result<Ball, Error> {
    Ball::build(p, radius, vertex_cap()?)
}

fn element(text: &str, p: GroupParam) -> Result<NormalForm, Error> {
    NormalForm::parse(text, p)
}

impl GroupArg {
    fn param(&self) -> Result<GroupParam, Error> {
        self.k.parse()
    }
}

impl SubsetArgs {
    fn build(&self, p: GroupParam) -> Result<WSubset, Failure> {
        let base = match (self.ell, self.example1) {
            (Some(1), false) if !p.is_finite() => tree_subset(),
            (Some(ell), false) => canonical_subset(p, ell)?,
            (None, true) if self.literal => example1_literal_subset(p),
            (None, true) => example1_subset(p),
            _ => {
                return Err(Failure::Usage(
                    "choose a subset with --ell or --example1".into(),
                ))
            }
        };
        match &self.translate {
            Some(u) => Ok(base.right_translate(&element(u, p)?)?),
            None => Ok(base),
        }
    }

    fn given(&self) -> bool {
        self.ell.is_some() || self.example1
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Nf { group, word } => {
            let x = element(&word, group.param()?)?;
            Ok(Output::ok(x.to_string(), json!({"op": "nf", "result": x})))
        }
        Command::Mul { group, left, right } => {
            let p = group.param()?;
            let x = &element(&left, p)? * &element(&right, p)?;
            Ok(Output::ok(x.to_string(), json!({"op": "mul", "result": x})))
        }
        Command::Inv { group, word } => {
            let x = element(&word, group.param()?)?.inverse();
            Ok(Output::ok(x.to_string(), json!({"op": "inv", "result": x})))
        }
        Command::Order { group, word } => {
            let o = element(&word, group.param()?)?.order().to_string();
            Ok(Output::ok(o.clone(), json!({"op": "order", "result": o})))
        }
        Command::Ball { group, radius } => {
            let b = ball(group.param()?, radius)?;
            let mut spheres = vec![0usize; radius as usize + 1];
            for i in 0..b.len() {
                spheres[b.dist_of(i) as usize] += 1;
            }
            let sizes: Vec<String> = spheres.iter().map(|c| c.to_string()).collect();
            let text = format!(
                "vertices {}\nedges {}\nspheres {}",
                b.len(),
                b.edge_indices().len(),
                sizes.join(" ")
            );
            let mut j = b.to_json();
            j["op"] = json!("ball");
            Ok(Output::ok(text, j))
        }
        Command::Dot {
            group,
            radius,
            subset,
            output,
        } => {
            let p = group.param()?;
            let b = ball(p, radius)?;
            let dot = if subset.given() {
                let e = subset.build(p)?;
                let member = |x: &NormalForm| e.contains(x).unwrap_or(false);
                export_dot(&b, Some(&member))
            } else {
                export_dot(&b, None)
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, &dot).map_err(|e| {
                        Error::InvalidParam(format!("cannot write {}: {e}", path.display()))
                    })?;
                    let text = format!("wrote {}", path.display());
                    Ok(Output::ok(
                        text,
                        json!({"op": "dot", "path": path.display().to_string()}),
                    ))
                }
                None => Ok(Output::ok(dot.clone(), json!({"op": "dot", "dot": dot}))),
            }
        }
        Command::WsMember {
            group,
            subset,
            bfs,
            element: text,
        } => {
            let p = group.param()?;
            let e = subset.build(p)?;
            let x = element(&text, p)?;
            let member = if bfs {
                let cap = vertex_cap()?;
                e.contains_bfs(&x, None, cap)?
            } else {
                e.contains(&x)?
            };
            Ok(Output::ok(
                member.to_string(),
                json!({"op": "ws-member", "subset": e.descriptor(), "element": x, "member": member}),
            ))
        }
        Command::WsVerify {
            group,
            subset,
            radius,
        } => ws_verify(group.param()?, &subset, radius),
        Command::WsList { group } => {
            let p = group.param()?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, e) in enumerate_cut_candidates(p)?.iter().enumerate() {
                let pair = e.removable_points()?;
                let ws = pair.a != pair.b;
                let cuts = e.cut_pair().expect("candidates are cut subsets");
                let _ = writeln!(
                    text,
                    "ell={} gcut={} hcut={} a={} b={} ws={}",
                    i + 1,
                    cuts.gcut,
                    cuts.hcut,
                    pair.a,
                    pair.b,
                    ws
                );
                rows.push(json!({
                    "ell": i + 1,
                    "gcut": cuts.gcut,
                    "hcut": cuts.hcut,
                    "a": pair.a,
                    "b": pair.b,
                    "ws": ws,
                }));
            }
            Ok(Output::ok(
                text,
                json!({"op": "ws-list", "param": p, "candidates": rows}),
            ))
        }
        Command::WsNormalize { group, subset } => {
            let e = subset.build(group.param()?)?;
            let (ell, u) = e.normalize()?;
            Ok(Output::ok(
                format!("ell={ell} translate={u}"),
                json!({"op": "ws-normalize", "ell": ell, "translate": u}),
            ))
        }
        Command::Loops { group, radius } => {
            let r = minimal_loops(&ball(group.param()?, radius)?)?;
            let opt = |v: Option<usize>| v.map_or("none".to_string(), |n| n.to_string());
            let text = format!(
                "girth {}\nexponent {}\nloops {}\nrelator_labels {}\ntranslate_unique {}\nrepresentative {}",
                opt(r.girth),
                opt(r.exponent),
                r.loop_count,
                r.relator_labels,
                r.translate_unique,
                r.representative_word.as_deref().unwrap_or("none"),
            );
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["op"] = json!("loops");
            Ok(Output::ok(text, j))
        }
        Command::Classify { word } => {
            let w = Word::parse(&word, Alphabet::GH)?;
            let class = classify_word(&w)?;
            let fork = find_fork(&w)?;
            let mut text = class.to_string();
            if let Some(f) = &fork {
                let _ = write!(
                    text,
                    "\nfork {} at {} (after {}) and {} (after {})",
                    f.label.as_char(),
                    f.first,
                    f.first_previous,
                    f.second,
                    f.second_previous
                );
            }
            let family = class != WordClass::Bad;
            Ok(Output::ok(
                text,
                json!({"op": "classify", "word": w.to_string(), "class": class.to_string(), "family": family, "fork": fork}),
            ))
        }
        Command::ForkLemma { max_len } => {
            if max_len == 0 {
                return Err(Error::InvalidParam("--max-len must be at least 1".into()).into());
            }
            let r = verify_fork_lemma(max_len);
            let text = format!(
                "{} words={} bad={} counterexamples={} family_with_fork={}",
                status_word(r.status),
                r.words_checked,
                r.bad_words,
                r.counterexamples.len(),
                r.family_with_fork.len()
            );
            Ok(Output {
                counterexample: r.status == Status::Fail,
                text,
                json: json!({
                    "op": "fork-lemma",
                    "status": r.status,
                    "max_len": r.max_len,
                    "words_checked": r.words_checked,
                    "bad_words": r.bad_words,
                    "witnesses": r.counterexamples,
                    "family_with_fork": r.family_with_fork,
                }),
            })
        }
        Command::Charge {
            group,
            subset,
            gamma,
        } => {
            let p = group.param()?;
            let e = subset.build(p)?;
            let r = charge(&e, &element(&gamma, p)?)?;
            let list = |v: &[NormalForm]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let text = format!(
                "f {}\noutflow {} [{}]\ninflow {} [{}]",
                r.f,
                r.outflow,
                list(&r.out_set),
                r.inflow,
                list(&r.in_set)
            );
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["op"] = json!("charge");
            j["status"] = json!("pass");
            j["witnesses"] = json!([]);
            Ok(Output::ok(text, j))
        }
        Command::FreeCheck { group, max_len } => {
            if max_len == 0 {
                return Err(Error::InvalidParam("--max-len must be at least 1".into()).into());
            }
            let r = free_pair_check(group.param()?, max_len);
            let mut text = format!("{} words={}", status_word(r.status), r.words_checked);
            for w in &r.witnesses {
                let _ = write!(text, "\ntrivial {w}");
            }
            Ok(Output {
                counterexample: r.status == Status::Fail,
                text,
                json: json!({
                    "op": "free-check",
                    "status": r.status,
                    "param": r.param,
                    "max_len": r.max_len,
                    "words_checked": r.words_checked,
                    "witnesses": r.witnesses,
                }),
            })
        }
        Command::Example1Check { group, radius } => {
            let p = group.param()?;
            let b = ball(p, radius)?;
            let g = NormalForm::g(p);
            let h = NormalForm::h(p);
            let pos = example1_subset(p);
            let lit = example1_literal_subset(p);
            let reports = [
                (
                    "positive g",
                    verify_translation_identity_on(&b, &pos, Label::G, &g)?,
                ),
                (
                    "positive h",
                    verify_translation_identity_on(&b, &pos, Label::H, &h)?,
                ),
                (
                    "literal g",
                    verify_translation_identity_on(&b, &lit, Label::G, &g)?,
                ),
            ];
            let mut text = String::new();
            for (name, r) in &reports {
                let _ = writeln!(text, "{name}: {}", report_line(r));
            }
            let failed = reports[0].1.status == Status::Fail || reports[1].1.status == Status::Fail;
            Ok(Output {
                counterexample: failed,
                text,
                json: json!({
                    "op": "example1-check",
                    "status": if failed { Status::Fail } else { Status::Pass },
                    "positive_g": reports[0].1,
                    "positive_h": reports[1].1,
                    "literal_g": reports[2].1,
                }),
            })
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn report_line(r: &VerificationReport) -> String {
    let mut line = format!(
        "{} {}E = E \\ {{{}}} checked={}",
        status_word(r.status),
        r.label,
        r.claimed,
        r.checked
    );
    if !r.witnesses.is_empty() {
        let ws: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
        let _ = write!(line, " witnesses={}", ws.join(" "));
    }
    line
}

fn ws_verify(p: GroupParam, subset: &SubsetArgs, radius: u32) -> Result<Output, Failure> {
    let e = subset.build(p)?;
    let pair = e.removable_points()?;
    let b = ball(p, radius)?;
    let rg = verify_translation_identity_on(&b, &e, Label::G, &pair.a)?;
    let rh = verify_translation_identity_on(&b, &e, Label::H, &pair.b)?;
    let ws = pair.a != pair.b;
    let mut text = format!(
        "a = {}\nb = {}\n{}\n{}\n",
        pair.a,
        pair.b,
        report_line(&rg),
        report_line(&rh)
    );
    text.push_str(if ws { "wS-subset" } else { "not a wS-subset" });
    let failed = rg.status == Status::Fail || rh.status == Status::Fail;
    Ok(Output {
        counterexample: failed,
        text,
        json: json!({
            "op": "ws-verify",
            "subset": e.descriptor(),
            "status": if failed { Status::Fail } else { Status::Pass },
            "a": pair.a,
            "b": pair.b,
            "ws": ws,
            "g": rg,
            "h": rh,
            "witnesses": rg.witnesses.iter().chain(&rh.witnesses).collect::<Vec<_>>(),
        }),
    })
}
