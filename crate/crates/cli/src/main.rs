use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ree_unital::design::{find_dual_kn, isomorphism_search_counted, verify_2design, DualKnOutcome};
use ree_unital::format::{read_any, write_incidence, FieldInfo, IncidenceJson, SCHEMA_VERSION};
use ree_unital::report::Report;
use ree_unital::rt::{intersection_search, omega_fix, string_of_pearls};
use ree_unital::unital_s::Catalog;
use ree_unital::{IncidenceStructure, RootGroup, RtUnital, UnitalS};

#[derive(Parser)]
#[command(name = "ree-unital", version, about = "Build and check Ree-Tits unitals of order 3^(2l+1)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel loops.
    #[arg(long, env = "REE_UNITAL_WORKERS", default_value_t = 1, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the unital S built from SL(2,8).
    BuildSl28,
    /// Emit RT(q) for q = 3 or 27.
    BuildRt {
        #[arg(long)]
        q: u32,
    },
    /// Check the 2-design axioms of an incidence file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Re-derive the explicit statements about S and print the named matrices.
    #[command(alias = "dump-catalog")]
    Catalog,
    /// Search for n blocks forming the dual of the complete graph K_n.
    FindDualKn {
        #[arg(long)]
        n: usize,
        #[arg(long = "in")]
        input: PathBuf,
        /// Backtracking nodes to visit before giving up.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Search for an isomorphism between two incidence files.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Solve the intersection equation for Fix ι and its Λ-translates.
    SearchIntersections {
        #[arg(long)]
        q: u32,
    },
    /// Translate the super O'Nan configuration along Λ.
    Pearls {
        #[arg(long)]
        q: u32,
    },
    /// Structural checks on the root group and ω.
    StructureChecks {
        #[arg(long)]
        q: u32,
    },
    /// List the fixed points of ω.
    OmegaFix {
        #[arg(long)]
        q: u32,
    },
}

enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn code(&self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 3,
        }
    }
}

/// Usage-level problems: bad parameters or unreadable input.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn require_q(q: u32, allowed: &[u32]) -> Result<RootGroup> {
    if !allowed.contains(&q) {
        return Err(usage(format!("--q {q} is not supported here; expected one of {allowed:?}")));
    }
    Ok(RootGroup::for_order(q)?)
}

fn read_structure(path: &Path) -> Result<(IncidenceStructure, Option<FieldInfo>)> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    read_any(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

struct Ctx {
    format: Format,
    out: Box<dyn Write + Send>,
    to_file: bool,
}

impl Ctx {
    fn json(&mut self, mut v: Value) -> Result<()> {
        if let Value::Object(map) = &mut v {
            map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        }
        serde_json::to_writer_pretty(&mut self.out, &v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn report(&mut self, title: &str, rep: &Report) -> Result<Status> {
        match self.format {
            Format::Json => self.json(json!({ "title": title, "passed": rep.all_passed(), "checks": rep.items }))?,
            Format::Text => {
                writeln!(self.out, "{title}")?;
                for item in &rep.items {
                    let mark = if item.passed { "PASS" } else { "FAIL" };
                    if item.detail.is_empty() {
                        writeln!(self.out, "  {mark}  {}", item.name)?;
                    } else {
                        writeln!(self.out, "  {mark}  {} ({})", item.name, item.detail)?;
                    }
                }
            }
        }
        Ok(Status::from_bool(rep.all_passed()))
    }

    fn incidence(&mut self, s: &IncidenceStructure, field: Option<&FieldInfo>) -> Result<()> {
        match self.format {
            Format::Text => write_incidence(&mut self.out, s, field)?,
            Format::Json => {
                serde_json::to_writer(&mut self.out, &IncidenceJson::new(s, field))?;
                writeln!(self.out)?;
            }
        }
        Ok(())
    }
}

fn run(cmd: Command, ctx: &mut Ctx) -> Result<Status> {
    match cmd {
        Command::BuildSl28 => {
            let s = UnitalS::build()?;
            ctx.incidence(s.structure(), None)?;
            Ok(Status::Pass)
        }
        Command::BuildRt { q } => {
            let g = require_q(q, &[3, 27])?;
            let rt = RtUnital::build(&g)?;
            let st = rt.structure();
            // RT(27) has half a million blocks; only write them to a file.
            if q == 27 && !ctx.to_file {
                match ctx.format {
                    Format::Json => ctx.json(json!({ "q": q, "v": st.v(), "b": st.b(), "written": false }))?,
                    Format::Text => {
                        writeln!(ctx.out, "RT({q}): v={} b={}; pass --out to write the incidence file", st.v(), st.b())?
                    }
                }
            } else {
                ctx.incidence(st, Some(&FieldInfo::of(g.field())))?;
            }
            Ok(Status::Pass)
        }
        Command::Verify { input } => {
            let (s, _) = read_structure(&input)?;
            match verify_2design(&s) {
                Ok(p) => {
                    let unital = p.lambda == 1 && p.k >= 3 && p.v == (p.k - 1).pow(3) + 1;
                    match ctx.format {
                        Format::Json => ctx.json(json!({
                            "design": true, "v": p.v, "b": p.b, "r": p.r, "k": p.k, "lambda": p.lambda,
                            "unital_order": unital.then_some(p.k - 1),
                        }))?,
                        Format::Text => {
                            writeln!(
                                ctx.out,
                                "parameters (v, b, r, k, lambda) = ({}, {}, {}, {}, {})",
                                p.v, p.b, p.r, p.k, p.lambda
                            )?;
                            if unital {
                                writeln!(ctx.out, "unital of order {}", p.k - 1)?;
                            }
                        }
                    }
                    Ok(Status::Pass)
                }
                Err(e) => {
                    match ctx.format {
                        Format::Json => ctx.json(json!({ "design": false, "error": e.to_string() }))?,
                        Format::Text => writeln!(ctx.out, "not a 2-design: {e}")?,
                    }
                    Ok(Status::Fail)
                }
            }
        }
        Command::Catalog => {
            let s = UnitalS::build()?;
            let cat = Catalog::new();
            let mut rep = s.verify_explicit_catalog();
            if let Err(e) = s.onan_and_super_onan() {
                rep.check("explicit configurations", false, e.to_string());
            }
            match ctx.format {
                Format::Json => {
                    let matrices: Vec<Value> =
                        cat.entries().iter().map(|(n, m)| json!({ "name": n, "matrix": m.to_string() })).collect();
                    ctx.json(json!({ "matrices": matrices, "passed": rep.all_passed(), "checks": rep.items }))?;
                    Ok(Status::from_bool(rep.all_passed()))
                }
                Format::Text => {
                    let width = cat.entries().iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0);
                    for (name, m) in cat.entries() {
                        let pad = width - name.chars().count();
                        writeln!(ctx.out, "{name}{}  {m}", " ".repeat(pad))?;
                    }
                    writeln!(ctx.out)?;
                    ctx.report("checks", &rep)
                }
            }
        }
        Command::FindDualKn { n, input, budget } => {
            let (s, _) = read_structure(&input)?;
            if n < 3 {
                return Err(usage("--n must be at least 3"));
            }
            let res = find_dual_kn(&s, n, budget)?;
            let (label, status) = match &res.outcome {
                DualKnOutcome::Found(_) => ("found", Status::Pass),
                DualKnOutcome::NoneExists => ("none", Status::Pass),
                DualKnOutcome::Undecided => ("undecided", Status::Undecided),
            };
            let cfg = match &res.outcome {
                DualKnOutcome::Found(c) => Some(c),
                _ => None,
            };
            match ctx.format {
                Format::Json => ctx.json(json!({
                    "n": n, "outcome": label, "nodes": res.nodes,
                    "blocks": cfg.map(|c| &c.blocks), "points": cfg.map(|c| &c.points),
                }))?,
                Format::Text => match cfg {
                    Some(c) => {
                        writeln!(ctx.out, "dual K{n} found after {} nodes", res.nodes)?;
                        writeln!(ctx.out, "blocks {:?}", c.blocks)?;
                        writeln!(ctx.out, "points {:?}", c.points)?;
                    }
                    None if label == "none" => {
                        writeln!(ctx.out, "no dual K{n} exists (search exhausted after {} nodes)", res.nodes)?
                    }
                    None => writeln!(ctx.out, "undecided: budget of {budget} nodes exhausted")?,
                },
            }
            Ok(status)
        }
        Command::Iso { a, b } => {
            let (s1, _) = read_structure(&a)?;
            let (s2, _) = read_structure(&b)?;
            let (found, nodes) = isomorphism_search_counted(&s1, &s2);
            // Check the witness independently of the search.
            let found = found.filter(|bij| bij.is_isomorphism(&s1, &s2));
            match ctx.format {
                Format::Json => ctx.json(json!({
                    "isomorphic": found.is_some(), "nodes": nodes, "map": found.as_ref().map(|f| &f.map),
                }))?,
                Format::Text => match &found {
                    Some(bij) => {
                        writeln!(ctx.out, "isomorphism found after {nodes} nodes")?;
                        for (p, img) in bij.map.iter().enumerate() {
                            writeln!(ctx.out, "{p} -> {img}")?;
                        }
                    }
                    None => writeln!(ctx.out, "not isomorphic (search exhausted after {nodes} nodes)")?,
                },
            }
            Ok(Status::from_bool(found.is_some()))
        }
        Command::SearchIntersections { q } => {
            let g = require_q(q, &[3, 27, 243, 2187, 19683])?;
            let f = g.field();
            let sols = intersection_search(&g);
            let expected = sols.iter().all(|s| s.s.is_zero() || s.s == -f.one());
            match ctx.format {
                Format::Json => {
                    let list: Vec<Value> = sols
                        .iter()
                        .map(|s| json!({ "x": s.x.to_string(), "s": s.s.to_string(), "m": s.m.to_string() }))
                        .collect();
                    ctx.json(
                        json!({ "q": q, "field": f.header(), "solutions": list, "only_s_in_0_minus_1": expected }),
                    )?
                }
                Format::Text => {
                    for s in &sols {
                        writeln!(ctx.out, "x={} s={} m={}", s.x, s.s, s.m)?;
                    }
                }
            }
            Ok(Status::from_bool(expected))
        }
        Command::Pearls { q } => {
            let g = require_q(q, &[3, 27])?;
            let chain = string_of_pearls(&g)?;
            let sum = chain.summary(q);
            let ok = sum.configurations as u32 == q / 3
                && sum.union_points as u32 == 3 * q + 1
                && sum.union_blocks as u32 == q + 2
                && sum.all_share_tau_and_infinity;
            match ctx.format {
                Format::Json => ctx.json(serde_json::to_value(&sum)?)?,
                Format::Text => {
                    writeln!(ctx.out, "q={q}: {} super O'Nan configurations", sum.configurations)?;
                    writeln!(ctx.out, "union: {} points, {} blocks", sum.union_points, sum.union_blocks)?;
                    writeln!(ctx.out, "all share Fix tau, Fix tau^sigma and inf: {}", sum.all_share_tau_and_infinity)?;
                }
            }
            Ok(Status::from_bool(ok))
        }
        Command::StructureChecks { q } => {
            let g = require_q(q, &[3, 27])?;
            let scalars: Vec<_> = g.field().nonzero().collect();
            let mut rep = g.omega_checks(&scalars)?;
            rep.items.extend(g.structural_checks()?.items);
            ctx.report(&format!("root group, q={q}"), &rep)
        }
        Command::OmegaFix { q } => {
            let g = require_q(q, &[3, 27, 243])?;
            let fix = omega_fix(&g)?;
            match ctx.format {
                Format::Json => {
                    let pts: Vec<String> = fix.iter().map(|p| p.to_string()).collect();
                    ctx.json(json!({ "q": q, "count": fix.len(), "points": pts }))?
                }
                Format::Text => {
                    for p in &fix {
                        writeln!(ctx.out, "{p}")?;
                    }
                }
            }
            Ok(Status::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.max(1);
    let result = (|| -> Result<Status> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        let (out, to_file): (Box<dyn Write + Send>, bool) = match &cli.out {
            Some(p) => {
                let file = File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                (Box::new(BufWriter::new(file)), true)
            }
            None => (Box::new(BufWriter::new(io::stdout())), false),
        };
        let mut ctx = Ctx { format: cli.format, out, to_file };
        let status = pool.install(|| run(cli.command, &mut ctx))?;
        ctx.out.flush().context("flushing output")?;
        Ok(status)
    })();
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
