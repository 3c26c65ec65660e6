//! Command-line front end: verification suites, character lists,
//! restriction tables, and group/context dumps.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use orthochar::clifford::{PWorld, TypeTag};
use orthochar::matgrp::DEFAULT_ENUMERATION_BOUND;
use orthochar::ortho::{OrthoContext, World};
use orthochar::symbols::{rows_for, UnipotentLabel};
use orthochar::verify::{
    all_match, newdata::compute_new_pm_components, run_suite, Session, SuiteLevel,
};

#[derive(Parser)]
#[command(
    name = "orthochar",
    about = "Exact character theory of SO5(q) / SO7(q) and their maximal parabolic subgroups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (quick / standard / extended).
    Verify {
        #[arg(long, default_value = "standard")]
        suite: String,
        /// Write the reports as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the new SO7 pm-component data as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the irreducible characters of P_n(q) with their Clifford labels.
    IrrP {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Restrict a unipotent character to P and print its type components.
    Restrict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        /// A label like '[1,1,1]' or '[-,1^2,1]'.
        #[arg(long)]
        label: String,
    },
    /// Enumerate a group and print its order and class data as JSON.
    DumpGroup {
        /// One of: so, p, go-plus, go-minus.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Dump the parabolic-data inventory (orders, distinguished elements).
    Dump {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Verify the induced-character identities at (n, q).
    VerifyInduced {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Print the label / symbol / degree table for SO_n(q).
    SymbolsTable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute the Type pm components of the SO_7(2) restrictions (data
    /// beyond the published tables) and write them to a file.
    NewPmComponents {
        #[arg(long, default_value = "2")]
        q: usize,
        #[arg(long, default_value = "so7-pm-components.json")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Verify { suite, json, csv } => {
            let level = SuiteLevel::parse(&suite)
                .ok_or_else(|| format!("unknown suite level '{suite}'"))?;
            let reports = run_suite(level);
            for r in &reports {
                println!("{}", r.line());
            }
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&reports)?)?;
                println!("wrote {}", path.display());
            }
            if let Some(path) = csv {
                write_pm_csv(&path)?;
                println!("wrote {}", path.display());
            }
            Ok(if all_match(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::IrrP { n, q, json } => {
            let pw = build_pworld(n, q)?;
            let mut rows = Vec::new();
            println!("Irr(P_{n}({q})): {} characters", pw.irr_p.len());
            for irr in &pw.irr_p {
                let line = format!(
                    "type {} payload #{} degree {}",
                    irr.label.tag.symbol(),
                    irr.label.payload,
                    irr.cf.degree()
                );
                println!("  {line}");
                rows.push(json!({
                    "type": irr.label.tag.symbol(),
                    "payload": irr.label.payload,
                    "degree": irr.cf.degree().to_string(),
                    "values": irr.cf.values,
                }));
            }
            let mut doc = json!({ "irreducibles": rows });
            if n == 5 {
                // record which linear characters of the dihedral L^pm were
                // selected as nu_1 / nu_3, for reproducible comparisons
                for (tag, key) in [(TypeTag::Plus, "L_plus"), (TypeTag::Minus, "L_minus")] {
                    let names = orthochar::clifford::classify_pm(&pw, tag)?;
                    println!(
                        "{key}: trivial=#{} nu1=#{} nu2={:?} nu3={:?} deg2={:?}",
                        names.trivial, names.nu1, names.nu2, names.nu3, names.xi_indices
                    );
                    doc[key] = json!({
                        "trivial": names.trivial,
                        "nu1": names.nu1,
                        "nu2": names.nu2,
                        "nu3": names.nu3,
                        "degree_two": names.xi_indices,
                    });
                }
            }
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&doc)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrict { n, q, label } => {
            let label = UnipotentLabel::parse(&label)?;
            let session = Session::default();
            let pw = session.pworld(n, q)?;
            let uni = session.unipotent(n, q)?;
            let row = uni
                .find(&label)
                .ok_or_else(|| format!("{label} is not in the SO_{n} table"))?;
            let chi = uni.character(&pw, row);
            let res = chi.restrict(&pw.world.pd.p)?;
            let split = pw.component_split(&res)?;
            println!(
                "chi_{label} of SO_{n}({q}), degree {}, restricted to P:",
                chi.degree()
            );
            for tag in TypeTag::ALL {
                let t = tag.index();
                let names: Vec<String> = split.mults[t]
                    .iter()
                    .map(|&(p, m)| {
                        let d = pw.payload_degree(orthochar::clifford::IrrPLabel {
                            tag,
                            payload: p,
                        });
                        if m == 1 {
                            format!("#{p}(deg {d})")
                        } else {
                            format!("{m}*#{p}(deg {d})")
                        }
                    })
                    .collect();
                println!(
                    "  Type {}: theta(1) = {}; payload {}",
                    tag.symbol(),
                    split.payload_degrees[t],
                    if names.is_empty() {
                        "0".to_string()
                    } else {
                        names.join(" + ")
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpGroup { kind, n, q } => {
            let ctx = OrthoContext::build(if n % 2 == 1 { n } else { n + 1 }, q)?;
            let group = match kind.as_str() {
                "so" => ctx.so_group_dim(n, DEFAULT_ENUMERATION_BOUND)?,
                "p" => ctx.p_group(DEFAULT_ENUMERATION_BOUND)?,
                "go-plus" => orthochar::ortho::go_even_group(
                    &ctx.field,
                    n / 2,
                    orthochar::matgrp::FormKind::Plus,
                    ctx.nu,
                    DEFAULT_ENUMERATION_BOUND,
                )?,
                "go-minus" => orthochar::ortho::go_even_group(
                    &ctx.field,
                    n / 2,
                    orthochar::matgrp::FormKind::Minus,
                    ctx.nu,
                    DEFAULT_ENUMERATION_BOUND,
                )?,
                other => return Err(format!("unknown group kind '{other}'").into()),
            };
            let classes = group.classes();
            let doc = json!({
                "version": 1,
                "name": group.name,
                "n": group.n(),
                "q": q,
                "order": group.order,
                "generators": group.gens.iter().map(|&g| group.mat(g).digits()).collect::<Vec<_>>(),
                "classes": classes.classes.iter().map(|c| json!({
                    "rep": group.mat(c.rep).digits(),
                    "size": c.size,
                    "centralizer": c.centralizer,
                    "element_order": c.elem_order,
                    "power_map": c.power_map,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Dump { n, q } => {
            let world = World::build(n, q)?;
            let pd = &world.pd;
            let orders = |g: &Option<orthochar::matgrp::Group>| {
                g.as_ref().map(|g| g.order)
            };
            let doc = json!({
                "version": 1,
                "n": n,
                "q": q,
                "nu": world.ctx.nu,
                "nu_prime": world.ctx.nu_prime,
                "nu_double_prime": world.ctx.nu_pp,
                "b3": world.ctx.b3.digits(),
                "orders": {
                    "G": world.g.order,
                    "P": pd.p.order,
                    "U": pd.u.order,
                    "L": pd.l.order,
                    "L_prime": pd.l_prime.order,
                    "A": pd.a.order,
                    "P_tilde": orders(&pd.p_tilde),
                    "L_plus": pd.l_plus.order,
                    "L_minus": orders(&pd.l_minus),
                    "I0": orders(&pd.i0),
                    "I_plus": pd.i_plus.order,
                    "I_minus": orders(&pd.i_minus),
                },
                "weyl": {
                    "s": pd.weyl_s.digits(),
                    "t": pd.weyl_t.digits(),
                    "r": pd.weyl_r.as_ref().map(|r| r.digits()),
                },
                "lambda": {
                    "zero": pd.lambda0.w,
                    "plus": pd.lambda_plus.w,
                    "minus": pd.lambda_minus.w,
                },
                "orbit_sizes": pd.orbits.sizes,
                "z_centralizers": pd.z_centralizer_orders(),
                "generators": world.g.gens.iter().map(|&g| world.g.mat(g).digits()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyInduced { n, q } => {
            let session = Session::default();
            let pw = session.pworld(n, q)?;
            let l4 = session.cosets(n, q)?;
            use orthochar::clifford::{eligible_payloads, verify_induced_part, InducedPart};
            let parts: &[InducedPart] = if n == 7 {
                &[
                    InducedPart::A,
                    InducedPart::B,
                    InducedPart::C,
                    InducedPart::D,
                    InducedPart::E,
                ]
            } else {
                &[InducedPart::A, InducedPart::B, InducedPart::D]
            };
            let mut ok = true;
            for &part in parts {
                for payload in eligible_payloads(&pw, part) {
                    match verify_induced_part(&pw, &l4, part, payload) {
                        Ok(()) => println!("[PASS] part {part:?} payload {payload}"),
                        Err(e) => {
                            ok = false;
                            println!("[FAIL] part {part:?} payload {payload}: {e}");
                        }
                    }
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::SymbolsTable { n, q, json } => {
            let rows = rows_for(n);
            let mut out = Vec::new();
            println!("unipotent characters of SO_{n}({q}):");
            for r in &rows {
                let deg = r.degree.eval(q as i64);
                println!("  {:<12} {:<18} degree {}", r.label.to_string(), r.symbol.to_string(), deg);
                out.push(json!({
                    "label": r.label.to_string(),
                    "symbol": r.symbol.to_string(),
                    "degree": deg.to_string(),
                }));
            }
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&out)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::NewPmComponents { q, out } => {
            let session = Session::default();
            let pw = session.pworld(7, q)?;
            let uni = session.unipotent(7, q)?;
            let records = compute_new_pm_components(&pw, &uni)?;
            std::fs::write(&out, serde_json::to_string_pretty(&records)?)?;
            println!(
                "wrote {} (NEW data: pm payload multisets have no published ground truth)",
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_pworld(n: usize, q: usize) -> Result<std::sync::Arc<PWorld>, Box<dyn std::error::Error>> {
    let world = World::build(n, q)?;
    Ok(PWorld::build(&world)?)
}

fn write_pm_csv(path: &PathBuf) -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    let pw = session.pworld(7, 2)?;
    let uni = session.unipotent(7, 2)?;
    let records = compute_new_pm_components(&pw, &uni)?;
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "label,theta_plus_degree,theta_minus_degree,plus_payload,minus_payload")?;
    for r in records {
        let fmt = |entries: &[orthochar::verify::newdata::PayloadEntry]| {
            entries
                .iter()
                .map(|e| format!("{}x{}", e.multiplicity, e.name))
                .collect::<Vec<_>>()
                .join("+")
        };
        writeln!(
            f,
            "{},{},{},{},{}",
            r.label,
            r.theta_plus_degree,
            r.theta_minus_degree,
            fmt(&r.plus),
            fmt(&r.minus)
        )?;
    }
    Ok(())
}

