use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fillsys::claims::{
    emit_report, estimate_g0, run_claim_suite, ReportFormat, SRBoundFunction, Status, SuiteOptions,
};
use fillsys::constructions::{
    attach_handles, cap_with_hemisphere, cylinder_hemisphere_filling, glue, hemisphere_mesh,
    GluingMode, GluingSpec,
};
use fillsys::pi1::Pi1Engine;
use fillsys::surface::{read_surface, write_surface};
use fillsys::systole::{brute_force_systole, is_isometric_filling, systole, FillingInstance};
use fillsys::{Filling, Surface};

#[derive(Parser)]
#[command(
    name = "fillsys",
    version,
    about = "Systoles and isometric fillings on triangulated surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a surface file describes a valid surface.
    Validate { file: PathBuf },
    /// Print topology, area and boundary data.
    Info { file: PathBuf },
    /// Shortest non-contractible edge loop.
    Systole {
        file: PathBuf,
        /// Use the exhaustive search (small surfaces only).
        #[arg(long)]
        brute_force: bool,
        /// Length cap for the exhaustive search (default: fast systole).
        #[arg(long)]
        cap: Option<f64>,
    },
    /// Glue boundary arcs of a filling into a closed surface.
    Glue {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Position of q, or `auto` for the systole.
        #[arg(long, default_value = "auto")]
        s: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Close a filling with a hemisphere.
    Cap {
        file: PathBuf,
        /// Boundary segments of the hemisphere mesh.
        #[arg(short, long, default_value_t = 64)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a generated filling.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: GenParams,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the claim suite on a filling.
    Verify {
        file: PathBuf,
        /// Report path; `.csv` writes CSV, anything else JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Gluing parameter (default: the systole).
        #[arg(long)]
        s: Option<f64>,
        /// Boundary segments of the capping hemisphere.
        #[arg(long, default_value_t = 64)]
        cap_n: usize,
    },
    /// Threshold genus from a systolic-ratio bound.
    G0 {
        #[arg(long, default_value_t = 4.0 / 3.0)]
        cap: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_PI)]
        coef: f64,
        #[arg(long, default_value_t = 1_000_000)]
        gmax: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Orientable,
    Nonorientable,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hemisphere,
    Cylinder,
    Handles,
}

#[derive(Args)]
struct GenParams {
    /// Boundary length.
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    length: f64,
    /// Boundary segments.
    #[arg(short, long, default_value_t = 64)]
    n: usize,
    /// Cylinder height.
    #[arg(long, default_value_t = 0.0)]
    height: f64,
    /// Number of handles.
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Handle size.
    #[arg(long, default_value_t = 0.05)]
    scale: f64,
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("SSL_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring SSL_THREADS={v:?}"),
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Surface> {
    read_surface(path).with_context(|| format!("reading {}", path.display()))
}

fn load_filling(path: &Path) -> Result<Filling> {
    Ok(FillingInstance::new(load(path)?)?)
}

fn save(surface: &Surface, path: &Path) -> Result<()> {
    write_surface(surface, path).with_context(|| format!("writing {}", path.display()))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Validate { file } => {
            let s = load(&file)?;
            let t = s.topology();
            println!(
                "valid: V={} E={} F={} chi={}",
                s.vertex_count(),
                s.edge_count(),
                s.face_count(),
                t.euler_char
            );
        }
        Command::Info { file } => {
            let s = load(&file)?;
            let t = s.topology();
            println!(
                "vertices {}  edges {}  faces {}",
                s.vertex_count(),
                s.edge_count(),
                s.face_count()
            );
            println!("euler characteristic {}", t.euler_char);
            println!("orientable {}", t.orientable);
            println!("boundary components {}", t.boundary_count);
            let label = if t.orientable { "genus" } else { "crosscaps" };
            println!("{label} {}", t.genus_or_crosscap);
            println!("area {}", s.area());
            let engine = Pi1Engine::new(&s)?;
            println!(
                "fundamental group {:?}, {} generators",
                engine.kind(),
                engine.basis().generators.len()
            );
            if let Ok(f) = FillingInstance::new(s.clone()) {
                let l = f.length();
                println!("boundary length {l}");
                println!("L^2/2pi {}", l * l / std::f64::consts::TAU);
                println!(
                    "area below L^2/2pi {}",
                    fillsys::claims::check_membership(&f)
                );
                let audit = is_isometric_filling(&f, 0.02 * l);
                println!(
                    "isometry deficit {} (tol {}): {}",
                    audit.max_deficit, audit.tol, audit.passes
                );
            }
        }
        Command::Systole {
            file,
            brute_force,
            cap,
        } => {
            let s = load(&file)?;
            let r = if brute_force {
                let cap = match cap {
                    Some(c) => c,
                    None => systole(&s)?.length * (1.0 + 1e-9),
                };
                brute_force_systole(&s, cap)?
            } else {
                systole(&s)?
            };
            println!("length {}", r.length);
            println!("base vertex {}", r.base_vertex);
            let vs: Vec<String> = r
                .edge_loop
                .vertices(&s)
                .iter()
                .map(|v| v.to_string())
                .collect();
            println!("vertices {}", vs.join(" "));
            println!("certificate {:?}", r.certificate.certificate);
            println!("systolic ratio {}", r.length * r.length / s.area());
        }
        Command::Glue {
            file,
            mode,
            s,
            output,
        } => {
            let f = load_filling(&file)?;
            let spec = if s == "auto" {
                GluingSpec::auto(&f)?
            } else {
                let v: f64 = s
                    .parse()
                    .with_context(|| format!("--s {s:?} is neither a number nor `auto`"))?;
                GluingSpec::new(v, f.length())?
            };
            let mode = match mode {
                Mode::Orientable => GluingMode::Orientable,
                Mode::Nonorientable => GluingMode::NonOrientable,
            };
            let g = glue(&f, spec, mode)?;
            if spec.clamped {
                eprintln!(
                    "note: s clamped to {} (systole exceeds the admissible range)",
                    spec.s
                );
            }
            save(&g.surface, &output)?;
            println!(
                "s {}  chi {}  pq loop length {}",
                spec.s,
                g.surface.topology().euler_char,
                g.pq_loop.length
            );
        }
        Command::Cap { file, n, output } => {
            let f = load_filling(&file)?;
            let c = cap_with_hemisphere(&f, n)?;
            save(&c.surface, &output)?;
            println!(
                "chi {}  area {}",
                c.surface.topology().euler_char,
                c.surface.area()
            );
        }
        Command::Generate {
            kind,
            params,
            output,
        } => {
            let f = match kind {
                Kind::Hemisphere => hemisphere_mesh(params.length, params.n)?,
                Kind::Cylinder => {
                    cylinder_hemisphere_filling(params.length, params.height, params.n)?
                }
                Kind::Handles => {
                    let base = cylinder_hemisphere_filling(params.length, params.height, params.n)?;
                    let h = attach_handles(&base, params.genus, params.scale)?;
                    println!("area excess {}  constant {}", h.excess, h.constant);
                    h.filling
                }
            };
            save(&f.surface, &output)?;
            println!(
                "genus {}  boundary length {}  area {}",
                f.genus,
                f.length(),
                f.area()
            );
        }
        Command::Verify {
            file,
            report,
            s,
            cap_n,
        } => {
            let f = load_filling(&file)?;
            let opts = SuiteOptions {
                s,
                cap_segments: cap_n,
                ..SuiteOptions::default()
            };
            let r = run_claim_suite(&f, &opts)?;
            for c in &r.claims {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                let num = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
                println!(
                    "{status} {:<9} {} {} {}  {}",
                    c.id,
                    num(c.lhs),
                    c.relation.symbol(),
                    num(c.rhs),
                    c.note
                );
            }
            if let Some(path) = report {
                emit_report(&r, ReportFormat::from_path(&path), &path)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if !r.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::G0 { cap, coef, gmax } => {
            if gmax < 2 {
                bail!("--gmax must be at least 2");
            }
            match estimate_g0(&SRBoundFunction { cap, coef }, gmax) {
                Some(g) => println!("g0 = {g}"),
                None => println!("g0 not found up to {gmax}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
