use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use pwt::bib::{solve_exact_with, SolveOptions};
use pwt::bounds::{
    build_chord_breakpoints, build_tangent_breakpoints, solve_lower_bound, solve_upper_bound,
};
use pwt::generator::{generate, ItemClass};
use pwt::io::{
    parse_instance, parse_solution, parse_tour, write_instance, write_solution, InstanceFile,
    SolutionRecord,
};
use pwt::mipexport::export_mip;
use pwt::numfmt::sig12;
use pwt::oracle::brute_force;
use pwt::preprocess::run_preprocessing;
use pwt::problem::{evaluate_objective, is_feasible, PackingPlan};
use pwt::Error;

#[derive(Parser)]
#[command(name = "pwt", version, about = "Solvers for the packing-while-traveling problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    /// Chord model: lower bound.
    Chord,
    /// Tangent model: upper bound.
    Tangent,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenClass {
    #[value(name = "uncorr")]
    Uncorr,
    #[value(name = "uncorr-s-w")]
    UncorrSW,
    #[value(name = "b-s-corr")]
    BSCorr,
}

impl From<GenClass> for ItemClass {
    fn from(c: GenClass) -> ItemClass {
        match c {
            GenClass::Uncorr => ItemClass::Uncorrelated,
            GenClass::UncorrSW => ItemClass::SimilarWeights,
            GenClass::BSCorr => ItemClass::BoundedStrongCorr,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Label compulsory and unprofitable items and report the reduction.
    Preprocess {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Piecewise-linear lower (chord) or upper (tangent) bound.
    Bounds {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        lambda: usize,
        #[arg(long, value_enum)]
        flavor: Flavor,
        /// Drop the integrality constraints on the selection variables.
        #[arg(long)]
        relax: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Include the wall time in the output record.
        #[arg(long)]
        emit_timing: bool,
    },
    /// Exact branch-infer-and-bound solve.
    Solve {
        /// One or more instance files; several run as a batch.
        #[arg(long, required = true, num_args = 1..)]
        instance: Vec<PathBuf>,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        lambda: usize,
        /// Seconds before the search returns its incumbent.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Evaluate the node bound only at every k-th depth.
        #[arg(long, default_value_t = 1)]
        ub_stride: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Directory for per-instance outputs in batch mode.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Concurrent batch workers.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        emit_timing: bool,
    },
    /// Emit the linearized model for external MIP solvers.
    ExportMip {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        lambda: usize,
        /// Add the reformulation-linearization rows.
        #[arg(long)]
        rlt: bool,
        /// Model file; metadata lands next to it with `.meta` appended.
        #[arg(long)]
        output: PathBuf,
    },
    /// Brute-force optimum of a small instance.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a benchmark-style instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cities: usize,
        #[arg(long)]
        items_per_city: usize,
        #[arg(long = "type", value_enum)]
        class: GenClass,
        #[arg(long, default_value_t = 6)]
        capacity_class: u32,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-evaluate a solution record against its instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(long)]
        solution: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PWT_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse { .. } => ExitCode::from(3),
                _ => ExitCode::from(4),
            }
        }
    }
}

fn load(instance: &Path, route: Option<&Path>) -> Result<InstanceFile, Error> {
    let text = std::fs::read_to_string(instance)?;
    let tour = match route {
        Some(r) => Some(parse_tour(&std::fs::read_to_string(r)?)?),
        None => None,
    };
    parse_instance(&text, tour.as_deref())
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Preprocess { instance, route, output } => {
            let file = load(&instance, route.as_deref())?;
            let red = run_preprocessing(&file.instance);
            let ids = |list: Vec<usize>| {
                let mut v: Vec<usize> = list.iter().map(|&e| file.file_ids[e]).collect();
                v.sort_unstable();
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            };
            let doc = format!(
                "format-version=1\ninstance={}\nm={}\nundecided={}\nalpha={}\nversion={}\ncompulsory={}\nunprofitable={}\n",
                file.name,
                file.instance.item_count(),
                red.undecided.len(),
                sig12(red.alpha),
                if red.unconstrained { "u" } else { "c" },
                ids(red.compulsory_ids()),
                ids(red.unprofitable_ids()),
            );
            emit(output.as_deref(), &doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { instance, route, lambda, flavor, relax, output, emit_timing } => {
            let file = load(&instance, route.as_deref())?;
            let red = run_preprocessing(&file.instance);
            let started = std::time::Instant::now();
            let mut record = SolutionRecord {
                instance: file.name.clone(),
                lambda: Some(lambda),
                alpha: Some(red.alpha),
                ..Default::default()
            };
            match flavor {
                Flavor::Chord => {
                    let lb = solve_lower_bound(&file.instance, &red, lambda, !relax)?;
                    record.algorithm = format!("lb{lambda}{}", if relax { "-relaxed" } else { "" });
                    record.objective = lb.value;
                    record.plan = file.plan_file_ids(&lb.plan);
                    record.beta = Some(lb.beta);
                }
                Flavor::Tangent => {
                    let ub = solve_upper_bound(&file.instance, &red, lambda, !relax, &[])?;
                    let chord = build_chord_breakpoints(&file.instance, &red, lambda)?;
                    let tangent = build_tangent_breakpoints(&chord);
                    record.algorithm = format!("ub{lambda}{}", if relax { "-relaxed" } else { "" });
                    record.objective = ub;
                    record.beta = Some(tangent.beta);
                }
            }
            if emit_timing {
                record.time_seconds = Some(started.elapsed().as_secs_f64());
            }
            emit(output.as_deref(), &write_solution(&record))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            instance,
            route,
            lambda,
            time_limit,
            ub_stride,
            output,
            output_dir,
            jobs,
            emit_timing,
        } => {
            let options = SolveOptions {
                lambda,
                lb_lambda: 100,
                ub_stride,
                time_limit: time_limit.map(Duration::from_secs_f64),
            };
            if instance.len() == 1 {
                let (record, proven) =
                    solve_one(&instance[0], route.as_deref(), &options, emit_timing)?;
                emit(output.as_deref(), &write_solution(&record))?;
                return Ok(if proven { ExitCode::SUCCESS } else { ExitCode::from(2) });
            }
            let dir = output_dir
                .ok_or_else(|| Error::Unsupported("batch runs need --output-dir".to_string()))?;
            std::fs::create_dir_all(&dir)?;
            let jobs = jobs.max(1);
            let queue = std::sync::Mutex::new(instance.iter().cloned().enumerate());
            let results = std::sync::Mutex::new(Vec::new());
            std::thread::scope(|scope| {
                for _ in 0..jobs {
                    scope.spawn(|| loop {
                        let next = queue.lock().unwrap().next();
                        let Some((k, path)) = next else {
                            break;
                        };
                        let out = solve_one(&path, route.as_deref(), &options, emit_timing);
                        results.lock().unwrap().push((k, path, out));
                    });
                }
            });
            let mut results = results.into_inner().unwrap();
            results.sort_by_key(|(k, _, _)| *k);
            let mut all_proven = true;
            for (_, path, out) in results {
                let (record, proven) = out?;
                all_proven &= proven;
                let stem = path.file_stem().unwrap_or_default().to_string_lossy().to_string();
                std::fs::write(dir.join(format!("{stem}.sol")), write_solution(&record))?;
                info!("solved {} (proven: {proven})", path.display());
            }
            Ok(if all_proven { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::ExportMip { instance, route, lambda, rlt, output } => {
            let file = load(&instance, route.as_deref())?;
            let red = run_preprocessing(&file.instance);
            let export = export_mip(&file.instance, &red, &file.name, lambda, rlt)?;
            std::fs::write(&output, &export.document)?;
            let mut meta_path = output.into_os_string();
            meta_path.push(".meta");
            std::fs::write(meta_path, export.metadata)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { instance, route, output } => {
            let file = load(&instance, route.as_deref())?;
            let (plan, objective) = brute_force(&file.instance)?;
            let record = SolutionRecord {
                instance: file.name.clone(),
                algorithm: "oracle".to_string(),
                objective,
                plan: file.plan_file_ids(&plan),
                proven_optimal: true,
                ..Default::default()
            };
            emit(output.as_deref(), &write_solution(&record))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { seed, cities, items_per_city, class, capacity_class, name, output } => {
            let class: ItemClass = class.into();
            let inst = generate(seed, cities, items_per_city, class, capacity_class)?;
            let name = name.unwrap_or_else(|| {
                format!(
                    "pwt_{}_n{cities}_m{items_per_city}_c{capacity_class}_s{seed}",
                    class.name()
                )
            });
            let text = write_instance(&inst, &name, class.name())?;
            emit(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, route, solution } => {
            let file = load(&instance, route.as_deref())?;
            let record = parse_solution(&std::fs::read_to_string(solution)?)?;
            let ids = file.internal_ids(&record.plan)?;
            let plan = PackingPlan::from_ids(&file.instance, &ids);
            if !is_feasible(&file.instance, &plan) {
                return Err(Error::invariant(format!(
                    "plan weight {} exceeds capacity {}",
                    plan.total_weight(),
                    file.instance.capacity()
                )));
            }
            let value = evaluate_objective(&file.instance, &plan);
            let tol = 1e-9 * value.abs().max(1.0);
            if (value - record.objective).abs() <= tol {
                println!("ok: objective {} re-evaluates exactly", sig12(value));
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Error::invariant(format!(
                    "recorded objective {} but the plan evaluates to {}",
                    sig12(record.objective),
                    sig12(value)
                )))
            }
        }
    }
}

fn solve_one(
    path: &Path,
    route: Option<&Path>,
    options: &SolveOptions,
    emit_timing: bool,
) -> Result<(SolutionRecord, bool), Error> {
    let file = load(path, route)?;
    let red = run_preprocessing(&file.instance);
    let chord = build_chord_breakpoints(&file.instance, &red, options.lambda)?;
    let sol = solve_exact_with(&file.instance, &red, options, None)?;
    let rho = if sol.objective.abs() > 1e-12 {
        Some(sol.root_lower_bound / sol.objective)
    } else {
        None
    };
    let record = SolutionRecord {
        instance: file.name.clone(),
        algorithm: "bib".to_string(),
        lambda: Some(options.lambda),
        objective: sol.objective,
        plan: file.plan_file_ids(&sol.plan),
        proven_optimal: sol.proven,
        alpha: Some(red.alpha),
        beta: Some(chord.beta),
        rho,
        branches: Some(sol.stats.branches),
        fails: Some(sol.stats.fails),
        ub_success: Some(sol.stats.ub_runs_success),
        ub_total: Some(sol.stats.ub_runs_total),
        time_seconds: emit_timing.then_some(sol.stats.wall_time.as_secs_f64()),
    };
    Ok((record, sol.proven))
}
