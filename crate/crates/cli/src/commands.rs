use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use lifted_walk::boundary::{BoundaryKind, BoundarySpec};
use lifted_walk::coin::{LiftMode, QubitState};
use lifted_walk::oracle::{self, System, DENSE_SITE_LIMIT, DENSE_STEP_LIMIT};
use lifted_walk::walk::{self, Lattice, LiftedState, Scaling, WaveState};
use serde::Serialize;

use crate::cli::{CompareArgs, RunArgs, Sites};
use crate::dataset::{self, Format, Row, SiteLabels};
use crate::figures::{self, FigureId, FigureRun};
use crate::initial::InitialSpec;
use crate::{CliError, Command};

/// Largest deviation `compare` accepts.
pub const COMPARE_TOLERANCE: f64 = 1e-9;
/// Largest dense/structural disagreement `bench` accepts before timing.
pub const BENCH_TOLERANCE: f64 = 1e-10;

/// Runs one command. `Ok(false)` means a check ran and failed.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Verify { seed, json } => verify(seed, json, out),
        Command::Run(args) => run(&args, out).map(|_| true),
        Command::Compare(args) => compare(&args, out),
        Command::Figure { id, output_dir } => figure(id, &output_dir, out).map(|_| true),
        Command::Bench {
            sites,
            steps,
            format,
        } => bench(&sites, &steps, format, out),
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    seed: u64,
    pass: bool,
    checks: Vec<CheckRow<'a>>,
}

fn verify(seed: u64, json: bool, out: &mut dyn Write) -> Result<bool, CliError> {
    let report = oracle::equivalence_suite(seed);
    let pass = report.all_pass();
    if json {
        let rows = report
            .checks
            .iter()
            .map(|c| CheckRow {
                name: c.name,
                residual: c.residual,
                tolerance: c.tolerance,
                pass: c.pass,
            })
            .collect();
        serde_json::to_writer_pretty(
            &mut *out,
            &VerifyReport {
                seed,
                pass,
                checks: rows,
            },
        )?;
        writeln!(out)?;
    } else {
        writeln!(out, "seed {seed}")?;
        writeln!(
            out,
            "{:<28} {:>12} {:>12}  result",
            "check", "residual", "tolerance"
        )?;
        for c in &report.checks {
            let result = if c.pass { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{:<28} {:>12.3e} {:>12.3e}  {result}",
                c.name, c.residual, c.tolerance
            )?;
        }
        writeln!(
            out,
            "{}",
            if pass {
                "all checks pass"
            } else {
                "some checks FAILED"
            }
        )?;
    }
    Ok(pass)
}

/// A lattice, its site labels and the start state placed on it.
pub struct Prepared {
    pub lattice: Lattice,
    pub labels: SiteLabels,
    pub boundary: BoundarySpec,
    pub sites: Vec<(usize, QubitState)>,
}

/// Resolves sites, boundary and start. Explicit site counts use labels
/// `1..=m`; `auto` uses `2n+3` sites labelled `-(n+1)..=n+1`.
pub fn prepare(
    steps: usize,
    sites: Sites,
    kind: BoundaryKind,
    initial: &InitialSpec,
) -> Result<Prepared, CliError> {
    let (lattice, labels) = match sites {
        Sites::Auto => {
            if kind != BoundaryKind::None {
                return Err(CliError::usage(
                    "sites",
                    "auto is only valid with --boundary none",
                ));
            }
            let (lattice, center) = Lattice::centered(steps);
            (
                lattice,
                SiteLabels {
                    first: -(center as i64),
                    sites: lattice.sites(),
                },
            )
        }
        Sites::Count(m) => {
            let lattice = Lattice::new(m)?;
            (lattice, SiteLabels { first: 1, sites: m })
        }
    };
    let boundary = BoundarySpec::new(kind);
    boundary.validate(&lattice)?;
    let state = initial.state();
    let sites = initial
        .sites()
        .map(|label| {
            labels.index(label).map(|k| (k, state)).ok_or_else(|| {
                CliError::usage(
                    "initial",
                    format!(
                        "site {label} is outside the labels {}..={}",
                        labels.first,
                        labels.last()
                    ),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(Prepared {
        lattice,
        labels,
        boundary,
        sites,
    })
}

/// Evolves a request and returns its per-site rows.
pub fn run_rows(
    steps: usize,
    sites: Sites,
    kind: BoundaryKind,
    initial: &InitialSpec,
    scaling: Scaling,
) -> Result<(Vec<Row>, Prepared), CliError> {
    let p = prepare(steps, sites, kind, initial)?;
    let mut state = LiftedState::from_sites(p.lattice, &p.sites, LiftMode::SignSplit, scaling)?;
    state.evolve(&walk::make_markov_step(p.lattice, p.boundary)?, steps)?;
    let rows = dataset::rows(&state, p.labels, 0..p.lattice.sites())?;
    Ok((rows, p))
}

fn write_to(
    path: Option<&Path>,
    rows: &[Row],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            dataset::write(&mut file, rows, format)?;
            file.flush()?;
        }
        None => dataset::write(&mut *out, rows, format)?,
    }
    Ok(())
}

fn run(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (rows, _) = run_rows(
        args.steps,
        args.sites,
        args.boundary,
        &args.initial,
        args.scaling.into(),
    )?;
    write_to(args.output.as_deref(), &rows, args.format, out)
}

/// Max deviation between the projected lifted walk and the unitary walk,
/// over both the structural engines and the dense operators.
pub fn compare_deviation(args: &CompareArgs) -> Result<f64, CliError> {
    if args.sites > walk::EQUIVALENCE_SITE_LIMIT {
        return Err(CliError::usage(
            "sites",
            format!(
                "at most {} sites can be compared densely",
                walk::EQUIVALENCE_SITE_LIMIT
            ),
        ));
    }
    if args.steps > walk::EQUIVALENCE_STEP_LIMIT {
        return Err(CliError::usage(
            "steps",
            format!(
                "at most {} steps can be compared densely",
                walk::EQUIVALENCE_STEP_LIMIT
            ),
        ));
    }
    let p = prepare(
        args.steps,
        Sites::Count(args.sites),
        args.boundary,
        &args.initial,
    )?;

    let mut lifted = LiftedState::from_sites(
        p.lattice,
        &p.sites,
        LiftMode::SignSplit,
        Scaling::PerStepSqrt2,
    )?;
    lifted.evolve(&walk::make_markov_step(p.lattice, p.boundary)?, args.steps)?;
    let mut wave = WaveState::from_sites(p.lattice, &p.sites)?;
    wave.evolve(&walk::make_unitary_step(p.lattice, p.boundary)?, args.steps)?;
    let structural = walk::max_abs_diff(lifted.project()?.amplitudes(), wave.amplitudes());

    let start =
        LiftedState::from_sites(p.lattice, &p.sites, LiftMode::SignSplit, Scaling::Unscaled)?;
    let dense = walk::lift_equivalence_residual(&start, args.steps, p.boundary)?;
    Ok(structural.max(dense))
}

fn compare(args: &CompareArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let deviation = compare_deviation(args)?;
    let pass = deviation < COMPARE_TOLERANCE;
    writeln!(
        out,
        "sites {} steps {} boundary {}: max deviation {deviation:.3e} (tolerance {COMPARE_TOLERANCE:e}) {}",
        args.sites,
        args.steps,
        args.boundary,
        if pass { "pass" } else { "FAIL" }
    )?;
    Ok(pass)
}

/// Rows of one figure dataset.
pub fn figure_rows(run: &FigureRun) -> Result<Vec<Row>, CliError> {
    let (mut rows, p) = run_rows(
        run.steps,
        run.sites,
        run.boundary,
        &run.initial,
        Scaling::PerStepSqrt2,
    )?;
    if run.normalize_classical {
        let start =
            LiftedState::from_sites(p.lattice, &p.sites, LiftMode::SignSplit, Scaling::Unscaled)?;
        let mass = start.population_total().re;
        for r in &mut rows {
            r.classical /= mass;
        }
    }
    if !run.core_only {
        return Ok(rows);
    }
    let n = run.steps as i64;
    let lo = p.labels.index(-n).expect("core labels lie on the lattice");
    let hi = p.labels.index(n).expect("core labels lie on the lattice");
    Ok(rows[lo..=hi].to_vec())
}

fn figure(id: FigureId, dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    for run in figures::registry(id) {
        let rows = figure_rows(&run)?;
        let path = dir.join(&run.file_name);
        write_to(Some(&path), &rows, Format::Csv, out)?;
        writeln!(
            out,
            "figure {id}: {} ({} steps, {} sites, boundary {}, initial {})",
            path.display(),
            run.steps,
            run.sites,
            run.boundary,
            run.initial
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub engine: &'static str,
    pub m: usize,
    pub n: usize,
    pub seconds: f64,
    pub steps_per_sec: f64,
}

impl BenchRow {
    fn new(engine: &'static str, m: usize, n: usize, seconds: f64) -> Self {
        Self {
            engine,
            m,
            n,
            seconds,
            steps_per_sec: if seconds > 0.0 {
                n as f64 / seconds
            } else {
                f64::INFINITY
            },
        }
    }
}

/// Times both engines from a point start in the middle of an open line.
/// The dense engine only runs where it fits (m <= 64, n <= 200), and there
/// its output is checked against the structural one before it is reported.
pub fn bench_rows(
    sites: &[usize],
    steps: &[usize],
) -> Result<(Vec<BenchRow>, Option<f64>), CliError> {
    let mut rows = Vec::new();
    let mut worst: Option<f64> = None;
    for &m in sites {
        let lattice = Lattice::new(m)?;
        let op = walk::make_markov_step(lattice, BoundarySpec::none())?;
        let start = LiftedState::point(
            lattice,
            m / 2,
            QubitState::real(1.0, 0.0),
            LiftMode::SignSplit,
            Scaling::Unscaled,
        )?;
        for &n in steps {
            let mut state = start.clone();
            let t = Instant::now();
            state.evolve(&op, n)?;
            rows.push(BenchRow::new("structural", m, n, t.elapsed().as_secs_f64()));

            if m <= DENSE_SITE_LIMIT && n <= DENSE_STEP_LIMIT {
                let dense =
                    oracle::dense_assemble(&lattice, &BoundarySpec::none(), System::Lifted)?;
                let t = Instant::now();
                let evolved = oracle::dense_evolve(&dense, start.populations(), n)?;
                rows.push(BenchRow::new("dense", m, n, t.elapsed().as_secs_f64()));
                let diff = walk::max_abs_diff(&evolved, state.populations());
                worst = Some(worst.map_or(diff, |w: f64| w.max(diff)));
            }
        }
    }
    Ok((rows, worst))
}

fn bench(
    sites: &[usize],
    steps: &[usize],
    format: Format,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let (rows, worst) = bench_rows(sites, steps)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    for pair in rows.windows(2) {
        if let [s, d] = pair {
            if s.engine == "structural" && d.engine == "dense" {
                eprintln!(
                    "m={} n={}: structural speedup {:.1}x",
                    s.m,
                    s.n,
                    d.seconds / s.seconds
                );
            }
        }
    }
    match worst {
        Some(diff) if diff >= BENCH_TOLERANCE => {
            eprintln!(
                "dense and structural outputs differ by {diff:.3e} (tolerance {BENCH_TOLERANCE:e})"
            );
            Ok(false)
        }
        _ => Ok(true),
    }
}
