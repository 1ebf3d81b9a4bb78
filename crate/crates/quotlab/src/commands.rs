//! Subcommand bodies. Each returns the number of invariant violations found;
//! errors are reserved for bad input.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use quotlab_core::adhm::{
    eta_embed, framed_tangent_dim, framed_vs_quot_dims, is_stable_adhm, moment,
    moment_jacobian_rank,
};
use quotlab_core::enumerate::{CountParams, DEFAULT_BUDGET};
use quotlab_core::potential::{crit_equals_commuting_tangent, PotentialPoint};
use quotlab_core::sample::{random_adhm_stable, random_etale_point, random_stable_commuting};
use quotlab_core::slope::{slope, Epsilon};
use quotlab_core::tangent::tangent_dim;
use quotlab_core::{classify_point, punctual_point, Error, Field, FramedRep, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{Cli, Command, Format, PointKind};
use crate::count::count_points;
use crate::formats::{read_reps, AdhmJson, RepJson};
use crate::seeds::run_tasks;
use crate::{CliError, VERSION};

enum Sink {
    Jsonl(Box<dyn Write>),
    Csv(Box<csv::Writer<Box<dyn Write>>>),
}

#[derive(Serialize)]
struct Joined<'a, R, X> {
    #[serde(flatten)]
    row: &'a R,
    #[serde(flatten)]
    extra: Option<&'a X>,
}

impl Sink {
    fn open(cli: &Cli) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match &cli.output.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(match cli.output.format {
            Format::Jsonl => Sink::Jsonl(out),
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
        })
    }

    fn emit<R: Serialize>(&mut self, row: &R) -> Result<(), CliError> {
        self.emit_with::<R, ()>(row, None)
    }

    /// `extra` carries nested data and is dropped from CSV output.
    fn emit_with<R: Serialize, X: Serialize>(
        &mut self,
        row: &R,
        extra: Option<&X>,
    ) -> Result<(), CliError> {
        match self {
            Sink::Jsonl(w) => {
                serde_json::to_writer(&mut *w, &Joined { row, extra })?;
                w.write_all(b"\n")?;
            }
            Sink::Csv(w) => w.serialize(row)?,
        }
        Ok(())
    }

    /// Summary records go to stderr when the main output is CSV.
    fn summary<S: Serialize>(&mut self, s: &S) -> Result<(), CliError> {
        match self {
            Sink::Jsonl(_) => self.emit(s),
            Sink::Csv(_) => {
                eprintln!("{}", serde_json::to_string(s)?);
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<(), CliError> {
        match self {
            Sink::Jsonl(mut w) => w.flush()?,
            Sink::Csv(mut w) => w.flush()?,
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<usize, CliError> {
    let ctx = Ctx {
        seed: cli.output.seed,
        timestamp: (!cli.output.no_timestamp).then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        }),
    };
    let mut sink = Sink::open(cli)?;
    let violations = match &cli.command {
        Command::Tangent {
            m,
            n,
            r,
            point,
            input,
            field,
            samples,
            expected_dim,
        } => {
            let source = match input {
                Some(path) => Source::File(read_reps(&fs::read_to_string(path)?)?),
                None => Source::Sample {
                    kind: *point,
                    field: *field,
                    dims: (m.unwrap_or(0), n.unwrap_or(0), r.unwrap_or(0)),
                    samples: *samples,
                },
            };
            tangent(&ctx, &mut sink, source, *expected_dim)?
        }
        Command::Critcheck {
            m,
            n,
            r,
            field,
            samples,
        } => critcheck(&ctx, &mut sink, *m, *n, *r, *field, *samples)?,
        Command::Adhm {
            n,
            r,
            dims,
            field,
            samples,
        } => adhm(&ctx, &mut sink, *n, *r, *dims, *field, *samples)?,
        Command::Count {
            m,
            n,
            r,
            q,
            budget,
            checkpoint,
        } => {
            let params = CountParams::new(*m, *n, *r, *q)?;
            let budget = budget.unwrap_or(DEFAULT_BUDGET);
            let c = count_points(&params, budget, checkpoint.as_deref())?;
            sink.emit(&CountRow {
                command: "count",
                version: VERSION,
                seed: ctx.seed,
                m: c.m,
                n: c.n,
                r: c.r,
                q: c.q,
                budget,
                stable_commuting_points: c.stable_commuting_points,
                gauge_group_order: c.gauge_group_order,
                orbit_count: c.orbit_count,
                timestamp: ctx.timestamp,
            })?;
            0
        }
        Command::Slope {
            c1h,
            eps,
            delta1,
            rank,
        } => {
            let parse = |name: &str, s: &str| {
                Scalar::parse(Field::Rationals, s).map_err(|_| {
                    CliError::Usage(format!(
                        "--{name}: expected a rational like 3 or -1/2, got {s:?}"
                    ))
                })
            };
            let (c1h, delta1, rank) = (
                parse("c1H", c1h)?,
                parse("delta1", delta1)?,
                parse("rank", rank)?,
            );
            let q = |s: &Scalar| s.as_rational().cloned().expect("rational by construction");
            let mu = slope(&q(&c1h), Epsilon::from_flag(*eps)?, &q(&delta1), &q(&rank))?;
            sink.emit(&SlopeRow {
                command: "slope",
                version: VERSION,
                seed: ctx.seed,
                c1h: c1h.encode(),
                eps: *eps,
                delta1: delta1.encode(),
                rank: rank.encode(),
                slope: Scalar::from_rational(Field::Rationals, &mu)?.encode(),
                timestamp: ctx.timestamp,
            })?;
            0
        }
        Command::Embed {
            n,
            r,
            input,
            field,
            samples,
        } => {
            let reps = match input {
                Some(path) => read_reps(&fs::read_to_string(path)?)?,
                None => collect(run_tasks(ctx.seed, *samples, |_, rng| {
                    random_stable_commuting(*field, 2, n.unwrap_or(0), r.unwrap_or(0), rng)
                }))?,
            };
            embed(&ctx, &mut sink, &reps)?
        }
    };
    sink.finish()?;
    Ok(violations)
}

struct Ctx {
    seed: u64,
    timestamp: Option<u64>,
}

fn collect<T>(results: Vec<Result<T, Error>>) -> Result<Vec<T>, CliError> {
    Ok(results.into_iter().collect::<Result<Vec<_>, _>>()?)
}

fn report_violation(task: usize, what: &str, rep: &RepJson) -> Result<(), CliError> {
    eprintln!(
        "violation at task {task}: {what}: {}",
        serde_json::to_string(rep)?
    );
    Ok(())
}

enum Source {
    File(Vec<FramedRep>),
    Sample {
        kind: PointKind,
        field: Field,
        dims: (usize, usize, usize),
        samples: usize,
    },
}

/// Known local dimensions: `𝔸¹` gives `rn`, `𝔸²` gives `(r+1)n`, one point
/// gives `m−1+r`.
pub fn default_reference_dim(m: usize, n: usize, r: usize) -> Option<usize> {
    match (m, n) {
        (_, 0) => Some(0),
        (1, _) => Some(r * n),
        (2, _) => Some((r + 1) * n),
        (_, 1) => Some(m - 1 + r),
        _ => None,
    }
}

fn sample_point(
    kind: PointKind,
    field: Field,
    (m, n, r): (usize, usize, usize),
    rng: &mut ChaCha8Rng,
) -> Result<FramedRep, Error> {
    match kind {
        PointKind::Punctual => punctual_point(field, m, r),
        PointKind::Etale => random_etale_point(field, m, n, r, rng),
        PointKind::Random => random_stable_commuting(field, m, n, r, rng),
    }
}

#[derive(Serialize)]
struct TangentRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    task: usize,
    source: &'static str,
    m: usize,
    n: usize,
    r: usize,
    field: String,
    ambient_dim: usize,
    rep_space_dim: usize,
    jacobian_rank: usize,
    tangent_dim: usize,
    reference_dim: Option<usize>,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct PointExtra {
    point: RepJson,
}

fn tangent(
    ctx: &Ctx,
    sink: &mut Sink,
    source: Source,
    expected: Option<usize>,
) -> Result<usize, CliError> {
    let (reps, label) = match source {
        Source::File(reps) => (reps, "input"),
        Source::Sample {
            kind,
            field,
            dims,
            samples,
        } => {
            if kind == PointKind::Punctual && dims.1 != dims.2 {
                return Err(CliError::Usage(format!(
                    "--point punctual needs n = r, got n = {}, r = {}",
                    dims.1, dims.2
                )));
            }
            let label = match kind {
                PointKind::Punctual => "punctual",
                PointKind::Etale => "etale",
                PointKind::Random => "random",
            };
            (
                collect(run_tasks(ctx.seed, samples, |_, rng| {
                    sample_point(kind, field, dims, rng)
                }))?,
                label,
            )
        }
    };
    let reports: Vec<_> = reps
        .par_iter()
        .map(|x| {
            classify_point(
                x,
                expected.or_else(|| default_reference_dim(x.m(), x.n(), x.r())),
            )
        })
        .collect();
    let mut violations = 0;
    for (task, (x, report)) in reps.iter().zip(reports).enumerate() {
        let report = match report {
            Err(e @ Error::DimensionMismatch { .. }) => {
                report_violation(task, &e.to_string(), &x.into())?;
                violations += 1;
                continue;
            }
            other => other?,
        };
        let row = TangentRow {
            command: "tangent",
            version: VERSION,
            seed: ctx.seed,
            task,
            source: label,
            m: report.m,
            n: report.n,
            r: report.r,
            field: x.field().to_string(),
            ambient_dim: report.ambient_dim,
            rep_space_dim: report.rep_space_dim,
            jacobian_rank: report.jacobian_rank,
            tangent_dim: report.tangent_dim,
            reference_dim: report.reference_dim,
            verdict: report.verdict.to_string(),
            timestamp: ctx.timestamp,
        };
        sink.emit_with(&row, Some(&PointExtra { point: x.into() }))?;
    }
    Ok(violations)
}

#[derive(Serialize)]
struct CritRow {
    command: &'static str,
    record: &'static str,
    version: &'static str,
    seed: u64,
    task: usize,
    m: usize,
    n: usize,
    r: usize,
    field: String,
    f: String,
    grad_is_zero: bool,
    hessian_rank: usize,
    kernels_equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct FailedPoint {
    task: usize,
    point: RepJson,
}

#[derive(Serialize)]
struct CritSummary {
    command: &'static str,
    record: &'static str,
    version: &'static str,
    seed: u64,
    field: String,
    samples: usize,
    failures: usize,
    failed: Vec<FailedPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn critcheck(
    ctx: &Ctx,
    sink: &mut Sink,
    m: usize,
    n: Option<usize>,
    r: Option<usize>,
    field: Field,
    samples: usize,
) -> Result<usize, CliError> {
    if m != 3 {
        return Err(CliError::Usage(format!("critcheck needs --m 3, got {m}")));
    }
    let results = collect(run_tasks(ctx.seed, samples, |_, rng| {
        let n = n.unwrap_or_else(|| rng.gen_range(1..=3));
        let r = r.unwrap_or_else(|| rng.gen_range(1..=2));
        let x = random_stable_commuting(field, 3, n, r, rng)?;
        let p = PotentialPoint::at(&x)?;
        let equal = crit_equals_commuting_tangent(&x)?;
        Ok((p, equal))
    }))?;
    let mut failed = Vec::new();
    for (task, (p, kernels_equal)) in results.iter().enumerate() {
        let grad_is_zero = p.gradient_is_zero();
        let row = CritRow {
            command: "critcheck",
            record: "sample",
            version: VERSION,
            seed: ctx.seed,
            task,
            m,
            n: p.rep.n(),
            r: p.rep.r(),
            field: field.to_string(),
            f: p.value.encode(),
            grad_is_zero,
            hessian_rank: p.hessian.rank(),
            kernels_equal: *kernels_equal,
            timestamp: ctx.timestamp,
        };
        if grad_is_zero && *kernels_equal {
            sink.emit(&row)?;
        } else {
            let point = RepJson::from(&p.rep);
            sink.emit_with(
                &row,
                Some(&PointExtra {
                    point: point.clone(),
                }),
            )?;
            failed.push(FailedPoint { task, point });
        }
    }
    let failures = failed.len();
    sink.summary(&CritSummary {
        command: "critcheck",
        record: "summary",
        version: VERSION,
        seed: ctx.seed,
        field: field.to_string(),
        samples,
        failures,
        failed,
        timestamp: ctx.timestamp,
    })?;
    Ok(failures)
}

#[derive(Serialize)]
struct DimsRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    n: usize,
    r: usize,
    framed_dim: usize,
    quot_dim: usize,
    codim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct AdhmRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    task: usize,
    n: usize,
    r: usize,
    field: String,
    j_is_zero: bool,
    moment_jacobian_rank: usize,
    framed_tangent_dim: usize,
    expected_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct DatumExtra {
    datum: AdhmJson,
}

fn adhm(
    ctx: &Ctx,
    sink: &mut Sink,
    n: usize,
    r: usize,
    dims: bool,
    field: Field,
    samples: usize,
) -> Result<usize, CliError> {
    if dims {
        let d = framed_vs_quot_dims(n, r)?;
        sink.emit(&DimsRow {
            command: "adhm",
            version: VERSION,
            seed: ctx.seed,
            n,
            r,
            framed_dim: d.framed_dim,
            quot_dim: d.quot_dim,
            codim: d.codim,
            timestamp: ctx.timestamp,
        })?;
        return Ok(0);
    }
    let results = collect(run_tasks(ctx.seed, samples, |_, rng| {
        let d = random_adhm_stable(field, n, r, rng)?;
        let rank = moment_jacobian_rank(&d)?;
        let dim = framed_tangent_dim(&d)?;
        Ok((d, rank, dim))
    }))?;
    let mut violations = 0;
    for (task, (d, rank, dim)) in results.iter().enumerate() {
        let expected_dim = 2 * n * r;
        if *rank != n * n || *dim != expected_dim {
            violations += 1;
            eprintln!(
                "violation at task {task}: rank {rank}, dimension {dim}: {}",
                serde_json::to_string(&AdhmJson::from(d))?
            );
        }
        let row = AdhmRow {
            command: "adhm",
            version: VERSION,
            seed: ctx.seed,
            task,
            n,
            r,
            field: field.to_string(),
            j_is_zero: d.j().is_zero(),
            moment_jacobian_rank: *rank,
            framed_tangent_dim: *dim,
            expected_dim,
            timestamp: ctx.timestamp,
        };
        sink.emit_with(&row, Some(&DatumExtra { datum: d.into() }))?;
    }
    Ok(violations)
}

#[derive(Serialize)]
struct CountRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    m: usize,
    n: usize,
    r: usize,
    q: u32,
    budget: u128,
    stable_commuting_points: u128,
    gauge_group_order: u128,
    orbit_count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct SlopeRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    #[serde(rename = "c1H")]
    c1h: String,
    eps: u8,
    delta1: String,
    rank: String,
    slope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct EmbedRow {
    command: &'static str,
    version: &'static str,
    seed: u64,
    task: usize,
    n: usize,
    r: usize,
    field: String,
    moment_is_zero: bool,
    stable: bool,
    j_is_zero: bool,
    round_trip: bool,
    quot_tangent_dim: usize,
    framed_tangent_dim: usize,
    excess: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct EmbedExtra {
    point: RepJson,
    datum: AdhmJson,
}

fn embed(ctx: &Ctx, sink: &mut Sink, reps: &[FramedRep]) -> Result<usize, CliError> {
    let results = collect(
        reps.par_iter()
            .map(|x| {
                let d = eta_embed(x)?;
                Ok((d.clone(), tangent_dim(x)?, framed_tangent_dim(&d)?))
            })
            .collect(),
    )?;
    let mut violations = 0;
    for (task, (x, (d, quot, framed))) in reps.iter().zip(results).enumerate() {
        let row = EmbedRow {
            command: "embed",
            version: VERSION,
            seed: ctx.seed,
            task,
            n: x.n(),
            r: x.r(),
            field: x.field().to_string(),
            moment_is_zero: moment(&d).is_zero(),
            stable: is_stable_adhm(&d),
            j_is_zero: d.j().is_zero(),
            round_trip: d.forget_j() == *x,
            quot_tangent_dim: quot,
            framed_tangent_dim: framed,
            excess: framed as i64 - quot as i64,
            timestamp: ctx.timestamp,
        };
        if !(row.moment_is_zero && row.stable && row.j_is_zero && row.round_trip && row.excess >= 0)
        {
            violations += 1;
            report_violation(task, "embedding check failed", &x.into())?;
        }
        sink.emit_with(
            &row,
            Some(&EmbedExtra {
                point: x.into(),
                datum: (&d).into(),
            }),
        )?;
    }
    Ok(violations)
}
