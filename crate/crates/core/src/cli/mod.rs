//! The `evenwilf` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verification check
//! was refuted, 3 a resource budget was exceeded.

pub mod cache;
mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bwx::{self, Direction};
use crate::classification::{self, Mode};
use crate::enumeration::{
    avoidance_vector_with, count_avoiders_shape_with, AvoidanceVector, CountOptions, CountTriple,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::shape::FerrersShape;
use crate::verification::{self, CheckParams};
use cache::CountCache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default worker count when `--jobs` is not given.
pub const JOBS_ENV: &str = "EVENWILF_JOBS";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "evenwilf", version, about = "Even-Wilf-equivalence of permutation patterns")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (defaults to $EVENWILF_JOBS, else all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Neither read nor write the count cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recompute every cache hit and fail on any mismatch.
    #[arg(long, global = true)]
    verify_cache: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count avoiders of a pattern, split by sign.
    Count {
        pattern: Permutation,
        /// Permutation length.
        #[arg(long, conflicts_with = "shape", required_unless_present = "shape")]
        n: Option<usize>,
        /// Ferrers shape as row lengths, bottom row first, e.g. 5,5,3,2,2.
        #[arg(long)]
        shape: Option<FerrersShape>,
    },
    /// Partition all patterns of length k by their count vectors.
    Classify {
        k: usize,
        /// Horizon: compare counts for every n up to this value.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_parser = parse_mode, default_value = "even-wilf")]
        mode: Mode,
    },
    /// Apply the starred J_t/F_t bijection to a transversal.
    Map {
        input: Permutation,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = parse_direction, default_value = "forward")]
        dir: Direction,
        /// Shape the input is a transversal of (the square if omitted).
        #[arg(long)]
        shape: Option<FerrersShape>,
    },
    /// Run a named check suite.
    Verify {
        /// Check name; run with an unknown name to list them.
        name: String,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long = "box")]
        box_size: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest pattern length (conj-refinement).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Reproduce the class-count table and the classification tables.
    Tables {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Largest pattern length.
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

fn parse_mode(s: &str) -> Result<Mode> {
    s.parse()
}

fn parse_direction(s: &str) -> Result<Direction> {
    s.parse()
}

/// Default classification horizon for patterns of length `k`.
fn default_horizon(k: usize) -> usize {
    if k <= 4 {
        9
    } else {
        10
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Output goes to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let jobs = match cli.global.jobs {
        Some(j) => Some(j),
        None => std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()),
    };
    if jobs == Some(0) {
        return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs:?} workers: {e}")))?;
    let opts = CountOptions {
        parallel: jobs != Some(1),
        ..CountOptions::default()
    };
    let mut ctx = Context {
        opts,
        cache: if cli.global.no_cache {
            None
        } else {
            Some(CountCache::open(&cache::default_dir())?)
        },
        verify_cache: cli.global.verify_cache,
        format: cli.global.format,
    };
    // Rendering goes to a buffer so the work can move onto the pool.
    let mut buf = Vec::new();
    let result = pool.install(|| ctx.dispatch(&cli.command, &mut buf));
    out.write_all(&buf)?;
    out.flush()?;
    if let Some(c) = ctx.cache.as_mut() {
        c.flush()?;
    }
    result
}

struct Context {
    opts: CountOptions,
    cache: Option<CountCache>,
    verify_cache: bool,
    format: Format,
}

impl Context {
    fn dispatch(&mut self, cmd: &Command, out: &mut dyn Write) -> Result<i32> {
        match cmd {
            Command::Count { pattern, n, shape } => {
                let row = match (n, shape) {
                    (_, Some(shape)) => render::CountRow {
                        pattern: pattern.clone(),
                        n: None,
                        shape: Some(shape.clone()),
                        counts: self.shape_counts(pattern, shape)?,
                    },
                    (Some(n), None) => render::CountRow {
                        pattern: pattern.clone(),
                        n: Some(*n),
                        shape: None,
                        counts: self.vector(pattern, *n)?.entries[*n],
                    },
                    (None, None) => {
                        return Err(Error::InvalidArgument("give --n or --shape".into()))
                    }
                };
                render::count(out, self.format, &row)?;
                Ok(EXIT_OK)
            }
            Command::Classify { k, max_n, mode } => {
                let horizon = max_n.unwrap_or_else(|| default_horizon(*k));
                let partition = self.classify(*k, horizon, *mode)?;
                let proven = proven_for(*k, *mode)?;
                render::classification(out, self.format, &partition, proven.as_ref())?;
                Ok(EXIT_OK)
            }
            Command::Map {
                input,
                t,
                dir,
                shape,
            } => {
                let (image, trace) = bwx::run_map(input.clone(), shape.clone(), *t, *dir)?;
                render::map(out, self.format, input, &image, &trace)?;
                Ok(EXIT_OK)
            }
            Command::Verify {
                name,
                t,
                box_size,
                max_n,
                k,
            } => {
                let params = CheckParams {
                    t: *t,
                    box_size: *box_size,
                    max_n: *max_n,
                    k: *k,
                };
                let report = verification::run_check(name, &params, &self.opts)?;
                render::report(out, self.format, &report)?;
                Ok(if report.status.is_refuted() {
                    EXIT_REFUTED
                } else {
                    EXIT_OK
                })
            }
            Command::Tables { max_n, k } => {
                if *k > classification::DEFAULT_MAX_K {
                    return Err(Error::Budget {
                        what: "pattern length k",
                        value: *k,
                        max: classification::DEFAULT_MAX_K,
                    });
                }
                let mut rows = Vec::new();
                let mut partitions = Vec::new();
                for kk in 1..=*k {
                    let vectors = self.pattern_vectors(kk, *max_n)?;
                    let wilf = classification::partition_vectors(kk, *max_n, Mode::Wilf, &vectors);
                    let even = classification::partition_vectors(kk, *max_n, Mode::EvenWilf, &vectors);
                    rows.push(classification::ClassCountRow::new(kk, *max_n, wilf.num_blocks(), even.num_blocks()));
                    let proven = proven_for(kk, Mode::EvenWilf)?;
                    partitions.push((even, proven));
                }
                render::tables(out, self.format, &rows, &partitions)?;
                Ok(EXIT_OK)
            }
        }
    }

    fn check_hit(&self, key: &str, cached: CountTriple, fresh: impl FnOnce() -> Result<CountTriple>) -> Result<()> {
        if self.verify_cache {
            let fresh = fresh()?;
            if fresh != cached {
                return Err(Error::CacheMismatch {
                    key: key.to_string(),
                    stored: format!("{cached:?}"),
                    fresh: format!("{fresh:?}"),
                });
            }
        }
        Ok(())
    }

    /// The cached vector for `pattern` if every entry up to `max_n` is present.
    fn cached_vector(&self, pattern: &Permutation, max_n: usize) -> Result<Option<AvoidanceVector>> {
        let Some(cache) = &self.cache else {
            return Ok(None);
        };
        let hits: Option<Vec<CountTriple>> = (0..=max_n)
            .map(|n| cache.get(&cache::perm_key(pattern, n)))
            .collect();
        let Some(entries) = hits else {
            return Ok(None);
        };
        if self.verify_cache {
            let fresh = avoidance_vector_with(pattern, max_n, &self.opts)?;
            for (n, (c, f)) in entries.iter().zip(&fresh.entries).enumerate() {
                self.check_hit(&cache::perm_key(pattern, n), *c, || Ok(*f))?;
            }
        }
        Ok(Some(AvoidanceVector {
            pattern: pattern.clone(),
            entries,
        }))
    }

    fn store_vector(&mut self, v: &AvoidanceVector) {
        if let Some(cache) = &mut self.cache {
            for (n, c) in v.entries.iter().enumerate() {
                cache.put(cache::perm_key(&v.pattern, n), *c);
            }
        }
    }

    /// Counts for every `n <= max_n`, from the cache when all are present.
    fn vector(&mut self, pattern: &Permutation, max_n: usize) -> Result<AvoidanceVector> {
        if let Some(v) = self.cached_vector(pattern, max_n)? {
            return Ok(v);
        }
        let v = avoidance_vector_with(pattern, max_n, &self.opts)?;
        self.store_vector(&v);
        Ok(v)
    }

    fn shape_counts(&mut self, pattern: &Permutation, shape: &FerrersShape) -> Result<CountTriple> {
        let opts = self.opts;
        let compute = || count_avoiders_shape_with(shape, pattern, &opts);
        let key = cache::shape_key(pattern, shape);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            self.check_hit(&key, hit, compute)?;
            return Ok(hit);
        }
        let c = compute()?;
        if let Some(cache) = &mut self.cache {
            cache.put(key, c);
        }
        Ok(c)
    }

    /// Vectors for all of `S_k`; patterns missing from the cache are
    /// counted in parallel, one task per pattern.
    fn pattern_vectors(&mut self, k: usize, max_n: usize) -> Result<Vec<AvoidanceVector>> {
        if self.cache.is_none() || k == 0 || k > classification::DEFAULT_MAX_K {
            return classification::pattern_vectors(k, max_n, &self.opts);
        }
        let patterns: Vec<Permutation> = Permutation::all(k).collect();
        let mut found = Vec::with_capacity(patterns.len());
        for p in &patterns {
            found.push(self.cached_vector(p, max_n)?);
        }
        let missing: Vec<&Permutation> = patterns
            .iter()
            .zip(&found)
            .filter(|(_, f)| f.is_none())
            .map(|(p, _)| p)
            .collect();
        let inner = CountOptions {
            parallel: false,
            ..self.opts
        };
        let computed: Vec<AvoidanceVector> = if self.opts.parallel {
            missing
                .par_iter()
                .map(|p| avoidance_vector_with(p, max_n, &inner))
                .collect::<Result<_>>()?
        } else {
            missing
                .iter()
                .map(|p| avoidance_vector_with(p, max_n, &inner))
                .collect::<Result<_>>()?
        };
        computed.iter().for_each(|v| self.store_vector(v));
        let mut computed = computed.into_iter();
        Ok(found
            .into_iter()
            .map(|f| f.unwrap_or_else(|| computed.next().expect("one vector per missing pattern")))
            .collect())
    }

    fn classify(&mut self, k: usize, horizon: usize, mode: Mode) -> Result<classification::ClassPartition> {
        let vectors = self.pattern_vectors(k, horizon)?;
        Ok(classification::partition_vectors(k, horizon, mode, &vectors))
    }
}

fn proven_for(k: usize, mode: Mode) -> Result<Option<classification::ClassPartition>> {
    if mode == Mode::EvenWilf && (2..=classification::DEFAULT_MAX_K).contains(&k) {
        Ok(Some(classification::proven_classes(k)?))
    } else {
        Ok(None)
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run(std::env::args_os(), &mut lock);
    let _ = lock.flush();
    code
}

/// Cache directory in effect for this process.
pub fn cache_dir() -> PathBuf {
    cache::default_dir()
}
