//! Exhaustive enumeration and randomized search.
//!
//! Both modes share one backtracking engine (see `engine`). Exhaustive
//! enumeration splits the space on the first three scheduled cells and
//! hands those prefixes to worker threads; results are merged in prefix
//! order, so counts and output never depend on the number of workers.
//! Randomized search runs seeded restarts on each worker and merges the
//! streams by `(worker, discovery index)`.

mod bounds;
mod engine;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use bounds::residuum_bounds;
use engine::{Layout, Searcher, MAX_MASK_ORDER};

use crate::error::{Error, Result};
use crate::square::{magic_residuum, Square};
use crate::transform::{canonical_form, orbit_size};

/// Largest order accepted by exhaustive enumeration (`n²` fits 64 bits).
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;
/// Largest order accepted by randomized search.
pub const MAX_RANDOMIZED_ORDER: usize = MAX_MASK_ORDER;

/// Node budget of one randomized restart unless configured otherwise.
pub const DEFAULT_RESTART_NODES: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub order: usize,
    /// Required residuum; when absent the first completed line fixes it.
    pub target_residuum: Option<i64>,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub worker_count: usize,
    /// Maximum number of squares to emit.
    pub limit: Option<u64>,
    /// Count without emitting squares.
    pub count_only: bool,
    /// Residuum-bound pruning of partial lines. Turning it off only
    /// changes the running time.
    pub prune: bool,
    /// Exhaustive only: restrict the search to squares with this first row.
    pub first_row: Option<Vec<u32>>,
    /// Randomized only: node budget per restart.
    pub restart_nodes: u64,
    /// Randomized only: give up after this many restarts per worker.
    pub max_restarts: Option<u64>,
}

impl SearchConfig {
    pub fn exhaustive(order: usize) -> Self {
        SearchConfig {
            order,
            target_residuum: None,
            mode: Mode::Exhaustive,
            seed: None,
            worker_count: 1,
            limit: None,
            count_only: false,
            prune: true,
            first_row: None,
            restart_nodes: DEFAULT_RESTART_NODES,
            max_restarts: None,
        }
    }

    pub fn randomized(order: usize, seed: u64) -> Self {
        SearchConfig {
            mode: Mode::Randomized,
            seed: Some(seed),
            ..Self::exhaustive(order)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.order == 0 {
            return bad("order must be at least 1".into());
        }
        if self.worker_count == 0 {
            return bad("worker count must be at least 1".into());
        }
        if let Some(t) = self.target_residuum {
            if t < 0 {
                return bad(format!("target residuum {t} is negative"));
            }
        }
        match self.mode {
            Mode::Exhaustive => {
                if self.order > MAX_EXHAUSTIVE_ORDER {
                    return bad(format!(
                        "exhaustive mode supports orders up to {MAX_EXHAUSTIVE_ORDER}"
                    ));
                }
                if let Some(row) = &self.first_row {
                    if row.len() != self.order {
                        return bad(format!(
                            "first row has {} values, order is {}",
                            row.len(),
                            self.order
                        ));
                    }
                }
            }
            Mode::Randomized => {
                if self.seed.is_none() {
                    return bad("randomized mode requires a seed".into());
                }
                if !(4..=MAX_RANDOMIZED_ORDER).contains(&self.order) {
                    return bad(format!(
                        "randomized mode supports orders 4 to {MAX_RANDOMIZED_ORDER}"
                    ));
                }
                if self.first_row.is_some() {
                    return bad("a pinned first row is only supported in exhaustive mode".into());
                }
                if self.restart_nodes == 0 {
                    return bad("restart node budget must be positive".into());
                }
            }
        }
        Ok(())
    }
}

/// Outcome of an exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    /// Squares visited by the backtracking, i.e. those whose top-left cell
    /// is the smallest corner.
    pub survivor_count: u64,
    /// All magic squares in the searched space, every orientation counted.
    /// Each orientation class of corners is equally large, so this is
    /// `4 × survivor_count` for `n ≥ 2`. Absent when a first row is pinned,
    /// because such a subspace is not closed under symmetry.
    pub raw_count: Option<u64>,
    /// Number of symmetry classes.
    pub distinct_count: u64,
    /// Sum of the orbit sizes of the classes found.
    pub orbit_total: u64,
    /// Number of distinct classes per residuum.
    pub residuum_histogram: BTreeMap<i64, u64>,
    /// Backtracking nodes visited.
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub config: SearchConfig,
}

/// Work units: values for the first scheduled cells.
fn work_units(cfg: &SearchConfig) -> Vec<Vec<u32>> {
    if let Some(row) = &cfg.first_row {
        return vec![row.clone()];
    }
    let size = (cfg.order * cfg.order) as u32;
    let depth = 3.min(size as usize);
    let mut units: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(units.len() * size as usize);
        for p in &units {
            for v in (1..=size).filter(|v| !p.contains(v)) {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        units = next;
    }
    units
}

struct UnitOutput {
    squares: Vec<Vec<u32>>,
    nodes: u64,
}

/// Runs every work unit on `workers` threads and hands unit results to
/// `merge` in unit order.
fn run_units<F>(cfg: &SearchConfig, units: &[Vec<u32>], mut merge: F)
where
    F: FnMut(UnitOutput),
{
    let layout = Layout::new(cfg.order);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, UnitOutput)>();
    std::thread::scope(|scope| {
        for _ in 0..cfg.worker_count {
            let tx = tx.clone();
            let (layout, next) = (&layout, &next);
            scope.spawn(move || {
                let mut searcher = Searcher::new(layout, cfg.prune, true);
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    let Some(prefix) = units.get(idx) else { break };
                    let mut squares = Vec::new();
                    let before = searcher.nodes;
                    searcher.run_exhaustive(prefix, cfg.target_residuum, &mut |grid| {
                        squares.push(grid.to_vec())
                    });
                    let out = UnitOutput {
                        squares,
                        nodes: searcher.nodes - before,
                    };
                    if tx.send((idx, out)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut expected = 0;
        for (idx, out) in rx {
            pending.insert(idx, out);
            while let Some(out) = pending.remove(&expected) {
                merge(out);
                expected += 1;
            }
        }
        debug_assert!(pending.is_empty());
    });
}

/// Enumerates every normal magic square of subtraction of the configured
/// order. `emit` receives the canonical form of each new symmetry class in
/// discovery order, up to `limit`, unless `count_only` is set.
pub fn enumerate_exhaustive(
    cfg: &SearchConfig,
    mut emit: impl FnMut(&Square),
) -> Result<EnumerationResult> {
    cfg.validate()?;
    if cfg.mode != Mode::Exhaustive {
        return Err(Error::Config(
            "enumerate_exhaustive needs exhaustive mode".into(),
        ));
    }
    let start = Instant::now();
    let n = cfg.order;
    let mut result = EnumerationResult {
        survivor_count: 0,
        raw_count: None,
        distinct_count: 0,
        orbit_total: 0,
        residuum_histogram: BTreeMap::new(),
        nodes: 0,
        elapsed: Duration::ZERO,
        config: cfg.clone(),
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut emitted = 0u64;
    let units = work_units(cfg);
    run_units(cfg, &units, |out| {
        result.nodes += out.nodes;
        for cells in out.squares {
            let square = Square::from_cells_unchecked(n, cells);
            let residuum = magic_residuum(&square);
            assert!(
                residuum.is_some() && square.is_normal(),
                "search produced an invalid square: {square:?}"
            );
            result.survivor_count += 1;
            let canon = canonical_form(&square);
            if seen.insert(canon.cells().to_vec()) {
                result.distinct_count += 1;
                result.orbit_total += orbit_size(&canon) as u64;
                *result
                    .residuum_histogram
                    .entry(residuum.expect("checked"))
                    .or_default() += 1;
                if !cfg.count_only && cfg.limit.is_none_or(|l| emitted < l) {
                    emit(&canon);
                    emitted += 1;
                }
            }
        }
    });
    if cfg.first_row.is_none() {
        // corners of an order-1 square coincide, so nothing is broken there
        let factor = if n == 1 { 1 } else { 4 };
        result.raw_count = Some(factor * result.survivor_count);
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

/// Generator for one randomized worker.
fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Summary of a randomized run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RandomizedStats {
    pub emitted: u64,
    pub restarts: u64,
    pub nodes: u64,
}

enum WorkerMsg {
    Restart {
        worker: usize,
        square: Option<Square>,
        nodes: u64,
    },
    Done {
        worker: usize,
    },
}

/// Reorders per-worker discoveries into the deterministic output order.
struct Merger {
    queues: Vec<VecDeque<Square>>,
    finished: Vec<bool>,
    cursor: usize,
    by_worker: bool,
}

impl Merger {
    /// Pops the next square in output order if it is already known.
    fn next(&mut self) -> Option<Square> {
        let workers = self.queues.len();
        if self.by_worker {
            while self.cursor < workers {
                if let Some(sq) = self.queues[self.cursor].pop_front() {
                    return Some(sq);
                }
                if !self.finished[self.cursor] {
                    return None;
                }
                self.cursor += 1;
            }
            None
        } else {
            // one square from each worker in turn, skipping finished ones
            for _ in 0..workers {
                let w = self.cursor;
                if let Some(sq) = self.queues[w].pop_front() {
                    self.cursor = (w + 1) % workers;
                    return Some(sq);
                }
                if !self.finished[w] {
                    return None;
                }
                self.cursor = (w + 1) % workers;
            }
            None
        }
    }
}

/// Seeded restart search. Every emitted square is normal and magic (with
/// the target residuum when one is set).
///
/// With a limit, worker `w` is responsible for a fixed share of it and the
/// merged stream is ordered by worker, then discovery. Without a limit the
/// workers run until `max_restarts` (or forever) and the stream takes one
/// square from each worker in turn.
pub fn search_randomized(
    cfg: &SearchConfig,
    mut emit: impl FnMut(&Square),
) -> Result<RandomizedStats> {
    cfg.validate()?;
    if cfg.mode != Mode::Randomized {
        return Err(Error::Config(
            "search_randomized needs randomized mode".into(),
        ));
    }
    let seed = cfg.seed.expect("validated");
    let workers = cfg.worker_count;
    let quota = |w: usize| -> Option<u64> {
        cfg.limit.map(|l| {
            let (base, extra) = (l / workers as u64, l % workers as u64);
            base + u64::from((w as u64) < extra)
        })
    };
    let mut stats = RandomizedStats::default();
    let layout = Layout::new(cfg.order);
    let (tx, rx) = mpsc::channel::<WorkerMsg>();
    std::thread::scope(|scope| {
        for w in 0..workers {
            let tx = tx.clone();
            let layout = &layout;
            let quota = quota(w);
            scope.spawn(move || {
                let mut rng = worker_rng(seed, w);
                let mut searcher = Searcher::new(layout, cfg.prune, false);
                let mut found = 0u64;
                let mut restarts = 0u64;
                while quota.is_none_or(|q| found < q)
                    && cfg.max_restarts.is_none_or(|m| restarts < m)
                {
                    restarts += 1;
                    let before = searcher.nodes;
                    let grid =
                        searcher.run_randomized(&mut rng, cfg.target_residuum, cfg.restart_nodes);
                    let square = grid.map(|cells| Square::from_cells_unchecked(layout.n, cells));
                    found += u64::from(square.is_some());
                    let msg = WorkerMsg::Restart {
                        worker: w,
                        square,
                        nodes: searcher.nodes - before,
                    };
                    if tx.send(msg).is_err() {
                        return;
                    }
                }
                let _ = tx.send(WorkerMsg::Done { worker: w });
            });
        }
        drop(tx);

        let mut merger = Merger {
            queues: vec![VecDeque::new(); workers],
            finished: vec![false; workers],
            cursor: 0,
            by_worker: cfg.limit.is_some(),
        };
        for msg in rx {
            match msg {
                WorkerMsg::Restart {
                    worker,
                    square,
                    nodes,
                } => {
                    stats.restarts += 1;
                    stats.nodes += nodes;
                    if let Some(sq) = square {
                        merger.queues[worker].push_back(sq);
                    }
                }
                WorkerMsg::Done { worker } => merger.finished[worker] = true,
            }
            while let Some(sq) = merger.next() {
                let residuum = magic_residuum(&sq);
                assert!(
                    sq.is_normal()
                        && residuum.is_some()
                        && cfg.target_residuum.is_none_or(|t| residuum == Some(t)),
                    "search produced an invalid square: {sq:?}"
                );
                emit(&sq);
                stats.emitted += 1;
            }
        }
    });
    Ok(stats)
}

/// Number of distinct symmetry classes among `squares`.
pub fn count_distinct<'a, I>(squares: I) -> Result<u64>
where
    I: IntoIterator<Item = &'a Square>,
{
    let mut order = None;
    let mut seen = HashSet::new();
    for sq in squares {
        match order {
            None => order = Some(sq.order()),
            Some(n) if n != sq.order() => return Err(Error::MixedOrders(n, sq.order())),
            Some(_) => {}
        }
        seen.insert(canonical_form(sq).into_cells());
    }
    Ok(seen.len() as u64)
}
