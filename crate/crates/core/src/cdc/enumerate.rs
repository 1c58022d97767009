//! Exhaustive search for circuit double covers.
//!
//! Two independent routes:
//!
//! * **Dart partitions** (orientable covers only). An orientable cover is
//!   the same thing as a partition of the darts into balanced, connected
//!   parts that never hold both darts of an edge. The partition is grown
//!   one dart at a time; a dart joins an existing part or opens the next
//!   one, so each set partition is produced once.
//! * **Circuit exact cover** (all covers). Every connected even subgraph
//!   is listed from the cycle space, then multisets of them covering each
//!   edge exactly twice are found by exact-cover search. Orientability is
//!   decided per cover afterwards.
//!
//! Both return covers in canonical order; the orientation kept for a cover
//! reached more than once is the least one, so the output depends on
//! neither the worker count nor scheduling.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::orient::{check_orientability, closing_edge_order, Orientability, OrientedCover};
use super::{canonicalize, CdcError, Circuit, CircuitDoubleCover};
use crate::graph::SimpleGraph;

pub const DEFAULT_MAX_EDGES: usize = 16;
const MASK_BITS: usize = 128;
const CLOCK_INTERVAL: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_edges: usize,
    pub time_budget: Option<Duration>,
    /// Worker threads; `CDCLAB_THREADS` sets the default.
    pub workers: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        let workers = std::env::var("CDCLAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
            .filter(|&w: &usize| w > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        EnumerationLimits {
            max_edges: DEFAULT_MAX_EDGES,
            time_budget: None,
            workers,
        }
    }
}

impl EnumerationLimits {
    pub fn sequential() -> Self {
        EnumerationLimits {
            workers: 1,
            ..Self::default()
        }
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Self {
        self.max_edges = max_edges;
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundCover {
    pub cover: CircuitDoubleCover,
    pub witness: Option<OrientedCover>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub covers: Vec<FoundCover>,
    /// False when the time budget ran out; `covers` is then a subset.
    pub complete: bool,
    pub orientable_only: bool,
}

impl Enumeration {
    pub fn orientable_count(&self) -> usize {
        self.covers.iter().filter(|c| c.witness.is_some()).count()
    }

    pub fn into_complete(self) -> Result<Vec<FoundCover>, CdcError> {
        if self.complete {
            Ok(self.covers)
        } else {
            Err(CdcError::TimeBudgetExceeded {
                found: self.covers.len(),
            })
        }
    }
}

/// All covers of `g` (each with an orientation when one exists), or only
/// the orientable ones.
pub fn enumerate_covers(
    g: &SimpleGraph,
    orientable_only: bool,
    limits: &EnumerationLimits,
) -> Result<Enumeration, CdcError> {
    if orientable_only {
        enumerate_orientable_partitions(g, limits)
    } else {
        enumerate_all_covers(g, limits)
    }
}

fn check_size(g: &SimpleGraph, limits: &EnumerationLimits) -> Result<(), CdcError> {
    let max = limits.max_edges.min(MASK_BITS);
    if g.edge_count() > max || g.vertex_count() > MASK_BITS {
        return Err(CdcError::EdgeLimitExceeded {
            edges: g.edge_count(),
            max,
        });
    }
    Ok(())
}

struct Clock {
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Clock {
    fn new(budget: Option<Duration>) -> Self {
        Clock {
            deadline: budget.map(|b| Instant::now() + b),
            stop: AtomicBool::new(false),
        }
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn tick(&self, nodes: &mut u64) -> bool {
        *nodes += 1;
        if *nodes % CLOCK_INTERVAL == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stopped()
    }
}

fn run_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

type Found = BTreeMap<CircuitDoubleCover, OrientedCover>;

fn keep_least(found: &mut Found, cover: CircuitDoubleCover, witness: OrientedCover) {
    found
        .entry(cover)
        .and_modify(|w| {
            if witness < *w {
                *w = witness.clone();
            }
        })
        .or_insert(witness);
}

// ---------------------------------------------------------------------------
// dart partitions

const NONE: u32 = u32::MAX;

enum Task {
    Leaf(CircuitDoubleCover, OrientedCover),
    Prefix(Vec<u32>),
}

struct Partition<'a> {
    g: &'a SimpleGraph,
    n: usize,
    darts: Vec<usize>,
    ends: Vec<(usize, usize)>,
    part_of: Vec<u32>,
    nparts: usize,
    cap: usize,
    bal: Vec<i32>,
    pos: Vec<i32>,
    neg: Vec<i32>,
    rem_out: Vec<i32>,
    rem_in: Vec<i32>,
    pedges: Vec<u128>,
    pverts: Vec<u128>,
    done: u128,
    nodes: u64,
    clock: &'a Clock,
}

struct Undo {
    old_nparts: usize,
    old_pverts: u128,
    old_done: u128,
}

impl<'a> Partition<'a> {
    fn new(g: &'a SimpleGraph, clock: &'a Clock) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        let darts: Vec<usize> = closing_edge_order(g)
            .into_iter()
            .flat_map(|e| [2 * e, 2 * e + 1])
            .collect();
        let ends = (0..2 * m).map(|d| super::orient::dart_ends(g, d)).collect();
        // every part has at least three darts
        let cap = (2 * m) / 3 + 1;
        let mut rem_out = vec![0; n];
        let mut rem_in = vec![0; n];
        for v in 0..n {
            rem_out[v] = g.degree(v) as i32;
            rem_in[v] = g.degree(v) as i32;
        }
        Partition {
            g,
            n,
            darts,
            ends,
            part_of: vec![NONE; 2 * m],
            nparts: 0,
            cap,
            bal: vec![0; cap * n],
            pos: vec![0; n],
            neg: vec![0; n],
            rem_out,
            rem_in,
            pedges: vec![0; cap],
            pverts: vec![0; cap],
            done: 0,
            nodes: 0,
            clock,
        }
    }

    fn shift(&mut self, p: usize, x: usize, delta: i32) {
        let i = p * self.n + x;
        let old = self.bal[i];
        let new = old + delta;
        self.bal[i] = new;
        self.pos[x] += new.max(0) - old.max(0);
        self.neg[x] += (-new).max(0) - (-old).max(0);
    }

    fn place(&mut self, d: usize, p: usize) -> Undo {
        let undo = Undo {
            old_nparts: self.nparts,
            old_pverts: self.pverts[p],
            old_done: self.done,
        };
        if p == self.nparts {
            self.nparts += 1;
        }
        let (t, h) = self.ends[d];
        self.part_of[d] = p as u32;
        self.shift(p, t, 1);
        self.shift(p, h, -1);
        self.rem_out[t] -= 1;
        self.rem_in[h] -= 1;
        self.pedges[p] |= 1u128 << (d / 2);
        self.pverts[p] |= (1u128 << t) | (1u128 << h);
        for x in [t, h] {
            if self.rem_out[x] + self.rem_in[x] == 0 {
                self.done |= 1u128 << x;
            }
        }
        undo
    }

    fn unplace(&mut self, d: usize, p: usize, undo: Undo) {
        let (t, h) = self.ends[d];
        self.part_of[d] = NONE;
        self.shift(p, t, -1);
        self.shift(p, h, 1);
        self.rem_out[t] += 1;
        self.rem_in[h] += 1;
        self.pedges[p] &= !(1u128 << (d / 2));
        self.pverts[p] = undo.old_pverts;
        self.done = undo.old_done;
        self.nparts = undo.old_nparts;
    }

    fn feasible(&self, d: usize, undo: &Undo) -> bool {
        let (t, h) = self.ends[d];
        for x in [t, h] {
            if self.pos[x] > self.rem_in[x] || self.neg[x] > self.rem_out[x] {
                return false;
            }
        }
        let newly = self.done & !undo.old_done;
        if newly == 0 {
            return true;
        }
        (0..self.nparts).all(|p| {
            let vs = self.pverts[p];
            vs & newly == 0 || vs & !self.done != 0 || mask_connected(self.g, self.pedges[p])
        })
    }

    fn admissible(&self, d: usize, p: usize) -> bool {
        if p == self.nparts {
            return self.nparts < self.cap;
        }
        // the twin dart, and parts whose vertices are all finished
        self.part_of[d ^ 1] != p as u32 && self.pverts[p] & !self.done != 0
    }

    fn search(
        &mut self,
        depth: usize,
        split: Option<usize>,
        tasks: &mut Vec<Task>,
        found: &mut Found,
    ) {
        if self.clock.tick(&mut self.nodes) {
            return;
        }
        if depth == self.darts.len() {
            let (cover, witness) = self.project();
            match split {
                Some(_) => tasks.push(Task::Leaf(cover, witness)),
                None => keep_least(found, cover, witness),
            }
            return;
        }
        if split == Some(depth) {
            tasks.push(Task::Prefix(
                self.darts[..depth]
                    .iter()
                    .map(|&d| self.part_of[d])
                    .collect(),
            ));
            return;
        }
        let d = self.darts[depth];
        for p in 0..=self.nparts {
            if !self.admissible(d, p) {
                continue;
            }
            let undo = self.place(d, p);
            if self.feasible(d, &undo) {
                self.search(depth + 1, split, tasks, found);
            }
            self.unplace(d, p, undo);
        }
    }

    fn replay(&mut self, prefix: &[u32]) {
        for (i, &p) in prefix.iter().enumerate() {
            let d = self.darts[i];
            let _ = self.place(d, p as usize);
        }
    }

    fn project(&self) -> (CircuitDoubleCover, OrientedCover) {
        let mut parts = vec![Vec::new(); self.nparts];
        for (d, &p) in self.part_of.iter().enumerate() {
            parts[p as usize].push(d);
        }
        let circuits = parts
            .iter()
            .map(|p| Circuit::new(p.iter().map(|d| d / 2).collect()))
            .collect();
        canonicalize(circuits, parts)
    }
}

fn mask_connected(g: &SimpleGraph, edges: u128) -> bool {
    if edges == 0 {
        return true;
    }
    let first = edges.trailing_zeros() as usize;
    let (u, v) = g.edges()[first];
    let mut reached: u128 = (1 << u) | (1 << v);
    let mut left = edges & !(1u128 << first);
    loop {
        let mut grew = false;
        let mut rest = left;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = g.edges()[e];
            if reached & ((1 << a) | (1 << b)) != 0 {
                reached |= (1 << a) | (1 << b);
                left &= !(1u128 << e);
                grew = true;
            }
        }
        if left == 0 {
            return true;
        }
        if !grew {
            return false;
        }
    }
}

/// Orientable covers via dart partitions.
pub fn enumerate_orientable_partitions(
    g: &SimpleGraph,
    limits: &EnumerationLimits,
) -> Result<Enumeration, CdcError> {
    check_size(g, limits)?;
    let clock = Clock::new(limits.time_budget);
    let total = 2 * g.edge_count();
    let split = total.min(10);
    let mut tasks = Vec::new();
    let mut found = Found::new();
    Partition::new(g, &clock).search(0, Some(split), &mut tasks, &mut found);

    let results: Vec<Found> = run_pool(limits.workers, || {
        tasks
            .into_par_iter()
            .map(|task| {
                let mut local = Found::new();
                match task {
                    Task::Leaf(c, w) => keep_least(&mut local, c, w),
                    Task::Prefix(prefix) => {
                        let mut state = Partition::new(g, &clock);
                        state.replay(&prefix);
                        let mut sink = Vec::new();
                        state.search(prefix.len(), None, &mut sink, &mut local);
                    }
                }
                local
            })
            .collect()
    });
    for local in results {
        for (c, w) in local {
            keep_least(&mut found, c, w);
        }
    }
    Ok(Enumeration {
        covers: found
            .into_iter()
            .map(|(cover, w)| FoundCover {
                cover,
                witness: Some(w),
            })
            .collect(),
        complete: !clock.stopped(),
        orientable_only: true,
    })
}

// ---------------------------------------------------------------------------
// circuit exact cover

fn circuit_masks(g: &SimpleGraph) -> Vec<u128> {
    let n = g.vertex_count();
    let mut parent_edge = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut tree = vec![false; g.edge_count()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    let e = g.edge_index(u, w).expect("edge");
                    tree[e] = true;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let basis: Vec<u128> = (0..g.edge_count())
        .filter(|&e| !tree[e])
        .map(|e| {
            let (mut a, mut b) = g.edges()[e];
            let mut mask = 1u128 << e;
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                mask ^= 1u128 << parent_edge[a];
                a = parent[a];
            }
            mask
        })
        .collect();
    assert!(basis.len() < 32, "cycle space too large to list");
    let mut out = Vec::new();
    let mut cur = 0u128;
    for i in 1u64..(1u64 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        if mask_connected(g, cur) {
            out.push(cur);
        }
    }
    out.sort_unstable_by_key(|&m| mask_edges(m));
    out
}

fn mask_edges(mut m: u128) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// Every circuit (connected even subgraph) of `g`, in canonical order.
pub fn all_circuits(g: &SimpleGraph, limits: &EnumerationLimits) -> Result<Vec<Circuit>, CdcError> {
    check_size(g, limits)?;
    Ok(circuit_masks(g)
        .into_iter()
        .map(|m| Circuit::new(mask_edges(m)))
        .collect())
}

struct ExactCover<'a> {
    circ: &'a [u128],
    by_edge: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    out: Vec<Vec<usize>>,
    nodes: u64,
    clock: &'a Clock,
}

fn use_once(need1: u128, need2: u128, c: u128) -> (u128, u128) {
    ((need1 & !c) | (need2 & c), need2 & !c)
}

impl ExactCover<'_> {
    fn search(&mut self, need1: u128, need2: u128) {
        if self.clock.tick(&mut self.nodes) {
            return;
        }
        let avail = need1 | need2;
        if avail == 0 {
            let mut sol = self.chosen.clone();
            sol.sort_unstable();
            self.out.push(sol);
            return;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut rest = avail;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cands: Vec<usize> = self.by_edge[e]
                .iter()
                .copied()
                .filter(|&c| self.circ[c] & !avail == 0)
                .collect();
            if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                let empty = cands.is_empty();
                best = Some((e, cands));
                if empty {
                    return;
                }
            }
        }
        let (e, cands) = best.expect("some edge still needs covering");
        if need2 >> e & 1 == 1 {
            for (ai, &i) in cands.iter().enumerate() {
                let (n1, n2) = use_once(need1, need2, self.circ[i]);
                for &j in &cands[ai..] {
                    if self.circ[j] & !(n1 | n2) != 0 {
                        continue;
                    }
                    let (m1, m2) = use_once(n1, n2, self.circ[j]);
                    self.chosen.extend([i, j]);
                    self.search(m1, m2);
                    self.chosen.truncate(self.chosen.len() - 2);
                }
            }
        } else {
            for &i in &cands {
                let (n1, n2) = use_once(need1, need2, self.circ[i]);
                self.chosen.push(i);
                self.search(n1, n2);
                self.chosen.pop();
            }
        }
    }
}

/// Every cover, orientable or not, via circuit exact cover.
pub fn enumerate_all_covers(
    g: &SimpleGraph,
    limits: &EnumerationLimits,
) -> Result<Enumeration, CdcError> {
    check_size(g, limits)?;
    let clock = Clock::new(limits.time_budget);
    let circ = circuit_masks(g);
    let mut by_edge = vec![Vec::new(); g.edge_count()];
    for (i, &c) in circ.iter().enumerate() {
        for e in mask_edges(c) {
            by_edge[e].push(i);
        }
    }
    let all: u128 = if g.edge_count() == MASK_BITS {
        u128::MAX
    } else {
        (1u128 << g.edge_count()) - 1
    };
    let mut search = ExactCover {
        circ: &circ,
        by_edge,
        chosen: Vec::new(),
        out: Vec::new(),
        nodes: 0,
        clock: &clock,
    };
    search.search(0, all);
    let solutions = search.out;

    let covers: Vec<CircuitDoubleCover> = solutions
        .iter()
        .map(|s| {
            CircuitDoubleCover::new(
                s.iter()
                    .map(|&i| Circuit::new(mask_edges(circ[i])))
                    .collect(),
            )
        })
        .collect();
    let mut covers: Vec<FoundCover> = run_pool(limits.workers, || {
        covers
            .into_par_iter()
            .map(|cover| {
                let witness = match check_orientability(g, &cover) {
                    Ok(Orientability::Orientable(w)) => Some(w),
                    _ => None,
                };
                FoundCover { cover, witness }
            })
            .collect()
    });
    covers.sort_by(|a, b| a.cover.cmp(&b.cover));
    covers.dedup_by(|a, b| a.cover == b.cover);
    Ok(Enumeration {
        covers,
        complete: !clock.stopped(),
        orientable_only: false,
    })
}
