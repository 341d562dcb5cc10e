//! Watchman's walks: minimum closed dominating walks in digraphs.
//!
//! The exact solver runs a breadth-first (uniform-cost, unit arcs) search
//! over states `(current vertex, dominated set)` from every start vertex.
//! Witnesses and the full minimum set come from a depth-first enumeration
//! at the known optimum, restricted to walks whose smallest vertex is the
//! start, which yields walks directly in canonical rotation order.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_de_bruijn_graph, generated_subdigraph, Digraph, Walk};
use crate::limits::Limits;
use crate::seq::{gen_fkm, CyclicSequence};

/// `w(G(a,k)) = a^(k-1)`, defined for `k >= 2`.
pub fn watchman_number_formula(a: usize, k: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidOrder { got: k, min: 2 });
    }
    crate::seq::Alphabet::new(a)?;
    (a as u64)
        .checked_pow((k - 1) as u32)
        .ok_or_else(|| Error::cap("a^(k-1)", u128::MAX, usize::MAX))
}

/// The walk of `G(a,k)` through the `k`-windows of an order-`(k-1)` de
/// Bruijn sequence, together with the graph it lives in.
#[derive(Debug, Clone)]
pub struct TheoremWalk {
    pub sequence: CyclicSequence,
    pub graph: Digraph,
    pub walk: Walk,
}

/// Builds the closed walk on the `k`-tour of `seed` (default: the least
/// order-`(k-1)` de Bruijn sequence). Its vertices have pairwise distinct
/// `(k-1)`-suffixes, so their out-neighbourhoods partition `G(a,k)`.
pub fn theorem_walk(
    a: usize,
    k: usize,
    seed: Option<&CyclicSequence>,
    limits: &Limits,
) -> Result<TheoremWalk> {
    if k < 2 {
        return Err(Error::InvalidOrder { got: k, min: 2 });
    }
    let sequence = match seed {
        Some(s) => {
            if s.alphabet().size() != a || !s.is_de_bruijn_sequence(k - 1) {
                return Err(Error::NotDeBruijn { order: k - 1 });
            }
            s.clone()
        }
        None => gen_fkm(a, k - 1, limits)?,
    };
    let graph = build_de_bruijn_graph(a, k, limits)?;
    let walk = walk_on_tour(&graph, &sequence, k)?;
    Ok(TheoremWalk {
        sequence,
        graph,
        walk,
    })
}

fn walk_on_tour(graph: &Digraph, sequence: &CyclicSequence, k: usize) -> Result<Walk> {
    let tour = sequence.k_tour(k)?;
    let vertices = tour
        .windows()
        .iter()
        .map(|w| {
            graph
                .vertex_index(w)
                .ok_or_else(|| Error::UnknownVertex(w.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Walk::closed(vertices))
}

/// The closed walk through the `k`-tour of `sequence` inside `graph`,
/// repeated windows revisited. `graph` must contain every window.
pub fn induced_walk_in(graph: &Digraph, sequence: &CyclicSequence, k: usize) -> Result<Walk> {
    let walk = walk_on_tour(graph, sequence, k)?;
    graph.check_walk(&walk)?;
    Ok(walk)
}

/// The generated subdigraph of `sequence` and the walk it induces there.
pub fn induced_walk(sequence: &CyclicSequence, k: usize) -> Result<(Digraph, Walk)> {
    let graph = generated_subdigraph(sequence, k)?;
    let walk = induced_walk_in(&graph, sequence, k)?;
    Ok((graph, walk))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum_length: usize,
    pub witness: Walk,
    pub explored_states: u64,
}

/// Wire form of [`SolveResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveJson {
    pub optimum: usize,
    pub witness: Vec<String>,
    pub explored_states: u64,
}

impl SolveResult {
    pub fn to_json_value(&self, graph: &Digraph) -> SolveJson {
        SolveJson {
            optimum: self.optimum_length,
            witness: self.witness.labels(graph),
            explored_states: self.explored_states,
        }
    }
}

fn check_oracle_size(graph: &Digraph, limits: &Limits) -> Result<()> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::MalformedGraph("graph has no vertices".into()));
    }
    if n > limits.max_vertices {
        return Err(Error::CapExceeded {
            what: "vertex count",
            requested: n as u128,
            cap: limits.max_vertices as u128,
            estimate: Some((n as u128) << n.min(120)),
        });
    }
    Ok(())
}

/// Visited set over `(vertex, dominated set)` for one start.
enum Visited {
    Dense { bits: Vec<u64>, n: usize },
    Sparse(HashSet<u64>),
}

const DENSE_LIMIT: usize = 22;

impl Visited {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            let words = (n << n).div_ceil(64);
            Visited::Dense {
                bits: vec![0; words],
                n,
            }
        } else {
            Visited::Sparse(HashSet::new())
        }
    }

    fn clear(&mut self) {
        match self {
            Visited::Dense { bits, .. } => bits.iter_mut().for_each(|w| *w = 0),
            Visited::Sparse(set) => set.clear(),
        }
    }

    /// Returns true if the state was not yet present.
    fn insert(&mut self, v: usize, dom: u64) -> bool {
        match self {
            Visited::Dense { bits, n } => {
                let i = (dom as usize) * *n + v;
                let (word, bit) = (i / 64, 1u64 << (i % 64));
                let fresh = bits[word] & bit == 0;
                bits[word] |= bit;
                fresh
            }
            Visited::Sparse(set) => set.insert((dom << 6) | v as u64),
        }
    }
}

/// Exact minimum closed dominating walk.
///
/// Returns [`Error::Infeasible`] when no closed dominating walk exists. A
/// stationary watchman (length 0) is admitted when one vertex dominates
/// the whole graph. Among optimal walks the witness is the one with the
/// lexicographically least canonical rotation.
pub fn solve_min_walk(graph: &Digraph, limits: &Limits) -> Result<SolveResult> {
    check_oracle_size(graph, limits)?;
    let n = graph.vertex_count();
    let masks = graph.neighborhood_masks();
    let full = full_mask(n);

    if let Some(v) = (0..n).find(|&v| masks[v] == full) {
        return Ok(SolveResult {
            optimum_length: 0,
            witness: Walk::closed(vec![v]),
            explored_states: 0,
        });
    }

    let mut explored = 0u64;
    let mut best: Option<usize> = None;
    let mut visited = Visited::new(n);
    let mut frontier = VecDeque::new();
    for start in 0..n {
        visited.clear();
        frontier.clear();
        visited.insert(start, masks[start]);
        frontier.push_back((start, masks[start], 0usize));
        'search: while let Some((v, dom, depth)) = frontier.pop_front() {
            explored += 1;
            if best.is_some_and(|b| depth + 1 >= b) {
                break;
            }
            for &u in graph.out_neighbors(v) {
                let next = dom | masks[u];
                if u == start && next == full {
                    best = Some(depth + 1);
                    break 'search;
                }
                if visited.insert(u, next) {
                    frontier.push_back((u, next, depth + 1));
                }
            }
        }
    }

    let optimum = best.ok_or(Error::Infeasible)?;
    let witness = WalkSearch::new(graph, &masks, optimum)
        .first()
        .expect("a walk of optimum length exists");
    Ok(SolveResult {
        optimum_length: optimum,
        witness,
        explored_states: explored,
    })
}

/// Every closed dominating walk of exactly `length` arcs, one per rotation
/// class, each in canonical rotation, in ascending order.
pub fn enumerate_min_walks(graph: &Digraph, length: usize, limits: &Limits) -> Result<Vec<Walk>> {
    check_oracle_size(graph, limits)?;
    let masks = graph.neighborhood_masks();
    Ok(WalkSearch::new(graph, &masks, length).all())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Depth-first search for closed dominating walks of a fixed length whose
/// first vertex is also their smallest.
struct WalkSearch<'a> {
    graph: &'a Digraph,
    masks: &'a [u64],
    length: usize,
    full: u64,
    max_gain: u32,
}

struct StartContext {
    start: usize,
    /// Steps needed to get back to `start` using only vertices `>= start`.
    back: Vec<usize>,
    dead: HashSet<(usize, u64, usize)>,
}

impl<'a> WalkSearch<'a> {
    fn new(graph: &'a Digraph, masks: &'a [u64], length: usize) -> Self {
        let max_gain = (0..graph.vertex_count())
            .map(|v| graph.out_neighbors(v).len() as u32 + 1)
            .max()
            .unwrap_or(1);
        WalkSearch {
            graph,
            masks,
            length,
            full: full_mask(graph.vertex_count()),
            max_gain,
        }
    }

    fn stationary(&self) -> Vec<Walk> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.masks[v] == self.full)
            .map(|v| Walk::closed(vec![v]))
            .collect()
    }

    fn first(&self) -> Option<Walk> {
        if self.length == 0 {
            return self.stationary().into_iter().next();
        }
        for start in 0..self.graph.vertex_count() {
            let mut ctx = self.context(start);
            let mut path = vec![start];
            let mut found = None;
            self.descend(
                &mut ctx,
                start,
                self.masks[start],
                self.length,
                &mut path,
                &mut |p| {
                    found = Some(p.to_vec());
                    true
                },
            );
            if let Some(vertices) = found {
                return Some(Walk::closed(vertices));
            }
        }
        None
    }

    fn all(&self) -> Vec<Walk> {
        if self.length == 0 {
            return self.stationary();
        }
        let mut walks = BTreeSet::new();
        for start in 0..self.graph.vertex_count() {
            let mut ctx = self.context(start);
            let mut path = vec![start];
            self.descend(
                &mut ctx,
                start,
                self.masks[start],
                self.length,
                &mut path,
                &mut |p| {
                    walks.insert(Walk::closed(p.to_vec()).canonical());
                    false
                },
            );
        }
        walks.into_iter().collect()
    }

    fn context(&self, start: usize) -> StartContext {
        let n = self.graph.vertex_count();
        let mut back = vec![usize::MAX; n];
        back[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in self.graph.in_neighbors(v) {
                if u >= start && back[u] == usize::MAX {
                    back[u] = back[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        StartContext {
            start,
            back,
            dead: HashSet::new(),
        }
    }

    /// `path` holds the walk so far, ending at `v`. `emit` returns true to
    /// stop the search; so does this function.
    fn descend(
        &self,
        ctx: &mut StartContext,
        v: usize,
        dom: u64,
        remaining: usize,
        path: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        self.step(ctx, v, dom, remaining, path, emit).0
    }

    /// Returns `(stop, found)`. States with no completion are memoized.
    fn step(
        &self,
        ctx: &mut StartContext,
        v: usize,
        dom: u64,
        remaining: usize,
        path: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> (bool, bool) {
        if ctx.dead.contains(&(v, dom, remaining)) {
            return (false, false);
        }
        let mut found = false;
        for &u in self.graph.out_neighbors(v) {
            if u < ctx.start || ctx.back[u] > remaining - 1 {
                continue;
            }
            let next = dom | self.masks[u];
            if remaining == 1 {
                // u == start here, since back[u] must be 0.
                if next == self.full {
                    found = true;
                    if emit(path) {
                        return (true, true);
                    }
                }
                continue;
            }
            let missing = (self.full & !next).count_ones();
            if missing > (remaining as u32 - 1) * self.max_gain {
                continue;
            }
            path.push(u);
            let (stop, below) = self.step(ctx, u, next, remaining - 1, path, emit);
            path.pop();
            found |= below;
            if stop {
                return (true, found);
            }
        }
        if !found {
            ctx.dead.insert((v, dom, remaining));
        }
        (false, found)
    }
}
