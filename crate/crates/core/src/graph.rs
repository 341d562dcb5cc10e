//! Directed graphs over k-string labels: full de Bruijn digraphs, the
//! subdigraph generated by a sequence, domination predicates, Eulerian
//! circuits and DOT/JSON export.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::seq::{parse_sequence, Alphabet, CyclicSequence, KString};

/// Where a digraph came from. Non-custom digraphs only contain left-shift
/// arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    FullDeBruijn,
    Generated { sequence: CyclicSequence },
    Custom,
}

#[derive(Debug, Clone)]
pub struct Digraph {
    alphabet: Alphabet,
    order: usize,
    vertices: Vec<KString>,
    index: HashMap<KString, usize>,
    arcs: BTreeSet<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.order == other.order
            && self.vertices == other.vertices
            && self.arcs == other.arcs
            && self.provenance == other.provenance
    }
}

impl Eq for Digraph {}

impl Digraph {
    fn assemble(
        alphabet: Alphabet,
        order: usize,
        vertices: Vec<KString>,
        arcs: BTreeSet<(usize, usize)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if v.order() != order || v.alphabet() != alphabet {
                return Err(Error::MalformedGraph(format!(
                    "vertex {v} does not have order {order} over alphabet {}",
                    alphabet.size()
                )));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex label {v}")));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(Error::MalformedGraph(format!("arc ({u},{v}) out of range")));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        let graph = Digraph {
            alphabet,
            order,
            vertices,
            index,
            arcs,
            out_adj,
            in_adj,
            provenance,
        };
        if graph.provenance != Provenance::Custom {
            for &(u, v) in &graph.arcs {
                let (from, to) = (&graph.vertices[u], &graph.vertices[v]);
                if from.symbols()[1..] != to.symbols()[..order - 1] {
                    return Err(Error::MalformedGraph(format!(
                        "arc {from}->{to} is not a left shift"
                    )));
                }
            }
        }
        Ok(graph)
    }

    /// A digraph with arbitrary arcs between the given labels.
    pub fn custom(
        alphabet: Alphabet,
        order: usize,
        vertices: Vec<KString>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::assemble(
            alphabet,
            order,
            vertices,
            arcs.into_iter().collect(),
            Provenance::Custom,
        )
    }

    /// Induced subdigraph of the de Bruijn digraph on `labels`, sorted.
    fn induced(
        alphabet: Alphabet,
        order: usize,
        labels: BTreeSet<KString>,
        provenance: Provenance,
    ) -> Result<Self> {
        let vertices: Vec<KString> = labels.into_iter().collect();
        let index: HashMap<&KString, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let arcs = vertices
            .iter()
            .enumerate()
            .flat_map(|(u, label)| {
                label
                    .successors()
                    .into_iter()
                    .filter_map(|s| index.get(&s).map(|&v| (u, v)))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::assemble(alphabet, order, vertices, arcs, provenance)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> &[KString] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn label(&self, v: usize) -> &KString {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &KString) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, text: &str) -> Result<usize> {
        KString::parse(text, self.alphabet)
            .ok()
            .and_then(|k| self.vertex_index(&k))
            .ok_or_else(|| Error::UnknownVertex(text.to_string()))
    }

    /// Out-neighbours of `v` in ascending index order.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// `{v}` together with every out-neighbour of `v`.
    pub fn closed_out_neighborhood(&self, v: usize) -> Result<BTreeSet<usize>> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let mut set: BTreeSet<usize> = self.out_adj[v].iter().copied().collect();
        set.insert(v);
        Ok(set)
    }

    /// Closed out-neighbourhoods as bitmasks; requires at most 64 vertices.
    pub(crate) fn neighborhood_masks(&self) -> Vec<u64> {
        assert!(self.vertex_count() <= 64);
        (0..self.vertex_count())
            .map(|v| {
                self.out_adj[v]
                    .iter()
                    .fold(1u64 << v, |mask, &u| mask | (1u64 << u))
            })
            .collect()
    }

    /// Every vertex is in `set` or is an out-neighbour of a member.
    /// Indices outside the graph make the answer `false`.
    pub fn is_dominating_set(&self, set: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut covered = vec![false; n];
        for &v in set {
            if v >= n {
                return false;
            }
            covered[v] = true;
            for &u in &self.out_adj[v] {
                covered[u] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Closed, every step (including the wraparound) is an arc, and the
    /// visited vertices dominate the graph.
    pub fn is_closed_dominating_walk(&self, walk: &Walk) -> bool {
        walk.closed && self.check_walk(walk).is_ok() && self.is_dominating_set(&walk.vertices)
    }

    /// Structural check of a walk against this graph.
    pub fn check_walk(&self, walk: &Walk) -> Result<()> {
        let n = self.vertex_count();
        if walk.vertices.is_empty() {
            return Err(Error::MalformedWalk("empty walk".into()));
        }
        if let Some(&bad) = walk.vertices.iter().find(|&&v| v >= n) {
            return Err(Error::MalformedWalk(format!("vertex #{bad} not in graph")));
        }
        for (u, v) in walk.steps() {
            if !self.has_arc(u, v) {
                return Err(Error::MalformedWalk(format!(
                    "{}->{} is not an arc",
                    self.vertices[u], self.vertices[v]
                )));
            }
        }
        Ok(())
    }

    /// Hierholzer's algorithm. The returned closed walk lists each arc's
    /// source once, so its length equals the arc count.
    pub fn eulerian_circuit(&self) -> Result<Walk> {
        if self.arcs.is_empty() {
            return Err(Error::NoEulerianCircuit("graph has no arcs".into()));
        }
        if let Some(v) =
            (0..self.vertex_count()).find(|&v| self.out_adj[v].len() != self.in_adj[v].len())
        {
            return Err(Error::NoEulerianCircuit(format!(
                "vertex {} has in-degree {} but out-degree {}",
                self.vertices[v],
                self.in_adj[v].len(),
                self.out_adj[v].len()
            )));
        }
        let start = (0..self.vertex_count())
            .find(|&v| !self.out_adj[v].is_empty())
            .expect("graph has arcs");

        let mut next = vec![0usize; self.vertex_count()];
        let mut stack = vec![start];
        let mut circuit = Vec::with_capacity(self.arc_count() + 1);
        while let Some(&v) = stack.last() {
            if let Some(&u) = self.out_adj[v].get(next[v]) {
                next[v] += 1;
                stack.push(u);
            } else {
                circuit.push(v);
                stack.pop();
            }
        }
        if circuit.len() != self.arc_count() + 1 {
            return Err(Error::NoEulerianCircuit(
                "arcs are not all in one connected component".into(),
            ));
        }
        circuit.reverse();
        circuit.pop();
        Ok(Walk::closed(circuit))
    }

    /// Deterministic DOT text. Arcs traversed by `highlight` are drawn bold
    /// black, all others grey.
    pub fn to_dot(&self, highlight: Option<&Walk>) -> Result<String> {
        let bold: BTreeSet<(usize, usize)> = match highlight {
            Some(walk) => {
                self.check_walk(walk)?;
                walk.steps().collect()
            }
            None => BTreeSet::new(),
        };
        let mut out = String::new();
        let name = match &self.provenance {
            Provenance::FullDeBruijn => format!("G({},{})", self.alphabet.size(), self.order),
            Provenance::Generated { sequence } => {
                format!("G_D({},{}) D={sequence}", self.alphabet.size(), self.order)
            }
            Provenance::Custom => "custom".to_string(),
        };
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for v in &self.vertices {
            writeln!(out, "  \"{v}\";").unwrap();
        }
        for &(u, v) in &self.arcs {
            let style = if bold.contains(&(u, v)) {
                "color=black, style=bold"
            } else {
                "color=grey"
            };
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [{style}];",
                self.vertices[u], self.vertices[v]
            )
            .unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            alphabet: self.alphabet.size(),
            order: self.order,
            vertices: self.vertices.iter().map(ToString::to_string).collect(),
            arcs: self.arcs.iter().map(|&(u, v)| [u, v]).collect(),
            provenance: match &self.provenance {
                Provenance::FullDeBruijn => ProvenanceJson::Full,
                Provenance::Generated { sequence } => ProvenanceJson::Generated {
                    sequence: sequence.to_string(),
                },
                Provenance::Custom => ProvenanceJson::Custom,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }
}

/// Wire form of a digraph: arcs are index pairs into `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub alphabet: usize,
    pub order: usize,
    pub vertices: Vec<String>,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default = "custom_provenance")]
    pub provenance: ProvenanceJson,
}

fn custom_provenance() -> ProvenanceJson {
    ProvenanceJson::Custom
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProvenanceJson {
    Full,
    Generated { sequence: String },
    Custom,
}

impl TryFrom<GraphJson> for Digraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let alphabet = Alphabet::new(raw.alphabet)?;
        if raw.order == 0 {
            return Err(Error::InvalidOrder { got: 0, min: 1 });
        }
        let vertices = raw
            .vertices
            .iter()
            .map(|s| KString::parse(s, alphabet))
            .collect::<Result<Vec<_>>>()?;
        let provenance = match raw.provenance {
            ProvenanceJson::Full => Provenance::FullDeBruijn,
            ProvenanceJson::Generated { sequence } => Provenance::Generated {
                sequence: parse_sequence(&sequence, alphabet.size())?,
            },
            ProvenanceJson::Custom => Provenance::Custom,
        };
        Digraph::assemble(
            alphabet,
            raw.order,
            vertices,
            raw.arcs.into_iter().map(|[u, v]| (u, v)).collect(),
            provenance,
        )
    }
}

/// A vertex sequence in one particular digraph.
///
/// Length counts arcs: the vertex count for a closed walk, one less for
/// an open walk. A closed walk of a single vertex is the stationary walk
/// of length 0 and traverses no arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    vertices: Vec<usize>,
    closed: bool,
}

impl Walk {
    pub fn closed(vertices: Vec<usize>) -> Self {
        Walk {
            vertices,
            closed: true,
        }
    }

    pub fn open(vertices: Vec<usize>) -> Self {
        Walk {
            vertices,
            closed: false,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        match (self.closed, self.vertices.len()) {
            (_, 0) => 0,
            (true, 1) => 0,
            (true, n) => n,
            (false, n) => n - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The arcs traversed, in order, wraparound included for closed walks.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        let count = self.len();
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Lexicographically least rotation of a closed walk; open walks are
    /// returned unchanged.
    pub fn canonical(&self) -> Walk {
        if !self.closed || self.vertices.len() < 2 {
            return self.clone();
        }
        let n = self.vertices.len();
        let best = (0..n)
            .min_by(|&a, &b| {
                let ra = self.vertices[a..].iter().chain(&self.vertices[..a]);
                let rb = self.vertices[b..].iter().chain(&self.vertices[..b]);
                ra.cmp(rb)
            })
            .unwrap();
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(best);
        Walk::closed(vertices)
    }

    pub fn labels(&self, graph: &Digraph) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| graph.label(v).to_string())
            .collect()
    }

    /// Resolves vertex labels against `graph`.
    pub fn from_labels<S: AsRef<str>>(graph: &Digraph, labels: &[S], closed: bool) -> Result<Walk> {
        let vertices = labels
            .iter()
            .map(|s| graph.lookup(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Walk { vertices, closed })
    }
}

/// `G(a,k)`: every `k`-string in lexicographic order, an arc for every left
/// shift.
pub fn build_de_bruijn_graph(a: usize, k: usize, limits: &Limits) -> Result<Digraph> {
    let alphabet = Alphabet::new(a)?;
    if k == 0 {
        return Err(Error::InvalidOrder { got: 0, min: 1 });
    }
    let n = limits.check_power(a, k)?;
    let vertices: Vec<KString> = (0..n).map(|i| KString::from_rank(alphabet, k, i)).collect();
    // In rank order the successors of rank r are (r * a) mod n + c.
    let arcs = (0..n)
        .flat_map(|u| (0..a).map(move |c| (u, (u * a) % n + c)))
        .collect();
    Digraph::assemble(alphabet, k, vertices, arcs, Provenance::FullDeBruijn)
}

/// `G_D(|A|,k)`: the windows of the `k`-tour of `sequence` plus all of their
/// left-shift successors, with every left-shift arc among them.
pub fn generated_subdigraph(sequence: &CyclicSequence, k: usize) -> Result<Digraph> {
    let tour = sequence.k_tour(k)?;
    let mut labels = BTreeSet::new();
    for w in tour.windows() {
        labels.extend(w.successors());
        labels.insert(w.clone());
    }
    Digraph::induced(
        sequence.alphabet(),
        k,
        labels,
        Provenance::Generated {
            sequence: sequence.clone(),
        },
    )
}

/// De Bruijn sequence read off an Eulerian circuit of `G(a,k-1)`: the
/// symbol appended by each arc, in circuit order.
///
/// For `k = 1` the underlying graph is a single vertex carrying one loop
/// per symbol, traversed in symbol order.
pub fn gen_eulerian(a: usize, k: usize, limits: &Limits) -> Result<CyclicSequence> {
    let alphabet = Alphabet::new(a)?;
    if k == 0 {
        return Err(Error::InvalidOrder { got: 0, min: 1 });
    }
    limits.check_power(a, k)?;
    if k == 1 {
        return CyclicSequence::new(alphabet, (0..a as u8).collect());
    }
    let graph = build_de_bruijn_graph(a, k - 1, limits)?;
    let circuit = graph.eulerian_circuit()?;
    let symbols = circuit
        .vertices()
        .iter()
        .map(|&v| *graph.label(v).symbols().last().expect("k >= 1"))
        .collect();
    CyclicSequence::new(alphabet, symbols)
}
