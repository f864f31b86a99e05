//! Flower snark construction and the structural queries the rest of the
//! crate builds on.
//!
//! Copy `i` (0-based) holds the four vertices `b^i, a^i, c^i, d^i` with ids
//! `4i + role` where the role order is b = 0, a = 1, c = 2, d = 3. The twist
//! always sits between copy `n - 1` and copy 0: edges `c^{n-1} d^0` and
//! `d^{n-1} c^0`. Human-readable labels are 1-based (`a^1` is id 1).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    B = 0,
    A = 1,
    C = 2,
    D = 3,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::B, Role::A, Role::C, Role::D];

    pub fn letter(self) -> char {
        match self {
            Role::B => 'b',
            Role::A => 'a',
            Role::C => 'c',
            Role::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Role> {
        match c {
            'b' => Some(Role::B),
            'a' => Some(Role::A),
            'c' => Some(Role::C),
            'd' => Some(Role::D),
            _ => None,
        }
    }
}

/// A vertex of `J_n` as (copy, role).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub copy: usize,
    pub role: Role,
}

impl VertexId {
    pub fn new(copy: usize, role: Role) -> Self {
        Self { copy, role }
    }

    pub fn encode(self) -> usize {
        4 * self.copy + self.role as usize
    }

    pub fn decode(id: usize) -> Self {
        Self {
            copy: id / 4,
            role: Role::ALL[id % 4],
        }
    }

    /// 1-based label such as `a^3`.
    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.role.letter(), self.copy + 1)
    }
}

/// Label of a raw vertex id, 1-based.
pub fn vertex_label(id: usize) -> String {
    VertexId::decode(id).label()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dimacs,
    Json,
    AdjList,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" => Ok(ExportFormat::Dimacs),
            "json" => Ok(ExportFormat::Json),
            "adjlist" => Ok(ExportFormat::AdjList),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// The flower snark `J_n`. Immutable once built.
#[derive(Debug, Clone)]
pub struct FlowerSnark {
    n: usize,
    adjacency: Vec<[usize; 3]>,
    closed: Vec<VertexSet>,
    open: Vec<VertexSet>,
}

/// Builds `J_n`; `n` must be at least 3.
pub fn build_flower_snark(n: usize) -> Result<FlowerSnark> {
    FlowerSnark::new(n)
}

impl FlowerSnark {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfDomain(n));
        }
        let nv = 4 * n;
        let id = |i: usize, r: Role| VertexId::new(i, r).encode();
        let mut lists: Vec<Vec<usize>> = vec![Vec::with_capacity(3); nv];
        let mut add = |u: usize, v: usize| {
            lists[u].push(v);
            lists[v].push(u);
        };
        for i in 0..n {
            add(id(i, Role::A), id(i, Role::B));
            add(id(i, Role::A), id(i, Role::C));
            add(id(i, Role::A), id(i, Role::D));
            add(id(i, Role::B), id((i + 1) % n, Role::B));
            if i + 1 < n {
                add(id(i, Role::C), id(i + 1, Role::C));
                add(id(i, Role::D), id(i + 1, Role::D));
            }
        }
        add(id(n - 1, Role::C), id(0, Role::D));
        add(id(n - 1, Role::D), id(0, Role::C));

        let adjacency: Vec<[usize; 3]> = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                [l[0], l[1], l[2]]
            })
            .collect();
        let open: Vec<VertexSet> = adjacency
            .iter()
            .map(|nb| VertexSet::from_ids(nv, nb.iter().copied()))
            .collect();
        let closed = open
            .iter()
            .enumerate()
            .map(|(v, s)| {
                let mut c = s.clone();
                c.insert(v);
                c
            })
            .collect();
        Ok(Self {
            n,
            adjacency,
            closed,
            open,
        })
    }

    /// Number of copies.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        4 * self.n
    }

    pub fn num_edges(&self) -> usize {
        6 * self.n
    }

    pub fn vertex(&self, copy: usize, role: Role) -> usize {
        debug_assert!(copy < self.n);
        VertexId::new(copy, role).encode()
    }

    pub fn neighbors(&self, v: usize) -> &[usize; 3] {
        &self.adjacency[v]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    /// `N(v)`.
    pub fn open_neighborhood(&self, v: usize) -> &VertexSet {
        &self.open[v]
    }

    /// `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.num_vertices())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    /// The set of all vertices with the given role, one per copy.
    pub fn role_set(&self, role: Role) -> VertexSet {
        VertexSet::from_ids(
            self.num_vertices(),
            (0..self.n).map(|i| self.vertex(i, role)),
        )
    }

    /// The four vertices of copy `i`.
    pub fn copy_vertices(&self, i: usize) -> Result<VertexSet> {
        self.check_copy(i)?;
        Ok(VertexSet::from_ids(self.num_vertices(), 4 * i..4 * i + 4))
    }

    /// `s` restricted to the vertices of copy `i`.
    pub fn copy_subset(&self, s: &VertexSet, i: usize) -> Result<VertexSet> {
        Ok(s.intersection(&self.copy_vertices(i)?))
    }

    /// Per-copy weights of `s`.
    pub fn copy_weights(&self, s: &VertexSet) -> Vec<u8> {
        let mut w = vec![0u8; self.n];
        for v in s {
            w[v / 4] += 1;
        }
        w
    }

    /// `[w_0, ..., w_4]`: how many copies carry each weight.
    pub fn weight_histogram(&self, s: &VertexSet) -> [usize; 5] {
        weight_histogram(&self.copy_weights(s))
    }

    /// Whether the subgraph induced by `s` is connected. The empty set and
    /// singletons count as connected.
    pub fn is_connected_induced(&self, s: &VertexSet) -> bool {
        let Some(start) = s.iter().next() else {
            return true;
        };
        let mut seen = VertexSet::from_ids(self.num_vertices(), [start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if s.contains(v) && seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.count() == s.count()
    }

    /// Length of a shortest cycle, by BFS from every vertex.
    pub fn girth(&self) -> usize {
        let nv = self.num_vertices();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; nv];
        let mut parent = vec![usize::MAX; nv];
        for root in 0..nv {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &v in &self.adjacency[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        best
    }

    /// A proper 3-edge-colouring indexed like [`FlowerSnark::edges`], if one
    /// exists. Exhaustive backtracking; intended for n <= 9.
    pub fn three_edge_coloring(&self) -> Option<Vec<u8>> {
        let edges = self.edges();
        let index_of = |u: usize, v: usize| {
            let key = (u.min(v), u.max(v));
            edges.binary_search(&key).expect("edge exists")
        };
        // Visit edges in BFS order so each new edge touches coloured ones.
        let nv = self.num_vertices();
        let mut order = Vec::with_capacity(edges.len());
        let mut listed = vec![false; edges.len()];
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                let e = index_of(u, v);
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }

        let mut colors = vec![u8::MAX; edges.len()];
        let mut used = vec![0u8; nv];
        // The three edges at vertex 0 come first; colour permutations let us fix them.
        for (c, &e) in order.iter().take(3).enumerate() {
            let (u, v) = edges[e];
            colors[e] = c as u8;
            used[u] |= 1 << c;
            used[v] |= 1 << c;
        }

        fn go(
            pos: usize,
            order: &[usize],
            edges: &[(usize, usize)],
            colors: &mut [u8],
            used: &mut [u8],
        ) -> bool {
            let Some(&e) = order.get(pos) else {
                return true;
            };
            let (u, v) = edges[e];
            let free = !(used[u] | used[v]) & 0b111;
            for c in 0..3u8 {
                if free >> c & 1 == 0 {
                    continue;
                }
                colors[e] = c;
                used[u] |= 1 << c;
                used[v] |= 1 << c;
                if go(pos + 1, order, edges, colors, used) {
                    return true;
                }
                used[u] &= !(1 << c);
                used[v] &= !(1 << c);
            }
            colors[e] = u8::MAX;
            false
        }

        go(3, &order, &edges, &mut colors, &mut used).then_some(colors)
    }

    /// 3 if the graph is 3-edge-colourable, otherwise 4 (Vizing's bound for
    /// cubic graphs). Exhaustive; intended for n <= 9.
    pub fn chromatic_index(&self) -> usize {
        if self.three_edge_coloring().is_some() {
            3
        } else {
            4
        }
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dimacs => self.to_dimacs(),
            ExportFormat::Json => self.to_json(),
            ExportFormat::AdjList => self.to_adjlist(),
        }
    }

    fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.num_vertices(), self.num_edges());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Vertex {
            id: usize,
            copy: usize,
            role: Role,
            label: String,
        }
        #[derive(Serialize)]
        struct Graph {
            n: usize,
            vertices: Vec<Vertex>,
            edges: Vec<[usize; 2]>,
        }
        let graph = Graph {
            n: self.n,
            vertices: (0..self.num_vertices())
                .map(|id| {
                    let v = VertexId::decode(id);
                    Vertex {
                        id,
                        copy: v.copy,
                        role: v.role,
                        label: v.label(),
                    }
                })
                .collect(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        let mut out = serde_json::to_string_pretty(&graph).expect("graph serializes");
        out.push('\n');
        out
    }

    fn to_adjlist(&self) -> String {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(v, nb)| format!("{v}: {} {} {}\n", nb[0], nb[1], nb[2]))
            .collect()
    }

    fn check_copy(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::CopyOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }
}

/// Exports `g` in the named format (`dimacs`, `json` or `adjlist`).
pub fn export_graph(g: &FlowerSnark, format: &str) -> Result<String> {
    Ok(g.export(format.parse()?))
}

/// Histogram of a weight vector; entries above 4 are ignored.
pub fn weight_histogram(weights: &[u8]) -> [usize; 5] {
    let mut h = [0usize; 5];
    for &w in weights {
        if let Some(slot) = h.get_mut(w as usize) {
            *slot += 1;
        }
    }
    h
}
