//! Immutable simple graphs with packed bit-row adjacency.
//!
//! Adjacency is stored as `n` rows of `n` bits so that common-neighbour
//! computation is a word-wise AND followed by a popcount; that operation
//! dominates the runtime of clique counting.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A set of vertices of a graph of order `n`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    /// The full vertex set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.bits[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        }
        s
    }

    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut s = Self::empty(n);
        for &v in members {
            s.try_insert(v)?;
        }
        Ok(s)
    }

    pub fn try_insert(&mut self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        self.bits[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        Ok(())
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Capacity of the universe, i.e. the order of the host graph.
    pub fn universe(&self) -> usize {
        self.n
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn from_words(n: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(n));
        VertexSet { n, bits }
    }
}

/// An immutable simple graph: order `n`, symmetric bit-row adjacency,
/// zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
        })
    }

    /// Builds a graph from an explicit edge list. Duplicate edges are
    /// harmless; out-of-range endpoints and self-loops are input errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("a cycle needs at least 3 vertices"));
        }
        let mut g = Self::empty(n)?;
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        Ok(g)
    }

    /// Complete multipartite graph with the given class sizes; classes occupy
    /// consecutive index ranges in the given order.
    pub fn complete_multipartite(class_sizes: &[usize]) -> Result<Self> {
        let n: usize = class_sizes.iter().sum();
        let mut g = Self::empty(n)?;
        let mut starts = Vec::with_capacity(class_sizes.len());
        let mut acc = 0;
        for &s in class_sizes {
            starts.push(acc);
            acc += s;
        }
        for (i, &si) in class_sizes.iter().enumerate() {
            for (j, &sj) in class_sizes.iter().enumerate().skip(i + 1) {
                for a in starts[i]..starts[i] + si {
                    for b in starts[j]..starts[j] + sj {
                        g.add_edge(a, b);
                    }
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        self.adj[v * self.words + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
    }

    pub(crate) fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop { v });
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Raw adjacency row of `v` as words; used by the clique enumerator.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap()
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|v| self.degree(v)).sum();
        total / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// Intersection of the neighbourhoods of all members of `set`; for the
    /// empty set this is the whole vertex set.
    pub fn common_neighbors(&self, set: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::full(self.n);
        for v in set.iter() {
            for (a, b) in acc.bits.iter_mut().zip(self.row(v)) {
                *a &= b;
            }
        }
        acc
    }

    /// Like [`Graph::common_neighbors`] but returns only the count, without
    /// materialising the set.
    pub fn common_neighbor_count(&self, verts: &[usize]) -> usize {
        match verts.split_first() {
            None => self.n,
            Some((&first, rest)) => {
                let mut count = 0usize;
                for wi in 0..self.words {
                    let mut w = self.row(first)[wi];
                    for &v in rest {
                        w &= self.row(v)[wi];
                    }
                    count += w.count_ones() as usize;
                }
                count
            }
        }
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Subgraph induced by a nonempty vertex set, with vertex order inherited
    /// from ascending index.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let verts = set.to_vec();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("order preserved");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Parses the whitespace edge-list format: a header line `n m` followed
    /// by `m` lines `u v` with dense vertex indices `0 <= u, v < n`.
    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::EdgeList { line: 0, reason: "empty input".into() })?;
        let mut it = header.split_whitespace();
        let parse_count = |tok: Option<&str>, line: usize| -> Result<usize> {
            tok.ok_or_else(|| Error::EdgeList { line, reason: "missing field".into() })?
                .parse()
                .map_err(|_| Error::EdgeList { line, reason: "invalid integer".into() })
        };
        let n = parse_count(it.next(), line_no)?;
        let m = parse_count(it.next(), line_no)?;
        let mut g = Graph::empty(n)?;
        let mut seen = 0usize;
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let u = parse_count(it.next(), line)?;
            let v = parse_count(it.next(), line)?;
            g.add_edge_checked(u, v)
                .map_err(|e| Error::EdgeList { line, reason: e.to_string() })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::EdgeList {
                line: 0,
                reason: format!("header declared {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}
