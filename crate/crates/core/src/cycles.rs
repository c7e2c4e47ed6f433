//! Path cycles with mod-n walk and move arithmetic, cycle extraction from
//! triangulations, and path-connectedness witnesses.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{orient, PathTriangle, SampledPath, VertexId};
use crate::triangulation::{EdgeKey, Triangulation};

/// `cyc E`: paths `h_0 .. h_{n-1}` with `h_i.end = h_{i+1 mod n}.start`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathCycle {
    paths: Vec<SampledPath>,
    basepoint: usize,
}

impl PathCycle {
    pub fn new(paths: Vec<SampledPath>) -> Result<Self> {
        let n = paths.len();
        if n < 3 {
            return Err(Error::CycleTooShort(n));
        }
        for i in 0..n {
            let (cur, next) = (&paths[i], &paths[(i + 1) % n]);
            if cur.end() != next.start() {
                return Err(Error::EndpointMismatch {
                    expected: cur.end(),
                    found: next.start(),
                });
            }
            if !cur.last().coincides(next.first()) {
                return Err(Error::DetachedEndpoint {
                    start: cur.start(),
                    end: cur.end(),
                });
            }
        }
        let starts: BTreeSet<VertexId> = paths.iter().map(|p| p.start()).collect();
        if starts.len() != n {
            return Err(Error::DuplicateVertices);
        }
        Ok(PathCycle {
            paths,
            basepoint: 0,
        })
    }

    pub fn with_basepoint(mut self, i: usize) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        self.basepoint = i;
        Ok(self)
    }

    /// `n`.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    /// Always false; cycles hold at least three paths.
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[SampledPath] {
        &self.paths
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// `h_i(0)` for every `i`.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.paths.iter().map(|p| p.start()).collect()
    }

    pub fn vertex(&self, i: usize) -> VertexId {
        self.paths[i].start()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.paths.iter().position(|p| p.start() == v)
    }

    /// `(i + k) mod n` in `[0, n)`.
    pub fn index(&self, i: usize, k: i64) -> usize {
        let n = self.len() as i64;
        (i as i64 + k.rem_euclid(n)).rem_euclid(n) as usize
    }

    /// `k h_i(0) = h_{i+k}(0)`.
    ///
    /// # Panics
    /// If `i >= n`.
    pub fn walk(&self, i: usize, k: i64) -> VertexId {
        self.check_index(i);
        self.vertex(self.index(i, k))
    }

    /// `h_{i-k}(0)`.
    ///
    /// # Panics
    /// If `i >= n`.
    pub fn walk_back(&self, i: usize, k: i64) -> VertexId {
        self.check_index(i);
        self.vertex(self.index(i, -(k.rem_euclid(self.len() as i64))))
    }

    /// `kg + k'g = h_{(i+k+k') mod n}(0)`.
    ///
    /// # Panics
    /// If `i >= n`.
    pub fn move_add(&self, i: usize, k: i64, k2: i64) -> VertexId {
        self.check_index(i);
        self.vertex(self.index(self.index(i, k), k2))
    }

    fn check_index(&self, i: usize) {
        assert!(
            i < self.len(),
            "cycle index {i} out of range for n = {}",
            self.len()
        );
    }
}

/// `(h1, h2, h3)` of a path triangle as a 3-cycle.
pub fn boundary_cycle(t: &PathTriangle) -> PathCycle {
    PathCycle::new(t.paths().to_vec()).expect("path triangles chain cyclically")
}

/// Closed-chain validator: consecutive paths meet at shared vertices and
/// coordinates, the chain closes, and every vertex has exactly two incident
/// cycle edges.
pub fn validate_cycle(c: &PathCycle) -> Result<()> {
    let n = c.len();
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for i in 0..n {
        let (cur, next) = (&c.paths[i], &c.paths[(i + 1) % n]);
        if cur.end() != next.start() {
            return Err(Error::EndpointMismatch {
                expected: cur.end(),
                found: next.start(),
            });
        }
        if !cur.last().coincides(next.first()) {
            return Err(Error::DetachedEndpoint {
                start: cur.start(),
                end: cur.end(),
            });
        }
        *degree.entry(cur.start()).or_default() += 1;
        *degree.entry(cur.end()).or_default() += 1;
    }
    if degree.len() != n || degree.values().any(|&d| d != 2) {
        return Err(Error::InvalidComplex(
            "cycle vertex without degree 2".into(),
        ));
    }
    Ok(())
}

/// Cycle through `vertices` in order along edges of `t`.
pub fn extract_cycle(t: &Triangulation, vertices: &[VertexId]) -> Result<PathCycle> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    let paths = (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            t.directed_edge(a, b)
                .ok_or_else(|| Error::InvalidComplex(format!("no edge {a}-{b}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PathCycle::new(paths)
}

/// Boundary 3-cycle of every triangle, in table order.
pub fn triangle_cycles(t: &Triangulation) -> Vec<PathCycle> {
    t.triangles().iter().map(boundary_cycle).collect()
}

/// Outer boundary of `t`, counter-clockwise, starting at its smallest
/// vertex. Fails when the boundary is not a single simple cycle.
pub fn hull_cycle(t: &Triangulation) -> Result<PathCycle> {
    let mut directed: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for tri in t.triangles() {
        let [a, b, c] = tri.vertices();
        let [pa, pb, pc] = tri.corners();
        let ring = if orient(pa, pb, pc) > 0.0 {
            [a, b, c]
        } else {
            [a, c, b]
        };
        for k in 0..3 {
            directed.insert((ring[k], ring[(k + 1) % 3]));
        }
    }
    let mut next: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &(a, b) in &directed {
        if directed.contains(&(b, a)) {
            continue;
        }
        if next.insert(a, b).is_some() {
            return Err(Error::InvalidComplex(format!("boundary branches at {a}")));
        }
    }
    let (&first, _) = next
        .iter()
        .next()
        .ok_or_else(|| Error::InvalidComplex("complex has no boundary".into()))?;
    let mut order = vec![first];
    let mut cur = next[&first];
    while cur != first {
        if order.len() > next.len() {
            return Err(Error::InvalidComplex("boundary does not close".into()));
        }
        order.push(cur);
        cur = *next
            .get(&cur)
            .ok_or_else(|| Error::InvalidComplex(format!("boundary stops at {cur}")))?;
    }
    if order.len() != next.len() {
        return Err(Error::InvalidComplex(
            "boundary has more than one component".into(),
        ));
    }
    extract_cycle(t, &order)
}

/// Triangle boundary cycles followed by the hull cycle.
pub fn default_cycles(t: &Triangulation) -> Result<Vec<PathCycle>> {
    let mut out = triangle_cycles(t);
    out.push(hull_cycle(t)?);
    Ok(out)
}

/// Breadth-first tree over an adjacency map. Neighbors are visited in
/// ascending id order, so each vertex keeps the smallest-id parent among
/// those at minimal depth that are dequeued first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    root: VertexId,
    parent: BTreeMap<VertexId, VertexId>,
    depth: BTreeMap<VertexId, usize>,
}

impl BfsTree {
    pub fn new(adjacency: &BTreeMap<VertexId, BTreeSet<VertexId>>, root: VertexId) -> Self {
        let mut parent = BTreeMap::new();
        let mut depth = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let d = depth[&u];
            for &w in adjacency.get(&u).into_iter().flatten() {
                if let std::collections::btree_map::Entry::Vacant(e) = depth.entry(w) {
                    e.insert(d + 1);
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        BfsTree {
            root,
            parent,
            depth,
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn depth(&self, v: VertexId) -> Option<usize> {
        self.depth.get(&v).copied()
    }

    pub fn reached(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.depth.keys().copied()
    }

    /// Vertices from the root to `v`, both included.
    pub fn route(&self, v: VertexId) -> Option<Vec<VertexId>> {
        self.depth.get(&v)?;
        let mut out = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            out.push(p);
            cur = p;
        }
        out.reverse();
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub connected: bool,
    /// Chained paths from `u` to `v`; empty when `u = v` or disconnected.
    pub witness: Vec<SampledPath>,
}

pub fn is_path_connected(t: &Triangulation, u: VertexId, v: VertexId) -> Result<Connection> {
    for x in [u, v] {
        if !t.contains_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
    }
    let tree = BfsTree::new(&t.skeleton(), u);
    let Some(route) = tree.route(v) else {
        return Ok(Connection {
            connected: false,
            witness: Vec::new(),
        });
    };
    let witness = route
        .windows(2)
        .map(|w| {
            t.directed_edge(w[0], w[1])
                .expect("route follows skeleton edges")
        })
        .collect();
    Ok(Connection {
        connected: true,
        witness,
    })
}

/// Whether `witness` is a chain of paths from `u` to `v` along edges of `t`.
pub fn witness_chains(
    t: &Triangulation,
    u: VertexId,
    v: VertexId,
    witness: &[SampledPath],
) -> bool {
    if witness.is_empty() {
        return u == v;
    }
    let mut at = u;
    for p in witness {
        if p.start() != at || !t.edges().contains_key(&EdgeKey::new(p.start(), p.end())) {
            return false;
        }
        at = p.end();
    }
    at == v
        && witness
            .windows(2)
            .all(|w| w[0].last().coincides(w[1].first()))
}
