use std::collections::VecDeque;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Network, VertexSet};

/// Rooted forest with every edge oriented toward its root.
///
/// `parent[v]` is `None` exactly on roots; otherwise it holds the next vertex
/// toward the root and the id of the edge used, so parallel edges stay
/// distinguishable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedForest {
    parent: Vec<Option<(usize, EdgeId)>>,
    roots: Vec<usize>,
}

impl OrientedForest {
    /// Builds a forest from a parent array and checks that it is acyclic.
    pub fn from_parents(parent: Vec<Option<(usize, EdgeId)>>) -> Result<Self> {
        let n = parent.len();
        for (v, p) in parent.iter().enumerate() {
            if let Some((u, _)) = p {
                if *u >= n {
                    return Err(Error::VertexOutOfRange { vertex: *u, n });
                }
                if *u == v {
                    return Err(Error::InvalidForest(format!(
                        "vertex {v} is its own parent"
                    )));
                }
            }
        }
        let roots = (0..n).filter(|&v| parent[v].is_none()).collect();
        let forest = OrientedForest { parent, roots };
        forest.depths()?;
        Ok(forest)
    }

    /// Orients a set of edges of `g` toward `roots`. The edges must form a
    /// forest in which every component contains exactly one root.
    pub fn from_edges(g: &Network, edges: &[EdgeId], roots: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
        for &id in edges {
            if id.0 >= g.edge_count() {
                return Err(Error::InvalidForest(format!("edge {id} out of range")));
            }
            let e = g.edge(id);
            if e.is_loop() {
                return Err(Error::InvalidForest(format!("edge {id} is a self-loop")));
            }
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &r in roots {
            g.check_vertex(r)?;
            if seen[r] {
                return Err(Error::InvalidForest(format!("root {r} reached twice")));
            }
            seen[r] = true;
            queue.push_back(r);
            while let Some(x) = queue.pop_front() {
                for &(y, id) in &adj[x] {
                    if Some((x, id)) == parent[y] || parent[x] == Some((y, id)) {
                        continue;
                    }
                    if seen[y] {
                        return Err(Error::InvalidForest("edges contain a cycle".into()));
                    }
                    seen[y] = true;
                    parent[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidForest(format!(
                "vertex {v} not connected to a root"
            )));
        }
        Self::from_parents(parent)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|p| p.0)
    }

    pub fn parent_edge(&self, v: usize) -> Option<EdgeId> {
        self.parent[v].map(|p| p.1)
    }

    pub fn parents(&self) -> &[Option<(usize, EdgeId)>] {
        &self.parent
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn root_set(&self, g: &Network) -> Result<VertexSet> {
        VertexSet::new(g, self.roots.iter().copied())
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.parent[v].is_none()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - self.roots.len()
    }

    /// Sorted edge ids: a canonical key for law comparisons.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self.parent.iter().filter_map(|p| p.map(|p| p.1)).collect();
        ids.sort_unstable();
        ids
    }

    /// Distance of every vertex to its root; errors on a cycle.
    pub fn depths(&self) -> Result<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let n = self.parent.len();
        let mut depth = vec![UNSET; n];
        let mut stack = Vec::new();
        for v in 0..n {
            let mut x = v;
            while depth[x] == UNSET {
                match self.parent[x] {
                    None => {
                        depth[x] = 0;
                    }
                    Some((p, _)) => {
                        stack.push(x);
                        if stack.len() > n {
                            return Err(Error::InvalidForest(
                                "parent pointers contain a cycle".into(),
                            ));
                        }
                        x = p;
                    }
                }
            }
            let mut d = depth[x];
            while let Some(y) = stack.pop() {
                d += 1;
                depth[y] = d;
            }
        }
        Ok(depth)
    }

    /// Checks the forest against `g`: same vertex count, and every parent
    /// edge exists and joins the vertex to its parent.
    pub fn validate(&self, g: &Network) -> Result<()> {
        if self.parent.len() != g.vertex_count() {
            return Err(Error::InvalidForest(format!(
                "forest has {} vertices, network has {}",
                self.parent.len(),
                g.vertex_count()
            )));
        }
        for (v, p) in self.parent.iter().enumerate() {
            if let Some((u, id)) = *p {
                if id.0 >= g.edge_count() {
                    return Err(Error::InvalidForest(format!("edge {id} out of range")));
                }
                let e = g.edge(id);
                if !((e.u == v && e.v == u) || (e.v == v && e.u == u)) {
                    return Err(Error::InvalidForest(format!(
                        "edge {id} does not join {v} and {u}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A spanning tree of `g`: valid, acyclic and with one root.
    pub fn is_spanning_tree_of(&self, g: &Network) -> bool {
        self.roots.len() == 1 && self.validate(g).is_ok()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some((u, _)) = p {
                ch[*u].push(v);
            }
        }
        ch
    }

    /// The future of `v`: the directed path from `v` to its root, both ends
    /// included.
    pub fn future(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while let Some((p, _)) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path
    }

    /// The future of `v` without its root.
    pub fn future_hat(&self, v: usize) -> Vec<usize> {
        let mut f = self.future(v);
        f.pop();
        f
    }

    /// The past of `v`: every vertex with a directed path to `v`, `v`
    /// included, in breadth-first order.
    pub fn past(&self, v: usize) -> Vec<usize> {
        self.past_with(&self.children(), v)
    }

    fn past_with(&self, children: &[Vec<usize>], v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&children[out[i]]);
            i += 1;
        }
        out
    }

    /// Height of the past of `v`: the longest directed path ending at `v`.
    pub fn height_of_past(&self, v: usize) -> usize {
        let children = self.children();
        let mut height = 0;
        let mut level = vec![v];
        let mut next = Vec::new();
        loop {
            for &x in &level {
                next.extend_from_slice(&children[x]);
            }
            if next.is_empty() {
                return height;
            }
            height += 1;
            std::mem::swap(&mut level, &mut next);
            next.clear();
        }
    }

    /// Longest directed path in the forest, i.e. the maximum depth.
    pub fn height(&self) -> usize {
        self.depths()
            .expect("forest invariant: acyclic")
            .into_iter()
            .max()
            .unwrap_or(0)
    }

    fn undirected(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some((u, _)) = p {
                adj[v].push(*u);
                adj[*u].push(v);
            }
        }
        adj
    }

    fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; adj.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Tree distances from `v`, `usize::MAX` outside its component.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        Self::bfs(&self.undirected(), v)
    }

    /// Diameter of a spanning tree by two breadth-first sweeps.
    pub fn diameter(&self) -> Result<usize> {
        if self.roots.len() != 1 {
            return Err(Error::NotATree {
                roots: self.roots.len(),
            });
        }
        let adj = self.undirected();
        let far = |d: &[usize]| {
            d.iter()
                .enumerate()
                .max_by_key(|&(i, &x)| (x, std::cmp::Reverse(i)))
                .map(|(i, &x)| (i, x))
                .unwrap()
        };
        let (a, _) = far(&Self::bfs(&adj, self.roots[0]));
        let (_, diam) = far(&Self::bfs(&adj, a));
        Ok(diam)
    }

    /// Diameter of the tree obtained by identifying all roots into one
    /// vertex, i.e. of the forest read as a spanning tree of `G/roots`.
    pub fn wired_diameter(&self) -> usize {
        let n = self.parent.len();
        let sink = n;
        let map = |v: usize| if self.parent[v].is_none() { sink } else { v };
        let mut adj = vec![Vec::new(); n + 1];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some((u, _)) = p {
                adj[v].push(map(*u));
                adj[map(*u)].push(v);
            }
        }
        let far = |d: &[usize]| {
            let mut best = (sink, 0);
            for (i, &x) in d.iter().enumerate() {
                if x != usize::MAX && x > best.1 {
                    best = (i, x);
                }
            }
            best
        };
        let (a, _) = far(&Self::bfs(&adj, sink));
        far(&Self::bfs(&adj, a)).1
    }

    /// Hangs this forest on a path `vertices[0] – … – vertices[k]` whose
    /// vertices are all roots: each path vertex but the last gets the next
    /// one as parent, so the result is rooted at `vertices[k]`.
    pub fn attach_path(&self, vertices: &[usize], edges: &[EdgeId]) -> Result<Self> {
        if vertices.len() != edges.len() + 1 {
            return Err(Error::invalid("a path has one more vertex than edges"));
        }
        let mut parent = self.parent.clone();
        for &v in vertices {
            if v >= parent.len() || parent[v].is_some() {
                return Err(Error::InvalidForest(format!(
                    "path vertex {v} is not a root"
                )));
            }
        }
        for (k, &e) in edges.iter().enumerate() {
            parent[vertices[k]] = Some((vertices[k + 1], e));
        }
        Self::from_parents(parent)
    }

    /// Vertices within tree distance `radius` of any vertex in `centers`.
    /// Passing the whole root set gives the ball around the contracted
    /// root of `T_W`.
    pub fn ball(&self, centers: &[usize], radius: usize) -> Vec<usize> {
        let adj = self.undirected();
        let mut dist = vec![usize::MAX; adj.len()];
        let mut queue = VecDeque::new();
        for &c in centers {
            if dist[c] == usize::MAX {
                dist[c] = 0;
                queue.push_back(c);
            }
        }
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            if dist[x] == radius {
                continue;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Writes one line `u parent edge_id` per vertex, `-1 -1` for roots.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for (v, p) in self.parent.iter().enumerate() {
            match p {
                Some((u, id)) => writeln!(out, "{v} {u} {id}")?,
                None => writeln!(out, "{v} -1 -1")?,
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut rows: Vec<(usize, Option<(usize, EdgeId)>)> = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let fields: Vec<i64> = line
                .split_whitespace()
                .map(|f| {
                    f.parse::<i64>()
                        .map_err(|e| parse_err(format!("{f:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            let [v, p, e] = fields[..] else {
                return Err(parse_err(format!(
                    "expected 3 fields, got {}",
                    fields.len()
                )));
            };
            let entry = match (p, e) {
                (-1, -1) => None,
                (p, e) if p >= 0 && e >= 0 => Some((p as usize, EdgeId(e as usize))),
                _ => {
                    return Err(parse_err(
                        "parent and edge must both be -1 or both be ids".into(),
                    ))
                }
            };
            if v < 0 {
                return Err(parse_err("negative vertex id".into()));
            }
            rows.push((v as usize, entry));
        }
        let n = rows.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for (v, entry) in rows {
            if v >= n || seen[v] {
                return Err(Error::InvalidForest(format!(
                    "vertex {v} missing or repeated"
                )));
            }
            seen[v] = true;
            parent[v] = entry;
        }
        Self::from_parents(parent)
    }
}
