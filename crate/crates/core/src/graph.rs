//! Finite simple graphs and the combinatorial conditions imposed on them.
//!
//! Vertex order is the declaration order of the input file. Every search in
//! this module walks vertices in that order, so results are deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk graph description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<[Vec<String>; 2]>,
}

/// Simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
    bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

impl Graph {
    /// Builds and validates a graph. Without an explicit bipartition one is
    /// detected by 2-colouring (the side of vertex 0 becomes the X side).
    pub fn new(
        labels: Vec<String>,
        edges: &[(String, String)],
        bipartition: Option<(Vec<String>, Vec<String>)>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Graph(format!("duplicate vertex {l:?}")));
            }
        }
        let lookup = |l: &String| {
            index.get(l).copied().ok_or_else(|| Error::Graph(format!("unknown vertex {l:?}")))
        };
        let mut adjacency = vec![BTreeSet::new(); labels.len()];
        let mut edge_list = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::Graph(format!("self-loop at {a:?}")));
            }
            if !adjacency[i].insert(j) {
                return Err(Error::Graph(format!("duplicate edge {{{a}, {b}}}")));
            }
            adjacency[j].insert(i);
            edge_list.push((i.min(j), i.max(j)));
        }
        let mut g = Graph { labels, edges: edge_list, adjacency, bipartition: None };
        g.bipartition = match bipartition {
            Some((xs, ys)) => {
                let xs: Vec<usize> = xs.iter().map(lookup).collect::<Result<_>>()?;
                let ys: Vec<usize> = ys.iter().map(lookup).collect::<Result<_>>()?;
                let mut side = vec![None; g.n()];
                for &x in &xs {
                    side[x] = Some(0);
                }
                for &y in &ys {
                    if side[y].is_some() {
                        return Err(Error::Graph("vertex on both sides".into()));
                    }
                    side[y] = Some(1);
                }
                if side.iter().any(Option::is_none) {
                    return Err(Error::Graph("bipartition does not cover all vertices".into()));
                }
                if g.edges.iter().any(|&(i, j)| side[i] == side[j]) {
                    return Err(Error::Graph("declared bipartition has an edge inside a side".into()));
                }
                let mut xs = xs;
                let mut ys = ys;
                xs.sort_unstable();
                ys.sort_unstable();
                Some((xs, ys))
            }
            None => g.two_colouring(),
        };
        Ok(g)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges: Vec<(String, String)> =
            file.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let bip = file.bipartition.as_ref().map(|[x, y]| (x.clone(), y.clone()));
        Self::new(file.vertices.clone(), &edges, bip)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph file: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| [self.labels[i].clone(), self.labels[j].clone()])
                .collect(),
            bipartition: self.bipartition.as_ref().map(|(x, y)| {
                [
                    x.iter().map(|&i| self.labels[i].clone()).collect(),
                    y.iter().map(|&i| self.labels[i].clone()).collect(),
                ]
            }),
        }
    }

    /// Convenience constructor from string slices.
    pub fn from_edges(labels: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let edges: Vec<(String, String)> =
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::new(labels.iter().map(|s| s.to_string()).collect(), &edges, None)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// `(X side, Y side)` when the graph is bipartite.
    pub fn bipartition(&self) -> Option<(&[usize], &[usize])> {
        self.bipartition.as_ref().map(|(x, y)| (x.as_slice(), y.as_slice()))
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.n()).collect();
        self.induced_connected(&all)
    }

    fn induced_connected(&self, keep: &[usize]) -> bool {
        let Some(&start) = keep.first() else {
            return true;
        };
        let mut inside = vec![false; self.n()];
        for &v in keep {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == keep.len()
    }

    /// Connected components of the subgraph induced on `keep`, each sorted.
    pub fn components_of(&self, keep: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.n()];
        for &v in keep {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for &s in keep {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn two_colouring(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour = vec![None; self.n()];
        for s in 0..self.n() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(0u8);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &w in &self.adjacency[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(1 - c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        let xs = (0..self.n()).filter(|&v| colour[v] == Some(0)).collect();
        let ys = (0..self.n()).filter(|&v| colour[v] == Some(1)).collect();
        Some((xs, ys))
    }

    pub fn has_triangle(&self) -> bool {
        self.edges.iter().any(|&(i, j)| {
            self.adjacency[i].intersection(&self.adjacency[j]).next().is_some()
        })
    }

    /// Whether `order` is a permutation of the vertices in which every vertex
    /// from the third on has at least two neighbours among its predecessors.
    pub fn is_build_order(&self, order: &[usize]) -> bool {
        if order.len() != self.n() {
            return false;
        }
        let mut placed = vec![false; self.n()];
        for (pos, &v) in order.iter().enumerate() {
            if v >= self.n() || placed[v] {
                return false;
            }
            if pos >= 2 && self.adjacency[v].iter().filter(|&&w| placed[w]).count() < 2 {
                return false;
            }
            placed[v] = true;
        }
        true
    }

    /// A build order (see [`Graph::is_build_order`]) if one exists.
    ///
    /// Once the first two vertices are fixed the set of vertices that can be
    /// appended only grows, so greedy completion decides each starting pair.
    /// All ordered starting pairs are tried in vertex order.
    pub fn build_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n <= 2 {
            return Some((0..n).collect());
        }
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let mut order = vec![a, b];
                let mut placed = vec![false; n];
                let mut back = vec![0usize; n];
                for &s in &order {
                    placed[s] = true;
                    for &w in &self.adjacency[s] {
                        back[w] += 1;
                    }
                }
                while order.len() < n {
                    let Some(next) = (0..n).find(|&v| !placed[v] && back[v] >= 2) else {
                        break;
                    };
                    placed[next] = true;
                    order.push(next);
                    for &w in &self.adjacency[next] {
                        back[w] += 1;
                    }
                }
                if order.len() == n {
                    return Some(order);
                }
            }
        }
        None
    }

    /// First pair `(x, y)` across the bipartition whose removal disconnects
    /// the remaining induced subgraph.
    pub fn disconnecting_pair(&self) -> Result<Option<(usize, usize)>> {
        let (xs, ys) = self
            .bipartition()
            .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
        for &x in xs {
            for &y in ys {
                let keep: Vec<usize> = (0..self.n()).filter(|&v| v != x && v != y).collect();
                if !self.induced_connected(&keep) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn necessary_conditions(&self) -> Result<ConditionReport> {
        if !self.is_connected() {
            return Err(Error::Precondition("graph is disconnected".into()));
        }
        let n = self.n() as i64;
        let e = self.e() as i64;
        let build_order = self
            .build_order()
            .map(|o| o.into_iter().map(|v| self.labels[v].clone()).collect());
        let disconnecting_pair = match self.bipartition {
            Some(_) => self
                .disconnecting_pair()?
                .map(|(x, y)| (self.labels[x].clone(), self.labels[y].clone())),
            None => None,
        };
        Ok(ConditionReport {
            n: self.n(),
            e: self.e(),
            connected: true,
            bipartite: self.bipartition.is_some(),
            edge_count_ok: e == 2 * n - 4,
            triangle_free: !self.has_triangle(),
            leaf_free: (0..self.n()).all(|v| self.degree(v) != 1),
            tree: e == n - 1,
            build_order,
            disconnecting_pair,
        })
    }
}

/// Combinatorial conditions on a connected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub n: usize,
    pub e: usize,
    pub connected: bool,
    pub bipartite: bool,
    /// `e = 2n - 4`
    pub edge_count_ok: bool,
    pub triangle_free: bool,
    pub leaf_free: bool,
    /// `e = n - 1`
    pub tree: bool,
    pub build_order: Option<Vec<String>>,
    pub disconnecting_pair: Option<(String, String)>,
}

impl ConditionReport {
    /// All three combinatorial necessary conditions hold.
    pub fn necessary_hold(&self) -> bool {
        self.edge_count_ok && self.triangle_free && self.leaf_free
    }
}

/// The ten-vertex bipartite graph with two `K_{2,2}` blocks bridged by `x5`, `y5`.
pub fn special_graph() -> Graph {
    let labels = ["x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5"];
    let mut edges = vec![
        ("x1", "y1"),
        ("x1", "y2"),
        ("x2", "y1"),
        ("x2", "y2"),
        ("x3", "y3"),
        ("x3", "y4"),
        ("x4", "y3"),
        ("x4", "y4"),
    ];
    for x in ["x1", "x2", "x3", "x4"] {
        edges.push((x, "y5"));
    }
    for y in ["y1", "y2", "y3", "y4"] {
        edges.push(("x5", y));
    }
    Graph::from_edges(&labels, &edges).expect("static graph is valid")
}

/// Cycle `x1 - y1 - x2 - y2 - x1`.
pub fn four_cycle() -> Graph {
    Graph::from_edges(
        &["x1", "x2", "y1", "y2"],
        &[("x1", "y1"), ("y1", "x2"), ("x2", "y2"), ("y2", "x1")],
    )
    .expect("static graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_counts() {
        let g = four_cycle();
        assert_eq!((g.n(), g.e()), (4, 4));
        assert!(g.bipartition().is_some());
        let r = g.necessary_conditions().unwrap();
        assert!(r.edge_count_ok && r.triangle_free && r.leaf_free && !r.tree);
        assert_eq!(g.disconnecting_pair().unwrap(), None);
    }

    #[test]
    fn special_graph_conditions() {
        let g = special_graph();
        assert_eq!((g.n(), g.e()), (10, 16));
        let r = g.necessary_conditions().unwrap();
        assert!(r.edge_count_ok && r.triangle_free && r.leaf_free);
        assert_eq!(r.disconnecting_pair, Some(("x5".to_string(), "y5".to_string())));
    }

    #[test]
    fn unknown_vertex_rejected() {
        let err = Graph::from_edges(&["a", "b"], &[("a", "c")]).unwrap_err();
        assert!(matches!(err, Error::Graph(_)));
    }

    #[test]
    fn self_loops_and_duplicates_rejected() {
        assert!(Graph::from_edges(&["a"], &[("a", "a")]).is_err());
        assert!(Graph::from_edges(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
    }

    #[test]
    fn declared_bipartition_must_cross() {
        let json = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],
                       "bipartition":[["a","b"],["c"]]}"#;
        assert!(Graph::from_json(json).is_err());
        let ok = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],
                     "bipartition":[["b"],["a","c"]]}"#;
        let g = Graph::from_json(ok).unwrap();
        assert_eq!(g.bipartition().unwrap().0, &[1]);
    }

    #[test]
    fn paths_are_trees() {
        // on three vertices e = n - 1 = 2n - 4, and "a, c, b" is a build order
        let p3 = Graph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let r = p3.necessary_conditions().unwrap();
        assert!(r.tree && r.edge_count_ok && !r.leaf_free);
        assert!(p3.is_build_order(&p3.build_order().unwrap()));

        let p4 = Graph::from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let r = p4.necessary_conditions().unwrap();
        assert!(r.tree && !r.edge_count_ok);
        assert!(p4.build_order().is_none());
    }

    #[test]
    fn disconnected_graph_fails_precondition() {
        let g = Graph::from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
        assert!(matches!(g.necessary_conditions(), Err(Error::Precondition(_))));
    }

    #[test]
    fn triangle_detected() {
        let g = Graph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap();
        assert!(g.has_triangle());
        assert!(g.bipartition().is_none());
        assert!(g.disconnecting_pair().is_err());
    }

    #[test]
    fn star_has_disconnecting_pair() {
        let g = Graph::from_edges(&["c", "a", "b", "d"], &[("c", "a"), ("c", "b"), ("c", "d")])
            .unwrap();
        assert_eq!(g.disconnecting_pair().unwrap(), Some((0, 1)));
    }

    #[test]
    fn graph_file_round_trip() {
        let g = special_graph();
        let json = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(Graph::from_json(&json).unwrap(), g);
    }
}
