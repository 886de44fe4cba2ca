//! Vertex-weighted digraphs, family classification and edge ideals.
//!
//! A digraph carries a positive integer weight per vertex. Source vertices
//! (in-degree zero) are normalized to weight 1 on construction, since the
//! edge ideal never reads a source's weight.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VariableContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("weight of `{0}` must be positive")]
    ZeroWeight(String),
    #[error("invalid generator bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Graph family labels used by the closed-form predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    RootedForest,
    OrientedLine,
    StarOut,
    StarIn,
    Broom,
    Other,
}

/// Classification result: the most specific family label plus whether every
/// vertex of degree other than one carries weight at least two (sources are
/// exempt, since their weight is normalized away).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: Family,
    pub weight_condition_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VertexDto {
    name: String,
    weight: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphDto {
    vertices: Vec<VertexDto>,
    edges: Vec<(String, String)>,
}

/// A vertex-weighted digraph with normalized source weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    names: Vec<String>,
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    normalized_sources: Vec<String>,
}

impl WeightedDigraph {
    pub fn new(
        vertices: Vec<(String, u32)>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        let mut names = Vec::with_capacity(vertices.len());
        let mut weights = Vec::with_capacity(vertices.len());
        for (name, weight) in vertices {
            if weight == 0 {
                return Err(GraphError::ZeroWeight(name));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(name));
            }
            names.push(name);
            weights.push(weight);
        }
        let mut edge_set = HashSet::new();
        let mut resolved = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let ui = *index
                .get(&u)
                .ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let vi = *index
                .get(&v)
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(GraphError::SelfLoop(u));
            }
            if !edge_set.insert((ui, vi)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            resolved.push((ui, vi));
        }
        let mut graph = Self {
            names,
            weights,
            edges: resolved,
            index,
            normalized_sources: Vec::new(),
        };
        graph.normalize_sources();
        Ok(graph)
    }

    fn normalize_sources(&mut self) {
        let indeg = self.in_degrees();
        for v in 0..self.names.len() {
            if indeg[v] == 0 && self.weights[v] != 1 {
                self.weights[v] = 1;
                self.normalized_sources.push(self.names[v].clone());
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Vertices whose weight was reset to 1 because they are sources.
    pub fn normalized_sources(&self) -> &[String] {
        &self.normalized_sources
    }

    pub fn sum_of_weights(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(u, _) in &self.edges {
            deg[u] += 1;
        }
        deg
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// In- and out-neighbourhoods of `v`, each sorted by vertex index.
    pub fn neighborhoods(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let mut inn = Vec::new();
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if b == v {
                inn.push(a);
            }
            if a == v {
                out.push(b);
            }
        }
        inn.sort_unstable();
        out.sort_unstable();
        (inn, out)
    }

    /// Acyclic underlying graph: union-find over undirected edges.
    fn underlying_is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.names.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }

    fn underlying_is_connected(&self) -> bool {
        let n = self.names.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Disjoint union of trees with all edges oriented away from the roots:
    /// equivalently, acyclic underlying graph and all in-degrees at most 1.
    pub fn is_rooted_forest(&self) -> bool {
        self.underlying_is_forest() && self.in_degrees().iter().all(|&d| d <= 1)
    }

    pub fn classify(&self) -> FamilyTag {
        let indeg = self.in_degrees();
        let outdeg = self.out_degrees();
        let deg = self.degrees();
        let n = self.names.len();
        let e = self.edges.len();
        let forest = self.is_rooted_forest();

        let line = e >= 1
            && e == n - 1
            && self.underlying_is_connected()
            && indeg.iter().all(|&d| d <= 1)
            && outdeg.iter().all(|&d| d <= 1)
            && forest;

        let star_out = n >= 3
            && e == n - 1
            && (0..n).any(|c| {
                outdeg[c] == e && indeg[c] == 0 && (0..n).all(|v| v == c || (indeg[v] == 1 && outdeg[v] == 0))
            });

        let star_in = n >= 3
            && e == n - 1
            && (0..n).any(|c| {
                indeg[c] == e && outdeg[c] == 0 && (0..n).all(|v| v == c || (outdeg[v] == 1 && indeg[v] == 0))
            });

        let broom = n >= 4
            && e == n - 1
            && (0..n).any(|c| {
                indeg[c] == 1
                    && outdeg[c] == n - 2
                    && (0..n).all(|v| {
                        v == c
                            || (indeg[v] == 1 && outdeg[v] == 0)
                            || (indeg[v] == 0 && outdeg[v] == 1 && self.edges.contains(&(v, c)))
                    })
            });

        let family = if line {
            Family::OrientedLine
        } else if star_out {
            Family::StarOut
        } else if star_in {
            Family::StarIn
        } else if broom {
            Family::Broom
        } else if forest {
            Family::RootedForest
        } else {
            Family::Other
        };

        // Sources are exempt: their weight is already normalized to 1 and
        // the edge ideal never reads it.
        let weight_condition_ok = (0..n)
            .all(|v| deg[v] == 1 || indeg[v] == 0 || self.weights[v] >= 2);

        FamilyTag {
            family,
            weight_condition_ok,
        }
    }

    /// The variable context `x_v` for `v` in vertex order.
    pub fn variable_context(&self) -> VariableContext {
        VariableContext::new(self.names.clone()).expect("vertex names are distinct")
    }

    /// One generator `x_u * x_v^{w_v}` per edge `(u, v)`.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let ctx = self.variable_context();
        let gens = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let mut exps = vec![0u32; self.names.len()];
                exps[u] += 1;
                exps[v] += self.weights[v];
                Monomial::from_exponents(&ctx, exps)
            })
            .collect();
        MonomialIdeal::new(&ctx, gens)
    }

    /// Induced subgraph on the complement of `remove`; vertices that become
    /// sources get weight 1 (a no-op for the edge ideal of a forest).
    pub fn delete_vertices(&self, remove: &[&str]) -> Result<WeightedDigraph, GraphError> {
        let mut drop = HashSet::new();
        for name in remove {
            let idx = self
                .index_of(name)
                .ok_or_else(|| GraphError::UnknownVertex((*name).to_string()))?;
            drop.insert(idx);
        }
        let vertices: Vec<(String, u32)> = (0..self.names.len())
            .filter(|v| !drop.contains(v))
            .map(|v| (self.names[v].clone(), self.weights[v]))
            .collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| !drop.contains(&u) && !drop.contains(&v))
            .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect();
        WeightedDigraph::new(vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let dto = GraphDto {
            vertices: self
                .names
                .iter()
                .zip(&self.weights)
                .map(|(name, &weight)| VertexDto {
                    name: name.clone(),
                    weight,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<WeightedDigraph, GraphError> {
        let dto: GraphDto =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        WeightedDigraph::new(
            dto.vertices.into_iter().map(|v| (v.name, v.weight)).collect(),
            dto.edges,
        )
    }
}

fn weight_for(rng: &mut ChaCha8Rng, degree: usize, max_weight: u32) -> u32 {
    if degree == 1 {
        rng.gen_range(1..=max_weight)
    } else {
        rng.gen_range(2..=max_weight)
    }
}

/// Seeded random rooted forest with `edge_count` edges and no isolated
/// vertices. Vertices of degree other than one draw weights in
/// `[2, max_weight]`, leaves in `[1, max_weight]`, so the generated graph
/// always satisfies the weight condition.
pub fn generate_forest(
    edge_count: usize,
    max_weight: u32,
    seed: u64,
) -> Result<WeightedDigraph, GraphError> {
    if edge_count == 0 {
        return Err(GraphError::InvalidBounds(
            "edge_count must be at least 1".into(),
        ));
    }
    if max_weight < 2 {
        return Err(GraphError::InvalidBounds(
            "max_weight must be at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_count);
    let mut next_vertex = 0usize;
    let mut remaining = edge_count;
    while remaining > 0 {
        // Start a new component; each new vertex attaches under a random
        // existing vertex of the component, oriented away from the root.
        let component_edges = rng.gen_range(1..=remaining);
        let root = next_vertex;
        next_vertex += 1;
        for _ in 0..component_edges {
            let parent = rng.gen_range(root..next_vertex);
            edges.push((parent, next_vertex));
            next_vertex += 1;
        }
        remaining -= component_edges;
    }
    let mut degree = vec![0usize; next_vertex];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let vertices: Vec<(String, u32)> = (0..next_vertex)
        .map(|v| {
            (
                format!("x{}", v + 1),
                weight_for(&mut rng, degree[v], max_weight),
            )
        })
        .collect();
    let edges = edges
        .into_iter()
        .map(|(u, v)| (format!("x{}", u + 1), format!("x{}", v + 1)))
        .collect();
    WeightedDigraph::new(vertices, edges)
}

/// Directed path `x1 -> x2 -> ... -> xn` with the given weights.
pub fn path_graph(weights: &[u32]) -> Result<WeightedDigraph, GraphError> {
    let n = weights.len();
    let vertices = (0..n)
        .map(|i| (format!("x{}", i + 1), weights[i]))
        .collect();
    let edges = (0..n.saturating_sub(1))
        .map(|i| (format!("x{}", i + 1), format!("x{}", i + 2)))
        .collect();
    WeightedDigraph::new(vertices, edges)
}

/// Star with edges `x1 -> xi` for `i > 1`.
pub fn star_out_graph(weights: &[u32]) -> Result<WeightedDigraph, GraphError> {
    let n = weights.len();
    let vertices = (0..n)
        .map(|i| (format!("x{}", i + 1), weights[i]))
        .collect();
    let edges = (1..n).map(|i| ("x1".to_string(), format!("x{}", i + 1))).collect();
    WeightedDigraph::new(vertices, edges)
}

/// Star with edges `xi -> x1` for `i > 1`.
pub fn star_in_graph(weights: &[u32]) -> Result<WeightedDigraph, GraphError> {
    let n = weights.len();
    let vertices = (0..n)
        .map(|i| (format!("x{}", i + 1), weights[i]))
        .collect();
    let edges = (1..n).map(|i| (format!("x{}", i + 1), "x1".to_string())).collect();
    WeightedDigraph::new(vertices, edges)
}

/// Broom: `x1 -> x2` and `x2 -> xi` for `i > 2`.
pub fn broom_graph(weights: &[u32]) -> Result<WeightedDigraph, GraphError> {
    let n = weights.len();
    if n < 3 {
        return Err(GraphError::InvalidBounds(
            "a broom needs at least 3 vertices".into(),
        ));
    }
    let vertices = (0..n)
        .map(|i| (format!("x{}", i + 1), weights[i]))
        .collect();
    let mut edges = vec![("x1".to_string(), "x2".to_string())];
    edges.extend((2..n).map(|i| ("x2".to_string(), format!("x{}", i + 1))));
    WeightedDigraph::new(vertices, edges)
}
