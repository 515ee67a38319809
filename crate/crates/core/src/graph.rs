//! Simple connected graphs and the matrices spectral graph theory hangs on
//! them: adjacency, Laplacian, signless Laplacian, distance, distance
//! Laplacian, distance signless Laplacian and degree-weighted adjacency.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::partition::Partition;

/// Named graph families with designated partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    /// Triangle `u-v-w` with `a >= 2` pendant vertices at `u` and one
    /// pendant `b` at `v`. Vertex order: `u, v, w, a_1..a_a, b`.
    PendantK3 { pendants: usize },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// Complete bipartite graph with sides `a` and `b`.
    CompleteBipartite { a: usize, b: usize },
    /// Clique of size `omega` joined to an independent set of size `alpha`.
    CompleteSplit { clique: usize, independent: usize },
}

/// An undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    family: Option<GraphFamily>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a custom graph from an edge list; vertex count is the largest
    /// index that appears. Loops are rejected, duplicates collapse.
    pub fn from_edges(pairs: &[(usize, usize)]) -> Result<Graph> {
        if pairs.is_empty() {
            return Err(Error::InvalidParams("edge list is empty".into()));
        }
        let mut edges = BTreeSet::new();
        let mut n = 0;
        for &(i, j) in pairs {
            if i == 0 || j == 0 {
                return Err(Error::InvalidParams("vertex indices are 1-based".into()));
            }
            if i == j {
                return Err(Error::InvalidParams(format!("loop at vertex {i}")));
            }
            n = n.max(i).max(j);
            edges.insert((i.min(j), i.max(j)));
        }
        Ok(Graph {
            n,
            edges,
            family: None,
            labels: (1..=n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn family(&self) -> Option<GraphFamily> {
        self.family
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a - 1] += 1;
            d[b - 1] += 1;
        }
        d
    }

    /// All-pairs distances by per-source breadth-first search.
    /// `None` when the graph is disconnected.
    fn distances(&self) -> Option<Vec<Vec<usize>>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a - 1].push(b - 1);
            adj[b - 1].push(a - 1);
        }
        let mut dist = vec![vec![usize::MAX; self.n]; self.n];
        for s in 0..self.n {
            let d = &mut dist[s];
            d[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if d.contains(&usize::MAX) {
                return None;
            }
        }
        Some(dist)
    }
}

/// Builds one of the named graph families with its canonical vertex order.
pub fn build_graph(family: GraphFamily) -> Result<Graph> {
    let mut edges = BTreeSet::new();
    let (n, labels) = match family {
        GraphFamily::PendantK3 { pendants: a } => {
            if a < 2 {
                return Err(Error::InvalidParams(format!(
                    "pendant_k3 requires a >= 2, got {a}"
                )));
            }
            let n = a + 4;
            edges.insert((1, 2));
            edges.insert((1, 3));
            edges.insert((2, 3));
            for i in 0..a {
                edges.insert((1, 4 + i));
            }
            edges.insert((2, n));
            let mut labels = vec!["u".to_string(), "v".to_string(), "w".to_string()];
            labels.extend((1..=a).map(|i| format!("a{i}")));
            labels.push("b".to_string());
            (n, labels)
        }
        GraphFamily::Complete { n } => {
            if n == 0 {
                return Err(Error::InvalidParams("complete graph needs n >= 1".into()));
            }
            for i in 1..=n {
                for j in (i + 1)..=n {
                    edges.insert((i, j));
                }
            }
            (n, (1..=n).map(|i| i.to_string()).collect())
        }
        GraphFamily::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidParams(
                    "complete bipartite graph needs a, b >= 1".into(),
                ));
            }
            for i in 1..=a {
                for j in 1..=b {
                    edges.insert((i, a + j));
                }
            }
            let n = a + b;
            (n, (1..=n).map(|i| i.to_string()).collect())
        }
        GraphFamily::CompleteSplit {
            clique: omega,
            independent: alpha,
        } => {
            if omega == 0 || alpha == 0 {
                return Err(Error::InvalidParams(
                    "complete split graph needs omega, alpha >= 1".into(),
                ));
            }
            for i in 1..=omega {
                for j in (i + 1)..=omega {
                    edges.insert((i, j));
                }
            }
            for i in 1..=omega {
                for j in 1..=alpha {
                    edges.insert((i, omega + j));
                }
            }
            let n = omega + alpha;
            (n, (1..=n).map(|i| i.to_string()).collect())
        }
    };
    Ok(Graph {
        n,
        edges,
        family: Some(family),
        labels,
    })
}

/// Which matrix to derive from a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    WeightedAdjacency,
    Laplacian,
    SignlessLaplacian,
    Distance,
    DistanceLaplacian,
    DistanceSignlessLaplacian,
}

impl MatrixKind {
    /// Stable CLI names.
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::WeightedAdjacency => "weighted_adjacency",
            MatrixKind::Laplacian => "laplacian",
            MatrixKind::SignlessLaplacian => "signless_laplacian",
            MatrixKind::Distance => "distance",
            MatrixKind::DistanceLaplacian => "distance_laplacian",
            MatrixKind::DistanceSignlessLaplacian => "distance_signless_laplacian",
        }
    }

    pub fn parse(s: &str) -> Option<MatrixKind> {
        Some(match s {
            "adjacency" => MatrixKind::Adjacency,
            "weighted_adjacency" => MatrixKind::WeightedAdjacency,
            "laplacian" => MatrixKind::Laplacian,
            "signless_laplacian" => MatrixKind::SignlessLaplacian,
            "distance" => MatrixKind::Distance,
            "distance_laplacian" => MatrixKind::DistanceLaplacian,
            "distance_signless_laplacian" => MatrixKind::DistanceSignlessLaplacian,
            _ => return None,
        })
    }
}

/// Symmetric degree-based edge weight functions for the weighted adjacency
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightFunction {
    /// Constant 1; reduces the weighted adjacency to the plain adjacency.
    Unit,
    /// First Zagreb weight `d_u + d_v`.
    Zagreb1,
    /// Sombor weight `sqrt(d_u^2 + d_v^2)`.
    Sombor,
    /// Geometric-arithmetic weight `2 sqrt(d_u d_v) / (d_u + d_v)`.
    GeometricArithmetic,
    /// Atom-bond connectivity weight `sqrt((d_u + d_v - 2) / (d_u d_v))`.
    Abc,
}

impl WeightFunction {
    pub fn name(&self) -> &'static str {
        match self {
            WeightFunction::Unit => "unit",
            WeightFunction::Zagreb1 => "zagreb1",
            WeightFunction::Sombor => "sombor",
            WeightFunction::GeometricArithmetic => "geometric_arithmetic",
            WeightFunction::Abc => "abc",
        }
    }

    pub fn parse(s: &str) -> Option<WeightFunction> {
        Some(match s {
            "unit" => WeightFunction::Unit,
            "zagreb1" => WeightFunction::Zagreb1,
            "sombor" => WeightFunction::Sombor,
            "geometric_arithmetic" => WeightFunction::GeometricArithmetic,
            "abc" => WeightFunction::Abc,
            _ => return None,
        })
    }

    /// Edge weight from the endpoint degrees; symmetric in its arguments.
    pub fn apply(&self, du: usize, dv: usize) -> f64 {
        let (x, y) = (du as f64, dv as f64);
        match self {
            WeightFunction::Unit => 1.0,
            WeightFunction::Zagreb1 => x + y,
            WeightFunction::Sombor => (x * x + y * y).sqrt(),
            WeightFunction::GeometricArithmetic => 2.0 * (x * y).sqrt() / (x + y),
            WeightFunction::Abc => ((x + y - 2.0) / (x * y)).sqrt(),
        }
    }
}

/// The shipped weight presets.
pub fn weight_presets() -> Vec<WeightFunction> {
    vec![
        WeightFunction::Unit,
        WeightFunction::Zagreb1,
        WeightFunction::Sombor,
        WeightFunction::GeometricArithmetic,
        WeightFunction::Abc,
    ]
}

/// Builds the named matrix of a graph. Distance-based kinds require a
/// connected graph; the weighted adjacency requires a weight function.
pub fn graph_matrix(
    g: &Graph,
    kind: MatrixKind,
    phi: Option<WeightFunction>,
) -> Result<DenseMatrix> {
    let n = g.n();
    let degrees = g.degrees();
    let adjacency = |weight: &dyn Fn(usize, usize) -> f64| {
        let mut m = DenseMatrix::zeros(n, n);
        for &(a, b) in g.edges() {
            let w = weight(degrees[a - 1], degrees[b - 1]);
            m.set(a - 1, b - 1, w);
            m.set(b - 1, a - 1, w);
        }
        m
    };

    match kind {
        MatrixKind::Adjacency => Ok(adjacency(&|_, _| 1.0)),
        MatrixKind::WeightedAdjacency => {
            let phi = phi.ok_or(Error::MissingPhi)?;
            Ok(adjacency(&|du, dv| phi.apply(du, dv)))
        }
        MatrixKind::Laplacian | MatrixKind::SignlessLaplacian => {
            let sign = if kind == MatrixKind::Laplacian {
                -1.0
            } else {
                1.0
            };
            let mut m = adjacency(&|_, _| sign);
            for (i, deg) in degrees.iter().enumerate() {
                m.set(i, i, *deg as f64);
            }
            Ok(m)
        }
        MatrixKind::Distance
        | MatrixKind::DistanceLaplacian
        | MatrixKind::DistanceSignlessLaplacian => {
            let dist = g.distances().ok_or(Error::Disconnected)?;
            let mut d = DenseMatrix::zeros(n, n);
            for (i, row) in dist.iter().enumerate() {
                for (j, val) in row.iter().enumerate() {
                    d.set(i, j, *val as f64);
                }
            }
            match kind {
                MatrixKind::Distance => Ok(d),
                _ => {
                    // Tr(G): diagonal of distance row sums (transmissions).
                    let sign = if kind == MatrixKind::DistanceLaplacian {
                        -1.0
                    } else {
                        1.0
                    };
                    let mut m = DenseMatrix::zeros(n, n);
                    for i in 0..n {
                        let tr: f64 = (0..n).map(|j| d.get(i, j)).sum();
                        for j in 0..n {
                            if i == j {
                                m.set(i, j, tr);
                            } else {
                                m.set(i, j, sign * d.get(i, j));
                            }
                        }
                    }
                    Ok(m)
                }
            }
        }
    }
}

/// The designated partition of a family-built graph, in the canonical
/// vertex order. Custom graphs have none; run the coarsest equitable
/// refinement instead.
pub fn paper_partition(g: &Graph) -> Result<Partition> {
    let family = g.family().ok_or(Error::NoDesignatedPartition)?;
    match family {
        GraphFamily::PendantK3 { pendants: a } => Partition::new(
            a + 4,
            vec![
                vec![1],
                vec![2],
                vec![3],
                (4..=(a + 3)).collect(),
                vec![a + 4],
            ],
        ),
        GraphFamily::Complete { n } => Ok(Partition::trivial(n)),
        GraphFamily::CompleteBipartite { a, b } => Partition::new(
            a + b,
            vec![(1..=a).collect(), ((a + 1)..=(a + b)).collect()],
        ),
        GraphFamily::CompleteSplit {
            clique: omega,
            independent: alpha,
        } => Partition::new(
            omega + alpha,
            vec![
                (1..=omega).collect(),
                ((omega + 1)..=(omega + alpha)).collect(),
            ],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{coarsest_equitable_refinement, quotient};

    fn pendant(a: usize) -> Graph {
        build_graph(GraphFamily::PendantK3 { pendants: a }).unwrap()
    }

    #[test]
    fn pendant_k3_structure() {
        let g = pendant(2);
        assert_eq!(g.n(), 6);
        assert_eq!(g.edges().len(), 6);
        let adj = graph_matrix(&g, MatrixKind::Adjacency, None).unwrap();
        let expected = [
            [0.0, 1.0, 1.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 1.0, 0.0, 0.0, 1.0],
            [1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(adj.get(i, j), *want, "({i},{j})");
            }
        }
        assert!(matches!(
            build_graph(GraphFamily::PendantK3 { pendants: 1 }),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn pendant_k3_designated_quotient() {
        let g = pendant(2);
        let adj = graph_matrix(&g, MatrixKind::Adjacency, None).unwrap();
        let p = paper_partition(&g).unwrap();
        let q = quotient(&adj, &p, 0.0).unwrap();
        assert!(q.equitable);
        assert_eq!(
            q.quotient.entries(),
            &[
                0.0, 1.0, 1.0, 2.0, 0.0, //
                1.0, 0.0, 1.0, 0.0, 1.0, //
                1.0, 1.0, 0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, 0.0
            ]
        );
    }

    #[test]
    fn pendant_k3_refinement_finds_designated_partition() {
        for a in [2usize, 3, 5] {
            let g = pendant(a);
            let adj = graph_matrix(&g, MatrixKind::Adjacency, None).unwrap();
            let r = coarsest_equitable_refinement(&adj, &Partition::trivial(g.n()), 0.0).unwrap();
            assert_eq!(r, paper_partition(&g).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        for g in [
            pendant(3),
            build_graph(GraphFamily::Complete { n: 5 }).unwrap(),
            build_graph(GraphFamily::CompleteBipartite { a: 2, b: 3 }).unwrap(),
        ] {
            let l = graph_matrix(&g, MatrixKind::Laplacian, None).unwrap();
            for i in 0..g.n() {
                let s: f64 = l.row(i).iter().sum();
                assert_eq!(s, 0.0);
            }
            let s = graph_matrix(&g, MatrixKind::SignlessLaplacian, None).unwrap();
            for i in 0..g.n() {
                assert_eq!(s.get(i, i) as usize, g.degree(i + 1));
            }
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(
            build_graph(GraphFamily::CompleteBipartite { a: 2, b: 3 })
                .unwrap()
                .edges()
                .len(),
            6
        );
        // C(3,2) + 3*2 = 9 edges.
        assert_eq!(
            build_graph(GraphFamily::CompleteSplit {
                clique: 3,
                independent: 2
            })
            .unwrap()
            .edges()
            .len(),
            9
        );
    }

    #[test]
    fn distance_matrix_of_complete_split() {
        let g = build_graph(GraphFamily::CompleteSplit {
            clique: 3,
            independent: 2,
        })
        .unwrap();
        let d = graph_matrix(&g, MatrixKind::Distance, None).unwrap();
        // Clique vertices sit at distance 1 from everything; independent
        // vertices are at distance 2 from each other.
        assert_eq!(d.get(0, 1), 1.0);
        assert_eq!(d.get(0, 3), 1.0);
        assert_eq!(d.get(3, 4), 2.0);
        assert_eq!(d.get(3, 3), 0.0);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d.get(i, j), d.get(j, i));
            }
        }
    }

    #[test]
    fn distance_signless_laplacian_block_form() {
        // Tr + D of the complete split graph:
        // [[(w+a-2)I + J, J], [J, (w+2a-4)I + 2J]].
        let (omega, alpha) = (4usize, 3usize);
        let g = build_graph(GraphFamily::CompleteSplit {
            clique: omega,
            independent: alpha,
        })
        .unwrap();
        let m = graph_matrix(&g, MatrixKind::DistanceSignlessLaplacian, None).unwrap();
        let (w, a) = (omega as f64, alpha as f64);
        for i in 0..omega {
            assert_eq!(m.get(i, i), (w + a - 2.0) + 1.0);
        }
        for i in omega..(omega + alpha) {
            assert_eq!(m.get(i, i), (w + 2.0 * a - 4.0) + 2.0);
            for j in omega..(omega + alpha) {
                if i != j {
                    assert_eq!(m.get(i, j), 2.0);
                }
            }
        }
        assert_eq!(m.get(0, omega), 1.0);
    }

    #[test]
    fn weighted_adjacency_presets() {
        let g = pendant(2);
        let adj = graph_matrix(&g, MatrixKind::Adjacency, None).unwrap();
        let unit = graph_matrix(
            &g,
            MatrixKind::WeightedAdjacency,
            Some(WeightFunction::Unit),
        )
        .unwrap();
        assert_eq!(adj, unit);

        assert!((WeightFunction::Sombor.apply(2, 2) - 8.0f64.sqrt()).abs() < 1e-15);
        for phi in weight_presets() {
            for du in 1..6 {
                for dv in 1..6 {
                    assert_eq!(phi.apply(du, dv), phi.apply(dv, du), "{}", phi.name());
                }
            }
        }
        assert!(matches!(
            graph_matrix(&g, MatrixKind::WeightedAdjacency, None),
            Err(Error::MissingPhi)
        ));
    }

    #[test]
    fn disconnected_custom_graph_rejected_by_distance() {
        let g = Graph::from_edges(&[(1, 2), (3, 4)]).unwrap();
        assert!(matches!(
            graph_matrix(&g, MatrixKind::Distance, None),
            Err(Error::Disconnected)
        ));
        // Adjacency is still fine.
        assert!(graph_matrix(&g, MatrixKind::Adjacency, None).is_ok());
        assert!(matches!(
            paper_partition(&g),
            Err(Error::NoDesignatedPartition)
        ));
    }

    #[test]
    fn custom_graph_validation() {
        assert!(matches!(
            Graph::from_edges(&[(1, 1)]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            Graph::from_edges(&[(0, 2)]),
            Err(Error::InvalidParams(_))
        ));
        let g = Graph::from_edges(&[(1, 2), (2, 1), (2, 3)]).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn paper_partition_shapes() {
        let g = pendant(17);
        let p = paper_partition(&g).unwrap();
        let sizes: Vec<usize> = p.cells().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 17, 1]);

        let g = build_graph(GraphFamily::CompleteBipartite { a: 3, b: 4 }).unwrap();
        assert_eq!(
            paper_partition(&g).unwrap().cells(),
            &[(1..=3).collect::<Vec<_>>(), (4..=7).collect::<Vec<_>>()]
        );
    }
}
