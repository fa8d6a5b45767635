//! Splitting a tree's arcs into two planes.
//!
//! Arcs are assigned greedily, preferring the first plane. Assigning an arc
//! to a plane forbids that plane for every arc crossing it, the other plane
//! for arcs two crossings away, and so on along the crossings graph.
//! Restrictions accumulate over the whole run.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;
use crate::tree::{cross, Arc, DepTree};

#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize, Deserialize)]
pub enum Plane {
    First,
    Second,
}

impl Plane {
    pub fn index(self) -> usize {
        match self {
            Plane::First => 0,
            Plane::Second => 1,
        }
    }

    pub fn other(self) -> Plane {
        match self {
            Plane::First => Plane::Second,
            Plane::Second => Plane::First,
        }
    }

    fn from_index(index: usize) -> Plane {
        if index == 0 {
            Plane::First
        } else {
            Plane::Second
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Undirected graph over a tree's arcs with an edge between crossing arcs.
///
/// Node `k` is the arc into word `k + 1`, so dummy-root arcs are included.
#[derive(Clone, Debug)]
pub struct CrossingsGraph {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl CrossingsGraph {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Indices of the arcs crossing arc `node`, ascending.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Crossing pairs, each listed once with the lower node index first.
    pub fn edges(&self) -> Vec<(Arc, Arc)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, nbs)| {
                nbs.iter()
                    .filter(move |&&b| b > a)
                    .map(move |&b| (self.arcs[a], self.arcs[b]))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether the graph can be 2-colored.
    pub fn is_bipartite(&self) -> bool {
        let mut color: Vec<Option<bool>> = vec![None; self.arcs.len()];
        for start in 0..self.arcs.len() {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                let c = color[node].unwrap();
                for &nb in &self.adjacency[node] {
                    match color[nb] {
                        None => {
                            color[nb] = Some(!c);
                            queue.push_back(nb);
                        }
                        Some(nc) if nc == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

pub fn crossings_graph(tree: &DepTree) -> Result<CrossingsGraph, TreeError> {
    tree.validate_forest()?;
    let arcs = tree.arcs();
    let mut adjacency = vec![Vec::new(); arcs.len()];
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if cross(&arcs[i], &arcs[j]) {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(CrossingsGraph { arcs, adjacency })
}

/// Result of a plane-assignment run. Index `k` refers to the arc into word
/// `k + 1`.
#[derive(Clone, Debug, Eq, PartialEq)]
pub struct PlaneAssignment {
    arcs: Vec<Arc>,
    planes: Vec<Option<Plane>>,
    allowed: Vec<[bool; 2]>,
}

impl PlaneAssignment {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Plane of the arc into `word` (1-based), `None` if it was dropped.
    pub fn plane_of(&self, word: usize) -> Option<Plane> {
        self.planes[word - 1]
    }

    pub fn planes(&self) -> &[Option<Plane>] {
        &self.planes
    }

    /// Planes still allowed for the arc into `word` when the run finished.
    pub fn allowed(&self, word: usize) -> [bool; 2] {
        self.allowed[word - 1]
    }

    pub fn is_complete(&self) -> bool {
        self.planes.iter().all(Option::is_some)
    }

    /// Arcs that could not be placed on either plane.
    pub fn unassigned(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs
            .iter()
            .zip(&self.planes)
            .filter(|(_, p)| p.is_none())
            .map(|(a, _)| *a)
    }
}

/// Second-plane-averse greedy assignment with restriction propagation.
pub fn assign_planes(tree: &DepTree) -> Result<PlaneAssignment, TreeError> {
    let graph = crossings_graph(tree)?;
    Ok(assign_on_graph(&graph))
}

pub fn assign_on_graph(graph: &CrossingsGraph) -> PlaneAssignment {
    let arcs = graph.arcs().to_vec();
    let m = arcs.len();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&k| (arcs[k].right(), arcs[k].span()));

    let mut planes = vec![None; m];
    let mut allowed = vec![[true; 2]; m];
    // (arc, plane) pairs already forbidden; propagation from a pair always
    // reaches the same pairs, so it never needs to run twice.
    let mut forbidden = vec![[false; 2]; m];

    for node in order {
        let plane = match allowed[node] {
            [true, _] => Plane::First,
            [false, true] => Plane::Second,
            [false, false] => continue,
        };
        planes[node] = Some(plane);

        let mut queue: VecDeque<(usize, Plane)> = graph
            .neighbors(node)
            .iter()
            .map(|&nb| (nb, plane))
            .collect();
        while let Some((arc, p)) = queue.pop_front() {
            if forbidden[arc][p.index()] {
                continue;
            }
            forbidden[arc][p.index()] = true;
            allowed[arc][p.index()] = false;
            for &nb in graph.neighbors(arc) {
                if !forbidden[nb][p.other().index()] {
                    queue.push_back((nb, p.other()));
                }
            }
        }
    }

    PlaneAssignment {
        arcs,
        planes,
        allowed,
    }
}

impl PlaneAssignment {
    /// Build an assignment from explicit planes, for tests and oracles.
    pub fn from_planes(tree: &DepTree, planes: Vec<Option<usize>>) -> Self {
        assert_eq!(planes.len(), tree.len());
        let allowed = planes
            .iter()
            .map(|p| match p {
                Some(i) => {
                    let mut a = [false; 2];
                    a[*i] = true;
                    a
                }
                None => [false; 2],
            })
            .collect();
        PlaneAssignment {
            arcs: tree.arcs(),
            planes: planes
                .into_iter()
                .map(|p| p.map(Plane::from_index))
                .collect(),
            allowed,
        }
    }
}
