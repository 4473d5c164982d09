use std::fmt;

use crate::error::{Error, Result};

/// Degree role of a network vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Root,
    Tree,
    Reticulation,
    Leaf,
}

impl Role {
    /// `(in, out)` degree of the role.
    pub fn degrees(self) -> (usize, usize) {
        match self {
            Role::Root => (0, 2),
            Role::Tree => (1, 2),
            Role::Reticulation => (2, 1),
            Role::Leaf => (1, 0),
        }
    }
}

/// Small labeled phylogenetic network. Vertices are `0..n`; labels are
/// `index + 1` when displayed.
#[derive(Clone, PartialEq, Eq)]
pub struct NetworkGraph {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    roles: Vec<Role>,
}

impl NetworkGraph {
    /// Build from an edge list, inferring roles from degrees and checking
    /// the structural invariants.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("empty network".into()));
        }
        let mut children = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("bad edge ({u}, {v})")));
            }
            children[u].push(v);
            parents[v].push(u);
        }
        let mut roles = Vec::with_capacity(n);
        for v in 0..n {
            let role = match (parents[v].len(), children[v].len()) {
                (0, 2) => Role::Root,
                (0, 0) if n == 1 => Role::Root,
                (1, 2) => Role::Tree,
                (2, 1) => Role::Reticulation,
                (1, 0) => Role::Leaf,
                (i, o) => return Err(Error::InvalidArgument(format!("vertex {} has degrees in {i} / out {o}", v + 1))),
            };
            roles.push(role);
        }
        if roles.iter().filter(|r| **r == Role::Root).count() != 1 {
            return Err(Error::InvalidArgument("network needs exactly one root".into()));
        }
        let g = NetworkGraph { children, parents, roles };
        if g.topological_order().is_none() {
            return Err(Error::InvalidArgument("network has a directed cycle".into()));
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn reticulations(&self) -> usize {
        self.roles.iter().filter(|r| **r == Role::Reticulation).count()
    }

    pub fn leaves(&self) -> usize {
        self.roles.iter().filter(|r| **r == Role::Leaf).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|u| self.children[u].iter().map(move |&v| (u, v))).collect()
    }

    /// Whether the same ordered pair occurs as two edges.
    pub fn has_double_edge(&self) -> bool {
        self.children.iter().any(|c| c.len() == 2 && c[0] == c[1])
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in &self.children[u] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Strict descendants of every vertex.
    pub fn descendant_sets(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let order = self.topological_order().expect("validated acyclic");
        let mut desc = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            for &w in &self.children[u] {
                let below = desc[w].clone();
                desc[u][w] = true;
                for (d, b) in desc[u].iter_mut().zip(below) {
                    *d |= b;
                }
            }
        }
        desc
    }

    /// Apply the label permutation `perm` (old index to new index).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        NetworkGraph::from_edges(self.len(), &edges)
    }

    /// Edge list with vertices sorted, for set membership tests.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges();
        e.sort_unstable();
        e
    }
}

impl fmt::Debug for NetworkGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{}->{}", u + 1, v + 1)).collect();
        write!(f, "NetworkGraph[{}]", edges.join(" "))
    }
}

/// Every non-leaf vertex, root included, has a child that is not a
/// reticulation. For reticulations this says their child is not one.
pub fn is_tree_child(g: &NetworkGraph) -> bool {
    (0..g.len())
        .filter(|&v| g.role(v) != Role::Leaf && !g.children(v).is_empty())
        .all(|v| g.children(v).iter().any(|&c| g.role(c) != Role::Reticulation))
}

/// Tree-child, and no edge `(u, v)` has a second `u → v` path.
pub fn is_normal(g: &NetworkGraph) -> bool {
    if !is_tree_child(g) {
        return false;
    }
    let desc = g.descendant_sets();
    (0..g.len()).all(|u| {
        let ch = g.children(u);
        ch.iter().all(|&v| ch.iter().all(|&w| w == v || !desc[w][v]))
    })
}
