//! Finite plane trees stored as their depth-first outdegree sequence.
//!
//! Vertex `i` is the `i`-th vertex visited by a depth-first search from the
//! root (the root is vertex 0). The outdegree sequence in that order is the
//! Łukasiewicz encoding of the tree: with steps `outdeg[i] - 1`, the partial
//! sums stay nonnegative until the last vertex and end at `-1`.

use std::fmt;
use std::io::BufRead;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("empty outdegree sequence")]
    Empty,
    #[error("not an excursion encoding: {reason}")]
    NotAnExcursion { reason: String },
    #[error("vertex {index} out of range for tree with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge list does not describe a tree: {0}")]
    NotATree(String),
}

/// Rooted ordered tree. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneTree {
    outdeg: Vec<usize>,
    parent: Vec<Option<usize>>,
    // CSR layout: children of v are child_list[child_start[v]..child_start[v + 1]].
    child_start: Vec<usize>,
    child_list: Vec<usize>,
}

impl PlaneTree {
    /// Decodes a depth-first outdegree sequence.
    pub fn from_outdegrees(seq: Vec<usize>) -> Result<Self, TreeError> {
        check_excursion(&seq)?;
        let n = seq.len();

        let mut child_start = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for &d in &seq {
            child_start.push(acc);
            acc += d;
        }
        child_start.push(acc);

        let mut parent = vec![None; n];
        let mut child_list = vec![0; n - 1];
        let mut fill = child_start.clone();
        // (vertex, children still to attach)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for (i, &d) in seq.iter().enumerate() {
            if let Some(top) = stack.last_mut() {
                let p = top.0;
                parent[i] = Some(p);
                child_list[fill[p]] = i;
                fill[p] += 1;
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if d > 0 {
                stack.push((i, d));
            }
        }

        Ok(Self {
            outdeg: seq,
            parent,
            child_start,
            child_list,
        })
    }

    /// Builds the plane tree obtained by rooting an unrooted tree at `root`.
    ///
    /// Children are ordered by their position in each vertex's adjacency
    /// list, which follows the order of `edges`. Returns the tree and the map
    /// from input labels to depth-first ranks.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        root: usize,
    ) -> Result<(Self, Vec<usize>), TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if root >= n {
            return Err(TreeError::IndexOutOfRange { index: root, len: n });
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(TreeError::NotATree(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Self::from_adjacency(&adj, root)
    }

    fn from_adjacency(adj: &[Vec<usize>], root: usize) -> Result<(Self, Vec<usize>), TreeError> {
        let n = adj.len();
        let mut rank = vec![usize::MAX; n];
        let mut outdeg = Vec::with_capacity(n);
        // Preorder with an explicit stack; children pushed in reverse so the
        // first neighbour is visited first.
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, from)) = stack.pop() {
            if rank[v] != usize::MAX {
                return Err(TreeError::NotATree("cycle detected".into()));
            }
            rank[v] = outdeg.len();
            let kids: Vec<usize> = adj[v].iter().copied().filter(|&u| u != from).collect();
            outdeg.push(kids.len());
            for &u in kids.iter().rev() {
                stack.push((u, v));
            }
        }
        if outdeg.len() != n {
            return Err(TreeError::NotATree("graph is disconnected".into()));
        }
        Ok((Self::from_outdegrees(outdeg)?, rank))
    }

    /// The same unrooted tree rooted at `v`. Adjacency order at every vertex
    /// is (parent, children...) from `self`. Returns the new tree and the map
    /// from old ranks to new ranks.
    pub fn reroot(&self, v: usize) -> Result<(Self, Vec<usize>), TreeError> {
        self.check_index(v)?;
        let adj: Vec<Vec<usize>> = (0..self.len()).map(|u| self.adjacent(u)).collect();
        Self::from_adjacency(&adj, v)
    }

    pub fn len(&self) -> usize {
        self.outdeg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outdeg.is_empty()
    }

    pub fn outdegrees(&self) -> &[usize] {
        &self.outdeg
    }

    pub fn into_outdegrees(self) -> Vec<usize> {
        self.outdeg
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    /// Parent (if any) followed by the children in plane order.
    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>, TreeError> {
        self.check_index(v)?;
        Ok(self.adjacent(v))
    }

    fn adjacent(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.outdeg[v] + 1);
        out.extend(self.parent[v]);
        out.extend_from_slice(self.children(v));
        out
    }

    /// Edges as (parent, child) pairs in depth-first order of the child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.len()).map(move |v| (self.parent[v].expect("non-root has a parent"), v))
    }

    pub fn leaf_count(&self) -> usize {
        self.outdeg.iter().filter(|&&d| d == 0).count()
    }

    pub fn max_outdegree(&self) -> usize {
        self.outdeg.iter().copied().max().unwrap_or(0)
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in 1..self.len() {
            depth[v] = depth[self.parent[v].unwrap()] + 1;
        }
        depth
    }

    pub fn walk(&self) -> LukasiewiczWalk {
        LukasiewiczWalk {
            steps: self.outdeg.iter().map(|&d| d as i64 - 1).collect(),
        }
    }

    fn check_index(&self, v: usize) -> Result<(), TreeError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(TreeError::IndexOutOfRange {
                index: v,
                len: self.len(),
            })
        }
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneTree({self})")
    }
}

/// Writes the outdeg-line form: outdegrees separated by single spaces.
impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.outdeg.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn tree_from_outdegrees(seq: &[usize]) -> Result<PlaneTree, TreeError> {
    PlaneTree::from_outdegrees(seq.to_vec())
}

pub fn outdegrees_from_tree(t: &PlaneTree) -> Vec<usize> {
    t.outdegrees().to_vec()
}

fn check_excursion(seq: &[usize]) -> Result<(), TreeError> {
    if seq.is_empty() {
        return Err(TreeError::Empty);
    }
    let n = seq.len();
    let mut s: i64 = 0;
    for (k, &d) in seq.iter().enumerate() {
        s += d as i64 - 1;
        if k + 1 < n && s < 0 {
            return Err(TreeError::NotAnExcursion {
                reason: format!("walk hits -1 at step {} of {}", k + 1, n),
            });
        }
    }
    if s != -1 {
        return Err(TreeError::NotAnExcursion {
            reason: format!("outdegrees sum to {}, expected {}", s + n as i64, n - 1),
        });
    }
    Ok(())
}

/// Walk with steps `outdeg - 1` along the depth-first order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LukasiewiczWalk {
    pub steps: Vec<i64>,
}

impl LukasiewiczWalk {
    pub fn new(steps: Vec<i64>) -> Self {
        Self { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Partial sums `s_0 = 0, s_1, ..., s_n`.
    pub fn partial_sums(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(0);
        let mut s = 0;
        for &x in &self.steps {
            s += x;
            out.push(s);
        }
        out
    }

    /// True when the walk first reaches -1 exactly at its final step.
    pub fn is_excursion(&self) -> bool {
        let n = self.steps.len();
        if n == 0 || self.steps.iter().any(|&x| x < -1) {
            return false;
        }
        let mut s = 0;
        for (k, &x) in self.steps.iter().enumerate() {
            s += x;
            if s < 0 && k + 1 < n {
                return false;
            }
        }
        s == -1
    }

    pub fn to_tree(&self) -> Result<PlaneTree, TreeError> {
        if let Some(&x) = self.steps.iter().find(|&&x| x < -1) {
            return Err(TreeError::NotAnExcursion {
                reason: format!("step {x} below -1"),
            });
        }
        PlaneTree::from_outdegrees(self.steps.iter().map(|&x| (x + 1) as usize).collect())
    }
}

/// Parses one outdeg-line. Returns `Ok(None)` for blank and `#` comment lines.
pub fn parse_outdeg_line(line: &str, line_no: usize) -> Result<Option<PlaneTree>, TreeError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let seq = trimmed
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|e| TreeError::Parse {
                line: line_no,
                msg: format!("bad outdegree {tok:?}: {e}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    PlaneTree::from_outdegrees(seq)
        .map(Some)
        .map_err(|e| TreeError::Parse {
            line: line_no,
            msg: e.to_string(),
        })
}

/// Reads every tree from an outdeg-line stream (1-based line numbers in errors).
pub fn read_outdeg_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<PlaneTree, TreeError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Ok(line) => parse_outdeg_line(&line, i + 1).transpose(),
            Err(e) => Some(Err(TreeError::Parse {
                line: i + 1,
                msg: e.to_string(),
            })),
        })
}
