//! Finite quasi-orders and their combinators, bad sequences, the tree of
//! bad sequences with its Kleene–Brouwer linearization, and reification
//! checks against an ordered value assignment.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite quasi-order: a carrier of named elements and a reflexive,
/// transitive relation stored as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQO {
    names: Vec<String>,
    le: Vec<bool>,
}

impl FiniteQO {
    /// Builds from an explicit relation matrix, checking reflexivity and
    /// transitivity. The matrix is row-major: `le[a*n + b]` means `a ≤ b`.
    pub fn new(names: Vec<String>, le: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if le.len() != n * n {
            return Err(Error::domain(format!(
                "relation matrix has {} entries, expected {}",
                le.len(),
                n * n
            )));
        }
        check_names(&names)?;
        for a in 0..n {
            if !le[a * n + a] {
                return Err(Error::domain(format!(
                    "relation not reflexive at {:?}",
                    names[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !le[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if le[b * n + c] && !le[a * n + c] {
                        return Err(Error::domain(format!(
                            "relation not transitive: {:?} ≤ {:?} ≤ {:?} but not {:?} ≤ {:?}",
                            names[a], names[b], names[c], names[a], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteQO { names, le })
    }

    /// Builds from generating pairs, applying the reflexive-transitive
    /// closure. Unlike [`FiniteQO::new`] this never rejects a relation.
    pub fn closure(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::domain(format!(
                    "pair ({a}, {b}) outside carrier of {n} elements"
                )));
            }
            le[a * n + b] = true;
        }
        // Floyd-Warshall style closure.
        for k in 0..n {
            for a in 0..n {
                if le[a * n + k] {
                    for b in 0..n {
                        if le[k * n + b] {
                            le[a * n + b] = true;
                        }
                    }
                }
            }
        }
        Ok(FiniteQO { names, le })
    }

    pub fn singleton() -> Self {
        FiniteQO {
            names: vec!["q".to_string()],
            le: vec![true],
        }
    }

    /// `e0 < e1 < … < e{n-1}`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                le[a * n + b] = true;
            }
        }
        FiniteQO { names, le }
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        FiniteQO { names, le }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    /// Mutual relation `a ≤ b ∧ b ≤ a`.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    /// Number of equivalence classes under mutual relation.
    pub fn class_count(&self) -> usize {
        let n = self.len();
        (0..n)
            .filter(|&a| (0..a).all(|b| !self.equivalent(a, b)))
            .count()
    }

    /// Whether the relation is total (any two elements comparable).
    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.le(a, b) || self.le(b, a)))
    }

    /// The set of related pairs, row-major.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.le(a, b))
            .collect()
    }

    /// Componentwise product order on the cartesian product of carriers.
    pub fn product(&self, other: &FiniteQO) -> FiniteQO {
        let (np, nq) = (self.len(), other.len());
        let names = (0..np)
            .flat_map(|p| (0..nq).map(move |q| format!("({},{})", self.name(p), other.name(q))))
            .collect();
        let n = np * nq;
        let mut le = vec![false; n * n];
        for p1 in 0..np {
            for q1 in 0..nq {
                for p2 in 0..np {
                    for q2 in 0..nq {
                        if self.le(p1, p2) && other.le(q1, q2) {
                            le[(p1 * nq + q1) * n + (p2 * nq + q2)] = true;
                        }
                    }
                }
            }
        }
        FiniteQO { names, le }
    }

    /// Ordered sum: both parts keep their relation and every left element
    /// is below every right element.
    pub fn sum(&self, other: &FiniteQO) -> FiniteQO {
        let mut q = self.disjoint_union(other);
        let (np, n) = (self.len(), q.len());
        for a in 0..np {
            for b in np..n {
                q.le[a * n + b] = true;
            }
        }
        q
    }

    /// Disjoint union: both parts keep their relation, cross pairs are
    /// incomparable.
    pub fn disjoint_union(&self, other: &FiniteQO) -> FiniteQO {
        let (np, nq) = (self.len(), other.len());
        let n = np + nq;
        let mut names: Vec<String> = self.names.iter().map(|s| format!("l:{s}")).collect();
        names.extend(other.names.iter().map(|s| format!("r:{s}")));
        let mut le = vec![false; n * n];
        for a in 0..np {
            for b in 0..np {
                le[a * n + b] = self.le(a, b);
            }
        }
        for a in 0..nq {
            for b in 0..nq {
                le[(np + a) * n + (np + b)] = other.le(a, b);
            }
        }
        FiniteQO { names, le }
    }

    /// The n-fold order on `{0..n-1} × Q` under the chosen relation.
    pub fn n_fold(&self, n: usize, mode: FoldMode) -> Result<FiniteQO> {
        if n == 0 {
            return Err(Error::domain("n-fold copies must be at least 1"));
        }
        let nq = self.len();
        let names = (0..n)
            .flat_map(|m| (0..nq).map(move |q| format!("({m},{})", self.name(q))))
            .collect();
        let total = n * nq;
        let mut le = vec![false; total * total];
        for m1 in 0..n {
            for q1 in 0..nq {
                for m2 in 0..n {
                    for q2 in 0..nq {
                        let related = match mode {
                            FoldMode::Plus => m1 < m2 || (m1 == m2 && self.le(q1, q2)),
                            FoldMode::Times => m1 <= m2 && self.le(q1, q2),
                            FoldMode::Dunion => m1 == m2 && self.le(q1, q2),
                        };
                        if related {
                            le[(m1 * nq + q1) * total + (m2 * nq + q2)] = true;
                        }
                    }
                }
            }
        }
        Ok(FiniteQO { names, le })
    }

    /// Q × Q × … × Q (`n` factors) under the componentwise order.
    pub fn power(&self, n: usize) -> Result<FiniteQO> {
        if n == 0 {
            return Err(Error::domain("power must have at least 1 factor"));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self);
        }
        Ok(acc)
    }
}

fn check_names(names: &[String]) -> Result<()> {
    for n in names {
        if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::domain(format!(
                "carrier name {n:?} must be nonempty without whitespace"
            )));
        }
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::domain(format!("duplicate carrier name {n:?}")));
        }
    }
    Ok(())
}

/// Relation used by [`FiniteQO::n_fold`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldMode {
    Plus,
    Times,
    Dunion,
}

impl std::str::FromStr for FoldMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(FoldMode::Plus),
            "times" => Ok(FoldMode::Times),
            "dunion" => Ok(FoldMode::Dunion),
            _ => Err(Error::parse(format!(
                "unknown mode {s:?}, expected plus|times|dunion"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct QoFile {
    carrier: Vec<String>,
    le: Vec<(String, String)>,
    #[serde(default)]
    closure: bool,
}

impl FiniteQO {
    /// Reads `{"carrier": [...], "le": [[a,b],...], "closure": bool}`. With
    /// `closure` set the reflexive-transitive closure of the listed pairs is
    /// taken; otherwise the pairs must already form a quasi-order.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: QoFile =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("qo json: {e}")))?;
        let lookup = |name: &str| {
            file.carrier
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::domain(format!("relation mentions unknown element {name:?}")))
        };
        let mut pairs = Vec::with_capacity(file.le.len());
        for (a, b) in &file.le {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        if file.closure {
            FiniteQO::closure(file.carrier, &pairs)
        } else {
            let n = file.carrier.len();
            let mut le = vec![false; n * n];
            for (a, b) in pairs {
                le[a * n + b] = true;
            }
            FiniteQO::new(file.carrier, le)
        }
    }

    /// Writes the full relation (including the diagonal) with `closure`
    /// false, so the output reloads bit for bit.
    pub fn to_json(&self) -> String {
        let file = QoFile {
            carrier: self.names.clone(),
            le: self
                .relation_pairs()
                .into_iter()
                .map(|(a, b)| (self.name(a).to_string(), self.name(b).to_string()))
                .collect(),
            closure: false,
        };
        serde_json::to_string(&file).expect("qo serializes")
    }
}

// ---------------------------------------------------------------------------
// Bad sequences
// ---------------------------------------------------------------------------

/// The least `(i, j)` with `i < j` and `seq[i] ≤ seq[j]`, or `None` when the
/// sequence is bad.
pub fn good_pair(seq: &[usize], q: &FiniteQO) -> Result<Option<(usize, usize)>> {
    for (k, &e) in seq.iter().enumerate() {
        if e >= q.len() {
            return Err(Error::domain(format!(
                "sequence entry {k} is {e}, outside carrier of {} elements",
                q.len()
            )));
        }
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if q.le(seq[i], seq[j]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// The tree of all bad sequences over a finite quasi-order, parent being the
/// immediate prefix. Node 0 is the empty sequence; children are explored in
/// carrier order, so node numbering is the DFS preorder.
#[derive(Clone, Debug)]
pub struct BadSeqTree {
    nodes: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl BadSeqTree {
    pub fn build(q: &FiniteQO, budget: Option<usize>) -> Result<Self> {
        let cap = budget.unwrap_or(usize::MAX);
        let mut tree = BadSeqTree {
            nodes: vec![Vec::new()],
            parent: vec![None],
        };
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let seq = tree.nodes[id].clone();
            // Extensions must stay bad: the new entry may not dominate any
            // earlier one.
            let mut children = Vec::new();
            for e in 0..q.len() {
                if seq.iter().all(|&p| !q.le(p, e)) {
                    let mut ext = seq.clone();
                    ext.push(e);
                    if tree.nodes.len() >= cap {
                        return Err(Error::budget(format!(
                            "bad-sequence tree exceeded budget of {cap} nodes"
                        )));
                    }
                    tree.nodes.push(ext);
                    tree.parent.push(Some(id));
                    children.push(tree.nodes.len() - 1);
                }
            }
            // Reverse so DFS visits children in carrier order.
            stack.extend(children.into_iter().rev());
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the root is always present
    }

    pub fn node(&self, id: usize) -> &[usize] {
        &self.nodes[id]
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.parent[id]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[usize]> {
        self.nodes.iter().map(Vec::as_slice)
    }

    /// Leaves: bad sequences with no bad extension (the maximal ones).
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.nodes.len()];
        for p in self.parent.iter().flatten() {
            has_child[*p] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_child[i]).collect()
    }
}

/// Maximal bad-sequence length with one witness, by depth-first search over
/// the bad-sequence tree.
pub fn longest_bad(q: &FiniteQO, budget: Option<usize>) -> Result<(usize, Vec<usize>)> {
    let tree = BadSeqTree::build(q, budget)?;
    let mut best: &[usize] = &[];
    for node in tree.nodes() {
        if node.len() > best.len() {
            best = node;
        }
    }
    Ok((best.len(), best.to_vec()))
}

/// Kleene–Brouwer comparison of two sequences: a proper extension comes
/// first; otherwise the first differing position decides by carrier index.
pub fn kb_cmp(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    // One is a prefix of the other; the longer (the extension) comes first.
    b.len().cmp(&a.len())
}

/// Node ids of the tree listed in Kleene–Brouwer order.
pub fn kb_linearize(tree: &BadSeqTree) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..tree.len()).collect();
    ids.sort_by(|&i, &j| kb_cmp(tree.node(i), tree.node(j)));
    ids
}

/// An edge along which a reification fails to be antitone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReificationViolation {
    pub parent: usize,
    pub child: usize,
}

/// Checks that `values` (indexed by node id) is antitone along extension:
/// on every tree edge the child's value is ≤ the parent's (strictly less
/// with `strict`). Reports the first offending edge in node order.
pub fn check_reification<T, F>(
    tree: &BadSeqTree,
    values: &[T],
    mut cmp: F,
    strict: bool,
) -> Result<std::result::Result<(), ReificationViolation>>
where
    F: FnMut(&T, &T) -> Ordering,
{
    if values.len() != tree.len() {
        return Err(Error::domain(format!(
            "value assignment covers {} nodes, tree has {}",
            values.len(),
            tree.len()
        )));
    }
    for child in 1..tree.len() {
        let parent = tree.parent(child).expect("non-root has a parent");
        let ord = cmp(&values[child], &values[parent]);
        let ok = if strict {
            ord == Ordering::Less
        } else {
            ord != Ordering::Greater
        };
        if !ok {
            return Ok(Err(ReificationViolation { parent, child }));
        }
    }
    Ok(Ok(()))
}

/// Every quasi-order on `n` labelled elements, by brute-force filtering of
/// reflexive relations for transitivity. Deterministic order.
pub fn all_quasi_orders(n: usize) -> Vec<FiniteQO> {
    assert!(n <= 4, "catalogue enumeration is desk-scale only");
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << off_diag.len()) {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        for (bit, &(a, b)) in off_diag.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                le[a * n + b] = true;
            }
        }
        if let Ok(q) = FiniteQO::new(names.clone(), le) {
            out.push(q);
        }
    }
    out
}
