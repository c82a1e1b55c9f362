//! Finite ordered labelled trees, branching degree, and homeomorphic
//! embeddability over a label quasi-order.
//!
//! `embeds` decides `t ⪯ s` by the usual three clauses: leaf into leaf by
//! label, descent into some immediate subtree, or root-to-root with labels
//! related and an order-preserving matching of the children. The matching is
//! found greedily left to right with memoization; `embeds_oracle` redoes the
//! matching by exhaustive search over strictly increasing index maps and is
//! the correctness reference for the greedy strategy.

use std::fmt;

use crate::error::{Error, Result};
use crate::qo::FiniteQO;

/// A finite ordered tree with string labels drawn from a quasi-order carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledTree {
    pub label: String,
    pub children: Vec<LabelledTree>,
}

impl LabelledTree {
    pub fn leaf(label: impl Into<String>) -> Self {
        LabelledTree {
            label: label.into(),
            children: Vec::new(),
        }
    }

    pub fn node(label: impl Into<String>, children: Vec<LabelledTree>) -> Self {
        LabelledTree {
            label: label.into(),
            children,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    /// Branching degree: 0 for a leaf, otherwise the maximum of the child
    /// count and the children's degrees.
    pub fn degree(&self) -> usize {
        self.children
            .iter()
            .map(Self::degree)
            .chain(std::iter::once(self.children.len()))
            .max()
            .expect("chain is nonempty")
    }
}

/// Flattened view of a tree: per-node label index and children, so embedding
/// queries can memoize on `(node of t, node of s)`.
struct Indexed {
    labels: Vec<usize>,
    children: Vec<Vec<usize>>,
    root: usize,
}

fn index_tree(t: &LabelledTree, q: &FiniteQO) -> Result<Indexed> {
    let mut ix = Indexed {
        labels: Vec::new(),
        children: Vec::new(),
        root: 0,
    };
    fn walk(t: &LabelledTree, q: &FiniteQO, ix: &mut Indexed) -> Result<usize> {
        let label = q
            .index_of(&t.label)
            .ok_or_else(|| Error::domain(format!("label {:?} outside the carrier", t.label)))?;
        let mut kids = Vec::with_capacity(t.children.len());
        for c in &t.children {
            kids.push(walk(c, q, ix)?);
        }
        ix.labels.push(label);
        ix.children.push(kids);
        Ok(ix.labels.len() - 1)
    }
    ix.root = walk(t, q, &mut ix)?;
    Ok(ix)
}

/// Decides `t ⪯ s` over the label order `q`. Root matching of children is
/// greedy left to right; results are memoized per subtree pair.
pub fn embeds(t: &LabelledTree, s: &LabelledTree, q: &FiniteQO) -> Result<bool> {
    let it = index_tree(t, q)?;
    let is = index_tree(s, q)?;
    let mut memo = vec![None; it.labels.len() * is.labels.len()];
    Ok(emb(&it, &is, q, it.root, is.root, &mut memo))
}

fn emb(
    it: &Indexed,
    is: &Indexed,
    q: &FiniteQO,
    ti: usize,
    si: usize,
    memo: &mut [Option<bool>],
) -> bool {
    let key = ti * is.labels.len() + si;
    if let Some(v) = memo[key] {
        return v;
    }
    // Descend into some immediate subtree of s.
    let mut ok = is.children[si]
        .iter()
        .any(|&sc| emb(it, is, q, ti, sc, memo));
    // Root to root: labels related, children matched in order.
    if !ok && q.le(it.labels[ti], is.labels[si]) {
        let mut cursor = 0usize;
        let mut matched = true;
        for &tc in &it.children[ti] {
            let mut found = false;
            while cursor < is.children[si].len() {
                let sc = is.children[si][cursor];
                cursor += 1;
                if emb(it, is, q, tc, sc, memo) {
                    found = true;
                    break;
                }
            }
            if !found {
                matched = false;
                break;
            }
        }
        ok = matched;
    }
    memo[key] = Some(ok);
    ok
}

/// Brute-force reference for [`embeds`]: no memoization, and the child
/// matching tries every strictly increasing index map. Exponential; for
/// tests only.
pub fn embeds_oracle(t: &LabelledTree, s: &LabelledTree, q: &FiniteQO) -> Result<bool> {
    for tree in [t, s] {
        check_labels(tree, q)?;
    }
    Ok(emb_oracle(t, s, q))
}

fn check_labels(t: &LabelledTree, q: &FiniteQO) -> Result<()> {
    if q.index_of(&t.label).is_none() {
        return Err(Error::domain(format!(
            "label {:?} outside the carrier",
            t.label
        )));
    }
    t.children.iter().try_for_each(|c| check_labels(c, q))
}

fn emb_oracle(t: &LabelledTree, s: &LabelledTree, q: &FiniteQO) -> bool {
    if s.children.iter().any(|sc| emb_oracle(t, sc, q)) {
        return true;
    }
    let (p, r) = (
        q.index_of(&t.label).expect("checked"),
        q.index_of(&s.label).expect("checked"),
    );
    q.le(p, r) && any_increasing_map(&t.children, &s.children, 0, q)
}

fn any_increasing_map(ts: &[LabelledTree], ss: &[LabelledTree], from: usize, q: &FiniteQO) -> bool {
    let Some((first, rest)) = ts.split_first() else {
        return true;
    };
    (from..ss.len()).any(|i| emb_oracle(first, &ss[i], q) && any_increasing_map(rest, ss, i + 1, q))
}

/// All trees with at most `max_nodes` nodes and branching degree at most
/// `max_degree` (`None` for unbounded), labels from the carrier of `q`.
/// Duplicate-free, in a deterministic order.
pub fn enumerate_trees(
    q: &FiniteQO,
    max_nodes: usize,
    max_degree: Option<usize>,
    budget: Option<usize>,
) -> Result<Vec<LabelledTree>> {
    if max_nodes < 1 {
        return Err(Error::domain("max_nodes must be at least 1"));
    }
    let cap = budget.unwrap_or(usize::MAX);
    // by_nodes[k] = trees with exactly k nodes (index 0 unused).
    let mut by_nodes: Vec<Vec<LabelledTree>> = vec![Vec::new(); max_nodes + 1];
    let mut total = 0usize;
    for k in 1..=max_nodes {
        let mut bucket = Vec::new();
        let mut forests: Vec<Vec<LabelledTree>> = Vec::new();
        collect_forests(&by_nodes, k - 1, max_degree, &mut Vec::new(), &mut forests);
        for forest in forests {
            for label in q.names() {
                total += 1;
                if total > cap {
                    return Err(Error::budget(format!(
                        "tree enumeration exceeded budget of {cap}"
                    )));
                }
                bucket.push(LabelledTree::node(label.clone(), forest.clone()));
            }
        }
        by_nodes[k] = bucket;
    }
    Ok(by_nodes.into_iter().flatten().collect())
}

/// Ordered forests with exactly `nodes` total nodes and at most `max_degree`
/// trees, drawn from the already-built buckets.
fn collect_forests(
    by_nodes: &[Vec<LabelledTree>],
    nodes: usize,
    max_degree: Option<usize>,
    stack: &mut Vec<LabelledTree>,
    out: &mut Vec<Vec<LabelledTree>>,
) {
    if nodes == 0 {
        out.push(stack.clone());
        return;
    }
    if max_degree.is_some_and(|d| stack.len() >= d) {
        return;
    }
    for k in 1..=nodes {
        for t in &by_nodes[k] {
            stack.push(t.clone());
            collect_forests(by_nodes, nodes - k, max_degree, stack, out);
            stack.pop();
        }
    }
}

/// Online good-pair detector over a growing tree sequence. Once a pair
/// `(i, j)` with `tᵢ ⪯ tⱼ` appears it stays reported; histories are scanned
/// in index order so the first report is the lexicographically least pair.
pub struct Whistle<'q> {
    qo: &'q FiniteQO,
    history: Vec<LabelledTree>,
    fired: Option<(usize, usize)>,
}

impl<'q> Whistle<'q> {
    pub fn new(qo: &'q FiniteQO) -> Self {
        Whistle {
            qo,
            history: Vec::new(),
            fired: None,
        }
    }

    /// Feeds the next tree and reports the least good pair seen so far.
    pub fn feed(&mut self, t: LabelledTree) -> Result<Option<(usize, usize)>> {
        check_labels(&t, self.qo)?;
        self.history.push(t);
        if self.fired.is_none() {
            let j = self.history.len() - 1;
            for i in 0..j {
                if embeds(&self.history[i], &self.history[j], self.qo)? {
                    self.fired = Some((i, j));
                    break;
                }
            }
        }
        Ok(self.fired)
    }

    pub fn fired(&self) -> Option<(usize, usize)> {
        self.fired
    }

    pub fn len(&self) -> usize {
        self.history.len()
    }

    pub fn is_empty(&self) -> bool {
        self.history.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Text form: `x` or `x[]` for a leaf, `x[t1,t2]` for an internal node.
// Labels that are not plain words are single-quoted.
// ---------------------------------------------------------------------------

impl fmt::Display for LabelledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = !self.label.is_empty()
            && self
                .label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_');
        if plain {
            write!(f, "{}", self.label)?;
        } else {
            write!(f, "'{}'", self.label)?;
        }
        if !self.children.is_empty() {
            write!(f, "[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Parses the tree grammar; whitespace between tokens is insignificant, and
/// `x` and `x[]` both denote a leaf.
pub fn parse_tree(s: &str) -> Result<LabelledTree> {
    let mut p = TreeParser {
        src: s,
        bytes: s.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::parse(format!("trailing input at byte {}", p.pos)));
    }
    Ok(t)
}

struct TreeParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn tree(&mut self) -> Result<LabelledTree> {
        let label = self.label()?;
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(b']') {
                self.pos += 1;
                return Ok(LabelledTree::node(label, children));
            }
            loop {
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        self.skip_ws();
                    }
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::parse(format!(
                            "expected `,` or `]` at byte {}",
                            self.pos
                        )))
                    }
                }
            }
        }
        Ok(LabelledTree::node(label, children))
    }

    fn label(&mut self) -> Result<String> {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|b| b != b'\'') {
                self.pos += 1;
            }
            if self.peek() != Some(b'\'') {
                return Err(Error::parse("unterminated quoted label".to_string()));
            }
            let label = self.src[start..self.pos].to_string();
            self.pos += 1;
            if label.is_empty() {
                return Err(Error::parse("empty label".to_string()));
            }
            return Ok(label);
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(format!("expected label at byte {}", self.pos)));
        }
        Ok(self.src[start..self.pos].to_string())
    }
}
