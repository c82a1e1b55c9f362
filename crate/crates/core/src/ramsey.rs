//! Finite combinatorial steps behind the product closure arguments: the
//! colouring of a bad product sequence by first failing component, search
//! for homogeneous index sets, pigeonhole extraction on a finite prefix, and
//! the order-plus-bad-sequence construction from a bounded prefix.

use crate::error::{Error, Result};
use crate::qo::FiniteQO;

/// A total colouring of the index pairs `i < j < len`.
#[derive(Clone, Debug)]
pub struct Colouring {
    len: usize,
    n_colours: usize,
    colours: Vec<usize>,
}

impl Colouring {
    fn pair_slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.len);
        // Pairs ordered (0,1),(0,2),…,(0,len-1),(1,2),…
        i * self.len - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn colour(&self, i: usize, j: usize) -> usize {
        self.colours[self.pair_slot(i, j)]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len < 2
    }

    pub fn n_colours(&self) -> usize {
        self.n_colours
    }

    /// All `(i, j, colour)` triples in lexicographic pair order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len {
            for j in i + 1..self.len {
                out.push((i, j, self.colour(i, j)));
            }
        }
        out
    }
}

/// Colours every pair of positions in a bad sequence over `Qⁿ` by the least
/// component where the earlier tuple fails to be below the later one.
/// A good pair in the input is a precondition violation and is reported.
pub fn colour_bad_product_seq(seq: &[Vec<usize>], q: &FiniteQO, n: usize) -> Result<Colouring> {
    if n == 0 {
        return Err(Error::domain("tuples must have at least 1 component"));
    }
    for (at, tuple) in seq.iter().enumerate() {
        if tuple.len() != n {
            return Err(Error::domain(format!(
                "tuple {at} has {} components, expected {n}",
                tuple.len()
            )));
        }
        for &e in tuple {
            if e >= q.len() {
                return Err(Error::domain(format!(
                    "tuple {at} mentions element {e}, outside carrier of {}",
                    q.len()
                )));
            }
        }
    }
    let len = seq.len();
    let mut colours = Vec::with_capacity(len * len.saturating_sub(1) / 2);
    for i in 0..len {
        for j in i + 1..len {
            let first_fail = (0..n).find(|&k| !q.le(seq[i][k], seq[j][k]));
            match first_fail {
                Some(k) => colours.push(k),
                None => {
                    return Err(Error::domain(format!(
                        "sequence is good: tuple {i} is below tuple {j} componentwise"
                    )))
                }
            }
        }
    }
    Ok(Colouring {
        len,
        n_colours: n,
        colours,
    })
}

/// First index subset of the given size, in lexicographic order, whose pairs
/// all share one colour; `None` if no such subset exists in the prefix.
pub fn homogeneous_subset(c: &Colouring, size: usize) -> Result<Option<Vec<usize>>> {
    if size < 2 {
        return Err(Error::domain("homogeneous subsets need size at least 2"));
    }
    if size > c.len() {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(size);
    if search_subset(c, size, 0, &mut chosen) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn search_subset(c: &Colouring, size: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        return true;
    }
    for cand in from..c.len() {
        // The first pair fixes the colour; later members must match it.
        let consistent = match chosen.len() {
            0 | 1 => true,
            _ => {
                let want = c.colour(chosen[0], chosen[1]);
                chosen.iter().all(|&p| c.colour(p, cand) == want)
            }
        };
        if consistent {
            chosen.push(cand);
            if search_subset(c, size, cand + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Finite pigeonhole: the most frequent colour below `k` with all its
/// occurrence positions; ties break toward the smaller colour.
pub fn pigeonhole_extract(seq: &[usize], k: usize) -> Result<(usize, Vec<usize>)> {
    if k == 0 {
        return Err(Error::domain("colour bound must be at least 1"));
    }
    for (i, &e) in seq.iter().enumerate() {
        if e >= k {
            return Err(Error::domain(format!(
                "entry {i} is {e}, not below the colour bound {k}"
            )));
        }
    }
    let mut counts = vec![0usize; k];
    for &e in seq {
        counts[e] += 1;
    }
    let best = (0..k)
        .max_by_key(|&c| (counts[c], std::cmp::Reverse(c)))
        .expect("k ≥ 1");
    let indices = seq
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e == best)
        .map(|(i, _)| i)
        .collect();
    Ok((best, indices))
}

/// The strict total order on prefix positions built from a bounded prefix,
/// together with the witness sequence that is bad under the product
/// relation on `{0..m-1} × order`.
#[derive(Clone, Debug)]
pub struct PigeonholeOrder {
    values: Vec<usize>,
    bound: usize,
}

impl PigeonholeOrder {
    /// `i` strictly before `j`: smaller prefix value first, ties broken by
    /// the larger position.
    pub fn less(&self, i: usize, j: usize) -> bool {
        (self.values[i], std::cmp::Reverse(i)) < (self.values[j], std::cmp::Reverse(j))
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Positions listed ascending in the order.
    pub fn sorted_positions(&self) -> Vec<usize> {
        let mut ix: Vec<usize> = (0..self.values.len()).collect();
        ix.sort_by_key(|&i| (self.values[i], std::cmp::Reverse(i)));
        ix
    }

    /// Element `i` of the witness sequence: `(m - 1 - n_i, i)`.
    pub fn witness(&self) -> Vec<(usize, usize)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &n)| (self.bound - 1 - n, i))
            .collect()
    }

    /// Product relation on the witness entries: first components by number,
    /// second by this order.
    pub fn witness_le(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        a.0 <= b.0 && self.le(a.1, b.1)
    }
}

/// Builds the order and witness sequence from a prefix of values below `m`,
/// asserting the construction's postconditions: the order is strict and
/// total, and the witness has no good pair under the product relation.
pub fn pigeonhole_order(prefix: &[usize], m: usize) -> Result<PigeonholeOrder> {
    if m == 0 {
        return Err(Error::domain("bound must be at least 1"));
    }
    for (i, &e) in prefix.iter().enumerate() {
        if e >= m {
            return Err(Error::domain(format!(
                "entry {i} is {e}, not below the bound {m}"
            )));
        }
    }
    let order = PigeonholeOrder {
        values: prefix.to_vec(),
        bound: m,
    };
    // Strictness and totality: positions have distinct sort keys.
    for i in 0..order.len() {
        assert!(!order.less(i, i), "order must be irreflexive");
        for j in i + 1..order.len() {
            assert!(
                order.less(i, j) != order.less(j, i),
                "order must be total and antisymmetric"
            );
        }
    }
    // Badness of the witness under the product relation.
    let w = order.witness();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            assert!(
                !order.witness_le(w[i], w[j]),
                "witness must be bad under the product relation"
            );
        }
    }
    Ok(order)
}
