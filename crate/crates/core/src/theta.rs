//! The relativized term order G_ω(X).
//!
//! Given a finite strict total order X, the terms are: 0; one constant `c_x`
//! per element; collapsed terms `th(W^w*c_x + W^{d_k}*α_k + … + W^{d_0}*α_0)`
//! whose tail carries nonzero coefficients at strictly decreasing degrees;
//! and sums of two or more collapsed terms in non-increasing order. `W` is a
//! purely syntactic marker — it is never evaluated.
//!
//! Comparison is decided by structural recursion:
//! - 0 is below everything else; constants compare as their X-elements and
//!   sit below every collapsed term and sum;
//! - sums compare lexicographically summand by summand, a strict prefix
//!   being smaller;
//! - a sum is below a collapsed term iff every summand is; a collapsed term
//!   is below a sum iff it is ≤ the sum's first summand;
//! - a collapsed term `a` is below a collapsed term `b` iff `a` is ≤ some
//!   tail coefficient of `b`, or `a`'s collapse argument is lexicographically
//!   below `b`'s (heads first, then tail coefficients from the highest
//!   degree down, a missing degree counting as 0) while every tail
//!   coefficient of `a` stays below the whole of `b`.
//!
//! Every recursive comparison strictly shrinks the combined term size, so
//! recursion depth is bounded by `size(a) + size(b)`; the implementation
//! carries that bound as fuel and treats exhaustion as a bug.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Index of an element in a [`BaseOrder`] carrier.
pub type Elem = usize;

/// A finite strict total order: elements are compared by carrier position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseOrder {
    names: Vec<String>,
}

impl BaseOrder {
    /// Carrier in ascending order. Names must be distinct, nonempty, and
    /// consist of word characters so terms can be printed and reparsed.
    pub fn new(names: Vec<String>) -> Result<Self> {
        for n in &names {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::domain(format!(
                    "carrier name {n:?} must be a nonempty word ([A-Za-z0-9_]+)"
                )));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate carrier name {n:?}")));
            }
        }
        Ok(BaseOrder { names })
    }

    /// The chain `x0 < x1 < … < x{n-1}`.
    pub fn chain(n: usize) -> Self {
        BaseOrder {
            names: (0..n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }
}

/// A term of G_ω(X).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GTerm {
    Zero,
    Const(Elem),
    Theta(ThetaTerm),
    Sum(Vec<ThetaTerm>),
}

/// A collapsed term: head element plus `(degree, coefficient)` tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaTerm {
    pub head: Elem,
    pub tail: Vec<(u32, GTerm)>,
}

impl GTerm {
    pub fn constant(x: Elem) -> Self {
        GTerm::Const(x)
    }

    pub fn theta(head: Elem, tail: Vec<(u32, GTerm)>) -> Self {
        GTerm::Theta(ThetaTerm { head, tail })
    }

    /// Constructor-node count: zero and constants are single nodes, a
    /// collapsed term counts its own node plus its head constant plus
    /// `1 + d` per degree-`d` marker on top of each coefficient, and a sum
    /// is the total of its summands. Charging degrees keeps the set of
    /// terms of any bounded size finite.
    pub fn size(&self) -> usize {
        match self {
            GTerm::Zero | GTerm::Const(_) => 1,
            GTerm::Theta(t) => t.size(),
            GTerm::Sum(ss) => ss.iter().map(ThetaTerm::size).sum::<usize>(),
        }
    }
}

impl ThetaTerm {
    pub fn size(&self) -> usize {
        2 + self
            .tail
            .iter()
            .map(|(d, c)| 1 + *d as usize + c.size())
            .sum::<usize>()
    }
}

/// The syntactic image of `x` under the collapsing map: `th(W^w*c_x)`.
pub fn gamma_omega_term(x: Elem, base: &BaseOrder) -> Result<GTerm> {
    if x >= base.len() {
        return Err(Error::domain(format!(
            "element index {x} outside carrier of {} elements",
            base.len()
        )));
    }
    Ok(GTerm::theta(x, Vec::new()))
}

// ---------------------------------------------------------------------------
// Well-formedness
// ---------------------------------------------------------------------------

/// Why a term is not well-formed, with the path to the offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub reason: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

pub fn well_formed(t: &GTerm, base: &BaseOrder) -> bool {
    validate(t, base).is_ok()
}

/// Checks every formation rule recursively and reports the first violation.
pub fn validate(t: &GTerm, base: &BaseOrder) -> std::result::Result<(), Violation> {
    validate_at(t, base, "term")
}

fn validate_at(t: &GTerm, base: &BaseOrder, path: &str) -> std::result::Result<(), Violation> {
    match t {
        GTerm::Zero => Ok(()),
        GTerm::Const(x) => {
            if *x >= base.len() {
                Err(Violation {
                    path: path.to_string(),
                    reason: format!("constant references element {x} outside the carrier"),
                })
            } else {
                Ok(())
            }
        }
        GTerm::Theta(th) => validate_theta(th, base, path),
        GTerm::Sum(ss) => {
            if ss.len() < 2 {
                return Err(Violation {
                    path: path.to_string(),
                    reason: format!("sum has {} summand(s), needs at least 2", ss.len()),
                });
            }
            for (i, s) in ss.iter().enumerate() {
                validate_theta(s, base, &format!("{path}.sum[{i}]"))?;
            }
            for i in 0..ss.len() - 1 {
                if lt_unchecked(
                    &GTerm::Theta(ss[i].clone()),
                    &GTerm::Theta(ss[i + 1].clone()),
                ) {
                    return Err(Violation {
                        path: format!("{path}.sum[{i}]"),
                        reason: "summands must be non-increasing".to_string(),
                    });
                }
            }
            Ok(())
        }
    }
}

fn validate_theta(
    th: &ThetaTerm,
    base: &BaseOrder,
    path: &str,
) -> std::result::Result<(), Violation> {
    if th.head >= base.len() {
        return Err(Violation {
            path: path.to_string(),
            reason: format!("head references element {} outside the carrier", th.head),
        });
    }
    for (i, (d, c)) in th.tail.iter().enumerate() {
        if c == &GTerm::Zero {
            return Err(Violation {
                path: format!("{path}.tail[{i}]"),
                reason: format!("coefficient at degree {d} is zero"),
            });
        }
        validate_at(c, base, &format!("{path}.tail[{i}].coeff"))?;
    }
    for i in 0..th.tail.len().saturating_sub(1) {
        if th.tail[i].0 <= th.tail[i + 1].0 {
            return Err(Violation {
                path: format!("{path}.tail[{}]", i + 1),
                reason: format!(
                    "degrees must strictly decrease, got {} then {}",
                    th.tail[i].0,
                    th.tail[i + 1].0
                ),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

/// Total comparison of two well-formed terms; rejects ill-formed input.
pub fn compare_g(a: &GTerm, b: &GTerm, base: &BaseOrder) -> Result<Ordering> {
    for (t, which) in [(a, "left"), (b, "right")] {
        if let Err(v) = validate(t, base) {
            return Err(Error::domain(format!("{which} term ill-formed at {v}")));
        }
    }
    Ok(cmp_unchecked(a, b))
}

/// Comparison assuming both terms are well-formed over the same carrier.
pub fn cmp_unchecked(a: &GTerm, b: &GTerm) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if lt_unchecked(a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Strict order assuming well-formed input. Exposed so exhaustive suites can
/// probe both directions of a pair independently.
pub fn lt_unchecked(a: &GTerm, b: &GTerm) -> bool {
    let fuel = a.size() + b.size();
    lt(view(a), view(b), fuel)
}

/// Borrowed view used during comparison so coefficients and summands can be
/// compared against whole terms without cloning.
#[derive(Clone, Copy, PartialEq)]
enum View<'a> {
    Zero,
    Const(Elem),
    Theta(&'a ThetaTerm),
    Sum(&'a [ThetaTerm]),
}

fn view(t: &GTerm) -> View<'_> {
    match t {
        GTerm::Zero => View::Zero,
        GTerm::Const(x) => View::Const(*x),
        GTerm::Theta(th) => View::Theta(th),
        GTerm::Sum(ss) => View::Sum(ss),
    }
}

fn view_eq(a: View<'_>, b: View<'_>) -> bool {
    match (a, b) {
        (View::Zero, View::Zero) => true,
        (View::Const(x), View::Const(y)) => x == y,
        (View::Theta(s), View::Theta(t)) => s == t,
        (View::Sum(s), View::Sum(t)) => s == t,
        _ => false,
    }
}

fn lt(a: View<'_>, b: View<'_>, fuel: usize) -> bool {
    assert!(fuel > 0, "comparison recursion exceeded the size bound");
    match (a, b) {
        // 0 is strictly below everything nonzero.
        (View::Zero, View::Zero) => false,
        (View::Zero, _) => true,
        (_, View::Zero) => false,
        // Constants embed X and form the bottom segment above 0.
        (View::Const(x), View::Const(y)) => x < y,
        (View::Const(_), _) => true,
        (_, View::Const(_)) => false,
        // Sums: lexicographic, strict prefix smaller.
        (View::Sum(aa), View::Sum(bb)) => {
            for (s, t) in aa.iter().zip(bb.iter()) {
                if s != t {
                    return lt_theta(s, t, fuel - 1);
                }
            }
            aa.len() < bb.len()
        }
        // A sum is below a collapsed term iff every summand is.
        (View::Sum(aa), View::Theta(bt)) => aa
            .iter()
            .all(|s| lt(View::Theta(s), View::Theta(bt), fuel - 1)),
        // A collapsed term is below a sum iff it is ≤ the first summand.
        (View::Theta(at), View::Sum(bb)) => at == &bb[0] || lt_theta(at, &bb[0], fuel - 1),
        (View::Theta(at), View::Theta(bt)) => lt_theta(at, bt, fuel),
    }
}

fn lt_theta(a: &ThetaTerm, b: &ThetaTerm, fuel: usize) -> bool {
    assert!(fuel > 0, "comparison recursion exceeded the size bound");
    // a ≤ some tail coefficient of b lifts a strictly below b.
    if b.tail.iter().any(|(_, c)| {
        let cv = view(c);
        view_eq(View::Theta(a), cv) || lt(View::Theta(a), cv, fuel - 1)
    }) {
        return true;
    }
    // Otherwise a is below b exactly when a's collapse argument is smaller
    // and every tail coefficient of a stays below the whole of b. Dropping
    // the second conjunct on the equal-head equal-degree path breaks
    // trichotomy against the clause above: a low-degree coefficient of a
    // may dominate b even though the argument comparison favours a.
    arg_less(a, b, fuel)
        && a.tail
            .iter()
            .all(|(_, c)| lt(view(c), View::Theta(b), fuel - 1))
}

/// Compares the collapse arguments `W^w*c_x + Σ W^d*coeff` themselves:
/// heads first, then tails degreewise from the top, a missing degree
/// counting as a zero coefficient.
fn arg_less(a: &ThetaTerm, b: &ThetaTerm, fuel: usize) -> bool {
    match a.head.cmp(&b.head) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            let (mut i, mut j) = (0, 0);
            loop {
                let (ca, cb) = match (a.tail.get(i), b.tail.get(j)) {
                    (Some((da, ca)), Some((db, cb))) => match da.cmp(db) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                            (view(ca), view(cb))
                        }
                        Ordering::Greater => {
                            i += 1;
                            (view(ca), View::Zero)
                        }
                        Ordering::Less => {
                            j += 1;
                            (View::Zero, view(cb))
                        }
                    },
                    (Some((_, ca)), None) => {
                        i += 1;
                        (view(ca), View::Zero)
                    }
                    (None, Some((_, cb))) => {
                        j += 1;
                        (View::Zero, view(cb))
                    }
                    (None, None) => return false, // identical arguments
                };
                if !view_eq(ca, cb) {
                    return lt(ca, cb, fuel - 1);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All well-formed terms of size ≤ `max_size`, sorted ascending, without
/// duplicates. `budget`, when given, caps the number of generated terms and
/// turns overruns into an explicit error.
pub fn enumerate_terms(
    base: &BaseOrder,
    max_size: usize,
    budget: Option<usize>,
) -> Result<Vec<GTerm>> {
    if max_size < 1 {
        return Err(Error::domain("max_size must be at least 1"));
    }
    let cap = budget.unwrap_or(usize::MAX);
    // exact_size[s] holds the terms of size exactly s (index 0 unused).
    let mut exact: Vec<Vec<GTerm>> = vec![Vec::new(); max_size + 1];
    let mut total = 0usize;
    let push = |bucket: &mut Vec<GTerm>, t: GTerm, total: &mut usize| -> Result<()> {
        *total += 1;
        if *total > cap {
            return Err(Error::budget(format!(
                "term enumeration exceeded budget of {cap}"
            )));
        }
        bucket.push(t);
        Ok(())
    };

    {
        let bucket = &mut exact[1];
        push(bucket, GTerm::Zero, &mut total)?;
        for x in 0..base.len() {
            push(bucket, GTerm::Const(x), &mut total)?;
        }
    }
    if max_size >= 2 {
        let mut bucket = Vec::new();
        for x in 0..base.len() {
            push(&mut bucket, GTerm::theta(x, Vec::new()), &mut total)?;
        }
        exact[2] = bucket;
    }

    for s in 3..=max_size {
        let mut bucket = Vec::new();

        // Collapsed terms whose tail costs exactly s - 2.
        let nonzero: Vec<&GTerm> = exact[1..s]
            .iter()
            .flatten()
            .filter(|t| **t != GTerm::Zero)
            .collect();
        let mut tails: Vec<Vec<(u32, GTerm)>> = Vec::new();
        collect_tails(&nonzero, s - 2, None, &mut Vec::new(), &mut tails);
        for tail in tails {
            for x in 0..base.len() {
                push(&mut bucket, GTerm::theta(x, tail.clone()), &mut total)?;
            }
        }

        // Sums: at least two collapsed summands, non-increasing, sizes
        // totalling exactly s.
        let mut pool: Vec<&ThetaTerm> = exact[1..s]
            .iter()
            .flatten()
            .filter_map(|t| match t {
                GTerm::Theta(th) => Some(th),
                _ => None,
            })
            .collect();
        pool.sort_by(|p, q| {
            cmp_unchecked(&GTerm::Theta((*q).clone()), &GTerm::Theta((*p).clone()))
        });
        let mut sums: Vec<Vec<ThetaTerm>> = Vec::new();
        collect_sums(&pool, 0, s, &mut Vec::new(), &mut sums);
        for ss in sums {
            push(&mut bucket, GTerm::Sum(ss), &mut total)?;
        }

        exact[s] = bucket;
    }

    let mut all: Vec<GTerm> = exact.into_iter().flatten().collect();
    all.sort_by(cmp_unchecked);
    debug_assert!(all.windows(2).all(|w| w[0] != w[1]));
    Ok(all)
}

/// Tails of total cost exactly `budget`, entries in strictly decreasing
/// degree order, each entry costing `1 + degree + size(coefficient)`.
/// `degree_bound` is the exclusive upper bound left by the previous entry.
fn collect_tails(
    nonzero: &[&GTerm],
    budget: usize,
    degree_bound: Option<u32>,
    stack: &mut Vec<(u32, GTerm)>,
    out: &mut Vec<Vec<(u32, GTerm)>>,
) {
    if budget == 0 {
        if !stack.is_empty() {
            out.push(stack.clone());
        }
        return;
    }
    if budget < 2 {
        return;
    }
    // Entry cost 1 + d + |c| with |c| ≥ 1 forces d ≤ budget - 2.
    let mut max_d = (budget - 2) as u32;
    match degree_bound {
        Some(0) => return,
        Some(bound) => max_d = max_d.min(bound - 1),
        None => {}
    }
    for d in (0..=max_d).rev() {
        for c in nonzero {
            let cost = 1 + d as usize + c.size();
            if cost > budget {
                continue;
            }
            stack.push((d, (*c).clone()));
            collect_tails(nonzero, budget - cost, Some(d), stack, out);
            stack.pop();
        }
    }
}

/// Non-increasing summand sequences of length ≥ 2 with sizes summing to
/// exactly `budget`, drawn from a pool sorted descending.
fn collect_sums(
    pool: &[&ThetaTerm],
    from: usize,
    budget: usize,
    stack: &mut Vec<ThetaTerm>,
    out: &mut Vec<Vec<ThetaTerm>>,
) {
    if budget == 0 {
        if stack.len() >= 2 {
            out.push(stack.clone());
        }
        return;
    }
    for i in from..pool.len() {
        let sz = pool[i].size();
        if sz > budget {
            continue;
        }
        stack.push(pool[i].clone());
        collect_sums(pool, i, budget - sz, stack, out);
        stack.pop();
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

/// Canonical rendering: `0`, `c(x)`, `th(W^w*c(x) + W^2*…)`, sums joined
/// with ` + `. Sum-valued coefficients are parenthesised.
pub fn render(t: &GTerm, base: &BaseOrder) -> String {
    let mut s = String::new();
    write_term(&mut s, t, base, false);
    s
}

fn write_term(out: &mut String, t: &GTerm, base: &BaseOrder, parenthesise_sum: bool) {
    match t {
        GTerm::Zero => out.push('0'),
        GTerm::Const(x) => {
            let _ = write!(out, "c({})", base.name(*x));
        }
        GTerm::Theta(th) => write_theta(out, th, base),
        GTerm::Sum(ss) => {
            if parenthesise_sum {
                out.push('(');
            }
            for (i, s) in ss.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                write_theta(out, s, base);
            }
            if parenthesise_sum {
                out.push(')');
            }
        }
    }
}

fn write_theta(out: &mut String, th: &ThetaTerm, base: &BaseOrder) {
    let _ = write!(out, "th(W^w*c({})", base.name(th.head));
    for (d, c) in &th.tail {
        let _ = write!(out, " + W^{d}*");
        write_term(out, c, base, true);
    }
    out.push(')');
}

/// Parses the grammar produced by [`render`]; whitespace between tokens is
/// insignificant. Grammar errors are parse errors; names outside the carrier
/// are domain errors. The result is not necessarily well-formed — use
/// [`validate`] to check formation rules.
pub fn parse_gterm(s: &str, base: &BaseOrder) -> Result<GTerm> {
    let mut p = GParser {
        src: s,
        bytes: s.as_bytes(),
        pos: 0,
        base,
    };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::parse(format!("trailing input at byte {}", p.pos)));
    }
    Ok(t)
}

struct GParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    base: &'a BaseOrder,
}

impl GParser<'_> {
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

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::parse(format!(
                "expected {token:?} at byte {}",
                self.pos
            )))
        }
    }

    fn try_token(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<GTerm> {
        if self.try_token("0") {
            return Ok(GTerm::Zero);
        }
        if self.peek() == Some(b'c') {
            return self.constant();
        }
        // One or more collapsed terms joined by `+`.
        let mut summands = vec![self.theta()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.try_token("+") {
                self.skip_ws();
                summands.push(self.theta()?);
            } else {
                self.pos = save;
                break;
            }
        }
        if summands.len() == 1 {
            Ok(GTerm::Theta(summands.pop().expect("one summand")))
        } else {
            Ok(GTerm::Sum(summands))
        }
    }

    fn constant(&mut self) -> Result<GTerm> {
        self.expect("c(")?;
        let name = self.word()?;
        self.expect(")")?;
        let x = self
            .base
            .index_of(&name)
            .ok_or_else(|| Error::domain(format!("unknown element {name:?}")))?;
        Ok(GTerm::Const(x))
    }

    fn theta(&mut self) -> Result<ThetaTerm> {
        self.expect("th(")?;
        self.skip_ws();
        self.expect("W^w*c(")?;
        let name = self.word()?;
        self.expect(")")?;
        let head = self
            .base
            .index_of(&name)
            .ok_or_else(|| Error::domain(format!("unknown element {name:?}")))?;
        let mut tail = Vec::new();
        loop {
            let save = self.pos;
            self.skip_ws();
            if !self.try_token("+") {
                self.pos = save;
                break;
            }
            self.skip_ws();
            self.expect("W^")?;
            let d = self.degree()?;
            self.expect("*")?;
            let coeff = if self.try_token("(") {
                self.skip_ws();
                let inner = self.term()?;
                self.skip_ws();
                self.expect(")")?;
                inner
            } else {
                // An unparenthesised coefficient is a single atom; a `+`
                // after it belongs to the enclosing tail.
                if self.try_token("0") {
                    GTerm::Zero
                } else if self.peek() == Some(b'c') {
                    self.constant()?
                } else {
                    GTerm::Theta(self.theta()?)
                }
            };
            tail.push((d, coeff));
        }
        self.skip_ws();
        self.expect(")")?;
        Ok(ThetaTerm { head, tail })
    }

    fn word(&mut self) -> Result<String> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(format!("expected name at byte {start}")));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn degree(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(format!("expected degree at byte {start}")));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|e| Error::parse(format!("degree out of range: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(head: Elem, tail: Vec<(u32, GTerm)>) -> ThetaTerm {
        ThetaTerm { head, tail }
    }

    #[test]
    fn formation_rules() {
        let x = BaseOrder::chain(2);
        assert!(well_formed(&GTerm::Zero, &x));
        assert!(well_formed(&GTerm::Const(1), &x));
        assert!(!well_formed(&GTerm::Const(2), &x));
        // Zero coefficient violates the formation rule.
        assert!(!well_formed(&GTerm::theta(0, vec![(0, GTerm::Zero)]), &x));
        // Increasing sum violates the ordering side condition.
        let small = th(0, vec![]);
        let big = th(1, vec![]);
        assert!(!well_formed(
            &GTerm::Sum(vec![small.clone(), big.clone()]),
            &x
        ));
        assert!(well_formed(&GTerm::Sum(vec![big, small]), &x));
        // Degrees must strictly decrease.
        let t = GTerm::theta(0, vec![(1, GTerm::Const(0)), (1, GTerm::Const(0))]);
        assert!(!well_formed(&t, &x));
        // One-summand sums are not canonical terms.
        assert!(!well_formed(&GTerm::Sum(vec![th(0, vec![])]), &x));
    }

    #[test]
    fn violation_paths() {
        let x = BaseOrder::chain(1);
        let bad = GTerm::theta(0, vec![(2, GTerm::theta(0, vec![(0, GTerm::Zero)]))]);
        let v = validate(&bad, &x).unwrap_err();
        assert_eq!(v.path, "term.tail[0].coeff.tail[0]");
    }

    #[test]
    fn comparison_base_cases() {
        let x = BaseOrder::chain(2);
        let c0 = GTerm::Const(0);
        let c1 = GTerm::Const(1);
        let t0 = GTerm::theta(0, vec![]);
        let t1 = GTerm::theta(1, vec![]);

        assert_eq!(compare_g(&GTerm::Zero, &c0, &x).unwrap(), Ordering::Less);
        assert_eq!(compare_g(&c0, &c1, &x).unwrap(), Ordering::Less);
        assert_eq!(compare_g(&t0, &t1, &x).unwrap(), Ordering::Less);
        // Constants are the bottom segment above zero.
        assert_eq!(compare_g(&c1, &t0, &x).unwrap(), Ordering::Less);
        // A sum of terms below th(W^w*c(x1)) stays below it.
        let s = GTerm::Sum(vec![th(0, vec![]), th(0, vec![])]);
        assert_eq!(compare_g(&s, &t1, &x).unwrap(), Ordering::Less);
        // ...but not below its own summand.
        assert_eq!(compare_g(&s, &t0, &x).unwrap(), Ordering::Greater);
        // A collapsed term is below any sum starting with it.
        assert_eq!(compare_g(&t0, &s, &x).unwrap(), Ordering::Less);
    }

    #[test]
    fn coefficient_dominance() {
        // If a is ≤ some coefficient of b, then a < b.
        let x = BaseOrder::chain(2);
        let t0 = GTerm::theta(0, vec![]);
        let with_coeff = GTerm::theta(0, vec![(0, t0.clone())]);
        assert_eq!(compare_g(&t0, &with_coeff, &x).unwrap(), Ordering::Less);
        // Higher top degree with dominated coefficients wins.
        let deg2 = GTerm::theta(0, vec![(2, GTerm::Const(0))]);
        let deg1 = GTerm::theta(0, vec![(1, GTerm::Const(1))]);
        assert_eq!(compare_g(&deg1, &deg2, &x).unwrap(), Ordering::Less);
        // Equal top degree: the highest differing degree decides.
        let a = GTerm::theta(0, vec![(2, GTerm::Const(0)), (0, GTerm::Const(1))]);
        let b = GTerm::theta(0, vec![(2, GTerm::Const(1))]);
        assert_eq!(compare_g(&a, &b, &x).unwrap(), Ordering::Less);
        // Missing degree counts as zero: tail at degree 0 beats no tail.
        let bare = GTerm::theta(0, vec![(2, GTerm::Const(0))]);
        let extra = GTerm::theta(0, vec![(2, GTerm::Const(0)), (0, GTerm::Const(0))]);
        assert_eq!(compare_g(&bare, &extra, &x).unwrap(), Ordering::Less);
    }

    #[test]
    fn gamma_omega_is_an_embedding() {
        let x = BaseOrder::chain(20);
        for a in 0..20 {
            assert!(lt_unchecked(
                &GTerm::Zero,
                &gamma_omega_term(a, &x).unwrap()
            ));
            for b in 0..20 {
                let ta = gamma_omega_term(a, &x).unwrap();
                let tb = gamma_omega_term(b, &x).unwrap();
                assert_eq!(a < b, lt_unchecked(&ta, &tb));
                assert_eq!(a < b, lt_unchecked(&GTerm::Const(a), &GTerm::Const(b)));
            }
        }
        assert!(gamma_omega_term(20, &x).is_err());
    }

    #[test]
    fn enumerate_small_counts() {
        let one = BaseOrder::chain(1);
        let terms = enumerate_terms(&one, 2, None).unwrap();
        assert_eq!(
            terms,
            vec![GTerm::Zero, GTerm::Const(0), GTerm::theta(0, vec![])]
        );

        let two = BaseOrder::chain(2);
        // Size 1 admits only zero and constants.
        assert_eq!(
            enumerate_terms(&two, 1, None).unwrap(),
            vec![GTerm::Zero, GTerm::Const(0), GTerm::Const(1)]
        );
        assert_eq!(enumerate_terms(&two, 2, None).unwrap().len(), 5);
    }

    #[test]
    fn empty_carrier() {
        let x = BaseOrder::chain(0);
        assert_eq!(enumerate_terms(&x, 5, None).unwrap(), vec![GTerm::Zero]);
        assert_eq!(
            compare_g(&GTerm::Zero, &GTerm::Zero, &x).unwrap(),
            Ordering::Equal
        );
        assert!(!well_formed(&GTerm::Const(0), &x));
    }

    #[test]
    fn enumerate_budget_error() {
        let x = BaseOrder::chain(2);
        assert!(matches!(
            enumerate_terms(&x, 6, Some(10)),
            Err(Error::Budget(_))
        ));
    }

    /// Brute-force generation over the raw constructor space, filtered by
    /// `well_formed`, must agree with the enumerator.
    #[test]
    fn enumerate_matches_shape_oracle() {
        let x = BaseOrder::chain(2);
        for max_size in 1..=4 {
            let mut expected: Vec<GTerm> = raw_terms(max_size, &x)
                .into_iter()
                .filter(|t| t.size() <= max_size && well_formed(t, &x))
                .collect();
            expected.sort_by(cmp_unchecked);
            expected.dedup();
            let got = enumerate_terms(&x, max_size, None).unwrap();
            assert_eq!(got, expected, "size {max_size}");
        }
    }

    /// Every structurally distinct term of size ≤ bound, well-formed or not.
    fn raw_terms(bound: usize, x: &BaseOrder) -> Vec<GTerm> {
        let mut out = vec![GTerm::Zero];
        for e in 0..x.len() {
            out.push(GTerm::Const(e));
        }
        for th in raw_thetas(bound, x) {
            out.push(GTerm::Theta(th));
        }
        // Sums: arbitrary sequences of collapsed terms, length ≥ 2.
        let pool = raw_thetas(bound, x);
        let mut frontier: Vec<Vec<ThetaTerm>> = pool.iter().map(|t| vec![t.clone()]).collect();
        for _ in 0..bound {
            let mut next = Vec::new();
            for seq in &frontier {
                let used: usize = seq.iter().map(ThetaTerm::size).sum::<usize>();
                for t in &pool {
                    if used + t.size() <= bound {
                        let mut longer = seq.clone();
                        longer.push(t.clone());
                        next.push(longer);
                    }
                }
            }
            for seq in &next {
                if seq.len() >= 2 {
                    out.push(GTerm::Sum(seq.clone()));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out
    }

    fn raw_thetas(bound: usize, x: &BaseOrder) -> Vec<ThetaTerm> {
        let mut out = Vec::new();
        if bound == 0 {
            return out;
        }
        for head in 0..x.len() {
            out.push(th(head, vec![]));
        }
        if bound < 4 {
            out.retain(|t| t.size() <= bound);
            return out;
        }
        let coeffs = raw_terms(bound - 3, x);
        // Tails of up to two entries with arbitrary degree pairs.
        let max_d = (bound - 3) as u32;
        for head in 0..x.len() {
            for d1 in 0..=max_d {
                for c1 in &coeffs {
                    let one = vec![(d1, c1.clone())];
                    out.push(th(head, one.clone()));
                    for d2 in 0..=max_d {
                        for c2 in &coeffs {
                            let mut two = one.clone();
                            two.push((d2, c2.clone()));
                            out.push(th(head, two));
                        }
                    }
                }
            }
        }
        out.retain(|t| t.size() <= bound);
        out
    }

    /// Whenever a term is ≤ some tail coefficient of a collapsed term, it
    /// is strictly below the whole term.
    #[test]
    fn coefficient_domination_is_consistent() {
        let x = BaseOrder::chain(2);
        let universe = enumerate_terms(&x, 5, None).unwrap();
        for a in &universe {
            for b in &universe {
                let GTerm::Theta(bt) = b else { continue };
                let dominated = bt.tail.iter().any(|(_, c)| a == c || lt_unchecked(a, c));
                if dominated {
                    assert!(lt_unchecked(a, b), "{} vs {}", render(a, &x), render(b, &x));
                }
            }
        }
    }

    #[test]
    fn round_trip_rendering() {
        let x = BaseOrder::new(vec!["a".into(), "b".into()]).unwrap();
        for t in enumerate_terms(&x, 5, None).unwrap() {
            let s = render(&t, &x);
            let back = parse_gterm(&s, &x).unwrap();
            assert_eq!(back, t, "{s}");
            assert_eq!(render(&back, &x), s);
        }
    }

    #[test]
    fn parse_examples() {
        let x = BaseOrder::new(vec!["a".into(), "b".into()]).unwrap();
        let t = parse_gterm("th(W^w*c(a) + W^2*th(W^w*c(b)) + W^0*c(a))", &x).unwrap();
        assert!(well_formed(&t, &x));
        let s = parse_gterm("th(W^w*c(b)) + th(W^w*c(a))", &x).unwrap();
        assert!(matches!(s, GTerm::Sum(ref v) if v.len() == 2));
        assert!(well_formed(&s, &x));
        // Sum coefficient must be parenthesised to nest.
        let nested = parse_gterm("th(W^w*c(a) + W^1*(th(W^w*c(a)) + th(W^w*c(a))))", &x).unwrap();
        assert!(well_formed(&nested, &x));
        assert!(parse_gterm("th(W^w*c(zz))", &x).is_err());
        assert!(parse_gterm("c(a) + c(b)", &x).is_err());
    }
}
