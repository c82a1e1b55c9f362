//! Exhaustive and randomized property suites over every structure in the
//! crate, with explicit work budgets and machine-readable reports.
//!
//! Each suite is deterministic for a fixed budget: iteration orders are
//! fixed, randomized suites draw from seeded generators, and reports carry
//! no timing data. A suite that would exceed its budget fails loudly with a
//! budget error instead of truncating silently.

use std::cmp::Ordering;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cnf::{enumerate_cnf, omega_tower, random_cnf, OrdinalCnf};
use crate::error::{Error, Result};
use crate::qo::{
    all_quasi_orders, good_pair, kb_cmp, kb_linearize, longest_bad, BadSeqTree, FiniteQO, FoldMode,
};
use crate::ramsey::{colour_bad_product_seq, pigeonhole_order};
use crate::theta::{enumerate_terms, lt_unchecked, render, BaseOrder, GTerm};
use crate::tree::{embeds, embeds_oracle, enumerate_trees, parse_tree};
use crate::wop::{approx_index, gamma_plus, gamma_times};

/// Names of all suites, in report order.
pub const SUITES: &[&str] = &[
    "g-trichotomy",
    "order-embedding",
    "additive-principality",
    "embed-oracle",
    "extension-chain",
    "longest-bad",
    "rt2-shadow",
    "four-equiv",
    "cnf-arith",
    "kb-linearize",
    "round-trip",
];

/// Default work budget per suite; comfortably above what any suite needs.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const MAX_REPORTED_VIOLATIONS: usize = 20;

/// Outcome of one suite: cases exercised and the violations found.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub violations: Vec<String>,
}

/// Work-unit accounting shared by all checks in a suite.
struct Bench {
    name: &'static str,
    cases: u64,
    used: u64,
    cap: u64,
    violations: Vec<String>,
    suppressed: u64,
}

impl Bench {
    fn new(name: &'static str, cap: u64) -> Self {
        Bench {
            name,
            cases: 0,
            used: 0,
            cap,
            violations: Vec::new(),
            suppressed: 0,
        }
    }

    fn spend(&mut self, units: u64) -> Result<()> {
        self.used += units;
        if self.used > self.cap {
            return Err(Error::budget(format!(
                "suite {} exceeded budget of {} work units",
                self.name, self.cap
            )));
        }
        Ok(())
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            if self.violations.len() < MAX_REPORTED_VIOLATIONS {
                self.violations.push(describe());
            } else {
                self.suppressed += 1;
            }
        }
    }

    fn finish(mut self) -> SuiteReport {
        if self.suppressed > 0 {
            self.violations
                .push(format!("... and {} more violations", self.suppressed));
        }
        SuiteReport {
            suite: self.name.to_string(),
            cases: self.cases,
            violations: self.violations,
        }
    }
}

/// Runs one suite by name under the given work budget.
pub fn run_suite(name: &str, budget: u64) -> Result<SuiteReport> {
    match name {
        "g-trichotomy" => g_trichotomy(budget),
        "order-embedding" => order_embedding(budget),
        "additive-principality" => additive_principality(budget),
        "embed-oracle" => embed_oracle(budget),
        "extension-chain" => extension_chain(budget),
        "longest-bad" => longest_bad_suite(budget),
        "rt2-shadow" => rt2_shadow(budget),
        "four-equiv" => four_equiv(budget),
        "cnf-arith" => cnf_arith(budget),
        "kb-linearize" => kb_linearize_suite(budget),
        "round-trip" => round_trip(budget),
        _ => Err(Error::domain(format!(
            "unknown suite {name:?}; known: {}",
            SUITES.join(", ")
        ))),
    }
}

/// Runs every suite in order, each under its own copy of the budget.
pub fn run_all(budget: u64) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|n| run_suite(n, budget)).collect()
}

// ---------------------------------------------------------------------------
// 1. Trichotomy and transitivity of the collapsed term order.
// ---------------------------------------------------------------------------

fn g_trichotomy(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("g-trichotomy", budget);
    let base = BaseOrder::chain(3);
    let u7 = enumerate_terms(&base, 7, Some(budget as usize))?;
    b.spend(u7.len() as u64)?;

    for t in &u7 {
        b.spend(1)?;
        b.case(!lt_unchecked(t, t), || {
            format!("irreflexivity: {} < itself", render(t, &base))
        });
    }
    for i in 0..u7.len() {
        for j in i + 1..u7.len() {
            b.spend(2)?;
            let ab = lt_unchecked(&u7[i], &u7[j]);
            let ba = lt_unchecked(&u7[j], &u7[i]);
            b.case(ab != ba, || {
                format!(
                    "trichotomy: {} vs {} related {} ways",
                    render(&u7[i], &base),
                    render(&u7[j], &base),
                    if ab { 2 } else { 0 }
                )
            });
        }
    }

    // Transitivity over the size ≤ 5 subuniverse, via the precomputed
    // strict-order matrix.
    let u5: Vec<&GTerm> = u7.iter().filter(|t| t.size() <= 5).collect();
    let m = u5.len();
    let mut less = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                b.spend(1)?;
                less[i * m + j] = lt_unchecked(u5[i], u5[j]);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            if !less[i * m + j] {
                continue;
            }
            for k in 0..m {
                b.spend(1)?;
                if less[j * m + k] {
                    b.case(less[i * m + k], || {
                        format!(
                            "transitivity: {} < {} < {} but not {} < {}",
                            render(u5[i], &base),
                            render(u5[j], &base),
                            render(u5[k], &base),
                            render(u5[i], &base),
                            render(u5[k], &base)
                        )
                    });
                }
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 2. The base order embeds as constants and as collapsed terms.
// ---------------------------------------------------------------------------

fn order_embedding(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("order-embedding", budget);
    // Carrier elements compare by index, so chains are exercised by index
    // ranges directly.
    for n in 1..=20 {
        for x in 0..n {
            let tx = GTerm::theta(x, Vec::new());
            b.spend(1)?;
            b.case(lt_unchecked(&GTerm::Zero, &tx), || {
                format!("zero not below th(W^w*c(x{x})) in a {n}-chain")
            });
            for y in 0..n {
                b.spend(2)?;
                let ty = GTerm::theta(y, Vec::new());
                let want = x < y;
                b.case(
                    lt_unchecked(&GTerm::Const(x), &GTerm::Const(y)) == want,
                    || format!("constants at ({x},{y}) disagree with the {n}-chain"),
                );
                b.case(lt_unchecked(&tx, &ty) == want, || {
                    format!("collapsed terms at ({x},{y}) disagree with the {n}-chain")
                });
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 3. Sums of two dominated collapsed terms stay dominated.
// ---------------------------------------------------------------------------

fn additive_principality(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("additive-principality", budget);
    let base = BaseOrder::chain(3);
    let u6 = enumerate_terms(&base, 6, Some(budget as usize))?;
    b.spend(u6.len() as u64)?;
    let thetas: Vec<&GTerm> = u6.iter().filter(|t| matches!(t, GTerm::Theta(_))).collect();

    for &tau in &thetas {
        let below: Vec<&GTerm> = thetas
            .iter()
            .copied()
            .filter(|t| lt_unchecked(t, tau))
            .collect();
        for (ai, &a) in below.iter().enumerate() {
            for &bb in &below[ai..] {
                // Enumeration is ascending, so a ≤ bb here; the sum in
                // non-increasing order is [bb, a].
                let (hi, lo) = match (bb, a) {
                    (GTerm::Theta(h), GTerm::Theta(l)) => (h.clone(), l.clone()),
                    _ => unreachable!("filtered to collapsed terms"),
                };
                let sum = GTerm::Sum(vec![hi, lo]);
                b.spend(1)?;
                b.case(lt_unchecked(&sum, tau), || {
                    format!(
                        "sum {} not below {}",
                        render(&sum, &base),
                        render(tau, &base)
                    )
                });
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 4. Greedy embedding agrees with the brute-force reference; the relation
//    is a quasi-order.
// ---------------------------------------------------------------------------

fn embed_oracle(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("embed-oracle", budget);
    let orders = [
        ("singleton", FiniteQO::singleton()),
        ("2-chain", FiniteQO::chain(2)),
        ("2-antichain", FiniteQO::antichain(2)),
    ];
    for (qname, q) in &orders {
        let trees = enumerate_trees(q, 5, None, Some(budget as usize))?;
        let n = trees.len();
        b.spend(n as u64)?;
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                b.spend(2)?;
                let fast = embeds(&trees[i], &trees[j], q)?;
                let slow = embeds_oracle(&trees[i], &trees[j], q)?;
                rel[i * n + j] = fast;
                b.case(fast == slow, || {
                    format!(
                        "{qname}: greedy={fast} oracle={slow} for {} into {}",
                        trees[i], trees[j]
                    )
                });
                if fast {
                    b.case(
                        trees[i].node_count() <= trees[j].node_count()
                            && trees[i].degree() <= trees[j].degree(),
                        || {
                            format!(
                                "{qname}: embedding {} into {} shrinks nodes or degree",
                                trees[i], trees[j]
                            )
                        },
                    );
                }
            }
        }
        for i in 0..n {
            b.spend(1)?;
            b.case(rel[i * n + i], || {
                format!("{qname}: {} does not embed into itself", trees[i])
            });
        }
        for i in 0..n {
            for j in 0..n {
                if !rel[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    b.spend(1)?;
                    if rel[j * n + k] {
                        b.case(rel[i * n + k], || {
                            format!(
                                "{qname}: transitivity fails on {}, {}, {}",
                                trees[i], trees[j], trees[k]
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 5. The disjoint relation refines the product relation refines the sum
//    relation on n-fold carriers; the sum relation linearizes total orders.
// ---------------------------------------------------------------------------

fn extension_chain(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("extension-chain", budget);
    for size in 1..=4 {
        for q in all_quasi_orders(size) {
            for n in 1..=4 {
                let d = q.n_fold(n, FoldMode::Dunion)?;
                let t = q.n_fold(n, FoldMode::Times)?;
                let p = q.n_fold(n, FoldMode::Plus)?;
                let total = d.len();
                for a in 0..total {
                    for c in 0..total {
                        b.spend(1)?;
                        b.case(!d.le(a, c) || t.le(a, c), || {
                            format!(
                                "|Q|={size} n={n}: {} ≤ {} under dunion but not times",
                                d.name(a),
                                d.name(c)
                            )
                        });
                        b.case(!t.le(a, c) || p.le(a, c), || {
                            format!(
                                "|Q|={size} n={n}: {} ≤ {} under times but not plus",
                                t.name(a),
                                t.name(c)
                            )
                        });
                    }
                }
                if q.is_total() {
                    b.spend(1)?;
                    b.case(p.is_total(), || {
                        format!("|Q|={size} n={n}: plus relation not total over a total order")
                    });
                }
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 6. Longest bad sequence length equals the number of equivalence classes.
// ---------------------------------------------------------------------------

fn longest_bad_suite(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("longest-bad", budget);
    for size in 1..=4 {
        for q in all_quasi_orders(size) {
            b.spend(32)?;
            let (len, witness) = longest_bad(&q, Some(budget as usize))?;
            b.case(len == q.class_count(), || {
                format!(
                    "|Q|={size}: longest bad {len} != {} classes in {:?}",
                    q.class_count(),
                    q.relation_pairs()
                )
            });
            b.case(
                good_pair(&witness, &q).unwrap_or(Some((0, 0))).is_none(),
                || format!("|Q|={size}: witness {witness:?} is not bad"),
            );
        }
    }
    let p = FiniteQO::chain(2).product(&FiniteQO::chain(2));
    let (len, witness) = longest_bad(&p, Some(budget as usize))?;
    b.spend(16)?;
    b.case(len == 4, || {
        format!("product of 2-chains: longest bad is {len}, expected 4")
    });
    b.case(
        good_pair(&witness, &p).unwrap_or(Some((0, 0))).is_none(),
        || format!("product of 2-chains: witness {witness:?} is not bad"),
    );
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 7. Colourings of bad product sequences are total, and homogeneous index
//    sets project to bad subsequences at their colour.
// ---------------------------------------------------------------------------

/// Maximal bad sequences in `q`, truncated at `depth_cap`, at most
/// `max_count` of them, in DFS order over extensions by carrier index.
fn bounded_maximal_bad(q: &FiniteQO, depth_cap: usize, max_count: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        if out.len() >= max_count {
            break;
        }
        let exts: Vec<usize> = (0..q.len())
            .filter(|&e| seq.iter().all(|&p| !q.le(p, e)))
            .collect();
        if seq.len() >= depth_cap || exts.is_empty() {
            if !seq.is_empty() {
                out.push(seq);
            }
            continue;
        }
        for &e in exts.iter().rev() {
            let mut ext = seq.clone();
            ext.push(e);
            stack.push(ext);
        }
    }
    out
}

fn rt2_shadow(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("rt2-shadow", budget);
    for size in 1..=3 {
        for q in all_quasi_orders(size) {
            for n in 1..=3usize {
                let p = q.power(n)?;
                let seqs = bounded_maximal_bad(&p, 10, 50);
                b.spend(seqs.len() as u64)?;
                for seq in seqs {
                    // Decompose the power carrier index into components.
                    let tuples: Vec<Vec<usize>> = seq
                        .iter()
                        .map(|&e| {
                            let mut rest = e;
                            let mut comp = vec![0usize; n];
                            for k in (0..n).rev() {
                                comp[k] = rest % q.len();
                                rest /= q.len();
                            }
                            comp
                        })
                        .collect();
                    b.spend((seq.len() * seq.len()) as u64 + 1)?;
                    let colouring = match colour_bad_product_seq(&tuples, &q, n) {
                        Ok(c) => c,
                        Err(e) => {
                            b.case(false, || {
                                format!("|Q|={size} n={n}: colouring not total: {e}")
                            });
                            continue;
                        }
                    };
                    b.case(true, String::new);
                    // Every homogeneous subset projects to a bad
                    // subsequence at its colour.
                    let len = seq.len();
                    for mask in 1u32..(1 << len) {
                        if (mask.count_ones() as usize) < 2 {
                            continue;
                        }
                        b.spend(1)?;
                        let subset: Vec<usize> =
                            (0..len).filter(|&i| mask & (1 << i) != 0).collect();
                        let k = colouring.colour(subset[0], subset[1]);
                        let mono = subset.iter().enumerate().all(|(ai, &a)| {
                            subset[ai + 1..]
                                .iter()
                                .all(|&c| colouring.colour(a, c) == k)
                        });
                        if !mono {
                            continue;
                        }
                        let projected: Vec<usize> = subset.iter().map(|&i| tuples[i][k]).collect();
                        b.spend((projected.len() * projected.len()) as u64)?;
                        b.case(good_pair(&projected, &q)?.is_none(), || {
                            format!(
                                "|Q|={size} n={n}: colour-{k} subset {subset:?} of {tuples:?} \
                                 projects to a good sequence"
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 8. The prefix-built order is a strict total order and its witness
//    sequence has no good pair under the product relation.
// ---------------------------------------------------------------------------

fn four_equiv(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("four-equiv", budget);
    let mut rng = StdRng::seed_from_u64(0x4e9);
    for round in 0..200 {
        let len = rng.gen_range(0..=50);
        let m = rng.gen_range(1..=5);
        let prefix: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m)).collect();
        let order = pigeonhole_order(&prefix, m)?;

        for i in 0..len {
            b.spend(1)?;
            b.case(!order.less(i, i), || {
                format!("round {round}: order reflexive at {i}")
            });
            for j in 0..len {
                if i == j {
                    continue;
                }
                b.spend(1)?;
                b.case(order.less(i, j) != order.less(j, i), || {
                    format!("round {round}: order not total/antisymmetric at ({i},{j})")
                });
                for k in 0..len {
                    b.spend(1)?;
                    if order.less(i, j) && order.less(j, k) {
                        b.case(order.less(i, k), || {
                            format!("round {round}: order not transitive at ({i},{j},{k})")
                        });
                    }
                }
            }
        }
        let witness = order.witness();
        for i in 0..witness.len() {
            for j in i + 1..witness.len() {
                b.spend(1)?;
                b.case(!order.witness_le(witness[i], witness[j]), || {
                    format!("round {round}: witness has good pair ({i},{j}) in prefix {prefix:?}")
                });
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 9. Arithmetic laws on notations, randomized, plus the power sandwich and
//    the strictly increasing tower.
// ---------------------------------------------------------------------------

fn cnf_arith(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("cnf-arith", budget);
    let mut rng = StdRng::seed_from_u64(0xc4f);
    for _ in 0..10_000 {
        let a = random_cnf(&mut rng, 3, 3, 5);
        let c = random_cnf(&mut rng, 3, 3, 5);
        let d = random_cnf(&mut rng, 3, 3, 5);
        b.spend(8)?;
        b.case(a.nat_sum(&c) == c.nat_sum(&a), || {
            format!("nat_sum not commutative on {a}, {c}")
        });
        b.case(a.nat_prod(&c) == c.nat_prod(&a), || {
            format!("nat_prod not commutative on {a}, {c}")
        });
        b.case(
            a.nat_sum(&c).nat_sum(&d) == a.nat_sum(&c.nat_sum(&d)),
            || format!("nat_sum not associative on {a}, {c}, {d}"),
        );
        b.case(
            a.nat_prod(&c).nat_prod(&d) == a.nat_prod(&c.nat_prod(&d)),
            || format!("nat_prod not associative on {a}, {c}, {d}"),
        );
        b.case(
            a.nat_prod(&c.nat_sum(&d)) == a.nat_prod(&c).nat_sum(&a.nat_prod(&d)),
            || format!("nat_prod does not distribute over nat_sum on {a}, {c}, {d}"),
        );
        b.case(a.add(&c) <= a.nat_sum(&c), || {
            format!("ordinal sum exceeds natural sum on {a}, {c}")
        });
    }

    // Sandwich property of the approximation index.
    let mut checked = 0u32;
    while checked < 10_000 {
        b.spend(4)?;
        let a = random_cnf(&mut rng, 2, 2, 4);
        if a < OrdinalCnf::finite(2u32) {
            continue;
        }
        let bv = if rng.gen_bool(0.5) {
            random_cnf(&mut rng, 2, 2, 6)
        } else {
            OrdinalCnf::finite(rng.gen_range(0u32..60))
        };
        let Ok(k) = approx_index(&bv, &a) else {
            continue;
        };
        checked += 1;
        b.case(bv < a.pow_n(k), || {
            format!("approx index {k} of {bv} under {a}: not below a^{k}")
        });
        if k > 0 {
            b.case(a.pow_n(k - 1) <= bv, || {
                format!("approx index {k} of {bv} under {a}: a^{} above it", k - 1)
            });
        }
        // gamma_plus is the product with ω; gamma_times dominates powers.
        b.case(gamma_plus(&a) == a.mul(&OrdinalCnf::omega()), || {
            format!("gamma_plus disagrees with product on {a}")
        });
        b.case(a.pow_n(3) < gamma_times(&a), || {
            format!("gamma_times does not dominate {a}^3")
        });
    }

    let mut prev = omega_tower(1)?;
    for n in 2..=6 {
        b.spend(1)?;
        let cur = omega_tower(n)?;
        b.case(prev < cur, || format!("tower not increasing at height {n}"));
        prev = cur;
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 10. Kleene–Brouwer linearization is a strict total order listing children
//     before parents.
// ---------------------------------------------------------------------------

fn kb_linearize_suite(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("kb-linearize", budget);
    for size in 1..=4 {
        for q in all_quasi_orders(size) {
            let tree = BadSeqTree::build(&q, Some(budget as usize))?;
            let kb = kb_linearize(&tree);
            b.spend(tree.len() as u64)?;
            b.case(kb.len() == tree.len(), || {
                format!(
                    "|Q|={size}: linearization covers {} of {} nodes",
                    kb.len(),
                    tree.len()
                )
            });
            let mut seen = vec![false; tree.len()];
            for &id in &kb {
                seen[id] = true;
            }
            b.case(seen.iter().all(|&s| s), || {
                format!("|Q|={size}: linearization skips nodes")
            });
            // Strict total order consistent with list positions implies
            // irreflexivity, antisymmetry, and transitivity at once.
            for i in 0..kb.len() {
                for j in i + 1..kb.len() {
                    b.spend(2)?;
                    let fwd = kb_cmp(tree.node(kb[i]), tree.node(kb[j]));
                    let bwd = kb_cmp(tree.node(kb[j]), tree.node(kb[i]));
                    b.case(fwd == Ordering::Less && bwd == Ordering::Greater, || {
                        format!(
                            "|Q|={size}: positions {i},{j} compare {fwd:?}/{bwd:?} in {:?} vs {:?}",
                            tree.node(kb[i]),
                            tree.node(kb[j])
                        )
                    });
                }
            }
            let mut position = vec![0usize; tree.len()];
            for (pos, &id) in kb.iter().enumerate() {
                position[id] = pos;
            }
            for child in 1..tree.len() {
                b.spend(1)?;
                let parent = tree.parent(child).expect("non-root");
                b.case(position[child] < position[parent], || {
                    format!(
                        "|Q|={size}: child {:?} listed after parent {:?}",
                        tree.node(child),
                        tree.node(parent)
                    )
                });
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// 11. Printers and parsers are mutually inverse, byte for byte.
// ---------------------------------------------------------------------------

fn round_trip(budget: u64) -> Result<SuiteReport> {
    let mut b = Bench::new("round-trip", budget);

    for v in enumerate_cnf(3, 3, 2) {
        b.spend(1)?;
        let text = v.to_string();
        let ok = text
            .parse::<OrdinalCnf>()
            .map(|back| back == v && back.to_string() == text)
            .unwrap_or(false);
        b.case(ok, || format!("ordinal round trip failed on {text}"));
    }

    let base = BaseOrder::chain(3);
    for t in enumerate_terms(&base, 6, Some(budget as usize))? {
        b.spend(1)?;
        let text = render(&t, &base);
        let ok = crate::theta::parse_gterm(&text, &base)
            .map(|back| back == t && render(&back, &base) == text)
            .unwrap_or(false);
        b.case(ok, || format!("term round trip failed on {text}"));
    }

    for q in [FiniteQO::singleton(), FiniteQO::antichain(2)] {
        for t in enumerate_trees(&q, 4, None, Some(budget as usize))? {
            b.spend(1)?;
            let text = t.to_string();
            let ok = parse_tree(&text)
                .map(|back| back == t && back.to_string() == text)
                .unwrap_or(false);
            b.case(ok, || format!("tree round trip failed on {text}"));
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_exhaustion_is_loud() {
        assert!(matches!(
            run_suite("g-trichotomy", 100),
            Err(Error::Budget(_))
        ));
        assert!(run_suite("no-such-suite", 1000).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("four-equiv", DEFAULT_BUDGET).unwrap();
        let b = run_suite("four-equiv", DEFAULT_BUDGET).unwrap();
        assert_eq!(a.cases, b.cases);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
