//! Opt-in deep checks beyond the default acceptance scale. Run with:
//! `cargo test -p wqo-core --test stress -- --ignored --nocapture`

use wqo_core::cnf::enumerate_cnf;
use wqo_core::qo::{all_quasi_orders, FiniteQO};
use wqo_core::theta::{enumerate_terms, lt_unchecked, BaseOrder};
use wqo_core::tree::{embeds, embeds_oracle, enumerate_trees};

/// Bit-matrix transitivity: reach(j) ⊆ reach(i) whenever i < j.
fn assert_strict_total_order(less: &[Vec<u64>], n: usize, what: &str) {
    for i in 0..n {
        assert_eq!(
            less[i][i / 64] & (1 << (i % 64)),
            0,
            "{what}: reflexive at {i}"
        );
        for j in 0..n {
            if i != j {
                let ij = less[i][j / 64] & (1 << (j % 64)) != 0;
                let ji = less[j][i / 64] & (1 << (i % 64)) != 0;
                assert!(ij != ji, "{what}: pair ({i},{j}) not exactly one way");
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if less[i][j / 64] & (1 << (j % 64)) != 0 {
                let escape = less[j]
                    .iter()
                    .zip(&less[i])
                    .any(|(reach_j, reach_i)| reach_j & !reach_i != 0);
                assert!(!escape, "{what}: transitivity breaks from {i} via {j}");
            }
        }
    }
}

#[test]
#[ignore = "several-minute exhaustive sweep"]
fn term_order_laws_at_depth() {
    for (carrier, max_size) in [(1usize, 10usize), (2, 9), (3, 8), (4, 7)] {
        let base = BaseOrder::chain(carrier);
        let universe = enumerate_terms(&base, max_size, None).unwrap();
        let n = universe.len();
        let words = n.div_ceil(64);
        let mut less = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && lt_unchecked(&universe[i], &universe[j]) {
                    less[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        assert_strict_total_order(&less, n, &format!("{carrier}-chain size {max_size}"));
        println!("{carrier}-chain, size ≤ {max_size}: {n} terms, order laws hold");
    }
}

#[test]
#[ignore = "several-minute exhaustive sweep"]
fn ordinal_comparison_at_depth() {
    // Enumeration sorts ascending, so position consistency over every pair
    // gives trichotomy and transitivity in one pass.
    let all = enumerate_cnf(3, 3, 2);
    let n = all.len();
    for (i, a) in all.iter().enumerate() {
        assert!(a.cmp(a).is_eq());
        for b in &all[i + 1..] {
            assert!(a < b, "{a} vs {b}");
            assert!(b > a, "{b} vs {a}");
        }
    }
    println!("depth ≤ 3, coefficients ≤ 3: {n} ordinals, order laws hold");
}

#[test]
#[ignore = "several-minute exhaustive sweep"]
fn combinators_preserve_validity_at_depth() {
    let revalidate = |q: &FiniteQO| {
        let n = q.len();
        FiniteQO::new(
            q.names().to_vec(),
            (0..n * n).map(|i| q.le(i / n, i % n)).collect(),
        )
        .is_ok()
    };
    let catalogue: Vec<FiniteQO> = (1..=4).flat_map(all_quasi_orders).collect();
    for p in &catalogue {
        for q in &catalogue {
            assert!(revalidate(&p.product(q)));
            assert!(revalidate(&p.sum(q)));
            assert!(revalidate(&p.disjoint_union(q)));
        }
    }
    println!(
        "{} quasi-orders: all pairwise products, sums, disjoint unions valid",
        catalogue.len()
    );
}

#[test]
#[ignore = "several-minute exhaustive sweep"]
fn embedding_agreement_at_depth() {
    for (name, q, max_nodes) in [
        ("singleton", FiniteQO::singleton(), 7),
        ("2-chain", FiniteQO::chain(2), 6),
        ("2-antichain", FiniteQO::antichain(2), 6),
        (
            "3-mixed",
            FiniteQO::chain(2).disjoint_union(&FiniteQO::singleton()),
            5,
        ),
    ] {
        let trees = enumerate_trees(&q, max_nodes, None, None).unwrap();
        let mut agreements = 0u64;
        for a in &trees {
            for b in &trees {
                assert_eq!(
                    embeds(a, b, &q).unwrap(),
                    embeds_oracle(a, b, &q).unwrap(),
                    "{name}: {a} into {b}"
                );
                agreements += 1;
            }
        }
        println!(
            "{name}, ≤ {max_nodes} nodes: {} trees, {agreements} pairs agree",
            trees.len()
        );
    }
}
