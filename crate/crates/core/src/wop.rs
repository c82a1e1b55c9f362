//! Ordinal-function evaluators on notations: `gamma_plus` (right product
//! with ω), `gamma_times` (the ω-th power as the supremum of finite powers),
//! and the approximation index locating a value strictly under that
//! supremum between consecutive finite powers.

use crate::cnf::OrdinalCnf;
use crate::error::{Error, Result};

/// `a · ω`: zero stays zero, otherwise a single term one exponent above the
/// leading one.
pub fn gamma_plus(a: &OrdinalCnf) -> OrdinalCnf {
    match a.terms().first() {
        None => OrdinalCnf::zero(),
        Some((e1, _)) => e1.add(&OrdinalCnf::one()).omega_power(),
    }
}

/// `a^ω`: degenerate bases are fixed as 0^ω = 0, 1^ω = 1, n^ω = ω for
/// finite n ≥ 2; an infinite base with leading exponent e₁ gives ω^{e₁·ω}.
pub fn gamma_times(a: &OrdinalCnf) -> OrdinalCnf {
    if a.is_zero() {
        return OrdinalCnf::zero();
    }
    if a == &OrdinalCnf::one() {
        return OrdinalCnf::one();
    }
    if a.is_finite() {
        return OrdinalCnf::omega();
    }
    let (e1, _) = &a.terms()[0];
    e1.mul(&OrdinalCnf::omega()).omega_power()
}

/// Least `n` with `b < a^n`, defined for `a ≥ 2` and `b < a^ω`.
pub fn approx_index(b: &OrdinalCnf, a: &OrdinalCnf) -> Result<u32> {
    if a < &OrdinalCnf::finite(2u32) {
        return Err(Error::domain(format!("base {a} must be at least 2")));
    }
    let sup = gamma_times(a);
    if *b >= sup {
        return Err(Error::domain(format!(
            "{b} is not below the supremum {sup} of the finite powers"
        )));
    }
    let mut n = 0u32;
    let mut power = OrdinalCnf::one();
    while *b >= power {
        power = power.mul(a);
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::random_cnf;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn o(s: &str) -> OrdinalCnf {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_plus_examples() {
        assert_eq!(gamma_plus(&o("w")), o("w^2"));
        assert_eq!(gamma_plus(&o("w + 1")), o("w^2"));
        assert_eq!(gamma_plus(&o("0")), o("0"));
        assert_eq!(gamma_plus(&o("3")), o("w"));
    }

    #[test]
    fn gamma_times_examples() {
        assert_eq!(gamma_times(&o("w")), o("w^w"));
        assert_eq!(gamma_times(&o("w + 1")), o("w^w"));
        assert_eq!(gamma_times(&o("2")), o("w"));
        assert_eq!(gamma_times(&o("1")), o("1"));
        assert_eq!(gamma_times(&o("0")), o("0"));
        assert_eq!(gamma_times(&o("w^w*2 + 5")), o("w^w^2"));
    }

    #[test]
    fn approx_examples() {
        assert_eq!(approx_index(&o("w*3 + 5"), &o("w")).unwrap(), 2);
        assert_eq!(approx_index(&o("1"), &o("w")).unwrap(), 1);
        assert_eq!(approx_index(&o("0"), &o("w")).unwrap(), 0);
        assert!(approx_index(&o("w"), &o("1")).is_err());
        assert!(approx_index(&o("w^w"), &o("w")).is_err());
    }

    #[test]
    fn gamma_plus_agrees_with_product() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..2_000 {
            let a = random_cnf(&mut rng, 3, 3, 4);
            assert_eq!(gamma_plus(&a), a.mul(&OrdinalCnf::omega()), "{a}");
        }
    }

    #[test]
    fn gamma_times_bounds_all_finite_powers() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..500 {
            let a = random_cnf(&mut rng, 2, 2, 3);
            if a <= OrdinalCnf::one() {
                continue;
            }
            let sup = gamma_times(&a);
            for n in 0..=5 {
                assert!(a.pow_n(n) < sup, "{a}^{n} vs {sup}");
            }
        }
    }

    #[test]
    fn monotonicity() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..2_000 {
            let a = random_cnf(&mut rng, 3, 3, 4);
            let b = random_cnf(&mut rng, 3, 3, 4);
            if a <= b {
                assert!(gamma_plus(&a) <= gamma_plus(&b));
                assert!(gamma_times(&a) <= gamma_times(&b));
            }
        }
    }

    #[test]
    fn sandwich_property() {
        let mut rng = StdRng::seed_from_u64(10);
        let mut checked = 0;
        while checked < 2_000 {
            let a = random_cnf(&mut rng, 2, 2, 3);
            if a < OrdinalCnf::finite(2u32) {
                continue;
            }
            let b = if rng.gen_bool(0.5) {
                random_cnf(&mut rng, 2, 2, 6)
            } else {
                OrdinalCnf::finite(rng.gen_range(0u32..40))
            };
            let Ok(k) = approx_index(&b, &a) else {
                continue;
            };
            assert!(b < a.pow_n(k), "{b} < {a}^{k}");
            if k > 0 {
                assert!(a.pow_n(k - 1) <= b, "{a}^{} ≤ {b}", k - 1);
            }
            checked += 1;
        }
    }
}
