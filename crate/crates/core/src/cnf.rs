//! Exact arithmetic on ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is represented as `ω^{e₁}·c₁ + … + ω^{e_k}·c_k` with the
//! exponents themselves ordinals of the same kind, strictly decreasing, and
//! every coefficient a positive integer. The empty sum denotes 0. Values are
//! canonical by construction, so structural equality is ordinal equality.
//!
//! Besides the usual (non-commutative) ordinal sum and product, the module
//! provides the commutative Hessenberg operations `nat_sum` / `nat_prod`,
//! ω-powers, and the ω-tower used for the values ω_n.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};

/// An ordinal below ε₀ in Cantor normal form.
///
/// Terms are `(exponent, coefficient)` pairs with exponents strictly
/// decreasing and coefficients ≥ 1; the empty list is 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrdinalCnf {
    terms: Vec<(OrdinalCnf, BigUint)>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn omega() -> Self {
        OrdinalCnf {
            terms: vec![(Self::one(), BigUint::from(1u32))],
        }
    }

    /// The finite ordinal `n`.
    pub fn finite(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n == BigUint::ZERO {
            Self::zero()
        } else {
            OrdinalCnf {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    /// Builds a value from explicit `(exponent, coefficient)` terms,
    /// rejecting non-canonical input (exponents not strictly decreasing, or
    /// a zero coefficient).
    pub fn from_terms(terms: Vec<(OrdinalCnf, BigUint)>) -> Result<Self> {
        for (i, (_, c)) in terms.iter().enumerate() {
            if *c == BigUint::ZERO {
                return Err(Error::domain(format!("zero coefficient at term {i}")));
            }
        }
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::domain(
                    "exponents must be strictly decreasing".to_string(),
                ));
            }
        }
        Ok(OrdinalCnf { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for 0 and for every ordinal of the form ω⁰·n.
    pub fn is_finite(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(e, _)] => e.is_zero(),
            _ => false,
        }
    }

    /// The value of a finite ordinal, if this is one.
    pub fn finite_value(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::ZERO),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(OrdinalCnf, BigUint)] {
        &self.terms
    }

    fn leading(&self) -> Option<&(OrdinalCnf, BigUint)> {
        self.terms.first()
    }

    /// Ordinal sum `self + rhs` (left absorption: `1 + ω = ω`).
    pub fn add(&self, rhs: &OrdinalCnf) -> OrdinalCnf {
        let Some((f, fc)) = rhs.leading() else {
            return self.clone();
        };
        let mut out = Vec::new();
        let mut merged_head = fc.clone();
        for (e, c) in &self.terms {
            match e.cmp(f) {
                Ordering::Greater => out.push((e.clone(), c.clone())),
                Ordering::Equal => merged_head += c,
                Ordering::Less => break,
            }
        }
        out.push((f.clone(), merged_head));
        out.extend(rhs.terms[1..].iter().cloned());
        OrdinalCnf { terms: out }
    }

    /// Ordinal product `self · rhs`, by the usual CNF recursion:
    /// distribute over the right argument, with `a · ω^f·c = ω^{e₁+f}·c`
    /// for `f > 0` and `a · n` scaling the leading coefficient.
    pub fn mul(&self, rhs: &OrdinalCnf) -> OrdinalCnf {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (e1, c1) = self.leading().expect("nonzero has a leading term");
        let mut acc = Self::zero();
        for (f, c) in &rhs.terms {
            let partial = if f.is_zero() {
                let mut terms = vec![(e1.clone(), c1 * c)];
                terms.extend(self.terms[1..].iter().cloned());
                OrdinalCnf { terms }
            } else {
                OrdinalCnf {
                    terms: vec![(e1.add(f), c.clone())],
                }
            };
            acc = acc.add(&partial);
        }
        acc
    }

    /// Hessenberg (natural) sum: merge the exponent multisets.
    pub fn nat_sum(&self, rhs: &OrdinalCnf) -> OrdinalCnf {
        let mut out: Vec<(OrdinalCnf, BigUint)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let pick = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some((ea, _)), Some((eb, _))) => ea.cmp(eb),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match pick {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, ca) = &self.terms[i];
                    out.push((e.clone(), ca + &rhs.terms[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        OrdinalCnf { terms: out }
    }

    /// Hessenberg (natural) product: distribute term by term,
    /// `ω^e·m ⊗ ω^f·k = ω^{e⊕f}·(m·k)`, recombining with `nat_sum`.
    pub fn nat_prod(&self, rhs: &OrdinalCnf) -> OrdinalCnf {
        let mut acc = Self::zero();
        for (e, m) in &self.terms {
            for (f, k) in &rhs.terms {
                let piece = OrdinalCnf {
                    terms: vec![(e.nat_sum(f), m * k)],
                };
                acc = acc.nat_sum(&piece);
            }
        }
        acc
    }

    /// `ω^self`.
    pub fn omega_power(&self) -> OrdinalCnf {
        OrdinalCnf {
            terms: vec![(self.clone(), BigUint::from(1u32))],
        }
    }

    /// `self^n` by iterated product; `pow_n(a, 0) = 1`.
    pub fn pow_n(&self, n: u32) -> OrdinalCnf {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Nesting depth of the exponent structure: 0 for the ordinal 0,
    /// otherwise one more than the deepest exponent.
    pub fn nesting_depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| 1 + e.nesting_depth())
            .max()
            .unwrap_or(0)
    }
}

/// The ω-tower: `omega_tower(1) = ω`, `omega_tower(n+1) = ω^{omega_tower(n)}`.
pub fn omega_tower(n: u32) -> Result<OrdinalCnf> {
    if n == 0 {
        return Err(Error::domain("tower height must be at least 1"));
    }
    let mut t = OrdinalCnf::omega();
    for _ in 1..n {
        t = t.omega_power();
    }
    Ok(t)
}

impl Ord for OrdinalCnf {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every canonical value of nesting depth ≤ `max_depth` whose coefficients
/// are ≤ `max_coeff` and which has at most `max_terms` terms at each level,
/// sorted ascending. The same bounds apply recursively to exponents.
pub fn enumerate_cnf(max_depth: usize, max_coeff: u32, max_terms: usize) -> Vec<OrdinalCnf> {
    let mut level = vec![OrdinalCnf::zero()];
    for _ in 0..max_depth {
        // Exponent pool in strictly decreasing order.
        let mut pool = level.clone();
        pool.sort();
        pool.reverse();
        let mut next = vec![OrdinalCnf::zero()];
        let mut stack: Vec<(OrdinalCnf, BigUint)> = Vec::new();
        build_lists(&pool, 0, max_coeff, max_terms, &mut stack, &mut next);
        level = next;
    }
    level.sort();
    level
}

fn build_lists(
    pool: &[OrdinalCnf],
    from: usize,
    max_coeff: u32,
    max_terms: usize,
    stack: &mut Vec<(OrdinalCnf, BigUint)>,
    out: &mut Vec<OrdinalCnf>,
) {
    if stack.len() == max_terms {
        return;
    }
    for i in from..pool.len() {
        for c in 1..=max_coeff {
            stack.push((pool[i].clone(), BigUint::from(c)));
            out.push(OrdinalCnf {
                terms: stack.clone(),
            });
            build_lists(pool, i + 1, max_coeff, max_terms, stack, out);
            stack.pop();
        }
    }
}

/// A random canonical value, for randomized law checks. Exponents recurse
/// with one less depth; term count and coefficients are uniform in range.
pub fn random_cnf(
    rng: &mut impl Rng,
    depth: usize,
    max_terms: usize,
    max_coeff: u32,
) -> OrdinalCnf {
    if depth == 0 || rng.gen_ratio(1, 8) {
        return OrdinalCnf::zero();
    }
    let n_terms = rng.gen_range(1..=max_terms);
    let mut exps: Vec<OrdinalCnf> = (0..n_terms)
        .map(|_| random_cnf(rng, depth - 1, max_terms, max_coeff))
        .collect();
    exps.sort();
    exps.dedup();
    exps.reverse();
    let terms = exps
        .into_iter()
        .map(|e| (e, BigUint::from(rng.gen_range(1..=max_coeff))))
        .collect();
    OrdinalCnf { terms }
}

// ---------------------------------------------------------------------------
// Text form: `0`, `w`, `w^<exp>`, `w^<exp>*<int>`, summed with ` + `.
// The printer is canonical and the parser accepts exactly canonical spellings,
// so parse ∘ print is the identity byte for byte.
// ---------------------------------------------------------------------------

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e == &OrdinalCnf::one() {
                write!(f, "w")?;
            } else {
                write!(f, "w^{}", ExponentAtom(e))?;
            }
            if *c != BigUint::from(1u32) {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// Prints an exponent in atom position: bare when it is a plain integer or a
/// single coefficient-1 power, parenthesised otherwise.
struct ExponentAtom<'a>(&'a OrdinalCnf);

impl fmt::Display for ExponentAtom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.0;
        if let Some(n) = e.finite_value() {
            return write!(f, "{n}");
        }
        match e.terms.as_slice() {
            [(inner, c)] if *c == BigUint::from(1u32) => {
                if inner == &OrdinalCnf::one() {
                    write!(f, "w")
                } else {
                    write!(f, "w^{}", ExponentAtom(inner))
                }
            }
            _ => write!(f, "({e})"),
        }
    }
}

impl FromStr for OrdinalCnf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(format!(
                "trailing input at byte {} in {s:?}",
                p.pos
            )));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(format!("expected integer at byte {start}")));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(BigUint::from_str(text).expect("digits parse"))
    }

    fn expr(&mut self) -> Result<OrdinalCnf> {
        // A lone `0`, not followed by more digits, is the ordinal 0 and may
        // not appear as a summand.
        if self.peek() == Some(b'0')
            && !self
                .src
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
            return Ok(OrdinalCnf::zero());
        }
        let mut terms = vec![self.term()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.eat(b'+') {
                self.skip_ws();
                terms.push(self.term()?);
            } else {
                self.pos = save;
                break;
            }
        }
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::parse(
                    "exponents must be strictly decreasing in a canonical sum".to_string(),
                ));
            }
        }
        Ok(OrdinalCnf { terms })
    }

    /// One summand: `w`, `w^atom`, either with `*<int>`, or a bare integer.
    fn term(&mut self) -> Result<(OrdinalCnf, BigUint)> {
        if self.eat(b'w') {
            let exp = if self.eat(b'^') {
                self.exp_atom()?
            } else {
                OrdinalCnf::one()
            };
            if exp.is_zero() {
                return Err(Error::parse("write `1`, not `w^0`".to_string()));
            }
            let coeff = if self.eat(b'*') {
                let c = self.integer()?;
                if c == BigUint::ZERO {
                    return Err(Error::parse("coefficient must be positive".to_string()));
                }
                if c == BigUint::from(1u32) {
                    return Err(Error::parse("coefficient 1 must be omitted".to_string()));
                }
                c
            } else {
                BigUint::from(1u32)
            };
            Ok((exp, coeff))
        } else if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.integer()?;
            if n == BigUint::ZERO {
                return Err(Error::parse("0 may not appear as a summand".to_string()));
            }
            Ok((OrdinalCnf::zero(), n))
        } else {
            Err(Error::parse(format!(
                "expected term at byte {} (one of `w`, digit)",
                self.pos
            )))
        }
    }

    /// Exponent position: an integer, `w`/`w^atom` with coefficient 1, or a
    /// parenthesised full expression.
    fn exp_atom(&mut self) -> Result<OrdinalCnf> {
        if self.eat(b'(') {
            self.skip_ws();
            let inner = self.expr()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(Error::parse(format!("expected `)` at byte {}", self.pos)));
            }
            return Ok(inner);
        }
        if self.eat(b'w') {
            let exp = if self.eat(b'^') {
                self.exp_atom()?
            } else {
                OrdinalCnf::one()
            };
            if exp.is_zero() {
                return Err(Error::parse("write `1`, not `w^0`".to_string()));
            }
            return Ok(exp.omega_power());
        }
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.integer()?;
            return Ok(OrdinalCnf::finite(n));
        }
        Err(Error::parse(format!(
            "expected exponent at byte {}",
            self.pos
        )))
    }
}
