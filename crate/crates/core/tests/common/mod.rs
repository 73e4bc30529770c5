//! Shared test fixtures: seeded random circuits/words and independent
//! oracles the implementation is checked against.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use baumslag::{Letter, PowerCircuit, PowerSequence, Sign};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integral circuit with up to `max_vertices` vertices whose vertex
/// values stay within `2^max_exp`. Built bottom-up so every exponent sum is
/// a known non-negative integer.
pub fn random_circuit(rng: &mut ChaCha8Rng, max_vertices: usize, max_exp: i64) -> PowerCircuit {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut c = PowerCircuit::empty();
    let mut ids = Vec::with_capacity(n);
    let mut values: Vec<BigInt> = Vec::with_capacity(n);
    ids.push(c.add_vertex());
    values.push(BigInt::zero());
    for i in 1..n {
        let v = c.add_vertex();
        let mut placed = false;
        'attempt: for _ in 0..24 {
            let degree = rng.gen_range(1..=i.min(4));
            let mut targets: Vec<usize> = (0..i).collect();
            targets.shuffle(rng);
            targets.truncate(degree);
            let mut exp = BigInt::zero();
            let mut edges = Vec::with_capacity(degree);
            for &t in &targets {
                let sign = if rng.gen_bool(0.7) { Sign::Plus } else { Sign::Minus };
                exp += BigInt::from(sign.as_i8()) * &values[t];
                edges.push((t, sign));
            }
            if exp.is_negative() || exp > BigInt::from(max_exp) {
                continue 'attempt;
            }
            for (t, sign) in edges {
                c.add_edge(v, ids[t], sign);
            }
            values.push(BigInt::from(1) << exp.to_u64().expect("bounded exponent"));
            placed = true;
            break;
        }
        if !placed {
            c.add_edge(v, ids[0], Sign::Plus);
            values.push(BigInt::from(1));
        }
        ids.push(v);
    }
    for &v in &ids {
        if rng.gen_bool(0.45) {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            c.set_mark(v, Some(sign));
        }
    }
    c
}

/// Chain `z <- v1 <- ... <- v_{len-1}` (all plus edges, top vertex marked):
/// values run 0, 1, 2, 4, 16, 65536, ... so evaluation is hopeless past a
/// few vertices while the structure stays tiny.
pub fn chain_circuit(len: usize) -> PowerCircuit {
    let mut c = PowerCircuit::empty();
    let mut prev = c.add_vertex();
    for _ in 1..len {
        let v = c.add_vertex();
        c.add_edge(v, prev, Sign::Plus);
        prev = v;
    }
    if len > 1 {
        c.set_mark(prev, Some(Sign::Plus));
    }
    c
}

/// Random word over the six letters `{a, b, t}^{±1}` of exactly `len`
/// letters (exponents ±1 per entry).
pub fn random_word(rng: &mut ChaCha8Rng, len: usize) -> PowerSequence {
    let mut w = PowerSequence::new();
    for _ in 0..len {
        let letter = match rng.gen_range(0..3) {
            0 => Letter::A,
            1 => Letter::B,
            _ => Letter::T,
        };
        let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
        w.push(letter, PowerCircuit::constant(exp));
    }
    w
}

/// Random `{a, t}` word with exponents in `[-max_exp, max_exp] \ {0}`.
pub fn random_at_word(rng: &mut ChaCha8Rng, len: usize, max_exp: i64) -> PowerSequence {
    let mut w = PowerSequence::new();
    for _ in 0..len {
        let letter = if rng.gen_bool(0.5) { Letter::A } else { Letter::T };
        let mut exp = 0;
        while exp == 0 {
            exp = rng.gen_range(-max_exp..=max_exp);
        }
        w.push(letter, PowerCircuit::constant(exp));
    }
    w
}

/// Exact element arithmetic in the Baumslag-Solitar group `B(1,2)`, the
/// independent oracle for everything the collapse pipeline claims.
///
/// `B(1,2)` embeds in `Z[1/2] ⋊ Z` by `a = (1, 0)`, `t = (0, 1)` with
/// `(x1, s1)(x2, s2) = (x1 + 2^{-s1} x2, s1 + s2)`; the embedding is
/// faithful, so two words are equal in the group iff their images match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsElement {
    /// Dyadic rational `num * 2^scale`.
    pub num: BigInt,
    pub scale: i64,
    /// The `t`-exponent sum.
    pub t_sum: i64,
}

impl BsElement {
    pub fn identity() -> Self {
        BsElement {
            num: BigInt::zero(),
            scale: 0,
            t_sum: 0,
        }
    }

    fn add_dyadic(&mut self, k: &BigInt, scale: i64) {
        let common = self.scale.min(scale);
        let num = (&self.num << (self.scale - common) as u64)
            + (k << (scale - common) as u64);
        self.num = num;
        self.scale = common;
        self.normalize();
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.scale = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0) as i64;
        let shift = tz.min(-self.scale).max(0);
        if shift > 0 {
            self.num >>= shift as u64;
            self.scale += shift;
        }
    }

    /// Right-multiplies by `a^k`.
    pub fn append_a(&mut self, k: &BigInt) {
        let scale = -self.t_sum;
        self.add_dyadic(k, scale);
    }

    /// Right-multiplies by `t^k`.
    pub fn append_t(&mut self, k: i64) {
        self.t_sum += k;
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_zero() && self.t_sum == 0
    }

    /// The `a`-part, when it is an integer (equivalently, when the element
    /// can be written `a^M t^σ`).
    pub fn integer_a_part(&self) -> Option<BigInt> {
        if self.num.is_zero() {
            return Some(BigInt::zero());
        }
        if self.scale >= 0 {
            Some(&self.num << self.scale as u64)
        } else {
            None // normalized, so a negative scale means a true fraction
        }
    }
}

/// Evaluates an `{a, t}` power sequence in the embedding; exponents must be
/// oracle-evaluable.
pub fn bs_element_of(word: &PowerSequence) -> BsElement {
    let mut e = BsElement::identity();
    for (letter, p) in word.entries() {
        let n = p.eval(1 << 12).expect("oracle-evaluable exponent");
        match letter {
            Letter::A => e.append_a(&n),
            Letter::T => e.append_t(n.to_i64().expect("t-exponent fits i64")),
            Letter::B => panic!("b is not a B(1,2) letter"),
        }
    }
    e
}
