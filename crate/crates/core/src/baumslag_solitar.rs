//! Collapsing `{a, t}` power sequences inside the Baumslag-Solitar group
//! `B = <a, t | t⁻¹at = a²>` to the form `a^M t^σ`, or certifying that the
//! word keeps essential `t`-alternation.
//!
//! The pipeline follows the relation `t⁻¹ a^m t = a^{2m}`: pushing a block
//! of `t`'s with non-positive prefix sums to the right multiplies each
//! passed `a`-exponent by `2^{-(δ_1+…+δ_i)}`, which is a non-negative power
//! of two and therefore always lands on an integer. Runs of `t`'s that turn
//! the prefix sum positive separate such pieces; folding the pieces back
//! together from the right requires the divisions `X / 2^{σ_i}` to be
//! exact, and a failed division certifies that the word is not `a^p` or
//! `t^p` for any `p`.

use std::cmp::Ordering;

use crate::circuit::{PowerCircuit, Sign};
use crate::error::Error;
use crate::sequence::{Letter, PowerSequence};

/// The word `a^{m_0} t^{δ_1} a^{m_1} … t^{δ_k} a^{m_k}` with circuit
/// exponents; always `m.len() == delta.len() + 1`.
#[derive(Debug, Clone)]
pub struct BsSegment {
    m: Vec<PowerCircuit>,
    delta: Vec<PowerCircuit>,
}

impl BsSegment {
    pub fn new(m: Vec<PowerCircuit>, delta: Vec<PowerCircuit>) -> Self {
        assert_eq!(m.len(), delta.len() + 1);
        BsSegment { m, delta }
    }

    /// Reads a reduced `{a, t}` sequence into segment shape, inserting zero
    /// `a`-exponents at the boundaries and between adjacent `t`-powers.
    pub fn from_sequence(seq: &PowerSequence) -> Self {
        let mut m = Vec::new();
        let mut delta = Vec::new();
        let mut pending = PowerCircuit::zero();
        for (letter, p) in seq.entries() {
            match letter {
                Letter::A => pending = pending.add(p).collapse_zero_vertices(),
                Letter::T => {
                    m.push(std::mem::take(&mut pending));
                    delta.push(p.clone());
                }
                Letter::B => panic!("segment letters must be a or t"),
            }
        }
        m.push(pending);
        BsSegment { m, delta }
    }

    pub fn a_exponents(&self) -> &[PowerCircuit] {
        &self.m
    }

    pub fn t_exponents(&self) -> &[PowerCircuit] {
        &self.delta
    }
}

/// The pair `(M, σ)` representing `a^{N(M)} t^{N(σ)}` in `B`.
#[derive(Debug, Clone)]
pub struct BsNormalForm {
    pub a_exp: PowerCircuit,
    pub t_exp: PowerCircuit,
}

/// `a^{M_0} t^{σ_1} a^{M_1} … t^{σ_n} a^{M_n} [t^{σ_{n+1}}]` where every
/// interior `σ_i` is positive and the optional trailing one is negative.
#[derive(Debug, Clone)]
pub struct AlternatingForm {
    pub leading_m: PowerCircuit,
    /// Pairs `(σ_i, M_i)`, in word order.
    pub blocks: Vec<(PowerCircuit, PowerCircuit)>,
    pub trailing_sigma: Option<PowerCircuit>,
}

/// Result of normalizing an `{a, t}` word in `B`.
#[derive(Debug, Clone)]
pub enum BsOutcome {
    /// The word equals `a^{N(M)} t^{N(σ)}`.
    Collapsed(BsNormalForm),
    /// A Britton integrality condition failed: the element keeps essential
    /// `t`-syllables and is not of the form `a^p` or `t^p`.
    Irreducible,
}

impl BsOutcome {
    pub fn collapsed(&self) -> Option<&BsNormalForm> {
        match self {
            BsOutcome::Collapsed(nf) => Some(nf),
            BsOutcome::Irreducible => None,
        }
    }
}

/// Collapses a segment whose `δ` prefix sums are all non-positive:
/// `σ = Σ δ_i` and `M = Σ m_i · 2^{-(δ_1+…+δ_i)}`, where every exponent of
/// two is non-negative, so `M` needs no divisibility check.
///
/// `M` is built structurally: the `m_i` are made sources and laid down with
/// one shared copy of each `δ_j`; every marked vertex of `m_i` gets edges to
/// the marked vertices of `δ_1 … δ_i` with flipped signs (multiplication by
/// `2^{-prefix}`), and the `δ` copies are unmarked.
pub fn t1_collapse(seg: &BsSegment) -> BsNormalForm {
    debug_assert!(
        {
            let mut run = PowerCircuit::zero();
            seg.delta.iter().all(|d| {
                run = run.add(d);
                run.sign().map(|s| s != Ordering::Greater).unwrap_or(false)
            })
        },
        "t1_collapse requires non-positive delta prefix sums"
    );

    let mut t_exp = PowerCircuit::zero();
    for d in &seg.delta {
        t_exp = t_exp.add(d);
    }
    t_exp = t_exp.collapse_zero_vertices();

    let mut a_exp = PowerCircuit::empty();
    // Marked vertices of each delta copy, with their signs.
    let mut delta_marks: Vec<Vec<(crate::circuit::VertexId, Sign)>> =
        Vec::with_capacity(seg.delta.len());
    for d in &seg.delta {
        let remap = a_exp.absorb(d);
        let marks: Vec<_> = d.marks().map(|(v, s)| (remap[&v], s)).collect();
        for &(v, _) in &marks {
            a_exp.set_mark(v, None);
        }
        delta_marks.push(marks);
    }
    for (i, mi) in seg.m.iter().enumerate() {
        let sources = mi.make_sources();
        let remap = a_exp.absorb(&sources);
        for (v, _) in sources.marks() {
            if sources.is_sink(v) {
                // A marked sink contributes 0, which scaling keeps at 0.
                a_exp.set_mark(remap[&v], None);
                continue;
            }
            // Multiply this term by 2^{-(δ_1+…+δ_i)}.
            for dm in delta_marks.iter().take(i) {
                for &(d, sign) in dm {
                    a_exp.add_edge(remap[&v], d, sign.flipped());
                }
            }
        }
    }
    BsNormalForm {
        a_exp: a_exp.collapse_zero_vertices(),
        t_exp,
    }
}

/// Greedy segmentation: keep extending a piece while its `δ` prefix sum
/// stays non-positive, collapse each piece with [`t1_collapse`], and merge
/// each piece's (non-positive) `t`-tail with the `δ` that forced the cut,
/// which makes every interior `t`-power strictly positive.
pub fn split_into_alternating(seg: &BsSegment) -> AlternatingForm {
    let mut out = PowerSequence::new();
    let mut piece_m: Vec<PowerCircuit> = vec![seg.m[0].clone()];
    let mut piece_d: Vec<PowerCircuit> = Vec::new();
    let mut run = PowerCircuit::zero();
    for (i, d) in seg.delta.iter().enumerate() {
        let candidate = run.add(d).collapse_zero_vertices();
        if candidate.sign().expect("valid exponents") != Ordering::Greater {
            piece_d.push(d.clone());
            piece_m.push(seg.m[i + 1].clone());
            run = candidate;
        } else {
            let nf = t1_collapse(&BsSegment::new(
                std::mem::replace(&mut piece_m, vec![seg.m[i + 1].clone()]),
                std::mem::take(&mut piece_d),
            ));
            out.push(Letter::A, nf.a_exp);
            out.push(Letter::T, nf.t_exp.add(d).collapse_zero_vertices());
            run = PowerCircuit::zero();
        }
    }
    let nf = t1_collapse(&BsSegment::new(piece_m, piece_d));
    out.push(Letter::A, nf.a_exp);
    out.push(Letter::T, nf.t_exp);

    let reduced = out.reduce();
    let mut leading_m = PowerCircuit::zero();
    let mut blocks: Vec<(PowerCircuit, PowerCircuit)> = Vec::new();
    let mut trailing_sigma = None;
    let mut entries = reduced.entries().iter().peekable();
    if let Some((Letter::A, p)) = entries.peek() {
        leading_m = p.clone();
        entries.next();
    }
    while let Some((letter, sigma)) = entries.next() {
        debug_assert_eq!(*letter, Letter::T, "reduced form alternates");
        match entries.next() {
            Some((Letter::A, m)) => {
                debug_assert_eq!(
                    sigma.sign().expect("valid exponents"),
                    Ordering::Greater,
                    "interior t-powers are positive"
                );
                blocks.push((sigma.clone(), m.clone()));
            }
            None => {
                match sigma.sign().expect("valid exponents") {
                    // A positive final t-power closes form (7) with M_n = 0.
                    Ordering::Greater => blocks.push((sigma.clone(), PowerCircuit::zero())),
                    Ordering::Less => trailing_sigma = Some(sigma.clone()),
                    Ordering::Equal => unreachable!("reduced sequences drop zero entries"),
                }
            }
            Some((l, _)) => unreachable!("reduced form alternates, found {l:?}"),
        }
    }
    AlternatingForm {
        leading_m,
        blocks,
        trailing_sigma,
    }
}

/// Folds an alternating form right to left: `X ← M_{i-1} + X / 2^{σ_i}`.
/// Any inexact division certifies irreducibility; on success the element is
/// `a^X t^σ` with `σ` the sum of all `t`-powers.
pub fn positive_collapse(alt: &AlternatingForm) -> BsOutcome {
    let mut x = match alt.blocks.last() {
        Some((_, m_n)) => m_n.clone(),
        None => alt.leading_m.clone(),
    };
    for i in (0..alt.blocks.len()).rev() {
        let (sigma_i, _) = &alt.blocks[i];
        let divided = match x.div_pow2(sigma_i) {
            Ok(d) => d,
            Err(Error::NotDivisible) => return BsOutcome::Irreducible,
            Err(e) => panic!("valid circuits cannot fail division: {e}"),
        };
        let m_prev = if i == 0 {
            &alt.leading_m
        } else {
            &alt.blocks[i - 1].1
        };
        x = m_prev.add(&divided).collapse_zero_vertices();
    }
    let mut t_exp = PowerCircuit::zero();
    for (sigma, _) in &alt.blocks {
        t_exp = t_exp.add(sigma);
    }
    if let Some(trail) = &alt.trailing_sigma {
        t_exp = t_exp.add(trail);
    }
    BsOutcome::Collapsed(BsNormalForm {
        a_exp: x,
        t_exp: t_exp.collapse_zero_vertices(),
    })
}

/// Full pipeline for an `{a, t}` power sequence: free reduction, greedy
/// segmentation, right-to-left fold. `Collapsed(M, σ)` means the word
/// equals `a^{N(M)} t^{N(σ)}` in `B`.
pub fn bs_normalize(seq: &PowerSequence) -> BsOutcome {
    assert!(
        seq.entries().iter().all(|(l, _)| *l != Letter::B),
        "bs_normalize takes words over a and t"
    );
    let reduced = seq.reduce();
    let seg = BsSegment::from_sequence(&reduced);
    let alt = split_into_alternating(&seg);
    positive_collapse(&alt)
}

/// The circuit `P` with `seq = a^{N(P)}` in `B`, if one exists.
pub fn equals_power_of_a(seq: &PowerSequence) -> Option<PowerCircuit> {
    match bs_normalize(seq) {
        BsOutcome::Collapsed(nf) if nf.t_exp.is_zero().expect("valid exponents") => {
            Some(nf.a_exp)
        }
        _ => None,
    }
}

/// The circuit `P` with `seq = t^{N(P)}` in `B`, if one exists.
pub fn equals_power_of_t(seq: &PowerSequence) -> Option<PowerCircuit> {
    match bs_normalize(seq) {
        BsOutcome::Collapsed(nf) if nf.a_exp.is_zero().expect("valid exponents") => {
            Some(nf.t_exp)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn c(n: i64) -> PowerCircuit {
        PowerCircuit::constant(n)
    }

    fn val(p: &PowerCircuit) -> i64 {
        p.eval(256).unwrap().to_i64().unwrap()
    }

    fn normalize(text: &str) -> BsOutcome {
        bs_normalize(&PowerSequence::parse(text).unwrap())
    }

    fn expect_collapsed(text: &str) -> (i64, i64) {
        match normalize(text) {
            BsOutcome::Collapsed(nf) => (val(&nf.a_exp), val(&nf.t_exp)),
            BsOutcome::Irreducible => panic!("{text} should collapse"),
        }
    }

    #[test]
    fn t1_collapse_examples() {
        // t⁻¹ a t = a²
        let nf = t1_collapse(&BsSegment::new(
            vec![c(0), c(1), c(0)],
            vec![c(-1), c(1)],
        ));
        assert_eq!(val(&nf.a_exp), 2);
        assert_eq!(val(&nf.t_exp), 0);

        // t⁻¹ a t a t⁻¹ = a³ t⁻¹
        let nf = t1_collapse(&BsSegment::new(
            vec![c(0), c(1), c(1), c(0)],
            vec![c(-1), c(1), c(-1)],
        ));
        assert_eq!(val(&nf.a_exp), 3);
        assert_eq!(val(&nf.t_exp), -1);

        // a⁵ alone (k = 0).
        let nf = t1_collapse(&BsSegment::new(vec![c(5)], vec![]));
        assert_eq!(val(&nf.a_exp), 5);
        assert_eq!(val(&nf.t_exp), 0);
    }

    #[test]
    fn t1_collapse_size_bounds() {
        let m = vec![c(3), c(5), c(1)];
        let delta = vec![c(-2), c(-1)];
        let seg = BsSegment::new(m.clone(), delta.clone());
        let nf = t1_collapse(&seg);
        let marks: usize = m.iter().map(|p| p.mark_count()).sum();
        assert_eq!(nf.a_exp.mark_count(), marks);
        let vbound: usize = m.iter().map(|p| p.vertex_count() + p.mark_count()).sum::<usize>()
            + delta.iter().map(|p| p.vertex_count()).sum::<usize>();
        assert!(nf.a_exp.vertex_count() <= vbound);
        assert_eq!(
            nf.t_exp.vertex_count(),
            delta.iter().map(|p| p.vertex_count()).sum::<usize>() - (delta.len() - 1)
        );
    }

    #[test]
    fn split_examples() {
        // All-non-positive input: a single block, no interior sigma.
        let alt = split_into_alternating(&BsSegment::new(
            vec![c(0), c(1), c(0)],
            vec![c(-1), c(1)],
        ));
        assert!(alt.blocks.is_empty());
        assert_eq!(val(&alt.leading_m), 2);
        assert!(alt.trailing_sigma.is_none());

        // t a² t⁻¹: M0 = 0, σ1 = 1, M1 = 2, trailing σ = -1.
        let alt = split_into_alternating(&BsSegment::new(
            vec![c(0), c(2), c(0)],
            vec![c(1), c(-1)],
        ));
        assert_eq!(val(&alt.leading_m), 0);
        assert_eq!(alt.blocks.len(), 1);
        assert_eq!(val(&alt.blocks[0].0), 1);
        assert_eq!(val(&alt.blocks[0].1), 2);
        assert_eq!(val(alt.trailing_sigma.as_ref().unwrap()), -1);

        // t² a⁸: M0 = 0, σ1 = 2, M1 = 8, no trailing sigma.
        let alt = split_into_alternating(&BsSegment::new(
            vec![c(0), c(0), c(8)],
            vec![c(1), c(1)],
        ));
        assert_eq!(val(&alt.leading_m), 0);
        assert_eq!(alt.blocks.len(), 1);
        assert_eq!(val(&alt.blocks[0].0), 2);
        assert_eq!(val(&alt.blocks[0].1), 8);
        assert!(alt.trailing_sigma.is_none());
    }

    #[test]
    fn positive_collapse_examples() {
        // t a² t⁻¹ = a
        assert_eq!(expect_collapsed("t a^2 t^-1"), (1, 0));
        // t a t⁻¹ is irreducible (1 is odd).
        assert!(matches!(normalize("t a t^-1"), BsOutcome::Irreducible));
        // t² a⁸ = a² t²
        assert_eq!(expect_collapsed("t^2 a^8"), (2, 2));
    }

    #[test]
    fn bs_normalize_examples() {
        assert_eq!(expect_collapsed("t^-1 a t a^-2"), (0, 0));
        assert_eq!(expect_collapsed("a^3 t^2"), (3, 2));
        assert_eq!(expect_collapsed(""), (0, 0));
        assert!(matches!(normalize("t a t^-1"), BsOutcome::Irreducible));
        assert!(matches!(normalize("t^2 a^3"), BsOutcome::Irreducible));
        // Odd powers stick: t a³ t⁻¹ has no collapsed form...
        assert!(matches!(normalize("t a^3 t^-1"), BsOutcome::Irreducible));
        // ...while even ones fall through two levels: t² a⁴ t⁻² = a.
        assert_eq!(expect_collapsed("t^2 a^4 t^-2"), (1, 0));
    }

    #[test]
    fn power_guards() {
        let two = equals_power_of_a(&PowerSequence::parse("t^-1 a t").unwrap()).unwrap();
        assert_eq!(val(&two), 2);
        let w = PowerSequence::parse("t a t^-1").unwrap();
        assert!(equals_power_of_a(&w).is_none());
        assert!(equals_power_of_t(&w).is_none());
        let t3 = PowerSequence::parse("t^3").unwrap();
        assert_eq!(val(&equals_power_of_t(&t3).unwrap()), 3);
        assert!(equals_power_of_a(&t3).is_none());
        // The identity is both a⁰ and t⁰.
        let id = PowerSequence::parse("a A").unwrap();
        assert!(equals_power_of_a(&id).is_some());
        assert!(equals_power_of_t(&id).is_some());
    }
}
