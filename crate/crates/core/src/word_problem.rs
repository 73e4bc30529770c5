//! The word problem for the Baumslag group
//! `G = <a, b | b⁻¹a⁻¹bab⁻¹ab = a²> = <B, b | b⁻¹ab = t>`.
//!
//! [`solve`] factors the input into `b`-letters separated by `{a, t}`
//! segments and repeatedly eliminates pinches `b⁻¹ a^p b → t^p` and
//! `b t^p b⁻¹ → a^p`, with the segment guards decided in the base group by
//! [`crate::baumslag_solitar::bs_normalize`]. Each elimination removes two
//! `b`-letters, so there are at most `|w|/2` of them; all exponents stay in
//! compressed circuit form throughout.
//!
//! [`naive_solve`] is the classical Magnus-breakdown baseline: rewriting
//! with `t⁻¹ a^k t → a^{2k}` and friends over explicit bignum exponents. It
//! decides short words instantly and drowns on the [`hard_word`] family,
//! whose normal forms are towers of twos.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::baumslag_solitar::{bs_normalize, BsOutcome};
use crate::circuit::PowerCircuit;
use crate::sequence::{Letter, PowerSequence};

/// Answer to "does the word represent the identity of `G`?".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

/// Which budget the naive engine ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Steps,
    Bits,
}

/// Outcome of the capped naive rewriting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveOutcome {
    Yes,
    No,
    ResourceExceeded(Resource),
}

/// Which applicable pinch the solver eliminates first. The verdict is
/// order-independent (Britton's lemma); the rightmost variant exists to
/// cross-check exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinchOrder {
    LeftmostFirst,
    RightmostFirst,
}

/// Counters from one [`solve`] run, used by the growth-accounting checks
/// and the benchmark harness. Measures count the factored sequence: every
/// `b`-letter contributes one mark and two vertices, segments contribute
/// their circuit totals.
#[derive(Debug, Clone)]
pub struct SolveStats {
    pub replacements: usize,
    pub initial_marks: usize,
    pub initial_vertices: usize,
    pub peak_marks: usize,
    pub peak_vertices: usize,
    /// Letter length of the input, when its exponents are small enough to
    /// evaluate.
    pub initial_letter_len: Option<u64>,
    /// Total marks never increased across a replacement.
    pub marks_monotone: bool,
    /// Total vertices stayed within `V0 + (|w|/2) * M0` (vacuously true when
    /// the letter length is not measurable).
    pub vertex_bound_ok: bool,
}

/// What a segment equals in the base group.
#[derive(Debug, Clone)]
enum SegClass {
    /// `a^p` with `p` possibly zero but `t`-part zero.
    PowerOfA(PowerCircuit),
    /// `t^p` with nonzero `p`.
    PowerOfT(PowerCircuit),
    /// The identity: both `a^0` and `t^0`.
    Identity,
    /// Neither a power of `a` nor of `t`.
    Neither,
}

#[derive(Debug, Clone)]
enum Item {
    BLetter(i8),
    Segment {
        seq: PowerSequence,
        class: Option<SegClass>,
    },
}

struct Factored {
    items: Vec<Item>,
}

impl Factored {
    /// Factors a word into `b`-letters and `{a, t}` segments. `b`-powers are
    /// expanded into single letters (their exponents must be machine-sized,
    /// which any materializable word satisfies).
    fn build(w: &PowerSequence) -> Factored {
        let reduced = w.reduce();
        let mut items: Vec<Item> = Vec::new();
        let mut seg = PowerSequence::new();
        for (letter, p) in reduced.entries() {
            match letter {
                Letter::B => {
                    if !seg.is_empty() {
                        items.push(Item::Segment {
                            seq: std::mem::take(&mut seg),
                            class: None,
                        });
                    }
                    let n = p
                        .eval(crate::circuit::DEFAULT_BIT_BUDGET)
                        .ok()
                        .and_then(|n| n.to_i64())
                        .expect("b-exponents must be machine-sized");
                    let sign = if n > 0 { 1 } else { -1 };
                    for _ in 0..n.unsigned_abs() {
                        items.push(Item::BLetter(sign));
                    }
                }
                _ => seg.push(*letter, p.clone()),
            }
        }
        if !seg.is_empty() {
            items.push(Item::Segment {
                seq: seg,
                class: None,
            });
        }
        Factored { items }
    }

    fn total_marks(&self) -> usize {
        self.items
            .iter()
            .map(|i| match i {
                Item::BLetter(_) => 1,
                Item::Segment { seq, .. } => seq.total_marks(),
            })
            .sum()
    }

    fn total_vertices(&self) -> usize {
        self.items
            .iter()
            .map(|i| match i {
                Item::BLetter(_) => 2,
                Item::Segment { seq, .. } => seq.total_vertices(),
            })
            .sum()
    }

    fn class_of(&mut self, idx: usize) -> SegClass {
        let Item::Segment { seq, class } = &mut self.items[idx] else {
            panic!("not a segment");
        };
        if class.is_none() {
            *class = Some(classify(seq));
        }
        class.clone().unwrap()
    }

    /// Finds the next applicable pinch: a pair of consecutive `b`-letters
    /// with opposite signs whose in-between segment is the right kind of
    /// power. Returns `(left b index, right b index, letter, exponent)`.
    fn find_pinch(&mut self, order: PinchOrder) -> Option<(usize, usize, Letter, PowerCircuit)> {
        let b_positions: Vec<usize> = self
            .items
            .iter()
            .enumerate()
            .filter_map(|(i, it)| matches!(it, Item::BLetter(_)).then_some(i))
            .collect();
        let pairs: Vec<(usize, usize)> = b_positions.windows(2).map(|w| (w[0], w[1])).collect();
        let scan: Box<dyn Iterator<Item = (usize, usize)>> = match order {
            PinchOrder::LeftmostFirst => Box::new(pairs.into_iter()),
            PinchOrder::RightmostFirst => Box::new(pairs.into_iter().rev()),
        };
        for (bi, bj) in scan {
            let (Item::BLetter(si), Item::BLetter(sj)) = (&self.items[bi], &self.items[bj])
            else {
                unreachable!()
            };
            let (si, sj) = (*si, *sj);
            let class = if bj == bi + 1 {
                SegClass::Identity
            } else {
                self.class_of(bi + 1)
            };
            if si < 0 && sj > 0 {
                // b⁻¹ a^p b → t^p
                match class {
                    SegClass::PowerOfA(p) => return Some((bi, bj, Letter::T, p)),
                    SegClass::Identity => {
                        return Some((bi, bj, Letter::T, PowerCircuit::zero()))
                    }
                    _ => {}
                }
            } else if si > 0 && sj < 0 {
                // b t^p b⁻¹ → a^p
                match class {
                    SegClass::PowerOfT(p) => return Some((bi, bj, Letter::A, p)),
                    SegClass::Identity => {
                        return Some((bi, bj, Letter::A, PowerCircuit::zero()))
                    }
                    _ => {}
                }
            }
        }
        None
    }

    /// Replaces `b^ε (segment) b^ε'` by the rewritten letter and merges it
    /// with the neighbouring segments, free-reducing the result.
    fn apply_pinch(&mut self, bi: usize, bj: usize, letter: Letter, exponent: PowerCircuit) {
        let seg_at = |items: &[Item], idx: usize| match &items[idx] {
            Item::Segment { seq, .. } => seq.clone(),
            Item::BLetter(_) => unreachable!("neighbour checked to be a segment"),
        };
        let mut start = bi;
        let mut end = bj;
        let mut merged = PowerSequence::new();
        if bi > 0 && matches!(self.items[bi - 1], Item::Segment { .. }) {
            start = bi - 1;
            merged = seg_at(&self.items, start);
        }
        merged.push(letter, exponent);
        if bj + 1 < self.items.len() && matches!(self.items[bj + 1], Item::Segment { .. }) {
            end = bj + 1;
            for (l, p) in seg_at(&self.items, end).entries() {
                merged.push(*l, p.clone());
            }
        }
        let merged = merged.reduce();
        let replacement = (!merged.is_empty()).then_some(Item::Segment {
            seq: merged,
            class: None,
        });
        self.items.splice(start..=end, replacement);
    }

    fn b_count(&self) -> usize {
        self.items
            .iter()
            .filter(|i| matches!(i, Item::BLetter(_)))
            .count()
    }
}

fn classify(seq: &PowerSequence) -> SegClass {
    match bs_normalize(seq) {
        BsOutcome::Collapsed(nf) => {
            let t_zero = nf.t_exp.is_zero().expect("valid exponents");
            let a_zero = nf.a_exp.is_zero().expect("valid exponents");
            match (t_zero, a_zero) {
                (true, true) => SegClass::Identity,
                (true, false) => SegClass::PowerOfA(nf.a_exp),
                (false, true) => SegClass::PowerOfT(nf.t_exp),
                (false, false) => SegClass::Neither,
            }
        }
        BsOutcome::Irreducible => SegClass::Neither,
    }
}

fn run_pinches(w: &PowerSequence, order: PinchOrder) -> (Factored, SolveStats) {
    let mut fac = Factored::build(w);
    let initial_letter_len = w
        .letter_len(crate::circuit::DEFAULT_BIT_BUDGET)
        .ok()
        .and_then(|n| n.to_u64());
    let m0 = fac.total_marks();
    let v0 = fac.total_vertices();
    let vertex_bound = initial_letter_len.map(|l| v0 as u64 + (l / 2) * m0 as u64);
    let mut stats = SolveStats {
        replacements: 0,
        initial_marks: m0,
        initial_vertices: v0,
        peak_marks: m0,
        peak_vertices: v0,
        initial_letter_len,
        marks_monotone: true,
        vertex_bound_ok: true,
    };
    let mut prev_marks = m0;
    while let Some((bi, bj, letter, p)) = fac.find_pinch(order) {
        fac.apply_pinch(bi, bj, letter, p);
        stats.replacements += 1;
        let marks = fac.total_marks();
        let vertices = fac.total_vertices();
        if marks > prev_marks {
            stats.marks_monotone = false;
        }
        debug_assert!(marks <= prev_marks, "mark count must never grow");
        if let Some(bound) = vertex_bound {
            if vertices as u64 > bound {
                stats.vertex_bound_ok = false;
            }
            debug_assert!(
                vertices as u64 <= bound,
                "vertex count {vertices} exceeded bound {bound}"
            );
        }
        prev_marks = marks;
        stats.peak_marks = stats.peak_marks.max(marks);
        stats.peak_vertices = stats.peak_vertices.max(vertices);
    }
    (fac, stats)
}

/// Decides whether `w` represents the identity of `G`. Words may use `t`
/// freely (the presentation gives `t = b⁻¹ab`).
pub fn solve(w: &PowerSequence) -> Verdict {
    solve_with_stats(w).0
}

/// [`solve`] with growth counters.
pub fn solve_with_stats(w: &PowerSequence) -> (Verdict, SolveStats) {
    solve_with_order(w, PinchOrder::LeftmostFirst)
}

/// [`solve`] with an explicit pinch elimination order.
pub fn solve_with_order(w: &PowerSequence, order: PinchOrder) -> (Verdict, SolveStats) {
    let (mut fac, stats) = run_pinches(w, order);
    if fac.b_count() > 0 {
        // Some b survives every possible pinch; by Britton's lemma the word
        // is not trivial.
        return (Verdict::No, stats);
    }
    let verdict = match fac.items.len() {
        0 => Verdict::Yes,
        1 => match fac.class_of(0) {
            SegClass::Identity => Verdict::Yes,
            _ => Verdict::No,
        },
        _ => unreachable!("no b-letters means at most one segment"),
    };
    (verdict, stats)
}

/// Eliminates all pinches and returns the remaining `{a, t}` word, or
/// `None` when `b`-letters survive (the word then lies outside the base
/// group and is non-trivial).
pub fn collapse_to_base(w: &PowerSequence) -> Option<PowerSequence> {
    let (fac, _) = run_pinches(w, PinchOrder::LeftmostFirst);
    if fac.b_count() > 0 {
        return None;
    }
    match fac.items.into_iter().next() {
        None => Some(PowerSequence::new()),
        Some(Item::Segment { seq, .. }) => Some(seq),
        Some(Item::BLetter(_)) => unreachable!(),
    }
}

/// Counters from one [`naive_solve`] run.
#[derive(Debug, Clone, Copy)]
pub struct NaiveStats {
    /// Work units spent (letters written by rewrites).
    pub work: u64,
    /// Largest syllable count the word reached.
    pub peak_syllables: usize,
}

/// The Magnus-breakdown baseline: leftmost-innermost rewriting with
///
/// ```text
/// t⁻¹ a^k t → a^{2k}      t a^{2k} t⁻¹ → a^k
/// b⁻¹ a^k b → t^k         b t^k b⁻¹ → a^k
/// ```
///
/// plus free reduction, over explicit bignum exponents. The step counter
/// charges each rewrite the number of letters it writes (`|2k|` for the
/// doubling rule), i.e. the running time of the textbook algorithm on plain
/// words; `step_cap` bounds that total and `bit_budget` bounds every
/// exponent. Exceeding either yields [`NaiveOutcome::ResourceExceeded`],
/// the expected outcome on hard words.
pub fn naive_solve(w: &PowerSequence, step_cap: u64, bit_budget: u64) -> NaiveOutcome {
    naive_solve_with_stats(w, step_cap, bit_budget).0
}

/// [`naive_solve`] with work counters.
pub fn naive_solve_with_stats(
    w: &PowerSequence,
    step_cap: u64,
    bit_budget: u64,
) -> (NaiveOutcome, NaiveStats) {
    let mut stats = NaiveStats {
        work: 0,
        peak_syllables: 0,
    };
    let mut word: Vec<(Letter, BigInt)> = Vec::with_capacity(w.len());
    for (letter, p) in w.entries() {
        match p.eval(bit_budget) {
            Ok(n) => word.push((*letter, n)),
            Err(_) => return (NaiveOutcome::ResourceExceeded(Resource::Bits), stats),
        }
    }
    stats.peak_syllables = word.len();
    word = free_reduce(word, &mut stats.work);
    loop {
        stats.peak_syllables = stats.peak_syllables.max(word.len());
        if stats.work > step_cap {
            return (NaiveOutcome::ResourceExceeded(Resource::Steps), stats);
        }
        let Some((i, rewritten)) = next_rewrite(&word) else {
            break;
        };
        let mut written: u64 = 0;
        for (_, p) in &rewritten {
            written = written.saturating_add(letters(p).max(1));
        }
        stats.work = stats.work.saturating_add(written.max(1));
        if rewritten
            .iter()
            .any(|(_, p)| p.magnitude().bits() > bit_budget)
        {
            return (NaiveOutcome::ResourceExceeded(Resource::Bits), stats);
        }
        word.splice(i..i + 3, rewritten.into_iter().filter(|(_, p)| !p.is_zero()));
        word = free_reduce(word, &mut stats.work);
    }
    let outcome = if word.is_empty() {
        NaiveOutcome::Yes
    } else {
        NaiveOutcome::No
    };
    (outcome, stats)
}

fn letters(p: &BigInt) -> u64 {
    p.magnitude().to_u64().unwrap_or(u64::MAX)
}

/// Leftmost applicable rule on a freely-reduced syllable word; returns the
/// window start and the three replacement syllables (zeros dropped later).
fn next_rewrite(word: &[(Letter, BigInt)]) -> Option<(usize, Vec<(Letter, BigInt)>)> {
    for i in 0..word.len().saturating_sub(2) {
        let (l0, p0) = &word[i];
        let (l1, p1) = &word[i + 1];
        let (l2, p2) = &word[i + 2];
        let one = BigInt::one();
        match (l0, l1, l2) {
            (Letter::T, Letter::A, Letter::T) if p0.is_negative() && p2.is_positive() => {
                return Some((
                    i,
                    vec![
                        (Letter::T, p0 + &one),
                        (Letter::A, p1 * 2),
                        (Letter::T, p2 - &one),
                    ],
                ));
            }
            (Letter::T, Letter::A, Letter::T)
                if p0.is_positive() && p2.is_negative() && !p1.bit(0) =>
            {
                return Some((
                    i,
                    vec![
                        (Letter::T, p0 - &one),
                        (Letter::A, p1 / 2),
                        (Letter::T, p2 + &one),
                    ],
                ));
            }
            (Letter::B, Letter::A, Letter::B) if p0.is_negative() && p2.is_positive() => {
                return Some((
                    i,
                    vec![
                        (Letter::B, p0 + &one),
                        (Letter::T, p1.clone()),
                        (Letter::B, p2 - &one),
                    ],
                ));
            }
            (Letter::B, Letter::T, Letter::B) if p0.is_positive() && p2.is_negative() => {
                return Some((
                    i,
                    vec![
                        (Letter::B, p0 - &one),
                        (Letter::A, p1.clone()),
                        (Letter::B, p2 + &one),
                    ],
                ));
            }
            _ => {}
        }
    }
    None
}

fn free_reduce(word: Vec<(Letter, BigInt)>, work: &mut u64) -> Vec<(Letter, BigInt)> {
    let mut stack: Vec<(Letter, BigInt)> = Vec::with_capacity(word.len());
    for (letter, p) in word {
        if p.is_zero() {
            continue;
        }
        let mut letter = letter;
        let mut p = p;
        loop {
            match stack.last() {
                Some((top, _)) if *top == letter => {
                    let (_, q) = stack.pop().unwrap();
                    *work = work.saturating_add(1);
                    p += q;
                    if p.is_zero() {
                        match stack.pop() {
                            Some((l, q)) => {
                                letter = l;
                                p = q;
                            }
                            None => break,
                        }
                    }
                }
                _ => {
                    stack.push((letter, p));
                    break;
                }
            }
        }
    }
    stack
}

/// The hard words: `w_0 = a`, `w_{k+1} = (b⁻¹ w_k b)⁻¹ a (b⁻¹ w_k b)`,
/// returned literally with all exponents `±1`. In `G`, `w_k = a^{tower2(k)}`.
pub fn hard_word(k: u32) -> PowerSequence {
    let mut w = PowerSequence::from_entries(vec![(Letter::A, PowerCircuit::constant(1))]);
    for _ in 0..k {
        let mut conj = PowerSequence::new();
        conj.push(Letter::B, PowerCircuit::constant(-1));
        for (l, p) in w.entries() {
            conj.push(*l, p.clone());
        }
        conj.push(Letter::B, PowerCircuit::constant(1));
        let mut next = conj.inverse();
        next.push(Letter::A, PowerCircuit::constant(1));
        w = next.concat(&conj);
    }
    w
}

/// `tower2(0) = 1`, `tower2(k+1) = 2^tower2(k)`. Rejects `k > 5`: the next
/// value has `2^65536` bits and fits no budget.
pub fn tower2(k: u32) -> BigInt {
    assert!(k <= 5, "tower2({k}) is not materializable");
    let mut t = BigInt::one();
    for _ in 0..k {
        let shift = t.to_u64().expect("previous tower level fits u64");
        t = BigInt::one() << shift;
    }
    t
}

/// The commutator `u⁻¹ v⁻¹ u v` as a literal concatenation.
pub fn commutator(u: &PowerSequence, v: &PowerSequence) -> PowerSequence {
    u.inverse().concat(&v.inverse()).concat(u).concat(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> PowerSequence {
        PowerSequence::parse(text).unwrap()
    }

    const RELATOR: &str = "B A b a B a b a^-2";

    #[test]
    fn solve_presentation_identities() {
        assert_eq!(solve(&parse(RELATOR)), Verdict::Yes);
        assert_eq!(solve(&parse("a")), Verdict::No);
        assert_eq!(solve(&parse("")), Verdict::Yes);
        assert_eq!(solve(&parse("B a b T")), Verdict::Yes);
        assert_eq!(solve(&parse("B t b")), Verdict::No);
        assert_eq!(solve(&parse("t^-1 a t a^-2")), Verdict::Yes);
        assert_eq!(solve(&parse("b")), Verdict::No);
        assert_eq!(solve(&parse("t")), Verdict::No);
    }

    #[test]
    fn solve_commutators_with_hard_words() {
        for k in 0..=3 {
            let w = commutator(&hard_word(k), &parse("a"));
            assert_eq!(solve(&w), Verdict::Yes, "[w_{k}, a]");
        }
        // w_k is a power of a, so it never commutes with b.
        for k in 0..=2 {
            let w = commutator(&hard_word(k), &parse("b"));
            assert_eq!(solve(&w), Verdict::No, "[w_{k}, b]");
        }
    }

    #[test]
    fn solve_tower_identities() {
        for k in 0..=3 {
            let mut w = hard_word(k);
            let t = tower2(k).to_i64().unwrap();
            w.push(Letter::A, PowerCircuit::constant(-t));
            assert_eq!(solve(&w), Verdict::Yes, "w_{k} = a^{t}");
            // And the off-by-one sanity check.
            let mut wrong = hard_word(k);
            wrong.push(Letter::A, PowerCircuit::constant(-t - 1));
            assert_eq!(solve(&wrong), Verdict::No);
        }
    }

    #[test]
    fn solve_orders_agree() {
        for text in [
            RELATOR,
            "B a b T",
            "B t b",
            "b a B t",
            "B a b B a b t^-2",
            "b T B a",
        ] {
            let w = parse(text);
            assert_eq!(
                solve_with_order(&w, PinchOrder::LeftmostFirst).0,
                solve_with_order(&w, PinchOrder::RightmostFirst).0,
                "{text}"
            );
        }
        for k in 0..=2 {
            let w = commutator(&hard_word(k), &parse("a"));
            assert_eq!(
                solve_with_order(&w, PinchOrder::LeftmostFirst).0,
                solve_with_order(&w, PinchOrder::RightmostFirst).0
            );
        }
    }

    #[test]
    fn collapse_to_base_exposes_tower() {
        for k in 0..=3 {
            let base = collapse_to_base(&hard_word(k)).unwrap();
            let nf = match bs_normalize(&base) {
                BsOutcome::Collapsed(nf) => nf,
                BsOutcome::Irreducible => panic!("w_{k} collapses"),
            };
            assert_eq!(nf.a_exp.eval(1 << 17).unwrap(), tower2(k));
            assert!(nf.t_exp.is_zero().unwrap());
        }
        assert!(collapse_to_base(&parse("B t b")).is_none());
    }

    #[test]
    fn naive_examples() {
        assert_eq!(naive_solve(&parse(RELATOR), 1_000_000, 1 << 20), NaiveOutcome::Yes);
        assert_eq!(naive_solve(&parse("a"), 1_000_000, 1 << 20), NaiveOutcome::No);
        // w_3 · a^-16 → Yes
        let mut w = hard_word(3);
        w.push(Letter::A, PowerCircuit::constant(-16));
        assert_eq!(naive_solve(&w, 1_000_000, 1 << 20), NaiveOutcome::Yes);
        // w_6 exceeds the step cap long before anything else.
        let mut w6 = hard_word(6);
        w6.push(Letter::A, PowerCircuit::constant(-1)); // keep it non-trivial either way
        assert_eq!(
            naive_solve(&w6, 1_000_000, 1 << 20),
            NaiveOutcome::ResourceExceeded(Resource::Steps)
        );
    }

    #[test]
    fn naive_work_metric_separates_w4_and_w5() {
        // The rationale for the default caps: the baseline still decides
        // w_4 = a^65536 but drowns on w_5.
        let mut w4 = hard_word(4);
        w4.push(Letter::A, PowerCircuit::constant(-65536));
        assert_eq!(naive_solve(&w4, 1_000_000, 1 << 20), NaiveOutcome::Yes);
        let w5 = commutator(&hard_word(5), &parse("a"));
        assert!(matches!(
            naive_solve(&w5, 1_000_000, 1 << 20),
            NaiveOutcome::ResourceExceeded(_)
        ));
    }

    #[test]
    fn hard_word_shapes() {
        assert_eq!(hard_word(0).to_word_string(64).unwrap(), "a");
        // w_1 is the conjugation form of the relator, 7 letters.
        assert_eq!(
            hard_word(1).to_word_string(64).unwrap(),
            "b^-1 a^-1 b a b^-1 a b"
        );
        // Literal letter length is 6·2^k - 5; the freely-reduced syllable
        // count is 2^{k+2} - 1.
        for k in 0..=6 {
            let w = hard_word(k);
            assert_eq!(w.len() as u64, 6 * (1 << k) - 5, "literal length of w_{k}");
            let reduced = w.reduce();
            if k >= 1 {
                assert_eq!(reduced.len() as u64, (1 << (k + 2)) - 1, "syllables of w_{k}");
            }
            assert!(reduced.len() as u64 <= 1 << (k + 2));
        }
    }

    #[test]
    fn tower_values() {
        assert_eq!(tower2(0), BigInt::from(1));
        assert_eq!(tower2(1), BigInt::from(2));
        assert_eq!(tower2(2), BigInt::from(4));
        assert_eq!(tower2(3), BigInt::from(16));
        assert_eq!(tower2(4), BigInt::from(65536));
        assert_eq!(tower2(5).magnitude().bits(), 65537);
    }

    #[test]
    #[should_panic]
    fn tower_rejects_large_k() {
        tower2(6);
    }

    #[test]
    fn commutator_examples() {
        let w = parse("a b t^-2");
        assert_eq!(solve(&commutator(&w, &PowerSequence::new())), Verdict::Yes);
        assert_eq!(solve(&commutator(&parse("a"), &parse("a"))), Verdict::Yes);
        assert_eq!(solve(&commutator(&hard_word(1), &parse("a"))), Verdict::Yes);
    }

    #[test]
    fn growth_accounting_on_small_words() {
        for text in [RELATOR, "B a b T", "B t b", "b a B a b A B t"] {
            let (_, stats) = solve_with_stats(&parse(text));
            assert!(stats.marks_monotone, "{text}");
            assert!(stats.vertex_bound_ok, "{text}");
        }
        let (_, stats) = solve_with_stats(&commutator(&hard_word(3), &parse("a")));
        assert!(stats.marks_monotone);
        assert!(stats.vertex_bound_ok);
        assert!(stats.replacements > 0);
    }
}
