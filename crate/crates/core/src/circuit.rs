//! Power circuits: DAG-compressed integers.
//!
//! A power circuit is a directed acyclic graph with `+`/`-` labelled edges
//! and a set of `+`/`-` marked vertices. Every vertex evaluates to a
//! non-negative integer: a vertex with no outgoing edges evaluates to `0`,
//! any other vertex to `2^s` where `s` is the signed sum of the values of
//! its edge targets. The circuit as a whole represents the signed sum of
//! its marked vertices.
//!
//! The point of the representation is that addition, subtraction and
//! multiplication/division by `2^x` are cheap graph surgeries that never
//! decompress the value, so numbers far beyond any fixed tower of exponents
//! stay workable. [`PowerCircuit::eval`] is the arbitrary-precision oracle
//! used to cross-check the structural operations at desk scale.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default cap, in bits, on any value materialized by [`PowerCircuit::eval`].
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Identifier of a vertex, unique within one circuit.
///
/// Ids are allocated monotonically per circuit; operations that combine two
/// circuits renumber the second operand, so ids are only meaningful relative
/// to the circuit value that handed them out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn raw(self) -> u32 {
        self.0
    }

    pub(crate) fn new(raw: u32) -> Self {
        VertexId(raw)
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sign of an edge label or of a vertex mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(n: i64) -> Option<Sign> {
        match n.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A power circuit. See the module docs for the semantics.
///
/// Values are immutable from a caller's point of view: every arithmetic
/// operation builds a fresh circuit and leaves its inputs untouched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCircuit {
    next_id: u32,
    vertices: BTreeSet<VertexId>,
    /// `(source, target) -> label`; at most one edge per ordered pair.
    edges: BTreeMap<(VertexId, VertexId), Sign>,
    /// Marked vertices with their signs.
    marks: BTreeMap<VertexId, Sign>,
}

impl Default for PowerCircuit {
    fn default() -> Self {
        PowerCircuit::zero()
    }
}

impl PowerCircuit {
    /// Circuit with a single unmarked vertex; represents `0`.
    pub fn zero() -> Self {
        let mut c = PowerCircuit::empty();
        c.add_vertex();
        c
    }

    /// Circuit with no vertices at all. Also represents `0`; [`zero`] is the
    /// canonical form used throughout.
    ///
    /// [`zero`]: PowerCircuit::zero
    pub fn empty() -> Self {
        PowerCircuit {
            next_id: 0,
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            marks: BTreeMap::new(),
        }
    }

    /// Circuit representing the machine integer `n`.
    ///
    /// Uses the binary expansion of `|n|`: one marked vertex per set bit,
    /// with the bit positions encoded over a shared chain of vertices whose
    /// values are the powers of two actually needed. The vertex count is at
    /// most `2*ceil(log2(|n|+2)) + 2`.
    pub fn constant(n: i64) -> Self {
        if n == 0 {
            return PowerCircuit::zero();
        }
        let magnitude = n.unsigned_abs();
        let sign = if n > 0 { Sign::Plus } else { Sign::Minus };

        // Exponents whose power-of-two vertices are needed: the set bits of
        // the magnitude, closed under taking set bits of the exponents
        // themselves.
        let mut needed = BTreeSet::new();
        let mut queue: Vec<u64> = (0..64).filter(|b| magnitude >> b & 1 == 1).collect();
        while let Some(e) = queue.pop() {
            if needed.insert(e) {
                queue.extend((0..64).filter(|b| e >> b & 1 == 1));
            }
        }

        let mut c = PowerCircuit::empty();
        let sink = c.add_vertex();
        let mut vertex_of_exp: BTreeMap<u64, VertexId> = BTreeMap::new();
        for &e in &needed {
            let v = c.add_vertex();
            if e == 0 {
                c.add_edge(v, sink, Sign::Plus);
            } else {
                for b in 0..64 {
                    if e >> b & 1 == 1 {
                        c.add_edge(v, vertex_of_exp[&b], Sign::Plus);
                    }
                }
            }
            vertex_of_exp.insert(e, v);
        }
        for b in 0..64 {
            if magnitude >> b & 1 == 1 {
                c.set_mark(vertex_of_exp[&b], Some(sign));
            }
        }
        c
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn mark_count(&self) -> usize {
        self.marks.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Sign)> + '_ {
        self.edges.iter().map(|(&(s, t), &sg)| (s, t, sg))
    }

    pub fn marks(&self) -> impl Iterator<Item = (VertexId, Sign)> + '_ {
        self.marks.iter().map(|(&v, &s)| (v, s))
    }

    pub fn mark_of(&self, v: VertexId) -> Option<Sign> {
        self.marks.get(&v).copied()
    }

    /// Outgoing edges of `v` as `(target, label)` pairs.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Sign)> + '_ {
        self.edges
            .range((v, VertexId(0))..=(v, VertexId(u32::MAX)))
            .map(|(&(_, t), &s)| (t, s))
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges(v).count()
    }

    /// A sink evaluates to zero.
    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges(v).next().is_none()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    /// Adds a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_id);
        self.next_id += 1;
        self.vertices.insert(v);
        v
    }

    /// Adds a vertex under a caller-chosen id (used by the text parser to
    /// keep file numbering). Panics if the id is taken.
    pub(crate) fn add_vertex_with_id(&mut self, raw: u32) -> VertexId {
        let v = VertexId(raw);
        assert!(self.vertices.insert(v), "vertex id {raw} already present");
        self.next_id = self.next_id.max(raw + 1);
        v
    }

    /// Adds an edge. Panics if either endpoint is missing or the ordered
    /// pair already carries an edge; acyclicity is the caller's contract
    /// (checked by [`validate`]).
    ///
    /// [`validate`]: PowerCircuit::validate
    pub fn add_edge(&mut self, src: VertexId, dst: VertexId, sign: Sign) {
        assert!(self.vertices.contains(&src), "edge source not in circuit");
        assert!(self.vertices.contains(&dst), "edge target not in circuit");
        let prev = self.edges.insert((src, dst), sign);
        assert!(prev.is_none(), "duplicate edge {src} -> {dst}");
    }

    /// Sets or clears the mark on `v`.
    pub fn set_mark(&mut self, v: VertexId, sign: Option<Sign>) {
        assert!(self.vertices.contains(&v), "marked vertex not in circuit");
        match sign {
            Some(s) => {
                self.marks.insert(v, s);
            }
            None => {
                self.marks.remove(&v);
            }
        }
    }

    /// Checks the structural invariants that are not enforced by
    /// construction: every edge endpoint and mark lives in the vertex set
    /// (guaranteed by the builder methods) and the edge relation is acyclic.
    pub fn validate(&self) -> Result<(), Error> {
        if self.topo_order().is_none() {
            return Err(Error::CircuitParse {
                line: 0,
                msg: "circuit contains a directed cycle".into(),
            });
        }
        Ok(())
    }

    /// Topological order in which every vertex appears after its edge
    /// targets, or `None` if the edge relation has a cycle.
    pub(crate) fn topo_order(&self) -> Option<Vec<VertexId>> {
        let mut remaining: BTreeMap<VertexId, usize> = self
            .vertices
            .iter()
            .map(|&v| (v, self.out_degree(v)))
            .collect();
        let mut dependents: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &(s, t) in self.edges.keys() {
            dependents.entry(t).or_default().push(s);
        }
        let mut ready: BTreeSet<VertexId> = remaining
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            if let Some(deps) = dependents.get(&v) {
                for &s in deps {
                    let d = remaining.get_mut(&s).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(s);
                    }
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }

    /// Copies all of `other` into `self` with fresh ids; returns the id map.
    /// Marks are copied as-is, so the result represents the sum.
    pub(crate) fn absorb(&mut self, other: &PowerCircuit) -> BTreeMap<VertexId, VertexId> {
        let mut remap = BTreeMap::new();
        for v in other.vertices() {
            remap.insert(v, self.add_vertex());
        }
        for (s, t, sign) in other.edges() {
            self.add_edge(remap[&s], remap[&t], sign);
        }
        for (v, sign) in other.marks() {
            self.set_mark(remap[&v], Some(sign));
        }
        remap
    }

    /// Sum of two circuits: disjoint union keeping all marks.
    pub fn add(&self, other: &PowerCircuit) -> PowerCircuit {
        let mut out = self.clone();
        out.absorb(other);
        out
    }

    /// Difference: disjoint union with the second operand's marks flipped.
    pub fn subtract(&self, other: &PowerCircuit) -> PowerCircuit {
        self.add(&other.negate())
    }

    /// Flips every mark sign.
    pub fn negate(&self) -> PowerCircuit {
        let mut out = self.clone();
        out.marks = out.marks.into_iter().map(|(v, s)| (v, s.flipped())).collect();
        out
    }

    /// Glues all sinks into one. The value is unchanged; when several sinks
    /// are merged their marks are dropped (a marked sink contributes 0).
    /// A circuit with at most one sink is returned as-is.
    pub fn collapse_zero_vertices(&self) -> PowerCircuit {
        let sinks = self.sinks();
        if sinks.len() <= 1 {
            return self.clone();
        }
        let keep = sinks[0];
        let dropped: BTreeSet<VertexId> = sinks[1..].iter().copied().collect();
        let mut out = PowerCircuit {
            next_id: self.next_id,
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| !dropped.contains(v))
                .collect(),
            edges: BTreeMap::new(),
            marks: self
                .marks
                .iter()
                .filter(|(v, _)| !sinks.contains(v))
                .map(|(&v, &s)| (v, s))
                .collect(),
        };
        for (s, t, sign) in self.edges() {
            let t = if dropped.contains(&t) { keep } else { t };
            // Parallel edges into the sink all contribute 0; keep the first.
            out.edges.entry((s, t)).or_insert(sign);
        }
        out
    }

    /// Returns a circuit of the same value in which every marked vertex is a
    /// source. Marked vertices with incoming edges are cloned: the clone
    /// takes over the mark and a copy of the outgoing edges.
    pub fn make_sources(&self) -> PowerCircuit {
        let mut has_in: BTreeSet<VertexId> = BTreeSet::new();
        for (_, t, _) in self.edges() {
            has_in.insert(t);
        }
        let mut out = self.clone();
        let marked: Vec<(VertexId, Sign)> = self.marks().collect();
        for (v, sign) in marked {
            if has_in.contains(&v) {
                let clone = out.add_vertex();
                let copied: Vec<(VertexId, Sign)> = out.out_edges(v).collect();
                for (t, s) in copied {
                    out.add_edge(clone, t, s);
                }
                out.set_mark(v, None);
                out.set_mark(clone, Some(sign));
            }
        }
        out
    }

    /// The `∙` operation: a circuit representing `N(self) * 2^N(other)`.
    ///
    /// Marked vertices of `self` are made sources, the two graphs are laid
    /// down side by side, every (source) marked vertex of `self` gets an
    /// edge to every marked vertex of `other` labelled with that vertex's
    /// mark sign, and `other`'s marks are removed. A marked sink of `self`
    /// contributes `0 = 0 * 2^x` and must stay a sink; its mark is dropped.
    pub fn mul_pow2(&self, other: &PowerCircuit) -> PowerCircuit {
        let mut out = self.make_sources();
        let own_marks: Vec<VertexId> = out.marks().map(|(v, _)| v).collect();
        let remap = out.absorb(other);
        let exp_marks: Vec<(VertexId, Sign)> =
            other.marks().map(|(v, s)| (remap[&v], s)).collect();
        for &(m, _) in &exp_marks {
            out.set_mark(m, None);
        }
        for &v in &own_marks {
            if out.is_sink(v) {
                out.set_mark(v, None);
                continue;
            }
            for &(m, sign) in &exp_marks {
                out.add_edge(v, m, sign);
            }
        }
        out
    }

    /// The `∘` operation: a circuit representing `N(self) / 2^N(other)`,
    /// or [`Error::NotDivisible`] when the quotient is not an integer.
    ///
    /// Requires `N(other) >= 0` (callers guarantee it); the dividend is
    /// reduced first so that the divisibility test and the edge surgery act
    /// on distinct-valued marked vertices.
    pub fn div_pow2(&self, other: &PowerCircuit) -> Result<PowerCircuit, Error> {
        let reduced = self.reduce()?;
        if !reduced.divisible_by(other)? {
            return Err(Error::NotDivisible);
        }
        Ok(reduced.circuit().mul_pow2(&other.negate()))
    }

    /// Value of a single vertex: `0` for sinks, otherwise `2^s` for the
    /// signed sum `s` of its targets' values.
    pub fn eval_vertex(&self, v: VertexId, bit_budget: u64) -> Result<BigInt, Error> {
        assert!(self.vertices.contains(&v), "vertex not in circuit");
        let values = self.eval_reachable(&[v], bit_budget)?;
        Ok(values[&v].clone())
    }

    /// Value of the circuit: the signed sum over marked vertices. This is
    /// the ground-truth oracle for every structural operation.
    pub fn eval(&self, bit_budget: u64) -> Result<BigInt, Error> {
        let roots: Vec<VertexId> = self.marks.keys().copied().collect();
        let values = self.eval_reachable(&roots, bit_budget)?;
        let mut n = BigInt::zero();
        for (v, sign) in self.marks() {
            n += BigInt::from(sign.as_i8()) * &values[&v];
        }
        if n.magnitude().bits() > bit_budget {
            return Err(Error::BudgetExceeded { budget: bit_budget });
        }
        Ok(n)
    }

    /// [`eval`](PowerCircuit::eval) with [`DEFAULT_BIT_BUDGET`].
    pub fn eval_default(&self) -> Result<BigInt, Error> {
        self.eval(DEFAULT_BIT_BUDGET)
    }

    /// Bottom-up evaluation of every vertex reachable from `roots`.
    fn eval_reachable(
        &self,
        roots: &[VertexId],
        bit_budget: u64,
    ) -> Result<BTreeMap<VertexId, BigInt>, Error> {
        let mut values: BTreeMap<VertexId, BigInt> = BTreeMap::new();
        // Explicit stack; chains get deep enough to care.
        let mut stack: Vec<(VertexId, bool)> = roots.iter().map(|&v| (v, false)).collect();
        while let Some((v, expanded)) = stack.pop() {
            if values.contains_key(&v) {
                continue;
            }
            if !expanded {
                stack.push((v, true));
                for (t, _) in self.out_edges(v) {
                    if !values.contains_key(&t) {
                        stack.push((t, false));
                    }
                }
                continue;
            }
            if self.is_sink(v) {
                values.insert(v, BigInt::zero());
                continue;
            }
            let mut exp = BigInt::zero();
            for (t, sign) in self.out_edges(v) {
                exp += BigInt::from(sign.as_i8()) * &values[&t];
            }
            if exp.is_negative() {
                return Err(Error::NonInteger);
            }
            // 2^exp has exp+1 bits.
            let shift = exp
                .to_u64()
                .filter(|&e| e < bit_budget)
                .ok_or(Error::BudgetExceeded { budget: bit_budget })?;
            values.insert(v, BigInt::one() << shift);
        }
        Ok(values)
    }
}
