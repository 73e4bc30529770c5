//! Reduction of power circuits: an equivalent circuit in which distinct
//! vertices have distinct values, together with the total order of the
//! vertices by value. Equality, sign, comparison and divisibility tests all
//! run on the reduced form without ever materializing a value.
//!
//! The construction processes vertices in topological order (targets first)
//! and maintains the processed part as a sorted list of pairwise-distinct
//! vertices. Everything rests on one primitive: deciding the sign of a small
//! signed combination `Σ c_i · E(w_i)` over the sorted support. Since the
//! values are `0` or distinct powers of two, the sign is computable from the
//! *ratios* of adjacent support values alone, and only the ratio classes
//! `2`, `4` and `>=8` matter for the coefficient magnitudes that arise here.
//! Those classes are tracked as gap flags alongside the sorted list.
//!
//! A new vertex is compared against the support by binary search; an equal
//! value triggers a merge (incoming edges and marks are redirected), and a
//! merge can produce coefficient-2 edges or double marks, which carry over
//! to the vertex of twice the value — inserted on demand as a fresh vertex
//! whose exponent is the merged vertex's exponent plus one. Carries cascade.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::circuit::{PowerCircuit, Sign, VertexId};
use crate::error::Error;

/// A power circuit in normal form: all vertex values distinct, exactly the
/// vertices listed in `order`, ascending by value.
#[derive(Debug, Clone)]
pub struct ReducedCircuit {
    circuit: PowerCircuit,
    order: Vec<VertexId>,
    position: BTreeMap<VertexId, usize>,
}

impl ReducedCircuit {
    pub fn circuit(&self) -> &PowerCircuit {
        &self.circuit
    }

    pub fn into_circuit(self) -> PowerCircuit {
        self.circuit
    }

    /// Vertices in strictly ascending value order.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Sign of `E(u) - E(v)`. In a reduced circuit `Equal` implies `u == v`.
    pub fn compare_vertices(&self, u: VertexId, v: VertexId) -> Ordering {
        self.position[&u].cmp(&self.position[&v])
    }

    /// Sign of the represented value: the mark sign of the maximal marked
    /// vertex, since the largest power of two dominates the rest of the sum.
    pub fn value_sign(&self) -> Ordering {
        for &v in self.order.iter().rev() {
            if let Some(s) = self.circuit.mark_of(v) {
                return match s {
                    Sign::Plus => Ordering::Greater,
                    Sign::Minus => Ordering::Less,
                };
            }
        }
        Ordering::Equal
    }

    /// Whether `2^N(q)` divides the represented value; requires `N(q) >= 0`.
    ///
    /// The minimal marked vertex `v` carries the 2-adic valuation of the
    /// whole sum, and `E(v) = 2^x` where `x` is the value of the exponent
    /// circuit of `v` (same graph, marks moved to `v`'s edge targets), so
    /// the test is `x >= N(q)`.
    pub fn divisible_by(&self, q: &PowerCircuit) -> Result<bool, Error> {
        debug_assert!(
            q.sign().map(|s| s != Ordering::Less).unwrap_or(true),
            "divisor exponent must be non-negative"
        );
        let min_marked = self
            .order
            .iter()
            .find(|&&v| self.circuit.mark_of(v).is_some());
        let Some(&v) = min_marked else {
            return Ok(true); // zero is divisible by everything
        };
        let mut exponent = self.circuit.clone();
        for (m, _) in self.circuit.marks() {
            exponent.set_mark(m, None);
        }
        for (t, s) in self.circuit.out_edges(v) {
            exponent.set_mark(t, Some(s));
        }
        Ok(exponent.compare(q)? != Ordering::Less)
    }
}

impl PowerCircuit {
    /// Builds the reduced normal form. Fails with [`Error::NonInteger`] if
    /// some vertex has a negative exponent sum.
    pub fn reduce(&self) -> Result<ReducedCircuit, Error> {
        Reducer::run(self)
    }

    /// Sign of the represented value.
    pub fn sign(&self) -> Result<Ordering, Error> {
        Ok(self.reduce()?.value_sign())
    }

    /// Sign of `N(self) - N(other)`.
    pub fn compare(&self, other: &PowerCircuit) -> Result<Ordering, Error> {
        self.subtract(other).sign()
    }

    /// Whether the represented value is zero: a reduced circuit represents
    /// zero exactly when it has no marked vertices.
    pub fn is_zero(&self) -> Result<bool, Error> {
        Ok(self.reduce()?.circuit().mark_count() == 0)
    }

    /// Whether `2^N(q)` divides `N(self)`; requires `N(q) >= 0`.
    pub fn divisible_by_pow2(&self, q: &PowerCircuit) -> Result<bool, Error> {
        self.reduce()?.divisible_by(q)
    }
}

/// Ratio class between adjacent support values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gap {
    Two,
    Four,
    EightUp,
}

const UNPLACED: usize = usize::MAX;

struct Reducer {
    /// Out-edges as `target -> coefficient` with coefficients in `{-1, +1}`.
    out: Vec<BTreeMap<usize, i8>>,
    ins: Vec<BTreeSet<usize>>,
    mark: Vec<i8>,
    alive: Vec<bool>,
    /// Sorted support: processed vertices ascending by value; `order[0]` is
    /// the sink when the circuit has one.
    order: Vec<usize>,
    /// Vertex -> position in `order`, `UNPLACED` before processing.
    pos: Vec<usize>,
    /// `gaps[i]` relates `order[i]` to `order[i+1]`. `gaps[0]` (sink to the
    /// value-1 vertex) is a placeholder and never read.
    gaps: Vec<Gap>,
    sink: usize,
}

impl Reducer {
    fn run(input: &PowerCircuit) -> Result<ReducedCircuit, Error> {
        if input.vertex_count() == 0 {
            return Ok(ReducedCircuit {
                circuit: PowerCircuit::empty(),
                order: Vec::new(),
                position: BTreeMap::new(),
            });
        }
        let collapsed = input.collapse_zero_vertices();
        let ids: Vec<VertexId> = collapsed.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let n = ids.len();

        let mut out: Vec<BTreeMap<usize, i8>> = vec![BTreeMap::new(); n];
        let mut ins: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (s, t, sign) in collapsed.edges() {
            out[index[&s]].insert(index[&t], sign.as_i8());
            ins[index[&t]].insert(index[&s]);
        }
        let mut mark = vec![0i8; n];
        for (v, sign) in collapsed.marks() {
            mark[index[&v]] = sign.as_i8();
        }
        let sinks: Vec<usize> = (0..n).filter(|&v| out[v].is_empty()).collect();
        debug_assert_eq!(sinks.len(), 1, "collapse leaves exactly one sink");
        let sink = sinks[0];
        mark[sink] = 0; // a marked sink contributes 0

        let topo = collapsed
            .topo_order()
            .expect("power circuits are acyclic");

        let mut red = Reducer {
            out,
            ins,
            mark,
            alive: vec![true; n],
            order: Vec::new(),
            pos: vec![UNPLACED; n],
            gaps: Vec::new(),
            sink,
        };

        for v in topo {
            let u = index[&v];
            if u == sink {
                debug_assert!(red.order.is_empty());
                red.order.push(sink);
                red.pos[sink] = 0;
                continue;
            }
            red.process(u)?;
        }
        Ok(red.finish())
    }

    /// Coefficient vector of `v`'s exponent over support positions, sorted.
    /// Edges into the sink contribute nothing and are dropped.
    fn coeff_vec(&self, v: usize) -> Vec<(usize, i32)> {
        let mut cs: Vec<(usize, i32)> = self.out[v]
            .iter()
            .filter(|&(&t, _)| t != self.sink)
            .map(|(&t, &c)| {
                debug_assert_ne!(self.pos[t], UNPLACED, "targets are processed first");
                (self.pos[t], c as i32)
            })
            .collect();
        cs.sort_unstable();
        cs
    }

    /// Merges two sorted coefficient vectors as `a + factor * b`.
    fn merge_coeffs(
        a: &[(usize, i32)],
        b: &[(usize, i32)],
        factor: i32,
    ) -> Vec<(usize, i32)> {
        let mut outv = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&(pa, ca)), Some(&(pb, cb))) => match pa.cmp(&pb) {
                    Ordering::Less => {
                        i += 1;
                        (pa, ca)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (pb, factor * cb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (pa, ca + factor * cb)
                    }
                },
                (Some(&(pa, ca)), None) => {
                    i += 1;
                    (pa, ca)
                }
                (None, Some(&(pb, cb))) => {
                    j += 1;
                    (pb, factor * cb)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                outv.push(next);
            }
        }
        outv
    }

    /// Sign of `Σ c_i · V(order[p_i])` for a sorted coefficient list with
    /// `|c_i| <= 3`. Exact: scans bottom-up keeping the partial sum as
    /// `r · V(current)` plus a strictly smaller residue of known sign; the
    /// gap flags say how `r` rescales from one support value to the next,
    /// and the coefficient bound keeps `|r| <= 6` throughout, small enough
    /// that the three ratio classes decide every case.
    fn combo_sign(&self, coeffs: &[(usize, i32)]) -> i32 {
        let mut r: i64 = 0;
        let mut residue: i64 = 0;
        let mut cur = 0usize;
        for &(p, c) in coeffs {
            debug_assert!(p >= 1, "sink coefficients are dropped");
            debug_assert!(c.abs() <= 3);
            if c == 0 {
                continue;
            }
            if r == 0 {
                cur = p;
                r = c as i64;
                continue;
            }
            while cur < p && r != 0 {
                let (q, s) = match self.gaps[cur] {
                    Gap::Two => (r / 2, r % 2),
                    Gap::Four => (r / 4, r % 4),
                    Gap::EightUp => (0, r),
                };
                if s != 0 {
                    residue = s.signum();
                }
                r = q;
                cur += 1;
            }
            if r == 0 {
                cur = p;
                r = c as i64;
            } else {
                debug_assert_eq!(cur, p);
                r += c as i64;
            }
            debug_assert!(r.abs() <= 6);
        }
        if r != 0 {
            r.signum() as i32
        } else {
            residue as i32
        }
    }

    /// Sign of `exp(a) - exp(b)` for non-sink vertices whose targets are in
    /// the support; this also orders `E(a)` against `E(b)`.
    fn cmp_exp(&self, a: usize, b: usize) -> i32 {
        let va = self.coeff_vec(a);
        let vb = self.coeff_vec(b);
        self.combo_sign(&Self::merge_coeffs(&va, &vb, -1))
    }

    /// Whether `exp(hi) - exp(lo) == k` for `k` in `{1, 2}`, i.e. whether
    /// `V(hi)` is `2^k · V(lo)`. The constants are expressed through the
    /// value-1 and value-2 support vertices, which sit at positions 1 and 2
    /// whenever they exist at all (the smallest two non-sink values in any
    /// integral circuit are forced to be 1 and 2).
    fn exp_diff_is(&self, hi: usize, lo: usize, k: usize) -> bool {
        debug_assert!(k == 1 || k == 2);
        let basis_pos = k; // position of the value-2^(k-1) vertex
        if self.order.len() <= basis_pos {
            // No vertex of value k exists, and with a support this small the
            // difference of two exponents can never reach k.
            return false;
        }
        let vhi = self.coeff_vec(hi);
        let vlo = self.coeff_vec(lo);
        let mut diff = Self::merge_coeffs(&vhi, &vlo, -1);
        diff = Self::merge_coeffs(&diff, &[(basis_pos, 1)], -1);
        self.combo_sign(&diff) == 0
    }

    fn gap_between(&self, lo: usize, hi: usize) -> Gap {
        if self.exp_diff_is(hi, lo, 1) {
            Gap::Two
        } else if self.exp_diff_is(hi, lo, 2) {
            Gap::Four
        } else {
            Gap::EightUp
        }
    }

    fn process(&mut self, u: usize) -> Result<(), Error> {
        let vec_u = self.coeff_vec(u);
        if self.combo_sign(&vec_u) < 0 {
            return Err(Error::NonInteger);
        }
        // Binary search over the non-sink support.
        let mut lo = 1usize;
        let mut hi = self.order.len();
        let mut equal: Option<usize> = None;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.cmp_exp(u, self.order[mid]) {
                0 => {
                    equal = Some(mid);
                    break;
                }
                x if x < 0 => hi = mid,
                _ => lo = mid + 1,
            }
        }
        match equal {
            Some(m) => self.merge_into(u, self.order[m]),
            None => self.insert_at(u, lo),
        }
        Ok(())
    }

    /// Places `u` (a new, distinct value) at position `p` in the support.
    fn insert_at(&mut self, u: usize, p: usize) {
        debug_assert!(p >= 2 || self.order.len() == 1, "values below 1 cannot occur");
        let lower = (p >= 2).then(|| self.gap_between(self.order[p - 1], u));
        let upper = (p < self.order.len()).then(|| self.gap_between(u, self.order[p]));
        self.splice(u, p, lower, upper);
    }

    /// Inserts `u` at position `p`, with `lower`/`upper` the gap classes to
    /// its new neighbours (`None` at the sink boundary or the top).
    fn splice(&mut self, u: usize, p: usize, lower: Option<Gap>, upper: Option<Gap>) {
        self.order.insert(p, u);
        let lower = lower.unwrap_or(Gap::EightUp); // placeholder above the sink
        match upper {
            Some(g) => {
                self.gaps[p - 1] = lower;
                self.gaps.insert(p, g);
            }
            None => {
                self.gaps.push(lower);
            }
        }
        for i in p..self.order.len() {
            self.pos[self.order[i]] = i;
        }
    }

    /// Redirects everything pointing at `u` to the equal-valued `m`, moves
    /// the mark, and drops `u`.
    fn merge_into(&mut self, u: usize, m: usize) {
        let sources: Vec<usize> = self.ins[u].iter().copied().collect();
        for x in sources {
            debug_assert_eq!(self.pos[x], UNPLACED, "support vertices never point at new ones");
            let s = self.out[x].remove(&u).expect("in/out adjacency in sync");
            self.add_coeff(x, m, s);
        }
        self.ins[u].clear();
        if self.mark[u] != 0 {
            let s = self.mark[u];
            self.mark[u] = 0;
            self.add_mark(m, s);
        }
        let targets: Vec<usize> = self.out[u].keys().copied().collect();
        for t in targets {
            self.ins[t].remove(&u);
        }
        self.out[u].clear();
        self.alive[u] = false;
    }

    /// Adds `s` to the edge coefficient of `x` at `v`, carrying coefficient
    /// `±2` to the successor vertex. A cancellation that would leave `x`
    /// with no out-edges puts a sink edge in place so `x` keeps exponent 0
    /// instead of becoming a zero vertex.
    fn add_coeff(&mut self, x: usize, v: usize, s: i8) {
        debug_assert!(s == 1 || s == -1);
        debug_assert_ne!(v, self.sink, "carries never target the sink");
        match self.out[x].get(&v).copied() {
            None => {
                self.out[x].insert(v, s);
                self.ins[v].insert(x);
            }
            Some(t) if t == -s => {
                self.out[x].remove(&v);
                self.ins[v].remove(&x);
                if self.out[x].is_empty() {
                    self.out[x].insert(self.sink, 1);
                    self.ins[self.sink].insert(x);
                }
            }
            Some(_) => {
                self.out[x].remove(&v);
                self.ins[v].remove(&x);
                let sv = self.successor(v);
                self.add_coeff(x, sv, s);
            }
        }
    }

    /// Adds a mark of sign `s` to `v`; a double mark of one sign carries to
    /// the successor, opposite marks cancel.
    fn add_mark(&mut self, v: usize, s: i8) {
        debug_assert!(s == 1 || s == -1);
        debug_assert_ne!(v, self.sink);
        match self.mark[v] {
            0 => self.mark[v] = s,
            t if t == -s => self.mark[v] = 0,
            _ => {
                self.mark[v] = 0;
                let sv = self.successor(v);
                self.add_mark(sv, s);
            }
        }
    }

    /// Support vertex of value `2·V(v)`, inserting it if absent. The fresh
    /// vertex copies `v`'s edges and increments the exponent by one, which
    /// itself may cascade through the low end of the support.
    fn successor(&mut self, v: usize) -> usize {
        let pv = self.pos[v];
        debug_assert!(pv != UNPLACED && pv >= 1);
        if pv + 1 < self.order.len() && self.gaps[pv] == Gap::Two {
            return self.order[pv + 1];
        }
        let nv = self.new_vertex();
        let targets: Vec<(usize, i8)> = self.out[v].iter().map(|(&t, &c)| (t, c)).collect();
        for (t, c) in targets {
            self.out[nv].insert(t, c);
            self.ins[t].insert(nv);
        }
        let one = self.order[1]; // the value-1 vertex
        self.add_coeff(nv, one, 1);
        // The increment may have inserted vertices below; re-resolve v.
        let pv = self.pos[v];
        debug_assert!(
            pv + 1 >= self.order.len() || self.gaps[pv] != Gap::Two,
            "cascade insertions stay strictly below 2·V(v)"
        );
        let upper = if pv + 1 < self.order.len() {
            let above = self.order[pv + 1];
            Some(match self.gaps[pv] {
                Gap::Two => unreachable!(),
                Gap::Four => Gap::Two,
                Gap::EightUp => {
                    if self.exp_diff_is(above, nv, 2) {
                        Gap::Four
                    } else {
                        Gap::EightUp
                    }
                }
            })
        } else {
            None
        };
        self.splice(nv, pv + 1, Some(Gap::Two), upper);
        nv
    }

    fn new_vertex(&mut self) -> usize {
        self.out.push(BTreeMap::new());
        self.ins.push(BTreeSet::new());
        self.mark.push(0);
        self.alive.push(true);
        self.pos.push(UNPLACED);
        self.out.len() - 1
    }

    /// Drops unreferenced, unmarked non-sink vertices and rebuilds a fresh
    /// circuit with ids assigned in value order.
    fn finish(mut self) -> ReducedCircuit {
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..self.out.len() {
                if v != self.sink && self.alive[v] && self.mark[v] == 0 && self.ins[v].is_empty() {
                    self.alive[v] = false;
                    changed = true;
                    let targets: Vec<usize> = self.out[v].keys().copied().collect();
                    for t in targets {
                        self.ins[t].remove(&v);
                    }
                    self.out[v].clear();
                }
            }
        }
        let final_order: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&v| self.alive[v])
            .collect();
        let mut circuit = PowerCircuit::empty();
        let mut new_id: BTreeMap<usize, VertexId> = BTreeMap::new();
        for &v in &final_order {
            new_id.insert(v, circuit.add_vertex());
        }
        for &v in &final_order {
            for (&t, &c) in &self.out[v] {
                let sign = if c > 0 { Sign::Plus } else { Sign::Minus };
                circuit.add_edge(new_id[&v], new_id[&t], sign);
            }
            if self.mark[v] != 0 {
                let sign = if self.mark[v] > 0 { Sign::Plus } else { Sign::Minus };
                circuit.set_mark(new_id[&v], Some(sign));
            }
        }
        let order: Vec<VertexId> = final_order.iter().map(|v| new_id[v]).collect();
        let position = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        ReducedCircuit {
            circuit,
            order,
            position,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn n(c: &PowerCircuit) -> i64 {
        c.eval(512).unwrap().to_i64().unwrap()
    }

    fn assert_reduced_invariants(r: &ReducedCircuit) {
        let c = r.circuit();
        assert_eq!(r.order().len(), c.vertex_count());
        // Strictly ascending distinct values, checked by the oracle.
        let values: Vec<BigInt> = r
            .order()
            .iter()
            .map(|&v| c.eval_vertex(v, 1 << 12).unwrap())
            .collect();
        for w in values.windows(2) {
            assert!(w[0] < w[1], "order not strictly ascending: {w:?}");
        }
        // At most one sink, never marked.
        assert!(c.sinks().len() <= 1);
        for s in c.sinks() {
            assert!(c.mark_of(s).is_none());
        }
    }

    #[test]
    fn reduce_constants() {
        for v in [0i64, 1, -1, 2, 16, 35, -35, 1000, -77] {
            let c = PowerCircuit::constant(v);
            let r = c.reduce().unwrap();
            assert_eq!(n(r.circuit()), v, "value preserved for {v}");
            assert_reduced_invariants(&r);
            assert!(r.circuit().mark_count() <= c.mark_count());
        }
    }

    #[test]
    fn reduce_merges_equal_values_with_carry() {
        // Two marked vertices of value 2 with plus signs: after merging, the
        // double mark carries to a fresh vertex of value 4.
        let mut c = PowerCircuit::empty();
        let z = c.add_vertex();
        let one = c.add_vertex();
        c.add_edge(one, z, Sign::Plus);
        let a = c.add_vertex();
        c.add_edge(a, one, Sign::Plus);
        let b = c.add_vertex();
        c.add_edge(b, one, Sign::Plus);
        c.set_mark(a, Some(Sign::Plus));
        c.set_mark(b, Some(Sign::Plus));
        assert_eq!(n(&c), 4);
        let r = c.reduce().unwrap();
        assert_eq!(n(r.circuit()), 4);
        assert_reduced_invariants(&r);
        assert_eq!(r.circuit().mark_count(), 1);
        let (m, s) = r.circuit().marks().next().unwrap();
        assert_eq!(s, Sign::Plus);
        assert_eq!(r.circuit().eval_vertex(m, 64).unwrap(), BigInt::from(4));
    }

    #[test]
    fn reduce_cancels_opposite_marks() {
        let c = PowerCircuit::constant(3).subtract(&PowerCircuit::constant(3));
        let r = c.reduce().unwrap();
        assert_eq!(r.circuit().mark_count(), 0);
        assert_eq!(n(r.circuit()), 0);
    }

    #[test]
    fn reduce_normalizes_parallel_edges() {
        // x points at two distinct vertices of equal value; after the merge
        // the doubled coefficient moves to the successor value.
        let mut c = PowerCircuit::empty();
        let z = c.add_vertex();
        let u = c.add_vertex();
        c.add_edge(u, z, Sign::Plus);
        let v = c.add_vertex();
        c.add_edge(v, z, Sign::Plus);
        let x = c.add_vertex();
        c.add_edge(x, u, Sign::Plus);
        c.add_edge(x, v, Sign::Plus);
        c.set_mark(x, Some(Sign::Plus));
        assert_eq!(n(&c), 4); // 2^(1+1)
        let r = c.reduce().unwrap();
        assert_eq!(n(r.circuit()), 4);
        assert_reduced_invariants(&r);
    }

    #[test]
    fn reduce_is_idempotent() {
        for v in [35i64, -1000, 77, 12345] {
            let r1 = PowerCircuit::constant(v).reduce().unwrap();
            let r2 = r1.circuit().reduce().unwrap();
            assert_eq!(r1.circuit(), r2.circuit(), "idempotence for {v}");
            assert_eq!(r1.order(), r2.order());
        }
    }

    #[test]
    fn reduce_rejects_non_integral() {
        let mut c = PowerCircuit::empty();
        let z = c.add_vertex();
        let one = c.add_vertex();
        c.add_edge(one, z, Sign::Plus);
        let bad = c.add_vertex();
        c.add_edge(bad, one, Sign::Minus);
        c.set_mark(bad, Some(Sign::Plus));
        assert_eq!(c.reduce().err(), Some(Error::NonInteger));
        assert_eq!(c.sign().err(), Some(Error::NonInteger));
    }

    #[test]
    fn reduce_handles_deep_chains_without_eval() {
        // Values reach a tower of height 60; evaluation is impossible but
        // reduction is structural.
        let mut c = PowerCircuit::empty();
        let mut prev = c.add_vertex();
        for _ in 0..60 {
            let v = c.add_vertex();
            c.add_edge(v, prev, Sign::Plus);
            prev = v;
        }
        c.set_mark(prev, Some(Sign::Plus));
        let r = c.reduce().unwrap();
        assert_eq!(r.circuit().vertex_count(), 61);
        assert_eq!(r.circuit().sign().ok(), Some(Ordering::Greater));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(PowerCircuit::zero().sign().unwrap(), Ordering::Equal);
        assert_eq!(PowerCircuit::constant(35).sign().unwrap(), Ordering::Greater);
        assert_eq!(PowerCircuit::constant(-35).sign().unwrap(), Ordering::Less);
    }

    #[test]
    fn compare_examples() {
        let p = PowerCircuit::constant(7);
        assert_eq!(p.compare(&p).unwrap(), Ordering::Equal);
        assert_eq!(
            PowerCircuit::constant(16).compare(&PowerCircuit::constant(2)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            PowerCircuit::constant(2).compare(&PowerCircuit::constant(16)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn compare_vertices_examples() {
        let r = PowerCircuit::constant(35).reduce().unwrap();
        for &v in r.order() {
            assert_eq!(r.compare_vertices(v, v), Ordering::Equal);
        }
        let sink = r.circuit().sinks()[0];
        for &v in r.order() {
            if v != sink {
                assert_eq!(r.compare_vertices(sink, v), Ordering::Less);
            }
        }
    }

    #[test]
    fn is_zero_examples() {
        assert!(PowerCircuit::zero().is_zero().unwrap());
        let p = PowerCircuit::constant(123);
        assert!(p.subtract(&p).is_zero().unwrap());
        assert!(!PowerCircuit::constant(1).is_zero().unwrap());
    }

    #[test]
    fn divisibility_examples() {
        let c16 = PowerCircuit::constant(16);
        assert!(c16.divisible_by_pow2(&PowerCircuit::constant(3)).unwrap());
        assert!(!PowerCircuit::constant(35)
            .divisible_by_pow2(&PowerCircuit::constant(1))
            .unwrap());
        assert!(PowerCircuit::zero()
            .divisible_by_pow2(&PowerCircuit::constant(5))
            .unwrap());
        assert!(c16.divisible_by_pow2(&PowerCircuit::constant(4)).unwrap());
        assert!(!c16.divisible_by_pow2(&PowerCircuit::constant(5)).unwrap());
    }

    #[test]
    fn vertex_growth_bounded_by_marks() {
        for v in [35i64, 1000, -77, 4095] {
            let c = PowerCircuit::constant(v).add(&PowerCircuit::constant(v));
            let r = c.reduce().unwrap();
            assert!(
                r.circuit().vertex_count() <= c.vertex_count() + c.mark_count(),
                "growth bound for {v}"
            );
        }
    }
}
