//! Toric machinery for the kernel of the shortest-path map.
//!
//! Three layers live here:
//!
//! * **fibers** — enumeration of the nonnegative preimages of an exponent
//!   matrix and the connectivity check that decides whether a set of
//!   binomial moves walks every fiber, degree by degree;
//! * **circular combinatorics** — vertices on a circle, the looped complete
//!   graph whose elements are chords and loops, a weight per `s_ij`
//!   counting the elements disjoint from it, and the quadratic binomials
//!   attached to non-intersecting pairs (which the weight order orients by
//!   a strictly positive, closed-form gap);
//! * **a Buchberger procedure for binomials** — pure differences of
//!   monomials are closed under S-pairs and reduction, so the completion
//!   never leaves that class and stays cheap enough for exact checks.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{biconnected_components, central_vertices, is_block_graph, shortest_path, Graph};
use crate::maps::ExponentMatrix;
use crate::poly::{grevlex_cmp, rat, Monomial, Polynomial, TermOrder, Var};

/// A pure difference of monomials, `lead - tail`, oriented by some term
/// order (the constructor enforces it; the fields stay public for pattern
/// use).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    pub lead: Monomial,
    pub tail: Monomial,
}

impl Binomial {
    /// Orders `m1 - m2` so the lead is the larger monomial; equal monomials
    /// make the zero polynomial and are refused.
    pub fn oriented(m1: Monomial, m2: Monomial, ord: &TermOrder) -> Result<Binomial> {
        match ord.cmp(&m1, &m2) {
            Ordering::Greater => Ok(Binomial { lead: m1, tail: m2 }),
            Ordering::Less => Ok(Binomial { lead: m2, tail: m1 }),
            Ordering::Equal => Err(Error::ZeroPolynomial),
        }
    }

    /// Reads a polynomial of the form `c*m1 - c*m2` back into a binomial.
    pub fn from_polynomial(p: &Polynomial, ord: &TermOrder) -> Result<Binomial> {
        let terms: Vec<(&Monomial, &crate::poly::Rat)> = p.terms().collect();
        if terms.len() != 2 || terms[0].1.clone() + terms[1].1.clone() != rat(0) {
            return Err(Error::Parse(format!(
                "not a pure difference of two monomials: {p}"
            )));
        }
        Binomial::oriented(terms[0].0.clone(), terms[1].0.clone(), ord)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms([(self.lead.clone(), rat(1)), (self.tail.clone(), rat(-1))])
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.tail)
    }
}

// ---------------------------------------------------------------------------
// Fibers and Markov moves
// ---------------------------------------------------------------------------

/// All nonnegative integer vectors `u` with `M u = b`, in ascending
/// lexicographic order.
///
/// The matrix must have nonnegative entries and no zero column (a zero
/// column would make every nonempty fiber infinite); exponent matrices of
/// monomial maps satisfy the former by construction.
pub fn enumerate_fiber(m: &ExponentMatrix, b: &[i64]) -> Result<Vec<Vec<i64>>> {
    let (rows, cols) = (m.rows.len(), m.cols.len());
    if b.len() != rows {
        return Err(Error::DimensionMismatch { want: rows, got: b.len() });
    }
    debug_assert!(m.data.iter().flatten().all(|&x| x >= 0));
    for c in 0..cols {
        if (0..rows).all(|r| m.data[r][c] == 0) {
            return Err(Error::InfiniteFiber);
        }
    }
    if b.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }

    fn go(
        data: &[Vec<i64>],
        c: usize,
        u: &mut [i64],
        residual: &mut [i64],
        out: &mut Vec<Vec<i64>>,
    ) {
        if c == u.len() {
            if residual.iter().all(|&x| x == 0) {
                out.push(u.to_vec());
            }
            return;
        }
        let mut emax = i64::MAX;
        for (r, row) in data.iter().enumerate() {
            if row[c] > 0 {
                emax = emax.min(residual[r] / row[c]);
            }
        }
        for e in 0..=emax {
            if e > 0 {
                for (r, row) in data.iter().enumerate() {
                    residual[r] -= row[c];
                }
            }
            u[c] = e;
            go(data, c + 1, u, residual, out);
        }
        for (r, row) in data.iter().enumerate() {
            residual[r] += row[c] * emax;
        }
        u[c] = 0;
    }

    let mut out = Vec::new();
    let mut u = vec![0i64; cols];
    let mut residual = b.to_vec();
    go(&m.data, 0, &mut u, &mut residual, &mut out);
    Ok(out)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Number of connected components of the graph on fiber points where two
/// points are adjacent when they differ by one (signed) move.
pub fn fiber_components(fiber: &[Vec<i64>], moves: &[Vec<i64>]) -> usize {
    let index: HashMap<&[i64], usize> =
        fiber.iter().enumerate().map(|(i, u)| (u.as_slice(), i)).collect();
    let mut dsu = Dsu::new(fiber.len());
    let mut probe = Vec::new();
    for (i, u) in fiber.iter().enumerate() {
        for mv in moves {
            probe.clear();
            probe.extend(u.iter().zip(mv).map(|(a, b)| a - b));
            if probe.iter().all(|&x| x >= 0) {
                if let Some(&j) = index.get(probe.as_slice()) {
                    dsu.union(i, j);
                }
            }
        }
    }
    dsu.components()
}

/// Whether the moves walk the whole fiber (empty and singleton fibers are
/// trivially connected).
pub fn fiber_graph_connected(fiber: &[Vec<i64>], moves: &[Vec<i64>]) -> bool {
    fiber.len() <= 1 || fiber_components(fiber, moves) == 1
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkovFailure {
    pub degree: usize,
    pub rhs: Vec<i64>,
    pub fiber_size: usize,
    pub components: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkovReport {
    pub degree_bound: usize,
    pub fibers_checked: usize,
    pub max_fiber_size: usize,
    pub all_connected: bool,
    pub failures: Vec<MarkovFailure>,
}

/// At most this many disconnected fibers are itemized in a report.
pub const MARKOV_FAILURE_CAP: usize = 16;

/// Checks that the moves connect every fiber `M u = b` that is hit by some
/// monomial of total degree between 1 and `degree_bound`. Connectivity of
/// all those fibers is exactly the statement that the moves generate the
/// kernel of the map in those degrees.
///
/// Every move must be a kernel vector of `m` of matching length.
pub fn verify_markov(
    m: &ExponentMatrix,
    moves: &[Vec<i64>],
    degree_bound: usize,
) -> Result<MarkovReport> {
    let cols = m.cols.len();
    for mv in moves {
        if mv.len() != cols {
            return Err(Error::DimensionMismatch { want: cols, got: mv.len() });
        }
        if m.mul_vec(mv)?.iter().any(|&x| x != 0) {
            return Err(Error::NotInKernel);
        }
    }

    // Every right-hand side reachable in the degree range, tagged with the
    // degree of a monomial that reaches it.
    let mut rhss: Vec<(Vec<i64>, usize)> = Vec::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    fn walk(
        m: &ExponentMatrix,
        c: usize,
        left: usize,
        b: &mut Vec<i64>,
        degree: usize,
        seen: &mut BTreeSet<Vec<i64>>,
        rhss: &mut Vec<(Vec<i64>, usize)>,
    ) {
        if degree > 0 && seen.insert(b.clone()) {
            rhss.push((b.clone(), degree));
        }
        if c == m.cols.len() || left == 0 {
            return;
        }
        walk(m, c + 1, left, b, degree, seen, rhss);
        for e in 1..=left {
            for (r, row) in m.data.iter().enumerate() {
                b[r] += row[c] * e as i64;
            }
            walk(m, c + 1, left - e, b, degree + e, seen, rhss);
            for (r, row) in m.data.iter().enumerate() {
                b[r] -= row[c] * e as i64;
            }
        }
    }
    let mut b = vec![0i64; m.rows.len()];
    walk(m, 0, degree_bound, &mut b, 0, &mut seen, &mut rhss);

    let mut report = MarkovReport {
        degree_bound,
        fibers_checked: 0,
        max_fiber_size: 0,
        all_connected: true,
        failures: Vec::new(),
    };
    for (rhs, degree) in rhss {
        let fiber = enumerate_fiber(m, &rhs)?;
        report.fibers_checked += 1;
        report.max_fiber_size = report.max_fiber_size.max(fiber.len());
        if fiber.len() > 1 {
            let components = fiber_components(&fiber, moves);
            if components > 1 {
                report.all_connected = false;
                if report.failures.len() < MARKOV_FAILURE_CAP {
                    report.failures.push(MarkovFailure {
                        degree,
                        rhs,
                        fiber_size: fiber.len(),
                        components,
                    });
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Circular embeddings and the non-intersecting basis
// ---------------------------------------------------------------------------

/// A placement of the vertices `1..=n` on a circle. Positions are
/// `0..n` counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularEmbedding {
    n: usize,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl CircularEmbedding {
    pub fn identity(n: usize) -> CircularEmbedding {
        CircularEmbedding::from_order((1..=n).collect()).expect("identity order is a permutation")
    }

    pub fn from_order(order: Vec<usize>) -> Result<CircularEmbedding> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n + 1];
        for (p, &v) in order.iter().enumerate() {
            if v == 0 || v > n || pos[v] != usize::MAX {
                return Err(Error::Parse(format!(
                    "circular order must be a permutation of 1..={n}"
                )));
            }
            pos[v] = p;
        }
        Ok(CircularEmbedding { n, order, pos })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex at each position, counterclockwise.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }
}

/// Chords and loops of the looped complete graph on `1..=n`, as pairs
/// `(i, j)` with `i <= j` (a loop is `(i, i)`), in lexicographic order.
pub fn looped_elements(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// Do two elements intersect in the embedding? Sharing a vertex always
/// counts; two chords also intersect when they strictly cross. Loops are
/// drawn outside the circle and cross nothing.
pub fn elements_intersect(
    emb: &CircularEmbedding,
    e1: (usize, usize),
    e2: (usize, usize),
) -> bool {
    let (a, b) = e1;
    let (c, d) = e2;
    if a == c || a == d || b == c || b == d {
        return true;
    }
    if a == b || c == d {
        return false;
    }
    let (p, q) = sorted_positions(emb, e1);
    let inside = |x: usize| p < emb.position(x) && emb.position(x) < q;
    inside(c) != inside(d)
}

fn sorted_positions(emb: &CircularEmbedding, e: (usize, usize)) -> (usize, usize) {
    let (p, q) = (emb.position(e.0), emb.position(e.1));
    (p.min(q), p.max(q))
}

/// Number of elements of the looped complete graph disjoint from the
/// element `(i, j)` in the embedding — the weight of `s_ij` in the
/// circular term order.
pub fn circular_weight(emb: &CircularEmbedding, i: usize, j: usize) -> i64 {
    looped_elements(emb.n())
        .into_iter()
        .filter(|&e| !elements_intersect(emb, e, (i.min(j), i.max(j))))
        .count() as i64
}

/// The term order whose weight on `s_ij` counts the elements disjoint from
/// `(i, j)`; higher weight leads, ties fall back to grevlex.
pub fn circular_term_order(emb: &CircularEmbedding) -> TermOrder {
    let n = emb.n();
    TermOrder::with_weights(
        looped_elements(n)
            .into_iter()
            .map(|(i, j)| (Var::s(i, j), circular_weight(emb, i, j))),
    )
}

/// Re-pairs a non-intersecting pair of elements into the intersecting pair
/// on the same vertices: two chords into the crossing pairing, a chord and
/// a loop into the two chords meeting at the loop vertex, two loops into
/// the doubled chord.
fn repair(
    emb: &CircularEmbedding,
    e1: (usize, usize),
    e2: (usize, usize),
) -> ((usize, usize), (usize, usize)) {
    let chord = |x: usize, y: usize| (x.min(y), x.max(y));
    match (e1.0 == e1.1, e2.0 == e2.1) {
        (true, true) => (chord(e1.0, e2.0), chord(e1.0, e2.0)),
        (true, false) => (chord(e2.0, e1.0), chord(e2.1, e1.0)),
        (false, true) => (chord(e1.0, e2.0), chord(e1.1, e2.0)),
        (false, false) => {
            let mut vertices = [e1.0, e1.1, e2.0, e2.1];
            vertices.sort_by_key(|&v| emb.position(v));
            (chord(vertices[0], vertices[2]), chord(vertices[1], vertices[3]))
        }
    }
}

/// The quadratic binomials of the embedding: for every pair of
/// non-intersecting elements, the product of their `s` variables minus the
/// product over the intersecting re-pairing. The weight order puts the
/// non-intersecting product strictly on top (see [`verify_weight_gaps`]).
pub fn s_prime(emb: &CircularEmbedding) -> Vec<Binomial> {
    let elems = looped_elements(emb.n());
    let mut out = Vec::new();
    for (a, &e1) in elems.iter().enumerate() {
        for &e2 in &elems[a + 1..] {
            if elements_intersect(emb, e1, e2) {
                continue;
            }
            let (f1, f2) = repair(emb, e1, e2);
            let svar = |e: (usize, usize)| Monomial::var(Var::s(e.0, e.1));
            out.push(Binomial {
                lead: svar(e1).mul(&svar(e2)),
                tail: svar(f1).mul(&svar(f2)),
            });
        }
    }
    out.sort();
    out
}

/// [`s_prime`] on the identity embedding.
pub fn nonintersecting_basis(n: usize) -> Vec<Binomial> {
    s_prime(&CircularEmbedding::identity(n))
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub all_positive: bool,
    pub all_match_formula: bool,
    pub min_gap: i64,
}

/// For every non-intersecting pair, the weight drop from its product to the
/// re-paired product must equal `2yz + 2(y + z) + 2`, where `y` and `z` are
/// the sizes of the two circular arcs separating the pair — and in
/// particular must be positive, which is what makes the weight order orient
/// the whole basis.
pub fn verify_weight_gaps(emb: &CircularEmbedding) -> GapReport {
    let n = emb.n();
    let elems = looped_elements(n);
    let mut report = GapReport {
        n,
        pairs_checked: 0,
        all_positive: true,
        all_match_formula: true,
        min_gap: i64::MAX,
    };
    let weight = |e: (usize, usize)| circular_weight(emb, e.0, e.1);
    for (a, &e1) in elems.iter().enumerate() {
        for &e2 in &elems[a + 1..] {
            if elements_intersect(emb, e1, e2) {
                continue;
            }
            let (f1, f2) = repair(emb, e1, e2);
            let gap = weight(e1) + weight(e2) - weight(f1) - weight(f2);
            let (y, z) = separating_arcs(emb, e1, e2);
            let formula = 2 * y * z + 2 * (y + z) + 2;
            report.pairs_checked += 1;
            report.all_positive &= gap > 0;
            report.all_match_formula &= gap == formula;
            report.min_gap = report.min_gap.min(gap);
        }
    }
    if report.pairs_checked == 0 {
        report.min_gap = 0;
    }
    report
}

/// Sizes of the two arcs strictly between a non-intersecting pair: between
/// the two loops, between a loop and the chord endpoints on the loop's
/// side, or between two non-crossing chords.
fn separating_arcs(
    emb: &CircularEmbedding,
    e1: (usize, usize),
    e2: (usize, usize),
) -> (i64, i64) {
    let n = emb.n() as i64;
    match (e1.0 == e1.1, e2.0 == e2.1) {
        (true, true) => {
            let (r, s) = sorted_positions(emb, (e1.0, e2.0));
            let (r, s) = (r as i64, s as i64);
            (s - r - 1, n - s + r - 1)
        }
        (true, false) => loop_chord_arcs(emb, emb.position(e1.0) as i64, e2),
        (false, true) => loop_chord_arcs(emb, emb.position(e2.0) as i64, e1),
        (false, false) => {
            let mut pos = [
                emb.position(e1.0),
                emb.position(e1.1),
                emb.position(e2.0),
                emb.position(e2.1),
            ];
            pos.sort_unstable();
            let [p1, p2, p3, p4] = pos.map(|p| p as i64);
            let nested = {
                let (lo, hi) = sorted_positions(emb, e1);
                (lo as i64, hi as i64) == (p1, p4) || (lo as i64, hi as i64) == (p2, p3)
            };
            if nested {
                (p2 - p1 - 1, p4 - p3 - 1)
            } else {
                (p3 - p2 - 1, n - p4 + p1 - 1)
            }
        }
    }
}

fn loop_chord_arcs(emb: &CircularEmbedding, r: i64, chord: (usize, usize)) -> (i64, i64) {
    let n = emb.n() as i64;
    let (p, q) = sorted_positions(emb, chord);
    let (p, q) = (p as i64, q as i64);
    if p < r && r < q {
        (r - p - 1, q - r - 1)
    } else if r > q {
        (r - q - 1, n - r + p - 1)
    } else {
        (p - r - 1, n - q + r - 1)
    }
}

// ---------------------------------------------------------------------------
// Restriction of the circular basis to a one-center block graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CircleRestriction {
    pub embedding: CircularEmbedding,
    /// Variables `s_pq` whose geodesic misses the center, removed from play.
    pub dropped: Vec<Var>,
    /// The binomials of the embedding supported entirely on the surviving
    /// variables.
    pub basis: Vec<Binomial>,
}

/// Embeds a connected block graph with exactly one central vertex on a
/// circle — blocks in order of their smallest non-center vertex, each
/// block's vertices ascending, the center last — and restricts the
/// non-intersecting basis to the variables whose geodesic passes through
/// the center.
pub fn restrict_to_gcircle(g: &Graph) -> Result<CircleRestriction> {
    if !g.is_connected() {
        return Err(Error::NotConnected("circular restriction".into()));
    }
    if !is_block_graph(g) {
        return Err(Error::InvalidGraph("not a block graph".into()));
    }
    let centers = central_vertices(g);
    let c = match centers.len() {
        1 => centers[0],
        0 => {
            return Err(Error::InvalidGraph(
                "graph has no central vertex to embed around".into(),
            ))
        }
        k => return Err(Error::MultipleCenters(k)),
    };

    let mut blocks = biconnected_components(g);
    blocks.sort_by_key(|block| block.iter().find(|&&v| v != c).copied());
    let mut order: Vec<usize> = Vec::with_capacity(g.n());
    for block in &blocks {
        order.extend(block.iter().filter(|&&v| v != c));
    }
    order.push(c);
    let embedding = CircularEmbedding::from_order(order)?;

    let mut dropped = Vec::new();
    let mut dropped_set = BTreeSet::new();
    for p in 1..=g.n() {
        for q in p..=g.n() {
            if !shortest_path(g, p, q)?.contains(&c) {
                dropped.push(Var::s(p, q));
                dropped_set.insert(Var::s(p, q));
            }
        }
    }

    let basis = s_prime(&embedding)
        .into_iter()
        .filter(|b| {
            b.lead
                .vars()
                .chain(b.tail.vars())
                .all(|v| !dropped_set.contains(&v))
        })
        .collect();
    Ok(CircleRestriction { embedding, dropped, basis })
}

// ---------------------------------------------------------------------------
// Buchberger completion for binomials
// ---------------------------------------------------------------------------

/// Cap on the intermediate basis during completion.
pub const GB_BASIS_CAP: usize = 5000;

/// Top-reduces the difference `m1 - m2` by the basis; `None` means it
/// reduced to zero.
fn top_reduce(
    mut m1: Monomial,
    mut m2: Monomial,
    basis: &[Binomial],
    ord: &TermOrder,
) -> Option<Binomial> {
    loop {
        if m1 == m2 {
            return None;
        }
        if ord.cmp(&m1, &m2) == Ordering::Less {
            std::mem::swap(&mut m1, &mut m2);
        }
        match basis.iter().find_map(|b| b.lead.try_div_into(&m1).map(|q| q.mul(&b.tail))) {
            Some(next) => m1 = next,
            None => return Some(Binomial { lead: m1, tail: m2 }),
        }
    }
}

/// Rewrites a monomial to its normal form modulo the leads of the basis.
fn monomial_normal_form(mut m: Monomial, basis: &[Binomial]) -> Monomial {
    loop {
        match basis.iter().find_map(|b| b.lead.try_div_into(&m).map(|q| q.mul(&b.tail))) {
            Some(next) => m = next,
            None => return m,
        }
    }
}

struct PairEntry {
    weight: i64,
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl PartialEq for PairEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for PairEntry {}
impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PairEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| grevlex_cmp(&self.lcm, &other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

/// The reduced Gröbner basis of the binomial ideal generated by `gens`
/// under `ord`: Buchberger completion with normal (smallest-lcm-first)
/// selection and the coprimality criterion, followed by minimalization and
/// inter-reduction. Output is sorted by the order, leads ascending.
pub fn buchberger_binomial(gens: &[Binomial], ord: &TermOrder) -> Result<Vec<Binomial>> {
    let mut basis: Vec<Binomial> = Vec::new();
    for g in gens {
        if g.lead == g.tail {
            continue;
        }
        let b = Binomial::oriented(g.lead.clone(), g.tail.clone(), ord)?;
        if !basis.contains(&b) {
            basis.push(b);
        }
    }

    let mut queue: BinaryHeap<Reverse<PairEntry>> = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<Reverse<PairEntry>>,
                          basis: &[Binomial],
                          j: usize| {
        for i in 0..j {
            let lcm = basis[i].lead.lcm(&basis[j].lead);
            queue.push(Reverse(PairEntry { weight: ord.weight(&lcm), lcm, i, j }));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }

    while let Some(Reverse(entry)) = queue.pop() {
        let (f, g) = (&basis[entry.i], &basis[entry.j]);
        if f.lead.is_coprime_with(&g.lead) {
            continue;
        }
        let m1 = f.lead.try_div_into(&entry.lcm).expect("lead divides lcm").mul(&f.tail);
        let m2 = g.lead.try_div_into(&entry.lcm).expect("lead divides lcm").mul(&g.tail);
        if let Some(nf) = top_reduce(m1, m2, &basis, ord) {
            basis.push(nf);
            if basis.len() > GB_BASIS_CAP {
                return Err(Error::SizeLimit { what: "binomial basis", limit: GB_BASIS_CAP });
            }
            push_pairs(&mut queue, &basis, basis.len() - 1);
        }
    }

    // Minimalize: drop any element whose lead another element's lead
    // divides (first wins among equal leads), then reduce every tail to
    // normal form.
    let minimal: Vec<Binomial> = basis
        .iter()
        .enumerate()
        .filter(|(i, b)| {
            !basis.iter().enumerate().any(|(j, other)| {
                j != *i
                    && other.lead.divides(&b.lead)
                    && (other.lead != b.lead || j < *i)
            })
        })
        .map(|(_, b)| b.clone())
        .collect();
    let mut reduced: Vec<Binomial> = minimal
        .iter()
        .map(|b| Binomial {
            lead: b.lead.clone(),
            tail: monomial_normal_form(b.tail.clone(), &minimal),
        })
        .collect();
    reduced.sort_by(|a, b| ord.cmp(&a.lead, &b.lead).then_with(|| ord.cmp(&a.tail, &b.tail)));
    Ok(reduced)
}

/// Is the given set *already* its own reduced Gröbner basis under the
/// order? (Orientation and ordering of the input are canonicalized before
/// comparing.)
pub fn reduced_gb_fixpoint(gens: &[Binomial], ord: &TermOrder) -> Result<bool> {
    let gb = buchberger_binomial(gens, ord)?;
    let mut canon = Vec::new();
    for g in gens {
        if g.lead == g.tail {
            continue;
        }
        let b = Binomial::oriented(g.lead.clone(), g.tail.clone(), ord)?;
        if !canon.contains(&b) {
            canon.push(b);
        }
    }
    canon.sort_by(|a, b| ord.cmp(&a.lead, &b.lead).then_with(|| ord.cmp(&a.tail, &b.tail)));
    Ok(gb == canon)
}
