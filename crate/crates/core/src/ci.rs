//! Conditional-independence ideals read off from graph separations, graded
//! linear algebra on their spans, and the checks built on top: the
//! degree-two generation test for block graphs and the three worked
//! failure modes for graphs with non-clique blocks.
//!
//! A separation `(A, B, C)` contributes the `(|C|+1)`-minors of the
//! covariance block on rows `A ∪ C` and columns `B ∪ C`. Collecting these
//! over all 1-clique partitions gives the degree-two generators; collecting
//! over all separations up to a cut-set size gives the full set. Membership
//! and dimension questions about a fixed degree are answered exactly, by
//! row reduction over the rationals on the monomial basis of that degree.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{
    biconnected_components, is_block_graph, one_clique_partitions, separations, Graph, Separation,
};
use crate::linalg::{RowSpace, SparseVec};
use crate::maps::{build_matrix, kernel_member, ExponentMatrix, MapKind};
use crate::poly::{rat, sigma_vars, Monomial, Polynomial, Rat, Var};
use crate::symlin::{
    model_dimension, rho_star_substitute_guarded, rho_star_vanishes, sym_det, ExpansionGuard,
    VanishReport,
};
use crate::toric::{verify_markov, MarkovReport};

/// One ideal generator, remembering which separation and submatrix it came
/// from.
#[derive(Debug, Clone)]
pub struct Generator {
    /// The minor, sign-normalized so the same polynomial found twice
    /// compares equal regardless of expansion sign.
    pub poly: Polynomial,
    /// Human-readable origin, e.g. `A={1,2} C={3} B={4} rows={1,3} cols={3,4}`.
    pub label: String,
}

/// A deduplicated, labeled list of generators in the `s` variables of a
/// fixed `n`-vertex grid. Insertion order is kept; a polynomial already
/// present (up to overall sign) is not added again.
#[derive(Debug, Clone, Default)]
pub struct GeneratorSet {
    n: usize,
    items: Vec<Generator>,
    seen: BTreeSet<Polynomial>,
}

impl GeneratorSet {
    pub fn new(n: usize) -> GeneratorSet {
        GeneratorSet { n, items: Vec::new(), seen: BTreeSet::new() }
    }

    /// Grid size the generators live on.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.items.iter()
    }

    /// The generators themselves, cloned in insertion order.
    pub fn polys(&self) -> Vec<Polynomial> {
        self.items.iter().map(|g| g.poly.clone()).collect()
    }

    /// Adds a generator unless it is zero or already present up to sign.
    /// Returns whether it was added.
    pub fn push(&mut self, poly: Polynomial, label: String) -> bool {
        if poly.is_zero() {
            return false;
        }
        let norm = poly.sign_normalized();
        if !self.seen.insert(norm.clone()) {
            return false;
        }
        self.items.push(Generator { poly: norm, label });
        true
    }

    /// The subset of generators with total degree at most `max_degree`.
    pub fn filter_degree(&self, max_degree: u32) -> GeneratorSet {
        let mut out = GeneratorSet::new(self.n);
        for g in &self.items {
            if g.poly.degree() <= max_degree {
                out.push(g.poly.clone(), g.label.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "count": self.len(),
            "generators": self
                .items
                .iter()
                .map(|g| {
                    json!({
                        "label": g.label,
                        "degree": g.poly.degree(),
                        "text": g.poly.to_text(),
                        "poly": g.poly.to_json(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// The generic covariance block on the given rows and columns: entry
/// `(r, c)` is the variable `s_{rc}` (indices normalized so `s_{cr}` is the
/// same variable — the matrix is symmetric).
pub fn sigma_submatrix(rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| Polynomial::var(Var::s(r, c))).collect())
        .collect()
}

/// Determinant of the covariance block on `rows x cols`.
pub fn sigma_minor(rows: &[usize], cols: &[usize]) -> Polynomial {
    debug_assert_eq!(rows.len(), cols.len(), "minors need a square block");
    sym_det(&sigma_submatrix(rows, cols))
}

/// All subsets of `set` of the given size, each ascending, in lexicographic
/// order.
fn subsets_of_size(set: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(set: &[usize], size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if size == 0 {
            out.push(acc.clone());
            return;
        }
        if set.len() < size {
            return;
        }
        acc.push(set[0]);
        go(&set[1..], size - 1, acc, out);
        acc.pop();
        go(&set[1..], size, acc, out);
    }
    let mut out = Vec::new();
    go(set, size, &mut Vec::new(), &mut out);
    out
}

/// The row set, column set, and value of every `(|C|+1)`-minor of the
/// covariance block on `(A ∪ C) x (B ∪ C)`.
fn separation_minor_entries(sep: &Separation) -> Vec<(Vec<usize>, Vec<usize>, Polynomial)> {
    let rows: Vec<usize> = sep.a.union(&sep.c).copied().collect();
    let cols: Vec<usize> = sep.b.union(&sep.c).copied().collect();
    let size = sep.c.len() + 1;
    let mut out = Vec::new();
    for rsub in subsets_of_size(&rows, size) {
        for csub in subsets_of_size(&cols, size) {
            let minor = sigma_minor(&rsub, &csub);
            out.push((rsub.clone(), csub, minor));
        }
    }
    out
}

/// The polynomial translation of one separation: all `(|C|+1)`-minors of
/// the covariance block on rows `A ∪ C` and columns `B ∪ C`.
pub fn partition_minors(sep: &Separation) -> Vec<Polynomial> {
    separation_minor_entries(sep).into_iter().map(|(_, _, p)| p).collect()
}

fn fmt_set(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

fn fmt_list(list: &[usize]) -> String {
    let parts: Vec<String> = list.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

fn push_separation(set: &mut GeneratorSet, sep: &Separation) {
    let base = format!("A={{{}}} C={{{}}} B={{{}}}", fmt_set(&sep.a), fmt_set(&sep.c), fmt_set(&sep.b));
    for (rows, cols, minor) in separation_minor_entries(sep) {
        let label = format!("{base} rows={{{}}} cols={{{}}}", fmt_list(&rows), fmt_list(&cols));
        set.push(minor, label);
    }
}

/// The degree-two generators of `g`: the `2x2` minors arising from 1-clique
/// partitions. Requires a connected graph; a graph without a cut vertex has
/// no such partitions and yields the empty set.
pub fn ci_generators_1clique(g: &Graph) -> Result<GeneratorSet> {
    let mut set = GeneratorSet::new(g.n());
    for part in one_clique_partitions(g)? {
        let sep = Separation {
            a: part.a.clone(),
            b: part.b.clone(),
            c: BTreeSet::from([part.c]),
        };
        push_separation(&mut set, &sep);
    }
    Ok(set)
}

/// Generators from every separation of `g` with `|C| <= max_c`, in the
/// enumeration order of [`separations`]. A separation with cut set of size
/// `c` contributes minors of degree `c + 1`.
pub fn ci_generators_full(g: &Graph, max_c: usize) -> Result<GeneratorSet> {
    let mut set = GeneratorSet::new(g.n());
    for sep in separations(g, max_c)? {
        push_separation(&mut set, &sep);
    }
    Ok(set)
}

/// All monomials of total degree `d` in the `s` variables of an `n`-vertex
/// grid, without repetition.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn spread(vars: &[Var], left: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial::from_pairs(acc.iter().copied()));
                }
            }
            Some((&v, rest)) => {
                for e in 0..=left {
                    if e > 0 {
                        acc.push((v, e));
                    }
                    spread(rest, left - e, acc, out);
                    if e > 0 {
                        acc.pop();
                    }
                }
            }
        }
    }
    let vars = sigma_vars(n);
    let mut out = Vec::new();
    spread(&vars, d, &mut Vec::new(), &mut out);
    out
}

/// Coordinates on the degree-`d` slice of the polynomial ring: one column
/// per monomial of that degree.
struct GradedPiece {
    degree: u32,
    index: BTreeMap<Monomial, usize>,
}

impl GradedPiece {
    fn new(n: usize, d: u32) -> GradedPiece {
        let index =
            monomials_of_degree(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        GradedPiece { degree: d, index }
    }

    /// The coordinate vector of a polynomial all of whose monomials have
    /// degree exactly `d` and fit the grid.
    fn vector_of(&self, p: &Polynomial) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(p.term_count());
        for (m, c) in p.terms() {
            if m.degree() != self.degree {
                return Err(Error::DimensionMismatch {
                    want: self.degree as usize,
                    got: m.degree() as usize,
                });
            }
            let col =
                self.index.get(m).ok_or_else(|| Error::MissingVariable(m.to_string()))?;
            entries.push((*col, c.clone()));
        }
        Ok(SparseVec::from_entries(entries))
    }
}

/// Multiplier monomials per generator degree, computed once and shared.
fn multiplier_table(gens: &[&Polynomial], n: usize, d: u32) -> Result<BTreeMap<u32, Vec<Monomial>>> {
    let mut table = BTreeMap::new();
    for gen in gens {
        let e = gen.degree();
        if e > d {
            return Err(Error::DegreeTooLow { gen_degree: e as usize, degree: d as usize });
        }
        table.entry(e).or_insert_with(|| monomials_of_degree(n, d - e));
    }
    Ok(table)
}

/// Dimension of the degree-`d` slice of the ideal generated by the
/// homogeneous polynomials `gens`, inside the ring on the `n`-grid `s`
/// variables: the rank of all products `(monomial of degree d - deg g) * g`.
///
/// Fails with [`Error::DegreeTooLow`] if some generator has degree above `d`.
pub fn graded_piece_dim(gens: &[Polynomial], n: usize, d: u32) -> Result<usize> {
    let piece = GradedPiece::new(n, d);
    let mut order: Vec<&Polynomial> = gens.iter().filter(|p| !p.is_zero()).collect();
    // Short rows first: differences of two monomials keep the reduction
    // nearly combinatorial, and longer minors then land on a cheap echelon.
    order.sort_by_key(|p| (p.term_count(), std::cmp::Reverse(p.degree())));
    let table = multiplier_table(&order, n, d)?;
    let mut space = RowSpace::new();
    for gen in order {
        for mult in &table[&gen.degree()] {
            space.insert(piece.vector_of(&gen.monomial_mul(mult, &rat(1)))?);
        }
    }
    Ok(space.rank())
}

/// Whether `target` lies in the degree-`d` slice spanned by monomial
/// multiples of the homogeneous `gens`. Exact over the rationals. The scan
/// runs highest generator degree first and stops as soon as the target
/// reduces to zero, so a target that is itself (a multiple of) a generator
/// is cheap to confirm.
pub fn graded_membership(gens: &[Polynomial], target: &Polynomial, n: usize, d: u32) -> Result<bool> {
    let piece = GradedPiece::new(n, d);
    let tvec = piece.vector_of(target)?;
    if tvec.is_zero() {
        return Ok(true);
    }
    let live: Vec<&Polynomial> = gens.iter().filter(|p| !p.is_zero()).collect();
    let table = multiplier_table(&live, n, d)?;
    let mut groups: BTreeMap<u32, Vec<&Polynomial>> = BTreeMap::new();
    for gen in live {
        groups.entry(gen.degree()).or_default().push(gen);
    }
    let mut space = RowSpace::new();
    for (degree, mut group) in groups.into_iter().rev() {
        group.sort_by_key(|p| p.term_count());
        for gen in group {
            for mult in &table[&degree] {
                space.insert(piece.vector_of(&gen.monomial_mul(mult, &rat(1)))?);
            }
        }
        if space.reduce(tvec.clone()).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The two monomial exponent vectors of a pure-difference quadric, in the
/// column coordinates of `m`.
fn binomial_move(m: &ExponentMatrix, p: &Polynomial) -> Result<(Vec<i64>, Vec<i64>)> {
    let terms: Vec<(&Monomial, &Rat)> = p.terms().collect();
    if terms.len() != 2 || !(terms[0].1.clone() + terms[1].1.clone()).is_zero() {
        return Err(Error::Parse(format!("not a pure difference of monomials: {p}")));
    }
    Ok((m.exponents_of(terms[0].0)?, m.exponents_of(terms[1].0)?))
}

/// Outcome of [`check_degree2_theorem`] for one connected component.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentCheck {
    /// Vertices of the component, in the labels of the input graph.
    pub vertices: Vec<usize>,
    /// Whether every maximal 2-connected piece is a clique.
    pub block_graph: bool,
    /// A non-clique 2-connected piece, when there is one.
    pub offending_block: Option<Vec<usize>>,
    /// Number of distinct degree-two generators found.
    pub generators: usize,
    /// Whether every generator is exactly compatible with the monomial
    /// parametrization (checked on integer exponent vectors, no sampling).
    pub kernel_exact: bool,
    /// Fiber connectivity of the generators' moves up to the degree bound.
    pub markov: Option<MarkovReport>,
}

/// Outcome of [`check_degree2_theorem`].
#[derive(Debug, Clone, Serialize)]
pub struct Degree2Report {
    /// `CONFIRMED` when every component is a block graph and its degree-two
    /// generators exactly cut out the parametrization kernel up to the
    /// degree bound; `NOT_BLOCK` when some component has a non-clique
    /// block; `INCONSISTENT` if a block-graph component ever failed the
    /// exact checks (which would contradict the degree-two theorem).
    pub verdict: String,
    pub degree_bound: usize,
    pub components: Vec<ComponentCheck>,
}

impl Degree2Report {
    pub fn confirmed(&self) -> bool {
        self.verdict == "CONFIRMED"
    }
}

/// Tests, component by component, whether the degree-two generators from
/// 1-clique partitions generate the whole vanishing ideal up to the given
/// degree. For a block-graph component this runs two exact checks: each
/// generator's two monomials have equal image under the monomial map
/// (soundness), and the generators' moves connect every fiber hit by a
/// degree `<= degree_bound` monomial (completeness in those degrees). A
/// component with a non-clique block is reported as the obstruction, with
/// no further computation.
pub fn check_degree2_theorem(g: &Graph, degree_bound: usize) -> Result<Degree2Report> {
    let mut components = Vec::new();
    let mut some_non_block = false;
    let mut some_inconsistency = false;
    for comp in g.components() {
        let (sub, labels) = g.induced(&comp);
        let mut check = ComponentCheck {
            vertices: comp.iter().copied().collect(),
            block_graph: is_block_graph(&sub),
            offending_block: None,
            generators: 0,
            kernel_exact: false,
            markov: None,
        };
        if !check.block_graph {
            some_non_block = true;
            check.offending_block = biconnected_components(&sub)
                .into_iter()
                .find(|b| !sub.is_clique_on(b))
                .map(|b| b.into_iter().map(|v| labels[v]).collect());
        } else {
            let gens = ci_generators_1clique(&sub)?;
            let matrix = build_matrix(&sub, MapKind::Psi)?;
            let mut kernel_exact = true;
            let mut moves = Vec::with_capacity(gens.len());
            for gen in gens.iter() {
                let (u, v) = binomial_move(&matrix, &gen.poly)?;
                kernel_exact &= kernel_member(&matrix, &u, &v)?;
                let mv: Vec<i64> = u.iter().zip(&v).map(|(x, y)| x - y).collect();
                moves.push(mv);
            }
            let markov = verify_markov(&matrix, &moves, degree_bound)?;
            some_inconsistency |= !kernel_exact || !markov.all_connected;
            check.generators = gens.len();
            check.kernel_exact = kernel_exact;
            check.markov = Some(markov);
        }
        components.push(check);
    }
    let verdict = if some_non_block {
        "NOT_BLOCK"
    } else if some_inconsistency {
        "INCONSISTENT"
    } else {
        "CONFIRMED"
    };
    Ok(Degree2Report { verdict: verdict.into(), degree_bound, components })
}

/// Checks that every degree-two generator is homogeneous for the
/// geodesic-degree grading: its two monomials must have equal image under
/// the edge/diagonal exponent matrix. This is the compatibility needed for
/// the generators to stay binomial after passing to leading products.
/// Requires a connected graph with unique shortest paths.
pub fn sagbi_homogeneity_check(g: &Graph) -> Result<bool> {
    let matrix = build_matrix(g, MapKind::Phi)?;
    for gen in ci_generators_1clique(g)?.iter() {
        let (u, v) = binomial_move(&matrix, &gen.poly)?;
        if !kernel_member(&matrix, &u, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A ready-to-run Macaulay2 session: the ambient ring on the grid's `s`
/// variables, the ideal spanned by `set`, and the invariants worth
/// comparing against this crate's own output. Variable spellings with an
/// underscore (grids past nine vertices) are mangled to stay plain
/// Macaulay2 identifiers.
pub fn macaulay2_script(g: &Graph, set: &GeneratorSet) -> String {
    let sanitize = |s: String| s.replace('_', "x");
    let vars: Vec<String> =
        sigma_vars(set.n()).iter().map(|v| sanitize(v.to_string())).collect();
    let edges: Vec<String> = g.edges().map(|(i, j)| format!("{{{i},{j}}}")).collect();
    let gens: Vec<String> =
        set.iter().map(|gen| format!("  {}", sanitize(gen.poly.to_text()))).collect();
    let ideal = if gens.is_empty() { "  0_R".to_string() } else { gens.join(",\n") };
    format!(
        "-- graph on {} vertices, edges {}\n\
         R = QQ[{}];\n\
         I = ideal(\n{}\n);\n\
         << \"generators: \" << numgens I << endl;\n\
         << \"codimension: \" << codim I << endl;\n\
         << \"degree: \" << degree I << endl;\n\
         << \"minimal generators: \" << numgens trim I << endl;\n",
        g.n(),
        edges.join(", "),
        vars.join(", "),
        ideal,
    )
}

/// The glued two-clique graph whose vanishing ideal needs cubics: checks on
/// the two extra degree-three generators.
#[derive(Debug, Clone, Serialize)]
pub struct GluingCubicsReport {
    pub graph: String,
    /// Symbolic pullback of each cubic expands to the zero polynomial.
    pub vanish_exact: Vec<bool>,
    /// Randomized vanishing re-check at exact rational sample points.
    pub sampled: Vec<VanishReport>,
    /// Dimension of the degree-three slice spanned by the two factor ideals
    /// plus the cut-vertex quadrics.
    pub local_degree3_dim: usize,
    /// Whether each cubic lies in that slice — the point is that neither does.
    pub in_local_degree3: Vec<bool>,
    /// Model dimension of the non-complete factor (one missing edge on four
    /// vertices): 9, one below the full symmetric cone, so its ideal is
    /// principal, generated by the mixed 3x3 determinant used here.
    pub factor_model_dimension: usize,
}

/// The path on four vertices: degree-two slice of all separation quadrics
/// against the slice from a single decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct QuadraticGapReport {
    pub graph: String,
    pub ci_degree2_dim: usize,
    pub local_degree2_dim: usize,
}

/// The two glued squares: a degree-four generator that no smaller cut set
/// explains.
#[derive(Debug, Clone, Serialize)]
pub struct QuarticReport {
    pub graph: String,
    pub degree: u32,
    /// Randomized vanishing check of the quartic on the model.
    pub sampled: VanishReport,
    /// The quartic lies in the degree-four slice of the full separation
    /// ideal (cut sets up to size three)...
    pub in_ci_degree4: bool,
    /// ...but not in the slice generated by cut sets of size at most two.
    pub in_small_separator_degree4: bool,
}

/// The three computations showing degree-two generation genuinely fails
/// off block graphs.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub cubics: GluingCubicsReport,
    pub quadratic_gap: QuadraticGapReport,
    pub quartic: QuarticReport,
}

impl CounterexampleReport {
    /// Whether every computation came out the way the three counterexamples
    /// require.
    pub fn holds(&self) -> bool {
        self.cubics.vanish_exact.iter().all(|&b| b)
            && self.cubics.sampled.iter().all(|r| r.vanishes)
            && self.cubics.in_local_degree3.iter().all(|&b| !b)
            && self.cubics.factor_model_dimension == 9
            && self.quadratic_gap.ci_degree2_dim > self.quadratic_gap.local_degree2_dim
            && self.quartic.sampled.vanishes
            && self.quartic.in_ci_degree4
            && !self.quartic.in_small_separator_degree4
    }
}

/// The sum of the two factor ideals and the cut-vertex quadrics for the
/// glued two-clique graph: the complete factor on `{1,2,3}` contributes
/// nothing, the one-missing-edge factor on `{3,4,5,6}` contributes its
/// mixed 3x3 determinant, and the separation `A={1,2}, C={3}, B={4,5,6}`
/// contributes eighteen 2x2 minors.
fn gluing_local_ideal() -> Vec<Polynomial> {
    let mut gens = vec![sigma_minor(&[3, 4, 5], &[4, 5, 6])];
    let sep = Separation {
        a: BTreeSet::from([1, 2]),
        b: BTreeSet::from([4, 5, 6]),
        c: BTreeSet::from([3]),
    };
    gens.extend(partition_minors(&sep));
    gens
}

/// Runs the three counterexample computations: the glued two-clique graph
/// that needs cubic generators, the path whose quadric slice exceeds any
/// single decomposition, and the glued squares whose ideal needs a cut set
/// of size three to reach a particular quartic. `trials` and `seed` drive
/// the randomized vanishing checks; everything else is exact.
pub fn counterexample_suite(trials: u32, seed: u64) -> Result<CounterexampleReport> {
    // Two cliques glued along an edge-plus-vertex: the two cubics vanish on
    // the model but are not reachable in degree three from the factor
    // ideals and the cut-vertex quadrics.
    let gluing = fixtures::named_graph("fig2").expect("fixture");
    let cubics = fixtures::fig2_cubics();
    let guard = ExpansionGuard { max_degree: 3, max_n: 6 };
    let mut vanish_exact = Vec::new();
    let mut sampled = Vec::new();
    for cubic in &cubics {
        vanish_exact.push(rho_star_substitute_guarded(cubic, &gluing, guard)?.is_zero());
        sampled.push(rho_star_vanishes(cubic, &gluing, trials, seed)?);
    }
    let local = gluing_local_ideal();
    let local_degree3_dim = graded_piece_dim(&local, gluing.n(), 3)?;
    let mut in_local_degree3 = Vec::new();
    for cubic in &cubics {
        in_local_degree3.push(graded_membership(&local, cubic, gluing.n(), 3)?);
    }
    let (factor, _) = gluing.induced(&BTreeSet::from([3, 4, 5, 6]));
    let cubics_report = GluingCubicsReport {
        graph: "fig2".into(),
        vanish_exact,
        sampled,
        local_degree3_dim,
        in_local_degree3,
        factor_model_dimension: model_dimension(&factor, seed.wrapping_add(1))?,
    };

    // The path on four vertices: five independent separation quadrics, but
    // any single cut-vertex decomposition spans only four of them.
    let path = fixtures::named_graph("path4").expect("fixture");
    let all_quadrics = ci_generators_full(&path, path.n() - 2)?.filter_degree(2);
    let mut local_path = vec![sigma_minor(&[1, 2], &[2, 3])];
    local_path.extend(partition_minors(&Separation {
        a: BTreeSet::from([1, 2]),
        b: BTreeSet::from([4]),
        c: BTreeSet::from([3]),
    }));
    let gap_report = QuadraticGapReport {
        graph: "path4".into(),
        ci_degree2_dim: graded_piece_dim(&all_quadrics.polys(), path.n(), 2)?,
        local_degree2_dim: graded_piece_dim(&local_path, path.n(), 2)?,
    };

    // Two squares glued at a corner: the distinguished quartic minor needs
    // a cut set of size three.
    let squares = fixtures::named_graph("fig3").expect("fixture");
    let quartic = fixtures::fig3_quartic();
    let full = ci_generators_full(&squares, 3)?;
    let small = ci_generators_full(&squares, 2)?;
    let quartic_report = QuarticReport {
        graph: "fig3".into(),
        degree: quartic.degree(),
        sampled: rho_star_vanishes(&quartic, &squares, trials, seed.wrapping_add(2))?,
        in_ci_degree4: graded_membership(&full.polys(), &quartic, squares.n(), 4)?,
        in_small_separator_degree4: graded_membership(
            &small.polys(),
            &quartic,
            squares.n(),
            4,
        )?,
    };

    Ok(CounterexampleReport {
        cubics: cubics_report,
        quadratic_gap: gap_report,
        quartic: quartic_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{named_graph, random_block_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn normalized_set(polys: &[Polynomial]) -> BTreeSet<Polynomial> {
        polys.iter().map(|p| p.sign_normalized()).collect()
    }

    #[test]
    fn one_clique_minors_match_the_square_display() {
        let g = named_graph("fig1").unwrap();
        let set = ci_generators_1clique(&g).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(normalized_set(&set.polys()), normalized_set(&fixtures::fig1_kernel_display()));
    }

    #[test]
    fn one_clique_minors_match_the_chain_display() {
        let g = named_graph("ex14").unwrap();
        let set = ci_generators_1clique(&g).unwrap();
        let display = normalized_set(&fixtures::ex14_ci_display());
        assert_eq!(display.len(), 34, "the printed list repeats one quadric");
        assert_eq!(set.len(), 34);
        assert_eq!(normalized_set(&set.polys()), display);
    }

    #[test]
    fn one_clique_minors_cover_the_bowtie_display() {
        // The printed twelve-element list is a minimal generating set; the
        // separations contribute two more distinct (redundant) quadrics.
        let g = named_graph("fig4").unwrap();
        let set = ci_generators_1clique(&g).unwrap();
        assert_eq!(set.len(), 14);
        let mine = normalized_set(&set.polys());
        let display = normalized_set(&fixtures::fig4_kernel_display());
        assert!(display.is_subset(&mine));

        // Same ideal nonetheless: identical reduced bases.
        let ord = TermOrder::grevlex();
        let to_binomials = |polys: &BTreeSet<Polynomial>| -> Vec<Binomial> {
            polys.iter().map(|p| Binomial::from_polynomial(p, &ord).unwrap()).collect()
        };
        let gb_mine: BTreeSet<Binomial> =
            buchberger_binomial(&to_binomials(&mine), &ord).unwrap().into_iter().collect();
        let gb_display: BTreeSet<Binomial> =
            buchberger_binomial(&to_binomials(&display), &ord).unwrap().into_iter().collect();
        assert_eq!(gb_mine, gb_display);
    }

    #[test]
    fn every_generator_label_names_its_separation() {
        let g = named_graph("fig1").unwrap();
        let set = ci_generators_1clique(&g).unwrap();
        for gen in set.iter() {
            assert!(gen.label.starts_with("A={"), "label {:?}", gen.label);
            assert!(gen.label.contains("rows={"), "label {:?}", gen.label);
        }
        let json = set.to_json();
        assert_eq!(json["count"], 3);
        assert_eq!(json["generators"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn full_generators_reach_the_quartic_witness() {
        // The printed twenty-term quartic is not itself a minor: it is the
        // negative of the size-4 minor from the cut set {1,4,7}, corrected
        // by multiples of the cut-vertex quadrics. Certify exactly that.
        let quartic = fixtures::fig3_quartic();
        let minor = sigma_minor(&[1, 2, 5, 7], &[1, 3, 6, 7]);
        let difference = quartic.add(&minor);
        assert_eq!(quartic.term_count(), 20);
        assert_eq!(minor.term_count(), 24);
        assert_eq!(difference.term_count(), 14, "shared terms must cancel");

        let g = named_graph("fig3").unwrap();
        let quadrics = ci_generators_full(&g, 1).unwrap();
        assert!(graded_membership(&quadrics.polys(), &difference, 7, 4).unwrap());

        // The minor is a generator once the cut set {1,4,7} is allowed, and
        // cut sets up to size two only reach degree three.
        let full = ci_generators_full(&g, 3).unwrap();
        let normalized = minor.sign_normalized();
        assert!(full.polys().iter().any(|p| *p == normalized));
        let small = ci_generators_full(&g, 2).unwrap();
        assert!(small.polys().iter().all(|p| p.degree() <= 3));
        assert!(small.len() < full.len());
    }

    #[test]
    fn partition_minor_shapes() {
        // Path on four vertices, middle vertex pair as the cut set: one
        // degree-three minor from the single 3x3 block pair.
        let sep = Separation {
            a: BTreeSet::from([1]),
            b: BTreeSet::from([4]),
            c: BTreeSet::from([2, 3]),
        };
        let minors = partition_minors(&sep);
        assert_eq!(minors.len(), 1);
        assert_eq!(minors[0].degree(), 3);

        let sep2 = Separation {
            a: BTreeSet::from([1]),
            b: BTreeSet::from([3, 4]),
            c: BTreeSet::from([2]),
        };
        let minors2 = partition_minors(&sep2);
        assert_eq!(minors2.len(), 3);
        assert!(minors2.iter().all(|m| m.degree() == 2 && m.term_count() == 2));
    }

    #[test]
    fn monomial_slices_count_correctly() {
        // Three variables on two vertices: multisets of size 3 from 3 symbols.
        let cubes = monomials_of_degree(2, 3);
        assert_eq!(cubes.len(), 10);
        assert!(cubes.iter().all(|m| m.degree() == 3));
        let distinct: BTreeSet<_> = cubes.iter().cloned().collect();
        assert_eq!(distinct.len(), 10);

        assert_eq!(monomials_of_degree(7, 2).len(), 406);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one()]);
    }

    #[test]
    fn graded_dimensions_on_the_path() {
        let path = named_graph("path4").unwrap();
        let quadrics = ci_generators_full(&path, 2).unwrap().filter_degree(2);
        assert_eq!(quadrics.len(), 5);
        assert_eq!(graded_piece_dim(&quadrics.polys(), 4, 2).unwrap(), 5);

        let mut local = vec![sigma_minor(&[1, 2], &[2, 3])];
        local.extend(partition_minors(&Separation {
            a: BTreeSet::from([1, 2]),
            b: BTreeSet::from([4]),
            c: BTreeSet::from([3]),
        }));
        assert_eq!(graded_piece_dim(&local, 4, 2).unwrap(), 4);
    }

    #[test]
    fn degree_guard_fires() {
        let cubic = sigma_minor(&[1, 2, 3], &[2, 3, 4]);
        match graded_piece_dim(&[cubic], 4, 2) {
            Err(Error::DegreeTooLow { gen_degree: 3, degree: 2 }) => {}
            other => panic!("expected a degree guard, got {other:?}"),
        }
    }

    #[test]
    fn membership_accepts_and_rejects() {
        let g = named_graph("fig1").unwrap();
        let gens = ci_generators_1clique(&g).unwrap().polys();
        let inside: Polynomial = "s13*s34 - s14*s33".parse().unwrap();
        assert!(graded_membership(&gens, &inside, 4, 2).unwrap());
        // A quadric that does not even vanish on the model.
        let outside: Polynomial = "s11*s34 - s13*s14".parse().unwrap();
        assert!(!graded_membership(&gens, &outside, 4, 2).unwrap());
        // The product of a generator with a variable sits in degree three.
        let lifted = inside.monomial_mul(&Monomial::var(Var::s(1, 1)), &rat(1));
        assert!(graded_membership(&gens, &lifted, 4, 3).unwrap());
    }

    #[test]
    fn degree2_theorem_confirms_block_fixtures() {
        for name in ["fig1", "fig4", "ex14", "path4"] {
            let g = named_graph(name).unwrap();
            let report = check_degree2_theorem(&g, 3).unwrap();
            assert!(report.confirmed(), "{name}: {report:?}");
            let comp = &report.components[0];
            assert!(comp.kernel_exact);
            assert!(comp.markov.as_ref().unwrap().all_connected);
        }
    }

    #[test]
    fn degree2_theorem_confirms_cliques_trivially() {
        let report = check_degree2_theorem(&Graph::complete(4), 3).unwrap();
        assert!(report.confirmed());
        assert_eq!(report.components[0].generators, 0);
    }

    #[test]
    fn degree2_theorem_flags_non_block_graphs() {
        let fig2 = named_graph("fig2").unwrap();
        let report = check_degree2_theorem(&fig2, 3).unwrap();
        assert_eq!(report.verdict, "NOT_BLOCK");
        assert_eq!(report.components[0].offending_block, Some(vec![3, 4, 5, 6]));

        let fig3 = named_graph("fig3").unwrap();
        let report = check_degree2_theorem(&fig3, 3).unwrap();
        assert_eq!(report.verdict, "NOT_BLOCK");
        let block = report.components[0].offending_block.clone().unwrap();
        assert!(block == vec![1, 2, 3, 4] || block == vec![4, 5, 6, 7], "block {block:?}");

        let report = check_degree2_theorem(&Graph::cycle(4), 3).unwrap();
        assert_eq!(report.verdict, "NOT_BLOCK");
        assert_eq!(report.components[0].offending_block, Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn degree2_theorem_walks_components_separately() {
        // Two triangles, disjoint: fine. An edge plus a square: flagged.
        let g = Graph::new(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        let report = check_degree2_theorem(&g, 3).unwrap();
        assert!(report.confirmed());
        assert_eq!(report.components.len(), 2);

        let h = Graph::new(6, &[(1, 2), (3, 4), (4, 5), (5, 6), (3, 6)]).unwrap();
        let report = check_degree2_theorem(&h, 3).unwrap();
        assert_eq!(report.verdict, "NOT_BLOCK");
        assert_eq!(
            report.components.iter().filter(|c| c.offending_block.is_some()).count(),
            1
        );
    }

    #[test]
    fn quadrics_are_homogeneous_for_the_geodesic_grading() {
        for name in ["fig1", "fig4", "ex14", "path4"] {
            let g = named_graph(name).unwrap();
            assert!(sagbi_homogeneity_check(&g).unwrap(), "{name}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let g = random_block_graph(&mut rng, 7);
            assert!(sagbi_homogeneity_check(&g).unwrap(), "{:?}", g.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn gluing_cubics_vanish_but_only_one_is_new() {
        let gluing = named_graph("fig2").unwrap();
        let guard = ExpansionGuard { max_degree: 3, max_n: 6 };
        let local = gluing_local_ideal();
        assert_eq!(local.len(), 19);
        let [first, second] = fixtures::fig2_cubics();
        for cubic in [&first, &second] {
            assert!(rho_star_substitute_guarded(cubic, &gluing, guard).unwrap().is_zero());
        }

        // The first printed cubic is redundant: expanding the minor on rows
        // {1,2,4} along its bottom row writes it as an explicit combination
        // of three of the cut-vertex quadrics.
        let certificate = sigma_minor(&[1, 2], &[5, 6])
            .monomial_mul(&Monomial::var(Var::s(4, 4)), &rat(1))
            .sub(&sigma_minor(&[1, 2], &[4, 6]).monomial_mul(&Monomial::var(Var::s(4, 5)), &rat(1)))
            .add(&sigma_minor(&[1, 2], &[4, 5]).monomial_mul(&Monomial::var(Var::s(4, 6)), &rat(1)));
        assert_eq!(first, certificate);
        assert_eq!(first, sigma_minor(&[1, 2, 4], &[4, 5, 6]));
        assert!(graded_membership(&local, &first, 6, 3).unwrap());

        // The second is the genuine gap.
        assert_eq!(second, sigma_minor(&[2, 4, 5], &[4, 5, 6]));
        assert!(!graded_membership(&local, &second, 6, 3).unwrap());
    }

    #[test]
    fn quartic_membership_is_immediate_in_the_full_ideal() {
        let squares = named_graph("fig3").unwrap();
        let quartic = fixtures::fig3_quartic();
        let full = ci_generators_full(&squares, 3).unwrap();
        assert!(graded_membership(&full.polys(), &quartic, 7, 4).unwrap());
        let sampled = rho_star_vanishes(&quartic, &squares, 3, 11).unwrap();
        assert!(sampled.vanishes, "{:?}", sampled.witness);
    }

    #[test]
    fn macaulay2_script_is_well_formed() {
        let g = named_graph("fig1").unwrap();
        let set = ci_generators_1clique(&g).unwrap();
        let script = macaulay2_script(&g, &set);
        assert!(script.contains("R = QQ[s11, s12, s13, s14, s22,"));
        assert!(script.contains("I = ideal("));
        assert!(script.contains("degree I"));
        for gen in set.iter() {
            assert!(script.contains(&gen.poly.to_text()));
        }

        let empty = macaulay2_script(&Graph::complete(2), &GeneratorSet::new(2));
        assert!(empty.contains("0_R"));
    }
}
