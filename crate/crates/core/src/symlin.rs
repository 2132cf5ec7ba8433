//! The symbolic concentration matrix `K` of a graph (variables `k_ii` on
//! the diagonal, `k_ij` on edges, zeros elsewhere), its adjugate entries
//! `f_ij = det(K) * (K^-1)_ij`, the simple-path expansion of those entries,
//! the pullback `s_ij -> f_ij`, and exact randomized evaluation: vanishing
//! tests with a Schwartz–Zippel error bound and the model dimension as a
//! Jacobian rank.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{shortest_path, Graph};
use crate::linalg::{det_and_inverse, RowSpace, SparseVec};
use crate::poly::{rat, Monomial, Polynomial, Rat, Var};

/// Adjugate entries are alternating sums of `(n-1)!` products; past this the
/// symbolic route is hopeless and the randomized oracle takes over.
pub const ADJUGATE_LIMIT: usize = 8;

/// Guard for whole-matrix symbolic work (path expansion, pullback).
pub const EXPANSION_LIMIT: usize = 5;

/// `K[i][j]` as a polynomial: `k_ii`, or `k_ij` on an edge, or zero.
pub fn concentration_entry(g: &Graph, i: usize, j: usize) -> Polynomial {
    if i == j {
        Polynomial::var(Var::k(i, i))
    } else if g.has_edge(i, j) {
        Polynomial::var(Var::k(i, j))
    } else {
        Polynomial::zero()
    }
}

/// The symbolic concentration submatrix on `rows x cols`.
pub fn concentration_submatrix(g: &Graph, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| concentration_entry(g, i, j)).collect())
        .collect()
}

/// Determinant of a small symbolic matrix by Laplace expansion along rows,
/// memoized on the set of surviving columns (so shared minors are computed
/// once). The empty matrix has determinant 1.
pub fn sym_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    assert!(n <= 20, "memoized expansion is for small matrices");

    fn rec(m: &[Vec<Polynomial>], cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if cols == 0 {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let row = m.len() - cols.count_ones() as usize;
        let mut acc = Polynomial::zero();
        let mut positive = true;
        for c in 0..m.len() {
            if cols >> c & 1 == 0 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                let minor = rec(m, cols & !(1 << c), memo);
                let term = entry.mul(&minor);
                acc = if positive { acc.add(&term) } else { acc.sub(&term) };
            }
            positive = !positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    rec(m, full, &mut HashMap::new())
}

/// Adjugate entry `f_ij = (-1)^(i+j) det(K with row j and column i removed)`.
/// Symmetric in `(i, j)` because `K` is.
pub fn adjugate_entry(g: &Graph, i: usize, j: usize) -> Result<Polynomial> {
    let n = g.n();
    if n > ADJUGATE_LIMIT {
        return Err(Error::SizeLimit { what: "symbolic adjugate", limit: ADJUGATE_LIMIT });
    }
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidGraph(format!("entry ({i},{j}) out of range for n={n}")));
    }
    let rows: Vec<usize> = (1..=n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != i).collect();
    let minor = sym_det(&concentration_submatrix(g, &rows, &cols));
    Ok(if (i + j) % 2 == 0 { minor } else { minor.neg() })
}

/// All adjugate entries, 0-indexed (`[i-1][j-1]`), computed once per
/// unordered pair.
pub fn adjugate_matrix(g: &Graph) -> Result<Vec<Vec<Polynomial>>> {
    let n = g.n();
    let mut out = vec![vec![Polynomial::zero(); n]; n];
    for i in 1..=n {
        for j in i..=n {
            let f = adjugate_entry(g, i, j)?;
            out[i - 1][j - 1] = f.clone();
            out[j - 1][i - 1] = f;
        }
    }
    Ok(out)
}

/// The distinguished term of `f_ij` read off the unique geodesic: sign
/// `(-1)^len`, the product of the geodesic's edge variables, and `k_tt` for
/// every vertex `t` off the geodesic.
pub fn shortest_path_monomial(g: &Graph, i: usize, j: usize) -> Result<(i64, Monomial)> {
    let path = shortest_path(g, i, j)?;
    let sign = if (path.len() - 1) % 2 == 0 { 1 } else { -1 };
    let mut pairs: Vec<(Var, u32)> =
        path.windows(2).map(|w| (Var::k(w[0], w[1]), 1)).collect();
    for t in 1..=g.n() {
        if !path.contains(&t) {
            pairs.push((Var::k(t, t), 1));
        }
    }
    Ok((sign, Monomial::from_pairs(pairs)))
}

/// Certifies the geodesic term inside the actual adjugate entry: its
/// coefficient must be exactly the predicted sign, and it must carry
/// strictly more diagonal variables than every other term of `f_ij`.
pub fn check_shortest_path_term(g: &Graph, i: usize, j: usize) -> Result<bool> {
    let f = adjugate_entry(g, i, j)?;
    let (sign, mono) = shortest_path_monomial(g, i, j)?;
    if f.coeff(&mono) != rat(sign) {
        return Ok(false);
    }
    let dominant = mono.diagonal_k_degree();
    let strict_max = f.terms().all(|(m, _)| m == &mono || m.diagonal_k_degree() < dominant);
    Ok(strict_max)
}

fn all_simple_paths(g: &Graph, x: usize, y: usize) -> Vec<Vec<usize>> {
    fn dfs(g: &Graph, y: usize, path: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == y {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                dfs(g, y, path, used, out);
                path.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n() + 1];
    used[x] = true;
    dfs(g, y, &mut vec![x], &mut used, &mut out);
    out
}

/// Verifies the simple-path expansion of an adjugate entry:
/// `f_xy` equals the sum over all simple paths `P` from `x` to `y` of
/// `(-1)^(|P|+1)` times the path's edge variables times the determinant of
/// `K` with the path's vertices deleted. Holds for *every* graph, block or
/// not; `x == y` contributes the single trivial path. Guarded to small `n`
/// because the symbolic sum is exponential.
pub fn jones_expansion_check(g: &Graph, x: usize, y: usize) -> Result<bool> {
    let n = g.n();
    if n > EXPANSION_LIMIT {
        return Err(Error::SizeLimit { what: "path expansion", limit: EXPANSION_LIMIT });
    }
    if x == 0 || y == 0 || x > n || y > n {
        return Err(Error::InvalidGraph(format!("entry ({x},{y}) out of range for n={n}")));
    }
    let mut sum = Polynomial::zero();
    for path in all_simple_paths(g, x, y) {
        let base = Monomial::from_pairs(path.windows(2).map(|w| (Var::k(w[0], w[1]), 1)));
        let rest: Vec<usize> = (1..=n).filter(|v| !path.contains(v)).collect();
        let minor = sym_det(&concentration_submatrix(g, &rest, &rest));
        let signed = if path.len() % 2 == 1 { minor } else { minor.neg() };
        sum = sum.add(&signed.monomial_mul(&base, &rat(1)));
    }
    Ok(sum == adjugate_entry(g, x, y)?)
}

/// Guard for symbolic pullback: refuses polynomials of degree beyond
/// `max_degree` or graphs beyond `max_n` vertices.
#[derive(Debug, Clone, Copy)]
pub struct ExpansionGuard {
    pub max_degree: u32,
    pub max_n: usize,
}

impl Default for ExpansionGuard {
    fn default() -> Self {
        ExpansionGuard { max_degree: 3, max_n: EXPANSION_LIMIT }
    }
}

/// Pullback along the parametrization: substitutes `s_ij -> f_ij` into a
/// polynomial in the `s` variables and expands symbolically. The result is
/// identically zero precisely when `p` is in the vanishing ideal.
pub fn rho_star_substitute(p: &Polynomial, g: &Graph) -> Result<Polynomial> {
    rho_star_substitute_guarded(p, g, ExpansionGuard::default())
}

/// Same as [`rho_star_substitute`] with an explicit size guard for callers
/// that knowingly pay for more.
pub fn rho_star_substitute_guarded(
    p: &Polynomial,
    g: &Graph,
    guard: ExpansionGuard,
) -> Result<Polynomial> {
    if p.degree() > guard.max_degree {
        return Err(Error::SizeLimit {
            what: "pullback expansion degree",
            limit: guard.max_degree as usize,
        });
    }
    if g.n() > guard.max_n {
        return Err(Error::SizeLimit { what: "pullback expansion vertex count", limit: guard.max_n });
    }
    let adj = adjugate_matrix(g)?;
    let mut images: BTreeMap<Var, Polynomial> = BTreeMap::new();
    for v in p.support() {
        match v {
            Var::S(i, j) => {
                images.insert(v, adj[i as usize - 1][j as usize - 1].clone());
            }
            other => return Err(Error::MissingVariable(other.to_string())),
        }
    }
    p.substitute(&images)
}

/// A sampled concentration point and everything derived from it. Diagonal
/// entries are drawn from `[10n, 20n]` and edge entries from `[-10, 10]`,
/// which keeps `K` strictly diagonally dominant — hence invertible — at
/// every draw.
pub struct ModelPoint {
    /// Assignment for the `k` variables.
    pub k_values: BTreeMap<Var, Rat>,
    /// Assignment `s_ij -> f_ij(k)` for the adjugate pullback.
    pub adjugate_values: BTreeMap<Var, Rat>,
    /// `det K`.
    pub det: Rat,
    /// Covariance matrix `K^-1`, 0-indexed.
    pub covariance: Vec<Vec<Rat>>,
}

/// Draws a model point. `DegenerateSampling` is returned only if repeated
/// draws all produce a singular matrix, which diagonal dominance rules out;
/// the retry loop is belt and braces.
pub fn random_model_point<R: Rng>(g: &Graph, rng: &mut R) -> Result<ModelPoint> {
    let n = g.n();
    for _ in 0..8 {
        let mut k_values = BTreeMap::new();
        let mut kmat = vec![vec![Rat::zero(); n]; n];
        for i in 1..=n {
            let d = rat(rng.gen_range(10 * n as i64..=20 * n as i64));
            kmat[i - 1][i - 1] = d.clone();
            k_values.insert(Var::k(i, i), d);
        }
        for (i, j) in g.edges() {
            let x = rat(rng.gen_range(-10..=10));
            kmat[i - 1][j - 1] = x.clone();
            kmat[j - 1][i - 1] = x.clone();
            k_values.insert(Var::k(i, j), x);
        }
        let Some((det, covariance)) = det_and_inverse(&kmat) else { continue };
        let mut adjugate_values = BTreeMap::new();
        for i in 1..=n {
            for j in i..=n {
                adjugate_values.insert(Var::s(i, j), &det * &covariance[i - 1][j - 1]);
            }
        }
        return Ok(ModelPoint { k_values, adjugate_values, det, covariance });
    }
    Err(Error::DegenerateSampling)
}

/// Witness that a polynomial failed to vanish: the sampled `k` values and
/// the nonzero value taken.
#[derive(Debug, Clone, Serialize)]
pub struct VanishWitness {
    pub k_values: Vec<(String, String)>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishReport {
    pub vanishes: bool,
    pub trials: u32,
    /// Schwartz–Zippel bound on the probability that a *nonzero* pullback
    /// would still have evaluated to zero in every trial: each variable
    /// ranges over at least 21 values, so one trial errs with probability at
    /// most `deg(p) * (n-1) / 21`, independently per trial.
    pub error_bound: f64,
    pub witness: Option<VanishWitness>,
}

/// Randomized vanishing test for `p` under the pullback `s_ij -> f_ij`,
/// evaluated at `trials` independent exact rational points derived
/// deterministically from `seed`.
pub fn rho_star_vanishes(p: &Polynomial, g: &Graph, trials: u32, seed: u64) -> Result<VanishReport> {
    let trials = trials.max(1);
    let composite_degree = u64::from(p.degree()) * (g.n().saturating_sub(1)) as u64;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(t) + 1);
        let point = random_model_point(g, &mut rng)?;
        let value = p.evaluate(&point.adjugate_values)?;
        if !value.is_zero() {
            let k_values = point
                .k_values
                .iter()
                .map(|(v, x)| (v.to_string(), x.to_string()))
                .collect();
            return Ok(VanishReport {
                vanishes: false,
                trials: t + 1,
                error_bound: 0.0,
                witness: Some(VanishWitness { k_values, value: value.to_string() }),
            });
        }
    }
    let per_trial = (composite_degree as f64 / 21.0).min(1.0);
    Ok(VanishReport {
        vanishes: true,
        trials,
        error_bound: per_trial.powi(trials as i32),
        witness: None,
    })
}

/// Dimension of the Gaussian model of `g`: the rank of the Jacobian of
/// `K -> K^-1` (as a map into symmetric matrices) at a generic point. The
/// rank is computed exactly at random points and maximized over three draws
/// so an unlucky special point cannot under-report.
pub fn model_dimension(g: &Graph, seed: u64) -> Result<usize> {
    let n = g.n();
    let params: Vec<Var> =
        (1..=n).map(|i| Var::k(i, i)).chain(g.edges().map(|(i, j)| Var::k(i, j))).collect();
    let col_index: BTreeMap<(usize, usize), usize> = {
        let mut idx = BTreeMap::new();
        for i in 1..=n {
            for j in i..=n {
                let next = idx.len();
                idx.insert((i, j), next);
            }
        }
        idx
    };
    let mut best = 0;
    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(100 + attempt);
        let point = random_model_point(g, &mut rng)?;
        let sigma = &point.covariance;
        // d(K^-1)/dk_e = -K^-1 (dK/dk_e) K^-1; one row per parameter.
        let mut space = RowSpace::new();
        for var in &params {
            let Var::K(i, j) = *var else { unreachable!("parameters are k variables") };
            let (i, j) = (i as usize, j as usize);
            let mut row = vec![Rat::zero(); col_index.len()];
            for ((p, q), &col) in &col_index {
                let d = if i == j {
                    -(&sigma[p - 1][i - 1] * &sigma[i - 1][q - 1])
                } else {
                    -(&(&sigma[p - 1][i - 1] * &sigma[j - 1][q - 1])
                        + &(&sigma[p - 1][j - 1] * &sigma[i - 1][q - 1]))
                };
                row[col] = d;
            }
            space.insert(SparseVec::from_dense(&row));
        }
        best = best.max(space.rank());
    }
    Ok(best)
}
