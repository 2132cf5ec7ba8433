//! The two monomial maps of a block graph and their exponent matrices.
//!
//! For vertices `i <= j` with geodesic `P(i,j)`:
//!
//! * `psi(s_ij) = a_i * a_j * prod_{e in P(i,j)} k_e` — the shortest-path
//!   map (`a_i^2` when `i = j`),
//! * `phi(s_ij) = prod_{e in P(i,j)} k_e * prod_{t not on P(i,j)} k_tt` —
//!   the magnitude of the geodesic term of the adjugate entry `f_ij`.
//!
//! Both maps have the same kernel on block graphs; the matrix-level witness
//! is that their exponent matrices span the same row space over the
//! rationals, which is checked here exactly, together with the linear
//! relation that converts one row system into the other.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{central_vertices, contract_to_center, shortest_path, Graph};
use crate::linalg::int_rows_contained;
use crate::poly::{sigma_vars, Monomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// The shortest-path map into `a` and `k` variables.
    Psi,
    /// The geodesic-term map into `k` variables only.
    Phi,
}

/// `psi(s_ij)`.
pub fn psi_image(g: &Graph, i: usize, j: usize) -> Result<Monomial> {
    let path = shortest_path(g, i, j)?;
    let mut pairs: Vec<(Var, u32)> = vec![(Var::a(i), 1), (Var::a(j), 1)];
    pairs.extend(path.windows(2).map(|w| (Var::k(w[0], w[1]), 1)));
    Ok(Monomial::from_pairs(pairs))
}

/// `phi(s_ij)`.
pub fn phi_image(g: &Graph, i: usize, j: usize) -> Result<Monomial> {
    let path = shortest_path(g, i, j)?;
    let mut pairs: Vec<(Var, u32)> =
        path.windows(2).map(|w| (Var::k(w[0], w[1]), 1)).collect();
    pairs.extend((1..=g.n()).filter(|t| !path.contains(t)).map(|t| (Var::k(t, t), 1)));
    Ok(Monomial::from_pairs(pairs))
}

/// An integer matrix with named rows (map variables) and named columns
/// (the `s_ij` grid, lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub rows: Vec<Var>,
    pub cols: Vec<Var>,
    pub data: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    /// Matrix–vector product over the column grid.
    pub fn mul_vec(&self, u: &[i64]) -> Result<Vec<i64>> {
        if u.len() != self.cols.len() {
            return Err(Error::DimensionMismatch { want: self.cols.len(), got: u.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Exponent vector of a monomial over the column grid; any variable
    /// outside the grid is a `ColumnMismatch`.
    pub fn exponents_of(&self, m: &Monomial) -> Result<Vec<i64>> {
        let index: BTreeMap<Var, usize> =
            self.cols.iter().enumerate().map(|(c, &v)| (v, c)).collect();
        let mut u = vec![0i64; self.cols.len()];
        for (v, e) in m.iter() {
            let Some(&c) = index.get(&v) else { return Err(Error::ColumnMismatch) };
            u[c] = i64::from(e);
        }
        Ok(u)
    }

    pub fn row_of(&self, v: Var) -> Option<&Vec<i64>> {
        self.rows.iter().position(|&r| r == v).map(|r| &self.data[r])
    }

    /// JSON shape: `{"rows": ["a1", ...], "cols": ["s11", ...], "data": [[...]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "data": self.data,
        })
    }
}

/// Builds the exponent matrix of `psi` or `phi`: columns are `s_ij`
/// lexicographic; rows are `a_1..a_n` (`psi`) or `k_11..k_nn` (`phi`)
/// followed by `k_e` per edge, lexicographic.
pub fn build_matrix(g: &Graph, kind: MapKind) -> Result<ExponentMatrix> {
    let n = g.n();
    let cols = sigma_vars(n);
    let rows: Vec<Var> = match kind {
        MapKind::Psi => (1..=n)
            .map(Var::a)
            .chain(g.edges().map(|(i, j)| Var::k(i, j)))
            .collect(),
        MapKind::Phi => (1..=n)
            .map(|i| Var::k(i, i))
            .chain(g.edges().map(|(i, j)| Var::k(i, j)))
            .collect(),
    };
    let mut data = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, &sv) in cols.iter().enumerate() {
        let Var::S(i, j) = sv else { unreachable!("columns are s variables") };
        let image = match kind {
            MapKind::Psi => psi_image(g, i as usize, j as usize)?,
            MapKind::Phi => phi_image(g, i as usize, j as usize)?,
        };
        for (r, &rv) in rows.iter().enumerate() {
            data[r][c] = i64::from(image.exponent(rv));
        }
    }
    Ok(ExponentMatrix { rows, cols, data })
}

/// Exact row-space equality over the rationals, by mutual containment.
///
/// The single-vertex model is a special case: its two matrices are `[2]`
/// (for `psi`, row `a1`) and `[0]` (for `phi`, which assigns `s11` the
/// empty product), and the comparison is *defined* to be true there — the
/// model is a point and both kernels are zero.
pub fn row_space_equal(m1: &ExponentMatrix, m2: &ExponentMatrix) -> Result<bool> {
    if m1.cols != m2.cols {
        return Err(Error::ColumnMismatch);
    }
    if m1.cols.len() == 1 {
        return Ok(true);
    }
    Ok(int_rows_contained(&m1.data, &m2.data) && int_rows_contained(&m2.data, &m1.data))
}

/// The linear relation tying the two matrices together: for every vertex
/// `i`, twice the `k_ii` row of the `phi` matrix equals the sum of the
/// `a_j` rows of the `psi` matrix over `j != i` minus the sum of its
/// `k_is` rows over neighbors `s` of `i`.
pub fn kii_relation_check(g: &Graph) -> Result<bool> {
    let n = g.n();
    let psi = build_matrix(g, MapKind::Psi)?;
    let phi = build_matrix(g, MapKind::Phi)?;
    let width = psi.cols.len();
    for i in 1..=n {
        let phi_row = phi.row_of(Var::k(i, i)).expect("phi has every diagonal row");
        let mut rhs = vec![0i64; width];
        for j in (1..=n).filter(|&j| j != i) {
            let aj = psi.row_of(Var::a(j)).expect("psi has every vertex row");
            for (acc, x) in rhs.iter_mut().zip(aj) {
                *acc += x;
            }
        }
        for &s in g.neighbors(i) {
            let kis = psi.row_of(Var::k(i, s)).expect("psi has every edge row");
            for (acc, x) in rhs.iter_mut().zip(kis) {
                *acc -= x;
            }
        }
        if phi_row.iter().map(|&x| 2 * x).ne(rhs.iter().copied()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does `s^u - s^v` lie in the kernel of the map with matrix `m`, i.e. is
/// `M u = M v`?
pub fn kernel_member(m: &ExponentMatrix, u: &[i64], v: &[i64]) -> Result<bool> {
    Ok(m.mul_vec(u)? == m.mul_vec(v)?)
}

/// Compatibility of a kernel binomial with contraction to a central vertex:
/// given `s^u - s^v` in the kernel of the shortest-path map of `g`, the
/// coordinates whose geodesic passes through `c` — pushed forward along the
/// contraction — must again form a kernel pair for the contracted star.
///
/// Returns the equality verdict; rejecting inputs that are not kernel pairs
/// (`NotInKernel`) or centers that are not central (`NotCentral`).
pub fn contraction_check(g: &Graph, c: usize, u: &Monomial, v: &Monomial) -> Result<bool> {
    if !central_vertices(g).contains(&c) {
        return Err(Error::NotCentral(c));
    }
    let m = build_matrix(g, MapKind::Psi)?;
    let ue = m.exponents_of(u)?;
    let ve = m.exponents_of(v)?;
    if !kernel_member(&m, &ue, &ve)? {
        return Err(Error::NotInKernel);
    }
    let con = contract_to_center(g, c)?;
    let old_to_new: BTreeMap<usize, usize> = con
        .star_labels
        .iter()
        .enumerate()
        .skip(1)
        .map(|(new, &old)| (old, new))
        .collect();

    // Push a monomial forward: keep the coordinates whose geodesic passes
    // through c, with endpoints relabeled along the contraction.
    let push = |mono: &Monomial| -> Result<Monomial> {
        let mut pairs = Vec::new();
        for (var, e) in mono.iter() {
            let Var::S(p, q) = var else { unreachable!("kernel coordinates are s variables") };
            let (p, q) = (p as usize, q as usize);
            if shortest_path(g, p, q)?.contains(&c) {
                pairs.push((Var::s(con.rho[p], con.rho[q]), e));
            }
        }
        Ok(Monomial::from_pairs(pairs))
    };

    // Evaluate the contracted star's shortest-path map on a pushed monomial.
    let star_image = |mono: &Monomial| -> Result<Monomial> {
        let mut acc = Monomial::one();
        for (var, e) in mono.iter() {
            let Var::S(p, q) = var else { unreachable!("pushed coordinates are s variables") };
            let img = psi_image(&con.star, old_to_new[&(p as usize)], old_to_new[&(q as usize)])?;
            acc = acc.mul(&img.pow(e));
        }
        Ok(acc)
    };

    Ok(star_image(&push(u)?)? == star_image(&push(v)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        fig1_phi_matrix_display, fig1_psi_matrix_display, named_graph, random_block_graph,
    };
    use crate::symlin::shortest_path_monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mono(text: &str) -> Monomial {
        let p: crate::poly::Polynomial = text.parse().unwrap();
        let (m, _) = p.leading_term(&crate::poly::TermOrder::grevlex()).unwrap();
        m
    }

    #[test]
    fn image_examples() {
        let g = named_graph("fig1").unwrap();
        assert_eq!(psi_image(&g, 1, 1).unwrap().to_string(), "a1^2");
        assert_eq!(psi_image(&g, 1, 4).unwrap().to_string(), "a1*a4*k13*k34");
        assert_eq!(psi_image(&g, 4, 2).unwrap().to_string(), "a2*a4*k23*k34");
        assert_eq!(phi_image(&g, 1, 1).unwrap().to_string(), "k22*k33*k44");
        assert_eq!(phi_image(&g, 1, 2).unwrap().to_string(), "k12*k33*k44");
        assert_eq!(phi_image(&g, 1, 4).unwrap().to_string(), "k13*k22*k34");
        assert!(matches!(
            psi_image(&Graph::cycle(4), 1, 3),
            Err(Error::NotUnique { .. })
        ));
    }

    #[test]
    fn phi_is_the_geodesic_term_magnitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..15 {
            let g = random_block_graph(&mut rng, 7);
            for i in 1..=g.n() {
                for j in i..=g.n() {
                    let (_, m) = shortest_path_monomial(&g, i, j).unwrap();
                    assert_eq!(phi_image(&g, i, j).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn matrices_match_displays() {
        let g = named_graph("fig1").unwrap();
        let psi = build_matrix(&g, MapKind::Psi).unwrap();
        let phi = build_matrix(&g, MapKind::Phi).unwrap();
        assert_eq!(psi.data, fig1_psi_matrix_display());
        assert_eq!(phi.data, fig1_phi_matrix_display());
        assert_eq!(
            psi.rows,
            vec![
                Var::a(1),
                Var::a(2),
                Var::a(3),
                Var::a(4),
                Var::k(1, 2),
                Var::k(1, 3),
                Var::k(2, 3),
                Var::k(3, 4)
            ]
        );
        assert_eq!(phi.rows[..4], [Var::k(1, 1), Var::k(2, 2), Var::k(3, 3), Var::k(4, 4)]);
        assert_eq!(psi.cols.len(), 10);

        let k2 = Graph::complete(2);
        let m = build_matrix(&k2, MapKind::Psi).unwrap();
        assert_eq!(m.data, vec![vec![2, 1, 0], vec![0, 1, 2], vec![0, 1, 0]]);
    }

    #[test]
    fn matrix_json_shape() {
        let g = Graph::complete(2);
        let j = build_matrix(&g, MapKind::Phi).unwrap().to_json();
        assert_eq!(j["rows"], serde_json::json!(["k11", "k22", "k12"]));
        assert_eq!(j["cols"], serde_json::json!(["s11", "s12", "s22"]));
        assert_eq!(j["data"], serde_json::json!([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
    }

    #[test]
    fn row_spaces_agree_on_block_graphs() {
        for name in ["fig1", "fig4", "ex14", "path4"] {
            let g = named_graph(name).unwrap();
            let psi = build_matrix(&g, MapKind::Psi).unwrap();
            let phi = build_matrix(&g, MapKind::Phi).unwrap();
            assert!(row_space_equal(&psi, &phi).unwrap(), "{name}");
            assert!(row_space_equal(&psi, &psi).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let g = random_block_graph(&mut rng, 8);
            let psi = build_matrix(&g, MapKind::Psi).unwrap();
            let phi = build_matrix(&g, MapKind::Phi).unwrap();
            assert!(row_space_equal(&psi, &phi).unwrap());
        }
    }

    #[test]
    fn single_vertex_is_trivially_equal() {
        let g = Graph::new(1, &[]).unwrap();
        let psi = build_matrix(&g, MapKind::Psi).unwrap();
        let phi = build_matrix(&g, MapKind::Phi).unwrap();
        assert_eq!(psi.data, vec![vec![2]]);
        assert_eq!(phi.data, vec![vec![0]]);
        assert!(row_space_equal(&psi, &phi).unwrap());
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let m2 = build_matrix(&Graph::complete(2), MapKind::Psi).unwrap();
        let m3 = build_matrix(&Graph::complete(3), MapKind::Psi).unwrap();
        assert!(matches!(row_space_equal(&m2, &m3), Err(Error::ColumnMismatch)));
    }

    #[test]
    fn diagonal_row_relation() {
        for name in ["fig1", "fig4", "ex14", "path4"] {
            assert!(kii_relation_check(&named_graph(name).unwrap()).unwrap(), "{name}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            assert!(kii_relation_check(&random_block_graph(&mut rng, 8)).unwrap());
        }
    }

    #[test]
    fn kernel_membership() {
        let g = named_graph("fig1").unwrap();
        let m = build_matrix(&g, MapKind::Psi).unwrap();
        let u = m.exponents_of(&mono("s13*s34")).unwrap();
        let v = m.exponents_of(&mono("s14*s33")).unwrap();
        assert!(kernel_member(&m, &u, &v).unwrap());
        let w = m.exponents_of(&mono("s11*s34")).unwrap();
        assert!(!kernel_member(&m, &u, &w).unwrap());
        assert!(matches!(
            kernel_member(&m, &u[..3], &v),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            m.exponents_of(&mono("s15*s23")),
            Err(Error::ColumnMismatch)
        ));
    }

    #[test]
    fn contraction_compatibility() {
        let g = named_graph("ex14").unwrap();
        // A genuine kernel pair: both sides map to a3*a4*a5*a6*k34*k45*k46.
        assert!(contraction_check(&g, 4, &mono("s35*s46"), &mono("s36*s45")).unwrap());
        assert!(contraction_check(&g, 3, &mono("s35*s46"), &mono("s36*s45")).unwrap());
        // Not a kernel pair: psi weights the geodesic 1-3-4 differently.
        assert!(matches!(
            contraction_check(&g, 4, &mono("s13*s45"), &mono("s15*s34")),
            Err(Error::NotInKernel)
        ));
        assert!(matches!(
            contraction_check(&g, 1, &mono("s35*s46"), &mono("s36*s45")),
            Err(Error::NotCentral(1))
        ));
        // Star graph: contraction is the identity and the check degenerates
        // to plain kernel membership.
        let star = Graph::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(contraction_check(&star, 1, &mono("s12*s13"), &mono("s11*s23")).unwrap());
    }

    #[test]
    fn contraction_preserves_every_fixture_kernel_generator() {
        let g = named_graph("ex14").unwrap();
        for p in crate::fixtures::ex14_ci_display() {
            let terms: Vec<&Monomial> = p.terms().map(|(m, _)| m).collect();
            assert_eq!(terms.len(), 2);
            for c in [3, 4] {
                // Every displayed generator is a kernel pair, so the
                // contracted pair must be one too.
                assert!(contraction_check(&g, c, terms[0], terms[1]).unwrap());
            }
        }
    }
}
