//! Built-in worked examples: the six named graphs the test suites and the
//! CLI refer to by name, together with the displayed polynomials and
//! exponent matrices that the acceptance checks compare against.
//!
//! One transcription note: the displayed `f12` for `fig1` circulates with
//! two sign typos (`-k12*k34^2 - k13*k23*k44` where the genuine adjugate
//! entry has `+`); the version here is the corrected one, which is what
//! `K · adj(K) = det(K) · Id` forces.

use rand::Rng;

use crate::graph::Graph;
use crate::poly::Polynomial;

/// The named example graphs:
///
/// * `fig1`  — triangle `{1,2,3}` with pendant edge `{3,4}`,
/// * `fig2`  — triangle glued to a 4-cycle-with-chord on `{3,4,5,6}`; not a block graph,
/// * `fig3`  — two 4-cycles sharing vertex 4 plus a pendant square; not a block graph,
/// * `fig4`  — triangle `{1,2,3}` with pendant edges `{3,4}` and `{3,5}`,
/// * `ex14`  — triangle `{1,2,3}` with path `3-4` and pendant edges `{4,5}`, `{4,6}`,
/// * `path4` — the path `1-2-3-4`.
pub fn named_graph(name: &str) -> Option<Graph> {
    let (n, edges): (usize, &[(usize, usize)]) = match name {
        "fig1" => (4, &[(1, 2), (2, 3), (3, 4), (1, 3)]),
        "fig2" => (6, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]),
        "fig3" => (7, &[(1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)]),
        "fig4" => (5, &[(1, 2), (2, 3), (3, 4), (3, 5), (1, 3)]),
        "ex14" => (6, &[(1, 2), (2, 3), (3, 4), (1, 3), (4, 5), (4, 6)]),
        "path4" => (4, &[(1, 2), (2, 3), (3, 4)]),
        _ => return None,
    };
    Some(Graph::new(n, edges).expect("fixture graphs are valid"))
}

pub const GRAPH_NAMES: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "ex14", "path4"];

fn parse_all(texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| t.parse().expect("fixture polynomial parses")).collect()
}

/// The three displayed generators of the vanishing ideal of `fig1`.
pub fn fig1_kernel_display() -> Vec<Polynomial> {
    parse_all(&["s13*s34 - s14*s33", "s23*s34 - s24*s33", "s14*s23 - s13*s24"])
}

/// All ten displayed adjugate entries `f_ij` of the `fig1` concentration
/// matrix (symmetric, so `i <= j`), with the corrected `f12`.
pub fn fig1_adjugate_display() -> Vec<((usize, usize), Polynomial)> {
    let items: [((usize, usize), &str); 10] = [
        ((1, 1), "k22*k33*k44 - k22*k34^2 - k23^2*k44"),
        ((2, 2), "k11*k33*k44 - k11*k34^2 - k13^2*k44"),
        ((3, 3), "k11*k22*k44 - k44*k12^2"),
        ((4, 4), "k11*k22*k33 - k11*k23^2 - k12^2*k33 + 2*k12*k13*k23 - k13^2*k22"),
        ((1, 2), "-k12*k33*k44 + k12*k34^2 + k13*k23*k44"),
        ((1, 3), "-k13*k22*k44 + k12*k23*k44"),
        ((1, 4), "k13*k34*k22 - k12*k23*k34"),
        ((2, 3), "-k23*k11*k44 + k12*k13*k44"),
        ((2, 4), "k23*k34*k11 - k34*k13*k12"),
        ((3, 4), "-k34*k11*k22 + k34*k12^2"),
    ];
    items
        .into_iter()
        .map(|(ij, t)| (ij, t.parse().expect("fixture polynomial parses")))
        .collect()
}

/// Exponent matrix of the path-weight map for `fig1`: rows
/// `k11,k22,k33,k44,k12,k13,k23,k34`, columns `s11..s44` lexicographic.
pub fn fig1_phi_matrix_display() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
        vec![1, 0, 1, 1, 0, 0, 0, 1, 1, 1],
        vec![1, 1, 0, 0, 1, 0, 0, 0, 0, 1],
        vec![1, 1, 1, 0, 1, 1, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
    ]
}

/// Exponent matrix of the shortest-path map for `fig1`: rows
/// `a1,a2,a3,a4,k12,k13,k23,k34`, columns `s11..s44` lexicographic.
pub fn fig1_psi_matrix_display() -> Vec<Vec<i64>> {
    vec![
        vec![2, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 2, 1, 1, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 1, 0, 2, 1, 0],
        vec![0, 0, 0, 1, 0, 0, 1, 0, 1, 2],
        vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
    ]
}

/// The 35 displayed conditional-independence generators for `ex14` (one
/// appears twice in the display, so the set has 34 distinct members).
pub fn ex14_ci_display() -> Vec<Polynomial> {
    parse_all(&[
        "s13*s24 - s14*s23",
        "s13*s25 - s15*s23",
        "s13*s26 - s16*s23",
        "s14*s25 - s15*s24",
        "s23*s34 - s24*s33",
        "s23*s35 - s25*s33",
        "s23*s36 - s26*s33",
        "s24*s35 - s25*s34",
        "s24*s36 - s26*s34",
        "s25*s36 - s26*s35",
        "s13*s34 - s14*s33",
        "s13*s35 - s15*s33",
        "s13*s36 - s16*s33",
        "s14*s35 - s15*s34",
        "s14*s36 - s16*s34",
        "s15*s36 - s16*s35",
        "s14*s45 - s15*s44",
        "s14*s46 - s16*s44",
        "s15*s46 - s16*s45",
        "s24*s45 - s25*s44",
        "s24*s46 - s26*s44",
        "s25*s46 - s26*s45",
        "s34*s45 - s35*s44",
        "s34*s46 - s36*s44",
        "s35*s46 - s36*s45",
        "s14*s56 - s16*s45",
        "s24*s56 - s26*s45",
        "s34*s56 - s36*s45",
        "s44*s56 - s46*s45",
        "s14*s56 - s15*s46",
        "s24*s56 - s25*s46",
        "s34*s56 - s35*s46",
        "s44*s56 - s45*s46",
        "s14*s26 - s16*s24",
        "s15*s26 - s16*s25",
    ])
}

/// The 12 displayed kernel generators for `fig4`.
pub fn fig4_kernel_display() -> Vec<Polynomial> {
    parse_all(&[
        "s34*s35 - s33*s45",
        "s24*s35 - s23*s45",
        "s14*s35 - s13*s45",
        "s25*s34 - s23*s45",
        "s15*s34 - s13*s45",
        "s25*s33 - s23*s35",
        "s24*s33 - s23*s34",
        "s15*s33 - s13*s35",
        "s14*s33 - s13*s34",
        "s15*s24 - s14*s25",
        "s15*s23 - s13*s25",
        "s14*s23 - s13*s24",
    ])
}

/// The two displayed degree-3 vanishing polynomials for `fig2` (3x3 minors
/// of the covariance matrix on rows {1,2,4} x columns {4,5,6} and rows
/// {2,4,5} x columns {4,5,6}).
pub fn fig2_cubics() -> [Polynomial; 2] {
    let c1 = "s14*s25*s46 - s14*s26*s45 - s15*s24*s46 + s15*s26*s44 + s16*s24*s45 - s16*s25*s44";
    let c2 = "s24*s45*s56 - s24*s46*s55 - s25*s44*s56 + s25*s46*s45 + s26*s44*s55 - s26*s45^2";
    [c1.parse().unwrap(), c2.parse().unwrap()]
}

/// The displayed degree-4 vanishing polynomial `m` for `fig3` (a 4x4 minor
/// of the covariance matrix on rows {1,2,5,7} x columns {1,3,6,7}, up to
/// sign).
pub fn fig3_quartic() -> Polynomial {
    "s17^2*s23*s56 - s13*s17*s27*s56 - s12*s17*s37*s56 + s11*s27*s37*s56 \
     - s16*s17*s23*s57 + s13*s16*s27*s57 + s12*s16*s37*s57 - s11*s26*s37*s57 \
     - s15*s17*s23*s67 + s13*s15*s27*s67 + s12*s15*s37*s67 - s11*s25*s37*s67 \
     - s12*s13*s57*s67 + s11*s23*s57*s67 + s15*s16*s23*s77 - s13*s15*s26*s77 \
     - s12*s15*s36*s77 + s11*s25*s36*s77 + s12*s13*s56*s77 - s11*s23*s56*s77"
        .parse()
        .unwrap()
}

/// Random connected block graph on at most `max_n` vertices: grown by
/// repeatedly gluing a fresh clique (2 to 4 vertices) onto one existing
/// vertex, which is exactly the 1-clique-sum structure.
pub fn random_block_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    assert!(max_n >= 1);
    let target = rng.gen_range(1..=max_n);
    let mut n = 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    while n < target {
        let anchor = rng.gen_range(1..=n);
        let grow = rng.gen_range(1..=(target - n).min(3));
        let fresh: Vec<usize> = (n + 1..=n + grow).collect();
        let clique: Vec<usize> = std::iter::once(anchor).chain(fresh.iter().copied()).collect();
        for (idx, &a) in clique.iter().enumerate() {
            for &b in &clique[idx + 1..] {
                edges.push((a, b));
            }
        }
        n += grow;
    }
    Graph::new(n, &edges).expect("grown block graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{biconnected_components, is_block_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_graphs_exist_and_unknown_is_none() {
        for name in GRAPH_NAMES {
            assert!(named_graph(name).is_some(), "{name} missing");
        }
        assert!(named_graph("fig9").is_none());
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(named_graph("fig1").unwrap().edge_count(), 4);
        assert_eq!(named_graph("fig2").unwrap().edge_count(), 8);
        assert_eq!(named_graph("fig3").unwrap().edge_count(), 8);
        assert_eq!(named_graph("fig4").unwrap().edge_count(), 5);
        assert_eq!(named_graph("ex14").unwrap().edge_count(), 6);
        assert_eq!(fig1_kernel_display().len(), 3);
        assert_eq!(fig1_adjugate_display().len(), 10);
        assert_eq!(ex14_ci_display().len(), 35);
        assert_eq!(fig4_kernel_display().len(), 12);
        assert!(fig2_cubics().iter().all(|c| c.degree() == 3 && c.term_count() == 6));
        let m = fig3_quartic();
        assert_eq!(m.degree(), 4);
        assert_eq!(m.term_count(), 20);
    }

    #[test]
    fn displayed_duplicate_collapses_to_34() {
        let mut set: Vec<Polynomial> =
            ex14_ci_display().iter().map(|p| p.sign_normalized()).collect();
        set.sort_by_key(|p| p.to_string());
        set.dedup();
        assert_eq!(set.len(), 34);
    }

    #[test]
    fn block_graph_fixtures_are_block_graphs() {
        for name in ["fig1", "fig4", "ex14", "path4"] {
            assert!(is_block_graph(&named_graph(name).unwrap()), "{name}");
        }
        for name in ["fig2", "fig3"] {
            assert!(!is_block_graph(&named_graph(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn random_block_graphs_are_connected_block_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let g = random_block_graph(&mut rng, 9);
            assert!(g.n() >= 1 && g.n() <= 9);
            assert!(g.is_connected());
            assert!(is_block_graph(&g));
            for b in biconnected_components(&g) {
                assert!(b.len() <= 4);
            }
        }
    }
}
