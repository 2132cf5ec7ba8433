//! Exact linear algebra over the rationals: sparse row-echelon spans for
//! rank / membership questions in very high-dimensional coordinate spaces,
//! plus small dense determinants and inverses for the evaluation oracles.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::poly::Rat;

/// Sparse vector: `(index, coefficient)` pairs, ascending, all nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn from_entries(mut pairs: Vec<(usize, Rat)>) -> SparseVec {
        pairs.sort_by_key(|&(i, _)| i);
        let mut entries: Vec<(usize, Rat)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(row: &[Rat]) -> SparseVec {
        SparseVec {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest index carrying a nonzero coefficient — the pivot position.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }

    pub fn pivot_coeff(&self) -> Option<&Rat> {
        self.entries.last().map(|(_, c)| c)
    }

    pub fn scaled(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self - c * other`, merged in one pass.
    pub fn sub_scaled(&self, c: &Rat, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            let xi = x.peek().map(|e| e.0);
            let yi = y.peek().map(|e| e.0);
            match (xi, yi) {
                (Some(i), Some(j)) if i < j => out.push(x.next().unwrap().clone()),
                (Some(i), Some(j)) if i > j => {
                    let (j, b) = y.next().unwrap();
                    out.push((*j, -(b * c)));
                }
                (Some(_), Some(_)) => {
                    let (i, a) = x.next().unwrap();
                    let (_, b) = y.next().unwrap();
                    let v = a - &(b * c);
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                }
                (Some(_), None) => out.push(x.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (j, b) = y.next().unwrap();
                    out.push((*j, -(b * c)));
                }
                (None, None) => return SparseVec { entries: out },
            }
        }
    }
}

/// Incrementally built row space in echelon form (pivot = trailing index,
/// pivot coefficient normalized to 1). Insertion order doesn't affect the
/// final rank, only the basis chosen.
#[derive(Debug, Default)]
pub struct RowSpace {
    rows: Vec<SparseVec>,
    by_pivot: HashMap<usize, usize>,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates `v` against the stored rows until its pivot is fresh or it
    /// dies.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some(p) = v.pivot() {
            let Some(&ri) = self.by_pivot.get(&p) else { break };
            let c = v.pivot_coeff().expect("nonzero vector has a pivot coefficient").clone();
            v = v.sub_scaled(&c, &self.rows[ri]);
        }
        v
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some(c) = v.pivot_coeff() else { return false };
        let inv = Rat::one() / c;
        let v = v.scaled(&inv);
        self.by_pivot.insert(v.pivot().unwrap(), self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Rank of an integer matrix given by rows.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let mut space = RowSpace::new();
    for row in rows {
        let dense: Vec<Rat> = row.iter().map(|&x| crate::poly::rat(x)).collect();
        space.insert(SparseVec::from_dense(&dense));
    }
    space.rank()
}

/// Is every row of `sub` in the row space of `space`?
pub fn int_rows_contained(sub: &[Vec<i64>], space: &[Vec<i64>]) -> bool {
    let mut span = RowSpace::new();
    for row in space {
        let dense: Vec<Rat> = row.iter().map(|&x| crate::poly::rat(x)).collect();
        span.insert(SparseVec::from_dense(&dense));
    }
    sub.iter().all(|row| {
        let dense: Vec<Rat> = row.iter().map(|&x| crate::poly::rat(x)).collect();
        span.contains(SparseVec::from_dense(&dense))
    })
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut sign = Rat::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    let mut acc = sign;
    for (i, row) in m.iter().enumerate() {
        acc *= &row[i];
    }
    acc
}

/// Determinant and inverse together (Gauss–Jordan); `None` when singular.
pub fn det_and_inverse(m: &[Vec<Rat>]) -> Option<(Rat, Vec<Vec<Rat>>)> {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n), "inversion needs a square matrix");
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    let mut d = Rat::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot_row != col {
            a.swap(pivot_row, col);
            inv.swap(pivot_row, col);
            d = -d;
        }
        let pivot = a[col][col].clone();
        d *= &pivot;
        for c in 0..n {
            a[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let da = &factor * &a[col][c];
                a[r][c] -= da;
                let di = &factor * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some((d, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn sparse_vec_normalizes() {
        let v = SparseVec::from_entries(vec![(3, rat(2)), (1, rat(5)), (3, rat(-2))]);
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.pivot(), Some(1));
        let w = SparseVec::from_entries(vec![(1, rat(5))]);
        assert!(v.sub_scaled(&rat(1), &w).is_zero());
    }

    #[test]
    fn row_space_rank_and_membership() {
        let mut space = RowSpace::new();
        assert!(space.insert(SparseVec::from_dense(&[rat(1), rat(2), rat(0)])));
        assert!(space.insert(SparseVec::from_dense(&[rat(0), rat(1), rat(1)])));
        // Dependent row: (1,2,0) + 2*(0,1,1) = (1,4,2).
        assert!(!space.insert(SparseVec::from_dense(&[rat(1), rat(4), rat(2)])));
        assert_eq!(space.rank(), 2);
        assert!(space.contains(SparseVec::from_dense(&[rat(2), rat(5), rat(1)])));
        assert!(!space.contains(SparseVec::from_dense(&[rat(0), rat(0), rat(1)])));
    }

    #[test]
    fn integer_rank_and_containment() {
        assert_eq!(rank_int(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank_int(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(rank_int(&[]), 0);
        assert!(int_rows_contained(&[vec![3, 6]], &[vec![1, 2]]));
        assert!(!int_rows_contained(&[vec![1, 0]], &[vec![1, 2]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(dense(&[&[2]])), rat(2));
        assert_eq!(det(dense(&[&[1, 2], &[3, 4]])), rat(-2));
        assert_eq!(det(dense(&[&[1, 2], &[2, 4]])), rat(0));
        // Vandermonde on 2, 3, 5: (3-2)(5-2)(5-3) = 6.
        assert_eq!(det(dense(&[&[1, 2, 4], &[1, 3, 9], &[1, 5, 25]])), rat(6));
        assert_eq!(det(Vec::new()), rat(1));
    }

    #[test]
    fn inverse_reconstructs_identity() {
        let m = dense(&[&[4, 7], &[2, 6]]);
        let (d, inv) = det_and_inverse(&m).unwrap();
        assert_eq!(d, rat(10));
        assert_eq!(inv[0][0], rat_frac(6, 10));
        for i in 0..2 {
            for j in 0..2 {
                let dot: Rat = (0..2).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(dot, if i == j { rat(1) } else { rat(0) });
            }
        }
        assert!(det_and_inverse(&dense(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn random_inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            // Diagonally dominant, hence nonsingular.
            let m: Vec<Vec<Rat>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                rat(rng.gen_range(50..100))
                            } else {
                                rat(rng.gen_range(-5..=5))
                            }
                        })
                        .collect()
                })
                .collect();
            let (d, inv) = det_and_inverse(&m).unwrap();
            assert_eq!(d, det(m.clone()));
            for i in 0..n {
                for j in 0..n {
                    let dot: Rat = (0..n).map(|k| &m[i][k] * &inv[k][j]).sum();
                    assert_eq!(dot, if i == j { rat(1) } else { rat(0) });
                }
            }
        }
    }
}
