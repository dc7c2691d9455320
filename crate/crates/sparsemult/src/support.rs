//! Lattice exponent configurations, their normal forms and the higher
//! derivative matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rat::{int, int_pow, Int, Rat};

/// An ordered configuration of `N` distinct lattice points spanning affine
/// dimension `n`. Point order is significant: coefficient columns refer to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportConfig {
    points: Vec<Vec<i64>>,
    n: usize,
}

impl SupportConfig {
    /// Validates distinctness and full affine dimension.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let n = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidInput("empty configuration".into()))?;
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch(
                "points of unequal dimension".into(),
            ));
        }
        let mut seen = points.clone();
        seen.sort();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0].clone()));
            }
        }
        let config = SupportConfig { points, n };
        let rank = config.matrix_a().to_rat().rank();
        if rank < n + 1 {
            return Err(Error::DegenerateConfig {
                found: rank.saturating_sub(1),
                ambient: n,
            });
        }
        Ok(config)
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Cardinality `N`.
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }

    /// Codimension `m = N - (n + 1)`.
    pub fn codim(&self) -> usize {
        self.points.len() - (self.n + 1)
    }

    /// The `(n+1) x N` matrix with a top row of ones and the points as the
    /// remaining columns.
    pub fn matrix_a(&self) -> IntMatrix {
        let mut rows = vec![vec![Int::one(); self.points.len()]];
        for i in 0..self.n {
            rows.push(self.points.iter().map(|p| int(p[i])).collect());
        }
        IntMatrix::from_rows(rows)
    }

    /// Translate so that every coordinate minimum is zero; returns the new
    /// configuration and the shift that was added to every point.
    pub fn normalize_to_orthant(&self) -> (SupportConfig, Vec<i64>) {
        let shift: Vec<i64> = (0..self.n)
            .map(|i| -self.points.iter().map(|p| p[i]).min().unwrap())
            .collect();
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(a, s)| a + s).collect())
            .collect();
        (SupportConfig { points, n: self.n }, shift)
    }

    /// Translate so that `a_j` becomes the origin and reorder it first.
    /// Returns the new configuration and the permutation applied: entry `i`
    /// of the permutation is the original index of the new point `i`.
    pub fn anchor_at_zero(&self, j: usize) -> Result<(SupportConfig, Vec<usize>)> {
        if j >= self.points.len() {
            return Err(Error::InvalidInput(format!(
                "anchor index {j} out of range"
            )));
        }
        let base = self.points[j].clone();
        let mut perm = vec![j];
        perm.extend((0..self.points.len()).filter(|&i| i != j));
        let points = perm
            .iter()
            .map(|&i| {
                self.points[i]
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        Ok((SupportConfig { points, n: self.n }, perm))
    }

    /// True iff every `(n+1) x (n+1)` minor of the support matrix is nonzero,
    /// i.e. every `n+1` of the points are affinely independent.
    pub fn is_uniform(&self) -> bool {
        let a = self.matrix_a();
        let n1 = self.n + 1;
        let mut chosen = vec![0usize; n1];
        subsets(self.points.len(), n1, &mut chosen, 0, 0, &mut |cols| {
            let sub = IntMatrix::from_rows(
                (0..n1)
                    .map(|r| cols.iter().map(|&c| a.at(r, c).clone()).collect())
                    .collect(),
            );
            !sub.determinant().unwrap().is_zero()
        })
    }

    /// The matrix whose rows are the evaluations of all monomials `x^alpha`
    /// with `|alpha| <= k` on the points, ordered by degree and then by
    /// lexicographic order (first variable most significant).
    pub fn higher_matrix(&self, k: u64) -> IntMatrix {
        let rows = monomials_up_to(self.n, k)
            .into_iter()
            .map(|alpha| {
                self.points
                    .iter()
                    .map(|p| point_power(p, &alpha))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows)
    }

    /// Unimodular change of coordinates plus coordinate-wise division making
    /// the points span `Z^n` over `Z`. Requires the anchor `a_0 = 0`.
    /// Returns the reduced configuration and the invariant factors.
    pub fn invariant_factor_reduce(&self) -> Result<(SupportConfig, Vec<Int>)> {
        if self.points[0].iter().any(|&v| v != 0) {
            return Err(Error::InvalidInput(
                "invariant factor reduction requires the anchor a_0 = 0".into(),
            ));
        }
        let p = IntMatrix::from_rows(
            (0..self.n)
                .map(|i| self.points.iter().map(|pt| int(pt[i])).collect())
                .collect(),
        );
        let smith = p.smith_normal_form();
        let t = smith.invariant_factors();
        debug_assert_eq!(t.len(), self.n, "points must span rank n");
        let up = smith.u.mul(&p);
        let points: Vec<Vec<i64>> = (0..self.points.len())
            .map(|j| {
                (0..self.n)
                    .map(|i| {
                        let v = up.at(i, j) / &t[i];
                        debug_assert!((up.at(i, j) % &t[i]).is_zero());
                        crate::rat::to_i64(&v).expect("reduced exponent fits i64")
                    })
                    .collect()
            })
            .collect();
        Ok((SupportConfig { points, n: self.n }, t))
    }

    /// Unimodular row reduction of the exponents (via the Hermite normal
    /// form of the coordinate rows), shrinking entry sizes while preserving
    /// the local multiplicity at the all-ones point.
    pub fn hnf_shrink(&self) -> SupportConfig {
        let p = IntMatrix::from_rows(
            (0..self.n)
                .map(|i| self.points.iter().map(|pt| int(pt[i])).collect())
                .collect(),
        );
        let (h, _) = p.row_hnf();
        let points = (0..self.points.len())
            .map(|j| {
                (0..self.n)
                    .map(|i| crate::rat::to_i64(h.at(i, j)).expect("exponent fits i64"))
                    .collect()
            })
            .collect();
        SupportConfig { points, n: self.n }
    }
}

/// All exponent vectors in `Z_{>=0}^n` with `|alpha| <= k`, ordered by total
/// degree and then lexicographically with the first variable most
/// significant, so the degree-one block lists `x_1, ..., x_n` in order.
pub fn monomials_up_to(n: usize, k: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for d in 0..=k {
        let mut block = monomials_of_degree(n, d);
        block.sort_by(|a, b| b.cmp(a));
        out.extend(block);
    }
    out
}

/// All exponent vectors in `Z_{>=0}^n` with `|alpha| = d`.
pub fn monomials_of_degree(n: usize, d: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    fill(&mut out, &mut cur, 0, d);
    out
}

fn fill(out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>, pos: usize, left: u64) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for v in 0..=left {
        cur[pos] = v;
        fill(out, cur, pos + 1, left - v);
    }
    cur[pos] = 0;
}

/// `p^alpha` over the integers, with `0^0 = 1`.
pub fn point_power(p: &[i64], alpha: &[u64]) -> Int {
    let mut acc = Int::one();
    for (&base, &e) in p.iter().zip(alpha) {
        if e > 0 {
            acc *= int_pow(&int(base), e);
        }
    }
    acc
}

fn subsets(
    n: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    depth: usize,
    start: usize,
    ok: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if depth == k {
        return ok(chosen);
    }
    for i in start..n {
        chosen[depth] = i;
        if !subsets(n, k, chosen, depth + 1, i + 1, ok) {
            return false;
        }
    }
    true
}

/// A sparse system: an exponent configuration, an exact coefficient matrix
/// of shape `n x N` and full rank `n`, and a distinguished torus point.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    pub config: SupportConfig,
    pub coeffs: RatMatrix,
    pub base_point: Vec<Rat>,
}

impl SparseSystem {
    pub fn new(config: SupportConfig, coeffs: RatMatrix) -> Result<Self> {
        let base_point = vec![Rat::one(); config.dim()];
        SparseSystem::with_base_point(config, coeffs, base_point)
    }

    pub fn with_base_point(
        config: SupportConfig,
        coeffs: RatMatrix,
        base_point: Vec<Rat>,
    ) -> Result<Self> {
        if coeffs.cols() != config.cardinality() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix has {} columns for {} support points",
                coeffs.cols(),
                config.cardinality()
            )));
        }
        if base_point.len() != config.dim() {
            return Err(Error::DimensionMismatch(
                "base point dimension differs from the configuration".into(),
            ));
        }
        if base_point.iter().any(Rat::is_zero) {
            return Err(Error::InvalidInput(
                "base point must lie in the torus".into(),
            ));
        }
        if coeffs.rows() != config.dim() {
            return Err(Error::ValidationError(format!(
                "coefficient matrix has {} rows for a {}-dimensional configuration",
                coeffs.rows(),
                config.dim()
            )));
        }
        let rank = coeffs.rank();
        if rank < coeffs.rows() {
            return Err(Error::ValidationError(format!(
                "coefficient matrix has rank {rank}, expected full rank {}",
                coeffs.rows()
            )));
        }
        Ok(SparseSystem {
            config,
            coeffs,
            base_point,
        })
    }

    pub fn equations(&self) -> usize {
        self.coeffs.rows()
    }

    /// True when the base point solves every equation.
    pub fn base_point_is_root(&self) -> bool {
        let powers: Vec<Rat> = self
            .config
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&self.base_point)
                    .map(|(&a, q)| {
                        if a >= 0 {
                            crate::rat::rat_pow(q, a as u64)
                        } else {
                            crate::rat::rat_pow(q, (-a) as u64).recip()
                        }
                    })
                    .product()
            })
            .collect();
        (0..self.coeffs.rows()).all(|k| {
            let mut acc = Rat::zero();
            for (j, pw) in powers.iter().enumerate() {
                acc += self.coeffs.at(k, j) * pw;
            }
            acc.is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn cfg(points: &[&[i64]]) -> SupportConfig {
        SupportConfig::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn build_and_counts() {
        let c = cfg(&[&[0], &[1], &[2], &[3]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.codim(), 2);
        let c = cfg(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.codim(), 1);
        for pts in [&[&[0i64], &[1], &[2]][..], &[&[0], &[2], &[4]][..]] {
            let c = SupportConfig::new(pts.iter().map(|p| p.to_vec()).collect()).unwrap();
            assert_eq!((c.dim(), c.codim()), (1, 1));
        }
        let collinear =
            SupportConfig::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert!(matches!(collinear, Err(Error::DegenerateConfig { .. })));
        let dup = SupportConfig::new(vec![vec![0], vec![0], vec![1]]);
        assert!(matches!(dup, Err(Error::DuplicatePoint(_))));
    }

    #[test]
    fn orthant_normalization() {
        let (c, s) = cfg(&[&[-1], &[2]]).normalize_to_orthant();
        assert_eq!(c.points(), &[vec![0], vec![3]]);
        assert_eq!(s, vec![1]);
        let (c, s) = cfg(&[&[1, 1], &[2, 0], &[0, 3]]).normalize_to_orthant();
        assert_eq!(c.points(), &[vec![1, 1], vec![2, 0], vec![0, 3]]);
        assert_eq!(s, vec![0, 0]);
        let (c, s) = cfg(&[&[2, 5], &[3, 4], &[3, 5]]).normalize_to_orthant();
        assert_eq!(c.points(), &[vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(s, vec![-2, -4]);
    }

    #[test]
    fn anchoring() {
        let (c, perm) = cfg(&[&[1], &[3], &[4]]).anchor_at_zero(0).unwrap();
        assert_eq!(c.points(), &[vec![0], vec![2], vec![3]]);
        assert_eq!(perm, vec![0, 1, 2]);
        let (c, perm) = cfg(&[&[1, 1], &[2, 3], &[0, 1]]).anchor_at_zero(1).unwrap();
        assert_eq!(c.points(), &[vec![0, 0], vec![-1, -2], vec![-2, -2]]);
        assert_eq!(perm, vec![1, 0, 2]);
        // idempotent when the anchor is already zero
        let base = cfg(&[&[0], &[2], &[3]]);
        let (c, _) = base.anchor_at_zero(0).unwrap();
        assert_eq!(c.points(), base.points());
    }

    #[test]
    fn uniformity() {
        assert!(cfg(&[&[0], &[1], &[2], &[3]]).is_uniform());
        assert!(cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).is_uniform());
        assert!(!cfg(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).is_uniform());
    }

    #[test]
    fn higher_matrix_layout() {
        // Vandermonde shape in one variable
        let c = cfg(&[&[0], &[1], &[2], &[3]]);
        let a3 = c.higher_matrix(3);
        assert_eq!((a3.rows(), a3.cols()), (4, 4));
        for i in 0..4u64 {
            for j in 0..4u64 {
                assert_eq!(*a3.at(i as usize, j as usize), int_pow(&int(j as i64), i));
            }
        }
        // A^{(1)} = A
        let c = cfg(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(c.higher_matrix(1), c.matrix_a());
        // the worked 6x3 example
        let a2 = c.higher_matrix(2);
        let expected = IntMatrix::from_i64_rows(&[
            vec![1, 1, 1],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![0, 0, 0],
            vec![0, 0, 1],
        ]);
        assert_eq!(a2, expected);
    }

    #[test]
    fn higher_matrix_row_count_matches_binomial() {
        for (n, k) in [(1usize, 4u64), (2, 3), (3, 2)] {
            let pts: Vec<Vec<i64>> = match n {
                1 => vec![vec![0], vec![1]],
                2 => vec![vec![0, 0], vec![1, 0], vec![0, 1]],
                _ => vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            };
            let c = SupportConfig::new(pts).unwrap();
            let rows = c.higher_matrix(k).rows() as u64;
            assert_eq!(int(rows as i64), crate::rat::binomial((n as u64) + k, k));
        }
    }

    #[test]
    fn invariant_factors() {
        let (c, t) = cfg(&[&[0], &[2], &[4]]).invariant_factor_reduce().unwrap();
        assert_eq!(c.points(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(t, vec![int(2)]);
        let (c, t) = cfg(&[&[0], &[1], &[3]]).invariant_factor_reduce().unwrap();
        assert_eq!(c.points(), &[vec![0], vec![1], vec![3]]);
        assert_eq!(t, vec![int(1)]);
        let (c, t) = cfg(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])
            .invariant_factor_reduce()
            .unwrap();
        assert_eq!(t, vec![int(2), int(2)]);
        let expect = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        // up to the unimodular change, the reduced points span Z^2
        let p = IntMatrix::from_rows(
            (0..2)
                .map(|i| c.points().iter().map(|pt| int(pt[i])).collect())
                .collect(),
        );
        let q = IntMatrix::from_rows(
            (0..2)
                .map(|i| expect.points().iter().map(|pt| int(pt[i])).collect())
                .collect(),
        );
        assert!(p.same_column_lattice(&q));
    }

    #[test]
    fn sparse_system_validation() {
        let c = cfg(&[&[0], &[1], &[2]]);
        let sys = SparseSystem::new(c.clone(), RatMatrix::from_i64_rows(&[vec![1, -2, 1]]))
            .unwrap();
        assert!(sys.base_point_is_root());
        let bad = SparseSystem::new(c, RatMatrix::from_i64_rows(&[vec![0, 0, 0]]));
        assert!(bad.is_err());
    }

    #[test]
    fn base_point_roots_with_general_point() {
        let c = cfg(&[&[0], &[1], &[2]]);
        // (x-2)^2 = 4 - 4x + x^2 vanishes at 2
        let sys = SparseSystem::with_base_point(
            c,
            RatMatrix::from_i64_rows(&[vec![4, -4, 1]]),
            vec![rat(2)],
        )
        .unwrap();
        assert!(sys.base_point_is_root());
    }
}
