//! Newton diagrams of shifted systems via vanishing sums, convenience
//! tests, sparsity statistics, and exact mixed covolume.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::polytope::{orthant_hull, prune_dominated, region_b_volume, OrthantHull};
use crate::rat::{factorial, rat_pow, Int, Rat};
use crate::support::SupportConfig;

/// Evaluates the vanishing sums `L(alpha) = sum_j c_j * e_j^alpha`,
/// where the bases `e_j` are the support columns on the primary side or the
/// rational Gale rows on the dual side.
#[derive(Clone, Debug)]
pub struct VanishingSumEvaluator {
    coeffs: Vec<Rat>,
    exps: Vec<Vec<Rat>>,
}

impl VanishingSumEvaluator {
    pub fn new(coeffs: Vec<Rat>, exps: Vec<Vec<Rat>>) -> Result<Self> {
        if coeffs.len() != exps.len() {
            return Err(Error::DimensionMismatch(
                "coefficient row and exponent rows differ in length".into(),
            ));
        }
        if exps.is_empty() {
            return Err(Error::InvalidInput("empty evaluator".into()));
        }
        let d = exps[0].len();
        if exps.iter().any(|e| e.len() != d) {
            return Err(Error::DimensionMismatch("ragged exponent rows".into()));
        }
        Ok(VanishingSumEvaluator { coeffs, exps })
    }

    /// Evaluator of `L_k` for row `k` of a coefficient matrix over a support.
    pub fn for_system_row(coeffs: &RatMatrix, config: &SupportConfig, k: usize) -> Self {
        let exps = config
            .points()
            .iter()
            .map(|p| p.iter().map(|&v| crate::rat::rat(v)).collect())
            .collect();
        VanishingSumEvaluator {
            coeffs: coeffs.row(k).to_vec(),
            exps,
        }
    }

    pub fn dim(&self) -> usize {
        self.exps[0].len()
    }

    /// The exact sum `sum_j c_j * e_j^alpha`, with `0^0 = 1`.
    pub fn value(&self, alpha: &[u64]) -> Rat {
        let mut acc = Rat::zero();
        for (c, e) in self.coeffs.iter().zip(&self.exps) {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (b, &a) in e.iter().zip(alpha) {
                if a > 0 {
                    term *= rat_pow(b, a);
                }
            }
            acc += term;
        }
        acc
    }

    /// Default search budget per axis: `t_l`, the number of distinct
    /// coordinate values minus one. Any minimal staircase point has its
    /// `l`-th coordinate bounded by it (Vandermonde argument).
    pub fn axis_budgets(&self) -> Vec<u64> {
        (0..self.dim())
            .map(|l| {
                let mut vals: Vec<&Rat> = self.exps.iter().map(|e| &e[l]).collect();
                vals.sort();
                vals.dedup();
                (vals.len() - 1) as u64
            })
            .collect()
    }
}

/// The antichain of minimal lattice points where the vanishing sums first
/// become nonzero, together with the axis intercepts (`None` when the sums
/// vanish identically on an axis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub dim: usize,
    pub minimal_points: Vec<Vec<u64>>,
    pub axis_intercepts: Vec<Option<u64>>,
}

impl Staircase {
    pub fn is_convenient(&self) -> bool {
        self.axis_intercepts.iter().all(Option::is_some)
    }

    pub fn hull(&self) -> OrthantHull {
        orthant_hull(self.dim, &to_rat_points(&self.minimal_points))
    }

    /// Lattice points lying on the bounded faces of the staircase hull.
    pub fn lattice_points_on_diagram(&self) -> Vec<Vec<u64>> {
        if self.minimal_points.is_empty() {
            return vec![];
        }
        let hull = self.hull();
        let bounds: Vec<u64> = (0..self.dim)
            .map(|i| {
                self.minimal_points
                    .iter()
                    .map(|p| p[i])
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; self.dim];
        scan_box(&bounds, &mut cur, 0, &mut |alpha| {
            let pt: Vec<Rat> = alpha.iter().map(|&v| crate::rat::rat(v as i64)).collect();
            if hull.on_diagram(&pt) {
                out.push(alpha.to_vec());
            }
        });
        out
    }
}

fn to_rat_points(points: &[Vec<u64>]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .map(|p| p.iter().map(|&v| crate::rat::rat(v as i64)).collect())
        .collect()
}

fn scan_box(bounds: &[u64], cur: &mut Vec<u64>, pos: usize, visit: &mut impl FnMut(&[u64])) {
    if pos == bounds.len() {
        visit(cur);
        return;
    }
    for v in 0..=bounds[pos] {
        cur[pos] = v;
        scan_box(bounds, cur, pos + 1, visit);
    }
    cur[pos] = 0;
}

/// Staircase of the vanishing sums, erroring when they vanish identically on
/// some axis. With budgets at least the per-axis defaults the result is
/// exact, not a truncation artifact.
pub fn staircase(ev: &VanishingSumEvaluator, hints: Option<&[u64]>) -> Result<Staircase> {
    let st = staircase_lenient(ev, hints);
    for (l, i) in st.axis_intercepts.iter().enumerate() {
        if i.is_none() {
            return Err(Error::VanishesOnAxis(l + 1));
        }
    }
    Ok(st)
}

/// Same search as [`staircase`] but records missing axis intercepts instead
/// of failing, so convenience itself can be queried.
pub fn staircase_lenient(ev: &VanishingSumEvaluator, hints: Option<&[u64]>) -> Staircase {
    let dim = ev.dim();
    let budgets = match hints {
        Some(h) => h.to_vec(),
        None => ev.axis_budgets(),
    };
    assert_eq!(budgets.len(), dim);

    // P(alpha) = true iff L vanishes on the whole lower set of alpha.
    // alpha is a minimal staircase point iff L(alpha) != 0 and P holds one
    // step below in every direction.
    let strides: Vec<usize> = {
        let mut s = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * (budgets[i + 1] as usize + 1);
        }
        s
    };
    let total: usize = budgets.iter().map(|&b| b as usize + 1).product();
    let index = |alpha: &[u64]| -> usize {
        alpha
            .iter()
            .zip(&strides)
            .map(|(&a, &s)| a as usize * s)
            .sum()
    };
    let mut all_below_zero = vec![false; total];
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    let mut cur = vec![0u64; dim];
    // graded scan is unnecessary: the box scan below is lexicographic, and
    // alpha - e_i always precedes alpha lexicographically.
    scan_box(&budgets, &mut cur, 0, &mut |alpha| {
        let below_ok = (0..dim).all(|i| {
            if alpha[i] == 0 {
                return true;
            }
            let mut b = alpha.to_vec();
            b[i] -= 1;
            all_below_zero[index(&b)]
        });
        let nonzero = !ev.value(alpha).is_zero();
        if nonzero && below_ok {
            minimal.push(alpha.to_vec());
        }
        all_below_zero[index(alpha)] = below_ok && !nonzero;
    });

    let axis_intercepts = (0..dim)
        .map(|l| {
            minimal
                .iter()
                .find(|p| p.iter().enumerate().all(|(i, &v)| i == l || v == 0))
                .map(|p| p[l])
        })
        .collect();
    Staircase {
        dim,
        minimal_points: minimal,
        axis_intercepts,
    }
}

/// Staircase of an explicitly given support (minimal points of the support
/// under the componentwise order).
pub fn staircase_of_support(dim: usize, support: &[Vec<u64>]) -> Staircase {
    let minimal: Vec<Vec<u64>> = support
        .iter()
        .filter(|p| {
            !support
                .iter()
                .any(|q| *q != **p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort();
    minimal.dedup();
    let axis_intercepts = (0..dim)
        .map(|l| {
            minimal
                .iter()
                .find(|p| p.iter().enumerate().all(|(i, &v)| i == l || v == 0))
                .map(|p| p[l])
        })
        .collect();
    Staircase {
        dim,
        minimal_points: minimal,
        axis_intercepts,
    }
}

/// True iff every axis carries an intercept.
pub fn is_convenient(st: &Staircase) -> bool {
    st.is_convenient()
}

/// A bounded face of a Newton diagram: its minimal-point vertices and an
/// inner normal with all-positive coordinates.
#[derive(Clone, Debug)]
pub struct DiagramFacet {
    pub vertices: Vec<Vec<u64>>,
    pub normal: Vec<Int>,
}

/// The bounded lower-hull face complex spanned by a staircase.
#[derive(Clone, Debug)]
pub struct NewtonDiagram {
    pub staircase: Staircase,
    pub faces: Vec<DiagramFacet>,
}

pub fn newton_diagram(st: &Staircase) -> NewtonDiagram {
    if st.minimal_points.is_empty() {
        return NewtonDiagram {
            staircase: st.clone(),
            faces: vec![],
        };
    }
    let hull = st.hull();
    let faces = hull
        .facets
        .iter()
        .filter(|f| f.is_positive())
        .map(|f| DiagramFacet {
            vertices: f
                .on
                .iter()
                .map(|&i| {
                    hull.points[i]
                        .iter()
                        .map(|v| {
                            debug_assert!(v.denom().is_one());
                            crate::rat::to_i64(v.numer()).unwrap() as u64
                        })
                        .collect()
                })
                .collect(),
            normal: f.normal.clone(),
        })
        .collect();
    NewtonDiagram {
        staircase: st.clone(),
        faces,
    }
}

/// A polytope in the nonnegative orthant meeting every coordinate axis.
#[derive(Clone, Debug)]
pub struct ConvenientPolytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
}

impl ConvenientPolytope {
    pub fn new(dim: usize, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if vertices.is_empty() || dim == 0 {
            return Err(Error::InvalidInput("empty polytope".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(
                    "vertex of wrong dimension".into(),
                ));
            }
            if v.iter().any(Signed::is_negative) {
                return Err(Error::InvalidInput(
                    "vertices must lie in the nonnegative orthant".into(),
                ));
            }
        }
        for axis in 0..dim {
            let touches = vertices
                .iter()
                .any(|p| p.iter().enumerate().all(|(i, v)| i == axis || v.is_zero()));
            if !touches {
                return Err(Error::NotConvenient(axis + 1));
            }
        }
        Ok(ConvenientPolytope { dim, vertices })
    }

    pub fn from_lattice(dim: usize, vertices: &[Vec<i64>]) -> Result<Self> {
        ConvenientPolytope::new(
            dim,
            vertices
                .iter()
                .map(|p| p.iter().map(|&v| crate::rat::rat(v)).collect())
                .collect(),
        )
    }

    pub fn from_staircase(st: &Staircase) -> Result<Self> {
        for (l, i) in st.axis_intercepts.iter().enumerate() {
            if i.is_none() {
                return Err(Error::NotConvenient(l + 1));
            }
        }
        ConvenientPolytope::new(st.dim, to_rat_points(&st.minimal_points))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// Mutual-containment equality of the underlying hulls.
    pub fn same_hull(&self, other: &ConvenientPolytope) -> bool {
        self.dim == other.dim
            && self.vertices.iter().all(|v| other.contains(v))
            && other.vertices.iter().all(|v| self.contains(v))
    }

    /// Membership in the convex hull of the vertices, by Caratheodory
    /// enumeration of simplices.
    pub fn contains(&self, x: &[Rat]) -> bool {
        caratheodory_contains(self.dim, &self.vertices, x)
    }

    pub fn scale(&self, f: &Rat) -> ConvenientPolytope {
        ConvenientPolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c * f).collect())
                .collect(),
        }
    }
}

fn caratheodory_contains(dim: usize, points: &[Vec<Rat>], x: &[Rat]) -> bool {
    if points.iter().any(|p| p.as_slice() == x) {
        return true;
    }
    // x in conv(points) iff x is a convex combination of an affinely
    // independent subset of at most dim+1 of them; those subsets give
    // determined systems, so testing every size from 1 up suffices.
    let k = (dim + 1).min(points.len());
    let mut found = false;
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        points: &[Vec<Rat>],
        x: &[Rat],
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        found: &mut bool,
    ) {
        if *found {
            return;
        }
        if !subset.is_empty() && barycentric_in(points, subset, x) {
            *found = true;
            return;
        }
        if subset.len() == k {
            return;
        }
        for i in start..points.len() {
            subset.push(i);
            rec(points, x, k, i + 1, subset, found);
            subset.pop();
            if *found {
                return;
            }
        }
    }
    rec(points, x, k, 0, &mut subset, &mut found);
    found
}

fn barycentric_in(points: &[Vec<Rat>], subset: &[usize], x: &[Rat]) -> bool {
    let dim = x.len();
    // solve sum l_i p_i = x, sum l_i = 1 in the least-squares-free exact way:
    // augment with the affine row and use RREF on the transposed system.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        let mut row: Vec<Rat> = subset.iter().map(|&i| points[i][d].clone()).collect();
        row.push(x[d].clone());
        rows.push(row);
    }
    let mut one_row: Vec<Rat> = vec![Rat::one(); subset.len()];
    one_row.push(Rat::one());
    rows.push(one_row);
    let aug = RatMatrix::from_rows(rows);
    let (rref, pivots) = aug.rref();
    let cols = subset.len();
    // inconsistent if a pivot lands in the rhs column
    if pivots.contains(&cols) {
        return false;
    }
    // unique or parametric solutions: check the basic solution (free
    // lambdas = 0) for nonnegativity; with subset size <= dim+1 the system
    // is generically determined, which is all Caratheodory needs.
    let mut lambda = vec![Rat::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        lambda[p] = rref.at(r, cols).clone();
    }
    lambda.iter().all(|l| !l.is_negative())
}

/// Convex hull of pairwise vertex sums. For inputs with few vertices the
/// result is pruned to the actual hull vertices.
pub fn minkowski_sum(p: &ConvenientPolytope, q: &ConvenientPolytope) -> Result<ConvenientPolytope> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(
            "Minkowski sum of polytopes of different dimension".into(),
        ));
    }
    let mut sums: Vec<Vec<Rat>> = Vec::new();
    for a in p.vertices() {
        for b in q.vertices() {
            let s: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !sums.contains(&s) {
                sums.push(s);
            }
        }
    }
    let pruned = if sums.len() <= 24 {
        sums.iter()
            .filter(|v| {
                let others: Vec<Vec<Rat>> =
                    sums.iter().filter(|w| w != v).cloned().collect();
                !caratheodory_contains(p.dim(), &others, v)
            })
            .cloned()
            .collect()
    } else {
        sums
    };
    ConvenientPolytope::new(p.dim(), pruned)
}

/// `n! * Vol(B_Delta)`, the covolume of a single convenient polytope.
pub fn covolume_single(delta: &ConvenientPolytope) -> Rat {
    let b = region_b_volume(delta.dim(), delta.vertices())
        .expect("convenient polytope invariant guarantees a bounded region");
    Rat::from_integer(factorial(delta.dim() as u64)) * b
}

/// Mixed covolume of `n` convenient polytopes in dimension `n`, by the
/// inclusion-exclusion polarization of the diagonal `n! * Vol(B)`:
/// `sum over nonempty I of (-1)^(n-|I|) Vol(B_{Delta_I})`.
pub fn mixed_covolume(deltas: &[ConvenientPolytope]) -> Result<Rat> {
    let n = deltas.len();
    if n == 0 {
        return Err(Error::InvalidInput("mixed covolume of no polytopes".into()));
    }
    for d in deltas {
        if d.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "mixed covolume needs {n} polytopes of dimension {n}, got one of dimension {}",
                d.dim()
            )));
        }
    }
    let mut total = Rat::zero();
    for mask in 1u32..(1 << n) {
        let mut gens: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]];
        for (i, d) in deltas.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let mut next = Vec::new();
            for g in &gens {
                for v in d.vertices() {
                    let s: Vec<Rat> = g.iter().zip(v).map(|(x, y)| x + y).collect();
                    if !next.contains(&s) {
                        next.push(s);
                    }
                }
            }
            gens = prune_dominated(&next);
        }
        let vol = region_b_volume(n, &gens)?;
        if (n as u32 - mask.count_ones()) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total)
}

/// The sparsity table of a coefficient matrix against coordinate rows:
/// `rho[k][l]` counts the distinct coordinate values with nonvanishing
/// grouped coefficient sums, `s[k]` the support of row `k`, `t[l]` the
/// distinct values of coordinate `l` (each minus one). `gammas[k]` is the
/// simplex spanned by the `rho[k][l]` axis intercept bounds, when defined.
#[derive(Clone, Debug)]
pub struct SparsityStats {
    pub rho: Vec<Vec<i64>>,
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub gammas: Vec<Option<ConvenientPolytope>>,
}

impl SparsityStats {
    /// `min(prod s_k, prod t_l)` as an exact integer, when all entries are
    /// nonnegative.
    pub fn kouchnirenko_bound(&self) -> Option<Int> {
        if self.s.iter().any(|&v| v < 0) || self.t.iter().any(|&v| v < 0) {
            return None;
        }
        let ps: Int = self.s.iter().map(|&v| Int::from(v)).product();
        let pt: Int = self.t.iter().map(|&v| Int::from(v)).product();
        Some(ps.min(pt))
    }
}

/// Computes the sparsity statistics of `coeffs` (rows `k`) against the
/// coordinates of `exps` (entry `j` is the coordinate vector attached to
/// column `j` of `coeffs`). Use the support points on the primary side and
/// the Gale rows `delta_i` on the dual side.
pub fn sparsity_stats(coeffs: &RatMatrix, exps: &[Vec<Rat>]) -> Result<SparsityStats> {
    if exps.len() != coeffs.cols() {
        return Err(Error::DimensionMismatch(
            "one exponent row per coefficient column is required".into(),
        ));
    }
    let axes = exps.first().map(Vec::len).unwrap_or(0);
    let nrows = coeffs.rows();
    let mut rho = vec![vec![0i64; axes]; nrows];
    let mut s = vec![0i64; nrows];
    let mut t = vec![0i64; axes];
    for l in 0..axes {
        let mut vals: Vec<&Rat> = exps.iter().map(|e| &e[l]).collect();
        vals.sort();
        vals.dedup();
        t[l] = vals.len() as i64 - 1;
    }
    for k in 0..nrows {
        s[k] = (0..coeffs.cols()).filter(|&j| !coeffs.at(k, j).is_zero()).count() as i64 - 1;
        for l in 0..axes {
            let mut vals: Vec<Rat> = exps.iter().map(|e| e[l].clone()).collect();
            vals.sort();
            vals.dedup();
            let nonzero_groups = vals
                .iter()
                .filter(|u| {
                    let mut acc = Rat::zero();
                    for j in 0..coeffs.cols() {
                        if &exps[j][l] == *u {
                            acc += coeffs.at(k, j);
                        }
                    }
                    !acc.is_zero()
                })
                .count() as i64;
            rho[k][l] = nonzero_groups - 1;
        }
    }
    let gammas = (0..nrows)
        .map(|k| {
            if rho[k].iter().all(|&v| v >= 0) {
                let verts: Vec<Vec<i64>> = (0..axes)
                    .map(|l| {
                        let mut v = vec![0i64; axes];
                        v[l] = rho[k][l];
                        v
                    })
                    .collect();
                ConvenientPolytope::from_lattice(axes, &verts).ok()
            } else {
                None
            }
        })
        .collect();
    Ok(SparsityStats { rho, s, t, gammas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use crate::support::SupportConfig;

    fn ev(coeffs: &[i64], exps: &[&[i64]]) -> VanishingSumEvaluator {
        VanishingSumEvaluator::new(
            coeffs.iter().map(|&c| rat(c)).collect(),
            exps.iter()
                .map(|e| e.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn vanishing_sum_values() {
        // C = (-1, 3, -3, 1) over A = {0,1,2,3}
        let e = ev(&[-1, 3, -3, 1], &[&[0], &[1], &[2], &[3]]);
        assert_eq!(e.value(&[2]), rat(0));
        assert_eq!(e.value(&[3]), rat(6));
        assert_eq!(e.value(&[0]), rat(0)); // sum of coefficients
        let e = ev(&[2, 5], &[&[0], &[1]]);
        assert_eq!(e.value(&[0]), rat(7));
    }

    #[test]
    fn staircase_of_double_root() {
        // (x-1)^2 shifted: C = (1,-2,1), A = {0,1,2}
        let e = ev(&[1, -2, 1], &[&[0], &[1], &[2]]);
        let st = staircase(&e, None).unwrap();
        assert_eq!(st.minimal_points, vec![vec![2]]);
        assert_eq!(st.axis_intercepts, vec![Some(2)]);
    }

    #[test]
    fn staircase_vanishing_on_axis() {
        // (x1-1)(x2-1): vanishes identically on both axes
        let e = ev(
            &[1, -1, -1, 1],
            &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]],
        );
        assert!(matches!(
            staircase(&e, None),
            Err(Error::VanishesOnAxis(1))
        ));
        let st = staircase_lenient(&e, None);
        assert_eq!(st.minimal_points, vec![vec![1, 1]]);
        assert_eq!(st.axis_intercepts, vec![None, None]);
        assert!(!st.is_convenient());
    }

    #[test]
    fn newton_diagram_of_figure() {
        let st = Staircase {
            dim: 2,
            minimal_points: vec![vec![3, 0], vec![1, 1], vec![0, 3]],
            axis_intercepts: vec![Some(3), Some(3)],
        };
        let nd = newton_diagram(&st);
        assert_eq!(nd.faces.len(), 2);
        for f in &nd.faces {
            assert_eq!(f.vertices.len(), 2);
            assert!(f.normal.iter().all(|v| v > &Int::zero()));
        }
    }

    #[test]
    fn newton_diagram_single_point() {
        let st = Staircase {
            dim: 1,
            minimal_points: vec![vec![3]],
            axis_intercepts: vec![Some(3)],
        };
        let nd = newton_diagram(&st);
        assert_eq!(nd.faces.len(), 1);
        assert_eq!(nd.faces[0].vertices, vec![vec![3]]);
    }

    #[test]
    fn sparsity_counts() {
        // C = (1,-2,1), A = {0,1,2}: s = 2, t = 2, rho = 2
        let config = SupportConfig::new(vec![vec![0], vec![1], vec![2]]).unwrap();
        let coeffs = RatMatrix::from_i64_rows(&[vec![1, -2, 1]]);
        let exps: Vec<Vec<Rat>> = config
            .points()
            .iter()
            .map(|p| p.iter().map(|&v| rat(v)).collect())
            .collect();
        let stats = sparsity_stats(&coeffs, &exps).unwrap();
        assert_eq!(stats.s, vec![2]);
        assert_eq!(stats.t, vec![2]);
        assert_eq!(stats.rho, vec![vec![2]]);
        // witness support for (n,m) = (2,1): t = (3,3)
        let config = SupportConfig::new(vec![
            vec![0, 0],
            vec![1, 1],
            vec![2, 4],
            vec![3, 9],
        ])
        .unwrap();
        let exps: Vec<Vec<Rat>> = config
            .points()
            .iter()
            .map(|p| p.iter().map(|&v| rat(v)).collect())
            .collect();
        let coeffs = RatMatrix::from_i64_rows(&[vec![-1, 3, -3, 1], vec![1, -4, 6, -4]]);
        let stats = sparsity_stats(&coeffs, &exps).unwrap();
        assert_eq!(stats.t, vec![3, 3]);
        // grouped sums that cancel: coefficients (1,-1) on equal coordinates
        let coeffs = RatMatrix::from_i64_rows(&[vec![1, -1, 0, 0]]);
        let exps2: Vec<Vec<Rat>> = vec![
            vec![rat(0)],
            vec![rat(0)],
            vec![rat(1)],
            vec![rat(2)],
        ];
        let stats = sparsity_stats(&coeffs, &exps2).unwrap();
        assert_eq!(stats.rho, vec![vec![-1]]);
        assert_eq!(stats.t, vec![2]);
    }

    #[test]
    fn covolume_of_figure_triangle() {
        let tri =
            ConvenientPolytope::from_lattice(2, &[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(covolume_single(&tri), rat(6));
    }

    #[test]
    fn covolume_of_standard_simplex() {
        let s = ConvenientPolytope::from_lattice(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(covolume_single(&s), rat(1));
        let s3 = ConvenientPolytope::from_lattice(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(covolume_single(&s3), rat(1));
    }

    #[test]
    fn covolume_of_reciprocal_simplex() {
        // n! * (1/n!)^2 = 1/n!
        let s = ConvenientPolytope::new(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), ratio(1, 2)]],
        )
        .unwrap();
        assert_eq!(covolume_single(&s), ratio(1, 2));
    }

    #[test]
    fn minkowski_sum_examples() {
        let p = ConvenientPolytope::from_lattice(2, &[vec![2, 0], vec![0, 1]]).unwrap();
        let zero = ConvenientPolytope::from_lattice(2, &[vec![0, 0]]).unwrap();
        assert!(minkowski_sum(&p, &zero).unwrap().same_hull(&p));

        let q = ConvenientPolytope::from_lattice(2, &[vec![1, 0], vec![0, 2]]).unwrap();
        let s = minkowski_sum(&p, &q).unwrap();
        let mut verts: Vec<Vec<Rat>> = s.vertices().to_vec();
        verts.sort();
        let expected: Vec<Vec<Rat>> = vec![
            vec![rat(0), rat(3)],
            vec![rat(1), rat(1)],
            vec![rat(2), rat(2)],
            vec![rat(3), rat(0)],
        ];
        assert_eq!(verts, expected);

        // dilation: P + P = 2P for a simplex
        let twice = minkowski_sum(&p, &p).unwrap();
        assert!(twice.same_hull(&p.scale(&rat(2))));
    }

    #[test]
    fn mixed_covolume_of_parallel_segments() {
        for m in 1..4i64 {
            let d1 = ConvenientPolytope::from_lattice(
                2,
                &[vec![m + 1, 0], vec![0, m + 1]],
            )
            .unwrap();
            let d2 = ConvenientPolytope::from_lattice(
                2,
                &[vec![m + 2, 0], vec![0, m + 2]],
            )
            .unwrap();
            assert_eq!(mixed_covolume(&[d1, d2]).unwrap(), rat((m + 1) * (m + 2)));
        }
    }

    #[test]
    fn mixed_covolume_of_crossed_segments() {
        for m in 1..4i64 {
            let d1 = ConvenientPolytope::from_lattice(
                2,
                &[vec![m + 1, 0], vec![0, m + 2]],
            )
            .unwrap();
            let d2 = ConvenientPolytope::from_lattice(
                2,
                &[vec![m + 2, 0], vec![0, m + 1]],
            )
            .unwrap();
            assert_eq!(mixed_covolume(&[d1, d2]).unwrap(), rat((m + 1) * (m + 1)));
        }
    }

    #[test]
    fn mixed_covolume_matches_witness_figure() {
        // diagrams for (n,m) = (2,1): a = 1, expected a(2a+1) = 3
        let d1 = ConvenientPolytope::from_lattice(2, &[vec![0, 1], vec![2, 0]]).unwrap();
        let d2 = ConvenientPolytope::from_lattice(
            2,
            &[vec![0, 2], vec![1, 1], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(mixed_covolume(&[d1, d2]).unwrap(), rat(3));
    }

    #[test]
    fn mixed_covolume_of_dilated_simplices() {
        // corner simplices scale multilinearly: mixed of a, b, c dilates
        // of the unit corner is abc
        let unit: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let dilate = |f: i64| {
            ConvenientPolytope::from_lattice(
                3,
                &unit.iter().map(|v| v.iter().map(|&x| f * x).collect()).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let v = mixed_covolume(&[dilate(1), dilate(2), dilate(3)]).unwrap();
        assert_eq!(v, rat(6));
    }

    #[test]
    fn mixed_covolume_diagonal_is_single() {
        let tri =
            ConvenientPolytope::from_lattice(2, &[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(
            mixed_covolume(&[tri.clone(), tri.clone()]).unwrap(),
            covolume_single(&tri)
        );
    }

    #[test]
    fn lattice_points_on_diagram() {
        let st = Staircase {
            dim: 2,
            minimal_points: vec![vec![3, 0], vec![1, 1], vec![0, 3]],
            axis_intercepts: vec![Some(3), Some(3)],
        };
        let pts = st.lattice_points_on_diagram();
        assert!(pts.contains(&vec![1, 1]));
        assert!(pts.contains(&vec![2, 0]) == false); // strictly inside B
        assert!(pts.contains(&vec![3, 0]));
        assert!(pts.contains(&vec![0, 3]));
        assert_eq!(pts.len(), 3);
    }
}
