//! Brute-force local intersection multiplicity at the origin (and at the
//! all-ones point via shifting), face truncations, and the nondegeneracy
//! certificate.
//!
//! The multiplicity is the dimension of the local quotient ring, computed
//! by a Macaulay truncation ladder: `D_K` is the codimension, inside the
//! polynomials of degree < K, of the span of all monomial multiples of the
//! system truncated below degree K. `D_K` is nondecreasing and the first
//! repeat `D_{K+1} = D_K` is the answer (Nakayama), so monotonicity also
//! justifies comparing non-consecutive ladder steps.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::{self, MultiPoly};
use crate::polytope::{orthant_hull, prune_dominated};
use crate::rat::{binomial, lcm, rat, rat_pow, Int, Rat};
use crate::support::{monomials_of_degree, SparseSystem, SupportConfig};

/// A finite-support polynomial system vanishing at the origin.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub dim: usize,
    pub polys: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(dim: usize, polys: Vec<MultiPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidInput("empty polynomial system".into()));
        }
        for (i, p) in polys.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial {i} has dimension {}, expected {dim}",
                    p.dim()
                )));
            }
            if p.is_zero() {
                return Err(Error::InvalidInput(format!("polynomial {i} is zero")));
            }
        }
        Ok(PolySystem { dim, polys })
    }
}

/// Result of the truncation ladder. `Infinite` means the ladder did not
/// stabilize below the ceiling: the root is non-isolated, or the ceiling
/// was too small.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(v) => Some(v),
            Multiplicity::Infinite => None,
        }
    }
}

/// Expands `F_k(z) = f_k(z + q)` exactly, rescaling coefficients so that the
/// distinguished torus point becomes the all-ones point first.
pub fn shift_system(system: &SparseSystem) -> Result<PolySystem> {
    let coeffs = rescale_to_one(system)?;
    let (config, _) = system.config.normalize_to_orthant();
    let n = config.dim();
    let mut polys = Vec::new();
    for k in 0..coeffs.rows() {
        let mut f = MultiPoly::zero(n);
        for (j, point) in config.points().iter().enumerate() {
            let c = coeffs.at(k, j);
            if c.is_zero() {
                continue;
            }
            let mut term = MultiPoly::constant(n, c.clone());
            for (i, &a) in point.iter().enumerate() {
                let mut binom = MultiPoly::zero(n);
                let mut e = vec![0u64; n];
                for l in 0..=(a as u64) {
                    e[i] = l;
                    binom.add_term(e.clone(), Rat::from_integer(binomial(a as u64, l)));
                }
                term = term.mul(&binom);
            }
            f = f.add(&term);
        }
        polys.push(f);
    }
    PolySystem::new(n, polys)
}

/// Column-rescales the coefficients by `q^{a_j}` so the base point moves to
/// the all-ones point, which preserves the local multiplicity.
fn rescale_to_one(system: &SparseSystem) -> Result<RatMatrix> {
    let q = &system.base_point;
    if q.iter().all(|v| v.is_one()) {
        return Ok(system.coeffs.clone());
    }
    let mut out = system.coeffs.clone();
    for (j, point) in system.config.points().iter().enumerate() {
        let mut factor = Rat::one();
        for (qi, &a) in q.iter().zip(point) {
            factor *= if a >= 0 {
                rat_pow(qi, a as u64)
            } else {
                rat_pow(qi, (-a) as u64).recip()
            };
        }
        for k in 0..out.rows() {
            let v = out.at(k, j) * &factor;
            *out.at_mut(k, j) = v;
        }
    }
    Ok(out)
}

/// Local intersection multiplicity of the origin for an explicitly
/// expanded system. `ceiling` caps the ladder height (default 64).
pub fn multiplicity_at_origin(ps: &PolySystem, ceiling: Option<u64>) -> Result<Multiplicity> {
    for (i, p) in ps.polys.iter().enumerate() {
        if !p.coeff(&vec![0; ps.dim]).is_zero() {
            return Err(Error::OriginNotRoot(i));
        }
    }
    let provider = |i: usize, alpha: &[u64]| ps.polys[i].coeff(alpha);
    Ok(ladder(ps.dim, ps.polys.len(), &provider, ceiling.unwrap_or(64)).0)
}

/// Default ladder ceiling for a sparse system: the Kouchnirenko-style
/// bound `min(prod s_k, prod t_l) + 2`. Isolated nondegenerate roots
/// always stabilize below it; degenerate roots above it are reported as
/// `Infinite` (meaning infinite-or-unknown), which a caller-supplied
/// ceiling can widen.
fn default_ceiling(system: &SparseSystem) -> u64 {
    let exps: Vec<Vec<Rat>> = system
        .config
        .points()
        .iter()
        .map(|p| p.iter().map(|&v| rat(v)).collect())
        .collect();
    crate::geometry::sparsity_stats(&system.coeffs, &exps)
        .ok()
        .and_then(|stats| stats.kouchnirenko_bound())
        .and_then(|b| crate::rat::to_i64(&b))
        .map_or(64, |b| b.max(1) as u64 + 2)
}

/// Multiplicity at the distinguished torus point of a sparse system,
/// computed without expanding the shifted polynomials: exponents are first
/// shrunk by multiplicity-preserving monomial changes of coordinates, and
/// the ladder reads shifted coefficients straight from binomial sums.
pub fn multiplicity_at_one(system: &SparseSystem, ceiling: Option<u64>) -> Result<Multiplicity> {
    let ceiling = ceiling.unwrap_or_else(|| default_ceiling(system));
    let coeffs = rescale_to_one(system)?;
    let (config, perm) = system.config.anchor_at_zero(0)?;
    let mut cols: Vec<Vec<Rat>> = perm.iter().map(|&j| coeffs.col(j)).collect();
    let (config, _) = config.invariant_factor_reduce()?;
    let config = config.hnf_shrink();
    let (config, _) = config.normalize_to_orthant();
    let n = config.dim();
    let rows = coeffs.rows();
    let coeffs = {
        let mut m = RatMatrix::zero(rows, cols.len());
        for (j, col) in cols.drain(..).enumerate() {
            for (k, v) in col.into_iter().enumerate() {
                *m.at_mut(k, j) = v;
            }
        }
        m
    };
    for k in 0..rows {
        let sum: Rat = (0..coeffs.cols()).map(|j| coeffs.at(k, j).clone()).sum();
        if !sum.is_zero() {
            return Err(Error::OriginNotRoot(k));
        }
    }
    let points = config.points().to_vec();
    let provider = |i: usize, alpha: &[u64]| -> Rat {
        let mut acc = Rat::zero();
        for (j, p) in points.iter().enumerate() {
            let c = coeffs.at(i, j);
            if c.is_zero() {
                continue;
            }
            let mut b = Int::one();
            for (&a, &e) in p.iter().zip(alpha) {
                b *= binomial(a as u64, e);
                if b.is_zero() {
                    break;
                }
            }
            if !b.is_zero() {
                acc += c * Rat::from_integer(b);
            }
        }
        acc
    };
    Ok(ladder(n, rows, &provider, ceiling).0)
}

/// Outcome of the ladder on truncated series input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMultiplicity {
    Stabilized(u64),
    /// The ladder did not stabilize within the trusted range of the
    /// truncation; the multiplicity is at least the reported value.
    Unknown,
}

/// Multiplicity at the origin of a system of power series known up to total
/// degree `order`. Stabilization is only trusted while the truncated
/// coefficients are exact, i.e. for ladder heights `K <= order`.
pub fn multiplicity_of_series(
    series: &[MultiPoly],
    order: u64,
) -> Result<SeriesMultiplicity> {
    if order < 2 {
        return Err(Error::TruncationTooShort(order as usize));
    }
    if series.is_empty() {
        return Err(Error::InvalidInput("empty series system".into()));
    }
    let dim = series[0].dim();
    for (i, p) in series.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "series {i} has dimension {}, expected {dim}",
                p.dim()
            )));
        }
        if !p.coeff(&vec![0; dim]).is_zero() {
            return Err(Error::OriginNotRoot(i));
        }
    }
    let provider = |i: usize, alpha: &[u64]| series[i].coeff(alpha);
    let (m, stabilized_at) = ladder(dim, series.len(), &provider, order);
    match m {
        Multiplicity::Finite(v) if stabilized_at <= order => {
            Ok(SeriesMultiplicity::Stabilized(v))
        }
        _ => Ok(SeriesMultiplicity::Unknown),
    }
}

/// The truncation ladder. Returns the multiplicity and the height `K` at
/// which `D_K = D_{K+1}` was first witnessed.
fn ladder(
    dim: usize,
    npolys: usize,
    coeff: &dyn Fn(usize, &[u64]) -> Rat,
    ceiling: u64,
) -> (Multiplicity, u64) {
    let mut prev: Option<(u64, u64)> = None; // (K, D_K)
    for k in 2..=ceiling.max(2) + 1 {
        let d = quotient_dimension(dim, npolys, coeff, k);
        if let Some((pk, pd)) = prev {
            if pd == d {
                // monotone, so equality across any gap pins stabilization
                return (Multiplicity::Finite(d), pk);
            }
        }
        prev = Some((k, d));
        if k > ceiling {
            break;
        }
    }
    (Multiplicity::Infinite, ceiling)
}

/// `dim_Q (polynomials of degree < K) / span{ trunc(x^gamma F_i) }`.
fn quotient_dimension(
    dim: usize,
    npolys: usize,
    coeff: &dyn Fn(usize, &[u64]) -> Rat,
    k: u64,
) -> u64 {
    // column index: monomials of degree < K, graded lexicographic
    let mut cols: Vec<Vec<u64>> = Vec::new();
    for d in 0..k {
        let mut block = monomials_of_degree(dim, d);
        block.sort_by(|a, b| b.cmp(a));
        cols.extend(block);
    }
    let index: std::collections::HashMap<Vec<u64>, usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let ncols = cols.len();

    let mut echelon = Echelon::new(ncols);
    for i in 0..npolys {
        for gd in 0..k.saturating_sub(1) {
            for gamma in monomials_of_degree(dim, gd) {
                let mut row = vec![Rat::zero(); ncols];
                let mut nonzero = false;
                for dd in 0..(k - gd) {
                    for delta in monomials_of_degree(dim, dd) {
                        let c = coeff(i, &delta);
                        if c.is_zero() {
                            continue;
                        }
                        let e: Vec<u64> =
                            gamma.iter().zip(&delta).map(|(a, b)| a + b).collect();
                        row[index[&e]] = c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    echelon.insert(row);
                }
            }
        }
    }
    (ncols - echelon.rank()) as u64
}

/// Incremental integer row echelon with content normalization, for exact
/// rank accumulation.
struct Echelon {
    ncols: usize,
    // rows kept primitive, sorted by pivot column
    rows: Vec<(usize, Vec<Int>)>,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: Vec<Rat>) {
        let mut scale = Int::one();
        for v in &row {
            scale = lcm(&scale, v.denom());
        }
        let mut r: Vec<Int> = row
            .iter()
            .map(|v| (v * Rat::from_integer(scale.clone())).to_integer())
            .collect();
        normalize(&mut r);
        for (pcol, prow) in &self.rows {
            if r[*pcol].is_zero() {
                continue;
            }
            let a = prow[*pcol].clone();
            let b = r[*pcol].clone();
            for c in 0..self.ncols {
                let v = &r[c] * &a - &prow[c] * &b;
                r[c] = v;
            }
            normalize(&mut r);
        }
        if let Some(pcol) = r.iter().position(|v| !v.is_zero()) {
            self.rows.push((pcol, r));
            self.rows.sort_by_key(|(p, _)| *p);
        }
    }
}

fn normalize(row: &mut [Int]) {
    let mut g = Int::zero();
    for v in row.iter() {
        g = crate::rat::gcd(&g, v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// An initial-form system attached to a bounded face of the common
/// refinement of the Newton diagrams, restricted to a variable subset.
#[derive(Clone, Debug)]
pub struct TruncatedSystem {
    /// 0-based indices of the retained variables.
    pub subset: Vec<usize>,
    /// Strictly positive weight selecting the face (in subset coordinates).
    pub weight: Vec<Rat>,
    /// Initial forms of each polynomial, in subset coordinates.
    pub polys: Vec<MultiPoly>,
    pub face_dim: usize,
}

/// All initial-form systems of a convenient system at the origin: one per
/// nonempty variable subset and per bounded face of the Minkowski sum of
/// the restricted Newton polyhedra.
pub fn face_truncations(ps: &PolySystem) -> Result<Vec<TruncatedSystem>> {
    let n = ps.dim;
    for p in &ps.polys {
        let st = crate::geometry::staircase_of_support(n, &p.support());
        if let Some(axis) = st.axis_intercepts.iter().position(Option::is_none) {
            return Err(Error::NotConvenient(axis + 1));
        }
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let axes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = axes.len();
        let restricted: Vec<MultiPoly> =
            ps.polys.iter().map(|p| p.restrict_to_axes(&axes)).collect();
        // Minkowski sum of the restricted supports, with dominance pruning
        let mut gens: Vec<Vec<Rat>> = vec![vec![Rat::zero(); k]];
        for p in &restricted {
            let mut next = Vec::new();
            for g in &gens {
                for a in p.support() {
                    let s: Vec<Rat> = g
                        .iter()
                        .zip(&a)
                        .map(|(x, &e)| x + rat(e as i64))
                        .collect();
                    if !next.contains(&s) {
                        next.push(s);
                    }
                }
            }
            gens = prune_dominated(&next);
        }
        let hull = orthant_hull(k, &gens);
        for face in hull.diagram_faces() {
            let weight: Vec<Rat> = face
                .rep_normal
                .iter()
                .map(|v| Rat::from_integer(v.clone()))
                .collect();
            let polys: Vec<MultiPoly> =
                restricted.iter().map(|p| p.initial_form(&weight)).collect();
            out.push(TruncatedSystem {
                subset: axes.clone(),
                weight,
                polys,
                face_dim: face.dim,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceStatus {
    NonDegenerate,
    Degenerate,
    /// Face dimension at least two: no certificate attempted.
    Unknown,
}

/// Per-face certificates plus the overall verdict. The overall status is
/// `NonDegenerate` only when every face is certified.
#[derive(Clone, Debug)]
pub struct NondegeneracyReport {
    pub faces: Vec<(TruncatedSystem, FaceStatus)>,
    pub overall: FaceStatus,
}

/// Certifies nondegeneracy at the origin: vertices carry monomial systems
/// (never zero on the torus), edges reduce to univariate polynomials whose
/// rational gcd decides common torus roots, and higher-dimensional faces
/// are reported as `Unknown`.
pub fn nondegeneracy_check(ps: &PolySystem) -> Result<NondegeneracyReport> {
    let truncs = face_truncations(ps)?;
    let mut faces = Vec::new();
    let mut overall = FaceStatus::NonDegenerate;
    for t in truncs {
        let status = classify_face(&t);
        match status {
            FaceStatus::Degenerate => overall = FaceStatus::Degenerate,
            FaceStatus::Unknown if overall == FaceStatus::NonDegenerate => {
                overall = FaceStatus::Unknown
            }
            _ => {}
        }
        faces.push((t, status));
    }
    Ok(NondegeneracyReport { faces, overall })
}

fn classify_face(t: &TruncatedSystem) -> FaceStatus {
    if t.polys.iter().all(|p| p.num_terms() == 1) {
        // monomials are units on the torus
        return FaceStatus::NonDegenerate;
    }
    if t.face_dim >= 2 {
        return FaceStatus::Unknown;
    }
    // one-dimensional face: all supports lie on parallel lines
    let k = t.subset.len();
    let mut dir: Option<Vec<i64>> = None;
    for p in &t.polys {
        let supp = p.support();
        if supp.len() >= 2 {
            let d: Vec<i64> = supp[1]
                .iter()
                .zip(&supp[0])
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            dir = Some(primitive_direction(d));
            break;
        }
    }
    let Some(dir) = dir else {
        return FaceStatus::NonDegenerate;
    };
    let mut reductions: Vec<Vec<Rat>> = Vec::new();
    for p in &t.polys {
        let supp = p.support();
        let base = &supp[0];
        let pivot = (0..k).find(|&i| dir[i] != 0).expect("nonzero direction");
        let mut pairs: Vec<(i64, Rat)> = Vec::new();
        for a in &supp {
            let s = (a[pivot] as i64 - base[pivot] as i64) / dir[pivot];
            debug_assert!(
                (0..k).all(|i| base[i] as i64 + s * dir[i] == a[i] as i64),
                "face support must be collinear"
            );
            pairs.push((s, p.coeff(a)));
        }
        let smin = pairs.iter().map(|(s, _)| *s).min().unwrap();
        let smax = pairs.iter().map(|(s, _)| *s).max().unwrap();
        let mut u = vec![Rat::zero(); (smax - smin + 1) as usize];
        for (s, c) in pairs {
            u[(s - smin) as usize] = c;
        }
        reductions.push(poly::strip_zero_roots(&u));
    }
    let mut g = reductions[0].clone();
    for r in &reductions[1..] {
        g = poly::univariate_gcd(&g, r);
    }
    match poly::univariate_degree(&g) {
        Some(d) if d >= 1 => FaceStatus::Degenerate,
        _ => FaceStatus::NonDegenerate,
    }
}

fn primitive_direction(mut d: Vec<i64>) -> Vec<i64> {
    let mut g: i64 = 0;
    for &v in &d {
        g = num_integer::gcd(g, v.abs());
    }
    if g > 1 {
        for v in &mut d {
            *v /= g;
        }
    }
    d
}

/// Multiplicity of a point `q` with nonzero rational coordinates on the
/// hypersurface `f = 0`: the order of vanishing of `f(z + q)` at the origin,
/// read from exact binomial-shift coefficients.
pub fn hypersurface_multiplicity(
    config: &SupportConfig,
    coeffs: &[Rat],
    q: &[Rat],
) -> Result<u64> {
    if coeffs.len() != config.cardinality() {
        return Err(Error::DimensionMismatch(
            "one coefficient per support point is required".into(),
        ));
    }
    if coeffs.iter().all(Rat::is_zero) {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if q.len() != config.dim() {
        return Err(Error::DimensionMismatch("point of wrong dimension".into()));
    }
    if q.iter().any(Rat::is_zero) {
        return Err(Error::InvalidInput("point must lie in the torus".into()));
    }
    let (config, _) = config.normalize_to_orthant();
    let n = config.dim();
    // coefficient of z^alpha in f(z+q):
    //   sum_j c_j prod_i C(a_ij, alpha_i) q_i^(a_ij - alpha_i)
    let coeff_at = |alpha: &[u64]| -> Rat {
        let mut acc = Rat::zero();
        for (j, p) in config.points().iter().enumerate() {
            if coeffs[j].is_zero() {
                continue;
            }
            let mut term = coeffs[j].clone();
            for (i, &a) in p.iter().enumerate() {
                let a = a as u64;
                if alpha[i] > a {
                    term = Rat::zero();
                    break;
                }
                term *= Rat::from_integer(binomial(a, alpha[i]))
                    * rat_pow(&q[i], a - alpha[i]);
            }
            acc += term;
        }
        acc
    };
    let degree_bound: u64 = (0..n)
        .map(|i| config.points().iter().map(|p| p[i] as u64).max().unwrap())
        .sum();
    for d in 0..=degree_bound {
        for alpha in monomials_of_degree(n, d) {
            if !coeff_at(&alpha).is_zero() {
                return Ok(d);
            }
        }
    }
    Err(Error::InvalidInput(
        "shifted polynomial vanished to impossible order".into(),
    ))
}
