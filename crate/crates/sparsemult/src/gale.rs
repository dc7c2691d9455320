//! Gale dual and H-dual systems, the four-system duality square, and the
//! degeneracy test on linear parts.

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::geometry::{
    covolume_single, mixed_covolume, sparsity_stats, staircase_lenient, ConvenientPolytope,
    SparsityStats, Staircase, VanishingSumEvaluator,
};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::oracle::{
    multiplicity_at_one, multiplicity_of_series, shift_system, Multiplicity, PolySystem,
    SeriesMultiplicity,
};
use crate::poly::MultiPoly;
use crate::rat::{binomial_rat, Rat};
use crate::support::{SparseSystem, SupportConfig};

/// A Gale dual pair: `B` spans the integer kernel of the support matrix,
/// `D` is a reduced rational kernel basis of the coefficient matrix
/// (first column all ones, first row `(1, 0, ..., 0)`).
#[derive(Clone, Debug)]
pub struct GaleData {
    pub config: SupportConfig,
    pub coeffs: RatMatrix,
    pub b: IntMatrix,
    pub d: RatMatrix,
}

/// Lattice kernel basis of the support matrix (columns of the result).
pub fn gale_dual_b(config: &SupportConfig) -> IntMatrix {
    config.matrix_a().lattice_kernel_basis()
}

/// A reduced Gale dual of the coefficient matrix: first column all ones,
/// remaining columns a basis of the kernel vectors with vanishing first
/// coordinate. Requires the all-ones vector in the kernel, i.e. that the
/// all-ones point solves the system.
pub fn reduced_gale_dual_d(coeffs: &RatMatrix) -> Result<RatMatrix> {
    let n = coeffs.rows();
    let nn = coeffs.cols();
    let ones: Vec<Rat> = vec![Rat::one(); nn];
    let image: Vec<Rat> = (0..n)
        .map(|k| coeffs.row(k).iter().cloned().sum())
        .collect();
    if image.iter().any(|v| !v.is_zero()) {
        return Err(Error::OnesNotInKernel);
    }
    // kernel vectors with first coordinate zero: kernel of C augmented
    // with the row e_0
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|k| coeffs.row(k).to_vec()).collect();
    let mut e0 = vec![Rat::zero(); nn];
    e0[0] = Rat::one();
    rows.push(e0);
    let w0 = RatMatrix::from_rows(rows).rational_kernel_basis();
    // normalize so the first invertible row block becomes the identity:
    // the resulting rows delta_i start with unit vectors, matching the
    // customary presentation of reduced duals
    let m = w0.cols();
    let w0 = normalize_row_block(&w0, m);
    let mut d = RatMatrix::zero(nn, m + 1);
    for r in 0..nn {
        *d.at_mut(r, 0) = ones[r].clone();
        for c in 0..m {
            *d.at_mut(r, c + 1) = w0.at(r, c).clone();
        }
    }
    Ok(d)
}

/// Right-multiplies by the inverse of the lexicographically first
/// invertible `m x m` row block (searching rows from the top), when one
/// exists.
fn normalize_row_block(k: &RatMatrix, m: usize) -> RatMatrix {
    if m == 0 {
        return k.clone();
    }
    let nn = k.rows();
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis = RatMatrix::zero(m, m);
    // greedy: extend the row set keeping the selected rows independent
    for r in 1..nn {
        if chosen.len() == m {
            break;
        }
        let mut trial: Vec<Vec<Rat>> = chosen.iter().map(|&i| k.row(i).to_vec()).collect();
        trial.push(k.row(r).to_vec());
        if RatMatrix::from_rows(trial).rank() == chosen.len() + 1 {
            chosen.push(r);
        }
    }
    if chosen.len() < m {
        return k.clone();
    }
    for (i, &r) in chosen.iter().enumerate() {
        for c in 0..m {
            *basis.at_mut(i, c) = k.at(r, c).clone();
        }
    }
    match invert(&basis) {
        Some(inv) => k.mul(&inv),
        None => k.clone(),
    }
}

fn invert(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.rows();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = a.row(r).to_vec();
        for c in 0..n {
            row.push(if c == r { Rat::one() } else { Rat::zero() });
        }
        rows.push(row);
    }
    let (rref, pivots) = RatMatrix::from_rows(rows).rref();
    if pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    let mut out = RatMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            *out.at_mut(r, c) = rref.at(r, n + c).clone();
        }
    }
    Some(out)
}

impl GaleData {
    /// Builds the standard Gale dual pair of a system with the all-ones
    /// point as a root, anchoring the support at `a_0 = 0` first.
    pub fn new(system: &SparseSystem) -> Result<GaleData> {
        let (config, _) = system.config.anchor_at_zero(0)?;
        let coeffs = system.coeffs.clone();
        let b = gale_dual_b(&config);
        let d = reduced_gale_dual_d(&coeffs)?;
        GaleData::validate(config, coeffs, b, d)
    }

    /// Wraps externally supplied dual matrices after full validation.
    pub fn with_duals(
        system: &SparseSystem,
        b: IntMatrix,
        d: RatMatrix,
    ) -> Result<GaleData> {
        let (config, _) = system.config.anchor_at_zero(0)?;
        GaleData::validate(config, system.coeffs.clone(), b, d)
    }

    fn validate(
        config: SupportConfig,
        coeffs: RatMatrix,
        b: IntMatrix,
        d: RatMatrix,
    ) -> Result<GaleData> {
        let n = config.dim();
        let nn = config.cardinality();
        let m = config.codim();
        if coeffs.rows() != n {
            return Err(Error::ValidationError(
                "coefficient matrix must have one row per variable".into(),
            ));
        }
        if b.rows() != nn || b.cols() != m {
            return Err(Error::ValidationError(format!(
                "B must be {nn}x{m}, found {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if d.rows() != nn || d.cols() != m + 1 {
            return Err(Error::ValidationError(format!(
                "reduced D must be {nn}x{}, found {}x{}",
                m + 1,
                d.rows(),
                d.cols()
            )));
        }
        if !config.matrix_a().mul(&b).is_zero() {
            return Err(Error::ValidationError("A * B != 0".into()));
        }
        if !coeffs.mul(&d).is_zero() {
            return Err(Error::ValidationError("C * D != 0".into()));
        }
        if b.to_rat().rank() != m {
            return Err(Error::ValidationError("B does not have full rank".into()));
        }
        if d.rank() != m + 1 {
            return Err(Error::ValidationError("D does not have full rank".into()));
        }
        for r in 0..nn {
            if !d.at(r, 0).is_one() {
                return Err(Error::ValidationError(
                    "first column of reduced D must be all ones".into(),
                ));
            }
        }
        for c in 1..=m {
            if !d.at(0, c).is_zero() {
                return Err(Error::ValidationError(
                    "first row of reduced D must be (1, 0, ..., 0)".into(),
                ));
            }
        }
        Ok(GaleData {
            config,
            coeffs,
            b,
            d,
        })
    }

    pub fn codim(&self) -> usize {
        self.config.codim()
    }

    /// The rows `delta_i` of `D` without the leading ones column.
    pub fn deltas(&self) -> Vec<Vec<Rat>> {
        let m = self.codim();
        (0..self.d.rows())
            .map(|r| (1..=m).map(|c| self.d.at(r, c).clone()).collect())
            .collect()
    }

    /// Evaluator of the dual vanishing sums `L*_k`.
    pub fn lstar_evaluator(&self, k: usize) -> VanishingSumEvaluator {
        let coeffs: Vec<Rat> = (0..self.b.rows())
            .map(|i| Rat::from_integer(self.b.at(i, k).clone()))
            .collect();
        VanishingSumEvaluator::new(coeffs, self.deltas()).expect("validated shapes")
    }

    /// Staircase of the k-th Gale (equivalently H-dual) polynomial, read
    /// from the dual vanishing sums.
    pub fn dual_staircase(&self, k: usize) -> Staircase {
        staircase_lenient(&self.lstar_evaluator(k), None)
    }

    /// Starred sparsity statistics of the pair `(B, D)`.
    pub fn dual_stats(&self) -> Result<SparsityStats> {
        sparsity_stats(&self.b.to_rat().transpose(), &self.deltas())
    }
}

/// The Gale system: linear forms `p_i = 1 + <delta_i, y>`, the cleared
/// polynomials `g_k`, and the factored rational functions `phi_k`.
#[derive(Clone, Debug)]
pub struct GaleSystem {
    pub forms: Vec<MultiPoly>,
    pub polys: Vec<MultiPoly>,
    /// Exponent of form `i` in `phi_k`, as a signed integer.
    pub exponents: IntMatrix,
}

impl GaleSystem {
    /// Evaluates `phi_k` away from the hyperplane arrangement.
    pub fn eval_phi(&self, k: usize, y: &[Rat]) -> Option<Rat> {
        let mut acc = Rat::one();
        for (i, form) in self.forms.iter().enumerate() {
            let e = crate::rat::to_i64(self.exponents.at(i, k))?;
            if e == 0 {
                continue;
            }
            let v = form.eval(y);
            if v.is_zero() {
                return None;
            }
            acc *= if e > 0 {
                crate::rat::rat_pow(&v, e as u64)
            } else {
                crate::rat::rat_pow(&v, (-e) as u64).recip()
            };
        }
        Some(acc)
    }
}

/// Expands the Gale system `g_k = prod_{b>0} p_i^{b} - prod_{b<0} p_i^{-b}`.
pub fn gale_system(gd: &GaleData) -> GaleSystem {
    let m = gd.codim();
    let deltas = gd.deltas();
    let forms: Vec<MultiPoly> = deltas
        .iter()
        .map(|delta| {
            let mut p = MultiPoly::one(m);
            for (j, dj) in delta.iter().enumerate() {
                let mut e = vec![0u64; m];
                e[j] = 1;
                p.add_term(e, dj.clone());
            }
            p
        })
        .collect();
    let mut polys = Vec::new();
    for k in 0..m {
        let mut pos = MultiPoly::one(m);
        let mut neg = MultiPoly::one(m);
        for (i, form) in forms.iter().enumerate() {
            let b = gd.b.at(i, k);
            if b.is_positive() {
                pos = pos.mul(&form.pow(crate::rat::to_i64(b).unwrap() as u64));
            } else if b.is_negative() {
                neg = neg.mul(&form.pow((-crate::rat::to_i64(b).unwrap()) as u64));
            }
        }
        polys.push(pos.sub(&neg));
    }
    GaleSystem {
        forms,
        polys,
        exponents: gd.b.clone(),
    }
}

/// The H-dual series `H_k(y) = sum_i b_ik (y + 1)^{delta_i}` truncated to
/// total degree `order`, via generalized binomial coefficients.
#[derive(Clone, Debug)]
pub struct HDualSystem {
    pub series: Vec<MultiPoly>,
    pub order: u64,
}

pub fn hdual_series(gd: &GaleData, order: u64) -> HDualSystem {
    let m = gd.codim();
    let deltas = gd.deltas();
    let mut series = Vec::new();
    for k in 0..gd.b.cols() {
        let mut h = MultiPoly::zero(m);
        for d in 0..=order {
            for beta in crate::support::monomials_of_degree(m, d) {
                let mut acc = Rat::zero();
                for (i, delta) in deltas.iter().enumerate() {
                    let b = gd.b.at(i, k);
                    if b.is_zero() {
                        continue;
                    }
                    let mut prod = Rat::from_integer(b.clone());
                    for (dj, &bj) in delta.iter().zip(&beta) {
                        if bj > 0 {
                            prod *= binomial_rat(dj, bj);
                        }
                        if prod.is_zero() {
                            break;
                        }
                    }
                    acc += prod;
                }
                h.add_term(beta, acc);
            }
        }
        series.push(h);
    }
    HDualSystem { series, order }
}

/// The fourth corner of the duality square, `(A^t x)^{C^t} = 1`, kept as
/// factored data: linear forms `1 + <a_j, x>` with rational exponents from
/// the rows of `C`.
#[derive(Clone, Debug)]
pub struct FactoredSystem {
    pub forms: Vec<MultiPoly>,
    /// `exponents[j][k]` is the exponent of form `j` in equation `k`.
    pub exponents: RatMatrix,
}

/// All four systems of the duality square, their diagram data, and the two
/// multiplicities when the oracle can certify them.
#[derive(Clone, Debug)]
pub struct DualitySquare {
    pub shifted: PolySystem,
    pub gale: GaleSystem,
    pub hdual: HDualSystem,
    pub fourth: FactoredSystem,
    pub gale_staircases: Vec<Staircase>,
    pub hdual_staircases: Vec<Staircase>,
    pub diagrams_equal: bool,
    pub mu: Option<u64>,
    pub mu_prime: Option<u64>,
}

/// Builds the duality square of a system with the all-ones point as an
/// isolated root. The primal multiplicity comes from the truncation ladder
/// (an error when it does not certify isolation); the dual multiplicity is
/// read from the H-dual series and may be unknown.
pub fn duality_square(system: &SparseSystem) -> Result<DualitySquare> {
    let gd = GaleData::new(system)?;
    let anchored = SparseSystem::new(gd.config.clone(), gd.coeffs.clone())?;
    let shifted = shift_system(&anchored)?;
    let gale = gale_system(&gd);
    let m = gd.codim();

    let mu = match multiplicity_at_one(&anchored, None)? {
        Multiplicity::Finite(v) => Some(v),
        Multiplicity::Infinite => {
            return Err(Error::ValidationError(
                "the all-ones point is not certified isolated by the oracle".into(),
            ))
        }
    };

    let gale_staircases: Vec<Staircase> = (0..m).map(|k| gd.dual_staircase(k)).collect();
    // default series order: the mixed covolume bound on the dual side, +2
    let mut order: u64 = 16;
    if gale_staircases.iter().all(Staircase::is_convenient) {
        let polytopes: Result<Vec<ConvenientPolytope>> = gale_staircases
            .iter()
            .map(ConvenientPolytope::from_staircase)
            .collect();
        if let Ok(ps) = polytopes {
            let bound = if m == 1 {
                covolume_single(&ps[0])
            } else {
                mixed_covolume(&ps)?
            };
            order = crate::rat::to_i64(&bound.ceil().to_integer()).unwrap_or(14).max(2) as u64 + 2;
        }
    }
    let mut hdual = hdual_series(&gd, order);
    let mut mu_prime = None;
    for _ in 0..3 {
        match multiplicity_of_series(&hdual.series, hdual.order)? {
            SeriesMultiplicity::Stabilized(v) => {
                mu_prime = Some(v);
                break;
            }
            SeriesMultiplicity::Unknown => {
                let next = (hdual.order * 2).min(40);
                if next == hdual.order {
                    break;
                }
                hdual = hdual_series(&gd, next);
            }
        }
    }

    let hdual_staircases: Vec<Staircase> = hdual
        .series
        .iter()
        .map(|h| crate::geometry::staircase_of_support(m, &h.support()))
        .collect();
    let diagrams_equal = gale_staircases
        .iter()
        .zip(&hdual_staircases)
        .all(|(a, b)| a.minimal_points == b.minimal_points);

    let n = gd.config.dim();
    let forms: Vec<MultiPoly> = gd
        .config
        .points()
        .iter()
        .map(|a| {
            let mut p = MultiPoly::one(n);
            for (i, &ai) in a.iter().enumerate() {
                let mut e = vec![0u64; n];
                e[i] = 1;
                p.add_term(e, crate::rat::rat(ai));
            }
            p
        })
        .collect();
    let fourth = FactoredSystem {
        forms,
        exponents: gd.coeffs.transpose(),
    };

    Ok(DualitySquare {
        shifted,
        gale,
        hdual,
        fourth,
        gale_staircases,
        hdual_staircases,
        diagrams_equal,
        mu,
        mu_prime,
    })
}

/// The two equivalent linear-part determinant tests for multiplicity at
/// least two: `det(A' C'^t) = 0` and `det(B'^t D') = 0`. Returns both flags
/// and whether they agree.
pub fn multiplicity_ge_two(gd: &GaleData) -> Result<(bool, bool, bool)> {
    let config = &gd.config;
    if config.points()[0].iter().any(|&v| v != 0) {
        return Err(Error::InvalidInput(
            "linear part test requires the anchor a_0 = 0".into(),
        ));
    }
    let n = config.dim();
    let nn = config.cardinality();
    let m = config.codim();
    // A': coordinates of a_1..a_{N-1}
    let a_prime = RatMatrix::from_rows(
        (0..n)
            .map(|i| {
                (1..nn)
                    .map(|j| crate::rat::rat(config.points()[j][i]))
                    .collect()
            })
            .collect(),
    );
    let c_prime = RatMatrix::from_rows(
        (0..n)
            .map(|k| (1..nn).map(|j| gd.coeffs.at(k, j).clone()).collect())
            .collect(),
    );
    let d1 = a_prime.mul(&c_prime.transpose()).determinant()?;
    let b_prime = RatMatrix::from_rows(
        (1..nn)
            .map(|i| {
                (0..m)
                    .map(|k| Rat::from_integer(gd.b.at(i, k).clone()))
                    .collect()
            })
            .collect(),
    );
    let d_prime = RatMatrix::from_rows(
        (1..nn)
            .map(|i| (1..=m).map(|c| gd.d.at(i, c).clone()).collect())
            .collect(),
    );
    let d2 = b_prime.transpose().mul(&d_prime).determinant()?;
    let f1 = d1.is_zero();
    let f2 = d2.is_zero();
    Ok((f1, f2, f1 == f2))
}

/// True when every shifted equation meets every coordinate axis, i.e. all
/// the row sparsity counts `rho_{k,l}` are nonnegative.
pub fn system_is_convenient(system: &SparseSystem) -> Result<bool> {
    let exps: Vec<Vec<Rat>> = system
        .config
        .points()
        .iter()
        .map(|p| p.iter().map(|&v| crate::rat::rat(v)).collect())
        .collect();
    let stats = sparsity_stats(&system.coeffs, &exps)?;
    Ok(stats.rho.iter().all(|row| row.iter().all(|&v| v >= 0)))
}

/// Randomized search for an invertible row action making the shifted system
/// convenient. Entries are drawn from [-3, 3]; failure after the trial
/// budget is reported, not fatal.
pub fn repair_system_convenient(
    system: &SparseSystem,
    seed: u64,
    trials: usize,
) -> Result<(IntMatrix, SparseSystem)> {
    if system_is_convenient(system)? {
        let n = system.equations();
        return Ok((IntMatrix::identity(n), system.clone()));
    }
    let n = system.equations();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let mraw: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&mraw);
        if m.determinant()?.is_zero() {
            continue;
        }
        let new_coeffs = m.to_rat().mul(&system.coeffs);
        let candidate = SparseSystem::with_base_point(
            system.config.clone(),
            new_coeffs,
            system.base_point.clone(),
        )?;
        if system_is_convenient(&candidate)? {
            return Ok((m, candidate));
        }
    }
    Err(Error::NotFound(format!(
        "no convenient left action found in {trials} trials"
    )))
}

/// True when every Gale polynomial meets every coordinate axis
/// (all starred `rho` counts nonnegative).
pub fn gale_is_convenient(gd: &GaleData) -> Result<bool> {
    let stats = gd.dual_stats()?;
    Ok(stats.rho.iter().all(|row| row.iter().all(|&v| v >= 0)))
}

/// Randomized search for a right action on `B` making the Gale system
/// convenient.
pub fn repair_gale_convenient_b(
    gd: &GaleData,
    seed: u64,
    trials: usize,
) -> Result<(IntMatrix, GaleData)> {
    let m = gd.codim();
    if gale_is_convenient(gd)? {
        return Ok((IntMatrix::identity(m), gd.clone()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let rraw: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let r = IntMatrix::from_i64_rows(&rraw);
        if r.determinant()?.is_zero() {
            continue;
        }
        let candidate = GaleData {
            config: gd.config.clone(),
            coeffs: gd.coeffs.clone(),
            b: gd.b.mul(&r),
            d: gd.d.clone(),
        };
        if gale_is_convenient(&candidate)? {
            return Ok((r, candidate));
        }
    }
    Err(Error::NotFound(format!(
        "no convenient right action on B found in {trials} trials"
    )))
}

/// Randomized search for a right action on the delta block of `D` (keeping
/// it reduced) making the Gale system convenient.
pub fn repair_gale_convenient_d(
    gd: &GaleData,
    seed: u64,
    trials: usize,
) -> Result<(RatMatrix, GaleData)> {
    let m = gd.codim();
    if gale_is_convenient(gd)? {
        return Ok((RatMatrix::identity(m + 1), gd.clone()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut r = RatMatrix::identity(m + 1);
        for i in 1..=m {
            for j in 1..=m {
                *r.at_mut(i, j) = crate::rat::rat(rng.gen_range(-3..=3));
            }
        }
        if r.determinant()?.is_zero() {
            continue;
        }
        let candidate = GaleData {
            config: gd.config.clone(),
            coeffs: gd.coeffs.clone(),
            b: gd.b.clone(),
            d: gd.d.mul(&r),
        };
        if gale_is_convenient(&candidate)? {
            return Ok((r, candidate));
        }
    }
    Err(Error::NotFound(format!(
        "no convenient right action on D found in {trials} trials"
    )))
}

/// Assembles the `(x-1)^3` walkthrough data with a fixed reference choice
/// of `B` and `D`.
pub fn cube_example() -> Result<(SparseSystem, GaleData)> {
    let config = SupportConfig::new(vec![vec![0], vec![1], vec![2], vec![3]])?;
    let coeffs = RatMatrix::from_i64_rows(&[vec![-1, 3, -3, 1]]);
    let system = SparseSystem::new(config, coeffs)?;
    let b = IntMatrix::from_i64_rows(&[vec![1, 2], vec![-2, -3], vec![1, 0], vec![0, 1]]);
    let d = RatMatrix::from_i64_rows(&[
        vec![1, 0, 0],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![1, -3, 3],
    ]);
    let gd = GaleData::with_duals(&system, b, d)?;
    Ok((system, gd))
}
