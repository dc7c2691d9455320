//! The explicit witness family on the moment curve, the multiplicity
//! bounds, the hypersurface bounds, and the codimension-one cyclic
//! constructions.

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::gale::GaleData;
use crate::geometry::{mixed_covolume, sparsity_stats, staircase_lenient, Staircase,
    VanishingSumEvaluator};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::oracle::{
    self, multiplicity_at_one, nondegeneracy_check, shift_system, FaceStatus, Multiplicity,
};
use crate::poly::MultiPoly;
use crate::rat::{binomial, int, rat, Int, Rat};
use crate::support::{SparseSystem, SupportConfig};

/// `f_{d,n}(x) = sum_k (-1)^k C(d,k) x_1^k x_2^{k^2} ... x_n^{k^n}`.
pub fn f_dn(d: u64, n: usize) -> MultiPoly {
    assert!(n >= 1);
    let mut f = MultiPoly::zero(n);
    for k in 0..=d {
        let alpha: Vec<u64> = (1..=n as u32).map(|i| k.pow(i)).collect();
        let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
        f.add_term(alpha, Rat::from_integer(sign * binomial(d, k)));
    }
    f
}

/// The witness system `f_{m+1,n} = ... = f_{m+n,n} = 0` with its
/// coefficient matrix `C_{n,m}` and moment-curve support matrix `A_{n,m}`.
#[derive(Clone, Debug)]
pub struct WitnessSystem {
    pub n: usize,
    pub m: u64,
    pub c_matrix: IntMatrix,
    pub system: SparseSystem,
    pub polys: Vec<MultiPoly>,
}

/// Entry `(i,j)` of `C_{n,m}` is `(-1)^j C(m+i, j)`, rows `i = 1..n`,
/// columns `j = 0..m+n`.
pub fn witness_coefficients(n: usize, m: u64) -> IntMatrix {
    let cols = m as usize + n + 1;
    IntMatrix::from_rows(
        (1..=n as u64)
            .map(|i| {
                (0..cols as u64)
                    .map(|j| {
                        let sign = if j % 2 == 0 { Int::one() } else { -Int::one() };
                        sign * binomial(m + i, j)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The moment-curve support matrix `A_{n,m} = (j^i)`, rows `i = 0..n`,
/// columns `j = 0..m+n`.
pub fn witness_support_matrix(n: usize, m: u64) -> IntMatrix {
    let cols = m as usize + n + 1;
    IntMatrix::from_rows(
        (0..=n as u32)
            .map(|i| (0..cols as u64).map(|j| crate::rat::int_pow(&Int::from(j), i as u64)).collect())
            .collect(),
    )
}

pub fn witness_system(n: usize, m: u64) -> Result<WitnessSystem> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidInput("witness system needs n, m >= 1".into()));
    }
    let points: Vec<Vec<i64>> = (0..(m as i64 + n as i64 + 1))
        .map(|j| (1..=n as u32).map(|i| j.pow(i)).collect())
        .collect();
    let config = SupportConfig::new(points)?;
    let c_matrix = witness_coefficients(n, m);
    // the defining orthogonality: C_{n,m} * A_{m,n}^t = 0
    let a_dual = witness_support_matrix(m as usize, n as u64);
    if !c_matrix.mul(&a_dual.transpose()).is_zero() {
        return Err(Error::ValidationError(
            "witness orthogonality C_{n,m} A_{m,n}^t = 0 failed".into(),
        ));
    }
    let system = SparseSystem::new(config, c_matrix.to_rat())?;
    let polys = (1..=n as u64).map(|i| f_dn(m + i, n)).collect();
    Ok(WitnessSystem {
        n,
        m,
        c_matrix,
        system,
        polys,
    })
}

/// `sum_{q=0}^{l} (-1)^q C(l,q) q^k`, computed both by direct summation and
/// as the `x^k` series coefficient of `k! (1 - e^x)^l`; the two routes are
/// asserted equal.
pub fn stirling_sum(l: u64, k: u64) -> Int {
    let mut direct = Int::zero();
    for q in 0..=l {
        let sign = if q % 2 == 0 { Int::one() } else { -Int::one() };
        direct += sign * binomial(l, q) * crate::rat::int_pow(&Int::from(q), k);
    }
    // series route: (1 - e^x)^l truncated at degree k
    let len = k as usize + 1;
    let mut base = vec![Rat::zero(); len];
    for (i, b) in base.iter_mut().enumerate().skip(1) {
        *b = -Rat::new(Int::one(), crate::rat::factorial(i as u64));
    }
    let mut pow = vec![Rat::zero(); len];
    pow[0] = Rat::one();
    for _ in 0..l {
        let mut next = vec![Rat::zero(); len];
        for i in 0..len {
            if pow[i].is_zero() {
                continue;
            }
            for j in 0..len - i {
                if !base[j].is_zero() {
                    let add = &pow[i] * &base[j];
                    next[i + j] += add;
                }
            }
        }
        pow = next;
    }
    let series = (&pow[k as usize] * Rat::from_integer(crate::rat::factorial(k))).to_integer();
    assert_eq!(direct, series, "the two vanishing-sum routes must agree");
    direct
}

/// Predicted staircase of the k-th shifted witness polynomial: the minimal
/// points of `{alpha : sum_i i*alpha_i >= m+k}`, with axis intercepts
/// `ceil((m+k)/i)`.
pub fn witness_diagram_prediction(n: usize, m: u64, k: u64) -> Staircase {
    assert!((1..=n as u64).contains(&k));
    let target = m + k;
    let bounds: Vec<u64> = (1..=n as u64).map(|i| target.div_ceil(i)).collect();
    let weighted = |alpha: &[u64]| -> u64 {
        alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a)
            .sum()
    };
    let mut minimal = Vec::new();
    let mut cur = vec![0u64; n];
    fn scan(bounds: &[u64], cur: &mut Vec<u64>, pos: usize, visit: &mut impl FnMut(&[u64])) {
        if pos == bounds.len() {
            visit(cur);
            return;
        }
        for v in 0..=bounds[pos] {
            cur[pos] = v;
            scan(bounds, cur, pos + 1, visit);
        }
        cur[pos] = 0;
    }
    scan(&bounds, &mut cur, 0, &mut |alpha| {
        let w = weighted(alpha);
        if w < target {
            return;
        }
        let minimal_here = alpha
            .iter()
            .enumerate()
            .all(|(i, &a)| a == 0 || w - (i as u64 + 1) < target);
        if minimal_here {
            minimal.push(alpha.to_vec());
        }
    });
    minimal.sort();
    Staircase {
        dim: n,
        minimal_points: minimal,
        axis_intercepts: bounds.iter().map(|&b| Some(b)).collect(),
    }
}

/// Every multiplicity bound the theory provides for one system, each either
/// evaluated or absent with its failed precondition implied.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// min(prod s_k, prod t_l)
    pub kouchnirenko: Option<Int>,
    /// mixed covolume of the Gamma simplices
    pub gamma_covolume: Option<Rat>,
    /// (n+m)^n
    pub coarse: Int,
    /// (m+1)^n, when C contains an invertible diagonal n x n submatrix
    pub diag: Option<Int>,
    /// prod of per-coordinate exponent ranges
    pub box_bound: Option<Int>,
    /// (m+1)(m+2), when n = 2
    pub planar: Option<Int>,
    /// dual-side min(prod s*, prod t*)
    pub dual_kouchnirenko: Option<Int>,
    /// mixed covolume of the dual Gamma* simplices
    pub dual_gamma_covolume: Option<Rat>,
    /// (n+m)^m
    pub dual_coarse: Int,
    /// (n+1)^m, when B contains an invertible diagonal m x m submatrix
    pub dual_diag: Option<Int>,
    /// (n+1)(n+2), when m = 2
    pub dual_planar: Option<Int>,
    /// C(n+m, n), the conjectured sharp value
    pub conjectured: Int,
    /// 2^C(N,2) (n+1)^N, reported for comparison only
    pub gabrielov: Int,
}

/// True when the matrix contains an invertible diagonal submatrix: an
/// injective choice of one column per row, nonzero there and zero in every
/// other row.
fn has_invertible_diagonal_submatrix(m: &RatMatrix) -> bool {
    let rows = m.rows();
    let candidates: Vec<Vec<usize>> = (0..rows)
        .map(|k| {
            (0..m.cols())
                .filter(|&j| {
                    !m.at(k, j).is_zero()
                        && (0..rows).all(|i| i == k || m.at(i, j).is_zero())
                })
                .collect()
        })
        .collect();
    fn assign(candidates: &[Vec<usize>], used: &mut Vec<usize>, row: usize) -> bool {
        if row == candidates.len() {
            return true;
        }
        for &j in &candidates[row] {
            if !used.contains(&j) {
                used.push(j);
                if assign(candidates, used, row + 1) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    assign(&candidates, &mut Vec::new(), 0)
}

pub fn bounds_report(system: &SparseSystem, gd: &GaleData) -> Result<BoundsReport> {
    let n = system.config.dim();
    let m = system.config.codim();
    let nn = system.config.cardinality();
    let exps: Vec<Vec<Rat>> = system
        .config
        .points()
        .iter()
        .map(|p| p.iter().map(|&v| rat(v)).collect())
        .collect();
    let stats = sparsity_stats(&system.coeffs, &exps)?;
    let kouchnirenko = stats.kouchnirenko_bound();
    let gamma_covolume = if stats.gammas.iter().all(Option::is_some) {
        let gs: Vec<_> = stats.gammas.iter().flatten().cloned().collect();
        Some(mixed_covolume(&gs)?)
    } else {
        None
    };
    let coarse = crate::rat::int_pow(&int((n + m) as i64), n as u64);
    let diag = has_invertible_diagonal_submatrix(&system.coeffs)
        .then(|| crate::rat::int_pow(&int(m as i64 + 1), n as u64));
    let box_bound = {
        let (normalized, _) = system.config.normalize_to_orthant();
        let mut prod = Int::one();
        let mut ok = true;
        for i in 0..n {
            let d = normalized.points().iter().map(|p| p[i]).max().unwrap();
            if d <= 0 {
                ok = false;
                break;
            }
            prod *= int(d);
        }
        ok.then_some(prod)
    };
    let planar = (n == 2).then(|| int(((m + 1) * (m + 2)) as i64));

    let dual_stats = gd.dual_stats()?;
    let dual_kouchnirenko = dual_stats.kouchnirenko_bound();
    let dual_gamma_covolume = if dual_stats.gammas.iter().all(Option::is_some) {
        let gs: Vec<_> = dual_stats.gammas.iter().flatten().cloned().collect();
        Some(mixed_covolume(&gs)?)
    } else {
        None
    };
    let dual_coarse = crate::rat::int_pow(&int((n + m) as i64), m as u64);
    let dual_diag = has_invertible_diagonal_submatrix(&gd.b.to_rat().transpose())
        .then(|| crate::rat::int_pow(&int(n as i64 + 1), m as u64));
    let dual_planar = (m == 2).then(|| int(((n + 1) * (n + 2)) as i64));

    let conjectured = binomial((n + m) as u64, n as u64);
    let gabrielov = crate::rat::int_pow(&int(2), {
        let nn = nn as u64;
        nn * (nn - 1) / 2
    }) * crate::rat::int_pow(&int(n as i64 + 1), nn as u64);

    Ok(BoundsReport {
        kouchnirenko,
        gamma_covolume,
        coarse,
        diag,
        box_bound,
        planar,
        dual_kouchnirenko,
        dual_gamma_covolume,
        dual_coarse,
        dual_diag,
        dual_planar,
        conjectured,
        gabrielov,
    })
}

/// The two hypersurface bounds: `sigma` from the kernel-dimension scan and
/// `b = 1 + ceil(m/n)`, plus an integer bracket around the threshold root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceBounds {
    pub sigma: u64,
    pub b: u64,
    pub mu0_bracket: (u64, u64),
}

/// `sigma` is the largest `k >= 1` with `C(n+k-1, n) <= n+m`, found by an
/// integer scan; `b(n,m) = 1 + ceil(m/n)`.
pub fn hypersurface_bounds(n: u64, m: u64) -> HypersurfaceBounds {
    assert!(n >= 1 && m >= 1);
    let cap = Int::from(n + m);
    let mut sigma = 1;
    let mut exact = binomial(n, n) == cap;
    let mut k = 2;
    loop {
        let c = binomial(n + k - 1, n);
        if c > cap {
            break;
        }
        sigma = k;
        exact = c == cap;
        k += 1;
    }
    let b = 1 + m.div_ceil(n);
    let mu0_bracket = if exact { (sigma, sigma) } else { (sigma, sigma + 1) };
    HypersurfaceBounds {
        sigma,
        b,
        mu0_bracket,
    }
}

/// Result of the maximal-hypersurface-multiplicity scan.
#[derive(Clone, Debug)]
pub struct MaxHypersurfaceMult {
    pub mu: u64,
    /// A coefficient vector achieving multiplicity `mu` at the all-ones
    /// point, validated against the derivative-based oracle.
    pub witness: Vec<Rat>,
    /// Whether `A^{(mu-1)}` has full row rank (the sigma-bound hypothesis).
    pub sigma_hypothesis: bool,
}

/// The largest multiplicity at the all-ones point over all nonzero
/// polynomials with the given support: the first `k` at which the kernel of
/// the derivative matrix collapses to zero.
pub fn max_hypersurface_mult(config: &SupportConfig) -> Result<MaxHypersurfaceMult> {
    let nn = config.cardinality();
    let mut k = 1u64;
    loop {
        let rank = config.higher_matrix(k).to_rat().rank();
        if rank == nn {
            break;
        }
        k += 1;
        if k > 4 * nn as u64 {
            return Err(Error::ValidationError(
                "derivative matrix rank failed to reach full".into(),
            ));
        }
    }
    let mu = k;
    let lower = config.higher_matrix(mu - 1).to_rat();
    let sigma_hypothesis = lower.rank() == lower.rows();
    let kernel = lower.rational_kernel_basis();
    debug_assert!(kernel.cols() > 0);
    let witness: Vec<Rat> = (0..nn).map(|r| kernel.at(r, 0).clone()).collect();
    let validated = oracle::hypersurface_multiplicity(
        config,
        &witness,
        &vec![Rat::one(); config.dim()],
    )?;
    if validated != mu {
        return Err(Error::ValidationError(format!(
            "witness vector realizes multiplicity {validated}, scan said {mu}"
        )));
    }
    Ok(MaxHypersurfaceMult {
        mu,
        witness,
        sigma_hypothesis,
    })
}

/// Points `gamma(d_j) = (d_j, d_j^2, ..., d_j^n)` on the moment curve.
pub fn cyclic_config(d_values: &[Rat], n: usize) -> Result<Vec<Vec<Rat>>> {
    for (i, a) in d_values.iter().enumerate() {
        for b in &d_values[i + 1..] {
            if a == b {
                return Err(Error::DuplicateValue(crate::rat::format_rat(a)));
            }
        }
    }
    Ok(d_values
        .iter()
        .map(|d| (1..=n as u64).map(|i| crate::rat::rat_pow(d, i)).collect())
        .collect())
}

/// Lattice version of [`cyclic_config`] for integer parameters.
pub fn cyclic_config_lattice(d_values: &[i64], n: usize) -> Result<SupportConfig> {
    let rats: Vec<Rat> = d_values.iter().map(|&v| rat(v)).collect();
    let points = cyclic_config(&rats, n)?;
    SupportConfig::new(
        points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|v| crate::rat::to_i64(v.numer()).expect("lattice point fits i64"))
                    .collect()
            })
            .collect(),
    )
}

/// The sharp codimension-one construction: the cyclic configuration on
/// `n+2` integer parameters with `C` the transpose of a Gale dual of the
/// parameter matrix. The oracle confirms multiplicity `n+1` at the all-ones
/// point.
pub fn max_mult_circuit_system(d_values: &[i64]) -> Result<(SparseSystem, u64)> {
    if d_values.len() < 3 {
        return Err(Error::InvalidInput(
            "a circuit needs at least three parameters".into(),
        ));
    }
    let n = d_values.len() - 2;
    let shifted: Vec<i64> = d_values.iter().map(|&v| v - d_values[0]).collect();
    let config = cyclic_config_lattice(&shifted, n)?;
    let v = IntMatrix::from_rows(vec![
        vec![Int::one(); n + 2],
        shifted.iter().map(|&v| int(v)).collect(),
    ]);
    let c = v.lattice_kernel_basis().transpose().to_rat();
    let system = SparseSystem::new(config, c)?;
    match multiplicity_at_one(&system, None)? {
        Multiplicity::Finite(mu) => Ok((system, mu)),
        Multiplicity::Infinite => Err(Error::ValidationError(
            "circuit construction did not certify an isolated root".into(),
        )),
    }
}

/// Checks the cyclic-configuration certificate: with `lambda` the
/// one-column Gale dual of the configuration, the supplied distinct values
/// must satisfy `sum_j lambda_j d_j^i = 0` for `i = 1..n`.
pub fn verify_cyclic(config: &SupportConfig, d_values: &[Rat]) -> Result<bool> {
    let m = config.codim();
    if m != 1 {
        return Err(Error::CodimNotOne(m));
    }
    if d_values.len() != config.cardinality() {
        return Err(Error::DimensionMismatch(
            "one parameter per support point is required".into(),
        ));
    }
    for (i, a) in d_values.iter().enumerate() {
        for b in &d_values[i + 1..] {
            if a == b {
                return Err(Error::DuplicateValue(crate::rat::format_rat(a)));
            }
        }
    }
    let lambda = config.matrix_a().lattice_kernel_basis();
    debug_assert_eq!(lambda.cols(), 1);
    let n = config.dim();
    for i in 1..=n as u64 {
        let mut acc = Rat::zero();
        for (j, d) in d_values.iter().enumerate() {
            acc += Rat::from_integer(lambda.at(j, 0).clone()) * crate::rat::rat_pow(d, i);
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches the integer kernel lattices of the staircase constraint
/// matrices for integer coefficient vectors preserving every staircase and
/// the nondegeneracy certificate. The search is bounded; exhaustion is
/// reported as `NotFound`.
pub fn integerize_coefficients(system: &SparseSystem, seed: u64) -> Result<SparseSystem> {
    let shifted = shift_system(system)?;
    let report = nondegeneracy_check(&shifted)?;
    if report.overall != FaceStatus::NonDegenerate {
        return Err(Error::ValidationError(
            "integerization requires a certified nondegenerate system".into(),
        ));
    }
    if system.coeffs.to_int().is_some() {
        return Ok(system.clone());
    }
    let (config, _) = system.config.normalize_to_orthant();
    let n = config.dim();
    let targets: Vec<Staircase> = (0..n)
        .map(|k| {
            staircase_lenient(
                &VanishingSumEvaluator::for_system_row(&system.coeffs, &config, k),
                None,
            )
        })
        .collect();
    // constraint matrix per row: the shifted coefficient functionals at all
    // points strictly below some diagram lattice point
    let mut rng = StdRng::seed_from_u64(seed);
    let mut chosen: Vec<Vec<Rat>> = Vec::new();
    for k in 0..n {
        let diagram_points = targets[k].lattice_points_on_diagram();
        let mut alphas: Vec<Vec<u64>> = Vec::new();
        for gamma in &diagram_points {
            let mut cur = vec![0u64; n];
            fn below(
                gamma: &[u64],
                cur: &mut Vec<u64>,
                pos: usize,
                out: &mut Vec<Vec<u64>>,
            ) {
                if pos == gamma.len() {
                    if cur.iter().zip(gamma).any(|(a, b)| a < b) {
                        out.push(cur.clone());
                    }
                    return;
                }
                for v in 0..=gamma[pos] {
                    cur[pos] = v;
                    below(gamma, cur, pos + 1, out);
                }
                cur[pos] = 0;
            }
            below(gamma, &mut cur, 0, &mut alphas);
        }
        alphas.sort();
        alphas.dedup();
        let rows: Vec<Vec<Int>> = alphas
            .iter()
            .map(|alpha| {
                config
                    .points()
                    .iter()
                    .map(|p| {
                        let mut b = Int::one();
                        for (&a, &e) in p.iter().zip(alpha) {
                            b *= binomial(a as u64, e);
                            if b.is_zero() {
                                break;
                            }
                        }
                        b
                    })
                    .collect()
            })
            .collect();
        let lattice = IntMatrix::from_rows(rows).lattice_kernel_basis();
        if lattice.cols() == 0 {
            return Err(Error::NotFound(format!(
                "row {k} admits no integer kernel vector"
            )));
        }
        let mut found = None;
        'search: for _ in 0..2000 {
            let w: Vec<i64> = (0..lattice.cols())
                .map(|_| rng.gen_range(-6..=6))
                .collect();
            let cand: Vec<Rat> = (0..config.cardinality())
                .map(|r| {
                    let mut acc = Int::zero();
                    for (c, &wc) in w.iter().enumerate() {
                        acc += lattice.at(r, c) * int(wc);
                    }
                    Rat::from_integer(acc)
                })
                .collect();
            if cand.iter().all(Rat::is_zero) {
                continue;
            }
            if cand.iter().any(|v| v.numer().abs() > int(10_000)) {
                continue;
            }
            let ev = VanishingSumEvaluator::new(
                cand.clone(),
                config
                    .points()
                    .iter()
                    .map(|p| p.iter().map(|&v| rat(v)).collect())
                    .collect(),
            )?;
            let st = staircase_lenient(&ev, None);
            if st == targets[k] {
                found = Some(cand);
                break 'search;
            }
        }
        match found {
            Some(c) => chosen.push(c),
            None => {
                return Err(Error::NotFound(format!(
                    "no integer vector preserving the staircase of row {k} within budget"
                )))
            }
        }
    }
    let coeffs = RatMatrix::from_rows(chosen);
    if coeffs.rank() < n {
        return Err(Error::NotFound(
            "integer candidate matrix lost full rank".into(),
        ));
    }
    let candidate = SparseSystem::new(config, coeffs)?;
    let shifted = shift_system(&candidate)?;
    let report = nondegeneracy_check(&shifted)?;
    if report.overall != FaceStatus::NonDegenerate {
        return Err(Error::NotFound(
            "integer candidate lost the nondegeneracy certificate".into(),
        ));
    }
    Ok(candidate)
}

/// The sigma/b comparison rows for planar configurations, `m = 1..=rows`.
pub fn planar_bounds_table(rows: u64) -> Vec<(u64, u64, u64)> {
    (1..=rows)
        .map(|m| {
            let hb = hypersurface_bounds(2, m);
            (m, hb.sigma, hb.b)
        })
        .collect()
}
