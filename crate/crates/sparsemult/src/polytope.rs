//! Exact convex geometry in low dimension: facets of `conv(P) + R_{>=0}^n`,
//! vertex enumeration of clipped regions, and volumes by pulling
//! triangulation. Everything is brute force over subsets, which is the right
//! trade at desk scale (n <= 4, a few dozen halfspaces).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::{gcd, Int, Rat};

/// One supporting halfspace `<normal, x> >= rhs` of an orthant hull.
/// `on` lists the indices of the generator points lying on the hyperplane.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub rhs: Rat,
    pub on: Vec<usize>,
}

impl Facet {
    pub fn is_positive(&self) -> bool {
        self.normal.iter().all(|v| v.is_positive())
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (n, xi) in self.normal.iter().zip(x) {
            acc += Rat::from_integer(n.clone()) * xi;
        }
        acc
    }
}

/// The polyhedron `conv(points) + R_{>=0}^n` in H-representation.
#[derive(Clone, Debug)]
pub struct OrthantHull {
    pub dim: usize,
    /// Generator points surviving dominance pruning.
    pub points: Vec<Vec<Rat>>,
    pub facets: Vec<Facet>,
}

/// A face of the Newton diagram: a bounded face of the orthant hull,
/// carried by the generator points on it, with a strictly positive vector
/// in the relative interior of its normal cone.
#[derive(Clone, Debug)]
pub struct DiagramFace {
    pub point_idxs: Vec<usize>,
    pub rep_normal: Vec<Int>,
    pub dim: usize,
}

/// Removes duplicates and points dominated by another point. Dominated
/// generators are absorbed by the orthant recession cone, so the hull is
/// unchanged.
pub fn prune_dominated(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut unique: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        if !unique.contains(p) {
            unique.push(p.clone());
        }
    }
    unique
        .iter()
        .filter(|p| {
            !unique
                .iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect()
}

/// Facet enumeration for `conv(points) + R_{>=0}^n`.
///
/// Every facet's affine hull is spanned by generator points on it plus axis
/// recession directions, so scanning all (point-subset, axis-subset) pairs of
/// total affine dimension n-1 finds every facet.
pub fn orthant_hull(dim: usize, points: &[Vec<Rat>]) -> OrthantHull {
    assert!(!points.is_empty(), "hull of an empty point set");
    let points = prune_dominated(points);
    let mut facets: Vec<Facet> = Vec::new();
    let np = points.len();

    let mut point_subset = Vec::new();
    for k in 1..=dim.min(np) {
        let axis_count = dim - k;
        enumerate_subsets(np, k, &mut point_subset, &mut |ps: &[usize]| {
            let mut axes = Vec::new();
            enumerate_subsets(dim, axis_count, &mut axes, &mut |ax: &[usize]| {
                if let Some(facet) = try_facet(dim, &points, ps, ax) {
                    if !facets
                        .iter()
                        .any(|f| f.normal == facet.normal && f.rhs == facet.rhs)
                    {
                        facets.push(facet);
                    }
                }
                true
            });
            true
        });
    }
    facets.sort_by(|a, b| (&a.normal, &a.rhs).partial_cmp(&(&b.normal, &b.rhs)).unwrap());
    OrthantHull { dim, points, facets }
}

fn try_facet(dim: usize, points: &[Vec<Rat>], ps: &[usize], axes: &[usize]) -> Option<Facet> {
    // normal is orthogonal to the span of point differences and axis rays
    let base = &points[ps[0]];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &i in &ps[1..] {
        rows.push(
            points[i]
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect(),
        );
    }
    for &j in axes {
        let mut e = vec![Rat::zero(); dim];
        e[j] = Rat::one();
        rows.push(e);
    }
    let kernel = if rows.is_empty() {
        RatMatrix::identity(dim)
    } else {
        RatMatrix::from_rows(rows).rational_kernel_basis()
    };
    if kernel.cols() != 1 {
        return None;
    }
    let mut normal: Vec<Int> = {
        let col = kernel.col(0);
        let mut scale = Int::one();
        for v in &col {
            scale = crate::rat::lcm(&scale, v.denom());
        }
        col.iter()
            .map(|v| (v * Rat::from_integer(scale.clone())).to_integer())
            .collect()
    };
    let mut g = Int::zero();
    for v in &normal {
        g = gcd(&g, v);
    }
    if g.is_zero() {
        return None;
    }
    for v in &mut normal {
        *v = &*v / &g;
    }
    let dot = |n: &[Int], x: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for (a, b) in n.iter().zip(x) {
            acc += Rat::from_integer(a.clone()) * b;
        }
        acc
    };
    // orient: recession validity needs normal >= 0, points on the >= side
    for flip in [false, true] {
        if flip {
            for v in &mut normal {
                *v = -v.clone();
            }
        }
        if normal.iter().any(Signed::is_negative) {
            continue;
        }
        let rhs = dot(&normal, base);
        if points.iter().all(|p| dot(&normal, p) >= rhs) {
            let on = points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(&normal, p) == rhs)
                .map(|(i, _)| i)
                .collect();
            return Some(Facet { normal, rhs, on });
        }
    }
    None
}

impl OrthantHull {
    pub fn contains(&self, x: &[Rat]) -> bool {
        x.iter().all(|v| !v.is_negative()) && self.facets.iter().all(|f| f.eval(x) >= f.rhs)
    }

    /// True when `x` lies on a bounded face of the hull boundary.
    pub fn on_diagram(&self, x: &[Rat]) -> bool {
        self.contains(x)
            && self
                .facets
                .iter()
                .any(|f| f.is_positive() && f.eval(x) == f.rhs)
    }

    /// All bounded faces (those whose normal cone meets the open positive
    /// orthant), from facet point-set intersection closure. The
    /// representative normal is the sum of the normals of every facet
    /// containing the face, which lies in the relative interior of the
    /// face's normal cone.
    pub fn diagram_faces(&self) -> Vec<DiagramFace> {
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let push = |s: Vec<usize>, sets: &mut Vec<Vec<usize>>| {
            if !s.is_empty() && !sets.contains(&s) {
                sets.push(s);
            }
        };
        for f in &self.facets {
            let mut s = f.on.clone();
            s.sort_unstable();
            push(s, &mut sets);
        }
        loop {
            let mut grew = false;
            let snapshot = sets.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let inter: Vec<usize> =
                        a.iter().filter(|i| b.contains(i)).copied().collect();
                    if !inter.is_empty() && !sets.contains(&inter) {
                        sets.push(inter);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out = Vec::new();
        for s in sets {
            let mut rep = vec![Int::zero(); self.dim];
            for f in &self.facets {
                if s.iter().all(|i| f.on.contains(i)) {
                    for (r, v) in rep.iter_mut().zip(&f.normal) {
                        *r += v;
                    }
                }
            }
            if rep.iter().all(|v| v.is_positive()) {
                let dim = affine_rank(&s.iter().map(|&i| self.points[i].clone()).collect::<Vec<_>>());
                out.push(DiagramFace {
                    point_idxs: s,
                    rep_normal: rep,
                    dim,
                });
            }
        }
        out.sort_by(|a, b| a.point_idxs.cmp(&b.point_idxs));
        out
    }
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(rows).rank()
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) {
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        buf: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if buf.len() == k {
            return visit(buf);
        }
        for i in start..n {
            buf.push(i);
            if !rec(n, k, i + 1, buf, visit) {
                buf.pop();
                return false;
            }
            buf.pop();
        }
        true
    }
    buf.clear();
    rec(n, k, 0, buf, visit);
}

/// Euclidean volume of `B = R_{>=0}^n \ (conv(points) + R_{>=0}^n)`.
/// The points must all be in the nonnegative orthant and touch every axis
/// (otherwise B is unbounded and `NotConvenient` is returned).
pub fn region_b_volume(dim: usize, points: &[Vec<Rat>]) -> Result<Rat> {
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch(
                "polytope vertex of wrong dimension".into(),
            ));
        }
        if p.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(
                "polytope vertices must be in the nonnegative orthant".into(),
            ));
        }
    }
    for axis in 0..dim {
        let touches = points
            .iter()
            .any(|p| p.iter().enumerate().all(|(i, v)| i == axis || v.is_zero()));
        if !touches {
            return Err(Error::NotConvenient(axis + 1));
        }
    }
    let m = points
        .iter()
        .flat_map(|p| p.iter())
        .max()
        .cloned()
        .unwrap_or_else(Rat::zero);
    if m.is_zero() {
        return Ok(Rat::zero());
    }
    let hull = orthant_hull(dim, points);
    let clipped = clipped_volume(&hull, &m);
    Ok(crate::rat::rat_pow(&m, dim as u64) - clipped)
}

/// Volume of `(conv(points) + R_{>=0}^n) ∩ [0, M]^n` by vertex enumeration
/// over hyperplane subsets and pulling triangulation from the
/// lexicographically smallest vertex.
fn clipped_volume(hull: &OrthantHull, m: &Rat) -> Rat {
    let dim = hull.dim;
    // assemble constraints: hull facets, x_j >= 0, x_j <= M
    // each as (normal over Int, rhs, sense) normalized to <n,x> >= rhs
    let mut constraints: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for f in &hull.facets {
        constraints.push((
            f.normal
                .iter()
                .map(|v| Rat::from_integer(v.clone()))
                .collect(),
            f.rhs.clone(),
        ));
    }
    for j in 0..dim {
        let mut lo = vec![Rat::zero(); dim];
        lo[j] = Rat::one();
        constraints.push((lo, Rat::zero()));
        let mut hi = vec![Rat::zero(); dim];
        hi[j] = -Rat::one();
        constraints.push((hi, -m.clone()));
    }
    // the box may repeat hull facets; duplicates must not be double counted
    let mut seen: Vec<(Vec<Rat>, Rat)> = Vec::new();
    constraints.retain(|c| {
        if seen.contains(c) {
            false
        } else {
            seen.push(c.clone());
            true
        }
    });
    if dim == 1 {
        // interval [max(rhs over facets), M]
        let lo = hull
            .facets
            .iter()
            .map(|f| f.rhs.clone())
            .fold(Rat::zero(), |a, b| if b > a { b } else { a });
        return if &lo >= m { Rat::zero() } else { m - lo };
    }

    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut subset = Vec::new();
    enumerate_subsets(constraints.len(), dim, &mut subset, &mut |idx: &[usize]| {
        let a = RatMatrix::from_rows(idx.iter().map(|&i| constraints[i].0.clone()).collect());
        if let Some(x) = solve_square(&a, &idx.iter().map(|&i| constraints[i].1.clone()).collect::<Vec<_>>()) {
            let feasible = constraints.iter().all(|(n, rhs)| {
                let mut acc = Rat::zero();
                for (a, b) in n.iter().zip(&x) {
                    acc += a * b;
                }
                acc >= *rhs
            });
            if feasible && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
        true
    });
    if vertices.len() <= dim {
        return Rat::zero();
    }
    let apex = vertices
        .iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
        .unwrap()
        .clone();

    let mut volume = Rat::zero();
    for (n, rhs) in &constraints {
        let on: Vec<&Vec<Rat>> = vertices
            .iter()
            .filter(|v| {
                let mut acc = Rat::zero();
                for (a, b) in n.iter().zip(v.iter()) {
                    acc += a * b;
                }
                acc == *rhs
            })
            .collect();
        if on.len() < dim {
            continue;
        }
        {
            let mut acc = Rat::zero();
            for (a, b) in n.iter().zip(&apex) {
                acc += a * b;
            }
            if acc == *rhs {
                continue; // facet contains the apex: flat pyramid
            }
        }
        let owned: Vec<Vec<Rat>> = on.iter().map(|v| (*v).clone()).collect();
        if affine_rank(&owned) != dim - 1 {
            continue; // not a genuine facet of the clipped body
        }
        for tri in triangulate_facet(&owned, n) {
            volume += simplex_volume(&apex, &tri);
        }
    }
    volume
}

/// Splits a (dim-1)-facet, given by its extreme vertices, into simplices.
fn triangulate_facet(vertices: &[Vec<Rat>], normal: &[Rat]) -> Vec<Vec<Vec<Rat>>> {
    let dim = normal.len();
    match dim {
        2 => {
            // a segment: its two lexicographic extremes
            let lo = vertices.iter().min_by(|a, b| a.partial_cmp(b).unwrap()).unwrap();
            let hi = vertices.iter().max_by(|a, b| a.partial_cmp(b).unwrap()).unwrap();
            vec![vec![lo.clone(), hi.clone()]]
        }
        3 => {
            // a convex polygon in a plane: sort angularly, fan from entry 0
            let drop = normal
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .unwrap()
                .0;
            let project = |p: &Vec<Rat>| -> (Rat, Rat) {
                let kept: Vec<&Rat> = p
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, v)| v)
                    .collect();
                (kept[0].clone(), kept[1].clone())
            };
            let pts2: Vec<(Rat, Rat)> = vertices.iter().map(project).collect();
            let cx = pts2.iter().map(|p| p.0.clone()).sum::<Rat>()
                / Rat::from_integer(Int::from(pts2.len()));
            let cy = pts2.iter().map(|p| p.1.clone()).sum::<Rat>()
                / Rat::from_integer(Int::from(pts2.len()));
            let mut order: Vec<usize> = (0..vertices.len()).collect();
            let half = |dx: &Rat, dy: &Rat| -> u8 {
                if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
                    0
                } else {
                    1
                }
            };
            order.sort_by(|&i, &j| {
                let (dx1, dy1) = (&pts2[i].0 - &cx, &pts2[i].1 - &cy);
                let (dx2, dy2) = (&pts2[j].0 - &cx, &pts2[j].1 - &cy);
                half(&dx1, &dy1).cmp(&half(&dx2, &dy2)).then_with(|| {
                    let cross = &dx1 * &dy2 - &dx2 * &dy1;
                    Rat::zero().partial_cmp(&cross).unwrap()
                })
            });
            let mut tris = Vec::new();
            for w in 1..order.len() - 1 {
                tris.push(vec![
                    vertices[order[0]].clone(),
                    vertices[order[w]].clone(),
                    vertices[order[w + 1]].clone(),
                ]);
            }
            tris
        }
        _ => panic!("volume computation supports dimensions 1..=3"),
    }
}

fn simplex_volume(apex: &[Rat], base: &[Vec<Rat>]) -> Rat {
    let dim = apex.len();
    let rows: Vec<Vec<Rat>> = base
        .iter()
        .map(|v| v.iter().zip(apex).map(|(a, b)| a - b).collect())
        .collect();
    debug_assert_eq!(rows.len(), dim);
    let det = RatMatrix::from_rows(rows).determinant().unwrap();
    det.abs() / Rat::from_integer(crate::rat::factorial(dim as u64))
}

/// Solves `A x = b` for square `A`; `None` when singular.
pub fn solve_square(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.rows();
    assert_eq!(a.cols(), n);
    assert_eq!(b.len(), n);
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let aug = RatMatrix::from_rows(std::mem::take(&mut rows));
    let (rref, pivots) = aug.rref();
    if pivots.len() != n || pivots.iter().any(|&p| p == n) {
        return None;
    }
    Some((0..n).map(|r| rref.at(r, n).clone()).collect())
}
