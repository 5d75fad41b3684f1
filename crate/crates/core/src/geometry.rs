//! Convex-geometry primitives on `n` points in `R^n`: simplex width,
//! separating hyperplanes inside the efficiency hyperplane `x(N) = mu(N)`,
//! box clearances and barycentric membership.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Numerical tolerances shared by the geometry routines.
pub mod tol {
    /// Singular values at or below this count as zero.
    pub const RANK: f64 = 1e-10;
    /// Slack on barycentric weights and affine residuals.
    pub const MEMBERSHIP: f64 = 1e-9;
    /// Allowed deviation of a hyperplane normal from unit length.
    pub const UNIT_NORM: f64 = 1e-12;
}

/// `{x : ⟨v, x⟩ = c}` with `‖v‖₂ = 1` and `⟨v, 1⟩ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub v: Vec<f64>,
    pub c: f64,
}

impl Hyperplane {
    pub fn level(&self, x: &[f64]) -> f64 {
        dot(&self.v, x)
    }

    pub fn normal_l1(&self) -> f64 {
        self.v.iter().map(|a| a.abs()).sum()
    }
}

/// `{x ∈ H_N : ‖x − center‖_∞ ≤ radius}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceBox {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl ConfidenceBox {
    pub fn new(center: Vec<f64>, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }

    /// Euclidean diameter of the full L∞ ball, `2 r √n`; an upper bound on
    /// the diameter of its slice by `H_N`.
    pub fn diameter(&self) -> f64 {
        2.0 * self.radius * (self.center.len() as f64).sqrt()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.center
            .iter()
            .zip(x)
            .all(|(c, v)| (c - v).abs() <= self.radius)
    }
}

/// Columns `x^j − x^i` for `j ≠ i`, in the original order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMatrix {
    pub columns: Vec<Vec<f64>>,
}

impl CoordinateMatrix {
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let rows = self.columns.first().map_or(0, Vec::len);
        DMatrix::from_fn(rows, self.columns.len(), |r, c| self.columns[c][r])
    }

    /// Smallest of the `min(rows, cols)` singular values.
    pub fn smallest_singular_value(&self) -> f64 {
        self.to_matrix()
            .singular_values()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::Dimension("no points".into()));
    };
    let dim = first.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Dimension("points of differing length".into()));
    }
    Ok(dim)
}

pub fn coordinate_matrix(points: &[Vec<f64>], reference: usize) -> Result<CoordinateMatrix> {
    check_points(points)?;
    if points.len() < 2 {
        return Err(Error::Dimension("need at least two points".into()));
    }
    if reference >= points.len() {
        return Err(Error::Dimension(format!(
            "reference {reference} out of range for {} points",
            points.len()
        )));
    }
    let base = &points[reference];
    let columns = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != reference)
        .map(|(_, x)| x.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    Ok(CoordinateMatrix { columns })
}

/// `min_i σ_{k−1}(coM(P, i))` over the `k` points; zero iff the points are
/// affinely dependent.
pub fn simplex_width(points: &[Vec<f64>]) -> f64 {
    (0..points.len())
        .map(|i| {
            coordinate_matrix(points, i)
                .expect("valid point set")
                .smallest_singular_value()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Hyperplane parallel to the affine hull of `Q ∖ x^p` (and lying inside
/// `H_N`), shifted by `eps` toward `x^p`:
/// `⟨v, x^q⟩ = c + eps` for `q ≠ p` and `⟨v, x^p⟩ < c + eps`.
///
/// `v` spans the null space of the rows `x^q − x^{q0}` (`q ≠ p, q0`) and
/// `1ᵀ`, taken from a full SVD. Returns `None` when that null space is not
/// one dimensional or `x^p` sits on the common level.
pub fn fit_separating_hyperplane(q: &[Vec<f64>], p: usize, eps: f64) -> Option<Hyperplane> {
    let n = q.len();
    if n < 2 || p >= n || q.iter().any(|x| x.len() != n) {
        return None;
    }
    let others: Vec<&Vec<f64>> = q
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != p)
        .map(|(_, x)| x)
        .collect();
    let anchor = others[0];
    // (n−1) constraint rows padded with a zero row so the SVD returns all of V
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (r, x) in others[1..].iter().enumerate() {
        for c in 0..n {
            a[(r, c)] = x[c] - anchor[c];
        }
    }
    for c in 0..n {
        a[(n - 2, c)] = 1.0;
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.as_ref()?;
    let sigma = &svd.singular_values;
    let null_dim = sigma.iter().filter(|&&s| s <= tol::RANK).count();
    if null_dim != 1 {
        return None;
    }
    let (idx, _) = sigma
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    let mut v: Vec<f64> = v_t.row(idx).iter().copied().collect();
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|a| *a /= norm);

    let level = others.iter().map(|x| dot(&v, x)).sum::<f64>() / others.len() as f64;
    let gap = level - dot(&v, &q[p]);
    if gap.abs() <= tol::RANK {
        return None;
    }
    let (v, level) = if gap < 0.0 {
        (v.into_iter().map(|a| -a).collect(), -level)
    } else {
        (v, level)
    };
    Some(Hyperplane { v, c: level - eps })
}

/// `c − ⟨v, center⟩ − radius·‖v‖₁`: the minimum of `c − ⟨v, x⟩` over the
/// L∞ ball, hence a lower bound over its slice by `H_N`. Positive means the
/// whole box lies strictly on the `⟨v, x⟩ < c` side.
pub fn box_hyperplane_clearance(h: &Hyperplane, b: &ConfidenceBox) -> f64 {
    h.c - h.level(&b.center) - b.radius * h.normal_l1()
}

pub fn mean_point(q: &[Vec<f64>]) -> Vec<f64> {
    let Some(first) = q.first() else {
        return Vec::new();
    };
    let mut out = vec![0.0; first.len()];
    for x in q {
        for (o, v) in out.iter_mut().zip(x) {
            *o += v;
        }
    }
    let k = q.len() as f64;
    out.iter_mut().for_each(|o| *o /= k);
    out
}

/// Affine weights `λ` with `Σ λ_j x^j = x`, `Σ λ_j = 1`, or `None` when `x`
/// is off the affine hull of the vertices.
pub fn barycentric(x: &[f64], vertices: &[Vec<f64>]) -> Result<Option<Vec<f64>>> {
    let dim = check_points(vertices)?;
    if x.len() != dim {
        return Err(Error::Dimension("query point length".into()));
    }
    let width = simplex_width(vertices);
    if width.is_nan() || width <= tol::RANK {
        return Err(Error::DegenerateSimplex { width });
    }
    let k = vertices.len();
    let m = DMatrix::from_fn(dim + 1, k, |r, c| if r < dim { vertices[c][r] } else { 1.0 });
    let rhs = DVector::from_fn(dim + 1, |r, _| if r < dim { x[r] } else { 1.0 });
    let svd = m.clone().svd(true, true);
    let lambda = svd
        .solve(&rhs, tol::RANK)
        .map_err(|e| Error::Dimension(e.to_string()))?;
    let residual = (&m * &lambda - &rhs).norm();
    if residual > tol::MEMBERSHIP * (1.0 + rhs.norm()) {
        return Ok(None);
    }
    Ok(Some(lambda.iter().copied().collect()))
}

/// Whether `x` lies in the simplex spanned by `vertices` (all barycentric
/// weights ≥ −1e-9). Affinely dependent vertices are an error.
pub fn in_simplex(x: &[f64], vertices: &[Vec<f64>]) -> Result<bool> {
    Ok(barycentric(x, vertices)?
        .is_some_and(|w| w.iter().all(|&l| l >= -tol::MEMBERSHIP)))
}

/// Distance from each vertex to the affine hull of the others, by
/// Gram–Schmidt on the edge vectors.
pub fn altitudes(points: &[Vec<f64>]) -> Vec<f64> {
    let k = points.len();
    (0..k)
        .map(|i| {
            let anchor = if i == 0 { 1 } else { 0 };
            let mut basis: Vec<Vec<f64>> = Vec::new();
            for j in (0..k).filter(|&j| j != i && j != anchor) {
                let d = diff(&points[j], &points[anchor]);
                if let Some(u) = orthonormalize(d, &basis) {
                    basis.push(u);
                }
            }
            let r = residual(diff(&points[i], &points[anchor]), &basis);
            dot(&r, &r).sqrt()
        })
        .collect()
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn residual(mut w: Vec<f64>, basis: &[Vec<f64>]) -> Vec<f64> {
    // two passes of modified Gram–Schmidt
    for _ in 0..2 {
        for u in basis {
            let c = dot(&w, u);
            w.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
    }
    w
}

fn orthonormalize(w: Vec<f64>, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    let scale = dot(&w, &w).sqrt();
    let mut r = residual(w, basis);
    let norm = dot(&r, &r).sqrt();
    if norm <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    r.iter_mut().for_each(|a| *a /= norm);
    Some(r)
}

/// Cheap route to the normal of `H_p(Q)`: the component of `x^q − x^p`
/// orthogonal to `span{1, x^{q'} − x^q}` points along `v` and has length
/// `⟨v, x^q − x^p⟩`. Reuses its buffers across calls.
#[derive(Debug, Default, Clone)]
pub struct NormalScreen {
    basis: Vec<f64>,
    work: Vec<f64>,
}

/// Output of [`NormalScreen::separation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    /// `⟨v, x^q⟩ − ⟨v, x^p⟩` for any `q ≠ p`.
    pub gap: f64,
    /// `‖v‖₁`.
    pub normal_l1: f64,
}

impl NormalScreen {
    pub fn new() -> Self {
        Self::default()
    }

    /// `None` when the other points are (numerically) affinely dependent
    /// together with `1`, or `x^p` is on their hull.
    pub fn separation(&mut self, q: &[Vec<f64>], p: usize) -> Option<Separation> {
        let n = q.len();
        let anchor = if p == 0 { 1 } else { 0 };
        self.basis.clear();
        self.basis.resize(n * n, 0.0);
        self.work.resize(n, 0.0);
        let inv = 1.0 / (n as f64).sqrt();
        self.basis[..n].iter_mut().for_each(|a| *a = inv);
        let mut rank = 1;
        for j in (0..n).filter(|&j| j != p && j != anchor) {
            for ((w, a), b) in self.work.iter_mut().zip(&q[j]).zip(&q[anchor]) {
                *w = a - b;
            }
            let scale = norm(&self.work);
            self.project_out(rank);
            let len = norm(&self.work);
            if len <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
                return None;
            }
            for c in 0..n {
                self.basis[rank * n + c] = self.work[c] / len;
            }
            rank += 1;
        }
        for ((w, a), b) in self.work.iter_mut().zip(&q[anchor]).zip(&q[p]) {
            *w = a - b;
        }
        self.project_out(rank);
        let gap = norm(&self.work);
        if gap <= tol::RANK {
            return None;
        }
        let normal_l1 = self.work.iter().map(|a| a.abs()).sum::<f64>() / gap;
        Some(Separation { gap, normal_l1 })
    }

    fn project_out(&mut self, rank: usize) {
        let n = self.work.len();
        for _ in 0..2 {
            for k in 0..rank {
                let u = &self.basis[k * n..(k + 1) * n];
                let c = dot(&self.work, u);
                for (w, b) in self.work.iter_mut().zip(u) {
                    *w -= c * b;
                }
            }
        }
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
