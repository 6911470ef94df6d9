//! Signless Laplacian index `q(G) = λ₁(D + A)` and its Perron vector.
//!
//! `Q = D + A` is entrywise nonnegative with a positive diagonal on every
//! connected graph of order at least two, so it is primitive and plain power
//! iteration from the all-ones vector converges to the Perron pair. The
//! returned residual `‖Qx − qx‖₂` bounds the distance from `q` to the true
//! index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SEP: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 500_000;
/// Iterations without a new smallest residual before giving up.
pub const STALL_ITERATIONS: usize = 5_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub q: f64,
    /// Unit Perron vector. For a disconnected graph it is supported on one
    /// component attaining the index and zero elsewhere.
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// False when the graph was disconnected and `x` is component-supported.
    pub connected: bool,
}

impl SpectralResult {
    /// Perron vector rescaled so that `x[v] = 1`.
    pub fn scaled_to(&self, v: usize) -> Vec<f64> {
        let s = self.x[v];
        self.x.iter().map(|xi| xi / s).collect()
    }
}

#[inline]
fn apply_q(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, yv) in y.iter_mut().enumerate() {
        let row = g.neighbors(v);
        let mut s = row.len() as f64 * x[v];
        for w in row {
            s += x[w];
        }
        *yv = s;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn q_index(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let comps = g.components();
    if comps.len() == 1 {
        return power_iteration(g, g.vertices(), tol).map(|r| SpectralResult {
            connected: true,
            ..r
        });
    }
    let mut best: Option<SpectralResult> = None;
    for c in comps {
        let r = power_iteration(g, c, tol)?;
        if best.as_ref().is_none_or(|b| r.q > b.q) {
            best = Some(r);
        }
    }
    Ok(SpectralResult {
        connected: false,
        ..best.expect("at least one component")
    })
}

pub fn q_index_default(g: &Graph) -> Result<SpectralResult> {
    q_index(g, DEFAULT_TOL)
}

/// Power iteration restricted to the connected vertex set `support`.
fn power_iteration(g: &Graph, support: VertexSet, tol: f64) -> Result<SpectralResult> {
    let n = g.order();
    let mut x = vec![0.0; n];
    let k = support.len() as f64;
    for v in support {
        x[v] = 1.0 / k.sqrt();
    }
    if support.len() == 1 {
        return Ok(SpectralResult {
            q: 0.0,
            x,
            residual: 0.0,
            iterations: 0,
            connected: true,
        });
    }
    let mut y = vec![0.0; n];
    let mut q = 0.0;
    let mut residual = f64::INFINITY;
    let (mut best, mut best_at) = (f64::INFINITY, 0);
    for it in 1..=MAX_ITERATIONS {
        apply_q(g, &x, &mut y);
        q = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - q * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            return Ok(SpectralResult {
                q,
                x,
                residual,
                iterations: it,
                connected: true,
            });
        }
        if residual < best {
            (best, best_at) = (residual, it);
        } else if it - best_at > STALL_ITERATIONS {
            return Err(Error::Convergence {
                best_q: q,
                residual: best,
                iterations: it,
            });
        }
        let s = norm(&y);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / s;
        }
    }
    Err(Error::Convergence {
        best_q: q,
        residual,
        iterations: MAX_ITERATIONS,
    })
}

/// `d(u)` and `Σ_{v ∈ N(u)} d(v)`; `η(u)` is their combination `d + Σ/d`.
pub fn eta_parts(g: &Graph, u: usize) -> Result<(u64, u64)> {
    let d = g.degree(u) as u64;
    if d == 0 {
        return Err(Error::UndefinedEta(u));
    }
    let s: u64 = g.neighbors(u).iter().map(|v| g.degree(v) as u64).sum();
    Ok((d, s))
}

/// `η(u) = d(u) + (1/d(u)) Σ_{v ∈ N(u)} d(v)`, with one rounding at the end.
pub fn eta(g: &Graph, u: usize) -> Result<f64> {
    let (d, s) = eta_parts(g, u)?;
    Ok((d * d + s) as f64 / d as f64)
}

pub fn eta_max(g: &Graph) -> Result<f64> {
    // compare the exact fractions (d² + s) / d before converting
    let mut best: Option<(u64, u64)> = None;
    for u in 0..g.order() {
        let (d, s) = eta_parts(g, u)?;
        let num = d * d + s;
        if best.is_none_or(|(bn, bd)| num * bd > bn * d) {
            best = Some((num, d));
        }
    }
    let (num, den) = best.expect("graph has a vertex");
    Ok(num as f64 / den as f64)
}

/// `xᵀ(Q(G') − Q(G))x` for `G' = G − removed + added`.
pub fn rayleigh_delta(x: &[f64], removed: &[(usize, usize)], added: &[(usize, usize)]) -> f64 {
    let term = |&(a, b): &(usize, usize)| (x[a] + x[b]).powi(2);
    added.iter().map(term).sum::<f64>() - removed.iter().map(term).sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Greater,
    Less,
    Indistinguishable,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QComparison {
    pub ordering: Comparison,
    pub q1: f64,
    pub q2: f64,
}

impl QComparison {
    pub fn is_greater(&self) -> bool {
        self.ordering == Comparison::Greater
    }
}

/// Compares `q(g1)` with `q(g2)`. Strict answers require a gap above `sep`
/// at tolerance `sep/10`, then at `sep/1000`; otherwise `Indistinguishable`.
pub fn q_compare(g1: &Graph, g2: &Graph, sep: f64) -> Result<QComparison> {
    if !(sep >= 0.0) {
        return Err(Error::Domain(format!(
            "separation must be nonnegative, got {sep}"
        )));
    }
    let base = if sep > 0.0 { sep } else { DEFAULT_TOL * 10.0 };
    for tol in [base / 10.0, base / 1000.0] {
        let q1 = q_index(g1, tol)?.q;
        let q2 = q_index(g2, tol)?.q;
        if (q1 - q2).abs() > sep {
            let ordering = if q1 > q2 {
                Comparison::Greater
            } else {
                Comparison::Less
            };
            return Ok(QComparison { ordering, q1, q2 });
        }
        if tol == base / 1000.0 {
            return Ok(QComparison {
                ordering: Comparison::Indistinguishable,
                q1,
                q2,
            });
        }
    }
    unreachable!()
}

/// Tolerance at which a reference index must be solved for use with
/// [`q_compare_to`].
pub fn reference_tol(sep: f64) -> f64 {
    if sep > 0.0 {
        sep / 1000.0
    } else {
        DEFAULT_TOL / 100.0
    }
}

/// Compares `q(g)` with a reference index already solved at
/// [`reference_tol`], using the same escalation as [`q_compare`].
pub fn q_compare_to(g: &Graph, reference: f64, sep: f64) -> Result<QComparison> {
    if !(sep >= 0.0) {
        return Err(Error::Domain(format!(
            "separation must be nonnegative, got {sep}"
        )));
    }
    let base = if sep > 0.0 { sep } else { DEFAULT_TOL * 10.0 };
    let mut q1 = q_index(g, base / 10.0)?.q;
    if (q1 - reference).abs() <= sep {
        q1 = q_index(g, base / 1000.0)?.q;
    }
    Ok(QComparison {
        ordering: compare_values(q1, reference, sep),
        q1,
        q2: reference,
    })
}

/// Strict ordering of two computed values at separation `sep`.
pub fn compare_values(q1: f64, q2: f64, sep: f64) -> Comparison {
    if (q1 - q2).abs() > sep {
        if q1 > q2 {
            Comparison::Greater
        } else {
            Comparison::Less
        }
    } else {
        Comparison::Indistinguishable
    }
}
