//! Extremal families `K1 ∨ (∪ P_{a_i})` and the `H(u; t, s)` gadget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::recognition::{contains_cycle, contains_disjoint_paths, is_outerplanar};

/// Path orders of a join `K1 ∨ (P_{a1} ∪ ... ∪ P_{as})`, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathJoinSpec {
    parts: Vec<usize>,
}

impl PathJoinSpec {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&a| a > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PathJoinSpec { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Order of the join graph, `1 + Σ parts`.
    pub fn order(&self) -> usize {
        1 + self.parts.iter().sum::<usize>()
    }
}

impl std::fmt::Display for PathJoinSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "K1");
        }
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &a in &self.parts {
            match groups.last_mut() {
                Some((b, c)) if *b == a => *c += 1,
                _ => groups.push((a, 1)),
            }
        }
        let body: Vec<String> = groups
            .iter()
            .map(|&(a, c)| {
                if c == 1 {
                    format!("P{a}")
                } else {
                    format!("{c}P{a}")
                }
            })
            .collect();
        write!(f, "K1 v ({})", body.join(" u "))
    }
}

/// `K1 ∨ (∪ P_{a_i})`. The join vertex is 0 and each path occupies a run of
/// consecutive labels in the order of `spec.parts()`.
pub fn path_join(spec: &PathJoinSpec) -> Result<Graph> {
    let n = spec.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_ORDER,
        });
    }
    let mut edges = Vec::with_capacity(2 * n);
    let mut next = 1;
    for &a in spec.parts() {
        for i in 0..a {
            edges.push((0, next + i));
            if i + 1 < a {
                edges.push((next + i, next + i + 1));
            }
        }
        next += a;
    }
    Graph::from_edges(n, &edges)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleExtremal {
    pub graph: Graph,
    pub spec: PathJoinSpec,
    pub alpha: usize,
    pub r: usize,
}

/// `K1 ∨ (α P_{ℓ-2} ∪ P_r)` with `α = ⌊(n-1)/(ℓ-2)⌋`, `r = n-1-α(ℓ-2)`.
pub fn cycle_extremal(n: usize, l: usize) -> Result<CycleExtremal> {
    if l < 3 || l > n {
        return Err(Error::Domain(format!(
            "cycle extremal graph needs 3 <= l <= n, got n = {n}, l = {l}"
        )));
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_ORDER,
        });
    }
    let part = l - 2;
    let alpha = (n - 1) / part;
    let r = n - 1 - alpha * part;
    let mut parts = vec![part; alpha];
    parts.push(r);
    let spec = PathJoinSpec::new(parts);
    let graph = path_join(&spec)?;
    if contains_cycle(&graph, l)? {
        return Err(Error::Construction(format!("{spec} contains C{l}")));
    }
    check_class(&graph, &spec)?;
    Ok(CycleExtremal {
        graph,
        spec,
        alpha,
        r,
    })
}

/// Parameters as printed in the closed-form statement, kept signed because
/// they can leave the valid range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedParameters {
    pub alpha: i64,
    pub r: i64,
    /// `a1 + α·part + r`; a consistent reading needs `n - 1`.
    pub parts_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathExtremal {
    pub graph: Graph,
    pub spec: PathJoinSpec,
    pub a1: usize,
    pub part: usize,
    pub alpha: usize,
    pub r: usize,
    pub printed: PrintedParameters,
    /// True when the printed parameters differ from `(alpha, r)`.
    pub discrepancy: bool,
    /// For `t = 1`, the `(⌈(ℓ-1)/2⌉, ⌊(ℓ-1)/2⌋)` pair that the derivation
    /// concludes with; it sums to `ℓ - 1` instead of `ℓ - 2`.
    pub alternative_pair: Option<(usize, usize)>,
}

/// Candidate extremal graph for `tP_ℓ`-free graphs:
/// `K1 ∨ (P_{a1} ∪ α P_part ∪ P_r)` with `a1 = ⌈(ℓ-2)/2⌉, part = ⌊(ℓ-2)/2⌋`
/// when `t = 1` and `a1 = tℓ-ℓ-1, part = ℓ-1` when `t ≥ 2`; `α` and `r` are
/// fixed by `a1 + α·part + r = n - 1` with `0 <= r < part`.
pub fn path_extremal(n: usize, t: usize, l: usize) -> Result<PathExtremal> {
    let domain = |why: &str| {
        Err(Error::Domain(format!(
            "path extremal graph for n = {n}, t = {t}, l = {l}: {why}"
        )))
    };
    if t == 0 {
        return domain("t must be positive");
    }
    if t == 1 && l < 4 {
        return domain("t = 1 needs l >= 4");
    }
    if l < 2 {
        return domain("l must be at least 2");
    }
    if t * l + 1 > n {
        return domain("needs t*l <= n - 1");
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_ORDER,
        });
    }
    let (a1, part) = if t == 1 {
        ((l - 2).div_ceil(2), (l - 2) / 2)
    } else {
        (t * l - l - 1, l - 1)
    };
    let rest = n - 1 - a1;
    let alpha = rest / part;
    let r = rest - alpha * part;

    let (ni, ti, li) = (n as i64, t as i64, l as i64);
    let printed = if t == 1 {
        let p = part as i64;
        let alpha = (ni - li + 1).div_euclid(p) + 1;
        let r = ni - li + 1 - (alpha - 1) * p;
        PrintedParameters {
            alpha,
            r,
            parts_sum: a1 as i64 + alpha * p + r,
        }
    } else {
        let alpha = (ni - ti + 2).div_euclid(li - 1) - ti + 1;
        let r = ni - 2 * li + 2 - (alpha - 1) * (li - 1);
        PrintedParameters {
            alpha,
            r,
            parts_sum: a1 as i64 + alpha * (li - 1) + r,
        }
    };
    let discrepancy = printed.alpha != alpha as i64 || printed.r != r as i64;

    let mut parts = vec![a1];
    parts.extend(std::iter::repeat_n(part, alpha));
    parts.push(r);
    let spec = PathJoinSpec::new(parts);
    let graph = path_join(&spec)?;
    if contains_disjoint_paths(&graph, t, l)? {
        return Err(Error::Construction(format!("{spec} contains {t}P{l}")));
    }
    check_class(&graph, &spec)?;
    let alternative_pair = (t == 1)
        .then(|| (l - 1).div_ceil(2))
        .map(|a| (a, (l - 1) / 2));
    Ok(PathExtremal {
        graph,
        spec,
        a1,
        part,
        alpha,
        r,
        printed,
        discrepancy,
        alternative_pair,
    })
}

fn check_class(g: &Graph, spec: &PathJoinSpec) -> Result<()> {
    if !g.is_connected() || !is_outerplanar(g) {
        return Err(Error::Construction(format!(
            "{spec} is not a connected outerplanar graph"
        )));
    }
    Ok(())
}

/// `H(u; t, s)`: paths `P_t` and `P_s` on new vertices, every new vertex
/// joined to `u`. With `s = 0` only `P_t` is attached. New labels follow
/// those of `h`, first along `P_t` and then along `P_s`.
pub fn h_gadget(h: &Graph, u: usize, t: usize, s: usize) -> Result<Graph> {
    let n = h.order();
    if u >= n {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            order: n,
        });
    }
    if t == 0 {
        return Err(Error::Domain("H(u; t, s) needs t >= 1".into()));
    }
    if n + t + s > MAX_ORDER {
        return Err(Error::Capacity {
            requested: n + t + s,
            max: MAX_ORDER,
        });
    }
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    let mut start = n;
    for len in [t, s] {
        for i in 0..len {
            edges.push((u, start + i));
            if i + 1 < len {
                edges.push((start + i, start + i + 1));
            }
        }
        start += len;
    }
    Graph::from_edges(n + t + s, &edges)
}
