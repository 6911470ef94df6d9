//! Isomorph-free generation of small graph classes by canonical augmentation,
//! and the index maximisers of a class.
//!
//! A graph on `k + 1` vertices is produced from a parent on `k` vertices by
//! adding one vertex with a chosen neighbourhood. The child is kept only when
//! the new vertex lies in the orbit of the class-invariant deletion vertex:
//! the non-cut vertex (any vertex when connectivity is not required) with
//! the largest canonical position. Each isomorphism class therefore has
//! exactly one parent class, and duplicates from the same parent are removed
//! by code. Forbidden patterns are applied as a final filter.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, canonical_form, rooted_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::recognition::{is_f_free, is_outerplanar, ForbiddenPattern};
use crate::spectral::{compare_values, q_index, reference_tol, Comparison};

/// Largest order enumerated exhaustively for outerplanar classes.
pub const MAX_OUTERPLANAR_ORDER: usize = 10;
/// Largest order enumerated exhaustively when outerplanarity is not required.
pub const MAX_GENERAL_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Outerplanar,
    /// Every simple graph; used by the bound and move-lemma suites.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationClass {
    pub n: usize,
    pub pattern: Option<ForbiddenPattern>,
    pub require_connected: bool,
    pub family: Family,
}

impl EnumerationClass {
    /// Connected outerplanar graphs of order `n`, optionally `pattern`-free.
    pub fn outerplanar(n: usize, pattern: Option<ForbiddenPattern>) -> Self {
        EnumerationClass {
            n,
            pattern,
            require_connected: true,
            family: Family::Outerplanar,
        }
    }

    /// All connected graphs of order `n`.
    pub fn connected(n: usize) -> Self {
        EnumerationClass {
            n,
            pattern: None,
            require_connected: true,
            family: Family::All,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidOrder {
                order: 0,
                reason: "a graph needs at least one vertex",
            });
        }
        let max = match self.family {
            Family::Outerplanar => MAX_OUTERPLANAR_ORDER,
            Family::All => MAX_GENERAL_ORDER,
        };
        if self.n > max {
            return Err(Error::Capacity {
                requested: self.n,
                max,
            });
        }
        Ok(())
    }

    pub fn admits(&self, g: &Graph) -> bool {
        g.order() == self.n
            && (!self.require_connected || g.is_connected())
            && (self.family == Family::All || is_outerplanar(g))
            && self.pattern.is_none_or(|p| is_f_free(g, p))
    }
}

/// Every graph of the class, one per isomorphism class, in a deterministic order.
pub fn enumerate(class: &EnumerationClass) -> Result<Vec<Graph>> {
    class.check()?;
    let mut level = generate_levels(class.family, class.require_connected, class.n)?
        .pop()
        .unwrap_or_default();
    if let Some(p) = class.pattern {
        level.retain(|g| is_f_free(g, p));
    }
    Ok(level)
}

/// Unfiltered class members for every order `1..=max_n`; entry `k - 1`
/// holds order `k`. Pattern filters are left to the caller.
pub fn generate_levels(
    family: Family,
    require_connected: bool,
    max_n: usize,
) -> Result<Vec<Vec<Graph>>> {
    EnumerationClass {
        n: max_n.max(1),
        pattern: None,
        require_connected,
        family,
    }
    .check()?;
    let mut levels = vec![vec![Graph::empty(1)?]];
    while levels.len() < max_n {
        let parents = levels.last().expect("non-empty");
        let children: Vec<Vec<Graph>> = parents
            .par_iter()
            .map(|p| children_of(p, family, require_connected))
            .collect::<Result<_>>()?;
        levels.push(children.into_iter().flatten().collect());
    }
    Ok(levels)
}

/// Number of class members of each order `1..=max_n`, pattern applied.
pub fn counts(
    family: Family,
    require_connected: bool,
    max_n: usize,
    pattern: Option<ForbiddenPattern>,
) -> Result<Vec<usize>> {
    let levels = generate_levels(family, require_connected, max_n)?;
    Ok(levels
        .iter()
        .map(|level| match pattern {
            None => level.len(),
            Some(p) => level.par_iter().filter(|g| is_f_free(g, p)).count(),
        })
        .collect())
}

fn children_of(parent: &Graph, family: Family, require_connected: bool) -> Result<Vec<Graph>> {
    let k = parent.order();
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    let start = u64::from(require_connected);
    for mask in start..(1u64 << k) {
        let child = parent.extended(VertexSet(mask))?;
        if family == Family::Outerplanar && !is_outerplanar(&child) {
            continue;
        }
        if let Some(code) = accept(&child, require_connected) {
            if seen.insert(code) {
                out.push(child);
            }
        }
    }
    Ok(out)
}

/// Canonical deletion test for the last vertex; returns the child's code on
/// acceptance.
fn accept(child: &Graph, require_connected: bool) -> Option<CanonicalCode> {
    let v = child.order() - 1;
    let form = canonical_form(child);
    let eligible = if require_connected {
        child.vertices().difference(child.cut_vertices())
    } else {
        child.vertices()
    };
    let pos = form.positions();
    let star = eligible
        .iter()
        .max_by_key(|&c| pos[c])
        .expect("a connected graph has a non-cut vertex");
    if star != v
        && (form.root_cells[star] != form.root_cells[v]
            || rooted_code(child, star) != rooted_code(child, v))
    {
        return None;
    }
    Some(form.code)
}

/// Maximisers of the index over a class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Argmax {
    /// Every graph within the separation of the maximum, sorted by code.
    pub graphs: Vec<Graph>,
    pub q: f64,
    /// Gap from the maximum to the best graph outside `graphs`; `None` when
    /// every member of the class is in `graphs`.
    pub margin: Option<f64>,
    pub class_size: usize,
}

impl Argmax {
    /// A single maximiser, separated from the rest of the class by more than `sep`.
    pub fn is_unique(&self, sep: f64) -> bool {
        self.graphs.len() == 1 && self.margin.is_none_or(|m| m > sep)
    }
}

pub fn extremal_argmax(class: &EnumerationClass, sep: f64) -> Result<Argmax> {
    argmax_over(&enumerate(class)?, sep)
}

/// Indices are solved at tolerance `sep/10`; every graph that could reach
/// the top group is re-solved at `sep/1000` before grouping.
pub fn argmax_over(graphs: &[Graph], sep: f64) -> Result<Argmax> {
    if graphs.is_empty() {
        return Err(Error::Domain("argmax over an empty class".into()));
    }
    let coarse_tol = if sep > 0.0 {
        sep / 10.0
    } else {
        reference_tol(sep)
    };
    let mut qs: Vec<f64> = graphs
        .par_iter()
        .map(|g| q_index(g, coarse_tol).map(|r| r.q))
        .collect::<Result<_>>()?;
    let top = qs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let refine: Vec<usize> = (0..graphs.len())
        .filter(|&i| qs[i] >= top - 2.0 * sep - 2.0 * coarse_tol)
        .collect();
    let refined: Vec<f64> = refine
        .par_iter()
        .map(|&i| q_index(&graphs[i], reference_tol(sep)).map(|r| r.q))
        .collect::<Result<_>>()?;
    for (&i, q) in refine.iter().zip(refined) {
        qs[i] = q;
    }
    let best = qs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut winners: Vec<(CanonicalCode, Graph)> = Vec::new();
    let mut rest = f64::NEG_INFINITY;
    for (g, &q) in graphs.iter().zip(&qs) {
        if compare_values(best, q, sep) == Comparison::Indistinguishable {
            winners.push((canonical_code(g), g.clone()));
        } else {
            rest = rest.max(q);
        }
    }
    winners.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Argmax {
        graphs: winners.into_iter().map(|(_, g)| g).collect(),
        q: best,
        margin: (rest > f64::NEG_INFINITY).then_some(best - rest),
        class_size: graphs.len(),
    })
}
