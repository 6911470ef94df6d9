//! Canonical labelling for small graphs.
//!
//! The canonical code is the lexicographically smallest graph6 bit string
//! over all vertex orderings that are compatible with the equitable
//! partition produced by iterated degree refinement. The search individualizes
//! one vertex of the first non-singleton cell at a time and prunes branches
//! that are images of already explored branches under a known automorphism
//! (twin transpositions and automorphisms discovered at equal leaves).

use std::fmt;

use crate::graph::Graph;

/// Isomorphism-class identifier: order byte, optional colour-class sizes,
/// then the upper-triangle adjacency bits of the canonically relabelled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `labeling[i]` is the vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Cell index of every vertex in the equitable partition at the search
    /// root. Vertices in different cells lie in different orbits.
    pub root_cells: Vec<usize>,
}

impl CanonicalForm {
    /// Canonical position of every vertex (inverse of `labeling`).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.labeling.len()];
        for (i, &v) in self.labeling.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        g.permuted(&self.positions())
    }
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_form(g).code
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    Search::run(g, &vec![0; g.order()], false)
}

/// Canonical form where vertex colours must be preserved. Colours are
/// compared by value, so smaller colours come first in the labelling.
pub fn canonical_form_colored(g: &Graph, colors: &[usize]) -> CanonicalForm {
    assert_eq!(colors.len(), g.order());
    Search::run(g, colors, true)
}

/// Code of `g` with `root` distinguished from every other vertex.
pub fn rooted_code(g: &Graph, root: usize) -> CanonicalCode {
    let colors: Vec<usize> = (0..g.order()).map(|v| usize::from(v != root)).collect();
    canonical_form_colored(g, &colors).code
}

/// Whether some automorphism of `g` maps `u` to `v`.
pub fn same_orbit(g: &Graph, u: usize, v: usize) -> bool {
    u == v || rooted_code(g, u) == rooted_code(g, v)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_code(a) == canonical_code(b)
}

/// Iterated refinement to the coarsest equitable partition finer than `cells`.
/// Cell ids stay ordered: a refined cell keeps the relative position of its parent.
fn refine(g: &Graph, cells: &mut [usize]) -> usize {
    let n = g.order();
    let mut k = cells.iter().copied().max().map_or(0, |m| m + 1);
    let mut sigs: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        sigs.clear();
        for v in 0..n {
            let mut sig = vec![0u32; k + 1];
            sig[0] = cells[v] as u32;
            for w in g.neighbors(v) {
                sig[1 + cells[w]] += 1;
            }
            sigs.push((sig, v));
        }
        sigs.sort_unstable();
        let mut id = 0;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                id += 1;
            }
            cells[sigs[i].1] = id;
        }
        let new_k = id + 1;
        if new_k == k {
            return k;
        }
        k = new_k;
    }
}

/// Renumbers arbitrary colour values to dense ids preserving order.
fn normalize_colors(colors: &[usize]) -> Vec<usize> {
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap())
        .collect()
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph, colors: &[usize], colored: bool) -> CanonicalForm {
        let n = g.order();
        let mut cells = normalize_colors(colors);
        let mut prefix = vec![n as u8];
        if colored {
            let k = cells.iter().copied().max().unwrap_or(0) + 1;
            let mut sizes = vec![0u8; k];
            for &c in &cells {
                sizes[c] += 1;
            }
            prefix.push(k as u8);
            prefix.extend(sizes);
        }
        refine(g, &mut cells);
        let root_cells = cells.clone();
        let mut s = Search {
            g,
            best: None,
            autos: Vec::new(),
        };
        s.descend(cells, &mut Vec::new());
        let (bits, labeling) = s.best.expect("search visits at least one leaf");
        prefix.extend(bits);
        CanonicalForm {
            code: CanonicalCode(prefix),
            labeling,
            root_cells,
        }
    }

    fn leaf_bits(&self, lab: &[usize]) -> Vec<u8> {
        let n = lab.len();
        let mut out = Vec::with_capacity(n * n / 12 + 1);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            let row = self.g.rows()[lab[j]];
            for &li in &lab[..j] {
                acc = (acc << 1) | (row >> li & 1) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(acc << (6 - nbits));
        }
        out
    }

    fn descend(&mut self, mut cells: Vec<usize>, path: &mut Vec<usize>) {
        let n = self.g.order();
        let k = refine(self.g, &mut cells);
        if k == n {
            let mut lab = vec![0; n];
            for v in 0..n {
                lab[cells[v]] = v;
            }
            let bits = self.leaf_bits(&lab);
            match &self.best {
                None => self.best = Some((bits, lab)),
                Some((best_bits, best_lab)) => match bits.cmp(best_bits) {
                    std::cmp::Ordering::Less => self.best = Some((bits, lab)),
                    std::cmp::Ordering::Equal => {
                        let mut gamma = vec![0; n];
                        for i in 0..n {
                            gamma[best_lab[i]] = lab[i];
                        }
                        if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                            self.autos.push(gamma);
                        }
                    }
                    std::cmp::Ordering::Greater => {}
                },
            }
            return;
        }

        // first non-singleton cell
        let mut sizes = vec![0usize; k];
        for &c in &cells {
            sizes[c] += 1;
        }
        let target = (0..k)
            .find(|&c| sizes[c] > 1)
            .expect("k < n implies a non-singleton cell");
        let members: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        for &w in &members {
            if explored.iter().any(|&x| self.are_twins(x, w)) {
                continue;
            }
            if !explored.is_empty() && self.pruned_by_automorphism(path, &explored, w) {
                continue;
            }
            let child: Vec<usize> = cells
                .iter()
                .enumerate()
                .map(|(v, &c)| match c.cmp(&target) {
                    std::cmp::Ordering::Less => c,
                    std::cmp::Ordering::Equal => {
                        if v == w {
                            c
                        } else {
                            c + 1
                        }
                    }
                    std::cmp::Ordering::Greater => c + 1,
                })
                .collect();
            path.push(w);
            self.descend(child, path);
            path.pop();
            explored.push(w);
        }
    }

    fn are_twins(&self, a: usize, b: usize) -> bool {
        let na = self.g.neighbors(a).without(b);
        let nb = self.g.neighbors(b).without(a);
        na == nb
    }

    /// Whether `w` lies in the orbit of an explored vertex under the group
    /// generated by the known automorphisms that fix `path` pointwise.
    fn pruned_by_automorphism(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().all(|&p| gamma[p] == p) {
                any = true;
                for v in 0..n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, gamma[v]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&x| find(&mut parent, x) == rw)
    }
}
