use std::collections::{HashMap, HashSet};

use crate::classify::predicates::color_sequences_from;
use crate::complex::PureComplex;
use crate::vertex_set::VertexSet;

/// Cheap isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub m: usize,
    pub n: usize,
    pub facets: usize,
    pub mnfs: usize,
    pub f_vector: Vec<usize>,
}

pub fn fingerprint(k: &PureComplex) -> Fingerprint {
    Fingerprint {
        m: k.m(),
        n: k.n(),
        facets: k.facet_count(),
        mnfs: k.minimal_nonfaces().len(),
        f_vector: k.f_vector(),
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("key present")).collect()
}

/// Vertex data shared by the canonical labeling and the isomorphism search.
struct Structure {
    m: usize,
    mnfs: Vec<VertexSet>,
    /// MNFs and facets through each vertex, as indices.
    mnfs_at: Vec<Vec<usize>>,
    facets: Vec<VertexSet>,
    facets_at: Vec<Vec<usize>>,
}

impl Structure {
    fn new(k: &PureComplex) -> Self {
        let m = k.m();
        let mnfs = k.minimal_nonfaces();
        let mut mnfs_at = vec![Vec::new(); m + 1];
        for (i, s) in mnfs.iter().enumerate() {
            for v in s.iter() {
                mnfs_at[v].push(i);
            }
        }
        let facets = k.facets().to_vec();
        let mut facets_at = vec![Vec::new(); m + 1];
        for (i, f) in facets.iter().enumerate() {
            for v in f.iter() {
                facets_at[v].push(i);
            }
        }
        Structure { m, mnfs, mnfs_at, facets, facets_at }
    }

    /// Color-sequence classes, then the number of facets through each vertex.
    fn initial_colors(&self) -> Vec<usize> {
        let seqs = color_sequences_from(self.m, &self.mnfs);
        let keys: Vec<(Vec<usize>, usize)> =
            (0..=self.m).map(|v| (seqs[v].clone(), self.facets_at[v].len())).collect();
        let mut colors = rank_keys(&keys[1..]);
        colors.insert(0, usize::MAX);
        colors
    }

    /// Refines until stable. Each new color is ranked by the old color first, so
    /// the partition only ever splits and the result does not depend on labels.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_classes(colors);
        loop {
            let keys: Vec<(usize, Vec<Vec<usize>>, Vec<Vec<usize>>)> = (1..=self.m)
                .map(|v| {
                    let around = |sets: &[VertexSet], at: &[usize]| {
                        let mut out: Vec<Vec<usize>> = at
                            .iter()
                            .map(|&i| {
                                let mut c: Vec<usize> = sets[i].without(v).iter().map(|u| colors[u]).collect();
                                c.sort_unstable();
                                c
                            })
                            .collect();
                        out.sort_unstable();
                        out
                    };
                    (colors[v], around(&self.mnfs, &self.mnfs_at[v]), around(&self.facets, &self.facets_at[v]))
                })
                .collect();
            let ranked = rank_keys(&keys);
            for v in 1..=self.m {
                colors[v] = ranked[v - 1];
            }
            let now = count_classes(colors);
            if now == classes {
                return;
            }
            classes = now;
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c: Vec<usize> = colors[1..].to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Splits `v` off its class: `v` keeps the lower position.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let target = colors[v];
    let keys: Vec<(usize, bool)> = (1..colors.len()).map(|u| (colors[u], colors[u] == target && u != v)).collect();
    let mut out = rank_keys(&keys);
    out.insert(0, usize::MAX);
    out
}

/// Canonical relabeling by individualization and refinement.
///
/// Leaves of the search tree are discrete colorings; each gives the relabeling
/// `v -> color(v) + 1`, and the least relabeled facet list wins. Returns the map
/// `old label -> new label` (index 0 unused).
pub fn canonical_labeling(k: &PureComplex) -> Vec<usize> {
    let s = Structure::new(k);
    let mut colors = s.initial_colors();
    s.refine(&mut colors);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(&s, colors, &mut best);
    best.map(|(_, perm)| perm).unwrap_or_else(|| (0..=k.m()).collect())
}

fn search(s: &Structure, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let m = s.m;
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for &c in &colors[1..] {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let target = sizes.iter().filter(|(_, &n)| n > 1).map(|(&c, _)| c).min();
    let Some(target) = target else {
        let mut perm = vec![0usize; m + 1];
        for v in 1..=m {
            perm[v] = colors[v] + 1;
        }
        let mut code: Vec<u64> = s.facets.iter().map(|f| f.map(&perm).bits()).collect();
        code.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm));
        }
        return;
    };
    for v in (1..=m).filter(|&v| colors[v] == target) {
        let mut next = individualize(&colors, v);
        s.refine(&mut next);
        search(s, next, best);
    }
}

/// The canonical representative of the isomorphism class of `k`.
pub fn canonical_form(k: &PureComplex) -> PureComplex {
    let perm = canonical_labeling(k);
    k.relabel(&perm, k.m())
}

/// Searches for a relabeling `phi` (`phi[v]` is the image of `v`) mapping the
/// minimal non-faces of `k` bijectively onto those of `l`.
///
/// Fingerprints are compared first, then the multisets of color sequences, and
/// only then are color-class-respecting bijections tried by backtracking.
pub fn are_isomorphic(k: &PureComplex, l: &PureComplex) -> Option<Vec<usize>> {
    if k.m() != l.m() || k.n() != l.n() || k.facet_count() != l.facet_count() {
        return None;
    }
    let mk = k.minimal_nonfaces();
    let ml = l.minimal_nonfaces();
    if mk.len() != ml.len() || k.f_vector() != l.f_vector() {
        return None;
    }
    let m = k.m();
    let ck = color_sequences_from(m, &mk);
    let cl = color_sequences_from(m, &ml);
    let mut sk = ck[1..].to_vec();
    let mut sl = cl[1..].to_vec();
    sk.sort();
    sl.sort();
    if sk != sl {
        return None;
    }

    // most constrained vertices first
    let mut class_size: HashMap<&Vec<usize>, usize> = HashMap::new();
    for c in &ck[1..] {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by_key(|&v| (class_size[&ck[v]], ck[v].clone(), v));
    let mut position = vec![0usize; m + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut checks: Vec<Vec<VertexSet>> = vec![Vec::new(); m];
    for &s in &mk {
        let last = s.iter().map(|v| position[v]).max().expect("nonempty MNF");
        checks[last].push(s);
    }
    let targets: HashSet<VertexSet> = ml.iter().copied().collect();
    let mut phi = vec![0usize; m + 1];
    let mut used = vec![false; m + 1];
    let ctx = IsoSearch { order: &order, checks: &checks, targets: &targets, ck: &ck, cl: &cl };
    ctx.assign(0, &mut phi, &mut used).then_some(phi)
}

struct IsoSearch<'a> {
    order: &'a [usize],
    checks: &'a [Vec<VertexSet>],
    targets: &'a HashSet<VertexSet>,
    ck: &'a [Vec<usize>],
    cl: &'a [Vec<usize>],
}

impl IsoSearch<'_> {
    fn assign(&self, level: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if level == self.order.len() {
            return true;
        }
        let v = self.order[level];
        for w in 1..phi.len() {
            if used[w] || self.cl[w] != self.ck[v] {
                continue;
            }
            phi[v] = w;
            if self.checks[level].iter().all(|s| self.targets.contains(&s.map(phi))) {
                used[w] = true;
                if self.assign(level + 1, phi, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        phi[v] = 0;
        false
    }
}
