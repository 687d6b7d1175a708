//! Backtracking over individualisation/refinement trees: automorphism groups,
//! isomorphism witnesses and canonical forms.
//!
//! Every node refines an ordered partition to the coarsest equitable one. The
//! refinement only looks at cell order and neighbour counts, so it commutes with
//! relabelling; that is what makes leaf-to-leaf maps meaningful. Candidates are
//! always tried in increasing vertex id, so witnesses are reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::bits;
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

type Cells = Vec<Vec<usize>>;

fn initial_cells(g: &Graph, colors: &[usize]) -> (Cells, Vec<(usize, bool)>) {
    let mut classes: BTreeMap<(usize, bool), Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate().take(g.order()) {
        classes.entry((c, g.has_loop(v))).or_default().push(v);
    }
    let keys = classes.keys().copied().collect();
    (classes.into_values().collect(), keys)
}

/// Coarsest equitable refinement of an ordered partition.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let words = g.words();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mask = bits::from_indices(words, cells[s].iter().copied());
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> =
                    cell.iter().map(|&v| (bits::count_and(g.row(v), &mask), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    next.push(cell);
                    continue;
                }
                changed = true;
                let mut cur = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        next.push(std::mem::take(&mut cur));
                    }
                    cur.push(w[1].1);
                }
                next.push(cur);
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, c) in cells.iter().enumerate() {
        if i == target {
            out.push(vec![v]);
            out.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(c.clone());
        }
    }
    out
}

/// Cell sizes plus the quotient matrix of an equitable partition.
fn signature(g: &Graph, cells: &Cells) -> Vec<u32> {
    let words = g.words();
    let masks: Vec<Vec<u64>> = cells
        .iter()
        .map(|c| bits::from_indices(words, c.iter().copied()))
        .collect();
    let mut sig = Vec::with_capacity(cells.len() * (cells.len() + 1));
    for c in cells {
        sig.push(c.len() as u32);
        let row = g.row(c[0]);
        for m in &masks {
            sig.push(bits::count_and(row, m) as u32);
        }
    }
    sig
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn sorted_cells(mut cells: Cells) -> Cells {
    for c in &mut cells {
        c.sort_unstable();
    }
    cells
}

struct PathNode {
    cells: Cells,
    target: usize,
    chosen: usize,
}

/// The leftmost root-to-leaf path of a search tree plus per-depth signatures.
struct FirstPath {
    nodes: Vec<PathNode>,
    sigs: Vec<Vec<u32>>,
    leaf: Vec<usize>,
}

impl FirstPath {
    fn build(g: &Graph, initial: Cells) -> FirstPath {
        let mut cells = sorted_cells(refine(g, initial));
        let mut nodes = Vec::new();
        let mut sigs = Vec::new();
        loop {
            sigs.push(signature(g, &cells));
            match target_cell(&cells) {
                None => break,
                Some(t) => {
                    let v = cells[t][0];
                    let next = sorted_cells(refine(g, individualize(&cells, t, v)));
                    nodes.push(PathNode {
                        cells,
                        target: t,
                        chosen: v,
                    });
                    cells = next;
                }
            }
        }
        let leaf = cells.into_iter().map(|c| c[0]).collect();
        FirstPath { nodes, sigs, leaf }
    }
}

/// Searches the subtree rooted at `cells` (at `depth`, already refined) of `h`'s
/// tree for a leaf whose induced map from `path`'s leaf is an isomorphism `g → h`.
fn match_leaf(g: &Graph, h: &Graph, path: &FirstPath, depth: usize, cells: Cells) -> Option<Permutation> {
    if signature(h, &cells) != path.sigs[depth] {
        return None;
    }
    if depth == path.nodes.len() {
        let mut images = vec![0; g.order()];
        for (k, c) in cells.iter().enumerate() {
            images[path.leaf[k]] = c[0];
        }
        let p = Permutation::from_images_unchecked(images);
        return is_isomorphism(g, h, &p).then_some(p);
    }
    let t = path.nodes[depth].target;
    for &x in &cells[t] {
        let next = sorted_cells(refine(h, individualize(&cells, t, x)));
        if let Some(p) = match_leaf(g, h, path, depth + 1, next) {
            return Some(p);
        }
    }
    None
}

fn is_isomorphism(g: &Graph, h: &Graph, p: &Permutation) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        let pu = p.apply(u);
        (u..n).all(|v| g.has_edge(u, v) == h.has_edge(pu, p.apply(v)))
    })
}

fn orbit_mask(n: usize, gens: &[Permutation], start: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Automorphism search result with the order known from the orbit product.
struct AutResult {
    generators: Vec<Permutation>,
    order: u128,
}

fn automorphisms(g: &Graph, colors: &[usize]) -> AutResult {
    let n = g.order();
    if n == 0 {
        return AutResult {
            generators: Vec::new(),
            order: 1,
        };
    }
    let (initial, _) = initial_cells(g, colors);
    let path = FirstPath::build(g, initial);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..path.nodes.len()).rev() {
        let node = &path.nodes[level];
        let mut orbit = orbit_mask(n, &gens, node.chosen);
        for &w in &node.cells[node.target] {
            if orbit[w] {
                continue;
            }
            let cells = sorted_cells(refine(g, individualize(&node.cells, node.target, w)));
            if let Some(p) = match_leaf(g, g, &path, level + 1, cells) {
                gens.push(p);
                orbit = orbit_mask(n, &gens, node.chosen);
            }
        }
        let size = orbit.iter().filter(|&&b| b).count() as u128;
        order = order
            .checked_mul(size)
            .expect("automorphism group order overflows u128");
    }
    AutResult {
        generators: gens,
        order,
    }
}

/// Generators of the full automorphism group. Loops are respected: looped vertices
/// only map to looped vertices.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    automorphism_group_colored(g, &vec![0; g.order()])
}

/// Automorphisms that additionally preserve a vertex colouring. With a two-colour
/// split this is the setwise stabilizer of one colour class in `Aut(g)`.
pub fn automorphism_group_colored(g: &Graph, colors: &[usize]) -> PermGroup {
    assert_eq!(colors.len(), g.order(), "one colour per vertex");
    let res = automorphisms(g, colors);
    let group = PermGroup::new(g.order(), res.generators).expect("generators have graph degree");
    debug_assert_eq!(group.order(), res.order);
    group
}

/// Order of `Aut(g)` straight from the search tree (no stabilizer chain).
pub fn automorphism_count(g: &Graph) -> u128 {
    automorphisms(g, &vec![0; g.order()]).order
}

/// A relabelling `p` with `g^p = h`, if one exists. Deterministic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.order();
    if n == 0 {
        return Some(Permutation::identity(0));
    }
    let zeros = vec![0; n];
    let (gi, gk) = initial_cells(g, &zeros);
    let (hi, hk) = initial_cells(h, &zeros);
    if gk != hk || gi.iter().map(Vec::len).ne(hi.iter().map(Vec::len)) {
        return None;
    }
    let path = FirstPath::build(g, gi);
    let cells = sorted_cells(refine(h, hi));
    match_leaf(g, h, &path, 0, cells)
}

/// Isomorphism-invariant certificate: the adjacency matrix read in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalForm {
    pub order: usize,
    bits: Vec<u64>,
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, &self.bits).cmp(&(other.order, &other.bits))
    }
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let n = self.order;
        Graph::from_fn(n, |u, v| {
            let i = u * n + v;
            self.bits[i / 64] >> (i % 64) & 1 == 1
        })
    }
}

fn certificate(g: &Graph, leaf: &[usize]) -> Vec<u64> {
    let n = leaf.len();
    let mut out = vec![0u64; (n * n).div_ceil(64).max(1)];
    for (a, &u) in leaf.iter().enumerate() {
        for (b, &v) in leaf.iter().enumerate() {
            if g.has_edge(u, v) {
                let i = a * n + b;
                out[i / 64] |= 1 << (i % 64);
            }
        }
    }
    out
}

/// Canonical form: the smallest leaf certificate over the whole search tree,
/// with children pruned by orbits of known automorphisms fixing the prefix.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm {
            order: 0,
            bits: vec![0],
        };
    }
    let gens = automorphisms(g, &vec![0; n]).generators;
    let (initial, _) = initial_cells(g, &vec![0; n]);
    let cells = sorted_cells(refine(g, initial));
    let mut best: Option<Vec<u64>> = None;
    canon_walk(g, &gens, &mut Vec::new(), cells, &mut best);
    CanonicalForm {
        order: n,
        bits: best.unwrap(),
    }
}

fn canon_walk(g: &Graph, gens: &[Permutation], prefix: &mut Vec<usize>, cells: Cells, best: &mut Option<Vec<u64>>) {
    let Some(t) = target_cell(&cells) else {
        let leaf: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(g, &leaf);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    let fixing: Vec<Permutation> = gens
        .iter()
        .filter(|p| prefix.iter().all(|&v| p.apply(v) == v))
        .cloned()
        .collect();
    let mut covered = vec![false; g.order()];
    for &x in &cells[t] {
        if covered[x] {
            continue;
        }
        for (y, b) in orbit_mask(g.order(), &fixing, x).into_iter().enumerate() {
            covered[y] |= b;
        }
        let next = sorted_cells(refine(g, individualize(&cells, t, x)));
        prefix.push(x);
        canon_walk(g, gens, prefix, next, best);
        prefix.pop();
    }
}
