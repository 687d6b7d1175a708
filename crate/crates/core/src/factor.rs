//! Cartesian-prime factorization, direct-product factor search, coprimality,
//! and the cycle-factor criterion.
//!
//! All three searches share one engine: vertices are placed, in BFS order, on
//! cells of a `rows × cols` grid, so that rows and columns become the two
//! partitions with singleton intersections. New rows and columns are always
//! opened at the next unused index, which removes the row/column relabelling
//! symmetry. The adjacency rule of the product in question is checked as each
//! vertex lands.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cycle, Graph};
use crate::products::{cartesian_product, direct_product};
use crate::search::{are_isomorphic, canonical_form, CanonicalForm};

pub const CARTESIAN_CAP: usize = 24;
pub const DIRECT_CAP: usize = 20;
pub const CYCLE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Direct,
    Cycle,
    Cartesian,
}

/// Unknown, or a decided adjacency between two quotient classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    Unknown,
    Yes,
    No,
}

#[derive(Clone)]
struct Grid {
    rows: usize,
    cols: usize,
    pos: Vec<Option<(usize, usize)>>,
    cell: Vec<Option<usize>>,
    rows_used: usize,
    cols_used: usize,
    a: Vec<Tri>,
    b: Vec<Tri>,
}

impl Grid {
    fn new(n: usize, rows: usize, cols: usize) -> Grid {
        Grid {
            rows,
            cols,
            pos: vec![None; n],
            cell: vec![None; rows * cols],
            rows_used: 0,
            cols_used: 0,
            a: vec![Tri::Unknown; rows * rows],
            b: vec![Tri::Unknown; cols * cols],
        }
    }

    fn a(&self, r: usize, s: usize) -> Tri {
        self.a[r * self.rows + s]
    }

    fn b(&self, c: usize, d: usize) -> Tri {
        self.b[c * self.cols + d]
    }

    fn set_a(&mut self, r: usize, s: usize, t: Tri) {
        self.a[r * self.rows + s] = t;
        self.a[s * self.rows + r] = t;
    }

    fn set_b(&mut self, c: usize, d: usize, t: Tri) {
        self.b[c * self.cols + d] = t;
        self.b[d * self.cols + c] = t;
    }

    fn placed(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.pos
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|(r, c)| (v, r, c)))
    }

    fn quotient_a(&self) -> Graph {
        Graph::from_fn(self.rows, |r, s| self.a(r, s) == Tri::Yes)
    }

    fn quotient_b(&self) -> Graph {
        Graph::from_fn(self.cols, |c, d| self.b(c, d) == Tri::Yes)
    }
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbor_iter(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Engine<'a> {
    g: &'a Graph,
    mode: Mode,
    order: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, mode: Mode) -> Engine<'a> {
        Engine {
            g,
            mode,
            order: bfs_order(g),
        }
    }

    /// Visits complete placements until `visit` returns true.
    fn run(&self, rows: usize, cols: usize, visit: &mut dyn FnMut(&Grid) -> bool) -> bool {
        let grid = Grid::new(self.g.order(), rows, cols);
        self.extend(grid, 0, visit)
    }

    fn extend(&self, grid: Grid, k: usize, visit: &mut dyn FnMut(&Grid) -> bool) -> bool {
        if k == self.order.len() {
            return visit(&grid);
        }
        let x = self.order[k];
        let max_r = (grid.rows_used + 1).min(grid.rows);
        let max_c = (grid.cols_used + 1).min(grid.cols);
        for r in 0..max_r {
            for c in 0..max_c {
                if grid.cell[r * grid.cols + c].is_some() {
                    continue;
                }
                let mut next = grid.clone();
                next.pos[x] = Some((r, c));
                next.cell[r * next.cols + c] = Some(x);
                next.rows_used = next.rows_used.max(r + 1);
                next.cols_used = next.cols_used.max(c + 1);
                let ok = match self.mode {
                    Mode::Direct | Mode::Cycle => self.place_direct(&mut next, x),
                    Mode::Cartesian => self.place_cartesian(&mut next, x),
                };
                if ok && self.extend(next, k + 1, visit) {
                    return true;
                }
            }
        }
        false
    }

    fn place_direct(&self, grid: &mut Grid, x: usize) -> bool {
        let g = self.g;
        let (r, c) = grid.pos[x].unwrap();
        let mut new_a = Vec::new();
        let mut new_b = Vec::new();
        for (y, ry, cy) in grid.placed().collect::<Vec<_>>() {
            if !g.has_edge(x, y) {
                continue;
            }
            if self.mode == Mode::Cycle && cy == c {
                return false;
            }
            if grid.a(r, ry) != Tri::Yes {
                grid.set_a(r, ry, Tri::Yes);
                new_a.push((r, ry));
            }
            if grid.b(c, cy) != Tri::Yes {
                grid.set_b(c, cy, Tri::Yes);
                new_b.push((c, cy));
            }
        }
        let placed: Vec<_> = grid.placed().collect();
        for &(y, ry, cy) in &placed {
            if !g.has_edge(x, y) && grid.a(r, ry) == Tri::Yes && grid.b(c, cy) == Tri::Yes {
                return false;
            }
        }
        for &(r1, r2) in &new_a {
            for &(x1, rx, cx) in &placed {
                if rx != r1 {
                    continue;
                }
                for &(y1, ry, cy) in &placed {
                    if ry == r2 && grid.b(cx, cy) == Tri::Yes && !g.has_edge(x1, y1) {
                        return false;
                    }
                }
            }
        }
        for &(c1, c2) in &new_b {
            for &(x1, rx, cx) in &placed {
                if cx != c1 {
                    continue;
                }
                for &(y1, ry, cy) in &placed {
                    if cy == c2 && grid.a(rx, ry) == Tri::Yes && !g.has_edge(x1, y1) {
                        return false;
                    }
                }
            }
        }
        if self.mode == Mode::Cycle {
            // the column quotient must end up 2-regular
            let deg = |gr: &Grid, col: usize| (0..gr.cols).filter(|&d| gr.b(col, d) == Tri::Yes).count();
            if new_b.iter().any(|&(c1, c2)| deg(grid, c1) > 2 || deg(grid, c2) > 2) {
                return false;
            }
            // each vertex sees at most two vertices of any row
            for &(y, _, _) in &placed {
                if y != x && !g.has_edge(x, y) {
                    continue;
                }
                let mut per_row = vec![0usize; grid.rows];
                for &(z, rz, _) in &placed {
                    if g.has_edge(y, z) {
                        per_row[rz] += 1;
                    }
                }
                if per_row.iter().any(|&k| k > 2) {
                    return false;
                }
            }
        }
        true
    }

    fn place_cartesian(&self, grid: &mut Grid, x: usize) -> bool {
        let g = self.g;
        let (r, c) = grid.pos[x].unwrap();
        for (y, ry, cy) in grid.placed().collect::<Vec<_>>() {
            if y == x {
                continue;
            }
            let e = g.has_edge(x, y);
            let t = if e { Tri::Yes } else { Tri::No };
            if ry == r {
                match grid.b(c, cy) {
                    Tri::Unknown => grid.set_b(c, cy, t),
                    known if known != t => return false,
                    _ => {}
                }
            } else if cy == c {
                match grid.a(r, ry) {
                    Tri::Unknown => grid.set_a(r, ry, t),
                    known if known != t => return false,
                    _ => {}
                }
            } else if e {
                return false;
            }
        }
        true
    }
}

/// A factorization `g ≅ left × right` given by two partitions of `V(g)`.
///
/// `part_p[r]` is the class of vertices sitting over left-factor vertex `r`; it
/// has one vertex per right-factor vertex. `part_l[c]` is the class over
/// right-factor vertex `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectDecomposition {
    pub part_p: Vec<Vec<usize>>,
    pub part_l: Vec<Vec<usize>>,
    pub left_factor: Graph,
    pub right_factor: Graph,
}

impl DirectDecomposition {
    fn from_grid(grid: &Grid) -> DirectDecomposition {
        let mut part_p = vec![Vec::new(); grid.rows];
        let mut part_l = vec![Vec::new(); grid.cols];
        for (v, r, c) in grid.placed() {
            part_p[r].push(v);
            part_l[c].push(v);
        }
        DirectDecomposition {
            part_p,
            part_l,
            left_factor: grid.quotient_a(),
            right_factor: grid.quotient_b(),
        }
    }

    /// `(row, column)` of every vertex.
    pub fn coordinates(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); n];
        for (r, p) in self.part_p.iter().enumerate() {
            for &v in p {
                out[v].0 = r;
            }
        }
        for (c, l) in self.part_l.iter().enumerate() {
            for &v in l {
                out[v].1 = c;
            }
        }
        out
    }

    /// Checks the singleton-intersection property and that the direct product of
    /// the two factors reproduces `g` under the induced bijection.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.order();
        let (rows, cols) = (self.part_p.len(), self.part_l.len());
        if rows * cols != n || self.left_factor.order() != rows || self.right_factor.order() != cols {
            return false;
        }
        let coords = self.coordinates(n);
        let mut seen = vec![false; n];
        for &(r, c) in &coords {
            if r >= rows || c >= cols || std::mem::replace(&mut seen[r * cols + c], true) {
                return false;
            }
        }
        let (prod, idx) = match direct_product(&self.left_factor, &self.right_factor) {
            Ok(p) => p,
            Err(_) => return false,
        };
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (rx, cx) = coords[x];
                let (ry, cy) = coords[y];
                g.has_edge(x, y) == prod.has_edge(idx.encode(rx, cx), idx.encode(ry, cy))
            })
        })
    }
}

fn check_cap(g: &Graph, limit: usize, what: &'static str) -> Result<()> {
    if g.order() > limit {
        return Err(Error::CapExceeded {
            what,
            value: g.order() as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

fn check_divisor(n: usize, d: usize) -> Result<()> {
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::invalid(format!("{d} is not a proper divisor of {n}")));
    }
    Ok(())
}

/// Finds `g ≅ Δ × Σ` with `|V(Σ)| = d` and `|V(Δ)| = n/d`, both of order above 1.
pub fn direct_factor_search(g: &Graph, d: usize) -> Result<Option<DirectDecomposition>> {
    check_cap(g, DIRECT_CAP, "direct factor search order")?;
    check_divisor(g.order(), d)?;
    let mut found = None;
    Engine::new(g, Mode::Direct).run(g.order() / d, d, &mut |grid| {
        found = Some(DirectDecomposition::from_grid(grid));
        true
    });
    Ok(found)
}

/// Canonical forms of every graph `Σ` of order `d` with `g ≅ Δ × Σ` for some `Δ`.
/// `d = |V(g)|` contributes `g` itself (take `Δ` a looped vertex).
pub fn direct_factors_of_order(g: &Graph, d: usize) -> Result<BTreeSet<CanonicalForm>> {
    check_cap(g, DIRECT_CAP, "direct factor search order")?;
    let n = g.order();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::invalid(format!("{d} does not divide {n}")));
    }
    let mut out = BTreeSet::new();
    if d == n {
        out.insert(canonical_form(g));
        return Ok(out);
    }
    if d == 1 {
        // Σ is a looped vertex when g has an edge; otherwise either one-vertex graph works
        out.insert(canonical_form(&crate::graph::looped_vertex()));
        if g.edge_count() == 0 {
            out.insert(canonical_form(&Graph::edgeless(1)));
        }
        return Ok(out);
    }
    Engine::new(g, Mode::Direct).run(n / d, d, &mut |grid| {
        out.insert(canonical_form(&grid.quotient_b()));
        false
    });
    Ok(out)
}

/// A common direct factor of order above 1, when one exists.
pub fn common_direct_factor(g: &Graph, h: &Graph) -> Result<Option<Graph>> {
    check_cap(g, DIRECT_CAP, "direct factor search order")?;
    check_cap(h, DIRECT_CAP, "direct factor search order")?;
    let k = g.order().gcd(&h.order());
    for d in 2..=k {
        if !k.is_multiple_of(d) {
            continue;
        }
        // an edgeless graph is E × Σ for every Σ of its order's divisors
        let fg = direct_factors_of_order(g, d)?;
        let fh = direct_factors_of_order(h, d)?;
        let shared = match (g.edge_count() == 0, h.edge_count() == 0) {
            (true, true) => Some(canonical_form(&Graph::edgeless(d))),
            (true, false) => fh.iter().next().cloned(),
            (false, true) => fg.iter().next().cloned(),
            (false, false) => fg.intersection(&fh).next().cloned(),
        };
        if let Some(c) = shared {
            return Ok(Some(c.to_graph()));
        }
    }
    Ok(None)
}

/// No graph of order above 1 divides both `g` and `h` under the direct product.
pub fn are_direct_coprime(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(common_direct_factor(g, h)?.is_none())
}

/// Exhaustive reference for [`direct_factor_search`]: every arrangement of the
/// vertices on a `n/d × d` grid (up to row and column relabelling) is tested
/// against the direct-product rule with quotient factors.
pub fn direct_factor_exhaustive(g: &Graph, d: usize) -> bool {
    let n = g.order();
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return false;
    }
    let rows = n / d;
    let mut coords = vec![(0usize, 0usize); n];
    let mut used = vec![false; n];
    arrange(g, rows, d, 0, 0, 0, &mut coords, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn arrange(
    g: &Graph,
    rows: usize,
    cols: usize,
    v: usize,
    rows_used: usize,
    cols_used: usize,
    coords: &mut [(usize, usize)],
    used: &mut [bool],
) -> bool {
    let n = g.order();
    if v == n {
        return satisfies_direct_rule(g, rows, cols, coords);
    }
    for r in 0..(rows_used + 1).min(rows) {
        for c in 0..(cols_used + 1).min(cols) {
            if used[r * cols + c] {
                continue;
            }
            used[r * cols + c] = true;
            coords[v] = (r, c);
            let hit = arrange(
                g,
                rows,
                cols,
                v + 1,
                rows_used.max(r + 1),
                cols_used.max(c + 1),
                coords,
                used,
            );
            used[r * cols + c] = false;
            if hit {
                return true;
            }
        }
    }
    false
}

fn satisfies_direct_rule(g: &Graph, rows: usize, cols: usize, coords: &[(usize, usize)]) -> bool {
    let n = g.order();
    let mut a = vec![false; rows * rows];
    let mut b = vec![false; cols * cols];
    for x in 0..n {
        for y in 0..n {
            if g.has_edge(x, y) {
                let ((rx, cx), (ry, cy)) = (coords[x], coords[y]);
                a[rx * rows + ry] = true;
                b[cx * cols + cy] = true;
            }
        }
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            let ((rx, cx), (ry, cy)) = (coords[x], coords[y]);
            g.has_edge(x, y) == (a[rx * rows + ry] && b[cx * cols + cy])
        })
    })
}

/// Searches for independent sets `L_1..L_k` and a partition `𝒫` with singleton
/// intersections, the quotient rule, and constant row-neighbour counts in
/// `{0, 2}`; the rebuilt right factor is then checked to be `C_k`.
pub fn has_cycle_direct_factor(g: &Graph, k: usize) -> Result<Option<DirectDecomposition>> {
    check_cap(g, CYCLE_CAP, "cycle factor search order")?;
    let n = g.order();
    if k < 3 {
        return Err(Error::invalid("cycle length must be at least 3"));
    }
    if !n.is_multiple_of(k) {
        return Err(Error::invalid(format!("{k} does not divide {n}")));
    }
    if !g.is_connected() {
        return Err(Error::invalid("cycle factor search needs a connected graph"));
    }
    if k == n {
        return Ok(None);
    }
    let target = cycle(k)?;
    let mut found = None;
    Engine::new(g, Mode::Cycle).run(n / k, k, &mut |grid| {
        if !row_counts_constant(g, grid) {
            return false;
        }
        let dec = DirectDecomposition::from_grid(grid);
        if are_isomorphic(&dec.right_factor, &target).is_some() && dec.verify(g) {
            found = Some(dec);
            true
        } else {
            false
        }
    });
    Ok(found)
}

fn row_counts_constant(g: &Graph, grid: &Grid) -> bool {
    let mut d = vec![None; grid.rows * grid.rows];
    for (x, r, _) in grid.placed() {
        let mut per_row = vec![0usize; grid.rows];
        for y in g.neighbor_iter(x) {
            per_row[grid.pos[y].unwrap().0] += 1;
        }
        for (v, &count) in per_row.iter().enumerate() {
            if count != 0 && count != 2 {
                return false;
            }
            match d[r * grid.rows + v] {
                None => d[r * grid.rows + v] = Some(count),
                Some(prev) if prev != count => return false,
                _ => {}
            }
        }
    }
    true
}

/// Multiset of Cartesian-prime factors, sorted by canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationResult {
    pub factors: Vec<(Graph, usize)>,
    /// The Cartesian product of the factors was confirmed isomorphic to the input.
    pub certified: bool,
}

impl FactorizationResult {
    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// The Cartesian product of all factors with multiplicity.
    pub fn product(&self) -> Option<Graph> {
        let mut acc: Option<Graph> = None;
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = Some(match acc {
                    None => f.clone(),
                    Some(a) => cartesian_product(&a, f).ok()?.0,
                });
            }
        }
        acc
    }
}

fn cartesian_split(g: &Graph) -> Option<(Graph, Graph)> {
    let n = g.order();
    let engine = Engine::new(g, Mode::Cartesian);
    for d in (2..=n).take_while(|d| d * d <= n) {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut found = None;
        engine.run(n / d, d, &mut |grid| {
            found = Some((grid.quotient_a(), grid.quotient_b()));
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn prime_factors(g: &Graph, out: &mut Vec<Graph>) {
    if g.order() <= 1 {
        return;
    }
    match cartesian_split(g) {
        Some((a, b)) => {
            prime_factors(&a, out);
            prime_factors(&b, out);
        }
        None => out.push(g.clone()),
    }
}

/// The Cartesian-prime factors of a connected loopless graph. A single vertex
/// has no factors.
pub fn cartesian_prime_factorization(g: &Graph) -> Result<FactorizationResult> {
    check_cap(g, CARTESIAN_CAP, "cartesian factorization order")?;
    if !g.is_connected() {
        return Err(Error::invalid("cartesian factorization needs a connected graph"));
    }
    if g.has_loops() {
        return Err(Error::invalid("cartesian factorization does not accept loops"));
    }
    let mut primes = Vec::new();
    prime_factors(g, &mut primes);
    let mut grouped: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
    for p in &primes {
        *grouped.entry(canonical_form(p)).or_default() += 1;
    }
    let mut result = FactorizationResult {
        factors: grouped.into_iter().map(|(c, m)| (c.to_graph(), m)).collect(),
        certified: false,
    };
    result.certified = match result.product() {
        Some(p) => are_isomorphic(&p, g).is_some(),
        None => g.order() == 1,
    };
    Ok(result)
}

pub fn is_cartesian_prime(g: &Graph) -> Result<bool> {
    if g.order() < 2 {
        return Err(Error::invalid("primality needs at least two vertices"));
    }
    Ok(cartesian_prime_factorization(g)?.factor_count() == 1)
}

/// No Cartesian factor of order above 1 is shared. Single vertices have no
/// factors and are coprime to everything.
pub fn are_cartesian_coprime(g: &Graph, h: &Graph) -> Result<bool> {
    let fg = cartesian_prime_factorization(g)?;
    let fh = cartesian_prime_factorization(h)?;
    let forms: BTreeSet<CanonicalForm> = fg.factors.iter().map(|(f, _)| canonical_form(f)).collect();
    Ok(fh.factors.iter().all(|(f, _)| !forms.contains(&canonical_form(f))))
}

/// `g` is Cartesian-coprime to every connected component of `h`.
pub fn coprime_to_components(g: &Graph, h: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::invalid("left graph must be connected"));
    }
    for comp in h.components() {
        if !are_cartesian_coprime(g, &h.induced_subgraph(&comp))? {
            return Ok(false);
        }
    }
    Ok(true)
}
