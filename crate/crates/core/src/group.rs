//! Permutation groups given by generators, with a Schreier–Sims stabilizer chain
//! for exact order, membership and element enumeration.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default ceiling for [`PermGroup::elements`] when the caller has no opinion.
pub const DEFAULT_ELEMENT_CAP: u128 = 5_000_000;

/// Environment variable that overrides [`DEFAULT_ELEMENT_CAP`].
pub const ELEMENT_CAP_ENV: &str = "PRODSTAB_MAX_GROUP_ELEMENTS";

/// The element-enumeration cap, honouring the environment override.
pub fn element_cap() -> u128 {
    std::env::var(ELEMENT_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    orbit: Vec<usize>,
    /// `transversal[p]` sends the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> StabChain {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in base_prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut chain = StabChain {
            degree,
            levels: base
                .iter()
                .map(|&b| Level {
                    base_point: b,
                    orbit: vec![b],
                    transversal: Vec::new(),
                })
                .collect(),
            base,
            strong,
        };

        let mut i = chain.base.len();
        while i > 0 {
            let lvl = i - 1;
            chain.recompute_level(lvl);
            match chain.first_failing_schreier(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.base.len() {
                        let b = h.first_moved().unwrap();
                        chain.base.push(b);
                        chain.levels.push(Level {
                            base_point: b,
                            orbit: vec![b],
                            transversal: Vec::new(),
                        });
                    }
                    chain.strong.push(h);
                    i = j + 1;
                }
            }
        }
        // Trailing levels that only carry trivial orbits are harmless; drop them so the
        // base is irredundant at the tail.
        while chain.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            chain.levels.pop();
            chain.base.pop();
        }
        chain
    }

    fn level_gens(&self, lvl: usize) -> impl Iterator<Item = &Permutation> + '_ {
        let prefix = &self.base[..lvl];
        self.strong
            .iter()
            .filter(move |g| prefix.iter().all(|&b| g.apply(b) == b))
    }

    fn recompute_level(&mut self, lvl: usize) {
        let gens: Vec<Permutation> = self.level_gens(lvl).cloned().collect();
        let b = self.levels[lvl].base_point;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[b] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![b];
        let mut queue = VecDeque::from([b]);
        while let Some(p) = queue.pop_front() {
            let tp = transversal[p].clone().unwrap();
            for g in &gens {
                let q = g.apply(p);
                if transversal[q].is_none() {
                    transversal[q] = Some(tp.then(g));
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        self.levels[lvl].orbit = orbit;
        self.levels[lvl].transversal = transversal;
    }

    /// First Schreier generator at `lvl` that does not sift through the deeper levels,
    /// as `(residue, level where sifting stopped)`.
    fn first_failing_schreier(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let gens: Vec<&Permutation> = self.level_gens(lvl).collect();
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let tp = level.transversal[p].as_ref().unwrap();
            for g in &gens {
                let q = g.apply(p);
                let tq = level.transversal[q].as_ref().unwrap();
                let schreier = tp.then(g).then(&tq.inverse());
                let (h, j) = self.sift(schreier, lvl + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn sift(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let x = h.apply(level.base_point);
            match level.transversal.get(x).and_then(|t| t.as_ref()) {
                Some(t) => h = h.then(&t.inverse()),
                None => return (h, j),
            }
        }
        let end = self.levels.len();
        (h, end)
    }

    fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    fn contains(&self, p: &Permutation) -> bool {
        let (h, _) = self.sift(p.clone(), 0);
        h.is_identity()
    }
}

/// A permutation group on `0..degree` given by generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    /// The full symmetric group on `0..degree`.
    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::rotation(degree, 1));
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images_unchecked(t));
        }
        PermGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    /// Exact group order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    /// Orbit of `point` under the generators, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let p = out[i];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                }
            }
            i += 1;
        }
        out
    }

    /// Streams every element exactly once; refuses when the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Elements> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapExceeded {
                what: "group order",
                value: order,
                limit: cap,
            });
        }
        Ok(Elements::new(self.chain().clone()))
    }

    /// Order by brute-force closure under multiplication; `None` if more than
    /// `limit` elements appear. Independent of the stabilizer chain.
    pub fn closure_order(&self, limit: usize) -> Option<u128> {
        closure(self.degree, &self.generators, limit).map(|s| s.len() as u128)
    }

    /// The subgroup `{p ∈ G : set^p = set}`, returned by generators.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.last() {
            if v >= self.degree {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: self.degree,
                });
            }
        }
        if sorted.is_empty() || sorted.len() == self.degree {
            return Ok(self.clone());
        }
        let chain = StabChain::build(self.degree, &self.generators, &sorted);
        let mut member = vec![false; self.degree];
        for &v in &sorted {
            member[v] = true;
        }
        let mut found = PermGroup::trivial(self.degree);
        let mut search = SetStabSearch {
            chain: &chain,
            member: &member,
            sorted: &sorted,
            found: &mut found,
        };
        search.descend(0, Permutation::identity(self.degree));
        Ok(found)
    }

    /// Adds a generator unless it is already a member; returns whether it was added.
    pub(crate) fn absorb(&mut self, p: Permutation) -> bool {
        if self.contains(&p) {
            return false;
        }
        self.generators.push(p);
        self.chain = OnceLock::new();
        true
    }
}

struct SetStabSearch<'a> {
    chain: &'a StabChain,
    member: &'a [bool],
    sorted: &'a [usize],
    found: &'a mut PermGroup,
}

impl SetStabSearch<'_> {
    /// `suffix` is the product of the transversal choices made at shallower levels,
    /// applied after the deeper ones.
    fn descend(&mut self, lvl: usize, suffix: Permutation) {
        if lvl == self.chain.levels.len() {
            if !suffix.is_identity() && suffix.stabilizes(self.sorted) {
                self.found.absorb(suffix);
            }
            return;
        }
        let level = &self.chain.levels[lvl];
        let in_set = self.member[level.base_point];
        for &x in &level.orbit {
            let image = suffix.apply(x);
            if self.member[image] != in_set {
                continue;
            }
            let t = level.transversal[x].as_ref().unwrap();
            self.descend(lvl + 1, t.then(&suffix));
        }
    }
}

/// Iterator over all group elements, driven by the stabilizer chain.
#[derive(Debug)]
pub struct Elements {
    chain: StabChain,
    digits: Vec<usize>,
    done: bool,
}

impl Elements {
    fn new(chain: StabChain) -> Elements {
        let k = chain.levels.len();
        Elements {
            chain,
            digits: vec![0; k],
            done: false,
        }
    }
}

impl Iterator for Elements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut g = Permutation::identity(self.chain.degree);
        for (lvl, &d) in self.digits.iter().enumerate().rev() {
            let level = &self.chain.levels[lvl];
            let t = level.transversal[level.orbit[d]].as_ref().unwrap();
            g = g.then(t);
        }
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.chain.levels[i].orbit.len() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(g)
    }
}

/// All elements generated by `gens`, or `None` when more than `limit` appear.
pub fn closure(degree: usize, gens: &[Permutation], limit: usize) -> Option<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PermGroup", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}
