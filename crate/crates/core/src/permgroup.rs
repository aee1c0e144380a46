//! Permutation groups on `{1..n}` (stored 0-based): deterministic Schreier-Sims
//! with base points chosen as the first moved point, orbit counting on pairs and small
//! subsets, block systems.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A bijection of `{0..n}`; `images[i]` is the image of `i`. Products compose left
/// to right: `a.mul(b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parse cycle notation with 1-based points, e.g. `"(1 2 3)(4 5)"` or `"(1,2)"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = |m: &str| Error::InvalidPermutation(format!("{m} in '{s}'"));
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let t = s.trim();
        if t.is_empty() || t == "()" {
            return Ok(Permutation { images });
        }
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[1..close];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(bad(&format!("point {p} outside 1..{n}")));
                }
                if seen[p - 1] {
                    return Err(bad(&format!("point {p} repeated")));
                }
                seen[p - 1] = true;
            }
            for k in 0..pts.len() {
                images[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
            }
            rest = &rest[close + 1..];
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn mul(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.images[s];
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.images[j];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths (including fixed points), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse a generator list: generators separated by `;`, or by commas placed between
/// cycles, e.g. `"(1 2 3 4 5), (1 2)"` or `"(1,2,3);(1,2)"`.
pub fn parse_generators(s: &str, n: usize) -> Result<Vec<Permutation>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ';' if depth == 0 => parts.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    parts.push(cur);
    parts
        .iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| Permutation::parse(p, n))
        .collect()
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `trans[p]` maps the base point to `p`.
    trans: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut trans = vec![None; n];
        trans[base] = Some(Permutation::identity(n));
        Level { base, gens: Vec::new(), trans }
    }

    fn rebuild_orbit(&mut self) {
        let n = self.trans.len();
        self.trans = vec![None; n];
        self.trans[self.base] = Some(Permutation::identity(n));
        let mut queue = VecDeque::from([self.base]);
        while let Some(p) = queue.pop_front() {
            let u = self.trans[p].clone().expect("orbit point");
            for g in &self.gens {
                let q = g.apply(p);
                if self.trans[q].is_none() {
                    self.trans[q] = Some(u.mul(g));
                    queue.push_back(q);
                }
            }
        }
    }

    fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.trans.iter().enumerate().filter(|(_, t)| t.is_some()).map(|(i, _)| i)
    }

    fn orbit_len(&self) -> usize {
        self.trans.iter().filter(|t| t.is_some()).count()
    }
}

#[derive(Debug, Clone)]
struct Chain {
    levels: Vec<Level>,
}

impl Chain {
    /// Sift `g` from level `from`; returns the residue and the level where it left
    /// the chain (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let p = h.apply(level.base);
            match &level.trans[p] {
                None => return (h, l),
                Some(u) => h = h.mul(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Holt's SCHREIERSIMS: check Schreier generators level by level from the
    /// bottom, restarting at the level where a new strong generator lands.
    fn build(n: usize, gens: &[Permutation]) -> Chain {
        let mut chain = Chain { levels: Vec::new() };
        let nontrivial: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let Some(b) = (0..n).find(|&i| nontrivial.iter().any(|g| g.apply(i) != i)) else {
            return chain;
        };
        let mut top = Level::new(b, n);
        top.gens = nontrivial;
        top.rebuild_orbit();
        chain.levels.push(top);
        let mut cur = 0isize;
        while cur >= 0 {
            let c = cur as usize;
            match chain.first_failing_schreier_generator(c) {
                None => cur -= 1,
                Some((res, j)) => {
                    if j == chain.levels.len() {
                        let nb = (0..n)
                            .find(|&x| res.apply(x) != x)
                            .expect("nontrivial residue");
                        chain.levels.push(Level::new(nb, n));
                    }
                    for l in c + 1..=j {
                        chain.levels[l].gens.push(res.clone());
                        chain.levels[l].rebuild_orbit();
                    }
                    cur = j as isize;
                }
            }
        }
        chain
    }

    fn first_failing_schreier_generator(&self, c: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[c];
        for p in level.orbit() {
            let up = level.trans[p].as_ref().expect("orbit point");
            for s in &level.gens {
                let uq = level.trans[s.apply(p)].as_ref().expect("orbit is closed");
                let h = up.mul(s).mul(&uq.inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(&h, c + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }
}

/// A permutation group given by generators; the stabilizer chain is built on first
/// use and cached (the `OnceLock` is the single-writer guard).
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Chain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermutationGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Permutation::parse(s, degree)).collect::<Result<_>>()?;
        PermutationGroup::new(degree, gens)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_images((1..n).chain([0]).collect()).unwrap());
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images(t).unwrap());
        }
        PermutationGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| Chain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let c = self.chain();
        let (res, j) = c.sift(g, 0);
        j == c.levels.len() && res.is_identity()
    }

    /// Orbits on points, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for i in 0..self.degree {
                uf.union(i, g.apply(i));
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    fn require_degree2(&self) -> Result<()> {
        if self.degree < 2 {
            Err(Error::DegreeTooSmall)
        } else {
            Ok(())
        }
    }

    /// Number of orbits on ordered pairs of distinct points.
    pub fn ordered_pair_orbits(&self) -> usize {
        let n = self.degree;
        let mut uf = UnionFind::new(n * n);
        for g in &self.generators {
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        uf.union(a * n + b, g.apply(a) * n + g.apply(b));
                    }
                }
            }
        }
        let mut roots = HashSet::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    roots.insert(uf.find(a * n + b));
                }
            }
        }
        roots.len()
    }

    pub fn is_2transitive(&self) -> Result<bool> {
        self.require_degree2()?;
        Ok(self.ordered_pair_orbits() == 1)
    }

    pub fn is_2homogeneous(&self) -> Result<bool> {
        self.require_degree2()?;
        Ok(self.set_orbit_sizes(2).len() == 1)
    }

    /// Sizes of the orbits on `k`-element subsets, sorted ascending.
    pub fn set_orbit_sizes(&self, k: usize) -> Vec<usize> {
        let n = self.degree;
        assert!(n <= 20, "subset orbits only for small degree");
        let subsets: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
        let index: std::collections::HashMap<u32, usize> =
            subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut uf = UnionFind::new(subsets.len());
        for g in &self.generators {
            for (i, &m) in subsets.iter().enumerate() {
                let mut img = 0u32;
                for p in 0..n {
                    if m & (1 << p) != 0 {
                        img |= 1 << g.apply(p);
                    }
                }
                uf.union(i, index[&img]);
            }
        }
        let mut sizes: Vec<usize> = uf.classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Number of orbits on all ordered pairs, diagonal included (the rank of the
    /// permutation character's square norm for transitive groups).
    pub fn orbital_count(&self) -> usize {
        self.ordered_pair_orbits() + self.orbits().len()
    }

    /// Stabilizer of point `i` (0-based), generated by Schreier generators.
    pub fn point_stabilizer(&self, i: usize) -> PermutationGroup {
        let n = self.degree;
        let mut trans: Vec<Option<Permutation>> = vec![None; n];
        trans[i] = Some(Permutation::identity(n));
        let mut queue = VecDeque::from([i]);
        while let Some(p) = queue.pop_front() {
            let u = trans[p].clone().unwrap();
            for g in &self.generators {
                let q = g.apply(p);
                if trans[q].is_none() {
                    trans[q] = Some(u.mul(g));
                    queue.push_back(q);
                }
            }
        }
        let mut gens = BTreeSet::new();
        for p in 0..n {
            let Some(up) = &trans[p] else { continue };
            for s in &self.generators {
                let uq = trans[s.apply(p)].as_ref().unwrap();
                let h = up.mul(s).mul(&uq.inverse());
                if !h.is_identity() {
                    gens.insert(h);
                }
            }
        }
        PermutationGroup::new(n, gens.into_iter().collect()).unwrap()
    }

    /// Nontrivial block systems of a transitive group, each a sorted partition.
    pub fn block_systems(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        let mut found: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = (1..n).map(|b| vec![0, b]).collect();
        let mut seen_seeds: HashSet<Vec<usize>> = HashSet::new();
        while let Some(seed) = frontier.pop() {
            if !seen_seeds.insert(seed.clone()) {
                continue;
            }
            let part = self.minimal_blocks(&seed);
            let block0 = part.iter().find(|c| c.contains(&0)).unwrap().clone();
            if block0.len() == n {
                continue;
            }
            if found.insert(part) {
                for c in 0..n {
                    if !block0.contains(&c) {
                        let mut s = block0.clone();
                        s.push(c);
                        s.sort_unstable();
                        frontier.push(s);
                    }
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Finest block system in which all of `seed` lie in one block (Atkinson).
    fn minimal_blocks(&self, seed: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        let mut queue = VecDeque::new();
        for &s in &seed[1..] {
            if uf.union(seed[0], s) {
                queue.push_back((seed[0], s));
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.generators {
                let (c, d) = (g.apply(a), g.apply(b));
                let (rc, rd) = (uf.find(c), uf.find(d));
                if rc != rd {
                    uf.union(rc, rd);
                    queue.push_back((rc, rd));
                }
            }
        }
        uf.classes()
    }

    /// All elements, sorted lexicographically by image vector.
    pub fn enumerate_elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::GroupTooLarge(order));
        }
        let chain = self.chain();
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in chain.levels.iter().rev() {
            let reps: Vec<Permutation> = level.trans.iter().flatten().cloned().collect();
            let mut next = Vec::with_capacity(elems.len() * reps.len());
            for e in &elems {
                for u in &reps {
                    next.push(e.mul(u));
                }
            }
            elems = next;
        }
        elems.sort();
        Ok(elems)
    }

    /// Is every element's cycle type in the group?
    pub fn cycle_types(&self, cap: u128) -> Result<BTreeSet<Vec<usize>>> {
        Ok(self.enumerate_elements(cap)?.iter().map(|g| g.cycle_type()).collect())
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_in_alternating(&self) -> bool {
        self.generators.iter().all(|g| g.is_even())
    }

    /// Conjugate by a relabeling: the group `{pi^-1 g pi}`.
    pub fn conjugate(&self, pi: &Permutation) -> PermutationGroup {
        let inv = pi.inverse();
        let gens = self.generators.iter().map(|g| inv.mul(g).mul(pi)).collect();
        PermutationGroup::new(self.degree, gens).unwrap()
    }
}

pub const DEFAULT_ELEMENT_CAP: u128 = 1_000_000;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = self.find(i);
            map.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = map.into_values().collect();
        out.sort();
        out
    }
}
