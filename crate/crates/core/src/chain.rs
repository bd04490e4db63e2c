//! Stabilizer chains via deterministic Schreier-Sims.
//!
//! Level `i` holds the base point `b_i`, strong generators of the pointwise
//! stabilizer `G^(i)` of `b_0, …, b_{i-1}`, and the basic orbit `b_i^{G^(i)}`
//! stored as a Schreier vector. Every element factors uniquely as
//! `u_{m-1} ⋯ u_1 u_0` with `u_i` a coset representative of level `i`.

use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    inverses: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `edge[y]` is the index of the generator that first reached `y`.
    edge: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            inverses: Vec::new(),
            orbit: Vec::new(),
            edge: vec![NOT_IN_ORBIT; degree],
        };
        level.recompute_orbit();
        level
    }

    fn add_generator(&mut self, g: Permutation) {
        self.inverses.push(g.inverse());
        self.generators.push(g);
    }

    fn recompute_orbit(&mut self) {
        self.edge.iter_mut().for_each(|e| *e = NOT_IN_ORBIT);
        self.orbit.clear();
        self.edge[self.base_point] = ROOT;
        self.orbit.push(self.base_point);
        let mut queue = VecDeque::from([self.base_point]);
        while let Some(x) = queue.pop_front() {
            for (i, g) in self.generators.iter().enumerate() {
                let y = g.apply(x);
                if self.edge[y] == NOT_IN_ORBIT {
                    self.edge[y] = i as u32;
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    /// Basic orbit in discovery order (base point first).
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn in_orbit(&self, y: usize) -> bool {
        self.edge[y] != NOT_IN_ORBIT
    }

    /// Coset representative `u` with `base_point^u = y`.
    pub fn transversal(&self, y: usize) -> Option<Permutation> {
        if !self.in_orbit(y) {
            return None;
        }
        let mut path = Vec::new();
        let mut z = y;
        while self.edge[z] != ROOT {
            let i = self.edge[z] as usize;
            path.push(i);
            z = self.inverses[i].apply(z);
        }
        let mut u = Permutation::identity(self.edge.len());
        for &i in path.iter().rev() {
            u = u.then(&self.generators[i]);
        }
        Some(u)
    }

    /// `h * u_y^-1`, tracing the Schreier vector instead of building `u_y`.
    fn strip(&self, h: &Permutation, y: usize) -> Permutation {
        let mut out = h.clone();
        let mut z = y;
        while self.edge[z] != ROOT {
            let i = self.edge[z] as usize;
            out = out.then(&self.inverses[i]);
            z = self.inverses[i].apply(z);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(group: &PermGroup) -> Self {
        Self::with_base_prefix(group, &[])
    }

    /// Builds a chain whose base starts with `prefix` (redundant points are
    /// kept as levels with trivial basic orbits). Remaining base points are
    /// appended in increasing order of first moved point.
    pub fn with_base_prefix(group: &PermGroup, prefix: &[usize]) -> Self {
        Self::build(group.degree(), group.generators(), prefix)
    }

    pub(crate) fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for g in &strong {
            if chain
                .levels
                .iter()
                .all(|l| g.apply(l.base_point) == l.base_point)
            {
                let b = g.first_moved_point().expect("non-identity");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &strong {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_generator(g.clone());
                if g.apply(chain.levels[i].base_point) != chain.levels[i].base_point {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.recompute_orbit();
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.schreier_test(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.first_moved_point().expect("sift residue is non-identity");
                        chain.levels.push(Level::new(degree, b));
                    }
                    for l in lvl + 1..=j {
                        chain.levels[l].add_generator(h.clone());
                        chain.levels[l].recompute_orbit();
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// Returns a Schreier generator of level `i` that does not sift through
    /// the levels below, together with the level where sifting stopped.
    fn schreier_test(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        for &beta in &level.orbit {
            reps[beta] = level.transversal(beta);
        }
        for &beta in &level.orbit {
            let u = reps[beta].as_ref().expect("orbit point");
            for s in &level.generators {
                let y = s.apply(beta);
                let uy = reps[y].as_ref().expect("orbit closed");
                let g = u.then(s).then(&uy.inverse());
                if g.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(&g, i + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let y = h.apply(level.base_point);
            if !level.in_orbit(y) {
                return (h, l);
            }
            h = level.strip(&h, y);
        }
        (h, self.levels.len())
    }

    /// Sifts `g`; returns the residue and the level where it stopped.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g, 0)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (h, j) = self.sift(p);
        Ok(j == self.levels.len() && h.is_identity())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map_or(&[], |l| &l.generators)
    }

    /// Strong generators of the pointwise stabilizer of the first `depth`
    /// base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map_or_else(Vec::new, |l| l.generators.clone())
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    pub fn order_from(&self, depth: usize) -> BigUint {
        self.levels[depth.min(self.levels.len())..]
            .iter()
            .fold(BigUint::from(1u32), |acc, l| {
                acc * BigUint::from(l.orbit.len())
            })
    }

    pub fn log2_order(&self) -> f64 {
        self.levels
            .iter()
            .map(|l| (l.orbit.len() as f64).log2())
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// Visits every group element once (`u_{m-1} ⋯ u_0` order). Stops early
    /// when the visitor returns `false`.
    pub fn for_each_element<F: FnMut(&Permutation) -> bool>(&self, mut visit: F) {
        let reps: Vec<Vec<Permutation>> = self
            .levels
            .iter()
            .map(|l| l.orbit.iter().map(|&y| l.transversal(y).unwrap()).collect())
            .collect();
        fn rec<F: FnMut(&Permutation) -> bool>(
            reps: &[Vec<Permutation>],
            depth: usize,
            acc: &Permutation,
            visit: &mut F,
        ) -> bool {
            if depth == 0 {
                return visit(acc);
            }
            for u in &reps[depth - 1] {
                // acc holds u_{m-1} ⋯ u_depth; append u_{depth-1} on the right.
                if !rec(reps, depth - 1, &acc.then(u), visit) {
                    return false;
                }
            }
            true
        }
        rec(
            &reps,
            reps.len(),
            &Permutation::identity(self.degree),
            &mut visit,
        );
    }
}

/// Pointwise stabilizer of `points` in `group`.
pub fn pointwise_stabilizer(group: &PermGroup, points: &[usize]) -> Result<PermGroup> {
    for &p in points {
        if p >= group.degree() {
            return Err(Error::Precondition(format!(
                "point {p} outside degree {}",
                group.degree()
            )));
        }
    }
    let chain = StabilizerChain::with_base_prefix(group, points);
    PermGroup::new(group.degree(), chain.stabilizer_generators(points.len()))
}

/// Whether `points` form a base of `group`.
pub fn is_base(group: &PermGroup, points: &[usize]) -> bool {
    if points.iter().any(|&p| p >= group.degree()) {
        return false;
    }
    let chain = StabilizerChain::with_base_prefix(group, points);
    chain.levels[points.len().min(chain.levels.len())..]
        .iter()
        .all(|l| l.orbit.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(catalog::symmetric(4).order(), BigUint::from(24u32));
        assert_eq!(catalog::alternating(5).order(), BigUint::from(60u32));
        assert_eq!(PermGroup::trivial(5).order(), BigUint::from(1u32));
        assert_eq!(catalog::symmetric(8).order(), BigUint::from(40320u32));
        assert_eq!(catalog::psl32().order(), BigUint::from(168u32));
    }

    #[test]
    fn membership_in_a4() {
        let chain = catalog::alternating(4).chain();
        let three_cycle = Permutation::parse_cycles(4, "(1 2 3)").unwrap();
        let transposition = Permutation::parse_cycles(4, "(1 2)").unwrap();
        assert!(chain.contains(&three_cycle).unwrap());
        assert!(!chain.contains(&transposition).unwrap());
        assert!(chain.contains(&Permutation::identity(4)).unwrap());
        assert!(chain.contains(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn pointwise_stabilizers() {
        let s4 = catalog::symmetric(4);
        assert!(pointwise_stabilizer(&s4, &[0, 1, 2]).unwrap().is_trivial());
        assert_eq!(
            pointwise_stabilizer(&s4, &[0]).unwrap().order(),
            BigUint::from(6u32)
        );
        assert!(
            pointwise_stabilizer(&catalog::alternating(4), &[0, 1])
                .unwrap()
                .order()
                == BigUint::from(1u32)
        );
    }

    #[test]
    fn base_of_chain_is_a_base() {
        for g in [
            catalog::symmetric(6),
            catalog::alternating(7),
            catalog::dihedral(12),
            catalog::psl32(),
        ] {
            let chain = g.chain();
            assert!(is_base(&g, &chain.base()));
            for gen in g.generators() {
                assert!(chain.contains(gen).unwrap());
            }
        }
    }

    #[test]
    fn redundant_prefix_points_are_kept() {
        let g = catalog::cyclic(5);
        let chain = StabilizerChain::with_base_prefix(&g, &[3, 1, 0]);
        assert_eq!(&chain.base()[..3], &[3, 1, 0]);
        assert_eq!(chain.order(), BigUint::from(5u32));
    }

    #[test]
    fn element_enumeration_counts() {
        let chain = catalog::symmetric(5).chain();
        let mut n = 0;
        let mut all = std::collections::HashSet::new();
        chain.for_each_element(|g| {
            n += 1;
            all.insert(g.clone());
            true
        });
        assert_eq!(n, 120);
        assert_eq!(all.len(), 120);
    }
}
