use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group given by generators. An empty generator list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    /// Generators in 1-based cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self> {
        let generators = gens
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, x)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn chain(&self) -> StabilizerChain {
        StabilizerChain::new(self)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }
}

/// Outcome of the order test for the two giant groups of a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GiantKind {
    Alternating,
    Symmetric,
    Neither,
}

/// Decides whether a transitive group is `A_m` or `S_m` by comparing orders.
pub fn alternating_or_symmetric(group: &PermGroup) -> Result<GiantKind> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let m = group.degree();
    let full: BigUint = (1..=m).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    let order = group.order();
    if order == full {
        return Ok(GiantKind::Symmetric);
    }
    if order.clone() * BigUint::from(2u32) == full && group.generators().iter().all(|g| g.is_even())
    {
        return Ok(GiantKind::Alternating);
    }
    Ok(GiantKind::Neither)
}

/// Sorted orbit of `x` under `gens`.
pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut out = vec![x];
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}
