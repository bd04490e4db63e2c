//! Colorings of point sets and the search for color-preserving elements.

use std::collections::HashMap;

use crate::chain::{Level, StabilizerChain};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A map point → color with every color below `num_colors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        if num_colors == 0 && !colors.is_empty() {
            return Err(Error::InvalidPartition("zero colors".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::InvalidPartition(format!(
                "color {c} not below {num_colors}"
            )));
        }
        Ok(Coloring { colors, num_colors })
    }

    pub fn constant(degree: usize) -> Self {
        Coloring {
            colors: vec![0; degree],
            num_colors: 1,
        }
    }

    /// Colors points by the index of the part containing them.
    pub fn from_parts(degree: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut colors = vec![u32::MAX; degree];
        for (i, part) in parts.iter().enumerate() {
            for &x in part {
                if x >= degree || colors[x] != u32::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "point {x} repeated or out of range"
                    )));
                }
                colors[x] = i as u32;
            }
        }
        if colors.contains(&u32::MAX) {
            return Err(Error::InvalidPartition(
                "parts do not cover all points".into(),
            ));
        }
        Self::new(colors, parts.len().max(1) as u32)
    }

    pub fn degree(&self) -> usize {
        self.colors.len()
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn color(&self, x: usize) -> u32 {
        self.colors[x]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Parts indexed by color (possibly empty).
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.num_colors as usize];
        for (x, &c) in self.colors.iter().enumerate() {
            parts[c as usize].push(x);
        }
        parts
    }

    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        (0..self.colors.len()).all(|x| self.colors[g.apply(x)] == self.colors[x])
    }
}

/// A 2-partition, stored as its part 0. Part 0 always contains point 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoPartition {
    degree: usize,
    part0: Vec<usize>,
}

impl TwoPartition {
    /// Normalizes orientation so that part 0 holds point 0.
    pub fn new(degree: usize, part: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut member = vec![false; degree];
        for x in part {
            if x >= degree {
                return Err(Error::InvalidPartition(format!(
                    "point {x} outside degree {degree}"
                )));
            }
            member[x] = true;
        }
        if degree > 0 && !member[0] {
            member.iter_mut().for_each(|m| *m = !*m);
        }
        Ok(TwoPartition {
            degree,
            part0: (0..degree).filter(|&x| member[x]).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn part0(&self) -> &[usize] {
        &self.part0
    }

    pub fn part1(&self) -> Vec<usize> {
        let mut member = vec![false; self.degree];
        for &x in &self.part0 {
            member[x] = true;
        }
        (0..self.degree).filter(|&x| !member[x]).collect()
    }

    pub fn to_coloring(&self) -> Coloring {
        let mut colors = vec![1u32; self.degree];
        for &x in &self.part0 {
            colors[x] = 0;
        }
        Coloring {
            colors,
            num_colors: 2,
        }
    }
}

/// Joins several colorings into one whose classes are the common refinement.
pub fn product_coloring(degree: usize, colorings: &[Coloring]) -> Result<Coloring> {
    for c in colorings {
        if c.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: c.degree(),
            });
        }
    }
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut colors = Vec::with_capacity(degree);
    for x in 0..degree {
        let key: Vec<u32> = colorings.iter().map(|c| c.color(x)).collect();
        let next = ids.len() as u32;
        colors.push(*ids.entry(key).or_insert(next));
    }
    Ok(Coloring {
        colors,
        num_colors: (ids.len() as u32).max(1),
    })
}

/// Searches the subgroup described by `levels` (a tail of a stabilizer chain)
/// for a non-identity element preserving `colors`.
pub(crate) fn find_color_preserving(
    degree: usize,
    levels: &[Level],
    colors: &[u32],
) -> Option<Permutation> {
    fn rec(
        levels: &[Level],
        depth: usize,
        prefix: &Permutation,
        trivial_so_far: bool,
        colors: &[u32],
    ) -> Option<Permutation> {
        if depth == levels.len() {
            if trivial_so_far {
                return None;
            }
            let ok = (0..colors.len()).all(|x| colors[prefix.apply(x)] == colors[x]);
            return ok.then(|| prefix.clone());
        }
        let level = &levels[depth];
        let b = level.base_point();
        for &gamma in level.orbit() {
            // image of b under u * prefix
            let image = prefix.apply(gamma);
            if colors[image] != colors[b] {
                continue;
            }
            let u = level.transversal(gamma).expect("orbit point");
            let next = u.then(prefix);
            if let Some(found) = rec(
                levels,
                depth + 1,
                &next,
                trivial_so_far && gamma == b,
                colors,
            ) {
                return Some(found);
            }
        }
        None
    }
    rec(levels, 0, &Permutation::identity(degree), true, colors)
}

/// Base order that makes color-preserving searches prune early: points of
/// small color classes first.
pub(crate) fn coloring_base(coloring: &Coloring) -> Vec<usize> {
    let mut sizes = vec![0usize; coloring.num_colors() as usize];
    for &c in coloring.colors() {
        sizes[c as usize] += 1;
    }
    let mut pts: Vec<usize> = (0..coloring.degree()).collect();
    pts.sort_by_key(|&x| (sizes[coloring.color(x) as usize], x));
    pts
}

/// A non-identity element of `group` preserving every coloring, if any.
pub fn color_preserving_element(
    group: &PermGroup,
    colorings: &[Coloring],
) -> Result<Option<Permutation>> {
    let joint = product_coloring(group.degree(), colorings)?;
    let chain = StabilizerChain::with_base_prefix(group, &coloring_base(&joint));
    Ok(find_color_preserving(
        group.degree(),
        chain.levels(),
        joint.colors(),
    ))
}

/// True iff the identity is the only element preserving all colorings.
pub fn coloring_stabilizer_is_trivial(group: &PermGroup, colorings: &[Coloring]) -> Result<bool> {
    Ok(color_preserving_element(group, colorings)?.is_none())
}

pub fn partitions_stabilizer_is_trivial(
    group: &PermGroup,
    partitions: &[TwoPartition],
) -> Result<bool> {
    let cs: Vec<Coloring> = partitions.iter().map(TwoPartition::to_coloring).collect();
    coloring_stabilizer_is_trivial(group, &cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn singletons_distinguish_s3() {
        let s3 = catalog::symmetric(3);
        let c = Coloring::new(vec![0, 1, 2], 3).unwrap();
        assert!(coloring_stabilizer_is_trivial(&s3, &[c]).unwrap());
        let c = Coloring::new(vec![0, 0, 1], 2).unwrap();
        assert!(!coloring_stabilizer_is_trivial(&s3, &[c]).unwrap());
    }

    #[test]
    fn c4_half_split_is_distinguishing() {
        let c4 = catalog::cyclic(4);
        let p = TwoPartition::new(4, [0, 1]).unwrap();
        assert!(partitions_stabilizer_is_trivial(&c4, &[p]).unwrap());
    }

    #[test]
    fn two_partition_orientation() {
        let p = TwoPartition::new(5, [1, 3]).unwrap();
        assert_eq!(p.part0(), &[0, 2, 4]);
        assert_eq!(p.part1(), vec![1, 3]);
    }

    #[test]
    fn invalid_colorings_rejected() {
        assert!(Coloring::new(vec![0, 3], 2).is_err());
        assert!(Coloring::from_parts(3, &[vec![0, 1]]).is_err());
        assert!(Coloring::from_parts(3, &[vec![0, 1], vec![1, 2]]).is_err());
        let g = catalog::symmetric(3);
        assert!(coloring_stabilizer_is_trivial(&g, &[Coloring::constant(4)]).is_err());
    }

    #[test]
    fn found_element_preserves_colors() {
        let g = catalog::symmetric(6);
        let c = Coloring::new(vec![0, 0, 1, 1, 2, 3], 4).unwrap();
        let e = color_preserving_element(&g, std::slice::from_ref(&c))
            .unwrap()
            .unwrap();
        assert!(!e.is_identity());
        assert!(c.is_preserved_by(&e));
    }
}
