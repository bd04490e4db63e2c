//! Block systems: minimal blocks, induced actions and block kernels.

use std::collections::VecDeque;

use crate::chain::{pointwise_stabilizer, StabilizerChain};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A partition of `0..n` into blocks of equal size. Blocks are sorted
/// internally and ordered by their smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    parts: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.retain(|p| !p.is_empty());
        parts.sort_by_key(|p| p[0]);
        let size = parts.first().map_or(0, Vec::len);
        let mut block_of = vec![usize::MAX; degree];
        for (i, p) in parts.iter().enumerate() {
            if p.len() != size {
                return Err(Error::InvalidPartition("blocks of unequal size".into()));
            }
            for &x in p {
                if x >= degree || block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "point {x} repeated or out of range"
                    )));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(
                "blocks do not cover all points".into(),
            ));
        }
        Ok(BlockSystem { parts, block_of })
    }

    pub fn singletons(degree: usize) -> Self {
        BlockSystem {
            parts: (0..degree).map(|x| vec![x]).collect(),
            block_of: (0..degree).collect(),
        }
    }

    pub fn whole(degree: usize) -> Self {
        BlockSystem {
            parts: vec![(0..degree).collect()],
            block_of: vec![0; degree],
        }
    }

    /// The system generated by a single block: its orbit under `group`.
    pub fn from_block(group: &PermGroup, block: &[usize]) -> Result<Self> {
        let n = group.degree();
        let mut first = block.to_vec();
        first.sort_unstable();
        let mut parts = vec![first.clone()];
        let mut queue = VecDeque::from([first]);
        let mut covered = vec![false; n];
        for &x in &parts[0] {
            covered[x] = true;
        }
        while let Some(b) = queue.pop_front() {
            for g in group.generators() {
                let mut img: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
                img.sort_unstable();
                if covered[img[0]] {
                    if !parts.contains(&img) {
                        return Err(Error::NotInvariant);
                    }
                    continue;
                }
                for &x in &img {
                    if covered[x] {
                        return Err(Error::NotInvariant);
                    }
                    covered[x] = true;
                }
                parts.push(img.clone());
                queue.push_back(img);
            }
        }
        Self::new(n, parts)
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.parts.len()
    }

    pub fn block_size(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() <= 1 || self.num_blocks() <= 1
    }

    /// Image of each block index under `g`, or `None` if `g` breaks a block.
    pub fn block_image(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let b = self.block_of[g.apply(p[0])];
            if p.iter().any(|&x| self.block_of[g.apply(x)] != b) {
                return None;
            }
            images.push(b);
        }
        Permutation::from_images(images).ok()
    }

    pub fn is_invariant(&self, group: &PermGroup) -> bool {
        group.degree() == self.degree()
            && group
                .generators()
                .iter()
                .all(|g| self.block_image(g).is_some())
    }
}

/// Smallest block of `group` containing `0` and `beta` (Atkinson's method).
pub fn minimal_block(group: &PermGroup, beta: usize) -> Vec<usize> {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = VecDeque::new();
    if beta != 0 {
        parent[beta] = 0;
        queue.push_back((0usize, beta));
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in group.generators() {
            let a = find(&mut parent, g.apply(x));
            let b = find(&mut parent, g.apply(y));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
                queue.push_back((lo, hi));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..n).filter(|&x| find(&mut parent, x) == root).collect()
}

/// Minimal nontrivial blocks containing `0`, i.e. blocks with no block
/// strictly between `{0}` and them. For a primitive group the only atom is
/// the whole point set. Ordered by their lowest second point.
pub fn atoms(group: &PermGroup) -> Result<Vec<Vec<usize>>> {
    let n = group.degree();
    if n < 2 {
        return Ok(Vec::new());
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let blocks: Vec<Vec<usize>> = (0..n)
        .map(|b| {
            if b == 0 {
                vec![0]
            } else {
                minimal_block(group, b)
            }
        })
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for beta in 1..n {
        let b = &blocks[beta];
        if out.contains(b) {
            continue;
        }
        if b.iter().filter(|&&x| x != 0).all(|&x| &blocks[x] == b) {
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// A system of minimal nontrivial blocks, or `None` if the group is
/// primitive. Ties between equal sizes go to the lowest second point.
pub fn minimal_block_system(group: &PermGroup) -> Result<Option<BlockSystem>> {
    let n = group.degree();
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut best: Option<Vec<usize>> = None;
    for beta in 1..n {
        let b = minimal_block(group, beta);
        if b.len() < n && best.as_ref().is_none_or(|c| b.len() < c.len()) {
            best = Some(b);
        }
    }
    best.map(|b| BlockSystem::from_block(group, &b)).transpose()
}

pub fn is_primitive(group: &PermGroup) -> Result<bool> {
    if group.degree() < 2 {
        return Ok(group.is_transitive());
    }
    Ok(minimal_block_system(group)?.is_none())
}

/// The action on block indices, with the image of each generator.
pub fn induced_action(
    group: &PermGroup,
    system: &BlockSystem,
) -> Result<(PermGroup, Vec<Permutation>)> {
    if system.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            found: system.degree(),
        });
    }
    let images = group
        .generators()
        .iter()
        .map(|g| system.block_image(g).ok_or(Error::NotInvariant))
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<Permutation> = images
        .iter()
        .filter(|p| !p.is_identity())
        .cloned()
        .collect();
    Ok((PermGroup::new(system.num_blocks(), gens)?, images))
}

/// Generators acting on the points followed by the block indices, shifted by
/// `degree`.
fn augmented(group: &PermGroup, system: &BlockSystem) -> Result<PermGroup> {
    let n = group.degree();
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let blocks = system.block_image(g).ok_or(Error::NotInvariant)?;
            let mut images: Vec<usize> = g.images().collect();
            images.extend(blocks.images().map(|b| b + n));
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n + system.num_blocks(), gens)
}

fn restrict(group: &PermGroup, degree: usize, points: &[usize]) -> Result<PermGroup> {
    let mut local = vec![usize::MAX; degree];
    for (i, &x) in points.iter().enumerate() {
        local[x] = i;
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| Permutation::from_images(points.iter().map(|&x| local[g.apply(x)]).collect()))
        .filter(|p| p.as_ref().map_or(true, |p| !p.is_identity()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(points.len(), gens)
}

/// The elements fixing every block setwise.
pub fn block_kernel(group: &PermGroup, system: &BlockSystem) -> Result<PermGroup> {
    let n = group.degree();
    let aug = augmented(group, system)?;
    let block_points: Vec<usize> = (n..n + system.num_blocks()).collect();
    let stab = pointwise_stabilizer(&aug, &block_points)?;
    let all: Vec<usize> = (0..n).collect();
    restrict(&stab, n + system.num_blocks(), &all)
}

/// The action of the setwise stabilizer of block `index` on that block, with
/// the block's points relabelled `0..size` in increasing order.
pub fn block_stabilizer_action(
    group: &PermGroup,
    system: &BlockSystem,
    index: usize,
) -> Result<PermGroup> {
    let n = group.degree();
    let aug = augmented(group, system)?;
    let chain = StabilizerChain::with_base_prefix(&aug, &[n + index]);
    let stab = PermGroup::new(aug.degree(), chain.stabilizer_generators(1))?;
    restrict(&stab, aug.degree(), &system.parts()[index])
}

/// The restriction to `points` of a group that leaves the set invariant.
pub fn restrict_to(group: &PermGroup, points: &[usize]) -> Result<PermGroup> {
    let mut inside = vec![false; group.degree()];
    for &x in points {
        inside[x] = true;
    }
    for g in group.generators() {
        if points.iter().any(|&x| !inside[g.apply(x)]) {
            return Err(Error::NotInvariant);
        }
    }
    restrict(group, group.degree(), points)
}
