//! Distinguishing partitions and the synthesis of 2-partition certificates.
//!
//! A certificate for a transitive group `P` of degree `k` is a list of
//! 2-partitions of `0..k` whose joint (color-preserving) stabilizer in `P` is
//! trivial. Primitive groups use a distinguishing partition or singletons
//! converted through binary digits. Imprimitive groups combine three `Z_3`
//! colorings of the leaves, built top-down along the structure tree, with
//! base-`χ` digit colorings of each large level pushed down to the leaves.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks;
use crate::chain::StabilizerChain;
use crate::coloring::{self, Coloring, TwoPartition};
use crate::error::{Error, Result};
use crate::group::{alternating_or_symmetric, GiantKind, PermGroup};
use crate::tree::{LargeLevel, StructureTree};

/// Random 2-colorings tried before the systematic search.
const RANDOM_TRIES: usize = 48;
/// Largest degree for which `distinguishing_number` is computed.
pub const EXACT_DEGREE_LIMIT: usize = 16;
/// Parts allowed for a distinguishing partition of a primitive group.
pub const PRIMITIVE_MAX_PARTS: usize = 6;

/// Binary-digit conversion of a coloring with `m` colors into `⌈log m⌉`
/// 2-partitions stabilized by exactly the stabilizer of the coloring.
pub fn m_to_2_partitions(c: &Coloring) -> Vec<TwoPartition> {
    let m = c.num_colors() as usize;
    let d = usize::BITS as usize - 1 - m.leading_zeros() as usize;
    let count = if m > 1 << d { d + 1 } else { d };
    (0..count)
        .map(|i| {
            let part = (0..c.degree()).filter(|&x| (c.color(x) >> i) & 1 == 0);
            TwoPartition::new(c.degree(), part).expect("points within degree")
        })
        .collect()
}

/// The conversion applied to an ordered partition `X_0, …, X_{m-1}`.
pub fn m_to_2_partitions_of_parts(
    degree: usize,
    parts: &[Vec<usize>],
) -> Result<Vec<TwoPartition>> {
    Ok(m_to_2_partitions(&Coloring::from_parts(degree, parts)?))
}

/// A coloring with at most `max_parts` colors whose stabilizer in `group` is
/// trivial, or `None` if there is none.
///
/// Random 2-colorings are tried first; the systematic search then walks
/// canonical colorings (first occurrences in increasing color order) and is
/// complete.
pub fn distinguishing_partition(
    group: &PermGroup,
    max_parts: usize,
    seed: u64,
) -> Result<Option<Coloring>> {
    let n = group.degree();
    if group.chain().is_trivial() {
        return Ok((max_parts >= 1).then(|| Coloring::constant(n)));
    }
    if max_parts < 2 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let c = Coloring::new(colors, 2)?;
        if coloring::coloring_stabilizer_is_trivial(group, std::slice::from_ref(&c))? {
            return Ok(Some(c));
        }
    }
    let search = CanonicalSearch::new(group);
    for p in 2..=max_parts.min(n) {
        if let Some(c) = search.run(p) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `D(G)`, the least number of parts of a distinguishing partition. Exact;
/// limited to degree at most 16.
pub fn distinguishing_number(group: &PermGroup) -> Result<usize> {
    let n = group.degree();
    if n > EXACT_DEGREE_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "distinguishing number needs degree <= {EXACT_DEGREE_LIMIT}, got {n}"
        )));
    }
    if group.chain().is_trivial() {
        return Ok(1);
    }
    let search = CanonicalSearch::new(group);
    (2..=n)
        .find(|&p| search.run(p).is_some())
        .ok_or_else(|| Error::SelfCheck("singletons failed to distinguish".into()))
}

struct CanonicalSearch {
    degree: usize,
    chain: StabilizerChain,
}

impl CanonicalSearch {
    fn new(group: &PermGroup) -> Self {
        let n = group.degree();
        let prefix: Vec<usize> = (0..n).rev().collect();
        CanonicalSearch {
            degree: n,
            chain: StabilizerChain::with_base_prefix(group, &prefix),
        }
    }

    fn run(&self, parts: usize) -> Option<Coloring> {
        let mut colors: Vec<u32> = (0..self.degree as u32).map(|x| parts as u32 + x).collect();
        if self.extend(0, 0, parts as u32, &mut colors) {
            Coloring::new(colors, parts as u32).ok()
        } else {
            None
        }
    }

    /// Colors point `i` onwards; uncolored points keep unique colors, so the
    /// prune test asks for a color-preserving element fixing them all.
    fn extend(&self, i: usize, used: u32, parts: u32, colors: &mut [u32]) -> bool {
        let n = self.degree;
        if i == n {
            return true;
        }
        for c in 0..(used + 1).min(parts) {
            colors[i] = c;
            let tail = &self.chain.levels()[n - 1 - i..];
            if coloring::find_color_preserving(n, tail, colors).is_none()
                && self.extend(i + 1, used.max(c + 1), parts, colors)
            {
                return true;
            }
        }
        colors[i] = parts + i as u32;
        false
    }
}

/// At most three 2-partitions with trivial joint stabilizer for a primitive
/// group that is not `A_n` or `S_n` with `n ≥ 7`.
pub fn three_2_partitions_primitive(group: &PermGroup, seed: u64) -> Result<Vec<TwoPartition>> {
    let n = group.degree();
    if n <= 1 {
        return Ok(Vec::new());
    }
    if !blocks::is_primitive(group)? {
        return Err(Error::Precondition("group is not primitive".into()));
    }
    if n >= 7 && alternating_or_symmetric(group)? != GiantKind::Neither {
        return Err(Error::Precondition(format!(
            "A_{n} and S_{n} need more than three 2-partitions"
        )));
    }
    let c = distinguishing_partition(group, PRIMITIVE_MAX_PARTS, seed)?
        .ok_or(Error::TooManyParts(PRIMITIVE_MAX_PARTS))?;
    let out = m_to_2_partitions(&c);
    if !coloring::partitions_stabilizer_is_trivial(group, &out)? {
        return Err(Error::SelfCheck(
            "converted partitions do not distinguish".into(),
        ));
    }
    Ok(out)
}

/// The three `Z_3` leaf colorings `F_0, F_1, F_2`. At each vertex whose child
/// level is not skipped, children at frame positions in part 0 of the level's
/// `j`-th 2-partition inherit `F_j`, the others get `F_j + 1`; below skipped
/// levels all children inherit.
pub fn global_colorings(tree: &StructureTree, skip: &[usize], seed: u64) -> Result<Vec<Coloring>> {
    let mut f: Vec<Vec<u32>> = vec![vec![0]; 3];
    for i in 0..tree.depth() {
        let level = tree.level(i);
        let below = tree.level(i + 1).len();
        let triple = if skip.contains(&(i + 1)) {
            None
        } else {
            if tree.is_large(i + 1)? {
                return Err(Error::Precondition(format!(
                    "level {} is large and must be skipped",
                    i + 1
                )));
            }
            let mut parts = three_2_partitions_primitive(&tree.local_group(i, 0)?, seed)?;
            while parts.len() < 3 {
                let last = parts.last().cloned().ok_or_else(|| {
                    Error::SelfCheck(format!("no partitions for level {}", i + 1))
                })?;
                parts.push(last);
            }
            Some(parts)
        };
        let mut next = vec![vec![0u32; below]; 3];
        for (x, frame) in level.frames().iter().enumerate() {
            for (r, &child) in frame.iter().enumerate() {
                for j in 0..3 {
                    let shift = match &triple {
                        Some(parts) if parts[j].part0().binary_search(&r).is_err() => 1,
                        _ => 0,
                    };
                    next[j][child] = (f[j][x] + shift) % 3;
                }
            }
        }
        f = next;
    }
    let leaves = tree.level(tree.depth());
    f.into_iter()
        .map(|colors| {
            // leaf level vertices are singletons in leaf order
            let by_leaf = (0..tree.degree())
                .map(|x| colors[leaves.vertex_of(x)])
                .collect();
            Coloring::new(by_leaf, 3)
        })
        .collect()
}

/// A coloring of the vertices of one tree level with `2^leaves_per_vertex`
/// colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelColoring {
    level: usize,
    leaves_per_vertex: usize,
    colors: Vec<u64>,
}

impl LevelColoring {
    pub fn new(tree: &StructureTree, level: usize, colors: Vec<u64>) -> Result<Self> {
        if level > tree.depth() || colors.len() != tree.level(level).len() {
            return Err(Error::InvalidPartition(format!(
                "coloring does not match level {level}"
            )));
        }
        let leaves_per_vertex = tree.degree() / tree.level(level).len();
        if leaves_per_vertex < 64 && colors.iter().any(|&c| c >> leaves_per_vertex != 0) {
            return Err(Error::InvalidPartition(format!(
                "color exceeds 2^{leaves_per_vertex}"
            )));
        }
        Ok(LevelColoring {
            level,
            leaves_per_vertex,
            colors,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `log χ`.
    pub fn leaves_per_vertex(&self) -> usize {
        self.leaves_per_vertex
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }
}

fn bit(c: u64, shift: usize) -> u32 {
    if shift >= 64 {
        0
    } else {
        ((c >> shift) & 1) as u32
    }
}

/// Writes each vertex color in binary over the vertex's leaves in frame
/// order, most significant bit first.
pub fn level_coloring_to_leaf_2coloring(
    tree: &StructureTree,
    c: &LevelColoring,
) -> Result<Coloring> {
    let expected = tree.degree() / tree.level(c.level).len();
    if c.leaves_per_vertex != expected || c.colors.len() != tree.level(c.level).len() {
        return Err(Error::InvalidPartition(format!(
            "χ mismatch: coloring uses 2^{}, level {} needs 2^{expected}",
            c.leaves_per_vertex, c.level
        )));
    }
    let mut colors = vec![0u32; tree.degree()];
    for (y, &value) in c.colors.iter().enumerate() {
        let leaves = tree.leaf_order(c.level, y);
        let len = leaves.len();
        for (i, &leaf) in leaves.iter().enumerate() {
            colors[leaf] = bit(value, len - 1 - i);
        }
    }
    Coloring::new(colors, 2)
}

/// Inverse of [`level_coloring_to_leaf_2coloring`].
pub fn leaf_2coloring_to_level_coloring(
    tree: &StructureTree,
    level: usize,
    leaf: &Coloring,
) -> Result<LevelColoring> {
    if leaf.degree() != tree.degree() || leaf.num_colors() > 2 {
        return Err(Error::InvalidPartition("expected a leaf 2-coloring".into()));
    }
    let colors = (0..tree.level(level).len())
        .map(|y| {
            let leaves = tree.leaf_order(level, y);
            let len = leaves.len();
            leaves.iter().enumerate().fold(0u64, |acc, (i, &x)| {
                let shift = len - 1 - i;
                if shift >= 64 {
                    acc
                } else {
                    acc | (u64::from(leaf.color(x)) << shift)
                }
            })
        })
        .collect();
    LevelColoring::new(tree, level, colors)
}

/// Numbers attached to one large level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiParams {
    /// `log χ`, the number of leaves below each vertex of the level.
    pub chi_bits: usize,
    /// Largest `d` with `χ^d ≤ m`.
    pub d: usize,
    /// `m = χ^d`, in which case the top digit partition repeats the one below.
    pub exact_power: bool,
    pub t: usize,
    /// Index of the last coloring; `e + 1` colorings are produced.
    pub e: usize,
    /// `(d + 1) mod t`.
    pub r: usize,
}

pub fn chi_params(tree: &StructureTree, large: &LargeLevel) -> ChiParams {
    let chi_bits = tree.degree() / tree.level(large.level()).len();
    let m = large.m() as u128;
    let (mut d, mut power) = (0usize, 1u128);
    if chi_bits < 64 {
        let chi = 1u128 << chi_bits;
        while power * chi <= m {
            power *= chi;
            d += 1;
        }
    }
    let t = large.t();
    ChiParams {
        chi_bits,
        d,
        exact_power: d >= 1 && power == m,
        t,
        e: (d + 1).div_ceil(t) - 1,
        r: (d + 1) % t,
    }
}

/// Base-`χ` digit `i` of `x`, with the top digit repeating the one below it
/// when `m` is an exact power.
fn digit(params: &ChiParams, i: usize, x: usize) -> u64 {
    let i = if params.exact_power && i == params.d {
        i - 1
    } else {
        i
    };
    let shift = params.chi_bits * i;
    if shift >= 64 {
        return 0;
    }
    let q = (x as u64) >> shift;
    if params.chi_bits >= 64 {
        q
    } else {
        q & ((1u64 << params.chi_bits) - 1)
    }
}

/// The colorings `σ_0, …, σ_e` of the large level's vertices. The child of
/// parent `i` (class `q`, position `v`) at local index `α_{q,v}(x)` gets
/// digit `jt + v` of `x` in `σ_j`; the last coloring falls back to digit
/// `et + r - 1` for positions `v ≥ r` when `r > 0`.
pub fn chi_colorings(tree: &StructureTree, large: &LargeLevel) -> Result<Vec<LevelColoring>> {
    let params = chi_params(tree, large);
    let level = large.level();
    let t = params.t;
    let mut out = Vec::with_capacity(params.e + 1);
    for j in 0..=params.e {
        let mut colors = vec![0u64; tree.level(level).len()];
        for (i, kids) in large.identifications().iter().enumerate() {
            let (q, v) = large.position_of(i);
            let idx = if j < params.e || params.r == 0 {
                j * t + v
            } else if v < params.r {
                params.e * t + v
            } else {
                params.e * t + params.r - 1
            };
            let alpha = large.automorphism(q, v)?;
            for x in 0..large.m() {
                colors[kids[alpha.apply(x)]] = digit(&params, idx, x);
            }
        }
        out.push(LevelColoring::new(tree, level, colors)?);
    }
    Ok(out)
}

/// The 2-partitions of a transitive group with trivial joint stabilizer,
/// where they came from, and whether the joint stabilizer was checked.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionCertificate {
    pub name: Option<String>,
    pub degree: usize,
    pub order: BigUint,
    pub log2_order: f64,
    pub seed: u64,
    pub partitions: Vec<TwoPartition>,
    pub provenance: Vec<String>,
    pub verified: bool,
}

impl PartitionCertificate {
    pub fn count(&self) -> usize {
        self.partitions.len()
    }

    /// `count / (1 + log|P| / k)`.
    pub fn bound_ratio(&self) -> f64 {
        bound_ratio(self.count(), self.log2_order, self.degree)
    }

    /// Re-checks the joint stabilizer against `group`.
    pub fn check(&self, group: &PermGroup) -> Result<bool> {
        if group.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: group.degree(),
            });
        }
        if self.partitions.iter().any(|p| p.degree() != self.degree) {
            return Err(Error::InvalidPartition("partition degree differs".into()));
        }
        coloring::partitions_stabilizer_is_trivial(group, &self.partitions)
    }
}

pub fn bound_ratio(count: usize, log2_order: f64, degree: usize) -> f64 {
    if degree == 0 {
        return 0.0;
    }
    count as f64 / (1.0 + log2_order / degree as f64)
}

/// Builds and verifies a certificate for a transitive group.
pub fn synthesize(group: &PermGroup, seed: u64) -> Result<PartitionCertificate> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let k = group.degree();
    let chain = group.chain();
    let mut partitions = Vec::new();
    let mut provenance = Vec::new();
    if k >= 2 {
        if blocks::is_primitive(group)? {
            if k >= 7 && alternating_or_symmetric(group)? != GiantKind::Neither {
                let singletons = Coloring::new((0..k as u32).collect(), k as u32)?;
                for (i, p) in m_to_2_partitions(&singletons).into_iter().enumerate() {
                    partitions.push(p);
                    provenance.push(format!("S{i}"));
                }
            } else {
                for (i, p) in three_2_partitions_primitive(group, seed)?
                    .into_iter()
                    .enumerate()
                {
                    partitions.push(p);
                    provenance.push(format!("P{i}"));
                }
            }
        } else {
            let tree = StructureTree::build(group)?;
            let large = tree.detect_large_levels()?;
            let skip: Vec<usize> = large.iter().map(LargeLevel::level).collect();
            for (j, f) in global_colorings(&tree, &skip, seed)?.iter().enumerate() {
                for (b, p) in m_to_2_partitions(f).into_iter().enumerate() {
                    partitions.push(p);
                    provenance.push(format!("F{j}.{b}"));
                }
            }
            for l in &large {
                for (j, c) in chi_colorings(&tree, l)?.iter().enumerate() {
                    let leaf = level_coloring_to_leaf_2coloring(&tree, c)?;
                    partitions.push(TwoPartition::new(
                        k,
                        (0..k).filter(|&x| leaf.color(x) == 0),
                    )?);
                    provenance.push(format!("L{}.σ{j}", l.level()));
                }
            }
        }
    }
    let verified = coloring::partitions_stabilizer_is_trivial(group, &partitions)?;
    Ok(PartitionCertificate {
        name: None,
        degree: k,
        order: chain.order(),
        log2_order: chain.log2_order(),
        seed,
        partitions,
        provenance,
        verified,
    })
}

/// The partition count the construction must produce for an imprimitive
/// group: `6 + Σ (e_i + 1)` over large levels.
pub fn expected_imprimitive_count(tree: &StructureTree) -> Result<usize> {
    let mut count = 6;
    for l in tree.detect_large_levels()? {
        count += chi_params(tree, &l).e + 1;
    }
    Ok(count)
}

/// Random ordered partitions with at most `max_parts` parts, used by the
/// conversion checks.
pub fn sample_colorings(degree: usize, max_parts: u32, count: usize, seed: u64) -> Vec<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_parts);
            let colors = (0..degree).map(|_| rng.gen_range(0..m)).collect();
            Coloring::new(colors, m).expect("colors below m")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn parts_of(ps: &[TwoPartition]) -> Vec<Vec<usize>> {
        ps.iter().map(|p| p.part0().to_vec()).collect()
    }

    #[test]
    fn conversion_examples() {
        let ps = m_to_2_partitions_of_parts(3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(parts_of(&ps), vec![vec![0, 2], vec![0, 1]]);
        let ps = m_to_2_partitions_of_parts(4, &[vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(parts_of(&ps), vec![vec![0, 3]]);
        let ps = m_to_2_partitions_of_parts(4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(parts_of(&ps), vec![vec![0, 2], vec![0, 1]]);
        assert!(m_to_2_partitions(&Coloring::constant(5)).is_empty());
        assert!(m_to_2_partitions_of_parts(3, &[vec![0], vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn distinguishing_examples() {
        let c = distinguishing_partition(&PermGroup::trivial(4), 1, 0)
            .unwrap()
            .unwrap();
        assert_eq!(c.num_colors(), 1);
        let s3 = catalog::symmetric(3);
        assert!(distinguishing_partition(&s3, 2, 0).unwrap().is_none());
        assert_eq!(
            distinguishing_partition(&s3, 3, 0)
                .unwrap()
                .unwrap()
                .num_colors(),
            3
        );
        let c4 = catalog::cyclic(4);
        let c = distinguishing_partition(&c4, 2, 0).unwrap().unwrap();
        assert!(coloring::coloring_stabilizer_is_trivial(&c4, &[c]).unwrap());
    }

    #[test]
    fn distinguishing_numbers() {
        assert_eq!(distinguishing_number(&catalog::symmetric(5)).unwrap(), 5);
        assert_eq!(distinguishing_number(&catalog::alternating(5)).unwrap(), 4);
        assert_eq!(distinguishing_number(&PermGroup::trivial(3)).unwrap(), 1);
        assert!(distinguishing_number(&catalog::psl32()).unwrap() <= 4);
        assert!(distinguishing_number(&catalog::cyclic(17)).is_err());
    }

    #[test]
    fn primitive_triples() {
        for g in [catalog::cyclic(5), catalog::psl32(), catalog::symmetric(6)] {
            let ps = three_2_partitions_primitive(&g, 0).unwrap();
            assert!(!ps.is_empty() && ps.len() <= 3);
            assert!(coloring::partitions_stabilizer_is_trivial(&g, &ps).unwrap());
        }
        assert!(three_2_partitions_primitive(&catalog::symmetric(7), 0).is_err());
        assert!(three_2_partitions_primitive(&catalog::cyclic(6), 0).is_err());
    }

    #[test]
    fn chi_parameters_follow_the_digit_rules() {
        let g = catalog::linked_wreath(7, 2, 2, None).unwrap();
        let tree = StructureTree::build(&g).unwrap();
        let l = &tree.detect_large_levels().unwrap()[0];
        let p = chi_params(&tree, l);
        assert_eq!((p.chi_bits, p.d, p.t, p.e, p.r), (1, 2, 2, 1, 1));
        let g = catalog::linked_wreath(8, 2, 2, None).unwrap();
        let tree = StructureTree::build(&g).unwrap();
        let l = &tree.detect_large_levels().unwrap()[0];
        let p = chi_params(&tree, l);
        assert_eq!((p.d, p.e, p.r, p.exact_power), (3, 1, 0, true));
    }

    #[test]
    fn level_coloring_round_trip() {
        let g = catalog::wreath_imprimitive(&catalog::symmetric(2), &catalog::alternating(7));
        let tree = StructureTree::build(&g).unwrap();
        let level = tree.depth() - 1;
        let n = tree.level(level).len();
        let colors: Vec<u64> = (0..n as u64).map(|i| i % 4).collect();
        let c = LevelColoring::new(&tree, level, colors).unwrap();
        let leaf = level_coloring_to_leaf_2coloring(&tree, &c).unwrap();
        let back = leaf_2coloring_to_level_coloring(&tree, level, &leaf).unwrap();
        assert_eq!(back, c);
        // color 2 = "10" puts the first leaf in the frame order at 1
        let first = tree.leaf_order(level, 2);
        assert_eq!((leaf.color(first[0]), leaf.color(first[1])), (1, 0));
    }

    #[test]
    fn synthesize_counts() {
        let c = synthesize(&catalog::symmetric(8), 0).unwrap();
        assert!(c.verified);
        assert_eq!(c.count(), 3);
        let g = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 3)(2 4)"]).unwrap();
        let c = synthesize(&g, 0).unwrap();
        assert!(c.verified && c.count() <= 6);
        let c = synthesize(&catalog::linked_wreath(7, 2, 2, None).unwrap(), 0).unwrap();
        assert!(c.verified);
        assert_eq!(c.count(), 8);
        let c = synthesize(&PermGroup::trivial(1), 0).unwrap();
        assert!(c.verified && c.count() == 0);
    }
}
