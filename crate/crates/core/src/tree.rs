//! Structure trees: nested block systems whose per-vertex child actions are
//! primitive, together with the analysis of large levels (arity at least 7
//! with an alternating or symmetric child action).
//!
//! Level `0` is the root, level `s` the leaves. Vertices of a level are leaf
//! sets ordered by their smallest leaf. The tree is built bottom-up from
//! atoms (blocks with no block strictly between a point and them). When an
//! atom carries a giant action of degree at least 7 it is preferred, so that
//! large levels sit directly above the leaves they act on; otherwise the
//! smallest atom is used.
//!
//! Children of a vertex are identified with `0..m` in two ways. The sorted
//! identification (by smallest leaf) is used for linking automorphisms. The
//! transport frame of `x` is the sorted child list of the first vertex of the
//! level carried to `x` by a fixed group element; frames are what make
//! colorings defined on one vertex consistent across the whole level.

use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::blocks::{self, BlockSystem};
use crate::chain::{pointwise_stabilizer, StabilizerChain};
use crate::error::{Error, Result};
use crate::group::{alternating_or_symmetric, GiantKind, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLevel {
    vertices: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    frames: Vec<Vec<usize>>,
    induced: PermGroup,
    generator_images: Vec<Permutation>,
}

impl TreeLevel {
    /// Leaf sets, sorted, ordered by smallest leaf.
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index of the vertex containing `leaf`.
    pub fn vertex_of(&self, leaf: usize) -> usize {
        self.vertex_of[leaf]
    }

    /// Parent index per vertex (empty at the root level).
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Children per vertex in increasing order (empty at the leaf level).
    pub fn children(&self) -> &[Vec<usize>] {
        &self.children
    }

    /// Transport frames per vertex (empty at the leaf level).
    pub fn frames(&self) -> &[Vec<usize>] {
        &self.frames
    }

    /// The action of the group on this level's vertices.
    pub fn induced(&self) -> &PermGroup {
        &self.induced
    }

    /// Image of each generator of the group, identities included.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTree {
    group: PermGroup,
    levels: Vec<TreeLevel>,
}

impl StructureTree {
    pub fn build(group: &PermGroup) -> Result<Self> {
        if !group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let k = group.degree();
        if k == 0 {
            return Err(Error::Precondition("empty point set".into()));
        }

        // Leaf sets of each level, bottom-up; entry i of a level is quotient
        // point i of the current induced group.
        let mut bottom_up: Vec<Vec<Vec<usize>>> = vec![(0..k).map(|x| vec![x]).collect()];
        let mut q = group.clone();
        while q.degree() > 1 {
            let atom = choose_atom(&q)?;
            let system = BlockSystem::from_block(&q, &atom)?;
            let current = bottom_up.last().expect("nonempty");
            let lifted: Vec<Vec<usize>> = system
                .parts()
                .iter()
                .map(|part| {
                    let mut leaves: Vec<usize> = part
                        .iter()
                        .flat_map(|&i| current[i].iter().copied())
                        .collect();
                    leaves.sort_unstable();
                    leaves
                })
                .collect();
            q = blocks::induced_action(&q, &system)?.0;
            bottom_up.push(lifted);
        }
        bottom_up.reverse();

        let mut levels: Vec<TreeLevel> = Vec::with_capacity(bottom_up.len());
        for mut vertices in bottom_up {
            vertices.sort_by_key(|v| v[0]);
            let mut vertex_of = vec![0; k];
            for (i, v) in vertices.iter().enumerate() {
                for &x in v {
                    vertex_of[x] = i;
                }
            }
            let system = BlockSystem::new(k, vertices.clone())?;
            let (induced, generator_images) = blocks::induced_action(group, &system)?;
            let parent = match levels.last() {
                Some(prev) => vertices.iter().map(|v| prev.vertex_of[v[0]]).collect(),
                None => Vec::new(),
            };
            levels.push(TreeLevel {
                vertices,
                vertex_of,
                parent,
                children: Vec::new(),
                frames: Vec::new(),
                induced,
                generator_images,
            });
        }
        for i in 0..levels.len().saturating_sub(1) {
            let mut children = vec![Vec::new(); levels[i].len()];
            for (c, &p) in levels[i + 1].parent.iter().enumerate() {
                children[p].push(c);
            }
            let frames = transport_frames(&levels[i], &levels[i + 1], &children[0]);
            levels[i].children = children;
            levels[i].frames = frames;
        }
        Ok(StructureTree {
            group: group.clone(),
            levels,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Number of edges on a root-to-leaf path, `s`.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[TreeLevel] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &TreeLevel {
        &self.levels[i]
    }

    /// `m_1, …, m_s`.
    pub fn arities(&self) -> Vec<usize> {
        (1..self.levels.len())
            .map(|i| self.levels[i].len() / self.levels[i - 1].len())
            .collect()
    }

    /// `a_0, …, a_s`.
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(TreeLevel::len).collect()
    }

    /// The parent-level block system on level `i`'s vertices (`i ≥ 1`).
    fn parent_system(&self, i: usize) -> Result<BlockSystem> {
        BlockSystem::new(self.levels[i].len(), self.levels[i - 1].children.clone())
    }

    /// `P(x)` for vertex `x` of level `i < s`: the setwise stabilizer of `x`
    /// acting on its children, which are numbered in increasing order.
    pub fn local_group(&self, i: usize, x: usize) -> Result<PermGroup> {
        if i >= self.depth() {
            return Err(Error::Precondition(format!("level {i} has no children")));
        }
        let system = self.parent_system(i + 1)?;
        blocks::block_stabilizer_action(&self.levels[i + 1].induced, &system, x)
    }

    /// Leaves below vertex `y` of level `i`, concatenated along frames.
    pub fn leaf_order(&self, i: usize, y: usize) -> Vec<usize> {
        if i == self.depth() {
            return self.levels[i].vertices[y].clone();
        }
        self.levels[i].frames[y]
            .iter()
            .flat_map(|&c| self.leaf_order(i + 1, c))
            .collect()
    }

    /// Whether level `l` (`1 ≤ l ≤ s`) has arity at least 7 and giant child
    /// actions.
    pub fn is_large(&self, l: usize) -> Result<bool> {
        if l == 0 || l > self.depth() {
            return Ok(false);
        }
        let m = self.levels[l].len() / self.levels[l - 1].len();
        if m < 7 {
            return Ok(false);
        }
        Ok(alternating_or_symmetric(&self.local_group(l - 1, 0)?)? != GiantKind::Neither)
    }

    pub fn large_level_indices(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for l in 1..=self.depth() {
            if self.is_large(l)? {
                out.push(l);
            }
        }
        Ok(out)
    }

    pub fn detect_large_levels(&self) -> Result<Vec<LargeLevel>> {
        self.large_level_indices()?
            .into_iter()
            .map(|l| self.large_level(l))
            .collect()
    }

    /// Full analysis of a large level.
    pub fn large_level(&self, l: usize) -> Result<LargeLevel> {
        let even_kernel = self.even_kernel(l)?;
        let (t, classes) = self.classes_from_kernel(l, &even_kernel)?;
        let mut automorphisms = Vec::with_capacity(classes.len());
        for class in &classes {
            let diag = self.class_diagonal(l, &even_kernel, class)?;
            let row = (0..t)
                .map(|v| self.recover_automorphism(l, &diag, class[0], class[v]))
                .collect::<Result<Vec<_>>>()?;
            automorphisms.push(row);
        }
        let kernel_order = even_kernel.order();
        Ok(LargeLevel {
            level: l,
            m: self.levels[l].len() / self.levels[l - 1].len(),
            a: self.levels[l - 1].len(),
            t,
            identifications: self.levels[l - 1].children.clone(),
            classes,
            automorphisms,
            even_kernel,
            kernel_order,
        })
    }

    /// Linking factor and classes of a large level.
    pub fn linking_classes(&self, l: usize) -> Result<(usize, Vec<Vec<usize>>)> {
        let k0 = self.even_kernel(l)?;
        self.classes_from_kernel(l, &k0)
    }

    /// The automorphism tying the first block of class `j` to its `v`-th.
    pub fn linking_automorphism(&self, l: usize, j: usize, v: usize) -> Result<Permutation> {
        let k0 = self.even_kernel(l)?;
        let (t, classes) = self.classes_from_kernel(l, &k0)?;
        if v >= t {
            return Err(Error::PositionOutOfRange { position: v, t });
        }
        let class = classes
            .get(j)
            .ok_or_else(|| Error::Precondition(format!("no linking class {j}")))?;
        let diag = self.class_diagonal(l, &k0, class)?;
        self.recover_automorphism(l, &diag, class[0], class[v])
    }

    /// The subgroup of the block kernel over level `l - 1` whose components
    /// on every parent are even, acting on level `l`.
    pub fn even_kernel(&self, l: usize) -> Result<PermGroup> {
        if !self.is_large(l)? {
            return Err(Error::NotLargeLevel(l));
        }
        let n = self.levels[l].len();
        let parents = &self.levels[l - 1].children;
        let system = self.parent_system(l)?;
        let kernel = blocks::block_kernel(&self.levels[l].induced, &system)?;
        // Record each component's sign on a transposition of two extra points
        // per parent; the sign-trivial part is a pointwise stabilizer.
        let gens = kernel
            .generators()
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = g.images().collect();
                images.extend(n..n + 2 * parents.len());
                for (i, kids) in parents.iter().enumerate() {
                    if !local_action(g, kids).is_even() {
                        images.swap(n + 2 * i, n + 2 * i + 1);
                    }
                }
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let aug = PermGroup::new(n + 2 * parents.len(), gens)?;
        let signs: Vec<usize> = (n..n + 2 * parents.len()).collect();
        let stab = pointwise_stabilizer(&aug, &signs)?;
        let all: Vec<usize> = (0..n).collect();
        blocks::restrict_to(&stab, &all)
    }

    fn classes_from_kernel(&self, l: usize, k0: &PermGroup) -> Result<(usize, Vec<Vec<usize>>)> {
        let parents = &self.levels[l - 1].children;
        let a = parents.len();
        let mut related = vec![vec![false; a]; a];
        for u in 0..a {
            let d = pointwise_stabilizer(k0, &parents[u])?;
            for u2 in 0..a {
                related[u][u2] = d
                    .generators()
                    .iter()
                    .all(|g| parents[u2].iter().all(|&c| g.apply(c) == c));
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; a];
        for u in 0..a {
            if assigned[u] {
                continue;
            }
            let class: Vec<usize> = (0..a).filter(|&u2| related[u][u2]).collect();
            for &u2 in &class {
                if assigned[u2] || (0..a).any(|w| related[u2][w] != related[u][w]) {
                    return Err(Error::SelfCheck(format!(
                        "linking relation at level {l} is not an equivalence"
                    )));
                }
                assigned[u2] = true;
            }
            classes.push(class);
        }
        let t = classes[0].len();
        if classes.iter().any(|c| c.len() != t) {
            return Err(Error::SelfCheck(format!(
                "linking classes at level {l} differ in size"
            )));
        }
        Ok((t, classes))
    }

    /// Generators of the diagonal factor of `k0` living on `class`.
    fn class_diagonal(
        &self,
        l: usize,
        k0: &PermGroup,
        class: &[usize],
    ) -> Result<Vec<Permutation>> {
        let parents = &self.levels[l - 1].children;
        let outside: Vec<usize> = (0..parents.len())
            .filter(|u| !class.contains(u))
            .flat_map(|u| parents[u].iter().copied())
            .collect();
        let chain = StabilizerChain::with_base_prefix(k0, &outside);
        Ok(chain.stabilizer_generators(outside.len()))
    }

    /// Finds `α` with `α(z₀(y)) = z_v(α(y))` for every diagonal generator,
    /// where `z₀`, `z_v` are its actions on parents `u0`, `uv`.
    fn recover_automorphism(
        &self,
        l: usize,
        diag: &[Permutation],
        u0: usize,
        uv: usize,
    ) -> Result<Permutation> {
        let parents = &self.levels[l - 1].children;
        let m = parents[u0].len();
        if u0 == uv {
            return Ok(Permutation::identity(m));
        }
        let z0: Vec<Permutation> = diag.iter().map(|g| local_action(g, &parents[u0])).collect();
        let zv: Vec<Permutation> = diag.iter().map(|g| local_action(g, &parents[uv])).collect();
        'candidate: for image0 in 0..m {
            let mut alpha = vec![usize::MAX; m];
            alpha[0] = image0;
            let mut queue = VecDeque::from([0usize]);
            while let Some(y) = queue.pop_front() {
                for (a, b) in z0.iter().zip(&zv) {
                    let (y2, img) = (a.apply(y), b.apply(alpha[y]));
                    if alpha[y2] == usize::MAX {
                        alpha[y2] = img;
                        queue.push_back(y2);
                    } else if alpha[y2] != img {
                        continue 'candidate;
                    }
                }
            }
            if alpha.contains(&usize::MAX) {
                continue;
            }
            let Ok(alpha) = Permutation::from_images(alpha) else {
                continue;
            };
            if z0
                .iter()
                .zip(&zv)
                .all(|(a, b)| a.then(&alpha) == alpha.then(b))
            {
                return Ok(alpha);
            }
        }
        Err(Error::NoLinkingAutomorphism)
    }
}

/// `g` restricted to the listed points, relabelled by their positions.
pub(crate) fn local_action(g: &Permutation, points: &[usize]) -> Permutation {
    let images = points
        .iter()
        .map(|&x| {
            let y = g.apply(x);
            points
                .iter()
                .position(|&p| p == y)
                .expect("points form an invariant set")
        })
        .collect();
    Permutation::from_images(images).expect("restriction is a bijection")
}

fn choose_atom(q: &PermGroup) -> Result<Vec<usize>> {
    let atoms = blocks::atoms(q)?;
    let mut large: Option<Vec<usize>> = None;
    for atom in &atoms {
        if atom.len() < 7 || large.as_ref().is_some_and(|b| b.len() >= atom.len()) {
            continue;
        }
        let system = BlockSystem::from_block(q, atom)?;
        let local = blocks::block_stabilizer_action(q, &system, 0)?;
        if alternating_or_symmetric(&local)? != GiantKind::Neither {
            large = Some(atom.clone());
        }
    }
    if let Some(b) = large {
        return Ok(b);
    }
    let mut best = atoms[0].clone();
    for atom in &atoms[1..] {
        if atom.len() < best.len() {
            best = atom.clone();
        }
    }
    Ok(best)
}

fn transport_frames(upper: &TreeLevel, lower: &TreeLevel, first: &[usize]) -> Vec<Vec<usize>> {
    let mut frames: Vec<Option<Vec<usize>>> = vec![None; upper.len()];
    frames[0] = Some(first.to_vec());
    let mut words = vec![None; upper.len()];
    words[0] = Some(Permutation::identity(lower.len()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let wx = words[x].clone().expect("visited");
        for (gu, gl) in upper.generator_images.iter().zip(&lower.generator_images) {
            let y = gu.apply(x);
            if words[y].is_none() {
                let wy = wx.then(gl);
                frames[y] = Some(first.iter().map(|&c| wy.apply(c)).collect());
                words[y] = Some(wy);
                queue.push_back(y);
            }
        }
    }
    frames
        .into_iter()
        .map(|f| f.expect("level is transitive"))
        .collect()
}

/// A large level with its linking data. Parents are the vertices of level
/// `level - 1`; their children are identified with `0..m` in sorted order.
#[derive(Clone, Debug)]
pub struct LargeLevel {
    level: usize,
    m: usize,
    a: usize,
    t: usize,
    classes: Vec<Vec<usize>>,
    automorphisms: Vec<Vec<Permutation>>,
    identifications: Vec<Vec<usize>>,
    even_kernel: PermGroup,
    kernel_order: BigUint,
}

impl LargeLevel {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `α_{j,v}`; the identity for `v = 0`.
    pub fn automorphism(&self, j: usize, v: usize) -> Result<&Permutation> {
        if v >= self.t {
            return Err(Error::PositionOutOfRange {
                position: v,
                t: self.t,
            });
        }
        self.automorphisms
            .get(j)
            .map(|row| &row[v])
            .ok_or_else(|| Error::Precondition(format!("no linking class {j}")))
    }

    pub fn automorphisms(&self) -> &[Vec<Permutation>] {
        &self.automorphisms
    }

    /// Class index and position of a parent.
    pub fn position_of(&self, parent: usize) -> (usize, usize) {
        for (j, class) in self.classes.iter().enumerate() {
            if let Some(v) = class.iter().position(|&u| u == parent) {
                return (j, v);
            }
        }
        unreachable!("classes partition the parents")
    }

    /// Children of each parent in sorted order.
    pub fn identifications(&self) -> &[Vec<usize>] {
        &self.identifications
    }

    pub fn even_kernel(&self) -> &PermGroup {
        &self.even_kernel
    }

    pub fn kernel_order(&self) -> &BigUint {
        &self.kernel_order
    }

    /// `(m!/2)^(a/t)`.
    pub fn expected_kernel_order(&self) -> BigUint {
        let half: BigUint = (3..=self.m).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
        num_traits::pow(half, self.a / self.t)
    }

    /// Checks, for every generator of every class diagonal, that its action
    /// on the `v`-th parent equals the `α_{j,v}`-conjugate of its action on
    /// the first.
    pub fn pairing_holds(&self) -> bool {
        for (j, class) in self.classes.iter().enumerate() {
            let outside: Vec<usize> = (0..self.a)
                .filter(|u| !class.contains(u))
                .flat_map(|u| self.identifications[u].iter().copied())
                .collect();
            let chain = StabilizerChain::with_base_prefix(&self.even_kernel, &outside);
            let diag = chain.stabilizer_generators(outside.len());
            if diag.is_empty() {
                return false;
            }
            for z in &diag {
                let z0 = local_action(z, &self.identifications[class[0]]);
                for (v, &u) in class.iter().enumerate() {
                    let zv = local_action(z, &self.identifications[u]);
                    if zv != z0.conjugate_by(&self.automorphisms[j][v]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn primitive_group_has_depth_one() {
        let t = StructureTree::build(&catalog::symmetric(4)).unwrap();
        assert_eq!(t.arities(), vec![4]);
        assert_eq!(t.sizes(), vec![1, 4]);
    }

    #[test]
    fn small_imprimitive_trees() {
        let g = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 3)(2 4)"]).unwrap();
        let t = StructureTree::build(&g).unwrap();
        assert_eq!(t.arities(), vec![2, 2]);
        assert_eq!(t.sizes(), vec![1, 2, 4]);
        let t = StructureTree::build(&catalog::cyclic(6)).unwrap();
        assert_eq!(t.arities(), vec![3, 2]);
        assert_eq!(t.level(1).vertices(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(t.detect_large_levels().unwrap().is_empty());
    }

    #[test]
    fn frames_are_images_of_first_frame() {
        let g = catalog::parse("wreath(symmetric(3),cyclic(4))").unwrap();
        let t = StructureTree::build(&g).unwrap();
        for i in 0..t.depth() {
            let lvl = t.level(i);
            for (x, frame) in lvl.frames().iter().enumerate() {
                let mut sorted = frame.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, lvl.children()[x]);
            }
        }
        let mut leaves = t.leaf_order(0, 0);
        leaves.sort_unstable();
        assert_eq!(leaves, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn full_wreath_has_linking_factor_one() {
        let g = catalog::wreath_imprimitive(&catalog::alternating(7), &catalog::symmetric(2));
        let t = StructureTree::build(&g).unwrap();
        let large = t.detect_large_levels().unwrap();
        assert_eq!(large.len(), 1);
        let l = &large[0];
        assert_eq!((l.level(), l.m(), l.a(), l.t()), (2, 7, 2, 1));
        assert_eq!(l.classes(), &[vec![0], vec![1]]);
        assert_eq!(l.kernel_order(), &l.expected_kernel_order());
        assert!(l.pairing_holds());
    }

    #[test]
    fn linked_wreath_recovers_its_twist() {
        let g = catalog::linked_wreath(7, 2, 2, None).unwrap();
        let t = StructureTree::build(&g).unwrap();
        assert_eq!(t.arities(), vec![2, 7]);
        let l = &t.detect_large_levels().unwrap()[0];
        assert_eq!(l.t(), 2);
        let cycle = Permutation::from_cycles(7, &[(0..7).collect()]).unwrap();
        assert_eq!(l.automorphism(0, 1).unwrap(), &cycle);
        assert!(l.automorphism(0, 0).unwrap().is_identity());
        assert!(matches!(
            l.automorphism(0, 2),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(l.pairing_holds());
        assert!(matches!(t.linking_classes(1), Err(Error::NotLargeLevel(1))));
    }

    #[test]
    fn rebuild_is_identical() {
        let g = catalog::linked_wreath(7, 4, 2, None).unwrap();
        assert_eq!(
            StructureTree::build(&g).unwrap(),
            StructureTree::build(&g).unwrap()
        );
    }
}
