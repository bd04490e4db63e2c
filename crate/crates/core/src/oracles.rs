//! Brute-force ground truth, kept independent of the constructions it checks.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::chain::{pointwise_stabilizer, StabilizerChain};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default cap on group elements enumerated by the oracles.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;
/// Default node budget of the base-size search.
pub const BASE_SEARCH_BUDGET: u64 = 2_000_000;

fn check_enumerable(group: &PermGroup, limit: u64) -> Result<StabilizerChain> {
    let chain = group.chain();
    if chain.order() > BigUint::from(limit) {
        return Err(Error::LimitExceeded(format!(
            "group order {} exceeds enumeration limit {limit}",
            chain.order()
        )));
    }
    Ok(chain)
}

/// All elements, by breadth-first closure under right multiplication by the
/// generators. Independent of stabilizer chains.
pub fn enumerate_by_closure(group: &PermGroup, limit: usize) -> Result<Vec<Permutation>> {
    let id = group.identity();
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in group.generators() {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return Err(Error::LimitExceeded(format!("more than {limit} elements")));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

fn preserves_all(g: &Permutation, cs: &[Coloring]) -> bool {
    cs.iter().all(|c| c.is_preserved_by(g))
}

/// The subgroup preserving every coloring, found by enumerating the group.
/// Generators are the elements that were not already in the subgroup built
/// so far.
pub fn partition_stabilizer_exhaustive(
    group: &PermGroup,
    cs: &[Coloring],
    limit: u64,
) -> Result<PermGroup> {
    for c in cs {
        if c.degree() != group.degree() {
            return Err(Error::DegreeMismatch {
                expected: group.degree(),
                found: c.degree(),
            });
        }
    }
    let chain = check_enumerable(group, limit)?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut sub = StabilizerChain::new(&PermGroup::trivial(group.degree()));
    let mut pending: Vec<Permutation> = Vec::new();
    chain.for_each_element(|g| {
        if preserves_all(g, cs) {
            pending.push(g.clone());
        }
        true
    });
    for g in pending {
        if !sub.contains(&g)? {
            gens.push(g);
            sub = StabilizerChain::new(&PermGroup::new(group.degree(), gens.clone())?);
        }
    }
    PermGroup::new(group.degree(), gens)
}

/// The subgroup mapping every part of every coloring onto some part of the
/// same coloring (parts may be exchanged), by enumeration.
pub fn unordered_partition_stabilizer_exhaustive(
    group: &PermGroup,
    cs: &[Coloring],
    limit: u64,
) -> Result<PermGroup> {
    let chain = check_enumerable(group, limit)?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut pending = Vec::new();
    chain.for_each_element(|g| {
        let ok = cs.iter().all(|c| {
            let mut image = vec![u32::MAX; c.num_colors() as usize];
            (0..c.degree()).all(|x| {
                let slot = &mut image[c.color(x) as usize];
                let target = c.color(g.apply(x));
                if *slot == u32::MAX {
                    *slot = target;
                }
                *slot == target
            })
        });
        if ok {
            pending.push(g.clone());
        }
        true
    });
    let mut sub = StabilizerChain::new(&PermGroup::trivial(group.degree()));
    for g in pending {
        if !sub.contains(&g)? {
            gens.push(g);
            sub = StabilizerChain::new(&PermGroup::new(group.degree(), gens.clone())?);
        }
    }
    PermGroup::new(group.degree(), gens)
}

/// Whether only the identity preserves every coloring, by enumeration.
pub fn stabilizer_is_trivial_by_enumeration(
    group: &PermGroup,
    cs: &[Coloring],
    limit: u64,
) -> Result<bool> {
    let chain = check_enumerable(group, limit)?;
    let mut trivial = true;
    chain.for_each_element(|g| {
        if !g.is_identity() && preserves_all(g, cs) {
            trivial = false;
        }
        trivial
    });
    Ok(trivial)
}

/// A base of minimum size, by iterative deepening over orbit
/// representatives of the current stabilizer (longest orbits first).
pub fn minimal_base(group: &PermGroup, budget: u64) -> Result<Vec<usize>> {
    if group.degree() > 64 {
        return Err(Error::LimitExceeded(format!(
            "base search supports degree <= 64, got {}",
            group.degree()
        )));
    }
    let mut nodes = 0u64;
    for depth in 0.. {
        let mut chosen = Vec::new();
        if search(group, depth, &mut chosen, &mut nodes, budget)? {
            return Ok(chosen);
        }
    }
    unreachable!()
}

pub fn base_size_bruteforce(group: &PermGroup, budget: u64) -> Result<usize> {
    minimal_base(group, budget).map(|b| b.len())
}

fn search(
    k: &PermGroup,
    remaining: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::LimitExceeded(format!(
            "base search exceeded {budget} nodes"
        )));
    }
    let order = k.order();
    if order == BigUint::from(1u32) {
        return Ok(true);
    }
    if remaining == 0 {
        return Ok(false);
    }
    let mut orbits: Vec<Vec<usize>> = k.orbits().into_iter().filter(|o| o.len() > 1).collect();
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    // each further point divides the order by at most the longest orbit
    let longest = BigUint::from(orbits[0].len());
    if num_traits::pow(longest, remaining) < order {
        return Ok(false);
    }
    for orbit in &orbits {
        let x = orbit[0];
        let stab = pointwise_stabilizer(k, &[x])?;
        chosen.push(x);
        if search(&stab, remaining - 1, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Base size against the counting lower bound `log|G| / log n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseSizeReport {
    pub degree: usize,
    pub order: BigUint,
    pub log2_order: f64,
    pub base_size: usize,
    /// `log|G| / log n`.
    pub lower_bound: f64,
    /// `b(G) · log n / log|G|`; NaN for the trivial group or degree 1.
    pub ratio: f64,
}

pub fn base_size_report(group: &PermGroup, budget: u64) -> Result<BaseSizeReport> {
    let chain = group.chain();
    let b = base_size_bruteforce(group, budget)?;
    let log_g = chain.log2_order();
    let log_n = (group.degree() as f64).log2();
    let (lower, ratio) = if log_g > 0.0 && log_n > 0.0 {
        (log_g / log_n, b as f64 * log_n / log_g)
    } else {
        (0.0, f64::NAN)
    };
    Ok(BaseSizeReport {
        degree: group.degree(),
        order: chain.order(),
        log2_order: log_g,
        base_size: b,
        lower_bound: lower,
        ratio,
    })
}

/// `log2` of a big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 52;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}
