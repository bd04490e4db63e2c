//! Wreath products `H wr P` in product action on `Ω = Γ^k`, and bases for
//! them assembled from 2-partition certificates.
//!
//! A [`WreathElement`] stores components `h_0, …, h_{k-1}` and a top `p`; it
//! sends `x` to the point whose coordinate `i` is `h_{p(i)}(x[p(i)])`.
//! [`WreathElement::compose`] is defined so that applying a product equals
//! applying the factors left to right.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use crate::chain::{is_base, StabilizerChain};
use crate::coloring::{self, Coloring, TwoPartition};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::oracles;
use crate::partitions::{self, PartitionCertificate};
use crate::perm::Permutation;

/// Largest `|Γ|^k` realized explicitly by the brute-force verifier.
pub const OMEGA_LIMIT: u64 = 1_000_000;
/// Largest group enumerated when checking twisted bases.
pub const TOP_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductPoint {
    coords: Vec<usize>,
}

impl ProductPoint {
    pub fn new(coords: Vec<usize>, gamma: usize) -> Result<Self> {
        if let Some(&c) = coords.iter().find(|&&c| c >= gamma) {
            return Err(Error::Precondition(format!(
                "coordinate {c} outside Γ of size {gamma}"
            )));
        }
        Ok(ProductPoint { coords })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Lexicographic index in `Γ^k`.
    pub fn index(&self, gamma: usize) -> usize {
        self.coords.iter().fold(0, |acc, &c| acc * gamma + c)
    }

    pub fn from_index(mut index: usize, gamma: usize, k: usize) -> Self {
        let mut coords = vec![0; k];
        for c in coords.iter_mut().rev() {
            *c = index % gamma;
            index /= gamma;
        }
        ProductPoint { coords }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    components: Vec<Permutation>,
    top: Permutation,
}

impl WreathElement {
    pub fn new(components: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if top.degree() != components.len() {
            return Err(Error::DegreeMismatch {
                expected: components.len(),
                found: top.degree(),
            });
        }
        if let Some(first) = components.first() {
            if let Some(bad) = components.iter().find(|h| h.degree() != first.degree()) {
                return Err(Error::DegreeMismatch {
                    expected: first.degree(),
                    found: bad.degree(),
                });
            }
        }
        Ok(WreathElement { components, top })
    }

    pub fn identity(gamma: usize, k: usize) -> Self {
        WreathElement {
            components: vec![Permutation::identity(gamma); k],
            top: Permutation::identity(k),
        }
    }

    pub fn base(components: Vec<Permutation>) -> Result<Self> {
        let k = components.len();
        Self::new(components, Permutation::identity(k))
    }

    pub fn top_only(gamma: usize, top: Permutation) -> Self {
        WreathElement {
            components: vec![Permutation::identity(gamma); top.degree()],
            top,
        }
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    fn gamma(&self) -> usize {
        self.components.first().map_or(0, Permutation::degree)
    }

    pub fn apply(&self, x: &ProductPoint) -> Result<ProductPoint> {
        let k = self.components.len();
        if x.len() != k {
            return Err(Error::DegreeMismatch {
                expected: k,
                found: x.len(),
            });
        }
        if x.coords.iter().any(|&c| c >= self.gamma()) {
            return Err(Error::Precondition("coordinate outside Γ".into()));
        }
        Ok(self.apply_unchecked(&x.coords))
    }

    fn apply_unchecked(&self, x: &[usize]) -> ProductPoint {
        let coords = (0..x.len())
            .map(|i| {
                let j = self.top.apply(i);
                self.components[j].apply(x[j])
            })
            .collect();
        ProductPoint { coords }
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.components.len() != other.components.len() || self.gamma() != other.gamma() {
            return Err(Error::DegreeMismatch {
                expected: self.components.len(),
                found: other.components.len(),
            });
        }
        let top = other.top.then(&self.top);
        let inv = self.top.inverse();
        let components = (0..self.components.len())
            .map(|j| self.components[j].then(&other.components[inv.apply(j)]))
            .collect();
        Ok(WreathElement { components, top })
    }

    pub fn inverse(&self) -> WreathElement {
        let components = (0..self.components.len())
            .map(|i| self.components[self.top.apply(i)].inverse())
            .collect();
        WreathElement {
            components,
            top: self.top.inverse(),
        }
    }

    /// The permutation of `Γ^k` (lexicographic indices).
    pub fn on_omega(&self) -> Permutation {
        let gamma = self.gamma();
        let k = self.components.len();
        let size = gamma.pow(k as u32);
        let images = (0..size)
            .map(|i| {
                let x = ProductPoint::from_index(i, gamma, k);
                self.apply_unchecked(&x.coords).index(gamma)
            })
            .collect();
        Permutation::from_images(images).expect("wreath elements act bijectively")
    }
}

/// Twist data: linking factor `t` and `σ_1, …, σ_{t-1}` acting on `Γ`.
/// Positions are grouped into classes of `t` consecutive coordinates; the
/// subgroup kept on a class is `{(w^{σ_0}, …, w^{σ_{t-1}}) : w ∈ H}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub t: usize,
    pub sigmas: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroupSpec {
    h: PermGroup,
    p: PermGroup,
    twist: Option<Twist>,
}

impl ProductGroupSpec {
    pub fn new(h: PermGroup, p: PermGroup, twist: Option<Twist>) -> Result<Self> {
        if h.degree() < 2 || !h.is_transitive() {
            return Err(Error::Precondition(
                "H must be transitive of degree at least 2".into(),
            ));
        }
        if !p.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if let Some(tw) = &twist {
            if tw.t == 0 || !p.degree().is_multiple_of(tw.t) {
                return Err(Error::Precondition(format!(
                    "t = {} must divide k = {}",
                    tw.t,
                    p.degree()
                )));
            }
            if tw.sigmas.len() + 1 != tw.t {
                return Err(Error::Precondition(format!(
                    "expected {} twist permutations, got {}",
                    tw.t - 1,
                    tw.sigmas.len()
                )));
            }
            if let Some(bad) = tw.sigmas.iter().find(|s| s.degree() != h.degree()) {
                return Err(Error::DegreeMismatch {
                    expected: h.degree(),
                    found: bad.degree(),
                });
            }
        }
        Ok(ProductGroupSpec { h, p, twist })
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    pub fn p(&self) -> &PermGroup {
        &self.p
    }

    pub fn twist(&self) -> Option<&Twist> {
        self.twist.as_ref()
    }

    /// `|Γ|`.
    pub fn gamma(&self) -> usize {
        self.h.degree()
    }

    pub fn k(&self) -> usize {
        self.p.degree()
    }

    fn t(&self) -> usize {
        self.twist.as_ref().map_or(1, |tw| tw.t)
    }

    /// `σ_v`, the identity for `v = 0`.
    pub fn sigma(&self, v: usize) -> Permutation {
        match (&self.twist, v) {
            (Some(tw), v) if v > 0 => tw.sigmas[v - 1].clone(),
            _ => Permutation::identity(self.gamma()),
        }
    }

    /// Generators of the full wreath product, or of the twisted subgroup.
    pub fn generators(&self) -> Vec<WreathElement> {
        let (gamma, k, t) = (self.gamma(), self.k(), self.t());
        let mut gens = Vec::new();
        for z in self.h.generators() {
            for class in 0..k / t {
                let mut comps = vec![Permutation::identity(gamma); k];
                for v in 0..t {
                    comps[class * t + v] = z.conjugate_by(&self.sigma(v));
                }
                gens.push(WreathElement::base(comps).expect("degrees agree"));
            }
        }
        for p in self.p.generators() {
            gens.push(WreathElement::top_only(gamma, p.clone()));
        }
        gens
    }

    /// Checks that the tops normalize the twisted base group, so that the
    /// generated group is the twisted base group extended by `P`.
    pub fn check_twist_compatibility(&self) -> Result<()> {
        if self.twist.is_none() {
            return Ok(());
        }
        let (gamma, k, t) = (self.gamma(), self.k(), self.t());
        let h_chain = self.h.chain();
        for p in self.p.generators() {
            let top = WreathElement::top_only(gamma, p.clone());
            let inv = top.inverse();
            for z in self.h.generators() {
                for class in 0..k / t {
                    let mut comps = vec![Permutation::identity(gamma); k];
                    for v in 0..t {
                        comps[class * t + v] = z.conjugate_by(&self.sigma(v));
                    }
                    let e = WreathElement::base(comps)?;
                    let conj = inv.compose(&e)?.compose(&top)?;
                    for c in 0..k / t {
                        let w = &conj.components[c * t];
                        let diagonal = (0..t)
                            .all(|v| conj.components[c * t + v] == w.conjugate_by(&self.sigma(v)));
                        if !diagonal || !h_chain.contains(w)? {
                            return Err(Error::Precondition(
                                "P does not normalize the twisted base group".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Points separating the tops: partitions are taken `r = ⌊log|Γ|⌋` at a
/// time and the common refinement of each group is written with one `Γ`
/// value per part (parts numbered by lowest member).
pub fn lpp_points(
    partitions: &[TwoPartition],
    k: usize,
    gamma: usize,
) -> Result<Vec<ProductPoint>> {
    if gamma < 2 {
        return Err(Error::Precondition("|Γ| must be at least 2".into()));
    }
    if let Some(p) = partitions.iter().find(|p| p.degree() != k) {
        return Err(Error::DegreeMismatch {
            expected: k,
            found: p.degree(),
        });
    }
    let r = (usize::BITS - 1 - gamma.leading_zeros()) as usize;
    let mut out = Vec::new();
    for group in partitions.chunks(r) {
        let colorings: Vec<Coloring> = group.iter().map(TwoPartition::to_coloring).collect();
        let refined = coloring::product_coloring(k, &colorings)?;
        if refined.num_colors() as usize > gamma {
            return Err(Error::SelfCheck(
                "refinement has more parts than |Γ|".into(),
            ));
        }
        // product_coloring numbers classes by first occurrence, i.e. lowest member
        out.push(ProductPoint {
            coords: refined.colors().iter().map(|&c| c as usize).collect(),
        });
    }
    Ok(out)
}

fn diagonal_points(h_base: &[usize], k: usize) -> Vec<ProductPoint> {
    h_base
        .iter()
        .map(|&g| ProductPoint { coords: vec![g; k] })
        .collect()
}

fn check_h_base(spec: &ProductGroupSpec, h_base: &[usize]) -> Result<()> {
    if h_base.is_empty() {
        return Err(Error::Precondition("H-base is empty".into()));
    }
    if !is_base(spec.h(), h_base) {
        return Err(Error::Precondition("H-base is not a base of H".into()));
    }
    Ok(())
}

/// Diagonal points `(γ, …, γ)` for the `H`-base followed by the points
/// separating the tops.
pub fn base_almost_simple(
    spec: &ProductGroupSpec,
    h_base: &[usize],
    cert: &PartitionCertificate,
) -> Result<Vec<ProductPoint>> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    check_h_base(spec, h_base)?;
    if !cert.verified || cert.degree != k {
        return Err(Error::Precondition(
            "certificate is not verified for P".into(),
        ));
    }
    let mut out = diagonal_points(h_base, k);
    out.extend(lpp_points(&cert.partitions, k, spec.gamma())?);
    Ok(out)
}

/// The `e = ⌈b/t⌉` twisted points. Coordinate `j = q't + v'` of point `i`
/// is `σ_{v'}(γ_{it+v'})`; in the last point, when `v = b mod t > 0`,
/// positions `v' ≥ v` reuse `γ_{b-1}`.
pub fn base_twisted_case22(spec: &ProductGroupSpec, h_base: &[usize]) -> Result<Vec<ProductPoint>> {
    let tw = spec
        .twist()
        .ok_or_else(|| Error::Precondition("spec has no twist data".into()))?;
    twisted_layout(spec, tw.t, h_base)
}

fn twisted_layout(
    spec: &ProductGroupSpec,
    t: usize,
    h_base: &[usize],
) -> Result<Vec<ProductPoint>> {
    let (k, b) = (spec.k(), h_base.len());
    if let Some(&g) = h_base.iter().find(|&&g| g >= spec.gamma()) {
        return Err(Error::Precondition(format!("H-base point {g} outside Γ")));
    }
    let e = b.div_ceil(t);
    let v = b % t;
    let sigmas: Vec<Permutation> = (0..t).map(|s| spec.sigma(s)).collect();
    Ok((0..e)
        .map(|i| {
            let coords = (0..k)
                .map(|j| {
                    let vp = j % t;
                    let idx = if i + 1 < e || v == 0 || vp < v {
                        i * t + vp
                    } else {
                        b - 1
                    };
                    sigmas[vp].apply(h_base[idx])
                })
                .collect();
            ProductPoint { coords }
        })
        .collect())
}

/// Points separating the tops, diagonal points and twisted points.
pub fn base_twisted(
    spec: &ProductGroupSpec,
    h_base: &[usize],
    cert: &PartitionCertificate,
) -> Result<Vec<ProductPoint>> {
    let mut out = base_almost_simple(spec, h_base, cert)?;
    out.extend(base_twisted_case22(spec, h_base)?);
    Ok(out)
}

/// Decides the base property without realizing `Ω`.
///
/// Requires that `h_base` is a base of `H` and that the certificate is
/// verified and re-checks for `P`. The points themselves are then tested
/// exactly: an element `(h)p` fixes them all iff each `h_{p(i)}` maps column
/// `p(i)` of the point matrix to column `i`. In the full wreath product this
/// is trivial iff every column is a base of `H` and only the identity of `P`
/// preserves the coloring of positions by `H`-orbit of their columns. With a
/// twist, the same reasoning is applied class by class after undoing `σ_v`,
/// quantifying over the elements of `P`.
pub fn verify_base_composed(
    spec: &ProductGroupSpec,
    points: &[ProductPoint],
    h_base: &[usize],
    cert: &PartitionCertificate,
) -> bool {
    if h_base.is_empty() || !is_base(spec.h(), h_base) {
        return false;
    }
    if !cert.verified || cert.check(spec.p()) != Ok(true) {
        return false;
    }
    let (k, gamma) = (spec.k(), spec.gamma());
    if points
        .iter()
        .any(|x| x.len() != k || x.coords.iter().any(|&c| c >= gamma))
    {
        return false;
    }
    let columns: Vec<Vec<usize>> = (0..k)
        .map(|j| points.iter().map(|x| x.coords[j]).collect())
        .collect();
    match spec.twist() {
        None => full_wreath_base_check(spec, &columns).unwrap_or(false),
        Some(tw) => twisted_base_check(spec, tw.t, &columns).unwrap_or(false),
    }
}

/// `H`-orbit equivalence of tuples, with a chain per representative.
struct TupleOrbits<'a> {
    h: &'a PermGroup,
    reps: Vec<(Vec<usize>, StabilizerChain)>,
}

impl<'a> TupleOrbits<'a> {
    fn new(h: &'a PermGroup) -> Self {
        TupleOrbits {
            h,
            reps: Vec::new(),
        }
    }

    fn class_of(&mut self, tuple: &[usize]) -> usize {
        for (i, (rep, chain)) in self.reps.iter().enumerate() {
            if same_orbit(chain, rep, tuple) {
                return i;
            }
        }
        let chain = StabilizerChain::with_base_prefix(self.h, tuple);
        self.reps.push((tuple.to_vec(), chain));
        self.reps.len() - 1
    }
}

/// Whether some element maps `rep` to `other` coordinatewise. The chain's
/// base must start with `rep`.
fn same_orbit(chain: &StabilizerChain, rep: &[usize], other: &[usize]) -> bool {
    if rep.len() != other.len() {
        return false;
    }
    let mut target = other.to_vec();
    for (i, level) in chain.levels().iter().enumerate().take(rep.len()) {
        let Some(u) = level.transversal(target[i]) else {
            return false;
        };
        let inv = u.inverse();
        for y in target.iter_mut() {
            *y = inv.apply(*y);
        }
    }
    target == rep
}

fn full_wreath_base_check(spec: &ProductGroupSpec, columns: &[Vec<usize>]) -> Result<bool> {
    if columns.iter().any(|c| !is_base(spec.h(), c)) {
        return Ok(false);
    }
    let mut orbits = TupleOrbits::new(spec.h());
    let classes: Vec<u32> = columns.iter().map(|c| orbits.class_of(c) as u32).collect();
    let n = orbits.reps.len() as u32;
    let c = Coloring::new(classes, n.max(1))?;
    coloring::coloring_stabilizer_is_trivial(spec.p(), &[c])
}

fn twisted_base_check(spec: &ProductGroupSpec, t: usize, columns: &[Vec<usize>]) -> Result<bool> {
    let k = spec.k();
    let inv_sigma: Vec<Permutation> = (0..t).map(|v| spec.sigma(v).inverse()).collect();
    let untwist = |col: &[usize], v: usize| -> Vec<usize> {
        col.iter().map(|&y| inv_sigma[v].apply(y)).collect()
    };
    let mut reps = Vec::new();
    for c in 0..k / t {
        let s: Vec<usize> = (0..t)
            .flat_map(|v| untwist(&columns[c * t + v], v))
            .collect();
        if !is_base(spec.h(), &s) {
            return Ok(false);
        }
        let chain = StabilizerChain::with_base_prefix(spec.h(), &s);
        reps.push((s, chain));
    }
    let p_chain = spec.p().chain();
    if p_chain.order() > BigUint::from(TOP_ENUMERATION_LIMIT) {
        return Err(Error::LimitExceeded("P too large to enumerate".into()));
    }
    let mut base = true;
    p_chain.for_each_element(|p| {
        if p.is_identity() {
            return true;
        }
        let pinv = p.inverse();
        let fixes_all = reps.iter().enumerate().all(|(c, (s, chain))| {
            let tc: Vec<usize> = (0..t)
                .flat_map(|v| untwist(&columns[pinv.apply(c * t + v)], v))
                .collect();
            same_orbit(chain, s, &tc)
        });
        if fixes_all {
            base = false;
        }
        base
    });
    Ok(base)
}

/// The wreath product (or twisted subgroup) as a permutation group on the
/// lexicographically indexed points of `Γ^k`.
pub fn realize_on_omega(spec: &ProductGroupSpec, limit: u64) -> Result<PermGroup> {
    let size = (spec.gamma() as u128).checked_pow(spec.k() as u32);
    match size {
        Some(s) if s <= limit as u128 => {}
        _ => {
            return Err(Error::LimitExceeded(format!(
                "|Γ|^k = {}^{} exceeds {limit}",
                spec.gamma(),
                spec.k()
            )))
        }
    }
    spec.check_twist_compatibility()?;
    let gens = spec
        .generators()
        .iter()
        .map(WreathElement::on_omega)
        .collect();
    PermGroup::new(spec.gamma().pow(spec.k() as u32), gens)
}

/// Direct check on `Ω`: is the pointwise stabilizer of the points trivial?
pub fn verify_base_bruteforce(spec: &ProductGroupSpec, points: &[ProductPoint]) -> Result<bool> {
    let omega = realize_on_omega(spec, OMEGA_LIMIT)?;
    if points
        .iter()
        .any(|x| x.len() != spec.k() || x.coords.iter().any(|&c| c >= spec.gamma()))
    {
        return Ok(false);
    }
    let idx: Vec<usize> = points.iter().map(|x| x.index(spec.gamma())).collect();
    Ok(is_base(&omega, &idx))
}

/// `S` acting on itself by `x ↦ s⁻¹x` and `x ↦ xs`, which realizes `S × S`
/// with the diagonal as point stabilizer. Elements are indexed in
/// breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct DiagonalGroup {
    pub group: PermGroup,
    pub elements: Vec<Permutation>,
}

pub const DIAGONAL_ORDER_LIMIT: usize = 10_000;

pub fn diagonal_type_group(s: &PermGroup) -> Result<DiagonalGroup> {
    let gens = s.generators();
    let abelian = gens
        .iter()
        .all(|a| gens.iter().all(|b| a.then(b) == b.then(a)));
    if abelian {
        return Err(Error::Precondition("S must be nonabelian".into()));
    }
    let id = s.identity();
    let mut index: HashMap<Permutation, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !index.contains_key(&y) {
                if elements.len() >= DIAGONAL_ORDER_LIMIT {
                    return Err(Error::LimitExceeded(format!(
                        "|S| exceeds {DIAGONAL_ORDER_LIMIT}"
                    )));
                }
                index.insert(y.clone(), elements.len());
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    let central = elements
        .iter()
        .any(|z| !z.is_identity() && gens.iter().all(|g| z.then(g) == g.then(z)));
    if central {
        return Err(Error::Precondition("S must have trivial center".into()));
    }
    let mut out = Vec::new();
    for g in gens {
        let gi = g.inverse();
        let left = elements.iter().map(|x| index[&gi.then(x)]).collect();
        let right = elements.iter().map(|x| index[&x.then(g)]).collect();
        out.push(Permutation::from_images(left)?);
        out.push(Permutation::from_images(right)?);
    }
    Ok(DiagonalGroup {
        group: PermGroup::new(elements.len(), out)?,
        elements,
    })
}

/// Outcome of the twisted wreath pipeline for `T^2 wr P`.
#[derive(Clone, Debug)]
pub struct TwistedDemoReport {
    pub k: usize,
    pub t_order: usize,
    pub p_order: BigUint,
    pub h_base: Vec<usize>,
    pub certificate: PartitionCertificate,
    pub base: Vec<ProductPoint>,
    pub verified: bool,
    /// `log(|T|^k |P|)`.
    pub log2_g: f64,
    pub constant: f64,
    /// `2c · log(|T|^k |P|) / log(|T|^{2k})`.
    pub bound: f64,
    /// Same with the degree of the product action, `log(|T|^k)`.
    pub bound_true_degree: f64,
}

/// Builds `H` of diagonal type from `T`, a certificate for `P`, an `H`-base
/// by brute force, and the assembled base with its composed verification.
pub fn twisted_wreath_demo(
    t: &PermGroup,
    p: &PermGroup,
    constant: f64,
    seed: u64,
) -> Result<TwistedDemoReport> {
    if !p.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let diag = diagonal_type_group(t)?;
    let h_base = oracles::minimal_base(&diag.group, oracles::BASE_SEARCH_BUDGET)?;
    let certificate = partitions::synthesize(p, seed)?;
    let spec = ProductGroupSpec::new(diag.group.clone(), p.clone(), None)?;
    let base = base_almost_simple(&spec, &h_base, &certificate)?;
    let verified = verify_base_composed(&spec, &base, &h_base, &certificate);
    let k = p.degree();
    let t_order = diag.elements.len();
    let p_chain = p.chain();
    let log_t = (t_order as f64).log2();
    let log2_g = k as f64 * log_t + p_chain.log2_order();
    Ok(TwistedDemoReport {
        k,
        t_order,
        p_order: p_chain.order(),
        h_base,
        certificate,
        base,
        verified,
        log2_g,
        constant,
        bound: 2.0 * constant * log2_g / (2.0 * k as f64 * log_t),
        bound_true_degree: 2.0 * constant * log2_g / (k as f64 * log_t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pt(c: &[usize]) -> ProductPoint {
        ProductPoint { coords: c.to_vec() }
    }

    #[test]
    fn apply_examples() {
        let x = pt(&[3, 4]);
        assert_eq!(WreathElement::identity(5, 2).apply(&x).unwrap(), x);
        let swap = WreathElement::top_only(5, Permutation::parse_cycles(2, "(1 2)").unwrap());
        assert_eq!(swap.apply(&x).unwrap(), pt(&[4, 3]));
        let h1 = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let e = WreathElement::base(vec![h1, Permutation::identity(3)]).unwrap();
        assert_eq!(e.apply(&pt(&[0, 2])).unwrap(), pt(&[1, 2]));
    }

    #[test]
    fn lpp_examples() {
        let a = TwoPartition::new(4, [0, 1]).unwrap();
        let b = TwoPartition::new(4, [0, 2]).unwrap();
        assert_eq!(
            lpp_points(&[a.clone(), b.clone()], 4, 5).unwrap(),
            vec![pt(&[0, 1, 2, 3])]
        );
        assert_eq!(
            lpp_points(std::slice::from_ref(&a), 4, 2).unwrap(),
            vec![pt(&[0, 0, 1, 1])]
        );
        assert_eq!(lpp_points(&[a.clone(), b, a], 4, 2).unwrap().len(), 3);
    }

    #[test]
    fn twisted_layouts() {
        let h = catalog::symmetric(6);
        let sigma = Permutation::parse_cycles(6, "(1 2 3 4 5 6)").unwrap();
        let spec = ProductGroupSpec::new(
            h,
            catalog::cyclic(4),
            Some(Twist {
                t: 2,
                sigmas: vec![sigma.clone()],
            }),
        )
        .unwrap();
        let s = |g: usize| sigma.apply(g);
        let pts = base_twisted_case22(&spec, &[0, 1, 2, 3]).unwrap();
        assert_eq!(pts, vec![pt(&[0, s(1), 0, s(1)]), pt(&[2, s(3), 2, s(3)])]);
        let pts = base_twisted_case22(&spec, &[0, 1, 2]).unwrap();
        assert_eq!(pts[1], pt(&[2, s(2), 2, s(2)]));
    }

    #[test]
    fn diagonal_group_of_a5() {
        let d = diagonal_type_group(&catalog::alternating(5)).unwrap();
        assert_eq!(d.group.degree(), 60);
        assert_eq!(d.group.order(), BigUint::from(3600u32));
        assert!(d.group.is_transitive());
        let stab = crate::chain::pointwise_stabilizer(&d.group, &[0]).unwrap();
        assert_eq!(stab.order(), BigUint::from(60u32));
        assert!(diagonal_type_group(&catalog::cyclic(5)).is_err());
    }
}
