//! Named group constructors and the `catalog:` name grammar.
//!
//! ```text
//! symmetric(n) alternating(n) cyclic(n) dihedral(n) psl32
//! wreath(H,P)              H wr P, imprimitive action on |H|·|P| points
//! wreath_imprimitive(H,a)  H wr S_a
//! linked_wreath(m,a,t[,[cycles,...]])
//! ```
//!
//! Twists in `linked_wreath` are given in 1-based cycle notation, one per
//! position `1..t`, e.g. `linked_wreath(7,2,2,[(1 2 3 4 5 6 7)])`.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::tree::StructureTree;

fn group(degree: usize, cycles: Vec<Vec<Vec<usize>>>) -> PermGroup {
    let gens = cycles
        .into_iter()
        .map(|c| Permutation::from_cycles(degree, &c).expect("well-formed cycles"))
        .filter(|g| !g.is_identity())
        .collect();
    PermGroup::new(degree, gens).expect("degrees agree")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    group(n, vec![vec![(0..n).collect()], vec![vec![0, 1]]])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    group(n, vec![vec![vec![0, 1, 2]], vec![long]])
}

pub fn cyclic(n: usize) -> PermGroup {
    group(n, vec![vec![(0..n).collect()]])
}

/// Symmetries of the regular `n`-gon, order `2n` for `n ≥ 3`.
pub fn dihedral(n: usize) -> PermGroup {
    if n < 3 {
        return symmetric(n);
    }
    let reflection: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    let gens = vec![
        Permutation::from_cycles(n, &[(0..n).collect()]).expect("cycle"),
        Permutation::from_images(reflection).expect("bijection"),
    ];
    PermGroup::new(n, gens).expect("degrees agree")
}

/// `PSL(3,2) ≅ GL(3,2)` on the seven nonzero vectors of `F_2^3`; vector `v`
/// is point `v - 1`.
pub fn psl32() -> PermGroup {
    let singer = |v: usize| {
        let w = v << 1;
        (if v & 4 != 0 { w ^ 0b1011 } else { w }) & 7
    };
    let transvection = |v: usize| v ^ ((v & 1) << 1);
    let gens = [&singer as &dyn Fn(usize) -> usize, &transvection]
        .iter()
        .map(|f| Permutation::from_images((1..8).map(|v| f(v) - 1).collect()).expect("bijection"))
        .collect();
    PermGroup::new(7, gens).expect("degrees agree")
}

/// `H wr P` in imprimitive action: point `b·n + x` is point `x` of block `b`.
pub fn wreath_imprimitive(h: &PermGroup, p: &PermGroup) -> PermGroup {
    let n = h.degree();
    let a = p.degree();
    let mut gens = Vec::new();
    for g in h.generators() {
        let images = (0..n * a)
            .map(|y| if y < n { g.apply(y) } else { y })
            .collect();
        gens.push(Permutation::from_images(images).expect("bijection"));
    }
    for g in p.generators() {
        let images = (0..n * a).map(|y| g.apply(y / n) * n + y % n).collect();
        gens.push(Permutation::from_images(images).expect("bijection"));
    }
    PermGroup::new(n * a, gens).expect("degrees agree")
}

/// A transitive group of degree `m·a` whose block kernel over the `a` blocks
/// of size `m` is a product of `a/t` diagonal copies of `A_m`, each diagonal
/// spanning `t` consecutive blocks. The copy on the `v`-th block of a class is
/// twisted by `twists[v-1]` (identity for `v = 0`); the default twist is the
/// `v`-th power of an `m`-cycle.
///
/// The result is checked against the structure tree's own linking analysis.
pub fn linked_wreath(
    m: usize,
    a: usize,
    t: usize,
    twists: Option<Vec<Permutation>>,
) -> Result<PermGroup> {
    if m < 7 {
        return Err(Error::Precondition("linked_wreath needs m >= 7".into()));
    }
    if t == 0 || a == 0 || !a.is_multiple_of(t) {
        return Err(Error::Precondition(format!("t = {t} must divide a = {a}")));
    }
    let alphas: Vec<Permutation> = match twists {
        Some(tw) => {
            if tw.len() != t - 1 {
                return Err(Error::Precondition(format!(
                    "expected {} twists, got {}",
                    t - 1,
                    tw.len()
                )));
            }
            if let Some(bad) = tw.iter().find(|p| p.degree() != m) {
                return Err(Error::DegreeMismatch {
                    expected: m,
                    found: bad.degree(),
                });
            }
            std::iter::once(Permutation::identity(m))
                .chain(tw)
                .collect()
        }
        None => {
            let c = Permutation::from_cycles(m, &[(0..m).collect()]).expect("cycle");
            let mut out = vec![Permutation::identity(m)];
            for v in 1..t {
                out.push(out[v - 1].then(&c));
            }
            out
        }
    };
    let n = m * a;
    let classes = a / t;
    let mut gens = Vec::new();
    for z in alternating(m).generators() {
        for q in 0..classes {
            let mut images: Vec<usize> = (0..n).collect();
            for (v, alpha) in alphas.iter().enumerate() {
                let zv = z.conjugate_by(alpha);
                let base = (q * t + v) * m;
                for y in 0..m {
                    images[base + y] = base + zv.apply(y);
                }
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    if t > 1 {
        // block qt+v -> qt+v+1 carrying alpha_v(x) to alpha_{v+1}(x)
        let mut images = vec![0; n];
        for q in 0..classes {
            for v in 0..t {
                let next = (v + 1) % t;
                let phi = alphas[v].inverse().then(&alphas[next]);
                for y in 0..m {
                    images[(q * t + v) * m + y] = (q * t + next) * m + phi.apply(y);
                }
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    if classes > 1 {
        let images = (0..n).map(|x| (x + t * m) % n).collect();
        gens.push(Permutation::from_images(images)?);
    }
    let g = PermGroup::new(n, gens)?;

    let tree = StructureTree::build(&g)?;
    let large = tree.detect_large_levels()?;
    let ok = large.len() == 1 && large[0].t() == t && large[0].m() == m && large[0].a() == a;
    if !ok {
        return Err(Error::SelfCheck(format!(
            "linked_wreath({m},{a},{t}) did not produce a single large level with linking factor {t}"
        )));
    }
    Ok(g)
}

/// Parses a catalog name such as `wreath(cyclic(5),cyclic(3))`.
pub fn parse(name: &str) -> Result<PermGroup> {
    let mut p = Parser { src: name, pos: 0 };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::UnknownGroup(format!("trailing input in {name:?}")));
    }
    Ok(g)
}

/// Catalog entries used by the pipeline checks: transitive groups of degree
/// at most 30 covering the primitive, imprimitive and linked cases.
pub fn pipeline_catalog() -> Vec<&'static str> {
    vec![
        "symmetric(8)",
        "alternating(8)",
        "cyclic(6)",
        "wreath(symmetric(2),symmetric(2))",
        "wreath(symmetric(2),symmetric(3))",
        "wreath_imprimitive(alternating(7),2)",
        "linked_wreath(7,2,2)",
        "linked_wreath(7,4,2)",
        "linked_wreath(8,2,2)",
        "psl32",
        "dihedral(12)",
        "wreath(cyclic(5),cyclic(3))",
        "cyclic(5)",
        "symmetric(6)",
        "wreath(symmetric(3),cyclic(4))",
        "wreath(cyclic(2),psl32)",
        "linked_wreath(7,2,1)",
    ]
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::UnknownGroup(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn peek(&mut self, c: char) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(c)
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn number(&mut self) -> Result<usize> {
        let s = self.ident()?;
        s.parse()
            .map_err(|_| Error::UnknownGroup(format!("expected a number, got {s:?}")))
    }

    fn group(&mut self) -> Result<PermGroup> {
        let name = self.ident()?.to_string();
        match name.as_str() {
            "psl32" => Ok(psl32()),
            "symmetric" | "alternating" | "cyclic" | "dihedral" => {
                self.eat('(')?;
                let n = self.number()?;
                self.eat(')')?;
                if n == 0 {
                    return Err(Error::UnknownGroup(format!("{name}(0)")));
                }
                Ok(match name.as_str() {
                    "symmetric" => symmetric(n),
                    "alternating" => alternating(n),
                    "cyclic" => cyclic(n),
                    _ => dihedral(n),
                })
            }
            "wreath" => {
                self.eat('(')?;
                let h = self.group()?;
                self.eat(',')?;
                let p = self.group()?;
                self.eat(')')?;
                Ok(wreath_imprimitive(&h, &p))
            }
            "wreath_imprimitive" => {
                self.eat('(')?;
                let h = self.group()?;
                self.eat(',')?;
                let a = self.number()?;
                self.eat(')')?;
                Ok(wreath_imprimitive(&h, &symmetric(a)))
            }
            "linked_wreath" => {
                self.eat('(')?;
                let m = self.number()?;
                self.eat(',')?;
                let a = self.number()?;
                self.eat(',')?;
                let t = self.number()?;
                let mut twists = None;
                if self.peek(',') {
                    self.eat(',')?;
                    self.eat('[')?;
                    let mut list = Vec::new();
                    while !self.peek(']') {
                        if !list.is_empty() {
                            self.eat(',')?;
                        }
                        list.push(self.cycles(m)?);
                    }
                    self.eat(']')?;
                    twists = Some(list);
                }
                self.eat(')')?;
                linked_wreath(m, a, t, twists)
            }
            _ => Err(Error::UnknownGroup(name)),
        }
    }

    /// A run of parenthesized cycles, e.g. `(1 2 3)(4 5)`, or `()`.
    fn cycles(&mut self, degree: usize) -> Result<Permutation> {
        self.skip_ws();
        let start = self.pos;
        while self.peek('(') {
            let close = self.src[self.pos..]
                .find(')')
                .ok_or_else(|| self.err("unclosed cycle"))?;
            self.pos += close + 1;
        }
        if start == self.pos {
            return Err(self.err("expected a cycle"));
        }
        Permutation::parse_cycles(degree, &self.src[start..self.pos])
    }
}

/// The largest certificate `bound_ratio` over [`pipeline_catalog`], the
/// measured stand-in for the constant of the partition bound.
pub fn measured_constant(seed: u64) -> Result<f64> {
    let mut c: f64 = 0.0;
    for name in pipeline_catalog() {
        let cert = crate::partitions::synthesize(&parse(name)?, seed)?;
        c = c.max(cert.bound_ratio());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn standard_orders() {
        assert_eq!(symmetric(5).order(), BigUint::from(120u32));
        assert_eq!(alternating(6).order(), BigUint::from(360u32));
        assert_eq!(dihedral(12).order(), BigUint::from(24u32));
        assert_eq!(psl32().order(), BigUint::from(168u32));
        assert!(psl32().is_transitive());
    }

    #[test]
    fn parse_names() {
        let g = parse("wreath(cyclic(5), cyclic(3))").unwrap();
        assert_eq!(g.degree(), 15);
        assert_eq!(g.order(), BigUint::from(3u32 * 125));
        let g = parse("wreath_imprimitive(alternating(7),2)").unwrap();
        assert_eq!(g.degree(), 14);
        assert!(parse("monster").is_err());
        assert!(parse("cyclic(3) x").is_err());
        assert!(parse("cyclic(0)").is_err());
    }

    #[test]
    fn linked_wreath_with_explicit_twist() {
        let g = parse("linked_wreath(7,2,2,[(1 2 3 4 5 6 7)])").unwrap();
        assert_eq!(g.degree(), 14);
        assert_eq!(g.order(), BigUint::from(2520u32 * 2));
        assert!(parse("linked_wreath(7,4,1,[])").is_ok());
        assert!(linked_wreath(7, 3, 2, None).is_err());
        assert!(linked_wreath(6, 2, 2, None).is_err());
    }
}
