//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! measured time and limit; the test fails if any criterion fails.
//!
//! Lines are written straight to stderr so they appear without
//! `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permbase::blocks;
use permbase::coloring::{Coloring, TwoPartition};
use permbase::group::{alternating_or_symmetric, GiantKind};
use permbase::partitions;
use permbase::product::{self, ProductGroupSpec, ProductPoint, Twist};
use permbase::{catalog, oracles, PermGroup, Permutation, StructureTree};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run(id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over time limit")),
        Err(e) => (false, e),
    };
    let line = format!(
        "criterion {id} [{}] {title}: {:.2}s / {}s limit; {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    let _ = writeln!(std::io::stderr(), "{line}");
    pass
}

fn catalog_group(name: &str) -> Result<PermGroup, String> {
    ok(catalog::parse(name))
}

fn conversion_soundness() -> Check {
    let mut groups = 0;
    let mut samples = 0;
    for name in catalog::pipeline_catalog() {
        let g = catalog_group(name)?;
        if g.degree() > 8 {
            continue;
        }
        groups += 1;
        let colorings = partitions::sample_colorings(g.degree(), g.degree() as u32, 50, groups);
        for c in colorings {
            let twos: Vec<Coloring> = partitions::m_to_2_partitions(&c)
                .iter()
                .map(TwoPartition::to_coloring)
                .collect();
            let lhs = ok(oracles::partition_stabilizer_exhaustive(
                &g,
                std::slice::from_ref(&c),
                oracles::ENUMERATION_LIMIT,
            ))?;
            let rhs = ok(oracles::partition_stabilizer_exhaustive(
                &g,
                &twos,
                oracles::ENUMERATION_LIMIT,
            ))?;
            let lc = lhs.chain();
            let same = lhs.order() == rhs.order()
                && rhs
                    .generators()
                    .iter()
                    .all(|x| lc.contains(x).unwrap_or(false));
            ensure(same, || {
                format!("{name}: stabilizers differ for {:?}", c.colors())
            })?;
            samples += 1;
        }
    }
    ensure(groups >= 5, || {
        format!("only {groups} groups of degree <= 8")
    })?;
    Ok(format!("{groups} groups, {samples} partitions, 0 failures"))
}

fn pipeline() -> Check {
    let names = catalog::pipeline_catalog();
    ensure(names.len() >= 12, || "catalog too small".into())?;
    let mut worst: f64 = 0.0;
    let mut cross_checked = 0;
    for name in &names {
        let g = catalog_group(name)?;
        ensure(g.degree() <= 30 && g.is_transitive(), || {
            format!("{name}: not a transitive group of degree <= 30")
        })?;
        let cert = ok(partitions::synthesize(&g, 0))?;
        ensure(cert.verified, || {
            format!("{name}: certificate not verified")
        })?;
        ensure(ok(cert.check(&g))?, || format!("{name}: re-check failed"))?;
        if g.order() <= BigUint::from(oracles::ENUMERATION_LIMIT) {
            let cs: Vec<Coloring> = cert
                .partitions
                .iter()
                .map(TwoPartition::to_coloring)
                .collect();
            let exact = ok(oracles::stabilizer_is_trivial_by_enumeration(
                &g,
                &cs,
                oracles::ENUMERATION_LIMIT,
            ))?;
            ensure(exact, || {
                format!("{name}: enumeration finds a nontrivial stabilizer")
            })?;
            cross_checked += 1;
        }
        let k = g.degree();
        let count = cert.count();
        if ok(blocks::is_primitive(&g))? {
            if ok(alternating_or_symmetric(&g))? != GiantKind::Neither {
                let want = (k as f64).log2().ceil() as usize;
                ensure(count == want, || {
                    format!("{name}: {count} partitions, expected {want}")
                })?;
            } else {
                ensure(count <= 3, || {
                    format!("{name}: {count} partitions for a primitive group")
                })?;
            }
        } else {
            let tree = ok(StructureTree::build(&g))?;
            if ok(tree.detect_large_levels())?.is_empty() {
                ensure(count <= 6, || {
                    format!("{name}: {count} partitions without large levels")
                })?;
            } else {
                let want = ok(partitions::expected_imprimitive_count(&tree))?;
                ensure(count == want, || {
                    format!("{name}: {count} partitions, expected {want}")
                })?;
            }
        }
        let ratio = cert.bound_ratio();
        ensure(ratio <= 10.0, || format!("{name}: bound ratio {ratio:.4}"))?;
        worst = worst.max(ratio);
    }
    Ok(format!(
        "{} groups verified, {cross_checked} cross-checked by enumeration, max bound ratio {worst:.4}",
        names.len()
    ))
}

fn distinguishing() -> Check {
    for n in 3..=6 {
        let ds = ok(partitions::distinguishing_number(&catalog::symmetric(n)))?;
        ensure(ds == n, || format!("D(S_{n}) = {ds}"))?;
        let da = ok(partitions::distinguishing_number(&catalog::alternating(n)))?;
        ensure(da == n - 1, || format!("D(A_{n}) = {da}"))?;
    }
    let others = [
        "psl32",
        "cyclic(5)",
        "cyclic(7)",
        "dihedral(5)",
        "dihedral(7)",
    ];
    let mut max = 0;
    for name in others {
        let g = catalog_group(name)?;
        ensure(ok(blocks::is_primitive(&g))?, || {
            format!("{name} is not primitive")
        })?;
        let d = ok(partitions::distinguishing_number(&g))?;
        ensure(d <= 4, || format!("D({name}) = {d}"))?;
        max = max.max(d);
    }
    Ok(format!(
        "D(S_n) = n and D(A_n) = n-1 for 3 <= n <= 6; max D over {} primitive groups is {max}",
        others.len()
    ))
}

fn product_base() -> Check {
    let spec = ok(ProductGroupSpec::new(
        catalog::symmetric(5),
        catalog::cyclic(3),
        None,
    ))?;
    let h_base = vec![0, 1, 2, 3];
    let cert = ok(partitions::synthesize(spec.p(), 0))?;
    let base = ok(product::base_almost_simple(&spec, &h_base, &cert))?;
    ensure(base.len() <= 6, || format!("base of size {}", base.len()))?;
    ensure(ok(product::verify_base_bruteforce(&spec, &base))?, || {
        "explicit check failed".into()
    })?;
    ensure(
        product::verify_base_composed(&spec, &base, &h_base, &cert),
        || "composed check failed".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut broken = 0;
    for m in 0..20 {
        let mut cand = base.clone();
        if m % 2 == 0 {
            cand.remove(rng.gen_range(0..cand.len()));
        } else {
            let at = rng.gen_range(0..cand.len());
            let mut coords = cand[at].coords().to_vec();
            let j = rng.gen_range(0..coords.len());
            coords[j] = rng.gen_range(0..5);
            cand[at] = ok(ProductPoint::new(coords, 5))?;
        }
        let a = product::verify_base_composed(&spec, &cand, &h_base, &cert);
        let b = ok(product::verify_base_bruteforce(&spec, &cand))?;
        ensure(a == b, || format!("verifiers disagree on mutation {m}"))?;
        broken += usize::from(!b);
    }
    let log_g = 3.0 * 120f64.log2() + 3f64.log2();
    let lower = (log_g / 125f64.log2()).ceil() as usize;
    ensure(base.len() >= lower, || {
        format!("base {} below lower bound {lower}", base.len())
    })?;
    Ok(format!(
        "base of size {} (lower bound {lower}) on |Ω| = 125; verifiers agree on 20 mutations ({broken} non-bases)",
        base.len()
    ))
}

fn twisted_layout() -> Check {
    // σ_1 = (1 2 3 4 5), i.e. x -> x + 1 mod 5 on 0-based points
    let sigma = ok(Permutation::parse_cycles(5, "(1 2 3 4 5)"))?;
    let spec = |p: &str| {
        ProductGroupSpec::new(
            catalog::symmetric(5),
            catalog::parse(p).unwrap(),
            Some(Twist {
                t: 2,
                sigmas: vec![sigma.clone()],
            }),
        )
    };
    let pt = |c: &[usize]| ProductPoint::new(c.to_vec(), 5).unwrap();
    let cases: [(&str, Vec<usize>, Vec<ProductPoint>); 3] = [
        (
            "cyclic(4)",
            vec![0, 1, 2, 3],
            vec![pt(&[0, 2, 0, 2]), pt(&[2, 4, 2, 4])],
        ),
        (
            "cyclic(4)",
            vec![0, 1, 2],
            vec![pt(&[0, 2, 0, 2]), pt(&[2, 3, 2, 3])],
        ),
        (
            "cyclic(8)",
            vec![0, 1, 2, 3],
            vec![pt(&[0, 2, 0, 2, 0, 2, 0, 2]), pt(&[2, 4, 2, 4, 2, 4, 2, 4])],
        ),
    ];
    for (p, h_base, want) in &cases {
        let got = ok(product::base_twisted_case22(&ok(spec(p))?, h_base))?;
        ensure(&got == want, || {
            format!("b = {}, P = {p}: {got:?}", h_base.len())
        })?;
    }
    let plain = ok(ProductGroupSpec::new(
        catalog::symmetric(5),
        catalog::cyclic(3),
        None,
    ))?;
    let t1 = ok(ProductGroupSpec::new(
        catalog::symmetric(5),
        catalog::cyclic(3),
        Some(Twist {
            t: 1,
            sigmas: vec![],
        }),
    ))?;
    let cert = ok(partitions::synthesize(plain.p(), 0))?;
    let diag = ok(product::base_almost_simple(&plain, &[0, 1, 2, 3], &cert))?;
    let degenerate = ok(product::base_twisted_case22(&t1, &[0, 1, 2, 3]))?;
    ensure(degenerate == diag[..4], || {
        "t = 1 does not give the diagonal points".into()
    })?;
    Ok("(b,t,k) in {(4,2,4), (3,2,4), (4,2,8)} match; t = 1 gives the diagonal points".into())
}

fn twisted_demo() -> Check {
    let c = ok(catalog::measured_constant(0))?;
    let mut parts = Vec::new();
    for p in ["cyclic(3)", "symmetric(3)"] {
        let r = ok(product::twisted_wreath_demo(
            &catalog::alternating(5),
            &catalog_group(p)?,
            c,
            0,
        ))?;
        ensure(r.verified, || {
            format!("P = {p}: composed verification failed")
        })?;
        ensure(r.base.len() as f64 <= r.bound, || {
            format!(
                "P = {p}: base {} exceeds bound {:.4}",
                r.base.len(),
                r.bound
            )
        })?;
        parts.push(format!("P = {p}: base {} <= {:.4}", r.base.len(), r.bound));
    }
    Ok(format!("c = {c:.4}; {}", parts.join(", ")))
}

fn kernel_structure() -> Check {
    let mut parts = Vec::new();
    for (a, t) in [(2, 1), (2, 2), (4, 2)] {
        let g = ok(catalog::linked_wreath(7, a, t, None))?;
        let tree = ok(StructureTree::build(&g))?;
        let large = ok(tree.detect_large_levels())?;
        ensure(large.len() == 1, || {
            format!("({a},{t}): {} large levels", large.len())
        })?;
        let l = &large[0];
        let half = BigUint::from(2520u32);
        let want = num_traits::pow(half, a / t);
        ensure(
            l.even_kernel().order() == want && *l.kernel_order() == want,
            || format!("({a},{t}): |K0| = {}", l.kernel_order()),
        )?;
        let expected_classes: Vec<Vec<usize>> =
            (0..a / t).map(|q| (q * t..(q + 1) * t).collect()).collect();
        ensure(
            l.t() == t && l.classes() == expected_classes.as_slice(),
            || format!("({a},{t}): classes {:?}", l.classes()),
        )?;
        let c = ok(Permutation::from_cycles(7, &[(0..7).collect()]))?;
        let mut power = Permutation::identity(7);
        for v in 0..t {
            for j in 0..a / t {
                ensure(ok(l.automorphism(j, v))? == &power, || {
                    format!("({a},{t}): α_{{{j},{v}}} differs")
                })?;
            }
            power = ok(power.compose(&c))?;
        }
        ensure(l.pairing_holds(), || format!("({a},{t}): pairing fails"))?;
        parts.push(format!("({a},{t}) |K0| = {want}"));
    }
    Ok(parts.join(", "))
}

fn oracle_sanity() -> Check {
    for n in 4..=8 {
        let bs = ok(oracles::base_size_bruteforce(
            &catalog::symmetric(n),
            oracles::BASE_SEARCH_BUDGET,
        ))?;
        ensure(bs == n - 1, || format!("b(S_{n}) = {bs}"))?;
        let ba = ok(oracles::base_size_bruteforce(
            &catalog::alternating(n),
            oracles::BASE_SEARCH_BUDGET,
        ))?;
        ensure(ba == n - 2, || format!("b(A_{n}) = {ba}"))?;
    }
    let mut min: f64 = f64::INFINITY;
    for name in catalog::pipeline_catalog() {
        let r = ok(oracles::base_size_report(
            &catalog_group(name)?,
            oracles::BASE_SEARCH_BUDGET,
        ))?;
        ensure(r.ratio >= 1.0 - 1e-9, || {
            format!("{name}: ratio {:.4}", r.ratio)
        })?;
        min = min.min(r.ratio);
    }
    Ok(format!(
        "b(S_n) = n-1 and b(A_n) = n-2 for 4 <= n <= 8; min catalog ratio {min:.4}"
    ))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "conversion soundness", secs(60), conversion_soundness),
        run(2, "certificate pipeline", secs(180), pipeline),
        run(3, "distinguishing numbers", secs(60), distinguishing),
        run(4, "product-action base", secs(30), product_base),
        run(5, "twisted point layout", secs(1), twisted_layout),
        run(6, "twisted wreath demo", secs(120), twisted_demo),
        run(7, "kernel structure", secs(60), kernel_structure),
        run(8, "oracle sanity", secs(60), oracle_sanity),
    ];
    let failed: Vec<usize> = (1..=8).filter(|i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
