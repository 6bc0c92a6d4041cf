//! Library results against independent brute-force computations.

mod common;

use common::*;
use daisylab::bounds::{big_binomial, btower, check_lemma_comput, lll_threshold, tower};
use daisylab::coloring::{random_coloring, Coloring, ColoringHeader, Domain};
use daisylab::daisy::{DaisySpec, KernelFilter};
use daisylab::ground::{binomial, colex_rank, colex_unrank, enumerate_subsets, SetMask};
use daisylab::search::{
    dependency_degree, exact_ramsey, ExactOptions, RamseyQuery, Variant, Verdict,
};
use daisylab::shift::{
    build_shift_graph, chromatic_number_exact, longest_mono_dipath, ArcColoring, Digraph,
    PathLength,
};
use daisylab::verify::{find_level_homogeneous_with, find_mono_daisy, verify_witness};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn enumeration_matches_colex_definition() {
    for n in 0..=10 {
        for u in 0..=n {
            let got: Vec<u64> = enumerate_subsets(SetMask::full(n), u)
                .map(SetMask::bits)
                .collect();
            let want = colex_listing(n, u);
            assert_eq!(got, want, "n={n} u={u}");
            for (i, &x) in want.iter().enumerate() {
                assert_eq!(colex_rank(SetMask(x)), i as u64);
                assert_eq!(colex_unrank(i as u64, u).bits(), x);
            }
        }
    }
}

#[test]
fn enumeration_inside_a_sparse_ground() {
    let ground = SetMask::from_elements([2, 3, 5, 8, 13]);
    let got: Vec<u64> = enumerate_subsets(ground, 3).map(SetMask::bits).collect();
    let mut want = submasks_of_size(ground.bits(), 3);
    want.sort_by_key(|&x| elements_desc(x));
    assert_eq!(got, want);
}

#[test]
fn binomials_match_pascal() {
    for n in 0..=64 {
        for k in 0..=n {
            assert_eq!(binomial(n, k) as u128, pascal(n, k));
            assert_eq!(
                big_binomial(n as u64, k as u64),
                BigUint::from(pascal(n, k))
            );
        }
    }
}

fn kernels_of(filter: KernelFilter) -> Kernels {
    match filter {
        KernelFilter::Any => Kernels::Any,
        KernelFilter::Empty => Kernels::Size(0),
        KernelFilter::FixedSize(k) => Kernels::Size(k),
        KernelFilter::Simple(k) => Kernels::Simple(k),
    }
}

fn check_finder(c: &Coloring, spec: &DaisySpec) {
    let oracle = mono_daisies(c, spec.r, spec.m, kernels_of(spec.kernel));
    let found = find_mono_daisy(c, spec).unwrap();
    assert_eq!(found.is_some(), !oracle.is_empty(), "{spec:?}");
    if let Some(w) = found {
        assert!(verify_witness(c, spec, &w));
        // first in (kernel size, kernel colex, universe colex) order
        let first = oracle
            .iter()
            .min_by_key(|&&(k, u)| (popcount(k), elements_desc(k), elements_desc(u)))
            .unwrap();
        assert_eq!((w.kernel.bits(), w.universe.bits()), *first);
    }
}

fn check_superdaisy_finder(c: &Coloring, spec: &DaisySpec) {
    let oracle = level_homogeneous(c, spec.r, spec.m, kernels_of(spec.kernel));
    let found = find_level_homogeneous_with(c, spec).unwrap();
    assert_eq!(found.is_some(), !oracle.is_empty(), "{spec:?}");
    if let Some(w) = found {
        assert_eq!(w.colors.len(), spec.r as usize);
        assert!(verify_witness(c, spec, &w));
        let first = oracle
            .iter()
            .min_by_key(|&&(k, u)| (popcount(k), elements_desc(k), elements_desc(u)))
            .unwrap();
        assert_eq!((w.kernel.bits(), w.universe.bits()), *first);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn power_finders_agree_with_oracle(
        n in 3u32..=7,
        colors in 2u16..=3,
        seed in any::<u64>(),
        r in 1u32..=3,
        extra in 0u32..=2,
        filter_pick in 0usize..5,
    ) {
        let m = r + extra;
        let c = random_coloring(&ColoringHeader::power(n, colors), seed).unwrap();
        let filter = [
            KernelFilter::Any,
            KernelFilter::Empty,
            KernelFilter::FixedSize(1),
            KernelFilter::Simple(None),
            KernelFilter::Simple(Some(1)),
        ][filter_pick];
        let spec = DaisySpec::new(r, m, filter).unwrap();
        check_finder(&c, &spec);
        check_superdaisy_finder(&c, &spec);
    }

    #[test]
    fn uniform_finder_agrees_with_oracle(n in 4u32..=8, seed in any::<u64>(), k in 0u32..=2, r in 1u32..=3, extra in 0u32..=2, simple in any::<bool>()) {
        let m = r + extra;
        prop_assume!(k + r <= n);
        let c = random_coloring(&ColoringHeader::uniform(n, k + r, 2), seed).unwrap();
        let filter = if simple { KernelFilter::Simple(Some(k)) } else { KernelFilter::FixedSize(k) };
        check_finder(&c, &DaisySpec::new(r, m, filter).unwrap());
    }

    #[test]
    fn product_colorings_use_joint_colors(n in 3u32..=6, seed in any::<u64>()) {
        let c = random_coloring(&ColoringHeader::power(n, 2).with_product(2), seed).unwrap();
        check_finder(&c, &DaisySpec::any(1, 2).unwrap());
        check_finder(&c, &DaisySpec::any(2, 3).unwrap());
    }
}

/// All colorings of the relevant sets, in lexicographic order of the
/// assignment vector (first relevant set most significant).
fn exhaustive_ramsey(r: u32, m: u32, n: u32, variant: Variant) -> Option<Vec<u8>> {
    let mut sizes: Vec<u32> = Vec::new();
    for k in 0..=n.saturating_sub(m) {
        match variant {
            Variant::Daisy => sizes.push(k + r),
            Variant::Superdaisy => sizes.extend((1..=r).map(|l| k + l)),
        }
    }
    sizes.sort_unstable();
    sizes.dedup();
    let sets: Vec<u64> = sizes.iter().flat_map(|&s| colex_listing(n, s)).collect();
    assert!(sets.len() <= 22, "oracle too large: {}", sets.len());
    // assignment bits: set i gets bit (len - 1 - i), so counting up is lexicographic
    for code in 0u64..1 << sets.len() {
        let assignment: Vec<u8> = (0..sets.len())
            .map(|i| (code >> (sets.len() - 1 - i) & 1) as u8)
            .collect();
        let mut table = vec![0u8; 1 << n];
        for (&s, &a) in sets.iter().zip(&assignment) {
            table[s as usize] = a;
        }
        let c = Coloring::power(n, 2, table).unwrap();
        let bad = match variant {
            Variant::Daisy => !mono_daisies(&c, r, m, Kernels::Any).is_empty(),
            Variant::Superdaisy => !level_homogeneous(&c, r, m, Kernels::Any).is_empty(),
        };
        if !bad {
            return Some(assignment);
        }
    }
    None
}

#[test]
fn exact_search_agrees_with_exhaustive_enumeration() {
    let cases = [
        (1, 2, 2..=4, Variant::Daisy),
        (1, 3, 3..=4, Variant::Daisy),
        (2, 2, 2..=4, Variant::Daisy),
        (2, 3, 3..=4, Variant::Daisy),
        (1, 2, 2..=4, Variant::Superdaisy),
        (2, 2, 2..=3, Variant::Superdaisy),
        (2, 3, 3..=3, Variant::Superdaisy),
    ];
    for (r, m, range, variant) in cases {
        let q = RamseyQuery::new(DaisySpec::any(r, m).unwrap(), 2, variant, range.clone()).unwrap();
        let out = exact_ramsey(
            &q,
            &ExactOptions {
                threads: 2,
                split_depth: 3,
                ..Default::default()
            },
        )
        .unwrap();
        for o in &out.per_n {
            let oracle = exhaustive_ramsey(r, m, o.n, variant);
            match (&o.verdict, oracle) {
                (Verdict::Avoidable { certificate, .. }, Some(assignment)) => {
                    let inst = daisylab::search::Instance::build(&q, o.n).unwrap();
                    let got: Vec<u8> = inst
                        .sets
                        .iter()
                        .map(|&s| certificate.color(s) as u8)
                        .collect();
                    assert_eq!(got, assignment, "least certificate r={r} m={m} n={}", o.n);
                }
                (Verdict::Unavoidable(_), None) => {}
                (v, oracle) => panic!(
                    "r={r} m={m} n={} {variant:?}: {v:?} vs oracle {oracle:?}",
                    o.n
                ),
            }
        }
    }
}

#[test]
fn dependency_degree_counts_edge_sharing_daisies() {
    for (r, m, k, n) in [
        (2, 3, 0, 6),
        (1, 2, 1, 5),
        (2, 3, 1, 6),
        (1, 3, 2, 7),
        (3, 4, 1, 7),
    ] {
        let base_kernel = (1u64 << k) - 1;
        let base_universe = ((1u64 << m) - 1) << k;
        let base_edges = submasks_of_size(base_universe, r);
        let mut incidences = 0u64;
        for (kk, uu) in placements(n, m, Kernels::Size(k)) {
            for &p in &base_edges {
                let x = base_kernel | p;
                if kk & !x == 0 && (x & !kk) & !uu == 0 {
                    incidences += 1;
                }
            }
        }
        assert_eq!(
            dependency_degree(r, m, k, n).unwrap(),
            BigUint::from(incidences),
            "({r},{m},{k},{n})"
        );
    }
}

#[test]
fn lll_threshold_matches_linear_scan() {
    for (r, m, ell) in [
        (2, 4, 2),
        (3, 7, 2),
        (3, 8, 2),
        (2, 5, 3),
        (2, 6, 2),
        (4, 8, 2),
        (1, 5, 3),
    ] {
        let edges = pascal(m, r) as u32;
        let rhs = BigUint::from(ell).pow(edges - 1);
        let mut n = 0u64;
        while BigUint::from(m).pow(r) * BigUint::from(n + 1).pow(m) < rhs {
            n += 1;
        }
        assert_eq!(lll_threshold(r, m, ell).unwrap(), n, "({r},{m},{ell})");
    }
}

#[test]
fn tower_values_satisfy_their_recursions() {
    for x in 1..=6u64 {
        let mut t = BigUint::from(x);
        for j in 0..=3u32 {
            let got = tower(j, x);
            if let Some(v) = got.exact() {
                assert_eq!(*v, t);
            }
            if t.bits() > 20 {
                break;
            }
            t = BigUint::from(1u32) << t.to_u64().unwrap();
        }
    }
    for x in 1..=30u64 {
        let b1 = pascal(x as u32, x as u32 / 2);
        assert_eq!(btower(1, x).unwrap().exact().unwrap(), &BigUint::from(b1));
        if b1 <= 64 {
            let b2 = pascal(b1 as u32, b1 as u32 / 2);
            assert_eq!(btower(2, x).unwrap().exact().unwrap(), &BigUint::from(b2));
        }
    }
}

fn pow_big(base: u64, e: u64) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // With mu = a/b the first-level inequality is (b-a)^b 2^(3a) >= b^b.
    #[test]
    fn lemma_check_is_sound(b in 3u64..=60, a_frac in 0.0f64..1.0, z in 2i64..=40) {
        let max_a = (b - 1) / 2;
        let a = 1 + ((max_a - 1) as f64 * a_frac) as u64;
        let exact = pow_big(b - a, b) * (BigUint::from(1u32) << (3 * a)) >= pow_big(b, b);
        let mu = BigRational::new((a as i64).into(), (b as i64).into());
        let z = BigRational::from_integer(z.into());
        match check_lemma_comput(1, &z, &mu, 64) {
            Ok(v) => prop_assert_eq!(v, exact),
            Err(daisylab::Error::Inconclusive) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[derive(Debug, Clone)]
struct SmallGraph {
    n: u32,
    arcs: Vec<[u32; 2]>,
}

fn small_graph(max_n: u32) -> impl Strategy<Value = SmallGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=(n * 2) as usize).prop_map(move |pairs| {
            SmallGraph {
                n,
                arcs: pairs
                    .into_iter()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| [u, v])
                    .collect(),
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chromatic_number_matches_backtracking(g in small_graph(10)) {
        let d = Digraph::new(g.n, g.arcs.clone(), None).unwrap();
        let (chi, vc) = chromatic_number_exact(&d).unwrap();
        prop_assert_eq!(chi, chromatic_oracle(&undirected(g.n as usize, &g.arcs)));
        prop_assert!(daisylab::shift::is_proper(&d, &vc));
    }

    #[test]
    fn longest_path_matches_dfs(g in small_graph(8), colors in proptest::collection::vec(0u32..2, 16)) {
        let d = Digraph::new(g.n, g.arcs.clone(), None).unwrap();
        let ac = ArcColoring { colors: colors[..g.arcs.len()].to_vec(), color_count: 2 };
        let got = longest_mono_dipath(&d, &ac).unwrap();
        for color in 0..2 {
            let want = longest_path_oracle(g.n as usize, &g.arcs, &ac.colors, color);
            match want {
                Some(v) => prop_assert_eq!(got[color as usize], PathLength::Finite(v)),
                None => prop_assert_eq!(got[color as usize], PathLength::Infinite),
            }
        }
    }
}

#[test]
fn shift_graph_chromatic_numbers_match_backtracking() {
    for (n, r) in [(4, 2), (5, 2), (6, 2), (7, 2), (5, 3), (6, 3)] {
        let g = build_shift_graph(n, r).unwrap();
        let (chi, _) = chromatic_number_exact(&g).unwrap();
        assert_eq!(
            chi,
            chromatic_oracle(&undirected(g.vertex_count() as usize, g.arcs())),
            "Sh({n},{r})"
        );
    }
}

#[test]
fn uniform_lookup_matches_rank_lookup() {
    let c = random_coloring(&ColoringHeader::uniform(9, 4, 3), 5).unwrap();
    assert_eq!(c.domain(), Domain::Uniform(4));
    for x in enumerate_subsets(SetMask::full(9), 4) {
        assert_eq!(c.color(x), c.layer(0)[colex_rank(x) as usize] as u64);
    }
}
