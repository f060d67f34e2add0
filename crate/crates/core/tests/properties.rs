use clusterchain::entanglement::{
    block_entropy_from, cmi_from, cmi_terms, make_partition_with, region_entropy, Remainder,
};
use clusterchain::freefermion::{sector_ground, SectorModes};
use clusterchain::{
    correlation_matrix, ground_state, low_spectrum, reduced_gamma, MajoranaCorrelation, ModelParamsF64 as Params,
    Sector,
};
use proptest::prelude::*;

const CLIP: f64 = 1e-9;

fn instance() -> impl Strategy<Value = (usize, usize, f64)> {
    (6usize..=40)
        .prop_flat_map(|n| (Just(n), 1..n.min(9)))
        .prop_flat_map(|(n, m)| {
            let h = prop_oneof![Just(0.0), Just(1.0), 0.0..2.5f64];
            (Just(n), Just(m), h)
        })
}

fn ground(n: usize, m: usize, h: f64) -> (Params, MajoranaCorrelation) {
    let p = Params::new(n, m, 1.0, h).unwrap();
    let corr = correlation_matrix(&p, &ground_state(&p)).unwrap();
    (p, corr)
}

fn subset(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn entropy(corr: &MajoranaCorrelation, sites: &[usize]) -> f64 {
    region_entropy(corr, sites, CLIP).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_antisymmetric_and_pure((n, m, h) in instance()) {
        let (_, corr) = ground(n, m, h);
        prop_assert!(corr.antisymmetry_defect() < 1e-12);
        prop_assert!(corr.purity_defect() < 1e-10);
    }

    #[test]
    fn reduced_spectrum_comes_in_pairs((n, m, h) in instance(), mask in any::<u64>()) {
        let (_, corr) = ground(n, m, h);
        let sites = subset(n, mask);
        prop_assume!(!sites.is_empty());
        let mut s: Vec<f64> = reduced_gamma(&corr, &sites).unwrap().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        prop_assert!(s[0] <= 1.0 + 1e-10);
        for pair in s.chunks(2) {
            prop_assert!((pair[0] - pair[1]).abs() < 1e-9, "{:?}", pair);
        }
    }

    #[test]
    fn complement_has_equal_entropy((n, m, h) in instance(), mask in any::<u64>()) {
        let (_, corr) = ground(n, m, h);
        let a = subset(n, mask);
        let b = subset(n, !mask);
        prop_assume!(!a.is_empty() && !b.is_empty());
        let (sa, sb) = (entropy(&corr, &a), entropy(&corr, &b));
        prop_assert!((sa - sb).abs() < 1e-9, "{} vs {}", sa, sb);
    }

    #[test]
    fn strong_subadditivity(
        (n, m, h) in instance(),
        start in 0usize..40,
        cuts in (1usize..14, 1usize..14, 1usize..14),
    ) {
        let (_, corr) = ground(n, m, h);
        let (la, lb, lc) = cuts;
        prop_assume!(la + lb + lc <= n);
        let arc = |from: usize, len: usize| -> Vec<usize> { (from..from + len).map(|k| (start + k) % n).collect() };
        let ab = arc(0, la + lb);
        let bc = arc(la, lb + lc);
        let b = arc(la, lb);
        let abc = arc(0, la + lb + lc);
        let v = entropy(&corr, &ab) + entropy(&corr, &bc) - entropy(&corr, &b) - entropy(&corr, &abc);
        prop_assert!(v >= -1e-10, "{}", v);
        for parts in [3, 4] {
            let partition = make_partition_with(n, parts, Remainder::Back).unwrap();
            prop_assert!(cmi_from(&corr, &partition, CLIP).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn block_entropy_ignores_offset((n, m, h) in instance(), l in 1usize..40, offset in 1usize..40) {
        let (p, corr) = ground(n, m, h);
        let l = m + l % (n - m);
        let offset = offset % n;
        let s0 = block_entropy_from(&corr, &p, l, 0).unwrap().value;
        let s1 = block_entropy_from(&corr, &p, l, offset).unwrap().value;
        prop_assert!((s0 - s1).abs() < 1e-10, "{} vs {}", s0, s1);
    }

    #[test]
    fn partitions_rotate_freely((n, m, h) in instance(), shift in 1usize..40) {
        let (_, corr) = ground(n, m, h);
        for parts in [3, 4] {
            let base = make_partition_with(n, parts, Remainder::Back).unwrap();
            let a = cmi_from(&corr, &base, CLIP).unwrap();
            let b = cmi_from(&corr, &base.rotated(shift % n), CLIP).unwrap();
            prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
        }
    }

    #[test]
    fn three_arcs_cover_a_pure_ring((n, m, h) in instance()) {
        let (_, corr) = ground(n, m, h);
        let t = cmi_terms(&corr, &make_partition_with(n, 3, Remainder::Back).unwrap(), CLIP).unwrap();
        prop_assert!(t.s_abc.abs() < 1e-10);
        prop_assert!((t.value() - (t.s_ab + t.s_bc - t.s_b)).abs() < 1e-10);
    }

    #[test]
    fn remainder_placement_keeps_the_dichotomy(n in 12usize..60, m in 1usize..7) {
        prop_assume!(m < n / 4);
        let (_, corr) = ground(n, m, 0.0);
        let long_range = n % 2 == 1 && m % 2 == 1;
        for r in [Remainder::Back, Remainder::Front] {
            let q = cmi_from(&corr, &make_partition_with(n, 4, r).unwrap(), CLIP).unwrap();
            if long_range {
                prop_assert!(q > 0.05, "N={} m={} {:?}: {}", n, m, r, q);
            } else {
                prop_assert!(q.abs() < 1e-8, "N={} m={} {:?}: {}", n, m, r, q);
            }
        }
    }

    #[test]
    fn low_spectrum_is_sorted_prefix((n, m, h) in instance(), k in 1usize..30, extra in 1usize..30) {
        let p = Params::new(n, m, 1.0, h).unwrap();
        let short = low_spectrum(&p, k).unwrap();
        let long = low_spectrum(&p, k + extra).unwrap();
        prop_assert!(long.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(&long[..short.len()], &short[..]);
    }

    #[test]
    fn parity_representatives_share_entropies(n in (4usize..30).prop_map(|k| 2 * k + 1), m in 0usize..5, l in 0usize..30) {
        // the two real zero-field odd-odd representatives, one per sector
        let m = 2 * m + 1;
        prop_assume!(m < n);
        let p = Params::new(n, m, 1.0, 0.0).unwrap();
        let l = 1 + l % (n - 1);
        let sites: Vec<usize> = (0..l).collect();
        let s: Vec<f64> = Sector::ALL
            .iter()
            .map(|&sector| {
                let g = sector_ground(&p, sector);
                let modes = SectorModes::solve(&p, sector);
                let corr = MajoranaCorrelation::from_modes(&modes, &g.occupied_modes).unwrap();
                entropy(&corr, &sites)
            })
            .collect();
        prop_assert!((s[0] - s[1]).abs() < 1e-9, "{:?}", s);
    }
}
