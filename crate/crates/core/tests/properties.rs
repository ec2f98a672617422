//! Property tests: algebraic identities of the ideal arithmetic, and
//! agreement of the independent computation routes on randomized inputs.

use proptest::prelude::*;

use monideal::constructions::{
    gmp_build, gmp_validate, is_polymatroidal, veronese_type, GmpFamily, VeroneseSpec,
};
use monideal::decomposition::{
    ass_oracle, associated_primes, associated_primes_by_localization, intersect_all,
    irreducible_decomposition, minimal_primes, minimal_vertex_covers, primary_decomposition,
};
use monideal::linalg::CoefficientField;
use monideal::resolution::{
    betti_oracle, betti_table, depth_quotient, has_linear_quotients, has_linear_resolution,
    projective_dimension,
};
use monideal::{Monomial, MonomialIdeal, MonomialPrime, Ring};

fn ideal_from(ring: &Ring, gens: Vec<Vec<u32>>) -> MonomialIdeal {
    let monomials = gens.into_iter().map(|e| Monomial::new(ring, e)).collect();
    MonomialIdeal::from_monomials(ring, monomials).unwrap()
}

/// Strategy: a proper nonzero ideal in `nvars` variables with exponents
/// up to `max_exp` and at most `max_gens` generators.
fn arb_proper_ideal(
    nvars: usize,
    max_exp: u32,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    let gen = prop::collection::vec(0..=max_exp, nvars)
        .prop_filter("nonconstant", |e| e.iter().any(|&x| x > 0));
    prop::collection::vec(gen, 1..=max_gens).prop_map(move |gens| {
        let ring = Ring::plain(nvars);
        ideal_from(&ring, gens)
    })
}

fn arb_monomial(nvars: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_exp, nvars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent_and_order_independent(
        gens in prop::collection::vec(arb_monomial(4, 3), 1..6),
        seed in any::<u64>(),
    ) {
        let ring = Ring::plain(4);
        let a = ideal_from(&ring, gens.clone());
        // shuffle deterministically by rotating
        let mut rotated = gens.clone();
        rotated.rotate_left((seed as usize) % gens.len().max(1));
        let b = ideal_from(&ring, rotated);
        prop_assert_eq!(&a, &b);
        // idempotent: re-feeding the generators changes nothing
        let again = ideal_from(&ring, a.generators().iter().map(|m| m.exponents().to_vec()).collect());
        prop_assert_eq!(&a, &again);
        // no generator divides another
        let gens = a.generators();
        for (i, u) in gens.iter().enumerate() {
            for (j, v) in gens.iter().enumerate() {
                if i != j {
                    prop_assert!(!u.divides(v));
                }
            }
        }
    }

    #[test]
    fn ring_operations_satisfy_ideal_identities(
        a in arb_proper_ideal(3, 3, 4),
        b in arb_proper_ideal(3, 3, 4),
        c in arb_proper_ideal(3, 3, 4),
    ) {
        // commutativity
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        prop_assert_eq!(a.product(&b).unwrap(), b.product(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        // associativity
        prop_assert_eq!(
            a.sum(&b).unwrap().sum(&c).unwrap(),
            a.sum(&b.sum(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.product(&b).unwrap().product(&c).unwrap(),
            a.product(&b.product(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        // distributivity of product over sum
        prop_assert_eq!(
            a.product(&b.sum(&c).unwrap()).unwrap(),
            a.product(&b).unwrap().sum(&a.product(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn colon_distributes_over_intersection(
        a in arb_proper_ideal(3, 3, 4),
        b in arb_proper_ideal(3, 3, 4),
        f in arb_monomial(3, 3),
    ) {
        let ring = Ring::plain(3);
        let f = Monomial::new(&ring, f);
        let lhs = a.intersect(&b).unwrap().colon_monomial(&f).unwrap();
        let rhs = a
            .colon_monomial(&f)
            .unwrap()
            .intersect(&b.colon_monomial(&f).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_power_is_contained_and_detects_principality(
        a in arb_proper_ideal(3, 2, 4),
        k in 2u32..4,
    ) {
        let bracket = a.bracket_power(k);
        let power = a.power(k);
        prop_assert!(power.contains_ideal(&bracket).unwrap());
        let equal = bracket == power;
        prop_assert_eq!(equal, a.num_generators() == 1);
    }

    #[test]
    fn bracket_power_commutes_with_intersection(
        a in arb_proper_ideal(3, 2, 4),
        b in arb_proper_ideal(3, 2, 4),
        k in 1u32..4,
    ) {
        let lhs = a.intersect(&b).unwrap().bracket_power(k);
        let rhs = a
            .bracket_power(k)
            .intersect(&b.bracket_power(k))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn localization_commutes_with_powers(
        a in arb_proper_ideal(4, 2, 4),
        mask in 1u32..15,
        k in 1u32..4,
    ) {
        let ring = Ring::plain(4);
        let support: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
        let p = MonomialPrime::new(&ring, support).unwrap();
        let lhs = a.power(k).localize(&p).unwrap();
        let rhs = a.localize(&p).unwrap().power(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompositions_reintersect_to_the_input(a in arb_proper_ideal(4, 3, 4)) {
        let comps = irreducible_decomposition(&a).unwrap();
        let ideals: Vec<MonomialIdeal> = comps.iter().map(|c| c.to_ideal()).collect();
        let back = intersect_all(&ideals).unwrap();
        prop_assert_eq!(back.as_ref(), Some(&a));
        // no component contains another
        for (i, c) in comps.iter().enumerate() {
            for (j, d) in comps.iter().enumerate() {
                if i != j {
                    prop_assert!(!c.contained_in(d) || c == d);
                }
            }
        }

        let primary = primary_decomposition(&a).unwrap();
        let ideals: Vec<MonomialIdeal> = primary.iter().map(|p| p.ideal.clone()).collect();
        let back = intersect_all(&ideals).unwrap();
        prop_assert_eq!(back.as_ref(), Some(&a));
        let mut radicals: Vec<_> = primary.iter().map(|p| p.radical.clone()).collect();
        radicals.dedup();
        prop_assert_eq!(radicals.len(), primary.len());
    }

    #[test]
    fn three_ass_routes_agree(a in arb_proper_ideal(4, 3, 4)) {
        let via_decomposition = associated_primes(&a).unwrap();
        let via_localization = associated_primes_by_localization(&a).unwrap();
        let via_witnesses = ass_oracle(&a).unwrap();
        prop_assert_eq!(&via_decomposition, &via_localization);
        prop_assert_eq!(&via_decomposition, &via_witnesses);
    }

    #[test]
    fn minimal_primes_sit_inside_ass_and_match_covers(a in arb_proper_ideal(4, 3, 4)) {
        let min = minimal_primes(&a).unwrap();
        let ass = associated_primes(&a).unwrap();
        for p in &min {
            prop_assert!(ass.contains(p));
        }
        let covers = minimal_vertex_covers(&a).unwrap();
        let mut cover_sets: Vec<Vec<usize>> = covers;
        cover_sets.sort_by(|x, y| (x.len(), x.clone()).cmp(&(y.len(), y.clone())));
        let prime_sets: Vec<Vec<usize>> = min.iter().map(|p| p.support().to_vec()).collect();
        prop_assert_eq!(cover_sets, prime_sets);
    }
}

#[test]
fn veronese_type_ideals_are_polymatroidal() {
    // Exchange property over every feasible spec with up to three
    // variables and caps up to three.
    for n in 1..=3usize {
        let ring = Ring::plain(n);
        let mut caps = vec![1u32; n];
        loop {
            let total: u32 = caps.iter().sum();
            let min_cap = *caps.iter().max().unwrap();
            for d in min_cap..=total {
                if let Ok(spec) = VeroneseSpec::new(caps.clone(), d) {
                    let v = veronese_type(&spec, &ring).unwrap();
                    assert!(is_polymatroidal(&v), "caps {:?}, d {}", caps, d);
                }
            }
            // next caps vector over {1,2,3}^n
            let mut i = 0;
            while i < n {
                if caps[i] < 3 {
                    caps[i] += 1;
                    break;
                }
                caps[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gmp_with_trivial_blocks_is_the_identity(base in arb_proper_ideal(3, 3, 4)) {
        // All blocks of size one with family(i, a) = (x_i^a) recovers the
        // base ideal exactly.
        let mut family = GmpFamily::new(base.clone(), vec![1, 1, 1]).unwrap();
        let one_var = Ring::plain(1);
        for i in 1..=3usize {
            for a in 1..=3u32 {
                let gen = Monomial::new(&one_var, vec![a]);
                let entry = MonomialIdeal::from_monomials(&one_var, vec![gen]).unwrap();
                family.insert(i, a, &entry).unwrap();
            }
        }
        prop_assert!(gmp_validate(&family).condition5_ok());
        let l = gmp_build(&family, true).unwrap();
        prop_assert_eq!(
            l.generators().iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
            base.generators().iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>()
        );
    }
}

proptest! {
    // Homology is costlier; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn betti_routes_agree(a in arb_proper_ideal(4, 2, 4)) {
        let q = CoefficientField::Rationals;
        let table = betti_table(&a, q).unwrap();
        let oracle = betti_oracle(&a, q).unwrap();
        prop_assert_eq!(&table, &oracle);
        prop_assert_eq!(table.total(0) as usize, a.num_generators());
    }

    #[test]
    fn auslander_buchsbaum_identity(a in arb_proper_ideal(4, 2, 4)) {
        let depth = depth_quotient(&a).unwrap();
        let pd = projective_dimension(&a).unwrap();
        prop_assert_eq!(depth + pd, 4);
    }

    #[test]
    fn linear_quotients_imply_linear_resolution_in_single_degree(
        a in arb_proper_ideal(4, 2, 4)
    ) {
        if a.generated_in_single_degree().is_some() && has_linear_quotients(&a).unwrap() {
            let report = has_linear_resolution(&a).unwrap();
            prop_assert!(report.holds);
        }
    }
}
