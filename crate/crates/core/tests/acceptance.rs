//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monideal::constructions::{
    bracket_ass_transversal, capped_veronese_gmp, gmp_build, gmp_validate,
    transversal_ass, transversal_build, transversal_gmp_family,
    transversal_power_decomposition, TransversalSpec,
};
use monideal::decomposition::{
    ass_oracle, associated_primes, astab, dim_quotient, height, irreducible_decomposition,
    is_unmixed, minimal_vertex_covers,
};
use monideal::linalg::CoefficientField;
use monideal::resolution::{
    analytic_spread_transversal, betti_oracle, betti_table, depth_quotient, dstab,
    has_linear_quotients, has_linear_resolution, regularity,
};
use monideal::{Monomial, MonomialIdeal, MonomialPrime, Ring};

fn ideal(ring: &Ring, gens: &[&[u32]]) -> MonomialIdeal {
    let monomials = gens
        .iter()
        .map(|g| Monomial::new(ring, g.to_vec()))
        .collect();
    MonomialIdeal::from_monomials(ring, monomials).unwrap()
}

/// All subsets of the variables with 1 <= |F| <= max_size, as primes.
fn small_support_primes(ring: &Ring, max_size: usize) -> Vec<MonomialPrime> {
    let n = ring.total_vars();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= max_size {
            let support: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            out.push(MonomialPrime::new(ring, support).unwrap());
        }
    }
    out.sort();
    out
}

#[test]
fn criterion_01_degree_seven_golden() {
    let start = Instant::now();
    let l = capped_veronese_gmp(2, 2, 7).unwrap();
    let r = l.ring().clone();
    assert_eq!(
        l,
        ideal(
            &r,
            &[&[2, 1, 2, 2], &[1, 2, 2, 2], &[2, 2, 2, 1], &[2, 2, 1, 2]],
        )
    );
    let ass = associated_primes(&l).unwrap();
    assert_eq!(ass, small_support_primes(&r, 2));
    assert_eq!(ass.len(), 10);
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 1 over 1 s");
    println!("ACCEPTANCE 01 degree-7 golden generators and primes: PASS");
}

#[test]
fn criterion_02_degree_three_golden() {
    let start = Instant::now();
    let s = Ring::plain(2);
    let base = ideal(&s, &[&[1, 2], &[2, 1]]);
    let comps = irreducible_decomposition(&base).unwrap();
    let as_ideals: Vec<MonomialIdeal> = comps.iter().map(|c| c.to_ideal()).collect();
    assert_eq!(
        as_ideals,
        vec![
            ideal(&s, &[&[1, 0]]),
            ideal(&s, &[&[0, 1]]),
            ideal(&s, &[&[2, 0], &[0, 2]]),
        ]
    );
    let l = capped_veronese_gmp(2, 2, 3).unwrap();
    assert_eq!(height(&l).unwrap(), 2);
    assert_eq!(dim_quotient(&l).unwrap(), 2);
    assert!(is_unmixed(&l).unwrap());
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 2 over 1 s");
    println!("ACCEPTANCE 02 degree-3 golden decomposition and dimension: PASS");
}

#[test]
fn criterion_03_degree_four_regularity() {
    let start = Instant::now();
    let l = capped_veronese_gmp(2, 2, 4).unwrap();
    assert_eq!(l.num_generators(), 17);
    let r = l.ring().clone();
    assert_eq!(
        l,
        ideal(
            &r,
            &[
                &[2, 1, 1, 0],
                &[2, 1, 0, 1],
                &[1, 2, 1, 0],
                &[1, 2, 0, 1],
                &[1, 0, 2, 1],
                &[0, 1, 2, 1],
                &[1, 0, 1, 2],
                &[0, 1, 1, 2],
                &[2, 0, 2, 0],
                &[2, 0, 1, 1],
                &[2, 0, 0, 2],
                &[0, 2, 2, 0],
                &[0, 2, 0, 2],
                &[0, 2, 1, 1],
                &[1, 1, 2, 0],
                &[1, 1, 0, 2],
                &[1, 1, 1, 1],
            ],
        )
    );
    assert_eq!(regularity(&l).unwrap(), 4);
    assert_eq!(regularity(&l.power(2)).unwrap(), 8);
    assert!(start.elapsed().as_secs_f64() < 60.0, "criterion 3 over 60 s");
    println!("ACCEPTANCE 03 degree-4 golden generators and regularity: PASS");
}

#[test]
fn criterion_04_small_support_iff() {
    let start = Instant::now();
    for (m1, m2) in [(2u32, 2u32), (2, 3), (3, 3)] {
        let d = 2 * m1 + 2 * m2 - 1;
        let l = capped_veronese_gmp(m1, m2, d).unwrap();
        let ass = associated_primes(&l).unwrap();
        let expected = small_support_primes(l.ring(), 2);
        assert_eq!(
            ass, expected,
            "P_F associated iff |F| <= 2 failed for blocks ({}, {})",
            m1, m2
        );
    }
    assert!(
        start.elapsed().as_secs_f64() < 120.0,
        "criterion 4 over 120 s"
    );
    println!("ACCEPTANCE 04 associated primes iff |F| <= 2 at top degree: PASS");
}

#[test]
fn criterion_05_dimension_and_unmixedness_grids() {
    // Equal blocks q: dim(T/L) = q for 2 <= d <= 2q+2, and
    // dim(T/L) = 2q-1 at d = 4q-1; unmixedness on the stated ranges.
    for q in [2u32, 3] {
        for d in 2..=(2 * q + 2) {
            let l = capped_veronese_gmp(q, q, d).unwrap();
            assert_eq!(
                dim_quotient(&l).unwrap(),
                q as usize,
                "dimension grid failed at q = {}, d = {}",
                q,
                d
            );
        }
        let top = 4 * q - 1;
        let l = capped_veronese_gmp(q, q, top).unwrap();
        assert_eq!(dim_quotient(&l).unwrap(), 2 * q as usize - 1);
        assert!(is_unmixed(&l).unwrap(), "top-degree unmixedness at q = {}", q);
    }
    for d in 2..=7 {
        let l = capped_veronese_gmp(2, 2, d).unwrap();
        assert!(is_unmixed(&l).unwrap(), "q = 2 unmixedness at d = {}", d);
    }
    // Reduced height-one instance: every minimal cover is a singleton.
    let l = capped_veronese_gmp(2, 2, 7).unwrap();
    assert_eq!(height(&l).unwrap(), 1);
    assert!(is_unmixed(&l).unwrap());
    let covers = minimal_vertex_covers(&l).unwrap();
    assert!(covers.iter().all(|c| c.len() == 1));
    assert_eq!(covers.len(), 4);
    println!("ACCEPTANCE 05 dimension and unmixedness grids: PASS");
}

/// The full 8-variable height-one instance; slow-path opt-in via
/// `cargo test -- --ignored`.
#[test]
#[ignore]
fn criterion_05_full_height_one_instance() {
    let l = capped_veronese_gmp(4, 4, 15).unwrap();
    assert_eq!(l.num_generators(), 8);
    assert_eq!(height(&l).unwrap(), 1);
    assert!(is_unmixed(&l).unwrap());
    let covers = minimal_vertex_covers(&l).unwrap();
    assert_eq!(covers.len(), 8);
    assert!(covers.iter().all(|c| c.len() == 1));
    println!("ACCEPTANCE 05b full height-one instance: PASS");
}

#[test]
fn criterion_06_powers_linear_quotients_and_linear_tables() {
    let start = Instant::now();
    let q = CoefficientField::Rationals;
    for m1 in [2u32, 3] {
        for m2 in [2u32, 3] {
            for d in 2..=(2 * m1 + 2 * m2 - 1) {
                let l = capped_veronese_gmp(m1, m2, d).unwrap();
                for k in 1..=2u32 {
                    let power = l.power(k);
                    assert!(
                        has_linear_quotients(&power).unwrap(),
                        "linear quotients failed at ({}, {}), d = {}, k = {}",
                        m1,
                        m2,
                        d,
                        k
                    );
                    let table = betti_table(&power, q).unwrap();
                    assert_eq!(table.total(0) as usize, power.num_generators());
                    for (i, a, _) in table.entries() {
                        let total: u64 = a.iter().map(|&e| e as u64).sum();
                        assert_eq!(
                            total,
                            i as u64 + (k * d) as u64,
                            "nonlinear Betti entry at ({}, {}), d = {}, k = {}",
                            m1,
                            m2,
                            d,
                            k
                        );
                    }
                    assert_eq!(table.regularity(), (k * d) as u64);
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 06 linear quotients and linear Betti tables (grid, {:.1} s): PASS",
        start.elapsed().as_secs_f64()
    );
}

use monideal::constructions::shipped_transversal_specs;

#[test]
fn criterion_07_transversal_suite() {
    let start = Instant::now();
    let specs = shipped_transversal_specs();
    assert!(specs.len() >= 10);
    for (name, spec, blocks) in &specs {
        let blocks = blocks.as_deref();
        let l = transversal_build(spec, blocks).unwrap();
        let graph_ass = transversal_ass(spec, blocks).unwrap();

        // (a) oracle equivalence
        assert_eq!(
            graph_ass,
            associated_primes(&l).unwrap(),
            "[{}] graph route vs decomposition route",
            name
        );

        // (b) L^k equals the intersection of the prime powers for k <= 3;
        // the builder verifies the equality internally and errors if it
        // fails.
        for k in 1..=3u32 {
            let comps = transversal_power_decomposition(spec, blocks, k).unwrap();
            let mut radicals: Vec<MonomialPrime> =
                comps.iter().map(|c| c.radical.clone()).collect();
            radicals.sort();
            assert_eq!(radicals, graph_ass, "[{}] component radicals, k = {}", name, k);
        }

        // (c) Ass(L^k) constant for k <= 4
        let report = astab(&l, 4).unwrap();
        assert_eq!(report.index, 1, "[{}] astab", name);
        assert!(report.proven);
        assert_eq!(report.stable_ass, graph_ass, "[{}] stable Ass", name);

        // (d) depth(T/L^k) constant for k <= 3 and the analytic spread
        // formula.
        let depth_report = dstab(&l, 3).unwrap();
        assert_eq!(depth_report.index, 1, "[{}] dstab", name);
        let depth = depth_quotient(&l).unwrap();
        assert_eq!(depth_report.limit_depth, depth);
        assert_eq!(
            analytic_spread_transversal(&l).unwrap(),
            l.ring().total_vars() - depth,
            "[{}] analytic spread",
            name
        );

        // (e) Ass(L^[k]) = Ass(L) for k <= 3
        for k in 1..=3u32 {
            assert_eq!(
                bracket_ass_transversal(spec, blocks, k).unwrap(),
                graph_ass,
                "[{}] bracket power primes, k = {}",
                name,
                k
            );
        }
    }
    println!(
        "ACCEPTANCE 07 transversal suite over {} specs ({:.1} s): PASS",
        specs.len(),
        start.elapsed().as_secs_f64()
    );
}

/// Shipped-spec invariants that ride along with the transversal suite:
/// the generalized-mixed-product route builds the same ideal, and L^k has
/// a linear resolution for k = 1, 2.
#[test]
fn criterion_07b_gmp_route_and_linear_resolutions() {
    for (name, spec, blocks) in &shipped_transversal_specs() {
        let blocks = blocks.as_deref();
        let l = transversal_build(spec, blocks).unwrap();
        let family = transversal_gmp_family(spec, blocks).unwrap();
        assert!(
            gmp_validate(&family).condition5_ok(),
            "[{}] family conditions",
            name
        );
        let via_gmp = gmp_build(&family, true).unwrap();
        assert_eq!(l.generators(), via_gmp.generators(), "[{}] gmp route", name);

        for k in 1..=2u32 {
            let report = has_linear_resolution(&l.power(k)).unwrap();
            assert!(report.holds, "[{}] linear resolution of power {}", name, k);
        }
    }
    println!("ACCEPTANCE 07b gmp-route equality and linear resolutions: PASS");
}

fn random_proper_ideal(
    rng: &mut ChaCha8Rng,
    max_vars: usize,
    max_exp: u32,
    max_gens: usize,
) -> MonomialIdeal {
    loop {
        let nvars = rng.gen_range(2..=max_vars);
        let ring = Ring::plain(nvars);
        let count = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect())
            .collect();
        let gens: Vec<Vec<u32>> = gens
            .into_iter()
            .filter(|g| g.iter().any(|&e| e > 0))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let monomials = gens.into_iter().map(|e| Monomial::new(&ring, e)).collect();
        let ideal = MonomialIdeal::from_monomials(&ring, monomials).unwrap();
        if ideal.is_proper_nonzero() {
            return ideal;
        }
    }
}

#[test]
fn criterion_08_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for case in 0..100 {
        let i = random_proper_ideal(&mut rng, 5, 3, 6);
        assert_eq!(
            associated_primes(&i).unwrap(),
            ass_oracle(&i).unwrap(),
            "ass oracle mismatch on case {}: {}",
            case,
            i
        );
    }
    let q = CoefficientField::Rationals;
    for case in 0..25 {
        let i = random_proper_ideal(&mut rng, 5, 3, 6);
        assert_eq!(
            betti_table(&i, q).unwrap(),
            betti_oracle(&i, q).unwrap(),
            "betti oracle mismatch on case {}: {}",
            case,
            i
        );
    }
    assert!(
        start.elapsed().as_secs_f64() < 300.0,
        "criterion 8 over 300 s"
    );
    println!("ACCEPTANCE 08 oracle equivalence (100 ass + 25 betti): PASS");
}

#[test]
fn criterion_09_bracket_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for case in 0..50 {
        // Mix in principal ideals so both directions of the iff fire.
        let i = if case % 5 == 0 {
            random_proper_ideal(&mut rng, 4, 3, 1)
        } else {
            random_proper_ideal(&mut rng, 4, 3, 4)
        };
        for k in 2..=3u32 {
            let bracket = i.bracket_power(k);
            let power = i.power(k);
            assert!(
                power.contains_ideal(&bracket).unwrap(),
                "bracket not contained, case {}",
                case
            );
            assert_eq!(
                bracket == power,
                i.num_generators() == 1,
                "principality iff failed on case {}: {}",
                case,
                i
            );
        }
        assert_eq!(i.bracket_power(1), i);
    }
    for case in 0..50 {
        let a = random_proper_ideal(&mut rng, 4, 3, 4);
        let b = random_proper_ideal_in(&mut rng, a.ring(), 3, 4);
        for k in 2..=3u32 {
            let lhs = a.intersect(&b).unwrap().bracket_power(k);
            let rhs = a.bracket_power(k).intersect(&b.bracket_power(k)).unwrap();
            assert_eq!(lhs, rhs, "bracket/intersection failed on pair {}", case);
        }
    }
    println!("ACCEPTANCE 09 bracket identities (50 + 50 random cases): PASS");
}

fn random_proper_ideal_in(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    max_exp: u32,
    max_gens: usize,
) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| {
                (0..ring.total_vars())
                    .map(|_| rng.gen_range(0..=max_exp))
                    .collect()
            })
            .filter(|g: &Vec<u32>| g.iter().any(|&e| e > 0))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let monomials = gens.into_iter().map(|e| Monomial::new(ring, e)).collect();
        let ideal = MonomialIdeal::from_monomials(ring, monomials).unwrap();
        if ideal.is_proper_nonzero() {
            return ideal;
        }
    }
}

#[test]
fn criterion_10_maximal_power_stability() {
    let spec = TransversalSpec::new(2, vec![vec![1, 2], vec![1, 2]]).unwrap();
    let l = transversal_build(&spec, Some(&[2, 2])).unwrap();
    let full = MonomialPrime::new(l.ring(), vec![0, 1, 2, 3]).unwrap();

    let a = astab(&l, 3).unwrap();
    assert_eq!(a.index, 1);
    assert!(a.proven);
    let d = dstab(&l, 3).unwrap();
    assert_eq!(d.index, 1);
    assert_eq!(d.limit_depth, 0);
    for k in 1..=3u32 {
        let ass = associated_primes(&l.power(k)).unwrap();
        assert!(ass.contains(&full), "full prime missing at k = {}", k);
    }
    println!("ACCEPTANCE 10 maximal-ideal power stability: PASS");
}
