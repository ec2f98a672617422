//! Golden tests over hand-checked instances: the capped-Veronese ideals
//! on two blocks, the transversal product on five variables, the
//! two-block mixed product ideal, and linear resolutions of products.

use monideal::constructions::{
    capped_veronese_gmp, gmp_build, gmp_power_identity, gmp_validate, intersection_graph,
    transversal_ass, transversal_build, transversal_gmp_family, veronese_type, GmpFamily,
    TransversalSpec, VeroneseSpec,
};
use monideal::decomposition::{associated_primes, dim_quotient, height, is_unmixed};
use monideal::linalg::CoefficientField;
use monideal::resolution::{betti_table, has_linear_resolution, regularity};
use monideal::{MonomialIdeal, MonomialPrime, Ring};

fn ideal(ring: &Ring, gens: &[&[u32]]) -> MonomialIdeal {
    let monomials = gens
        .iter()
        .map(|g| monideal::Monomial::new(ring, g.to_vec()))
        .collect();
    MonomialIdeal::from_monomials(ring, monomials).unwrap()
}

fn primes(ring: &Ring, supports: &[&[usize]]) -> Vec<MonomialPrime> {
    supports
        .iter()
        .map(|s| MonomialPrime::new(ring, s.to_vec()).unwrap())
        .collect()
}

#[test]
fn degree_seven_instance_generators_and_ass() {
    // d = 7 on blocks (2,2): four generators and ten associated primes.
    let l = capped_veronese_gmp(2, 2, 7).unwrap();
    let r = l.ring().clone();
    let expected = ideal(
        &r,
        &[&[2, 1, 2, 2], &[1, 2, 2, 2], &[2, 2, 2, 1], &[2, 2, 1, 2]],
    );
    assert_eq!(l, expected);

    let ass = associated_primes(&l).unwrap();
    let expected_primes = primes(
        &r,
        &[
            &[0],
            &[1],
            &[2],
            &[3],
            &[0, 1],
            &[0, 2],
            &[0, 3],
            &[1, 2],
            &[1, 3],
            &[2, 3],
        ],
    );
    assert_eq!(ass, expected_primes);
}

#[test]
fn degree_seven_instance_is_a_veronese_type_ideal() {
    // The same four generators arise as the Veronese-type ideal with caps
    // (2,2,2,2) and degree 7 over the blocked ring.
    let l = capped_veronese_gmp(2, 2, 7).unwrap();
    let spec = VeroneseSpec::new(vec![2, 2, 2, 2], 7).unwrap();
    let v = veronese_type(&spec, l.ring()).unwrap();
    assert_eq!(l, v);
}

#[test]
fn degree_three_instance_as_a_sum_of_two_products() {
    // The degree-3 instance is I_{1,1} I_{2,2} + I_{1,2} I_{2,1}; expanding
    // the two products by hand gives six generators each, all incomparable,
    // so the sum has twelve minimal generators.
    let r = Ring::new(vec![2, 2]);
    let embed_block1 = |e: &[u32]| vec![e[0], e[1], 0, 0];
    let embed_block2 = |e: &[u32]| vec![0, 0, e[0], e[1]];
    let make = |gens: Vec<Vec<u32>>| {
        let ms = gens
            .into_iter()
            .map(|e| monideal::Monomial::new(&r, e))
            .collect();
        MonomialIdeal::from_monomials(&r, ms).unwrap()
    };
    let i11 = make(vec![embed_block1(&[1, 0]), embed_block1(&[0, 1])]);
    let i12 = make(vec![
        embed_block1(&[2, 0]),
        embed_block1(&[1, 1]),
        embed_block1(&[0, 2]),
    ]);
    let i21 = make(vec![embed_block2(&[1, 0]), embed_block2(&[0, 1])]);
    let i22 = make(vec![
        embed_block2(&[2, 0]),
        embed_block2(&[1, 1]),
        embed_block2(&[0, 2]),
    ]);
    let sum = i11
        .product(&i22)
        .unwrap()
        .sum(&i12.product(&i21).unwrap())
        .unwrap();
    assert_eq!(sum.num_generators(), 12);
    assert_eq!(sum, capped_veronese_gmp(2, 2, 3).unwrap());
}

#[test]
fn degree_seven_instance_colon_witness_and_lcm() {
    let l = capped_veronese_gmp(2, 2, 7).unwrap();
    let r = l.ring().clone();
    // lcm of the generators is the componentwise maximum.
    assert_eq!(
        l.lcm_of_generators().unwrap().exponents(),
        &[2, 2, 2, 2]
    );
    // Colon by x11*x12^2*x21^2*x22^2 / x11 = x12^2*x21^2*x22^2 yields the
    // prime (x11): a witness that (x11) is associated.
    let f = monideal::Monomial::new(&r, vec![0, 2, 2, 2]);
    let colon = l.colon_monomial(&f).unwrap();
    let witness_prime = colon.as_prime().unwrap();
    assert_eq!(witness_prime.support(), &[0]);

    // The witness-search oracle agrees with the decomposition route, and
    // some witness of degree d - 1 = 6 realizes (x11, x12).
    let oracle = monideal::decomposition::ass_oracle(&l).unwrap();
    assert_eq!(oracle, associated_primes(&l).unwrap());
    let target = MonomialPrime::new(&r, vec![0, 1]).unwrap();
    let mut found = false;
    for a in 0..=2u32 {
        for b in 0..=2u32 {
            for c in 0..=2u32 {
                for d in 0..=2u32 {
                    if a + b + c + d != 6 {
                        continue;
                    }
                    let f = monideal::Monomial::new(&r, vec![a, b, c, d]);
                    if l.contains(&f).unwrap() {
                        continue;
                    }
                    if l.colon_monomial(&f).unwrap() == target.to_ideal() {
                        found = true;
                    }
                }
            }
        }
    }
    assert!(found, "no degree-6 witness for (x11, x12)");
}

#[test]
fn degree_four_instance_is_generated_in_degree_four() {
    let l = capped_veronese_gmp(2, 2, 4).unwrap();
    assert_eq!(l.generated_in_single_degree(), Some(4));
}

#[test]
fn degree_three_instance_decomposes_like_its_base() {
    // Base I = (x1 x2^2, x1^2 x2) = (x1) ∩ (x1^2, x2^2) ∩ (x2).
    let s = Ring::plain(2);
    let base = ideal(&s, &[&[1, 2], &[2, 1]]);
    let comps = monideal::decomposition::irreducible_decomposition(&base).unwrap();
    let as_ideals: Vec<MonomialIdeal> = comps.iter().map(|c| c.to_ideal()).collect();
    assert_eq!(
        as_ideals,
        vec![
            ideal(&s, &[&[1, 0]]),
            ideal(&s, &[&[0, 1]]),
            ideal(&s, &[&[2, 0], &[0, 2]]),
        ]
    );

    // The induced ideal on blocks (2,2): height 2, dim 2, unmixed.
    let l = capped_veronese_gmp(2, 2, 3).unwrap();
    assert_eq!(l.num_generators(), 12);
    assert_eq!(height(&l).unwrap(), 2);
    assert_eq!(dim_quotient(&l).unwrap(), 2);
    assert!(is_unmixed(&l).unwrap());
}

#[test]
fn degree_four_instance_generators_and_regularity() {
    let l = capped_veronese_gmp(2, 2, 4).unwrap();
    let r = l.ring().clone();
    let expected = ideal(
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
    );
    assert_eq!(l, expected);
    assert_eq!(l.num_generators(), 17);

    assert_eq!(regularity(&l).unwrap(), 4);
    assert_eq!(regularity(&l.power(2)).unwrap(), 8);
}

#[test]
fn five_variable_transversal_product() {
    // I = (x1,x2)(x1,x2,x3,x4)(x3,x5)(x4,x5)
    let spec = TransversalSpec::new(
        5,
        vec![vec![1, 2], vec![1, 2, 3, 4], vec![3, 5], vec![4, 5]],
    )
    .unwrap();
    let i = transversal_build(&spec, None).unwrap();
    let r = i.ring().clone();

    // Same ideal through a literal product of primes.
    let p = |vars: &[usize]| MonomialPrime::new(&r, vars.to_vec()).unwrap().to_ideal();
    let direct = p(&[0, 1])
        .product(&p(&[0, 1, 2, 3]))
        .unwrap()
        .product(&p(&[2, 4]))
        .unwrap()
        .product(&p(&[3, 4]))
        .unwrap();
    assert_eq!(i, direct);
    assert_eq!(i.generated_in_single_degree(), Some(4));
    assert!(monideal::constructions::is_polymatroidal(&i));

    // The intersection graph is a path-like connected graph on 4 factors.
    let g = intersection_graph(&spec);
    assert_eq!(g.component_count(), 1);
    assert!(g.has_edge(0, 1));
    assert!(!g.has_edge(0, 2));
    assert!(!g.has_edge(0, 3));
    assert!(g.has_edge(1, 2));
    assert!(g.has_edge(1, 3));
    assert!(g.has_edge(2, 3));

    // Graph route and decomposition route agree on Ass(L).
    assert_eq!(
        transversal_ass(&spec, None).unwrap(),
        associated_primes(&i).unwrap()
    );

    // Blocked variant through the generalized mixed product route.
    let blocks = [1u32, 1, 1, 1, 2];
    let blocked = transversal_build(&spec, Some(&blocks)).unwrap();
    let family = transversal_gmp_family(&spec, Some(&blocks)).unwrap();
    assert!(gmp_validate(&family).condition5_ok());
    let via_gmp = gmp_build(&family, true).unwrap();
    assert_eq!(blocked.generators(), via_gmp.generators());
    assert!(gmp_power_identity(&family, 2).unwrap().holds);
}

#[test]
fn two_block_mixed_product_ideal() {
    // L = I_2 J_1 + I_1 J_2 induced by (x^2 y, x y^2) with squarefree
    // Veronese substitutions on two blocks of size 3.
    let s = Ring::plain(2);
    let base = ideal(&s, &[&[2, 1], &[1, 2]]);
    let mut family = GmpFamily::new(base, vec![3, 3]).unwrap();
    let block_ring = Ring::plain(3);
    let sqfree =
        |d: u32| veronese_type(&VeroneseSpec::new(vec![1, 1, 1], d).unwrap(), &block_ring).unwrap();
    for block in 1..=2 {
        for d in 1..=2 {
            family.insert(block, d, &sqfree(d)).unwrap();
        }
    }
    assert!(gmp_validate(&family).condition5_ok());
    let l = gmp_build(&family, true).unwrap();

    let t = l.ring().clone();
    let embed = |d: u32, block: usize| {
        let v = sqfree(d);
        let offset = if block == 1 { 0 } else { 3 };
        let gens: Vec<Vec<u32>> = v
            .generators()
            .iter()
            .map(|m| {
                let mut e = vec![0u32; 6];
                e[offset..offset + 3].copy_from_slice(m.exponents());
                e
            })
            .collect();
        let monomials = gens
            .into_iter()
            .map(|e| monideal::Monomial::new(&t, e))
            .collect();
        MonomialIdeal::from_monomials(&t, monomials).unwrap()
    };
    let direct = embed(2, 1)
        .product(&embed(1, 2))
        .unwrap()
        .sum(&embed(1, 1).product(&embed(2, 2)).unwrap())
        .unwrap();
    assert_eq!(l, direct);
    assert!(gmp_power_identity(&family, 2).unwrap().holds);
}

#[test]
fn products_of_capped_veronese_instances_have_linear_resolutions() {
    // L L' has a linear resolution for capped-Veronese instances; checked
    // here for (d, d') = (3, 4) on blocks (2,2).
    let l = capped_veronese_gmp(2, 2, 3).unwrap();
    let lp = capped_veronese_gmp(2, 2, 4).unwrap();
    let product = l.product(&lp).unwrap();
    let report = has_linear_resolution(&product).unwrap();
    assert!(report.holds, "product should be 7-linear");

    let table = betti_table(&product, CoefficientField::Rationals).unwrap();
    for (i, a, _) in table.entries() {
        let total: u64 = a.iter().map(|&e| e as u64).sum();
        assert_eq!(total, i as u64 + 7);
    }
}

/// Betti numbers may depend on the characteristic; the shipped instances
/// are characteristic-free, and a disagreement would be surfaced as a
/// warning here rather than silently reconciled.
#[test]
fn rational_and_prime_field_tables_compared_with_warning() {
    let instances = [
        capped_veronese_gmp(2, 2, 3).unwrap(),
        capped_veronese_gmp(2, 2, 4).unwrap(),
        transversal_build(
            &TransversalSpec::new(3, vec![vec![1, 2], vec![2, 3]]).unwrap(),
            None,
        )
        .unwrap(),
    ];
    for ideal in instances {
        let over_q = betti_table(&ideal, CoefficientField::Rationals).unwrap();
        for p in [2u32, 65537] {
            let over_p = betti_table(&ideal, CoefficientField::prime(p).unwrap()).unwrap();
            if over_q != over_p {
                eprintln!(
                    "warning: Betti table of {} differs between the rationals and GF({})",
                    ideal, p
                );
            }
        }
    }
}

#[test]
fn maximal_ideal_power_instance() {
    // The Veronese ideal m^2 on two blocks of size two.
    let spec = TransversalSpec::new(2, vec![vec![1, 2], vec![1, 2]]).unwrap();
    let l = transversal_build(&spec, Some(&[2, 2])).unwrap();
    let r = l.ring().clone();
    let m = MonomialPrime::new(&r, vec![0, 1, 2, 3]).unwrap();
    assert_eq!(l, m.power_ideal(2));
    for k in 1..=3 {
        let ass = associated_primes(&l.power(k)).unwrap();
        assert_eq!(ass, vec![m.clone()]);
    }
}
