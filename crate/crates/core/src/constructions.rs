//! Instance generators: Veronese-type ideals, generalized mixed product
//! ideals with their validation and power identities, and transversal
//! polymatroidal ideals with their intersection graph, associated primes,
//! and power decompositions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::decomposition::PrimaryComponent;
use crate::error::{Error, Result};
use crate::ideal::{IdealJson, MonomialIdeal, MonomialPrime, Provenance};
use crate::monomial::lex_cmp;
use crate::resolution::depth_quotient;
use crate::ring::Ring;

/// Cap on the factor count of a transversal spec (connected-subset
/// enumeration is exponential in r).
pub const TRANSVERSAL_FACTOR_CAP: usize = 20;
/// Cap on the cells of the box used to verify power decompositions.
const DECOMPOSITION_BOX_CAP: u64 = 50_000_000;

/// Defining sequence (r_1,...,r_n; d) of a Veronese-type ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseSpec {
    caps: Vec<u32>,
    degree: u32,
}

impl VeroneseSpec {
    pub fn new(caps: Vec<u32>, degree: u32) -> Result<Self> {
        let total: u64 = caps.iter().map(|&r| r as u64).sum();
        if caps.is_empty()
            || caps.iter().any(|&r| r < 1 || r as u64 > degree as u64)
            || (degree as u64) > total
        {
            return Err(Error::InvalidArgument(format!(
                "Veronese-type spec needs 1 <= r_j <= d <= sum r_i, got caps {:?}, d = {}",
                caps, degree
            )));
        }
        Ok(VeroneseSpec { caps, degree })
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_squarefree_veronese(&self) -> bool {
        self.caps.iter().all(|&r| r == 1)
    }

    pub fn is_veronese(&self) -> bool {
        self.caps.iter().all(|&r| r == self.degree)
    }
}

/// All monomials of total degree d with exponent caps r_i, as an ideal of
/// `ring` (whose variable count must match the spec).
pub fn veronese_type(spec: &VeroneseSpec, ring: &Ring) -> Result<MonomialIdeal> {
    if spec.caps.len() != ring.total_vars() {
        return Err(Error::InvalidArgument(format!(
            "spec has {} caps but the ring has {} variables",
            spec.caps.len(),
            ring.total_vars()
        )));
    }
    let vars: Vec<usize> = (0..ring.total_vars()).collect();
    let mut gens = Vec::new();
    let mut current = vec![0u32; ring.total_vars()];
    enumerate_capped(&vars, &spec.caps, 0, spec.degree, &mut current, &mut gens);
    if gens.is_empty() {
        return Err(Error::InvalidArgument("infeasible Veronese spec".into()));
    }
    gens.sort_by(|a, b| lex_cmp(b, a));
    Ok(MonomialIdeal::from_minimal_exps(ring, gens))
}

/// Exponent vectors supported on `vars` (positions into the full vector)
/// with total degree `remaining` and per-position caps.
fn enumerate_capped(
    vars: &[usize],
    caps: &[u32],
    at: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if at == vars.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    // Prune when the rest cannot absorb the remaining degree.
    let tail: u64 = caps[at..].iter().map(|&c| c as u64).sum();
    if (remaining as u64) > tail {
        return;
    }
    for e in 0..=caps[at].min(remaining) {
        current[vars[at]] = e;
        enumerate_capped(vars, caps, at + 1, remaining - e, current, out);
    }
    current[vars[at]] = 0;
}

/// The sum over h_1 + h_2 = d, 1 <= h_i <= 2 m_i, of the products
/// I_{1,h_1} I_{2,h_2} of Veronese-type ideals with caps 2 in two blocks of
/// sizes m_1, m_2.
pub fn capped_veronese_gmp(m1: u32, m2: u32, d: u32) -> Result<MonomialIdeal> {
    if m1 < 2 || m2 < 2 {
        return Err(Error::InvalidArgument(
            "capped Veronese construction needs m1, m2 >= 2".into(),
        ));
    }
    if d < 2 || d > 2 * (m1 + m2) {
        return Err(Error::InvalidArgument(format!(
            "degree {} outside 2..{}",
            d,
            2 * (m1 + m2)
        )));
    }
    let ring = Ring::new(vec![m1, m2]);
    let block1: Vec<usize> = ring.block_vars(1).collect();
    let block2: Vec<usize> = ring.block_vars(2).collect();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut any = false;
    for h1 in 1..=(2 * m1).min(d.saturating_sub(1)) {
        let h2 = d - h1;
        if h2 < 1 || h2 > 2 * m2 {
            continue;
        }
        any = true;
        let caps1 = vec![2u32.min(h1); m1 as usize];
        let caps2 = vec![2u32.min(h2); m2 as usize];
        let mut part1 = Vec::new();
        let mut current = vec![0u32; ring.total_vars()];
        enumerate_capped(&block1, &caps1, 0, h1, &mut current, &mut part1);
        for p1 in &part1 {
            let mut part2 = Vec::new();
            let mut current = p1.clone();
            enumerate_capped(&block2, &caps2, 0, h2, &mut current, &mut part2);
            gens.extend(part2);
        }
    }
    if !any {
        return Err(Error::InvalidArgument(
            "no legal (h1, h2) pair: the sum is empty".into(),
        ));
    }
    Ok(MonomialIdeal::from_exps(&ring, gens).with_provenance(Provenance::CappedVeronese))
}

/// The combinatorial input of a generalized mixed product ideal: a base
/// ideal over S = K[x_1..x_n], target block sizes, and for each block and
/// occurring exponent an ideal in that block's variables (stored embedded
/// in the target ring).
#[derive(Debug, Clone)]
pub struct GmpFamily {
    base: MonomialIdeal,
    target: Ring,
    entries: BTreeMap<(usize, u32), MonomialIdeal>,
}

impl GmpFamily {
    /// `base` must live in the plain ring with one variable per block.
    pub fn new(base: MonomialIdeal, blocks: Vec<u32>) -> Result<Self> {
        if !base.ring().is_plain() || base.ring().total_vars() != blocks.len() {
            return Err(Error::InvalidArgument(
                "the base ideal must live in the plain ring with one variable per block".into(),
            ));
        }
        Ok(GmpFamily {
            base,
            target: Ring::new(blocks),
            entries: BTreeMap::new(),
        })
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn target_ring(&self) -> &Ring {
        &self.target
    }

    /// Register family(block, exponent); the ideal is given over a ring
    /// with m_block variables and embedded into the target ring.
    pub fn insert(
        &mut self,
        block: usize,
        exponent: u32,
        ideal_in_block: &MonomialIdeal,
    ) -> Result<()> {
        if block < 1 || block > self.target.num_blocks() {
            return Err(Error::InvalidArgument(format!(
                "block {} out of range",
                block
            )));
        }
        let m = self.target.block_sizes()[block - 1] as usize;
        if ideal_in_block.ring().total_vars() != m {
            return Err(Error::InvalidArgument(format!(
                "family entry for block {} must have {} variables",
                block, m
            )));
        }
        if exponent == 0 {
            return Err(Error::InvalidArgument(
                "exponent 0 implicitly maps to the unit ideal".into(),
            ));
        }
        let offset = self.target.var_index(block, 1);
        let n = self.target.total_vars();
        let gens: Vec<Vec<u32>> = ideal_in_block
            .gen_exps()
            .iter()
            .map(|g| {
                let mut e = vec![0u32; n];
                e[offset..offset + m].copy_from_slice(g);
                e
            })
            .collect();
        self.entries.insert(
            (block, exponent),
            MonomialIdeal::from_exps(&self.target, gens),
        );
        Ok(())
    }

    /// family(block, exponent) as an ideal of the target ring; exponent 0
    /// is the unit ideal.
    pub fn entry(&self, block: usize, exponent: u32) -> Result<MonomialIdeal> {
        if exponent == 0 {
            return Ok(MonomialIdeal::unit(&self.target));
        }
        self.entries
            .get(&(block, exponent))
            .cloned()
            .ok_or(Error::MissingFamilyEntry { block, exponent })
    }

    /// Exponents of each block that occur among the base generators.
    fn occurring_exponents(&self) -> Vec<BTreeSet<u32>> {
        let n = self.base.ring().total_vars();
        let mut occ: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
        for g in self.base.gen_exps() {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    occ[i].insert(e);
                }
            }
        }
        occ
    }
}

/// Validation report for a GMP family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GmpValidationReport {
    /// (block, exponent) pairs required by the base but not registered.
    pub missing: Vec<(usize, u32)>,
    /// (block, larger, smaller): family(block, larger) not contained in
    /// family(block, smaller) although larger >= smaller.
    pub inclusion_violations: Vec<(usize, u32, u32)>,
    /// (block, a, b, a2, b2) with a + b >= a2 + b2 but
    /// family(a)family(b) not contained in family(a2)family(b2).
    pub condition5_violations: Vec<(usize, u32, u32, u32, u32)>,
}

impl GmpValidationReport {
    pub fn inclusion_ok(&self) -> bool {
        self.missing.is_empty() && self.inclusion_violations.is_empty()
    }

    pub fn condition5_ok(&self) -> bool {
        self.inclusion_ok() && self.condition5_violations.is_empty()
    }
}

/// Check the inclusion condition over the occurring exponent pairs and the
/// product-compatibility condition over the pairs occurring in G(I)G(I).
pub fn gmp_validate(family: &GmpFamily) -> GmpValidationReport {
    let mut report = GmpValidationReport::default();
    let occ = family.occurring_exponents();
    for (block_idx, exps) in occ.iter().enumerate() {
        let block = block_idx + 1;
        for &e in exps {
            if family.entry(block, e).is_err() {
                report.missing.push((block, e));
            }
        }
        let exps: Vec<u32> = exps.iter().copied().collect();
        for &a in &exps {
            for &b in &exps {
                if a < b {
                    continue;
                }
                let (Ok(larger), Ok(smaller)) =
                    (family.entry(block, a), family.entry(block, b))
                else {
                    continue;
                };
                match smaller.contains_ideal(&larger) {
                    Ok(true) => {}
                    _ => report.inclusion_violations.push((block, a, b)),
                }
            }
        }
        // Condition (5) over sums that occur in products of two generators.
        let mut products: HashMap<(u32, u32), MonomialIdeal> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &a in &exps {
            for &b in &exps {
                if a > b {
                    continue;
                }
                let (Ok(fa), Ok(fb)) = (family.entry(block, a), family.entry(block, b)) else {
                    continue;
                };
                if let Ok(p) = fa.product(&fb) {
                    products.insert((a, b), p);
                    pairs.push((a, b));
                }
            }
        }
        for &(a, b) in &pairs {
            for &(a2, b2) in &pairs {
                if a + b < a2 + b2 || (a, b) == (a2, b2) {
                    continue;
                }
                let bigger = &products[&(a, b)];
                let smaller = &products[&(a2, b2)];
                match smaller.contains_ideal(bigger) {
                    Ok(true) => {}
                    _ => report.condition5_violations.push((block, a, b, a2, b2)),
                }
            }
        }
    }
    report
}

/// L = sum over the base generators of the products of family entries.
/// With `strict` set, the inclusion condition is enforced first.
pub fn gmp_build(family: &GmpFamily, strict: bool) -> Result<MonomialIdeal> {
    if strict {
        let report = gmp_validate(family);
        if let Some(&(block, exponent)) = report.missing.first() {
            return Err(Error::MissingFamilyEntry { block, exponent });
        }
        if let Some(&(block, larger, smaller)) = report.inclusion_violations.first() {
            return Err(Error::InclusionViolation {
                block,
                larger,
                smaller,
            });
        }
    }
    let target = family.target_ring().clone();
    let mut total = MonomialIdeal::zero(&target);
    for g in family.base.gen_exps() {
        let mut piece = MonomialIdeal::unit(&target);
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                piece = piece.product(&family.entry(i + 1, e)?)?;
            }
        }
        total = total.sum(&piece)?;
    }
    Ok(total)
}

/// Both sides of L(I^k) = L(I)^k under condition (5).
#[derive(Debug, Clone)]
pub struct GmpPowerIdentity {
    pub holds: bool,
    pub left: MonomialIdeal,
    pub right: MonomialIdeal,
}

/// Compare L(I;...)^k with L(I^k;...), extending the family
/// multiplicatively along a decomposition of each generator of I^k.
pub fn gmp_power_identity(family: &GmpFamily, k: u32) -> Result<GmpPowerIdentity> {
    if k < 1 {
        return Err(Error::InvalidArgument("power identity needs k >= 1".into()));
    }
    let report = gmp_validate(family);
    if let Some(&(block, a, b, a2, b2)) = report.condition5_violations.first() {
        return Err(Error::Condition5Violation { block, a, b, a2, b2 });
    }
    if let Some(&(block, exponent)) = report.missing.first() {
        return Err(Error::MissingFamilyEntry { block, exponent });
    }
    let left = gmp_build(family, false)?.power(k);

    let base_power = family.base.power(k);
    let target = family.target_ring().clone();
    let mut right = MonomialIdeal::zero(&target);
    for c in base_power.gen_exps() {
        let parts = decompose_into_generators(c, family.base.gen_exps(), k)
            .ok_or_else(|| {
                Error::InvalidArgument("power generator is not a product of base generators".into())
            })?;
        let mut piece = MonomialIdeal::unit(&target);
        for (i, _) in c.iter().enumerate() {
            for &part in &parts {
                let e = family.base.gen_exps()[part][i];
                if e > 0 {
                    piece = piece.product(&family.entry(i + 1, e)?)?;
                }
            }
        }
        right = right.sum(&piece)?;
    }
    Ok(GmpPowerIdentity {
        holds: left == right,
        left,
        right,
    })
}

fn decompose_into_generators(c: &[u32], gens: &[Vec<u32>], k: u32) -> Option<Vec<usize>> {
    if k == 0 {
        return c.iter().all(|&e| e == 0).then(Vec::new);
    }
    for (idx, g) in gens.iter().enumerate() {
        if g.iter().zip(c).all(|(&a, &b)| a <= b) {
            let rest: Vec<u32> = c.iter().zip(g).map(|(&a, &b)| a - b).collect();
            if let Some(mut tail) = decompose_into_generators(&rest, gens, k - 1) {
                tail.push(idx);
                return Some(tail);
            }
        }
    }
    None
}

/// The combinatorial input of a transversal polymatroidal ideal: subsets
/// F_1,...,F_r of [n] (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalSpec {
    n: usize,
    subsets: Vec<Vec<usize>>,
}

impl TransversalSpec {
    pub fn new(n: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || subsets.is_empty() {
            return Err(Error::InvalidArgument(
                "a transversal spec needs n >= 1 and r >= 1".into(),
            ));
        }
        if subsets.len() > TRANSVERSAL_FACTOR_CAP {
            return Err(Error::ResourceLimit {
                what: "transversal factors".into(),
                required: subsets.len() as u64,
                limit: TRANSVERSAL_FACTOR_CAP as u64,
            });
        }
        let mut cleaned = Vec::with_capacity(subsets.len());
        for f in subsets {
            let mut f: Vec<usize> = f;
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.iter().any(|&i| i < 1 || i > n) {
                return Err(Error::InvalidArgument(
                    "every subset must be a nonempty subset of 1..=n".into(),
                ));
            }
            cleaned.push(f);
        }
        Ok(TransversalSpec {
            n,
            subsets: cleaned,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn num_factors(&self) -> usize {
        self.subsets.len()
    }

    /// Graph-theoretic results assume the union covers [n].
    pub fn covers_all_variables(&self) -> bool {
        let mut seen = vec![false; self.n];
        for f in &self.subsets {
            for &i in f {
                seen[i - 1] = true;
            }
        }
        seen.iter().all(|&b| b)
    }

    /// The grouped form of Eq.-style products: distinct subsets with their
    /// multiplicities.
    pub fn grouped(&self) -> Vec<(Vec<usize>, u32)> {
        let mut counts: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for f in &self.subsets {
            *counts.entry(f.clone()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// The target ring: plain on n variables, or blocked by `blocks`.
    pub fn ring(&self, blocks: Option<&[u32]>) -> Result<Ring> {
        match blocks {
            None => Ok(Ring::plain(self.n)),
            Some(b) => {
                if b.len() != self.n {
                    return Err(Error::InvalidArgument(format!(
                        "expected {} block sizes, got {}",
                        self.n,
                        b.len()
                    )));
                }
                Ok(Ring::new(b.to_vec()))
            }
        }
    }

    /// Flat variable indices of the blocked prime P'_F.
    fn expanded_support(&self, f: &[usize], ring: &Ring) -> Vec<usize> {
        let mut vars = Vec::new();
        for &i in f {
            vars.extend(ring.block_vars(i));
        }
        vars
    }
}

/// The product of the (blocked) primes of the spec.
pub fn transversal_build(spec: &TransversalSpec, blocks: Option<&[u32]>) -> Result<MonomialIdeal> {
    let ring = spec.ring(blocks)?;
    let mut acc = MonomialIdeal::unit(&ring);
    for f in spec.subsets() {
        let prime = MonomialPrime::new(&ring, spec.expanded_support(f, &ring))?;
        acc = acc.product(&prime.to_ideal())?;
    }
    Ok(acc.with_provenance(Provenance::Transversal))
}

/// The GMP family realizing the same ideal through the generalized mixed
/// product route: base = the plain transversal ideal, family(i, a) = the
/// a-th power of the block-i prime.
pub fn transversal_gmp_family(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
) -> Result<GmpFamily> {
    let base = transversal_build(spec, None)?;
    let ring = spec.ring(blocks)?;
    let mut family = GmpFamily::new(base.clone(), ring.block_sizes().to_vec())?;
    let mut needed: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); spec.num_vars()];
    for g in base.gen_exps() {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                needed[i].insert(e);
            }
        }
    }
    for (i, exps) in needed.iter().enumerate() {
        let m = ring.block_sizes()[i] as usize;
        let block_ring = Ring::plain(m);
        let block_prime = MonomialPrime::new(&block_ring, (0..m).collect())?;
        for &e in exps {
            family.insert(i + 1, e, &block_prime.power_ideal(e))?;
        }
    }
    Ok(family)
}

/// Vertices 1..r with an edge when the factor supports intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    r: usize,
    adjacency: Vec<u32>,
}

impl IntersectionGraph {
    pub fn num_vertices(&self) -> usize {
        self.r
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i] >> j & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.r {
            for j in i + 1..self.r {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        let mut seen = 0u32;
        let mut count = 0;
        for v in 0..self.r {
            if seen >> v & 1 == 0 {
                count += 1;
                let mut stack = vec![v];
                seen |= 1 << v;
                while let Some(u) = stack.pop() {
                    for w in 0..self.r {
                        if seen >> w & 1 == 0 && self.has_edge(u, w) {
                            seen |= 1 << w;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        count
    }

    fn mask_connected(&self, mask: u32) -> bool {
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let next = self.adjacency[u] & mask & !seen;
            let mut rest = next;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                seen |= 1 << w;
                stack.push(w);
                rest &= rest - 1;
            }
        }
        seen == mask
    }

    /// All nonempty connected vertex subsets, as masks.
    pub fn connected_subsets(&self) -> Vec<u32> {
        (1u32..(1 << self.r))
            .filter(|&m| self.mask_connected(m))
            .collect()
    }
}

pub fn intersection_graph(spec: &TransversalSpec) -> IntersectionGraph {
    let r = spec.num_factors();
    let mut adjacency = vec![0u32; r];
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let fi = &spec.subsets()[i];
                let fj = &spec.subsets()[j];
                if fi.iter().any(|v| fj.binary_search(v).is_ok()) {
                    adjacency[i] |= 1 << j;
                }
            }
        }
    }
    IntersectionGraph { r, adjacency }
}

/// The associated primes P'_W over the connected vertex subsets W of the
/// intersection graph, together with the maximal realizing subset size
/// (the tree multiplicity a_h).
pub fn transversal_prime_data(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
) -> Result<Vec<(MonomialPrime, u32)>> {
    let ring = spec.ring(blocks)?;
    let graph = intersection_graph(spec);
    let mut data: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    for mask in graph.connected_subsets() {
        let mut union: BTreeSet<usize> = BTreeSet::new();
        for d in 0..spec.num_factors() {
            if mask >> d & 1 == 1 {
                union.extend(spec.subsets()[d].iter().copied());
            }
        }
        let support = spec.expanded_support(&union.into_iter().collect::<Vec<_>>(), &ring);
        let size = mask.count_ones();
        let entry = data.entry(support).or_insert(0);
        *entry = (*entry).max(size);
    }
    let mut out: Vec<(MonomialPrime, u32)> = data
        .into_iter()
        .map(|(support, a)| (MonomialPrime::new(&ring, support).expect("nonempty"), a))
        .collect();
    out.sort_by(|x, y| x.0.sort_key().cmp(&y.0.sort_key()));
    Ok(out)
}

/// Ass(L) of the transversal ideal, through the intersection graph.
pub fn transversal_ass(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
) -> Result<Vec<MonomialPrime>> {
    Ok(transversal_prime_data(spec, blocks)?
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

/// Tree multiplicities: each associated prime with its a_h.
pub fn tree_multiplicities(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
) -> Result<Vec<(MonomialPrime, u32)>> {
    transversal_prime_data(spec, blocks)
}

/// The components (P'_h)^{k a_h} of L^k together with the outcome of the
/// exact comparison against power(L, k).
pub fn transversal_power_decomposition_report(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
    k: u32,
) -> Result<(Vec<PrimaryComponent>, bool)> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "power decomposition needs k >= 1".into(),
        ));
    }
    let ideal = transversal_build(spec, blocks)?;
    let power = ideal.power(k);
    let data = transversal_prime_data(spec, blocks)?;
    let comps: Vec<(MonomialPrime, u32)> = data.into_iter().map(|(p, a)| (p, k * a)).collect();
    let verified = power_equals_prime_power_intersection(&power, &comps)?;
    let comps = comps
        .into_iter()
        .map(|(radical, t)| PrimaryComponent {
            ideal: radical.power_ideal(t),
            radical,
        })
        .collect();
    Ok((comps, verified))
}

/// The components (P'_h)^{k a_h} of L^k, verified against power(L, k).
pub fn transversal_power_decomposition(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
    k: u32,
) -> Result<Vec<PrimaryComponent>> {
    let (comps, verified) = transversal_power_decomposition_report(spec, blocks, k)?;
    if !verified {
        return Err(Error::InvalidArgument(
            "primary decomposition identity failed: the intersection of the \
             prime powers differs from the power of the ideal"
                .into(),
        ));
    }
    Ok(comps)
}

/// Exact equality of `power` with the intersection of P_h^{t_h}, without
/// materializing the intersection: generator membership for one inclusion,
/// a bounded box scan for the other.
fn power_equals_prime_power_intersection(
    power: &MonomialIdeal,
    comps: &[(MonomialPrime, u32)],
) -> Result<bool> {
    let n = power.ring().total_vars();
    // power ⊆ every P^t: block degree of every generator reaches t.
    for (p, t) in comps {
        for g in power.gen_exps() {
            let deg: u64 = p.support().iter().map(|&v| g[v] as u64).sum();
            if deg < *t as u64 {
                return Ok(false);
            }
        }
    }
    // Intersection ⊆ power: minimal generators of the intersection live in
    // the box bounded coordinatewise by the largest t_h touching each
    // variable; membership in `power` is clamped to its generator maxima.
    let mut bound = vec![0u32; n];
    for (p, t) in comps {
        for &v in p.support() {
            bound[v] = bound[v].max(*t);
        }
    }
    let mut sigma = vec![0u32; n];
    for g in power.gen_exps() {
        for (s, &e) in sigma.iter_mut().zip(g) {
            *s = (*s).max(e);
        }
    }
    for v in 0..n {
        debug_assert!(sigma[v] <= bound[v]);
        bound[v] = bound[v].max(sigma[v]);
    }
    let dims: Vec<u64> = bound.iter().map(|&b| b as u64 + 1).collect();
    let cells: u64 = dims.iter().product();
    if cells > DECOMPOSITION_BOX_CAP {
        return Err(Error::ResourceLimit {
            what: "decomposition verification box".into(),
            required: cells,
            limit: DECOMPOSITION_BOX_CAP,
        });
    }
    let cells = cells as usize;
    let mut strides = vec![1usize; n];
    for v in (0..n.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * dims[v + 1] as usize;
    }
    let mut inside = vec![false; cells];
    for g in power.gen_exps() {
        let idx: usize = g
            .iter()
            .zip(&strides)
            .map(|(&e, &st)| e as usize * st)
            .sum();
        inside[idx] = true;
    }
    for v in 0..n {
        let dim = dims[v] as usize;
        let stride = strides[v];
        for idx in 0..cells {
            if (idx / stride) % dim > 0 && inside[idx - stride] {
                inside[idx] = true;
            }
        }
    }
    // Per-component linear forms over the digits.
    let comp_vars: Vec<(Vec<usize>, u64)> = comps
        .iter()
        .map(|(p, t)| (p.support().to_vec(), *t as u64))
        .collect();
    let mut digits = vec![0u64; n];
    for idx in 0..cells {
        let in_intersection = comp_vars
            .iter()
            .all(|(vars, t)| vars.iter().map(|&v| digits[v]).sum::<u64>() >= *t);
        if in_intersection && !inside[idx] {
            return Ok(false);
        }
        for v in (0..n).rev() {
            digits[v] += 1;
            if digits[v] < dims[v] {
                break;
            }
            digits[v] = 0;
        }
    }
    Ok(true)
}

/// Exchange property over all ordered generator pairs; single-degree is a
/// precondition of the notion.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> bool {
    if ideal.generated_in_single_degree().is_none() {
        return false;
    }
    let gens: HashSet<&Vec<u32>> = ideal.gen_exps().iter().collect();
    let n = ideal.ring().total_vars();
    for u in ideal.gen_exps() {
        for v in ideal.gen_exps() {
            for i in 0..n {
                if u[i] > v[i] {
                    let found = (0..n).any(|j| {
                        if u[j] >= v[j] {
                            return false;
                        }
                        let mut w = u.clone();
                        w[i] -= 1;
                        w[j] += 1;
                        gens.contains(&w)
                    });
                    if !found {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Ass(L^[k]) of the blocked transversal ideal, computed from the bracket
/// power by the general machinery.
pub fn bracket_ass_transversal(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
    k: u32,
) -> Result<Vec<MonomialPrime>> {
    if k < 1 {
        return Err(Error::InvalidArgument("bracket power needs k >= 1".into()));
    }
    let ideal = transversal_build(spec, blocks)?;
    crate::decomposition::associated_primes(&ideal.bracket_power(k))
}

/// Cohen-Macaulay check for a blocked transversal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmReport {
    pub is_cm: bool,
    pub dim: usize,
    pub depth: usize,
}

pub fn cm_check_transversal(
    spec: &TransversalSpec,
    blocks: Option<&[u32]>,
) -> Result<CmReport> {
    if !spec.covers_all_variables() {
        return Err(Error::InvalidArgument(
            "the CM check assumes the subsets cover every variable".into(),
        ));
    }
    let ideal = transversal_build(spec, blocks)?;
    let dim = crate::decomposition::dim_quotient(&ideal)?;
    let depth = depth_quotient(&ideal)?;
    Ok(CmReport {
        is_cm: dim == depth,
        dim,
        depth,
    })
}

/// The transversal instances exercised by the verification scenarios:
/// name, spec, optional block sizes.  The five-variable product appears
/// plain and blocked.
pub fn shipped_transversal_specs() -> Vec<(String, TransversalSpec, Option<Vec<u32>>)> {
    let five = TransversalSpec::new(
        5,
        vec![vec![1, 2], vec![1, 2, 3, 4], vec![3, 5], vec![4, 5]],
    )
    .expect("static spec");
    let path = TransversalSpec::new(3, vec![vec![1, 2], vec![2, 3]]).expect("static spec");
    vec![
        ("five-vars-product".into(), five.clone(), None),
        (
            "five-vars-product-blocked".into(),
            five,
            Some(vec![1, 1, 1, 1, 2]),
        ),
        ("path".into(), path.clone(), None),
        ("path-blocked".into(), path, Some(vec![2, 1, 1])),
        (
            "disjoint-pair".into(),
            TransversalSpec::new(4, vec![vec![1, 2], vec![3, 4]]).expect("static spec"),
            None,
        ),
        (
            "triangle".into(),
            TransversalSpec::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]])
                .expect("static spec"),
            None,
        ),
        (
            "maximal-squared".into(),
            TransversalSpec::new(2, vec![vec![1, 2], vec![1, 2]]).expect("static spec"),
            Some(vec![2, 2]),
        ),
        (
            "principal-blocked".into(),
            TransversalSpec::new(3, vec![vec![1], vec![2], vec![3]]).expect("static spec"),
            Some(vec![1, 1, 2]),
        ),
        (
            "star".into(),
            TransversalSpec::new(3, vec![vec![1], vec![1, 2], vec![1, 3]]).expect("static spec"),
            None,
        ),
        (
            "repeated-factor".into(),
            TransversalSpec::new(3, vec![vec![1, 2], vec![1, 2], vec![2, 3]])
                .expect("static spec"),
            None,
        ),
        (
            "nested-chain".into(),
            TransversalSpec::new(3, vec![vec![1], vec![1, 2], vec![1, 2, 3]])
                .expect("static spec"),
            None,
        ),
    ]
}

/// Spec-file formats accepted by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionSpecJson {
    Veronese {
        degree: u32,
        caps: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        blocks: Option<Vec<u32>>,
    },
    CappedVeroneseGmp {
        m1: u32,
        m2: u32,
        d: u32,
    },
    Gmp {
        base: IdealJson,
        blocks: Vec<u32>,
        family: Vec<GmpEntryJson>,
        #[serde(default)]
        strict: bool,
    },
    Transversal {
        n: usize,
        subsets: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        blocks: Option<Vec<u32>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GmpEntryJson {
    pub block: usize,
    pub exponent: u32,
    /// Generators over the block's own variables.
    pub generators: Vec<Vec<u32>>,
}

/// Build the ideal described by a spec file.
pub fn build_from_spec(spec: &ConstructionSpecJson) -> Result<MonomialIdeal> {
    match spec {
        ConstructionSpecJson::Veronese {
            degree,
            caps,
            blocks,
        } => {
            let ring = match blocks {
                Some(b) => Ring::new(b.clone()),
                None => Ring::plain(caps.len()),
            };
            veronese_type(&VeroneseSpec::new(caps.clone(), *degree)?, &ring)
        }
        ConstructionSpecJson::CappedVeroneseGmp { m1, m2, d } => capped_veronese_gmp(*m1, *m2, *d),
        ConstructionSpecJson::Gmp {
            base,
            blocks,
            family,
            strict,
        } => {
            let base = MonomialIdeal::from_json(base)?;
            let mut fam = GmpFamily::new(base, blocks.clone())?;
            for entry in family {
                if entry.block < 1 || entry.block > blocks.len() {
                    return Err(Error::InvalidArgument(format!(
                        "family entry block {} out of range",
                        entry.block
                    )));
                }
                let m = blocks[entry.block - 1] as usize;
                let block_ring = Ring::plain(m);
                let ideal = MonomialIdeal::from_json(&IdealJson {
                    ring: block_ring.to_json(),
                    generators: entry.generators.clone(),
                })?;
                fam.insert(entry.block, entry.exponent, &ideal)?;
            }
            gmp_build(&fam, *strict)
        }
        ConstructionSpecJson::Transversal { n, subsets, blocks } => transversal_build(
            &TransversalSpec::new(*n, subsets.clone())?,
            blocks.as_deref(),
        ),
    }
}
