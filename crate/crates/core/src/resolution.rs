//! Multigraded Betti numbers via simplicial homology of upper Koszul
//! complexes over the lcm lattice, and the derived invariants: projective
//! dimension, depth, regularity, linear resolutions and quotients, depth
//! stability, and analytic spread.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, Provenance};
use crate::linalg::{rank, CoefficientField};
use crate::monomial::{degree, divides, lcm_exps};
use crate::ring::Ring;
use crate::simplicial::SimplicialComplexSmall;

/// Default cap on the size of the lcm lattice; adjustable per process.
pub const DEFAULT_LATTICE_CAP: u64 = 1 << 20;

static LATTICE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_LATTICE_CAP);

pub fn lattice_cap() -> u64 {
    LATTICE_CAP.load(Ordering::Relaxed)
}

/// Set once at startup, before any computation.
pub fn set_lattice_cap(cap: u64) {
    LATTICE_CAP.store(cap.max(1), Ordering::Relaxed);
}
/// Caps for the Koszul oracle, which scales as 2^vars * gens * lattice.
pub const ORACLE_VAR_CAP: usize = 12;
pub const ORACLE_GEN_CAP: usize = 12;

/// Multigraded Betti numbers of an ideal: entries (i, multidegree) -> rank,
/// stored only where the rank is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ring: Ring,
    entries: BTreeMap<(usize, Vec<u32>), u64>,
}

impl BettiTable {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank_at(&self, i: usize, multidegree: &[u32]) -> u64 {
        self.entries
            .get(&(i, multidegree.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Entries sorted by (i, total degree, multidegree).
    pub fn entries(&self) -> Vec<(usize, Vec<u32>, u64)> {
        let mut out: Vec<(usize, Vec<u32>, u64)> = self
            .entries
            .iter()
            .map(|((i, a), &r)| (*i, a.clone(), r))
            .collect();
        out.sort_by(|x, y| {
            x.0.cmp(&y.0)
                .then_with(|| degree(&x.1).cmp(&degree(&y.1)))
                .then_with(|| x.1.cmp(&y.1))
        });
        out
    }

    /// Total Betti number in homological index i.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(_, &r)| r)
            .sum()
    }

    /// Largest homological index with a nonzero entry (pd of the ideal).
    pub fn projective_dimension_of_ideal(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// max { |a| - i : rank(i, a) != 0 }.
    pub fn regularity(&self) -> u64 {
        self.entries
            .keys()
            .map(|(i, a)| degree(a) - *i as u64)
            .max()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Vec<BettiEntryJson> {
        self.entries()
            .into_iter()
            .map(|(i, a, r)| BettiEntryJson {
                i,
                total_degree: degree(&a),
                multidegree: a,
                rank: r,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BettiEntryJson {
    pub i: usize,
    pub multidegree: Vec<u32>,
    pub total_degree: u64,
    pub rank: u64,
}

/// All componentwise lcms of nonempty subsets of the minimal generators,
/// deduplicated and sorted by (degree, exponents).
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<Vec<Vec<u32>>> {
    if ideal.is_zero() {
        return Err(Error::ZeroOrUnitIdeal("lcm lattice"));
    }
    let gens = ideal.gen_exps();
    let mut seen: HashSet<Vec<u32>> = gens.iter().cloned().collect();
    let mut queue: Vec<Vec<u32>> = seen.iter().cloned().collect();
    let cap = lattice_cap();
    while let Some(v) = queue.pop() {
        for g in gens {
            let l = lcm_exps(&v, g);
            if !seen.contains(&l) {
                if seen.len() as u64 + 1 > cap {
                    return Err(Error::ResourceLimit {
                        what: "lcm lattice".into(),
                        required: seen.len() as u64 + 1,
                        limit: cap,
                    });
                }
                seen.insert(l.clone());
                queue.push(l);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// beta_{i,a}(I) as the reduced homology of the upper Koszul complex
/// K^a(I) = { squarefree b <= a : x^(a-b) in I } in degree i-1, at every
/// multidegree a of the lcm lattice.
pub fn betti_table(ideal: &MonomialIdeal, field: CoefficientField) -> Result<BettiTable> {
    let ring = ideal.ring().clone();
    let mut entries = BTreeMap::new();
    if ideal.is_zero() {
        return Ok(BettiTable { ring, entries });
    }
    if ideal.is_unit() {
        entries.insert((0, vec![0u32; ring.total_vars()]), 1);
        return Ok(BettiTable { ring, entries });
    }
    let lattice = lcm_lattice(ideal)?;
    let gens = ideal.gen_exps();
    for a in lattice {
        let verts: Vec<usize> = (0..a.len()).filter(|&v| a[v] > 0).collect();
        if verts.len() > 32 {
            return Err(Error::ResourceLimit {
                what: "upper Koszul vertex set".into(),
                required: verts.len() as u64,
                limit: 32,
            });
        }
        // K^a is the union of the simplices on V_a \ E_g over the divisors
        // g of x^a, where E_g marks the coordinates where g reaches a.
        let full: u32 = if verts.len() == 32 {
            u32::MAX
        } else {
            (1u32 << verts.len()) - 1
        };
        let mut facets: Vec<u32> = Vec::new();
        let mut contractible = false;
        for g in gens {
            if !divides(g, &a) {
                continue;
            }
            let mut facet = 0u32;
            for (pos, &v) in verts.iter().enumerate() {
                if g[v] < a[v] {
                    facet |= 1 << pos;
                }
            }
            if facet == full {
                contractible = true;
                break;
            }
            facets.push(facet);
        }
        if contractible {
            continue;
        }
        debug_assert!(!facets.is_empty(), "lattice points divide some generator");
        let complex = SimplicialComplexSmall::from_facets(verts, facets)?;
        let ranks = complex.reduced_homology_ranks(field);
        for (slot, &rho) in ranks.iter().enumerate() {
            if rho > 0 {
                // slot = d + 1 where d is the homology dimension; the
                // Hochster index is i = d + 1 as well.
                entries.insert((slot, a.clone()), rho);
            }
        }
    }
    Ok(BettiTable { ring, entries })
}

/// Independent oracle: homology of the full Koszul complex on all variables
/// tensored with T/I, multidegree by multidegree.  beta_{i,a}(I) is read off
/// as beta_{i+1,a}(T/I).
pub fn betti_oracle(ideal: &MonomialIdeal, field: CoefficientField) -> Result<BettiTable> {
    let ring = ideal.ring().clone();
    let n = ring.total_vars();
    if n > ORACLE_VAR_CAP || ideal.num_generators() > ORACLE_GEN_CAP {
        return Err(Error::ResourceLimit {
            what: "Koszul oracle size".into(),
            required: n.max(ideal.num_generators()) as u64,
            limit: ORACLE_VAR_CAP as u64,
        });
    }
    let mut entries = BTreeMap::new();
    if ideal.is_zero() {
        return Ok(BettiTable { ring, entries });
    }
    if ideal.is_unit() {
        entries.insert((0, vec![0u32; n]), 1);
        return Ok(BettiTable { ring, entries });
    }
    for a in lcm_lattice(ideal)? {
        // Basis of (Λ^i K^n ⊗ T/I)_a: subsets F with a - eps_F >= 0 and
        // x^(a - eps_F) not in I; group by |F|.
        let verts: Vec<usize> = (0..n).filter(|&v| a[v] > 0).collect();
        let mut by_card: Vec<Vec<u32>> = vec![Vec::new(); verts.len() + 1];
        for mask in 0u32..(1u32 << verts.len()) {
            let mut b = a.clone();
            for (pos, &v) in verts.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    b[v] -= 1;
                }
            }
            if !ideal.contains_exps(&b) {
                by_card[mask.count_ones() as usize].push(mask);
            }
        }
        for level in &mut by_card {
            level.sort_unstable();
        }
        let groups = by_card.len();
        let mut boundary_rank = vec![0usize; groups + 1];
        for i in 1..groups {
            boundary_rank[i] = rank(
                &koszul_boundary(&by_card[i - 1], &by_card[i]),
                field,
            );
        }
        for i in 1..groups {
            let dim_i = by_card[i].len();
            let next = if i + 1 < groups { boundary_rank[i + 1] } else { 0 };
            let h = dim_i - boundary_rank[i] - next;
            if h > 0 {
                entries.insert((i - 1, a.clone()), h as u64);
            }
        }
    }
    Ok(BettiTable { ring, entries })
}

fn koszul_boundary(lower: &[u32], upper: &[u32]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (col, &face) in upper.iter().enumerate() {
        let mut sign = 1i64;
        let mut rest = face;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if let Ok(row) = lower.binary_search(&(face ^ bit)) {
                m[row][col] = sign;
            }
            sign = -sign;
            rest ^= bit;
        }
    }
    m
}

fn require_proper(ideal: &MonomialIdeal, op: &'static str) -> Result<()> {
    if ideal.is_proper_nonzero() {
        Ok(())
    } else {
        Err(Error::ZeroOrUnitIdeal(op))
    }
}

/// The sets of colon variables along the canonical (descending lex) order,
/// when every colon ideal (u_1..u_{j-1}) : u_j is generated by variables;
/// None when some colon is not.
fn linear_quotient_variable_sets(gens: &[Vec<u32>]) -> Option<Vec<Vec<usize>>> {
    let n = gens.first().map(|g| g.len()).unwrap_or(0);
    let mut sets = Vec::with_capacity(gens.len());
    for j in 0..gens.len() {
        let uj = &gens[j];
        let mut vars: Vec<bool> = vec![false; n];
        for ut in &gens[..j] {
            // u_t contributes the variable v when u_t divides x_v * u_j,
            // i.e. the excess of u_t over u_j is a single variable.
            let mut excess_var = None;
            let mut excess_total = 0u64;
            for v in 0..n {
                let e = ut[v].saturating_sub(uj[v]) as u64;
                if e > 0 {
                    excess_total += e;
                    excess_var = Some(v);
                    if excess_total > 1 {
                        break;
                    }
                }
            }
            if excess_total == 1 {
                vars[excess_var.expect("excess seen")] = true;
            }
        }
        // Every colon generator u_t / gcd(u_t, u_j) must be divisible by
        // one of the collected variables.
        for ut in &gens[..j] {
            let ok = (0..n).any(|v| vars[v] && ut[v] > uj[v]);
            if !ok {
                return None;
            }
        }
        sets.push((0..n).filter(|&v| vars[v]).collect());
    }
    Some(sets)
}

/// Linear quotients under the canonical descending-lex order.
pub fn has_linear_quotients(ideal: &MonomialIdeal) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroOrUnitIdeal("linear quotients"));
    }
    Ok(linear_quotient_variable_sets(ideal.gen_exps()).is_some())
}

/// Linear quotients under an explicit order, given as a permutation of the
/// canonical generator positions.
pub fn has_linear_quotients_with_order(ideal: &MonomialIdeal, order: &[usize]) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroOrUnitIdeal("linear quotients"));
    }
    let gens = ideal.gen_exps();
    if order.len() != gens.len() {
        return Err(Error::InvalidArgument(
            "order must be a permutation of the generators".into(),
        ));
    }
    let mut seen = vec![false; gens.len()];
    for &i in order {
        if i >= gens.len() || seen[i] {
            return Err(Error::InvalidArgument(
                "order must be a permutation of the generators".into(),
            ));
        }
        seen[i] = true;
    }
    let permuted: Vec<Vec<u32>> = order.iter().map(|&i| gens[i].clone()).collect();
    Ok(linear_quotient_variable_sets(&permuted).is_some())
}

/// pd of the ideal I (not of T/I).
///
/// Ideals generated in a single degree with linear quotients resolve by the
/// iterated mapping cone, which is minimal, so pd(I) is the largest colon
/// variable count; everything else goes through the Betti table.
fn projective_dimension_of_ideal(ideal: &MonomialIdeal, field: CoefficientField) -> Result<usize> {
    if ideal.generated_in_single_degree().is_some() {
        if let Some(sets) = linear_quotient_variable_sets(ideal.gen_exps()) {
            return Ok(sets.iter().map(|s| s.len()).max().unwrap_or(0));
        }
    }
    Ok(betti_table(ideal, field)?.projective_dimension_of_ideal())
}

/// pd(T/I) = pd(I) + 1 for a proper nonzero ideal.
pub fn projective_dimension(ideal: &MonomialIdeal) -> Result<usize> {
    projective_dimension_with_field(ideal, CoefficientField::Rationals)
}

pub fn projective_dimension_with_field(
    ideal: &MonomialIdeal,
    field: CoefficientField,
) -> Result<usize> {
    require_proper(ideal, "projective dimension")?;
    Ok(projective_dimension_of_ideal(ideal, field)? + 1)
}

/// depth(T/I) = total_vars - pd(T/I) (Auslander-Buchsbaum).
pub fn depth_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    depth_quotient_with_field(ideal, CoefficientField::Rationals)
}

pub fn depth_quotient_with_field(
    ideal: &MonomialIdeal,
    field: CoefficientField,
) -> Result<usize> {
    Ok(ideal.ring().total_vars() - projective_dimension_with_field(ideal, field)?)
}

/// reg(I) = max { |a| - i : beta_{i,a}(I) != 0 }.
pub fn regularity(ideal: &MonomialIdeal) -> Result<u64> {
    regularity_with_field(ideal, CoefficientField::Rationals)
}

pub fn regularity_with_field(ideal: &MonomialIdeal, field: CoefficientField) -> Result<u64> {
    if ideal.is_zero() {
        return Err(Error::ZeroOrUnitIdeal("regularity"));
    }
    Ok(betti_table(ideal, field)?.regularity())
}

/// Outcome of the linear-resolution test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearResolutionReport {
    pub holds: bool,
    /// Set when the test fails without consulting Betti numbers.
    pub reason: Option<String>,
}

/// I has a linear resolution iff it is generated in a single degree d and
/// every nonzero beta_{i,a} satisfies |a| = i + d.
pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<LinearResolutionReport> {
    has_linear_resolution_with_field(ideal, CoefficientField::Rationals)
}

pub fn has_linear_resolution_with_field(
    ideal: &MonomialIdeal,
    field: CoefficientField,
) -> Result<LinearResolutionReport> {
    require_proper(ideal, "linear resolution")?;
    let Some(d) = ideal.generated_in_single_degree() else {
        return Ok(LinearResolutionReport {
            holds: false,
            reason: Some("not generated in a single degree".into()),
        });
    };
    let table = betti_table(ideal, field)?;
    let holds = table
        .entries()
        .iter()
        .all(|(i, a, _)| degree(a) == *i as u64 + d);
    Ok(LinearResolutionReport {
        holds,
        reason: None,
    })
}

/// depth(T/I) == dim(T/I).
pub fn is_cohen_macaulay(ideal: &MonomialIdeal) -> Result<bool> {
    require_proper(ideal, "Cohen-Macaulay test")?;
    Ok(depth_quotient(ideal)? == crate::decomposition::dim_quotient(ideal)?)
}

/// Stabilization report for depth(T/I^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DstabReport {
    /// Smallest k with depth(T/I^j) constant for k <= j <= k_max.
    pub index: u32,
    pub limit_depth: usize,
    pub depths: Vec<usize>,
    /// True when constancy is a theorem for the input's construction.
    pub proven: bool,
}

pub fn dstab(ideal: &MonomialIdeal, k_max: u32) -> Result<DstabReport> {
    require_proper(ideal, "dstab")?;
    if k_max < 1 {
        return Err(Error::InvalidArgument("dstab needs k_max >= 1".into()));
    }
    let mut depths = Vec::new();
    let mut power = ideal.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = power.product(ideal)?;
        }
        depths.push(depth_quotient(&power)?);
    }
    let last = *depths.last().expect("k_max >= 1");
    let mut index = k_max;
    for k in (1..k_max).rev() {
        if depths[(k - 1) as usize] == last {
            index = k;
        } else {
            break;
        }
    }
    Ok(DstabReport {
        index,
        limit_depth: last,
        depths,
        proven: ideal.provenance() == Provenance::Transversal,
    })
}

/// Analytic spread of a transversal-provenance ideal, through the depth
/// formula: total variables minus the (constant) depth of T/L.
pub fn analytic_spread_transversal(ideal: &MonomialIdeal) -> Result<usize> {
    require_proper(ideal, "analytic spread")?;
    if ideal.provenance() != Provenance::Transversal {
        return Err(Error::InvalidArgument(
            "analytic spread via the depth formula needs transversal provenance".into(),
        ));
    }
    Ok(ideal.ring().total_vars() - depth_quotient(ideal)?)
}
