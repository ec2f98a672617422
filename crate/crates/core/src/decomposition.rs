//! Irreducible and primary decomposition, associated primes, vertex covers,
//! and stabilization of Ass over powers.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::ideal::{minimalize_exps, MonomialIdeal, MonomialPrime, Provenance};
use crate::monomial::lex_cmp;
use crate::ring::Ring;

/// Cap on irreducible components produced by the splitting recursion.
pub const COMPONENT_CAP: u64 = 50_000;

/// Default cap on the lattice-point count of the witness box of
/// `ass_oracle`; adjustable per process.
pub const DEFAULT_WITNESS_BOX_CAP: u64 = 10_000_000;

static WITNESS_BOX_CAP: AtomicU64 = AtomicU64::new(DEFAULT_WITNESS_BOX_CAP);

pub fn witness_box_cap() -> u64 {
    WITNESS_BOX_CAP.load(Ordering::Relaxed)
}

/// Set once at startup, before any computation.
pub fn set_witness_box_cap(cap: u64) {
    WITNESS_BOX_CAP.store(cap.max(1), Ordering::Relaxed);
}
/// Cap on the cells of the socle membership box.
const SOCLE_BOX_CAP: u64 = 50_000_000;
/// Cap on the support size for vertex-cover enumeration.
pub const COVER_SUPPORT_CAP: usize = 24;

/// An irreducible monomial ideal (x_v^{b_v} : b_v present), stored as one
/// bound per variable with 0 meaning "absent".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    ring: Ring,
    bounds: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn new(ring: &Ring, bounds: Vec<u32>) -> Self {
        assert_eq!(bounds.len(), ring.total_vars());
        assert!(bounds.iter().any(|&b| b > 0), "at least one bound present");
        IrreducibleComponent {
            ring: ring.clone(),
            bounds,
        }
    }

    pub fn bound(&self, var: usize) -> Option<u32> {
        (self.bounds[var] > 0).then_some(self.bounds[var])
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.bounds.len())
            .filter(|&v| self.bounds[v] > 0)
            .collect()
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::new(&self.ring, self.support()).expect("nonempty support")
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.ring.total_vars();
        let gens = self
            .bounds
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(v, &b)| {
                let mut e = vec![0u32; n];
                e[v] = b;
                e
            })
            .collect();
        MonomialIdeal::from_exps(&self.ring, gens)
    }

    /// self ⊆ other as ideals: every variable present in self is present in
    /// other with a bound at most self's.
    pub fn contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.bounds
            .iter()
            .zip(&other.bounds)
            .all(|(&s, &o)| s == 0 || (o > 0 && o <= s))
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ideal())
    }
}

/// A primary component together with its radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub ideal: MonomialIdeal,
    pub radical: MonomialPrime,
}

fn require_proper(ideal: &MonomialIdeal, op: &'static str) -> Result<()> {
    if ideal.is_proper_nonzero() {
        Ok(())
    } else {
        Err(Error::ZeroOrUnitIdeal(op))
    }
}

/// Intersection of a list of ideals; None for an empty list.
pub fn intersect_all(components: &[MonomialIdeal]) -> Result<Option<MonomialIdeal>> {
    let mut acc: Option<MonomialIdeal> = None;
    for c in components {
        acc = Some(match acc {
            None => c.clone(),
            Some(a) => a.intersect(c)?,
        });
    }
    Ok(acc)
}

/// Irredundant decomposition of a monomial ideal as an intersection of
/// irreducible ideals, by recursive splitting of a mixed generator
/// u = u'·u'' into coprime parts.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    require_proper(ideal, "irreducible decomposition")?;
    let mut memo: HashMap<Vec<Vec<u32>>, Vec<Vec<u32>>> = HashMap::new();
    let mut produced = 0u64;
    let raw = split(ideal.gen_exps().to_vec(), &mut memo, &mut produced)?;

    let components: Vec<IrreducibleComponent> = raw
        .into_iter()
        .map(|b| IrreducibleComponent::new(ideal.ring(), b))
        .collect();
    // A component that contains another component is redundant.
    let mut kept: Vec<IrreducibleComponent> = components
        .iter()
        .filter(|c| !components.iter().any(|d| *d != **c && d.contained_in(c)))
        .cloned()
        .collect();
    kept.sort_by(|a, b| {
        a.radical()
            .sort_key()
            .cmp(&b.radical().sort_key())
            .then_with(|| lex_cmp(a.bounds(), b.bounds()))
    });
    Ok(kept)
}

fn split(
    gens: Vec<Vec<u32>>,
    memo: &mut HashMap<Vec<Vec<u32>>, Vec<Vec<u32>>>,
    produced: &mut u64,
) -> Result<Vec<Vec<u32>>> {
    if let Some(hit) = memo.get(&gens) {
        return Ok(hit.clone());
    }
    let mixed = gens
        .iter()
        .position(|g| g.iter().filter(|&&e| e > 0).count() >= 2);
    let result = match mixed {
        None => {
            // Pure powers only: the ideal itself is irreducible.
            let n = gens[0].len();
            let mut bounds = vec![0u32; n];
            for g in &gens {
                for (v, &e) in g.iter().enumerate() {
                    if e > 0 {
                        bounds[v] = e;
                    }
                }
            }
            *produced += 1;
            if *produced > COMPONENT_CAP {
                return Err(Error::ResourceLimit {
                    what: "irreducible components".into(),
                    required: *produced,
                    limit: COMPONENT_CAP,
                });
            }
            vec![bounds]
        }
        Some(idx) => {
            let u = &gens[idx];
            let first_var = u.iter().position(|&e| e > 0).expect("mixed generator");
            let mut head = vec![0u32; u.len()];
            head[first_var] = u[first_var];
            let mut tail = u.clone();
            tail[first_var] = 0;

            let mut left = gens.clone();
            left[idx] = head;
            let mut right = gens.clone();
            right[idx] = tail;

            let mut out = split(minimalize_exps(left), memo, produced)?;
            out.extend(split(minimalize_exps(right), memo, produced)?);
            out.sort_unstable();
            out.dedup();
            out
        }
    };
    memo.insert(gens, result.clone());
    Ok(result)
}

/// Associated primes of T/I, sorted by (cardinality, support).
///
/// Small inputs go through the radicals of the irredundant irreducible
/// decomposition.  Inputs whose splitting tree would be too large use the
/// localization criterion instead: P_F is associated iff the localized
/// quotient has a nonzero socle.  Both routes are exact and are asserted
/// equal on the randomized suites.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    require_proper(ideal, "associated primes")?;
    if splitting_feasible(ideal) {
        let components = irreducible_decomposition(ideal)?;
        let mut primes: Vec<MonomialPrime> = components.iter().map(|c| c.radical()).collect();
        primes.sort();
        primes.dedup();
        Ok(primes)
    } else {
        associated_primes_by_localization(ideal)
    }
}

fn splitting_feasible(ideal: &MonomialIdeal) -> bool {
    let mut log_leaves = 0f64;
    for g in ideal.gen_exps() {
        let s = g.iter().filter(|&&e| e > 0).count().max(1);
        log_leaves += (s as f64).log2();
        if log_leaves > 17.0 {
            return false;
        }
    }
    true
}

/// P_F ∈ Ass(T/I) iff the socle of S(F)/I(F) is nonzero.  This is the
/// route `associated_primes` takes for large inputs; public so the suites
/// can cross-check it against the decomposition route on small ones.
pub fn associated_primes_by_localization(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    let support = ideal.support();
    let s = support.len();
    if s > 20 {
        return Err(Error::ResourceLimit {
            what: "associated-prime candidate subsets".into(),
            required: 1u64 << s.min(63),
            limit: 1 << 20,
        });
    }
    let gen_masks: Vec<u32> = ideal
        .gen_exps()
        .iter()
        .map(|g| {
            let mut m = 0u32;
            for (pos, &v) in support.iter().enumerate() {
                if g[v] > 0 {
                    m |= 1 << pos;
                }
            }
            m
        })
        .collect();
    let mut primes = Vec::new();
    for mask in 1u32..(1u32 << s) {
        // An associated prime contains I, so its support covers every
        // generator.
        if gen_masks.iter().any(|&g| g & mask == 0) {
            continue;
        }
        let vars: Vec<usize> = (0..s).filter(|&p| mask >> p & 1 == 1).collect();
        let projected: HashSet<Vec<u32>> = ideal
            .gen_exps()
            .iter()
            .map(|g| vars.iter().map(|&p| g[support[p]]).collect())
            .collect();
        let local = minimalize_exps(projected.into_iter().collect());
        if socle_nonzero(&local)? {
            let global: Vec<usize> = vars.iter().map(|&p| support[p]).collect();
            primes.push(MonomialPrime::new(ideal.ring(), global)?);
        }
    }
    primes.sort();
    Ok(primes)
}

/// Whether S/J has a monomial f ∉ J with x_t f ∈ J for every variable t.
/// J is given by minimal generators over all variables of its local ring
/// and must be proper and nonzero.
fn socle_nonzero(gens: &[Vec<u32>]) -> Result<bool> {
    let s = gens[0].len();
    let mut sigma = vec![0u32; s];
    for g in gens {
        for (m, &e) in sigma.iter_mut().zip(g) {
            *m = (*m).max(e);
        }
    }
    // Witnesses are minimal generators of J : m, whose exponents are bounded
    // by sigma; one extra layer holds the shifted lookups.
    let dims: Vec<u64> = sigma.iter().map(|&m| m as u64 + 2).collect();
    let cells: u64 = dims.iter().product();
    if cells > SOCLE_BOX_CAP {
        return Err(Error::ResourceLimit {
            what: "socle membership box".into(),
            required: cells,
            limit: SOCLE_BOX_CAP,
        });
    }
    let cells = cells as usize;
    let mut strides = vec![1usize; s];
    for t in (0..s - 1).rev() {
        strides[t] = strides[t + 1] * dims[t + 1] as usize;
    }
    let mut inside = vec![false; cells];
    for g in gens {
        let idx: usize = g
            .iter()
            .zip(&strides)
            .map(|(&e, &st)| e as usize * st)
            .sum();
        inside[idx] = true;
    }
    // Upward closure of the generators: one prefix-OR sweep per dimension.
    for t in 0..s {
        let dim = dims[t] as usize;
        let stride = strides[t];
        for idx in 0..cells {
            if (idx / stride) % dim > 0 && inside[idx - stride] {
                inside[idx] = true;
            }
        }
    }
    // Scan the inner box for a corner monomial.
    let mut digits = vec![0u64; s];
    for idx in 0..cells {
        let interior = digits.iter().zip(&sigma).all(|(&d, &m)| d <= m as u64);
        if interior && !inside[idx] && (0..s).all(|t| inside[idx + strides[t]]) {
            return Ok(true);
        }
        for t in (0..s).rev() {
            digits[t] += 1;
            if digits[t] < dims[t] {
                break;
            }
            digits[t] = 0;
        }
    }
    Ok(false)
}

/// Witness-search oracle: enumerate the monomials f dividing the lcm of the
/// generators and keep the primes realized as I : f.
pub fn ass_oracle(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    require_proper(ideal, "ass oracle")?;
    let lcm = ideal.lcm_of_generators().expect("nonzero ideal");
    let sigma = lcm.exponents();
    let cells: u64 = sigma.iter().map(|&e| e as u64 + 1).product();
    let cap = witness_box_cap();
    if cells > cap {
        return Err(Error::ResourceLimit {
            what: "witness box".into(),
            required: cells,
            limit: cap,
        });
    }
    let n = sigma.len();
    let mut primes: HashSet<Vec<usize>> = HashSet::new();
    let mut f = vec![0u32; n];
    'outer: loop {
        if let Some(support) = colon_is_prime(ideal, &f) {
            primes.insert(support);
        }
        for t in (0..n).rev() {
            if f[t] < sigma[t] {
                f[t] += 1;
                continue 'outer;
            }
            f[t] = 0;
        }
        break;
    }
    let mut out: Vec<MonomialPrime> = primes
        .into_iter()
        .map(|s| MonomialPrime::new(ideal.ring(), s).expect("nonempty"))
        .collect();
    out.sort();
    Ok(out)
}

/// Support of P when I : f = P is a monomial prime, else None.
fn colon_is_prime(ideal: &MonomialIdeal, f: &[u32]) -> Option<Vec<usize>> {
    let quotients: Vec<Vec<u32>> = ideal
        .gen_exps()
        .iter()
        .map(|g| {
            g.iter()
                .zip(f)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect()
        })
        .collect();
    let colon = minimalize_exps(quotients);
    let mut support = Vec::new();
    for g in &colon {
        let mut var = None;
        for (v, &e) in g.iter().enumerate() {
            match (e, var) {
                (0, _) => {}
                (1, None) => var = Some(v),
                _ => return None,
            }
        }
        support.push(var?);
    }
    if support.is_empty() {
        return None;
    }
    support.sort_unstable();
    Some(support)
}

/// Irredundant primary decomposition: intersect the irreducible components
/// sharing a radical, then drop redundant components.
pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<Vec<PrimaryComponent>> {
    require_proper(ideal, "primary decomposition")?;
    let components = irreducible_decomposition(ideal)?;
    let mut groups: HashMap<Vec<usize>, Vec<IrreducibleComponent>> = HashMap::new();
    for c in components {
        groups.entry(c.support()).or_default().push(c);
    }
    let mut primary: Vec<PrimaryComponent> = Vec::new();
    for (support, group) in groups {
        let ideals: Vec<MonomialIdeal> = group.iter().map(|c| c.to_ideal()).collect();
        primary.push(PrimaryComponent {
            ideal: intersect_all(&ideals)?.expect("nonempty group"),
            radical: MonomialPrime::new(ideal.ring(), support)?,
        });
    }
    // Grouping an irredundant irreducible decomposition cannot produce a
    // redundant primary component; keep the removal check as a guard.
    let mut idx = 0;
    while idx < primary.len() {
        if primary.len() > 1 {
            let rest: Vec<MonomialIdeal> = primary
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != idx)
                .map(|(_, c)| c.ideal.clone())
                .collect();
            let rest = intersect_all(&rest)?.expect("nonempty");
            if primary[idx].ideal.contains_ideal(&rest)? {
                primary.remove(idx);
                continue;
            }
        }
        idx += 1;
    }
    primary.sort_by(|a, b| a.radical.sort_key().cmp(&b.radical.sort_key()));
    Ok(primary)
}

/// Minimal vertex covers of the generators, as sorted variable-index sets,
/// ordered by (size, lex).
pub fn minimal_vertex_covers(ideal: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    require_proper(ideal, "vertex covers")?;
    let support = ideal.support();
    let s = support.len();
    if s > COVER_SUPPORT_CAP {
        return Err(Error::ResourceLimit {
            what: "vertex-cover support".into(),
            required: s as u64,
            limit: COVER_SUPPORT_CAP as u64,
        });
    }
    let gen_masks: Vec<u32> = ideal
        .gen_exps()
        .iter()
        .map(|g| {
            let mut m = 0u32;
            for (pos, &v) in support.iter().enumerate() {
                if g[v] > 0 {
                    m |= 1 << pos;
                }
            }
            m
        })
        .collect();
    let mut minimal: Vec<u32> = Vec::new();
    for size in 1..=s {
        for_each_subset_of_size(s, size, &mut |mask| {
            if gen_masks.iter().all(|&g| g & mask != 0)
                && !minimal.iter().any(|&c| c & mask == c)
            {
                minimal.push(mask);
            }
        });
    }
    let mut out: Vec<Vec<usize>> = minimal
        .into_iter()
        .map(|mask| {
            (0..s)
                .filter(|&p| mask >> p & 1 == 1)
                .map(|p| support[p])
                .collect()
        })
        .collect();
    out.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
    Ok(out)
}

fn for_each_subset_of_size(s: usize, size: usize, f: &mut impl FnMut(u32)) {
    debug_assert!(size >= 1 && size <= s);
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        f(subset.iter().fold(0u32, |m, &p| m | 1 << p));
        let mut advanced = false;
        for i in (0..size).rev() {
            if subset[i] < s - (size - i) {
                subset[i] += 1;
                for j in i + 1..size {
                    subset[j] = subset[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return;
        }
    }
}

/// Minimal cardinality of a vertex cover.
pub fn height(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(minimal_vertex_covers(ideal)?
        .first()
        .expect("proper nonzero ideal has a cover")
        .len())
}

/// dim(T/I) = total variables − height(I).
pub fn dim_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(ideal.ring().total_vars() - height(ideal)?)
}

/// All minimal vertex covers share one cardinality.
pub fn is_unmixed(ideal: &MonomialIdeal) -> Result<bool> {
    let covers = minimal_vertex_covers(ideal)?;
    let first = covers[0].len();
    Ok(covers.iter().all(|c| c.len() == first))
}

/// Minimal primes, in bijection with the minimal vertex covers.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    let mut primes: Vec<MonomialPrime> = minimal_vertex_covers(ideal)?
        .into_iter()
        .map(|c| MonomialPrime::new(ideal.ring(), c).expect("nonempty cover"))
        .collect();
    primes.sort();
    Ok(primes)
}

/// Stabilization report for Ass(I^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstabReport {
    /// Smallest k with Ass(I^j) constant for k ≤ j ≤ k_max.
    pub index: u32,
    pub stable_ass: Vec<MonomialPrime>,
    /// True when stability at the reported index is a theorem for the
    /// input's construction; false means "observed up to k_max" only.
    pub proven: bool,
}

/// Ass(I^k) for k = 1..k_max and the smallest index after which the set
/// stays constant through k_max.
pub fn astab(ideal: &MonomialIdeal, k_max: u32) -> Result<AstabReport> {
    require_proper(ideal, "astab")?;
    if k_max < 1 {
        return Err(Error::InvalidArgument("astab needs k_max >= 1".into()));
    }
    let mut sets: Vec<Vec<MonomialPrime>> = Vec::new();
    let mut power = ideal.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = power.product(ideal)?;
        }
        sets.push(associated_primes(&power)?);
    }
    let last = sets.last().expect("k_max >= 1").clone();
    let mut index = k_max;
    for k in (1..k_max).rev() {
        if sets[(k - 1) as usize] == last {
            index = k;
        } else {
            break;
        }
    }
    Ok(AstabReport {
        index,
        stable_ass: last,
        proven: ideal.provenance() == Provenance::Transversal,
    })
}
