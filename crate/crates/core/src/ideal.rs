use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{degree, divides, lcm_exps, lex_cmp, mul_exps, Monomial};
use crate::ring::{Ring, RingJson};

/// How an ideal was constructed.  Construction routines tag their output so
/// that stability reports (`astab`, `dstab`, analytic spread) can honestly
/// distinguish "proven by a theorem about this family" from "observed up to
/// the computed bound".  Never part of equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Generic,
    CappedVeronese,
    Transversal,
}

/// Spec-level cap on the pairwise-lcm candidate list built by `intersect`.
pub const INTERSECT_CANDIDATE_CAP: u64 = 50_000;

/// A monomial ideal, stored as its unique minimal generating set in
/// canonical order (descending lexicographic on exponent vectors).
///
/// The empty generator set is the zero ideal; the set {1} is the unit ideal.
#[derive(Clone)]
pub struct MonomialIdeal {
    ring: Ring,
    /// Minimal generators as raw exponent vectors, descending lex.
    gens: Vec<Vec<u32>>,
    provenance: Provenance,
}

/// Divisibility-minimal subset of a set of exponent vectors, canonically
/// ordered.  A vector of zeros (the monomial 1) absorbs everything.
pub(crate) fn minimalize_exps(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    if gens.is_empty() {
        return gens;
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        let n = gens[0].len();
        return vec![vec![0; n]];
    }
    gens.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| lex_cmp(a, b)));
    gens.dedup();
    let mut survivors: Vec<Vec<u32>> = Vec::new();
    // survivors[..lower] have degree strictly below the current bucket, so
    // only they can divide a candidate (proper divisors drop the degree).
    let mut lower = 0usize;
    let mut current = u64::MAX;
    for g in gens {
        let d = degree(&g);
        if d != current {
            lower = survivors.len();
            current = d;
        }
        if !survivors[..lower].iter().any(|s| divides(s, &g)) {
            survivors.push(g);
        }
    }
    survivors.sort_by(|a, b| lex_cmp(b, a));
    survivors
}

impl MonomialIdeal {
    /// Minimal generating set of the ideal generated by `gens`.
    pub fn from_monomials(ring: &Ring, gens: Vec<Monomial>) -> Result<Self> {
        let mut raw = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            raw.push(g.exponents().to_vec());
        }
        Ok(Self::from_exps(ring, raw))
    }

    pub(crate) fn from_exps(ring: &Ring, gens: Vec<Vec<u32>>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == ring.total_vars()));
        MonomialIdeal {
            ring: ring.clone(),
            gens: minimalize_exps(gens),
            provenance: Provenance::Generic,
        }
    }

    /// Adopts exponent vectors that are already minimal and canonically
    /// sorted; debug-checked.
    pub(crate) fn from_minimal_exps(ring: &Ring, gens: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(minimalize_exps(gens.clone()), gens);
        MonomialIdeal {
            ring: ring.clone(),
            gens,
            provenance: Provenance::Generic,
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
            provenance: Provenance::Generic,
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![vec![0; ring.total_vars()]],
            provenance: Provenance::Generic,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    /// Proper and nonzero.
    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| Monomial::new(&self.ring, g.clone()))
            .collect()
    }

    pub(crate) fn gen_exps(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_exps(&self.ring, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(mul_exps(a, b));
            }
        }
        let provenance = match (self.provenance, other.provenance) {
            (Provenance::Transversal, Provenance::Transversal) => Provenance::Transversal,
            _ => Provenance::Generic,
        };
        Ok(Self::from_exps(&self.ring, gens).with_provenance(provenance))
    }

    /// I^k.  By convention k = 0 yields the unit ideal.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        if k == 0 {
            return Self::unit(&self.ring);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let candidates = self.gens.len() as u64 * other.gens.len() as u64;
        if candidates > INTERSECT_CANDIDATE_CAP {
            return Err(Error::ResourceLimit {
                what: "intersection candidate list".into(),
                required: candidates,
                limit: INTERSECT_CANDIDATE_CAP,
            });
        }
        let mut gens = Vec::with_capacity(candidates as usize);
        for a in &self.gens {
            for b in &other.gens {
                gens.push(lcm_exps(a, b));
            }
        }
        Ok(Self::from_exps(&self.ring, gens))
    }

    /// I : f for a monomial f.
    pub fn colon_monomial(&self, f: &Monomial) -> Result<MonomialIdeal> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let fe = f.exponents();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .zip(fe)
                    .map(|(&a, &b)| a.saturating_sub(b))
                    .collect()
            })
            .collect();
        Ok(Self::from_exps(&self.ring, gens))
    }

    /// I : J = the intersection of I : f over the generators f of J.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if other.is_zero() {
            return Err(Error::InvalidArgument(
                "colon by the zero ideal is undefined".into(),
            ));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in other.generators() {
            let piece = self.colon_monomial(&g)?;
            acc = Some(match acc {
                None => piece,
                Some(j) => j.intersect(&piece)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// I^[k], generated by the k-th powers of the minimal generators.
    /// I^[0] is the unit ideal and I^[1] = I.
    pub fn bracket_power(&self, k: u32) -> MonomialIdeal {
        if k == 0 {
            return Self::unit(&self.ring);
        }
        // g^k | h^k iff g | h, so minimality and canonical order carry over.
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                    .collect()
            })
            .collect();
        Self::from_minimal_exps(&self.ring, gens)
    }

    /// Monomial localization at a monomial prime: variables outside the
    /// prime's support map to 1 and the result lives in the sub-ring on
    /// that support.
    pub fn localize(&self, prime: &MonomialPrime) -> Result<MonomialIdeal> {
        if prime.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if prime.support().is_empty() {
            return Err(Error::InvalidArgument(
                "localization needs a nonempty support".into(),
            ));
        }
        let (subring, vars) = self.ring.subring(prime.support());
        let gens = self
            .gens
            .iter()
            .map(|g| vars.iter().map(|&v| g[v]).collect())
            .collect();
        let provenance = match self.provenance {
            Provenance::Transversal => Provenance::Transversal,
            _ => Provenance::Generic,
        };
        Ok(Self::from_exps(&subring, gens).with_provenance(provenance))
    }

    /// Membership: some minimal generator divides f.
    pub fn contains(&self, f: &Monomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.contains_exps(f.exponents()))
    }

    pub(crate) fn contains_exps(&self, f: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, f))
    }

    /// J ⊆ I, i.e. every generator of J lies in I.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(other.gens.iter().all(|g| self.contains_exps(g)))
    }

    /// Variables occurring in some minimal generator.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.total_vars();
        let mut seen = vec![false; n];
        for g in &self.gens {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    /// Componentwise maximum of the minimal generators; None for the zero
    /// ideal.
    pub fn lcm_of_generators(&self) -> Option<Monomial> {
        if self.is_zero() {
            return None;
        }
        let mut acc = vec![0u32; self.ring.total_vars()];
        for g in &self.gens {
            for (a, &e) in acc.iter_mut().zip(g) {
                *a = (*a).max(e);
            }
        }
        Some(Monomial::new(&self.ring, acc))
    }

    /// Some(d) iff every minimal generator has total degree d.
    pub fn generated_in_single_degree(&self) -> Option<u64> {
        let first = self.gens.first()?;
        let d = degree(first);
        self.gens[1..]
            .iter()
            .all(|g| degree(g) == d)
            .then_some(d)
    }

    /// If every generator is a single variable, the corresponding prime.
    pub fn as_prime(&self) -> Option<MonomialPrime> {
        if self.gens.is_empty() {
            return None;
        }
        let mut support = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut var = None;
            for (i, &e) in g.iter().enumerate() {
                match (e, var) {
                    (0, _) => {}
                    (1, None) => var = Some(i),
                    _ => return None,
                }
            }
            support.push(var?);
        }
        Some(MonomialPrime::new(&self.ring, support).expect("nonempty support"))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: self.ring.to_json(),
            generators: self.gens.clone(),
        }
    }

    pub fn from_json(json: &IdealJson) -> Result<MonomialIdeal> {
        let ring = Ring::from_json(&json.ring);
        for g in &json.generators {
            if g.len() != ring.total_vars() {
                return Err(Error::InvalidArgument(format!(
                    "generator has {} exponents, ring has {} variables",
                    g.len(),
                    ring.total_vars()
                )));
            }
        }
        Ok(Self::from_exps(&ring, json.generators.clone()))
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl std::hash::Hash for MonomialIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Interchange format: `{ "ring": { "blocks": [...] }, "generators": [[...]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingJson,
    pub generators: Vec<Vec<u32>>,
}

/// A monomial prime ideal P_F, generated by the variables whose index lies
/// in F.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    ring: Ring,
    support: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(ring: &Ring, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return Err(Error::InvalidArgument(
                "a monomial prime needs a nonempty support".into(),
            ));
        }
        if support.iter().any(|&v| v >= ring.total_vars()) {
            return Err(Error::InvalidArgument(
                "prime support out of range for the ring".into(),
            ));
        }
        Ok(MonomialPrime {
            ring: ring.clone(),
            support,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.support.binary_search(&var).is_ok()
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.ring.total_vars();
        let gens = self
            .support
            .iter()
            .map(|&v| {
                let mut e = vec![0u32; n];
                e[v] = 1;
                e
            })
            .collect();
        MonomialIdeal::from_exps(&self.ring, gens)
    }

    /// P^t as an ideal: all monomials of degree t in the support variables.
    pub fn power_ideal(&self, t: u32) -> MonomialIdeal {
        if t == 0 {
            return MonomialIdeal::unit(&self.ring);
        }
        let n = self.ring.total_vars();
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill_degree(&self.support, 0, t, &mut current, &mut out);
        MonomialIdeal::from_minimal_exps(&self.ring, {
            let mut v = out;
            v.sort_by(|a, b| lex_cmp(b, a));
            v
        })
    }

    pub fn var_names(&self) -> Vec<String> {
        self.support
            .iter()
            .map(|&v| self.ring.var_name(v))
            .collect()
    }

    /// Order primes by (cardinality, lex support) for reproducible output.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.support.len(), self.support.clone())
    }
}

fn fill_degree(vars: &[usize], at: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if at + 1 == vars.len() {
        current[vars[at]] = remaining;
        out.push(current.clone());
        current[vars[at]] = 0;
        return;
    }
    for e in 0..=remaining {
        current[vars[at]] = e;
        fill_degree(vars, at + 1, remaining - e, current, out);
    }
    current[vars[at]] = 0;
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.var_names().join(","))
    }
}

impl fmt::Debug for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
