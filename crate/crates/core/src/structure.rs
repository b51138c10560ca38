//! Brace-coordinate arithmetic for the structure group of a cycle set, the
//! permutation group it generates, and the finite Coxeter-like quotients.
//!
//! Every structure-group element is written additively as an integer
//! coordinate vector over the base set, with its λ-permutation carried
//! alongside. The λ of a nonnegative vector is computed by folding one
//! generator at a time: absorbing `x` into an accumulated sum `s` updates
//! `λ ← λ_s ∘ λ_{λ_s^{-1}(x)}`, and the result does not depend on the
//! absorption order.

use crate::cycleset::CycleSet;
use crate::perm::Perm;
use crate::{Error, Limits};
use num::Integer;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::HashSet;

/// λ of the element `Σ coords[x]·x`, for nonnegative coordinates.
pub fn lambda_of(x: &CycleSet, coords: &[i64]) -> Result<Perm, Error> {
    if let Some(i) = coords.iter().position(|&c| c < 0) {
        return Err(Error::NegativeCoordinate(i));
    }
    let mut order = Vec::with_capacity(coords.iter().map(|&c| c as usize).sum());
    for (gen, &c) in coords.iter().enumerate() {
        order.extend(std::iter::repeat(gen).take(c as usize));
    }
    Ok(lambda_of_sequence(x, &order))
}

/// λ of the sum of the listed generators, absorbed left to right. Exposed so
/// order-independence can be exercised directly.
pub fn lambda_of_sequence(x: &CycleSet, gens: &[usize]) -> Perm {
    let mut lam = Perm::identity(x.n());
    for &gen in gens {
        let j = lam.preimage(gen);
        lam = lam.compose(&x.lambda(j));
    }
    lam
}

/// λ of an arbitrary (possibly negative) coordinate vector, computed on the
/// shift by the least multiple of d·(1,..,1) that makes all entries
/// nonnegative. Valid because d·x lies in the socle and socle shifts leave λ
/// unchanged.
fn lambda_of_any(x: &CycleSet, coords: &[i64]) -> Perm {
    let min = coords.iter().copied().min().unwrap_or(0);
    if min >= 0 {
        return lambda_of(x, coords).expect("nonnegative");
    }
    let d = dehornoy_class(x) as i64;
    let k = (-min + d - 1) / d;
    let shifted: Vec<i64> = coords.iter().map(|&c| c + k * d).collect();
    lambda_of(x, &shifted).expect("shifted nonnegative")
}

fn permute_vec<T: Copy + Default>(lam: &Perm, c: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); c.len()];
    for (i, &v) in c.iter().enumerate() {
        out[lam.apply(i)] = v;
    }
    out
}

/// A structure-group element in additive normal form: the coordinate vector
/// determines the element; λ is cached, never recomputed by `mul`/`inv`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElem {
    coords: Vec<i64>,
    lam: Perm,
}

impl GroupElem {
    pub fn identity(n: usize) -> Self {
        GroupElem {
            coords: vec![0; n],
            lam: Perm::identity(n),
        }
    }

    /// The generator `x` as a group element.
    pub fn generator(x: &CycleSet, i: usize) -> Self {
        let mut coords = vec![0; x.n()];
        coords[i] = 1;
        GroupElem {
            coords,
            lam: x.lambda(i),
        }
    }

    pub fn from_coords(x: &CycleSet, coords: Vec<i64>) -> Self {
        let lam = lambda_of_any(x, &coords);
        GroupElem { coords, lam }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn lam(&self) -> &Perm {
        &self.lam
    }

    /// Socle membership: λ trivial.
    pub fn in_socle(&self) -> bool {
        self.lam.is_identity()
    }

    /// Group multiplication: `coords(gh) = coords(g) + λ_g · coords(h)` and
    /// `λ_{gh} = λ_g ∘ λ_h`.
    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let twisted = permute_vec(&self.lam, &other.coords);
        let coords = self
            .coords
            .iter()
            .zip(&twisted)
            .map(|(a, b)| a + b)
            .collect();
        GroupElem {
            coords,
            lam: self.lam.compose(&other.lam),
        }
    }

    pub fn inv(&self) -> GroupElem {
        let lam_inv = self.lam.inverse();
        let coords = permute_vec(&lam_inv, &self.coords)
            .into_iter()
            .map(|c| -c)
            .collect();
        GroupElem {
            coords,
            lam: lam_inv,
        }
    }

    /// Brace addition: componentwise on coordinates, λ recomputed.
    pub fn add(&self, other: &GroupElem, x: &CycleSet) -> GroupElem {
        let coords: Vec<i64> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        GroupElem::from_coords(x, coords)
    }

    /// Image in the Coxeter-like quotient with modulus `m`.
    pub fn project(&self, m: u64) -> CoxElem {
        CoxElem {
            m,
            coords: self
                .coords
                .iter()
                .map(|&c| c.rem_euclid(m as i64) as u64)
                .collect(),
        }
    }
}

impl Serialize for GroupElem {
    // λ is derived data and is never serialized; rebuild with `from_coords`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupElem", 1)?;
        st.serialize_field("coords", &self.coords)?;
        st.end()
    }
}

/// The permutation group generated by the left translations, closed under
/// composition by breadth-first search.
#[derive(Clone, Debug)]
pub struct PermGroup {
    elements: Vec<Perm>,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.iter().any(|e| e == p)
    }

    pub fn is_transitive(&self, n: usize) -> bool {
        Perm::orbits(n, &self.generators).len() == 1
    }
}

/// Full closure of `⟨σ_x⟩`, capped at `limits.group_cap` elements.
pub fn permutation_group(x: &CycleSet, limits: &Limits) -> Result<PermGroup, Error> {
    let generators: Vec<Perm> = (0..x.n()).map(|i| x.sigma(i)).collect();
    let identity = Perm::identity(x.n());
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head].clone();
        head += 1;
        for g in &generators {
            let f = e.compose(g);
            if seen.insert(f.clone()) {
                if elements.len() as u64 >= limits.group_cap {
                    return Err(Error::GroupTooLarge {
                        cap: limits.group_cap,
                    });
                }
                elements.push(f);
            }
        }
    }
    Ok(PermGroup {
        elements,
        generators,
    })
}

/// The Dehornoy class: the least `d` with `d·x` in the socle for every
/// generator `x`; computed as the lcm of the additive orders of the λ_x,
/// advancing one fold step per increment.
pub fn dehornoy_class(x: &CycleSet) -> u64 {
    let mut d: u64 = 1;
    for gen in 0..x.n() {
        let mut lam = Perm::identity(x.n());
        let mut k: u64 = 0;
        loop {
            let j = lam.preimage(gen);
            lam = lam.compose(&x.lambda(j));
            k += 1;
            if lam.is_identity() {
                break;
            }
            assert!(k <= 1_000_000, "additive order runaway for generator {gen}");
        }
        d = d.lcm(&k);
    }
    d
}

/// An element of the Coxeter-like quotient: residue coordinates mod `m`,
/// where `m = l·d` for some `l ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoxElem {
    m: u64,
    coords: Vec<u64>,
}

impl CoxElem {
    /// Wraps residues already in `[0, m)`.
    pub fn new(m: u64, coords: Vec<u64>) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::MalformedTable("modulus must be positive".into()));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= m) {
            return Err(Error::MalformedTable(format!(
                "residue {} out of range for modulus {}",
                bad, m
            )));
        }
        Ok(CoxElem { m, coords })
    }

    /// Reduces arbitrary integers mod `m`.
    pub fn from_ints(m: u64, ints: &[i64]) -> Self {
        CoxElem {
            m,
            coords: ints.iter().map(|&c| c.rem_euclid(m as i64) as u64).collect(),
        }
    }

    pub fn identity(m: u64, n: usize) -> Self {
        CoxElem {
            m,
            coords: vec![0; n],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> u64 {
        self.coords[i]
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// λ of the canonical representative with coordinates in `[0, m)`.
    pub fn lambda(&self, x: &CycleSet) -> Perm {
        let ints: Vec<i64> = self.coords.iter().map(|&c| c as i64).collect();
        lambda_of(x, &ints).expect("canonical representative is nonnegative")
    }
}

/// Multiplication in the Coxeter-like group with modulus `l·d`.
pub fn cox_mul(x: &CycleSet, l: u64, a: &CoxElem, b: &CoxElem) -> Result<CoxElem, Error> {
    let m = l * dehornoy_class(x);
    if a.m != m {
        return Err(Error::ModulusMismatch(a.m, m));
    }
    if a.m != b.m {
        return Err(Error::ModulusMismatch(a.m, b.m));
    }
    let lam = a.lambda(x);
    Ok(cox_mul_unchecked(a, &lam, b))
}

/// Multiplication with the left factor's λ already in hand. No modulus or
/// class validation; callers on hot paths use this.
pub(crate) fn cox_mul_unchecked(a: &CoxElem, lam_a: &Perm, b: &CoxElem) -> CoxElem {
    let twisted = permute_vec(lam_a, &b.coords);
    let coords = a
        .coords
        .iter()
        .zip(&twisted)
        .map(|(p, q)| (p + q) % a.m)
        .collect();
    CoxElem { m: a.m, coords }
}

/// Inverse in the Coxeter-like group.
pub fn cox_inv(x: &CycleSet, a: &CoxElem) -> CoxElem {
    let lam_inv = a.lambda(x).inverse();
    cox_inv_unchecked(a, &lam_inv)
}

pub(crate) fn cox_inv_unchecked(a: &CoxElem, lam_inv: &Perm) -> CoxElem {
    let coords = permute_vec(lam_inv, &a.coords)
        .into_iter()
        .map(|c| (a.m - c) % a.m)
        .collect();
    CoxElem { m: a.m, coords }
}

/// `m^n` with a cap check.
pub fn cox_order(m: u64, n: usize, cap: u64) -> Result<u64, Error> {
    u32::try_from(n)
        .ok()
        .and_then(|e| m.checked_pow(e))
        .filter(|&o| o <= cap)
        .ok_or(Error::GroupTooLarge { cap })
}

/// Coordinates of the element with the given rank, coordinates enumerated
/// lexicographically (index 0 most significant).
pub fn rank_to_coords(m: u64, n: usize, rank: u64) -> Vec<u64> {
    let mut coords = vec![0; n];
    let mut r = rank;
    for slot in coords.iter_mut().rev() {
        *slot = r % m;
        r /= m;
    }
    coords
}

/// Streams all `(l·d)^n` elements of the Coxeter-like group exactly once.
/// The enumeration is rank-indexable via [`rank_to_coords`], so consumers may
/// partition the rank range freely.
pub fn cox_enumerate(
    x: &CycleSet,
    l: u64,
    limits: &Limits,
) -> Result<impl Iterator<Item = CoxElem>, Error> {
    let m = l * dehornoy_class(x);
    let n = x.n();
    let order = cox_order(m, n, limits.group_cap)?;
    Ok((0..order).map(move |r| CoxElem {
        m,
        coords: rank_to_coords(m, n, r),
    }))
}
