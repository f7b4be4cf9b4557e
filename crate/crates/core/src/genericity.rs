//! Multisets of odd-root sums, typicality, and the (relative) genericness predicates.

use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::SpanBasis;
use crate::root_datum::{BorelData, Parity};
use crate::weight::{q, WeightVector};
use crate::weyl::{WeylElement, WeylGroup};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Sums Σ_{α∈I} α over all subsets I of a root list, one entry per subset.
#[derive(Clone, Debug)]
pub struct GammaMultiset {
    roots: Vec<WeightVector>,
    elements: Vec<(WeightVector, u64)>,
}

impl GammaMultiset {
    pub fn from_roots(roots: &[WeightVector], zero: &WeightVector) -> Result<GammaMultiset> {
        if roots.len() > 62 {
            return Err(Error::LimitExceeded {
                what: "odd-root subsets".into(),
                needed: u128::MAX,
                limit: limits::enumeration_limit() as u128,
            });
        }
        limits::check("odd-root subsets", 1u128 << roots.len())?;
        let mut elements = vec![(zero.clone(), 0u64)];
        for (i, r) in roots.iter().enumerate() {
            let n = elements.len();
            for k in 0..n {
                let (w, mask) = &elements[k];
                let next = (w + r, mask | (1u64 << i));
                elements.push(next);
            }
        }
        elements.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(GammaMultiset {
            roots: roots.to_vec(),
            elements,
        })
    }

    pub fn roots(&self) -> &[WeightVector] {
        &self.roots
    }

    /// (sum, subset bitmask over `roots`) pairs.
    pub fn elements(&self) -> &[(WeightVector, u64)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<WeightVector, i64> {
        let mut m = BTreeMap::new();
        for (w, _) in &self.elements {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn distinct(&self) -> Vec<WeightVector> {
        self.multiplicities().into_keys().collect()
    }

    pub fn multiplicity(&self, w: &WeightVector) -> usize {
        self.elements.iter().filter(|(x, _)| x == w).count()
    }
}

/// Γ⁺ (subsets of Δ₁⁺) and Γ̃ (subsets of Δ₁).
pub fn gamma_sets(borel: &BorelData) -> Result<(GammaMultiset, GammaMultiset)> {
    let zero = borel.datum().zero();
    let plus = GammaMultiset::from_roots(borel.odd_positive(), &zero)?;
    let tilde = GammaMultiset::from_roots(&borel.datum().odd_roots(), &zero)?;
    Ok((plus, tilde))
}

/// Distinct subset sums without enumerating subsets.
pub fn distinct_sums(roots: &[WeightVector], zero: &WeightVector) -> Result<Vec<WeightVector>> {
    let mut acc: BTreeSet<WeightVector> = BTreeSet::new();
    acc.insert(zero.clone());
    for r in roots {
        let shifted: Vec<WeightVector> = acc.iter().map(|w| w + r).collect();
        acc.extend(shifted);
        limits::check("distinct odd-root sums", acc.len() as u128)?;
    }
    Ok(acc.into_iter().collect())
}

pub fn gamma_plus_distinct(borel: &BorelData) -> Result<Vec<WeightVector>> {
    distinct_sums(borel.odd_positive(), &borel.datum().zero())
}

pub fn gamma_tilde_distinct(borel: &BorelData) -> Result<Vec<WeightVector>> {
    distinct_sums(&borel.datum().odd_roots(), &borel.datum().zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Typicality {
    Typical,
    Atypical {
        degree: usize,
        /// Isotropic positive roots orthogonal to λ+ρ.
        witnesses: Vec<WeightVector>,
        /// A largest mutually orthogonal subset of the witnesses.
        orthogonal: Vec<WeightVector>,
    },
}

impl Typicality {
    pub fn is_typical(&self) -> bool {
        matches!(self, Typicality::Typical)
    }

    pub fn degree(&self) -> usize {
        match self {
            Typicality::Typical => 0,
            Typicality::Atypical { degree, .. } => *degree,
        }
    }
}

pub fn typicality(lambda: &WeightVector, borel: &BorelData) -> Typicality {
    let dt = borel.datum();
    let shifted = lambda + borel.rho();
    let witnesses: Vec<WeightVector> = borel
        .isotropic_positive()
        .into_iter()
        .filter(|g| dt.pairing(&shifted, g).is_zero())
        .collect();
    if witnesses.is_empty() {
        return Typicality::Typical;
    }
    let n = witnesses.len();
    let orth: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && dt.pairing(&witnesses[i], &witnesses[j]).is_zero())
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect();
    let mut best = 0u64;
    fn grow(cand: u64, cur: u64, orth: &[u64], best: &mut u64) {
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        if cand == 0 {
            *best = cur;
            return;
        }
        let i = cand.trailing_zeros() as usize;
        grow(cand & orth[i], cur | (1 << i), orth, best);
        grow(cand & !(1 << i), cur, orth, best);
    }
    grow(
        if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        0,
        &orth,
        &mut best,
    );
    let orthogonal: Vec<WeightVector> = (0..n)
        .filter(|&i| best & (1 << i) != 0)
        .map(|i| witnesses[i].clone())
        .collect();
    Typicality::Atypical {
        degree: orthogonal.len(),
        witnesses,
        orthogonal,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericMode {
    /// All of λ − Γ⁺ in one open chamber.
    GammaPlus,
    /// All of λ − Γ̃ in one open chamber.
    GammaTilde,
    /// Every member of λ − Γ⁺ is Γ̃-generic.
    Full,
}

/// Whether λ − S lies in one open chamber of the ρ₀-shifted action.
pub fn same_open_chamber(group: &WeylGroup, lambda: &WeightVector, sums: &[WeightVector]) -> bool {
    let rho0 = group.datum().rho0();
    let mut sig: Option<Vec<bool>> = None;
    for g in sums {
        let nu = &(lambda - g) + rho0;
        match group.chamber_signature(&nu) {
            None => return false,
            Some(s) => match &sig {
                None => sig = Some(s),
                Some(prev) if *prev != s => return false,
                _ => {}
            },
        }
    }
    true
}

/// Precomputed Γ⁺ and Γ̃ sums for repeated genericness queries.
#[derive(Clone, Debug)]
pub struct GenericityContext<'a> {
    pub group: &'a WeylGroup,
    pub borel: &'a BorelData,
    plus: Arc<Vec<WeightVector>>,
    tilde: Arc<Vec<WeightVector>>,
}

impl<'a> GenericityContext<'a> {
    pub fn new(group: &'a WeylGroup, borel: &'a BorelData) -> Result<Self> {
        Ok(GenericityContext {
            group,
            borel,
            plus: Arc::new(gamma_plus_distinct(borel)?),
            tilde: Arc::new(gamma_tilde_distinct(borel)?),
        })
    }

    /// Reuses previously computed distinct Γ⁺ and Γ̃ sums.
    pub fn with_sums(
        group: &'a WeylGroup,
        borel: &'a BorelData,
        plus: Arc<Vec<WeightVector>>,
        tilde: Arc<Vec<WeightVector>>,
    ) -> Self {
        GenericityContext {
            group,
            borel,
            plus,
            tilde,
        }
    }

    pub fn shared_sums(&self) -> (Arc<Vec<WeightVector>>, Arc<Vec<WeightVector>>) {
        (Arc::clone(&self.plus), Arc::clone(&self.tilde))
    }

    pub fn gamma_plus(&self) -> &[WeightVector] {
        &self.plus
    }

    pub fn gamma_tilde(&self) -> &[WeightVector] {
        &self.tilde
    }

    pub fn is_generic(&self, lambda: &WeightVector, mode: GenericMode) -> bool {
        match mode {
            GenericMode::GammaPlus => same_open_chamber(self.group, lambda, &self.plus),
            GenericMode::GammaTilde => same_open_chamber(self.group, lambda, &self.tilde),
            GenericMode::Full => self
                .plus
                .iter()
                .all(|g| same_open_chamber(self.group, &(lambda - g), &self.tilde)),
        }
    }
}

pub fn genericness(
    group: &WeylGroup,
    borel: &BorelData,
    lambda: &WeightVector,
    mode: GenericMode,
) -> Result<bool> {
    Ok(GenericityContext::new(group, borel)?.is_generic(lambda, mode))
}

/// Maximal parabolic of typical type: Levi generated by the anisotropic simple roots.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicData {
    pub anisotropic_simples: Vec<WeightVector>,
    /// Positive roots of the Levi.
    pub levi_roots: Vec<(WeightVector, Parity)>,
    /// Simple roots of the even part of the Levi.
    pub levi_even_simple: Vec<WeightVector>,
    /// Roots of the nilradical.
    pub nilradical: Vec<(WeightVector, Parity)>,
    pub dim_u0: usize,
}

impl ParabolicData {
    /// Integral dominance for the Levi (odd anisotropic α tested through 2α).
    pub fn is_levi_dominant(&self, borel: &BorelData, mu: &WeightVector) -> bool {
        self.levi_violation(borel, mu).is_none()
    }

    pub fn levi_violation(&self, borel: &BorelData, mu: &WeightVector) -> Option<WeightVector> {
        let dt = borel.datum();
        for a in &self.anisotropic_simples {
            let even = if dt.odd_roots().contains(a) {
                a.scale(q(2))
            } else {
                a.clone()
            };
            let c = dt.coroot_pairing(mu, &even);
            if !c.is_integer() || c.is_negative() {
                return Some(a.clone());
            }
        }
        None
    }

    /// Minimal coset representatives W¹ for the even Levi.
    pub fn coset_reps(&self, group: &WeylGroup) -> Vec<WeylElement> {
        group.coset_reps_for_roots(&self.levi_even_simple)
    }

    pub fn levi_is_even(&self) -> bool {
        self.levi_roots.iter().all(|(_, p)| *p == Parity::Even)
    }
}

pub fn max_typical_parabolic(borel: &BorelData) -> ParabolicData {
    let anisotropic_simples: Vec<WeightVector> = borel
        .simple_roots()
        .iter()
        .filter(|s| !s.isotropic)
        .map(|s| s.root.clone())
        .collect();
    build_parabolic(borel, anisotropic_simples)
}

/// Parabolic of typical type whose Levi is generated by the given anisotropic simple roots of `borel`.
pub fn parabolic_from_simples(
    borel: &BorelData,
    simples: &[WeightVector],
) -> Result<ParabolicData> {
    let mut chosen = Vec::new();
    for r in simples {
        match borel.simple_roots().iter().find(|s| s.root == *r) {
            None => {
                return Err(Error::precondition(format!(
                    "{r} is not a simple root of the Borel"
                )))
            }
            Some(s) if s.isotropic => {
                return Err(Error::precondition(format!(
                    "{r} is isotropic; the Levi must be of typical type"
                )))
            }
            Some(_) if chosen.contains(r) => {}
            Some(_) => chosen.push(r.clone()),
        }
    }
    Ok(build_parabolic(borel, chosen))
}

fn build_parabolic(borel: &BorelData, anisotropic_simples: Vec<WeightVector>) -> ParabolicData {
    if anisotropic_simples.is_empty() {
        let nilradical = borel.positive_roots();
        let dim_u0 = borel.even_positive().len();
        return ParabolicData {
            anisotropic_simples,
            levi_roots: Vec::new(),
            levi_even_simple: Vec::new(),
            nilradical,
            dim_u0,
        };
    }
    let basis = SpanBasis::new(anisotropic_simples.clone()).expect("simple roots are independent");
    let in_levi = |r: &WeightVector| {
        basis
            .coefficients(r)
            .map(|c| c.iter().all(|x| x.is_integer() && !x.is_negative()))
            .unwrap_or(false)
    };
    let mut levi_roots = Vec::new();
    let mut nilradical = Vec::new();
    for (r, p) in borel.positive_roots() {
        if in_levi(&r) {
            levi_roots.push((r, p));
        } else {
            nilradical.push((r, p));
        }
    }
    let even: Vec<WeightVector> = levi_roots
        .iter()
        .filter(|(_, p)| *p == Parity::Even)
        .map(|(r, _)| r.clone())
        .collect();
    let levi_even_simple: Vec<WeightVector> = even
        .iter()
        .filter(|r| !even.iter().any(|a| *a != **r && even.contains(&(*r - a))))
        .cloned()
        .collect();
    let dim_u0 = nilradical
        .iter()
        .filter(|(_, p)| *p == Parity::Even)
        .count();
    ParabolicData {
        anisotropic_simples,
        levi_roots,
        levi_even_simple,
        nilradical,
        dim_u0,
    }
}

/// Every l^b-dominant member of λ − S lies in a common closed chamber with λ.
pub fn relative_genericness(
    group: &WeylGroup,
    borel: &BorelData,
    parabolic: &ParabolicData,
    lambda: &WeightVector,
    sums: &[WeightVector],
) -> Result<bool> {
    if let Some(a) = parabolic.levi_violation(borel, lambda) {
        return Err(Error::precondition(format!(
            "{lambda} is not dominant for the maximal typical Levi (fails at {a})"
        )));
    }
    let rho0 = group.datum().rho0();
    let mut points = vec![lambda + rho0];
    for g in sums {
        let mu = lambda - g;
        if parabolic.is_levi_dominant(borel, &mu) {
            points.push(&mu + rho0);
        }
    }
    for w in group.elements() {
        let sig = group
            .chamber_signature(&w.apply(rho0))
            .expect("ρ₀ is regular");
        if points.iter().all(|p| group.in_closed_chamber(p, &sig)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Flags reported by the `generic-check` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub typical: bool,
    pub atypicality_degree: usize,
    pub gamma_plus_generic: bool,
    pub gamma_tilde_generic: bool,
    pub generic: bool,
    /// `None` when the weight is not dominant for the maximal typical Levi.
    pub relatively_generic: Option<bool>,
}

pub fn report(
    group: &WeylGroup,
    borel: &BorelData,
    lambda: &WeightVector,
) -> Result<GenericityReport> {
    let ctx = GenericityContext::new(group, borel)?;
    let t = typicality(lambda, borel);
    let parabolic = max_typical_parabolic(borel);
    let relatively_generic = if parabolic.is_levi_dominant(borel, lambda) {
        Some(relative_genericness(
            group,
            borel,
            &parabolic,
            lambda,
            ctx.gamma_plus(),
        )?)
    } else {
        None
    };
    Ok(GenericityReport {
        typical: t.is_typical(),
        atypicality_degree: t.degree(),
        gamma_plus_generic: ctx.is_generic(lambda, GenericMode::GammaPlus),
        gamma_tilde_generic: ctx.is_generic(lambda, GenericMode::GammaTilde),
        generic: ctx.is_generic(lambda, GenericMode::Full),
        relatively_generic,
    })
}
