//! Virtual BGG coefficients: E(Λ') expanded into simple characters, projective
//! characters assembled from them, and a check of BGG reciprocity against
//! Kac-module composition multiplicities.

use crate::bbw::BbwSolver;
use crate::characters::{euler_characteristic, FormalCharacter, VirtualG0Sum};
use crate::error::{Error, Result};
use crate::genericity::{distinct_sums, relative_genericness, typicality};
use crate::limits;
use crate::osp_blocks::{block_members, BlockContext};
use crate::root_datum::BorelData;
use crate::weight::{q, WeightVector, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Failed,
    NotApplicable,
}

/// One Λ' contributing to ch P_Λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityRow {
    pub weight: WeightVector,
    pub tilde_dominant: bool,
    /// a_{Λ,Λ'}: multiplicity of L_Λ in E(Λ').
    pub coefficient: i64,
    /// [K_{Λ'} : L_Λ], when ch K_{Λ'} is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kac_multiplicity: Option<i64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityReport {
    pub algebra: String,
    pub borel: String,
    pub weight: WeightVector,
    pub tilde_dominant: bool,
    /// `None` when Λ is not dominant for the maximal typical Levi.
    pub relatively_generic: Option<bool>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
    pub rows: Vec<ReciprocityRow>,
    /// Σ a_{Λ,Λ'} E(Λ') over Λ' ∈ P̃⁺.
    pub projective_character: VirtualG0Sum,
    /// Σ [K_{Λ'} : L_Λ] ch K_{Λ'}, when every Kac character involved is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kac_flag_character: Option<VirtualG0Sum>,
}

/// ch P_Λ with the coefficients that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveExpansion {
    pub weight: WeightVector,
    pub coefficients: Vec<(WeightVector, i64)>,
    pub character: VirtualG0Sum,
}

/// The two sides of ch C_λ = Σ_Λ [Res L_Λ : L⁰_λ] ch P_Λ, with C_λ induced from L⁰_λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedCheck {
    pub weight: WeightVector,
    pub direct: VirtualG0Sum,
    pub multiplicities: Vec<(WeightVector, i64)>,
    pub via_projectives: VirtualG0Sum,
}

impl InducedCheck {
    pub fn holds(&self) -> bool {
        self.direct == self.via_projectives
    }
}

/// Simple characters and BGG data over one Borel.
pub struct ReciprocityContext {
    solver: BbwSolver,
    blocks: Option<BlockContext>,
    cache: Mutex<BTreeMap<WeightVector, VirtualG0Sum>>,
}

impl ReciprocityContext {
    pub fn new(borel: BorelData) -> Result<ReciprocityContext> {
        Self::from_solver(BbwSolver::new(borel)?)
    }

    pub fn from_solver(solver: BbwSolver) -> Result<ReciprocityContext> {
        let blocks = match BlockContext::new(
            Arc::clone(solver.group()),
            solver.borel().clone(),
            Arc::clone(solver.even_characters()),
        ) {
            Ok(b) => Some(b),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(ReciprocityContext {
            solver,
            blocks,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn solver(&self) -> &BbwSolver {
        &self.solver
    }

    fn borel(&self) -> &BorelData {
        self.solver.borel()
    }

    fn require_dominant(&self, lambda: &WeightVector) -> Result<()> {
        if !self.borel().is_dominant(lambda) {
            return Err(Error::precondition(format!(
                "{lambda} is not integral dominant"
            )));
        }
        Ok(())
    }

    /// Λ ∈ P̃⁺: s_α·Λ < Λ for every α ∈ Δ₀⁺.
    pub fn tilde_dominant(&self, lambda: &WeightVector) -> Result<bool> {
        self.require_dominant(lambda)?;
        Ok(tilde_dominant(&self.solver, lambda))
    }

    /// g₀-content of L_Λ.
    pub fn simple_character(&self, lambda: &WeightVector) -> Result<VirtualG0Sum> {
        self.require_dominant(lambda)?;
        if let Some(c) = self.cache.lock().expect("cache").get(lambda) {
            return Ok(c.clone());
        }
        let ch = if typicality(lambda, self.borel()).is_typical() {
            self.solver.euler(lambda)?
        } else if let Some(blocks) = &self.blocks {
            blocks.simple_character(lambda)?
        } else if self.borel().datum().is_type_one() && self.borel().is_distinguished() {
            self.type_one_simple(lambda)?
        } else {
            return Err(Error::NotApplicable(format!(
                "simple characters of atypical weights are not available for {} with Borel {}",
                self.borel().datum().family(),
                self.borel().word()
            )));
        };
        self.cache
            .lock()
            .expect("cache")
            .insert(lambda.clone(), ch.clone());
        Ok(ch)
    }

    /// Defect-one type I blocks: ch L_Λ = Σ_j (−1)^j ch K_{Λ_j} over the chain
    /// Λ = Λ_0 > Λ_1 > ⋯ of the block, cut off below the weights of K_Λ.
    fn type_one_simple(&self, lambda: &WeightVector) -> Result<VirtualG0Sum> {
        let borel = self.borel();
        let group = self.solver.group();
        let degree = typicality(lambda, borel).degree();
        if degree != 1 {
            return Err(Error::NotApplicable(format!(
                "{lambda} has atypicality degree {degree}, expected 1"
            )));
        }
        let two_rho1 = borel.rho1().scale(q(2));
        let floor = group
            .elements()
            .iter()
            .map(|w| borel.height(&w.apply(lambda)))
            .min()
            .unwrap_or_else(Q::zero)
            - borel.height(&two_rho1);
        let depth = borel.height(lambda) - floor;
        let widest = borel
            .simple_roots()
            .iter()
            .flat_map(|s| s.root.coords().iter().map(|c| c.abs()))
            .max()
            .unwrap_or_else(Q::zero);
        let top = lambda
            .coords()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero);
        let radius = (top + depth * widest).ceil().to_integer() + 1;
        let chain = lower_chain(group, borel, lambda, radius, floor)?;
        let mut out = VirtualG0Sum::new();
        for (j, member) in std::iter::once(lambda).chain(chain.iter()).enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.add_assign(&euler_characteristic(group, borel, member)?, sign);
        }
        let mut kept = VirtualG0Sum::new();
        for (w, m) in out.terms() {
            if borel.height(w) >= floor {
                kept.add_term(w.clone(), *m);
            }
        }
        if kept.coefficient(lambda) != 1 || kept.terms().values().any(|m| *m < 0) {
            return Err(Error::Consistency(format!(
                "alternating Kac sum for {lambda} is not a module character"
            )));
        }
        Ok(kept)
    }

    /// Expand a g₀-sum into simple characters by repeatedly removing the leading term.
    pub fn into_simples(&self, sum: &VirtualG0Sum) -> Result<BTreeMap<WeightVector, i64>> {
        let borel = self.borel();
        let mut rest = sum.clone();
        let mut out = BTreeMap::new();
        let mut rounds: u128 = 0;
        while let Some((top, c)) = rest
            .terms()
            .iter()
            .max_by(|a, b| borel.height(a.0).cmp(&borel.height(b.0)).then(a.0.cmp(b.0)))
            .map(|(w, c)| (w.clone(), *c))
        {
            rounds += 1;
            limits::check("simple-character expansion", rounds)?;
            if !borel.is_dominant(&top) {
                return Err(Error::Consistency(format!(
                    "leading term {top} of the expansion is not dominant"
                )));
            }
            rest.add_assign(&self.simple_character(&top)?, -c);
            out.insert(top, c);
        }
        Ok(out)
    }

    /// a_{·,Λ'}: E(Λ') = Σ_Λ a_{Λ,Λ'} ch L_Λ.
    pub fn euler_into_simples(
        &self,
        lambda_prime: &WeightVector,
    ) -> Result<BTreeMap<WeightVector, i64>> {
        self.require_dominant(lambda_prime)?;
        self.into_simples(&self.solver.euler(lambda_prime)?)
    }

    /// Dominant weights Λ' for which L_Λ can occur in E(Λ') or K_{Λ'}.
    fn partners(&self, lambda: &WeightVector) -> Result<Vec<WeightVector>> {
        let borel = self.borel();
        let group = self.solver.group();
        let sums = distinct_sums(borel.odd_positive(), &borel.datum().zero())?;
        let mut out = BTreeSet::new();
        for w in group.elements() {
            let moved = group.dot(w, lambda, borel);
            for g in &sums {
                let cand = &moved + g;
                if borel.is_dominant(&cand) {
                    out.insert(cand);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// ch P_Λ = Σ_{Λ' ∈ P̃⁺} a_{Λ,Λ'} E(Λ').
    pub fn projective_character(&self, lambda: &WeightVector) -> Result<ProjectiveExpansion> {
        self.require_dominant(lambda)?;
        let mut coefficients = Vec::new();
        let mut character = VirtualG0Sum::new();
        for p in self.partners(lambda)? {
            if !tilde_dominant(&self.solver, &p) {
                continue;
            }
            let a = self
                .euler_into_simples(&p)?
                .get(lambda)
                .copied()
                .unwrap_or(0);
            if a != 0 {
                character.add_assign(&self.solver.euler(&p)?, a);
                coefficients.push((p, a));
            }
        }
        Ok(ProjectiveExpansion {
            weight: lambda.clone(),
            coefficients,
            character,
        })
    }

    /// [K_{Λ'} : L_Λ] for every Λ, when ch K_{Λ'} is known.
    pub fn kac_multiplicities(
        &self,
        lambda_prime: &WeightVector,
    ) -> Result<Option<BTreeMap<WeightVector, i64>>> {
        match self.solver.kac_character(lambda_prime)? {
            Some(ch) => self.into_simples(&ch).map(Some),
            None => Ok(None),
        }
    }

    /// Compare (P_Λ : K_{Λ'}) = a_{Λ,Λ'} with [K_{Λ'} : L_Λ].
    pub fn verify(&self, lambda: &WeightVector) -> Result<ReciprocityReport> {
        self.require_dominant(lambda)?;
        let borel = self.borel();
        let dt = borel.datum();
        let mut reasons = Vec::new();
        let parabolic = self.solver.max_parabolic();
        let relatively_generic = if parabolic.is_levi_dominant(borel, lambda) {
            let ctx = self.solver.genericity();
            Some(relative_genericness(
                self.solver.group(),
                borel,
                parabolic,
                lambda,
                ctx.gamma_tilde(),
            )?)
        } else {
            reasons.push(format!(
                "{lambda} is not dominant for the maximal typical Levi"
            ));
            None
        };
        if relatively_generic == Some(false) {
            reasons.push(format!("{lambda} is not relatively Γ̃-generic"));
        }
        let applicable = relatively_generic == Some(true);

        let expansion = self.projective_character(lambda)?;
        let coefficient: BTreeMap<WeightVector, i64> =
            expansion.coefficients.iter().cloned().collect();
        let mut rows = Vec::new();
        let mut flag = Some(VirtualG0Sum::new());
        for p in self.partners(lambda)? {
            let tilde = tilde_dominant(&self.solver, &p);
            let a = coefficient.get(&p).copied().unwrap_or(0);
            let kac = self
                .kac_multiplicities(&p)?
                .map(|m| m.get(lambda).copied().unwrap_or(0));
            if a == 0 && kac.unwrap_or(0) == 0 {
                continue;
            }
            match (kac, flag.as_mut()) {
                (Some(m), Some(f)) if m != 0 => {
                    let ch = self.solver.kac_character(&p)?.expect("known above");
                    f.add_assign(&ch, m);
                }
                (None, _) => flag = None,
                _ => {}
            }
            let (verdict, reason) = match kac {
                None => (
                    Verdict::NotApplicable,
                    Some("character of the Kac module is not determined".to_string()),
                ),
                Some(_) if !applicable => (
                    Verdict::NotApplicable,
                    Some("weight outside the relatively generic region".into()),
                ),
                Some(_) if !tilde => (
                    Verdict::Failed,
                    Some(format!("{p} has [K : L] ≠ 0 but is not in P̃⁺")),
                ),
                Some(m) if m == a => (Verdict::Verified, None),
                Some(m) => (Verdict::Failed, Some(format!("a = {a} but [K : L] = {m}"))),
            };
            rows.push(ReciprocityRow {
                weight: p,
                tilde_dominant: tilde,
                coefficient: a,
                kac_multiplicity: kac,
                verdict,
                reason,
            });
        }
        let routes_agree = flag.as_ref().map(|f| *f == expansion.character);
        let verdict = if !applicable || rows.iter().any(|r| r.verdict == Verdict::NotApplicable) {
            Verdict::NotApplicable
        } else if rows.iter().all(|r| r.verdict == Verdict::Verified) && routes_agree == Some(true)
        {
            Verdict::Verified
        } else {
            if routes_agree == Some(false) {
                reasons
                    .push("the Kac-flag route and the BGG route give different characters".into());
            }
            Verdict::Failed
        };
        Ok(ReciprocityReport {
            algebra: dt.family().to_string(),
            borel: borel.word().to_string(),
            weight: lambda.clone(),
            tilde_dominant: tilde_dominant(&self.solver, lambda),
            relatively_generic,
            verdict,
            reasons,
            rows,
            projective_character: expansion.character,
            kac_flag_character: flag,
        })
    }

    /// Evaluate ch C_λ both directly and as Σ_Λ [Res L_Λ : L⁰_λ] ch P_Λ.
    pub fn induced_check(&self, lambda: &WeightVector) -> Result<InducedCheck> {
        let borel = self.borel();
        let dt = borel.datum();
        let even = self.solver.even_characters();
        even.check_dominant(lambda)?;
        let zero = dt.zero();
        let odd = dt.odd_roots();
        let induced = even
            .simple_character(lambda)?
            .tensor(&FormalCharacter::product_one_plus(&odd, &zero));
        let direct = even.decompose(&induced, |w| borel.height(w))?;
        let mut multiplicities = Vec::new();
        let mut via_projectives = VirtualG0Sum::new();
        let tops: BTreeSet<WeightVector> = distinct_sums(&odd, &zero)?
            .iter()
            .map(|g| lambda + g)
            .filter(|x| borel.is_dominant(x))
            .collect();
        for top in tops {
            let m = self.simple_character(&top)?.coefficient(lambda);
            if m == 0 {
                continue;
            }
            via_projectives.add_assign(&self.projective_character(&top)?.character, m);
            multiplicities.push((top, m));
        }
        Ok(InducedCheck {
            weight: lambda.clone(),
            direct,
            multiplicities,
            via_projectives,
        })
    }
}

fn tilde_dominant(solver: &BbwSolver, lambda: &WeightVector) -> bool {
    let borel = solver.borel();
    let group = solver.group();
    borel.datum().even_positive_roots().iter().all(|a| {
        group
            .reflection(a)
            .map(|s| borel.gt(lambda, &group.dot(s, lambda, borel)))
            .unwrap_or(false)
    })
}

/// One-shot P̃⁺ test.
pub fn tilde_dominant_test(borel: &BorelData, lambda: &WeightVector) -> Result<bool> {
    ReciprocityContext::new(borel.clone())?.tilde_dominant(lambda)
}

/// One-shot reciprocity check.
pub fn verify_reciprocity(borel: &BorelData, lambda: &WeightVector) -> Result<ReciprocityReport> {
    ReciprocityContext::new(borel.clone())?.verify(lambda)
}

/// Members of the defect-one block of Λ strictly below it with height at least `floor`,
/// in decreasing order.
fn lower_chain(
    group: &crate::weyl::WeylGroup,
    borel: &BorelData,
    lambda: &WeightVector,
    radius: i64,
    floor: Q,
) -> Result<Vec<WeightVector>> {
    let (_, members) = block_members(group, borel, lambda, radius)?;
    let mut lower: Vec<WeightVector> = members
        .into_iter()
        .filter(|m| borel.gt(lambda, m) && borel.height(m) >= floor)
        .collect();
    lower.sort_by(|a, b| borel.height(b).cmp(&borel.height(a)));
    for pair in lower.windows(2) {
        if !borel.gt(&pair[0], &pair[1]) {
            return Err(Error::Consistency(format!(
                "block of {lambda} is not a chain at {} and {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(lower)
}
