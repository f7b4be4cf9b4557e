//! Cohomology Γ_k(G/P, L_μ(p)) of line bundles: complete answers where a
//! closed form is available, rigorous partial information otherwise.

use crate::borel_moves::{borel_path, OddReflectionPath};
use crate::characters::{euler_characteristic, EvenCharacters, VirtualG0Sum};
use crate::error::{Error, Result};
use crate::genericity::{
    gamma_plus_distinct, gamma_tilde_distinct, max_typical_parabolic, parabolic_from_simples,
    relative_genericness, typicality, GenericMode, GenericityContext, ParabolicData,
};
use crate::osp_blocks;
use crate::root_datum::{BorelData, Family};
use crate::weight::WeightVector;
use crate::weyl::{WeylElement, WeylGroup};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstituentKind {
    KacModule,
    DualKacModule,
    SimpleModule,
    CharacterOnly,
    TopKnown,
}

/// One summand of a cohomology group. `weight` labels the module (absent for
/// bare characters); `top` is a known simple quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub kind: ConstituentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<VirtualG0Sum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<WeightVector>,
}

impl Constituent {
    fn module(
        kind: ConstituentKind,
        weight: WeightVector,
        character: Option<VirtualG0Sum>,
    ) -> Self {
        Constituent {
            kind,
            weight: Some(weight),
            character,
            top: None,
        }
    }

    fn character_only(character: VirtualG0Sum) -> Self {
        Constituent {
            kind: ConstituentKind::CharacterOnly,
            weight: None,
            character: Some(character),
            top: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub k: usize,
    pub constituents: Vec<Constituent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    Partial,
}

/// Which closed form produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Typical,
    TypeOneDistinguished,
    Exceptional,
    Generic,
    RelativelyGeneric,
    Vanishing,
    Transported,
    Partial,
}

/// Dominant weights that may occur in degree k (restricted highest weights).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub k: usize,
    /// Reduced word of w.
    pub word: Vec<usize>,
    pub weights: Vec<WeightVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub degree_cap: usize,
    pub candidates: Vec<Candidate>,
}

impl Support {
    pub fn degrees(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self
            .candidates
            .iter()
            .filter(|c| !c.weights.is_empty())
            .map(|c| c.k)
            .collect();
        ks.dedup();
        ks
    }
}

/// Result of repeatedly applying even reflections (directly or through odd transport).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub weight: WeightVector,
    pub shift: usize,
    /// `(even simple index, weight after the step)`.
    pub steps: Vec<(usize, WeightVector)>,
    /// A step fixed the weight, so every cohomology group vanishes.
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub borel: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<WeightVector>>,
    pub weight: WeightVector,
    pub status: Status,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
    pub degree_cap: usize,
    pub degrees: Vec<DegreeEntry>,
    pub euler: VirtualG0Sum,
    /// Whether Σ(−1)^k ch Γ_k = E(μ); `None` if some character is unknown.
    pub euler_consistent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Support>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CohomologyReport {
    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.constituents.is_empty())
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| !d.constituents.is_empty())
            .map(|d| d.k)
            .collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.nonzero_degrees().into_iter().max()
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeEntry> {
        self.degrees.iter().find(|d| d.k == k)
    }

    /// Σ_k (−1)^k ch Γ_k, if every character is known.
    pub fn alternating_sum(&self) -> Option<VirtualG0Sum> {
        let mut acc = VirtualG0Sum::new();
        for d in &self.degrees {
            let sign = if d.k % 2 == 0 { 1 } else { -1 };
            for c in &d.constituents {
                acc.add_assign(c.character.as_ref()?, sign);
            }
        }
        Some(acc)
    }
}

/// Where the line bundle lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Borel,
    /// Parabolic of typical type, given by anisotropic simple roots of the Borel.
    Parabolic(Vec<WeightVector>),
}

/// Outcome of moving a weight along odd reflections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transport {
    Transported {
        weight: WeightVector,
    },
    /// 1-based index of the first reflection whose condition fails, with its root.
    Blocked {
        step: usize,
        root: WeightVector,
    },
}

/// One even reflection step: Γ_k(μ) = Γ_{k−shift}(weight).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemazureStep {
    pub weight: WeightVector,
    pub shift: usize,
}

/// Even reflection at the Δ₀⁺-simple root with index `alpha`, which must be
/// simple (or half of it simple) in `borel`.
pub fn demazure_step(
    group: &WeylGroup,
    borel: &BorelData,
    mu: &WeightVector,
    alpha: usize,
) -> Result<DemazureStep> {
    let dt = borel.datum();
    let root = dt
        .even_simple_roots()
        .get(alpha)
        .ok_or_else(|| Error::precondition(format!("no even simple root with index {alpha}")))?
        .clone();
    let half = root.scale(crate::weight::qq(1, 2));
    if !borel.is_simple(&root) && !borel.is_simple(&half) {
        return Err(Error::precondition(format!(
            "neither {root} nor {half} is simple in the Borel"
        )));
    }
    let c = dt.coroot_pairing(mu, &root);
    if !c.is_negative() {
        return Err(Error::precondition(format!(
            "pairing of {mu} with the coroot of {root} is {c}, not negative"
        )));
    }
    let refl = group.simple_reflection(alpha);
    Ok(DemazureStep {
        weight: group.dot(refl, mu, borel),
        shift: 1,
    })
}

/// Transport of μ from `b1` to `b2` (μ ↦ μ + ρ − ρ̃), blocked at the first
/// reflection β_j with ⟨β_j, μ − β_1 − … − β_{j−1}⟩ = 0.
pub fn odd_transport(mu: &WeightVector, b1: &BorelData, b2: &BorelData) -> Result<Transport> {
    let path = borel_path(b1, b2)?;
    Ok(transport_along(&path, mu))
}

fn transport_along(path: &OddReflectionPath, mu: &WeightVector) -> Transport {
    let dt = path.start.datum();
    let mut cur = mu.clone();
    for (j, beta) in path.roots.iter().enumerate() {
        if dt.pairing(&cur, beta).is_zero() {
            return Transport::Blocked {
                step: j + 1,
                root: beta.clone(),
            };
        }
        cur = &cur - beta;
    }
    Transport::Transported { weight: cur }
}

/// Precomputed data for repeated queries over one Borel.
pub struct BbwSolver {
    group: Arc<WeylGroup>,
    borel: BorelData,
    even: Arc<EvenCharacters>,
    plus: Arc<Vec<WeightVector>>,
    tilde: Arc<Vec<WeightVector>>,
    max_parabolic: ParabolicData,
}

impl BbwSolver {
    pub fn new(borel: BorelData) -> Result<BbwSolver> {
        let group = Arc::new(WeylGroup::generate(borel.datum())?);
        Self::with_group(group, borel)
    }

    pub fn with_group(group: Arc<WeylGroup>, borel: BorelData) -> Result<BbwSolver> {
        let even = Arc::new(EvenCharacters::new(borel.datum()));
        let plus = Arc::new(gamma_plus_distinct(&borel)?);
        let tilde = Arc::new(gamma_tilde_distinct(&borel)?);
        let max_parabolic = max_typical_parabolic(&borel);
        Ok(BbwSolver {
            group,
            borel,
            even,
            plus,
            tilde,
            max_parabolic,
        })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn borel(&self) -> &BorelData {
        &self.borel
    }

    pub fn even_characters(&self) -> &Arc<EvenCharacters> {
        &self.even
    }

    pub fn max_parabolic(&self) -> &ParabolicData {
        &self.max_parabolic
    }

    pub fn genericity(&self) -> GenericityContext<'_> {
        GenericityContext::with_sums(
            &self.group,
            &self.borel,
            Arc::clone(&self.plus),
            Arc::clone(&self.tilde),
        )
    }

    pub fn euler(&self, lambda: &WeightVector) -> Result<VirtualG0Sum> {
        euler_characteristic(&self.group, &self.borel, lambda)
    }

    fn dot(&self, w: &WeylElement, mu: &WeightVector) -> WeightVector {
        self.group.dot(w, mu, &self.borel)
    }

    fn is_exceptional_distinguished(&self) -> bool {
        self.borel.is_distinguished()
            && match self.borel.datum().family() {
                Family::Osp { m, n } => *n == 1 && *m >= 3,
                Family::D21 { .. } | Family::F4 | Family::G3 => true,
                _ => false,
            }
    }

    fn is_relatively_gamma_plus_generic(&self, lambda: &WeightVector) -> Result<bool> {
        relative_genericness(
            &self.group,
            &self.borel,
            &self.max_parabolic,
            lambda,
            &self.plus,
        )
    }

    /// ch K_Λ as a g₀-sum where a closed form is known.
    pub fn kac_character(&self, lambda: &WeightVector) -> Result<Option<VirtualG0Sum>> {
        if !self.borel.is_dominant(lambda) {
            return Err(Error::precondition(format!(
                "{lambda} is not integral dominant"
            )));
        }
        let dt = self.borel.datum();
        if typicality(lambda, &self.borel).is_typical()
            || (dt.is_type_one() && self.borel.is_distinguished())
        {
            return self.euler(lambda).map(Some);
        }
        if self.max_parabolic.is_levi_dominant(&self.borel, lambda)
            && self.is_relatively_gamma_plus_generic(lambda)?
        {
            return self.euler(lambda).map(Some);
        }
        if self.is_exceptional_distinguished() {
            let sl2_root = dt
                .even_positive_roots()
                .iter()
                .find(|a| a.epsilon_coords().iter().all(|c| c.is_zero()))
                .ok_or_else(|| Error::Consistency("no even root along the δ axis".into()))?;
            let s = self.group.reflection(sl2_root)?;
            let s_lambda = self.dot(s, lambda);
            if !self.borel.is_dominant(&s_lambda) {
                return self.euler(lambda).map(Some);
            }
            // K_Λ is simple here.
            return osp_blocks::simple_g0_content(&self.group, &self.borel, &self.even, lambda);
        }
        Ok(None)
    }

    fn dominant_orbit(&self, mu: &WeightVector) -> Vec<(&WeylElement, WeightVector)> {
        self.group
            .elements()
            .iter()
            .filter_map(|w| {
                let lam = self.dot(w, mu);
                self.borel.is_dominant(&lam).then_some((w, lam))
            })
            .collect()
    }

    fn is_dot_singular(&self, mu: &WeightVector) -> bool {
        let nu = mu + self.borel.rho();
        let dt = self.borel.datum();
        dt.even_positive_roots()
            .iter()
            .any(|a| dt.pairing(&nu, a).is_zero())
    }

    /// Resolve the target into a parabolic; `None` means the Borel itself.
    fn target_parabolic(
        &self,
        target: &Target,
        mu: &WeightVector,
    ) -> Result<Option<ParabolicData>> {
        match target {
            Target::Borel => Ok(None),
            Target::Parabolic(simples) => {
                let p = parabolic_from_simples(&self.borel, simples)?;
                if let Some(a) = p.levi_violation(&self.borel, mu) {
                    return Err(Error::precondition(format!(
                        "{mu} is not dominant for the Levi (fails at {a})"
                    )));
                }
                Ok(Some(p))
            }
        }
    }

    /// Degree cap and restricted highest weights per degree.
    pub fn support_and_vanishing(&self, mu: &WeightVector, target: &Target) -> Result<Support> {
        let given = self.target_parabolic(target, mu)?;
        let parabolic = match given {
            Some(p) => Some(p),
            None if self.max_parabolic.is_levi_dominant(&self.borel, mu) => {
                Some(self.max_parabolic.clone())
            }
            None => None,
        };
        let (cap, reps): (usize, Vec<&WeylElement>) = match &parabolic {
            None => (
                self.borel.even_positive().len(),
                self.group.elements().iter().collect(),
            ),
            Some(p) => {
                let reps = p.coset_reps(&self.group);
                let inverses: Vec<&WeylElement> =
                    reps.iter().map(|w| self.group.inverse(w)).collect();
                (p.dim_u0, inverses)
            }
        };
        let mut candidates = Vec::new();
        for w in reps {
            if w.length > cap {
                continue;
            }
            let top = self.dot(w, mu);
            let mut weights: Vec<WeightVector> = self
                .plus
                .iter()
                .map(|g| &top - g)
                .filter(|l| self.borel.is_dominant(l))
                .collect();
            weights.sort_by(|a, b| b.cmp(a));
            candidates.push(Candidate {
                k: w.length,
                word: w.word.clone(),
                weights,
            });
        }
        candidates.sort_by(|a, b| (a.k, &a.word).cmp(&(b.k, &b.word)));
        Ok(Support {
            degree_cap: cap,
            candidates,
        })
    }

    /// Apply even reflections with negative coroot pairing until none applies.
    pub fn normalize(&self, mu: &WeightVector) -> Result<Normalization> {
        let dt = self.borel.datum();
        let mut cur = mu.clone();
        let mut steps = Vec::new();
        let bound = self.group.max_length() + 1;
        while steps.len() <= bound {
            let mut moved = false;
            for (j, alpha) in dt.even_simple_roots().iter().enumerate() {
                let next = match demazure_step(&self.group, &self.borel, &cur, j) {
                    Ok(step) => Some(step.weight),
                    Err(_) => self.reflection_through_transport(&cur, j, alpha)?,
                };
                let Some(next) = next else { continue };
                if next == cur {
                    steps.push((j, next.clone()));
                    return Ok(Normalization {
                        weight: next,
                        shift: steps.len(),
                        steps,
                        vanishes: true,
                    });
                }
                steps.push((j, next.clone()));
                cur = next;
                moved = true;
                break;
            }
            if !moved {
                break;
            }
        }
        Ok(Normalization {
            weight: cur,
            shift: steps.len(),
            steps,
            vanishes: false,
        })
    }

    /// Even reflection at a root that is not simple in the Borel, valid when
    /// both μ and s_α·μ transport to a Borel where α (or α/2) is simple.
    fn reflection_through_transport(
        &self,
        mu: &WeightVector,
        j: usize,
        alpha: &WeightVector,
    ) -> Result<Option<WeightVector>> {
        let dt = self.borel.datum();
        let roots = &self.borel.hidden_paths()[j];
        if roots.is_empty() {
            return Ok(None);
        }
        if !dt.coroot_pairing(mu, alpha).is_negative() {
            return Ok(None);
        }
        let path = OddReflectionPath {
            start: self.borel.clone(),
            end: self.borel.clone(),
            roots: roots.clone(),
        };
        let reflected = self.dot(self.group.simple_reflection(j), mu);
        let (Transport::Transported { weight: moved }, Transport::Transported { .. }) = (
            transport_along(&path, mu),
            transport_along(&path, &reflected),
        ) else {
            return Ok(None);
        };
        if !dt.coroot_pairing(&moved, alpha).is_negative() {
            return Ok(None);
        }
        Ok(Some(reflected))
    }

    pub fn solve(&self, mu: &WeightVector, target: &Target) -> Result<CohomologyReport> {
        let dt = self.borel.datum();
        if !mu.same_shape(&dt.zero()) || !dt.in_weight_space(mu) {
            return Err(Error::precondition(format!(
                "{mu} is not a weight of {}",
                dt.family()
            )));
        }
        let given = self.target_parabolic(target, mu)?;
        let cap = match &given {
            Some(p) => p.dim_u0,
            None if self.max_parabolic.is_levi_dominant(&self.borel, mu) => {
                self.max_parabolic.dim_u0
            }
            None => self.borel.even_positive().len(),
        };
        let euler = self.euler(mu)?;
        let mut report = CohomologyReport {
            algebra: dt.family().to_string(),
            borel: self.borel.word().to_string(),
            levi: match target {
                Target::Borel => None,
                Target::Parabolic(s) => Some(s.clone()),
            },
            weight: mu.clone(),
            status: Status::Complete,
            method: Method::Partial,
            reasons: Vec::new(),
            degree_cap: cap,
            degrees: Vec::new(),
            euler,
            euler_consistent: None,
            support: None,
            normalization: None,
            notes: Vec::new(),
        };
        self.fill(&mut report)?;
        report.degrees.sort_by_key(|d| d.k);
        if report
            .degrees
            .iter()
            .any(|d| d.k > report.degree_cap && !d.constituents.is_empty())
        {
            return Err(Error::Consistency(format!(
                "{mu}: a degree above the cap {} is populated",
                report.degree_cap
            )));
        }
        if report.status == Status::Complete {
            report.euler_consistent = report.alternating_sum().map(|s| s == report.euler);
            if report.euler_consistent == Some(false) {
                return Err(Error::Consistency(format!(
                    "{mu}: alternating sum differs from E(μ)"
                )));
            }
        }
        Ok(report)
    }

    fn fill(&self, report: &mut CohomologyReport) -> Result<()> {
        let mu = report.weight.clone();
        let dt = self.borel.datum();
        if typicality(&mu, &self.borel).is_typical() {
            report.method = Method::Typical;
            if self.is_dot_singular(&mu) {
                return Ok(());
            }
            let (w, lam) = self.unique_dominant(&mu)?;
            let ch = self.euler(&lam)?;
            report.degrees.push(DegreeEntry {
                k: w.length,
                constituents: vec![Constituent::module(
                    ConstituentKind::SimpleModule,
                    lam.clone(),
                    Some(ch),
                )],
            });
            self.attach_top(report, &[(&w, lam)])?;
            return Ok(());
        }
        if dt.is_type_one() && self.borel.is_distinguished() {
            report.method = Method::TypeOneDistinguished;
            if self.is_dot_singular(&mu) {
                return Ok(());
            }
            let (w, lam) = self.unique_dominant(&mu)?;
            let ch = self.kac_character(&lam)?;
            report.degrees.push(DegreeEntry {
                k: w.length,
                constituents: vec![Constituent::module(
                    ConstituentKind::KacModule,
                    lam.clone(),
                    ch,
                )],
            });
            self.attach_top(report, &[(&w, lam)])?;
            return Ok(());
        }
        if self.is_exceptional_distinguished() {
            report.method = Method::Exceptional;
            let orbit = self.dominant_orbit(&mu);
            for (w, lam) in &orbit {
                if orbit.iter().filter(|(v, _)| v.length == w.length).count() > 1 {
                    return Err(Error::Consistency(format!(
                        "{mu}: two dominant dot-images of length {}",
                        w.length
                    )));
                }
                let kind = if w.delta_sign() == -1 {
                    ConstituentKind::DualKacModule
                } else {
                    ConstituentKind::KacModule
                };
                let ch = self.kac_character(lam)?;
                if ch.is_none() {
                    report.notes.push(format!(
                        "character of the Kac module at {lam} is not determined"
                    ));
                }
                report.degrees.push(DegreeEntry {
                    k: w.length,
                    constituents: vec![Constituent::module(kind, lam.clone(), ch)],
                });
            }
            self.attach_top(report, &orbit)?;
            return Ok(());
        }
        let ctx = self.genericity();
        let orbit = self.dominant_orbit(&mu);
        if let Some((w, lam)) = orbit
            .iter()
            .find(|(_, lam)| ctx.is_generic(lam, GenericMode::GammaPlus))
        {
            report.method = Method::Generic;
            let ch = self.euler(lam)?;
            report.degrees.push(DegreeEntry {
                k: w.length,
                constituents: vec![Constituent {
                    kind: ConstituentKind::TopKnown,
                    weight: Some(lam.clone()),
                    character: Some(ch),
                    top: None,
                }],
            });
            self.attach_top(report, &orbit)?;
            return Ok(());
        }
        self.fill_partial(report, &mu)
    }

    /// Dominant member of the dot orbit of a dot-regular weight.
    fn unique_dominant(&self, mu: &WeightVector) -> Result<(WeylElement, WeightVector)> {
        let orbit = self.dominant_orbit(mu);
        match orbit.as_slice() {
            [(w, lam)] => Ok(((*w).clone(), lam.clone())),
            [] => Err(Error::Consistency(format!(
                "{mu}: no dominant weight in the dot orbit"
            ))),
            _ => Err(Error::Consistency(format!(
                "{mu}: several dominant weights in the dot orbit"
            ))),
        }
    }

    /// For a generic Λ = w·μ the module in degree l(w) has top w∗μ.
    fn attach_top(
        &self,
        report: &mut CohomologyReport,
        orbit: &[(&WeylElement, WeightVector)],
    ) -> Result<()> {
        let [(w, lam)] = orbit else { return Ok(()) };
        if !self.genericity().is_generic(lam, GenericMode::Full) {
            return Ok(());
        }
        let (top, _) =
            crate::borel_moves::star_action(&self.group, &self.borel, w, &report.weight)?;
        if let Some(entry) = report.degrees.iter_mut().find(|d| d.k == w.length) {
            for c in &mut entry.constituents {
                c.top = Some(top.clone());
            }
        }
        Ok(())
    }

    fn fill_partial(&self, report: &mut CohomologyReport, mu: &WeightVector) -> Result<()> {
        let parabolic_ok = self.max_parabolic.is_levi_dominant(&self.borel, mu);
        if parabolic_ok && self.is_relatively_gamma_plus_generic(mu)? && !self.is_dot_singular(mu) {
            let reps = self.max_parabolic.coset_reps(&self.group);
            let hits: Vec<(&WeylElement, WeightVector)> = reps
                .iter()
                .filter_map(|w| {
                    let lam = self.dot(w, mu);
                    self.borel.is_dominant(&lam).then_some((w, lam))
                })
                .collect();
            if let [(w, lam)] = hits.as_slice() {
                report.method = Method::RelativelyGeneric;
                report.degrees.push(DegreeEntry {
                    k: w.length,
                    constituents: vec![Constituent::character_only(self.euler(lam)?)],
                });
                return Ok(());
            }
        }

        let norm = self.normalize(mu)?;
        if norm.vanishes {
            report.method = Method::Vanishing;
            report.normalization = Some(norm);
            return Ok(());
        }

        if !self.borel.is_distinguished() {
            let target = BorelData::distinguished(self.borel.datum());
            if let Transport::Transported { weight } = odd_transport(mu, &self.borel, &target)? {
                let other = BbwSolver::with_group(Arc::clone(&self.group), target)?;
                let sub = other.solve(&weight, &Target::Borel)?;
                if sub.status == Status::Complete {
                    report.method = Method::Transported;
                    report.degrees = sub.degrees;
                    report.notes.push(format!(
                        "transported to the distinguished Borel as {weight}"
                    ));
                    report.notes.extend(sub.notes);
                    return Ok(());
                }
            }
        }

        report.status = Status::Partial;
        report.method = Method::Partial;
        report
            .reasons
            .push("weight is atypical and not generic; no closed form applies".to_string());
        if norm.shift > 0 {
            report.notes.push(format!(
                "Γ_k of {mu} equals Γ_(k-{}) of {}",
                norm.shift, norm.weight
            ));
            report.normalization = Some(norm);
        }
        report.support = Some(self.support_and_vanishing(mu, &Target::Borel)?);
        Ok(())
    }
}

/// One-shot solve on a fresh solver.
pub fn solve_bbw(
    borel: &BorelData,
    mu: &WeightVector,
    target: &Target,
) -> Result<CohomologyReport> {
    BbwSolver::new(borel.clone())?.solve(mu, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel_moves::all_borels;
    use crate::characters::{euler_series, euler_window, FormalCharacter};
    use crate::root_datum::distinguished;
    use crate::weight::{q, qq, Q};
    use proptest::prelude::*;

    fn wv(s: &str) -> WeightVector {
        WeightVector::from_compact(s).unwrap()
    }

    fn solver(family: Family) -> BbwSolver {
        BbwSolver::new(distinguished(family).unwrap()).unwrap()
    }

    fn osp32() -> BbwSolver {
        solver(Family::Osp { m: 3, n: 1 })
    }

    fn grid(solver: &BbwSolver, range: std::ops::RangeInclusive<i64>) -> Vec<WeightVector> {
        let dt = solver.borel().datum();
        let dim = dt.n_delta() + dt.n_epsilon();
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    range.clone().map(move |c| {
                        let mut v = v.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|c| WeightVector::from_ints(&c[..dt.n_delta()], &c[dt.n_delta()..]))
            .filter(|w| dt.in_weight_space(w))
            .collect()
    }

    fn degree_character(
        even: &EvenCharacters,
        report: &CohomologyReport,
        k: usize,
    ) -> Option<FormalCharacter> {
        let mut total = FormalCharacter::new();
        if let Some(entry) = report.degree(k) {
            for c in &entry.constituents {
                total = total.add(&even.expand(c.character.as_ref()?).ok()?);
            }
        }
        Some(total)
    }

    /// Weyl-type dimension of a typical simple module: 2^|Δ₁⁺| ∏ (λ+ρ, α)/(ρ₀, α).
    fn typical_dimension(borel: &BorelData, lambda: &WeightVector) -> Q {
        let dt = borel.datum();
        let shifted = lambda + borel.rho();
        let mut d = Q::from_integer(1 << borel.odd_positive().len());
        for a in borel.even_positive() {
            d *= dt.pairing(&shifted, a) / dt.pairing(dt.rho0(), a);
        }
        d
    }

    #[test]
    fn typical_dominant_weight_is_simple_in_degree_zero() {
        let s = osp32();
        let mu = wv("(1|1)");
        // δ+ε+ρ = (1/2, 3/2) pairs nontrivially with δ−ε and δ+ε.
        let shifted = &mu + s.borel().rho();
        for g in s.borel().isotropic_positive() {
            assert!(!s.borel().datum().pairing(&shifted, &g).is_zero());
        }
        let r = s.solve(&mu, &Target::Borel).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.method, Method::Typical);
        assert_eq!(r.nonzero_degrees(), vec![0]);
        let c = &r.degree(0).unwrap().constituents[0];
        assert_eq!(c.kind, ConstituentKind::SimpleModule);
        assert_eq!(c.weight.as_ref(), Some(&mu));
        let expanded = s
            .even_characters()
            .expand(c.character.as_ref().unwrap())
            .unwrap();
        assert_eq!(
            Q::from_integer(expanded.total()),
            typical_dimension(s.borel(), &mu)
        );
        let window = euler_window(s.group(), s.borel(), &mu, q(6));
        assert_eq!(
            expanded.truncate(&window),
            euler_series(s.group(), s.borel(), &mu, &window)
        );
    }

    #[test]
    fn s_reflected_atypical_weight_gives_dual_kac_in_degree_one() {
        let s = osp32();
        let r = s.solve(&wv("(-1|1)"), &Target::Borel).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.nonzero_degrees(), vec![1]);
        let c = &r.degree(1).unwrap().constituents;
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, ConstituentKind::DualKacModule);
        assert_eq!(c[0].weight, Some(wv("(2|1)")));
    }

    #[test]
    fn zero_weight_splits_into_kac_and_dual_kac() {
        let s = osp32();
        let r = s.solve(&wv("(0|0)"), &Target::Borel).unwrap();
        assert_eq!(r.method, Method::Exceptional);
        assert_eq!(r.nonzero_degrees(), vec![0, 1]);
        assert_eq!(
            r.degree(0).unwrap().constituents[0].kind,
            ConstituentKind::KacModule
        );
        assert_eq!(
            r.degree(0).unwrap().constituents[0].weight,
            Some(wv("(0|0)"))
        );
        assert_eq!(
            r.degree(1).unwrap().constituents[0].kind,
            ConstituentKind::DualKacModule
        );
        assert_eq!(
            r.degree(1).unwrap().constituents[0].weight,
            Some(wv("(1|0)"))
        );
        assert_eq!(r.euler_consistent, Some(true));
        // Both modules are simple here: the trivial module and the natural one (3|2).
        let even = s.even_characters();
        assert_eq!(degree_character(even, &r, 0).unwrap().total(), 1);
        assert_eq!(degree_character(even, &r, 1).unwrap().total(), 5);
    }

    #[test]
    fn typical_dot_singular_weights_have_no_cohomology() {
        let s = solver(Family::Gl { m: 2, n: 1 });
        let dt = s.borel().datum().clone();
        let mut seen = 0;
        for mu in grid(&s, -3..=3) {
            let shifted = &mu + s.borel().rho();
            let typical = s
                .borel()
                .isotropic_positive()
                .iter()
                .all(|g| !dt.pairing(&shifted, g).is_zero());
            let singular = dt
                .even_positive_roots()
                .iter()
                .any(|a| dt.pairing(&shifted, a).is_zero());
            if !(typical && singular) {
                continue;
            }
            seen += 1;
            let r = s.solve(&mu, &Target::Borel).unwrap();
            assert_eq!(r.status, Status::Complete, "{mu}");
            assert!(r.is_zero(), "{mu}");
            assert!(r.euler.is_empty(), "{mu}");
        }
        assert!(seen > 10);
    }

    #[test]
    fn circle_singular_typical_weight_still_has_cohomology() {
        // −δ is singular for the ρ₀-shifted action but regular for the ρ-shifted one.
        let s = osp32();
        let mu = wv("(-1|0)");
        assert!(matches!(
            s.group().chamber_locate(&mu),
            crate::weyl::Chamber::Singular(_)
        ));
        let r = s.solve(&mu, &Target::Borel).unwrap();
        assert_eq!(r.nonzero_degrees(), vec![1]);
        assert_eq!(
            r.degree(1).unwrap().constituents[0].weight,
            Some(wv("(2|0)"))
        );
    }

    #[test]
    fn demazure_step_rejects_nonnegative_pairing() {
        let s = osp32();
        let eps = s
            .borel()
            .datum()
            .even_simple_roots()
            .iter()
            .position(|a| a == &wv("(0|1)"))
            .unwrap();
        let err = demazure_step(s.group(), s.borel(), &wv("(0|1)"), eps).unwrap_err();
        assert!(err.to_string().contains("not negative"), "{err}");
    }

    #[test]
    fn demazure_step_rejects_root_that_is_not_simple() {
        let s = osp32();
        let two_delta = s
            .borel()
            .datum()
            .even_simple_roots()
            .iter()
            .position(|a| a == &wv("(2|0)"))
            .unwrap();
        let err = demazure_step(s.group(), s.borel(), &wv("(-3|0)"), two_delta).unwrap_err();
        assert!(err.to_string().contains("is simple"), "{err}");
    }

    #[test]
    fn demazure_step_at_epsilon() {
        let s = osp32();
        let eps = s
            .borel()
            .datum()
            .even_simple_roots()
            .iter()
            .position(|a| a == &wv("(0|1)"))
            .unwrap();
        let step = demazure_step(s.group(), s.borel(), &wv("(0|-2)"), eps).unwrap();
        // s_ε(−2ε + ρ) − ρ = (−1/2, 3/2) − (−1/2, 1/2).
        assert_eq!(step.weight, wv("(0|1)"));
        assert_eq!(step.shift, 1);
    }

    #[test]
    fn iterated_demazure_steps_match_chamber_length() {
        for family in [
            Family::Gl { m: 3, n: 1 },
            Family::Gl { m: 2, n: 2 },
            Family::Osp { m: 1, n: 2 },
        ] {
            let s = solver(family);
            let dt = s.borel().datum().clone();
            for mu in grid(&s, -3..=2) {
                if !typicality(&mu, s.borel()).is_typical() {
                    continue;
                }
                let Ok((w, dominant)) = s.group().regularize(&(&mu + s.borel().rho())) else {
                    continue;
                };
                let mut cur = mu.clone();
                let mut steps = 0;
                'walk: loop {
                    for j in 0..dt.even_simple_roots().len() {
                        if let Ok(step) = demazure_step(s.group(), s.borel(), &cur, j) {
                            cur = step.weight;
                            steps += step.shift;
                            continue 'walk;
                        }
                    }
                    break;
                }
                assert_eq!(steps, w.length, "{mu}");
                assert_eq!(cur, &dominant - s.borel().rho(), "{mu}");
            }
        }
    }

    #[test]
    fn transport_to_the_same_borel_is_identity() {
        let s = osp32();
        let mu = wv("(0|0)");
        assert_eq!(
            odd_transport(&mu, s.borel(), s.borel()).unwrap(),
            Transport::Transported { weight: mu }
        );
    }

    #[test]
    fn transport_of_zero_blocks_at_first_isotropic_step() {
        let s = osp32();
        let gamma = wv("(1|-1)");
        let other = s.borel().odd_reflect(&gamma).unwrap();
        let t = odd_transport(&wv("(0|0)"), s.borel(), &other).unwrap();
        assert_eq!(
            t,
            Transport::Blocked {
                step: 1,
                root: gamma
            }
        );
    }

    #[test]
    fn typical_weights_always_transport() {
        for family in [
            Family::Osp { m: 3, n: 1 },
            Family::Gl { m: 2, n: 1 },
            Family::Osp { m: 2, n: 2 },
        ] {
            let s = solver(family);
            let borels = all_borels(s.borel()).unwrap();
            for mu in grid(&s, -2..=2) {
                if !typicality(&mu, s.borel()).is_typical() {
                    continue;
                }
                for b2 in &borels {
                    let expected = &(&mu + s.borel().rho()) - b2.rho();
                    assert_eq!(
                        odd_transport(&mu, s.borel(), b2).unwrap(),
                        Transport::Transported { weight: expected },
                        "{mu} to {}",
                        b2.word()
                    );
                }
            }
        }
    }

    #[test]
    fn support_of_zero_lies_in_the_principal_block() {
        let s = osp32();
        let dt = s.borel().datum().clone();
        let rho = s.borel().rho().clone();
        let odd: Vec<WeightVector> = s.borel().odd_positive().to_vec();
        assert_eq!(odd.len(), 3);
        let mut scan = std::collections::BTreeSet::new();
        for w in s.group().elements() {
            let top = s.group().dot(w, &wv("(0|0)"), s.borel());
            for mask in 0..8u32 {
                let mut x = top.clone();
                for (i, g) in odd.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        x = &x - g;
                    }
                }
                // Dominance for osp(3|2): a, b ≥ 0 integers, and b = 0 when a = 0.
                let (a, b) = (x.delta_coords()[0], x.epsilon_coords()[0]);
                if a.is_integer()
                    && b.is_integer()
                    && a >= q(0)
                    && b >= q(0)
                    && (a > q(0) || b.is_zero())
                {
                    scan.insert(x);
                }
            }
        }
        let support = s
            .support_and_vanishing(&wv("(0|0)"), &Target::Borel)
            .unwrap();
        assert!(support
            .candidates
            .iter()
            .any(|c| c.k == 0 && c.weights.contains(&wv("(0|0)"))));
        for c in &support.candidates {
            assert!(c.k <= support.degree_cap);
            for lam in &c.weights {
                assert!(scan.contains(lam), "{lam}");
                assert!(s.borel().is_dominant(lam));
                // Atypical with the central character of 0: λ+ρ isotropic and orthogonal to some δ±ε.
                let shifted = lam + &rho;
                assert!(dt.norm(&shifted).is_zero(), "{lam}");
                assert!(!typicality(lam, s.borel()).is_typical(), "{lam}");
            }
        }
    }

    #[test]
    fn generic_dominant_orbit_has_a_single_candidate_degree() {
        let s = osp32();
        let ctx = s.genericity();
        let mut seen = 0;
        for lam in grid(&s, 0..=7) {
            if !s.borel().is_dominant(&lam) || !ctx.is_generic(&lam, GenericMode::GammaPlus) {
                continue;
            }
            for w in s.group().elements() {
                let mu = s.group().dot(w, &lam, s.borel());
                let support = s.support_and_vanishing(&mu, &Target::Borel).unwrap();
                assert_eq!(support.degrees(), vec![w.length], "{lam} via {:?}", w.word);
                seen += 1;
            }
        }
        assert!(seen > 20);
    }

    #[test]
    fn generic_weights_report_a_top_exactly_when_fully_generic() {
        let s = solver(Family::Osp { m: 4, n: 1 });
        let ctx = s.genericity();
        for lam in grid(&s, 0..=5) {
            if !s.borel().is_dominant(&lam) || typicality(&lam, s.borel()).is_typical() {
                continue;
            }
            if !ctx.is_generic(&lam, GenericMode::GammaPlus) {
                continue;
            }
            let r = s.solve(&lam, &Target::Borel).unwrap();
            assert_eq!(r.nonzero_degrees(), vec![0], "{lam}");
            let top = r.degree(0).unwrap().constituents[0].top.clone();
            assert_eq!(
                top.is_some(),
                ctx.is_generic(&lam, GenericMode::Full),
                "{lam}"
            );
        }
    }

    #[test]
    fn kac_character_of_type_one_matches_product_formula() {
        let s = solver(Family::Gl { m: 2, n: 1 });
        let dt = s.borel().datum().clone();
        for lam in grid(&s, -2..=3) {
            if !s.borel().is_dominant(&lam) {
                continue;
            }
            let ch = s.kac_character(&lam).unwrap().unwrap();
            let neg: Vec<WeightVector> = s.borel().odd_positive().iter().map(|g| -g).collect();
            let expected = s
                .even_characters()
                .simple_character(&lam)
                .unwrap()
                .tensor(&FormalCharacter::product_one_plus(&neg, &dt.zero()));
            assert_eq!(s.even_characters().expand(&ch).unwrap(), expected, "{lam}");
        }
    }

    #[test]
    fn parabolic_target_rejects_weight_not_levi_dominant() {
        let s = osp32();
        let err = s
            .solve(&wv("(0|-2)"), &Target::Parabolic(vec![wv("(0|1)")]))
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
    }

    #[test]
    fn parabolic_target_caps_degrees() {
        let s = osp32();
        let levi = vec![wv("(0|1)")];
        let mu = wv("(-1|1)");
        let b = s.solve(&mu, &Target::Borel).unwrap();
        let p = s.solve(&mu, &Target::Parabolic(levi.clone())).unwrap();
        assert_eq!(p.degree_cap, 1);
        assert_eq!(p.levi, Some(levi));
        assert_eq!(p.degrees, b.degrees);
    }

    #[test]
    fn exceptional_families_solve_consistently() {
        for family in [Family::D21 { alpha: qq(1, 2) }, Family::G3, Family::F4] {
            let s = solver(family);
            for mu in grid(&s, -1..=1).into_iter().take(40) {
                let r = s.solve(&mu, &Target::Borel).unwrap();
                assert_eq!(r.status, Status::Complete, "{mu}");
                assert_ne!(r.euler_consistent, Some(false), "{mu}");
                if r.euler_consistent.is_none() {
                    assert!(!r.notes.is_empty());
                }
            }
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let s = osp32();
        let r = s.solve(&wv("(0|0)"), &Target::Borel).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: CohomologyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"dual_kac_module\""));
    }

    fn families() -> Vec<Family> {
        vec![
            Family::Gl { m: 2, n: 1 },
            Family::Sl { m: 3, n: 1 },
            Family::Osp { m: 3, n: 1 },
            Family::Osp { m: 4, n: 1 },
            Family::Osp { m: 1, n: 2 },
            Family::Osp { m: 2, n: 2 },
            Family::D21 { alpha: q(2) },
        ]
    }

    fn sample(s: &BbwSolver, coords: &[i64]) -> WeightVector {
        let dt = s.borel().datum();
        let nd = dt.n_delta();
        let ne = dt.n_epsilon();
        let c: Vec<i64> = (0..nd + ne)
            .map(|i| coords[i % coords.len()] - (i as i64 % 2))
            .collect();
        let mut w = WeightVector::from_ints(&c[..nd], &c[nd..]);
        if !dt.in_weight_space(&w) {
            w = dt.normalize(&w);
        }
        w
    }

    fn borels(family: &Family) -> Vec<BorelData> {
        let b = distinguished(family.clone()).unwrap();
        if family.is_exceptional() {
            vec![b]
        } else {
            all_borels(&b).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn complete_reports_satisfy_euler_and_caps(
            fam in 0usize..7,
            pick in 0usize..8,
            coords in proptest::collection::vec(-3i64..4, 4),
        ) {
            let family = families()[fam].clone();
            let all = borels(&family);
            let b = all[pick % all.len()].clone();
            let s = BbwSolver::new(b).unwrap();
            let mu = sample(&s, &coords);
            prop_assume!(s.borel().datum().in_weight_space(&mu));
            let r = s.solve(&mu, &Target::Borel).unwrap();
            prop_assert!(r.degree_cap <= s.borel().even_positive().len());
            prop_assert!(r.max_degree().map_or(true, |k| k <= r.degree_cap));
            if r.status == Status::Complete {
                if let Some(sum) = r.alternating_sum() {
                    prop_assert_eq!(sum, r.euler.clone());
                }
                if !matches!(r.method, Method::Exceptional | Method::Transported) {
                    prop_assert!(r.nonzero_degrees().len() <= 1);
                }
            } else {
                let support = r.support.as_ref().unwrap();
                prop_assert!(support.candidates.iter().all(|c| c.k <= support.degree_cap));
            }
        }

        #[test]
        fn constituents_share_the_central_character(
            fam in 0usize..7,
            coords in proptest::collection::vec(-3i64..4, 4),
        ) {
            let s = solver(families()[fam].clone());
            let mu = sample(&s, &coords);
            prop_assume!(s.borel().datum().in_weight_space(&mu));
            let dt = s.borel().datum().clone();
            let r = s.solve(&mu, &Target::Borel).unwrap();
            let casimir = |x: &WeightVector| dt.norm(&(x + s.borel().rho()));
            let defect = typicality(&mu, s.borel()).degree();
            for entry in &r.degrees {
                for c in &entry.constituents {
                    if let Some(lam) = &c.weight {
                        prop_assert_eq!(casimir(lam), casimir(&mu));
                        prop_assert_eq!(typicality(lam, s.borel()).degree(), defect);
                    }
                }
            }
        }

        #[test]
        fn serre_duality_on_characters(
            fam in 0usize..7,
            coords in proptest::collection::vec(-3i64..4, 4),
        ) {
            let s = solver(families()[fam].clone());
            let mu = sample(&s, &coords);
            prop_assume!(s.borel().datum().in_weight_space(&mu));
            let dual_weight = &(-&mu) - &s.borel().rho().scale(q(2));
            let top = s.borel().even_positive().len();
            let r1 = s.solve(&mu, &Target::Borel).unwrap();
            let r2 = s.solve(&dual_weight, &Target::Borel).unwrap();
            prop_assume!(r1.status == Status::Complete && r2.status == Status::Complete);
            for k in 0..=top {
                let (Some(a), Some(b)) = (
                    degree_character(s.even_characters(), &r1, k),
                    degree_character(s.even_characters(), &r2, top - k),
                ) else {
                    continue;
                };
                prop_assert_eq!(a.dual(), b, "degree {}", k);
            }
        }
    }
}
