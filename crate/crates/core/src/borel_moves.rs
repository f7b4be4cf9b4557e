//! Odd reflections, highest-weight transport, Borel paths and the star action.

use crate::error::{Error, Result};
use crate::genericity::{GenericMode, GenericityContext};
use crate::limits;
use crate::root_datum::{shortest_path_to, BorelData, RootDatum};
use crate::weight::{qq, WeightVector};
use crate::weyl::{WeylElement, WeylGroup};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

/// Sequence of odd reflections β₁, …, β_p taking `start` to `end`.
#[derive(Clone, Debug)]
pub struct OddReflectionPath {
    pub start: BorelData,
    pub end: BorelData,
    pub roots: Vec<WeightVector>,
}

impl OddReflectionPath {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Replays the path, checking each root is simple isotropic where it is applied.
    pub fn verify(&self) -> Result<Vec<BorelData>> {
        let mut systems = vec![self.start.clone()];
        for g in &self.roots {
            let next = systems.last().expect("nonempty").odd_reflect(g)?;
            systems.push(next);
        }
        if systems.last().expect("nonempty") != &self.end {
            return Err(Error::Consistency(
                "odd-reflection path does not reach its end".into(),
            ));
        }
        Ok(systems)
    }

    /// The path from `end` back to `start`.
    pub fn reversed(&self) -> OddReflectionPath {
        OddReflectionPath {
            start: self.end.clone(),
            end: self.start.clone(),
            roots: self.roots.iter().rev().map(|g| -g).collect(),
        }
    }
}

pub fn odd_reflection(borel: &BorelData, gamma: &WeightVector) -> Result<BorelData> {
    borel.odd_reflect(gamma)
}

fn check_simple_isotropic(borel: &BorelData, gamma: &WeightVector) -> Result<()> {
    match borel.simple_roots().iter().find(|s| &s.root == gamma) {
        None => Err(Error::precondition(format!(
            "{gamma} is not a simple root of this Borel"
        ))),
        Some(s) if !s.isotropic => Err(Error::precondition(format!("{gamma} is not isotropic"))),
        Some(_) => Ok(()),
    }
}

fn simple_rule(datum: &RootDatum, lambda: &WeightVector, gamma: &WeightVector) -> WeightVector {
    if datum.pairing(lambda, gamma).is_zero() {
        lambda.clone()
    } else {
        lambda - gamma
    }
}

/// Highest weight of L_λ after reflecting at the simple isotropic γ.
pub fn reflect_simple_highest_weight(
    borel: &BorelData,
    lambda: &WeightVector,
    gamma: &WeightVector,
) -> Result<WeightVector> {
    check_simple_isotropic(borel, gamma)?;
    Ok(simple_rule(borel.datum(), lambda, gamma))
}

/// Transports the highest weight of a simple module along a path.
pub fn transport(path: &OddReflectionPath, lambda: &WeightVector) -> WeightVector {
    let dt = path.start.datum();
    path.roots
        .iter()
        .fold(lambda.clone(), |mu, g| simple_rule(dt, &mu, g))
}

/// Verma-module transport μ ↦ μ − Σβ_j, defined when ⟨β_j, μ − β₁ − … − β_{j−1}⟩ ≠ 0 throughout.
pub fn verma_transport(path: &OddReflectionPath, mu: &WeightVector) -> Option<WeightVector> {
    let dt = path.start.datum();
    let mut cur = mu.clone();
    for g in &path.roots {
        if dt.pairing(&cur, g).is_zero() {
            return None;
        }
        cur = &cur - g;
    }
    Some(cur)
}

/// Greedy path: reflect at the smallest simple isotropic root that is negative for the target.
pub fn borel_path(b1: &BorelData, b2: &BorelData) -> Result<OddReflectionPath> {
    if b1.datum().family() != b2.datum().family() {
        return Err(Error::precondition(
            "Borel subalgebras belong to different algebras",
        ));
    }
    if b1.even_positive() != b2.even_positive() {
        return Err(Error::precondition(
            "Borel subalgebras have different even parts",
        ));
    }
    let target: BTreeSet<&WeightVector> = b2.odd_positive().iter().collect();
    let mut cur = b1.clone();
    let mut roots = Vec::new();
    while cur != *b2 {
        let mut cands: Vec<WeightVector> = cur
            .simple_roots()
            .iter()
            .filter(|s| s.isotropic && !target.contains(&s.root))
            .map(|s| s.root.clone())
            .collect();
        cands.sort();
        let g = cands
            .into_iter()
            .next()
            .ok_or_else(|| Error::Consistency("no simple root separates the two Borels".into()))?;
        cur = cur.odd_reflect(&g)?;
        roots.push(g);
    }
    Ok(OddReflectionPath {
        start: b1.clone(),
        end: cur,
        roots,
    })
}

/// Number of odd roots positive for `b1` and negative for `b2`.
pub fn disagreement(b1: &BorelData, b2: &BorelData) -> usize {
    b1.odd_positive()
        .iter()
        .filter(|g| !b2.odd_positive().contains(g))
        .count()
}

/// All Borels with the fixed even part, in breadth-first order from `start`.
pub fn all_borels(start: &BorelData) -> Result<Vec<BorelData>> {
    let mut seen: BTreeSet<Vec<WeightVector>> = BTreeSet::new();
    seen.insert(start.odd_positive().to_vec());
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(b) = queue.pop_front() {
        let mut gammas: Vec<WeightVector> = b
            .simple_roots()
            .iter()
            .filter(|s| s.isotropic)
            .map(|s| s.root.clone())
            .collect();
        gammas.sort();
        for g in gammas {
            let nb = b.odd_reflect(&g)?;
            if seen.insert(nb.odd_positive().to_vec()) {
                limits::check("Borel enumeration", seen.len() as u128)?;
                out.push(nb.clone());
                queue.push_back(nb);
            }
        }
    }
    Ok(out)
}

/// One step of a star computation, for audit output.
#[derive(Clone, Debug, Serialize)]
pub struct StarStep {
    pub reflection: usize,
    pub root: WeightVector,
    pub path: Vec<WeightVector>,
    pub transported: WeightVector,
    pub reflected: WeightVector,
    pub result: WeightVector,
}

/// Simple star reflection through a chosen path to a Borel where α or α/2 is simple.
pub fn star_reflection_via(
    path: &OddReflectionPath,
    alpha: &WeightVector,
    lambda: &WeightVector,
) -> Result<StarStep> {
    let dt = path.start.datum();
    let mid = &path.end;
    if !(mid.is_simple(alpha) || mid.is_simple(&alpha.scale(qq(1, 2)))) {
        return Err(Error::precondition(format!(
            "{alpha} is not (half-)simple at the end of the path"
        )));
    }
    let transported = transport(path, lambda);
    let rho = mid.rho();
    let reflected = &dt.reflect(&(&transported + rho), alpha) - rho;
    let result = transport(&path.reversed(), &reflected);
    let reflection = dt
        .even_simple_roots()
        .iter()
        .position(|a| a == alpha)
        .unwrap_or(usize::MAX);
    Ok(StarStep {
        reflection,
        root: alpha.clone(),
        path: path.roots.clone(),
        transported,
        reflected,
        result,
    })
}

/// Simple star reflection s_j ∗ λ using the shortest (lexicographically first) path.
pub fn star_reflection(borel: &BorelData, j: usize, lambda: &WeightVector) -> Result<StarStep> {
    let dt = borel.datum();
    let alpha = dt
        .even_simple_roots()
        .get(j)
        .ok_or_else(|| Error::precondition(format!("no simple reflection with index {j}")))?
        .clone();
    let roots = borel.hidden_paths()[j].clone();
    let mut end = borel.clone();
    for g in &roots {
        end = end.odd_reflect(g)?;
    }
    let path = OddReflectionPath {
        start: borel.clone(),
        end,
        roots,
    };
    let mut step = star_reflection_via(&path, &alpha, lambda)?;
    step.reflection = j;
    Ok(step)
}

/// w ∗ λ, applying the reflections of the reduced word right to left.
pub fn star_action(
    group: &WeylGroup,
    borel: &BorelData,
    w: &WeylElement,
    lambda: &WeightVector,
) -> Result<(WeightVector, Vec<StarStep>)> {
    let ctx = GenericityContext::new(group, borel)?;
    if !ctx.is_generic(lambda, GenericMode::GammaTilde) {
        return Err(Error::precondition(format!(
            "{lambda} is not Γ̃-generic; the star action is only defined there"
        )));
    }
    let mut cur = lambda.clone();
    let mut steps = Vec::new();
    for &j in w.word.iter().rev() {
        let step = star_reflection(borel, j, &cur)?;
        cur = step.result.clone();
        steps.push(step);
    }
    Ok((cur, steps))
}

/// Every path found by breadth-first search to a Borel where α or α/2 is simple.
pub fn alternative_paths(
    borel: &BorelData,
    alpha: &WeightVector,
) -> Result<Vec<OddReflectionPath>> {
    let half = alpha.scale(qq(1, 2));
    let mut out = Vec::new();
    for target in all_borels(borel)? {
        if target.is_simple(alpha) || target.is_simple(&half) {
            out.push(borel_path(borel, &target)?);
        }
    }
    Ok(out)
}

/// Shortest path to a Borel satisfying `target`.
pub fn path_to(
    borel: &BorelData,
    target: impl Fn(&BorelData) -> bool,
) -> Result<OddReflectionPath> {
    let roots = shortest_path_to(borel, target)?;
    let mut end = borel.clone();
    for g in &roots {
        end = end.odd_reflect(g)?;
    }
    Ok(OddReflectionPath {
        start: borel.clone(),
        end,
        roots,
    })
}
