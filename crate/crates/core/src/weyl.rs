//! The Weyl group W(g₀) as signed permutations, with reduced words, the dot and
//! circle actions, chamber location and parabolic coset representatives.

use crate::error::{Error, Result};
use crate::limits;
use crate::root_datum::{BorelData, RootDatum};
use crate::weight::{q, WeightVector};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::sync::Arc;

type Perm = (SmallVec<[u8; 8]>, SmallVec<[i8; 8]>);

/// A Weyl group element: `(w x)[i] = sign[i] * x[src[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    src: Vec<u8>,
    sign: Vec<i8>,
    /// Lexicographically smallest reduced word in Δ₀⁺-simple indices, applied right to left.
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, x: &WeightVector) -> WeightVector {
        let mut out = x.clone();
        let c = x.coords();
        for (i, slot) in out.coords_mut().iter_mut().enumerate() {
            let v = c[self.src[i] as usize];
            *slot = if self.sign[i] < 0 { -v } else { v };
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Sign of the action on the first δ coordinate.
    pub fn delta_sign(&self) -> i8 {
        let i = self.src.iter().position(|&s| s == 0).expect("permutation");
        self.sign[i]
    }

    fn key(&self) -> Perm {
        (
            self.src.iter().copied().collect(),
            self.sign.iter().copied().collect(),
        )
    }
}

/// Outcome of locating the ρ₀-shifted chamber of a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chamber {
    /// `w ∘ λ` is strictly dominant.
    Regular(WeylElement),
    /// λ + ρ₀ lies on the walls of these positive even roots.
    Singular(Vec<WeightVector>),
}

/// The full Weyl group of a root datum.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: Vec<WeylElement>,
    index: HashMap<Perm, usize>,
    simple: Vec<usize>,
}

fn signed_perm_of_map(
    datum: &RootDatum,
    map: impl Fn(&WeightVector) -> WeightVector,
) -> Option<Perm> {
    let dim = datum.n_delta() + datum.n_epsilon();
    let basis: Vec<WeightVector> = (0..dim)
        .map(|j| {
            let mut e = datum.zero();
            e.coords_mut()[j] = q(1);
            datum.normalize(&e)
        })
        .collect();
    let mut src = SmallVec::from_elem(0u8, dim);
    let mut sign = SmallVec::from_elem(0i8, dim);
    for (j, f) in basis.iter().enumerate() {
        let image = map(f);
        let mut found = false;
        for (i, g) in basis.iter().enumerate() {
            if &image == g {
                src[i] = j as u8;
                sign[i] = 1;
                found = true;
                break;
            }
            if image == -g {
                src[i] = j as u8;
                sign[i] = -1;
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    Some((src, sign))
}

fn compose_perm(u: &Perm, v: &Perm) -> Perm {
    let n = u.0.len();
    let mut src = SmallVec::from_elem(0u8, n);
    let mut sign = SmallVec::from_elem(0i8, n);
    for i in 0..n {
        let k = u.0[i] as usize;
        src[i] = v.0[k];
        sign[i] = u.1[i] * v.1[k];
    }
    (src, sign)
}

impl WeylGroup {
    pub fn generate(datum: &Arc<RootDatum>) -> Result<WeylGroup> {
        let dim = datum.n_delta() + datum.n_epsilon();
        let identity: Perm = ((0..dim as u8).collect(), SmallVec::from_elem(1i8, dim));
        let gens: Vec<Perm> = datum
            .even_simple_roots()
            .iter()
            .map(|a| {
                signed_perm_of_map(datum, |x| datum.reflect(x, a)).ok_or_else(|| {
                    Error::Consistency(format!("reflection in {a} is not a signed permutation"))
                })
            })
            .collect::<Result<_>>()?;
        let mut elements = vec![WeylElement {
            src: identity.0.to_vec(),
            sign: identity.1.to_vec(),
            word: vec![],
            length: 0,
        }];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut layer = vec![0usize];
        let mut length = 0;
        while !layer.is_empty() {
            let mut next: HashMap<Perm, Vec<usize>> = HashMap::new();
            let mut order: Vec<Perm> = Vec::new();
            for &e in &layer {
                let ek = elements[e].key();
                for (j, g) in gens.iter().enumerate() {
                    let p = compose_perm(&ek, g);
                    if index.contains_key(&p) {
                        continue;
                    }
                    let mut w = elements[e].word.clone();
                    w.push(j);
                    match next.get_mut(&p) {
                        Some(best) => {
                            if w < *best {
                                *best = w;
                            }
                        }
                        None => {
                            order.push(p.clone());
                            next.insert(p, w);
                        }
                    }
                }
            }
            length += 1;
            layer.clear();
            for p in order {
                let word = next.remove(&p).expect("present");
                let idx = elements.len();
                elements.push(WeylElement {
                    src: p.0.to_vec(),
                    sign: p.1.to_vec(),
                    word,
                    length,
                });
                index.insert(p, idx);
                layer.push(idx);
            }
            limits::check("Weyl group", elements.len() as u128)?;
        }
        elements.sort_by(|a, b| (a.length, &a.word).cmp(&(b.length, &b.word)));
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i))
            .collect();
        let simple = gens.iter().map(|g| index[g]).collect();
        Ok(WeylGroup {
            datum: Arc::clone(datum),
            elements,
            index,
            simple,
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// Elements of length exactly `p` (the set W(p)).
    pub fn of_length(&self, p: usize) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter().filter(move |e| e.length == p)
    }

    pub fn max_length(&self) -> usize {
        self.elements.iter().map(|e| e.length).max().unwrap_or(0)
    }

    pub fn simple_reflection(&self, j: usize) -> &WeylElement {
        &self.elements[self.simple[j]]
    }

    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> &WeylElement {
        &self.elements[self.index[&compose_perm(&u.key(), &v.key())]]
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        let n = w.src.len();
        let mut src = SmallVec::from_elem(0u8, n);
        let mut sign = SmallVec::from_elem(0i8, n);
        for i in 0..n {
            let k = w.src[i] as usize;
            src[k] = i as u8;
            sign[k] = w.sign[i];
        }
        &self.elements[self.index[&(src, sign)]]
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(&self, word: &[usize]) -> Result<&WeylElement> {
        let mut cur = self.identity();
        for &j in word {
            if j >= self.simple.len() {
                return Err(Error::precondition(format!(
                    "reflection index {j} out of range (0..{})",
                    self.simple.len()
                )));
            }
            cur = self.compose(cur, self.simple_reflection(j));
        }
        Ok(cur)
    }

    /// The element acting as the reflection in a non-isotropic even root.
    pub fn reflection(&self, alpha: &WeightVector) -> Result<&WeylElement> {
        let p =
            signed_perm_of_map(&self.datum, |x| self.datum.reflect(x, alpha)).ok_or_else(|| {
                Error::precondition(format!("{alpha} does not define a Weyl reflection"))
            })?;
        self.index
            .get(&p)
            .map(|&i| &self.elements[i])
            .ok_or_else(|| Error::precondition(format!("{alpha} is not an even root")))
    }

    /// |{α ∈ Δ₀⁺ : w(α) ∈ −Δ₀⁺}|.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let pos = self.datum.even_positive_roots();
        pos.iter().filter(|a| !pos.contains(&w.apply(a))).count()
    }

    pub fn dot(&self, w: &WeylElement, lambda: &WeightVector, borel: &BorelData) -> WeightVector {
        &w.apply(&(lambda + borel.rho())) - borel.rho()
    }

    pub fn circle(&self, w: &WeylElement, lambda: &WeightVector) -> WeightVector {
        let r = self.datum.rho0();
        &w.apply(&(lambda + r)) - r
    }

    /// Element `w` with `w(ν)` strictly dominant, or the walls through ν.
    pub fn regularize(
        &self,
        nu: &WeightVector,
    ) -> std::result::Result<(&WeylElement, WeightVector), Vec<WeightVector>> {
        let walls: Vec<WeightVector> = self
            .datum
            .even_positive_roots()
            .iter()
            .filter(|a| self.datum.pairing(nu, a).is_zero())
            .cloned()
            .collect();
        if !walls.is_empty() {
            return Err(walls);
        }
        let mut w = self.identity();
        let mut cur = nu.clone();
        'outer: loop {
            for (j, a) in self.datum.even_simple_roots().iter().enumerate() {
                if self.datum.coroot_pairing(&cur, a).is_negative() {
                    cur = self.datum.reflect(&cur, a);
                    w = self.compose(self.simple_reflection(j), w);
                    continue 'outer;
                }
            }
            break;
        }
        Ok((w, cur))
    }

    /// Chamber of λ for the circle (ρ₀-shifted) action.
    pub fn chamber_locate(&self, lambda: &WeightVector) -> Chamber {
        match self.regularize(&(lambda + self.datum.rho0())) {
            Ok((w, _)) => Chamber::Regular(w.clone()),
            Err(walls) => Chamber::Singular(walls),
        }
    }

    /// Strict chamber signature of ν: signs of ⟨ν, α⟩ over Δ₀⁺, `None` on a wall.
    pub fn chamber_signature(&self, nu: &WeightVector) -> Option<Vec<bool>> {
        let mut sig = Vec::with_capacity(self.datum.even_positive_roots().len());
        for a in self.datum.even_positive_roots() {
            let p = self.datum.pairing(nu, a) * self.datum.norm(a).signum();
            if p.is_zero() {
                return None;
            }
            sig.push(p.is_positive());
        }
        Some(sig)
    }

    /// Closed-chamber test: ν lies in the closure of the open chamber with signature `sig`.
    pub fn in_closed_chamber(&self, nu: &WeightVector, sig: &[bool]) -> bool {
        self.datum
            .even_positive_roots()
            .iter()
            .zip(sig.iter())
            .all(|(a, &pos)| {
                let p = self.datum.pairing(nu, a) * self.datum.norm(a).signum();
                if pos {
                    !p.is_negative()
                } else {
                    !p.is_positive()
                }
            })
    }

    /// Minimal-length representatives w¹ of W_l \ W for the Levi generated by
    /// the given Δ₀⁺-simple indices: (w¹)⁻¹(α) > 0 for every α in the subset.
    pub fn levi_coset_reps(&self, levi: &[usize]) -> Vec<WeylElement> {
        let roots: Vec<WeightVector> = levi
            .iter()
            .map(|&j| self.datum.even_simple_roots()[j].clone())
            .collect();
        self.coset_reps_for_roots(&roots)
    }

    /// Same as [`Self::levi_coset_reps`] for a Levi given by its simple roots.
    pub fn coset_reps_for_roots(&self, roots: &[WeightVector]) -> Vec<WeylElement> {
        let pos = self.datum.even_positive_roots();
        self.elements
            .iter()
            .filter(|w| {
                let inv = self.inverse(w);
                roots.iter().all(|a| pos.contains(&inv.apply(a)))
            })
            .cloned()
            .collect()
    }

    /// Subgroup generated by the given simple reflections.
    pub fn parabolic_subgroup(&self, levi: &[usize]) -> Vec<WeylElement> {
        self.elements
            .iter()
            .filter(|w| w.word.iter().all(|j| levi.contains(j)))
            .cloned()
            .collect()
    }
}
