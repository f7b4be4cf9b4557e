//! Root data of the basic classical Lie superalgebras, Borel subalgebras with a
//! fixed even part, the ρ-triple and dominance tests.

use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::SpanBasis;
use crate::weight::{q, qq, WeightVector, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Supported algebra families. `Osp { m, n }` is osp(m|2n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    Osp { m: usize, n: usize },
    D21 { alpha: Q },
    F4,
    G3,
}

impl Family {
    pub fn is_exceptional(&self) -> bool {
        matches!(self, Family::D21 { .. } | Family::F4 | Family::G3)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gl { m, n } => write!(f, "gl({m}|{n})"),
            Family::Sl { m, n } => write!(f, "sl({m}|{n})"),
            Family::Osp { m, n } => write!(f, "osp({m}|{})", 2 * n),
            Family::D21 { alpha } => write!(f, "D(2,1;{alpha})"),
            Family::F4 => write!(f, "F(4)"),
            Family::G3 => write!(f, "G(3)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymbolKind {
    Delta,
    Epsilon,
}

/// One letter of an ε/δ word, e.g. `d2` or `-e3`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub index: usize,
    pub negative: bool,
}

impl Symbol {
    pub fn delta(index: usize) -> Symbol {
        Symbol {
            kind: SymbolKind::Delta,
            index,
            negative: false,
        }
    }
    pub fn epsilon(index: usize) -> Symbol {
        Symbol {
            kind: SymbolKind::Epsilon,
            index,
            negative: false,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            SymbolKind::Delta => 'd',
            SymbolKind::Epsilon => 'e',
        };
        write!(
            f,
            "{}{}{}",
            if self.negative { "-" } else { "" },
            c,
            self.index
        )
    }
}

/// Label of a Borel subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BorelWord {
    Symbols(Vec<Symbol>),
    Distinguished,
    /// Exceptional-family Borel reached by odd reflections.
    Unlabelled,
}

impl fmt::Display for BorelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BorelWord::Symbols(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
            BorelWord::Distinguished => write!(f, "distinguished"),
            BorelWord::Unlabelled => write!(f, "unlabelled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Constraint {
    None,
    /// sl(m|n): weights orthogonal to the supertrace vector.
    Supertrace,
    /// G(3): ε-coordinates sum to zero.
    EpsilonSumZero,
}

/// Root datum of a basic classical Lie superalgebra.
#[derive(Debug)]
pub struct RootDatum {
    family: Family,
    n_delta: usize,
    n_epsilon: usize,
    form: Vec<Q>,
    constraint: Constraint,
    cartan_dim: usize,
    even_positive: Vec<WeightVector>,
    even_simple: Vec<WeightVector>,
    odd_positive_distinguished: Vec<WeightVector>,
    rho0: WeightVector,
}

impl RootDatum {
    pub fn build(family: Family) -> Result<Arc<RootDatum>> {
        let (n_delta, n_epsilon, form, constraint, cartan_dim) = match &family {
            Family::Gl { m, n } | Family::Sl { m, n } => {
                if *m == 0 || *n == 0 {
                    return Err(Error::InvalidAlgebra(format!(
                        "{family}: m and n must be at least 1"
                    )));
                }
                let is_sl = matches!(family, Family::Sl { .. });
                if is_sl && m == n {
                    return Err(Error::InvalidAlgebra(format!(
                        "{family}: sl(n|n) has a degenerate form and is not supported"
                    )));
                }
                let mut form = vec![q(-1); *n];
                form.extend(std::iter::repeat(q(1)).take(*m));
                let c = if is_sl {
                    Constraint::Supertrace
                } else {
                    Constraint::None
                };
                (*n, *m, form, c, if is_sl { m + n - 1 } else { m + n })
            }
            Family::Osp { m, n } => {
                if *m == 0 || *n == 0 {
                    return Err(Error::InvalidAlgebra(format!(
                        "{family}: need m >= 1 and n >= 1"
                    )));
                }
                let d = m / 2;
                let mut form = vec![q(-1); *n];
                form.extend(std::iter::repeat(q(1)).take(d));
                (*n, d, form, Constraint::None, d + n)
            }
            Family::D21 { alpha } => {
                if alpha.is_zero() || *alpha == q(-1) {
                    return Err(Error::InvalidAlgebra(
                        "D(2,1;alpha) needs alpha not in {0, -1}".into(),
                    ));
                }
                (
                    1,
                    2,
                    vec![-(q(1) + alpha), q(1), *alpha],
                    Constraint::None,
                    3,
                )
            }
            Family::F4 => (1, 3, vec![q(-3), q(1), q(1), q(1)], Constraint::None, 4),
            Family::G3 => (
                1,
                3,
                vec![q(-2), q(3), q(3), q(3)],
                Constraint::EpsilonSumZero,
                3,
            ),
        };
        let z = WeightVector::zero(n_delta, n_epsilon);
        let d = |i: usize| WeightVector::delta_unit(i, n_delta, n_epsilon);
        let e = |i: usize| WeightVector::epsilon_unit(i, n_delta, n_epsilon);
        let (even, odd): (Vec<WeightVector>, Vec<WeightVector>) = match &family {
            Family::Gl { .. } | Family::Sl { .. } | Family::Osp { .. } => {
                let word = distinguished_word(&family);
                classical_word_roots(&family, n_delta, n_epsilon, &word)
            }
            Family::D21 { .. } => {
                let even = vec![d(0).scale(q(2)), e(0).scale(q(2)), e(1).scale(q(2))];
                let mut odd = Vec::new();
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        odd.push(&(&d(0) + &e(0).scale(q(s1))) + &e(1).scale(q(s2)));
                    }
                }
                (even, odd)
            }
            Family::F4 => {
                let mut even = vec![d(0)];
                for i in 0..3 {
                    even.push(e(i));
                    for j in (i + 1)..3 {
                        even.push(&e(i) - &e(j));
                        even.push(&e(i) + &e(j));
                    }
                }
                let mut odd = Vec::new();
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        for s3 in [1, -1] {
                            let v =
                                WeightVector::new(&[qq(1, 2)], &[qq(s1, 2), qq(s2, 2), qq(s3, 2)]);
                            odd.push(v);
                        }
                    }
                }
                (even, odd)
            }
            Family::G3 => {
                let g = |i: usize| {
                    let mut v = e(i);
                    for k in 0..3 {
                        v.coords_mut()[1 + k] -= qq(1, 3);
                    }
                    v
                };
                let even = vec![
                    d(0).scale(q(2)),
                    g(0),
                    g(1),
                    -g(2),
                    &g(1) - &g(0),
                    &g(0) - &g(2),
                    &g(1) - &g(2),
                ];
                let mut odd = vec![d(0)];
                for i in 0..3 {
                    odd.push(&d(0) + &g(i));
                    odd.push(&d(0) - &g(i));
                }
                (even, odd)
            }
        };
        let mut even_positive = even;
        even_positive.sort_by(|a, b| b.cmp(a));
        let mut odd_positive_distinguished = odd;
        odd_positive_distinguished.sort_by(|a, b| b.cmp(a));
        let even_simple = indecomposables(&even_positive, &even_positive);
        let mut rho0 = z.clone();
        for a in &even_positive {
            rho0 += a;
        }
        let rho0 = rho0.scale(qq(1, 2));
        let datum = RootDatum {
            family,
            n_delta,
            n_epsilon,
            form,
            constraint,
            cartan_dim,
            even_positive,
            even_simple,
            odd_positive_distinguished,
            rho0,
        };
        datum.validate()?;
        Ok(Arc::new(datum))
    }

    fn validate(&self) -> Result<()> {
        let even: BTreeSet<&WeightVector> = self.even_positive.iter().collect();
        for g in &self.odd_positive_distinguished {
            if even.contains(g) {
                return Err(Error::Consistency(format!("{g} is both even and odd")));
            }
        }
        if !self.in_weight_space(&self.rho0) {
            return Err(Error::Consistency(
                "rho0 is outside the weight space".into(),
            ));
        }
        Ok(())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn n_delta(&self) -> usize {
        self.n_delta
    }

    pub fn n_epsilon(&self) -> usize {
        self.n_epsilon
    }

    pub fn zero(&self) -> WeightVector {
        WeightVector::zero(self.n_delta, self.n_epsilon)
    }

    pub fn delta(&self, i: usize) -> WeightVector {
        WeightVector::delta_unit(i, self.n_delta, self.n_epsilon)
    }

    pub fn epsilon(&self, i: usize) -> WeightVector {
        WeightVector::epsilon_unit(i, self.n_delta, self.n_epsilon)
    }

    /// Diagonal entries of the invariant form in the coordinate basis.
    pub fn form_diagonal(&self) -> &[Q] {
        &self.form
    }

    pub fn pairing(&self, x: &WeightVector, y: &WeightVector) -> Q {
        debug_assert!(x.same_shape(y));
        x.coords()
            .iter()
            .zip(y.coords().iter())
            .zip(self.form.iter())
            .fold(Q::zero(), |acc, ((a, b), f)| acc + a * b * f)
    }

    pub fn norm(&self, x: &WeightVector) -> Q {
        self.pairing(x, x)
    }

    pub fn is_isotropic(&self, x: &WeightVector) -> bool {
        self.norm(x).is_zero()
    }

    pub fn coroot(&self, alpha: &WeightVector) -> Result<WeightVector> {
        let n = self.norm(alpha);
        if n.is_zero() {
            return Err(Error::precondition(format!(
                "{alpha} is isotropic and has no coroot"
            )));
        }
        Ok(alpha.scale(q(2) / n))
    }

    /// ⟨λ, α∨⟩ for a non-isotropic α.
    pub fn coroot_pairing(&self, lambda: &WeightVector, alpha: &WeightVector) -> Q {
        let n = self.norm(alpha);
        assert!(!n.is_zero(), "coroot pairing with isotropic root {alpha}");
        q(2) * self.pairing(lambda, alpha) / n
    }

    /// Orthogonal reflection in a non-isotropic α.
    pub fn reflect(&self, lambda: &WeightVector, alpha: &WeightVector) -> WeightVector {
        let c = self.coroot_pairing(lambda, alpha);
        lambda - &alpha.scale(c)
    }

    pub fn is_type_one(&self) -> bool {
        matches!(
            self.family,
            Family::Gl { .. } | Family::Sl { .. } | Family::Osp { m: 2, .. }
        )
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan_dim
    }

    pub fn dim_even(&self) -> usize {
        2 * self.even_positive.len() + self.cartan_dim
    }

    pub fn dim_odd(&self) -> usize {
        2 * self.odd_positive_distinguished.len()
    }

    pub fn even_positive_roots(&self) -> &[WeightVector] {
        &self.even_positive
    }

    /// Simple roots of the even positive system Δ₀⁺.
    pub fn even_simple_roots(&self) -> &[WeightVector] {
        &self.even_simple
    }

    pub fn odd_positive_distinguished(&self) -> &[WeightVector] {
        &self.odd_positive_distinguished
    }

    /// Δ₁ = Δ₁⁺ ∪ −Δ₁⁺ (independent of the Borel).
    pub fn odd_roots(&self) -> Vec<WeightVector> {
        let mut all: Vec<WeightVector> = self.odd_positive_distinguished.clone();
        all.extend(self.odd_positive_distinguished.iter().map(|g| -g));
        all
    }

    pub fn rho0(&self) -> &WeightVector {
        &self.rho0
    }

    /// Projects onto the weight space of the algebra (identity except for sl and G(3)).
    pub fn normalize(&self, v: &WeightVector) -> WeightVector {
        match self.constraint {
            Constraint::None => v.clone(),
            Constraint::Supertrace => {
                let s = self.supertrace_vector();
                let t = self.pairing(v, &s) / self.pairing(&s, &s);
                v - &s.scale(t)
            }
            Constraint::EpsilonSumZero => {
                let mut w = v.clone();
                let mean = v.epsilon_coords().iter().fold(Q::zero(), |a, b| a + b) / q(3);
                for c in &mut w.coords_mut()[self.n_delta..] {
                    *c -= mean;
                }
                w
            }
        }
    }

    pub fn in_weight_space(&self, v: &WeightVector) -> bool {
        v.n_delta() == self.n_delta && v.n_epsilon() == self.n_epsilon && &self.normalize(v) == v
    }

    fn supertrace_vector(&self) -> WeightVector {
        let mut s = self.zero();
        for i in 0..self.n_delta {
            s.coords_mut()[i] = q(-1);
        }
        for i in 0..self.n_epsilon {
            s.coords_mut()[self.n_delta + i] = q(1);
        }
        s
    }

    /// ⟨λ, α∨⟩ ∈ ℤ for every even root.
    pub fn is_g0_integral(&self, lambda: &WeightVector) -> bool {
        self.even_simple
            .iter()
            .all(|a| self.coroot_pairing(lambda, a).is_integer())
    }

    /// ⟨λ, α∨⟩ ∈ ℤ≥0 for every Δ₀⁺-simple α.
    pub fn is_g0_dominant(&self, lambda: &WeightVector) -> bool {
        self.first_g0_violation(lambda).is_none()
    }

    pub fn first_g0_violation(&self, lambda: &WeightVector) -> Option<WeightVector> {
        self.even_simple
            .iter()
            .find(|a| {
                let c = self.coroot_pairing(lambda, a);
                !c.is_integer() || c.is_negative()
            })
            .cloned()
    }

    /// Expected symbol multiset of a word, for diagnostics.
    pub fn word_symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = (1..=self.n_epsilon).map(Symbol::epsilon).collect();
        v.extend((1..=self.n_delta).map(Symbol::delta));
        v
    }
}

/// Elements of `set` that are not a sum of two elements of `pool` (repetition allowed).
fn indecomposables(set: &[WeightVector], pool: &[WeightVector]) -> Vec<WeightVector> {
    let sums: BTreeSet<WeightVector> = pool
        .iter()
        .enumerate()
        .flat_map(|(i, a)| pool[i..].iter().map(move |b| a + b))
        .collect();
    set.iter().filter(|x| !sums.contains(*x)).cloned().collect()
}

fn distinguished_word(family: &Family) -> Vec<Symbol> {
    match family {
        Family::Gl { m, n } | Family::Sl { m, n } => {
            let mut w: Vec<Symbol> = (1..=*m).map(Symbol::epsilon).collect();
            w.extend((1..=*n).map(Symbol::delta));
            w
        }
        Family::Osp { m: 2, n } => {
            let mut w = vec![Symbol::epsilon(1)];
            w.extend((1..=*n).map(Symbol::delta));
            w
        }
        Family::Osp { m, n } => {
            let mut w: Vec<Symbol> = (1..=*n).map(Symbol::delta).collect();
            w.extend((1..=m / 2).map(Symbol::epsilon));
            w
        }
        _ => vec![],
    }
}

fn symbol_vector(s: &Symbol, n_delta: usize, n_epsilon: usize) -> WeightVector {
    let v = match s.kind {
        SymbolKind::Delta => WeightVector::delta_unit(s.index - 1, n_delta, n_epsilon),
        SymbolKind::Epsilon => WeightVector::epsilon_unit(s.index - 1, n_delta, n_epsilon),
    };
    if s.negative {
        -v
    } else {
        v
    }
}

/// (even positive, odd positive) roots determined by a classical word.
fn classical_word_roots(
    family: &Family,
    n_delta: usize,
    n_epsilon: usize,
    word: &[Symbol],
) -> (Vec<WeightVector>, Vec<WeightVector>) {
    let vecs: Vec<WeightVector> = word
        .iter()
        .map(|s| symbol_vector(s, n_delta, n_epsilon))
        .collect();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let is_osp = matches!(family, Family::Osp { .. });
    let odd_m = matches!(family, Family::Osp { m, .. } if m % 2 == 1);
    for a in 0..word.len() {
        for b in (a + 1)..word.len() {
            let same = word[a].kind == word[b].kind;
            let target = if same { &mut even } else { &mut odd };
            target.push(&vecs[a] - &vecs[b]);
            if is_osp {
                target.push(&vecs[a] + &vecs[b]);
            }
        }
        if is_osp {
            match word[a].kind {
                SymbolKind::Delta => {
                    even.push(vecs[a].scale(q(2)));
                    if odd_m {
                        odd.push(vecs[a].clone());
                    }
                }
                SymbolKind::Epsilon => {
                    if odd_m {
                        even.push(vecs[a].clone());
                    }
                }
            }
        }
    }
    (even, odd)
}

/// A simple root of a Borel subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRoot {
    pub root: WeightVector,
    pub parity: Parity,
    pub isotropic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DominanceScope {
    G0,
    G,
}

/// A Borel subalgebra containing the fixed even Borel.
#[derive(Clone, Debug)]
pub struct BorelData {
    datum: Arc<RootDatum>,
    word: BorelWord,
    odd_positive: Vec<WeightVector>,
    simple: Vec<SimpleRoot>,
    rho1: WeightVector,
    rho: WeightVector,
    basis: SpanBasis,
    hidden_paths: Arc<OnceLock<Vec<Vec<WeightVector>>>>,
}

impl PartialEq for BorelData {
    fn eq(&self, other: &Self) -> bool {
        self.datum.family == other.datum.family && self.odd_positive == other.odd_positive
    }
}

impl Eq for BorelData {}

impl BorelData {
    pub fn distinguished(datum: &Arc<RootDatum>) -> BorelData {
        let word = if datum.family.is_exceptional() {
            BorelWord::Distinguished
        } else {
            BorelWord::Symbols(distinguished_word(&datum.family))
        };
        Self::assemble(datum, word, datum.odd_positive_distinguished.clone())
            .expect("distinguished Borel tables are consistent")
    }

    /// Borel determined by an ε/δ word (classical families) or the distinguished marker.
    pub fn from_word(datum: &Arc<RootDatum>, word: &BorelWord) -> Result<BorelData> {
        match word {
            BorelWord::Distinguished => Ok(Self::distinguished(datum)),
            BorelWord::Unlabelled => Err(Error::precondition(
                "an unlabelled Borel cannot be built from a word",
            )),
            BorelWord::Symbols(symbols) => {
                if datum.family.is_exceptional() {
                    return Err(Error::precondition(format!(
                        "{} accepts only the word 'distinguished'",
                        datum.family
                    )));
                }
                let symbols = validate_word(datum, symbols)?;
                let (even, odd) =
                    classical_word_roots(&datum.family, datum.n_delta, datum.n_epsilon, &symbols);
                let even_set: BTreeSet<WeightVector> = even.into_iter().collect();
                let fixed: BTreeSet<WeightVector> = datum.even_positive.iter().cloned().collect();
                if even_set != fixed {
                    return Err(Error::precondition("word changes the even positive system"));
                }
                let mut odd = odd;
                odd.sort_by(|a, b| b.cmp(a));
                Self::assemble(datum, BorelWord::Symbols(symbols), odd)
            }
        }
    }

    /// Borel with the given odd positive roots (even part fixed).
    pub fn from_odd_positive(
        datum: &Arc<RootDatum>,
        mut odd: Vec<WeightVector>,
    ) -> Result<BorelData> {
        odd.sort_by(|a, b| b.cmp(a));
        odd.dedup();
        let word = if datum.family.is_exceptional() {
            if odd == datum.odd_positive_distinguished {
                BorelWord::Distinguished
            } else {
                BorelWord::Unlabelled
            }
        } else {
            match classical_word_for(datum, &odd) {
                Some(w) => BorelWord::Symbols(w),
                None => {
                    return Err(Error::precondition(
                        "odd roots do not form a positive system",
                    ))
                }
            }
        };
        Self::assemble(datum, word, odd)
    }

    fn assemble(
        datum: &Arc<RootDatum>,
        word: BorelWord,
        odd: Vec<WeightVector>,
    ) -> Result<BorelData> {
        let mut all: Vec<WeightVector> = datum.even_positive.clone();
        all.extend(odd.iter().cloned());
        let mut simple_vecs = indecomposables(&all, &all);
        simple_vecs.sort_by(|a, b| b.cmp(a));
        let odd_set: BTreeSet<&WeightVector> = odd.iter().collect();
        let simple: Vec<SimpleRoot> = simple_vecs
            .iter()
            .map(|r| SimpleRoot {
                root: r.clone(),
                parity: if odd_set.contains(r) {
                    Parity::Odd
                } else {
                    Parity::Even
                },
                isotropic: datum.is_isotropic(r),
            })
            .collect();
        let basis = SpanBasis::new(simple_vecs.clone())
            .ok_or_else(|| Error::Consistency("simple roots are linearly dependent".into()))?;
        for r in &all {
            let c = basis.coefficients(r).ok_or_else(|| {
                Error::Consistency(format!("root {r} is outside the simple span"))
            })?;
            if c.iter().any(|x| x.is_negative() || !x.is_integer()) {
                return Err(Error::Consistency(format!(
                    "root {r} is not a non-negative simple combination"
                )));
            }
        }
        let mut rho1 = datum.zero();
        for g in &odd {
            rho1 += g;
        }
        let rho1 = rho1.scale(qq(1, 2));
        let rho = &datum.rho0 - &rho1;
        Ok(BorelData {
            datum: Arc::clone(datum),
            word,
            odd_positive: odd,
            simple,
            rho1,
            rho,
            basis,
            hidden_paths: Arc::new(OnceLock::new()),
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn word(&self) -> &BorelWord {
        &self.word
    }

    pub fn is_distinguished(&self) -> bool {
        self.odd_positive == self.datum.odd_positive_distinguished
    }

    pub fn odd_positive(&self) -> &[WeightVector] {
        &self.odd_positive
    }

    pub fn even_positive(&self) -> &[WeightVector] {
        &self.datum.even_positive
    }

    pub fn positive_roots(&self) -> Vec<(WeightVector, Parity)> {
        let mut v: Vec<(WeightVector, Parity)> = self
            .datum
            .even_positive
            .iter()
            .map(|r| (r.clone(), Parity::Even))
            .collect();
        v.extend(self.odd_positive.iter().map(|r| (r.clone(), Parity::Odd)));
        v
    }

    pub fn isotropic_positive(&self) -> Vec<WeightVector> {
        self.odd_positive
            .iter()
            .filter(|g| self.datum.is_isotropic(g))
            .cloned()
            .collect()
    }

    pub fn simple_roots(&self) -> &[SimpleRoot] {
        &self.simple
    }

    pub fn is_simple(&self, root: &WeightVector) -> bool {
        self.simple.iter().any(|s| &s.root == root)
    }

    pub fn rho0(&self) -> &WeightVector {
        &self.datum.rho0
    }

    pub fn rho1(&self) -> &WeightVector {
        &self.rho1
    }

    pub fn rho(&self) -> &WeightVector {
        &self.rho
    }

    /// Height: the linear functional equal to 1 on every simple root.
    pub fn height(&self, v: &WeightVector) -> Q {
        self.basis.level(v)
    }

    pub fn height_functional(&self) -> WeightVector {
        self.basis
            .level_functional()
            .cloned()
            .unwrap_or_else(|| self.datum.zero())
    }

    pub fn simple_coefficients(&self, v: &WeightVector) -> Option<Vec<Q>> {
        self.basis.coefficients(v)
    }

    /// λ ≥ μ: λ − μ is a non-negative combination of simple roots.
    pub fn geq(&self, lambda: &WeightVector, mu: &WeightVector) -> bool {
        match self.basis.coefficients(&(lambda - mu)) {
            Some(c) => c.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    /// λ > μ in the standard order.
    pub fn gt(&self, lambda: &WeightVector, mu: &WeightVector) -> bool {
        lambda != mu && self.geq(lambda, mu)
    }

    /// Reflection replacing the simple isotropic root γ by −γ.
    pub fn odd_reflect(&self, gamma: &WeightVector) -> Result<BorelData> {
        let s = self
            .simple
            .iter()
            .find(|s| &s.root == gamma)
            .ok_or_else(|| {
                Error::precondition(format!("{gamma} is not a simple root of this Borel"))
            })?;
        if !s.isotropic {
            return Err(Error::precondition(format!("{gamma} is not isotropic")));
        }
        let mut odd: Vec<WeightVector> = self
            .odd_positive
            .iter()
            .filter(|g| *g != gamma)
            .cloned()
            .collect();
        odd.push(-gamma);
        BorelData::from_odd_positive(&self.datum, odd)
    }

    /// Odd-reflection sequence from this Borel to one where α or α/2 is simple,
    /// for each Δ₀⁺-simple α (shortest, ties broken by root order).
    pub fn hidden_paths(&self) -> &[Vec<WeightVector>] {
        self.hidden_paths.get_or_init(|| {
            self.datum
                .even_simple
                .iter()
                .map(|a| {
                    let half = a.scale(qq(1, 2));
                    shortest_path_to(self, |b| b.is_simple(a) || b.is_simple(&half))
                        .expect("every even simple root is simple or half-simple in some Borel")
                })
                .collect()
        })
    }

    /// Integral dominance. Scope `G0` tests ⟨λ,α∨⟩ ∈ ℤ≥0 for Δ₀⁺-simple α;
    /// scope `G` additionally requires the same after transporting λ (as a highest
    /// weight of a simple module) to a Borel where α or α/2 is simple.
    pub fn is_integral_dominant(&self, lambda: &WeightVector, scope: DominanceScope) -> bool {
        if !self.datum.is_g0_dominant(lambda) {
            return false;
        }
        if scope == DominanceScope::G0 {
            return true;
        }
        let paths = self.hidden_paths();
        for (alpha, path) in self.datum.even_simple.iter().zip(paths.iter()) {
            if path.is_empty() {
                continue;
            }
            let mut mu = lambda.clone();
            for g in path {
                if !self.datum.pairing(&mu, g).is_zero() {
                    mu = &mu - g;
                }
            }
            let c = self.datum.coroot_pairing(&mu, alpha);
            if !c.is_integer() || c.is_negative() {
                return false;
            }
        }
        true
    }

    pub fn is_dominant(&self, lambda: &WeightVector) -> bool {
        self.is_integral_dominant(lambda, DominanceScope::G)
    }
}

/// BFS over odd reflections; returns the reflecting roots of a shortest path.
pub(crate) fn shortest_path_to(
    start: &BorelData,
    target: impl Fn(&BorelData) -> bool,
) -> Result<Vec<WeightVector>> {
    if target(start) {
        return Ok(vec![]);
    }
    let mut seen: HashMap<Vec<WeightVector>, ()> = HashMap::new();
    seen.insert(start.odd_positive.clone(), ());
    let mut queue: VecDeque<(BorelData, Vec<WeightVector>)> = VecDeque::new();
    queue.push_back((start.clone(), vec![]));
    while let Some((b, path)) = queue.pop_front() {
        let mut gammas: Vec<WeightVector> = b
            .simple
            .iter()
            .filter(|s| s.isotropic)
            .map(|s| s.root.clone())
            .collect();
        gammas.sort();
        for g in gammas {
            let nb = b.odd_reflect(&g)?;
            if seen.contains_key(&nb.odd_positive) {
                continue;
            }
            let mut np = path.clone();
            np.push(g);
            if target(&nb) {
                return Ok(np);
            }
            seen.insert(nb.odd_positive.clone(), ());
            limits::check("Borel graph search", seen.len() as u128)?;
            queue.push_back((nb, np));
        }
    }
    Err(Error::NotApplicable(
        "no Borel subalgebra satisfies the search target".into(),
    ))
}

fn validate_word(datum: &RootDatum, symbols: &[Symbol]) -> Result<Vec<Symbol>> {
    let expected = datum.word_symbols();
    let expected_str: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    let complain = |why: &str| {
        Error::precondition(format!(
            "{why}; expected a shuffle of {{{}}}",
            expected_str.join(", ")
        ))
    };
    let mut unsigned: Vec<Symbol> = symbols
        .iter()
        .map(|s| Symbol {
            negative: false,
            ..*s
        })
        .collect();
    unsigned.sort();
    let mut exp_sorted = expected.clone();
    exp_sorted.sort();
    if unsigned != exp_sorted {
        return Err(complain("word has the wrong symbol multiset"));
    }
    for kind in [SymbolKind::Delta, SymbolKind::Epsilon] {
        let idx: Vec<usize> = symbols
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.index)
            .collect();
        if idx.windows(2).any(|w| w[0] > w[1]) {
            return Err(complain(
                "symbols of each kind must appear in increasing index order",
            ));
        }
    }
    let even_osp = matches!(datum.family, Family::Osp { m, .. } if m % 2 == 0);
    let mut out = symbols.to_vec();
    for (pos, s) in symbols.iter().enumerate() {
        if !s.negative {
            continue;
        }
        let last_eps = s.kind == SymbolKind::Epsilon && s.index == datum.n_epsilon;
        if !(even_osp && last_eps) {
            return Err(complain("only the last ε of osp(2d|2n) may carry a sign"));
        }
        if !symbols[pos + 1..]
            .iter()
            .any(|t| t.kind == SymbolKind::Delta)
        {
            out[pos].negative = false;
        }
    }
    Ok(out)
}

/// Recovers a signed ε/δ word from an odd positive system (classical families).
fn classical_word_for(datum: &RootDatum, odd: &[WeightVector]) -> Option<Vec<Symbol>> {
    let base = datum.word_symbols();
    let even_osp =
        matches!(datum.family, Family::Osp { m, .. } if m % 2 == 0) && datum.n_epsilon > 0;
    let target: BTreeSet<&WeightVector> = odd.iter().collect();
    let even: BTreeSet<&WeightVector> = datum.even_positive.iter().collect();
    let signs: &[bool] = if even_osp { &[false, true] } else { &[false] };
    for &neg in signs {
        let mut syms = base.clone();
        if neg {
            for s in syms.iter_mut() {
                if s.kind == SymbolKind::Epsilon && s.index == datum.n_epsilon {
                    s.negative = true;
                }
            }
        }
        let vecs: Vec<WeightVector> = syms
            .iter()
            .map(|s| symbol_vector(s, datum.n_delta, datum.n_epsilon))
            .collect();
        let positive = |v: &WeightVector| target.contains(v) || even.contains(v);
        let mut keyed: Vec<(usize, Symbol)> = (0..syms.len())
            .map(|i| {
                let before = (0..syms.len())
                    .filter(|&j| j != i && positive(&(&vecs[j] - &vecs[i])))
                    .count();
                (before, syms[i])
            })
            .collect();
        keyed.sort();
        let word: Vec<Symbol> = keyed.into_iter().map(|(_, s)| s).collect();
        let Ok(word) = validate_word(datum, &word) else {
            continue;
        };
        let (ev, od) = classical_word_roots(&datum.family, datum.n_delta, datum.n_epsilon, &word);
        let ev: BTreeSet<WeightVector> = ev.into_iter().collect();
        let od: BTreeSet<WeightVector> = od.into_iter().collect();
        let od_ref: BTreeSet<&WeightVector> = od.iter().collect();
        let ev_ref: BTreeSet<&WeightVector> = ev.iter().collect();
        if od_ref == target && ev_ref == even {
            return Some(word);
        }
    }
    None
}

/// Convenience: builds the datum and its distinguished Borel.
pub fn distinguished(family: Family) -> Result<BorelData> {
    let d = RootDatum::build(family)?;
    Ok(BorelData::distinguished(&d))
}
