//! Atypical blocks of osp(m|2) with the distinguished Borel: chain indexing,
//! simple characters from BGG-type resolutions, Kac and projective radical
//! layers, and Kostant (co)homology tables.

use crate::characters::{
    divide_by_one_minus, euler_characteristic, EvenCharacters, FormalCharacter, VirtualG0Sum,
    Window,
};
use crate::error::{Error, Result};
use crate::genericity::{typicality, Typicality};
use crate::limits;
use crate::root_datum::{BorelData, Family};
use crate::weight::{q, WeightVector, Q};
use crate::weyl::{WeylElement, WeylGroup};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Dominant weights linked to λ by a defect-one central character: the
/// members of w(λ + ρ + tγ) − ρ inside the radius, with γ the atypical root.
pub fn block_members(
    group: &WeylGroup,
    borel: &BorelData,
    lambda: &WeightVector,
    radius: i64,
) -> Result<(WeightVector, Vec<WeightVector>)> {
    let gamma = match typicality(lambda, borel) {
        Typicality::Typical => return Err(Error::precondition(format!("{lambda} is typical"))),
        Typicality::Atypical {
            degree, orthogonal, ..
        } if degree == 1 => orthogonal[0].clone(),
        Typicality::Atypical { degree, .. } => {
            return Err(Error::NotApplicable(format!(
                "{lambda} has atypicality degree {degree}, expected 1"
            )))
        }
    };
    let rho = borel.rho();
    let base = lambda + rho;
    let spread = base
        .coords()
        .iter()
        .map(|c| c.abs().ceil().to_integer())
        .max()
        .unwrap_or(0);
    let span = radius + spread + 2;
    limits::check("block scan", (2 * span as u128 + 1) * group.len() as u128)?;
    let within = |w: &WeightVector| w.coords().iter().all(|c| c.abs() <= q(radius));
    let found: BTreeSet<WeightVector> = (-span..=span)
        .into_par_iter()
        .flat_map_iter(|t| {
            let nu = &base + &gamma.scale(q(t));
            group.elements().iter().map(move |w| &w.apply(&nu) - rho)
        })
        .filter(|mu| within(mu) && borel.is_dominant(mu))
        .collect();
    Ok((gamma, found.into_iter().collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuiverType {
    #[serde(rename = "Dinf")]
    DInfinity,
    #[serde(rename = "Ainfinf")]
    AInfinity,
}

impl fmt::Display for QuiverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuiverType::DInfinity => "D_inf",
            QuiverType::AInfinity => "A_inf^inf",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

/// Position λ^(k) (one-sided chains) or λ^(k)_± (two-sided chains).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainIndex {
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

impl ChainIndex {
    pub fn plain(k: i64) -> Self {
        ChainIndex { k, branch: None }
    }

    pub fn signed(k: i64, branch: Branch) -> Self {
        ChainIndex {
            k,
            branch: Some(branch),
        }
    }

    /// Same branch, position shifted by `d`; the bottom of a two-sided chain is shared.
    pub fn offset(&self, d: i64) -> Self {
        ChainIndex {
            k: self.k + d,
            branch: self.branch,
        }
    }
}

impl fmt::Display for ChainIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            None => write!(f, "λ^({})", self.k),
            Some(Branch::Plus) => write!(f, "λ^({})_+", self.k),
            Some(Branch::Minus) => write!(f, "λ^({})_-", self.k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartMember {
    pub index: ChainIndex,
    pub weight: WeightVector,
    pub atypical_root: WeightVector,
    /// δ-coordinate of λ + ρ.
    pub key: Q,
}

/// Radical layers of a module, top first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerTable {
    pub module: ChainIndex,
    pub layers: Vec<Vec<ChainIndex>>,
}

impl LayerTable {
    /// Composition multiplicity [M : L_index].
    pub fn multiplicity(&self, index: &ChainIndex) -> usize {
        self.layers.iter().flatten().filter(|i| *i == index).count()
    }
}

/// One row of a Kostant table: degree j and the weights spanning the space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub j: usize,
    pub labels: Vec<ChainIndex>,
    pub weights: Vec<WeightVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostantTable {
    pub module: ChainIndex,
    pub rows: Vec<HomologyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockChart {
    pub algebra: String,
    pub quiver_type: QuiverType,
    pub radius: i64,
    pub members: Vec<ChartMember>,
}

impl BlockChart {
    pub fn member(&self, index: &ChainIndex) -> Option<&ChartMember> {
        self.members.iter().find(|m| m.index == *index)
    }

    pub fn index_of(&self, weight: &WeightVector) -> Option<ChainIndex> {
        self.members
            .iter()
            .find(|m| m.weight == *weight)
            .map(|m| m.index)
    }

    pub fn indices(&self) -> Vec<ChainIndex> {
        self.members.iter().map(|m| m.index).collect()
    }

    /// Largest k present on every branch.
    pub fn max_k(&self) -> i64 {
        match self.quiver_type {
            QuiverType::DInfinity => self.members.iter().map(|m| m.index.k).max().unwrap_or(0),
            QuiverType::AInfinity => {
                let top = |b| {
                    self.members
                        .iter()
                        .filter(|m| m.index.branch == Some(b))
                        .map(|m| m.index.k)
                        .max()
                };
                top(Branch::Plus)
                    .unwrap_or(0)
                    .min(top(Branch::Minus).unwrap_or(0))
            }
        }
    }

    /// The s-fixed or lowest position.
    pub fn bottom(&self) -> ChainIndex {
        match self.quiver_type {
            QuiverType::DInfinity => ChainIndex::plain(0),
            QuiverType::AInfinity => ChainIndex::signed(0, Branch::Plus),
        }
    }

    /// Canonical form: λ^(0)_- is the same position as λ^(0)_+.
    fn canonical(&self, index: ChainIndex) -> ChainIndex {
        if self.quiver_type == QuiverType::AInfinity && index.k == 0 {
            ChainIndex::signed(0, Branch::Plus)
        } else {
            index
        }
    }
}

/// Full block report for the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub chart: BlockChart,
    pub simple_characters: Vec<(ChainIndex, VirtualG0Sum)>,
    pub kac_layers: Vec<LayerTable>,
    pub projective_layers: Vec<LayerTable>,
    pub kac_homology: Vec<KostantTable>,
    pub projective_cohomology: Vec<KostantTable>,
}

/// Shared data for block computations over osp(m|2), m ≥ 3, distinguished Borel.
pub struct BlockContext {
    group: Arc<WeylGroup>,
    borel: BorelData,
    even: Arc<EvenCharacters>,
    levi: EvenCharacters,
    s: WeylElement,
    two_delta: WeightVector,
    simple_cache: Mutex<BTreeMap<WeightVector, VirtualG0Sum>>,
}

impl BlockContext {
    pub fn new(
        group: Arc<WeylGroup>,
        borel: BorelData,
        even: Arc<EvenCharacters>,
    ) -> Result<BlockContext> {
        let dt = Arc::clone(borel.datum());
        match dt.family() {
            Family::Osp { m, n: 1 } if *m >= 3 => {}
            f => {
                return Err(Error::NotApplicable(format!(
                    "block charts are implemented for osp(m|2), m ≥ 3, not {f}"
                )))
            }
        }
        if !borel.is_distinguished() {
            return Err(Error::NotApplicable(
                "block charts need the distinguished Borel".into(),
            ));
        }
        let two_delta = dt.delta(0).scale(q(2));
        let s = group.reflection(&two_delta)?.clone();
        let levi_simple: Vec<WeightVector> = dt
            .even_simple_roots()
            .iter()
            .filter(|r| r.delta_coords()[0].is_zero())
            .cloned()
            .collect();
        let levi = EvenCharacters::for_subsystem(&dt, levi_simple);
        Ok(BlockContext {
            group,
            borel,
            even,
            levi,
            s,
            two_delta,
            simple_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn for_borel(borel: BorelData) -> Result<BlockContext> {
        let group = Arc::new(WeylGroup::generate(borel.datum())?);
        let even = Arc::new(EvenCharacters::new(borel.datum()));
        Self::new(group, borel, even)
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn borel(&self) -> &BorelData {
        &self.borel
    }

    pub fn even_characters(&self) -> &EvenCharacters {
        &self.even
    }

    /// s·λ for the reflection in 2δ.
    pub fn s_dot(&self, lambda: &WeightVector) -> WeightVector {
        self.group.dot(&self.s, lambda, &self.borel)
    }

    fn key(&self, lambda: &WeightVector) -> Q {
        (lambda + self.borel.rho()).delta_coords()[0]
    }

    fn trailing(&self, lambda: &WeightVector) -> Q {
        *(lambda + self.borel.rho())
            .epsilon_coords()
            .last()
            .expect("osp(m|2) with m ≥ 3 has ε coordinates")
    }

    /// Chart of the block of Λ within the radius.
    pub fn enumerate_block(&self, lambda: &WeightVector, radius: i64) -> Result<BlockChart> {
        if !self.borel.is_dominant(lambda) {
            return Err(Error::precondition(format!(
                "{lambda} is not integral dominant"
            )));
        }
        let (gamma, found) = block_members(&self.group, &self.borel, lambda, radius)?;
        if !found.contains(lambda) {
            return Err(Error::precondition(format!(
                "{lambda} lies outside radius {radius}; use a larger bound"
            )));
        }
        let dt = self.borel.datum();
        let atypical_root = |w: &WeightVector| match typicality(w, &self.borel) {
            Typicality::Atypical { orthogonal, .. } => orthogonal[0].clone(),
            Typicality::Typical => gamma.clone(),
        };
        let fixed: Vec<&WeightVector> = found.iter().filter(|w| self.key(w).is_zero()).collect();
        let quiver = if fixed.is_empty() {
            QuiverType::DInfinity
        } else {
            QuiverType::AInfinity
        };
        if let (Family::Osp { m, .. }, QuiverType::AInfinity) = (dt.family(), quiver) {
            if m % 2 == 1 {
                return Err(Error::Consistency(format!(
                    "two-sided chain found for {}",
                    dt.family()
                )));
            }
        }
        let mut members = Vec::new();
        let mk = |index: ChainIndex, w: &WeightVector| ChartMember {
            index,
            weight: w.clone(),
            atypical_root: atypical_root(w),
            key: self.key(w),
        };
        match quiver {
            QuiverType::DInfinity => {
                let negative: Vec<&WeightVector> =
                    found.iter().filter(|w| self.key(w).is_negative()).collect();
                let [bottom] = negative.as_slice() else {
                    return Err(Error::Consistency(format!(
                        "expected one dominant member with negative key, found {}",
                        negative.len()
                    )));
                };
                let mut positive: Vec<&WeightVector> =
                    found.iter().filter(|w| self.key(w).is_positive()).collect();
                positive.sort_by_key(|w| self.key(w));
                if positive
                    .windows(2)
                    .any(|p| self.key(p[0]) == self.key(p[1]))
                {
                    return Err(Error::Consistency("two chain members share a key".into()));
                }
                if positive.first().map(|w| **w != self.s_dot(bottom)) != Some(false) {
                    return Err(Error::precondition(format!(
                        "radius {radius} does not reach the bottom pair of the block; use a larger bound"
                    )));
                }
                members.push(mk(ChainIndex::plain(0), bottom));
                for (i, w) in positive.iter().enumerate() {
                    members.push(mk(ChainIndex::plain(i as i64 + 1), w));
                }
            }
            QuiverType::AInfinity => {
                let [bottom] = fixed.as_slice() else {
                    return Err(Error::Consistency("several s-fixed members".into()));
                };
                if self.s_dot(bottom) != **bottom {
                    return Err(Error::Consistency(format!(
                        "{bottom} has zero key but is not s-fixed"
                    )));
                }
                if found.iter().any(|w| self.key(w).is_negative()) {
                    return Err(Error::Consistency(
                        "two-sided chain with a negative key".into(),
                    ));
                }
                members.push(mk(ChainIndex::signed(0, Branch::Plus), bottom));
                for (branch, sign) in [(Branch::Plus, 1), (Branch::Minus, -1)] {
                    let mut side: Vec<&WeightVector> = found
                        .iter()
                        .filter(|w| self.key(w).is_positive())
                        .filter(|w| {
                            let t = self.trailing(w);
                            if sign > 0 {
                                t.is_positive()
                            } else {
                                t.is_negative()
                            }
                        })
                        .collect();
                    side.sort_by_key(|w| self.key(w));
                    for (i, w) in side.iter().enumerate() {
                        members.push(mk(ChainIndex::signed(i as i64 + 1, branch), w));
                    }
                }
                if members.len() != found.len() {
                    return Err(Error::Consistency(
                        "a chain member has zero trailing coordinate".into(),
                    ));
                }
            }
        }
        let chart = BlockChart {
            algebra: dt.family().to_string(),
            quiver_type: quiver,
            radius,
            members,
        };
        self.check_chart(&chart)?;
        Ok(chart)
    }

    fn check_chart(&self, chart: &BlockChart) -> Result<()> {
        for m in &chart.members {
            let image = self.s_dot(&m.weight);
            let expected = match (chart.quiver_type, m.index.k) {
                (QuiverType::DInfinity, 0) => Some(ChainIndex::plain(1)),
                (QuiverType::DInfinity, 1) => Some(ChainIndex::plain(0)),
                (QuiverType::AInfinity, 0) => Some(m.index),
                _ => None,
            };
            match expected {
                Some(e) => {
                    if chart.member(&e).map(|x| &x.weight) != Some(&image) {
                        return Err(Error::Consistency(format!("s·{} is not {e}", m.index)));
                    }
                }
                None => {
                    if self.borel.is_dominant(&image) {
                        return Err(Error::Consistency(format!("s·{} is dominant", m.index)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Chart whose positive section reaches position `k` on every branch.
    pub fn chart_reaching(&self, lambda: &WeightVector, k: i64) -> Result<BlockChart> {
        let start = lambda
            .coords()
            .iter()
            .map(|c| c.abs().ceil().to_integer())
            .max()
            .unwrap_or(0)
            + 2;
        let mut radius = start.max(4);
        loop {
            match self.enumerate_block(lambda, radius) {
                Ok(c) if c.max_k() >= k => return Ok(c),
                Ok(_) => {}
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
            radius *= 2;
            limits::check("block radius", radius as u128)?;
        }
    }

    /// Weight at any position; nonpositive positions off the bottom come from the s-action.
    pub fn weight_at(&self, chart: &BlockChart, index: &ChainIndex) -> Result<WeightVector> {
        let index = chart.canonical(*index);
        if let Some(m) = chart.member(&index) {
            return Ok(m.weight.clone());
        }
        let mirror = match chart.quiver_type {
            QuiverType::DInfinity if index.k < 0 => ChainIndex::plain(1 - index.k),
            QuiverType::AInfinity if index.k < 0 => ChainIndex {
                k: -index.k,
                branch: index.branch,
            },
            _ => {
                return Err(Error::precondition(format!(
                    "{index} is beyond the chart (radius {}); use a larger bound",
                    chart.radius
                )))
            }
        };
        let m = chart.member(&mirror).ok_or_else(|| {
            Error::precondition(format!(
                "{mirror} is beyond the chart (radius {}); use a larger bound",
                chart.radius
            ))
        })?;
        Ok(self.s_dot(&m.weight))
    }

    /// ch K̄_μ = ch L⁰_μ · ∏(1 + e^{−γ}) / (1 − e^{−2δ}) on the window.
    pub fn parabolic_verma_character(
        &self,
        mu: &WeightVector,
        window: &Window,
    ) -> Result<FormalCharacter> {
        let base = self.levi.simple_character(mu)?;
        let neg: Vec<WeightVector> = self.borel.odd_positive().iter().map(|g| -g).collect();
        let zero = self.borel.datum().zero();
        let f = base
            .tensor(&FormalCharacter::product_one_plus(&neg, &zero))
            .truncate(window);
        Ok(divide_by_one_minus(&f, &self.two_delta, window))
    }

    /// Window containing every weight of a finite-dimensional module with highest weight λ.
    fn exact_window(&self, lambda: &WeightVector) -> Window {
        let probe = Window::new(&self.borel, Q::zero());
        let floor = self
            .group
            .elements()
            .iter()
            .map(|w| probe.height(&w.apply(lambda)))
            .min()
            .unwrap_or_else(Q::zero);
        Window::new(&self.borel, floor)
    }

    /// Base simple characters from the infinite resolutions by K̄, summed until
    /// the highest weights of the terms leave the window.
    fn base_simple(&self, chart: &BlockChart, index: ChainIndex) -> Result<VirtualG0Sum> {
        let lambda = self.weight_at(chart, &index)?;
        let window = self.exact_window(&lambda);
        let mut acc = self.parabolic_verma_character(&lambda, &window)?;
        let mut j = 1i64;
        let tails: Vec<Option<Branch>> = match chart.quiver_type {
            QuiverType::DInfinity => vec![None],
            QuiverType::AInfinity => vec![Some(Branch::Plus), Some(Branch::Minus)],
        };
        let mut chart = chart.clone();
        loop {
            let mut any = false;
            for b in &tails {
                let idx = ChainIndex { k: -j, branch: *b };
                let w = match self.weight_at(&chart, &idx) {
                    Ok(w) => w,
                    Err(Error::Precondition(_)) => {
                        let anchor = chart
                            .member(&chart.bottom())
                            .expect("bottom")
                            .weight
                            .clone();
                        chart = self.chart_reaching(&anchor, chart.max_k() + 4)?;
                        self.weight_at(&chart, &idx)?
                    }
                    Err(e) => return Err(e),
                };
                if !window.contains(&w) {
                    continue;
                }
                any = true;
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc.add_assign(&self.parabolic_verma_character(&w, &window)?, sign);
            }
            if !any {
                break;
            }
            j += 1;
            limits::check("resolution length", j as u128)?;
        }
        if !acc.all_nonnegative() {
            let bad = acc
                .iter()
                .find(|(_, m)| **m < 0)
                .map(|(w, _)| w.clone())
                .expect("negative term");
            return Err(Error::Consistency(format!(
                "resolution for {index} did not stabilize at {bad}"
            )));
        }
        if acc.coefficient(&lambda) != 1 {
            return Err(Error::Consistency(format!(
                "resolution for {index} has leading coefficient ≠ 1"
            )));
        }
        self.even.decompose(&acc, |w| self.borel.height(w))
    }

    /// ch L for every chart position up to `k_max` on each branch.
    pub fn simple_characters(
        &self,
        chart: &BlockChart,
        k_max: i64,
    ) -> Result<BTreeMap<ChainIndex, VirtualG0Sum>> {
        let mut out = BTreeMap::new();
        match chart.quiver_type {
            QuiverType::DInfinity => {
                let l0 = self.base_simple(chart, ChainIndex::plain(0))?;
                let l1 = self.base_simple(chart, ChainIndex::plain(1))?;
                out.insert(ChainIndex::plain(0), l0.clone());
                out.insert(ChainIndex::plain(1), l1.clone());
                let mut prev = l1;
                for k in 2..=k_max {
                    let w = self.weight_at(chart, &ChainIndex::plain(k))?;
                    let mut ch = euler_characteristic(&self.group, &self.borel, &w)?;
                    ch.add_assign(&prev, -1);
                    if k == 2 {
                        ch.add_assign(&l0, -1);
                    }
                    out.insert(ChainIndex::plain(k), ch.clone());
                    prev = ch;
                }
            }
            QuiverType::AInfinity => {
                let bottom = chart.bottom();
                let l0 = self.base_simple(chart, bottom)?;
                out.insert(bottom, l0.clone());
                for b in [Branch::Plus, Branch::Minus] {
                    let mut prev = l0.clone();
                    for k in 1..=k_max {
                        let idx = ChainIndex::signed(k, b);
                        let w = self.weight_at(chart, &idx)?;
                        let mut ch = euler_characteristic(&self.group, &self.borel, &w)?;
                        ch.add_assign(&prev, -1);
                        out.insert(idx, ch.clone());
                        prev = ch;
                    }
                }
            }
        }
        for (idx, ch) in &out {
            let w = self.weight_at(chart, idx)?;
            if ch.coefficient(&w) != 1 || ch.terms().values().any(|m| *m < 0) {
                return Err(Error::Consistency(format!(
                    "simple character at {idx} is not a module character"
                )));
            }
        }
        Ok(out)
    }

    /// ch L_Λ for an arbitrary dominant Λ (typical or in an atypical block).
    pub fn simple_character(&self, lambda: &WeightVector) -> Result<VirtualG0Sum> {
        if let Some(c) = self.simple_cache.lock().expect("cache").get(lambda) {
            return Ok(c.clone());
        }
        let ch = if typicality(lambda, &self.borel).is_typical() {
            if !self.borel.is_dominant(lambda) {
                return Err(Error::precondition(format!(
                    "{lambda} is not integral dominant"
                )));
            }
            euler_characteristic(&self.group, &self.borel, lambda)?
        } else {
            let chart = self.chart_reaching(lambda, 1)?;
            let idx = chart.index_of(lambda).expect("chart contains its anchor");
            let chart = if idx.k + 1 > chart.max_k() {
                self.chart_reaching(lambda, idx.k + 1)?
            } else {
                chart
            };
            self.simple_characters(&chart, idx.k.max(1))?
                .remove(&idx)
                .expect("computed")
        };
        self.simple_cache
            .lock()
            .expect("cache")
            .insert(lambda.clone(), ch.clone());
        Ok(ch)
    }

    /// Radical layers of Kac modules, top first.
    pub fn kac_layers(&self, chart: &BlockChart, k_max: i64) -> Vec<LayerTable> {
        let mut out = Vec::new();
        match chart.quiver_type {
            QuiverType::DInfinity => {
                for k in 0..=k_max {
                    let top = vec![ChainIndex::plain(k)];
                    let layers = match k {
                        0 | 1 => vec![top],
                        2 => vec![top, vec![ChainIndex::plain(0), ChainIndex::plain(1)]],
                        _ => vec![top, vec![ChainIndex::plain(k - 1)]],
                    };
                    out.push(LayerTable {
                        module: ChainIndex::plain(k),
                        layers,
                    });
                }
            }
            QuiverType::AInfinity => {
                let bottom = chart.bottom();
                out.push(LayerTable {
                    module: bottom,
                    layers: vec![vec![bottom]],
                });
                for b in [Branch::Plus, Branch::Minus] {
                    for k in 1..=k_max {
                        let idx = ChainIndex::signed(k, b);
                        let below = chart.canonical(idx.offset(-1));
                        out.push(LayerTable {
                            module: idx,
                            layers: vec![vec![idx], vec![below]],
                        });
                    }
                }
            }
        }
        out
    }

    /// Radical layers of indecomposable projectives, top first.
    pub fn projective_layers(&self, chart: &BlockChart, k_max: i64) -> Vec<LayerTable> {
        let mut out = Vec::new();
        match chart.quiver_type {
            QuiverType::DInfinity => {
                for k in 0..=k_max {
                    let me = ChainIndex::plain(k);
                    let middle = match k {
                        0 | 1 => vec![ChainIndex::plain(2)],
                        2 => vec![
                            ChainIndex::plain(0),
                            ChainIndex::plain(1),
                            ChainIndex::plain(3),
                        ],
                        _ => vec![ChainIndex::plain(k - 1), ChainIndex::plain(k + 1)],
                    };
                    out.push(LayerTable {
                        module: me,
                        layers: vec![vec![me], middle, vec![me]],
                    });
                }
            }
            QuiverType::AInfinity => {
                let bottom = chart.bottom();
                out.push(LayerTable {
                    module: bottom,
                    layers: vec![
                        vec![bottom],
                        vec![
                            ChainIndex::signed(1, Branch::Plus),
                            ChainIndex::signed(1, Branch::Minus),
                        ],
                        vec![bottom],
                    ],
                });
                for b in [Branch::Plus, Branch::Minus] {
                    for k in 1..=k_max {
                        let me = ChainIndex::signed(k, b);
                        let middle = vec![chart.canonical(me.offset(-1)), me.offset(1)];
                        out.push(LayerTable {
                            module: me,
                            layers: vec![vec![me], middle, vec![me]],
                        });
                    }
                }
            }
        }
        out
    }

    /// ch P at a chart position: E(λ^(k)) + E(λ^(k+1)) where a Kac flag exists,
    /// otherwise the sum over the radical layers.
    pub fn projective_character(
        &self,
        chart: &BlockChart,
        index: &ChainIndex,
    ) -> Result<VirtualG0Sum> {
        let flagged = match chart.quiver_type {
            QuiverType::DInfinity => index.k >= 2,
            QuiverType::AInfinity => index.k >= 1,
        };
        if flagged {
            let mut ch =
                euler_characteristic(&self.group, &self.borel, &self.weight_at(chart, index)?)?;
            ch.add_assign(
                &euler_characteristic(
                    &self.group,
                    &self.borel,
                    &self.weight_at(chart, &index.offset(1))?,
                )?,
                1,
            );
            return Ok(ch);
        }
        let table = self
            .projective_layers(chart, index.k.max(1))
            .into_iter()
            .find(|t| t.module == *index)
            .ok_or_else(|| Error::precondition(format!("no projective at {index}")))?;
        let mut ch = VirtualG0Sum::new();
        for idx in table.layers.iter().flatten() {
            ch.add_assign(&self.simple_character(&self.weight_at(chart, idx)?)?, 1);
        }
        Ok(ch)
    }

    /// Ū-homology of Kac modules (degree 0 gives the top weight), rows 0..=j_max.
    pub fn kac_homology(
        &self,
        chart: &BlockChart,
        index: &ChainIndex,
        j_max: usize,
    ) -> Result<KostantTable> {
        let index = chart.canonical(*index);
        let mut rows = vec![HomologyRow {
            j: 0,
            labels: vec![index],
            weights: vec![self.weight_at(chart, &index)?],
        }];
        for j in 1..=j_max as i64 {
            let labels: Vec<ChainIndex> = match (chart.quiver_type, index.k) {
                (QuiverType::DInfinity, 0 | 1) => vec![ChainIndex::plain(-j)],
                (QuiverType::DInfinity, k) => {
                    vec![ChainIndex::plain(2 - j - k), ChainIndex::plain(1 - j - k)]
                }
                (QuiverType::AInfinity, 0) => {
                    vec![
                        ChainIndex::signed(-j, Branch::Plus),
                        ChainIndex::signed(-j, Branch::Minus),
                    ]
                }
                (QuiverType::AInfinity, k) => {
                    let b = index.branch.expect("signed index");
                    vec![
                        ChainIndex::signed(1 - j - k, b),
                        ChainIndex::signed(-j - k, b),
                    ]
                }
            };
            let labels: Vec<ChainIndex> = labels.into_iter().map(|l| chart.canonical(l)).collect();
            let weights = labels
                .iter()
                .map(|l| self.weight_at(chart, l))
                .collect::<Result<Vec<_>>>()?;
            rows.push(HomologyRow {
                j: j as usize,
                labels,
                weights,
            });
        }
        Ok(KostantTable {
            module: index,
            rows,
        })
    }

    /// Labels spanning H⁰(n, P) at a chart position.
    pub fn projective_h0_labels(&self, chart: &BlockChart, index: &ChainIndex) -> Vec<ChainIndex> {
        let index = chart.canonical(*index);
        match (chart.quiver_type, index.k) {
            (QuiverType::DInfinity, 0) => vec![index, ChainIndex::plain(2)],
            (QuiverType::AInfinity, 0) => {
                vec![
                    index,
                    ChainIndex::signed(1, Branch::Plus),
                    ChainIndex::signed(1, Branch::Minus),
                ]
            }
            _ => vec![index, index.offset(1)],
        }
    }

    /// n-cohomology of projectives: H^j = ⊕_{w ∈ W(j)} ℂ_{w·x} over H⁰ labels x.
    pub fn projective_cohomology(
        &self,
        chart: &BlockChart,
        index: &ChainIndex,
    ) -> Result<KostantTable> {
        let index = chart.canonical(*index);
        let labels = self.projective_h0_labels(chart, &index);
        let tops = labels
            .iter()
            .map(|l| self.weight_at(chart, l))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for j in 0..=self.group.max_length() {
            let mut weights = Vec::new();
            for w in self.group.of_length(j) {
                for t in &tops {
                    weights.push(self.group.dot(w, t, &self.borel));
                }
            }
            rows.push(HomologyRow {
                j,
                labels: if j == 0 { labels.clone() } else { Vec::new() },
                weights,
            });
        }
        Ok(KostantTable {
            module: index,
            rows,
        })
    }

    /// Everything the `block` command prints, up to position `k_max`.
    pub fn report(
        &self,
        lambda: &WeightVector,
        radius: i64,
        k_max: Option<i64>,
    ) -> Result<BlockReport> {
        let chart = self.enumerate_block(lambda, radius)?;
        let k_max = k_max.unwrap_or_else(|| chart.max_k() - 1).max(1);
        let deep = if chart.max_k() > k_max {
            chart.clone()
        } else {
            self.chart_reaching(lambda, k_max + 1)?
        };
        let simple = self.simple_characters(&deep, k_max)?;
        let positions: Vec<ChainIndex> = simple.keys().copied().collect();
        let kac_homology = positions
            .iter()
            .map(|i| self.kac_homology(&deep, i, 3))
            .collect::<Result<Vec<_>>>()?;
        let projective_cohomology = positions
            .iter()
            .map(|i| self.projective_cohomology(&deep, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockReport {
            chart,
            simple_characters: simple.into_iter().collect(),
            kac_layers: self.kac_layers(&deep, k_max),
            projective_layers: self.projective_layers(&deep, k_max),
            kac_homology,
            projective_cohomology,
        })
    }
}

/// g₀-content of L_Λ for osp(m|2) (m ≥ 3, distinguished Borel); `None` elsewhere.
pub fn simple_g0_content(
    group: &Arc<WeylGroup>,
    borel: &BorelData,
    even: &Arc<EvenCharacters>,
    lambda: &WeightVector,
) -> Result<Option<VirtualG0Sum>> {
    match BlockContext::new(Arc::clone(group), borel.clone(), Arc::clone(even)) {
        Ok(ctx) => ctx.simple_character(lambda).map(Some),
        Err(Error::NotApplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
