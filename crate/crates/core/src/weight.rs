//! Exact weight vectors in the δ/ε coordinate basis.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exact rational scalar used throughout.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// A weight: δ coordinates first, then ε coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    n_delta: usize,
    coords: SmallVec<[Q; 6]>,
}

impl WeightVector {
    pub fn zero(n_delta: usize, n_epsilon: usize) -> Self {
        WeightVector {
            n_delta,
            coords: SmallVec::from_elem(Q::zero(), n_delta + n_epsilon),
        }
    }

    pub fn new(delta: &[Q], epsilon: &[Q]) -> Self {
        let mut coords = SmallVec::with_capacity(delta.len() + epsilon.len());
        coords.extend_from_slice(delta);
        coords.extend_from_slice(epsilon);
        WeightVector {
            n_delta: delta.len(),
            coords,
        }
    }

    /// Integer convenience constructor.
    pub fn from_ints(delta: &[i64], epsilon: &[i64]) -> Self {
        let d: Vec<Q> = delta.iter().map(|&x| q(x)).collect();
        let e: Vec<Q> = epsilon.iter().map(|&x| q(x)).collect();
        Self::new(&d, &e)
    }

    pub fn from_coords(n_delta: usize, coords: &[Q]) -> Self {
        assert!(n_delta <= coords.len());
        WeightVector {
            n_delta,
            coords: SmallVec::from_slice(coords),
        }
    }

    pub fn delta_unit(i: usize, n_delta: usize, n_epsilon: usize) -> Self {
        let mut w = Self::zero(n_delta, n_epsilon);
        w.coords[i] = Q::one();
        w
    }

    pub fn epsilon_unit(i: usize, n_delta: usize, n_epsilon: usize) -> Self {
        let mut w = Self::zero(n_delta, n_epsilon);
        w.coords[n_delta + i] = Q::one();
        w
    }

    pub fn n_delta(&self) -> usize {
        self.n_delta
    }

    pub fn n_epsilon(&self) -> usize {
        self.coords.len() - self.n_delta
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [Q] {
        &mut self.coords
    }

    pub fn delta_coords(&self) -> &[Q] {
        &self.coords[..self.n_delta]
    }

    pub fn epsilon_coords(&self) -> &[Q] {
        &self.coords[self.n_delta..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn same_shape(&self, other: &WeightVector) -> bool {
        self.n_delta == other.n_delta && self.coords.len() == other.coords.len()
    }

    pub fn scale(&self, c: Q) -> WeightVector {
        WeightVector {
            n_delta: self.n_delta,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Plain coordinate dot product (not the invariant form).
    pub fn euclid(&self, other: &WeightVector) -> Q {
        debug_assert!(self.same_shape(other));
        self.coords
            .iter()
            .zip(other.coords.iter())
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_integral_vector(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.coords
            .iter()
            .fold(1i64, |acc, c| num_integer::lcm(acc, *c.denom()))
    }

    /// Parses the compact serialized form `(d1, .. | e1, ..)`.
    pub fn from_compact(s: &str) -> Option<WeightVector> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (d, e) = inner.split_once('|')?;
        let parse_list = |part: &str| -> Option<Vec<Q>> {
            let part = part.trim();
            if part.is_empty() {
                return Some(Vec::new());
            }
            part.split(',')
                .map(|t| t.trim().parse::<Q>().ok())
                .collect()
        };
        Some(WeightVector::new(&parse_list(d)?, &parse_list(e)?))
    }

    pub fn to_compact(&self) -> String {
        let join = |xs: &[Q]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!(
            "({} | {})",
            join(self.delta_coords()),
            join(self.epsilon_coords())
        )
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Q, sym: &str) -> fmt::Result {
    if c.is_negative() {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let a = c.abs();
    if a.is_one() {
        write!(f, "{sym}")
    } else {
        write!(f, "{a}{sym}")
    }
}

impl fmt::Display for WeightVector {
    /// Symbolic literal form, e.g. `2d1+3e1-1/2e2`; the zero weight prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sym = if i < self.n_delta {
                format!("d{}", i + 1)
            } else {
                format!("e{}", i - self.n_delta + 1)
            };
            write_term(f, first, c, &sym)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_compact())
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        WeightVector::from_compact(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("malformed weight {s:?}")))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a WeightVector> for &'a WeightVector {
            type Output = WeightVector;
            fn $method(self, rhs: &'a WeightVector) -> WeightVector {
                assert!(self.same_shape(rhs), "weight shapes differ");
                WeightVector {
                    n_delta: self.n_delta,
                    coords: self.coords.iter().zip(rhs.coords.iter()).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<WeightVector> for WeightVector {
            type Output = WeightVector;
            fn $method(self, rhs: WeightVector) -> WeightVector {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a WeightVector> for WeightVector {
            type Output = WeightVector;
            fn $method(self, rhs: &'a WeightVector) -> WeightVector {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl AddAssign<&WeightVector> for WeightVector {
    fn add_assign(&mut self, rhs: &WeightVector) {
        assert!(self.same_shape(rhs), "weight shapes differ");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&WeightVector> for WeightVector {
    fn sub_assign(&mut self, rhs: &WeightVector) {
        assert!(self.same_shape(rhs), "weight shapes differ");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a -= b;
        }
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector {
            n_delta: self.n_delta,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        -&self
    }
}

impl Mul<&WeightVector> for Q {
    type Output = WeightVector;
    fn mul(self, rhs: &WeightVector) -> WeightVector {
        rhs.scale(self)
    }
}
