//! Small exact linear algebra over the rationals.

use crate::weight::{WeightVector, Q};
use num_traits::{One, Zero};

/// Inverts a square rational matrix; `None` if singular.
pub fn invert(matrix: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Q>> = matrix.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Coordinates of vectors with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    vectors: Vec<WeightVector>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<Q>>,
    functional: Option<WeightVector>,
}

impl SpanBasis {
    /// Returns `None` if the vectors are linearly dependent.
    pub fn new(vectors: Vec<WeightVector>) -> Option<SpanBasis> {
        let k = vectors.len();
        if k == 0 {
            return Some(SpanBasis {
                vectors,
                pivot_rows: vec![],
                pivot_inverse: vec![],
                functional: None,
            });
        }
        let dim = vectors[0].dim();
        // Row-reduce the dim x k matrix (columns = vectors) to pick k independent rows.
        let mut rows: Vec<Vec<Q>> = (0..dim)
            .map(|r| vectors.iter().map(|v| v.coords()[r]).collect())
            .collect();
        let mut chosen = Vec::new();
        let mut reduced: Vec<Vec<Q>> = Vec::new();
        for (r, row) in rows.iter_mut().enumerate() {
            let mut cur = row.clone();
            for red in reduced.iter() {
                let piv_col = red.iter().position(|x| !x.is_zero()).unwrap();
                let f = cur[piv_col] / red[piv_col];
                if !f.is_zero() {
                    for j in 0..k {
                        cur[j] -= f * red[j];
                    }
                }
            }
            if cur.iter().any(|x| !x.is_zero()) {
                chosen.push(r);
                reduced.push(cur);
                if chosen.len() == k {
                    break;
                }
            }
        }
        if chosen.len() < k {
            return None;
        }
        let square: Vec<Vec<Q>> = chosen
            .iter()
            .map(|&r| vectors.iter().map(|v| v.coords()[r]).collect())
            .collect();
        let pivot_inverse = invert(&square)?;
        // Functional u with u . v_i = 1, taken inside the span (Gram system).
        let gram: Vec<Vec<Q>> = vectors
            .iter()
            .map(|a| vectors.iter().map(|b| a.euclid(b)).collect())
            .collect();
        let gram_inv = invert(&gram)?;
        let mut functional = WeightVector::zero(vectors[0].n_delta(), vectors[0].n_epsilon());
        for (i, v) in vectors.iter().enumerate() {
            let x: Q = gram_inv[i].iter().fold(Q::zero(), |s, c| s + c);
            functional += &v.scale(x);
        }
        Some(SpanBasis {
            vectors,
            pivot_rows: chosen,
            pivot_inverse,
            functional: Some(functional),
        })
    }

    pub fn vectors(&self) -> &[WeightVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coefficients of `v` in the basis, or `None` if `v` is outside the span.
    pub fn coefficients(&self, v: &WeightVector) -> Option<Vec<Q>> {
        if self.vectors.is_empty() {
            return if v.is_zero() { Some(vec![]) } else { None };
        }
        let rhs: Vec<Q> = self.pivot_rows.iter().map(|&r| v.coords()[r]).collect();
        let c: Vec<Q> = self
            .pivot_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(rhs.iter())
                    .fold(Q::zero(), |s, (a, b)| s + a * b)
            })
            .collect();
        let mut back = WeightVector::zero(v.n_delta(), v.n_epsilon());
        for (ci, vi) in c.iter().zip(self.vectors.iter()) {
            if !ci.is_zero() {
                back += &vi.scale(*ci);
            }
        }
        if &back == v {
            Some(c)
        } else {
            None
        }
    }

    /// Linear functional taking the value 1 on every basis vector.
    pub fn level(&self, v: &WeightVector) -> Q {
        match &self.functional {
            Some(u) => u.euclid(v),
            None => Q::zero(),
        }
    }

    pub fn level_functional(&self) -> Option<&WeightVector> {
        self.functional.as_ref()
    }
}
