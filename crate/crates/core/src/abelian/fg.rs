use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntegerMatrix};

use crate::error::{Error, Result};

/// `Z/q_1 ⊕ ... ⊕ Z/q_r` with `q_i = 0` standing for `Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FgAbelian {
    orders: Vec<i64>,
}

impl FgAbelian {
    /// Orders must be `0` or at least `2`.
    pub fn new(orders: Vec<i64>) -> Result<Self> {
        if let Some(&q) = orders.iter().find(|&&q| q < 0 || q == 1) {
            return Err(Error::InvalidInput(format!("invalid cyclic order {q}")));
        }
        Ok(FgAbelian { orders })
    }

    pub fn trivial() -> Self {
        FgAbelian { orders: Vec::new() }
    }

    pub fn integers() -> Self {
        FgAbelian { orders: vec![0] }
    }

    pub fn cyclic(q: i64) -> Self {
        Self::new(vec![q]).expect("valid cyclic order")
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&q| q > 0)
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<i64> {
        self.is_finite().then(|| self.orders.iter().product())
    }

    pub fn reduce_value(q: i64, x: i64) -> i64 {
        if q == 0 {
            x
        } else {
            x.rem_euclid(q)
        }
    }

    pub fn reduce(&self, v: &mut [i64]) {
        debug_assert_eq!(v.len(), self.orders.len());
        for (x, &q) in v.iter_mut().zip(&self.orders) {
            *x = Self::reduce_value(q, *x);
        }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&mut v);
        v
    }

    /// The isomorphic group in invariant factor form `Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^f`, `d_i | d_{i+1}`.
    pub fn invariant_factors(&self) -> FgAbelian {
        let r = self.orders.len();
        let mut m = IntegerMatrix::zeros(r, r);
        for (i, &q) in self.orders.iter().enumerate() {
            m.add_to(i, i, q);
        }
        let smith = smith_normal_form(&m);
        let mut orders: Vec<i64> = smith
            .diagonal()
            .iter()
            .map(|d| d.to_i64().expect("orders fit in i64"))
            .filter(|&d| d != 1)
            .collect();
        orders.extend(std::iter::repeat_n(0, r - smith.rank()));
        FgAbelian { orders }
    }

    /// Whether the two groups are isomorphic.
    pub fn is_isomorphic(&self, other: &FgAbelian) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// All elements of a finite group, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for &q in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..q).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for FgAbelian {
    /// Prints `Z^a ⊕ Z/q ⊕ ...`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = self.orders.iter().filter(|&&q| q == 0).count();
        let mut parts = Vec::new();
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.orders.iter().filter(|&&q| q != 0).map(|q| format!("Z/{q}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}
