//! Exact integer matrices and Smith normal form.
//!
//! The elimination records its row and column operations instead of materializing `U` and `V`,
//! so a factorization can be replayed on right-hand sides cheaply. It first runs on `i64` with
//! overflow checks and restarts on `BigInt` if any intermediate value leaves that range.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] += x;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum RowOp<T> {
    Swap(usize, usize),
    /// `row[target] += k * row[src]`
    Add { target: usize, src: usize, k: T },
    Neg(usize),
}

#[derive(Clone, Debug)]
enum ColOp<T> {
    Swap(usize, usize),
    /// `col[target] += k * col[src]`
    Add { target: usize, src: usize, k: T },
    /// Right multiplication by `[[m0, m1], [m2, m3]]` placed on columns `i`, `j`.
    Mix { i: usize, j: usize, m: [T; 4] },
}

/// Entry type for the elimination; arithmetic returns `None` on overflow.
trait Entry: Clone + PartialEq + fmt::Debug {
    fn e_one() -> Self;
    fn e_is_zero(&self) -> bool;
    fn e_is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn mul_add(&self, k: &Self, x: &Self) -> Option<Self>;
    fn e_mul(&self, other: &Self) -> Option<Self>;
    fn e_neg(&self) -> Option<Self>;
    fn div_floor(&self, d: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self);
    fn big(&self) -> BigInt;
}

impl Entry for i64 {
    fn e_one() -> Self {
        1
    }
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn e_is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn mul_add(&self, k: &Self, x: &Self) -> Option<Self> {
        k.checked_mul(*x).and_then(|p| self.checked_add(p))
    }
    fn e_mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn e_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn e_one() -> Self {
        One::one()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn e_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn mul_add(&self, k: &Self, x: &Self) -> Option<Self> {
        Some(self + k * x)
    }
    fn e_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn e_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

struct Elimination<T> {
    diagonal: Vec<T>,
    row_ops: Vec<RowOp<T>>,
    col_ops: Vec<ColOp<T>>,
}

fn eliminate<T: Entry>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Elimination<T>> {
    let m = a.len();
    let n = cols;
    let mut row_ops = Vec::new();
    let mut col_ops = Vec::new();
    let mut t = 0;
    while t < m && t < n {
        let Some(j) = (t..n).find(|&j| (t..m).any(|i| !a[i][j].e_is_zero())) else {
            break;
        };
        if j != t {
            for row in a.iter_mut() {
                row.swap(j, t);
            }
            col_ops.push(ColOp::Swap(t, j));
        }
        loop {
            let p = (t..m)
                .filter(|&i| !a[i][t].e_is_zero())
                .min_by(|&x, &y| {
                    if a[x][t].abs_lt(&a[y][t]) {
                        std::cmp::Ordering::Less
                    } else if a[y][t].abs_lt(&a[x][t]) {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    }
                })
                .expect("column has a nonzero entry");
            if p != t {
                a.swap(p, t);
                row_ops.push(RowOp::Swap(t, p));
            }
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].e_is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]).e_neg()?;
                if !q.e_is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    let pivot_row = &head[t];
                    let row = &mut tail[0];
                    for k in t..n {
                        if !pivot_row[k].e_is_zero() {
                            row[k] = row[k].mul_add(&q, &pivot_row[k])?;
                        }
                    }
                    row_ops.push(RowOp::Add { target: i, src: t, k: q });
                }
                if !a[i][t].e_is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // column t is now zero off the pivot, so column operations only touch row t
            for k in t + 1..n {
                if a[t][k].e_is_zero() {
                    continue;
                }
                let q = a[t][k].div_floor(&a[t][t]).e_neg()?;
                if !q.e_is_zero() {
                    a[t][k] = a[t][k].mul_add(&q, &a[t][t])?;
                    col_ops.push(ColOp::Add { target: k, src: t, k: q });
                }
                if !a[t][k].e_is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            let p = (t + 1..n)
                .filter(|&k| !a[t][k].e_is_zero())
                .fold(None::<usize>, |best, k| match best {
                    Some(b) if !a[t][k].abs_lt(&a[t][b]) => Some(b),
                    _ => Some(k),
                })
                .expect("row has a nonzero entry");
            for row in a.iter_mut() {
                row.swap(p, t);
            }
            col_ops.push(ColOp::Swap(t, p));
        }
        t += 1;
    }
    let mut diagonal: Vec<T> = (0..t).map(|i| a[i][i].clone()).collect();
    for (i, d) in diagonal.iter_mut().enumerate() {
        if d.e_is_negative() {
            *d = d.e_neg()?;
            row_ops.push(RowOp::Neg(i));
        }
    }
    // divisibility chain via diag(a, b) -> diag(gcd, lcm)
    for i in 0..t {
        for j in i + 1..t {
            if diagonal[i].divides(&diagonal[j]) {
                continue;
            }
            let a0 = diagonal[i].clone();
            let b0 = diagonal[j].clone();
            let (g, s, tt) = a0.ext_gcd(&b0);
            let b_g = b0.div_floor(&g);
            let a_g = a0.div_floor(&g);
            row_ops.push(RowOp::Add { target: i, src: j, k: T::e_one() });
            col_ops.push(ColOp::Mix { i, j, m: [s, b_g.e_neg()?, tt.clone(), a_g.clone()] });
            let bt = b0.e_mul(&tt)?;
            let k = bt.div_floor(&g).e_neg()?;
            row_ops.push(RowOp::Add { target: j, src: i, k });
            diagonal[i] = g;
            diagonal[j] = b0.e_mul(&a_g)?;
        }
    }
    Some(Elimination { diagonal, row_ops, col_ops })
}

fn to_big_ops<T: Entry>(e: Elimination<T>) -> (Vec<BigInt>, Vec<RowOp<BigInt>>, Vec<ColOp<BigInt>>) {
    let diag = e.diagonal.iter().map(Entry::big).collect();
    let rows = e
        .row_ops
        .into_iter()
        .map(|op| match op {
            RowOp::Swap(a, b) => RowOp::Swap(a, b),
            RowOp::Add { target, src, k } => RowOp::Add { target, src, k: k.big() },
            RowOp::Neg(i) => RowOp::Neg(i),
        })
        .collect();
    let cols = e
        .col_ops
        .into_iter()
        .map(|op| match op {
            ColOp::Swap(a, b) => ColOp::Swap(a, b),
            ColOp::Add { target, src, k } => ColOp::Add { target, src, k: k.big() },
            ColOp::Mix { i, j, m } => ColOp::Mix { i, j, m: m.map(|x| x.big()) },
        })
        .collect();
    (diag, rows, cols)
}

/// A Smith normal form `D = U A V` stored as the operation sequences producing `U` and `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    rows: usize,
    cols: usize,
    diagonal: Vec<BigInt>,
    row_ops: Vec<RowOp<BigInt>>,
    col_ops: Vec<ColOp<BigInt>>,
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Smith {
    let small: Option<Vec<Vec<i64>>> = (0..a.rows)
        .map(|i| (0..a.cols).map(|j| a.get(i, j).to_i64()).collect())
        .collect();
    let parts = small
        .and_then(|rows| eliminate(rows, a.cols))
        .map(to_big_ops)
        .unwrap_or_else(|| {
            let rows = (0..a.rows).map(|i| (0..a.cols).map(|j| a.get(i, j).clone()).collect()).collect();
            to_big_ops(eliminate::<BigInt>(rows, a.cols).expect("big integers do not overflow"))
        });
    Smith { rows: a.rows, cols: a.cols, diagonal: parts.0, row_ops: parts.1, col_ops: parts.2 }
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    pub fn apply_u(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut v = v.to_vec();
        for op in &self.row_ops {
            match op {
                RowOp::Swap(a, b) => v.swap(*a, *b),
                RowOp::Add { target, src, k } => {
                    if !v[*src].is_zero() {
                        let add = k * &v[*src];
                        v[*target] += add;
                    }
                }
                RowOp::Neg(i) => v[*i] = -&v[*i],
            }
        }
        v
    }

    pub fn apply_u_inverse(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut v = v.to_vec();
        for op in self.row_ops.iter().rev() {
            match op {
                RowOp::Swap(a, b) => v.swap(*a, *b),
                RowOp::Add { target, src, k } => {
                    if !v[*src].is_zero() {
                        let sub = k * &v[*src];
                        v[*target] -= sub;
                    }
                }
                RowOp::Neg(i) => v[*i] = -&v[*i],
            }
        }
        v
    }

    pub fn apply_v(&self, y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(y.len(), self.cols);
        let mut y = y.to_vec();
        for op in self.col_ops.iter().rev() {
            match op {
                ColOp::Swap(a, b) => y.swap(*a, *b),
                ColOp::Add { target, src, k } => {
                    if !y[*target].is_zero() {
                        let add = k * &y[*target];
                        y[*src] += add;
                    }
                }
                ColOp::Mix { i, j, m } => {
                    let yi = &m[0] * &y[*i] + &m[1] * &y[*j];
                    let yj = &m[2] * &y[*i] + &m[3] * &y[*j];
                    y[*i] = yi;
                    y[*j] = yj;
                }
            }
        }
        y
    }

    fn materialize(n: usize, f: impl Fn(&[BigInt]) -> Vec<BigInt>) -> IntegerMatrix {
        let columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                f(&e)
            })
            .collect();
        IntegerMatrix::from_columns(n, &columns)
    }

    pub fn u(&self) -> IntegerMatrix {
        Self::materialize(self.rows, |v| self.apply_u(v))
    }

    pub fn u_inverse(&self) -> IntegerMatrix {
        Self::materialize(self.rows, |v| self.apply_u_inverse(v))
    }

    pub fn v(&self) -> IntegerMatrix {
        Self::materialize(self.cols, |v| self.apply_v(v))
    }

    pub fn d(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    /// Some `x` with `A x = b`, or `None`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut y = self.apply_u(b);
        for (i, yi) in y.iter_mut().enumerate() {
            if i < self.rank() {
                let (q, r) = yi.div_rem(&self.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                *yi = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        y.resize(self.cols, BigInt::zero());
        Some(self.apply_v(&y))
    }

    /// A basis of the integer kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.cols];
                e[i] = BigInt::one();
                self.apply_v(&e)
            })
            .collect()
    }
}

/// A fixed system `A x ≡ b` (row-wise modulo `moduli`, `0` meaning equality), factored once.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    smith: Smith,
}

impl LinearSystem {
    pub fn new(a: &IntegerMatrix, moduli: &[i64]) -> Self {
        assert_eq!(moduli.len(), a.rows());
        let extra: Vec<usize> = (0..a.rows()).filter(|&i| moduli[i] != 0).collect();
        let mut aug = IntegerMatrix::zeros(a.rows(), a.cols() + extra.len());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                aug.set(i, j, a.get(i, j).clone());
            }
        }
        for (k, &i) in extra.iter().enumerate() {
            aug.set(i, a.cols() + k, BigInt::from(moduli[i]));
        }
        LinearSystem { unknowns: a.cols(), smith: smith_normal_form(&aug) }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut x = self.smith.solve(b)?;
        x.truncate(self.unknowns);
        Some(x)
    }

    /// Generators of `{x : A x ≡ 0}` (projections of the augmented kernel).
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        self.smith
            .kernel_basis()
            .into_iter()
            .map(|mut v| {
                v.truncate(self.unknowns);
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }
}

pub fn solve_exact(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    smith_normal_form(a).solve(b)
}

pub fn solve_modular(a: &IntegerMatrix, b: &[BigInt], moduli: &[i64]) -> Option<Vec<BigInt>> {
    LinearSystem::new(a, moduli).solve(b)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("value exceeds the 64-bit range")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};

    fn check_smith(a: &IntegerMatrix) {
        let s = smith_normal_form(a);
        let u = s.u();
        let v = s.v();
        assert_eq!(u.mul(a).mul(&v), s.d(), "D = UAV fails for {a:?}");
        assert!(u.determinant().abs().is_one());
        assert!(v.determinant().abs().is_one());
        assert_eq!(s.u_inverse().mul(&u), IntegerMatrix::identity(a.rows()));
        for w in s.diagonal().windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(s.diagonal().iter().all(|d| d.is_positive()));
    }

    #[test]
    fn small_examples() {
        let z = IntegerMatrix::zeros(3, 2);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.u(), IntegerMatrix::identity(3));
        assert_eq!(s.v(), IntegerMatrix::identity(2));

        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), &[BigInt::from(2), BigInt::from(4)]);
        check_smith(&a);

        let s = smith_normal_form(&IntegerMatrix::identity(4));
        assert!(s.diagonal().iter().all(One::is_one));
        assert_eq!(s.rank(), 4);

        check_smith(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        check_smith(&IntegerMatrix::from_rows(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]));
    }

    #[test]
    fn random_matrices() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let r = rng.gen_range(1..=12);
            let c = rng.gen_range(1..=12);
            let sparse = rng.gen_bool(0.5);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(-50..=50) })
                        .collect()
                })
                .collect();
            check_smith(&IntegerMatrix::from_rows(&rows));
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let a = IntegerMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big + 5]]);
        check_smith(&a);
    }

    #[test]
    fn solving() {
        let a = IntegerMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_exact(&a, &to_big(&[4])), Some(to_big(&[2])));
        assert_eq!(solve_exact(&a, &to_big(&[3])), None);
        let x = solve_modular(&a, &to_big(&[0]), &[4]).unwrap();
        let r = (&x[0] * 2i64).mod_floor(&BigInt::from(4));
        assert!(r.is_zero());

        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let a = IntegerMatrix::from_rows(&rows);
            let x0: Vec<i64> = (0..c).map(|_| rng.gen_range(-5..=5)).collect();
            let b = a.mul_vec(&to_big(&x0));
            let x = solve_exact(&a, &b).expect("consistent system");
            assert_eq!(a.mul_vec(&x), b);
            for v in smith_normal_form(&a).kernel_basis() {
                assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
            }
            // modular with nonzero moduli: a solution exists iff one exists in [0, 6)^c
            let moduli: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
            let target: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
            let satisfies = |x: &[BigInt]| {
                let ax = a.mul_vec(x);
                (0..r).all(|i| (&ax[i] - target[i]).mod_floor(&BigInt::from(moduli[i])).is_zero())
            };
            let exists = (0..c)
                .map(|_| 0..6i64)
                .multi_cartesian_product()
                .any(|x| satisfies(&to_big(&x)));
            match solve_modular(&a, &to_big(&target), &moduli) {
                Some(x) => assert!(satisfies(&x)),
                None => assert!(!exists),
            }
        }
    }
}
