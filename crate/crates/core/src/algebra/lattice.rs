//! Rational vectors in the ambient space and full-rank lattices in it.
//!
//! Vectors are stored by their coordinates in the basis of simple roots; the
//! inner product comes from the Gram matrix of that basis.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;
pub type QVec = Vec<Q>;
pub type QMat = Vec<QVec>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn zero_vec(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> QVec {
    let mut v = zero_vec(n);
    v[i] = Q::one();
    v
}

pub fn vadd(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Q], c: Q) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn vneg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// `M · v` for a square matrix acting on column vectors.
pub fn mat_vec(m: &QMat, v: &[Q]) -> QVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b[0].len();
    (0..n)
        .map(|i| (0..k).map(|j| (0..b.len()).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub fn transpose(m: &QMat) -> QMat {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Inverse by Gauss-Jordan elimination.
pub fn mat_inv(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
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

/// Bilinear form given by a Gram matrix on root coordinates.
pub fn pair(gram: &QMat, a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for i in 0..a.len() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..b.len() {
            s += a[i] * gram[i][j] * b[j];
        }
    }
    s
}

pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: i64 = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let d: i64 = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        if d == 0 {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(Q::new(n, d))
    } else {
        Ok(q(s.parse().map_err(|_| Error::Parse(s.to_string()))?))
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

/// A full-rank lattice given by a ℤ-basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    basis: Vec<QVec>,
    /// Rows: coordinates of the root basis vectors in the lattice basis.
    to_coords: QMat,
    gram: QMat,
}

impl Lattice {
    pub fn new(name: &str, basis: Vec<QVec>, ambient_gram: &QMat) -> Result<Lattice> {
        // Columns of `b` are basis vectors; coordinates solve b · c = v.
        let b = transpose(&basis);
        let to_coords = mat_inv(&b).ok_or_else(|| Error::InvalidCartanData(format!("{name}: dependent basis")))?;
        let gram = basis.iter().map(|x| basis.iter().map(|y| pair(ambient_gram, x, y)).collect()).collect();
        Ok(Lattice { name: name.to_string(), basis, to_coords, gram })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    /// Gram matrix of the lattice basis.
    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn rational_coords(&self, v: &[Q]) -> QVec {
        mat_vec(&self.to_coords, v)
    }

    pub fn coords(&self, v: &[Q]) -> Option<Vec<i64>> {
        self.rational_coords(v).iter().map(as_integer).collect()
    }

    pub fn try_coords(&self, v: &[Q]) -> Result<Vec<i64>> {
        self.coords(v).ok_or_else(|| Error::LatticeMismatch(format!("{} ∉ {}", fmt_vec(v), self.name)))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn point(&self, c: &[i64]) -> QVec {
        let n = self.basis[0].len();
        let mut v = zero_vec(n);
        for (k, b) in c.iter().zip(&self.basis) {
            if *k != 0 {
                for i in 0..n {
                    v[i] += b[i] * q(*k);
                }
            }
        }
        v
    }
}

pub fn positive(x: &Q) -> bool {
    x.is_positive()
}
