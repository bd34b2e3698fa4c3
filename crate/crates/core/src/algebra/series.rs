//! Expansion of rational functions into the negative cone `ℂ[[z^{-Δ}]]`.
//!
//! Lattice monomials are graded by their `Δ`-coordinates. A denominator factor
//! is expanded geometrically around its unique top lattice exponent (largest
//! `ρ̂`-height); every other exponent of the factor must lie strictly below the
//! top in the dominance order, otherwise the factor is not expandable.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::frac::Frac;
use super::lattice::{Q, QVec};
use super::poly::{Mono, Poly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Cone point `x ∈ ℤ≥0Δ` in `Δ`-coordinates.
pub type Point = Vec<i64>;

/// Truncated power series in `z^{-Δ}` with scalar coefficients.
pub type ConeCoeffs = BTreeMap<Point, Frac>;

/// Grading of the lattice slots of a ring by `Δ`-coordinates.
#[derive(Clone, Debug)]
pub struct ConeFrame {
    ring: Ring,
    /// `basis_delta[j]`: `Δ`-coordinates of the `j`-th lattice basis vector.
    basis_delta: Vec<QVec>,
}

impl ConeFrame {
    pub fn new(ring: Ring, basis_delta: Vec<QVec>) -> ConeFrame {
        ConeFrame { ring, basis_delta }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn delta(&self, m: &Mono) -> QVec {
        let c = self.ring.lat_coords(m);
        let n = self.basis_delta.first().map_or(0, |b| b.len());
        let mut out = vec![Q::zero(); n];
        for (k, b) in c.iter().zip(&self.basis_delta) {
            if *k != 0 {
                for i in 0..n {
                    out[i] += b[i] * Q::from_integer(*k);
                }
            }
        }
        out
    }

    pub fn height(&self, m: &Mono) -> Q {
        self.delta(m).iter().sum()
    }

    /// `Δ`-coordinates of `hi / lo` if they form a point of `ℤ≥0Δ`.
    pub fn cone_gap(&self, hi: &Mono, lo: &Mono) -> Option<Point> {
        let d = self.delta(&hi.div(lo));
        d.iter().map(|c| if c.is_integer() && !c.is_negative() { Some(c.to_integer()) } else { None }).collect()
    }

    /// Groups a polynomial by lattice exponent.
    pub fn by_lattice(&self, p: &Poly) -> BTreeMap<Mono, Poly> {
        let mut out: BTreeMap<Mono, Vec<(Mono, i128)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            out.entry(self.ring.lattice_part(m)).or_default().push((self.ring.param_part(m), *c));
        }
        out.into_iter().map(|(k, v)| (k, Poly::from_terms(v))).collect()
    }
}

/// `Σ_x C_x z^{lead − x}` through height `height`.
#[derive(Clone, Debug)]
pub struct ConeSeries {
    pub lead: Mono,
    pub height: usize,
    pub coeffs: ConeCoeffs,
}

impl ConeSeries {
    pub fn coeff(&self, x: &[i64]) -> Frac {
        self.coeffs.get(x).cloned().unwrap_or_else(Frac::zero)
    }
}

fn ht(x: &[i64]) -> i64 {
    x.iter().sum()
}

fn padd(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Truncated product of two cone series indexed from the same origin.
pub fn mul_trunc(a: &ConeCoeffs, b: &ConeCoeffs, h: usize) -> ConeCoeffs {
    let mut out = ConeCoeffs::new();
    for (x, cx) in a {
        if ht(x) as usize > h {
            continue;
        }
        for (y, cy) in b {
            let z = padd(x, y);
            if ht(&z) as usize > h {
                continue;
            }
            let prod = cx * cy;
            let e = out.entry(z).or_insert_with(Frac::zero);
            *e = &*e + &prod;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `1/(1 − g)` for a series `g` without constant term.
fn geometric(g: &ConeCoeffs, n: usize, h: usize) -> ConeCoeffs {
    let mut one = ConeCoeffs::new();
    one.insert(vec![0; n], Frac::one());
    let mut total = one.clone();
    let mut pw = one;
    for _ in 0..h {
        pw = mul_trunc(&pw, g, h);
        if pw.is_empty() {
            break;
        }
        for (x, c) in &pw {
            let e = total.entry(x.clone()).or_insert_with(Frac::zero);
            *e = &*e + c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

/// Expansion data of one denominator factor: `f = top_coeff · z^{top} · (1 − g)`.
struct FactorExpansion {
    top: Mono,
    top_coeff: Poly,
    inverse: ConeCoeffs,
}

fn expand_factor(frame: &ConeFrame, f: &Poly, n: usize, h: usize) -> Result<FactorExpansion> {
    let parts = frame.by_lattice(f);
    let mut best: Option<(&Mono, Q)> = None;
    let mut tie = false;
    for m in parts.keys() {
        let hm = frame.height(m);
        match best {
            Some((_, b)) if hm < b => {}
            Some((_, b)) if hm == b => tie = true,
            _ => {
                best = Some((m, hm));
                tie = false;
            }
        }
    }
    let (top, _) = best.ok_or(Error::DivisionByZero)?;
    if tie {
        return Err(Error::NonExpandable(format!("denominator {f:?} has no unique top exponent")));
    }
    let top = *top;
    let top_coeff = parts[&top].clone();
    let mut g = ConeCoeffs::new();
    for (m, p) in &parts {
        if *m == top {
            continue;
        }
        let x = frame
            .cone_gap(&top, m)
            .ok_or_else(|| Error::NonExpandable(format!("denominator {f:?} is not expandable in the cone")))?;
        g.insert(x, -&Frac::from_poly(p.clone()).div_poly(&top_coeff));
    }
    Ok(FactorExpansion { top, top_coeff, inverse: geometric(&g, n, h) })
}

/// Cone expansion of `f` around `lead` (or its unique maximal exponent) through height `h`.
pub fn cone_expand(frame: &ConeFrame, f: &Frac, lead: Option<Mono>, h: usize) -> Result<ConeSeries> {
    let n = frame.basis_delta.first().map_or(0, |b| b.len());
    let mut inv = ConeCoeffs::new();
    inv.insert(vec![0; n], Frac::one());
    let mut den_top = Mono::ONE;
    let mut den_coeff = Frac::from_int(f.den().scale());
    for (p, e) in f.den().factors() {
        let fe = expand_factor(frame, p, n, h)?;
        for _ in 0..*e {
            inv = mul_trunc(&inv, &fe.inverse, h);
            den_top = den_top.mul(&fe.top);
            den_coeff = den_coeff.mul_poly(&fe.top_coeff);
        }
    }
    let nums = frame.by_lattice(f.num());
    let effective: Vec<(Mono, &Poly)> = nums.iter().map(|(m, p)| (m.div(&den_top), p)).collect();
    let lead = match lead {
        Some(l) => l,
        None => {
            if effective.is_empty() {
                Mono::ONE
            } else {
                let cand = effective
                    .iter()
                    .find(|(m, _)| effective.iter().all(|(o, _)| frame.cone_gap(m, o).is_some()))
                    .ok_or_else(|| Error::NonExpandable("numerator has no maximal exponent".into()))?;
                cand.0
            }
        }
    };
    let mut coeffs = ConeCoeffs::new();
    for (m, p) in &effective {
        let d = frame
            .cone_gap(&lead, m)
            .ok_or_else(|| Error::NonExpandable("exponent above the leading exponent".into()))?;
        if ht(&d) as usize > h {
            continue;
        }
        let k = Frac::from_poly((*p).clone()).div(&den_coeff)?;
        for (x, c) in &inv {
            let z = padd(&d, x);
            if ht(&z) as usize > h {
                continue;
            }
            let e = coeffs.entry(z).or_insert_with(Frac::zero);
            *e = &*e + &(&k * c);
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(ConeSeries { lead, height: h, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lattice::q;

    // A₁ with lattice basis α: one label slot `t`, one lattice slot.
    fn frame() -> (ConeFrame, Ring) {
        let ring = Ring::new(&["t".into()], 1, 2).unwrap();
        (ConeFrame::new(ring.clone(), vec![vec![q(1)]]), ring)
    }

    fn z(r: &Ring, k: i64) -> Poly {
        Poly::mono(r.lat(&[k]))
    }

    #[test]
    fn geometric_series() {
        let (fr, r) = frame();
        let rr = Poly::mono(Mono::var(1, 1));
        let f = Frac::new(Poly::one(), &(&Poly::one() - &(&rr * &z(&r, -1)))).unwrap();
        let s = cone_expand(&fr, &f, None, 3).unwrap();
        assert!(s.lead.is_one());
        for m in 0..=3 {
            assert_eq!(s.coeff(&[m]), Frac::from_mono(Mono::var(1, m as i32)));
        }
    }

    #[test]
    fn c_function_expansion() {
        let (fr, r) = frame();
        let t = Mono::var(1, 1);
        let num = &Poly::one() - &Poly::mono(t.pow(2).mul(&r.lat(&[1])));
        let den = Poly::mono(t).mul_mono(&Mono::ONE);
        let f = Frac::new(num, &(&den - &(&den * &z(&r, 1)))).unwrap();
        let s = cone_expand(&fr, &f, None, 2).unwrap();
        let tf = Frac::from_mono(t);
        let tinv = Frac::from_mono(t.inv());
        assert_eq!(s.coeff(&[0]), tf);
        assert_eq!(s.coeff(&[1]), &tf - &tinv);
        assert_eq!(s.coeff(&[2]), &tf - &tinv);
    }

    #[test]
    fn shifted_numerator() {
        let (fr, r) = frame();
        let f = Frac::new(z(&r, 1), &(&Poly::one() - &z(&r, 1))).unwrap();
        let s = cone_expand(&fr, &f, None, 2).unwrap();
        for m in 0..=2 {
            assert_eq!(s.coeff(&[m]), Frac::from_int(-1));
        }
    }

    #[test]
    fn tie_is_an_error() {
        let ring = Ring::new(&[], 2, 2).unwrap();
        let fr = ConeFrame::new(ring.clone(), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let d = &Poly::mono(ring.lat(&[1, 0])) - &Poly::mono(ring.lat(&[0, 1]));
        let f = Frac::new(Poly::one(), &d).unwrap();
        assert!(matches!(cone_expand(&fr, &f, None, 2), Err(Error::NonExpandable(_))));
    }
}
