//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! Every variable of a [`Ring`](super::Ring) (the `q` root, the label variables
//! and the lattice coordinates) occupies one slot of a fixed-width exponent
//! vector. Terms are kept sorted in strictly descending lexicographic order of
//! their exponents with no zero coefficients, so structural equality is
//! mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use rustc_hash::FxHashMap;

/// Maximum number of variables in one ring.
pub const MAXV: usize = 10;

/// Exponent vector of a Laurent monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [i32; MAXV]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAXV]);

    pub fn var(slot: usize, e: i32) -> Mono {
        let mut m = Mono::ONE;
        m.0[slot] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] += o.0[i];
        }
        r
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] -= o.0[i];
        }
        r
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut r = *self;
        for e in r.0.iter_mut() {
            *e *= k;
        }
        r
    }

    pub fn inv(&self) -> Mono {
        self.pow(-1)
    }

    pub fn min(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] = r.0[i].min(o.0[i]);
        }
        r
    }

    pub fn max(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] = r.0[i].max(o.0[i]);
        }
        r
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[inline]
pub(crate) fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("coefficient overflow in i128 arithmetic")
}

#[inline]
pub(crate) fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("coefficient overflow in i128 arithmetic")
}

/// Laurent polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, i128)>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: i128) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: i128) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(m, 1)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, i128)>) -> Poly {
        let mut v: Vec<(Mono, i128)> = terms.into_iter().filter(|t| t.1 != 0).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Mono, i128)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = cadd(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, i128)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// The single term, if the polynomial is a nonzero monomial.
    pub fn as_term(&self) -> Option<(Mono, i128)> {
        if self.terms.len() == 1 {
            Some(self.terms[0])
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Mono, i128)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Mono) -> i128 {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i128 {
        self.terms.iter().fold(0i128, |g, t| g.gcd(&t.1))
    }

    /// Componentwise minimum of the exponents (the monomial content).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(t0) => it.fold(t0.0, |m, t| Mono::min(&m, &t.0)),
        }
    }

    pub fn max_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(t0) => it.fold(t0.0, |m, t| Mono::max(&m, &t.0)),
        }
    }

    pub fn scale(&self, c: i128) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, cmul(a, c))).collect() }
    }

    /// Exact division of every coefficient by `c`; panics if inexact.
    pub fn div_int(&self, c: i128) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| {
                    assert!(a % c == 0, "inexact integer division");
                    (m, a / c)
                })
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|&(t, a)| (t.mul(m), a)).collect() }
    }

    /// Applies a monomial map `m ↦ (m', c)`; terms are re-sorted and merged.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> (Mono, i128)) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, a)| {
            let (m2, c) = f(m);
            (m2, cmul(*a, c))
        }))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Exact division in the Laurent ring; `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((gm, gc)) = g.as_term() {
            let mut out = Vec::with_capacity(self.terms.len());
            for &(m, a) in &self.terms {
                if a % gc != 0 {
                    return None;
                }
                out.push((m.div(&gm), a / gc));
            }
            return Some(Poly { terms: out });
        }
        // Per-variable degree box that every quotient exponent must lie in.
        let lo = self.min_mono().div(&g.min_mono());
        let hi = self.max_mono().div(&g.max_mono());
        for i in 0..MAXV {
            if lo.0[i] > hi.0[i] {
                return None;
            }
        }
        let (glm, glc) = g.terms[0];
        let mut rem: std::collections::BTreeMap<Mono, i128> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, i128)> = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            let qm = m.div(&glm);
            for i in 0..MAXV {
                if qm.0[i] < lo.0[i] || qm.0[i] > hi.0[i] {
                    return None;
                }
            }
            if c % glc != 0 {
                return None;
            }
            let qc = c / glc;
            for &(gm, gc) in &g.terms {
                let key = gm.mul(&qm);
                let e = rem.entry(key).or_insert(0);
                *e = e.checked_sub(cmul(qc, gc)).expect("coefficient overflow");
                if *e == 0 {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Splits `self = c · x^m · p` with `p` primitive, free of monomial content
    /// and with positive leading coefficient.
    pub fn canonical_split(&self) -> (i128, Mono, Poly) {
        assert!(!self.is_zero());
        let mut c = self.content();
        if self.terms[0].1 < 0 {
            c = -c;
        }
        let m = self.min_mono();
        let inv = m.inv();
        let p = Poly {
            terms: self.terms.iter().map(|&(t, a)| (t.mul(&inv), a / c)).collect(),
        };
        (c, m, p)
    }

    /// Sum over terms of a key function, grouped (used for gradings).
    pub fn split_by<K: Eq + std::hash::Hash + Ord + Clone>(
        &self,
        key: impl Fn(&Mono) -> K,
    ) -> Vec<(K, Poly)> {
        let mut groups: FxHashMap<K, Vec<(Mono, i128)>> = FxHashMap::default();
        for t in &self.terms {
            groups.entry(key(&t.0)).or_default().push(*t);
        }
        let mut out: Vec<(K, Poly)> =
            groups.into_iter().map(|(k, ts)| (k, Poly { terms: ts })).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn add_impl(&self, o: &Poly, sign: i128) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = cadd(a[i].1, sign * b[j].1);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, sign * c)));
        Poly { terms: out }
    }

    fn mul_impl(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return Poly { terms: o.terms.iter().map(|&(t, a)| (t.mul(&m), cmul(a, c))).collect() };
        }
        if o.terms.len() == 1 {
            return o.mul_impl(self);
        }
        let mut acc: FxHashMap<Mono, i128> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * o.terms.len(), Default::default());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &o.terms {
                let e = acc.entry(m1.mul(&m2)).or_insert(0);
                *e = cadd(*e, cmul(c1, c2));
            }
        }
        let mut terms: Vec<(Mono, i128)> = acc.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.add_impl(o, 1)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.add_impl(o, -1)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_impl(o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: i32) -> Poly {
        Poly::mono(Mono::var(0, e))
    }
    fn y(e: i32) -> Poly {
        Poly::mono(Mono::var(1, e))
    }

    #[test]
    fn ring_identities() {
        let a = &x(1) + &y(1);
        let b = &x(1) - &y(1);
        assert_eq!(&a * &b, &x(2) - &y(2));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_laurent() {
        let f = &x(2) - &Poly::one();
        let g = &x(1) - &Poly::one();
        assert_eq!(f.div_exact(&g).unwrap(), &x(1) + &Poly::one());
        let f = &x(-3) - &x(5);
        assert!(f.div_exact(&(&Poly::one() - &x(2))).is_some());
        assert!(f.div_exact(&(&Poly::one() - &x(3))).is_none());
        let h = &(&x(1) + &y(-2)) * &(&x(3) - &(&y(1) * &x(-1)));
        assert!(h.div_exact(&(&x(3) - &(&y(1) * &x(-1)))).is_some());
        assert!((&h + &Poly::one()).div_exact(&(&x(1) + &y(-2))).is_none());
    }

    #[test]
    fn canonical_split_recovers() {
        let p = (&x(-1) - &x(3)).scale(-6);
        let (c, m, q) = p.canonical_split();
        assert_eq!(q.mul_mono(&m).scale(c), p);
        assert!(q.leading().unwrap().1 > 0);
        assert_eq!(q.content(), 1);
        assert!(q.min_mono().is_one());
    }
}
