//! Fractions of Laurent polynomials with denominators kept as products.
//!
//! A [`Frac`] is `num / (scale · Π fᵢ^{eᵢ})` where every factor `fᵢ` is in
//! canonical form (primitive, no monomial content, positive leading
//! coefficient). Monomials never appear in a denominator: they are units of the
//! Laurent ring and are moved into the numerator. Sums use the least common
//! multiple of the factor multisets, so denominators built from c-functions stay
//! small without any multivariate gcd. A fraction is zero iff its numerator is.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use super::poly::{cmul, Mono, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Den {
    scale: i128,
    factors: Vec<(Poly, u32)>,
}

impl Den {
    pub fn one() -> Den {
        Den { scale: 1, factors: Vec::new() }
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.scale == 1 && self.factors.is_empty()
    }

    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.scale);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                p = &p * f;
            }
        }
        p
    }

    fn insert(&mut self, f: Poly, e: u32) {
        match self.factors.binary_search_by(|t| t.0.cmp(&f)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (f, e)),
        }
    }

    /// Least common multiple together with the cofactors `lcm / self`, `lcm / other`.
    fn lcm(&self, o: &Den) -> (Den, Poly, Poly) {
        let l = self.scale.lcm(&o.scale);
        let mut ca = Poly::constant(l / self.scale);
        let mut cb = Poly::constant(l / o.scale);
        let mut out = Den { scale: l, factors: Vec::new() };
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &o.factors);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Less => {
                    cb = &cb * &a[i].0.pow(a[i].1);
                    out.factors.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ca = &ca * &b[j].0.pow(b[j].1);
                    out.factors.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (a[i].1, b[j].1);
                    if ea < eb {
                        ca = &ca * &a[i].0.pow(eb - ea);
                    } else if eb < ea {
                        cb = &cb * &a[i].0.pow(ea - eb);
                    }
                    out.factors.push((a[i].0.clone(), ea.max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        (out, ca, cb)
    }
}

/// Exact rational function with factored denominator.
#[derive(Clone, Debug, Default)]
pub struct Frac {
    num: Poly,
    den: Den,
}

impl Frac {
    pub fn zero() -> Frac {
        Frac { num: Poly::zero(), den: Den::one() }
    }

    pub fn one() -> Frac {
        Frac::from_poly(Poly::one())
    }

    pub fn from_int(c: i128) -> Frac {
        Frac::from_poly(Poly::constant(c))
    }

    pub fn from_mono(m: Mono) -> Frac {
        Frac::from_poly(Poly::mono(m))
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac { num: p, den: Den::one() }
    }

    /// `n / d` with `d` split into canonical form; errors if `d = 0`.
    pub fn new(n: Poly, d: &Poly) -> Result<Frac> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Frac::from_poly(n).div_poly(d))
    }

    /// Builds from a numerator and a list of denominator polynomials.
    pub fn with_factors(n: Poly, dens: &[Poly]) -> Frac {
        let mut f = Frac::from_poly(n);
        for d in dens {
            f = f.div_poly(d);
        }
        f
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Den {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The fraction as a polynomial, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalized(mut self) -> Frac {
        if self.num.is_zero() {
            return Frac::zero();
        }
        let g = self.num.content().gcd(&self.den.scale);
        if g > 1 {
            self.num = self.num.div_int(g);
            self.den.scale /= g;
        }
        self
    }

    /// Divides by a nonzero polynomial (panics on zero).
    pub fn div_poly(&self, d: &Poly) -> Frac {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (c, m, p) = d.canonical_split();
        let mut num = self.num.mul_mono(&m.inv());
        let mut den = self.den.clone();
        if c < 0 {
            num = -num;
        }
        den.scale = cmul(den.scale, c.abs());
        if !(p.len() == 1) {
            den.insert(p, 1);
        }
        Frac { num, den }.normalized()
    }

    /// Divides by a factored denominator.
    pub fn div_den(&self, d: &Den) -> Frac {
        let mut den = self.den.clone();
        den.scale = cmul(den.scale, d.scale);
        for (f, e) in &d.factors {
            den.insert(f.clone(), *e);
        }
        Frac { num: self.num.clone(), den }.normalized()
    }

    pub fn mul_poly(&self, p: &Poly) -> Frac {
        Frac { num: &self.num * p, den: self.den.clone() }.normalized()
    }

    pub fn mul_mono(&self, m: &Mono) -> Frac {
        Frac { num: self.num.mul_mono(m), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i128) -> Frac {
        Frac { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    pub fn inv(&self) -> Result<Frac> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Frac::from_poly(self.den.expand()).div_poly(&self.num))
    }

    pub fn div(&self, o: &Frac) -> Result<Frac> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiply by the expanded denominator of `o` and divide by its numerator,
        // keeping the factored denominator of `self`.
        let mut r = Frac { num: &self.num * &o.den.expand(), den: self.den.clone() };
        r = r.div_poly(&o.num);
        Ok(r.normalized())
    }

    pub fn pow(&self, k: i32) -> Result<Frac> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut r = Frac::one();
        for _ in 0..k {
            r = &r * self;
        }
        Ok(r)
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> Frac {
        let mut num = self.num.clone();
        let mut den = Den { scale: self.den.scale, factors: Vec::new() };
        for (f, e) in &self.den.factors {
            let mut left = *e;
            while left > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.factors.push((f.clone(), left));
            }
        }
        Frac { num, den }.normalized()
    }

    /// Converts to a polynomial by exact division; errors if a residue remains.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut num = self.num.clone();
        for (f, e) in &self.den.factors {
            for _ in 0..*e {
                num = num.div_exact(f).ok_or(Error::InexactDivision)?;
            }
        }
        if num.content() % self.den.scale != 0 && !num.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(if self.den.scale == 1 { num } else { num.div_int(self.den.scale) })
    }

    /// Applies a monomial map to numerator and each denominator factor.
    /// Errors if a denominator factor is sent to zero.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> (Mono, i128)) -> Result<Frac> {
        let mut r = Frac { num: self.num.map_monos(&f), den: Den { scale: self.den.scale, factors: vec![] } };
        for (p, e) in &self.den.factors {
            let img = p.map_monos(&f);
            if img.is_zero() {
                return Err(Error::DivisionByZero);
            }
            for _ in 0..*e {
                r = r.div_poly(&img);
            }
        }
        Ok(r.normalized())
    }

    fn add_impl(&self, o: &Frac, sign: i128) -> Frac {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign == 1 { o.clone() } else { -o };
        }
        if self.den == o.den {
            let num = if sign == 1 { &self.num + &o.num } else { &self.num - &o.num };
            return Frac { num, den: self.den.clone() }.normalized();
        }
        let (den, ca, cb) = self.den.lcm(&o.den);
        let a = &self.num * &ca;
        let b = &o.num * &cb;
        let num = if sign == 1 { &a + &b } else { &a - &b };
        Frac { num, den }.normalized()
    }

    fn mul_impl(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        let mut den = self.den.clone();
        den.scale = cmul(den.scale, o.den.scale);
        for (f, e) in &o.den.factors {
            den.insert(f.clone(), *e);
        }
        Frac { num: &self.num * &o.num, den }.normalized()
    }
}

impl PartialEq for Frac {
    /// Cross-multiplication equality.
    fn eq(&self, o: &Frac) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        (self - o).is_zero()
    }
}

impl Eq for Frac {}

impl<'a> Add<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn add(self, o: &Frac) -> Frac {
        self.add_impl(o, 1)
    }
}

impl<'a> Sub<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn sub(self, o: &Frac) -> Frac {
        self.add_impl(o, -1)
    }
}

impl<'a> Mul<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn mul(self, o: &Frac) -> Frac {
        self.mul_impl(o)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, o: Frac) -> Frac {
        &self + &o
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, o: Frac) -> Frac {
        &self - &o
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, o: Frac) -> Frac {
        &self * &o
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        -&self
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den.expand())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: i32) -> Poly {
        Poly::mono(Mono::var(0, e))
    }
    fn t(e: i32) -> Poly {
        Poly::mono(Mono::var(1, e))
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = Frac::new(&x(2) - &Poly::one(), &(&x(1) - &Poly::one())).unwrap();
        let b = Frac::from_poly(&x(1) + &Poly::one());
        assert_eq!(a, b);
        assert_eq!(a.reduce().as_poly(), Some(&(&x(1) + &Poly::one())));
    }

    #[test]
    fn sums_share_factors() {
        let d = &Poly::one() - &x(1);
        let a = Frac::new(Poly::one(), &d).unwrap();
        let b = Frac::new(x(1), &d).unwrap();
        let s = &a + &b;
        assert_eq!(s.den().factors().len(), 1);
        let d2 = &x(-1) - &Poly::one();
        let c = Frac::new(Poly::one(), &d2).unwrap();
        // 1/(1-x) + 1/(x^-1 - 1) = (1 + x)/(1 - x), over the same single factor.
        let sum = &a + &c;
        assert_eq!(sum.den().factors().len(), 1);
        assert_eq!(sum, s);
    }

    #[test]
    fn inverse_and_division() {
        let a = Frac::new(&t(1) + &x(1), &(&Poly::constant(3) - &x(2))).unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, Frac::one());
        assert!(Frac::zero().inv().is_err());
        assert_eq!(a.div(&a).unwrap(), Frac::one());
    }

    #[test]
    fn to_poly_detects_residue() {
        let a = Frac::new(&x(3) - &Poly::one(), &(&x(1) - &Poly::one())).unwrap();
        assert_eq!(a.to_poly().unwrap(), &(&x(2) + &x(1)) + &Poly::one());
        let b = Frac::new(x(3), &(&x(1) - &Poly::one())).unwrap();
        assert!(b.to_poly().is_err());
    }
}
