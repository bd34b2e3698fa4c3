//! Variable layout of a polynomial ring and canonical text forms.
//!
//! Slot 0 is the base variable `u` with `u^N = q` for the configured root `N`
//! (always even, so `v = q^{1/2} = u^{N/2}`); when `N = 2` the base variable is
//! printed as `v`. Label variables follow, then one slot per lattice coordinate.

use super::frac::Frac;
use super::lattice::{fmt_q, Q};
use super::poly::{Mono, Poly, MAXV};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    params: Vec<String>,
    rank: usize,
    q_root: i64,
}

impl Ring {
    /// `label_vars` are the names of the label variables; `rank` lattice slots follow.
    pub fn new(label_vars: &[String], rank: usize, q_root: i64) -> Result<Ring> {
        if 1 + label_vars.len() + rank > MAXV {
            return Err(Error::UnsupportedType(format!(
                "{} variables exceed the supported {}",
                1 + label_vars.len() + rank,
                MAXV
            )));
        }
        if q_root <= 0 || q_root % 2 != 0 {
            return Err(Error::PreconditionViolated(format!("root of q must be even and positive, got {q_root}")));
        }
        let base = if q_root == 2 { "v".to_string() } else { "u".to_string() };
        let mut params = vec![base];
        params.extend(label_vars.iter().cloned());
        Ok(Ring { params, rank, q_root })
    }

    pub fn q_root(&self) -> i64 {
        self.q_root
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn param_names(&self) -> &[String] {
        &self.params
    }

    pub fn param_slot(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Monomial `q^r`; errors unless `N·r` is an integer.
    pub fn q_pow(&self, r: Q) -> Result<Mono> {
        let e = r * Q::from_integer(self.q_root);
        if !e.is_integer() {
            return Err(Error::UnrepresentablePairing(fmt_q(&r)));
        }
        Ok(Mono::var(0, e.to_integer() as i32))
    }

    /// `q^{1/2}`.
    pub fn v(&self) -> Mono {
        Mono::var(0, (self.q_root / 2) as i32)
    }

    pub fn lat(&self, coords: &[i64]) -> Mono {
        let mut m = Mono::ONE;
        let off = self.params.len();
        for (i, c) in coords.iter().enumerate() {
            m.0[off + i] = *c as i32;
        }
        m
    }

    pub fn lat_coords(&self, m: &Mono) -> Vec<i64> {
        let off = self.params.len();
        (0..self.rank).map(|i| m.0[off + i] as i64).collect()
    }

    pub fn param_part(&self, m: &Mono) -> Mono {
        let mut r = *m;
        for i in self.params.len()..MAXV {
            r.0[i] = 0;
        }
        r
    }

    pub fn lattice_part(&self, m: &Mono) -> Mono {
        let mut r = *m;
        for i in 0..self.params.len() {
            r.0[i] = 0;
        }
        r
    }

    pub fn has_lattice_vars(&self, p: &Poly) -> bool {
        p.terms().iter().any(|(m, _)| !self.lattice_part(m).is_one())
    }

    fn var_name(&self, slot: usize, lat: &str) -> String {
        if slot < self.params.len() {
            self.params[slot].clone()
        } else {
            format!("{}{}", lat, slot - self.params.len() + 1)
        }
    }

    /// Canonical text: terms in descending order, `c*x^e*...` joined by ` + `/` - `.
    pub fn fmt_poly(&self, p: &Poly, lat: &str) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let neg = *c < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for slot in 0..MAXV {
                let e = m.0[slot];
                if e == 0 {
                    continue;
                }
                let name = self.var_name(slot, lat);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if a != 1 {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn parse_poly(&self, s: &str, lat: &str) -> Result<Poly> {
        let s = s.trim();
        if s == "0" {
            return Ok(Poly::zero());
        }
        let bad = || Error::Parse(s.to_string());
        let mut terms = Vec::new();
        let bytes: Vec<char> = s.chars().collect();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 0..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && i > 0 && bytes[i - 1] != '^' {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        pieces.push(bytes[start..].iter().collect::<String>());
        for piece in pieces {
            let piece: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
            if piece.is_empty() {
                continue;
            }
            let (sign, body) = match piece.strip_prefix('-') {
                Some(b) => (-1i128, b.to_string()),
                None => (1i128, piece.trim_start_matches('+').to_string()),
            };
            let mut coeff: i128 = 1;
            let mut m = Mono::ONE;
            for f in body.split('*') {
                if let Ok(c) = f.parse::<i128>() {
                    coeff *= c;
                    continue;
                }
                let (name, e) = match f.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad())?),
                    None => (f, 1),
                };
                let slot = if let Some(sl) = self.param_slot(name) {
                    sl
                } else if let Some(idx) = name.strip_prefix(lat) {
                    let k: usize = idx.parse().map_err(|_| bad())?;
                    if k == 0 || k > self.rank {
                        return Err(bad());
                    }
                    self.params.len() + k - 1
                } else {
                    return Err(bad());
                };
                m.0[slot] += e;
            }
            terms.push((m, sign * coeff));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Numerator and expanded denominator strings.
    pub fn fmt_frac(&self, f: &Frac, lat: &str) -> (String, String) {
        (self.fmt_poly(f.num(), lat), self.fmt_poly(&f.den().expand(), lat))
    }

    pub fn parse_frac(&self, num: &str, den: &str, lat: &str) -> Result<Frac> {
        Frac::new(self.parse_poly(num, lat)?, &self.parse_poly(den, lat)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lattice::qr;

    #[test]
    fn text_roundtrip() {
        let r = Ring::new(&["t1".into(), "t1p".into()], 2, 2).unwrap();
        let p = Poly::from_terms(vec![
            (r.lat(&[1, -2]).mul(&Mono::var(1, 2)), -3),
            (Mono::var(0, -1), 1),
            (Mono::ONE, 7),
        ]);
        let s = r.fmt_poly(&p, "z");
        assert_eq!(r.parse_poly(&s, "z").unwrap(), p);
    }

    #[test]
    fn fractional_q_powers() {
        let r = Ring::new(&[], 1, 6).unwrap();
        assert_eq!(r.q_pow(qr(1, 3)).unwrap(), Mono::var(0, 2));
        assert!(r.q_pow(qr(1, 4)).is_err());
        assert_eq!(r.fmt_poly(&Poly::mono(r.v()), "z"), "u^3");
    }
}
