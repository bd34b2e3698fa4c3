//! Cherednik's basic representation: multiplicity labels, c-functions, the
//! operators `T_i`, Y-operators built from reduced words, and the map `β` that
//! drops reflection parts.
//!
//! A [`Context`] fixes a root datum, a label and the polynomial ring in which
//! all coefficients live. Difference-reflection operators are stored in the
//! normal form `Σ f · t(λ') · w` (coefficient left, then translation, then a
//! finite Weyl group element).

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::lattice::*;
use crate::algebra::series::ConeFrame;
use crate::algebra::{Frac, Mono, Poly, Ring};
use crate::error::{Error, Result};
use crate::macops::DiffOp;
use crate::rootdata::{box_points, AffElt, AffRoot, Case, RootDatum};

/// Multiplicity label: formal `τ`-variables per orbit, or rational exponents
/// `k` with `τ = q^{k/2}`.
///
/// Specialized values are ordered by orbit index in cases a/b (long gradients
/// first) and are `κ₁..κ₅` in case c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Generic,
    Specialized(Vec<Q>),
}

impl Label {
    pub fn is_generic(&self) -> bool {
        matches!(self, Label::Generic)
    }
}

/// Names of the label variables for a datum in generic mode.
pub fn label_variables(rd: &RootDatum) -> Vec<String> {
    match rd.case {
        Case::A | Case::B => (1..=rd.num_orbits()).map(|i| format!("t{i}")).collect(),
        Case::C => {
            let mut v: Vec<String> = ["t1", "t1p", "t3", "t3p"].iter().map(|s| s.to_string()).collect();
            if rd.n >= 2 {
                v.push("t5".into());
            }
            v
        }
    }
}

/// Expected number of specialized label values.
pub fn label_arity(rd: &RootDatum) -> usize {
    match rd.case {
        Case::A | Case::B => rd.num_orbits(),
        Case::C => 5,
    }
}

/// Monomial substitution `z^μ ↦ q^{⟨shift,μ⟩} z^{Mμ}` on the lattice slots.
#[derive(Clone, Debug)]
pub struct MonoMap {
    off: usize,
    mat: Vec<Vec<i64>>,
    shift: Vec<i64>,
}

impl MonoMap {
    pub fn apply(&self, m: &Mono) -> Mono {
        let n = self.mat.len();
        let mut out = *m;
        let mut u = m.0[0] as i64;
        for i in 0..n {
            let mut s = 0i64;
            for j in 0..n {
                s += self.mat[i][j] * m.0[self.off + j] as i64;
            }
            out.0[self.off + i] = s as i32;
        }
        for j in 0..n {
            u += self.shift[j] * m.0[self.off + j] as i64;
        }
        out.0[0] = u as i32;
        out
    }

    pub fn poly(&self, p: &Poly) -> Poly {
        p.map_monos(|m| (self.apply(m), 1))
    }

    pub fn frac(&self, f: &Frac) -> Frac {
        f.map_monos(|m| (self.apply(m), 1)).expect("monomial substitution is invertible")
    }
}

/// Generators of the affine Hecke algebra acting on polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    T(usize),
    TInv(usize),
    Omega(usize),
    OmegaInv(usize),
}

#[derive(Clone, Debug)]
pub struct Context {
    pub rd: RootDatum,
    pub label: Label,
    pub ring: Ring,
    frame: ConeFrame,
    smaps: Vec<MonoMap>,
    omaps: Vec<(MonoMap, MonoMap)>,
    csimple: Vec<Frac>,
    tau_simple: Vec<Mono>,
}

impl Context {
    pub fn new(rd: RootDatum, label: Label) -> Result<Context> {
        Context::with_denominator(rd, label, 1)
    }

    /// `extra` is a denominator that `q`-exponents must additionally support,
    /// e.g. for pairings with a rational spectral point.
    pub fn with_denominator(rd: RootDatum, label: Label, extra: i64) -> Result<Context> {
        let mut nroot = rd.base_q_root().lcm(&extra.max(1));
        let vars = match &label {
            Label::Generic => label_variables(&rd),
            Label::Specialized(k) => {
                if k.len() != label_arity(&rd) {
                    return Err(Error::PreconditionViolated(format!(
                        "{} label values given, {} expected",
                        k.len(),
                        label_arity(&rd)
                    )));
                }
                // τ-exponents k/2 and the halves of dual labels k'/2 need to be u-powers.
                for x in k {
                    nroot = nroot.lcm((x / q(4)).denom());
                }
                vec![]
            }
        };
        if nroot % 2 != 0 {
            nroot *= 2;
        }
        let ring = Ring::new(&vars, rd.n, nroot)?;
        let basis_delta = rd.lat_l.basis().iter().map(|b| rd.delta_coords(b)).collect();
        let frame = ConeFrame::new(ring.clone(), basis_delta);
        let mut ctx = Context {
            rd,
            label,
            ring,
            frame,
            smaps: vec![],
            omaps: vec![],
            csimple: vec![],
            tau_simple: vec![],
        };
        ctx.smaps = (0..=ctx.rd.n).map(|i| ctx.zmap(&ctx.rd.s(i))).collect::<Result<_>>()?;
        ctx.omaps = ctx
            .rd
            .omega
            .iter()
            .map(|o| Ok((ctx.zmap(o)?, ctx.zmap(&ctx.rd.aff_inv(o))?)))
            .collect::<Result<_>>()?;
        ctx.csimple = (0..=ctx.rd.n).map(|i| ctx.c_function(&ctx.rd.simple_affine[i])).collect::<Result<_>>()?;
        ctx.tau_simple = (0..=ctx.rd.n).map(|i| ctx.tau_of(&ctx.rd.simple_affine[i])).collect();
        Ok(ctx)
    }

    pub fn frame(&self) -> &ConeFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.rd.n
    }

    fn q_pow_mono(&self, r: Q) -> Mono {
        self.ring.q_pow(r).expect("q-root chosen to cover label exponents")
    }

    /// `(τ, τ')` of an orbit class.
    pub fn tau_pair(&self, orbit: usize) -> (Mono, Mono) {
        match (&self.label, self.rd.case) {
            (Label::Generic, Case::A | Case::B) => {
                let m = Mono::var(1 + orbit, 1);
                (m, m)
            }
            (Label::Generic, Case::C) => match orbit {
                0 => (Mono::var(1, 1), Mono::var(2, 1)),
                1 => (Mono::var(3, 1), Mono::var(4, 1)),
                _ => (Mono::var(5, 1), Mono::var(5, 1)),
            },
            (Label::Specialized(k), Case::A | Case::B) => {
                let m = self.q_pow_mono(k[orbit] / q(2));
                (m, m)
            }
            (Label::Specialized(k), Case::C) => {
                let half = |x: Q| self.q_pow_mono(x / q(2));
                match orbit {
                    0 => (half(k[0] + k[1]), half(k[0] - k[1])),
                    1 => (half(k[2] + k[3]), half(k[2] - k[3])),
                    _ => (half(k[4]), half(k[4])),
                }
            }
        }
    }

    pub fn tau_of(&self, a: &AffRoot) -> Mono {
        self.tau_pair(self.rd.orbit_of(a)).0
    }

    /// `τ_i` for the simple affine root `a_i`.
    pub fn tau_simple(&self, i: usize) -> Mono {
        self.tau_simple[i]
    }

    /// `q^{k'(α∨)}` for a root `α` of `R`.
    pub fn qk_dual(&self, alpha: &[Q]) -> Mono {
        match self.rd.case {
            Case::A => self.tau_of(&AffRoot::new(alpha.to_vec(), Q::zero())).pow(2),
            Case::B => self.tau_of(&AffRoot::new(self.rd.coroot(alpha), Q::zero())).pow(2),
            Case::C => {
                if self.rd.norm2(alpha) == q(4) {
                    self.kappa1_dual()
                } else {
                    self.tau_pair(2).0.pow(2)
                }
            }
        }
    }

    /// `q^{κ₁'} = τ₁τ₃` (case c).
    pub fn kappa1_dual(&self) -> Mono {
        self.tau_pair(0).0.mul(&self.tau_pair(1).0)
    }

    fn rho_pair_filtered(&self, lp: &[Q], keep: impl Fn(&QVec) -> bool) -> Result<Mono> {
        let mut m = Mono::ONE;
        for a in self.rd.positive.iter().filter(|a| keep(a)) {
            let p = self.rd.ip(a, lp);
            let e = as_integer(&p).ok_or_else(|| Error::UnrepresentablePairing(fmt_vec(lp)))?;
            m = m.mul(&self.qk_dual(a).pow(e as i32));
        }
        if m.0.iter().any(|e| e % 2 != 0) {
            return Err(Error::UnrepresentablePairing(format!("ρ-pairing with {}", fmt_vec(lp))));
        }
        for e in m.0.iter_mut() {
            *e /= 2;
        }
        Ok(m)
    }

    /// `q^{⟨ρ_{k',F},λ'⟩}` where `ρ_{k',F}` sums over positive roots outside the
    /// span of `facet` (1-based simple indices).
    pub fn rho_pair_facet(&self, lp: &[Q], facet: &[usize]) -> Result<Mono> {
        self.rho_pair_filtered(lp, |a| !facet_contains(&self.rd, facet, a))
    }

    /// `q^{⟨ρ_{k'} − ρ_{k',F},λ'⟩}`: the half sum over positive roots in the span of `facet`.
    pub fn rho_pair_within(&self, lp: &[Q], facet: &[usize]) -> Result<Mono> {
        self.rho_pair_filtered(lp, |a| facet_contains(&self.rd, facet, a))
    }

    pub fn rho_pair(&self, lp: &[Q]) -> Result<Mono> {
        self.rho_pair_facet(lp, &[])
    }

    /// The vector `ρ_{k'}` for specialized labels.
    pub fn rho_vec(&self) -> Option<QVec> {
        let k = match &self.label {
            Label::Specialized(k) => k,
            Label::Generic => return None,
        };
        let mut rho = zero_vec(self.rd.n);
        for a in &self.rd.positive {
            let kd = match self.rd.case {
                Case::A => k[self.rd.orbit_of(&AffRoot::new(a.clone(), Q::zero()))],
                Case::B => k[self.rd.orbit_of(&AffRoot::new(self.rd.coroot(a), Q::zero()))],
                Case::C => {
                    if self.rd.norm2(a) == q(4) {
                        (k[0] + k[1] + k[2] + k[3]) / q(2)
                    } else {
                        k[4]
                    }
                }
            };
            rho = vadd(&rho, &vscale(a, kd / q(2)));
        }
        Some(rho)
    }

    /// `z^μ` for `μ ∈ L`.
    pub fn z(&self, mu: &[Q]) -> Result<Mono> {
        Ok(self.ring.lat(&self.rd.lat_l.try_coords(mu)?))
    }

    /// `z^a = q^r z^α` for an affine root `a = α + rc`.
    pub fn zaff(&self, a: &AffRoot) -> Result<Mono> {
        Ok(self.z(&a.grad)?.mul(&self.ring.q_pow(a.cst)?))
    }

    /// `ξ^{λ'}` for `λ' ∈ L'` (the lattice slots read as `L'`-coordinates).
    pub fn xi(&self, lp: &[Q]) -> Result<Mono> {
        Ok(self.ring.lat(&self.rd.lat_lp.try_coords(lp)?))
    }

    pub fn xi_point(&self, m: &Mono) -> QVec {
        self.rd.lat_lp.point(&self.ring.lat_coords(m))
    }

    pub fn z_point(&self, m: &Mono) -> QVec {
        self.rd.lat_l.point(&self.ring.lat_coords(m))
    }

    /// Substitution realizing the action of `g ∈ W` on `z`-monomials:
    /// `w t(λ')(z^μ) = q^{−⟨λ',μ⟩} z^{wμ}`.
    pub fn zmap(&self, g: &AffElt) -> Result<MonoMap> {
        let nroot = q(self.ring.q_root());
        let shift = self
            .rd
            .lat_l
            .basis()
            .iter()
            .map(|b| {
                let s = -self.rd.ip(&g.trans, b) * nroot;
                as_integer(&s).ok_or_else(|| Error::UnrepresentablePairing(fmt_vec(&g.trans)))
            })
            .collect::<Result<_>>()?;
        Ok(MonoMap { off: self.ring.nparams(), mat: self.rd.lmat[g.w].clone(), shift })
    }

    pub fn act(&self, g: &AffElt, f: &Frac) -> Result<Frac> {
        Ok(self.zmap(g)?.frac(f))
    }

    /// `c_a = (1 − ττ'z^a)(1 + τ/τ' z^a) / (τ(1 − z^{2a}))`.
    pub fn c_function(&self, a: &AffRoot) -> Result<Frac> {
        let (t, tp) = self.tau_pair(self.rd.orbit_of(a));
        let za = self.zaff(a)?;
        let one = Poly::one();
        let n1 = &one - &Poly::mono(t.mul(&tp).mul(&za));
        let n2 = &one + &Poly::mono(t.div(&tp).mul(&za));
        let d1 = &one - &Poly::mono(za);
        let d2 = &one + &Poly::mono(za);
        Ok(Frac::with_factors(&n1 * &n2, &[Poly::mono(t), d1, d2]).reduce())
    }

    /// `c_{a_i}` for the simple affine roots.
    pub fn c_simple(&self, i: usize) -> &Frac {
        &self.csimple[i]
    }

    /// Divides out lattice denominator factors exactly, keeping scalar ones.
    pub fn clear_lattice(&self, f: &Frac) -> Result<Frac> {
        let mut num = f.num().clone();
        let mut keep = vec![];
        for (p, e) in f.den().factors() {
            if self.ring.has_lattice_vars(p) {
                for _ in 0..*e {
                    num = num.div_exact(p).ok_or(Error::InexactDivision)?;
                }
            } else {
                for _ in 0..*e {
                    keep.push(p.clone());
                }
            }
        }
        Frac::with_factors(num, &keep).div(&Frac::from_int(f.den().scale()))
    }

    // ---- generators on polynomials ----

    fn apply_t(&self, i: usize, p: &Poly) -> Result<Poly> {
        let sp = self.smaps[i].poly(p);
        let d = &sp - p;
        let c = &self.csimple[i];
        let mut r = d.clone();
        let mut exact = true;
        for (f, e) in c.den().factors() {
            for _ in 0..*e {
                match r.div_exact(f) {
                    Some(x) => r = x,
                    None => exact = false,
                }
            }
        }
        let corr = if exact {
            let r = &r * c.num();
            let s = c.den().scale();
            if s != 1 {
                if r.content() % s != 0 {
                    return Err(Error::InexactDivision);
                }
                r.div_int(s)
            } else {
                r
            }
        } else {
            c.mul_poly(&d).to_poly()?
        };
        Ok(&p.mul_mono(&self.tau_simple[i]) + &corr)
    }

    pub fn apply_gen(&self, g: Gen, p: &Poly) -> Result<Poly> {
        match g {
            Gen::T(i) => self.apply_t(i, p),
            Gen::TInv(i) => {
                let t = self.tau_simple[i];
                let base = self.apply_t(i, p)?;
                Ok(&(&base - &p.mul_mono(&t)) + &p.mul_mono(&t.inv()))
            }
            Gen::Omega(k) => Ok(self.omaps[k].0.poly(p)),
            Gen::OmegaInv(k) => Ok(self.omaps[k].1.poly(p)),
        }
    }

    /// Applies a word `g₁ g₂ ⋯ g_m` (rightmost factor first).
    pub fn apply_word(&self, word: &[Gen], p: &Poly) -> Result<Poly> {
        let mut r = p.clone();
        for g in word.iter().rev() {
            r = self.apply_gen(*g, &r)?;
        }
        Ok(r)
    }

    /// Applies a word to a polynomial whose coefficients may have scalar denominators.
    pub fn apply_word_frac(&self, word: &[Gen], f: &Frac) -> Result<Frac> {
        let num = self.apply_word(word, f.num())?;
        Ok(Frac::from_poly(num).div_den(f.den()))
    }

    /// `T_w` for `w = ω s_{i₁} ⋯ s_{i_ℓ}`.
    pub fn t_word(&self, g: &AffElt) -> Vec<Gen> {
        let (om, word) = self.rd.reduced_word(g);
        let mut out = vec![];
        if om != 0 {
            out.push(Gen::Omega(om));
        }
        out.extend(word.into_iter().map(Gen::T));
        out
    }

    /// `(T_w)^{-1}`.
    pub fn t_word_inv(&self, g: &AffElt) -> Vec<Gen> {
        let w = self.t_word(g);
        w.into_iter()
            .rev()
            .map(|x| match x {
                Gen::T(i) => Gen::TInv(i),
                Gen::TInv(i) => Gen::T(i),
                Gen::Omega(k) => Gen::OmegaInv(k),
                Gen::OmegaInv(k) => Gen::Omega(k),
            })
            .collect()
    }

    /// Dominant `μ', ν' ∈ L'` with `λ' = μ' − ν'`: the coordinate split in the
    /// fundamental-coweight basis, or a common shift by a multiple of the sum of
    /// fundamental coweights when the split leaves `L'`.
    pub fn dominant_split(&self, lp: &[Q]) -> Result<(QVec, QVec)> {
        let n = self.rd.n;
        // λ' = Σ c_i π_i with π_i the fundamental coweights, so c_i = ⟨λ', α_i⟩.
        let coeffs: Vec<Q> = (0..n).map(|i| self.rd.ip(lp, &unit_vec(n, i))).collect();
        let pis: Vec<QVec> = (0..n).map(|j| self.rd.fundamental_coweight(j)).collect();
        let comb = |cs: &[Q]| pis.iter().zip(cs).fold(zero_vec(n), |acc, (p, c)| vadd(&acc, &vscale(p, *c)));
        let plus: Vec<Q> = coeffs.iter().map(|c| if *c > Q::zero() { *c } else { Q::zero() }).collect();
        let minus: Vec<Q> = coeffs.iter().map(|c| if *c < Q::zero() { -*c } else { Q::zero() }).collect();
        let (mu, nu) = (comb(&plus), comb(&minus));
        if self.rd.lat_lp.contains(&mu) && self.rd.lat_lp.contains(&nu) {
            return Ok((mu, nu));
        }
        let rho_v = comb(&vec![Q::one(); n]);
        let mut d = 1i64;
        while !self.rd.lat_lp.contains(&vscale(&rho_v, q(d))) {
            d += 1;
        }
        let need = minus.iter().map(|c| c.ceil().to_integer()).max().unwrap_or(0);
        let k = ((need + d - 1) / d).max(1) * d;
        let delta = vscale(&rho_v, q(k));
        Ok((vadd(lp, &delta), delta))
    }

    /// Word of `Y^{λ'} = T_{t(μ')} (T_{t(ν')})^{-1}`.
    pub fn y_word(&self, lp: &[Q]) -> Result<Vec<Gen>> {
        self.rd.lat_lp.try_coords(lp)?;
        let (mu, nu) = self.dominant_split(lp)?;
        let mut w = self.t_word(&self.rd.translation(&mu));
        w.extend(self.t_word_inv(&self.rd.translation(&nu)));
        Ok(w)
    }

    pub fn y_apply(&self, lp: &[Q], p: &Poly) -> Result<Poly> {
        self.apply_word(&self.y_word(lp)?, p)
    }

    /// `h·e = X·e` for the word `h`: returns `X ∈ 𝔻(L')`, so that `β(h) = X`.
    pub fn word_times_e(&self, word: &[Gen]) -> Result<DiffOp> {
        let n = self.rd.n;
        let mut x = DiffOp::identity(n);
        for g in word.iter().rev() {
            x = self.gen_times_e(*g, &x)?;
        }
        Ok(x)
    }

    fn group_times_e(&self, g: &AffElt, map: &MonoMap, x: &DiffOp) -> DiffOp {
        // g X e = (g X g^{-1}) t(b) e with g = t(b) w.
        let b = self.rd.left_trans(g);
        let mut out = DiffOp::zero();
        for (lp, f) in &x.terms {
            out.add_term(vadd(&self.rd.act(g.w, lp), &b), map.frac(f));
        }
        out
    }

    fn gen_times_e(&self, g: Gen, x: &DiffOp) -> Result<DiffOp> {
        match g {
            Gen::Omega(k) => Ok(self.group_times_e(&self.rd.omega[k], &self.omaps[k].0, x)),
            Gen::OmegaInv(k) => {
                let inv = self.rd.aff_inv(&self.rd.omega[k]);
                Ok(self.group_times_e(&inv, &self.omaps[k].1, x))
            }
            Gen::T(i) | Gen::TInv(i) => {
                let c = &self.csimple[i];
                let t = Frac::from_mono(self.tau_simple[i]);
                let sx = self.group_times_e(&self.rd.s(i), &self.smaps[i], x);
                let mut first = if let Gen::TInv(_) = g { Frac::from_mono(self.tau_simple[i].inv()) } else { t };
                first = &first - c;
                Ok(x.scale(&first).add(&sx.scale(c)).reduced())
            }
        }
    }

    /// `β(p(Y))` for `p = Σ K(λ') ξ^{λ'}`, computed through `p(Y)·e`.
    pub fn beta_of_poly_in_y(&self, p: &BTreeMap<QVec, Frac>) -> Result<DiffOp> {
        let mut out = DiffOp::zero();
        for (lp, k) in p {
            let x = self.word_times_e(&self.y_word(lp)?)?;
            out = out.add(&x.scale(k));
        }
        Ok(out.reduced())
    }

    /// Monomials `z^μ` with `L`-coordinates in `[−r, r]ⁿ`.
    pub fn monomial_box(&self, r: i64) -> Vec<Poly> {
        box_points(self.rd.n, r).into_iter().map(|c| Poly::mono(self.ring.lat(&c))).collect()
    }
}

/// Whether the root `a` lies in the span of the simple roots indexed by `facet` (1-based).
pub fn facet_contains(rd: &RootDatum, facet: &[usize], a: &[Q]) -> bool {
    if facet.is_empty() {
        return false;
    }
    (0..rd.n).all(|j| a[j].is_zero() || facet.contains(&(j + 1)))
}

/// Difference-reflection operator `Σ f · t(λ') · w`, keyed by `(w, λ')`.
#[derive(Clone, Debug, Default)]
pub struct Dro {
    pub terms: BTreeMap<(usize, QVec), Frac>,
}

impl Dro {
    pub fn zero() -> Dro {
        Dro::default()
    }

    pub fn identity(n: usize) -> Dro {
        let mut d = Dro::zero();
        d.add_term(0, zero_vec(n), Frac::one());
        d
    }

    pub fn add_term(&mut self, w: usize, lp: QVec, f: Frac) {
        if f.is_zero() {
            return;
        }
        let key = (w, lp);
        let e = self.terms.entry(key.clone()).or_insert_with(Frac::zero);
        *e = &*e + &f;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// A group element `g = t(b) w` as an operator.
    pub fn group(ctx: &Context, g: &AffElt) -> Dro {
        let mut d = Dro::zero();
        d.add_term(g.w, ctx.rd.left_trans(g), Frac::one());
        d
    }

    pub fn generator(ctx: &Context, g: Gen) -> Dro {
        let n = ctx.rd.n;
        match g {
            Gen::Omega(k) => Dro::group(ctx, &ctx.rd.omega[k]),
            Gen::OmegaInv(k) => Dro::group(ctx, &ctx.rd.aff_inv(&ctx.rd.omega[k])),
            Gen::T(i) | Gen::TInv(i) => {
                let c = ctx.c_simple(i).clone();
                let t = if let Gen::TInv(_) = g { ctx.tau_simple(i).inv() } else { ctx.tau_simple(i) };
                let mut d = Dro::zero();
                d.add_term(0, zero_vec(n), &Frac::from_mono(t) - &c);
                let s = ctx.rd.s(i);
                d.add_term(s.w, ctx.rd.left_trans(&s), c);
                d
            }
        }
    }

    /// The inverse of a generator; other operators are rejected.
    pub fn invert_generator(ctx: &Context, g: Gen) -> Dro {
        Dro::generator(
            ctx,
            match g {
                Gen::T(i) => Gen::TInv(i),
                Gen::TInv(i) => Gen::T(i),
                Gen::Omega(k) => Gen::OmegaInv(k),
                Gen::OmegaInv(k) => Gen::Omega(k),
            },
        )
    }

    pub fn word(ctx: &Context, word: &[Gen]) -> Dro {
        let mut d = Dro::identity(ctx.rd.n);
        for g in word {
            d = d.compose(ctx, &Dro::generator(ctx, *g));
        }
        d
    }

    pub fn add(&self, o: &Dro) -> Dro {
        let mut r = self.clone();
        for ((w, lp), f) in &o.terms {
            r.add_term(*w, lp.clone(), f.clone());
        }
        r
    }

    pub fn sub(&self, o: &Dro) -> Dro {
        let mut r = self.clone();
        for ((w, lp), f) in &o.terms {
            r.add_term(*w, lp.clone(), -f);
        }
        r
    }

    /// `(f t(a) v)(g t(b) w) = f·(t(a)v)(g) · t(a + vb) · vw`.
    pub fn compose(&self, ctx: &Context, o: &Dro) -> Dro {
        let rd = &ctx.rd;
        let mut r = Dro::zero();
        for ((v, a), f1) in &self.terms {
            let g = AffElt { w: *v, trans: rd.act(rd.inv(*v), a) };
            let map = ctx.zmap(&g).expect("translations in L'");
            for ((w, b), f2) in &o.terms {
                let coeff = f1 * &map.frac(f2);
                r.add_term(rd.mul(*v, *w), vadd(a, &rd.act(*v, b)), coeff);
            }
        }
        r.reduced()
    }

    pub fn apply(&self, ctx: &Context, g: &Frac) -> Result<Frac> {
        let rd = &ctx.rd;
        let mut acc = Frac::zero();
        for ((w, lp), f) in &self.terms {
            let el = AffElt { w: *w, trans: rd.act(rd.inv(*w), lp) };
            acc = &acc + &(f * &ctx.act(&el, g)?);
        }
        ctx.clear_lattice(&acc)
    }

    /// `β(Σ D_w w) = Σ D_w`.
    pub fn beta(&self) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((_, lp), f) in &self.terms {
            out.add_term(lp.clone(), f.clone());
        }
        out.reduced()
    }

    pub fn reduced(mut self) -> Dro {
        for f in self.terms.values_mut() {
            *f = f.reduce();
        }
        self
    }
}

/// Outcome of a single named identity check.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Check {
        Check { name: name.into(), pass, detail }
    }
}

fn words_agree(ctx: &Context, lhs: &[Gen], rhs: &[Gen], boxm: &[Poly]) -> Result<Option<String>> {
    for m in boxm {
        let a = ctx.apply_word(lhs, m)?;
        let b = ctx.apply_word(rhs, m)?;
        if a != b {
            return Ok(Some(format!("differs on {}", ctx.ring.fmt_poly(m, "z"))));
        }
    }
    Ok(None)
}

/// Order of `s_i s_j` in the affine Weyl group, if at most 6.
pub fn braid_order(rd: &RootDatum, i: usize, j: usize) -> Option<usize> {
    let g = rd.aff_mul(&rd.s(i), &rd.s(j));
    let mut p = g.clone();
    for m in 1..=6 {
        if p == rd.aff_identity() {
            return Some(m);
        }
        p = rd.aff_mul(&p, &g);
    }
    None
}

/// Braid, quadratic and Ω-conjugation relations on a monomial box of radius `r`.
pub fn verify_presentation(ctx: &Context, r: i64) -> Result<Vec<Check>> {
    let n = ctx.rd.n;
    let boxm = ctx.monomial_box(r);
    let mut out = vec![];
    for i in 0..=n {
        for j in i + 1..=n {
            if let Some(m) = braid_order(&ctx.rd, i, j) {
                let lhs: Vec<Gen> = (0..m).map(|k| Gen::T(if k % 2 == 0 { i } else { j })).collect();
                let rhs: Vec<Gen> = (0..m).map(|k| Gen::T(if k % 2 == 0 { j } else { i })).collect();
                let d = words_agree(ctx, &lhs, &rhs, &boxm)?;
                out.push(Check::new(format!("braid T{i},T{j} (m={m})"), d.is_none(), d));
            }
        }
    }
    for i in 0..=n {
        let t = ctx.tau_simple(i);
        let mut detail = None;
        for m in &boxm {
            // (T − τ)(T + τ^{-1}) m = T²m + (τ^{-1} − τ) T m − m.
            let tm = ctx.apply_gen(Gen::T(i), m)?;
            let ttm = ctx.apply_gen(Gen::T(i), &tm)?;
            let r = &(&ttm + &(&tm.mul_mono(&t.inv()) - &tm.mul_mono(&t))) - m;
            if !r.is_zero() {
                detail = Some(format!("nonzero on {}", ctx.ring.fmt_poly(m, "z")));
                break;
            }
        }
        out.push(Check::new(format!("quadratic T{i}"), detail.is_none(), detail));
    }
    for k in 1..ctx.rd.omega.len() {
        for i in 0..=n {
            let j = ctx.rd.omega_perm[k][i];
            let lhs = [Gen::Omega(k), Gen::T(i), Gen::OmegaInv(k)];
            let d = words_agree(ctx, &lhs, &[Gen::T(j)], &boxm)?;
            out.push(Check::new(format!("omega{k} T{i} omega{k}^-1 = T{j}"), d.is_none(), d));
        }
    }
    Ok(out)
}

/// `T_i` applied to each monomial of the box yields a Laurent polynomial.
pub fn verify_polynomial_action(ctx: &Context, r: i64) -> Result<Check> {
    for m in ctx.monomial_box(r) {
        for i in 0..=ctx.rd.n {
            if let Err(e) = ctx.apply_gen(Gen::T(i), &m) {
                return Ok(Check::new("T_i preserve Laurent polynomials", false, Some(e.to_string())));
            }
        }
    }
    Ok(Check::new("T_i preserve Laurent polynomials", true, None))
}

/// Symmetric monomial `m_{λ'}(ξ)` as a coefficient map on its orbit.
pub fn orbit_sum(rd: &RootDatum, lp: &[Q]) -> BTreeMap<QVec, Frac> {
    rd.orbit(lp).into_iter().map(|v| (v, Frac::one())).collect()
}

/// Product of two Laurent polynomials in `ξ` stored as coefficient maps.
pub fn xi_product(a: &BTreeMap<QVec, Frac>, b: &BTreeMap<QVec, Frac>) -> BTreeMap<QVec, Frac> {
    let mut out: BTreeMap<QVec, Frac> = BTreeMap::new();
    for (x, f) in a {
        for (y, g) in b {
            let e = out.entry(vadd(x, y)).or_insert_with(Frac::zero);
            *e = &*e + &(f * g);
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}
