//! Difference operators with rational coefficients: the Macdonald operators by
//! two independent routes, the Harish-Chandra homomorphism and its facet
//! versions, the eigenvalue twist and monic Macdonald polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::lattice::*;
use crate::algebra::{Frac, Poly};
use crate::error::{Error, Result};
use crate::heckeops::{orbit_sum, Context};
use crate::rootdata::{AffElt, RootDatum};

/// `Σ f_{λ'}(z) t(λ')`.
#[derive(Clone, Debug, Default)]
pub struct DiffOp {
    pub terms: BTreeMap<QVec, Frac>,
}

impl DiffOp {
    pub fn zero() -> DiffOp {
        DiffOp::default()
    }

    pub fn identity(n: usize) -> DiffOp {
        DiffOp::constant(n, Frac::one())
    }

    pub fn constant(n: usize, f: Frac) -> DiffOp {
        let mut d = DiffOp::zero();
        d.add_term(zero_vec(n), f);
        d
    }

    pub fn translation(lp: QVec, f: Frac) -> DiffOp {
        let mut d = DiffOp::zero();
        d.add_term(lp, f);
        d
    }

    pub fn add_term(&mut self, lp: QVec, f: Frac) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(lp.clone()).or_insert_with(Frac::zero);
        *e = &*e + &f;
        if e.is_zero() {
            self.terms.remove(&lp);
        }
    }

    pub fn coeff(&self, lp: &[Q]) -> Frac {
        self.terms.get(lp).cloned().unwrap_or_else(Frac::zero)
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        for (lp, f) in &o.terms {
            r.add_term(lp.clone(), f.clone());
        }
        r
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        for (lp, f) in &o.terms {
            r.add_term(lp.clone(), -f);
        }
        r
    }

    /// Left multiplication by a function.
    pub fn scale(&self, f: &Frac) -> DiffOp {
        let mut r = DiffOp::zero();
        for (lp, g) in &self.terms {
            r.add_term(lp.clone(), f * g);
        }
        r
    }

    pub fn reduced(mut self) -> DiffOp {
        for f in self.terms.values_mut() {
            *f = f.reduce();
        }
        self.terms.retain(|_, f| !f.is_zero());
        self
    }

    /// Coefficient-wise equality (cross-multiplied).
    pub fn equals(&self, o: &DiffOp) -> bool {
        self.sub(o).terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|f| f.is_zero())
    }

    /// `(f t(a))(g t(b)) = f·t(a)(g)·t(a+b)`.
    pub fn compose(&self, ctx: &Context, o: &DiffOp) -> Result<DiffOp> {
        let mut r = DiffOp::zero();
        for (a, f) in &self.terms {
            let map = ctx.zmap(&ctx.rd.translation(a))?;
            for (b, g) in &o.terms {
                r.add_term(vadd(a, b), f * &map.frac(g));
            }
        }
        Ok(r.reduced())
    }

    /// `w D w^{-1}`.
    pub fn conj(&self, ctx: &Context, w: usize) -> Result<DiffOp> {
        let map = ctx.zmap(&ctx.rd.finite(w))?;
        let mut r = DiffOp::zero();
        for (lp, f) in &self.terms {
            r.add_term(ctx.rd.act(w, lp), map.frac(f));
        }
        Ok(r)
    }

    /// Applies to a function; lattice denominators must divide out.
    pub fn apply(&self, ctx: &Context, g: &Frac) -> Result<Frac> {
        let mut acc = Frac::zero();
        for (lp, f) in &self.terms {
            let el = AffElt { w: 0, trans: lp.clone() };
            acc = &acc + &(f * &ctx.act(&el, g)?);
        }
        ctx.clear_lattice(&acc)
    }
}

/// Selector for the coweight `π'` of a Macdonald operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiSel {
    /// Antidominant minuscule `w₀π_j'` for a fundamental index `j` (1-based).
    Minuscule(usize),
    /// `−φ∨`.
    Quasi,
}

impl PiSel {
    pub fn parse(s: &str) -> Result<PiSel> {
        if s == "quasi" || s == "quasiminuscule" {
            return Ok(PiSel::Quasi);
        }
        let j = s
            .strip_prefix("minuscule")
            .unwrap_or(s)
            .trim_start_matches(':')
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("coweight selector {s}")))?;
        Ok(PiSel::Minuscule(j))
    }

    pub fn tag(&self) -> String {
        match self {
            PiSel::Minuscule(j) => format!("minuscule{j}"),
            PiSel::Quasi => "quasi".into(),
        }
    }
}

/// The antidominant coweight selected by `sel`.
pub fn pi_prime(rd: &RootDatum, sel: PiSel) -> Result<QVec> {
    match sel {
        PiSel::Quasi => Ok(vneg(&rd.quasi_minuscule())),
        PiSel::Minuscule(j) => rd
            .minuscule()
            .into_iter()
            .find(|(i, _)| *i == j)
            .map(|(_, p)| rd.antidominant(&p))
            .ok_or_else(|| Error::NotSpecialCoweight(format!("no minuscule coweight with index {j}"))),
    }
}

/// All supported selectors of a datum: minuscule indices, then the quasi-minuscule one.
pub fn supported_pis(rd: &RootDatum) -> Vec<PiSel> {
    let mut v: Vec<PiSel> = rd.minuscule().into_iter().map(|(j, _)| PiSel::Minuscule(j)).collect();
    v.push(PiSel::Quasi);
    v
}

/// Whether `π'` is minuscule (its orbit avoids the constant term).
pub fn is_minuscule(rd: &RootDatum, pi: &[Q]) -> bool {
    let d = rd.dominant(pi);
    rd.minuscule().iter().any(|(_, p)| *p == d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Hecke,
    Explicit,
}

/// `f_{π'} = Π_{a ∈ S₁(t(−π'))} c_a`.
pub fn f_pi(ctx: &Context, pi: &[Q]) -> Result<Frac> {
    let mut f = Frac::one();
    for a in ctx.rd.cross_set(&ctx.rd.translation(&vneg(pi))) {
        f = &f * &ctx.c_function(&a)?;
    }
    Ok(f.reduce())
}

/// `m_{π'}(−ρ_{k'}) = Σ_{μ' ∈ W₀π'} q^{−⟨ρ_{k'},μ'⟩}`.
pub fn m_at_minus_rho(ctx: &Context, pi: &[Q]) -> Result<Frac> {
    let mut s = Frac::zero();
    for mu in ctx.rd.orbit(pi) {
        s = &s + &Frac::from_mono(ctx.rho_pair(&mu)?.inv());
    }
    Ok(s)
}

/// The Macdonald operator `D_{π'}` through `β(m_{π'}(Y))` or through the
/// explicit coefficient formula.
pub fn macdonald_operator(ctx: &Context, pi: &[Q], route: Route) -> Result<DiffOp> {
    let rd = &ctx.rd;
    if !rd.lat_lp.contains(pi) || !(is_minuscule(rd, pi) || rd.dominant(pi) == rd.quasi_minuscule()) {
        return Err(Error::NotSpecialCoweight(fmt_vec(pi)));
    }
    match route {
        Route::Hecke => ctx.beta_of_poly_in_y(&orbit_sum(rd, pi)),
        Route::Explicit => {
            let f = f_pi(ctx, pi)?;
            let n = rd.n;
            let mut d = DiffOp::zero();
            let mut constant = m_at_minus_rho(ctx, pi)?;
            for (mu, w) in rd.orbit_with_reps(pi) {
                let wf = ctx.act(&rd.finite(w), &f)?;
                constant = &constant - &wf;
                d.add_term(mu, wf);
            }
            if !is_minuscule(rd, pi) {
                d.add_term(zero_vec(n), constant);
            }
            Ok(d.reduced())
        }
    }
}

/// Symmetric Laurent polynomial in `ξ`, as coefficients on `L'`.
pub type XiPoly = BTreeMap<QVec, Frac>;

fn check_symmetric(rd: &RootDatum, p: &XiPoly) -> Result<()> {
    for (lp, k) in p {
        for w in 0..rd.order() {
            let img = rd.act(w, lp);
            match p.get(&img) {
                Some(c) if c == k => {}
                _ => return Err(Error::NotSymmetric),
            }
        }
    }
    Ok(())
}

/// `D_p = β(p(Y))` for a `W₀`-invariant `p`.
pub fn build_dp(ctx: &Context, p: &XiPoly) -> Result<DiffOp> {
    check_symmetric(&ctx.rd, p)?;
    ctx.beta_of_poly_in_y(p)
}

/// Degree of a monomial for the grading by the `Δ`-coordinates outside `facet`.
fn facet_degree(ctx: &Context, facet: &[usize], m: &crate::algebra::Mono) -> Q {
    let d = ctx.frame().delta(m);
    (0..ctx.rd.n).filter(|j| !facet.contains(&(j + 1))).map(|j| d[j]).sum()
}

fn top_part(ctx: &Context, facet: &[usize], p: &Poly) -> (Q, Poly) {
    let mut best: Option<Q> = None;
    for (m, _) in p.terms() {
        let g = facet_degree(ctx, facet, m);
        if best.is_none_or(|b| g > b) {
            best = Some(g);
        }
    }
    let b = best.unwrap_or_else(Q::zero);
    let top = Poly::from_terms(p.terms().iter().filter(|(m, _)| facet_degree(ctx, facet, m) == b).cloned());
    (b, top)
}

/// Part of the cone expansion of `f` supported on `ℤ≥0F`, as a rational function.
pub fn facet_part(ctx: &Context, facet: &[usize], f: &Frac) -> Result<Frac> {
    if f.is_zero() {
        return Ok(Frac::zero());
    }
    let (mut deg, ntop) = top_part(ctx, facet, f.num());
    let mut dens = vec![];
    for (p, e) in f.den().factors() {
        let (g, top) = top_part(ctx, facet, p);
        deg -= g * q(*e as i64);
        for _ in 0..*e {
            dens.push(top.clone());
        }
    }
    if deg > Q::zero() {
        return Err(Error::NonExpandable("leading exponent above 0".into()));
    }
    if deg < Q::zero() {
        return Ok(Frac::zero());
    }
    Frac::with_factors(ntop, &dens).div(&Frac::from_int(f.den().scale()))
}

/// `γ_F(D) = Σ γ_F(f_{λ'}) q^{⟨ρ_{k',F},λ'⟩} t(λ')` for `F` given by 1-based simple indices.
pub fn gamma_facet(ctx: &Context, facet: &[usize], d: &DiffOp) -> Result<DiffOp> {
    let mut out = DiffOp::zero();
    for (lp, f) in &d.terms {
        let c = facet_part(ctx, facet, f)?;
        out.add_term(lp.clone(), c.mul_mono(&ctx.rho_pair_facet(lp, facet)?));
    }
    Ok(out.reduced())
}

/// The Harish-Chandra homomorphism `γ(D) = Σ C₀(λ') q^{⟨ρ_{k'},λ'⟩} ξ^{λ'}`.
pub fn gamma_hc(ctx: &Context, d: &DiffOp) -> Result<XiPoly> {
    let g = gamma_facet(ctx, &[], d)?;
    for f in g.terms.values() {
        if f.num().terms().iter().any(|(m, _)| !ctx.ring.lattice_part(m).is_one())
            || f.den().factors().iter().any(|(p, _)| ctx.ring.has_lattice_vars(p))
        {
            return Err(Error::NonExpandable("constant term depends on z".into()));
        }
    }
    Ok(g.terms)
}

/// `π(D) = |W₀|^{-1} Σ_w w D w^{-1}`.
pub fn symmetrize(ctx: &Context, d: &DiffOp) -> Result<DiffOp> {
    let mut acc = DiffOp::zero();
    for w in 0..ctx.rd.order() {
        acc = acc.add(&d.conj(ctx, w)?);
    }
    let k = Frac::from_int(ctx.rd.order() as i128).inv()?;
    Ok(acc.scale(&k).reduced())
}

/// `p̃(λ) = Σ K(λ') q^{−⟨ρ_{k'},λ'⟩} q^{−⟨λ',λ⟩}` for `λ` in root coordinates.
pub fn eigenvalue_twist(ctx: &Context, p: &XiPoly, lambda: &[Q]) -> Result<Frac> {
    let mut s = Frac::zero();
    for (lp, k) in p {
        let m = ctx.rho_pair(lp)?.inv().mul(&ctx.ring.q_pow(-ctx.rd.ip(lp, lambda))?);
        s = &s + &k.mul_mono(&m);
    }
    Ok(s)
}

/// Symmetric Laurent polynomial in `z`, as coefficients of `m_λ` on dominant `λ ∈ L`.
pub type SymPoly = BTreeMap<QVec, Frac>;

pub fn monomial_symmetric(ctx: &Context, lambda: &[Q]) -> Result<Poly> {
    let mut p = Poly::zero();
    for mu in ctx.rd.orbit(lambda) {
        p = &p + &Poly::mono(ctx.z(&mu)?);
    }
    Ok(p)
}

pub fn sym_to_frac(ctx: &Context, s: &SymPoly) -> Result<Frac> {
    let mut f = Frac::zero();
    for (l, c) in s {
        f = &f + &c.mul_poly(&monomial_symmetric(ctx, l)?);
    }
    Ok(f)
}

/// Coefficients of a Laurent polynomial with scalar denominators, by `z`-exponent.
pub fn z_coefficients(ctx: &Context, f: &Frac) -> BTreeMap<QVec, Frac> {
    let mut groups: BTreeMap<QVec, Vec<(crate::algebra::Mono, i128)>> = BTreeMap::new();
    for (m, c) in f.num().terms() {
        groups.entry(ctx.z_point(m)).or_default().push((ctx.ring.param_part(m), *c));
    }
    groups
        .into_iter()
        .map(|(k, v)| (k, Frac::from_poly(Poly::from_terms(v)).div_den(f.den())))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Expansion of a `W₀`-invariant function in the basis `m_λ`.
pub fn frac_to_sym(ctx: &Context, f: &Frac) -> Result<SymPoly> {
    let coeffs = z_coefficients(ctx, f);
    let mut out = SymPoly::new();
    for (mu, c) in &coeffs {
        for w in 0..ctx.rd.order() {
            match coeffs.get(&ctx.rd.act(w, mu)) {
                Some(d) if d == c => {}
                _ => return Err(Error::NotSymmetric),
            }
        }
        if ctx.rd.is_dominant(mu) {
            out.insert(mu.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `D m_λ` in the basis `m_μ`, together with the triangularity verdict.
pub fn triangular_image(ctx: &Context, d: &DiffOp, p: &XiPoly, lambda: &[Q]) -> Result<(SymPoly, bool)> {
    let img = d.apply(ctx, &Frac::from_poly(monomial_symmetric(ctx, lambda)?))?;
    let s = frac_to_sym(ctx, &img)?;
    let support_ok = s.keys().all(|mu| ctx.rd.leq(mu, lambda));
    let lead = s.get(lambda).cloned().unwrap_or_else(Frac::zero);
    let ok = support_ok && lead == eigenvalue_twist(ctx, p, lambda)?;
    Ok((s, ok))
}

/// Monic `P_λ` solving `D P_λ = p̃(λ) P_λ` by back-substitution on the saturated set.
pub fn macdonald_polynomial(ctx: &Context, d: &DiffOp, p: &XiPoly, lambda: &[Q]) -> Result<SymPoly> {
    let rd = &ctx.rd;
    if !rd.is_dominant(lambda) || !rd.lat_l.contains(lambda) {
        return Err(Error::PreconditionViolated(format!("{} is not a dominant weight of L", fmt_vec(lambda))));
    }
    let sat = rd.saturated_set(lambda);
    let ev = eigenvalue_twist(ctx, p, lambda)?;
    let mut images: BTreeMap<QVec, SymPoly> = BTreeMap::new();
    for mu in &sat {
        let img = d.apply(ctx, &Frac::from_poly(monomial_symmetric(ctx, mu)?))?;
        images.insert(mu.clone(), frac_to_sym(ctx, &img)?);
    }
    let mut k: SymPoly = SymPoly::new();
    k.insert(lambda.to_vec(), Frac::one());
    // `sat` is ordered by decreasing height, which refines the dominance order.
    for nu in sat.iter().skip(1) {
        let mut rhs = Frac::zero();
        for (mu, kmu) in &k {
            if let Some(c) = images[mu].get(nu) {
                rhs = &rhs + &(kmu * c);
            }
        }
        let diag = &ev - &eigenvalue_twist(ctx, p, nu)?;
        if diag.is_zero() {
            return Err(Error::SpectrumCollision(fmt_vec(lambda), fmt_vec(nu)));
        }
        let c = rhs.div(&diag)?.reduce();
        if !c.is_zero() {
            k.insert(nu.clone(), c);
        }
    }
    Ok(k)
}

/// `D P = p̃(λ) P`, checked exactly in the monomial basis.
///
/// `D` is applied to each `m_μ` separately; the coefficients of `P` only enter
/// linearly, which keeps their denominators apart.
pub fn is_eigenfunction(ctx: &Context, d: &DiffOp, p: &XiPoly, lambda: &[Q], poly: &SymPoly) -> Result<bool> {
    let ev = eigenvalue_twist(ctx, p, lambda)?;
    let mut lhs: SymPoly = SymPoly::new();
    for (mu, c) in poly {
        let img = frac_to_sym(ctx, &d.apply(ctx, &Frac::from_poly(monomial_symmetric(ctx, mu)?))?)?;
        for (nu, e) in img {
            let slot = lhs.entry(nu).or_insert_with(Frac::zero);
            *slot = &*slot + &(c * &e);
        }
    }
    let keys: std::collections::BTreeSet<&QVec> = lhs.keys().chain(poly.keys()).collect();
    for k in keys {
        let l = lhs.get(k).cloned().unwrap_or_else(Frac::zero);
        let r = poly.get(k).map(|c| c * &ev).unwrap_or_else(Frac::zero);
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[D, D'] = DD' − D'D`.
pub fn commutator(ctx: &Context, a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    Ok(a.compose(ctx, b)?.sub(&b.compose(ctx, a)?).reduced())
}
