//! Difference Harish-Chandra series `Φ = Σ_x Γ_x z^{−x}`.
//!
//! Cone points `x ∈ ℤ≥0Δ` are `Δ`-coordinate vectors. A difference operator
//! `Σ f_{λ'}(z) t(λ')` acts on a cone series through the expansions
//! `f_{λ'} = Σ_y d_{λ'}(y) z^{−y}` and `t(λ')(Γ_y z^{−y}) = q^{⟨λ',y⟩} ξ^{−λ'} Γ_y z^{−y}`.
//! In specialized mode `ξ^{λ'}` is replaced by `q^{⟨λ',λ⟩}`.
//!
//! Formal coefficients are kept as unreduced fractions over the products of
//! the recurrence factors `r̃(ξ) − t(x)r̃(ξ)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::lattice::*;
use crate::algebra::series::{cone_expand, ConeCoeffs, Point};
use crate::algebra::{Frac, Mono, Poly};
use crate::error::{Error, Result};
use crate::heckeops::{orbit_sum, Context, Label};
use crate::macops::{self, DiffOp, SymPoly, XiPoly};
use crate::rootdata::{cone_points, AffRoot, Case};

/// `ξ^{μ'} ↦ q^{⟨μ',v⟩} ξ^{μ'}`, dropping the `ξ`-part when `keep` is false.
fn subst_xi(ctx: &Context, f: &Frac, v: &[Q], keep: bool) -> Result<Frac> {
    let nroot = q(ctx.ring.q_root());
    let exps: Vec<i32> = ctx
        .rd
        .lat_lp
        .basis()
        .iter()
        .map(|b| {
            let e = ctx.rd.ip(b, v) * nroot;
            as_integer(&e).map(|e| e as i32).ok_or_else(|| Error::UnrepresentablePairing(fmt_vec(v)))
        })
        .collect::<Result<_>>()?;
    f.map_monos(|m| {
        let c = ctx.ring.lat_coords(m);
        let e: i32 = c.iter().zip(&exps).map(|(a, b)| *a as i32 * b).sum();
        let base = if keep { *m } else { ctx.ring.param_part(m) };
        (base.mul(&Mono::var(0, e)), 1)
    })
}

/// `t(x)f(ξ)`, i.e. `f` evaluated at `λ − x`.
pub fn shift_xi(ctx: &Context, f: &Frac, x: &[Q]) -> Result<Frac> {
    subst_xi(ctx, f, &vneg(x), true)
}

/// `f(λ)` with `ξ^{μ'}(λ) = q^{⟨μ',λ⟩}`.
pub fn evaluate_xi(ctx: &Context, f: &Frac, lambda: &[Q]) -> Result<Frac> {
    subst_xi(ctx, f, lambda, false)
}

/// Cone expansions `d_{λ'}(y)` of the coefficients of an operator, and its symbol
/// `r̃(ξ) = Σ d_{λ'}(0) ξ^{−λ'}`.
#[derive(Clone, Debug)]
pub struct OpExpansion {
    pub height: usize,
    pub terms: Vec<(QVec, ConeCoeffs)>,
    pub symbol: Frac,
}

pub fn expand_operator(ctx: &Context, d: &DiffOp, h: usize) -> Result<OpExpansion> {
    let zero = vec![0i64; ctx.rd.n];
    let mut terms = vec![];
    let mut symbol = Frac::zero();
    for (lp, f) in &d.terms {
        let s = cone_expand(ctx.frame(), f, Some(Mono::ONE), h)?;
        if let Some(c0) = s.coeffs.get(&zero) {
            symbol = &symbol + &c0.mul_mono(&ctx.xi(&vneg(lp))?);
        }
        terms.push((lp.clone(), s.coeffs));
    }
    Ok(OpExpansion { height: h, terms, symbol })
}

/// Formal spectral variable or a specialized spectral point (root coordinates).
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Formal,
    Specialized(QVec),
}

#[derive(Clone, Debug)]
pub struct HcSeries {
    pub mode: Mode,
    pub height: usize,
    pub pi: QVec,
    pub coeffs: ConeCoeffs,
}

impl HcSeries {
    pub fn coeff(&self, x: &[i64]) -> Frac {
        self.coeffs.get(x).cloned().unwrap_or_else(Frac::zero)
    }
}

fn ht(x: &[i64]) -> usize {
    x.iter().sum::<i64>() as usize
}

fn gap(x: &[i64], y: &[i64]) -> Option<Point> {
    let d: Point = x.iter().zip(y).map(|(a, b)| a - b).collect();
    d.iter().all(|c| *c >= 0).then_some(d)
}

/// The factor `q^{⟨λ',y⟩} ξ^{−λ'}`, or `q^{⟨λ',y−λ⟩}` at a spectral point.
fn step_factor(ctx: &Context, mode: &Mode, lp: &[Q], y: &[Q]) -> Result<Mono> {
    match mode {
        Mode::Formal => Ok(ctx.ring.q_pow(ctx.rd.ip(lp, y))?.mul(&ctx.xi(&vneg(lp))?)),
        Mode::Specialized(l) => ctx.ring.q_pow(ctx.rd.ip(lp, &vsub(y, l))),
    }
}

fn eigenvalue(ctx: &Context, mode: &Mode, e: &OpExpansion) -> Result<Frac> {
    match mode {
        Mode::Formal => Ok(e.symbol.clone()),
        Mode::Specialized(l) => evaluate_xi(ctx, &e.symbol, l),
    }
}

/// `Σ_{λ', y<x} d_{λ'}(x−y) q^{⟨λ',y⟩} ξ^{−λ'} Γ_y`, optionally including `y = x`.
fn recurrence_sum(ctx: &Context, mode: &Mode, e: &OpExpansion, known: &ConeCoeffs, x: &[i64], with_diag: bool) -> Result<Frac> {
    let mut acc = Frac::zero();
    for (y, gy) in known {
        if !with_diag && y.as_slice() == x {
            continue;
        }
        let Some(g) = gap(x, y) else { continue };
        let yv = ctx.rd.delta_point(y);
        for (lp, ser) in &e.terms {
            if let Some(d) = ser.get(&g) {
                acc = &acc + &(d * gy).mul_mono(&step_factor(ctx, mode, lp, &yv)?);
            }
        }
    }
    Ok(acc)
}

/// Recurrence options: sweep order inside a height layer and worker threads.
#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Permutation applied to each layer (indices modulo the layer size).
    pub layer_order: Option<Vec<usize>>,
    pub threads: usize,
}

fn layers(n: usize, h: usize, opts: &SweepOptions) -> Vec<Vec<Point>> {
    let mut by: Vec<Vec<Point>> = vec![vec![]; h + 1];
    for x in cone_points(n, h) {
        by[ht(&x)].push(x);
    }
    if let Some(perm) = &opts.layer_order {
        for layer in by.iter_mut() {
            let k = layer.len();
            let mut idx: Vec<usize> = (0..k).collect();
            idx.sort_by_key(|&i| perm.get(i).copied().unwrap_or(i) % k.max(1) * k + i);
            *layer = idx.into_iter().map(|i| layer[i].clone()).collect();
        }
    }
    by
}

fn map_layer<T: Send>(points: &[Point], threads: usize, f: impl Fn(&Point) -> Result<T> + Sync) -> Result<Vec<T>> {
    if threads <= 1 || points.len() < 2 {
        return points.iter().map(f).collect();
    }
    let chunk = points.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = points.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Result<Vec<T>>>())).collect();
        let mut out = vec![];
        for h in handles {
            out.extend(h.join().expect("recurrence worker panicked")?);
        }
        Ok(out)
    })
}

/// Formal series from the recurrence of one operator with symbol `r̃`.
pub fn hc_series_formal_with(ctx: &Context, e: &OpExpansion, pi: &[Q], h: usize, opts: &SweepOptions) -> Result<HcSeries> {
    hc_series_formal_streaming(ctx, e, pi, h, opts, |_, _| Ok(()))
}

/// As [`hc_series_formal_with`], handing each completed height layer to `on_layer`.
pub fn hc_series_formal_streaming(
    ctx: &Context,
    e: &OpExpansion,
    pi: &[Q],
    h: usize,
    opts: &SweepOptions,
    mut on_layer: impl FnMut(usize, &ConeCoeffs) -> Result<()>,
) -> Result<HcSeries> {
    if h > e.height {
        return Err(Error::HeightBudgetExceeded(h, e.height));
    }
    let mode = Mode::Formal;
    let mut coeffs = ConeCoeffs::new();
    coeffs.insert(vec![0; ctx.rd.n], Frac::one());
    on_layer(0, &coeffs)?;
    for (height, layer) in layers(ctx.rd.n, h, opts).into_iter().enumerate().skip(1) {
        let known = &coeffs;
        let vals = map_layer(&layer, opts.threads, |x| {
            let rhs = recurrence_sum(ctx, &mode, e, known, x, false)?;
            if rhs.is_zero() {
                return Ok(Frac::zero());
            }
            let lhs = &e.symbol - &shift_xi(ctx, &e.symbol, &ctx.rd.delta_point(x))?;
            rhs.div(&lhs)
        })?;
        let mut fresh = ConeCoeffs::new();
        for (x, v) in layer.into_iter().zip(vals) {
            if !v.is_zero() {
                fresh.insert(x, v);
            }
        }
        on_layer(height, &fresh)?;
        coeffs.extend(fresh);
    }
    Ok(HcSeries { mode, height: h, pi: pi.to_vec(), coeffs })
}

/// `Φ(z, ξ)` through height `h` from the Macdonald operator `D_{π'}`.
pub fn hc_series_formal(ctx: &Context, pi: &[Q], h: usize) -> Result<HcSeries> {
    let d = macops::macdonald_operator(ctx, pi, macops::Route::Explicit)?;
    hc_series_formal_with(ctx, &expand_operator(ctx, &d, h)?, pi, h, &SweepOptions::default())
}

/// Checks `D Φ = r̃_D Φ` through height `n_prime`; returns the first failing point.
pub fn eigen_defect(ctx: &Context, s: &HcSeries, e: &OpExpansion, n_prime: usize) -> Result<Option<Point>> {
    let budget = s.height.min(e.height);
    if n_prime > budget {
        return Err(Error::HeightBudgetExceeded(n_prime, budget));
    }
    let ev = eigenvalue(ctx, &s.mode, e)?;
    for x in cone_points(ctx.rd.n, n_prime) {
        let lhs = recurrence_sum(ctx, &s.mode, e, &s.coeffs, &x, true)?;
        if lhs != &ev * &s.coeff(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn verify_eigen(ctx: &Context, s: &HcSeries, e: &OpExpansion, n_prime: usize) -> Result<bool> {
    Ok(eigen_defect(ctx, s, e, n_prime)?.is_none())
}

/// `Γ_x · Π_{0<x'≤x}(r̃ − t(x')r̃)` is a Laurent polynomial for every computed `x`.
pub fn denominators_divide(ctx: &Context, s: &HcSeries, e: &OpExpansion) -> Result<bool> {
    for (x, g) in &s.coeffs {
        let mut f = g.clone();
        for y in cone_points(ctx.rd.n, ht(x)).into_iter().skip(1) {
            if gap(x, &y).is_some() {
                let fac = &e.symbol - &shift_xi(ctx, &e.symbol, &ctx.rd.delta_point(&y))?;
                f = &f * &fac;
            }
        }
        if f.reduce().to_poly().is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dot action `w·λ = w(λ + ρ_{k'}) − ρ_{k'}`.
pub fn dot(ctx: &Context, w: usize, lambda: &[Q]) -> Result<QVec> {
    let rho = ctx.rho_vec().ok_or_else(|| Error::PreconditionViolated("dot action needs specialized labels".into()))?;
    Ok(vsub(&ctx.rd.act(w, &vadd(lambda, &rho)), &rho))
}

/// `λ − w·λ ∈ ℤ≥0Δ∖{0}` of height at most `h` for some `w ≠ e`.
///
/// With generic labels `ρ_{k'}` is formal and `λ − w·λ` always has a nonzero
/// label-dependent part, so no rational `λ` is singular.
pub fn singular_member(ctx: &Context, lambda: &[Q], h: usize) -> bool {
    let Some(rho) = ctx.rho_vec() else { return false };
    let v = vadd(lambda, &rho);
    (0..ctx.rd.order()).any(|w| {
        let d = ctx.rd.delta_coords(&vsub(&v, &ctx.rd.act(w, &v)));
        let ok = d.iter().all(|c| c.is_integer() && !c.is_negative());
        let height: Q = d.iter().sum();
        ok && !height.is_zero() && height <= q(h as i64)
    })
}

/// Antidominant generators of the dominant monoid of `L'`: the smallest
/// multiples of the fundamental coweights lying in `L'`.
pub fn generator_coweights(ctx: &Context) -> Vec<QVec> {
    let rd = &ctx.rd;
    (0..rd.n)
        .map(|j| {
            let p = rd.fundamental_coweight(j);
            let k = (1..).find(|k| rd.lat_lp.contains(&vscale(&p, q(*k)))).unwrap();
            rd.antidominant(&vscale(&p, q(k)))
        })
        .collect()
}

/// `W₀`-invariants separating dot orbits: orbit sums over [`generator_coweights`].
pub fn generator_symbols(ctx: &Context) -> Vec<XiPoly> {
    generator_coweights(ctx).iter().map(|p| orbit_sum(&ctx.rd, p)).collect()
}

/// Operators `D_p` for the generators, special coweights first.
pub fn generator_operators(ctx: &Context, h: usize) -> Result<Vec<OpExpansion>> {
    let mut special = vec![];
    let mut other = vec![];
    for p in generator_coweights(ctx) {
        let rd = &ctx.rd;
        let is_special = macops::is_minuscule(rd, &p) || rd.dominant(&p) == rd.quasi_minuscule();
        if is_special {
            special.push(macops::macdonald_operator(ctx, &p, macops::Route::Explicit)?);
        } else {
            other.push(macops::build_dp(ctx, &orbit_sum(rd, &p))?);
        }
    }
    special.into_iter().chain(other).map(|d| expand_operator(ctx, &d, h)).collect()
}

/// `p̃(λ) = p̃(λ − x)` for all generators and some nonzero `x` of height at most `h`.
pub fn spectral_collision(ctx: &Context, lambda: &[Q], h: usize) -> Result<bool> {
    let gens = generator_symbols(ctx);
    let at = |l: &[Q]| -> Result<Vec<Frac>> { gens.iter().map(|p| macops::eigenvalue_twist(ctx, p, l)).collect() };
    let base = at(lambda)?;
    for x in cone_points(ctx.rd.n, h).into_iter().skip(1) {
        if at(&vsub(lambda, &ctx.rd.delta_point(&x)))? == base {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Φ_λ` by running the recurrence at the spectral point. At each `x` the first
/// operator separating `λ` from `λ − x` is used.
pub fn hc_series_specialized(ctx: &Context, ops: &[OpExpansion], pi: &[Q], lambda: &[Q], h: usize) -> Result<HcSeries> {
    if let Some(e) = ops.iter().find(|e| e.height < h) {
        return Err(Error::HeightBudgetExceeded(h, e.height));
    }
    let mode = Mode::Specialized(lambda.to_vec());
    let evs: Vec<Frac> = ops.iter().map(|e| eigenvalue(ctx, &mode, e)).collect::<Result<_>>()?;
    let mut coeffs = ConeCoeffs::new();
    coeffs.insert(vec![0; ctx.rd.n], Frac::one());
    for x in cone_points(ctx.rd.n, h).into_iter().skip(1) {
        let shifted = vsub(lambda, &ctx.rd.delta_point(&x));
        let mut solved = None;
        for (e, ev) in ops.iter().zip(&evs) {
            let diag = ev - &evaluate_xi(ctx, &e.symbol, &shifted)?;
            if !diag.is_zero() {
                let rhs = recurrence_sum(ctx, &mode, e, &coeffs, &x, false)?;
                solved = Some(rhs.div(&diag)?.reduce());
                break;
            }
        }
        let v = solved.ok_or(Error::SingularSpectralPoint)?;
        if !v.is_zero() {
            coeffs.insert(x, v);
        }
    }
    Ok(HcSeries { mode, height: h, pi: pi.to_vec(), coeffs })
}

/// `ι_λ(Φ)`: evaluation of the formal coefficients at `λ ∉ 𝒟_k`.
pub fn specialize_series(ctx: &Context, s: &HcSeries, lambda: &[Q]) -> Result<HcSeries> {
    if s.mode != Mode::Formal {
        return Err(Error::PreconditionViolated("series is already specialized".into()));
    }
    if singular_member(ctx, lambda, s.height) {
        return Err(Error::SingularSpectralPoint);
    }
    let mut coeffs = ConeCoeffs::new();
    for (x, g) in &s.coeffs {
        let v = evaluate_xi(ctx, g, lambda).map_err(|e| match e {
            Error::DivisionByZero => Error::SingularSpectralPoint,
            e => e,
        })?;
        if !v.is_zero() {
            coeffs.insert(x.clone(), v.reduce());
        }
    }
    Ok(HcSeries { mode: Mode::Specialized(lambda.to_vec()), height: s.height, pi: s.pi.clone(), coeffs })
}

/// Points `x` of height at most the series height where `Γ_x(λ)` differs from
/// the coefficient of `z^{λ−x}` in `P_λ`.
pub fn polynomial_mismatches(ctx: &Context, s: &HcSeries, p: &SymPoly) -> Result<Vec<Point>> {
    let Mode::Specialized(lambda) = &s.mode else {
        return Err(Error::PreconditionViolated("comparison needs a specialized series".into()));
    };
    let mut bad = vec![];
    for x in cone_points(ctx.rd.n, s.height) {
        let mu = vsub(lambda, &ctx.rd.delta_point(&x));
        let want = p.get(&ctx.rd.dominant(&mu)).cloned().unwrap_or_else(Frac::zero);
        if s.coeff(&x) != want {
            bad.push(x);
        }
    }
    Ok(bad)
}

// ---- Baker-Akhiezer truncation ----

fn baker_labels(ctx: &Context) -> Result<Vec<i64>> {
    let bad = || Error::PreconditionViolated("Baker-Akhiezer checks need case a with labels in ℤ≤0".into());
    let Label::Specialized(k) = &ctx.label else { return Err(bad()) };
    if ctx.rd.case != Case::A {
        return Err(bad());
    }
    k.iter().map(|x| as_integer(x).filter(|v| *v <= 0).ok_or_else(bad)).collect()
}

fn root_label(ctx: &Context, k: &[i64], a: &[Q]) -> i64 {
    k[ctx.rd.orbit_of(&AffRoot::new(a.to_vec(), Q::zero()))]
}

/// `𝒩 = {Σ_{α>0} l_α α : 0 ≤ l_α ≤ −k_α}` in `Δ`-coordinates.
pub fn baker_support(ctx: &Context) -> Result<BTreeSet<Point>> {
    let k = baker_labels(ctx)?;
    let mut set: BTreeSet<Point> = BTreeSet::new();
    set.insert(vec![0; ctx.rd.n]);
    for a in &ctx.rd.positive {
        let m = -root_label(ctx, &k, a);
        let coords: Vec<i64> = ctx.rd.delta_coords(a).iter().map(|c| c.to_integer()).collect();
        let mut next = BTreeSet::new();
        for x in &set {
            for l in 0..=m {
                next.insert(x.iter().zip(&coords).map(|(u, v)| u + l * v).collect());
            }
        }
        set = next;
    }
    Ok(set)
}

/// `K₀(ξ) = ξ^{ρ'_k} Π_{α>0} Π_{j=1}^{−k_α} (q^{j/2} − q^{−j/2} ξ^{α∨})`.
pub fn baker_k0(ctx: &Context) -> Result<Frac> {
    let k = baker_labels(ctx)?;
    let mut rho_p = zero_vec(ctx.rd.n);
    let mut p = Poly::one();
    for a in &ctx.rd.positive {
        let ka = root_label(ctx, &k, a);
        let ac = ctx.rd.coroot(a);
        rho_p = vadd(&rho_p, &vscale(&ac, qr(ka, 2)));
        for j in 1..=-ka {
            let f = &Poly::mono(ctx.ring.q_pow(qr(j, 2))?) - &Poly::mono(ctx.ring.q_pow(qr(-j, 2))?.mul(&ctx.xi(&ac)?));
            p = &p * &f;
        }
    }
    Ok(Frac::from_poly(p.mul_mono(&ctx.xi(&rho_p)?)))
}

/// `K₀(λ)` evaluated factor by factor at a spectral point.
pub fn baker_k0_at(ctx: &Context, lambda: &[Q]) -> Result<Frac> {
    let k = baker_labels(ctx)?;
    let mut rho_p = zero_vec(ctx.rd.n);
    let mut acc = Frac::one();
    for a in &ctx.rd.positive {
        let ka = root_label(ctx, &k, a);
        let ac = ctx.rd.coroot(a);
        rho_p = vadd(&rho_p, &vscale(&ac, qr(ka, 2)));
        let x = ctx.rd.ip(&ac, lambda);
        for j in 1..=-ka {
            let f = &Frac::from_mono(ctx.ring.q_pow(qr(j, 2))?) - &Frac::from_mono(ctx.ring.q_pow(x - qr(j, 2))?);
            acc = &acc * &f;
        }
    }
    Ok(acc.mul_mono(&ctx.ring.q_pow(ctx.rd.ip(&rho_p, lambda))?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BakerReport {
    pub support_set: Vec<Point>,
    pub height: usize,
    /// Points outside `𝒩` with a nonzero coefficient.
    pub support_violations: Vec<Point>,
    /// Points of `𝒩` where `Γ_x · t(−ρ_{k'})K₀` is not a Laurent polynomial.
    pub irregular: Vec<Point>,
    pub normalization_ok: bool,
}

impl BakerReport {
    pub fn pass(&self) -> bool {
        self.support_violations.is_empty() && self.irregular.is_empty() && self.normalization_ok
    }
}

/// Support, regularity and normalization checks of the Baker-Akhiezer connection.
pub fn baker_check(ctx: &Context, pi: &[Q], h: usize, samples: &[QVec]) -> Result<BakerReport> {
    let support = baker_support(ctx)?;
    let top = support.iter().map(|x| ht(x)).max().unwrap_or(0);
    if h < top {
        return Err(Error::PreconditionViolated(format!("height {h} is below the top of the support ({top})")));
    }
    let s = hc_series_formal(ctx, pi, h)?;
    let rho = ctx.rho_vec().expect("specialized labels");
    let k0 = baker_k0(ctx)?;
    let shifted = subst_xi(ctx, &k0, &rho, true)?;
    let support_violations = s.coeffs.keys().filter(|x| !support.contains(*x)).cloned().collect();
    let mut irregular = vec![];
    for x in &support {
        if (&s.coeff(x) * &shifted).reduce().to_poly().is_err() {
            irregular.push(x.clone());
        }
    }
    let mut normalization_ok = true;
    for l in samples {
        normalization_ok &= evaluate_xi(ctx, &k0, l)? == baker_k0_at(ctx, l)?;
    }
    Ok(BakerReport { support_set: support.into_iter().collect(), height: h, support_violations, irregular, normalization_ok })
}

// ---- basis spot check ----

/// Nullspace of a matrix over the scalar field, by Gauss-Jordan elimination.
pub fn nullspace(mut rows: Vec<Vec<Frac>>, ncols: usize) -> Result<Vec<Vec<Frac>>> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv()?;
        rows[r] = rows[r].iter().map(|v| (v * &inv).reduce()).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a = (&*a - &(&f * b)).reduce();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&fc| {
            let mut v = vec![Frac::zero(); ncols];
            v[fc] = Frac::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][fc];
            }
            v
        })
        .collect())
}

fn rank(rows: Vec<Vec<Frac>>, ncols: usize) -> Result<usize> {
    Ok(ncols - nullspace(rows, ncols)?.len())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    /// Leading exponents `w·λ` as rational root coordinates.
    pub leading: Vec<Vec<String>>,
    pub unknowns: usize,
    pub nullity: usize,
    pub series_in_kernel: bool,
    pub independent: bool,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.nullity == self.leading.len() && self.series_in_kernel && self.independent
    }
}

/// Truncated eigen-series with leading exponents in `W₀·λ`: the solution space
/// of the eigen-equation of `e` against the span of the series `Φ_{w·λ}`.
pub fn basis_spot_check(ctx: &Context, e: &OpExpansion, pi: &[Q], lambda: &[Q], h: usize) -> Result<BasisReport> {
    let mut leading: Vec<QVec> = vec![];
    for w in 0..ctx.rd.order() {
        let mu = dot(ctx, w, lambda)?;
        if !leading.contains(&mu) {
            leading.push(mu);
        }
    }
    for (i, a) in leading.iter().enumerate() {
        for b in &leading[i + 1..] {
            if ctx.rd.delta_coords(&vsub(a, b)).iter().all(|c| c.is_integer()) {
                return Err(Error::PreconditionViolated("leading exponents differ by ℤΔ".into()));
            }
        }
    }
    let pts = cone_points(ctx.rd.n, h);
    let idx: BTreeMap<&Point, usize> = pts.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let m = pts.len();
    let ncols = m * leading.len();
    let ev = evaluate_xi(ctx, &e.symbol, lambda)?;
    let mut rows = vec![];
    for (f, mu) in leading.iter().enumerate() {
        for x in &pts {
            let mut row = vec![Frac::zero(); ncols];
            row[f * m + idx[x]] = -&ev;
            for y in &pts {
                let Some(g) = gap(x, y) else { continue };
                let yv = ctx.rd.delta_point(y);
                for (lp, ser) in &e.terms {
                    if let Some(d) = ser.get(&g) {
                        let c = d.mul_mono(&ctx.ring.q_pow(ctx.rd.ip(lp, &vsub(&yv, mu)))?);
                        let slot = &mut row[f * m + idx[y]];
                        *slot = &*slot + &c;
                    }
                }
            }
            rows.push(row);
        }
    }
    let kernel = nullspace(rows.clone(), ncols)?;
    let mut vectors = vec![];
    for (f, mu) in leading.iter().enumerate() {
        let s = hc_series_specialized(ctx, std::slice::from_ref(e), pi, mu, h)?;
        let mut v = vec![Frac::zero(); ncols];
        for (x, g) in &s.coeffs {
            v[f * m + idx[x]] = g.clone();
        }
        vectors.push(v);
    }
    let mut in_kernel = true;
    for v in &vectors {
        for row in &rows {
            let mut acc = Frac::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            in_kernel &= acc.is_zero();
        }
    }
    let independent = rank(vectors.clone(), ncols)? == vectors.len();
    Ok(BasisReport { leading: leading.iter().map(|v| v.iter().map(fmt_q).collect()).collect(), unknowns: ncols, nullity: kernel.len(), series_in_kernel: in_kernel, independent })
}

/// Whether `λ − w·λ ∉ ℤΔ` for all `w ≠ e`.
pub fn is_generic_point(ctx: &Context, lambda: &[Q]) -> Result<bool> {
    for w in 1..ctx.rd.order() {
        let d = ctx.rd.delta_coords(&vsub(lambda, &dot(ctx, w, lambda)?));
        if d.iter().all(|c| c.is_integer()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest common denominator of the coordinates of `v`.
pub fn denominator(v: &[Q]) -> i64 {
    v.iter().fold(1i64, |acc, c| num_integer::lcm(acc, *c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macops::{pi_prime, PiSel};
    use crate::rootdata::{CartanType, RootDatum};

    fn a1(label: Label, extra: i64) -> Context {
        Context::with_denominator(RootDatum::build(Case::A, CartanType::A, 1).unwrap(), label, extra).unwrap()
    }

    #[test]
    fn gamma_zero_is_one_and_eigen_equation_holds() {
        let ctx = a1(Label::Generic, 1);
        let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1)).unwrap();
        let s = hc_series_formal(&ctx, &pi, 3).unwrap();
        assert!(s.coeff(&[0]).is_one());
        let d = macops::macdonald_operator(&ctx, &pi, macops::Route::Explicit).unwrap();
        let e = expand_operator(&ctx, &d, 3).unwrap();
        assert!(verify_eigen(&ctx, &s, &e, 3).unwrap());
        assert!(denominators_divide(&ctx, &s, &e).unwrap());
        assert!(matches!(verify_eigen(&ctx, &s, &e, 4), Err(Error::HeightBudgetExceeded(4, 3))));
    }

    #[test]
    fn trivial_label_gives_plane_wave() {
        let ctx = a1(Label::Specialized(vec![q(0)]), 1);
        let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1)).unwrap();
        let s = hc_series_formal(&ctx, &pi, 4).unwrap();
        assert_eq!(s.coeffs.len(), 1);
    }

    #[test]
    fn singular_set_a1() {
        let ctx = a1(Label::Specialized(vec![q(-1)]), 1);
        assert!(!singular_member(&ctx, &[q(0)], 5));
        let ctx = a1(Label::Specialized(vec![qr(1, 3)]), 6);
        // λ + ρ = (m/2)α gives λ − s·λ = mα.
        assert!(singular_member(&ctx, &[q(1) - qr(1, 6)], 5));
        assert!(!singular_member(&ctx, &[qr(1, 5)], 5));
        assert!(!singular_member(&a1(Label::Generic, 1), &[q(1)], 5));
    }

    #[test]
    fn k0_rank_one() {
        let ctx = a1(Label::Specialized(vec![q(-1)]), 1);
        let k0 = baker_k0(&ctx).unwrap();
        let xi = |k: i64| ctx.xi(&[qr(k, 2)]).unwrap();
        let want = &Poly::mono(ctx.ring.q_pow(qr(1, 2)).unwrap().mul(&xi(-1)))
            - &Poly::mono(ctx.ring.q_pow(qr(-1, 2)).unwrap().mul(&xi(1)));
        assert_eq!(k0, Frac::from_poly(want));
        assert_eq!(baker_support(&ctx).unwrap().len(), 2);
    }

    #[test]
    fn nullspace_small() {
        let f = |k: i128| Frac::from_int(k);
        let rows = vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)]];
        let k = nullspace(rows, 3).unwrap();
        assert_eq!(k.len(), 2);
    }
}
