//! Root data for the three cases, the finite and extended affine Weyl groups,
//! lengths, reduced words, the length-zero subgroup, dominance order and the
//! special coweights.
//!
//! All vectors are rational coordinates in the basis of simple roots of `R`.
//! Affine roots `α + r·c` are affine functions `x ↦ ⟨α,x⟩ + r` on `V`, and an
//! element `(w, λ')` of the extended affine Weyl group stands for `w·t(λ')`,
//! acting on `V` by `x ↦ w(x + λ')` and on affine functions by transposition.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::lattice::*;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
}

impl Case {
    pub fn parse(s: &str) -> Result<Case> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Case::A),
            "b" => Ok(Case::B),
            "c" => Ok(Case::C),
            _ => Err(Error::UnsupportedType(format!("case {s}"))),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "G" => Ok(CartanType::G),
            _ => Err(Error::UnsupportedType(format!("Cartan type {s}"))),
        }
    }

    pub fn letter(&self) -> &'static str {
        match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G => "G",
        }
    }
}

/// Affine root `grad + cst·c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffRoot {
    pub grad: QVec,
    pub cst: Q,
}

impl AffRoot {
    pub fn new(grad: QVec, cst: Q) -> AffRoot {
        AffRoot { grad, cst }
    }

    pub fn neg(&self) -> AffRoot {
        AffRoot { grad: vneg(&self.grad), cst: -self.cst }
    }

    pub fn eval(&self, gram: &QMat, x: &[Q]) -> Q {
        pair(gram, &self.grad, x) + self.cst
    }
}

impl fmt::Debug for AffRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}c", fmt_vec(&self.grad), fmt_q(&self.cst))
    }
}

/// Element `w·t(trans)` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffElt {
    pub w: usize,
    pub trans: QVec,
}

/// Finite Weyl group element.
#[derive(Clone, Debug)]
pub struct WElem {
    /// Integer matrix on root coordinates (columns are images of simple roots).
    pub mat: Vec<Vec<i64>>,
    /// A reduced word in the simple reflections `1..=n`.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub case: Case,
    pub ctype: CartanType,
    pub n: usize,
    pub gram: QMat,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<QVec>,
    pub positive: Vec<QVec>,
    pub phi: QVec,
    pub marks: Vec<i64>,
    /// Gradients of the affine root system `S₁` (the set `R'∨`).
    pub grads: Vec<QVec>,
    /// Gradients `a₁..aₙ` of the simple affine roots.
    pub delta: Vec<QVec>,
    /// Simple affine roots `a₀..aₙ`.
    pub simple_affine: Vec<AffRoot>,
    pub lat_l: Lattice,
    pub lat_lp: Lattice,
    pub w0: Vec<WElem>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    /// Matrices of W₀ on `L` and `L'` coordinates.
    pub lmat: Vec<Vec<Vec<i64>>>,
    pub lpmat: Vec<Vec<Vec<i64>>>,
    delta_dual: Vec<QVec>,
    rho_hat: QVec,
    alcove_point: QVec,
    /// Length-zero elements of the extended affine Weyl group.
    pub omega: Vec<AffElt>,
    /// `omega_perm[k][i] = j` when `ω_k(a_i) = a_j`.
    pub omega_perm: Vec<Vec<usize>>,
}

fn gram_for(case: Case, t: CartanType, n: usize) -> Result<QMat> {
    let mut g = vec![zero_vec(n); n];
    let simply = |g: &mut QMat| {
        for i in 0..n {
            g[i][i] = q(2);
            if i + 1 < n {
                g[i][i + 1] = q(-1);
                g[i + 1][i] = q(-1);
            }
        }
    };
    if case == Case::C {
        if t != CartanType::C {
            return Err(Error::UnsupportedType("case c requires type C".into()));
        }
        // ε-norm 1: short roots ε_i − ε_{i+1} of norm 2, long root 2ε_n of norm 4.
        simply(&mut g);
        g[n - 1][n - 1] = q(4);
        if n >= 2 {
            g[n - 2][n - 1] = q(-2);
            g[n - 1][n - 2] = q(-2);
        }
        return Ok(g);
    }
    match t {
        CartanType::A => simply(&mut g),
        CartanType::B => {
            if n < 2 {
                return Err(Error::UnsupportedType("B_n needs n ≥ 2".into()));
            }
            simply(&mut g);
            g[n - 1][n - 1] = q(1);
        }
        CartanType::C => {
            if n < 2 {
                return Err(Error::UnsupportedType("C_n needs n ≥ 2 in cases a/b".into()));
            }
            for i in 0..n {
                g[i][i] = q(1);
                if i + 1 < n {
                    g[i][i + 1] = qr(-1, 2);
                    g[i + 1][i] = qr(-1, 2);
                }
            }
            g[n - 1][n - 1] = q(2);
            g[n - 2][n - 1] = q(-1);
            g[n - 1][n - 2] = q(-1);
        }
        CartanType::D => {
            if n < 4 {
                return Err(Error::UnsupportedType("D_n needs n ≥ 4".into()));
            }
            simply(&mut g);
            g[n - 2][n - 1] = q(0);
            g[n - 1][n - 2] = q(0);
            g[n - 3][n - 1] = q(-1);
            g[n - 1][n - 3] = q(-1);
        }
        CartanType::G => {
            if n != 2 {
                return Err(Error::UnsupportedType("G has rank 2".into()));
            }
            g[0][0] = qr(2, 3);
            g[1][1] = q(2);
            g[0][1] = q(-1);
            g[1][0] = q(-1);
        }
    }
    Ok(g)
}

pub fn coroot(gram: &QMat, a: &[Q]) -> QVec {
    let nn = pair(gram, a, a);
    vscale(a, q(2) / nn)
}

fn reflect(gram: &QMat, a: &[Q], x: &[Q]) -> QVec {
    let c = pair(gram, x, &coroot(gram, a));
    vsub(x, &vscale(a, c))
}

fn imat_vec(m: &[Vec<i64>], v: &[Q]) -> QVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| q(*a) * b).sum()).collect()
}

fn imat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl RootDatum {
    pub fn build(case: Case, ctype: CartanType, n: usize) -> Result<RootDatum> {
        if n == 0 {
            return Err(Error::UnsupportedType("rank 0".into()));
        }
        let gram = gram_for(case, ctype, n)?;
        let simple: Vec<QVec> = (0..n).map(|i| unit_vec(n, i)).collect();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = pair(&gram, &simple[i], &coroot(&gram, &simple[j]));
                cartan[i][j] = as_integer(&c).ok_or_else(|| Error::InvalidCartanData(format!("pairing {i},{j}")))?;
            }
        }
        // Simple reflections on root coordinates: s_i(α_j) = α_j − A_ji α_i.
        let gens: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| {
                let mut m = vec![vec![0i64; n]; n];
                for j in 0..n {
                    m[j][j] += 1;
                    m[i][j] -= cartan[j][i];
                }
                m
            })
            .collect();
        let ident: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut w0 = vec![WElem { mat: ident.clone(), word: vec![] }];
        let mut index = HashMap::new();
        index.insert(ident, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = imat_mul(g, &w0[k].mat);
                if !index.contains_key(&m) {
                    let mut word = vec![i + 1];
                    word.extend(w0[k].word.iter().cloned());
                    index.insert(m.clone(), w0.len());
                    queue.push_back(w0.len());
                    w0.push(WElem { mat: m, word });
                }
                if w0.len() > 100_000 {
                    return Err(Error::InvalidCartanData("Weyl group is not finite".into()));
                }
            }
        }
        let nw = w0.len();
        let mut mult = vec![vec![0usize; nw]; nw];
        for a in 0..nw {
            for b in 0..nw {
                mult[a][b] = index[&imat_mul(&w0[a].mat, &w0[b].mat)];
            }
        }
        let inverse: Vec<usize> = (0..nw).map(|a| (0..nw).find(|&b| mult[a][b] == 0).unwrap()).collect();

        let mut rootset: BTreeSet<QVec> = BTreeSet::new();
        for w in &w0 {
            for s in &simple {
                rootset.insert(imat_vec(&w.mat, s));
            }
        }
        let roots: Vec<QVec> = rootset.into_iter().collect();
        let positive: Vec<QVec> = roots.iter().filter(|r| r.iter().all(|x| !x.is_negative())).cloned().collect();
        let height = |r: &QVec| r.iter().sum::<Q>();
        let phi = positive.iter().max_by_key(|r| height(r)).unwrap().clone();
        let marks: Vec<i64> = phi.iter().map(|x| x.to_integer()).collect();

        let coroots_of = |v: &Vec<QVec>| v.iter().map(|r| coroot(&gram, r)).collect::<Vec<_>>();
        let (grads, delta, theta, c0) = match case {
            Case::A => (roots.clone(), simple.clone(), phi.clone(), q(1)),
            Case::B => (coroots_of(&roots), coroots_of(&simple), coroot(&gram, &phi), q(1)),
            Case::C => (coroots_of(&roots), coroots_of(&simple), coroot(&gram, &phi), qr(1, 2)),
        };
        let mut simple_affine = vec![AffRoot::new(vneg(&theta), c0)];
        simple_affine.extend(delta.iter().map(|a| AffRoot::new(a.clone(), Q::zero())));

        let ginv = mat_inv(&gram).unwrap();
        let cinv = mat_inv(&cartan.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect()).unwrap();
        let fund_weights: Vec<QVec> = (0..n).map(|i| cinv[i].clone()).collect();
        let fund_coweights: Vec<QVec> = (0..n).map(|i| ginv[i].clone()).collect();
        let simple_coroots = coroots_of(&simple);
        let (lb, lpb) = match case {
            Case::A => (fund_weights, fund_coweights.clone()),
            Case::B => (fund_coweights.clone(), fund_coweights),
            Case::C => (simple_coroots.clone(), simple_coroots),
        };
        let lat_l = Lattice::new("L", lb, &gram)?;
        let lat_lp = Lattice::new("L'", lpb, &gram)?;

        let to_lat = |lat: &Lattice, m: &Vec<Vec<i64>>| -> Result<Vec<Vec<i64>>> {
            // Column j: coordinates of w(b_j).
            let cols: Vec<Vec<i64>> =
                lat.basis().iter().map(|b| lat.try_coords(&imat_vec(m, b))).collect::<Result<_>>()?;
            Ok((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
        };
        let lmat = w0.iter().map(|w| to_lat(&lat_l, &w.mat)).collect::<Result<Vec<_>>>()?;
        let lpmat = w0.iter().map(|w| to_lat(&lat_lp, &w.mat)).collect::<Result<Vec<_>>>()?;

        // Dual basis to Δ: ⟨a_j, D_i⟩ = δ_ij.
        let amat: QMat = delta.clone();
        let ag = mat_mul(&amat, &gram);
        let agi = mat_inv(&ag).unwrap();
        let delta_dual: Vec<QVec> = (0..n).map(|i| (0..n).map(|k| agi[k][i]).collect()).collect();
        let rho_hat = delta_dual.iter().fold(zero_vec(n), |acc, d| vadd(&acc, d));
        let ht_theta: Q = (0..n).map(|i| pair(&gram, &theta, &delta_dual[i])).sum();
        let eps = c0 / (ht_theta + Q::one());
        let alcove_point = vscale(&rho_hat, eps);

        let mut rd = RootDatum {
            case,
            ctype,
            n,
            gram,
            cartan,
            roots,
            positive,
            phi,
            marks,
            grads,
            delta,
            simple_affine,
            lat_l,
            lat_lp,
            w0,
            mult,
            inverse,
            index,
            lmat,
            lpmat,
            delta_dual,
            rho_hat,
            alcove_point,
            omega: vec![],
            omega_perm: vec![],
        };
        rd.compute_omega()?;
        rd.check()?;
        Ok(rd)
    }

    fn check(&self) -> Result<()> {
        let expect = match (self.ctype, self.n) {
            (CartanType::A, n) => (1..=n + 1).product::<usize>(),
            (CartanType::B, n) | (CartanType::C, n) => (1..=n).product::<usize>() << n,
            (CartanType::D, n) => (1..=n).product::<usize>() << (n - 1),
            (CartanType::G, _) => 12,
        };
        if self.w0.len() != expect {
            return Err(Error::InvalidCartanData(format!("|W0| = {} expected {}", self.w0.len(), expect)));
        }
        let long = self.roots.iter().map(|r| self.norm2(r)).max().unwrap();
        let want = if self.case == Case::C { q(4) } else { q(2) };
        if long != want {
            return Err(Error::InvalidCartanData("root normalization".into()));
        }
        for a in &self.grads {
            if !self.lat_l.contains(a) {
                return Err(Error::InvalidCartanData("gradient outside L".into()));
            }
        }
        Ok(())
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        pair(&self.gram, a, a)
    }

    pub fn ip(&self, a: &[Q], b: &[Q]) -> Q {
        pair(&self.gram, a, b)
    }

    pub fn coroot(&self, a: &[Q]) -> QVec {
        coroot(&self.gram, a)
    }

    pub fn order(&self) -> usize {
        self.w0.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn length(&self, w: usize) -> usize {
        self.w0[w].word.len()
    }

    pub fn act(&self, w: usize, v: &[Q]) -> QVec {
        imat_vec(&self.w0[w].mat, v)
    }

    /// Index of the simple reflection `s_i`, `1 ≤ i ≤ n`.
    pub fn simple_refl(&self, i: usize) -> usize {
        self.reflection(&unit_vec(self.n, i - 1))
    }

    /// Index of the reflection in the root (or any nonzero multiple) `a`.
    pub fn reflection(&self, a: &[Q]) -> usize {
        let cols: Vec<QVec> = (0..self.n).map(|j| reflect(&self.gram, a, &unit_vec(self.n, j))).collect();
        let m: Vec<Vec<i64>> = (0..self.n).map(|i| (0..self.n).map(|j| cols[j][i].to_integer()).collect()).collect();
        self.index[&m]
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.length(w)).unwrap()
    }

    /// Coordinates of `v` with respect to Δ.
    pub fn delta_coords(&self, v: &[Q]) -> QVec {
        self.delta_dual.iter().map(|d| self.ip(v, d)).collect()
    }

    pub fn delta_point(&self, x: &[i64]) -> QVec {
        let mut v = zero_vec(self.n);
        for (k, a) in x.iter().zip(&self.delta) {
            v = vadd(&v, &vscale(a, q(*k)));
        }
        v
    }

    /// Dominant weights of `L` with height at most `h`, by increasing height.
    pub fn dominant_weights(&self, h: i64) -> Vec<QVec> {
        // Dominant weights have nonnegative Δ-coordinates, so each is bounded by `h`.
        let inv: Vec<QVec> = self.delta.iter().map(|a| self.lat_l.rational_coords(a)).collect();
        let bound = inv.iter().flatten().map(|c| c.abs()).max().unwrap_or_else(|| q(1));
        let r = (bound * q(h * self.n as i64)).ceil().to_integer();
        let mut out: Vec<QVec> = box_points(self.n, r)
            .into_iter()
            .map(|c| self.lat_l.point(&c))
            .filter(|v| self.is_dominant(v) && self.height(v) <= q(h))
            .collect();
        out.sort_by(|a, b| self.height(a).cmp(&self.height(b)).then_with(|| a.cmp(b)));
        out
    }

    /// `⟨v, ρ̂⟩`, which is the Δ-height on `ℤΔ`.
    pub fn height(&self, v: &[Q]) -> Q {
        self.ip(v, &self.rho_hat)
    }

    pub fn rho_hat(&self) -> &QVec {
        &self.rho_hat
    }

    pub fn delta_dual(&self) -> &[QVec] {
        &self.delta_dual
    }

    pub fn is_dominant(&self, v: &[Q]) -> bool {
        (0..self.n).all(|i| !self.ip(v, &unit_vec(self.n, i)).is_negative())
    }

    /// `u ≤ v` in the dominance order: `v − u ∈ ℤ≥0Δ`.
    pub fn leq(&self, u: &[Q], v: &[Q]) -> bool {
        self.delta_coords(&vsub(v, u)).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Dominant points of `L` below `λ`, in decreasing height.
    pub fn saturated_set(&self, lambda: &[Q]) -> Vec<QVec> {
        let h = self.height(lambda).floor().to_integer().max(0);
        let mut out = vec![];
        for x in cone_points(self.n, h as usize) {
            let mu = vsub(lambda, &self.delta_point(&x));
            if self.is_dominant(&mu) {
                out.push(mu);
            }
        }
        out
    }

    /// Step of the constants of affine roots with gradient `a`.
    pub fn step(&self, a: &[Q]) -> Q {
        match self.case {
            Case::A => q(1),
            Case::B | Case::C => self.norm2(a) / q(2),
        }
    }

    pub fn is_affine_root(&self, a: &AffRoot) -> bool {
        self.grads.contains(&a.grad) && (a.cst / self.step(&a.grad)).is_integer()
    }

    pub fn is_positive(&self, a: &AffRoot) -> bool {
        let v = a.eval(&self.gram, &self.alcove_point);
        debug_assert!(!v.is_zero());
        v.is_positive()
    }

    pub fn is_positive_grad(&self, a: &[Q]) -> bool {
        self.height(a).is_positive()
    }

    /// Orbit class of an affine root of `S₁`: long/short gradient in cases
    /// a/b (0 = long), and `𝒪₁, 𝒪₃, 𝒪₅` as 0, 1, 2 in case c.
    pub fn orbit_of(&self, a: &AffRoot) -> usize {
        let nn = self.norm2(&a.grad);
        match self.case {
            Case::A | Case::B => {
                let long = self.grads.iter().map(|g| self.norm2(g)).max().unwrap();
                usize::from(nn != long)
            }
            Case::C => {
                if nn == q(1) {
                    if a.cst.is_integer() {
                        0
                    } else {
                        1
                    }
                } else {
                    2
                }
            }
        }
    }

    pub fn num_orbits(&self) -> usize {
        match self.case {
            Case::C => 3,
            _ => {
                let norms: BTreeSet<Q> = self.grads.iter().map(|g| self.norm2(g)).collect();
                norms.len()
            }
        }
    }

    // ---- extended affine Weyl group ----

    pub fn aff_identity(&self) -> AffElt {
        AffElt { w: 0, trans: zero_vec(self.n) }
    }

    pub fn translation(&self, t: &[Q]) -> AffElt {
        AffElt { w: 0, trans: t.to_vec() }
    }

    pub fn finite(&self, w: usize) -> AffElt {
        AffElt { w, trans: zero_vec(self.n) }
    }

    /// `(w₁,λ₁)(w₂,λ₂) = (w₁w₂, w₂⁻¹λ₁ + λ₂)`.
    pub fn aff_mul(&self, a: &AffElt, b: &AffElt) -> AffElt {
        AffElt { w: self.mul(a.w, b.w), trans: vadd(&self.act(self.inv(b.w), &a.trans), &b.trans) }
    }

    pub fn aff_inv(&self, a: &AffElt) -> AffElt {
        AffElt { w: self.inv(a.w), trans: vneg(&self.act(a.w, &a.trans)) }
    }

    /// Translation part when written as `t(b)·w`.
    pub fn left_trans(&self, a: &AffElt) -> QVec {
        self.act(a.w, &a.trans)
    }

    pub fn aff_act_point(&self, a: &AffElt, x: &[Q]) -> QVec {
        self.act(a.w, &vadd(x, &a.trans))
    }

    /// `(w t(λ'))(α + rc) = wα + (r − ⟨α,λ'⟩)c`.
    pub fn aff_act_root(&self, a: &AffElt, r: &AffRoot) -> AffRoot {
        AffRoot { grad: self.act(a.w, &r.grad), cst: r.cst - self.ip(&r.grad, &a.trans) }
    }

    /// Reflection `s_a` for an affine root `a = α + rc`: `(s_α, rα∨)`.
    pub fn aff_reflection(&self, a: &AffRoot) -> AffElt {
        AffElt { w: self.reflection(&a.grad), trans: vscale(&self.coroot(&a.grad), a.cst) }
    }

    /// Simple affine reflection `s_i`, `0 ≤ i ≤ n`.
    pub fn s(&self, i: usize) -> AffElt {
        self.aff_reflection(&self.simple_affine[i])
    }

    /// `S₁(w) = S₁⁺ ∩ w⁻¹S₁⁻`.
    pub fn cross_set(&self, a: &AffElt) -> Vec<AffRoot> {
        let mut out = vec![];
        for g in &self.grads {
            let st = self.step(g);
            let p = self.ip(g, &a.trans);
            // positive roots have constant ≥ 0; the image is negative only if r − p ≤ 0.
            let kmax = (p / st).floor().to_integer();
            for k in 0..=kmax.max(0) {
                let r = AffRoot::new(g.clone(), st * q(k));
                if self.is_positive(&r) && !self.is_positive(&self.aff_act_root(a, &r)) {
                    out.push(r);
                }
            }
        }
        out.sort();
        out
    }

    pub fn aff_length(&self, a: &AffElt) -> usize {
        self.cross_set(a).len()
    }

    /// Reduced word `w = ω s_{i₁} ⋯ s_{i_ℓ}`, peeling the smallest descent first.
    pub fn reduced_word(&self, a: &AffElt) -> (usize, Vec<usize>) {
        let mut w = a.clone();
        let mut peeled = vec![];
        loop {
            let desc = (0..=self.n).find(|&i| !self.is_positive(&self.aff_act_root(&w, &self.simple_affine[i])));
            match desc {
                None => break,
                Some(i) => {
                    w = self.aff_mul(&w, &self.s(i));
                    peeled.push(i);
                }
            }
        }
        peeled.reverse();
        let k = self.omega.iter().position(|o| *o == w).expect("length-zero element missing from Ω");
        (k, peeled)
    }

    pub fn compose_word(&self, omega: usize, word: &[usize]) -> AffElt {
        let mut w = self.omega[omega].clone();
        for &i in word {
            w = self.aff_mul(&w, &self.s(i));
        }
        w
    }

    fn compute_omega(&mut self) -> Result<()> {
        let n = self.n;
        let mut found = vec![];
        for c in box_points(n, 2) {
            let t = self.lat_lp.point(&c);
            for w in 0..self.order() {
                let e = AffElt { w, trans: t.clone() };
                if self.aff_length(&e) == 0 {
                    found.push(e);
                }
            }
        }
        found.sort();
        let id = self.aff_identity();
        found.retain(|e| *e != id);
        found.insert(0, id);
        let mut perms = vec![];
        for o in &found {
            let p: Vec<usize> = (0..=n)
                .map(|i| {
                    let img = self.aff_act_root(o, &self.simple_affine[i]);
                    self.simple_affine.iter().position(|a| *a == img)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidCartanData("Ω does not permute the simple affine roots".into()))?;
            perms.push(p);
        }
        self.omega = found;
        self.omega_perm = perms;
        Ok(())
    }

    // ---- special coweights ----

    pub fn fundamental_coweight(&self, j: usize) -> QVec {
        let ginv = mat_inv(&self.gram).unwrap();
        ginv[j].clone()
    }

    /// Dominant minuscule coweights `π_j'` (`m_j = 1`, `π_j' ∈ L'`) with their index `j` (1-based).
    pub fn minuscule(&self) -> Vec<(usize, QVec)> {
        (0..self.n)
            .filter(|&j| self.marks[j] == 1)
            .map(|j| (j + 1, self.fundamental_coweight(j)))
            .filter(|(_, p)| self.lat_lp.contains(p))
            .collect()
    }

    /// `φ∨`.
    pub fn quasi_minuscule(&self) -> QVec {
        self.coroot(&self.phi)
    }

    /// Antidominant element of the W₀-orbit of `v`.
    pub fn antidominant(&self, v: &[Q]) -> QVec {
        let w0 = self.longest();
        let d = self.dominant(v);
        self.act(w0, &d)
    }

    pub fn dominant(&self, v: &[Q]) -> QVec {
        (0..self.order()).map(|w| self.act(w, v)).find(|u| self.is_dominant(u)).unwrap()
    }

    /// Orbit `W₀v` with minimal-length representatives, sorted by point.
    pub fn orbit_with_reps(&self, v: &[Q]) -> Vec<(QVec, usize)> {
        let mut best: std::collections::BTreeMap<QVec, usize> = Default::default();
        for w in 0..self.order() {
            let u = self.act(w, v);
            match best.get(&u) {
                Some(&b) if self.length(b) <= self.length(w) => {}
                _ => {
                    best.insert(u, w);
                }
            }
        }
        best.into_iter().collect()
    }

    pub fn orbit(&self, v: &[Q]) -> Vec<QVec> {
        self.orbit_with_reps(v).into_iter().map(|x| x.0).collect()
    }

    /// Pairing matrix `⟨L' basis, L basis⟩`.
    pub fn pairing_lp_l(&self) -> QMat {
        self.lat_lp
            .basis()
            .iter()
            .map(|a| self.lat_l.basis().iter().map(|b| self.ip(a, b)).collect())
            .collect()
    }

    /// Smallest even `N` with `N·⟨λ',μ⟩ ∈ ℤ` for `λ' ∈ L' + Σℤα_i∨/2`, `μ ∈ L`.
    pub fn base_q_root(&self) -> i64 {
        let mut d: i64 = 2;
        let mut steps: Vec<QVec> = self.lat_lp.basis().to_vec();
        for i in 0..self.n {
            steps.push(vscale(&self.coroot(&unit_vec(self.n, i)), qr(1, 2)));
        }
        for a in &steps {
            for b in self.lat_l.basis() {
                d = num_integer::lcm(d, *self.ip(a, b).denom());
            }
        }
        if d % 2 != 0 {
            d *= 2;
        }
        d
    }

    pub fn describe(&self) -> String {
        format!("({}, {}{})", self.case.tag(), self.ctype.letter(), self.n)
    }
}

/// All `x ∈ ℤ≥0ⁿ` with `Σx ≤ h`, ordered by height then lexicographically.
pub fn cone_points(n: usize, h: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for total in 0..=h {
        let mut layer = vec![];
        compositions(n, total as i64, &mut vec![], &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

fn compositions(n: usize, total: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() + 1 == n {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(n, total - k, cur, out);
        cur.pop();
    }
}

/// All integer points of `[-r, r]ⁿ`.
pub fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = vec![];
        for p in &out {
            for k in -r..=r {
                let mut q = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(c: Case, t: CartanType, n: usize) -> RootDatum {
        RootDatum::build(c, t, n).unwrap()
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(rd(Case::A, CartanType::A, 1).order(), 2);
        assert_eq!(rd(Case::A, CartanType::A, 2).order(), 6);
        assert_eq!(rd(Case::A, CartanType::B, 2).order(), 8);
        assert_eq!(rd(Case::B, CartanType::C, 2).order(), 8);
        assert_eq!(rd(Case::A, CartanType::G, 2).order(), 12);
        assert_eq!(rd(Case::C, CartanType::C, 3).order(), 48);
    }

    #[test]
    fn a1_lattices() {
        let r = rd(Case::A, CartanType::A, 1);
        assert_eq!(r.norm2(&r.phi), q(2));
        assert_eq!(r.lat_l.basis()[0], vec![qr(1, 2)]);
        assert_eq!(r.lat_lp.basis()[0], vec![qr(1, 2)]);
        assert_eq!(r.omega.len(), 2);
    }

    #[test]
    fn case_c_datum() {
        let r = rd(Case::C, CartanType::C, 1);
        assert_eq!(r.norm2(&r.phi), q(4));
        assert!(r.minuscule().is_empty());
        assert_eq!(r.omega.len(), 1);
        assert_eq!(r.simple_affine[0], AffRoot::new(vec![qr(-1, 2)], qr(1, 2)));
        let r2 = rd(Case::C, CartanType::C, 2);
        assert!(r2.minuscule().is_empty());
    }

    #[test]
    fn translation_word_in_a1() {
        let r = rd(Case::A, CartanType::A, 1);
        let t = r.translation(&[qr(1, 2)]);
        assert_eq!(r.cross_set(&t), vec![AffRoot::new(vec![q(1)], q(0))]);
        let (om, word) = r.reduced_word(&t);
        assert_ne!(om, 0);
        assert_eq!(word, vec![1]);
        assert_eq!(r.compose_word(om, &word), t);
    }

    #[test]
    fn saturated_sets_a1() {
        let r = rd(Case::A, CartanType::A, 1);
        assert_eq!(r.saturated_set(&[q(1)]), vec![vec![q(1)], vec![q(0)]]);
        assert_eq!(r.saturated_set(&[qr(1, 2)]), vec![vec![qr(1, 2)]]);
    }

    #[test]
    fn minuscule_a2_and_base_root() {
        let r = rd(Case::A, CartanType::A, 2);
        assert_eq!(r.minuscule().len(), 2);
        assert_eq!(r.omega.len(), 3);
        assert_eq!(r.base_q_root(), 6);
        assert_eq!(rd(Case::A, CartanType::A, 1).base_q_root(), 2);
    }
}
