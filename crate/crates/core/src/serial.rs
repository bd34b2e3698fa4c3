//! JSON forms of scalars, polynomials, operators and series.
//!
//! Scalars are canonical `num`/`den` strings in the ring variables. Lattice
//! exponents are integer coordinates in the basis of `L` (polynomials) or `L'`
//! (spectral polynomials); operator steps may be half-integral and are given as
//! rational strings in the `L'` basis.

use serde::{Deserialize, Serialize};

use crate::algebra::lattice::{fmt_q, parse_q, vadd, vscale, zero_vec, Q};
use crate::algebra::series::ConeCoeffs;
use crate::algebra::Frac;
use crate::error::{Error, Result};
use crate::heckeops::{Check, Context};
use crate::macops::{self, DiffOp, SymPoly, XiPoly};

pub const SCHEMA: &str = "macdonald-hc/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub exp: Vec<i64>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTerm {
    pub shift: Vec<String>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scalar {
    pub num: String,
    pub den: String,
}

pub fn scalar(ctx: &Context, f: &Frac) -> Scalar {
    let (num, den) = ctx.ring.fmt_frac(f, "z");
    Scalar { num, den }
}

pub fn parse_scalar(ctx: &Context, s: &Scalar) -> Result<Frac> {
    ctx.ring.parse_frac(&s.num, &s.den, "z")
}

/// `W₀`-invariant polynomial in the monomial basis, keyed by `L`-coordinates.
pub fn sym_to_json(ctx: &Context, p: &SymPoly) -> Result<Vec<Coeff>> {
    p.iter()
        .map(|(lam, f)| {
            let (num, den) = ctx.ring.fmt_frac(f, "z");
            Ok(Coeff { exp: ctx.rd.lat_l.try_coords(lam)?, num, den })
        })
        .collect()
}

pub fn sym_from_json(ctx: &Context, c: &[Coeff]) -> Result<SymPoly> {
    let mut out = SymPoly::new();
    for e in c {
        out.insert(ctx.rd.lat_l.point(&e.exp), ctx.ring.parse_frac(&e.num, &e.den, "z")?);
    }
    Ok(out)
}

/// Polynomial in `ξ`, keyed by `L'`-coordinates.
pub fn xi_to_json(ctx: &Context, p: &XiPoly) -> Result<Vec<Coeff>> {
    p.iter()
        .map(|(lp, f)| {
            let (num, den) = ctx.ring.fmt_frac(f, "xi");
            Ok(Coeff { exp: ctx.rd.lat_lp.try_coords(lp)?, num, den })
        })
        .collect()
}

pub fn xi_from_json(ctx: &Context, c: &[Coeff]) -> Result<XiPoly> {
    let mut out = XiPoly::new();
    for e in c {
        out.insert(ctx.rd.lat_lp.point(&e.exp), ctx.ring.parse_frac(&e.num, &e.den, "xi")?);
    }
    Ok(out)
}

pub fn op_to_json(ctx: &Context, d: &DiffOp) -> Vec<OpTerm> {
    d.terms
        .iter()
        .map(|(lp, f)| {
            let (num, den) = ctx.ring.fmt_frac(f, "z");
            OpTerm { shift: ctx.rd.lat_lp.rational_coords(lp).iter().map(fmt_q).collect(), num, den }
        })
        .collect()
}

pub fn op_from_json(ctx: &Context, terms: &[OpTerm]) -> Result<DiffOp> {
    let mut d = DiffOp::zero();
    let basis = ctx.rd.lat_lp.basis();
    for t in terms {
        if t.shift.len() != basis.len() {
            return Err(Error::Parse(format!("shift of length {}", t.shift.len())));
        }
        let mut v = zero_vec(ctx.rd.n);
        for (c, b) in t.shift.iter().zip(basis) {
            v = vadd(&v, &vscale(b, parse_q(c)?));
        }
        d.add_term(v, ctx.ring.parse_frac(&t.num, &t.den, "z")?);
    }
    Ok(d.reduced())
}

/// Series coefficients at cone points `x ∈ ℤ≥0Δ`, with scalars in `ξ`.
pub fn series_to_json(ctx: &Context, s: &ConeCoeffs) -> Vec<Coeff> {
    s.iter()
        .map(|(x, f)| {
            let (num, den) = ctx.ring.fmt_frac(f, "xi");
            Coeff { exp: x.clone(), num, den }
        })
        .collect()
}

pub fn series_from_json(ctx: &Context, c: &[Coeff]) -> Result<ConeCoeffs> {
    let mut out = ConeCoeffs::new();
    for e in c {
        out.insert(e.exp.clone(), ctx.ring.parse_frac(&e.num, &e.den, "xi")?);
    }
    Ok(out)
}

fn qvec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// JSON description of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDoc {
    pub schema: String,
    pub case: String,
    pub cartan_type: String,
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    pub cartan: Vec<Vec<i64>>,
    /// Bases of `L` and `L'` in root coordinates.
    pub l_basis: Vec<Vec<String>>,
    pub lp_basis: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub simple_affine_roots: Vec<String>,
    pub weyl_order: usize,
    pub label_variables: Vec<String>,
    pub q_root: i64,
    pub special_coweights: Vec<String>,
}

pub fn datum_doc(ctx: &Context) -> DatumDoc {
    let rd = &ctx.rd;
    DatumDoc {
        schema: SCHEMA.into(),
        case: rd.case.tag().into(),
        cartan_type: rd.ctype.letter().into(),
        rank: rd.n,
        gram: rd.gram.iter().map(|r| qvec(r)).collect(),
        cartan: rd.cartan.clone(),
        l_basis: rd.lat_l.basis().iter().map(|b| qvec(b)).collect(),
        lp_basis: rd.lat_lp.basis().iter().map(|b| qvec(b)).collect(),
        positive_roots: rd.positive.iter().map(|b| qvec(b)).collect(),
        simple_affine_roots: rd.simple_affine.iter().map(|a| format!("{a:?}")).collect(),
        weyl_order: rd.order(),
        label_variables: ctx.ring.param_names().to_vec(),
        q_root: ctx.ring.q_root(),
        special_coweights: macops::supported_pis(rd).iter().map(|p| p.tag()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub schema: String,
    pub datum: String,
    pub pi: String,
    pub routes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub routes_agree: Option<bool>,
    pub terms: Vec<OpTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub schema: String,
    pub datum: String,
    pub weight: Vec<i64>,
    pub eigenvalue: Scalar,
    pub coeffs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDoc {
    pub height: usize,
    pub coeffs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub schema: String,
    pub datum: String,
    pub pi: String,
    pub height: usize,
    /// Spectral point in root coordinates; absent for the formal series.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectral_point: Option<Vec<String>>,
    pub layers: Vec<LayerDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema: String,
    pub datum: String,
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub reports: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema: String,
    pub code: String,
    pub message: String,
}

/// One height layer of a streamed series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerLine {
    pub schema: String,
    pub datum: String,
    #[serde(flatten)]
    pub layer: LayerDoc,
}

/// Every document printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    Datum(DatumDoc),
    Mdop(OperatorDoc),
    Mdpoly(PolyDoc),
    Hcseries(SeriesDoc),
    Layer(LayerLine),
    Verify(VerifyDoc),
    Error(ErrorDoc),
}

pub fn error_doc(e: &Error) -> Document {
    Document::Error(ErrorDoc { schema: SCHEMA.into(), code: e.code().into(), message: e.to_string() })
}

/// Splits series coefficients into height layers.
pub fn series_layers(ctx: &Context, s: &ConeCoeffs, height: usize) -> Vec<LayerDoc> {
    let mut layers: Vec<LayerDoc> = (0..=height).map(|h| LayerDoc { height: h, coeffs: vec![] }).collect();
    for c in series_to_json(ctx, s) {
        let h = c.exp.iter().sum::<i64>() as usize;
        if h <= height {
            layers[h].coeffs.push(c);
        }
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckeops::Label;
    use crate::macops::{macdonald_operator, pi_prime, PiSel, Route};
    use crate::rootdata::{CartanType, Case, RootDatum};

    #[test]
    fn operator_roundtrip() {
        let rd = RootDatum::build(Case::C, CartanType::C, 1).unwrap();
        let ctx = Context::new(rd, Label::Generic).unwrap();
        let pi = pi_prime(&ctx.rd, PiSel::Quasi).unwrap();
        let d = macdonald_operator(&ctx, &pi, Route::Explicit).unwrap();
        let j = serde_json::to_string(&op_to_json(&ctx, &d)).unwrap();
        let back: Vec<OpTerm> = serde_json::from_str(&j).unwrap();
        assert!(op_from_json(&ctx, &back).unwrap().equals(&d));
    }

    #[test]
    fn document_roundtrip() {
        let rd = RootDatum::build(Case::A, CartanType::B, 2).unwrap();
        let ctx = Context::new(rd, Label::Generic).unwrap();
        let doc = Document::Datum(datum_doc(&ctx));
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"schema\":\"macdonald-hc/1\""));
        assert_eq!(serde_json::from_str::<Document>(&text).unwrap(), doc);
    }
}
