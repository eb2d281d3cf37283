//! Matrices, row determinants and generators of the classical W-algebras, with the
//! verification pipeline: membership, Δ-weights, linear parts and operator identities.

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chibra::Affine;
use crate::dops::{self, substitute_chi, ChiDOp, DMatrix, DOp};
use crate::error::{Error, Result};
use crate::liesuper::{self, AlgebraSpec, Basis, Family, KerElem, SuperElement};
use crate::linalg;
use crate::rational::{q, render, render_half, sign, Q};
use crate::superpoly::{DiffPoly, GenSymbol};

/// Default exactness floor for D⁻¹ series: -(|I| + 4).
pub fn default_floor(spec: &AlgebraSpec) -> i32 {
    -(spec.size() as i32 + 4)
}

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

/// ā as a linear differential polynomial.
pub fn bar(basis: &Basis, a: &SuperElement) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (id, c) in basis.coords(a)? {
        out.add_term(vec![GenSymbol::of(basis, id, 0)], c);
    }
    Ok(out)
}

/// Ē_ij for osp families, ē_ij otherwise.
pub fn ebar(basis: &Basis, i: usize, j: usize) -> Result<DiffPoly> {
    let spec = basis.spec();
    if spec.family().is_osp() {
        bar(basis, &spec.fold_e(i, j)?)
    } else {
        bar(basis, &spec.unit(i, j))
    }
}

/// F̄_ij for osp families.
pub fn fbar(basis: &Basis, i: usize, j: usize) -> Result<DiffPoly> {
    bar(basis, &basis.spec().fold_f(i, j)?)
}

/// ē^{ij}, the dual of e_ji under the supertrace form.
pub fn ebar_dual(basis: &Basis, i: usize, j: usize) -> Result<DiffPoly> {
    let err = || Error::IndexOutOfRange {
        index: i.max(j),
        size: basis.spec().size(),
    };
    let a = basis.id_of(i, j).ok_or_else(err)?;
    let b = basis.id_of(j, i).ok_or_else(err)?;
    let pairing = basis.form(a, b).clone();
    Ok(ebar(basis, i, j)?.scale(&(Q::one() / pairing)))
}

/// δ·k·D + a
fn entry(diag: bool, level: &Q, a: DiffPoly) -> DOp {
    let mut x = DOp::coeff_op(a);
    if diag {
        x = x.add(&DOp::d().scale(level));
    }
    x
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// 𝒜 = Σ_{i≤j} e_ij ⊗ (δ_ij kD + ē^{ji}) - f ⊗ 1 for gl and sl presentations.
pub fn gl_matrix(basis: &Basis, level: &Q) -> Result<DMatrix> {
    let size = basis.spec().size();
    let mut m = vec![vec![DOp::zero(); size]; size];
    for i in 1..=size {
        for j in i..=size {
            m[i - 1][j - 1] = entry(i == j, level, ebar_dual(basis, j, i)?);
        }
        if i < size {
            m[i][i - 1] = DOp::scalar(q(-1));
        }
    }
    Ok(m)
}

/// 𝒜_ij = δ_ij kD + Ē_ji for i ≤ j and -(-1)^{δ_j} on the subdiagonal, for osp(2n±1|2n).
pub fn osp_odd_matrix(basis: &Basis, level: &Q) -> Result<DMatrix> {
    let spec = basis.spec();
    let size = spec.size();
    let mut m = vec![vec![DOp::zero(); size]; size];
    for i in 1..=size {
        for j in i..=size {
            m[i - 1][j - 1] = entry(i == j, level, ebar(basis, j, i)?);
        }
        if i < size {
            m[i][i - 1] = DOp::scalar(-sign(spec.delta_index(i)? as i64));
        }
    }
    Ok(m)
}

/// The four c×c blocks of the even osp matrix, c = |I|/2.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenBlocks {
    pub m11: DMatrix,
    pub m12: DMatrix,
    pub m21: DMatrix,
    pub m22: DMatrix,
}

impl EvenBlocks {
    pub fn size(&self) -> usize {
        self.m11.len()
    }

    fn get(&self, block: usize) -> &DMatrix {
        match block {
            0 => &self.m11,
            1 => &self.m12,
            2 => &self.m21,
            _ => &self.m22,
        }
    }

    /// Entries where the two block quadruples differ, as (block, row, column), 1-based.
    pub fn differences(&self, other: &EvenBlocks) -> Vec<(&'static str, usize, usize)> {
        const NAMES: [&str; 4] = ["mu11", "mu12", "mu21", "mu22"];
        let mut out = Vec::new();
        for (b, name) in NAMES.iter().enumerate() {
            let (x, y) = (self.get(b), other.get(b));
            for r in 0..x.len() {
                for s in 0..x.len() {
                    if x[r][s] != y[r][s] {
                        out.push((*name, r + 1, s + 1));
                    }
                }
            }
        }
        out
    }
}

fn require_even(spec: &AlgebraSpec, op: &'static str) -> Result<()> {
    if spec.family().is_osp_even() {
        Ok(())
    } else {
        Err(Error::NotOrthosymplectic {
            op,
            family: spec.family().to_string(),
        })
    }
}

fn split_blocks(full: &DMatrix, c: usize) -> EvenBlocks {
    let block = |r0: usize, s0: usize| -> DMatrix {
        (0..c)
            .map(|r| (0..c).map(|s| full[r0 + r][s0 + s].clone()).collect())
            .collect()
    };
    EvenBlocks {
        m11: block(0, 0),
        m12: block(0, c),
        m21: block(c, 0),
        m22: block(c, c),
    }
}

/// The even osp blocks by literal row and column operations:
/// ℳ = Σ e_ii kD + Σ_{i≥j} e_ji ⊗ Ē_ij - f ⊗ 1, then column c minus column c+1,
/// then row c+1 minus row c, then the 2×2 block split.
pub fn osp_even_surgery(basis: &Basis, level: &Q) -> Result<EvenBlocks> {
    let spec = basis.spec();
    require_even(spec, "osp_even_surgery")?;
    let size = spec.size();
    let c = size / 2;
    let f = spec.principal_f();
    let mut m = vec![vec![DOp::zero(); size]; size];
    for r in 1..=size {
        for s in 1..=size {
            m[r - 1][s - 1] = if r <= s {
                if !f.coeff(r, s).is_zero() {
                    return Err(Error::Consistency("f has an entry on or above the diagonal".into()));
                }
                entry(r == s, level, ebar(basis, s, r)?)
            } else {
                DOp::scalar(-f.coeff(r, s))
            };
        }
    }
    for row in m.iter_mut() {
        row[c - 1] = row[c - 1].sub(&row[c]);
    }
    let upper = m[c - 1].clone();
    for (x, y) in m[c].iter_mut().zip(&upper) {
        *x = x.sub(y);
    }
    Ok(split_blocks(&m, c))
}

/// Sign pattern assumed for the subdiagonal of μ₂₂ in the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdiagonalSign {
    /// (μ₂₂)_{c+1-i, c+1-j} = (-1)^j δ_{i, j-1}
    ByColumn,
    /// (μ₂₂)_{c+1-i, c+1-j} = (-1)^i δ_{i, j-1}
    ByRow,
}

/// The even osp blocks from the closed-form entry formulas, with c = |I|/2 and i' = |I|+1-i.
pub fn osp_even_closed_form(basis: &Basis, level: &Q, sub22: SubdiagonalSign) -> Result<EvenBlocks> {
    let spec = basis.spec();
    require_even(spec, "osp_even_closed_form")?;
    let c = spec.size() / 2;
    let cj = |i: usize| spec.conj(i);
    let e = |i: usize, j: usize| ebar(basis, i, j);
    let mut b = EvenBlocks {
        m11: vec![vec![DOp::zero(); c]; c],
        m12: vec![vec![DOp::zero(); c]; c],
        m21: vec![vec![DOp::zero(); c]; c],
        m22: vec![vec![DOp::zero(); c]; c],
    };
    for i in 1..=c {
        for j in 1..=c {
            b.m11[i - 1][j - 1] = if i <= j && j == c {
                entry(i == c, level, e(c, i)?.sub(&e(c + 1, i)?))
            } else if i <= j {
                entry(i == j, level, e(j, i)?)
            } else if i == j + 1 {
                DOp::scalar(q(-1))
            } else {
                DOp::zero()
            };
            b.m22[c - i][c - j] = if j <= i && i == c {
                entry(j == c, level, e(cj(j), cj(c))?.sub(&e(cj(j), cj(c + 1))?))
            } else if j <= i {
                entry(i == j, level, e(cj(j), cj(i))?)
            } else if i + 1 == j {
                let p = match sub22 {
                    SubdiagonalSign::ByColumn => j,
                    SubdiagonalSign::ByRow => i,
                };
                DOp::scalar(sign(p as i64))
            } else {
                DOp::zero()
            };
            b.m12[i - 1][c - j] = DOp::coeff_op(e(cj(j), i)?);
            if i == 1 && j == c {
                b.m21[i - 1][j - 1] = DOp::d().scale(&(q(-2) * level));
            }
        }
    }
    Ok(b)
}

/// A₀..A_c (leading minors of μ₁₁) and B₀..B_c (trailing minors of μ₂₂).
pub fn ak_bk(blocks: &EvenBlocks) -> Result<(Vec<DOp>, Vec<DOp>)> {
    Ok((
        dops::leading_minors(&blocks.m11, 0)?,
        dops::trailing_minors(&blocks.m22, 0)?,
    ))
}

/// A_k from the recursion
/// A_k = A_{k-1}(kD + Ē_kk) + Σ_{i<k} A_{i-1} Ē_ki, with Ē_{c,i} - Ē_{c+1,i} in the last step.
pub fn ak_recursion(basis: &Basis, level: &Q) -> Result<Vec<DOp>> {
    let spec = basis.spec();
    require_even(spec, "ak_recursion")?;
    let c = spec.size() / 2;
    let e = |k: usize, i: usize| -> Result<DiffPoly> {
        if k == c {
            Ok(ebar(basis, c, i)?.sub(&ebar(basis, c + 1, i)?))
        } else {
            ebar(basis, k, i)
        }
    };
    let mut a = vec![DOp::one()];
    for k in 1..=c {
        let diag = if k == c { ebar(basis, c, c)? } else { e(k, k)? };
        let mut x = a[k - 1].compose(&entry(true, level, diag), 0);
        for i in 1..k {
            x = x.add(&a[i - 1].compose(&DOp::coeff_op(e(k, i)?), 0));
        }
        a.push(x);
    }
    Ok(a)
}

/// B_k from the recursion
/// B_k = (kD + Ē_{k'k'}) B_{k-1} + Σ_{i<k} (-1)^{i+k+T_k(i)} Ē_{i'k'} B_{i-1},
/// with Ē_{i'c'} - Ē_{i'(c+1)'} in the last step.
pub fn bk_recursion(basis: &Basis, level: &Q) -> Result<Vec<DOp>> {
    let spec = basis.spec();
    require_even(spec, "bk_recursion")?;
    let c = spec.size() / 2;
    let cj = |i: usize| spec.conj(i);
    let mut b = vec![DOp::one()];
    for k in 1..=c {
        let mut x = entry(true, level, ebar(basis, cj(k), cj(k))?).compose(&b[k - 1], 0);
        for i in 1..k {
            let mut coeff = ebar(basis, cj(i), cj(k))?;
            if k == c {
                coeff = coeff.sub(&ebar(basis, cj(i), cj(c + 1))?);
            }
            let s = sign((i + k) as i64 + spec.t_sign(k, i) as i64);
            x = x.add(&DOp::coeff_op(coeff.scale(&s)).compose(&b[i - 1], 0));
        }
        b.push(x);
    }
    Ok(b)
}

/// Row determinant of the even osp matrix with the D⁻¹ centre:
/// A_c D⁻¹ B_c + 2ε Σ_{j,k} (-1)^{k+T_c(k)} A_{j-1} Ē_{k'j} B_{k-1},
/// with ε = 1 for osp(2n|2n) and ε = -1 for osp(2n+2|2n).
#[derive(Clone, Debug)]
pub struct EvenRdet {
    /// Exact down to `floor`.
    pub rdet: DOp,
    /// a_c, the constant term of A_c.
    pub tail_witness: DiffPoly,
    /// ± a_c D⁻¹ a_c, the expected negative part.
    pub expected_tail: DOp,
    pub a: Vec<DOp>,
    pub b: Vec<DOp>,
}

impl EvenRdet {
    /// Degrees below zero (down to the floor) where the tail differs from the expected one.
    pub fn tail_mismatches(&self) -> Vec<i32> {
        let f = self.rdet.floor().unwrap_or(0);
        (f..0)
            .filter(|&i| self.rdet.coeff(i).ok() != self.expected_tail.coeff(i).ok())
            .collect()
    }
}

pub fn rdet_osp_even(basis: &Basis, level: &Q, floor: i32) -> Result<EvenRdet> {
    let spec = basis.spec();
    require_even(spec, "rdet_osp_even")?;
    if floor > -1 {
        // the tail witness needs at least the coefficient of D⁻¹
        return Err(Error::FloorExhausted { degree: -1, floor });
    }
    let blocks = osp_even_surgery(basis, level)?;
    let (a, b) = ak_bk(&blocks)?;
    let c = blocks.size();
    let ac = &a[c];
    let inner_depth = floor - ac.top().unwrap_or(0);
    let tail = DOp::d_inv().compose(&b[c], inner_depth);
    let mut rdet = ac.compose(&tail, floor);
    // (2n+2|2n) needs the opposite sign on the finite sum for the coefficients to lie in 𝒲
    let flip = (spec.family() == Family::OspEvenUp) as i64;
    for j in 1..=c {
        for k in 1..=c {
            let s = q(2) * sign(k as i64 + spec.t_sign(c, k) as i64 + flip);
            let mid = DOp::coeff_op(ebar(basis, spec.conj(k), j)?.scale(&s));
            let term = a[j - 1].compose(&mid, 0).compose(&b[k - 1], 0);
            rdet = rdet.add(&term);
        }
    }
    rdet.truncate(floor);
    let witness = ac.coeff(0)?;
    let n = spec.n() as i64;
    let tail_sign = if spec.family() == Family::OspEven {
        sign(n)
    } else {
        sign(n + 1)
    };
    let w_op = DOp::coeff_op(witness.clone());
    let mut expected_tail = w_op
        .compose(&DOp::d_inv().compose(&w_op, floor), floor)
        .scale(&tail_sign);
    expected_tail.truncate(floor);
    Ok(EvenRdet {
        rdet,
        tail_witness: witness,
        expected_tail,
        a,
        b,
    })
}

// ---------------------------------------------------------------------------
// sl projection
// ---------------------------------------------------------------------------

/// π_sl: ā ↦ ā - (str a / str I) Ī on generators, extended as a differential-algebra map.
pub fn pi_sl(basis: &Basis, p: &DiffPoly) -> DiffPoly {
    let spec = basis.spec();
    let size = spec.size();
    let str_i = spec.supertrace(&spec.identity());
    let mut ibar = DiffPoly::zero();
    for l in 1..=size {
        if let Some(id) = basis.id_of(l, l) {
            ibar.add_term(vec![GenSymbol::of(basis, id, 0)], Q::one());
        }
    }
    p.substitute(&|s| {
        let (i, j) = basis.elem(s.id as usize).label;
        let base = DiffPoly::symbol(s.base());
        let projected = if i == j {
            let st = spec.supertrace(&basis.elem(s.id as usize).elem);
            base.sub(&ibar.scale(&(st / &str_i)))
        } else {
            base
        };
        projected.apply_d_n(s.deriv)
    })
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub label: String,
    pub t: usize,
    pub tilde: bool,
    pub poly: DiffPoly,
    /// Twice the expected Δ-weight.
    pub delta2: i32,
}

impl Generator {
    fn new(t: usize, tilde: bool, poly: DiffPoly) -> Generator {
        let label = if tilde { format!("wt{t}") } else { format!("w{t}") };
        Generator {
            label,
            t,
            tilde,
            poly,
            delta2: t as i32,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub spec: AlgebraSpec,
    pub level: Q,
    pub floor: i32,
    /// All extracted generators in label order (sl: already projected, w₁ dropped).
    pub generators: Vec<Generator>,
    /// Indices into `generators` of the minimal free generating set.
    pub minimal: Vec<usize>,
    /// The operator the generators are read off from (exact down to `floor`).
    pub rdet: DOp,
    /// π_sl(w₁) for sl families.
    pub dropped: Option<DiffPoly>,
}

impl GeneratorSet {
    pub fn minimal_generators(&self) -> Vec<&Generator> {
        self.minimal.iter().map(|&i| &self.generators[i]).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }
}

fn is_minimal_osp(t: usize) -> bool {
    t % 4 == 0 || t % 4 == 3
}

/// Reads w_t off the row determinant of the family's matrix, with D ↦ kD.
pub fn generators(basis: &Basis, level: &Q, floor: i32) -> Result<GeneratorSet> {
    let spec = basis.spec().clone();
    let fam = spec.family();
    let size = spec.size();
    let mut gens = Vec::new();
    let mut minimal = Vec::new();
    let mut dropped = None;
    let rdet;
    if fam.is_osp_even() {
        let even = rdet_osp_even(basis, level, floor)?;
        let c = size / 2;
        for t in 1..2 * c {
            if is_minimal_osp(t) {
                minimal.push(gens.len());
            }
            gens.push(Generator::new(t, false, even.rdet.coeff((2 * c - 1 - t) as i32)?));
        }
        minimal.push(gens.len());
        gens.push(Generator::new(c, true, even.tail_witness.clone()));
        rdet = even.rdet;
    } else {
        let m = if fam.is_osp() {
            osp_odd_matrix(basis, level)?
        } else {
            gl_matrix(basis, level)?
        };
        rdet = dops::rdet_hessenberg(&m, 0)?;
        for t in 1..=size {
            let w = rdet.coeff((size - t) as i32)?;
            if fam.is_sl() {
                let w = pi_sl(basis, &w);
                if t == 1 {
                    dropped = Some(w);
                    continue;
                }
                minimal.push(gens.len());
                gens.push(Generator::new(t, false, w));
            } else {
                if !fam.is_osp() || is_minimal_osp(t) {
                    minimal.push(gens.len());
                }
                gens.push(Generator::new(t, false, w));
            }
        }
    }
    Ok(GeneratorSet {
        spec,
        level: level.clone(),
        floor,
        generators: gens,
        minimal,
        rdet,
        dropped,
    })
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One named pass/fail outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// A failed membership test: π̃{n̄ χ w} ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipFailure {
    pub n: String,
    pub w: String,
    pub residual: String,
}

/// Checks π̃{n̄ χ w} = 0 for every basis element n of 𝔫 and every given generator.
pub fn verify_membership(basis: &Basis, level: &Q, gens: &[&Generator]) -> Vec<MembershipFailure> {
    let eng = Affine::with_level(basis, level.clone());
    let pairs: Vec<(usize, usize)> = basis
        .n_ids()
        .into_iter()
        .flat_map(|n| (0..gens.len()).map(move |g| (n, g)))
        .collect();
    pairs
        .par_iter()
        .filter_map(|&(n, g)| {
            let r = eng.bracket_gen(n, &gens[g].poly, true);
            (!r.is_zero()).then(|| MembershipFailure {
                n: basis.symbol_name(n),
                w: gens[g].label.clone(),
                residual: r.render(basis),
            })
        })
        .collect()
}

/// Linear part of w without derivatives, as an element of 𝔤.
pub fn linear_element(basis: &Basis, w: &DiffPoly) -> SuperElement {
    let coords: Vec<(usize, Q)> = w
        .linear_part()
        .terms()
        .iter()
        .map(|(m, c)| (m[0].id as usize, c.clone()))
        .collect();
    basis.element_of(&coords)
}

/// Scalar c with x = c·y, if any.
fn proportional(spec: &AlgebraSpec, x: &SuperElement, y: &SuperElement) -> Option<Q> {
    let (&(i, j), cy) = y.terms().iter().next()?;
    let c = x.coeff(i, j) / cy;
    (&spec.scale(&c, y) == x).then_some(c)
}

/// Whether x lies in the span of `space`.
fn in_span(spec: &AlgebraSpec, x: &SuperElement, space: &[SuperElement]) -> bool {
    let mut all = space.to_vec();
    let r0 = rank_of(spec, &all);
    all.push(x.clone());
    rank_of(spec, &all) == r0
}

fn rank_of(spec: &AlgebraSpec, elems: &[SuperElement]) -> usize {
    let size = spec.size();
    let rows: Vec<Vec<Q>> = elems
        .iter()
        .map(|x| {
            let mut row = vec![Q::zero(); size * size];
            for (&(i, j), c) in x.terms() {
                row[(i - 1) * size + (j - 1)] = c.clone();
            }
            row
        })
        .collect();
    linalg::rank(&rows, size * size)
}

/// Conditions for the minimal set to generate freely: Δ(w_t) = t/2, linear parts matching a
/// basis of 𝔤^f, and the count equal to dim 𝔤^f.
pub fn verify_free_generation(basis: &Basis, set: &GeneratorSet) -> Result<Vec<Check>> {
    let spec = basis.spec();
    let fam = spec.family();
    let kerf = liesuper::kerf_basis(basis)?;
    let minimal = set.minimal_generators();
    let mut checks = Vec::new();

    // Δ-weights of every extracted generator
    let mut bad = Vec::new();
    let mut zero = Vec::new();
    for g in &set.generators {
        match g.poly.delta_weight2() {
            Ok(Some(d)) if d == g.delta2 => {}
            Ok(None) => zero.push(g.label.clone()),
            other => bad.push(format!("{}: {:?}", g.label, other.map(|x| x.map(|d| render_half(d as i64))))),
        }
    }
    let mut detail = bad.join("; ");
    if !zero.is_empty() {
        detail = format!("{detail}{}vanishing: {}", if bad.is_empty() { "" } else { "; " }, zero.join(", "));
    }
    checks.push(Check::new("delta weights w_t = t/2", bad.is_empty(), detail));

    checks.push(Check::new(
        "minimal set size equals dim g^f",
        minimal.len() == kerf.len(),
        format!("{} generators, dim g^f = {}", minimal.len(), kerf.len()),
    ));

    let component = |t: usize, tilde: bool| -> Vec<SuperElement> {
        kerf.iter()
            .filter(|v| v.t == t && (!tilde || v.tilde))
            .map(|v| v.elem.clone())
            .collect()
    };
    let find = |t: usize, tilde: bool| -> Option<&KerElem> { kerf.iter().find(|v| v.t == t && v.tilde == tilde) };

    let mut linear = Vec::new();
    let mut detail = Vec::new();
    let mut ok = true;
    for g in &minimal {
        let l = linear_element(basis, &g.poly);
        if l.is_zero() {
            ok = false;
            detail.push(format!("{}: zero linear part", g.label));
            linear.push(l);
            continue;
        }
        let expected: Option<SuperElement> = match fam {
            Family::OspOddUp | Family::OspOddDown => {
                Some(spec.scale(&sign(g.t as i64), &liesuper::osp_odd_v(spec, g.t)?))
            }
            Family::OspEven if g.tilde => Some(liesuper::osp_even_v_tilde(spec)?),
            Family::OspEvenUp if g.tilde => Some(liesuper::osp_even_v_tilde(spec)?),
            _ => None,
        };
        match expected {
            Some(v) => {
                if l != v {
                    ok = false;
                    detail.push(format!("{}: linear part {} differs from {}", g.label, l, v));
                }
            }
            None => {
                let space = component(g.t, false);
                if !in_span(spec, &l, &space) {
                    ok = false;
                    detail.push(format!("{}: linear part {} not in g^f", g.label, l));
                } else if let Some(v) = find(g.t, false).filter(|_| space.len() == 1) {
                    if let Some(c) = proportional(spec, &l, &v.elem) {
                        let kind = if v.closed_form { "closed-form " } else { "" };
                        detail.push(format!("{} = {} * {kind}v{}", g.label, render(&c), g.t));
                    }
                }
            }
        }
        linear.push(l);
    }
    checks.push(Check::new("linear parts match g^f", ok, detail.join("; ")));
    let r = rank_of(spec, &linear);
    checks.push(Check::new(
        "linear parts independent",
        r == minimal.len() && r == kerf.len(),
        format!("rank {r}"),
    ));
    if let Some(w1) = &set.dropped {
        checks.push(Check::new("pi_sl(w1) = 0", w1.is_zero(), w1.render(basis)));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

/// Skewsymmetry on all ordered pairs and Jacobi on all ordered triples of basis generators.
pub fn axiom_checks(basis: &Basis, level: &Q) -> Vec<Check> {
    let eng = Affine::with_level(basis, level.clone());
    let dim = basis.dim();
    let gens: Vec<DiffPoly> = (0..dim).map(|i| eng.gen(i)).collect();
    let skew: Vec<String> = (0..dim * dim)
        .into_par_iter()
        .filter_map(|x| {
            let (a, b) = (x / dim, x % dim);
            (!eng.skew_defect(&gens[a], &gens[b]).is_zero())
                .then(|| format!("({}, {})", basis.symbol_name(a), basis.symbol_name(b)))
        })
        .collect();
    let jacobi: Vec<String> = (0..dim * dim * dim)
        .into_par_iter()
        .filter_map(|x| {
            let (a, b, c) = (x / (dim * dim), (x / dim) % dim, x % dim);
            (!eng.jacobi_defect(&gens[a], &gens[b], &gens[c]).is_zero()).then(|| {
                format!(
                    "({}, {}, {})",
                    basis.symbol_name(a),
                    basis.symbol_name(b),
                    basis.symbol_name(c)
                )
            })
        })
        .collect();
    vec![
        Check::new(format!("skewsymmetry on {} pairs", dim * dim), skew.is_empty(), skew.join(" ")),
        Check::new(
            format!("Jacobi identity on {} triples", dim * dim * dim),
            jacobi.is_empty(),
            jacobi.join(" "),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

/// dim 𝔤_{d/2} from the closed formulas, for the osp families that have one.
pub fn dimension_formula(spec: &AlgebraSpec, d: i32) -> Option<usize> {
    let n = spec.n() as i32;
    let odd = |base: i32| (d + 4 * n + base) / 2;
    let pick = |a: i32, zero: i32, two: i32| -> i32 {
        if d.rem_euclid(2) == 1 {
            odd(a)
        } else if d.rem_euclid(4) == 0 {
            odd(zero)
        } else {
            odd(two)
        }
    };
    let v = match spec.family() {
        Family::OspOddUp if (-4 * n..=0).contains(&d) => pick(1, 0, 2),
        Family::OspEven if (-2 * n + 1..=0).contains(&d) => pick(1, 0, 2),
        Family::OspEven if (-4 * n + 2..=-2 * n).contains(&d) => pick(-1, -2, 0),
        Family::OspEvenUp if (-2 * n..=0).contains(&d) => pick(3, 2, 4),
        Family::OspEvenUp if (-4 * n..-2 * n).contains(&d) => pick(1, 0, 2),
        _ => return None,
    };
    Some(v as usize)
}

/// Compares dim 𝔤_{d/2} with the formulas on their stated ranges and |kerf| with dim 𝔤₀.
pub fn dimension_checks(basis: &Basis) -> Result<Vec<Check>> {
    let spec = basis.spec();
    let mut checks = Vec::new();
    let lo = 1 - spec.size() as i32;
    let mut bad = Vec::new();
    let mut covered = 0;
    for d in lo..=0 {
        if let Some(expected) = dimension_formula(spec, d) {
            covered += 1;
            let got = basis.component(d).len();
            if got != expected {
                bad.push(format!("dim g_{} = {got}, formula {expected}", render_half(d as i64)));
            }
        }
    }
    if spec.family().is_osp() && spec.family() != Family::OspOddDown {
        checks.push(Check::new(
            format!("dimension formula on {covered} components"),
            bad.is_empty() && covered > 0,
            bad.join("; "),
        ));
    }
    let kerf = liesuper::kerf_basis(basis)?.len();
    let mut g0 = basis.component(0).len();
    if spec.family().is_sl() {
        g0 -= 1;
    }
    checks.push(Check::new(
        "|kerf| = dim g_0",
        kerf == g0,
        format!("|kerf| = {kerf}, dim g_0 = {g0}"),
    ));
    let total: usize = (lo..=0).map(|d| basis.component(d).len()).sum();
    checks.push(Check::new(
        "components of p add up",
        total == basis.p_ids().len(),
        format!("{total}"),
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

fn chi_eq(name: String, lhs: &ChiDOp, rhs: &ChiDOp, out: &mut Vec<Check>) {
    let d = lhs.diff_exact(rhs);
    out.push(Check::new(name, d.is_zero(), if d.is_zero() { String::new() } else { format!("residual {}", d.render(&|i| format!("#{i}"))) }));
}

fn dop_eq(name: String, lhs: &DOp, rhs: &DOp, out: &mut Vec<Check>) {
    let d = lhs.diff_exact(rhs);
    out.push(Check::new(name, d.is_zero(), if d.is_zero() { String::new() } else { format!("residual {}", d.render(&|i| format!("#{i}"))) }));
}

/// Operator identities used in the proofs, checked with zero residual.
pub fn identity_checks(basis: &Basis, level: &Q, floor: i32) -> Result<Vec<Check>> {
    let spec = basis.spec();
    let fam = spec.family();
    let mut out = Vec::new();
    if fam.is_osp_even() {
        even_identities(basis, level, floor, &mut out)?;
    } else {
        let m = if fam.is_osp() {
            osp_odd_matrix(basis, level)?
        } else {
            gl_matrix(basis, level)?
        };
        let h = dops::rdet_hessenberg(&m, 0)?;
        dop_eq("rdet: recursion equals path enumeration".into(), &h, &dops::rdet_paths(&m, 0)?, &mut out);
        if fam.is_osp() {
            let delta: Vec<u8> = (1..=spec.size())
                .map(|k| spec.delta_index(k))
                .collect::<Result<_>>()?;
            let signed = dops::rdet_signed_paths(&m, spec.n(), &delta, 0);
            dop_eq("rdet: signed path sum".into(), &h, &signed, &mut out);
        }
        if matches!(fam, Family::GlUp | Family::SlUp) && level.is_one() {
            gl_identities(basis, &m, &mut out)?;
        }
    }
    ad_action_identities(basis, level, floor, &mut out)?;
    Ok(out)
}

/// {ē_{i,i+1} χ ē^{kl}}, π̃(ē_{i,i+1}) and the action of ē_{i,i+1} on matrix entries.
fn gl_identities(basis: &Basis, m: &DMatrix, out: &mut Vec<Check>) -> Result<()> {
    let spec = basis.spec();
    let size = spec.size();
    let eng = Affine::new(basis);
    let id = |i, j| basis.id_of(i, j).expect("gl index");
    let mut bad = Vec::new();
    for i in 1..size {
        let e = eng.gen(id(i, i + 1));
        for k in 1..=size {
            for l in 1..=size {
                let lhs = eng.bracket(&e, &ebar_dual(basis, k, l)?);
                let mut rhs = crate::chibra::ChiPoly::zero();
                if k == i + 1 {
                    rhs.add_at(0, &eng.gen(id(i, l)), &sign(l as i64));
                }
                if l == i {
                    rhs.add_at(0, &eng.gen(id(k, i + 1)), &-sign(k as i64));
                    if k == i + 1 {
                        rhs.add_at(1, &DiffPoly::one(), &q(-1));
                    }
                }
                if lhs != rhs {
                    bad.push(format!("(i,k,l) = ({i},{k},{l})"));
                }
            }
        }
    }
    out.push(Check::new("gl: bracket of e(i,i+1) with dual basis", bad.is_empty(), bad.join(", ")));

    let mut bad = Vec::new();
    for i in 1..size {
        let v = eng.pi_tilde_poly(&eng.gen(id(i, i + 1)));
        if v != DiffPoly::constant(sign(i as i64)) {
            bad.push(format!("i = {i}"));
        }
        let v = eng.pi_tilde_poly(&ebar_dual(basis, i, i + 1)?);
        if v != DiffPoly::constant(q(-1)) {
            bad.push(format!("dual i = {i}"));
        }
    }
    out.push(Check::new("gl: projection of e(i,i+1)", bad.is_empty(), bad.join(", ")));

    let a = |r: usize, s: usize| &m[r - 1][s - 1];
    let from = |x: &DOp| ChiDOp::from_dop(x);
    for i in 1..size {
        let p = eng.gen(id(i, i + 1));
        let ad = |x: &DOp| eng.ad_chi(&p, x, true);
        for k in i + 2..=size {
            chi_eq(format!("gl: ad e({i},{}) A({i},{k})", i + 1), &ad(a(i, k)), &from(a(i + 1, k)), out);
            let prod = a(i, i).compose(a(i + 1, k), 0);
            chi_eq(
                format!("gl: ad e({i},{}) A({i},{i})A({},{k})", i + 1, i + 1),
                &ad(&prod),
                &from(a(i + 1, k)).scale(&q(-1)),
                out,
            );
        }
        for l in 1..i {
            chi_eq(
                format!("gl: ad e({i},{}) A({l},{})", i + 1, i + 1),
                &ad(a(l, i + 1)),
                &from(a(l, i)).scale(&sign((l + i + 1) as i64)),
                out,
            );
            let prod = a(l, i).compose(a(i + 1, i + 1), 0);
            chi_eq(
                format!("gl: ad e({i},{}) A({l},{i})A({},{})", i + 1, i + 1, i + 1),
                &ad(&prod),
                &from(a(l, i)).scale(&sign((l + i) as i64)),
                out,
            );
        }
        let s = sign(i as i64);
        let lin = eng.gen(id(i, i)).add(&eng.gen(id(i + 1, i + 1))).scale(&s);
        let mut rhs = ChiDOp::zero(None);
        rhs.add_at(0, 0, &lin, &Q::one());
        rhs.add_at(1, 0, &DiffPoly::one(), &q(-1));
        chi_eq(format!("gl: ad e({i},{}) A({i},{})", i + 1, i + 1), &ad(a(i, i + 1)), &rhs, out);
        let prod = a(i, i).compose(a(i + 1, i + 1), 0);
        chi_eq(
            format!("gl: ad e({i},{}) A({i},{i})A({},{})", i + 1, i + 1, i + 1),
            &ad(&prod),
            &rhs.scale(&q(-1)),
            out,
        );
    }
    Ok(())
}

/// Behaviour of the χ-adjoint action under D, D⁻¹ and products, on matrix entries.
fn ad_action_identities(basis: &Basis, level: &Q, floor: i32, out: &mut Vec<Check>) -> Result<()> {
    let spec = basis.spec();
    let eng = Affine::with_level(basis, level.clone());
    let size = spec.size();
    let entries: Vec<DOp> = (1..=size.min(3))
        .flat_map(|i| (i..=size.min(i + 2)).map(move |j| (i, j)))
        .map(|(i, j)| Ok(entry(i == j, level, ebar(basis, j, i)?)))
        .collect::<Result<_>>()?;
    let ps: Vec<DiffPoly> = basis.n_ids().into_iter().take(4).map(|n| eng.gen(n)).collect();
    let mut bad = [Vec::new(), Vec::new(), Vec::new()];
    for p in &ps {
        let pp = p.parity().unwrap_or(0) as i64;
        let s = sign(pp + 1);
        for (x, a) in entries.iter().enumerate() {
            let lhs = eng.ad_chi(p, &a.d_left(), false);
            let rhs = eng.ad_chi(p, a, false).d_plus_chi_left().scale(&s);
            if !lhs.diff_exact(&rhs).is_zero() {
                bad[0].push(format!("entry {x}"));
            }
            let lhs = eng.ad_chi(p, &a.dinv_left(floor), false);
            let rhs = eng.ad_chi(p, a, false).chi_d_inv_left(floor).scale(&s);
            if !lhs.diff_exact(&rhs).is_zero() {
                bad[1].push(format!("entry {x}"));
            }
            for (y, b) in entries.iter().enumerate() {
                let lhs = eng.ad_chi(p, &a.compose(b, floor), false);
                let pa = a.parity().unwrap_or(0) as i64;
                let first = substitute_chi(a, Some(floor))?
                    .compose(&eng.ad_chi(p, b, false), floor)
                    .scale(&sign(pa * (pp + 1)));
                let rhs = first.add(&eng.ad_chi(p, a, false).compose_dop(b, floor));
                if !lhs.diff_exact(&rhs).is_zero() {
                    bad[2].push(format!("entries ({x},{y})"));
                }
            }
        }
    }
    let [d1, d2, d3] = bad;
    out.push(Check::new("ad: derivative on the left", d1.is_empty(), d1.join(", ")));
    out.push(Check::new("ad: inverse derivative on the left", d2.is_empty(), d2.join(", ")));
    out.push(Check::new("ad: product rule", d3.is_empty(), d3.join(", ")));
    Ok(())
}

fn even_identities(basis: &Basis, level: &Q, floor: i32, out: &mut Vec<Check>) -> Result<()> {
    let spec = basis.spec();
    let fam = spec.family();
    let c = spec.size() / 2;
    let n = spec.n() as i64;
    let surgery = osp_even_surgery(basis, level)?;
    let sub22 = if fam == Family::OspEven {
        SubdiagonalSign::ByColumn
    } else {
        SubdiagonalSign::ByRow
    };
    let closed = osp_even_closed_form(basis, level, sub22)?;
    let diff = surgery.differences(&closed);
    out.push(Check::new(
        "blocks: row and column operations equal closed forms",
        diff.is_empty(),
        diff.iter().map(|(b, r, s)| format!("{b}({r},{s})")).collect::<Vec<_>>().join(", "),
    ));

    let (a, b) = ak_bk(&surgery)?;
    let ar = ak_recursion(basis, level)?;
    let br = bk_recursion(basis, level)?;
    for k in 0..=c {
        dop_eq(format!("A_{k}: recursion equals leading minor"), &ar[k], &a[k], out);
        dop_eq(format!("B_{k}: recursion equals trailing minor"), &br[k], &b[k], out);
    }

    let even = rdet_osp_even(basis, level, floor)?;
    let bad = even.tail_mismatches();
    out.push(Check::new(
        format!("rdet: negative part equals a D^-1 a down to D^{floor}"),
        bad.is_empty() && even.rdet.floor() == Some(floor),
        if bad.is_empty() { String::new() } else { format!("mismatched powers {bad:?}") },
    ));
    let top = (2 * c - 1) as i32;
    let lead = even.rdet.coeff(top)?;
    let expected_lead = DiffPoly::constant(num::pow::pow(level.clone(), 2 * c - 1));
    out.push(Check::new(
        format!("rdet: leading term D^{top}"),
        lead == expected_lead && even.rdet.top() == Some(top),
        String::new(),
    ));

    if fam != Family::OspEven || !level.is_one() {
        return Ok(());
    }
    // adjoint relation between A_k and B_k
    for k in 0..=c {
        let s = sign(((k + 1) / 2) as i64);
        dop_eq(format!("(B_{k})* = (-1)^[(k+1)/2] A_{k}"), &b[k].adjoint_star()?, &a[k].scale(&s), out);
    }
    // coefficients of A_c and right coefficients of B_c
    let bc = b[c].right_coefficients()?;
    let mut bad = Vec::new();
    for i in 0..=c {
        let a_i = a[c].coeff(i as i32)?;
        let s = sign(n + i as i64 + ((i + 1) / 2) as i64);
        if bc[i] != a_i.scale(&s) {
            bad.push(format!("i = {i}"));
        }
    }
    out.push(Check::new("B_c right coefficients are signed A_c coefficients", bad.is_empty(), bad.join(", ")));
    let a_half = a[c].coeff((c / 2) as i32)?;
    let alt = bc[0] == a_half.scale(&sign(n + 1));
    out.push(Check::new(
        "B_c constant term is (-1)^n a_c",
        bc[0] == a[c].coeff(0)?.scale(&sign(n)),
        format!("the variant (-1)^(n+1) a_n holds: {alt}"),
    ));

    // action of F(i,i+1) and F(c-1,c+1) on A_k and B_k
    let eng = Affine::with_level(basis, level.clone());
    let zero = ChiDOp::zero(None);
    let sub = |x: &DOp| substitute_chi(x, None);
    for i in 1..c {
        let p = fbar(basis, i, i + 1)?;
        for k in 0..=c {
            let rhs = if k == i { sub(&a[i - 1])?.scale(&sign(i as i64)) } else { zero.clone() };
            chi_eq(format!("ad F({i},{}) A_{k}", i + 1), &eng.ad_chi(&p, &a[k], true), &rhs, out);
            let rhs = if k == i { ChiDOp::from_dop(&b[i - 1]) } else { zero.clone() };
            chi_eq(format!("ad F({i},{}) B_{k}", i + 1), &eng.ad_chi(&p, &b[k], true), &rhs, out);
        }
    }
    let p = fbar(basis, c - 1, c + 1)?;
    for k in 0..=c {
        let rhs = if k == c - 1 {
            sub(&a[c - 2])?.scale(&q(-1))
        } else if k == c {
            sub(&a[c - 2])?.compose_dop(&DOp::d(), 0).scale(&q(-2))
        } else {
            zero.clone()
        };
        chi_eq(format!("ad F({},{}) A_{k}", c - 1, c + 1), &eng.ad_chi(&p, &a[k], true), &rhs, out);
        let rhs = if k == c - 1 {
            ChiDOp::from_dop(&b[c - 2])
        } else if k == c {
            ChiDOp::from_dop(&b[c - 2]).d_plus_chi_left().scale(&q(-2))
        } else {
            zero.clone()
        };
        chi_eq(format!("ad F({},{}) B_{k}", c - 1, c + 1), &eng.ad_chi(&p, &b[k], true), &rhs, out);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub basis: String,
    pub deriv: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub delta: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub family: String,
    pub variant: String,
    pub algebra: String,
    pub n: usize,
    pub k: String,
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

pub fn poly_to_json(basis: &Basis, p: &DiffPoly) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(m, c)| TermJson {
            coeff: render(c),
            monomial: m
                .iter()
                .map(|s| FactorJson {
                    basis: basis.symbol_name(s.id as usize),
                    deriv: s.deriv,
                })
                .collect(),
        })
        .collect()
}

pub fn poly_from_json(basis: &Basis, terms: &[TermJson]) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for t in terms {
        let c = crate::rational::parse(&t.coeff)
            .ok_or_else(|| Error::Parse(format!("coefficient `{}`", t.coeff)))?;
        let syms = t
            .monomial
            .iter()
            .map(|f| Ok(GenSymbol::of(basis, basis.lookup(&f.basis)?, f.deriv)))
            .collect::<Result<Vec<_>>>()?;
        out = out.add(&DiffPoly::from_raw(&syms, c));
    }
    Ok(out)
}

pub fn generator_to_json(basis: &Basis, g: &Generator) -> GeneratorJson {
    GeneratorJson {
        label: g.label.clone(),
        delta: render_half(g.delta2 as i64),
        terms: poly_to_json(basis, &g.poly),
    }
}

pub fn generator_from_json(basis: &Basis, g: &GeneratorJson) -> Result<Generator> {
    let bad = || Error::Parse(format!("generator label `{}`", g.label));
    let (tilde, digits) = match g.label.strip_prefix("wt") {
        Some(rest) => (true, rest),
        None => (false, g.label.strip_prefix('w').ok_or_else(bad)?),
    };
    let t: usize = digits.parse().map_err(|_| bad())?;
    let gen = Generator::new(t, tilde, poly_from_json(basis, &g.terms)?);
    if render_half(gen.delta2 as i64) != g.delta {
        return Err(Error::Parse(format!("delta `{}` does not match label {}", g.delta, g.label)));
    }
    Ok(gen)
}

/// The document for the given generators (all, or the minimal set).
pub fn to_document(basis: &Basis, set: &GeneratorSet, all: bool, verification: Option<Verification>) -> Document {
    let spec = basis.spec();
    let gens: Vec<&Generator> = if all {
        set.generators.iter().collect()
    } else {
        set.minimal_generators()
    };
    Document {
        family: spec.family().kind().to_string(),
        variant: spec.family().variant().to_string(),
        algebra: spec.name(),
        n: spec.n(),
        k: render(&set.level),
        generators: gens.into_iter().map(|g| generator_to_json(basis, g)).collect(),
        verification,
    }
}

/// Parses the generators of a document against the basis of its algebra.
pub fn from_document(doc: &Document) -> Result<(Basis, Q, Vec<Generator>)> {
    let fam = Family::from_parts(&doc.family, &doc.variant)
        .ok_or_else(|| Error::Parse(format!("family {} / {}", doc.family, doc.variant)))?;
    let basis = Basis::new(&AlgebraSpec::new(fam, doc.n)?)?;
    let k = crate::rational::parse(&doc.k).ok_or_else(|| Error::Parse(format!("level `{}`", doc.k)))?;
    let gens = doc
        .generators
        .iter()
        .map(|g| generator_from_json(&basis, g))
        .collect::<Result<Vec<_>>>()?;
    Ok((basis, k, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(f: Family, n: usize) -> Basis {
        Basis::new(&AlgebraSpec::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn gl21_first_generator() {
        let b = basis(Family::GlUp, 1);
        let set = generators(&b, &Q::one(), -7).unwrap();
        assert_eq!(set.generators.len(), 3);
        let eng = Affine::new(&b);
        let id = |i, j| b.id_of(i, j).unwrap();
        let w1 = eng.gen(id(1, 1)).add(&eng.gen(id(2, 2))).add(&eng.gen(id(3, 3)));
        assert_eq!(set.generators[0].poly, w1);
        assert!(pi_sl(&b, &w1).is_zero());
        let m = gl_matrix(&b, &Q::one()).unwrap();
        assert_eq!(m[0][0], DOp::d().add(&DOp::coeff_op(eng.gen(id(1, 1)))));
        assert_eq!(m[1][0], DOp::scalar(q(-1)));
        assert_eq!(m[0][2], DOp::coeff_op(ebar_dual(&b, 3, 1).unwrap()));
    }

    #[test]
    fn gl21_membership() {
        let b = basis(Family::GlUp, 1);
        let set = generators(&b, &Q::one(), -7).unwrap();
        let gens: Vec<&Generator> = set.generators.iter().collect();
        assert!(verify_membership(&b, &Q::one(), &gens).is_empty());
    }

    #[test]
    fn osp32_membership_and_linear_parts() {
        let b = basis(Family::OspOddUp, 1);
        let set = generators(&b, &Q::one(), -9).unwrap();
        let gens: Vec<&Generator> = set.generators.iter().collect();
        assert!(verify_membership(&b, &Q::one(), &gens).is_empty());
        let checks = verify_free_generation(&b, &set).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn osp22_blocks_and_generators() {
        let b = basis(Family::OspEven, 1);
        let checks = identity_checks(&b, &Q::one(), -8).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        let set = generators(&b, &Q::one(), -8).unwrap();
        let gens = set.minimal_generators();
        assert_eq!(gens.iter().map(|g| g.label.as_str()).collect::<Vec<_>>(), ["w3", "wt2"]);
        assert!(verify_membership(&b, &Q::one(), &gens).is_empty());
    }

    #[test]
    fn sl_projection_examples() {
        let b = basis(Family::SlUp, 1);
        let eng = Affine::new(&b);
        let e21 = eng.gen(b.id_of(2, 1).unwrap());
        assert_eq!(pi_sl(&b, &e21), e21);
        let e11 = eng.gen(b.id_of(1, 1).unwrap());
        let once = pi_sl(&b, &e11);
        assert_eq!(pi_sl(&b, &once), once);
    }

    #[test]
    fn document_round_trip() {
        let b = basis(Family::OspEven, 1);
        let set = generators(&b, &Q::one(), -8).unwrap();
        let doc = to_document(&b, &set, true, None);
        let text = serde_json::to_string(&doc).unwrap();
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let (_, k, gens) = from_document(&back).unwrap();
        assert_eq!(k, Q::one());
        assert_eq!(gens, set.generators);
    }
}
