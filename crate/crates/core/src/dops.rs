//! Pseudodifferential operators Σ aᵢ Dⁱ over the free differential algebra, their χ-twisted
//! versions, the adjoint `*`, and row determinants of matrices with operator entries.
//!
//! Operators are kept coefficients-left. Anything involving `D⁻¹` is an infinite series, so each
//! operator carries a floor: coefficients of `Dⁱ` with `i ≥ floor` are exact, lower ones are not
//! stored. `None` means the operator is exact (finite support).

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{sign, Q};
use crate::superpoly::{monomial_parity, DiffPoly};

fn max_floor(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Splits a polynomial into its homogeneous parity components.
fn by_parity(a: &DiffPoly) -> [(i64, DiffPoly); 2] {
    let mut parts = [DiffPoly::zero(), DiffPoly::zero()];
    for (m, c) in a.terms() {
        parts[monomial_parity(m) as usize].add_term(m.clone(), c.clone());
    }
    let [even, odd] = parts;
    [(0, even), (1, odd)]
}

/// Σ aᵢ Dⁱ with an exactness floor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DOp {
    terms: BTreeMap<i32, DiffPoly>,
    floor: Option<i32>,
}

impl DOp {
    pub fn zero() -> DOp {
        DOp::default()
    }

    pub fn monomial(a: DiffPoly, i: i32) -> DOp {
        let mut op = DOp::zero();
        op.add_at(i, &a, &Q::one());
        op
    }

    pub fn one() -> DOp {
        DOp::monomial(DiffPoly::one(), 0)
    }

    pub fn scalar(c: Q) -> DOp {
        DOp::monomial(DiffPoly::constant(c), 0)
    }

    pub fn coeff_op(a: DiffPoly) -> DOp {
        DOp::monomial(a, 0)
    }

    /// D
    pub fn d() -> DOp {
        DOp::monomial(DiffPoly::one(), 1)
    }

    /// D⁻¹ as the single exact term.
    pub fn d_inv() -> DOp {
        DOp::monomial(DiffPoly::one(), -1)
    }

    pub fn terms(&self) -> &BTreeMap<i32, DiffPoly> {
        &self.terms
    }

    pub fn floor(&self) -> Option<i32> {
        self.floor
    }

    pub fn with_floor(mut self, floor: Option<i32>) -> DOp {
        if let Some(f) = floor {
            self.truncate(f);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn top(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Whether this is a differential operator with exact, nonnegative support.
    pub fn is_differential(&self) -> bool {
        self.floor.is_none() && self.terms.keys().all(|&i| i >= 0)
    }

    /// The coefficient of Dⁱ, failing below the floor.
    pub fn coeff(&self, i: i32) -> Result<DiffPoly> {
        if let Some(f) = self.floor {
            if i < f {
                return Err(Error::FloorExhausted { degree: i, floor: f });
            }
        }
        Ok(self.terms.get(&i).cloned().unwrap_or_default())
    }

    /// The constant scalar when the operator is `c·D⁰` with a rational `c`.
    pub fn as_scalar(&self) -> Option<Q> {
        if self.floor.is_some() {
            return None;
        }
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (i, a) = self.terms.iter().next()?;
                (*i == 0 && a.len() == 1 && a.degree() == 0).then(|| a.constant_term())
            }
            _ => None,
        }
    }

    pub fn add_at(&mut self, i: i32, a: &DiffPoly, c: &Q) {
        if a.is_zero() || c.is_zero() {
            return;
        }
        if matches!(self.floor, Some(f) if i < f) {
            return;
        }
        let e = self.terms.entry(i).or_default();
        e.add_assign_scaled(a, c);
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// Drops coefficients below `f` and raises the floor to at least `f`.
    pub fn truncate(&mut self, f: i32) {
        self.floor = max_floor(self.floor, Some(f));
        self.terms = self.terms.split_off(&f);
    }

    pub fn add(&self, other: &DOp) -> DOp {
        let mut out = DOp {
            terms: self.terms.clone(),
            floor: max_floor(self.floor, other.floor),
        };
        if let Some(f) = out.floor {
            out.terms = out.terms.split_off(&f);
        }
        for (i, a) in &other.terms {
            out.add_at(*i, a, &Q::one());
        }
        out
    }

    pub fn sub(&self, other: &DOp) -> DOp {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> DOp {
        let mut out = DOp {
            terms: BTreeMap::new(),
            floor: self.floor,
        };
        for (i, a) in &self.terms {
            out.add_at(*i, a, c);
        }
        out
    }

    /// s · X
    pub fn left_mul(&self, s: &DiffPoly) -> DOp {
        let mut out = DOp {
            terms: BTreeMap::new(),
            floor: self.floor,
        };
        for (i, a) in &self.terms {
            out.add_at(*i, &s.mul(a), &Q::one());
        }
        out
    }

    /// X · s, i.e. the composition X ∘ s for a coefficient s.
    pub fn right_mul_coeff(&self, s: &DiffPoly, depth: i32) -> DOp {
        self.compose(&DOp::coeff_op(s.clone()), depth)
    }

    /// D ∘ X, using D ∘ a = a' + (-1)^{p(a)} a D.
    pub fn d_left(&self) -> DOp {
        let mut out = DOp {
            terms: BTreeMap::new(),
            floor: self.floor.map(|f| f + 1),
        };
        for (&i, a) in &self.terms {
            out.add_at(i, &a.apply_d(), &Q::one());
            for (p, part) in by_parity(a) {
                out.add_at(i + 1, &part, &sign(p));
            }
        }
        out
    }

    /// D⁻¹ ∘ X, expanding
    /// D⁻¹ ∘ a = Σ_m (-1)^m ((-1)^{p(a)} a^{(2m)} D^{-1-2m} + a^{(2m+1)} D^{-2-2m}),
    /// with every coefficient below `depth` discarded.
    pub fn dinv_left(&self, depth: i32) -> DOp {
        let mut out = DOp {
            terms: BTreeMap::new(),
            floor: None,
        };
        let mut dropped = false;
        for (&i, a) in &self.terms {
            for (p, part) in by_parity(a) {
                if part.is_zero() {
                    continue;
                }
                let mut der = part.clone();
                let mut k = 0i32;
                loop {
                    let deg = i - 1 - k;
                    if der.is_zero() {
                        break;
                    }
                    if deg < depth {
                        dropped = true;
                        break;
                    }
                    // k = 2m: (-1)^m (-1)^p ; k = 2m+1: (-1)^m
                    let m = (k / 2) as i64;
                    let s = if k % 2 == 0 { sign(m + p) } else { sign(m) };
                    out.add_at(deg, &der, &s);
                    der = der.apply_d();
                    k += 1;
                }
            }
        }
        let mut floor = self.floor.map(|f| f - 1);
        if dropped {
            floor = max_floor(floor, Some(depth));
        }
        out.floor = floor;
        if let Some(f) = floor {
            out.terms = out.terms.split_off(&f);
        }
        out
    }

    /// Dⁱ ∘ X for any integer i.
    pub fn d_pow_left(&self, i: i32, depth: i32) -> DOp {
        let mut x = self.clone();
        if i >= 0 {
            for _ in 0..i {
                x = x.d_left();
            }
        } else {
            for _ in 0..(-i) {
                x = x.dinv_left(depth);
            }
        }
        x
    }

    /// self ∘ other. Series coming from D⁻¹ are cut at `depth`; the floor of the result
    /// records which coefficients are exact.
    pub fn compose(&self, other: &DOp, depth: i32) -> DOp {
        let mut floor = None;
        if let (Some(fa), Some(tb)) = (self.floor, other.top()) {
            floor = Some(fa + tb);
        }
        if let (Some(fa), None) = (self.floor, other.top()) {
            // the other operator is zero
            let _ = fa;
        }
        let mut out = DOp {
            terms: BTreeMap::new(),
            floor: None,
        };
        let mut parts = Vec::new();
        for (&i, a) in &self.terms {
            let x = other.d_pow_left(i, depth).left_mul(a);
            floor = max_floor(floor, x.floor);
            parts.push(x);
        }
        out.floor = floor;
        for x in parts {
            for (j, b) in &x.terms {
                out.add_at(*j, b, &Q::one());
            }
        }
        out
    }

    /// The adjoint (a Dᵐ)* = (-1)^{m p(a) + ⌊(m+1)/2⌋} Dᵐ ∘ a, for differential operators.
    pub fn adjoint_star(&self) -> Result<DOp> {
        if !self.is_differential() {
            return Err(Error::NegativePower);
        }
        let mut out = DOp::zero();
        for (&m, a) in &self.terms {
            for (p, part) in by_parity(a) {
                if part.is_zero() {
                    continue;
                }
                let s = sign(m as i64 * p + ((m + 1) / 2) as i64);
                let x = DOp::coeff_op(part).d_pow_left(m, 0);
                out = out.add(&x.scale(&s));
            }
        }
        Ok(out)
    }

    /// The coefficients bᵢ of the right-normal form X = Σ Dⁱ ∘ bᵢ of a differential operator.
    pub fn right_coefficients(&self) -> Result<Vec<DiffPoly>> {
        if !self.is_differential() {
            return Err(Error::NegativePower);
        }
        let Some(top) = self.top() else {
            return Ok(Vec::new());
        };
        let mut out = vec![DiffPoly::zero(); top as usize + 1];
        let mut rest = self.clone();
        for i in (0..=top).rev() {
            // Dⁱ ∘ b = (-1)^{i p(b)} b Dⁱ + lower order
            let mut b = DiffPoly::zero();
            for (p, part) in by_parity(&rest.coeff(i)?) {
                b.add_assign_scaled(&part, &sign(i as i64 * p));
            }
            rest = rest.sub(&DOp::coeff_op(b.clone()).d_pow_left(i, 0));
            out[i as usize] = b;
        }
        if !rest.is_zero() {
            return Err(Error::Consistency("right normal form did not terminate".into()));
        }
        Ok(out)
    }

    /// Parity of the operator as an element of the superalgebra (D odd), when homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut found = None;
        for (&i, a) in &self.terms {
            let pa = a.parity()?;
            let p = ((pa as i32 + i).rem_euclid(2)) as u8;
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Twice the Δ-weight, with Δ(D) = 1/2.
    pub fn delta_weight2(&self) -> Result<Option<i32>> {
        let mut w = None;
        for (&i, a) in &self.terms {
            if let Some(x) = a.delta_weight2()? {
                let v = x + i;
                match w {
                    None => w = Some(v),
                    Some(u) if u != v => {
                        return Err(Error::Inhomogeneous(format!(
                            "operator terms of weights {} and {}",
                            crate::rational::render_half(u as i64),
                            crate::rational::render_half(v as i64)
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(w)
    }

    /// Difference restricted to degrees where both operands are exact.
    pub fn diff_exact(&self, other: &DOp) -> DOp {
        let mut d = self.sub(other);
        if let Some(f) = max_floor(self.floor, other.floor) {
            d.truncate(f);
        }
        d
    }

    pub fn render(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, a) in self.terms.iter().rev() {
            let c = a.render_with(name);
            parts.push(match i {
                0 => format!("({c})"),
                1 => format!("({c})*D"),
                _ => format!("({c})*D^{i}"),
            });
        }
        let mut s = parts.join(" + ");
        if let Some(f) = self.floor {
            s.push_str(&format!(" + O(D^{})", f - 1));
        }
        s
    }
}

/// Σ χᵏ r Dⁱ, χ leftmost, with a floor on the D-degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiDOp {
    terms: BTreeMap<(u32, i32), DiffPoly>,
    floor: Option<i32>,
}

impl ChiDOp {
    pub fn zero(floor: Option<i32>) -> ChiDOp {
        ChiDOp {
            terms: BTreeMap::new(),
            floor,
        }
    }

    pub fn from_dop(a: &DOp) -> ChiDOp {
        let mut out = ChiDOp::zero(a.floor());
        for (&i, r) in a.terms() {
            out.add_at(0, i, r, &Q::one());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u32, i32), DiffPoly> {
        &self.terms
    }

    pub fn floor(&self) -> Option<i32> {
        self.floor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_at(&mut self, k: u32, i: i32, r: &DiffPoly, c: &Q) {
        if r.is_zero() || c.is_zero() {
            return;
        }
        if matches!(self.floor, Some(f) if i < f) {
            return;
        }
        let e = self.terms.entry((k, i)).or_default();
        e.add_assign_scaled(r, c);
        if e.is_zero() {
            self.terms.remove(&(k, i));
        }
    }

    pub fn truncate(&mut self, f: i32) {
        self.floor = max_floor(self.floor, Some(f));
        self.terms.retain(|&(_, i), _| i >= f);
    }

    pub fn add(&self, other: &ChiDOp) -> ChiDOp {
        let mut out = self.clone();
        if let Some(f) = other.floor {
            out.truncate(f);
        }
        for (&(k, i), r) in &other.terms {
            out.add_at(k, i, r, &Q::one());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> ChiDOp {
        let mut out = ChiDOp::zero(self.floor);
        for (&(k, i), r) in &self.terms {
            out.add_at(k, i, r, c);
        }
        out
    }

    pub fn sub(&self, other: &ChiDOp) -> ChiDOp {
        self.add(&other.scale(&-Q::one()))
    }

    fn top_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, i)| i).max()
    }

    /// χ · X
    pub fn chi_left(&self) -> ChiDOp {
        let mut out = ChiDOp::zero(self.floor);
        for (&(k, i), r) in &self.terms {
            out.add_at(k + 1, i, r, &Q::one());
        }
        out
    }

    /// s · X = Σ (-1)^{k p(s)} χᵏ (s r) Dⁱ
    pub fn left_mul(&self, s: &DiffPoly) -> ChiDOp {
        let mut out = ChiDOp::zero(self.floor);
        for (p, part) in by_parity(s) {
            if part.is_zero() {
                continue;
            }
            for (&(k, i), r) in &self.terms {
                out.add_at(k, i, &part.mul(r), &sign(k as i64 * p));
            }
        }
        out
    }

    /// Applies an operator on the plain part of each χᵏ-slice, given how D passes χᵏ.
    fn slices(&self) -> BTreeMap<u32, DOp> {
        let mut out: BTreeMap<u32, DOp> = BTreeMap::new();
        for (&(k, i), r) in &self.terms {
            out.entry(k)
                .or_insert_with(|| DOp::zero().with_floor(self.floor))
                .add_at(i, r, &Q::one());
        }
        out
    }

    fn from_slices(slices: impl IntoIterator<Item = (u32, DOp, Q)>, floor: Option<i32>) -> ChiDOp {
        let mut out = ChiDOp::zero(floor);
        let mut parts = Vec::new();
        for (k, op, c) in slices {
            out.floor = max_floor(out.floor, op.floor());
            parts.push((k, op, c));
        }
        for (k, op, c) in parts {
            for (&i, r) in op.terms() {
                out.add_at(k, i, r, &c);
            }
        }
        out
    }

    /// D · X with D χᵏ = (-1)ᵏ χᵏ D - 2[k odd] χ^{k+1}.
    pub fn d_left(&self) -> ChiDOp {
        let mut pieces = Vec::new();
        for (k, op) in self.slices() {
            pieces.push((k, op.d_left(), sign(k as i64)));
            if k % 2 == 1 {
                pieces.push((k + 1, op, Q::from_integer((-2).into())));
            }
        }
        ChiDOp::from_slices(pieces, self.floor.map(|f| f + 1))
    }

    /// D⁻¹ · X with D⁻¹ χᵏ = χᵏ D⁻¹ (k even) and -χᵏ D⁻¹ - 2χ^{k+1} D⁻² (k odd).
    pub fn dinv_left(&self, depth: i32) -> ChiDOp {
        let mut pieces = Vec::new();
        for (k, op) in self.slices() {
            let once = op.dinv_left(depth);
            if k % 2 == 0 {
                pieces.push((k, once, Q::one()));
            } else {
                let twice = once.dinv_left(depth);
                pieces.push((k, once, -Q::one()));
                pieces.push((k + 1, twice, Q::from_integer((-2).into())));
            }
        }
        ChiDOp::from_slices(pieces, None)
    }

    /// (D + χ) · X
    pub fn d_plus_chi_left(&self) -> ChiDOp {
        self.d_left().add(&self.chi_left())
    }

    /// (χ + D)⁻¹ · X = Σ_{n≥0} χⁿ D^{-n-1} X, cut at `depth`.
    pub fn chi_d_inv_left(&self, depth: i32) -> ChiDOp {
        let Some(top) = self.top_degree() else {
            return ChiDOp::zero(max_floor(self.floor.map(|f| f - 1), Some(depth)));
        };
        let mut out = ChiDOp::zero(None);
        let mut cur = self.dinv_left(depth);
        let mut n = 0u32;
        let mut floor = cur.floor;
        while top - 1 - n as i32 >= depth {
            let mut term = cur.clone();
            for _ in 0..n {
                term = term.chi_left();
            }
            floor = max_floor(floor, term.floor);
            for (&(k, i), r) in &term.terms {
                out.add_at(k, i, r, &Q::one());
            }
            cur = cur.dinv_left(depth);
            n += 1;
        }
        out.floor = max_floor(floor, Some(depth));
        out.terms.retain(|&(_, i), _| i >= depth);
        out
    }

    /// Dⁱ · X for any integer i.
    pub fn d_pow_left(&self, i: i32, depth: i32) -> ChiDOp {
        let mut x = self.clone();
        if i >= 0 {
            for _ in 0..i {
                x = x.d_left();
            }
        } else {
            for _ in 0..(-i) {
                x = x.dinv_left(depth);
            }
        }
        x
    }

    /// self ∘ other
    pub fn compose(&self, other: &ChiDOp, depth: i32) -> ChiDOp {
        let mut floor = None;
        if let (Some(fa), Some(tb)) = (self.floor, other.top_degree()) {
            floor = Some(fa + tb);
        }
        let mut parts = Vec::new();
        for (&(k, i), r) in &self.terms {
            let mut x = other.d_pow_left(i, depth).left_mul(r);
            for _ in 0..k {
                x = x.chi_left();
            }
            floor = max_floor(floor, x.floor);
            parts.push(x);
        }
        let mut out = ChiDOp::zero(floor);
        for x in parts {
            for (&(k, i), r) in &x.terms {
                out.add_at(k, i, r, &Q::one());
            }
        }
        out
    }

    pub fn compose_dop(&self, other: &DOp, depth: i32) -> ChiDOp {
        self.compose(&ChiDOp::from_dop(other), depth)
    }

    pub fn diff_exact(&self, other: &ChiDOp) -> ChiDOp {
        let mut d = self.sub(other);
        if let Some(f) = max_floor(self.floor, other.floor) {
            d.truncate(f);
        }
        d
    }

    pub fn render(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((k, i), r)| format!("chi^{k}*({})*D^{i}", r.render_with(name)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A(D + χ) = Σ aᵢ (D + χ)ⁱ. Negative powers use (χ + D)⁻¹ and need a depth.
pub fn substitute_chi(a: &DOp, depth: Option<i32>) -> Result<ChiDOp> {
    let lowest = a.terms().keys().next().copied().unwrap_or(0);
    if (lowest < 0 || a.floor().is_some()) && depth.is_none() {
        return Err(Error::NegativePower);
    }
    let depth_v = depth.unwrap_or(i32::MIN / 4);
    let mut out = ChiDOp::zero(None);
    let mut floor = a.floor();
    let unit = ChiDOp::from_dop(&DOp::one());
    let mut pos = unit.clone();
    let mut posi = 0;
    let mut neg = unit;
    let mut negi = 0;
    for (&i, r) in a.terms() {
        let power = if i >= 0 {
            while posi < i {
                pos = pos.d_plus_chi_left();
                posi += 1;
            }
            pos.clone()
        } else {
            let mut x = ChiDOp::from_dop(&DOp::one());
            for _ in 0..(-i) {
                x = x.chi_d_inv_left(depth_v);
            }
            let _ = (&mut neg, &mut negi);
            x
        };
        let term = power.left_mul(r);
        floor = max_floor(floor, term.floor());
        for (&(k, j), c) in term.terms() {
            out.add_at(k, j, c, &Q::one());
        }
    }
    if let Some(f) = floor {
        out.truncate(f);
    }
    Ok(out)
}

pub type DMatrix = Vec<Vec<DOp>>;

/// Checks that below the subdiagonal all entries vanish and the subdiagonal is scalar.
fn hessenberg_subdiagonal(m: &DMatrix) -> Result<Vec<Q>> {
    let n = m.len();
    let mut sub = Vec::new();
    for i in 0..n {
        if m[i].len() != n {
            return Err(Error::Consistency("matrix is not square".into()));
        }
        for j in 0..i.saturating_sub(1) {
            if !m[i][j].is_zero() {
                return Err(Error::Consistency(format!(
                    "nonzero entry below the subdiagonal at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
        if i > 0 {
            let c = m[i][i - 1].as_scalar().ok_or_else(|| {
                Error::Consistency(format!("non-scalar subdiagonal entry at ({}, {})", i + 1, i))
            })?;
            sub.push(c);
        }
    }
    Ok(sub)
}

/// Row determinant of a Hessenberg matrix with scalar subdiagonal `h_{r+1,r}`:
/// the sum over block decompositions [s₁..e₁][s₂..e₂]… of the left-to-right products
/// h_{s₁e₁} h_{s₂e₂} ⋯, each weighted by Π_{s ≤ r < e} (-h_{r+1,r}).
///
/// With subdiagonal -1 this is the ordered path sum Σ 𝒜_{i₀+1,i₁} 𝒜_{i₁+1,i₂} ⋯.
pub fn rdet_hessenberg(m: &DMatrix, depth: i32) -> Result<DOp> {
    let n = m.len();
    let sub = hessenberg_subdiagonal(m)?;
    // t[k] = rdet of the trailing block starting at row k
    let mut t: Vec<DOp> = vec![DOp::zero(); n + 1];
    t[n] = DOp::one();
    for k in (0..n).rev() {
        let mut acc = DOp::zero();
        let mut weight = Q::one();
        for j in k..n {
            if j > k {
                weight *= -sub[j - 1].clone();
                if weight.is_zero() {
                    break;
                }
            }
            if m[k][j].is_zero() {
                continue;
            }
            let term = m[k][j].compose(&t[j + 1], depth).scale(&weight);
            acc = acc.add(&term);
        }
        t[k] = acc;
    }
    Ok(t.swap_remove(0))
}

/// The same row determinant by explicit enumeration of all 2^{N-1} block decompositions.
pub fn rdet_paths(m: &DMatrix, depth: i32) -> Result<DOp> {
    let n = m.len();
    let sub = hessenberg_subdiagonal(m)?;
    if n == 0 {
        return Ok(DOp::one());
    }
    let mut total = DOp::zero();
    for mask in 0u64..(1u64 << (n - 1)) {
        // bit r set: a block ends after row r (0-based)
        let mut product = DOp::one();
        let mut weight = Q::one();
        let mut start = 0;
        for r in 0..n {
            let ends = r == n - 1 || mask & (1 << r) != 0;
            if ends {
                product = product.compose(&m[start][r], depth);
                start = r + 1;
            } else {
                weight *= -sub[r].clone();
            }
        }
        total = total.add(&product.scale(&weight));
    }
    Ok(total)
}

/// Signed path sum Σ (-1)^{n + Σ_{j∈J} δ_j} 𝒜_{i₀+1,i₁} 𝒜_{i₁+1,i₂} ⋯ over the entries on and
/// above the diagonal, where J = {i₁, …, i_{N+1}} collects the block ends (1-based).
pub fn rdet_signed_paths(m: &DMatrix, n_rank: usize, delta: &[u8], depth: i32) -> DOp {
    let n = m.len();
    let mut total = DOp::zero();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut product = DOp::one();
        let mut e = n_rank as i64;
        let mut start = 0;
        for r in 0..n {
            if r == n - 1 || mask & (1 << r) != 0 {
                product = product.compose(&m[start][r], depth);
                e += delta[r] as i64;
                start = r + 1;
            }
        }
        total = total.add(&product.scale(&sign(e)));
    }
    total
}

/// Row determinants of the upper-left k×k blocks, k = 0..=N.
pub fn leading_minors(m: &DMatrix, depth: i32) -> Result<Vec<DOp>> {
    (0..=m.len())
        .map(|k| {
            let block: DMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            rdet_hessenberg(&block, depth)
        })
        .collect()
}

/// Row determinants of the lower-right k×k blocks, k = 0..=N.
pub fn trailing_minors(m: &DMatrix, depth: i32) -> Result<Vec<DOp>> {
    let n = m.len();
    (0..=n)
        .map(|k| {
            let block: DMatrix = m[n - k..].iter().map(|row| row[n - k..].to_vec()).collect();
            rdet_hessenberg(&block, depth)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::superpoly::GenSymbol;

    fn sym(id: u32, lie_parity: u8) -> DiffPoly {
        DiffPoly::symbol(GenSymbol {
            id,
            deriv: 0,
            lie_parity,
            deg2: 0,
        })
    }

    #[test]
    fn d_on_coefficient() {
        for p in [0u8, 1] {
            let a = sym(1, p);
            let pa = a.parity().unwrap() as i64;
            let lhs = DOp::d().compose(&DOp::coeff_op(a.clone()), -10);
            let mut rhs = DOp::coeff_op(a.apply_d());
            rhs = rhs.add(&DOp::monomial(a.clone(), 1).scale(&sign(pa)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_inverse_first_terms() {
        let a = sym(1, 1);
        let pa = a.parity().unwrap() as i64;
        let x = DOp::d_inv().compose(&DOp::coeff_op(a.clone()), -3);
        assert_eq!(x.coeff(-1).unwrap(), a.scale(&sign(pa)));
        assert_eq!(x.coeff(-2).unwrap(), a.apply_d());
        assert_eq!(x.coeff(-3).unwrap(), a.apply_d_n(2).scale(&-sign(pa)));
        assert!(matches!(x.coeff(-4), Err(Error::FloorExhausted { .. })));
    }

    #[test]
    fn d_times_d_inverse() {
        let x = DOp::d().compose(&DOp::d_inv(), -5);
        assert_eq!(x, DOp::one());
        let a = sym(2, 0).add(&sym(3, 1).mul(&sym(4, 1)));
        let y = DOp::d().compose(&DOp::d_inv().compose(&DOp::coeff_op(a.clone()), -8), -8);
        assert!(y.diff_exact(&DOp::coeff_op(a)).is_zero());
        assert_eq!(y.floor(), Some(-7));
    }

    #[test]
    fn substitute_examples() {
        // (D+χ)² = D² - χ²
        let sq = substitute_chi(&DOp::monomial(DiffPoly::one(), 2), None).unwrap();
        let mut expected = ChiDOp::zero(None);
        expected.add_at(0, 2, &DiffPoly::one(), &q(1));
        expected.add_at(2, 0, &DiffPoly::one(), &q(-1));
        assert_eq!(sq, expected);
        let a = sym(1, 1);
        assert_eq!(
            substitute_chi(&DOp::coeff_op(a.clone()), None).unwrap(),
            ChiDOp::from_dop(&DOp::coeff_op(a.clone()))
        );
        // a(D+χ) = aD + aχ = aD + (-1)^{p(a)} χ a
        let pa = a.parity().unwrap() as i64;
        let s = substitute_chi(&DOp::monomial(a.clone(), 1), None).unwrap();
        let mut expected = ChiDOp::zero(None);
        expected.add_at(0, 1, &a, &q(1));
        expected.add_at(1, 0, &a, &sign(pa));
        assert_eq!(s, expected);
        assert!(matches!(
            substitute_chi(&DOp::d_inv(), None),
            Err(Error::NegativePower)
        ));
    }

    #[test]
    fn adjoint_examples() {
        let a = sym(1, 0);
        let pa = a.parity().unwrap() as i64;
        let x = DOp::monomial(a.clone(), 1).adjoint_star().unwrap();
        let expected = DOp::d()
            .compose(&DOp::coeff_op(a.clone()), 0)
            .scale(&sign(pa + 1));
        assert_eq!(x, expected);
        let op = DOp::monomial(a.clone(), 3).add(&DOp::monomial(sym(2, 1).mul(&a), 2));
        assert_eq!(op.adjoint_star().unwrap().adjoint_star().unwrap(), op);
    }

    #[test]
    fn right_coefficients_rebuild() {
        let a = sym(1, 0);
        let b = sym(2, 1);
        let op = DOp::monomial(a.clone(), 3)
            .add(&DOp::monomial(b.mul(&a), 2))
            .add(&DOp::monomial(b.clone(), 0));
        let bs = op.right_coefficients().unwrap();
        let mut back = DOp::zero();
        for (i, c) in bs.iter().enumerate() {
            back = back.add(&DOp::coeff_op(c.clone()).d_pow_left(i as i32, 0));
        }
        assert_eq!(back, op);
        // D ∘ a = a' + (-1)^{p(a)} a D, so the right coefficient of D is (-1)^{p(a)} a
        let pa = a.parity().unwrap() as i64;
        assert_eq!(DOp::monomial(a.clone(), 1).right_coefficients().unwrap()[1], a.scale(&sign(pa)));
    }

    #[test]
    fn hessenberg_matches_paths() {
        let n = 4;
        let mut m: DMatrix = vec![vec![DOp::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut e = DOp::coeff_op(sym((i * n + j) as u32, ((i + j) % 2) as u8));
                if i == j {
                    e = e.add(&DOp::d());
                }
                m[i][j] = e;
            }
            if i > 0 {
                m[i][i - 1] = DOp::scalar(if i % 2 == 0 { q(-1) } else { q(1) });
            }
        }
        let a = rdet_hessenberg(&m, 0).unwrap();
        let b = rdet_paths(&m, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.top(), Some(4));
        assert_eq!(a.coeff(4).unwrap(), DiffPoly::one());
    }
}
