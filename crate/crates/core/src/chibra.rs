//! The χ-bracket of the SUSY affine PVA on 𝒱(ḡ), its extension to arbitrary differential
//! polynomials, axiom checkers, the projection π̃ and the χ-adjoint action on operators.
//!
//! χ and γ are odd indeterminates kept to the left of every coefficient. They satisfy
//! `Dχ + χD = -2χ²` when acting on coefficients, and `χγ = -γχ`.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::dops::{ChiDOp, DOp};
use crate::liesuper::Basis;
use crate::rational::{sign, Q};
use crate::superpoly::{monomial_parity, DiffPoly, GenSymbol};

/// Σ χⁿ rₙ with χ leftmost.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiPoly {
    terms: BTreeMap<u32, DiffPoly>,
}

impl ChiPoly {
    pub fn zero() -> ChiPoly {
        ChiPoly::default()
    }

    pub fn monomial(n: u32, r: DiffPoly) -> ChiPoly {
        let mut c = ChiPoly::zero();
        c.add_at(n, &r, &Q::one());
        c
    }

    pub fn terms(&self) -> &BTreeMap<u32, DiffPoly> {
        &self.terms
    }

    pub fn coeff(&self, n: u32) -> DiffPoly {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_at(&mut self, n: u32, r: &DiffPoly, c: &Q) {
        if r.is_zero() || c.is_zero() {
            return;
        }
        let e = self.terms.entry(n).or_default();
        e.add_assign_scaled(r, c);
        if e.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &ChiPoly, c: &Q) {
        for (n, r) in &other.terms {
            self.add_at(*n, r, c);
        }
    }

    pub fn add(&self, other: &ChiPoly) -> ChiPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &ChiPoly) -> ChiPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> ChiPoly {
        let mut out = ChiPoly::zero();
        out.add_assign_scaled(self, c);
        out
    }

    /// χ · X
    pub fn chi_left(&self) -> ChiPoly {
        ChiPoly {
            terms: self.terms.iter().map(|(n, r)| (n + 1, r.clone())).collect(),
        }
    }

    /// D · X, using D χⁿ r = (-1)ⁿ χⁿ r' - 2[n odd] χ^{n+1} r.
    pub fn d_left(&self) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (&n, r) in &self.terms {
            out.add_at(n, &r.apply_d(), &sign(n as i64));
            if n % 2 == 1 {
                out.add_at(n + 1, r, &Q::from_integer((-2).into()));
            }
        }
        out
    }

    /// (D + χ) · X
    pub fn d_plus_chi(&self) -> ChiPoly {
        self.d_left().add(&self.chi_left())
    }

    /// (-χ - D) · X
    pub fn minus_chi_minus_d(&self) -> ChiPoly {
        self.d_plus_chi().scale(&-Q::one())
    }

    /// s · X = Σ (-1)^{n p(s)} χⁿ s rₙ, monomial by monomial in s.
    pub fn left_mul(&self, s: &DiffPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (m, c) in s.terms() {
            let p = monomial_parity(m) as i64;
            let mono = DiffPoly::from_raw(m, c.clone());
            for (&n, r) in &self.terms {
                out.add_at(n, &mono.mul(r), &sign(n as i64 * p));
            }
        }
        out
    }

    /// X · s
    pub fn right_mul(&self, s: &DiffPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (&n, r) in &self.terms {
            out.add_at(n, &r.mul(s), &Q::one());
        }
        out
    }

    /// `{a χ+D c}→ b` for X = {a χ c}: the term of the right Leibniz rule.
    ///
    /// χ is substituted in the normal form χⁿ = χ^ε (-λ)^m, λ = -χ², by χ ↦ χ + D and
    /// λ ↦ λ + ∂, with D acting on `b` only. The odd factor χ + D stands left of the
    /// coefficient, so D passes it with a sign. Raising χ + D to the n-th power with the
    /// `Dχ + χD = -2χ²` rule would give λ + ∂ for n = 2 instead of -(λ + ∂).
    pub fn arrow(&self, b: &DiffPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (&n, r) in &self.terms {
            let (eps, m) = (n % 2, n / 2);
            // (χ² - D²)^m b
            let mut x = ChiPoly::zero();
            let mut binom = Q::one();
            for i in 0..=m {
                let c = &binom * sign((m - i) as i64);
                x.add_at(2 * i, &b.apply_d_n(2 * (m - i)), &c);
                binom = binom * Q::from_integer(((m - i) as i64).into()) / Q::from_integer(((i + 1) as i64).into());
            }
            for (p, part) in split_parity(r) {
                // χ + D sits left of the coefficient: χ passes it freely and D with (-1)^p.
                // left_mul supplies (-1)^p on odd χ-powers, so the whole odd factor is rescaled.
                let y = if eps == 1 {
                    let mut y = x.chi_left();
                    for (&k, t) in &x.terms {
                        y.add_at(k, &t.apply_d(), &Q::one());
                    }
                    y.scale(&sign(p as i64))
                } else {
                    x.clone()
                };
                out.add_assign_scaled(&y.left_mul(&part), &Q::one());
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: &dyn Fn(&DiffPoly) -> DiffPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (&n, r) in &self.terms {
            out.add_at(n, &f(r), &Q::one());
        }
        out
    }

    pub fn render(&self, basis: &Basis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(n, r)| format!("chi^{}*({})", n, r.render(basis)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Σ χᵐ γⁿ r with χ before γ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiGammaPoly {
    terms: BTreeMap<(u32, u32), DiffPoly>,
}

impl ChiGammaPoly {
    pub fn zero() -> ChiGammaPoly {
        ChiGammaPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), DiffPoly> {
        &self.terms
    }

    pub fn add_at(&mut self, m: u32, n: u32, r: &DiffPoly, c: &Q) {
        if r.is_zero() || c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, n)).or_default();
        e.add_assign_scaled(r, c);
        if e.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn add_assign_scaled(&mut self, other: &ChiGammaPoly, c: &Q) {
        for (&(m, n), r) in &other.terms {
            self.add_at(m, n, r, c);
        }
    }

    /// (χ + γ)^m as scalar coefficients on χ^i γ^j, built by repeated left multiplication.
    fn chi_plus_gamma_pow(m: u32) -> BTreeMap<(u32, u32), Q> {
        let mut cur: BTreeMap<(u32, u32), Q> = BTreeMap::from([((0, 0), Q::one())]);
        for _ in 0..m {
            let mut next: BTreeMap<(u32, u32), Q> = BTreeMap::new();
            for (&(i, j), c) in &cur {
                // χ · χ^i γ^j
                *next.entry((i + 1, j)).or_insert_with(Q::zero) += c.clone();
                // γ · χ^i γ^j = (-1)^i χ^i γ^{j+1}
                *next.entry((i, j + 1)).or_insert_with(Q::zero) += sign(i as i64) * c;
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }
}

/// The affine SUSY PVA 𝒱ᵏ(ḡ) on a fixed basis, with bracket
/// `[ā χ b̄] = (-1)^{p(a)(p(b)+1)} \overline{[a,b]} + χ k (a|b)`.
pub struct Affine<'a> {
    basis: &'a Basis,
    k: Q,
}

impl<'a> Affine<'a> {
    pub fn new(basis: &'a Basis) -> Affine<'a> {
        Affine::with_level(basis, Q::one())
    }

    pub fn with_level(basis: &'a Basis, k: Q) -> Affine<'a> {
        Affine { basis, k }
    }

    pub fn basis(&self) -> &Basis {
        self.basis
    }

    pub fn level(&self) -> &Q {
        &self.k
    }

    pub fn sym(&self, id: usize) -> GenSymbol {
        GenSymbol::of(self.basis, id, 0)
    }

    pub fn gen(&self, id: usize) -> DiffPoly {
        DiffPoly::symbol(self.sym(id))
    }

    /// [ā χ b̄] on basis generators.
    pub fn affine_bracket(&self, a: usize, b: usize) -> ChiPoly {
        let pa = self.basis.parity(a) as i64;
        let pb = self.basis.parity(b) as i64;
        let s = sign(pa * (pb + 1));
        let mut lin = DiffPoly::zero();
        for (x, c) in self.basis.bracket(a, b) {
            lin.add_term(vec![self.sym(*x)], &s * c);
        }
        let mut out = ChiPoly::monomial(0, lin);
        out.add_at(1, &DiffPoly::one(), &(&self.k * self.basis.form(a, b)));
        out
    }

    /// π̃ on one underived generator symbol.
    fn pi_symbol(&self, s: &GenSymbol) -> DiffPoly {
        let id = s.id as usize;
        if self.basis.in_n(id) {
            if s.deriv == 0 {
                DiffPoly::constant(self.basis.f_pairing(id).clone())
            } else {
                DiffPoly::zero()
            }
        } else {
            DiffPoly::symbol(*s)
        }
    }

    /// π̃: ā ↦ ā on 𝔭, n̄ ↦ (f|n) on 𝔫, extended as a differential-algebra homomorphism.
    pub fn pi_tilde_poly(&self, p: &DiffPoly) -> DiffPoly {
        if !p.symbols().any(|s| self.basis.in_n(s.id as usize)) {
            return p.clone();
        }
        p.substitute(&|s| self.pi_symbol(s))
    }

    pub fn pi_tilde(&self, x: &ChiPoly) -> ChiPoly {
        x.map_coeffs(&|r| self.pi_tilde_poly(r))
    }

    /// {ā χ Q} for a basis generator `a`, via the Leibniz rule and
    /// `{ā χ D b} = (-1)^{p(a)} (D + χ) {ā χ b}`. With `project` the result is π̃ of the bracket.
    pub fn bracket_gen(&self, a: usize, q: &DiffPoly, project: bool) -> ChiPoly {
        let pa = self.basis.parity(a) as i64;
        let mut cache: HashMap<GenSymbol, ChiPoly> = HashMap::new();
        let mut base = |s: &GenSymbol| -> ChiPoly {
            if let Some(v) = cache.get(s) {
                return v.clone();
            }
            let mut v = self.affine_bracket(a, s.id as usize);
            if project {
                v = self.pi_tilde(&v);
            }
            let factor = sign(pa);
            for _ in 0..s.deriv {
                v = v.d_plus_chi().scale(&factor);
            }
            cache.insert(*s, v.clone());
            v
        };
        let proj = |p: DiffPoly| if project { self.pi_tilde_poly(&p) } else { p };
        let mut out = ChiPoly::zero();
        for (m, c) in q.terms() {
            let mut odd_prefix = 0i64;
            for i in 0..m.len() {
                let inner = base(&m[i]);
                if !inner.is_zero() {
                    let prefix = proj(DiffPoly::from_raw(&m[..i], Q::one()));
                    let suffix = proj(DiffPoly::from_raw(&m[i + 1..], Q::one()));
                    let term = inner.left_mul(&prefix).right_mul(&suffix);
                    out.add_assign_scaled(&term, &(sign(pa * odd_prefix) * c));
                }
                odd_prefix += m[i].parity() as i64;
            }
        }
        out
    }

    /// {P χ Q} for arbitrary differential polynomials.
    pub fn bracket(&self, p: &DiffPoly, q: &DiffPoly) -> ChiPoly {
        if p.len() == 1 && p.degree() == 1 {
            return self.bracket_single(p, q, false);
        }
        let mut out = ChiPoly::zero();
        for (pp, ph) in split_parity(p) {
            out.add_assign_scaled(&self.bracket_homogeneous(pp as i64, &ph, q), &Q::one());
        }
        out
    }

    /// {P χ Q} for P of parity `pp`. On a generator c̄ the bracket comes from
    /// skewsymmetry applied to {c̄ χ P}; Leibniz and sesquilinearity handle the rest of Q.
    fn bracket_homogeneous(&self, pp: i64, p: &DiffPoly, q: &DiffPoly) -> ChiPoly {
        let mut cache: HashMap<GenSymbol, ChiPoly> = HashMap::new();
        let mut base = |s: &GenSymbol| -> ChiPoly {
            if let Some(v) = cache.get(s) {
                return v.clone();
            }
            let c = s.id as usize;
            let pc = self.basis.parity(c) as i64 + 1;
            let cp = self.bracket_gen(c, p, false);
            let mut v = ChiPoly::zero();
            for (&n, r) in cp.terms() {
                let mut t = ChiPoly::monomial(0, r.clone());
                for _ in 0..n {
                    t = t.minus_chi_minus_d();
                }
                v.add_assign_scaled(&t, &sign(pp * pc));
            }
            let factor = sign(pp + 1);
            for _ in 0..s.deriv {
                v = v.d_plus_chi().scale(&factor);
            }
            cache.insert(*s, v.clone());
            v
        };
        let mut out = ChiPoly::zero();
        for (m, c) in q.terms() {
            let mut prefix_parity = 0i64;
            for i in 0..m.len() {
                let inner = base(&m[i]);
                if !inner.is_zero() {
                    let prefix = DiffPoly::from_raw(&m[..i], Q::one());
                    let suffix = DiffPoly::from_raw(&m[i + 1..], Q::one());
                    let term = inner.left_mul(&prefix).right_mul(&suffix);
                    out.add_assign_scaled(&term, &(sign((pp + 1) * prefix_parity) * c));
                }
                prefix_parity += m[i].parity() as i64;
            }
        }
        out
    }

    /// [a χ b] - (-1)^{p(a)p(b)} Σ (-χ-D)ⁿ b_{(n)}a for homogeneous a, b.
    pub fn skew_defect(&self, a: &DiffPoly, b: &DiffPoly) -> ChiPoly {
        let lhs = self.bracket(a, b);
        let pa = a.parity().unwrap_or(0) as i64;
        let pb = b.parity().unwrap_or(0) as i64;
        let ba = self.bracket(b, a);
        let mut rhs = ChiPoly::zero();
        for (&n, r) in ba.terms() {
            let mut t = ChiPoly::monomial(0, r.clone());
            for _ in 0..n {
                t = t.minus_chi_minus_d();
            }
            rhs.add_assign_scaled(&t, &Q::one());
        }
        lhs.sub(&rhs.scale(&sign(pa * pb)))
    }

    /// [a χ [b γ c]] - (-1)^{p(a)+1} [[a χ b] χ+γ c] - (-1)^{(p(a)+1)(p(b)+1)} [b γ [a χ c]]
    pub fn jacobi_defect(&self, a: &DiffPoly, b: &DiffPoly, c: &DiffPoly) -> ChiGammaPoly {
        let pa = a.parity().unwrap_or(0) as i64;
        let pb = b.parity().unwrap_or(0) as i64;
        let mut defect = ChiGammaPoly::zero();

        // [a χ γ^m r] = (-1)^{m(p(a)+1)} γ^m [a χ r] and γ^m χ^k = (-1)^{mk} χ^k γ^m
        let bc = self.bracket(b, c);
        for (&m, r) in bc.terms() {
            let inner = self.bracket(a, r);
            for (&k, s) in inner.terms() {
                let e = m as i64 * (pa + 1) + (m * k) as i64;
                defect.add_at(k, m, s, &sign(e));
            }
        }

        // [χⁿ r χ+γ c] = (-1)ⁿ χⁿ Σ (χ+γ)^m r_{(m)} c
        let ab = self.bracket(a, b);
        let s2 = -sign(pa + 1);
        for (&n, r) in ab.terms() {
            let rc = self.bracket(r, c);
            for (&m, s) in rc.terms() {
                for ((i, j), coef) in ChiGammaPoly::chi_plus_gamma_pow(m) {
                    let c = &s2 * sign(n as i64) * coef;
                    defect.add_at(n + i, j, s, &c);
                }
            }
        }

        // [b γ χⁿ r] = (-1)^{n(p(b)+1)} χⁿ [b γ r]
        let ac = self.bracket(a, c);
        let s3 = -sign((pa + 1) * (pb + 1));
        for (&n, r) in ac.terms() {
            let inner = self.bracket(b, r);
            for (&m, s) in inner.terms() {
                let c = &s3 * sign(n as i64 * (pb + 1));
                defect.add_at(n, m, s, &c);
            }
        }
        defect
    }

    /// ad_χ P (Σ aᵢ Dⁱ) = Σ {P χ aᵢ} Dⁱ, optionally followed by π̃.
    pub fn ad_chi(&self, p: &DiffPoly, op: &DOp, project: bool) -> ChiDOp {
        let mut out = ChiDOp::zero(op.floor());
        for (&i, a) in op.terms() {
            let v = if project && p.len() == 1 && p.degree() == 1 {
                self.bracket_single(p, a, true)
            } else {
                let v = self.bracket(p, a);
                if project {
                    self.pi_tilde(&v)
                } else {
                    v
                }
            };
            for (&k, r) in v.terms() {
                out.add_at(k, i, r, &Q::one());
            }
        }
        out
    }

    /// Fast path for a single scaled generator (possibly derived) on the left.
    /// Uses {Dᵏā χ Q} = χᵏ {ā χ Q}; the opposite sign is incompatible with skewsymmetry.
    fn bracket_single(&self, p: &DiffPoly, q: &DiffPoly, project: bool) -> ChiPoly {
        let (m, c) = p.terms().iter().next().expect("single term");
        let s = m[0];
        let mut v = self.bracket_gen(s.id as usize, q, project);
        for _ in 0..s.deriv {
            v = v.chi_left();
        }
        v.scale(c)
    }

    /// ad_χ^𝔍 n̄ (A) = π̃ ∘ ad_χ n̄ (A) for a basis element `n` of 𝔫.
    pub fn ad_chi_j(&self, n: usize, op: &DOp) -> ChiDOp {
        self.ad_chi(&self.gen(n), op, true)
    }
}

/// Splits a polynomial into its even and odd parts.
fn split_parity(q: &DiffPoly) -> Vec<(u8, DiffPoly)> {
    let mut parts = [DiffPoly::zero(), DiffPoly::zero()];
    for (m, c) in q.terms() {
        parts[monomial_parity(m) as usize].add_term(m.clone(), c.clone());
    }
    parts
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (k as u8, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{AlgebraSpec, Family};
    use crate::rational::q;

    fn gl21() -> Basis {
        Basis::new(&AlgebraSpec::new(Family::GlUp, 1).unwrap()).unwrap()
    }

    #[test]
    fn affine_examples() {
        let b = gl21();
        let eng = Affine::new(&b);
        let id = |i, j| b.id_of(i, j).unwrap();
        let v = eng.affine_bracket(id(1, 2), id(2, 1));
        let expected = ChiPoly::monomial(0, eng.gen(id(1, 1)).add(&eng.gen(id(2, 2))))
            .add(&ChiPoly::monomial(1, DiffPoly::one()));
        assert_eq!(v, expected);
        assert_eq!(
            eng.affine_bracket(id(1, 1), id(1, 1)),
            ChiPoly::monomial(1, DiffPoly::one())
        );
        assert!(eng.affine_bracket(id(1, 1), id(2, 3)).is_zero());
    }

    #[test]
    fn arrow_substitution() {
        let b = gl21();
        let x = DiffPoly::symbol(GenSymbol::of(&b, 0, 0));
        // χ² = -λ becomes -(λ + ∂)
        let two = ChiPoly::monomial(2, DiffPoly::one()).arrow(&x);
        let expected = ChiPoly::monomial(2, x.clone()).sub(&ChiPoly::monomial(0, x.apply_d_n(2)));
        assert_eq!(two, expected);
        let one = ChiPoly::monomial(1, DiffPoly::one()).arrow(&x);
        assert_eq!(one, ChiPoly::monomial(1, x.clone()).add(&ChiPoly::monomial(0, x.apply_d())));
        // an odd coefficient is passed by D but not by χ
        let r = DiffPoly::symbol(GenSymbol::of(&b, 4, 0));
        assert_eq!(r.parity(), Some(1));
        let odd = ChiPoly::monomial(1, r.clone()).arrow(&x);
        let expected = ChiPoly::monomial(1, r.mul(&x)).sub(&ChiPoly::monomial(0, r.mul(&x.apply_d())));
        assert_eq!(odd, expected);
    }

    #[test]
    fn derivative_on_right() {
        // ē12 is even in the SUSY sense, so [ē12 χ Dē21] = -(D+χ)(ē11 + ē22 + χ)
        let b = gl21();
        let eng = Affine::new(&b);
        let id = |i, j| b.id_of(i, j).unwrap();
        let v = eng.bracket(&eng.gen(id(1, 2)), &eng.gen(id(2, 1)).apply_d());
        let lin = eng.gen(id(1, 1)).add(&eng.gen(id(2, 2)));
        let expected = ChiPoly::monomial(0, lin.apply_d().neg())
            .add(&ChiPoly::monomial(1, lin.neg()))
            .add(&ChiPoly::monomial(2, DiffPoly::one()));
        assert_eq!(v, expected);
    }

    #[test]
    fn pi_tilde_examples() {
        let b = gl21();
        let eng = Affine::new(&b);
        let id = |i, j| b.id_of(i, j).unwrap();
        assert_eq!(
            eng.pi_tilde_poly(&eng.gen(id(1, 2))),
            DiffPoly::constant(q(-1))
        );
        assert!(eng.pi_tilde_poly(&eng.gen(id(1, 2)).apply_d()).is_zero());
        assert_eq!(eng.pi_tilde_poly(&eng.gen(id(2, 1))), eng.gen(id(2, 1)));
    }

    #[test]
    fn expansion_sanity() {
        let b = gl21();
        let eng = Affine::new(&b);
        let r = eng.gen(0);
        let x = ChiPoly::monomial(0, r.clone()).minus_chi_minus_d();
        let expected = ChiPoly::monomial(1, r.clone().neg()).add(&ChiPoly::monomial(0, r.apply_d().neg()));
        assert_eq!(x, expected);
    }

    #[test]
    fn gl21_axioms_on_generators() {
        let b = gl21();
        let eng = Affine::new(&b);
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                assert!(eng.skew_defect(&eng.gen(x), &eng.gen(y)).is_zero());
                for z in 0..b.dim() {
                    let d = eng.jacobi_defect(&eng.gen(x), &eng.gen(y), &eng.gen(z));
                    assert!(d.is_zero(), "{x} {y} {z}");
                }
            }
            let d = eng.jacobi_defect(&eng.gen(x), &eng.gen(x), &DiffPoly::one());
            assert!(d.is_zero());
        }
    }

    #[test]
    fn skew_with_derivatives() {
        let b = gl21();
        let eng = Affine::new(&b);
        let g = |i: usize| eng.gen(i);
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                for (u, v) in [
                    (g(x).apply_d(), g(y)),
                    (g(x), g(y).apply_d()),
                    (g(x).apply_d(), g(y).apply_d()),
                ] {
                    let d = eng.skew_defect(&u, &v);
                    assert!(d.is_zero(), "{} {}", u.render(&b), v.render(&b));
                }
            }
        }
    }

    #[test]
    fn axioms_on_products() {
        let b = gl21();
        let eng = Affine::new(&b);
        let g = |i: usize| eng.gen(i);
        let c = g(2).mul(&g(4).apply_d()).mul(&g(0));
        let samples = [
            g(1),
            g(3),
            g(4).apply_d(),
            g(1).mul(&g(3)),
            g(2).mul(&g(4).apply_d()),
            g(4).apply_d().mul(&g(0)),
            g(2).mul(&g(0)),
            c.clone(),
        ];
        for x in &samples {
            for y in &samples {
                assert!(eng.skew_defect(x, y).is_zero());
                for z in [g(7), g(5).apply_d()] {
                    let j = eng.jacobi_defect(x, y, &z);
                    assert!(j.is_zero(), "{} | {} | {}", x.render(&b), y.render(&b), z.render(&b));
                }
            }
        }
    }
}
