//! The free supercommutative differential algebra on the symbols `ā^{(m)}`.
//!
//! A [`DiffPoly`] is a finite rational combination of canonical monomials. Monomials are
//! sorted by `(basis id, derivative order)`; the Koszul sign of the sorting permutation is
//! folded into the coefficient and repeated odd symbols vanish.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::liesuper::Basis;
use crate::rational::{render, Q};

/// `ā^{(m)}` for the basis element with index `id`.
///
/// The Lie parity and doubled ad-x degree of `a` travel with the symbol so that polynomials
/// can be normalized without consulting the basis. Ordering is by `(id, deriv)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSymbol {
    pub id: u32,
    pub deriv: u32,
    pub lie_parity: u8,
    pub deg2: i32,
}

impl GenSymbol {
    pub fn of(basis: &Basis, id: usize, deriv: u32) -> GenSymbol {
        GenSymbol {
            id: id as u32,
            deriv,
            lie_parity: basis.parity(id),
            deg2: basis.degree2(id),
        }
    }

    /// p(ā^{(m)}) = p(a) + 1 + m
    pub fn parity(&self) -> u8 {
        ((self.lie_parity as u32 + 1 + self.deriv) % 2) as u8
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    /// 2Δ = 1 - 2j_a + m
    pub fn delta2(&self) -> i32 {
        1 - self.deg2 + self.deriv as i32
    }

    pub fn derived(&self, extra: u32) -> GenSymbol {
        GenSymbol {
            deriv: self.deriv + extra,
            ..*self
        }
    }

    pub fn base(&self) -> GenSymbol {
        GenSymbol { deriv: 0, ..*self }
    }
}

pub type Monomial = Vec<GenSymbol>;

pub fn monomial_parity(m: &[GenSymbol]) -> u8 {
    (m.iter().filter(|s| s.is_odd()).count() % 2) as u8
}

pub fn monomial_delta2(m: &[GenSymbol]) -> i32 {
    m.iter().map(|s| s.delta2()).sum()
}

/// Sorts a raw product of symbols. Returns the Koszul sign and the canonical monomial,
/// or `None` when an odd symbol repeats.
pub fn normalize(raw: &[GenSymbol]) -> Option<(bool, Monomial)> {
    let mut v: Monomial = raw.to_vec();
    let mut negative = false;
    // insertion sort, tracking odd-odd transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            if v[j - 1].is_odd() && v[j].is_odd() {
                negative = !negative;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
        return None;
    }
    Some((negative, v))
}

/// Product of two canonical monomials.
fn mul_monomials(a: &[GenSymbol], b: &[GenSymbol]) -> Option<(bool, Monomial)> {
    if a.is_empty() {
        return Some((false, b.to_vec()));
    }
    if b.is_empty() {
        return Some((false, a.to_vec()));
    }
    // merge; each element of b that jumps over odd elements of a picks up a sign
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut negative = false;
    let odd_a_total = a.iter().filter(|s| s.is_odd()).count();
    let mut i = 0;
    let mut odd_a_taken = 0;
    for y in b {
        while i < a.len() && a[i] <= *y {
            if a[i] == *y && y.is_odd() {
                return None;
            }
            if a[i].is_odd() {
                odd_a_taken += 1;
            }
            out.push(a[i]);
            i += 1;
        }
        if y.is_odd() && (odd_a_total - odd_a_taken) % 2 == 1 {
            negative = !negative;
        }
        out.push(*y);
    }
    out.extend_from_slice(&a[i..]);
    Some((negative, out))
}

/// Element of the free supercommutative differential algebra with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl DiffPoly {
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    pub fn constant(c: Q) -> DiffPoly {
        let mut p = DiffPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> DiffPoly {
        DiffPoly::constant(Q::one())
    }

    pub fn symbol(s: GenSymbol) -> DiffPoly {
        let mut p = DiffPoly::zero();
        p.add_term(vec![s], Q::one());
        p
    }

    /// Builds a polynomial from an arbitrary (unsorted) product of symbols.
    pub fn from_raw(raw: &[GenSymbol], c: Q) -> DiffPoly {
        let mut p = DiffPoly::zero();
        if let Some((neg, m)) = normalize(raw) {
            p.add_term(m, if neg { -c } else { c });
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times an already canonical monomial.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &DiffPoly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> DiffPoly {
        self.scale(&-Q::one())
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// The odd derivation D(ā^{(m)}) = ā^{(m+1)}.
    pub fn apply_d(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut odd_before = 0u32;
            for (i, s) in m.iter().enumerate() {
                let mut raw = m.clone();
                raw[i] = s.derived(1);
                if let Some((neg, mm)) = normalize(&raw) {
                    let negative = neg ^ (odd_before % 2 == 1);
                    out.add_term(mm, if negative { -c.clone() } else { c.clone() });
                }
                if s.is_odd() {
                    odd_before += 1;
                }
            }
        }
        out
    }

    pub fn apply_d_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.apply_d();
        }
        p
    }

    /// Parity when homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| monomial_parity(m));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// Twice the Δ-weight. `Ok(None)` for zero, an error naming the monomials when mixed.
    pub fn delta_weight2(&self) -> Result<Option<i32>> {
        let mut weights: BTreeMap<i32, Vec<&Monomial>> = BTreeMap::new();
        for m in self.terms.keys() {
            weights.entry(monomial_delta2(m)).or_default().push(m);
        }
        match weights.len() {
            0 => Ok(None),
            1 => Ok(weights.keys().next().copied()),
            _ => {
                let desc: Vec<String> = weights
                    .iter()
                    .map(|(w, ms)| {
                        format!("Δ={} for {:?}", crate::rational::render_half(*w as i64), ms[0])
                    })
                    .collect();
                Err(Error::Inhomogeneous(desc.join("; ")))
            }
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
    }

    /// Linear monomials without derivatives, i.e. the part not in D(𝒱) + 𝒱₊².
    pub fn linear_part(&self) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == 1 && m[0].deriv == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest polynomial degree of a monomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GenSymbol> {
        self.terms.keys().flat_map(|m| m.iter())
    }

    /// The differential-algebra homomorphism determined by `phi` on underived symbols
    /// (`phi` must preserve parity): `ā^{(m)} ↦ D^m φ(ā)`.
    pub fn substitute(&self, phi: &dyn Fn(&GenSymbol) -> DiffPoly) -> DiffPoly {
        let mut cache: HashMap<GenSymbol, DiffPoly> = HashMap::new();
        let mut image = |s: &GenSymbol| -> DiffPoly {
            if let Some(p) = cache.get(s) {
                return p.clone();
            }
            let p = phi(&s.base()).apply_d_n(s.deriv);
            cache.insert(*s, p.clone());
            p
        };
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for s in m {
                acc = acc.mul(&image(s));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&acc, &Q::one());
        }
        out
    }

    /// Renders as `c*X*Y^(m) + ...` using `name` for basis ids.
    pub fn render_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            if m.is_empty() || !a.is_one() {
                parts.push(render(&a));
            }
            for s in m {
                let mut sym = name(s.id);
                if s.deriv > 0 {
                    let _ = write!(sym, "^({})", s.deriv);
                }
                parts.push(sym);
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    pub fn render(&self, basis: &Basis) -> String {
        self.render_with(&|id| basis.symbol_name(id as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sym(id: u32, lie_parity: u8) -> GenSymbol {
        GenSymbol {
            id,
            deriv: 0,
            lie_parity,
            deg2: 0,
        }
    }

    // lie parity 0 gives an odd symbol ā
    fn odd(id: u32) -> GenSymbol {
        sym(id, 0)
    }

    fn even(id: u32) -> GenSymbol {
        sym(id, 1)
    }

    #[test]
    fn normalize_examples() {
        let (a, b) = (odd(1), odd(2));
        assert_eq!(normalize(&[b, a]), Some((true, vec![a, b])));
        assert_eq!(normalize(&[a, a]), None);
        let e = even(3);
        assert_eq!(normalize(&[e, e]), Some((false, vec![e, e])));
    }

    #[test]
    fn multiply_examples() {
        let a = DiffPoly::symbol(odd(1));
        assert!(a.mul(&a).is_zero());
        let one = DiffPoly::one();
        let s = a.add(&one);
        assert_eq!(s.mul(&s), a.scale(&q(2)).add(&one));
        let e = DiffPoly::symbol(even(2));
        let lhs = a.mul(&e).add(&e.mul(&a));
        assert_eq!(lhs, a.mul(&e).scale(&q(2)));
    }

    #[test]
    fn derivation_examples() {
        let a = DiffPoly::symbol(odd(1));
        let b = DiffPoly::symbol(even(2));
        let lhs = a.mul(&b).apply_d();
        let rhs = a.apply_d().mul(&b).sub(&a.mul(&b.apply_d()));
        assert_eq!(lhs, rhs);
        assert!(DiffPoly::one().apply_d().is_zero());
    }

    #[test]
    fn render_examples() {
        let e = GenSymbol {
            id: 0,
            deriv: 0,
            lie_parity: 1,
            deg2: -1,
        };
        let f = GenSymbol {
            id: 1,
            deriv: 1,
            lie_parity: 0,
            deg2: -2,
        };
        let p = DiffPoly::from_raw(&[e, f], q(-2)).add(&DiffPoly::constant(q(1)));
        let name = |id: u32| ["E[2,1]", "E[3,1]"][id as usize].to_string();
        assert_eq!(p.render_with(&name), "1 - 2*E[2,1]*E[3,1]^(1)");
        assert_eq!(DiffPoly::zero().render_with(&name), "0");
    }

    #[test]
    fn delta_examples() {
        // gl(2|1): e_21 has degree -1/2 so Δ = 1
        let e21 = GenSymbol {
            id: 3,
            deriv: 0,
            lie_parity: 1,
            deg2: -1,
        };
        let e11 = GenSymbol {
            id: 0,
            deriv: 0,
            lie_parity: 0,
            deg2: 0,
        };
        let p = DiffPoly::symbol(e21);
        assert_eq!(p.delta_weight2().unwrap(), Some(2));
        assert_eq!(p.apply_d().delta_weight2().unwrap(), Some(3));
        let mixed = p.add(&DiffPoly::symbol(e11));
        assert!(matches!(mixed.delta_weight2(), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn linear_part_examples() {
        let a = DiffPoly::symbol(even(1));
        let b = DiffPoly::symbol(odd(2));
        let p = a.add(&b.apply_d()).add(&a.mul(&b));
        assert_eq!(p.linear_part(), a);
        assert!(b.apply_d().linear_part().is_zero());
    }
}
