//! Matrix presentations of the Lie superalgebras gl/sl(n±1|n) and osp(M|2n) that carry an odd
//! principal nilpotent, together with their gradings, invariant forms, folded bases and the
//! kernel of `ad f`.
//!
//! Indices are 1-based throughout, matching the usual matrix-unit notation `e_{ij}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{q, qf, sign, Q};

/// The eight families with an odd principal nilpotent handled by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// gl(n+1|n)
    GlUp,
    /// gl(n-1|n)
    GlDown,
    /// sl(n+1|n)
    SlUp,
    /// sl(n-1|n)
    SlDown,
    /// osp(2n+1|2n)
    OspOddUp,
    /// osp(2n-1|2n)
    OspOddDown,
    /// osp(2n|2n)
    OspEven,
    /// osp(2n+2|2n)
    OspEvenUp,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::GlUp,
        Family::GlDown,
        Family::SlUp,
        Family::SlDown,
        Family::OspOddUp,
        Family::OspOddDown,
        Family::OspEven,
        Family::OspEvenUp,
    ];

    pub fn kind(self) -> &'static str {
        match self {
            Family::GlUp | Family::GlDown => "gl",
            Family::SlUp | Family::SlDown => "sl",
            _ => "osp",
        }
    }

    pub fn variant(self) -> &'static str {
        match self {
            Family::GlUp | Family::SlUp => "n+1",
            Family::GlDown | Family::SlDown => "n-1",
            Family::OspOddUp => "2n+1|2n",
            Family::OspOddDown => "2n-1|2n",
            Family::OspEven => "2n|2n",
            Family::OspEvenUp => "2n+2|2n",
        }
    }

    pub fn from_parts(kind: &str, variant: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.kind() == kind && f.variant() == variant)
    }

    pub fn is_osp(self) -> bool {
        self.kind() == "osp"
    }

    pub fn is_sl(self) -> bool {
        self.kind() == "sl"
    }

    /// Both osp(2n|2n) and osp(2n+2|2n), whose matrices carry a central `D^{-1}`.
    pub fn is_osp_even(self) -> bool {
        matches!(self, Family::OspEven | Family::OspEvenUp)
    }

    pub fn is_osp_odd(self) -> bool {
        matches!(self, Family::OspOddUp | Family::OspOddDown)
    }

    /// The gl family sharing the index data of an sl family.
    pub fn gl_parent(self) -> Family {
        match self {
            Family::SlUp => Family::GlUp,
            Family::SlDown => Family::GlDown,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            "osp" => write!(f, "osp({})", self.variant()),
            k => write!(f, "{}({}|n)", k, self.variant()),
        }
    }
}

/// Which part of the ad-x grading a homogeneous element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// positive degree
    N,
    /// degree zero
    G0,
    /// negative degree
    NMinus,
}

/// A family together with its rank, which fixes the index set, parities and δ-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    family: Family,
    n: usize,
    parity: Vec<u8>,
    delta: Option<Vec<u8>>,
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let bad = || Error::InvalidRank {
            family: family.to_string(),
            n,
        };
        if n == 0 {
            return Err(bad());
        }
        if matches!(family, Family::GlDown | Family::SlDown) && n < 2 {
            return Err(bad());
        }
        let size = match family {
            Family::GlUp | Family::SlUp => 2 * n + 1,
            Family::GlDown | Family::SlDown => 2 * n - 1,
            Family::OspOddUp => 4 * n + 1,
            Family::OspOddDown => 4 * n - 1,
            Family::OspEven => 4 * n,
            Family::OspEvenUp => 4 * n + 2,
        };
        let parity: Vec<u8> = (1..=size)
            .map(|i| {
                let odd = match family {
                    Family::GlUp | Family::SlUp | Family::OspOddUp => i % 2 == 0,
                    Family::GlDown | Family::SlDown | Family::OspOddDown => i % 2 == 1,
                    Family::OspEven => {
                        if i <= 2 * n {
                            i % 2 == 1
                        } else {
                            i % 2 == 0
                        }
                    }
                    Family::OspEvenUp => {
                        if i <= 2 * n + 1 {
                            i % 2 == 0
                        } else {
                            i % 2 == 1
                        }
                    }
                };
                odd as u8
            })
            .collect();
        let delta = family.is_osp().then(|| {
            (1..=size)
                .map(|k| {
                    let one = match family {
                        Family::OspOddUp => k % 2 == 0 && (2 * n + 2..=4 * n).contains(&k),
                        Family::OspOddDown => k % 2 == 1 && (2 * n + 1..=4 * n - 1).contains(&k),
                        Family::OspEven => k % 2 == 1 && k < 2 * n,
                        Family::OspEvenUp => k % 2 == 0 && k <= 2 * n,
                        _ => unreachable!(),
                    };
                    one as u8
                })
                .collect()
        });
        Ok(AlgebraSpec {
            family,
            n,
            parity,
            delta,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// |I|
    pub fn size(&self) -> usize {
        self.parity.len()
    }

    /// Concrete name such as `gl(2|1)` or `osp(3|2)`.
    pub fn name(&self) -> String {
        let n = self.n;
        let (m, k) = match self.family {
            Family::GlUp | Family::SlUp => (n + 1, n),
            Family::GlDown | Family::SlDown => (n - 1, n),
            Family::OspOddUp => (2 * n + 1, 2 * n),
            Family::OspOddDown => (2 * n - 1, 2 * n),
            Family::OspEven => (2 * n, 2 * n),
            Family::OspEvenUp => (2 * n + 2, 2 * n),
        };
        format!("{}({}|{})", self.family.kind(), m, k)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.size() {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.size(),
            })
        } else {
            Ok(())
        }
    }

    pub fn parity_index(&self, i: usize) -> Result<u8> {
        self.check(i)?;
        Ok(self.parity[i - 1])
    }

    pub fn delta_index(&self, k: usize) -> Result<u8> {
        let delta = self.delta.as_ref().ok_or_else(|| Error::NotOrthosymplectic {
            op: "delta_index",
            family: self.family.to_string(),
        })?;
        self.check(k)?;
        Ok(delta[k - 1])
    }

    /// p(i) without range checking.
    pub(crate) fn p(&self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    /// δ_k, zero for non-osp families.
    pub(crate) fn d(&self, k: usize) -> u8 {
        self.delta.as_ref().map_or(0, |d| d[k - 1])
    }

    /// i' = |I| + 1 - i
    pub fn conj(&self, i: usize) -> usize {
        self.size() + 1 - i
    }

    /// The position of `i` along the chain of `f`; `e_ij` has ad-x degree `(w(j) - w(i)) / 2`.
    pub fn weight(&self, i: usize) -> i32 {
        let half = self.size() / 2;
        if self.family.is_osp_even() && i > half {
            i as i32 - 1
        } else {
            i as i32
        }
    }

    /// Doubled ad-x degree of `e_ij`.
    pub fn grading_degree(&self, i: usize, j: usize) -> i32 {
        self.weight(j) - self.weight(i)
    }

    /// T_i(k) = δ_i + δ_{i-1} + ... + δ_{k+1} for i > k, and 0 otherwise.
    pub fn t_sign(&self, i: usize, k: usize) -> u32 {
        if i <= k {
            return 0;
        }
        (k + 1..=i).map(|m| self.d(m) as u32).sum()
    }

    /// τ(i,j) = (-1)^{p(i)p(j) + p(j) + 1 + δ_i + δ_j}
    pub fn tau(&self, i: usize, j: usize) -> Q {
        let (pi, pj) = (self.p(i) as i64, self.p(j) as i64);
        sign(pi * pj + pj + 1 + self.d(i) as i64 + self.d(j) as i64)
    }

    // ----- elements -----

    pub fn element(&self, terms: BTreeMap<(usize, usize), Q>) -> SuperElement {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut parity = None;
        let mut degree = None;
        let mut par_ok = true;
        let mut deg_ok = true;
        for &(i, j) in terms.keys() {
            let p = (self.p(i) + self.p(j)) % 2;
            let d = self.grading_degree(i, j);
            match parity {
                None => parity = Some(p),
                Some(x) if x != p => par_ok = false,
                _ => {}
            }
            match degree {
                None => degree = Some(d),
                Some(x) if x != d => deg_ok = false,
                _ => {}
            }
        }
        SuperElement {
            terms,
            parity: if par_ok { parity.or(Some(0)) } else { None },
            degree2: if deg_ok { degree.or(Some(0)) } else { None },
        }
    }

    pub fn unit(&self, i: usize, j: usize) -> SuperElement {
        self.element(BTreeMap::from([((i, j), Q::one())]))
    }

    pub fn zero(&self) -> SuperElement {
        self.element(BTreeMap::new())
    }

    /// Linear combination Σ c_k x_k.
    pub fn lin<'a>(&self, parts: impl IntoIterator<Item = (Q, &'a SuperElement)>) -> SuperElement {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (c, x) in parts {
            for (k, v) in &x.terms {
                *acc.entry(*k).or_insert_with(Q::zero) += c.clone() * v;
            }
        }
        self.element(acc)
    }

    pub fn add(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        self.lin([(Q::one(), a), (Q::one(), b)])
    }

    pub fn sub(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        self.lin([(Q::one(), a), (-Q::one(), b)])
    }

    pub fn scale(&self, c: &Q, a: &SuperElement) -> SuperElement {
        self.lin([(c.clone(), a)])
    }

    /// Ordinary matrix product.
    pub fn matmul(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (&(i, j), x) in &a.terms {
            for (&(k, l), y) in b.terms.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(k, j);
                *acc.entry((i, l)).or_insert_with(Q::zero) += x * y;
            }
        }
        self.element(acc)
    }

    /// [e_ij, e_kl] = δ_jk e_il - (-1)^{(p(i)+p(j))(p(k)+p(l))} δ_il e_kj, extended bilinearly.
    pub fn lie_bracket(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (&(i, j), x) in &a.terms {
            let pa = (self.p(i) + self.p(j)) as i64;
            for (&(k, l), y) in &b.terms {
                let c = x * y;
                if j == k {
                    *acc.entry((i, l)).or_insert_with(Q::zero) += c.clone();
                }
                if i == l {
                    let pb = (self.p(k) + self.p(l)) as i64;
                    *acc.entry((k, j)).or_insert_with(Q::zero) -= sign(pa * pb) * c;
                }
            }
        }
        self.element(acc)
    }

    pub fn supertrace(&self, a: &SuperElement) -> Q {
        a.terms
            .iter()
            .filter(|((i, j), _)| i == j)
            .map(|((i, _), c)| sign(self.p(*i) as i64) * c)
            .sum()
    }

    /// (a|b) = str(ab)
    pub fn bilinear_form(&self, a: &SuperElement, b: &SuperElement) -> Q {
        let mut s = Q::zero();
        for (&(i, j), x) in &a.terms {
            if let Some(y) = b.terms.get(&(j, i)) {
                s += sign(self.p(i) as i64) * x * y;
            }
        }
        s
    }

    /// a^{st} = Σ (-1)^{(p(i)+1)p(j)} a_ij e_ji
    pub fn supertranspose(&self, a: &SuperElement) -> SuperElement {
        let terms = a
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let e = (self.p(i) as i64 + 1) * self.p(j) as i64;
                ((j, i), sign(e) * c)
            })
            .collect();
        self.element(terms)
    }

    /// 𝒥 = Σ_k (-1)^{δ_k} e_{k k'}
    pub fn form_matrix(&self) -> Result<SuperElement> {
        self.require_osp("form_matrix")?;
        let terms = (1..=self.size())
            .map(|k| ((k, self.conj(k)), sign(self.d(k) as i64)))
            .collect();
        Ok(self.element(terms))
    }

    /// Whether a^{st} 𝒥 + 𝒥 a = 0.
    pub fn preserves_form(&self, a: &SuperElement) -> Result<bool> {
        let j = self.form_matrix()?;
        let lhs = self.add(
            &self.matmul(&self.supertranspose(a), &j),
            &self.matmul(&j, a),
        );
        Ok(lhs.is_zero())
    }

    fn require_osp(&self, op: &'static str) -> Result<()> {
        if self.family.is_osp() {
            Ok(())
        } else {
            Err(Error::NotOrthosymplectic {
                op,
                family: self.family.to_string(),
            })
        }
    }

    /// θ(e_ij) = τ(i,j) e_{j'i'}, extended linearly.
    pub fn theta(&self, a: &SuperElement) -> Result<SuperElement> {
        self.require_osp("theta")?;
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (&(i, j), c) in &a.terms {
            *acc.entry((self.conj(j), self.conj(i))).or_insert_with(Q::zero) += self.tau(i, j) * c;
        }
        Ok(self.element(acc))
    }

    /// F_ij = e_ij + θ(e_ij)
    pub fn fold_f(&self, i: usize, j: usize) -> Result<SuperElement> {
        self.require_osp("fold_F")?;
        self.check(i)?;
        self.check(j)?;
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        acc.insert((i, j), Q::one());
        *acc.entry((self.conj(j), self.conj(i))).or_insert_with(Q::zero) += self.tau(i, j);
        Ok(self.element(acc))
    }

    /// E_ij = (-1)^{p(i)}/2 F_ij
    pub fn fold_e(&self, i: usize, j: usize) -> Result<SuperElement> {
        let f = self.fold_f(i, j)?;
        Ok(self.scale(&(sign(self.p(i) as i64) * qf(1, 2)), &f))
    }

    /// The odd principal nilpotent of the family's presentation.
    pub fn principal_f(&self) -> SuperElement {
        let size = self.size();
        match self.family {
            Family::GlUp | Family::GlDown | Family::SlUp | Family::SlDown => {
                let terms = (1..size).map(|i| ((i + 1, i), Q::one())).collect();
                self.element(terms)
            }
            Family::OspOddUp | Family::OspOddDown => {
                let parts: Vec<SuperElement> = (1..=(size - 1) / 2)
                    .map(|i| self.fold_f(i + 1, i).expect("osp"))
                    .collect();
                self.lin(parts.iter().map(|x| (Q::one(), x)))
            }
            Family::OspEven | Family::OspEvenUp => {
                let half = size / 2;
                let mut parts = vec![self.fold_f(half + 1, half - 1).expect("osp")];
                parts.extend((1..half).map(|i| self.fold_f(i + 1, i).expect("osp")));
                self.lin(parts.iter().map(|x| (Q::one(), x)))
            }
        }
    }

    /// Membership tag of each matrix unit of `a` in 𝔫, 𝔤₀ or 𝔫₋.
    pub fn subalgebra_of(&self, a: &SuperElement) -> Vec<((usize, usize), Subalgebra)> {
        a.terms
            .keys()
            .map(|&(i, j)| ((i, j), Subalgebra::from_degree(self.grading_degree(i, j))))
            .collect()
    }

    /// 𝕀 = Σ e_ii
    pub fn identity(&self) -> SuperElement {
        self.element((1..=self.size()).map(|i| ((i, i), Q::one())).collect())
    }
}

impl Subalgebra {
    pub fn from_degree(doubled: i32) -> Subalgebra {
        match doubled.signum() {
            1 => Subalgebra::N,
            0 => Subalgebra::G0,
            _ => Subalgebra::NMinus,
        }
    }
}

/// Exact rational combination of matrix units with cached parity and doubled ad-x degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperElement {
    terms: BTreeMap<(usize, usize), Q>,
    parity: Option<u8>,
    degree2: Option<i32>,
}

impl SuperElement {
    pub fn terms(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` when the element mixes parities.
    pub fn parity(&self) -> Option<u8> {
        self.parity
    }

    /// Twice the ad-x degree; `None` when inhomogeneous.
    pub fn degree2(&self) -> Option<i32> {
        self.degree2
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !a.is_one() {
                write!(f, "{}*", crate::rational::render(&a))?;
            }
            write!(f, "e[{},{}]", i, j)?;
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Basis of 𝔤 used for the generators ā of the affine PVA.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub label: (usize, usize),
    pub elem: SuperElement,
    pub parity: u8,
    /// Twice the ad-x degree.
    pub degree2: i32,
}

/// A homogeneous basis of 𝔤 with precomputed structure constants and Gram matrix.
///
/// gl and sl presentations use the matrix units `e_ij` (sl shares the gl index data; the
/// trace condition is imposed by [`crate::wgen::pi_sl`]). osp presentations use
/// `E_ij = (-1)^{p(i)}/2 F_ij` for `(i,j)` in ℬ = {i + j ≤ |I|+1} \ {(i,i') | p(i) = 0}.
#[derive(Debug)]
pub struct Basis {
    spec: AlgebraSpec,
    elems: Vec<BasisElem>,
    index: HashMap<(usize, usize), usize>,
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
    form: Vec<Vec<Q>>,
    f_pairing: Vec<Q>,
    prefix: char,
}

impl Basis {
    pub fn new(spec: &AlgebraSpec) -> Result<Basis> {
        let size = spec.size();
        let mut elems = Vec::new();
        let prefix;
        if spec.family().is_osp() {
            prefix = 'E';
            for i in 1..=size {
                for j in 1..=size {
                    if i + j > size + 1 || (j == spec.conj(i) && spec.p(i) == 0) {
                        continue;
                    }
                    let elem = spec.fold_e(i, j)?;
                    elems.push(BasisElem {
                        label: (i, j),
                        parity: (spec.p(i) + spec.p(j)) % 2,
                        degree2: spec.grading_degree(i, j),
                        elem,
                    });
                }
            }
        } else {
            prefix = 'e';
            for i in 1..=size {
                for j in 1..=size {
                    elems.push(BasisElem {
                        label: (i, j),
                        parity: (spec.p(i) + spec.p(j)) % 2,
                        degree2: spec.grading_degree(i, j),
                        elem: spec.unit(i, j),
                    });
                }
            }
        }
        let index = elems
            .iter()
            .enumerate()
            .map(|(k, b)| (b.label, k))
            .collect();
        let mut basis = Basis {
            spec: spec.clone(),
            elems,
            index,
            brackets: Vec::new(),
            form: Vec::new(),
            f_pairing: Vec::new(),
            prefix,
        };
        let dim = basis.elems.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        let mut form = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let x = &basis.elems[a].elem;
                let y = &basis.elems[b].elem;
                brackets[a][b] = basis.coords(&spec.lie_bracket(x, y))?;
                form[a][b] = spec.bilinear_form(x, y);
            }
        }
        let f = spec.principal_f();
        basis.f_pairing = basis
            .elems
            .iter()
            .map(|b| spec.bilinear_form(&f, &b.elem))
            .collect();
        basis.brackets = brackets;
        basis.form = form;
        Ok(basis)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, id: usize) -> &BasisElem {
        &self.elems[id]
    }

    pub fn elems(&self) -> &[BasisElem] {
        &self.elems
    }

    pub fn id_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    pub fn parity(&self, id: usize) -> u8 {
        self.elems[id].parity
    }

    pub fn degree2(&self, id: usize) -> i32 {
        self.elems[id].degree2
    }

    pub fn in_n(&self, id: usize) -> bool {
        self.elems[id].degree2 > 0
    }

    /// Basis ids spanning 𝔫 = 𝔤_{>0}.
    pub fn n_ids(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.in_n(k)).collect()
    }

    /// Basis ids spanning 𝔭 = 𝔤_{≤0}.
    pub fn p_ids(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| !self.in_n(k)).collect()
    }

    /// Structure constants of [a_x, a_y] in this basis.
    pub fn bracket(&self, x: usize, y: usize) -> &[(usize, Q)] {
        &self.brackets[x][y]
    }

    pub fn form(&self, x: usize, y: usize) -> &Q {
        &self.form[x][y]
    }

    /// (f | a_x)
    pub fn f_pairing(&self, x: usize) -> &Q {
        &self.f_pairing[x]
    }

    pub fn symbol_name(&self, id: usize) -> String {
        let (i, j) = self.elems[id].label;
        format!("{}[{},{}]", self.prefix, i, j)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        let err = || Error::UnknownSymbol(name.to_string());
        let rest = name.strip_prefix(self.prefix).ok_or_else(err)?;
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let i: usize = a.trim().parse().map_err(|_| err())?;
        let j: usize = b.trim().parse().map_err(|_| err())?;
        self.id_of(i, j).ok_or_else(err)
    }

    /// Coordinates of `a` in this basis; fails if `a` is not in the span.
    pub fn coords(&self, a: &SuperElement) -> Result<Vec<(usize, Q)>> {
        let spec = &self.spec;
        let mut out = Vec::new();
        if !spec.family().is_osp() {
            for (&(i, j), c) in a.terms() {
                out.push((self.index[&(i, j)], c.clone()));
            }
            return Ok(out);
        }
        for (k, b) in self.elems.iter().enumerate() {
            let (i, j) = b.label;
            let c = a.coeff(i, j);
            if !c.is_zero() {
                out.push((k, c / b.elem.coeff(i, j)));
            }
        }
        let back = self.element_of(&out);
        if &back != a {
            return Err(Error::NotInAlgebra(a.to_string()));
        }
        Ok(out)
    }

    pub fn element_of(&self, coords: &[(usize, Q)]) -> SuperElement {
        self.spec
            .lin(coords.iter().map(|(k, c)| (c.clone(), &self.elems[*k].elem)))
    }

    /// Basis ids of the graded component 𝔤_{d/2}.
    pub fn component(&self, doubled: i32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.elems[k].degree2 == doubled)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Kernel of ad f
// ---------------------------------------------------------------------------

/// An element of 𝔤^f = ker(ad f) indexed by the weight label `t` with v ∈ 𝔤_{(1-t)/2}.
#[derive(Clone, Debug)]
pub struct KerElem {
    pub t: usize,
    pub tilde: bool,
    pub elem: SuperElement,
    /// Whether the element comes from a closed formula (as opposed to kernel solving).
    pub closed_form: bool,
}

/// Solves [f, v] = 0 on the graded component 𝔤_{d/2} (restricted to supertrace zero for sl).
pub fn kernel_on_component(basis: &Basis, doubled: i32) -> Vec<SuperElement> {
    let spec = basis.spec();
    let ids = basis.component(doubled);
    if ids.is_empty() {
        return Vec::new();
    }
    let f = spec.principal_f();
    let images: Vec<SuperElement> = ids
        .iter()
        .map(|&k| spec.lie_bracket(&f, &basis.elem(k).elem))
        .collect();
    let mut keys: Vec<(usize, usize)> = images
        .iter()
        .flat_map(|x| x.terms().keys().copied())
        .collect();
    keys.sort();
    keys.dedup();
    let mut rows: Vec<Vec<Q>> = keys
        .iter()
        .map(|key| images.iter().map(|x| x.terms().get(key).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    if spec.family().is_sl() {
        rows.push(
            ids.iter()
                .map(|&k| spec.supertrace(&basis.elem(k).elem))
                .collect(),
        );
    }
    linalg::nullspace(&rows, ids.len())
        .into_iter()
        .map(|v| {
            let coords: Vec<(usize, Q)> = ids.iter().copied().zip(v).collect();
            basis.element_of(&coords)
        })
        .collect()
}

/// v_k = Σ_{i=1}^{|I|+1-k} (-1)^{ki} (-1)^{δ_i + … + δ_{i+k-2}} E_{k-1+i, i} for the odd osp families.
pub fn osp_odd_v(spec: &AlgebraSpec, k: usize) -> Result<SuperElement> {
    if !spec.family().is_osp_odd() {
        return Err(Error::NotOrthosymplectic {
            op: "osp_odd_v",
            family: spec.family().to_string(),
        });
    }
    let size = spec.size();
    let mut parts = Vec::new();
    for i in 1..=size + 1 - k {
        let dsum: i64 = (0..k.saturating_sub(1)).map(|l| spec.d(i + l) as i64).sum();
        let c = sign((k * i) as i64 + dsum);
        parts.push((c, spec.fold_e(k - 1 + i, i)?));
    }
    Ok(spec.lin(parts.iter().map(|(c, x)| (c.clone(), x))))
}

/// Closed-form kernel element of osp(2n|2n) for 2n+1 ≤ l ≤ 4n-1:
/// v_l = 2 Σ_{k=1}^{4n-l} (-1)^{T_{2n}(k) + kl + k + l + 1} E_{k', 4n+1-l-k}.
pub fn osp_even_v_upper(spec: &AlgebraSpec, l: usize) -> Result<SuperElement> {
    let n = spec.n();
    if spec.family() != Family::OspEven || !(2 * n + 1..4 * n).contains(&l) {
        return Err(Error::Consistency(format!(
            "upper kernel formula needs osp(2n|2n) and 2n+1 <= l <= 4n-1, got l = {l}"
        )));
    }
    let mut parts = Vec::new();
    for k in 1..=4 * n - l {
        let e = spec.t_sign(2 * n, k) as i64 + (k * l + k + l + 1) as i64;
        parts.push((q(2) * sign(e), spec.fold_e(spec.conj(k), 4 * n + 1 - l - k)?));
    }
    Ok(spec.lin(parts.iter().map(|(c, x)| (c.clone(), x))))
}

/// ṽ = E_{c,1} - E_{c+1,1} with c = |I|/2, for the even osp families.
pub fn osp_even_v_tilde(spec: &AlgebraSpec) -> Result<SuperElement> {
    let c = spec.size() / 2;
    Ok(spec.sub(&spec.fold_e(c, 1)?, &spec.fold_e(c + 1, 1)?))
}

/// A homogeneous basis of 𝔤^f inside 𝔭, labelled by `t` (v_t ∈ 𝔤_{(1-t)/2}).
///
/// osp(2n±1|2n) uses the closed-form v_t (t ≡ 0, 3 mod 4). osp(2n|2n) uses the closed forms
/// for 2n+1 ≤ t ≤ 4n-1 and for ṽ, and solves the kernel for t ≤ 2n. osp(2n+2|2n) takes ṽ
/// explicitly and solves for the rest. gl and sl solve the kernel on each graded component.
pub fn kerf_basis(basis: &Basis) -> Result<Vec<KerElem>> {
    let spec = basis.spec();
    let size = spec.size();
    let fam = spec.family();
    let mut out = Vec::new();
    let solved = |t: usize, tilde: bool, out: &mut Vec<KerElem>, skip: Option<&SuperElement>| {
        let doubled = 1 - t as i32;
        let mut found = kernel_on_component(basis, doubled);
        if let Some(known) = skip {
            // complement of an already-known element in a 2-dimensional component
            found = complement(basis, &found, known);
        }
        for elem in found {
            out.push(KerElem {
                t,
                tilde,
                elem,
                closed_form: false,
            });
        }
    };
    match fam {
        Family::OspOddUp | Family::OspOddDown => {
            for t in 1..=size {
                if t % 4 == 0 || t % 4 == 3 {
                    out.push(KerElem {
                        t,
                        tilde: false,
                        elem: osp_odd_v(spec, t)?,
                        closed_form: true,
                    });
                }
            }
        }
        Family::OspEven => {
            let n = spec.n();
            let vt = osp_even_v_tilde(spec)?;
            for t in 2..4 * n {
                if !(t % 4 == 0 || t % 4 == 3) {
                    continue;
                }
                if t > 2 * n {
                    out.push(KerElem {
                        t,
                        tilde: false,
                        elem: osp_even_v_upper(spec, t)?,
                        closed_form: true,
                    });
                } else if t == 2 * n {
                    solved(t, false, &mut out, Some(&vt));
                } else {
                    solved(t, false, &mut out, None);
                }
            }
            out.push(KerElem {
                t: 2 * n,
                tilde: true,
                elem: vt,
                closed_form: true,
            });
        }
        Family::OspEvenUp => {
            // the component of degree -n holds ṽ and, when 2n+1 ≡ 3 mod 4, one more element
            let n = spec.n();
            let vt = osp_even_v_tilde(spec)?;
            for t in 1..=size {
                let skip = (t == 2 * n + 1).then_some(&vt);
                solved(t, false, &mut out, skip);
            }
            out.push(KerElem {
                t: 2 * n + 1,
                tilde: true,
                elem: vt,
                closed_form: true,
            });
        }
        _ => {
            for t in 1..=size {
                solved(t, false, &mut out, None);
            }
        }
    }
    Ok(out)
}

/// Elements of `space` completing `known` to a basis of span(space).
fn complement(basis: &Basis, space: &[SuperElement], known: &SuperElement) -> Vec<SuperElement> {
    let mut chosen = vec![known.clone()];
    let mut out = Vec::new();
    for v in space {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if independent(basis.spec(), &trial) {
            chosen.push(v.clone());
            out.push(v.clone());
        }
    }
    out
}

/// Whether the given elements are linearly independent.
pub fn independent(spec: &AlgebraSpec, elems: &[SuperElement]) -> bool {
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
    linalg::rank(&rows, size * size) == elems.len()
}
