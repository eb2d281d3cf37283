//! Random inputs and the engine identities shared by the property tests and the acceptance run.

#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use susyw::chibra::Affine;
use susyw::dops::{substitute_chi, ChiDOp, DOp};
use susyw::liesuper::{AlgebraSpec, Basis, Family};
use susyw::rational::{q, sign};
use susyw::superpoly::{DiffPoly, GenSymbol};

pub const DEPTH: i32 = -8;
pub const CASES: u32 = 128;

pub fn bases() -> &'static [Basis; 2] {
    static B: OnceLock<[Basis; 2]> = OnceLock::new();
    B.get_or_init(|| {
        let gl = AlgebraSpec::new(Family::GlUp, 1).unwrap();
        let osp = AlgebraSpec::new(Family::OspEven, 1).unwrap();
        [Basis::new(&gl).unwrap(), Basis::new(&osp).unwrap()]
    })
}

/// (id, derivative order) pairs and a coefficient; ids are reduced mod the basis size.
pub type RawMono = (Vec<(usize, u32)>, i64);
pub type RawPoly = Vec<RawMono>;
pub type RawOp = Vec<(i32, RawMono)>;

pub fn raw_mono(max_len: usize) -> impl Strategy<Value = RawMono> {
    (prop::collection::vec((0usize..64, 0u32..3), 1..=max_len), -3i64..=3)
        .prop_map(|(m, c)| (m, if c == 0 { 1 } else { c }))
}

pub fn raw_poly(max_terms: usize, max_len: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(raw_mono(max_len), 1..=max_terms)
}

/// Terms Σ aᵢ Dⁱ with powers in `lo..=hi`.
pub fn raw_op(lo: i32, hi: i32) -> impl Strategy<Value = RawOp> {
    prop::collection::vec((lo..=hi, raw_mono(2)), 1..=3)
}

fn mono(basis: &Basis, (syms, c): &RawMono) -> DiffPoly {
    let raw: Vec<GenSymbol> = syms
        .iter()
        .map(|&(id, d)| GenSymbol::of(basis, id % basis.dim(), d))
        .collect();
    DiffPoly::from_raw(&raw, q(*c))
}

/// A homogeneous polynomial: terms whose parity differs from the first one are dropped.
pub fn poly(basis: &Basis, raw: &RawPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    let mut parity = None;
    for r in raw {
        let m = mono(basis, r);
        let Some(p) = m.parity() else { continue };
        if *parity.get_or_insert(p) == p {
            out = out.add(&m);
        }
    }
    out
}

/// A homogeneous operator, by the same rule with p(a Dⁱ) = p(a) + i.
pub fn op(basis: &Basis, raw: &RawOp) -> DOp {
    let mut out = DOp::zero();
    let mut parity = None;
    for (i, r) in raw {
        let a = mono(basis, r);
        let Some(p) = a.parity() else { continue };
        let total = (p as i32 + i).rem_euclid(2);
        if *parity.get_or_insert(total) == total {
            out = out.add(&DOp::monomial(a, *i));
        }
    }
    out
}

fn pty(p: &DiffPoly) -> i64 {
    p.parity().unwrap_or(0) as i64
}

type Outcome = Result<(), TestCaseError>;

pub fn sesquilinearity(which: usize, p: &RawPoly, q: &RawPoly) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let (p, q) = (poly(basis, p), poly(basis, q));
    let pq = eng.bracket(&p, &q);
    prop_assert_eq!(eng.bracket(&p.apply_d(), &q), pq.chi_left());
    let right = pq.d_plus_chi().scale(&sign(pty(&p) + 1));
    prop_assert_eq!(eng.bracket(&p, &q.apply_d()), right);
    Ok(())
}

pub fn leibniz(which: usize, a: &RawPoly, b: &RawPoly, c: &RawPoly) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let (a, b, c) = (poly(basis, a), poly(basis, b), poly(basis, c));
    let lhs = eng.bracket(&a, &b.mul(&c));
    let rhs = eng
        .bracket(&a, &c)
        .left_mul(&b)
        .scale(&sign((pty(&a) + 1) * pty(&b)))
        .add(&eng.bracket(&a, &b).right_mul(&c));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn right_leibniz(which: usize, a: &RawPoly, b: &RawPoly, c: &RawPoly) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let (a, b, c) = (poly(basis, a), poly(basis, b), poly(basis, c));
    let (pa, pb, pc) = (pty(&a), pty(&b), pty(&c));
    let lhs = eng.bracket(&a.mul(&b), &c);
    let rhs = eng
        .bracket(&a, &c)
        .arrow(&b)
        .scale(&sign(pc * pb))
        .add(&eng.bracket(&b, &c).arrow(&a).scale(&sign(pa * (pb + pc))));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn derivative_through_adjoint_action(which: usize, p: &RawPoly, a: &RawOp) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let (p, a) = (poly(basis, p), op(basis, a));
    let s = sign(pty(&p) + 1);
    let lhs = eng.ad_chi(&p, &a.d_left(), false);
    let rhs = eng.ad_chi(&p, &a, false).d_plus_chi_left().scale(&s);
    prop_assert!(lhs.diff_exact(&rhs).is_zero());
    Ok(())
}

pub fn inverse_derivative_through_adjoint_action(which: usize, p: &RawPoly, a: &RawOp) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let (p, a) = (poly(basis, p), op(basis, a));
    let s = sign(pty(&p) + 1);
    let lhs = eng.ad_chi(&p, &a.dinv_left(DEPTH), false);
    let rhs = eng.ad_chi(&p, &a, false).chi_d_inv_left(DEPTH).scale(&s);
    prop_assert!(lhs.diff_exact(&rhs).is_zero());
    // the comparison has to reach well below the top of the operator
    prop_assert!(lhs.floor().unwrap_or(i32::MIN) <= DEPTH + 4);
    Ok(())
}

pub fn product_rule(which: usize, p: &RawPoly, a: &RawOp, b: &RawOp) -> Outcome {
    let basis = &bases()[which];
    let eng = Affine::new(basis);
    let p = poly(basis, p);
    let (a, b) = (op(basis, a), op(basis, b));
    let pa = a.parity().unwrap_or(0) as i64;
    let lhs = eng.ad_chi(&p, &a.compose(&b, DEPTH), false);
    let first = substitute_chi(&a, Some(DEPTH))
        .unwrap()
        .compose(&eng.ad_chi(&p, &b, false), DEPTH)
        .scale(&sign(pa * (pty(&p) + 1)));
    let rhs = first.add(&eng.ad_chi(&p, &a, false).compose_dop(&b, DEPTH));
    prop_assert!(lhs.diff_exact(&rhs).is_zero());
    Ok(())
}

pub fn adjoint_involution(which: usize, a: &RawOp) -> Outcome {
    let a = op(&bases()[which], a);
    let twice = a.adjoint_star().unwrap().adjoint_star().unwrap();
    prop_assert_eq!(twice, a);
    Ok(())
}

pub fn associativity(which: usize, a: &RawOp, b: &RawOp, c: &RawOp) -> Outcome {
    let basis = &bases()[which];
    let (a, b, c) = (op(basis, a), op(basis, b), op(basis, c));
    let left = a.compose(&b, DEPTH).compose(&c, DEPTH);
    let right = a.compose(&b.compose(&c, DEPTH), DEPTH);
    prop_assert!(left.diff_exact(&right).is_zero());
    Ok(())
}

pub fn inverse_derivative_inverts(which: usize, a: &RawOp) -> Outcome {
    let a = op(&bases()[which], a);
    prop_assert!(a.dinv_left(DEPTH).d_left().diff_exact(&a).is_zero());
    prop_assert!(a.d_left().dinv_left(DEPTH).diff_exact(&a).is_zero());
    Ok(())
}

/// (χ+D)⁻¹ is a left inverse of χ+D on a coefficient.
pub fn chi_plus_d_left_inverse() -> bool {
    let basis = &bases()[0];
    let x = DiffPoly::symbol(GenSymbol::of(basis, 0, 0));
    let one = ChiDOp::from_dop(&DOp::coeff_op(x));
    one.d_plus_chi_left().chi_d_inv_left(DEPTH).diff_exact(&one).is_zero()
}

pub fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    }
}

/// Runs every identity with a fixed-seed runner; names of the failing ones come back.
pub fn run_all() -> Vec<String> {
    let mut failed = Vec::new();
    let mut check = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failed.push(format!("{name}: {e}"));
        }
    };
    let w = || 0usize..2;
    let pl = || raw_poly(3, 2);
    let ps = || raw_poly(2, 2);
    let runner = || TestRunner::new_with_rng(config(), TestRng::deterministic_rng(config().rng_algorithm));
    fn err<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> String {
        e.to_string()
    }

    check("sesquilinearity", runner().run(&(w(), pl(), pl()), |(x, p, q)| sesquilinearity(x, &p, &q)).map_err(err));
    check("leibniz", runner().run(&(w(), ps(), ps(), ps()), |(x, a, b, c)| leibniz(x, &a, &b, &c)).map_err(err));
    check("right leibniz", runner().run(&(w(), ps(), ps(), ps()), |(x, a, b, c)| right_leibniz(x, &a, &b, &c)).map_err(err));
    check(
        "D through ad",
        runner()
            .run(&(w(), ps(), raw_op(-2, 2)), |(x, p, a)| derivative_through_adjoint_action(x, &p, &a))
            .map_err(err),
    );
    check(
        "D^-1 through ad",
        runner()
            .run(&(w(), ps(), raw_op(-2, 2)), |(x, p, a)| inverse_derivative_through_adjoint_action(x, &p, &a))
            .map_err(err),
    );
    check(
        "product rule",
        runner()
            .run(&(w(), ps(), raw_op(-1, 2), raw_op(-1, 2)), |(x, p, a, b)| product_rule(x, &p, &a, &b))
            .map_err(err),
    );
    check("A** = A", runner().run(&(w(), raw_op(0, 3)), |(x, a)| adjoint_involution(x, &a)).map_err(err));
    check(
        "associativity",
        runner()
            .run(&(w(), raw_op(-2, 2), raw_op(-2, 2), raw_op(-2, 2)), |(x, a, b, c)| associativity(x, &a, &b, &c))
            .map_err(err),
    );
    check("D D^-1 = 1", runner().run(&(w(), raw_op(-2, 2)), |(x, a)| inverse_derivative_inverts(x, &a)).map_err(err));
    check("(chi+D)^-1", chi_plus_d_left_inverse().then_some(()).ok_or_else(|| "residual".to_string()));
    failed
}
