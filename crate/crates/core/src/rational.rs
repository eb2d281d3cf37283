//! Exact rational helpers shared by every module.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `p/q` or `p` for integers.
pub fn render(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// A doubled half-integer `v/2` rendered as a reduced rational string.
pub fn render_half(doubled: i64) -> String {
    render(&qf(doubled, 2))
}

pub fn is_minus_one(c: &Q) -> bool {
    c.is_negative() && c.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(render(&qf(-3, 6)), "-1/2");
        assert_eq!(render(&q(4)), "4");
        assert_eq!(parse("-1/2"), Some(qf(-1, 2)));
        assert_eq!(parse("7"), Some(q(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(render_half(3), "3/2");
        assert_eq!(render_half(4), "2");
    }
}
