//! Gaussian rationals reduced into GF(p²), p = 2⁶¹ − 1 (p ≡ 3 mod 4, so
//! i² = −1 has no root in GF(p) and GF(p)[i] is a field). Reduction is a ring
//! homomorphism on scalars whose denominators are prime to p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::scalar::Scalar;

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x & P as u128) as u64 + (x >> 61) as u64;
    if r >= P { r - P } else { r }
}

fn add(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= P { r - P } else { r }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn residue(n: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue below p")
}

fn rational(q: &BigRational) -> Option<u64> {
    let d = residue(q.denom());
    (d != 0).then(|| mul(residue(q.numer()), pow(d, P - 2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) struct Gf {
    re: u64,
    im: u64,
}

impl Gf {
    /// `None` when a denominator is divisible by p.
    pub(crate) fn reduce(c: &Scalar) -> Option<Gf> {
        Some(Gf { re: rational(&c.re)?, im: rational(&c.im)? })
    }

    pub(crate) fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub(crate) fn mul(self, o: Gf) -> Gf {
        Gf {
            re: add(mul(self.re, o.re), P - mul(self.im, o.im)),
            im: add(mul(self.re, o.im), mul(self.im, o.re)),
        }
    }

    pub(crate) fn add(self, o: Gf) -> Gf {
        Gf { re: add(self.re, o.re), im: add(self.im, o.im) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_a_ring_map() {
        let x = Scalar::from_parts(3, 7, -2, 5);
        let y = Scalar::from_parts(-11, 4, 9, 13);
        let (gx, gy) = (Gf::reduce(&x).unwrap(), Gf::reduce(&y).unwrap());
        assert_eq!(Gf::reduce(&(&x * &y)).unwrap(), gx.mul(gy));
        assert_eq!(Gf::reduce(&(&x + &y)).unwrap(), gx.add(gy));
        assert!(Gf::reduce(&(&x - &x)).unwrap().is_zero());
        let big = Scalar::from_parts(1, P as i64, 0, 1);
        assert_eq!(Gf::reduce(&big), None);
    }
}
