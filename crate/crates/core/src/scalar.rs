//! Exact rational scalars and the integer combinatorics used by the n-products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn big(value: BigInt) -> Scalar {
    Scalar::from_integer(value)
}

/// n (n-1) ... (n-k+1); zero when k > n.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
    }
    acc
}

/// Falling factorial for a possibly negative base, as used by `(D a)(m) = -m a(m-1)`.
pub fn falling_signed(n: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= n - i;
    }
    acc
}

/// C(n, k) for n >= k >= 0, zero otherwise.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    falling(n, n)
}

pub fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Renders `p/q` or `p`.
pub fn render(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        let z = frac(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(falling_signed(-1, 2), BigInt::from(2));
        assert_eq!(factorial(4), BigInt::from(24));
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&frac(-1, 2)), "-1/2");
        assert_eq!(render(&int(3)), "3");
    }
}
