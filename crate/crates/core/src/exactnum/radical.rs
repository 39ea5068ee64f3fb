use num_bigint::BigUint;
use num_traits::{One, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `n = k² · m` with `m` square-free.
///
/// Trial division runs up to `min(10⁶, ∛n)`; whatever is left then has at
/// most two prime factors, or only large ones, and a perfect-square test
/// finishes the job. Radicands carrying a repeated prime factor above `10⁶`
/// next to a third large factor are left partially reduced.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut k = BigUint::one();
    let mut m = BigUint::one();
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut c = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > c {
            break;
        }
        let p2 = &pb * &pb;
        while (&c % &p2).is_zero() {
            c /= &p2;
            k *= &pb;
        }
        if (&c % &pb).is_zero() {
            c /= &pb;
            m *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = c.sqrt();
    if &s * &s == c {
        k *= s;
    } else {
        m *= c;
    }
    (k, m)
}
