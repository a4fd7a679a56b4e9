//! Exact integer number theory: 2-adic valuations, multiplicative orders,
//! the gcd identities for `b^u ± 1`, and the product/alternating-sum building
//! blocks used by the coset-leader closed forms.
//!
//! All public operations are exact; values that can exceed 64 bits are
//! `BigUint`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Upper bound on successive-power steps in [`ord_mod`] for moduli without
/// known structure.
pub const ORD_STEP_CAP: u64 = 1 << 21;

/// 2-adic valuation: the largest `l` with `2^l | b`.
pub fn nu2(b: &BigUint) -> Result<u64> {
    if b.is_zero() {
        return Err(Error::InvalidInput("nu2(0) is undefined".into()));
    }
    Ok(b.trailing_zeros().unwrap_or(0))
}

/// Convenience form of [`nu2`] for machine integers.
pub fn nu2_u64(b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::InvalidInput("nu2(0) is undefined".into()));
    }
    Ok(b.trailing_zeros() as u64)
}

/// How an even integer sits relative to powers of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenDecomposition {
    /// True iff `m` is exactly a power of two.
    pub power_of_two: bool,
    /// `nu2(m)`.
    pub nu: u64,
}

/// Decomposes an even `m`: either `m = 2^nu` exactly, or
/// `m ≡ 2^nu (mod 2^(nu+1))` with `nu = nu2(m)`.
pub fn even_decompose(m: u64) -> Result<EvenDecomposition> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "even_decompose requires an even m >= 2, got {m}"
        )));
    }
    let nu = nu2_u64(m)?;
    let power_of_two = m == 1u64 << nu;
    if !power_of_two {
        debug_assert_eq!(m % (1 << (nu + 1)), 1 << nu);
    }
    Ok(EvenDecomposition { power_of_two, nu })
}

/// `q^e` as a `BigUint`.
pub fn pow_big(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Multiplicative order of `q` modulo `n`: the smallest `t >= 1` with
/// `q^t ≡ 1 (mod n)`.
///
/// When `n - 1` is a power of `q` (so `n = q^m + 1`), the order divides `2m`
/// and is found by scanning divisors of `2m`. Otherwise falls back to
/// successive powers, capped at [`ORD_STEP_CAP`] steps.
pub fn ord_mod(q: &BigUint, n: &BigUint) -> Result<u64> {
    let two = BigUint::from(2u32);
    if q < &two || n < &two {
        return Err(Error::InvalidInput("ord_mod requires q, n >= 2".into()));
    }
    if !q.gcd(n).is_one() {
        return Err(Error::InvalidInput(format!(
            "ord_mod requires gcd(q, n) = 1, got q = {q}, n = {n}"
        )));
    }
    // Structured modulus n = q^m + 1: the order divides 2m.
    if let Some(m) = log_exact(q, &(n - 1u32)) {
        let group = 2 * m;
        for d in 1..=group {
            if group % d == 0 && q.modpow(&BigUint::from(d), n).is_one() {
                return Ok(d);
            }
        }
        return Err(Error::Inconsistent(format!(
            "order of {q} mod {n} does not divide 2m = {group}"
        )));
    }
    let mut acc = q % n;
    for t in 1..=ORD_STEP_CAP {
        if acc.is_one() {
            return Ok(t);
        }
        acc = acc * q % n;
    }
    Err(Error::DeskScale(format!(
        "multiplicative order of {q} mod {n} exceeds the step cap {ORD_STEP_CAP}"
    )))
}

/// If `x = q^m` for some `m >= 1`, returns `m`.
fn log_exact(q: &BigUint, x: &BigUint) -> Option<u64> {
    if x < q {
        return None;
    }
    let mut rem = x.clone();
    let mut m = 0u64;
    while rem > BigUint::one() {
        let (quot, r) = rem.div_rem(q);
        if !r.is_zero() {
            return None;
        }
        rem = quot;
        m += 1;
    }
    Some(m)
}

/// `gcd(b^u + 1, b^v - 1)` via the case split
///
/// * `1` if `v / gcd(u, v)` is odd and `b` is even,
/// * `2` if `v / gcd(u, v)` is odd and `b` is odd,
/// * `b^gcd(u, v) + 1` if `v / gcd(u, v)` is even,
///
/// cross-asserted against the direct big-integer gcd.
pub fn gcd_plus_minus(b: u64, u: u64, v: u64) -> Result<BigUint> {
    if b < 2 || u == 0 || v == 0 {
        return Err(Error::InvalidInput(
            "gcd_plus_minus requires b >= 2 and u, v >= 1".into(),
        ));
    }
    let g = u.gcd(&v);
    let split = if (v / g) % 2 == 1 {
        BigUint::from(if b.is_multiple_of(2) { 1u32 } else { 2u32 })
    } else {
        pow_big(b, g) + 1u32
    };
    let direct = (pow_big(b, u) + 1u32).gcd(&(pow_big(b, v) - 1u32));
    if split != direct {
        return Err(Error::Inconsistent(format!(
            "gcd(b^u+1, b^v-1) case split gave {split}, direct gcd gave {direct} (b={b}, u={u}, v={v})"
        )));
    }
    Ok(split)
}

/// `gcd(b^u + 1, b^v + 1)` via the case split
///
/// * `b^gcd(u, v) + 1` if `nu2(u) = nu2(v)`,
/// * else `2` for odd `b` and `1` for even `b`,
///
/// cross-asserted against the direct big-integer gcd. (The even-`b`
/// mismatched-valuation value is 1, not 2: both arguments are odd then.)
pub fn gcd_plus_plus(b: u64, u: u64, v: u64) -> Result<BigUint> {
    if b < 2 || u == 0 || v == 0 {
        return Err(Error::InvalidInput(
            "gcd_plus_plus requires b >= 2 and u, v >= 1".into(),
        ));
    }
    let split = if nu2_u64(u)? == nu2_u64(v)? {
        pow_big(b, u.gcd(&v)) + 1u32
    } else {
        BigUint::from(if b.is_multiple_of(2) { 1u32 } else { 2u32 })
    };
    let direct = (pow_big(b, u) + 1u32).gcd(&(pow_big(b, v) + 1u32));
    if split != direct {
        return Err(Error::Inconsistent(format!(
            "gcd(b^u+1, b^v+1) case split gave {split}, direct gcd gave {direct} (b={b}, u={u}, v={v})"
        )));
    }
    Ok(split)
}

/// Non-negative remainder of `a` divided by `b`.
pub fn remainder(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if b.is_zero() {
        return Err(Error::InvalidInput("remainder by zero".into()));
    }
    Ok(a % b)
}

/// The product `(q-1)/2 * prod_{j=0..x} (q^(2^j) - 1)` for `x >= 0`, and
/// `(q-1)/2` for `x < 0`. Requires odd `q`.
pub fn psi(q: u64, x: i64) -> Result<BigUint> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "psi requires an odd q >= 3, got {q}"
        )));
    }
    let mut acc = BigUint::from((q - 1) / 2);
    if x >= 0 {
        for j in 0..=x as u64 {
            acc *= pow_big(q, 1u64 << j) - 1u32;
        }
    }
    Ok(acc)
}

/// The six-term alternating sum
/// `q^(8j) - q^(8j-1) + q^(8j-3) - q^(8j-4) + q^(8j-5) - q^(8j-7)`, `j >= 1`.
pub fn phi_term(q: u64, j: u64) -> Result<BigUint> {
    if j == 0 {
        return Err(Error::InvalidInput("phi_term requires j >= 1".into()));
    }
    let e = 8 * j;
    // Grouped so every partial difference stays non-negative.
    let sum = pow_big(q, e) - pow_big(q, e - 1) + pow_big(q, e - 3) - pow_big(q, e - 4)
        + pow_big(q, e - 5)
        - pow_big(q, e - 7);
    Ok(sum)
}

/// Deterministic Miller-Rabin primality test, valid for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    // Witness set proven sufficient below 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// A verified prime power `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl PrimePower {
    /// Factors `q` as `p^e` with `p` prime, rejecting anything else.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        // The least prime factor of a prime power q = p^e with e >= 2 is at
        // most q^(1/2), so trial division up to the integer square root either
        // finds p or proves q prime-or-composite; primality settles the rest.
        let mut p = q;
        let mut d = 2u64;
        while d.saturating_mul(d) <= q {
            if q.is_multiple_of(d) {
                p = d;
                break;
            }
            d += 1;
        }
        if p == q {
            if !is_prime_u64(q) {
                return Err(Error::InvalidInput(format!("{q} is not a prime power")));
            }
            return Ok(PrimePower { p: q, e: 1, q });
        }
        if !is_prime_u64(p) {
            return Err(Error::Inconsistent(format!(
                "least factor {p} of {q} is not prime"
            )));
        }
        let mut rem = q;
        let mut e = 0u32;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        if rem != 1 {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        Ok(PrimePower { p, e, q })
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
}
