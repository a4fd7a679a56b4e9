//! Closed forms for the largest q-cyclotomic coset leaders modulo
//! `n = (q^m + 1) / lambda`, with each value tagged by whether it is backed by
//! a proof or only by the numerically verified general formula.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::modmath::{nu2_u64, pow_big, psi, PrimePower};
use crate::{Error, Provenance, Result};

/// One ranked coset leader: rank 1 is the largest leader of the modulus
/// (or the largest the closed forms reach, for lambda = 2 with even m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaEntry {
    pub rank: usize,
    pub value: BigUint,
    /// Coset cardinality when the closed form pins it down.
    pub size: Option<u64>,
    pub provenance: Provenance,
}

/// The closed-form leader table for one `(q, m, lambda)`.
#[derive(Debug, Clone)]
pub struct DeltaSet {
    pub q: u64,
    pub m: u64,
    pub lambda: u64,
    pub n: BigUint,
    pub entries: Vec<DeltaEntry>,
}

impl DeltaSet {
    pub fn value(&self, rank: usize) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|e| e.rank == rank)
            .map(|e| &e.value)
    }
}

/// Shape of an even exponent `m >= 4`, determining which branch of the
/// third/fourth-leader formulas applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeTag {
    /// `m = 2^k`, `k >= 2`.
    PowerOfTwo { k: u64 },
    /// `m = 3 * 2^nu`.
    ThreeTimesPowerOfTwo { nu: u64 },
    /// `m = 2^nu + t * 2^(nu + 1)` with `t >= 2`.
    GeneralEven { nu: u64, t: u64 },
}

/// Classifies an even `m >= 4`.
pub fn classify(m: u64) -> Result<RegimeTag> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "requires even m >= 4, got {m}"
        )));
    }
    let nu = nu2_u64(m)?;
    let odd = m >> nu;
    Ok(match odd {
        1 => RegimeTag::PowerOfTwo { k: nu },
        3 => RegimeTag::ThreeTimesPowerOfTwo { nu },
        _ => RegimeTag::GeneralEven {
            nu,
            t: (odd - 1) / 2,
        },
    })
}

fn exact_div(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    let (d, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(d)
    } else {
        Err(Error::Inconsistent(format!(
            "expected {b} to divide {a} exactly"
        )))
    }
}

/// Whether the third/fourth-leader formulas are proven for this even `m`
/// (they are for m = 4, m = 8, and m ≡ 4 (mod 8) with m >= 12).
pub fn delta34_provenance(m: u64) -> Provenance {
    if m == 4 || m == 8 || (m >= 12 && m % 8 == 4) {
        Provenance::Proven
    } else {
        Provenance::Conjectural
    }
}

/// Second-largest coset leader modulo `q^m + 1` for even `m >= 2`:
/// `Psi_q(k - 1)` when `m = 2^k` with `k >= 2`, otherwise
/// `(q^m + 1) / (q^(2^nu) + 1) * Psi_q(nu - 1)` with `nu` the 2-adic
/// valuation of `m`.
pub fn delta2_even(q: u64, m: u64) -> Result<BigUint> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "requires even m >= 2, got {m}"
        )));
    }
    let nu = nu2_u64(m)?;
    if m >> nu == 1 && nu >= 2 {
        return psi(q, nu as i64 - 1);
    }
    let n = pow_big(q, m) + 1u32;
    let block = pow_big(q, 1 << nu) + 1u32;
    Ok(exact_div(&n, &block)? * psi(q, nu as i64 - 1)?)
}

/// Coset cardinality of the second-largest leader for even `m`.
pub fn delta2_size(m: u64) -> u64 {
    let nu = m.trailing_zeros() as u64;
    if m >> nu == 1 {
        2 * m
    } else {
        1 << (nu + 1)
    }
}

/// Third- and fourth-largest coset leaders modulo `q^m + 1` for even
/// `m >= 4`, with the provenance of the branch used.
///
/// For `m ≡ 8 (mod 16)`, `m >= 24`, the third leader is cross-checked
/// against the independent alternating expansion [`expansion_8mod16`].
pub fn delta34(q: u64, m: u64) -> Result<(BigUint, BigUint, Provenance)> {
    let d2 = delta2_even(q, m)?;
    let (d3, d4) = match classify(m)? {
        RegimeTag::PowerOfTwo { k } => {
            let d3 = &d2 - psi(q, k as i64 - 3)? * 2u32;
            let d4 = if k == 2 {
                &d3 - 1u32
            } else {
                &d2 - pow_big(q, 1 << (k - 2)) * psi(q, k as i64 - 4)? * 2u32
            };
            (d3, d4)
        }
        RegimeTag::ThreeTimesPowerOfTwo { nu } => {
            let d3 = general_delta3(q, nu, &d2)?;
            let d4 = &d3 - pow_big(q, 1 << (nu - 1)) * psi(q, nu as i64 - 1)? * 2u32;
            (d3, d4)
        }
        RegimeTag::GeneralEven { nu, .. } => {
            let d3 = general_delta3(q, nu, &d2)?;
            let d4 = &d3 - psi(q, nu as i64)? * 2u32;
            (d3, d4)
        }
    };
    if m >= 24 && m % 16 == 8 {
        let alt = expansion_8mod16(q, m)?;
        if alt != d3 {
            return Err(Error::Inconsistent(format!(
                "third-leader expansion disagrees at q = {q}, m = {m}: {alt} vs {d3}"
            )));
        }
    }
    Ok((d3, d4, delta34_provenance(m)))
}

fn general_delta3(q: u64, nu: u64, d2: &BigUint) -> Result<BigUint> {
    let num = (d2 + psi(q, nu as i64)?) * 2u32;
    let den = pow_big(q, 1 << (nu + 1));
    Ok(d2 - exact_div(&num, &den)?)
}

/// Independent alternating-power expansion of the third-largest leader for
/// `m ≡ 8 (mod 16)`, `m >= 24`.
pub fn expansion_8mod16(q: u64, m: u64) -> Result<BigUint> {
    if m < 24 || m % 16 != 8 {
        return Err(Error::InvalidInput(format!(
            "expansion requires m ≡ 8 (mod 16), m >= 24, got {m}"
        )));
    }
    let qb = BigInt::from(q);
    // Encoding: |e| is the exponent offset below m, sign(e) is the sign of
    // the term, so the head reads -q^(m-1)+q^(m-3)-q^(m-4)+q^(m-5)-q^(m-7)+...
    let head = [
        -1i64, 3, -4, 5, -7, 9, -11, 12, -13, 15, -16, 17, -19, 20, -21, 23,
    ];
    let mut acc: BigInt = BigInt::from((pow_big(q, m) - 1u32) / 2u32);
    acc = signed_terms(
        acc,
        &qb,
        head.iter().map(|&e| (m - e.unsigned_abs(), e > 0)),
    );
    for j in 1..=(m - 24) / 16 {
        let tail = [-1i64, 3, -4, 5, -7, 9, -11, 12, -13, 15];
        acc = signed_terms(
            acc,
            &qb,
            tail.iter().map(|&e| (16 * j - e.unsigned_abs(), e > 0)),
        );
    }
    if acc.is_negative() {
        return Err(Error::Inconsistent("expansion went negative".into()));
    }
    Ok(acc.to_biguint().unwrap())
}

fn signed_terms(mut acc: BigInt, q: &BigInt, terms: impl Iterator<Item = (u64, bool)>) -> BigInt {
    for (exp, positive) in terms {
        let t = q.pow(exp as u32);
        if positive {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Largest coset leaders modulo `(q^m + 1) / 2` for odd `m >= 3` with
/// `q ≡ 1 (mod 4)`: the first two, with sizes 2 and 2m.
fn odd_m_lambda2(q: u64, m: u64) -> Result<Vec<DeltaEntry>> {
    if q % 4 != 1 {
        return Err(Error::Uncovered(format!(
            "lambda = 2 with odd m is covered only for q ≡ 1 (mod 4), got q = {q}"
        )));
    }
    let (d1, d2) = odd_m_tail(q, m)?;
    Ok(vec![
        DeltaEntry {
            rank: 1,
            value: exact_div(&d1, &BigUint::from(2u32))?,
            size: Some(2),
            provenance: Provenance::Proven,
        },
        DeltaEntry {
            rank: 2,
            value: exact_div(&d2, &BigUint::from(2u32))?,
            size: Some(2 * m),
            provenance: Provenance::Proven,
        },
    ])
}

/// `( (q-1)(q^m+1)/(2(q+1)), (q-1)(q^m - 2q^(m-2) - 1)/(2(q+1)) )`,
/// the second and third largest leaders modulo `q^m + 1` for odd `m >= 3`.
fn odd_m_tail(q: u64, m: u64) -> Result<(BigUint, BigUint)> {
    let den = BigUint::from(2 * (q + 1));
    let a = exact_div(&((pow_big(q, m) + 1u32) * (q - 1)), &den)?;
    let b = exact_div(
        &((pow_big(q, m) - pow_big(q, m - 2) * 2u32 - 1u32) * (q - 1)),
        &den,
    )?;
    Ok((a, b))
}

/// The closed-form table of the largest coset leaders modulo
/// `n = (q^m + 1) / lambda`.
///
/// Covered regimes: lambda = 1 (any m >= 2), and lambda = 2 with even m or
/// with odd m and `q ≡ 1 (mod 4)`. Anything else returns
/// [`Error::Uncovered`].
pub fn delta_set(q: u64, m: u64, lambda: u64) -> Result<DeltaSet> {
    let pp = PrimePower::new(q)?;
    if !pp.is_odd() {
        return Err(Error::InvalidInput(format!("requires odd q, got {q}")));
    }
    if m < 2 {
        return Err(Error::InvalidInput(format!("requires m >= 2, got {m}")));
    }
    if lambda == 0 || !(q + 1).is_multiple_of(lambda) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must divide q + 1 = {}",
            q + 1
        )));
    }
    let big_n = pow_big(q, m) + 1u32;
    let n = exact_div(&big_n, &BigUint::from(lambda))
        .map_err(|_| Error::InvalidInput(format!("lambda = {lambda} does not divide q^{m} + 1")))?;
    let entries = match (lambda, m.is_multiple_of(2)) {
        (1, true) => {
            let mut v = vec![
                DeltaEntry {
                    rank: 1,
                    value: exact_div(&big_n, &BigUint::from(2u32))?,
                    size: Some(1),
                    provenance: Provenance::Proven,
                },
                DeltaEntry {
                    rank: 2,
                    value: delta2_even(q, m)?,
                    size: Some(delta2_size(m)),
                    provenance: Provenance::Proven,
                },
            ];
            if m >= 4 {
                let (d3, d4, prov) = delta34(q, m)?;
                v.push(DeltaEntry {
                    rank: 3,
                    value: d3,
                    size: Some(2 * m),
                    provenance: prov,
                });
                v.push(DeltaEntry {
                    rank: 4,
                    value: d4,
                    size: Some(2 * m),
                    provenance: prov,
                });
            }
            v
        }
        (1, false) => {
            let (d2, d3) = odd_m_tail(q, m)?;
            vec![
                DeltaEntry {
                    rank: 1,
                    value: exact_div(&big_n, &BigUint::from(2u32))?,
                    size: Some(1),
                    provenance: Provenance::Proven,
                },
                DeltaEntry {
                    rank: 2,
                    value: d2,
                    size: Some(2),
                    provenance: Provenance::Proven,
                },
                DeltaEntry {
                    rank: 3,
                    value: d3,
                    size: Some(2 * m),
                    provenance: Provenance::Proven,
                },
            ]
        }
        (2, true) => {
            let mut v = vec![DeltaEntry {
                rank: 1,
                value: exact_div(&delta2_even(q, m)?, &BigUint::from(2u32))?,
                size: Some(delta2_size(m)),
                provenance: Provenance::Proven,
            }];
            if m >= 4 {
                let nu = nu2_u64(m)?;
                if (nu == 1 || nu == 2) && m >= 3 << nu {
                    let (d3, d4, prov) = delta34(q, m)?;
                    v.push(DeltaEntry {
                        rank: 2,
                        value: exact_div(&d3, &BigUint::from(2u32))?,
                        size: Some(2 * m),
                        provenance: prov,
                    });
                    v.push(DeltaEntry {
                        rank: 3,
                        value: exact_div(&d4, &BigUint::from(2u32))?,
                        size: Some(2 * m),
                        provenance: prov,
                    });
                }
            }
            v
        }
        (2, false) => odd_m_lambda2(q, m)?,
        _ => {
            return Err(Error::Uncovered(format!(
                "no closed leader table for lambda = {lambda}"
            )))
        }
    };
    Ok(DeltaSet {
        q,
        m,
        lambda,
        n,
        entries,
    })
}

/// Converts a closed-form value to u64 for brute-force cross-checks.
pub fn to_u64(v: &BigUint) -> Result<u64> {
    v.try_into()
        .map_err(|_| Error::DeskScale(format!("{v} exceeds u64")))
}
