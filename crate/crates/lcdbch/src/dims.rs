//! BCH codes of length `n = (q^m + 1) / lambda`: defining sets, exact
//! dimensions by coset walks, and closed-form dimensions in the regimes where
//! the leader tables pin them down.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::cosets::BitSet;
use crate::leaders::{delta34_provenance, delta_set, to_u64};
use crate::modmath::{nu2_u64, pow_big, PrimePower};
use crate::{Error, Provenance, Result};

/// Memory guard for defining-set walks (one bit per residue).
pub const DEFSET_CAP: u64 = 100_000_000;

/// Parameters of the BCH code over GF(q) of length `n = (q^m + 1) / lambda`
/// with designed distance `delta` and root offset `b`: the generator is the
/// least common multiple of the minimal polynomials of `beta^b, ...,
/// beta^(b + delta - 2)` for a primitive n-th root of unity `beta`.
///
/// `delta` is the literal designed distance of the code. The closed-form
/// leader intervals index codes by `delta - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BchSpec {
    pub q: u64,
    pub m: u64,
    pub lambda: u64,
    pub delta: u64,
    pub b: u64,
}

impl BchSpec {
    pub fn new(q: u64, m: u64, lambda: u64, delta: u64, b: u64) -> Result<Self> {
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
        let (n, rem) = big_n.div_rem(&BigUint::from(lambda));
        if !rem.is_zero() {
            return Err(Error::InvalidInput(format!(
                "lambda = {lambda} does not divide q^{m} + 1"
            )));
        }
        if delta < 2 || BigUint::from(delta) > n {
            return Err(Error::InvalidInput(format!(
                "designed distance {delta} out of range 2..={n}"
            )));
        }
        if BigUint::from(b) >= n {
            return Err(Error::InvalidInput(format!(
                "offset b = {b} must be below n = {n}"
            )));
        }
        Ok(BchSpec {
            q,
            m,
            lambda,
            delta,
            b,
        })
    }

    pub fn n_big(&self) -> BigUint {
        (pow_big(self.q, self.m) + 1u32) / self.lambda
    }

    pub fn n_u64(&self) -> Result<u64> {
        to_u64(&self.n_big())
    }
}

/// The defining set `T = C_b ∪ C_(b+1) ∪ ... ∪ C_(b+delta-2)` as a bitmap
/// over `Z_n`.
pub struct DefiningSet {
    n: u64,
    bits: BitSet,
    cardinality: u64,
}

impl DefiningSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn contains(&self, i: u64) -> bool {
        i < self.n && self.bits.get(i as usize)
    }
}

/// Walks the cosets of the `delta - 1` consecutive root exponents.
pub fn defining_set(spec: &BchSpec) -> Result<DefiningSet> {
    let n = spec.n_u64()?;
    if n > DEFSET_CAP {
        return Err(Error::DeskScale(format!(
            "n = {n} exceeds the defining-set cap {DEFSET_CAP}"
        )));
    }
    let mut bits = BitSet::new(n as usize);
    let mut cardinality = 0u64;
    for j in 0..=spec.delta - 2 {
        let root = (spec.b + j) % n;
        if bits.get(root as usize) {
            continue;
        }
        let mut t = root;
        loop {
            bits.set(t as usize);
            cardinality += 1;
            t = ((t as u128 * spec.q as u128) % n as u128) as u64;
            if t == root {
                break;
            }
        }
    }
    Ok(DefiningSet {
        n,
        bits,
        cardinality,
    })
}

/// `k = n - |T|`, computed from the actual defining set.
pub fn dimension_exact(spec: &BchSpec) -> Result<u64> {
    let t = defining_set(spec)?;
    Ok(t.n - t.cardinality)
}

/// Lower bound on the minimum distance. For `b = 0` the code contains
/// `beta^(-(delta-2)), ..., beta^0, ..., beta^(delta-2)` among its generator
/// roots (the defining set is closed under negation), which sharpens the
/// usual bound `delta` to `2(delta - 1)`.
pub fn distance_lower_bound(spec: &BchSpec) -> u64 {
    if spec.b == 0 {
        2 * (spec.delta - 1)
    } else {
        spec.delta
    }
}

/// One dimension plateau: every designed-distance index `D` (the closed forms
/// index codes by `D = delta - 1`) with `d_lo <= D <= d_hi` gives a code of
/// dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeRow {
    pub d_lo: BigUint,
    pub d_hi: BigUint,
    pub k: u64,
    pub provenance: Provenance,
}

/// The dimension plateaus spanned by the closed-form leader table of
/// `(q, m, lambda)`, for codes with `b = 0`, indexed by `D = delta - 1`.
pub fn range_table(q: u64, m: u64, lambda: u64) -> Result<Vec<RangeRow>> {
    let one = BigUint::from(1u32);
    match (lambda, m.is_multiple_of(2)) {
        (1, true) => {
            let ks: [u64; 4] = if m == 4 {
                [1, 9, 17, 25]
            } else if m == 8 {
                [1, 17, 33, 49]
            } else if m >= 12 && m % 8 == 4 {
                [1, 9, 2 * m + 9, 4 * m + 9]
            } else {
                return Err(Error::Uncovered(format!(
                    "no dimension table for lambda = 1, m = {m}"
                )));
            };
            let ds = delta_set(q, m, 1)?;
            let d: Vec<&BigUint> = (1..=4).map(|r| ds.value(r).unwrap()).collect();
            Ok(vec![
                RangeRow {
                    d_lo: d[1] + &one,
                    d_hi: d[0].clone(),
                    k: ks[0],
                    provenance: Provenance::Proven,
                },
                RangeRow {
                    d_lo: d[2] + &one,
                    d_hi: d[1].clone(),
                    k: ks[1],
                    provenance: Provenance::Proven,
                },
                RangeRow {
                    d_lo: d[3] + &one,
                    d_hi: d[2].clone(),
                    k: ks[2],
                    provenance: Provenance::Proven,
                },
                RangeRow {
                    d_lo: d[3].clone(),
                    d_hi: d[3].clone(),
                    k: ks[3],
                    provenance: Provenance::Proven,
                },
            ])
        }
        (2, false) => {
            if q % 4 != 1 {
                return Err(Error::Uncovered(format!(
                    "no dimension table for lambda = 2, odd m, q = {q} (needs q ≡ 1 mod 4)"
                )));
            }
            let ds = delta_set(q, m, 2)?;
            let (d1, d2) = (ds.value(1).unwrap(), ds.value(2).unwrap());
            Ok(vec![
                RangeRow {
                    d_lo: d2 + &one,
                    d_hi: d1.clone(),
                    k: 2,
                    provenance: Provenance::Proven,
                },
                RangeRow {
                    d_lo: d2.clone(),
                    d_hi: d2.clone(),
                    k: 2 + 2 * m,
                    provenance: Provenance::Proven,
                },
            ])
        }
        (2, true) => {
            let nu = nu2_u64(m)?;
            if !(nu == 1 || nu == 2) || m < 3 << nu {
                return Err(Error::Uncovered(format!(
                    "no dimension table for lambda = 2, m = {m}"
                )));
            }
            let prov = delta34_provenance(m);
            let ds = delta_set(q, m, 2)?;
            let d: Vec<&BigUint> = (1..=3).map(|r| ds.value(r).unwrap()).collect();
            let base = 1u64 << (nu + 1);
            Ok(vec![
                RangeRow {
                    d_lo: d[1] + &one,
                    d_hi: d[0].clone(),
                    k: base,
                    provenance: prov,
                },
                RangeRow {
                    d_lo: d[2] + &one,
                    d_hi: d[1].clone(),
                    k: 2 * m + base,
                    provenance: prov,
                },
                RangeRow {
                    d_lo: d[2].clone(),
                    d_hi: d[2].clone(),
                    k: 4 * m + base,
                    provenance: prov,
                },
            ])
        }
        _ => Err(Error::Uncovered(format!(
            "no dimension table for lambda = {lambda}, m = {m}"
        ))),
    }
}

/// Closed-form dimension for codes with `b = 0`, dispatching between the
/// plateau tables near the top leaders and the interval formulas for small
/// designed distances.
pub fn dimension_closed_form(spec: &BchSpec) -> Result<(u64, Provenance)> {
    if spec.b != 0 {
        return Err(Error::Uncovered("closed forms cover only b = 0".into()));
    }
    let d = spec.delta - 1;
    match (spec.lambda, spec.m.is_multiple_of(2)) {
        (1, true) => table_lookup(spec, d),
        (2, false) => interval_dimension_odd(spec, d).or_else(|e| match e {
            Error::Uncovered(_) => table_lookup(spec, d),
            other => Err(other),
        }),
        (2, true) => interval_dimension_even(spec, d).or_else(|e| match e {
            Error::Uncovered(_) => table_lookup(spec, d),
            other => Err(other),
        }),
        (lambda, false) if lambda > 2 => interval_dimension_odd(spec, d),
        _ => Err(Error::Uncovered(format!(
            "no closed dimension form for lambda = {}, m = {}",
            spec.lambda, spec.m
        ))),
    }
}

fn table_lookup(spec: &BchSpec, d: u64) -> Result<(u64, Provenance)> {
    let table = range_table(spec.q, spec.m, spec.lambda)?;
    let d = BigUint::from(d);
    for row in &table {
        if row.d_lo <= d && d <= row.d_hi {
            return Ok((row.k, row.provenance));
        }
    }
    Err(Error::Uncovered(format!(
        "designed-distance index {d} outside the tabulated plateaus"
    )))
}

/// Dimension for odd `m`, `1 < lambda < q + 1`, in the low interval
/// `2 <= D <= q^((m+1)/2)/lambda + 1`: counts the cosets of the root
/// exponents `1..D-1` through the closed leader description.
fn interval_dimension_odd(spec: &BchSpec, d: u64) -> Result<(u64, Provenance)> {
    let (q, m, lambda) = (spec.q, spec.m, spec.lambda);
    if m % 2 == 0 || m < 3 || lambda <= 1 || lambda > q {
        return Err(Error::Uncovered(format!(
            "interval formula needs odd m >= 3 and 1 < lambda < q + 1, got m = {m}, lambda = {lambda}"
        )));
    }
    let half_pow = q
        .checked_pow(m.div_ceil(2) as u32)
        .ok_or_else(|| Error::DeskScale("q^((m+1)/2) exceeds u64".into()))?;
    let e = d - 1;
    if e > half_pow / lambda {
        return Err(Error::Uncovered(format!(
            "designed-distance index {d} outside the interval regime"
        )));
    }
    let n = spec.n_u64()?;
    let k = if lambda == 3 && m == 3 && q > 3 && q % 3 == 2 {
        let s_star = (q * q - q + 1) / 3;
        if d <= s_star {
            n - 6 * (e - e / q) - 1
        } else {
            n - 6 * (s_star - 1 - e / q) - 3
        }
    } else {
        let cap = if m.div_ceil(2) % 2 == 1 {
            (half_pow + 1) / lambda - q / lambda
        } else {
            (half_pow - 1) / lambda - (q - 2) / lambda
        };
        if d <= cap {
            n - 2 * m * (e - e / q) - 1
        } else {
            n - 2 * m * (cap - 1 - e / q) - 1
        }
    };
    Ok((k, Provenance::Proven))
}

/// Dimension for even `m >= 4`, `lambda = 2`, in the low interval
/// `2 <= D <= q^(m/2)/2 + 1`.
fn interval_dimension_even(spec: &BchSpec, d: u64) -> Result<(u64, Provenance)> {
    let (q, m) = (spec.q, spec.m);
    if m < 4 {
        return Err(Error::Uncovered(format!(
            "interval formula needs m >= 4, got {m}"
        )));
    }
    let half_pow = q
        .checked_pow((m / 2) as u32)
        .ok_or_else(|| Error::DeskScale("q^(m/2) exceeds u64".into()))?;
    let e = d - 1;
    if e > half_pow / 2 {
        return Err(Error::Uncovered(format!(
            "designed-distance index {d} outside the interval regime"
        )));
    }
    let n = spec.n_u64()?;
    Ok((n - 2 * m * (e - e / q) - 1, Provenance::Proven))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u64, m: u64, lambda: u64, delta: u64) -> BchSpec {
        BchSpec::new(q, m, lambda, delta, 0).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(BchSpec::new(3, 4, 1, 2, 0).is_ok());
        assert!(BchSpec::new(3, 4, 3, 2, 0).is_err()); // 3 does not divide 4
        assert!(BchSpec::new(3, 4, 4, 2, 0).is_err()); // 4 does not divide 82
        assert!(BchSpec::new(3, 4, 1, 1, 0).is_err()); // delta too small
        assert!(BchSpec::new(3, 4, 1, 83, 0).is_err()); // delta above n
        assert!(BchSpec::new(3, 4, 1, 2, 82).is_err()); // b above n - 1
        assert!(BchSpec::new(2, 4, 1, 2, 0).is_err()); // even q
    }

    #[test]
    fn defining_set_basics() {
        let t = defining_set(&spec(3, 4, 1, 3)).unwrap();
        // C_0 ∪ C_1: {0} plus the 8 elements of the coset of 1.
        assert_eq!(t.cardinality(), 9);
        assert!(t.contains(0));
        assert!(t.contains(1));
        assert!(t.contains(3));
        assert!(!t.contains(2));
        assert_eq!(dimension_exact(&spec(3, 4, 1, 3)).unwrap(), 73);
    }

    #[test]
    fn exact_dimensions_match_known_codes() {
        assert_eq!(dimension_exact(&spec(3, 4, 1, 15)).unwrap(), 17);
        assert_eq!(dimension_exact(&spec(3, 4, 1, 17)).unwrap(), 9);
        assert_eq!(dimension_exact(&spec(3, 8, 1, 1281)).unwrap(), 17);
        assert_eq!(dimension_exact(&spec(3, 8, 1, 1277)).unwrap(), 33);
        assert_eq!(dimension_exact(&spec(5, 3, 3, 8)).unwrap(), 11);
        assert_eq!(dimension_exact(&spec(5, 3, 3, 9)).unwrap(), 9);
        assert_eq!(dimension_exact(&spec(5, 4, 2, 11)).unwrap(), 248);
        assert_eq!(dimension_exact(&spec(5, 3, 2, 21)).unwrap(), 2);
        assert_eq!(dimension_exact(&spec(5, 3, 2, 20)).unwrap(), 8);
        assert_eq!(dimension_exact(&spec(3, 6, 2, 72)).unwrap(), 16);
        assert_eq!(dimension_exact(&spec(3, 6, 2, 66)).unwrap(), 28);
        assert_eq!(dimension_exact(&spec(3, 12, 1, 103697)).unwrap(), 9);
        assert_eq!(dimension_exact(&spec(3, 12, 1, 103665)).unwrap(), 33);
    }

    #[test]
    fn closed_form_matches_known_codes() {
        for (q, m, lambda, delta, k) in [
            (3u64, 4u64, 1u64, 15u64, 17u64),
            (3, 4, 1, 17, 9),
            (3, 8, 1, 1281, 17),
            (3, 8, 1, 1277, 33),
            (5, 3, 3, 8, 11),
            (5, 3, 3, 9, 9),
            (5, 4, 2, 11, 248),
            (5, 3, 2, 21, 2),
            (5, 3, 2, 20, 8),
            (3, 6, 2, 72, 16),
            (3, 6, 2, 66, 28),
            (3, 12, 1, 103697, 9),
            (3, 12, 1, 103665, 33),
        ] {
            let s = spec(q, m, lambda, delta);
            let (got, _) = dimension_closed_form(&s).unwrap();
            assert_eq!(got, k, "q={q} m={m} lambda={lambda} delta={delta}");
        }
    }

    #[test]
    fn table_plateaus_and_edges() {
        // m = 4, lambda = 1: plateaus at k = 1, 9, 17, 25.
        let rows = range_table(3, 4, 1).unwrap();
        let ks: Vec<u64> = rows.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![1, 9, 17, 25]);
        assert_eq!(dimension_closed_form(&spec(3, 4, 1, 42)).unwrap().0, 1);
        assert_eq!(dimension_closed_form(&spec(3, 4, 1, 18)).unwrap().0, 1);
        assert_eq!(dimension_closed_form(&spec(3, 4, 1, 14)).unwrap().0, 25);
        assert!(matches!(
            dimension_closed_form(&spec(3, 4, 1, 13)),
            Err(Error::Uncovered(_))
        ));
        // m ≡ 4 (mod 8), m >= 12: k = 1, 9, 2m + 9, 4m + 9.
        let rows = range_table(3, 12, 1).unwrap();
        let ks: Vec<u64> = rows.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![1, 9, 33, 57]);
        assert_eq!(
            dimension_closed_form(&spec(3, 12, 1, 103377)).unwrap().0,
            57
        );
        // lambda = 2, odd m, q ≡ 1 (mod 4).
        let rows = range_table(5, 3, 2).unwrap();
        let ks: Vec<u64> = rows.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![2, 8]);
        // lambda = 2, m = 6: conjectural plateaus.
        let rows = range_table(3, 6, 2).unwrap();
        assert_eq!(rows[0].provenance, Provenance::Conjectural);
        // No table for m = 6, lambda = 1 (top plateaus conjectural, interval absent).
        assert!(matches!(range_table(3, 6, 1), Err(Error::Uncovered(_))));
    }

    #[test]
    fn closed_form_sweeps_match_exact() {
        // Odd-m interval formula over its whole range, several regimes.
        for (q, m, lambda) in [
            (5u64, 3u64, 2u64),
            (5, 3, 3),
            (7, 3, 2),
            (7, 3, 4),
            (3, 5, 2),
            (11, 3, 3),
            (11, 3, 2),
        ] {
            let hi = q.pow(m.div_ceil(2) as u32) / lambda;
            for delta in 2..=hi + 2 {
                let s = spec(q, m, lambda, delta);
                match dimension_closed_form(&s) {
                    Ok((k, _)) => assert_eq!(
                        k,
                        dimension_exact(&s).unwrap(),
                        "q={q} m={m} lambda={lambda} delta={delta}"
                    ),
                    Err(Error::Uncovered(_)) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
        // Even-m lambda = 2 interval formula.
        for (q, m) in [(3u64, 4u64), (5, 4), (3, 6), (3, 8)] {
            let hi = q.pow((m / 2) as u32) / 2;
            for delta in 2..=hi + 1 {
                let s = spec(q, m, 2, delta);
                let (k, _) = dimension_closed_form(&s).unwrap();
                assert_eq!(k, dimension_exact(&s).unwrap(), "q={q} m={m} delta={delta}");
            }
        }
        // Plateau tables, full plateau sweeps where n is small.
        for (q, m, lambda) in [(3u64, 4u64, 1u64), (5, 3, 2), (3, 6, 2)] {
            let rows = range_table(q, m, lambda).unwrap();
            let lo: u64 = (&rows.last().unwrap().d_lo).try_into().unwrap();
            let hi: u64 = (&rows[0].d_hi).try_into().unwrap();
            for d in lo..=hi {
                let s = spec(q, m, lambda, d + 1);
                let (k, _) = dimension_closed_form(&s).unwrap();
                assert_eq!(
                    k,
                    dimension_exact(&s).unwrap(),
                    "q={q} m={m} lambda={lambda} D={d}"
                );
            }
        }
    }

    #[test]
    fn lower_bound_doubling() {
        assert_eq!(distance_lower_bound(&spec(5, 3, 3, 8)), 14);
        assert_eq!(
            distance_lower_bound(&BchSpec::new(5, 3, 3, 8, 1).unwrap()),
            8
        );
    }

    #[test]
    fn uncovered_cases() {
        assert!(matches!(
            dimension_closed_form(&BchSpec::new(3, 4, 1, 15, 1).unwrap()),
            Err(Error::Uncovered(_))
        ));
        assert!(matches!(
            dimension_closed_form(&spec(3, 3, 4, 5)),
            Err(Error::Uncovered(_))
        ));
    }
}
