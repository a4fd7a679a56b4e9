//! Concrete cyclic code construction: generator polynomials from minimal
//! polynomials, the LCD (self-reciprocal generator) check, and minimum
//! distance by exhaustive or sampled codeword enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cosets::{coset_of, BitSet, CosetContext};
use crate::dims::{defining_set, BchSpec};
use crate::gf::{build_extension, minimal_poly, BasePoly};
use crate::{Error, Result};

/// Default codeword-enumeration budget for exact distances.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 50_000_000;

/// A cyclic code of length n over GF(q), held by its generator polynomial.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub generator: BasePoly,
}

/// Builds the BCH code of `spec` by multiplying the minimal polynomials of
/// `beta^s` over the distinct cosets meeting the root range, then checks the
/// generator degree against the defining set and divisibility of `x^n - 1`.
pub fn build_code(spec: &BchSpec) -> Result<CyclicCode> {
    let n = spec.n_u64()?;
    let ext = build_extension(spec.q, n)?;
    let ctx = CosetContext::new(spec.q, n)?;
    let mut seen = BitSet::new(n as usize);
    let mut g = BasePoly::one(spec.q);
    for j in 0..=spec.delta - 2 {
        let root = (spec.b + j) % n;
        let leader = coset_of(&ctx, root)?.leader;
        if seen.get(leader as usize) {
            continue;
        }
        seen.set(leader as usize);
        let mp = minimal_poly(&ext.field, &ext.field.pow(&ext.beta, leader))?;
        g = g.mul(&BasePoly::new(spec.q, mp));
    }
    let t = defining_set(spec)?;
    if g.degree() as u64 != t.cardinality() {
        return Err(Error::Inconsistent(format!(
            "generator degree {} differs from defining-set cardinality {}",
            g.degree(),
            t.cardinality()
        )));
    }
    let (_, rem) = BasePoly::x_pow_minus_one(spec.q, n).div_rem(&g);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(
            "generator does not divide x^n - 1".into(),
        ));
    }
    Ok(CyclicCode {
        q: spec.q,
        n,
        k: n - g.degree() as u64,
        generator: g,
    })
}

/// True iff the generator is self-reciprocal, which for cyclic codes is
/// equivalent to the LCD property.
pub fn is_lcd(code: &CyclicCode) -> Result<bool> {
    Ok(code.generator.reciprocal()? == code.generator)
}

/// Outcome of a completed distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: u64,
    /// Codewords enumerated before the answer was certain.
    pub enumerated: u64,
    /// True when the search stopped early because the best weight hit the
    /// supplied lower bound.
    pub early_stop: bool,
}

/// Exact minimum distance by enumerating one codeword per scalar class:
/// messages with top nonzero digit 1, stepped as an odometer so each step
/// adds one shifted copy of the generator and updates the weight
/// incrementally.
///
/// `stop_at` is a known valid lower bound: the search returns as soon as a
/// codeword of that weight is found. `budget` caps the number of enumerated
/// codewords; exceeding it yields [`Error::BudgetExceeded`] carrying the best
/// upper bound seen.
pub fn min_distance_exhaustive(
    code: &CyclicCode,
    budget: u64,
    stop_at: Option<u64>,
) -> Result<DistanceResult> {
    if code.k == 0 {
        return Err(Error::InvalidInput(
            "zero-dimensional code has no nonzero codeword".into(),
        ));
    }
    let q = code.q;
    let n = code.n as usize;
    let g = &code.generator.coeffs;
    let g_weight = g.iter().filter(|&&c| c != 0).count() as u64;
    let mut best = u64::MAX;
    let mut enumerated = 0u64;
    for jtop in 0..code.k as usize {
        let mut c = vec![0u64; n];
        for (i, &gc) in g.iter().enumerate() {
            c[i + jtop] = gc;
        }
        let mut w = g_weight;
        let mut digits = vec![0u64; jtop];
        'messages: loop {
            enumerated += 1;
            if w < best {
                best = w;
                if let Some(bound) = stop_at {
                    if best < bound {
                        return Err(Error::Inconsistent(format!(
                            "found weight {best} below the claimed lower bound {bound}"
                        )));
                    }
                    if best == bound {
                        return Ok(DistanceResult {
                            d: best,
                            enumerated,
                            early_stop: true,
                        });
                    }
                }
            }
            if enumerated >= budget {
                return Err(Error::BudgetExceeded { upper_bound: best });
            }
            let mut d = 0;
            loop {
                if d == jtop {
                    break 'messages;
                }
                add_shifted(&mut c, &mut w, g, d, q);
                digits[d] += 1;
                if digits[d] < q {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
        }
    }
    Ok(DistanceResult {
        d: best,
        enumerated,
        early_stop: false,
    })
}

fn add_shifted(c: &mut [u64], w: &mut u64, g: &[u64], off: usize, q: u64) {
    for (i, &gc) in g.iter().enumerate() {
        if gc == 0 {
            continue;
        }
        let slot = &mut c[i + off];
        let was = *slot != 0;
        *slot = (*slot + gc) % q;
        match (was, *slot != 0) {
            (false, true) => *w += 1,
            (true, false) => *w -= 1,
            _ => {}
        }
    }
}

/// Upper bound on the minimum distance from random nonzero messages.
pub fn min_distance_sample(code: &CyclicCode, trials: u64, seed: u64) -> Result<u64> {
    if code.k == 0 {
        return Err(Error::InvalidInput(
            "zero-dimensional code has no nonzero codeword".into(),
        ));
    }
    let q = code.q;
    let n = code.n as usize;
    let g = &code.generator.coeffs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = u64::MAX;
    for _ in 0..trials {
        let mut msg: Vec<u64> = (0..code.k).map(|_| rng.gen_range(0..q)).collect();
        if msg.iter().all(|&d| d == 0) {
            msg[0] = 1;
        }
        let mut c = vec![0u64; n];
        for (j, &md) in msg.iter().enumerate() {
            if md == 0 {
                continue;
            }
            for (i, &gc) in g.iter().enumerate() {
                c[i + j] = (c[i + j] + md * gc) % q;
            }
        }
        let w = c.iter().filter(|&&x| x != 0).count() as u64;
        best = best.min(w);
    }
    Ok(best)
}
