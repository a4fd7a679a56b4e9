//! Finite field arithmetic at desk scale: GF(p^t) as GF(p)[x]/(f) for a
//! verified irreducible f, primitive elements, n-th roots of unity, minimal
//! polynomials over the prime field, and dense polynomial arithmetic over
//! GF(p).

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modmath::{ord_mod, pow_big, PrimePower};
use crate::{Error, Result};

/// Field-size guard: q^t must stay below this.
pub const FIELD_CAP: u64 = 100_000_000;

const MODULUS_SEARCH_SEED: u64 = 0x6c63_6462_6368;

/// A field element: coefficient vector of length t over GF(p), ascending.
pub type Elem = Vec<u64>;

/// GF(p^t) represented as GF(p)[x] modulo a monic irreducible polynomial,
/// with a verified generator of the multiplicative group.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    t: usize,
    modulus: Vec<u64>,
    generator: Elem,
}

impl Field {
    /// Builds GF(p^t) for prime p, searching for a monic irreducible modulus
    /// with a fixed-seed RNG and verifying a multiplicative generator.
    pub fn new(p: u64, t: usize) -> Result<Field> {
        let pp = PrimePower::new(p)?;
        if pp.e != 1 {
            return Err(Error::InvalidInput(format!(
                "base field must have prime order; {p} = {}^{} is a proper prime power",
                pp.p, pp.e
            )));
        }
        if t == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let order = pow_big(p, t as u64);
        if order > BigUint::from(FIELD_CAP) {
            return Err(Error::DeskScale(format!(
                "field order {p}^{t} exceeds the cap {FIELD_CAP}"
            )));
        }
        let modulus = find_irreducible(p, t)?;
        let mut field = Field {
            p,
            t,
            modulus,
            generator: vec![0; t],
        };
        field.generator = field.find_generator()?;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.t
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Order of the multiplicative group, q^t - 1.
    pub fn group_order(&self) -> u64 {
        self.p.pow(self.t as u32) - 1
    }

    pub fn generator(&self) -> &Elem {
        &self.generator
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.t]
    }

    pub fn one(&self) -> Elem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u64) -> Elem {
        let mut e = vec![0; self.t];
        e[0] = c % self.p;
        e
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut buf = vec![0u64; 2 * self.t - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x * y) % self.p;
            }
        }
        self.reduce(buf)
    }

    fn reduce(&self, mut buf: Vec<u64>) -> Elem {
        for i in (self.t..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..self.t {
                let sub = c * self.modulus[j] % self.p;
                buf[i - self.t + j] = (buf[i - self.t + j] + self.p - sub) % self.p;
            }
        }
        buf.truncate(self.t);
        buf
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element, by stripping prime factors
    /// of the group order.
    pub fn order(&self, a: &Elem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::InvalidInput(
                "zero has no multiplicative order".into(),
            ));
        }
        let mut ord = self.group_order();
        for (r, _) in trial_factor(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn find_generator(&self) -> Result<Elem> {
        let order = self.group_order();
        let factors = trial_factor(order);
        let mut rng = ChaCha8Rng::seed_from_u64(MODULUS_SEARCH_SEED ^ order);
        'cand: for _ in 0..10_000 {
            let cand: Elem = (0..self.t).map(|_| rng.gen_range(0..self.p)).collect();
            if self.is_zero(&cand) {
                continue;
            }
            for (r, _) in &factors {
                if self.pow(&cand, order / r) == self.one() {
                    continue 'cand;
                }
            }
            return Ok(cand);
        }
        Err(Error::Inconsistent(format!(
            "no generator found for GF({}^{})",
            self.p, self.t
        )))
    }
}

/// Factorization by trial division, as (prime, exponent) pairs.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn find_irreducible(p: u64, t: usize) -> Result<Vec<u64>> {
    if t == 1 {
        // x itself: elements are the scalars.
        return Ok(vec![0, 1]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MODULUS_SEARCH_SEED ^ (p << 8) ^ t as u64);
    for _ in 0..50_000 {
        let mut f: Vec<u64> = (0..t).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if f[0] == 0 {
            f[0] = 1 + rng.gen_range(0..p - 1);
        }
        if is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::Inconsistent(format!(
        "no irreducible polynomial of degree {t} found over GF({p})"
    )))
}

/// Irreducibility of a monic degree-t polynomial over GF(p):
/// x^(p^t) ≡ x (mod f) and gcd(x^(p^(t/r)) - x, f) = 1 for every prime r | t.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let t = f.len() - 1;
    let x = vec![0u64, 1];
    let frob_t = poly_pow_mod(&x, p.pow(t as u32), f, p);
    if !poly_mod_eq(&frob_t, &x, f, p) {
        return false;
    }
    for (r, _) in trial_factor(t as u64) {
        let frob = poly_pow_mod(&x, p.pow((t as u64 / r) as u32), f, p);
        let diff = poly_sub(&frob, &x, p);
        let g = poly_gcd(&diff, f, p);
        if poly_deg(&g) != 0 {
            return false;
        }
    }
    true
}

// Dense polynomial helpers over GF(p), used by the irreducibility test.

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_deg(a: &[u64]) -> usize {
    a.len() - 1
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(out)
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut buf = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + x * y) % p;
        }
    }
    poly_rem(&buf, f, p)
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let t = f.len() - 1;
    let mut buf = a.to_vec();
    for i in (t..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        for j in 0..t {
            let sub = c * f[j] % p;
            buf[i - t + j] = (buf[i - t + j] + p - sub) % p;
        }
    }
    buf.truncate(t.max(1));
    poly_trim(buf)
}

fn poly_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_mod_eq(a: &[u64], b: &[u64], f: &[u64], p: u64) -> bool {
    poly_trim(poly_rem(a, f, p)) == poly_trim(poly_rem(b, f, p))
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_euclid_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_euclid_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = poly_deg(b);
    let inv_lead = mod_inv(b[db], p);
    while poly_deg(&r) >= db && !(r.len() == 1 && r[0] == 0) {
        let dr = poly_deg(&r);
        let c = r[dr] * inv_lead % p;
        for j in 0..=db {
            let sub = c * b[j] % p;
            r[dr - db + j] = (r[dr - db + j] + p - sub) % p;
        }
        r = poly_trim(r);
        if dr == db {
            break;
        }
    }
    poly_trim(r)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: p is prime throughout this module.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// GF(p^t) together with a verified primitive n-th root of unity.
pub struct Extension {
    pub field: Field,
    pub beta: Elem,
    pub n: u64,
}

/// Builds the smallest extension of GF(q) containing an n-th root of unity
/// and returns beta of exact multiplicative order n.
pub fn build_extension(q: u64, n: u64) -> Result<Extension> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("requires n >= 2, got {n}")));
    }
    if q.gcd(&n) != 1 {
        return Err(Error::InvalidInput(format!(
            "requires gcd(n, q) = 1, got q = {q}, n = {n}"
        )));
    }
    let t = ord_mod(&BigUint::from(q), &BigUint::from(n))?;
    let field = Field::new(q, t as usize)?;
    let beta = field.pow(field.generator(), field.group_order() / n);
    if field.order(&beta)? != n {
        return Err(Error::Inconsistent(format!(
            "constructed root of unity does not have order {n}"
        )));
    }
    Ok(Extension { field, beta, n })
}

/// Minimal polynomial over GF(p) of an element of GF(p^t): the product of
/// `x - c` over the Frobenius orbit of the element, with every coefficient
/// verified to land in the prime field.
pub fn minimal_poly(field: &Field, elem: &Elem) -> Result<Vec<u64>> {
    let mut poly: Vec<Elem> = vec![field.one()];
    let mut conj = elem.clone();
    loop {
        // Multiply by (x - conj).
        let mut next: Vec<Elem> = vec![field.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            let t = field.mul(c, &conj);
            next[i] = field.sub(&next[i], &t);
        }
        poly = next;
        conj = field.pow(&conj, field.characteristic());
        if conj == *elem {
            break;
        }
    }
    let mut out = Vec::with_capacity(poly.len());
    for c in poly {
        if c[1..].iter().any(|&x| x != 0) {
            return Err(Error::Inconsistent(
                "minimal polynomial coefficient outside the prime field".into(),
            ));
        }
        out.push(c[0]);
    }
    Ok(out)
}

/// Dense polynomial over GF(p), coefficients ascending, normalized so the
/// leading coefficient is nonzero (the zero polynomial is `[0]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl BasePoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> BasePoly {
        let coeffs = poly_trim(coeffs.into_iter().map(|c| c % p).collect());
        BasePoly { p, coeffs }
    }

    pub fn zero(p: u64) -> BasePoly {
        BasePoly { p, coeffs: vec![0] }
    }

    pub fn one(p: u64) -> BasePoly {
        BasePoly { p, coeffs: vec![1] }
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(p: u64, n: u64) -> BasePoly {
        let mut coeffs = vec![0u64; n as usize + 1];
        coeffs[0] = p - 1;
        coeffs[n as usize] = 1;
        BasePoly { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &BasePoly) -> BasePoly {
        if self.is_zero() || other.is_zero() {
            return BasePoly::zero(self.p);
        }
        let mut buf = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x * y) % self.p;
            }
        }
        BasePoly::new(self.p, buf)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &BasePoly) -> (BasePoly, BasePoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let db = divisor.degree();
        if self.degree() < db || self.is_zero() {
            return (BasePoly::zero(p), self.clone());
        }
        let inv_lead = mod_inv(divisor.coeffs[db], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.degree() - db + 1];
        for i in (db..rem.len()).rev() {
            let c = rem[i] * inv_lead % p;
            if c == 0 {
                continue;
            }
            quot[i - db] = c;
            for j in 0..=db {
                let sub = c * divisor.coeffs[j] % p;
                rem[i - db + j] = (rem[i - db + j] + p - sub) % p;
            }
        }
        (BasePoly::new(p, quot), BasePoly::new(p, rem))
    }

    /// The reciprocal f0^{-1} x^(deg f) f(1/x); requires f(0) != 0.
    pub fn reciprocal(&self) -> Result<BasePoly> {
        if self.coeffs[0] == 0 {
            return Err(Error::InvalidInput(
                "reciprocal needs a nonzero constant term".into(),
            ));
        }
        let inv0 = mod_inv(self.coeffs[0], self.p);
        let coeffs: Vec<u64> = self
            .coeffs
            .iter()
            .rev()
            .map(|&c| c * inv0 % self.p)
            .collect();
        Ok(BasePoly::new(self.p, coeffs))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c) % self.p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_construction_and_ops() {
        let f = Field::new(3, 8).unwrap();
        assert_eq!(f.group_order(), 6560);
        assert_eq!(f.order(f.generator()).unwrap(), 6560);
        let a = f.scalar(2);
        assert_eq!(f.mul(&a, &a), f.one());
        let g = f.generator().clone();
        assert_eq!(f.pow(&g, 6560), f.one());
        assert_ne!(f.pow(&g, 3280), f.one());
        // Frobenius fixes exactly the prime field: x^p = x for scalars.
        for c in 0..3 {
            let s = f.scalar(c);
            assert_eq!(f.pow(&s, 3), s);
        }
    }

    #[test]
    fn prime_power_base_rejected() {
        assert!(matches!(Field::new(9, 2), Err(Error::InvalidInput(_))));
        assert!(matches!(Field::new(6, 2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(Field::new(3, 30), Err(Error::DeskScale(_))));
    }

    #[test]
    fn extension_roots_of_unity() {
        let ext = build_extension(3, 82).unwrap();
        assert_eq!(ext.field.degree(), 8);
        assert_eq!(ext.field.order(&ext.beta).unwrap(), 82);
        let ext = build_extension(5, 42).unwrap();
        assert_eq!(ext.field.degree(), 6);
        assert_eq!(ext.field.order(&ext.beta).unwrap(), 42);
        let ext = build_extension(3, 2).unwrap();
        assert_eq!(ext.field.degree(), 1);
        assert_eq!(ext.beta, vec![2]);
    }

    #[test]
    fn minimal_polys_mod_82() {
        let ext = build_extension(3, 82).unwrap();
        let f = &ext.field;
        // beta^0 = 1 has minimal polynomial x - 1.
        assert_eq!(minimal_poly(f, &f.one()).unwrap(), vec![2, 1]);
        // beta^41 = -1 has minimal polynomial x + 1.
        let b41 = f.pow(&ext.beta, 41);
        assert_eq!(b41, f.neg(&f.one()));
        assert_eq!(minimal_poly(f, &b41).unwrap(), vec![1, 1]);
        // beta itself lies in no proper subfield: degree 8.
        let mp = minimal_poly(f, &ext.beta).unwrap();
        assert_eq!(mp.len(), 9);
        assert_eq!(*mp.last().unwrap(), 1);
    }

    #[test]
    fn minimal_poly_degree_equals_coset_size() {
        use crate::cosets::{coset_of, CosetContext};
        let ext = build_extension(5, 42).unwrap();
        let ctx = CosetContext::new(5, 42).unwrap();
        for s in [1u64, 2, 3, 7, 21] {
            let mp = minimal_poly(&ext.field, &ext.field.pow(&ext.beta, s)).unwrap();
            let c = coset_of(&ctx, s).unwrap();
            assert_eq!(mp.len() as u64 - 1, c.size, "s = {s}");
        }
    }

    #[test]
    fn base_poly_arithmetic() {
        let p = 5;
        let a = BasePoly::new(p, vec![1, 2, 3]);
        let b = BasePoly::new(p, vec![4, 1]);
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).coeffs, poly_sub(&a.coeffs, &r.coeffs, p));
        // x^n - 1 evaluates to zero at 1.
        let xn = BasePoly::x_pow_minus_one(p, 6);
        assert_eq!(xn.eval(1), 0);
    }

    #[test]
    fn reciprocal_examples() {
        let p = 3;
        // x^2 + x + 2: reciprocal is 2^{-1}(2x^2 + x + 1) = x^2 + 2x + 2.
        let f = BasePoly::new(p, vec![2, 1, 1]);
        assert_eq!(f.reciprocal().unwrap().coeffs, vec![2, 2, 1]);
        // x + 1 is self-reciprocal.
        let g = BasePoly::new(p, vec![1, 1]);
        assert_eq!(g.reciprocal().unwrap(), g);
        // Reciprocal is an involution for f(0) != 0.
        let h = BasePoly::new(5, vec![3, 0, 2, 1]);
        assert_eq!(h.reciprocal().unwrap().reciprocal().unwrap(), h);
        assert!(BasePoly::new(3, vec![0, 1]).reciprocal().is_err());
    }

    #[test]
    fn irreducibility_fixed_cases() {
        // x^2 + 1 over GF(3) is irreducible; x^2 - 1 is not.
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
        // x^2 + 1 over GF(5) splits (2^2 = -1).
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[2, 0, 1], 5));
    }
}
