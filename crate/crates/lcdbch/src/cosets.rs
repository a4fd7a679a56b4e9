//! q-cyclotomic cosets modulo n: orbit enumeration, leader tests (brute-force
//! and the O(m) witness criterion for n = q^m + 1), top-k leader tables, the
//! lambda-lifting correspondence between moduli n and lambda*n, and the
//! closed description of the leaders in the low interval `[1, q^((m+1)/2)/lambda]`.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::modmath::{ord_mod, pow_big};
use crate::{Error, Result};

/// Memory guard for full-partition scans (one bit per residue).
pub const SCAN_CAP: u64 = 100_000_000;

/// The ambient ring for coset computations: the pair `(q, n)` with
/// `gcd(n, q) = 1`, plus the cached multiplicative order of `q` mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetContext {
    q: u64,
    n: u64,
    ord: u64,
}

impl CosetContext {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        if q < 2 || n < 2 {
            return Err(Error::InvalidInput(
                "CosetContext requires q, n >= 2".into(),
            ));
        }
        if q.gcd(&n) != 1 {
            return Err(Error::InvalidInput(format!(
                "CosetContext requires gcd(n, q) = 1, got q = {q}, n = {n}"
            )));
        }
        let ord = ord_mod(&BigUint::from(q), &BigUint::from(n))?;
        Ok(CosetContext { q, n, ord })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Multiplicative order of `q` modulo `n`.
    pub fn ord(&self) -> u64 {
        self.ord
    }

    fn step(&self, s: u64) -> u64 {
        ((s as u128 * self.q as u128) % self.n as u128) as u64
    }
}

/// One q-cyclotomic coset `{s, sq, sq^2, ...} mod n`.
#[derive(Debug, Clone)]
pub struct Coset {
    ctx: CosetContext,
    rep: u64,
    pub leader: u64,
    pub size: u64,
}

impl Coset {
    /// Materializes the elements, starting from the representative.
    pub fn elements(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size as usize);
        let mut t = self.rep;
        loop {
            out.push(t);
            t = self.ctx.step(t);
            if t == self.rep {
                break;
            }
        }
        out
    }
}

/// The orbit of `s` under multiplication by `q` mod `n`, with its minimum and
/// cardinality computed by streaming the orbit.
pub fn coset_of(ctx: &CosetContext, s: u64) -> Result<Coset> {
    if s >= ctx.n {
        return Err(Error::InvalidInput(format!(
            "coset representative {s} out of range for n = {}",
            ctx.n
        )));
    }
    let (leader, size) = orbit_min_size(ctx, s);
    Ok(Coset {
        ctx: *ctx,
        rep: s,
        leader,
        size,
    })
}

fn orbit_min_size(ctx: &CosetContext, s: u64) -> (u64, u64) {
    let mut t = s;
    let mut min = s;
    let mut size = 0u64;
    loop {
        if t < min {
            min = t;
        }
        size += 1;
        t = ctx.step(t);
        if t == s {
            break;
        }
    }
    (min, size)
}

/// True iff `s` is the smallest element of its own coset.
pub fn is_leader_bruteforce(ctx: &CosetContext, s: u64) -> Result<bool> {
    if s >= ctx.n {
        return Err(Error::InvalidInput(format!(
            "{s} out of range for n = {}",
            ctx.n
        )));
    }
    let mut t = ctx.step(s);
    while t != s {
        if t < s {
            return Ok(false);
        }
        t = ctx.step(t);
    }
    Ok(true)
}

/// A witness that `s` is not a coset leader modulo `q^m + 1`: indices
/// `(i, l, h)` with `s = l*q^(m-i) + h`, `1 <= l <= (q^i - 1)/2`, and
/// `-l(q^(m-i)-1)/(q^i+1) < h < l(q^(m-i)+1)/(q^i-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaderWitness {
    pub i: u64,
    pub l: u64,
    pub h: i64,
}

/// Looks for a non-leader witness for `s` modulo `n = q^m + 1`.
///
/// The witness bounds on `h` are equivalent to `l*n/(q^i+1) < s < l*n/(q^i-1)`,
/// so for each `i` it suffices to test whether the open interval
/// `(s(q^i-1)/n, s(q^i+1)/n)` contains an integer; the `l <= (q^i-1)/2` cap is
/// automatic for `s <= n/2`.
pub fn leader_witness(q: u64, m: u64, s: u64) -> Result<Option<LeaderWitness>> {
    check_fast_params(q, m, s)?;
    let n = q
        .checked_pow(m as u32)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::DeskScale(format!("q^m + 1 overflows u64 for q = {q}, m = {m}")))?
        as u128;
    let s = s as u128;
    let mut q_i = 1u128;
    for i in 1..m {
        q_i *= q as u128;
        let lo = s * (q_i - 1);
        let hi = s * (q_i + 1);
        // Smallest integer l with l*n > lo (strict).
        let l = lo / n + 1;
        if l * n < hi {
            debug_assert!(2 * l < q_i || s > n / 2);
            let q_mi = pow_u128(q, m - i);
            let h = s as i128 - (l * q_mi) as i128;
            return Ok(Some(LeaderWitness {
                i,
                l: l as u64,
                h: h as i64,
            }));
        }
    }
    Ok(None)
}

/// Reference witness search that sweeps every admissible `l` for each `i`,
/// checking the `h` bounds directly. Exponential in `m`; for cross-validation
/// at small sizes only.
pub fn leader_witness_sweep(q: u64, m: u64, s: u64) -> Result<Option<LeaderWitness>> {
    check_fast_params(q, m, s)?;
    for i in 1..m {
        let q_i = pow_u128(q, i);
        let q_mi = pow_u128(q, m - i);
        for l in 1..=((q_i - 1) / 2) {
            let h = s as i128 - (l * q_mi) as i128;
            // -l(q^(m-i)-1)/(q^i+1) < h < l(q^(m-i)+1)/(q^i-1)
            let lhs_ok = h * (q_i as i128 + 1) > -(l as i128) * (q_mi as i128 - 1);
            let rhs_ok = h * (q_i as i128 - 1) < l as i128 * (q_mi as i128 + 1);
            if lhs_ok && rhs_ok {
                return Ok(Some(LeaderWitness {
                    i,
                    l: l as u64,
                    h: h as i64,
                }));
            }
        }
    }
    Ok(None)
}

/// O(m) coset-leader test for `0 <= s <= q^m` modulo `n = q^m + 1`:
/// `s` is a leader iff `s <= n/2` and no [`LeaderWitness`] exists.
pub fn is_leader_fast(q: u64, m: u64, s: u64) -> Result<bool> {
    check_fast_params(q, m, s)?;
    let n = pow_u128(q, m) + 1;
    if s as u128 > n / 2 {
        return Ok(false);
    }
    Ok(leader_witness(q, m, s)?.is_none())
}

fn check_fast_params(q: u64, m: u64, s: u64) -> Result<()> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "fast leader test requires odd q >= 3, got {q}"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "fast leader test requires m >= 2, got {m}"
        )));
    }
    if m >= 40 {
        return Err(Error::DeskScale(format!(
            "m = {m} too large for u128 products"
        )));
    }
    if s as u128 > pow_u128(q, m) {
        return Err(Error::InvalidInput(format!("s = {s} exceeds q^m")));
    }
    Ok(())
}

fn pow_u128(q: u64, e: u64) -> u128 {
    (q as u128).pow(e as u32)
}

/// One row of a ranked leader table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaderRecord {
    /// 1 = largest leader.
    pub rank: usize,
    pub leader: u64,
    pub size: u64,
}

/// Ranked table of the largest coset leaders of a context.
#[derive(Debug, Clone)]
pub struct LeaderTable {
    pub ctx: CosetContext,
    pub entries: Vec<LeaderRecord>,
}

/// Search strategy for [`top_leaders`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaderMethod {
    /// Full partition walk; works for any context with `n` under [`SCAN_CAP`].
    Brute,
    /// Descending scan with the O(m) witness test; requires `n = q^m + 1`
    /// with odd `q`.
    Fast,
}

impl LeaderMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            LeaderMethod::Brute => "brute",
            LeaderMethod::Fast => "fast",
        }
    }
}

/// The `count` largest nonzero coset leaders with their coset sizes,
/// in descending leader order.
pub fn top_leaders(ctx: &CosetContext, count: usize, method: LeaderMethod) -> Result<LeaderTable> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be >= 1".into()));
    }
    match method {
        LeaderMethod::Brute => top_leaders_brute(ctx, count),
        LeaderMethod::Fast => top_leaders_fast(ctx, count),
    }
}

fn top_leaders_brute(ctx: &CosetContext, count: usize) -> Result<LeaderTable> {
    if ctx.n > SCAN_CAP {
        return Err(Error::DeskScale(format!(
            "n = {} exceeds the partition-scan cap {SCAN_CAP}",
            ctx.n
        )));
    }
    let mut visited = BitSet::new(ctx.n as usize);
    let mut leaders: Vec<(u64, u64)> = Vec::new();
    for s in 1..ctx.n {
        if visited.get(s as usize) {
            continue;
        }
        let mut t = s;
        let mut size = 0u64;
        loop {
            visited.set(t as usize);
            size += 1;
            t = ctx.step(t);
            if t == s {
                break;
            }
        }
        // Ascending scan: the first unvisited element of each orbit is its leader.
        leaders.push((s, size));
    }
    leaders.sort_unstable_by_key(|&(leader, _)| std::cmp::Reverse(leader));
    leaders.truncate(count);
    Ok(make_table(*ctx, leaders))
}

fn top_leaders_fast(ctx: &CosetContext, count: usize) -> Result<LeaderTable> {
    let (q, m) = match plus_one_shape(ctx.q, ctx.n) {
        Some(qm) => qm,
        None => {
            return Err(Error::InvalidInput(format!(
                "fast method requires n = q^m + 1 with odd q; n = {} is not (try brute)",
                ctx.n
            )))
        }
    };
    let mut leaders = Vec::with_capacity(count);
    let mut s = ctx.n / 2;
    while s >= 1 && leaders.len() < count {
        if is_leader_fast(q, m, s)? {
            let (_, size) = orbit_min_size(ctx, s);
            leaders.push((s, size));
        }
        s -= 1;
    }
    Ok(make_table(*ctx, leaders))
}

fn make_table(ctx: CosetContext, leaders: Vec<(u64, u64)>) -> LeaderTable {
    let entries = leaders
        .into_iter()
        .enumerate()
        .map(|(idx, (leader, size))| LeaderRecord {
            rank: idx + 1,
            leader,
            size,
        })
        .collect();
    LeaderTable { ctx, entries }
}

fn plus_one_shape(q: u64, n: u64) -> Option<(u64, u64)> {
    if q.is_multiple_of(2) {
        return None;
    }
    let mut rem = n.checked_sub(1)?;
    let mut m = 0u64;
    while rem > 1 {
        if rem % q != 0 {
            return None;
        }
        rem /= q;
        m += 1;
    }
    (m >= 2).then_some((q, m))
}

/// Leader status and coset size of `s` mod `n = (q^m+1)/lambda` and of
/// `lambda*s` mod `lambda*n = q^m + 1`, each computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCheck {
    pub leader_small: bool,
    pub leader_big: bool,
    pub size_small: u64,
    pub size_big: u64,
}

/// Evaluates both sides of the lambda-lifting correspondence for one `s`.
pub fn lambda_lift(q: u64, m: u64, lambda: u64, s: u64) -> Result<LiftCheck> {
    if lambda == 0 || !(q + 1).is_multiple_of(lambda) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must divide q + 1 = {}",
            q + 1
        )));
    }
    let big_n = pow_big(q, m) + 1u32;
    let (n_big, rem) = big_n.div_rem(&BigUint::from(lambda));
    if rem != BigUint::from(0u32) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} does not divide q^m + 1"
        )));
    }
    let lambda_n: u64 = (&n_big * lambda)
        .try_into()
        .map_err(|_| Error::DeskScale("q^m + 1 exceeds u64".into()))?;
    let n: u64 = n_big
        .try_into()
        .map_err(|_| Error::DeskScale("n exceeds u64".into()))?;
    if s == 0 || s >= n {
        return Err(Error::InvalidInput(format!("s = {s} out of range 1..{n}")));
    }
    let small = CosetContext::new(q, n)?;
    let big = CosetContext::new(q, lambda_n)?;
    let cs = coset_of(&small, s)?;
    let cb = coset_of(&big, lambda * s)?;
    Ok(LiftCheck {
        leader_small: cs.leader == s,
        leader_big: cb.leader == lambda * s,
        size_small: cs.size,
        size_big: cb.size,
    })
}

/// Coset leaders of `n = (q^m+1)/lambda` in `[lo, hi]`, by the closed
/// description of the low interval: every `s` not divisible by `q` is a
/// leader of size `2m`, except a short run just below `q^((m+1)/2)/lambda`,
/// and except that for `lambda = m = 3`, `q ≡ 2 (mod 3)`, `q > 3` the value
/// `s = (q^2-q+1)/3` is a leader of size 2.
///
/// Requires odd `m >= 3`, `1 < lambda < q + 1`, `lambda | q + 1`, and
/// `hi <= q^((m+1)/2)/lambda`.
pub fn leaders_in_interval(
    q: u64,
    m: u64,
    lambda: u64,
    lo: u64,
    hi: u64,
) -> Result<Vec<LeaderRecord>> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("requires odd m >= 3, got {m}")));
    }
    if lambda <= 1 || lambda > q || !(q + 1).is_multiple_of(lambda) {
        return Err(Error::InvalidInput(format!(
            "requires 1 < lambda < q + 1 with lambda | q + 1, got lambda = {lambda}, q = {q}"
        )));
    }
    let half_pow = q
        .checked_pow(m.div_ceil(2) as u32)
        .ok_or_else(|| Error::DeskScale("q^((m+1)/2) exceeds u64".into()))?;
    if lo < 1 || lo > hi || hi > half_pow / lambda {
        return Err(Error::InvalidInput(format!(
            "interval [{lo}, {hi}] must sit inside [1, {}]",
            half_pow / lambda
        )));
    }
    // Excluded run just below q^((m+1)/2)/lambda.
    let mut excluded: Vec<u64> = Vec::new();
    if m.div_ceil(2) % 2 == 1 {
        // m ≡ 1 (mod 4): s = (q^((m+1)/2)+1)/lambda - c, 1 <= c <= floor(q/lambda)
        let base = (half_pow + 1) / lambda;
        debug_assert_eq!((half_pow + 1) % lambda, 0);
        for c in 1..=(q / lambda) {
            excluded.push(base - c);
        }
    } else {
        // m ≡ 3 (mod 4): s = (q^((m+1)/2)-1)/lambda - c, 0 <= c <= floor((q-2)/lambda)
        let base = (half_pow - 1) / lambda;
        debug_assert_eq!((half_pow - 1) % lambda, 0);
        for c in 0..=((q - 2) / lambda) {
            excluded.push(base - c);
        }
    }
    // Corrected special case: (q^2-q+1)/3 is a leader of size 2, not an exclusion.
    let special = (lambda == 3 && m == 3 && q > 3 && q % 3 == 2).then(|| (q * q - q + 1) / 3);
    if let Some(sp) = special {
        excluded.retain(|&s| s != sp);
    }
    let mut out = Vec::new();
    for s in lo..=hi {
        if s % q == 0 || excluded.contains(&s) {
            continue;
        }
        let size = if special == Some(s) { 2 } else { 2 * m };
        out.push(LeaderRecord {
            rank: out.len() + 1,
            leader: s,
            size,
        });
    }
    Ok(out)
}

/// Dense bitset used for partition scans and defining-set walks.
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
}
