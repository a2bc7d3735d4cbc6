//! Integer helpers: factorisation, prime supports and valuations.
//!
//! Factorisation runs trial division up to 10^6 and falls back to
//! Miller-Rabin plus Brent's variant of Pollard rho for the cofactor.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Integer = BigInt;

const TRIAL_LIMIT: u64 = 1_000_000;
const MR_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

/// Prime factorisation of `|n|`. Zero and units factor as the empty map.
pub fn factorize(n: &Integer) -> BTreeMap<Integer, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n.abs();
    if rest.is_zero() || rest.is_one() {
        return out;
    }

    let push = |out: &mut BTreeMap<Integer, u32>, p: Integer, e: u32| {
        *out.entry(p).or_insert(0) += e;
    };

    for small in [2u64, 3] {
        let d = BigInt::from(small);
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            push(&mut out, d, e);
        }
    }

    let mut d = 5u64;
    let mut step = 2u64;
    while d <= TRIAL_LIMIT {
        if let Some(r) = rest.to_u64() {
            if d.saturating_mul(d) > r {
                break;
            }
        }
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            push(&mut out, bd, e);
        }
        d += step;
        step = 6 - step;
    }

    if rest.is_one() {
        return out;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(&mut out, m, 1);
            continue;
        }
        let f = pollard_brent(&m);
        let cof = &m / &f;
        stack.push(f);
        stack.push(cof);
    }
    out
}

/// Distinct primes dividing `|n|`, ascending.
pub fn prime_support(n: &Integer) -> Vec<Integer> {
    factorize(n).into_keys().collect()
}

/// Exponent of the prime `q` in `n` (n nonzero).
pub fn valuation(n: &Integer, q: &Integer) -> u32 {
    let mut rest = n.abs();
    let mut e = 0;
    if rest.is_zero() {
        return 0;
    }
    while (&rest % q).is_zero() {
        rest /= q;
        e += 1;
    }
    e
}

/// True when every prime factor of `n` lies in `primes`.
pub fn supported_on(n: &Integer, primes: &[Integer]) -> bool {
    let mut rest = n.abs();
    if rest.is_zero() {
        return false;
    }
    for q in primes {
        if q.is_zero() || q.is_one() {
            continue;
        }
        while (&rest % q).is_zero() {
            rest /= q;
        }
    }
    rest.is_one()
}

/// Positive divisors of `|n|`, ascending. `n` must be nonzero.
pub fn divisors(n: &Integer) -> Vec<Integer> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub fn lcm(a: &Integer, b: &Integer) -> Integer {
    a.lcm(b)
}

fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Miller-Rabin with fixed bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &Integer) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for b in MR_BASES {
        let bb = BigInt::from(b);
        if n == bb {
            return true;
        }
        if (&n % &bb).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = &n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for b in MR_BASES {
        let mut x = mod_pow(&BigInt::from(b), &d, &n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Returns a nontrivial factor of a composite odd n.
fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut g = BigInt::one();
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let batch = 64u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
