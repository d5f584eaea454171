//! Dense univariate polynomials over `F_p`, coefficients low to high.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(v)
}

pub(crate) fn neg(a: &[u64], p: u64) -> Poly {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Poly {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(v)
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = invmod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lb, p);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, y, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn monic(a: &[u64], p: u64) -> (Poly, u64) {
    let l = *a.last().unwrap();
    (scale(a, invmod(l, p), p), l)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        monic(&x, p).0
    }
}

/// `a(y^(p^k))`, which is `a^(p^k)` over `F_p`.
pub(crate) fn frob(a: &[u64], p: u64, k: u32) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let f = (p as usize).pow(k);
    let mut v = vec![0u64; (a.len() - 1) * f + 1];
    for (i, &c) in a.iter().enumerate() {
        v[i * f] = c;
    }
    v
}

/// The `p`-th root when every exponent is divisible by `p`.
pub(crate) fn pth_root(a: &[u64], p: u64) -> Option<Poly> {
    let p = p as usize;
    if a.iter().enumerate().any(|(i, &c)| c != 0 && i % p != 0) {
        return None;
    }
    Some(a.iter().step_by(p).copied().collect())
}

pub(crate) fn fmt(a: &[u64], var: &str) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.into(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => format!("{c}"),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    parts.join("+")
}

pub(crate) fn term_count(a: &[u64]) -> usize {
    a.iter().filter(|&&c| c != 0).count()
}
