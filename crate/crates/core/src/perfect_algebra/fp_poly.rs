//! Dense univariate polynomials over Z/p, constant coefficient first.
//!
//! Only what the irreducibility check and the field arithmetic need.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_u64(a, p - 2, p)
}

pub(crate) fn pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo a nonzero polynomial `f`.
pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &fi) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod(lead, p);
        for c in &mut a {
            *c = *c * li % p;
        }
    }
    a
}

/// `base^exp mod f`, with `exp` given as a repeated power `p^k`.
pub(crate) fn pow_p_k_mod(base: &[u64], k: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(base, f, p);
    for _ in 0..k {
        acc = pow_mod(&acc, p, f, p);
    }
    acc
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), f, p);
        }
        b = rem(&mul(&b, &b, p), f, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic `f` of degree `e`: `x^{p^e} = x mod f` and
/// `gcd(x^{p^k} - x, f) = 1` for `1 <= k < e`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    let x = [0u64, 1];
    for k in 1..e {
        let xpk = pow_p_k_mod(&x, k as u32, f, p);
        let g = gcd(&sub(&xpk, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    let xpe = pow_p_k_mod(&x, e as u32, f, p);
    sub(&xpe, &x, p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2: has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn gcd_is_monic() {
        // (x+1)(x+2) and (x+1)(x+3) over F_5
        let a = mul(&[1, 1], &[2, 1], 5);
        let b = mul(&[1, 1], &[3, 1], 5);
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
    }
}
