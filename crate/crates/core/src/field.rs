//! Finite fields GF(p^e) at desk scale.
//!
//! Elements are residues of F_p[x] modulo an irreducible monic polynomial,
//! identified with their rank sum(c_i * p^i) so the rest of the toolkit can
//! treat them as dense integers 0..q-1.  All arithmetic is table-driven;
//! construction verifies irreducibility, the exact order of the primitive
//! element, and that x -> x^p is a field automorphism.

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trim trailing zero coefficients (highest degrees) from a polynomial.
fn poly_trim(mut c: Vec<usize>) -> Vec<usize> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Product of two polynomials over F_p, coefficients ascending by degree.
fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0usize; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    let deg_m = m.len() - 1;
    debug_assert_eq!(m[deg_m], 1, "modulus must be monic");
    while a.len() > deg_m {
        let lead = a.len() - 1;
        let c = a[lead];
        if c != 0 {
            // Subtract c * x^(lead - deg_m) * m.
            for (i, &mi) in m.iter().enumerate() {
                let idx = lead - deg_m + i;
                a[idx] = (a[idx] + p * p - (c * mi) % p) % p;
            }
        }
        a.pop();
    }
    poly_trim(a)
}

/// Digits of `rank` base p, least significant (constant term) first.
fn coeffs_of(mut rank: usize, p: usize, e: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(e);
    for _ in 0..e {
        c.push(rank % p);
        rank /= p;
    }
    c
}

fn rank_of(c: &[usize], p: usize) -> usize {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// True iff the monic polynomial `m` (degree >= 1) has no monic divisor of
/// degree between 1 and deg(m)/2 — trial division, fine at this scale.
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for r in 0..count {
            let mut div = coeffs_of(r, p, d);
            div.push(1);
            if poly_rem(m.to_vec(), &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// GF(p^e) with precomputed arithmetic tables indexed by element rank.
pub struct FiniteField {
    p: usize,
    e: usize,
    q: usize,
    modulus: Vec<usize>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
    primitive: usize,
}

/// Build GF(p^e).  With `poly = None` the modulus is the first irreducible
/// monic polynomial of degree e in rank order of its non-leading
/// coefficients (for GF(9) that is x^2+1).  A supplied modulus must be monic
/// of degree e with coefficients in 0..p, listed ascending by degree.
pub fn field_make(p: usize, e: usize, poly: Option<Vec<usize>>) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::input(format!("characteristic {p} is not prime")));
    }
    if e == 0 {
        return Err(Error::input("extension degree must be at least 1"));
    }
    let q = p
        .checked_pow(e as u32)
        .filter(|&q| q <= 1 << 20)
        .ok_or_else(|| Error::input("field order out of supported range"))?;

    let modulus = match poly {
        Some(m) => {
            if m.len() != e + 1 || m[e] != 1 {
                return Err(Error::input(format!(
                    "modulus must be monic of degree {e}"
                )));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::input("modulus coefficients must lie in 0..p"));
            }
            if e >= 2 && !is_irreducible(&m, p) {
                return Err(Error::input("modulus polynomial is reducible"));
            }
            m
        }
        None => {
            let mut found = None;
            for r in 0..q {
                let mut m = coeffs_of(r, p, e);
                m.push(1);
                if e == 1 || is_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            // An irreducible of every degree exists over every F_p.
            found.expect("no irreducible modulus found")
        }
    };

    let mut add = vec![vec![0usize; q]; q];
    let mut mul = vec![vec![0usize; q]; q];
    let mut neg = vec![0usize; q];
    for a in 0..q {
        let ca = coeffs_of(a, p, e);
        neg[a] = rank_of(&ca.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p);
        for b in 0..q {
            let cb = coeffs_of(b, p, e);
            let sum: Vec<usize> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
            add[a][b] = rank_of(&sum, p);
            let prod = poly_rem(poly_mul(&ca, &cb, p), &modulus, p);
            mul[a][b] = rank_of(&prod, p);
        }
    }

    let mut inv = vec![0usize; q];
    for a in 1..q {
        inv[a] = (1..q)
            .find(|&b| mul[a][b] == 1)
            .expect("every nonzero element of a field is invertible");
    }

    // Smallest-rank element of exact multiplicative order q-1.
    let order_of = |a: usize| -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = mul[x][a];
            n += 1;
        }
        n
    };
    let primitive = (1..q)
        .find(|&a| order_of(a) == q - 1)
        .expect("multiplicative group of a finite field is cyclic");

    let field = FiniteField { p, e, q, modulus, add, mul, neg, inv, primitive };
    field.verify_frobenius()?;
    Ok(field)
}

impl FiniteField {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Field order q = p^e.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Modulus coefficients ascending by degree (length e+1, monic).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    /// Coefficient vector of an element, constant term first (length e).
    pub fn coefficients(&self, a: usize) -> Vec<usize> {
        assert!(a < self.q);
        coeffs_of(a, self.p, self.e)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg[b]]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no multiplicative inverse");
        self.inv[a]
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul[acc][base];
            }
            base = self.mul[base][base];
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul[x][a];
            n += 1;
        }
        n
    }

    /// Smallest-rank generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    /// Sorted ranks of the nonzero squares.
    pub fn squares(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (1..self.q).map(|a| self.mul[a][a]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Polynomial form over F_p, highest degree first, e.g. "2x+1".
    pub fn element_string(&self, a: usize) -> String {
        let c = self.coefficients(a);
        let mut parts = Vec::new();
        for i in (0..self.e).rev() {
            if c[i] == 0 {
                continue;
            }
            parts.push(match i {
                0 => c[0].to_string(),
                1 if c[1] == 1 => "x".to_string(),
                1 => format!("{}x", c[1]),
                _ if c[i] == 1 => format!("x^{i}"),
                _ => format!("{}x^{i}", c[i]),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Check that x -> x^p is a bijective ring homomorphism (all pairs).
    fn verify_frobenius(&self) -> Result<()> {
        let mut seen = vec![false; self.q];
        for a in 0..self.q {
            seen[self.frobenius(a)] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Inconsistency(
                "frobenius map is not a bijection".into(),
            ));
        }
        for a in 0..self.q {
            let fa = self.frobenius(a);
            for b in 0..self.q {
                let fb = self.frobenius(b);
                if self.frobenius(self.add[a][b]) != self.add[fa][fb]
                    || self.frobenius(self.mul[a][b]) != self.mul[fa][fb]
                {
                    return Err(Error::Inconsistency(
                        "frobenius map is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
