//! Permutations of `0..n` as explicit image tables.
//!
//! The action is on the right: `x^g = g.apply(x)`, and products compose
//! left-to-right, so `x^(g*h) = (x^g)^h`.

use crate::error::{Error, Result};
use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// Identity permutation on `0..n`.
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// Builds a permutation from its image table, verifying bijectivity.
    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n {
                return Err(Error::input(format!("image {x} out of range for degree {n}")));
            }
            if seen[x] {
                return Err(Error::input(format!("image {x} repeated; not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// Builds a permutation of degree `n` from disjoint cycles (0-based).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(Error::input(format!("cycle entry out of range for degree {n}")));
                }
                img[a] = b;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x] = i;
        }
        Perm { img }
    }

    /// Applies the permutation to every coordinate of a tuple.
    pub fn apply_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&x| self.img[x]).collect()
    }

    /// Multiplicative order (least k > 0 with g^k = id).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.img.len()];
        let mut ord: u64 = 1;
        for start in 0..self.img.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Smallest point moved by the permutation, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.img.iter().enumerate().find(|&(i, &x)| i != x).map(|(i, _)| i)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Perm {
    type Output = Perm;

    /// `g * h` applies `g` first: `x^(g*h) = (x^g)^h`.
    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm { img: self.img.iter().map(|&x| rhs.img[x]).collect() }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.img)
    }
}
