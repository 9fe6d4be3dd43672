//! Totient and Möbius sieves, summatory totients, Farey sequences and the
//! Mertens function.

use crate::error::{domain, Result};
use crate::rational::SmallRatio;
use crate::Count;

/// φ and μ for `1..=limit`, index 0 unused.
#[derive(Clone, Debug)]
pub struct SieveTables {
    limit: usize,
    phi: Vec<u64>,
    mu: Vec<i8>,
}

impl SieveTables {
    /// Linear (Euler) sieve filling φ and μ in one pass.
    pub fn new(limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(domain("sieve limit must be positive"));
        }
        let mut phi = vec![0u64; limit + 1];
        let mut mu = vec![0i8; limit + 1];
        let mut primes: Vec<usize> = Vec::new();
        let mut composite = vec![false; limit + 1];
        phi[1] = 1;
        mu[1] = 1;
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i);
                phi[i] = i as u64 - 1;
                mu[i] = -1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > limit {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    phi[ip] = phi[i] * p as u64;
                    mu[ip] = 0;
                    break;
                }
                phi[ip] = phi[i] * (p as u64 - 1);
                mu[ip] = -mu[i];
            }
        }
        Ok(SieveTables { limit, phi, mu })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn phi(&self, k: usize) -> u64 {
        self.phi[k]
    }

    pub fn mu(&self, k: usize) -> i8 {
        self.mu[k]
    }

    pub fn phi_table(&self) -> &[u64] {
        &self.phi
    }

    pub fn mu_table(&self) -> &[i8] {
        &self.mu
    }

    /// Φ(m) = φ(1) + ... + φ(m).
    pub fn totient_summatory(&self, m: usize) -> Count {
        self.phi[1..=m].iter().map(|&v| v as Count).sum()
    }

    /// Running Φ values, `out[m] = Φ(m)` with `out[0] = 0`.
    pub fn summatory_table(&self) -> Vec<Count> {
        let mut out = Vec::with_capacity(self.limit + 1);
        let mut acc: Count = 0;
        out.push(0);
        for &v in &self.phi[1..] {
            acc += v as Count;
            out.push(acc);
        }
        out
    }

    /// M(m) = μ(1) + ... + μ(m).
    pub fn mertens(&self, m: usize) -> i64 {
        self.mu[1..=m].iter().map(|&v| v as i64).sum()
    }
}

pub fn totient_sieve(limit: usize) -> Result<SieveTables> {
    SieveTables::new(limit)
}

pub fn mobius_sieve(limit: usize) -> Result<SieveTables> {
    SieveTables::new(limit)
}

pub fn totient_summatory(m: usize) -> Result<Count> {
    Ok(SieveTables::new(m)?.totient_summatory(m))
}

pub fn mertens(m: usize) -> Result<i64> {
    Ok(SieveTables::new(m)?.mertens(m))
}

/// Irreducible fractions in `[0, 1)` with denominator at most `order`, increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareySequence {
    order: u64,
    fractions: Vec<SmallRatio>,
}

impl FareySequence {
    /// Generated with the neighbour recurrence: after `a/b < c/d`, the next term is
    /// `(k c - a) / (k d - b)` with `k = floor((order + b) / d)`.
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(domain("Farey order must be positive"));
        }
        let mut fractions = Vec::new();
        let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order);
        fractions.push(SmallRatio { numer: a, denom: b });
        while c < d {
            fractions.push(SmallRatio { numer: c, denom: d });
            let k = (order + b) / d;
            let (nc, nd) = (k * c - a, k * d - b);
            (a, b, c, d) = (c, d, nc, nd);
        }
        Ok(FareySequence { order, fractions })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn fractions(&self) -> &[SmallRatio] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    /// `f_m(index)` with the 1-based indexing of the classical notation.
    pub fn get(&self, index: usize) -> Option<SmallRatio> {
        index.checked_sub(1).and_then(|i| self.fractions.get(i).copied())
    }

    /// Number of terms `<= t`, which is `A(m, t, 1)` for `t` in `[0, 1)`.
    pub fn rank(&self, t: SmallRatio) -> usize {
        self.fractions
            .partition_point(|f| f.numer as u128 * t.denom as u128 <= t.numer as u128 * f.denom as u128)
    }
}

pub fn farey_sequence(order: u64) -> Result<FareySequence> {
    FareySequence::new(order)
}
