//! Images of Veech groups in SL(2,Z/nZ) and certificates that a Veech group
//! is totally non-congruence, i.e. surjects onto SL(2,Z/nZ) for every `n`.
//!
//! A certificate lists, for each prime `p`, matrices `A₁, A₂` and exponents
//! `m₁, m₂` such that
//!
//! 1. `A₁e₁` and `A₂e₁` are not proportional modulo `p`,
//! 2. `p` divides neither `m₁` nor `m₂`,
//! 3. `Aᵢ·T^{mᵢ}·Aᵢ⁻¹` lies in the Veech group.
//!
//! A known criterion turns such data for every prime into the
//! totally-non-congruence property. Primes coprime to `|G|` are handled by
//! one uniform witness, so only primes dividing `|G|` are listed.
//! Failure to certify is never evidence of congruence.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::origami::RegularOrigami;
use crate::perm::Permutation;
use crate::sl2::Sl2Matrix;
use crate::veech::{Membership, VeechGroup};

pub const DEFAULT_MODULUS_LIMIT: u64 = 60;

/// Name of the clause covering every prime coprime to `|G|`.
pub const RESIDUAL_PRIMES: &str = "proposition-1-uniform";

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// `|SL(2,Z/nZ)| = n³·∏_{p|n}(1 − p⁻²)`.
pub fn sl2_mod_n_order(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n * n * n, |acc, p| acc / (p * p) * (p * p - 1))
}

fn reduce(v: i64, n: u64) -> u64 {
    v.rem_euclid(n as i64) as u64
}

/// Order of the subgroup of SL(2,Z/nZ) generated by the reductions.
pub fn image_order_mod_n(gens: &[Sl2Matrix], n: u64) -> Result<u64> {
    image_order_mod_n_with_limit(gens, n, DEFAULT_MODULUS_LIMIT)
}

pub fn image_order_mod_n_with_limit(gens: &[Sl2Matrix], n: u64, limit: u64) -> Result<u64> {
    if n > limit {
        return Err(Error::ModulusTooLarge { n, limit });
    }
    if n <= 1 {
        return Ok(1);
    }
    // A matrix mod n is packed as ((a·n + b)·n + c)·n + d.
    let nn = n as usize;
    let pack = |m: [u64; 4]| {
        (((m[0] as usize * nn + m[1] as usize) * nn + m[2] as usize) * nn) + m[3] as usize
    };
    let gens: Vec<[u64; 4]> = gens
        .iter()
        .map(|g| {
            [
                reduce(g.a, n),
                reduce(g.b, n),
                reduce(g.c, n),
                reduce(g.d, n),
            ]
        })
        .collect();
    let mut seen = vec![false; nn.pow(4)];
    let id = [1, 0, 0, 1];
    seen[pack(id)] = true;
    let mut stack = vec![id];
    let mut count = 1;
    // In a finite group the monoid generated by a set is the subgroup.
    while let Some(m) = stack.pop() {
        for g in &gens {
            let p = [
                (m[0] * g[0] + m[1] * g[2]) % n,
                (m[0] * g[1] + m[1] * g[3]) % n,
                (m[2] * g[0] + m[3] * g[2]) % n,
                (m[2] * g[1] + m[3] * g[3]) % n,
            ];
            let k = pack(p);
            if !seen[k] {
                seen[k] = true;
                count += 1;
                stack.push(p);
            }
        }
    }
    Ok(count)
}

pub fn surjects_mod_n(v: &VeechGroup, n: u64) -> Result<bool> {
    surjects_mod_n_generated_by(&v.generator_matrices(), n)
}

pub fn surjects_mod_n_generated_by(gens: &[Sl2Matrix], n: u64) -> Result<bool> {
    Ok(image_order_mod_n(gens, n)? == sl2_mod_n_order(n))
}

/// Which argument produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessCase {
    /// `p` is coprime to `ord(y)·ord(yx)`.
    #[serde(rename = "proposition-1")]
    Proposition1,
    /// Two shears `m₁ ≢ m₂ (mod p)` with `ord(x·y^{-mᵢ})` coprime to `p`.
    #[serde(rename = "proposition-2")]
    Proposition2,
    #[serde(rename = "abc-bc")]
    AbcBc,
    #[serde(rename = "abc-ac")]
    AbcAc,
    #[serde(rename = "abc-ab")]
    AbcAb,
}

impl WitnessCase {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessCase::Proposition1 => "proposition-1",
            WitnessCase::Proposition2 => "proposition-2",
            WitnessCase::AbcBc => "abc-bc",
            WitnessCase::AbcAc => "abc-ac",
            WitnessCase::AbcAb => "abc-ab",
        }
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Data for one prime: `Aᵢ·T^{mᵢ}·Aᵢ⁻¹` are parabolic Veech-group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TncgWitness {
    pub p: u64,
    pub case: WitnessCase,
    pub a1: Sl2Matrix,
    pub a2: Sl2Matrix,
    pub m1: u64,
    pub m2: u64,
    /// For shear witnesses, the shear parameters; `Aᵢ = (1 0; −sᵢ 1)`.
    pub shears: Option<(u64, u64)>,
}

impl TncgWitness {
    pub fn parabolics(&self) -> Result<(Sl2Matrix, Sl2Matrix)> {
        Ok((parabolic(&self.a1, self.m1)?, parabolic(&self.a2, self.m2)?))
    }

    pub fn verify<M: Membership + ?Sized>(&self, oracle: &M) -> Result<bool> {
        verify_theorem1(oracle, self.p, &self.a1, &self.a2, self.m1, self.m2)
    }
}

/// `A₁e₁ ≢ j·A₂e₁ (mod p)` for every `j ∈ {1, …, p−1}`.
///
/// Only `j mod p` matters, and `j ≡ 0` never matches since first columns
/// of SL(2,Z) matrices are primitive, hence nonzero modulo `p`.
pub fn columns_independent_mod_p(a1: &Sl2Matrix, a2: &Sl2Matrix, p: u64) -> bool {
    let (u0, u1) = a1.first_column();
    let (v0, v1) = a2.first_column();
    let (u0, u1, v0, v1) = (reduce(u0, p), reduce(u1, p), reduce(v0, p), reduce(v1, p));
    (1..p).all(|j| (u0, u1) != (j * v0 % p, j * v1 % p))
}

/// The three hypotheses of the criterion for a single prime.
pub fn verify_theorem1<M: Membership + ?Sized>(
    oracle: &M,
    p: u64,
    a1: &Sl2Matrix,
    a2: &Sl2Matrix,
    m1: u64,
    m2: u64,
) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !columns_independent_mod_p(a1, a2, p) || m1.is_multiple_of(p) || m2.is_multiple_of(p) {
        return Ok(false);
    }
    Ok(oracle.contains(&parabolic(a1, m1)?)? && oracle.contains(&parabolic(a2, m2)?)?)
}

/// `A·T^m·A⁻¹`.
pub fn parabolic(a: &Sl2Matrix, m: u64) -> Result<Sl2Matrix> {
    let m = i64::try_from(m).map_err(|_| Error::Overflow)?;
    a.conjugate(&Sl2Matrix::t_power(m))
}

/// A verified list of per-prime witnesses for an origami.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TncgCertificate {
    pub origami: RegularOrigami,
    pub witnesses: Vec<TncgWitness>,
}

impl TncgCertificate {
    pub fn residual_primes(&self) -> &'static str {
        RESIDUAL_PRIMES
    }

    pub fn primes(&self) -> Vec<u64> {
        self.witnesses.iter().map(|w| w.p).collect()
    }

    /// Re-run every check against the stored origami.
    pub fn verify(&self) -> Result<bool> {
        let expected = prime_factors(self.origami.squares() as u64);
        if self.primes() != expected {
            return Ok(false);
        }
        for w in &self.witnesses {
            if !w.verify(&self.origami)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `TS` sends `e₁` to `(1,1)`.
const DIAGONAL: Sl2Matrix = Sl2Matrix {
    a: 1,
    b: -1,
    c: 1,
    d: 0,
};
/// `ST⁻¹` sends `e₁` to `(0,1)`.
const VERTICAL: Sl2Matrix = Sl2Matrix {
    a: 0,
    b: -1,
    c: 1,
    d: -1,
};

/// Witness from the diagonal and vertical cylinders, with exponents
/// `ord(yx)` and `ord(y)`. It is valid for every prime coprime to both.
pub fn uniform_witness(o: &RegularOrigami, p: u64) -> TncgWitness {
    TncgWitness {
        p,
        case: WitnessCase::Proposition1,
        a1: DIAGONAL,
        a2: VERTICAL,
        m1: (o.y() * o.x()).order(),
        m2: o.y().order(),
        shears: None,
    }
}

fn checked(o: &RegularOrigami, w: TncgWitness) -> Result<TncgWitness> {
    if w.verify(o)? {
        Ok(w)
    } else {
        Err(Error::WitnessRejected { p: w.p })
    }
}

/// Search shears `s₁ ≢ s₂ (mod p)` below `p·ord(y)` with `p ∤ ord(x·y^{-sᵢ})`.
///
/// The range covers every residue pair modulo `p` and `ord(y)`. Shear `s`
/// corresponds to the direction `(1, −s)`, whose cylinders all have inverse
/// modulus `ord(x·y^{-s})`.
fn shear_witness(o: &RegularOrigami, p: u64) -> Result<Option<TncgWitness>> {
    let bound = p * o.y().order();
    let orders: Vec<u64> = (0..bound)
        .map(|s| (o.x() * &o.y().pow(-(s as i64))).order())
        .collect();
    let good = |s: u64| !orders[s as usize].is_multiple_of(p);
    for s2 in (0..bound).filter(|&s| good(s)) {
        if let Some(s1) = (0..bound).find(|&s1| good(s1) && s1 % p != s2 % p) {
            let shear = |s: u64| Sl2Matrix::lower(-(s as i64));
            let w = TncgWitness {
                p,
                case: WitnessCase::Proposition2,
                a1: shear(s1),
                a2: shear(s2),
                m1: orders[s1 as usize],
                m2: orders[s2 as usize],
                shears: Some((s1, s2)),
            };
            return checked(o, w).map(Some);
        }
    }
    Ok(None)
}

/// Certify via the two sufficient conditions on element orders.
///
/// Returns `None` when some prime dividing `|G|` satisfies neither; this
/// says nothing about the Veech group itself.
pub fn certify_by_proposition(o: &RegularOrigami) -> Result<Option<TncgCertificate>> {
    let uniform_orders = o.y().order() * (o.y() * o.x()).order();
    let mut witnesses = Vec::new();
    for p in prime_factors(o.squares() as u64) {
        let w = if !uniform_orders.is_multiple_of(p) {
            checked(o, uniform_witness(o, p))?
        } else {
            match shear_witness(o, p)? {
                Some(w) => w,
                None => return Ok(None),
            }
        };
        witnesses.push(w);
    }
    Ok(Some(TncgCertificate {
        origami: o.clone(),
        witnesses,
    }))
}

/// Certify the origami `(G, y, x)` built from an `(a,b,c)`-generating pair
/// `(x, y)` of `G` with pairwise coprime `a, b, c`.
///
/// Its horizontal, vertical and diagonal cylinders have inverse moduli
/// `b = ord(y)`, `a = ord(x)` and `c = ord(xy)`. Each prime divides at most
/// one of them, so two of the three directions always serve.
pub fn certify_by_abc(
    group: Arc<FiniteGroup>,
    x: &Permutation,
    y: &Permutation,
    (a, b, c): (u64, u64, u64),
) -> Result<TncgCertificate> {
    if a.gcd(&b) != 1 || a.gcd(&c) != 1 || b.gcd(&c) != 1 {
        return Err(Error::NotPairwiseCoprime { a, b, c });
    }
    let orders = (x.order(), y.order(), (x * y).order());
    if orders != (a, b, c) {
        return Err(Error::OrderMismatch {
            a: orders.0,
            b: orders.1,
            c: orders.2,
            ea: a,
            eb: b,
            ec: c,
        });
    }
    let o = RegularOrigami::new(group, y.clone(), x.clone())?;
    let mut witnesses = Vec::new();
    for p in prime_factors(o.squares() as u64) {
        let (case, a1, m1, a2, m2) = if (b * c) % p != 0 {
            (WitnessCase::AbcBc, Sl2Matrix::IDENTITY, b, DIAGONAL, c)
        } else if (a * c) % p != 0 {
            (WitnessCase::AbcAc, DIAGONAL, c, VERTICAL, a)
        } else {
            (WitnessCase::AbcAb, Sl2Matrix::IDENTITY, b, Sl2Matrix::S, a)
        };
        let w = TncgWitness {
            p,
            case,
            a1,
            a2,
            m1,
            m2,
            shears: None,
        };
        witnesses.push(checked(&o, w)?);
    }
    Ok(TncgCertificate {
        origami: o,
        witnesses,
    })
}
