//! Constructors for alternating, dihedral and PSL(2,q) examples, and the
//! search for `(a,b,c)`-generating pairs.

use std::sync::Arc;

use crate::congruence::is_prime;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::origami::RegularOrigami;
use crate::perm::Permutation;

/// Default bound on `|G|²` for [`abc_search`].
pub const DEFAULT_SCAN_LIMIT: u128 = 100_000_000;

fn closure_origami(degree: usize, x: Permutation, y: Permutation) -> Result<RegularOrigami> {
    let g = FiniteGroup::closure(degree, vec![x.clone(), y.clone()])?;
    RegularOrigami::new(Arc::new(g), x, y)
}

/// `(Aₙ, (1,2,3), (1,2,…,n))`.
///
/// For even `n` the long cycle is odd and the pair generates Sₙ, which is
/// reported as `NotGenerating` against the expected order `n!/2`.
pub fn alternating_origami(n: usize) -> Result<RegularOrigami> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "alternating origami needs n >= 3, got {n}"
        )));
    }
    let x = Permutation::from_cycles(n, &[vec![1, 2, 3]])?;
    let y = Permutation::from_cycles(n, &[(1..=n).collect()])?;
    let g = FiniteGroup::closure(n, vec![x.clone(), y.clone()])?;
    let expected = (3..=n).product::<usize>();
    if g.order() != expected {
        return Err(Error::NotGenerating {
            generated: g.order(),
            order: expected,
        });
    }
    RegularOrigami::new(Arc::new(g), x, y)
}

/// `(D_{2k}, r, s)` with `r` a rotation of order `k` and `s` a reflection.
///
/// For `k ≥ 3`, `r = (1,2,…,k)` and `s` inverts it. The action on `k` points
/// is not faithful for `k = 2`, so the Klein four group is realised on four
/// points as `r = (1,2)(3,4)`, `s = (1,3)(2,4)`.
pub fn dihedral_origami(k: usize) -> Result<RegularOrigami> {
    match k {
        0 | 1 => Err(Error::InvalidInput(format!(
            "dihedral origami needs k >= 2, got {k}"
        ))),
        2 => closure_origami(
            4,
            Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]])?,
            Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]])?,
        ),
        _ => {
            let r = Permutation::from_images((0..k).map(|i| (i + 1) % k).collect())?;
            let s = Permutation::from_images((0..k).map(|i| (k - i) % k).collect())?;
            closure_origami(k, r, s)
        }
    }
}

/// PSL(2,q) acting on the projective line over F_q.
///
/// Points `0..q` are field elements and point `q` is ∞. The group is
/// generated by `z ↦ z+1` and `z ↦ −1/z`.
pub fn psl2_group(q: u64) -> Result<FiniteGroup> {
    if !is_prime(q) || q < 5 {
        return Err(Error::NotPrime(q));
    }
    let qu = q as usize;
    let inv = |z: u64| {
        (1..q)
            .find(|w| z * w % q == 1)
            .expect("field element has an inverse")
    };
    let shift = Permutation::from_images(
        (0..=qu)
            .map(|z| if z == qu { qu } else { (z + 1) % qu })
            .collect(),
    )?;
    let invert = Permutation::from_images(
        (0..=qu)
            .map(|z| match z {
                0 => qu,
                z if z == qu => 0,
                z => (q - inv(z as u64)) as usize,
            })
            .collect(),
    )?;
    FiniteGroup::closure(qu + 1, vec![shift, invert])
}

pub fn abc_search(
    g: &FiniteGroup,
    (a, b, c): (u64, u64, u64),
) -> Result<Option<(Permutation, Permutation)>> {
    abc_search_with_limit(g, (a, b, c), DEFAULT_SCAN_LIMIT)
}

/// First pair `(x, y)`, ordered by element index with `x` outermost, with
/// `ord(x) = a`, `ord(y) = b`, `ord(xy) = c` and `⟨x, y⟩ = G`.
pub fn abc_search_with_limit(
    g: &FiniteGroup,
    (a, b, c): (u64, u64, u64),
    limit: u128,
) -> Result<Option<(Permutation, Permutation)>> {
    let pairs = (g.order() as u128).pow(2);
    if pairs > limit {
        return Err(Error::ScanTooLarge { pairs, limit });
    }
    let orders: Vec<u64> = g.elements().iter().map(Permutation::order).collect();
    let with_order = |k: u64| -> Vec<&Permutation> {
        g.elements()
            .iter()
            .zip(&orders)
            .filter(|&(_, &o)| o == k)
            .map(|(e, _)| e)
            .collect()
    };
    let (xs, ys) = (with_order(a), with_order(b));
    for x in &xs {
        for y in &ys {
            if (*x * *y).order() == c && g.is_generating_pair(x, y) {
                return Ok(Some(((*x).clone(), (*y).clone())));
            }
        }
    }
    Ok(None)
}

/// The origami `(G, y, x)` for the first `(a,b,c)`-generating pair `(x, y)`.
pub fn abc_origami(g: FiniteGroup, abc: (u64, u64, u64)) -> Result<Option<RegularOrigami>> {
    match abc_search(&g, abc)? {
        Some((x, y)) => RegularOrigami::new(Arc::new(g), y, x).map(Some),
        None => Ok(None),
    }
}
