//! Regular origamis `(G, x, y)` and their square-tiled realisation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A regular origami: a finite group with a generating pair.
///
/// `x` moves a square to its right neighbour and `y` to its upper
/// neighbour. Non-trivial regular origamis are reduced, so their Veech
/// groups have finite index in SL(2,Z); this is a known fact that is not
/// checked here.
#[derive(Clone)]
pub struct RegularOrigami {
    group: Arc<FiniteGroup>,
    x: Permutation,
    y: Permutation,
}

impl RegularOrigami {
    pub fn new(group: Arc<FiniteGroup>, x: Permutation, y: Permutation) -> Result<Self> {
        for g in [&x, &y] {
            if !group.contains(g) {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        let generated = group.generated_order(&[&x, &y]);
        if generated != group.order() {
            return Err(Error::NotGenerating {
                generated,
                order: group.order(),
            });
        }
        Ok(RegularOrigami { group, x, y })
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        let id = Permutation::identity(1);
        let group = Arc::new(FiniteGroup::closure(1, vec![id.clone()]).expect("trivial group"));
        RegularOrigami {
            group,
            x: id.clone(),
            y: id,
        }
    }

    /// Same group, new pair. The pair must already be known to generate.
    pub(crate) fn with_pair(&self, x: Permutation, y: Permutation) -> Self {
        RegularOrigami {
            group: Arc::clone(&self.group),
            x,
            y,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn y(&self) -> &Permutation {
        &self.y
    }

    pub fn squares(&self) -> usize {
        self.group.order()
    }

    /// Aut(G)-equivalence of the generating pairs.
    pub fn equivalent(&self, other: &RegularOrigami) -> bool {
        *self.group == *other.group
            && self
                .group
                .pairs_equivalent((&self.x, &self.y), (&other.x, &other.y))
    }

    /// Order of `[x, y]`, the cone angle (in units of 2π) at every vertex.
    pub fn commutator_order(&self) -> u64 {
        let c = &(&(&self.x * &self.y) * &self.x.inverse()) * &self.y.inverse();
        c.order()
    }

    /// Squares are group elements; the right neighbour of `g` is `g·x` and
    /// the upper neighbour is `g·y`.
    pub fn cayley_origami(&self) -> PermOrigami {
        let g = &self.group;
        let right_mult = |s: &Permutation| {
            let images = g
                .elements()
                .iter()
                .map(|e| g.index_of(&(e * s)).expect("closed under multiplication"))
                .collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        };
        PermOrigami {
            sigma_r: right_mult(&self.x),
            sigma_u: right_mult(&self.y),
        }
    }
}

/// Exact tuple equality (same subgroup, same pair). Use
/// [`RegularOrigami::equivalent`] for isomorphism.
impl PartialEq for RegularOrigami {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && *self.group == *other.group
    }
}

impl Eq for RegularOrigami {}

impl fmt::Display for RegularOrigami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(G[{}], {}, {})", self.group.order(), self.x, self.y)
    }
}

impl fmt::Debug for RegularOrigami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularOrigami{self}")
    }
}

/// An origami given by its right and upper neighbour permutations on squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermOrigami {
    sigma_r: Permutation,
    sigma_u: Permutation,
}

impl PermOrigami {
    pub fn new(sigma_r: Permutation, sigma_u: Permutation) -> Result<Self> {
        if sigma_r.degree() != sigma_u.degree() {
            return Err(Error::DegreeMismatch(sigma_r.degree(), sigma_u.degree()));
        }
        let n = sigma_r.degree();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        let (r_inv, u_inv) = (sigma_r.inverse(), sigma_u.inverse());
        while let Some(t) = stack.pop() {
            for next in [
                sigma_r.apply(t),
                sigma_u.apply(t),
                r_inv.apply(t),
                u_inv.apply(t),
            ] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidInput(format!(
                "surface is disconnected: {reached} of {n} squares reachable"
            )));
        }
        Ok(PermOrigami { sigma_r, sigma_u })
    }

    pub fn squares(&self) -> usize {
        self.sigma_r.degree()
    }

    pub fn sigma_r(&self) -> &Permutation {
        &self.sigma_r
    }

    pub fn sigma_u(&self) -> &Permutation {
        &self.sigma_u
    }

    /// `σ_r σ_u σ_r⁻¹ σ_u⁻¹`; its cycles are the vertices of the tiling.
    pub fn commutator(&self) -> Permutation {
        let r = &self.sigma_r;
        let u = &self.sigma_u;
        &(&(r * u) * &r.inverse()) * &u.inverse()
    }

    /// Cone angles in units of 2π, sorted. Entries ≥ 2 are singularities.
    pub fn cone_angles(&self) -> Vec<usize> {
        let mut angles = self.commutator().cycle_lengths();
        angles.sort_unstable();
        angles
    }

    pub fn vertices(&self) -> usize {
        self.commutator().cycles().len()
    }

    /// `V - E + F` with `F = N` squares and `E = 2N` edges.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices() as i64 - self.squares() as i64
    }

    pub fn genus(&self) -> u64 {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && chi % 2 == 0);
        ((2 - chi) / 2) as u64
    }
}
