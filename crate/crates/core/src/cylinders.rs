//! Cylinder decompositions in rational directions and their parabolic
//! Veech-group elements.
//!
//! To decompose `O` in a primitive direction `v`, pick `A ∈ SL(2,Z)` with
//! `A·e₁ = v`. The horizontal cylinders of `A⁻¹·O` are the cylinders of `O`
//! in direction `v`, and `A·T^k·A⁻¹` lies in the Veech group of `O`, where
//! `k` is the least integer multiple of every inverse modulus.
//!
//! Circumferences and heights are measured in the lattice: along `v` in
//! units of `v`, so they are invariant under SL(2,Z).

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{PermOrigami, RegularOrigami};
use crate::sl2::{self, Sl2Matrix, Sl2Word};

/// Circumference over height, as a reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InverseModulus {
    pub num: u64,
    pub den: u64,
}

impl InverseModulus {
    pub fn new(w: u64, h: u64) -> Self {
        let g = w.gcd(&h);
        InverseModulus {
            num: w / g,
            den: h / g,
        }
    }

    pub fn as_integer(&self) -> Option<u64> {
        (self.den == 1).then_some(self.num)
    }
}

impl fmt::Display for InverseModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    circumference: usize,
    height: usize,
    squares: Vec<usize>,
}

impl Cylinder {
    pub fn circumference(&self) -> usize {
        self.circumference
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Squares (0-based) of the straightened origami, sorted.
    pub fn squares(&self) -> &[usize] {
        &self.squares
    }

    pub fn inverse_modulus(&self) -> InverseModulus {
        InverseModulus::new(self.circumference as u64, self.height as u64)
    }
}

/// Horizontal cylinders of a permutation origami.
///
/// Rows are the cycles of `σ_r`. The top edge of a row is free of singular
/// vertices exactly when `σ_u σ_r = σ_r σ_u` on every square of the row; rows
/// joined across such edges form one cylinder.
pub fn horizontal_cylinders(p: &PermOrigami) -> Vec<Cylinder> {
    let (r, u) = (p.sigma_r(), p.sigma_u());
    let rows = r.cycles();
    let mut row_of = vec![0usize; p.squares()];
    for (i, row) in rows.iter().enumerate() {
        for &t in row {
            row_of[t] = i;
        }
    }

    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, row) in rows.iter().enumerate() {
        let free = row
            .iter()
            .all(|&t| u.apply(r.apply(t)) == r.apply(u.apply(t)));
        if free {
            let above = row_of[u.apply(row[0])];
            let (a, b) = (find(&mut parent, i), find(&mut parent, above));
            parent[a] = b;
        }
    }

    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..rows.len() {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(i),
            None => groups.push((root, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let circumference = rows[members[0]].len();
            debug_assert!(members.iter().all(|&m| rows[m].len() == circumference));
            let mut squares: Vec<usize> = members
                .iter()
                .flat_map(|&m| rows[m].iter().copied())
                .collect();
            squares.sort_unstable();
            Cylinder {
                circumference,
                height: members.len(),
                squares,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderDecomposition {
    direction: (i64, i64),
    matrix: Sl2Matrix,
    straightening: Sl2Word,
    cylinders: Vec<Cylinder>,
    parabolic: Sl2Matrix,
}

impl CylinderDecomposition {
    /// The primitive direction `A·e₁`.
    pub fn direction(&self) -> (i64, i64) {
        self.direction
    }

    /// `A`, mapping `e₁` to the direction.
    pub fn matrix(&self) -> &Sl2Matrix {
        &self.matrix
    }

    /// A word for `A⁻¹`; it acts on the origami to make the direction horizontal.
    pub fn straightening(&self) -> &Sl2Word {
        &self.straightening
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn parabolic(&self) -> &Sl2Matrix {
        &self.parabolic
    }

    pub fn total_area(&self) -> usize {
        self.cylinders
            .iter()
            .map(|c| c.circumference * c.height)
            .sum()
    }

    /// Least positive integer that is an integer multiple of every inverse modulus.
    pub fn parabolic_exponent(&self) -> u64 {
        parabolic_exponent(&self.cylinders)
    }
}

/// For a reduced fraction `a/b`, the integer multiples are the multiples of `a`.
fn parabolic_exponent(cylinders: &[Cylinder]) -> u64 {
    cylinders
        .iter()
        .map(|c| c.inverse_modulus().num)
        .fold(1, |acc, n| acc.lcm(&n))
}

/// `A·T^k·A⁻¹` for the decomposition's `A` and exponent `k`.
pub fn parabolic_element(d: &CylinderDecomposition) -> Result<Sl2Matrix> {
    let k = i64::try_from(d.parabolic_exponent()).map_err(|_| Error::Overflow)?;
    d.matrix.conjugate(&Sl2Matrix::t_power(k))
}

fn decompose(
    o: &RegularOrigami,
    matrix: Sl2Matrix,
    straightening: Sl2Word,
) -> Result<CylinderDecomposition> {
    debug_assert_eq!(sl2::word_to_matrix(&straightening)?, matrix.inverse()?);
    let straight = sl2::act_word(o, &straightening);
    let cylinders = horizontal_cylinders(&straight.cayley_origami());
    let mut d = CylinderDecomposition {
        direction: matrix.first_column(),
        matrix,
        straightening,
        cylinders,
        parabolic: Sl2Matrix::IDENTITY,
    };
    d.parabolic = parabolic_element(&d)?;
    Ok(d)
}

/// Decomposition in direction `(1, m)`, straightened by `(S³TS)^m`.
///
/// Every cylinder of a non-abelian regular origami in this direction has
/// inverse modulus `ord(x·y^m)`, since `(S³TS)^m·(G, x, y) = (G, x·y^m, y)`.
pub fn cylinders_in_direction(o: &RegularOrigami, m: u64) -> Result<CylinderDecomposition> {
    let m_signed = i64::try_from(m).map_err(|_| Error::Overflow)?;
    let step: Sl2Word = "SSSTS".parse()?;
    let power = u32::try_from(m).map_err(|_| Error::Overflow)?;
    decompose(o, Sl2Matrix::lower(m_signed), step.pow(power))
}

/// Decomposition in an arbitrary primitive direction `(p, q)`.
pub fn cylinders_in_direction_vector(
    o: &RegularOrigami,
    (p, q): (i64, i64),
) -> Result<CylinderDecomposition> {
    let e = p.extended_gcd(&q);
    if e.gcd != 1 {
        return Err(Error::NotPrimitive(p, q));
    }
    // p·x + q·y = 1, so (p -y; q x) has determinant 1.
    let neg_y = e.y.checked_neg().ok_or(Error::Overflow)?;
    let matrix = Sl2Matrix::new(p, neg_y, q, e.x)?;
    let straightening = sl2::matrix_to_word(&matrix.inverse()?)?;
    decompose(o, matrix, straightening)
}
