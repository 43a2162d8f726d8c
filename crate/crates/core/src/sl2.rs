//! SL(2,Z) as words in `S`, `T` and as integer matrices, and its action on
//! regular origamis.
//!
//! `S = (0 -1; 1 0)` and `T = (1 1; 0 1)`. On a regular origami the
//! generators act by
//!
//! ```text
//! S·(G, x, y) = (G, y⁻¹, x)        S⁻¹·(G, x, y) = (G, y, x⁻¹)
//! T·(G, x, y) = (G, x, y x⁻¹)      T⁻¹·(G, x, y) = (G, x, y x)
//! ```
//!
//! and a word acts as a left action: the rightmost letter acts first, so
//! `S⁻¹T⁻¹·(G, x, y) = (G, yx, x⁻¹)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::RegularOrigami;

/// Words longer than this are refused by [`matrix_to_word`].
pub const MAX_WORD_LEN: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    T,
    SInv,
    TInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::S, Letter::T, Letter::SInv, Letter::TInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::S => 'S',
            Letter::T => 'T',
            Letter::SInv => 's',
            Letter::TInv => 't',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'S' => Ok(Letter::S),
            'T' => Ok(Letter::T),
            's' => Ok(Letter::SInv),
            't' => Ok(Letter::TInv),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub fn matrix(self) -> Sl2Matrix {
        match self {
            Letter::S => Sl2Matrix::S,
            Letter::T => Sl2Matrix::T,
            Letter::SInv => Sl2Matrix::S_INV,
            Letter::TInv => Sl2Matrix::T_INV,
        }
    }
}

/// A freely reduced word over `S, T, S⁻¹, T⁻¹`.
///
/// Serialises as a string with lowercase letters for inverses, e.g. `"TSt"`
/// is `T·S·T⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Sl2Word {
    letters: Vec<Letter>,
}

impl Sl2Word {
    pub fn identity() -> Self {
        Sl2Word::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Sl2Word { letters: out }
    }

    pub fn letter(l: Letter) -> Self {
        Sl2Word { letters: vec![l] }
    }

    /// `T^k`.
    pub fn t_power(k: i64) -> Self {
        let l = if k >= 0 { Letter::T } else { Letter::TInv };
        Sl2Word {
            letters: vec![l; k.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Sl2Word) -> Sl2Word {
        Sl2Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Sl2Word {
        Sl2Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The same letters in the opposite order.
    ///
    /// Software that lets words act from the right (reading letters left to
    /// right, as GAP does) describes the element `w` that this crate writes
    /// as `w.reversed()`.
    pub fn reversed(&self) -> Sl2Word {
        Sl2Word::new(self.letters.iter().rev().copied())
    }

    pub fn pow(&self, k: u32) -> Sl2Word {
        Sl2Word::new((0..k).flat_map(|_| self.letters.iter().copied()))
    }
}

impl fmt::Display for Sl2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Sl2Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Sl2Word::identity());
        }
        let letters = s
            .chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Ok(Sl2Word::new(letters))
    }
}

impl TryFrom<String> for Sl2Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Sl2Word> for String {
    fn from(w: Sl2Word) -> String {
        w.to_string()
    }
}

/// An integer matrix `(a b; c d)` with determinant 1. Arithmetic is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Sl2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const MINUS_IDENTITY: Sl2Matrix = Sl2Matrix {
        a: -1,
        b: 0,
        c: 0,
        d: -1,
    };
    pub const S: Sl2Matrix = Sl2Matrix {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const S_INV: Sl2Matrix = Sl2Matrix {
        a: 0,
        b: 1,
        c: -1,
        d: 0,
    };
    pub const T: Sl2Matrix = Sl2Matrix {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const T_INV: Sl2Matrix = Sl2Matrix {
        a: 1,
        b: -1,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = checked_det(a, b, c, d)?;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub fn t_power(k: i64) -> Self {
        Sl2Matrix {
            a: 1,
            b: k,
            c: 0,
            d: 1,
        }
    }

    /// `(1 0; k 1)`.
    pub fn lower(k: i64) -> Self {
        Sl2Matrix {
            a: 1,
            b: 0,
            c: k,
            d: 1,
        }
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Result<Sl2Matrix> {
        let dot = |p: i64, q: i64, r: i64, s: i64| -> Result<i64> {
            p.checked_mul(q)
                .and_then(|x| r.checked_mul(s).and_then(|y| x.checked_add(y)))
                .ok_or(Error::Overflow)
        };
        Ok(Sl2Matrix {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn inverse(&self) -> Result<Sl2Matrix> {
        Ok(Sl2Matrix {
            a: self.d,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
            c: self.c.checked_neg().ok_or(Error::Overflow)?,
            d: self.a,
        })
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Sl2Matrix) -> Result<Sl2Matrix> {
        self.mul(other)?.mul(&self.inverse()?)
    }

    /// `A·e₁`, the first column.
    pub fn first_column(&self) -> (i64, i64) {
        (self.a, self.c)
    }

    pub fn det(&self) -> Result<i64> {
        checked_det(self.a, self.b, self.c, self.d)
    }

    pub fn is_identity(&self) -> bool {
        *self == Sl2Matrix::IDENTITY
    }
}

fn checked_det(a: i64, b: i64, c: i64, d: i64) -> Result<i64> {
    a.checked_mul(d)
        .and_then(|ad| b.checked_mul(c).and_then(|bc| ad.checked_sub(bc)))
        .ok_or(Error::Overflow)
}

impl TryFrom<[[i64; 2]; 2]> for Sl2Matrix {
    type Error = Error;

    fn try_from(m: [[i64; 2]; 2]) -> Result<Self> {
        Sl2Matrix::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Sl2Matrix> for [[i64; 2]; 2] {
    fn from(m: Sl2Matrix) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Product of the letter matrices in word order.
pub fn word_to_matrix(w: &Sl2Word) -> Result<Sl2Matrix> {
    w.letters()
        .iter()
        .try_fold(Sl2Matrix::IDENTITY, |acc, l| acc.mul(&l.matrix()))
}

/// Euclidean reduction of the first column.
///
/// Repeatedly writes `M = T^q · S · M'` with the lower-left entry of `M'`
/// strictly smaller in absolute value, until `M'` is `±T^k`.
pub fn matrix_to_word(m: &Sl2Matrix) -> Result<Sl2Word> {
    if m.det()? != 1 {
        return Err(Error::NotUnimodular(m.det()?));
    }
    let mut letters: Vec<Letter> = Vec::new();
    let push_t = |letters: &mut Vec<Letter>, k: i64| -> Result<()> {
        if letters.len() as u64 + k.unsigned_abs() > MAX_WORD_LEN as u64 {
            return Err(Error::InvalidInput(format!(
                "word for the matrix exceeds {MAX_WORD_LEN} letters"
            )));
        }
        let l = if k >= 0 { Letter::T } else { Letter::TInv };
        letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
        Ok(())
    };
    let mut cur = *m;
    while cur.c != 0 {
        let q = cur.a.div_euclid(cur.c);
        // cur = T^q · (T^-q · cur)
        cur = Sl2Matrix::t_power(q.checked_neg().ok_or(Error::Overflow)?).mul(&cur)?;
        push_t(&mut letters, q)?;
        // cur = S · (S⁻¹ · cur)
        cur = Sl2Matrix::S_INV.mul(&cur)?;
        letters.push(Letter::S);
    }
    if cur.a == 1 {
        push_t(&mut letters, cur.b)?;
    } else {
        // -(1 -b; 0 1) = S² T^-b
        letters.extend([Letter::S, Letter::S]);
        push_t(&mut letters, cur.b.checked_neg().ok_or(Error::Overflow)?)?;
    }
    Ok(Sl2Word::new(letters))
}

/// One generator acting on a regular origami.
pub fn act_letter(o: &RegularOrigami, l: Letter) -> RegularOrigami {
    let (x, y) = (o.x(), o.y());
    let (nx, ny) = match l {
        Letter::S => (y.inverse(), x.clone()),
        Letter::SInv => (y.clone(), x.inverse()),
        Letter::T => (x.clone(), y * &x.inverse()),
        Letter::TInv => (x.clone(), y * x),
    };
    o.with_pair(nx, ny)
}

/// `w·O`, applying the rightmost letter first.
pub fn act_word(o: &RegularOrigami, w: &Sl2Word) -> RegularOrigami {
    w.letters()
        .iter()
        .rev()
        .fold(o.clone(), |acc, &l| act_letter(&acc, l))
}

pub fn act_matrix(o: &RegularOrigami, m: &Sl2Matrix) -> Result<RegularOrigami> {
    Ok(act_word(o, &matrix_to_word(m)?))
}
