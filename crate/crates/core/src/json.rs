//! JSON file formats. Permutations are lists of 1-based cycles, e.g.
//! `[[1,2,3]]`; matrices are `[[a,b],[c,d]]`; words use `S`, `T` and
//! lower-case letters for inverses.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::congruence::{TncgCertificate, TncgWitness, WitnessCase, RESIDUAL_PRIMES};
use crate::cylinders::CylinderDecomposition;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::origami::{PermOrigami, RegularOrigami};
use crate::perm::Permutation;
use crate::sl2::{Sl2Matrix, Sl2Word};
use crate::veech::{VeechGenerator, VeechGroup};

pub type Cycles = Vec<Vec<usize>>;

fn perm(degree: usize, cycles: &Cycles) -> Result<Permutation> {
    Permutation::from_cycles(degree, cycles)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Cycles>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::to_cycles).collect(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .map(|c| perm(self.degree, c))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::closure(self.degree, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiJson {
    pub group: GroupJson,
    pub x: Cycles,
    pub y: Cycles,
}

impl OrigamiJson {
    pub fn from_origami(o: &RegularOrigami) -> Self {
        OrigamiJson {
            group: GroupJson::from_group(o.group()),
            x: o.x().to_cycles(),
            y: o.y().to_cycles(),
        }
    }

    pub fn to_origami(&self) -> Result<RegularOrigami> {
        let g = self.group.to_group()?;
        let n = g.degree();
        RegularOrigami::new(Arc::new(g), perm(n, &self.x)?, perm(n, &self.y)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermOrigamiJson {
    pub n: usize,
    pub sigma_r: Cycles,
    pub sigma_u: Cycles,
}

impl PermOrigamiJson {
    pub fn from_perm_origami(p: &PermOrigami) -> Self {
        PermOrigamiJson {
            n: p.squares(),
            sigma_r: p.sigma_r().to_cycles(),
            sigma_u: p.sigma_u().to_cycles(),
        }
    }

    pub fn to_perm_origami(&self) -> Result<PermOrigami> {
        PermOrigami::new(perm(self.n, &self.sigma_r)?, perm(self.n, &self.sigma_u)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderJson {
    pub w: usize,
    pub h: usize,
    /// 1-based indices into the group's element list.
    pub squares: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub direction: [i64; 2],
    #[serde(rename = "A")]
    pub a: Sl2Matrix,
    pub cylinders: Vec<CylinderJson>,
    pub parabolic: Sl2Matrix,
}

impl DecompositionJson {
    pub fn from_decomposition(d: &CylinderDecomposition) -> Self {
        let (p, q) = d.direction();
        DecompositionJson {
            direction: [p, q],
            a: *d.matrix(),
            cylinders: d
                .cylinders()
                .iter()
                .map(|c| CylinderJson {
                    w: c.circumference(),
                    h: c.height(),
                    squares: c.squares().iter().map(|s| s + 1).collect(),
                })
                .collect(),
            parabolic: *d.parabolic(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub p: u64,
    pub case: WitnessCase,
    #[serde(rename = "A1")]
    pub a1: Sl2Matrix,
    #[serde(rename = "A2")]
    pub a2: Sl2Matrix,
    pub m1: u64,
    pub m2: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shears: Option<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub origami: OrigamiJson,
    pub witnesses: Vec<WitnessJson>,
    pub residual_primes: String,
}

impl CertificateJson {
    pub fn from_certificate(c: &TncgCertificate) -> Self {
        CertificateJson {
            origami: OrigamiJson::from_origami(&c.origami),
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    p: w.p,
                    case: w.case,
                    a1: w.a1,
                    a2: w.a2,
                    m1: w.m1,
                    m2: w.m2,
                    shears: w.shears.map(|(a, b)| [a, b]),
                })
                .collect(),
            residual_primes: c.residual_primes().to_string(),
        }
    }

    /// Parses without re-verifying; call [`TncgCertificate::verify`] to check.
    pub fn to_certificate(&self) -> Result<TncgCertificate> {
        if self.residual_primes != RESIDUAL_PRIMES {
            return Err(Error::InvalidInput(format!(
                "unknown residual-prime clause {:?}",
                self.residual_primes
            )));
        }
        Ok(TncgCertificate {
            origami: self.origami.to_origami()?,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| TncgWitness {
                    p: w.p,
                    case: w.case,
                    a1: w.a1,
                    a2: w.a2,
                    m1: w.m1,
                    m2: w.m2,
                    shears: w.shears.map(|[a, b]| (a, b)),
                })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub word: Sl2Word,
    pub matrix: Sl2Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeechJson {
    pub origami: OrigamiJson,
    pub index: usize,
    pub generators: Vec<GeneratorJson>,
    pub cusp_widths: Vec<usize>,
    pub level: u64,
    /// Action of `S` and `T` on the cosets, numbered from 1.
    pub s_perm: Cycles,
    pub t_perm: Cycles,
}

impl VeechJson {
    pub fn from_veech_group(v: &VeechGroup) -> Self {
        VeechJson {
            origami: OrigamiJson::from_origami(v.base()),
            index: v.index(),
            generators: v
                .generators()
                .iter()
                .map(|g| GeneratorJson {
                    word: g.word.clone(),
                    matrix: g.matrix,
                })
                .collect(),
            cusp_widths: v.cusp_widths().to_vec(),
            level: v.level(),
            s_perm: v.s_perm().to_cycles(),
            t_perm: v.t_perm().to_cycles(),
        }
    }

    pub fn to_veech_group(&self) -> Result<VeechGroup> {
        let v = VeechGroup::from_parts(
            self.origami.to_origami()?,
            self.generators
                .iter()
                .map(|g| VeechGenerator {
                    word: g.word.clone(),
                    matrix: g.matrix,
                })
                .collect(),
            perm(self.index, &self.s_perm)?,
            perm(self.index, &self.t_perm)?,
        )?;
        if v.cusp_widths() != self.cusp_widths.as_slice() || v.level() != self.level {
            return Err(Error::InvalidInput(
                "stored cusp data is inconsistent".into(),
            ));
        }
        Ok(v)
    }
}
