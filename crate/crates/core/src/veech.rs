//! SL(2,Z)-orbits of regular origamis and their stabilisers, the Veech groups.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::origami::RegularOrigami;
use crate::perm::Permutation;
use crate::sl2::{self, Letter, Sl2Matrix, Sl2Word};

pub const DEFAULT_ORBIT_LIMIT: usize = 100_000;

/// Cheap isomorphism invariants used to bucket orbit nodes before the exact
/// equivalence test: orders of `x`, `y`, `xy`, `xy⁻¹` and of the commutator
/// (the common cone angle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct InvariantKey([u64; 5]);

impl InvariantKey {
    fn of(o: &RegularOrigami) -> Self {
        let (x, y) = (o.x(), o.y());
        InvariantKey([
            x.order(),
            y.order(),
            (x * y).order(),
            (x * &y.inverse()).order(),
            o.commutator_order(),
        ])
    }
}

/// The orbit of a base origami under SL(2,Z) with its Schreier graph.
///
/// Node 0 is the base. Nodes are numbered in breadth-first order, trying
/// the letters in the order `S, T, S⁻¹, T⁻¹`.
#[derive(Clone, Debug)]
pub struct OrbitGraph {
    nodes: Vec<RegularOrigami>,
    transversal: Vec<Sl2Word>,
    edges: Vec<[usize; 4]>,
}

fn letter_slot(l: Letter) -> usize {
    match l {
        Letter::S => 0,
        Letter::T => 1,
        Letter::SInv => 2,
        Letter::TInv => 3,
    }
}

impl OrbitGraph {
    pub fn nodes(&self) -> &[RegularOrigami] {
        &self.nodes
    }

    pub fn base(&self) -> &RegularOrigami {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// A word `w` with `w·base` equivalent to node `i`.
    pub fn transversal(&self, i: usize) -> &Sl2Word {
        &self.transversal[i]
    }

    /// The node equivalent to `l·node(i)`.
    pub fn edge(&self, i: usize, l: Letter) -> usize {
        self.edges[i][letter_slot(l)]
    }

    /// The permutation of nodes induced by a generator.
    pub fn coset_permutation(&self, l: Letter) -> Permutation {
        Permutation::from_images((0..self.len()).map(|i| self.edge(i, l)).collect())
            .expect("letters act bijectively on the orbit")
    }

    /// Node reached from the base by `w` (rightmost letter first).
    pub fn walk(&self, w: &Sl2Word) -> usize {
        w.letters()
            .iter()
            .rev()
            .fold(0, |node, &l| self.edge(node, l))
    }
}

pub fn orbit(o: &RegularOrigami) -> Result<OrbitGraph> {
    orbit_with_limit(o, DEFAULT_ORBIT_LIMIT)
}

pub fn orbit_with_limit(o: &RegularOrigami, limit: usize) -> Result<OrbitGraph> {
    let mut nodes = vec![o.clone()];
    let mut transversal = vec![Sl2Word::identity()];
    let mut edges: Vec<[usize; 4]> = vec![[usize::MAX; 4]];
    let mut buckets: HashMap<InvariantKey, Vec<usize>> = HashMap::new();
    buckets.entry(InvariantKey::of(o)).or_default().push(0);

    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for l in Letter::ALL {
            let image = sl2::act_letter(&nodes[i], l);
            let key = InvariantKey::of(&image);
            let bucket = buckets.entry(key).or_default();
            let found = bucket
                .iter()
                .copied()
                .find(|&j| nodes[j].equivalent(&image));
            let target = match found {
                Some(j) => j,
                None => {
                    if nodes.len() >= limit {
                        return Err(Error::OrbitTooLarge { limit });
                    }
                    let j = nodes.len();
                    bucket.push(j);
                    nodes.push(image);
                    transversal.push(Sl2Word::letter(l).concat(&transversal[i]));
                    edges.push([usize::MAX; 4]);
                    queue.push_back(j);
                    j
                }
            };
            edges[i][letter_slot(l)] = target;
        }
    }
    Ok(OrbitGraph {
        nodes,
        transversal,
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeechGenerator {
    pub word: Sl2Word,
    pub matrix: Sl2Matrix,
}

/// The Veech group of an origami, as a finite-index subgroup of SL(2,Z).
#[derive(Clone, Debug)]
pub struct VeechGroup {
    base: RegularOrigami,
    generators: Vec<VeechGenerator>,
    s_perm: Permutation,
    t_perm: Permutation,
    cusp_widths: Vec<usize>,
    level: u64,
}

impl VeechGroup {
    /// Rebuild from stored data, e.g. a cache entry. Cusp data is recomputed
    /// and every generator is checked against the coset action.
    pub fn from_parts(
        base: RegularOrigami,
        generators: Vec<VeechGenerator>,
        s_perm: Permutation,
        t_perm: Permutation,
    ) -> Result<Self> {
        if s_perm.degree() != t_perm.degree() {
            return Err(Error::DegreeMismatch(s_perm.degree(), t_perm.degree()));
        }
        let (widths, level) = widths_and_level(&t_perm);
        let v = VeechGroup {
            base,
            generators,
            s_perm,
            t_perm,
            cusp_widths: widths,
            level,
        };
        for g in &v.generators {
            if sl2::word_to_matrix(&g.word)? != g.matrix || !v.contains_word(&g.word) {
                return Err(Error::InvalidInput(format!(
                    "generator {} is not in the stabiliser",
                    g.word
                )));
            }
        }
        Ok(v)
    }

    pub fn base(&self) -> &RegularOrigami {
        &self.base
    }

    pub fn index(&self) -> usize {
        self.s_perm.degree()
    }

    pub fn generators(&self) -> &[VeechGenerator] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Sl2Matrix> {
        self.generators.iter().map(|g| g.matrix).collect()
    }

    /// Action of `S` on the cosets (orbit nodes).
    pub fn s_perm(&self) -> &Permutation {
        &self.s_perm
    }

    /// Action of `T` on the cosets (orbit nodes).
    pub fn t_perm(&self) -> &Permutation {
        &self.t_perm
    }

    pub fn cusp_widths(&self) -> &[usize] {
        &self.cusp_widths
    }

    /// Least common multiple of the cusp widths.
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Membership by walking the coset graph from the base node.
    pub fn contains_word(&self, w: &Sl2Word) -> bool {
        let (s_inv, t_inv) = (self.s_perm.inverse(), self.t_perm.inverse());
        let end = w.letters().iter().rev().fold(0, |node, l| match l {
            Letter::S => self.s_perm.apply(node),
            Letter::T => self.t_perm.apply(node),
            Letter::SInv => s_inv.apply(node),
            Letter::TInv => t_inv.apply(node),
        });
        end == 0
    }

    pub fn contains_matrix(&self, m: &Sl2Matrix) -> Result<bool> {
        Ok(self.contains_word(&sl2::matrix_to_word(m)?))
    }
}

/// Schreier generators of the stabiliser of node 0.
///
/// For an edge `i → j` labelled `a` we have `a·t_i·base ≅ t_j·base`, so
/// `t_j⁻¹·a·t_i` fixes the base. Over all edges labelled `S` and `T` these
/// generate the full stabiliser; trivial and repeated matrices are dropped.
pub fn veech_generators(g: &OrbitGraph) -> Result<VeechGroup> {
    let mut generators = Vec::new();
    let mut seen: HashSet<Sl2Matrix> = HashSet::new();
    for i in 0..g.len() {
        for a in [Letter::S, Letter::T] {
            let j = g.edge(i, a);
            let word = g
                .transversal(j)
                .inverse()
                .concat(&Sl2Word::letter(a))
                .concat(g.transversal(i));
            if word.is_empty() {
                continue;
            }
            let matrix = sl2::word_to_matrix(&word)?;
            if matrix.is_identity() || !seen.insert(matrix) {
                continue;
            }
            generators.push(VeechGenerator { word, matrix });
        }
    }
    VeechGroup::from_parts(
        g.base().clone(),
        generators,
        g.coset_permutation(Letter::S),
        g.coset_permutation(Letter::T),
    )
}

/// Cycle lengths of `T` on the orbit (sorted) and their lcm.
pub fn cusp_data(g: &OrbitGraph) -> (Vec<usize>, u64) {
    widths_and_level(&g.coset_permutation(Letter::T))
}

fn widths_and_level(t: &Permutation) -> (Vec<usize>, u64) {
    let mut widths = t.cycle_lengths();
    widths.sort_unstable();
    let level = widths.iter().fold(1u64, |acc, &w| acc.lcm(&(w as u64)));
    (widths, level)
}

pub fn veech_group(o: &RegularOrigami) -> Result<VeechGroup> {
    veech_generators(&orbit(o)?)
}

/// Whether `M` lies in the Veech group of `o`: act and compare.
pub fn contains(o: &RegularOrigami, m: &Sl2Matrix) -> Result<bool> {
    Ok(sl2::act_matrix(o, m)?.equivalent(o))
}

/// Anything that can decide membership in a Veech group.
pub trait Membership {
    fn contains(&self, m: &Sl2Matrix) -> Result<bool>;
}

impl Membership for RegularOrigami {
    fn contains(&self, m: &Sl2Matrix) -> Result<bool> {
        contains(self, m)
    }
}

impl Membership for VeechGroup {
    fn contains(&self, m: &Sl2Matrix) -> Result<bool> {
        self.contains_matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn origami(n: usize, x: &[&[usize]], y: &[&[usize]]) -> RegularOrigami {
        let (x, y) = (cyc(n, x), cyc(n, y));
        let g = FiniteGroup::closure(n, vec![x.clone(), y.clone()]).unwrap();
        RegularOrigami::new(Arc::new(g), x, y).unwrap()
    }

    fn a5() -> RegularOrigami {
        origami(5, &[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]])
    }

    fn d8() -> RegularOrigami {
        origami(4, &[&[1, 2, 3, 4]], &[&[2, 4]])
    }

    /// Orbit by exhaustive action with a linear scan over all nodes.
    fn brute_orbit(o: &RegularOrigami) -> Vec<RegularOrigami> {
        let mut nodes = vec![o.clone()];
        let mut k = 0;
        while k < nodes.len() {
            for l in Letter::ALL {
                let p = sl2::act_letter(&nodes[k], l);
                if !nodes.iter().any(|n| n.equivalent(&p)) {
                    nodes.push(p);
                }
            }
            k += 1;
        }
        nodes
    }

    fn w(s: &str) -> Sl2Word {
        s.parse().unwrap()
    }

    #[test]
    fn torus_has_full_veech_group() {
        let g = orbit(&RegularOrigami::torus()).unwrap();
        assert_eq!(g.len(), 1);
        let v = veech_generators(&g).unwrap();
        assert_eq!(v.index(), 1);
        assert_eq!(v.cusp_widths(), &[1]);
        assert_eq!(v.level(), 1);
        let mats = v.generator_matrices();
        assert!(mats.contains(&Sl2Matrix::S) && mats.contains(&Sl2Matrix::T));
    }

    #[test]
    fn alternating_example_has_index_nine() {
        let o = a5();
        let g = orbit(&o).unwrap();
        assert_eq!(g.len(), 9);
        let v = veech_generators(&g).unwrap();
        assert_eq!(v.index(), 9);
        assert_eq!(v.cusp_widths().iter().sum::<usize>(), 9);
        // Each cusp width is the least k with T^k fixing a node, found by acting.
        let mut widths = Vec::new();
        let mut covered = vec![false; g.len()];
        for i in 0..g.len() {
            if covered[i] {
                continue;
            }
            let mut p = sl2::act_letter(&g.nodes()[i], Letter::T);
            let mut k = 1;
            while !p.equivalent(&g.nodes()[i]) {
                let j = (0..g.len()).find(|&j| g.nodes()[j].equivalent(&p)).unwrap();
                covered[j] = true;
                p = sl2::act_letter(&p, Letter::T);
                k += 1;
            }
            covered[i] = true;
            widths.push(k);
        }
        widths.sort_unstable();
        assert_eq!(v.cusp_widths(), widths.as_slice());
        assert_eq!(
            v.level(),
            widths.iter().fold(1u64, |a, &w| a.lcm(&(w as u64)))
        );
        assert!(widths.contains(&3));
        for gen in v.generators() {
            assert!(contains(&o, &gen.matrix).unwrap(), "{}", gen.word);
            assert!(v.contains_word(&gen.word));
        }
    }

    #[test]
    fn published_generators_use_right_action_words() {
        let o = a5();
        let v = veech_group(&o).unwrap();
        let listed = ["SS", "TSt", "TTT", "tSTs", "STSttts"];
        for s in listed {
            let m = sl2::word_to_matrix(&w(s).reversed()).unwrap();
            assert!(contains(&o, &m).unwrap(), "{s}");
            assert!(v.contains_matrix(&m).unwrap(), "{s}");
        }
        // Read as left-action words only S², T³ (the palindromes) are members.
        let literal: Vec<bool> = listed
            .iter()
            .map(|s| contains(&o, &sl2::word_to_matrix(&w(s)).unwrap()).unwrap())
            .collect();
        assert_eq!(literal, vec![true, false, true, false, false]);
    }

    #[test]
    fn t_moves_the_alternating_base() {
        assert!(!contains(&a5(), &Sl2Matrix::T).unwrap());
        assert!(contains(&a5(), &Sl2Matrix::t_power(3)).unwrap());
        assert!(contains(&a5(), &Sl2Matrix::IDENTITY).unwrap());
    }

    #[test]
    fn dihedral_orbit_matches_brute_force() {
        let o = d8();
        let g = orbit(&o).unwrap();
        let brute = brute_orbit(&o);
        assert_eq!(g.len(), brute.len());
        for n in g.nodes() {
            assert_eq!(brute.iter().filter(|b| b.equivalent(n)).count(), 1);
        }
        assert!(contains(&o, &Sl2Matrix::t_power(4)).unwrap());
    }

    #[test]
    fn orbit_invariants() {
        for o in [a5(), d8()] {
            let g = orbit(&o).unwrap();
            for i in 0..g.len() {
                assert!(sl2::act_word(&o, g.transversal(i)).equivalent(&g.nodes()[i]));
                assert_eq!(g.walk(g.transversal(i)), i);
                for j in 0..i {
                    assert!(!g.nodes()[i].equivalent(&g.nodes()[j]));
                }
            }
            let s = g.coset_permutation(Letter::S);
            let t = g.coset_permutation(Letter::T);
            assert!(s.pow(4).is_identity());
            assert!((&s * &t).pow(6).is_identity());
            assert_eq!(s.cycle_lengths().iter().sum::<usize>(), g.len());
            assert_eq!(t.cycle_lengths().iter().sum::<usize>(), g.len());
        }
    }

    #[test]
    fn orbit_limit_enforced() {
        assert_eq!(
            orbit_with_limit(&a5(), 4).unwrap_err(),
            Error::OrbitTooLarge { limit: 4 }
        );
    }

    #[test]
    fn both_membership_routes_agree() {
        let o = a5();
        let v = veech_group(&o).unwrap();
        for s in [
            "",
            "S",
            "T",
            "ST",
            "TTT",
            "TSt",
            "sTTTS",
            "STSTS",
            "tStTs",
            "TTTTTTTTT",
        ] {
            let m = sl2::word_to_matrix(&w(s)).unwrap();
            assert_eq!(
                Membership::contains(&o, &m).unwrap(),
                Membership::contains(&v, &m).unwrap(),
                "{s}"
            );
        }
    }
}
