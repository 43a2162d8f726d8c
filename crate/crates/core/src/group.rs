//! Finite groups given by permutation generators.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

/// A generator or its inverse, identified by its position in the generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenLetter {
    pub generator: usize,
    pub inverse: bool,
}

/// A permutation group with all of its elements enumerated.
///
/// Element 0 is always the identity. Every element carries a shortest-found
/// word in the generators, recorded as a breadth-first spanning tree.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    parent: Vec<Option<(usize, GenLetter)>>,
}

impl FiniteGroup {
    pub fn closure(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::closure_with_limit(degree, generators, DEFAULT_CLOSURE_LIMIT)
    }

    pub fn closure_with_limit(
        degree: usize,
        generators: Vec<Permutation>,
        limit: usize,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput(
                "a group needs at least one generator".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let letters: Vec<(GenLetter, Permutation)> = generators
            .iter()
            .enumerate()
            .flat_map(|(i, g)| {
                [
                    (
                        GenLetter {
                            generator: i,
                            inverse: false,
                        },
                        g.clone(),
                    ),
                    (
                        GenLetter {
                            generator: i,
                            inverse: true,
                        },
                        g.inverse(),
                    ),
                ]
            })
            .collect();

        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (letter, s) in &letters {
                let h = &elements[g] * s;
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= limit {
                    return Err(Error::ClosureTooLarge { limit });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
                parent.push(Some((g, *letter)));
            }
        }
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
            parent,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// The stored word of element `i`, read left to right.
    pub fn word(&self, i: usize) -> Vec<GenLetter> {
        let mut word = Vec::new();
        let mut cur = i;
        while let Some((prev, letter)) = self.parent[cur] {
            word.push(letter);
            cur = prev;
        }
        word.reverse();
        word
    }

    /// Evaluates a word with generator `k` replaced by `images[k]`.
    pub fn evaluate_word(&self, word: &[GenLetter], images: &[Permutation]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for letter in word {
            let g = &images[letter.generator];
            acc = if letter.inverse {
                &acc * &g.inverse()
            } else {
                &acc * g
            };
        }
        acc
    }

    /// Index of `elements[g] * s`, or `None` when `s` leaves the group.
    fn right_mul(&self, g: usize, s: &Permutation) -> Option<usize> {
        if s.degree() != self.degree {
            return None;
        }
        self.index_of(&(&self.elements[g] * s))
    }

    /// Size of the subgroup generated by `gens`, all assumed to be elements.
    pub fn generated_order(&self, gens: &[&Permutation]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                // Right multiplication by the generators alone suffices in a finite group.
                match self.right_mul(g, s) {
                    Some(h) if !seen[h] => {
                        seen[h] = true;
                        count += 1;
                        queue.push_back(h);
                    }
                    Some(_) => {}
                    None => return 0,
                }
            }
        }
        count
    }

    pub fn is_generating_pair(&self, x: &Permutation, y: &Permutation) -> bool {
        self.contains(x) && self.contains(y) && self.generated_order(&[x, y]) == self.order()
    }

    /// Tries to extend `x ↦ x2, y ↦ y2` to an automorphism of the group.
    ///
    /// Walks the Cayley graph of `(x, y)` breadth first, carrying the image
    /// along the `(x2, y2)` graph. The map is accepted when every edge is
    /// respected (so it is a homomorphism) and no image repeats (so it is a
    /// bijection).
    pub fn extend_to_automorphism(
        &self,
        (x, y): (&Permutation, &Permutation),
        (x2, y2): (&Permutation, &Permutation),
    ) -> Option<Automorphism> {
        let n = self.order();
        const UNSET: usize = usize::MAX;
        let mut phi = vec![UNSET; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut mapped = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (s, s2) in [(x, x2), (y, y2)] {
                let gs = self.right_mul(g, s)?;
                let hs = self.right_mul(phi[g], s2)?;
                if phi[gs] == UNSET {
                    if used[hs] {
                        return None;
                    }
                    phi[gs] = hs;
                    used[hs] = true;
                    mapped += 1;
                    queue.push_back(gs);
                } else if phi[gs] != hs {
                    return None;
                }
            }
        }
        (mapped == n).then_some(Automorphism { images: phi })
    }

    /// Whether the two generating pairs differ by an automorphism.
    pub fn pairs_equivalent(
        &self,
        a: (&Permutation, &Permutation),
        b: (&Permutation, &Permutation),
    ) -> bool {
        if a.0.order() != b.0.order() || a.1.order() != b.1.order() {
            return false;
        }
        self.extend_to_automorphism(a, b).is_some()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Two groups are equal when they are the same subgroup of Sym(n).
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.contains(g))
    }
}

impl Eq for FiniteGroup {}

/// An automorphism stored as a map on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    pub fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply<'g>(&self, group: &'g FiniteGroup, p: &Permutation) -> Option<&'g Permutation> {
        group.index_of(p).map(|i| group.element(self.images[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn d8() -> (FiniteGroup, Permutation, Permutation) {
        let r = cyc(4, &[&[1, 2, 3, 4]]);
        let s = cyc(4, &[&[2, 4]]);
        (
            FiniteGroup::closure(4, vec![r.clone(), s.clone()]).unwrap(),
            r,
            s,
        )
    }

    fn a5() -> (FiniteGroup, Permutation, Permutation) {
        let x = cyc(5, &[&[1, 2, 3]]);
        let y = cyc(5, &[&[1, 2, 3, 4, 5]]);
        (
            FiniteGroup::closure(5, vec![x.clone(), y.clone()]).unwrap(),
            x,
            y,
        )
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::closure(3, vec![cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])]).unwrap()
    }

    fn generating_pairs(g: &FiniteGroup) -> Vec<(Permutation, Permutation)> {
        let mut out = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                if g.is_generating_pair(a, b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Closure by repeated multiplication until nothing new appears.
    fn brute_closure(gens: &[Permutation]) -> std::collections::BTreeSet<Permutation> {
        let mut set: std::collections::BTreeSet<Permutation> = gens.iter().cloned().collect();
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a * b);
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn closure_orders() {
        let (d8, r, s) = d8();
        assert_eq!(d8.order(), 8);
        assert_eq!(brute_closure(&[r, s]).len(), 8);
        let (a5, x, y) = a5();
        assert_eq!(a5.order(), 60);
        assert_eq!(brute_closure(&[x, y]).len(), 60);
        let trivial = FiniteGroup::closure(3, vec![Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn closure_respects_limit() {
        let (_, x, y) = a5();
        let err = FiniteGroup::closure_with_limit(5, vec![x, y], 10).unwrap_err();
        assert_eq!(err, Error::ClosureTooLarge { limit: 10 });
    }

    #[test]
    fn closure_rejects_mixed_degrees() {
        let err = FiniteGroup::closure(4, vec![Permutation::identity(3)]).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch(4, 3));
    }

    #[test]
    fn closure_independent_of_generator_order() {
        let (a5, x, y) = a5();
        let swapped = FiniteGroup::closure(5, vec![y, x]).unwrap();
        assert_eq!(swapped, a5);
        let mut e1: Vec<_> = a5.elements().to_vec();
        let mut e2: Vec<_> = swapped.elements().to_vec();
        e1.sort();
        e2.sort();
        assert_eq!(e1, e2);
    }

    #[test]
    fn stored_words_reevaluate() {
        let (a5, _, _) = a5();
        for i in 0..a5.order() {
            let w = a5.word(i);
            assert_eq!(&a5.evaluate_word(&w, a5.generators()), a5.element(i));
        }
        assert_eq!(a5.identity(), &Permutation::identity(5));
    }

    #[test]
    fn generating_pair_examples() {
        let (d8, r, s) = d8();
        assert!(d8.is_generating_pair(&r, &s));
        assert!(!d8.is_generating_pair(&r, &(&r * &r)));
        assert_eq!(d8.generated_order(&[&r]), 4);
        let (a5, x, y) = a5();
        assert!(a5.is_generating_pair(&x, &y));
    }

    #[test]
    fn identity_extension() {
        let (a5, x, y) = a5();
        let phi = a5.extend_to_automorphism((&x, &y), (&x, &y)).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn conjugation_is_inner_automorphism() {
        let (a5, x, y) = a5();
        for g in a5.elements().iter().step_by(7) {
            let gi = g.inverse();
            let x2 = &(g * &x) * &gi;
            let y2 = &(g * &y) * &gi;
            let phi = a5.extend_to_automorphism((&x, &y), (&x2, &y2)).unwrap();
            for h in a5.elements() {
                assert_eq!(phi.apply(&a5, h).unwrap(), &(&(g * h) * &gi));
            }
        }
    }

    #[test]
    fn non_surjective_assignment_fails() {
        let (d8, r, s) = d8();
        assert!(d8.extend_to_automorphism((&r, &s), (&r, &r)).is_none());
    }

    #[test]
    fn dihedral_equivalences() {
        let (d8, r, s) = d8();
        assert!(d8.pairs_equivalent((&r, &s), (&r, &s)));
        assert!(d8.pairs_equivalent((&r, &s), (&r.inverse(), &s)));
        assert!(!d8.pairs_equivalent((&r, &s), (&s, &r)));
    }

    fn check_equivalence_relation(g: &FiniteGroup) {
        let pairs = generating_pairs(g);
        assert!(!pairs.is_empty());
        let eq = |a: &(Permutation, Permutation), b: &(Permutation, Permutation)| {
            g.pairs_equivalent((&a.0, &a.1), (&b.0, &b.1))
        };
        let n = pairs.len();
        let table: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| eq(&pairs[i], &pairs[j])).collect())
            .collect();
        for i in 0..n {
            assert!(table[i][i]);
            for j in 0..n {
                assert_eq!(table[i][j], table[j][i]);
                if table[i][j] {
                    let (a, b) = (&pairs[i], &pairs[j]);
                    assert_eq!(a.0.order(), b.0.order());
                    assert_eq!(a.1.order(), b.1.order());
                    assert_eq!((&a.1 * &a.0).order(), (&b.1 * &b.0).order());
                    // Transitivity: everything equivalent to j is equivalent to i.
                    assert!(table[j].iter().zip(&table[i]).all(|(&jk, &ik)| !jk || ik));
                }
            }
        }
    }

    #[test]
    fn equivalence_relation_on_d8() {
        check_equivalence_relation(&d8().0);
    }

    #[test]
    fn equivalence_relation_on_s3() {
        check_equivalence_relation(&s3());
    }

    #[test]
    fn s3_pairs_form_expected_classes() {
        // |Aut(S3)| = 6 acts freely on the 18 generating pairs.
        let g = s3();
        let pairs = generating_pairs(&g);
        assert_eq!(pairs.len(), 18);
        let mut reps: Vec<(Permutation, Permutation)> = Vec::new();
        for p in pairs {
            if !reps
                .iter()
                .any(|r| g.pairs_equivalent((&r.0, &r.1), (&p.0, &p.1)))
            {
                reps.push(p);
            }
        }
        assert_eq!(reps.len(), 3);
    }
}
