use origami_veech::families::{abc_origami, alternating_origami, dihedral_origami, psl2_group};
use origami_veech::RegularOrigami;

/// Torus, D₈, D₁₀, the A₅ example and the Hurwitz origami over PSL(2,7).
pub fn catalog() -> Vec<(&'static str, RegularOrigami)> {
    vec![
        ("torus", RegularOrigami::torus()),
        ("D8", dihedral_origami(4).unwrap()),
        ("D10", dihedral_origami(5).unwrap()),
        ("A5", alternating_origami(5).unwrap()),
        ("PSL(2,7)", hurwitz()),
    ]
}

pub fn hurwitz() -> RegularOrigami {
    abc_origami(psl2_group(7).unwrap(), (2, 3, 7))
        .unwrap()
        .unwrap()
}
