use mvlab_core::lusztig::{CrystalOp, LusztigDatum};
use mvlab_core::maya_bz::{mv_vertices, psi, BZDatum, Flavor, MayaDiagram};
use mvlab_core::quiver_rep::{adapted_word, characterizing_root, orientation_from_maya, Orientation};
use mvlab_core::weyl_words::{all_reduced_words, Rank, ReducedWord};

fn r(n: usize) -> Rank {
    Rank::new(n).unwrap()
}

#[test]
fn psi_of_a_simple_root() {
    let a = LusztigDatum::from_entries(r(2), vec![1, 0, 0]).unwrap();
    let m = psi(&a).unwrap();
    let got: Vec<i64> =
        ["1", "2", "3", "1,2", "1,3", "2,3"].iter().map(|k| m.get(&MayaDiagram::parse_key(r(2), k).unwrap())).collect();
    assert_eq!(got, [0, -1, 0, 0, 0, -1]);
}

#[test]
fn am_f_in_rank_one() {
    let m = BZDatum::zero(r(1), Flavor::W0).unwrap().am_f(1).unwrap();
    assert_eq!(m.get(&MayaDiagram::new(r(1), &[1]).unwrap()), -1);
    assert_eq!(m.get(&MayaDiagram::new(r(1), &[2]).unwrap()), 0);
}

#[test]
fn reduced_word_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| all_reduced_words(r(n)).unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 16, 768]);
}

#[test]
fn orientation_of_a_long_diagram() {
    let k = MayaDiagram::new(r(17), &[3, 4, 7, 8, 10, 11, 12, 14, 15]).unwrap();
    assert_eq!(orientation_from_maya(&k).unwrap().dirs_string(), "RLLRRLLRLLLRLLRR");
    let beta = characterizing_root(&k).unwrap();
    assert_eq!((beta.i, beta.j), (1, 15));
}

#[test]
fn adapted_word_of_the_standard_orientation() {
    for n in 1..=6 {
        assert_eq!(adapted_word(&Orientation::omega0(r(n))), ReducedWord::lex_min(r(n)));
    }
}

#[test]
fn both_string_forms_in_rank_two() {
    let zero = LusztigDatum::zero(r(2));
    let lhs = zero.apply_word(&CrystalOp::parse_word("f1 f2 f2 f1").unwrap()).unwrap();
    let rhs = zero.apply_word(&CrystalOp::parse_word("f2 f1 f1 f2").unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let ab = zero.apply_word(&CrystalOp::parse_word("f1 f2").unwrap()).unwrap();
    let ba = zero.apply_word(&CrystalOp::parse_word("f2 f1").unwrap()).unwrap();
    assert_ne!(ab, ba);
}

#[test]
fn polytope_of_zero_is_a_point() {
    let g = mv_vertices(&BZDatum::zero(r(3), Flavor::W0).unwrap()).unwrap();
    assert_eq!(g.vertices.len(), 24);
    assert!(g.vertices.iter().all(|v| v.mu.iter().all(|&x| x == 0)));
}
