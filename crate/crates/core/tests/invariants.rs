mod common;

use common::{boundary_squares_to_zero, small_complex};
use proptest::prelude::*;
use torsion_core::format::{parse_facets, write_facets};
use torsion_core::homology::torsion_in_dimension;
use torsion_core::{homology, SimplicialComplex, TorsionSignature, VertexId};

fn suspend(x: &SimplicialComplex) -> SimplicialComplex {
    x.suspension_with_points(VertexId::from("north"), VertexId::from("south")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boundary_of_boundary_vanishes(x in small_complex(8, 4, 8)) {
        prop_assert!(boundary_squares_to_zero(&x));
    }

    #[test]
    fn closure_is_downward_closed(x in small_complex(9, 4, 8)) {
        prop_assert!(x.is_downward_closed());
        for f in x.facets() {
            prop_assert!(x.contains_face(&f));
        }
    }

    #[test]
    fn f_vector_adds_under_disjoint_union(x in small_complex(7, 3, 6), y in small_complex(7, 3, 6)) {
        let u = x.disjoint_union(&y);
        let (fx, fy, fu) = (x.f_vector().0, y.f_vector().0, u.f_vector().0);
        for (k, &n) in fu.iter().enumerate() {
            prop_assert_eq!(n, fx.get(k).copied().unwrap_or(0) + fy.get(k).copied().unwrap_or(0));
        }
    }

    #[test]
    fn homology_adds_under_disjoint_union(x in small_complex(7, 3, 6), y in small_complex(7, 3, 6)) {
        let (hx, hy, hu) = (homology(&x), homology(&y), homology(&x.disjoint_union(&y)));
        for k in 0..hu.betti.len() {
            prop_assert_eq!(hu.betti_in(k), hx.betti_in(k) + hy.betti_in(k));
            prop_assert_eq!(hu.torsion_in(k), hx.torsion_in(k).direct_sum(&hy.torsion_in(k)));
        }
    }

    #[test]
    fn suspension_shifts_reduced_homology(x in small_complex(7, 3, 6)) {
        let (h, s) = (homology(&x), homology(&suspend(&x)));
        prop_assert_eq!(s.betti_in(0), 1);
        prop_assert_eq!(s.betti_in(1), h.betti_in(0) - 1);
        for k in 1..=h.betti.len() {
            prop_assert_eq!(s.betti_in(k + 1), h.betti_in(k));
        }
        for k in 0..=h.betti.len() {
            prop_assert_eq!(s.torsion_in(k + 1), h.torsion_in(k));
        }
        prop_assert!(s.torsion_in(0).is_trivial());
    }

    #[test]
    fn euler_characteristic_and_betti_bound(x in small_complex(9, 5, 10)) {
        let h = homology(&x);
        prop_assert_eq!(h.euler_from_betti(), h.euler_from_faces());
        prop_assert!(h.betti_bound_holds());
    }

    #[test]
    fn single_torsion_query_agrees(x in small_complex(8, 4, 8)) {
        let h = homology(&x);
        for k in 0..h.betti.len() {
            prop_assert_eq!(torsion_in_dimension(&x, k), h.torsion_in(k));
        }
    }

    #[test]
    fn facet_files_round_trip(x in small_complex(10, 4, 8)) {
        let text = write_facets(&x);
        let y = parse_facets(&text).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(write_facets(&y), text);
    }

    #[test]
    fn relabelling_preserves_homology(x in small_complex(8, 3, 7), shift in 1i64..100) {
        let y = x.relabel(|v| match v {
            VertexId::Int(i) => VertexId::Int(shift * 1000 - i),
            other => other.clone(),
        }).unwrap();
        prop_assert_eq!(homology(&x).betti, homology(&y).betti);
        prop_assert_eq!(homology(&x).torsion, homology(&y).torsion);
    }
}

/// Small complexes with known torsion, including ones that are not 2-groups.
#[test]
fn known_torsion() {
    // Minimal triangulation of the projective plane.
    let rp2 = SimplicialComplex::from_facets([
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
    ])
    .unwrap();
    let h = homology(&rp2);
    assert_eq!(h.betti, vec![1, 0, 0]);
    assert_eq!(h.torsion_in(1), TorsionSignature::from_cyclic_orders([2.into()]));
    assert!(boundary_squares_to_zero(&rp2));

    let s = homology(&suspend(&rp2));
    assert_eq!(s.torsion_in(2).to_string(), "(2)");
    assert_eq!(s.betti, vec![1, 0, 0, 0]);
}
