//! Codec outputs checked against naive, independently written oracles.

use depbits::enc7::encode7_with_planes;
use depbits::testkit::{brute_two_plane, enumerate, planes_are_crossing_free, Constraint};
use depbits::{
    assign_planes, covered_by_4bit, cross, crossings_graph, decode4, decode7, decode_left_arcs,
    decode_right_arcs, encode4, encode7, is_projective, Arc, DepTree, EventKind, Label4, Label7,
    Plane, RepairOptions,
};

fn tree(heads: &[usize]) -> DepTree {
    DepTree::from_heads(heads.to_vec()).unwrap()
}

/// Every word's dependents, scanned from scratch.
fn dependents_of(t: &DepTree, node: usize) -> Vec<usize> {
    (1..=t.len()).filter(|&w| t.head(w) == node).collect()
}

/// 4-bit labels straight from the bit definitions.
fn naive_labels4(t: &DepTree) -> Vec<Label4> {
    (1..=t.len())
        .map(|w| {
            let h = t.head(w);
            let right = h < w;
            let same_side: Vec<usize> = dependents_of(t, h)
                .into_iter()
                .filter(|&d| (h < d) == right)
                .collect();
            let farthest = same_side.iter().max_by_key(|&&d| d.abs_diff(h)).copied();
            let own = dependents_of(t, w);
            Label4 {
                right,
                outermost: farthest == Some(w),
                has_left: own.iter().any(|&d| d < w),
                has_right: own.iter().any(|&d| d > w),
            }
        })
        .collect()
}

/// 7-bit labels from the bit definitions, given a complete plane per word.
fn naive_labels7(t: &DepTree, planes: &[usize]) -> Vec<Label7> {
    (1..=t.len())
        .map(|w| {
            let h = t.head(w);
            let p = planes[w - 1];
            let right = h < w;
            let same_side_plane: Vec<usize> = dependents_of(t, h)
                .into_iter()
                .filter(|&d| (h < d) == right && planes[d - 1] == p)
                .collect();
            let farthest = same_side_plane
                .iter()
                .max_by_key(|&&d| d.abs_diff(h))
                .copied();
            let own = dependents_of(t, w);
            let has = |left: bool, plane: usize| {
                own.iter()
                    .any(|&d| (d < w) == left && planes[d - 1] == plane)
            };
            Label7 {
                right,
                second_plane: p == 1,
                outermost: farthest == Some(w),
                left_first: has(true, 0),
                right_first: has(false, 0),
                left_second: has(true, 1),
                right_second: has(false, 1),
            }
        })
        .collect()
}

fn all_pairs_crossing(arcs: &[Arc], same_direction_only: bool) -> bool {
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            let (al, ar) = (a.head.min(a.dep), a.head.max(a.dep));
            let (bl, br) = (b.head.min(b.dep), b.head.max(b.dep));
            let interleave = (al < bl && bl < ar && ar < br) || (bl < al && al < br && br < ar);
            let relevant = !same_direction_only || (a.head < a.dep) == (b.head < b.dep);
            if relevant && interleave {
                return true;
            }
        }
    }
    false
}

#[test]
fn encode4_matches_definitions_on_small_trees() {
    for n in 1..=6 {
        for t in enumerate(n, Constraint::AllTrees).unwrap() {
            assert_eq!(encode4(&t).unwrap(), naive_labels4(&t), "{:?}", t.heads());
        }
    }
}

#[test]
fn encode7_matches_definitions_on_small_trees() {
    for n in 1..=6 {
        for t in enumerate(n, Constraint::AllTrees).unwrap() {
            let pa = assign_planes(&t).unwrap();
            if !pa.is_complete() {
                continue;
            }
            let planes: Vec<usize> = pa.planes().iter().map(|p| p.unwrap().index()).collect();
            assert_eq!(
                encode7(&t).unwrap(),
                naive_labels7(&t, &planes),
                "{:?}",
                t.heads()
            );
        }
    }
}

#[test]
fn encode7_on_projective_figure_uses_first_plane_only() {
    let t = tree(&[3, 3, 0, 6, 6, 3, 3]);
    let expected = naive_labels7(&t, &[0; 7]);
    let bits: Vec<String> = expected.iter().map(Label7::to_bit_string).collect();
    assert_eq!(
        bits,
        ["0010000", "0000000", "1011100", "0010000", "0000000", "1001000", "1010000"]
    );
    assert_eq!(encode7(&t).unwrap(), expected);
}

#[test]
fn coverage_predicates_match_pairwise_scan() {
    for n in 1..=6 {
        for t in enumerate(n, Constraint::AllTrees).unwrap() {
            let arcs = t.arcs();
            assert_eq!(
                is_projective(&t).unwrap(),
                !all_pairs_crossing(&arcs, false)
            );
            assert_eq!(
                covered_by_4bit(&t).unwrap(),
                !all_pairs_crossing(&arcs, true)
            );
        }
    }
    // Figure 2: (0,5), (2,6), (5,7) are all rightward and (2,6) crosses both
    assert!(all_pairs_crossing(
        &tree(&[2, 5, 5, 5, 0, 2, 5]).arcs(),
        true
    ));
    assert!(!covered_by_4bit(&tree(&[2, 5, 5, 5, 0, 2, 5])).unwrap());
    assert!(!covered_by_4bit(&tree(&[3, 4, 0, 0])).unwrap());
}

#[test]
fn crossings_graph_matches_pairwise_scan() {
    for heads in [
        &[2, 5, 5, 5, 0, 2, 5][..],
        &[0, 4, 1, 1, 3],
        &[3, 3, 0, 6, 6, 3, 3],
    ] {
        let t = tree(heads);
        let graph = crossings_graph(&t).unwrap();
        let arcs = t.arcs();
        let mut expected = Vec::new();
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let single = [arcs[i], arcs[j]];
                if all_pairs_crossing(&single, false) {
                    expected.push((arcs[i], arcs[j]));
                }
            }
        }
        assert_eq!(graph.edges(), expected);
    }
    assert_eq!(
        crossings_graph(&tree(&[2, 5, 5, 5, 0, 2, 5]))
            .unwrap()
            .edges(),
        vec![
            (Arc::new(0, 5), Arc::new(2, 6)),
            (Arc::new(2, 6), Arc::new(5, 7))
        ]
    );
}

#[test]
fn plane_assignment_on_crossing_chain() {
    let t = tree(&[0, 4, 1, 1, 3]);
    let pa = assign_planes(&t).unwrap();
    let planes: Vec<Option<usize>> = pa.planes().iter().map(|p| p.map(Plane::index)).collect();
    assert_eq!(planes, vec![Some(0), Some(1), Some(0), Some(1), Some(0)]);
    // independent check: a proper 2-coloring of the crossings
    assert!(planes_are_crossing_free(&t, &planes));
    assert!(brute_two_plane(&t));
}

#[test]
fn cross_is_pairwise_interleaving() {
    let arcs: Vec<Arc> = (0..6)
        .flat_map(|h| (1..6).filter(move |&d| d != h).map(move |d| Arc::new(h, d)))
        .collect();
    for a in &arcs {
        for b in &arcs {
            assert_eq!(
                cross(a, b),
                all_pairs_crossing(&[*a, *b], false),
                "{} {}",
                a,
                b
            );
        }
    }
}

#[test]
fn traced_decodings() {
    let l4 = |s: &[&str]| {
        s.iter()
            .map(|x| x.parse::<Label4>().unwrap())
            .collect::<Vec<_>>()
    };

    let out = decode_right_arcs(&l4(&["1100", "1100"]));
    assert_eq!(out.arcs, vec![Arc::new(0, 1)]);
    assert_eq!(out.log.count(EventKind::EmptyStackSkip), 1);

    let out = decode_left_arcs(&l4(&["0100", "1010"]));
    assert_eq!(out.arcs, vec![Arc::new(2, 1)]);

    let d = decode4(&l4(&["0101", "1110"]), RepairOptions::default());
    assert_eq!(d.tree.heads(), &[0, 1]);
    assert_eq!(d.log.count(EventKind::CycleBreak), 1);

    let d = decode4(&l4(&["0000", "0000"]), RepairOptions::default());
    assert_eq!(d.tree.heads(), &[0, 1]);
    assert_eq!(d.log.count(EventKind::AttachHeadless), 2);

    let l7: Vec<Label7> = ["1010000", "1010000"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let d = decode7(&l7, RepairOptions::default());
    assert_eq!(d.tree.heads(), &[0, 1]);
    assert_eq!(d.log.count(EventKind::AttachHeadless), 1);
}

#[test]
fn explicit_planes_drive_the_encoder() {
    // Figure 2 with the witness split found by brute force
    let t = tree(&[2, 5, 5, 5, 0, 2, 5]);
    let witness = depbits::testkit::brute_two_plane_partition(&t).unwrap();
    let pa = depbits::PlaneAssignment::from_planes(&t, witness.iter().map(|&p| Some(p)).collect());
    let (labels, log) = encode7_with_planes(&t, &pa);
    assert!(log.is_empty());
    assert_eq!(labels, naive_labels7(&t, &witness));
    let d = decode7(&labels, RepairOptions::default());
    assert_eq!(d.tree.heads(), t.heads());
}
