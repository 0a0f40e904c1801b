//! Small reference graphs with known decompositions.

use crate::graph::Digraph;

/// Six nodes: a 2-cycle `1 <-> 2` fanning out to leaves 3..=6.
///
/// Dilation sets `{1,3} {1,4} {2,5} {2,6}`, one child SCC `{1,2}`, four
/// drivers (e.g. `{1,4,5,6}`).
pub fn g1() -> Digraph {
    Digraph::new(6, [(1, 2), (2, 1), (2, 3), (2, 4), (1, 5), (1, 6)]).expect("static graph")
}

/// Sixteen nodes: a 4-node core `{1,2,3,4}`, four 2-cycles `{9,10}`,
/// `{11,12}`, `{13,14}`, `{15,16}` and four leaves `5..=8`.
///
/// Dilation sets `{1,3,5,10} {2,4,6,12} {1,3,7,14} {2,4,8,16}`, five child
/// SCCs. Five drivers with every node accessible (e.g. `{1,10,12,14,16}`),
/// six when `{2,4,5,12,15}` are inaccessible (e.g. `{1,6,10,11,14,16}`).
pub fn g2() -> Digraph {
    let core = [
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 1),
        (2, 1),
        (4, 3),
        (1, 4),
        (3, 2),
    ];
    let pairs = [
        (9, 10),
        (10, 9),
        (11, 12),
        (12, 11),
        (13, 14),
        (14, 13),
        (15, 16),
        (16, 15),
    ];
    let leaves = [
        (9, 5),
        (2, 5),
        (4, 5),
        (11, 6),
        (1, 6),
        (3, 6),
        (13, 7),
        (2, 7),
        (4, 7),
        (15, 8),
        (1, 8),
        (3, 8),
    ];
    Digraph::new(16, core.into_iter().chain(pairs).chain(leaves)).expect("static graph")
}
