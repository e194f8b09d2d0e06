//! Expression builders for standard graph families and random instances.
//! Generated vertex names are 1-based ids matching the realized graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::{realize_graph, ExprBuilder, ExpressionTree, Label, NodeId};

/// `C5` with three labels; names run `1..=5` around the cycle.
pub const C5: &str = "(join 1 2 (union (relabel 2 1 (relabel 1 3 (join 1 3 (union \
    (join 1 2 (union (intro 2 1) (intro 1 5))) (join 2 3 (union (intro 2 3) (intro 3 4))))))) (intro 2 2)))";
/// `C6` with three labels.
pub const C6: &str = "(join 1 2 (union (relabel 2 1 (relabel 1 3 (join 1 3 (union (union \
    (join 1 2 (union (intro 2 1) (intro 1 6))) (join 1 2 (union (intro 2 3) (intro 1 4)))) (intro 3 5))))) \
    (intro 2 2)))";

fn name(i: usize) -> String {
    (i + 1).to_string()
}

/// Path `1 - 2 - ... - n` with three labels: the growing end carries label 2,
/// finished vertices label 1.
pub fn path(n: usize) -> ExpressionTree {
    assert!(n >= 1);
    let mut b = ExprBuilder::new();
    let mut cur = b.intro(2, name(0));
    for i in 1..n {
        let leaf = b.intro(3, name(i));
        cur = b.union(cur, leaf);
        cur = b.join(2, 3, cur);
        cur = b.relabel(2, 1, cur);
        cur = b.relabel(3, 2, cur);
    }
    b.finish(cur).unwrap()
}

/// Star with centre `1` and `leaves` leaves.
pub fn star(leaves: usize) -> ExpressionTree {
    let mut b = ExprBuilder::new();
    let mut cur = b.intro(1, name(0));
    for i in 1..=leaves {
        let leaf = b.intro(2, name(i));
        cur = b.union(cur, leaf);
    }
    if leaves > 0 {
        cur = b.join(1, 2, cur);
    }
    b.finish(cur).unwrap()
}

/// `K_n` with two labels.
pub fn complete(n: usize) -> ExpressionTree {
    assert!(n >= 1);
    let mut b = ExprBuilder::new();
    let mut cur = b.intro(1, name(0));
    for i in 1..n {
        let leaf = b.intro(2, name(i));
        cur = b.union(cur, leaf);
        cur = b.join(1, 2, cur);
        cur = b.relabel(2, 1, cur);
    }
    b.finish(cur).unwrap()
}

/// Random connected cograph on `n` vertices as a 2-expression. Every subtree
/// leaves all its vertices on label 1.
pub fn random_cograph(n: usize, seed: u64) -> ExpressionTree {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = ExprBuilder::new();
    let mut next = 0;
    let root = cograph_node(&mut b, &mut rng, n, true, &mut next);
    b.finish(root).unwrap()
}

fn cograph_node(b: &mut ExprBuilder, rng: &mut ChaCha8Rng, n: usize, join: bool, next: &mut usize) -> NodeId {
    if n == 1 {
        *next += 1;
        return b.intro(1, name(*next - 1));
    }
    let left_size = rng.gen_range(1..n);
    let left = cograph_node(b, rng, left_size, !join, next);
    let right = cograph_node(b, rng, n - left_size, !join, next);
    if join {
        let right = b.relabel(1, 2, right);
        let u = b.union(left, right);
        let j = b.join(1, 2, u);
        b.relabel(2, 1, j)
    } else {
        b.union(left, right)
    }
}

/// Random connected graph on `n` vertices given by a w-expression: parts are
/// merged pairwise in random order with random joins and relabels between
/// merges. Retries until the realized graph is connected.
pub fn random_expression(n: usize, w: Label, seed: u64) -> ExpressionTree {
    assert!(n >= 1 && w >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut b = ExprBuilder::new();
        let mut parts: Vec<NodeId> = (0..n).map(|i| b.intro(rng.gen_range(1..=w), name(i))).collect();
        while parts.len() > 1 {
            parts.shuffle(&mut rng);
            let r = parts.pop().unwrap();
            let l = parts.pop().unwrap();
            let mut cur = b.union(l, r);
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(1..=w);
                let mut j = rng.gen_range(1..w);
                if j >= i {
                    j += 1;
                }
                cur = if rng.gen_bool(0.65) {
                    b.join(i, j, cur)
                } else {
                    b.relabel(i, j, cur)
                };
            }
            parts.push(cur);
        }
        let tree = b.finish(parts[0]).unwrap().with_sequential_names();
        if realize_graph(&tree).0.is_connected() {
            return tree;
        }
    }
}
