//! Seeded input pairs shared by the benchmarks.

use jr_core::gen::{random_banded_dag, random_path, random_rooted_tree, random_utree};
use jr_core::{gen_bitreversal, Digraph, Orientation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Input pair families, one per construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bitrev,
    TreePath,
    TwoTrees,
    Unoriented,
    Pathcover,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Bitrev, Family::TreePath, Family::TwoTrees, Family::Unoriented, Family::Pathcover];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bitrev => "bitrev",
            Family::TreePath => "tree-path",
            Family::TwoTrees => "two-trees",
            Family::Unoriented => "unoriented",
            Family::Pathcover => "pathcover",
        }
    }
}

/// The two input graphs of `family` on `n` vertices. `n` must be a power of
/// two for [`Family::Bitrev`].
pub fn pair(family: Family, n: usize, seed: u64) -> (Digraph, Digraph) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Bitrev => gen_bitreversal(n).expect("n is a power of two"),
        Family::TreePath => (random_rooted_tree(n, Orientation::Out, &mut r), random_path(n, &mut r)),
        Family::TwoTrees => {
            (random_rooted_tree(n, Orientation::Out, &mut r), random_rooted_tree(n, Orientation::In, &mut r))
        }
        Family::Unoriented => (random_utree(n, &mut r), random_utree(n, &mut r)),
        Family::Pathcover => (random_banded_dag(n, 4, &mut r), random_banded_dag(n, 4, &mut r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_seeded_and_sized() {
        for f in Family::ALL {
            let (a, b) = pair(f, 64, 1);
            assert_eq!((a.n(), b.n()), (64, 64), "{}", f.name());
            assert_eq!(pair(f, 64, 1), (a, b), "{}", f.name());
        }
    }
}
