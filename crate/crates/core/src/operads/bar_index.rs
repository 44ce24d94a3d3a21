//! The simplicial object of Tens⊗ over `[2]` indexing the two-sided bar
//! construction: level `n` is `m₀,₁ a₁ … a₁ m₁,₂` with `n` algebra points.

use super::{AssMorphism, Color, TensMorphism, TensObject};
use crate::simplicial::{MonotoneMap, Ordinal};

/// `(⟨n+2⟩, [2], c₋ = (0,1,…,1), c₊ = (1,…,1,2))`.
pub fn bar_index(n: usize) -> TensObject {
    let mut colors = vec![Color::Module(0)];
    colors.extend(std::iter::repeat_n(Color::Algebra(1), n));
    colors.push(Color::Module(1));
    TensObject::from_colors(Ordinal(2), &colors).expect("valid")
}

/// The face `d_i` from level `n` to level `n-1`, `0 <= i <= n`: merges the
/// points at positions `i` and `i+1`.
pub fn bar_face(n: usize, i: usize) -> TensMorphism {
    assert!(n >= 1 && i <= n, "no face d_{i} at level {n}");
    let fibers = (0..n + 1)
        .map(|j| match j.cmp(&i) {
            std::cmp::Ordering::Less => vec![j],
            std::cmp::Ordering::Equal => vec![i, i + 1],
            std::cmp::Ordering::Greater => vec![j + 1],
        })
        .collect();
    TensMorphism {
        alpha: AssMorphism::new(n + 2, n + 1, fibers).expect("valid"),
        lambda: MonotoneMap::identity(Ordinal(2)),
    }
}

/// The degeneracy `s_i` from level `n` to level `n+1`, `0 <= i <= n`: inserts
/// a unit at position `i+1`.
pub fn bar_degeneracy(n: usize, i: usize) -> TensMorphism {
    assert!(i <= n, "no degeneracy s_{i} at level {n}");
    let fibers = (0..n + 3)
        .map(|j| {
            if j <= i {
                vec![j]
            } else if j == i + 1 {
                vec![]
            } else {
                vec![j - 1]
            }
        })
        .collect();
    TensMorphism {
        alpha: AssMorphism::new(n + 2, n + 3, fibers).expect("valid"),
        lambda: MonotoneMap::identity(Ordinal(2)),
    }
}
