//! Symmetries of the 2k boundary legs.

use std::fmt;

/// An element of the dihedral group acting on `legs` cyclically ordered
/// boundary positions. It sends position `i` to `rotation + i` or, when
/// `reflect` is set, to `rotation - i` (mod `legs`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub rotation: usize,
    pub reflect: bool,
    pub legs: usize,
}

impl DihedralElement {
    pub fn identity(legs: usize) -> Self {
        Self::new(0, false, legs)
    }

    pub fn new(rotation: usize, reflect: bool, legs: usize) -> Self {
        assert!(legs > 0, "dihedral group on zero legs");
        DihedralElement {
            rotation: rotation % legs,
            reflect,
            legs,
        }
    }

    /// Image of a leg position.
    pub fn apply(&self, i: usize) -> usize {
        let i = i % self.legs;
        if self.reflect {
            (self.rotation + self.legs - i) % self.legs
        } else {
            (self.rotation + i) % self.legs
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs);
        let l = self.legs;
        let rotation = if self.reflect {
            self.rotation + l - other.rotation
        } else {
            self.rotation + other.rotation
        };
        Self::new(rotation, self.reflect != other.reflect, l)
    }

    pub fn inverse(&self) -> Self {
        if self.reflect {
            *self
        } else {
            Self::new(self.legs - self.rotation, false, self.legs)
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.rotation == 0
    }

    /// All `2 * legs` elements of the group.
    pub fn all(legs: usize) -> impl Iterator<Item = Self> {
        (0..legs).flat_map(move |r| [Self::new(r, false, legs), Self::new(r, true, legs)])
    }

    /// Leftmost position of the image of the cyclic interval `[start, start + len)`.
    pub fn apply_interval(&self, start: usize, len: usize) -> usize {
        if self.reflect {
            self.apply(start + len - 1)
        } else {
            self.apply(start)
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            write!(f, "s{}", self.rotation)
        } else {
            write!(f, "r{}", self.rotation)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_matches_pointwise_composition() {
        for legs in [2, 4, 6, 8] {
            for g in DihedralElement::all(legs) {
                for h in DihedralElement::all(legs) {
                    let gh = g.compose(&h);
                    for i in 0..legs {
                        assert_eq!(gh.apply(i), g.apply(h.apply(i)));
                    }
                }
                let e = g.compose(&g.inverse());
                assert!(e.is_identity(), "{g} * inverse = {e}");
            }
            assert_eq!(DihedralElement::all(legs).count(), 2 * legs);
        }
    }

    #[test]
    fn interval_image_is_contiguous() {
        let legs = 6;
        for g in DihedralElement::all(legs) {
            for start in 0..legs {
                for len in 1..=3 {
                    let left = g.apply_interval(start, len);
                    let mut img: Vec<usize> = (0..len).map(|j| g.apply(start + j)).collect();
                    img.sort_by_key(|&x| (x + legs - left) % legs);
                    let want: Vec<usize> = (0..len).map(|j| (left + j) % legs).collect();
                    assert_eq!(img, want);
                }
            }
        }
    }
}
