//! Canonical green/orange/red colouring of a finite tree.
//!
//! A vertex is green when it belongs to every minimum vertex cover, red when
//! it belongs to none and orange otherwise. The colour of a rooted tree (the
//! colour of its root) depends only on how many of the subtrees hanging from
//! the root are red: none gives red, one gives orange, two or more give green.
//! Applying that rule bottom-up gives every subtree colour; a second top-down
//! pass supplies each vertex with the colour of the component above it, after
//! which the same rule over all incident components yields the final colour.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tree::PlaneTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Colour {
    Green,
    Orange,
    Red,
}

impl Colour {
    /// Colour of a rooted tree whose root sees `red` red components.
    #[inline]
    pub fn from_red_count(red: usize) -> Self {
        match red {
            0 => Colour::Red,
            1 => Colour::Orange,
            _ => Colour::Green,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Colour::Green => 'G',
            Colour::Orange => 'O',
            Colour::Red => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'G' => Some(Colour::Green),
            'O' => Some(Colour::Orange),
            'R' => Some(Colour::Red),
            _ => None,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TricolourError {
    #[error("odd orange count {0}")]
    ParityViolation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tricolouring {
    pub colours: Vec<Colour>,
    pub n_green: usize,
    pub n_orange: usize,
    pub n_red: usize,
}

/// Independence number, matching number and nullity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub independence: usize,
    pub matching: usize,
    pub nullity: i64,
}

impl Tricolouring {
    pub fn from_colours(colours: Vec<Colour>) -> Self {
        let mut counts = [0usize; 3];
        for &c in &colours {
            counts[c as usize] += 1;
        }
        Self {
            colours,
            n_green: counts[0],
            n_orange: counts[1],
            n_red: counts[2],
        }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_green, self.n_orange, self.n_red)
    }

    /// Doubled `(I, M)`: `2 n_r + n_o` and `2 n_g + n_o`.
    pub fn doubled_im(&self) -> (usize, usize) {
        (2 * self.n_red + self.n_orange, 2 * self.n_green + self.n_orange)
    }

    pub fn stats(&self) -> Result<TreeStats, TricolourError> {
        derived_stats(self)
    }

    /// `G/O/R` string in depth-first order.
    pub fn colour_string(&self) -> String {
        self.colours.iter().map(|c| c.as_char()).collect()
    }
}

/// `I = n_r + n_o/2`, `M = n_g + n_o/2`, `N = n_r - n_g`.
pub fn derived_stats(tc: &Tricolouring) -> Result<TreeStats, TricolourError> {
    if !tc.n_orange.is_multiple_of(2) {
        return Err(TricolourError::ParityViolation(tc.n_orange));
    }
    let half = tc.n_orange / 2;
    Ok(TreeStats {
        independence: tc.n_red + half,
        matching: tc.n_green + half,
        nullity: tc.n_red as i64 - tc.n_green as i64,
    })
}

/// Colour of the subtree rooted at each vertex, and the number of red child
/// subtrees of each vertex.
fn subtree_pass(t: &PlaneTree) -> (Vec<Colour>, Vec<usize>) {
    let n = t.len();
    let mut red_children = vec![0usize; n];
    let mut sub = vec![Colour::Red; n];
    // Children have larger depth-first ranks than their parent.
    for v in (0..n).rev() {
        sub[v] = Colour::from_red_count(red_children[v]);
        if sub[v] == Colour::Red {
            if let Some(p) = t.parent(v) {
                red_children[p] += 1;
            }
        }
    }
    (sub, red_children)
}

/// Bottom-up subtree colours.
pub fn colour_subtrees(t: &PlaneTree) -> Vec<Colour> {
    subtree_pass(t).0
}

pub fn tricolour(t: &PlaneTree) -> Tricolouring {
    let n = t.len();
    let (sub, red_children) = subtree_pass(t);
    // up_red[v]: the component containing parent(v) after deleting the edge
    // to v, rooted at parent(v), is red.
    let mut up_red = vec![false; n];
    let mut colours = vec![Colour::Red; n];
    for v in 0..n {
        let reds = red_children[v] + usize::from(up_red[v]);
        colours[v] = Colour::from_red_count(reds);
        for &c in t.children(v) {
            let others = reds - usize::from(sub[c] == Colour::Red);
            up_red[c] = others == 0;
        }
    }
    Tricolouring::from_colours(colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tree_from_outdegrees;
    use Colour::*;

    fn tc(seq: &[usize]) -> Tricolouring {
        tricolour(&tree_from_outdegrees(seq).unwrap())
    }

    #[test]
    fn subtree_colours() {
        assert_eq!(colour_subtrees(&tree_from_outdegrees(&[0]).unwrap()), vec![Red]);
        assert_eq!(
            colour_subtrees(&tree_from_outdegrees(&[2, 0, 0]).unwrap()),
            vec![Green, Red, Red]
        );
        // The root sees a single orange subtree, so its subtree colour is red.
        assert_eq!(
            colour_subtrees(&tree_from_outdegrees(&[1, 1, 0]).unwrap()),
            vec![Red, Orange, Red]
        );
    }

    #[test]
    fn small_trees() {
        let one = tc(&[0]);
        assert_eq!(one.colours, vec![Red]);
        let s = one.stats().unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (1, 0, 1));

        let path3 = tc(&[1, 1, 0]);
        assert_eq!(path3.colour_string(), "RGR");
        assert_eq!(path3.counts(), (1, 0, 2));
        assert_eq!(tc(&[2, 0, 0]).colour_string(), "GRR");

        let edge = tc(&[1, 0]);
        assert_eq!(edge.colour_string(), "OO");
        let s = edge.stats().unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (1, 1, 0));

        let path4 = tc(&[1, 1, 1, 0]);
        assert_eq!(path4.colour_string(), "OOOO");
        let s = path4.stats().unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (2, 2, 0));
        // rooted inside
        assert_eq!(tc(&[2, 1, 0, 0]).colour_string(), "OOOO");
    }

    #[test]
    fn derived_stats_examples() {
        let mk = |g, o, r| Tricolouring {
            colours: Vec::new(),
            n_green: g,
            n_orange: o,
            n_red: r,
        };
        let s = derived_stats(&mk(1, 0, 2)).unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (2, 1, 1));
        let s = derived_stats(&mk(0, 2, 0)).unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (1, 1, 0));
        let s = derived_stats(&mk(1, 0, 3)).unwrap();
        assert_eq!((s.independence, s.matching, s.nullity), (3, 1, 2));
        assert_eq!(derived_stats(&mk(0, 3, 0)), Err(TricolourError::ParityViolation(3)));
    }

    #[test]
    fn star_centre_is_green() {
        let t = tc(&[3, 0, 0, 0]);
        assert_eq!(t.colour_string(), "GRRR");
        // rooted at a leaf
        assert_eq!(tc(&[1, 2, 0, 0]).colour_string(), "RGRR");
    }

    #[test]
    fn colour_order_and_chars() {
        assert!(Green < Orange && Orange < Red);
        for c in [Green, Orange, Red] {
            assert_eq!(Colour::from_char(c.as_char()), Some(c));
        }
        assert_eq!(Colour::from_char('x'), None);
    }
}
