//! Odd/even-number function composition and the full binary directed tree.
//!
//! Every natural `n` is reached from 1 by a unique sequence of
//! `O(x) = 2x + 1` and `E(x) = 2x`; the sequence is the bit string of `n`
//! after its leading 1.

use std::fmt;
use std::str::FromStr;

use crate::bitnat::BinaryNat;
use crate::error::{Error, Result};

/// Default cap on [`subtree`] depth.
pub const DEFAULT_SUBTREE_CAP: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// `x ↦ 2x + 1`, appends a 1 bit.
    Odd,
    /// `x ↦ 2x`, appends a 0 bit.
    Even,
}

impl Step {
    pub fn apply(self, x: &BinaryNat) -> BinaryNat {
        x.append_bit(self == Step::Odd)
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Odd => 'O',
            Step::Even => 'E',
        }
    }
}

/// O/E steps stored inner-to-outer: `steps[0]` is applied to 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CompositionPath {
    pub steps: Vec<Step>,
}

impl CompositionPath {
    pub fn new(steps: Vec<Step>) -> Self {
        CompositionPath { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Nested form as written outermost first, e.g. `O(E(O(1)))`.
    pub fn nested(&self) -> String {
        let mut out = String::new();
        for s in self.steps.iter().rev() {
            out.push(s.symbol());
            out.push('(');
        }
        out.push('1');
        out.extend(std::iter::repeat_n(')', self.steps.len()));
        out
    }
}

impl fmt::Display for CompositionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for CompositionPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'O' => Ok(Step::Odd),
                'E' => Ok(Step::Even),
                _ => Err(Error::InvalidInput(format!(
                    "path symbol {c:?} is not O or E"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CompositionPath::new)
    }
}

/// Folds the path over 1.
pub fn apply(path: &CompositionPath) -> BinaryNat {
    path.steps
        .iter()
        .fold(BinaryNat::one(), |acc, step| step.apply(&acc))
}

/// Reads the composition off the bits after the leading 1.
pub fn decompose(n: &BinaryNat) -> CompositionPath {
    let steps = n
        .bits_msb_first()
        .skip(1)
        .map(|bit| if bit { Step::Odd } else { Step::Even })
        .collect();
    CompositionPath { steps }
}

/// The parent in the tree: `(n − 1)/2` for odd `n`, `n/2` for even `n`.
pub fn f_inverse(n: &BinaryNat) -> Result<BinaryNat> {
    if n.is_one() {
        return Err(Error::Domain("f⁻¹(1) leaves the naturals".into()));
    }
    if n.is_odd() {
        // Dropping the final 1 of an odd n ≥ 3 is (n − 1)/2.
        n.pred()?.half()
    } else {
        n.half()
    }
}

/// Prefixes of `n`'s bit string as values, from the root 1 down to `n`.
pub fn tree_path(n: &BinaryNat) -> Vec<BinaryNat> {
    let mut out = Vec::with_capacity(n.bit_length() as usize);
    let mut node = BinaryNat::one();
    out.push(node.clone());
    for step in decompose(n).steps {
        node = step.apply(&node);
        out.push(node.clone());
    }
    out
}

/// `(2n, 2n + 1)`.
pub fn tree_children(n: &BinaryNat) -> (BinaryNat, BinaryNat) {
    (n.append_bit(false), n.append_bit(true))
}

pub fn tree_level(n: &BinaryNat) -> u64 {
    n.bit_length()
}

/// The first `depth` levels of the tree; level `d` holds `2^(d−1)` .. `2^d − 1`.
pub fn subtree(depth: u32) -> Result<Vec<Vec<BinaryNat>>> {
    subtree_with_cap(depth, DEFAULT_SUBTREE_CAP)
}

pub fn subtree_with_cap(depth: u32, cap: u32) -> Result<Vec<Vec<BinaryNat>>> {
    if depth == 0 {
        return Err(Error::Domain("subtree depth must be at least 1".into()));
    }
    if depth > cap {
        return Err(Error::Resource(format!(
            "subtree depth {depth} exceeds cap {cap}"
        )));
    }
    let mut levels: Vec<Vec<BinaryNat>> = vec![vec![BinaryNat::one()]];
    for _ in 1..depth {
        let next = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|n| {
                let (l, r) = tree_children(n);
                [l, r]
            })
            .collect();
        levels.push(next);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BinaryNat {
        BinaryNat::from_bit_str(s).unwrap()
    }

    fn n(v: u64) -> BinaryNat {
        BinaryNat::from_u64(v).unwrap()
    }

    fn path(s: &str) -> CompositionPath {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply(&path("OO")), b("111"));
        assert_eq!(apply(&path("")), BinaryNat::one());
        // O(E(O(O(O(O(E(1))))))) written inner-to-outer.
        assert_eq!(apply(&path("EOOOOEO")), n(189));
        assert_eq!(path("EOOOOEO").nested(), "O(E(O(O(O(O(E(1)))))))");
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&n(60)).to_string(), "OOOEE");
        assert!(decompose(&n(1)).is_empty());
        assert_eq!(decompose(&n(189)).to_string(), "EOOOOEO");
        assert_eq!(decompose(&n(60)).len(), 5);
    }

    #[test]
    fn path_parse_rejects_other_symbols() {
        assert!(matches!(
            "OEX".parse::<CompositionPath>(),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn inverse() {
        assert_eq!(f_inverse(&n(28)).unwrap(), n(14));
        assert_eq!(f_inverse(&n(2)).unwrap(), n(1));
        assert_eq!(f_inverse(&n(21)).unwrap(), n(10));
        assert_eq!(f_inverse(&n(3)).unwrap(), n(1));
        assert!(matches!(f_inverse(&n(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn paths_and_children() {
        let as_u64 = |v: Vec<BinaryNat>| v.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_u64(tree_path(&n(21))), vec![1, 2, 5, 10, 21]);
        assert_eq!(as_u64(tree_path(&n(1))), vec![1]);
        assert_eq!(as_u64(tree_path(&n(28))), vec![1, 3, 7, 14, 28]);

        assert_eq!(tree_children(&n(1)), (b("10"), b("11")));
        assert_eq!(tree_children(&b("101")), (b("1010"), b("1011")));
        assert_eq!(tree_children(&b("111")), (b("1110"), b("1111")));

        assert_eq!(tree_level(&n(1)), 1);
        assert_eq!(tree_level(&n(60)), 6);
        assert_eq!(tree_level(&n(21)), 5);
    }

    #[test]
    fn subtrees() {
        let vals = |t: Vec<Vec<BinaryNat>>| {
            t.into_iter()
                .map(|l| l.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        assert_eq!(vals(subtree(2).unwrap()), vec![vec![1], vec![2, 3]]);
        assert_eq!(
            vals(subtree(3).unwrap()),
            vec![vec![1], vec![2, 3], vec![4, 5, 6, 7]]
        );
        for d in 1..=10u32 {
            let t = subtree(d).unwrap();
            let total: usize = t.iter().map(Vec::len).sum();
            assert_eq!(total, (1usize << d) - 1);
            for (i, level) in t.iter().enumerate() {
                let lo = 1u64 << i;
                let got: Vec<u64> = level.iter().map(|x| x.to_u64().unwrap()).collect();
                assert_eq!(got, (lo..2 * lo).collect::<Vec<_>>());
            }
        }
        assert!(matches!(subtree(0), Err(Error::Domain(_))));
        assert!(matches!(subtree(21), Err(Error::Resource(_))));
        assert!(subtree_with_cap(4, 3).is_err());
    }

    #[test]
    fn subtree_parenthood_matches_inverse() {
        let t = subtree(8).unwrap();
        for pair in t.windows(2) {
            for (i, child) in pair[1].iter().enumerate() {
                assert_eq!(f_inverse(child).unwrap(), pair[0][i / 2]);
            }
        }
    }
}
