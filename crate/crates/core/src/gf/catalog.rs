use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::AlgebraicGF;

/// Network class counted by the generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NetworkClass {
    Normal,
    TreeChild,
}

impl NetworkClass {
    pub const ALL: [NetworkClass; 2] = [NetworkClass::Normal, NetworkClass::TreeChild];

    pub fn name(self) -> &'static str {
        match self {
            NetworkClass::Normal => "normal",
            NetworkClass::TreeChild => "treechild",
        }
    }
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NetworkClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "normal" => Ok(NetworkClass::Normal),
            "treechild" | "tc" => Ok(NetworkClass::TreeChild),
            other => Err(Error::InvalidArgument(format!("unknown network class '{other}'"))),
        }
    }
}

type Poly = &'static [(i64, i64)];

/// Closed forms `z (ã(z²) - b̃(z²)√(1-2z²)) / (1-2z²)^{2k-1/2}`, polynomials
/// lowest degree first as `(num, den)`.
pub fn catalog(class: NetworkClass, k: usize) -> Result<AlgebraicGF> {
    use NetworkClass::*;
    let (a, b): (Poly, Poly) = match (class, k) {
        (Normal, 1) => (&[(2, 1), (-3, 1)], &[(2, 1), (-1, 1)]),
        (Normal, 2) => (&[(0, 1), (-3, 1), (30, 1), (-87, 2), (6, 1)], &[(0, 1), (-3, 1), (27, 1), (-18, 1)]),
        (Normal, 3) => (
            &[(0, 1), (0, 1), (0, 1), (-9, 1), (576, 1), (-2187, 2), (270, 1)],
            &[(0, 1), (0, 1), (0, 1), (-9, 1), (567, 1), (-531, 1), (18, 1)],
        ),
        (TreeChild, 1) => (&[(0, 1), (1, 1)], &[(0, 1), (1, 1)]),
        (TreeChild, 2) => (&[(0, 1), (0, 1), (-1, 2), (21, 2), (-4, 1)], &[(0, 1), (0, 1), (-1, 2), (9, 1)]),
        (TreeChild, 3) => {
            (&[(0, 1), (0, 1), (0, 1), (-1, 1), (20, 1), (249, 2), (-6, 1)], &[(0, 1), (0, 1), (0, 1), (-1, 1), (19, 1), (144, 1), (30, 1)])
        }
        _ => return Err(Error::UnsupportedK(k)),
    };
    AlgebraicGF::from_ratios(a, b, 4 * k as u32 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn parse_classes() {
        assert_eq!("tree-child".parse::<NetworkClass>().unwrap(), NetworkClass::TreeChild);
        assert_eq!("Normal".parse::<NetworkClass>().unwrap(), NetworkClass::Normal);
        assert!("all".parse::<NetworkClass>().is_err());
    }

    #[test]
    fn exponents() {
        for k in 1..=3 {
            assert_eq!(catalog(NetworkClass::Normal, k).unwrap().twice_p() as usize, 4 * k - 1);
        }
        assert_eq!(catalog(NetworkClass::Normal, 4), Err(Error::UnsupportedK(4)));
        assert_eq!(catalog(NetworkClass::TreeChild, 0), Err(Error::UnsupportedK(0)));
    }

    #[test]
    fn leading_values_agree_between_classes() {
        let half = BigRational::new(1.into(), 2.into());
        for k in 1..=3 {
            let n = catalog(NetworkClass::Normal, k).unwrap();
            let t = catalog(NetworkClass::TreeChild, k).unwrap();
            assert_eq!(n.eval_a(&half), t.eval_a(&half));
        }
    }
}
