//! Involutions of the symmetric group and their canonic words.

use std::fmt;

use crate::error::{Error, Result};

/// A self-inverse permutation of `{1..n}`. Stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    /// Builds from a zero-based image vector.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::InvalidInvolution("n must be positive".into()));
        }
        for (i, &image) in map.iter().enumerate() {
            if image >= n || map[image] != i {
                return Err(Error::InvalidInvolution(format!(
                    "map is not self-inverse at {}",
                    i + 1
                )));
            }
        }
        Ok(Involution { map })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "n must be positive");
        Involution {
            map: (0..n).collect(),
        }
    }

    /// Builds from disjoint 1-based transpositions `(i, j)`.
    pub fn from_transpositions(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInvolution("n must be positive".into()));
        }
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for &(i, j) in pairs {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::InvalidInvolution(format!(
                        "index {x} out of range 1..={n}"
                    )));
                }
                if used[x - 1] {
                    return Err(Error::InvalidInvolution(format!("index {x} repeated")));
                }
                used[x - 1] = true;
            }
            if i == j {
                return Err(Error::InvalidInvolution(format!("degenerate cycle ({i},{j})")));
            }
            map[i - 1] = j - 1;
            map[j - 1] = i - 1;
        }
        Ok(Involution { map })
    }

    /// Parses `e` or `(i,j)(k,l)...` with 1-based indices and `i < j`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "e" {
            return Involution::new((0..n).collect());
        }
        let malformed = |why: &str| Error::InvalidInvolution(format!("{why} in {text:?}"));
        if compact.is_empty() {
            return Err(malformed("empty cycle list"));
        }
        let mut pairs = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('"))?;
            let close = body.find(')').ok_or_else(|| malformed("missing ')'"))?;
            let (i, j) = body[..close]
                .split_once(',')
                .ok_or_else(|| malformed("expected a 2-cycle \"(i,j)\""))?;
            let index = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| malformed(&format!("bad index {s:?}")))
            };
            let (i, j) = (index(i)?, index(j)?);
            if i >= j {
                return Err(malformed(&format!("cycle ({i},{j}) must have i < j")));
            }
            pairs.push((i, j));
            rest = &body[close + 1..];
        }
        Involution::from_transpositions(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// Zero-based image vector.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Image of the 1-based point `i`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x + 1).collect()
    }

    /// 2-cycles `(i, j)` with `i < j`, ordered by `i`; 1-based.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i + 1, j + 1))
            .collect()
    }

    /// Fixed points, ascending, 1-based.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i != j)
    }

    /// The canonic word `i₁ j₁ i₂ j₂ …` with `i_t < j_t` and increasing `i_t`.
    pub fn canonic_word(&self) -> CanonicWord {
        CanonicWord(
            self.transpositions()
                .into_iter()
                .flat_map(|(i, j)| [i, j])
                .collect(),
        )
    }

    /// `(1,2)(3,4)…(n-1,n)`, the fixed-point-free involution of maximal rank.
    pub fn adjacent_pairs(n: usize) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidInvolution(format!(
                "no fixed-point-free involution of {n} points"
            )));
        }
        let pairs: Vec<_> = (1..n).step_by(2).map(|i| (i, i + 1)).collect();
        Involution::from_transpositions(n, &pairs)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.transpositions();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for (i, j) in cycles {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S{}", self.n())
    }
}

/// All involutions of `S_n`, each once, sorted lexicographically by one-line
/// notation.
pub fn enumerate_involutions(n: usize) -> Vec<Involution> {
    assert!(n > 0, "n must be positive");
    fn extend(map: &mut Vec<Option<usize>>, out: &mut Vec<Involution>) {
        let Some(first) = map.iter().position(Option::is_none) else {
            out.push(Involution {
                map: map.iter().map(|x| x.unwrap()).collect(),
            });
            return;
        };
        map[first] = Some(first);
        extend(map, out);
        for partner in first + 1..map.len() {
            if map[partner].is_none() {
                map[first] = Some(partner);
                map[partner] = Some(first);
                extend(map, out);
                map[partner] = None;
            }
        }
        map[first] = None;
    }
    let mut out = Vec::new();
    extend(&mut vec![None; n], &mut out);
    out.sort();
    out
}

/// The flattened canonic form of an involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicWord(Vec<usize>);

impl CanonicWord {
    /// Validates the canonic-form shape: distinct letters, `i_t < j_t`,
    /// strictly increasing `i_t`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.len() % 2 == 1 {
            return Err(Error::InvalidInvolution("canonic word has odd length".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if !word.iter().all(|x| seen.insert(*x)) {
            return Err(Error::InvalidInvolution("repeated letter in canonic word".into()));
        }
        let pairs: Vec<_> = word.chunks(2).collect();
        if pairs.iter().any(|p| p[0] >= p[1]) || pairs.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::InvalidInvolution("word is not in canonic form".into()));
        }
        Ok(CanonicWord(word))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Number of pairs `s < t` with `w[s] > w[t]`.
    pub fn inversions(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|s| w[s + 1..].iter().filter(|&&x| x < w[s]).count())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(text: &str, n: usize) -> Involution {
        Involution::parse(text, n).unwrap()
    }

    /// I(n) = I(n-1) + (n-1) I(n-2).
    fn involution_count(n: usize) -> usize {
        let mut counts = vec![1usize, 1];
        for k in 2..=n {
            counts.push(counts[k - 1] + (k - 1) * counts[k - 2]);
        }
        counts[n]
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_involutions(1), vec![Involution::identity(1)]);
        assert_eq!(enumerate_involutions(4).len(), 10);
        assert_eq!(involution_count(6), 76);
        for n in 1..=9 {
            let all = enumerate_involutions(n);
            assert_eq!(all.len(), involution_count(n), "n = {n}");
            assert!(all.windows(2).all(|w| w[0].one_line() < w[1].one_line()));
        }
    }

    #[test]
    fn parse_and_display() {
        let p = inv("(1,4)(2,5)", 6);
        assert_eq!(p.one_line(), vec![4, 5, 3, 1, 2, 6]);
        assert_eq!(p.to_string(), "(1,4)(2,5)");
        assert_eq!(inv("(2,5)(1,4)", 6), p);
        assert_eq!(inv("e", 3), Involution::identity(3));
        assert_eq!(inv(" (1, 2) ", 2).to_string(), "(1,2)");
        assert_eq!(Involution::identity(3).to_string(), "e");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "(1,2", "1,2", "(1,2,3)", "(1,1)", "(2,1)", "(1,5)", "(0,1)", "(1,2)(2,3)", "(a,b)", "()"] {
            assert!(Involution::parse(bad, 4).is_err(), "{bad:?} should fail");
        }
        assert!(Involution::new(vec![1, 2, 0]).is_err());
        assert!(Involution::new(vec![]).is_err());
    }

    #[test]
    fn canonic_words() {
        assert!(Involution::identity(4).canonic_word().letters().is_empty());
        assert_eq!(inv("(1,4)(2,5)", 6).canonic_word().letters(), &[1, 4, 2, 5]);
        assert_eq!(inv("(1,3)(2,4)", 4).canonic_word().letters(), &[1, 3, 2, 4]);
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(CanonicWord::new(vec![]).unwrap().inversions(), 0);
        assert_eq!(CanonicWord::new(vec![1, 3, 2, 4]).unwrap().inversions(), 1);
        assert_eq!(CanonicWord::new(vec![1, 4, 2, 3]).unwrap().inversions(), 2);
        assert!(CanonicWord::new(vec![2, 3, 1, 4]).is_err());
        assert!(CanonicWord::new(vec![3, 1]).is_err());
    }

    #[test]
    fn adjacent_pairs_is_fixed_point_free() {
        let top = Involution::adjacent_pairs(6).unwrap();
        assert_eq!(top.to_string(), "(1,2)(3,4)(5,6)");
        assert!(top.is_fixed_point_free());
        assert!(Involution::adjacent_pairs(3).is_err());
    }
}
