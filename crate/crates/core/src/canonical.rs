//! Normal forms for the congruence action `A -> Bᵗ A B` of invertible
//! upper-triangular matrices on anti-symmetric matrices.
//!
//! Every orbit contains exactly one signed monomial matrix with `+1` above
//! the diagonal and `-1` below it; its `+1` positions are the 2-cycles of an
//! involution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::linalg::{ASMatrix, Matrix, Rational};

/// Anti-symmetric matrix with `+1` at `(i, j)` and `-1` at `(j, i)` for each
/// of a set of disjoint pairs `i < j` (1-based), zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialASMatrix {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl MonomialASMatrix {
    pub fn new(n: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        // Validation is shared with involutions: same disjointness rules.
        if pairs.iter().any(|&(i, j)| i >= j) {
            return Err(Error::InvalidInvolution("pairs must satisfy i < j".into()));
        }
        Involution::from_transpositions(n, &pairs)?;
        pairs.sort_unstable();
        Ok(MonomialASMatrix { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted 1-based pairs `(i, j)`, `i < j`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for &(i, j) in &self.pairs {
            m.set(i - 1, j - 1, Rational::one());
            m.set(j - 1, i - 1, -Rational::one());
        }
        m
    }

    pub fn to_as_matrix(&self) -> ASMatrix {
        ASMatrix::new(self.to_matrix()).expect("monomial form is anti-symmetric")
    }

    pub fn to_involution(&self) -> Involution {
        monomial_to_involution(self)
    }
}

/// Invertible upper-triangular matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BorelMatrix(Matrix);

impl BorelMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("Borel matrix must be square".into()));
        }
        if !m.is_upper_triangular() {
            return Err(Error::Dimension("Borel matrix must be upper-triangular".into()));
        }
        if m.diagonal().iter().any(Rational::is_zero) {
            return Err(Error::Dimension("Borel matrix must have a nonzero diagonal".into()));
        }
        Ok(BorelMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.n_rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn diagonal_product(&self) -> Rational {
        self.0.diagonal().iter().product()
    }

    /// `Bᵗ A B`.
    pub fn act(&self, a: &ASMatrix) -> ASMatrix {
        a.congruence(&self.0).expect("matching dimensions")
    }
}

/// Result of [`canonicalize`]: `witness.act(monomial) == input`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonicalization {
    pub monomial: MonomialASMatrix,
    pub witness: BorelMatrix,
}

impl Canonicalization {
    pub fn involution(&self) -> Involution {
        self.monomial.to_involution()
    }
}

/// Working state of the elimination: `current = Tᵗ · input · T` for an
/// upper-triangular `T`, with `inverse = T⁻¹` tracked directly.
struct Elimination {
    n: usize,
    current: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl Elimination {
    /// Congruence by `I + c·e_p e_qᵗ` with `p < q`: adds `c` times index `p`
    /// to index `q` in both rows and columns.
    fn shear(&mut self, p: usize, q: usize, c: &Rational) {
        debug_assert!(p < q);
        for row in self.current.iter_mut() {
            if !row[p].is_zero() {
                let delta = c * &row[p];
                row[q] += delta;
            }
        }
        for col in 0..self.n {
            if !self.current[p][col].is_zero() {
                let delta = c * &self.current[p][col];
                self.current[q][col] += delta;
            }
        }
        for col in 0..self.n {
            if !self.inverse[q][col].is_zero() {
                let delta = c * &self.inverse[q][col];
                self.inverse[p][col] -= delta;
            }
        }
    }

    /// Congruence by the diagonal matrix scaling index `j` by `s`.
    fn scale(&mut self, j: usize, s: &Rational) {
        for row in self.current.iter_mut() {
            row[j] *= s;
        }
        for x in self.current[j].iter_mut() {
            *x *= s;
        }
        let inv = s.recip();
        for x in self.inverse[j].iter_mut() {
            *x *= &inv;
        }
    }
}

/// Reduces `a` to its signed monomial normal form.
///
/// Rows are scanned top to bottom; the pivot of row `i` is its leftmost
/// nonzero entry right of the diagonal. Entries right of the pivot and
/// entries below it in the pivot column are cleared by upper-triangular
/// shears. Rows with nothing right of the diagonal are fixed points or
/// partners of earlier pivots and are skipped. Finally each pivot column is
/// rescaled so the pivot becomes `+1`.
pub fn canonicalize(a: &ASMatrix) -> Canonicalization {
    let n = a.n();
    let m = a.matrix();
    let mut state = Elimination {
        n,
        current: (0..n).map(|i| m.row(i).to_vec()).collect(),
        inverse: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect(),
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let Some(j) = (i + 1..n).find(|&j| !state.current[i][j].is_zero()) else {
            continue;
        };
        let pivot = state.current[i][j].clone();
        for k in j + 1..n {
            if !state.current[i][k].is_zero() {
                let c = -(&state.current[i][k] / &pivot);
                state.shear(j, k, &c);
            }
        }
        for k in i + 1..n {
            if !state.current[k][j].is_zero() {
                let c = -(&state.current[k][j] / &pivot);
                state.shear(i, k, &c);
            }
        }
        pivots.push((i, j));
    }
    for &(i, j) in &pivots {
        let s = state.current[i][j].recip();
        state.scale(j, &s);
    }
    debug_assert!((0..n).all(|r| (0..n).all(|c| {
        let expected = if pivots.contains(&(r, c)) {
            Rational::one()
        } else if pivots.contains(&(c, r)) {
            -Rational::one()
        } else {
            Rational::zero()
        };
        state.current[r][c] == expected
    })));
    let monomial =
        MonomialASMatrix::new(n, pivots.iter().map(|&(i, j)| (i + 1, j + 1)).collect())
            .expect("pivots occupy distinct rows and columns");
    let witness = Matrix::from_rows(state.inverse).expect("square");
    Canonicalization {
        monomial,
        witness: BorelMatrix::new(witness).expect("product of Borel factors"),
    }
}

pub fn involution_to_monomial(p: &Involution) -> MonomialASMatrix {
    MonomialASMatrix {
        n: p.n(),
        pairs: p.transpositions(),
    }
}

pub fn monomial_to_involution(m: &MonomialASMatrix) -> Involution {
    Involution::from_transpositions(m.n, &m.pairs).expect("pairs are disjoint")
}

/// Random Borel matrix with off-diagonal upper entries in
/// `[-entry_bound, entry_bound]` and diagonal entries in `[1, entry_bound]`.
pub fn random_borel<R: Rng>(n: usize, rng: &mut R, entry_bound: u32) -> BorelMatrix {
    assert!(entry_bound > 0, "entry_bound must be positive");
    let bound = i64::from(entry_bound);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Rational::from(rng.gen_range(1..=bound)));
        for j in i + 1..n {
            m.set(i, j, Rational::from(rng.gen_range(-bound..=bound)));
        }
    }
    BorelMatrix::new(m).expect("nonzero diagonal")
}

/// `Bᵗ M B` for the monomial form `M` of `p` and a Borel `B` drawn from
/// `seed`; returns both. Deterministic in `(p, seed, entry_bound)`.
pub fn random_orbit_sample(p: &Involution, seed: u64, entry_bound: u32) -> (ASMatrix, BorelMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_borel(p.n(), &mut rng, entry_bound);
    let a = b.act(&involution_to_monomial(p).to_as_matrix());
    (a, b)
}

pub fn random_orbit_element(p: &Involution, seed: u64, entry_bound: u32) -> ASMatrix {
    random_orbit_sample(p, seed, entry_bound).0
}
