use std::fmt;

use crate::abelian::{cyclic_sum, group_from_presentation, Element, FiniteAbelianGroup};
use crate::error::{input, Error, Result};
use crate::matrix::Matrix;
use crate::qmodz::QmodZ;
use crate::scalar::Scalar;
use crate::snf::smith_normal_form;

/// A symmetric bilinear pairing `T × T → ℚ/ℤ`, stored as its Gram matrix on
/// the invariant-factor generators of `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkingForm<T> {
    group: FiniteAbelianGroup<T>,
    gram: Vec<QmodZ<T>>,
}

impl<T: Scalar> LinkingForm<T> {
    /// Validates shape, symmetry, and that `dᵢ · L(eᵢ, eⱼ) = 0`.
    pub fn new(group: FiniteAbelianGroup<T>, gram: Vec<Vec<QmodZ<T>>>) -> Result<Self> {
        let k = group.rank();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) {
            return Err(input(format!("gram matrix must be {k}x{k} for {group:?}")));
        }
        for i in 0..k {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(input(format!("gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let d = group.invariant_factors();
        for (i, row) in gram.iter().enumerate() {
            if let Some(j) = row.iter().position(|x| !x.scale(&d[i]).is_zero()) {
                return Err(input(format!(
                    "entry ({i},{j}) = {} is not annihilated by the generator order {}",
                    row[j], d[i]
                )));
            }
        }
        Ok(Self { group, gram: gram.into_iter().flatten().collect() })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(factors: &[i64], gram: &[&[(i64, i64)]]) -> Result<Self> {
        let conv = |x: i64| T::from_i64(x).expect("i64 fits in scalar");
        let group = FiniteAbelianGroup::new(factors.iter().map(|&d| conv(d)).collect())?;
        let gram = gram
            .iter()
            .map(|r| r.iter().map(|&(n, d)| QmodZ::new(conv(n), conv(d))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, gram)
    }

    pub fn zero(group: FiniteAbelianGroup<T>) -> Self {
        let k = group.rank();
        Self { group, gram: vec![QmodZ::zero(); k * k] }
    }

    /// The form on the trivial group.
    pub fn trivial() -> Self {
        Self::zero(FiniteAbelianGroup::trivial())
    }

    pub fn group(&self) -> &FiniteAbelianGroup<T> {
        &self.group
    }

    pub fn gram(&self, i: usize, j: usize) -> &QmodZ<T> {
        &self.gram[i * self.group.rank() + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<QmodZ<T>>> {
        let k = self.group.rank();
        self.gram.chunks(k.max(1)).take(k).map(<[_]>::to_vec).collect()
    }

    /// `-L`.
    pub fn negated(&self) -> Self {
        Self { group: self.group.clone(), gram: self.gram.iter().map(|x| -x).collect() }
    }

    /// `Σᵢⱼ xᵢ yⱼ L(eᵢ, eⱼ)`.
    pub fn evaluate(&self, x: &Element<T>, y: &Element<T>) -> Result<QmodZ<T>> {
        self.group.check(x)?;
        self.group.check(y)?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &Element<T>, y: &Element<T>) -> QmodZ<T> {
        let k = self.group.rank();
        let mut total = QmodZ::zero();
        for (i, xi) in x.residues().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = QmodZ::zero();
            for (j, yj) in y.residues().iter().enumerate() {
                if !yj.is_zero() {
                    row = &row + &self.gram[i * k + j].scale(yj);
                }
            }
            total = &total + &row.scale(xi);
        }
        total
    }

    pub fn self_linking(&self, x: &Element<T>) -> Result<QmodZ<T>> {
        self.evaluate(x, x)
    }

    /// The linking form `q⁻¹ mod 1` on `coker(q)` of a nondegenerate symmetric
    /// surgery matrix, written in invariant-factor coordinates.
    ///
    /// With `U q V = S`, the generator `fₖ` lifts to row `k` of `V⁻¹`, and
    /// `V⁻¹ q⁻¹ V⁻ᵀ = S⁻¹ U V⁻ᵀ`, so `L(fₖ, fₗ) = (U V⁻ᵀ)ₖₗ / sₖ`.
    pub fn from_surgery(q: &Matrix<T>) -> Result<Self> {
        if !q.is_square() {
            return Err(input(format!("surgery matrix must be square, got {}x{}", q.rows(), q.cols())));
        }
        if !q.is_symmetric() {
            return Err(input("surgery matrix must be symmetric"));
        }
        let p = group_from_presentation(q);
        if p.free_rank > 0 {
            return Err(Error::Degenerate(format!("determinant is zero (cokernel has free rank {})", p.free_rank)));
        }
        let w = p.snf.left.mul(&p.snf.right_inverse.transpose());
        let pos = &p.torsion_positions;
        let gram = pos
            .iter()
            .map(|&k| pos.iter().map(|&l| QmodZ::new(w[(k, l)].clone(), p.snf.diagonal[k].clone())).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(p.group, gram).map_err(|e| Error::Invariant(format!("surgery form: {e}")))
    }

    /// A nonzero element of the radical `{x : L(x, ·) = 0}`, if any.
    ///
    /// The adjoint `T → Hom(T, ℚ/ℤ) ≅ ⊕ ℤ/dⱼ` is `x ↦ xR mod d` with
    /// `Rᵢⱼ = dⱼ L(eᵢ, eⱼ)`. Its kernel is the projection of the left kernel
    /// of the stacked matrix `[R; diag(d)]`, read off the Smith transform.
    pub fn radical_witness(&self) -> Option<Element<T>> {
        let (stacked, snf) = self.adjoint_snf();
        let k = self.group.rank();
        debug_assert_eq!(stacked.rows(), 2 * k);
        (k..2 * k).find_map(|r| {
            let x: Vec<T> = (0..k).map(|c| snf.left[(r, c)].clone()).collect();
            let e = self.group.reduce(&x).expect("rank matches");
            (!e.is_zero()).then_some(e)
        })
    }

    /// Whether the adjoint map is injective (equivalently bijective).
    pub fn is_nonsingular(&self) -> bool {
        self.adjoint_snf().1.diagonal.iter().all(|d| d.is_one())
    }

    fn adjoint_snf(&self) -> (Matrix<T>, crate::snf::SnfResult<T>) {
        let k = self.group.rank();
        let d = self.group.invariant_factors();
        let mut stacked = Matrix::zeros(2 * k, k);
        for i in 0..k {
            for j in 0..k {
                stacked[(i, j)] = self.gram(i, j).over(&d[j]).expect("denominator divides generator order");
            }
            stacked[(k + i, i)] = d[i].clone();
        }
        let snf = smith_normal_form(&stacked);
        (stacked, snf)
    }

    /// An element with nonzero self-linking, if any.
    ///
    /// `L(x, x) = Σ xᵢ² L(eᵢ, eᵢ) + Σ_{i<j} 2 xᵢ xⱼ L(eᵢ, eⱼ)`, so the form is
    /// alternating iff every diagonal entry and every doubled off-diagonal
    /// entry vanishes; `eᵢ` or `eᵢ + eⱼ` witnesses a failure.
    pub fn alternating_witness(&self) -> Option<Element<T>> {
        let k = self.group.rank();
        if let Some(i) = (0..k).find(|&i| !self.gram(i, i).is_zero()) {
            return Some(self.group.generator(i));
        }
        let two = T::one() + T::one();
        for i in 0..k {
            for j in i + 1..k {
                if !self.gram(i, j).scale(&two).is_zero() {
                    return Some(self.group.add(&self.group.generator(i), &self.group.generator(j)));
                }
            }
        }
        None
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating_witness().is_none()
    }

    /// On a group of exponent at most 2, a hyperbolic splitting `S₁ ⊕ S₂`
    /// forces `L(s₁ + s₂, s₁ + s₂) = 2L(s₁, s₂) = 0`, so every hyperbolic form
    /// there is alternating. Returns a non-alternating witness proving the
    /// form is not hyperbolic, when the lemma applies.
    pub fn exponent_two_obstruction(&self) -> Option<Element<T>> {
        let two = T::one() + T::one();
        if self.group.exponent() > two {
            return None;
        }
        self.alternating_witness()
    }

    /// `L₁ ⊕ L₂`, re-normalised to invariant factors.
    ///
    /// When the concatenated factors already form a divisibility chain the
    /// coordinates are kept as they are: first summand then second.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let (k1, k2) = (self.group.rank(), other.group.rank());
        let n = k1 + k2;
        let mut block = vec![vec![QmodZ::zero(); n]; n];
        for i in 0..k1 {
            for j in 0..k1 {
                block[i][j] = self.gram(i, j).clone();
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                block[k1 + i][k1 + j] = other.gram(i, j).clone();
            }
        }
        let orders: Vec<T> =
            self.group.invariant_factors().iter().chain(other.group.invariant_factors()).cloned().collect();
        if let Ok(group) = FiniteAbelianGroup::new(orders.clone()) {
            return Self { group, gram: block.into_iter().flatten().collect() };
        }
        let p = cyclic_sum(&orders).expect("orders are invariant factors");
        let t = p.group.rank();
        let mut gram = vec![vec![QmodZ::zero(); t]; t];
        for a in 0..t {
            for b in 0..t {
                let mut acc = QmodZ::zero();
                for i in 0..n {
                    if p.lifts[(a, i)].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let coeff = p.lifts[(a, i)].clone() * p.lifts[(b, j)].clone();
                        acc = &acc + &block[i][j].scale(&coeff);
                    }
                }
                gram[a][b] = acc;
            }
        }
        Self::new(p.group, gram).expect("transported sum is a valid form")
    }

    /// `L^{⊕n}`.
    pub fn power(&self, n: usize) -> Self {
        (0..n).fold(Self::trivial(), |acc, _| acc.orthogonal_sum(self))
    }
}

impl<T: Scalar> fmt::Debug for LinkingForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkingForm({:?}, {:?})", self.group, self.gram_rows())
    }
}
