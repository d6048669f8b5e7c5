//! The rank-two form `Γ = [[0, 1/2], [1/2, 1/2]]` on `(ℤ/2)²`, its orthogonal
//! powers `Lₙ = Γ^{⊕n}` on `Tⁿ = (ℤ/2)^{2n}`, and the graph subgroups
//! `Gₙ = {(fₙ(v), v) : v ∈ Hₙ}` built from even-weight vectors and running
//! prefix sums.
//!
//! Elements of `Tⁿ` are written `(u, v)` with `u, v ∈ 𝔽₂ⁿ`. The orthogonal
//! sum stores them interleaved as `(u₀, v₀, u₁, v₁, …)`; [`join_layout`] and
//! [`split_layout`] convert between the two.

use std::fmt;

use crate::abelian::{Element, FiniteAbelianGroup, Subgroup};
use crate::error::{input, Error, Result};
use crate::linkform::{HyperbolicWitness, LinkingForm};
use crate::qmodz::QmodZ;
use crate::scalar::Scalar;

/// A vector over `𝔽₂`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(input(format!("bit {b} is not 0 or 1")));
        }
        Ok(Self { bits })
    }

    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    /// `eᵢ`, zero-based.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.bits[i] = 1;
        v
    }

    /// The low `n` bits of `mask`, bit `i` of the mask giving entry `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self { bits: (0..n).map(|i| ((mask >> i) & 1) as u8).collect() }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_even(&self) -> bool {
        self.weight().is_multiple_of(2)
    }

    pub fn dot(&self, other: &Self) -> u8 {
        self.bits.iter().zip(&other.bits).fold(0, |acc, (a, b)| acc ^ (a & b))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// `fₙ(v)ᵢ = v₀ + … + v_{i−1} mod 2`, with the empty sum at index 0.
pub fn prefix_sum_map(v: &BitVector) -> BitVector {
    let mut acc = 0u8;
    let bits = v
        .bits
        .iter()
        .map(|&b| {
            let out = acc;
            acc ^= b;
            out
        })
        .collect();
    BitVector { bits }
}

/// All of `Hₙ` in increasing mask order.
pub fn even_weight_vectors(n: usize) -> impl Iterator<Item = BitVector> {
    assert!(n < 64, "mask enumeration supports n < 64");
    (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0).map(move |m| BitVector::from_mask(n, m))
}

pub fn gamma_form<T: Scalar>() -> LinkingForm<T> {
    LinkingForm::from_fractions(&[2, 2], &[&[(0, 1), (1, 2)], &[(1, 2), (1, 2)]]).expect("Γ is a valid form")
}

/// `Lₙ = Γ^{⊕n}` in interleaved coordinates.
pub fn power_form<T: Scalar>(n: usize) -> LinkingForm<T> {
    gamma_form::<T>().power(n)
}

/// `Tⁿ = (ℤ/2)^{2n}`.
pub fn ambient<T: Scalar>(n: usize) -> FiniteAbelianGroup<T> {
    FiniteAbelianGroup::homocyclic(T::one() + T::one(), 2 * n).expect("2 is a valid factor")
}

fn bit<T: Scalar>(b: u8) -> T {
    if b == 1 {
        T::one()
    } else {
        T::zero()
    }
}

/// `(u, v) ↦ (u₀, v₀, u₁, v₁, …)`.
pub fn join_layout<T: Scalar>(u: &BitVector, v: &BitVector) -> Result<Element<T>> {
    if u.len() != v.len() {
        return Err(input(format!("u has length {}, v has length {}", u.len(), v.len())));
    }
    let residues = u.bits.iter().zip(&v.bits).flat_map(|(&a, &x)| [bit(a), bit(x)]).collect();
    ambient(u.len()).element(residues)
}

/// Inverse of [`join_layout`].
pub fn split_layout<T: Scalar>(e: &Element<T>) -> Result<(BitVector, BitVector)> {
    let r = e.residues();
    if !r.len().is_multiple_of(2) || r.iter().any(|x| x.is_negative() || *x > T::one()) {
        return Err(input(format!("{e:?} is not an element of some Tⁿ")));
    }
    let to_bits = |off: usize| BitVector { bits: r.iter().skip(off).step_by(2).map(|x| u8::from(x.is_one())).collect() };
    Ok((to_bits(0), to_bits(1)))
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(input("n must be at least 1"))
    } else {
        Ok(())
    }
}

/// `Hₙ ≤ (ℤ/2)ⁿ`, the even-weight vectors.
pub fn even_weight_subgroup<T: Scalar>(n: usize, cap: usize) -> Result<Subgroup<T>> {
    require_positive(n)?;
    let g = FiniteAbelianGroup::homocyclic(T::one() + T::one(), n)?;
    let gens: Vec<Element<T>> = (1..n)
        .map(|i| {
            let v = BitVector::unit(n, 0).add(&BitVector::unit(n, i));
            g.element(v.bits.iter().map(|&b| bit(b)).collect()).expect("bits are residues")
        })
        .collect();
    let h = Subgroup::generate(&g, &gens, cap)?;
    if h.elements().iter().any(|e| e.residues().iter().filter(|x| x.is_one()).count() % 2 != 0) {
        return Err(Error::Invariant("odd-weight vector in Hₙ".into()));
    }
    Ok(h)
}

/// `Aⁿ = A^{⊕n} ⊕ 0`, the `u`-block.
pub fn first_summand<T: Scalar>(n: usize, cap: usize) -> Result<Subgroup<T>> {
    require_positive(n)?;
    let gens = (0..n)
        .map(|i| join_layout(&BitVector::unit(n, i), &BitVector::zeros(n)))
        .collect::<Result<Vec<Element<T>>>>()?;
    Subgroup::generate(&ambient(n), &gens, cap)
}

/// `Gₙ = {(fₙ(v), v) : v ∈ Hₙ} ≤ Tⁿ`.
///
/// Built as the span of the images of a basis of `Hₙ` and checked against
/// the image of every element of `Hₙ`; the two agree because `fₙ` is linear.
pub fn graph_lagrangian<T: Scalar>(n: usize, cap: usize) -> Result<Subgroup<T>> {
    require_positive(n)?;
    let graph = |v: &BitVector| join_layout::<T>(&prefix_sum_map(v), v);
    let basis = (1..n)
        .map(|i| graph(&BitVector::unit(n, 0).add(&BitVector::unit(n, i))))
        .collect::<Result<Vec<_>>>()?;
    let span = Subgroup::generate(&ambient(n), &basis, cap)?;
    if span.order() != 1usize << (n - 1) {
        return Err(Error::Invariant(format!("|G_{n}| = {}", span.order())));
    }
    let mut image = even_weight_vectors(n).map(|v| graph(&v)).collect::<Result<Vec<_>>>()?;
    image.sort();
    if image != span.elements() {
        return Err(Error::Invariant(format!("G_{n} is not closed under addition")));
    }
    Ok(span)
}

/// A certificate that `Lₙ` is not hyperbolic: `Tⁿ` has exponent 2 and the
/// returned element has self-linking `1/2`. Needs no enumeration.
pub fn exponent_two_certificate<T: Scalar>(n: usize) -> Result<(Element<T>, QmodZ<T>)> {
    require_positive(n)?;
    let form = power_form::<T>(n);
    let witness = form
        .exponent_two_obstruction()
        .ok_or_else(|| Error::Invariant(format!("L_{n} unexpectedly passes the exponent-two test")))?;
    let value = form.self_linking(&witness)?;
    Ok((witness, value))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `n` accepted by [`verify_example`].
    pub max_n: usize,
    /// Largest `n` for which hyperbolicity is also decided by exhaustive search.
    pub direct_search_max_n: usize,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_n: 5, direct_search_max_n: 3, cap: crate::abelian::DEFAULT_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicityCheck {
    /// Exponent-two lemma only.
    ExponentTwoLemma,
    /// Lemma plus exhaustive search over complementary isotropic pairs.
    LemmaAndSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport<T> {
    pub n: usize,
    pub g_n_order: usize,
    pub a_n_order: usize,
    pub g_n_isotropic: bool,
    pub isotropy_witness: Option<(Element<T>, Element<T>)>,
    pub intersection_trivial: bool,
    pub intersection_witness: Option<Element<T>>,
    pub l_n_alternating: bool,
    /// `(0, e₀)` and its self-linking.
    pub alternating_witness: Option<(Element<T>, QmodZ<T>)>,
    pub l_n_hyperbolic: bool,
    pub hyperbolicity_check: HyperbolicityCheck,
    pub hyperbolic_witness: Option<HyperbolicWitness<T>>,
    pub size_ratio_ok: bool,
}

impl<T: Scalar> ExampleReport<T> {
    /// Whether every claim about `Lₙ` and `Gₙ` holds.
    pub fn all_pass(&self) -> bool {
        self.g_n_isotropic && self.intersection_trivial && !self.l_n_alternating && !self.l_n_hyperbolic && self.size_ratio_ok
    }
}

/// Checks the claims about `Lₙ`, `Gₙ` and `Aⁿ` for one `n`.
pub fn verify_example<T: Scalar>(n: usize, opts: &VerifyOptions) -> Result<ExampleReport<T>> {
    require_positive(n)?;
    if n > opts.max_n {
        return Err(Error::CapExceeded {
            what: format!("verification of L_{n} on T^{n}"),
            size: format!("4^{n}"),
            cap: opts.max_n,
        });
    }
    let form = power_form::<T>(n);
    let g_n = graph_lagrangian::<T>(n, opts.cap)?;
    let a_n = first_summand::<T>(n, opts.cap)?;

    // Exhaustive over element pairs, cross-checked with the generator test.
    let isotropy_witness = g_n
        .elements()
        .iter()
        .flat_map(|x| g_n.elements().iter().map(move |y| (x, y)))
        .find(|(x, y)| !form.pair(x, y).is_zero())
        .map(|(x, y)| (x.clone(), y.clone()));
    if isotropy_witness.is_none() != form.is_isotropic(&g_n)? {
        return Err(Error::Invariant("isotropy of Gₙ: pair scan and generator test disagree".into()));
    }

    let meet = g_n.intersect(&a_n)?;
    let intersection_witness = meet.elements().iter().find(|e| !e.is_zero()).cloned();

    let e0 = join_layout::<T>(&BitVector::zeros(n), &BitVector::unit(n, 0))?;
    let self_linking = form.self_linking(&e0)?;
    let l_n_alternating = form.is_alternating();
    let alternating_witness = (!self_linking.is_zero()).then(|| (e0.clone(), self_linking));

    let lemma_excludes = form.exponent_two_obstruction().is_some();
    let (l_n_hyperbolic, hyperbolicity_check, hyperbolic_witness) = if n <= opts.direct_search_max_n {
        let report = form.classify(opts.cap)?;
        if report.hyperbolic == lemma_excludes {
            return Err(Error::Invariant(format!(
                "L_{n}: search says hyperbolic = {}, exponent-two lemma says {}",
                report.hyperbolic, !lemma_excludes
            )));
        }
        (report.hyperbolic, HyperbolicityCheck::LemmaAndSearch, report.hyperbolic_witness)
    } else {
        if !lemma_excludes {
            return Err(Error::Invariant(format!("L_{n}: exponent-two lemma inconclusive")));
        }
        (false, HyperbolicityCheck::ExponentTwoLemma, None)
    };

    Ok(ExampleReport {
        n,
        g_n_order: g_n.order(),
        a_n_order: a_n.order(),
        g_n_isotropic: isotropy_witness.is_none(),
        isotropy_witness,
        intersection_trivial: intersection_witness.is_none(),
        intersection_witness,
        l_n_alternating,
        alternating_witness,
        l_n_hyperbolic,
        hyperbolicity_check,
        hyperbolic_witness,
        size_ratio_ok: 2 * g_n.order() == a_n.order(),
    })
}
