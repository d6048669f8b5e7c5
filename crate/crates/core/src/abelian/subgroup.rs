use std::collections::HashSet;
use std::fmt;

use crate::error::{input, Error, Result};
use crate::scalar::{factorize, valuation, Scalar};

use super::group::{Element, FiniteAbelianGroup};

/// A subgroup with its full element set.
///
/// `elements` is sorted lexicographically and `generators` is the greedy
/// generating set read off that order (each element not yet spanned by the
/// earlier picks is taken), so two subgroups with the same elements compare
/// equal regardless of how they were built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup<T> {
    ambient: FiniteAbelianGroup<T>,
    generators: Vec<Element<T>>,
    elements: Vec<Element<T>>,
}

/// Evidence that a subgroup is not pure: `element ∈ S ∩ mG` but `∉ mS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityWitness<T> {
    pub multiplier: T,
    pub element: Element<T>,
}

/// Adds `g` to a span held as a set plus a list, one coset at a time.
fn extend_span<T: Scalar>(
    ambient: &FiniteAbelianGroup<T>,
    set: &mut HashSet<Element<T>>,
    list: &mut Vec<Element<T>>,
    g: &Element<T>,
    cap: usize,
) -> Result<()> {
    let base = list.clone();
    let mut shift = g.clone();
    while !set.contains(&shift) {
        if list.len() + base.len() > cap {
            return Err(Error::CapExceeded {
                what: format!("subgroup of {ambient:?}"),
                size: format!("more than {}", list.len()),
                cap,
            });
        }
        for h in &base {
            let x = ambient.add(h, &shift);
            set.insert(x.clone());
            list.push(x);
        }
        shift = ambient.add(&shift, g);
    }
    Ok(())
}

fn greedy_generators<T: Scalar>(ambient: &FiniteAbelianGroup<T>, sorted: &[Element<T>]) -> Vec<Element<T>> {
    let zero = ambient.zero();
    let mut set: HashSet<Element<T>> = HashSet::from([zero.clone()]);
    let mut list = vec![zero];
    let mut gens = Vec::new();
    for e in sorted {
        if set.len() == sorted.len() {
            break;
        }
        if !set.contains(e) {
            extend_span(ambient, &mut set, &mut list, e, usize::MAX).expect("uncapped");
            gens.push(e.clone());
        }
    }
    gens
}

impl<T: Scalar> Subgroup<T> {
    /// The subgroup generated by `gens`, enumerated exhaustively.
    pub fn generate(ambient: &FiniteAbelianGroup<T>, gens: &[Element<T>], cap: usize) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        let zero = ambient.zero();
        let mut set: HashSet<Element<T>> = HashSet::from([zero.clone()]);
        let mut list = vec![zero];
        for g in gens {
            extend_span(ambient, &mut set, &mut list, g, cap)?;
        }
        list.sort();
        Ok(Self::from_sorted(ambient.clone(), list))
    }

    /// Trusted constructor: `elements` must be a sorted, duplicate-free subgroup.
    pub(crate) fn from_sorted(ambient: FiniteAbelianGroup<T>, elements: Vec<Element<T>>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let generators = greedy_generators(&ambient, &elements);
        Self { ambient, generators, elements }
    }

    pub(crate) fn from_parts(
        ambient: FiniteAbelianGroup<T>,
        generators: Vec<Element<T>>,
        elements: Vec<Element<T>>,
    ) -> Self {
        Self { ambient, generators, elements }
    }

    pub fn trivial(ambient: &FiniteAbelianGroup<T>) -> Self {
        Self { ambient: ambient.clone(), generators: Vec::new(), elements: vec![ambient.zero()] }
    }

    pub fn whole(ambient: &FiniteAbelianGroup<T>, cap: usize) -> Result<Self> {
        Ok(Self::from_sorted(ambient.clone(), ambient.elements(cap)?))
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup<T> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element<T>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Element<T>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, e: &Element<T>) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(input(format!("ambient mismatch: {:?} vs {:?}", self.ambient, other.ambient)))
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let common: Vec<Element<T>> = self.elements.iter().filter(|e| other.contains(e)).cloned().collect();
        Ok(Self::from_sorted(self.ambient.clone(), common))
    }

    /// `S + S'`.
    pub fn sum(&self, other: &Self, cap: usize) -> Result<Self> {
        self.same_ambient(other)?;
        let gens: Vec<Element<T>> = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::generate(&self.ambient, &gens, cap)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements.iter().all(|e| other.contains(e))
    }

    /// `m·S`, sorted.
    pub fn multiple(&self, m: &T) -> Vec<Element<T>> {
        let mut out: Vec<Element<T>> = self.elements.iter().map(|e| self.ambient.scale(e, m)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Multipliers `m` checked by the purity test, increasing.
    ///
    /// `mG` and `mS` depend only on `gcd(m, exponent)`, so divisors of the
    /// exponent suffice. Purity also splits over primes: for `p ∤ |S|`
    /// multiplication by `p` is bijective on `S`, so the `p`-part of `m`
    /// never creates a failure. The divisors of the `|S|`-primary part of the
    /// exponent therefore decide purity.
    pub fn purity_multipliers(&self) -> Vec<T> {
        let exponent = self.ambient.exponent();
        let order = T::from_count(self.order());
        let mut divisors = vec![T::one()];
        for (p, _) in factorize(&order) {
            let v = valuation(&exponent, &p);
            let mut next = Vec::with_capacity(divisors.len() * (v as usize + 1));
            for d in &divisors {
                let mut pk = T::one();
                for _ in 0..=v {
                    next.push(d.clone() * pk.clone());
                    pk = pk * p.clone();
                }
            }
            divisors = next;
        }
        divisors.sort();
        divisors
    }

    /// The first failure of `S ∩ mG = mS`, if any.
    pub fn purity_witness(&self) -> Option<PurityWitness<T>> {
        for m in self.purity_multipliers() {
            let ms = self.multiple(&m);
            let bad = self
                .elements
                .iter()
                .find(|a| self.ambient.in_multiple(a, &m) && ms.binary_search(a).is_err());
            if let Some(a) = bad {
                return Some(PurityWitness { multiplier: m, element: a.clone() });
            }
        }
        None
    }

    pub fn is_pure(&self) -> bool {
        self.purity_witness().is_none()
    }
}

impl<T: fmt::Debug> fmt::Debug for Subgroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, "⟩ ≤ {:?} (order {})", self.ambient, self.elements.len())
    }
}
