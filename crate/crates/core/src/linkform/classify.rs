use crate::abelian::{Element, FiniteAbelianGroup, Subgroup, SubgroupLattice};
use crate::error::{Error, Result};
use crate::scalar::{is_perfect_square, Scalar};

use super::isotropy::lagrangians_in;
use super::table::FormTable;
use super::LinkingForm;

/// A Lagrangian together with a complementary subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness<T> {
    pub lagrangian: Subgroup<T>,
    pub complement: Subgroup<T>,
}

/// Two isotropic subgroups with `S₁ ∩ S₂ = 0` and `S₁ + S₂ = T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicWitness<T> {
    pub first: Subgroup<T>,
    pub second: Subgroup<T>,
    /// Whether `second = first^⊥`.
    pub second_is_perp_of_first: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport<T> {
    pub group: FiniteAbelianGroup<T>,
    pub nonsingular: bool,
    pub alternating: bool,
    /// Element with nonzero self-linking when not alternating.
    pub alternating_witness: Option<Element<T>>,
    pub metabolic: bool,
    /// First Lagrangian in canonical order.
    pub lagrangian: Option<Subgroup<T>>,
    pub split_metabolic: bool,
    pub split_witness: Option<SplitWitness<T>>,
    pub hyperbolic: bool,
    pub hyperbolic_witness: Option<HyperbolicWitness<T>>,
    pub direct_double: bool,
    pub half: Option<FiniteAbelianGroup<T>>,
    pub lagrangian_count: usize,
}

impl<T: Scalar> ClassificationReport<T> {
    /// Checks `hyperbolic ⇒ split metabolic ⇒ metabolic ⇒ |T|` square and
    /// `split metabolic ⇒ direct double`.
    pub fn check_implications(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("classification: {what}")));
        if self.hyperbolic && !self.split_metabolic {
            return fail("hyperbolic but not split metabolic");
        }
        if self.split_metabolic && !self.metabolic {
            return fail("split metabolic but not metabolic");
        }
        if self.metabolic && !is_perfect_square(&self.group.order()) {
            return fail("metabolic on a group of non-square order");
        }
        if self.split_metabolic && !self.direct_double {
            return fail("split metabolic on a group that is not a direct double");
        }
        if self.metabolic != (self.lagrangian_count > 0) {
            return fail("metabolic flag disagrees with the Lagrangian count");
        }
        Ok(())
    }
}

impl<T: Scalar> LinkingForm<T> {
    /// Full classification of a nonsingular form by exhaustive search.
    pub fn classify(&self, cap: usize) -> Result<ClassificationReport<T>> {
        self.require_nonsingular()?;
        let lattice = SubgroupLattice::new(self.group(), cap)?;
        let table = FormTable::new(self, cap)?;
        let lagrangians = lagrangians_in(&lattice, &table)?;

        let mut split_witness = None;
        for l in &lagrangians {
            if let Some(c) = lattice.direct_summand_complement(l)? {
                split_witness = Some(SplitWitness { lagrangian: l.clone(), complement: c });
                break;
            }
        }

        let hyperbolic_witness = self.hyperbolic_pair(&lattice, &table, &lagrangians, cap)?;
        let alternating_witness = self.alternating_witness();
        let half = self.group().direct_double_half();
        let report = ClassificationReport {
            group: self.group().clone(),
            nonsingular: true,
            alternating: alternating_witness.is_none(),
            alternating_witness,
            metabolic: !lagrangians.is_empty(),
            lagrangian: lagrangians.first().cloned(),
            split_metabolic: split_witness.is_some(),
            split_witness,
            hyperbolic: hyperbolic_witness.is_some(),
            hyperbolic_witness,
            direct_double: half.is_some(),
            half,
            lagrangian_count: lagrangians.len(),
        };
        report.check_implications()?;
        Ok(report)
    }

    /// Searches Lagrangian pairs first, then every pair of complementary
    /// isotropic subgroups.
    fn hyperbolic_pair(
        &self,
        lattice: &SubgroupLattice<T>,
        table: &FormTable,
        lagrangians: &[Subgroup<T>],
        cap: usize,
    ) -> Result<Option<HyperbolicWitness<T>>> {
        let n = table.order();
        let complementary = |a: &Subgroup<T>, b: &Subgroup<T>| -> Result<bool> {
            Ok(a.order() * b.order() == n && a.intersect(b)?.is_trivial())
        };
        let mut found = None;
        'outer: for (i, a) in lagrangians.iter().enumerate() {
            for b in &lagrangians[i..] {
                if complementary(a, b)? {
                    found = Some((a, b));
                    break 'outer;
                }
            }
        }
        let isotropic: Vec<&Subgroup<T>>;
        if found.is_none() {
            isotropic = lattice
                .subgroups()
                .iter()
                .filter(|s| table.is_isotropic(&table.generator_indices(s)))
                .collect();
            'fallback: for (i, a) in isotropic.iter().enumerate() {
                for b in &isotropic[i..] {
                    if complementary(a, b)? {
                        found = Some((a, b));
                        break 'fallback;
                    }
                }
            }
        }
        match found {
            None => Ok(None),
            Some((a, b)) => {
                let perp = self.orthogonal_complement(a, cap)?;
                Ok(Some(HyperbolicWitness {
                    first: a.clone(),
                    second: b.clone(),
                    second_is_perp_of_first: perp == *b,
                }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::abelian::DEFAULT_CAP;

    use super::*;

    type F = LinkingForm<i64>;

    #[test]
    fn gamma_report() {
        let f = F::from_fractions(&[2, 2], &[&[(0, 1), (1, 2)], &[(1, 2), (1, 2)]]).unwrap();
        let r = f.classify(DEFAULT_CAP).unwrap();
        assert!(r.nonsingular && !r.alternating && r.metabolic && r.split_metabolic && !r.hyperbolic);
        assert_eq!(r.lagrangian_count, 1);
        let l = r.lagrangian.unwrap();
        assert_eq!(l.generators(), &[f.group().element(vec![1, 0]).unwrap()]);
        assert!(r.direct_double);
    }

    #[test]
    fn hyperbolic_plane_report() {
        let f = F::from_fractions(&[2, 2], &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap();
        let r = f.classify(DEFAULT_CAP).unwrap();
        assert!(r.hyperbolic && r.alternating);
        let w = r.hyperbolic_witness.unwrap();
        let mut pair = vec![w.first.generators()[0].clone(), w.second.generators()[0].clone()];
        pair.sort();
        assert_eq!(pair, vec![f.group().element(vec![0, 1]).unwrap(), f.group().element(vec![1, 0]).unwrap()]);
        assert!(!w.second_is_perp_of_first);
    }

    #[test]
    fn size_obstruction() {
        let f = F::from_fractions(&[3], &[&[(1, 3)]]).unwrap();
        let r = f.classify(DEFAULT_CAP).unwrap();
        assert!(!r.metabolic && !r.split_metabolic && !r.hyperbolic && !r.direct_double);
        assert_eq!(r.lagrangian_count, 0);
    }

    #[test]
    fn metabolic_but_not_split() {
        // ℤ/4 with L(1,1) = 1/4: ⟨2⟩ is a Lagrangian but not a summand.
        let f = F::from_fractions(&[4], &[&[(1, 4)]]).unwrap();
        let r = f.classify(DEFAULT_CAP).unwrap();
        assert!(r.metabolic && !r.split_metabolic && !r.hyperbolic);
    }

    #[test]
    fn trivial_form() {
        let r = F::trivial().classify(DEFAULT_CAP).unwrap();
        assert!(r.metabolic && r.split_metabolic && r.hyperbolic && r.alternating && r.direct_double);
    }

    #[test]
    fn singular_rejected() {
        let z = F::zero(FiniteAbelianGroup::new(vec![2]).unwrap());
        assert!(matches!(z.classify(DEFAULT_CAP), Err(Error::Input(_))));
    }
}
