//! Constructive sunflower extraction.
//!
//! A sunflower is a subfamily whose members pairwise intersect in one common
//! core, with every member strictly larger than the core. Any family of more
//! than `d!·(p-1)^d` distinct sets of size at most `d` contains one with `p`
//! petals; [`find_sunflower`] follows the inductive argument: take a maximal
//! pairwise-disjoint subfamily, and if it is too small, branch on the most
//! frequent element.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

pub type Element = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("member {0} duplicates member {1}")]
    Duplicate(usize, usize),
    #[error("member {index} has {size} elements, above the bound {bound}")]
    TooLarge {
        index: usize,
        size: usize,
        bound: usize,
    },
    #[error("member {0} is not contained in the universe")]
    OutsideUniverse(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: BTreeSet<Element>,
    members: Vec<Vec<Element>>,
    card_bound: usize,
}

impl SetFamily {
    /// Family over the union of its members.
    pub fn new<I, S>(members: I, card_bound: usize) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Element>,
    {
        let members: Vec<Vec<Element>> = members
            .into_iter()
            .map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let universe = members.iter().flatten().copied().collect();
        Self::with_universe(universe, members, card_bound)
    }

    pub fn with_universe(
        universe: BTreeSet<Element>,
        members: Vec<Vec<Element>>,
        card_bound: usize,
    ) -> Result<Self, FamilyError> {
        let mut members = members;
        for m in &mut members {
            m.sort_unstable();
            m.dedup();
        }
        let mut seen: BTreeMap<&[Element], usize> = BTreeMap::new();
        for (i, m) in members.iter().enumerate() {
            if m.len() > card_bound {
                return Err(FamilyError::TooLarge {
                    index: i,
                    size: m.len(),
                    bound: card_bound,
                });
            }
            if !m.iter().all(|e| universe.contains(e)) {
                return Err(FamilyError::OutsideUniverse(i));
            }
            if let Some(&j) = seen.get(m.as_slice()) {
                return Err(FamilyError::Duplicate(i, j));
            }
            seen.insert(m, i);
        }
        Ok(SetFamily {
            universe,
            members,
            card_bound,
        })
    }

    pub fn members(&self) -> &[Vec<Element>] {
        &self.members
    }

    pub fn universe(&self) -> &BTreeSet<Element> {
        &self.universe
    }

    pub fn card_bound(&self) -> usize {
        self.card_bound
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sunflower {
    pub core: Vec<Element>,
    /// Ascending member indices.
    pub petal_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SunflowerViolation {
    #[error("petal index {0} is out of range or repeated")]
    BadIndex(usize),
    #[error("members {0} and {1} intersect outside the core")]
    WrongIntersection(usize, usize),
    #[error("member {0} has an empty petal")]
    EmptyPetal(usize),
    #[error("core is not contained in member {0}")]
    CoreNotContained(usize),
}

impl Sunflower {
    pub fn petal_count(&self) -> usize {
        self.petal_indices.len()
    }

    /// Exhaustive pairwise check of the sunflower conditions.
    pub fn check(&self, fam: &SetFamily) -> Result<(), SunflowerViolation> {
        let mut seen = HashSet::new();
        for &i in &self.petal_indices {
            if i >= fam.len() || !seen.insert(i) {
                return Err(SunflowerViolation::BadIndex(i));
            }
        }
        check_sunflower_sets(
            &self.core,
            self.petal_indices
                .iter()
                .map(|&i| (i, fam.members[i].as_slice())),
        )
    }
}

/// Checks that every listed set contains `core`, strictly, and that any two
/// of them intersect exactly in `core`. Sets must be sorted.
pub fn check_sunflower_sets<'a, I>(core: &[Element], sets: I) -> Result<(), SunflowerViolation>
where
    I: IntoIterator<Item = (usize, &'a [Element])>,
{
    let sets: Vec<(usize, &[Element])> = sets.into_iter().collect();
    let core_set: BTreeSet<Element> = core.iter().copied().collect();
    for &(i, s) in &sets {
        if !core_set.iter().all(|e| s.binary_search(e).is_ok()) {
            return Err(SunflowerViolation::CoreNotContained(i));
        }
        if s.len() == core_set.len() {
            return Err(SunflowerViolation::EmptyPetal(i));
        }
    }
    for (a, &(i, si)) in sets.iter().enumerate() {
        for &(j, sj) in &sets[a + 1..] {
            let common = si.iter().filter(|e| sj.binary_search(e).is_ok()).count();
            if common != core_set.len() {
                return Err(SunflowerViolation::WrongIntersection(i, j));
            }
        }
    }
    Ok(())
}

/// `d!·(p-1)^d`, saturating at `u128::MAX`.
pub fn sunflower_threshold(card_bound: usize, petals: usize) -> u128 {
    let mut fact: u128 = 1;
    for i in 2..=card_bound as u128 {
        fact = fact.saturating_mul(i);
    }
    let base = petals.saturating_sub(1) as u128;
    let mut pow: u128 = 1;
    for _ in 0..card_bound {
        pow = pow.saturating_mul(base);
    }
    fact.saturating_mul(pow)
}

/// Finds a sunflower with at least `petals_wanted` petals.
///
/// Always succeeds when the family is larger than
/// [`sunflower_threshold`]`(card_bound, petals_wanted)` and its members are
/// nonempty; below that it may or may not find one.
pub fn find_sunflower(fam: &SetFamily, petals_wanted: usize) -> Option<Sunflower> {
    if petals_wanted == 0 || fam.is_empty() || petals_wanted > fam.len() {
        return None;
    }
    let residues: Vec<(usize, Vec<Element>)> = fam.members.iter().cloned().enumerate().collect();
    let (mut core, mut petal_indices) = extract(residues, petals_wanted)?;
    core.sort_unstable();
    petal_indices.sort_unstable();
    Some(Sunflower {
        core,
        petal_indices,
    })
}

/// `residues` are members with the core found so far stripped off.
fn extract(
    residues: Vec<(usize, Vec<Element>)>,
    wanted: usize,
) -> Option<(Vec<Element>, Vec<usize>)> {
    // An empty residue would be a member equal to the core: never a petal.
    let residues: Vec<(usize, Vec<Element>)> = residues
        .into_iter()
        .filter(|(_, r)| !r.is_empty())
        .collect();
    if residues.len() < wanted {
        return None;
    }

    let mut used: HashSet<Element> = HashSet::new();
    let mut disjoint = Vec::new();
    for (i, r) in &residues {
        if r.iter().all(|e| !used.contains(e)) {
            used.extend(r.iter().copied());
            disjoint.push(*i);
        }
    }
    if disjoint.len() >= wanted {
        return Some((Vec::new(), disjoint));
    }

    let mut freq: BTreeMap<Element, usize> = BTreeMap::new();
    for (_, r) in &residues {
        for &e in r {
            *freq.entry(e).or_default() += 1;
        }
    }
    // Strict `>` keeps the smallest element among equal counts.
    let (mut pivot, mut best) = (0, 0);
    for (&e, &c) in &freq {
        if c > best {
            (pivot, best) = (e, c);
        }
    }
    if best < wanted {
        return None;
    }
    let restricted: Vec<(usize, Vec<Element>)> = residues
        .into_iter()
        .filter_map(|(i, r)| {
            r.binary_search(&pivot).ok().map(|pos| {
                let mut r = r;
                r.remove(pos);
                (i, r)
            })
        })
        .collect();
    let (mut core, petals) = extract(restricted, wanted)?;
    core.push(pivot);
    Some((core, petals))
}
