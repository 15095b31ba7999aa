//! Profiles (one ballot per voter), admissible domains, and the
//! unrestricted-domain axioms.
//!
//! Domains are stored extensionally in a canonical order (lexicographic
//! over the entry bit matrices, voter 0 most significant) so that every
//! quantifier in the axiom checkers is a plain exhaustive loop with
//! deterministic witnesses.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::orders::{
    enumerate_linear_orders, enumerate_weak_orders, AlternativeSet, Injection, OrderError,
    ParseError, Relation,
};

/// Largest voter count the crate will build structures for. The search and
/// ultrafilter layers cap further (m <= 4); this is just a sanity bound so
/// full domains cannot blow up the process.
pub const MAX_VOTERS: usize = 6;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("voter count {0} out of range 1..={MAX_VOTERS}")]
    BadVoterCount(usize),
    #[error("voter index {index} out of range for {voters} voters")]
    VoterOutOfRange { index: usize, voters: usize },
    #[error("profile has no entries")]
    EmptyProfile,
    #[error("profile entries use different carriers")]
    MixedCarriers,
    #[error("entry for voter {voter} is not a weak order")]
    EntryNotWeakOrder { voter: usize },
    #[error("domain has no profiles")]
    EmptyDomain,
    #[error("domain profiles disagree on carrier or voter count")]
    InconsistentDomain,
    #[error("carrier has {0} alternatives; at least 3 are required")]
    CarrierTooSmall(usize),
    #[error("the two alternatives must be distinct")]
    SamePair,
    #[error("domain family component {0} does not match its subset carrier")]
    BadFamilyComponent(String),
}

/// A set of m voters, addressed by index 0..m-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VoterSet {
    count: usize,
}

impl VoterSet {
    pub fn new(count: usize) -> Result<Self, ProfileError> {
        if count == 0 || count > MAX_VOTERS {
            return Err(ProfileError::BadVoterCount(count));
        }
        Ok(VoterSet { count })
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// A subset of voters, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition {
    mask: u32,
}

impl Coalition {
    pub fn empty() -> Self {
        Coalition { mask: 0 }
    }

    pub fn full(voters: VoterSet) -> Self {
        Coalition { mask: (1u32 << voters.count()) - 1 }
    }

    pub fn singleton(i: usize) -> Self {
        Coalition { mask: 1 << i }
    }

    pub fn from_mask(mask: u32) -> Self {
        Coalition { mask }
    }

    pub fn from_members(members: &[usize]) -> Self {
        let mut mask = 0;
        for &i in members {
            mask |= 1 << i;
        }
        Coalition { mask }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn union(&self, other: Coalition) -> Coalition {
        Coalition { mask: self.mask | other.mask }
    }

    pub fn intersect(&self, other: Coalition) -> Coalition {
        Coalition { mask: self.mask & other.mask }
    }

    pub fn complement(&self, voters: VoterSet) -> Coalition {
        Coalition { mask: !self.mask & ((1u32 << voters.count()) - 1) }
    }

    pub fn is_subset_of(&self, other: Coalition) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint_from(&self, other: Coalition) -> bool {
        self.mask & other.mask == 0
    }

    /// All coalitions over `voters`, by ascending mask.
    pub fn all(voters: VoterSet) -> impl Iterator<Item = Coalition> {
        (0..(1u32 << voters.count())).map(Coalition::from_mask)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// One weak order per voter over a shared carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    entries: Vec<Relation>,
}

impl Profile {
    pub fn new(entries: Vec<Relation>) -> Result<Self, ProfileError> {
        if entries.is_empty() {
            return Err(ProfileError::EmptyProfile);
        }
        let carrier = entries[0].carrier().clone();
        for (voter, r) in entries.iter().enumerate() {
            if r.carrier() != &carrier {
                return Err(ProfileError::MixedCarriers);
            }
            if !r.is_weak_order() {
                return Err(ProfileError::EntryNotWeakOrder { voter });
            }
        }
        Ok(Profile { entries })
    }

    pub fn carrier(&self) -> &AlternativeSet {
        self.entries[0].carrier()
    }

    pub fn voters(&self) -> VoterSet {
        VoterSet { count: self.entries.len() }
    }

    pub fn entries(&self) -> &[Relation] {
        &self.entries
    }

    pub fn entry(&self, voter: usize) -> &Relation {
        &self.entries[voter]
    }

    /// Pointwise restriction: `(p | A)_i = p_i | A`.
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<Profile, ProfileError> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.restrict(subset))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Profile { entries })
    }

    /// Pointwise pushforward along an injection into this profile's
    /// carrier.
    pub fn pushforward(&self, f: &Injection) -> Result<Profile, ProfileError> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.pushforward(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Profile { entries })
    }

    /// Does every voter in `coalition` strictly prefer `a` to `b`?
    /// Vacuously true for the empty coalition.
    pub fn coalition_strict(
        &self,
        coalition: Coalition,
        a: usize,
        b: usize,
    ) -> Result<bool, ProfileError> {
        if a == b {
            return Err(ProfileError::SamePair);
        }
        Ok((0..self.entries.len())
            .filter(|&i| coalition.contains(i))
            .all(|i| self.entries[i].strict_part().contains(a, b)))
    }

    /// The coalition of voters strictly preferring `a` to `b`.
    pub fn strict_mask(&self, a: usize, b: usize) -> Coalition {
        let mut mask = 0u32;
        for (i, r) in self.entries.iter().enumerate() {
            if r.strict_part().contains(a, b) {
                mask |= 1 << i;
            }
        }
        Coalition { mask }
    }

    /// Are all entries linear orders?
    pub fn is_linear(&self) -> bool {
        self.entries.iter().all(Relation::is_linear_order)
    }

    /// Is every voter strict on the pair (no voter indifferent between
    /// `a` and `b`)?
    pub fn is_linear_on_pair(&self, a: usize, b: usize) -> bool {
        self.entries.iter().all(|r| !(r.contains(a, b) && r.contains(b, a)))
    }

    pub(crate) fn cmp_canonical(&self, other: &Profile) -> Ordering {
        debug_assert_eq!(self.entries.len(), other.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.lex_key().cmp(&b.lex_key()) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Parse `a>b~c ; c>a>b` over the given carrier.
    pub fn parse(carrier: &AlternativeSet, input: &str) -> Result<Profile, ParseError> {
        let mut entries = Vec::new();
        let mut offset = 0usize;
        for segment in input.split(';') {
            let rel = carrier.parse_chain(segment).map_err(|e| e.shift(offset))?;
            entries.push(rel);
            offset += segment.len() + 1;
        }
        Profile::new(entries)
            .map_err(|e| ParseError::new(1, format!("invalid profile: {e}")))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chains: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.to_chain().expect("profile entries are weak orders"))
            .collect();
        write!(f, "{}", chains.join(" ; "))
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({self})")
    }
}

/// How a domain was built; full domains carry exact cardinality guarantees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    FullWeak,
    FullLinear,
    Explicit,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::FullWeak => write!(f, "full-weak"),
            DomainKind::FullLinear => write!(f, "full-linear"),
            DomainKind::Explicit => write!(f, "explicit"),
        }
    }
}

/// A finite set of admissible profiles over a fixed carrier and voter set,
/// stored in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    carrier: AlternativeSet,
    voters: VoterSet,
    kind: DomainKind,
    profiles: Vec<Profile>,
}

impl Domain {
    fn product(
        carrier: &AlternativeSet,
        voters: VoterSet,
        kind: DomainKind,
        base: Vec<Relation>,
    ) -> Domain {
        let m = voters.count();
        let mut profiles = Vec::with_capacity(base.len().pow(m as u32));
        let mut idx = vec![0usize; m];
        loop {
            let entries: Vec<Relation> = idx.iter().map(|&i| base[i].clone()).collect();
            profiles.push(Profile { entries });
            // odometer with voter 0 most significant
            let mut k = m;
            loop {
                if k == 0 {
                    return Domain { carrier: carrier.clone(), voters, kind, profiles };
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < base.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// All w(n)^m profiles of weak orders.
    pub fn full_weak(carrier: &AlternativeSet, voters: VoterSet) -> Result<Domain, ProfileError> {
        let base = enumerate_weak_orders(carrier)?;
        Ok(Domain::product(carrier, voters, DomainKind::FullWeak, base))
    }

    /// All (n!)^m profiles of linear orders.
    pub fn full_linear(carrier: &AlternativeSet, voters: VoterSet) -> Result<Domain, ProfileError> {
        let base = enumerate_linear_orders(carrier)?;
        Ok(Domain::product(carrier, voters, DomainKind::FullLinear, base))
    }

    /// An explicit domain from a nonempty profile list (deduplicated,
    /// canonically sorted).
    pub fn explicit(profiles: Vec<Profile>) -> Result<Domain, ProfileError> {
        if profiles.is_empty() {
            return Err(ProfileError::EmptyDomain);
        }
        let carrier = profiles[0].carrier().clone();
        let voters = profiles[0].voters();
        for p in &profiles {
            if p.carrier() != &carrier || p.voters() != voters {
                return Err(ProfileError::InconsistentDomain);
            }
        }
        let mut profiles = profiles;
        profiles.sort_by(Profile::cmp_canonical);
        profiles.dedup();
        Ok(Domain { carrier, voters, kind: DomainKind::Explicit, profiles })
    }

    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn voters(&self) -> VoterSet {
        self.voters
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn profile(&self, index: usize) -> &Profile {
        &self.profiles[index]
    }

    pub fn index_of(&self, p: &Profile) -> Option<usize> {
        self.profiles.binary_search_by(|q| q.cmp_canonical(p)).ok()
    }

    pub fn contains(&self, p: &Profile) -> bool {
        self.index_of(p).is_some()
    }

    /// Indices of the profiles whose entries are all linear.
    pub fn linear_profile_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.profiles[i].is_linear()).collect()
    }

    /// Indices of the profiles linear on the pair `{a,b}`.
    pub fn linear_on_pair_indices(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.profiles[i].is_linear_on_pair(a, b)).collect()
    }

    /// The image of this domain under pointwise restriction to `subset`.
    /// Full domains restrict to full domains of the same kind.
    pub fn restrict_image(&self, subset: &AlternativeSet) -> Result<Domain, ProfileError> {
        match self.kind {
            DomainKind::FullWeak => Domain::full_weak(subset, self.voters),
            DomainKind::FullLinear => Domain::full_linear(subset, self.voters),
            DomainKind::Explicit => {
                let image = self
                    .profiles
                    .iter()
                    .map(|p| p.restrict(subset))
                    .collect::<Result<Vec<_>, _>>()?;
                Domain::explicit(image)
            }
        }
    }
}

/// Witness that the unrestricted-domain axiom fails: a profile over a
/// 3-element sub-carrier that no admissible profile restricts to.
#[derive(Debug, Clone)]
pub struct UdWitness {
    pub subset: AlternativeSet,
    pub target: Profile,
}

impl fmt::Display for UdWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subset={} target={}", self.subset.braces(), self.target)
    }
}

/// Unrestricted domain: every profile of weak orders on every 3-element
/// sub-carrier lifts to an admissible profile. Returns the least witness
/// (subsets by ascending mask, targets in canonical order) on failure.
pub fn check_ud(d: &Domain) -> Result<Option<UdWitness>, ProfileError> {
    let n = d.carrier().len();
    if n < 3 {
        return Err(ProfileError::CarrierTooSmall(n));
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() != 3 {
            continue;
        }
        let subset = d.carrier().subset(mask)?;
        let mut seen = std::collections::HashSet::new();
        for p in d.profiles() {
            let r = p.restrict(&subset)?;
            let key: Vec<u64> = r.entries().iter().map(Relation::bits).collect();
            seen.insert(key);
        }
        let targets = Domain::full_weak(&subset, d.voters())?;
        for target in targets.profiles() {
            let key: Vec<u64> = target.entries().iter().map(Relation::bits).collect();
            if !seen.contains(&key) {
                return Ok(Some(UdWitness { subset, target: target.clone() }));
            }
        }
    }
    Ok(None)
}

/// Unrestrictedness relative to the domain's own ballot class: full-linear
/// domains are tested against linear-order targets, everything else
/// against weak-order targets. This is the hypothesis the theorem
/// checkers gate on — the classical results run on linear-ballot domains
/// too, where plain [`check_ud`] is unsatisfiable by construction.
pub fn check_ud_within_kind(d: &Domain) -> Result<Option<UdWitness>, ProfileError> {
    let n = d.carrier().len();
    if n < 3 {
        return Err(ProfileError::CarrierTooSmall(n));
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() != 3 {
            continue;
        }
        let subset = d.carrier().subset(mask)?;
        let mut seen = std::collections::HashSet::new();
        for p in d.profiles() {
            let r = p.restrict(&subset)?;
            let key: Vec<u64> = r.entries().iter().map(Relation::bits).collect();
            seen.insert(key);
        }
        let targets = match d.kind() {
            DomainKind::FullLinear => Domain::full_linear(&subset, d.voters())?,
            _ => Domain::full_weak(&subset, d.voters())?,
        };
        for target in targets.profiles() {
            let key: Vec<u64> = target.entries().iter().map(Relation::bits).collect();
            if !seen.contains(&key) {
                return Ok(Some(UdWitness { subset, target: target.clone() }));
            }
        }
    }
    Ok(None)
}

/// One domain per nonempty subset of a carrier (subsets indexed by bitmask).
#[derive(Debug, Clone)]
pub struct DomainFamily {
    carrier: AlternativeSet,
    components: Vec<Option<Domain>>,
}

impl DomainFamily {
    /// Build the family of restriction images of a top-level domain. For
    /// full domains this is the canonical sub-domain assignment (full weak
    /// or full linear on every subset).
    pub fn from_top(top: &Domain) -> Result<DomainFamily, ProfileError> {
        let carrier = top.carrier().clone();
        let n = carrier.len();
        let mut components = vec![None; 1 << n];
        for mask in 1u32..(1 << n) {
            let subset = carrier.subset(mask)?;
            components[mask as usize] = Some(top.restrict_image(&subset)?);
        }
        Ok(DomainFamily { carrier, components })
    }

    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn component(&self, mask: u32) -> &Domain {
        self.components[mask as usize].as_ref().expect("nonempty subset mask")
    }

    /// Replace one component (used to build negative test families).
    pub fn with_component(mut self, mask: u32, domain: Domain) -> Result<Self, ProfileError> {
        let subset = self.carrier.subset(mask)?;
        if domain.carrier() != &subset || domain.voters().count() != self.voters().count() {
            return Err(ProfileError::BadFamilyComponent(subset.braces()));
        }
        self.components[mask as usize] = Some(domain);
        Ok(self)
    }

    pub fn voters(&self) -> VoterSet {
        self.component(1).voters()
    }

    pub fn top_mask(&self) -> u32 {
        (1u32 << self.carrier.len()) - 1
    }

    pub fn top(&self) -> &Domain {
        self.component(self.top_mask())
    }
}

/// Result of the categorical unrestricted-domain check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CudReport {
    /// Is the domain the full weak-order profile set on every subset of
    /// size <= 3?
    pub small_sets_full: bool,
    /// Is every restriction map between nested subsets surjective (with
    /// image exactly the smaller component)?
    pub epis_preserved: bool,
}

impl CudReport {
    pub fn holds(&self) -> bool {
        self.small_sets_full && self.epis_preserved
    }
}

/// Check the categorical form of unrestricted domain on a subset-indexed
/// family of domains.
pub fn check_cud(family: &DomainFamily) -> Result<CudReport, ProfileError> {
    let n = family.carrier().len();
    let voters = family.voters();
    let mut small_sets_full = true;
    'small: for mask in 1u32..(1 << n) {
        if mask.count_ones() > 3 {
            continue;
        }
        let subset = family.carrier().subset(mask)?;
        let full = Domain::full_weak(&subset, voters)?;
        let d = family.component(mask);
        if d.len() != full.len() {
            small_sets_full = false;
            break 'small;
        }
        for (p, q) in d.profiles().iter().zip(full.profiles()) {
            if p.cmp_canonical(q) != Ordering::Equal {
                small_sets_full = false;
                break 'small;
            }
        }
    }
    let mut epis_preserved = true;
    'epi: for big in 1u32..(1 << n) {
        let mut small = big;
        loop {
            small = (small - 1) & big;
            if small == 0 {
                break;
            }
            let subset = family.carrier().subset(small)?;
            let image = Domain::explicit(
                family
                    .component(big)
                    .profiles()
                    .iter()
                    .map(|p| p.restrict(&subset))
                    .collect::<Result<Vec<_>, _>>()?,
            )?;
            let target = family.component(small);
            let same = image.len() == target.len()
                && image
                    .profiles()
                    .iter()
                    .zip(target.profiles())
                    .all(|(p, q)| p.cmp_canonical(q) == Ordering::Equal);
            if !same {
                epis_preserved = false;
                break 'epi;
            }
        }
    }
    Ok(CudReport { small_sets_full, epis_preserved })
}
