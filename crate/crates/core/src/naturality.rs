//! Welfare functions as families indexed by sub-carriers, and naturality
//! checks over them.
//!
//! A subset-indexed family of welfare functions is *natural under
//! inclusions* when restricting the ballot and then aggregating agrees
//! with aggregating and then restricting — that is exactly independence
//! of irrelevant alternatives, component by component. On linear ballots
//! a hypothesis-satisfying family is natural under arbitrary injective
//! relabelings as well. Diagonal preservation (every unanimous two-element
//! ballot maps to itself) is the categorical form of Pareto. The module
//! also enumerates the natural transformations X^k -> X over all functions
//! between small finite sets; only the projections survive.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::orders::{
    enumerate_linear_orders, AlternativeSet, Injection, OrderError, Relation,
};
use crate::profiles::{DomainFamily, Profile, ProfileError};
use crate::swf::{Axiom, Swf, SwfError};

/// Caps for the natural-transformation enumeration; the top level walks
/// alphabet^(free entries) completions per surviving prefix.
pub const MAX_NAT_ARITY: usize = 3;
pub const MAX_NAT_SIZE: usize = 3;

#[derive(Debug, Error)]
pub enum NaturalityError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Swf(#[from] SwfError),
    #[error("hypotheses not met: {}", .missing.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))]
    HypothesesNotMet { missing: Vec<Axiom> },
    #[error("component extension is ill-defined: {0}")]
    IllDefined(Box<IllDefinedWitness>),
    #[error("no admissible profile over {subset} restricts to {profile}")]
    NoLift { subset: AlternativeSet, profile: Profile },
    #[error("restriction of an admissible profile to {subset} escapes the component domain: {profile}")]
    RestrictionEscapes { subset: AlternativeSet, profile: Profile },
    #[error("family component for {0} does not match the subset carrier")]
    BadComponent(AlternativeSet),
    #[error("top-level function's domain does not match the family's top component")]
    TopDomainMismatch,
    #[error("pushed-forward profile {profile} is missing from the component domain over {subset}")]
    MissingProfile { subset: AlternativeSet, profile: Profile },
    #[error("arity {0} out of range 1..={MAX_NAT_ARITY}")]
    ArityOutOfRange(usize),
    #[error("set size {0} out of range 1..={MAX_NAT_SIZE}")]
    SizeOutOfRange(usize),
}

/// Two lifts of the same restricted profile whose outcomes disagree after
/// restriction: the concrete shape of an IIA failure.
#[derive(Debug, Clone)]
pub struct IllDefinedWitness {
    pub subset: AlternativeSet,
    pub restricted: Profile,
    pub lift_p: Profile,
    pub lift_q: Profile,
    pub outcome_p: Relation,
    pub outcome_q: Relation,
}

impl fmt::Display for IllDefinedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} restricted={} lifts p={} q={} give {} vs {}",
            self.subset.braces(),
            self.restricted,
            self.lift_p,
            self.lift_q,
            self.outcome_p,
            self.outcome_q
        )
    }
}

/// One welfare function per nonempty subset of the carrier, indexed by
/// subset bitmask. Components are stored extensionally, so the naturality
/// checks compare independently held tables.
#[derive(Clone)]
pub struct SwfFamily {
    carrier: AlternativeSet,
    components: Vec<Option<Swf>>,
}

impl SwfFamily {
    pub fn from_components(
        carrier: AlternativeSet,
        components: Vec<(u32, Swf)>,
    ) -> Result<SwfFamily, NaturalityError> {
        let n = carrier.len();
        let mut slots: Vec<Option<Swf>> = vec![None; 1 << n];
        for (mask, swf) in components {
            let subset = carrier.subset(mask)?;
            if swf.carrier() != &subset {
                return Err(NaturalityError::BadComponent(subset));
            }
            slots[mask as usize] = Some(swf);
        }
        for mask in 1u32..(1 << n) {
            if slots[mask as usize].is_none() {
                return Err(NaturalityError::BadComponent(carrier.subset(mask)?));
            }
        }
        Ok(SwfFamily { carrier, components: slots })
    }

    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn top_mask(&self) -> u32 {
        (1u32 << self.carrier.len()) - 1
    }

    pub fn component(&self, mask: u32) -> &Swf {
        self.components[mask as usize].as_ref().expect("nonempty subset mask")
    }

    pub fn top(&self) -> &Swf {
        self.component(self.top_mask())
    }

    /// Replace one component (negative-test instrumentation).
    pub fn with_component(mut self, mask: u32, swf: Swf) -> Result<SwfFamily, NaturalityError> {
        let subset = self.carrier.subset(mask)?;
        if swf.carrier() != &subset {
            return Err(NaturalityError::BadComponent(subset));
        }
        self.components[mask as usize] = Some(swf);
        Ok(self)
    }
}

impl fmt::Debug for SwfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SwfFamily(on {})", self.carrier)
    }
}

/// Extend a top-level function to the whole subset family: the component
/// over A sends p to sigma(q)|A for any admissible lift q of p. Every lift
/// is checked; disagreement surfaces the IIA failure, a profile with no
/// lift surfaces the epi failure.
pub fn extend_from_top(
    s_top: &Swf,
    family: &DomainFamily,
) -> Result<SwfFamily, NaturalityError> {
    if family.carrier() != s_top.carrier() {
        return Err(NaturalityError::TopDomainMismatch);
    }
    if family.top() != s_top.domain().as_ref() {
        return Err(NaturalityError::TopDomainMismatch);
    }
    let n = s_top.carrier().len();
    let mut components = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset = s_top.carrier().subset(mask)?;
        let comp_domain = family.component(mask).clone();
        let mut slots: Vec<Option<(usize, Relation)>> = vec![None; comp_domain.len()];
        for (i, q) in s_top.domain().profiles().iter().enumerate() {
            let p = q.restrict(&subset)?;
            let idx = comp_domain
                .index_of(&p)
                .ok_or_else(|| NaturalityError::RestrictionEscapes {
                    subset: subset.clone(),
                    profile: p.clone(),
                })?;
            let out = s_top.output(i).restrict(&subset)?;
            match &slots[idx] {
                None => slots[idx] = Some((i, out)),
                Some((first, prev)) => {
                    if prev != &out {
                        return Err(NaturalityError::IllDefined(Box::new(IllDefinedWitness {
                            subset,
                            restricted: p,
                            lift_p: s_top.domain().profile(*first).clone(),
                            lift_q: q.clone(),
                            outcome_p: prev.clone(),
                            outcome_q: out,
                        })));
                    }
                }
            }
        }
        let mut outputs = Vec::with_capacity(comp_domain.len());
        for (idx, slot) in slots.into_iter().enumerate() {
            match slot {
                Some((_, out)) => outputs.push(out),
                None => {
                    return Err(NaturalityError::NoLift {
                        subset,
                        profile: comp_domain.profile(idx).clone(),
                    })
                }
            }
        }
        let swf = Swf::from_outputs_relaxed(Arc::new(comp_domain), outputs)?;
        components.push((mask, swf));
    }
    SwfFamily::from_components(s_top.carrier().clone(), components)
}

/// A failing inclusion square.
#[derive(Debug, Clone)]
pub struct InclusionWitness {
    pub a: AlternativeSet,
    pub b: AlternativeSet,
    pub p: Profile,
    /// Component over A applied to the restricted profile; `None` when the
    /// restricted profile is missing from the sub-domain.
    pub lhs: Option<Relation>,
    /// Restriction of the component over B's outcome.
    pub rhs: Relation,
}

impl fmt::Display for InclusionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = match &self.lhs {
            Some(r) => r.to_string(),
            None => "missing".to_string(),
        };
        write!(
            f,
            "A={} B={} p={} lhs={} rhs={}",
            self.a.braces(),
            self.b.braces(),
            self.p,
            lhs,
            self.rhs
        )
    }
}

/// Naturality under inclusions: restricting then aggregating equals
/// aggregating then restricting, for every nested pair of subsets and
/// every admissible profile over the larger one.
pub fn check_naturality_inclusions(f: &SwfFamily) -> Option<InclusionWitness> {
    let n = f.carrier().len();
    for b_mask in 1u32..(1 << n) {
        let s_b = f.component(b_mask);
        for a_mask in 1..b_mask {
            if a_mask & b_mask != a_mask {
                continue;
            }
            let subset_a = f.carrier().subset(a_mask).expect("valid submask");
            let s_a = f.component(a_mask);
            for (i, p) in s_b.domain().profiles().iter().enumerate() {
                let restricted = p.restrict(&subset_a).expect("restriction to submask");
                let rhs = s_b.output(i).restrict(&subset_a).expect("restriction to submask");
                let lhs = s_a.apply(&restricted);
                if lhs != Some(&rhs) {
                    return Some(InclusionWitness {
                        a: subset_a,
                        b: s_b.carrier().clone(),
                        p: p.clone(),
                        lhs: lhs.cloned(),
                        rhs,
                    });
                }
            }
        }
    }
    None
}

/// A failing injection square.
#[derive(Debug, Clone)]
pub struct InjectionWitness {
    pub a: AlternativeSet,
    pub b: AlternativeSet,
    pub alpha: Injection,
    pub p: Profile,
    pub lhs: Relation,
    pub rhs: Relation,
}

impl fmt::Display for InjectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} B={} alpha={} p={} lhs={} rhs={}",
            self.a.braces(),
            self.b.braces(),
            self.alpha,
            self.p,
            self.lhs,
            self.rhs
        )
    }
}

/// Naturality under arbitrary injective relabelings, on linear ballots:
/// for every injection alpha between subsets and every linear profile p
/// over the target, pushing the ballot forward and aggregating must agree
/// with aggregating and pushing the outcome forward. Requires the top
/// component to satisfy |A| >= 3, UD, IIA and P.
pub fn check_naturality_injections(
    f: &SwfFamily,
) -> Result<Option<InjectionWitness>, NaturalityError> {
    let missing = f.top().failed_axioms(&[
        Axiom::CarrierSize,
        Axiom::UnrestrictedDomain,
        Axiom::Iia,
        Axiom::Pareto,
    ]);
    if !missing.is_empty() {
        return Err(NaturalityError::HypothesesNotMet { missing });
    }
    let n = f.carrier().len();
    for b_mask in 1u32..(1 << n) {
        let s_b = f.component(b_mask);
        let linear_indices = s_b.domain().linear_profile_indices();
        for a_mask in 1u32..(1 << n) {
            let subset_a = f.carrier().subset(a_mask)?;
            if subset_a.len() > s_b.carrier().len() {
                continue;
            }
            let s_a = f.component(a_mask);
            for alpha in Injection::all(&subset_a, s_b.carrier()) {
                for &i in &linear_indices {
                    let p = s_b.domain().profile(i);
                    let pushed = p.pushforward(&alpha)?;
                    let lhs = s_a.apply(&pushed).ok_or_else(|| {
                        NaturalityError::MissingProfile {
                            subset: subset_a.clone(),
                            profile: pushed.clone(),
                        }
                    })?;
                    let rhs = s_b.output(i).pushforward(&alpha)?;
                    if lhs != &rhs {
                        return Ok(Some(InjectionWitness {
                            a: subset_a,
                            b: s_b.carrier().clone(),
                            alpha,
                            p: p.clone(),
                            lhs: lhs.clone(),
                            rhs,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A failing diagonal square: a unanimous two-element ballot whose social
/// outcome is not the common ballot.
#[derive(Debug, Clone)]
pub struct CpWitness {
    pub subset: AlternativeSet,
    pub ballot: Relation,
    /// `None` when the unanimous profile is missing from the component
    /// domain.
    pub outcome: Option<Relation>,
}

impl fmt::Display for CpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = match &self.outcome {
            Some(r) => r.to_string(),
            None => "missing".to_string(),
        };
        write!(f, "A={} ballot={} outcome={}", self.subset.braces(), self.ballot, outcome)
    }
}

/// Diagonal preservation: on every two-element subset, the unanimous
/// profile on a strict ballot maps to that ballot.
pub fn check_cp(f: &SwfFamily) -> Option<CpWitness> {
    let n = f.carrier().len();
    let m = f.top().voters().count();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() != 2 {
            continue;
        }
        let subset = f.carrier().subset(mask).expect("valid submask");
        let s = f.component(mask);
        for r in enumerate_linear_orders(&subset).expect("two-element carrier") {
            let unanimous =
                Profile::new(vec![r.clone(); m]).expect("linear ballots are weak orders");
            match s.apply(&unanimous) {
                Some(out) if out == &r => {}
                Some(out) => {
                    return Some(CpWitness {
                        subset,
                        ballot: r,
                        outcome: Some(out.clone()),
                    })
                }
                None => return Some(CpWitness { subset, ballot: r, outcome: None }),
            }
        }
    }
    None
}

/// Does diagonal preservation of the extended family coincide with Pareto
/// of every component? Builds the restriction-image family of the
/// function's own domain; extension failures (IIA or lift problems)
/// propagate as errors.
pub fn check_cp_equiv_p(s_top: &Swf) -> Result<bool, NaturalityError> {
    let family = DomainFamily::from_top(s_top.domain())?;
    let extended = extend_from_top(s_top, &family)?;
    let cp = check_cp(&extended).is_none();
    let n = s_top.carrier().len();
    let pareto_all = (1u32..(1 << n))
        .all(|mask| extended.component(mask).check_pareto().is_none());
    Ok(cp == pareto_all)
}

/// A family of component maps t_j : {0..j-1}^k -> {0..j-1} for every set
/// size j up to a bound, tested for naturality against all functions
/// between the canonical sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatCandidate {
    arity: usize,
    /// components[j-1] has j^k entries; tuples are encoded big-endian
    /// (first argument most significant).
    components: Vec<Vec<u8>>,
}

impl NatCandidate {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_size(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, size: usize) -> &[u8] {
        &self.components[size - 1]
    }

    /// Apply the size-j component to a k-tuple.
    pub fn eval(&self, size: usize, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        self.components[size - 1][tuple_index(size, tuple)] as usize
    }

    /// The coordinate this transformation projects onto, when it is a
    /// projection on every set.
    pub fn as_projection(&self) -> Option<usize> {
        (0..self.arity).find(|&i| {
            (1..=self.max_size()).all(|j| {
                all_tuples(j, self.arity)
                    .iter()
                    .all(|tuple| self.eval(j, tuple) == tuple[i])
            })
        })
    }
}

fn tuple_index(size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * size + x)
}

fn all_tuples(size: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(size.pow(arity as u32));
    let mut tuple = vec![0usize; arity];
    loop {
        out.push(tuple.clone());
        let mut k = arity;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < size {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// All functions from {0..from-1} to {0..to-1}, lexicographically.
fn all_functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    all_tuples(to, from)
}

/// All injective functions from {0..from-1} to {0..to-1}.
fn injective_functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    all_functions(from, to)
        .into_iter()
        .filter(|f| (0..f.len()).all(|i| !f[..i].contains(&f[i])))
        .collect()
}

/// Does every naturality square among sets of size <= bound commute?
fn natural_within(arity: usize, bound: usize, components: &[Vec<u8>]) -> bool {
    for from in 1..=bound {
        for to in 1..=bound {
            for f in all_functions(from, to) {
                for tuple in all_tuples(from, arity) {
                    let mapped: Vec<usize> = tuple.iter().map(|&x| f[x]).collect();
                    let lhs = components[to - 1][tuple_index(to, &mapped)] as usize;
                    let rhs = f[components[from - 1][tuple_index(from, &tuple)] as usize];
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Tables for the size-j component consistent with the smaller components
/// under injections (forced entries), with every free entry enumerated.
fn consistent_tables(arity: usize, size: usize, smaller: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let len = size.pow(arity as u32);
    let mut forced: Vec<Option<u8>> = vec![None; len];
    for from in 1..size {
        for inj in injective_functions(from, size) {
            for tuple in all_tuples(from, arity) {
                let mapped: Vec<usize> = tuple.iter().map(|&x| inj[x]).collect();
                let value = inj[smaller[from - 1][tuple_index(from, &tuple)] as usize] as u8;
                let slot = &mut forced[tuple_index(size, &mapped)];
                match slot {
                    None => *slot = Some(value),
                    Some(prev) if *prev != value => return Vec::new(),
                    _ => {}
                }
            }
        }
    }
    let free: Vec<usize> =
        (0..len).filter(|&i| forced[i].is_none()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u8; free.len()];
    loop {
        let mut table: Vec<u8> = forced.iter().map(|o| o.unwrap_or(0)).collect();
        for (slot, &value) in free.iter().zip(&choice) {
            table[*slot] = value;
        }
        out.push(table);
        let mut k = free.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if (choice[k] as usize) < size {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Enumerate every natural transformation X^arity -> X over all functions
/// between the canonical sets of size 1..=max_size. Survivors are built
/// level by level: entries forced by injections from smaller sets are
/// propagated, the handful of genuinely free entries are enumerated, and
/// every square is re-verified. Exactly the projections survive.
pub fn enumerate_natural_transformations(
    arity: usize,
    max_size: usize,
) -> Result<Vec<NatCandidate>, NaturalityError> {
    if arity == 0 || arity > MAX_NAT_ARITY {
        return Err(NaturalityError::ArityOutOfRange(arity));
    }
    if max_size == 0 || max_size > MAX_NAT_SIZE {
        return Err(NaturalityError::SizeOutOfRange(max_size));
    }
    let mut partials: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    for size in 1..=max_size {
        let mut next = Vec::new();
        for partial in &partials {
            for table in consistent_tables(arity, size, partial) {
                let mut candidate = partial.clone();
                candidate.push(table);
                if natural_within(arity, size, &candidate) {
                    next.push(candidate);
                }
            }
        }
        partials = next;
    }
    Ok(partials.into_iter().map(|components| NatCandidate { arity, components }).collect())
}
