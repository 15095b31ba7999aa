//! Boolean-algebra factorization of social welfare functions.
//!
//! Coalition families over m voters correspond bijectively to functions
//! from the powerset of voters to {0,1} (truth tables indexed by coalition
//! bitmask). A family is an ultrafilter exactly when its characteristic
//! function is a boolean algebra homomorphism, and over finitely many
//! voters the only homomorphisms are the projections. The commuting-square
//! check ties it together: encoding ballots by `psi` (who strictly prefers
//! what) and outcomes by `phi` (strict preference bits), a welfare
//! function satisfying the standing axioms factors through the single
//! boolean function induced by its decisive family.

use std::fmt;

use thiserror::Error;

use crate::decisive::{decisive_family, CoalitionFamily};
use crate::orders::{AlternativeSet, OrderError, Relation};
use crate::profiles::{Coalition, Profile, ProfileError, VoterSet};
use crate::swf::{Axiom, Swf};

/// Brute-force homomorphism enumeration walks all 2^(2^m) tables.
pub const MAX_BRUTE_FORCE_VOTERS: usize = 3;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("hypotheses not met: {}", .missing.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))]
    HypothesesNotMet { missing: Vec<Axiom> },
    #[error("relation is not a weak order")]
    NotWeakOrder,
    #[error("{m} voters out of range 1..={max} for homomorphism enumeration")]
    TooManyVoters { m: usize, max: usize },
}

/// A function from coalitions to {0,1}: bit U of the table is the value
/// on the coalition with bitmask U.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoolFn {
    voters: VoterSet,
    table: u64,
}

impl BoolFn {
    pub fn new(voters: VoterSet, table: u64) -> Self {
        let size = 1u32 << voters.count();
        if size < 64 {
            assert!(table >> size == 0, "table out of range for {} voters", voters.count());
        }
        BoolFn { voters, table }
    }

    /// The projection onto voter `i`: value 1 exactly on coalitions
    /// containing `i`.
    pub fn projection(voters: VoterSet, i: usize) -> Self {
        let mut table = 0u64;
        for u in 0..(1u64 << voters.count()) {
            if u >> i & 1 == 1 {
                table |= 1 << u;
            }
        }
        BoolFn { voters, table }
    }

    pub fn voters(&self) -> VoterSet {
        self.voters
    }

    pub fn table(&self) -> u64 {
        self.table
    }

    pub fn eval(&self, c: Coalition) -> bool {
        self.table >> c.mask() & 1 == 1
    }

    /// If this function is a projection, onto which voter?
    pub fn as_projection(&self) -> Option<usize> {
        (0..self.voters.count()).find(|&i| *self == BoolFn::projection(self.voters, i))
    }

    /// Bit-exact hex rendering of the truth table (natural binary order,
    /// one digit per four coalitions).
    pub fn hex(&self) -> String {
        let bits = 1usize << self.voters.count();
        let width = bits.div_ceil(4);
        format!("0x{:0width$x}", self.table, width = width)
    }
}

impl fmt::Display for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hex())
    }
}

/// Characteristic function of a coalition family. Mutually inverse with
/// [`boolfn_to_family`].
pub fn family_to_boolfn(fam: &CoalitionFamily) -> BoolFn {
    BoolFn::new(fam.voters(), fam.mask())
}

pub fn boolfn_to_family(h: &BoolFn) -> CoalitionFamily {
    CoalitionFamily::from_mask(h.voters(), h.table())
}

/// The boolean-algebra laws a homomorphism into {0,1} must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolLaw {
    /// h(everyone) = 1
    Top,
    /// h(empty) = 0
    Bottom,
    /// h(U and V) = h(U) and h(V)
    Meet,
    /// h(U or V) = h(U) or h(V)
    Join,
    /// h(complement U) = not h(U)
    Complement,
}

impl fmt::Display for BoolLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolLaw::Top => write!(f, "top"),
            BoolLaw::Bottom => write!(f, "bottom"),
            BoolLaw::Meet => write!(f, "meet"),
            BoolLaw::Join => write!(f, "join"),
            BoolLaw::Complement => write!(f, "complement"),
        }
    }
}

/// A failing law instance.
#[derive(Debug, Clone)]
pub struct HomWitness {
    pub law: BoolLaw,
    pub u: Coalition,
    pub v: Option<Coalition>,
}

impl fmt::Display for HomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.v {
            Some(v) => write!(f, "{} law fails at {}&{}", self.law, self.u, v),
            None => write!(f, "{} law fails at {}", self.law, self.u),
        }
    }
}

/// Check the homomorphism laws; `None` means every law holds.
pub fn is_bool_homomorphism(h: &BoolFn) -> Option<HomWitness> {
    let voters = h.voters();
    let everyone = Coalition::full(voters);
    if !h.eval(everyone) {
        return Some(HomWitness { law: BoolLaw::Top, u: everyone, v: None });
    }
    if h.eval(Coalition::empty()) {
        return Some(HomWitness { law: BoolLaw::Bottom, u: Coalition::empty(), v: None });
    }
    for u in Coalition::all(voters) {
        for v in Coalition::all(voters) {
            if h.eval(u.intersect(v)) != (h.eval(u) && h.eval(v)) {
                return Some(HomWitness { law: BoolLaw::Meet, u, v: Some(v) });
            }
        }
    }
    for u in Coalition::all(voters) {
        for v in Coalition::all(voters) {
            if h.eval(u.union(v)) != (h.eval(u) || h.eval(v)) {
                return Some(HomWitness { law: BoolLaw::Join, u, v: Some(v) });
            }
        }
    }
    for u in Coalition::all(voters) {
        if h.eval(u.complement(voters)) != !h.eval(u) {
            return Some(HomWitness { law: BoolLaw::Complement, u, v: None });
        }
    }
    None
}

/// All boolean algebra homomorphisms 2^m -> 2. For m <= 3 this is a brute
/// force over every truth table; for m = 4 the projection characterization
/// stands in (the brute force would walk 2^16 tables of 16 bits — still
/// feasible, but the enumeration is only ever cross-checked at m <= 3).
pub fn enumerate_homomorphisms(m: usize) -> Result<Vec<BoolFn>, FactorError> {
    if m == 0 || m > 4 {
        return Err(FactorError::TooManyVoters { m, max: 4 });
    }
    let voters = VoterSet::new(m)?;
    if m <= MAX_BRUTE_FORCE_VOTERS {
        let size = 1u32 << m;
        let mut out = Vec::new();
        for table in 0..(1u64 << size) {
            let h = BoolFn::new(voters, table);
            if is_bool_homomorphism(&h).is_none() {
                out.push(h);
            }
        }
        Ok(out)
    } else {
        let out: Vec<BoolFn> = (0..m).map(|i| BoolFn::projection(voters, i)).collect();
        debug_assert!(out.iter().all(|h| is_bool_homomorphism(h).is_none()));
        Ok(out)
    }
}

/// A bit per ordered pair of alternatives (diagonal always 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBits {
    carrier: AlternativeSet,
    bits: u64,
}

impl PairBits {
    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn bit(&self, a: usize, b: usize) -> bool {
        self.bits >> (a * self.carrier.len() + b) & 1 == 1
    }
}

/// Strict-preference encoding of a weak order: bit (a,b) set iff a is
/// strictly above b.
pub fn phi(r: &Relation) -> Result<PairBits, FactorError> {
    if !r.is_weak_order() {
        return Err(FactorError::NotWeakOrder);
    }
    let strict = r.strict_part();
    let n = r.carrier().len();
    let mut bits = 0u64;
    for a in 0..n {
        for b in 0..n {
            if strict.contains(a, b) {
                bits |= 1 << (a * n + b);
            }
        }
    }
    Ok(PairBits { carrier: r.carrier().clone(), bits })
}

/// A coalition per ordered pair of alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMasks {
    carrier: AlternativeSet,
    masks: Vec<Coalition>,
}

impl PairMasks {
    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn get(&self, a: usize, b: usize) -> Coalition {
        self.masks[a * self.carrier.len() + b]
    }
}

/// Ballot encoding: the coalition of voters strictly preferring a to b,
/// per ordered pair.
pub fn psi(p: &Profile) -> PairMasks {
    let n = p.carrier().len();
    let mut masks = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            masks.push(if a == b { Coalition::empty() } else { p.strict_mask(a, b) });
        }
    }
    PairMasks { carrier: p.carrier().clone(), masks }
}

/// A failing square instance: a subset, a linear profile over it, and the
/// ordered pair where the two routes disagree.
#[derive(Debug, Clone)]
pub struct SquareWitness {
    pub subset: AlternativeSet,
    pub profile: Profile,
    pub a: usize,
    pub b: usize,
    /// phi applied to the restricted social outcome.
    pub lhs: bool,
    /// h applied to the psi encoding of the ballot.
    pub rhs: bool,
}

impl fmt::Display for SquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} p={} pair=({},{}) lhs={} rhs={}",
            self.subset.braces(),
            self.profile,
            self.subset.label(self.a),
            self.subset.label(self.b),
            self.lhs as u8,
            self.rhs as u8
        )
    }
}

/// Everything the factorization of one welfare function yields.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    /// Characteristic function of the decisive family.
    pub h: BoolFn,
    /// `None` when `h` satisfies every homomorphism law.
    pub homomorphism: Option<HomWitness>,
    /// The voter `h` projects onto, when it is a projection.
    pub projection: Option<usize>,
    /// `None` when the square commutes on every subset and linear ballot.
    pub square: Option<SquareWitness>,
}

impl FactorizationReport {
    pub fn ok(&self) -> bool {
        self.homomorphism.is_none() && self.projection.is_some() && self.square.is_none()
    }
}

/// Factor a welfare function through the boolean function of its decisive
/// family and check the commuting square on every subset of the carrier
/// and every linear ballot over it: the strict social preference bits must
/// equal `h` applied pointwise to the voter-support coalitions.
pub fn check_factorization(s: &Swf) -> Result<FactorizationReport, FactorError> {
    let missing = s.failed_axioms(&[
        Axiom::CarrierSize,
        Axiom::UnrestrictedDomain,
        Axiom::Iia,
        Axiom::Pareto,
    ]);
    if !missing.is_empty() {
        return Err(FactorError::HypothesesNotMet { missing });
    }
    let fam = decisive_family(s);
    let h = family_to_boolfn(&fam);
    let homomorphism = is_bool_homomorphism(&h);
    let projection = h.as_projection();
    let square = square_witness(s, &h)?;
    Ok(FactorizationReport { h, homomorphism, projection, square })
}

fn square_witness(s: &Swf, h: &BoolFn) -> Result<Option<SquareWitness>, FactorError> {
    let n = s.carrier().len();
    for mask in 1u32..(1 << n) {
        let subset = s.carrier().subset(mask)?;
        // sigma_A via lifts: IIA was checked eagerly, so the first lift of
        // each restricted profile determines the component.
        let mut seen: Vec<(Profile, Relation)> = Vec::new();
        for (i, q) in s.domain().profiles().iter().enumerate() {
            let p = q.restrict(&subset)?;
            if !p.is_linear() {
                continue;
            }
            if seen.iter().any(|(first, _)| first == &p) {
                continue;
            }
            let out = s.output(i).restrict(&subset)?;
            seen.push((p, out));
        }
        for (p, out) in &seen {
            let masks = psi(p);
            let strict = out.strict_part();
            let k = subset.len();
            for a in 0..k {
                for b in 0..k {
                    let lhs = strict.contains(a, b);
                    let rhs = h.eval(masks.get(a, b));
                    if lhs != rhs {
                        return Ok(Some(SquareWitness {
                            subset,
                            profile: p.clone(),
                            a,
                            b,
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decisive::check_ultrafilter;
    use crate::orders::enumerate_linear_orders;
    use crate::profiles::Domain;
    use std::sync::Arc;

    fn abc() -> AlternativeSet {
        AlternativeSet::canonical(3)
    }

    fn weak_domain(m: usize) -> Arc<Domain> {
        Arc::new(Domain::full_weak(&abc(), VoterSet::new(m).unwrap()).unwrap())
    }

    fn linear_domain(m: usize) -> Arc<Domain> {
        Arc::new(Domain::full_linear(&abc(), VoterSet::new(m).unwrap()).unwrap())
    }

    #[test]
    fn family_boolfn_bijection() {
        let voters = VoterSet::new(2).unwrap();
        // the family containing only the empty coalition
        let fam = CoalitionFamily::from_members(voters, &[Coalition::empty()]);
        assert_eq!(family_to_boolfn(&fam).table(), 1);

        for mask in 0u64..16 {
            let fam = CoalitionFamily::from_mask(voters, mask);
            assert_eq!(boolfn_to_family(&family_to_boolfn(&fam)), fam);
        }
        for table in 0u64..16 {
            let h = BoolFn::new(voters, table);
            assert_eq!(family_to_boolfn(&boolfn_to_family(&h)), h);
        }

        let three = VoterSet::new(3).unwrap();
        let principal: Vec<Coalition> =
            Coalition::all(three).filter(|u| u.contains(1)).collect();
        let fam = CoalitionFamily::from_members(three, &principal);
        let h = family_to_boolfn(&fam);
        for u in Coalition::all(three) {
            assert_eq!(h.eval(u), u.contains(1));
        }
        assert_eq!(h, BoolFn::projection(three, 1));
    }

    #[test]
    fn projections_are_homomorphisms() {
        for m in 1..=4 {
            let voters = VoterSet::new(m).unwrap();
            for i in 0..m {
                assert!(is_bool_homomorphism(&BoolFn::projection(voters, i)).is_none());
            }
        }
    }

    #[test]
    fn constant_one_fails_bottom() {
        let voters = VoterSet::new(2).unwrap();
        let h = BoolFn::new(voters, 0b1111);
        let w = is_bool_homomorphism(&h).unwrap();
        assert_eq!(w.law, BoolLaw::Bottom);
    }

    #[test]
    fn majority_fails_meet_law() {
        let voters = VoterSet::new(3). unwrap();
        let mut table = 0u64;
        for u in 0..8u64 {
            if (u as u32).count_ones() >= 2 {
                table |= 1 << u;
            }
        }
        let h = BoolFn::new(voters, table);
        let w = is_bool_homomorphism(&h).expect("majority is not a homomorphism");
        assert_eq!(w.law, BoolLaw::Meet);
        let v = w.v.unwrap();
        assert!(h.eval(w.u) && h.eval(v) && !h.eval(w.u.intersect(v)));
    }

    #[test]
    fn homomorphism_enumeration_counts() {
        for m in 1..=3usize {
            let homs = enumerate_homomorphisms(m).unwrap();
            assert_eq!(homs.len(), m);
            let mut seen: Vec<usize> =
                homs.iter().map(|h| h.as_projection().expect("every homomorphism projects")).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..m).collect::<Vec<_>>());
        }
        assert_eq!(enumerate_homomorphisms(4).unwrap().len(), 4);
        assert!(enumerate_homomorphisms(5).is_err());
    }

    #[test]
    fn ultrafilter_iff_homomorphism_exhaustively() {
        for m in 2..=3usize {
            let voters = VoterSet::new(m).unwrap();
            for mask in 0u64..(1 << (1 << m)) {
                let fam = CoalitionFamily::from_mask(voters, mask);
                let ultra = check_ultrafilter(&fam).all_pass();
                let hom = is_bool_homomorphism(&family_to_boolfn(&fam)).is_none();
                assert_eq!(ultra, hom, "family mask {mask:#x} at m={m}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let carrier = abc();
        let chain = Relation::chain(&carrier);
        let bits = phi(&chain).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(bits.bit(a, b), a < b);
            }
        }
        let indifferent = phi(&Relation::full(&carrier)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(!indifferent.bit(a, b));
            }
        }
        assert!(phi(&Relation::empty(&carrier)).is_err());
    }

    #[test]
    fn phi_is_injective_on_linear_orders() {
        let carrier = abc();
        let mut images = Vec::new();
        for r in enumerate_linear_orders(&carrier).unwrap() {
            images.push(phi(&r).unwrap());
        }
        assert_eq!(images.len(), 6);
        for i in 0..images.len() {
            for j in 0..i {
                assert_ne!(images[i], images[j]);
            }
        }
    }

    #[test]
    fn phi_never_sets_both_directions() {
        let carrier = abc();
        for r in crate::orders::enumerate_weak_orders(&carrier).unwrap() {
            let bits = phi(&r).unwrap();
            for a in 0..3 {
                for b in 0..3 {
                    assert!(!(bits.bit(a, b) && bits.bit(b, a)));
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let carrier = abc();
        let unanimous = Profile::parse(&carrier, "a>b>c ; a>b>c").unwrap();
        let masks = psi(&unanimous);
        let both = Coalition::from_members(&[0, 1]);
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            assert_eq!(masks.get(a, b), both);
            assert_eq!(masks.get(b, a), Coalition::empty());
        }
        let ab = AlternativeSet::canonical(2);
        let opposed = Profile::parse(&ab, "a>b ; b>a").unwrap();
        let masks = psi(&opposed);
        assert_eq!(masks.get(0, 1), Coalition::singleton(0));
        assert_eq!(masks.get(1, 0), Coalition::singleton(1));
    }

    #[test]
    fn psi_commutes_with_restriction() {
        let d = linear_domain(2);
        let ab = abc().subset(0b011).unwrap();
        for p in d.profiles() {
            let full = psi(p);
            let restricted = psi(&p.restrict(&ab).unwrap());
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(restricted.get(a, b), full.get(a, b));
                }
            }
        }
    }

    #[test]
    fn factorization_of_dictatorships() {
        let s = Swf::dictatorship(weak_domain(2), 0).unwrap();
        let report = check_factorization(&s).unwrap();
        assert!(report.homomorphism.is_none());
        assert_eq!(report.projection, Some(0));
        assert!(report.square.is_none());
        assert!(report.ok());

        let s = Swf::dictatorship(linear_domain(3), 1).unwrap();
        let report = check_factorization(&s).unwrap();
        assert_eq!(report.projection, Some(1));
        assert!(report.square.is_none());
    }

    #[test]
    fn factorization_requires_the_axioms() {
        let borda = Swf::borda(weak_domain(2)).unwrap();
        assert!(matches!(
            check_factorization(&borda),
            Err(FactorError::HypothesesNotMet { .. })
        ));
    }

    #[test]
    fn factorization_pins_down_the_projection_on_linear_ballots() {
        // Once the square commutes and h projects onto voter i, the
        // function must agree with the dictatorship of i on linear
        // profiles.
        let dw = weak_domain(2);
        for i in 0..2 {
            let s = Swf::dictatorship(dw.clone(), i).unwrap();
            let report = check_factorization(&s).unwrap();
            assert_eq!(report.projection, Some(i));
            let dl = linear_domain(2);
            let proj = Swf::dictatorship(dl.clone(), i).unwrap();
            for (k, p) in dl.profiles().iter().enumerate() {
                assert_eq!(s.apply(p).unwrap(), proj.output(k));
            }
        }
    }

    #[test]
    fn hex_rendering() {
        let voters = VoterSet::new(2).unwrap();
        assert_eq!(BoolFn::projection(voters, 0).hex(), "0xa");
        let three = VoterSet::new(3).unwrap();
        assert_eq!(BoolFn::projection(three, 0).hex(), "0xaa");
        assert_eq!(BoolFn::new(three, 0).hex(), "0x00");
    }
}
