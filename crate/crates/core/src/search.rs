//! Exhaustive search over IIA welfare functions on full linear (and,
//! behind a flag, full weak) domains at small sizes.
//!
//! A candidate is one boolean table per unordered pair of alternatives:
//! entry u of the pair {x,y} says whether x lands strictly above y when
//! exactly the voters in u prefer x to y. Candidates survive when they
//! honor Pareto on the pinned unanimous entries and assemble to a
//! transitive outcome on every profile. The verification pipeline then
//! runs every downstream check on each survivor: dictator extraction,
//! decisive family, ultrafilter axioms, boolean factorization.
//!
//! The linear search at m <= 3 walks the candidate space directly with
//! per-profile bitsets; the weak search and the m = 4 linear search run a
//! small all-solutions constraint solver over the table entries instead
//! (the flat spaces there are 3^27 and 2^48).

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::decisive::{
    check_linear_strictness, check_local_neutrality, check_monotonicity, check_ultrafilter,
    decisive_family, CoalitionFamily, DecisiveError, UltrafilterReport,
};
use crate::factorization::{check_factorization, family_to_boolfn, BoolFn, FactorError};
use crate::orders::{AlternativeSet, OrderError, Relation};
use crate::profiles::{Domain, DomainKind, ProfileError, VoterSet};
use crate::swf::{from_pairwise, unordered_pairs, PairOutcome, PairwiseTables, Swf, SwfError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("infeasible configuration: {alternatives} alternatives, {voters} voters, {kind} domain ({reason})")]
    Infeasible { alternatives: usize, voters: usize, kind: DomainKind, reason: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Swf(#[from] SwfError),
    #[error(transparent)]
    Decisive(#[from] DecisiveError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

/// What to search and how wide to run.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub alternatives: usize,
    pub voters: usize,
    pub kind: DomainKind,
    /// Worker threads for the flat scan; 0 means one per logical cpu.
    /// Survivor lists and reports are identical for every width.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn linear(alternatives: usize, voters: usize) -> Self {
        SearchConfig { alternatives, voters, kind: DomainKind::FullLinear, jobs: 1 }
    }

    pub fn weak(alternatives: usize, voters: usize) -> Self {
        SearchConfig { alternatives, voters, kind: DomainKind::FullWeak, jobs: 1 }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        let fail = |reason: &str| {
            Err(SearchError::Infeasible {
                alternatives: self.alternatives,
                voters: self.voters,
                kind: self.kind,
                reason: reason.to_string(),
            })
        };
        match self.kind {
            DomainKind::FullLinear => match (self.alternatives, self.voters) {
                (2 | 3, 1..=4) => Ok(()),
                (2 | 3, _) => fail("voter count must be between 1 and 4"),
                _ => fail("the linear search supports 2 or 3 alternatives"),
            },
            DomainKind::FullWeak => match (self.alternatives, self.voters) {
                (3, 2) => Ok(()),
                _ => fail("the weak-domain search supports exactly 3 alternatives and 2 voters"),
            },
            DomainKind::Explicit => fail("search domains are full linear or full weak"),
        }
    }

    /// Size of the candidate space: one table per pair, one entry per
    /// restricted ballot combination.
    pub fn candidate_count(&self) -> u64 {
        let pairs = self.alternatives * (self.alternatives - 1) / 2;
        let per_pair: u64 = match self.kind {
            DomainKind::FullLinear => 1u64 << (1u64 << self.voters),
            _ => 3u64.pow(3u32.pow(self.voters as u32)),
        };
        per_pair.pow(pairs as u32)
    }
}

/// Enumerate every welfare function on the configured full domain that is
/// IIA by construction, satisfies Pareto, and produces a weak order on
/// every profile. Survivors come back as explicit tables in a canonical
/// order independent of the engine and parallelism width.
pub fn enumerate_arrow_swfs(cfg: &SearchConfig) -> Result<Vec<Swf>, SearchError> {
    cfg.validate()?;
    let carrier = AlternativeSet::canonical(cfg.alternatives);
    let voters = VoterSet::new(cfg.voters)?;
    let domain = Arc::new(match cfg.kind {
        DomainKind::FullLinear => Domain::full_linear(&carrier, voters)?,
        _ => Domain::full_weak(&carrier, voters)?,
    });
    let tables = match (cfg.kind, cfg.alternatives, cfg.voters) {
        (DomainKind::FullLinear, _, 1..=3) => search_linear_flat(cfg, &domain),
        (DomainKind::FullLinear, _, _) => search_with_solver(cfg, &domain),
        _ => search_with_solver(cfg, &domain),
    };
    let mut survivors = Vec::with_capacity(tables.len());
    for digits in tables {
        let t = PairwiseTables::from_fn(&carrier, voters, cfg.kind, |pair, code| {
            PairOutcome::from_digit(digits[pair][code as usize] as u32)
        })?;
        // The assembler independently re-validates transitivity; the scan
        // and the assembler must agree.
        let swf = from_pairwise(&t, domain.clone())
            .expect("survivor tables assemble to weak orders");
        survivors.push(swf);
    }
    survivors.sort_by(|a, b| {
        let ka: Vec<u64> = a.outputs().iter().map(Relation::lex_key).collect();
        let kb: Vec<u64> = b.outputs().iter().map(Relation::lex_key).collect();
        ka.cmp(&kb)
    });
    Ok(survivors)
}

/// Flat enumeration for linear domains: per-pair Pareto-valid tables with
/// per-table profile bitsets, and a cycle test over bitset words.
/// Candidate order is ascending over the table triple, so the survivor
/// list is deterministic; the outer loop parallelizes cleanly.
fn search_linear_flat(cfg: &SearchConfig, domain: &Arc<Domain>) -> Vec<Vec<Vec<u8>>> {
    let n = cfg.alternatives;
    let m = cfg.voters;
    let pairs = unordered_pairs(n);
    let entries = 1usize << m;
    let words = domain.len().div_ceil(64);

    // bitset of profiles per pair per support mask
    let mut profile_sets: Vec<Vec<Vec<u64>>> =
        vec![vec![vec![0u64; words]; entries]; pairs.len()];
    for (i, p) in domain.profiles().iter().enumerate() {
        for (k, &(x, y)) in pairs.iter().enumerate() {
            let u = p.strict_mask(x, y).mask() as usize;
            profile_sets[k][u][i / 64] |= 1 << (i % 64);
        }
    }

    // Pareto pins: unanimous support wins, unanimous opposition loses.
    let full_mask = entries - 1;
    let valid_tables: Vec<u32> = (0..(1u32 << entries))
        .filter(|t| t >> full_mask & 1 == 1 && t & 1 == 0)
        .collect();

    // profile set where the pair outcome is "above", per valid table
    let union_for = |k: usize, t: u32| -> Vec<u64> {
        let mut s = vec![0u64; words];
        for (u, set) in profile_sets[k].iter().enumerate() {
            if t >> u & 1 == 1 {
                for (w, bits) in s.iter_mut().zip(set) {
                    *w |= bits;
                }
            }
        }
        s
    };

    let to_digits = |t: u32| -> Vec<u8> {
        (0..entries).map(|u| (t >> u & 1) as u8).collect()
    };

    if pairs.len() == 1 {
        // two alternatives: no transitivity constraint, Pareto decides
        return valid_tables.iter().map(|&t| vec![to_digits(t)]).collect();
    }
    debug_assert_eq!(pairs.len(), 3);

    let sets: Vec<Vec<(u32, Vec<u64>)>> = (0..3)
        .map(|k| valid_tables.iter().map(|&t| (t, union_for(k, t))).collect())
        .collect();

    let scan_ab = |&(t_ab, ref s_ab): &(u32, Vec<u64>)| -> Vec<Vec<Vec<u8>>> {
        let mut found = Vec::new();
        for (t_ac, s_ac) in &sets[1] {
            // profiles whose (ab, ac) outcomes forbid one bc direction:
            // a>b with c>a forbids b>c; b>a with a>c forbids c>b.
            let force0: Vec<u64> =
                s_ab.iter().zip(s_ac).map(|(ab, ac)| ab & !ac).collect();
            let force1: Vec<u64> =
                s_ab.iter().zip(s_ac).map(|(ab, ac)| !ab & ac).collect();
            for (t_bc, s_bc) in &sets[2] {
                let cyclic = s_bc
                    .iter()
                    .zip(&force0)
                    .zip(&force1)
                    .any(|((bc, f0), f1)| bc & f0 != 0 || !bc & f1 != 0);
                if !cyclic {
                    found.push(vec![to_digits(t_ab), to_digits(*t_ac), to_digits(*t_bc)]);
                }
            }
        }
        found
    };

    if cfg.jobs == 1 {
        sets[0].iter().flat_map(|e| scan_ab(e)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            sets[0]
                .par_iter()
                .map(scan_ab)
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        })
    }
}

/// All-solutions constraint search over the table entries themselves: one
/// variable per (pair, restricted-ballot code), one ternary constraint per
/// profile demanding the assembled outcome be a weak order. Used where the
/// flat space is out of reach.
fn search_with_solver(cfg: &SearchConfig, domain: &Arc<Domain>) -> Vec<Vec<Vec<u8>>> {
    let n = cfg.alternatives;
    let m = cfg.voters;
    debug_assert_eq!(n, 3);
    let pairs = unordered_pairs(n);
    let (alphabet, base): (usize, usize) = match cfg.kind {
        DomainKind::FullLinear => (2, 2),
        _ => (3, 3),
    };
    let entries = base.pow(m as u32);
    let num_vars = pairs.len() * entries;

    // allowed outcome triples (o_ab, o_ac, o_bc): assemble and test
    let carrier = domain.carrier();
    let mut allowed = vec![false; alphabet * alphabet * alphabet];
    let mut allowed_count = 0;
    for o_ab in 0..alphabet {
        for o_ac in 0..alphabet {
            for o_bc in 0..alphabet {
                let rel = assemble_outcome(carrier, &[o_ab as u8, o_ac as u8, o_bc as u8]);
                if rel.is_weak_order() {
                    allowed[(o_ab * alphabet + o_ac) * alphabet + o_bc] = true;
                    allowed_count += 1;
                }
            }
        }
    }
    debug_assert_eq!(allowed_count, if alphabet == 2 { 6 } else { 13 });

    let mut constraints = Vec::with_capacity(domain.len());
    for p in domain.profiles() {
        let mut vars = [0usize; 3];
        for (k, &(x, y)) in pairs.iter().enumerate() {
            let code = crate::swf::pair_code(p, x, y, cfg.kind)
                .expect("full domains cover every pair code");
            vars[k] = k * entries + code as usize;
        }
        constraints.push(vars);
    }

    // Pareto pins: unanimous support (all digits 1) and unanimous
    // opposition (all digits 0).
    let unanimous_code: usize = match cfg.kind {
        DomainKind::FullLinear => entries - 1,
        _ => (0..m).map(|i| 3usize.pow(i as u32)).sum(),
    };
    let mut init = vec![(1u8 << alphabet) - 1; num_vars];
    for k in 0..pairs.len() {
        init[k * entries + unanimous_code] = 1 << 1;
        init[k * entries] = 1 << 0;
    }

    let csp = Csp::new(alphabet, num_vars, constraints, allowed);
    csp.solve_all(init)
        .into_iter()
        .map(|solution| {
            (0..pairs.len())
                .map(|k| solution[k * entries..(k + 1) * entries].to_vec())
                .collect()
        })
        .collect()
}

/// Build the relation on a 3-element carrier from the three pair digits
/// (0 = second above first, 1 = first above second, 2 = tied).
fn assemble_outcome(carrier: &AlternativeSet, digits: &[u8; 3]) -> Relation {
    let pairs = unordered_pairs(3);
    Relation::from_fn(carrier, |a, b| {
        if a == b {
            return true;
        }
        let k = pairs
            .iter()
            .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
            .expect("pair exists");
        match digits[k] {
            2 => true,
            1 => a < b,
            _ => a > b,
        }
    })
}

/// A tiny all-solutions solver over ternary constraints with generalized
/// arc consistency. Domains are value bitmasks; search order is the fixed
/// variable order with ascending values, so the solution list is
/// deterministic.
struct Csp {
    alphabet: usize,
    constraints: Vec<[usize; 3]>,
    allowed: Vec<bool>,
    var_constraints: Vec<Vec<usize>>,
}

impl Csp {
    fn new(
        alphabet: usize,
        num_vars: usize,
        constraints: Vec<[usize; 3]>,
        allowed: Vec<bool>,
    ) -> Csp {
        let mut var_constraints = vec![Vec::new(); num_vars];
        for (ci, vars) in constraints.iter().enumerate() {
            for &v in vars {
                if !var_constraints[v].contains(&ci) {
                    var_constraints[v].push(ci);
                }
            }
        }
        Csp { alphabet, constraints, allowed, var_constraints }
    }

    fn allows(&self, o1: usize, o2: usize, o3: usize) -> bool {
        self.allowed[(o1 * self.alphabet + o2) * self.alphabet + o3]
    }

    /// Re-establish arc consistency starting from the given constraint
    /// queue; false on a wiped-out domain.
    fn propagate(&self, domains: &mut [u8], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; self.constraints.len()];
        for &c in &queue {
            queued[c] = true;
        }
        while let Some(ci) = queue.pop() {
            queued[ci] = false;
            let [v1, v2, v3] = self.constraints[ci];
            let (d1, d2, d3) = (domains[v1], domains[v2], domains[v3]);
            let mut s1 = 0u8;
            let mut s2 = 0u8;
            let mut s3 = 0u8;
            for o1 in 0..self.alphabet {
                if d1 >> o1 & 1 == 0 {
                    continue;
                }
                for o2 in 0..self.alphabet {
                    if d2 >> o2 & 1 == 0 {
                        continue;
                    }
                    for o3 in 0..self.alphabet {
                        if d3 >> o3 & 1 == 1 && self.allows(o1, o2, o3) {
                            s1 |= 1 << o1;
                            s2 |= 1 << o2;
                            s3 |= 1 << o3;
                        }
                    }
                }
            }
            for (v, s) in [(v1, s1), (v2, s2), (v3, s3)] {
                let narrowed = domains[v] & s;
                if narrowed == 0 {
                    return false;
                }
                if narrowed != domains[v] {
                    domains[v] = narrowed;
                    for &c in &self.var_constraints[v] {
                        if !queued[c] {
                            queued[c] = true;
                            queue.push(c);
                        }
                    }
                }
            }
        }
        true
    }

    fn solve_all(&self, mut init: Vec<u8>) -> Vec<Vec<u8>> {
        let mut solutions = Vec::new();
        if self.propagate(&mut init, (0..self.constraints.len()).collect()) {
            self.dfs(&init, &mut solutions);
        }
        solutions
    }

    fn dfs(&self, domains: &[u8], solutions: &mut Vec<Vec<u8>>) {
        match (0..domains.len()).find(|&v| domains[v].count_ones() > 1) {
            None => {
                solutions.push(domains.iter().map(|d| d.trailing_zeros() as u8).collect());
            }
            Some(v) => {
                for value in 0..self.alphabet {
                    if domains[v] >> value & 1 == 0 {
                        continue;
                    }
                    let mut next = domains.to_vec();
                    next[v] = 1 << value;
                    if self.propagate(&mut next, self.var_constraints[v].clone()) {
                        self.dfs(&next, solutions);
                    }
                }
            }
        }
    }
}

/// Everything the pipeline derives for one survivor.
#[derive(Debug, Clone)]
pub struct SurvivorReport {
    pub swf: Swf,
    pub dictator: Option<usize>,
    pub family: CoalitionFamily,
    pub ultrafilter: UltrafilterReport,
    pub h: BoolFn,
    pub projection: Option<usize>,
    /// `None` when the square is not applicable (two alternatives).
    pub square_ok: Option<bool>,
}

impl SurvivorReport {
    fn line(&self, index: usize) -> String {
        let dictator = match self.dictator {
            Some(i) => i.to_string(),
            None => "none".to_string(),
        };
        let ultra = if self.ultrafilter.all_pass() {
            match self.ultrafilter.generator {
                Some(g) => format!("principal generator={g}"),
                None => "principal generator=?".to_string(),
            }
        } else {
            let failing = self
                .ultrafilter
                .axioms
                .iter()
                .find(|a| !a.pass)
                .map(|a| a.name)
                .unwrap_or("?");
            format!("FAIL({failing})")
        };
        let projection = match self.projection {
            Some(i) => i.to_string(),
            None => "none".to_string(),
        };
        let square = match self.square_ok {
            Some(true) => "OK",
            Some(false) => "FAIL",
            None => "n/a",
        };
        format!(
            "survivor {index}: dictator={dictator} family={} ultrafilter={ultra} h={} projection={projection} square={square}",
            self.family, self.h
        )
    }
}

/// Search outcome plus per-survivor verification results. The display is
/// deterministic byte for byte; the wall-clock duration is carried
/// separately and never printed here.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub alternatives: usize,
    pub voters: usize,
    pub kind: DomainKind,
    pub candidates: u64,
    pub survivors: Vec<SurvivorReport>,
    pub duration: Duration,
}

impl SearchReport {
    pub fn valid(&self) -> usize {
        self.survivors.len()
    }

    /// Distinct dictator indices over the dictatorial survivors, in order
    /// of first appearance.
    pub fn dictators(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for s in &self.survivors {
            if let Some(d) = s.dictator {
                if !seen.contains(&d) {
                    seen.push(d);
                }
            }
        }
        seen
    }

    /// How many survivors have a dictator at all.
    pub fn dictatorial_count(&self) -> usize {
        self.survivors.iter().filter(|s| s.dictator.is_some()).count()
    }

    pub fn summary_line(&self) -> String {
        let dictators: Vec<String> =
            self.dictators().iter().map(usize::to_string).collect();
        format!(
            "candidates={} valid={} dictators=[{}]",
            self.candidates,
            self.valid(),
            dictators.join(",")
        )
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        for (i, s) in self.survivors.iter().enumerate() {
            writeln!(f, "{}", s.line(i))?;
        }
        Ok(())
    }
}

/// Run the search, then the full downstream pipeline on every survivor,
/// asserting what the impossibility theorem demands: with three or more
/// alternatives every survivor is dictatorial with a principal-ultrafilter
/// decisive family whose generator is the dictator and whose
/// characteristic function is the matching projection; on linear domains
/// the survivors are exactly the m dictatorships. With two alternatives
/// nothing is asserted beyond the per-survivor bookkeeping — that control
/// demonstrates the cardinality hypothesis is load-bearing.
pub fn verify_arrow(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let survivors = enumerate_arrow_swfs(cfg)?;
    let fail = |msg: String| Err(SearchError::AssertionFailed(msg));

    let mut reports = Vec::with_capacity(survivors.len());
    for (idx, swf) in survivors.iter().enumerate() {
        if let Some(w) = swf.check_iia() {
            return fail(format!("survivor {idx} violates IIA: {w}"));
        }
        if let Some(w) = swf.check_pareto() {
            return fail(format!("survivor {idx} violates Pareto: {w}"));
        }
        let dictator = swf.find_dictator();
        let family = decisive_family(swf);
        let ultrafilter = check_ultrafilter(&family);
        let h = family_to_boolfn(&family);
        let projection = h.as_projection();
        let square_ok = if cfg.alternatives >= 3 {
            Some(check_factorization(swf)?.square.is_none())
        } else {
            None
        };
        reports.push(SurvivorReport {
            swf: swf.clone(),
            dictator,
            family,
            ultrafilter,
            h,
            projection,
            square_ok,
        });
    }

    if cfg.alternatives >= 3 {
        for (idx, r) in reports.iter().enumerate() {
            let dictator = match r.dictator {
                Some(d) => d,
                None => return fail(format!("survivor {idx} has no dictator")),
            };
            if !r.ultrafilter.all_pass() {
                return fail(format!("survivor {idx}: decisive family is not an ultrafilter"));
            }
            if r.ultrafilter.generator != Some(dictator) {
                return fail(format!(
                    "survivor {idx}: ultrafilter generator {:?} != dictator {dictator}",
                    r.ultrafilter.generator
                ));
            }
            if r.projection != Some(dictator) {
                return fail(format!(
                    "survivor {idx}: boolean function is not the projection onto {dictator}"
                ));
            }
            if r.square_ok != Some(true) {
                return fail(format!("survivor {idx}: factorization square does not commute"));
            }
            if check_linear_strictness(&r.swf)?.is_some() {
                return fail(format!("survivor {idx}: tie on a pair-linear ballot"));
            }
            if check_local_neutrality(&r.swf)?.is_some() {
                return fail(format!("survivor {idx}: local neutrality fails"));
            }
            if check_monotonicity(&r.swf)?.is_some() {
                return fail(format!("survivor {idx}: monotonicity fails"));
            }
        }
        if cfg.kind == DomainKind::FullLinear {
            if reports.len() != cfg.voters {
                return fail(format!(
                    "expected {} survivors on the linear domain, found {}",
                    cfg.voters,
                    reports.len()
                ));
            }
            let mut seen = vec![false; cfg.voters];
            for (idx, r) in reports.iter().enumerate() {
                let d = r.dictator.expect("checked above");
                if seen[d] {
                    return fail(format!("dictator {d} appears twice"));
                }
                seen[d] = true;
                let dictatorship = Swf::dictatorship(r.swf.domain().clone(), d)?;
                if r.swf != dictatorship {
                    return fail(format!(
                        "survivor {idx} is not the dictatorship of voter {d}"
                    ));
                }
            }
        } else {
            // weak domain: each dictatorship must be among the survivors
            for i in 0..cfg.voters {
                let domain = reports
                    .first()
                    .map(|r| r.swf.domain().clone())
                    .expect("the dictatorships always survive");
                let dictatorship = Swf::dictatorship(domain, i)?;
                if !reports.iter().any(|r| r.swf == dictatorship) {
                    return fail(format!("dictatorship of voter {i} is missing"));
                }
            }
        }
    }

    Ok(SearchReport {
        alternatives: cfg.alternatives,
        voters: cfg.voters,
        kind: cfg.kind,
        candidates: cfg.candidate_count(),
        survivors: reports,
        duration: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_search_two_voters() {
        let cfg = SearchConfig::linear(3, 2);
        assert_eq!(cfg.candidate_count(), 4096);
        let survivors = enumerate_arrow_swfs(&cfg).unwrap();
        assert_eq!(survivors.len(), 2);
        for (i, s) in survivors.iter().enumerate() {
            assert_eq!(s.find_dictator(), Some(i));
        }
    }

    #[test]
    fn linear_search_single_voter() {
        let cfg = SearchConfig::linear(3, 1);
        let survivors = enumerate_arrow_swfs(&cfg).unwrap();
        assert_eq!(survivors.len(), 1);
        let s = &survivors[0];
        for (i, p) in s.domain().profiles().iter().enumerate() {
            assert_eq!(s.output(i), p.entry(0));
        }
    }

    #[test]
    fn two_alternative_control() {
        let cfg = SearchConfig::linear(2, 2);
        assert_eq!(cfg.candidate_count(), 16);
        let report = verify_arrow(&cfg).unwrap();
        assert_eq!(report.valid(), 4);
        assert_eq!(report.dictators(), vec![0, 1]);
    }

    #[test]
    fn verify_arrow_two_voters() {
        let report = verify_arrow(&SearchConfig::linear(3, 2)).unwrap();
        assert_eq!(report.summary_line(), "candidates=4096 valid=2 dictators=[0,1]");
        for r in &report.survivors {
            assert!(r.ultrafilter.all_pass());
            assert_eq!(r.square_ok, Some(true));
        }
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let seq = enumerate_arrow_swfs(&SearchConfig::linear(3, 2)).unwrap();
        let par = enumerate_arrow_swfs(&SearchConfig::linear(3, 2).with_jobs(3)).unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert!(a == b);
        }
    }

    #[test]
    fn infeasible_configurations_are_rejected() {
        assert!(matches!(
            enumerate_arrow_swfs(&SearchConfig::linear(4, 2)),
            Err(SearchError::Infeasible { .. })
        ));
        assert!(matches!(
            enumerate_arrow_swfs(&SearchConfig::weak(3, 3)),
            Err(SearchError::Infeasible { .. })
        ));
        assert!(matches!(
            enumerate_arrow_swfs(&SearchConfig::linear(3, 5)),
            Err(SearchError::Infeasible { .. })
        ));
    }

    #[test]
    fn weak_search_smoke() {
        let cfg = SearchConfig::weak(3, 2);
        assert_eq!(cfg.candidate_count(), 19683u64.pow(3));
        let survivors = enumerate_arrow_swfs(&cfg).unwrap();
        // every survivor is dictatorial, and both dictatorships are there
        let domain = survivors[0].domain().clone();
        let d0 = Swf::dictatorship(domain.clone(), 0).unwrap();
        let d1 = Swf::dictatorship(domain, 1).unwrap();
        assert!(survivors.iter().any(|s| s == &d0));
        assert!(survivors.iter().any(|s| s == &d1));
        for s in &survivors {
            assert!(s.find_dictator().is_some());
            assert!(s.check_iia().is_none());
            assert!(s.check_pareto().is_none());
        }
        assert!(survivors.len() > 2, "tie-breaking freedom yields extra survivors");
    }

    #[test]
    fn solver_and_flat_scan_agree_on_linear_two_voters() {
        // run the constraint solver on a configuration the flat scan
        // also covers and compare survivor tables
        let cfg = SearchConfig::linear(3, 2);
        let carrier = AlternativeSet::canonical(3);
        let voters = VoterSet::new(2).unwrap();
        let domain = Arc::new(Domain::full_linear(&carrier, voters).unwrap());
        let mut flat = search_linear_flat(&cfg, &domain);
        let mut solved = search_with_solver(&cfg, &domain);
        flat.sort();
        solved.sort();
        assert_eq!(flat, solved);
    }
}
