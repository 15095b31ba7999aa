//! Binary relations on small alternative sets.
//!
//! Relations are stored as n×n bit matrices packed into a single `u64`
//! (`n <= 6`), which keeps the property checks and the exhaustive
//! enumerations underneath the rest of the crate cheap. The module provides
//! the six classical relation properties, weak/linear order predicates,
//! strict and indifference parts, restriction, pushforward along injective
//! maps, and complete enumeration of weak and linear orders at small sizes.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Hard cap for weak-order enumeration: the filter walks all 2^(n*n) bit
/// matrices.
pub const MAX_WEAK_ENUMERATION: usize = 4;

/// Hard cap for linear-order enumeration (n! outputs).
pub const MAX_LINEAR_ENUMERATION: usize = 6;

/// Largest carrier a `Relation` can hold: n*n bits must fit in a `u64`.
pub const MAX_CARRIER: usize = 6;

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("alternative set must have between 1 and {MAX_CARRIER} labels, got {0}")]
    BadCarrierSize(usize),
    #[error("invalid label {0:?}: labels are nonempty and use only letters, digits, '_' or '-'")]
    InvalidLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("label {0:?} is not in the carrier")]
    UnknownLabel(String),
    #[error("relation bits out of range for carrier of size {0}")]
    BitsOutOfRange(usize),
    #[error("enumeration size {n} out of range 1..={max}")]
    EnumerationOutOfRange { n: usize, max: usize },
    #[error("carrier mismatch: expected {expected:?}, got {got:?}")]
    CarrierMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("index map {0:?} is not injective")]
    NotInjective(Vec<usize>),
    #[error("index {index} out of range for set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not a weak order")]
    NotWeakOrder,
}

/// Parse failure with a 1-based column into the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(col: usize, msg: impl Into<String>) -> Self {
        ParseError { col, msg: msg.into() }
    }

    /// Shift the column by `offset` (for parsers that hand slices to
    /// sub-parsers).
    pub(crate) fn shift(self, offset: usize) -> Self {
        ParseError { col: self.col + offset, msg: self.msg }
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// An ordered set of named alternatives, addressed by index.
///
/// Labels are surface syntax only; all computation is index-based. Cloning
/// is cheap (shared backing storage).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternativeSet {
    labels: Arc<Vec<String>>,
}

impl AlternativeSet {
    pub fn new<I, S>(labels: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_CARRIER {
            return Err(OrderError::BadCarrierSize(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(OrderError::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        Ok(AlternativeSet { labels: Arc::new(labels) })
    }

    /// The carrier `a`, `b`, `c`, ... of size `n`.
    pub fn canonical(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_CARRIER, "canonical carrier size {n} out of range");
        let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        AlternativeSet { labels: Arc::new(labels) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Does every label of `sub` occur in `self`?
    pub fn contains_all(&self, sub: &AlternativeSet) -> bool {
        sub.labels().all(|l| self.index_of(l).is_some())
    }

    /// The sub-carrier selected by a bitmask over indices (bit i = keep
    /// alternative i), preserving relative order.
    pub fn subset(&self, mask: u32) -> Result<Self, OrderError> {
        if mask == 0 || mask >= 1 << self.len() {
            return Err(OrderError::BadCarrierSize(mask.count_ones() as usize));
        }
        let labels: Vec<String> =
            (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.labels[i].clone()).collect();
        Ok(AlternativeSet { labels: Arc::new(labels) })
    }

    /// Render as `{a,b}`.
    pub fn braces(&self) -> String {
        format!("{{{}}}", self.labels.join(","))
    }

    /// Parse a chain like `a>b~c` into a weak order over this carrier.
    /// Every carrier label must appear exactly once.
    pub fn parse_chain(&self, input: &str) -> Result<Relation, ParseError> {
        let mut ranks = vec![usize::MAX; self.len()];
        let mut rank = 0usize;
        let mut pos = 0usize;
        let bytes = input.as_bytes();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() {
                let c = bytes[pos] as char;
                if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                    pos += 1;
                } else {
                    break;
                }
            }
            if start == pos {
                return Err(ParseError::new(pos + 1, "expected a label".to_string()));
            }
            let label = &input[start..pos];
            let idx = self
                .index_of(label)
                .ok_or_else(|| ParseError::new(start + 1, format!("unknown label {label:?}")))?;
            if ranks[idx] != usize::MAX {
                return Err(ParseError::new(start + 1, format!("label {label:?} appears twice")));
            }
            ranks[idx] = rank;
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] as char {
                '>' => {
                    rank += 1;
                    pos += 1;
                }
                '~' => {
                    pos += 1;
                }
                c => {
                    return Err(ParseError::new(pos + 1, format!("unexpected character {c:?}")));
                }
            }
        }
        if let Some(i) = ranks.iter().position(|&r| r == usize::MAX) {
            return Err(ParseError::new(
                input.len() + 1,
                format!("label {:?} is missing from the chain", self.label(i)),
            ));
        }
        Ok(Relation::from_ranks(self, &ranks))
    }
}

impl fmt::Debug for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.braces())
    }
}

impl fmt::Display for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.braces())
    }
}

/// The six universally quantified relation properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationProperty {
    Reflexive,
    Irreflexive,
    Symmetric,
    Antisymmetric,
    Transitive,
    Connected,
}

impl RelationProperty {
    pub const ALL: [RelationProperty; 6] = [
        RelationProperty::Reflexive,
        RelationProperty::Irreflexive,
        RelationProperty::Symmetric,
        RelationProperty::Antisymmetric,
        RelationProperty::Transitive,
        RelationProperty::Connected,
    ];
}

impl std::str::FromStr for RelationProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reflexive" => Ok(RelationProperty::Reflexive),
            "irreflexive" => Ok(RelationProperty::Irreflexive),
            "symmetric" => Ok(RelationProperty::Symmetric),
            "antisymmetric" => Ok(RelationProperty::Antisymmetric),
            "transitive" => Ok(RelationProperty::Transitive),
            "connected" => Ok(RelationProperty::Connected),
            _ => Err(format!("unknown relation property {s:?}")),
        }
    }
}

/// A binary relation on an `AlternativeSet`, stored as an n×n bit matrix.
///
/// Bit `a*n + b` is set iff `a R b`. Equality and ordering are only defined
/// between relations over the same carrier; comparing across carriers is a
/// caller bug and panics.
#[derive(Clone)]
pub struct Relation {
    carrier: AlternativeSet,
    bits: u64,
}

impl Relation {
    pub fn from_bits(carrier: &AlternativeSet, bits: u64) -> Result<Self, OrderError> {
        let n2 = carrier.len() * carrier.len();
        if n2 < 64 && bits >> n2 != 0 {
            return Err(OrderError::BitsOutOfRange(carrier.len()));
        }
        Ok(Relation { carrier: carrier.clone(), bits })
    }

    pub fn from_fn(carrier: &AlternativeSet, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = carrier.len();
        let mut bits = 0u64;
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    bits |= 1 << (a * n + b);
                }
            }
        }
        Relation { carrier: carrier.clone(), bits }
    }

    /// Weak order determined by a rank per alternative: `a R b` iff
    /// `rank[a] <= rank[b]`.
    pub fn from_ranks(carrier: &AlternativeSet, ranks: &[usize]) -> Self {
        assert_eq!(ranks.len(), carrier.len());
        Relation::from_fn(carrier, |a, b| ranks[a] <= ranks[b])
    }

    pub fn empty(carrier: &AlternativeSet) -> Self {
        Relation { carrier: carrier.clone(), bits: 0 }
    }

    pub fn full(carrier: &AlternativeSet) -> Self {
        let n2 = carrier.len() * carrier.len();
        let bits = if n2 == 64 { u64::MAX } else { (1u64 << n2) - 1 };
        Relation { carrier: carrier.clone(), bits }
    }

    pub fn identity(carrier: &AlternativeSet) -> Self {
        Relation::from_fn(carrier, |a, b| a == b)
    }

    /// The linear order ranking alternatives by carrier index: first label
    /// strictly above the second, and so on.
    pub fn chain(carrier: &AlternativeSet) -> Self {
        Relation::from_fn(carrier, |a, b| a <= b)
    }

    pub fn carrier(&self) -> &AlternativeSet {
        &self.carrier
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let n = self.carrier.len();
        debug_assert!(a < n && b < n);
        self.bits >> (a * n + b) & 1 == 1
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    /// Row-major lexicographic key over the bit matrix: entry (0,0) is most
    /// significant. Canonical enumeration order sorts ascending on this.
    pub(crate) fn lex_key(&self) -> u64 {
        let n2 = self.carrier.len() * self.carrier.len();
        let mut key = 0u64;
        for i in 0..n2 {
            if self.bits >> i & 1 == 1 {
                key |= 1 << (n2 - 1 - i);
            }
        }
        key
    }

    fn transpose_bits(&self) -> u64 {
        let n = self.carrier.len();
        let mut t = 0u64;
        for a in 0..n {
            for b in 0..n {
                if self.bits >> (a * n + b) & 1 == 1 {
                    t |= 1 << (b * n + a);
                }
            }
        }
        t
    }

    pub fn has_property(&self, prop: RelationProperty) -> bool {
        let n = self.carrier.len();
        match prop {
            RelationProperty::Reflexive => (0..n).all(|a| self.contains(a, a)),
            RelationProperty::Irreflexive => (0..n).all(|a| !self.contains(a, a)),
            RelationProperty::Symmetric => self.bits == self.transpose_bits(),
            RelationProperty::Antisymmetric => (0..n).all(|a| {
                (0..n).all(|b| a == b || !(self.contains(a, b) && self.contains(b, a)))
            }),
            RelationProperty::Transitive => self.is_transitive(),
            // Total: quantifies over all ordered pairs including a = b, so
            // connected implies reflexive.
            RelationProperty::Connected => {
                (0..n).all(|a| (a..n).all(|b| self.contains(a, b) || self.contains(b, a)))
            }
        }
    }

    fn is_transitive(&self) -> bool {
        let n = self.carrier.len();
        let row_mask = (1u64 << n) - 1;
        for a in 0..n {
            let row_a = self.bits >> (a * n) & row_mask;
            let mut reachable = 0u64;
            let mut m = row_a;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                reachable |= self.bits >> (b * n) & row_mask;
            }
            if reachable & !row_a != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_weak_order(&self) -> bool {
        self.has_property(RelationProperty::Transitive)
            && self.has_property(RelationProperty::Connected)
    }

    pub fn is_linear_order(&self) -> bool {
        self.is_weak_order() && self.has_property(RelationProperty::Antisymmetric)
    }

    /// `a P b := a R b and not b R a`.
    pub fn strict_part(&self) -> Relation {
        Relation { carrier: self.carrier.clone(), bits: self.bits & !self.transpose_bits() }
    }

    /// `a I b := a R b and b R a`.
    pub fn indifference_part(&self) -> Relation {
        Relation { carrier: self.carrier.clone(), bits: self.bits & self.transpose_bits() }
    }

    /// Mirror image: `a R' b` iff `b R a`.
    pub fn reverse(&self) -> Relation {
        Relation { carrier: self.carrier.clone(), bits: self.transpose_bits() }
    }

    /// Restriction onto a sub-carrier (labels must all occur in the
    /// carrier; their order in `subset` is kept).
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<Relation, OrderError> {
        let inj = Injection::inclusion(subset, &self.carrier)?;
        self.pushforward(&inj)
    }

    /// Functor action along an injection into this relation's carrier:
    /// `x R' x'` iff `f(x) R f(x')`. Preserves every universally
    /// quantified property, in particular weak and linear orderhood.
    pub fn pushforward(&self, f: &Injection) -> Result<Relation, OrderError> {
        if f.target() != &self.carrier {
            return Err(OrderError::CarrierMismatch {
                expected: self.carrier.labels().map(str::to_owned).collect(),
                got: f.target().labels().map(str::to_owned).collect(),
            });
        }
        Ok(Relation::from_fn(f.source(), |x, y| self.contains(f.apply(x), f.apply(y))))
    }

    /// Chain syntax (`a>b~c`) when the relation is a weak order.
    pub fn to_chain(&self) -> Result<String, OrderError> {
        if !self.is_weak_order() {
            return Err(OrderError::NotWeakOrder);
        }
        let n = self.carrier.len();
        let below = |a: usize| (0..n).filter(|&b| self.contains(a, b) && !self.contains(b, a)).count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (std::cmp::Reverse(below(a)), a));
        let mut out = String::new();
        for (k, &a) in order.iter().enumerate() {
            if k > 0 {
                out.push(if below(order[k - 1]) == below(a) { '~' } else { '>' });
            }
            out.push_str(self.carrier.label(a));
        }
        Ok(out)
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        assert_eq!(
            self.carrier, other.carrier,
            "relations over different carriers cannot be compared"
        );
        self.bits == other.bits
    }
}

impl Eq for Relation {}

impl std::hash::Hash for Relation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.carrier.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_chain() {
            Ok(chain) => write!(f, "{chain}"),
            Err(_) => {
                let n = self.carrier.len();
                let pairs: Vec<String> = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .filter(|&(a, b)| self.contains(a, b))
                    .map(|(a, b)| format!("({},{})", self.carrier.label(a), self.carrier.label(b)))
                    .collect();
                write!(f, "{{{}}}", pairs.join(","))
            }
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} on {})", self, self.carrier)
    }
}

/// An injective map between alternative sets, given as an index array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injection {
    source: AlternativeSet,
    target: AlternativeSet,
    map: Vec<usize>,
}

impl Injection {
    pub fn new(
        source: &AlternativeSet,
        target: &AlternativeSet,
        map: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if map.len() != source.len() {
            return Err(OrderError::IndexOutOfRange { index: map.len(), size: source.len() });
        }
        for (i, &t) in map.iter().enumerate() {
            if t >= target.len() {
                return Err(OrderError::IndexOutOfRange { index: t, size: target.len() });
            }
            if map[..i].contains(&t) {
                return Err(OrderError::NotInjective(map.clone()));
            }
        }
        Ok(Injection { source: source.clone(), target: target.clone(), map })
    }

    /// The label-preserving inclusion of `sub` into `sup`.
    pub fn inclusion(sub: &AlternativeSet, sup: &AlternativeSet) -> Result<Self, OrderError> {
        let map = sub
            .labels()
            .map(|l| sup.index_of(l).ok_or_else(|| OrderError::UnknownLabel(l.to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        Injection::new(sub, sup, map)
    }

    pub fn identity(set: &AlternativeSet) -> Self {
        Injection { source: set.clone(), target: set.clone(), map: (0..set.len()).collect() }
    }

    /// Composition `g . f` (apply `f` first).
    pub fn compose(g: &Injection, f: &Injection) -> Result<Self, OrderError> {
        if f.target != g.source {
            return Err(OrderError::CarrierMismatch {
                expected: g.source.labels().map(str::to_owned).collect(),
                got: f.target.labels().map(str::to_owned).collect(),
            });
        }
        let map = f.map.iter().map(|&x| g.map[x]).collect();
        Ok(Injection { source: f.source.clone(), target: g.target.clone(), map })
    }

    pub fn source(&self) -> &AlternativeSet {
        &self.source
    }

    pub fn target(&self) -> &AlternativeSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Every injective index map source -> target, in lexicographic order.
    pub fn all(source: &AlternativeSet, target: &AlternativeSet) -> Vec<Injection> {
        let mut out = Vec::new();
        let mut map = Vec::with_capacity(source.len());
        fn rec(
            source: &AlternativeSet,
            target: &AlternativeSet,
            map: &mut Vec<usize>,
            out: &mut Vec<Injection>,
        ) {
            if map.len() == source.len() {
                out.push(Injection {
                    source: source.clone(),
                    target: target.clone(),
                    map: map.clone(),
                });
                return;
            }
            for t in 0..target.len() {
                if !map.contains(&t) {
                    map.push(t);
                    rec(source, target, map, out);
                    map.pop();
                }
            }
        }
        if source.len() <= target.len() {
            rec(source, target, &mut map, &mut out);
        }
        out
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<&str> = self.map.iter().map(|&t| self.target.label(t)).collect();
        write!(f, "[{}]", images.join(","))
    }
}

/// All weak orders on the carrier (transitive and connected relations), in
/// canonical (row-major lexicographic) order. Counts follow the ordered
/// Bell numbers: 1, 3, 13, 75.
pub fn enumerate_weak_orders(carrier: &AlternativeSet) -> Result<Vec<Relation>, OrderError> {
    let n = carrier.len();
    if n > MAX_WEAK_ENUMERATION {
        return Err(OrderError::EnumerationOutOfRange { n, max: MAX_WEAK_ENUMERATION });
    }
    let n2 = n * n;
    let mut out = Vec::new();
    for bits in 0..(1u64 << n2) {
        let r = Relation { carrier: carrier.clone(), bits };
        if r.is_weak_order() {
            out.push(r);
        }
    }
    out.sort_by_key(Relation::lex_key);
    Ok(out)
}

/// All linear orders on the carrier, generated from permutations and
/// returned in canonical order; exactly n! of them.
pub fn enumerate_linear_orders(carrier: &AlternativeSet) -> Result<Vec<Relation>, OrderError> {
    let n = carrier.len();
    if n > MAX_LINEAR_ENUMERATION {
        return Err(OrderError::EnumerationOutOfRange { n, max: MAX_LINEAR_ENUMERATION });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    fn rec(n: usize, perm: &mut Vec<usize>, carrier: &AlternativeSet, out: &mut Vec<Relation>) {
        if perm.len() == n {
            // perm[k] = alternative at rank k (best first)
            let mut ranks = vec![0usize; n];
            for (rank, &a) in perm.iter().enumerate() {
                ranks[a] = rank;
            }
            out.push(Relation::from_ranks(carrier, &ranks));
            return;
        }
        for a in 0..n {
            if !perm.contains(&a) {
                perm.push(a);
                rec(n, perm, carrier, out);
                perm.pop();
            }
        }
    }
    rec(n, &mut perm, carrier, &mut out);
    out.sort_by_key(Relation::lex_key);
    Ok(out)
}
