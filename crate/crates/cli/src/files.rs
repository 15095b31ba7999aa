//! The on-disk welfare-function format.
//!
//! A file is a domain header followed by one mapping line per profile:
//!
//! ```text
//! alternatives: a b c
//! voters: 2
//! domain: full-linear
//! a>b>c ; a>b>c -> a>b>c
//! ...
//! ```
//!
//! The `domain:` line selects a full domain (`full-weak` or
//! `full-linear`); without it the listed profiles form an explicit
//! domain. Every domain profile must be mapped exactly once. Blank lines
//! and `#` comments are ignored. Everything the tool emits reloads
//! bit-exactly.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use arrovian::orders::AlternativeSet;
use arrovian::profiles::{Domain, DomainKind, Profile, VoterSet};
use arrovian::swf::Swf;

/// A parse failure with 1-based line and column.
#[derive(Debug, Clone)]
pub struct LoadError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl LoadError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        LoadError { line, col, msg: msg.into() }
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for LoadError {}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next significant line as (1-based number, content).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn header_value<'a>(
    line_no: usize,
    line: &'a str,
    key: &str,
) -> Result<&'a str, LoadError> {
    let trimmed = line.trim_start();
    match trimmed.strip_prefix(key) {
        Some(rest) => Ok(rest.trim()),
        None => Err(LoadError::new(line_no, 1, format!("expected `{key}` header"))),
    }
}

pub fn parse_swf(text: &str) -> Result<Swf, LoadError> {
    let mut lines = Lines::new(text);

    let (ln, line) =
        lines.next().ok_or_else(|| LoadError::new(1, 1, "empty file"))?;
    let labels = header_value(ln, line, "alternatives:")?;
    let carrier = AlternativeSet::new(labels.split_whitespace())
        .map_err(|e| LoadError::new(ln, 1, e.to_string()))?;

    let (ln, line) = lines
        .next()
        .ok_or_else(|| LoadError::new(ln + 1, 1, "missing `voters:` header"))?;
    let voters_text = header_value(ln, line, "voters:")?;
    let m: usize = voters_text
        .parse()
        .map_err(|_| LoadError::new(ln, 1, format!("invalid voter count {voters_text:?}")))?;
    let voters =
        VoterSet::new(m).map_err(|e| LoadError::new(ln, 1, e.to_string()))?;

    // optional kind line, else the first mapping line
    let mut kind = DomainKind::Explicit;
    let mut pending: Option<(usize, &str)> = None;
    if let Some((ln, line)) = lines.next() {
        if let Ok(value) = header_value(ln, line, "domain:") {
            kind = match value {
                "full-weak" => DomainKind::FullWeak,
                "full-linear" => DomainKind::FullLinear,
                other => {
                    return Err(LoadError::new(
                        ln,
                        1,
                        format!("unknown domain kind {other:?} (expected full-weak or full-linear)"),
                    ))
                }
            };
        } else {
            pending = Some((ln, line));
        }
    }

    let mut mappings: Vec<(usize, Profile, arrovian::orders::Relation)> = Vec::new();
    loop {
        let (ln, line) = match pending.take().or_else(|| lines.next()) {
            Some(x) => x,
            None => break,
        };
        let arrow = line.find("->").ok_or_else(|| {
            LoadError::new(ln, line.len() + 1, "expected `<profile> -> <chain>`")
        })?;
        let profile = Profile::parse(&carrier, &line[..arrow])
            .map_err(|e| LoadError::new(ln, e.col, e.msg))?;
        if profile.voters().count() != m {
            return Err(LoadError::new(
                ln,
                1,
                format!("profile has {} ballots, expected {m}", profile.voters().count()),
            ));
        }
        let output = carrier
            .parse_chain(&line[arrow + 2..])
            .map_err(|e| LoadError::new(ln, e.col + arrow + 2, e.msg))?;
        mappings.push((ln, profile, output));
    }
    if mappings.is_empty() {
        return Err(LoadError::new(1, 1, "no profile mappings"));
    }

    let domain = match kind {
        DomainKind::FullWeak => Domain::full_weak(&carrier, voters),
        DomainKind::FullLinear => Domain::full_linear(&carrier, voters),
        DomainKind::Explicit => {
            Domain::explicit(mappings.iter().map(|(_, p, _)| p.clone()).collect())
        }
    }
    .map_err(|e| LoadError::new(1, 1, e.to_string()))?;

    let mut outputs: Vec<Option<(usize, arrovian::orders::Relation)>> =
        vec![None; domain.len()];
    for (ln, profile, output) in mappings {
        let idx = domain.index_of(&profile).ok_or_else(|| {
            LoadError::new(ln, 1, format!("profile {profile} is not in the {kind} domain"))
        })?;
        if let Some((first, _)) = outputs[idx] {
            return Err(LoadError::new(
                ln,
                1,
                format!("duplicate mapping for profile {profile} (first at line {first})"),
            ));
        }
        outputs[idx] = Some((ln, output));
    }
    if let Some(idx) = outputs.iter().position(Option::is_none) {
        return Err(LoadError::new(
            1,
            1,
            format!("missing mapping for profile {}", domain.profile(idx)),
        ));
    }
    let outputs: Vec<arrovian::orders::Relation> =
        outputs.into_iter().map(|o| o.expect("checked above").1).collect();
    Swf::from_outputs(Arc::new(domain), outputs)
        .map_err(|e| LoadError::new(1, 1, e.to_string()))
}

pub fn load_swf(path: &Path) -> Result<Swf, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse_swf(&text).map_err(|e| format!("{}:{e}", path.display()).into())
}

/// Canonical text form; [`parse_swf`] reads it back bit-exactly.
pub fn render_swf(s: &Swf) -> String {
    let carrier = s.carrier();
    let labels: Vec<&str> = carrier.labels().collect();
    let mut out = format!("alternatives: {}\n", labels.join(" "));
    out.push_str(&format!("voters: {}\n", s.voters().count()));
    match s.domain().kind() {
        DomainKind::FullWeak => out.push_str("domain: full-weak\n"),
        DomainKind::FullLinear => out.push_str("domain: full-linear\n"),
        DomainKind::Explicit => {}
    }
    for (i, p) in s.domain().profiles().iter().enumerate() {
        let chain = s.output(i).to_chain().expect("file outputs are weak orders");
        out.push_str(&format!("{p} -> {chain}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_dictatorship() {
        let carrier = AlternativeSet::canonical(3);
        let voters = VoterSet::new(2).unwrap();
        let domain = Arc::new(Domain::full_linear(&carrier, voters).unwrap());
        let s = Swf::dictatorship(domain, 0).unwrap();
        let text = render_swf(&s);
        let loaded = parse_swf(&text).unwrap();
        assert!(loaded == s);
        assert_eq!(render_swf(&loaded), text);
    }

    #[test]
    fn explicit_files_define_their_domain() {
        let text = "alternatives: a b c\nvoters: 2\n\
                    a>b>c ; c>b>a -> a>b>c\n\
                    c>b>a ; a>b>c -> c>b>a\n";
        let s = parse_swf(text).unwrap();
        assert_eq!(s.domain().kind(), DomainKind::Explicit);
        assert_eq!(s.domain().len(), 2);
    }

    #[test]
    fn diagnostics_carry_line_and_column() {
        let text = "alternatives: a b c\nvoters: 2\n\
                    a>b>c ; c>b>z -> a>b>c\n";
        let err = parse_swf(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.col, 13);

        let text = "alternatives: a b c\nvoters: 2\ndomain: full-linear\n\
                    a>b>c ; a>b>c -> a>b>c\n";
        let err = parse_swf(text).unwrap_err();
        assert!(err.msg.contains("missing mapping"));

        let dup = "alternatives: a b c\nvoters: 1\n\
                   a>b>c -> a>b>c\na>b>c -> c>b>a\n";
        let err = parse_swf(dup).unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.msg.contains("duplicate"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a one-voter identity\nalternatives: a b\n\nvoters: 1\n\
                    # mappings\na>b -> a>b\nb>a -> b>a\na~b -> a~b\n";
        let s = parse_swf(text).unwrap();
        assert_eq!(s.domain().len(), 3);
    }
}
