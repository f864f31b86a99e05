//! Closed-form values for every variant and explicit constructions that
//! attain them for arbitrary `n`.
//!
//! Constructions are per-copy role subsets tiled along the ring, starting at
//! copy 0. Where a block is "truncated", the first `n` entries of the
//! infinite repetition are used.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FlowerSnark, Role};
use crate::validators::{Candidate, GuardFunction, Variant};
use crate::vertex_set::VertexSet;

/// Values kept in the table for completeness without a validator behind
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordedOnly {
    WeaklyConvex,
    Convex,
}

impl RecordedOnly {
    pub const ALL: [RecordedOnly; 2] = [RecordedOnly::WeaklyConvex, RecordedOnly::Convex];

    pub fn name(self) -> &'static str {
        match self {
            RecordedOnly::WeaklyConvex => "weakly_convex",
            RecordedOnly::Convex => "convex",
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::OutOfDomain(n))
    } else {
        Ok(())
    }
}

/// Closed-form value of `variant` on `J_n`. `minimal` is the smallest
/// minimal dominating set, which is the domination number.
pub fn formula_value(variant: Variant, n: usize) -> Result<usize> {
    check_n(n)?;
    Ok(match variant {
        Variant::Domination | Variant::Independent | Variant::Minimal => n,
        Variant::Secure | Variant::WeakRoman => (3 * n + 1).div_ceil(2),
        Variant::TwoDomination if n % 3 == 1 => (5 * n + 4) / 3,
        Variant::TwoDomination => (5 * n).div_ceil(3),
        Variant::Total if n % 4 == 2 => 3 * n / 2 + 1,
        Variant::Total => (3 * n).div_ceil(2),
        Variant::Connected | Variant::Upper if n.is_multiple_of(2) => 2 * n,
        Variant::Connected | Variant::Upper => 2 * n - 1,
        Variant::Roman => 2 * n,
    })
}

pub fn recorded_formula(entry: RecordedOnly, n: usize) -> Result<usize> {
    check_n(n)?;
    Ok(match entry {
        RecordedOnly::WeaklyConvex => 2 * n,
        RecordedOnly::Convex => 4 * n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaEntry {
    pub name: &'static str,
    pub value: usize,
    /// False for entries with no validator in this crate.
    pub verifiable: bool,
}

/// Every closed-form value at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaTable {
    pub n: usize,
    pub entries: Vec<FormulaEntry>,
}

impl FormulaTable {
    pub fn new(n: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for v in Variant::ALL {
            entries.push(FormulaEntry {
                name: v.name(),
                value: formula_value(v, n)?,
                verifiable: true,
            });
        }
        for r in RecordedOnly::ALL {
            entries.push(FormulaEntry {
                name: r.name(),
                value: recorded_formula(r, n)?,
                verifiable: false,
            });
        }
        Ok(Self { n, entries })
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
    }
}

/// The members of one copy, as a subset of `{a, b, c, d}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CopyConfig(u8);

impl CopyConfig {
    pub fn from_roles(roles: &[Role]) -> Self {
        Self(roles.iter().fold(0, |m, &r| m | 1 << r as u8))
    }

    /// Parses role letters, e.g. `"bcd"`. Panics on anything else; only used
    /// with literal block tables.
    fn lit(letters: &str) -> Self {
        Self::from_roles(
            &letters
                .chars()
                .map(|c| Role::from_letter(c).expect("role letter"))
                .collect::<Vec<_>>(),
        )
    }

    pub fn contains(self, role: Role) -> bool {
        self.0 >> role as u8 & 1 == 1
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in canonical role order (b, a, c, d).
    pub fn roles(self) -> Vec<Role> {
        Role::ALL
            .into_iter()
            .filter(|&r| self.contains(r))
            .collect()
    }

    pub fn with(self, role: Role) -> Self {
        Self(self.0 | 1 << role as u8)
    }

    pub fn without(self, role: Role) -> Self {
        Self(self.0 & !(1 << role as u8))
    }
}

impl fmt::Debug for CopyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: String = [Role::A, Role::B, Role::C, Role::D]
            .into_iter()
            .filter(|&r| self.contains(r))
            .map(Role::letter)
            .collect();
        write!(f, "{{{letters}}}")
    }
}

fn blocks(letters: &[&str]) -> Vec<CopyConfig> {
    letters.iter().map(|l| CopyConfig::lit(l)).collect()
}

/// First `n` entries of the infinite repetition of `block`.
fn tile(block: &[CopyConfig], n: usize) -> Vec<CopyConfig> {
    block.iter().copied().cycle().take(n).collect()
}

/// `repeat` copies of `block` followed by `ending`.
fn repeat_then(block: &[CopyConfig], repeat: usize, ending: &[CopyConfig]) -> Vec<CopyConfig> {
    let mut out = Vec::with_capacity(block.len() * repeat + ending.len());
    for _ in 0..repeat {
        out.extend_from_slice(block);
    }
    out.extend_from_slice(ending);
    out
}

/// Maps per-copy configurations onto vertex ids, copy `i` at ids `4i..4i+4`.
pub fn flatten(configs: &[CopyConfig]) -> VertexSet {
    let mut s = VertexSet::empty(4 * configs.len());
    for (i, cfg) in configs.iter().enumerate() {
        for r in cfg.roles() {
            s.insert(4 * i + r as usize);
        }
    }
    s
}

/// `({a}, {b,c,d})` pairs, closed with `{a}` when `n` is odd. Minimal
/// dominating, of size `2n` or `2n - 1`.
pub fn upper_dom_configs(n: usize) -> Result<Vec<CopyConfig>> {
    check_n(n)?;
    let pair = blocks(&["a", "bcd"]);
    Ok(repeat_then(
        &pair,
        n / 2,
        &blocks(if n % 2 == 1 { &["a"] } else { &[] }),
    ))
}

/// `({b,c,d}, {a}, {a})` tiled and truncated.
pub fn two_dom_configs(n: usize) -> Result<Vec<CopyConfig>> {
    check_n(n)?;
    Ok(tile(&blocks(&["bcd", "a", "a"]), n))
}

/// `({b}, {c,d}, {c,d}, {b})` repeated, with an ending chosen by `n mod 4`.
pub fn total_dom_configs(n: usize) -> Result<Vec<CopyConfig>> {
    check_n(n)?;
    let ending_d = blocks(&["b", "acd", "b"]);
    if n == 3 {
        return Ok(ending_d);
    }
    let ending = match n % 4 {
        0 => Vec::new(),
        1 => blocks(&["ab"]),
        2 => blocks(&["ab", "ab"]),
        _ => ending_d,
    };
    let repeat = (n - ending.len()) / 4;
    Ok(repeat_then(
        &blocks(&["b", "cd", "cd", "b"]),
        repeat,
        &ending,
    ))
}

/// `({d}, {a,b,d}, {d}, {a,c,d})` tiled and truncated; when `n = 1 mod 4`
/// copy 0 becomes `{b}`.
pub fn connected_dom_configs(n: usize) -> Result<Vec<CopyConfig>> {
    check_n(n)?;
    let mut configs = tile(&blocks(&["d", "abd", "d", "acd"]), n);
    if n % 4 == 1 {
        configs[0] = configs[0].without(Role::D).with(Role::B);
    }
    Ok(configs)
}

/// `({b}, {c,d}, {b,c}, {d})` repeated, then an ending chosen by `n mod 4`.
/// Needs `n >= 4`, and `n >= 7` when `n = 3 mod 4`.
pub fn secure_dom_configs(n: usize) -> Result<Vec<CopyConfig>> {
    check_n(n)?;
    let ending = match n % 4 {
        0 => blocks(&["b", "cd", "bc", "cd"]),
        1 => blocks(&["b", "cd", "bc", "bd", "c"]),
        2 => blocks(&["bc", "cd"]),
        _ => blocks(&["b", "cd", "ab", "a", "ac", "bd", "c"]),
    };
    if n < ending.len() {
        return Err(Error::NoCertificate {
            variant: Variant::Secure,
            n,
            reason: "the construction needs n >= 4; use the solver",
        });
    }
    let repeat = (n - ending.len()) / 4;
    Ok(repeat_then(
        &blocks(&["b", "cd", "bc", "d"]),
        repeat,
        &ending,
    ))
}

pub fn upper_dom_certificate(n: usize) -> Result<VertexSet> {
    upper_dom_configs(n).map(|c| flatten(&c))
}

pub fn two_dom_certificate(n: usize) -> Result<VertexSet> {
    two_dom_configs(n).map(|c| flatten(&c))
}

pub fn total_dom_certificate(n: usize) -> Result<VertexSet> {
    total_dom_configs(n).map(|c| flatten(&c))
}

pub fn connected_dom_certificate(n: usize) -> Result<VertexSet> {
    connected_dom_configs(n).map(|c| flatten(&c))
}

pub fn secure_dom_certificate(n: usize) -> Result<VertexSet> {
    secure_dom_configs(n).map(|c| flatten(&c))
}

/// A constructed candidate for one variant at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub variant: Variant,
    pub n: usize,
    pub candidate: Candidate,
}

#[derive(Serialize)]
struct CertificateJson {
    variant: Variant,
    n: usize,
    size: usize,
    copies: Vec<Vec<String>>,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.candidate.size()
    }

    /// Role letters per copy; a vertex carrying two guards is listed twice.
    pub fn copies(&self) -> Vec<Vec<String>> {
        let letter = |id: usize| Role::ALL[id % 4].letter().to_string();
        let mut copies = vec![Vec::new(); self.n];
        match &self.candidate {
            Candidate::Set(s) => {
                for v in s {
                    copies[v / 4].push(letter(v));
                }
            }
            Candidate::Guards(f) => {
                for (v, &g) in f.as_slice().iter().enumerate() {
                    for _ in 0..g {
                        copies[v / 4].push(letter(v));
                    }
                }
            }
        }
        copies
    }

    /// `{variant, n, size, copies}` with role letters per copy.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            variant: self.variant,
            n: self.n,
            size: self.size(),
            copies: self.copies(),
        })
        .expect("certificate serializes")
    }

    pub fn is_valid(&self, g: &FlowerSnark) -> bool {
        crate::validators::validate(g, self.variant, &self.candidate).unwrap_or(false)
    }
}

/// The constructive certificate for `variant` on `J_n`, of size
/// `formula_value(variant, n)`.
pub fn certificate(variant: Variant, n: usize) -> Result<Certificate> {
    check_n(n)?;
    let a_only = || flatten(&vec![CopyConfig::lit("a"); n]);
    let candidate = match variant {
        Variant::Domination | Variant::Independent | Variant::Minimal => Candidate::Set(a_only()),
        Variant::TwoDomination => Candidate::Set(two_dom_certificate(n)?),
        Variant::Total => Candidate::Set(total_dom_certificate(n)?),
        Variant::Connected => Candidate::Set(connected_dom_certificate(n)?),
        Variant::Upper => Candidate::Set(upper_dom_certificate(n)?),
        Variant::Secure => Candidate::Set(secure_dom_certificate(n)?),
        Variant::Roman => {
            let twos = a_only();
            Candidate::Guards(GuardFunction::from_sets(&VertexSet::empty(4 * n), &twos))
        }
        Variant::WeakRoman => {
            let s = secure_dom_certificate(n).map_err(|_| Error::NoCertificate {
                variant,
                n,
                reason: "the construction needs n >= 4; use the solver",
            })?;
            Candidate::Guards(GuardFunction::indicator(&s))
        }
    };
    Ok(Certificate {
        variant,
        n,
        candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_flower_snark;
    use crate::validators::{
        is_2_dominating, is_connected_dominating, is_minimal_dominating, is_secure_dominating,
        is_total_dominating,
    };

    fn cfgs(list: &[&str]) -> Vec<CopyConfig> {
        blocks(list)
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_value(Variant::Total, 3).unwrap(), 5);
        assert_eq!(formula_value(Variant::Upper, 4).unwrap(), 8);
        assert_eq!(formula_value(Variant::TwoDomination, 4).unwrap(), 8);
        assert_eq!(formula_value(Variant::Total, 6).unwrap(), 10);
        assert_eq!(formula_value(Variant::Secure, 41).unwrap(), 62);
        assert_eq!(formula_value(Variant::WeakRoman, 8).unwrap(), 13);
        assert_eq!(formula_value(Variant::Connected, 5).unwrap(), 9);
        assert_eq!(formula_value(Variant::Roman, 4).unwrap(), 8);
        assert_eq!(recorded_formula(RecordedOnly::Convex, 5).unwrap(), 20);
        assert_eq!(
            formula_value(Variant::Domination, 2).unwrap_err(),
            Error::OutOfDomain(2)
        );
    }

    #[test]
    fn table_is_total_and_bounded_below_by_domination() {
        for n in 3..40 {
            let t = FormulaTable::new(n).unwrap();
            assert_eq!(t.entries.len(), Variant::ALL.len() + 2);
            let gamma = t.get("domination").unwrap();
            assert!(t.entries.iter().all(|e| e.value >= gamma && e.value > 0));
        }
    }

    #[test]
    fn upper_configs() {
        assert_eq!(
            upper_dom_configs(4).unwrap(),
            cfgs(&["a", "bcd", "a", "bcd"])
        );
        assert_eq!(upper_dom_configs(3).unwrap(), cfgs(&["a", "bcd", "a"]));
        assert_eq!(upper_dom_certificate(5).unwrap().count(), 9);
        assert_eq!(upper_dom_certificate(3).unwrap().count(), 5);
    }

    #[test]
    fn two_dom_configs_truncate() {
        assert_eq!(two_dom_certificate(3).unwrap().count(), 5);
        assert_eq!(two_dom_configs(4).unwrap(), cfgs(&["bcd", "a", "a", "bcd"]));
        assert_eq!(two_dom_certificate(5).unwrap().count(), 9);
        let g = build_flower_snark(5).unwrap();
        assert!(is_2_dominating(&g, &two_dom_certificate(5).unwrap()));
    }

    #[test]
    fn total_configs() {
        assert_eq!(total_dom_configs(3).unwrap(), cfgs(&["b", "acd", "b"]));
        assert_eq!(total_dom_certificate(4).unwrap().count(), 6);
        assert_eq!(total_dom_certificate(6).unwrap().count(), 10);
        let g = build_flower_snark(4).unwrap();
        assert!(is_total_dominating(&g, &total_dom_certificate(4).unwrap()));
    }

    #[test]
    fn connected_configs() {
        assert_eq!(connected_dom_configs(3).unwrap(), cfgs(&["d", "abd", "d"]));
        let five = connected_dom_configs(5).unwrap();
        assert_eq!(five[0], CopyConfig::lit("b"));
        assert_eq!(flatten(&five).count(), 9);
        assert_eq!(connected_dom_certificate(4).unwrap().count(), 8);
        let g = build_flower_snark(4).unwrap();
        let cert = connected_dom_certificate(4).unwrap();
        assert!(is_connected_dominating(&g, &cert));
        assert_eq!(g.copy_weights(&cert), vec![1, 3, 1, 3]);
        assert_eq!(g.weight_histogram(&cert), [0, 2, 0, 2, 0]);
    }

    #[test]
    fn secure_configs() {
        assert_eq!(secure_dom_certificate(4).unwrap().count(), 7);
        assert_eq!(secure_dom_certificate(5).unwrap().count(), 8);
        assert_eq!(secure_dom_certificate(7).unwrap().count(), 11);
        assert_eq!(
            secure_dom_configs(8).unwrap(),
            cfgs(&["b", "cd", "bc", "d", "b", "cd", "bc", "cd"])
        );
        assert!(matches!(
            secure_dom_configs(3),
            Err(Error::NoCertificate { .. })
        ));
        let g = build_flower_snark(4).unwrap();
        assert!(is_secure_dominating(
            &g,
            &secure_dom_certificate(4).unwrap()
        ));
    }

    #[test]
    fn dispatch_examples() {
        let c = certificate(Variant::Domination, 9).unwrap();
        assert_eq!(c.size(), 9);
        assert!(c.copies().iter().all(|roles| roles == &["a"]));
        let r = certificate(Variant::Roman, 4).unwrap();
        assert_eq!(r.size(), 8);
        assert_eq!(r.copies()[0], vec!["a", "a"]);
        assert_eq!(certificate(Variant::Secure, 8).unwrap().size(), 13);
        assert!(certificate(Variant::WeakRoman, 3).is_err());
        let json = certificate(Variant::Total, 3).unwrap().to_json();
        assert_eq!(json["size"], 5);
        assert_eq!(json["variant"], "total");
        assert_eq!(json["copies"][1], serde_json::json!(["a", "c", "d"]));
    }

    #[test]
    fn fig5_pairs_are_minimal() {
        for n in [6, 8, 10] {
            let g = build_flower_snark(n).unwrap();
            let s = upper_dom_certificate(n).unwrap();
            assert!(is_minimal_dominating(&g, &s));
            assert_eq!(g.weight_histogram(&s), [0, n / 2, 0, n / 2, 0]);
        }
    }
}
