//! Line-oriented declarative text format for algebra inputs.
//!
//! A spec file declares one structure — a Lie algebra, a coalgebra, or a
//! necklace alphabet (a primitive coalgebra) — with explicit sections and
//! exact rational literals only (`p/q` or integers; no floats can enter the
//! system):
//!
//! ```text
//! kind lie-algebra
//! name sl2
//!
//! [basis]
//! # label  degree        (coalgebras: label degree weight)
//! e 0
//! f 0
//! h 0
//!
//! [bracket]
//! # [lhs, rhs] = comma-separated terms `coeff label` (coeff optional = 1);
//! # the opposite orientation is filled in by graded antisymmetry when absent
//! e f = h
//! h e = 2 e
//! h f = -2 f
//!
//! [differential]
//! # x = 1/2 y, -1 z
//!
//! [pairing]
//! degree -2
//! poincare-duality
//! # either explicit entries (label `1` is the counit row) …
//! v w = 1
//! 1 top = 1
//! # … or the single flag `berezin` on a lie-algebra spec, which builds the
//! # Chevalley–Eilenberg coalgebra and its top-form pairing
//! ```
//!
//! Coalgebra specs use `[coproduct]` (`c = coeff a b, …` for the reduced
//! coproduct `Δ̄`) instead of `[bracket]`, and their basis lines carry a
//! third weight column. Parsing resolves labels to indices; the caller runs
//! [`AlgebraSpecFile::validate`] to get full axiom checking with the same
//! diagnostics as programmatic construction.

use crate::fixtures::berezin_pairing;
use crate::input::{
    CoalgebraBasisElement, CoalgebraSpec, InputError, LieAlgebraSpec, Sparse,
};
use crate::pairing::CyclicPairing;
use crate::scalar::{sign_pow, Q};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("reading spec file: {0}")]
    Io(#[from] std::io::Error),
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError::Parse {
        line,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    LieAlgebra,
    Coalgebra,
    Necklace,
}

/// A parsed and resolved spec file.
#[derive(Debug, Clone)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub kind: SpecKind,
    /// Present for `kind lie-algebra`.
    pub lie: Option<LieAlgebraSpec>,
    /// Present for coalgebra/necklace kinds, and for a Lie algebra with a
    /// `berezin` pairing (the Chevalley–Eilenberg coalgebra).
    pub coalgebra: Option<CoalgebraSpec>,
    pub pairing: Option<CyclicPairing>,
}

impl AlgebraSpecFile {
    /// Run every module-level validation on the parsed structures.
    pub fn validate(&self) -> Result<(), SpecError> {
        if let Some(l) = &self.lie {
            l.validate()?;
        }
        if let Some(c) = &self.coalgebra {
            c.validate()?;
            if let Some(p) = &self.pairing {
                p.validate(c)?;
            }
        }
        Ok(())
    }
}

pub fn load(path: &std::path::Path) -> Result<AlgebraSpecFile, SpecError> {
    parse(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn parse_q(line: usize, tok: &str) -> Result<Q, SpecError> {
    crate::scalar::parse_rational(tok).or_else(|_| {
        perr(
            line,
            format!("`{tok}` is not an exact rational (integer or `p/q`)"),
        )
    })
}

fn is_rational(tok: &str) -> bool {
    crate::scalar::parse_rational(tok).is_ok()
}

/// One term of a right-hand side: optional rational coefficient followed by
/// `labels` label tokens.
fn parse_term(line: usize, term: &str, labels: usize) -> Result<(Q, Vec<String>), SpecError> {
    let toks: Vec<&str> = term.split_whitespace().collect();
    if toks.is_empty() {
        return perr(line, "empty term");
    }
    let (coeff, rest) = if is_rational(toks[0]) {
        (parse_q(line, toks[0])?, &toks[1..])
    } else {
        (Q::from_integer(1.into()), &toks[..])
    };
    if rest.len() != labels {
        return perr(
            line,
            format!(
                "term `{term}` should be an optional rational followed by {labels} label(s)"
            ),
        );
    }
    Ok((coeff, rest.iter().map(|s| s.to_string()).collect()))
}

fn rhs_terms(line: usize, rhs: &str, labels: usize) -> Result<Vec<(Q, Vec<String>)>, SpecError> {
    if rhs.trim().is_empty() || rhs.trim() == "0" {
        return Ok(Vec::new());
    }
    rhs.split(',').map(|t| parse_term(line, t, labels)).collect()
}

struct RawLine {
    line: usize,
    text: String,
}

pub fn parse(text: &str) -> Result<AlgebraSpecFile, SpecError> {
    let mut kind: Option<(usize, SpecKind)> = None;
    let mut name: Option<String> = None;
    let mut sections: BTreeMap<String, Vec<RawLine>> = BTreeMap::new();
    let mut current: Option<String> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let Some(section) = rest.strip_suffix(']') else {
                return perr(line, format!("malformed section header `{body}`"));
            };
            let section = section.trim().to_string();
            if !matches!(
                section.as_str(),
                "basis" | "bracket" | "coproduct" | "differential" | "pairing"
            ) {
                return perr(line, format!("unknown section `[{section}]`"));
            }
            if sections.contains_key(&section) {
                return perr(line, format!("duplicate section `[{section}]`"));
            }
            sections.insert(section.clone(), Vec::new());
            current = Some(section);
            continue;
        }
        match &current {
            None => {
                let mut it = body.splitn(2, char::is_whitespace);
                let key = it.next().unwrap_or("");
                let value = it.next().unwrap_or("").trim();
                match key {
                    "kind" => {
                        let k = match value {
                            "lie-algebra" => SpecKind::LieAlgebra,
                            "coalgebra" => SpecKind::Coalgebra,
                            "necklace" => SpecKind::Necklace,
                            other => {
                                return perr(
                                    line,
                                    format!(
                                        "unknown kind `{other}` (expected lie-algebra, coalgebra or necklace)"
                                    ),
                                )
                            }
                        };
                        kind = Some((line, k));
                    }
                    "name" => {
                        if value.is_empty() {
                            return perr(line, "`name` needs a value");
                        }
                        name = Some(value.to_string());
                    }
                    other => {
                        return perr(
                            line,
                            format!("unexpected `{other}` before the first section"),
                        )
                    }
                }
            }
            Some(section) => sections.get_mut(section).unwrap().push(RawLine {
                line,
                text: body.to_string(),
            }),
        }
    }

    let Some((_, kind)) = kind else {
        return perr(1, "missing `kind` declaration");
    };
    let name = name.ok_or(SpecError::Parse {
        line: 1,
        msg: "missing `name` declaration".into(),
    })?;
    let basis = sections.remove("basis").ok_or(SpecError::Parse {
        line: 1,
        msg: "missing `[basis]` section".into(),
    })?;

    match kind {
        SpecKind::LieAlgebra => parse_lie(name, basis, sections),
        SpecKind::Coalgebra | SpecKind::Necklace => parse_coalgebra(name, kind, basis, sections),
    }
}

fn forbid(
    sections: &BTreeMap<String, Vec<RawLine>>,
    banned: &[&str],
    kind: &str,
) -> Result<(), SpecError> {
    for b in banned {
        if let Some(lines) = sections.get(*b) {
            let line = lines.first().map_or(1, |l| l.line).saturating_sub(1);
            return perr(line.max(1), format!("section `[{b}]` is not allowed in a {kind} spec"));
        }
    }
    Ok(())
}

fn parse_lie(
    name: String,
    basis_lines: Vec<RawLine>,
    mut sections: BTreeMap<String, Vec<RawLine>>,
) -> Result<AlgebraSpecFile, SpecError> {
    forbid(&sections, &["coproduct"], "lie-algebra")?;
    let mut basis: Vec<(String, i64)> = Vec::new();
    for l in &basis_lines {
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        let [label, degree] = toks.as_slice() else {
            return perr(l.line, "basis line should be `label degree`");
        };
        if basis.iter().any(|(b, _)| b == label) {
            return perr(l.line, format!("duplicate basis label `{label}`"));
        }
        let degree: i64 = degree
            .parse()
            .or_else(|_| perr(l.line, format!("`{degree}` is not an integer degree")))?;
        basis.push((label.to_string(), degree));
    }
    let index = |line: usize, label: &str| -> Result<usize, SpecError> {
        basis
            .iter()
            .position(|(b, _)| b == label)
            .map_or_else(|| perr(line, format!("unknown basis label `{label}`")), Ok)
    };

    let mut brackets: BTreeMap<(usize, usize), Sparse> = BTreeMap::new();
    let mut explicit: Vec<(usize, usize)> = Vec::new();
    for l in sections.remove("bracket").unwrap_or_default() {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return perr(l.line, "bracket line should be `x y = terms`");
        };
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let [x, y] = lhs.as_slice() else {
            return perr(l.line, "bracket left-hand side should be two labels");
        };
        let (i, j) = (index(l.line, x)?, index(l.line, y)?);
        if brackets.contains_key(&(i, j)) {
            return perr(l.line, format!("duplicate bracket [{x},{y}]"));
        }
        let mut sparse: Sparse = Vec::new();
        for (c, labels) in rhs_terms(l.line, rhs, 1)? {
            sparse.push((index(l.line, &labels[0])?, c));
        }
        brackets.insert((i, j), sparse);
        explicit.push((i, j));
    }
    // fill the opposite orientation by graded antisymmetry when absent
    for (i, j) in explicit {
        if i != j && !brackets.contains_key(&(j, i)) {
            let s = sign_pow(basis[i].1 * basis[j].1) * Q::from_integer((-1).into());
            let flipped = brackets[&(i, j)]
                .iter()
                .map(|(k, c)| (*k, c * &s))
                .collect();
            brackets.insert((j, i), flipped);
        }
    }

    let mut differential: BTreeMap<usize, Sparse> = BTreeMap::new();
    for l in sections.remove("differential").unwrap_or_default() {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return perr(l.line, "differential line should be `x = terms`");
        };
        let i = index(l.line, lhs.trim())?;
        let mut sparse: Sparse = Vec::new();
        for (c, labels) in rhs_terms(l.line, rhs, 1)? {
            sparse.push((index(l.line, &labels[0])?, c));
        }
        differential.insert(i, sparse);
    }

    let lie = LieAlgebraSpec {
        name: name.clone(),
        basis,
        brackets,
        differential,
    };

    let mut coalgebra = None;
    let mut pairing = None;
    if let Some(lines) = sections.remove("pairing") {
        let flags: Vec<&str> = lines.iter().map(|l| l.text.as_str()).collect();
        let first = lines.first().map_or(1, |l| l.line);
        if flags != ["berezin"] {
            return perr(
                first,
                "a lie-algebra pairing section supports exactly the single flag `berezin`",
            );
        }
        let (c, p) = berezin_pairing(&lie);
        coalgebra = Some(c);
        pairing = Some(p);
    }

    Ok(AlgebraSpecFile {
        name,
        kind: SpecKind::LieAlgebra,
        lie: Some(lie),
        coalgebra,
        pairing,
    })
}

fn parse_coalgebra(
    name: String,
    kind: SpecKind,
    basis_lines: Vec<RawLine>,
    mut sections: BTreeMap<String, Vec<RawLine>>,
) -> Result<AlgebraSpecFile, SpecError> {
    forbid(&sections, &["bracket"], "coalgebra")?;
    if kind == SpecKind::Necklace {
        forbid(&sections, &["coproduct", "differential"], "necklace")?;
    }
    let mut basis: Vec<CoalgebraBasisElement> = Vec::new();
    for l in &basis_lines {
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        let (label, degree, weight) = match toks.as_slice() {
            [label, degree] => (*label, *degree, "1"),
            [label, degree, weight] => (*label, *degree, *weight),
            _ => return perr(l.line, "basis line should be `label degree [weight]`"),
        };
        if basis.iter().any(|b| b.label == label) {
            return perr(l.line, format!("duplicate basis label `{label}`"));
        }
        let degree: i64 = degree
            .parse()
            .or_else(|_| perr(l.line, format!("`{degree}` is not an integer degree")))?;
        let weight: u32 = weight
            .parse()
            .or_else(|_| perr(l.line, format!("`{weight}` is not a positive integer weight")))?;
        basis.push(CoalgebraBasisElement {
            label: label.to_string(),
            degree,
            weight,
        });
    }
    let index = |line: usize, label: &str| -> Result<usize, SpecError> {
        basis
            .iter()
            .position(|b| b.label == label)
            .map_or_else(|| perr(line, format!("unknown basis label `{label}`")), Ok)
    };

    let mut coproduct: BTreeMap<usize, Vec<(usize, usize, Q)>> = BTreeMap::new();
    for l in sections.remove("coproduct").unwrap_or_default() {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return perr(l.line, "coproduct line should be `c = terms`");
        };
        let i = index(l.line, lhs.trim())?;
        let mut terms = Vec::new();
        for (c, labels) in rhs_terms(l.line, rhs, 2)? {
            terms.push((index(l.line, &labels[0])?, index(l.line, &labels[1])?, c));
        }
        coproduct.insert(i, terms);
    }

    let mut differential: BTreeMap<usize, Sparse> = BTreeMap::new();
    for l in sections.remove("differential").unwrap_or_default() {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return perr(l.line, "differential line should be `c = terms`");
        };
        let i = index(l.line, lhs.trim())?;
        let mut sparse: Sparse = Vec::new();
        for (c, labels) in rhs_terms(l.line, rhs, 1)? {
            sparse.push((index(l.line, &labels[0])?, c));
        }
        differential.insert(i, sparse);
    }

    let mut pairing = None;
    if let Some(lines) = sections.remove("pairing") {
        let mut degree: Option<i64> = None;
        let mut pd = false;
        let mut pname = format!("{name}-pairing");
        let mut entries: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        let mut unit: BTreeMap<usize, Q> = BTreeMap::new();
        for l in &lines {
            if let Some((lhs, rhs)) = l.text.split_once('=') {
                let lhs: Vec<&str> = lhs.split_whitespace().collect();
                let [a, b] = lhs.as_slice() else {
                    return perr(l.line, "pairing entry should be `a b = rational`");
                };
                let v = parse_q(l.line, rhs.trim())?;
                if v.is_zero() {
                    continue;
                }
                match (*a, *b) {
                    ("1", "1") => {
                        return perr(l.line, "⟨1,1⟩ entries are not supported");
                    }
                    ("1", c) | (c, "1") => {
                        unit.insert(index(l.line, c)?, v);
                    }
                    (a, b) => {
                        entries.insert((index(l.line, a)?, index(l.line, b)?), v);
                    }
                }
                continue;
            }
            let toks: Vec<&str> = l.text.split_whitespace().collect();
            match toks.as_slice() {
                ["degree", d] => {
                    degree = Some(d.parse().or_else(|_| {
                        perr(l.line, format!("`{d}` is not an integer degree"))
                    })?);
                }
                ["poincare-duality"] | ["symplectic"] => pd = toks[0] == "poincare-duality",
                ["name", n] => pname = n.to_string(),
                _ => {
                    return perr(
                        l.line,
                        format!("unexpected pairing line `{}`", l.text),
                    )
                }
            }
        }
        let Some(degree) = degree else {
            let line = lines.first().map_or(1, |l| l.line);
            return perr(line, "pairing section is missing its `degree` line");
        };
        pairing = Some(CyclicPairing::new(pname, degree, entries, unit, pd));
    }

    let coalgebra = CoalgebraSpec {
        name: name.clone(),
        basis,
        coproduct,
        differential,
        cocommutative: true,
    };

    Ok(AlgebraSpecFile {
        name,
        kind,
        lie: None,
        coalgebra: Some(coalgebra),
        pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::qi;

    const SL2: &str = "\
kind lie-algebra
name sl2

[basis]
e 0
f 0
h 0

[bracket]
e f = h
h e = 2 e
h f = -2 f
";

    #[test]
    fn sl2_spec_parses_and_matches_the_fixture() {
        let spec = parse(SL2).unwrap();
        spec.validate().unwrap();
        let lie = spec.lie.unwrap();
        let reference = fixtures::sl2();
        assert_eq!(lie.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut got = lie.bracket(i, j);
                let mut want = reference.bracket(i, j);
                got.sort();
                want.sort();
                got.retain(|(_, c)| !c.is_zero());
                want.retain(|(_, c)| !c.is_zero());
                assert_eq!(got, want, "[{i},{j}]");
            }
        }
    }

    #[test]
    fn necklace_spec_with_pairing_matches_the_fixture() {
        let text = "\
kind necklace
name necklace

[basis]
v 1 1
w 1 1

[pairing]
degree -2
symplectic
v w = 1
w v = -1
";
        let spec = parse(text).unwrap();
        spec.validate().unwrap();
        let p = spec.pairing.unwrap();
        assert_eq!(p.value(0, 1), qi(1));
        assert_eq!(p.value(1, 0), qi(-1));
        assert_eq!(p.degree, -2);
        assert!(!p.poincare_duality);
    }

    #[test]
    fn berezin_flag_builds_the_ce_coalgebra_and_pairing() {
        let text = format!("{SL2}\n[pairing]\nberezin\n");
        let spec = parse(&text).unwrap();
        spec.validate().unwrap();
        let c = spec.coalgebra.unwrap();
        let p = spec.pairing.unwrap();
        let (cr, pr) = fixtures::sl2_unimodular();
        assert_eq!(c.dim(), cr.dim());
        for i in 0..c.dim() {
            assert_eq!(c.label(i), cr.label(i));
            for j in 0..c.dim() {
                assert_eq!(p.value(i, j), pr.value(i, j));
            }
        }
    }

    #[test]
    fn coalgebra_spec_with_coproduct_and_differential() {
        // the CE coalgebra of the 2-dim abelian algebra, written by hand
        let text = "\
kind coalgebra
name abelian2-ce

[basis]
sx 1 1
sy 1 1
sxy 2 2

[coproduct]
sxy = sx sy, -1 sy sx

[differential]
";
        let spec = parse(text).unwrap();
        spec.validate().unwrap();
        let c = spec.coalgebra.unwrap();
        assert_eq!(c.reduced_coproduct(2).len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("name x\n", 1, "missing `kind`"),
            ("kind widget\nname x\n", 1, "unknown kind"),
            (
                "kind lie-algebra\nname x\n[basis]\ne 0\n[orbit]\n",
                5,
                "unknown section",
            ),
            (
                "kind lie-algebra\nname x\n[basis]\ne zero\n",
                4,
                "not an integer degree",
            ),
            (
                "kind lie-algebra\nname x\n[basis]\ne 0\n[bracket]\ne q = e\n",
                6,
                "unknown basis label `q`",
            ),
            (
                "kind lie-algebra\nname x\n[basis]\ne 0\n[bracket]\ne e = 0.5 e\n",
                6,
                "should be an optional rational",
            ),
            (
                "kind necklace\nname x\n[basis]\nv 1 1\n[coproduct]\nv = v v\n",
                5,
                "not allowed in a necklace",
            ),
        ];
        for (text, line, needle) in cases {
            let err = parse(text).unwrap_err();
            let msg = err.to_string();
            assert!(
                msg.contains(needle),
                "expected `{needle}` in `{msg}`"
            );
            assert!(
                msg.contains(&format!("line {line}")),
                "expected line {line} in `{msg}`"
            );
        }
    }

    #[test]
    fn exact_rationals_round_trip_through_terms() {
        let text = "\
kind lie-algebra
name scaled

[basis]
a 0
b 0
c 0

[bracket]
a b = 2/3 c, -1/6 a
";
        let spec = parse(text).unwrap();
        let lie = spec.lie.unwrap();
        let br = lie.bracket(0, 1);
        assert_eq!(br, vec![(2, crate::scalar::qr(2, 3)), (0, crate::scalar::qr(-1, 6))]);
        // graded antisymmetry autofill on degree-0 elements
        let rev = lie.bracket(1, 0);
        assert_eq!(rev, vec![(2, crate::scalar::qr(-2, 3)), (0, crate::scalar::qr(1, 6))]);
    }
}
