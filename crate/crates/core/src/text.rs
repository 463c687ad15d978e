//! Tokenizer shared by the field, polynomial, fraction and matrix grammars.
//!
//! Every scalar grammar in the crate is a signed sum of `*`-separated
//! products whose factors are integers, powers of a named generator, or
//! parenthesized sub-expressions. Callers interpret the factors.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Factor {
    Int(i64),
    Var { name: String, exp: u32 },
    Group(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

/// Split `s` at top-level occurrences of any char in `seps`, ignoring
/// separators nested inside parentheses. Returns the pieces together with
/// the separator that preceded each one (`None` for the first).
pub(crate) fn split_top_level(s: &str, seps: &[char]) -> Result<Vec<(Option<char>, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut lead: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
                }
                current.push(ch);
            }
            c if depth == 0 && seps.contains(&c) => {
                out.push((lead, std::mem::take(&mut current)));
                lead = Some(c);
            }
            c => current.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    out.push((lead, current));
    Ok(out)
}

fn parse_factor(raw: &str) -> Result<Factor> {
    if raw.is_empty() {
        return Err(Error::Parse("empty factor".into()));
    }
    if let Some(inner) = raw.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad group `{raw}`")))?;
        return Ok(Factor::Group(inner.to_string()));
    }
    if raw.chars().all(|c| c.is_ascii_digit()) {
        return raw
            .parse::<i64>()
            .map(Factor::Int)
            .map_err(|e| Error::Parse(format!("`{raw}`: {e}")));
    }
    let (name, exp) = match raw.split_once('^') {
        Some((name, exp)) => {
            let exp = exp
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("exponent in `{raw}`: {e}")))?;
            (name, exp)
        }
        None => (raw, 1),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(Error::Parse(format!("unrecognized factor `{raw}`")));
    }
    Ok(Factor::Var {
        name: name.to_string(),
        exp,
    })
}

/// Parse a signed sum of products. Whitespace is ignored.
pub(crate) fn parse_sum(s: &str) -> Result<Vec<Term>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    for (idx, (sep, piece)) in split_top_level(&compact, &['+', '-'])?
        .into_iter()
        .enumerate()
    {
        if piece.is_empty() {
            // a leading sign produces an empty first piece
            if idx == 0 {
                continue;
            }
            return Err(Error::Parse(format!("dangling operator in `{s}`")));
        }
        let factors = split_top_level(&piece, &['*'])?
            .into_iter()
            .map(|(_, f)| parse_factor(&f))
            .collect::<Result<Vec<_>>>()?;
        terms.push(Term {
            negative: sep == Some('-'),
            factors,
        });
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("no terms in `{s}`")));
    }
    Ok(terms)
}
