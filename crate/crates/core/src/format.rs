//! Text interchange formats.
//!
//! * plus-triple form: `n=6 {235,236,245}`; triples absent from the set are
//!   Minus. For `n <= 9` a triple is its three concatenated digits, for
//!   larger `n` it is written `i-j-k` (the dashed form is accepted for any `n`).
//! * sign-string form: `n=4 ++-+`, one sign per triple in lex order.
//! * JSON: `{"n":6,"plus_triples":[[2,3,5],...]}` or `{"n":4,"signs":"++-+"}`.
//!
//! Serializers always emit the plus-triple form with triples ascending by
//! rank. In canonical comparisons Minus sorts before Plus.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::signotope::{validate, Signotope};
use crate::triples::{binomial, layout, MAX_ELEMENTS};

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

/// Parses either text form without checking the forbidden patterns.
pub fn parse_raw(text: &str) -> Result<(usize, Vec<Sign>)> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.starts_with('{') {
        return parse_json_raw(body, lead);
    }
    let Some(rest) = body.strip_prefix("n=") else {
        return perr(lead, "expected `n=<count>`");
    };
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return perr(lead + 2, "expected element count after `n=`");
    }
    let n: usize = rest[..digits]
        .parse()
        .map_err(|_| Error::Parse { pos: lead + 2, msg: "element count too large".into() })?;
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return perr(lead + 2, format!("element count {n} outside 3..={MAX_ELEMENTS}"));
    }
    let after = &rest[digits..];
    let payload = after.trim_start();
    let offset = lead + 2 + digits + (after.len() - payload.len());
    if payload.len() == after.len() && !after.is_empty() {
        return perr(offset, "expected whitespace after element count");
    }
    if payload.starts_with('{') {
        parse_plus_set(n, payload, offset).map(|s| (n, s))
    } else {
        parse_sign_payload(n, payload, offset).map(|s| (n, s))
    }
}

/// Parses and validates a signotope.
pub fn parse(text: &str) -> Result<Signotope> {
    let (n, signs) = parse_raw(text)?;
    validate(n, &signs)
}

fn parse_sign_payload(n: usize, payload: &str, offset: usize) -> Result<Vec<Sign>> {
    let expected = binomial(n as u64, 3) as usize;
    let mut signs = Vec::with_capacity(expected);
    for (k, c) in payload.char_indices() {
        match Sign::from_char(c) {
            Some(s) => signs.push(s),
            None => return perr(offset + k, format!("unexpected character {c:?} in sign string")),
        }
    }
    if signs.len() != expected {
        return perr(
            offset,
            format!("sign string has length {}, expected C({n},3) = {expected}", signs.len()),
        );
    }
    Ok(signs)
}

fn parse_plus_set(n: usize, payload: &str, offset: usize) -> Result<Vec<Sign>> {
    let Some(inner) = payload.strip_prefix('{').and_then(|p| p.strip_suffix('}')) else {
        return perr(offset, "plus-triple set must be enclosed in braces");
    };
    let l = layout(n);
    let mut signs = vec![Sign::Minus; l.len()];
    if inner.trim().is_empty() {
        return Ok(signs);
    }
    let mut pos = offset + 1;
    for token in inner.split(',') {
        let tpos = pos + (token.len() - token.trim_start().len());
        pos += token.len() + 1;
        let t = token.trim();
        let parts: Vec<usize> = if t.contains('-') {
            let parsed: std::result::Result<Vec<usize>, _> = t.split('-').map(str::parse).collect();
            match parsed {
                Ok(v) => v,
                Err(_) => return perr(tpos, format!("malformed triple {t:?}")),
            }
        } else if n <= 9 && t.len() == 3 && t.bytes().all(|b| b.is_ascii_digit()) {
            t.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            return perr(tpos, format!("malformed triple {t:?}"));
        };
        let [i, j, k] = parts[..] else {
            return perr(tpos, format!("malformed triple {t:?}"));
        };
        if !(1 <= i && i < j && j < k && k <= n) {
            return perr(tpos, format!("triple {t:?} is not a sorted triple of 1..={n}"));
        }
        let r = l.rank(i as u8, j as u8, k as u8);
        if signs[r] == Sign::Plus {
            return perr(tpos, format!("duplicate triple {t:?}"));
        }
        signs[r] = Sign::Plus;
    }
    Ok(signs)
}

/// Plus-triple form, triples ascending by rank.
pub fn to_triples_text(s: &Signotope) -> String {
    let n = s.n();
    let tokens: Vec<String> = s
        .plus_triples()
        .iter()
        .map(|&[i, j, k]| {
            if n <= 9 {
                format!("{i}{j}{k}")
            } else {
                format!("{i}-{j}-{k}")
            }
        })
        .collect();
    format!("n={n} {{{}}}", tokens.join(","))
}

/// Sign-string form.
pub fn to_signs_text(s: &Signotope) -> String {
    format!("n={} {}", s.n(), s.sign_string())
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plus_triples: Option<Vec<[u8; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<String>,
}

fn json_to_raw(j: JsonForm, pos: usize) -> Result<(usize, Vec<Sign>)> {
    let n = j.n;
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return perr(pos, format!("element count {n} outside 3..={MAX_ELEMENTS}"));
    }
    match (j.plus_triples, j.signs) {
        (Some(triples), None) => {
            let text: Vec<String> = triples.iter().map(|[i, k, m]| format!("{i}-{k}-{m}")).collect();
            parse_plus_set(n, &format!("{{{}}}", text.join(",")), pos)
        }
        (None, Some(signs)) => parse_sign_payload(n, &signs, pos),
        _ => perr(pos, "JSON object needs exactly one of `plus_triples` or `signs`"),
    }
    .map(|s| (n, s))
}

fn parse_json_raw(body: &str, pos: usize) -> Result<(usize, Vec<Sign>)> {
    let j: JsonForm = serde_json::from_str(body).map_err(|e| Error::Parse {
        pos: pos + e.column().saturating_sub(1),
        msg: e.to_string(),
    })?;
    json_to_raw(j, pos)
}

/// JSON mirror of the plus-triple form.
pub fn to_json(s: &Signotope) -> serde_json::Value {
    serde_json::json!({ "n": s.n(), "plus_triples": s.plus_triples() })
}

impl Serialize for Signotope {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        JsonForm {
            n: self.n(),
            plus_triples: Some(self.plus_triples()),
            signs: None,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Signotope {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = JsonForm::deserialize(de)?;
        let (n, signs) = json_to_raw(j, 0).map_err(serde::de::Error::custom)?;
        validate(n, &signs).map_err(serde::de::Error::custom)
    }
}

/// One parsed line of a signotope file.
#[derive(Debug)]
pub struct Entry {
    /// 1-based line number.
    pub line: usize,
    pub parsed: Result<(usize, Vec<Sign>)>,
}

/// Parses a file with one object per line; blank lines and `#` comments are
/// skipped.
pub fn parse_lines(text: &str) -> Vec<Entry> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(k, l)| Entry {
            line: k + 1,
            parsed: parse_raw(l),
        })
        .collect()
}
