//! Generator words such as `a_9 a_12^2` parsed into exponent vectors.
//!
//! Symbols `a_1 .. a_n` are the independent generators in block order.
//! `a_{n+j}` names the dependent generator closing block `j`, equal to minus
//! the sum of that block's generators. The two-index form `a_{j,i}` is also
//! accepted, with `i = p` meaning the dependent generator.
//!
//! Fixture files hold one word per line; `#` starts a comment, blank lines
//! are skipped, and `1` denotes the identity.

use crate::error::{Error, Result};
use crate::fq::Subspace;
use crate::params::CoverParams;

/// Exponent vectors of every word in `text`, one per non-empty line.
pub fn parse_words(text: &str, params: &CoverParams) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim().trim_end_matches(',').trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_word(line, params).map_err(|e| match e {
            Error::MalformedWord { message, .. } => Error::MalformedWord { line: lineno + 1, message },
            other => other,
        })?);
    }
    Ok(out)
}

/// Canonical span of the words in `text`.
pub fn parse_generator_words(text: &str, params: &CoverParams) -> Result<Subspace> {
    let vecs = parse_words(text, params)?;
    Ok(Subspace::span(&vecs, params.n(), params.q()))
}

fn malformed(message: impl Into<String>) -> Error {
    Error::MalformedWord { line: 0, message: message.into() }
}

/// One word, e.g. `a_9 a_12^2`, `a_{9}a_{12}^{2}`, `a_{1,13}^-1`.
pub fn parse_word(word: &str, params: &CoverParams) -> Result<Vec<u32>> {
    let (n, q) = (params.n(), params.q());
    let mut acc = vec![0i64; n];
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    let skip_sep = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || matches!(chars[*i], '*' | '·' | '.')) {
            *i += 1;
        }
    };
    skip_sep(&mut i);
    if chars[i..].iter().collect::<String>() == "1" {
        return Ok(vec![0; n]);
    }
    while i < chars.len() {
        if chars[i] != 'a' {
            return Err(malformed(format!("expected generator symbol at '{}'", chars[i..].iter().collect::<String>())));
        }
        i += 1;
        if i >= chars.len() || chars[i] != '_' {
            return Err(malformed("expected '_' after 'a'"));
        }
        i += 1;
        let index = read_group(&chars, &mut i)?;
        let coords = resolve_index(&index, params)?;
        let mut exponent = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let e = read_group(&chars, &mut i)?;
            exponent = e.trim().parse::<i64>().map_err(|_| malformed(format!("bad exponent '{e}'")))?;
        }
        for (c, s) in coords {
            acc[c] += s * exponent;
        }
        skip_sep(&mut i);
    }
    Ok(acc.into_iter().map(|x| x.rem_euclid(q as i64) as u32).collect())
}

/// Reads `{...}` or a run of digits (with an optional leading '-').
fn read_group(chars: &[char], i: &mut usize) -> Result<String> {
    if *i < chars.len() && chars[*i] == '{' {
        let start = *i + 1;
        let end = chars[start..].iter().position(|&c| c == '}').ok_or_else(|| malformed("unclosed '{'"))?;
        *i = start + end + 1;
        return Ok(chars[start..start + end].iter().collect());
    }
    let start = *i;
    if *i < chars.len() && chars[*i] == '-' {
        *i += 1;
    }
    while *i < chars.len() && chars[*i].is_ascii_digit() {
        *i += 1;
    }
    if *i == start {
        return Err(malformed("expected a number"));
    }
    Ok(chars[start..*i].iter().collect())
}

/// Coordinates (with signs) of a generator symbol.
fn resolve_index(index: &str, params: &CoverParams) -> Result<Vec<(usize, i64)>> {
    let n = params.n();
    let d = params.p() as usize - 1;
    let blocks = params.blocks();
    let dependent = |j: usize| (0..d).map(|i| (j * d + i, -1)).collect::<Vec<_>>();
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| malformed(format!("bad index '{s}'")));
    if let Some((j, i)) = index.split_once(',') {
        let (j, i) = (parse(j)?, parse(i)?);
        if j == 0 || j > blocks {
            return Err(Error::IndexOutOfRange { index: j, max: blocks });
        }
        if i == 0 || i > d + 1 {
            return Err(Error::IndexOutOfRange { index: i, max: d + 1 });
        }
        return Ok(if i == d + 1 { dependent(j - 1) } else { vec![((j - 1) * d + i - 1, 1)] });
    }
    let k = parse(index)?;
    match k {
        0 => Err(Error::IndexOutOfRange { index: 0, max: n + blocks }),
        k if k <= n => Ok(vec![(k - 1, 1)]),
        k if k <= n + blocks => Ok(dependent(k - n - 1)),
        k => Err(Error::IndexOutOfRange { index: k, max: n + blocks }),
    }
}
