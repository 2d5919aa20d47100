use crate::error::{ParseError, Result};

use super::SimplicialComplex;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Segment<'a> {
    tokens: Vec<Token<'a>>,
    line: usize,
    column: usize,
}

/// Splits on `;` and whitespace, tracking 1-based line/column of every token.
/// `#` starts a comment running to the end of the line.
fn segments(text: &str) -> Vec<Segment<'_>> {
    let mut out = Vec::new();
    let mut current = Segment {
        tokens: Vec::new(),
        line: 1,
        column: 1,
    };
    let (mut line, mut column) = (1, 1);
    let mut token_start: Option<(usize, usize, usize)> = None;
    let mut in_comment = false;
    for (idx, ch) in text.char_indices() {
        let boundary = in_comment || ch.is_whitespace() || ch == ';' || ch == '#';
        if boundary {
            if let Some((start, l, c)) = token_start.take() {
                current.tokens.push(Token {
                    text: &text[start..idx],
                    line: l,
                    column: c,
                });
            }
        } else if token_start.is_none() {
            token_start = Some((idx, line, column));
        }
        if ch == '#' {
            in_comment = true;
        }
        if ch == ';' && !in_comment {
            let next = Segment {
                tokens: Vec::new(),
                line,
                column: column + 1,
            };
            out.push(std::mem::replace(&mut current, next));
        }
        if ch == '\n' {
            in_comment = false;
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    if let Some((start, l, c)) = token_start {
        current.tokens.push(Token {
            text: &text[start..],
            line: l,
            column: c,
        });
    }
    out.push(current);
    out
}

pub(super) fn parse_facet_list(text: &str) -> Result<SimplicialComplex> {
    let mut segs = segments(text);
    // A trailing `;` leaves one empty segment behind; it is not a facet.
    if segs.len() > 1 && segs.last().is_some_and(|s| s.tokens.is_empty()) {
        segs.pop();
    }
    let mut declared_m = None;
    let mut start = 0;
    if let Some(first) = segs.first() {
        if let Some(tok) = first.tokens.first() {
            if let Some(value) = tok.text.strip_prefix("m=") {
                if first.tokens.len() > 1 {
                    let extra = &first.tokens[1];
                    return Err(ParseError::Malformed {
                        line: extra.line,
                        column: extra.column,
                        message: format!("unexpected '{}' after header", extra.text),
                    }
                    .into());
                }
                let m: usize = value.parse().map_err(|_| ParseError::Malformed {
                    line: tok.line,
                    column: tok.column,
                    message: format!("bad vertex count '{value}'"),
                })?;
                declared_m = Some(m);
                start = 1;
            }
        }
    }
    if segs.len() == 1 && segs[0].tokens.is_empty() {
        return Ok(SimplicialComplex::empty(declared_m.unwrap_or(0)));
    }

    let mut facets: Vec<(Vec<usize>, Vec<(usize, usize, i64)>)> = Vec::new();
    for seg in &segs[start..] {
        if seg.tokens.is_empty() {
            return Err(ParseError::EmptyFacet {
                line: seg.line,
                column: seg.column,
            }
            .into());
        }
        let mut facet = Vec::new();
        let mut positions = Vec::new();
        for tok in &seg.tokens {
            let v: i64 = tok.text.parse().map_err(|_| ParseError::Malformed {
                line: tok.line,
                column: tok.column,
                message: format!("expected a vertex index, found '{}'", tok.text),
            })?;
            if v < 1 {
                return Err(ParseError::VertexOutOfRange {
                    line: tok.line,
                    column: tok.column,
                    vertex: v,
                    m: declared_m.unwrap_or(0),
                }
                .into());
            }
            if facet.contains(&(v as usize)) {
                return Err(ParseError::Malformed {
                    line: tok.line,
                    column: tok.column,
                    message: format!("vertex {v} repeated within a facet"),
                }
                .into());
            }
            facet.push(v as usize);
            positions.push((tok.line, tok.column, v));
        }
        facets.push((facet, positions));
    }

    let m = match declared_m {
        Some(m) => {
            for (_, positions) in &facets {
                if let Some(&(line, column, vertex)) = positions.iter().find(|p| p.2 as usize > m) {
                    return Err(ParseError::VertexOutOfRange { line, column, vertex, m }.into());
                }
            }
            m
        }
        None => facets.iter().flat_map(|(f, _)| f.iter().copied()).max().unwrap_or(0),
    };
    SimplicialComplex::new(m, facets.into_iter().map(|(f, _)| f))
}
