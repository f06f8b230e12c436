//! Plain-text Hecke expressions: lines `term COEFF w i1 i2 ...` (1-based
//! generator indices, an empty word for `T_e`), blocks closed by `end`, and
//! matrices `matrix n` followed by `n²` blocks in row-major order.

use crate::{content_line, ParseError};

use super::{Coefficient, HeckeAlgebra, HeckeElement, HeckeMatrix};

enum Line<C> {
    Term(Vec<usize>, C),
    End,
    Matrix(usize),
}

fn parse_line<C: Coefficient>(alg: &HeckeAlgebra<C>, line_no: usize, line: &str) -> Result<Line<C>, ParseError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        ["end"] => Ok(Line::End),
        ["matrix", n] => n
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 1)
            .map(Line::Matrix)
            .ok_or_else(|| ParseError::new(line_no, format!("invalid matrix size {n:?}"))),
        ["term", c, "w", word @ ..] => {
            let coeff = C::parse(c).map_err(|e| ParseError::new(line_no, e.to_string()))?;
            let rank = alg.system().rank();
            let mut gens = Vec::with_capacity(word.len());
            for t in word {
                match t.parse::<usize>() {
                    Ok(i) if (1..=rank).contains(&i) => gens.push(i - 1),
                    _ => {
                        return Err(ParseError::new(
                            line_no,
                            format!("invalid generator index {t:?}: expected 1..={rank}"),
                        ))
                    }
                }
            }
            Ok(Line::Term(gens, coeff))
        }
        _ => Err(ParseError::new(
            line_no,
            format!("expected `term COEFF w i1 i2 ...`, `end` or `matrix n`, got {line:?}"),
        )),
    }
}

fn add_term<C: Coefficient>(
    alg: &HeckeAlgebra<C>,
    acc: &mut HeckeElement<C>,
    word: &[usize],
    c: C,
    line_no: usize,
) -> Result<(), ParseError> {
    let w = alg.system().normal_form(word).map_err(|e| ParseError::new(line_no, e.to_string()))?;
    *acc = alg
        .add(acc, &alg.element([(w, c)]))
        .map_err(|e| ParseError::new(line_no, e.to_string()))?;
    Ok(())
}

/// All `end`-terminated blocks; a final block may omit `end`.
pub fn parse_elements<C: Coefficient>(alg: &HeckeAlgebra<C>, text: &str) -> Result<Vec<HeckeElement<C>>, ParseError> {
    let mut out = Vec::new();
    let mut current = alg.zero();
    let mut open = false;
    for (n, raw) in text.lines().enumerate() {
        let Some(line) = content_line(raw) else { continue };
        match parse_line(alg, n + 1, line)? {
            Line::Term(word, c) => {
                add_term(alg, &mut current, &word, c, n + 1)?;
                open = true;
            }
            Line::End => {
                out.push(std::mem::replace(&mut current, alg.zero()));
                open = false;
            }
            Line::Matrix(_) => return Err(ParseError::new(n + 1, "unexpected `matrix` in an element file")),
        }
    }
    if open {
        out.push(current);
    }
    Ok(out)
}

/// A single element: the sum of all `term` lines (`end` optional).
pub fn parse_element<C: Coefficient>(alg: &HeckeAlgebra<C>, text: &str) -> Result<HeckeElement<C>, ParseError> {
    let blocks = parse_elements(alg, text)?;
    match blocks.len() {
        0 => Ok(alg.zero()),
        1 => Ok(blocks.into_iter().next().expect("one block")),
        k => Err(ParseError::new(0, format!("expected one element, found {k} blocks"))),
    }
}

pub fn parse_matrix<C: Coefficient>(alg: &HeckeAlgebra<C>, text: &str) -> Result<HeckeMatrix<C>, ParseError> {
    let mut size: Option<usize> = None;
    let mut entries = Vec::new();
    let mut current = alg.zero();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let Some(line) = content_line(raw) else { continue };
        last_line = n + 1;
        match parse_line(alg, n + 1, line)? {
            Line::Matrix(k) => {
                if size.is_some() {
                    return Err(ParseError::new(n + 1, "duplicate `matrix` header"));
                }
                size = Some(k);
            }
            _ if size.is_none() => return Err(ParseError::new(n + 1, "expected `matrix n` first")),
            Line::Term(word, c) => add_term(alg, &mut current, &word, c, n + 1)?,
            Line::End => {
                if entries.len() == size.unwrap_or(0).pow(2) {
                    return Err(ParseError::new(n + 1, "more entries than n²"));
                }
                entries.push(std::mem::replace(&mut current, alg.zero()));
            }
        }
    }
    let n = size.ok_or_else(|| ParseError::new(0, "missing `matrix n` header"))?;
    if entries.len() != n * n {
        return Err(ParseError::new(
            last_line,
            format!("expected {} entry blocks, found {}", n * n, entries.len()),
        ));
    }
    HeckeMatrix::new(n, entries).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Inverse of [`parse_element`], closed with `end`.
pub fn format_element<C: Coefficient>(a: &HeckeElement<C>) -> String {
    let mut out = String::new();
    for (w, c) in a.terms() {
        out.push_str(&format!("term {c} w"));
        for s in w.word() {
            out.push_str(&format!(" {}", s + 1));
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}
