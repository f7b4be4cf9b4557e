//! Text syntax for algebras, weights and Borel words.
//!
//! Algebras: `gl(2|1)`, `sl(3|1)`, `osp(3|2)`, `D(2,1;1/2)`, `F(4)`, `G(3)`.
//! Weights: `2d1+3e1-e2`, `1/2e1`, `0`, or the coordinate form `(1|2,0)`.
//! Borel words: `e1 d1 e2`, `-e2` for the signed last ε of osp(2d|2n), or `distinguished`.
//! Positions in diagnostics are 0-based character offsets.

use crate::error::{Error, Result};
use crate::root_datum::{BorelData, BorelWord, Family, RootDatum, Symbol, SymbolKind};
use crate::weight::{WeightVector, Q};
use num_traits::{Signed, Zero};
use std::iter::Peekable;
use std::str::CharIndices;
use std::sync::Arc;

struct Cursor<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            chars: text.char_indices().peekable(),
        }
    }

    /// Character offset of the next unread character.
    fn pos(&mut self) -> usize {
        let byte = self
            .chars
            .peek()
            .map(|(i, _)| *i)
            .unwrap_or(self.text.len());
        self.text[..byte].chars().count()
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        self.chars.next().map(|(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(x) if x == c => Ok(()),
            Some(x) => Err(Error::parse(pos, format!("expected '{c}', found '{x}'"))),
            None => Err(Error::parse(
                pos,
                format!("expected '{c}', found end of input"),
            )),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn unsigned(&mut self, what: &str) -> Result<u64> {
        let pos = self.pos();
        let d = self.digits().ok_or_else(|| self.unexpected(pos, what))?;
        d.parse()
            .map_err(|_| Error::parse(pos, format!("{what} {d} is too large")))
    }

    /// `a` or `a/b`, optionally signed.
    fn rational(&mut self, what: &str) -> Result<Q> {
        let negative = self.eat('-');
        let num = self.unsigned(what)? as i64;
        let den = if self.eat('/') {
            let pos = self.pos();
            let d = self.unsigned("denominator")? as i64;
            if d == 0 {
                return Err(Error::parse(pos, "zero denominator"));
            }
            d
        } else {
            1
        };
        let v = Q::new(num, den);
        Ok(if negative { -v } else { v })
    }

    fn unexpected(&mut self, pos: usize, what: &str) -> Error {
        match self.text.chars().nth(pos) {
            Some(c) => Error::parse(pos, format!("expected {what}, found '{c}'")),
            None => Error::parse(pos, format!("expected {what}, found end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        let pos = self.pos();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(pos, format!("unexpected trailing '{c}'"))),
        }
    }
}

/// Parse an algebra name into its family.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let pos = cur.pos();
    let mut name = String::new();
    while let Some(c) = cur.peek().filter(|c| c.is_ascii_alphabetic()) {
        name.push(c);
        cur.bump();
    }
    cur.skip_ws();
    cur.expect('(')?;
    cur.skip_ws();
    let family = match name.as_str() {
        "gl" | "sl" | "osp" => {
            let m = cur.unsigned("a dimension")? as usize;
            cur.skip_ws();
            cur.expect('|')?;
            cur.skip_ws();
            let n_pos = cur.pos();
            let n = cur.unsigned("a dimension")? as usize;
            match name.as_str() {
                "gl" => Family::Gl { m, n },
                "sl" => Family::Sl { m, n },
                _ => {
                    if n % 2 != 0 {
                        return Err(Error::parse(
                            n_pos,
                            format!("osp(m|2n) needs an even second entry, got {n}"),
                        ));
                    }
                    Family::Osp { m, n: n / 2 }
                }
            }
        }
        "D" => {
            let p = cur.pos();
            let two = cur.unsigned("2")?;
            cur.skip_ws();
            cur.expect(',')?;
            cur.skip_ws();
            let q1 = cur.pos();
            let one = cur.unsigned("1")?;
            if two != 2 {
                return Err(Error::parse(p, "expected D(2,1;α)"));
            }
            if one != 1 {
                return Err(Error::parse(q1, "expected D(2,1;α)"));
            }
            cur.skip_ws();
            cur.expect(';')?;
            cur.skip_ws();
            let a_pos = cur.pos();
            let alpha = cur.rational("the parameter α")?;
            if !alpha.is_positive() {
                return Err(Error::parse(
                    a_pos,
                    format!("α must be a positive rational, got {alpha}"),
                ));
            }
            Family::D21 { alpha }
        }
        "F" | "G" => {
            let p = cur.pos();
            let r = cur.unsigned("a rank")?;
            match (name.as_str(), r) {
                ("F", 4) => Family::F4,
                ("G", 3) => Family::G3,
                _ => {
                    return Err(Error::parse(
                        p,
                        format!("unknown exceptional algebra {name}({r})"),
                    ))
                }
            }
        }
        _ => {
            return Err(Error::parse(
                pos,
                format!("unknown algebra '{name}'; expected gl, sl, osp, D, F or G"),
            ));
        }
    };
    cur.skip_ws();
    cur.expect(')')?;
    cur.finish()?;
    Ok(family)
}

/// Parse and build a root datum.
pub fn parse_algebra(text: &str) -> Result<Arc<RootDatum>> {
    RootDatum::build(parse_family(text)?)
}

fn symbol(cur: &mut Cursor<'_>, datum: &RootDatum) -> Result<(SymbolKind, usize)> {
    let pos = cur.pos();
    let kind = match cur.peek() {
        Some('d') => SymbolKind::Delta,
        Some('e') => SymbolKind::Epsilon,
        _ => return Err(cur.unexpected(pos, "'d' or 'e'")),
    };
    cur.bump();
    let ipos = cur.pos();
    let index = cur.unsigned("an index")? as usize;
    let count = match kind {
        SymbolKind::Delta => datum.n_delta(),
        SymbolKind::Epsilon => datum.n_epsilon(),
    };
    if index == 0 || index > count {
        let letter = if kind == SymbolKind::Delta { 'd' } else { 'e' };
        return Err(Error::parse(
            ipos,
            format!(
                "index {index} out of range: {} has {letter}1..{letter}{count}",
                datum.family()
            ),
        ));
    }
    Ok((kind, index))
}

/// Parse a weight for the given algebra, projected onto its weight space
/// (relevant for sl(m|n) and G(3)).
pub fn parse_weight(text: &str, datum: &RootDatum) -> Result<WeightVector> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek() == Some('(') {
        return parse_coordinates(&mut cur, datum);
    }
    let mut out = datum.zero();
    let n_delta = datum.n_delta();
    let mut first = true;
    loop {
        cur.skip_ws();
        let pos = cur.pos();
        let mut sign = Q::from_integer(1);
        if cur.eat('+') {
            if first {
                return Err(Error::parse(pos, "a weight cannot start with '+'"));
            }
        } else if cur.eat('-') {
            sign = -sign;
        } else if !first {
            return Err(cur.unexpected(pos, "'+' or '-'"));
        }
        cur.skip_ws();
        let coeff = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            Some(cur.rational("a coefficient")?)
        } else {
            None
        };
        cur.skip_ws();
        cur.eat('*');
        cur.skip_ws();
        match (coeff, cur.peek()) {
            (Some(c), None) if first && c.is_zero() => {
                cur.finish()?;
                return Ok(out);
            }
            _ => {}
        }
        let (kind, index) = symbol(&mut cur, datum)?;
        let slot = match kind {
            SymbolKind::Delta => index - 1,
            SymbolKind::Epsilon => n_delta + index - 1,
        };
        out.coords_mut()[slot] += sign * coeff.unwrap_or_else(|| Q::from_integer(1));
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            return Ok(datum.normalize(&out));
        }
    }
}

fn parse_coordinates(cur: &mut Cursor<'_>, datum: &RootDatum) -> Result<WeightVector> {
    cur.expect('(')?;
    let mut parts: Vec<Vec<Q>> = vec![Vec::new()];
    loop {
        cur.skip_ws();
        let pos = cur.pos();
        match cur.peek() {
            Some(')') if parts.len() == 2 => {
                cur.bump();
                break;
            }
            Some('|') if parts.len() == 1 => {
                cur.bump();
                parts.push(Vec::new());
                continue;
            }
            Some(',') if !parts.last().expect("nonempty").is_empty() => {
                cur.bump();
                continue;
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let v = cur.rational("a coordinate")?;
                parts.last_mut().expect("nonempty").push(v);
            }
            _ => return Err(cur.unexpected(pos, "a coordinate, ',', '|' or ')'")),
        }
    }
    cur.finish()?;
    let (d, e) = (&parts[0], &parts[1]);
    if d.len() != datum.n_delta() || e.len() != datum.n_epsilon() {
        return Err(Error::parse(
            0,
            format!(
                "{} expects {} δ and {} ε coordinates, got {} and {}",
                datum.family(),
                datum.n_delta(),
                datum.n_epsilon(),
                d.len(),
                e.len()
            ),
        ));
    }
    Ok(datum.normalize(&WeightVector::new(d, e)))
}

/// Parse a comma-separated list of roots (for Levi specifications).
pub fn parse_root_list(text: &str, datum: &RootDatum) -> Result<Vec<WeightVector>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return Err(Error::parse(offset, "empty root in list"));
        }
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        out.push(parse_weight(trimmed, datum).map_err(|e| shift(e, offset + lead))?);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

/// Parse a Borel word: `distinguished` or ε/δ tokens separated by spaces.
pub fn parse_borel_word(text: &str, datum: &RootDatum) -> Result<BorelWord> {
    let trimmed = text.trim();
    if trimmed == "distinguished" {
        return Ok(BorelWord::Distinguished);
    }
    let mut cur = Cursor::new(text);
    let mut symbols = Vec::new();
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let negative = cur.eat('-');
        let (kind, index) = symbol(&mut cur, datum)?;
        symbols.push(Symbol {
            kind,
            index,
            negative,
        });
        let pos = cur.pos();
        match cur.peek() {
            None => break,
            Some(c) if c.is_whitespace() => {}
            Some(_) => return Err(cur.unexpected(pos, "a space between symbols")),
        }
    }
    if symbols.is_empty() {
        return Err(Error::parse(
            0,
            "empty Borel word; use 'distinguished' or a list such as 'e1 d1 e2'",
        ));
    }
    Ok(BorelWord::Symbols(symbols))
}

/// Parse and build a Borel subalgebra.
pub fn parse_borel(text: &str, datum: &Arc<RootDatum>) -> Result<BorelData> {
    BorelData::from_word(datum, &parse_borel_word(text, datum)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::qq;

    fn datum(s: &str) -> Arc<RootDatum> {
        parse_algebra(s).unwrap()
    }

    fn position(e: Error) -> usize {
        match e {
            Error::Parse { position, .. } => position,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn algebra_names() {
        assert_eq!(parse_family("gl(2|1)").unwrap(), Family::Gl { m: 2, n: 1 });
        assert_eq!(parse_family("sl(3|2)").unwrap(), Family::Sl { m: 3, n: 2 });
        assert_eq!(
            parse_family("osp(3|2)").unwrap(),
            Family::Osp { m: 3, n: 1 }
        );
        assert_eq!(
            parse_family(" osp( 4 | 2 ) ").unwrap(),
            Family::Osp { m: 4, n: 1 }
        );
        assert_eq!(
            parse_family("D(2,1;1/2)").unwrap(),
            Family::D21 { alpha: qq(1, 2) }
        );
        assert_eq!(parse_family("F(4)").unwrap(), Family::F4);
        assert_eq!(parse_family("G(3)").unwrap(), Family::G3);
    }

    #[test]
    fn algebra_diagnostics() {
        assert_eq!(position(parse_family("hh(2|1)").unwrap_err()), 0);
        assert_eq!(position(parse_family("osp(3|3)").unwrap_err()), 6);
        assert_eq!(position(parse_family("gl(2,1)").unwrap_err()), 4);
        assert_eq!(position(parse_family("D(2,1;-1)").unwrap_err()), 6);
        assert_eq!(position(parse_family("F(3)").unwrap_err()), 2);
        assert_eq!(position(parse_family("gl(2|1)x").unwrap_err()), 7);
        assert!(matches!(
            parse_algebra("sl(2|2)").unwrap_err(),
            Error::InvalidAlgebra(_)
        ));
    }

    #[test]
    fn weight_literals() {
        let gl = datum("gl(2|1)");
        assert_eq!(
            parse_weight("2d1+3e1-e2", &gl).unwrap(),
            WeightVector::from_ints(&[2], &[3, -1])
        );
        assert_eq!(
            parse_weight("1/2e1", &gl).unwrap(),
            WeightVector::new(&[qq(0, 1)], &[qq(1, 2), qq(0, 1)])
        );
        assert_eq!(
            parse_weight("-d1 + 2*e2", &gl).unwrap(),
            WeightVector::from_ints(&[-1], &[0, 2])
        );
        assert_eq!(parse_weight("0", &gl).unwrap(), gl.zero());
        assert_eq!(parse_weight("e1-e1", &gl).unwrap(), gl.zero());
        assert_eq!(
            parse_weight("(1|2,-1/3)", &gl).unwrap(),
            WeightVector::new(&[qq(1, 1)], &[qq(2, 1), qq(-1, 3)])
        );
        assert_eq!(
            parse_weight("e1", &datum("gl(1|1)")).unwrap(),
            WeightVector::from_ints(&[0], &[1])
        );
        let sl = datum("sl(2|1)");
        let w = parse_weight("e1", &sl).unwrap();
        assert!(sl.in_weight_space(&w));
        assert_eq!(w, sl.normalize(&WeightVector::from_ints(&[0], &[1, 0])));
    }

    #[test]
    fn weight_diagnostics() {
        let gl = datum("gl(2|1)");
        assert_eq!(position(parse_weight("2q1", &gl).unwrap_err()), 1);
        assert_eq!(position(parse_weight("e3", &gl).unwrap_err()), 1);
        assert_eq!(position(parse_weight("e1 e2", &gl).unwrap_err()), 3);
        assert_eq!(position(parse_weight("1/0e1", &gl).unwrap_err()), 2);
        assert_eq!(position(parse_weight("+e1", &gl).unwrap_err()), 0);
        assert_eq!(position(parse_weight("e1+", &gl).unwrap_err()), 3);
        assert_eq!(position(parse_weight("(1|2)", &gl).unwrap_err()), 0);
        assert_eq!(position(parse_weight("(1|2,x)", &gl).unwrap_err()), 5);
        assert!(parse_weight("", &gl).is_err());
    }

    #[test]
    fn root_lists_report_absolute_positions() {
        let gl = datum("gl(2|1)");
        assert_eq!(
            parse_root_list("e1-e2, d1-e1", &gl).unwrap(),
            vec![
                WeightVector::from_ints(&[0], &[1, -1]),
                WeightVector::from_ints(&[1], &[-1, 0])
            ]
        );
        assert_eq!(position(parse_root_list("e1-e2, q1", &gl).unwrap_err()), 7);
    }

    #[test]
    fn borel_words() {
        let gl = datum("gl(2|1)");
        assert_eq!(
            parse_borel_word("distinguished", &gl).unwrap(),
            BorelWord::Distinguished
        );
        let w = parse_borel_word("e1 d1 e2", &gl).unwrap();
        assert_eq!(w.to_string(), "e1 d1 e2");
        let b = parse_borel("e1 d1 e2", &gl).unwrap();
        assert!(!b.is_distinguished());
        let osp = datum("osp(4|2)");
        assert_eq!(
            parse_borel_word("e1 -e2 d1", &osp).unwrap().to_string(),
            "e1 -e2 d1"
        );
        assert!(parse_borel("e1 -e2 d1", &osp).is_ok());
    }

    #[test]
    fn borel_word_diagnostics() {
        let gl = datum("gl(2|1)");
        assert_eq!(position(parse_borel_word("e1 x1", &gl).unwrap_err()), 3);
        assert_eq!(position(parse_borel_word("e1d1", &gl).unwrap_err()), 2);
        assert_eq!(position(parse_borel_word("e1 d2", &gl).unwrap_err()), 4);
        assert!(matches!(
            parse_borel("e1 e2", &gl).unwrap_err(),
            Error::Precondition(_)
        ));
        assert!(matches!(
            parse_borel("e1 d1", &datum("F(4)")).unwrap_err(),
            Error::Precondition(_)
        ));
    }
}
