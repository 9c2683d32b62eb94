//! Parsers for the diagram text forms `D[n=..]: (i,j)..`, `T[n=..]: ij^m ..`
//! and `AE[n=..]: ij^m .. | black={..}`.

use tama_core::ama::{Chord, Diagram};
use tama_core::emit::Drawable;
use tama_core::uncross::{AmaExtDiagram, TamaDiagram};

#[derive(Debug, Clone, PartialEq)]
pub enum AnyDiagram {
    Ama(Diagram),
    Tama(TamaDiagram),
    AmaExt(AmaExtDiagram),
}

impl AnyDiagram {
    pub fn drawable(&self) -> Drawable<'_> {
        match self {
            AnyDiagram::Ama(d) => Drawable::Ama(d),
            AnyDiagram::Tama(d) => Drawable::Tama(d),
            AnyDiagram::AmaExt(d) => Drawable::AmaExt(d),
        }
    }
}

fn header(s: &str) -> Result<(&str, usize, &str), String> {
    let open = s.find("[n=").ok_or("expected `[n=`")?;
    let close = s.find("]:").ok_or("expected `]:`")?;
    let n = s[open + 3..close].trim().parse::<usize>().map_err(|e| format!("bad n: {e}"))?;
    Ok((s[..open].trim(), n, s[close + 2..].trim()))
}

fn chord_label(n: usize, tok: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.parse::<usize>().map_err(|_| format!("bad chord `{tok}`"));
    if let Some((a, b)) = tok.split_once('.') {
        return Ok((parse(a)?, parse(b)?));
    }
    if n >= 10 || tok.len() != 2 {
        return Err(format!("bad chord `{tok}` (use i.j when n >= 10)"));
    }
    Ok((parse(&tok[..1])?, parse(&tok[1..])?))
}

fn multiplicities(n: usize, body: &str) -> Result<TamaDiagram, String> {
    let mut d = TamaDiagram::empty(n).map_err(|e| e.to_string())?;
    for tok in body.split_whitespace() {
        let (label, m) = tok.split_once('^').unwrap_or((tok, "1"));
        let m: u16 = m.parse().map_err(|_| format!("bad multiplicity in `{tok}`"))?;
        let (i, j) = chord_label(n, label)?;
        d.add_chord(i, j, m).map_err(|e| e.to_string())?;
    }
    Ok(d)
}

pub fn parse_diagram(s: &str) -> Result<AnyDiagram, String> {
    let (kind, n, body) = header(s.trim())?;
    match kind {
        "D" => {
            let mut chords = Vec::new();
            let mut rest = body;
            while let Some(open) = rest.find('(') {
                let close = rest[open..].find(')').ok_or("unclosed `(`")? + open;
                let (a, b) = rest[open + 1..close].split_once(',').ok_or("expected `(i,j)`")?;
                let i = a.trim().parse().map_err(|_| format!("bad index `{a}`"))?;
                let j = b.trim().parse().map_err(|_| format!("bad index `{b}`"))?;
                chords.push(Chord::new(i, j).map_err(|e| e.to_string())?);
                rest = &rest[close + 1..];
            }
            if !rest.trim().is_empty() {
                return Err(format!("trailing text `{}`", rest.trim()));
            }
            Diagram::new(n, chords).map(AnyDiagram::Ama).map_err(|e| e.to_string())
        }
        "T" => multiplicities(n, body).map(AnyDiagram::Tama),
        "AE" => {
            let (chords, black) = body.split_once('|').ok_or("expected `| black={..}`")?;
            let black = black.trim().strip_prefix("black={").and_then(|b| b.strip_suffix('}')).ok_or("expected `black={..}`")?;
            let verts: Vec<usize> = black
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| format!("bad vertex `{t}`")))
                .collect::<Result<_, _>>()?;
            let d = multiplicities(n, chords)?;
            AmaExtDiagram::new(d, &verts).map(AnyDiagram::AmaExt).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown diagram kind `{other}` (expected D, T or AE)")),
    }
}
