//! DOT and TikZ renderings of chord diagrams. Vertices sit on a circle,
//! vertex 1 at the top, numbered clockwise.

use std::fmt::Write;

use crate::ama::Diagram;
use crate::uncross::{AmaExtDiagram, TamaDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Tikz,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "tikz" => Ok(Format::Tikz),
            other => Err(format!("unknown format `{other}` (expected dot or tikz)")),
        }
    }
}

/// Anything drawable as vertices on a circle joined by chords.
pub enum Drawable<'a> {
    Ama(&'a Diagram),
    Tama(&'a TamaDiagram),
    AmaExt(&'a AmaExtDiagram),
}

struct Scene {
    n: usize,
    title: String,
    /// `(from, to, label, directed)`
    edges: Vec<(usize, usize, Option<String>, bool)>,
    black: u16,
    coloured: bool,
}

impl Scene {
    fn of(d: &Drawable<'_>) -> Scene {
        match d {
            Drawable::Ama(d) => Scene {
                n: d.n(),
                title: d.to_string(),
                edges: d.chords().iter().map(|c| (c.i, c.j, None, true)).collect(),
                black: 0,
                coloured: false,
            },
            Drawable::Tama(t) => Scene {
                n: t.n(),
                title: t.to_string(),
                edges: t.chords().into_iter().map(|(i, j, m)| (i, j, Some(m.to_string()), false)).collect(),
                black: 0,
                coloured: false,
            },
            Drawable::AmaExt(a) => Scene {
                n: a.n(),
                title: a.to_string(),
                edges: a.chords.chords().into_iter().map(|(i, j, m)| (i, j, (m > 1).then(|| m.to_string()), false)).collect(),
                black: a.black,
                coloured: true,
            },
        }
    }

    fn position(&self, v: usize, radius: f64) -> (f64, f64) {
        let angle = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * (v as f64 - 1.0) / self.n as f64;
        (round(radius * angle.cos()), round(radius * angle.sin()))
    }

    fn is_black(&self, v: usize) -> bool {
        self.black & (1 << (v - 1)) != 0
    }
}

fn round(x: f64) -> f64 {
    let r = (x * 1000.0).round() / 1000.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn emit(d: &Drawable<'_>, format: Format) -> String {
    let scene = Scene::of(d);
    match format {
        Format::Dot => dot(&scene),
        Format::Tikz => tikz(&scene),
    }
}

fn dot(s: &Scene) -> String {
    let mut out = String::new();
    let kind = if s.edges.iter().any(|e| e.3) { "digraph" } else { "graph" };
    let arrow = if kind == "digraph" { "->" } else { "--" };
    writeln!(out, "{kind} diagram {{").unwrap();
    writeln!(out, "  label=\"{}\";", s.title).unwrap();
    writeln!(out, "  layout=neato;").unwrap();
    writeln!(out, "  node [shape=circle, width=0.3, fixedsize=true];").unwrap();
    for v in 1..=s.n {
        let (x, y) = s.position(v, 1.5);
        let style = if !s.coloured {
            String::new()
        } else if s.is_black(v) {
            ", style=filled, fillcolor=black, fontcolor=white".to_string()
        } else {
            ", style=solid".to_string()
        };
        writeln!(out, "  {v} [pos=\"{x},{y}!\"{style}];").unwrap();
    }
    for v in 1..=s.n {
        let w = v % s.n + 1;
        writeln!(out, "  {v} {arrow} {w} [style=dashed, color=gray, arrowhead=none];").unwrap();
    }
    for (i, j, label, _) in &s.edges {
        match label {
            Some(l) => writeln!(out, "  {i} {arrow} {j} [color=blue, label=\"{l}\"];").unwrap(),
            None => writeln!(out, "  {i} {arrow} {j} [color=blue];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

fn tikz(s: &Scene) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass[tikz]{standalone}\n");
    out.push_str("\\usetikzlibrary{decorations.markings}\n");
    out.push_str("\\begin{document}\n");
    out.push_str("\\begin{tikzpicture}[midarrow/.style={postaction={decorate}, decoration={markings, mark=at position 0.5 with {\\arrow{>}}}}]\n");
    writeln!(out, "% {}", s.title).unwrap();
    for v in 1..=s.n {
        let (x, y) = s.position(v, 1.5);
        writeln!(out, "\\coordinate (v{v}) at ({x},{y});").unwrap();
    }
    let ring: Vec<String> = (1..=s.n).map(|v| format!("(v{v})")).collect();
    writeln!(out, "\\draw[dashed, gray] {} -- cycle;", ring.join(" -- ")).unwrap();
    for (i, j, label, directed) in &s.edges {
        let style = if *directed { "blue, thick, midarrow" } else { "blue, thick" };
        match label {
            Some(l) => writeln!(out, "\\draw[{style}] (v{i}) -- node[fill=white, inner sep=1pt, font=\\scriptsize] {{{l}}} (v{j});").unwrap(),
            None => writeln!(out, "\\draw[{style}] (v{i}) -- (v{j});").unwrap(),
        }
    }
    for v in 1..=s.n {
        let (x, y) = s.position(v, 1.85);
        if s.coloured && !s.is_black(v) {
            writeln!(out, "\\filldraw[draw=black, fill=white] (v{v}) circle (3pt);").unwrap();
        } else {
            writeln!(out, "\\filldraw[black] (v{v}) circle (3pt);").unwrap();
        }
        writeln!(out, "\\node at ({x},{y}) {{\\scriptsize {v}}};").unwrap();
    }
    out.push_str("\\end{tikzpicture}\n\\end{document}\n");
    out
}
