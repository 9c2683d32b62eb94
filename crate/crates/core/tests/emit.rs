use tama_core::ama::{Chord, Diagram};
use tama_core::emit::{emit, Drawable, Format};
use tama_core::uncross::{AmaExtDiagram, TamaDiagram};

fn figure1() -> Diagram {
    let cs = [(1, 3), (1, 4), (2, 3), (3, 5)].iter().map(|&(i, j)| Chord::new(i, j).unwrap()).collect();
    Diagram::new(6, cs).unwrap()
}

#[test]
fn output_is_deterministic() {
    let d = figure1();
    for f in [Format::Dot, Format::Tikz] {
        assert_eq!(emit(&Drawable::Ama(&d), f), emit(&Drawable::Ama(&d), f));
    }
}

#[test]
fn tikz_is_a_standalone_document() {
    let s = emit(&Drawable::Ama(&figure1()), Format::Tikz);
    assert!(s.starts_with("\\documentclass"));
    assert!(s.contains("\\begin{document}") && s.trim_end().ends_with("\\end{document}"));
    assert_eq!(s.matches("\\begin{tikzpicture}").count(), s.matches("\\end{tikzpicture}").count());
    assert!(s.contains("(v6)"));
}

#[test]
fn exterior_vertices_are_styled() {
    let t = TamaDiagram::from_multiplicities(4, &[((1, 3), 2)]).unwrap();
    let d = AmaExtDiagram::new(t, &[2, 4]).unwrap();
    let dot = emit(&Drawable::AmaExt(&d), Format::Dot);
    let filled = dot.lines().filter(|l| l.contains("fillcolor=black")).count();
    assert_eq!(filled, 2, "{dot}");
    let tikz = emit(&Drawable::AmaExt(&d), Format::Tikz);
    assert!(tikz.contains("fill=white"));
}

#[test]
fn multiplicity_labels() {
    let t = TamaDiagram::from_multiplicities(5, &[((1, 3), 3), ((2, 5), 1)]).unwrap();
    let dot = emit(&Drawable::Tama(&t), Format::Dot);
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("label=\"3\""));
    assert!("dot".parse::<Format>().is_ok() && "svg".parse::<Format>().is_err());
}
