use std::fmt::Write;

use tilt_core::{Cell2, Polyomino, TiltWorld};

const SCALE: i32 = 10;

fn rect(out: &mut String, id: &str, class: &str, c: Cell2, lo: Cell2, hi: Cell2) {
    let _ = writeln!(
        out,
        r#"  <rect id="{id}" class="{class}" x="{}" y="{}" width="{SCALE}" height="{SCALE}"/>"#,
        (c.x - lo.x) * SCALE,
        (hi.y - c.y) * SCALE
    );
}

fn open(out: &mut String, lo: Cell2, hi: Cell2) {
    let w = (hi.x - lo.x + 1) * SCALE;
    let h = (hi.y - lo.y + 1) * SCALE;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    out.push_str("  <style>.tile{fill:#4a7fb5;stroke:#1d3557}.wall{fill:#444}.sink{fill:#cde8c5}.depot{fill:#f4a261}</style>\n");
}

/// One square per tile, ids `tile-<k>` in sorted cell order, north up.
pub fn shape(p: &Polyomino) -> String {
    let (lo, hi) = p.bounding_box();
    let mut out = String::new();
    open(&mut out, lo, hi);
    for (k, &c) in p.cells().iter().enumerate() {
        rect(&mut out, &format!("tile-{k}"), "tile", c, lo, hi);
    }
    out.push_str("</svg>\n");
    out
}

/// Every world as a group `frame-<i>` holding its walls, sink, depots and
/// tiles.
pub fn worlds(frames: &[TiltWorld]) -> String {
    let (lo, hi) = frames[0].bounds();
    let mut out = String::new();
    open(&mut out, lo, hi);
    for (i, w) in frames.iter().enumerate() {
        let _ = writeln!(out, r#" <g id="frame-{i}">"#);
        for (k, c) in w.obstacles().into_iter().enumerate() {
            rect(&mut out, &format!("f{i}-wall-{k}"), "wall", c, lo, hi);
        }
        let sink: Vec<Cell2> = (lo.y..=hi.y)
            .flat_map(|y| (lo.x..=hi.x).map(move |x| Cell2::new(x, y)))
            .filter(|&c| w.is_sink(c))
            .collect();
        for (k, c) in sink.into_iter().enumerate() {
            rect(&mut out, &format!("f{i}-sink-{k}"), "sink", c, lo, hi);
        }
        for (k, d) in w.depots().iter().enumerate() {
            rect(
                &mut out,
                &format!("f{i}-depot-{k}"),
                "depot",
                d.cell,
                lo,
                hi,
            );
        }
        for (a, asm) in w.assemblies().iter().enumerate() {
            for (k, &c) in asm.iter().enumerate() {
                rect(&mut out, &format!("f{i}-a{a}-tile-{k}"), "tile", c, lo, hi);
            }
        }
        out.push_str(" </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
