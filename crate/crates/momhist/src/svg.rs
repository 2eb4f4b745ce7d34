//! Self-contained SVG rendering: level-set maps over the (t0, h) plane and
//! bar charts of a single grid's counts. No external renderer; output is a
//! pure function of the input, so reruns are byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use crate::core::dataset::Dataset;
use crate::core::grid::{bin_counts, BinGrid};
use crate::error::{Error, Result};
use crate::levelset::Catalog;

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 660.0;
const MARGIN: f64 = 56.0;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

struct Frame {
    t_lo: f64,
    h_lo: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn new(t_lo: f64, t_hi: f64, h_lo: f64, h_hi: f64) -> Frame {
        let span_t = (t_hi - t_lo).max(1e-9);
        let span_h = (h_hi - h_lo).max(1e-9);
        Frame {
            t_lo,
            h_lo,
            sx: (WIDTH - 2.0 * MARGIN) / span_t,
            sy: (HEIGHT - 2.0 * MARGIN) / span_h,
        }
    }

    fn x(&self, t: f64) -> f64 {
        MARGIN + (t - self.t_lo) * self.sx
    }

    fn y(&self, h: f64) -> f64 {
        HEIGHT - MARGIN - (h - self.h_lo) * self.sy
    }
}

fn svg_header(title: &str) -> String {
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"monospace\">\n",
            "<title>{t}</title>\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        t = title
    )
}

/// Renders the catalog's level sets as labeled, color-coded polygons over
/// (t0, h) axes, with the domain outline behind them.
pub fn level_set_map_svg(c: &Catalog) -> Result<String> {
    if c.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let dom = c.domain().polygon();
    let (t_lo, t_hi, h_lo, h_hi) = dom.bbox();
    let (t_lo, t_hi) = (t_lo.to_f64(), t_hi.to_f64());
    let (h_lo, h_hi) = (h_lo.to_f64(), h_hi.to_f64());
    let fr = Frame::new(t_lo, t_hi, h_lo, h_hi);

    let mut out = svg_header(&format!("shape level sets, {} bins", c.mode().label(c.k())));
    // domain outline
    let dom_pts: Vec<String> = dom
        .vertices()
        .iter()
        .map(|p| format!("{},{}", fmt(fr.x(p.t0.to_f64())), fmt(fr.y(p.h.to_f64()))))
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>",
        dom_pts.join(" ")
    );
    for (i, ls) in c.sets().iter().enumerate() {
        let pts: Vec<String> = ls
            .vertices()
            .iter()
            .map(|p| format!("{},{}", fmt(fr.x(p.t0.to_f64())), fmt(fr.y(p.h.to_f64()))))
            .collect();
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.72\" stroke=\"#333333\" stroke-width=\"0.8\"/>",
            pts.join(" "),
            color
        );
        let cx = fr.x(ls.centroid().t0.to_f64());
        let cy = fr.y(ls.centroid().h.to_f64());
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            fmt(cx),
            fmt(cy),
            ls.shape()
        );
    }
    // axes labels and corner ticks
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">t0</text>",
        fmt(WIDTH / 2.0),
        fmt(HEIGHT - 12.0)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">h</text>",
        fmt(HEIGHT / 2.0),
        fmt(HEIGHT / 2.0)
    );
    for (t, anchor) in [(t_lo, "start"), (t_hi, "end")] {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"{}\">{t:.3}</text>",
            fmt(fr.x(t)),
            fmt(HEIGHT - MARGIN + 16.0),
            anchor
        );
    }
    for h in [h_lo, h_hi] {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{h:.3}</text>",
            fmt(MARGIN - 6.0),
            fmt(fr.y(h) + 4.0)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders one grid's histogram as a bar chart with edge labels.
pub fn histogram_svg(d: &Dataset, g: &BinGrid) -> Result<String> {
    let shape = bin_counts(d, g)?;
    let k_s = shape.num_bins();
    let max_count = *shape.counts().iter().max().expect("nonempty shape") as f64;
    let t_lo = g.t0.to_f64();
    let t_hi = g.edge(k_s as u32).to_f64();
    let fr = Frame::new(t_lo, t_hi, 0.0, max_count);

    let mut out = svg_header(&format!("histogram, t0={} h={}", g.t0, g.h));
    for (i, &v) in shape.counts().iter().enumerate() {
        let x0 = fr.x(g.edge(i as u32).to_f64());
        let x1 = fr.x(g.edge(i as u32 + 1).to_f64());
        let y0 = fr.y(v as f64);
        let y1 = fr.y(0.0);
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#333333\"/>",
            fmt(x0),
            fmt(y0),
            fmt(x1 - x0),
            fmt((y1 - y0).max(0.0)),
            PALETTE[0]
        );
        if v > 0 {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{v}</text>",
                fmt((x0 + x1) / 2.0),
                fmt(y0 - 5.0)
            );
        }
    }
    // baseline and edge labels
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#222222\"/>",
        fmt(fr.x(t_lo)),
        fmt(fr.y(0.0)),
        fmt(fr.x(t_hi)),
        fmt(fr.y(0.0))
    );
    for k in 0..=k_s {
        let e = g.edge(k as u32);
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            fmt(fr.x(e.to_f64())),
            fmt(fr.y(0.0) + 16.0),
            e.decimal_string()
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{} (n={})</text>",
        fmt(WIDTH / 2.0),
        fmt(MARGIN / 2.0),
        shape,
        d.n()
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes SVG content to a file.
pub fn write_svg(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::dataset::parse_dataset;
    use crate::core::domain::DomainMode;
    use crate::core::scalar::Scalar;
    use crate::levelset::enumerate_level_sets;

    #[test]
    fn level_set_map_contains_all_polygons() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let cat = enumerate_level_sets(&d, 4, DomainMode::AtMostK).unwrap();
        let svg = level_set_map_svg(&cat).unwrap();
        // domain outline + 7 level sets
        assert_eq!(svg.matches("<polygon").count(), 8);
        assert!(svg.contains("(2,0,0,1)"));
        // deterministic
        assert_eq!(svg, level_set_map_svg(&cat).unwrap());
    }

    #[test]
    fn histogram_bars_match_counts() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let g = BinGrid::new(Scalar::parse("1/2").unwrap(), Scalar::parse("3/2").unwrap(), 4)
            .unwrap();
        let svg = histogram_svg(&d, &g).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1 + 4); // background + 4 bins
        assert!(svg.contains("(1,1,0,1)"));
    }

    #[test]
    fn invalid_grid_renders_nothing() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let g = BinGrid::new(Scalar::parse("3").unwrap(), Scalar::parse("1").unwrap(), 4).unwrap();
        assert!(histogram_svg(&d, &g).is_err());
    }
}
