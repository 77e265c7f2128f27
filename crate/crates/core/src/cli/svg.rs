//! Heatmap of a sweep, one square per cell.

use std::fmt::Write;

use crate::analysis::{FallacyReport, SweepMap};

const CELL: usize = 8;
const MARGIN: usize = 40;
const LEGEND_WIDTH: usize = 150;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FlagPair {
    None,
    BOnly,
    AOnly,
    Both,
}

impl FlagPair {
    const ALL: [FlagPair; 4] = [
        FlagPair::None,
        FlagPair::BOnly,
        FlagPair::AOnly,
        FlagPair::Both,
    ];

    fn of(report: &FallacyReport) -> Self {
        match (report.fallacy_on_b, report.fallacy_on_a) {
            (false, false) => FlagPair::None,
            (true, false) => FlagPair::BOnly,
            (false, true) => FlagPair::AOnly,
            (true, true) => FlagPair::Both,
        }
    }

    fn color(self) -> &'static str {
        match self {
            FlagPair::None => "#eeeeee",
            FlagPair::BOnly => "#d95f02",
            FlagPair::AOnly => "#1b9e77",
            FlagPair::Both => "#7570b3",
        }
    }

    fn label(self) -> &'static str {
        match self {
            FlagPair::None => "no fallacy",
            FlagPair::BOnly => "fallacy on b",
            FlagPair::AOnly => "fallacy on a",
            FlagPair::Both => "both",
        }
    }
}

/// Renders `map` with `theta_a` along x and `theta` along y.
pub fn heatmap(map: &SweepMap) -> String {
    let cols = map.theta_a.steps();
    let rows = map.theta.steps();
    let width = 2 * MARGIN + cols * CELL + LEGEND_WIDTH;
    let height = (2 * MARGIN + rows * CELL).max(2 * MARGIN + 4 * 20);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<title>fallacy flags, theta {} to {}, theta_a {} to {}, phi {}</title>"#,
        map.theta.start(),
        map.theta.end(),
        map.theta_a.start(),
        map.theta_a.end(),
        map.phi
    );
    let _ = writeln!(svg, r#"<g id="cells">"#);
    for (i, row) in map.rows().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                MARGIN + j * CELL,
                MARGIN + i * CELL,
                FlagPair::of(&cell.report).color()
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">theta_a</text>"#,
        MARGIN + cols * CELL / 2,
        MARGIN - 10
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 {} {})">theta</text>"#,
        MARGIN - 10,
        MARGIN + rows * CELL / 2,
        MARGIN - 10,
        MARGIN + rows * CELL / 2
    );
    let legend_x = 2 * MARGIN + cols * CELL;
    let _ = writeln!(svg, r#"<g id="legend">"#);
    for (k, flag) in FlagPair::ALL.into_iter().enumerate() {
        let y = MARGIN + k * 20;
        let _ = writeln!(
            svg,
            r#"<rect class="legend-swatch" x="{legend_x}" y="{y}" width="12" height="12" fill="{}"/>"#,
            flag.color()
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
            legend_x + 18,
            y + 11,
            flag.label()
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}
