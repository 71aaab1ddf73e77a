//! Static SVG line plots of table columns.

use std::path::Path;

use plotters::prelude::*;

use crate::error::{Error, Result};
use crate::table::{write_atomic, Table};

/// One curve: the y column, optionally restricted to rows where `group_col == group_value`.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub y_col: String,
    pub filter: Option<(String, f64)>,
}

impl Series {
    pub fn column(name: &str) -> Self {
        Series {
            label: name.to_string(),
            y_col: name.to_string(),
            filter: None,
        }
    }

    pub fn filtered(label: String, y_col: &str, group_col: &str, value: f64) -> Self {
        Series {
            label,
            y_col: y_col.to_string(),
            filter: Some((group_col.to_string(), value)),
        }
    }
}

fn col_index(table: &Table, name: &str) -> Result<usize> {
    table
        .columns
        .iter()
        .position(|c| c == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no column '{name}' to plot")))
}

fn points(table: &Table, x_col: &str, s: &Series) -> Result<Vec<(f64, f64)>> {
    let xi = col_index(table, x_col)?;
    let yi = col_index(table, &s.y_col)?;
    let gi = match &s.filter {
        Some((g, v)) => Some((col_index(table, g)?, *v)),
        None => None,
    };
    Ok(table
        .rows
        .iter()
        .filter(|r| gi.is_none_or(|(g, v)| r[g] == v))
        .map(|r| (r[xi], r[yi]))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect())
}

/// Render `series` against `x_col` and write the SVG atomically.
pub fn line_plot(
    table: &Table,
    x_col: &str,
    series: &[Series],
    title: &str,
    path: &Path,
) -> Result<()> {
    let curves: Vec<(String, Vec<(f64, f64)>)> = series
        .iter()
        .map(|s| Ok((s.label.clone(), points(table, x_col, s)?)))
        .collect::<Result<_>>()?;
    let all = curves.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Err(Error::InvalidParameter("nothing to plot".into()));
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0).max(1e-12);
    let (y0, y1) = (y0 - pad, y1 + pad);

    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, (800, 560)).into_drawing_area();
        let draw = |e: DrawingAreaErrorKind<_>| Error::InvalidParameter(format!("plot: {e}"));
        root.fill(&WHITE).map_err(draw)?;
        let mut chart = ChartBuilder::on(&root)
            .caption(title, ("sans-serif", 22))
            .margin(16)
            .x_label_area_size(40)
            .y_label_area_size(64)
            .build_cartesian_2d(x0..x1, y0..y1)
            .map_err(draw)?;
        chart.configure_mesh().x_desc(x_col).draw().map_err(draw)?;
        for (i, (label, pts)) in curves.into_iter().enumerate() {
            let color = Palette99::pick(i).to_rgba();
            chart
                .draw_series(LineSeries::new(pts, color.stroke_width(2)))
                .map_err(draw)?
                .label(label)
                .legend(move |(x, y)| {
                    PathElement::new(vec![(x, y), (x + 18, y)], color.stroke_width(2))
                });
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(draw)?;
        root.present().map_err(draw)?;
    }
    write_atomic(path, svg.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_svg() {
        let mut t = Table::new(&["x", "y"]);
        for i in 0..5 {
            t.push(vec![i as f64, (i * i) as f64]);
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.svg");
        line_plot(&t, "x", &[Series::column("y")], "squares", &p).unwrap();
        let s = std::fs::read_to_string(&p).unwrap();
        assert!(s.starts_with("<svg"));
        assert!(line_plot(&t, "x", &[Series::column("z")], "", &p).is_err());
    }
}
