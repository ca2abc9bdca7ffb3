use serde::Serialize;

use super::audio::{push_shared_sections, DocumentTree};
use super::corpus::Corpus;
use super::manifest::{QueryCapability, RepresentationKind, RepresentationManifest};
use super::{precheck, BuildError, ReprOptions};
use crate::describe::format::{format_length, join_and};
use crate::model::{extent, Geometry, MapDocument, Point};
use crate::spatial::{
    closest_point, intersects, quantize_cardinal, quantize_clock, vector_bearing, ClockResolution, LocalFrame,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridCell {
    pub row: usize,
    pub col: usize,
    /// Ids of features whose geometry meets the closed cell.
    pub features: Vec<String>,
    /// What the cursor announces in this cell.
    pub text: String,
}

/// Square cells over the map extent in a local metric frame. Row 0 is the
/// northern edge, column 0 the western edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AltGrid {
    pub rows: usize,
    pub cols: usize,
    pub cell_size_m: f64,
    /// North-west corner of cell (0, 0), in local meters.
    pub origin: Point,
    pub cursor_start: (usize, usize),
    pub cells: Vec<GridCell>,
    /// Per-feature text the cursor reads when asked about a feature.
    pub feature_texts: Vec<(String, String)>,
    #[serde(skip)]
    document: DocumentTree,
}

impl AltGrid {
    pub fn cell(&self, row: usize, col: usize) -> Option<&GridCell> {
        (row < self.rows && col < self.cols).then(|| &self.cells[row * self.cols + col])
    }

    /// Axis-aligned bounds `(min_x, min_y, max_x, max_y)` of a cell.
    pub fn cell_bounds(&self, row: usize, col: usize) -> (f64, f64, f64, f64) {
        let s = self.cell_size_m;
        let x0 = self.origin.x + col as f64 * s;
        let y1 = self.origin.y - row as f64 * s;
        (x0, y1 - s, x0 + s, y1)
    }

    /// Cell containing a local point, if any.
    pub fn locate(&self, p: Point) -> Option<(usize, usize)> {
        let s = self.cell_size_m;
        let c = ((p.x - self.origin.x) / s).floor();
        let r = ((self.origin.y - p.y) / s).floor();
        if c < 0.0 || r < 0.0 {
            return None;
        }
        let (r, c) = (r as usize, c as usize);
        (r < self.rows && c < self.cols).then_some((r, c))
    }

    /// Headed text: overview, feature descriptions, routes, then every
    /// cell's announcement.
    pub fn render(&self) -> String {
        let mut tree = self.document.clone();
        tree.heading(2, "Grid");
        tree.paragraph(format!(
            "{} rows by {} columns of {} cells; the cursor starts at row {}, column {}.",
            self.rows,
            self.cols,
            format_length(self.cell_size_m),
            self.cursor_start.0 + 1,
            self.cursor_start.1 + 1
        ));
        for c in &self.cells {
            tree.paragraph(c.text.clone());
        }
        tree.render()
    }
}

fn cell_geometry(x0: f64, y0: f64, x1: f64, y1: f64) -> Geometry {
    Geometry {
        kind: crate::model::GeometryKind::Polygon,
        coords: vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
            Point::new(x0, y0),
        ],
    }
}

/// Interactive alt-text grid. The manifest claims the landmark fields and
/// route sections, and flags pairwise distance, direction and topology as
/// answered on demand by the cursor interface.
pub fn build_alt_grid(
    doc: &MapDocument,
    options: &ReprOptions,
) -> Result<(AltGrid, RepresentationManifest), BuildError> {
    precheck(doc)?;
    let corpus = Corpus::build(doc, &options.describe);
    let e = extent(doc).map_err(|_| BuildError::Empty)?;
    let frame = LocalFrame::new(
        doc.crs,
        Point::new((e.min_x + e.max_x) / 2.0, (e.min_y + e.max_y) / 2.0),
    );
    let local: Vec<Geometry> = doc
        .features
        .iter()
        .map(|f| Geometry {
            kind: f.geometry.kind,
            coords: frame.project_all(&f.geometry.coords),
        })
        .collect();
    let (lo, hi) = (
        frame.project(Point::new(e.min_x, e.min_y)),
        frame.project(Point::new(e.max_x, e.max_y)),
    );
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let diagonal = w.hypot(h);
    let cell = if diagonal > 0.0 {
        diagonal / options.grid_divisions.max(1) as f64
    } else {
        1.0
    };
    let cols = ((w / cell).ceil() as usize).max(1);
    let rows = ((h / cell).ceil() as usize).max(1);
    let origin = Point::new(lo.x, hi.y);

    let mut cells = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let x0 = origin.x + c as f64 * cell;
            let y1 = origin.y - r as f64 * cell;
            let rect = cell_geometry(x0, y1 - cell, x0 + cell, y1);
            let hits: Vec<usize> = (0..local.len())
                .filter(|&i| intersects(&local[i], &rect, 0.0))
                .collect();
            let label = format!("Row {}, column {}", r + 1, c + 1);
            let text = if hits.is_empty() {
                let center = Point::new(x0 + cell / 2.0, y1 - cell / 2.0);
                let (i, q, d) = local
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let q = closest_point(center, g);
                        (i, q, (q.x - center.x).hypot(q.y - center.y))
                    })
                    .min_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
                    .expect("map has features");
                let b = vector_bearing(q.x - center.x, q.y - center.y);
                format!(
                    "{label}: empty. Nearest is {}, {} {} ({}).",
                    corpus.names[i],
                    format_length(d),
                    quantize_cardinal(b),
                    quantize_clock(b, ClockResolution::Hour)
                )
            } else {
                let names: Vec<String> = hits.iter().map(|&i| corpus.names[i].clone()).collect();
                format!("{label}: {}.", join_and(&names))
            };
            cells.push(GridCell {
                row: r,
                col: c,
                features: hits.iter().map(|&i| doc.features[i].id.clone()).collect(),
                text,
            });
        }
    }

    let mut document = DocumentTree::default();
    document.heading(1, corpus.title.clone());
    document.heading(2, "Overview");
    document.paragraph(corpus.overview.clone());
    if !corpus.legend_lines.is_empty() {
        document.heading(2, "Legend");
        for line in &corpus.legend_lines {
            document.paragraph(line.clone());
        }
    }
    document.heading(2, "Features");
    for (l, name) in corpus.landmarks.iter().zip(&corpus.names) {
        document.heading(3, name.clone());
        document.paragraph(l.paragraph());
    }
    push_shared_sections(&mut document, &corpus, 2);

    let mut manifest = RepresentationManifest::new(RepresentationKind::AltGrid, corpus.title.clone());
    manifest.features = corpus.landmark_claims();
    manifest.routes = corpus.route_claims();
    manifest.capabilities.extend([
        QueryCapability::PairwiseDistance,
        QueryCapability::PairwiseDirection,
        QueryCapability::PairwiseTopology,
    ]);
    let grid = AltGrid {
        rows,
        cols,
        cell_size_m: cell,
        origin,
        cursor_start: (rows / 2, cols / 2),
        cells,
        feature_texts: doc
            .features
            .iter()
            .zip(&corpus.landmarks)
            .map(|(f, l)| (f.id.clone(), l.paragraph()))
            .collect(),
        document,
    };
    Ok((grid, manifest))
}
