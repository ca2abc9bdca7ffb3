use serde::Serialize;

use super::corpus::Corpus;
use super::manifest::{RepresentationKind, RepresentationManifest};
use super::{precheck, BuildError, ReprOptions};
use crate::model::MapDocument;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Block {
    Heading { level: u8, title: String },
    Paragraph { text: String },
}

/// Long-form text indexed by headings and paragraphs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DocumentTree {
    pub blocks: Vec<Block>,
}

impl DocumentTree {
    pub fn heading(&mut self, level: u8, title: impl Into<String>) {
        self.blocks.push(Block::Heading {
            level,
            title: title.into(),
        });
    }

    pub fn paragraph(&mut self, text: impl Into<String>) {
        self.blocks.push(Block::Paragraph { text: text.into() });
    }

    /// Headings as `#`-prefixed lines, blocks separated by blank lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            match b {
                Block::Heading { level, title } => {
                    out.push_str(&"#".repeat(*level as usize));
                    out.push(' ');
                    out.push_str(title);
                }
                Block::Paragraph { text } => out.push_str(text),
            }
            out.push_str("\n\n");
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }

    /// Heading levels start at 1 and never skip a level going down.
    pub fn levels_are_nested(&self) -> bool {
        let mut prev = 0u8;
        for b in &self.blocks {
            if let Block::Heading { level, .. } = b {
                if *level == 0 || *level > prev + 1 {
                    return false;
                }
                prev = *level;
            }
        }
        true
    }
}

/// Appends the routes, temporal and thematic sections at `level`.
pub(crate) fn push_shared_sections(tree: &mut DocumentTree, corpus: &Corpus, level: u8) {
    if !corpus.routes.is_empty() {
        tree.heading(level, "Routes:");
        for r in &corpus.routes {
            tree.heading(level + 1, r.prominence_heading.clone());
            tree.paragraph(r.landmark_section.clone());
            tree.paragraph(r.survey_section.clone());
        }
    }
    if let Some(t) = &corpus.temporal_section {
        tree.heading(level, "Temporal data");
        tree.paragraph(t.clone());
    }
    if let Some(t) = &corpus.thematic_section {
        tree.heading(level, "Thematic data");
        tree.paragraph(t.clone());
    }
}

pub(crate) fn corpus_manifest(kind: RepresentationKind, corpus: &Corpus) -> RepresentationManifest {
    let mut m = RepresentationManifest::new(kind, corpus.title.clone());
    m.features = corpus.landmark_claims();
    m.pairs = corpus.pair_claims();
    m.routes = corpus.route_claims();
    m
}

pub(crate) fn tree_from_corpus(corpus: &Corpus) -> DocumentTree {
    let mut tree = DocumentTree::default();
    tree.heading(1, corpus.title.clone());
    tree.heading(2, "Overview");
    tree.paragraph(corpus.overview.clone());
    if !corpus.legend_lines.is_empty() {
        tree.heading(2, "Legend");
        for line in &corpus.legend_lines {
            tree.paragraph(line.clone());
        }
    }
    tree.heading(2, "Features");
    for (l, name) in corpus.landmarks.iter().zip(&corpus.names) {
        tree.heading(3, name.clone());
        tree.paragraph(l.paragraph());
    }
    if !corpus.pairs.is_empty() {
        tree.heading(2, "Survey");
        for p in &corpus.pairs {
            tree.paragraph(p.text.clone());
        }
    }
    push_shared_sections(&mut tree, corpus, 2);
    tree
}

/// Headed long-form description: overview, legend, one section per
/// feature, every pair, routes, temporal and thematic data.
pub fn build_audio_description(
    doc: &MapDocument,
    options: &ReprOptions,
) -> Result<(DocumentTree, RepresentationManifest), BuildError> {
    precheck(doc)?;
    let corpus = Corpus::build(doc, &options.describe);
    let tree = tree_from_corpus(&corpus);
    Ok((tree, corpus_manifest(RepresentationKind::AudioDescription, &corpus)))
}
