use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::audio::corpus_manifest;
use super::corpus::Corpus;
use super::manifest::{RepresentationKind, RepresentationManifest};
use super::{precheck, BuildError, ReprOptions};
use crate::describe::format::join_and;
use crate::describe::northernmost;
use crate::model::{MapDocument, Point};
use crate::spatial::{centroid, quantize_cardinal, vector_bearing, Cardinal, LocalFrame};

/// Preferred id of the room holding the legend and map summary.
pub const OVERVIEW_ROOM: &str = "overview";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Room {
    pub id: String,
    pub title: String,
    pub description: String,
    /// Baseline features this room describes.
    pub features: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exit {
    pub from: String,
    pub direction: Cardinal,
    pub to: String,
}

/// Rooms joined by exits in the eight compass directions, at most one
/// exit per direction per room.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoomGraph {
    /// The overview room's id; sessions start there.
    pub start: String,
    pub rooms: Vec<Room>,
    pub exits: Vec<Exit>,
}

impl RoomGraph {
    pub fn room(&self, id: &str) -> Option<&Room> {
        self.rooms.iter().find(|r| r.id == id)
    }

    pub fn exit(&self, from: &str, direction: Cardinal) -> Option<&str> {
        self.exits
            .iter()
            .find(|e| e.from == from && e.direction == direction)
            .map(|e| e.to.as_str())
    }

    pub fn exits_from<'a>(&'a self, from: &'a str) -> impl Iterator<Item = &'a Exit> + 'a {
        self.exits.iter().filter(move |e| e.from == from)
    }

    /// Every exit has a reverse exit in the opposite direction.
    pub fn is_symmetric(&self) -> bool {
        self.exits
            .iter()
            .all(|e| self.exit(&e.to, e.direction.opposite()) == Some(e.from.as_str()))
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.rooms.first() else {
            return true;
        };
        let mut seen = vec![first.id.as_str()];
        let mut stack = vec![first.id.as_str()];
        while let Some(r) = stack.pop() {
            for e in self.exits_from(r) {
                if !seen.contains(&e.to.as_str()) {
                    seen.push(&e.to);
                    stack.push(&e.to);
                }
            }
        }
        seen.len() == self.rooms.len()
    }

    /// Plain-text listing of every room.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.rooms {
            out.push_str(&format!("## {}\n\n{}\n\n", r.title, r.description));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }
}

/// Exit assignment over projected feature centers. Slot `(room, sector)`
/// holds the neighbour reached by typing that direction.
struct Slots {
    taken: HashMap<(usize, Cardinal), usize>,
}

impl Slots {
    fn free(&self, room: usize, c: Cardinal) -> bool {
        !self.taken.contains_key(&(room, c))
    }

    fn link(&mut self, a: usize, b: usize, c: Cardinal) {
        self.taken.insert((a, c), b);
        self.taken.insert((b, c.opposite()), a);
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Exits between feature rooms `0..n` plus the overview room `n`.
fn assign_exits(centers: &[Point]) -> Slots {
    let n = centers.len();
    let mut slots = Slots { taken: HashMap::new() };
    let top = northernmost(centers);
    slots.link(n, top, Cardinal::South);

    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = (centers[j].x - centers[i].x).hypot(centers[j].y - centers[i].y);
            pairs.push((d, i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let sector = |i: usize, j: usize| {
        let (a, b) = (centers[i], centers[j]);
        quantize_cardinal(vector_bearing(b.x - a.x, b.y - a.y))
    };

    // nearest neighbour in each sector, both ends' slots free
    for &(d, i, j) in &pairs {
        if d == 0.0 {
            continue;
        }
        let c = sector(i, j);
        if slots.free(i, c) && slots.free(j, c.opposite()) {
            slots.link(i, j, c);
        }
    }

    // join components through their closest pair, rotating away from
    // occupied sectors when needed
    let mut parent: Vec<usize> = (0..n).collect();
    for (&(a, _), &b) in &slots.taken {
        if a < n && b < n {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    loop {
        let mut linked = false;
        for &(d, i, j) in &pairs {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let base = if d == 0.0 { Cardinal::East } else { sector(i, j) };
            let choice = [0i32, 1, -1, 2, -2, 3, -3, 4]
                .into_iter()
                .map(|k| Cardinal::from_index((base.index() as i32 + k).rem_euclid(8) as usize))
                .find(|&c| slots.free(i, c) && slots.free(j, c.opposite()));
            if let Some(c) = choice {
                slots.link(i, j, c);
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
                linked = true;
                break;
            }
        }
        if !linked {
            break;
        }
    }
    slots
}

fn exits_line(slots: &Slots, room: usize, titles: &[String]) -> String {
    let mut items = Vec::new();
    for c in Cardinal::ALL {
        if let Some(&to) = slots.taken.get(&(room, c)) {
            items.push(format!("{c} to {}", titles[to]));
        }
    }
    if items.is_empty() {
        "Exits: none.".into()
    } else {
        format!("Exits: {}.", join_and(&items))
    }
}

/// One room per feature plus an overview room. The overview's south exit
/// leads to the northernmost room.
pub fn build_mud_map(
    doc: &MapDocument,
    options: &ReprOptions,
) -> Result<(RoomGraph, RepresentationManifest), BuildError> {
    precheck(doc)?;
    let corpus = Corpus::build(doc, &options.describe);
    let n = doc.features.len();
    let raw: Vec<Point> = doc.features.iter().map(|f| centroid(&f.geometry)).collect();
    let centers = LocalFrame::around(doc.crs, &raw).project_all(&raw);
    let slots = assign_exits(&centers);

    let mut overview_id = OVERVIEW_ROOM.to_string();
    while doc.feature(&overview_id).is_some() {
        overview_id.push('~');
    }
    let mut ids: Vec<String> = doc.features.iter().map(|f| f.id.clone()).collect();
    ids.push(overview_id.clone());
    let mut titles = corpus.names.clone();
    titles.push("Overview".into());

    let mut overview = vec![corpus.overview.clone()];
    if !corpus.legend_lines.is_empty() {
        overview.push(format!("Legend: {}", corpus.legend_lines.join(" ")));
    }
    if !corpus.routes.is_empty() {
        let mut s = String::from("Routes:");
        for r in &corpus.routes {
            s.push_str(&format!(
                "\n{}\n{}\n{}",
                r.prominence_heading, r.landmark_section, r.survey_section
            ));
        }
        overview.push(s);
    }
    overview.extend(corpus.temporal_section.clone());
    overview.extend(corpus.thematic_section.clone());
    overview.push(exits_line(&slots, n, &titles));

    let mut rooms = vec![Room {
        id: overview_id.clone(),
        title: "Overview".into(),
        description: overview.join("\n\n"),
        features: Vec::new(),
    }];
    for i in 0..n {
        let statements: Vec<&str> = corpus.directed[i].iter().map(|p| p.text.as_str()).collect();
        let mut parts = vec![corpus.landmarks[i].paragraph()];
        if !statements.is_empty() {
            parts.push(statements.join(" "));
        }
        parts.push(exits_line(&slots, i, &titles));
        rooms.push(Room {
            id: ids[i].clone(),
            title: titles[i].clone(),
            description: parts.join("\n\n"),
            features: vec![ids[i].clone()],
        });
    }

    let ordered: BTreeMap<(usize, usize), usize> = slots
        .taken
        .iter()
        .map(|(&(room, c), &to)| (((room + 1) % (n + 1), c.index()), to))
        .collect();
    let exits = ordered
        .into_iter()
        .map(|((pos, dir), to)| {
            let room = (pos + n) % (n + 1);
            Exit {
                from: ids[room].clone(),
                direction: Cardinal::from_index(dir),
                to: ids[to].clone(),
            }
        })
        .collect();
    let graph = RoomGraph {
        start: overview_id,
        rooms,
        exits,
    };
    Ok((graph, corpus_manifest(RepresentationKind::MudMap, &corpus)))
}
