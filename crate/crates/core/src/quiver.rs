//! Quivers and paths.
//!
//! Paths are stored in traversal order: the arrow applied first comes first.
//! The textual form writes them right to left, so `b*a` is the path that
//! runs along `a` and then along `b`.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed graph. Vertices keep their declaration order; arrows
/// are kept sorted by name, so arrow ids order paths lexicographically by
/// arrow names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` arrows.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(name, s, t)| {
                let source = *vertex_index.get(&s).ok_or(Error::UnknownVertex(s))?;
                let target = *vertex_index.get(&t).ok_or(Error::UnknownVertex(t))?;
                Ok(Arrow {
                    name,
                    source,
                    target,
                })
            })
            .collect::<Result<_>>()?;
        arrows.sort_by(|a, b| a.name.cmp(&b.name));
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if vertex_index.contains_key(&a.name) || arrow_index.insert(a.name.clone(), i).is_some()
            {
                return Err(Error::DuplicateName(a.name.clone()));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// The path running along `arrows` in the given traversal order.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<PathWord> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable("empty arrow list".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NotComposable(format!(
                    "{} then {}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(PathWord {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Parses `b*a` (b after a) or `e(v)` for the trivial path at `v`.
    pub fn parse_path(&self, text: &str) -> Result<PathWord> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e(").and_then(|t| t.strip_suffix(')')) {
            return Ok(PathWord::trivial(self.vertex_id(v.trim())?));
        }
        let mut arrows = text
            .split('*')
            .map(|a| self.arrow_id(a.trim()))
            .collect::<Result<Vec<_>>>()?;
        arrows.reverse();
        self.path(&arrows)
    }

    /// Textual form: `b*a`, or `e(v)` for a trivial path.
    pub fn path_name(&self, p: &PathWord) -> String {
        if p.arrows.is_empty() {
            return format!("e({})", self.vertices[p.source]);
        }
        let names: Vec<&str> = p
            .arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect();
        names.join("*")
    }

    /// The vertices a path passes through, starting with its source.
    pub fn vertex_sequence(&self, p: &PathWord) -> Vec<VertexId> {
        let mut seq = Vec::with_capacity(p.len() + 1);
        seq.push(p.source);
        seq.extend(p.arrows.iter().map(|&a| self.arrows[a].target));
        seq
    }

    /// All arrows starting at `v`, in name order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Every path starting at `v` of length strictly below `bound`, in path order.
    pub fn paths_from(&self, v: VertexId, bound: usize) -> Vec<PathWord> {
        let mut out = Vec::new();
        if bound == 0 {
            return out;
        }
        let mut layer = vec![PathWord::trivial(v)];
        for _ in 1..bound {
            let mut next = Vec::new();
            for p in &layer {
                for a in self.arrows_from(p.target) {
                    next.push(p.then_arrow(self, a));
                }
            }
            out.append(&mut layer);
            layer = next;
        }
        out.append(&mut layer);
        out.sort();
        out
    }

    /// Every path of length `len` starting at `v`.
    pub fn paths_of_length_from(&self, v: VertexId, len: usize) -> Vec<PathWord> {
        let mut layer = vec![PathWord::trivial(v)];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|p| self.arrows_from(p.target).map(move |a| (p, a)))
                .map(|(p, a)| p.then_arrow(self, a))
                .collect();
        }
        layer.sort();
        layer
    }
}

/// A path of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl PathWord {
    pub fn trivial(v: VertexId) -> PathWord {
        PathWord {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The path followed by one more arrow.
    pub fn then_arrow(&self, quiver: &Quiver, a: ArrowId) -> PathWord {
        debug_assert_eq!(quiver.arrow(a).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        PathWord {
            source: self.source,
            target: quiver.arrow(a).target,
            arrows,
        }
    }

    /// `next` after `self`, or `None` when the endpoints do not match.
    pub fn then(&self, next: &PathWord) -> Option<PathWord> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(PathWord {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// The right subpath of length `i`, i.e. the first `i` arrows traversed.
    pub fn right_subpath(&self, quiver: &Quiver, i: usize) -> PathWord {
        if i == 0 {
            return PathWord::trivial(self.source);
        }
        quiver.path(&self.arrows[..i]).expect("prefix of a path")
    }

    /// Whether `prefix` is a right subpath of `self`.
    pub fn has_right_subpath(&self, prefix: &PathWord) -> bool {
        self.source == prefix.source && self.arrows.starts_with(&prefix.arrows)
    }

    /// Replaces the arrows `start..start+len` by `middle`; endpoints must agree.
    pub(crate) fn splice(&self, start: usize, len: usize, middle: &PathWord) -> PathWord {
        let mut arrows = Vec::with_capacity(self.arrows.len() - len + middle.len());
        arrows.extend_from_slice(&self.arrows[..start]);
        arrows.extend_from_slice(&middle.arrows);
        arrows.extend_from_slice(&self.arrows[start + len..]);
        PathWord {
            source: self.source,
            target: self.target,
            arrows,
        }
    }

    /// First position at which `word` occurs as a contiguous block of arrows.
    pub(crate) fn find(&self, word: &[ArrowId]) -> Option<usize> {
        if word.is_empty() || word.len() > self.arrows.len() {
            return None;
        }
        self.arrows.windows(word.len()).position(|w| w == word)
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathWord {
    /// Length first, then lexicographic on arrow names in traversal order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn fix_c() -> Quiver {
        Quiver::new(
            ["1", "2", "3"],
            [
                (s("c"), s("1"), s("2")),
                (s("a"), s("1"), s("2")),
                (s("b"), s("2"), s("3")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn arrows_sorted_by_name() {
        let q = fix_c();
        let names: Vec<_> = q.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn textual_round_trip() {
        let q = fix_c();
        let p = q.parse_path("b*c").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(q.vertex_name(p.source()), "1");
        assert_eq!(q.vertex_name(p.target()), "3");
        assert_eq!(q.path_name(&p), "b*c");
        assert_eq!(q.path_name(&q.parse_path("e(2)").unwrap()), "e(2)");
        assert!(matches!(q.parse_path("c*b"), Err(Error::NotComposable(_))));
        assert!(matches!(q.parse_path("z"), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn path_enumeration_order() {
        let q = fix_c();
        let names: Vec<_> = q
            .paths_from(0, 3)
            .iter()
            .map(|p| q.path_name(p))
            .collect();
        assert_eq!(names, ["e(1)", "a", "c", "b*a", "b*c"]);
        assert_eq!(q.paths_of_length_from(0, 2).len(), 2);
    }

    #[test]
    fn declaration_errors() {
        assert!(matches!(
            Quiver::new(["1"], [(s("x"), s("1"), s("9"))]),
            Err(Error::UnknownVertex(v)) if v == "9"
        ));
        assert!(matches!(
            Quiver::new(["1", "1"], Vec::new()),
            Err(Error::DuplicateName(_))
        ));
    }

    #[test]
    fn subpaths() {
        let q = fix_c();
        let p = q.parse_path("b*c").unwrap();
        let p1 = p.right_subpath(&q, 1);
        assert_eq!(q.path_name(&p1), "c");
        assert!(p.has_right_subpath(&p1));
        assert!(p.has_right_subpath(&PathWord::trivial(0)));
        assert!(!p.has_right_subpath(&q.parse_path("a").unwrap()));
    }
}
