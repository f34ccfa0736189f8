//! Gallery documents: JSON with exact rationals written as strings.
//!
//! ```text
//! {"galleries":[{"alcoves":[[["-1"],["0"]]],"panels":[[["0"]],[["-1"]]]}],"root_system":"A1"}
//! ```
//!
//! The canonical form has sorted keys, sorted vertices, reduced fractions
//! and no whitespace.

use foldkit::arith::{format_rational, parse_rational};
use foldkit::{CartanType, Face, Gallery, Point, RootSystem};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ParseError: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryDocument {
    pub root_system: CartanType,
    pub galleries: Vec<Gallery>,
}

impl GalleryDocument {
    pub fn new(root_system: CartanType, galleries: Vec<Gallery>) -> Self {
        GalleryDocument { root_system, galleries }
    }

    pub fn system(&self) -> RootSystem {
        RootSystem::new(self.root_system)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ParseError(format!("invalid JSON: {e}")))?;
        let Value::Object(top) = value else {
            return err("document must be an object");
        };
        let Some(Value::String(label)) = top.get("root_system") else {
            return err("missing string field \"root_system\"");
        };
        let root_system: CartanType = label.parse().map_err(|e| ParseError(format!("{e}")))?;
        let rank = RootSystem::new(root_system).rank();
        let Some(Value::Array(items)) = top.get("galleries") else {
            return err("missing array field \"galleries\"");
        };
        if let Some(k) = top.keys().find(|k| *k != "root_system" && *k != "galleries") {
            return err(format!("unknown field \"{k}\""));
        }
        let galleries = items
            .iter()
            .enumerate()
            .map(|(i, g)| parse_gallery(g, rank).map_err(|e| ParseError(format!("gallery {i}: {}", e.0))))
            .collect::<Result<_, _>>()?;
        Ok(GalleryDocument { root_system, galleries })
    }

    pub fn to_value(&self) -> Value {
        json!({
            "root_system": self.root_system.to_string(),
            "galleries": self.galleries.iter().map(gallery_value).collect::<Vec<_>>(),
        })
    }

    /// The canonical serialization.
    pub fn to_canonical(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("documents serialize")
    }
}

fn parse_gallery(v: &Value, rank: usize) -> Result<Gallery, ParseError> {
    let Value::Object(obj) = v else {
        return err("must be an object");
    };
    if let Some(k) = obj.keys().find(|k| *k != "panels" && *k != "alcoves") {
        return err(format!("unknown field \"{k}\""));
    }
    let faces = |key: &str| -> Result<Vec<Face>, ParseError> {
        match obj.get(key) {
            Some(Value::Array(fs)) => fs
                .iter()
                .enumerate()
                .map(|(i, f)| parse_face(f, rank).map_err(|e| ParseError(format!("{key}[{i}]: {}", e.0))))
                .collect(),
            _ => err(format!("missing array field \"{key}\"")),
        }
    };
    let panels = faces("panels")?;
    let alcoves = faces("alcoves")?;
    Gallery::new(panels, alcoves).map_err(|e| ParseError(e.to_string()))
}

fn parse_face(v: &Value, rank: usize) -> Result<Face, ParseError> {
    let Value::Array(vs) = v else {
        return err("a face is a list of vertices");
    };
    let vertices = vs
        .iter()
        .map(|p| parse_point(p, rank))
        .collect::<Result<Vec<_>, _>>()?;
    Face::new(vertices).map_err(|e| ParseError(e.to_string()))
}

fn parse_point(v: &Value, rank: usize) -> Result<Point, ParseError> {
    let Value::Array(cs) = v else {
        return err("a vertex is a list of coordinates");
    };
    if cs.len() != rank {
        return err(format!("vertex has {} coordinates, expected {rank}", cs.len()));
    }
    cs.iter()
        .map(|c| match c {
            Value::String(s) => parse_rational(s).map_err(|e| ParseError(e.to_string())),
            other => err(format!("coordinate {other} must be a string \"a/b\"")),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Point::new)
}

fn face_value(f: &Face) -> Value {
    Value::Array(
        f.vertices()
            .iter()
            .map(|v| Value::Array(v.coords().iter().map(|c| Value::String(format_rational(c))).collect()))
            .collect(),
    )
}

pub fn gallery_value(g: &Gallery) -> Value {
    let mut m = Map::new();
    m.insert("alcoves".into(), Value::Array(g.alcoves().iter().map(face_value).collect()));
    m.insert("panels".into(), Value::Array(g.panels().iter().map(face_value).collect()));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use foldkit::gallery::a1_gallery;

    const DOWN: &str = r#"{"galleries":[{"alcoves":[[["-1"],["0"]],[["-2"],["-1"]]],"panels":[[["0"]],[["-1"]],[["-2"]]]}],"root_system":"A1"}"#;

    #[test]
    fn round_trip() {
        let doc = GalleryDocument::parse(DOWN).unwrap();
        assert_eq!(doc.galleries[0], a1_gallery(&[0, -1, -2], &[(-1, 0), (-2, -1)]));
        assert_eq!(doc.to_canonical(), DOWN);
    }

    #[test]
    fn canonicalizes() {
        let messy = r#"{ "root_system": "A1", "galleries": [ { "panels": [[["0"]], [["-2/2"]], [["-4/2"]]],
            "alcoves": [[["0"], ["-1"]], [["-1"], ["-2"]]] } ] }"#;
        let once = GalleryDocument::parse(messy).unwrap().to_canonical();
        assert_eq!(once, DOWN);
        assert_eq!(GalleryDocument::parse(&once).unwrap().to_canonical(), once);
    }

    #[test]
    fn rejects() {
        for bad in [
            DOWN.replace("\"-2\"],[\"-1\"]", "\"1/0\"],[\"-1\"]"),
            DOWN.replace("A1", "E8"),
            DOWN.replace("[[\"-2\"]]]", "[[\"-2\",\"0\"]]]"),
            DOWN.replace("\"0\"", "0"),
            "[]".to_string(),
            DOWN.replace(",[[\"-2\"]]]", "]"),
        ] {
            assert!(GalleryDocument::parse(&bad).is_err(), "{bad}");
        }
    }
}
