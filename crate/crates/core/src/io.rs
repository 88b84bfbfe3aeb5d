//! Text formats for complexes and cochains, and counterexample bundles.
//!
//! Complex files start with `dim d`, followed by one top face per line as
//! vertex ids, optionally suffixed with `w p/q`. Weights are normalized to
//! sum to 1. Cochain files start with `dim k group <spec>`, followed by
//! `v0 … vk <element-index>` for every face with a non-identity value.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::Zero;

use crate::cochain::Cochain;
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::rational::{self, Rational};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| Error::Parse("empty complex file".into()))?;
    let d: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", d] => d.parse().map_err(|_| parse_err(ln, "bad dimension"))?,
        _ => return Err(parse_err(ln, "expected header `dim d`")),
    };
    let mut tops = Vec::new();
    let mut weights: Vec<Option<Rational>> = Vec::new();
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (verts, weight) = match tokens.iter().position(|t| *t == "w") {
            Some(p) if p + 2 == tokens.len() => (&tokens[..p], Some(rational::parse(tokens[p + 1])?)),
            Some(_) => return Err(parse_err(ln, "weight suffix must be `w p/q`")),
            None => (&tokens[..], None),
        };
        let face = verts
            .iter()
            .map(|t| t.parse::<Vertex>().map_err(|_| parse_err(ln, format!("bad vertex `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        tops.push(face);
        weights.push(weight);
    }
    if weights.iter().all(Option::is_none) {
        return SimplicialComplex::build(tops, d);
    }
    let weights: Vec<Rational> = weights
        .into_iter()
        .map(|w| w.ok_or_else(|| Error::BadWeights("either every top face has a weight or none does".into())))
        .collect::<Result<_>>()?;
    let total: Rational = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::BadWeights("weights sum to zero".into()));
    }
    SimplicialComplex::build_weighted(tops, d, weights.into_iter().map(|w| w / &total).collect())
}

/// Canonical form: faces in lexicographic order, weights only when non-uniform.
pub fn write_complex(x: &SimplicialComplex) -> String {
    let d = x.dim();
    let mut out = format!("dim {d}\n");
    for (i, face) in x.faces(d).iter().enumerate() {
        let verts: Vec<String> = face.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        if !x.is_uniform() {
            let _ = write!(out, " w {}", rational::format(x.weight(d, i)));
        }
        out.push('\n');
    }
    out
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&fs::read_to_string(path)?)
}

/// Parses a cochain. The group is taken from `group` when given, otherwise
/// from the header spec (with `table:` paths resolved against `base`).
pub fn parse_cochain(
    text: &str,
    x: &Arc<SimplicialComplex>,
    group: Option<&Arc<FiniteGroup>>,
    base: Option<&Path>,
) -> Result<Cochain> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| Error::Parse("empty cochain file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (k, spec) = match tokens.as_slice() {
        ["dim", k, "group", spec] => (k.parse::<isize>().map_err(|_| parse_err(ln, "bad dimension"))?, *spec),
        _ => return Err(parse_err(ln, "expected header `dim k group <spec>`")),
    };
    let group = match group {
        Some(g) => g.clone(),
        None => Arc::new(resolve_group(spec, base)?),
    };
    let mut f = Cochain::zero(x, &group, k)?;
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (last, verts) = tokens.split_last().expect("non-empty line");
        let verts = verts
            .iter()
            .map(|t| t.parse::<Vertex>().map_err(|_| parse_err(ln, format!("bad vertex `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if verts.len() as isize != k + 1 {
            return Err(parse_err(ln, format!("expected {} vertices", k + 1)));
        }
        let face = Face::new(verts.clone());
        if face.len() != verts.len() || face.vertices() != verts.as_slice() {
            return Err(parse_err(ln, "faces must be listed in ascending vertex order"));
        }
        let idx: usize = last.parse().map_err(|_| parse_err(ln, format!("bad element index `{last}`")))?;
        let el = group.element(idx)?;
        f.set(x.require_index(&face)?, el);
    }
    Ok(f)
}

/// Parses a group spec, resolving relative `table:` paths against `base`.
pub fn resolve_group(spec: &str, base: Option<&Path>) -> Result<FiniteGroup> {
    match (spec.strip_prefix("table:"), base) {
        (Some(p), Some(b)) if Path::new(p).is_relative() => FiniteGroup::load_table(&b.join(p)),
        _ => FiniteGroup::parse(spec),
    }
}

pub fn write_cochain(f: &Cochain) -> String {
    let mut out = format!("dim {} group {}\n", f.dim(), f.group().spec());
    for (face, v) in f.entries() {
        for u in face.vertices() {
            let _ = write!(out, "{u} ");
        }
        let _ = writeln!(out, "{}", v.index());
    }
    out
}

pub fn read_cochain(path: &Path, x: &Arc<SimplicialComplex>, group: Option<&Arc<FiniteGroup>>) -> Result<Cochain> {
    parse_cochain(&fs::read_to_string(path)?, x, group, path.parent())
}

/// A complex, named cochains and a JSON claim record.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub complex: Arc<SimplicialComplex>,
    pub cochains: Vec<(String, Cochain)>,
    pub claim: serde_json::Value,
}

/// Writes `complex.txt`, `<name>.cochain` files and `claim.json` into `dir`.
pub fn write_bundle(dir: &Path, bundle: &Bundle) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("complex.txt"), write_complex(&bundle.complex))?;
    let mut claim = bundle.claim.clone();
    let names: Vec<String> = bundle.cochains.iter().map(|(n, _)| n.clone()).collect();
    if let Some(obj) = claim.as_object_mut() {
        obj.insert("cochains".into(), serde_json::json!(names));
    }
    for (name, f) in &bundle.cochains {
        fs::write(dir.join(format!("{name}.cochain")), write_cochain(f))?;
    }
    fs::write(dir.join("claim.json"), serde_json::to_string_pretty(&claim)? + "\n")?;
    Ok(dir.to_path_buf())
}

pub fn read_bundle(dir: &Path) -> Result<Bundle> {
    let complex = Arc::new(read_complex(&dir.join("complex.txt"))?);
    let claim: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("claim.json"))?)?;
    let names: Vec<String> = claim
        .get("cochains")
        .and_then(|v| v.as_array())
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default();
    let mut cochains = Vec::new();
    for name in names {
        let f = read_cochain(&dir.join(format!("{name}.cochain")), &complex, None)?;
        cochains.push((name, f));
    }
    Ok(Bundle { complex, cochains, claim })
}

/// Element labels of a cochain's support, for human-readable output.
pub fn describe_entries(f: &Cochain) -> Vec<(Vec<Vertex>, String)> {
    f.entries().map(|(face, v): (&Face, GroupElement)| (face.vertices().to_vec(), f.group().label(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::rational::ratio;

    #[test]
    fn complex_roundtrip() {
        let x = generate::complete(5, 2).unwrap();
        let text = write_complex(&x);
        assert!(text.starts_with("dim 2\n0 1 2\n"));
        assert_eq!(parse_complex(&text).unwrap(), x);
    }

    #[test]
    fn weighted_complex_is_normalized() {
        let x = parse_complex("dim 1\n# two edges\n0 1 w 1\n1 2 w 3\n").unwrap();
        assert_eq!(x.weight(1, 0), &ratio(1, 4));
        let again = parse_complex(&write_complex(&x)).unwrap();
        assert_eq!(again, x);
        assert!(matches!(parse_complex("dim 1\n0 1 w 1\n1 2\n"), Err(Error::BadWeights(_))));
        assert!(matches!(parse_complex("dim 1\n0 1 2\n"), Err(Error::NonUniformCardinality { .. })));
        assert!(matches!(parse_complex("size 1\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn cochain_roundtrip() {
        let x = Arc::new(generate::complete(4, 2).unwrap());
        let g = Arc::new(FiniteGroup::parse("S3").unwrap());
        let mut f = Cochain::zero(&x, &g, 1).unwrap();
        f.set(2, GroupElement::from_index(4));
        let text = write_cochain(&f);
        assert_eq!(parse_cochain(&text, &x, None, None).unwrap(), f);
        assert!(parse_cochain("dim 1 group S3\n1 0 2\n", &x, None, None).is_err());
    }

    #[test]
    fn bundle_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let x = Arc::new(generate::torus());
        let g = Arc::new(FiniteGroup::parse("Z2").unwrap());
        let mut f = Cochain::zero(&x, &g, 1).unwrap();
        f.set(5, GroupElement::from_index(1));
        let bundle = Bundle { complex: x.clone(), cochains: vec![("f".into(), f.clone())], claim: serde_json::json!({"claim": "demo"}) };
        write_bundle(dir.path(), &bundle).unwrap();
        let back = read_bundle(dir.path()).unwrap();
        assert_eq!(*back.complex, *x);
        assert_eq!(back.cochains[0].1, f);
        assert_eq!(back.claim["claim"], "demo");
    }
}
