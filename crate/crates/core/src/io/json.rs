//! JSON literals. Rationals travel as `"p/q"` strings (plain integers are
//! accepted on input).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::banach::{LinearEmbedding, PolytopeSpace};
use crate::boolean::{AtomSet, DualSurjection, FiniteBoolAlg, Subalgebra};
use crate::error::{Error, Result};
use crate::geometry::matrix::Matrix;
use crate::geometry::{Rational, Vector};

/// Version tag carried by every report.
pub const SCHEMA: &str = "amalgam/v1";

pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| format!("bad rational {s:?}"))?;
    let d = BigInt::from_str(d).map_err(|_| format!("bad rational {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

pub fn ser_vector<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

pub fn ser_matrix<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.rows.iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()))
}

/// A rational in JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_rational(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Q, E> {
                parse_rational(s).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(n.into())))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(n.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn from_qs(v: &[Q]) -> Vector {
    v.iter().map(|x| x.0.clone()).collect()
}

fn rows_to_matrix(rows: &[Vec<Q>], ncols: usize) -> Matrix {
    Matrix::new(rows.iter().map(|r| from_qs(r)).collect(), ncols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraLit {
    pub atoms: Vec<String>,
}

impl AlgebraLit {
    pub fn of(a: &FiniteBoolAlg) -> Self {
        AlgebraLit { atoms: a.atoms().to_vec() }
    }

    pub fn build(&self) -> Result<FiniteBoolAlg> {
        FiniteBoolAlg::new(self.atoms.iter().cloned())
    }
}

/// A subalgebra of `2^atoms` by its blocks of atom labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraLit {
    pub blocks: Vec<Vec<String>>,
}

impl SubalgebraLit {
    pub fn of(parent: &FiniteBoolAlg, s: &Subalgebra) -> Self {
        SubalgebraLit {
            blocks: s.blocks().iter().map(|b| parent.labels_of(*b)).collect(),
        }
    }

    pub fn build(&self, parent: &FiniteBoolAlg) -> Result<Subalgebra> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| parent.element(b.iter().map(String::as_str)))
            .collect::<Result<Vec<AtomSet>>>()?;
        Subalgebra::from_blocks(parent.len(), blocks)
    }
}

/// An embedding `A → B` as the dual map on atoms, `atom_map[b] = a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingLit {
    pub source: AlgebraLit,
    pub target: AlgebraLit,
    pub atom_map: BTreeMap<String, String>,
}

impl EmbeddingLit {
    pub fn of(e: &DualSurjection) -> Self {
        let t = e.target().atoms();
        let s = e.source().atoms();
        EmbeddingLit {
            source: AlgebraLit::of(e.source()),
            target: AlgebraLit::of(e.target()),
            atom_map: e.atom_map().iter().enumerate().map(|(b, &a)| (t[b].clone(), s[a].clone())).collect(),
        }
    }

    pub fn build(&self) -> Result<DualSurjection> {
        DualSurjection::from_labels(
            self.source.build()?,
            self.target.build()?,
            self.atom_map.iter().map(|(b, a)| (b.as_str(), a.as_str())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceLit {
    pub dim: usize,
    pub dual_gens: Vec<Vec<Q>>,
}

impl SpaceLit {
    pub fn of(x: &PolytopeSpace) -> Self {
        SpaceLit {
            dim: x.dim(),
            dual_gens: x.dual_gens().iter().map(|g| to_qs(g)).collect(),
        }
    }

    /// Negatives of the listed generators are added.
    pub fn build(&self) -> Result<PolytopeSpace> {
        let gens: Vec<Vector> = self.dual_gens.iter().map(|g| from_qs(g)).collect();
        let all = gens.iter().flat_map(|g| [g.clone(), crate::geometry::neg(g)]).collect();
        PolytopeSpace::new(self.dim, all)
    }
}

/// An isometric embedding by its matrix, row-major, `target.dim` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEmbeddingLit {
    pub source: SpaceLit,
    pub target: SpaceLit,
    pub matrix: Vec<Vec<Q>>,
}

impl LinearEmbeddingLit {
    pub fn of(e: &LinearEmbedding) -> Self {
        LinearEmbeddingLit {
            source: SpaceLit::of(e.source()),
            target: SpaceLit::of(e.target()),
            matrix: e.matrix().rows.iter().map(|r| to_qs(r)).collect(),
        }
    }

    pub fn build(&self) -> Result<LinearEmbedding> {
        let source = self.source.build()?;
        let target = self.target.build()?;
        let m = rows_to_matrix(&self.matrix, source.dim());
        LinearEmbedding::new(source, target, m)
    }
}

/// Polytope in V/H form.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeLit {
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
    pub facet_normals: Vec<Vec<Q>>,
}

impl PolytopeLit {
    pub fn of(p: &crate::geometry::polytope::SymmetricPolytope) -> Self {
        PolytopeLit {
            dim: p.dim,
            vertices: p.vertices.iter().map(|v| to_qs(v)).collect(),
            facet_normals: p.facet_normals.iter().map(|v| to_qs(v)).collect(),
        }
    }
}

/// Parses `text` as `T`, reporting `line:column` on failure.
pub fn parse<T: for<'de> Deserialize<'de>>(source: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("{source}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, qf};

    #[test]
    fn rationals_round_trip() {
        for x in [q(0), q(-3), qf(7, 4), qf(-1, 3)] {
            assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
        }
        assert_eq!(parse_rational(" 6/4 ").unwrap(), qf(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let v: Vec<Q> = serde_json::from_str(r#"["1/2", 3, -2]"#).unwrap();
        assert_eq!(from_qs(&v), vec![qf(1, 2), q(3), q(-2)]);
    }

    #[test]
    fn literals_round_trip() {
        let b = FiniteBoolAlg::new(["p", "q", "r"]).unwrap();
        let a = FiniteBoolAlg::new(["x", "y"]).unwrap();
        let e = DualSurjection::from_labels(a, b.clone(), [("p", "x"), ("q", "x"), ("r", "y")]).unwrap();
        let lit: EmbeddingLit = parse("e", &to_pretty(&EmbeddingLit::of(&e))).unwrap();
        assert_eq!(lit.build().unwrap(), e);
        let s = e.image();
        assert_eq!(SubalgebraLit::of(&b, &s).build(&b).unwrap(), s);

        let x = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let lit: SpaceLit = parse("x", &to_pretty(&SpaceLit::of(&x))).unwrap();
        assert_eq!(lit.build().unwrap(), x);
    }

    #[test]
    fn parse_errors_have_locations() {
        match parse::<SpaceLit>("in.json", "{\n \"dim\": 2,\n \"dual_gens\": [[\"1/0\"]]}") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("in.json:3:")),
            other => panic!("{other:?}"),
        }
    }
}
