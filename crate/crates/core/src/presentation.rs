//! Connected graded quadratic presentations A = T(V)/(R) with all
//! generators in degree 1, and degree-1 linear maps between them.
//!
//! The relation space R ⊆ V⊗V is stored as a canonical rref basis in the
//! word basis {g_i ⊗ g_j}, ordered lexicographically by (i, j). Two
//! presentations with the same field, the same generators, and the same span
//! of relations therefore compare equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{row_space_basis, ExactMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: FieldSpec,
    generators: Vec<String>,
    /// rref basis of R, dim R × n² (possibly zero rows).
    relations: ExactMatrix,
}

pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYWORDS: &[&str] = &["algebra", "map", "over", "gens", "rels", "adjoin", "mod", "QQ"];

impl QuadraticPresentation {
    /// Canonicalize a presentation from raw degree-2 relation vectors
    /// (length n² each, word order (i, j) lexicographic).
    pub fn new(
        field: FieldSpec,
        generators: Vec<String>,
        relation_vectors: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument(
                "a presentation needs at least one generator".into(),
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if !is_valid_identifier(g) || KEYWORDS.contains(&g.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "invalid generator name `{}`",
                    g
                )));
            }
            if !field.is_rationals() && g == "t" {
                return Err(Error::InvalidArgument(
                    "generator name `t` collides with the extension variable".into(),
                ));
            }
            if generators[..i].contains(g) {
                return Err(Error::NameCollision(g.clone()));
            }
        }
        let n = generators.len();
        let raw = ExactMatrix::from_rows(relation_vectors, n * n, &field)?;
        let relations = row_space_basis(&raw, &field)?;
        Ok(QuadraticPresentation {
            field,
            generators,
            relations,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// dim R.
    pub fn relation_dim(&self) -> usize {
        self.relations.rows()
    }

    /// The canonical rref basis of R, rows of length n².
    pub fn relation_basis(&self) -> &ExactMatrix {
        &self.relations
    }

    /// Index of the word g_i ⊗ g_j in the degree-2 word basis.
    pub fn word_index(&self, i: usize, j: usize) -> usize {
        i * self.num_generators() + j
    }

    /// Inverse of [`word_index`](Self::word_index).
    pub fn word_pair(&self, idx: usize) -> (usize, usize) {
        let n = self.num_generators();
        (idx / n, idx % n)
    }

    /// True when the two presentations differ at most in generator names.
    pub fn same_relation_space(&self, other: &QuadraticPresentation) -> bool {
        self.field == other.field
            && self.num_generators() == other.num_generators()
            && self.relations == other.relations
    }

    /// A generator name not colliding with the existing ones, preferring
    /// the given candidates.
    pub fn fresh_name(&self, preferred: &[&str]) -> String {
        for &c in preferred {
            if !self.generators.iter().any(|g| g == c) && (self.field.is_rationals() || c != "t") {
                return c.to_string();
            }
        }
        let stem = preferred.first().copied().unwrap_or("g");
        for k in 0.. {
            let cand = format!("{}{}", stem, k);
            if !self.generators.iter().any(|g| g == &cand) {
                return cand;
            }
        }
        unreachable!()
    }

    fn format_field(&self) -> String {
        match self.field.modulus() {
            None => "QQ".to_string(),
            Some(m) => format!("QQ adjoin t mod {}", crate::field::poly_to_string(m)),
        }
    }

    fn format_relation(&self, row: &[FieldElement]) -> String {
        let mut out = String::new();
        let mut first = true;
        for (idx, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = self.word_pair(idx);
            let word = format!("{}*{}", self.generators[i], self.generators[j]);
            out.push_str(&format_term(c, &word, first, &self.field));
            first = false;
        }
        if first {
            out.push('0');
        }
        out
    }
}

/// Render `c * body` as a summand, with sign handling; `first` marks the
/// leading term. Shared by the relation and map printers.
pub(crate) fn format_term(
    c: &FieldElement,
    body: &str,
    first: bool,
    field: &FieldSpec,
) -> String {
    let neg_one = field.neg(&field.one());
    let (sign_negative, coef) = if *c == neg_one {
        (true, None)
    } else if *c == field.one() {
        (false, None)
    } else if let Some(r) = c.as_rational() {
        use num_traits::Signed;
        if r.is_negative() {
            (true, Some(field.neg(c)))
        } else {
            (false, Some(c.clone()))
        }
    } else {
        // general extension element: keep it in parentheses, no sign split
        (false, Some(c.clone()))
    };
    let coef_str = coef.map(|c| {
        if c.as_rational().is_some() {
            format!("{}*", c)
        } else {
            format!("({})*", c)
        }
    });
    let mut s = String::new();
    if first {
        if sign_negative {
            s.push('-');
        }
    } else if sign_negative {
        s.push_str(" - ");
    } else {
        s.push_str(" + ");
    }
    if let Some(cs) = coef_str {
        s.push_str(&cs);
    }
    s.push_str(body);
    s
}

impl fmt::Display for QuadraticPresentation {
    /// The DSL form; reparsing reproduces the presentation exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra A over {} {{", self.format_field())?;
        writeln!(f, "  gens {};", self.generators.join(", "))?;
        if self.relation_dim() > 0 {
            let rels: Vec<String> = (0..self.relations.rows())
                .map(|r| self.format_relation(self.relations.row(r)))
                .collect();
            writeln!(f, "  rels {};", rels.join(",\n       "))?;
        }
        write!(f, "}}")
    }
}

/// Emit the presentation in DSL syntax under the given algebra name.
pub fn print_presentation(p: &QuadraticPresentation, name: &str) -> String {
    let text = p.to_string();
    text.replacen("algebra A over", &format!("algebra {} over", name), 1)
}

/// A degree-1 linear map between presentations, recorded as the matrix whose
/// column j is the image of the j-th source generator in target coordinates.
///
/// Flags are set by `morphisms::verify_map`; a freshly parsed or constructed
/// map is unverified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source: QuadraticPresentation,
    target: QuadraticPresentation,
    matrix: ExactMatrix,
    verified: bool,
    automorphism: bool,
}

impl GeneratorMap {
    pub fn new(
        source: QuadraticPresentation,
        target: QuadraticPresentation,
        matrix: ExactMatrix,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::InvalidArgument(
                "map endpoints live over different fields".into(),
            ));
        }
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix must be {}x{}, got {}x{}",
                target.num_generators(),
                source.num_generators(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(GeneratorMap {
            source,
            target,
            matrix,
            verified: false,
            automorphism: false,
        })
    }

    pub fn source(&self) -> &QuadraticPresentation {
        &self.source
    }

    pub fn target(&self) -> &QuadraticPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism
    }

    pub(crate) fn set_flags(&mut self, verified: bool, automorphism: bool) {
        self.verified = verified;
        self.automorphism = automorphism;
    }

    /// The induced matrix on V⊗V (Kronecker square).
    pub fn tensor_square(&self) -> ExactMatrix {
        self.matrix
            .kronecker(&self.matrix, self.source.field())
    }

    /// Image of source generator j, as target degree-1 coordinates.
    pub fn image_of(&self, j: usize) -> Vec<FieldElement> {
        (0..self.matrix.rows())
            .map(|i| self.matrix.at(i, j).clone())
            .collect()
    }

    /// Image of source generator j as a printable linear form, e.g. `2*x + y`.
    pub fn image_string(&self, j: usize) -> String {
        let field = self.source.field();
        let mut out = String::new();
        let mut first = true;
        for i in 0..self.matrix.rows() {
            let c = self.matrix.at(i, j);
            if c.is_zero() {
                continue;
            }
            out.push_str(&format_term(c, &self.target.generators()[i], first, field));
            first = false;
        }
        if first {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for GeneratorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map f : A -> B {{")?;
        for (j, g) in self.source.generators().iter().enumerate() {
            writeln!(f, "  {} -> {};", g, self.image_string(j))?;
        }
        write!(f, "}}")
    }
}

/// The twisting datum for L = A_σ(−1): a graded automorphism together with
/// the shift, which this kernel fixes to 1.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    automorphism: GeneratorMap,
    shift: i64,
}

impl TwistSpec {
    pub fn new(automorphism: GeneratorMap) -> Result<Self> {
        if !automorphism.is_automorphism() {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(TwistSpec {
            automorphism,
            shift: 1,
        })
    }

    pub fn automorphism(&self) -> &GeneratorMap {
        &self.automorphism
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn qq() -> FieldSpec {
        FieldSpec::rationals()
    }

    /// k<x,y>/(xy - 2yx)
    fn skew2() -> QuadraticPresentation {
        let f = qq();
        let mut rel = vec![f.zero(); 4];
        rel[1] = f.one();
        rel[2] = f.from_integer(-2);
        QuadraticPresentation::new(f, vec!["x".into(), "y".into()], vec![rel]).unwrap()
    }

    #[test]
    fn relation_space_is_canonical() {
        let f = qq();
        // same line given by a scalar multiple: -3xy + 6yx
        let mut rel = vec![f.zero(); 4];
        rel[1] = f.from_integer(-3);
        rel[2] = f.from_integer(6);
        let other =
            QuadraticPresentation::new(f, vec!["x".into(), "y".into()], vec![rel]).unwrap();
        assert_eq!(skew2(), other);
    }

    #[test]
    fn duplicate_generators_rejected() {
        let f = qq();
        let res = QuadraticPresentation::new(f, vec!["x".into(), "x".into()], vec![]);
        assert!(matches!(res, Err(Error::NameCollision(_))));
    }

    #[test]
    fn bad_names_rejected() {
        let f = qq();
        for bad in ["1x", "", "rels", "a-b"] {
            let res = QuadraticPresentation::new(f.clone(), vec![bad.into()], vec![]);
            assert!(res.is_err(), "name {:?} should be rejected", bad);
        }
    }

    #[test]
    fn display_prints_expected_relation() {
        let p = skew2();
        let text = p.to_string();
        assert!(text.contains("gens x, y;"), "{}", text);
        assert!(text.contains("x*y - 2*y*x"), "{}", text);
    }

    #[test]
    fn fresh_name_skips_taken_ones() {
        let p = skew2();
        assert_eq!(p.fresh_name(&["x", "y", "z"]), "z");
        assert_eq!(p.fresh_name(&["x"]), "x0");
    }

    #[test]
    fn map_image_string_formats_combinations() {
        let p = skew2();
        let f = p.field().clone();
        let m = ExactMatrix::new(
            2,
            2,
            vec![
                f.one(),
                f.from_integer(2),
                f.zero(),
                f.from_rational(rat(-1, 2)),
            ],
        )
        .unwrap();
        let map = GeneratorMap::new(p.clone(), p, m).unwrap();
        assert_eq!(map.image_string(0), "x");
        assert_eq!(map.image_string(1), "2*x - 1/2*y");
    }
}
