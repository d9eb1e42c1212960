use std::collections::BTreeSet;

use super::{local_name, ParseError, ParseErrorKind};
use crate::model::{Axiom, ConceptExpr, Entity, EntityKind, Name, Ontology, RoleExpr, Signature};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject names that have no declaration.
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct ParsedOntology {
    pub ontology: Ontology,
    pub declared: Signature,
    /// Whether the document gave the ontology a name.
    pub named: bool,
    /// Skipped annotations, imports and prefixes.
    pub warnings: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
    Iri(String),
    Str(String),
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(pos.line, pos.col, ParseErrorKind::Syntax, msg)
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '(' => {
                bump!();
                out.push((Tok::Open, pos));
            }
            ')' => {
                bump!();
                out.push((Tok::Close, pos));
            }
            '<' => {
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('>') => {
                            s.push('>');
                            break;
                        }
                        Some('\n') | None => return Err(syntax(pos, "unterminated IRI")),
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Iri(s), pos));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some(c) => s.push(c),
                            None => return Err(syntax(pos, "unterminated string")),
                        },
                        Some(c) => s.push(c),
                        None => return Err(syntax(pos, "unterminated string")),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            '>' => return Err(syntax(pos, "unexpected `>`")),
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "()<>\"".contains(c) {
                        break;
                    }
                    s.push(c);
                    bump!();
                }
                out.push((Tok::Word(s), pos));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Sexp {
    Word(String, Pos),
    Iri(String, Pos),
    Str(Pos),
    Call(String, Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Word(_, p) | Sexp::Iri(_, p) | Sexp::Str(p) | Sexp::Call(_, _, p) => *p,
        }
    }
}

fn build(tokens: Vec<(Tok, Pos)>) -> Result<Vec<Sexp>, ParseError> {
    // Stack of open calls: keyword, position, arguments so far.
    let mut stack: Vec<(String, Pos, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    let mut it = tokens.into_iter().peekable();
    while let Some((tok, pos)) = it.next() {
        let item = match tok {
            Tok::Word(w) => {
                if matches!(it.peek(), Some((Tok::Open, _))) {
                    it.next();
                    stack.push((w, pos, Vec::new()));
                    continue;
                }
                Sexp::Word(w, pos)
            }
            Tok::Iri(s) => Sexp::Iri(s, pos),
            Tok::Str(_) => Sexp::Str(pos),
            Tok::Open => return Err(syntax(pos, "`(` must follow a keyword")),
            Tok::Close => match stack.pop() {
                Some((kw, p, args)) => Sexp::Call(kw, args, p),
                None => return Err(syntax(pos, "unbalanced `)`")),
            },
        };
        match stack.last_mut() {
            Some((_, _, args)) => args.push(item),
            None => top.push(item),
        }
    }
    if let Some((kw, p, _)) = stack.pop() {
        return Err(syntax(p, format!("unbalanced parenthesis: `{kw}(` is never closed")));
    }
    Ok(top)
}

const OWL: &str = "http://www.w3.org/2002/07/owl#";

/// The OWL built-in a name denotes, if any.
fn builtin(raw: &str) -> Option<&str> {
    if let Some(rest) = raw.strip_prefix("owl:") {
        return Some(rest);
    }
    raw.strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .and_then(|s| s.strip_prefix(OWL))
}

fn is_annotation_keyword(kw: &str) -> bool {
    matches!(
        kw,
        "Annotation" | "AnnotationAssertion" | "SubAnnotationPropertyOf" | "AnnotationPropertyDomain" | "AnnotationPropertyRange"
    )
}

struct Reader {
    strict: bool,
    declared: BTreeSet<Entity>,
    warnings: usize,
    errors: Vec<ParseError>,
}

fn unsupported(kw: &str, pos: Pos) -> ParseError {
    let mut e = ParseError::new(
        pos.line,
        pos.col,
        ParseErrorKind::UnsupportedConstruct,
        format!("unsupported construct `{kw}`"),
    );
    e.construct = Some(kw.to_string());
    e
}

impl Reader {
    fn name(&self, s: &Sexp, kind: EntityKind) -> Result<Name, ParseError> {
        let (raw, pos) = match s {
            Sexp::Word(w, p) | Sexp::Iri(w, p) => (w.as_str(), *p),
            Sexp::Str(p) => return Err(syntax(*p, "expected a name, found a string")),
            Sexp::Call(kw, _, p) => return Err(syntax(*p, format!("expected a name, found `{kw}(…)`"))),
        };
        if let Some(b) = builtin(raw) {
            return Err(unsupported(&format!("owl:{b}"), pos));
        }
        let name = Name::new(local_name(raw));
        if name.as_str().is_empty() {
            return Err(syntax(pos, format!("empty name in `{raw}`")));
        }
        let entity = match kind {
            EntityKind::Concept => Entity::Concept(name.clone()),
            EntityKind::Role => Entity::Role(name.clone()),
            EntityKind::Individual => Entity::Individual(name.clone()),
        };
        if self.strict && !self.declared.contains(&entity) {
            return Err(ParseError::new(
                pos.line,
                pos.col,
                ParseErrorKind::UnknownEntity,
                format!("`{name}` is used as {} without a declaration", kind_word(kind)),
            ));
        }
        Ok(name)
    }

    fn role(&self, s: &Sexp) -> Result<RoleExpr, ParseError> {
        match s {
            Sexp::Call(kw, args, pos) if kw == "ObjectInverseOf" => {
                let [inner] = args.as_slice() else {
                    return Err(arity(kw, 1, *pos));
                };
                Ok(RoleExpr::Inverse(Box::new(self.role(inner)?)))
            }
            Sexp::Call(kw, _, pos) => Err(unsupported(kw, *pos)),
            Sexp::Word(w, _) | Sexp::Iri(w, _) if builtin(w) == Some("topObjectProperty") => Ok(RoleExpr::Universal),
            Sexp::Word(w, _) | Sexp::Iri(w, _) if builtin(w) == Some("bottomObjectProperty") => Ok(RoleExpr::Empty),
            _ => Ok(RoleExpr::Name(self.name(s, EntityKind::Role)?)),
        }
    }

    fn concept(&self, s: &Sexp) -> Result<ConceptExpr, ParseError> {
        let (kw, args, pos) = match s {
            Sexp::Word(w, _) | Sexp::Iri(w, _) => {
                return match builtin(w) {
                    Some("Thing") => Ok(ConceptExpr::Top),
                    Some("Nothing") => Ok(ConceptExpr::Bottom),
                    _ => Ok(ConceptExpr::Name(self.name(s, EntityKind::Concept)?)),
                }
            }
            Sexp::Str(p) => return Err(syntax(*p, "expected a class expression, found a string")),
            Sexp::Call(kw, args, pos) => (kw.as_str(), args.as_slice(), *pos),
        };
        let list = |min: usize| -> Result<Vec<ConceptExpr>, ParseError> {
            if args.len() < min {
                return Err(syntax(pos, format!("`{kw}` needs at least {min} operands")));
            }
            args.iter().map(|a| self.concept(a)).collect()
        };
        Ok(match kw {
            "ObjectIntersectionOf" => ConceptExpr::and(list(1)?),
            "ObjectUnionOf" => ConceptExpr::or(list(1)?),
            "ObjectComplementOf" => {
                let [c] = args else { return Err(arity(kw, 1, pos)) };
                ConceptExpr::not(self.concept(c)?)
            }
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                let [r, c] = args else { return Err(arity(kw, 2, pos)) };
                let (r, c) = (self.role(r)?, self.concept(c)?);
                if kw == "ObjectSomeValuesFrom" {
                    ConceptExpr::exists(r, c)
                } else {
                    ConceptExpr::forall(r, c)
                }
            }
            "ObjectMinCardinality" | "ObjectMaxCardinality" | "ObjectExactCardinality" => {
                let (n, r, c) = match args {
                    [n, r] => (n, r, None),
                    [n, r, c] => (n, r, Some(c)),
                    _ => return Err(syntax(pos, format!("`{kw}` takes a number, a property and an optional class"))),
                };
                let n = match n {
                    Sexp::Word(w, p) => w
                        .parse::<u32>()
                        .map_err(|_| syntax(*p, format!("`{w}` is not a non-negative integer")))?,
                    other => return Err(syntax(other.pos(), "expected a cardinality")),
                };
                let r = self.role(r)?;
                let c = match c {
                    Some(c) => self.concept(c)?,
                    None => ConceptExpr::Top,
                };
                match kw {
                    "ObjectMinCardinality" => ConceptExpr::at_least(n, r, c),
                    "ObjectMaxCardinality" => ConceptExpr::at_most(n, r, c),
                    _ => ConceptExpr::exactly(n, r, c),
                }
            }
            "ObjectOneOf" => match args {
                [a] => ConceptExpr::OneOf(self.name(a, EntityKind::Individual)?),
                _ => {
                    let mut e = unsupported(kw, pos);
                    e.message = "only single-individual `ObjectOneOf` is supported".into();
                    return Err(e);
                }
            },
            "ObjectHasValue" => {
                let [r, a] = args else { return Err(arity(kw, 2, pos)) };
                ConceptExpr::exists(self.role(r)?, ConceptExpr::OneOf(self.name(a, EntityKind::Individual)?))
            }
            other => return Err(unsupported(other, pos)),
        })
    }

    /// Arguments with leading axiom annotations dropped.
    fn strip_annotations<'a>(&mut self, args: &'a [Sexp]) -> &'a [Sexp] {
        let skip = args
            .iter()
            .take_while(|a| matches!(a, Sexp::Call(kw, _, _) if kw == "Annotation"))
            .count();
        self.warnings += skip;
        &args[skip..]
    }

    fn axioms(&mut self, kw: &str, args: &[Sexp], pos: Pos) -> Result<Vec<Axiom>, ParseError> {
        let args = self.strip_annotations(args);
        let concepts = |min: usize| -> Result<Vec<ConceptExpr>, ParseError> {
            if args.len() < min {
                return Err(syntax(pos, format!("`{kw}` needs at least {min} operands")));
            }
            args.iter().map(|a| self.concept(a)).collect()
        };
        let roles = |min: usize| -> Result<Vec<RoleExpr>, ParseError> {
            if args.len() < min {
                return Err(syntax(pos, format!("`{kw}` needs at least {min} operands")));
            }
            args.iter().map(|a| self.role(a)).collect()
        };
        Ok(match kw {
            "Declaration" => Vec::new(),
            "SubClassOf" => {
                let [c, d] = args else { return Err(arity(kw, 2, pos)) };
                vec![Axiom::SubClassOf(self.concept(c)?, self.concept(d)?)]
            }
            "EquivalentClasses" => {
                let cs = concepts(2)?;
                cs.windows(2)
                    .map(|w| Axiom::EquivalentClasses(w[0].clone(), w[1].clone()))
                    .collect()
            }
            "DisjointClasses" => {
                let cs = concepts(2)?;
                let mut out = Vec::new();
                for i in 0..cs.len() {
                    for j in i + 1..cs.len() {
                        out.push(Axiom::DisjointClasses(cs[i].clone(), cs[j].clone()));
                    }
                }
                out
            }
            "SubObjectPropertyOf" => {
                let [r, s] = args else { return Err(arity(kw, 2, pos)) };
                vec![Axiom::SubRoleOf(self.role(r)?, self.role(s)?)]
            }
            "EquivalentObjectProperties" => {
                let rs = roles(2)?;
                rs.windows(2)
                    .map(|w| Axiom::EquivalentRoles(w[0].clone(), w[1].clone()))
                    .collect()
            }
            "InverseObjectProperties" => {
                let [r, s] = args else { return Err(arity(kw, 2, pos)) };
                vec![Axiom::InverseRoles(self.role(r)?, self.role(s)?)]
            }
            "TransitiveObjectProperty" => {
                let [r] = args else { return Err(arity(kw, 1, pos)) };
                vec![Axiom::Transitive(self.role(r)?)]
            }
            "ObjectPropertyDomain" | "ObjectPropertyRange" => {
                let [r, c] = args else { return Err(arity(kw, 2, pos)) };
                let (r, c) = (self.role(r)?, self.concept(c)?);
                if kw == "ObjectPropertyDomain" {
                    vec![Axiom::Domain(r, c)]
                } else {
                    vec![Axiom::Range(r, c)]
                }
            }
            other => return Err(unsupported(other, pos)),
        })
    }

    /// Record a declaration. Declarations of annotation and data entities are
    /// skipped.
    fn declare(&mut self, args: &[Sexp], pos: Pos) -> Result<(), ParseError> {
        let args = self.strip_annotations(args);
        let [Sexp::Call(kind, inner, p)] = args else {
            return Err(syntax(pos, "`Declaration` takes one entity"));
        };
        let kind = match kind.as_str() {
            "Class" => EntityKind::Concept,
            "ObjectProperty" => EntityKind::Role,
            "NamedIndividual" => EntityKind::Individual,
            "AnnotationProperty" | "DataProperty" | "Datatype" => {
                self.warnings += 1;
                return Ok(());
            }
            other => return Err(unsupported(other, *p)),
        };
        let [entity] = inner.as_slice() else {
            return Err(arity(kind_word(kind), 1, *p));
        };
        let raw = match entity {
            Sexp::Word(w, _) | Sexp::Iri(w, _) => w,
            other => return Err(syntax(other.pos(), "expected a name")),
        };
        if builtin(raw).is_some() {
            return Ok(());
        }
        let name = Name::new(local_name(raw));
        self.declared.insert(match kind {
            EntityKind::Concept => Entity::Concept(name),
            EntityKind::Role => Entity::Role(name),
            EntityKind::Individual => Entity::Individual(name),
        });
        Ok(())
    }
}

fn kind_word(kind: EntityKind) -> &'static str {
    match kind {
        EntityKind::Concept => "a class",
        EntityKind::Role => "an object property",
        EntityKind::Individual => "an individual",
    }
}

fn arity(kw: &str, n: usize, pos: Pos) -> ParseError {
    syntax(pos, format!("`{kw}` takes {n} operand{}", if n == 1 { "" } else { "s" }))
}

/// Parse an ontology document. Axioms may appear inside one
/// `Ontology(…)` block or at the top level.
pub fn parse_ontology_with(text: &str, opts: &ParseOptions) -> Result<ParsedOntology, Vec<ParseError>> {
    let tree = build(tokenize(text).map_err(|e| vec![e])?).map_err(|e| vec![e])?;
    let mut reader = Reader {
        strict: opts.strict,
        declared: BTreeSet::new(),
        warnings: 0,
        errors: Vec::new(),
    };

    // Flatten the document into (keyword, args, pos) axiom candidates.
    let mut name: Option<String> = None;
    let mut items: Vec<(&str, &[Sexp], Pos)> = Vec::new();
    let mut seen_ontology = false;
    for node in &tree {
        match node {
            Sexp::Call(kw, _, _) if kw == "Prefix" => reader.warnings += 1,
            Sexp::Call(kw, args, pos) if kw == "Ontology" => {
                if seen_ontology {
                    reader.errors.push(syntax(*pos, "more than one `Ontology` block"));
                    continue;
                }
                seen_ontology = true;
                for arg in args {
                    match arg {
                        Sexp::Word(w, _) | Sexp::Iri(w, _) => {
                            if name.is_none() {
                                name = Some(local_name(w).to_string());
                            }
                        }
                        Sexp::Call(kw, _, _) if kw == "Import" || kw == "Annotation" => reader.warnings += 1,
                        Sexp::Call(kw, a, p) => items.push((kw, a, *p)),
                        Sexp::Str(p) => reader.errors.push(syntax(*p, "unexpected string")),
                    }
                }
            }
            Sexp::Call(kw, args, pos) => items.push((kw, args, *pos)),
            other => reader
                .errors
                .push(syntax(other.pos(), "expected an axiom or an `Ontology` block")),
        }
    }

    for &(kw, args, pos) in &items {
        if kw == "Declaration" {
            if let Err(e) = reader.declare(args, pos) {
                reader.errors.push(e);
            }
        }
    }
    let mut axioms = Vec::new();
    for &(kw, args, pos) in &items {
        if is_annotation_keyword(kw) {
            reader.warnings += 1;
            continue;
        }
        match reader.axioms(kw, args, pos) {
            Ok(a) => axioms.extend(a),
            Err(e) => reader.errors.push(e),
        }
    }
    if !reader.errors.is_empty() {
        reader.errors.sort_by_key(|e| (e.line, e.column));
        return Err(reader.errors);
    }
    let declared: Signature = reader.declared.iter().cloned().collect();
    Ok(ParsedOntology {
        named: name.is_some(),
        ontology: Ontology::new(name.unwrap_or_else(|| "ontology".to_string()), axioms),
        declared,
        warnings: reader.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_ontology;

    fn one(text: &str) -> Axiom {
        let o = parse_ontology(text).unwrap();
        assert_eq!(o.len(), 1, "{o:?}");
        o.axioms()[0].clone()
    }

    #[test]
    fn duck() {
        assert_eq!(
            one("SubClassOf(Duck ObjectSomeValuesFrom(eats Grass))"),
            Axiom::SubClassOf(
                ConceptExpr::named("Duck"),
                ConceptExpr::exists(RoleExpr::named("eats"), ConceptExpr::named("Grass"))
            )
        );
    }

    #[test]
    fn inverse_tautology() {
        let p = RoleExpr::named("P");
        assert_eq!(
            one("InverseObjectProperties(P ObjectInverseOf(P))"),
            Axiom::InverseRoles(p.clone(), p.inverse())
        );
    }

    #[test]
    fn unbalanced() {
        let err = parse_ontology("SubClassOf(A").unwrap_err();
        assert_eq!(err[0].kind, ParseErrorKind::Syntax);
        assert_eq!((err[0].line, err[0].column), (1, 1));
        let err = parse_ontology("SubClassOf(A B))").unwrap_err();
        assert_eq!(err[0].kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn document_structure() {
        let text = r#"
Prefix(:=<http://example.org/zoo#>)
Prefix(owl:=<http://www.w3.org/2002/07/owl#>)
Ontology(<http://example.org/zoo>
  Import(<http://example.org/other>)
  Annotation(rdfs:comment "a zoo # not a comment")
  Declaration(Class(:Koala))
  Declaration(AnnotationProperty(rdfs:label))
  # a comment
  AnnotationAssertion(rdfs:label :Koala "Koala"@en)
  SubClassOf(Annotation(rdfs:comment "x") <http://example.org/zoo#Koala> owl:Thing)
  EquivalentClasses(A B C)
  DisjointClasses(A B C)
  ObjectPropertyDomain(eats Animal)
  SubClassOf(A ObjectExactCardinality(3 c))
  SubClassOf(A ObjectHasValue(g m))
)
"#;
        let p = parse_ontology_with(text, &ParseOptions::default()).unwrap();
        let o = &p.ontology;
        assert_eq!(o.name(), "zoo");
        // 1 + 2 + 3 + 1 + 1 + 1
        assert_eq!(o.len(), 9);
        assert_eq!(o.axioms()[0], Axiom::SubClassOf(ConceptExpr::named("Koala"), ConceptExpr::Top));
        assert_eq!(
            o.axioms()[6],
            Axiom::SubClassOf(ConceptExpr::exists(RoleExpr::named("eats"), ConceptExpr::Top), ConceptExpr::named("Animal"))
        );
        assert_eq!(
            o.axioms()[7],
            Axiom::SubClassOf(ConceptExpr::named("A"), ConceptExpr::exactly(3, RoleExpr::named("c"), ConceptExpr::Top))
        );
        assert_eq!(
            o.axioms()[8],
            Axiom::SubClassOf(
                ConceptExpr::named("A"),
                ConceptExpr::exists(RoleExpr::named("g"), ConceptExpr::nominal("m"))
            )
        );
        assert_eq!(p.declared, Signature::of(&["Koala"], &[]));
        // Two prefixes, import, ontology annotation, annotation property
        // declaration, assertion, axiom annotation.
        assert_eq!(p.warnings, 7);
    }

    #[test]
    fn unsupported_constructs() {
        let text = "SubClassOf(A B)\nSubObjectPropertyOf(ObjectPropertyChain(r s) t)\nSubClassOf(A DataSomeValuesFrom(d xsd:int))\nClassAssertion(A a)\nSubClassOf(A ObjectOneOf(a b))";
        let err = parse_ontology(text).unwrap_err();
        assert_eq!(err.len(), 4);
        assert!(err.iter().all(|e| e.kind == ParseErrorKind::UnsupportedConstruct));
        let lines: Vec<usize> = err.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 3, 4, 5]);
        assert_eq!(err[0].construct.as_deref(), Some("ObjectPropertyChain"));
        assert_eq!(err[2].construct.as_deref(), Some("ClassAssertion"));
    }

    #[test]
    fn strict_declarations() {
        let text = "Declaration(Class(A))\nSubClassOf(A B)";
        let strict = ParseOptions { strict: true };
        let err = parse_ontology_with(text, &strict).unwrap_err();
        assert_eq!(err[0].kind, ParseErrorKind::UnknownEntity);
        assert_eq!((err[0].line, err[0].column), (2, 14));
        assert!(parse_ontology_with("Declaration(Class(A))\nDeclaration(Class(B))\nSubClassOf(A B)", &strict).is_ok());
        assert!(parse_ontology(text).is_ok());
    }

    #[test]
    fn bad_cardinality() {
        let err = parse_ontology("SubClassOf(A ObjectMinCardinality(x r B))").unwrap_err();
        assert_eq!(err[0].kind, ParseErrorKind::Syntax);
        assert_eq!(err[0].column, 35);
    }
}
