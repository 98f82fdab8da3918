//! Resolution of command-line names to live structures: ambient
//! categories (built-in corpus name, file, or `file:Name`) and the
//! diagram functors behind the shape flags.

use std::path::Path;
use std::sync::Arc;

use cathedra::cat::{FiniteCategory, Mor, Obj};
use cathedra::functor::Functor;
use cathedra::{corpus, Caps};

use crate::CliError;

/// Resolve a category: a corpus name (`Div12`), a path to a document
/// declaring exactly one category, or `path:Name` to pick one of several.
pub fn category(spec: &str, caps: &Caps) -> Result<Arc<FiniteCategory>, CliError> {
    if let Some(c) = corpus::by_name(spec) {
        return Ok(c);
    }
    if Path::new(spec).is_file() {
        let ws = load_file(spec, caps)?;
        return match ws.categories.len() {
            1 => Ok(ws.categories.into_iter().next().expect("len checked").1),
            0 => Err(CliError::Validation(format!(
                "`{spec}` declares no category"
            ))),
            _ => Err(CliError::Usage(format!(
                "`{spec}` declares several categories ({}); pick one with `{spec}:NAME`",
                ws.categories
                    .iter()
                    .map(|(n, _)| n.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))),
        };
    }
    if let Some((path, name)) = spec.rsplit_once(':') {
        if Path::new(path).is_file() {
            let ws = load_file(path, caps)?;
            return ws.category(name).cloned().ok_or_else(|| {
                CliError::Usage(format!("`{path}` declares no category named `{name}`"))
            });
        }
    }
    Err(CliError::Usage(format!(
        "`{spec}` is neither a built-in category ({}) nor a readable file",
        corpus::names().join(", ")
    )))
}

pub fn load_file(path: &str, caps: &Caps) -> Result<catlang::Workspace, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
    catlang::load(&text, caps).map_err(|e| CliError::Validation(format!("{path}: {e}")))
}

fn object(c: &Arc<FiniteCategory>, label: &str) -> Result<Obj, CliError> {
    c.objects()
        .find(|&o| c.obj_label(o) == label)
        .ok_or_else(|| {
            CliError::Usage(format!("`{}` has no object labelled `{label}`", c.name))
        })
}

fn morphism(c: &Arc<FiniteCategory>, label: &str) -> Result<Mor, CliError> {
    let mut hits = c.morphisms().filter(|&m| c.mor_label(m) == label);
    match (hits.next(), hits.next()) {
        (Some(m), None) => Ok(m),
        (Some(_), Some(_)) => Err(CliError::Usage(format!(
            "`{}` has several morphisms labelled `{label}`",
            c.name
        ))),
        (None, _) => Err(CliError::Usage(format!(
            "`{}` has no morphism labelled `{label}`",
            c.name
        ))),
    }
}

/// The diagram shapes the `limit`/`colimit` subcommands accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Shape {
    /// Discrete diagram on object arguments (limit side).
    Product,
    /// Empty diagram (limit side).
    Terminal,
    /// Two parallel morphism arguments (limit side).
    Equalizer,
    /// Two morphism arguments with a common codomain (limit side).
    Pullback,
    /// Discrete diagram on object arguments (colimit side).
    Coproduct,
    /// Empty diagram (colimit side).
    Initial,
    /// Two parallel morphism arguments (colimit side).
    Coequalizer,
    /// Two morphism arguments with a common domain (colimit side).
    Pushout,
}

impl Shape {
    pub fn keyword(self) -> &'static str {
        match self {
            Shape::Product => "product",
            Shape::Terminal => "terminal",
            Shape::Equalizer => "equalizer",
            Shape::Pullback => "pullback",
            Shape::Coproduct => "coproduct",
            Shape::Initial => "initial",
            Shape::Coequalizer => "coequalizer",
            Shape::Pushout => "pushout",
        }
    }

    /// Whether this shape names a limit (true) or a colimit (false).
    pub fn is_limit_side(self) -> bool {
        matches!(
            self,
            Shape::Product | Shape::Terminal | Shape::Equalizer | Shape::Pullback
        )
    }
}

/// Build the diagram functor a shape request denotes.
pub fn shape_diagram(
    shape: Shape,
    ambient: &Arc<FiniteCategory>,
    args: &[String],
) -> Result<Functor, CliError> {
    let discrete_diagram = |labels: &[String]| -> Result<Functor, CliError> {
        let shape_cat = corpus::discrete(labels.len());
        let object_map: Vec<Obj> = labels
            .iter()
            .map(|l| object(ambient, l))
            .collect::<Result<_, _>>()?;
        let morphism_map: Vec<Mor> = object_map.iter().map(|&o| ambient.id(o)).collect();
        Functor::new("diagram", shape_cat, ambient.clone(), object_map, morphism_map)
            .map_err(|e| CliError::Validation(e.to_string()))
    };
    let two_morphisms = |args: &[String]| -> Result<(Mor, Mor), CliError> {
        match args {
            [f, g] => Ok((morphism(ambient, f)?, morphism(ambient, g)?)),
            _ => Err(CliError::Usage(format!(
                "shape `{}` takes exactly two morphism labels",
                shape.keyword()
            ))),
        }
    };
    match shape {
        Shape::Product | Shape::Coproduct => {
            if args.is_empty() {
                return Err(CliError::Usage(format!(
                    "shape `{}` takes at least one object label",
                    shape.keyword()
                )));
            }
            discrete_diagram(args)
        }
        Shape::Terminal | Shape::Initial => {
            if !args.is_empty() {
                return Err(CliError::Usage(format!(
                    "shape `{}` takes no arguments",
                    shape.keyword()
                )));
            }
            discrete_diagram(&[])
        }
        Shape::Equalizer | Shape::Coequalizer => {
            let (f, g) = two_morphisms(args)?;
            if ambient.dom(f) != ambient.dom(g) || ambient.cod(f) != ambient.cod(g) {
                return Err(CliError::Usage(format!(
                    "`{}` and `{}` are not parallel",
                    args[0], args[1]
                )));
            }
            let shape_cat = corpus::parallel_pair();
            let object_map = vec![ambient.dom(f), ambient.cod(f)];
            let morphism_map = vec![
                ambient.id(ambient.dom(f)),
                ambient.id(ambient.cod(f)),
                f,
                g,
            ];
            Functor::new("diagram", shape_cat, ambient.clone(), object_map, morphism_map)
                .map_err(|e| CliError::Validation(e.to_string()))
        }
        Shape::Pullback => {
            let (f, g) = two_morphisms(args)?;
            if ambient.cod(f) != ambient.cod(g) {
                return Err(CliError::Usage(format!(
                    "`{}` and `{}` do not share a codomain",
                    args[0], args[1]
                )));
            }
            // Cospan shape: the sink first, then the two sources.
            let shape_cat = corpus::cospan();
            let object_map = vec![ambient.cod(f), ambient.dom(f), ambient.dom(g)];
            let morphism_map = vec![
                ambient.id(ambient.cod(f)),
                ambient.id(ambient.dom(f)),
                ambient.id(ambient.dom(g)),
                f,
                g,
            ];
            Functor::new("diagram", shape_cat, ambient.clone(), object_map, morphism_map)
                .map_err(|e| CliError::Validation(e.to_string()))
        }
        Shape::Pushout => {
            let (f, g) = two_morphisms(args)?;
            if ambient.dom(f) != ambient.dom(g) {
                return Err(CliError::Usage(format!(
                    "`{}` and `{}` do not share a domain",
                    args[0], args[1]
                )));
            }
            // Span shape: the apex first, then the two targets.
            let shape_cat = corpus::span();
            let object_map = vec![ambient.dom(f), ambient.cod(f), ambient.cod(g)];
            let morphism_map = vec![
                ambient.id(ambient.dom(f)),
                ambient.id(ambient.cod(f)),
                ambient.id(ambient.cod(g)),
                f,
                g,
            ];
            Functor::new("diagram", shape_cat, ambient.clone(), object_map, morphism_map)
                .map_err(|e| CliError::Validation(e.to_string()))
        }
    }
}
