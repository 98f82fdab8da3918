//! Task execution. Each job is self-contained and side-effect free, so
//! any number of them can run concurrently; a report entry records the
//! outcome. Before a job reports `ok`, its witness is re-validated
//! through the matching checker.

use std::time::Instant;

use cathedra::adjunction::{
    adjunction_from_unit_counit, synthesize_left_adjoint, Adjunction, AdjunctionError,
};
use cathedra::cat::FiniteCategory;
use cathedra::finset::enumerate_set_nats;
use cathedra::functor::Functor;
use cathedra::limits::{
    colimit_cat, is_colimit_cocone, is_limit_cone, limit_cat, Cocone, Cone,
};
use cathedra::presheaf::{
    density, representable, subobject_classifier, yoneda_backward, yoneda_forward, Presheaf,
    PresheafMap,
};
use cathedra::Caps;
use catlang::{WorkRequest, WorkTask};
use serde_json::{json, Value};

use crate::report::{Status, TaskReport};
use crate::resolve;

/// One unit of work with a stable identifier.
pub struct Job {
    pub id: String,
    pub payload: Payload,
}

pub enum Payload {
    /// Parse and elaborate a document, reporting what it declares.
    CheckFile(String),
    /// Run one resolved request.
    Request(WorkRequest),
}

impl From<WorkTask> for Job {
    fn from(t: WorkTask) -> Job {
        Job {
            id: t.id,
            payload: Payload::Request(t.request),
        }
    }
}

pub fn execute(job: &Job, caps: &Caps) -> TaskReport {
    let start = Instant::now();
    let (status, witness) = match &job.payload {
        Payload::CheckFile(path) => check_file(path, caps),
        Payload::Request(req) => run_request(req, caps),
    };
    TaskReport {
        id: job.id.clone(),
        status,
        witness,
        millis: start.elapsed().as_millis() as u64,
        caps: caps.into(),
        seed: None,
    }
}

fn error(message: impl std::fmt::Display) -> (Status, Value) {
    let message = message.to_string();
    (
        Status::Error,
        json!({ "error": message, "summary": message }),
    )
}

fn check_file(path: &str, caps: &Caps) -> (Status, Value) {
    match resolve::load_file(path, caps) {
        Ok(ws) => {
            let summary = format!(
                "{} categories, {} functors, {} transformations, {} presheaves, {} tasks",
                ws.categories.len(),
                ws.functors.len(),
                ws.nats.len(),
                ws.presheaves.len(),
                ws.tasks.len()
            );
            (
                Status::Ok,
                json!({
                    "categories": ws.categories.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "functors": ws.functors.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "nats": ws.nats.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "presheaves": ws.presheaves.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "tasks": ws.tasks.iter().map(|t| &t.id).collect::<Vec<_>>(),
                    "summary": summary,
                }),
            )
        }
        Err(e) => error(e),
    }
}

fn run_request(req: &WorkRequest, caps: &Caps) -> (Status, Value) {
    match req {
        WorkRequest::Limit(d) => run_limit(d, caps),
        WorkRequest::Colimit(d) => run_colimit(d, caps),
        WorkRequest::LeftAdjoint(g) => run_left_adjoint(g, caps),
        WorkRequest::YonedaCheck(x) => run_yoneda_check(x, caps),
        WorkRequest::Density(x) => run_density(x, caps),
        WorkRequest::Classifier(c) => run_classifier(c, caps),
    }
}

fn cone_witness(d: &Functor, cone: &Cone) -> Value {
    let amb = &d.target;
    let legs: Vec<String> = cone
        .legs
        .iter()
        .map(|&leg| amb.mor_label(leg).to_string())
        .collect();
    json!({
        "vertex": amb.obj_label(cone.vertex),
        "legs": legs,
        "summary": format!("vertex \"{}\"", amb.obj_label(cone.vertex)),
    })
}

fn cocone_witness(d: &Functor, cocone: &Cocone) -> Value {
    let amb = &d.target;
    let legs: Vec<String> = cocone
        .legs
        .iter()
        .map(|&leg| amb.mor_label(leg).to_string())
        .collect();
    json!({
        "vertex": amb.obj_label(cocone.vertex),
        "legs": legs,
        "summary": format!("vertex \"{}\"", amb.obj_label(cocone.vertex)),
    })
}

fn run_limit(d: &Functor, caps: &Caps) -> (Status, Value) {
    match limit_cat(d, caps) {
        Ok(Some(cone)) => match is_limit_cone(d, &cone, caps) {
            Ok(true) => (Status::Ok, cone_witness(d, &cone)),
            Ok(false) => error("computed cone failed re-validation"),
            Err(e) => error(e),
        },
        Ok(None) => (
            Status::NotFound,
            json!({ "summary": "no limit exists for this diagram" }),
        ),
        Err(e) => error(e),
    }
}

fn run_colimit(d: &Functor, caps: &Caps) -> (Status, Value) {
    match colimit_cat(d, caps) {
        Ok(Some(cocone)) => match is_colimit_cocone(d, &cocone, caps) {
            Ok(true) => (Status::Ok, cocone_witness(d, &cocone)),
            Ok(false) => error("computed cocone failed re-validation"),
            Err(e) => error(e),
        },
        Ok(None) => (
            Status::NotFound,
            json!({ "summary": "no colimit exists for this diagram" }),
        ),
        Err(e) => error(e),
    }
}

fn adjoint_witness(adj: &Adjunction) -> Value {
    let f = &adj.left;
    let src = &f.source;
    let dst = &f.target;
    let entries: Vec<String> = src
        .objects()
        .map(|a| {
            format!(
                "F({}) = {}",
                src.obj_label(a),
                dst.obj_label(f.on_obj(a))
            )
        })
        .collect();
    let mut on = serde_json::Map::new();
    for a in src.objects() {
        on.insert(
            src.obj_label(a).to_string(),
            Value::String(dst.obj_label(f.on_obj(a)).to_string()),
        );
    }
    let unit: Vec<String> = adj
        .unit
        .source
        .source
        .objects()
        .map(|a| adj.unit.source.target.mor_label(adj.unit.at(a)).to_string())
        .collect();
    let counit: Vec<String> = adj
        .counit
        .source
        .source
        .objects()
        .map(|b| {
            adj.counit
                .source
                .target
                .mor_label(adj.counit.at(b))
                .to_string()
        })
        .collect();
    json!({
        "left": { "name": f.name, "on": on },
        "unit": unit,
        "counit": counit,
        "summary": entries.join(", "),
    })
}

fn run_left_adjoint(g: &Functor, caps: &Caps) -> (Status, Value) {
    match synthesize_left_adjoint(g, caps) {
        Ok(adj) => {
            // Re-derive the whole adjunction from its unit and counit;
            // this re-checks the triangle identities and bijections.
            match adjunction_from_unit_counit(
                &adj.left,
                &adj.right,
                adj.unit.clone(),
                adj.counit.clone(),
            ) {
                Ok(_) => (Status::Ok, adjoint_witness(&adj)),
                Err(e) => error(format!("synthesized adjunction failed re-validation: {e}")),
            }
        }
        Err(AdjunctionError::NotFound { what }) => (
            Status::NotFound,
            json!({ "summary": format!("no left adjoint: {what}") }),
        ),
        Err(e) => error(e),
    }
}

fn run_yoneda_check(x: &Presheaf, caps: &Caps) -> (Status, Value) {
    let base = x.base.clone();
    let xd = x.as_diagram();
    let mut counts = serde_json::Map::new();
    for a in base.objects() {
        let h = representable(&base, a);
        let nats = match enumerate_set_nats(&h.as_diagram(), &xd, caps) {
            Ok(n) => n,
            Err(e) => return error(e),
        };
        let value_size = x.value(a).len();
        if nats.len() != value_size {
            return error(format!(
                "at `{}`: {} transformations against {} elements",
                base.obj_label(a),
                nats.len(),
                value_size
            ));
        }
        for comps in nats {
            let alpha = match PresheafMap::new(h.clone(), x.clone(), comps) {
                Ok(a) => a,
                Err(e) => return error(e),
            };
            let atom = match yoneda_forward(&alpha, a) {
                Ok(at) => at,
                Err(e) => return error(e),
            };
            let back = match yoneda_backward(x, a, &atom) {
                Ok(b) => b,
                Err(e) => return error(e),
            };
            if !back.same_components(&alpha) {
                return error(format!(
                    "round trip through `{atom}` changed the transformation"
                ));
            }
        }
        counts.insert(base.obj_label(a).to_string(), json!(value_size));
    }
    (
        Status::Ok,
        json!({
            "counts": counts,
            "summary": "transformations from each representable match the values, and both round trips are identities",
        }),
    )
}

fn run_density(x: &Presheaf, caps: &Caps) -> (Status, Value) {
    match density(x, caps) {
        Ok(d) => {
            if !d.comparison.is_iso() {
                return error("comparison map failed re-validation");
            }
            let n = d.elements.elements.len();
            (
                Status::Ok,
                json!({
                    "elements": n,
                    "summary": format!(
                        "colimit of {n} representables rebuilds the presheaf"
                    ),
                }),
            )
        }
        Err(e) => error(e),
    }
}

fn run_classifier(c: &std::sync::Arc<FiniteCategory>, caps: &Caps) -> (Status, Value) {
    match subobject_classifier(c, caps) {
        Ok(cl) => {
            let mut sizes = serde_json::Map::new();
            let mut parts = Vec::new();
            for o in c.objects() {
                let n = cl.omega.value(o).len();
                sizes.insert(c.obj_label(o).to_string(), json!(n));
                parts.push(format!("{} sieves at {}", n, c.obj_label(o)));
            }
            (
                Status::Ok,
                json!({
                    "omega": sizes,
                    "summary": parts.join(", "),
                }),
            )
        }
        Err(e) => error(e),
    }
}
