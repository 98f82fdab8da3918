//! Report structures: one entry per executed task, serialized as JSON or
//! rendered as text. Field order and map ordering are fixed so identical
//! inputs produce identical bytes (timing aside).

use cathedra::Caps;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NotFound,
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::NotFound => "not-found",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CapsUsed {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_enum: usize,
}

impl From<&Caps> for CapsUsed {
    fn from(c: &Caps) -> CapsUsed {
        CapsUsed {
            max_objects: c.max_objects,
            max_morphisms: c.max_morphisms,
            max_enum: c.max_enum,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub id: String,
    pub status: Status,
    pub witness: serde_json::Value,
    pub millis: u64,
    pub caps: CapsUsed,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub schema: &'static str,
    pub tasks: Vec<TaskReport>,
}

impl ReportDoc {
    pub fn new(tasks: Vec<TaskReport>) -> ReportDoc {
        ReportDoc {
            schema: "1",
            tasks,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.tasks.iter().all(|t| t.status == Status::Ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per task, plus a closing tally.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let summary = t
                .witness
                .get("summary")
                .and_then(|v| v.as_str())
                .unwrap_or("");
            out.push_str(&format!(
                "[{}] {} — {} ({} ms)\n",
                t.status, t.id, summary, t.millis
            ));
        }
        let ok = self
            .tasks
            .iter()
            .filter(|t| t.status == Status::Ok)
            .count();
        out.push_str(&format!("{} of {} ok\n", ok, self.tasks.len()));
        out
    }
}
