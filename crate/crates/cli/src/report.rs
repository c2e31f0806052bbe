//! The report document in JSON and text form.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::stages::{Stage, StageReport, Status};

/// One entry per stage, in pipeline order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rep: StageReport,
    pub net: StageReport,
    pub variety: StageReport,
    pub curves: StageReport,
    pub deform: StageReport,
    pub poincare: StageReport,
}

impl Report {
    pub fn from_stages(mut done: Vec<(Stage, StageReport)>) -> Report {
        let mut take = |s: Stage| {
            done.iter()
                .position(|(t, _)| *t == s)
                .map(|i| done.remove(i).1)
                .unwrap_or_else(StageReport::skipped)
        };
        Report {
            rep: take(Stage::Rep),
            net: take(Stage::Net),
            variety: take(Stage::Variety),
            curves: take(Stage::Curves),
            deform: take(Stage::Deform),
            poincare: take(Stage::Poincare),
        }
    }

    pub fn stages(&self) -> [(Stage, &StageReport); 6] {
        [
            (Stage::Rep, &self.rep),
            (Stage::Net, &self.net),
            (Stage::Variety, &self.variety),
            (Stage::Curves, &self.curves),
            (Stage::Deform, &self.deform),
            (Stage::Poincare, &self.poincare),
        ]
    }

    /// 0 when everything run verified, 2 on a mismatch, 3 on an error.
    pub fn exit_code(&self) -> i32 {
        let st: Vec<Status> = self.stages().iter().map(|(_, r)| r.status).collect();
        if st.contains(&Status::Error) {
            3
        } else if st.contains(&Status::Mismatch) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("mu-curves report\n");
        for (stage, r) in self.stages() {
            let status = serde_json::to_value(r.status).expect("status serializes");
            let checks = r.payload.get("checks").and_then(Value::as_u64);
            match checks {
                Some(n) => out.push_str(&format!("[{stage}] {} ({n} checks)\n", status.as_str().unwrap_or(""))),
                None => out.push_str(&format!("[{stage}] {}\n", status.as_str().unwrap_or(""))),
            }
            if let Some(e) = r.payload.get("error").and_then(Value::as_str) {
                out.push_str(&format!("  error: {e}\n"));
            }
            for m in &r.mismatches {
                out.push_str(&format!("  mismatch: {}\n", m.message));
            }
            if r.status != Status::Skipped {
                summary(stage, &r.payload, &mut out);
            }
        }
        if self.poincare.status != Status::Skipped {
            for key in ["h3", "h4"] {
                if let Some(p) = self.poincare.payload.get(key).and_then(Value::as_str) {
                    out.push_str(&format!("P({}) = {p}\n", key.to_uppercase()));
                }
            }
        }
        out
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect())
        .unwrap_or_default()
}

fn summary(stage: Stage, p: &Value, out: &mut String) {
    match stage {
        Stage::Rep => {
            for (l, g) in strings(&p["u6_labels"]).iter().zip(strings(&p["u6_generators"])) {
                out.push_str(&format!("  {l} = {g}\n"));
            }
        }
        Stage::Net => {
            out.push_str(&format!("  pfaffians: {}\n", strings(&p["pfaffians"]).join(", ")));
            out.push_str(&format!("  apolar quartic: {}\n", p["quartic"]["apolar"].as_str().unwrap_or("")));
        }
        Stage::Variety => {
            for ch in p["charts"].as_array().into_iter().flatten() {
                let res = strings(&ch["residual"]);
                out.push_str(&format!(
                    "  {}: free {}; residual {}\n",
                    ch["chart"].as_str().unwrap_or(""),
                    strings(&ch["free"]).join(", "),
                    if res.is_empty() { "none".to_string() } else { res.join(", ") }
                ));
            }
        }
        Stage::Curves => {
            out.push_str(&format!(
                "  fixed records: H3 {}, H4 {}\n",
                p["h3_fixed_count"], p["h4_fixed_count"]
            ));
            for c in p["parametric"].as_array().into_iter().flatten().filter(|c| !c["degree"].is_null()) {
                out.push_str(&format!("  {} has degree {}\n", c["name"].as_str().unwrap_or(""), c["degree"]));
            }
        }
        Stage::Deform => {
            for r in p["records"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "  {} {}: weights {}\n",
                    r["scheme"].as_str().unwrap_or(""),
                    r["id"].as_str().unwrap_or(""),
                    strings(&r["weights"]).join(", ")
                ));
            }
        }
        Stage::Poincare => {}
    }
    for n in strings(&p["notes"]) {
        out.push_str(&format!("  note: {n}\n"));
    }
}
