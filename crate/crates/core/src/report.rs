//! Structured analysis reports.
//!
//! `analyze` runs the whole pipeline on one semigroup and fills an
//! [`AnalysisReport`]. Field names and nesting are stable so the JSON form
//! can be consumed programmatically; the text form is for people. Sections
//! that only make sense on block-groups (`vagner_preston`, `munn`,
//! `fibers`) are present exactly when `block_group.holds` is true, and
//! `congruences` is present exactly when the order is within the
//! enumeration cap.

use serde::Serialize;

use crate::congruence::{self, OracleOutcome};
use crate::rep::{self, Representation};
use crate::semigroup::FiniteSemigroup;
use crate::variety;
use crate::Error;

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub order: usize,
    pub labels: Option<Vec<String>>,
    pub identity: Option<usize>,
    pub zero: Option<usize>,
    pub idempotents: Vec<usize>,
    pub regular_elements: Vec<usize>,
    pub green: GreenSection,
    pub block_group: BlockGroupSection,
    pub varieties: VarietySection,
    pub vagner_preston: Option<RepSection>,
    pub munn: Option<RepSection>,
    pub congruences: Option<CongruenceSection>,
    pub fibers: Option<FiberSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreenSection {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockGroupSection {
    pub holds: bool,
    pub witness: Option<WitnessSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSection {
    pub class_kind: String,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VarietySection {
    pub block_group: bool,
    pub ecom: bool,
    pub ei: bool,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapSection {
    pub source: usize,
    pub pairs: Vec<(usize, usize)>,
    pub rendered: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepSection {
    pub domain_kind: String,
    pub maps: Vec<MapSection>,
    pub kernel_blocks: Vec<Vec<usize>>,
    pub kernel_rendered: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub unique: bool,
    pub blocks: Option<Vec<Vec<usize>>>,
    pub maximal_candidates: Option<Vec<Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceSection {
    pub count: usize,
    pub largest_regular_separating: OracleSection,
    pub largest_idempotent_separating: OracleSection,
    pub vp_kernel_matches_oracle: Option<bool>,
    pub munn_kernel_matches_oracle: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberSection {
    pub image_size: usize,
    pub image_idempotents_commute: bool,
    pub fibers: Vec<FiberEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberEntry {
    pub idempotent: String,
    pub elements: Vec<usize>,
    pub nilpotent: bool,
}

fn rep_section(rep: &Representation, domain_kind: &str) -> RepSection {
    RepSection {
        domain_kind: domain_kind.to_string(),
        maps: rep
            .elements()
            .iter()
            .map(|e| MapSection {
                source: e.source,
                pairs: e.map.pairs().to_vec(),
                rendered: e.map.to_string(),
            })
            .collect(),
        kernel_blocks: rep.kernel().blocks(),
        kernel_rendered: rep.kernel().to_string(),
    }
}

fn oracle_section(outcome: &OracleOutcome) -> OracleSection {
    match outcome {
        OracleOutcome::Unique(c) => OracleSection {
            unique: true,
            blocks: Some(c.blocks()),
            maximal_candidates: None,
        },
        OracleOutcome::Ambiguous(cs) => OracleSection {
            unique: false,
            blocks: None,
            maximal_candidates: Some(cs.iter().map(|c| c.blocks()).collect()),
        },
    }
}

/// Runs the full pipeline. `congruence_cap` bounds lattice enumeration;
/// larger semigroups simply omit the `congruences` section.
pub fn analyze(
    name: Option<&str>,
    s: &FiniteSemigroup,
    congruence_cap: usize,
) -> Result<AnalysisReport, Error> {
    let green = s.green();
    let bg = s.is_block_group()?;

    let varieties = VarietySection {
        block_group: bg.holds,
        ecom: variety::is_ecom(s),
        ei: variety::is_ei(s),
        nilpotent: variety::is_nilpotent(s)?,
    };

    let (vp, munn) = if bg.holds {
        (
            Some(rep::vp_representation(s)?),
            Some(rep::munn_representation(s)?),
        )
    } else {
        (None, None)
    };

    let congruences = if s.order() <= congruence_cap {
        let all = congruence::all_congruences_with_cap(s, congruence_cap)?;
        let regular = congruence::largest_separating_oracle(s, congruence_cap)?;
        let idem = congruence::largest_idempotent_separating_oracle(s, congruence_cap)?;
        let vp_matches = vp
            .as_ref()
            .map(|r| regular.unique() == Some(r.kernel()));
        let munn_matches = munn
            .as_ref()
            .map(|r| idem.unique() == Some(r.kernel()));
        Some(CongruenceSection {
            count: all.len(),
            largest_regular_separating: oracle_section(&regular),
            largest_idempotent_separating: oracle_section(&idem),
            vp_kernel_matches_oracle: vp_matches,
            munn_kernel_matches_oracle: munn_matches,
        })
    } else {
        None
    };

    let fibers = if bg.holds {
        let report = variety::malcev_fiber_check(s)?;
        Some(FiberSection {
            image_size: report.image_size,
            image_idempotents_commute: report.image_idempotents_commute,
            fibers: report
                .fibers
                .iter()
                .map(|f| FiberEntry {
                    idempotent: f.idempotent_map.to_string(),
                    elements: f.elements.clone(),
                    nilpotent: f.nilpotent,
                })
                .collect(),
        })
    } else {
        None
    };

    Ok(AnalysisReport {
        name: name.map(|n| n.to_string()),
        order: s.order(),
        labels: s.labels().map(|ls| ls.to_vec()),
        identity: s.identity(),
        zero: s.zero(),
        idempotents: s.idempotents(),
        regular_elements: s.regularity().regular_elements(),
        green: GreenSection {
            r_classes: green.r_classes(),
            l_classes: green.l_classes(),
            h_classes: green.h_classes(),
            d_classes: green.d_classes(),
        },
        block_group: BlockGroupSection {
            holds: bg.holds,
            witness: bg.witness.map(|w| WitnessSection {
                class_kind: w.kind.to_string(),
                first: w.first,
                second: w.second,
            }),
        },
        varieties,
        vagner_preston: vp.as_ref().map(|r| rep_section(r, "D(s) -> I(s)")),
        munn: munn.as_ref().map(|r| rep_section(r, "R(s) -> L(s)")),
        congruences,
        fibers,
    })
}

fn blocks_text(blocks: &[Vec<usize>]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| {
            let xs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", xs.join(","))
        })
        .collect();
    format!("{{{}}}", inner.join(","))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        match &self.name {
            Some(n) => line(format!("semigroup {n} (order {})", self.order)),
            None => line(format!("semigroup of order {}", self.order)),
        }
        if let Some(labels) = &self.labels {
            line(format!("labels: {}", labels.join(" ")));
        }
        line(format!(
            "identity: {}  zero: {}",
            self.identity.map_or("none".into(), |i| i.to_string()),
            self.zero.map_or("none".into(), |z| z.to_string()),
        ));
        line(format!("idempotents: {:?}", self.idempotents));
        line(format!("regular elements: {:?}", self.regular_elements));
        line(format!(
            "green: R {}  L {}  H {}  D {}",
            blocks_text(&self.green.r_classes),
            blocks_text(&self.green.l_classes),
            blocks_text(&self.green.h_classes),
            blocks_text(&self.green.d_classes),
        ));
        match &self.block_group.witness {
            None => line(format!("block-group: {}", self.block_group.holds)),
            Some(w) => line(format!(
                "block-group: {} (idempotents {} and {} share an {}-class)",
                self.block_group.holds, w.first, w.second, w.class_kind
            )),
        }
        line(format!(
            "varieties: BG {}  Ecom {}  EI {}  N {}",
            self.varieties.block_group,
            self.varieties.ecom,
            self.varieties.ei,
            self.varieties.nilpotent
        ));
        for (title, section) in [
            ("translations (x -> xs)", &self.vagner_preston),
            ("idempotent actions", &self.munn),
        ] {
            if let Some(rep) = section {
                line(format!("{title}, {}:", rep.domain_kind));
                for m in &rep.maps {
                    line(format!("  map[{}] = {}", m.source, m.rendered));
                }
                line(format!("  kernel: {}", rep.kernel_rendered));
            }
        }
        if let Some(c) = &self.congruences {
            line(format!("congruences: {} in the lattice", c.count));
            for (title, oracle, matches) in [
                (
                    "largest regular-separating",
                    &c.largest_regular_separating,
                    c.vp_kernel_matches_oracle,
                ),
                (
                    "largest idempotent-separating",
                    &c.largest_idempotent_separating,
                    c.munn_kernel_matches_oracle,
                ),
            ] {
                let rendered = match &oracle.blocks {
                    Some(blocks) => blocks_text(blocks),
                    None => format!(
                        "ambiguous ({} maximal candidates)",
                        oracle.maximal_candidates.as_ref().map_or(0, |c| c.len())
                    ),
                };
                match matches {
                    Some(m) => line(format!(
                        "  {title}: {rendered} (matches kernel: {m})"
                    )),
                    None => line(format!("  {title}: {rendered}")),
                }
            }
        }
        if let Some(f) = &self.fibers {
            line(format!(
                "translation image: {} maps, idempotents commute: {}",
                f.image_size, f.image_idempotents_commute
            ));
            for fiber in &f.fibers {
                line(format!(
                    "  fiber over {}: elements {:?}, nilpotent: {}",
                    fiber.idempotent, fiber.elements, fiber.nilpotent
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::DEFAULT_ORDER_CAP;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn left_zero2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn block_group_report_has_all_sections() {
        let report = analyze(Some("Z2"), &z2(), DEFAULT_ORDER_CAP).unwrap();
        assert!(report.block_group.holds);
        assert!(report.vagner_preston.is_some());
        assert!(report.munn.is_some());
        assert!(report.fibers.is_some());
        let c = report.congruences.as_ref().unwrap();
        assert_eq!(c.vp_kernel_matches_oracle, Some(true));
        assert_eq!(c.munn_kernel_matches_oracle, Some(true));
        let text = report.render_text();
        assert!(text.contains("block-group: true"));
    }

    #[test]
    fn non_block_group_report_omits_rep_sections() {
        let report = analyze(None, &left_zero2(), DEFAULT_ORDER_CAP).unwrap();
        assert!(!report.block_group.holds);
        assert!(report.block_group.witness.is_some());
        assert!(report.vagner_preston.is_none());
        assert!(report.munn.is_none());
        assert!(report.fibers.is_none());
        assert!(report.congruences.is_some());
    }

    #[test]
    fn congruence_section_respects_the_cap() {
        let report = analyze(None, &z2(), 1).unwrap();
        assert!(report.congruences.is_none());
    }

    #[test]
    fn json_shape_is_stable() {
        let report = analyze(Some("Z2"), &z2(), DEFAULT_ORDER_CAP).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["name"], "Z2");
        assert_eq!(value["order"], 2);
        assert_eq!(value["block_group"]["holds"], true);
        assert!(value["green"]["r_classes"].is_array());
        assert!(value["vagner_preston"]["maps"][0]["pairs"].is_array());
        assert_eq!(value["varieties"]["ecom"], true);
        assert_eq!(value["congruences"]["vp_kernel_matches_oracle"], true);
        let non_bg = analyze(None, &left_zero2(), DEFAULT_ORDER_CAP).unwrap();
        let value: serde_json::Value = serde_json::from_str(&non_bg.to_json()).unwrap();
        assert!(value["vagner_preston"].is_null());
        assert_eq!(value["block_group"]["witness"]["class_kind"], "L");
    }
}
