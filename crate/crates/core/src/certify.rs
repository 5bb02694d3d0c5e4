//! Per-semigroup verification battery.
//!
//! For a block-group input this checks the representation machinery against
//! the brute-force congruence oracles, the structural identities of the
//! idempotent sets and translates, the meet-semilattice laws on
//! idempotents, and the fiber analysis. For everything else it checks the
//! returned witness from scratch. The pseudoidentity verdicts must agree
//! with the structural block-group test either way.

use serde::Serialize;

use crate::congruence::{self, OracleOutcome};
use crate::pinj::PartialInjection;
use crate::rep;
use crate::semigroup::{ClassKind, FiniteSemigroup, IdempotentClash};
use crate::variety;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub subject: String,
    pub order: usize,
    pub block_group: Option<bool>,
    pub checks: Vec<CheckResult>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Failed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "certify {} (order {}): {}\n",
            self.subject,
            self.order,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for check in &self.checks {
            let tag = match check.status {
                CheckStatus::Passed => "pass",
                CheckStatus::Failed => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            match &check.detail {
                Some(d) => out.push_str(&format!("  [{tag}] {}: {d}\n", check.name)),
                None => out.push_str(&format!("  [{tag}] {}\n", check.name)),
            }
        }
        out
    }
}

fn outcome(name: &str, result: Result<(), String>) -> CheckResult {
    match result {
        Ok(()) => CheckResult {
            name: name.to_string(),
            status: CheckStatus::Passed,
            detail: None,
        },
        Err(detail) => CheckResult {
            name: name.to_string(),
            status: CheckStatus::Failed,
            detail: Some(detail),
        },
    }
}

fn skipped(name: &str, why: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        status: CheckStatus::Skipped,
        detail: Some(why.to_string()),
    }
}

fn require(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

/// All elements regular with unique inverses.
pub fn is_inverse_semigroup(s: &FiniteSemigroup) -> bool {
    let reg = s.regularity();
    s.elements().all(|x| reg.inverses(x).len() == 1)
}

/// The textbook construction for inverse semigroups: x ↦ xs on S·ss⁻¹,
/// built directly from unique inverses.
pub fn classical_vp_map(s: &FiniteSemigroup, x: usize) -> Result<PartialInjection, String> {
    let reg = s.regularity();
    let x_inv = reg
        .unique_inverse(x)
        .ok_or_else(|| format!("element {x} has no unique inverse"))?;
    let e = s.product(x, x_inv);
    let mut dom: Vec<usize> = s.elements().map(|u| s.product(u, e)).collect();
    dom.sort_unstable();
    dom.dedup();
    PartialInjection::new(s.order(), dom.into_iter().map(|d| (d, s.product(d, x))))
        .map_err(|err| format!("classical map of {x} is not injective: {err}"))
}

fn check_pseudoidentity_agreement(s: &FiniteSemigroup, holds: bool) -> Result<(), String> {
    let one_sided = variety::satisfies(s, &variety::bg_identity()).holds;
    let two_sided = variety::bg_two_sided_identities()
        .iter()
        .all(|id| variety::satisfies(s, id).holds);
    require(
        one_sided == holds && two_sided == holds,
        || format!("structural {holds}, one-sided {one_sided}, two-sided {two_sided}"),
    )
}

fn check_variety_inclusions(s: &FiniteSemigroup, bg: bool) -> Result<(), String> {
    let inverse = is_inverse_semigroup(s);
    let ecom = variety::is_ecom(s);
    let ei = variety::is_ei(s);
    let nilpotent = variety::is_nilpotent(s).map_err(|e| e.to_string())?;
    require(!inverse || ecom, || "inverse but not Ecom".to_string())?;
    require(!ecom || bg, || "Ecom but not a block-group".to_string())?;
    require(!nilpotent || ei, || "nilpotent but not EI".to_string())?;
    require(!ei || bg, || "EI but not a block-group".to_string())
}

fn check_idempotent_translates_regular(s: &FiniteSemigroup) -> Result<(), String> {
    let reg = s.regularity();
    for x in s.elements() {
        for e in rep::r_set(s, x) {
            require(reg.is_regular(s.product(e, x)), || {
                format!("{e}·{x} is not regular")
            })?;
        }
        for e in rep::l_set(s, x) {
            require(reg.is_regular(s.product(x, e)), || {
                format!("{x}·{e} is not regular")
            })?;
        }
    }
    Ok(())
}

fn check_translate_identities(s: &FiniteSemigroup) -> Result<(), String> {
    let reg = s.regularity();
    let green = s.green();
    for x in s.elements() {
        let lset = rep::l_set(s, x);
        let rset = rep::r_set(s, x);
        for &e in &rset {
            let u = s.product(e, x);
            let u_inv = reg
                .unique_inverse(u)
                .ok_or_else(|| format!("{e}·{x} has no unique inverse"))?;
            require(s.product(u, u_inv) == e, || {
                format!("e != (ex)(ex)⁻¹ for e={e}, x={x}")
            })?;
            require(s.product(x, u_inv) == e, || {
                format!("e != x(ex)⁻¹ for e={e}, x={x}")
            })?;
            require(s.product(s.product(x, u_inv), e) == e, || {
                format!("e != x(ex)⁻¹e for e={e}, x={x}")
            })?;
            let u_inv_u = s.product(u_inv, u);
            require(lset.binary_search(&u_inv_u).is_ok(), || {
                format!("(ex)⁻¹(ex) escapes the L-idempotents of x={x}")
            })?;
            require(
                green.d_class_id(u_inv_u) == green.d_class_id(e),
                || format!("(ex)⁻¹(ex) not D-equivalent to e={e} for x={x}"),
            )?;
        }
        for &e in &lset {
            let v = s.product(x, e);
            let v_inv = reg
                .unique_inverse(v)
                .ok_or_else(|| format!("{x}·{e} has no unique inverse"))?;
            require(s.product(v_inv, v) == e, || {
                format!("e != (xe)⁻¹(xe) for e={e}, x={x}")
            })?;
            require(s.product(v_inv, x) == e, || {
                format!("e != (xe)⁻¹x for e={e}, x={x}")
            })?;
            require(s.product(e, s.product(v_inv, x)) == e, || {
                format!("e != e(xe)⁻¹x for e={e}, x={x}")
            })?;
            let v_v_inv = s.product(v, v_inv);
            require(rset.binary_search(&v_v_inv).is_ok(), || {
                format!("(xe)(xe)⁻¹ escapes the R-idempotents of x={x}")
            })?;
            require(
                green.d_class_id(v_v_inv) == green.d_class_id(e),
                || format!("(xe)(xe)⁻¹ not D-equivalent to e={e} for x={x}"),
            )?;
        }
    }
    Ok(())
}

fn check_domain_sets_determine_idempotent_sets(s: &FiniteSemigroup) -> Result<(), String> {
    let r_sets: Vec<_> = s.elements().map(|x| rep::r_set(s, x)).collect();
    let l_sets: Vec<_> = s.elements().map(|x| rep::l_set(s, x)).collect();
    let d_sets: Vec<_> = s.elements().map(|x| rep::d_set(s, x)).collect();
    let i_sets: Vec<_> = s.elements().map(|x| rep::i_set(s, x)).collect();
    for a in s.elements() {
        for b in s.elements() {
            require(
                (d_sets[a] == d_sets[b]) == (r_sets[a] == r_sets[b]),
                || format!("D/R determination fails for {a}, {b}"),
            )?;
            require(
                (i_sets[a] == i_sets[b]) == (l_sets[a] == l_sets[b]),
                || format!("I/L determination fails for {a}, {b}"),
            )?;
        }
    }
    Ok(())
}

fn check_translation_bijections(s: &FiniteSemigroup) -> Result<(), String> {
    let green = s.green();
    for x in s.elements() {
        // injectivity and exact image are verified inside vp_map
        let map = rep::vp_map(s, x).map_err(|e| e.to_string())?;
        for &(d, image) in map.pairs() {
            require(
                green.r_class_id(d) == green.r_class_id(image),
                || format!("{d} and {d}·{x} are not R-equivalent"),
            )?;
        }
    }
    Ok(())
}

fn check_meet_semilattice(s: &FiniteSemigroup) -> Result<(), String> {
    let idempotents = s.idempotents();
    let meet = |e: usize, f: usize| s.idempotent_meet(e, f).map_err(|err| err.to_string());
    for &e in &idempotents {
        require(meet(e, e)? == e, || format!("meet({e},{e}) != {e}"))?;
        for &f in &idempotents {
            let m = meet(e, f)?;
            require(m == meet(f, e)?, || format!("meet not commutative at ({e},{f})"))?;
            // the two one-sided conditions and the natural order coincide
            let ef = s.product(e, f) == e;
            let fe = s.product(f, e) == e;
            require(ef == fe && s.natural_leq(e, f) == ef, || {
                format!("one-sided order conditions split at ({e},{f})")
            })?;
            require(s.natural_leq(m, e) && s.natural_leq(m, f), || {
                format!("meet({e},{f}) is not a lower bound")
            })?;
            for &g in &idempotents {
                require(
                    meet(meet(e, f)?, g)? == meet(e, meet(f, g)?)?,
                    || format!("meet not associative at ({e},{f},{g})"),
                )?;
                if s.natural_leq(g, e) && s.natural_leq(g, f) {
                    require(s.natural_leq(g, m), || {
                        format!("meet({e},{f}) is not the greatest lower bound ({g} is below both)")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn check_witness(s: &FiniteSemigroup, witness: &IdempotentClash) -> Result<(), String> {
    let IdempotentClash { kind, first, second } = *witness;
    require(first != second, || "witness elements coincide".to_string())?;
    for x in [first, second] {
        require(s.product(x, x) == x, || format!("witness {x} is not idempotent"))?;
    }
    // mutual ideal membership straight from the table
    let below_r =
        |a: usize, b: usize| a == b || s.elements().any(|u| s.product(b, u) == a);
    let below_l =
        |a: usize, b: usize| a == b || s.elements().any(|u| s.product(u, b) == a);
    let same_class = match kind {
        ClassKind::R => below_r(first, second) && below_r(second, first),
        ClassKind::L => below_l(first, second) && below_l(second, first),
    };
    require(same_class, || {
        format!("witness pair ({first},{second}) does not share an {kind}-class")
    })
}

/// Runs the whole battery on one semigroup.
pub fn certify_semigroup(
    subject: &str,
    s: &FiniteSemigroup,
    congruence_cap: usize,
) -> CertifyReport {
    let mut checks = Vec::new();

    let bg = match s.is_block_group() {
        Ok(check) => {
            checks.push(outcome("block-group-criteria-agree", Ok(())));
            Some(check)
        }
        Err(err) => {
            checks.push(outcome("block-group-criteria-agree", Err(err.to_string())));
            None
        }
    };
    let Some(bg) = bg else {
        return CertifyReport {
            subject: subject.to_string(),
            order: s.order(),
            block_group: None,
            checks,
        };
    };

    checks.push(outcome(
        "pseudoidentity-agreement",
        check_pseudoidentity_agreement(s, bg.holds),
    ));
    checks.push(outcome(
        "variety-inclusions",
        check_variety_inclusions(s, bg.holds),
    ));
    checks.push(outcome(
        "idempotent-translates-regular",
        check_idempotent_translates_regular(s),
    ));

    if bg.holds {
        let vp = rep::vp_representation(s);
        checks.push(outcome(
            "translation-family-verified",
            vp.as_ref().map(|_| ()).map_err(|e| e.to_string()),
        ));
        let munn = rep::munn_representation(s);
        checks.push(outcome(
            "idempotent-action-family-verified",
            munn.as_ref().map(|_| ()).map_err(|e| e.to_string()),
        ));

        if s.order() <= congruence_cap {
            let oracle_pair = [
                (
                    "translation-kernel-is-largest-separating",
                    congruence::largest_separating_oracle(s, congruence_cap),
                    vp.as_ref().ok().map(|r| r.kernel()),
                ),
                (
                    "idempotent-kernel-is-largest-idempotent-separating",
                    congruence::largest_idempotent_separating_oracle(s, congruence_cap),
                    munn.as_ref().ok().map(|r| r.kernel()),
                ),
            ];
            for (name, oracle, kernel) in oracle_pair {
                let result = match (oracle, kernel) {
                    (Err(err), _) => Err(err.to_string()),
                    (_, None) => Err("representation unavailable".to_string()),
                    (Ok(OracleOutcome::Ambiguous(cs)), _) => Err(format!(
                        "oracle found {} incomparable maximal congruences",
                        cs.len()
                    )),
                    (Ok(OracleOutcome::Unique(c)), Some(kernel)) => require(
                        &c == kernel,
                        || format!("oracle {c} differs from kernel {kernel}"),
                    ),
                };
                checks.push(outcome(name, result));
            }
            let lattice_check = match (congruence::all_congruences_with_cap(s, congruence_cap), &vp, &munn) {
                (Ok(all), Ok(vp), Ok(munn)) => require(
                    all.contains(vp.kernel()) && all.contains(munn.kernel()),
                    || "a kernel is missing from the congruence lattice".to_string(),
                ),
                (Err(err), _, _) => Err(err.to_string()),
                _ => Err("representation unavailable".to_string()),
            };
            checks.push(outcome("kernels-in-lattice", lattice_check));
        } else {
            let why = format!("order {} exceeds the congruence cap {congruence_cap}", s.order());
            checks.push(skipped("translation-kernel-is-largest-separating", &why));
            checks.push(skipped(
                "idempotent-kernel-is-largest-idempotent-separating",
                &why,
            ));
            checks.push(skipped("kernels-in-lattice", &why));
        }

        checks.push(outcome(
            "idempotent-translate-identities",
            check_translate_identities(s),
        ));
        checks.push(outcome(
            "domain-sets-determine-idempotent-sets",
            check_domain_sets_determine_idempotent_sets(s),
        ));
        checks.push(outcome(
            "translations-biject-preserving-r",
            check_translation_bijections(s),
        ));
        checks.push(outcome("meet-semilattice-laws", check_meet_semilattice(s)));

        match variety::malcev_fiber_check(s) {
            Ok(report) => {
                checks.push(outcome("fibers-nilpotent", Ok(())));
                checks.push(outcome(
                    "image-idempotents-commute",
                    require(report.image_idempotents_commute, || {
                        "image idempotents do not commute".to_string()
                    }),
                ));
            }
            Err(err) => {
                checks.push(outcome("fibers-nilpotent", Err(err.to_string())));
            }
        }

        if is_inverse_semigroup(s) {
            let result = match &vp {
                Ok(vp) => s.elements().try_for_each(|x| {
                    let classical = classical_vp_map(s, x)?;
                    require(&classical == vp.map(x), || {
                        format!(
                            "map of {x}: classical {classical} vs computed {}",
                            vp.map(x)
                        )
                    })
                }),
                Err(_) => Err("representation unavailable".to_string()),
            };
            checks.push(outcome("inverse-specialization", result));
        } else {
            checks.push(skipped("inverse-specialization", "not an inverse semigroup"));
        }
    } else {
        let result = match &bg.witness {
            Some(witness) => check_witness(s, witness),
            None => Err("no witness returned for a non-block-group".to_string()),
        };
        checks.push(outcome("witness-is-valid", result));
    }

    CertifyReport {
        subject: subject.to_string(),
        order: s.order(),
        block_group: Some(bg.holds),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::DEFAULT_ORDER_CAP;
    use crate::corpus;

    #[test]
    fn null2_passes_everything() {
        let s = FiniteSemigroup::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let report = certify_semigroup("null2", &s, DEFAULT_ORDER_CAP);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.block_group, Some(true));
        // not inverse, so the specialization is skipped rather than run
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "inverse-specialization" && c.status == CheckStatus::Skipped));
    }

    #[test]
    fn left_zero_passes_the_non_bg_branch() {
        let s = FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap();
        let report = certify_semigroup("left_zero2", &s, DEFAULT_ORDER_CAP);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.block_group, Some(false));
        assert!(report.checks.iter().any(|c| c.name == "witness-is-valid"));
    }

    #[test]
    fn inverse_members_run_the_specialization() {
        let b2 = corpus::brandt_b2();
        let report = certify_semigroup("B2", &b2, DEFAULT_ORDER_CAP);
        assert!(report.passed(), "{}", report.render_text());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "inverse-specialization" && c.status == CheckStatus::Passed));
    }

    #[test]
    fn oracle_checks_skip_over_the_cap() {
        let b2 = corpus::brandt_b2();
        let report = certify_semigroup("B2", &b2, 2);
        assert!(report.passed(), "{}", report.render_text());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "kernels-in-lattice" && c.status == CheckStatus::Skipped));
    }

    #[test]
    fn whole_corpus_certifies() {
        for member in corpus::corpus() {
            let report =
                certify_semigroup(&member.name, &member.semigroup, DEFAULT_ORDER_CAP);
            assert!(report.passed(), "{}", report.render_text());
        }
    }
}
