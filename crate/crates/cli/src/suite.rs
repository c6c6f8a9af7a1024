//! Named claims checked against the bundled data, one record per claim.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ramlab_core::arith::is_prime;
use ramlab_core::beckmann::{
    intersection_multiplicity, pullback_type, ramification_indices, universally_ramified_bound,
    unramified_check, BranchPoint, Cover, RamificationType, Verdict,
};
use ramlab_core::genexp::{gexp_from_classes, gexp_lcm_check, hat_involution_check};
use ramlab_core::perm::ClassTable;
use ramlab_core::rigidity::{an_classes_check, candidate_tuples, coprime_criterion_check, rigidity_report};
use serde::Serialize;

use crate::commands::class_table;
use crate::config::{RunConfig, Tier};
use crate::report::{table, Report, Status};
use crate::sources::{load_group, m11_cover};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim_id: &'static str,
    pub paper_anchor: &'static str,
    pub tier: &'static str,
    /// `None` when the claim was skipped.
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub detail: String,
    pub seconds: f64,
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Claim {
    id: &'static str,
    anchor: &'static str,
    tier: Tier,
    check: fn(&RunConfig) -> Result<Outcome, CliError>,
}

fn verdict(ok: bool, detail: String) -> Result<Outcome, CliError> {
    Ok(if ok { Outcome::Pass(detail) } else { Outcome::Fail(detail) })
}

fn table_of(name: &str, cfg: &RunConfig) -> Result<ClassTable, CliError> {
    class_table(&load_group(name)?, cfg)
}

fn gexp_is(name: &str, want: u64, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = gexp_from_classes(&table_of(name, cfg)?);
    verdict(r.value == want, format!("gexp = {}, exponent = {}", r.value, r.exponent))
}

/// The first rationally rigid triple of the given orders and its generating-triple count.
fn rational_rigid(t: &ClassTable, orders: [u64; 3]) -> Result<Option<([usize; 3], u128)>, CliError> {
    for tuple in candidate_tuples(t, &orders) {
        let triple = [tuple[0], tuple[1], tuple[2]];
        let r = rigidity_report(t, triple)?;
        if r.rationally_rigid {
            return Ok(Some((triple, r.count)));
        }
    }
    Ok(None)
}

fn rigid_claim(name: &str, orders: [u64; 3], count: Option<u128>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let t = table_of(name, cfg)?;
    match rational_rigid(&t, orders)? {
        Some((triple, n)) => verdict(count.is_none_or(|c| c == n), format!("classes {triple:?}, count {n}")),
        None => verdict(false, format!("no rationally rigid triple of orders {orders:?}")),
    }
}

fn criterion_claim(name: &str, orders: [u64; 3], cfg: &RunConfig) -> Result<Outcome, CliError> {
    let t = table_of(name, cfg)?;
    let Some((triple, _)) = rational_rigid(&t, orders)? else {
        return verdict(false, format!("no rationally rigid triple of orders {orders:?}"));
    };
    let value = gexp_from_classes(&t).value;
    let r = coprime_criterion_check(&t, &triple, value)?;
    verdict(r.passes, format!("classes {triple:?}, gexp {value}, failure {:?}", r.offending_condition))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn psl2_11() -> Cover {
    Cover::builtin("psl2_11").expect("bundled cover")
}

const CLAIMS: &[Claim] = &[
    Claim { id: "gexp.A5", anchor: "generator exponent of A5", tier: Tier::Default, check: |c| gexp_is("A(5)", 2, c) },
    Claim { id: "gexp.S6", anchor: "generator exponent of S6", tier: Tier::Default, check: |c| gexp_is("S(6)", 2, c) },
    Claim { id: "gexp.D5", anchor: "generator exponent of D5", tier: Tier::Default, check: |c| gexp_is("D(5)", 2, c) },
    Claim { id: "gexp.C12", anchor: "generator exponent of C12", tier: Tier::Default, check: |c| gexp_is("C(12)", 12, c) },
    Claim { id: "gexp.PGL27", anchor: "PGL(2,7) generated by involutions", tier: Tier::Default, check: |c| gexp_is("PGL(2,7)", 2, c) },
    Claim { id: "gexp.M11", anchor: "M11 generated by involutions", tier: Tier::Default, check: |c| gexp_is("M11", 2, c) },
    Claim {
        id: "gexp.C3wrC3",
        anchor: "gexp below the exponent for C3 wr C3",
        tier: Tier::Default,
        check: |c| {
            let r = gexp_from_classes(&table_of("Wr(C(3),C(3))", c)?);
            verdict(r.value == 3 && r.exponent == 9, format!("gexp = {}, exponent = {}", r.value, r.exponent))
        },
    },
    Claim {
        id: "gexp.product",
        anchor: "gexp of a direct product is the lcm",
        tier: Tier::Default,
        check: |c| {
            let pool = ["C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "S(3)", "A(4)", "D(4)"];
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let mut pairs = Vec::new();
            for _ in 0..10 {
                let (a, b) = (pool.choose(&mut rng).unwrap(), pool.choose(&mut rng).unwrap());
                if !gexp_lcm_check(&load_group(a)?, &load_group(b)?)? {
                    return verdict(false, format!("{a} x {b}"));
                }
                pairs.push(format!("{a}x{b}"));
            }
            verdict(true, pairs.join(" "))
        },
    },
    Claim {
        id: "hat.involutions",
        anchor: "hat construction generated by involutions",
        tier: Tier::Default,
        check: |_| {
            for name in ["C(3)", "A(4)", "A(5)"] {
                if !hat_involution_check(&load_group(name)?)? {
                    return verdict(false, name.to_string());
                }
            }
            verdict(true, "C3, A4, A5".into())
        },
    },
    Claim {
        id: "rigid.PGL27",
        anchor: "rationally rigid triple of orders 2, 6, 7 in PGL(2,7)",
        tier: Tier::Default,
        check: |c| rigid_claim("PGL(2,7)", [2, 6, 7], Some(336), c),
    },
    Claim {
        id: "centralizers.PGL27",
        anchor: "self-centralizing elements of orders 6 and 7 in PGL(2,7)",
        tier: Tier::Default,
        check: |c| {
            let g = load_group("PGL(2,7)")?;
            let t = class_table(&g, c)?;
            let mut found = Vec::new();
            for order in [6, 7] {
                let idx = t.with_order(order);
                let rep = &t.classes()[idx[0]].rep;
                found.push((g.centralizer(rep)?.order(), g.normalizer_cyclic(rep)?.order()));
            }
            verdict(found == [(6, 12), (7, 42)], format!("(centralizer, normalizer) orders {found:?}"))
        },
    },
    Claim {
        id: "criterion.PGL27",
        anchor: "coprime criterion for PGL(2,7)",
        tier: Tier::Default,
        check: |c| criterion_claim("PGL(2,7)", [2, 6, 7], c),
    },
    Claim {
        id: "classes.An",
        anchor: "coprime self-centralizing classes in A_n",
        tier: Tier::Default,
        check: |_| {
            for n in [7, 9, 11, 13] {
                if !an_classes_check(n)? {
                    return verdict(false, format!("n = {n}"));
                }
            }
            verdict(true, "n = 7, 9, 11, 13".into())
        },
    },
    Claim {
        id: "cover.PSL211.type",
        anchor: "ramification type of the PSL(2,11) cover",
        tier: Tier::Default,
        check: |_| {
            let rt = ramification_indices(&psl2_11())?;
            let inf = rt.entry(&BranchPoint::Infinity).map(|e| (e.indices.clone(), e.e)).unwrap_or_default();
            let others_two = rt.entries.iter().filter(|e| e.point != BranchPoint::Infinity).all(|e| e.e == 2);
            let ok = rt.branch_point_count() == 4
                && inf.1 == 6
                && inf.0.iter().filter(|&&i| i > 1).count() == 3
                && others_two
                && rt.riemann_hurwitz_sum() == 20;
            verdict(
                ok,
                format!("{} branch points, fiber at inf {:?}, sum {}", rt.branch_point_count(), inf.0, rt.riemann_hurwitz_sum()),
            )
        },
    },
    Claim {
        id: "cover.PSL211.udisc",
        anchor: "no universally ramified primes for the PSL(2,11) cover",
        tier: Tier::Default,
        check: |_| {
            let b = universally_ramified_bound(&psl2_11(), &[int(1), int(2)])?;
            let supports: Vec<String> = b.supports.iter().map(|s| format!("{:?}", s.primes)).collect();
            verdict(b.complete && b.primes.is_empty(), format!("supports {}, bound {:?}", supports.join(" "), b.primes))
        },
    },
    Claim {
        id: "pullback.M11",
        anchor: "pullback of type (2,2,3,5) along a cubic map",
        tier: Tier::Default,
        check: |_| {
            let rt = RamificationType::parse_abstract("2,2,3@inf,5@0")?;
            let out = pullback_type(&rt, 3, [&BranchPoint::rational(0), &BranchPoint::Infinity])?;
            verdict(out.flat() == [2, 2, 2, 2, 2, 2, 5], format!("{:?}", out.flat()))
        },
    },
    Claim {
        id: "prime.45513961",
        anchor: "discriminant prime of the M11 specialization",
        tier: Tier::Default,
        check: |_| verdict(is_prime(&BigInt::from(45_513_961u64)), "45513961".into()),
    },
    Claim {
        id: "m11.multiplicity-at-infinity",
        anchor: "intersection multiplicity of 2*(9/5)^3 with infinity at 5",
        tier: Tier::Default,
        check: |_| {
            let a = BigRational::new(BigInt::from(1458), BigInt::from(125));
            let nu = intersection_multiplicity(&a, &BranchPoint::Infinity, &BigInt::from(5), false)?;
            verdict(nu == 3, format!("I_5 = {nu}"))
        },
    },
    Claim {
        id: "m11.unramified",
        anchor: "45513961 unramified in the splitting field at t = 2",
        tier: Tier::Default,
        check: |_| {
            let Some(cover) = m11_cover() else {
                return Ok(Outcome::Skip("external data absent".into()));
            };
            let v = unramified_check(&cover?, &int(2), &BigInt::from(45_513_961u64))?;
            verdict(v == Verdict::Unramified, format!("{v:?}"))
        },
    },
    Claim {
        id: "rigid.PSp43.2",
        anchor: "rationally rigid triple of orders 2, 8, 9 in PSp(4,3).2",
        tier: Tier::Slow,
        check: |c| rigid_claim("PSp(4,3).2", [2, 8, 9], None, c),
    },
    Claim {
        id: "criterion.PSp43.2",
        anchor: "coprime criterion for PSp(4,3).2",
        tier: Tier::Slow,
        check: |c| criterion_claim("PSp(4,3).2", [2, 8, 9], c),
    },
    Claim {
        id: "rigid.PSp62",
        anchor: "rationally rigid triple of orders 2, 7, 9 in PSp(6,2)",
        tier: Tier::Nightly,
        check: |c| rigid_claim("PSp(6,2)", [2, 7, 9], None, c),
    },
    Claim {
        id: "criterion.PSp62",
        anchor: "coprime criterion for PSp(6,2)",
        tier: Tier::Nightly,
        check: |c| criterion_claim("PSp(6,2)", [2, 7, 9], c),
    },
];

fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Default => "default",
        Tier::Slow => "slow",
        Tier::Nightly => "nightly",
    }
}

/// Every claim up to `tier`; errors inside a claim count as failures.
pub fn run_claim_suite(cfg: &RunConfig, tier: Tier) -> Result<Report, CliError> {
    let mut records = Vec::new();
    for claim in CLAIMS.iter().filter(|c| c.tier <= tier) {
        let start = Instant::now();
        let outcome = (claim.check)(cfg).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
        let (pass, skipped, detail) = match outcome {
            Outcome::Pass(d) => (Some(true), None, d),
            Outcome::Fail(d) => (Some(false), None, d),
            Outcome::Skip(why) => (None, Some(format!("skipped: {why}")), String::new()),
        };
        records.push(ClaimRecord {
            claim_id: claim.id,
            paper_anchor: claim.anchor,
            tier: tier_name(claim.tier),
            pass,
            skipped,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    let failed = records.iter().filter(|r| r.pass == Some(false)).count();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let result = match r.pass {
                Some(true) => "pass".to_string(),
                Some(false) => "FAIL".to_string(),
                None => r.skipped.clone().unwrap_or_default(),
            };
            vec![r.claim_id.to_string(), r.tier.to_string(), result, r.detail.clone()]
        })
        .collect();
    let text = format!(
        "{}{} claims, {} failed\n",
        table(&["claim", "tier", "result", "detail"], &rows),
        records.len(),
        failed
    );
    let status = if failed == 0 { Status::Ok } else { Status::Fail };
    let mut report = Report::new("suite", status, &records, text);
    report.records = Some(records.iter().map(|r| serde_json::to_value(r).expect("records serialize")).collect());
    Ok(report)
}
