use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use ramlab_core::arith::parse_rational;
use ramlab_core::beckmann::{
    branch_points, predict_inertia, pullback_type, ramification_indices, specialize_search_with,
    universally_ramified_bound, BranchPoint, Cover, RamificationType, SearchOptions,
};
use ramlab_core::genexp::gexp_from_classes;
use ramlab_core::perm::{ClassOptions, ClassTable, PermGroup};
use ramlab_core::rigidity::{coprime_criterion_check, rigidity_report, select_by_orders, RigidityError};
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::report::{table, Report, Status};
use crate::sources::{load_cover, load_group};
use crate::{suite, CliError};

pub(crate) fn class_options(cfg: &RunConfig) -> ClassOptions {
    ClassOptions { enumeration_cap: cfg.enumeration_cap, seed: cfg.seed, ..ClassOptions::default() }
}

pub(crate) fn class_table(g: &PermGroup, cfg: &RunConfig) -> Result<ClassTable, CliError> {
    Ok(g.conjugacy_classes(&class_options(cfg))?)
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    elt_order: u64,
    size: String,
    centralizer_order: String,
    cycle_type: Vec<usize>,
    rational: bool,
    representative: String,
}

fn class_rows(t: &ClassTable, which: impl IntoIterator<Item = usize>) -> Vec<ClassRow> {
    which
        .into_iter()
        .map(|i| {
            let c = &t.classes()[i];
            ClassRow {
                index: i,
                elt_order: c.elt_order,
                size: c.size.to_string(),
                centralizer_order: c.centralizer_order.to_string(),
                cycle_type: c.cycle_type.clone(),
                rational: t.is_rational(i),
                representative: c.rep.to_string(),
            }
        })
        .collect()
}

fn class_text(rows: &[ClassRow]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.index.to_string(),
                r.elt_order.to_string(),
                r.size.clone(),
                r.centralizer_order.clone(),
                if r.rational { "yes" } else { "no" }.to_string(),
                r.representative.clone(),
            ]
        })
        .collect();
    table(&["class", "order", "size", "|C(x)|", "rational", "representative"], &rows)
}

/// Classes chosen by index or by element order; ambiguity is a usage error listing the
/// candidates.
fn select_classes(t: &ClassTable, orders: &[u64], classes: &[usize]) -> Result<Vec<usize>, CliError> {
    if !classes.is_empty() {
        if let Some(&bad) = classes.iter().find(|&&i| i >= t.len()) {
            return Err(RigidityError::BadIndex(bad).into());
        }
        return Ok(classes.to_vec());
    }
    select_by_orders(t, orders).map_err(|e| match e {
        RigidityError::Ambiguous { order, candidates } => CliError::Usage(format!(
            "element order {order} matches several classes; pass --classes with one of them\n{}",
            class_text(&class_rows(t, candidates))
        )),
        other => other.into(),
    })
}

fn triple(classes: &[usize]) -> Result<[usize; 3], CliError> {
    classes
        .try_into()
        .map_err(|_| CliError::Usage(format!("rigidity needs exactly three classes, got {}", classes.len())))
}

fn parse_value(s: &str) -> Result<BigRational, CliError> {
    parse_rational(s).map_err(|_| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn points_text(points: &[BranchPoint]) -> String {
    points.iter().map(|p| format!("{p}\n")).collect()
}

fn ramtype_text(rt: &RamificationType) -> String {
    let rows: Vec<Vec<String>> = rt
        .entries
        .iter()
        .map(|e| {
            let idx: Vec<String> = e.indices.iter().map(u32::to_string).collect();
            vec![e.point.to_string(), e.point.degree().to_string(), idx.join(","), e.e.to_string()]
        })
        .collect();
    format!(
        "{}riemann-hurwitz sum: {}\n",
        table(&["point", "conjugates", "indices", "lcm"], &rows),
        rt.riemann_hurwitz_sum()
    )
}

#[derive(Serialize)]
struct BranchResult {
    points: Vec<BranchPoint>,
    /// False when the list may contain points that are not branch points.
    exact: bool,
}

#[derive(Serialize)]
struct RamtypeResult {
    #[serde(flatten)]
    ramification: RamificationType,
    riemann_hurwitz_sum: u64,
    branch_point_count: usize,
}

fn ramtype_result(rt: RamificationType) -> RamtypeResult {
    RamtypeResult {
        riemann_hurwitz_sum: rt.riemann_hurwitz_sum(),
        branch_point_count: rt.branch_point_count(),
        ramification: rt,
    }
}

pub(crate) fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Gexp(g) => {
            let group = load_group(&g.group)?;
            let r = gexp_from_classes(&class_table(&group, cfg)?);
            let certificate: Vec<String> = r.certificate.iter().map(|p| p.to_string()).collect();
            let text = format!(
                "gexp: {}\nexponent: {}\nwitness orders: {:?}\ncertificate:\n  {}\n",
                r.value,
                r.exponent,
                r.witness_orders,
                certificate.join("\n  ")
            );
            Ok(Report::new("gexp", Status::Ok, &r, text))
        }
        Command::Classes(g) => {
            let group = load_group(&g.group)?;
            let t = class_table(&group, cfg)?;
            let rows = class_rows(&t, 0..t.len());
            let text = class_text(&rows);
            Ok(Report::new("classes", Status::Ok, &rows, text))
        }
        Command::Rigid { group, orders, classes } => {
            let g = load_group(&group.group)?;
            let t = class_table(&g, cfg)?;
            let r = rigidity_report(&t, triple(&select_classes(&t, orders, classes)?)?)?;
            let text = format!(
                "classes: {:?} (orders {:?})\ngenerating triples: {}\n|Inn(G)|: {}\nrigid: {}\nrational classes: {:?}\nrationally rigid: {}\n",
                r.classes, r.orders, r.count, r.inner_order, r.rigid, r.rational, r.rationally_rigid
            );
            let status = if r.rationally_rigid { Status::Ok } else { Status::Fail };
            Ok(Report::new("rigid", status, &r, text))
        }
        Command::CoprimeCriterion { group, orders, classes } => {
            let g = load_group(&group.group)?;
            let t = class_table(&g, cfg)?;
            let chosen = select_classes(&t, orders, classes)?;
            let value = gexp_from_classes(&t).value;
            let r = coprime_criterion_check(&t, &chosen, value)?;
            let rows: Vec<Vec<String>> = r
                .details
                .iter()
                .map(|f| {
                    vec![
                        f.class.to_string(),
                        f.elt_order.to_string(),
                        f.centralizer_order.to_string(),
                        f.divides_gexp.to_string(),
                    ]
                })
                .collect();
            let text = format!(
                "gexp: {}\n{}passes: {}{}\n",
                r.gexp_value,
                table(&["class", "order", "|C(x)|", "divides gexp"], &rows),
                r.passes,
                r.offending_condition.map(|c| format!(" ({c:?})")).unwrap_or_default()
            );
            let status = if r.passes { Status::Ok } else { Status::Fail };
            Ok(Report::new("coprime-criterion", status, &r, text))
        }
        Command::Branch(c) => {
            let cover = load_cover(&c.cover)?;
            let points = branch_points(&cover)?;
            let text = points_text(&points);
            let exact = cover.as_ratmap().is_some();
            Ok(Report::new("branch", Status::Ok, BranchResult { points, exact }, text))
        }
        Command::Ramtype(c) => {
            let cover = load_cover(&c.cover)?;
            let rt = ramification_indices(&cover)?;
            let text = ramtype_text(&rt);
            Ok(Report::new("ramtype", Status::Ok, ramtype_result(rt), text))
        }
        Command::Pullback { ramification, d, at } => {
            let rt = RamificationType::parse_abstract(ramification)?;
            let [p, q] = at.as_slice() else {
                return Err(CliError::Usage("--at needs exactly two points".into()));
            };
            let (p, q) = (BranchPoint::parse(p)?, BranchPoint::parse(q)?);
            let out = pullback_type(&rt, *d, [&p, &q])?;
            let flat: Vec<String> = out.flat().iter().map(u32::to_string).collect();
            let text = format!("({})\n{}", flat.join(","), ramtype_text(&out));
            Ok(Report::new("pullback", Status::Ok, ramtype_result(out), text))
        }
        Command::Predict { cover, a } => {
            let c = load_cover(&cover.cover)?;
            let a = parse_value(a)?;
            let r = predict_inertia(&c, &a)?;
            let rows: Vec<Vec<String>> = r
                .per_prime
                .iter()
                .map(|(p, pr)| {
                    vec![
                        p.to_string(),
                        pr.branch.to_string(),
                        pr.nu.to_string(),
                        pr.e.to_string(),
                        pr.predicted_order.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
                        if pr.bad { "yes" } else { "no" }.to_string(),
                        r.evidence.get(p).map(|v| format!("{v:?}")).unwrap_or_default(),
                    ]
                })
                .collect();
            let bad: Vec<String> = r.bad_primes.iter().map(BigInt::to_string).collect();
            let text = format!(
                "a = {}\nbad primes: {}\n{}complete: {}\n",
                r.a,
                bad.join(", "),
                table(&["p", "branch point", "nu", "e", "order", "bad", "mod-p check"], &rows),
                r.complete
            );
            let status = if r.complete { Status::Ok } else { Status::Capped };
            Ok(Report::new("predict", status, &r, text))
        }
        Command::Udisc { cover, values } => {
            let c = load_cover(&cover.cover)?;
            let values = values.iter().map(|v| parse_value(v)).collect::<Result<Vec<_>, _>>()?;
            let b = universally_ramified_bound(&c, &values)?;
            let primes: Vec<String> = b.primes.iter().map(BigInt::to_string).collect();
            let mut text = String::new();
            for s in &b.supports {
                let ps: Vec<String> = s.primes.iter().map(BigInt::to_string).collect();
                text += &format!("a = {}: disc {} with primes {}\n", s.a, s.discriminant, ps.join(", "));
            }
            text += &format!(
                "universally ramified bound: {{{}}}{}\n",
                primes.join(", "),
                if b.complete { "" } else { " (over recovered primes only)" }
            );
            let status = if b.complete { Status::Ok } else { Status::Capped };
            Ok(Report::new("udisc", status, &b, text))
        }
        Command::Specialize { cover, avoid, count, max_candidates } => {
            let c: Cover = load_cover(&cover.cover)?;
            let primes: BTreeSet<BigInt> = avoid.iter().map(|&p| BigInt::from(p)).collect();
            let opts = SearchOptions { max_candidates: *max_candidates, ..SearchOptions::default() };
            let r = specialize_search_with(&c, &primes, *count, opts)?;
            let vals: Vec<String> = r.values.iter().map(BigInt::to_string).collect();
            let text = format!(
                "values: {}\nscanned: {}{}\n",
                vals.join(", "),
                r.scanned,
                if r.exhausted { " (budget exhausted)" } else { "" }
            );
            let status = if r.exhausted { Status::Capped } else { Status::Ok };
            Ok(Report::new("specialize", status, &r, text))
        }
        Command::Suite { tier } => suite::run_claim_suite(cfg, *tier),
    }
}
