//! One function per subcommand. Each builds both renderings from the same
//! computed values; all verdicts are decided on rationals.

use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Value};

use cxgame::random;
use cxgame::symmetry::{
    check_pi_delta_contained, check_symmetry_reduction, classify_shapley,
    link_transport_is_isomorphism, preserves, shapley_probabilities, solve_p_system, symm_group,
    GeneratorOrigin, ShapleyClassification,
};
use cxgame::values::{
    axiom_suite, canonical_shapley_tables, check_efficiency_identity, decompose_shapley_with_seed,
    efficiency_coefficients, shapley_efficiency_closed_form, shapley_group_value, AxiomCheck,
    DecompositionStatus, EfficiencyCoefficients,
};
use cxgame::{Game, Permutation, Rational, Result, SimplicialComplex, Vertex};

use crate::table::{approx, fields, join, verdict, yes_no, Table, APPROX_HEADER};

/// Random games for the efficiency identity in `verify`.
const VERIFY_GAMES: usize = 10;
/// Longest element listing printed for a symmetry group.
const MAX_LISTED_ELEMENTS: usize = 120;

pub struct Report {
    pub json: Value,
    pub text: String,
    /// A check failed; the process exits with the verification code.
    pub failed: bool,
}

fn fv(f: &cxgame::FVector) -> Value {
    json!(f.entries())
}

/// Closed-form efficiency coefficients when they apply (Shapley, pure links).
fn closed_form(
    complex: &SimplicialComplex,
    class: &ShapleyClassification,
) -> Result<Option<EfficiencyCoefficients>> {
    if class.is_shapley && complex.has_pure_links()? {
        shapley_efficiency_closed_form(complex).map(Some)
    } else {
        Ok(None)
    }
}

pub fn info(complex: &SimplicialComplex) -> Result<Report> {
    let f = complex.f_vector()?;
    let pure = complex.has_pure_links()?;
    let class = classify_shapley(complex)?;

    let mut text = String::new();
    let shapley_line = match (&class.s_vector, class.witness) {
        (Some(s), _) => format!("yes, s = {s}"),
        (None, Some((a, b))) => format!("no, vertices {a} and {b} have different link f-vectors"),
        (None, None) => "no".to_string(),
    };
    fields(
        &mut text,
        &[
            ("n", complex.n().to_string()),
            ("rank", complex.rank().to_string()),
            ("faces", complex.faces().len().to_string()),
            ("facets", join(complex.facets(), " ")),
            ("f-vector", f.to_string()),
            ("pure links", yes_no(pure).to_string()),
            ("shapley", shapley_line),
        ],
    );
    writeln!(text).unwrap();
    let mut t = Table::new(["vertex", "link f-vector"]);
    for (v, lf) in &class.link_f_vectors {
        t.row([v.to_string(), lf.to_string()]);
    }
    t.render(&mut text);

    let json = json!({
        "n": complex.n(),
        "rank": complex.rank(),
        "faces": complex.faces().len(),
        "facets": complex.facets(),
        "f_vector": fv(&f),
        "pure_links": pure,
        "link_f_vectors": class.link_f_vectors.iter().map(|(v, lf)| json!({"vertex": v, "f_vector": fv(lf)})).collect::<Vec<_>>(),
        "shapley": {
            "is_shapley": class.is_shapley,
            "s_vector": class.s_vector.as_ref().map(fv),
            "witness": class.witness,
        },
    });
    Ok(Report {
        json,
        text,
        failed: false,
    })
}

pub fn shapley(complex: &Arc<SimplicialComplex>, game: &Game) -> Result<Report> {
    let values = shapley_group_value(game)?;
    let total = values.total();
    let class = classify_shapley(complex)?;
    let closed = closed_form(complex, &class)?;
    let closed_sum = closed.as_ref().map(|c| c.evaluate(game));
    let matches = closed_sum.as_ref().map(|s| *s == total);

    let mut text = String::new();
    let mut t = Table::new(["player", "value", APPROX_HEADER]);
    for (i, x) in &values.values {
        t.row([i.to_string(), x.to_string(), approx(x)]);
    }
    t.render(&mut text);
    writeln!(text).unwrap();
    let mut pairs = vec![("sum of values", format!("{total}  {}", approx(&total)))];
    match (&closed_sum, matches) {
        (Some(s), Some(ok)) => {
            pairs.push(("closed-form sum", format!("{s}  {}", approx(s))));
            pairs.push((
                "efficiency",
                format!(
                    "{} (closed form {})",
                    verdict(ok),
                    if ok { "matches" } else { "differs" }
                ),
            ));
        }
        _ => pairs.push((
            "closed-form sum",
            "n/a (needs a Shapley complex with pure links)".to_string(),
        )),
    }
    fields(&mut text, &pairs);

    let json = json!({
        "values": values.values,
        "total": total,
        "closed_form_total": closed_sum,
        "closed_form_matches": matches,
    });
    Ok(Report {
        json,
        text,
        failed: matches == Some(false),
    })
}

pub fn symmetry(complex: &SimplicialComplex) -> Result<Report> {
    let group = symm_group(complex)?;
    let pi = check_pi_delta_contained(complex);
    let class = classify_shapley(complex)?;
    let reduction = if pi.contained {
        Some(check_symmetry_reduction(
            complex,
            &canonical_shapley_tables(complex)?,
        )?)
    } else {
        None
    };
    let mut transports = Vec::new();
    let vs = complex.vertices();
    for (a, &i) in vs.iter().enumerate() {
        for &j in &vs[a + 1..] {
            let swap = Permutation::transposition(complex.n(), i, j)?;
            if preserves(complex, &swap) {
                transports.push((i, j, link_transport_is_isomorphism(complex, i, j)?));
            }
        }
    }
    let failed = reduction.as_ref().is_some_and(|r| !r.holds()) || transports.iter().any(|t| !t.2);
    let listed: Vec<&Permutation> = group.elements.iter().take(MAX_LISTED_ELEMENTS).collect();

    let mut text = String::new();
    let shown = if listed.len() < group.order() {
        format!(" (first {} shown)", listed.len())
    } else {
        String::new()
    };
    fields(
        &mut text,
        &[
            ("|Symm|", group.order().to_string()),
            ("elements", format!("{}{shown}", join(&listed, " "))),
            ("pi generators", pi.verdicts.len().to_string()),
            ("pi inside Symm", yes_no(pi.contained).to_string()),
            ("shapley", yes_no(class.is_shapley).to_string()),
        ],
    );
    writeln!(text).unwrap();
    let mut t = Table::new(["generator", "origin", "preserves", "escaping facet"]);
    for v in &pi.verdicts {
        let origin = match &v.generator.origin {
            GeneratorOrigin::LinkSwap { vertex, l, t, .. } => {
                format!("link of {vertex}: {l} <-> {t}")
            }
            GeneratorOrigin::Transposition { i, j } => format!("transposition {i},{j}"),
        };
        let escape = v.escaping_facet.map_or("-".to_string(), |f| f.to_string());
        t.row([
            v.generator.perm.to_string(),
            origin,
            yes_no(v.escaping_facet.is_none()).to_string(),
            escape,
        ]);
    }
    t.render(&mut text);
    writeln!(text).unwrap();
    match &reduction {
        Some(r) if r.holds() => {
            let common = join(r.common.iter().map(|(k, p)| format!("p_{k}={p}")), " ");
            writeln!(text, "symmetry reduction  PASS  {common}").unwrap();
        }
        Some(r) => writeln!(text, "symmetry reduction  FAIL  {:?}", r.violation).unwrap(),
        None => {
            let (g, face) = pi.counterexample().expect("not contained");
            writeln!(
                text,
                "symmetry reduction  n/a (generator {} maps {face} outside)",
                g.perm
            )
            .unwrap();
        }
    }
    for (i, j, ok) in &transports {
        writeln!(text, "link transport ({i} {j})  {}", verdict(*ok)).unwrap();
    }

    let json = json!({
        "order": group.order(),
        "elements": listed,
        "elements_truncated": listed.len() < group.order(),
        "pi_generators": pi.verdicts,
        "pi_contained": pi.contained,
        "is_shapley": class.is_shapley,
        "symmetry_reduction": reduction,
        "link_transports": transports.iter().map(|(i, j, ok)| json!({"i": i, "j": j, "isomorphism": ok})).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, failed })
}

pub fn psystem(complex: &SimplicialComplex) -> Result<Report> {
    let system = solve_p_system(complex)?;
    let class = classify_shapley(complex)?;
    let sol = &system.solution;
    let shapley_p = class.s_vector.as_ref().map(shapley_probabilities);
    let shapley_ok = shapley_p
        .as_ref()
        .map(|p| system.is_satisfied_by(p))
        .transpose()?;

    let mut text = String::new();
    let mut t = Table::new(["link f-vector", "vertices", "equation"]);
    for (f, vs) in &system.rows {
        let lhs = join(
            f.entries()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{c}*p_{k}")),
            " + ",
        );
        t.row([f.to_string(), join(vs, ","), format!("{lhs} = 1")]);
    }
    t.render(&mut text);
    writeln!(text).unwrap();
    let vec_str = |v: &[Rational]| format!("({})", join(v, ", "));
    let mut pairs = vec![
        ("rank r", system.rank.to_string()),
        ("status", format!("{:?}", sol.status)),
    ];
    if let Some(p) = &sol.particular {
        pairs.push(("particular", format!("{} (free variables 0)", vec_str(p))));
    }
    for b in &sol.nullspace_basis {
        pairs.push(("null direction", vec_str(b)));
    }
    if let Some(y) = &sol.certificate {
        pairs.push(("certificate", vec_str(y)));
    }
    match (&shapley_p, shapley_ok) {
        (Some(p), Some(ok)) => {
            pairs.push(("1/(r s_k)", vec_str(p)));
            pairs.push((
                "shapley p",
                format!("{} (satisfies every row: {})", verdict(ok), yes_no(ok)),
            ));
        }
        _ => pairs.push(("shapley p", "n/a (link f-vectors differ)".to_string())),
    }
    fields(&mut text, &pairs);

    let json = json!({
        "rank": system.rank,
        "rows": system.rows.iter().map(|(f, vs)| json!({"f_vector": fv(f), "vertices": vs})).collect::<Vec<_>>(),
        "solution": sol,
        "shapley_probabilities": shapley_p,
        "shapley_satisfies": shapley_ok,
    });
    Ok(Report {
        json,
        text,
        failed: shapley_ok == Some(false),
    })
}

pub fn decompose(complex: &SimplicialComplex, player: Option<Vertex>, seed: u64) -> Result<Report> {
    let players = match player {
        Some(i) => vec![i],
        None => complex.vertices(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    for (k, &i) in players.iter().enumerate() {
        let dec = decompose_shapley_with_seed(complex, i, seed)?;
        if k > 0 {
            writeln!(text).unwrap();
        }
        let status = match dec.status {
            DecompositionStatus::Exact => format!(
                "exact, {} free, cross-checked on {} games",
                dec.free_dimension, dec.cross_checked_games
            ),
            DecompositionStatus::Infeasible => "infeasible".to_string(),
        };
        fields(
            &mut text,
            &[
                ("player", i.to_string()),
                ("facets", join(&dec.facets, " ")),
                ("equations", dec.equations.len().to_string()),
                ("status", status),
            ],
        );
        match dec.status {
            DecompositionStatus::Exact => {
                let mut t = Table::new(["facet", "c_F", "c~_F,t for t = 0.."]);
                for (f, c) in &dec.facet_weights {
                    let tilde = join((0..f.len()).map(|s| dec.c_tilde[&(*f, s)].clone()), " ");
                    t.row([f.to_string(), c.to_string(), tilde]);
                }
                t.render(&mut text);
            }
            DecompositionStatus::Infeasible => {
                let mut t = Table::new(["equation T", "certificate weight"]);
                for (f, w) in dec.certificate.iter().flatten() {
                    t.row([f.to_string(), w.to_string()]);
                }
                t.render(&mut text);
            }
        }
        out.push(serde_json::to_value(&dec).expect("plain data serializes"));
    }
    Ok(Report {
        json: json!({ "decompositions": out }),
        text,
        failed: false,
    })
}

fn coefficient_table(
    text: &mut String,
    built: &EfficiencyCoefficients,
    closed: Option<&EfficiencyCoefficients>,
) {
    let mut t = match closed {
        Some(_) => Table::new(["face", "a_T", "closed form", APPROX_HEADER]),
        None => Table::new(["face", "a_T", APPROX_HEADER]),
    };
    for (f, a) in &built.coefficients {
        match closed {
            Some(c) => t.row([
                f.to_string(),
                a.to_string(),
                c.get(*f).map_or("-".into(), |x| x.to_string()),
                approx(a),
            ]),
            None => t.row([f.to_string(), a.to_string(), approx(a)]),
        }
    }
    t.render(text);
}

pub fn efficiency(complex: &Arc<SimplicialComplex>, game: Option<&Game>) -> Result<Report> {
    let tables = canonical_shapley_tables(complex)?;
    let built = efficiency_coefficients(complex, &tables)?;
    let class = classify_shapley(complex)?;
    let closed = closed_form(complex, &class)?;
    let closed_diff = closed.as_ref().map(|c| built.differences(c));
    let check = game
        .map(|v| check_efficiency_identity(complex, &tables, v))
        .transpose()?;

    let mut text = String::new();
    coefficient_table(&mut text, &built, closed.as_ref());
    writeln!(text).unwrap();
    let mut pairs = Vec::new();
    match &closed_diff {
        Some(d) if d.is_empty() => pairs.push((
            "closed form",
            "PASS (every coefficient matches)".to_string(),
        )),
        Some(d) => pairs.push(("closed form", format!("FAIL at {}", join(d, " ")))),
        None => pairs.push((
            "closed form",
            "n/a (needs a Shapley complex with pure links)".to_string(),
        )),
    }
    if let Some(c) = &check {
        pairs.push(("sum of values", c.total_value.to_string()));
        pairs.push(("sum a_T v(T)", c.coefficient_sum.to_string()));
        pairs.push((
            "identity",
            format!("{} (residual {})", verdict(c.holds()), c.residual),
        ));
    }
    fields(&mut text, &pairs);

    let failed = closed_diff.as_ref().is_some_and(|d| !d.is_empty())
        || check.as_ref().is_some_and(|c| !c.holds());
    let json = json!({
        "coefficients": built,
        "closed_form": closed,
        "closed_form_matches": closed_diff.map(|d| d.is_empty()),
        "identity": check,
    });
    Ok(Report { json, text, failed })
}

fn check_json(c: &AxiomCheck) -> Value {
    json!({"passed": c.passed, "checked": c.checked, "failure": c.failure})
}

pub fn verify(complex: &Arc<SimplicialComplex>, game: Option<&Game>, seed: u64) -> Result<Report> {
    let tables = canonical_shapley_tables(complex)?;
    let axioms = axiom_suite(complex, &tables, seed)?;

    let mut rng = random::seeded(seed);
    let mut games: Vec<Game> = (0..VERIFY_GAMES)
        .map(|_| random::game(complex, &mut rng))
        .collect();
    games.extend(game.cloned());
    let mut residual_failure = None;
    for (k, v) in games.iter().enumerate() {
        let c = check_efficiency_identity(complex, &tables, v)?;
        if !c.holds() && residual_failure.is_none() {
            residual_failure = Some(format!("game {k}: residual {}", c.residual));
        }
    }

    let class = classify_shapley(complex)?;
    let closed = closed_form(complex, &class)?;
    let closed_ok = match &closed {
        Some(c) => Some(
            efficiency_coefficients(complex, &tables)?
                .differences(c)
                .is_empty(),
        ),
        None => None,
    };
    let reduction = if check_pi_delta_contained(complex).contained {
        Some(check_symmetry_reduction(complex, &tables)?.holds())
    } else {
        None
    };

    let failed = !axioms.all_passed()
        || residual_failure.is_some()
        || closed_ok == Some(false)
        || reduction == Some(false);

    let mut text = String::new();
    let mut t = Table::new([
        "player",
        "linearity",
        "star locality",
        "dummy",
        "monotonicity",
        "first failure",
    ]);
    for p in &axioms.players {
        let checks = [&p.linearity, &p.star_locality, &p.dummy, &p.monotonicity];
        let failure = checks
            .iter()
            .find_map(|c| c.failure.clone())
            .unwrap_or_else(|| "-".into());
        let cell = |c: &AxiomCheck| format!("{} ({})", verdict(c.passed), c.checked);
        t.row([
            p.player.to_string(),
            cell(&p.linearity),
            cell(&p.star_locality),
            cell(&p.dummy),
            cell(&p.monotonicity),
            failure,
        ]);
    }
    t.render(&mut text);
    writeln!(text).unwrap();
    let optional = |x: Option<bool>| x.map_or("n/a".to_string(), |ok| verdict(ok).to_string());
    fields(
        &mut text,
        &[
            ("seed", seed.to_string()),
            (
                "efficiency identity",
                match &residual_failure {
                    None => format!("PASS ({} games)", games.len()),
                    Some(why) => format!("FAIL {why}"),
                },
            ),
            ("closed form", optional(closed_ok)),
            ("symmetry reduction", optional(reduction)),
            ("overall", verdict(!failed).to_string()),
        ],
    );

    let json = json!({
        "seed": seed,
        "players": axioms.players.iter().map(|p| json!({
            "player": p.player,
            "normalized": p.normalized,
            "probability": p.probability,
            "linearity": check_json(&p.linearity),
            "star_locality": check_json(&p.star_locality),
            "dummy": check_json(&p.dummy),
            "monotonicity": check_json(&p.monotonicity),
        })).collect::<Vec<_>>(),
        "efficiency_games": games.len(),
        "efficiency_failure": residual_failure,
        "closed_form_matches": closed_ok,
        "symmetry_reduction_holds": reduction,
        "passed": !failed,
    });
    Ok(Report { json, text, failed })
}
