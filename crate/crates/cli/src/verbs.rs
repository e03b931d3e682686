use ahtop_core::exact::{adjunction_check, puppe_build_and_check, suspension, AggregateVerdict, PuppeOptions};
use ahtop_core::fiber::{check_mf2_ladder, iterated_fiber, mapping_fiber, verify_pullback, LadderOptions};
use ahtop_core::graph::{is_graph_map, make_standard, Family, GraphFile};
use ahtop_core::hom::{are_homotopic, homotopy_classes};
use ahtop_core::paths::{check_sublength_condition, loop_graph_trunc, path_graph_trunc};
use ahtop_core::pi1::{a1_report, Contractibility};
use ahtop_core::Limits;
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::input;
use crate::report::{emit, write_text, Failure, Outcome};

pub fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = Limits::with_cap(cli.cap);
    match &cli.verb {
        Verb::Make(a) => make(cli, a),
        Verb::MapCheck(a) => map_check(cli, a),
        Verb::Homotopy(a) => homotopy(cli, a, &limits),
        Verb::Classes(a) => classes(cli, a, &limits),
        Verb::A1(a) => a1(cli, a),
        Verb::Fiber(a) => fiber(cli, a, &limits),
        Verb::Loops(a) => loops(cli, a, &limits),
        Verb::Suspend(a) => suspend(cli, a),
        Verb::Adjunction(a) => adjunction(cli, a, &limits),
        Verb::Puppe(a) => puppe(cli, a, &limits),
        Verb::ExportDot(a) => {
            let g = input::graph(&a.g)?;
            write_text(cli.out.as_deref(), &g.to_dot(&a.name))?;
            Ok(0)
        }
    }
}

fn make(cli: &Cli, a: &MakeArgs) -> Result<u8, Failure> {
    let family: Family = a.family.parse()?;
    let g = make_standard(family, a.size)?;
    write_text(cli.out.as_deref(), &GraphFile::from_pointed(&g).to_canonical_json())?;
    Ok(0)
}

fn map_check(cli: &Cli, a: &MapArgs) -> Result<u8, Failure> {
    let dom = input::graph(&a.g)?;
    let cod = match &a.h {
        Some(h) => input::graph(h)?,
        None => dom.clone(),
    };
    let assignment = input::assignment(&a.f, &dom, &cod)?;
    let violation = is_graph_map(&dom, &cod, &assignment, a.pointed)?;
    #[derive(Serialize)]
    struct Out {
        assignment: Vec<usize>,
        graph_map: bool,
        violation: Option<ahtop_core::Violation>,
    }
    let out = Out {
        assignment,
        graph_map: violation.is_none(),
        violation,
    };
    let params = json!({ "pointed": a.pointed });
    emit(cli, "map-check", params, Outcome::refuted_if(!out.graph_map), &out)
}

fn homotopy(cli: &Cli, a: &HomotopyArgs, limits: &Limits) -> Result<u8, Failure> {
    input::expectation(&a.expect, &["homotopic", "not-homotopic"])?;
    let dom = input::graph(&a.g)?;
    let cod = match &a.h {
        Some(h) => input::graph(h)?,
        None => dom.clone(),
    };
    let f = input::map(&a.f, &dom, &cod, a.pointed)?;
    let g = input::map(&a.other, &dom, &cod, a.pointed)?;
    let verdict = are_homotopic(&f, &g, a.pointed, limits)?;
    let refuted = match a.expect.as_deref() {
        Some("homotopic") => !verdict.is_homotopic(),
        Some("not-homotopic") => verdict.is_homotopic(),
        _ => false,
    };
    #[derive(Serialize)]
    struct Out<'a> {
        f: &'a [usize],
        g: &'a [usize],
        homotopic: bool,
        distance: Option<usize>,
        #[serde(flatten)]
        verdict: ahtop_core::hom::HomotopyVerdict,
    }
    let out = Out {
        f: f.assignment(),
        g: g.assignment(),
        homotopic: verdict.is_homotopic(),
        distance: verdict.distance(),
        verdict,
    };
    let params = json!({ "pointed": a.pointed, "expect": a.expect });
    emit(cli, "homotopy", params, Outcome::refuted_if(refuted), &out)
}

fn classes(cli: &Cli, a: &ClassesArgs, limits: &Limits) -> Result<u8, Failure> {
    let k = input::graph(&a.k)?;
    let g = input::graph(&a.g)?;
    let table = homotopy_classes(k, g, a.pointed, limits)?;
    let params = json!({ "pointed": a.pointed });
    emit(cli, "classes", params, Outcome::Ok, &table.summary())
}

fn a1(cli: &Cli, a: &A1Args) -> Result<u8, Failure> {
    input::expectation(&a.expect, &["trivial", "nontrivial"])?;
    let g = input::graph(&a.g)?;
    let report = a1_report(&g, a.budget);
    let refuted = match a.expect.as_deref() {
        Some("trivial") => report.verdict != Contractibility::Trivialized,
        Some("nontrivial") => report.verdict != Contractibility::NontrivialByAbelianization,
        _ => false,
    };
    let params = json!({ "tietze_budget": a.budget, "expect": a.expect });
    emit(cli, "a1", params, Outcome::refuted_if(refuted), &report)
}

fn fiber(cli: &Cli, a: &FiberArgs, limits: &Limits) -> Result<u8, Failure> {
    if !(1..=3).contains(&a.depth) {
        return Err(Failure::Input("--depth must be 1, 2 or 3".into()));
    }
    if a.ladder && a.depth != 1 {
        return Err(Failure::Input("--ladder builds its own tower; leave --depth at 1".into()));
    }
    let f = input::pointed_map(&a.source)?;
    let mf = mapping_fiber(&f, a.max_len, limits)?;
    let summary = mf.summary();
    let pullback_verified = verify_pullback(&mf);
    let tower = if a.depth > 1 {
        let lengths: Vec<usize> = (0..a.depth).map(|i| if i == 0 { a.max_len } else { a.inner }).collect();
        Some(iterated_fiber(&f, &lengths, limits)?.summary())
    } else {
        None
    };
    let ladder = if a.ladder {
        let opts = LadderOptions {
            search_budget: a.budget,
            mf3_path_length: a.inner,
        };
        Some(check_mf2_ladder(&f, a.max_len, &opts, limits)?)
    } else {
        None
    };
    let refuted = !pullback_verified
        || !summary.image_k_equals_fiber_over_base
        || ladder.as_ref().is_some_and(|l| !l.all_pass());
    #[derive(Serialize)]
    struct Out {
        fiber: ahtop_core::fiber::FiberSummary,
        pullback_verified: bool,
        tower: Option<ahtop_core::fiber::TowerSummary>,
        ladder: Option<ahtop_core::fiber::LadderReport>,
    }
    let out = Out {
        fiber: summary,
        pullback_verified,
        tower,
        ladder,
    };
    let params = json!({
        "L": a.max_len,
        "depth": a.depth,
        "inner_length": a.inner,
        "ladder": a.ladder,
        "search_budget": a.budget,
    });
    emit(cli, "fiber", params, Outcome::refuted_if(refuted), &out)
}

fn loops(cli: &Cli, a: &LoopsArgs, limits: &Limits) -> Result<u8, Failure> {
    input::expectation(&a.expect, &["sublength-holds", "sublength-fails"])?;
    let g = input::graph(&a.g)?;
    let built = if a.paths {
        path_graph_trunc(g.clone(), a.max_len, limits)?
    } else {
        loop_graph_trunc(g.clone(), a.max_len, limits)?
    };
    let sublength = check_sublength_condition(&g, a.max_len, a.bound, limits)?;
    let refuted = match a.expect.as_deref() {
        Some("sublength-holds") => !sublength.holds,
        Some("sublength-fails") => sublength.holds,
        _ => false,
    };
    #[derive(Serialize)]
    struct Out<'a> {
        summary: ahtop_core::paths::PathGraphSummary,
        sublength: ahtop_core::paths::SublengthReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        traces: Option<Vec<&'a [usize]>>,
    }
    let out = Out {
        summary: built.summary(),
        sublength,
        traces: a.list.then(|| built.paths().iter().map(|p| p.trace()).collect()),
    };
    let params = json!({ "L": a.max_len, "paths": a.paths, "bound": a.bound, "expect": a.expect });
    emit(cli, "loops", params, Outcome::refuted_if(refuted), &out)
}

fn suspend(cli: &Cli, a: &SuspendArgs) -> Result<u8, Failure> {
    let g = input::graph(&a.g)?;
    let s = suspension(&g, a.levels)?;
    #[derive(Serialize)]
    struct Out {
        vertices: usize,
        edges: usize,
        bound: usize,
        graph: GraphFile,
    }
    let out = Out {
        vertices: s.graph().vertex_count(),
        edges: s.graph().edge_count(),
        bound: (a.levels.saturating_sub(1)) * (g.vertex_count() - 1) + 1,
        graph: GraphFile::from_pointed(s.graph()),
    };
    emit(cli, "suspend", json!({ "l": a.levels }), Outcome::Ok, &out)
}

fn adjunction(cli: &Cli, a: &AdjunctionArgs, limits: &Limits) -> Result<u8, Failure> {
    let g = input::graph(&a.g)?;
    let h = input::graph(&a.h)?;
    let report = adjunction_check(&g, &h, a.levels, limits)?;
    #[derive(Serialize)]
    struct Out {
        holds: bool,
        #[serde(flatten)]
        report: ahtop_core::exact::AdjunctionReport,
    }
    let out = Out {
        holds: report.holds(),
        report,
    };
    let outcome = Outcome::refuted_if(!out.holds);
    emit(cli, "adjunction", json!({ "l": a.levels }), outcome, &out)
}

fn puppe(cli: &Cli, a: &PuppeArgs, limits: &Limits) -> Result<u8, Failure> {
    if a.depth == 0 {
        return Err(Failure::Input("--depth must be at least 1".into()));
    }
    if a.inner > a.max_len {
        return Err(Failure::Input("--inner may not exceed --L".into()));
    }
    let probes = input::probes(&a.probes)?;
    let f = input::pointed_map(&a.source)?;
    let options = PuppeOptions {
        max_len: a.max_len,
        depth: a.depth,
        inner_length: a.inner,
        retries: a.retries,
    };
    let report = puppe_build_and_check(&f, &options, &probes, limits)?;
    let outcome = match report.verdict {
        AggregateVerdict::Exact => Outcome::Ok,
        AggregateVerdict::NotExactAtTruncation => Outcome::Refuted,
        AggregateVerdict::Inconclusive => Outcome::Capped,
    };
    let params = json!({
        "L": a.max_len,
        "depth": a.depth,
        "inner_length": a.inner,
        "retries": a.retries,
        "probes": a.probes,
    });
    emit(cli, "puppe", params, outcome, &report)
}
