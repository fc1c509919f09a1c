use std::fs;
use std::io::Write;
use std::path::Path as FsPath;

use pmr_core::analysis::{
    bisim_reduce, count_paths, enumerate, enumerate_bounded, graph_projection, multiset_equivalent,
    sample_uniform, set_equivalent, Count, SetStrategy,
};
use pmr_core::automata::Automaton;
use pmr_core::graph::{GraphDb, NodeId, Path};
use pmr_core::pmr::{from_json, to_json, GroupedPmr, Pmr};
use pmr_core::query::{
    chain_count, chain_tab_enumerate, run, Answer, Endpoints, EvalOptions, Query,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::{EquivArgs, EquivMode, EvalArgs, InputArgs, OutFormat, SampleArgs};

const TRUNCATION_MARKER: &str = "# truncated at";

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn in_file<T>(path: &FsPath, r: pmr_core::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::InFile {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(path: &FsPath) -> Result<GraphDb> {
    in_file(path, GraphDb::parse(&read(path)?))
}

fn load_pmr(path: &FsPath, g: &GraphDb) -> Result<Pmr> {
    in_file(path, from_json(&read(path)?, g))
}

fn endpoint_names<'q>(q: &'q Query, out: &mut Vec<&'q str>) {
    match q {
        Query::Select { src, tgt, child } => {
            for ends in [src, tgt] {
                if let Endpoints::Nodes(ns) = ends {
                    out.extend(ns.iter().map(String::as_str));
                }
            }
            endpoint_names(child, out);
        }
        Query::Mode(_, child) | Query::Group(_, child) => endpoint_names(child, out),
        Query::Union(parts) => parts.iter().for_each(|p| endpoint_names(p, out)),
        Query::Lang(_) | Query::Chain(_) | Query::Proj1(_) => {}
    }
}

fn options(a: &InputArgs) -> Result<EvalOptions> {
    let mut opts = EvalOptions {
        det_cap: a.det_cap,
        path_cap: a.path_cap,
        allow_ambiguous: a.set_semantics,
        missing_nodes_match_nothing: true,
        ..EvalOptions::default()
    };
    for spec in &a.automata {
        let (name, file) = spec.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--automaton expects NAME=FILE, got `{spec}`"))
        })?;
        let file = FsPath::new(file);
        let automaton = in_file(file, Automaton::parse(&read(file)?))?;
        opts.automata.insert(name.to_owned(), automaton);
    }
    if a.set_semantics {
        eprintln!("pmrq: warning: --set-semantics: path multiplicities may be wrong");
    }
    Ok(opts)
}

/// Loads the graph and computes the answer the input arguments describe.
fn answer(a: &InputArgs) -> Result<(GraphDb, Answer)> {
    let g = load_graph(&a.graph)?;
    if let Some(p) = &a.pmr {
        let r = load_pmr(p, &g)?;
        return Ok((g, Answer::Paths(r)));
    }
    let text = match (&a.query, &a.query_file) {
        (Some(q), _) => q.clone(),
        (None, Some(f)) => read(f)?,
        (None, None) => {
            return Err(CliError::Usage(
                "one of --query, --query-file or --pmr is required".into(),
            ))
        }
    };
    let q = Query::parse(text.trim())?;
    let mut names = Vec::new();
    endpoint_names(&q, &mut names);
    for n in names.into_iter().filter(|n| g.node(n).is_none()) {
        eprintln!("pmrq: warning: node `{n}` is not in the graph");
    }
    let ans = run(&g, &q, &options(a)?)?;
    Ok((g, ans))
}

/// All paths of the answer in one PMR, for outputs that ignore grouping.
fn flatten(g: &GraphDb, ans: &Answer) -> Result<Pmr> {
    match ans {
        Answer::Paths(r) => Ok(r.clone()),
        Answer::Grouped(gr) => Ok(merge_groups(g, gr)),
        Answer::Chain(cr) => Ok(cr.pmr.clone()),
        Answer::Proj1(_) => Err(CliError::Usage(
            "proj1 answers are per-node counts; use --out table or count".into(),
        )),
    }
}

fn merge_groups(g: &GraphDb, gr: &GroupedPmr) -> Pmr {
    Pmr::union_all(g.graph_ref(), gr.groups.iter().map(|grp| &grp.pmr))
}

fn key(g: &GraphDb, n: Option<NodeId>) -> &str {
    n.map_or("*", |n| g.node_name(n))
}

fn render_path(g: &GraphDb, p: &Path) -> String {
    format!(
        "{}\t{}\t{}",
        g.node_name(p.source()),
        g.node_name(p.target()),
        p.render(g)
    )
}

/// Writes at most `limit` lines, then the truncation marker if more remain.
fn write_limited(
    out: &mut dyn Write,
    lines: impl Iterator<Item = String>,
    limit: Option<usize>,
) -> Result<()> {
    let mut lines = lines.peekable();
    let mut written = 0;
    while let Some(line) = lines.next() {
        writeln!(out, "{line}")?;
        written += 1;
        if limit == Some(written) {
            if lines.peek().is_some() {
                writeln!(out, "{TRUNCATION_MARKER} {written}")?;
            }
            break;
        }
    }
    Ok(())
}

fn paths<'a>(r: &'a Pmr, max_length: Option<usize>) -> Box<dyn Iterator<Item = Path> + 'a> {
    match max_length {
        Some(n) => Box::new(enumerate_bounded(r, n)),
        None => Box::new(enumerate(r)),
    }
}

fn require_limit(cyclic: bool, limit: Option<usize>) -> Result<()> {
    if cyclic && limit.is_none() {
        return Err(CliError::Usage(
            "the answer is cyclic and may list infinitely many paths; pass --limit".into(),
        ));
    }
    Ok(())
}

fn write_table(
    out: &mut dyn Write,
    g: &GraphDb,
    ans: &Answer,
    limit: Option<usize>,
    max_length: Option<usize>,
) -> Result<()> {
    match ans {
        Answer::Paths(r) => {
            require_limit(!r.is_acyclic(), limit)?;
            write_limited(out, paths(r, max_length).map(|p| render_path(g, &p)), limit)
        }
        Answer::Grouped(gr) => {
            require_limit(gr.groups.iter().any(|grp| !grp.pmr.is_acyclic()), limit)?;
            // Groups come out one after another, in group order.
            let lines = gr
                .groups
                .iter()
                .flat_map(|grp| paths(&grp.pmr, max_length).map(|p| render_path(g, &p)));
            write_limited(out, lines, limit)
        }
        Answer::Chain(cr) => {
            require_limit(!cr.pmr.is_acyclic(), limit)?;
            if max_length.is_some() {
                return Err(CliError::Usage(
                    "--max-length does not apply to chains".into(),
                ));
            }
            write_limited(
                out,
                chain_tab_enumerate(cr, None).map(|row| row.render(g)),
                limit,
            )
        }
        Answer::Proj1(counts) => write_limited(
            out,
            counts
                .iter()
                .map(|(n, c)| format!("{}\t{c}", g.node_name(*n))),
            limit,
        ),
    }
}

fn write_count(out: &mut dyn Write, g: &GraphDb, ans: &Answer) -> Result<()> {
    match ans {
        Answer::Paths(r) => writeln!(out, "{}", count_paths(r)?)?,
        Answer::Grouped(gr) => {
            for grp in &gr.groups {
                let c = count_paths(&grp.pmr)?;
                writeln!(out, "{}\t{}\t{c}", key(g, grp.source), key(g, grp.target))?;
            }
        }
        Answer::Chain(cr) => writeln!(out, "{}", chain_count(cr)?)?,
        Answer::Proj1(counts) => {
            let total = counts.values().cloned().fold(Count::zero(), |a, b| a + b);
            writeln!(out, "{total}")?;
        }
    }
    Ok(())
}

fn write_pmr(out: &mut dyn Write, g: &GraphDb, ans: &Answer) -> Result<()> {
    match ans {
        Answer::Grouped(gr) => {
            let docs: Vec<serde_json::Value> = gr
                .groups
                .iter()
                .map(|grp| {
                    serde_json::json!({
                        "source": grp.source.map(|n| g.node_name(n)),
                        "target": grp.target.map(|n| g.node_name(n)),
                        "pmr": serde_json::from_str::<serde_json::Value>(&to_json(&grp.pmr, g))
                            .expect("documents are valid JSON"),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&docs).expect("values serialize");
            writeln!(out, "{text}")?;
        }
        _ => writeln!(out, "{}", to_json(&flatten(g, ans)?, g))?,
    }
    Ok(())
}

pub fn eval(a: &EvalArgs, out: &mut dyn Write) -> Result<u8> {
    let (g, ans) = answer(&a.input)?;
    match a.out {
        OutFormat::Table => write_table(out, &g, &ans, a.limit, a.max_length)?,
        OutFormat::Count => write_count(out, &g, &ans)?,
        OutFormat::Pmr => write_pmr(out, &g, &ans)?,
        OutFormat::Graph => write!(
            out,
            "{}",
            graph_projection(&flatten(&g, &ans)?, &g)?.to_text()
        )?,
    }
    Ok(0)
}

pub fn count(a: &InputArgs, out: &mut dyn Write) -> Result<u8> {
    let (g, ans) = answer(a)?;
    write_count(out, &g, &ans)?;
    Ok(0)
}

pub fn project(a: &InputArgs, out: &mut dyn Write) -> Result<u8> {
    let (g, ans) = answer(a)?;
    write!(
        out,
        "{}",
        graph_projection(&flatten(&g, &ans)?, &g)?.to_text()
    )?;
    Ok(0)
}

pub fn equiv(a: &EquivArgs, out: &mut dyn Write) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let (r1, r2) = (load_pmr(&a.left, &g)?, load_pmr(&a.right, &g)?);
    let same = match a.mode {
        EquivMode::Multiset => multiset_equivalent(&r1, &r2)?,
        EquivMode::Set => set_equivalent(&r1, &r2, SetStrategy::Determinize { cap: a.det_cap })?,
    };
    writeln!(out, "{}", if same { "equivalent" } else { "different" })?;
    Ok(if same { 0 } else { 1 })
}

pub fn sample(a: &SampleArgs, out: &mut dyn Write) -> Result<u8> {
    let (g, ans) = answer(&a.input)?;
    let r = flatten(&g, &ans)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for _ in 0..a.samples {
        match sample_uniform(&r, a.length, &mut rng)? {
            Some(p) => writeln!(out, "{}", render_path(&g, &p))?,
            None => {
                eprintln!("pmrq: no path to sample");
                break;
            }
        }
    }
    Ok(0)
}

pub fn minimize(a: &InputArgs, out: &mut dyn Write) -> Result<u8> {
    let (g, ans) = answer(a)?;
    eprintln!("pmrq: warning: minimization keeps the path set; multiplicities may change");
    writeln!(out, "{}", to_json(&bisim_reduce(&flatten(&g, &ans)?), &g))?;
    Ok(0)
}
