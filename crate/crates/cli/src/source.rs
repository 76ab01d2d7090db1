use std::fmt;
use std::path::Path;

use anyhow::Result;
use local_derand::{gen, Graph};

use crate::args::{GenArgs, GenKind, SourceArgs};

/// A bad flag combination detected after parsing.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: GenKind) -> Result<T> {
    v.ok_or_else(|| usage(format!("--gen {} needs --{flag}", kind_name(kind))))
}

pub fn kind_name(kind: GenKind) -> &'static str {
    match kind {
        GenKind::Gnp => "gnp",
        GenKind::Path => "path",
        GenKind::Cycle => "cycle",
        GenKind::Grid => "grid",
        GenKind::Tree => "tree",
        GenKind::Regular => "regular",
        GenKind::DisjointEdges => "disjoint-edges",
        GenKind::Complete => "complete",
        GenKind::Star => "star",
        GenKind::Edgeless => "edgeless",
    }
}

/// Builds the generated graph and a one-line description of it.
pub fn generate(args: &GenArgs, seed: Option<u64>) -> Result<(Graph, String)> {
    let k = args.kind;
    let seed = if k.randomized() {
        Some(seed.ok_or_else(|| usage(format!("--gen {} is randomized and needs --seed", kind_name(k))))?)
    } else {
        None
    };
    let s = seed.unwrap_or(0);
    let (g, desc) = match k {
        GenKind::Gnp => {
            let (n, p) = (need(args.n, "n", k)?, need(args.p, "p", k)?);
            (gen::gnp(n, p, s)?, format!("gnp n={n} p={p} seed={s}"))
        }
        GenKind::Path => {
            let n = need(args.n, "n", k)?;
            (gen::path(n), format!("path n={n}"))
        }
        GenKind::Cycle => {
            let n = need(args.n, "n", k)?;
            (gen::cycle(n)?, format!("cycle n={n}"))
        }
        GenKind::Grid => {
            let (r, c) = (need(args.rows, "rows", k)?, need(args.cols, "cols", k)?);
            (gen::grid(r, c), format!("grid rows={r} cols={c}"))
        }
        GenKind::Tree => {
            let n = need(args.n, "n", k)?;
            (gen::tree(n, s), format!("tree n={n} seed={s}"))
        }
        GenKind::Regular => {
            let (n, d) = (need(args.n, "n", k)?, need(args.degree, "degree", k)?);
            (gen::regular(n, d, s)?, format!("regular n={n} degree={d} seed={s}"))
        }
        GenKind::DisjointEdges => {
            let n = need(args.n, "n", k)?;
            (gen::disjoint_edges(n), format!("disjoint-edges n={n}"))
        }
        GenKind::Complete => {
            let n = need(args.n, "n", k)?;
            (gen::complete(n), format!("complete n={n}"))
        }
        GenKind::Star => {
            let n = need(args.n, "n", k)?;
            (gen::star(n), format!("star n={n}"))
        }
        GenKind::Edgeless => {
            let n = need(args.n, "n", k)?;
            (gen::edgeless(n), format!("edgeless n={n}"))
        }
    };
    Ok((g, desc))
}

pub fn load(src: &SourceArgs, seed: Option<u64>) -> Result<(Graph, String)> {
    match (&src.graph, src.gen()) {
        (Some(path), None) => {
            let text = read(path)?;
            Ok((Graph::parse_edge_list(&text)?, format!("file {}", path.display())))
        }
        (None, Some(g)) => generate(&g, seed),
        _ => Err(usage("exactly one of --graph and --gen is required")),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}
