//! Loading graph collections from disk.
//!
//! Two formats are understood:
//!
//! * the multi-file TUDataset layout (`{prefix}_A.txt`, `{prefix}_graph_indicator.txt`
//!   and optional `_node_labels`, `_node_attributes`, `_edge_attributes`,
//!   `_graph_labels` files), 1-indexed and comma separated;
//! * a plain edge list, one `i j [w]` line per undirected edge, 0-indexed,
//!   with an optional attribute table next to it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{build_graph, AttributeColumn, AttributeKind, AttributeSchema, ColumnValues, Graph};
use crate::scalar::Scalar;

/// How the `_A.txt` file listed its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuLoadStats {
    pub a_lines: usize,
    pub undirected_edges: usize,
    /// Every non-loop edge appeared in both orientations.
    pub mirrored: bool,
}

#[derive(Clone, Debug)]
pub struct GraphDataset<T = f64> {
    pub name: String,
    pub graphs: Vec<Graph<T>>,
    pub schema: Arc<AttributeSchema>,
    pub graph_labels: Option<Vec<i64>>,
    pub load_stats: Option<TuLoadStats>,
}

impl<T: Scalar> GraphDataset<T> {
    pub fn new(name: impl Into<String>, graphs: Vec<Graph<T>>, schema: Arc<AttributeSchema>) -> Self {
        GraphDataset {
            name: name.into(),
            graphs,
            schema,
            graph_labels: None,
            load_stats: None,
        }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

struct Lines {
    path: PathBuf,
    /// `(1-based line number, trimmed content)` of every non-blank line.
    rows: Vec<(usize, String)>,
}

impl Lines {
    fn read(path: &Path) -> Result<Lines> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim().to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Ok(Lines {
            path: path.to_path_buf(),
            rows,
        })
    }

    fn malformed(&self, line_no: usize, reason: impl Into<String>) -> Error {
        Error::MalformedLine {
            file: self.path.clone(),
            line_no,
            reason: reason.into(),
        }
    }

    fn fields<'a>(&self, line: &'a str) -> Vec<&'a str> {
        line.split(',').map(str::trim).collect()
    }

    fn parse<F: std::str::FromStr>(&self, line_no: usize, field: &str) -> Result<F> {
        field
            .parse()
            .map_err(|_| self.malformed(line_no, format!("cannot parse {field:?}")))
    }
}

fn optional(dir: &Path, prefix: &str, suffix: &str) -> Result<Option<Lines>> {
    let path = dir.join(format!("{prefix}_{suffix}.txt"));
    if path.exists() {
        Lines::read(&path).map(Some)
    } else {
        Ok(None)
    }
}

fn required(dir: &Path, prefix: &str, suffix: &str) -> Result<Lines> {
    let path = dir.join(format!("{prefix}_{suffix}.txt"));
    if !path.exists() {
        return Err(Error::MissingRequiredFile(path));
    }
    Lines::read(&path)
}

/// Sorts numerically when every value is an integer, lexicographically otherwise.
fn sort_domain(values: impl IntoIterator<Item = String>) -> Vec<String> {
    let set: HashSet<String> = values.into_iter().collect();
    let mut out: Vec<String> = set.into_iter().collect();
    if out.iter().all(|v| v.parse::<i64>().is_ok()) {
        out.sort_by_key(|v| v.parse::<i64>().unwrap());
    } else {
        out.sort();
    }
    out
}

/// Loads `{prefix}_*.txt` from `directory`.
pub fn load_tudataset<T: Scalar>(directory: &Path, prefix: &str) -> Result<GraphDataset<T>> {
    let a_file = required(directory, prefix, "A")?;
    let indicator = required(directory, prefix, "graph_indicator")?;

    let mut node_graph = Vec::with_capacity(indicator.rows.len());
    for (line_no, line) in &indicator.rows {
        let g: usize = indicator.parse(*line_no, line)?;
        if g == 0 {
            return Err(indicator.malformed(*line_no, "graph ids are 1-based"));
        }
        node_graph.push(g - 1);
    }
    let total_nodes = node_graph.len();
    let graph_count = node_graph.iter().max().map_or(0, |&g| g + 1);
    let mut local = vec![0usize; total_nodes];
    let mut sizes = vec![0usize; graph_count];
    for (k, &g) in node_graph.iter().enumerate() {
        local[k] = sizes[g];
        sizes[g] += 1;
    }
    if let Some(g) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InconsistentNodeCount(format!("graph {} has no nodes", g + 1)));
    }

    let edge_weights = optional(directory, prefix, "edge_attributes")?;
    if let Some(ew) = &edge_weights {
        if ew.rows.len() != a_file.rows.len() {
            return Err(Error::InconsistentNodeCount(format!(
                "{} edge attribute lines for {} edges",
                ew.rows.len(),
                a_file.rows.len()
            )));
        }
        if ew.rows.iter().any(|(_, l)| l.contains(',')) {
            log::warn!(
                "{}: several edge attributes per line, using the first as weight",
                ew.path.display()
            );
        }
    }

    let mut edges: Vec<BTreeMap<(usize, usize), T>> = vec![BTreeMap::new(); graph_count];
    let mut directed: HashSet<(usize, usize)> = HashSet::with_capacity(a_file.rows.len());
    for (row, (line_no, line)) in a_file.rows.iter().enumerate() {
        let fields = a_file.fields(line);
        if fields.len() != 2 {
            return Err(a_file.malformed(*line_no, "expected two comma separated node ids"));
        }
        let i: usize = a_file.parse(*line_no, fields[0])?;
        let j: usize = a_file.parse(*line_no, fields[1])?;
        for id in [i, j] {
            if id == 0 || id > total_nodes {
                return Err(Error::InconsistentNodeCount(format!(
                    "{}:{line_no}: node {id} outside 1..={total_nodes}",
                    a_file.path.display()
                )));
            }
        }
        let (gi, gj) = (node_graph[i - 1], node_graph[j - 1]);
        if gi != gj {
            return Err(Error::CrossGraphEdge {
                i,
                j,
                gi: gi + 1,
                gj: gj + 1,
            });
        }
        let weight = match &edge_weights {
            Some(ew) => {
                let (ln, l) = &ew.rows[row];
                let first = ew.fields(l)[0];
                T::of(ew.parse::<f64>(*ln, first)?)
            }
            None => T::one(),
        };
        if !directed.insert((i, j)) {
            log::warn!("{}:{line_no}: repeated edge ({i}, {j}) ignored", a_file.path.display());
            continue;
        }
        let (li, lj) = (local[i - 1], local[j - 1]);
        let key = (li.min(lj), li.max(lj));
        match edges[gi].get(&key) {
            Some(&w) if w != weight => log::warn!(
                "{}:{line_no}: mirrored edge ({i}, {j}) carries a different weight, keeping the first",
                a_file.path.display()
            ),
            Some(_) => {}
            None => {
                edges[gi].insert(key, weight);
            }
        }
    }
    let mirrored = directed.iter().all(|&(i, j)| i == j || directed.contains(&(j, i)));
    let undirected_edges = edges.iter().map(BTreeMap::len).sum();
    if !mirrored {
        log::info!("{}: edges are not listed in both orientations", a_file.path.display());
    }

    let mut columns = Vec::new();
    let mut values: Vec<ColumnValues<T>> = Vec::new();

    if let Some(labels) = optional(directory, prefix, "node_labels")? {
        let table = read_table::<i64>(&labels, total_nodes)?;
        let width = table.first().map_or(0, Vec::len);
        for c in 0..width {
            let col: Vec<String> = table.iter().map(|r| r[c].to_string()).collect();
            let name = if width == 1 {
                "label".to_string()
            } else {
                format!("label_{c}")
            };
            columns.push(AttributeColumn::categorical(name, sort_domain(col.iter().cloned())));
            values.push(ColumnValues::Categorical(col));
        }
    }
    if let Some(attrs) = optional(directory, prefix, "node_attributes")? {
        let table = read_table::<f64>(&attrs, total_nodes)?;
        let width = table.first().map_or(0, Vec::len);
        for c in 0..width {
            columns.push(AttributeColumn::continuous(format!("attr_{c}")));
            values.push(ColumnValues::Continuous(table.iter().map(|r| T::of(r[c])).collect()));
        }
    }
    let schema = Arc::new(AttributeSchema::new(columns)?);

    let graph_labels = match optional(directory, prefix, "graph_labels")? {
        Some(gl) => {
            if gl.rows.len() != graph_count {
                return Err(Error::InconsistentNodeCount(format!(
                    "{} graph labels for {graph_count} graphs",
                    gl.rows.len()
                )));
            }
            Some(
                gl.rows
                    .iter()
                    .map(|(ln, l)| gl.parse::<i64>(*ln, l))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        None => None,
    };

    // global node ids of each graph, in local order
    let mut members: Vec<Vec<usize>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    for (k, &g) in node_graph.iter().enumerate() {
        members[g].push(k);
    }
    let graphs = members
        .iter()
        .zip(&edges)
        .map(|(nodes, es)| {
            let es: Vec<(usize, usize, T)> = es.iter().map(|(&(i, j), &w)| (i, j, w)).collect();
            let cols = values
                .iter()
                .map(|col| match col {
                    ColumnValues::Categorical(v) => {
                        ColumnValues::Categorical(nodes.iter().map(|&k| v[k].clone()).collect())
                    }
                    ColumnValues::Continuous(v) => ColumnValues::Continuous(nodes.iter().map(|&k| v[k]).collect()),
                })
                .collect();
            build_graph(nodes.len(), &es, cols, schema.clone())
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(GraphDataset {
        name: prefix.to_string(),
        graphs,
        schema,
        graph_labels,
        load_stats: Some(TuLoadStats {
            a_lines: a_file.rows.len(),
            undirected_edges,
            mirrored,
        }),
    })
}

fn read_table<F: std::str::FromStr + Clone>(lines: &Lines, expected_rows: usize) -> Result<Vec<Vec<F>>> {
    if lines.rows.len() != expected_rows {
        return Err(Error::InconsistentNodeCount(format!(
            "{} has {} rows for {expected_rows} nodes",
            lines.path.display(),
            lines.rows.len()
        )));
    }
    let mut width = None;
    lines
        .rows
        .iter()
        .map(|(ln, l)| {
            let row = lines
                .fields(l)
                .into_iter()
                .map(|f| lines.parse::<F>(*ln, f))
                .collect::<Result<Vec<_>>>()?;
            if *width.get_or_insert(row.len()) != row.len() {
                return Err(lines.malformed(*ln, "ragged row"));
            }
            Ok(row)
        })
        .collect()
}

fn fmt_real<T: Scalar>(x: T) -> String {
    format!("{:?}", x.to_f64_lossy())
}

/// Writes `ds` in the TUDataset layout; edges are mirrored and weights always
/// go to `_edge_attributes.txt`.
pub fn write_tudataset<T: Scalar>(ds: &GraphDataset<T>, directory: &Path, prefix: &str) -> Result<()> {
    fs::create_dir_all(directory).map_err(|e| Error::io(directory, e))?;
    let (mut a, mut ew, mut ind, mut labels, mut attrs) = (
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
    );
    let has_labels = ds.schema.columns().iter().any(|c| c.kind != AttributeKind::Continuous);
    let has_attrs = ds.schema.columns().iter().any(|c| c.kind == AttributeKind::Continuous);
    let mut offset = 0;
    for (gi, g) in ds.graphs.iter().enumerate() {
        for (i, j, w) in g.edges() {
            let (ii, jj) = (i + offset + 1, j + offset + 1);
            let _ = writeln!(a, "{ii}, {jj}");
            let _ = writeln!(ew, "{}", fmt_real(w));
            if i != j {
                let _ = writeln!(a, "{jj}, {ii}");
                let _ = writeln!(ew, "{}", fmt_real(w));
            }
        }
        for node in 0..g.node_count() {
            let _ = writeln!(ind, "{}", gi + 1);
            let mut lrow = Vec::new();
            let mut arow = Vec::new();
            for col in g.attributes() {
                match col {
                    ColumnValues::Categorical(v) => lrow.push(v[node].clone()),
                    ColumnValues::Continuous(v) => arow.push(fmt_real(v[node])),
                }
            }
            if has_labels {
                let _ = writeln!(labels, "{}", lrow.join(", "));
            }
            if has_attrs {
                let _ = writeln!(attrs, "{}", arow.join(", "));
            }
        }
        offset += g.node_count();
    }
    let mut files = vec![("A", a), ("edge_attributes", ew), ("graph_indicator", ind)];
    if has_labels {
        files.push(("node_labels", labels));
    }
    if has_attrs {
        files.push(("node_attributes", attrs));
    }
    if let Some(gl) = &ds.graph_labels {
        files.push(("graph_labels", gl.iter().map(|l| format!("{l}\n")).collect()));
    }
    for (suffix, body) in files {
        let path = directory.join(format!("{prefix}_{suffix}.txt"));
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

fn split_row(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

fn parse_kind(word: &str) -> Option<AttributeKind> {
    match word.to_ascii_lowercase().as_str() {
        "categorical" => Some(AttributeKind::Categorical),
        "binary" => Some(AttributeKind::Binary),
        "continuous" => Some(AttributeKind::Continuous),
        _ => None,
    }
}

/// Attribute table: a header of column names, a `#kind` row, one row per node.
fn read_attr_table<T: Scalar>(path: &Path) -> Result<(Vec<AttributeColumn>, Vec<ColumnValues<T>>, usize)> {
    let lines = Lines::read(path)?;
    let mut rows = lines.rows.iter();
    let (hl, header) = rows.next().ok_or_else(|| lines.malformed(1, "missing header row"))?;
    let names: Vec<String> = split_row(header).into_iter().map(String::from).collect();
    let (kl, kind_line) = rows
        .next()
        .ok_or_else(|| lines.malformed(*hl + 1, "missing #kind row"))?;
    let kind_fields = split_row(kind_line);
    if kind_fields.first() != Some(&"#kind") || kind_fields.len() != names.len() + 1 {
        return Err(lines.malformed(*kl, "expected `#kind` followed by one kind per column"));
    }
    let kinds = kind_fields[1..]
        .iter()
        .map(|w| parse_kind(w).ok_or_else(|| lines.malformed(*kl, format!("unknown kind {w:?}"))))
        .collect::<Result<Vec<_>>>()?;

    let mut raw: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    let mut line_nos = Vec::new();
    for (ln, line) in rows {
        let fields = split_row(line);
        if fields.len() != names.len() {
            return Err(lines.malformed(*ln, format!("expected {} fields", names.len())));
        }
        for (c, f) in fields.into_iter().enumerate() {
            raw[c].push(f.to_string());
        }
        line_nos.push(*ln);
    }
    let count = line_nos.len();

    let mut columns = Vec::with_capacity(names.len());
    let mut values = Vec::with_capacity(names.len());
    for ((name, kind), col) in names.into_iter().zip(kinds).zip(raw) {
        match kind {
            AttributeKind::Continuous => {
                let parsed = col
                    .iter()
                    .zip(&line_nos)
                    .map(|(v, &ln)| {
                        v.parse::<f64>()
                            .map(T::of)
                            .map_err(|_| lines.malformed(ln, format!("column {name:?}: {v:?} is not a number")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                columns.push(AttributeColumn::continuous(name));
                values.push(ColumnValues::Continuous(parsed));
            }
            AttributeKind::Categorical => {
                columns.push(AttributeColumn::categorical(name, sort_domain(col.iter().cloned())));
                values.push(ColumnValues::Categorical(col));
            }
            AttributeKind::Binary => {
                let domain = binary_domain(sort_domain(col.iter().cloned()))
                    .ok_or_else(|| Error::InvalidSchema(format!("binary column {name:?} has more than two values")))?;
                columns.push(AttributeColumn {
                    name,
                    kind: AttributeKind::Binary,
                    domain,
                });
                values.push(ColumnValues::Categorical(col));
            }
        }
    }
    Ok((columns, values, count))
}

fn binary_domain(observed: Vec<String>) -> Option<Vec<String>> {
    if observed.iter().all(|v| v == "0" || v == "1") {
        return Some(vec!["0".into(), "1".into()]);
    }
    (observed.len() == 2).then_some(observed)
}

/// Loads one graph from an edge list and an optional attribute table.
pub fn load_edgelist<T: Scalar>(graph_file: &Path, attr_file: Option<&Path>) -> Result<Graph<T>> {
    let lines = Lines::read(graph_file)?;
    let mut edges: Vec<(usize, usize, T)> = Vec::new();
    let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
    let mut max_index = None;
    for (ln, line) in &lines.rows {
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(lines.malformed(*ln, "expected `i j [w]`"));
        }
        let i: usize = lines.parse(*ln, fields[0])?;
        let j: usize = lines.parse(*ln, fields[1])?;
        let w: f64 = match fields.get(2) {
            Some(f) => lines.parse(*ln, f)?,
            None => 1.0,
        };
        if w < 0.0 {
            return Err(Error::NegativeWeight {
                file: lines.path.clone(),
                line_no: *ln,
                weight: w,
            });
        }
        max_index = max_index.max(Some(i.max(j)));
        let key = (i.min(j), i.max(j));
        // a mirrored copy with the same weight is tolerated
        if seen.get(&key) == Some(&w) {
            continue;
        }
        seen.insert(key, w);
        edges.push((i, j, T::of(w)));
    }
    let from_edges = max_index.map_or(0, |m| m + 1);

    let (columns, values, rows) = match attr_file {
        Some(p) => read_attr_table::<T>(p)?,
        None => (Vec::new(), Vec::new(), 0),
    };
    let n = if let Some(p) = attr_file {
        if rows < from_edges {
            return Err(Error::InconsistentNodeCount(format!(
                "{} lists {rows} nodes but edges reach node {}",
                p.display(),
                from_edges - 1
            )));
        }
        rows
    } else {
        from_edges
    };
    build_graph(n, &edges, values, Arc::new(AttributeSchema::new(columns)?))
}

/// Loads every `*.edges` file of `dir` (sorted by name), each with an optional
/// `<stem>.attrs` table, into one dataset with a merged schema.
pub fn load_edgelist_dir<T: Scalar>(dir: &Path) -> Result<GraphDataset<T>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "edges"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::MissingRequiredFile(dir.join("*.edges")));
    }
    let graphs = files
        .iter()
        .map(|f| {
            let attrs = f.with_extension("attrs");
            load_edgelist::<T>(f, attrs.exists().then_some(attrs.as_path()))
        })
        .collect::<Result<Vec<_>>>()?;
    let schema = Arc::new(merge_schemas(graphs.iter().map(|g| g.schema().as_ref()))?);
    let graphs = graphs
        .iter()
        .map(|g| g.with_schema(schema.clone()))
        .collect::<Result<Vec<_>>>()?;
    let name = dir
        .file_name()
        .map_or_else(|| "edgelist".to_string(), |s| s.to_string_lossy().into_owned());
    Ok(GraphDataset::new(name, graphs, schema))
}

/// Union of categorical domains over schemas with identical columns.
pub fn merge_schemas<'a>(schemas: impl IntoIterator<Item = &'a AttributeSchema>) -> Result<AttributeSchema> {
    let mut iter = schemas.into_iter();
    let Some(first) = iter.next() else {
        return Ok(AttributeSchema::empty());
    };
    let mut columns: Vec<AttributeColumn> = first.columns().to_vec();
    for s in iter {
        if s.columns().len() != columns.len()
            || s.columns()
                .iter()
                .zip(&columns)
                .any(|(a, b)| a.name != b.name || a.kind != b.kind)
        {
            return Err(Error::InvalidSchema("graphs disagree on attribute columns".into()));
        }
        for (dst, src) in columns.iter_mut().zip(s.columns()) {
            if dst.kind != AttributeKind::Continuous {
                dst.domain = sort_domain(dst.domain.iter().chain(&src.domain).cloned());
            }
        }
    }
    for c in columns.iter_mut().filter(|c| c.kind == AttributeKind::Binary) {
        c.domain = binary_domain(std::mem::take(&mut c.domain))
            .ok_or_else(|| Error::InvalidSchema(format!("binary column {:?} has more than two values", c.name)))?;
    }
    AttributeSchema::new(columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn write(dir: &Path, name: &str, body: &str) {
        fs::write(dir.join(name), body).unwrap();
    }

    /// Triangle (nodes 1-3) and path (nodes 4-6), mirrored edges.
    fn fixture(dir: &Path) {
        write(
            dir,
            "T_A.txt",
            "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n5, 6\n6, 5\n",
        );
        write(dir, "T_graph_indicator.txt", "1\n1\n1\n2\n2\n2\n");
        write(dir, "T_node_labels.txt", "0\n1\n0\n1\n1\n0\n");
        write(dir, "T_graph_labels.txt", "1\n-1\n");
    }

    #[test]
    fn loads_two_graph_fixture() {
        let dir = tempdir().unwrap();
        fixture(dir.path());
        let ds = load_tudataset::<f64>(dir.path(), "T").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.graphs[0].edge_count(), 3);
        assert_eq!(ds.graphs[1].edge_count(), 2);
        assert_eq!(ds.graphs[1].degrees(), vec![1.0, 2.0, 1.0]);
        assert_eq!(ds.schema.columns().len(), 1);
        assert_eq!(ds.schema.columns()[0].kind, AttributeKind::Categorical);
        assert_eq!(ds.schema.columns()[0].domain, vec!["0", "1"]);
        assert_eq!(ds.graph_labels, Some(vec![1, -1]));
        let stats = ds.load_stats.unwrap();
        assert!(stats.mirrored);
        assert_eq!(stats.a_lines, 2 * stats.undirected_edges);
    }

    #[test]
    fn single_listing_accepted() {
        let dir = tempdir().unwrap();
        write(dir.path(), "S_A.txt", "1, 2\n2, 3\n");
        write(dir.path(), "S_graph_indicator.txt", "1\n1\n1\n");
        let ds = load_tudataset::<f64>(dir.path(), "S").unwrap();
        assert_eq!(ds.graphs[0].edge_count(), 2);
        assert!(ds.schema.is_empty());
        assert!(!ds.load_stats.unwrap().mirrored);
    }

    #[test]
    fn cross_graph_edge() {
        let dir = tempdir().unwrap();
        fixture(dir.path());
        write(dir.path(), "T_A.txt", "1, 2\n1, 4\n");
        assert!(matches!(
            load_tudataset::<f64>(dir.path(), "T"),
            Err(Error::CrossGraphEdge {
                i: 1,
                j: 4,
                gi: 1,
                gj: 2
            })
        ));
    }

    #[test]
    fn missing_and_malformed() {
        let dir = tempdir().unwrap();
        assert!(matches!(
            load_tudataset::<f64>(dir.path(), "X"),
            Err(Error::MissingRequiredFile(_))
        ));
        fixture(dir.path());
        write(dir.path(), "T_A.txt", "1, 2\n2; 3\n");
        assert!(matches!(
            load_tudataset::<f64>(dir.path(), "T"),
            Err(Error::MalformedLine { line_no: 2, .. })
        ));
        fixture(dir.path());
        write(dir.path(), "T_node_labels.txt", "0\n1\n");
        assert!(matches!(
            load_tudataset::<f64>(dir.path(), "T"),
            Err(Error::InconsistentNodeCount(_))
        ));
    }

    #[test]
    fn attributes_and_weights() {
        let dir = tempdir().unwrap();
        fixture(dir.path());
        write(
            dir.path(),
            "T_node_attributes.txt",
            "0.5, 1\n1.5, 2\n2.5, 3\n1, 1\n2, 2\n3, 3\n",
        );
        write(
            dir.path(),
            "T_edge_attributes.txt",
            "2, 9\n2, 9\n1\n1\n1\n1\n1\n1\n3\n3\n",
        );
        let ds = load_tudataset::<f64>(dir.path(), "T").unwrap();
        let names: Vec<_> = ds.schema.columns().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["label", "attr_0", "attr_1"]);
        let w: Vec<_> = ds.graphs[0].edges().map(|(_, _, w)| w).collect();
        assert_eq!(w, vec![2.0, 1.0, 1.0]);
        assert_eq!(ds.graphs[1].degrees(), vec![1.0, 4.0, 3.0]);
    }

    #[test]
    fn edgelist_examples() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("g.edges");
        fs::write(&p, "0 1\n1 2\n").unwrap();
        let g = load_edgelist::<f64>(&p, None).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 1.0), (1, 2, 1.0)]);

        fs::write(&p, "0 1 2.5").unwrap();
        let g = load_edgelist::<f64>(&p, None).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 2.5)]);

        fs::write(&p, "0 1 -3").unwrap();
        assert!(matches!(
            load_edgelist::<f64>(&p, None),
            Err(Error::NegativeWeight { line_no: 1, .. })
        ));

        fs::write(&p, "0 1 2 4").unwrap();
        assert!(matches!(
            load_edgelist::<f64>(&p, None),
            Err(Error::MalformedLine { .. })
        ));
    }

    #[test]
    fn edgelist_with_attributes() {
        let dir = tempdir().unwrap();
        let g = dir.path().join("a.edges");
        let a = dir.path().join("a.attrs");
        fs::write(&g, "# comment\n0 1\n1 2 0.5\n").unwrap();
        fs::write(&a, "party year member\n#kind categorical continuous binary\ndem 1990 yes\nrep 1992 no\ndem 1994 yes\nind 2000 no\n").unwrap();
        let graph = load_edgelist::<f64>(&g, Some(&a)).unwrap();
        assert_eq!(graph.node_count(), 4);
        let cols = graph.schema().columns();
        assert_eq!(cols[0].domain, vec!["dem", "ind", "rep"]);
        assert_eq!(cols[1].kind, AttributeKind::Continuous);
        assert_eq!(cols[2].domain, vec!["no", "yes"]);
        assert_eq!(graph.schema().signal_count(false), 6);

        fs::write(&a, "x\n#kind weird\n1\n").unwrap();
        assert!(matches!(
            load_edgelist::<f64>(&g, Some(&a)),
            Err(Error::MalformedLine { .. })
        ));
    }

    #[test]
    fn edgelist_directory_merges_domains() {
        let dir = tempdir().unwrap();
        fs::write(dir.path().join("a.edges"), "0 1\n").unwrap();
        fs::write(dir.path().join("a.attrs"), "c\n#kind categorical\nx\ny\n").unwrap();
        fs::write(dir.path().join("b.edges"), "0 1\n1 2\n").unwrap();
        fs::write(dir.path().join("b.attrs"), "c\n#kind categorical\nz\nx\nx\n").unwrap();
        let ds = load_edgelist_dir::<f64>(dir.path()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.schema.columns()[0].domain, vec!["x", "y", "z"]);
        assert!(ds.graphs.iter().all(|g| **g.schema() == *ds.schema));
    }
}
