//! The four subcommands, as plain functions over strings and files.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use eqtri::block::{build_block, FactorSpec};
use eqtri::homology::{homology, HomologyProfile};
use eqtri::polytope::{read_characteristic, read_polytope, validate_characteristic, CharacteristicFunction};
use eqtri::simplicial::{GroupAction, Simplex, SimplicialComplex};
use eqtri::toric::{act_on_label, assemble_cpn, assemble_toric, GlobalVertexLabel};
use eqtri::torus::{torus_complex, triangulate_in, GroupElement};
use rayon::prelude::*;
use serde_json::json;

use crate::file::ComplexFile;
use crate::report::{CheckResult, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Construction(String),
    Io(String),
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Construction(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Construction(m) => write!(f, "construction failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
        }
    }
}

impl std::error::Error for CliError {}

// ---------------------------------------------------------------- build

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Torus(usize),
    Cube(usize),
    Block(String),
    Cpn(usize),
    /// Polytope file text and characteristic file text.
    Toric { polytope: String, characteristic: String },
}

impl Target {
    pub fn kind(&self) -> &'static str {
        match self {
            Target::Torus(_) => "torus",
            Target::Cube(_) => "cube",
            Target::Block(_) => "block",
            Target::Cpn(_) => "cpn",
            Target::Toric { .. } => "toric",
        }
    }

    pub fn default_max_n(&self) -> usize {
        match self {
            Target::Torus(_) | Target::Cube(_) => 6,
            _ => 3,
        }
    }
}

/// The configured limit, plus a warning when it exceeds the default.
pub fn resolve_max_n(target: &Target, max_n: Option<usize>) -> (usize, Option<String>) {
    let default = target.default_max_n();
    match max_n {
        Some(m) if m > default => (
            m,
            Some(format!(
                "warning: --max-n {m} exceeds the default {default} for `{}`; size and running time grow exponentially in n",
                target.kind()
            )),
        ),
        Some(m) => (m, None),
        None => (default, None),
    }
}

fn check_n(target: &Target, n: usize, max: usize) -> Result<(), CliError> {
    if n < 1 {
        return Err(CliError::Usage(format!("`{}` needs n ≥ 1, got {n}", target.kind())));
    }
    if n > max {
        return Err(CliError::Usage(format!(
            "`{}` with n = {n} exceeds the limit {max}; raise it with --max-n",
            target.kind()
        )));
    }
    Ok(())
}

fn digits(xs: &[u8]) -> String {
    xs.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Builds the target. Returns the canonical file and an optional cost warning.
pub fn build(target: &Target, max_n: Option<usize>) -> Result<(ComplexFile, Option<String>), CliError> {
    let (max, warning) = resolve_max_n(target, max_n);
    let construction = |e: &dyn fmt::Display| CliError::Construction(e.to_string());
    let file = match target {
        Target::Torus(n) => {
            check_n(target, *n, max)?;
            let k = torus_complex(*n).map_err(|e| construction(&e))?;
            ComplexFile::from_complex(&k, |v| format!("t:{}", v.render()), None)
        }
        Target::Cube(n) => {
            check_n(target, *n, max)?;
            let k = triangulate_in(*n).map_err(|e| construction(&e))?;
            ComplexFile::from_complex(&k, |v| format!("g:{}", digits(&v.0)), None)
        }
        Target::Block(code) => {
            let spec = FactorSpec::parse(code).map_err(|e| CliError::Usage(e.to_string()))?;
            check_n(target, spec.n(), max)?;
            let b = build_block(&spec).map_err(|e| construction(&e))?;
            ComplexFile::from_complex(&b.complex, |v| format!("p:{}", v.render()), None)
        }
        Target::Cpn(n) => {
            check_n(target, *n, max)?;
            let a = assemble_cpn(*n).map_err(|e| construction(&e))?;
            ComplexFile::from_complex(&a.complex, |v| v.to_string(), Some(a.xi.symbols().to_vec()))
        }
        Target::Toric { polytope, characteristic } => {
            let q = read_polytope(polytope).map_err(|e| CliError::Parse(format!("polytope: {e}")))?;
            check_n(target, q.dim(), max)?;
            let xi = read_characteristic(characteristic, &q)
                .map_err(|e| CliError::Parse(format!("characteristic: {e}")))?;
            if !validate_characteristic(&q, &xi) {
                return Err(CliError::Usage(
                    "characteristic function is not standard: two facets at a vertex share a symbol".into(),
                ));
            }
            let a = assemble_toric(&q, &xi).map_err(|e| construction(&e))?;
            ComplexFile::from_complex(&a.complex, |v| v.to_string(), Some(xi.symbols().to_vec()))
        }
    };
    Ok((file, warning))
}

// ---------------------------------------------------------------- export

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Canonical,
    Json,
    FacetsOnly,
}

impl std::str::FromStr for ExportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "canonical" => Ok(ExportFormat::Canonical),
            "json" => Ok(ExportFormat::Json),
            "facets-only" => Ok(ExportFormat::FacetsOnly),
            _ => Err(CliError::Usage(format!("unknown format {s:?}; expected canonical, json or facets-only"))),
        }
    }
}

pub fn parse_file(text: &str) -> Result<ComplexFile, CliError> {
    ComplexFile::parse(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn export(file: &ComplexFile, format: ExportFormat) -> String {
    let c = file.canonicalize();
    match format {
        ExportFormat::Canonical => c.render(),
        ExportFormat::Json => c.render_json(),
        ExportFormat::FacetsOnly => c.render_facets_only(),
    }
}

// ---------------------------------------------------------------- homology

pub fn homology_of_file(file: &ComplexFile) -> HomologyProfile {
    homology(&file.to_complex())
}

pub fn render_homology(file: &ComplexFile, h: &HomologyProfile, json_out: bool) -> String {
    let f = file.to_complex().f_vector();
    if json_out {
        let torsion: Vec<Vec<String>> =
            h.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
        let v = json!({
            "betti": h.betti,
            "torsion": torsion,
            "euler_characteristic": h.euler_characteristic(),
            "f_vector": f,
        });
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    let mut s = String::from("dim  betti  torsion\n");
    for (k, b) in h.betti.iter().enumerate() {
        let t: Vec<String> = h.torsion[k].iter().map(|x| format!("Z/{x}")).collect();
        let t = if t.is_empty() { "-".to_string() } else { t.join(" ") };
        s.push_str(&format!("{k:<4} {b:<6} {t}\n"));
    }
    let fv: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    s.push_str(&format!("euler characteristic: {}\n", h.euler_characteristic()));
    s.push_str(&format!("f-vector: ({})\n", fv.join(", ")));
    s
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Complex,
    Pure,
    Pseudomanifold,
    Equivariance,
    Links,
    Counts,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Complex, Check::Pure, Check::Pseudomanifold, Check::Equivariance, Check::Links, Check::Counts];

    pub fn name(self) -> &'static str {
        match self {
            Check::Complex => "complex",
            Check::Pure => "pure",
            Check::Pseudomanifold => "pseudomanifold",
            Check::Equivariance => "equivariance",
            Check::Links => "links",
            Check::Counts => "counts",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check {s:?}")))
    }
}

/// Comma-separated check names, or `all`.
pub fn parse_checks(s: &str) -> Result<Option<Vec<Check>>, CliError> {
    if s == "all" {
        return Ok(None);
    }
    let mut v = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Check>, _>>()?;
    v.sort();
    v.dedup();
    Ok(Some(v))
}

/// How vertex labels encode coordinates, if they do.
#[derive(Debug, Clone, PartialEq)]
pub enum Schema {
    /// `t:012`, residues mod 3.
    Torus(usize),
    /// `g:0123`, grid points of the cube in thirds.
    Grid(usize),
    /// `p:01*`, block product frame with `*` for the apex.
    Frame(usize),
    /// `τ:…|t:…` with the characteristic read from file metadata.
    Global(Option<CharacteristicFunction>),
    Plain,
}

fn digit_body(labels: &[String], prefix: &str, allowed: &str) -> Option<usize> {
    let mut len = None;
    for l in labels {
        let body = l.strip_prefix(prefix)?;
        if !body.chars().all(|c| allowed.contains(c)) {
            return None;
        }
        let n = body.chars().count();
        if *len.get_or_insert(n) != n {
            return None;
        }
    }
    len.filter(|&n| n > 0)
}

pub fn detect_schema(file: &ComplexFile) -> Schema {
    let ls = &file.labels;
    if let Some(n) = digit_body(ls, "t:", "012") {
        return Schema::Torus(n);
    }
    if let Some(n) = digit_body(ls, "g:", "0123") {
        return Schema::Grid(n);
    }
    if let Some(n) = digit_body(ls, "p:", "012*") {
        return Schema::Frame(n);
    }
    if !ls.is_empty() && ls.iter().all(|l| GlobalVertexLabel::parse(l).is_some()) {
        let xi = file.characteristic.clone().map(CharacteristicFunction::from_symbols);
        return Schema::Global(xi);
    }
    Schema::Plain
}

fn shift_digit(label: &str, prefix: &str, i: usize) -> String {
    let body: String = label[prefix.len()..]
        .chars()
        .enumerate()
        .map(|(j, c)| match c {
            '0' | '1' | '2' if j == i => char::from(b'0' + (c as u8 - b'0' + 1) % 3),
            _ => c,
        })
        .collect();
    format!("{prefix}{body}")
}

/// The Z_3^n action on labels of this schema: rank and generator images.
type LabelAction = (usize, Box<dyn Fn(usize, &str) -> Option<String> + Sync>);

fn label_action(schema: &Schema, file: &ComplexFile) -> Result<Option<LabelAction>, String> {
    Ok(match schema {
        Schema::Torus(n) => Some((*n, Box::new(|i, l: &str| Some(shift_digit(l, "t:", i))))),
        Schema::Frame(n) => Some((*n, Box::new(|i, l: &str| Some(shift_digit(l, "p:", i))))),
        Schema::Global(None) => return Err("`τ:` labels need a `# characteristic` line".into()),
        Schema::Global(Some(xi)) => {
            let d = file.dim();
            if !d.is_multiple_of(2) {
                return Err(format!("`τ:` labels on a complex of odd dimension {d}"));
            }
            let n = d / 2;
            if xi.symbols().iter().any(|&s| s > n) {
                return Err(format!("characteristic symbols exceed n = {n}"));
            }
            let xi = xi.clone();
            Some((
                n,
                Box::new(move |i, l: &str| {
                    let mut g = vec![0; n];
                    g[i] = 1;
                    let label = GlobalVertexLabel::parse(l)?;
                    act_on_label(&xi, n, &GroupElement(g), &label).map(|w| w.to_string())
                }),
            ))
        }
        Schema::Grid(_) | Schema::Plain => None,
    })
}

fn simplex_json(s: &Simplex<String>) -> serde_json::Value {
    json!(s.vertices())
}

fn check_complex(file: &ComplexFile, k: &SimplicialComplex<String>) -> CheckResult {
    let name = Check::Complex.name();
    let used: HashSet<usize> = file.facets.iter().flatten().copied().collect();
    if let Some(i) = (0..file.labels.len()).find(|i| !used.contains(i)) {
        return CheckResult::fail(name, "a declared vertex lies on no facet", json!({ "vertex": file.labels[i] }));
    }
    let distinct: BTreeSet<&Vec<usize>> = file.facets.iter().collect();
    if distinct.len() != file.facets.len() {
        let mut seen = HashSet::new();
        let dup = file.facets.iter().find(|f| !seen.insert(*f)).unwrap();
        let s: Vec<&String> = dup.iter().map(|&i| &file.labels[i]).collect();
        return CheckResult::fail(name, "repeated facet", json!({ "facet": s }));
    }
    if k.facets().len() != file.facets.len() {
        let listed: Vec<Simplex<String>> = file
            .facets
            .iter()
            .map(|f| Simplex::collapsed(f.iter().map(|&i| file.labels[i].clone()).collect()))
            .collect();
        let kept: HashSet<&Simplex<String>> = k.facets().iter().collect();
        let bad = listed.iter().find(|s| !kept.contains(s)).unwrap();
        return CheckResult::fail(name, "a listed facet is a face of another facet", json!({ "facet": simplex_json(bad) }));
    }
    CheckResult::pass(
        name,
        format!("{} vertices, {} facets, every facet maximal", file.labels.len(), file.facets.len()),
        json!({ "vertices": file.labels.len(), "facets": file.facets.len() }),
    )
}

fn check_pure(k: &SimplicialComplex<String>) -> CheckResult {
    let name = Check::Pure.name();
    let d = k.dim().unwrap_or(0);
    match k.facets().iter().find(|f| f.dim() != d) {
        Some(f) => CheckResult::fail(
            name,
            format!("facet of dimension {} in a complex of dimension {d}", f.dim()),
            json!({ "facet": simplex_json(f), "dim": d }),
        ),
        None => CheckResult::pass(name, format!("all facets have dimension {d}"), json!({ "dim": d })),
    }
}

fn check_pseudomanifold(k: &SimplicialComplex<String>) -> CheckResult {
    let name = Check::Pseudomanifold.name();
    if k.is_empty() {
        return CheckResult::fail(name, "empty complex", json!({}));
    }
    let r = k.pseudomanifold_report(false);
    if !r.pure {
        return CheckResult::fail(name, "not pure", json!({}));
    }
    if let Some((ridge, deg)) = r.bad_ridge {
        let what = if deg < 2 { "exposed ridge" } else { "branching ridge" };
        return CheckResult::fail(
            name,
            format!("{what} {} lies on {deg} facet(s)", ridge.vertices().join(" ")),
            json!({ "ridge": simplex_json(&ridge), "facets_containing": deg }),
        );
    }
    if !r.connected {
        return CheckResult::fail(name, "not strongly connected", json!({}));
    }
    CheckResult::pass(name, "closed, every ridge on exactly two facets, strongly connected", json!({}))
}

fn check_equivariance(k: &SimplicialComplex<String>, action: &LabelAction) -> CheckResult {
    let name = Check::Equivariance.name();
    let (n, f) = action;
    let verts: HashSet<&String> = k.vertices().iter().collect();
    for i in 0..*n {
        for v in k.vertices() {
            match f(i, v) {
                Some(w) if verts.contains(&w) => {}
                image => {
                    return CheckResult::fail(
                        name,
                        format!("generator {} sends {v} outside the vertex set", i + 1),
                        json!({ "generator": i + 1, "vertex": v, "image": image }),
                    )
                }
            }
        }
    }
    let act = match GroupAction::from_fn(k.vertices(), *n, |i, v| f(i, v).unwrap()) {
        Ok(a) => a,
        Err(e) => return CheckResult::fail(name, format!("labels do not carry a Z_3^{n} action: {e}"), json!({})),
    };
    let facets: HashSet<&Simplex<String>> = k.facets().iter().collect();
    let elems = act.elements();
    let bad = elems.par_iter().find_map_first(|e| {
        k.facets().iter().find_map(|s| {
            let img = Simplex::collapsed(s.vertices().iter().map(|v| act.apply(e, v)).collect());
            (!facets.contains(&img)).then(|| (e.clone(), s.clone(), img))
        })
    });
    match bad {
        Some((e, s, img)) => CheckResult::fail(
            name,
            format!("element {} maps a facet to a non-facet", digits(&e)),
            json!({ "element": e, "facet": simplex_json(&s), "image": simplex_json(&img) }),
        ),
        None => CheckResult::pass(
            name,
            format!("invariant under all {} group elements tested", elems.len()),
            json!({ "group_elements": elems.len(), "rank": n }),
        ),
    }
}

fn sphere_betti(d: usize) -> Vec<usize> {
    if d == 0 {
        return vec![2];
    }
    let mut b = vec![0; d + 1];
    b[0] = 1;
    b[d] = 1;
    b
}

fn check_links(k: &SimplicialComplex<String>) -> CheckResult {
    let name = Check::Links.name();
    let Some(d) = k.dim().filter(|&d| d >= 1) else {
        return CheckResult::fail(name, "complex has no edges", json!({}));
    };
    let expected = sphere_betti(d - 1);
    let bad = k.vertices().par_iter().find_map_first(|v| {
        let l = k.link(v).ok()?;
        let why = if l.is_empty() {
            Some("empty link".to_string())
        } else if d >= 2 && !l.is_pseudomanifold(false) {
            Some("link is not a closed pseudomanifold".to_string())
        } else {
            let h = homology(&l);
            (h.betti != expected || !h.torsion_free()).then(|| format!("link Betti numbers {:?}", h.betti))
        };
        why.map(|w| (v.clone(), w))
    });
    match bad {
        Some((v, why)) => CheckResult::fail(
            name,
            format!("vertex {v}: {why}"),
            json!({ "vertex": v, "reason": why, "expected_betti": expected }),
        ),
        None => CheckResult::pass(
            name,
            format!("all {} vertex links are closed pseudomanifolds with the homology of S^{}", k.vertices().len(), d - 1),
            json!({ "vertices": k.vertices().len(), "link_betti": expected }),
        ),
    }
}

fn check_counts(schema: &Schema, file: &ComplexFile) -> Option<CheckResult> {
    let name = Check::Counts.name();
    let nv = file.labels.len();
    let simple = |what: &str, expected: usize| {
        let w = json!({ "vertices": nv, "expected": expected });
        if nv == expected {
            CheckResult::pass(name, format!("{nv} vertices, as expected for {what}"), w)
        } else {
            CheckResult::fail(name, format!("{nv} vertices, expected {expected} for {what}"), w)
        }
    };
    Some(match schema {
        Schema::Torus(n) => simple(&format!("the {n}-torus"), 3usize.pow(*n as u32)),
        Schema::Grid(n) => simple(&format!("the {n}-cube grid"), 4usize.pow(*n as u32)),
        Schema::Frame(n) => {
            let coned = (0..*n)
                .filter(|&i| file.labels.iter().any(|l| l.as_bytes()[2 + i] == b'*'))
                .count();
            let what = format!("a block with {} circle and {coned} coned factors", n - coned);
            simple(&what, 3usize.pow((n - coned) as u32) * 4usize.pow(coned as u32))
        }
        Schema::Global(_) => {
            let mut strata: BTreeMap<Vec<usize>, (usize, BTreeSet<usize>)> = BTreeMap::new();
            for l in &file.labels {
                let g = GlobalVertexLabel::parse(l).expect("schema");
                let e = strata.entry(g.facets().to_vec()).or_default();
                e.0 += 1;
                e.1.insert(g.t().len());
            }
            for (face, (count, lens)) in &strata {
                let ok = lens.len() == 1 && *count == 3usize.pow(*lens.iter().next().unwrap() as u32);
                if !ok {
                    return Some(CheckResult::fail(
                        name,
                        format!("face {face:?} carries {count} vertices with label lengths {lens:?}"),
                        json!({ "face": face, "vertices": count, "t_lengths": lens }),
                    ));
                }
            }
            let table: Vec<_> = strata.iter().map(|(f, (c, _))| json!({ "face": f, "vertices": c })).collect();
            CheckResult::pass(
                name,
                format!("{} faces, each carrying 3^dim vertices; {nv} in total", strata.len()),
                json!({ "vertices": nv, "strata": table }),
            )
        }
        Schema::Plain => return None,
    })
}

/// Runs the selected checks (`None`: every check the labels support).
pub fn verify(file: &ComplexFile, checks: Option<&[Check]>) -> Result<VerificationReport, CliError> {
    let schema = detect_schema(file);
    let k = file.to_complex();
    let explicit = checks.is_some();
    let selected: Vec<Check> = checks.map(|c| c.to_vec()).unwrap_or_else(|| Check::ALL.to_vec());
    let mut report = VerificationReport::default();
    for c in selected {
        let r = match c {
            Check::Complex => check_complex(file, &k),
            Check::Pure => check_pure(&k),
            Check::Pseudomanifold => check_pseudomanifold(&k),
            Check::Links => check_links(&k),
            Check::Equivariance => match label_action(&schema, file) {
                Ok(Some(a)) => check_equivariance(&k, &a),
                Ok(None) if !explicit => continue,
                Ok(None) => {
                    return Err(CliError::Usage(
                        "equivariance needs `t:`, `p:` or `τ:` vertex labels".into(),
                    ))
                }
                Err(m) => return Err(CliError::Parse(m)),
            },
            Check::Counts => match check_counts(&schema, file) {
                Some(r) => r,
                None if !explicit => continue,
                None => return Err(CliError::Usage("counts need structured vertex labels".into())),
            },
        };
        report.checks.push(r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let (f, w) = build(&Target::Cpn(1), None).unwrap();
        assert!(w.is_none());
        assert_eq!((f.labels.len(), f.facets.len()), (5, 6));
        let (f, _) = build(&Target::Torus(2), None).unwrap();
        assert_eq!((f.labels.len(), f.facets.len()), (9, 18));
        assert_eq!(build(&Target::Cpn(0), None).unwrap_err().exit_code(), 2);
        assert_eq!(build(&Target::Cpn(4), None).unwrap_err().exit_code(), 2);
        assert_eq!(build(&Target::Torus(7), None).unwrap_err().exit_code(), 2);
        assert_eq!(build(&Target::Block("sx".into()), None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn max_n_override_warns() {
        let (_, w) = build(&Target::Torus(2), Some(7)).unwrap();
        assert!(w.unwrap().contains("--max-n 7"));
        assert!(build(&Target::Torus(2), Some(1)).is_err());
    }

    #[test]
    fn schemas() {
        let (f, _) = build(&Target::Torus(2), None).unwrap();
        assert_eq!(detect_schema(&f), Schema::Torus(2));
        let (f, _) = build(&Target::Cube(2), None).unwrap();
        assert_eq!(detect_schema(&f), Schema::Grid(2));
        let (f, _) = build(&Target::Block("sz".into()), None).unwrap();
        assert_eq!(detect_schema(&f), Schema::Frame(2));
        let (f, _) = build(&Target::Cpn(1), None).unwrap();
        assert!(matches!(detect_schema(&f), Schema::Global(Some(_))));
    }

    #[test]
    fn shift_keeps_apex() {
        assert_eq!(shift_digit("p:2*1", "p:", 0), "p:0*1");
        assert_eq!(shift_digit("p:2*1", "p:", 1), "p:2*1");
        assert_eq!(shift_digit("t:012", "t:", 2), "t:010");
    }

    #[test]
    fn verify_torus_3() {
        let (f, _) = build(&Target::Torus(3), None).unwrap();
        let r = verify(&f, None).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        let e = r.get("equivariance").unwrap();
        assert_eq!(e.witness["group_elements"], json!(27));
    }

    #[test]
    fn verify_cube_skips_equivariance() {
        let (f, _) = build(&Target::Cube(2), None).unwrap();
        let r = verify(&f, None).unwrap();
        assert!(r.get("equivariance").is_none());
        assert!(r.get("counts").unwrap().passed);
        // the cube has boundary
        assert!(!r.get("pseudomanifold").unwrap().passed);
        assert_eq!(verify(&f, Some(&[Check::Equivariance])).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn deleted_facet_exposes_ridge() {
        let (mut f, _) = build(&Target::Cpn(1), None).unwrap();
        f.facets.remove(0);
        let r = verify(&f, Some(&[Check::Pseudomanifold])).unwrap();
        let c = r.get("pseudomanifold").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness["facets_containing"], json!(1));
    }

    #[test]
    fn verify_block_equivariance() {
        let (f, _) = build(&Target::Block("zc".into()), None).unwrap();
        let r = verify(&f, Some(&[Check::Equivariance, Check::Counts, Check::Complex])).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn homology_table() {
        let (f, _) = build(&Target::Torus(2), None).unwrap();
        let h = homology_of_file(&f);
        assert_eq!(h.betti, vec![1, 2, 1]);
        let t = render_homology(&f, &h, false);
        assert!(t.contains("euler characteristic: 0"));
        assert!(t.contains("f-vector: (9, 27, 18)"));
    }

    #[test]
    fn checks_parse() {
        assert_eq!(parse_checks("all").unwrap(), None);
        assert_eq!(parse_checks("pure,complex").unwrap(), Some(vec![Check::Complex, Check::Pure]));
        assert!(parse_checks("bogus").is_err());
    }
}
