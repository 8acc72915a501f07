//! Batch front end: reads JSON descriptions of groups, G-sets, spans,
//! Mackey functor tables, and permutative categories; runs the
//! corresponding computation or verification suite; prints aligned text,
//! JSON, or CSV.
//!
//! Exit codes: 0 success (and verification passed), 1 verification failure
//! (with a witness per failed axiom), 2 malformed input or a resource cap.
//! Output is deterministic byte-for-byte for a fixed input, format, and
//! seed.

use clap::{Parser, Subcommand, ValueEnum};
use mackey::abelian::AbGroup;
use mackey::burnside::Burnside;
use mackey::functor::{
    burnside_mackey, mackey_iso, mackey_to_categories, pi0_mackey, suspension_categories,
    MackeyFunctor,
};
use mackey::group::{Group, Subgroup};
use mackey::io::{
    GroupInput, GSetJson, KeyJson, MackeyJson, PermCatJson, SpanJson,
};
use mackey::permcat::{
    check_trilinear_eval, composition_bilinear, compose_lax, curry, discrete_permcat,
    eval_bilinear, coherence_catalog, from_lax, hom_permcat, identity_lax, sum_lax, uncurry,
    validate_lax, validate_multilinear, validate_permcat, zero_lax, AxiomFailure, FinCommMonoid,
    FinPermCat, ValidationReport,
};
use mackey::{Caps, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mackey",
    version,
    about = "Burnside rings, span composition, and Mackey functor checks for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to a JSON file, or inline JSON (anything starting with '{', '[' or '"').
    #[arg(long, global = true)]
    input: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override every resource cap with one limit.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Seed for the randomized parts of verification suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Table of marks (fixed-point counts of orbits) and its determinant.
    Marks,
    /// Burnside ring structure constants on the orbit basis.
    BurnsideRing,
    /// Compose two spans by pullback and report the class of the result.
    SpanCompose,
    /// Transitive-span basis of the hom group between two G-sets.
    Basis,
    /// Validate Mackey functor generator tables against all axioms.
    MackeyValidate,
    /// Round-trip a Mackey functor through categories and π₀ and search for
    /// an isomorphism back to the input.
    EmCheck,
    /// Compare the π₀ of the span-category family of a G-set with the
    /// represented Burnside Mackey functor.
    SuspCheck,
    /// Run the permutative-category coherence battery on the built-in
    /// catalog plus any user-supplied categories.
    Coherence,
    /// Double-coset counts |H\G/K| for all pairs of subgroup classes.
    DoubleCosets,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// A finished command: exit code plus everything to print.
struct Outcome {
    code: u8,
    body: String,
}

fn ok(body: String) -> Result<Outcome, Error> {
    Ok(Outcome { code: 0, body })
}

fn fail(body: String) -> Result<Outcome, Error> {
    Ok(Outcome { code: 1, body })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let caps = match cli.cap {
        Some(n) => Caps::uniform(n),
        None => Caps::default(),
    };
    match cli.command {
        Command::Marks => marks(cli, &caps),
        Command::BurnsideRing => burnside_ring(cli, &caps),
        Command::SpanCompose => span_compose(cli, &caps),
        Command::Basis => basis(cli, &caps),
        Command::MackeyValidate => mackey_validate(cli, &caps),
        Command::EmCheck => em_check(cli, &caps),
        Command::SuspCheck => susp_check(cli, &caps),
        Command::Coherence => coherence(cli, &caps),
        Command::DoubleCosets => double_cosets(cli, &caps),
    }
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

fn input_text(cli: &Cli) -> Result<String, Error> {
    let raw = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Invalid("this command needs --input".into()))?;
    let trimmed = raw.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with('"') {
        Ok(raw.clone())
    } else {
        std::fs::read_to_string(raw)
            .map_err(|e| Error::Invalid(format!("cannot read {raw}: {e}")))
    }
}

fn parse_input<T: DeserializeOwned>(cli: &Cli) -> Result<T, Error> {
    let text = input_text(cli)?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("malformed JSON input: {e}")))
}

fn check_group_cap(g: &Group, caps: &Caps) -> Result<(), Error> {
    if g.order() > caps.group_order {
        return Err(Error::CapExceeded {
            cap: "group_order",
            limit: caps.group_order,
            needed: g.order(),
        });
    }
    Ok(())
}

fn load_group(cli: &Cli, caps: &Caps) -> Result<Group, Error> {
    let input: GroupInput = parse_input(cli)?;
    let g = input.to_group()?;
    check_group_cap(&g, caps)?;
    Ok(g)
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

/// Right-aligned table with row and column headers.
fn render_table(corner: &str, cols: &[String], rows: &[String], data: &[Vec<i64>]) -> String {
    let cells: Vec<Vec<String>> = data
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    let mut widths: Vec<usize> = cols.iter().map(|c| c.len()).collect();
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let head_w = rows
        .iter()
        .map(|r| r.len())
        .chain([corner.len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = write!(out, "  {corner:>head_w$}");
    for (c, w) in cols.iter().zip(&widths) {
        let _ = write!(out, "  {c:>w$}");
    }
    out.push('\n');
    for (label, row) in rows.iter().zip(&cells) {
        let _ = write!(out, "  {label:>head_w$}");
        for (cell, w) in row.iter().zip(&widths) {
            let _ = write!(out, "  {cell:>w$}");
        }
        out.push('\n');
    }
    out
}

fn csv_matrix(cols: &[String], rows: &[String], data: &[Vec<i64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ",{}", cols.join(","));
    for (label, row) in rows.iter().zip(data) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{label},{}", cells.join(","));
    }
    out
}

/// Lines "H0 = {(), (1 2)}  (order 2)" for each subgroup class.
fn class_legend(g: &Group) -> String {
    let classes = g.subgroup_classes();
    let mut out = String::new();
    for i in 0..classes.len() {
        let info = classes.class(i);
        let members: Vec<String> = info
            .rep
            .elements()
            .iter()
            .map(|&e| g.elements()[e].to_string())
            .collect();
        let _ = writeln!(
            out,
            "  {} = {{{}}}  (order {})",
            classes.label(i),
            members.join(", "),
            info.rep.order()
        );
    }
    out
}

fn class_labels(g: &Group) -> Vec<String> {
    let classes = g.subgroup_classes();
    (0..classes.len()).map(|i| classes.label(i)).collect()
}

/// "Z^2 + Z/4"-style description of invariant factors.
fn group_desc(v: &AbGroup) -> String {
    let inv = v.invariants();
    let free = inv.iter().filter(|&&d| d == 0).count();
    let mut parts: Vec<String> = inv
        .iter()
        .filter(|&&d| d != 0)
        .map(|d| format!("Z/{d}"))
        .collect();
    match free {
        0 => {}
        1 => parts.push("Z".into()),
        k => parts.push(format!("Z^{k}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn lincomb_str(coeffs: &[i64], labels: &[String]) -> String {
    let mut terms = Vec::new();
    for (c, l) in coeffs.iter().zip(labels) {
        match *c {
            0 => {}
            1 => terms.push(l.clone()),
            -1 => terms.push(format!("-{l}")),
            c => terms.push(format!("{c}{l}")),
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn json_body(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("serializable value");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// marks / double-cosets / burnside-ring
// ---------------------------------------------------------------------------

fn marks(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_group(cli, caps)?;
    let bur = Burnside::new(g.clone());
    let m = bur.table_of_marks();
    let data: Vec<Vec<i64>> = m.to_rows();
    let labels = class_labels(&g);
    let det = bur.marks_determinant();
    match cli.format {
        Format::Json => ok(json_body(json!({
            "classes": labels,
            "matrix": data,
            "determinant": det.to_string(),
        }))),
        Format::Csv => ok(csv_matrix(&labels, &labels, &data)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "group of order {} with {} subgroup classes",
                g.order(),
                labels.len()
            );
            out.push_str(&class_legend(&g));
            let _ = writeln!(out, "table of marks  m[i][j] = |(G/Hi)^Hj|");
            out.push_str(&render_table("", &labels, &labels, &data));
            let _ = writeln!(out, "determinant {det}");
            ok(out)
        }
    }
}

/// Orbit count of H × K acting on G by (h, k)·g = h·g·k; an oracle that
/// never touches the span machinery.
fn double_coset_count(g: &Group, h: &Subgroup, k: &Subgroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &hh in h.elements() {
                let y = g.mul(hh, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
            for &kk in k.elements() {
                let y = g.mul(x, kk);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

fn double_cosets(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_group(cli, caps)?;
    let classes = g.subgroup_classes();
    let labels = class_labels(&g);
    let data: Vec<Vec<i64>> = (0..classes.len())
        .map(|i| {
            (0..classes.len())
                .map(|j| double_coset_count(&g, &classes.class(i).rep, &classes.class(j).rep) as i64)
                .collect()
        })
        .collect();
    match cli.format {
        Format::Json => ok(json_body(json!({
            "classes": labels,
            "counts": data,
        }))),
        Format::Csv => ok(csv_matrix(&labels, &labels, &data)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "double-coset counts  c[i][j] = |Hi\\G/Hj|  for the group of order {}",
                g.order()
            );
            out.push_str(&class_legend(&g));
            out.push_str(&render_table("", &labels, &labels, &data));
            ok(out)
        }
    }
}

fn burnside_ring(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_group(cli, caps)?;
    let bur = Burnside::new(g.clone());
    let labels: Vec<String> = class_labels(&g)
        .iter()
        .map(|l| format!("[G/{l}]"))
        .collect();
    let n = labels.len();
    let mut products: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(bur.ring_product(i, j)?);
        }
        products.push(row);
    }
    match cli.format {
        Format::Json => ok(json_body(json!({
            "basis": labels,
            "products": products,
        }))),
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "i,j,{}", class_labels(&g).join(","));
            for (i, row) in products.iter().enumerate() {
                for (j, coeffs) in row.iter().enumerate() {
                    let cells: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(out, "{i},{j},{}", cells.join(","));
                }
            }
            ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "Burnside ring on {} orbit classes (unit {})",
                n,
                labels[n - 1]
            );
            out.push_str(&class_legend(&g));
            for (i, row) in products.iter().enumerate() {
                for (j, coeffs) in row.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{}·{} = {}",
                        labels[i],
                        labels[j],
                        lincomb_str(coeffs, &labels)
                    );
                }
            }
            ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// basis / span-compose
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct BasisInput {
    a: GSetJson,
    b: GSetJson,
}

fn basis(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let input: BasisInput = parse_input(cli)?;
    let a = input.a.to_gset()?;
    let b = input.b.to_gset()?;
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    check_group_cap(a.group(), caps)?;
    let bur = Burnside::new(a.group().clone());
    let keys = bur.basis(&a, &b);
    let jkeys: Vec<KeyJson> = keys.iter().map(KeyJson::from_key).collect();
    match cli.format {
        Format::Json => ok(json_body(json!({
            "classes": class_labels(a.group()),
            "keys": jkeys,
            "rank": keys.len(),
        }))),
        Format::Csv => {
            let mut out = String::from("L,a,b\n");
            for k in &jkeys {
                let _ = writeln!(out, "{},{},{}", k.l, k.a, k.b);
            }
            ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "transitive span basis for {} points -> {} points over the group of order {}",
                a.len(),
                b.len(),
                a.group().order()
            );
            out.push_str(&class_legend(a.group()));
            for k in &keys {
                let _ = writeln!(out, "  {k}");
            }
            let _ = writeln!(out, "hom group Z^{} (free of rank {})", keys.len(), keys.len());
            ok(out)
        }
    }
}

#[derive(Deserialize)]
struct SpanComposeInput {
    first: SpanJson,
    second: SpanJson,
}

fn span_compose(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let input: SpanComposeInput = parse_input(cli)?;
    let s = input.first.to_span()?;
    let t = input.second.to_span()?;
    check_group_cap(s.apex().group(), caps)?;
    let u = s.then(&t)?;
    let classes = u.apex().group().subgroup_classes();
    let mut keys = u.orbit_keys(&classes);
    keys.sort();
    let jkeys: Vec<KeyJson> = keys.iter().map(KeyJson::from_key).collect();
    match cli.format {
        Format::Json => ok(json_body(json!({
            "span": SpanJson::from_span(&u),
            "class": jkeys,
        }))),
        Format::Csv => {
            let mut out = String::from("L,a,b\n");
            for k in &jkeys {
                let _ = writeln!(out, "{},{},{}", k.l, k.a, k.b);
            }
            ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "composite span: {} points <- {} points -> {} points",
                u.source().len(),
                u.apex().len(),
                u.target().len()
            );
            let _ = writeln!(out, "class ({} transitive components):", keys.len());
            let mut i = 0;
            while i < keys.len() {
                let mut j = i;
                while j < keys.len() && keys[j] == keys[i] {
                    j += 1;
                }
                let _ = writeln!(out, "  {}  x{}", keys[i], j - i);
                i = j;
            }
            ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// mackey-validate / em-check / susp-check
// ---------------------------------------------------------------------------

fn axiom_of(witness: &str) -> &'static str {
    if witness.contains("composition failure") {
        "functoriality"
    } else if witness.contains("not multiplicative") {
        "conjugation-multiplicativity"
    } else if witness.contains("identity") {
        "unit"
    } else {
        "completeness"
    }
}

fn witness_report(cli: &Cli, witnesses: &[String]) -> String {
    match cli.format {
        Format::Json => {
            let failures: Vec<serde_json::Value> = witnesses
                .iter()
                .map(|w| json!({"axiom": axiom_of(w), "witness": w}))
                .collect();
            json_body(json!({"valid": false, "failures": failures}))
        }
        Format::Csv => {
            let mut out = String::from("axiom,witness\n");
            for w in witnesses {
                let _ = writeln!(out, "{},\"{}\"", axiom_of(w), w.replace('"', "\"\""));
            }
            out
        }
        Format::Text => {
            let mut out = format!("invalid: {} axiom failures\n", witnesses.len());
            for w in witnesses {
                let _ = writeln!(out, "  {}: {}", axiom_of(w), w);
            }
            out
        }
    }
}

fn load_functor(cli: &Cli, caps: &Caps) -> Result<std::result::Result<MackeyFunctor, Vec<String>>, Error> {
    let input: MackeyJson = parse_input(cli)?;
    let (group, data) = input.to_parts()?;
    check_group_cap(&group, caps)?;
    match MackeyFunctor::new(&group, data) {
        Ok(m) => Ok(Ok(m)),
        Err(Error::MackeyInvalid(witnesses)) => Ok(Err(witnesses)),
        Err(e) => Err(e),
    }
}

fn level_summaries(m: &MackeyFunctor) -> Vec<String> {
    let classes = m.classes();
    (0..classes.len())
        .map(|i| format!("{}: {}", classes.label(i), group_desc(m.value(i))))
        .collect()
}

fn mackey_validate(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    match load_functor(cli, caps)? {
        Err(witnesses) => fail(witness_report(cli, &witnesses)),
        Ok(m) => {
            let levels = level_summaries(&m);
            match cli.format {
                Format::Json => ok(json_body(json!({
                    "valid": true,
                    "levels": levels,
                }))),
                Format::Csv => {
                    let mut out = String::from("level,value\n");
                    for l in &levels {
                        let (a, b) = l.split_once(": ").unwrap_or((l, ""));
                        let _ = writeln!(out, "{a},{b}");
                    }
                    ok(out)
                }
                Format::Text => {
                    let mut out = String::from("Mackey functor valid\n");
                    for l in &levels {
                        let _ = writeln!(out, "  {l}");
                    }
                    ok(out)
                }
            }
        }
    }
}

fn em_check(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let m = match load_functor(cli, caps)? {
        Err(witnesses) => return fail(witness_report(cli, &witnesses)),
        Ok(m) => m,
    };
    let levels = level_summaries(&m);
    let fam = mackey_to_categories(m, caps)?;
    let out = pi0_mackey(&fam)?;
    let original = fam.as_discrete().expect("discrete family").mackey();
    match mackey_iso(&out, original)? {
        Some(iso) => {
            let matrices: Vec<Vec<Vec<i64>>> =
                iso.iter().map(|h| h.matrix().to_rows()).collect();
            match cli.format {
                Format::Json => ok(json_body(json!({
                    "isomorphism_found": true,
                    "levels": levels,
                    "isomorphism": matrices,
                }))),
                Format::Csv => {
                    let mut body = String::from("level,value\n");
                    for l in &levels {
                        let (a, b) = l.split_once(": ").unwrap_or((l, ""));
                        let _ = writeln!(body, "{a},{b}");
                    }
                    ok(body)
                }
                Format::Text => {
                    let mut body = String::from("π₀ round-trip isomorphism found\n");
                    for (l, mat) in levels.iter().zip(&matrices) {
                        let _ = writeln!(body, "  {l}  psi = {mat:?}");
                    }
                    ok(body)
                }
            }
        }
        None => fail(match cli.format {
            Format::Json => json_body(json!({
                "isomorphism_found": false,
                "levels": levels,
            })),
            _ => {
                let mut body =
                    String::from("verification failed: no π₀ round-trip isomorphism\n");
                for l in &levels {
                    let _ = writeln!(body, "  {l}");
                }
                body
            }
        }),
    }
}

fn susp_check(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let input: GSetJson = parse_input(cli)?;
    let x = input.to_gset()?;
    check_group_cap(x.group(), caps)?;
    let fam = suspension_categories(&x);
    let out = pi0_mackey(&fam)?;
    let represented = burnside_mackey(&x)?;

    let mut mismatches: Vec<String> = Vec::new();
    if out.values() != represented.values() {
        mismatches.push("value presentations differ".into());
    }
    let classes = represented.classes();
    let (od, rd) = (out.data(), represented.data());
    for i in 0..classes.len() {
        let label = classes.label(i);
        for (k, h) in &od.restrictions[i] {
            if !rd.restrictions[i].get(k).is_some_and(|r| h.eq_mod(r)) {
                mismatches.push(format!("restriction table at {label} differs"));
            }
        }
        for (k, h) in &od.transfers[i] {
            if !rd.transfers[i].get(k).is_some_and(|r| h.eq_mod(r)) {
                mismatches.push(format!("transfer table at {label} differs"));
            }
        }
        for (n, h) in &od.conjugations[i] {
            if !rd.conjugations[i].get(n).is_some_and(|r| h.eq_mod(r)) {
                mismatches.push(format!("conjugation table at {label} differs"));
            }
        }
    }
    let iso_found = mismatches.is_empty() && mackey_iso(&out, &represented)?.is_some();
    if !iso_found && mismatches.is_empty() {
        mismatches.push("tables agree but no isomorphism was returned".into());
    }

    let sizes = fam
        .as_representable()
        .expect("representable family")
        .basis_sizes();
    let levels: Vec<String> = (0..classes.len())
        .map(|i| {
            format!(
                "{}: basis size {}, value {}",
                classes.label(i),
                sizes[i],
                group_desc(represented.value(i))
            )
        })
        .collect();

    if mismatches.is_empty() {
        match cli.format {
            Format::Json => ok(json_body(json!({
                "matches_represented_functor": true,
                "levels": levels,
            }))),
            Format::Csv => {
                let mut body = String::from("level,basis_size,value\n");
                for (i, _) in levels.iter().enumerate() {
                    let _ = writeln!(
                        body,
                        "{},{},{}",
                        classes.label(i),
                        sizes[i],
                        group_desc(represented.value(i))
                    );
                }
                ok(body)
            }
            Format::Text => {
                let mut body =
                    String::from("suspension pi0 matches the represented Burnside functor\n");
                for l in &levels {
                    let _ = writeln!(body, "  {l}");
                }
                ok(body)
            }
        }
    } else {
        fail(match cli.format {
            Format::Json => json_body(json!({
                "matches_represented_functor": false,
                "witnesses": mismatches,
            })),
            _ => {
                let mut body = String::from("verification failed\n");
                for w in &mismatches {
                    let _ = writeln!(body, "  {w}");
                }
                body
            }
        })
    }
}

// ---------------------------------------------------------------------------
// coherence
// ---------------------------------------------------------------------------

#[derive(Deserialize, Default)]
struct CoherenceInput {
    #[serde(default)]
    categories: Vec<PermCatJson>,
}

fn coherence(cli: &Cli, caps: &Caps) -> Result<Outcome, Error> {
    let user: CoherenceInput = match cli.input {
        Some(_) => parse_input(cli)?,
        None => CoherenceInput::default(),
    };
    let mut cats: Vec<(String, FinPermCat)> = coherence_catalog(caps)?;
    for (i, j) in user.categories.iter().enumerate() {
        cats.push((format!("user[{i}]"), j.to_permcat()?));
    }

    let mut log: Vec<(String, ValidationReport)> = Vec::new();
    for (name, cat) in &cats {
        log.push((format!("permcat axioms: {name}"), validate_permcat(cat)));
        log.push((
            format!("identity lax functor: {name}"),
            validate_lax(&identity_lax(cat)),
        ));
        log.push((
            format!("zero lax functor: {name}"),
            validate_lax(&zero_lax(cat, cat)),
        ));
        log.push((
            format!("identity as one-slot multilinear: {name}"),
            validate_multilinear(&from_lax(&identity_lax(cat))),
        ));
    }

    let one = discrete_permcat(&FinCommMonoid::trivial());
    let d2 = discrete_permcat(&FinCommMonoid::cyclic(2));
    let gm22 = cats
        .iter()
        .find(|(n, _)| n == "group-morphism(Z/2, Z/2)")
        .map(|(_, c)| c.clone())
        .expect("catalog contains group-morphism(Z/2, Z/2)");

    for (name, a, b) in [
        ("hom(1, gm22)", &one, &gm22),
        ("hom(d2, d2)", &d2, &d2),
        ("hom(gm22, gm22)", &gm22, &gm22),
    ] {
        let hom = hom_permcat(a, b, caps)?;
        log.push((
            format!("hom category axioms: {name}"),
            validate_permcat(&hom.cat),
        ));
        log.push((
            format!("evaluation is bilinear: {name}"),
            validate_multilinear(&eval_bilinear(&hom)),
        ));
    }

    for (name, c) in [("d2", &d2), ("gm22", &gm22)] {
        let hom = hom_permcat(c, c, caps)?;
        log.push((
            format!("composition pairing is bilinear: endos of {name}"),
            validate_multilinear(&composition_bilinear(&hom, &hom, &hom)?),
        ));
        let ev = eval_bilinear(&hom);
        let curried = curry(&ev, &hom)?;
        let mut report = ValidationReport::default();
        if curried != identity_lax(&hom.cat) {
            report.failures.push(AxiomFailure {
                axiom: "curry of evaluation".into(),
                witness: format!("currying evaluation over {name} is not the identity"),
            });
        }
        if uncurry(&curried, &hom)? != ev {
            report.failures.push(AxiomFailure {
                axiom: "uncurry round trip".into(),
                witness: format!("uncurrying over {name} does not recover evaluation"),
            });
        }
        log.push((format!("curry/uncurry round trip: {name}"), report));
    }

    for (name, a, b, c) in [
        ("(1, 1, 1)", &one, &one, &one),
        ("(d2, d2, d2)", &d2, &d2, &d2),
        ("(gm22, gm22, gm22)", &gm22, &gm22, &gm22),
    ] {
        log.push((
            format!("trilinear evaluation routes agree: {name}"),
            check_trilinear_eval(a, b, c, caps)?,
        ));
    }

    // Seeded random probes: composites and sums of enumerated endofunctors
    // stay coherent.
    let hom = hom_permcat(&gm22, &gm22, caps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut probes = ValidationReport::default();
    for _ in 0..16 {
        let f = &hom.functors[rng.gen_range(0..hom.functors.len())];
        let g = &hom.functors[rng.gen_range(0..hom.functors.len())];
        let composite = compose_lax(g, f)?;
        for failure in validate_lax(&composite).failures {
            probes.failures.push(AxiomFailure {
                axiom: format!("random composite {}", failure.axiom),
                witness: failure.witness,
            });
        }
        let sum = sum_lax(f, g)?;
        for failure in validate_lax(&sum).failures {
            probes.failures.push(AxiomFailure {
                axiom: format!("random sum {}", failure.axiom),
                witness: failure.witness,
            });
        }
    }
    log.push((
        format!("random composites and sums stay lax (seed {})", cli.seed),
        probes,
    ));

    let failed: Vec<(&String, &ValidationReport)> = log
        .iter()
        .filter(|(_, r)| !r.is_valid())
        .map(|(n, r)| (n, r))
        .collect();
    match cli.format {
        Format::Json => {
            let checks: Vec<serde_json::Value> = log
                .iter()
                .map(|(n, r)| {
                    json!({
                        "check": n,
                        "failures": r.failures.iter().map(|f| json!({
                            "axiom": f.axiom,
                            "witness": f.witness,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let body = json_body(json!({
                "passed": failed.is_empty(),
                "checks": checks,
            }));
            if failed.is_empty() {
                ok(body)
            } else {
                fail(body)
            }
        }
        Format::Csv => {
            let mut body = String::from("check,status,axiom,witness\n");
            for (n, r) in &log {
                if r.is_valid() {
                    let _ = writeln!(body, "\"{n}\",ok,,");
                } else {
                    for f in &r.failures {
                        let _ = writeln!(
                            body,
                            "\"{n}\",fail,\"{}\",\"{}\"",
                            f.axiom.replace('"', "\"\""),
                            f.witness.replace('"', "\"\"")
                        );
                    }
                }
            }
            if failed.is_empty() {
                ok(body)
            } else {
                fail(body)
            }
        }
        Format::Text => {
            let mut body = String::new();
            for (n, r) in &log {
                if r.is_valid() {
                    let _ = writeln!(body, "ok   {n}");
                } else {
                    for f in &r.failures {
                        let _ = writeln!(body, "FAIL {n}: {}: {}", f.axiom, f.witness);
                    }
                }
            }
            let _ = writeln!(
                body,
                "{} checks, {} failed",
                log.len(),
                failed.len()
            );
            if failed.is_empty() {
                ok(body)
            } else {
                fail(body)
            }
        }
    }
}
