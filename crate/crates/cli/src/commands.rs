//! The subcommands, each rendering a text or JSON report.

use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use comhnn::amalgam::{build_amalgam, find_reflections, verify_embedding, ReflectionWitness};
use comhnn::autbound::{
    boundary_points, check_fellow_traveller, cycle_label_generators, generated_index,
    shortlex_structure, simple_boundary_sequences, GeneratedIndex, LabeledFsa,
};
use comhnn::catalog::{g_km, g_p, g_p_prime};
use comhnn::criteria::invariant_form;
use comhnn::hnn::{euclidean_translation_length_sq, normalize, tree_translation_length};
use comhnn::witness::{nonhopf_endomorphism_witness, wise_witness};
use comhnn::{analyze, GroupSpec, MatrixOrder, NonHopfVerdict, RatMatrix};

use crate::files::{integer_json, rational_json, FsaFile, GroupFile};

pub const SCHEMA: u32 = 1;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn format_vector<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_json).collect()))
            .collect(),
    )
}

fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(integer_json).collect())
}

fn columns_json(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn transcript_text(out: &mut String, transcript: &[(String, bool)]) {
    for (claim, ok) in transcript {
        let _ = writeln!(out, "  [{}] {claim}", if *ok { "ok" } else { "FAIL" });
    }
}

fn transcript_json(transcript: &[(String, bool)]) -> Value {
    Value::Array(
        transcript
            .iter()
            .map(|(claim, ok)| json!({"claim": claim, "ok": ok}))
            .collect(),
    )
}

pub fn analyze_report(spec: &GroupSpec, as_json: bool) -> Result<String> {
    let r = analyze(spec)?;
    let form = if r.cat0 { invariant_form(spec.matrix()).ok() } else { None };
    if as_json {
        let order = match r.order {
            MatrixOrder::Finite(d) => json!(d),
            MatrixOrder::Infinite => json!("infinite"),
        };
        let nonhopf = match &r.nonhopf {
            NonHopfVerdict::Holds { m, k } => json!({"verdict": "holds", "m": integer_json(m), "k": integer_json(k)}),
            NonHopfVerdict::Fails => json!({"verdict": "fails"}),
            NonHopfVerdict::Inapplicable(why) => json!({"verdict": "inapplicable", "reason": why}),
        };
        let value = json!({
            "schema": SCHEMA,
            "n": r.n,
            "A": matrix_json(spec.matrix()),
            "Lprime": columns_json(&spec.lprime().basis_vectors()),
            "Lsecond": columns_json(&spec.lsecond().basis_vectors()),
            "det": rational_json(&r.det),
            "trace": rational_json(&r.trace),
            "char_poly": r.char_poly.to_string(),
            "index_Lprime": integer_json(&r.index_lprime),
            "index_Lsecond": integer_json(&r.index_lsecond),
            "ascending": r.is_ascending,
            "cat0": r.cat0,
            "order": order,
            "biautomatic": r.biautomatic,
            "virtually_biautomatic": r.virtually_biautomatic,
            "residually_finite": r.residually_finite,
            "linear_over_q": r.linear_over_q,
            "nonhopf": nonhopf,
            "nonhopf_applies": r.nonhopf_applies,
            "invariant_form": form.as_ref().map(matrix_json),
            "qi_class": r.qi_class,
        });
        return Ok(render(&value));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", r.n);
    let _ = writeln!(out, "A: {}", spec.matrix());
    let lp: Vec<String> = spec.lprime().basis_vectors().iter().map(|v| format_vector(v)).collect();
    let ls: Vec<String> = spec.lsecond().basis_vectors().iter().map(|v| format_vector(v)).collect();
    let _ = writeln!(out, "L': <{}>, index {}", lp.join(", "), r.index_lprime);
    let _ = writeln!(out, "L'': <{}>, index {}", ls.join(", "), r.index_lsecond);
    let _ = writeln!(out, "det(A): {}", r.det);
    let _ = writeln!(out, "tr(A): {}", r.trace);
    let _ = writeln!(out, "characteristic polynomial: {}", r.char_poly);
    let _ = writeln!(out, "ascending: {}", yes_no(r.is_ascending));
    let _ = writeln!(out, "CAT(0): {}", yes_no(r.cat0));
    match r.order {
        MatrixOrder::Finite(d) => {
            let _ = writeln!(out, "order of A: {d}");
        }
        MatrixOrder::Infinite => out.push_str("order of A: infinite\n"),
    }
    let _ = writeln!(out, "biautomatic: {}", yes_no(r.biautomatic));
    let _ = writeln!(out, "virtually biautomatic: {}", yes_no(r.virtually_biautomatic));
    let _ = writeln!(out, "residually finite: {}", yes_no(r.residually_finite));
    let _ = writeln!(out, "linear over Q: {}", yes_no(r.linear_over_q));
    match &r.nonhopf {
        NonHopfVerdict::Holds { m, k } => {
            let _ = writeln!(out, "non-Hopf criterion: holds (m = {m}, k = {k})");
        }
        NonHopfVerdict::Fails => out.push_str("non-Hopf criterion: fails\n"),
        NonHopfVerdict::Inapplicable(why) => {
            let _ = writeln!(out, "non-Hopf criterion: inapplicable ({why})");
        }
    }
    let _ = writeln!(out, "non-Hopf endomorphism available: {}", yes_no(r.nonhopf_applies));
    match &form {
        Some(g) => {
            let _ = writeln!(out, "invariant form: {g}");
        }
        None => out.push_str("invariant form: none\n"),
    }
    let _ = writeln!(out, "quasi-isometry class: {}", r.qi_class.as_deref().unwrap_or("unknown"));
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct WordOptions {
    pub form: bool,
    pub tree_length: bool,
    pub euclid_sq: bool,
}

pub fn word_report(spec: &GroupSpec, text: &str, opts: WordOptions, as_json: bool) -> Result<String> {
    let w = spec.parse_word(text)?;
    let nf = normalize(spec, &w);
    let form = spec.format_word(&nf.to_word());
    let tree = opts.tree_length.then(|| tree_translation_length(spec, &w));
    let euclid = if opts.euclid_sq {
        let g = invariant_form(spec.matrix()).context("the Euclidean translation length needs a CAT(0) group")?;
        Some(euclidean_translation_length_sq(spec, &w, &g)?)
    } else {
        None
    };
    if as_json {
        let mut value = json!({"schema": SCHEMA, "word": spec.format_word(&w), "identity": nf.is_identity()});
        if opts.form {
            value["normal_form"] = json!(form);
            value["stable_letters"] = json!(nf.t_count());
        }
        if let Some(t) = tree {
            value["tree_length"] = json!(t);
        }
        if let Some(e) = &euclid {
            value["euclid_sq"] = rational_json(e);
        }
        return Ok(render(&value));
    }
    let mut out = format!("identity: {}\n", yes_no(nf.is_identity()));
    if opts.form {
        let shown = if form.is_empty() { "1" } else { form.as_str() };
        let _ = writeln!(out, "normal form: {shown}");
        let _ = writeln!(out, "stable letters: {}", nf.t_count());
    }
    if let Some(t) = tree {
        let _ = writeln!(out, "tree translation length: {t}");
    }
    if let Some(e) = euclid {
        let _ = writeln!(out, "squared Euclidean translation length: {e}");
    }
    Ok(out)
}

pub fn nonhopf_report(spec: &GroupSpec, as_json: bool) -> Result<String> {
    let cert = nonhopf_endomorphism_witness(spec)?;
    if as_json {
        return Ok(render(&json!({
            "schema": SCHEMA,
            "m": integer_json(&cert.m),
            "k": integer_json(&cert.k),
            "det": integer_json(&cert.l),
            "c": vector_json(&cert.c),
            "d": vector_json(&cert.d),
            "kernel_word": spec.format_word(&cert.kernel_word),
            "transcript": transcript_json(&cert.transcript),
        })));
    }
    let mut out = String::new();
    let names = spec.names().join(", ");
    let _ = writeln!(out, "phi: {names} -> m-th powers, {} fixed, m = {}", spec.stable_name(), cert.m);
    let _ = writeln!(out, "k = m tr(A) = {}, det(mA) = {}", cert.k, cert.l);
    let _ = writeln!(out, "c = {}, d = {}", format_vector(&cert.c), format_vector(&cert.d));
    let _ = writeln!(out, "nontrivial kernel element: {}", spec.format_word(&cert.kernel_word));
    out.push_str("checks:\n");
    transcript_text(&mut out, &cert.transcript);
    Ok(out)
}

pub fn wise_report(spec: &GroupSpec, n: u32, as_json: bool) -> Result<String> {
    let cert = wise_witness(spec, n)?;
    if as_json {
        return Ok(render(&json!({
            "schema": SCHEMA,
            "n": cert.n,
            "m": integer_json(&cert.m),
            "h": vector_json(&cert.h),
            "index": integer_json(&cert.index),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, m = [Z^2 : L'] = {}", cert.n, cert.m);
    let _ = writeln!(out, "h = A^n (n m^n e1) = {}", format_vector(&cert.h));
    let _ = writeln!(out, "index of <n e1, h> in Z^2: {}", cert.index);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Nonsplit,
}

fn witness_line(w: &ReflectionWitness) -> String {
    let kind = |t: Option<comhnn::amalgam::InvolutionType>| t.map_or("-".to_string(), |t| t.to_string());
    format!("R = {}, R' = RA = {}, types {} / {}", w.r, w.r_prime, kind(w.type_r), kind(w.type_r_prime))
}

pub fn amalgam_report(
    spec: &GroupSpec,
    bound: u32,
    splitting: Splitting,
    verify: bool,
    as_json: bool,
) -> Result<String> {
    let witnesses = find_reflections(spec, bound);
    if witnesses.is_empty() {
        bail!("no reflection R with entries in [-{bound}, {bound}] satisfies R^2 = I, RAR = A^-1, R L' = L''");
    }
    let split = splitting == Splitting::Split;
    let mut last_error = None;
    let mut chosen = None;
    for w in &witnesses {
        match build_amalgam(spec, w, split, split) {
            Ok(k) => {
                chosen = Some(k);
                break;
            }
            Err(e) => last_error = Some(e),
        }
    }
    let Some(k) = chosen else {
        let e = last_error.expect("at least one witness");
        bail!("no witness admits the requested extension: {e}");
    };
    let transcript = if verify { Some(verify_embedding(&k)?) } else { None };
    if let Some(t) = &transcript {
        if let Some((claim, _)) = t.iter().find(|(_, ok)| !ok) {
            bail!("verification failed: {claim}");
        }
    }
    let overgroup = |o: Option<comhnn::amalgam::OvergroupType>| o.map(|o| o.to_string());
    if as_json {
        let mut value = json!({
            "schema": SCHEMA,
            "witnesses": witnesses.iter().map(witness_line).collect::<Vec<_>>(),
            "R": matrix_json(&k.witness.r.to_rational()),
            "split": split,
            "H": overgroup(k.overgroup_h),
            "H_prime": overgroup(k.overgroup_h_prime),
            "generators": k.generator_names(),
            "relators": k.relators().iter().map(|r| k.format_word(r)).collect::<Vec<_>>(),
        });
        if let Some(t) = &transcript {
            value["transcript"] = transcript_json(t);
        }
        return Ok(render(&value));
    }
    let mut out = String::new();
    let _ = writeln!(out, "reflection witnesses with entries in [-{bound}, {bound}]:");
    for w in &witnesses {
        let _ = writeln!(out, "  {}", witness_line(w));
    }
    let _ = writeln!(out, "using R = {} ({} extensions)", k.witness.r, if split { "split" } else { "nonsplit" });
    let name = |o: Option<String>| o.unwrap_or_else(|| "index two overgroup".to_string());
    let _ = writeln!(out, "H = {}", name(overgroup(k.overgroup_h)));
    let _ = writeln!(out, "H' = {}", name(overgroup(k.overgroup_h_prime)));
    out.push_str(&k.presentation_text());
    if let Some(t) = &transcript {
        out.push_str("checks:\n");
        transcript_text(&mut out, t);
    }
    Ok(out)
}

pub fn boundary_report(fsa: &LabeledFsa, sequences: bool, as_json: bool) -> Result<String> {
    let points = boundary_points(fsa)?;
    let generators = cycle_label_generators(fsa)?;
    let index = match generated_index(&generators, fsa.rank()) {
        GeneratedIndex::Finite(i) => Some(i),
        GeneratedIndex::Infinite => None,
    };
    let seqs = if sequences { Some(simple_boundary_sequences(fsa)?) } else { None };
    if as_json {
        let mut value = json!({
            "schema": SCHEMA,
            "points": points.iter().collect::<Vec<_>>(),
            "cycle_index": index.as_ref().map(integer_json),
        });
        if let Some(seqs) = &seqs {
            value["sequences"] = Value::Array(
                seqs.iter()
                    .map(|s| {
                        json!({
                            "S": fsa.format_word(&s.s),
                            "W": fsa.format_word(&s.w),
                            "T": fsa.format_word(&s.t),
                            "base": s.base,
                            "direction": s.direction,
                        })
                    })
                    .collect(),
            );
        }
        return Ok(render(&value));
    }
    let mut out = format!("boundary points: {}\n", points.len());
    for p in &points {
        let _ = writeln!(out, "  {}", format_vector(p));
    }
    match index {
        Some(i) => {
            let _ = writeln!(out, "cycle labels generate a subgroup of index {i}");
        }
        None => out.push_str("cycle labels generate a subgroup of infinite index\n"),
    }
    if let Some(seqs) = seqs {
        let _ = writeln!(out, "simple boundary sequences: {}", seqs.len());
        let show = |w: &[usize]| if w.is_empty() { "1".to_string() } else { fsa.format_word(w) };
        for s in &seqs {
            let _ = writeln!(
                out,
                "  S = {}, W = {}, T = {} -> {}",
                show(&s.s),
                show(&s.w),
                show(&s.t),
                format_vector(&s.direction)
            );
        }
    }
    Ok(out)
}

pub fn fellow_report(fsa: &LabeledFsa, maxlen: usize, two_sided: bool, as_json: bool) -> Result<String> {
    let report = check_fellow_traveller(fsa, maxlen, two_sided);
    let show = |w: &[usize]| if w.is_empty() { "1".to_string() } else { fsa.format_word(w) };
    if as_json {
        let worst = report.worst.as_ref().map(|p| {
            json!({"p": fsa.format_word(&p.p), "q": fsa.format_word(&p.q), "offset": p.offset.map(|o| fsa.alphabet()[o].name.clone()), "distance": p.distance})
        });
        return Ok(render(&json!({
            "schema": SCHEMA,
            "maxlen": maxlen,
            "two_sided": two_sided,
            "zeta": report.zeta,
            "pairs": report.pairs,
            "worst": worst,
        })));
    }
    let mut out = String::new();
    let kind = if two_sided { "two-sided" } else { "one-sided" };
    let _ = writeln!(out, "{kind} fellow traveller constant up to length {maxlen}: {}", report.zeta);
    let _ = writeln!(out, "pairs checked: {}", report.pairs);
    if let Some(p) = &report.worst {
        let offset = p.offset.map_or(String::new(), |o| format!(" read from {}", fsa.alphabet()[o].name));
        let _ = writeln!(out, "attained by {} and {}{offset}", show(&p.p), show(&p.q));
    }
    Ok(out)
}

/// Writes the example files and returns their names.
pub fn write_examples(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let files = [
        ("gp.json", GroupFile::from_spec(&g_p()).to_json()),
        ("gpprime.json", GroupFile::from_spec(&g_p_prime()).to_json()),
        ("gkm.json", GroupFile::from_spec(&g_km(1, 2)).to_json()),
        ("shortlex2.json", FsaFile::from_fsa(&shortlex_structure(2)).to_json()),
    ];
    let mut names = Vec::new();
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        names.push(name.to_string());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use comhnn::catalog::g_km;

    #[test]
    fn analyze_text() {
        let out = analyze_report(&g_p(), false).unwrap();
        for line in ["CAT(0): yes", "biautomatic: no", "residually finite: no", "non-Hopf criterion: holds (m = 5, k = 6)"] {
            assert!(out.contains(line), "{out}");
        }
        let out = analyze_report(&g_km(4, 2), false).unwrap();
        assert!(out.contains("CAT(0): no\n") && out.contains("invariant form: none"));
    }

    #[test]
    fn analyze_json() {
        let v: Value = serde_json::from_str(&analyze_report(&g_p_prime(), true).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["A"][0][1], "-4/5");
        assert_eq!(v["nonhopf"]["m"], 5);
        assert_eq!(v["nonhopf_applies"], false);
        assert_eq!(v["Lprime"], json!([[5, 0], [0, 5]]));
    }

    #[test]
    fn word_problem() {
        let gp = g_p();
        let opts = WordOptions { form: true, tree_length: true, euclid_sq: true };
        let out = word_report(&gp, "t a^2 b^-1 t^-1 b^-1 a^-2", opts, false).unwrap();
        assert!(out.starts_with("identity: yes\n") && out.contains("normal form: 1"), "{out}");
        let out = word_report(&gp, "t a", opts, false).unwrap();
        assert!(out.contains("identity: no") && out.contains("tree translation length: 1"));
        assert!(word_report(&g_km(4, 2), "a", opts, false).is_err());
        assert!(word_report(&gp, "a ^", WordOptions::default(), false).is_err());
    }

    #[test]
    fn witnesses() {
        let out = nonhopf_report(&g_p(), false).unwrap();
        assert!(out.contains("t a t^-1 a t a^-1 t^-1 a^-1") && !out.contains("FAIL"));
        assert!(nonhopf_report(&g_p_prime(), false).is_err());
        let out = wise_report(&g_p(), 1, true).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["m"], 5);
    }

    #[test]
    fn amalgams() {
        let out = amalgam_report(&g_p(), 1, Splitting::Split, true, false).unwrap();
        assert!(out.contains("generators:") && !out.contains("FAIL"), "{out}");
        assert!(amalgam_report(&g_km(4, 2), 0, Splitting::Split, false, false).is_err());
    }

    #[test]
    fn automata() {
        let fsa = shortlex_structure(2);
        let out = boundary_report(&fsa, true, false).unwrap();
        assert!(out.starts_with("boundary points: 4\n"), "{out}");
        let v: Value = serde_json::from_str(&fellow_report(&fsa, 6, true, true).unwrap()).unwrap();
        assert_eq!(v["zeta"], 3);
    }
}
