use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use daisylab::bounds::{
    btower, check_bt_dominates_t, inverse_probability, lemma_sides, lll_condition, lll_threshold,
    parse_rational, tower, FixedPoint, TowerValue,
};
use daisylab::coloring::{random_coloring, read_coloring, write_coloring, RNG_ALGORITHM};
use daisylab::construct::{
    block_sum_coloring, complement_transform, kernel_pinning, middle_window_coloring,
    parity_superdaisy_coloring, prefix_vector_coloring, size_parity_coloring,
};
use daisylab::search::{
    daisy_event_count, exact_ramsey, moser_tardos, Budget, ExactOptions, Proof, RamseyQuery,
    ResampleOutcome, Variant, Verdict,
};
use daisylab::shift::{
    build_shift_graph, chromatic_number_exact, lattice_path_coloring, longest_mono_dipath,
};
use daisylab::verify::{find_level_homogeneous_with, find_mono_daisy, verify_witness};
use daisylab::{Coloring, ColoringHeader, DaisySpec, Digraph, Error, PathLength, RngInfo};
use serde_json::{json, Map, Value};

use crate::args::{
    BoundsCommand, Command, ConstructArgs, ConstructKind, ExactArgs, LllSearchArgs, ShiftCommand,
    VerifyArgs,
};
use crate::report::{contract, CliError};

type Result<T> = std::result::Result<T, CliError>;

/// Decimal expansions are printed up to this many bits.
const DECIMAL_BITS: u64 = 4096;

pub struct Outcome {
    pub result: Value,
    pub rng: Option<RngInfo>,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome { result, rng: None }
    }
}

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify(_) => "verify",
        Command::Construct(_) => "construct",
        Command::Search(crate::args::SearchCommand::Exact(_)) => "search exact",
        Command::Search(crate::args::SearchCommand::Lll(_)) => "search lll",
        Command::Shift(ShiftCommand::Build { .. }) => "shift build",
        Command::Shift(ShiftCommand::Chi { .. }) => "shift chi",
        Command::Shift(ShiftCommand::Fact2 { .. }) => "shift fact2",
        Command::Bounds(BoundsCommand::Lll { .. }) => "bounds lll",
        Command::Bounds(BoundsCommand::Tower { .. }) => "bounds tower",
        Command::Bounds(BoundsCommand::Lemma { .. }) => "bounds lemma",
    }
}

pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    use crate::args::SearchCommand;
    match cmd {
        Command::Verify(a) => verify(a),
        Command::Construct(a) => construct(a),
        Command::Search(SearchCommand::Exact(a)) => search_exact(a),
        Command::Search(SearchCommand::Lll(a)) => search_lll(a),
        Command::Shift(s) => shift(s),
        Command::Bounds(b) => bounds(b),
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let c = read_coloring(&a.coloring)?;
    let spec = DaisySpec::new(a.r, a.m, a.kernel)?;
    let w = if a.superdaisy {
        find_level_homogeneous_with(&c, &spec)?
    } else {
        find_mono_daisy(&c, &spec)?
    };
    let mut out = Map::new();
    out.insert("found".into(), json!(w.is_some()));
    if let Some(w) = w {
        if !verify_witness(&c, &spec, &w) {
            return Err(Error::Internal("finder witness failed replay".into()).into());
        }
        out.insert("witness".into(), json!(w));
    }
    Ok(Value::Object(out).into())
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: ConstructKind) -> Result<T> {
    v.ok_or_else(|| contract(format!("{flag} is required for {}", kind_name(kind))))
}

fn kind_name(kind: ConstructKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn construct(a: &ConstructArgs) -> Result<Outcome> {
    let kind = a.kind;
    let input = || -> Result<Coloring> {
        let path = a
            .input
            .as_ref()
            .ok_or_else(|| contract(format!("--in is required for {}", kind_name(kind))))?;
        let c = read_coloring(path)?;
        if let Some(ell) = a.ell {
            if ell != c.colors() {
                return Err(contract(format!(
                    "--ell {ell} but the input has {} colors",
                    c.colors()
                )));
            }
        }
        Ok(c)
    };
    // r is implied by a uniform base; a given --r must agree with it
    let uniform_input = || -> Result<Coloring> {
        let c = input()?;
        if let (Some(r), Some(u)) = (a.r, c.uniformity()) {
            if r != u {
                return Err(contract(format!("--r {r} but the input colors {u}-sets")));
            }
        }
        Ok(c)
    };
    let mut rng = None;
    let out = match kind {
        ConstructKind::Complement => complement_transform(&input()?)?,
        ConstructKind::ParitySuperdaisy => parity_superdaisy_coloring(&uniform_input()?)?,
        ConstructKind::PrefixVector => prefix_vector_coloring(&input()?, need(a.r, "--r", kind)?)?,
        ConstructKind::BlockSum => block_sum_coloring(&uniform_input()?)?,
        ConstructKind::MiddleWindow => {
            middle_window_coloring(&input()?, need(a.k, "--k", kind)?, need(a.r, "--r", kind)?)?
        }
        ConstructKind::KernelPin => kernel_pinning(&input()?, need(a.k, "--k", kind)?)?,
        ConstructKind::SizeParity => size_parity_coloring(need(a.n, "--n", kind)?)?,
        ConstructKind::Random => {
            let n = need(a.n, "--n", kind)?;
            let ell = need(a.ell, "--ell", kind)?;
            let seed = need(a.seed, "--seed", kind)?;
            let header = match a.uniformity {
                Some(u) => ColoringHeader::uniform(n, u, ell),
                None => ColoringHeader::power(n, ell),
            };
            let c = random_coloring(&header.with_product(a.product), seed)?;
            rng = c.rng().cloned();
            c
        }
    };
    write_coloring(&a.out, &out)?;
    Ok(Outcome {
        result: json!({
            "kind": kind,
            "out": a.out,
            "header": out.header(),
            "entries": out.len(),
        }),
        rng,
    })
}

fn certificate_path(dir: &Path, a: &ExactArgs, n: u32) -> std::path::PathBuf {
    let variant = if a.superdaisy { "superdaisy" } else { "daisy" };
    dir.join(format!(
        "{variant}-r{}-m{}-l{}-{}-n{n}.coloring",
        a.r, a.m, a.ell, a.kernel
    ))
}

fn search_exact(a: &ExactArgs) -> Result<Outcome> {
    let spec = DaisySpec::new(a.r, a.m, a.kernel)?;
    let variant = if a.superdaisy {
        Variant::Superdaisy
    } else {
        Variant::Daisy
    };
    if a.n_min > a.n_max {
        return Err(contract(format!(
            "--n-min {} exceeds --n-max {}",
            a.n_min, a.n_max
        )));
    }
    let q = RamseyQuery::new(spec, a.ell, variant, a.n_min..=a.n_max)?;
    let mut opts = ExactOptions::default();
    if let Some(t) = a.threads {
        if t == 0 {
            return Err(contract("--threads must be positive"));
        }
        opts.threads = t;
    }
    if let Some(s) = a.budget {
        if !(s.is_finite() && s > 0.0) {
            return Err(contract("--budget must be a positive number of seconds"));
        }
        opts.budget = Budget::seconds(s);
    }
    if let Some(dir) = &a.certificates {
        fs::create_dir_all(dir).map_err(Error::Io)?;
    }
    let outcome = exact_ramsey(&q, &opts)?;
    let mut per_n = Vec::new();
    for g in &outcome.per_n {
        let entry = match &g.verdict {
            Verdict::Avoidable { certificate, nodes } => {
                let mut e = json!({ "n": g.n, "verdict": "avoidable", "nodes": nodes });
                if let Some(dir) = &a.certificates {
                    let path = certificate_path(dir, a, g.n);
                    write_coloring(&path, certificate)?;
                    e["certificate"] = json!(path);
                }
                e
            }
            Verdict::Unavoidable(Proof::Exhaustion { nodes }) => {
                json!({ "n": g.n, "verdict": "unavoidable", "proof": "exhaustion", "nodes": nodes })
            }
            Verdict::Unavoidable(Proof::Monotone { from }) => {
                json!({ "n": g.n, "verdict": "unavoidable", "proof": "monotone", "from": from })
            }
            Verdict::Unknown { nodes } => json!({ "n": g.n, "verdict": "unknown", "nodes": nodes }),
        };
        per_n.push(entry);
    }
    Ok(json!({ "value": outcome.value, "threads": opts.threads, "perN": per_n }).into())
}

fn search_lll(a: &LllSearchArgs) -> Result<Outcome> {
    let events = daisy_event_count(a.m, a.n);
    let max_rounds = a.max_rounds.unwrap_or(events.saturating_mul(10));
    let outcome = moser_tardos(a.r, a.m, a.ell, a.n, a.seed, max_rounds)?;
    let mut result = json!({
        "success": outcome.is_success(),
        "rounds": outcome.rounds(),
        "maxRounds": max_rounds,
        "events": events,
    });
    if let ResampleOutcome::Success { coloring, .. } = &outcome {
        let clean = find_mono_daisy(coloring, &DaisySpec::any(a.r, a.m)?)?.is_none();
        if !clean {
            return Err(
                Error::Internal("resampled coloring has a monochromatic daisy".into()).into(),
            );
        }
        result["verified"] = json!(true);
        if let Some(path) = &a.out {
            write_coloring(path, coloring)?;
            result["out"] = json!(path);
        }
    }
    Ok(Outcome {
        result,
        rng: Some(RngInfo {
            algorithm: RNG_ALGORITHM.to_string(),
            seed: a.seed,
        }),
    })
}

fn read_graph(path: &Path) -> Result<Digraph> {
    let file = File::open(path).map_err(Error::Io)?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}

fn shift(cmd: &ShiftCommand) -> Result<Outcome> {
    match cmd {
        ShiftCommand::Build { n, r, out } => {
            let g = build_shift_graph(*n, *r)?;
            let mut w = BufWriter::new(File::create(out).map_err(Error::Io)?);
            serde_json::to_writer(&mut w, &g)?;
            w.write_all(b"\n")
                .and_then(|_| w.flush())
                .map_err(Error::Io)?;
            Ok(
                json!({ "vertexCount": g.vertex_count(), "arcCount": g.arc_count(), "out": out })
                    .into(),
            )
        }
        ShiftCommand::Chi { input } => {
            let g = read_graph(input)?;
            let (chi, coloring) = chromatic_number_exact(&g)?;
            Ok(json!({ "chromaticNumber": chi, "coloring": coloring }).into())
        }
        ShiftCommand::Fact2 { input, t, d } => {
            if *t < 2 || *d < 1 {
                return Err(contract("need t >= 2 and d >= 1"));
            }
            let g = read_graph(input)?;
            let (chi, vc) = chromatic_number_exact(&g)?;
            let classes = (*t as u64 - 1).checked_pow(*d).unwrap_or(u64::MAX);
            if chi as u64 > classes {
                return Err(contract(format!(
                    "chromatic number {chi} exceeds (t-1)^d = {classes}"
                )));
            }
            let ac = lattice_path_coloring(&g, &vc, *t, *d)?;
            let longest = longest_mono_dipath(&g, &ac)?;
            let holds = longest
                .iter()
                .all(|l| matches!(l, PathLength::Finite(v) if *v < *t as u64));
            Ok(json!({
                "chromaticNumber": chi,
                "latticePoints": classes,
                "arcColors": ac.color_count,
                "longestPerColor": longest,
                "holds": holds,
            })
            .into())
        }
    }
}

fn tower_json(v: &TowerValue) -> Value {
    match v {
        TowerValue::Exact(b) => {
            let mut e = json!({ "form": "exact", "bits": b.bits() });
            if b.bits() <= DECIMAL_BITS {
                e["decimal"] = json!(b.to_string());
            }
            e
        }
        TowerValue::Height { h, top } => json!({ "form": "height", "height": h, "top": top }),
    }
}

fn bounds(cmd: &BoundsCommand) -> Result<Outcome> {
    match cmd {
        BoundsCommand::Lll { r, m, ell, n } => {
            let threshold = lll_threshold(*r, *m, *ell)?;
            let mut e = json!({
                "threshold": threshold,
                "inverseProbabilityBits": inverse_probability(*r, *m, *ell)?.bits(),
            });
            if let Some(n) = n {
                e["n"] = json!(n);
                e["holds"] = json!(lll_condition(*r, *m, *ell, *n)?);
            }
            Ok(e.into())
        }
        BoundsCommand::Tower { j, x, binomial } => {
            let value = if *binomial {
                btower(*j, *x)
            } else {
                Ok(tower(*j, *x))
            };
            let mut e = match value {
                Ok(v) => tower_json(&v),
                Err(Error::Unrepresentable { level }) => {
                    json!({ "form": "unrepresentable", "level": level })
                }
                Err(e) => return Err(e.into()),
            };
            e["function"] = json!(if *binomial { "binomialTower" } else { "tower" });
            if *binomial {
                e["dominatesHalfTower"] = match check_bt_dominates_t(*j, *x) {
                    Ok(b) => json!(b),
                    Err(Error::Inconclusive) => json!("inconclusive"),
                    Err(Error::Unrepresentable { .. }) => json!("unrepresentable"),
                    Err(e) => return Err(e.into()),
                };
            }
            Ok(e.into())
        }
        BoundsCommand::Lemma {
            j,
            z,
            mu,
            precision,
        } => {
            let zq = parse_rational(z)?;
            let muq = parse_rational(mu)?;
            let sides = lemma_sides(*j, &zq, &muq, *precision)?;
            let (status, holds) = if sides.lhs.lo >= sides.rhs.hi {
                ("certified", Some(true))
            } else if sides.lhs.hi < sides.rhs.lo {
                ("refuted", Some(false))
            } else {
                ("inconclusive", None)
            };
            let fx = FixedPoint::new(*precision);
            let (llo, lhi) = fx.to_f64(&sides.lhs);
            let (rlo, rhi) = fx.to_f64(&sides.rhs);
            Ok(json!({
                "status": status,
                "holds": holds,
                "log2Lhs": [llo, lhi],
                "log2Rhs": [rlo, rhi],
                "precision": precision,
            })
            .into())
        }
    }
}
