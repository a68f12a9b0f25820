use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ficat::catcore::{check_axioms, fi_category, Category, Complemented, FiCategory, FiMor};
use ficat::si::{make_osi_category, make_si_category, osi_factor, OsiCategory, SiCategory, SiMor};
use ficat::vic::{
    make_ovic_category, make_vic_category, vi_v_hom_counts, OvicCategory, UnitSubgroup, VicCategory, VicMor,
};
use ficat::wporder::{osi_insertion_phi, osi_preceq, osi_total_cmp, ovic_phi_for, ovic_preceq, ovic_total_cmp};
use ficat::{make_ring, Error, FiniteRing, Mat, Result};
use ficat_checks::{run_criterion, Profile};
use ficat_modhom::shift::{exactness_thresholds, generation_degree, homology_report};
use ficat_modhom::{rep_shift, representable, CoefField, Field, Module, PrimeField, Rationals, Variant};
use serde_json::{json, Value};

mod output;

use output::Output;

#[derive(Parser)]
#[command(name = "ficat", version, about = "Complemented categories, orders and shift-complex homology")]
struct Cli {
    /// Print aligned tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CatArgs {
    /// FI, VIC, OVIC, SI or OSI.
    #[arg(long, default_value = "FI")]
    cat: String,
    /// Ring spec such as Z/4 or Z/2xZ/3; required except for FI.
    #[arg(long)]
    ring: Option<String>,
    /// Unit subgroup for VIC, e.g. "1,3"; defaults to all units.
    #[arg(long)]
    units: Option<String>,
}

#[derive(Args, Clone)]
struct ModuleArgs {
    #[command(flatten)]
    cat: CatArgs,
    /// Representable P_d, written P0, P1, ...
    #[arg(long, default_value = "P0")]
    module: String,
    /// Q or F_p.
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Size, units and local decomposition of a ring.
    RingInfo {
        #[arg(long)]
        ring: String,
    },
    /// Enumerate or count hom(src, dst).
    HomEnum {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long)]
        src: usize,
        #[arg(long)]
        dst: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Unique factorization of a surjection, or of a symplectic map with --symplectic.
    Factor {
        #[arg(long)]
        ring: String,
        /// Matrix as nested JSON arrays.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        symplectic: bool,
    },
    /// Composite g ∘ f of two morphisms given as JSON.
    Compose {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Compare two morphisms out of a common source under ≼ and ≤.
    OrderCmp {
        /// OVIC or OSI.
        #[arg(long, default_value = "OVIC")]
        cat: String,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The insertion morphism φ with g = φ ∘ f for f ≼ g.
    OrderPhi {
        #[arg(long, default_value = "OVIC")]
        cat: String,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Run the axiom suite up to a rank.
    Axioms {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long)]
        rank: usize,
    },
    /// Hom counts for all src <= dst <= max-rank.
    Counts {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long)]
        max_rank: usize,
        /// Also report VI and V counts (VIC only).
        #[arg(long)]
        vi: bool,
    },
    /// Dimensions of a representable, optionally with the generation test.
    ModuleDims {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        generation: bool,
    },
    /// Homology of a shift complex at one rank.
    Homology {
        #[command(flatten)]
        module: ModuleArgs,
        /// plain, prime, double or triple.
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long)]
        rank: usize,
        /// Highest homological degree reported; defaults to rank - 1.
        #[arg(long)]
        degree: Option<usize>,
        /// Report the vanishing thresholds over ranks 0..=rank instead.
        #[arg(long)]
        thresholds: bool,
        /// Also verify the stabilization homotopy from this rank to the next.
        #[arg(long)]
        homotopy: bool,
    },
    /// Run the acceptance criteria.
    Checks {
        /// quick or full.
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria (1-10).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

enum AnyCat {
    Fi(FiCategory),
    Vic(VicCategory),
    Ovic(OvicCategory),
    Si(SiCategory),
    Osi(OsiCategory),
}

fn need_ring(ring: &Option<String>) -> Result<FiniteRing> {
    make_ring(ring.as_deref().ok_or_else(|| Error::Precondition("--ring is required".into()))?)
}

fn parse_units(ring: &FiniteRing, units: &str) -> Result<UnitSubgroup> {
    let elems = units
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad unit '{s}'"))))
        .collect::<Result<Vec<_>>>()?;
    UnitSubgroup::new(ring, elems.into_iter().map(|x| x as ficat::Elem))
}

fn build_cat(a: &CatArgs) -> Result<AnyCat> {
    match a.cat.to_ascii_uppercase().as_str() {
        "FI" => Ok(AnyCat::Fi(fi_category())),
        "VIC" => {
            let r = need_ring(&a.ring)?;
            let units = match &a.units {
                Some(u) => parse_units(&r, u)?,
                None => UnitSubgroup::all(&r),
            };
            Ok(AnyCat::Vic(make_vic_category(&r, &units)?))
        }
        "OVIC" => Ok(AnyCat::Ovic(make_ovic_category(&need_ring(&a.ring)?))),
        "SI" => Ok(AnyCat::Si(make_si_category(&need_ring(&a.ring)?))),
        "OSI" => Ok(AnyCat::Osi(make_osi_category(&need_ring(&a.ring)?))),
        other => Err(Error::Parse(format!("unknown category '{other}'"))),
    }
}

macro_rules! with_cat {
    ($any:expr, $c:ident => $body:expr) => {
        match $any {
            AnyCat::Fi($c) => $body,
            AnyCat::Vic($c) => $body,
            AnyCat::Ovic($c) => $body,
            AnyCat::Si($c) => $body,
            AnyCat::Osi($c) => $body,
        }
    };
}

macro_rules! with_complemented {
    ($any:expr, $c:ident => $body:expr) => {
        match $any {
            AnyCat::Fi($c) => $body,
            AnyCat::Vic($c) => $body,
            AnyCat::Si($c) => $body,
            AnyCat::Ovic(c) => Err(Error::Precondition(format!("{} carries no monoidal structure", c.name()))),
            AnyCat::Osi(c) => Err(Error::Precondition(format!("{} carries no monoidal structure", c.name()))),
        }
    };
}

fn json_arg(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// Morphism input: either the envelope printed by hom-enum or a bare payload.
trait ParseMor: Category {
    fn parse_payload(&self, payload: &Value, dst: Option<usize>) -> Result<Self::Mor>;

    fn parse_mor(&self, text: &str) -> Result<Self::Mor> {
        let v = json_arg(text)?;
        let (payload, dst) = match v.get("payload") {
            Some(p) => (p.clone(), v.get("dst").and_then(Value::as_u64).map(|d| d as usize)),
            None => (v.clone(), v.get("dst").and_then(Value::as_u64).map(|d| d as usize)),
        };
        let f = self.parse_payload(&payload, dst)?;
        if !self.is_member(&f) {
            return Err(Error::Precondition(format!("not a morphism of {}", self.name())));
        }
        Ok(f)
    }
}

impl ParseMor for FiCategory {
    fn parse_payload(&self, payload: &Value, dst: Option<usize>) -> Result<FiMor> {
        let img = payload
            .as_array()
            .ok_or_else(|| Error::Parse("FI payload is a list of 1-based images".into()))?
            .iter()
            .map(|x| match x.as_u64() {
                Some(i) if i >= 1 => Ok(i as usize - 1),
                _ => Err(Error::Parse("images are positive integers".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let n = dst.ok_or_else(|| Error::Parse("FI morphisms need \"dst\"".into()))?;
        if img.iter().any(|&i| i >= n) {
            return Err(Error::Precondition("image outside the target".into()));
        }
        Ok(FiMor { n, img })
    }
}

fn vic_payload(ring: &FiniteRing, payload: &Value) -> Result<VicMor> {
    let f = Mat::from_json(Some(ring), payload.get("f").ok_or_else(|| Error::Parse("missing \"f\"".into()))?)?;
    let fp = Mat::from_json(Some(ring), payload.get("fp").ok_or_else(|| Error::Parse("missing \"fp\"".into()))?)?;
    VicMor::new(f, fp)
}

impl ParseMor for VicCategory {
    fn parse_payload(&self, payload: &Value, _: Option<usize>) -> Result<VicMor> {
        vic_payload(self.ring(), payload)
    }
}

impl ParseMor for OvicCategory {
    fn parse_payload(&self, payload: &Value, _: Option<usize>) -> Result<VicMor> {
        vic_payload(self.ring(), payload)
    }
}

impl ParseMor for SiCategory {
    fn parse_payload(&self, payload: &Value, _: Option<usize>) -> Result<SiMor> {
        Ok(SiMor {
            f: Mat::from_json(Some(self.ring()), payload)?,
        })
    }
}

impl ParseMor for OsiCategory {
    fn parse_payload(&self, payload: &Value, _: Option<usize>) -> Result<SiMor> {
        Ok(SiMor {
            f: Mat::from_json(Some(self.ring()), payload)?,
        })
    }
}

fn parse_degree(module: &str) -> Result<usize> {
    module
        .strip_prefix('P')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::Parse(format!("unknown module '{module}' (expected P0, P1, ...)")))
}

fn ring_info(spec: &str) -> Result<Value> {
    let r = make_ring(spec)?;
    let dec = r.local_factors();
    Ok(json!({
        "ring": r.spec(),
        "size": r.size(),
        "local": r.is_local(),
        "residue_prime": r.residue_prime(),
        "unit_count": r.units().len(),
        "units": r.units().iter().map(|&x| r.elem_to_json(x)).collect::<Vec<_>>(),
        "factors": dec.factors().iter().map(|f| f.spec().to_string()).collect::<Vec<_>>(),
        "idempotents": dec.idempotents().iter().map(|&x| r.elem_to_json(x)).collect::<Vec<_>>(),
    }))
}

fn hom_enum<C: Category>(cat: &C, src: usize, dst: usize, count_only: bool, out: &mut Output) -> Result<()> {
    if count_only {
        out.record(json!({"count": cat.hom_count(src, dst)}));
        return Ok(());
    }
    for f in cat.hom(src, dst)?.iter() {
        out.record(cat.mor_json(f));
    }
    Ok(())
}

fn compose<C: ParseMor>(cat: &C, g: &str, f: &str) -> Result<Value> {
    let (g, f) = (cat.parse_mor(g)?, cat.parse_mor(f)?);
    Ok(cat.mor_json(&cat.try_compose(&g, &f)?))
}

fn counts<C: Category>(cat: &C, max_rank: usize, vi: Option<&FiniteRing>, out: &mut Output) -> Result<()> {
    for n in 0..=max_rank {
        for m in 0..=n {
            let mut rec = json!({"cat": cat.name(), "src": m, "dst": n, "count": cat.hom_count(m, n)});
            if let Some(r) = vi {
                let (a, b) = vi_v_hom_counts(r, m, n)?;
                rec["vi"] = json!(a);
                rec["v"] = json!(b);
            }
            out.record(rec);
        }
    }
    Ok(())
}

fn module_dims<C: Complemented, F: Field>(cat: &C, k: &F, d: usize, top: usize, generation: bool) -> Result<Value> {
    let p = representable(cat, d, top, k)?;
    let dims: Vec<usize> = (0..=top).map(|n| p.dim(n)).collect::<Result<_>>()?;
    let mut rec = json!({"cat": cat.name(), "module": p.label(), "field": k.name(), "dims": dims, "truncation": top});
    if generation {
        rec["generation"] = serde_json::to_value(generation_degree(&p)?).expect("serializable");
    }
    Ok(rec)
}

struct HomologyArgs {
    d: usize,
    variant: Variant,
    rank: usize,
    degree: usize,
    thresholds: bool,
    homotopy: bool,
}

fn homology<C: Complemented, F: Field>(cat: &C, k: &F, a: &HomologyArgs, out: &mut Output) -> Result<()> {
    let top = if a.homotopy { a.rank + 1 } else { a.rank };
    let p = representable(cat, a.d, top, k)?;
    if a.thresholds {
        let t = exactness_thresholds(&p, a.variant, a.degree)?;
        out.record(serde_json::to_value(t).expect("serializable"));
        return Ok(());
    }
    let c = rep_shift(&p, a.variant).complex(a.rank)?;
    // H_i keys sit at the top level next to the metadata
    let mut rep = serde_json::to_value(homology_report(&p, &c, a.variant, a.rank, a.degree)).expect("serializable");
    let obj = rep.as_object_mut().expect("report is an object");
    if let Some(Value::Object(dims)) = obj.remove("dims") {
        obj.extend(dims);
    }
    obj.insert("truncation".into(), json!(a.rank));
    out.record(rep);
    if a.homotopy {
        let h = rep_shift(&p, a.variant).homotopy_check(a.rank)?;
        let passed = h.passed();
        out.record(serde_json::to_value(h).expect("serializable"));
        if !passed {
            return Err(Error::Invariant("stabilization homotopy check failed".into()));
        }
    }
    Ok(())
}

fn with_field<R>(
    field: &str,
    q: impl FnOnce(&Rationals) -> Result<R>,
    fp: impl FnOnce(&PrimeField) -> Result<R>,
) -> Result<R> {
    match field.parse::<CoefField>()? {
        CoefField::Rationals => q(&Rationals),
        CoefField::Prime(p) => fp(&PrimeField::new(p)?),
    }
}

fn order_cmp(cat: &str, ring: &str, f: &str, g: &str, phi: bool) -> Result<Value> {
    let r = make_ring(ring)?;
    let cmp_name = |o: std::cmp::Ordering| format!("{o:?}").to_lowercase();
    match cat.to_ascii_uppercase().as_str() {
        "OVIC" => {
            let c = make_ovic_category(&r);
            let (f, g) = (c.parse_mor(f)?, c.parse_mor(g)?);
            if phi {
                let p = ovic_phi_for(&f, &g)?;
                return Ok(json!({"phi": c.payload_json(&p)}));
            }
            Ok(json!({
                "preceq": ovic_preceq(&f, &g)?,
                "succeq": ovic_preceq(&g, &f)?,
                "cmp": cmp_name(ovic_total_cmp(&f, &g)?),
            }))
        }
        "OSI" => {
            let c = make_osi_category(&r);
            let (f, g) = (c.parse_mor(f)?, c.parse_mor(g)?);
            if phi {
                let p = osi_insertion_phi(&f.f, &g.f)?;
                return Ok(json!({"phi": p.entries_json()}));
            }
            Ok(json!({
                "preceq": osi_preceq(&f.f, &g.f)?,
                "succeq": osi_preceq(&g.f, &f.f)?,
                "cmp": cmp_name(osi_total_cmp(&f.f, &g.f)?),
            }))
        }
        other => Err(Error::Precondition(format!("orders are defined on OVIC and OSI, not {other}"))),
    }
}

fn factor(ring: &str, matrix: &str, symplectic: bool) -> Result<Value> {
    let r = make_ring(ring)?;
    let m = Mat::from_json(Some(&r), &json_arg(matrix)?)?;
    if symplectic {
        let (f1, f2, lambda) = osi_factor(&SiMor { f: m })?;
        return Ok(json!({"f1": f1.entries_json(), "f2": f2.entries_json(), "lambda": lambda.gram().entries_json()}));
    }
    let (f1, f2) = m.factor_surjection()?;
    Ok(json!({"f1": f1.entries_json(), "f2": f2.entries_json()}))
}

fn checks(profile: &str, seed: u64, only: &[u8], out: &mut Output) -> Result<()> {
    let profile: Profile = profile.parse()?;
    if let Some(bad) = only.iter().find(|&&c| !(1..=10).contains(&c)) {
        return Err(Error::Precondition(format!("no criterion {bad}")));
    }
    let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    let mut failed = 0;
    for id in &ids {
        let r = run_criterion(*id, profile, seed);
        failed += (!r.passed) as usize;
        out.record(serde_json::to_value(&r).expect("serializable"));
    }
    out.record(json!({"profile": profile, "seed": seed, "passed": ids.len() - failed, "failed": failed}));
    if failed > 0 {
        return Err(Error::Invariant(format!("{failed} criteria failed")));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Output) -> Result<()> {
    match cli.cmd {
        Cmd::RingInfo { ring } => out.record(ring_info(&ring)?),
        Cmd::HomEnum { cat, src, dst, count_only } => {
            with_cat!(&build_cat(&cat)?, c => hom_enum(c, src, dst, count_only, out))?
        }
        Cmd::Factor { ring, matrix, symplectic } => out.record(factor(&ring, &matrix, symplectic)?),
        Cmd::Compose { cat, g, f } => {
            let v = with_cat!(&build_cat(&cat)?, c => compose(c, &g, &f))?;
            out.record(v)
        }
        Cmd::OrderCmp { cat, ring, f, g } => out.record(order_cmp(&cat, &ring, &f, &g, false)?),
        Cmd::OrderPhi { cat, ring, f, g } => out.record(order_cmp(&cat, &ring, &f, &g, true)?),
        Cmd::Axioms { cat, rank } => {
            let report = with_complemented!(&build_cat(&cat)?, c => check_axioms(c, rank))?;
            let passed = report.passed();
            out.record(serde_json::to_value(report).expect("serializable"));
            if !passed {
                return Err(Error::Invariant("axiom check failed".into()));
            }
        }
        Cmd::Counts { cat, max_rank, vi } => {
            let any = build_cat(&cat)?;
            let ring = match (&any, vi) {
                (AnyCat::Vic(c), true) => Some(c.ring().clone()),
                (_, true) => return Err(Error::Precondition("--vi applies to VIC".into())),
                _ => None,
            };
            with_cat!(&any, c => counts(c, max_rank, ring.as_ref(), out))?
        }
        Cmd::ModuleDims { module, max_rank, generation } => {
            let d = parse_degree(&module.module)?;
            let any = build_cat(&module.cat)?;
            let v = with_complemented!(&any, c => with_field(
                &module.field,
                |k| module_dims(c, k, d, max_rank, generation),
                |k| module_dims(c, k, d, max_rank, generation),
            ))?;
            out.record(v)
        }
        Cmd::Homology { module, variant, rank, degree, thresholds, homotopy } => {
            let args = HomologyArgs {
                d: parse_degree(&module.module)?,
                variant: variant.parse()?,
                rank,
                degree: degree.unwrap_or(rank.max(1) - 1),
                thresholds,
                homotopy,
            };
            let any = build_cat(&module.cat)?;
            let out = std::cell::RefCell::new(out);
            with_complemented!(&any, c => with_field(
                &module.field,
                |k| homology(c, k, &args, &mut out.borrow_mut()),
                |k| homology(c, k, &args, &mut out.borrow_mut()),
            ))?
        }
        Cmd::Checks { profile, seed, criterion } => checks(&profile, seed, &criterion, out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let detail = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            println!("{}", json!({"error": "usage", "detail": detail}));
            return ExitCode::from(1);
        }
    };
    let mut out = Output::new(cli.pretty);
    let result = run(cli, &mut out);
    out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            println!("{}", json!({"error": e.code(), "detail": e.to_string()}));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
