use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::json;
use weightenum::autgroup::{
    crt_combine, find_element_of_order, fixed_subcode, mykkeltveit_congruences, psl2_generators, PermGroup,
    Permutation, PipelineConfig, SubgroupLabel,
};
use weightenum::codes::{extend_code, qr_code, LinearCode};
use weightenum::exactcount::{
    count_m1, count_m2, count_m3, exhaustive_spectrum, rational_to_decimal, sidelnikov_approx, CountBudget,
    CountResult,
};
use weightenum::ga::{
    bega, wga_a1, wga_a2, Decoder, GaConfig, InformationSetDecoder, SearchState, SyndromeDecoder, Variant,
    WitnessEntry,
};
use weightenum::gf2::{BinaryMatrix, Gf2Poly};
use weightenum::montecarlo::{
    approximate_count, estimate_count, estimate_distinct, estimate_dominance, expand_orbit, parse_decimal,
    GaSampler, OrbitArchive, Stability,
};
use weightenum::spectra::{
    bound_parameters, build_system, doubly_even_support, extend_spectrum_qr, gleason_fit, lift_congruence,
    macwilliams, pless_fill, select_parameter, AffineSpectrum, GleasonMode, ParameterCongruence, SpectrumFile,
    SupportSpectrum, WeightSpectrum,
};
use weightenum::Error;

use crate::args::*;
use crate::manifest::{FileDigest, RunManifest};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

/// Human-readable text plus the machine-readable artifact.
struct Output {
    human: String,
    artifact: String,
}

impl Output {
    fn json(human: String, value: &serde_json::Value) -> Self {
        Output {
            human,
            artifact: serde_json::to_string_pretty(value).expect("json value"),
        }
    }
}

struct Context<'a> {
    global: &'a Global,
    inputs: Vec<FileDigest>,
    config: Option<GaConfig>,
}

impl Context<'_> {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.inputs.push(FileDigest::of(path, &bytes));
        Ok(String::from_utf8(bytes).map_err(|_| format!("{} is not UTF-8", path.display()))?)
    }

    fn code(&mut self, path: &Path) -> Result<LinearCode> {
        Ok(LinearCode::parse_file_text(&self.read(path)?)?)
    }

    fn group(&mut self, path: &Path) -> Result<PermGroup> {
        let g: PermGroup = serde_json::from_str(&self.read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(PermGroup::new(g.generators, g.known_order)?)
    }

    fn family(&mut self, path: &Path) -> Result<AffineSpectrum> {
        Ok(AffineSpectrum::from_json(&self.read(path)?)?)
    }

    fn spectrum(&mut self, path: &Path) -> Result<WeightSpectrum> {
        Ok(WeightSpectrum::from_json(&self.read(path)?)?)
    }

    fn ga_config(&mut self) -> Result<GaConfig> {
        let mut cfg = match &self.global.config {
            Some(p) => GaConfig::from_json(&self.read(&p.clone())?)?,
            None => GaConfig::default(),
        };
        cfg.seed = self.global.seed;
        cfg.threads = self.global.threads;
        self.config = Some(cfg.clone());
        Ok(cfg)
    }

    fn budget(&self) -> CountBudget {
        self.global.budget.clone().map(CountBudget::new).unwrap_or_default()
    }
}

pub fn run(cli: &Cli, argv: &[String]) -> Result<()> {
    let start = Instant::now();
    let mut ctx = Context {
        global: &cli.global,
        inputs: Vec::new(),
        config: None,
    };
    let out = dispatch(&mut ctx, &cli.command)?;
    let g = &cli.global;
    match &g.out {
        Some(path) => {
            std::fs::write(path, &out.artifact).map_err(|e| format!("{}: {e}", path.display()))?;
            let manifest = RunManifest {
                command: argv.to_vec(),
                seed: g.seed,
                threads: g.threads,
                config: ctx.config.as_ref().map(|c| serde_json::to_value(c).expect("config")),
                inputs: ctx.inputs,
                outputs: vec![FileDigest::of(path, out.artifact.as_bytes())],
                wall_clock_seconds: start.elapsed().as_secs_f64(),
            };
            let mpath = manifest_path(path);
            std::fs::write(&mpath, serde_json::to_string_pretty(&manifest)?)
                .map_err(|e| format!("{}: {e}", mpath.display()))?;
            if g.json {
                println!("{}", out.artifact);
            } else {
                print!("{}", out.human);
            }
        }
        None if g.json => println!("{}", out.artifact),
        None => print!("{}", out.human),
    }
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn dispatch(ctx: &mut Context, cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Code(c) => code_cmd(ctx, c),
        Command::Search(c) => search_cmd(ctx, c),
        Command::Count(c) => count_cmd(ctx, c),
        Command::Spectrum(c) => spectrum_cmd(ctx, c),
        Command::System(c) => system_cmd(ctx, c),
        Command::Group(c) => group_cmd(ctx, c),
        Command::Mc(c) => mc_cmd(ctx, c),
    }
}

fn spectrum_table(s: &WeightSpectrum) -> String {
    let mut t = String::new();
    for (w, c) in s.nonzero() {
        let _ = writeln!(t, "{w:>4} : {c}");
    }
    t
}

fn spectrum_output(s: &WeightSpectrum) -> Output {
    Output {
        human: spectrum_table(s),
        artifact: s.to_json(),
    }
}

fn code_summary(code: &LinearCode) -> (String, serde_json::Value) {
    let mut human = format!(
        "construction: {}\nn = {}, k = {}\nself-dual: {}\n",
        code.construction(),
        code.n(),
        code.k(),
        code.is_self_dual()
    );
    if let Some(g) = code.cyclic_gen() {
        let _ = writeln!(human, "generator polynomial: {g}");
    }
    let value = json!({
        "construction": code.construction().to_string(),
        "n": code.n(),
        "k": code.k(),
        "self_dual": code.is_self_dual(),
        "generator_polynomial": code.cyclic_gen().map(|g| g.to_string()),
    });
    (human, value)
}

fn code_cmd(ctx: &mut Context, cmd: &CodeCmd) -> Result<Output> {
    match cmd {
        CodeCmd::Build {
            kind,
            n,
            extended,
            poly,
            matrix,
        } => {
            let base = match kind {
                CodeKind::Qr => qr_code(n.ok_or("qr codes need --n")?)?,
                CodeKind::Cyclic => {
                    let n = n.ok_or("cyclic codes need --n")?;
                    let g: Gf2Poly = poly.as_deref().ok_or("cyclic codes need --poly")?.parse()?;
                    LinearCode::cyclic(n as usize, g)?
                }
                CodeKind::Raw => {
                    let path = matrix.as_ref().ok_or("raw codes need --matrix")?;
                    LinearCode::from_generator(BinaryMatrix::parse_text(&ctx.read(path)?)?)?
                }
            };
            let code = if *extended { extend_code(&base) } else { base };
            Ok(Output {
                human: code_summary(&code).0,
                artifact: code.to_file_text(),
            })
        }
        CodeCmd::Info { code } => {
            let code = ctx.code(code)?;
            let (human, value) = code_summary(&code);
            Ok(Output::json(human, &value))
        }
    }
}

fn decoder(code: &LinearCode, which: DecoderArg) -> Result<Box<dyn Decoder>> {
    Ok(match which {
        DecoderArg::Infoset => Box::new(InformationSetDecoder::new(code)),
        DecoderArg::Syndrome => Box::new(SyndromeDecoder::new(code)?),
    })
}

fn witness_output(state: &SearchState, code: &LinearCode, mut human: String) -> Output {
    let _ = writeln!(
        human,
        "generations {}, evaluations {}, witnesses verified: {}",
        state.generations,
        state.evaluations,
        state.verify(code)
    );
    Output {
        human,
        artifact: serde_json::to_string_pretty(&state.witness_entries()).expect("witnesses"),
    }
}

fn search_cmd(ctx: &mut Context, cmd: &SearchCmd) -> Result<Output> {
    let cfg = ctx.ga_config()?;
    match cmd {
        SearchCmd::Wga { code, weight, opts } => {
            let code = ctx.code(code)?;
            let mut state = SearchState::new(code.n());
            let found = match opts.variant {
                VariantArg::A1 => wga_a1(&code, *weight, &cfg, &mut state)?,
                VariantArg::A2 => {
                    let d = decoder(&code, opts.decoder)?;
                    wga_a2(&code, *weight, &cfg, d.as_ref(), &mut state)?
                }
            };
            let mut human = format!("weight {weight}: {}\n", if found { "found" } else { "not found" });
            if let Some(c) = state.witnesses(*weight).first() {
                let _ = writeln!(human, "witness {c}");
            }
            Ok(witness_output(&state, &code, human))
        }
        SearchCmd::Bega { code, opts } => {
            let code = ctx.code(code)?;
            let state = match opts.variant {
                VariantArg::A1 => bega(&code, &cfg, Variant::A1)?,
                VariantArg::A2 => {
                    let d = decoder(&code, opts.decoder)?;
                    bega(&code, &cfg, Variant::A2(d.as_ref()))?
                }
            };
            let weights = state.support().weights();
            let list: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            let human = format!("support: {}\n", list.join(" "));
            Ok(witness_output(&state, &code, human))
        }
    }
}

fn count_output(r: &CountResult) -> Output {
    Output::json(
        format!("A_{} = {} ({}, work {})\n", r.weight, r.count, r.method, r.work),
        &serde_json::to_value(r.fragment()).expect("fragment"),
    )
}

fn count_cmd(ctx: &mut Context, cmd: &CountCmd) -> Result<Output> {
    let mut budget = ctx.budget();
    match cmd {
        CountCmd::M1 { code, weight } => Ok(count_output(&count_m1(&ctx.code(code)?, *weight, &mut budget)?)),
        CountCmd::M2 { code, weight } => Ok(count_output(&count_m2(&ctx.code(code)?, *weight, &mut budget)?)),
        CountCmd::M3 { code, weight } => Ok(count_output(&count_m3(&ctx.code(code)?, *weight, &mut budget)?)),
        CountCmd::Exhaustive { code } => {
            let code = ctx.code(code)?;
            Ok(spectrum_output(&exhaustive_spectrum(&code, &mut budget, ctx.global.threads)?))
        }
        CountCmd::Sidelnikov { n, t, j, digits } => {
            let q = sidelnikov_approx(*n, *t, *j)?;
            let text = rational_to_decimal(&q, *digits);
            Ok(Output::json(
                format!("A_{j} ~ {text}\n"),
                &json!({"n": n, "t": t, "j": j, "approx": text, "exact": q.to_string()}),
            ))
        }
    }
}

fn parse_pair<A: FromStr, B: FromStr>(text: &str, sep: char) -> Result<(A, B)> {
    let bad = || format!("expected `a{sep}b`, got {text:?}");
    let (a, b) = text.split_once(sep).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn spectrum_cmd(ctx: &mut Context, cmd: &SpectrumCmd) -> Result<Output> {
    match cmd {
        SpectrumCmd::Exhaustive { code } => {
            let code = ctx.code(code)?;
            let mut budget = ctx.budget();
            Ok(spectrum_output(&exhaustive_spectrum(&code, &mut budget, ctx.global.threads)?))
        }
        SpectrumCmd::Macwilliams { spectrum, k } => Ok(spectrum_output(&macwilliams(&ctx.spectrum(spectrum)?, *k)?)),
        SpectrumCmd::Pless { partial } => {
            let file: SpectrumFile = serde_json::from_str(&ctx.read(partial)?).map_err(|e| Error::Parse(e.to_string()))?;
            let mut known: Vec<Option<BigUint>> = vec![None; file.n + 1];
            for (&w, text) in &file.coeffs {
                if w > file.n {
                    return Err(Error::Parse(format!("weight {w} exceeds {}", file.n)).into());
                }
                known[w] = Some(text.parse().map_err(|_| Error::Parse(format!("bad count {text:?}")))?);
            }
            Ok(spectrum_output(&pless_fill(file.n, &known)?))
        }
        SpectrumCmd::Extend { spectrum } => Ok(spectrum_output(&extend_spectrum_qr(&ctx.spectrum(spectrum)?)?)),
        SpectrumCmd::Gleason { n, mode, fixes } => {
            let mode = match mode {
                ModeArg::Fsd => GleasonMode::Fsd,
                ModeArg::DoublyEven => GleasonMode::DoublyEven,
            };
            let constraints: Vec<(usize, BigInt)> =
                fixes.iter().map(|f| parse_pair(f, '=')).collect::<Result<_>>()?;
            let fit = gleason_fit(*n, mode, &constraints)?;
            Ok(Output {
                human: fit.family.to_string(),
                artifact: fit.family.to_json(),
            })
        }
    }
}

fn family_output(f: &AffineSpectrum) -> Output {
    Output {
        human: f.to_string(),
        artifact: f.to_json(),
    }
}

fn read_support(ctx: &mut Context, path: &Path, n: usize) -> Result<SupportSpectrum> {
    let weights: Vec<usize> = serde_json::from_str(&ctx.read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(w) = weights.iter().find(|&&w| w > n) {
        return Err(Error::Parse(format!("weight {w} exceeds {n}")).into());
    }
    Ok(SupportSpectrum::from_weights(n, weights))
}

fn parse_rational(text: &str) -> Result<BigRational> {
    if text.contains('/') {
        Ok(BigRational::from_str(text).map_err(|_| Error::Parse(format!("bad fraction {text:?}")))?)
    } else {
        Ok(parse_decimal(text)?)
    }
}

fn big(text: &str) -> Result<BigInt> {
    Ok(text.parse().map_err(|_| Error::Parse(format!("bad integer {text:?}")))?)
}

fn system_cmd(ctx: &mut Context, cmd: &SystemCmd) -> Result<Output> {
    match cmd {
        SystemCmd::Solve {
            n,
            k,
            self_dual,
            doubly_even,
            min_weight,
            symmetric,
            support,
            dual_support,
            raw_params,
        } => {
            let n = *n;
            let p = match (support, doubly_even) {
                (Some(path), _) => read_support(ctx, path, n)?,
                (None, true) => doubly_even_support(n, min_weight.ok_or("--doubly-even needs --min-weight")?),
                (None, false) => return Err("give --support or --doubly-even".into()),
            };
            let q = match dual_support {
                Some(path) => read_support(ctx, path, n)?,
                None if *self_dual => p.clone(),
                None => return Err("give --dual-support or --self-dual".into()),
            };
            let k = k.unwrap_or(n / 2);
            let mut family = build_system(&p, &q, n, k, *symmetric)?;
            if !raw_params {
                family.qr_reparameterize()?;
            }
            Ok(family_output(&family))
        }
        SystemCmd::Substitute { family, values } => {
            let f = ctx.family(family)?;
            let values: BTreeMap<String, BigInt> =
                values.iter().map(|v| parse_pair(v, '=')).collect::<Result<_>>()?;
            Ok(spectrum_output(&f.substitute_named(&values)?))
        }
        SystemCmd::Threshold { family } => {
            let s = ctx.family(family)?.semi_local_threshold();
            Ok(Output::json(format!("{s}\n"), &json!({"threshold": s})))
        }
        SystemCmd::Lift {
            family,
            weight,
            residue,
            modulus,
        } => {
            let f = ctx.family(family)?;
            let c = lift_congruence(&f, *weight, &big(residue)?, &big(modulus)?)?;
            Ok(Output {
                human: format!("{} = {} eta + {}\n", c.param, c.modulus, c.offset),
                artifact: serde_json::to_string_pretty(&c)?,
            })
        }
        SystemCmd::Bound { family, congruences } => {
            let f = ctx.family(family)?;
            let cs: Vec<ParameterCongruence> = congruences
                .iter()
                .map(|p| Ok(serde_json::from_str(&ctx.read(p)?).map_err(|e| Error::Parse(e.to_string()))?))
                .collect::<Result<_>>()?;
            let bounds = bound_parameters(&f, &cs)?;
            let show = |b: &Option<BigInt>| b.as_ref().map_or("unbounded".to_string(), |v| v.to_string());
            let human = bounds
                .iter()
                .map(|b| format!("{}: eta in [{}, {}]\n", b.param, show(&b.lo), show(&b.hi)))
                .collect();
            Ok(Output {
                human,
                artifact: serde_json::to_string_pretty(&bounds)?,
            })
        }
        SystemCmd::Select { congruence, estimate } => {
            let c: ParameterCongruence =
                serde_json::from_str(&ctx.read(congruence)?).map_err(|e| Error::Parse(e.to_string()))?;
            let eta = select_parameter(&c, &parse_rational(estimate)?);
            let value = c.value(&eta);
            Ok(Output::json(
                format!("eta = {eta}, {} = {value}\n", c.param),
                &json!({"param": c.param, "eta": eta.to_string(), "value": value.to_string()}),
            ))
        }
    }
}

fn parse_perm(text: &str) -> Result<Permutation> {
    let images: Vec<usize> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Permutation::from_images(images)?)
}

fn read_injected(ctx: &mut Context, path: &Path) -> Result<BTreeMap<SubgroupLabel, BTreeMap<usize, BigUint>>> {
    let raw: BTreeMap<String, BTreeMap<String, String>> =
        serde_json::from_str(&ctx.read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = BTreeMap::new();
    for (label, counts) in raw {
        let mut m = BTreeMap::new();
        for (w, c) in counts {
            let w: usize = w.parse().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            m.insert(w, c.parse().map_err(|_| Error::Parse(format!("bad count {c:?}")))?);
        }
        out.insert(label.parse()?, m);
    }
    Ok(out)
}

fn group_cmd(ctx: &mut Context, cmd: &GroupCmd) -> Result<Output> {
    let seed = ctx.global.seed;
    let rng = || {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    };
    match cmd {
        GroupCmd::Psl2 { n } => {
            let g = psl2_generators(*n)?;
            Ok(Output {
                human: format!(
                    "PSL(2, {n}) on {} points, order {}, {} generators\n",
                    g.degree(),
                    g.known_order.unwrap_or(0),
                    g.generators.len()
                ),
                artifact: serde_json::to_string_pretty(&g)?,
            })
        }
        GroupCmd::FixedSubcode { code, group, perms } => {
            let code = ctx.code(code)?;
            let mut gens = match group {
                Some(p) => ctx.group(p)?.generators,
                None => Vec::new(),
            };
            for p in perms {
                gens.push(parse_perm(p)?);
            }
            if gens.is_empty() {
                return Err("give --group or --perm".into());
            }
            let sub = fixed_subcode(&code, &gens)?;
            Ok(Output {
                human: format!("fixed subcode: n = {}, k = {}\n", sub.n(), sub.k()),
                artifact: sub.to_file_text(),
            })
        }
        GroupCmd::OrderElement { group, q, attempts } => {
            let g = ctx.group(group)?;
            let x = find_element_of_order(&g, *q, *attempts, &mut rng())?;
            Ok(Output {
                human: format!("element of order {}: {:?}\n", x.order(), x.images()),
                artifact: serde_json::to_string(&x)?,
            })
        }
        GroupCmd::Congruence {
            code,
            group,
            weights,
            inject,
            max_dimension,
            attempts,
        } => {
            let code = ctx.code(code)?;
            let g = ctx.group(group)?;
            let injected = match inject {
                Some(p) => read_injected(ctx, p)?,
                None => BTreeMap::new(),
            };
            let cfg = PipelineConfig {
                seed,
                attempts: *attempts,
                max_dimension: *max_dimension,
                threads: ctx.global.threads,
                injected,
            };
            let report = mykkeltveit_congruences(&code, &g, weights, &cfg)?;
            let mut human = format!("|G| = {}, m = {}\n", report.group_order, report.m);
            for s in &report.subgroups {
                let counts: Vec<String> = s.counts.iter().map(|(w, c)| format!("E'_{w} = {c}")).collect();
                let src = if s.injected { " (given)" } else { "" };
                let _ = writeln!(human, "{:>5}  k = {:>3}  {}{src}", s.label.to_string(), s.dimension, counts.join(", "));
            }
            for (w, e) in &report.table.entries {
                let _ = writeln!(human, "E_{w} = {} (mod {})", e.combined.0, e.combined.1);
            }
            Ok(Output {
                human,
                artifact: report.table.to_json(),
            })
        }
        GroupCmd::Crt { residues } => {
            let pairs: Vec<(BigInt, BigInt)> = residues.iter().map(|r| parse_pair(r, ':')).collect::<Result<_>>()?;
            let (r, m) = crt_combine(&pairs)?;
            Ok(Output::json(
                format!("{r} (mod {m})\n"),
                &json!({"residue": r.to_string(), "modulus": m.to_string()}),
            ))
        }
    }
}

fn rule(a: &StabilityArgs) -> Stability {
    Stability {
        batch: a.batch,
        window: a.window,
        tolerance: a.tolerance,
        max_samples: a.max_samples,
    }
}

fn archive(ctx: &mut Context, archive: &Path, code: &LinearCode) -> Result<OrbitArchive> {
    Ok(OrbitArchive::from_json(code, &ctx.read(archive)?)?)
}

fn mc_cmd(ctx: &mut Context, cmd: &McCmd) -> Result<Output> {
    let (seed, threads) = (ctx.global.seed, ctx.global.threads);
    match cmd {
        McCmd::Expand {
            code,
            group,
            witnesses,
            weight,
        } => {
            let code = ctx.code(code)?;
            let g = ctx.group(group)?;
            let entries: Vec<WitnessEntry> =
                serde_json::from_str(&ctx.read(witnesses)?).map_err(|e| Error::Parse(e.to_string()))?;
            let s1 = SearchState::from_entries(&code, &entries)?.witnesses(*weight).to_vec();
            let budget: u64 = match &ctx.global.budget {
                Some(b) => b.try_into().map_err(|_| "orbit budget too large")?,
                None => 100_000,
            };
            let arch = expand_orbit(&code, &s1, &g, budget, seed, threads)?;
            Ok(Output {
                human: format!("|S1| = {}, |S2| = {}, |S3| = {}\n", s1.len(), arch.total(), arch.distinct()),
                artifact: arch.to_json(),
            })
        }
        McCmd::Distinct { archive: path, code, rule: r } => {
            let code = ctx.code(code)?;
            let arch = archive(ctx, path, &code)?;
            let d = estimate_distinct(&arch, &rule(r), seed)?;
            Ok(Output::json(
                format!("|S3| ~ {} (j = {}, t = {}, exact {})\n", d.estimate, d.j, d.t, d.exact),
                &json!({"estimate": d.estimate.to_string(), "j": d.j, "t": d.t, "exact": d.exact}),
            ))
        }
        McCmd::Dominance { archive: path, code, rule: r } => {
            let code = ctx.code(code)?;
            let arch = archive(ctx, path, &code)?;
            let cfg = ctx.ga_config()?;
            let sampler = GaSampler {
                code: &code,
                w: arch.weight(),
                cfg,
            };
            let d = estimate_dominance(&arch, &sampler, &rule(r), seed, threads)?;
            let text = rational_to_decimal(&d.rate, 4);
            Ok(Output::json(
                format!("R ~ {text} (i = {}, s = {})\n", d.i, d.s),
                &json!({"rate": d.rate.to_string(), "approx": text, "i": d.i, "s": d.s}),
            ))
        }
        McCmd::Estimate {
            archive: path,
            code,
            distinct,
            rate,
            rule: r,
        } => match (distinct, rate, path, code) {
            (Some(d), Some(rate), _, _) => {
                let count = approximate_count(d, &parse_rational(rate)?)?;
                Ok(Output::json(format!("{count}\n"), &json!({"count": count.to_string()})))
            }
            (None, None, Some(path), Some(code)) => {
                let code = ctx.code(code)?;
                let arch = archive(ctx, path, &code)?;
                let cfg = ctx.ga_config()?;
                let sampler = GaSampler {
                    code: &code,
                    w: arch.weight(),
                    cfg,
                };
                let e = estimate_count(&arch, &sampler, &rule(r), seed, threads)?;
                let rate = rational_to_decimal(&e.dominance.rate, 4);
                Ok(Output::json(
                    format!(
                        "|S2| = {}, |S3| ~ {}, R ~ {rate}, A_{} ~ {}\n",
                        arch.total(),
                        e.distinct.estimate,
                        arch.weight(),
                        e.count
                    ),
                    &json!({
                        "w": arch.weight(),
                        "s2": arch.total(),
                        "s3": e.distinct.estimate.to_string(),
                        "s3_exact": e.distinct.exact,
                        "rate": e.dominance.rate.to_string(),
                        "count": e.count.to_string(),
                    }),
                ))
            }
            _ => Err("give --distinct and --rate, or an archive with --code".into()),
        },
    }
}
