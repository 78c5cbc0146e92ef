use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matgrp::{bessel_relevant, bruhat_decompose, weyl, Family, Mat, Over, Selector};
use crate::shintani::{borel_fixed_point_ratio, lang_consistency, x_sigma_decompose};
use crate::verify::context::Context;
use crate::verify::report::Row;
use crate::whittaker::{bessel, multiplicities, BesselEval, BesselTable};

/// Largest `|GL_n|` over the degree-four extension searched for Lang solutions.
pub const LANG_SEARCH_BOUND: u64 = 100_000;
/// Above this `|G(E)|`, model-versus-closed-form comparisons use a seeded sample.
pub const ORACLE_EXHAUSTIVE_CAP: usize = 20_000;
const ORACLE_SAMPLE: usize = 2_000;

fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|i| format!("s{i}")).collect()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `Σ_{h ∈ G(F)} B(h)`.
pub fn lambda_of(b: &BesselTable, gf: &[Mat]) -> Result<Complex64> {
    gf.iter().map(|h| b.get(h).ok_or_else(|| Error::NotInGroup("Bessel table domain".into()))).sum()
}

/// `Σ_{g ∈ X_σ} B(g)`.
pub fn mu_of(b: &BesselTable, x_sigma: &[Mat]) -> Result<Complex64> {
    lambda_of(b, x_sigma)
}

/// Runs `f`, turning errors into a single failed row (or a skipped
/// informational row when a size cap was hit).
pub fn guarded(name: &str, tag: &str, f: impl FnOnce() -> Result<Vec<Row>>) -> Vec<Row> {
    match f() {
        Ok(rows) => rows,
        Err(e @ Error::CapExceeded { .. }) => {
            vec![Row::failed(name, tag, format!("skipped: {e}")).informational()]
        }
        Err(e) => vec![Row::failed(name, tag, e.to_string())],
    }
}

/// `B_π` on `G(F) ∪ X_σ` for a generic irreducible of `G(E)`.
fn bessel_on_gf_and_x_sigma(ctx: &Context, pi: usize) -> Result<BesselTable> {
    let g = ctx.ge_data()?;
    let mut domain: Vec<Mat> = ctx.gf()?.iter().chain(ctx.x_sigma()?.iter()).copied().collect();
    domain.sort_unstable();
    domain.dedup();
    bessel(&ctx.d, &g.classes, &g.table, pi, &*ctx.psi_e()?, &ctx.units_e()?, &domain, ctx.config.tol)
}

/// λ = μ for all generic `π`, and for `GL`/`U` the base-change formula,
/// the invariant vector, and vanishing of `λ` off the σ-invariant set.
pub fn verify_main(ctx: &Context) -> Vec<Row> {
    guarded("main", "main-identity", || {
        let tol = ctx.config.tol;
        let d = &ctx.d;
        let ge = ctx.ge_data()?;
        let gf = ctx.gf()?;
        let xs = ctx.x_sigma()?;
        let generic = ctx.generic_e()?;
        let invariant = ctx.invariant_e()?;
        let with_base_change = d.family() != Family::Sl;
        let mut rows = Vec::new();
        let ratio = if with_base_change {
            let gop = d.enumerate(Selector::GopF)?.len();
            let ge_order = ctx.ge()?.len();
            rows.push(Row::exact("|X_sigma| = |G(E)|/|G^op(F)|", "x-sigma-order", (xs.len() * gop) as i64, ge_order as i64));
            Some(ge_order as f64 / gop as f64)
        } else {
            None
        };
        let bc = if with_base_change { Some(ctx.base_change()?) } else { None };
        let op = if with_base_change { Some(ctx.gop_data()?) } else { None };
        for &pi in generic.iter() {
            let b = bessel_on_gf_and_x_sigma(ctx, pi)?;
            let lambda = lambda_of(&b, &gf)?;
            let mu = mu_of(&b, &xs)?;
            let deg_pi = ge.table.degrees[pi] as f64;
            rows.push(Row::approx(format!("lambda = mu [pi={pi}]"), "lambda-equals-mu", lambda, mu, tol));
            let is_invariant = invariant.contains(&pi);
            let (Some(bc), Some(op), Some(ratio)) = (&bc, &op, ratio) else {
                rows.push(
                    Row::approx(format!("lambda [pi={pi}]"), "lambda-value", lambda, c(0.0), tol)
                        .informational()
                        .with_note(format!("sigma-invariant: {is_invariant}")),
                );
                continue;
            };
            if !is_invariant {
                rows.push(Row::approx(format!("lambda vanishes [pi={pi}]"), "lambda-vanishes", lambda, c(0.0), tol));
                continue;
            }
            let Some(pair) = bc.partner(pi) else {
                rows.push(
                    Row::failed(format!("base change [pi={pi}]"), "base-change", "no partner found".into()).informational(),
                );
                continue;
            };
            let deg_rho = op.table.degrees[pair.rho] as f64;
            let eps = pair.epsilon as f64;
            rows.push(
                Row::approx(format!("main identity [pi={pi}]"), "main-identity", lambda, c(eps * deg_rho / deg_pi * ratio), tol)
                    .with_note(format!("rho={} epsilon={:+} deg_pi={deg_pi} deg_rho={deg_rho}", pair.rho, pair.epsilon)),
            );
            rows.push(Row::approx(
                format!("mu identity [pi={pi}]"),
                "mu-identity",
                mu,
                c(eps * deg_rho / deg_pi * xs.len() as f64),
                tol,
            ));
            rows.extend(invariant_vector_rows(ctx, pi, lambda)?);
        }
        Ok(rows)
    })
}

/// `v = Σ_{h ∈ G(F)} π(h) v_B` is `G(F)`-fixed, nonzero, and `v(1) = λ`.
fn invariant_vector_rows(ctx: &Context, pi: usize, lambda: Complex64) -> Result<Vec<Row>> {
    let d = &ctx.d;
    let tol = ctx.config.tol;
    let model = ctx.model(pi)?;
    let gf = ctx.gf()?;
    let bv = &model.bessel_vector;
    let mut v = nalgebra::DVector::zeros(model.degree);
    for h in gf.iter() {
        v += model.act_vec(d, h, bv);
    }
    let one = model.cosets.locate(d, &*ctx.psi_e()?, &d.identity());
    let value_at_one = one.0 * (model.basis.row(one.1) * &v)[(0, 0)];
    let fixed = gf.iter().map(|h| (model.act_vec(d, h, &v) - &v).norm()).fold(0.0, f64::max);
    Ok(vec![
        Row::approx(format!("invariant vector at 1 [pi={pi}]"), "invariant-vector", value_at_one, lambda, tol),
        Row::bound(format!("invariant vector fixed by G(F) [pi={pi}]"), "invariant-vector", fixed, tol),
        Row {
            pass: v.norm() > tol,
            ..Row::approx(format!("distinguished [pi={pi}]"), "distinguished", c(v.norm()), c(0.0), tol)
        },
    ])
}

/// Stabilizer orders of `t n_w` under `U(F) × U(F)` and under the twisted
/// action of `U(E)`, against `q^{N − l(w)}`.
pub fn verify_counting(ctx: &Context) -> Vec<Row> {
    guarded("counting", "stabilizer-count", || {
        let d = &ctx.d;
        let uf = ctx.units_f()?;
        let ue = ctx.units_e()?;
        let q = d.q() as i64;
        let mut rows =
            vec![Row::exact("|U(F) x U(F)| = |U(E)|", "stabilizer-count", (uf.len() * uf.len()) as i64, ue.len() as i64)];
        let uf_inv: Vec<Mat> = uf.iter().map(|u| d.inv(u)).collect();
        let ue_inv: Vec<Mat> = ue.iter().map(|u| d.inv(u)).collect();
        let ue_sigma: Vec<Mat> = ue.iter().map(|u| d.sigma(u)).collect();
        let ops = d.ops();
        for cell in bessel_relevant(d)? {
            let expected = q.pow((d.positive_roots() - cell.w.length()) as u32);
            let word = word_label(&cell.w.word);
            for t in &cell.a_w {
                let n = d.mul(t, &cell.w.rep);
                let rational = uf
                    .iter()
                    .map(|u1| uf_inv.iter().filter(|u2i| ops.mul3(u1, &n, u2i) == n).count())
                    .sum::<usize>() as i64;
                let twisted =
                    ue_sigma.iter().zip(&ue_inv).filter(|(su, ui)| ops.mul3(su, &n, ui) == n).count() as i64;
                let label = format!("w={word} t={}", t.encode(d.ext()));
                rows.push(Row::exact(format!("U(F)xU(F) stabilizer [{label}]"), "stabilizer-count", rational, expected));
                rows.push(Row::exact(format!("twisted U(E) stabilizer [{label}]"), "stabilizer-count", twisted, expected));
            }
        }
        Ok(rows)
    })
}

/// `ι(n_w) = n_{w*}⁻¹`, `ι(t n_w) = (t n_w)⁻¹` on relevant cells, and
/// `ι(n) = n⁻¹` on the monomial support of Bessel functions of `G(F)`.
pub fn verify_involution(ctx: &Context) -> Vec<Row> {
    let mut rows = involution_on_weyl(ctx);
    rows.extend(involution_on_cells(ctx));
    rows.extend(involution_on_support(ctx));
    rows
}

/// `ι(n_w) = n_{w*}⁻¹` for every Weyl representative.
pub fn involution_on_weyl(ctx: &Context) -> Vec<Row> {
    guarded("involution on Weyl representatives", "weyl-involution", || {
        let d = &ctx.d;
        let w0 = weyl::longest(d.n());
        let mut rows = Vec::new();
        for w in d.weyl_group() {
            let star = weyl::compose(&w0, &weyl::compose(&weyl::inverse(&w.perm), &w0));
            let lhs = d.duality_involution(&w.rep);
            let rhs = d.inv(&d.weyl_of_perm(&star).rep);
            let word = word_label(&w.word);
            rows.push(Row::exact(format!("iota(n_w) = n_w*^-1 [w={word}]"), "weyl-involution", (lhs == rhs) as i64, 1));
        }
        Ok(rows)
    })
}

/// `ι(t n_w) = (t n_w)⁻¹` for relevant `w` and `t ∈ A_w`.
pub fn involution_on_cells(ctx: &Context) -> Vec<Row> {
    guarded("involution on relevant cells", "relevant-involution", || {
        let d = &ctx.d;
        let mut rows = Vec::new();
        for cell in bessel_relevant(d)? {
            let word = word_label(&cell.w.word);
            let bad = cell
                .a_w
                .iter()
                .filter(|t| {
                    let n = d.mul(t, &cell.w.rep);
                    d.duality_involution(&n) != d.inv(&n)
                })
                .count() as i64;
            rows.push(
                Row::exact(format!("iota(t n_w) = (t n_w)^-1 [w={word}]"), "relevant-involution", bad, 0)
                    .with_note(format!("{} torus elements", cell.a_w.len())),
            );
        }
        Ok(rows)
    })
}

/// `ι(n) = n⁻¹` on the monomial support of Bessel functions of `G(F)`.
pub fn involution_on_support(ctx: &Context) -> Vec<Row> {
    guarded("involution on Bessel support", "support-involution", || {
        let d = &ctx.d;
        let g = ctx.gf_data()?;
        let psi = ctx.psi_f()?;
        let units = ctx.units_f()?;
        let monomials: Vec<Mat> = ctx.gf()?.iter().filter(|m| m.is_monomial()).copied().collect();
        let mut rows = Vec::new();
        for &pi in ctx.generic_f()?.iter() {
            let b = bessel(d, &g.classes, &g.table, pi, &psi, &units, &monomials, ctx.config.tol)?;
            let support: Vec<&Mat> = b.iter().filter(|(_, v)| v.norm() > ctx.config.zero_tol).map(|(m, _)| m).collect();
            let bad = support.iter().filter(|n| d.duality_involution(n) != d.inv(n)).count() as i64;
            rows.push(
                Row::exact(format!("iota(n) = n^-1 on monomial support [pi={pi}]"), "support-involution", bad, 0)
                    .with_note(format!("{} monomials in support", support.len())),
            );
        }
        Ok(rows)
    })
}

/// `χ(ι(g)) = χ(g⁻¹)` for generic irreducibles of `G(F)`.
pub fn verify_contragredient(ctx: &Context) -> Vec<Row> {
    guarded("contragredient", "contragredient", || {
        let d = &ctx.d;
        let g = ctx.gf_data()?;
        let cl = &g.classes;
        let images: Vec<(usize, usize)> = cl
            .reps
            .iter()
            .map(|r| {
                let a = cl.index_of(&d.duality_involution(r));
                let b = cl.index_of(&d.inv(r));
                a.zip(b).ok_or_else(|| Error::NotInGroup("ι does not preserve G(F)".into()))
            })
            .collect::<Result<_>>()?;
        Ok(ctx
            .generic_f()?
            .iter()
            .map(|&pi| {
                let chi = &g.table.chars[pi];
                let dev = images.iter().map(|&(a, b)| (chi[a] - chi[b]).norm()).fold(0.0, f64::max);
                Row::bound(format!("chi(iota g) = chi(g^-1) [pi={pi}]"), "contragredient", dev, ctx.config.tol)
            })
            .collect())
    })
}

/// Bessel functions of `G(F)` vanish off `∪ U A_w n_w U`, and every relevant
/// cell carries a nonzero value for some generic `π`.
pub fn verify_support(ctx: &Context) -> Vec<Row> {
    guarded("Bessel support", "bessel-support", || {
        let d = &ctx.d;
        let g = ctx.gf_data()?;
        let gf = ctx.gf()?;
        let cells = bessel_relevant(d)?;
        // Cell index of every element lying in some U A_w n_w U.
        let location: Vec<Option<usize>> = gf
            .iter()
            .map(|x| {
                let br = bruhat_decompose(d, x, Over::F)?;
                Ok(cells.iter().position(|c| c.w.perm == br.w && c.a_w.binary_search(&br.t).is_ok()))
            })
            .collect::<Result<_>>()?;
        let mut best = vec![0.0f64; cells.len()];
        let mut rows = Vec::new();
        for &pi in ctx.generic_f()?.iter() {
            let b = bessel(d, &g.classes, &g.table, pi, &*ctx.psi_f()?, &ctx.units_f()?, &gf, ctx.config.tol)?;
            let mut off = 0.0f64;
            for (v, loc) in b.values.iter().zip(&location) {
                match loc {
                    Some(k) => best[*k] = best[*k].max(v.norm()),
                    None => off = off.max(v.norm()),
                }
            }
            rows.push(Row::bound(format!("vanishes off relevant cells [pi={pi}]"), "bessel-support", off, ctx.config.zero_tol));
        }
        for (cell, m) in cells.iter().zip(best) {
            let word = word_label(&cell.w.word);
            rows.push(Row {
                pass: m > ctx.config.zero_tol,
                ..Row::approx(format!("some pi nonzero on cell [w={word}]"), "cell-nonvanishing", c(m), c(0.0), ctx.config.zero_tol)
            });
        }
        Ok(rows)
    })
}

fn multiplicity_rows(label: &str, mult: &[Complex64], degrees: &[usize], induced: usize, tol: f64) -> Vec<Row> {
    let dev = mult.iter().map(|m| m.norm().min((m - c(1.0)).norm())).fold(0.0, f64::max);
    let dim: usize = mult.iter().zip(degrees).filter(|(m, _)| m.re > 0.5).map(|(_, d)| d).sum();
    vec![
        Row::bound(format!("multiplicities in {{0,1}} [{label}]"), "multiplicity-one", dev, tol),
        Row::exact(format!("generic degrees sum to |G|/|U| [{label}]"), "multiplicity-one", dim as i64, induced as i64),
    ]
}

/// `⟨χ, Ind ψ⟩ ∈ {0, 1}` for `G(F)` and, within the table cap, `G(E)`.
pub fn verify_multiplicity(ctx: &Context) -> Vec<Row> {
    let mut rows = guarded("multiplicity one over F", "multiplicity-one", || {
        let g = ctx.gf_data()?;
        let units = ctx.units_f()?;
        let m = multiplicities(&ctx.d, &g.classes, &g.table, &*ctx.psi_f()?, &units)?;
        Ok(multiplicity_rows("G(F)", &m, &g.table.degrees, g.classes.order() / units.len(), ctx.config.tol))
    });
    rows.extend(guarded("multiplicity one over E", "multiplicity-one", || {
        let g = ctx.ge_data()?;
        let units = ctx.units_e()?;
        let m = multiplicities(&ctx.d, &g.classes, &g.table, &*ctx.psi_e()?, &units)?;
        Ok(multiplicity_rows("G(E)", &m, &g.table.degrees, g.classes.order() / units.len(), ctx.config.tol))
    }));
    rows
}

/// `#{σ-invariant irreducibles of G(E)} = #Irr(G^op(F))`.
pub fn verify_kawanaka(ctx: &Context) -> Vec<Row> {
    guarded("Kawanaka count", "kawanaka-count", || {
        let inv = ctx.invariant_e()?;
        let op = ctx.gop_data()?;
        Ok(vec![Row::exact("sigma-invariant irreducibles = #Irr G^op(F)", "kawanaka-count", inv.len() as i64, op.table.len() as i64)])
    })
}

/// Norm-map bijectivity, decomposition of `X_σ`, the Borel fixed-point
/// count, and the Lang-equation consistency sample.
pub fn verify_norm(ctx: &Context) -> Vec<Row> {
    if ctx.d.family() == Family::Sl {
        return vec![Row::failed("norm map", "norm-map", "skipped: SL is outside the norm-map families".into()).informational()];
    }
    let mut rows = guarded("norm map", "norm-map", || {
        let nt = ctx.norm()?;
        let tc = ctx.tclasses()?;
        let op = ctx.gop_data()?;
        Ok(vec![
            Row::exact("norm map injective", "norm-map", nt.is_injective() as i64, 1),
            Row::exact("norm map surjective", "norm-map", nt.is_surjective() as i64, 1),
            Row::exact("#sigma-classes = #classes of G^op(F)", "norm-map", tc.len() as i64, op.classes.len() as i64),
        ])
    });
    rows.extend(guarded("X_sigma decomposition", "x-sigma-decomposition", || {
        let xs = ctx.x_sigma()?;
        let units = ctx.units_e()?;
        let mut ok = 0;
        let mut guided = 0;
        for g in xs.iter() {
            if let Ok(dec) = x_sigma_decompose(&ctx.d, g, &units) {
                ok += 1;
                guided += dec.bruhat_guided as usize;
            }
        }
        Ok(vec![Row::exact("X_sigma = U n sigma(U)^-1 decompositions", "x-sigma-decomposition", ok, xs.len() as i64)
            .with_note(format!("{guided} found from the Bruhat factor"))])
    }));
    rows.extend(guarded("Borel fixed points", "borel-fixed-points", || {
        let (b, u, t) = borel_fixed_point_ratio(&ctx.d)?;
        Ok(vec![
            Row::exact("|U(E)^sigma| divides |B(E)^sigma|", "borel-fixed-points", (b % u) as i64, 0),
            Row::exact("|B(E)^sigma| / |U(E)^sigma| = |T(E)^sigma|", "borel-fixed-points", (b / u) as i64, t as i64),
        ])
    }));
    rows.extend(guarded("Lang consistency", "lang-consistency", || {
        let tc = ctx.tclasses()?;
        let op = ctx.gop_data()?;
        let nt = ctx.norm()?;
        let r = lang_consistency(&ctx.d, &tc, &op.classes, &nt, LANG_SEARCH_BOUND)?;
        if r.skipped {
            return Ok(vec![Row::exact("Lang witnesses conjugate to norms", "lang-consistency", 0, 0)
                .informational()
                .with_note("skipped: search space above bound")]);
        }
        Ok(vec![
            Row::exact("Lang witnesses conjugate to norms", "lang-consistency", r.consistent as i64, r.reached as i64),
            Row::exact("sigma-classes reached by the Lang search", "lang-consistency", r.reached as i64, r.classes as i64)
                .informational(),
        ])
    }));
    rows
}

/// Closed-form Bessel values against values read off the Whittaker model.
pub fn verify_oracle(ctx: &Context) -> Vec<Row> {
    guarded("model oracle", "model-oracle", || {
        let g = ctx.ge_data()?;
        let ge = ctx.ge()?;
        let sampled = ge.len() > ORACLE_EXHAUSTIVE_CAP;
        let (points, irreps): (Vec<Mat>, Vec<usize>) = if sampled {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
            let pts = ge.choose_multiple(&mut rng, ORACLE_SAMPLE).copied().collect();
            let inv = ctx.invariant_e()?;
            (pts, ctx.generic_e()?.iter().copied().filter(|pi| inv.contains(pi)).collect())
        } else {
            (ge.to_vec(), ctx.generic_e()?.to_vec())
        };
        let psi = ctx.psi_e()?;
        let units = ctx.units_e()?;
        let mut rows = Vec::new();
        for pi in irreps {
            let model = ctx.model(pi)?;
            let ev = BesselEval::new(&ctx.d, &g.classes, &g.table, pi, &psi, &units);
            let b1 = ev.eval(&ctx.d.identity());
            let dev = points.iter().map(|x| (ev.eval(x) / b1 - model.bessel_value(&ctx.d, x)).norm()).fold(0.0, f64::max);
            let mut row = Row::bound(format!("closed form = model [pi={pi}]"), "model-oracle", dev, ctx.config.zero_tol);
            if sampled {
                row = row.with_note(format!("{} sampled elements, seed {}", points.len(), ctx.config.seed));
            }
            rows.push(row);
        }
        Ok(rows)
    })
}

/// Cross-tabulates `G(F)`-distinction against `χ ∘ σ₀ = conj χ` over all
/// irreducibles of `G(E)`; informational only.
pub fn cross_tabulate(ctx: &Context) -> Vec<Row> {
    guarded("distinction cross-tabulation", "distinction-crosstab", || {
        let d = &ctx.d;
        let g = ctx.ge_data()?;
        let gf = ctx.gf()?;
        let cl = &g.classes;
        let class_counts = {
            let mut counts = vec![0usize; cl.len()];
            for h in gf.iter() {
                counts[cl.index_of(h).expect("G(F) ⊂ G(E)")] += 1;
            }
            counts
        };
        let moved: Vec<usize> = cl.reps.iter().map(|r| cl.index_of(&d.sigma0(r)).expect("σ₀ preserves G(E)")).collect();
        let tol = ctx.config.tol;
        let mut agree = 0;
        let mut findings = Vec::new();
        for (i, chi) in g.table.chars.iter().enumerate() {
            let dim: Complex64 =
                class_counts.iter().zip(chi).map(|(&n, v)| v * n as f64).sum::<Complex64>() / gf.len() as f64;
            let distinguished = dim.norm() > tol;
            let self_dual = (0..cl.len()).all(|k| (chi[moved[k]] - chi[k].conj()).norm() <= tol);
            if distinguished == self_dual {
                agree += 1;
            } else {
                findings.push(format!("{i}:{}{}", distinguished as u8, self_dual as u8));
            }
        }
        let mut row = Row::exact("distinguished iff conjugate-dual", "distinction-crosstab", agree, g.table.len() as i64)
            .informational();
        if !findings.is_empty() {
            row = row.with_note(format!("disagreements (pi:distinguished,conjugate-dual): {}", findings.join(" ")));
        }
        Ok(vec![row])
    })
}
