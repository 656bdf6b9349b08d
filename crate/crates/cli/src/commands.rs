use std::path::Path;

use serde_json::{json, Value};
use tangle_core::asymptotics::{conjectured_exponent, fit_tail, reference_constants};
use tangle_core::coloured::{renormalize_with, tau_one_crosschecks, BareCorrelators, TauSeries};
use tangle_core::flype::FlypeState;
use tangle_core::loops::knot_series;
use tangle_core::oracle::{enumerate_correlator, enumerate_free_energy, VertexKind};
use tangle_core::patterns::cache::{to_json, WeingartenCache};
use tangle_core::patterns::LinkPattern;
use tangle_core::rational::{format_q, parse_q};
use tangle_core::virtual_genus::VirtualGenus;
use tangle_core::{flype, planar, Error, Series, Q};

use crate::output::Report;
use crate::{
    AsymptoticsArgs, ColouredArgs, Failure, FitSeries, OracleArgs, OracleModel, OrderArgs, TauModeArg, VirtualArgs,
    WeingartenArgs,
};

fn parse_tau(tau: &Option<String>) -> Result<Q, Failure> {
    let t = tau.as_deref().ok_or_else(|| Failure::usage("--tau is required with --tau-mode fixed"))?;
    parse_q(t).map_err(|e| Failure::usage(format!("bad --tau {t:?}: {e}")))
}

pub fn planar(a: &OrderArgs) -> Result<Report, Failure> {
    if a.order < 1 {
        return Err(Failure::usage("planar needs --order >= 1"));
    }
    let n = a.order;
    let ren = planar::renormalize_t(n)?;
    let mut r = Report::new("planar").param("order", n);
    r.series("bare_free_energy", planar::free_energy(&Series::one(n), n)?);
    r.series("t", ren.t().clone());
    r.series("gamma", ren.gamma()?);
    r.series("free_energy", ren.free_energy()?);
    Ok(r)
}

pub fn flype(a: &OrderArgs) -> Result<Report, Failure> {
    let st = FlypeState::compute(a.order)?;
    let mut r = Report::new("flype").param("order", a.order);
    r.series("a", st.a.clone());
    r.series("g0", st.g0.clone());
    r.series("gamma_tilde", st.gamma_tilde.clone());
    r.series("gamma_6", planar::gamma_2l(3, &st.a)?);
    r.series("gamma_8", planar::gamma_2l(4, &st.a)?);
    Ok(r)
}

pub fn virtual_tangles(a: &VirtualArgs) -> Result<Report, Failure> {
    if a.order + 1 > a.oracle_max_order {
        return Err(Error::Infeasible { order: a.order + 1, bound: a.oracle_max_order }.into());
    }
    let v = VirtualGenus::compute(a.order, a.genus_max)?;
    let mut r = Report::new("virtual").param("order", a.order).param("genus_max", a.genus_max);
    for h in 0..=a.genus_max {
        r.series(format!("gamma_h{h}"), v.gamma_h(h)?);
        r.series(format!("gamma_tilde_h{h}"), v.flype_quotient_h(h)?);
    }
    r.extra("t", serde_json::to_value(v.t()).map_err(Error::from)?);
    Ok(r)
}

/// The report and the verdict of `--check-tau1`.
pub fn coloured(a: &ColouredArgs) -> Result<(Report, Result<(), Failure>), Failure> {
    let tau = match a.tau_mode {
        TauModeArg::Generic => None,
        TauModeArg::Fixed => Some(parse_tau(&a.tau)?),
        TauModeArg::Zero => return Err(Failure::usage("the coloured renormalization divides by tau; use `knots` for tau -> 0")),
    };
    if a.check_tau1 && a.kmax < 3 {
        return Err(Failure::usage("--check-tau1 needs --kmax 3"));
    }
    let kmax = a.kmax as usize;
    let state = renormalize_with(BareCorrelators::compute(a.order, kmax)?, a.order)?;
    let classes = state.flype_classes(kmax)?;
    let mut r = Report::new("coloured")
        .param("order", a.order)
        .param("kmax", kmax)
        .param("tau", tau.as_ref().map(format_q).unwrap_or_else(|| "generic".into()));
    let mut named: Vec<(String, &TauSeries)> =
        vec![("g1".into(), &state.g1), ("g2".into(), &state.g2), ("t".into(), &state.t)];
    let mut keys: Vec<&LinkPattern> = classes.keys().collect();
    keys.sort_by_key(|p| (p.k(), p.to_string()));
    named.extend(keys.into_iter().map(|p| (format!("Ic{p}"), &classes[p])));
    for (name, s) in named {
        match &tau {
            Some(t) => r.series(name, s.map(|p| p.eval(t))),
            None => r.rich_series(name, s),
        }
    }
    let mut verdict = Ok(());
    if a.check_tau1 {
        let rep = tau_one_crosschecks(&state, &classes)?;
        let pass = rep.holds();
        r.extra(
            "check_tau1",
            json!({
                "status": if pass { "PASS" } else { "FAIL" },
                "four_point": rep.four_point.to_json(),
                "gamma_tilde": rep.gamma_tilde.to_json(),
                "six_point": rep.six_point.to_json(),
                "gamma_6": rep.gamma_six.to_json(),
            }),
        );
        if !pass {
            verdict = Err(Failure::check("tau = 1 identities do not hold"));
        }
    }
    Ok((r, verdict))
}

pub fn knots(a: &OrderArgs) -> Result<Report, Failure> {
    let mut r = Report::new("knots").param("order", a.order);
    r.series("two_point", knot_series(a.order)?);
    Ok(r)
}

pub fn oracle(a: &OracleArgs) -> Result<Report, Failure> {
    if a.order > a.oracle_max_order {
        return Err(Error::Infeasible { order: a.order, bound: a.oracle_max_order }.into());
    }
    let kind = match a.model {
        OracleModel::Hermitean => Some(VertexKind::Hermitean),
        OracleModel::Complex => Some(VertexKind::Complex),
        OracleModel::Coloured => None,
    };
    let mut r = Report::new("oracle").param("order", a.order);
    match kind {
        Some(kind) => {
            let f = enumerate_free_energy(kind, a.order)?;
            r = r.param("model", f.model.clone());
            for h in 0..=f.max_genus() {
                r.series(format!("free_energy_h{h}"), f.stratum(h));
            }
        }
        None => {
            let pi = LinkPattern::parse(&a.pattern).map_err(|e| Failure::usage(e.to_string()))?;
            let e = enumerate_correlator(&pi, a.order, a.two_coupling)?;
            r = r.param("model", "coloured").param("pattern", pi.to_string()).param("two_coupling", a.two_coupling);
            let rows: Vec<Value> = e
                .iter()
                .map(|row| Value::Array(row.iter().map(|p| json!(p.to_strings())).collect()))
                .collect();
            r.extra("coefficients", Value::Array(rows));
        }
    }
    Ok(r)
}

pub fn asymptotics(a: &AsymptoticsArgs) -> Result<Report, Failure> {
    let n = a.order;
    let s = match a.series {
        FitSeries::BareF => planar::free_energy(&Series::one(n), n)?,
        FitSeries::RenormalizedF => planar::renormalize_t(n)?.free_energy()?,
        FitSeries::GammaTilde => flype::gamma_tilde(n)?,
        FitSeries::Knots => knot_series(n)?,
    };
    let fit = fit_tail(s.coeffs(), a.window)?;
    let name = format!("{:?}", a.series).to_lowercase();
    let mut r = Report::new("asymptotics").param("series", name.clone()).param("order", n).param("window", a.window);
    r.extra("fit", serde_json::to_value(&fit).map_err(Error::from)?);
    r.extra("reference_constants", serde_json::to_value(reference_constants()).map_err(Error::from)?);
    if let Some(t) = &a.tau {
        let tau = parse_q(t).map_err(|e| Failure::usage(format!("bad --tau {t:?}: {e}")))?;
        r.extra("conjecture", serde_json::to_value(conjectured_exponent(&tau)?).map_err(Error::from)?);
    }
    r.series(name, s);
    Ok(r)
}

pub fn weingarten(a: &WeingartenArgs, cache_dir: Option<&Path>) -> Result<Report, Failure> {
    let cache = cache_dir.map(WeingartenCache::new).unwrap_or_else(WeingartenCache::in_memory);
    let table = match a.tau_mode {
        TauModeArg::Generic => to_json(&cache.generic(a.k)?),
        TauModeArg::Fixed => to_json(&cache.fixed(a.k, &parse_tau(&a.tau)?)?),
        TauModeArg::Zero => to_json(&cache.tau_zero(a.k)?),
    };
    let mut r = Report::new("weingarten").param("k", a.k);
    r.extra("table", table);
    Ok(r)
}
