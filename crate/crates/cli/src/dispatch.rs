//! Turns scenario parameters into calls on the core modules and collects the
//! results as JSON. Every section of `params` is optional; only the sections
//! present are computed.

use connloc_core::cohomology::{
    chase, connection_exists, d1_rank, fiber_dimension, full_matrix_basis, hypercoh_dims, upper_triangular_basis,
    HyperCohDims, HyperCohInput, SheafDescriptor,
};
use connloc_core::deform::{build_cocycle, congruence_check, phi_cochain, wp_series};
use connloc_core::diffop::{filtration_order, lambda_membership, parse_and_normalize, LambdaKind, LambdaVariant};
use connloc_core::exact::{format_rational, int as rint, Coeff, Mat2, MPoly, Rational};
use connloc_core::kuranishi::{
    count_points_mod_p, fiber_multiplicity, ob2, orbit_separation, psi, quadratic_form_rank, quadrics,
    relation_certificate, segre_check, FiberDirection, MatPair, DEFAULT_ENUM_BUDGET,
};
use connloc_core::stability::{implication_chain_check, reduced_poly, stability_verdict, Sheaf, SheafNumerics};
use serde_json::{json, Map, Value};

use crate::scenario::{array, boolean, field, int, rational, rationals, uint, Kind};
use crate::CliError;

/// Name of the variable capping the point-count enumeration.
pub const ENUM_BUDGET_VAR: &str = "CONNLOC_ENUM_BUDGET";

pub fn enum_budget() -> Result<u128, CliError> {
    match std::env::var(ENUM_BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("{ENUM_BUDGET_VAR} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

pub fn dispatch(kind: Kind, params: &Value) -> Result<Value, CliError> {
    let empty = Value::Object(Map::new());
    let params = if params.is_null() { &empty } else { params };
    match kind {
        Kind::Cohomology => cohomology(params),
        Kind::Stability => stability(params),
        Kind::Diffop => diffop(params),
        Kind::Kuranishi => kuranishi(params),
        Kind::Git => git(params),
        Kind::Deform => deform(params),
    }
}

fn r(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn p(f: &MPoly) -> Value {
    Value::String(f.to_string())
}

fn mat<C: Coeff>(m: &Mat2<C>, show: impl Fn(&C) -> Value) -> Value {
    json!([[show(m.get(0, 0)), show(m.get(0, 1))], [show(m.get(1, 0)), show(m.get(1, 1))]])
}

fn name(item: &Value) -> Result<String, CliError> {
    field(item, "name")?
        .as_str()
        .map(str::to_owned)
        .ok_or_else(|| CliError::Invalid("`name` must be a string".into()))
}

/// Runs `f` on every named entry of `params[key]`, keyed by name.
fn named(
    params: &Value,
    key: &str,
    out: &mut Map<String, Value>,
    f: impl Fn(&Value) -> Result<Value, CliError>,
) -> Result<(), CliError> {
    let Some(items) = params.get(key) else { return Ok(()) };
    let items = items.as_array().ok_or_else(|| CliError::Invalid(format!("`{key}` must be an array")))?;
    let mut section = Map::new();
    for item in items {
        let n = name(item)?;
        let v = f(item).map_err(|e| e.context(&format!("{key} `{n}`")))?;
        if section.insert(n.clone(), v).is_some() {
            return Err(CliError::Invalid(format!("{key}: duplicate name `{n}`")));
        }
    }
    out.insert(key.to_owned(), Value::Object(section));
    Ok(())
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}

fn dims(d: &HyperCohDims) -> Value {
    json!({ "H0": d.hh0, "H1": d.hh1, "H2": d.hh2, "euler": d.euler_characteristic() })
}

fn cohomology(params: &Value) -> Result<Value, CliError> {
    let mut out = Map::new();
    named(params, "hypercoh", &mut out, |item| {
        let input: HyperCohInput = from_value(item, "hypercoh input")?;
        let full = hypercoh_dims(&input)?;
        let mut v = dims(&full);
        if let Some(tp) = item.get("trace_part") {
            let trace: HyperCohInput = from_value(tp, "trace_part")?;
            let traceless = hypercoh_dims(&input.traceless(trace)?)?;
            let differs: Vec<&str> = [("H0", full.hh0, traceless.hh0), ("H1", full.hh1, traceless.hh1), ("H2", full.hh2, traceless.hh2)]
                .into_iter()
                .filter(|(_, a, b)| a != b)
                .map(|(k, _, _)| k)
                .collect();
            v["traceless"] = dims(&traceless);
            v["trace_sensitive"] = json!(differs);
        }
        Ok(v)
    })?;
    named(params, "descriptors", &mut out, |item| {
        let d: SheafDescriptor = from_value(field(item, "descriptor")?, "descriptor")?;
        let c = chase(&d)?;
        Ok(json!({ "h0": c.h0, "h1": c.h1, "degree": d.degree() }))
    })?;
    named(params, "d1_rank", &mut out, |item| {
        let rows = array(item, "A")?;
        if rows.len() != 2 {
            return Err(CliError::Invalid("A must have two rows".into()));
        }
        let [a, b] = rationals::<2>(&rows[0], "A row")?;
        let [c, d] = rationals::<2>(&rows[1], "A row")?;
        let domain = match item.get("domain").and_then(Value::as_str).unwrap_or("full") {
            "full" => full_matrix_basis(),
            "upper_triangular" => upper_triangular_basis(),
            other => return Err(CliError::Invalid(format!("unknown domain `{other}`"))),
        };
        Ok(json!(d1_rank(&Mat2::new(a, b, c, d), &domain)?))
    })?;
    named(params, "fiber_dimension", &mut out, |item| {
        Ok(json!(fiber_dimension(uint(item, "r")?, uint(item, "g")?, uint(item, "deg_d")?)?))
    })?;
    named(params, "connection_exists", &mut out, |item| {
        Ok(json!(connection_exists(
            uint(item, "r")?,
            int(item, "d")?,
            uint(item, "deg_d")?,
            boolean(item, "semistable")?
        )))
    })?;
    Ok(Value::Object(out))
}

fn numerics(v: &Value, genus: u32, polarization: u32) -> Result<Sheaf, CliError> {
    let n = SheafNumerics::new(rational(field(v, "rank")?, "rank")?, rational(field(v, "degree")?, "degree")?, genus, polarization)?;
    Ok(Sheaf::new(n))
}

fn stability(params: &Value) -> Result<Value, CliError> {
    let small = |key: &str| -> Result<u32, CliError> {
        u32::try_from(uint(params, key)?).map_err(|_| CliError::Invalid(format!("`{key}` is too large")))
    };
    let (genus, polarization) = (small("genus")?, small("polarization")?);
    let mut out = Map::new();
    named(params, "cases", &mut out, |item| {
        let e = numerics(field(item, "sheaf")?, genus, polarization)?;
        let subs: Vec<Sheaf> = match item.get("subobjects") {
            Some(_) => array(item, "subobjects")?
                .iter()
                .map(|s| numerics(s, genus, polarization))
                .collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        let report = stability_verdict(&e, &subs)?;
        let chain = implication_chain_check(&e, &subs)?;
        Ok(json!({
            "hilbert_poly": e.hilbert.to_string(),
            "reduced_poly": reduced_poly(&e.hilbert)?.to_string(),
            "slope": r(&e.numerics.slope),
            "hilbert_verdict": report.hilbert,
            "hilbert_witness": report.hilbert_witness,
            "slope_verdict": report.slope,
            "slope_witness": report.slope_witness,
            "vacuous": report.vacuous,
            "chain": {
                "mu_stable": chain.mu_stable,
                "stable": chain.stable,
                "semistable": chain.semistable,
                "mu_semistable": chain.mu_semistable,
                "holds": chain.holds(),
            },
        }))
    })?;
    Ok(Value::Object(out))
}

fn expr(item: &Value) -> Result<String, CliError> {
    field(item, "expr")?
        .as_str()
        .map(str::to_owned)
        .ok_or_else(|| CliError::Invalid("`expr` must be a string".into()))
}

fn variant(v: &Value) -> Result<LambdaVariant, CliError> {
    let kind = match field(v, "kind")?.as_str() {
        Some("full") => LambdaKind::Full,
        Some("logarithmic") => LambdaKind::Logarithmic,
        Some("meromorphic") => {
            let d = u32::try_from(uint(v, "order")?).map_err(|_| CliError::Invalid("`order` is too large".into()))?;
            LambdaKind::Meromorphic(d)
        }
        _ => return Err(CliError::Invalid("variant kind must be full, meromorphic or logarithmic".into())),
    };
    let integrable = match v.get("integrable") {
        Some(_) => boolean(v, "integrable")?,
        None => true,
    };
    Ok(LambdaVariant::new(kind, integrable)?)
}

fn diffop(params: &Value) -> Result<Value, CliError> {
    let mut out = Map::new();
    named(params, "normalize", &mut out, |item| Ok(json!(parse_and_normalize(&expr(item)?)?.to_string())))?;
    named(params, "filtration", &mut out, |item| Ok(json!(filtration_order(&parse_and_normalize(&expr(item)?)?))))?;
    named(params, "membership", &mut out, |item| {
        let a = parse_and_normalize(&expr(item)?)?;
        let v = variant(field(item, "variant")?)?;
        Ok(match lambda_membership(&a, &v) {
            Some(cert) => json!({
                "member": true,
                "certificate": cert.to_string(),
                "certificate_expands": cert.expand() == a,
            }),
            None => json!({ "member": false, "certificate": null, "certificate_expands": null }),
        })
    })?;
    Ok(Value::Object(out))
}

fn enabled(params: &Value, key: &str) -> Result<bool, CliError> {
    match params.get(key) {
        None => Ok(false),
        Some(_) => boolean(params, key),
    }
}

// positions of x0 and y0 in the pair ring
const X0: usize = 0;
const Y0: usize = 4;

/// The obstruction map on the symbolic pair.
pub fn ob2_symbolic() -> Value {
    let o = ob2(&MatPair::symbolic());
    let no_diagonal = o.commutator.entries().all(|e| !e.involves(X0) && !e.involves(Y0));
    json!({
        "commutator": mat(&o.commutator, p),
        "q": o.q_values.iter().map(p).collect::<Vec<_>>(),
        "matches_quadrics": o.matches_quadrics,
        "free_of_x0_y0": no_diagonal,
        "quadric_ranks": quadrics().iter().map(quadratic_form_rank).collect::<Vec<_>>(),
    })
}

pub fn relation() -> Result<Value, CliError> {
    let c = relation_certificate()?;
    Ok(json!({
        "lhs": p(&c.lhs),
        "rhs": p(&c.rhs),
        "identity_holds": c.identity_holds,
        "groebner_basis": c.groebner_basis.iter().map(p).collect::<Vec<_>>(),
        "basis_verified": c.basis_verified,
        "remainder": p(&c.remainder),
    }))
}

pub fn point_count(prime: u64, budget: u128) -> Result<Value, CliError> {
    let c = count_points_mod_p(prime, budget)?;
    Ok(json!({
        "proportional": c.proportional,
        "literal_quadrics": c.literal_quadrics,
        "literal_zeros_proportional": c.literal_zeros_proportional,
        "closed_form": c.closed_form,
        "matches_closed_form": c.proportional == c.closed_form,
    }))
}

fn kuranishi(params: &Value) -> Result<Value, CliError> {
    let mut out = Map::new();
    if enabled(params, "ob2")? {
        out.insert("ob2".into(), ob2_symbolic());
    }
    named(params, "ob2_at", &mut out, |item| {
        let o = ob2(&MatPair::from_values(&rationals::<8>(field(item, "values")?, "values")?));
        Ok(json!({
            "commutator": mat(&o.commutator, r),
            "q": o.q_values.iter().map(r).collect::<Vec<_>>(),
            "matches_quadrics": o.matches_quadrics,
        }))
    })?;
    named(params, "segre", &mut out, |item| {
        let xi = rationals::<3>(field(item, "xi")?, "xi")?;
        let lam = rationals::<2>(field(item, "lambda")?, "lambda")?;
        serde_json::to_value(segre_check(&xi, &lam)).map_err(|e| CliError::Internal(e.to_string()))
    })?;
    if params.get("count").is_some() {
        let budget = enum_budget()?;
        let mut section = Map::new();
        for v in array(params, "count")? {
            let prime = v.as_u64().ok_or_else(|| CliError::Invalid("`count` entries must be primes".into()))?;
            section.insert(prime.to_string(), point_count(prime, budget)?);
        }
        out.insert("count".into(), Value::Object(section));
    }
    if enabled(params, "relation")? {
        out.insert("relation".into(), relation()?);
    }
    Ok(Value::Object(out))
}

pub fn orbits(z1: &Rational, z2: &Rational) -> Value {
    let o = orbit_separation(z1, z2);
    let show = |c: &connloc_core::kuranishi::Surd| Value::String(c.to_string());
    json!({
        "count": o.count,
        "z_values": o.z_values.iter().map(show).collect::<Vec<_>>(),
        "z_squared": r(&o.z_squared),
        "verified": o.verified,
        "representatives": o
            .representatives
            .iter()
            .map(|m| json!({ "T": mat(&m.t, show), "Y": mat(&m.y, show) }))
            .collect::<Vec<_>>(),
    })
}

pub fn fiber(direction: FiberDirection) -> Result<Value, CliError> {
    let f = fiber_multiplicity(direction)?;
    Ok(json!({
        "restricted_generator": p(&f.restricted_generator),
        "groebner_basis": f.groebner_basis.iter().map(p).collect::<Vec<_>>(),
        "multiplicity": f.multiplicity,
        "reduced_fiber": f.reduced_fiber.iter().map(p).collect::<Vec<_>>(),
        "reduced_fiber_dimension": f.reduced_fiber_dimension,
    }))
}

pub fn psi_at(values: &[Rational; 8]) -> Value {
    let i = psi(&MatPair::from_values(values));
    json!({ "z": r(&i.z), "z1": r(&i.z1), "z2": r(&i.z2) })
}

pub fn parse_direction(s: &str) -> Result<FiberDirection, CliError> {
    match s {
        "z2" => Ok(FiberDirection::Z2),
        "z1" => Ok(FiberDirection::Z1),
        _ => Err(CliError::Invalid(format!("fiber direction must be z1 or z2, got `{s}`"))),
    }
}

fn git(params: &Value) -> Result<Value, CliError> {
    let mut out = Map::new();
    named(params, "psi", &mut out, |item| Ok(psi_at(&rationals::<8>(field(item, "values")?, "values")?)))?;
    named(params, "orbits", &mut out, |item| {
        Ok(orbits(&rational(field(item, "z1")?, "z1")?, &rational(field(item, "z2")?, "z2")?))
    })?;
    if params.get("fiber").is_some() {
        let mut section = Map::new();
        for v in array(params, "fiber")? {
            let s = v.as_str().ok_or_else(|| CliError::Invalid("`fiber` entries must be strings".into()))?;
            section.insert(s.to_owned(), fiber(parse_direction(s)?)?);
        }
        out.insert("fiber".into(), Value::Object(section));
    }
    if enabled(params, "relation")? {
        out.insert("relation".into(), relation()?);
    }
    Ok(Value::Object(out))
}

/// Weierstrass data, φ-cochains and the cocycle congruence for orders `1..=order`.
pub fn deform_report(order: u32, ztrunc: i32, g2: &Rational, g3: &Rational) -> Result<Value, CliError> {
    let wp = wp_series(g2, g3, ztrunc)?;
    let ode = wp.ode_residual()?;
    let coefficients: Map<String, Value> = (1..=ztrunc / 2)
        .map(|n| Ok((format!("z^{}", 2 * n), r(&wp.coefficient(2 * n)?))))
        .collect::<Result<_, CliError>>()?;
    let mut phi = Map::new();
    for k in 2..=order + 1 {
        let c = phi_cochain(k, &wp)?;
        let diff = c.phi_beta.try_sub(&c.phi_alpha)?;
        let pole_only = diff.terms().map(|(e, q)| (e, q.clone())).collect::<Vec<_>>() == vec![(-(k as i32), rint(1))];
        phi.insert(k.to_string(), json!({ "alpha_regular": c.phi_alpha.is_regular(), "difference_is_pole": pole_only }));
    }
    let cocycle = build_cocycle(order, ztrunc, &wp)?;
    let mut residual = Map::new();
    for k in 1..=order {
        let rep = congruence_check(&cocycle, k)?;
        residual.insert(
            k.to_string(),
            json!({
                "vanishes": rep.vanishes(),
                "raw_nonzero": rep.raw_nonzero,
                "reduced_nonzero": rep.reduced_nonzero,
                "z_range": [rep.z_range.0, rep.z_range.1],
                "first_nonzero": rep.first_nonzero.map(|(i, j, e, rem)| json!({ "row": i, "column": j, "z": e, "remainder": p(&rem) })),
            }),
        );
    }
    Ok(json!({
        "order": order,
        "ztrunc": ztrunc,
        "g2": r(g2),
        "g3": r(g3),
        "wp_coefficients": coefficients,
        "ode_residual_zero": ode.is_zero(),
        "ode_checked_through": ode.order(),
        "phi": phi,
        "residual": residual,
    }))
}

fn deform(params: &Value) -> Result<Value, CliError> {
    let order = u32::try_from(uint(params, "order")?).map_err(|_| CliError::Invalid("`order` is too large".into()))?;
    let ztrunc = i32::try_from(int(params, "ztrunc")?).map_err(|_| CliError::Invalid("`ztrunc` is out of range".into()))?;
    let g2 = rational(field(params, "g2")?, "g2")?;
    let g3 = rational(field(params, "g3")?, "g3")?;
    deform_report(order, ztrunc, &g2, &g3)
}
