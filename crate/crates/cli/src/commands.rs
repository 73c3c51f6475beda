use std::io::Read;
use std::path::Path;

use knotcalc_core::bounds::{
    bound_constants, cone_inequality, critical_cone_order, critical_geodesic_length, global_bounds, tube_inequality,
};
use knotcalc_core::handles::{bounded_cycle_generators, torsion_bound_check, weighted_area, HandleComplex};
use knotcalc_core::jsj::{
    canonical_form, desatellite, enumerate_shapes, piece_stats, validate_tree, winding_divisibility, DecoratedTree,
    EnumerationBounds, HyperbolicCatalog,
};
use knotcalc_core::lattice::{find_zeta, phi_zeta, quotient_image, ExtendedLatticeElement, Vec2};
use knotcalc_core::linalg::{
    bounded_kernel_basis, rational_kernel_basis, same_rational_span, smith_normal_form, to_rational, torsion_orders,
};
use knotcalc_core::presentation::Presentation;
use knotcalc_core::scalar::{format_rational, parse_rational, IntervalCtx};
use knotcalc_core::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::report::{big, bigs, core, real, Failure, Report};

/// `-` is stdin, an existing path is read as a file, anything else is the
/// literal input.
pub fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: line {} column {}: {e}", e.line(), e.column())))
}

pub fn load_catalog(path: Option<&str>) -> Result<HyperbolicCatalog, Failure> {
    let Some(path) = path else {
        return Ok(HyperbolicCatalog::default());
    };
    let cat: HyperbolicCatalog = parse_json("catalog", &read_source(path)?)?;
    cat.ensure_valid().map_err(core)?;
    Ok(cat)
}

fn load_tree(arg: &str) -> Result<DecoratedTree, Failure> {
    let t: DecoratedTree = parse_json("tree", &read_source(arg)?)?;
    Ok(t.normalized())
}

fn load_matrix(arg: &str) -> Result<IntMatrix, Failure> {
    parse_json("matrix", &read_source(arg)?)
}

fn load_presentation(arg: &str) -> Result<Presentation, Failure> {
    Presentation::parse(read_source(arg)?.trim()).map_err(core)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn plen(r: &mut Report, input: &str) -> Result<(), Failure> {
    let p = load_presentation(input)?;
    r.input("presentation", p.to_string());
    let lens: Vec<usize> = p.relators().iter().map(|w| w.len()).collect();
    r.output("generators", p.generators().len());
    r.output("relators", lens.len());
    r.output("relator_lengths", json!(lens));
    r.output("length", p.length());
    r.output("triangular", lens.iter().all(|&l| l == 2 || l == 3));
    Ok(())
}

pub fn triangulate(r: &mut Report, input: &str) -> Result<(), Failure> {
    let p = load_presentation(input)?;
    r.input("presentation", p.to_string());
    let t = p.triangularize();
    let tp = t.presentation();
    r.output("presentation", tp.to_string());
    r.output("generators", tp.generators().len());
    r.output("relators", tp.relators().len());
    r.output("length", tp.length());
    r.certify("every relator has length 2 or 3", tp.relators().iter().all(|w| w.len() == 2 || w.len() == 3))?;
    r.certify("presentation length preserved", tp.length() == p.length() && t.length() == p.length())?;
    let before = torsion_orders(&p.abelianization_matrix::<BigInt>());
    let after = torsion_orders(&tp.abelianization_matrix::<BigInt>());
    r.output("abelianization", json!({ "free_rank": after.free_rank, "torsion": bigs(&after.orders) }));
    r.certify("abelianization invariant factors unchanged", before == after)
}

pub fn snf(r: &mut Report, input: &str) -> Result<(), Failure> {
    let a = load_matrix(input)?;
    r.input("matrix", to_value(&a));
    let sf = smith_normal_form(&a).map_err(core)?;
    sf.verify(&a).map_err(core)?;
    r.certify("left * A * right = diag(d)", true)?;
    r.certify("d_i > 0 and d_i | d_(i+1)", true)?;
    r.certify("det(left) = +-1 and det(right) = +-1", true)?;
    let tor = torsion_orders(&a);
    r.output("invariant_factors", bigs(&sf.d));
    r.output("rank", sf.rank());
    r.output("torsion", bigs(&tor.orders));
    r.output("max_torsion_order", big(&tor.max_order));
    r.output("free_rank", tor.free_rank);
    r.output("left", to_value(&sf.left));
    r.output("right", to_value(&sf.right));
    Ok(())
}

pub fn kernel_basis(r: &mut Report, input: &str) -> Result<(), Failure> {
    let a = load_matrix(input)?;
    r.input("matrix", to_value(&a));
    let fs = bounded_kernel_basis(&a).map_err(core)?;
    r.output("solutions", Value::Array(fs.solutions.iter().map(|u| bigs(u)).collect()));
    r.output("rank", fs.rank);
    r.output("pivot_rows", json!(fs.pivot_rows));
    r.output("pivot_columns", json!(fs.pivot_columns));
    r.output("det_p", big(&fs.det_p));
    r.output("column_condition", a.satisfies_column_condition());
    r.output("entry_bound", fs.entry_bound.as_ref().map_or(Value::Null, big));
    let mut zero = true;
    for u in &fs.solutions {
        zero &= a.mul_vec(u).map_err(core)?.iter().all(Zero::is_zero);
    }
    r.certify("A * u = 0 for all solutions", zero)?;
    let span = same_rational_span(&to_rational(&fs.solutions), &rational_kernel_basis(&a), a.cols());
    r.certify("solutions span the rational kernel", span)?;
    if let Some(bound) = &fs.entry_bound {
        let within = fs.solutions.iter().flatten().all(|x| &x.abs() <= bound);
        r.certify("|u_i| <= 3^p for all solutions", within)?;
        let support = fs.solutions.iter().all(|u| u.iter().filter(|x| !x.is_zero()).count() <= fs.rank + 1);
        r.certify("at most p + 1 nonzero entries per solution", support)?;
    }
    Ok(())
}

pub fn cycles(r: &mut Report, input: &str, torsion: Option<&str>) -> Result<(), Failure> {
    let h: HandleComplex = parse_json("handle complex", &read_source(input)?)?;
    r.input("complex", to_value(&h));
    let diags = h.validate();
    if !diags.is_empty() {
        r.diagnose_all(&diags);
        return Err(Failure::Input("handle complex failed validation".into()));
    }
    let cg = bounded_cycle_generators::<BigInt>(&h).map_err(core)?;
    let a = h.contribution_matrix::<BigInt>().map_err(core)?;
    let mut cycles = Vec::new();
    let mut zero = true;
    for c in &cg.cycles {
        let dense = c.dense(&h).map_err(core)?;
        zero &= a.mul_vec(&dense).map_err(core)?.iter().all(Zero::is_zero);
        let coeffs: serde_json::Map<String, Value> = c.coefficients.iter().map(|(id, v)| (id.clone(), big(v))).collect();
        let area = weighted_area(c, &h).map_err(core)?;
        cycles.push(json!({ "coefficients": coeffs, "weighted_area": format_rational(&area) }));
    }
    r.output("cycles", Value::Array(cycles));
    r.output("rank", cg.rank);
    r.output("entry_bound", big(&cg.entry_bound));
    r.output("total_area", format_rational(&h.total_area()));
    r.certify("every generator is a relative cycle", zero)?;
    let within = cg.cycles.iter().all(|c| c.max_abs() <= cg.entry_bound);
    r.certify("|u_i| <= 3^p for all generators", within)?;
    r.certify("generators span the rational cycle space", true)?;
    if let Some(path) = torsion {
        let rows = load_matrix(path)?;
        r.input("torsion_rows", to_value(&rows));
        let tb = torsion_bound_check(&h, &rows).map_err(core)?;
        r.output(
            "torsion",
            json!({ "max_order": big(&tb.max_order), "bound": big(&tb.bound), "wide_rows": tb.wide_rows }),
        );
        r.certify("max torsion order <= 2 * 3^t", tb.ok)?;
    }
    Ok(())
}

fn vec2(v: &Vec2<BigInt>) -> Value {
    json!([big(&v.x), big(&v.y)])
}

pub fn zeta(r: &mut Report, omega: &str, m: &BigInt, t: &BigInt) -> Result<(), Failure> {
    let parts: Vec<&str> = omega.split(',').map(str::trim).collect();
    let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Failure::Input(format!("omega component {s:?} is not an integer")));
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Input(format!("omega must be two integers A,B, got {omega:?}")));
    };
    let omega = Vec2::new(parse(a)?, parse(b)?);
    r.input("omega", vec2(&omega));
    r.input("m", big(m));
    r.input("t", big(t));
    let choice = find_zeta(&omega, m, t).map_err(core)?;
    choice.verify().map_err(core)?;
    r.certify("zeta is primitive", true)?;
    r.certify("omega + zeta = 0 mod m componentwise", true)?;
    let e = ExtendedLatticeElement::omega_over_m(omega.clone(), m.clone()).map_err(core)?;
    let phi = phi_zeta(&e, &choice).map_err(core)?;
    let phi_omega = quotient_image(&omega, &choice.zeta);
    r.output("zeta", vec2(&choice.zeta));
    r.output("lift", vec2(&choice.lift()));
    r.output("bezout", json!([big(&choice.x), big(&choice.y)]));
    r.output("phi_omega_over_m", big(&phi));
    r.output("phi_omega", big(&phi_omega));
    r.certify("m * phi(omega / m) = phi(omega)", m * &phi == phi_omega)
}

pub struct EnumArgs {
    pub max_vertices: usize,
    pub max_p: i64,
    pub max_q: i64,
    pub max_r: Option<i64>,
    pub cable_cap: Option<BigInt>,
    pub trees: bool,
}

pub fn enum_knots(r: &mut Report, args: &EnumArgs, cat: &HyperbolicCatalog) -> Result<(), Failure> {
    let max_r = args.max_r.unwrap_or(args.max_vertices as i64);
    let mut bounds = EnumerationBounds::new(args.max_vertices, args.max_p, args.max_q, max_r);
    if let Some(cap) = &args.cable_cap {
        // A cap beyond i64 cannot bind.
        if let Ok(c) = i64::try_from(cap) {
            bounds = bounds.with_cable_cap(c);
        }
    }
    r.input("max_vertices", args.max_vertices);
    r.input("max_p", args.max_p);
    r.input("max_q", args.max_q);
    r.input("max_r", max_r);
    r.input("cable_cap", args.cable_cap.as_ref().map_or(Value::Null, big));
    r.input("catalog_size", cat.entries.len());
    let shapes = enumerate_shapes(&bounds, cat).map_err(core)?;
    let mut valid = true;
    let mut forms = Vec::with_capacity(shapes.len());
    let mut trees = Vec::new();
    for (enc, shape) in &shapes {
        let t = shape.to_tree();
        valid &= validate_tree(&t, cat).is_empty();
        valid &= canonical_form(&t).map_err(core)? == *enc;
        forms.push(enc.clone());
        if args.trees {
            trees.push(to_value(&t));
        }
    }
    r.output("count", shapes.len());
    r.output("canonical_forms", json!(forms));
    if args.trees {
        r.output("trees", Value::Array(trees));
    }
    r.certify("every tree validates and matches its canonical form", valid)?;
    r.certify("canonical forms pairwise distinct", forms.windows(2).all(|w| w[0] < w[1]))
}

pub fn desatellite_cmd(r: &mut Report, tree: &str, edge: &str, cat: &HyperbolicCatalog) -> Result<(), Failure> {
    let t = load_tree(tree)?;
    r.input("tree", to_value(&t));
    r.input("edge", edge);
    let before = canonical_form(&t).map_err(core)?;
    let out = desatellite(&t, edge).map_err(core)?;
    r.output("canonical_form_before", before);
    r.output("canonical_form", canonical_form(&out).map_err(core)?);
    r.output("tree", to_value(&out));
    let diags = validate_tree(&out, cat);
    if validate_tree(&t, cat).is_empty() {
        r.certify("result validates", diags.is_empty())?;
    }
    Ok(())
}

pub fn validate_cmd(
    r: &mut Report,
    tree: &str,
    plen: Option<u64>,
    rank: Option<u64>,
    cat: &HyperbolicCatalog,
    ctx: &IntervalCtx,
) -> Result<(), Failure> {
    let t = load_tree(tree)?;
    r.input("tree", to_value(&t));
    let diags = validate_tree(&t, cat);
    r.output("valid", diags.is_empty());
    if !diags.is_empty() {
        r.diagnose_all(&diags);
        return Err(Failure::Input(format!("tree has {} validation error(s)", diags.len())));
    }
    r.output("canonical_form", canonical_form(&t).map_err(core)?);
    r.output("vertices", t.vertex_count());
    if let Some(plen) = plen {
        r.input("plen", plen);
        r.input("rank", rank);
        let s = piece_stats(&t, cat, plen, rank, ctx).map_err(core)?;
        if !s.volume_decided {
            r.diagnose("warning", None, "volume comparison undecided at working precision");
        }
        r.output("stats", to_value(&s));
    }
    Ok(())
}

pub fn winding(r: &mut Report, tree: &str, node: &str) -> Result<(), Failure> {
    let t = load_tree(tree)?;
    r.input("tree", to_value(&t));
    r.input("node", node);
    let w = winding_divisibility(&t, node).map_err(core)?;
    r.output("divisor", big(&w.divisor));
    r.output("hyperbolic_edges", w.hyperbolic_edges);
    r.output("path_length", w.path_length);
    Ok(())
}

pub fn parse_positive(name: &str, text: Option<&str>) -> Result<Option<BigRational>, Failure> {
    let Some(text) = text else { return Ok(None) };
    let v = parse_rational(text).map_err(core)?;
    if !v.is_positive() {
        return Err(Failure::Input(format!("{name} must be positive, got {text}")));
    }
    Ok(Some(v))
}

pub fn bounds(
    r: &mut Report,
    plen: u64,
    vol: Option<&str>,
    eps: Option<&str>,
    ctx: &IntervalCtx,
) -> Result<(), Failure> {
    let vol = parse_positive("vol", vol)?;
    let eps = parse_positive("eps", eps)?;
    r.input("plen", plen);
    r.input("vol", vol.as_ref().map(format_rational));
    r.input("eps", eps.as_ref().map(format_rational));
    r.input("precision", ctx.digits());
    let g = global_bounds(plen, vol.as_ref(), eps.as_ref(), ctx).map_err(core)?;
    let c = bound_constants(plen);
    r.output("T", big(&c.t));
    r.output("A_over_pi", big(&c.a_over_pi));
    r.output("cable_q_cutoff", big(&c.t));
    let mut vb = real(&g.volume_bound, ctx);
    vb["exact"] = json!(format!("{plen}*pi"));
    r.output("volume_bound", vb);
    r.output("degree_bound", g.degree_bound.as_ref().map_or(Value::Null, big));
    r.output("tube_r_max", real(&g.tube_r_max, ctx));
    r.output("diam_thick", g.diam_thick.as_ref().map_or(Value::Null, |v| real(v, ctx)));
    r.output("diam_total", g.diam_total.as_ref().map_or(Value::Null, |v| real(v, ctx)));

    let cl = critical_geodesic_length(plen, ctx).map_err(core)?;
    r.output(
        "critical_geodesic_length",
        json!({
            "below": cl.below.lower_decimal(ctx.digits() as usize, ctx),
            "above": cl.above.upper_decimal(ctx.digits() as usize, ctx),
            "approx": cl.estimate().mid_decimal(17, ctx),
            "domain_end": cl.at_domain_end,
        }),
    );
    if !cl.at_domain_end {
        let holds = tube_inequality(&cl.below, plen, ctx) == Some(true);
        let fails = tube_inequality(&cl.above, plen, ctx) == Some(false);
        r.certify("pi sinh^2 r(l) > A holds below l* and fails above", holds && fails)?;
    }
    let q = critical_cone_order(plen, ctx).map_err(core)?;
    r.output("critical_cone_order", big(&q));
    let work = ctx.at_least_bits(c.a_over_pi.bits() as usize + 128);
    let ok = cone_inequality(&q, plen, &work) == Some(true) && cone_inequality(&(&q - 1), plen, &work) == Some(false);
    r.certify("cone inequality false at q* - 1 and true at q*", ok)?;
    r.output(
        "formulas",
        json!({
            "T": "2 * 3^n",
            "A": "27^n (9 n^2 + 4 n) pi",
            "volume_bound": "pi * plen",
            "degree_bound": "floor(pi * plen / vol)",
            "tube_radius": "sinh^2 r = sqrt(1 - c) / c - 1/2, c = 4 pi l / sqrt 3",
            "cone_radius": "cosh r = 1 / (2 sin(pi / q))",
            "critical_geodesic_length": "sup l with pi sinh^2 r(l) > A(plen)",
            "critical_cone_order": "min q with pi (1 / (4 sin^2(pi / q)) - 1) > A(plen)",
            "diam_thick": "2 eps plen / (sinh eps - eps)",
            "tube_r_max": "arcsinh sqrt(A(plen) / pi)",
            "diam_total": "diam_thick + 2 (eps + 2 tube_r_max)",
        }),
    );
    Ok(())
}
