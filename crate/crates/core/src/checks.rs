//! The aggregated verification battery behind `verify`: one named check per
//! verified claim, reported in sorted order with stable names.

use crate::error::Result;
use crate::funcfield::{det2, mul2, substitute, Place};
use crate::invariants::surface_invariants;
use crate::normal_form::{default_sphere_bound, expected_sphere, sphere_table};
use crate::presentation::{
    abelianization, admits_square_quotient, dihedral_lifts, gamma_lifts, power_class_table,
    present_gamma, present_lambda, present_lambda_prime, relator_central_in_d, star_quadruple,
    star_solve_half_power_form, star_solve_with, uniform_quotients_check,
};
use crate::quaternion::{
    alpha_nrd_formula, beta_nrd_formula, dihedral_relations_check, gamma_nrd_formula, make_alpha,
    make_beta, neighbour_valuations, nrd, qmul, rho_y, rho_z, Config, QuatElem, TreeGenerator,
};
use crate::square_complex::{
    build_sab, degenerate_fixture, has_double_edge, is_complete_bipartite, link_of,
};
use crate::structure::{expected_local_order, local_groups, predict_local_groups};
use crate::vh_core::{check_vh_axioms, solve_forward_elems, RelationTable, VHData};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

fn rec(name: &str, ok: bool, detail: String) -> CheckRecord {
    CheckRecord { check: name.to_string(), ok, detail }
}

/// Run every check for one configuration.  `sphere_bound` limits the
/// normal-form ball; records come back sorted by check name.
pub fn run_all(cfg: &Config, sphere_bound: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let f = cfg.field();
    let ext = cfg.ext();
    let q = cfg.q();
    let data = VHData::build(cfg.clone())?;
    let n = data.degree();

    // field-level choices
    let minus_one = f.neg(&f.one());
    out.push(rec(
        "field_euler_criterion",
        f.pow(cfg.c(), (q - 1) / 2) == minus_one,
        format!("c = {} is a non-square", f.to_int(cfg.c())),
    ));
    out.push(rec(
        "field_generator_order",
        ext.order(cfg.delta()) == q * q - 1,
        format!("delta = {} generates", ext.encode(cfg.delta())),
    ));
    let zeta_norm_ok = ext.norm(cfg.zeta()) == f.div(&f.sub(cfg.tau(), &f.one()), cfg.tau())?;
    out.push(rec(
        "field_zeta_norm",
        zeta_norm_ok,
        format!("zeta = {} has norm (tau-1)/tau", ext.encode(cfg.zeta())),
    ));

    // VH axioms
    let vh = check_vh_axioms(&data);
    for item in &vh.items {
        out.push(rec(&format!("vh_{}", item.name), item.ok, item.detail.clone()));
    }

    // reduced norm closed forms
    let mut nrd_ok = true;
    for xi in data.a_set() {
        let a = make_alpha(cfg, xi)?;
        if nrd(cfg, &a) != alpha_nrd_formula(cfg) {
            nrd_ok = false;
        }
        if nrd(cfg, &crate::quaternion::make_gamma(cfg, xi)) != gamma_nrd_formula(cfg, xi) {
            nrd_ok = false;
        }
    }
    for eta in data.b_set() {
        let b = make_beta(cfg, eta)?;
        if nrd(cfg, &b) != beta_nrd_formula(cfg) {
            nrd_ok = false;
        }
    }
    out.push(rec(
        "quat_nrd_formulas",
        nrd_ok,
        "closed norm forms match symbolic norms for every generator".into(),
    ));

    // splittings are homomorphisms on generator pairs and sample products
    let mut rho_ok = true;
    let gens = [
        QuatElem::z_gen(cfg),
        QuatElem::f_gen(cfg),
        crate::quaternion::make_gamma(cfg, &ext.z()),
    ];
    for x in &gens {
        for y in &gens {
            let xy = qmul(cfg, x, y);
            for (rho, t_sub) in [
                (rho_z as fn(&Config, &QuatElem) -> Result<crate::funcfield::Mat2>, cfg.t_of_z()),
                (rho_y, cfg.t_of_y()),
            ] {
                let lhs = mul2(f, &rho(cfg, x)?, &rho(cfg, y)?);
                if lhs != rho(cfg, &xy)? {
                    rho_ok = false;
                }
                if det2(f, &rho(cfg, x)?) != substitute(f, &nrd(cfg, x), &t_sub)? {
                    rho_ok = false;
                }
            }
        }
    }
    out.push(rec(
        "quat_splittings_multiplicative",
        rho_ok,
        "matrix images multiply like the algebra and det matches nrd".into(),
    ));

    // neighbour valuations
    let mut val_ok = true;
    for xi in data.a_set() {
        if neighbour_valuations(cfg, &TreeGenerator::Alpha(xi.clone()))? != (1, 0) {
            val_ok = false;
        }
    }
    for eta in data.b_set() {
        if neighbour_valuations(cfg, &TreeGenerator::Beta(eta.clone()))? != (0, 1) {
            val_ok = false;
        }
    }
    out.push(rec(
        "quat_neighbour_valuations",
        val_ok,
        "(1,0) for the vertical family and (0,1) for the horizontal".into(),
    ));

    out.push(rec(
        "quat_dihedral_relations",
        dihedral_relations_check(cfg),
        "all dihedral-flavoured lifts are central units".into(),
    ));

    let c_elem = ext.from_base(cfg.c().clone());
    let mut modf_ok = true;
    for xi in data.a_set() {
        if crate::quaternion::mod_f_image(cfg, &make_alpha(cfg, xi)?)? != c_elem {
            modf_ok = false;
        }
    }
    for eta in data.b_set() {
        if crate::quaternion::mod_f_image(cfg, &make_beta(cfg, eta)?)? != c_elem {
            modf_ok = false;
        }
    }
    out.push(rec(
        "quat_mod_f_images",
        modf_ok,
        "every generator reduces to the central constant c".into(),
    ));

    // generator norms are units away from {0, tau, infinity}
    let mut unit_ok = true;
    let norms = data
        .a_set()
        .iter()
        .map(|xi| make_alpha(cfg, xi))
        .chain(data.b_set().iter().map(|eta| make_beta(cfg, eta)));
    for gen in norms {
        let nf = nrd(cfg, &gen?);
        for a in f.elements() {
            if f.is_zero(&a) || &a == cfg.tau() {
                continue;
            }
            if crate::funcfield::ord_at(f, &nf, &Place::Finite(a)) != Some(0) {
                unit_ok = false;
            }
        }
    }
    out.push(rec(
        "quat_norm_units",
        unit_ok,
        "generator norms have order zero outside the distinguished places".into(),
    ));

    // star condition and presentations
    let table = power_class_table(cfg);
    let mut star_ok = true;
    let mut star_equiv_ok = true;
    for i in 0..=q as usize {
        for l in 0..=q as usize {
            let (j, k) = star_solve_with(cfg, &table, i, l)?;
            let (xi, eta, lambda, mu) = star_quadruple(cfg, i, j, k, l)?;
            let (sl, sm) = solve_forward_elems(ext, &xi, &eta);
            if (sl, sm) != (lambda, mu) {
                star_ok = false;
            }
            if star_solve_half_power_form(cfg, &table, i, l)? != (j, k) {
                star_equiv_ok = false;
            }
        }
    }
    out.push(rec(
        "star_condition_solved",
        star_ok,
        "every (i,l) pair yields a relation certified by the solver".into(),
    ));
    out.push(rec(
        "star_half_power_equivalence",
        star_equiv_ok,
        "both closed forms of the class condition agree".into(),
    ));

    let gamma_p = present_gamma(&data, true);
    let lifts = gamma_lifts(&data);
    let mut pres_ok = true;
    for rel in &gamma_p.relators {
        if !relator_central_in_d(cfg, &lifts, rel)? {
            pres_ok = false;
        }
    }
    for (p, with_s) in [(present_lambda_prime(cfg)?, false), (present_lambda(cfg)?, true)] {
        let dl = dihedral_lifts(cfg, with_s);
        for rel in &p.relators {
            if !relator_central_in_d(cfg, &dl, rel)? {
                pres_ok = false;
            }
        }
    }
    out.push(rec(
        "presentations_certified",
        pres_ok,
        "every relator of all three presentations is central in D".into(),
    ));

    let div = abelianization(&gamma_p);
    let finite = div.iter().all(|&d| d != 0);
    let mut ab_detail = format!("elementary divisors {:?}", div);
    let mut ab_ok = finite;
    if f.r() == 1 {
        let admits = admits_square_quotient(&div, 2 * f.p() as i128);
        ab_ok = ab_ok && admits;
        ab_detail.push_str(&format!("; admits (Z/{})^2 quotient = {}", 2 * f.p(), admits));
    }
    out.push(rec("abelianization_finite", ab_ok, ab_detail));

    let uq = uniform_quotients_check(&data, &gamma_p);
    out.push(rec(
        "uniform_quotients",
        uq.additive_kills_relators && uq.parity_kills_relators && uq.additive_contains_prime_plane,
        format!(
            "additive span order {} (full = {}), parity quotient (Z/2)^2",
            uq.additive_span_order, uq.additive_span_full
        ),
    ));

    // complex, link, invariants
    let cx = build_sab(&data)?;
    let link = link_of(&cx);
    out.push(rec(
        "complex_link_complete_bipartite",
        is_complete_bipartite(&link),
        format!("link is K_{{{},{}}}", n, n),
    ));
    let counts_ok = cx.n_unoriented_edges() == n && 4 * cx.n_squares() == n * n;
    out.push(rec(
        "complex_counts",
        counts_ok,
        format!(
            "1 vertex, {} unoriented edges, {} squares",
            cx.n_unoriented_edges(),
            cx.n_squares()
        ),
    ));
    let inv = surface_invariants(&cx, q)?;
    out.push(rec(
        "surface_invariants",
        12 * inv.chi.to_integer() == inv.c1_sq + inv.c2 && inv.c1_sq == 2 * inv.c2,
        format!(
            "chi = {}, c1^2 = {}, c2 = {}, fake quadric = {}",
            inv.chi, inv.c1_sq, inv.c2, inv.fake_quadric
        ),
    ));
    let deg_link = link_of(&degenerate_fixture());
    let deg_table = RelationTable::degenerate_example();
    out.push(rec(
        "degenerate_fixture_rejected",
        has_double_edge(&deg_link) && !deg_table.two_torsion_free().0,
        "the canned counterexample has a doubled link edge and 2-torsion".into(),
    ));

    // local groups
    let (pa, pb) = local_groups(&data);
    let (ta, tb) = predict_local_groups(cfg);
    let local_ok =
        pa.order() == expected_local_order(q, ta) && pb.order() == expected_local_order(q, tb);
    out.push(rec(
        "local_groups",
        local_ok,
        format!(
            "|P_A| = {} ({}), |P_B| = {} ({})",
            pa.order(),
            ta.name(),
            pb.order(),
            tb.name()
        ),
    ));

    // sphere counts at small radius
    let bound = sphere_bound.min(default_sphere_bound(q) + 2);
    let spheres = sphere_table(&data, bound);
    let mut sphere_ok = true;
    for k in 0..=bound {
        for l in 0..=(bound - k) {
            if spheres.get(&(k, l)).copied().unwrap_or(0) != expected_sphere(q, k, l) {
                sphere_ok = false;
            }
        }
    }
    out.push(rec(
        "sphere_counts",
        sphere_ok,
        format!("ball of radius {bound} matches the product-of-trees census"),
    ));

    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}

/// Convenience entry: check one `(q, tau)` configuration end to end.
pub fn verify_config(q: u64, tau: u64, deep: bool) -> Result<Vec<CheckRecord>> {
    let cfg = crate::quaternion::standard_config(q, tau)?;
    let bound = default_sphere_bound(q) + if deep { 2 } else { 0 };
    run_all(&cfg, bound)
}
