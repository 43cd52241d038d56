//! Independent oracles shared by the property suites and the acceptance run.
//! Each check returns Err with a description of the first failure.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rdp_core::algebra::{factor_univariate, BiPoly, Fe, Field, LocalPoly, MPoly, UPoly};
use rdp_core::catalog::{consistency_report, load_catalog, sample_row_instances, verify_all, RowKind};
use rdp_core::lattice::{check_conditions, classes_of, embeddable_types, AdeType};
use rdp_core::parse::{parse_equation_with, parse_local_poly, parse_local_poly_with, Poly5};
use rdp_core::pipeline::analyze;
use rdp_core::singularity::{calibration, classify_rdp, tjurina_dimension};
use rdp_core::weierstrass::{
    apply_substitution, compute_invariants, expand_substitution, JInvariant, Substitution, WeierstrassEq,
};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ------------------------------------------------------------- tables

pub fn table_reproduction() -> Check {
    let report = verify_all(None, None);
    for v in &report.verdicts {
        ensure(v.pass, || format!("row {} fails: {:?}", v.row, v.instances.iter().find(|i| !i.pass)))?;
        ensure(v.warnings.is_empty(), || format!("row {}: {:?}", v.row, v.warnings))?;
        for i in &v.instances {
            ensure(i.pass && !i.skipped, || {
                format!("row {} [{}] {}: {:?}", v.row, i.case, i.assignment.describe(), i.diff)
            })?;
            ensure(i.computed.as_deref() == Some(i.expected.as_str()), || format!("row {} configuration", v.row))?;
        }
        let row = load_catalog().iter().find(|r| r.id == v.row).unwrap();
        if !row.degree_two_only {
            let cases: std::collections::BTreeSet<&str> = v.instances.iter().map(|i| i.case.as_str()).collect();
            ensure(cases.len() == row.subrows.len() + 1, || format!("row {}: cases {:?}", v.row, cases))?;
        }
    }
    ensure(report.pass, || "report does not pass".to_string())
}

/// Non-taut normal forms: (p, class, equation, m).
pub fn normal_form_entries() -> Vec<(u64, String, String, usize)> {
    let mut out = Vec::new();
    for (class, eq, m) in [
        ("E6^0", "z^2 + x^3 + y^2*z", 8),
        ("E6^1", "z^2 + x^3 + y^2*z + x*y*z", 6),
        ("E7^0", "z^2 + x^3 + x*y^3", 14),
        ("E7^1", "z^2 + x^3 + x*y^3 + x^2*y*z", 12),
        ("E7^2", "z^2 + x^3 + x*y^3 + y^3*z", 10),
        ("E7^3", "z^2 + x^3 + x*y^3 + x*y*z", 8),
        ("E8^0", "z^2 + x^3 + y^5", 16),
        ("E8^1", "z^2 + x^3 + y^5 + x*y^3*z", 14),
        ("E8^2", "z^2 + x^3 + y^5 + x*y^2*z", 12),
        ("E8^3", "z^2 + x^3 + y^5 + y^3*z", 10),
        ("E8^4", "z^2 + x^3 + y^5 + x*y*z", 8),
    ] {
        out.push((2, class.to_string(), eq.to_string(), m));
    }
    for n in 2..=4u32 {
        for r in 0..n {
            let extra = if r == 0 { String::new() } else { format!(" + x*y^{}*z", n - r) };
            out.push((
                2,
                format!("D{}^{}", 2 * n, r),
                format!("z^2 + x^2*y + x*y^{}{}", n, extra),
                (4 * n - 2 * r) as usize,
            ));
            if 2 * n < 8 {
                out.push((
                    2,
                    format!("D{}^{}", 2 * n + 1, r),
                    format!("z^2 + x^2*y + y^{}*z{}", n, extra),
                    (4 * n - 2 * r) as usize,
                ));
            }
        }
    }
    for (class, eq, m) in [
        ("E6^0", "z^2 + x^3 + y^4", 9),
        ("E6^1", "z^2 + x^3 + y^4 + x^2*y^2", 7),
        ("E7^0", "z^2 + x^3 + x*y^3", 9),
        ("E7^1", "z^2 + x^3 + x*y^3 + x^2*y^2", 7),
        ("E8^0", "z^2 + x^3 + y^5", 12),
        ("E8^1", "z^2 + x^3 + y^5 + x^2*y^3", 10),
        ("E8^2", "z^2 + x^3 + y^5 + x^2*y^2", 8),
    ] {
        out.push((3, class.to_string(), eq.to_string(), m));
    }
    out.push((5, "E8^0".to_string(), "z^2 + x^3 + y^5".to_string(), 10));
    out.push((5, "E8^1".to_string(), "z^2 + x^3 + y^5 + x*y^4".to_string(), 8));
    out
}

pub fn normal_form_m_values() -> Check {
    let entries = normal_form_entries();
    ensure(entries.len() == 11 + 14 + 7 + 2, || format!("{} entries", entries.len()))?;
    for (p, class, eq, m) in entries {
        let f = parse_local_poly(&eq, p).map_err(|e| e.to_string())?;
        let t = tjurina_dimension(&f).map_err(|e| format!("{} in char {}: {}", class, p, e))?;
        ensure(t.dimension == m, || format!("{} in char {}: m = {}, expected {}", class, p, t.dimension, m))?;
        let c = classify_rdp(&f).map_err(|e| format!("{}: {}", class, e))?;
        ensure(c.class.render(p) == class, || format!("{} classified as {}", class, c.class.render(p)))?;
    }
    Ok(())
}

fn with_params<'a>(field: &'a Field, values: &'a [(&'a str, Fe)]) -> impl Fn(&str) -> Option<Poly5> + 'a {
    move |name: &str| values.iter().find(|(n, _)| *n == name).map(|(_, v)| Poly5::constant(field, *v))
}

/// The two worked examples of local Tjurina computations, for every value
/// of their parameters over GF(p²).
pub fn worked_examples() -> Check {
    let f9 = Field::new(3, 2).unwrap();
    let mut seen = 0;
    for a in f9.elements() {
        let vals = [("a65", a)];
        let f = parse_local_poly_with("y^2 - (x^3 + t^2*x^2 + a_{6,5}*t^5 - t^4 + t^3)", &f9, &with_params(&f9, &vals))
            .map_err(|e| e.to_string())?;
        let t = tjurina_dimension(&f).map_err(|e| e.to_string())?;
        ensure(t.dimension == 7, || format!("char 3, a65 = {}: dim T_f = {}", f9.format(a), t.dimension))?;
        let c = classify_rdp(&f).map_err(|e| e.to_string())?;
        ensure(c.class.render(3) == "E7^1", || format!("char 3: {}", c.class.render(3)))?;
        seen += 1;
    }
    ensure(seen >= 3, || "too few char 3 values".to_string())?;
    let f4 = Field::new(2, 2).unwrap();
    let mut seen = 0;
    for a21 in f4.elements().filter(|a| !a.is_zero()) {
        for a65 in f4.elements() {
            let vals = [("a21", a21), ("a65", a65)];
            let f = parse_local_poly_with(
                "y^2 + t*x*y + x^3 + a_{2,1}*t*x^2 + a_{6,5}*t^5 + t^4",
                &f4,
                &with_params(&f4, &vals),
            )
            .map_err(|e| e.to_string())?;
            let t = tjurina_dimension(&f).map_err(|e| e.to_string())?;
            ensure(t.dimension == 8, || {
                format!("char 2, a21 = {}, a65 = {}: dim T_f = {}", f4.format(a21), f4.format(a65), t.dimension)
            })?;
            let c = classify_rdp(&f).map_err(|e| e.to_string())?;
            ensure(c.class.render(2) == "D6^2", || format!("char 2: {}", c.class.render(2)))?;
            seen += 1;
        }
    }
    ensure(seen >= 3, || "too few char 2 values".to_string())
}

// ------------------------------------------------------------- lattice

fn types(list: &[&str]) -> Vec<AdeType> {
    let mut v: Vec<AdeType> = list.iter().map(|s| s.parse().unwrap()).collect();
    v.sort();
    v
}

pub fn lattice_conditions() -> Check {
    let all = embeddable_types();
    let mut fail_ell: Vec<AdeType> = all.iter().filter(|t| !check_conditions(t, 2).t_ell2).cloned().collect();
    let mut fail_p2: Vec<AdeType> = all.iter().filter(|t| !check_conditions(t, 2).t_p).cloned().collect();
    fail_ell.sort();
    fail_p2.sort();
    ensure(fail_ell == types(&["D4+4A1", "8A1", "7A1"]), || format!("(E8+T[ℓ=2]) fails on {:?}", fail_ell))?;
    ensure(fail_p2 == types(&["D4+3A1", "2A3+2A1", "A3+4A1", "7A1", "6A1"]), || {
        format!("(E8+T[p=2]) fails on {:?}", fail_p2)
    })?;
    for (ty, free, torsion) in [("D4+4A1", 0, vec![2, 2, 2]), ("8A1", 0, vec![2, 2, 2, 2])] {
        let c = classes_of(&ty.parse().unwrap());
        ensure(c.len() == 1 && c[0].free_rank == free && c[0].torsion == torsion, || format!("E8/{}: {:?}", ty, c))?;
    }
    let c = classes_of(&"7A1".parse().unwrap());
    ensure(c.len() == 1 && c[0].free_rank == 1, || format!("E8/7A1: {:?}", c))?;
    ensure(c[0].torsion.iter().filter(|&&d| d % 2 == 0).count() >= 3, || format!("E8/7A1 torsion {:?}", c[0].torsion))
}

pub fn occurrence_consistency() -> Check {
    let r = consistency_report(load_catalog(), &[0, 2, 3, 5, 7]);
    for c in &r.checks {
        ensure(c.errors.is_empty(), || format!("char {}: {:?}", c.p, c.errors))?;
    }
    ensure(r.e8_rows_char5 == Some(2), || format!("{:?} elliptic E8 rows in char 5", r.e8_rows_char5))?;
    ensure(r.exception_overlap.is_empty(), || format!("{:?}", r.exception_overlap))?;
    ensure(r.pass, || "consistency report does not pass".to_string())
}

/// On every elliptic catalog instance the fiber types through the singular
/// points agree with the fingerprint types and Σ v(Δ) = 12.
pub fn dual_oracle() -> Check {
    let mut points = 0;
    for row in load_catalog() {
        let Some(eq) = &row.equation else { continue };
        if eq.kind != RowKind::Elliptic {
            continue;
        }
        for sample in sample_row_instances(row).map_err(|e| e.to_string())? {
            for a in &sample.assignments {
                let b = |n: &str| a.param(n);
                let surface = parse_equation_with(&eq.text, &a.field, &b).map_err(|e| e.to_string())?;
                let r = analyze(&surface).map_err(|e| format!("{} {}: {}", row.id, a.describe(), e))?;
                let fc = r.fibers.as_ref().ok_or_else(|| format!("{}: no fibers", row.id))?;
                ensure(fc.euler_number == 12, || format!("{} {}: Σ v(Δ) = {}", row.id, a.describe(), fc.euler_number))?;
                for pt in &r.singular_points {
                    points += 1;
                    ensure(pt.fiber_type.is_some() && pt.fiber_type == pt.fingerprint_type, || {
                        format!(
                            "{} {} at {}: {:?} vs {:?}",
                            row.id,
                            a.describe(),
                            pt.base_point,
                            pt.fiber_type,
                            pt.fingerprint_type
                        )
                    })?;
                }
                ensure(r.mismatches.is_empty(), || format!("{}: {:?}", row.id, r.mismatches))?;
            }
        }
    }
    ensure(points > 0, || "no points checked".to_string())
}

// ------------------------------------------------------------- properties

fn random_fe(field: &Field, rng: &mut ChaCha8Rng) -> Fe {
    let digits: Vec<u64> = (0..field.degree()).map(|_| rng.gen_range(0..field.characteristic())).collect();
    field.from_digits(&digits)
}

fn random_unit(field: &Field, rng: &mut ChaCha8Rng) -> Fe {
    loop {
        let a = random_fe(field, rng);
        if !a.is_zero() {
            return a;
        }
    }
}

fn random_form(field: &Field, degree: u32, rng: &mut ChaCha8Rng) -> BiPoly {
    let coeffs = (0..=degree).map(|_| random_fe(field, rng)).collect();
    BiPoly::from_coeffs(field, degree, coeffs)
}

fn random_matrix(field: &Field, rng: &mut ChaCha8Rng) -> [[Fe; 2]; 2] {
    loop {
        let m = [[random_fe(field, rng), random_fe(field, rng)], [random_fe(field, rng), random_fe(field, rng)]];
        let det = field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0]));
        if !det.is_zero() {
            return m;
        }
    }
}

/// An equation in the simplified shape for p together with an admissible
/// substitution of x and y.
fn random_case(field: &Field, rng: &mut ChaCha8Rng) -> (WeierstrassEq, Substitution) {
    let p = field.characteristic();
    let zero = BiPoly::zero(field);
    let mut a: [BiPoly; 5] = std::array::from_fn(|i| random_form(field, [1, 2, 3, 4, 6][i], rng));
    let lam = random_unit(field, rng);
    let sub = match p {
        2 if rng.gen_bool(0.5) => {
            a[2] = zero;
            Substitution::w2(field, lam, random_form(field, 1, rng), random_form(field, 3, rng))
        }
        2 => {
            a[0] = zero;
            Substitution::w2_prime(
                field,
                lam,
                random_form(field, 2, rng),
                random_form(field, 1, rng),
                random_form(field, 3, rng),
            )
        }
        3 => {
            a[0] = zero.clone();
            a[2] = zero;
            Substitution::w3(field, lam, random_form(field, 2, rng))
        }
        _ => {
            a[0] = zero.clone();
            a[1] = zero.clone();
            a[2] = zero;
            Substitution::w0(field, lam)
        }
    };
    (WeierstrassEq::new(field, a).unwrap(), sub)
}

fn j_after_linear(j: &JInvariant, m: [[Fe; 2]; 2]) -> JInvariant {
    match j {
        JInvariant::Undefined => JInvariant::Undefined,
        JInvariant::Ratio { num, den } => JInvariant::from_ratio(&num.substitute_linear(m), &den.substitute_linear(m)),
    }
}

/// Δ scales by λ⁻¹² and j is unchanged under x, y substitutions; both are
/// transported by linear changes of (t, s). Closed formulas agree with
/// direct expansion.
pub fn substitution_suite(p: u64, cases: usize) -> Check {
    let field = Field::new(p, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + p);
    for k in 0..cases {
        let (eq, sub) = random_case(&field, &mut rng);
        let before = compute_invariants(&eq);
        let image = apply_substitution(&eq, &sub).map_err(|e| format!("case {}: {}", k, e))?;
        let expanded = expand_substitution(&eq, &sub).map_err(|e| format!("case {}: {}", k, e))?;
        ensure(image == expanded, || {
            format!("char {} case {}: closed form {} vs expansion {}", p, k, image, expanded)
        })?;
        let after = compute_invariants(&image);
        let scale = field.inv(field.pow(sub.unit, 12));
        ensure(after.delta == before.delta.scale(scale), || format!("char {} case {}: Δ not scaled by λ⁻¹²", p, k))?;
        ensure(after.j == before.j, || format!("char {} case {}: j changed from {} to {}", p, k, before.j, after.j))?;
        let m = random_matrix(&field, &mut rng);
        let moved = apply_substitution(&eq, &Substitution::mobius(&field, m)).map_err(|e| e.to_string())?;
        let inv = compute_invariants(&moved);
        ensure(inv.delta == before.delta.substitute_linear(m), || format!("char {} case {}: Δ∘M", p, k))?;
        ensure(inv.j == j_after_linear(&before.j, m), || format!("char {} case {}: j∘M", p, k))?;
    }
    Ok(())
}

pub fn tjurina_test_equations() -> Vec<(u64, &'static str)> {
    vec![
        (2, "z^2 + x^2*y + x*y^3 + x*y^2*z"),
        (2, "z^2 + x^3 + y^5 + x*y^2*z"),
        (2, "z^2 + x^3 + x*y^3 + y^3*z"),
        (2, "x*y + z^4"),
        (3, "z^2 + x^3 + x*y^3 + x^2*y^2"),
        (3, "z^2 + x^3 + y^4"),
        (5, "z^2 + x^3 + y^5 + x*y^4"),
        (5, "x^2 + y^2 + z^3"),
    ]
}

/// Invertible linear part plus random quadratic terms in each coordinate.
fn random_change(field: &Field, rng: &mut ChaCha8Rng) -> [LocalPoly; 3] {
    loop {
        let l: Vec<Vec<Fe>> = (0..3).map(|_| (0..3).map(|_| random_fe(field, rng)).collect()).collect();
        let det = {
            let m = |i: usize, j: usize| l[i][j];
            let t1 = field.mul(m(0, 0), field.sub(field.mul(m(1, 1), m(2, 2)), field.mul(m(1, 2), m(2, 1))));
            let t2 = field.mul(m(0, 1), field.sub(field.mul(m(1, 0), m(2, 2)), field.mul(m(1, 2), m(2, 0))));
            let t3 = field.mul(m(0, 2), field.sub(field.mul(m(1, 0), m(2, 1)), field.mul(m(1, 1), m(2, 0))));
            field.add(field.sub(t1, t2), t3)
        };
        if det.is_zero() {
            continue;
        }
        return std::array::from_fn(|i| {
            let mut f = MPoly::zero(field);
            for j in 0..3 {
                let mut e = [0u16; 3];
                e[j] = 1;
                f.add_term(e, l[i][j]);
            }
            for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]] {
                if rng.gen_bool(0.3) {
                    f.add_term(e, random_fe(field, rng));
                }
            }
            f
        });
    }
}

/// dim T_f is unchanged by f ↦ u·(f∘φ) for a unit u and an automorphism φ.
pub fn tjurina_suite(changes: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (p, src) in tjurina_test_equations() {
        let field = Field::prime(p).unwrap();
        let f = parse_local_poly(src, p).map_err(|e| e.to_string())?;
        let m = tjurina_dimension(&f).map_err(|e| e.to_string())?.dimension;
        for k in 0..changes {
            let phi = random_change(&field, &mut rng);
            let mut unit = MPoly::constant(&field, random_unit(&field, &mut rng));
            for v in 0..3 {
                let mut e = [0u16; 3];
                e[v] = 1;
                unit.add_term(e, random_fe(&field, &mut rng));
            }
            let g = f.compose(&phi).mul(&unit);
            let mg = tjurina_dimension(&g).map_err(|e| format!("{} change {}: {}", src, k, e))?.dimension;
            ensure(mg == m, || format!("char {} {}: change {} gives {} instead of {}", p, src, k, mg, m))?;
        }
    }
    Ok(())
}

pub fn fingerprint_injectivity() -> Check {
    for p in [2, 3, 5, 7] {
        calibration(p).map_err(|e| format!("char {}: {}", p, e))?;
    }
    Ok(())
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half.
fn irreducible_by_search(h: &UPoly) -> bool {
    let field = h.field().clone();
    let d = h.deg();
    let q = field.order();
    for k in 1..=d / 2 {
        let count = q.pow(k as u32);
        for code in 0..count {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                let digits: Vec<u64> = field_digits(&field, c % q);
                coeffs.push(field.from_digits(&digits));
                c /= q;
            }
            coeffs.push(Fe::ONE);
            let g = UPoly::new(&field, coeffs);
            if h.rem(&g).is_zero() {
                return false;
            }
        }
    }
    true
}

fn field_digits(field: &Field, mut n: u64) -> Vec<u64> {
    let p = field.characteristic();
    (0..field.degree())
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

/// Random polynomials, biased towards repeated factors, factor back into
/// themselves with monic irreducible, pairwise distinct, sorted factors.
pub fn factorization_suite(inputs: usize) -> Check {
    let fields: Vec<Field> =
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)].iter().map(|&(p, k)| Field::new(p, k).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for k in 0..inputs {
        let field = &fields[k % fields.len()];
        let parts = rng.gen_range(1..=3);
        let mut f = UPoly::constant(field, random_unit(field, &mut rng));
        for _ in 0..parts {
            let d = rng.gen_range(1..=3);
            let mut g: Vec<Fe> = (0..d).map(|_| random_fe(field, &mut rng)).collect();
            g.push(random_unit(field, &mut rng));
            f = f.mul(&UPoly::new(field, g).pow(rng.gen_range(1..=3)));
        }
        let fac = factor_univariate(&f).map_err(|e| e.to_string())?;
        ensure(fac.expand(field) == f, || format!("input {}: product differs", k))?;
        for (i, (g, e)) in fac.factors.iter().enumerate() {
            ensure(*e >= 1 && g.lead() == Fe::ONE, || format!("input {}: factor not monic", k))?;
            ensure(g.deg() >= 1 && irreducible_by_search(g), || {
                format!("input {}: reducible factor {}", k, g.format("x"))
            })?;
            if i > 0 {
                let prev = &fac.factors[i - 1].0;
                ensure(prev.canonical_cmp(g) == std::cmp::Ordering::Less, || format!("input {}: factor order", k))?;
            }
        }
    }
    Ok(())
}

/// The seven acceptance criteria in order, with names.
pub fn criteria() -> Vec<(&'static str, fn() -> Check)> {
    vec![
        ("table reproduction", table_reproduction),
        ("normal-form m-values", normal_form_m_values),
        ("worked Tjurina examples", worked_examples),
        ("lattice conditions", lattice_conditions),
        ("occurrence consistency", occurrence_consistency),
        ("dual-oracle agreement", dual_oracle),
        ("property suites", property_suites),
    ]
}

pub fn property_suites() -> Check {
    for p in [2, 3, 5, 7] {
        substitution_suite(p, 200)?;
    }
    tjurina_suite(40)?;
    fingerprint_injectivity()?;
    factorization_suite(500)
}
