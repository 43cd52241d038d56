use rdp_core::catalog::{load_catalog, sample_row_instances};
use rdp_core::parse::{parse_equation_with, NoBindings};

#[test]
fn printed_catalog_equations_reparse() {
    let mut count = 0;
    for row in load_catalog() {
        let Some(eq) = &row.equation else { continue };
        for sample in sample_row_instances(row).unwrap() {
            for a in &sample.assignments {
                let b = |n: &str| a.param(n);
                let surface = parse_equation_with(&eq.text, &a.field, &b).unwrap();
                let printed = surface.to_string();
                let again = parse_equation_with(&printed, &a.field, &NoBindings)
                    .unwrap_or_else(|e| panic!("{}: {} does not reparse: {}", row.id, printed, e));
                assert_eq!(again, surface, "{} {}", row.id, a.describe());
                assert_eq!(again.to_string(), printed);
                count += 1;
            }
        }
    }
    assert!(count > 100, "{}", count);
}
