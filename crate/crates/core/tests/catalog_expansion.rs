use std::time::Instant;

use cubics::brackets::{catalog, catalog_names, expand};

#[test]
fn every_catalog_entry_expands_nonzero() {
    for name in catalog_names() {
        let start = Instant::now();
        let e = catalog(name).unwrap();
        let c = expand(&e).unwrap();
        assert!(!c.is_zero(), "{name} vanished");
        for (m, _) in c.poly.terms() {
            assert_eq!(m.family_degree(cubics::polyring::Family::A), c.ty.degree);
            assert_eq!(m.family_degree(cubics::polyring::Family::X), c.ty.order);
            assert_eq!(m.family_degree(cubics::polyring::Family::U), c.ty.class);
        }
        eprintln!("{name}: {} terms in {:?}", c.poly.len(), start.elapsed());
    }
}
