use quandlelab::catalog::{builtin, builtin_knot, data_dir, knot, load, KNOTS, NAMES};

#[test]
fn shipped_files_match_constructors() {
    let dir = data_dir();
    for name in NAMES {
        let path = dir.join("quandles").join(format!("{name}.json"));
        assert!(path.is_file(), "missing {}", path.display());
        assert_eq!(load(name).unwrap(), builtin(name).unwrap(), "{name}");
    }
    for name in KNOTS {
        let path = dir.join("knots").join(format!("{name}.json"));
        assert!(path.is_file(), "missing {}", path.display());
        assert_eq!(knot(name).unwrap().pd(), builtin_knot(name).unwrap().pd(), "{name}");
    }
}
