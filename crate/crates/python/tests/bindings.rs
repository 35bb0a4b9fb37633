use std::ffi::CString;

use pyo3::prelude::*;

use drinfeld::drinfeld;

fn run(script: &str) -> PyResult<()> {
    let code = CString::new(script).unwrap();
    Python::attach(|py| py.run(&code, None, None))
}

fn setup() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| {
        pyo3::append_to_inittab!(drinfeld);
        Python::initialize();
    });
}

#[test]
fn decompositions_through_python() {
    setup();
    run(r#"
import drinfeld
g = drinfeld.Sl2(3)
assert g.group_order == 24
assert len(g.classes()) == 7
assert g.decompose("gamma2") == [1, 2, 1]
assert [g.decompose(f"dl{j}") for j in (1, 2, 3)] == [[0, -1, 0], [-2, 0, 0], [0, -1, 0]]
assert g.canonical_decomposition() == [1, 1, 0]
assert g.lefschetz_c(g.p_regular_classes()[0]) is not None
"#)
    .unwrap();
}

#[test]
fn errors_become_value_errors() {
    setup();
    run(r#"
import drinfeld
for bad in (lambda: drinfeld.Sl2(6), lambda: drinfeld.Sl2(13),
            lambda: drinfeld.verify_report(2, checks=["nope"]),
            lambda: drinfeld.Sl2(2).decompose("dlx")):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
"#)
    .unwrap();
}

#[test]
fn report_is_a_plain_dict() {
    setup();
    run(r#"
import drinfeld
r = drinfeld.verify_report(3, checks=["dl-suite", "structural"])
assert [c["name"] for c in r["checks"]] == ["dl-suite", "structural"]
assert all(c["status"] == "pass" for c in r["checks"])
assert r["overall"] == "pass"
assert drinfeld.curve_summary(3)["points_fq2"] == 4
"#)
    .unwrap();
}
