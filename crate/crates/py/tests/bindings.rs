use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(carlitz::carlitz)(py);
        let globals = PyDict::new(py);
        globals.set_item("carlitz", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn ratfunc_round_trip() {
    with_module(
        r#"
f = carlitz.Field(3)
x = f.ratfunc("(T + 1) / (2*T^2 + 2)")
assert str(x) == "(2*T + 2) / (T^2 + 1)", str(x)
assert x.den == "T^2 + 1"
assert x * f.ratfunc("T^2 + 1") == f.ratfunc("2*T + 2")
assert -(-x) == x
"#,
    );
}

#[test]
fn carlitz_values() {
    with_module(
        r#"
c = carlitz.CarlitzNumbers(carlitz.Field(3))
assert str(c.cauchy(4)) == "1 / (T^3 + 2*T)"
assert str(c.bernoulli(2)) == "2 / (T^3 + 2*T)"
assert str(c.stirling(4, 2)) == "1"
assert str(c.factorial(3)) == "T^3 + 2*T"
assert str(c.cauchy_order(3, 1)) == str(c.cauchy(3))
rows = c.table("sts_C", 3)
assert (3, 3) in [(n, k) for n, k, _ in rows]
try:
    c.table("nope", 3)
    raise SystemExit(1)
except ValueError:
    pass
"#,
    );
}

#[test]
fn classical_values() {
    with_module(
        r#"
from fractions import Fraction
assert carlitz.cauchy_classical(6) == Fraction(-863, 84)
assert carlitz.poly_cauchy(2, 1) == carlitz.cauchy_classical(2)
assert carlitz.stirling_classical(4, 2, first=False) == 7
rep = carlitz.verify(fields=[(2, 1)], max_n=6, prec=9, identity="orthogonality")
assert len(rep) == 1 and rep[0]["identity_id"] == "orthogonality" and not rep[0]["failures"]
"#,
    );
}
