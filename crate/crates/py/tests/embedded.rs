use pyo3::prelude::*;
use pyo3::types::PyDict;

use pycoinvariant::pycoinvariant;

#[test]
fn module_imports_and_computes() {
    pyo3::append_to_inittab!(pycoinvariant);
    Python::initialize();
    Python::attach(|py| {
        let locals = PyDict::new(py);
        py.run(
            c"import pycoinvariant as pc
h = pc.hilbert_series(3)
total = h.eval_at_one()
schur = pc.frobenius_schur(2)
word = str(pc.psi(pc.BasisElement.from_monomial('x2*x3^2', 3)))",
            None,
            Some(&locals),
        )
        .unwrap();
        let total: u64 = locals.get_item("total").unwrap().unwrap().extract().unwrap();
        assert_eq!(total, 24);
        let word: String = locals.get_item("word").unwrap().unwrap().extract().unwrap();
        assert_eq!(word, "3|2|1");
        let schur = locals.get_item("schur").unwrap().unwrap();
        assert_eq!(schur.len().unwrap(), 2);
    });
}
