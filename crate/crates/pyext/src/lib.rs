use pyo3::prelude::*;

#[pymodule]
fn noethops_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
