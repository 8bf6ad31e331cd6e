//! Python bindings. Results come back as witness documents, the same
//! JSON objects the command-line tool writes.

use gallai::coloring::{Coloring as CoreColoring, ColoringSpec};
use gallai::dilation::multi_dilation_family;
use gallai::disjointness::{self, build_family, FamilyBudget, FamilyMode};
use gallai::document::{InputEcho, Payload, WitnessDocument};
use gallai::error::Error;
use gallai::geometry::{Point, PointSet as CorePointSet};
use gallai::lattice::{find_copy, gallai_number, ThresholdOptions};
use gallai::scalar::QuadScalar;
use gallai::svg::{render_svg, Window};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(gallai_py, BudgetExhausted, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted(_) => BudgetExhausted::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for gallai::error::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn parse_point(coords: Vec<String>) -> PyResult<Point> {
    let coords = coords
        .iter()
        .map(|c| c.parse::<QuadScalar>())
        .collect::<gallai::error::Result<Vec<_>>>()
        .py()?;
    Point::new(coords).py()
}

/// A finite point set, written `x1,y1; x2,y2; ...`.
#[pyclass(frozen)]
struct PointSet {
    inner: CorePointSet,
}

#[pymethods]
impl PointSet {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PointSet {
            inner: CorePointSet::parse(text).py()?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Points in canonical order, each coordinate as exact text.
    fn points(&self) -> Vec<Vec<String>> {
        self.inner
            .points()
            .iter()
            .map(|p| p.coords().iter().map(ToString::to_string).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        let pts: Vec<String> = self.points().iter().map(|p| p.join(",")).collect();
        format!("PointSet('{}')", pts.join("; "))
    }
}

/// A coloring from its specification string.
#[pyclass(frozen)]
struct Coloring {
    spec: ColoringSpec,
    inner: CoreColoring,
}

#[pymethods]
impl Coloring {
    #[new]
    #[pyo3(signature = (spec, colors=None))]
    fn new(spec: &str, colors: Option<u32>) -> PyResult<Self> {
        let spec = ColoringSpec::new(spec, colors);
        let inner = spec.build().py()?;
        Ok(Coloring { spec, inner })
    }

    #[getter]
    fn colors(&self) -> u32 {
        self.inner.colors()
    }

    /// Color of a point given as coordinate strings such as `"1/2"` or `"√3"`.
    fn color(&self, point: Vec<String>) -> PyResult<u32> {
        self.inner.color(&parse_point(point)?).py()
    }
}

/// A witness document with its verification report.
#[pyclass(frozen)]
struct Document {
    inner: WitnessDocument,
}

#[pymethods]
impl Document {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Document {
            inner: WitnessDocument::from_json(text).py()?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.result {
            Payload::Witness { .. } => "witness",
            Payload::Threshold(_) => "threshold",
            Payload::Family(_) => "family",
            Payload::Multifamily(_) => "multifamily",
        }
    }

    #[getter]
    fn all_pass(&self) -> bool {
        self.inner.verification.all_pass
    }

    #[getter]
    fn violations(&self) -> Vec<String> {
        self.inner
            .verification
            .report
            .violations
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    /// Copies in the payload (1 for a lattice witness, 0 for thresholds).
    #[getter]
    fn copies(&self) -> usize {
        match &self.inner.result {
            Payload::Witness { witness, .. } => witness.is_some() as usize,
            Payload::Threshold(_) => 0,
            Payload::Family(f) => f.len(),
            Payload::Multifamily(m) => m.copies(),
        }
    }

    /// Runs every check again from the stored inputs.
    fn reverify(&self) -> PyResult<bool> {
        Ok(self.inner.reverify().py()?.all_pass())
    }

    /// SVG drawing; `window` is `(x0, x1, y0, y1)`.
    #[pyo3(signature = (window=None))]
    fn render_svg(&self, window: Option<(f64, f64, f64, f64)>) -> PyResult<String> {
        let window = window
            .map(|(x0, x1, y0, y1)| Window::new(x0, x1, y0, y1))
            .transpose()
            .py()?;
        render_svg(&self.inner, window).py()
    }
}

fn document(input: InputEcho, payload: Payload, coloring: Option<&CoreColoring>) -> PyResult<Document> {
    Ok(Document {
        inner: WitnessDocument::new(input, payload, coloring).py()?,
    })
}

fn family_options(mode: &str, budget: Option<(u64, u64, u64)>) -> PyResult<(FamilyMode, FamilyBudget)> {
    let mode: FamilyMode = mode.parse().py()?;
    let budget = match budget {
        Some((a_max, d_max, denom_max)) => format!("{a_max},{d_max},{denom_max}").parse().py()?,
        None => FamilyBudget::default(),
    };
    Ok((mode, budget))
}

/// Smallest monochromatic copy inside the side-`side` grid sampled from the coloring.
#[pyfunction]
#[pyo3(signature = (set, coloring, side=20, max_scale=None))]
fn find(py: Python<'_>, set: &PointSet, coloring: &Coloring, side: usize, max_scale: Option<u64>) -> PyResult<Document> {
    let s = &set.inner;
    let (grid, witness) = py.allow_threads(|| {
        let grid = coloring.inner.sample_grid(vec![side; s.dim()])?;
        let witness = find_copy(&grid, s, max_scale.unwrap_or(u64::MAX))?;
        Ok::<_, Error>((grid, witness))
    })
    .py()?;
    let input = InputEcho {
        command: "find".into(),
        set: Some(s.clone()),
        coloring: Some(coloring.spec.clone()),
        side: Some(side),
        max_scale,
        ..InputEcho::default()
    };
    document(input, Payload::Witness { grid, witness }, Some(&coloring.inner))
}

/// Least grid side forcing a monochromatic copy under every `colors`-coloring.
#[pyfunction]
#[pyo3(signature = (set, colors, max_side=12, canonical_colors=false))]
fn number(py: Python<'_>, set: &PointSet, colors: u32, max_side: usize, canonical_colors: bool) -> PyResult<Document> {
    let options = ThresholdOptions { canonical_colors };
    let result = py
        .allow_threads(|| gallai_number(&set.inner, colors, max_side, options))
        .py()?;
    let input = InputEcho {
        command: "number".into(),
        set: Some(set.inner.clone()),
        colors: Some(colors),
        max_side: Some(max_side),
        ..InputEcho::default()
    };
    document(input, Payload::Threshold(result), None)
}

/// `k` pairwise-disjoint monochromatic homothetic copies.
#[pyfunction]
#[pyo3(signature = (set, coloring, k, mode="direct", budget=None))]
fn family(
    py: Python<'_>,
    set: &PointSet,
    coloring: &Coloring,
    k: usize,
    mode: &str,
    budget: Option<(u64, u64, u64)>,
) -> PyResult<Document> {
    let (mode, budget) = family_options(mode, budget)?;
    let fam = py
        .allow_threads(|| build_family(&coloring.inner, &set.inner, k, &QuadScalar::one(), mode, budget))
        .py()?;
    let input = InputEcho {
        command: "family".into(),
        set: Some(set.inner.clone()),
        coloring: Some(coloring.spec.clone()),
        k: Some(k),
        mode: Some(mode),
        budget: Some(budget),
        ..InputEcho::default()
    };
    document(input, Payload::Family(fam), Some(&coloring.inner))
}

/// One family of `k` copies per radicand, at pairwise-distinct dilation factors.
#[pyfunction]
#[pyo3(signature = (set, coloring, radicands, k, mode="direct", budget=None))]
fn dilations(
    py: Python<'_>,
    set: &PointSet,
    coloring: &Coloring,
    radicands: Vec<u64>,
    k: usize,
    mode: &str,
    budget: Option<(u64, u64, u64)>,
) -> PyResult<Document> {
    let (mode, budget) = family_options(mode, budget)?;
    let multi = py
        .allow_threads(|| multi_dilation_family(&coloring.inner, &set.inner, &radicands, k, mode, budget))
        .py()?;
    let input = InputEcho {
        command: "dilations".into(),
        set: Some(set.inner.clone()),
        coloring: Some(coloring.spec.clone()),
        k: Some(k),
        mode: Some(mode),
        budget: Some(budget),
        radicands: Some(radicands),
        ..InputEcho::default()
    };
    document(input, Payload::Multifamily(multi), Some(&coloring.inner))
}

/// Whether `v` lies in the integer span of the differences of `set`.
#[pyfunction]
fn lattice_member(set: &PointSet, v: Vec<String>) -> PyResult<bool> {
    let lattice = disjointness::difference_lattice(&set.inner).py()?;
    disjointness::lattice_member(&lattice, &parse_point(v)?).py()
}

/// Whether `v` is an integer multiple of a single difference of `set`.
#[pyfunction]
#[pyo3(name = "in_Y")]
fn in_y(set: &PointSet, v: Vec<String>) -> PyResult<bool> {
    disjointness::in_Y(&set.inner, &parse_point(v)?).py()
}

#[pymodule]
fn gallai_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExhausted", m.py().get_type::<BudgetExhausted>())?;
    m.add_class::<PointSet>()?;
    m.add_class::<Coloring>()?;
    m.add_class::<Document>()?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(number, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(dilations, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_member, m)?)?;
    m.add_function(wrap_pyfunction!(in_y, m)?)?;
    Ok(())
}
