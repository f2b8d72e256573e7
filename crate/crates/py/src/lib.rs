//! Python bindings: the code constructions, decoding, pattern counts, and
//! the bound table, exposed as the `burst_codes_py` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use burst_codes::bounds;
use burst_codes::codes::{ArrayWord, BurstCode, CodeSpec, DecodeOutcome, DesignChoice, Variant};
use burst_codes::designs::{affine_lines, PackingDesign};
use burst_codes::leecode::LeeBchCode;
use burst_codes::models;
use burst_codes::verify;
use burst_codes::Caps;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A built burst-correcting code.
#[pyclass(name = "Code")]
struct PyCode {
    inner: BurstCode,
}

impl PyCode {
    fn word_from_bits(&self, bits: Vec<u8>) -> PyResult<ArrayWord> {
        if bits.len() != self.inner.ncells() {
            return Err(PyValueError::new_err(format!(
                "word needs {} cells, got {}",
                self.inner.ncells(),
                bits.len()
            )));
        }
        let mut word = ArrayWord::zero(self.inner.side(), self.inner.spec().d).map_err(err)?;
        for (cell, &bit) in bits.iter().enumerate() {
            word.set(cell, bit != 0);
        }
        Ok(word)
    }
}

fn word_to_bits(word: &ArrayWord) -> Vec<u8> {
    (0..word.len()).map(|c| word.get(c) as u8).collect()
}

#[pymethods]
impl PyCode {
    /// Code(model, n, b, d, variant="basic", design=None)
    #[new]
    #[pyo3(signature = (model, n, b, d, variant="basic", design=None))]
    fn new(
        model: &str,
        n: i64,
        b: i64,
        d: usize,
        variant: &str,
        design: Option<&str>,
    ) -> PyResult<Self> {
        let variant = Variant::parse(model, variant).map_err(err)?;
        let design = match design {
            Some(s) => Some(DesignChoice::parse(s).map_err(err)?),
            None if variant == Variant::Straight => Some(DesignChoice::Trivial),
            None => None,
        };
        let spec = CodeSpec {
            variant,
            n,
            b,
            d,
            design,
        };
        let inner = BurstCode::build(&spec, &Caps::default()).map_err(err)?;
        Ok(PyCode { inner })
    }

    #[getter]
    fn side(&self) -> i64 {
        self.inner.side()
    }

    #[getter]
    fn cells(&self) -> usize {
        self.inner.ncells()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// Measured excess redundancy rank(H) - ceil(log2 N).
    #[getter]
    fn xi(&self) -> i64 {
        self.inner.xi()
    }

    /// The spec in its key-value file format.
    fn spec_text(&self) -> String {
        self.inner.spec().to_kv()
    }

    /// Encode k message bits into an N-cell word (lists of 0/1).
    fn encode(&self, message: Vec<u8>) -> PyResult<Vec<u8>> {
        let bits: Vec<bool> = message.iter().map(|&b| b != 0).collect();
        let word = self.inner.encode(&bits).map_err(err)?;
        Ok(word_to_bits(&word))
    }

    /// A deterministic random codeword for a seed.
    fn random_codeword(&self, seed: u64) -> Vec<u8> {
        word_to_bits(&self.inner.random_codeword_seeded(seed))
    }

    /// Decode a word; returns (kind, positions) with kind one of
    /// "no-error", "single", "double", "uncorrectable".
    fn decode(&self, word: Vec<u8>) -> PyResult<(String, Vec<Vec<i64>>)> {
        let word = self.word_from_bits(word)?;
        let outcome = self.inner.decode(&word).map_err(err)?;
        Ok(match outcome {
            DecodeOutcome::NoError => ("no-error".into(), vec![]),
            DecodeOutcome::Single(c) => ("single".into(), vec![c.0]),
            DecodeOutcome::Double(a, b) => ("double".into(), vec![a.0, b.0]),
            DecodeOutcome::Uncorrectable => ("uncorrectable".into(), vec![]),
        })
    }

    /// Decode and return the corrected word.
    fn correct(&self, word: Vec<u8>) -> PyResult<Vec<u8>> {
        let word = self.word_from_bits(word)?;
        let outcome = self.inner.decode(&word).map_err(err)?;
        Ok(word_to_bits(&self.inner.correct(&word, &outcome)))
    }

    /// Exhaustive check that all in-model patterns have distinct syndromes.
    fn verify_distinct(&self) -> PyResult<bool> {
        Ok(
            verify::verify_syndrome_distinctness(&self.inner, &Caps::default())
                .map_err(err)?
                .pass,
        )
    }

    /// Exhaustive decoder sweep over all patterns and seeded codewords.
    fn verify_decoder(&self, samples: usize, seed: u64) -> PyResult<bool> {
        Ok(
            verify::verify_decoder(&self.inner, samples, seed, &Caps::default())
                .map_err(err)?
                .pass,
        )
    }
}

/// Exact number of Linf patterns on an n^D array.
#[pyfunction]
fn count_linf(n: i64, b: i64, d: usize) -> PyResult<u128> {
    models::count_linf(n, b, d).map_err(err)
}

/// Exact number of L1 patterns (by enumeration).
#[pyfunction]
fn count_l1(n: i64, b: i64, d: usize) -> PyResult<u128> {
    models::count_l1(n, b, d, Caps::default().max_cells).map_err(err)
}

/// Exact number of straight patterns.
#[pyfunction]
fn count_straight(n: i64, b: i64, d: usize) -> PyResult<u128> {
    models::count_straight(n, b, d).map_err(err)
}

/// The excess-redundancy bound table at (b, D), as aligned text.
#[pyfunction]
fn bounds_text(b: i64, d: usize) -> String {
    bounds::summary_table(b, d).render_text()
}

/// The bound table as CSV.
#[pyfunction]
fn bounds_csv(b: i64, d: usize) -> String {
    bounds::summary_table(b, d).render_csv()
}

/// Brute-force minimum Lee distance of the inner Lee-metric code, or None
/// for a trivial kernel.
#[pyfunction]
fn lee_min_distance(p: u64, b: i64, d: usize) -> PyResult<Option<u64>> {
    let code = LeeBchCode::new(p, b, d).map_err(err)?;
    code.min_distance_bruteforce(1 << 20).map_err(err)
}

/// Lines of the affine geometry AG(s, q), as sorted point labels.
#[pyfunction]
fn steiner_lines(q: u64, s: u32) -> PyResult<Vec<Vec<u32>>> {
    affine_lines(q, s).map_err(err)
}

/// The (2,b,Db) trivial or truncated Steiner packing, as blocks.
#[pyfunction]
fn packing_blocks(d: usize, b: u32, steiner: bool) -> PyResult<Vec<Vec<u32>>> {
    let design = if steiner {
        PackingDesign::steiner(d, b).map_err(err)?
    } else {
        PackingDesign::trivial(d, b)
    };
    Ok(design.blocks().to_vec())
}

#[pymodule]
fn burst_codes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(count_linf, m)?)?;
    m.add_function(wrap_pyfunction!(count_l1, m)?)?;
    m.add_function(wrap_pyfunction!(count_straight, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_text, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_csv, m)?)?;
    m.add_function(wrap_pyfunction!(lee_min_distance, m)?)?;
    m.add_function(wrap_pyfunction!(steiner_lines, m)?)?;
    m.add_function(wrap_pyfunction!(packing_blocks, m)?)?;
    Ok(())
}
