//! The state-spec mini-language used by the CLI and FFI surfaces.
//!
//! Continuous-variable specs:
//!   fock:n=<int>
//!   coherent:re=<f>,im=<f>
//!   thermal:nbar=<f>
//!   cgauss:sq=<f>,sp=<f>,c=<f>,mq=<f>,mp=<f>
//!   product:[<spec>;<spec>;...]
//!
//! Spin specs:
//!   qubit:<p0>,<p1>            diagonal qubit
//!   pure:<c0>,<c1>,...         components are re or re:im
//!   bell                       two-qubit Bell state
//!   ghz                        three-qubit GHZ state
//!   haar:N=<int>,seed=<int>    Haar-random pure state
//!   mixhaar:N=<int>,seed=<int> Haar-induced random mixed state

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::multimode::MultimodeState;
use crate::spin::SpinDensityMatrix;
use crate::states::{
    classical_gaussian_density, coherent_state_on, fock_state_on, thermal_state, DensityMatrix,
    PhaseSpaceDensity, WaveFunction, DEFAULT_FOCK_CUTOFF,
};
use crate::tomo::SymplecticTomogram;

/// A parsed continuous-variable state of any backing kind.
pub enum CvState {
    Pure(WaveFunction),
    Mixed(DensityMatrix),
    Classical(PhaseSpaceDensity),
    Product(MultimodeState),
}

impl CvState {
    /// Single-mode symplectic tomogram; products are rejected here.
    pub fn tomogram(&self) -> Result<SymplecticTomogram> {
        match self {
            CvState::Pure(psi) => Ok(SymplecticTomogram::from_wavefunction(psi)),
            CvState::Mixed(rho) => Ok(SymplecticTomogram::from_density_matrix(rho)),
            CvState::Classical(f) => Ok(SymplecticTomogram::from_classical(f)),
            CvState::Product(_) => Err(Error::Parse(
                "product states need a multimode operation".into(),
            )),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CvState::Pure(_) => "pure",
            CvState::Mixed(_) => "mixed",
            CvState::Classical(_) => "classical",
            CvState::Product(_) => "product",
        }
    }
}

fn parse_kv(body: &str) -> Result<Vec<(String, String)>> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|tok| {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{tok}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn kv_f64(kv: &[(String, String)], key: &str) -> Result<f64> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::Parse(format!("missing '{key}'")))?
        .1
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad '{key}': {e}")))
}

fn kv_f64_or(kv: &[(String, String)], key: &str, default: f64) -> Result<f64> {
    match kv.iter().find(|(k, _)| k == key) {
        Some((_, v)) => v
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad '{key}': {e}"))),
        None => Ok(default),
    }
}

fn kv_usize(kv: &[(String, String)], key: &str) -> Result<usize> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::Parse(format!("missing '{key}'")))?
        .1
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("bad '{key}': {e}")))
}

/// Parse a continuous-variable state spec.
pub fn parse_cv_state(spec: &str) -> Result<CvState> {
    parse_cv_state_on(spec, None)
}

/// Parse a spec with an optional position-grid override; the override
/// applies to pure-state constructors only.
pub fn parse_cv_state_on(spec: &str, grid: Option<Grid1D>) -> Result<CvState> {
    let spec = spec.trim();
    if grid.is_some() && !(spec.starts_with("fock") || spec.starts_with("coherent")) {
        return Err(Error::Parse(
            "--grid overrides apply to pure-state specs (fock, coherent)".into(),
        ));
    }
    if let Some(body) = spec.strip_prefix("product:") {
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("product spec needs [spec;spec;...]".into()))?;
        let mut pures = Vec::new();
        let mut classicals = Vec::new();
        let mut mixeds = Vec::new();
        for part in body.split(';').filter(|s| !s.trim().is_empty()) {
            match parse_cv_state(part)? {
                CvState::Pure(p) => pures.push(p),
                CvState::Classical(f) => classicals.push(f),
                CvState::Mixed(r) => mixeds.push(r),
                CvState::Product(_) => {
                    return Err(Error::Parse(
                        "nested product specs are not supported".into(),
                    ))
                }
            }
        }
        let state = match (pures.len(), mixeds.len(), classicals.len()) {
            (n, 0, 0) if n > 0 => MultimodeState::product_pure(pures)?,
            (0, n, 0) if n > 0 => MultimodeState::product_mixed(mixeds)?,
            (0, 0, n) if n > 0 => MultimodeState::classical(classicals)?,
            _ => {
                return Err(Error::Parse(
                    "product modes must all be pure, all mixed, or all classical".into(),
                ))
            }
        };
        return Ok(CvState::Product(state));
    }
    let (head, body) = match spec.split_once(':') {
        Some((h, b)) => (h, b),
        None => (spec, ""),
    };
    match head {
        "fock" => {
            let kv = parse_kv(body)?;
            let n = kv_usize(&kv, "n")?;
            let g = grid.unwrap_or_else(Grid1D::default_position);
            Ok(CvState::Pure(fock_state_on(n, g)?))
        }
        "coherent" => {
            let kv = parse_kv(body)?;
            let re = kv_f64_or(&kv, "re", 0.0)?;
            let im = kv_f64_or(&kv, "im", 0.0)?;
            let g = grid.unwrap_or_else(Grid1D::default_position);
            Ok(CvState::Pure(coherent_state_on(Complex64::new(re, im), g)?))
        }
        "thermal" => {
            let kv = parse_kv(body)?;
            let nbar = kv_f64(&kv, "nbar")?;
            Ok(CvState::Mixed(thermal_state(nbar, DEFAULT_FOCK_CUTOFF)?))
        }
        "cgauss" => {
            let kv = parse_kv(body)?;
            let sq = kv_f64(&kv, "sq")?;
            let sp = kv_f64(&kv, "sp")?;
            let c = kv_f64_or(&kv, "c", 0.0)?;
            let mq = kv_f64_or(&kv, "mq", 0.0)?;
            let mp = kv_f64_or(&kv, "mp", 0.0)?;
            Ok(CvState::Classical(classical_gaussian_density(
                mq,
                mp,
                [[sq, c], [c, sp]],
            )?))
        }
        other => Err(Error::Parse(format!("unknown state kind '{other}'"))),
    }
}

fn parse_complex(tok: &str) -> Result<Complex64> {
    let tok = tok.trim();
    if let Some((re, im)) = tok.split_once(':') {
        Ok(Complex64::new(
            re.parse()
                .map_err(|e| Error::Parse(format!("bad component '{tok}': {e}")))?,
            im.parse()
                .map_err(|e| Error::Parse(format!("bad component '{tok}': {e}")))?,
        ))
    } else {
        Ok(Complex64::new(
            tok.parse()
                .map_err(|e| Error::Parse(format!("bad component '{tok}': {e}")))?,
            0.0,
        ))
    }
}

/// Parse a spin state spec.
pub fn parse_spin_state(spec: &str) -> Result<SpinDensityMatrix> {
    let spec = spec.trim();
    let (head, body) = match spec.split_once(':') {
        Some((h, b)) => (h, b),
        None => (spec, ""),
    };
    match head {
        "qubit" => {
            let probs: Vec<f64> = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad probability '{t}': {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if probs.len() != 2 {
                return Err(Error::Parse("qubit spec needs two diagonal entries".into()));
            }
            SpinDensityMatrix::diagonal(&probs)
        }
        "pure" => {
            let mut comps: Vec<Complex64> = body
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_complex)
                .collect::<Result<Vec<Complex64>>>()?;
            if comps.len() < 2 {
                return Err(Error::Parse(
                    "pure spec needs at least two components".into(),
                ));
            }
            let norm = comps.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(Error::Parse("pure spec has zero norm".into()));
            }
            for v in comps.iter_mut() {
                *v /= norm;
            }
            SpinDensityMatrix::pure(&comps)
        }
        "bell" => Ok(SpinDensityMatrix::bell()),
        "ghz" => Ok(SpinDensityMatrix::ghz()),
        "haar" => {
            let kv = parse_kv(body)?;
            let n = kv_usize(&kv, "N")?;
            let seed = kv_usize(&kv, "seed")? as u64;
            if !(2..=16).contains(&n) {
                return Err(Error::Parse(format!("haar dimension {n} outside 2..=16")));
            }
            let psi = crate::haar::haar_state(n, &mut crate::haar::seeded_rng(seed));
            SpinDensityMatrix::pure(&psi)
        }
        "mixhaar" => {
            let kv = parse_kv(body)?;
            let n = kv_usize(&kv, "N")?;
            let seed = kv_usize(&kv, "seed")? as u64;
            if !(2..=16).contains(&n) {
                return Err(Error::Parse(format!(
                    "mixhaar dimension {n} outside 2..=16"
                )));
            }
            Ok(SpinDensityMatrix::haar_mixed(
                n,
                &mut crate::haar::seeded_rng(seed),
            ))
        }
        other => Err(Error::Parse(format!("unknown spin state kind '{other}'"))),
    }
}

/// Natural tensor factorization for the bundled multi-spin fixtures.
pub fn default_dims_for(spec: &str, dim: usize) -> Vec<usize> {
    match spec.trim() {
        "bell" => vec![2, 2],
        "ghz" => vec![2, 2, 2],
        _ => vec![dim],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cv_specs_parse() {
        assert_eq!(parse_cv_state("fock:n=1").unwrap().kind_name(), "pure");
        assert_eq!(
            parse_cv_state("coherent:re=1.0,im=-0.5")
                .unwrap()
                .kind_name(),
            "pure"
        );
        assert_eq!(
            parse_cv_state("thermal:nbar=0.5").unwrap().kind_name(),
            "mixed"
        );
        assert_eq!(
            parse_cv_state("cgauss:sq=0.5,sp=0.5,c=0,mq=0,mp=0")
                .unwrap()
                .kind_name(),
            "classical"
        );
        let prod = parse_cv_state("product:[fock:n=0;coherent:re=1,im=0]").unwrap();
        assert_eq!(prod.kind_name(), "product");
        assert!(parse_cv_state("fock:n=40").is_err());
        assert!(parse_cv_state("blah:x=1").is_err());
        assert!(parse_cv_state("product:[fock:n=0;cgauss:sq=1,sp=1]").is_err());
    }

    #[test]
    fn spin_specs_parse() {
        let q = parse_spin_state("qubit:0.75,0.25").unwrap();
        assert_abs_diff_eq!(q.entries()[(0, 0)].re, 0.75, epsilon = 1e-15);
        let p = parse_spin_state("pure:0.6,0:0.8").unwrap();
        assert_abs_diff_eq!(p.entries()[(0, 0)].re, 0.36, epsilon = 1e-12);
        assert_eq!(parse_spin_state("bell").unwrap().dim(), 4);
        assert_eq!(parse_spin_state("ghz").unwrap().dim(), 8);
        let h = parse_spin_state("haar:N=3,seed=7").unwrap();
        assert_eq!(h.dim(), 3);
        // deterministic given the seed
        let h2 = parse_spin_state("haar:N=3,seed=7").unwrap();
        assert_eq!(h.entries()[(0, 1)], h2.entries()[(0, 1)]);
        let m = parse_spin_state("mixhaar:N=4,seed=3").unwrap();
        assert_eq!(m.dim(), 4);
        assert!(parse_spin_state("qubit:0.9,0.2").is_err());
        assert!(parse_spin_state("nope").is_err());
    }
}
