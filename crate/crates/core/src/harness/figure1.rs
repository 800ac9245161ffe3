use num_complex::Complex64;
use serde::Serialize;

use crate::ensembles::{sample_haar_unitary, RngStream, TruncationSample};
use crate::error::{Error, Result};
use crate::linalg::schur;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure1Point {
    /// `"cue"` for the parent unitary, `"tue"` for its truncation.
    pub tag: &'static str,
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure1Data {
    pub n: usize,
    pub seed: u64,
    /// Radius `1 - 10/n` of the inner reference circle.
    pub reference_radius: f64,
    pub points: Vec<Figure1Point>,
}

fn points<'a>(tag: &'static str, eigs: &'a [Complex64]) -> impl Iterator<Item = Figure1Point> + 'a {
    eigs.iter().enumerate().map(move |(index, z)| Figure1Point {
        tag,
        index,
        re: z.re,
        im: z.im,
        modulus: z.norm(),
    })
}

/// Spectrum of one Haar unitary of size `n + 1` and of its top-left `n x n`
/// block.
pub fn figure1_data(n: usize, seed: u64) -> Result<Figure1Data> {
    if n == 0 {
        return Err(Error::Config("figure1 needs n >= 1".into()));
    }
    let mut rng = RngStream::new(seed, 0).generator();
    let u = sample_haar_unitary(n + 1, &mut rng)?;
    let cue = schur(&u)?.eigenvalues;
    let tue = schur(&TruncationSample::from_parent(&u, n)?.g)?.eigenvalues;
    Ok(Figure1Data {
        n,
        seed,
        reference_radius: 1.0 - 10.0 / n as f64,
        points: points("cue", &cue).chain(points("tue", &tue)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_on_circle_truncation_inside() {
        let d = figure1_data(40, 3).unwrap();
        assert_eq!(d.points.iter().filter(|p| p.tag == "cue").count(), 41);
        assert_eq!(d.points.iter().filter(|p| p.tag == "tue").count(), 40);
        for p in &d.points {
            match p.tag {
                "cue" => assert!((p.modulus - 1.0).abs() < 1e-10),
                _ => assert!(p.modulus < 1.0),
            }
        }
        assert!((d.reference_radius - 0.75).abs() < 1e-15);
    }
}
