//! Exact certificates of the known examples: the Clifford 3-torus, two
//! quadratic, two cubic and one quartic irrational flat 3-torus.
//!
//! Entries and weights are stored as rational coefficient vectors in the
//! power basis of the field generator (√d for the quadratic fields, the
//! off-diagonal entry a for the cubic and quartic ones).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::immersion::MatrixData;
use crate::linalg::{IntMatrix, SymMatrix};
use crate::scalar::rational::{parse_rational, rat};
use crate::scalar::{AlgebraicScalar, NumberField, Rational, Scalar};

struct Entry {
    id: &'static str,
    description: &'static str,
    /// Minimal polynomial of the generator, constant term first; empty for
    /// rational data.
    minpoly: &'static [i64],
    interval: [(i64, i64); 2],
    y: &'static [[i64; 3]],
    /// Packed upper triangle (00, 01, 02, 11, 12, 22).
    q: [&'static [&'static str]; 6],
    weights: &'static [&'static [&'static str]],
    generator_approx: f64,
    weights_approx: &'static [f64],
    embedded: bool,
}

const ENTRIES: [Entry; 6] = [
    Entry {
        id: "clifford-3",
        description: "Clifford 3-torus in S^5 (Q = I, Y = I, weights 1/3)",
        minpoly: &[],
        interval: [(0, 1), (0, 1)],
        y: &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        q: [&["1"], &["0"], &["0"], &["1"], &["0"], &["1"]],
        weights: &[&["1/3"], &["1/3"], &["1/3"]],
        generator_approx: 0.0,
        weights_approx: &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        embedded: true,
    },
    Entry {
        id: "ex-rank5",
        description: "quadratic irrational flat 3-torus in S^9 over Q(sqrt 10801), rank{Y_jY_j^t} = 5",
        minpoly: &[-10801, 0, 1],
        interval: [(103, 1), (104, 1)],
        y: &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [6, 12, -15], [6, 9, -12]],
        q: [
            &["1"],
            &["197/324", "-1/324"],
            &["461/540", "-1/540"],
            &["1"],
            &["3041/3240", "-1/3240"],
            &["1"],
        ],
        weights: &[
            &["38319/48040", "-321/48040"],
            &["29835/38432", "-189/38432"],
            &["-157377/192160", "1623/192160"],
            &["121721/576480", "481/576480"],
            &["19537/576480", "1337/576480"],
        ],
        generator_approx: 103.927859595532,
        weights_approx: &[
            0.10320893151544469,
            0.2652121809050586,
            0.05879431787416921,
            0.29785994390993537,
            0.2749246257953921,
        ],
        embedded: true,
    },
    Entry {
        id: "quadratic-s7",
        description: "quadratic irrational flat 3-torus embedded in S^7 over Q(sqrt 553)",
        minpoly: &[-553, 0, 1],
        interval: [(23, 1), (24, 1)],
        y: &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-3, 4, -3]],
        q: [
            &["1"],
            &["115/144", "-1/144"],
            &["8/27", "-1/54"],
            &["1"],
            &["115/144", "-1/144"],
            &["1"],
        ],
        weights: &[
            &["76/99", "-2/99"],
            &["-349/594", "17/594"],
            &["76/99", "-2/99"],
            &["31/594", "7/594"],
        ],
        generator_approx: 23.515952032609693,
        weights_approx: &[0.2926070296442486, 0.0854733746706478, 0.2926070296442486, 0.32931256604085496],
        embedded: true,
    },
    Entry {
        id: "cubic-s7-a",
        description: "cubic irrational flat 3-torus in S^7, a root of 50x^3-160x^2+149x-33 (not embedded)",
        minpoly: &[-33, 149, -160, 50],
        interval: [(8, 25), (33, 100)],
        y: &[[4, 0, 0], [0, 4, 0], [0, 0, 4], [-5, 2, -3]],
        q: [
            &["1/16"],
            &["0", "1/16"],
            &["-11/48", "3/4", "-5/12"],
            &["1/16"],
            &["-11/24", "85/48", "-25/24"],
            &["1/16"],
        ],
        weights: &[
            &["-733/672", "205/48", "-225/112"],
            &["1451/1680", "-47/24", "145/168"],
            &["-1251/1120", "87/16", "-345/112"],
            &["1969/840", "-31/4", "355/84"],
        ],
        generator_approx: 0.3210607806478828,
        weights_approx: &[0.07334286738782143, 0.3239143260299381, 0.31128041816367863, 0.29146238841856187],
        embedded: false,
    },
    Entry {
        id: "cubic-s7-b",
        description: "cubic irrational flat 3-torus in S^7, a root of 675x^3+765x^2-291x-253",
        minpoly: &[-253, -291, 765, 675],
        interval: [(-51, 100), (-1, 2)],
        y: &[[2, 0, 0], [0, 2, 0], [0, 0, 2], [5, 3, 4]],
        q: [
            &["1/4"],
            &["0", "1/4"],
            &["-69/256", "-3/32", "45/256"],
            &["1/4"],
            &["-23/768", "-5/32", "-75/256"],
            &["1/4"],
        ],
        weights: &[
            &["643/2688", "355/448", "825/896"],
            &["2421/4480", "171/448", "-135/896"],
            &["-33/1120", "-83/112", "-45/224"],
            &["1679/6720", "-97/224", "-255/448"],
        ],
        generator_approx: -0.5011374646935923,
        weights_approx: &[0.07334286738782143, 0.31128041816367863, 0.29146238841856187, 0.3239143260299381],
        embedded: false,
    },
    Entry {
        id: "quartic-s7",
        description: "quartic irrational flat 3-torus embedded in S^7, a root of -14700x^4-23240x^3+1079x^2+10730x+1507",
        minpoly: &[-1507, -10730, -1079, 23240, 14700],
        interval: [(-3, 20), (-7, 50)],
        y: &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [5, 7, 8]],
        q: [
            &["1"],
            &["0", "1"],
            &["-3425/3456", "-3577/1152", "1925/864", "1225/288"],
            &["1"],
            &["-1781/3456", "1835/1152", "-1375/864", "-875/288"],
            &["1"],
        ],
        weights: &[
            &["14617/86184", "-230365/316008", "49675/33858", "21875/11286"],
            &["7529/12312", "55631/25080", "-27811/33858", "-25235/11286"],
            &["-4982/32319", "-976912/592515", "10426/50787", "15260/16929"],
            &["12056/32319", "94564/592515", "-43222/50787", "-10220/16929"],
        ],
        generator_approx: -0.14920061551497324,
        weights_approx: &[0.3045897970215314, 0.2697103540600628, 0.09342044644273784, 0.332279402475668],
        embedded: true,
    },
];

/// A catalog certificate with its field data and reference numerics.
#[derive(Clone, Debug)]
pub struct CatalogItem {
    pub id: &'static str,
    pub description: &'static str,
    pub data: MatrixData,
    /// Minimal polynomial of the generator (constant term first); `[0, 1]`
    /// for rational data.
    pub minpoly: Vec<BigInt>,
    pub generator_approx: f64,
    pub weights_approx: Vec<f64>,
    /// Documented embeddedness of the homogeneous immersion.
    pub embedded: bool,
}

impl CatalogItem {
    /// Degree of the field generated by the entries of Q.
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// Catalog ids with one-line descriptions.
pub fn catalog_ids() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.id, e.description)).collect()
}

fn parse_all(coeffs: &[&str]) -> Result<Vec<Rational>> {
    coeffs.iter().map(|s| parse_rational(s)).collect()
}

fn build(e: &Entry) -> Result<CatalogItem> {
    let field = if e.minpoly.is_empty() {
        None
    } else {
        let (lo, hi) = (
            rat(e.interval[0].0, e.interval[0].1),
            rat(e.interval[1].0, e.interval[1].1),
        );
        Some(NumberField::new(
            e.minpoly.iter().map(|&c| BigInt::from(c)).collect(),
            lo,
            hi,
        )?)
    };
    let scalar = |coeffs: &[&str]| -> Result<Scalar> {
        let c = parse_all(coeffs)?;
        Ok(match &field {
            None => Scalar::from(c[0].clone()),
            Some(f) => Scalar::Algebraic(AlgebraicScalar::new(f.clone(), c)?).normalized(),
        })
    };
    let packed = e.q.iter().map(|c| scalar(c)).collect::<Result<Vec<_>>>()?;
    let q = SymMatrix::from_packed(3, packed)?;
    let y = IntMatrix::from_columns(3, e.y.iter().map(|c| c.to_vec()).collect())?;
    let weights = e
        .weights
        .iter()
        .map(|c| scalar(c))
        .collect::<Result<Vec<_>>>()?;
    let minpoly = match &field {
        None => vec![BigInt::from(0), BigInt::from(1)],
        Some(f) => f.minpoly().to_vec(),
    };
    Ok(CatalogItem {
        id: e.id,
        description: e.description,
        data: MatrixData::new(q, y, weights)?,
        minpoly,
        generator_approx: e.generator_approx,
        weights_approx: e.weights_approx.to_vec(),
        embedded: e.embedded,
    })
}

pub fn catalog_item(id: &str) -> Result<CatalogItem> {
    let e = ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))?;
    build(e)
}

pub fn catalog(id: &str) -> Result<MatrixData> {
    Ok(catalog_item(id)?.data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::DEFAULT_TOL;

    #[test]
    fn every_entry_verifies_exactly() {
        for (id, _) in catalog_ids() {
            let item = catalog_item(id).unwrap();
            let rep = item.data.verify(DEFAULT_TOL);
            assert!(rep.is_verified(), "{id}: {:?}", rep.verdict);
            assert!(rep.exact, "{id}");
            for (w, a) in item.data.weights.iter().zip(&item.weights_approx) {
                assert!((w.to_f64() - a).abs() < 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn unknown_id() {
        assert_eq!(
            catalog("nope").unwrap_err(),
            Error::UnknownCatalogId("nope".into())
        );
    }

    #[test]
    fn degrees() {
        let d: Vec<usize> = catalog_ids()
            .iter()
            .map(|(id, _)| catalog_item(id).unwrap().degree())
            .collect();
        assert_eq!(d, vec![1, 2, 2, 3, 3, 4]);
    }
}
