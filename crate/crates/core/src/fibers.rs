//! Intersection matrices of Kodaira fibres and the component corrections
//! they induce on local heights.
//!
//! Component 0 is always the identity component. For a point on a simple
//! component `c`, the local height is `vDelta/12 + (A_red^{-1})_{cc} / 2`,
//! where `A_red` is the intersection matrix with the identity row and
//! column removed.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::reduction::{ComponentLabel, Kodaira};

/// Dense square matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer((*v).into()));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(BigRational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = (0..self.n).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * o.get(k, j));
                out.set(i, j, v);
            }
        }
        out
    }

    /// Delete row and column `k`.
    pub fn minor(&self, k: usize) -> QMatrix {
        let idx: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        self.submatrix(&idx)
    }

    fn submatrix(&self, idx: &[usize]) -> QMatrix {
        let mut out = QMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn leading_minor(&self, k: usize) -> QMatrix {
        self.submatrix(&(0..k).collect::<Vec<_>>())
    }

    /// Row echelon form by Gaussian elimination; returns the reduced matrix,
    /// pivot columns, and the determinant factor from row operations.
    fn rref(&self, augment: Option<&QMatrix>) -> (Vec<Vec<BigRational>>, Vec<usize>, BigRational) {
        let n = self.n;
        let width = n + augment.map_or(0, |a| a.n);
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                if let Some(a) = augment {
                    r.extend((0..a.n).map(|j| a.get(i, j).clone()));
                }
                r
            })
            .collect();
        let mut det = BigRational::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
                det = BigRational::zero();
                continue;
            };
            if p != r {
                rows.swap(p, r);
                det = -det;
            }
            let piv = rows[r][col].clone();
            det *= &piv;
            for v in rows[r].iter_mut() {
                *v /= &piv;
            }
            for i in 0..n {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in 0..width {
                        let sub = &f * &rows[r][j];
                        rows[i][j] -= sub;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (rows, pivots, det)
    }

    pub fn det(&self) -> BigRational {
        self.rref(None).2
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let (rows, pivots, _) = self.rref(Some(&QMatrix::identity(self.n)));
        if pivots.len() < self.n {
            return None;
        }
        let mut out = QMatrix::zeros(self.n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..self.n {
                out.set(i, j, row[self.n + j].clone());
            }
        }
        Some(out)
    }

    /// A basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (rows, pivots, _) = self.rref(None);
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.n];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Leading principal minors alternate in sign starting negative.
    pub fn is_negative_definite(&self) -> bool {
        (1..=self.n).all(|k| {
            let d = self.leading_minor(k).det();
            if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    pub kodaira: Kodaira,
    pub names: Vec<String>,
    pub multiplicities: Vec<i64>,
    pub matrix: QMatrix,
}

impl FiberGraph {
    fn from_edges(kodaira: Kodaira, names: Vec<String>, mult: Vec<i64>, edges: &[(usize, usize, i64)]) -> Self {
        let n = names.len();
        let mut rows = vec![vec![0i64; n]; n];
        if n > 1 {
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = -2;
            }
        }
        for &(a, b, k) in edges {
            rows[a][b] += k;
            rows[b][a] += k;
        }
        FiberGraph { kodaira, names, multiplicities: mult, matrix: QMatrix::from_i64(&rows) }
    }

    pub fn simple_components(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.multiplicities[i] == 1).collect()
    }

    pub fn multiplicity_vector(&self) -> Vec<BigRational> {
        self.multiplicities.iter().map(|&m| BigRational::from_integer(m.into())).collect()
    }

    /// The component a point with this label lies on.
    pub fn component_index(&self, label: ComponentLabel) -> Option<usize> {
        match (label, self.kodaira) {
            (ComponentLabel::Identity(_), _) => Some(0),
            (ComponentLabel::Cycle(n), Kodaira::I(big_n)) if n < big_n => Some(n as usize),
            (ComponentLabel::Alpha, Kodaira::IStar(_)) => Some(1),
            (ComponentLabel::Beta, Kodaira::IStar(m)) => Some(m as usize + 3),
            (ComponentLabel::SimpleNonIdentity, _) => self.simple_components().into_iter().find(|&i| i != 0),
            _ => None,
        }
    }
}

pub fn build_fiber(kodaira: Kodaira) -> FiberGraph {
    let s = |v: &str| v.to_string();
    match kodaira {
        Kodaira::Good | Kodaira::II | Kodaira::I(1) => FiberGraph::from_edges(kodaira, vec![s("0")], vec![1], &[]),
        Kodaira::I(n) => {
            let n = n as usize;
            let names = (0..n).map(|i| format!("C{i}")).collect();
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
            FiberGraph::from_edges(kodaira, names, vec![1; n], &edges)
        }
        Kodaira::III => FiberGraph::from_edges(kodaira, vec![s("0"), s("1")], vec![1, 1], &[(0, 1, 2)]),
        Kodaira::IV => FiberGraph::from_edges(
            kodaira,
            vec![s("0"), s("1"), s("2")],
            vec![1, 1, 1],
            &[(0, 1, 1), (1, 2, 1), (0, 2, 1)],
        ),
        Kodaira::IStar(m) => {
            let m = m as usize;
            let mut names = vec![s("0"), s("alpha")];
            names.extend((0..=m).map(|i| format!("g{i}")));
            names.extend([s("beta"), s("beta'")]);
            let mut mult = vec![1, 1];
            mult.extend(std::iter::repeat_n(2, m + 1));
            mult.extend([1, 1]);
            let mut edges = vec![(0, 2, 1), (1, 2, 1)];
            edges.extend((0..m).map(|i| (2 + i, 3 + i, 1)));
            edges.extend([(m + 2, m + 3, 1), (m + 2, m + 4, 1)]);
            FiberGraph::from_edges(kodaira, names, mult, &edges)
        }
        Kodaira::IVStar => FiberGraph::from_edges(
            kodaira,
            ["0", "a1", "c", "b1", "b0", "d1", "d0"].map(s).to_vec(),
            vec![1, 2, 3, 2, 1, 2, 1],
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1), (5, 6, 1)],
        ),
        Kodaira::IIIStar => FiberGraph::from_edges(
            kodaira,
            ["0", "a1", "a2", "c", "b2", "b1", "b0", "d"].map(s).to_vec(),
            vec![1, 2, 3, 4, 3, 2, 1, 2],
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1), (3, 7, 1)],
        ),
        Kodaira::IIStar => FiberGraph::from_edges(
            kodaira,
            ["0", "c2", "c3", "c4", "c5", "c6", "d4", "d2", "e3"].map(s).to_vec(),
            vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1), (6, 7, 1), (5, 8, 1)],
        ),
    }
}

/// `(A_red^{-1}, det A_red)`.
pub fn reduced_inverse(g: &FiberGraph) -> Result<(QMatrix, BigRational)> {
    if g.names.len() < 2 {
        return Err(Error::InvalidParameter(format!("{} has no reduced intersection matrix", g.kodaira)));
    }
    let red = g.matrix.minor(0);
    let inv = red
        .inverse()
        .ok_or_else(|| Error::Inconsistency(format!("reduced matrix of {} is singular", g.kodaira)))?;
    Ok((inv, red.det()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub component: String,
    pub index: usize,
    pub value: BigRational,
}

/// `(A_red^{-1})_{cc} / 2` for every simple non-identity component `c`.
pub fn correction_table(g: &FiberGraph) -> Vec<Correction> {
    let Ok((inv, _)) = reduced_inverse(g) else {
        return Vec::new();
    };
    let half = BigRational::new(1.into(), 2.into());
    g.simple_components()
        .into_iter()
        .filter(|&c| c != 0)
        .map(|c| Correction {
            component: g.names[c].clone(),
            index: c,
            value: inv.get(c - 1, c - 1) * &half,
        })
        .collect()
}

/// The correction for one component, as used by local heights.
pub fn correction_for(g: &FiberGraph, index: usize) -> Result<BigRational> {
    if index == 0 {
        return Ok(BigRational::zero());
    }
    let (inv, _) = reduced_inverse(g)?;
    Ok(inv.get(index - 1, index - 1) / BigRational::from_integer(2.into()))
}
